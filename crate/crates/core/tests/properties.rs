use funtf_core::frame::{projector_deviation, theoretical_constant};
use funtf_core::*;
use proptest::prelude::*;

/// Random element of A_{2n}: a random matching plus random signs.
fn operator(max_n: usize) -> impl Strategy<Value = SignedInvolution> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let dim = 2 * n;
            (
                Just(dim),
                Just((1..=dim).collect::<Vec<usize>>()).prop_shuffle(),
                proptest::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(dim, order, flips)| {
            let mut pairing = vec![0; dim];
            let mut signs = vec![Sign::Plus; dim];
            for (c, flip) in order.chunks(2).zip(flips) {
                let (i, j) = (c[0], c[1]);
                pairing[i - 1] = j;
                pairing[j - 1] = i;
                let s = if flip { Sign::Minus } else { Sign::Plus };
                signs[i - 1] = s;
                signs[j - 1] = s.flip();
            }
            SignedInvolution::new(dim, &pairing, &signs).unwrap()
        })
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Balance straight from the definition, over ordered indices.
fn balanced_by_definition(set: &OperatorSet) -> bool {
    let dim = set.dim();
    let size = set.len();
    for p in 1..=dim {
        for q in (1..=dim).filter(|&q| q != p) {
            if count_pair_slice(set, p, q).unwrap() * (dim - 1) != size {
                return false;
            }
            for r in (1..=dim).filter(|&r| r != p && r != q) {
                for s in (1..=dim).filter(|&s| s != p && s != q && s != r) {
                    let plus = count_sign_slice(set, p, q, r, s, Sign::Plus).unwrap();
                    let minus = count_sign_slice(set, p, q, r, s, Sign::Minus).unwrap();
                    if plus != minus {
                        return false;
                    }
                }
            }
        }
    }
    true
}

proptest! {
    #[test]
    fn apply_is_an_isometry(u in operator(5), seed in any::<u64>()) {
        let mut sampler = SphereSampler::new(seed);
        let a = sampler.gaussian_vector(u.dim());
        let image = u.apply(&a).unwrap();
        prop_assert!((norm(&image) - norm(&a)).abs() <= 1e-12 * norm(&a).max(1.0));
    }

    #[test]
    fn applying_twice_negates(u in operator(5), seed in any::<u64>()) {
        let a = SphereSampler::new(seed).gaussian_vector(u.dim());
        let twice = u.apply(&u.apply(&a).unwrap()).unwrap();
        prop_assert!(twice.iter().zip(&a).all(|(x, y)| *x == -*y));
    }

    #[test]
    fn images_are_tangent(u in operator(5), seed in any::<u64>()) {
        let a = random_sphere_point(u.dim(), seed).unwrap();
        prop_assert!(u.tangency_defect(a.coords()).unwrap().abs() <= 1e-15);
    }

    #[test]
    fn sign_flip_is_an_involution(u in operator(5), p_raw in any::<usize>()) {
        let p = p_raw % u.dim() + 1;
        let v = sign_flip_bijection(&u, p).unwrap();
        prop_assert_eq!(v.pairing(), u.pairing());
        prop_assert_eq!(sign_flip_bijection(&v, p).unwrap(), u);
    }

    #[test]
    fn pair_slices_are_symmetric_and_sum_to_size(mask in 1u32..(1 << 12)) {
        let full = enumerate_full(2).unwrap();
        let set = full.filter(|i, _| mask >> i & 1 == 1);
        for p in 1..=4 {
            let mut total = 0;
            for q in (1..=4).filter(|&q| q != p) {
                let c = count_pair_slice(&set, p, q).unwrap();
                prop_assert_eq!(c, count_pair_slice(&set, q, p).unwrap());
                total += c;
            }
            prop_assert_eq!(total, set.len());
        }
    }

    #[test]
    fn fast_balance_matches_definition_n3(bits in proptest::collection::vec(any::<bool>(), 120)) {
        let full = enumerate_full(3).unwrap();
        let set = full.filter(|i, _| bits[i]);
        prop_assume!(!set.is_empty());
        prop_assert_eq!(is_balanced(&set).unwrap().balanced, balanced_by_definition(&set));
    }

    #[test]
    fn document_round_trip(ops in proptest::collection::vec(operator(3), 1..8)) {
        let dim = ops[0].dim();
        let mut members: Vec<_> = ops.into_iter().filter(|u| u.dim() == dim).collect();
        members.sort();
        members.dedup();
        let set = OperatorSet::new(dim, members).unwrap();
        let doc = OperatorSetDocument::from_set(&set, None);
        let back = document::read_set(&doc.to_json()).unwrap();
        prop_assert_eq!(back, set);
    }

    #[test]
    fn projection_is_idempotent(seed in any::<u64>(), n in 1usize..6) {
        let mut sampler = SphereSampler::new(seed);
        let a = sampler.next_point(2 * n).unwrap();
        let x = sampler.gaussian_vector(2 * n);
        let once = project_tangent(&a, &x).unwrap();
        let twice = project_tangent(&a, &once).unwrap();
        prop_assert!(once.iter().zip(&twice).all(|(u, v)| (u - v).abs() <= 1e-12));
        let d: f64 = once.iter().zip(a.coords()).map(|(u, v)| u * v).sum();
        prop_assert!(d.abs() <= 1e-12);
    }

    #[test]
    fn minimal_sets_give_tangent_projectors(seed in any::<u64>(), n in 1usize..6) {
        let set = build_minimal_balanced(n).unwrap();
        let a = random_sphere_point(2 * n, seed).unwrap();
        let c = theoretical_constant(&set);
        prop_assert!(projector_deviation(&set, a.coords(), c).unwrap() <= 1e-9);
    }
}

#[test]
fn full_and_minimal_sets_match_definition() {
    for n in 1..=3 {
        assert!(balanced_by_definition(&enumerate_full(n).unwrap()));
        assert!(balanced_by_definition(&build_minimal_balanced(n).unwrap()));
    }
    let min = build_minimal_balanced(3).unwrap();
    assert!(!balanced_by_definition(&min.filter(|i, _| i != 0)));
}

#[test]
fn augmented_and_direct_checks_agree_on_random_points() {
    for n in 1..=4 {
        let set = build_minimal_balanced(n).unwrap();
        let a = verify_moving_funtf(&set, 100, 17, DEFAULT_TOLERANCE).unwrap();
        let b = verify_moving_funtf_direct(&set, 100, 17, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(a.tight, b.tight);
        assert!((a.frame_constant - b.frame_constant).abs() <= 1e-8);
    }
}
