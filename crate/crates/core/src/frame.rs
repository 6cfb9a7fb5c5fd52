//! Frame operators, tightness checks and moving-frame certification.
//!
//! A family `(f_i)` in `R^m` is a tight frame with constant `C` exactly when
//! its frame operator `S = Σ f_i f_iᵀ` equals `C·I`. For the tangent fields
//! `U(a)` of a set `A` the target space is `a^⊥`, so `a` itself, scaled by
//! `√(#A/(2n-1))`, is appended before testing tightness in all of `R^{2n}`.

use nalgebra::DMatrix;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::balance::{format_ratio, BalanceReport};
use crate::error::{Error, Result};
use crate::involution::OperatorSet;
use crate::sphere::{dot, norm, tangent_basis, SpherePoint, SphereSampler};

/// Default tolerance on frame-operator entries.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Largest accepted `|‖a‖ - 1|` for a base point.
pub const BASE_POINT_NORM_TOL: f64 = 1e-6;

/// `Σ_i f_i f_iᵀ`.
pub fn frame_operator(vectors: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let m = vectors.first().ok_or(Error::NoVectors)?.len();
    let mut s = DMatrix::<f64>::zeros(m, m);
    for f in vectors {
        if f.len() != m {
            return Err(Error::LengthMismatch {
                what: "frame vector",
                expected: m,
                found: f.len(),
            });
        }
        for p in 0..m {
            if f[p] == 0.0 {
                continue;
            }
            for q in p..m {
                s[(p, q)] += f[p] * f[q];
            }
        }
    }
    for p in 0..m {
        for q in 0..p {
            s[(p, q)] = s[(q, p)];
        }
    }
    Ok(s)
}

/// Tightness measurements at one point (or for one vector family).
#[derive(Debug, Clone, Copy, PartialEq)]
struct Deviation {
    constant: f64,
    max_offdiag: f64,
    max_diag_dev: f64,
    discrepancy: f64,
}

impl Deviation {
    fn of(s: &DMatrix<f64>, expected: Option<f64>) -> Deviation {
        let m = s.nrows();
        let constant = s.trace() / m as f64;
        let mut max_offdiag = 0.0f64;
        let mut max_diag_dev = 0.0f64;
        for p in 0..m {
            max_diag_dev = max_diag_dev.max((s[(p, p)] - constant).abs());
            for q in p + 1..m {
                max_offdiag = max_offdiag.max(s[(p, q)].abs());
            }
        }
        Deviation {
            constant,
            max_offdiag,
            max_diag_dev,
            discrepancy: expected.map_or(0.0, |c| (constant - c).abs()),
        }
    }

    fn worst(&self) -> f64 {
        self.max_offdiag.max(self.max_diag_dev).max(self.discrepancy)
    }

    fn passes(&self, tol: f64) -> bool {
        self.constant > 0.0 && self.worst() <= tol
    }
}

/// Tightness verdict, aggregated over the checked points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameReport {
    pub tight: bool,
    /// Mean of the measured per-point constants.
    pub frame_constant: f64,
    /// The constant the family should have, when known.
    pub theoretical_constant: Option<f64>,
    /// Largest `|measured - theoretical|` over the points.
    pub constant_discrepancy: f64,
    pub max_offdiag: f64,
    pub max_diag_dev: f64,
    pub points_checked: usize,
    pub worst_point: Option<Vec<f64>>,
    pub point_constants: Vec<f64>,
    pub tolerance: f64,
}

impl FrameReport {
    fn aggregate(items: Vec<(Option<&SpherePoint>, Deviation)>, expected: Option<f64>, tol: f64) -> FrameReport {
        let count = items.len();
        let mut report = FrameReport {
            tight: count > 0,
            frame_constant: 0.0,
            theoretical_constant: expected,
            constant_discrepancy: 0.0,
            max_offdiag: 0.0,
            max_diag_dev: 0.0,
            points_checked: count,
            worst_point: None,
            point_constants: Vec::with_capacity(count),
            tolerance: tol,
        };
        let mut worst = f64::NEG_INFINITY;
        for (point, dev) in items {
            report.tight &= dev.passes(tol);
            report.frame_constant += dev.constant / count as f64;
            report.constant_discrepancy = report.constant_discrepancy.max(dev.discrepancy);
            report.max_offdiag = report.max_offdiag.max(dev.max_offdiag);
            report.max_diag_dev = report.max_diag_dev.max(dev.max_diag_dev);
            report.point_constants.push(dev.constant);
            if dev.worst() > worst {
                worst = dev.worst();
                report.worst_point = point.map(|p| p.coords().to_vec());
            }
        }
        report
    }

    /// Largest deviation of any kind.
    pub fn max_deviation(&self) -> f64 {
        self.max_offdiag.max(self.max_diag_dev).max(self.constant_discrepancy)
    }
}

/// Test whether `vectors` form a tight frame for their ambient space.
///
/// `C` is the mean diagonal entry of the frame operator. For unit vectors it
/// must also match `k/m`.
pub fn check_tight(vectors: &[Vec<f64>], tol: f64) -> Result<FrameReport> {
    let s = frame_operator(vectors)?;
    let m = s.nrows();
    let all_unit = vectors.iter().all(|f| (norm(f) - 1.0).abs() <= 1e-12);
    let expected = all_unit.then(|| vectors.len() as f64 / m as f64);
    let dev = Deviation::of(&s, expected);
    Ok(FrameReport::aggregate(vec![(None, dev)], expected, tol))
}

fn check_base_point(set: &OperatorSet, a: &[f64]) -> Result<()> {
    if a.len() != set.dim() {
        return Err(Error::LengthMismatch {
            what: "base point",
            expected: set.dim(),
            found: a.len(),
        });
    }
    let r = norm(a);
    if (r - 1.0).abs() > BASE_POINT_NORM_TOL {
        return Err(Error::NotUnit { norm: r });
    }
    Ok(())
}

/// `#A / (2n - 1)`.
pub fn theoretical_constant(set: &OperatorSet) -> f64 {
    set.len() as f64 / (set.dim() - 1) as f64
}

/// `√(#A/(2n-1))·a` followed by `U(a)` for each member in set order.
pub fn augment_with_normal(set: &OperatorSet, a: &[f64]) -> Result<Vec<Vec<f64>>> {
    check_base_point(set, a)?;
    let scale = theoretical_constant(set).sqrt();
    let mut out = Vec::with_capacity(set.len() + 1);
    out.push(a.iter().map(|x| scale * x).collect());
    out.extend(set.images(a)?);
    Ok(out)
}

/// `Σ_U U(a) U(a)ᵀ`, without the normal vector.
pub fn tangent_frame_operator(set: &OperatorSet, a: &[f64]) -> Result<DMatrix<f64>> {
    check_base_point(set, a)?;
    if set.is_empty() {
        return Ok(DMatrix::zeros(set.dim(), set.dim()));
    }
    frame_operator(&set.images(a)?)
}

/// Largest entry of `|Σ_U U(a)U(a)ᵀ - c (I - a aᵀ)|`.
pub fn projector_deviation(set: &OperatorSet, a: &[f64], c: f64) -> Result<f64> {
    let s = tangent_frame_operator(set, a)?;
    let m = s.nrows();
    let mut worst = 0.0f64;
    for p in 0..m {
        for q in 0..m {
            let identity = if p == q { 1.0 } else { 0.0 };
            worst = worst.max((s[(p, q)] - c * (identity - a[p] * a[q])).abs());
        }
    }
    Ok(worst)
}

/// Every probe point `(e_p + e_q)/√2`, `p < q`, followed by `num_samples`
/// seeded random points.
pub fn verification_points(dim: usize, num_samples: usize, seed: u64) -> Result<Vec<SpherePoint>> {
    let mut points = Vec::with_capacity(dim * (dim - 1) / 2 + num_samples);
    for p in 1..=dim {
        for q in p + 1..=dim {
            points.push(SpherePoint::probe(dim, p, q)?);
        }
    }
    let mut sampler = SphereSampler::new(seed);
    for _ in 0..num_samples {
        points.push(sampler.next_point(dim)?);
    }
    Ok(points)
}

/// Augmented tightness at each point, expecting `C = #A/(2n-1)`.
pub fn check_points_augmented(set: &OperatorSet, points: &[SpherePoint], tol: f64) -> Result<FrameReport> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let expected = theoretical_constant(set);
    let items = points
        .iter()
        .map(|a| {
            let s = frame_operator(&augment_with_normal(set, a.coords())?)?;
            Ok((Some(a), Deviation::of(&s, Some(expected))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FrameReport::aggregate(items, Some(expected), tol))
}

/// Tightness of the coordinates of `U(a)` in an orthonormal basis of `a^⊥`.
pub fn check_points_tangent_coordinates(set: &OperatorSet, points: &[SpherePoint], tol: f64) -> Result<FrameReport> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let expected = theoretical_constant(set);
    let items = points
        .iter()
        .map(|a| {
            check_base_point(set, a.coords())?;
            let basis = tangent_basis(a);
            let coords: Vec<Vec<f64>> = set
                .images(a.coords())?
                .iter()
                .map(|f| basis.iter().map(|b| dot(b, f)).collect())
                .collect();
            let s = frame_operator(&coords)?;
            Ok((Some(a), Deviation::of(&s, Some(expected))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FrameReport::aggregate(items, Some(expected), tol))
}

/// Certify that `{U(a)}_{U ∈ A}` is a unit tight frame of `T_a S^{2n-1}` at
/// every probe point and `num_samples` random points.
pub fn verify_moving_funtf(set: &OperatorSet, num_samples: usize, seed: u64, tol: f64) -> Result<FrameReport> {
    let points = verification_points(set.dim(), num_samples, seed)?;
    check_points_augmented(set, &points, tol)
}

/// Same certification through tangent-basis coordinates instead of the
/// appended normal.
pub fn verify_moving_funtf_direct(set: &OperatorSet, num_samples: usize, seed: u64, tol: f64) -> Result<FrameReport> {
    let points = verification_points(set.dim(), num_samples, seed)?;
    check_points_tangent_coordinates(set, &points, tol)
}

/// `⟨x, U(a)⟩` for each member.
pub fn frame_coefficients(set: &OperatorSet, a: &[f64], x: &[f64]) -> Result<Vec<f64>> {
    check_base_point(set, a)?;
    if x.len() != set.dim() {
        return Err(Error::LengthMismatch {
            what: "vector",
            expected: set.dim(),
            found: x.len(),
        });
    }
    Ok(set.images(a)?.iter().map(|f| dot(f, x)).collect())
}

/// `(1/C) Σ_U c_U U(a)`.
pub fn reconstruct(set: &OperatorSet, a: &[f64], coefficients: &[f64], c: f64) -> Result<Vec<f64>> {
    if coefficients.len() != set.len() {
        return Err(Error::LengthMismatch {
            what: "coefficients",
            expected: set.len(),
            found: coefficients.len(),
        });
    }
    if c.is_nan() || c <= 0.0 {
        return Err(Error::NonPositiveConstant(c));
    }
    check_base_point(set, a)?;
    let mut out = vec![0.0; set.dim()];
    let mut image = vec![0.0; set.dim()];
    for (u, &coef) in set.iter().zip(coefficients) {
        if coef == 0.0 {
            continue;
        }
        u.apply_into(a, &mut image)?;
        out.iter_mut().zip(&image).for_each(|(o, f)| *o += coef * f);
    }
    out.iter_mut().for_each(|o| *o /= c);
    Ok(out)
}

/// The slice a witness was built from (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum FailingSlice {
    PairSlice { p: usize, q: usize },
    SignSlice { p: usize, q: usize, r: usize, s: usize },
}

fn serialize_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

/// A point where an unbalanced set fails to give a tight frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnbalancedWitness {
    /// `(e_p + e_q)/√2`.
    pub point: Vec<f64>,
    /// `(r, s)` such that the `(r, s)` entry of the augmented frame operator
    /// is nonzero.
    pub probe_pair: (usize, usize),
    /// Exact value of that entry.
    #[serde(serialize_with = "serialize_ratio")]
    pub defect: Ratio<i64>,
    pub defect_value: f64,
    pub slice: FailingSlice,
}

/// Build a witness from the lexicographically smallest failing slice,
/// preferring condition (i) failures.
///
/// For a pair-slice failure at `(p, q)` the `(p, q)` entry of the augmented
/// frame operator at `(e_p + e_q)/√2` is `(#A/(2n-1) - #A_{p,q})/2`. For a
/// sign-slice failure it is the `(r, s)` entry, `(#A_{+1} - #A_{-1})/2`.
pub fn witness_unbalanced(set: &OperatorSet, report: &BalanceReport) -> Result<UnbalancedWitness> {
    if report.balanced {
        return Err(Error::Balanced);
    }
    let dim = set.dim();
    let (slice, probe_pair, defect) = if let Some(f) = report.condition_i_failures.iter().min_by_key(|f| (f.p, f.q)) {
        let defect = (f.required - Ratio::from_integer(f.observed as i64)) / 2;
        (FailingSlice::PairSlice { p: f.p, q: f.q }, (f.p, f.q), defect)
    } else {
        let f = report
            .condition_ii_failures
            .iter()
            .min_by_key(|f| (f.p, f.q, f.r, f.s))
            .ok_or(Error::Balanced)?;
        let defect = Ratio::new(f.plus as i64 - f.minus as i64, 2);
        (
            FailingSlice::SignSlice {
                p: f.p,
                q: f.q,
                r: f.r,
                s: f.s,
            },
            (f.r, f.s),
            defect,
        )
    };
    let (p, q) = match slice {
        FailingSlice::PairSlice { p, q } | FailingSlice::SignSlice { p, q, .. } => (p, q),
    };
    let point = SpherePoint::probe(dim, p, q)?.into_coords();
    Ok(UnbalancedWitness {
        point,
        probe_pair,
        defect_value: *defect.numer() as f64 / *defect.denom() as f64,
        defect,
        slice,
    })
}

/// `Σ_f ⟨f, e_r⟩⟨f, e_s⟩` over the augmented family at `a` (1-based `r`, `s`).
pub fn augmented_cross_term(set: &OperatorSet, a: &[f64], r: usize, s: usize) -> Result<f64> {
    let dim = set.dim();
    for index in [r, s] {
        if index == 0 || index > dim {
            return Err(Error::BadIndex { index, dim });
        }
    }
    Ok(augment_with_normal(set, a)?.iter().map(|f| f[r - 1] * f[s - 1]).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::{build_minimal_balanced, is_balanced};
    use crate::involution::{enumerate_full, presets, SignedInvolution};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn frame_operator_examples() {
        let basis = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_eq!(frame_operator(&basis).unwrap(), DMatrix::identity(2, 2));

        let mercedes: Vec<Vec<f64>> = [90.0f64, 210.0, 330.0]
            .iter()
            .map(|d| vec![d.to_radians().cos(), d.to_radians().sin()])
            .collect();
        let s = frame_operator(&mercedes).unwrap();
        assert!((s - DMatrix::identity(2, 2) * 1.5).abs().max() < 1e-15);

        let doubled = vec![vec![1.0, 0.0], vec![1.0, 0.0]];
        assert_eq!(
            frame_operator(&doubled).unwrap(),
            DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.0])
        );
        assert_eq!(frame_operator(&[]), Err(Error::NoVectors));
        assert!(frame_operator(&[vec![1.0], vec![1.0, 0.0]]).is_err());
    }

    #[test]
    fn check_tight_examples() {
        let report = check_tight(&[vec![1.0, 0.0], vec![0.0, 1.0]], 1e-9).unwrap();
        assert!(report.tight);
        assert_eq!(report.frame_constant, 1.0);
        assert_eq!(report.theoretical_constant, Some(1.0));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let report = check_tight(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![h, h]], 1e-9).unwrap();
        assert!(!report.tight);
        assert!((report.max_offdiag - 0.5).abs() < 1e-15);
        assert_eq!(check_tight(&[], 1e-9), Err(Error::NoVectors));
    }

    #[test]
    fn augmented_minimal_set_on_s3() {
        let set = build_minimal_balanced(2).unwrap();
        let a = crate::sphere::random_sphere_point(4, 5).unwrap();
        let report = check_tight(&set.images(a.coords()).unwrap(), 1e-9).unwrap();
        // The images are not a tight frame for R^4 on their own.
        assert!(!report.tight);
        let aug = augment_with_normal(&set, a.coords()).unwrap();
        assert_eq!(aug.len(), 7);
        let report = check_tight(&aug, 1e-9).unwrap();
        assert!(report.tight);
        assert!((report.frame_constant - 2.0).abs() < 1e-12);
    }

    #[test]
    fn augmentation_examples() {
        let circle = presets::circle();
        let aug = augment_with_normal(&circle, &[1.0, 0.0]).unwrap();
        assert_eq!(aug, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);

        let set = build_minimal_balanced(2).unwrap();
        let aug = augment_with_normal(&set, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(close(&aug[0], &[2f64.sqrt(), 0.0, 0.0, 0.0], 1e-15));
        assert!(matches!(
            augment_with_normal(&set, &[1.0, 1.0, 0.0, 0.0]),
            Err(Error::NotUnit { .. })
        ));
        assert!(augment_with_normal(&set, &[1.0, 0.0]).is_err());
    }

    #[test]
    fn verification_of_known_sets() {
        let s3 = verify_moving_funtf(&presets::s3_triple(), 50, 1, 1e-9).unwrap();
        assert!(s3.tight);
        assert!((s3.frame_constant - 1.0).abs() < 1e-12);
        assert_eq!(s3.points_checked, 6 + 50);

        let full = verify_moving_funtf(&enumerate_full(2).unwrap(), 50, 2, 1e-9).unwrap();
        assert!(full.tight);
        assert!((full.frame_constant - 4.0).abs() < 1e-12);

        for n in 1..=4 {
            let r = verify_moving_funtf(&build_minimal_balanced(n).unwrap(), 20, 3, 1e-9).unwrap();
            assert!(r.tight);
            assert!((r.frame_constant - (1 << (n - 1)) as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn reconstruction_examples() {
        let set = build_minimal_balanced(2).unwrap();
        let a = crate::sphere::random_sphere_point(4, 9).unwrap();
        let y = [0.3, -1.2, 0.7, 2.0];
        let x = crate::sphere::project_tangent(&a, &y).unwrap();
        let coefs = frame_coefficients(&set, a.coords(), &x).unwrap();
        let back = reconstruct(&set, a.coords(), &coefs, 2.0).unwrap();
        assert!(close(&back, &x, 1e-14));

        assert_eq!(reconstruct(&set, a.coords(), &[0.0; 6], 2.0).unwrap(), vec![0.0; 4]);

        // Losing one coefficient costs exactly |c_U| / C.
        for erased in 0..6 {
            let mut lossy = coefs.clone();
            lossy[erased] = 0.0;
            let out = reconstruct(&set, a.coords(), &lossy, 2.0).unwrap();
            let err = norm(&out.iter().zip(&x).map(|(o, t)| o - t).collect::<Vec<_>>());
            assert!((err - coefs[erased].abs() / 2.0).abs() < 1e-14);
        }

        assert!(matches!(
            reconstruct(&set, a.coords(), &[0.0; 5], 2.0),
            Err(Error::LengthMismatch { .. })
        ));
        assert_eq!(
            reconstruct(&set, a.coords(), &[0.0; 6], 0.0),
            Err(Error::NonPositiveConstant(0.0))
        );
    }

    #[test]
    fn witness_for_five_operator_set() {
        let min = build_minimal_balanced(2).unwrap();
        // Drop an operator with k_1 = 2.
        let drop = min.iter().position(|u| u.partner(1) == 2).unwrap();
        let five = min.filter(|i, _| i != drop);
        let report = is_balanced(&five).unwrap();
        let w = witness_unbalanced(&five, &report).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(w.point, vec![h, h, 0.0, 0.0]);
        assert_eq!(w.probe_pair, (1, 2));
        assert_eq!(w.defect, Ratio::new(1, 3));
        let numeric = augmented_cross_term(&five, &w.point, 1, 2).unwrap();
        assert!((numeric - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn witness_for_single_operator() {
        let u = SignedInvolution::from_ints(4, &[3, 4, 1, 2], &[1, 1, -1, -1]).unwrap();
        let set = OperatorSet::new(4, vec![u]).unwrap();
        let report = is_balanced(&set).unwrap();
        let w = witness_unbalanced(&set, &report).unwrap();
        assert_eq!(w.slice, FailingSlice::PairSlice { p: 1, q: 2 });
        assert_eq!(w.defect, Ratio::new(1, 6));
    }

    #[test]
    fn witness_requires_unbalanced_report() {
        let set = build_minimal_balanced(2).unwrap();
        let report = is_balanced(&set).unwrap();
        assert_eq!(witness_unbalanced(&set, &report), Err(Error::Balanced));
    }
}
