//! Exact combinatorics of balanced operator sets.
//!
//! A set `A` on `R^{2n}` is balanced when
//!
//! 1. for every `p ≠ q`, `#A_{p,q} = #A / (2n - 1)` where
//!    `A_{p,q} = {U ∈ A : k_p = q}`, and
//! 2. for all distinct `p, q, r, s`, `#A_{p,q,r,s,+1} = #A_{p,q,r,s,-1}` where
//!    `A_{p,q,r,s,ε} = {U ∈ A : ε_p ε_q = ε, {k_r, k_s} = {p, q}}`.
//!
//! Everything here is integer arithmetic. The balanced sets of minimum known
//! size come from a symmetric Latin-square-like matrix whose label classes are
//! a one-factorization of the complete graph on `2n` vertices.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::involution::{sign_assignments, OperatorSet, Sign, SignedInvolution};

fn check_index(index: usize, dim: usize) -> Result<()> {
    if index == 0 || index > dim {
        return Err(Error::BadIndex { index, dim });
    }
    Ok(())
}

/// `#{U ∈ A : k_p = q}` (1-based `p`, `q`).
pub fn count_pair_slice(set: &OperatorSet, p: usize, q: usize) -> Result<usize> {
    check_index(p, set.dim())?;
    check_index(q, set.dim())?;
    if p == q {
        return Err(Error::IndicesNotDistinct);
    }
    Ok(set.iter().filter(|u| u.partner(p) == q).count())
}

/// `#{U ∈ A : ε_p ε_q = ε, {k_r, k_s} = {p, q}}` (1-based indices).
pub fn count_sign_slice(set: &OperatorSet, p: usize, q: usize, r: usize, s: usize, eps: Sign) -> Result<usize> {
    if set.dim() < 4 {
        return Err(Error::DimensionTooSmall(set.dim()));
    }
    let idx = [p, q, r, s];
    for &i in &idx {
        check_index(i, set.dim())?;
    }
    if (0..4).any(|a| (a + 1..4).any(|b| idx[a] == idx[b])) {
        return Err(Error::IndicesNotDistinct);
    }
    Ok(set
        .iter()
        .filter(|u| {
            let (kr, ks) = (u.partner(r), u.partner(s));
            u.sign(p) * u.sign(q) == eps && ((kr == p && ks == q) || (kr == q && ks == p))
        })
        .count())
}

fn serialize_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

pub(crate) fn format_ratio(r: &Ratio<i64>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A failing instance of condition (i).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSliceFailure {
    pub p: usize,
    pub q: usize,
    /// `#A_{p,q}`.
    pub observed: usize,
    /// `#A / (2n - 1)`.
    #[serde(serialize_with = "serialize_ratio")]
    pub required: Ratio<i64>,
}

/// A failing instance of condition (ii).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignSliceFailure {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
    pub plus: usize,
    pub minus: usize,
}

/// Exact balance verdict.
///
/// Failures are listed once per unordered pair: `p < q` for both conditions
/// and `r < s` for condition (ii). Both slice families are symmetric under
/// those swaps. Lists are sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub balanced: bool,
    pub set_size: usize,
    pub condition_i_failures: Vec<PairSliceFailure>,
    pub condition_ii_failures: Vec<SignSliceFailure>,
}

/// Decide whether `set` is balanced, listing every failing slice.
///
/// For `n = 1` there are no four distinct indices, so condition (ii) holds
/// vacuously and only condition (i) is evaluated.
pub fn is_balanced(set: &OperatorSet) -> Result<BalanceReport> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = set.dim();
    if let Some(u) = set.iter().find(|u| u.dim() != dim) {
        return Err(Error::MixedDimension {
            expected: dim,
            found: u.dim(),
        });
    }
    let size = set.len();
    let classes = dim - 1;

    let mut pair_counts = vec![0usize; dim * dim];
    // (p, q, r, s) -> (plus, minus), with p < q, r < s, 0-based.
    let mut sign_counts: BTreeMap<(usize, usize, usize, usize), (usize, usize)> = BTreeMap::new();
    for u in set {
        let k = u.pairing0();
        let signs = u.signs();
        for p in 0..dim {
            if p < k[p] {
                pair_counts[p * dim + k[p]] += 1;
            }
            for q in p + 1..dim {
                if k[p] == q {
                    continue;
                }
                // {k_r, k_s} = {p, q} forces {r, s} = {k_p, k_q}.
                let (r, s) = (k[p].min(k[q]), k[p].max(k[q]));
                let entry = sign_counts.entry((p, q, r, s)).or_default();
                if signs[p] == signs[q] {
                    entry.0 += 1;
                } else {
                    entry.1 += 1;
                }
            }
        }
    }

    let required = Ratio::new(size as i64, classes as i64);
    let mut condition_i_failures = Vec::new();
    for p in 0..dim {
        for q in p + 1..dim {
            let observed = pair_counts[p * dim + q];
            if observed * classes != size {
                condition_i_failures.push(PairSliceFailure {
                    p: p + 1,
                    q: q + 1,
                    observed,
                    required,
                });
            }
        }
    }
    let condition_ii_failures: Vec<SignSliceFailure> = sign_counts
        .into_iter()
        .filter(|(_, (plus, minus))| plus != minus)
        .map(|((p, q, r, s), (plus, minus))| SignSliceFailure {
            p: p + 1,
            q: q + 1,
            r: r + 1,
            s: s + 1,
            plus,
            minus,
        })
        .collect();

    Ok(BalanceReport {
        balanced: condition_i_failures.is_empty() && condition_ii_failures.is_empty(),
        set_size: size,
        condition_i_failures,
        condition_ii_failures,
    })
}

/// Flip the signs at `p` and `k_p`, keeping the pairing.
///
/// At fixed `p` this is an involution on `A_{2n}` that carries
/// `A_{p,q,r,s,-1}` onto `A_{p,q,r,s,+1}`.
pub fn sign_flip_bijection(u: &SignedInvolution, p: usize) -> Result<SignedInvolution> {
    check_index(p, u.dim())?;
    let partner = u.partner(p);
    let mut signs = u.signs().to_vec();
    signs[p - 1] = signs[p - 1].flip();
    signs[partner - 1] = signs[partner - 1].flip();
    SignedInvolution::new(u.dim(), &u.pairing(), &signs)
}

/// Symmetric `2n × 2n` matrix with zero diagonal whose rows each permute
/// `{0, .., 2n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingMatrix {
    n: usize,
    entries: Vec<Vec<usize>>,
}

impl PairingMatrix {
    /// Validate an arbitrary matrix.
    pub fn new(entries: Vec<Vec<usize>>) -> Result<Self> {
        let size = entries.len();
        if size == 0 || !size.is_multiple_of(2) {
            return Err(Error::InvalidPairingMatrix(format!(
                "size {size} is not a positive even number"
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidPairingMatrix(format!(
                    "row {} has length {}, expected {size}",
                    i + 1,
                    row.len()
                )));
            }
            if row[i] != 0 {
                return Err(Error::InvalidPairingMatrix(format!(
                    "diagonal entry ({0}, {0}) is {1}, expected 0",
                    i + 1,
                    row[i]
                )));
            }
            let mut seen = vec![false; size];
            for (j, &v) in row.iter().enumerate() {
                if v >= size || seen[v] {
                    return Err(Error::InvalidPairingMatrix(format!(
                        "row {} is not a permutation of 0..{} (entry {} = {v})",
                        i + 1,
                        size - 1,
                        j + 1
                    )));
                }
                seen[v] = true;
                if entries[j][i] != v {
                    return Err(Error::InvalidPairingMatrix(format!(
                        "not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(PairingMatrix { n: size / 2, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based entry `m_{i,j}`.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.entries
    }
}

impl fmt::Display for PairingMatrix {
    /// One row per line, single spaces, no trailing space.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Build the pairing matrix for `R^{2n}`.
///
/// With `t = 2n - 1` and 1-based `i, j`:
/// `m_{i,j} = ((i + j - 2) mod t) + 1` for distinct `i, j < 2n`, and
/// `m_{i,2n} = m_{2n,i} = ((2i - 2) mod t) + 1` for `i < 2n`. The last column
/// supplies the one residue missing from each row because 2 is invertible
/// modulo the odd number `t`.
pub fn build_pairing_matrix(n: usize) -> Result<PairingMatrix> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let size = 2 * n;
    let t = size - 1;
    let mut entries = vec![vec![0usize; size]; size];
    for i in 1..=size {
        for j in 1..=size {
            entries[i - 1][j - 1] = if i == j {
                0
            } else if i < size && j < size {
                (i + j - 2) % t + 1
            } else if j == size {
                (2 * i - 2) % t + 1
            } else {
                (2 * j - 2) % t + 1
            };
        }
    }
    PairingMatrix::new(entries)
}

/// `2n - 1` fixed-point-free involutions covering every unordered pair
/// exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingFamily {
    n: usize,
    // 0-based partners.
    pairings: Vec<Vec<usize>>,
}

impl PairingFamily {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairings.is_empty()
    }

    /// The pairings as 1-based index sequences.
    pub fn pairings(&self) -> Vec<Vec<usize>> {
        self.pairings
            .iter()
            .map(|k| k.iter().map(|&v| v + 1).collect())
            .collect()
    }
}

/// Pairing `j` sends row `i` to the column holding label `j` in that row.
pub fn extract_pairings(matrix: &PairingMatrix) -> PairingFamily {
    let size = 2 * matrix.n;
    let mut pairings = vec![vec![0usize; size]; size - 1];
    for (i, row) in matrix.entries.iter().enumerate() {
        for (col, &label) in row.iter().enumerate() {
            if label > 0 {
                pairings[label - 1][i] = col;
            }
        }
    }
    PairingFamily { n: matrix.n, pairings }
}

/// Balanced set of size `(2n - 1) 2^{n-1}`.
///
/// Each pairing of the family (in label order) is combined with every
/// admissible sign vector having `ε_1 = +1`. Free signs belong to the pairs
/// not containing index 1, ordered by their smaller index, and are counted in
/// binary with `+1` first.
pub fn build_minimal_balanced(n: usize) -> Result<OperatorSet> {
    let family = extract_pairings(&build_pairing_matrix(n)?);
    let members = family
        .pairings
        .iter()
        .flat_map(|k| {
            sign_assignments(k, true)
                .into_iter()
                .map(move |s| SignedInvolution::from_parts_unchecked(k.clone(), s))
        })
        .collect();
    Ok(OperatorSet::from_unique_unchecked(2 * n, members))
}
