//! Signed involutions: coordinate-pair swaps with one sign flip per pair.
//!
//! An operator on `R^{2n}` is described by a pairing `k` (a fixed-point-free
//! involution of `{1, .., 2n}`) and signs `ε` with `ε_i = -ε_{k_i}`. It acts by
//! `U(a)_i = ε_{k_i} a_{k_i}`. Every such operator maps a point of the unit
//! sphere to a unit tangent vector at that point.
//!
//! Indices are 1-based at every public boundary. Internally they are stored
//! 0-based.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default largest `n` accepted by [`enumerate_full`]. `#A_10 = 30240`.
pub const DEFAULT_ENUMERATION_CAP: usize = 5;

/// A sign `±1`.
///
/// Ordered with `Plus` first, so canonical orderings list `+1` before `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i64")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Apply the sign to a value.
    pub fn apply<T: Neg<Output = T>>(self, x: T) -> T {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value()
    }
}

impl TryFrom<i64> for Sign {
    type Error = Error;

    fn try_from(v: i64) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::InvalidSign(other)),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// One operator `U_{(ε_i, k_i)}` of `A_{2n}`.
///
/// Equality and ordering are structural: pairing first (lexicographic), then
/// signs (lexicographic, `+1` before `-1`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedInvolution {
    // 0-based partner of each position.
    pairing: Vec<usize>,
    signs: Vec<Sign>,
}

impl SignedInvolution {
    /// Validate and build an operator from a 1-based pairing and its signs.
    pub fn new(dim: usize, pairing: &[usize], signs: &[Sign]) -> Result<Self> {
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::BadDimension(dim));
        }
        if pairing.len() != dim {
            return Err(Error::LengthMismatch {
                what: "pairing",
                expected: dim,
                found: pairing.len(),
            });
        }
        if signs.len() != dim {
            return Err(Error::LengthMismatch {
                what: "signs",
                expected: dim,
                found: signs.len(),
            });
        }
        if let Some((i, &v)) = pairing.iter().enumerate().find(|(_, &v)| v == 0 || v > dim) {
            return Err(Error::IndexOutOfRange {
                position: i + 1,
                value: v,
                dim,
            });
        }
        let zero_based: Vec<usize> = pairing.iter().map(|&v| v - 1).collect();
        for (i, &k) in zero_based.iter().enumerate() {
            if k == i {
                return Err(Error::FixedPoint { position: i + 1 });
            }
            if zero_based[k] != i {
                return Err(Error::NotInvolution {
                    position: i + 1,
                    partner: k + 1,
                    back: zero_based[k] + 1,
                });
            }
            if signs[i] == signs[k] {
                return Err(Error::SignNotAntisymmetric {
                    position: i + 1,
                    partner: k + 1,
                });
            }
        }
        Ok(SignedInvolution {
            pairing: zero_based,
            signs: signs.to_vec(),
        })
    }

    /// Like [`SignedInvolution::new`] with signs given as integers.
    pub fn from_ints(dim: usize, pairing: &[usize], signs: &[i64]) -> Result<Self> {
        let signs = signs.iter().map(|&s| Sign::try_from(s)).collect::<Result<Vec<_>>>()?;
        Self::new(dim, pairing, &signs)
    }

    // Caller guarantees the invariants.
    pub(crate) fn from_parts_unchecked(pairing: Vec<usize>, signs: Vec<Sign>) -> Self {
        debug_assert!(pairing
            .iter()
            .enumerate()
            .all(|(i, &k)| k != i && pairing[k] == i && signs[i] != signs[k]));
        SignedInvolution { pairing, signs }
    }

    pub fn dim(&self) -> usize {
        self.pairing.len()
    }

    /// `n` for an operator on `R^{2n}`.
    pub fn order(&self) -> usize {
        self.pairing.len() / 2
    }

    /// 1-based partner of 1-based position `i`.
    pub fn partner(&self, i: usize) -> usize {
        self.pairing[i - 1] + 1
    }

    /// Sign at 1-based position `i`.
    pub fn sign(&self, i: usize) -> Sign {
        self.signs[i - 1]
    }

    /// The pairing as 1-based indices.
    pub fn pairing(&self) -> Vec<usize> {
        self.pairing.iter().map(|&k| k + 1).collect()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub(crate) fn pairing0(&self) -> &[usize] {
        &self.pairing
    }

    /// `U(a)_i = ε_{k_i} a_{k_i}`.
    pub fn apply<T>(&self, a: &[T]) -> Result<Vec<T>>
    where
        T: Copy + Neg<Output = T>,
    {
        self.check_len(a.len())?;
        Ok(self.pairing.iter().map(|&k| self.signs[k].apply(a[k])).collect())
    }

    /// Write `U(a)` into `out` without allocating.
    pub fn apply_into(&self, a: &[f64], out: &mut [f64]) -> Result<()> {
        self.check_len(a.len())?;
        self.check_len(out.len())?;
        for (o, &k) in out.iter_mut().zip(&self.pairing) {
            *o = self.signs[k].apply(a[k]);
        }
        Ok(())
    }

    /// `⟨U(a), a⟩`; zero for every `a`, exactly so in exact arithmetic.
    pub fn tangency_defect<T>(&self, a: &[T]) -> Result<T>
    where
        T: Copy + Neg<Output = T> + Mul<Output = T> + Add<Output = T> + Zero,
    {
        let image = self.apply(a)?;
        Ok(image.iter().zip(a).fold(T::zero(), |acc, (&u, &x)| acc + u * x))
    }

    /// Unordered pairs `(i, k_i)` with `i < k_i`, 1-based, sorted by `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.pairing
            .iter()
            .enumerate()
            .filter(|(i, &k)| *i < k)
            .map(|(i, &k)| (i + 1, k + 1))
            .collect()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::LengthMismatch {
                what: "vector",
                expected: self.dim(),
                found: len,
            });
        }
        Ok(())
    }
}

impl fmt::Display for SignedInvolution {
    /// Renders the image of a symbolic vector, e.g. `(-a2, a1, a4, -a3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, &k) in self.pairing.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let sign = if self.signs[k] == Sign::Minus { "-" } else { "" };
            write!(f, "{sign}a{}", k + 1)?;
        }
        f.write_str(")")
    }
}

/// An ordered collection of distinct operators of a common dimension.
///
/// Members keep the order they were given in; the generators in this crate
/// produce their own canonical orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSet {
    dim: usize,
    members: Vec<SignedInvolution>,
}

impl OperatorSet {
    pub fn new(dim: usize, members: Vec<SignedInvolution>) -> Result<Self> {
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::BadDimension(dim));
        }
        // Sorting a copy of references keeps the duplicate check O(m log m).
        let mut sorted: Vec<(usize, &SignedInvolution)> = members.iter().enumerate().collect();
        for (_, u) in &sorted {
            if u.dim() != dim {
                return Err(Error::MixedDimension {
                    expected: dim,
                    found: u.dim(),
                });
            }
        }
        sorted.sort_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)));
        if let Some(w) = sorted.windows(2).find(|w| w[0].1 == w[1].1) {
            return Err(Error::DuplicateOperator(w[1].0.max(w[0].0) + 1));
        }
        Ok(OperatorSet { dim, members })
    }

    pub(crate) fn from_unique_unchecked(dim: usize, members: Vec<SignedInvolution>) -> Self {
        OperatorSet { dim, members }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.dim / 2
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SignedInvolution] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SignedInvolution> {
        self.members.iter()
    }

    /// The subset selected by `keep`, in set order.
    pub fn filter<F>(&self, mut keep: F) -> OperatorSet
    where
        F: FnMut(usize, &SignedInvolution) -> bool,
    {
        let members = self
            .members
            .iter()
            .enumerate()
            .filter(|(i, u)| keep(*i, u))
            .map(|(_, u)| u.clone())
            .collect();
        OperatorSet::from_unique_unchecked(self.dim, members)
    }

    /// Images `U(a)` for every member, in set order.
    pub fn images(&self, a: &[f64]) -> Result<Vec<Vec<f64>>> {
        self.members.iter().map(|u| u.apply(a)).collect()
    }
}

impl<'a> IntoIterator for &'a OperatorSet {
    type Item = &'a SignedInvolution;
    type IntoIter = std::slice::Iter<'a, SignedInvolution>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// All fixed-point-free involutions of `{0, .., 2n-1}` (0-based partners).
pub(crate) fn perfect_matchings(dim: usize) -> Vec<Vec<usize>> {
    fn go(partner: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(first) = partner.iter().position(Option::is_none) else {
            out.push(partner.iter().map(|k| k.unwrap()).collect());
            return;
        };
        for j in first + 1..partner.len() {
            if partner[j].is_none() {
                partner[first] = Some(j);
                partner[j] = Some(first);
                go(partner, out);
                partner[first] = None;
                partner[j] = None;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![None; dim], &mut out);
    out
}

/// Every admissible sign vector for a 0-based pairing, lexicographic with
/// `+1` first: each pair `(i, k_i)`, `i < k_i`, is one binary digit, the pair
/// with the smallest `i` being the most significant.
pub(crate) fn sign_assignments(pairing: &[usize], fixed_first: bool) -> Vec<Vec<Sign>> {
    let leaders: Vec<usize> = (0..pairing.len()).filter(|&i| i < pairing[i]).collect();
    let free: &[usize] = if fixed_first { &leaders[1..] } else { &leaders };
    let count = 1usize << free.len();
    (0..count)
        .map(|mask| {
            let mut signs = vec![Sign::Plus; pairing.len()];
            if fixed_first {
                signs[pairing[0]] = Sign::Minus;
            }
            for (bit, &i) in free.iter().enumerate() {
                let digit = (mask >> (free.len() - 1 - bit)) & 1;
                let s = if digit == 0 { Sign::Plus } else { Sign::Minus };
                signs[i] = s;
                signs[pairing[i]] = s.flip();
            }
            signs
        })
        .collect()
}

/// The full set `A_{2n}` in canonical order, refusing `n` above
/// [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_full(n: usize) -> Result<OperatorSet> {
    enumerate_full_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

/// The full set `A_{2n}` with `(2n)!/n!` members, ordered by pairing then
/// signs.
pub fn enumerate_full_with_cap(n: usize, cap: usize) -> Result<OperatorSet> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    let dim = 2 * n;
    let mut matchings = perfect_matchings(dim);
    matchings.sort();
    let members = matchings
        .into_iter()
        .flat_map(|k| {
            sign_assignments(&k, false)
                .into_iter()
                .map(move |s| SignedInvolution::from_parts_unchecked(k.clone(), s))
        })
        .collect();
    Ok(OperatorSet::from_unique_unchecked(dim, members))
}

/// Operators that give moving orthonormal bases of tangent spaces.
pub mod presets {
    use super::*;

    /// `a ↦ (-a2, a1)` on the circle.
    pub fn circle() -> OperatorSet {
        let u = SignedInvolution::from_ints(2, &[2, 1], &[1, -1]).unwrap();
        OperatorSet::from_unique_unchecked(2, vec![u])
    }

    /// The three fields `(-a2, a1, a4, -a3)`, `(-a3, -a4, a1, a2)` and
    /// `(-a4, a3, -a2, a1)` on `S^3`.
    pub fn s3_triple() -> OperatorSet {
        let members = [
            ([2, 1, 4, 3], [1, -1, -1, 1]),
            ([3, 4, 1, 2], [1, 1, -1, -1]),
            ([4, 3, 2, 1], [1, -1, 1, -1]),
        ]
        .iter()
        .map(|(k, e)| SignedInvolution::from_ints(4, k, e).unwrap())
        .collect();
        OperatorSet::from_unique_unchecked(4, members)
    }
}
