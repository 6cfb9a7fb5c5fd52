use thiserror::Error;

/// Errors raised while building or checking operators, sets and frames.
///
/// Index fields are 1-based, matching the external notation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be a positive even integer, got {0}")]
    BadDimension(usize),

    #[error("{what}: expected length {expected}, found {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("pairing index {value} at position {position} is outside 1..={dim}")]
    IndexOutOfRange { position: usize, value: usize, dim: usize },

    #[error("pairing has a fixed point at position {position}")]
    FixedPoint { position: usize },

    #[error("pairing is not an involution at position {position}: k_{position} = {partner} but k_{partner} = {back}")]
    NotInvolution {
        position: usize,
        partner: usize,
        back: usize,
    },

    #[error("signs at positions {position} and {partner} must be opposite")]
    SignNotAntisymmetric { position: usize, partner: usize },

    #[error("sign must be +1 or -1, got {0}")]
    InvalidSign(i64),

    #[error("index {index} is outside 1..={dim}")]
    BadIndex { index: usize, dim: usize },

    #[error("slice indices must be distinct")]
    IndicesNotDistinct,

    #[error("four-index slices need dimension at least 4, got {0}")]
    DimensionTooSmall(usize),

    #[error("operator set is empty")]
    EmptySet,

    #[error("operator of dimension {found} does not match set dimension {expected}")]
    MixedDimension { expected: usize, found: usize },

    #[error("duplicate operator at position {0}")]
    DuplicateOperator(usize),

    #[error("enumeration of A_{dim} refused: n = {n} exceeds the cap {cap} (raise it with --cap-override)", dim = 2 * .n)]
    EnumerationCap { n: usize, cap: usize },

    #[error("n must be at least 1")]
    ZeroOrder,

    #[error("invalid pairing matrix: {0}")]
    InvalidPairingMatrix(String),

    #[error("vector has norm {norm}, expected a unit vector")]
    NotUnit { norm: f64 },

    #[error("vector list is empty")]
    NoVectors,

    #[error("frame constant must be positive, got {0}")]
    NonPositiveConstant(f64),

    #[error("set is balanced; there is no witness to produce")]
    Balanced,
}

pub type Result<T> = std::result::Result<T, Error>;
