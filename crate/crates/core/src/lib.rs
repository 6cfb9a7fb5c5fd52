//! Moving finite unit tight frames on odd-dimensional spheres.
//!
//! Tangent vector fields on `S^{2n-1}` are built from signed involutions of
//! the coordinates ([`involution`]). A set of them gives a unit tight frame
//! of every tangent space exactly when it is *balanced*, a purely
//! combinatorial property decided in [`balance`], which also builds balanced
//! sets of size `(2n-1)·2^{n-1}`. [`frame`] certifies tightness numerically
//! and produces explicit witnesses for unbalanced sets.

pub mod balance;
pub mod document;
pub mod error;
pub mod frame;
pub mod involution;
pub mod sphere;

pub use balance::{
    build_minimal_balanced, build_pairing_matrix, count_pair_slice, count_sign_slice, extract_pairings, is_balanced,
    sign_flip_bijection, BalanceReport, PairSliceFailure, PairingFamily, PairingMatrix, SignSliceFailure,
};
pub use document::{DocumentError, Metadata, OperatorRecord, OperatorSetDocument};
pub use error::{Error, Result};
pub use frame::{
    augment_with_normal, augmented_cross_term, check_tight, frame_coefficients, frame_operator, reconstruct,
    verify_moving_funtf, verify_moving_funtf_direct, witness_unbalanced, FailingSlice, FrameReport, UnbalancedWitness,
    DEFAULT_TOLERANCE,
};
pub use involution::{
    enumerate_full, enumerate_full_with_cap, presets, OperatorSet, Sign, SignedInvolution, DEFAULT_ENUMERATION_CAP,
};
pub use sphere::{project_tangent, random_sphere_point, tangent_basis, SpherePoint, SphereSampler};
