//! Spherical functions on `Sp_{2m}(Q_p)` and the local integral
//! `I(Φ_p, Ψ_p) = ∫ Φ_p(g) conj(Ψ_p(g)) dg` over `Sp_2(Q_p)`.

pub mod cartan;
pub mod integral;
pub mod laurent;
pub mod macdonald;
pub mod root_datum;

pub use cartan::{cell_volume, f_recursion_special_value, volume_of_k};
pub use integral::{truncated_local_integral, LocalIntegral};
pub use laurent::Laurent;
pub use macdonald::{degenerate_sigma_params, embedded_cocharacter, spherical_value, DeformedSatake, SphericalEvaluator};
pub use root_datum::{Cocharacter, RootDatumC, SignedPermutation};
