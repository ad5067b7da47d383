pub mod archimedean;
pub mod bookkeeping;
pub mod cyclotomic;
pub mod euler;
pub mod error;
pub mod exact;
pub mod gamma;
pub mod hpfloat;
pub mod local_factor;
pub mod scalar;
pub mod spherical;

pub use cyclotomic::CyclotomicNumber;
pub use error::{Error, Result};
pub use hpfloat::HpComplex;
pub use scalar::Scalar;
