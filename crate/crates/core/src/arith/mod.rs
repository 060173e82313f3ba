//! Exact integer arithmetic: factorization, the Kronecker symbol,
//! discriminant decomposition, Pell units and class numbers of indefinite
//! forms.

pub mod discriminant;
pub mod factor;
pub mod forms;
pub mod kronecker;
pub mod pell;

pub use discriminant::{decompose_discriminant, is_discriminant, is_fundamental, DiscriminantDecomposition};
pub use factor::{factorize, is_prime, isqrt, Factorization, SpfSieve};
pub use forms::{class_number, reduced_forms, Form, FormClassData};
pub use kronecker::{chi, kronecker};
pub use pell::{pell_fundamental, PellData};

/// Moebius function for `n >= 1`.
pub fn mobius(n: u64) -> i64 {
    factorize(n).map_or(0, |f| f.mobius())
}
