//! The quadratic Dirichlet series `L(s, delta) = sum_q lambda_q(delta) q^-s`
//! and its ingredients: the densities `rho_q`, `lambda_q`, the factor
//! `T_l^(D)(s)`, Dirichlet L-values, the completed function and the zeros of
//! `T`.

mod completed;
mod density;
mod dirichlet;
mod ldelta;
mod tfactor;
mod tzeros;

pub use completed::{completed_l, functional_equation_residual};
pub use density::{
    lambda, lambda_partial_sum, lambda_prime_power, lambda_via_kloosterman, rho, rho_bruteforce,
    rho_via_kloosterman, DensityValue, KloostermanDensity, LambdaPartialSum, LambdaTable,
};
pub use dirichlet::{
    dirichlet_l, l1_log_sin, l1_theta_series, l_euler_maclaurin, LOG_SIN_MAX_CONDUCTOR,
};
pub use ldelta::{imprimitive_l, l_delta, l_delta_partial, l_one};
pub(crate) use ldelta::l_one_decomposed;
pub use tfactor::{t_factor, t_factor_direct, tau_s, TFactor};
pub use tzeros::{t_numerator_roots, t_zero_check};

use num_complex::Complex64;
use serde::Serialize;

/// How an [`LValue`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LMethod {
    ClosedForm,
    PartialSeries,
    SmoothedSv,
    LogSin,
    EulerMaclaurin,
    /// `erfc`/`E_1` series from the theta functional equation, used at `s = 1`
    /// for conductors beyond the log-sin range.
    ThetaSeries,
}

/// What the L-value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LSubject {
    /// `L(s, delta)` for a discriminant.
    Delta(i64),
    /// `L(s, chi_D)` for a fundamental discriminant.
    Character(i64),
}

/// Truncation parameters of an [`LValue`].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Truncation {
    /// Largest modulus `q` summed.
    pub q_max: Option<u64>,
    /// Smoothing length `V`.
    pub v: Option<f64>,
    pub em_cutoff: Option<usize>,
    pub em_order: Option<usize>,
    /// Number of character terms summed.
    pub terms: Option<u64>,
}

/// A computed L-value tagged with its method and truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LValue {
    #[serde(serialize_with = "ser_complex")]
    pub s: Complex64,
    pub subject: LSubject,
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    pub method: LMethod,
    pub truncation: Truncation,
    /// Set when a partial series is evaluated where it need not converge.
    pub outside_convergence: bool,
}

impl LValue {
    pub fn re(&self) -> f64 {
        self.value.re
    }
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}
