//! Verification suites over the library invariants.

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{class_number, is_fundamental, is_prime, mobius, pell_fundamental};
use crate::error::Result;
use crate::geodesics::{class_record, GeodesicTable};
use crate::kloosterman::{kloosterman_sum, selberg_identity_residual};
use crate::lseries::{
    functional_equation_residual, imprimitive_l, l_delta, rho, rho_bruteforce, t_zero_check, KloostermanDensity,
    LambdaTable,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Kloosterman,
    FunctionalEquation,
    TZeros,
    PsiConsistency,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] =
        [Suite::Identities, Suite::Kloosterman, Suite::FunctionalEquation, Suite::TZeros, Suite::PsiConsistency];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Kloosterman => "kloosterman",
            Suite::FunctionalEquation => "functional-equation",
            Suite::TZeros => "t-zeros",
            Suite::PsiConsistency => "psi-consistency",
            Suite::All => "all",
        }
    }
}

/// Sizes and tolerance of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyParams {
    pub max_n: u64,
    pub max_q: u64,
    /// Replaces the relative tolerance of every floating-point check.
    pub tolerance: Option<f64>,
}

/// Summary of one suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub checks: u64,
    /// Largest `residual / tolerance` seen; at most 1 when everything passed.
    pub worst_ratio: f64,
    /// First failing check.
    pub counterexample: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

struct Checker {
    checks: u64,
    worst: f64,
    failure: Option<String>,
    tol_override: Option<f64>,
}

impl Checker {
    fn new(tol_override: Option<f64>) -> Self {
        Checker { checks: 0, worst: 0.0, failure: None, tol_override }
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol_override.unwrap_or(default)
    }

    /// Records `residual <= tol`; returns `false` once a check has failed.
    fn within(&mut self, residual: f64, tol: f64, what: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        let ratio = if tol > 0.0 { residual / tol } else if residual == 0.0 { 0.0 } else { f64::INFINITY };
        if ratio.is_nan() || ratio > 1.0 {
            self.failure = Some(format!("{} (residual {residual:e}, tolerance {tol:e})", what()));
            self.worst = f64::INFINITY;
            return false;
        }
        self.worst = self.worst.max(ratio);
        true
    }

    fn exact<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, what: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if got != want {
            self.failure = Some(format!("{}: got {got:?}, expected {want:?}", what()));
            self.worst = f64::INFINITY;
            return false;
        }
        true
    }

    fn finish(self, suite: Suite) -> SuiteOutcome {
        SuiteOutcome { suite, checks: self.checks, worst_ratio: self.worst, counterexample: self.failure }
    }
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run_suite(suite: Suite, p: &VerifyParams) -> Result<Vec<SuiteOutcome>> {
    let one = |s: Suite| -> Result<SuiteOutcome> {
        let mut c = Checker::new(p.tolerance);
        match s {
            Suite::Identities => identities(&mut c, p)?,
            Suite::Kloosterman => kloosterman(&mut c, p)?,
            Suite::FunctionalEquation => functional_equation(&mut c, p)?,
            Suite::TZeros => t_zeros(&mut c),
            Suite::PsiConsistency => psi_consistency(&mut c, p)?,
            Suite::All => unreachable!(),
        }
        Ok(c.finish(s))
    };
    match suite {
        Suite::All => Suite::EACH.into_iter().map(one).collect(),
        s => Ok(vec![one(s)?]),
    }
}

fn identities(c: &mut Checker, p: &VerifyParams) -> Result<()> {
    let q_max = p.max_q;
    for n in 3..=p.max_n {
        let delta = (n * n - 4) as i64;
        let brute: Vec<i64> = (0..=q_max).map(|q| if q == 0 { 0 } else { rho_bruteforce(q, delta) as i64 }).collect();
        let table = LambdaTable::new(delta, q_max)?;
        for q in 1..=q_max {
            if !c.exact(rho(q, delta)? as i64, brute[q as usize], || format!("rho_{q}({delta})")) {
                return Ok(());
            }
            // lambda = (square indicator) * mu * rho
            let mut conv = 0i64;
            let mut q1 = 1;
            while q1 * q1 <= q {
                if q % (q1 * q1) == 0 {
                    let rest = q / (q1 * q1);
                    for q2 in (1..=rest).filter(|d| rest % d == 0) {
                        conv += mobius(q2) * brute[(rest / q2) as usize];
                    }
                }
                q1 += 1;
            }
            if !c.exact(table.get(q), conv, || format!("lambda_{q}({delta}) against the Moebius convolution")) {
                return Ok(());
            }
            // rho = mu^2 * lambda
            let inv: i64 = (1..=q).filter(|a| q % a == 0).map(|a| mobius(a).pow(2) * table.get(q / a)).sum();
            if !c.exact(inv, brute[q as usize], || format!("sum mu^2(a) lambda_(q/a) at q={q}, delta={delta}")) {
                return Ok(());
            }
        }
        let rec = class_record(n)?;
        let sqrt_delta = (delta as f64).sqrt();
        for s in [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)] {
            let rhs = l_delta(s, delta)?.value;
            let mut lhs = Complex64::new(0.0, 0.0);
            for e in &rec.decompositions {
                let f = e.f as f64;
                lhs += imprimitive_l(s, e.d as i64)?.value * f.powf(1.0 - 2.0 * s.re);
            }
            let gap = (lhs - rhs).norm() / rhs.norm();
            if !c.within(gap, c.tol(1e-8), || format!("sum_(d f^2 = delta) L(s, chi_d) f^(1-2s) at s={s}, delta={delta}")) {
                return Ok(());
            }
        }
        let l1 = l_delta(Complex64::new(1.0, 0.0), delta)?.value.re;
        let gap = (rec.total_a - sqrt_delta * l1).abs() / rec.total_a;
        if !c.within(gap, c.tol(1e-8), || format!("sum h log eps = sqrt(delta) L(1, delta) at n={n}")) {
            return Ok(());
        }
    }
    // class number formula on fundamental discriminants
    for d in (5..=(4 * p.max_n as i64)).filter(|&d| is_fundamental(d)) {
        let h = class_number(d)?.h as f64;
        let lhs = h * pell_fundamental(d)?.log_eps;
        let rhs = (d as f64).sqrt() * l_delta(Complex64::new(1.0, 0.0), d)?.value.re;
        if !c.within((lhs - rhs).abs() / lhs, c.tol(1e-10), || format!("h(d) log eps_d = sqrt d L(1, chi_d) at d={d}")) {
            return Ok(());
        }
    }
    Ok(())
}

fn kloosterman(c: &mut Checker, p: &VerifyParams) -> Result<()> {
    for q in 1..=p.max_q {
        let qf = q as f64;
        for z in 0..=50i64 {
            let r = selberg_identity_residual(z, q);
            if !c.within(r, c.tol(1e-6) * qf, || format!("Selberg identity at z={z}, q={q}")) {
                return Ok(());
            }
        }
        for m in -10..=10i64 {
            for n in -10..=10i64 {
                let v = kloosterman_sum(m, n, q);
                let excess = (v.value.abs() - v.weil_bound()).max(0.0);
                if !c.within(excess, 1e-6, || format!("Weil bound for S({m},{n};{q}) = {}", v.value)) {
                    return Ok(());
                }
            }
        }
        let dens = KloostermanDensity::new(q);
        let n_top = p.max_n.min(50);
        for n in 3..=n_top {
            let delta = (n * n - 4) as i64;
            let exact_rho = rho(q, delta)? as f64;
            let exact_lambda = crate::lseries::lambda(q, delta)? as f64;
            let (kr, kl) = (dens.rho(n as i64), dens.lambda(n as i64));
            if !c.within((kr - exact_rho).abs(), c.tol(1e-6) * qf, || format!("Kloosterman rho_{q}({n}^2-4) = {kr}")) {
                return Ok(());
            }
            if !c.within((kl - exact_lambda).abs(), c.tol(1e-6) * qf, || format!("Kloosterman lambda_{q}({n}^2-4) = {kl}")) {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Twenty fixed points off the real axis.
pub fn fe_sample_points() -> Vec<Complex64> {
    (0..20).map(|j| Complex64::new(-0.75 + 0.125 * j as f64, 0.3 + 0.37 * j as f64)).collect()
}

fn functional_equation(c: &mut Checker, p: &VerifyParams) -> Result<()> {
    for n in 3..=p.max_n.min(30) {
        let delta = (n * n - 4) as i64;
        for s in fe_sample_points() {
            let lam = crate::lseries::completed_l(s, delta)?.norm();
            let r = functional_equation_residual(s, delta)?;
            if !c.within(r, c.tol(1e-8) * lam, || format!("Lambda(s) = Lambda(1-s) at s={s}, delta={delta}")) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn t_zeros(c: &mut Checker) {
    let ds: Vec<i64> = (-100..=100i64).filter(|&d| d != 1 && is_fundamental(d)).collect();
    for p in (2..=50u64).filter(|&p| is_prime(p)) {
        for k in 1..=6 {
            for &d in &ds {
                let r = t_zero_check(p, k, d);
                if !c.within(r, c.tol(1e-8), || format!("zeros of T_(p^k) off the unit circle at p={p}, k={k}, D={d}")) {
                    return;
                }
            }
        }
    }
}

fn psi_consistency(c: &mut Checker, p: &VerifyParams) -> Result<()> {
    let x_max = ((p.max_n * p.max_n) as f64).max(100.0);
    let table = GeodesicTable::build(x_max)?;
    let points = 20;
    for i in 0..points {
        let x = 10f64 * (x_max / 10.0).powf(i as f64 / (points - 1) as f64);
        let x = x.min(x_max);
        let a = table.psi_lvalue(x)?;
        let b = table.psi_oracle(x);
        if !c.within((a - b).abs(), c.tol(1e-6) * a.max(1.0), || format!("Psi by L-values {a} vs classes {b} at x={x}")) {
            return Ok(());
        }
    }
    let v = table.psi_oracle(10.0);
    if !c.within((v - 1.924_847_3).abs(), 1e-6, || format!("Psi(10) = {v}")) {
        return Ok(());
    }
    c.exact(table.pi(25.0), 5, || "pi(25)".to_string());
    Ok(())
}
