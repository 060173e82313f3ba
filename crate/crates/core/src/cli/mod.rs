//! The `prime-geodesic` command line.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 unparseable
//! arguments, 3 an invalid parameter or a failed computation.

mod cache;
mod output;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

pub use cache::{parse_row, LCache, LCacheEntry, HEADER as CACHE_HEADER, SPOT_CHECK_STRIDE, SPOT_CHECK_TOL};
pub use output::{render, OutputFormat};
pub use verify::{fe_sample_points, run_suite, Suite, SuiteOutcome, VerifyParams};

use crate::error::{Error, Result};
use crate::experiments::{
    explicit_formula, mean_l_short, psi_smoothed_from, s1_s2_stats, s_v, short_interval_from, smooth_error_from,
    theorem13_check, ExperimentReport, KernelSpec, SpectralData, TaggedValue, WeightSpec, DEFAULT_THETA,
};
use crate::geodesics::{GeodesicTable, PsiMethod};
use crate::lseries::l_one;
use crate::parallel::with_threads;

pub const CACHE_ENV: &str = "PRIME_GEODESIC_CACHE";

#[derive(Debug, Parser)]
#[command(name = "prime-geodesic", version, about = "Prime geodesic counts on the modular surface")]
struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, default_value_t = default_threads())]
    threads: usize,
    /// CSV cache of L(1, n^2 - 4).
    #[arg(long, global = true, env = CACHE_ENV)]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Pretty)]
    output: OutputFormat,
    /// Subconvexity exponent used to normalize short-interval residuals.
    #[arg(long, global = true, default_value_t = DEFAULT_THETA)]
    theta: f64,
    /// Relative tolerance for the floating-point checks of `verify`.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// A parsed subcommand with its numeric parameters.
#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Psi(x) = sum of log N(P_0) over classes of norm at most x.
    Psi {
        #[arg(long)]
        x: f64,
        #[arg(long, value_enum, default_value_t = PsiMethod::Lvalue)]
        method: PsiMethod,
    },
    /// Number of primitive classes of norm at most x.
    Pi {
        #[arg(long)]
        x: f64,
    },
    /// Error terms Psi(x) - x and pi(x) - li(x) on a grid.
    Table {
        #[arg(long)]
        x_min: f64,
        #[arg(long)]
        x_max: f64,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        log_spaced: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 50)]
        max_n: u64,
        #[arg(long, default_value_t = 100)]
        max_q: u64,
    },
    /// Smoothed count Psi(x; k) and its error term.
    Smooth {
        #[arg(long)]
        x: f64,
        #[arg(long = "Y")]
        y: f64,
    },
    /// Truncated explicit formula from a file of spectral parameters.
    Explicit {
        #[arg(long)]
        x: f64,
        #[arg(long = "T")]
        t: f64,
        #[arg(long)]
        eigenfile: PathBuf,
    },
    /// Exponentially smoothed series S_V(n^2 - 4).
    Sv {
        #[arg(long)]
        n: u64,
        #[arg(long = "V")]
        v: f64,
    },
    /// Psi(x + u) - Psi(x) against u.
    Short {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        u: f64,
    },
    /// Mean of L(1, n^2 - 4) over X < n <= X + delta.
    #[command(name = "meanL")]
    MeanL {
        #[arg(long = "X")]
        x: f64,
        #[arg(long)]
        delta: f64,
    },
    /// Prime sums S_1, S_2 and the truncated Euler product at n^2 - 4.
    S1s2 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        z: f64,
        #[arg(long = "Z")]
        big_z: f64,
    },
    /// Trace side against partial Kloosterman sums for a compact weight.
    Thm13 {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        q_max: u64,
    },
}

/// Everything a run needs, validated before any computation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub threads: usize,
    pub cache_path: Option<PathBuf>,
    pub output: OutputFormat,
    pub theta: f64,
    pub tolerance: Option<f64>,
}

fn need(ok: bool, param: &'static str, reason: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain { param, reason: reason() })
    }
}

fn finite_at_least(v: f64, lo: f64, param: &'static str) -> Result<()> {
    need(v.is_finite() && v >= lo, param, || format!("{v} must be a finite value >= {lo}"))
}

impl RunConfig {
    /// Parses `argv` (including the program name).
    pub fn parse<I, T>(argv: I) -> std::result::Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(argv)?;
        Ok(RunConfig {
            command: cli.command,
            threads: cli.threads,
            cache_path: cli.cache,
            output: cli.output,
            theta: cli.theta,
            tolerance: cli.tolerance,
        })
    }

    pub fn validate(&self) -> Result<()> {
        need(self.threads >= 1, "threads", || "must be at least 1".into())?;
        need((0.0..=0.5).contains(&self.theta), "theta", || format!("{} must lie in [0, 1/2]", self.theta))?;
        if let Some(t) = self.tolerance {
            need(t > 0.0 && t.is_finite(), "tolerance", || format!("{t} must be positive"))?;
        }
        match &self.command {
            Command::Psi { x, .. } | Command::Pi { x } => finite_at_least(*x, 2.0, "x"),
            Command::Table { x_min, x_max, points, .. } => {
                finite_at_least(*x_min, 2.0, "x-min")?;
                finite_at_least(*x_max, *x_min, "x-max")?;
                need(*points >= 1, "points", || "must be at least 1".into())?;
                need(*points == 1 || x_max > x_min, "points", || "several points need x-max > x-min".into())
            }
            Command::Verify { max_n, max_q, .. } => {
                need(*max_n >= 3, "max-n", || format!("{max_n} must be at least 3"))?;
                need(*max_q >= 1, "max-q", || "must be at least 1".into())
            }
            Command::Smooth { x, y } => {
                finite_at_least(*x, 2.0, "x")?;
                need(y.is_finite() && *y > 0.0, "Y", || format!("{y} must be positive"))
            }
            Command::Explicit { x, t, .. } => {
                need(x.is_finite() && *x > 1.0, "x", || format!("{x} must exceed 1"))?;
                need(t.is_finite() && *t > 0.0, "T", || format!("{t} must be positive"))
            }
            Command::Sv { n, v } => {
                need(*n >= 3, "n", || format!("trace {n} must be at least 3"))?;
                finite_at_least(*v, 1.0, "V")
            }
            Command::Short { x, u } => {
                finite_at_least(*x, 2.0, "x")?;
                need(*u > 0.0 && u <= x, "u", || format!("need 0 < u <= x, got {u}"))
            }
            Command::MeanL { x, delta } => {
                finite_at_least(*x, 2.0, "X")?;
                finite_at_least(*delta, 1.0, "delta")
            }
            Command::S1s2 { n, z, big_z } => {
                need(*n >= 3, "n", || format!("trace {n} must be at least 3"))?;
                finite_at_least(*z, 2.0, "z")?;
                need(big_z.is_finite() && big_z > z, "Z", || format!("need z < Z, got Z = {big_z}"))
            }
            Command::Thm13 { a, b, q_max } => {
                need(a.is_finite() && *a > 2.0, "a", || format!("{a} must exceed 2"))?;
                need(b.is_finite() && b > a, "b", || format!("need b > a, got b = {b}"))?;
                need(*q_max >= 100, "q-max", || format!("{q_max} must be at least 100"))
            }
        }
    }
}

/// Runs the command line `argv` (program name first), writing the report to
/// `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::parse(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if let Err(e) = cfg.validate() {
        let _ = writeln!(err, "error: {e}");
        return 3;
    }
    let start = Instant::now();
    let threads = cfg.threads;
    let mut diag = Vec::new();
    let result = with_threads(threads, || execute(&cfg, &mut diag));
    let _ = err.write_all(&diag);
    match result {
        Ok((mut report, failed)) => {
            report.timing_seconds = Some(start.elapsed().as_secs_f64());
            let _ = out.write_all(render(&report, cfg.output).as_bytes());
            if failed {
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            3
        }
    }
}

/// A table covering `x_max` with L-values, reading and refreshing the cache.
fn lvalue_table(x_max: f64, cache_path: Option<&Path>, err: &mut dyn Write) -> Result<GeodesicTable> {
    let Some(path) = cache_path else {
        return GeodesicTable::build(x_max);
    };
    let mut cache = LCache::load(path, err);
    let table = GeodesicTable::build_with_cache(x_max, cache.entries())?;
    if cache.extend(table.traces()) > 0 {
        if let Err(e) = cache.store(path) {
            let _ = writeln!(err, "warning: could not write cache {}: {e}", path.display());
        }
    }
    Ok(table)
}

const PSI_L: &str = "2 sum over traces n with N(n) <= x of sqrt(n^2-4) L(1, n^2-4)";
const PSI_ORACLE: &str = "sum over discriminants d of h(d) log(eps_d^2) #{j >= 1 : eps_d^(2j) <= x}";
const PI_FORMULA: &str = "sum of h(d) over discriminants d with eps_d^2 <= x";
const LI_FORMULA: &str = "principal value integral of dt / log t from 0 to x";

fn execute(cfg: &RunConfig, err: &mut dyn Write) -> Result<(ExperimentReport, bool)> {
    let cache = cfg.cache_path.as_deref();
    let report = match &cfg.command {
        Command::Psi { x, method } => {
            let table = match method {
                PsiMethod::Lvalue => lvalue_table(*x, cache, err)?,
                PsiMethod::Oracle => GeodesicTable::build_oracle(*x)?,
            };
            let s = table.snapshot(*x, *method);
            let (name, formula) = match method {
                PsiMethod::Lvalue => ("lvalue", PSI_L),
                PsiMethod::Oracle => ("oracle", PSI_ORACLE),
            };
            ExperimentReport::new("psi")
                .setting("method", name)
                .param("x", *x, "upper bound on the norm")
                .value("psi", s.psi, formula)
                .value("pi", s.pi_primitive as f64, PI_FORMULA)
                .value("li", s.li_x, LI_FORMULA)
                .residual("psi_minus_x", s.psi - x, "Psi(x) - x")
                .residual("pi_minus_li", s.error_term, "pi(x) - li(x)")
        }
        Command::Pi { x } => {
            let s = GeodesicTable::build_oracle(*x)?.snapshot(*x, PsiMethod::Oracle);
            ExperimentReport::new("pi")
                .param("x", *x, "upper bound on the norm")
                .value("pi", s.pi_primitive as f64, PI_FORMULA)
                .value("li", s.li_x, LI_FORMULA)
                .residual("pi_minus_li", s.error_term, "pi(x) - li(x)")
                .residual("normalized", s.error_term / x.powf(0.75), "(pi(x) - li(x)) / x^(3/4)")
        }
        Command::Table { x_min, x_max, points, log_spaced } => {
            let xs = grid(*x_min, *x_max, *points, *log_spaced);
            let table = lvalue_table(*x_max, cache, err)?;
            let mut r = ExperimentReport::new("table")
                .setting("spacing", if *log_spaced { "log" } else { "linear" })
                .param("x_min", *x_min, "first grid point")
                .param("x_max", *x_max, "last grid point")
                .param("points", *points as f64, "number of grid points");
            for x in xs {
                let e = table.error_row(x);
                let pi = table.pi(x) as f64;
                r = r.row(vec![
                    TaggedValue::new("x", x, "grid point"),
                    TaggedValue::new("psi", e.psi_err + x, PSI_L),
                    TaggedValue::new("psi_minus_x", e.psi_err, "Psi(x) - x"),
                    TaggedValue::new("pi", pi, PI_FORMULA),
                    TaggedValue::new("pi_minus_li", e.pi_err, "pi(x) - li(x)"),
                    TaggedValue::new("normalized", e.normalized, "(pi(x) - li(x)) / x^(25/36)"),
                ]);
            }
            r
        }
        Command::Verify { suite, max_n, max_q } => {
            let params = VerifyParams { max_n: *max_n, max_q: *max_q, tolerance: cfg.tolerance };
            let outcomes = run_suite(*suite, &params)?;
            let mut r = ExperimentReport::new("verify")
                .setting("suite", suite.name())
                .param("max_n", *max_n as f64, "largest trace n tested")
                .param("max_q", *max_q as f64, "largest modulus q tested");
            if let Some(t) = cfg.tolerance {
                r = r.param("tolerance", t, "relative tolerance override");
            }
            let mut failed = false;
            for o in &outcomes {
                let name = o.suite.name();
                r = r
                    .value(&format!("{name}.checks"), o.checks as f64, "number of assertions evaluated")
                    .residual(&format!("{name}.passed"), if o.passed() { 1.0 } else { 0.0 }, "1 if every assertion held");
                if o.passed() {
                    r = r.residual(&format!("{name}.worst_ratio"), o.worst_ratio, "max residual / tolerance");
                }
                if let Some(c) = &o.counterexample {
                    failed = true;
                    let _ = writeln!(err, "FAIL {name}: {c}");
                    r.flags.push(format!("{name}: {c}"));
                }
            }
            return Ok((r, failed));
        }
        Command::Smooth { x, y } => {
            let k = KernelSpec::new(*y)?;
            let table = lvalue_table(x + y, cache, err)?;
            let jumps = table.jumps();
            let e = smooth_error_from(&jumps, *x, &k);
            debug_assert_eq!(e.psi_smoothed, psi_smoothed_from(&jumps, *x, &k));
            ExperimentReport::new("smooth")
                .param("x", *x, "evaluation point")
                .param("Y", *y, "kernel support length")
                .value("psi_smoothed", e.psi_smoothed, "int_0^Y Psi(x + u) k(u) du")
                .value("first_moment", e.first_moment, "int_0^Y u k(u) du")
                .residual("E", e.e, "Psi(x; k) - x - int u k(u) du")
                .bound("selberg", e.bound_selberg, "x^(3/2) / Y")
                .bound("luo_sarnak", e.bound_ls, "x^(7/8) Y^(-1/4)")
                .flag_if(!e.in_window, "Y lies outside sqrt(x) <= Y <= x / log x")
        }
        Command::Explicit { x, t, eigenfile } => {
            let spectra = SpectralData::from_file(eigenfile).map_err(|e| Error::Domain {
                param: "eigenfile",
                reason: e.to_string(),
            })?;
            let f = explicit_formula(*x, &spectra, *t)?;
            let table = lvalue_table(*x, cache, err)?;
            let psi = table.psi_lvalue(*x)?;
            ExperimentReport::new("explicit")
                .setting("eigenfile", spectra.source.clone())
                .param("x", *x, "evaluation point")
                .param("T", *t, "spectral cutoff")
                .value("approx", f.approx, "x + 2 Re sum over t_j <= T of x^(1/2 + i t_j) / (1/2 + i t_j)")
                .value("terms", f.terms as f64, "number of t_j <= T")
                .value("psi", psi, PSI_L)
                .residual("psi_minus_approx", psi - f.approx, "Psi(x) minus the truncated sum")
                .bound("truncation", f.truncation_term, "(x / T) log^2 x")
                .flag_if(!f.t_in_range, "T lies outside 1 <= T <= sqrt(x) / log^2 x")
                .flag_if(f.terms == 0, "no spectral parameters below T; the sum reduces to x")
        }
        Command::Sv { n, v } => {
            let delta = (n * n - 4) as i64;
            let s = s_v(delta, *v)?;
            let l = l_one(delta)?;
            let diff = (s.re() - l).abs();
            ExperimentReport::new("sv")
                .param("n", *n as f64, "trace")
                .param("delta", delta as f64, "n^2 - 4")
                .param("V", *v, "smoothing length")
                .param("q_max", s.truncation.q_max.unwrap_or(0) as f64, "ceil(V log 10^14)")
                .value("S_V", s.re(), "sum over q of lambda_q(delta) / q exp(-q / V)")
                .value("L1", l, "L(1, delta) = l^(-1/2) T_l(1) L(1, chi_D)")
                .residual("abs_diff", diff, "|S_V(delta) - L(1, delta)|")
                .bound("sqrt_v", v.powf(-0.5), "V^(-1/2)")
        }
        Command::Short { x, u } => {
            let table = lvalue_table(x + u, cache, err)?;
            let s = short_interval_from(&table, *x, *u, cfg.theta)?;
            ExperimentReport::new("short")
                .param("x", *x, "interval start")
                .param("u", *u, "interval length")
                .param("theta", cfg.theta, "subconvexity exponent")
                .value("delta_psi", s.delta_psi, "Psi(x + u) - Psi(x)")
                .value("main", s.main, "u")
                .residual("residual", s.residual, "|Psi(x + u) - Psi(x) - u|")
                .residual("normalized", s.residual_normalized, "residual / (u^(1/2) x^(1/4 + theta/2))")
        }
        Command::MeanL { x, delta } => {
            let m = mean_l_short(*x, *delta)?;
            ExperimentReport::new("meanL")
                .param("X", *x, "window start")
                .param("delta", *delta, "window length")
                .value("mean", m.mean, "(1/delta) sum over X < n <= X + delta of L(1, n^2 - 4)")
                .value("terms", m.terms as f64, "number of traces in the window")
                .residual("mean_minus_one", m.mean - 1.0, "mean - 1")
        }
        Command::S1s2 { n, z, big_z } => {
            let r = s1_s2_stats(*n, *z, *big_z)?;
            ExperimentReport::new("s1s2")
                .param("n", *n as f64, "trace")
                .param("z", *z, "lower prime cutoff")
                .param("Z", *big_z, "upper prime cutoff")
                .value("S1", r.s1, "sum over z < p <= Z of lambda_p(delta) / p")
                .value("S2", r.s2, "sum over z < p <= Z with p | l of 1 / p")
                .value("euler_product", r.euler_product_approx, "product over p <= Z of sum_k lambda_(p^k)(delta) p^(-k)")
                .value("L1", r.l_value, "L(1, delta) = l^(-1/2) T_l(1) L(1, chi_D)")
                .residual("relative_gap", r.euler_product_approx / r.l_value - 1.0, "Euler product / L(1, delta) - 1")
        }
        Command::Thm13 { a, b, q_max } => {
            let w = WeightSpec::new(*a, *b)?;
            let rep = theorem13_check(&w, *q_max)?;
            let mut r = ExperimentReport::new("thm13")
                .param("a", *a, "left end of the weight support")
                .param("b", *b, "right end of the weight support")
                .param("q_max", *q_max as f64, "largest modulus")
                .param("xi_max", rep.xi_max, "transform truncation |w_hat(xi)| < 1e-12 beyond xi_max")
                .value("lhs", rep.lhs, "2 sum_n w(n) L(1, n^2 - 4)")
                .residual("final_gap", rep.final_gap, "|rhs(Q) - lhs|")
                .residual("relative_gap", rep.relative_gap(), "|rhs(Q) - lhs| / |lhs|")
                .flag_if(!rep.gaps_decrease(), "gaps do not decrease across the cutoffs");
            for (&(q, v), &g) in rep.rhs_partial.iter().zip(&rep.gaps) {
                r = r.row(vec![
                    TaggedValue::new("q_cutoff", q as f64, "partial sum cutoff"),
                    TaggedValue::new("rhs", v, "zeta(2) sum_{q <= cutoff} q^(-2) sum_l S(l^2, 1; q) w_hat(l / q)"),
                    TaggedValue::new("gap", g, "|rhs - lhs|"),
                ]);
            }
            r
        }
    };
    Ok((report, false))
}

/// `points` values from `lo` to `hi`, both included.
pub fn grid(lo: f64, hi: f64, points: usize, log_spaced: bool) -> Vec<f64> {
    if points == 1 {
        return vec![hi];
    }
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else if log_spaced {
                lo * (hi / lo).powf(i as f64 / last)
            } else {
                lo + (hi - lo) * i as f64 / last
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("prime-geodesic").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grid_endpoints() {
        let g = grid(10.0, 1000.0, 3, true);
        assert!((g[1] - 100.0).abs() < 1e-10);
        assert_eq!(g[2], 1000.0);
        assert_eq!(grid(2.0, 4.0, 3, false), [2.0, 3.0, 4.0]);
        assert_eq!(grid(5.0, 5.0, 1, false), [5.0]);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["pi", "--x", "25", "--threads", "1"]).0, 0);
        assert_eq!(run_str(&["pi"]).0, 2);
        assert_eq!(run_str(&["bogus"]).0, 2);
        let (code, _, err) = run_str(&["pi", "--x", "1"]);
        assert_eq!(code, 3);
        assert!(err.contains("`x`"), "{err}");
        let (code, _, err) = run_str(&["thm13", "--a", "2.5", "--b", "12", "--q-max", "50"]);
        assert_eq!(code, 3);
        assert!(err.contains("q-max"), "{err}");
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn validation_happens_before_work() {
        let cfg = RunConfig::parse(["p", "short", "--x", "10", "--u", "11"]).unwrap();
        assert_eq!(cfg.validate().unwrap_err().param(), Some("u"));
        let cfg = RunConfig::parse(["p", "s1s2", "--n", "5", "--z", "10", "--Z", "3"]).unwrap();
        assert_eq!(cfg.validate().unwrap_err().param(), Some("Z"));
        let cfg = RunConfig::parse(["p", "--theta", "0.9", "pi", "--x", "10"]).unwrap();
        assert_eq!(cfg.validate().unwrap_err().param(), Some("theta"));
        let cfg = RunConfig::parse(["p", "meanL", "--X", "100", "--delta", "10"]).unwrap();
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.command, Command::MeanL { x: 100.0, delta: 10.0 });
    }
}
