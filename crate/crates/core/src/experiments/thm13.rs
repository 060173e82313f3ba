use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kloosterman::inverse_table;
use crate::lseries::l_one;
use crate::parallel::ordered_map;
use crate::special::riemann_zeta;

/// `|w_hat(xi)|` below this is dropped from the `l`-sum.
pub const WHAT_CUTOFF: f64 = 1e-12;

/// Grid points per unit in `xi` for tabulating the periodized transform.
const GRID_PER_UNIT: usize = 1024;
/// Trapezoid nodes per unit in `t`.
const NODES_PER_UNIT: usize = 2048;
/// Lagrange interpolation order on the `xi` grid.
const INTERP_POINTS: usize = 8;

/// `w(t) = exp(-1/((|t|-a)(b-|t|)))` on `a < |t| < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightSpec {
    pub a: f64,
    pub b: f64,
}

impl WeightSpec {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 2.0) {
            return Err(Error::domain("a", format!("{a} must exceed 2 so that w vanishes on [-2, 2]")));
        }
        if !(b > a) || !b.is_finite() {
            return Err(Error::domain("b", format!("{b} must exceed a = {a}")));
        }
        Ok(WeightSpec { a, b })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let t = t.abs();
        if t <= self.a || t >= self.b {
            0.0
        } else {
            (-1.0 / ((t - self.a) * (self.b - t))).exp()
        }
    }

    /// `w_hat(xi) = 2 int_a^b w(t) cos(2 pi t xi) dt` by adaptive quadrature.
    pub fn transform_quadrature(&self, xi: f64, tol: f64) -> f64 {
        let pieces = ((self.b - self.a) * xi.abs() * 4.0).ceil().max(1.0) as usize;
        let h = (self.b - self.a) / pieces as f64;
        (0..pieces)
            .map(|i| {
                let lo = self.a + i as f64 * h;
                crate::quad::integrate(|t| self.eval(t) * (TAU * t * xi).cos(), lo, lo + h, tol / pieces as f64)
            })
            .sum::<f64>()
            * 2.0
    }
}

/// `w_hat` on the grid `k / GRID_PER_UNIT` and the periodization
/// `P(xi) = sum_m w_hat(xi + m)` restricted to `|w_hat| >= WHAT_CUTOFF`.
#[derive(Debug, Clone)]
pub struct PeriodizedTransform {
    /// `w_hat(k/G)` for `k >= 0`.
    what: Vec<f64>,
    /// Largest `|xi|` kept.
    xi_max: f64,
    periodized: Vec<f64>,
}

impl PeriodizedTransform {
    /// Trapezoid rule for `int w(t) e(-t xi) dt` on a spacing `1/NODES_PER_UNIT`,
    /// evaluated at all grid frequencies by one FFT.
    pub fn new(w: &WeightSpec) -> Self {
        let g = GRID_PER_UNIT;
        let n = g * NODES_PER_UNIT;
        let h = 1.0 / NODES_PER_UNIT as f64;
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        let j_max = (w.b / h).ceil() as usize + 1;
        assert!(2 * j_max < n, "support does not fit the transform window");
        for j in 1..=j_max {
            let v = w.eval(j as f64 * h);
            buf[j] = v.into();
            buf[n - j] = v.into();
        }
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let half = n / 2;
        let all: Vec<f64> = buf[..half].iter().map(|c| c.re * h).collect();
        let k_max = all.iter().rposition(|v| v.abs() >= WHAT_CUTOFF).unwrap_or(0);
        let what = all[..=k_max].to_vec();
        let mut periodized = vec![0.0; g];
        for (k, &v) in what.iter().enumerate() {
            periodized[k % g] += v;
            if k > 0 {
                periodized[(g - k % g) % g] += v;
            }
        }
        PeriodizedTransform { what, xi_max: k_max as f64 / g as f64, periodized }
    }

    pub fn xi_max(&self) -> f64 {
        self.xi_max
    }

    /// `w_hat(k / G)`.
    pub fn grid_value(&self, k: usize) -> f64 {
        self.what.get(k).copied().unwrap_or(0.0)
    }

    pub fn grid_per_unit(&self) -> usize {
        GRID_PER_UNIT
    }

    /// `P(xi)` by Lagrange interpolation on the periodic grid.
    pub fn periodized(&self, xi: f64) -> f64 {
        let g = GRID_PER_UNIT as f64;
        let s = xi.rem_euclid(1.0) * g;
        let base = s.floor() as i64 - (INTERP_POINTS as i64 / 2 - 1);
        let mut acc = 0.0;
        for i in 0..INTERP_POINTS as i64 {
            let si = (base + i) as f64;
            let mut li = 1.0;
            for j in 0..INTERP_POINTS as i64 {
                if j != i {
                    li *= (s - (base + j) as f64) / (si - (base + j) as f64);
                }
            }
            let idx = (base + i).rem_euclid(GRID_PER_UNIT as i64) as usize;
            acc += li * self.periodized[idx];
        }
        acc
    }
}

/// `sum_l S(l^2, 1; q) w_hat(l/q) = sum_{r mod q} S(r^2, 1; q) P(r/q)`, with
/// `S(j, 1; q)` for all `j` from one FFT of `x -> e(xbar/q)`.
pub fn q_term(q: u64, p: &PeriodizedTransform) -> f64 {
    let m = q as usize;
    let mut k = vec![Complex64::new(0.0, 0.0); m];
    if q == 1 {
        k[0] = 1.0.into();
    } else {
        let inv = inverse_table(q);
        for x in 1..m {
            if inv[x] != 0 {
                k[x] = Complex64::from_polar(1.0, TAU * inv[x] as f64 / q as f64);
            }
        }
        FftPlanner::new().plan_fft_inverse(m).process(&mut k);
    }
    let mut g = vec![0.0; m];
    for r in 0..q {
        let j = ((r as u128 * r as u128) % q as u128) as usize;
        g[j] += p.periodized(r as f64 / q as f64);
    }
    g.iter().zip(&k).map(|(a, b)| a * b.re).sum()
}

/// Result of [`theorem13_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem13Report {
    pub weight: WeightSpec,
    pub q_max: u64,
    /// `2 sum_n w(n) L(1, n^2 - 4)`.
    pub lhs: f64,
    /// `zeta(2) sum_{q <= Q'} q^-2 sum_l S(l^2, 1; q) w_hat(l/q)` at each cutoff `Q'`.
    pub rhs_partial: Vec<(u64, f64)>,
    pub gaps: Vec<f64>,
    /// `|rhs(Q) - lhs|`.
    pub final_gap: f64,
    pub xi_max: f64,
}

impl Theorem13Report {
    pub fn relative_gap(&self) -> f64 {
        self.final_gap / self.lhs.abs()
    }

    /// `true` when each gap is below the previous one.
    pub fn gaps_decrease(&self) -> bool {
        self.gaps.windows(2).all(|w| w[1] < w[0])
    }
}

/// `2 sum_{a < n < b} w(n) L(1, n^2 - 4)`.
pub fn theorem13_lhs(w: &WeightSpec) -> Result<f64> {
    let lo = (w.a.floor() as u64 + 1).max(3);
    let mut s = 0.0;
    let mut n = lo;
    while (n as f64) < w.b {
        s += 2.0 * w.eval(n as f64) * l_one((n * n - 4) as i64)?;
        n += 1;
    }
    Ok(s)
}

/// Compares the finite trace side with partial sums of the Kloosterman side
/// at cutoffs `Q/8, Q/4, Q/2, Q`.
pub fn theorem13_check(w: &WeightSpec, q_max: u64) -> Result<Theorem13Report> {
    if q_max < 100 {
        return Err(Error::domain("Q", format!("{q_max} must be at least 100")));
    }
    let lhs = theorem13_lhs(w)?;
    let p = PeriodizedTransform::new(w);
    let zeta2 = riemann_zeta(2.0.into()).re;
    debug_assert!((zeta2 - PI * PI / 6.0).abs() < 1e-14);
    let terms = ordered_map(1, q_max + 1, |q| q_term(q, &p) / (q as f64 * q as f64));
    let cutoffs = [q_max / 8, q_max / 4, q_max / 2, q_max];
    let mut rhs_partial = Vec::new();
    let mut acc = 0.0;
    let mut next = 0;
    for (i, t) in terms.iter().enumerate() {
        acc += t;
        let q = i as u64 + 1;
        while next < cutoffs.len() && cutoffs[next] == q {
            rhs_partial.push((q, zeta2 * acc));
            next += 1;
        }
    }
    let gaps: Vec<f64> = rhs_partial.iter().map(|&(_, v)| (v - lhs).abs()).collect();
    let final_gap = *gaps.last().expect("four cutoffs");
    Ok(Theorem13Report { weight: *w, q_max, lhs, rhs_partial, gaps, final_gap, xi_max: p.xi_max() })
}
