//! Special functions: complex Gamma, Hurwitz zeta by Euler-Maclaurin, the
//! logarithmic integral and the exponential integral `E_1`.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `B_2, B_4, ..., B_16`.
const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Euler-Maclaurin correction order used by default.
pub const EM_ORDER: usize = 8;

/// Default Euler-Maclaurin cutoff `N = max(50, 2|s|)`.
pub fn em_cutoff(s: Complex64) -> usize {
    50usize.max((2.0 * s.norm()).ceil() as usize)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex Gamma function (Lanczos, with reflection for `Re z < 1/2`).
pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = Complex64::from(PI);
        return pi / ((pi * z).sin() * gamma(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::from(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// `true` if `z` is a pole of Gamma (a non-positive integer).
pub fn is_gamma_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Hurwitz zeta `zeta(s, a)` for `0 < a <= 1`, `s != 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Complex64 {
    hurwitz_zeta_with(s, a, em_cutoff(s), EM_ORDER)
}

/// Hurwitz zeta with explicit cutoff `n` and correction order `order <= 8`.
pub fn hurwitz_zeta_with(s: Complex64, a: f64, n: usize, order: usize) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        sum += cpow_real(k as f64 + a, -s);
    }
    sum + hurwitz_tail(s, n as f64 + a, order)
}

/// Tail `sum_{k >= 0} (x + k)^(-s)` by Euler-Maclaurin from the point `x`.
pub(crate) fn hurwitz_tail(s: Complex64, x: f64, order: usize) -> Complex64 {
    let xs = cpow_real(x, -s);
    let mut tail = xs * x / (s - 1.0) + xs * 0.5;
    // rising factorial s (s+1) ... (s+2j-2) and x^(-s-2j+1)
    let mut rising = s;
    let mut xpow = xs / x;
    let mut fact = 2.0;
    for j in 1..=order.min(BERNOULLI_EVEN.len()) {
        tail += rising * xpow * (BERNOULLI_EVEN[j - 1] / fact);
        let k = 2 * j;
        rising *= (s + (k - 1) as f64) * (s + k as f64);
        xpow /= x * x;
        fact *= ((k + 1) * (k + 2)) as f64;
    }
    tail
}

/// `x^z` for positive real `x`.
#[inline]
pub fn cpow_real(x: f64, z: Complex64) -> Complex64 {
    (z * x.ln()).exp()
}

/// Riemann zeta for `s != 1`.
pub fn riemann_zeta(s: Complex64) -> Complex64 {
    hurwitz_zeta(s, 1.0)
}

/// Logarithmic integral `li(x)` (principal value from 0) for `x > 1`.
///
/// Uses `li(x) = gamma + ln ln x + sum_k (ln x)^k / (k k!)`; all terms are
/// positive so there is no cancellation.
pub fn li(x: f64) -> f64 {
    debug_assert!(x > 1.0);
    let l = x.ln();
    let mut term = 1.0;
    let mut sum = 0.0;
    let mut k = 1.0;
    loop {
        term *= l / k;
        let add = term / k;
        sum += add;
        if add < sum * 1e-17 && k > l {
            break;
        }
        k += 1.0;
    }
    EULER_GAMMA + l.ln() + sum
}

/// Exponential integral `E_1(x)` for `x > 0`.
pub fn exp_int_e1(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        let mut k = 1.0;
        loop {
            term *= -x / k;
            let add = term / k;
            sum += add;
            if add.abs() < 1e-18 {
                break;
            }
            k += 1.0;
        }
        -EULER_GAMMA - x.ln() - sum
    } else {
        // modified Lentz on the continued fraction
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Neumaier compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
