//! Deterministic numeric kernels.
//!
//! All reductions over arrays go through pairwise (tree) summation with a
//! fixed split point, so the result is bitwise identical no matter how many
//! rayon workers execute the two halves.

use num_complex::Complex64;

/// `e(x) = exp(2πix)`.
pub fn e(theta: f64) -> Complex64 {
    let arg = 2.0 * std::f64::consts::PI * theta;
    Complex64::new(arg.cos(), arg.sin())
}

const LEAF: usize = 64;
const PAR_THRESHOLD: usize = 8192;

/// Pairwise sum of a complex slice.  The reduction tree depends only on the
/// slice length, never on the worker count.
pub fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= LEAF {
        let mut acc = Complex64::new(0.0, 0.0);
        for x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    let (lo, hi) = xs.split_at(mid);
    if xs.len() >= PAR_THRESHOLD {
        let (a, b) = rayon::join(|| pairwise_sum(lo), || pairwise_sum(hi));
        a + b
    } else {
        pairwise_sum(lo) + pairwise_sum(hi)
    }
}

/// Pairwise sum of a real slice.
pub fn pairwise_sum_f64(xs: &[f64]) -> f64 {
    if xs.len() <= LEAF {
        let mut acc = 0.0;
        for x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    let (lo, hi) = xs.split_at(mid);
    if xs.len() >= PAR_THRESHOLD {
        let (a, b) = rayon::join(|| pairwise_sum_f64(lo), || pairwise_sum_f64(hi));
        a + b
    } else {
        pairwise_sum_f64(lo) + pairwise_sum_f64(hi)
    }
}

/// Mean of a complex slice (pairwise sum divided by the length).
pub fn mean(xs: &[Complex64]) -> Complex64 {
    if xs.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    pairwise_sum(xs) / xs.len() as f64
}

/// Mean of a real slice.
pub fn mean_f64(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    pairwise_sum_f64(xs) / xs.len() as f64
}

/// Mean and standard error of a complex sample, treating real and imaginary
/// fluctuations jointly: `stderr = sqrt(Σ|x − mean|² / (N(N−1)))`.
pub fn mean_stderr(xs: &[Complex64]) -> (Complex64, f64) {
    let n = xs.len();
    if n < 2 {
        return (mean(xs), 0.0);
    }
    let m = mean(xs);
    let sq: Vec<f64> = xs.iter().map(|x| (x - m).norm_sqr()).collect();
    let var = pairwise_sum_f64(&sq) / ((n - 1) as f64);
    (m, (var / n as f64).sqrt())
}

/// Mean and standard error of a real sample.
pub fn mean_stderr_f64(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n < 2 {
        return (mean_f64(xs), 0.0);
    }
    let m = mean_f64(xs);
    let sq: Vec<f64> = xs.iter().map(|x| (x - m) * (x - m)).collect();
    let var = pairwise_sum_f64(&sq) / ((n - 1) as f64);
    (m, (var / n as f64).sqrt())
}

/// Absolute-difference comparison.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Absolute-difference comparison for complex values.
pub fn approx_eq_c(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}
