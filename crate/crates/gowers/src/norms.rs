//! Gowers uniformity norms, inner products and corner convolutions.
//!
//! `‖f‖_{U_k}` is the `2^k`-th root of the average of the iterated
//! multiplicative derivative `Δ_{t_1}…Δ_{t_k} f(x)` over all shifts, where
//! `Δ_t f(x) = f(x) conj(f(x+t))`.  The exact evaluator uses the recursion
//! `‖f‖_{U_{k+1}}^{2^{k+1}} = E_t ‖Δ_t f‖_{U_k}^{2^k}` with base
//! `‖f‖_{U_1} = |E f|`; the fully nested sum survives only as a brute-force
//! oracle in [`crate::brute`].
//!
//! For function systems `F = {f_S}` the Gowers inner product is
//! `(F) = E_{x,t} Π_S f_S^{ε(S)}(x + Σ_{i∈S} t_i)` with `ε(S)` conjugating on
//! odd `|S|`, and the corner convolution `K_n(F)(x)` is the same product over
//! nonempty `S` averaged over the shifts only.

use crate::group::{GroupElement, GroupFunction};
use crate::numeric::{self, pairwise_sum, pairwise_sum_f64};
use crate::sampling::{par_samples, SeedStream};
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;

/// `Δ_t f(x) = f(x) conj(f(x+t))`; the bound squares.
pub fn delta(f: &GroupFunction, t: &GroupElement) -> GroupFunction {
    let shifted = f.translate(t);
    f.mul(&shifted.conj()).expect("same group by construction")
}

fn delta_values(group_order: usize, add: &dyn Fn(usize, usize) -> usize, vals: &[Complex64], t: usize) -> Vec<Complex64> {
    (0..group_order)
        .map(|x| vals[x] * vals[add(x, t)].conj())
        .collect()
}

/// `U_k` norm power `‖f‖_{U_k}^{2^k}` by the shift recursion.
fn u_pow(vals: &[Complex64], add: &dyn Fn(usize, usize) -> usize, k: u32) -> f64 {
    let n = vals.len();
    if k == 1 {
        let m = numeric::mean(vals);
        return m.norm_sqr();
    }
    let per_t: Vec<f64> = (0..n)
        .map(|t| {
            let d = delta_values(n, add, vals, t);
            u_pow(&d, add, k - 1)
        })
        .collect();
    pairwise_sum_f64(&per_t) / n as f64
}

/// Exact Gowers norm `‖f‖_{U_k}`, `k ≥ 1`.
///
/// The outer shift average is parallelized; the reduction tree is fixed, so
/// the value does not depend on the worker count.
pub fn gowers_norm_exact(f: &GroupFunction, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::BadParameter("U_0 is not defined; k ≥ 1".into()));
    }
    let group = f.group().clone();
    let add = move |i: usize, j: usize| group.add_index(i, j);
    let n = f.group().order();
    let vals = f.values();
    if k == 1 {
        return Ok(f.mean().norm());
    }
    let per_t: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|t| {
            let d = delta_values(n, &add, vals, t);
            u_pow(&d, &add, k - 1)
        })
        .collect();
    let pow = pairwise_sum_f64(&per_t) / n as f64;
    Ok(pow.max(0.0).powf(0.5f64.powi(k as i32)))
}

/// `‖f‖_{U_2} = (Σ_χ |λ_χ|⁴)^{1/4}` through the Fourier coefficients.
pub fn u2_via_fourier(f: &GroupFunction) -> f64 {
    let spec = crate::group::fourier_transform_fast(f);
    let fourths: Vec<f64> = spec.coeffs().iter().map(|c| c.norm_sqr().powi(2)).collect();
    pairwise_sum_f64(&fourths).max(0.0).powf(0.25)
}

/// Monte-Carlo estimate of `‖f‖_{U_k}`.
///
/// Each sample draws `(x, t_1..t_k)` uniformly and evaluates the cube product
/// `Π_v f^{ε(v)}(x + Σ v_i t_i)`; the sample mean is unbiased for
/// `‖f‖_{U_k}^{2^k}`.  The returned estimate is the `2^k`-th root of the
/// real part clamped at zero, with the standard error of the mean.
/// Deterministic given the seed, independent of the parallel partition.
pub fn gowers_norm_sampled(
    f: &GroupFunction,
    k: u32,
    num_samples: usize,
    seeds: &SeedStream,
) -> Result<(f64, f64)> {
    if k == 0 {
        return Err(Error::BadParameter("U_0 is not defined; k ≥ 1".into()));
    }
    if num_samples == 0 {
        return Err(Error::BadParameter("need at least one sample".into()));
    }
    let group = f.group();
    let vals = f.values();
    let verts = 1usize << k;
    let samples: Vec<Complex64> = par_samples(seeds, num_samples, |rng| {
        let x = group.random_index(rng);
        let ts: Vec<usize> = (0..k).map(|_| group.random_index(rng)).collect();
        let mut prod = Complex64::new(1.0, 0.0);
        for v in 0..verts {
            let mut idx = x;
            let mut parity = 0u32;
            for (i, t) in ts.iter().enumerate() {
                if (v >> i) & 1 == 1 {
                    idx = group.add_index(idx, *t);
                    parity ^= 1;
                }
            }
            let val = vals[idx];
            prod *= if parity == 1 { val.conj() } else { val };
        }
        prod
    });
    let (mean, stderr) = numeric::mean_stderr(&samples);
    let root = 1.0 / verts as f64;
    Ok((mean.re.max(0.0).powf(root), stderr))
}

/// Which index set a [`FunctionSystem`] carries.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SystemKind {
    /// All subsets `S ⊆ [k]`; used by the Gowers inner product.
    AllSubsets,
    /// Nonempty subsets `K_n = 2^[n] \ {∅}`; used by the corner convolution.
    NonEmpty,
}

/// A complete system `{f_S}` of functions on one group, indexed by subsets of
/// `[k]` encoded as bitmasks (bit `i-1` of the mask means `i ∈ S`).
#[derive(Clone, Debug)]
pub struct FunctionSystem {
    kind: SystemKind,
    arity: u32,
    entries: Vec<GroupFunction>,
}

impl FunctionSystem {
    /// `entries[j]` is `f_S` for the `j`-th mask: masks run `0..2^k` for
    /// [`SystemKind::AllSubsets`] and `1..2^k` for [`SystemKind::NonEmpty`].
    pub fn new(kind: SystemKind, arity: u32, entries: Vec<GroupFunction>) -> Result<Self> {
        let expected = match kind {
            SystemKind::AllSubsets => 1usize << arity,
            SystemKind::NonEmpty => (1usize << arity) - 1,
        };
        if entries.len() != expected {
            return Err(Error::IncompleteSystem {
                expected,
                got: entries.len(),
            });
        }
        for e in &entries[1..] {
            entries[0].group().check_same(e.group())?;
        }
        Ok(Self {
            kind,
            arity,
            entries,
        })
    }

    /// The diagonal system with every slot equal to `f`.
    pub fn diagonal(kind: SystemKind, arity: u32, f: &GroupFunction) -> Self {
        let count = match kind {
            SystemKind::AllSubsets => 1usize << arity,
            SystemKind::NonEmpty => (1usize << arity) - 1,
        };
        Self {
            kind,
            arity,
            entries: vec![f.clone(); count],
        }
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn entry(&self, mask: usize) -> &GroupFunction {
        match self.kind {
            SystemKind::AllSubsets => &self.entries[mask],
            SystemKind::NonEmpty => &self.entries[mask - 1],
        }
    }

    pub fn replace(&mut self, mask: usize, f: GroupFunction) -> Result<()> {
        self.entries[0].group().check_same(f.group())?;
        let slot = match self.kind {
            SystemKind::AllSubsets => mask,
            SystemKind::NonEmpty => mask - 1,
        };
        self.entries[slot] = f;
        Ok(())
    }

    pub fn group(&self) -> &crate::group::FiniteAbelianGroup {
        self.entries[0].group()
    }

    fn masks(&self) -> std::ops::Range<usize> {
        match self.kind {
            SystemKind::AllSubsets => 0..(1 << self.arity),
            SystemKind::NonEmpty => 1..(1 << self.arity),
        }
    }
}

/// Walks all shift tuples `(t_1..t_k)`, maintaining the subset sums
/// `sums[mask] = Σ_{i∈mask} t_i` incrementally, and calls `visit` per tuple.
fn for_each_shift_tuple(
    group: &crate::group::FiniteAbelianGroup,
    k: u32,
    mut visit: impl FnMut(&[usize]),
) {
    let n = group.order();
    let masks = 1usize << k;
    let mut ts = vec![0usize; k as usize];
    let mut sums = vec![0usize; masks];
    loop {
        for mask in 1..masks {
            let low = mask.trailing_zeros() as usize;
            sums[mask] = group.add_index(sums[mask & (mask - 1)], ts[low]);
        }
        visit(&sums);
        // odometer increment
        let mut pos = 0usize;
        loop {
            if pos == k as usize {
                return;
            }
            ts[pos] += 1;
            if ts[pos] < n {
                break;
            }
            ts[pos] = 0;
            pos += 1;
        }
    }
}

/// Gowers inner product `(F) = E_{x,t_1..t_k} Π_{S⊆[k]} f_S^{ε(S)}(x + Σ_{i∈S} t_i)`.
pub fn gowers_inner_product(sys: &FunctionSystem) -> Result<Complex64> {
    if sys.kind() != SystemKind::AllSubsets {
        return Err(Error::BadParameter(
            "the Gowers inner product needs a full-subset system".into(),
        ));
    }
    let group = sys.group().clone();
    let n = group.order();
    let k = sys.arity();
    let total = (n as u128).pow(k + 1);
    if total > 200_000_000 {
        return Err(Error::CapExceeded {
            what: "inner-product summation",
            size: total,
            cap: 200_000_000,
        });
    }
    if k == 0 {
        // single slot S = ∅: (F) = E_x f_∅(x)
        return Ok(sys.entry(0).mean());
    }
    // parallel over t_1; inner odometer over the remaining shifts
    let per_t1: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|t1| {
            let mut partial = Vec::new();
            walk_pinned(&group, k, t1, sys, &mut partial);
            pairwise_sum(&partial)
        })
        .collect();
    Ok(pairwise_sum(&per_t1) / (n as f64).powi(k as i32 + 1))
}

/// Accumulates, for a pinned first shift, the sums over `x` and the remaining
/// shifts of the subset-product.
fn walk_pinned(
    group: &crate::group::FiniteAbelianGroup,
    k: u32,
    t1: usize,
    sys: &FunctionSystem,
    out: &mut Vec<Complex64>,
) {
    let n = group.order();
    let masks = 1usize << k;
    let rest = k - 1;
    let mut ts = vec![0usize; rest as usize];
    let mut sums = vec![0usize; masks];
    loop {
        for mask in 1..masks {
            let low = mask.trailing_zeros() as usize;
            let t = if low == 0 { t1 } else { ts[low - 1] };
            sums[mask] = group.add_index(sums[mask & (mask - 1)], t);
        }
        // sum over x of the product
        let mut x_acc = Complex64::new(0.0, 0.0);
        for x in 0..n {
            let mut prod = Complex64::new(1.0, 0.0);
            for mask in sys.masks() {
                let idx = group.add_index(x, sums[mask]);
                let v = sys.entry(mask).value_at(idx);
                prod *= if (mask.count_ones() & 1) == 1 { v.conj() } else { v };
            }
            x_acc += prod;
        }
        out.push(x_acc);
        let mut pos = 0usize;
        loop {
            if pos == rest as usize {
                return;
            }
            ts[pos] += 1;
            if ts[pos] < n {
                break;
            }
            ts[pos] = 0;
            pos += 1;
        }
    }
}

/// Gowers–Cauchy–Schwarz gap `Π_S ‖f_S‖_{U_k} − |(F)|`; nonnegative up to
/// rounding.
pub fn gcs_gap(sys: &FunctionSystem) -> Result<f64> {
    let ip = gowers_inner_product(sys)?;
    let k = sys.arity();
    let mut rhs = 1.0;
    for mask in sys.masks() {
        rhs *= gowers_norm_exact(sys.entry(mask), k)?;
    }
    Ok(rhs - ip.norm())
}

/// Corner convolution `K_n(F)(x) = E_{t_1..t_n} Π_{S∈K_n} f_S^{ε(S)}(x + Σ_{i∈S} t_i)`.
pub fn corner_convolution(sys: &FunctionSystem, x: &GroupElement) -> Result<Complex64> {
    if sys.kind() != SystemKind::NonEmpty {
        return Err(Error::BadParameter(
            "the corner convolution needs a nonempty-subset system".into(),
        ));
    }
    let group = sys.group().clone();
    let n = group.order();
    let k = sys.arity();
    let total = (n as u128).pow(k);
    if total > 200_000_000 {
        return Err(Error::CapExceeded {
            what: "corner-convolution summation",
            size: total,
            cap: 200_000_000,
        });
    }
    let xi = group.index_of(x);
    let mut terms = Vec::with_capacity(total as usize);
    for_each_shift_tuple(&group, k, |sums| {
        let mut prod = Complex64::new(1.0, 0.0);
        for mask in 1..(1usize << k) {
            let idx = group.add_index(xi, sums[mask]);
            let v = sys.entry(mask).value_at(idx);
            prod *= if (mask.count_ones() & 1) == 1 { v.conj() } else { v };
        }
        terms.push(prod);
    });
    Ok(pairwise_sum(&terms) / (n as f64).powi(k as i32))
}

/// Corner bound gap: for `j ∈ [n]`,
/// `Π_{j∉S} ‖f_S‖_{2^{n−1}} Π_{j∈S} ‖f_S‖_{U_n} − |K_n(F)(x)|`.
pub fn cornineq_gap(sys: &FunctionSystem, x: &GroupElement, j: u32) -> Result<f64> {
    let n = sys.arity();
    if j == 0 || j > n {
        return Err(Error::BadParameter(format!("j must lie in 1..={n}, got {j}")));
    }
    let value = corner_convolution(sys, x)?.norm();
    let p = (1u64 << (n - 1)) as f64;
    let mut rhs = 1.0;
    for mask in 1..(1usize << n) {
        let f = sys.entry(mask);
        if (mask >> (j - 1)) & 1 == 1 {
            rhs *= gowers_norm_exact(f, n)?;
        } else {
            rhs *= f.lp_norm(p)?;
        }
    }
    Ok(rhs - value)
}
