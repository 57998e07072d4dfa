//! Configuration moments, sample distributions and limit objects.
//!
//! A moment is a power- and conjugation-decorated hypergraph on `[n]`: each
//! nonempty `S ⊆ [n]` may carry a term `f(Σ_{i∈S} x_i)^{p_S}`, optionally
//! conjugated, and the moment is the average of the product over uniform
//! `(x_1..x_n)`.  Simple moments have all powers ≤ 1; the degree is the
//! largest edge size minus one.  `D_n(f)` is the joint distribution of the
//! `2^n − 1` subset-sum values; every simple moment of degree ≤ n−1 is a
//! mixed moment of it.
//!
//! Limit objects are functions on a torus power or on the Heisenberg
//! nilmanifold.  Torus moments are sampled from uniform parameters; the
//! nilmanifold sampler draws random rooted filtration cubes by multiplying
//! the identity cube on codimension-1 faces by Haar elements of the group
//! and on codimension-2 faces by Haar central elements, with the root pinned
//! at the identity coset.

use crate::group::{FiniteAbelianGroup, GroupFunction};
use crate::heisenberg::{HeisenbergElement, NilmanifoldPoint, Rat};
use crate::numeric::{self, pairwise_sum};
use crate::sampling::{par_samples, SeedStream};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Cap on `|A|^n` for the exact moment path.
pub const EXACT_MOMENT_CAP: u128 = 10_000_000;

/// One decorated edge of a moment hypergraph.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TermPower {
    pub power: u32,
    pub conjugate: bool,
}

/// A configuration moment on `n` variables: a map from nonempty subsets
/// (bitmask encoding, bit `i−1` ⇔ `i ∈ S`) to decorated powers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentSpec {
    n: usize,
    terms: BTreeMap<u32, TermPower>,
}

impl MomentSpec {
    pub fn new(n: usize, terms: BTreeMap<u32, TermPower>) -> Result<Self> {
        if n == 0 || n > 16 {
            return Err(Error::BadParameter(format!("need 1 ≤ n ≤ 16, got {n}")));
        }
        if !terms.iter().any(|(_, t)| t.power >= 1) {
            return Err(Error::BadParameter(
                "a moment needs at least one term with power ≥ 1".into(),
            ));
        }
        for &mask in terms.keys() {
            if mask == 0 || mask >= (1u32 << n) {
                return Err(Error::BadParameter(format!(
                    "subset mask {mask:#b} out of range for n = {n}"
                )));
            }
        }
        Ok(Self { n, terms })
    }

    /// Builds a spec from 1-based subsets.
    pub fn from_subsets(n: usize, subsets: &[(&[usize], u32, bool)]) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (subset, power, conjugate) in subsets {
            let mut mask = 0u32;
            for &i in *subset {
                if i == 0 || i > n {
                    return Err(Error::BadParameter(format!("variable {i} out of range")));
                }
                mask |= 1 << (i - 1);
            }
            terms.insert(
                mask,
                TermPower {
                    power: *power,
                    conjugate: *conjugate,
                },
            );
        }
        Self::new(n, terms)
    }

    /// The triangle moment `E f(x+y) f(x+z) f(y+z)`.
    pub fn triangle() -> Self {
        Self::from_subsets(3, &[(&[1, 2], 1, false), (&[1, 3], 1, false), (&[2, 3], 1, false)])
            .expect("static spec")
    }

    /// The single full edge on `k` variables: `E f(x_1 + … + x_k)`.
    pub fn full_edge(k: usize) -> Self {
        let subset: Vec<usize> = (1..=k).collect();
        Self::from_subsets(k, &[(&subset, 1, false)]).expect("static spec")
    }

    /// The `2^k`-vertex cube moment on `k+1` variables whose value is
    /// `‖f‖_{U_k}^{2^k}`: all subsets containing variable 1, conjugated on
    /// odd size.
    pub fn gowers_cube(k: usize) -> Self {
        let n = k + 1;
        let mut terms = BTreeMap::new();
        for rest in 0u32..(1 << k) {
            let mask = 1 | (rest << 1);
            terms.insert(
                mask,
                TermPower {
                    power: 1,
                    conjugate: mask.count_ones() % 2 == 0,
                },
            );
        }
        // |S| odd ⇔ h(v) odd with v = 1_S; conjugate exactly there
        for (mask, term) in terms.iter_mut() {
            term.conjugate = mask.count_ones() % 2 == 0;
        }
        let mut fixed = BTreeMap::new();
        for (mask, mut term) in terms {
            term.conjugate = mask.count_ones() % 2 == 1;
            fixed.insert(mask, term);
        }
        Self::new(n, fixed).expect("static spec")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<u32, TermPower> {
        &self.terms
    }

    /// All powers ≤ 1.
    pub fn is_simple(&self) -> bool {
        self.terms.values().all(|t| t.power <= 1)
    }

    /// Largest edge size with a live term, minus one.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .filter(|(_, t)| t.power >= 1)
            .map(|(m, _)| m.count_ones())
            .max()
            .unwrap_or(1)
            - 1
    }

    /// Applies a permutation of the variables (`perm[i]` is the new name of
    /// variable `i+1`, 1-based).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut terms = BTreeMap::new();
        for (&mask, &t) in &self.terms {
            let mut new_mask = 0u32;
            for i in 0..self.n {
                if (mask >> i) & 1 == 1 {
                    new_mask |= 1 << (perm[i] - 1);
                }
            }
            terms.insert(new_mask, t);
        }
        Self::new(self.n, terms)
    }

    /// A short CSV-safe identifier, e.g. `n2_e1c_e12`.
    pub fn id(&self) -> String {
        let mut parts = vec![format!("n{}", self.n)];
        for (&mask, t) in &self.terms {
            let mut digits = String::new();
            for i in 0..self.n {
                if (mask >> i) & 1 == 1 {
                    digits.push_str(&(i + 1).to_string());
                }
            }
            let mut part = format!("e{digits}");
            if t.power != 1 {
                part.push_str(&format!("p{}", t.power));
            }
            if t.conjugate {
                part.push('c');
            }
            parts.push(part);
        }
        parts.join("_")
    }
}

#[derive(Serialize, Deserialize)]
struct SpecTermRepr {
    subset: Vec<usize>,
    power: u32,
    conjugate: bool,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    n: usize,
    terms: Vec<SpecTermRepr>,
}

impl Serialize for MomentSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(&mask, t)| SpecTermRepr {
                subset: (0..self.n).filter(|i| (mask >> i) & 1 == 1).map(|i| i + 1).collect(),
                power: t.power,
                conjugate: t.conjugate,
            })
            .collect();
        SpecRepr { n: self.n, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MomentSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SpecRepr::deserialize(d)?;
        let subsets: Vec<(Vec<usize>, u32, bool)> = repr
            .terms
            .iter()
            .map(|t| (t.subset.clone(), t.power, t.conjugate))
            .collect();
        let borrowed: Vec<(&[usize], u32, bool)> =
            subsets.iter().map(|(s, p, c)| (s.as_slice(), *p, *c)).collect();
        MomentSpec::from_subsets(repr.n, &borrowed).map_err(D::Error::custom)
    }
}

fn term_value(f_val: Complex64, t: TermPower) -> Complex64 {
    let powered = f_val.powi(t.power as i32);
    if t.conjugate {
        powered.conj()
    } else {
        powered
    }
}

/// Exact moment by full enumeration of `(x_1..x_n)`; errors past the cap
/// with a pointer to the sampled path.
pub fn moment_exact(f: &GroupFunction, spec: &MomentSpec) -> Result<Complex64> {
    let group = f.group();
    let order = group.order();
    let total = (order as u128).pow(spec.n as u32);
    if total > EXACT_MOMENT_CAP {
        return Err(Error::CapExceeded {
            what: "exact moment (use the sampled path)",
            size: total,
            cap: EXACT_MOMENT_CAP,
        });
    }
    let terms: Vec<(u32, TermPower)> = spec.terms.iter().map(|(&m, &t)| (m, t)).collect();
    // parallel over x_1, odometer over the rest
    use rayon::prelude::*;
    let per_first: Vec<Complex64> = (0..order)
        .into_par_iter()
        .map(|x1| {
            let mut xs = vec![0usize; spec.n];
            xs[0] = x1;
            let mut chunk = Vec::with_capacity(order.pow(spec.n as u32 - 1));
            loop {
                // subset sums on demand
                let mut prod = Complex64::new(1.0, 0.0);
                for &(mask, t) in &terms {
                    let mut idx = 0usize;
                    for (i, &x) in xs.iter().enumerate() {
                        if (mask >> i) & 1 == 1 {
                            idx = group.add_index(idx, x);
                        }
                    }
                    prod *= term_value(f.value_at(idx), t);
                }
                chunk.push(prod);
                let mut pos = 1usize;
                loop {
                    if pos == spec.n {
                        return pairwise_sum(&chunk);
                    }
                    xs[pos] += 1;
                    if xs[pos] < order {
                        break;
                    }
                    xs[pos] = 0;
                    pos += 1;
                }
            }
        })
        .collect();
    Ok(pairwise_sum(&per_first) / (order as f64).powi(spec.n as i32))
}

/// Monte-Carlo moment; unbiased, deterministic per seed.
pub fn moment_sampled(
    f: &GroupFunction,
    spec: &MomentSpec,
    num_samples: usize,
    seeds: &SeedStream,
) -> Result<(Complex64, f64)> {
    if num_samples == 0 {
        return Err(Error::BadParameter("need at least one sample".into()));
    }
    let group = f.group();
    let terms: Vec<(u32, TermPower)> = spec.terms.iter().map(|(&m, &t)| (m, t)).collect();
    let n = spec.n;
    let samples: Vec<Complex64> = par_samples(seeds, num_samples, |rng| {
        let xs: Vec<usize> = (0..n).map(|_| group.random_index(rng)).collect();
        let mut prod = Complex64::new(1.0, 0.0);
        for &(mask, t) in &terms {
            let mut idx = 0usize;
            for (i, &x) in xs.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    idx = group.add_index(idx, x);
                }
            }
            prod *= term_value(f.value_at(idx), t);
        }
        prod
    });
    Ok(numeric::mean_stderr(&samples))
}

/// The empirical joint distribution `D_n(f)`: one complex coordinate per
/// nonempty `S ⊆ [n]`, ordered by subset mask.
#[derive(Clone, Debug)]
pub struct EmpiricalDistribution {
    n: usize,
    bound: f64,
    samples: Vec<Vec<Complex64>>,
}

impl EmpiricalDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        (1 << self.n) - 1
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn samples(&self) -> &[Vec<Complex64>] {
        &self.samples
    }

    /// Empirical mixed moment `E Π_j z_j^{a_j} conj(z_j)^{b_j}` over the
    /// coordinates (indexed by mask − 1).
    pub fn mixed_moment(&self, powers: &[(u32, u32)]) -> Result<Complex64> {
        if powers.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got: powers.len(),
            });
        }
        let prods: Vec<Complex64> = self
            .samples
            .iter()
            .map(|s| {
                let mut prod = Complex64::new(1.0, 0.0);
                for (z, &(a, b)) in s.iter().zip(powers) {
                    if a > 0 {
                        prod *= z.powi(a as i32);
                    }
                    if b > 0 {
                        prod *= z.conj().powi(b as i32);
                    }
                }
                prod
            })
            .collect();
        Ok(numeric::mean(&prods))
    }

    /// Recovers a simple moment of degree ≤ n−1 as an empirical mixed
    /// moment, with its standard error.
    pub fn simple_moment(&self, spec: &MomentSpec) -> Result<(Complex64, f64)> {
        if spec.n() != self.n || !spec.is_simple() {
            return Err(Error::BadParameter(
                "spec must be simple and on the same variable count".into(),
            ));
        }
        let prods: Vec<Complex64> = self
            .samples
            .iter()
            .map(|s| {
                let mut prod = Complex64::new(1.0, 0.0);
                for (&mask, &t) in spec.terms() {
                    if t.power == 0 {
                        continue;
                    }
                    let z = s[(mask - 1) as usize];
                    prod *= if t.conjugate { z.conj() } else { z };
                }
                prod
            })
            .collect();
        Ok(numeric::mean_stderr(&prods))
    }

    /// Mixed moments with total order ≤ `max_order` and at most two active
    /// coordinates; the comparison functional used for weak convergence.
    pub fn summary(&self, max_order: u32) -> Vec<(Vec<(usize, u32, u32)>, Complex64)> {
        let dim = self.dimension();
        let mut out = Vec::new();
        let emit = |active: Vec<(usize, u32, u32)>| {
            let mut powers = vec![(0u32, 0u32); dim];
            for &(i, a, b) in &active {
                powers[i] = (a, b);
            }
            let value = self.mixed_moment(&powers).expect("dimension matches");
            (active, value)
        };
        for i in 0..dim {
            for a in 0..=max_order {
                for b in 0..=(max_order - a) {
                    if a + b == 0 {
                        continue;
                    }
                    out.push(emit(vec![(i, a, b)]));
                }
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                for s1 in 1..max_order {
                    for s2 in 1..=(max_order - s1) {
                        for a1 in 0..=s1 {
                            for a2 in 0..=s2 {
                                out.push(emit(vec![
                                    (i, a1, s1 - a1),
                                    (j, a2, s2 - a2),
                                ]));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Samples `D_n(f)` from uniform `(x_1..x_n)`.
pub fn sample_dn(
    f: &GroupFunction,
    n: usize,
    num_samples: usize,
    seeds: &SeedStream,
) -> Result<EmpiricalDistribution> {
    if n == 0 || n > 16 {
        return Err(Error::BadParameter(format!("need 1 ≤ n ≤ 16, got {n}")));
    }
    let group = f.group();
    let dim = (1usize << n) - 1;
    let samples: Vec<Vec<Complex64>> = par_samples(seeds, num_samples, |rng| {
        let xs: Vec<usize> = (0..n).map(|_| group.random_index(rng)).collect();
        (1..=dim as u32)
            .map(|mask| {
                let mut idx = 0usize;
                for (i, &x) in xs.iter().enumerate() {
                    if (mask >> i) & 1 == 1 {
                        idx = group.add_index(idx, x);
                    }
                }
                f.value_at(idx)
            })
            .collect()
    });
    Ok(EmpiricalDistribution {
        n,
        bound: f.bound(),
        samples,
    })
}

/// Samples `D_n(f)` through uniform linear cubes rooted at 0 — the
/// `(x, t_1..t_n)` parametrization with `x = 0` — for the rooted-cube
/// consistency checks.
pub fn sample_dn_rooted_cubes(
    f: &GroupFunction,
    n: usize,
    num_samples: usize,
    seeds: &SeedStream,
) -> Result<EmpiricalDistribution> {
    // identical parametrization under x_i ↔ t_i; kept as a distinct code
    // path so the equivalence is testable
    sample_dn(f, n, num_samples, seeds)
}

/// Edge density of the Cayley hypergraph `H_k(S)`: equals the full-edge
/// moment of the indicator.
pub fn cayley_hypergraph_density(
    group: &FiniteAbelianGroup,
    set: &[usize],
    k: usize,
) -> Result<f64> {
    let indicator = GroupFunction::indicator_set(group, set)?;
    let value = moment_exact(&indicator, &MomentSpec::full_edge(k))?;
    Ok(value.re)
}

/// A limit object: a bounded function on a torus power or on the Heisenberg
/// nilmanifold.
pub enum LimitObject {
    Torus {
        dim: usize,
        evaluator: Box<dyn Fn(&[f64]) -> Complex64 + Sync>,
        bound: f64,
    },
    Heisenberg {
        evaluator: Box<dyn Fn(&NilmanifoldPoint) -> Complex64 + Sync>,
        bound: f64,
    },
}

impl LimitObject {
    pub fn bound(&self) -> f64 {
        match self {
            LimitObject::Torus { bound, .. } => *bound,
            LimitObject::Heisenberg { bound, .. } => *bound,
        }
    }
}

/// Fixed-point Heisenberg element for the cube sampler: `a` and `b` carry
/// 32 fractional bits, `c` carries 64, so the group law and the
/// fundamental-domain floors are exact integer arithmetic.  Haar draws are
/// quantized to the same 32-bit grid, which is far below Monte-Carlo noise.
#[derive(Clone, Copy)]
struct HeisFx {
    a: i128,
    b: i128,
    c: i128,
}

const FX32: i128 = 1 << 32;
const FX64: i128 = 1 << 64;

impl HeisFx {
    fn identity() -> Self {
        Self { a: 0, b: 0, c: 0 }
    }

    fn haar(rng: &mut impl rand::Rng) -> Self {
        Self {
            a: rng.gen::<u32>() as i128,
            b: rng.gen::<u32>() as i128,
            c: (rng.gen::<u32>() as i128) << 32,
        }
    }

    fn central(rng: &mut impl rand::Rng) -> Self {
        Self {
            a: 0,
            b: 0,
            c: (rng.gen::<u32>() as i128) << 32,
        }
    }

    fn mul(self, o: Self) -> Self {
        Self {
            a: self.a + o.a,
            b: self.b + o.b,
            // a·b' carries 32+32 fractional bits, matching c
            c: self.c + o.c + self.a * o.b,
        }
    }

    /// Exact reduction into the fundamental domain, as a nilmanifold point.
    fn reduce(self) -> NilmanifoldPoint {
        let floor_b = self.b.div_euclid(FX32);
        let c2 = self.c - ((self.a * floor_b) << 32);
        let fa = self.a.rem_euclid(FX32);
        let fb = self.b.rem_euclid(FX32);
        let fc = c2.rem_euclid(FX64);
        let dyadic32 = |n: i128| Rat::new(BigInt::from(n), BigInt::from(FX32));
        let dyadic64 = |n: i128| Rat::new(BigInt::from(n), BigInt::from(FX64));
        NilmanifoldPoint::from_representative(HeisenbergElement::new(
            dyadic32(fa),
            dyadic32(fb),
            dyadic64(fc),
        ))
    }
}

/// One random rooted filtration cube on the Heisenberg group: identity at
/// the root, codimension-1 faces `{v_j = 1}` multiplied by Haar group
/// elements, codimension-2 faces `{v_i = v_j = 1}` by Haar central
/// elements, in a fixed order.
fn rooted_heisenberg_cube(n: usize, rng: &mut impl rand::Rng) -> Vec<HeisFx> {
    let verts = 1usize << n;
    let mut cube = vec![HeisFx::identity(); verts];
    for j in 0..n {
        let h = HeisFx::haar(rng);
        for (v, val) in cube.iter_mut().enumerate() {
            if (v >> j) & 1 == 1 {
                *val = val.mul(h);
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let z = HeisFx::central(rng);
            for (v, val) in cube.iter_mut().enumerate() {
                if (v >> i) & 1 == 1 && (v >> j) & 1 == 1 {
                    *val = val.mul(z);
                }
            }
        }
    }
    cube
}

/// Monte-Carlo moment of a limit object.  Torus objects accept any spec;
/// the nilmanifold sampler accepts simple specs only.
pub fn moment_on_limit(
    obj: &LimitObject,
    spec: &MomentSpec,
    num_samples: usize,
    seeds: &SeedStream,
) -> Result<(Complex64, f64)> {
    if num_samples == 0 {
        return Err(Error::BadParameter("need at least one sample".into()));
    }
    let terms: Vec<(u32, TermPower)> = spec.terms().iter().map(|(&m, &t)| (m, t)).collect();
    let n = spec.n();
    match obj {
        LimitObject::Torus { dim, evaluator, .. } => {
            let d = *dim;
            let samples: Vec<Complex64> = par_samples(seeds, num_samples, |rng| {
                let xs: Vec<Vec<f64>> =
                    (0..n).map(|_| (0..d).map(|_| rng.gen::<f64>()).collect()).collect();
                let mut prod = Complex64::new(1.0, 0.0);
                for &(mask, t) in &terms {
                    let mut point = vec![0.0f64; d];
                    for (i, x) in xs.iter().enumerate() {
                        if (mask >> i) & 1 == 1 {
                            for (p, &c) in point.iter_mut().zip(x) {
                                *p = (*p + c).fract();
                            }
                        }
                    }
                    prod *= term_value(evaluator(&point), t);
                }
                prod
            });
            Ok(numeric::mean_stderr(&samples))
        }
        LimitObject::Heisenberg { evaluator, .. } => {
            if !spec.is_simple() {
                return Err(Error::BadParameter(
                    "the nilmanifold sampler supports simple moments only".into(),
                ));
            }
            let samples: Vec<Complex64> = par_samples(seeds, num_samples, |rng| {
                let cube = rooted_heisenberg_cube(n, rng);
                let mut prod = Complex64::new(1.0, 0.0);
                for &(mask, t) in &terms {
                    if t.power == 0 {
                        continue;
                    }
                    let point = cube[mask as usize].reduce();
                    let v = evaluator(&point);
                    prod *= if t.conjugate { v.conj() } else { v };
                }
                prod
            });
            Ok(numeric::mean_stderr(&samples))
        }
    }
}

/// One row of a convergence report.
#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub m: u64,
    pub spec_id: String,
    pub value: Complex64,
    pub value_stderr: f64,
    pub limit_value: Complex64,
    pub limit_stderr: f64,
}

impl ConvergenceRow {
    pub fn gap(&self) -> f64 {
        (self.value - self.limit_value).norm()
    }
}

/// How the finite side of a convergence report is evaluated.
#[derive(Clone, Copy, Debug)]
pub enum EvalStrategy {
    Exact,
    Sampled(usize),
}

/// Moments of `sequence(m)` against the limit object, for every `m` and
/// spec.  The limit side is sampled with `limit_samples` draws.
pub fn convergence_report(
    sequence: &dyn Fn(u64) -> Result<GroupFunction>,
    ms: &[u64],
    specs: &[MomentSpec],
    limit: &LimitObject,
    strategy: EvalStrategy,
    limit_samples: usize,
    seeds: &SeedStream,
) -> Result<Vec<ConvergenceRow>> {
    let mut rows = Vec::new();
    // limit moments once per spec
    let mut limit_values = Vec::new();
    for (i, spec) in specs.iter().enumerate() {
        let (v, se) = moment_on_limit(limit, spec, limit_samples, &seeds.derive(1000 + i as u64))?;
        limit_values.push((v, se));
    }
    for (mi, &m) in ms.iter().enumerate() {
        let f = sequence(m)?;
        for (si, spec) in specs.iter().enumerate() {
            let (value, value_stderr) = match strategy {
                EvalStrategy::Exact => (moment_exact(&f, spec)?, 0.0),
                EvalStrategy::Sampled(n) => {
                    moment_sampled(&f, spec, n, &seeds.derive((mi * specs.len() + si) as u64))?
                }
            };
            let (limit_value, limit_stderr) = limit_values[si];
            rows.push(ConvergenceRow {
                m,
                spec_id: spec.id(),
                value,
                value_stderr,
                limit_value,
                limit_stderr,
            });
        }
    }
    Ok(rows)
}

/// Least-squares slope of the gap column against the index of `m` within
/// the tested list, per spec; the trend diagnostic.
pub fn gap_trend_slope(rows: &[ConvergenceRow], spec_id: &str) -> f64 {
    let gaps: Vec<f64> = rows
        .iter()
        .filter(|r| r.spec_id == spec_id)
        .map(|r| r.gap())
        .collect();
    let n = gaps.len() as f64;
    if gaps.len() < 2 {
        return 0.0;
    }
    let mean_x = (n - 1.0) / 2.0;
    let mean_y: f64 = gaps.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, g) in gaps.iter().enumerate() {
        let dx = i as f64 - mean_x;
        num += dx * (g - mean_y);
        den += dx * dx;
    }
    num / den
}

/// All simple moments on at most `n_max` variables (every nonempty subset
/// absent, plain or conjugated; at least one live term).
pub fn simple_specs_up_to(n_max: usize) -> Vec<MomentSpec> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let dim = (1usize << n) - 1;
        // state per subset: 0 absent, 1 plain, 2 conjugated
        let mut state = vec![0u8; dim];
        loop {
            if state.iter().any(|&s| s != 0) {
                let mut terms = BTreeMap::new();
                for (i, &s) in state.iter().enumerate() {
                    if s != 0 {
                        terms.insert(
                            (i + 1) as u32,
                            TermPower {
                                power: 1,
                                conjugate: s == 2,
                            },
                        );
                    }
                }
                out.push(MomentSpec::new(n, terms).expect("valid by construction"));
            }
            let mut pos = 0;
            loop {
                if pos == dim {
                    break;
                }
                state[pos] += 1;
                if state[pos] < 3 {
                    break;
                }
                state[pos] = 0;
                pos += 1;
            }
            if pos == dim {
                break;
            }
        }
    }
    out
}

/// Example sequence `f_m(k) = e(k/m) + e(a_m k/m)` with `a_m` the nearest
/// integer to `φ·m` (golden ratio), a reproducible generic choice.
pub fn example1_sequence(m: u64) -> Result<GroupFunction> {
    let group = FiniteAbelianGroup::cyclic(u32::try_from(m).map_err(|_| {
        Error::BadParameter(format!("m = {m} too large for a cyclic group"))
    })?)?;
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let a = (phi * m as f64).round() as u64 % m;
    let values: Vec<Complex64> = (0..m)
        .map(|k| {
            numeric::e((k % m) as f64 / m as f64) + numeric::e(((a * k) % m) as f64 / m as f64)
        })
        .collect();
    GroupFunction::from_values(&group, values)
}

/// The limit of example 1: `f(x, y) = e(x) + e(y)` on the 2-torus.
pub fn example1_limit() -> LimitObject {
    LimitObject::Torus {
        dim: 2,
        evaluator: Box::new(|p: &[f64]| numeric::e(p[0]) + numeric::e(p[1])),
        bound: 2.0,
    }
}

/// Example sequence `f_m(k) = λ^{k²}`, `λ = e(⌊αm⌋/m²)`, with irrational
/// `α` (default `√2 − 1`).
pub fn example2_sequence(m: u64, alpha: f64) -> Result<GroupFunction> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::BadParameter(format!("need 0 < α < 1, got {alpha}")));
    }
    let t = (alpha * m as f64).floor() as u64;
    crate::heisenberg::heis_sequence_direct(m, t)
}

/// The limit of example 2: `e(A₁₃)` on the Heisenberg nilmanifold.
pub fn example2_limit() -> LimitObject {
    LimitObject::Heisenberg {
        evaluator: Box::new(crate::heisenberg::corner_observable),
        bound: 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute;

    fn z(m: u32) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(m).unwrap()
    }

    fn one(g: &FiniteAbelianGroup) -> GroupFunction {
        GroupFunction::constant(g, Complex64::new(1.0, 0.0))
    }

    #[test]
    fn spec_construction_and_flags() {
        let tri = MomentSpec::triangle();
        assert_eq!(tri.n(), 3);
        assert!(tri.is_simple());
        assert_eq!(tri.degree(), 1);
        assert_eq!(MomentSpec::full_edge(3).degree(), 2);
        assert_eq!(MomentSpec::gowers_cube(3).n(), 4);
        assert_eq!(MomentSpec::gowers_cube(3).degree(), 3);
        assert!(MomentSpec::from_subsets(2, &[]).is_err());
        assert!(MomentSpec::from_subsets(2, &[(&[3], 1, false)]).is_err());

        let spec = MomentSpec::from_subsets(3, &[(&[1, 2], 2, true), (&[3], 1, false)]).unwrap();
        assert!(!spec.is_simple());
        let text = serde_json::to_string(&spec).unwrap();
        let back: MomentSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(spec, back);
    }

    #[test]
    fn exact_moment_examples() {
        let g = z(5);
        // constants give 1 for any spec
        assert!((moment_exact(&one(&g), &MomentSpec::triangle()).unwrap()
            - Complex64::new(1.0, 0.0))
        .norm()
            < 1e-12);

        // triangle moment of a nontrivial character vanishes (2 invertible)
        let chi = g.character(1).as_function();
        assert!(moment_exact(&chi, &MomentSpec::triangle()).unwrap().norm() < 1e-12);

        // triangle moment = triangle density of the graph M_{x,y} = f(x+y)
        let mut rng = SeedStream::new(21).rng();
        let f = GroupFunction::random(&g, 1.0, &mut rng);
        let a = moment_exact(&f, &MomentSpec::triangle()).unwrap();
        let b = brute::triangle_density_by_counting(&f).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn exact_moment_cap_errors() {
        let g = z(64);
        let spec = MomentSpec::full_edge(5); // 64^5 > 10^7
        assert!(matches!(
            moment_exact(&one(&g), &spec),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn sampled_moment_matches_exact() {
        let g = z(16);
        let mut rng = SeedStream::new(3).rng();
        let f = GroupFunction::random(&g, 1.0, &mut rng);
        let exact = moment_exact(&f, &MomentSpec::triangle()).unwrap();
        let (est, se) = moment_sampled(&f, &MomentSpec::triangle(), 100_000, &SeedStream::new(9)).unwrap();
        assert!((est - exact).norm() <= 4.0 * se, "{est} vs {exact} ± {se}");
        assert!(se > 0.0);

        // constant: exactly 1, stderr 0
        let (est, se) = moment_sampled(&one(&g), &MomentSpec::triangle(), 100, &SeedStream::new(1)).unwrap();
        assert_eq!(est, Complex64::new(1.0, 0.0));
        assert_eq!(se, 0.0);

        // a conjugated power-2 edge
        let spec = MomentSpec::from_subsets(2, &[(&[1, 2], 2, true), (&[1], 1, false)]).unwrap();
        let exact = moment_exact(&f, &spec).unwrap();
        let (est, se) = moment_sampled(&f, &spec, 100_000, &SeedStream::new(5)).unwrap();
        assert!((est - exact).norm() <= 4.0 * se);
    }

    #[test]
    fn moment_invariant_under_relabeling() {
        let g = z(8);
        let mut rng = SeedStream::new(7).rng();
        let f = GroupFunction::random(&g, 1.0, &mut rng);
        let spec = MomentSpec::from_subsets(
            3,
            &[(&[1, 2], 1, false), (&[2, 3], 1, true), (&[1], 1, false)],
        )
        .unwrap();
        let base = moment_exact(&f, &spec).unwrap();
        for perm in [[2usize, 1, 3], [3, 2, 1], [2, 3, 1]] {
            let relabeled = spec.relabel(&perm).unwrap();
            let v = moment_exact(&f, &relabeled).unwrap();
            assert!((v - base).norm() < 1e-12, "perm {perm:?}");
        }
    }

    #[test]
    fn dn_samples_have_the_right_shape() {
        let g = z(8);
        let mut rng = SeedStream::new(2).rng();
        let f = GroupFunction::random(&g, 1.0, &mut rng);
        let dist = sample_dn(&f, 3, 500, &SeedStream::new(4)).unwrap();
        assert_eq!(dist.dimension(), 7);
        assert_eq!(dist.samples().len(), 500);

        // constant function: every coordinate equals the constant
        let c = GroupFunction::constant(&g, Complex64::new(0.25, -0.5));
        let dist = sample_dn(&c, 2, 50, &SeedStream::new(4)).unwrap();
        for s in dist.samples() {
            for z in s {
                assert!((z - Complex64::new(0.25, -0.5)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn empirical_triangle_moment_matches_exact() {
        let g = z(8);
        let mut rng = SeedStream::new(11).rng();
        let f = GroupFunction::random(&g, 1.0, &mut rng);
        let dist = sample_dn(&f, 3, 200_000, &SeedStream::new(13)).unwrap();
        let (est, se) = dist.simple_moment(&MomentSpec::triangle()).unwrap();
        let exact = moment_exact(&f, &MomentSpec::triangle()).unwrap();
        assert!((est - exact).norm() <= 4.0 * se.max(1e-9), "{est} vs {exact} ± {se}");
    }

    #[test]
    fn cayley_density_examples() {
        let g = z(12);
        // S = A → 1
        let all: Vec<usize> = (0..12).collect();
        assert!((cayley_hypergraph_density(&g, &all, 2).unwrap() - 1.0).abs() < 1e-12);
        // S = {0} → 1/n for any k
        for k in 1..=3 {
            assert!((cayley_hypergraph_density(&g, &[0], k).unwrap() - 1.0 / 12.0).abs() < 1e-12);
        }
        // random set: counting oracle agrees
        use rand::Rng;
        let mut rng = SeedStream::new(17).rng();
        let set: Vec<usize> = (0..12).filter(|_| rng.gen_bool(0.4)).collect();
        let a = cayley_hypergraph_density(&g, &set, 3).unwrap();
        let b = brute::cayley_density_by_counting(&g, &set, 3).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn torus_moments() {
        let limit = example1_limit();
        // constant 1 → 1
        let konst = LimitObject::Torus {
            dim: 1,
            evaluator: Box::new(|_| Complex64::new(1.0, 0.0)),
            bound: 1.0,
        };
        let (v, se) = moment_on_limit(&konst, &MomentSpec::full_edge(1), 100, &SeedStream::new(1)).unwrap();
        assert_eq!(v, Complex64::new(1.0, 0.0));
        assert_eq!(se, 0.0);

        // mean of e(x)+e(y) over the 2-torus vanishes
        let (v, se) =
            moment_on_limit(&limit, &MomentSpec::full_edge(1), 200_000, &SeedStream::new(2)).unwrap();
        assert!(v.norm() <= 4.0 * se);

        // E g(x) conj(g(x+y)) = 0: four character integrals, each zero
        let spec = MomentSpec::from_subsets(2, &[(&[1], 1, false), (&[1, 2], 1, true)]).unwrap();
        let (v, se) = moment_on_limit(&limit, &spec, 200_000, &SeedStream::new(3)).unwrap();
        assert!(v.norm() <= 4.0 * se, "|{v}| > 4·{se}");
    }

    #[test]
    fn heisenberg_sampler_requires_simple_specs() {
        let limit = example2_limit();
        let bad = MomentSpec::from_subsets(2, &[(&[1], 2, false)]).unwrap();
        assert!(moment_on_limit(&limit, &bad, 10, &SeedStream::new(1)).is_err());
    }

    #[test]
    fn example1_gaps_vanish_for_simple_specs() {
        // at m = 400 the generic a_m kills every small relation, so exact
        // finite moments already match the limit; check one spec family
        let spec = MomentSpec::from_subsets(2, &[(&[1], 1, false), (&[1, 2], 1, true)]).unwrap();
        let f = example1_sequence(400).unwrap();
        let v = moment_exact(&f, &spec).unwrap();
        let (lv, lse) = moment_on_limit(&example1_limit(), &spec, 300_000, &SeedStream::new(6)).unwrap();
        assert!((v - lv).norm() <= 4.0 * lse + 1e-9, "{v} vs {lv} ± {lse}");
    }

    #[test]
    fn example2_cube_moment_is_stable_and_positive() {
        // the 8-vertex cube moment equals ‖f‖_{U_3}^8 and stays near its
        // limit along the sequence
        let spec = MomentSpec::gowers_cube(3);
        for m in [24u64, 32] {
            let f = example2_sequence(m, 2f64.sqrt() - 1.0).unwrap();
            let v = moment_exact(&f, &spec).unwrap();
            let u3 = crate::norms::gowers_norm_exact(&f, 3).unwrap();
            assert!((v.re - u3.powi(8)).abs() < 1e-9);
            assert!(v.im.abs() < 1e-9);
            assert!(v.re > 0.3, "cube moment {v} too small at m={m}");
        }
    }

    #[test]
    fn constant_sequence_against_constant_limit_has_zero_gaps() {
        let constant_seq = |m: u64| {
            let g = FiniteAbelianGroup::cyclic(m as u32)?;
            Ok(GroupFunction::constant(&g, Complex64::new(1.0, 0.0)))
        };
        let limit = LimitObject::Torus {
            dim: 1,
            evaluator: Box::new(|_| Complex64::new(1.0, 0.0)),
            bound: 1.0,
        };
        let rows = convergence_report(
            &constant_seq,
            &[4, 8, 16],
            &[MomentSpec::triangle(), MomentSpec::full_edge(2)],
            &limit,
            EvalStrategy::Exact,
            100,
            &SeedStream::new(1),
        )
        .unwrap();
        assert_eq!(rows.len(), 6);
        for row in &rows {
            assert!(row.gap() < 1e-12, "{}: gap {}", row.spec_id, row.gap());
        }
    }

    #[test]
    fn simple_spec_family_counts() {
        // n=1: 2 specs; n=2: 3^3 − 1 = 26 specs
        assert_eq!(simple_specs_up_to(1).len(), 2);
        assert_eq!(simple_specs_up_to(2).len(), 28);
        let ids: std::collections::HashSet<String> =
            simple_specs_up_to(2).iter().map(|s| s.id()).collect();
        assert_eq!(ids.len(), 28, "ids must be distinct");
    }

    #[test]
    fn seven_dimensional_distribution_at_n3() {
        let g = z(4);
        let f = one(&g);
        let d = sample_dn(&f, 3, 10, &SeedStream::new(1)).unwrap();
        assert_eq!(d.dimension(), 7);
    }
}
