//! Finite abelian groups `Z_{m_1} × … × Z_{m_r}` with uniform (Haar) measure.
//!
//! Elements are coordinate tuples, enumerated lexicographically (first
//! coordinate most significant), so every index in `[0, |A|)` corresponds to
//! exactly one element and back.  A [`GroupFunction`] is a dense complex
//! vector in that enumeration order.  Characters are
//! `χ_c(x) = e(Σ_i c_i x_i / m_i)`, and the Fourier coefficient of `f` at `χ`
//! is the normalized inner product `λ_χ = (f, χ) = E_x f(x) conj(χ(x))`.

use crate::numeric::{self, e, pairwise_sum};
use crate::{Error, Result, DEFAULT_TOL, MAX_GROUP_ORDER};
use num_complex::Complex64;
use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A finite abelian group given as an explicit product of cyclic groups.
///
/// Two groups are equal iff their factor lists are equal; no invariant-factor
/// normalization is performed, so `Z_2 × Z_3` and `Z_6` are distinct objects.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
    order: usize,
}

impl FiniteAbelianGroup {
    /// Builds the group `Z_{m_1} × … × Z_{m_r}`.  Every factor must be at
    /// least 2 and the total order at most [`MAX_GROUP_ORDER`].
    pub fn new(factors: &[u32]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyFactors);
        }
        let mut order: u128 = 1;
        for &m in factors {
            if m < 2 {
                return Err(Error::InvalidFactor(m as u64));
            }
            order *= m as u128;
            if order > MAX_GROUP_ORDER as u128 {
                return Err(Error::OrderCap {
                    order,
                    cap: MAX_GROUP_ORDER,
                });
            }
        }
        Ok(Self {
            factors: factors.to_vec(),
            order: order as usize,
        })
    }

    /// The cyclic group `Z_m`.
    pub fn cyclic(m: u32) -> Result<Self> {
        Self::new(&[m])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z_{m}")).collect();
        parts.join("x")
    }

    /// Element at enumeration index `idx`.
    pub fn element(&self, idx: usize) -> GroupElement {
        debug_assert!(idx < self.order);
        let mut coords = vec![0u32; self.factors.len()];
        let mut rest = idx;
        for i in (0..self.factors.len()).rev() {
            let m = self.factors[i] as usize;
            coords[i] = (rest % m) as u32;
            rest /= m;
        }
        GroupElement {
            coords: coords.into_boxed_slice(),
        }
    }

    /// Enumeration index of an element; inverse of [`Self::element`].
    pub fn index_of(&self, x: &GroupElement) -> usize {
        debug_assert_eq!(x.coords.len(), self.factors.len());
        let mut idx = 0usize;
        for (i, &m) in self.factors.iter().enumerate() {
            idx = idx * m as usize + x.coords[i] as usize;
        }
        idx
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0u32; self.factors.len()].into_boxed_slice(),
        }
    }

    /// Builds an element, reducing each coordinate mod `m_i`.
    pub fn element_from_coords(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                got: coords.len(),
            });
        }
        let reduced: Vec<u32> = coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &m)| c.rem_euclid(m as i64) as u32)
            .collect();
        Ok(GroupElement {
            coords: reduced.into_boxed_slice(),
        })
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let coords: Vec<u32> = x
            .coords
            .iter()
            .zip(y.coords.iter())
            .zip(&self.factors)
            .map(|((&a, &b), &m)| {
                let s = a as u64 + b as u64;
                (s % m as u64) as u32
            })
            .collect();
        GroupElement {
            coords: coords.into_boxed_slice(),
        }
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        let coords: Vec<u32> = x
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&a, &m)| if a == 0 { 0 } else { m - a })
            .collect();
        GroupElement {
            coords: coords.into_boxed_slice(),
        }
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    /// Integer scalar action `c · x` (c may be negative).
    pub fn scalar_mul(&self, c: i64, x: &GroupElement) -> GroupElement {
        let coords: Vec<u32> = x
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&a, &m)| ((c as i128 * a as i128).rem_euclid(m as i128)) as u32)
            .collect();
        GroupElement {
            coords: coords.into_boxed_slice(),
        }
    }

    /// Index-level addition; fast path for a single cyclic factor.
    pub fn add_index(&self, i: usize, j: usize) -> usize {
        if self.factors.len() == 1 {
            let m = self.factors[0] as usize;
            return (i + j) % m;
        }
        self.index_of(&self.add(&self.element(i), &self.element(j)))
    }

    pub fn neg_index(&self, i: usize) -> usize {
        if self.factors.len() == 1 {
            let m = self.factors[0] as usize;
            return (m - i % m) % m;
        }
        self.index_of(&self.neg(&self.element(i)))
    }

    /// Uniform (Haar) sample; deterministic given the generator state.
    pub fn random_element(&self, rng: &mut impl Rng) -> GroupElement {
        let coords: Vec<u32> = self.factors.iter().map(|&m| rng.gen_range(0..m)).collect();
        GroupElement {
            coords: coords.into_boxed_slice(),
        }
    }

    pub fn random_index(&self, rng: &mut impl Rng) -> usize {
        self.index_of(&self.random_element(rng))
    }

    /// Character with frequency tuple at enumeration index `idx` (characters
    /// are enumerated exactly like elements).
    pub fn character(&self, idx: usize) -> Character {
        Character {
            group: self.clone(),
            freq: self.element(idx).coords,
        }
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order).map(move |i| self.character(i))
    }

    pub fn trivial_character(&self) -> Character {
        self.character(0)
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self != other {
            return Err(Error::GroupMismatch(self.describe(), other.describe()));
        }
        Ok(())
    }
}

impl Serialize for FiniteAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            cyclic_factors: &'a [u32],
        }
        Repr {
            cyclic_factors: &self.factors,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            cyclic_factors: Vec<u32>,
        }
        let repr = Repr::deserialize(d)?;
        FiniteAbelianGroup::new(&repr.cyclic_factors).map_err(D::Error::custom)
    }
}

/// An element of a [`FiniteAbelianGroup`]: a reduced coordinate tuple.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Box<[u32]>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

/// A linear character `χ_c(x) = e(Σ_i c_i x_i / m_i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Character {
    group: FiniteAbelianGroup,
    freq: Box<[u32]>,
}

impl Character {
    pub fn new(group: &FiniteAbelianGroup, freq: &[i64]) -> Result<Self> {
        let elem = group.element_from_coords(freq)?;
        Ok(Self {
            group: group.clone(),
            freq: elem.coords,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn freq(&self) -> &[u32] {
        &self.freq
    }

    pub fn is_trivial(&self) -> bool {
        self.freq.iter().all(|&c| c == 0)
    }

    /// Phase `Σ_i c_i x_i / m_i ∈ [0, 1)` with the integer part removed
    /// exactly before any floating-point division.
    pub fn phase(&self, x: &GroupElement) -> f64 {
        let mut theta = 0.0;
        for ((&c, &xi), &m) in self.freq.iter().zip(x.coords()).zip(self.group.factors()) {
            let num = (c as u64 * xi as u64) % m as u64;
            theta += num as f64 / m as f64;
        }
        theta
    }

    pub fn eval(&self, x: &GroupElement) -> Complex64 {
        e(self.phase(x))
    }

    pub fn eval_index(&self, idx: usize) -> Complex64 {
        self.eval(&self.group.element(idx))
    }

    /// The character as a dense [`GroupFunction`].
    pub fn as_function(&self) -> GroupFunction {
        let values: Vec<Complex64> = (0..self.group.order()).map(|i| self.eval_index(i)).collect();
        GroupFunction {
            group: self.group.clone(),
            values,
            bound: 1.0,
        }
    }

    /// Multiplicative order of the character in the dual group.
    pub fn order(&self) -> u64 {
        let mut ord = 1u64;
        for (&c, &m) in self.freq.iter().zip(self.group.factors()) {
            if c == 0 {
                continue;
            }
            let g = num_integer::gcd(c as u64, m as u64);
            ord = num_integer::lcm(ord, m as u64 / g);
        }
        ord
    }
}

/// A dense complex-valued function on a finite abelian group, together with a
/// declared sup-norm bound that dominates all stored magnitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupFunction {
    group: FiniteAbelianGroup,
    values: Vec<Complex64>,
    bound: f64,
}

impl GroupFunction {
    /// Wraps a dense value vector; the bound is computed as the max modulus.
    pub fn from_values(group: &FiniteAbelianGroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                got: values.len(),
            });
        }
        let bound = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        Ok(Self {
            group: group.clone(),
            values,
            bound,
        })
    }

    pub fn from_fn(group: &FiniteAbelianGroup, f: impl Fn(&GroupElement) -> Complex64) -> Self {
        let values: Vec<Complex64> = group.elements().map(|x| f(&x)).collect();
        let bound = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        Self {
            group: group.clone(),
            values,
            bound,
        }
    }

    pub fn constant(group: &FiniteAbelianGroup, c: Complex64) -> Self {
        Self {
            group: group.clone(),
            values: vec![c; group.order()],
            bound: c.norm(),
        }
    }

    /// Indicator of a single element.
    pub fn indicator(group: &FiniteAbelianGroup, x: &GroupElement) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); group.order()];
        values[group.index_of(x)] = Complex64::new(1.0, 0.0);
        Self {
            group: group.clone(),
            values,
            bound: 1.0,
        }
    }

    /// Indicator of a set of element indices.
    pub fn indicator_set(group: &FiniteAbelianGroup, indices: &[usize]) -> Result<Self> {
        let mut values = vec![Complex64::new(0.0, 0.0); group.order()];
        for &i in indices {
            if i >= group.order() {
                return Err(Error::BadParameter(format!(
                    "set index {i} out of range for a group of order {}",
                    group.order()
                )));
            }
            values[i] = Complex64::new(1.0, 0.0);
        }
        Ok(Self {
            group: group.clone(),
            values,
            bound: 1.0,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn value_at(&self, idx: usize) -> Complex64 {
        self.values[idx]
    }

    pub fn eval(&self, x: &GroupElement) -> Complex64 {
        self.values[self.group.index_of(x)]
    }

    /// `E_x f(x)` under the uniform measure.
    pub fn mean(&self) -> Complex64 {
        numeric::mean(&self.values)
    }

    /// Normalized inner product `(f, g) = E_x f(x) conj(g(x))`.
    pub fn scalar_product(&self, other: &GroupFunction) -> Result<Complex64> {
        self.group.check_same(&other.group)?;
        let prods: Vec<Complex64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .collect();
        Ok(numeric::mean(&prods))
    }

    /// Normalized `L^p` norm `(E |f|^p)^{1/p}`, `p > 0`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if !(p > 0.0) {
            return Err(Error::BadParameter(format!("lp_norm needs p > 0, got {p}")));
        }
        let powers: Vec<f64> = self.values.iter().map(|v| v.norm().powf(p)).collect();
        Ok(numeric::mean_f64(&powers).powf(1.0 / p))
    }

    pub fn linf_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Pointwise sum; the declared bound is the sum of bounds.
    pub fn add(&self, other: &GroupFunction) -> Result<GroupFunction> {
        self.group.check_same(&other.group)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(GroupFunction {
            group: self.group.clone(),
            values,
            bound: self.bound + other.bound,
        })
    }

    pub fn sub(&self, other: &GroupFunction) -> Result<GroupFunction> {
        self.group.check_same(&other.group)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(GroupFunction {
            group: self.group.clone(),
            values,
            bound: self.bound + other.bound,
        })
    }

    pub fn scale(&self, c: Complex64) -> GroupFunction {
        GroupFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
            bound: self.bound * c.norm(),
        }
    }

    pub fn conj(&self) -> GroupFunction {
        GroupFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.conj()).collect(),
            bound: self.bound,
        }
    }

    /// Pointwise product; bounds multiply.
    pub fn mul(&self, other: &GroupFunction) -> Result<GroupFunction> {
        self.group.check_same(&other.group)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(GroupFunction {
            group: self.group.clone(),
            values,
            bound: self.bound * other.bound,
        })
    }

    /// The translate `x ↦ f(x + t)`.
    pub fn translate(&self, t: &GroupElement) -> GroupFunction {
        let ti = self.group.index_of(t);
        let values: Vec<Complex64> = (0..self.group.order())
            .map(|i| self.values[self.group.add_index(i, ti)])
            .collect();
        GroupFunction {
            group: self.group.clone(),
            values,
            bound: self.bound,
        }
    }

    /// Uniform random function with values in the complex unit disc,
    /// `|f| ≤ bound`.
    pub fn random(group: &FiniteAbelianGroup, bound: f64, rng: &mut impl Rng) -> Self {
        let values: Vec<Complex64> = (0..group.order())
            .map(|_| {
                // rejection-sample the unit disc, then scale
                loop {
                    let re: f64 = rng.gen_range(-1.0..1.0);
                    let im: f64 = rng.gen_range(-1.0..1.0);
                    if re * re + im * im <= 1.0 {
                        return Complex64::new(re * bound, im * bound);
                    }
                }
            })
            .collect();
        Self {
            group: group.clone(),
            values,
            bound,
        }
    }
}

impl Serialize for GroupFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            group: &'a FiniteAbelianGroup,
            values: Vec<[f64; 2]>,
        }
        Repr {
            group: &self.group,
            values: self.values.iter().map(|v| [v.re, v.im]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            group: FiniteAbelianGroup,
            values: Vec<[f64; 2]>,
        }
        let repr = Repr::deserialize(d)?;
        let values: Vec<Complex64> = repr
            .values
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        GroupFunction::from_values(&repr.group, values).map_err(D::Error::custom)
    }
}

/// The full table of Fourier coefficients of a function, indexed by the
/// character enumeration.
#[derive(Clone, Debug)]
pub struct Spectrum {
    group: FiniteAbelianGroup,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, chi: &Character) -> Complex64 {
        let idx = self.group.index_of(&GroupElement {
            coords: chi.freq.clone(),
        });
        self.coeffs[idx]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Character, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.group.character(i), c))
    }

    /// `Σ_χ |λ_χ|²`; equals `E|f|²` by Parseval.
    pub fn energy(&self) -> f64 {
        let sq: Vec<f64> = self.coeffs.iter().map(|c| c.norm_sqr()).collect();
        numeric::pairwise_sum_f64(&sq)
    }

    /// Reconstructs `f(x) = Σ_χ λ_χ χ(x)`.
    pub fn inverse(&self) -> GroupFunction {
        let group = &self.group;
        let values: Vec<Complex64> = (0..group.order())
            .map(|x| {
                let terms: Vec<Complex64> = (0..group.order())
                    .map(|c| self.coeffs[c] * group.character(c).eval_index(x))
                    .collect();
                pairwise_sum(&terms)
            })
            .collect();
        GroupFunction::from_values(group, values).expect("length matches by construction")
    }
}

/// Fourier transform by the defining sums: `λ_χ = (f, χ)` for every `χ`.
/// This `O(|A|²)` path is the oracle the fast transform is checked against.
pub fn fourier_transform(f: &GroupFunction) -> Spectrum {
    let group = f.group();
    let coeffs: Vec<Complex64> = (0..group.order())
        .map(|c| {
            let chi = group.character(c);
            let prods: Vec<Complex64> = (0..group.order())
                .map(|x| f.value_at(x) * chi.eval_index(x).conj())
                .collect();
            numeric::mean(&prods)
        })
        .collect();
    Spectrum {
        group: group.clone(),
        coeffs,
    }
}

/// Mixed-radix fast transform: one naive DFT per cyclic factor, applied axis
/// by axis (`O(|A| Σ m_i)`).  Must agree with [`fourier_transform`] to 1e-9.
pub fn fourier_transform_fast(f: &GroupFunction) -> Spectrum {
    let group = f.group();
    let factors = group.factors();
    let n = group.order();
    let mut data = f.values().to_vec();
    // stride of axis i in the lexicographic enumeration
    let mut strides = vec![1usize; factors.len()];
    for i in (0..factors.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * factors[i + 1] as usize;
    }
    for (axis, &m) in factors.iter().enumerate() {
        let m = m as usize;
        let stride = strides[axis];
        // precomputed kernel e(-c*x/m)
        let kernel: Vec<Complex64> = (0..m * m)
            .map(|k| e(-((((k / m) * (k % m)) % m) as f64) / m as f64))
            .collect();
        let mut next = vec![Complex64::new(0.0, 0.0); n];
        let block = stride * m;
        for base in 0..n / block {
            for off in 0..stride {
                let start = base * block + off;
                for c in 0..m {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for x in 0..m {
                        acc += data[start + x * stride] * kernel[c * m + x];
                    }
                    next[start + c * stride] = acc;
                }
            }
        }
        data = next;
    }
    let scale = 1.0 / n as f64;
    Spectrum {
        group: group.clone(),
        coeffs: data.into_iter().map(|v| v * scale).collect(),
    }
}

/// Verifies Parseval and inversion for `f` at tolerance `tol`; used by the
/// diagnostics commands.
pub fn fourier_selfcheck(f: &GroupFunction, tol: f64) -> Result<()> {
    let spec = fourier_transform(f);
    let l2sq = f.lp_norm(2.0)?.powi(2);
    if (spec.energy() - l2sq).abs() > tol {
        return Err(Error::BadParameter(format!(
            "Parseval defect {} exceeds {tol}",
            (spec.energy() - l2sq).abs()
        )));
    }
    let back = spec.inverse();
    let defect = f
        .values()
        .iter()
        .zip(back.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if defect > tol {
        return Err(Error::BadParameter(format!(
            "inversion defect {defect} exceeds {tol}"
        )));
    }
    Ok(())
}

/// Largest pointwise deviation `max_x |f(x) − g(x)|`.
pub fn max_deviation(f: &GroupFunction, g: &GroupFunction) -> Result<f64> {
    f.group().check_same(g.group())?;
    Ok(f.values()
        .iter()
        .zip(g.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

pub(crate) fn unit_disc_check(f: &GroupFunction) -> Result<()> {
    if f.linf_norm() > 1.0 + DEFAULT_TOL {
        return Err(Error::BadParameter(format!(
            "|f| ≤ 1 required, found sup |f| = {}",
            f.linf_norm()
        )));
    }
    Ok(())
}
