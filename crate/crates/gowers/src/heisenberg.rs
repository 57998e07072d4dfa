//! The Heisenberg group, its nilmanifold, and the quadratic sequence
//! pipeline.
//!
//! Elements are upper unitriangular 3×3 matrices stored by their three free
//! entries `(a, b, c) = (A₁₂, A₂₃, A₁₃)` as exact rationals, so
//! multiplication is `(a,b,c)·(a',b',c') = (a+a', b+b', c+c'+a·b')` and the
//! fundamental-domain reduction can take exact floors.  Floating point
//! enters only in the final `e(·)` evaluation.
//!
//! The generator `M(m,t) = (2t/m, 1/m, t/m²)` has
//! `M^k = (2kt/m, k/m, k²t/m²)`; `M^m` is integral, so `k ↦ M^k Γ` is an
//! `m`-periodic map into the nilmanifold, and evaluating `e(A₁₃)` on the
//! fundamental-domain representative reproduces `e(k²t/m²)` exactly.

use crate::group::{FiniteAbelianGroup, GroupFunction};
use crate::numeric::e;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// An element of the Heisenberg group: entries `(A₁₂, A₂₃, A₁₃)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeisenbergElement {
    a: Rat,
    b: Rat,
    c: Rat,
}

impl HeisenbergElement {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Self {
        Self { a, b, c }
    }

    pub fn from_i64(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Self {
        Self::new(rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1))
    }

    pub fn identity() -> Self {
        Self {
            a: Rat::zero(),
            b: Rat::zero(),
            c: Rat::zero(),
        }
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn c(&self) -> &Rat {
        &self.c
    }

    /// Matrix product: `(a,b,c)·(a',b',c') = (a+a', b+b', c+c'+a·b')`.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            c: &self.c + &other.c + &self.a * &other.b,
        }
    }

    /// Inverse `(−a, −b, ab−c)`.
    pub fn inv(&self) -> Self {
        Self {
            a: -&self.a,
            b: -&self.b,
            c: &self.a * &self.b - &self.c,
        }
    }

    /// `M^k` for any integer `k`, by repeated multiplication.
    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().pow(-k);
        }
        let mut acc = Self::identity();
        let mut base = self.clone();
        let mut rest = k as u64;
        while rest > 0 {
            if rest & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            rest >>= 1;
        }
        acc
    }

    /// True iff all entries are integers, i.e. the element lies in the
    /// lattice Γ.
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer() && self.c.is_integer()
    }

    /// True iff all entries lie in `[0, 1)`.
    pub fn in_fundamental_domain(&self) -> bool {
        let unit = |x: &Rat| !x.is_negative() && x < &Rat::one();
        unit(&self.a) && unit(&self.b) && unit(&self.c)
    }
}

/// The standard quadratic generator `M = (2t/m, 1/m, t/m²)`, `1 < t < m`.
pub fn standard_generator(m: u64, t: u64) -> Result<HeisenbergElement> {
    if !(1 < t && t < m) {
        return Err(Error::BadParameter(format!(
            "need 1 < t < m, got t = {t}, m = {m}"
        )));
    }
    let m = m as i64;
    let t = t as i64;
    Ok(HeisenbergElement::new(
        rat(2 * t, m),
        rat(1, m),
        rat(t, m * m),
    ))
}

/// Closed form `M^k = (2kt/m, k/m, k²t/m²)` of the standard generator.
pub fn standard_generator_power(m: u64, t: u64, k: i64) -> HeisenbergElement {
    let m = m as i64;
    let t = t as i64;
    HeisenbergElement::new(
        Rat::new(BigInt::from(2 * t) * BigInt::from(k), BigInt::from(m)),
        rat(k, m),
        Rat::new(
            BigInt::from(t) * BigInt::from(k) * BigInt::from(k),
            BigInt::from(m) * BigInt::from(m),
        ),
    )
}

/// A point of the Heisenberg nilmanifold `N = H/Γ`, stored by its unique
/// representative with entries in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NilmanifoldPoint {
    rep: HeisenbergElement,
}

impl NilmanifoldPoint {
    pub fn representative(&self) -> &HeisenbergElement {
        &self.rep
    }

    /// Wraps an element already lying in the fundamental domain.
    pub fn from_representative(rep: HeisenbergElement) -> Self {
        debug_assert!(rep.in_fundamental_domain());
        Self { rep }
    }

    pub fn identity_coset() -> Self {
        Self {
            rep: HeisenbergElement::identity(),
        }
    }
}

fn floor_rat(x: &Rat) -> Rat {
    x.floor()
}

/// Reduces `g` into the fundamental domain: returns the point and the
/// lattice element `γ ∈ Γ` with `g·γ` the representative.  The `[0,1)`
/// convention makes the pair unique, and `g·γ·γ⁻¹ = g` exactly.
pub fn reduce_to_fundamental_domain(g: &HeisenbergElement) -> (NilmanifoldPoint, HeisenbergElement) {
    // right-multiplying by integer (p, q, r) gives (a+p, b+q, c+r+a·q)
    let q = -floor_rat(&g.b);
    let p = -floor_rat(&g.a);
    let r = -floor_rat(&(&g.c + &g.a * &q));
    let gamma = HeisenbergElement::new(p, q, r);
    let rep = g.mul(&gamma);
    debug_assert!(rep.in_fundamental_domain());
    debug_assert!(gamma.is_integral());
    (NilmanifoldPoint { rep }, gamma)
}

/// The observable `g(A) = e(A₁₃)` on fundamental-domain representatives.
pub fn corner_observable(p: &NilmanifoldPoint) -> num_complex::Complex64 {
    e(p.rep.c.to_f64().expect("reduced entries are small rationals"))
}

/// The nilmanifold pipeline: the sequence `k ↦ e(A₁₃(reduce(M^k)))` on
/// `Z_m`, which equals `e(k²t/m²)` for `0 ≤ k < m`.
pub fn heis_sequence(m: u64, t: u64) -> Result<GroupFunction> {
    let gen = standard_generator(m, t)?;
    let group = FiniteAbelianGroup::cyclic(m as u32)?;
    let values: Vec<num_complex::Complex64> = (0..m as i64)
        .map(|k| {
            let (point, _) = reduce_to_fundamental_domain(&gen.pow(k));
            corner_observable(&point)
        })
        .collect();
    GroupFunction::from_values(&group, values)
}

/// The direct formula `f(k) = λ^{k²}`, `λ = e(t/m²)`, with the fractional
/// part of `k²t/m²` taken exactly before the single float evaluation.
pub fn heis_sequence_direct(m: u64, t: u64) -> Result<GroupFunction> {
    if !(1 < t && t < m) {
        return Err(Error::BadParameter(format!(
            "need 1 < t < m, got t = {t}, m = {m}"
        )));
    }
    let group = FiniteAbelianGroup::cyclic(m as u32)?;
    let mm = (m as u128) * (m as u128);
    let values: Vec<num_complex::Complex64> = (0..m as u128)
        .map(|k| {
            let frac = (k * k * t as u128) % mm;
            e(frac as f64 / mm as f64)
        })
        .collect();
    GroupFunction::from_values(&group, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SeedStream;

    fn random_rat(rng: &mut impl rand::Rng) -> Rat {
        rat(rng.gen_range(-50..50), rng.gen_range(1..20))
    }

    fn random_elem(rng: &mut impl rand::Rng) -> HeisenbergElement {
        HeisenbergElement::new(random_rat(rng), random_rat(rng), random_rat(rng))
    }

    #[test]
    fn group_laws_on_random_triples() {
        let mut rng = SeedStream::new(12).rng();
        for _ in 0..1000 {
            let (x, y, z) = (random_elem(&mut rng), random_elem(&mut rng), random_elem(&mut rng));
            assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            assert_eq!(x.mul(&x.inv()), HeisenbergElement::identity());
            assert_eq!(x.inv().mul(&x), HeisenbergElement::identity());
            assert_eq!(x.mul(&HeisenbergElement::identity()), x);
        }
    }

    #[test]
    fn closed_form_power_matches_repeated_multiplication() {
        for (m, t) in [(5u64, 2u64), (7, 3), (12, 7)] {
            let gen = standard_generator(m, t).unwrap();
            for k in 0..=(3 * m as i64) {
                assert_eq!(gen.pow(k), standard_generator_power(m, t, k), "m={m} t={t} k={k}");
            }
            assert_eq!(gen.pow(0), HeisenbergElement::identity());
        }
    }

    #[test]
    fn generator_power_instance() {
        // t=2, m=5, k=3 → (12/5, 3/5, 18/25)
        let p = standard_generator(5, 2).unwrap().pow(3);
        assert_eq!(p.a(), &rat(12, 5));
        assert_eq!(p.b(), &rat(3, 5));
        assert_eq!(p.c(), &rat(18, 25));
    }

    #[test]
    fn mth_power_is_integral() {
        for (m, t) in [(5u64, 2u64), (7, 3), (12, 7)] {
            let p = standard_generator(m, t).unwrap().pow(m as i64);
            assert!(p.is_integral(), "M^m must lie in the lattice");
            assert_eq!(p.a(), &rat(2 * t as i64, 1));
            assert_eq!(p.b(), &rat(1, 1));
            assert_eq!(p.c(), &rat(t as i64, 1));
        }
    }

    #[test]
    fn reduction_examples() {
        // already reduced → γ = identity
        let d = HeisenbergElement::from_i64((1, 3), (2, 5), (1, 7));
        let (point, gamma) = reduce_to_fundamental_domain(&d);
        assert_eq!(gamma, HeisenbergElement::identity());
        assert_eq!(point.representative(), &d);

        // M^3 for (t,m) = (2,5): representative ({12/5}, {3/5}, {18/25})
        let p = standard_generator(5, 2).unwrap().pow(3);
        let (point, gamma) = reduce_to_fundamental_domain(&p);
        assert_eq!(point.representative().a(), &rat(2, 5));
        assert_eq!(point.representative().b(), &rat(3, 5));
        assert_eq!(point.representative().c(), &rat(18, 25));
        // exact round trip
        assert_eq!(p.mul(&gamma).mul(&gamma.inv()), p);

        // lattice elements reduce to the identity coset
        let gamma = HeisenbergElement::from_i64((4, 1), (-2, 1), (9, 1));
        let (point, _) = reduce_to_fundamental_domain(&gamma);
        assert_eq!(point, NilmanifoldPoint::identity_coset());
    }

    #[test]
    fn reduction_is_unique_on_random_elements() {
        let mut rng = SeedStream::new(3).rng();
        for _ in 0..200 {
            let g = random_elem(&mut rng);
            let (point, gamma) = reduce_to_fundamental_domain(&g);
            assert!(point.representative().in_fundamental_domain());
            assert!(gamma.is_integral());
            assert_eq!(&g.mul(&gamma), point.representative());
        }
    }

    #[test]
    fn pipeline_matches_direct_formula() {
        for (m, t) in [(5u64, 2u64), (12, 7), (50, 13)] {
            let pipeline = heis_sequence(m, t).unwrap();
            let direct = heis_sequence_direct(m, t).unwrap();
            for k in 0..m as usize {
                let d = (pipeline.value_at(k) - direct.value_at(k)).norm();
                assert!(d <= 1e-12, "m={m} t={t} k={k}: {d}");
            }
        }
    }

    #[test]
    fn pipeline_instances_and_periodicity() {
        // m=5, t=2, k=3 → e(18/25)
        let f = heis_sequence(5, 2).unwrap();
        assert!((f.value_at(3) - e(18.0 / 25.0)).norm() < 1e-12);
        assert!((f.value_at(0) - num_complex::Complex64::new(1.0, 0.0)).norm() < 1e-15);

        // exact periodicity: reduce(M^{k+m}) == reduce(M^k)
        let gen = standard_generator(12, 7).unwrap();
        for k in 0..12i64 {
            let (p1, _) = reduce_to_fundamental_domain(&gen.pow(k));
            let (p2, _) = reduce_to_fundamental_domain(&gen.pow(k + 12));
            assert_eq!(p1, p2);
        }
    }

    #[test]
    fn parameter_range_is_enforced() {
        assert!(standard_generator(5, 5).is_err());
        assert!(standard_generator(5, 1).is_err());
        assert!(heis_sequence(5, 0).is_err());
        assert!(heis_sequence_direct(4, 4).is_err());
    }
}
