//! Symbolic cube morphisms.
//!
//! A morphism `ψ: {0,1}^n → {0,1}^m` that extends to an affine homomorphism
//! `Z^n → Z^m` is exactly one whose output coordinates are each `0`, `1`,
//! `v_i` or `1−v_i`.  Storing that symbol per coordinate makes composition
//! exact and enumeration cheap; the all-maps filter in [`crate::brute`] is
//! the oracle for this representation at small dimensions.
//!
//! Vertices of `{0,1}^n` are encoded as integers with coordinate 1 in the
//! most significant bit, matching the lexicographic tuple order used for
//! cube lists everywhere in the crate.

use crate::{Error, Result};
use std::fmt;

/// One output coordinate of a cube morphism.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CoordSym {
    Zero,
    One,
    /// `v_i`, 0-based.
    Var(u32),
    /// `1 − v_i`, 0-based.
    NegVar(u32),
}

impl CoordSym {
    fn negate(self) -> CoordSym {
        match self {
            CoordSym::Zero => CoordSym::One,
            CoordSym::One => CoordSym::Zero,
            CoordSym::Var(i) => CoordSym::NegVar(i),
            CoordSym::NegVar(i) => CoordSym::Var(i),
        }
    }

    fn eval(self, v: usize, n: u32) -> u32 {
        match self {
            CoordSym::Zero => 0,
            CoordSym::One => 1,
            CoordSym::Var(i) => vertex_coord(v, n, i),
            CoordSym::NegVar(i) => 1 - vertex_coord(v, n, i),
        }
    }
}

impl fmt::Display for CoordSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordSym::Zero => write!(f, "0"),
            CoordSym::One => write!(f, "1"),
            CoordSym::Var(i) => write!(f, "v{}", i + 1),
            CoordSym::NegVar(i) => write!(f, "1-v{}", i + 1),
        }
    }
}

/// Coordinate `i` (0-based) of vertex index `v` in `{0,1}^n`.
pub fn vertex_coord(v: usize, n: u32, i: u32) -> u32 {
    ((v >> (n - 1 - i)) & 1) as u32
}

/// Vertex index with the given coordinates.
pub fn vertex_index(coords: &[u32]) -> usize {
    coords.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
}

/// `h(v)`: number of 1-coordinates of the vertex.
pub fn vertex_weight(v: usize) -> u32 {
    (v as u64).count_ones()
}

/// A cube morphism `{0,1}^n → {0,1}^m` in per-coordinate symbolic form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CubeMorphism {
    source_dim: u32,
    coords: Vec<CoordSym>,
}

impl CubeMorphism {
    pub fn new(source_dim: u32, coords: Vec<CoordSym>) -> Result<Self> {
        for c in &coords {
            if let CoordSym::Var(i) | CoordSym::NegVar(i) = c {
                if *i >= source_dim {
                    return Err(Error::BadParameter(format!(
                        "symbol {c} references a variable outside dimension {source_dim}"
                    )));
                }
            }
        }
        Ok(Self { source_dim, coords })
    }

    pub fn identity(n: u32) -> Self {
        Self {
            source_dim: n,
            coords: (0..n).map(CoordSym::Var).collect(),
        }
    }

    pub fn source_dim(&self) -> u32 {
        self.source_dim
    }

    pub fn target_dim(&self) -> u32 {
        self.coords.len() as u32
    }

    pub fn coords(&self) -> &[CoordSym] {
        &self.coords
    }

    /// Image of a vertex index.
    pub fn apply_index(&self, v: usize) -> usize {
        let mut out = 0usize;
        for sym in &self.coords {
            out = (out << 1) | sym.eval(v, self.source_dim) as usize;
        }
        out
    }

    /// Composition `v ↦ other(self(v))`.
    pub fn then(&self, other: &CubeMorphism) -> Result<CubeMorphism> {
        if other.source_dim != self.target_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim() as usize,
                got: other.source_dim as usize,
            });
        }
        let coords = other
            .coords
            .iter()
            .map(|sym| match sym {
                CoordSym::Zero => CoordSym::Zero,
                CoordSym::One => CoordSym::One,
                CoordSym::Var(i) => self.coords[*i as usize],
                CoordSym::NegVar(i) => self.coords[*i as usize].negate(),
            })
            .collect();
        Ok(CubeMorphism {
            source_dim: self.source_dim,
            coords,
        })
    }

    /// Composes a cube `c ∈ C^m` (a vertex-value table of length `2^m`) with
    /// this morphism, giving the candidate cube `v ↦ c(ψ(v))` of dimension
    /// `n`.
    pub fn apply_to_cube<T: Clone>(&self, cube: &[T]) -> Result<Vec<T>> {
        if cube.len() != 1usize << self.target_dim() {
            return Err(Error::DimensionMismatch {
                expected: 1usize << self.target_dim(),
                got: cube.len(),
            });
        }
        Ok((0..1usize << self.source_dim)
            .map(|v| cube[self.apply_index(v)].clone())
            .collect())
    }

    pub fn is_bijective(&self) -> bool {
        if self.source_dim != self.target_dim() {
            return false;
        }
        let size = 1usize << self.source_dim;
        let mut seen = vec![false; size];
        for v in 0..size {
            let img = self.apply_index(v);
            if seen[img] {
                return false;
            }
            seen[img] = true;
        }
        true
    }

    /// The sign `s(σ) = (−1)^m` where `m = h(σ(0^k))`, defined for cube
    /// automorphisms; multiplicative under composition.
    pub fn automorphism_sign(&self) -> Result<i32> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let w = vertex_weight(self.apply_index(0));
        Ok(if w % 2 == 0 { 1 } else { -1 })
    }
}

impl fmt::Display for CubeMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// All `(2n+2)^m` cube morphisms `{0,1}^n → {0,1}^m`, in a fixed
/// enumeration order.
pub fn enumerate_cube_morphisms(n: u32, m: u32) -> Result<Vec<CubeMorphism>> {
    enumerate_cube_morphisms_capped(n, m, 10_000_000)
}

pub fn enumerate_cube_morphisms_capped(n: u32, m: u32, cap: u64) -> Result<Vec<CubeMorphism>> {
    let symbols: Vec<CoordSym> = {
        let mut s = vec![CoordSym::Zero, CoordSym::One];
        for i in 0..n {
            s.push(CoordSym::Var(i));
            s.push(CoordSym::NegVar(i));
        }
        s
    };
    let count = (symbols.len() as u128).pow(m);
    if count > cap as u128 {
        return Err(Error::CapExceeded {
            what: "cube-morphism enumeration",
            size: count,
            cap: cap as u128,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0usize; m as usize];
    loop {
        let coords: Vec<CoordSym> = digits.iter().map(|&d| symbols[d]).collect();
        out.push(CubeMorphism {
            source_dim: n,
            coords,
        });
        let mut pos = m as usize;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < symbols.len() {
                break;
            }
            digits[pos] = 0;
            if pos == 0 {
                return Ok(out);
            }
        }
    }
}

/// All automorphisms of `{0,1}^k` (the bijective morphisms; signed
/// coordinate permutations).
pub fn cube_automorphisms(k: u32) -> Result<Vec<CubeMorphism>> {
    Ok(enumerate_cube_morphisms(k, k)?
        .into_iter()
        .filter(|m| m.is_bijective())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::affine_vertex_maps;
    use std::collections::HashSet;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_cube_morphisms(1, 1).unwrap().len(), 4);
        assert_eq!(enumerate_cube_morphisms(2, 1).unwrap().len(), 6);
        assert_eq!(enumerate_cube_morphisms(0, 2).unwrap().len(), 4);
        assert_eq!(enumerate_cube_morphisms(2, 2).unwrap().len(), 36);
        assert!(enumerate_cube_morphisms_capped(3, 3, 100).is_err());
    }

    #[test]
    fn enumeration_matches_all_maps_filter() {
        for (n, m) in [(1u32, 1u32), (2, 1), (1, 2), (2, 2)] {
            let symbolic: HashSet<Vec<usize>> = enumerate_cube_morphisms(n, m)
                .unwrap()
                .iter()
                .map(|psi| (0..1usize << n).map(|v| psi.apply_index(v)).collect())
                .collect();
            let filtered: HashSet<Vec<usize>> =
                affine_vertex_maps(n, m).unwrap().into_iter().collect();
            assert_eq!(symbolic, filtered, "n={n} m={m}");
        }
    }

    #[test]
    fn composition_stays_symbolic_and_closed() {
        // exhaustive over all (n, m, p) ≤ 2: composing enumerated morphisms
        // lands in the enumerated set
        for n in 0..=2u32 {
            for m in 0..=2u32 {
                for p in 0..=2u32 {
                    let first = enumerate_cube_morphisms(n, m).unwrap();
                    let second = enumerate_cube_morphisms(m, p).unwrap();
                    let targets: HashSet<Vec<usize>> = enumerate_cube_morphisms(n, p)
                        .unwrap()
                        .iter()
                        .map(|psi| (0..1usize << n).map(|v| psi.apply_index(v)).collect())
                        .collect();
                    for a in &first {
                        for b in &second {
                            let c = a.then(b).unwrap();
                            let table: Vec<usize> =
                                (0..1usize << n).map(|v| c.apply_index(v)).collect();
                            assert!(targets.contains(&table), "n={n} m={m} p={p}");
                            for v in 0..1usize << n {
                                assert_eq!(c.apply_index(v), b.apply_index(a.apply_index(v)));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn signs() {
        let id = CubeMorphism::identity(3);
        assert_eq!(id.automorphism_sign().unwrap(), 1);

        // single coordinate reflection: v ↦ v ⊕ e_1
        let refl = CubeMorphism::new(
            3,
            vec![CoordSym::NegVar(0), CoordSym::Var(1), CoordSym::Var(2)],
        )
        .unwrap();
        assert_eq!(refl.automorphism_sign().unwrap(), -1);

        // coordinate permutation fixes 0^k
        let perm = CubeMorphism::new(
            3,
            vec![CoordSym::Var(2), CoordSym::Var(0), CoordSym::Var(1)],
        )
        .unwrap();
        assert_eq!(perm.automorphism_sign().unwrap(), 1);

        // non-bijective input is rejected
        let proj = CubeMorphism::new(2, vec![CoordSym::Var(0), CoordSym::Var(0)]).unwrap();
        assert!(proj.automorphism_sign().is_err());

        // multiplicative under composition, over all automorphisms of {0,1}^2
        let autos = cube_automorphisms(2).unwrap();
        assert_eq!(autos.len(), 8);
        for a in &autos {
            for b in &autos {
                let c = a.then(b).unwrap();
                assert_eq!(
                    c.automorphism_sign().unwrap(),
                    a.automorphism_sign().unwrap() * b.automorphism_sign().unwrap()
                );
            }
        }
    }

    #[test]
    fn apply_to_cube_examples() {
        // identity leaves the cube alone
        let cube = vec![10usize, 11, 12, 13];
        let id = CubeMorphism::identity(2);
        assert_eq!(id.apply_to_cube(&cube).unwrap(), cube);

        // all-const0 collapses to the value at 0^m
        let zero = CubeMorphism::new(2, vec![CoordSym::Zero, CoordSym::Zero]).unwrap();
        assert_eq!(zero.apply_to_cube(&cube).unwrap(), vec![10, 10, 10, 10]);

        // diagonal {0,1} → {0,1}^2, v ↦ (v, v): picks indices 0 and 3
        let diag = CubeMorphism::new(1, vec![CoordSym::Var(0), CoordSym::Var(0)]).unwrap();
        assert_eq!(diag.apply_to_cube(&cube).unwrap(), vec![10, 13]);

        let wrong = vec![0usize; 3];
        assert!(id.apply_to_cube(&wrong).is_err());
    }
}
