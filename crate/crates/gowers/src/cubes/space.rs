//! Finite cubespaces with explicit cube lists, and the nilspace axiom
//! checker.
//!
//! A cubespace stores, per dimension `n`, the set `C^n ⊆ points^{2^n}` as a
//! list of vertex-index tuples in lexicographic `{0,1}^n` order.  `C^0` is
//! identified with the point set and is always implicit.  The three nilspace
//! axioms (composition, ergodicity, gluing) and the k-step unique-closing
//! property are checked by exhaustive enumeration; failures carry the
//! lexicographically first counterexample as a witness.

use super::morphism::{enumerate_cube_morphisms, CubeMorphism};
use crate::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, HashSet};
use std::fmt;

/// Work cap for corner-map enumeration in gluing / unique-closing checks.
const GLUING_BUDGET: u128 = 20_000_000;

#[derive(Clone, Debug)]
struct CubeSet {
    list: Vec<Vec<usize>>,
    members: HashSet<Vec<usize>>,
}

impl CubeSet {
    fn new(mut list: Vec<Vec<usize>>) -> Self {
        list.sort();
        list.dedup();
        let members = list.iter().cloned().collect();
        Self { list, members }
    }
}

/// A finite set of points together with explicit cube lists per dimension.
#[derive(Clone, Debug)]
pub struct Cubespace {
    points: usize,
    cubes: BTreeMap<u32, CubeSet>,
}

impl Cubespace {
    /// Builds a cubespace from explicit cube lists.  Tuple lengths and point
    /// indices are validated; lists are sorted and deduplicated.
    pub fn new(points: usize, cubes: BTreeMap<u32, Vec<Vec<usize>>>) -> Result<Self> {
        if points == 0 {
            return Err(Error::BadParameter("a cubespace needs at least one point".into()));
        }
        for (&dim, list) in &cubes {
            for tuple in list {
                if tuple.len() != 1usize << dim {
                    return Err(Error::DimensionMismatch {
                        expected: 1usize << dim,
                        got: tuple.len(),
                    });
                }
                if let Some(&p) = tuple.iter().find(|&&p| p >= points) {
                    return Err(Error::BadParameter(format!(
                        "cube references point {p}, but there are only {points} points"
                    )));
                }
            }
        }
        Ok(Self {
            points,
            cubes: cubes.into_iter().map(|(d, l)| (d, CubeSet::new(l))).collect(),
        })
    }

    /// The one-point cubespace with all (constant) cubes up to `n_max`.
    pub fn one_point(n_max: u32) -> Self {
        let cubes = (1..=n_max)
            .map(|n| (n, vec![vec![0usize; 1 << n]]))
            .collect();
        Self::new(1, cubes).expect("valid by construction")
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn max_dim(&self) -> u32 {
        self.cubes.keys().next_back().copied().unwrap_or(0)
    }

    /// The cube list at a dimension; `C^0` is the point set.
    pub fn cubes(&self, dim: u32) -> Option<&[Vec<usize>]> {
        self.cubes.get(&dim).map(|s| s.list.as_slice())
    }

    pub fn contains(&self, dim: u32, tuple: &[usize]) -> bool {
        if dim == 0 {
            return tuple.len() == 1 && tuple[0] < self.points;
        }
        self.cubes
            .get(&dim)
            .map(|s| s.members.contains(tuple))
            .unwrap_or(false)
    }

    /// Removes one cube; used to build mutation tests.
    pub fn remove_cube(&mut self, dim: u32, tuple: &[usize]) -> bool {
        if let Some(set) = self.cubes.get_mut(&dim) {
            if set.members.remove(tuple) {
                set.list.retain(|t| t != tuple);
                return true;
            }
        }
        false
    }

    /// Inserts a cube tuple (valid or not — this is the mutation surface).
    pub fn insert_cube(&mut self, dim: u32, tuple: Vec<usize>) -> Result<()> {
        if tuple.len() != 1usize << dim {
            return Err(Error::DimensionMismatch {
                expected: 1usize << dim,
                got: tuple.len(),
            });
        }
        let set = self.cubes.entry(dim).or_insert_with(|| CubeSet::new(Vec::new()));
        if set.members.insert(tuple.clone()) {
            set.list.push(tuple);
            set.list.sort();
        }
        Ok(())
    }

    fn require_dims(&self, n_max: u32) -> Result<()> {
        for n in 1..=n_max {
            if !self.cubes.contains_key(&n) {
                return Err(Error::BadParameter(format!(
                    "cubespace has no explicit cube list at dimension {n}"
                )));
            }
        }
        Ok(())
    }

    /// Checks the three nilspace axioms with explicit lists up to `n_max`.
    /// Failures are reported with witnesses, not raised as errors.
    pub fn check_nilspace_axioms(&self, n_max: u32) -> Result<AxiomReport> {
        self.require_dims(n_max)?;
        Ok(AxiomReport {
            composition: self.composition_witness(n_max)?,
            ergodicity: self.ergodicity_witness(),
            gluing: self.gluing_witness(n_max)?,
            n_max,
        })
    }

    fn composition_witness(&self, n_max: u32) -> Result<Option<CompositionWitness>> {
        for n in 0..=n_max {
            for m in 0..=n_max {
                let cubes: Vec<Vec<usize>> = if m == 0 {
                    (0..self.points).map(|p| vec![p]).collect()
                } else {
                    self.cubes[&m].list.clone()
                };
                for psi in enumerate_cube_morphisms(n, m)? {
                    for cube in &cubes {
                        let image = psi.apply_to_cube(cube)?;
                        if !self.contains(n, &image) {
                            return Ok(Some(CompositionWitness {
                                n,
                                m,
                                morphism: psi,
                                cube: cube.clone(),
                                image,
                            }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    fn ergodicity_witness(&self) -> Option<Vec<usize>> {
        for a in 0..self.points {
            for b in 0..self.points {
                if !self.contains(1, &[a, b]) {
                    return Some(vec![a, b]);
                }
            }
        }
        None
    }

    /// Walks all corner maps `{0,1}^n \ {1^n} → points` at dimension `n`,
    /// calling `visit(corner)` for those whose restriction to every
    /// `(n−1)`-face through `0^n` lies in `C^{n−1}`.  Stops early when
    /// `visit` returns `false`.
    fn for_each_glueable_corner(
        &self,
        n: u32,
        mut visit: impl FnMut(&[usize]) -> bool,
    ) -> Result<()> {
        let slots = (1usize << n) - 1;
        let total = (self.points as u128).pow(slots as u32);
        if total > GLUING_BUDGET {
            return Err(Error::CapExceeded {
                what: "corner-map enumeration",
                size: total,
                cap: GLUING_BUDGET,
            });
        }
        // vertex lists of the n faces {v_j = 0}, each in lexicographic order
        // of the remaining coordinates
        let faces: Vec<Vec<usize>> = (0..n)
            .map(|j| {
                (0..1usize << n)
                    .filter(|v| (v >> (n - 1 - j)) & 1 == 0)
                    .collect()
            })
            .collect();
        let mut corner = vec![0usize; slots];
        loop {
            let qualifies = n == 1
                || faces.iter().all(|face| {
                    let restriction: Vec<usize> = face.iter().map(|&v| corner[v]).collect();
                    self.contains(n - 1, &restriction)
                });
            if qualifies && !visit(&corner) {
                return Ok(());
            }
            let mut pos = slots;
            loop {
                if pos == 0 {
                    return Ok(());
                }
                pos -= 1;
                corner[pos] += 1;
                if corner[pos] < self.points {
                    break;
                }
                corner[pos] = 0;
                if pos == 0 {
                    return Ok(());
                }
            }
        }
    }

    fn completions(&self, n: u32, corner: &[usize]) -> Vec<usize> {
        let mut tuple = corner.to_vec();
        tuple.push(0);
        let last = tuple.len() - 1;
        (0..self.points)
            .filter(|&p| {
                tuple[last] = p;
                self.contains(n, &tuple)
            })
            .collect()
    }

    /// Number of points completing a corner map (the `2^n − 1` values in
    /// lexicographic vertex order, missing `1^n`) to a cube at dimension
    /// `n`.
    pub fn completion_count(&self, n: u32, corner: &[usize]) -> usize {
        self.completions(n, corner).len()
    }

    fn gluing_witness(&self, n_max: u32) -> Result<Option<GluingWitness>> {
        for n in 1..=n_max {
            let mut witness = None;
            self.for_each_glueable_corner(n, |corner| {
                if self.completions(n, corner).is_empty() {
                    witness = Some(GluingWitness {
                        n,
                        corner: corner.to_vec(),
                    });
                    false
                } else {
                    true
                }
            })?;
            if witness.is_some() {
                return Ok(witness);
            }
        }
        Ok(None)
    }

    /// True iff every glueable corner map at dimension `k+1` has exactly one
    /// completion.
    pub fn check_k_step(&self, k: u32) -> Result<bool> {
        self.require_dims(k + 1)?;
        let mut unique = true;
        self.for_each_glueable_corner(k + 1, |corner| {
            if self.completions(k + 1, corner).len() != 1 {
                unique = false;
                false
            } else {
                true
            }
        })?;
        Ok(unique)
    }

    /// Like [`Self::check_k_step`] but reporting the first offending corner.
    pub fn k_step_witness(&self, k: u32) -> Result<Option<GluingWitness>> {
        self.require_dims(k + 1)?;
        let mut witness = None;
        self.for_each_glueable_corner(k + 1, |corner| {
            if self.completions(k + 1, corner).len() != 1 {
                witness = Some(GluingWitness {
                    n: k + 1,
                    corner: corner.to_vec(),
                });
                false
            } else {
                true
            }
        })?;
        Ok(witness)
    }
}

impl Serialize for Cubespace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            points: usize,
            cubes: BTreeMap<String, &'a Vec<Vec<usize>>>,
        }
        Repr {
            points: self.points,
            cubes: self
                .cubes
                .iter()
                .map(|(d, set)| (d.to_string(), &set.list))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cubespace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            points: usize,
            cubes: BTreeMap<String, Vec<Vec<usize>>>,
        }
        let repr = Repr::deserialize(d)?;
        let mut cubes = BTreeMap::new();
        for (key, list) in repr.cubes {
            let dim: u32 = key
                .parse()
                .map_err(|_| D::Error::custom(format!("bad dimension key {key:?}")))?;
            cubes.insert(dim, list);
        }
        Cubespace::new(repr.points, cubes).map_err(D::Error::custom)
    }
}

/// Composition-axiom counterexample.
#[derive(Clone, Debug)]
pub struct CompositionWitness {
    pub n: u32,
    pub m: u32,
    pub morphism: CubeMorphism,
    pub cube: Vec<usize>,
    pub image: Vec<usize>,
}

/// Gluing counterexample: a corner map with no (or, for unique closing, not
/// exactly one) completion.
#[derive(Clone, Debug)]
pub struct GluingWitness {
    pub n: u32,
    pub corner: Vec<usize>,
}

/// Outcome of the three-axiom check.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub composition: Option<CompositionWitness>,
    pub ergodicity: Option<Vec<usize>>,
    pub gluing: Option<GluingWitness>,
    pub n_max: u32,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.composition.is_none() && self.ergodicity.is_none() && self.gluing.is_none()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.composition {
            None => writeln!(f, "composition (dims <= {}): pass", self.n_max)?,
            Some(w) => writeln!(
                f,
                "composition: FAIL at psi {} : {{0,1}}^{} -> {{0,1}}^{} on cube {:?} (image {:?} not a cube)",
                w.morphism, w.n, w.m, w.cube, w.image
            )?,
        }
        match &self.ergodicity {
            None => writeln!(f, "ergodicity: pass")?,
            Some(p) => writeln!(f, "ergodicity: FAIL, pair {p:?} is not a 1-cube")?,
        }
        match &self.gluing {
            None => writeln!(f, "gluing (dims <= {}): pass", self.n_max)?,
            Some(w) => writeln!(
                f,
                "gluing: FAIL at dimension {}, corner {:?} has no completion",
                w.n, w.corner
            )?,
        }
        Ok(())
    }
}

/// Concatenation of two adjacent `k`-cubes along the last coordinate:
/// requires `f1(v,1) = f2(v,0)` and returns `f3` with `f3(v,0) = f1(v,0)`,
/// `f3(v,1) = f2(v,1)`.
pub fn concatenate<T: Clone + PartialEq>(f1: &[T], f2: &[T]) -> Result<Vec<T>> {
    if f1.len() != f2.len() || f1.is_empty() || !f1.len().is_power_of_two() {
        return Err(Error::DimensionMismatch {
            expected: f1.len(),
            got: f2.len(),
        });
    }
    let pairs = f1.len() / 2;
    for i in 0..pairs {
        if f1[2 * i + 1] != f2[2 * i] {
            return Err(Error::NotAdjacent);
        }
    }
    let mut out = Vec::with_capacity(f1.len());
    for i in 0..pairs {
        out.push(f1[2 * i].clone());
        out.push(f2[2 * i + 1].clone());
    }
    Ok(out)
}

/// Adjacency test for [`concatenate`].
pub fn adjacent<T: PartialEq>(f1: &[T], f2: &[T]) -> bool {
    f1.len() == f2.len()
        && f1.len().is_power_of_two()
        && (0..f1.len() / 2).all(|i| f1[2 * i + 1] == f2[2 * i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_space_passes_everything() {
        let space = Cubespace::one_point(3);
        let report = space.check_nilspace_axioms(3).unwrap();
        assert!(report.all_pass(), "{report}");
        assert!(space.check_k_step(0).unwrap());
    }

    #[test]
    fn concatenation_of_linear_edges() {
        // (a,b) . (b,c) = (a,c)
        assert_eq!(concatenate(&[1, 2], &[2, 3]).unwrap(), vec![1, 3]);
        assert!(concatenate(&[1, 2], &[3, 4]).is_err());
        // constant cubes concatenate to themselves
        let c = vec![7usize; 4];
        assert_eq!(concatenate(&c, &c).unwrap(), c);
    }

    #[test]
    fn concatenation_of_linear_squares_stays_linear() {
        use crate::cubes::abelian::{linear_cube_membership, linear_cube_sample};
        use crate::group::FiniteAbelianGroup;
        use crate::SeedStream;
        let g = FiniteAbelianGroup::cyclic(5).unwrap();
        let mut rng = SeedStream::new(2).rng();
        let mut found = 0;
        while found < 20 {
            let f1 = linear_cube_sample(&g, 2, &mut rng);
            let f2 = linear_cube_sample(&g, 2, &mut rng);
            if !adjacent(&f1, &f2) {
                continue;
            }
            found += 1;
            let f3 = concatenate(&f1, &f2).unwrap();
            assert!(linear_cube_membership(&g, 2, &f3).unwrap(), "{f1:?} . {f2:?}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let mut cubes = BTreeMap::new();
        cubes.insert(1u32, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        cubes.insert(2u32, vec![vec![0, 1, 1, 0], vec![0, 0, 0, 0]]);
        let space = Cubespace::new(2, cubes).unwrap();
        let text = serde_json::to_string(&space).unwrap();
        assert!(text.contains("\"points\":2"));
        assert!(text.contains("\"1\":"));
        let back: Cubespace = serde_json::from_str(&text).unwrap();
        assert_eq!(back.point_count(), 2);
        assert!(back.contains(2, &[0, 1, 1, 0]));
    }

    #[test]
    fn invalid_tuples_rejected() {
        let mut cubes = BTreeMap::new();
        cubes.insert(1u32, vec![vec![0, 2]]);
        assert!(Cubespace::new(2, cubes).is_err());
        let mut cubes = BTreeMap::new();
        cubes.insert(2u32, vec![vec![0, 1, 1]]);
        assert!(Cubespace::new(2, cubes).is_err());
    }
}
