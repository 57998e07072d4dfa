//! Cube structures on finite abelian groups: the linear structure, the
//! degree-k structures `D_k(A)`, the face-vector groups `Z_{n,k}(A)` with
//! their signed-face generators, and the duality between the two.
//!
//! Cubes are stored as vertex-indexed tables of element indices, in
//! lexicographic `{0,1}^n` order.  `f ∈ C^n(D_k(A))` iff
//! `Σ_v f(φ(v)) (−1)^{h(v)} = 0` for every cube morphism
//! `φ: {0,1}^{k+1} → {0,1}^n`, and `m ∈ Z_{n,k}(A)` iff `Σ_{v∈F} m(v) = 0`
//! for every `(n−k)`-dimensional face `F` (vertex faces when `k ≥ n`).

use super::morphism::{enumerate_cube_morphisms, vertex_weight, CubeMorphism};
use super::space::Cubespace;
use crate::group::FiniteAbelianGroup;
use crate::{Error, Result};
use rand::Rng;
use std::collections::{BTreeMap, HashSet};

/// Cap for `|A|^{2^n}` enumerations of all vertex maps.
const MAP_ENUM_CAP: u128 = 2_000_000;

/// Which cube structure a group carries.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StructureKind {
    Linear,
    Degree(u32),
}

/// A finite abelian group together with one of its cube structures.
#[derive(Clone, Debug)]
pub struct AbelianCubeStructure {
    group: FiniteAbelianGroup,
    kind: StructureKind,
}

impl AbelianCubeStructure {
    pub fn linear(group: &FiniteAbelianGroup) -> Self {
        Self {
            group: group.clone(),
            kind: StructureKind::Linear,
        }
    }

    pub fn degree(group: &FiniteAbelianGroup, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadParameter("degree structures need k ≥ 1".into()));
        }
        Ok(Self {
            group: group.clone(),
            kind: StructureKind::Degree(k),
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn membership(&self, n: u32, map: &[usize]) -> Result<bool> {
        match self.kind {
            StructureKind::Linear => Ok(linear_cube_membership(&self.group, n, map)?),
            StructureKind::Degree(k) => degree_k_membership(&self.group, k, n, map),
        }
    }

    /// The full cube list at dimension `n`.
    ///
    /// Linear cubes are generated from their `(x, t_1..t_n)` parameters
    /// (exactly `|A|^{n+1}` of them); degree-k cubes are found by filtering
    /// all `|A|^{2^n}` vertex maps through the alternating-sum test.
    pub fn cubes(&self, n: u32) -> Result<Vec<Vec<usize>>> {
        match self.kind {
            StructureKind::Linear => Ok(linear_cubes(&self.group, n)),
            StructureKind::Degree(k) => {
                let verts = 1usize << n;
                let total = (self.group.order() as u128).pow(verts as u32);
                if total > MAP_ENUM_CAP {
                    return Err(Error::CapExceeded {
                        what: "degree-k cube enumeration",
                        size: total,
                        cap: MAP_ENUM_CAP,
                    });
                }
                let morphisms = enumerate_cube_morphisms(k + 1, n)?;
                let mut out = Vec::new();
                let mut map = vec![0usize; verts];
                loop {
                    if degree_membership_with(&self.group, &morphisms, &map) {
                        out.push(map.clone());
                    }
                    if !advance(&mut map, self.group.order()) {
                        return Ok(out);
                    }
                }
            }
        }
    }

    /// Materializes the structure as an explicit [`Cubespace`] up to `n_max`.
    pub fn to_cubespace(&self, n_max: u32) -> Result<Cubespace> {
        let mut cubes = BTreeMap::new();
        for n in 1..=n_max {
            cubes.insert(n, self.cubes(n)?);
        }
        Cubespace::new(self.group.order(), cubes)
    }
}

fn advance(map: &mut [usize], base: usize) -> bool {
    for slot in (0..map.len()).rev() {
        map[slot] += 1;
        if map[slot] < base {
            return true;
        }
        map[slot] = 0;
    }
    false
}

/// Linear membership: `f(v) = f(0) + Σ v_i (f(e_i) − f(0))` at every vertex.
pub fn linear_cube_membership(group: &FiniteAbelianGroup, n: u32, map: &[usize]) -> Result<bool> {
    if map.len() != 1usize << n {
        return Err(Error::DimensionMismatch {
            expected: 1usize << n,
            got: map.len(),
        });
    }
    let base = group.element(map[0]);
    let diffs: Vec<_> = (0..n)
        .map(|i| {
            let ei = 1usize << (n - 1 - i);
            group.sub(&group.element(map[ei]), &base)
        })
        .collect();
    for (v, &val) in map.iter().enumerate() {
        let mut expect = base.clone();
        for (i, diff) in diffs.iter().enumerate() {
            if (v >> (n - 1 - i as u32)) & 1 == 1 {
                expect = group.add(&expect, diff);
            }
        }
        if group.index_of(&expect) != val {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Uniform linear cube `f(v) = x + Σ v_i t_i` with `x, t_i` Haar.
pub fn linear_cube_sample(group: &FiniteAbelianGroup, n: u32, rng: &mut impl Rng) -> Vec<usize> {
    let x = group.random_index(rng);
    let ts: Vec<usize> = (0..n).map(|_| group.random_index(rng)).collect();
    (0..1usize << n)
        .map(|v| {
            let mut idx = x;
            for (i, &t) in ts.iter().enumerate() {
                if (v >> (n - 1 - i as u32)) & 1 == 1 {
                    idx = group.add_index(idx, t);
                }
            }
            idx
        })
        .collect()
}

fn linear_cubes(group: &FiniteAbelianGroup, n: u32) -> Vec<Vec<usize>> {
    let order = group.order();
    let mut out = Vec::with_capacity(order.pow(n + 1));
    let mut params = vec![0usize; n as usize + 1];
    loop {
        let cube: Vec<usize> = (0..1usize << n)
            .map(|v| {
                let mut idx = params[0];
                for i in 0..n {
                    if (v >> (n - 1 - i)) & 1 == 1 {
                        idx = group.add_index(idx, params[i as usize + 1]);
                    }
                }
                idx
            })
            .collect();
        out.push(cube);
        if !advance(&mut params, order) {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Degree-k membership: the alternating sum vanishes along every morphism
/// `{0,1}^{k+1} → {0,1}^n`.
pub fn degree_k_membership(
    group: &FiniteAbelianGroup,
    k: u32,
    n: u32,
    map: &[usize],
) -> Result<bool> {
    if map.len() != 1usize << n {
        return Err(Error::DimensionMismatch {
            expected: 1usize << n,
            got: map.len(),
        });
    }
    let morphisms = enumerate_cube_morphisms(k + 1, n)?;
    Ok(degree_membership_with(group, &morphisms, map))
}

/// Same test with the morphism list precomputed by the caller.
pub fn degree_membership_with(
    group: &FiniteAbelianGroup,
    morphisms: &[CubeMorphism],
    map: &[usize],
) -> bool {
    for phi in morphisms {
        let verts = 1usize << phi.source_dim();
        let mut pos = 0usize;
        let mut neg = 0usize;
        for v in 0..verts {
            let img = map[phi.apply_index(v)];
            if vertex_weight(v) % 2 == 0 {
                pos = group.add_index(pos, img);
            } else {
                neg = group.add_index(neg, img);
            }
        }
        if pos != neg {
            return false;
        }
    }
    true
}

/// All faces of `{0,1}^n` of dimension `d`, as vertex-index lists.  A face
/// fixes `n−d` coordinates and frees the rest.
pub fn faces(n: u32, d: u32) -> Vec<Vec<usize>> {
    assert!(d <= n);
    let mut out = Vec::new();
    // choose which coordinates are free
    for free_mask in 0usize..(1 << n) {
        if free_mask.count_ones() != d {
            continue;
        }
        let fixed: Vec<u32> = (0..n).filter(|i| (free_mask >> (n - 1 - i)) & 1 == 0).collect();
        // all assignments to the fixed coordinates
        for assign in 0usize..(1 << fixed.len()) {
            let mut vertices = Vec::with_capacity(1 << d);
            for v in 0usize..(1 << n) {
                let mut ok = true;
                for (slot, &coord) in fixed.iter().enumerate() {
                    let want = (assign >> (fixed.len() - 1 - slot)) & 1;
                    if (v >> (n - 1 - coord)) & 1 != want {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    vertices.push(v);
                }
            }
            out.push(vertices);
        }
    }
    out.sort();
    out
}

fn face_sum_zero(group: &FiniteAbelianGroup, map: &[usize], face: &[usize]) -> bool {
    let mut acc = group.zero();
    for &v in face {
        acc = group.add(&acc, &group.element(map[v]));
    }
    acc == group.zero()
}

/// Brute-force `Z_{n,k}(A)`: all maps `{0,1}^n → A` whose sum vanishes on
/// every `(n−k)`-dimensional face (vertex faces when `k ≥ n`).
pub fn z_nk_brute(group: &FiniteAbelianGroup, n: u32, k: u32) -> Result<Vec<Vec<usize>>> {
    let verts = 1usize << n;
    let total = (group.order() as u128).pow(verts as u32);
    if total > MAP_ENUM_CAP {
        return Err(Error::CapExceeded {
            what: "Z_{n,k} enumeration",
            size: total,
            cap: MAP_ENUM_CAP,
        });
    }
    let d = n.saturating_sub(k);
    let face_list = faces(n, d);
    let mut out = Vec::new();
    let mut map = vec![0usize; verts];
    loop {
        if face_list.iter().all(|f| face_sum_zero(group, &map, f)) {
            out.push(map.clone());
        }
        if !advance(&mut map, group.order()) {
            return Ok(out);
        }
    }
}

/// Brute-force `Z*_{n,k}(A)`: maps on `K_n = {0,1}^n \ {0^n}` with zero sum
/// on every `(n−k)`-dimensional face contained in `K_n`.  Maps are tables
/// over vertex indices `1..2^n`.
pub fn z_nk_star_brute(group: &FiniteAbelianGroup, n: u32, k: u32) -> Result<Vec<Vec<usize>>> {
    let verts = (1usize << n) - 1;
    let total = (group.order() as u128).pow(verts as u32);
    if total > MAP_ENUM_CAP {
        return Err(Error::CapExceeded {
            what: "Z*_{n,k} enumeration",
            size: total,
            cap: MAP_ENUM_CAP,
        });
    }
    let d = n.saturating_sub(k);
    let face_list: Vec<Vec<usize>> = faces(n, d)
        .into_iter()
        .filter(|f| !f.contains(&0))
        .collect();
    let mut out = Vec::new();
    let mut map = vec![0usize; verts];
    loop {
        let padded = |v: usize| map[v - 1];
        if face_list
            .iter()
            .all(|f| {
                let mut acc = group.zero();
                for &v in f {
                    acc = group.add(&acc, &group.element(padded(v)));
                }
                acc == group.zero()
            })
        {
            out.push(map.clone());
        }
        if !advance(&mut map, group.order()) {
            return Ok(out);
        }
    }
}

/// The signed-face generators `g_{F,a}` of `Z_{n,k}(A)`: `F` runs over the
/// `(k+1)`-dimensional faces, `a` over the group, and
/// `g_{F,a}(v) = a(−1)^{h(v)}` on `F`, zero elsewhere.
pub fn z_nk_generators(group: &FiniteAbelianGroup, n: u32, k: u32) -> Vec<Vec<usize>> {
    if k + 1 > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for face in faces(n, k + 1) {
        for a in 0..group.order() {
            let elem = group.element(a);
            let neg = group.neg(&elem);
            let mut map = vec![0usize; 1 << n];
            for &v in &face {
                let val = if vertex_weight(v) % 2 == 0 { &elem } else { &neg };
                map[v] = group.index_of(val);
            }
            out.push(map);
        }
    }
    out
}

/// Report of the generator-span comparison for `Z_{n,k}(A)`.
#[derive(Clone, Debug)]
pub struct ZnkReport {
    pub brute_count: usize,
    pub span_count: usize,
    pub span_equals_brute: bool,
    pub forgetting_surjective: bool,
}

/// Computes `Z_{n,k}(A)` by brute force, the span of the `g_{F,a}`, the
/// equality verdict, and surjectivity of the forgetting map onto
/// `Z*_{n,k}(A)`.
pub fn z_nk_span_check(group: &FiniteAbelianGroup, n: u32, k: u32) -> Result<ZnkReport> {
    let brute = z_nk_brute(group, n, k)?;
    let brute_set: HashSet<Vec<usize>> = brute.iter().cloned().collect();

    // closure of the generator set under addition (finite, so inverses come
    // for free from element orders)
    let generators = z_nk_generators(group, n, k);
    let zero = vec![0usize; 1 << n];
    let mut span: HashSet<Vec<usize>> = HashSet::new();
    span.insert(zero.clone());
    let mut queue = vec![zero];
    while let Some(current) = queue.pop() {
        for g in &generators {
            let sum: Vec<usize> = current
                .iter()
                .zip(g)
                .map(|(&a, &b)| group.add_index(a, b))
                .collect();
            if span.insert(sum.clone()) {
                queue.push(sum);
            }
        }
    }

    let star = z_nk_star_brute(group, n, k)?;
    let star_set: HashSet<Vec<usize>> = star.iter().cloned().collect();
    let image: HashSet<Vec<usize>> = brute.iter().map(|m| m[1..].to_vec()).collect();

    Ok(ZnkReport {
        brute_count: brute.len(),
        span_count: span.len(),
        span_equals_brute: span == brute_set,
        forgetting_surjective: image == star_set,
    })
}

/// Duality: `f ∈ C^n(D_k(A))` iff `Σ_v ⟨m(v), f(v)⟩ = 0` in `Q/Z` for every
/// `m ∈ Z_{n,k}(Â)` under the standard pairing
/// `⟨a, b⟩ = Σ_i a_i b_i / m_i`.  Verified by double enumeration.
pub fn duality_check(group: &FiniteAbelianGroup, n: u32, k: u32) -> Result<bool> {
    let verts = 1usize << n;
    let total = (group.order() as u128).pow(verts as u32);
    if total > MAP_ENUM_CAP {
        return Err(Error::CapExceeded {
            what: "duality enumeration",
            size: total,
            cap: MAP_ENUM_CAP,
        });
    }
    let znk = z_nk_brute(group, n, k)?;
    let morphisms = enumerate_cube_morphisms(k + 1, n)?;
    // pairing in units of 1/L, L = lcm of the factors; element coordinates
    // are flattened into one table up front
    let lcm = group
        .factors()
        .iter()
        .fold(1u64, |acc, &m| num_integer::lcm(acc, m as u64));
    let weights: Vec<u64> = group.factors().iter().map(|&m| lcm / m as u64).collect();
    let rank = group.rank();
    let coords: Vec<u32> = (0..group.order())
        .flat_map(|i| group.element(i).coords().to_vec())
        .collect();
    let pair = |a: usize, b: usize| -> u64 {
        let mut acc = 0u64;
        for slot in 0..rank {
            let ca = coords[a * rank + slot] as u64;
            let cb = coords[b * rank + slot] as u64;
            let m = group.factors()[slot] as u64;
            acc = (acc + (ca * cb) % m * weights[slot]) % lcm;
        }
        acc
    };

    let mut map = vec![0usize; verts];
    loop {
        let member = degree_membership_with(group, &morphisms, &map);
        let annihilated = znk.iter().all(|m| {
            let mut acc = 0u64;
            for v in 0..verts {
                acc = (acc + pair(m[v], map[v])) % lcm;
            }
            acc == 0
        });
        if member != annihilated {
            return Ok(false);
        }
        if !advance(&mut map, group.order()) {
            return Ok(true);
        }
    }
}

/// `Σ_{i=0}^{min(n,k)} C(n,i)` — the exponent in
/// `|C^n(D_k(A))| = |A|^{…}`.
pub fn degree_count_exponent(n: u32, k: u32) -> u32 {
    (0..=n.min(k)).map(|i| binomial(n, i)).sum()
}

fn binomial(n: u32, k: u32) -> u32 {
    let mut acc = 1u64;
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc as u32
}
