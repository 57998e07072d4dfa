//! The three-cube `T_n = {−1,0,1}^n` and its corner embeddings.
//!
//! For every `v ∈ {0,1}^n` the injective map `Φ_v: {0,1}^n → T_n` is
//! `Φ_v(w)_j = (1 − 2v_j)(1 − w_j)`, and `ω(v) = Φ_v(0^n)` embeds the
//! abstract cube into the ±1-corners of `T_n`.  A map out of `T_n` whose
//! every `Φ_v`-restriction is a cube has `ω`-restriction a cube; the checker
//! below verifies this for the linear structures by exhaustive enumeration.

use super::abelian::linear_cube_membership;
use crate::group::FiniteAbelianGroup;
use crate::{Error, Result};

/// Points of `T_n` in lexicographic `{−1,0,1}^n` order.
pub fn tn_points(n: u32) -> Vec<Vec<i8>> {
    let count = 3usize.pow(n);
    (0..count)
        .map(|idx| {
            let mut coords = vec![0i8; n as usize];
            let mut rest = idx;
            for slot in (0..n as usize).rev() {
                coords[slot] = (rest % 3) as i8 - 1;
                rest /= 3;
            }
            coords
        })
        .collect()
}

/// Index of a `T_n` point in the [`tn_points`] order.
pub fn tn_index(coords: &[i8]) -> usize {
    coords
        .iter()
        .fold(0usize, |acc, &c| acc * 3 + (c + 1) as usize)
}

/// The embedding `Φ_v` as a table: entry `w` (vertex index) is the `T_n`
/// index of `Φ_v(w)`.
pub fn phi_v(n: u32, v: usize) -> Vec<usize> {
    (0..1usize << n)
        .map(|w| {
            let coords: Vec<i8> = (0..n)
                .map(|j| {
                    let vj = ((v >> (n - 1 - j)) & 1) as i8;
                    let wj = ((w >> (n - 1 - j)) & 1) as i8;
                    (1 - 2 * vj) * (1 - wj)
                })
                .collect();
            tn_index(&coords)
        })
        .collect()
}

/// `ω(v) = Φ_v(0^n)`.
pub fn omega(n: u32, v: usize) -> usize {
    phi_v(n, v)[0]
}

/// Checks, for the linear structure on `group`, that every map
/// `t: T_n → A` whose `Φ_v`-restrictions are all linear cubes has `ω∘t`
/// a linear cube.  Returns the number of such morphisms checked.
pub fn omega_closure_check(group: &FiniteAbelianGroup, n: u32) -> Result<usize> {
    let tn = 3usize.pow(n);
    let total = (group.order() as u128).pow(tn as u32);
    if total > 2_000_000 {
        return Err(Error::CapExceeded {
            what: "T_n map enumeration",
            size: total,
            cap: 2_000_000,
        });
    }
    let embeddings: Vec<Vec<usize>> = (0..1usize << n).map(|v| phi_v(n, v)).collect();
    let omega_table: Vec<usize> = (0..1usize << n).map(|v| omega(n, v)).collect();
    let mut map = vec![0usize; tn];
    let mut homs = 0usize;
    loop {
        let all_restrictions_linear = embeddings.iter().all(|phi| {
            let restriction: Vec<usize> = phi.iter().map(|&p| map[p]).collect();
            linear_cube_membership(group, n, &restriction).unwrap_or(false)
        });
        if all_restrictions_linear {
            homs += 1;
            let through_omega: Vec<usize> = omega_table.iter().map(|&p| map[p]).collect();
            if !linear_cube_membership(group, n, &through_omega)? {
                return Err(Error::BadParameter(format!(
                    "ω-composition escaped the cube set at map {map:?}"
                )));
            }
        }
        let mut pos = tn;
        loop {
            if pos == 0 {
                return Ok(homs);
            }
            pos -= 1;
            map[pos] += 1;
            if map[pos] < group.order() {
                break;
            }
            map[pos] = 0;
            if pos == 0 {
                return Ok(homs);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn one_dimensional_embeddings_match_the_formula() {
        // v = 0: Φ_0(w) = 1 − w maps (0,1) → (1,0)
        let phi0 = phi_v(1, 0);
        assert_eq!(phi0, vec![tn_index(&[1]), tn_index(&[0])]);
        // v = 1: Φ_1(w) = −(1 − w) maps (0,1) → (−1,0)
        let phi1 = phi_v(1, 1);
        assert_eq!(phi1, vec![tn_index(&[-1]), tn_index(&[0])]);
    }

    #[test]
    fn omega_sends_zero_to_all_ones() {
        for n in 1..=3u32 {
            let corner = tn_index(&vec![1i8; n as usize]);
            assert_eq!(omega(n, 0), corner);
        }
    }

    #[test]
    fn embeddings_are_injective() {
        for n in 1..=3u32 {
            for v in 0..1usize << n {
                let table = phi_v(n, v);
                let distinct: HashSet<usize> = table.iter().copied().collect();
                assert_eq!(distinct.len(), table.len());
            }
        }
    }

    #[test]
    fn omega_closure_on_small_linear_structures() {
        for m in [2u32, 3] {
            let g = FiniteAbelianGroup::cyclic(m).unwrap();
            assert!(omega_closure_check(&g, 1).unwrap() > 0);
        }
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        assert!(omega_closure_check(&g, 2).unwrap() > 0);
    }

    #[test]
    fn index_roundtrip() {
        for (i, p) in tn_points(3).iter().enumerate() {
            assert_eq!(tn_index(p), i);
        }
    }
}
