//! Brute-force reference implementations.
//!
//! Everything here evaluates a definition literally, with no algebraic
//! shortcuts, and is capped at desk scale.  The fast paths elsewhere in the
//! crate are tested against these oracles; nothing here is called from a fast
//! path.

use crate::group::{GroupElement, GroupFunction};
use crate::norms::{FunctionSystem, SystemKind};
use crate::{Error, Result, DEFAULT_TOL};
use num_complex::Complex64;

/// `‖f‖_{U_k}` by the fully nested `(k+1)`-fold sum over `(x, t_1..t_k)`.
///
/// Capped at `|A| ≤ 16` and `k ≤ 3`.  The total is real and nonnegative for
/// the exact quantity; an imaginary residue beyond tolerance is reported as a
/// diagnostic error rather than silently dropped.
pub fn gowers_norm_nested(f: &GroupFunction, k: u32) -> Result<f64> {
    if k == 0 || k > 3 {
        return Err(Error::BadParameter(format!(
            "nested oracle supports 1 ≤ k ≤ 3, got {k}"
        )));
    }
    let group = f.group();
    let n = group.order();
    if n > 16 {
        return Err(Error::CapExceeded {
            what: "nested Gowers sum",
            size: n as u128,
            cap: 16,
        });
    }
    let verts = 1usize << k;
    let mut total = Complex64::new(0.0, 0.0);
    let mut ts = vec![0usize; k as usize];
    loop {
        for x in 0..n {
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
                let val = f.value_at(idx);
                prod *= if parity == 1 { val.conj() } else { val };
            }
            total += prod;
        }
        let mut pos = 0;
        loop {
            if pos == k as usize {
                let count = (n as f64).powi(k as i32 + 1);
                let mean = total / count;
                let scale = f.bound().powi(verts as i32).max(1.0);
                if mean.im.abs() > DEFAULT_TOL * scale {
                    return Err(Error::ImaginaryResidue(mean.im));
                }
                return Ok(mean.re.max(0.0).powf(0.5f64.powi(k as i32)));
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

/// Corner convolution by direct enumeration of all shift tuples, without the
/// incremental subset-sum bookkeeping of the fast path.
pub fn corner_convolution_direct(sys: &FunctionSystem, x: &GroupElement) -> Result<Complex64> {
    if sys.kind() != SystemKind::NonEmpty {
        return Err(Error::BadParameter("need a nonempty-subset system".into()));
    }
    let group = sys.group();
    let n = group.order();
    let k = sys.arity() as usize;
    let total = (n as u128).pow(k as u32);
    if total > 10_000_000 {
        return Err(Error::CapExceeded {
            what: "direct corner sum",
            size: total,
            cap: 10_000_000,
        });
    }
    let xi = group.index_of(x);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut ts = vec![0usize; k];
    loop {
        let mut prod = Complex64::new(1.0, 0.0);
        for mask in 1..(1usize << k) {
            let mut idx = xi;
            for (i, t) in ts.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    idx = group.add_index(idx, *t);
                }
            }
            let v = sys.entry(mask).value_at(idx);
            prod *= if (mask.count_ones() & 1) == 1 { v.conj() } else { v };
        }
        acc += prod;
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(acc / (n as f64).powi(k as i32));
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

/// All maps `{0,1}^n → {0,1}^m` that extend to affine homomorphisms
/// `Z^n → Z^m`, found by filtering every possible map through the affine
/// identity `f(v) = f(0) + Σ v_i (f(e_i) − f(0))`.  Maps are returned as
/// vertex-image tables (index `v ↦ index f(v)`), capped at `n, m ≤ 2`.
pub fn affine_vertex_maps(n: u32, m: u32) -> Result<Vec<Vec<usize>>> {
    if n > 2 || m > 2 {
        return Err(Error::CapExceeded {
            what: "all-maps affine filter",
            size: (n as u128).max(m as u128),
            cap: 2,
        });
    }
    let dom = 1usize << n;
    let cod = 1usize << m;
    let total = cod.pow(dom as u32);
    let mut out = Vec::new();
    'candidate: for code in 0..total {
        // decode the candidate map
        let mut table = vec![0usize; dom];
        let mut rest = code;
        for slot in table.iter_mut() {
            *slot = rest % cod;
            rest /= cod;
        }
        // coordinates of a codomain vertex, MSB-first
        let coord = |idx: usize, j: u32| -> i64 { ((idx >> (m - 1 - j)) & 1) as i64 };
        for v in 0..dom {
            for j in 0..m {
                let mut expect = coord(table[0], j);
                for i in 0..n {
                    if (v >> (n - 1 - i)) & 1 == 1 {
                        let ei = 1usize << (n - 1 - i);
                        expect += coord(table[ei], j) - coord(table[0], j);
                    }
                }
                if expect != coord(table[v], j) {
                    continue 'candidate;
                }
            }
        }
        out.push(table);
    }
    Ok(out)
}

/// Triangle density of the weighted graph `M_{x,y} = f(x+y)` by direct
/// triple counting; independent of the moment machinery.
pub fn triangle_density_by_counting(f: &GroupFunction) -> Result<Complex64> {
    let group = f.group();
    let n = group.order();
    if (n as u128).pow(3) > 10_000_000 {
        return Err(Error::CapExceeded {
            what: "triangle counting",
            size: (n as u128).pow(3),
            cap: 10_000_000,
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for x in 0..n {
        for y in 0..n {
            let fxy = f.value_at(group.add_index(x, y));
            for z in 0..n {
                let fxz = f.value_at(group.add_index(x, z));
                let fyz = f.value_at(group.add_index(y, z));
                acc += fxy * fxz * fyz;
            }
        }
    }
    Ok(acc / (n as f64).powi(3))
}

/// Edge density of the Cayley hypergraph `H_k(S)` by counting the solutions
/// of `x_1 + … + x_k ∈ S` directly.
pub fn cayley_density_by_counting(
    group: &crate::group::FiniteAbelianGroup,
    set: &[usize],
    k: u32,
) -> Result<f64> {
    let n = group.order();
    let total = (n as u128).pow(k);
    if total > 10_000_000 {
        return Err(Error::CapExceeded {
            what: "Cayley edge counting",
            size: total,
            cap: 10_000_000,
        });
    }
    let member = {
        let mut v = vec![false; n];
        for &i in set {
            v[i] = true;
        }
        v
    };
    let mut edges = 0u64;
    let mut xs = vec![0usize; k as usize];
    loop {
        let mut sum = 0usize;
        for &x in &xs {
            sum = group.add_index(sum, x);
        }
        if member[sum] {
            edges += 1;
        }
        let mut pos = 0;
        loop {
            if pos == k as usize {
                return Ok(edges as f64 / total as f64);
            }
            xs[pos] += 1;
            if xs[pos] < n {
                break;
            }
            xs[pos] = 0;
            pos += 1;
        }
    }
}
