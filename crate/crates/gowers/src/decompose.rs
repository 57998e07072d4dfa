//! Constructive `U_2` regularity decomposition and inverse certificate.
//!
//! Splitting the spectrum at a threshold `δ` gives `f = f_s + f_e + f_r`
//! with `f_s` the large-coefficient projection, `f_e ≡ 0` in this
//! constructive instance, and `‖f_r‖_{U_2}⁴ = Σ_{|λ|<δ} |λ|⁴ ≤ δ²‖f‖₂²`.
//! The structured part is a 1-step "polynomial": the composition of the
//! morphism `φ: A → T^d` given by the selected characters with the
//! trigonometric polynomial `g(θ) = Σ λ_j e(θ_j)`; its complexity is
//! `max(d, ⌈Σ|λ_j|⌉)`, and the balance of `φ` is measured by pushing
//! uniform linear cubes of `A` through `φ` and comparing against uniform
//! cubes of the torus power with low-frequency character tests.
//!
//! Whenever `‖f‖_{U_2} ≥ ε` the largest coefficient satisfies
//! `|λ| ≥ ‖f‖_{U_2}² ≥ ε²` (since `U_2⁴ = Σ|λ|⁴ ≤ max|λ|² Σ|λ|²` and
//! `Σ|λ|² ≤ 1` for `|f| ≤ 1`), which is the inverse certificate.

use crate::group::{
    fourier_transform_fast, unit_disc_check, Character, FiniteAbelianGroup, GroupFunction,
};
use crate::norms::u2_via_fourier;
use crate::numeric::{e, pairwise_sum_f64};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// The structured-part certificate: `f_s = g ∘ φ` with `φ` the character
/// morphism into `T^d` and `g` a trigonometric polynomial.
#[derive(Clone, Debug)]
pub struct Certificate {
    characters: Vec<Character>,
    g_coeffs: Vec<Complex64>,
    complexity: usize,
    balance: f64,
    threshold: f64,
}

impl Certificate {
    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn g_coeffs(&self) -> &[Complex64] {
        &self.g_coeffs
    }

    pub fn dimension(&self) -> usize {
        self.characters.len()
    }

    pub fn complexity(&self) -> usize {
        self.complexity
    }

    pub fn balance(&self) -> f64 {
        self.balance
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Re-evaluates `g(φ(x))`: maps `x` through every character to its
    /// torus angle, then applies the trigonometric polynomial.
    pub fn eval(&self, group: &FiniteAbelianGroup, index: usize) -> Complex64 {
        let x = group.element(index);
        let mut acc = Complex64::new(0.0, 0.0);
        for (chi, coeff) in self.characters.iter().zip(&self.g_coeffs) {
            let angle = chi.phase(&x);
            acc += coeff * e(angle);
        }
        acc
    }

    /// The certificate rebuilt as a dense function; must reproduce `f_s`.
    pub fn to_function(&self, group: &FiniteAbelianGroup) -> GroupFunction {
        GroupFunction::from_fn(group, |x| {
            let idx = group.index_of(x);
            self.eval(group, idx)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "characters": self.characters.iter().map(|c| c.freq().to_vec()).collect::<Vec<_>>(),
            "g_coeffs": self.g_coeffs.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
            "complexity": self.complexity,
            "balance": self.balance,
        })
    }
}

/// Numerical side conditions of a decomposition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Diagnostics {
    pub l1_error_part: f64,
    pub u2_residual: f64,
    pub residual_budget: f64,
    pub correlation_residual_structured: [f64; 2],
    pub u2_shift: f64,
    pub additivity_defect: f64,
}

/// The three-part decomposition with its certificate and diagnostics.
#[derive(Debug)]
pub struct DecompositionResult {
    pub structured: GroupFunction,
    pub error: GroupFunction,
    pub residual: GroupFunction,
    pub certificate: Certificate,
    pub diagnostics: Diagnostics,
}

/// The default tolerance schedule `F(ε, m) = ε / (m + 1)`.
pub fn default_schedule(eps: f64, m: usize) -> f64 {
    eps / (m as f64 + 1.0)
}

/// Fourier-threshold decomposition at level `U_2`.
///
/// Walks the threshold grid `δ = 2^{-j}` downward (ties toward larger `δ`,
/// hence fewer characters) until `‖f_r‖_{U_2} ≤ F(ε, m)` for the resulting
/// complexity `m`; always terminates on a finite group because `f_r = 0`
/// once `δ` drops below the smallest nonzero coefficient.
pub fn u2_decompose(
    f: &GroupFunction,
    eps: f64,
    schedule: &dyn Fn(f64, usize) -> f64,
) -> Result<DecompositionResult> {
    if !(eps > 0.0) {
        return Err(Error::BadParameter(format!("need ε > 0, got {eps}")));
    }
    unit_disc_check(f)?;
    let group = f.group();
    let spectrum = fourier_transform_fast(f);
    let coeffs = spectrum.coeffs();

    let mut chosen: Option<(f64, Vec<usize>)> = None;
    for j in 0..=64u32 {
        let delta = 0.5f64.powi(j as i32);
        let selected: Vec<usize> = (0..coeffs.len())
            .filter(|&i| coeffs[i].norm() >= delta)
            .collect();
        let m = complexity_of(coeffs, &selected);
        let residual_pow4: Vec<f64> = (0..coeffs.len())
            .filter(|i| !selected.contains(i))
            .map(|i| coeffs[i].norm_sqr().powi(2))
            .collect();
        let u2_r = pairwise_sum_f64(&residual_pow4).max(0.0).powf(0.25);
        if u2_r <= schedule(eps, m) {
            chosen = Some((delta, selected));
            break;
        }
    }
    let (delta, selected) =
        chosen.ok_or_else(|| Error::BadParameter("threshold grid exhausted".into()))?;

    // Parseval bounds the character count: d ≤ ‖f‖₂²/δ² ≤ 1/δ²
    debug_assert!((selected.len() as f64) * delta * delta <= 1.0 + 1e-9);

    let characters: Vec<Character> = selected.iter().map(|&i| group.character(i)).collect();
    let g_coeffs: Vec<Complex64> = selected.iter().map(|&i| coeffs[i]).collect();
    let structured = {
        let mut values = vec![Complex64::new(0.0, 0.0); group.order()];
        for (chi, coeff) in characters.iter().zip(&g_coeffs) {
            for (x, value) in values.iter_mut().enumerate() {
                *value += coeff * chi.eval_index(x);
            }
        }
        GroupFunction::from_values(group, values)?
    };
    let error = GroupFunction::constant(group, Complex64::new(0.0, 0.0));
    let residual = f.sub(&structured)?;

    let m = complexity_of(coeffs, &selected);
    let balance = balance_report(&characters, 3).unwrap_or(1.0);
    let certificate = Certificate {
        characters,
        g_coeffs,
        complexity: m,
        balance,
        threshold: delta,
    };

    let structured_plus_error = structured.add(&error)?;
    let corr = residual.scalar_product(&structured_plus_error)?;
    let additivity_defect = {
        let rebuilt = structured_plus_error.add(&residual)?;
        crate::group::max_deviation(f, &rebuilt)?
    };
    let diagnostics = Diagnostics {
        l1_error_part: error.lp_norm(1.0)?,
        u2_residual: u2_via_fourier(&residual),
        residual_budget: schedule(eps, m),
        correlation_residual_structured: [corr.re, corr.im],
        u2_shift: (u2_via_fourier(&structured_plus_error) - u2_via_fourier(f)).abs(),
        additivity_defect,
    };

    Ok(DecompositionResult {
        structured,
        error,
        residual,
        certificate,
        diagnostics,
    })
}

fn complexity_of(coeffs: &[Complex64], selected: &[usize]) -> usize {
    let d = selected.len();
    let coeff_sum: f64 = selected.iter().map(|&i| coeffs[i].norm()).sum();
    d.max(coeff_sum.ceil() as usize)
}

/// Inverse certificate: if `‖f‖_{U_2} ≥ ε`, the argmax character correlates
/// with `|(f, χ)| ≥ ε²`; otherwise an explicit refusal carrying the
/// measured norm.
pub fn u2_inverse_certificate(f: &GroupFunction, eps: f64) -> Result<(Character, Complex64)> {
    if !(eps > 0.0) {
        return Err(Error::BadParameter(format!("need ε > 0, got {eps}")));
    }
    unit_disc_check(f)?;
    let norm = u2_via_fourier(f);
    if norm < eps {
        return Err(Error::NormBelowThreshold {
            measured: norm,
            required: eps,
        });
    }
    let spectrum = fourier_transform_fast(f);
    let (best, _) = spectrum
        .coeffs()
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| {
            a.norm()
                .partial_cmp(&b.norm())
                .unwrap()
                .then(j.cmp(i)) // ties toward the smaller character index
        })
        .expect("spectrum is nonempty");
    let chi = f.group().character(best);
    let corr = f.scalar_product(&chi.as_function())?;
    debug_assert!(corr.norm() + 1e-12 >= norm * norm);
    Ok((chi, corr))
}

/// Balance grid: powers of two.
fn balance_grid(n_max: u32) -> Vec<f64> {
    (0..=n_max.ilog2() + 1)
        .map(|j| 0.5f64.powi(j as i32))
        .filter(|b| 1.0 / b <= n_max as f64 + 1e-9)
        .collect()
}

/// Measures the balance of the character morphism `φ = (χ_1..χ_d)`.
///
/// For each `n ≤ n_max` the uniform linear cube distribution of `A` is
/// pushed through `φ` coordinate-wise and compared with the uniform cube
/// distribution on `(T^d)` against vertex-product characters with
/// frequency cap 4 per coordinate.  Both expectations are exact 0/1
/// character sums, so the discrepancy at dimension `n` is 1 exactly when
/// some frequency assignment is annihilated by `A` but not by the torus;
/// witnesses are searched one test direction (slot) at a time.  The
/// returned `b` is the smallest grid value `2^{-j}` with discrepancy 0 for
/// all `n ≤ 1/b`; `b = 1` means no balance beyond the trivial bound.
pub fn balance_report(characters: &[Character], n_max: u32) -> Result<f64> {
    if characters.is_empty() {
        return Err(Error::BadParameter("need at least one character".into()));
    }
    let group = characters[0].group().clone();
    for chi in characters {
        group.check_same(chi.group())?;
    }
    let mut disc = Vec::with_capacity(n_max as usize + 1);
    for n in 1..=n_max {
        disc.push(discrepancy(&group, characters, n)?);
    }
    let mut best = 1.0;
    for b in balance_grid(n_max) {
        let horizon = (1.0 / b).floor() as u32;
        let ok = (1..=horizon.min(n_max)).all(|n| !disc[(n - 1) as usize]);
        if ok && b < best {
            best = b;
        }
    }
    Ok(best)
}

const FREQ_CAP: i64 = 4;

/// Is there a vertex-weight assignment with cap-4 entries whose slot sums
/// (the `x` total and the `t_i` half sums) are all annihilated by `A`
/// through the characters but are not all zero as integers?
///
/// Witnesses are searched one slot at a time.  For a single `t_i` slot the
/// achievable totals with every other slot vanishing are exactly the
/// interval `[−4·2^{n−1}, 4·2^{n−1}]`: the assignment `w(1, rest) = u(rest)`,
/// `w(0, rest) = −u(rest)` realizes any `Σu` in that range, and the half
/// size caps it.  A single-`x`-slot witness is always dominated by one of
/// these: with all half sums zero the total equals the sum over `{v_1 = 0}`,
/// so it lies in the same interval.  The search therefore scans one
/// interval per coordinate.
fn discrepancy(group: &FiniteAbelianGroup, characters: &[Character], n: u32) -> Result<bool> {
    let d = characters.len();
    let cap = FREQ_CAP << (n - 1);
    let feasible: Vec<i64> = (-cap..=cap).collect();
    nonzero_annihilated_combo(group, characters, &feasible, d)
}

/// Is there a nonzero vector `s ∈ feasible^d` with `Π_j χ_j^{s_j}` trivial
/// on the group?  Direct scan for `d ≤ 2`, meet-in-the-middle beyond.
fn nonzero_annihilated_combo(
    group: &FiniteAbelianGroup,
    characters: &[Character],
    feasible: &[i64],
    d: usize,
) -> Result<bool> {
    let combined_freq = |s: &[i64]| -> Vec<u32> {
        let mut freq = vec![0i64; group.rank()];
        for (chi, &sj) in characters.iter().zip(s) {
            for (slot, &c) in chi.freq().iter().enumerate() {
                freq[slot] += sj * c as i64;
            }
        }
        freq.iter()
            .zip(group.factors())
            .map(|(&f, &m)| f.rem_euclid(m as i64) as u32)
            .collect()
    };
    let trivial = |s: &[i64]| combined_freq(s).iter().all(|&c| c == 0);

    if d <= 2 {
        let mut s = vec![0usize; d];
        loop {
            let vec: Vec<i64> = s.iter().map(|&i| feasible[i]).collect();
            if vec.iter().any(|&x| x != 0) && trivial(&vec) {
                return Ok(true);
            }
            let mut pos = 0;
            loop {
                if pos == d {
                    return Ok(false);
                }
                s[pos] += 1;
                if s[pos] < feasible.len() {
                    break;
                }
                s[pos] = 0;
                pos += 1;
            }
        }
    }

    // meet in the middle over a split of the coordinates
    let half = d / 2;
    if (feasible.len() as u128).pow(half.max(d - half) as u32) > 20_000_000 {
        return Err(Error::CapExceeded {
            what: "balance relation search",
            size: (feasible.len() as u128).pow(half.max(d - half) as u32),
            cap: 20_000_000,
        });
    }
    use std::collections::HashMap;
    let mut table: HashMap<Vec<u32>, bool> = HashMap::new(); // residue -> has nonzero rep
    let enumerate = |count: usize, offset: usize, sink: &mut dyn FnMut(&[i64])| {
        let mut s = vec![0usize; count];
        loop {
            let vec: Vec<i64> = {
                let mut full = vec![0i64; d];
                for (slot, &i) in s.iter().enumerate() {
                    full[offset + slot] = feasible[i];
                }
                full
            };
            sink(&vec);
            let mut pos = 0;
            loop {
                if pos == count {
                    return;
                }
                s[pos] += 1;
                if s[pos] < feasible.len() {
                    break;
                }
                s[pos] = 0;
                pos += 1;
            }
        }
    };
    enumerate(half, 0, &mut |vec| {
        let key = combined_freq(vec);
        let nonzero = vec.iter().any(|&x| x != 0);
        table.entry(key).and_modify(|e| *e |= nonzero).or_insert(nonzero);
    });
    let mut found = false;
    enumerate(d - half, half, &mut |vec| {
        if found {
            return;
        }
        let key = combined_freq(vec);
        // need total residue zero: the first-half residue must be the
        // negation of this one
        let negated: Vec<u32> = key
            .iter()
            .zip(group.factors())
            .map(|(&c, &m)| if c == 0 { 0 } else { m - c })
            .collect();
        let nonzero = vec.iter().any(|&x| x != 0);
        if let Some(&half_nonzero) = table.get(&negated) {
            if half_nonzero || nonzero {
                found = true;
            }
        }
    });
    Ok(found)
}
