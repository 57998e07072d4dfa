//! Cocycles on finite cubespaces and the coboundary construction.
//!
//! A cocycle of degree `k−1` is a map `ρ: C^k → G` that is sign-equivariant
//! under cube automorphisms, `ρ(σ(f)) = s(σ) ρ(f)`, and additive under
//! concatenation of adjacent cubes.  Targets are either a finite abelian
//! group written additively or the complex unit circle written
//! multiplicatively.  The coboundary of a point function `f` is
//! `ρ(c) = Σ_v (−1)^{h(v)} f(c(v))` (product form on the circle); every
//! coboundary is a cocycle, and the checker verifies both laws exhaustively
//! with lexicographically first witnesses.

use super::morphism::{cube_automorphisms, vertex_weight};
use super::space::{adjacent, concatenate, Cubespace};
use crate::group::FiniteAbelianGroup;
use crate::numeric::approx_eq_c;
use crate::{Error, Result, DEFAULT_TOL};
use num_complex::Complex64;
use std::collections::HashMap;
use std::fmt;

/// Cocycle values: one entry per cube in the list order of the base space.
#[derive(Clone, Debug)]
pub enum CocycleData {
    /// Values in a finite abelian group, written additively (element
    /// indices).
    Additive {
        target: FiniteAbelianGroup,
        values: Vec<usize>,
    },
    /// Values on the complex unit circle, written multiplicatively.
    Multiplicative { values: Vec<Complex64> },
}

/// A degree-`(dim−1)` cocycle candidate on the `dim`-cubes of a cubespace.
#[derive(Clone, Debug)]
pub struct Cocycle {
    space: Cubespace,
    dim: u32,
    data: CocycleData,
    lookup: HashMap<Vec<usize>, usize>,
}

impl Cocycle {
    pub fn additive(
        space: &Cubespace,
        dim: u32,
        target: &FiniteAbelianGroup,
        values: Vec<usize>,
    ) -> Result<Self> {
        let cubes = space
            .cubes(dim)
            .ok_or_else(|| Error::BadParameter(format!("no explicit cubes at dimension {dim}")))?;
        if values.len() != cubes.len() {
            return Err(Error::DimensionMismatch {
                expected: cubes.len(),
                got: values.len(),
            });
        }
        if let Some(&v) = values.iter().find(|&&v| v >= target.order()) {
            return Err(Error::BadParameter(format!(
                "cocycle value index {v} outside the target group"
            )));
        }
        Ok(Self {
            lookup: index_cubes(cubes),
            space: space.clone(),
            dim,
            data: CocycleData::Additive {
                target: target.clone(),
                values,
            },
        })
    }

    pub fn multiplicative(space: &Cubespace, dim: u32, values: Vec<Complex64>) -> Result<Self> {
        let cubes = space
            .cubes(dim)
            .ok_or_else(|| Error::BadParameter(format!("no explicit cubes at dimension {dim}")))?;
        if values.len() != cubes.len() {
            return Err(Error::DimensionMismatch {
                expected: cubes.len(),
                got: values.len(),
            });
        }
        for v in &values {
            if (v.norm() - 1.0).abs() > DEFAULT_TOL {
                return Err(Error::NotUnimodular(v.norm()));
            }
        }
        Ok(Self {
            lookup: index_cubes(cubes),
            space: space.clone(),
            dim,
            data: CocycleData::Multiplicative { values },
        })
    }

    pub fn space(&self) -> &Cubespace {
        &self.space
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn data(&self) -> &CocycleData {
        &self.data
    }

    /// Degree of the cocycle (`dim − 1` in the usual grading).
    pub fn degree(&self) -> u32 {
        self.dim - 1
    }

    fn slot(&self, cube: &[usize]) -> Option<usize> {
        self.lookup.get(cube).copied()
    }

    /// Perturbs a single value; used to build failing mutants in tests.
    pub fn perturb(&mut self, slot: usize) {
        match &mut self.data {
            CocycleData::Additive { target, values } => {
                values[slot] = (values[slot] + 1) % target.order();
            }
            CocycleData::Multiplicative { values } => {
                values[slot] = -values[slot];
            }
        }
    }
}

fn index_cubes(cubes: &[Vec<usize>]) -> HashMap<Vec<usize>, usize> {
    cubes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect()
}

/// A failed cocycle law with its witness.
#[derive(Clone, Debug)]
pub enum CocycleWitness {
    /// `ρ(σ(f)) ≠ s(σ) ρ(f)` (or `σ(f)` escapes the cube list).
    SignLaw {
        automorphism: String,
        cube: Vec<usize>,
        image_missing: bool,
    },
    /// `ρ(f3) ≠ ρ(f1) + ρ(f2)` (or the concatenation escapes the list).
    ConcatLaw {
        first: Vec<usize>,
        second: Vec<usize>,
        image_missing: bool,
    },
}

impl fmt::Display for CocycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleWitness::SignLaw {
                automorphism,
                cube,
                image_missing,
            } => {
                if *image_missing {
                    write!(f, "sign law: sigma {automorphism} maps cube {cube:?} outside C^k")
                } else {
                    write!(f, "sign law fails at sigma {automorphism}, cube {cube:?}")
                }
            }
            CocycleWitness::ConcatLaw {
                first,
                second,
                image_missing,
            } => {
                if *image_missing {
                    write!(f, "concatenation of {first:?} and {second:?} is outside C^k")
                } else {
                    write!(f, "concatenation law fails at {first:?} + {second:?}")
                }
            }
        }
    }
}

/// Exhaustive check of both cocycle laws; `None` means the candidate is a
/// cocycle.
pub fn check_cocycle(rho: &Cocycle) -> Result<Option<CocycleWitness>> {
    let cubes = rho
        .space
        .cubes(rho.dim)
        .ok_or_else(|| Error::BadParameter("missing cube list".into()))?;

    // Law 1: sign equivariance under every cube automorphism.
    for sigma in cube_automorphisms(rho.dim)? {
        let sign = sigma.automorphism_sign()?;
        for cube in cubes {
            let image: Vec<usize> = (0..cube.len()).map(|v| cube[sigma.apply_index(v)]).collect();
            let (Some(slot_f), slot_img) = (rho.slot(cube), rho.slot(&image)) else {
                unreachable!("cube comes from the list")
            };
            let Some(slot_img) = slot_img else {
                return Ok(Some(CocycleWitness::SignLaw {
                    automorphism: sigma.to_string(),
                    cube: cube.clone(),
                    image_missing: true,
                }));
            };
            let holds = match &rho.data {
                CocycleData::Additive { target, values } => {
                    let expect = if sign == 1 {
                        target.element(values[slot_f])
                    } else {
                        target.neg(&target.element(values[slot_f]))
                    };
                    target.element(values[slot_img]) == expect
                }
                CocycleData::Multiplicative { values } => {
                    let expect = if sign == 1 {
                        values[slot_f]
                    } else {
                        values[slot_f].conj()
                    };
                    approx_eq_c(values[slot_img], expect, DEFAULT_TOL)
                }
            };
            if !holds {
                return Ok(Some(CocycleWitness::SignLaw {
                    automorphism: sigma.to_string(),
                    cube: cube.clone(),
                    image_missing: false,
                }));
            }
        }
    }

    // Law 2: additivity under concatenation of adjacent cubes.
    for f1 in cubes {
        for f2 in cubes {
            if !adjacent(f1, f2) {
                continue;
            }
            let f3 = concatenate(f1, f2)?;
            let Some(slot3) = rho.slot(&f3) else {
                return Ok(Some(CocycleWitness::ConcatLaw {
                    first: f1.clone(),
                    second: f2.clone(),
                    image_missing: true,
                }));
            };
            let (s1, s2) = (rho.slot(f1).unwrap(), rho.slot(f2).unwrap());
            let holds = match &rho.data {
                CocycleData::Additive { target, values } => {
                    let sum = target.add(&target.element(values[s1]), &target.element(values[s2]));
                    target.element(values[slot3]) == sum
                }
                CocycleData::Multiplicative { values } => {
                    approx_eq_c(values[slot3], values[s1] * values[s2], DEFAULT_TOL)
                }
            };
            if !holds {
                return Ok(Some(CocycleWitness::ConcatLaw {
                    first: f1.clone(),
                    second: f2.clone(),
                    image_missing: false,
                }));
            }
        }
    }
    Ok(None)
}

/// Additive coboundary `(f)^⋄(c) = Σ_v (−1)^{h(v)} f(c(v))` of a point
/// function `f: points → target` (element indices).
pub fn coboundary_additive(
    space: &Cubespace,
    dim: u32,
    point_values: &[usize],
    target: &FiniteAbelianGroup,
) -> Result<Cocycle> {
    if point_values.len() != space.point_count() {
        return Err(Error::DimensionMismatch {
            expected: space.point_count(),
            got: point_values.len(),
        });
    }
    let cubes = space
        .cubes(dim)
        .ok_or_else(|| Error::BadParameter(format!("no explicit cubes at dimension {dim}")))?;
    let values: Vec<usize> = cubes
        .iter()
        .map(|cube| {
            let mut acc = target.zero();
            for (v, &p) in cube.iter().enumerate() {
                let elem = target.element(point_values[p]);
                let signed = if vertex_weight(v) % 2 == 0 {
                    elem
                } else {
                    target.neg(&elem)
                };
                acc = target.add(&acc, &signed);
            }
            target.index_of(&acc)
        })
        .collect();
    Cocycle::additive(space, dim, target, values)
}

/// Multiplicative coboundary `(f)^⋄(c) = Π_v f(c(v))^{ε(v)}` of a unimodular
/// point function.
pub fn coboundary_multiplicative(
    space: &Cubespace,
    dim: u32,
    point_values: &[Complex64],
) -> Result<Cocycle> {
    if point_values.len() != space.point_count() {
        return Err(Error::DimensionMismatch {
            expected: space.point_count(),
            got: point_values.len(),
        });
    }
    for v in point_values {
        if (v.norm() - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::NotUnimodular(v.norm()));
        }
    }
    let cubes = space
        .cubes(dim)
        .ok_or_else(|| Error::BadParameter(format!("no explicit cubes at dimension {dim}")))?;
    let values: Vec<Complex64> = cubes
        .iter()
        .map(|cube| {
            let mut acc = Complex64::new(1.0, 0.0);
            for (v, &p) in cube.iter().enumerate() {
                let val = point_values[p];
                acc *= if vertex_weight(v) % 2 == 0 { val } else { val.conj() };
            }
            acc
        })
        .collect();
    Cocycle::multiplicative(space, dim, values)
}
