//! Cocycles on cubespaces: coboundaries satisfy the sign and concatenation
//! laws, perturbations are caught with witnesses, and the edge coboundary
//! of a character depends only on the edge difference.

use gowers::cubes::{
    check_cocycle, coboundary_additive, coboundary_multiplicative, AbelianCubeStructure, Cocycle,
    CocycleData,
};
use gowers::group::FiniteAbelianGroup;
use gowers::numeric::e;
use gowers::SeedStream;
use num_complex::Complex64;
use rand::Rng;

fn main() {
    let g = FiniteAbelianGroup::cyclic(5).unwrap();
    let space = AbelianCubeStructure::linear(&g).to_cubespace(2).unwrap();
    println!("linear structure on Z_5: {} edges, {} squares",
        space.cubes(1).unwrap().len(), space.cubes(2).unwrap().len());

    // additive coboundary of a random point function
    let mut rng = SeedStream::new(3).rng();
    let point_values: Vec<usize> = (0..5).map(|_| rng.gen_range(0..5)).collect();
    let rho = coboundary_additive(&space, 2, &point_values, &g).unwrap();
    println!("additive coboundary of f = {point_values:?} on the squares: cocycle laws hold: {}",
        check_cocycle(&rho).unwrap().is_none());

    // multiplicative coboundary of a character on the edges: the value at
    // (x, x+t) is conj(χ(t)), a function of the difference only
    let chi = g.character(2);
    let vals: Vec<Complex64> = (0..5).map(|i| chi.eval_index(i)).collect();
    let rho = coboundary_multiplicative(&space, 1, &vals).unwrap();
    if let CocycleData::Multiplicative { values } = rho.data() {
        let edges = space.cubes(1).unwrap();
        for (cube, val) in edges.iter().zip(values).take(5) {
            let t = g.sub(&g.element(cube[1]), &g.element(cube[0]));
            println!(
                "  edge {:?}: ρ = {:.4}{:+.4}i, conj(χ(t)) with t = {:?}: match {}",
                cube, val.re, val.im, t.coords(),
                (val - chi.eval(&t).conj()).norm() < 1e-12
            );
        }
    }

    // unimodular coboundaries on the squares also pass
    let uni: Vec<Complex64> = (0..5).map(|_| e(rng.gen_range(0.0..1.0))).collect();
    let rho = coboundary_multiplicative(&space, 2, &uni).unwrap();
    println!("multiplicative coboundary on squares passes: {}",
        check_cocycle(&rho).unwrap().is_none());

    // a single perturbed value breaks a law, with a witness
    let count = space.cubes(2).unwrap().len();
    let mut zero = Cocycle::additive(&space, 2, &g, vec![0; count]).unwrap();
    zero.perturb(7);
    match check_cocycle(&zero).unwrap() {
        Some(witness) => println!("perturbed zero cocycle fails: {witness}"),
        None => unreachable!("the perturbation must be caught"),
    }
}
