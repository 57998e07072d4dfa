//! Symbolic cube morphisms: enumeration, composition closure, automorphism
//! signs, and the brute-force affine-extension oracle.

use gowers::brute::affine_vertex_maps;
use gowers::cubes::{cube_automorphisms, enumerate_cube_morphisms, CubeMorphism};
use std::collections::HashSet;

fn main() {
    for (n, m) in [(1u32, 1u32), (2, 1), (0, 2), (2, 2)] {
        let count = enumerate_cube_morphisms(n, m).unwrap().len();
        println!("morphisms {{0,1}}^{n} -> {{0,1}}^{m}: {count} (formula (2n+2)^m = {})",
            (2 * n + 2).pow(m));
    }

    println!("\nall four morphisms {{0,1}} -> {{0,1}}:");
    for psi in enumerate_cube_morphisms(1, 1).unwrap() {
        let table: Vec<usize> = (0..2).map(|v| psi.apply_index(v)).collect();
        println!("  {psi}  as a map: {table:?}");
    }

    // the symbolic enumeration equals the all-maps filter at small sizes
    let symbolic: HashSet<Vec<usize>> = enumerate_cube_morphisms(2, 2)
        .unwrap()
        .iter()
        .map(|psi| (0..4).map(|v| psi.apply_index(v)).collect())
        .collect();
    let filtered: HashSet<Vec<usize>> = affine_vertex_maps(2, 2).unwrap().into_iter().collect();
    println!("\nsymbolic set == affine-filtered set at n=m=2: {}", symbolic == filtered);

    // composition is closed and signs are multiplicative
    let autos = cube_automorphisms(3).unwrap();
    println!("automorphisms of {{0,1}}^3: {} (= 2^3 · 3!)", autos.len());
    let id = CubeMorphism::identity(3);
    let mut sign_product_ok = true;
    for a in &autos {
        for b in &autos {
            let c = a.then(b).unwrap();
            sign_product_ok &= c.automorphism_sign().unwrap()
                == a.automorphism_sign().unwrap() * b.automorphism_sign().unwrap();
        }
    }
    println!("signs multiplicative under composition: {sign_product_ok}");
    println!("sign of the identity: {}", id.automorphism_sign().unwrap());
}
