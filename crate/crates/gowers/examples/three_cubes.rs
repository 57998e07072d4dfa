//! The three-cube T_n = {-1,0,1}^n: corner embeddings Φ_v, the ω map, and
//! the closure property for linear structures.

use gowers::cubes::{omega, omega_closure_check, phi_v, tn_points};
use gowers::group::FiniteAbelianGroup;

fn main() {
    // n = 1: Φ_0 maps (0,1) to (1,0); Φ_1 maps (0,1) to (-1,0)
    let points = tn_points(1);
    for v in 0..2usize {
        let table = phi_v(1, v);
        let images: Vec<&Vec<i8>> = table.iter().map(|&i| &points[i]).collect();
        println!("Φ_{v} on {{0,1}}: {images:?}");
    }

    // ω(v) = Φ_v(0^n) picks the ±1-corners; ω(0^n) is the all-ones corner
    let points2 = tn_points(2);
    println!("\nω on {{0,1}}^2:");
    for v in 0..4usize {
        println!("  ω({v:02b}) = {:?}", points2[omega(2, v)]);
    }

    // every map T_n → A with all Φ_v-restrictions linear has ω∘t linear
    for (m, n) in [(2u32, 1u32), (3, 1), (2, 2), (3, 2)] {
        let group = FiniteAbelianGroup::cyclic(m).unwrap();
        let homs = omega_closure_check(&group, n).unwrap();
        println!(
            "Z_{m}, n = {n}: {homs} maps T_{n} → A have all corner restrictions linear; \
             ω-composition stayed a cube for every one"
        );
    }
}
