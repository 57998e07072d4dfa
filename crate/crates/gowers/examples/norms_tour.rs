//! A tour of the Gowers uniformity norms: exact recursion, the Fourier
//! route for U_2, the Monte-Carlo estimator, and the brute-force oracle.
//!
//! Run with `cargo run --release --example norms_tour`.

use gowers::group::{FiniteAbelianGroup, GroupFunction};
use gowers::norms::{gowers_norm_exact, gowers_norm_sampled, u2_via_fourier};
use gowers::numeric::e;
use gowers::{brute, SeedStream};
use num_complex::Complex64;

fn main() {
    let g = FiniteAbelianGroup::cyclic(16).unwrap();

    println!("constant 1 on Z_16:");
    let one = GroupFunction::constant(&g, Complex64::new(1.0, 0.0));
    for k in 1..=3 {
        println!("  U_{k} = {:.6}", gowers_norm_exact(&one, k).unwrap());
    }

    println!("nontrivial character χ_3 on Z_16 (linear structure only):");
    let chi = g.character(3).as_function();
    for k in 1..=3 {
        println!("  U_{k} = {:.6}", gowers_norm_exact(&chi, k).unwrap());
    }

    println!("point mass 1_{{0}} on Z_16 (expect U_2 = 16^(-3/4) = {:.6}):", 16f64.powf(-0.75));
    let delta = GroupFunction::indicator(&g, &g.zero());
    println!("  U_2 exact   = {:.6}", gowers_norm_exact(&delta, 2).unwrap());
    println!("  U_2 fourier = {:.6}", u2_via_fourier(&delta));

    let p = 13u32;
    let gp = FiniteAbelianGroup::cyclic(p).unwrap();
    let gauss = GroupFunction::from_fn(&gp, |x| {
        let k = x.coords()[0] as u64;
        e(((k * k) % p as u64) as f64 / p as f64)
    });
    println!("quadratic phase e(k²/{p}) on Z_{p} (quadratic structure, no linear):");
    println!("  U_1 = {:.6}", gowers_norm_exact(&gauss, 1).unwrap());
    println!(
        "  U_2 = {:.6}  (exact value p^(-1/4) = {:.6})",
        gowers_norm_exact(&gauss, 2).unwrap(),
        (p as f64).powf(-0.25)
    );
    println!("  U_3 = {:.6}", gowers_norm_exact(&gauss, 3).unwrap());

    println!("random |f| ≤ 1 on Z_8: recursion vs nested-sum oracle vs sampling");
    let g8 = FiniteAbelianGroup::cyclic(8).unwrap();
    let mut rng = SeedStream::new(42).rng();
    let f = GroupFunction::random(&g8, 1.0, &mut rng);
    for k in 1..=3 {
        let exact = gowers_norm_exact(&f, k).unwrap();
        let nested = brute::gowers_norm_nested(&f, k).unwrap();
        let (est, se) = gowers_norm_sampled(&f, k, 100_000, &SeedStream::new(7)).unwrap();
        println!("  U_{k}: exact {exact:.6}, oracle {nested:.6}, sampled {est:.6} ± {se:.1e}");
    }
}
