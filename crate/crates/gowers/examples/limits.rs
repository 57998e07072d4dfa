//! Limits of function sequences: the two-frequency sequences converging to
//! a torus function, and the quadratic sequences converging to a function
//! on the Heisenberg nilmanifold.

use gowers::moments::{
    convergence_report, example1_limit, example1_sequence, example2_limit, example2_sequence,
    moment_exact, moment_on_limit, simple_specs_up_to, EvalStrategy, MomentSpec,
};
use gowers::SeedStream;

fn main() {
    // Example 1: f_m(k) = e(k/m) + e(a_m k/m) with a_m ≈ φ·m.
    // The limit is g(x,y) = e(x) + e(y) on the 2-torus.
    println!("example 1: exact finite moments vs the sampled torus limit");
    let specs: Vec<_> = simple_specs_up_to(2).into_iter().take(6).collect();
    let rows = convergence_report(
        &example1_sequence,
        &[5, 20, 100, 400],
        &specs,
        &example1_limit(),
        EvalStrategy::Exact,
        200_000,
        &SeedStream::new(1),
    )
    .unwrap();
    println!("m      spec            value        limit        gap");
    for row in &rows {
        println!(
            "{:<6} {:<15} {:>6.4}{:+.4}i {:>6.4}{:+.4}i {:.4}",
            row.m, row.spec_id, row.value.re, row.value.im,
            row.limit_value.re, row.limit_value.im, row.gap()
        );
    }

    // Example 2: f_m(k) = λ^{k²}, λ = e(⌊αm⌋/m²), α = √2 − 1.  The cube
    // moment (which equals U_3^8) approaches the value carried by the
    // Heisenberg nilmanifold limit object.
    println!("\nexample 2: the 8-vertex cube moment along the sequence");
    let alpha = 2f64.sqrt() - 1.0;
    let spec = MomentSpec::gowers_cube(3);
    for m in [16u64, 24, 32, 48] {
        let f = example2_sequence(m, alpha).unwrap();
        let v = moment_exact(&f, &spec).unwrap();
        println!("  m = {m:2}: cube moment = {:.5}", v.re);
    }
    let (limit, se) =
        moment_on_limit(&example2_limit(), &spec, 400_000, &SeedStream::new(9)).unwrap();
    println!("  rooted-cube sampler on the nilmanifold: {:.5} ± {se:.5}", limit.re);
}
