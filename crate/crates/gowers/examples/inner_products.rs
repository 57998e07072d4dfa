//! Gowers inner products, the Cauchy–Schwarz gap, and corner convolutions
//! with their norm bound.

use gowers::group::{FiniteAbelianGroup, GroupFunction};
use gowers::norms::{
    cornineq_gap, corner_convolution, gcs_gap, gowers_inner_product, gowers_norm_exact,
    FunctionSystem, SystemKind,
};
use gowers::SeedStream;

fn main() {
    let g = FiniteAbelianGroup::cyclic(8).unwrap();
    let mut rng = SeedStream::new(11).rng();
    let f = GroupFunction::random(&g, 1.0, &mut rng);

    // the diagonal system recovers the norm power: (F) = ||f||_{U_2}^4
    let diag = FunctionSystem::diagonal(SystemKind::AllSubsets, 2, &f);
    let ip = gowers_inner_product(&diag).unwrap();
    let u2 = gowers_norm_exact(&f, 2).unwrap();
    println!("diagonal inner product = {:.8}, U_2^4 = {:.8}", ip.re, u2.powi(4));
    println!("GCS gap on the diagonal (equality case): {:.2e}", gcs_gap(&diag).unwrap());

    // random systems: the gap stays nonnegative
    for k in [2u32, 3] {
        let entries: Vec<GroupFunction> = (0..1usize << k)
            .map(|_| GroupFunction::random(&g, 1.0, &mut rng))
            .collect();
        let sys = FunctionSystem::new(SystemKind::AllSubsets, k, entries).unwrap();
        println!("random system, k = {k}: GCS gap = {:.6}", gcs_gap(&sys).unwrap());
    }

    // corner convolution: K_1(F)(x) = conj(E f), a constant
    let sys1 = FunctionSystem::new(SystemKind::NonEmpty, 1, vec![f.clone()]).unwrap();
    let at0 = corner_convolution(&sys1, &g.element(0)).unwrap();
    let at5 = corner_convolution(&sys1, &g.element(5)).unwrap();
    println!("K_1 at x=0: {at0:.6}, at x=5: {at5:.6} (conj of the mean, x-independent)");

    // the corner bound K_n(F)(x) ≤ Π ||f_S|| for a random 2-dimensional system
    let entries: Vec<GroupFunction> =
        (0..3).map(|_| GroupFunction::random(&g, 1.0, &mut rng)).collect();
    let sys = FunctionSystem::new(SystemKind::NonEmpty, 2, entries).unwrap();
    for x in [0usize, 3] {
        let v = corner_convolution(&sys, &g.element(x)).unwrap();
        let gap1 = cornineq_gap(&sys, &g.element(x), 1).unwrap();
        let gap2 = cornineq_gap(&sys, &g.element(x), 2).unwrap();
        println!("x = {x}: |K_2(F)(x)| = {:.6}, bound gaps j=1: {gap1:.6}, j=2: {gap2:.6}", v.norm());
    }
}
