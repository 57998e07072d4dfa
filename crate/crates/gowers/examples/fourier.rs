//! Fourier analysis on a product of cyclic groups: coefficients, Parseval,
//! inversion, and Gauss-sum moduli.

use gowers::group::{fourier_transform, fourier_transform_fast, FiniteAbelianGroup, GroupFunction};
use gowers::numeric::e;
use gowers::SeedStream;

fn main() {
    let g = FiniteAbelianGroup::new(&[4, 3]).unwrap();
    let mut rng = SeedStream::new(5).rng();
    let f = GroupFunction::random(&g, 1.0, &mut rng);

    let spec = fourier_transform(&f);
    let fast = fourier_transform_fast(&f);
    let worst = spec
        .coeffs()
        .iter()
        .zip(fast.coeffs())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("naive vs mixed-radix transform on Z_4 x Z_3: max gap {worst:.2e}");

    let energy = spec.energy();
    let l2sq = f.lp_norm(2.0).unwrap().powi(2);
    println!("Parseval: Σ|λ|² = {energy:.12}, E|f|² = {l2sq:.12}");

    let back = spec.inverse();
    let defect = gowers::group::max_deviation(&f, &back).unwrap();
    println!("inversion: max |f - Σ λ_χ χ| = {defect:.2e}");

    println!("largest coefficients:");
    let mut coeffs: Vec<_> = spec.iter().collect();
    coeffs.sort_by(|a, b| b.1.norm().partial_cmp(&a.1.norm()).unwrap());
    for (chi, lambda) in coeffs.iter().take(4) {
        println!("  freq {:?}: |λ| = {:.6}", chi.freq(), lambda.norm());
    }

    // Gauss sums: e(x²/p) has perfectly flat spectrum of modulus p^{-1/2}
    for p in [5u32, 7, 11] {
        let gp = FiniteAbelianGroup::cyclic(p).unwrap();
        let gauss = GroupFunction::from_fn(&gp, |x| {
            let k = x.coords()[0] as u64;
            e(((k * k) % p as u64) as f64 / p as f64)
        });
        let spec = fourier_transform(&gauss);
        let (min, max) = spec.coeffs().iter().fold((f64::MAX, 0.0f64), |(lo, hi), c| {
            (lo.min(c.norm()), hi.max(c.norm()))
        });
        println!(
            "Gauss sum on Z_{p}: |λ| ∈ [{min:.6}, {max:.6}], p^(-1/2) = {:.6}",
            (p as f64).powf(-0.5)
        );
    }
}
