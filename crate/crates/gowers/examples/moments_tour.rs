//! Configuration moments: exact and sampled paths, the triangle moment as a
//! graph density, Cayley hypergraphs, and D_n sampling.

use gowers::brute;
use gowers::group::{FiniteAbelianGroup, GroupFunction};
use gowers::moments::{
    cayley_hypergraph_density, moment_exact, moment_sampled, sample_dn, MomentSpec,
};
use gowers::SeedStream;
use rand::Rng;

fn main() {
    let g = FiniteAbelianGroup::cyclic(12).unwrap();
    let mut rng = SeedStream::new(8).rng();
    let f = GroupFunction::random(&g, 1.0, &mut rng);

    // the triangle moment is the triangle density of M_{x,y} = f(x+y)
    let tri = MomentSpec::triangle();
    let exact = moment_exact(&f, &tri).unwrap();
    let graph = brute::triangle_density_by_counting(&f).unwrap();
    println!("triangle moment: {exact:.8}");
    println!("graph-count oracle: {graph:.8}");

    let (est, se) = moment_sampled(&f, &tri, 200_000, &SeedStream::new(4)).unwrap();
    println!("sampled: {est:.6} ± {se:.1e}");

    // powers and conjugations decorate the hypergraph edges
    let fancy = MomentSpec::from_subsets(3, &[(&[1, 3], 2, true), (&[2], 1, false)]).unwrap();
    println!(
        "\nE conj(f(x+z))² f(y): {:.8}  (simple: {}, degree {})",
        moment_exact(&f, &fancy).unwrap(),
        fancy.is_simple(),
        fancy.degree()
    );

    // Cayley hypergraph density equals the full-edge moment and |S|/|A|
    let set: Vec<usize> = (0..12).filter(|_| rng.gen_bool(0.4)).collect();
    for k in 1..=3usize {
        let d = cayley_hypergraph_density(&g, &set, k).unwrap();
        let counted = brute::cayley_density_by_counting(&g, &set, k as u32).unwrap();
        println!("H_{k}(S) density for |S| = {}: {d:.8} (counting oracle {counted:.8})", set.len());
    }

    // D_3(f): the 7-dimensional joint subset-sum distribution
    let dist = sample_dn(&f, 3, 100_000, &SeedStream::new(2)).unwrap();
    println!("\nD_3(f): {} samples in C^{}", dist.samples().len(), dist.dimension());
    let (emp, se) = dist.simple_moment(&tri).unwrap();
    println!("triangle moment recovered from D_3 samples: {emp:.6} ± {se:.1e}");
    println!("exact value again:                          {exact:.6}");
}
