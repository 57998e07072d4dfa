//! Face-vector groups Z_{n,k}(A): brute-force face-sum sets, the span of
//! the signed-face generators g_{F,a}, and the duality with D_k(A).

use gowers::cubes::{duality_check, z_nk_span_check};
use gowers::group::FiniteAbelianGroup;

fn main() {
    println!("Z_{{n,k}}(A): maps {{0,1}}^n -> A with zero sum on every (n-k)-face\n");
    for m in [2u32, 3] {
        let group = FiniteAbelianGroup::cyclic(m).unwrap();
        for n in 1..=3u32 {
            for k in 1..=2u32 {
                let r = z_nk_span_check(&group, n, k).unwrap();
                println!(
                    "A=Z_{m} n={n} k={k}: |Z_{{n,k}}| = {:4}, span of g_{{F,a}} = {:4}, \
                     equal: {}, forgetting map onto Z* surjective: {}",
                    r.brute_count, r.span_count, r.span_equals_brute, r.forgetting_surjective
                );
            }
        }
    }

    println!("\nduality: f ∈ C^n(D_k(A))  ⟺  Σ_v ⟨m(v), f(v)⟩ = 0 for all m ∈ Z_{{n,k}}(Â)");
    for m in [2u32, 3] {
        let group = FiniteAbelianGroup::cyclic(m).unwrap();
        for n in 1..=3u32 {
            for k in 1..=2u32 {
                println!(
                    "A=Z_{m} n={n} k={k}: duality verdict {}",
                    duality_check(&group, n, k).unwrap()
                );
            }
        }
    }

    // the degenerate regime: k ≥ n forces the zero map through vertex faces
    let g3 = FiniteAbelianGroup::cyclic(3).unwrap();
    let r = z_nk_span_check(&g3, 2, 3).unwrap();
    println!("\nk ≥ n (here n=2, k=3): |Z_{{n,k}}| = {} (the zero map only)", r.brute_count);
}
