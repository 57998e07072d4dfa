//! The nilspace axiom checker on linear and degree-k structures, with a
//! mutation that gets caught.

use gowers::cubes::AbelianCubeStructure;
use gowers::group::FiniteAbelianGroup;

fn main() {
    // the linear structure on Z_4: a 1-step nilspace
    let g4 = FiniteAbelianGroup::cyclic(4).unwrap();
    let linear = AbelianCubeStructure::linear(&g4).to_cubespace(3).unwrap();
    let report = linear.check_nilspace_axioms(3).unwrap();
    println!("linear structure on Z_4, axioms up to n = 3:");
    print!("{report}");
    println!("1-step: {}\n", linear.check_k_step(1).unwrap());

    // D_2(Z_2): a 2-step nilspace, strictly bigger than the linear one
    let g2 = FiniteAbelianGroup::cyclic(2).unwrap();
    let d2 = AbelianCubeStructure::degree(&g2, 2).unwrap();
    println!(
        "cube counts on Z_2 at n = 2: linear {}, D_2 {}",
        AbelianCubeStructure::linear(&g2).cubes(2).unwrap().len(),
        d2.cubes(2).unwrap().len()
    );
    let space = d2.to_cubespace(3).unwrap();
    let report = space.check_nilspace_axioms(3).unwrap();
    println!("D_2(Z_2) axioms: all pass = {}", report.all_pass());
    println!("D_2(Z_2) is 2-step: {}", space.check_k_step(2).unwrap());
    println!("D_2(Z_2) is 1-step: {}\n", space.check_k_step(1).unwrap());

    // remove one 2-cube from D_1(Z_2): gluing or composition must fail
    let d1 = AbelianCubeStructure::degree(&g2, 1).unwrap().to_cubespace(2).unwrap();
    let mut mutated = d1.clone();
    let victim = mutated.cubes(2).unwrap()[5].clone();
    mutated.remove_cube(2, &victim);
    println!("after removing the 2-cube {victim:?} from D_1(Z_2):");
    let report = mutated.check_nilspace_axioms(2).unwrap();
    print!("{report}");

    // the one-point space passes everything trivially
    let point = gowers::cubes::Cubespace::one_point(3);
    println!("one-point space: all axioms pass = {}",
        point.check_nilspace_axioms(3).unwrap().all_pass());
}
