//! Polynomial maps: binomial generators and their exact Leibman degrees,
//! derivatives of the Heisenberg power map, and the V-polynomial report.

use gowers::group::FiniteAbelianGroup;
use gowers::heisenberg::{standard_generator, HeisenbergElement};
use gowers::polymaps::{
    degree_check, leibman_derivative, v_polynomial_check, BinomialPolyMap, TestBox,
};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() {
    let g5 = FiniteAbelianGroup::cyclic(5).unwrap();
    let bx = TestBox::new(-5, 5);

    // 2·C(x,1) into Z_5 at x = 3: 6 mod 5 = 1
    let phi = BinomialPolyMap::generator(&g5, &g5.element(2), &[1]);
    println!("2·C(x,1) mod 5 at x = 3: {:?}", phi.eval(&[3]).unwrap().coords());

    // exact degrees of the binomial generators
    for j in 1..=3u32 {
        let phi = BinomialPolyMap::generator(&g5, &g5.element(1), &[j]);
        let f = |x: &[i64]| phi.eval_value(x).unwrap();
        println!(
            "C(x,{j}) into Z_5: passes degree {j}: {}, passes degree {}: {}",
            degree_check(&f, 1, j, bx),
            j - 1,
            degree_check(&f, 1, j - 1, bx)
        );
    }

    // D_1 C(x,2) = x (Pascal), shown through the derivative closure
    let big = FiniteAbelianGroup::cyclic(101).unwrap();
    let phi = BinomialPolyMap::generator(&big, &big.element(1), &[2]);
    let f = |x: &[i64]| phi.eval_value(x).unwrap();
    let d = leibman_derivative(&f, vec![1]);
    let row: Vec<u32> = (0..6).map(|x| d(&[x]).elem.coords()[0]).collect();
    println!("D_1 C(x,2) at x = 0..5: {row:?}  (equals x)");

    // the Heisenberg power map: a degree-1 Leibman polynomial and a
    // V-polynomial for the filtration H = F_0 = F_1 ⊇ center ⊇ 1
    let m = standard_generator(12, 7).unwrap();
    let report = v_polynomial_check(&|k| m.pow(k), TestBox::new(-8, 8));
    println!("\nV-polynomial report for k ↦ M^k, (m,t) = (12,7):");
    for level in &report.levels {
        println!(
            "  level {}: degree ≤ {} required, passes: {}, observed degree: {:?}",
            level.level, level.required_degree, level.passes, level.observed_degree
        );
    }
    println!("is a V-polynomial: {}", report.is_v_polynomial());

    // a cubic in the (1,2)-entry breaks the level-2 requirement
    let cubic = |k: i64| {
        HeisenbergElement::new(
            BigRational::new(BigInt::from(k * k * k), BigInt::from(3)),
            BigRational::from(BigInt::from(0)),
            BigRational::from(BigInt::from(0)),
        )
    };
    let report = v_polynomial_check(&cubic, TestBox::new(-8, 8));
    println!(
        "\ncubic in the a-entry: level-2 pass = {}, V-polynomial = {}",
        report.levels[2].passes,
        report.is_v_polynomial()
    );
}
