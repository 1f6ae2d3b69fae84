//! Arithmetic in Z[sqrt 2] and Z[phi], and the regular representation.

use expoly::RingSpec;

fn main() {
    let ring = RingSpec::from_min_poly([-2, 0, 1], "g").expect("monic");
    let g = ring.generator();
    let one_plus_g = ring.add(&ring.one(), &g).unwrap();

    println!("ring: Z[g]/({})", ring.min_poly_display());
    for k in 0..=5 {
        let p = ring.pow(&one_plus_g, k).unwrap();
        println!("(1 + g)^{k} = {}", ring.display(&p));
    }

    // multiplication by a as an integer matrix
    let a = ring.element([3, -1]).unwrap();
    let m = ring.regular_matrix(&a).unwrap();
    println!("\nregular matrix of {}:", ring.display(&a));
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        println!("  [{}]", cells.join(" "));
    }

    let golden = RingSpec::from_min_poly([-1, -1, 1], "phi").unwrap();
    let phi = golden.generator();
    println!("\nring: Z[phi]/({})", golden.min_poly_display());
    for k in [1, 2, 10, 30] {
        // phi^k = F(k-1) + F(k) phi
        println!("phi^{k} = {}", golden.display(&golden.pow(&phi, k).unwrap()));
    }
}
