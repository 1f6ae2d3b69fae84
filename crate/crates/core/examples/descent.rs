//! Replacing ring entries by their regular representation.

use expoly::torus::coordinate_names;
use expoly::{compile_str, EncodeOptions};

const SYSTEM: &str = "ring: g^2 - 2\nvars: l1 l2\neq: (1+g)^l1 * l1 * l2 - 21*l2^2 - 5*g*l1\n";

fn main() {
    let c = compile_str(SYSTEM, EncodeOptions::default()).unwrap();
    let ring = &c.source.ring;
    println!("ring-linear rank {} -> integer-linear rank {}", c.ring.rank(), c.integer.rank());

    println!("\ntheta (nonzero entries):");
    for col in 0..c.ring.rank() {
        let x = &c.ring.theta[(0, col)];
        if !x.is_zero() {
            println!("  x{:<3} {}", col + 1, ring.display(x));
        }
    }

    // coordinate 2k is Y{k+1}, coordinate 2k+1 is Z{k+1}
    let names = coordinate_names(c.integer.rank(), ring.degree());
    for (r, label) in [(0, "y-row"), (1, "z-row")] {
        let terms: Vec<String> = (0..c.integer.rank())
            .filter(|&i| c.integer.target[(r, i)] != 0.into())
            .map(|i| format!("{:+}*{}", c.integer.target[(r, i)], names[i]))
            .collect();
        println!("{label}: {}", terms.join(" "));
    }

    let p = [3, 1];
    let v = c.integer.orbit_point(&p);
    println!("\nL * phi^{p:?} a = {:?}", c.integer.target_values(&v));
}
