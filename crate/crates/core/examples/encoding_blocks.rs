//! A single block: commuting matrices whose projected orbit is
//! lambda^l * binom(l, j).

use expoly::encoder::{build_block, select_weights, validate_weights};
use expoly::RingSpec;

fn main() {
    let ring = RingSpec::from_min_poly([-2, 0, 1], "g").unwrap();
    let j = [1, 1];
    let weights = select_weights(&j).unwrap();
    println!("j = {j:?}: primes {:?}, weights M = {:?}", weights.primes, weights.weights);
    println!("M * k = M * j has a unique solution: {}", validate_weights(&weights.weights, &j));

    let bases = [ring.element([1, 1]).unwrap(), ring.one()];
    let block = build_block(&ring, &bases, &j, &weights).unwrap();
    println!("block size {} (M . j + 1)", block.size);

    println!("\npsi_1 (entries shown where nonzero):");
    let psi = &block.psi[0];
    for r in 0..psi.rows() {
        let row: Vec<String> = (0..psi.cols())
            .map(|c| if psi[(r, c)].is_zero() { ".".into() } else { ring.display(&psi[(r, c)]).to_string() })
            .collect();
        println!("  {}", row.iter().map(|s| format!("{s:>7}")).collect::<String>());
    }

    println!("\n  l        pi(psi^l v)   (1+g)^l1 * l1 * l2");
    for p in [[0u64, 0], [1, 1], [2, 1], [3, 1], [2, 4]] {
        let got = block.eval(&ring, &p);
        let lambda = ring.pow(&bases[0], p[0]).unwrap();
        let want = ring.scale(&lambda, &((p[0] * p[1]).into()));
        assert_eq!(got, want);
        println!("  {:?}   {:<13} {}", p, ring.display(&got).to_string(), ring.display(&want));
    }
}
