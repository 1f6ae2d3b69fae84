//! Monomial and binomial normal forms of an exponential polynomial.

use expoly::exppoly::stirling2_row;
use expoly::ExpPolySystem;

const SYSTEM: &str = "ring: g^2 - 2\nvars: l1 l2\neq: (1+g)^l1 * l1 * l2 - 21*l2^2 - 5*g*l1\n";

fn main() {
    let sys = ExpPolySystem::parse(SYSTEM).expect("valid system");
    let ring = &sys.ring;
    let eq = &sys.equations[0];
    println!("f = {}", eq.source);

    println!("\nmonomial form  c * lambda^l * l^k");
    for t in &eq.monomial {
        let bases: Vec<String> = t.bases.iter().map(|b| ring.display(b).to_string()).collect();
        println!("  c = {:<6} k = {:?}  lambda = ({})", ring.display(&t.coeff).to_string(), t.powers, bases.join(", "));
    }

    println!("\nbinomial form  r * lambda^l * binom(l, j)");
    for t in &eq.binomial {
        let bases: Vec<String> = t.bases.iter().map(|b| ring.display(b).to_string()).collect();
        println!("  r = {:<6} j = {:?}  lambda = ({})", ring.display(&t.coeff).to_string(), t.j, bases.join(", "));
    }

    // x^2 = S(2,1) 1! binom(x,1) + S(2,2) 2! binom(x,2), hence -21 l2^2 = -21 binom(l2,1) - 42 binom(l2,2)
    println!("\nS(2, j) for j = 0..2: {:?}", stirling2_row(2));

    println!("\n  l     direct        monomial      binomial");
    for p in [[0, 0], [1, 0], [1, 1], [2, 3], [3, 1]] {
        let show = |v: Vec<expoly::RingElement>| ring.display(&v[0]).to_string();
        println!(
            "  {:?}  {:<12}  {:<12}  {:<12}",
            p,
            show(sys.eval(&p).unwrap()),
            show(sys.eval_monomial(&p).unwrap()),
            show(sys.eval_binomial(&p).unwrap())
        );
    }
}
