//! The torus system: monomial maps, the start point 2^a and the target
//! subgroup, evaluated both through exponents and on exact rationals.

use expoly::torus::coordinate_names;
use expoly::{compile_str, EncodeOptions};

const SYSTEM: &str = "ring: g^2 - 2\nvars: l1 l2\neq: (1+g)^l1 * l1 * l2 - 21*l2^2 - 5*g*l1\n";

fn main() {
    let c = compile_str(SYSTEM, EncodeOptions::default()).unwrap();
    let t = &c.torus;
    let names = coordinate_names(t.dimension(), c.source.ring.degree());
    println!("G_m^{} with {} commuting maps", t.dimension(), t.endos.len());
    println!("maps commute: {}", t.endomorphisms_commute());

    for i in [0, 1, 10, 11] {
        println!("Phi_1: {} -> {}", names[i], t.endos[0].monomial(i, &names));
    }

    println!("\ntarget subgroup:");
    for rel in t.target.relations(&names) {
        println!("  {rel}");
    }

    for p in [[3u64, 1], [1, 0]] {
        let e = t.orbit_point_exponent(&p);
        let x = t.orbit_point_rational(&p).unwrap();
        let values = t.target.character_values(&x).unwrap();
        let shown: Vec<String> = values.iter().map(ToString::to_string).collect();
        println!(
            "\nl = {p:?}: character exponents {:?}, values [{}]",
            t.target.character_exponents(&e),
            shown.join(", ")
        );
    }
}
