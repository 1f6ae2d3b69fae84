//! Return sets at every level over a box, and single-tuple membership.

use expoly::verify::{cross_check, member, BoxRegion, Level};
use expoly::{compile_str, EncodeOptions};

const SYSTEM: &str = "ring: g^2 - 2\nvars: l1 l2\neq: (1+g)^l1 * l1 * l2 - 21*l2^2 - 5*g*l1\n";

fn main() {
    let bound = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let c = compile_str(SYSTEM, EncodeOptions::default()).unwrap();

    let mut levels = Level::ALL.to_vec();
    if bound <= 3 {
        levels.push(Level::TorusRational);
    }
    let report = cross_check(&c, BoxRegion::new(bound, 2), &levels).unwrap();
    print!("{}", report.render_table());

    println!();
    for p in [[3, 1], [1, 0], [1, 1]] {
        for level in [Level::Direct, Level::Torus] {
            let m = member(&c, &p, level).unwrap();
            println!("{p:?} {:<7} {:<5} [{}]", level.name(), m.member, m.evidence.join(", "));
        }
    }
}
