//! Writing a compiled level as JSON and verifying the reloaded system.

use expoly::serialize::{to_document, OutputLevel, SystemDocument};
use expoly::verify::BoxRegion;
use expoly::{compile_str, EncodeOptions};

const SYSTEM: &str = "ring: g^2 - g - 1\nvars: a b\neq: g^a - g*b - 1 + b\n";

fn main() {
    let c = compile_str(SYSTEM, EncodeOptions::default()).unwrap();
    let json = to_document(&c, OutputLevel::Integer).to_json();
    println!("integer document: {} bytes", json.len());
    println!("{}", json.lines().take(12).collect::<Vec<_>>().join("\n"));
    println!("  ...");

    let loaded = SystemDocument::from_json(&json).unwrap().load().unwrap();
    let region = BoxRegion::new(5, loaded.nvars());
    println!("\nreloaded {} system, return set on [0,5]^2: {:?}", loaded.level(), loaded.return_set(region).unwrap());
}
