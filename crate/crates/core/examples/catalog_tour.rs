//! Every family up to a rank, with sizes and top colors.
//!
//!     cargo run --example catalog_tour -- 6

use minuscule::axioms::is_minuscule;
use minuscule::catalog::{build, indexed_all, instances};
use minuscule::dynkin::TypeLetter;

fn main() {
    let rank: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for f in instances(rank) {
        let p = build(f).unwrap();
        let top = p.maximal_elements()[0];
        println!(
            "{:<16} rank {:>2}  {:>3} elements  top color {:<2} minuscule {}",
            f.to_string(),
            f.rank(),
            p.len(),
            p.diagram().name(p.color(top)),
            is_minuscule(&p).holds
        );
    }

    // D4 has three minuscule nodes related by triality
    for j in [1, 3, 4] {
        let all = indexed_all(TypeLetter::D, 4, j).unwrap();
        println!("D4 top {j}: base {}, {} recolorings", all[0].base, all.len());
    }
}
