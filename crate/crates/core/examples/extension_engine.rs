//! Grow Y-shaped top trees downward until they are minuscule or blocked.
//!
//!     cargo run --example extension_engine -- 2 2 2

use minuscule::catalog::{family_for_shape, top_tree_y};
use minuscule::classify::classify;
use minuscule::extension::run_extension;
use minuscule::poset::YShape;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let shapes = match args[..] {
        [i, j, k] => vec![(i, j, k)],
        _ => vec![(1, 2, 3), (3, 1, 2), (4, 1, 2), (2, 2, 2), (3, 1, 3), (5, 1, 2)],
    };
    for (i, j, k) in shapes {
        let seed = top_tree_y(i, j, k).unwrap();
        let out = run_extension(&seed).unwrap();
        let named = classify(&out.poset).families();
        println!(
            "Y({i};{j},{k}) {:?} after {} assessments, {} elements, family {:?}, expected {:?}",
            out.verdict,
            out.assessments,
            out.poset.len(),
            named,
            family_for_shape(YShape { i, j, k })
        );
        for s in &out.stages {
            let names: Vec<&str> = s.colors.iter().map(|&c| out.poset.diagram().name(c)).collect();
            println!("  stage {}: colors {:?} at ranks {:?}", s.index, names, s.ranks);
        }
        for r in &out.reasons {
            println!("  blocked by {r:?}");
        }
    }
}
