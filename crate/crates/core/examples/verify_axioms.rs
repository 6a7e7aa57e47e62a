//! Run the coloring axioms on small posets and print the witnesses.
//!
//!     cargo run --example verify_axioms

use minuscule::axioms::{check, is_d_complete, is_dominant_minuscule_heap, is_minuscule, Property};
use minuscule::dynkin::DynkinDiagram;
use minuscule::poset::ColoredPoset;

const SHOWN: [Property; 10] = [
    Property::EC,
    Property::NA,
    Property::AC,
    Property::ICE2,
    Property::UCB(1),
    Property::LCB(1),
    Property::S1,
    Property::S2,
    Property::S3,
    Property::S4,
];

fn report(label: &str, p: &ColoredPoset) {
    println!("{label}");
    for prop in SHOWN {
        let r = check(p, prop);
        println!("  {:<5} {}  {:?}", prop.to_string(), if r.passed { "pass" } else { "FAIL" }, r.witnesses);
    }
    println!(
        "  d-complete {}  heap {}  minuscule {}",
        is_d_complete(p).holds,
        is_dominant_minuscule_heap(p).holds,
        is_minuscule(p).holds
    );
}

fn main() {
    // colors 0 - 1 - 2 on a path
    let d = DynkinDiagram::simply_laced(3, &[(0, 1), (1, 2)]);

    // 1 < 0 < 1: only one neighbor color between the two 1s
    let chain = ColoredPoset::new(d.clone(), vec![1, 0, 1, 2], vec![(0, 1), (1, 2), (2, 3)]).unwrap();
    report("chain 1 0 1 2", &chain);

    // diamond: 1 below 0 and 2, both below another 1
    let diamond = ColoredPoset::new(d, vec![1, 0, 2, 1], vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    report("diamond", &diamond);
}
