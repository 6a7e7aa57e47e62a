//! Name the components of a disjoint union, including a non-minuscule one.
//!
//!     cargo run --example classify_posets

use minuscule::catalog::{build, top_tree_y, FamilyId};
use minuscule::classify::{classify, ComponentResult};
use minuscule::poset::ColoredPoset;

fn main() {
    let parts = [
        build(FamilyId::E6).unwrap(),
        build(FamilyId::AExterior(4, 2)).unwrap().order_dual(),
        build(FamilyId::C(3)).unwrap(),
        top_tree_y(2, 2, 2).unwrap(),
    ];
    let refs: Vec<&ColoredPoset> = parts.iter().collect();
    let union = ColoredPoset::disjoint_union(&refs);
    let c = classify(&union);
    println!("minuscule: {}", c.minuscule);
    for comp in &c.components {
        match &comp.result {
            ComponentResult::Match(m) => {
                println!("{} elements -> {} (all matches {:?})", comp.elements.len(), m.family, m.matches)
            }
            ComponentResult::NotMinuscule { failures } => {
                let props: Vec<String> = failures.iter().map(|r| r.property.to_string()).collect();
                println!("{} elements -> not minuscule, fails {}", comp.elements.len(), props.join(", "))
            }
            other => println!("{other:?}"),
        }
    }
}
