//! Write a poset document, read it back, and reject a bad version.
//!
//!     cargo run --example json_documents

use minuscule::catalog::{build, FamilyId};
use minuscule::io::{parse_poset, poset_to_json};

fn main() {
    let p = build(FamilyId::B(2)).unwrap();
    let json = poset_to_json(&p);
    println!("{json}");

    let back = parse_poset(&json).unwrap();
    assert_eq!(back.covers(), p.covers());

    let future = json.replacen("\"version\": 1", "\"version\": 9", 1);
    println!("{}", parse_poset(&future).unwrap_err());
}
