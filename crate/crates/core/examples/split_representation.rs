//! Operators on the splits of a minuscule poset and their relations.
//!
//!     cargo run --example split_representation

use minuscule::catalog::{build, indexed, FamilyId};
use minuscule::dynkin::TypeLetter;
use minuscule::representation::{weight_of_split, Representation};

fn main() {
    let p = indexed(TypeLetter::A, 3, 2).unwrap();
    let rep = Representation::build(&p).unwrap();
    println!("A3 top 2: dimension {}", rep.dimension());
    for s in rep.splits() {
        println!("  ideal {:?}  weight {:?}", s.ideal, weight_of_split(&p, s));
    }
    println!("X_2 = {:?}", rep.x(1).entries());

    let report = rep.verify(true);
    println!("relations hold: {} ({} checks)", report.holds, report.checks.len());

    for f in [FamilyId::B(3), FamilyId::DSpin(5), FamilyId::E6] {
        let q = build(f).unwrap();
        let r = Representation::build(&q).unwrap().verify(false);
        println!("{f}: dimension {}, relations {}", r.dimension, r.holds);
    }
}
