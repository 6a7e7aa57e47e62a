//! Build diagrams from edges and recognize their finite type.
//!
//!     cargo run --example dynkin_types

use minuscule::dynkin::{cyclic_diagram, finite_type_template, DynkinDiagram, TypeLetter};

fn main() {
    // B3 with the double bond at the end: theta(2,3) = -2, theta(3,2) = -1
    let b3 =
        DynkinDiagram::from_edges(vec!["a".into(), "b".into(), "c".into()], &[(0, 1, -1, -1), (1, 2, -2, -1)]).unwrap();
    let t = b3.recognize_finite_type().unwrap().unwrap();
    println!("{}{} numbering {:?}", t.letter, t.rank, t.numbering);

    for (letter, n) in
        [(TypeLetter::A, 5), (TypeLetter::D, 4), (TypeLetter::D, 6), (TypeLetter::E, 6), (TypeLetter::E, 7)]
    {
        let d = finite_type_template(letter, n).unwrap();
        println!("{letter}{n}: {} automorphisms, simply laced {}", d.automorphisms().len(), d.is_simply_laced());
    }

    let cycle = cyclic_diagram(4).unwrap();
    println!(
        "4-cycle: finite type {:?}, cycle {:?}",
        cycle.recognize_finite_type().unwrap().map(|t| t.letter),
        cycle.find_cycle()
    );

    print!("{}", finite_type_template(TypeLetter::E, 6).unwrap().to_dot());
}
