//! Send each element of a minuscule poset to a positive coroot.
//!
//!     cargo run --example coroot_realization -- A 4 2

use minuscule::catalog::indexed;
use minuscule::coroots::{heap_to_word, highest_coroot, inversion_sequence, is_minimal_coset_representative, psi};
use minuscule::dynkin::TypeLetter;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (letter, n, j) = match &args[..] {
        [l, n, j] => (l.parse::<TypeLetter>().unwrap(), n.parse().unwrap(), j.parse().unwrap()),
        _ => (TypeLetter::A, 4, 2),
    };
    let p = indexed(letter, n, j).unwrap();
    let d = p.diagram();
    let r = psi(&p).unwrap();
    println!("{letter}{n} top {j}: highest coroot {}", highest_coroot(d).unwrap());
    for x in 0..p.len() {
        let w = heap_to_word(&p, x);
        println!(
            "  element {x:>2} color {:>2}  {:<24} -> {}  (coset rep {})",
            d.name(p.color(x)),
            w.display(d),
            r.images[x],
            is_minimal_coset_representative(d, &w, j - 1).unwrap()
        );
    }
    let bottom = p.minimal_elements()[0];
    let seq = inversion_sequence(d, &heap_to_word(&p, bottom)).unwrap();
    let shown: Vec<String> = seq.iter().map(|c| c.to_string()).collect();
    println!("inversion sequence of the bottom: {}", shown.join(", "));
}
