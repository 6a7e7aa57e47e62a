//! Check finite windows of a periodic poset.
//!
//!     cargo run --example periodic_window

use minuscule::catalog::{build, FamilyId};
use minuscule::heapwindow::{cyclic_chain_window, verify_window, window_report, PeriodicWindow};

fn main() {
    for (n, p) in [(3, 2), (3, 3), (5, 3)] {
        let w = cyclic_chain_window(n, p).unwrap();
        let v = verify_window(&w);
        println!(
            "cyclic n={n} periods={p}: {} elements, boundary {:?}, holds {}",
            w.poset().len(),
            w.boundary(),
            v.holds
        );
        for r in &v.reports {
            println!("  {:<10} {}", r.property.to_string(), r.passed);
        }
    }

    // finite posets never recur
    let w = PeriodicWindow::from_finite(build(FamilyId::DStandard(5)).unwrap());
    let report = window_report(&w);
    println!("{}", serde_json::to_string(&report).unwrap());
}
