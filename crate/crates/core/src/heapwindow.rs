//! Finite windows of periodic colored posets.
//!
//! A window is a finite convex piece of an infinite poset together with
//! boundary marks: elements whose up-set or down-set is cut off. Checks that
//! only make sense with the whole poset in view are restricted to the
//! interior, so a passing window is evidence, never a proof, that the
//! ambient poset is a full heap.

use serde::Serialize;
use thiserror::Error;

use crate::axioms::{check, check_g3_window, check_ice2, Ambient, AxiomReport, Property, Verdict};
use crate::dynkin::cyclic_diagram;
use crate::poset::{ColoredPoset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("boundary mark {0} is not an element")]
    BoundaryOutOfRange(usize),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone)]
pub struct PeriodicWindow {
    poset: ColoredPoset,
    boundary: Vec<usize>,
}

impl PeriodicWindow {
    pub fn new(poset: ColoredPoset, mut boundary: Vec<usize>) -> Result<Self, WindowError> {
        if let Some(&b) = boundary.iter().find(|&&b| b >= poset.len()) {
            return Err(WindowError::BoundaryOutOfRange(b));
        }
        boundary.sort_unstable();
        boundary.dedup();
        Ok(Self { poset, boundary })
    }

    /// A finite poset seen as a window with nothing cut off.
    pub fn from_finite(poset: ColoredPoset) -> Self {
        Self { poset, boundary: Vec::new() }
    }

    pub fn poset(&self) -> &ColoredPoset {
        &self.poset
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }
}

/// Chain of `n * periods` elements over the `n`-cycle diagram, element `m`
/// colored `m mod n` and covered by `m + 1`. Both ends are boundary marks.
pub fn cyclic_chain_window(n: usize, periods: usize) -> Result<PeriodicWindow, WindowError> {
    if n < 3 || periods < 2 {
        return Err(WindowError::BadParameters(format!(
            "cyclic chain window needs n >= 3 and periods >= 2, got n = {n}, periods = {periods}"
        )));
    }
    let diagram = cyclic_diagram(n).expect("n >= 3");
    let len = n * periods;
    let coloring = (0..len).map(|m| m % n).collect();
    let covers = (0..len - 1).map(|m| (m, m + 1)).collect();
    let poset = ColoredPoset::new(diagram, coloring, covers)?;
    PeriodicWindow::new(poset, vec![0, len - 1])
}

/// EC, NA and AC on the whole window, ICE2 on intervals that avoid the
/// boundary, and the window form of the integer-recurrence condition.
/// Frontier bounds are not checked.
pub fn verify_window(w: &PeriodicWindow) -> Verdict {
    let p = &w.poset;
    let mut reports: Vec<AxiomReport> =
        [Property::EC, Property::NA, Property::AC].iter().map(|&q| check(p, q)).collect();
    reports.push(AxiomReport::from_witnesses(Property::ICE2, check_ice2(p, &w.boundary)));
    reports.push(AxiomReport::from_witnesses(Property::G3Window, check_g3_window(p, &w.boundary, Ambient::Full)));
    Verdict::of(reports)
}

/// Serializable summary of a window check.
#[derive(Debug, Clone, Serialize)]
pub struct WindowReport {
    pub elements: usize,
    pub boundary: Vec<usize>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

pub fn window_report(w: &PeriodicWindow) -> WindowReport {
    WindowReport { elements: w.poset.len(), boundary: w.boundary.clone(), verdict: verify_window(w) }
}
