//! Shared fixtures for the benchmarks.

use wallcross::io::battery;
use wallcross::scattering::{scatter, Diagram};
use wallcross::{FixedData, Seed};

/// Fixed data and initial seed of a battery instance, with principal
/// coefficients where the battery asks for them.
pub fn fixture(name: &str) -> (FixedData, Seed) {
    let inst = battery::instance(name).unwrap_or_else(|| panic!("no battery instance {name}"));
    inst.document().load(inst.principal).expect("battery documents are valid")
}

pub fn diagram(name: &str, order: u32) -> Diagram {
    let (fd, s) = fixture(name);
    scatter(&fd, &s, order).expect("battery diagrams build")
}
