//! Documents, SVG slices and verification suites.

pub mod battery;
pub mod documents;
pub mod svg;
pub mod verify;

pub use documents::{emit, CheckResult, DiagramDocument, ProductDocument, ReportDocument, SeedDocument, ThetaDocument};

/// The deterministic generator used by every command.
pub type SeededRng = rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    use rand::SeedableRng;
    SeededRng::seed_from_u64(seed)
}
