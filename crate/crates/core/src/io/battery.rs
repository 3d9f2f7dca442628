//! The in-repo battery of seed documents.

use super::documents::SeedDocument;

pub struct Instance {
    pub name: &'static str,
    pub text: &'static str,
    /// run with principal coefficients
    pub principal: bool,
}

pub const BATTERY: [Instance; 6] = [
    Instance { name: "A2", text: include_str!("../../../../seeds/a2.json"), principal: false },
    Instance { name: "B2", text: include_str!("../../../../seeds/b2.json"), principal: false },
    Instance { name: "G2", text: include_str!("../../../../seeds/g2.json"), principal: false },
    Instance { name: "Kronecker", text: include_str!("../../../../seeds/kronecker.json"), principal: false },
    Instance { name: "Markov", text: include_str!("../../../../seeds/markov.json"), principal: true },
    Instance { name: "A3", text: include_str!("../../../../seeds/a3.json"), principal: true },
];

impl Instance {
    pub fn document(&self) -> SeedDocument {
        SeedDocument::parse(self.text).expect("battery documents are valid")
    }
}

pub fn instance(name: &str) -> Option<&'static Instance> {
    BATTERY.iter().find(|i| i.name.eq_ignore_ascii_case(name))
}
