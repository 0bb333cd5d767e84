//! The bundled example library: class files, models and their expected
//! expansions, embedded at compile time.

use crate::diagnostics::Diagnostic;
use crate::frontend::{load_triple, MemoryLoader, Triple};

macro_rules! file {
    ($name:literal) => {
        ($name, include_str!(concat!("../fixtures/", $name)))
    };
}

macro_rules! golden {
    ($name:literal) => {
        include_str!(concat!("../fixtures/golden/", $name, ".bmodel"))
    };
}

/// Class files, by file name.
pub const CLASS_FILES: &[(&str, &str)] = &[
    file!("catalysis.bclass"),
    file!("hydrolysis.bclass"),
    file!("kinetics.bclass"),
    file!("porin-cls.bclass"),
    file!("porin-psys.bclass"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    /// Text of `<name>.bmodel`.
    pub model: &'static str,
    /// Expected output of expanding the model.
    pub expanded: &'static str,
}

impl Fixture {
    pub fn file_name(&self) -> String {
        format!("{}.bmodel", self.name)
    }

    /// Loads the model with its imports resolved against the bundled class
    /// files.
    pub fn load(&self) -> Result<Triple, Vec<Diagnostic>> {
        load_triple(&loader(), &self.file_name())
    }
}

macro_rules! fixture {
    ($name:literal, $summary:literal) => {
        Fixture {
            name: $name,
            summary: $summary,
            model: include_str!(concat!("../fixtures/", $name, ".bmodel")),
            expanded: golden!($name),
        }
    };
}

const FIXTURES: &[Fixture] = &[
    fixture!("phosphoglucose-isomerase", "enzyme catalysis in both directions"),
    fixture!("lactase-glhyd", "hydrolysis through an overriding glycoside hydrolase"),
    fixture!("michaelis-menten", "reversible binding and release of a product"),
    fixture!("two-substrate", "an enzyme binding two substrates in turn"),
    fixture!("competitive-inhibition", "an inhibitor competing with the substrate"),
    fixture!("aquaporin-cls", "porins moving water and urea across a looping sequence"),
    fixture!("aquaporin-psys", "porins as P-system evolution rules, labels as published"),
    fixture!("aquaporin-psys-sim", "the P-system porins with labels that can be simulated"),
];

pub fn fixtures() -> &'static [Fixture] {
    FIXTURES
}

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// Every bundled file under its own name, for [`load_triple`].
pub fn loader() -> MemoryLoader {
    let models = FIXTURES.iter().map(|f| (f.file_name(), f.model));
    CLASS_FILES
        .iter()
        .map(|&(n, t)| (n.to_owned(), t))
        .chain(models)
        .fold(MemoryLoader::new(), |l, (n, t)| l.with(&n, t))
}
