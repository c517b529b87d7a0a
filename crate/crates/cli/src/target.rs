//! Resolving a command-line target: a builtin family or an algebra file.

use std::path::Path;

use rbx_core::document::AlgebraSpecDocument;
use rbx_core::expr::parse_element_with;
use rbx_core::families::{build_family, FamilyError};
use rbx_core::{CheckPolicy, Element, FiniteDimAlgebra, HopfAlgebra};

use crate::CliError;

pub struct Target {
    pub name: String,
    pub algebra: FiniteDimAlgebra,
    pub hopf: Option<HopfAlgebra>,
    /// Elements usable by name in expressions, e.g. `xi` or `C[s1]`.
    pub named: Vec<(String, Element)>,
}

const FAMILY_HEADS: [&str; 4] = ["sweedler", "group", "uqsl2", "hecke"];

impl Target {
    pub fn load(spec: &str, policy: &CheckPolicy) -> Result<Target, CliError> {
        let head = spec.split(':').next().unwrap_or_default();
        if FAMILY_HEADS.contains(&head) && !Path::new(spec).is_file() {
            let fam = build_family(spec, policy).map_err(|e| match e {
                FamilyError::AxiomFailure { .. } => CliError::Verdict(e.to_string()),
                other => CliError::Input(other.to_string()),
            })?;
            return Ok(Target {
                name: spec.to_string(),
                algebra: fam.algebra().clone(),
                hopf: fam.hopf().cloned(),
                named: fam.named().to_vec(),
            });
        }
        let text = std::fs::read_to_string(spec).map_err(|e| {
            CliError::Input(format!(
                "{spec:?} is neither a family descriptor nor a readable file ({e}); families: {}",
                rbx_core::families::DESCRIPTORS.join(", ")
            ))
        })?;
        let input = |e: rbx_core::document::DocumentError| CliError::Input(format!("{spec}: {e}"));
        let doc = AlgebraSpecDocument::parse(&text).map_err(input)?;
        let algebra = doc.to_algebra().map_err(input)?;
        let hopf = doc.to_hopf().map_err(input)?;
        Ok(Target {
            name: spec.to_string(),
            algebra,
            hopf,
            named: Vec::new(),
        })
    }

    pub fn require_hopf(&self) -> Result<&HopfAlgebra, CliError> {
        self.hopf.as_ref().ok_or_else(|| {
            CliError::Input(format!(
                "{} has no Hopf structure (coproduct, counit and antipode are required)",
                self.name
            ))
        })
    }

    pub fn parse_element(&self, text: &str) -> Result<Element, CliError> {
        let lookup = |name: &str| self.named.iter().find(|(n, _)| n == name).map(|(_, e)| e.clone());
        parse_element_with(&self.algebra, text, &lookup).map_err(|e| CliError::Input(format!("{text:?}: {e}")))
    }

    pub fn ring_text(&self) -> String {
        self.algebra.ring().to_string()
    }
}
