//! Builders for the example families: group algebras, the four-dimensional
//! Sweedler algebra, small quantum groups of `sl(2)`, and Iwahori-Hecke
//! algebras of finite Coxeter groups.
//!
//! Every builder certifies its output (associativity, unit, and the Hopf
//! axioms where they apply) and reports the first failure instead of
//! returning an unchecked structure.

mod coxeter;
mod group;
mod hecke;
mod quantum;
mod sweedler;

use thiserror::Error;

pub use coxeter::{coxeter_system, CoxeterSystem, MAX_DIHEDRAL_M, MAX_RANK_A};
pub use group::{builtin_group, group_algebra, group_sum, FiniteGroup, MAX_GROUP_ORDER};
pub use hecke::{hecke_algebra, hecke_specialize, HeckeAlgebra};
pub use quantum::{uq_left_integral, uq_sl2_bar, QuantumGroup, QuantumGroupParams, MAX_E};
pub use sweedler::{sweedler, sweedler_family_element};

use crate::algebra::{AlgebraError, Element, FiniteDimAlgebra};
use crate::check::CheckPolicy;
use crate::hopf::{HopfAlgebra, HopfError};
use crate::linalg::LinalgError;
use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family descriptor {0:?}")]
    UnknownDescriptor(String),
    #[error("unsupported parameter: {0}")]
    OutOfRange(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("the element is zero")]
    ZeroElement,
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("{family}: {check} check failed: {detail}")]
    AxiomFailure {
        family: String,
        check: String,
        detail: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

fn failure(family: &str, check: &str, detail: String) -> FamilyError {
    FamilyError::AxiomFailure {
        family: family.to_string(),
        check: check.to_string(),
        detail,
    }
}

pub(crate) fn self_check_algebra(
    family: &str,
    alg: &FiniteDimAlgebra,
    policy: &CheckPolicy,
) -> Result<(), FamilyError> {
    if let Some((i, j, k)) = alg.check_associativity(policy).violation {
        let detail = format!("({}, {}, {})", alg.label(i), alg.label(j), alg.label(k));
        return Err(failure(family, "associativity", detail));
    }
    if let Some(i) = alg.check_unit().violation {
        return Err(failure(family, "unit", alg.label(i).to_string()));
    }
    Ok(())
}

pub(crate) fn self_check(family: &str, h: &HopfAlgebra, policy: &CheckPolicy) -> Result<(), FamilyError> {
    self_check_algebra(family, h.algebra(), policy)?;
    if let Some(detail) = h.check_all(policy).first_failure(h.algebra().basis()) {
        return Err(failure(family, "Hopf", detail));
    }
    Ok(())
}

/// The structure behind a built family.
#[derive(Clone, Debug)]
pub enum FamilyKind {
    Sweedler(HopfAlgebra),
    Group(FiniteGroup, HopfAlgebra),
    Quantum(QuantumGroup),
    Hecke(HeckeAlgebra),
}

/// A certified family instance plus its distinguished named elements.
#[derive(Clone, Debug)]
pub struct BuiltFamily {
    descriptor: String,
    kind: FamilyKind,
    named: Vec<(String, Element)>,
}

impl BuiltFamily {
    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn algebra(&self) -> &FiniteDimAlgebra {
        match &self.kind {
            FamilyKind::Sweedler(h) | FamilyKind::Group(_, h) => h.algebra(),
            FamilyKind::Quantum(g) => g.algebra(),
            FamilyKind::Hecke(h) => h.algebra(),
        }
    }

    pub fn hopf(&self) -> Option<&HopfAlgebra> {
        match &self.kind {
            FamilyKind::Sweedler(h) | FamilyKind::Group(_, h) => Some(h),
            FamilyKind::Quantum(g) => Some(g.hopf()),
            FamilyKind::Hecke(_) => None,
        }
    }

    /// Named elements usable in expressions, e.g. `xi` or `C[s1]`.
    pub fn named(&self) -> &[(String, Element)] {
        &self.named
    }

    pub fn named_element(&self, name: &str) -> Option<Element> {
        self.named.iter().find(|(n, _)| n == name).map(|(_, e)| e.clone())
    }
}

/// Every accepted descriptor shape, for help texts.
pub const DESCRIPTORS: &[&str] = &[
    "sweedler",
    "group:cyclic:<n>",
    "group:symmetric:<n>",
    "group:dihedral:<m>",
    "uqsl2:<d>",
    "hecke:A:<n>",
    "hecke:I2:<m>",
];

/// Builds and certifies a family from its descriptor.
///
/// Named elements: groups expose `xi` (the sum of all elements); quantum
/// groups expose `E`, `F`, `K`, `Kinv` and the left integral `xi`; Hecke
/// algebras expose `C[s1]`, `C[s2]`, ….
pub fn build_family(descriptor: &str, policy: &CheckPolicy) -> Result<BuiltFamily, FamilyError> {
    let unknown = || FamilyError::UnknownDescriptor(descriptor.to_string());
    let (head, rest) = descriptor.split_once(':').unwrap_or((descriptor, ""));
    let (kind, named) = match head {
        "sweedler" if rest.is_empty() => {
            let h = sweedler();
            self_check(descriptor, &h, policy)?;
            (FamilyKind::Sweedler(h), vec![])
        }
        "group" => {
            let g = builtin_group(rest)?;
            let h = group_algebra(&g)?;
            self_check(descriptor, &h, policy)?;
            let named = vec![("xi".to_string(), group_sum(&g))];
            (FamilyKind::Group(g, h), named)
        }
        "uqsl2" => {
            let d: u32 = rest.parse().map_err(|_| unknown())?;
            let g = uq_sl2_bar(d, policy)?;
            let named = vec![
                ("E".to_string(), g.e()),
                ("F".to_string(), g.f()),
                ("K".to_string(), g.k()),
                ("Kinv".to_string(), g.k_inv()),
                ("xi".to_string(), g.left_integral()?),
            ];
            (FamilyKind::Quantum(g), named)
        }
        "hecke" => {
            let w = coxeter_system(rest)?;
            let h = hecke_algebra(&w, policy)?;
            let named = (0..w.rank())
                .map(|s| Ok((format!("C[s{}]", s + 1), h.kl_generator(s)?)))
                .collect::<Result<Vec<_>, FamilyError>>()?;
            (FamilyKind::Hecke(h), named)
        }
        _ => return Err(unknown()),
    };
    Ok(BuiltFamily {
        descriptor: descriptor.to_string(),
        kind,
        named,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_build() {
        let policy = CheckPolicy::default();
        for (desc, dim) in [
            ("sweedler", 4),
            ("group:cyclic:3", 3),
            ("group:symmetric:3", 6),
            ("group:dihedral:4", 8),
            ("hecke:A:2", 6),
            ("hecke:I2:4", 8),
            ("uqsl2:3", 27),
        ] {
            let f = build_family(desc, &policy).unwrap();
            assert_eq!(f.algebra().dim(), dim, "{desc}");
        }
    }

    #[test]
    fn bad_descriptors() {
        let policy = CheckPolicy::default();
        for desc in ["", "sweedler:2", "uqsl2:x", "group", "hecke:C:3", "matrix:2"] {
            assert!(build_family(desc, &policy).is_err(), "{desc}");
        }
        assert!(matches!(
            build_family("uqsl2:2", &policy),
            Err(FamilyError::OutOfRange(_))
        ));
    }

    #[test]
    fn hecke_named_elements() {
        let f = build_family("hecke:A:2", &CheckPolicy::default()).unwrap();
        assert!(f.named_element("C[s1]").is_some());
        assert!(f.named_element("C[s2]").is_some());
        assert!(f.named_element("C[s3]").is_none());
        assert!(f.hopf().is_none());
    }
}
