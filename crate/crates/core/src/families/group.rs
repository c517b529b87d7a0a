use crate::algebra::{Basis, Element, FiniteDimAlgebra, StructureConstants};
use crate::hopf::HopfAlgebra;
use crate::linalg::Matrix;
use crate::scalar::{Scalar, ScalarRing};

use super::FamilyError;

/// Largest order accepted by [`builtin_group`].
pub const MAX_GROUP_ORDER: usize = 120;

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    /// `table[a * n + b]` is the index of `ab`.
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, the identity and inverses.
    pub fn new(names: Vec<String>, table: Vec<usize>) -> Result<Self, FamilyError> {
        let n = names.len();
        let bad = |msg: String| Err(FamilyError::InvalidGroup(msg));
        if n == 0 {
            return bad("empty group".into());
        }
        if table.len() != n * n {
            return bad(format!("Cayley table has {} entries, expected {}", table.len(), n * n));
        }
        if let Some(&x) = table.iter().find(|&&x| x >= n) {
            return bad(format!("table entry {x} out of range"));
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return bad(format!("not associative at ({}, {}, {})", names[a], names[b], names[c]));
                    }
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a)) else {
            return bad("no identity element".into());
        };
        let mut inverses = Vec::with_capacity(n);
        for (a, name) in names.iter().enumerate() {
            match (0..n).find(|&b| mul(a, b) == identity && mul(b, a) == identity) {
                Some(b) => inverses.push(b),
                None => return bad(format!("{name} has no inverse")),
            }
        }
        Ok(FiniteGroup {
            names,
            table,
            identity,
            inverses,
        })
    }

    /// Builds the table from a faithful realization closed under `op`.
    fn from_elements<T: PartialEq>(
        names: Vec<String>,
        elements: &[T],
        op: impl Fn(&T, &T) -> T,
    ) -> Result<Self, FamilyError> {
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in elements {
            for b in elements {
                let ab = op(a, b);
                let k = elements
                    .iter()
                    .position(|x| *x == ab)
                    .ok_or_else(|| FamilyError::InvalidGroup("realization not closed".into()))?;
                table.push(k);
            }
        }
        FiniteGroup::new(names, table)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}{k}"),
    }
}

/// `cyclic:n`, `dihedral:m` (order `2m`) or `symmetric:n` (`n ≤ 5`).
///
/// Names: cyclic elements are `e, g, g2, …`; dihedral elements are
/// `r^k s^f` written `e, r, r2, …, s, rs, r2s, …`; permutations are written
/// in one-line notation such as `p213`, with the identity named `e`.
pub fn builtin_group(name: &str) -> Result<FiniteGroup, FamilyError> {
    let unknown = || FamilyError::UnknownDescriptor(format!("group:{name}"));
    let (kind, param) = name.split_once(':').ok_or_else(unknown)?;
    let n: usize = param.parse().map_err(|_| unknown())?;
    let range = |what: &str| FamilyError::OutOfRange(format!("{what} (order must be between 1 and {MAX_GROUP_ORDER})"));
    match kind {
        "cyclic" => {
            if n == 0 || n > MAX_GROUP_ORDER {
                return Err(range(&format!("cyclic:{n}")));
            }
            let names = (0..n)
                .map(|k| if k == 0 { "e".into() } else { power_name("g", k) })
                .collect();
            let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
            FiniteGroup::new(names, table)
        }
        "dihedral" => {
            if n == 0 || 2 * n > MAX_GROUP_ORDER {
                return Err(range(&format!("dihedral:{n}")));
            }
            let elements: Vec<(usize, usize)> = (0..2).flat_map(|f| (0..n).map(move |r| (r, f))).collect();
            let names = elements
                .iter()
                .map(|&(r, f)| match (r, f) {
                    (0, 0) => "e".to_string(),
                    (r, 0) => power_name("r", r),
                    (r, _) => format!("{}s", power_name("r", r)),
                })
                .collect();
            FiniteGroup::from_elements(names, &elements, |&(r1, f1), &(r2, f2)| {
                let r = if f1 == 0 { r1 + r2 } else { r1 + n - r2 };
                (r % n, f1 ^ f2)
            })
        }
        "symmetric" => {
            if n == 0 || n > 5 {
                return Err(FamilyError::OutOfRange(format!("symmetric:{n} (supported: 1 to 5)")));
            }
            let elements = permutations(n);
            let names = elements
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    if k == 0 {
                        "e".to_string()
                    } else {
                        format!("p{}", p.iter().map(|i| (i + 1).to_string()).collect::<String>())
                    }
                })
                .collect();
            FiniteGroup::from_elements(names, &elements, |a, b| b.iter().map(|&k| a[k]).collect::<Vec<_>>())
        }
        _ => Err(unknown()),
    }
}

/// All permutations of `0..n` in lexicographic order (identity first).
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The group algebra over the rationals with `Δ(g) = g ⊗ g`, `ε(g) = 1`,
/// `S(g) = g⁻¹`.
pub fn group_algebra(g: &FiniteGroup) -> Result<HopfAlgebra, FamilyError> {
    let n = g.order();
    let ring = ScalarRing::Rational;
    let basis = Basis::new(g.names().iter().cloned())?;
    let sc = StructureConstants::from_fn(n, |a, b| vec![(g.mul(a, b), Scalar::one())])?;
    let unit = Element::basis(n, g.identity());
    let algebra = FiniteDimAlgebra::new(basis, sc, unit, ring.clone())?;
    let coproduct = (0..n).map(|a| vec![(a, a, Scalar::one())]).collect();
    let counit = vec![Scalar::one(); n];
    let mut antipode = Matrix::zeros(&ring, n, n);
    for a in 0..n {
        antipode.set(g.inverse(a), a, Scalar::one());
    }
    Ok(HopfAlgebra::new(algebra, coproduct, counit, antipode)?)
}

/// `Σ_g g`.
pub fn group_sum(g: &FiniteGroup) -> Element {
    Element::new(vec![Scalar::one(); g.order()])
}
