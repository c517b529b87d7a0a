use std::collections::{HashMap, VecDeque};

use super::FamilyError;

/// Largest `n` for type `A:n`.
pub const MAX_RANK_A: usize = 4;
/// Largest `m` for type `I2:m`.
pub const MAX_DIHEDRAL_M: usize = 12;

/// A group element in a faithful realization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Realized {
    /// Images of `0..=n` for type `A:n`.
    Perm(Vec<u8>),
    /// `ρ^r σ^f` in the dihedral group of order `2m`.
    Dihedral(usize, u8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Realization {
    Permutation(usize),
    Dihedral(usize),
}

impl Realization {
    fn identity(&self) -> Realized {
        match self {
            Realization::Permutation(n) => Realized::Perm((0..=*n as u8).collect()),
            Realization::Dihedral(_) => Realized::Dihedral(0, 0),
        }
    }

    fn generators(&self) -> Vec<Realized> {
        match self {
            Realization::Permutation(n) => (0..*n)
                .map(|i| {
                    let mut p: Vec<u8> = (0..=*n as u8).collect();
                    p.swap(i, i + 1);
                    Realized::Perm(p)
                })
                .collect(),
            Realization::Dihedral(_) => vec![Realized::Dihedral(0, 1), Realized::Dihedral(1, 1)],
        }
    }

    fn mul(&self, a: &Realized, b: &Realized) -> Realized {
        match (self, a, b) {
            (_, Realized::Perm(x), Realized::Perm(y)) => Realized::Perm(y.iter().map(|&k| x[k as usize]).collect()),
            (Realization::Dihedral(m), Realized::Dihedral(r1, f1), Realized::Dihedral(r2, f2)) => {
                let r = if *f1 == 0 { r1 + r2 } else { r1 + m - r2 };
                Realized::Dihedral(r % m, f1 ^ f2)
            }
            _ => unreachable!("elements come from one realization"),
        }
    }
}

/// A finite Coxeter group with lengths, reduced words and multiplication
/// by generators on either side.
///
/// Elements are numbered in breadth-first order from the identity (index 0)
/// under right multiplication by generators taken in order, so lengths are
/// non-decreasing along the numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    descriptor: String,
    rank: usize,
    lengths: Vec<usize>,
    /// Generator indices, 0-based.
    words: Vec<Vec<usize>>,
    /// `left[w * rank + s]` is the index of `s·w`.
    left: Vec<usize>,
    /// `right[w * rank + s]` is the index of `w·s`.
    right: Vec<usize>,
    elements: Vec<Realized>,
    realization: Realization,
    index: HashMap<Realized, usize>,
}

/// `A:n` (`n ≤ 4`, the symmetric group on `n + 1` points) or `I2:m`
/// (`2 ≤ m ≤ 12`, the dihedral group of order `2m`).
pub fn coxeter_system(descriptor: &str) -> Result<CoxeterSystem, FamilyError> {
    let unknown = || FamilyError::UnknownDescriptor(descriptor.to_string());
    let (kind, param) = descriptor.split_once(':').ok_or_else(unknown)?;
    let n: usize = param.parse().map_err(|_| unknown())?;
    let realization = match kind {
        "A" if (1..=MAX_RANK_A).contains(&n) => Realization::Permutation(n),
        "I2" if (2..=MAX_DIHEDRAL_M).contains(&n) => Realization::Dihedral(n),
        "A" => {
            return Err(FamilyError::OutOfRange(format!(
                "{descriptor} (supported: A:1 to A:{MAX_RANK_A})"
            )))
        }
        "I2" => {
            return Err(FamilyError::OutOfRange(format!(
                "{descriptor} (supported: I2:2 to I2:{MAX_DIHEDRAL_M})"
            )))
        }
        _ => return Err(unknown()),
    };
    Ok(CoxeterSystem::build(descriptor.to_string(), realization))
}

impl CoxeterSystem {
    fn build(descriptor: String, realization: Realization) -> Self {
        let gens = realization.generators();
        let rank = gens.len();
        let mut elements = vec![realization.identity()];
        let mut index = HashMap::from([(elements[0].clone(), 0)]);
        let mut lengths = vec![0];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut queue = VecDeque::from([0]);
        while let Some(w) = queue.pop_front() {
            for (s, g) in gens.iter().enumerate() {
                let ws = realization.mul(&elements[w], g);
                if !index.contains_key(&ws) {
                    let k = elements.len();
                    index.insert(ws.clone(), k);
                    elements.push(ws);
                    lengths.push(lengths[w] + 1);
                    let mut word = words[w].clone();
                    word.push(s);
                    words.push(word);
                    queue.push_back(k);
                }
            }
        }
        let find = |x: &Realized| index[x];
        let mut left = Vec::with_capacity(elements.len() * rank);
        let mut right = Vec::with_capacity(elements.len() * rank);
        for w in &elements {
            for g in &gens {
                left.push(find(&realization.mul(g, w)));
                right.push(find(&realization.mul(w, g)));
            }
        }
        CoxeterSystem {
            descriptor,
            rank,
            lengths,
            words,
            left,
            right,
            elements,
            realization,
            index,
        }
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// Number of simple reflections.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Group order.
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn length(&self, w: usize) -> usize {
        self.lengths[w]
    }

    /// A reduced word for `w`, as 0-based generator indices.
    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    /// Index of the simple reflection `s`.
    pub fn generator(&self, s: usize) -> usize {
        self.right[s]
    }

    /// `s·w`.
    pub fn left_mul(&self, s: usize, w: usize) -> usize {
        self.left[w * self.rank + s]
    }

    /// `w·s`.
    pub fn right_mul(&self, w: usize, s: usize) -> usize {
        self.right[w * self.rank + s]
    }

    /// `u·w` in the group.
    pub fn mul(&self, u: usize, w: usize) -> usize {
        self.index[&self.realization.mul(&self.elements[u], &self.elements[w])]
    }

    /// Evaluates a word of generator indices.
    pub fn evaluate(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |w, &s| self.right_mul(w, s))
    }

    pub fn longest_length(&self) -> usize {
        self.lengths.iter().copied().max().unwrap_or(0)
    }

    /// `T[digits]` with 1-based generator digits; the identity is `T[]`.
    pub fn label(&self, w: usize) -> String {
        let digits: String = self.words[w].iter().map(|s| (s + 1).to_string()).collect();
        format!("T[{digits}]")
    }

    /// Parses `s<k>` (1-based) into a generator index.
    pub fn parse_generator(&self, name: &str) -> Option<usize> {
        let k: usize = name.strip_prefix('s')?.parse().ok()?;
        (1..=self.rank).contains(&k).then_some(k - 1)
    }
}
