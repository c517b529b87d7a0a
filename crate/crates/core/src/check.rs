//! Exhaustive or sampled scans over basis tuples.
//!
//! Every identity checked in this crate is multilinear, so checking it on
//! basis tuples is enough. Scans run in parallel but always report the
//! lexicographically smallest failing tuple among those examined, so verdicts
//! are deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Default dimension above which tuple scans are sampled.
pub const DEFAULT_SAMPLE_ABOVE: usize = 64;
/// Default number of sampled tuples.
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckPolicy {
    /// Carriers of larger dimension are sampled instead of scanned fully.
    pub sample_above: usize,
    pub budget: usize,
    pub seed: u64,
}

impl Default for CheckPolicy {
    fn default() -> Self {
        CheckPolicy {
            sample_above: DEFAULT_SAMPLE_ABOVE,
            budget: DEFAULT_BUDGET,
            seed: 0,
        }
    }
}

impl CheckPolicy {
    pub fn exhaustive() -> Self {
        CheckPolicy {
            sample_above: usize::MAX,
            ..CheckPolicy::default()
        }
    }

    fn samples(&self, dim: usize, arity: u32) -> Option<usize> {
        let total = dim.checked_pow(arity).unwrap_or(usize::MAX);
        (dim > self.sample_above && total > self.budget).then_some(self.budget)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Coverage {
    Exhaustive,
    Sampled { seed: u64 },
}

/// Outcome of a scan: how many tuples were examined and the first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<V> {
    pub checked: usize,
    pub coverage: Coverage,
    pub violation: Option<V>,
}

impl<V> Verdict<V> {
    pub fn pass(checked: usize) -> Self {
        Verdict {
            checked,
            coverage: Coverage::Exhaustive,
            violation: None,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.violation.is_none()
    }

    pub fn map<W>(self, f: impl FnOnce(V) -> W) -> Verdict<W> {
        Verdict {
            checked: self.checked,
            coverage: self.coverage,
            violation: self.violation.map(f),
        }
    }
}

pub(crate) fn scan_units<V, F>(n: usize, f: F) -> Verdict<V>
where
    V: Send,
    F: Fn(usize) -> Option<V> + Sync,
{
    Verdict {
        checked: n,
        coverage: Coverage::Exhaustive,
        violation: (0..n).into_par_iter().find_map_first(&f),
    }
}

pub(crate) fn scan_pairs<V, F>(dim: usize, policy: &CheckPolicy, f: F) -> Verdict<V>
where
    V: Send,
    F: Fn(usize, usize) -> Option<V> + Sync,
{
    match policy.samples(dim, 2) {
        None => Verdict {
            checked: dim * dim,
            coverage: Coverage::Exhaustive,
            violation: (0..dim)
                .into_par_iter()
                .find_map_first(|i| (0..dim).find_map(|j| f(i, j))),
        },
        Some(budget) => {
            let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
            let mut tuples: Vec<(usize, usize)> = (0..budget)
                .map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim)))
                .collect();
            tuples.sort_unstable();
            tuples.dedup();
            Verdict {
                checked: tuples.len(),
                coverage: Coverage::Sampled { seed: policy.seed },
                violation: tuples.par_iter().find_map_first(|&(i, j)| f(i, j)),
            }
        }
    }
}

pub(crate) fn scan_triples<V, F>(dim: usize, policy: &CheckPolicy, f: F) -> Verdict<V>
where
    V: Send,
    F: Fn(usize, usize, usize) -> Option<V> + Sync,
{
    match policy.samples(dim, 3) {
        None => Verdict {
            checked: dim * dim * dim,
            coverage: Coverage::Exhaustive,
            violation: (0..dim * dim)
                .into_par_iter()
                .find_map_first(|ij| (0..dim).find_map(|k| f(ij / dim, ij % dim, k))),
        },
        Some(budget) => {
            let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
            let mut tuples: Vec<(usize, usize, usize)> = (0..budget)
                .map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim)))
                .collect();
            tuples.sort_unstable();
            tuples.dedup();
            Verdict {
                checked: tuples.len(),
                coverage: Coverage::Sampled { seed: policy.seed },
                violation: tuples.par_iter().find_map_first(|&(i, j, k)| f(i, j, k)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_lexicographically_first_failure() {
        let v = scan_triples(5, &CheckPolicy::default(), |i, j, k| {
            (i + j + k == 6 && j > 0).then_some((i, j, k))
        });
        assert_eq!(v.violation, Some((0, 2, 4)));
        assert_eq!(v.checked, 125);
        assert_eq!(v.coverage, Coverage::Exhaustive);
    }

    #[test]
    fn sampling_kicks_in_above_threshold() {
        let policy = CheckPolicy {
            sample_above: 4,
            budget: 50,
            seed: 7,
        };
        let a = scan_pairs(10, &policy, |_, _| None::<()>);
        assert_eq!(a.coverage, Coverage::Sampled { seed: 7 });
        assert!(a.checked <= 50);
        let b = scan_pairs(10, &policy, |_, _| None::<()>);
        assert_eq!(a, b);
        // Budget covering everything falls back to exhaustive.
        let c = scan_pairs(5, &policy, |_, _| None::<()>);
        assert_eq!(c.coverage, Coverage::Exhaustive);
    }
}
