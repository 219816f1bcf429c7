use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objectives::{dominates, evaluate, ObjectiveVector};
use crate::placement::{Netlist, Placement};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub placement: Placement,
    pub objectives: ObjectiveVector,
}

impl Solution {
    pub fn evaluate(placement: Placement, nl: &Netlist) -> Result<Self> {
        let objectives = evaluate(&placement, nl)?;
        Ok(Solution {
            placement,
            objectives,
        })
    }
}

/// Mutually non-dominated solutions in insertion order, at most one per placement.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Archive {
    solutions: Vec<Solution>,
}

impl Archive {
    pub fn new() -> Self {
        Archive::default()
    }

    pub fn solutions(&self) -> &[Solution] {
        &self.solutions
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn contains_placement(&self, p: &Placement) -> bool {
        self.solutions.iter().any(|s| &s.placement == p)
    }

    /// Adds `s` unless an existing member dominates it or holds the same
    /// placement; members dominated by `s` are dropped and returned.
    pub fn offer(&mut self, s: Solution) -> (bool, Vec<Solution>) {
        if self
            .solutions
            .iter()
            .any(|m| m.placement == s.placement || dominates(&m.objectives, &s.objectives))
        {
            return (false, Vec::new());
        }
        let (removed, kept) = std::mem::take(&mut self.solutions)
            .into_iter()
            .partition(|m| dominates(&s.objectives, &m.objectives));
        self.solutions = kept;
        self.solutions.push(s);
        (true, removed)
    }

    /// No member dominates another.
    pub fn is_non_dominated(&self) -> bool {
        self.solutions.iter().all(|a| {
            self.solutions
                .iter()
                .all(|b| !dominates(&a.objectives, &b.objectives))
        })
    }

    /// Members ordered by objective vector, then by placement layout.
    pub fn sorted(&self) -> Vec<Solution> {
        let mut v = self.solutions.clone();
        v.sort_by(|a, b| {
            a.objectives
                .lex_cmp(&b.objectives)
                .then_with(|| a.placement.slots().cmp(&b.placement.slots()))
        });
        v
    }
}

impl FromIterator<Solution> for Archive {
    fn from_iter<I: IntoIterator<Item = Solution>>(iter: I) -> Self {
        let mut a = Archive::new();
        for s in iter {
            a.offer(s);
        }
        a
    }
}

/// Index of the member minimizing the weighted sum of min-max normalized
/// objectives. A column with no spread normalizes to 0. Ties go to the
/// lexicographically smallest objective vector, then the earliest member.
pub fn select_index(archive: &Archive, weights: &[f64; 5]) -> Result<usize> {
    let sols = archive.solutions();
    if sols.is_empty() {
        return Err(Error::EmptyArchive);
    }
    let cols: Vec<[f64; 5]> = sols.iter().map(|s| s.objectives.as_array()).collect();
    let mut lo = [f64::INFINITY; 5];
    let mut hi = [f64::NEG_INFINITY; 5];
    for c in &cols {
        for i in 0..5 {
            lo[i] = lo[i].min(c[i]);
            hi[i] = hi[i].max(c[i]);
        }
    }
    let score = |c: &[f64; 5]| -> f64 {
        (0..5)
            .map(|i| {
                let span = hi[i] - lo[i];
                let norm = if span > 0.0 { (c[i] - lo[i]) / span } else { 0.0 };
                weights[i] * norm
            })
            .sum()
    };
    let scores: Vec<f64> = cols.iter().map(score).collect();
    let best = (0..sols.len())
        .min_by(|&a, &b| {
            scores[a]
                .total_cmp(&scores[b])
                .then_with(|| sols[a].objectives.lex_cmp(&sols[b].objectives))
        })
        .expect("non-empty");
    Ok(best)
}

pub fn select_solution<'a>(archive: &'a Archive, weights: &[f64; 5]) -> Result<&'a Solution> {
    select_index(archive, weights).map(|i| &archive.solutions()[i])
}
