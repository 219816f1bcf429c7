//! Multi-objective simulated annealing over common-centroid placements.

mod archive;
mod config;
mod initial;

pub use archive::{select_index, select_solution, Archive, Solution};
pub use config::{AcceptanceRule, SaConfig};
pub use initial::{initial_placement, EXHAUSTIVE_ORDER_LIMIT};

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::objectives::{delta_dom, dominates, evaluate, ObjectiveRanges, ObjectiveVector};
use crate::placement::{enumerate_perturbations, GridDims, Netlist, PerturbBounds, Placement};

/// `1 / (1 + exp(delta_avg / temp))`, computed without overflow.
pub fn accept_probability(delta_avg: f64, temp: f64) -> f64 {
    logistic_tail(delta_avg / temp)
}

pub fn accept_probability_with(rule: AcceptanceRule, delta_avg: f64, temp: f64) -> f64 {
    match rule {
        AcceptanceRule::Enhanced => logistic_tail(delta_avg / temp),
        AcceptanceRule::Original => logistic_tail(delta_avg * temp),
    }
}

/// `1 / (1 + exp(x))`
fn logistic_tail(x: f64) -> f64 {
    if x >= 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// Average amount of domination over every (archive member, new point)
/// pair where the member dominates, and every new point `cur` dominates.
pub fn delta_dom_avg(
    cur: &Solution,
    new_pts: &[Solution],
    archive: &Archive,
    ranges: &ObjectiveRanges,
) -> Result<f64> {
    let mut total = 0.0;
    let mut count = 0usize;
    for n in new_pts {
        for a in archive.solutions() {
            if dominates(&a.objectives, &n.objectives) {
                total += delta_dom(&a.objectives, &n.objectives, ranges)?;
                count += 1;
            }
        }
        if dominates(&cur.objectives, &n.objectives) {
            total += delta_dom(&cur.objectives, &n.objectives, ranges)?;
            count += 1;
        }
    }
    if count == 0 {
        return Err(Error::Objective(
            "no domination relation to average over".into(),
        ));
    }
    Ok(total / count as f64)
}

/// Which branch one step took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepCase {
    /// No admissible new point.
    Idle,
    /// The current point dominates some new points.
    CurrentDominates,
    /// No domination either way between the current point and the new points.
    NonDominating,
    /// Some new points dominate the current point.
    Dominated,
}

#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub case: StepCase,
    pub moved: bool,
    pub candidates: usize,
    /// Archive members dropped by this step.
    pub removed: Vec<Solution>,
}

/// State handed to an observer after every step.
#[derive(Debug)]
pub struct StepEvent<'a> {
    pub level: u32,
    pub iteration: u32,
    pub temp: f64,
    pub outcome: &'a StepOutcome,
    pub current: &'a Solution,
    pub archive: &'a Archive,
    pub bounds: PerturbBounds,
}

#[derive(Debug, Clone)]
pub struct AnnealResult {
    pub archive: Archive,
    pub ranges: ObjectiveRanges,
    pub initial: Solution,
    pub bounds: PerturbBounds,
    pub steps: u64,
    pub evaluations: u64,
}

pub struct Annealer<'a> {
    nl: &'a Netlist,
    cfg: SaConfig,
    bounds: PerturbBounds,
    initial: Solution,
    current: Solution,
    archive: Archive,
    ranges: ObjectiveRanges,
    cache: HashMap<Placement, ObjectiveVector>,
}

impl<'a> Annealer<'a> {
    pub fn new(nl: &'a Netlist, dims: GridDims, cfg: SaConfig) -> Result<Self> {
        cfg.validate()?;
        let init = initial_placement(nl, dims)?;
        Annealer::from_initial(nl, init, cfg)
    }

    /// Starts from a given solution. Bounds left unset in `cfg` take its counts.
    pub fn from_initial(nl: &'a Netlist, initial: Solution, cfg: SaConfig) -> Result<Self> {
        cfg.validate()?;
        initial.placement.validate(nl)?;
        let bounds = PerturbBounds {
            db_max: cfg.db_max.unwrap_or(initial.objectives.diffusion_breaks),
            dummy_max: cfg.dummy_max.unwrap_or(initial.objectives.dummy_count),
        };
        let mut archive = Archive::new();
        if initial.objectives.diffusion_breaks <= bounds.db_max
            && initial.objectives.dummy_count <= bounds.dummy_max
        {
            archive.offer(initial.clone());
        }
        let mut cache = HashMap::new();
        cache.insert(initial.placement.clone(), initial.objectives);
        Ok(Annealer {
            nl,
            ranges: ObjectiveRanges::new(&initial.objectives),
            cfg,
            bounds,
            current: initial.clone(),
            initial,
            archive,
            cache,
        })
    }

    pub fn current(&self) -> &Solution {
        &self.current
    }

    pub fn archive(&self) -> &Archive {
        &self.archive
    }

    pub fn ranges(&self) -> &ObjectiveRanges {
        &self.ranges
    }

    pub fn bounds(&self) -> PerturbBounds {
        self.bounds
    }

    fn evaluate(&mut self, p: Placement) -> Result<Solution> {
        let objectives = match self.cache.get(&p) {
            Some(v) => *v,
            None => {
                let v = evaluate(&p, self.nl)?;
                self.cache.insert(p.clone(), v);
                v
            }
        };
        self.ranges.update(&objectives);
        Ok(Solution {
            placement: p,
            objectives,
        })
    }

    /// One perturbation round at temperature `temp`.
    pub fn step<R: Rng + ?Sized>(&mut self, temp: f64, rng: &mut R) -> Result<StepOutcome> {
        let mut placements = enumerate_perturbations(&self.current.placement, self.nl, &self.bounds, rng);
        let mut seen = std::collections::HashSet::new();
        placements.retain(|q| q != &self.current.placement && seen.insert(q.clone()));
        let mut evaluated = Vec::with_capacity(placements.len());
        for q in placements {
            evaluated.push(self.evaluate(q)?);
        }
        let new_pts: Vec<Solution> = evaluated
            .iter()
            .filter(|c| !evaluated.iter().any(|o| dominates(&o.objectives, &c.objectives)))
            .cloned()
            .collect();
        if new_pts.is_empty() {
            return Ok(StepOutcome {
                case: StepCase::Idle,
                moved: false,
                candidates: 0,
                removed: Vec::new(),
            });
        }

        let cur = &self.current.objectives;
        let dominators: Vec<usize> = (0..new_pts.len())
            .filter(|&i| dominates(&new_pts[i].objectives, cur))
            .collect();
        let (case, next) = if !dominators.is_empty() {
            let pick = dominators[rng.random_range(0..dominators.len())];
            (StepCase::Dominated, Some(pick))
        } else {
            let survivors: Vec<usize> = (0..new_pts.len())
                .filter(|&i| !dominates(cur, &new_pts[i].objectives))
                .collect();
            let case = if survivors.len() < new_pts.len() {
                StepCase::CurrentDominates
            } else {
                StepCase::NonDominating
            };
            if survivors.is_empty() {
                (case, None)
            } else {
                let pick = survivors[rng.random_range(0..survivors.len())];
                let accepted = match delta_dom_avg(&self.current, &new_pts, &self.archive, &self.ranges) {
                    Ok(avg) => {
                        let prob = accept_probability_with(self.cfg.acceptance, avg, temp);
                        rng.random::<f64>() < prob
                    }
                    // nothing dominates the new points: they extend the frontier
                    Err(_) => true,
                };
                (case, accepted.then_some(pick))
            }
        };

        let mut removed = Vec::new();
        for s in &new_pts {
            removed.extend(self.archive.offer(s.clone()).1);
        }
        let moved = next.is_some();
        if let Some(i) = next {
            self.current = new_pts[i].clone();
        }
        Ok(StepOutcome {
            case,
            moved,
            candidates: new_pts.len(),
            removed,
        })
    }

    pub fn run(self) -> Result<AnnealResult> {
        self.run_observed(|_| {})
    }

    /// Full schedule; `observe` sees the state after every step.
    pub fn run_observed(mut self, mut observe: impl FnMut(&StepEvent)) -> Result<AnnealResult> {
        let temps: Vec<f64> = self.cfg.temperatures().collect();
        let mut steps = 0u64;
        for (level, temp) in temps.into_iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
            rng.set_stream(level as u64);
            for iteration in 0..self.cfg.iters_per_temp {
                let outcome = self.step(temp, &mut rng)?;
                steps += 1;
                observe(&StepEvent {
                    level: level as u32,
                    iteration,
                    temp,
                    outcome: &outcome,
                    current: &self.current,
                    archive: &self.archive,
                    bounds: self.bounds,
                });
            }
        }
        if self.archive.is_empty() {
            return Err(Error::Infeasible(format!(
                "no placement within {} diffusion breaks and {} dummies was found",
                self.bounds.db_max, self.bounds.dummy_max
            )));
        }
        Ok(AnnealResult {
            archive: self.archive,
            ranges: self.ranges,
            initial: self.initial,
            bounds: self.bounds,
            steps,
            evaluations: self.cache.len() as u64,
        })
    }
}

/// Anneals from the default initial placement and returns the final archive.
pub fn run(nl: &Netlist, dims: GridDims, cfg: SaConfig) -> Result<Archive> {
    Annealer::new(nl, dims, cfg)?.run().map(|r| r.archive)
}
