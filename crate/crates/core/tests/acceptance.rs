//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ccplace::amosa::{accept_probability, Annealer, SaConfig};
use ccplace::cli_io::{self, RunReport};
use ccplace::objectives::{
    delta_dom_slice, dispersion_ratio, dominates, evaluate, rmst, steiner_cost, ObjectiveVector,
    Point,
};
use ccplace::oracle::{cc_enumerate, dispersion_oracle, steiner_oracle, OracleBudget};
use ccplace::placement::{is_cc, GridDims, Placement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPS: f64 = 1e-12;
const SEED: u64 = 2024;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn formula_fidelity() -> Verdict {
    let start = Instant::now();
    let budget = OracleBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut mismatches = 0;
    let n = 400;
    for i in 0..n {
        let rows = rng.random_range(1..=4);
        let cols = rng.random_range(2..=8);
        let k = rng.random_range(2..=5);
        let inst = if i % 2 == 0 {
            common::random_cc(rng.random(), rows, cols, k)
        } else {
            common::random_any(rng.random(), rows, cols, k)
        };
        if dispersion_ratio(&inst.placement).unwrap() != dispersion_oracle(&inst.placement, &budget).unwrap()
        {
            mismatches += 1;
        }
    }
    let t = start.elapsed();
    verdict(
        mismatches == 0 && t < Duration::from_secs(5),
        format!("{n} grids, {mismatches} mismatches, {:.2} s (limit 5 s)", t.as_secs_f64()),
    )
}

fn domination_arithmetic() -> Verdict {
    let cases = [
        ([0.0, 0.0], [1.0, 1.0], [1.0, 1.0], 1.0),
        ([1.0, 2.0], [2.0, 4.0], [1.0, 2.0], 1.0),
        ([0.0, 5.0], [1.0, 5.0], [2.0, 10.0], 0.5),
    ];
    let mut worst: f64 = 0.0;
    for (a, b, r, want) in cases {
        worst = worst.max((delta_dom_slice(&a, &b, &r).unwrap() - want).abs());
    }
    let e = std::f64::consts::E;
    for t in [1e-7, 1e-3, 0.37, 1.0, 42.0, 100.0, 1e9] {
        worst = worst.max((accept_probability(0.0, t) - 0.5).abs());
        worst = worst.max((accept_probability(t, t) - 1.0 / (1.0 + e)).abs());
    }
    verdict(worst <= EPS, format!("max deviation {worst:.1e} (tolerance 1e-12)"))
}

fn steiner_sandwich() -> Verdict {
    let start = Instant::now();
    let budget = OracleBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut nets: Vec<Vec<Point>> = vec![vec![Point::new(0, 0), Point::new(4, 0), Point::new(2, 2)]];
    while nets.len() < 600 {
        let k = rng.random_range(1..=4);
        let mut pins: Vec<Point> = Vec::new();
        while pins.len() < k {
            let p = Point::new(rng.random_range(0..10), rng.random_range(0..10));
            if !pins.contains(&p) {
                pins.push(p);
            }
        }
        nets.push(pins);
    }
    let (mut violations, mut strict) = (0, 0);
    for pins in &nets {
        let exact = steiner_oracle(pins, &budget).unwrap();
        let heuristic = steiner_cost(pins);
        let tree = rmst(pins).total_weight();
        if !(exact <= heuristic && heuristic <= tree) {
            violations += 1;
        }
        if heuristic < tree {
            strict += 1;
        }
    }
    let t = start.elapsed();
    verdict(
        violations == 0 && strict > 0 && t < Duration::from_secs(30),
        format!(
            "{} nets, {violations} violations, {strict} strict improvements, {:.2} s (limit 30 s)",
            nets.len(),
            t.as_secs_f64()
        ),
    )
}

fn cc_soundness() -> Verdict {
    let mut instances: Vec<(String, ccplace::Netlist, GridDims, SaConfig)> = Vec::new();
    let pair = common::pair_netlist();
    instances.push((
        "pair unbounded".into(),
        pair,
        GridDims::new(2, 4).unwrap(),
        SaConfig {
            db_max: Some(u32::MAX),
            dummy_max: Some(u32::MAX),
            ..SaConfig::with_seed(SEED)
        },
    ));
    for id in ["mirrors/CM:3", "mixed/CDLP:1"] {
        let b = &cli_io::suite(id).unwrap()[0];
        let (nl, grid) = b.build().unwrap();
        instances.push((id.into(), nl.clone(), grid, SaConfig::with_seed(SEED)));
        instances.push((
            format!("{id} loose"),
            nl,
            grid,
            SaConfig {
                db_max: Some(4),
                dummy_max: Some(8),
                ..SaConfig::with_seed(SEED)
            },
        ));
    }
    let mut steps = 0u64;
    let mut failures = Vec::new();
    for (name, nl, grid, cfg) in &instances {
        let mut removed: Vec<ObjectiveVector> = Vec::new();
        let mut bad = 0u64;
        let result = Annealer::new(nl, *grid, cfg.clone())
            .unwrap()
            .run_observed(|ev| {
                steps += 1;
                removed.extend(ev.outcome.removed.iter().map(|s| s.objectives));
                let sound = ev.archive.is_non_dominated()
                    && ev.archive.solutions().iter().all(|s| {
                        is_cc(&s.placement)
                            && ev.bounds.admits(&s.placement, nl)
                            && evaluate(&s.placement, nl).unwrap() == s.objectives
                    });
                if !sound {
                    bad += 1;
                }
            })
            .unwrap();
        let beaten = result
            .archive
            .solutions()
            .iter()
            .filter(|s| removed.iter().any(|r| dominates(r, &s.objectives)))
            .count();
        if bad > 0 || beaten > 0 {
            failures.push(format!("{name}: {bad} unsound steps, {beaten} members beaten by removed points"));
        }
    }
    verdict(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} runs, {steps} steps checked", instances.len())
        } else {
            failures.join("; ")
        },
    )
}

/// Runs each benchmark with the default schedule; returns (id, best breaks/dummies, seconds).
fn bench_runs(ids: &[&str]) -> Vec<(String, (u32, u32), f64)> {
    ids.iter()
        .map(|id| {
            let b = &cli_io::suite(id).unwrap()[0];
            let start = Instant::now();
            let (row, _) = cli_io::run_benchmark(b, &SaConfig::with_seed(SEED)).unwrap();
            (row.id, row.best_breaks_dummies, start.elapsed().as_secs_f64())
        })
        .collect()
}

fn mirrors_feasibility() -> Verdict {
    let runs = bench_runs(&["mirrors/CM:1", "mirrors/CM:2", "mirrors/CM:3", "mirrors/CM:4", "mirrors/CM:5"]);
    let pass = runs.iter().all(|(_, bd, s)| *bd == (0, 0) && *s <= 300.0);
    let detail = runs
        .iter()
        .map(|(id, bd, s)| format!("{id} {}/{} in {s:.2} s", bd.0, bd.1))
        .collect::<Vec<_>>()
        .join(", ");
    verdict(pass, detail)
}

fn mixed_direction() -> Verdict {
    let runs = bench_runs(&["mixed/CDIP:1", "mixed/CDLP:2"]);
    let (cdip, cdlp) = (&runs[0], &runs[1]);
    let pass = cdip.1 == (0, 0) && cdlp.1 .0 <= 2 && cdlp.1 .1 <= 4 && runs.iter().all(|r| r.2 <= 300.0);
    verdict(
        pass,
        format!(
            "{} {}/{} (need 0/0), {} {}/{} (need <=2/<=4)",
            cdip.0, cdip.1 .0, cdip.1 .1, cdlp.0, cdlp.1 .0, cdlp.1 .1
        ),
    )
}

fn small_instance_frontier() -> Verdict {
    let nl = common::pair_netlist();
    let dims = GridDims::new(2, 4).unwrap();
    let all = cc_enumerate(&nl, dims, &OracleBudget::default()).unwrap();
    let vectors: Vec<ObjectiveVector> = all.iter().map(|p| evaluate(p, &nl).unwrap()).collect();
    let frontier: Vec<ObjectiveVector> = vectors
        .iter()
        .filter(|v| !vectors.iter().any(|o| dominates(o, v)))
        .copied()
        .collect();
    let cfg = SaConfig {
        db_max: Some(u32::MAX),
        dummy_max: Some(u32::MAX),
        ..SaConfig::with_seed(SEED)
    };
    let archive = Annealer::new(&nl, dims, cfg).unwrap().run().unwrap().archive;
    let off = archive
        .solutions()
        .iter()
        .filter(|s| !frontier.contains(&s.objectives))
        .count();

    let topo = |rows: [&str; 2]| evaluate(&Placement::from_rows(&nl, &rows).unwrap(), &nl).unwrap();
    let t = [
        topo(["ABAB", "BABA"]),
        topo(["AABB", "BBAA"]),
        topo(["ABBA", "ABBA"]),
        topo(["ABBA", "BAAB"]),
    ];
    let disp: Vec<f64> = t.iter().map(|v| v.dispersion()).collect();
    let max_disp = vectors.iter().map(|v| v.dispersion()).fold(f64::MIN, f64::max);
    let min_disp = vectors.iter().map(|v| v.dispersion()).fold(f64::MAX, f64::min);
    let min_route = vectors.iter().map(|v| v.routing_cost).min().unwrap();
    let dispersion_order = disp[0] == max_disp && disp[2] == min_disp;
    let routing_order = t[1].routing_cost == min_route
        && t[2].routing_cost == min_route
        && t[0].routing_cost > min_route
        && t[3].routing_cost > min_route;
    let lde_order = t[2].lde_mismatch > 0.0 && [0, 1, 3].iter().all(|&i| t[i].lde_mismatch == 0.0);
    verdict(
        off == 0 && dispersion_order && routing_order && lde_order,
        format!(
            "{} CC placements, frontier {}, archive {} ({off} off-frontier); dispersion {:?}; routing {:?}; lde {:?}",
            all.len(),
            frontier.len(),
            archive.len(),
            disp,
            t.iter().map(|v| v.routing_cost).collect::<Vec<_>>(),
            t.iter().map(|v| (v.lde_mismatch * 1e4).round() / 1e4).collect::<Vec<_>>(),
        ),
    )
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let b = &cli_io::suite("mirrors/CM:3").unwrap()[0];
    let netlist = dir.path().join("cm3.json");
    std::fs::write(&netlist, serde_json::to_string(&b.netlist).unwrap()).unwrap();
    let mut outputs = Vec::new();
    for name in ["first.json", "second.json"] {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_ccplace"))
            .args(["place", netlist.to_str().unwrap(), "--seed", "31", "--db-max", "4", "--dummy-max", "8"])
            .arg("--out")
            .arg(&out)
            .env_remove("CCPLACE_SEED")
            .output()
            .unwrap()
            .status;
        if !status.success() {
            return verdict(false, "ccplace place failed");
        }
        outputs.push(std::fs::read(&out).unwrap());
    }
    let same = outputs[0] == outputs[1];
    let parsed = RunReport::from_json(std::str::from_utf8(&outputs[0]).unwrap()).unwrap();
    verdict(
        same,
        format!("{} bytes, {} archived solutions, identical: {same}", outputs[0].len(), parsed.archive.len()),
    )
}

fn main() -> ExitCode {
    type Check = (&'static str, fn() -> Verdict);
    let criteria: [Check; 8] = [
        ("dispersion equals edge-list oracle", formula_fidelity),
        ("domination amount and acceptance probability", domination_arithmetic),
        ("Steiner heuristic between exact optimum and spanning tree", steiner_sandwich),
        ("archives are common-centroid, bounded, non-dominated", cc_soundness),
        ("current-mirror set reaches 0 breaks and 0 dummies", mirrors_feasibility),
        ("differential pairs meet break and dummy targets", mixed_direction),
        ("two-device array: frontier and topology ordering", small_instance_frontier),
        ("identical seeds give identical reports", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} - {name}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
