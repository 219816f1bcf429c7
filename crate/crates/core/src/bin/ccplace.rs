use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use ccplace::amosa::{Annealer, SaConfig};
use ccplace::cli_io::{self, NetlistFile, RunReport};
use ccplace::placement::GridDims;
use ccplace::{Error, Result};

#[derive(Parser)]
#[command(name = "ccplace", version, about = "Common-centroid placement by multi-objective annealing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize a netlist and print the selected placement.
    Place(PlaceArgs),
    /// Run a bundled benchmark suite and print a comparison table.
    Bench(BenchArgs),
    /// Print a placement stored in a report.
    Render {
        report: PathBuf,
        /// Archive index; defaults to the selected solution.
        #[arg(long)]
        solution: Option<usize>,
    },
}

#[derive(clap::Args)]
struct Schedule {
    #[arg(long, env = "CCPLACE_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100.0)]
    tmax: f64,
    #[arg(long, default_value_t = 1e-7)]
    tmin: f64,
    #[arg(long, default_value_t = 0.37)]
    alpha: f64,
    #[arg(long, default_value_t = 100)]
    iters: u32,
    /// Upper bound on diffusion breaks (default: the initial placement's count).
    #[arg(long)]
    db_max: Option<u32>,
    /// Upper bound on dummies (default: the initial placement's count).
    #[arg(long)]
    dummy_max: Option<u32>,
    /// Selection weights for dispersion, LDE, routing, breaks, dummies.
    #[arg(long, num_args = 5, value_names = ["W1", "W2", "W3", "W4", "W5"])]
    weights: Option<Vec<f64>>,
}

impl Schedule {
    fn config(&self) -> SaConfig {
        let mut cfg = SaConfig {
            t_max: self.tmax,
            t_min: self.tmin,
            alpha: self.alpha,
            iters_per_temp: self.iters,
            db_max: self.db_max,
            dummy_max: self.dummy_max,
            seed: self.seed,
            ..SaConfig::default()
        };
        if let Some(w) = &self.weights {
            cfg.selection_weights.copy_from_slice(w);
        }
        cfg
    }
}

#[derive(clap::Args)]
struct PlaceArgs {
    netlist: PathBuf,
    #[arg(long, requires = "cols")]
    rows: Option<u32>,
    #[arg(long, requires = "rows")]
    cols: Option<u32>,
    #[command(flatten)]
    schedule: Schedule,
    /// Write the full report as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// mirrors, mixed, standard, toy, all, or one id such as mixed/CDIP:1
    #[arg(long, default_value = "standard")]
    suite: String,
    #[command(flatten)]
    schedule: Schedule,
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn place(args: &PlaceArgs) -> Result<()> {
    let file = NetlistFile::parse(&read(&args.netlist)?)?;
    let nl = file.build()?;
    let grid = match (args.rows, args.cols) {
        (Some(r), Some(c)) => GridDims::for_netlist(r, c, &nl)?,
        _ => match file.grid_for(&nl)? {
            Some(g) => g,
            None => GridDims::default_for(nl.total_units())?,
        },
    };
    let cfg = args.schedule.config();
    let start = Instant::now();
    let result = Annealer::new(&nl, grid, cfg.clone())?.run()?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let mut report = RunReport::new(&nl, grid, &cfg, &result)?;
    if args.timing {
        report.wall_clock_ms = Some(elapsed);
    }
    eprintln!("annealed {grid} grid in {elapsed:.1} ms, {} solutions", report.archive.len());
    let chosen = &report.archive[report.selected];
    println!("{}", chosen.layout.join("\n"));
    let o = &chosen.objectives;
    println!(
        "dispersion {:.4}  lde {:.4}  routing {}  breaks {}  dummies {}",
        o.dispersion(),
        o.lde_mismatch,
        o.routing_cost,
        o.diffusion_breaks,
        o.dummy_count
    );
    if let Some(out) = &args.out {
        std::fs::write(out, report.to_json())
            .map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    }
    Ok(())
}

fn bench(args: &BenchArgs) -> Result<()> {
    let list = cli_io::suite(&args.suite)?;
    let cfg = args.schedule.config();
    let mut rows = Vec::new();
    for b in &list {
        let start = Instant::now();
        let (row, _) = cli_io::run_benchmark(b, &cfg)?;
        eprintln!("{}: {:.1} s", row.id, start.elapsed().as_secs_f64());
        rows.push(row);
    }
    print!("{}", cli_io::format_table(&rows));
    Ok(())
}

fn render(report: &PathBuf, solution: Option<usize>) -> Result<()> {
    let r = RunReport::from_json(&read(report)?)?;
    let k = solution.unwrap_or(r.selected);
    let entry = r.archive.get(k).ok_or_else(|| {
        Error::Io(format!("solution {k} out of range ({} in archive)", r.archive.len()))
    })?;
    let nl = r.netlist()?;
    println!("{}", cli_io::render_with_netlist(&entry.placement, &nl));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match &cli.command {
        Command::Place(a) => place(a),
        Command::Bench(a) => bench(a),
        Command::Render { report, solution } => render(report, *solution),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
