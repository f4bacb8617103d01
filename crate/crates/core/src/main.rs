use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::builder::PossibleValuesParser;
use clap::{Parser, Subcommand};

use stiffcap::analysis::{
    basin_raster, bifurcation_scan, cobweb_data, critical_point_of_g, find_sink_orbit, phase_trajectory,
    BasinClass,
};
use stiffcap::cap::{
    cloud_orbit_distance, prove_absorption_with, run_sink_invariance, shadow_check, tiny_box,
    trajectory_box, AbsorptionMode, ProofResult, SINK_POINTS, TRAJECTORY_LABEL,
};
use stiffcap::dynamics::{fd_eigs_at_origin, jacobian_eigs_at_origin, Point2};
use stiffcap::report::{self, load_config, RunConfig, RunManifest};

const EXIT_RUNTIME: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PROOF_FAILED: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "stiffcap", version, about = "Computer-assisted proof and diagnostics for a spurious Heun sink")]
struct Cli {
    /// Configuration file of `key = value` lines.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Directory for output files (created if missing).
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Absorption test used by the proof engine.
    #[arg(long, global = true, value_parser = PossibleValuesParser::new(["paper_faithful", "strict_containment"]))]
    mode: Option<String>,
    /// Disable snapping boxes onto the x2 axis.
    #[arg(long, global = true)]
    no_snap: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the sink invariance and trajectory proofs and write the table.
    Prove {
        /// Only prove absorption of the tiny box around (1,1).
        #[arg(long)]
        tiny: bool,
        /// Also check this many sampled orbits against the cloud.
        #[arg(long, default_value_t = 0, value_name = "N")]
        shadow_samples: usize,
    },
    /// Rasterise the basin of the period-4 sink.
    Basin,
    /// Write a phase-space trajectory.
    Phase,
    /// Write the cobweb polyline of the restricted map.
    Cobweb,
    /// Scan the stiffness parameter for the period-doubling cascade.
    Bifurcation,
    /// Tabulate the stability function and its unit-modulus boundary.
    Stability,
    /// Print the attracting cycle of the restricted map.
    Sink,
}

enum Outcome {
    Done,
    ProofFailed,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let mut cfg = match &cli.config {
        Some(path) => match load_config(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
        },
        None => RunConfig::default(),
    };
    if let Some(mode) = &cli.mode {
        cfg.engine.absorption_mode = mode.parse::<AbsorptionMode>().expect("checked by clap");
    }
    if cli.no_snap {
        cfg.engine.snap_enabled = false;
    }
    if let Err(e) = std::fs::create_dir_all(&cli.out) {
        eprintln!("error: {}: {e}", cli.out.display());
        return ExitCode::from(EXIT_RUNTIME);
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n as usize);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(EXIT_RUNTIME);
        }
    };

    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut manifest = RunManifest::new(format!("stiffcap {}", args.join(" ")), &cfg);
    let start = Instant::now();
    let result = pool.install(|| run(&cli, &cfg, &mut manifest));
    manifest.wall_time = start.elapsed().as_secs_f64();
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_RUNTIME);
        }
    };
    if let Err(e) = manifest.save(&cli.out) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_RUNTIME);
    }
    match outcome {
        Outcome::Done => ExitCode::SUCCESS,
        Outcome::ProofFailed => ExitCode::from(EXIT_PROOF_FAILED),
    }
}

type AnyResult<T> = Result<T, Box<dyn std::error::Error + Send + Sync>>;

fn run(cli: &Cli, cfg: &RunConfig, manifest: &mut RunManifest) -> AnyResult<Outcome> {
    let out = cli.out.as_path();
    match &cli.command {
        Command::Prove { tiny, shadow_samples } => prove(cfg, out, manifest, *tiny, *shadow_samples, cli.seed),
        Command::Basin => basin(cfg, out, manifest),
        Command::Phase => {
            let (x1, x2) = cfg.phase_start;
            let t = phase_trajectory(Point2::new(x1, x2), cfg.phase_steps, &cfg.vector_params());
            manifest.write(out, "phase.csv", "csv", &report::phase_csv(&t.points)?)?;
            let last = t.points.last().copied().unwrap_or_default();
            println!("{} points, last ({}, {}){}", t.points.len(), last.x1, last.x2, if t.escaped { ", escaped" } else { "" });
            Ok(Outcome::Done)
        }
        Command::Cobweb => {
            let params = cfg.vector_params();
            let x0 = match cfg.cobweb_x0 {
                Some(x) => x,
                None => critical_point_of_g(&params)?,
            };
            let web = cobweb_data(x0, cfg.cobweb_steps, &params);
            manifest.write(out, "cobweb.csv", "csv", &report::cobweb_csv(&web)?)?;
            println!("cobweb from x0 = {x0}: {} vertices", web.len());
            Ok(Outcome::Done)
        }
        Command::Bifurcation => {
            let scan = bifurcation_scan(
                cfg.scan_range.0,
                cfg.scan_range.1,
                cfg.scan_steps,
                &cfg.vector_params(),
                &cfg.scan_opts,
            )?;
            manifest.write(out, "bifurcation.csv", "csv", &report::bifurcation_csv(&scan)?)?;
            println!("period doublings at lambda:");
            for (k, l) in scan.doubling_lambdas.iter().enumerate() {
                println!("  {:>2}: {l:.8}  (period {} -> {})", k + 1, 1 << k, 1 << (k + 1));
            }
            let deltas: Vec<String> = scan.delta_estimates.iter().map(|d| format!("{d:.4}")).collect();
            println!("delta estimates: [{}]", deltas.join(", "));
            Ok(Outcome::Done)
        }
        Command::Stability => {
            manifest.write(out, "stability.csv", "csv", &report::stability_csv(&cfg.stability)?)?;
            let params = cfg.vector_params();
            let (a, b) = jacobian_eigs_at_origin(&params);
            println!("DF(0) eigenvalues: R(-2h) = {a}, R(-lambda h) = {b}");
            if let Some((fa, fb)) = fd_eigs_at_origin(&params) {
                println!("finite-difference eigenvalues: {fa}, {fb}");
            }
            Ok(Outcome::Done)
        }
        Command::Sink => {
            let orbit = find_sink_orbit(&cfg.vector_params())?;
            for (i, p) in orbit.points.iter().enumerate() {
                println!("p{} = {p:.16}", i + 1);
            }
            println!("period = {}", orbit.period());
            println!("multiplier = {:.6e}", orbit.multiplier);
            println!("residual = {:.3e}", orbit.residual);
            if orbit.period() == SINK_POINTS.len() {
                let dev = orbit
                    .points
                    .iter()
                    .zip(SINK_POINTS)
                    .map(|(p, s)| (p - s).abs())
                    .fold(0.0, f64::max);
                println!("max deviation from the reference sink points = {dev:.3e}");
            }
            Ok(Outcome::Done)
        }
    }
}

fn print_proof(r: &ProofResult) {
    let status = match &r.failure {
        None => "absorbed".to_string(),
        Some(f) => format!("FAILED: {f}"),
    };
    println!(
        "{}: {status} after {} steps, peak {} boxes, {} snaps",
        r.label,
        r.steps(),
        r.peak_active,
        r.total_snapped()
    );
}

fn prove(
    cfg: &RunConfig,
    out: &Path,
    manifest: &mut RunManifest,
    tiny: bool,
    shadow_samples: usize,
    seed: u64,
) -> AnyResult<Outcome> {
    let engine = &cfg.engine;
    println!("mode {}, snap {}", engine.absorption_mode, if engine.snap_enabled { "on" } else { "off" });
    let (run1, b0) = if tiny {
        (Vec::new(), tiny_box(cfg.tiny_width))
    } else {
        (run_sink_invariance(engine)?.results, trajectory_box())
    };
    for r in &run1 {
        print_proof(r);
    }
    let label = if tiny {
        format!("Box of width {} around $(1,1)$", cfg.tiny_width)
    } else {
        TRAJECTORY_LABEL.to_string()
    };
    let mut last_distance = None;
    let run2 = prove_absorption_with(b0, engine, &label, |stats, cloud| {
        if let Some(d) = cloud_orbit_distance(cloud, &engine.sink_points) {
            last_distance = Some((stats.step, d));
        }
    });
    print_proof(&run2);
    if let Some((step, d)) = last_distance {
        println!("cloud after step {step} lies within {d:.4} of the sink orbit (sup norm)");
    }
    let run2 = vec![run2];

    let table = report::emit_latex_table(&run1, &run2);
    manifest.write(out, "cap_table_static.tex", "latex", table.as_bytes())?;
    let all: Vec<ProofResult> = run1.iter().chain(&run2).cloned().collect();
    manifest.write(out, "proof_history.csv", "csv", &report::proof_history_csv(&all)?)?;

    if shadow_samples > 0 {
        let samples = report::sample_box(&b0, shadow_samples, seed);
        let shadow = shadow_check(b0, engine, &samples);
        println!(
            "shadowing: {} orbit points checked, {} outside the cloud and sink balls",
            shadow.checked,
            shadow.violations.len()
        );
    }

    let ok = all.iter().all(|r| r.success);
    Ok(if ok { Outcome::Done } else { Outcome::ProofFailed })
}

fn basin(cfg: &RunConfig, out: &Path, manifest: &mut RunManifest) -> AnyResult<Outcome> {
    let params = cfg.vector_params();
    let sink = find_sink_orbit(&params)?;
    let grid = basin_raster(&cfg.basin, &params, &sink, &cfg.basin_opts)?;
    manifest.write(out, "basin.pgm", "pgm", &report::basin_pgm(&grid))?;
    manifest.write(out, "basin.csv", "csv", &report::basin_csv(&grid)?)?;
    for class in [BasinClass::Sink, BasinClass::Origin, BasinClass::Escaped, BasinClass::Undecided] {
        let n = grid.cells.iter().filter(|&&c| c == class).count();
        println!("{}: {n}", class.as_str());
    }
    Ok(Outcome::Done)
}
