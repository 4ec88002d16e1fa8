//! `swlab`: run shallow-water benchmarks, measure experimental convergence
//! rates on imbedded grids, and drive the combined RBM-based schemes.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use swlab::config::{parse_time_list, read_config_file, RunConfig};
use swlab::output;
use swlab::runner;
use swlab::LabError;

#[derive(Parser)]
#[command(
    name = "swlab",
    about = "Shallow-water shock-capturing scheme laboratory",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one scheme on one grid and write solution (and error) CSVs.
    Run(CommonArgs),
    /// Three-imbedded-grid convergence study; writes rate and W^-1,1 CSVs.
    Converge(CommonArgs),
    /// Combined-scheme presets for examples 4-6 (rough detector active).
    CombinedRun(CombinedArgs),
    /// Run the built-in analytic oracle suite.
    Selftest,
}

#[derive(Args)]
struct CommonArgs {
    /// Flat key=value config file; flags override file values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Benchmark id 1-6.
    #[arg(long)]
    example: Option<u8>,
    /// cu | rbm | aweno | rbm-cu | rbm-aweno.
    #[arg(long)]
    scheme: Option<String>,
    /// Grid cells (run) or base N of the imbedded triple (converge).
    #[arg(long)]
    cells: Option<usize>,
    #[arg(long)]
    t_final: Option<f64>,
    /// Comma-separated snapshot times.
    #[arg(long)]
    snapshots: Option<String>,
    /// adaptive | fixed | fixed_pow.
    #[arg(long)]
    dt_mode: Option<String>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    exponent: Option<f64>,
    #[arg(long)]
    g: Option<f64>,
    /// RBM artificial-viscosity coefficient (config key "C").
    #[arg(long = "c-visc")]
    c_visc: Option<f64>,
    /// Rough-detector threshold for combined schemes.
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    weno_p: Option<i32>,
    #[arg(long)]
    weno_eps: Option<f64>,
    /// Output directory (joined under $SWLAB_OUT when relative).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Mesh refinement factor of the reference run (power of two).
    #[arg(long)]
    reference_multiplier: Option<usize>,
    /// Also write an error field against the reference/exact solution.
    #[arg(long, default_value_t = false)]
    with_error: bool,
}

#[derive(Args)]
struct CombinedArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Internal scheme: cu | aweno (default cu).
    #[arg(long)]
    internal: Option<String>,
}

fn build_config(args: &CommonArgs) -> Result<RunConfig, LabError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &args.config {
        for (k, v) in read_config_file(path)? {
            cfg.apply_kv(&k, &v)?;
        }
    }
    if let Some(v) = args.example {
        cfg.example = v;
    }
    if let Some(v) = &args.scheme {
        cfg.scheme = v.parse()?;
    }
    if let Some(v) = args.cells {
        cfg.cells = v;
    }
    if let Some(v) = args.t_final {
        cfg.t_final = v;
    }
    if let Some(v) = &args.snapshots {
        cfg.snapshots = parse_time_list(v)?;
    }
    if let Some(v) = &args.dt_mode {
        cfg.dt_mode = v.parse()?;
    }
    if let Some(v) = args.cfl {
        cfg.cfl = Some(v);
    }
    if let Some(v) = args.dt {
        cfg.dt = Some(v);
    }
    if let Some(v) = args.kappa {
        cfg.kappa = v;
    }
    if let Some(v) = args.exponent {
        cfg.exponent = v;
    }
    if let Some(v) = args.g {
        cfg.g = v;
    }
    if let Some(v) = args.c_visc {
        cfg.c_visc = v;
    }
    if let Some(v) = args.mu {
        cfg.mu = Some(v);
    }
    if let Some(v) = args.weno_p {
        cfg.weno_p = v;
    }
    if let Some(v) = args.weno_eps {
        cfg.weno_eps = v;
    }
    if let Some(v) = &args.out_dir {
        cfg.out_dir = v.clone();
    }
    if let Some(v) = args.reference_multiplier {
        cfg.reference_multiplier = Some(v);
    }
    cfg.resolve()
}

fn cmd_run(args: &CommonArgs) -> Result<(), LabError> {
    let cfg = build_config(args)?;
    let dir = cfg.effective_out_dir();
    let (outcome, errors) = if args.with_error || cfg.reference_multiplier.is_some() {
        let (outcome, errors) = runner::reference_error_field(&cfg)?;
        (outcome, Some(errors))
    } else {
        (runner::run_single(&cfg)?, None)
    };
    let written = output::write_run(&dir, &outcome, errors.as_deref())?;
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn cmd_converge(args: &CommonArgs) -> Result<(), LabError> {
    let cfg = build_config(args)?;
    let dir = cfg.effective_out_dir();
    let outcome = runner::converge(&cfg)?;
    for tr in &outcome.per_time {
        let rate = tr
            .report
            .w11_rate
            .map(|r| format!("{r:.3}"))
            .unwrap_or_else(|| "undefined".to_string());
        println!(
            "t = {:>5}: ||I^N - I^2N||_L1 = {:.3e}, W^-1,1 rate = {}",
            tr.t, tr.report.w11_errors[0], rate
        );
    }
    let written = output::write_converge(&dir, &outcome)?;
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn cmd_combined(args: &CombinedArgs) -> Result<(), LabError> {
    let mut common_scheme = args.common.scheme.clone();
    if common_scheme.is_none() {
        common_scheme = Some(match args.internal.as_deref() {
            None | Some("cu") => "rbm-cu".to_string(),
            Some("aweno") | Some("a-weno") => "rbm-aweno".to_string(),
            Some(other) => {
                return Err(LabError::config(format!(
                    "internal scheme must be cu or aweno (got '{other}')"
                )))
            }
        });
    }
    let mut forwarded = CommonArgs {
        scheme: common_scheme,
        ..clone_common(&args.common)
    };
    if forwarded.example.is_none() && forwarded.config.is_none() {
        forwarded.example = Some(4);
    }
    let cfg = build_config(&forwarded)?;
    if !cfg.scheme.is_combined() {
        return Err(LabError::config(
            "combined-run needs a combined scheme (rbm-cu or rbm-aweno)",
        ));
    }
    let dir = cfg.effective_out_dir();
    let outcome = runner::run_single(&cfg)?;
    if let Some(rough) = &outcome.final_rough {
        println!(
            "final rough set: {} core / {} halo points",
            rough.core.len(),
            rough.halo.len()
        );
    }
    let written = output::write_run(&dir, &outcome, None)?;
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn clone_common(a: &CommonArgs) -> CommonArgs {
    CommonArgs {
        config: a.config.clone(),
        example: a.example,
        scheme: a.scheme.clone(),
        cells: a.cells,
        t_final: a.t_final,
        snapshots: a.snapshots.clone(),
        dt_mode: a.dt_mode.clone(),
        cfl: a.cfl,
        dt: a.dt,
        kappa: a.kappa,
        exponent: a.exponent,
        g: a.g,
        c_visc: a.c_visc,
        mu: a.mu,
        weno_p: a.weno_p,
        weno_eps: a.weno_eps,
        out_dir: a.out_dir.clone(),
        reference_multiplier: a.reference_multiplier,
        with_error: a.with_error,
    }
}

fn cmd_selftest() -> Result<(), LabError> {
    let checks = swlab::selftest::run_all();
    let mut all_ok = true;
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{status} {}", c.name);
        } else {
            println!("{status} {} ({})", c.name, c.detail);
        }
        all_ok &= c.passed;
    }
    if all_ok {
        Ok(())
    } else {
        Err(LabError::Numerical("selftest failed".to_string()))
    }
}

fn main() -> ExitCode {
    // clap would exit with code 2 on usage errors; keep 2 reserved for
    // numerical failures.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            // --help / --version output.
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let result = match &cli.cmd {
        Cmd::Run(args) => cmd_run(args),
        Cmd::Converge(args) => cmd_converge(args),
        Cmd::CombinedRun(args) => cmd_combined(args),
        Cmd::Selftest => cmd_selftest(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("swlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
