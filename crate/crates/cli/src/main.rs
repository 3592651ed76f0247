//! Command-line front end for the radial atomic-structure solvers.
//!
//! Machine output goes to stdout as single-line JSON; human logs go to
//! stderr. Exit codes: 0 success, 1 solver failure (or failed checks),
//! 2 usage errors.

mod config;
mod io;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use atomlab_core::hf::{scf_solve_with, ScfSettings};
use atomlab_core::tf::{ExteriorTfProblem, TfWorkspace};
use atomlab_core::{Error as CoreError, NumericsSettings};

#[derive(Parser)]
#[command(
    name = "atomlab",
    about = "Radial atomic-structure laboratory: Thomas-Fermi and restricted Hartree-Fock solvers with bound-check suites",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a Thomas-Fermi atom.
    Tf(TfArgs),
    /// Solve a restricted Hartree-Fock atom.
    Hf(HfArgs),
    /// Solve the exterior Thomas-Fermi problem seeded by a saved mean-field state.
    Otf(OtfArgs),
    /// Run the bound-check suites and emit reports.
    Verify(VerifyArgs),
    /// Solve a list of atoms in both models and tabulate the results.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct TfArgs {
    /// Nuclear charge.
    #[arg(long = "Z", allow_hyphen_values = true)]
    z: f64,
    /// Electron number (defaults to Z, the neutral atom).
    #[arg(long = "N", allow_hyphen_values = true)]
    n: Option<f64>,
    /// Output directory for the JSON and CSV artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid size override.
    #[arg(long = "grid-n")]
    grid_n: Option<usize>,
}

#[derive(Args)]
struct HfArgs {
    /// Nuclear charge.
    #[arg(long = "Z")]
    z: u32,
    /// Electron number.
    #[arg(long = "N")]
    n: u32,
    /// Density mixing factor in (0, 1].
    #[arg(long)]
    mixing: Option<f64>,
    /// SCF residual target.
    #[arg(long)]
    tol: Option<f64>,
    /// Output directory for the JSON artifact.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also dump the radial orbitals as CSV.
    #[arg(long)]
    orbitals: bool,
}

#[derive(Args)]
struct OtfArgs {
    /// Saved mean-field state (JSON produced by `hf`).
    #[arg(long)]
    state: PathBuf,
    /// Cut radius (bohr).
    #[arg(long = "r-cut")]
    r_cut: f64,
    /// Charge budget; defaults to the exterior charge of the state.
    #[arg(long)]
    budget: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Tf,
    Hf,
    Semiclassics,
    Bounds,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which check suite to run.
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Sweep plan (JSON); defaults to the built-in plan.
    #[arg(long)]
    plan: Option<PathBuf>,
    /// Output directory for reports and the ledger.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Treat inconclusive reports as failures.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated nuclear charges, e.g. "2,6,10".
    #[arg(long = "Z-list")]
    z_list: String,
    /// Output directory for the summary table.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Tf(args) => cmd_tf(args),
        Command::Hf(args) => cmd_hf(args),
        Command::Otf(args) => cmd_otf(args),
        Command::Verify(args) => suites::cmd_verify(
            args.suite_names(),
            args.plan.as_deref(),
            args.out.as_deref(),
            args.strict,
        ),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match code {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// CLI-level error carrying the intended exit code.
#[derive(Debug)]
pub struct CliError {
    message: String,
    usage: bool,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            usage: true,
        }
    }

    pub fn run(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            usage: false,
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.usage {
            2
        } else {
            1
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidInput(_) | CoreError::Domain(_) => CliError::usage(e.to_string()),
            other => CliError::run(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::run(e.to_string())
    }
}

fn cmd_tf(args: TfArgs) -> Result<ExitCode, CliError> {
    if !(args.z > 0.0 && args.z.is_finite()) {
        return Err(CliError::usage("--Z must be positive"));
    }
    let n = args.n.unwrap_or(args.z);
    if !(n > 0.0 && n.is_finite()) {
        return Err(CliError::usage("--N must be positive"));
    }
    let mut numerics = NumericsSettings::default();
    if let Some(g) = args.grid_n {
        if g < 16 {
            return Err(CliError::usage("--grid-n must be at least 16"));
        }
        numerics.grid_n = g;
    }
    let ws = TfWorkspace::new(numerics).map_err(CliError::from)?;
    let sol = ws.solve(args.z, n).map_err(CliError::from)?;
    println!("{}", io::tf_summary_json(&sol));
    if let Some(dir) = args.out {
        std::fs::create_dir_all(&dir)?;
        let stem = format!("tf_Z{}_N{}", args.z, n);
        io::write_atomic(&dir.join(format!("{stem}.json")), &io::tf_solution_json(&sol))?;
        io::write_atomic(&dir.join(format!("{stem}.csv")), &io::tf_solution_csv(&sol))?;
        eprintln!("wrote {stem}.json and {stem}.csv to {}", dir.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hf(args: HfArgs) -> Result<ExitCode, CliError> {
    if args.z == 0 || args.n == 0 {
        return Err(CliError::usage("--Z and --N must be positive integers"));
    }
    let mut scf = ScfSettings::default();
    if let Some(m) = args.mixing {
        scf.mixing = m;
    }
    if let Some(t) = args.tol {
        scf.tol = t;
    }
    scf.validate().map_err(CliError::from)?;
    let numerics = NumericsSettings::default();
    match scf_solve_with(args.z as f64, args.n, &scf, &numerics, None) {
        Ok(state) => {
            println!("{}", io::hf_summary_json(&state));
            if let Some(dir) = args.out {
                std::fs::create_dir_all(&dir)?;
                let stem = format!("hf_Z{}_N{}", args.z, args.n);
                io::write_atomic(&dir.join(format!("{stem}.json")), &io::hf_state_json(&state))?;
                if args.orbitals {
                    io::write_atomic(
                        &dir.join(format!("{stem}_orbitals.csv")),
                        &io::hf_orbitals_csv(&state),
                    )?;
                }
                eprintln!("wrote {stem}.json to {}", dir.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(CoreError::ScfNonConvergence {
            sweeps,
            last_residual,
            history,
        }) => {
            let dir = args.out.unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir)?;
            let path = dir.join(format!("hf_Z{}_N{}_residuals.csv", args.z, args.n));
            let mut text = String::from("sweep,residual\n");
            for (i, r) in history.iter().enumerate() {
                text.push_str(&format!("{},{r}\n", i + 1));
            }
            io::write_atomic(&path, &text)?;
            Err(CliError::run(format!(
                "SCF did not converge after {sweeps} sweeps (last residual {last_residual:e}); \
                 residual history in {}",
                path.display()
            )))
        }
        Err(CoreError::UnboundElectron { homo, threshold }) => Err(CliError::run(format!(
            "unbound electron: highest occupied orbital energy {homo} above threshold {threshold}"
        ))),
        Err(e) => Err(CliError::from(e)),
    }
}

fn cmd_otf(args: OtfArgs) -> Result<ExitCode, CliError> {
    let text = std::fs::read_to_string(&args.state)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", args.state.display())))?;
    let (z, rho) = io::parse_hf_state_density(&text).map_err(CliError::usage)?;
    let problem = ExteriorTfProblem::from_density(&rho, z, args.r_cut).map_err(CliError::from)?;
    let problem = match args.budget {
        Some(b) => {
            if !(b >= 0.0) {
                return Err(CliError::usage("--budget must be nonnegative"));
            }
            ExteriorTfProblem { budget: b, ..problem }
        }
        None => problem,
    };
    let ws = TfWorkspace::new(NumericsSettings::default()).map_err(CliError::from)?;
    let sol = ws.solve_exterior(&problem).map_err(CliError::from)?;
    println!("{}", io::otf_summary_json(&sol, &problem));
    if let Some(dir) = args.out {
        std::fs::create_dir_all(&dir)?;
        let stem = format!("otf_rcut{}", args.r_cut);
        io::write_atomic(&dir.join(format!("{stem}.json")), &io::tf_solution_json(&sol))?;
        eprintln!("wrote {stem}.json to {}", dir.display());
    }
    Ok(ExitCode::SUCCESS)
}

impl VerifyArgs {
    fn suite_names(&self) -> &'static [&'static str] {
        match self.suite {
            Suite::All => &["tf", "hf", "semiclassics", "bounds"],
            Suite::Tf => &["tf"],
            Suite::Hf => &["hf"],
            Suite::Semiclassics => &["semiclassics"],
            Suite::Bounds => &["bounds"],
        }
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, CliError> {
    let z_list: Vec<u32> = args
        .z_list
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::usage(format!("bad --Z-list: {e}")))?;
    if z_list.is_empty() || z_list.iter().any(|&z| z == 0) {
        return Err(CliError::usage("--Z-list needs positive integers"));
    }
    let threads = std::env::var("HFATOM_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(1)
        .max(1);
    let numerics = NumericsSettings::default();
    let tf_ws = TfWorkspace::new(numerics.clone()).map_err(CliError::from)?;
    let scf = ScfSettings::default();

    // cells are independent; results are merged by index so the output is
    // byte-identical whatever the thread count
    let cells: Vec<(usize, u32)> = z_list.iter().copied().enumerate().collect();
    let mut rows: Vec<Option<String>> = vec![None; cells.len()];
    std::thread::scope(|scope| {
        let chunks: Vec<_> = cells.chunks(cells.len().div_ceil(threads)).collect();
        let mut handles = Vec::new();
        for chunk in chunks {
            let tf_ws = &tf_ws;
            let scf = &scf;
            let numerics = &numerics;
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                for &(i, z) in chunk {
                    let tf_sol = tf_ws.solve_neutral(z as f64);
                    let hf_sol = scf_solve_with(z as f64, z, scf, numerics, Some(tf_ws));
                    let row = match (tf_sol, hf_sol) {
                        (Ok(t), Ok(h)) => format!(
                            "{z},{},{},{},{},{}",
                            t.energy,
                            t.mu,
                            h.energy_total,
                            h.homo(),
                            h.sweeps
                        ),
                        (Ok(t), Err(_)) => format!("{z},{},{},,,", t.energy, t.mu),
                        (Err(_), Ok(h)) => {
                            format!("{z},,,{},{},{}", h.energy_total, h.homo(), h.sweeps)
                        }
                        (Err(_), Err(_)) => format!("{z},,,,,"),
                    };
                    out.push((i, row));
                }
                out
            }));
        }
        for h in handles {
            for (i, row) in h.join().expect("sweep worker panicked") {
                rows[i] = Some(row);
            }
        }
    });

    let mut table = String::from("Z,tf_energy,tf_mu,hf_energy,hf_homo,hf_sweeps\n");
    for row in rows.into_iter().flatten() {
        table.push_str(&row);
        table.push('\n');
    }
    print!("{table}");
    if let Some(dir) = args.out {
        std::fs::create_dir_all(&dir)?;
        io::write_atomic(&dir.join("sweep.csv"), &table)?;
        eprintln!("wrote sweep.csv to {}", dir.display());
    }
    Ok(ExitCode::SUCCESS)
}
