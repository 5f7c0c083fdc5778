use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgv_core::hopf::{function_algebra, group_algebra, DEFAULT_SEED};
use qgv_core::io::{self, FusionInput};
use qgv_core::suite::{self, SuiteOptions};
use qgv_core::{Error, FiniteGroup, FiniteHopfStarAlgebra, Tolerance, VerificationReport};

#[derive(Parser, Debug)]
#[command(name = "qgv", version, about = "Numerical verification of finite-dimensional Hopf *-algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Residual tolerance for every numerical check.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    /// Seed for the random central element of the block decomposition.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ExampleKind {
    GroupAlgebra,
    FunctionAlgebra,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the structure constants of ℂ[G] or ℂ^G.
    Example {
        kind: ExampleKind,
        /// Z2, Z3, Z4, S3 or a group file with a Cayley table.
        group: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Hopf axioms, Haar functional, blocks, duality and Plancherel.
    Verify { file: PathBuf },
    /// Regular monoid, Frobenius structure, absorbing suite and intrinsic group.
    Monoid { file: PathBuf },
    /// Embedding functor suite.
    Embed { file: PathBuf },
    /// Reconstruction and round trip.
    Tannaka { file: PathBuf },
    /// Fusion ring checks on fusion data or on the category of an algebra.
    Fusion {
        file: PathBuf,
        /// Candidate dimension function, comma separated.
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<u64>>,
        /// Write the fusion data extracted from an algebra.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qgv: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let opts = SuiteOptions {
        tol: Tolerance::new(cli.global.tol).map_err(|_| Error::input("--tol", "must be a positive finite number"))?,
        seed: cli.global.seed,
    };
    let report = match cli.command {
        Command::Example { kind, group, out } => {
            let g = load_group(&group)?;
            let h = match kind {
                ExampleKind::GroupAlgebra => group_algebra(&g),
                ExampleKind::FunctionAlgebra => function_algebra(&g),
            };
            std::fs::write(&out, io::algebra_to_json(&h))?;
            return Ok(ExitCode::SUCCESS);
        }
        Command::Verify { file } => with_algebra(&file, |h| suite::run_verify(h, opts))?,
        Command::Monoid { file } => with_algebra(&file, |h| suite::run_monoid(h, opts))?,
        Command::Embed { file } => with_algebra(&file, |h| suite::run_embed(h, opts))?,
        Command::Tannaka { file } => with_algebra(&file, |h| suite::run_tannaka(h, opts))?,
        Command::Fusion { file, dims, out } => {
            let (text, digest) = io::read_file(&file)?;
            let dims = dims.as_deref();
            let (mut report, fd) = match io::fusion_input_from_json(&text)? {
                FusionInput::Algebra(h) => suite::run_fusion_algebra(&h, dims, opts),
                FusionInput::Fusion(fd) => (suite::run_fusion_data(&fd, dims, opts), Some(fd)),
            };
            if let (Some(out), Some(fd)) = (out, fd) {
                std::fs::write(out, io::fusion_to_json(&fd))?;
            }
            report.input = digest;
            report
        }
    };
    match cli.global.report {
        ReportFormat::Text => print!("{}", report.to_text()),
        ReportFormat::Json => print!("{}", report.to_json()),
    }
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn load_group(name: &str) -> Result<FiniteGroup, Error> {
    if let Some(g) = FiniteGroup::builtin(name) {
        return Ok(g);
    }
    let (text, _) = io::read_file(Path::new(name))?;
    io::group_from_json(&text)
}

fn with_algebra(
    file: &Path,
    f: impl FnOnce(&FiniteHopfStarAlgebra) -> VerificationReport,
) -> Result<VerificationReport, Error> {
    let (text, digest) = io::read_file(file)?;
    let h = io::algebra_from_json(&text)?;
    let mut report = f(&h);
    report.input = digest;
    Ok(report)
}
