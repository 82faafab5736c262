//! `qwc` — encrypt/decrypt grayscale PGM images in the wavelet domain, run
//! the statistical analyses, and verify the gate-level circuits against the
//! classical pipeline.

mod report;
mod verify;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use qwc_core::cipher::{self, CipherError, CipherPackage};
use qwc_core::image_io::{self, PgmError};
use qwc_core::keystream::{self, KeyParams};
use qwc_core::metrics::{self, Fill};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_FORMAT: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;

#[derive(Parser)]
#[command(name = "qwc", version, about = "Wavelet-domain grayscale image cipher")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct KeyArgs {
    /// Logistic-map seed in (0, 1); QWC_X0 is used when the flag is absent.
    #[arg(long, env = "QWC_X0", hide_env_values = true)]
    x0: f64,
    /// Logistic-map parameter in (3.57, 4.0]; QWC_MU is the fallback.
    #[arg(long, env = "QWC_MU", hide_env_values = true)]
    mu: f64,
    /// Iterations discarded before the first keystream byte.
    #[arg(long = "burn-in", default_value_t = keystream::DEFAULT_BURN_IN)]
    burn_in: u32,
}

impl KeyArgs {
    fn params(&self) -> Result<KeyParams, CliError> {
        KeyParams::new(self.x0, self.mu, self.burn_in)
            .map_err(|e| CliError::usage(format!("invalid key: {e}")))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FillArg {
    Zero,
    Max,
}

#[derive(Subcommand)]
enum Command {
    /// Encrypt a PGM image into a .qwc package.
    Encrypt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
        #[command(flatten)]
        key: KeyArgs,
    },
    /// Decrypt a .qwc package back into a PGM image.
    Decrypt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
        #[command(flatten)]
        key: KeyArgs,
    },
    /// Compute image statistics; add --against for PSNR vs a reference.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long)]
        json: PathBuf,
        #[arg(long)]
        hist: Option<PathBuf>,
    },
    /// Replace the low-frequency band by a constant and reconstruct.
    Ablate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        fill: FillArg,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Emit keystream bytes for a given key.
    Keystream {
        #[command(flatten)]
        key: KeyArgs,
        /// Number of bytes to emit.
        #[arg(long)]
        len: usize,
        /// Print lowercase hex, 32 bytes per line, instead of raw bytes.
        #[arg(long)]
        hex: bool,
    },
    /// Check the OLC/ZFH/XOR circuits against the classical operations.
    CircuitVerify {
        /// Image edge length (4 or 8).
        #[arg(long)]
        size: usize,
        /// Color depth in bits (2 or 4).
        #[arg(long)]
        q: u8,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Debug)]
struct CliError {
    message: String,
    exit: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { message: message.into(), exit: EXIT_USAGE }
    }

    fn io(message: impl Into<String>) -> Self {
        Self { message: message.into(), exit: EXIT_IO }
    }

    fn format(message: impl Into<String>) -> Self {
        Self { message: message.into(), exit: EXIT_FORMAT }
    }

    fn verification(message: impl Into<String>) -> Self {
        Self { message: message.into(), exit: EXIT_VERIFICATION }
    }
}

impl From<PgmError> for CliError {
    fn from(e: PgmError) -> Self {
        CliError::format(e.to_string())
    }
}

impl From<CipherError> for CliError {
    fn from(e: CipherError) -> Self {
        match e {
            CipherError::Key(k) => CliError::usage(format!("invalid key: {k}")),
            other => CliError::format(other.to_string()),
        }
    }
}

impl From<metrics::MetricsError> for CliError {
    fn from(e: metrics::MetricsError) -> Self {
        CliError::format(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Encrypt { input, output, key } => {
            let key = key.params()?;
            let img = image_io::read_pgm(&read_file(&input)?)?;
            let pkg = cipher::encrypt(&img, &key)?;
            write_atomic(&output, &pkg.to_bytes()?)
        }
        Command::Decrypt { input, output, key } => {
            let key = key.params()?;
            let pkg = CipherPackage::from_bytes(&read_file(&input)?)?;
            let img = cipher::decrypt(&pkg, &key)?;
            write_atomic(&output, &image_io::write_pgm(&img)?)
        }
        Command::Analyze { input, against, json, hist } => {
            let img = image_io::read_pgm(&read_file(&input)?)?;
            let reference = against.map(|p| read_file(&p).and_then(|b| Ok(image_io::read_pgm(&b)?))).transpose()?;
            let report = metrics::report(&img, reference.as_ref())?;
            write_atomic(&json, report::metrics_json(&report).as_bytes())?;
            if let Some(path) = hist {
                write_atomic(&path, report::histogram_csv(&report.histogram).as_bytes())?;
            }
            Ok(())
        }
        Command::Ablate { input, fill, output } => {
            let img = image_io::read_pgm(&read_file(&input)?)?;
            let fill = match fill {
                FillArg::Zero => Fill::Zero,
                FillArg::Max => Fill::Max,
            };
            let out = metrics::ablate_ll(&img, fill)?;
            write_atomic(&output, &image_io::write_pgm(&out)?)
        }
        Command::Keystream { key, len, hex } => {
            let key = key.params()?;
            let bytes = keystream::generate(&key, len)
                .map_err(|e| CliError::usage(format!("invalid key: {e}")))?;
            if hex {
                let mut out = String::with_capacity(bytes.len() * 2 + bytes.len() / 32 + 1);
                for (i, b) in bytes.iter().enumerate() {
                    out.push_str(&format!("{:02x}", b));
                    if i % 32 == 31 {
                        out.push('\n');
                    }
                }
                if bytes.len() % 32 != 0 {
                    out.push('\n');
                }
                print!("{out}");
            } else {
                use std::io::Write;
                std::io::stdout()
                    .write_all(&bytes)
                    .map_err(|e| CliError::io(e.to_string()))?;
            }
            Ok(())
        }
        Command::CircuitVerify { size, q, trials, seed, report: report_path } => {
            if !matches!(size, 4 | 8) {
                return Err(CliError::usage("--size must be 4 or 8"));
            }
            if !matches!(q, 2 | 4) {
                return Err(CliError::usage("--q must be 2 or 4"));
            }
            let outcome = verify::run(size, q, trials, seed)
                .map_err(|e| CliError::verification(e.to_string()))?;
            for line in outcome.summary_lines() {
                println!("{line}");
            }
            write_atomic(&report_path, outcome.to_json().as_bytes())?;
            if outcome.all_passed() {
                Ok(())
            } else {
                Err(CliError::verification("circuit equivalence check failed"))
            }
        }
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

/// Writes through a temp file in the destination directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    std::io::Write::write_all(&mut tmp, bytes)
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    tmp.persist(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    Ok(())
}
