//! Command-line front end of `boundent`: configuration files, figure presets,
//! CSV tables and JSON metadata.
//!
//! Exit codes: 0 on success, 1 for usage, validation and I/O errors, 2 when
//! a computation fails numerically (no threshold crossing, still entangled
//! at the top of the bracket, empty window, quadrature not converging).

pub mod cli;
pub mod config;
pub mod output;
pub mod presets;
pub mod run;

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use clap::Parser;

pub use config::{parse_config, ConfigError, RunConfig};
pub use output::{write_csv, Table};
pub use run::{execute, Outcome};

use cli::{request, Cli, Destinations, RequestError};
use output::{plot_script, Metadata};
use presets::grid_notes;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

/// Whether a core error is a numerical failure rather than bad input.
pub fn is_numerical(e: &boundent::Error) -> bool {
    use boundent::Error::*;
    matches!(
        e,
        NoCrossing { .. } | EntangledAtMax { .. } | NoWindow | QuadratureNoConvergence { .. } | GaplessPotential
    )
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let (config, destinations) = match request(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    if let Err(e) = config.validate() {
        eprintln!("error: {}", RequestError::from(e));
        return EXIT_INVALID;
    }
    if destinations.print_config {
        print!("{}", config.to_toml());
        return EXIT_OK;
    }

    let start = Instant::now();
    let outcome = match execute(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return if is_numerical(&e) { EXIT_NUMERICAL } else { EXIT_INVALID };
        }
    };
    let wall = start.elapsed().as_secs_f64();

    match emit(&config, &outcome, &destinations, wall) {
        Ok(()) => {
            for line in &outcome.summary {
                eprintln!("{line}");
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

fn create(path: &Path) -> io::Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

fn emit(config: &RunConfig, outcome: &Outcome, to: &Destinations, wall: f64) -> io::Result<()> {
    match &to.csv {
        Some(path) => {
            let mut file = create(path)?;
            write_csv(&outcome.table, &mut file)?;
            file.flush()?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_csv(&outcome.table, &mut lock)?;
            lock.flush()?;
        }
    }
    if let Some(path) = &to.metadata {
        let meta = Metadata::new(config, &outcome.table, wall, grid_notes(config.preset));
        let mut file = create(path)?;
        meta.write(&mut file)?;
        file.flush()?;
        eprintln!("wrote {}", path.display());
    }
    if let (Some(path), Some(csv)) = (&to.plot_script, &to.csv) {
        let name = csv.file_name().unwrap_or_default().to_string_lossy();
        fs::write(path, plot_script(&name, &outcome.table))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}
