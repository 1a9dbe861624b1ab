//! Command-line front end: compute counting tables (`kac`), cuspidal tables
//! (`cuspidal`), or run the consistency checks (`check`) for a quiver inside
//! a dimension box.
//!
//! Exit codes: 0 success, 1 input error, 2 capability gap (a dimension the
//! oracle cannot reach and no imported table covers), 3 mathematical check
//! failure.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use cuspidal_core::cuspidal::{full_table, latex_poly, run_checks, CuspidalTable};
use cuspidal_core::exact::RatPoly;
use cuspidal_core::fforacle::{a_table_from_json, kac_tables, KacTable, OracleCache};
use cuspidal_core::quiver::Quiver;
use cuspidal_core::series::{BoxBounds, DimVec};
use cuspidal_core::Error;

#[derive(Parser)]
#[command(name = "cuspidal", version, about = "Exact Kac and cuspidal polynomial tables for quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Latex,
}

#[derive(clap::Args)]
struct JobConfig {
    /// Quiver JSON file: {"vertices": [...], "arrows": [[src,tgt], ...]}.
    #[arg(long)]
    quiver: PathBuf,
    /// Dimension box, one bound per vertex, e.g. 3,3.
    #[arg(long, value_name = "d1,d2,...")]
    r#box: String,
    /// Imported absolutely-indecomposable table (JSON), replacing the oracle.
    #[arg(long)]
    a_table: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    out: OutputFormat,
    /// Cache directory for oracle counts and finished tables.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Upper bound on the number of primes sampled per dimension.
    #[arg(long)]
    primes_limit: Option<usize>,
    /// Treat conjecture warnings as failures.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Counting polynomials H (all classes), I (indecomposables),
    /// A (absolutely indecomposables) per dimension in the box.
    Kac(JobConfig),
    /// Cuspidal and absolutely cuspidal polynomials, with checks.
    Cuspidal(JobConfig),
    /// Consistency checks only, reported as JSON.
    Check(JobConfig),
}

/// Errors mapped to process exit codes.
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::UnsupportedDimension(_) | Error::DegreeBoundViolated => 2,
        Error::OracleInconsistency(_)
        | Error::ConsistencyViolation(_)
        | Error::TransferIntegrality(_)
        | Error::NegativeExponent => 3,
        _ => 1,
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code_for(e))
}

struct Job {
    quiver: Quiver,
    bounds: BoxBounds,
    imported_a: Option<BTreeMap<DimVec, RatPoly>>,
    out: OutputFormat,
    cache: Option<PathBuf>,
    primes_limit: Option<usize>,
    strict: bool,
}

impl Job {
    fn load(config: &JobConfig) -> Result<Job, Error> {
        let text = std::fs::read_to_string(&config.quiver)?;
        let quiver = Quiver::from_json_str(&text)?;
        let dims: Result<DimVec, _> =
            config.r#box.split(',').map(|x| x.trim().parse::<u32>()).collect();
        let dims =
            dims.map_err(|_| Error::InvalidInput(format!("bad box {:?}", config.r#box)))?;
        if dims.len() != quiver.num_vertices() {
            return Err(Error::InvalidInput(format!(
                "box has {} entries but the quiver has {} vertices",
                dims.len(),
                quiver.num_vertices()
            )));
        }
        let imported_a = match &config.a_table {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                let json: serde_json::Value = serde_json::from_str(&text)?;
                Some(a_table_from_json(&json)?)
            }
            None => None,
        };
        Ok(Job {
            quiver,
            bounds: BoxBounds::new(dims),
            imported_a,
            out: config.out,
            cache: config.cache.clone(),
            primes_limit: config.primes_limit,
            strict: config.strict,
        })
    }

    /// Key for finished-table caching: quiver hash, box, artifact version,
    /// and the imported table (if any) all feed the digest.
    fn table_cache_key(&self, kind: &str) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.quiver.hash().as_bytes());
        hasher.update(format!("{:?}", self.bounds.bounds()).as_bytes());
        hasher.update(env!("CARGO_PKG_VERSION").as_bytes());
        hasher.update(kind.as_bytes());
        if let Some(a) = &self.imported_a {
            for (d, p) in a {
                hasher.update(format!("{d:?}={p}").as_bytes());
            }
        }
        format!("{:x}", hasher.finalize())
    }

    fn cached_table_path(&self, kind: &str) -> Option<PathBuf> {
        self.cache.as_ref().map(|dir| {
            dir.join("tables-v1").join(format!("{kind}-{}.json", self.table_cache_key(kind)))
        })
    }

    fn kac(&self) -> Result<KacTable, Error> {
        if let Some(path) = self.cached_table_path("kac") {
            if let Ok(text) = std::fs::read_to_string(&path) {
                let json: serde_json::Value = serde_json::from_str(&text)?;
                return KacTable::from_json(&json);
            }
        }
        let oracle_cache = self.cache.as_ref().map(|d| OracleCache::new(d));
        let table = kac_tables(
            &self.quiver,
            &self.bounds,
            self.imported_a.as_ref(),
            self.primes_limit,
            oracle_cache.as_ref(),
        )?;
        if let Some(path) = self.cached_table_path("kac") {
            atomic_write(&path, &serde_json::to_string_pretty(&table.to_json())?)?;
        }
        Ok(table)
    }
}

fn atomic_write(path: &Path, contents: &str) -> Result<(), Error> {
    let parent = path
        .parent()
        .ok_or_else(|| Error::InvalidInput("cache path has no parent".into()))?;
    std::fs::create_dir_all(parent)?;
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Plain-text polynomial, highest power first (for CSV output).
fn plain_poly(p: &RatPoly) -> String {
    latex_poly(p)
        .replace("\\tfrac{", "")
        .replace("}{", "/")
        .replace(['{', '}'], "")
}

fn dim_key(d: &[u32]) -> String {
    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn render_kac(table: &KacTable, out: OutputFormat) -> String {
    match out {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&table.to_json()).expect("serializable") + "\n"
        }
        OutputFormat::Csv => {
            let mut s = String::from("d;H;I;A\n");
            for (d, e) in &table.entries {
                s.push_str(&format!(
                    "{};{};{};{}\n",
                    dim_key(d),
                    plain_poly(&e.h),
                    plain_poly(&e.i),
                    plain_poly(&e.a)
                ));
            }
            s
        }
        OutputFormat::Latex => {
            let mut s = String::from("\\begin{align*}\n");
            for (d, e) in &table.entries {
                s.push_str(&format!(
                    "H_{{({})}}(t) &= {} & I &= {} & A &= {} \\\\\n",
                    dim_key(d),
                    latex_poly(&e.h),
                    latex_poly(&e.i),
                    latex_poly(&e.a)
                ));
            }
            s.push_str("\\end{align*}\n");
            s
        }
    }
}

fn render_cuspidal(table: &CuspidalTable, out: OutputFormat) -> String {
    match out {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&table.to_json()).expect("serializable") + "\n"
        }
        OutputFormat::Csv => {
            let mut s = String::from("d;C;Cabs\n");
            for (d, e) in &table.entries {
                s.push_str(&format!(
                    "{};{};{}\n",
                    dim_key(d),
                    plain_poly(&e.c),
                    plain_poly(&e.cabs)
                ));
            }
            s
        }
        OutputFormat::Latex => table.to_latex(),
    }
}

fn cmd_kac(job: &Job) -> Result<(), Error> {
    let table = job.kac()?;
    print!("{}", render_kac(&table, job.out));
    Ok(())
}

fn run_cuspidal_pipeline(job: &Job) -> Result<(CuspidalTable, serde_json::Value, bool), Error> {
    let kac = job.kac()?;
    let mut table = full_table(&job.quiver, &job.bounds, &kac)?;
    let report = run_checks(&job.quiver, &job.bounds, &kac, &mut table)?;
    let failed = !report.ok() || (job.strict && !report.warnings.is_empty());
    let report_json = serde_json::json!({
        "passed": report.passed,
        "warnings": report.warnings,
        "failures": report.failures,
    });
    Ok((table, report_json, failed))
}

fn cmd_cuspidal(job: &Job) -> Result<ExitCode, Error> {
    let cached = job.cached_table_path("cuspidal");
    if let Some(path) = &cached {
        if let Ok(text) = std::fs::read_to_string(path) {
            // Byte-identical replay of a finished run.
            print!("{text}");
            return Ok(ExitCode::SUCCESS);
        }
    }
    let (table, report, failed) = run_cuspidal_pipeline(job)?;
    let rendered = render_cuspidal(&table, job.out);
    eprintln!("{}", serde_json::to_string(&report)?);
    if failed {
        eprintln!("error: consistency checks failed");
        return Ok(ExitCode::from(3));
    }
    if let Some(path) = &cached {
        atomic_write(path, &rendered)?;
    }
    print!("{rendered}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(job: &Job) -> Result<ExitCode, Error> {
    let (_, report, failed) = run_cuspidal_pipeline(job)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if failed { ExitCode::from(3) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match &cli.command {
        Command::Kac(c) | Command::Cuspidal(c) | Command::Check(c) => c,
    };
    let job = match Job::load(config) {
        Ok(j) => j,
        Err(e) => return fail(&e),
    };
    let result = match &cli.command {
        Command::Kac(_) => cmd_kac(&job).map(|()| ExitCode::SUCCESS),
        Command::Cuspidal(_) => cmd_cuspidal(&job),
        Command::Check(_) => cmd_check(&job),
    };
    match result {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}
