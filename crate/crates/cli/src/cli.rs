//! The `chowbez` command-line interface.

use crate::formats::{
    parse_decimal, scan_csv, to_json, witness_files, BoundReportFile, ChowFile, PolyFile,
    ScanFile, ZeroCycleFile,
};
use crate::harness::{scan_primes, Verdict};
use crate::instance::{conic_family, plant_instance, Instance};
use crate::{selftest, HarnessError, HResult};
use chowbez_core::chowforms::{chow_plane_curve, chow_zero_cycle};
use chowbez_core::combinat::{bezout_bound, BoundParams, HeightInput};
use chowbez_core::exactnum::Real;
use chowbez_core::heights::point_height_hk;
use chowbez_core::modfactor::DEFAULT_COST_CAP;
use chowbez_core::multipoly::MHPoly;
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "chowbez",
    version,
    about = "Chow forms, projective heights, and the primes where a plane curve decomposes"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the decomposability bound; prints the itemized report as JSON.
    Bound {
        /// Ambient projective dimension (inferred with --from-chow).
        #[arg(long)]
        s: Option<u32>,
        /// Cycle degree (inferred with --from-chow).
        #[arg(long)]
        d: Option<u32>,
        /// Fiber dimension (inferred with --from-chow).
        #[arg(long)]
        r: Option<u32>,
        /// Component degree, 1 <= n <= d-1.
        #[arg(long)]
        n: u32,
        /// Height as a decimal string (default 0).
        #[arg(long, conflicts_with = "from_chow")]
        height: Option<String>,
        /// Compute the point height from a Chow form file.
        #[arg(long)]
        from_chow: Option<PathBuf>,
        /// Treat --height as a cycle height: add the transfer offset.
        #[arg(long, requires = "height")]
        cycle_height: bool,
    },
    /// Compute a Chow form; prints the Chow point as JSON.
    Chow {
        /// Plane-curve form file (polynomial JSON).
        #[arg(long, conflicts_with = "zero_cycle")]
        input: Option<PathBuf>,
        /// Zero-cycle file {"f": [...], "h": [...]} instead of a curve.
        #[arg(long)]
        zero_cycle: Option<PathBuf>,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Scan all primes up to a bound for decomposable fibers.
    Scan {
        /// Plane-curve form file (polynomial JSON).
        #[arg(long)]
        input: PathBuf,
        /// Component degree to search for.
        #[arg(long)]
        n: u32,
        /// Scan primes up to this bound.
        #[arg(long)]
        pmax: u64,
        /// Worker threads for the per-prime searches.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Seed recorded in the report (searches are deterministic).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Enumeration budget per extension level.
        #[arg(long, default_value_t = DEFAULT_COST_CAP)]
        cost_cap: u64,
        /// Also write a CSV (prime, decomposes, k, witness_file).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write one witness JSON per reducible prime into this directory.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        /// Scan even when the indecomposability hypothesis is uncertified.
        #[arg(long)]
        force: bool,
    },
    /// Run the regression fixtures; exit 0 when every verdict holds.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Run the in-binary oracle-equivalence and invariant suites.
    Selftest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Conic,
    Planted,
    All,
}

/// Exit codes: 0 success/holds, 1 hypothesis failure or incomplete,
/// 2 input error, 3 internal invariant violation (including a violated
/// verdict, which is impossible unless the implementation is wrong).
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> HResult<i32> {
    match command {
        Command::Bound {
            s,
            d,
            r,
            n,
            height,
            from_chow,
            cycle_height,
        } => cmd_bound(s, d, r, n, height, from_chow, cycle_height),
        Command::Chow {
            input,
            zero_cycle,
            output,
        } => cmd_chow(input, zero_cycle, output),
        Command::Scan {
            input,
            n,
            pmax,
            jobs,
            seed,
            cost_cap,
            csv,
            witness_dir,
            force,
        } => cmd_scan(&input, n, pmax, jobs, seed, cost_cap, csv, witness_dir, force),
        Command::Verify { suite, jobs } => cmd_verify(suite, jobs),
        Command::Selftest => cmd_selftest(),
    }
}

fn read_file(path: &Path) -> HResult<String> {
    fs::read_to_string(path)
        .map_err(|e| HarnessError::Input(format!("read {}: {e}", path.display())))
}

fn write_file(path: &Path, body: &str) -> HResult<()> {
    fs::write(path, body)
        .map_err(|e| HarnessError::Input(format!("write {}: {e}", path.display())))
}

fn cmd_bound(
    s: Option<u32>,
    d: Option<u32>,
    r: Option<u32>,
    n: u32,
    height: Option<String>,
    from_chow: Option<PathBuf>,
    cycle_height: bool,
) -> HResult<i32> {
    let (params, h, input_kind) = match from_chow {
        Some(path) => {
            let body = read_file(&path)?;
            let file: ChowFile = crate::formats::from_json(&body)?;
            let chow = file.to_chow()?;
            let (fr, fs, fd) = (
                chow.shape().r() as u32,
                chow.shape().s() as u32,
                chow.degree(),
            );
            for (given, found, name) in [(s, fs, "s"), (d, fd, "d"), (r, fr, "r")] {
                if let Some(v) = given {
                    if v != found {
                        return Err(HarnessError::Input(format!(
                            "--{name} {v} disagrees with the Chow file ({found})"
                        )));
                    }
                }
            }
            let h = point_height_hk(chow.vector().entries())?;
            (BoundParams::new(fs, fd, fr, n)?, h, HeightInput::ChowPoint)
        }
        None => {
            let (s, d, r) = match (s, d, r) {
                (Some(s), Some(d), Some(r)) => (s, d, r),
                _ => {
                    return Err(HarnessError::Input(String::from(
                        "--s, --d and --r are required unless --from-chow is given",
                    )))
                }
            };
            let h = match height {
                Some(text) => {
                    let value = parse_decimal(&text)?;
                    if value.is_negative() {
                        return Err(HarnessError::Input(String::from(
                            "height must be nonnegative",
                        )));
                    }
                    Real::from_rational(&value)
                }
                None => Real::zero(),
            };
            let kind = if cycle_height {
                HeightInput::Cycle
            } else {
                HeightInput::ChowPoint
            };
            (BoundParams::new(s, d, r, n)?, h, kind)
        }
    };
    let report = bezout_bound(&h, &params, input_kind)?;
    println!("{}", to_json(&BoundReportFile::from_report(&report))?);
    Ok(0)
}

fn cmd_chow(
    input: Option<PathBuf>,
    zero_cycle: Option<PathBuf>,
    output: Option<PathBuf>,
) -> HResult<i32> {
    let chow = match (input, zero_cycle) {
        (Some(path), None) => {
            let body = read_file(&path)?;
            let file: PolyFile = crate::formats::from_json(&body)?;
            chow_plane_curve(&file.to_poly()?)?
        }
        (None, Some(path)) => {
            let body = read_file(&path)?;
            let file: ZeroCycleFile = crate::formats::from_json(&body)?;
            let (f, h) = file.coefficients()?;
            chow_zero_cycle(&f, &h)?
        }
        _ => {
            return Err(HarnessError::Input(String::from(
                "pass exactly one of --input (plane curve) or --zero-cycle",
            )))
        }
    };
    let json = to_json(&ChowFile::from_chow(&chow)?)?;
    match output {
        Some(path) => write_file(&path, &json)?,
        None => println!("{json}"),
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    input: &Path,
    n: u32,
    pmax: u64,
    jobs: usize,
    seed: u64,
    cost_cap: u64,
    csv: Option<PathBuf>,
    witness_dir: Option<PathBuf>,
    force: bool,
) -> HResult<i32> {
    let body = read_file(input)?;
    let file: PolyFile = crate::formats::from_json(&body)?;
    let poly = file.to_poly()?;
    let label = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| String::from("instance"));
    let instance = Instance::new(label, poly, n, pmax, cost_cap, seed)?;
    let report = scan_primes(&instance, jobs, force)?;

    if let Some(dir) = &witness_dir {
        fs::create_dir_all(dir)
            .map_err(|e| HarnessError::Input(format!("create {}: {e}", dir.display())))?;
        for (name, body) in witness_files(&report)? {
            write_file(&dir.join(name), &body)?;
        }
    }
    if let Some(path) = &csv {
        write_file(path, &scan_csv(&report, witness_dir.is_some()))?;
    }
    println!("{}", to_json(&ScanFile::from_report(&report)?)?);
    Ok(match report.verdict {
        Verdict::Holds => 0,
        Verdict::Incomplete => 1,
        Verdict::Violated => 3,
    })
}

/// The regression fixtures: the diagonal conic family at three
/// parameters, plus two planted curves with known reducible primes.
pub fn regression_fixtures(suite: Suite) -> HResult<Vec<Instance>> {
    let mut out = Vec::new();
    if suite != Suite::Planted {
        out.push(conic_family(2, 60, DEFAULT_COST_CAP, 1)?);
        out.push(conic_family(6, 100, DEFAULT_COST_CAP, 1)?);
        out.push(conic_family(15, 60, DEFAULT_COST_CAP, 1)?);
    }
    if suite != Suite::Conic {
        let x0 = MHPoly::plane_form(&[(1, [1, 0, 0])]);
        let x1 = MHPoly::plane_form(&[(1, [0, 1, 0])]);
        let x0px1 = MHPoly::plane_form(&[(1, [1, 0, 0]), (1, [0, 1, 0])]);
        let e7 = MHPoly::plane_form(&[(1, [0, 2, 0]), (1, [0, 0, 2])]);
        let mut planted7 = plant_instance(&x0, &x0px1, 7, &e7, 100, DEFAULT_COST_CAP, 1)?;
        planted7.expected_exact = Some([3u64, 7].into_iter().collect());
        out.push(planted7);

        let e5 = MHPoly::plane_form(&[(1, [0, 0, 2])]);
        let mut planted5 = plant_instance(&x0, &x1, 5, &e5, 60, DEFAULT_COST_CAP, 1)?;
        planted5.expected_exact = Some([5u64].into_iter().collect());
        out.push(planted5);
    }
    Ok(out)
}

fn cmd_verify(suite: Suite, jobs: usize) -> HResult<i32> {
    let jobs = if jobs == 0 {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    } else {
        jobs
    };
    let fixtures = regression_fixtures(suite)?;
    let mut all_ok = true;
    for instance in fixtures {
        let report = scan_primes(&instance, jobs, false)?;
        let mut ok = report.verdict == Verdict::Holds;
        if let Some(expected) = &instance.expected_exact {
            let got: std::collections::BTreeSet<u64> = report.reducible.iter().copied().collect();
            if &got != expected {
                ok = false;
            }
        }
        for p in &instance.expected_contains {
            if !report.reducible.contains(p) {
                ok = false;
            }
        }
        println!(
            "[{}] {}: reducible {:?}, log prod {}, bound {}, margin {}",
            if ok { "ok" } else { "FAIL" },
            instance.label,
            report.reducible,
            report.log_prod.to_decimal(6),
            report.bound.total.to_decimal(6),
            report.margin.to_decimal(6),
        );
        all_ok &= ok;
    }
    Ok(if all_ok { 0 } else { 3 })
}

fn cmd_selftest() -> HResult<i32> {
    let results = selftest::run_all();
    let mut all_ok = true;
    for r in &results {
        println!("[{}] {}: {}", if r.passed { "ok" } else { "FAIL" }, r.name, r.detail);
        all_ok &= r.passed;
    }
    Ok(if all_ok { 0 } else { 3 })
}
