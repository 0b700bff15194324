use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use charp_diffalg::formats::{parse_algebra, parse_system};
use charp_diffalg::geometry::solve_system;
use charp_diffalg::spectra::{self, plural_points};
use charp_diffalg::taylor::{self, RingMapToField};
use charp_diffalg::{Bounds, Error, FinDimDiffAlgebra, Report, ReportLine, Subspace};

mod hw;
mod output;

use output::{info, render, Format};

/// Exact computations in characteristic-p differential algebra.
#[derive(Parser)]
#[command(name = "charp-diffalg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a finite-dimensional differential algebra file.
    Algebra {
        path: PathBuf,
        /// Comma-separated subset of validate,ideals,spectra,topology,homeo,simple,opens.
        #[arg(long, value_delimiter = ',', default_value = "validate,ideals,spectra,topology,homeo,simple,opens")]
        checks: Vec<Check>,
        #[arg(long, value_enum, default_value = "lines")]
        format: Format,
        /// Largest number of algebra elements to enumerate.
        #[arg(long)]
        bound: Option<u128>,
    },
    /// Find all zeros of a polynomial system file.
    Solve {
        path: PathBuf,
        /// Precision N of the searched points; defaults to the file header.
        #[arg(long)]
        precision: Option<u32>,
        /// Largest search domain.
        #[arg(long)]
        bound: Option<u128>,
        #[arg(long, value_enum, default_value = "lines")]
        format: Format,
    },
    /// Taylor homomorphism of an algebra into truncated Hurwitz series.
    Taylor {
        path: PathBuf,
        #[arg(long, default_value_t = 4)]
        precision: u32,
        /// Values of the ring map on the basis; defaults to the residue map.
        #[arg(long, value_delimiter = ',')]
        phi: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value = "lines")]
        format: Format,
    },
    /// Hurwitz series calculator, e.g. `hw p=2 m=1 N=3 mul (1+[1]) [1]`.
    Hw {
        #[arg(required = true, allow_hyphen_values = true)]
        script: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Check {
    Validate,
    Ideals,
    Spectra,
    Topology,
    Homeo,
    Simple,
    Opens,
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BOUND: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::EnumerationTooLarge { .. } | Error::SearchSpaceTooLarge { .. } | Error::DimensionTooLarge(_) => EXIT_BOUND,
        Error::CrossCheckFailed(_) => EXIT_FAIL,
        _ => EXIT_INPUT,
    }
}

fn fail(path: Option<&Path>, e: &Error) -> ExitCode {
    let place = path.map(|p| format!("{}: ", p.display())).unwrap_or_default();
    match e {
        Error::Syntax { line, column, message } => eprintln!("error: {place}line {line}, column {column}: {message}"),
        other => eprintln!("error: {place}{other}"),
    }
    ExitCode::from(exit_code(e))
}

fn read(path: &Path) -> Result<String, ExitCode> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(EXIT_INPUT)
    })
}

fn finish(report: &Report, format: Format) -> ExitCode {
    print!("{}", render(report, format));
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "-",
    }
}

fn run_algebra(a: &FinDimDiffAlgebra, checks: &[Check]) -> charp_diffalg::Result<Report> {
    let mut r = Report::new();
    let validation = a.validate();
    if checks.contains(&Check::Validate) || !validation.is_valid() {
        r.push(ReportLine::check("VALIDATE", &[], validation.is_valid()));
        for v in &validation.violations {
            r.push(info("VIOLATION", v.to_string().split(' ').map(String::from)));
        }
        if !validation.is_valid() {
            return Ok(r);
        }
    }
    let zero = Subspace::zero(a.field(), a.dim());
    for check in checks {
        match check {
            Check::Validate => {}
            Check::Ideals => {
                r.push(info("NILRADICAL", [a.nilradical()?.render()]));
                r.push(info("RAD0", [a.quasiradical_rad(&zero)?.render()]));
                let ideals = a.enumerate_ideals()?;
                r.push(info("IDEALS", [ideals.len().to_string()]));
                for (i, q) in ideals.iter().enumerate() {
                    let c = a.classify_ideal(q)?;
                    r.push(info(
                        "IDEAL",
                        [
                            i.to_string(),
                            format!("dim={}", q.dim()),
                            format!("basis={}", q.render()),
                            format!("differential={}", c.is_differential),
                            format!("primary={}", c.is_primary),
                            format!("prime={}", c.is_prime),
                            format!("maximal={}", c.is_maximal),
                            format!("quasiradical={}", flag(c.is_quasiradical)),
                            format!("quasiprime={}", flag(c.is_quasiprime)),
                            format!("quasimaximal={}", flag(c.is_quasimaximal)),
                        ],
                    ));
                }
            }
            Check::Spectra => {
                for l in [spectra::build_spec(a)?, spectra::build_qspec(a)?] {
                    r.push(info(&l.kind().to_string(), [plural_points(l.len())]));
                    for line in l.dump() {
                        let mut words = line.split(' ').map(String::from);
                        let tag = words.next().unwrap_or_default();
                        r.push(info(&tag, words));
                    }
                }
            }
            Check::Topology => {
                r.extend(spectra::verify_topology_axioms(&spectra::build_qspec(a)?)?);
            }
            Check::Homeo => r.extend(spectra::check_homeomorphism(a)?),
            Check::Simple => {
                let q = a.quasifield()?;
                r.push(info("SIMPLE", [q.is_some().to_string()]));
                if let Some(q) = q {
                    r.push(info("MAXIMAL", [q.maximal_ideal.render()]));
                }
            }
            Check::Opens => {
                let l = spectra::build_qspec(a)?;
                let elements = charp_diffalg::linalg::count_vectors(a.field(), a.dim());
                if elements > a.bounds().elements {
                    return Err(Error::EnumerationTooLarge { size: elements, bound: a.bounds().elements });
                }
                let (mut good, mut dense) = (None, None);
                for f in charp_diffalg::linalg::AllVectors::new(a.field(), a.dim()) {
                    if !spectra::good_open_decomposition(&l, &f)?.holds() {
                        good.get_or_insert(a.render(&f));
                    }
                    if !spectra::density_check(&l, &f)?.consistent() {
                        dense.get_or_insert(a.render(&f));
                    }
                }
                for (tag, w) in [("GOODOPEN", good), ("DENSITY", dense)] {
                    let line = ReportLine::check(tag, &[], w.is_none()).with_detail(format!("checked={elements}"));
                    r.push(match w {
                        Some(w) => line.with_detail(format!("witness={w}")),
                        None => line,
                    });
                }
            }
        }
    }
    Ok(r)
}

fn bounds(bound: Option<u128>) -> Bounds {
    let mut b = Bounds::from_env();
    if let Some(v) = bound {
        b.elements = v;
        b.search = v;
    }
    b
}

fn algebra_cmd(path: &Path, checks: &[Check], format: Format, bound: Option<u128>) -> ExitCode {
    let text = match read(path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let a = match parse_algebra(&text) {
        Ok(a) => a.with_bounds(bounds(bound)),
        Err(e) => return fail(Some(path), &e),
    };
    match run_algebra(&a, checks) {
        Ok(r) => finish(&r, format),
        Err(e) => fail(Some(path), &e),
    }
}

fn solve_cmd(path: &Path, precision: Option<u32>, bound: Option<u128>, format: Format) -> ExitCode {
    let text = match read(path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let file = match parse_system(&text) {
        Ok(f) => f,
        Err(e) => return fail(Some(path), &e),
    };
    let n = precision.unwrap_or(file.precision);
    match solve_system(&file.system, n, bounds(bound).search) {
        Ok(s) => {
            print!("{}", output::render_solutions(&s, format));
            ExitCode::SUCCESS
        }
        Err(e) => fail(Some(path), &e),
    }
}

fn taylor_cmd(path: &Path, precision: u32, phi: Option<Vec<u32>>, format: Format) -> ExitCode {
    let text = match read(path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let a = match parse_algebra(&text) {
        Ok(a) => a.with_bounds(bounds(None)),
        Err(e) => return fail(Some(path), &e),
    };
    let result = (|| -> charp_diffalg::Result<Report> {
        let mut r = Report::new();
        let validation = a.validate();
        if !validation.is_valid() {
            r.push(ReportLine::check("VALIDATE", &[], false));
            return Ok(r);
        }
        let phi = match phi {
            Some(v) => RingMapToField::new(&a, v)?,
            None => taylor::residue_map(&a)?,
        };
        let table = taylor::taylor_hom(&a, &phi, precision);
        for line in taylor::table_lines(&a, &table) {
            let mut words = line.splitn(2, ' ').map(String::from);
            let tag = words.next().unwrap_or_default();
            r.push(info(&tag, words));
        }
        r.push(info("KERNEL", [taylor::taylor_kernel(&a, &phi, precision).render()]));
        r.extend(taylor::check_universal(&a, &phi, precision)?);
        Ok(r)
    })();
    match result {
        Ok(r) => finish(&r, format),
        Err(e) => fail(Some(path), &e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Algebra { path, checks, format, bound } => algebra_cmd(&path, &checks, format, bound),
        Command::Solve { path, precision, bound, format } => solve_cmd(&path, precision, bound, format),
        Command::Taylor { path, precision, phi, format } => taylor_cmd(&path, precision, phi, format),
        Command::Hw { script } => match hw::run(&script) {
            Ok(s) => {
                println!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(None, &e),
        },
    }
}
