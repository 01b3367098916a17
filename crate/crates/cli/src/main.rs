//! Command-line surface for the Zolotarev graph and dissection-operator
//! library. Output is deterministic: fixed field order, no timestamps; the
//! single metadata header line can be suppressed with --no-header.
//!
//! Exit codes: 0 success, 2 invalid input, 3 internal-consistency violation
//! (census routes or theorem cross-checks disagreeing).

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zolotarev_core::error::Error as CoreError;
use zolotarev_core::numtheory::gcd;
use zolotarev_core::ratfun::{
    apply_un, dissect, level_weight, parse_rational_function, reconstruct, taylor,
    RationalFunction,
};
use zolotarev_core::simult::v_basis_with_tol;
use zolotarev_core::specop::{
    artin_scan, eigenbasis_with_tol, kernel_with_tol, spectrum_search,
};
use zolotarev_core::zgraph::{build, census_bruteforce, census_formula, census_order};

#[derive(Parser)]
#[command(
    name = "zolotarev",
    version,
    about = "Zolotarev graphs and the dissection operators U_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (dot applies to `graph`, csv to `census`/`artin`).
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Relative tolerance for numeric rank decisions.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Taylor term budget override for `dissect`.
    #[arg(long, global = true)]
    terms: Option<usize>,

    /// Bound on the cyclotomic indices tried when detecting levels.
    #[arg(long, global = true, default_value_t = 200)]
    dmax: u64,

    /// Suppress the metadata header line.
    #[arg(long, global = true)]
    no_header: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build Z(n, L) and print its classification, census, and components.
    Graph {
        #[arg(long)]
        n: u64,
        #[arg(long = "L")]
        level: u64,
    },
    /// Cycle census of Z(n, L) by direct traversal, the Moebius formula,
    /// and (when gcd(n, L) = 1) the order count; flags disagreement.
    Census {
        #[arg(long)]
        n: u64,
        #[arg(long = "L")]
        level: u64,
    },
    /// Search for the smallest level certifying e^(2 pi i / N) n^(kappa-1)
    /// as an eigenvalue of U_n.
    Spectrum {
        #[arg(long)]
        n: u64,
        #[arg(long = "N")]
        target: u64,
        #[arg(long, default_value_t = 1)]
        kappa: u64,
        #[arg(long)]
        bound: u64,
    },
    /// Kernel of U_n on R(L, kappa): dimension and leaf basis.
    Kernel {
        #[arg(long)]
        n: u64,
        #[arg(long = "L")]
        level: u64,
        #[arg(long, default_value_t = 1)]
        kappa: u64,
    },
    /// Basis of the eigenspace for omega of order m.
    Basis {
        #[arg(long)]
        n: u64,
        #[arg(long = "L")]
        level: u64,
        #[arg(long, default_value_t = 1)]
        kappa: u64,
        #[arg(long)]
        m: u64,
    },
    /// Basis of the simultaneous eigenspace V(L, kappa).
    Simult {
        #[arg(long = "L")]
        level: u64,
        #[arg(long, default_value_t = 1)]
        kappa: u64,
    },
    /// Scan odd primes p <= bound for the primitive-root predicate.
    Artin {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        bound: u64,
    },
    /// Apply U_n to a rational function given inline or in a file.
    Dissect {
        #[arg(long)]
        n: u64,
        /// Rational function as text, e.g. "3*x + 17*x^3 / 1 - x^4".
        #[arg(long, conflicts_with = "file")]
        f: Option<String>,
        /// Read the rational function from a UTF-8 text file.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct CensusRow {
    length: u64,
    bruteforce: u64,
    formula: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<u64>,
}

#[derive(Serialize)]
struct CensusReport {
    n: u64,
    #[serde(rename = "L")]
    level: u64,
    agree: bool,
    rows: Vec<CensusRow>,
}

#[derive(Serialize)]
struct SpectrumMiss {
    n: u64,
    target: u64,
    bound: u64,
    witness: Option<()>,
    note: String,
}

#[derive(Serialize)]
struct DissectReport {
    n: u64,
    input: String,
    image: String,
    image_is_zero: bool,
    /// Exact rational Taylor prefix of the image, as "p/q" strings.
    taylor_prefix: Vec<String>,
    level_weight: Option<LevelWeightJson>,
    eigen: EigenVerdict,
}

#[derive(Serialize)]
struct LevelWeightJson {
    #[serde(rename = "L")]
    level: u64,
    weight: Option<u64>,
    factors: Vec<(u64, u32)>,
    residual: String,
}

#[derive(Serialize)]
struct EigenVerdict {
    is_eigenfunction: bool,
    lambda: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(payload) => {
            if let Err(e) = emit(&cli, &payload) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                CliError::Internal(_) => ExitCode::from(3),
                CliError::Invalid(_) => ExitCode::from(2),
            }
        }
    }
}

enum CliError {
    Invalid(String),
    Internal(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Internal(m) => write!(f, "{m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InternalFormulaViolation(_) | CoreError::InternalTheoremViolation(_) => {
                CliError::Internal(e.to_string())
            }
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn emit(cli: &Cli, payload: &str) -> std::io::Result<()> {
    let header = if cli.no_header {
        String::new()
    } else {
        format!("# zolotarev {} {}\n", env!("CARGO_PKG_VERSION"), describe(&cli.command))
    };
    let body = format!("{header}{payload}\n");
    match &cli.out {
        Some(path) => fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn describe(cmd: &Command) -> String {
    match cmd {
        Command::Graph { n, level } => format!("graph --n {n} --L {level}"),
        Command::Census { n, level } => format!("census --n {n} --L {level}"),
        Command::Spectrum {
            n,
            target,
            kappa,
            bound,
        } => format!("spectrum --n {n} --N {target} --kappa {kappa} --bound {bound}"),
        Command::Kernel { n, level, kappa } => {
            format!("kernel --n {n} --L {level} --kappa {kappa}")
        }
        Command::Basis { n, level, kappa, m } => {
            format!("basis --n {n} --L {level} --kappa {kappa} --m {m}")
        }
        Command::Simult { level, kappa } => format!("simult --L {level} --kappa {kappa}"),
        Command::Artin { n, bound } => format!("artin --n {n} --bound {bound}"),
        Command::Dissect { n, .. } => format!("dissect --n {n}"),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn require(cond: bool, msg: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Invalid(msg.to_string()))
    }
}

/// n^(kappa-1) must fit the operator's u64 scale.
fn require_scale(n: u64, kappa: u64) -> Result<(), CliError> {
    let fits = u32::try_from(kappa - 1)
        .ok()
        .and_then(|e| n.checked_pow(e))
        .is_some();
    require(fits, "n^(kappa-1) exceeds the supported integer range")
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Graph { n, level } => {
            require(*n >= 1 && *level >= 1, "graph: need n >= 1 and L >= 1")?;
            let g = build(*n, *level);
            let report = g.report();
            let counts_line = format!(
                "Z({},{}): roots={} leaves={} branches={} components={} height={} L_n={}",
                report.n,
                report.level,
                report.counts.roots,
                report.counts.leaves,
                report.counts.branches,
                report.components.len(),
                report.height,
                report.simplified_level
            );
            Ok(match cli.format {
                Format::Dot => format!("// {counts_line}\n{}", g.to_dot().trim_end()),
                Format::Json => json(&report),
                Format::Csv | Format::Text => counts_line,
            })
        }
        Command::Census { n, level } => {
            require(*n >= 1 && *level >= 1, "census: need n >= 1 and L >= 1")?;
            let brute = census_bruteforce(&build(*n, *level));
            let formula = census_formula(*n, *level)?;
            let order = if gcd(*n, *level) == 1 {
                Some(census_order(*n, *level)?)
            } else {
                None
            };
            let mut lengths: Vec<u64> = brute.entries().keys().copied().collect();
            for &j in formula.entries().keys() {
                if !lengths.contains(&j) {
                    lengths.push(j);
                }
            }
            lengths.sort_unstable();
            let rows: Vec<CensusRow> = lengths
                .iter()
                .map(|&j| CensusRow {
                    length: j,
                    bruteforce: brute.get(j),
                    formula: formula.get(j),
                    order: order.as_ref().map(|c| c.get(j)),
                })
                .collect();
            let agree = formula == brute && order.as_ref().is_none_or(|c| *c == brute);
            let report = CensusReport {
                n: *n,
                level: *level,
                agree,
                rows,
            };
            if !agree {
                return Err(CliError::Internal(format!(
                    "census routes disagree for Z({n},{level}): {}",
                    json(&report)
                )));
            }
            Ok(match cli.format {
                Format::Csv => {
                    let mut out = String::from("length,bruteforce,formula,order\n");
                    for r in &report.rows {
                        out.push_str(&format!(
                            "{},{},{},{}\n",
                            r.length,
                            r.bruteforce,
                            r.formula,
                            r.order.map_or(String::new(), |v| v.to_string())
                        ));
                    }
                    out.push_str(&format!("# agree={}", report.agree));
                    out
                }
                Format::Text => {
                    let mut out = format!("census of Z({n},{level}): agree={}\n", report.agree);
                    for r in &report.rows {
                        out.push_str(&format!("  b_{} = {}\n", r.length, r.bruteforce));
                    }
                    out.trim_end().to_string()
                }
                _ => json(&report),
            })
        }
        Command::Spectrum {
            n,
            target,
            kappa,
            bound,
        } => {
            require(*n >= 2, "spectrum: need n >= 2")?;
            require(*target >= 1 && *kappa >= 1 && *bound >= 1, "spectrum: positive N, kappa, bound")?;
            Ok(match spectrum_search(*n, *target, *kappa, *bound) {
                Some(w) => json(&w),
                None => json(&SpectrumMiss {
                    n: *n,
                    target: *target,
                    bound: *bound,
                    witness: None,
                    note: "inconclusive below bound".into(),
                }),
            })
        }
        Command::Kernel { n, level, kappa } => {
            require(
                *n >= 1 && *level >= 1 && *kappa >= 1,
                "kernel: positive n, L, kappa",
            )?;
            require_scale(*n, *kappa)?;
            let report = kernel_with_tol(*n, *level, *kappa, cli.tol)?;
            Ok(json(&report))
        }
        Command::Basis { n, level, kappa, m } => {
            require(
                *n >= 1 && *level >= 1 && *kappa >= 1 && *m >= 1,
                "basis: positive n, L, kappa, m",
            )?;
            require_scale(*n, *kappa)?;
            let report = eigenbasis_with_tol(*n, *level, *kappa, *m, cli.tol)?;
            Ok(json(&report))
        }
        Command::Simult { level, kappa } => {
            require(*level >= 1 && *kappa >= 1, "simult: positive L, kappa")?;
            let report = v_basis_with_tol(*level, *kappa, cli.tol)?;
            Ok(json(&report))
        }
        Command::Artin { n, bound } => {
            require(*n >= 2 && *bound >= 3, "artin: need n >= 2 and bound >= 3")?;
            let report = artin_scan(*n, *bound)?;
            Ok(match cli.format {
                Format::Csv => {
                    let mut out = String::from("p,qualifies,ord_p_n\n");
                    for r in &report.rows {
                        out.push_str(&format!("{},{},{}\n", r.p, r.qualifies, r.ord));
                    }
                    out.push_str(&format!(
                        "# qualifying={} scanned={} density={}",
                        report.count, report.scanned, report.density
                    ));
                    out
                }
                _ => json(&report),
            })
        }
        Command::Dissect { n, f, file } => {
            require(*n >= 1, "dissect: need n >= 1")?;
            let text = match (f, file) {
                (Some(inline), None) => inline.clone(),
                (None, Some(path)) => fs::read_to_string(path)
                    .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?,
                _ => return Err(CliError::Invalid("dissect: provide exactly one of --f or --file".into())),
            };
            let input = parse_rational_function(text.trim())?;
            let image = match cli.terms {
                None => apply_un(&input, *n)?,
                Some(budget) => {
                    require(budget >= 2, "dissect: --terms must be at least 2")?;
                    let prefix = taylor(&input, budget);
                    reconstruct(&dissect(&prefix, *n))?
                }
            };
            let lw = level_weight(&image, cli.dmax);
            let level_weight_json = (!image.is_zero()).then(|| LevelWeightJson {
                level: lw.level,
                weight: lw.weight,
                factors: lw.factors.iter().map(|(&d, &m)| (d, m)).collect(),
                residual: lw.residual.to_string(),
            });
            let eigen = eigen_verdict(&input, &image);
            let prefix_len = cli.terms.unwrap_or(12).min(64);
            let taylor_prefix = taylor(&image, prefix_len)
                .iter()
                .map(|c| {
                    use num::traits::One;
                    if c.denom().is_one() {
                        c.numer().to_string()
                    } else {
                        format!("{}/{}", c.numer(), c.denom())
                    }
                })
                .collect();
            let report = DissectReport {
                n: *n,
                input: input.to_string(),
                image: image.to_string(),
                image_is_zero: image.is_zero(),
                taylor_prefix,
                level_weight: level_weight_json,
                eigen,
            };
            Ok(match cli.format {
                Format::Text => {
                    let mut out = format!("U_{n}({}) = {}", report.input, report.image);
                    if let Some(lw) = &report.level_weight {
                        let weight = match lw.weight {
                            Some(w) => w.to_string(),
                            None if lw.factors.is_empty() => "none".into(),
                            None => "non-uniform".into(),
                        };
                        out.push_str(&format!(
                            "\nlevel = {}, weight = {weight}, residual = {}",
                            lw.level, lw.residual
                        ));
                    }
                    if report.eigen.is_eigenfunction {
                        out.push_str(&format!(
                            "\neigenfunction: U_{n} f = {} f",
                            report.eigen.lambda.as_deref().unwrap_or("?")
                        ));
                    }
                    out
                }
                _ => json(&report),
            })
        }
    }
}

/// Decide whether `image = lambda * input` for a scalar lambda (zero
/// allowed), by cross-multiplied polynomial comparison.
fn eigen_verdict(input: &RationalFunction, image: &RationalFunction) -> EigenVerdict {
    if input.is_zero() {
        return EigenVerdict {
            is_eigenfunction: false,
            lambda: None,
        };
    }
    if image.is_zero() {
        return EigenVerdict {
            is_eigenfunction: true,
            lambda: Some("0".into()),
        };
    }
    let lhs = image.numerator() * input.denominator();
    let rhs = input.numerator() * image.denominator();
    let k = rhs
        .coeffs()
        .iter()
        .position(|c| !num::traits::Zero::is_zero(c));
    let Some(k) = k else {
        return EigenVerdict {
            is_eigenfunction: false,
            lambda: None,
        };
    };
    let lambda = lhs.coeff(k) / rhs.coeff(k);
    if lhs == rhs.scale(&lambda) {
        let text = if num::traits::One::is_one(lambda.denom()) {
            lambda.numer().to_string()
        } else {
            format!("{}/{}", lambda.numer(), lambda.denom())
        };
        EigenVerdict {
            is_eigenfunction: true,
            lambda: Some(text),
        }
    } else {
        EigenVerdict {
            is_eigenfunction: false,
            lambda: None,
        }
    }
}
