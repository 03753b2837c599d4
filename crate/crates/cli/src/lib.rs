//! Command-line front end: group statistics, classification, automorphism
//! counts, catalog export and the verification report.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use involute_core::catalog::{self, CatalogError, MAX_CATALOG_ORDER, MAX_ENUMERATION_ORDER};
use involute_core::groupspec::{parse_spec, EvalError};
use involute_core::involutions::{format_ratio, stats};
use involute_core::structure::{self as st, AutomorphismLimits};
use involute_core::verifier::{verify_all, VerifyConfig};
use involute_core::{Group, Rational};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "involute", version, about = "Involution statistics of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order, involution count, proportion and center of a group.
    Stats { spec: String },
    /// Which proportion regime a group falls in, with a witness at 3/4.
    Classify { spec: String },
    /// Automorphism group order and inversion counts of its involutions.
    Aut { spec: String },
    /// Run every check and print the report.
    Verify {
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[arg(long = "dihedral-max", default_value_t = 64)]
        dihedral_max: usize,
        #[arg(long, default_value_t = MAX_ENUMERATION_ORDER)]
        enumerate_up_to: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Write the catalog as Cayley-table files plus an index.
    Catalog {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Io { .. } => Failure::Io(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Io { .. } => Failure::Io(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "I/O error: {msg}");
            EXIT_IO
        }
    }
}

fn dispatch(command: Command, out: &mut impl Write) -> Result<u8, Failure> {
    let text = match command {
        Command::Stats { spec } => stats_text(&load(&spec)?),
        Command::Classify { spec } => classify_text(&load(&spec)?),
        Command::Aut { spec } => aut_text(&load(&spec)?)?,
        Command::Verify {
            max_order,
            dihedral_max,
            enumerate_up_to,
            format,
            out: path,
            threads,
        } => {
            if enumerate_up_to > MAX_ENUMERATION_ORDER {
                return Err(Failure::Usage(format!(
                    "--enumerate-up-to is limited to {MAX_ENUMERATION_ORDER}"
                )));
            }
            if max_order > MAX_CATALOG_ORDER {
                return Err(Failure::Usage(format!("--max-order is limited to {MAX_CATALOG_ORDER}")));
            }
            let config = VerifyConfig {
                max_order,
                dihedral_max_n: dihedral_max,
                enumerate_up_to,
                threads,
                ..VerifyConfig::default()
            };
            let report = verify_all(config).map_err(|e| Failure::Usage(e.to_string()))?;
            let body = match format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            let text = match path {
                Some(path) => {
                    fs::write(&path, body).map_err(|e| io_failure(&path, e))?;
                    let verdict = if report.overall_pass { "PASS" } else { "FAIL" };
                    format!("{verdict}: report written to {}\n", path.display())
                }
                None => body,
            };
            write_out(out, &text)?;
            return Ok(if report.overall_pass { EXIT_OK } else { EXIT_VERIFICATION_FAILED });
        }
        Command::Catalog { max_order, out_dir } => {
            let entries = catalog::constructed_catalog(max_order)?;
            fs::create_dir_all(&out_dir).map_err(|e| io_failure(&out_dir, e))?;
            let lines = catalog::export_catalog(&entries, &out_dir)?;
            format!(
                "wrote {} groups to {} ({})\n",
                lines.len(),
                out_dir.display(),
                catalog::INDEX_FILE
            )
        }
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

fn write_out(out: &mut impl Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Io(format!("stdout: {e}")))
}

fn load(spec: &str) -> Result<Group, Failure> {
    let parsed = parse_spec(spec).map_err(|e| Failure::Usage(format!("{spec}: {e}")))?;
    Ok(parsed.evaluate(Path::new("."))?)
}

fn decimal(r: &Rational) -> String {
    format!("{:.6}", *r.numer() as f64 / *r.denom() as f64)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn stats_text(group: &Group) -> String {
    let s = stats(group);
    format!(
        "group: {}\norder: {}\nj: {}\nalpha: {} ({})\nfactorization: {}\ncenter order: {}\nelementary abelian 2-group: {}\n",
        group.name(),
        s.order,
        s.j_count,
        format_ratio(&s.alpha),
        decimal(&s.alpha),
        s.factorization,
        st::center(group).len(),
        yes_no(st::is_elementary_abelian2(group)),
    )
}

fn classify_text(group: &Group) -> String {
    let s = stats(group);
    let three_quarters = Rational::new(3, 4);
    let mut text = format!(
        "group: {}\nalpha: {} ({})\n",
        group.name(),
        format_ratio(&s.alpha),
        decimal(&s.alpha)
    );
    if s.alpha > three_quarters {
        text += "regime: alpha > 3/4\n";
        text += &format!(
            "elementary abelian 2-group: {}\n",
            yes_no(st::is_elementary_abelian2(group))
        );
    } else if s.alpha == three_quarters {
        text += "regime: alpha = 3/4\n";
        match st::recognize_d8_x_ea_with_witness(group) {
            Some((k, iso)) => {
                text += &format!("witness: isomorphic to D8 x C2^{k}\n");
                let images: Vec<String> = iso.images().iter().map(usize::to_string).collect();
                text += &format!("isomorphism images: {}\n", images.join(" "));
            }
            None => text += "witness: none found (not isomorphic to D8 x C2^k)\n",
        }
    } else {
        text += "regime: alpha <= 3/4\n";
    }
    text
}

fn aut_text(group: &Group) -> Result<String, Failure> {
    let perms = st::automorphisms(group, AutomorphismLimits::default()).map_err(|e| Failure::Usage(e.to_string()))?;
    let involutory: Vec<&Vec<usize>> = perms.iter().filter(|p| st::is_involutory_permutation(p)).collect();
    let mut text = format!(
        "group: {}\n|Aut|: {}\ninvolutions in Aut (identity included): {}\n",
        group.name(),
        perms.len(),
        involutory.len()
    );
    text += "inverted elements per involutory automorphism:\n";
    for p in involutory {
        let images: Vec<String> = p.iter().map(usize::to_string).collect();
        text += &format!("  [{}] inverts {}\n", images.join(" "), st::inverted_element_count(group, p));
    }
    Ok(text)
}
