//! The `ncdp` command line. Exit codes: 0 success, 1 domain or validation
//! failure, 2 parse or I/O failure.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use crate::collections::{
    apply_braid, check_collection, check_very_strong_line_bundles, composite_left_mutation, gram_matrix, helix_window,
    BraidWord,
};
use crate::formats::{
    read_collection, read_potential, read_quiver, to_json, write_atomic, CollectionFile, FormatError, PotentialFile,
    QuiverFile,
};
use crate::graded::{verify_type_q, FieldMode};
use crate::kernel::is_prime;
use crate::lattice::canonical_twist;
use crate::points::{count_point_representations, point_representation_system};
use crate::quiver::{
    covering_segment, cyclic_derivative, enumerate_primitive_cycles, jacobian_relations, rollup_quiver_from_foundation,
    PotentialOptions,
};
use crate::sklyanin::{
    hesse_smoothness, point_scheme_cubic, sklyanin_point_matrix, sklyanin_potential, PointScheme, SklyaninError,
    SklyaninParams,
};

pub const DEFAULT_MAXLEVEL: usize = 2;

/// A failed command and its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2.
    Parse(String),
    /// Exit 1.
    Domain(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) => m,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        if e.is_parse_failure() {
            CliError::Parse(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<SklyaninError> for CliError {
    fn from(e: SklyaninError) -> Self {
        match e {
            SklyaninError::BadParams(_) | SklyaninError::Kernel(_) => CliError::Parse(e.to_string()),
            SklyaninError::Format(f) => f.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn io(e: std::io::Error) -> CliError {
    CliError::Parse(e.to_string())
}

impl FromStr for FieldMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rational" | "q" | "Q" => Ok(FieldMode::Rational),
            _ => {
                let p = s.strip_prefix("modp:").and_then(|p| p.parse::<u64>().ok());
                match p {
                    Some(p) if is_prime(p) => Ok(FieldMode::Modp(p)),
                    _ => Err(format!("expected `rational` or `modp:P` with P prime, got {s:?}")),
                }
            }
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ncdp",
    version,
    about = "Helices, rolled-up quivers with potential and type-Q checks on del Pezzo surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Euler-form Gram matrix of a collection.
    Euler { collection: String },
    /// Apply a braid word such as "L1 R2" and write the resulting collection.
    Mutate {
        collection: String,
        word: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List helix members over several periods and check the twist identity.
    Helix {
        collection: String,
        #[arg(long, default_value_t = 2)]
        periods: usize,
        /// Also certify very-strongness (line bundles only); fails with exit 1.
        #[arg(long)]
        very_strong: bool,
    },
    /// Solve for the rolled-up helix quiver of a foundation.
    Rollup {
        collection: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a window of the covering quiver.
    Cover {
        quiver: String,
        #[arg(long, default_value_t = 0)]
        lo: i64,
        #[arg(long, default_value_t = 1)]
        hi: i64,
    },
    /// Enumerate primitive cycle classes up to a length.
    Cycles {
        quiver: String,
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
    },
    /// Cyclic derivatives of a potential.
    Deriv {
        potential: String,
        #[arg(long)]
        arrow: Option<String>,
    },
    /// Relation-count and graded-dimension test of type-Q regularity.
    Verify {
        potential: String,
        collection: String,
        #[arg(long, default_value_t = DEFAULT_MAXLEVEL)]
        maxlevel: usize,
        #[arg(long, default_value = "rational")]
        field: FieldMode,
        /// Write the dimension table as TSV.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Write the Sklyanin potential with parameters a,b,c.
    Sklyanin {
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Point-scheme matrix and cubic of the Sklyanin relations.
    Pointscheme {
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// Count point representations over F_p.
    Points {
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long)]
        prime: u64,
    },
}

fn emit(out: &mut dyn Write, output: &Option<PathBuf>, contents: &str) -> Result<(), CliError> {
    match output {
        Some(p) => Ok(write_atomic(p, contents)?),
        None => out.write_all(contents.as_bytes()).map_err(io),
    }
}

fn format_row(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t")
}

/// Runs one parsed command, writing normal output to `out`.
pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Euler { collection } => {
            let s = read_collection(collection)?.sequence().map_err(domain)?;
            for row in gram_matrix(&s).map_err(domain)? {
                writeln!(out, "{}", format_row(&row)).map_err(io)?;
            }
            write!(out, "{}", check_collection(&s)).map_err(io)?;
        }
        Command::Mutate { collection, word, output } => {
            let file = read_collection(collection)?;
            let s = file.sequence().map_err(domain)?;
            let w: BraidWord = word.parse().map_err(|e| CliError::Parse(format!("{e}")))?;
            let m = apply_braid(&s, &w).map_err(domain)?;
            emit(out, output, &to_json(&CollectionFile::from_sequence(&m)))?;
        }
        Command::Helix { collection, periods, very_strong } => {
            let s = read_collection(collection)?.sequence().map_err(domain)?;
            let l = s.len() as i64;
            if l == 0 {
                return Err(CliError::Domain("empty collection".into()));
            }
            let lo = s.base_index;
            let hi = lo + l * (*periods).max(1) as i64 - 1;
            let w = helix_window(&s, lo - l, hi).map_err(domain)?;
            for (k, c) in w.classes.iter().enumerate().skip(l as usize) {
                writeln!(out, "E_{}\t{c}", lo + k as i64 - l).map_err(io)?;
            }
            let mut twist_ok = true;
            for last in l as usize..w.len() {
                let lhs = composite_left_mutation(&w, last, l as usize).map_err(domain)?;
                let rhs = canonical_twist(&w.classes[last], s.ctx).map_err(domain)?;
                twist_ok &= lhs == rhs;
            }
            writeln!(out, "omega twist identity: {}", if twist_ok { "ok" } else { "VIOLATED" }).map_err(io)?;
            if !twist_ok {
                return Err(CliError::Domain("composite left mutation does not match the canonical twist".into()));
            }
            if *very_strong {
                let r = check_very_strong_line_bundles(&s, *periods).map_err(domain)?;
                write!(out, "{r}").map_err(io)?;
                if !r.passed() {
                    return Err(CliError::Domain("helix is not very strong".into()));
                }
            }
        }
        Command::Rollup { collection, output } => {
            let s = read_collection(collection)?.sequence().map_err(domain)?;
            let r = rollup_quiver_from_foundation(&s).map_err(domain)?;
            write!(out, "{}", r.report).map_err(io)?;
            for (i, row) in r.multiplicities.iter().enumerate() {
                for (j, &m) in row.iter().enumerate() {
                    if m > 0 {
                        writeln!(out, "arrows {} -> {}: {m}", i + 1, j + 1).map_err(io)?;
                    }
                }
            }
            writeln!(out, "total arrows: {}", r.quiver.num_arrows()).map_err(io)?;
            if let Some(p) = output {
                write_atomic(p, &to_json(&QuiverFile::from_quiver(&r.quiver)))?;
            }
        }
        Command::Cover { quiver, lo, hi } => {
            if lo > hi {
                return Err(CliError::Parse(format!("--lo {lo} exceeds --hi {hi}")));
            }
            let q = read_quiver(quiver)?;
            let seg = covering_segment(&q, *lo, *hi).map_err(domain)?;
            write!(out, "{seg}").map_err(io)?;
        }
        Command::Cycles { quiver, maxlen } => {
            let q = read_quiver(quiver)?;
            if *maxlen == 0 {
                eprintln!("warning: maxlen 0 admits no cycles");
            }
            let cycles = enumerate_primitive_cycles(&q, *maxlen);
            for c in &cycles {
                writeln!(out, "{}", c.ids(&q).join(" ")).map_err(io)?;
            }
            writeln!(out, "{} primitive cycle classes", cycles.len()).map_err(io)?;
        }
        Command::Deriv { potential, arrow } => {
            let (q, phi, _) = read_potential(potential, PotentialOptions::relaxed())?;
            let arrows: Vec<usize> = match arrow {
                Some(id) => vec![q.arrow_index(id).map_err(domain)?],
                None => (0..q.num_arrows()).collect(),
            };
            for a in arrows {
                writeln!(out, "d/d{}\t{}", q.arrow_id(a), cyclic_derivative(&q, &phi, a).format(&q)).map_err(io)?;
            }
            for w in jacobian_relations(&q, &phi).warnings {
                eprintln!("warning: {w}");
            }
        }
        Command::Verify { potential, collection, maxlevel, field, table } => {
            let (q, phi, _) = read_potential(potential, PotentialOptions::relaxed())?;
            let s = read_collection(collection)?.sequence().map_err(domain)?;
            let r = verify_type_q(&q, &phi, &s, *maxlevel, *field);
            write!(out, "{r}").map_err(io)?;
            if let (Some(p), Some(t)) = (table, &r.table) {
                write_atomic(p, &t.to_tsv())?;
            }
            if !r.passed {
                return Err(CliError::Domain(r.first_mismatch.unwrap_or_else(|| "type-Q check failed".into())));
            }
        }
        Command::Sklyanin { params, output } => {
            let p = SklyaninParams::parse(params)?;
            let (q, phi) = sklyanin_potential(&p)?;
            emit(out, output, &to_json(&PotentialFile::from_potential(&q, &phi, "builtin:p2")))?;
        }
        Command::Pointscheme { params } => {
            let p = SklyaninParams::parse(params)?;
            let m = sklyanin_point_matrix(&p)?;
            writeln!(out, "matrix:\n{}", m.format(&["x", "y", "z"])).map_err(io)?;
            match point_scheme_cubic(&m)? {
                PointScheme::IdenticallyZero => writeln!(out, "cubic: identically zero").map_err(io)?,
                PointScheme::Cubic(f) => {
                    writeln!(out, "cubic: {}", f.format()).map_err(io)?;
                    match hesse_smoothness(&f) {
                        Ok(s) => writeln!(out, "smooth: {s}").map_err(io)?,
                        Err(e) => writeln!(out, "smooth: unknown ({e})").map_err(io)?,
                    }
                }
            }
        }
        Command::Points { params, prime } => {
            let p = SklyaninParams::parse(params)?;
            let (q, phi) = sklyanin_potential(&p)?;
            let sys = point_representation_system(&q, &jacobian_relations(&q, &phi)).map_err(domain)?;
            let n = count_point_representations(&sys, *prime).map_err(domain)?;
            writeln!(out, "{n}").map_err(io)?;
        }
    }
    Ok(())
}

/// Parses arguments (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}
