//! `lefschetz-lab` command line.
//!
//! Exit status: 0 when the requested verdict is true or the certificate is
//! valid, 1 when it is false (the report carries witnesses), 2 on input errors.

pub mod document;
mod report;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lefschetz_core::catalog::{self, CatalogEntry};
use lefschetz_core::field::FieldSpec;
use lefschetz_core::lattice::{bg_solution_space, lattice_check};
use lefschetz_core::lefschetz::{contact_lefschetz, symplectic_lefschetz, theorem_main_check};
use lefschetz_core::liealg::LieAlgebra;
use lefschetz_core::linalg::{Subspace, Vector};
use lefschetz_core::symcon::{contactize, decontactize, verify_bg_conditions, ContactStructure, SymplecticStructure};
use thiserror::Error;

use document::{emit, parse_document_with, to_json, LatticeInput};
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "lefschetz-lab", version, about = "Exact Lefschetz, contactization and lattice checks for Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Read document scalars in this field instead of the document's own
    #[arg(long, global = true)]
    field: Option<String>,
    /// Include every witness and representative in the report
    #[arg(long, global = true)]
    witnesses: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Input {
    /// Algebra document (JSON)
    path: Option<PathBuf>,
    /// Catalog id instead of a document
    #[arg(long, conflicts_with = "path")]
    catalog: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    SymplecticLefschetz,
    ContactLefschetz,
    Main,
    Unimodular,
    Frobenius,
    Heisenberg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Symplectic,
    Contact,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classification and Betti numbers, optionally followed by a check
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        check: Option<Check>,
        /// Degree bound for Lefschetz checks
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
    /// s-Lefschetz in symplectic or contact mode
    Lefschetz {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
    /// Emit the contactization of a symplectic document
    Contactize {
        #[command(flatten)]
        input: Input,
    },
    /// Emit the symplectic quotient of a contact document
    Decontactize {
        #[command(flatten)]
        input: Input,
    },
    /// Benson-Gordon conditions (i)-(vi) for an abelian complement
    BgCheck {
        #[command(flatten)]
        input: Input,
        /// Basis elements spanning the complement; defaults to a coordinate complement of the commutator
        #[arg(long, value_delimiter = ',')]
        complement: Vec<String>,
    },
    /// Lattice certificate from the document's lattice block
    LatticeCheck {
        #[command(flatten)]
        input: Input,
    },
    /// Rank of the Benson-Gordon lattice system for a given k
    BgSystem {
        #[arg(long)]
        k: i64,
    },
    /// Registered examples
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    List,
    Run {
        id: String,
        #[arg(long, value_enum)]
        check: Option<Check>,
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Document(#[from] document::DocumentError),
    #[error("{0}")]
    Catalog(#[from] catalog::CatalogError),
    #[error("{0}")]
    Analysis(String),
}

fn analysis<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Analysis(e.to_string())
}

/// Everything a command may need from its input.
struct Source {
    algebra: LieAlgebra,
    symplectic: Option<SymplecticStructure>,
    contact: Option<ContactStructure>,
    lattice: Option<(LieAlgebra, LatticeInput)>,
    entry: Option<CatalogEntry>,
}

impl Source {
    fn symplectic(&self) -> Result<&SymplecticStructure, CliError> {
        self.symplectic.as_ref().ok_or_else(|| CliError::Usage("input has no symplectic form: add `omega` to the document".into()))
    }

    /// The given contact structure, or the contactization of ω.
    fn contact(&self) -> Result<ContactStructure, CliError> {
        match (&self.contact, &self.symplectic) {
            (Some(c), _) => Ok(c.clone()),
            (None, Some(s)) => Ok(contactize(s)),
            _ => Err(CliError::Usage("input has neither `eta` nor `omega`".into())),
        }
    }
}

fn load(input: &Input, field: Option<&str>) -> Result<Source, CliError> {
    match (&input.path, &input.catalog) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            let field = field.map(FieldSpec::from_text).transpose().map_err(|e| CliError::Usage(format!("--field: {e}")))?;
            let p = parse_document_with(&text, field.as_ref())?;
            let lattice = p.lattice.map(|l| (p.algebra.clone(), l));
            Ok(Source { algebra: p.algebra, symplectic: p.symplectic, contact: p.contact, lattice, entry: None })
        }
        (None, Some(id)) => {
            if field.is_some() {
                return Err(CliError::Usage("--field applies to documents, not catalog entries".into()));
            }
            let e = catalog::lookup(id)?;
            let algebra = e
                .symplectic
                .as_ref()
                .map(|s| s.algebra.clone())
                .or_else(|| e.contact.as_ref().map(|c| c.algebra.clone()))
                .ok_or_else(|| CliError::Analysis(format!("catalog entry {id} carries no algebra")))?;
            let lattice = e.lattice.as_ref().map(|l| {
                (l.algebra.clone(), LatticeInput { ideal: l.ideal.clone(), spec: l.spec.clone(), candidate: l.candidate.clone() })
            });
            Ok(Source { algebra, symplectic: e.symplectic.clone(), contact: e.contact.clone(), lattice, entry: Some(e) })
        }
        (None, None) => Err(CliError::Usage("give a document path or --catalog <id>".into())),
        (Some(_), Some(_)) => Err(CliError::Usage("give either a document path or --catalog, not both".into())),
    }
}

fn run_check(src: &Source, check: Check, s: usize) -> Result<Report, CliError> {
    Ok(match check {
        Check::SymplecticLefschetz => {
            let st = src.symplectic()?;
            Report::lefschetz(&st.algebra, s, symplectic_lefschetz(st, s).map_err(analysis)?)
        }
        Check::ContactLefschetz => {
            let c = src.contact()?;
            let r = contact_lefschetz(&c, s).map_err(analysis)?;
            Report::lefschetz(&c.algebra, s, r)
        }
        Check::Main => {
            let st = src.symplectic()?;
            match theorem_main_check(st) {
                Ok(m) => Report::flag("main", m.agree, vec![("symplectic", m.h_verdict), ("contact", m.g_verdict)]),
                Err(e) => return Err(analysis(e)),
            }
        }
        Check::Unimodular => Report::flag("unimodular", src.algebra.is_unimodular(), vec![]),
        Check::Frobenius => Report::flag("frobenius", src.symplectic()?.is_frobenius(), vec![]),
        Check::Heisenberg => {
            let g = src.contact.as_ref().map_or(&src.algebra, |c| &c.algebra);
            Report::flag("heisenberg", g.is_heisenberg(), vec![])
        }
    })
}

fn complement(g: &LieAlgebra, names: &[String]) -> Result<Subspace, CliError> {
    let f = g.field();
    if names.is_empty() {
        let units: Vec<Vector> = (0..g.dim()).map(|i| g.unit(i)).collect();
        return Ok(Subspace::span(f, g.dim(), g.commutator().greedy_complement(&units)));
    }
    let vs = names
        .iter()
        .map(|n| g.index_of(n).map(|i| g.unit(i)).ok_or_else(|| CliError::Usage(format!("--complement: unknown basis element `{n}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subspace::span(f, g.dim(), vs))
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let field = cli.field.as_deref();
    match &cli.command {
        Command::Analyze { input, check, s } => {
            let src = load(input, field)?;
            let base = Report::analyze(&src.algebra, src.symplectic.as_ref(), src.contact.as_ref(), cli.witnesses);
            match check {
                Some(c) => Ok(base.then(run_check(&src, *c, *s)?)),
                None => Ok(base),
            }
        }
        Command::Lefschetz { input, mode, s } => {
            let src = load(input, field)?;
            let mode = mode.unwrap_or(if src.symplectic.is_some() { ModeArg::Symplectic } else { ModeArg::Contact });
            let check = if mode == ModeArg::Symplectic { Check::SymplecticLefschetz } else { Check::ContactLefschetz };
            run_check(&src, check, *s)
        }
        Command::Contactize { input } => {
            let src = load(input, field)?;
            let c = contactize(src.symplectic()?);
            Ok(Report::Document(to_json(&emit(&c.algebra, None, Some(&c.eta)))))
        }
        Command::Decontactize { input } => {
            let src = load(input, field)?;
            let c = src.contact.as_ref().ok_or_else(|| CliError::Usage("input has no contact form: add `eta`".into()))?;
            let d = decontactize(c).map_err(analysis)?;
            Ok(Report::Document(to_json(&emit(&d.structure.algebra, Some(&d.structure.omega), None))))
        }
        Command::BgCheck { input, complement: names } => {
            let src = load(input, field)?;
            let st = src.symplectic()?;
            let a = complement(&st.algebra, names)?;
            let r = verify_bg_conditions(st, &a).map_err(analysis)?;
            Ok(Report::bg(&st.algebra, &a, &r))
        }
        Command::LatticeCheck { input } => {
            let src = load(input, field)?;
            let (g, l) = src.lattice.as_ref().ok_or_else(|| CliError::Usage("input has no lattice block".into()))?;
            let mut cert = lattice_check(g, &l.ideal, &l.spec, &l.candidate).map_err(analysis)?;
            if let Some(e) = &src.entry {
                cert.algebra_id = e.id.clone();
            }
            Ok(Report::lattice(&cert))
        }
        Command::BgSystem { k } => Ok(Report::bg_system(&bg_solution_space(*k).map_err(analysis)?)),
        Command::Catalog { command: CatalogCommand::List } => Ok(Report::catalog_list(&catalog::list())),
        Command::Catalog { command: CatalogCommand::Run { id, check, s } } => {
            let entry = catalog::lookup(id)?;
            match check {
                Some(c) => {
                    let input = Input { path: None, catalog: Some(id.clone()) };
                    run_check(&load(&input, None)?, *c, *s)
                }
                None => Ok(Report::manifest(&entry, &entry.run())),
            }
        }
    }
}

/// Runs the command line (without the program name stripped) and returns the
/// exit status with everything that should be printed.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let code = if report.passed() { EXIT_OK } else { EXIT_FALSE };
            let out = match cli.format {
                Format::Text => report.text(),
                Format::Json => report.json(),
            };
            (code, out)
        }
        Err(e) => {
            let mut out = String::new();
            match cli.format {
                Format::Text => {
                    let _ = writeln!(out, "error: {e}");
                }
                Format::Json => {
                    out = serde_json::json!({ "error": e.to_string() }).to_string();
                    out.push('\n');
                }
            }
            (EXIT_INPUT, out)
        }
    }
}
