//! `had`: a definition-file front end for the exact Hopf-algebroid
//! library. Every command resolves entities from a `.had` document, runs
//! one library operation, and reports the verified identities with exit
//! code 0 (all pass), 1 (a verification failed) or 2 (input error).

mod commands;
mod format;
mod report;
mod resolve;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Outcome;
use format::{Document, Record};
use report::JsonReport;
use resolve::ResolveError;

#[derive(Parser)]
#[command(name = "had", about = "Exact Hopf algebroids, comodules and descent data", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input definition file
    file: PathBuf,
    /// Write the machine-readable report to this path (or to
    /// $HAD_REPORT_DIR/<command>.json when the variable is set)
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the document plus derived entities to this path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Require every algebra in the document to live over this prime
    #[arg(long)]
    p: Option<u64>,
    /// Ceiling for enumeration search spaces
    #[arg(long, default_value_t = 10_000_000)]
    ceiling: u64,
    /// Seed echoed into reports for reproducibility of sampled runs
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every Hopf algebroid axiom of an algebroid entity
    CheckAlgebroid {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        name: String,
    },
    /// Verify linearity, counitarity and coassociativity of a comodule
    CheckComodule {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        name: String,
    },
    /// Verify A1-linearity, invertibility and the cocycle of a descent datum
    CheckDescent {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        name: String,
    },
    /// Verify the five compatibility identities of an algebroid homomorphism
    CheckAlgebroidHom {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        name: String,
    },
    /// Convert a descent datum to its comodule
    ToComodule {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        name: String,
    },
    /// Convert a comodule to its descent datum
    ToDescent {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        name: String,
    },
    /// Induce a comodule along an algebroid homomorphism
    Induce {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        hom: String,
        #[arg(long)]
        comodule: String,
    },
    /// Co-induce a comodule along an algebroid homomorphism
    Coinduce {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        hom: String,
        #[arg(long)]
        comodule: String,
    },
    /// Verify the induction/co-induction adjunction on a pair of comodules
    AdjointCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        hom: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Convert an equivariant module to a comodule
    EquivariantToComodule {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        name: String,
    },
    /// Extract the equivariant module of a comodule over a group-action algebroid
    ComoduleToEquivariant {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        name: String,
    },
    /// Exhaustively enumerate equivariant module structures
    EquivariantEnumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        action: String,
        #[arg(long)]
        dim: usize,
    },
    /// Check exactness of the Amitsur sequence for a ring map and module
    Amitsur {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        hom: String,
        #[arg(long)]
        module: String,
    },
    /// Check the Cartesian condition for a semilinear restriction map
    CartesianCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        hom: String,
        #[arg(long)]
        src_module: String,
        #[arg(long)]
        dst_module: String,
        /// The restriction matrix, e.g. "[[1 0] [0 1]]"
        #[arg(long)]
        rho: String,
    },
    /// Produce a generator subcomodule hitting a nonzero element
    GeneratorWitness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        name: String,
        /// The target element, e.g. "[1 0]"
        #[arg(long)]
        vector: String,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::CheckAlgebroid { common, .. }
            | Command::CheckComodule { common, .. }
            | Command::CheckDescent { common, .. }
            | Command::CheckAlgebroidHom { common, .. }
            | Command::ToComodule { common, .. }
            | Command::ToDescent { common, .. }
            | Command::Induce { common, .. }
            | Command::Coinduce { common, .. }
            | Command::AdjointCheck { common, .. }
            | Command::EquivariantToComodule { common, .. }
            | Command::ComoduleToEquivariant { common, .. }
            | Command::EquivariantEnumerate { common, .. }
            | Command::Amitsur { common, .. }
            | Command::CartesianCheck { common, .. }
            | Command::GeneratorWitness { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::CheckAlgebroid { .. } => "check-algebroid",
            Command::CheckComodule { .. } => "check-comodule",
            Command::CheckDescent { .. } => "check-descent",
            Command::CheckAlgebroidHom { .. } => "check-algebroid-hom",
            Command::ToComodule { .. } => "to-comodule",
            Command::ToDescent { .. } => "to-descent",
            Command::Induce { .. } => "induce",
            Command::Coinduce { .. } => "coinduce",
            Command::AdjointCheck { .. } => "adjoint-check",
            Command::EquivariantToComodule { .. } => "equivariant-to-comodule",
            Command::ComoduleToEquivariant { .. } => "comodule-to-equivariant",
            Command::EquivariantEnumerate { .. } => "equivariant-enumerate",
            Command::Amitsur { .. } => "amitsur",
            Command::CartesianCheck { .. } => "cartesian-check",
            Command::GeneratorWitness { .. } => "generator-witness",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_name = cli.command.name();
    let common = cli.command.common();

    let text = match std::fs::read_to_string(&common.file) {
        Ok(t) => t,
        Err(e) => return input_error(command_name, &format!("{}: {e}", common.file.display())),
    };
    let doc = match format::parse(&text) {
        Ok(d) => d,
        Err(e) => return input_error(command_name, &e.to_string()),
    };
    if let Some(p) = common.p {
        for (name, record) in &doc.entities {
            if let Record::Algebra { p: declared, .. } = record {
                if *declared != p {
                    return input_error(
                        command_name,
                        &format!("algebra `{name}` declares p = {declared}, --p demands {p}"),
                    );
                }
            }
        }
    }

    let result = run(&cli.command, &doc);
    let mut outcome = match result {
        Ok(o) => o,
        Err(ResolveError::Input(msg)) => return input_error(command_name, &msg),
        Err(ResolveError::Verification(msg)) => {
            let mut report = JsonReport::new(command_name);
            report.check("resolution", false, Some(msg));
            report.seed = common.seed;
            report.finalize();
            emit(&report, common);
            print!("{}", report.render());
            return ExitCode::from(1);
        }
    };
    outcome.report.seed = common.seed;
    let status = outcome.report.finalize();

    if let Some(out_path) = &common.out {
        let mut extended = doc.clone();
        for (name, record) in outcome.derived.clone() {
            if let Err(e) = extended.push(name, record) {
                return input_error(command_name, &e);
            }
        }
        if let Err(e) = std::fs::write(out_path, format::serialize(&extended)) {
            return input_error(command_name, &format!("{}: {e}", out_path.display()));
        }
    }
    emit(&outcome.report, common);
    print!("{}", outcome.report.render());
    ExitCode::from(status as u8)
}

fn run(command: &Command, doc: &Document) -> Result<Outcome, ResolveError> {
    match command {
        Command::CheckAlgebroid { name, .. } => commands::check_algebroid(doc, name),
        Command::CheckComodule { name, .. } => commands::check_comodule(doc, name),
        Command::CheckDescent { name, .. } => commands::check_descent(doc, name),
        Command::CheckAlgebroidHom { name, .. } => commands::check_algebroid_hom(doc, name),
        Command::ToComodule { name, .. } => commands::to_comodule(doc, name),
        Command::ToDescent { name, .. } => commands::to_descent(doc, name),
        Command::Induce { hom, comodule, .. } => commands::induce_cmd(doc, hom, comodule),
        Command::Coinduce { hom, comodule, .. } => commands::coinduce_cmd(doc, hom, comodule),
        Command::AdjointCheck { hom, left, right, .. } => {
            commands::adjoint_check_cmd(doc, hom, left, right)
        }
        Command::EquivariantToComodule { name, .. } => {
            commands::equivariant_to_comodule(doc, name)
        }
        Command::ComoduleToEquivariant { name, .. } => {
            commands::comodule_to_equivariant(doc, name)
        }
        Command::EquivariantEnumerate { action, dim, common } => {
            commands::equivariant_enumerate(doc, action, *dim, common.ceiling)
        }
        Command::Amitsur { hom, module, .. } => commands::amitsur_cmd(doc, hom, module),
        Command::CartesianCheck { hom, src_module, dst_module, rho, .. } => {
            let rho = parse_inline_matrix(rho)?;
            commands::cartesian_check_cmd(doc, hom, src_module, dst_module, &rho)
        }
        Command::GeneratorWitness { name, vector, .. } => {
            let v = parse_inline_vector(vector)?;
            commands::generator_witness_cmd(doc, name, &v)
        }
    }
}

fn parse_inline_matrix(text: &str) -> Result<Vec<Vec<i64>>, ResolveError> {
    let wrapped = format!("module __inline {{\n  algebra = x\n  dim = 0\n  action = [{text}]\n}}");
    match format::parse(&wrapped) {
        Ok(doc) => match &doc.entities[0].1 {
            Record::Module { action, .. } if action.len() == 1 => Ok(action[0].clone()),
            _ => Err(ResolveError::Input("expected a matrix like [[1 0] [0 1]]".into())),
        },
        Err(e) => Err(ResolveError::Input(format!("bad matrix argument: {e}"))),
    }
}

fn parse_inline_vector(text: &str) -> Result<Vec<i64>, ResolveError> {
    let wrapped = format!("module __inline {{\n  algebra = x\n  dim = 0\n  action = [[{text}]]\n}}");
    match format::parse(&wrapped) {
        Ok(doc) => match &doc.entities[0].1 {
            Record::Module { action, .. } if action.len() == 1 && action[0].len() == 1 => {
                Ok(action[0][0].clone())
            }
            _ => Err(ResolveError::Input("expected a vector like [1 0]".into())),
        },
        Err(e) => Err(ResolveError::Input(format!("bad vector argument: {e}"))),
    }
}

fn emit(report: &JsonReport, common: &Common) {
    let path = common.json.clone().or_else(|| {
        std::env::var_os("HAD_REPORT_DIR")
            .map(|dir| Path::new(&dir).join(format!("{}.json", report.command)))
    });
    if let Some(path) = path {
        if let Ok(json) = serde_json::to_string_pretty(report) {
            let _ = std::fs::write(path, json);
        }
    }
}

fn input_error(command: &str, msg: &str) -> ExitCode {
    let mut report = JsonReport::new(command);
    report.exit_status = 2;
    report.notes.push(msg.to_string());
    eprintln!("error: {msg}");
    print!("{}", report.render());
    ExitCode::from(2)
}
