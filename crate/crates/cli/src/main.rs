//! `diffgalois`: Galois groups of σ(Y) = AY over ℚ(x) from the command line.

mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diffgalois::difference::det_poly;
use diffgalois::elements::hyper_elements;
use diffgalois::groebner::TermOrder;
use diffgalois::lattice::sigma_quotient_lattice;
use diffgalois::pipeline::{
    check_group, compute_galois_group, stabilizer, theoretical_bound, GaloisOptions, StageError,
};
use diffgalois::relations::{coefficient_bound, relations_ideal, RelationsRequest};
use diffgalois::structure::{associated_primes, sigma_period};
use diffgalois::{Error, RatFunc};

use crate::input::{parse_ideal, read_system, SystemInput};
use crate::render::{Format, Report};

#[derive(Parser)]
#[command(name = "diffgalois", version, about = "Galois groups of linear difference systems over Q(x)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every stage and print the Galois group.
    Compute(SystemArgs),
    /// Algebraic relations of bounded degree among the fundamental matrix entries.
    Relations(SystemArgs),
    /// Associated primes of the relations ideal, the chosen component and its period.
    Decompose(SystemArgs),
    /// Hypergeometric elements modulo the chosen component.
    Hyper(SystemArgs),
    /// Exponent lattice of a list of certificates.
    Lattice(LatticeArgs),
    /// Stabilizer of an ideal in the entries y11 … ynn.
    Stab(StabArgs),
    /// The theoretical degree bound for n × n systems.
    Bound(BoundArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderName {
    Grevlex,
    Lex,
}

#[derive(Args)]
struct SystemArgs {
    /// JSON file {"n": .., "A": [[..]]} with optional "rho" and "Z".
    #[arg(long)]
    input: PathBuf,
    /// Total degree bound of the relations.
    #[arg(long, default_value_t = 2)]
    degree: u32,
    /// Degree bound in x of the relation coefficients, or "auto".
    #[arg(long, default_value = "0")]
    coeff_degree: String,
    /// Degree of the hypergeometric elements.
    #[arg(long, default_value_t = 1)]
    char_degree: u32,
    #[arg(long, value_enum, default_value = "grevlex")]
    order: OrderName,
    /// Sampled points for the group-axiom check.
    #[arg(long, default_value_t = 20)]
    check_points: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write one JSON record per stage to this file.
    #[arg(long)]
    transcript: Option<PathBuf>,
}

#[derive(Args)]
struct LatticeArgs {
    /// A certificate b_i; repeat for each.
    #[arg(long = "cert", required = true)]
    certs: Vec<String>,
    #[arg(long, default_value_t = 1)]
    delta: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct StabArgs {
    #[arg(long)]
    n: usize,
    /// Generators, comma separated, optionally inside <...>.
    #[arg(long, conflicts_with = "ideal_file")]
    ideal: Option<String>,
    /// A file with one generator per line.
    #[arg(long)]
    ideal_file: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    check_points: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    n: u64,
    /// Print d~ in full instead of as a power of kappa3.
    #[arg(long)]
    expand: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

enum Failure {
    Core(Error),
    Stage(StageError),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn error(&self) -> Option<&Error> {
        match self {
            Failure::Core(e) => Some(e),
            Failure::Stage(s) => Some(&s.error),
            Failure::Io(_) => None,
        }
    }

    fn exit_code(&self) -> u8 {
        match self.error() {
            Some(Error::Parse(_)) => 2,
            Some(e) if e.is_unsupported_class() => 3,
            Some(Error::ExtensionNeeded { .. }) => 4,
            _ => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Stage(s) => s.to_string(),
            Failure::Io(m) => m.clone(),
        }
    }
}

impl SystemArgs {
    fn load(&self) -> Result<(SystemInput, GaloisOptions), Failure> {
        let input = read_system(&self.input)?;
        if self.degree == 0 {
            return Err(Error::Parse("--degree must be at least 1".into()).into());
        }
        let coeff_degree = match self.coeff_degree.as_str() {
            "auto" => None,
            s => Some(s.parse().map_err(|_| Error::Parse(format!("--coeff-degree {s:?} is not a number or auto")))?),
        };
        let order = match self.order {
            OrderName::Grevlex => TermOrder::GrevLex,
            OrderName::Lex => TermOrder::Lex,
        };
        let opts = GaloisOptions {
            degree: self.degree,
            coeff_degree,
            char_degree: self.char_degree,
            order,
            check_points: self.check_points,
            rho: input.rho,
            z_rho: input.z_rho.clone(),
        };
        Ok((input, opts))
    }

    fn request(&self, opts: &GaloisOptions, input: &SystemInput) -> Result<RelationsRequest, Failure> {
        let ell = match opts.coeff_degree {
            Some(l) => l,
            None => coefficient_bound(&input.system, opts.degree)?,
        };
        let mut req = RelationsRequest::new(opts.degree, ell);
        req.order = opts.order;
        req.rho = opts.rho;
        req.z_rho = opts.z_rho.clone();
        Ok(req)
    }
}

fn write_transcript(path: &PathBuf, records: &[diffgalois::pipeline::TranscriptRecord]) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(records).map_err(|e| Failure::Io(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::Compute(args) => {
            let (input, opts) = args.load()?;
            match compute_galois_group(&input.system, &opts) {
                Ok(out) => {
                    if let Some(path) = &args.transcript {
                        write_transcript(path, &out.transcript)?;
                    }
                    Ok(render::compute(&out, args.format))
                }
                Err(e) => {
                    if let Some(path) = &args.transcript {
                        write_transcript(path, &e.transcript)?;
                    }
                    Err(Failure::Stage(e))
                }
            }
        }
        Command::Relations(args) => {
            let (input, opts) = args.load()?;
            let req = args.request(&opts, &input)?;
            let rel = relations_ideal(&input.system, &req)?;
            Ok(render::relations(&rel, req.coeff_degree, args.format))
        }
        Command::Decompose(args) => {
            let (input, opts) = args.load()?;
            let req = args.request(&opts, &input)?;
            let rel = relations_ideal(&input.system, &req)?.ideal;
            let comps = associated_primes(&rel, Some(&det_poly(input.system.n(), rel.ring())))?;
            let first = comps.first().ok_or_else(|| Error::Internal("no component meets GL_n".into()))?;
            let delta = sigma_period(&first.ideal, &input.system, comps.len())?;
            Ok(render::decompose(&comps, delta, args.format))
        }
        Command::Hyper(args) => {
            let (input, opts) = args.load()?;
            let req = args.request(&opts, &input)?;
            let rel = relations_ideal(&input.system, &req)?.ideal;
            let comps = associated_primes(&rel, Some(&det_poly(input.system.n(), rel.ring())))?;
            let first = comps.first().ok_or_else(|| Error::Internal("no component meets GL_n".into()))?;
            let delta = sigma_period(&first.ideal, &input.system, comps.len())?;
            let els = hyper_elements(&first.ideal, &input.system, delta, opts.char_degree)?;
            Ok(render::hyper(&els, delta, args.format))
        }
        Command::Lattice(args) => {
            if args.delta == 0 {
                return Err(Error::Parse("--delta must be positive".into()).into());
            }
            let certs = args.certs.iter().map(|c| c.parse::<RatFunc>()).collect::<Result<Vec<_>, _>>()?;
            let lat = sigma_quotient_lattice(&certs, args.delta)?;
            Ok(render::lattice(&lat, args.format))
        }
        Command::Stab(args) => {
            let text = match (&args.ideal, &args.ideal_file) {
                (Some(t), None) => t.clone(),
                (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?,
                _ => return Err(Error::Parse("give exactly one of --ideal and --ideal-file".into()).into()),
            };
            if args.n == 0 || args.n > 5 {
                return Err(Error::Parse("--n must be between 1 and 5".into()).into());
            }
            let ideal = parse_ideal(&text, args.n)?;
            let stab = stabilizer(&ideal, args.n)?;
            let check = if args.check_points > 0 && !stab.components.is_empty() {
                Some(check_group(&stab, Some(&ideal), args.check_points, 0x5eed)?)
            } else {
                None
            };
            Ok(render::stab(&stab, check.as_ref(), args.format))
        }
        Command::Bound(args) => {
            let b = theoretical_bound(args.n, args.expand)?;
            Ok(render::bound(&b, args.expand, args.format))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
