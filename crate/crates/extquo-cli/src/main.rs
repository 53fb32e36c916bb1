mod render;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use extquo::cirr::StandardCIrr;
use extquo::extquo::Action;
use extquo::gl::{gl_sample, gl_triangle, parse_gl_point, parse_gl_tau, InertialDataGL};
use extquo::klr::{action_for, inertial_builtin_group, parse_inertial};
use extquo::report;
use extquo::root_datum::{build_root_datum, parse_custom_datum, RootDatum};
use extquo::torus::{TorusCoordinate, TorusPoint};
use extquo::triangle::{verify_triangle, Sample};
use extquo::Error;
use serde_json::Value;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "extquo", version, about = "Extended quotients and principal-series parameters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Built-in group label (GL2, SL3, PGL2, A1, A2, C2, G2, ...)
    #[arg(long, global = true)]
    group: Option<String>,
    /// JSON file with rank, simple_roots, simple_coroots
    #[arg(long, global = true)]
    datum_file: Option<String>,
    /// trivial, pgl2-order2, so4-in-g2, or point literals separated by ';'
    #[arg(long, global = true, default_value = "trivial")]
    inertial: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    out: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// A torus coordinate such as 0/1@1/2
    #[arg(long, global = true)]
    z: Option<String>,
    /// strata-generic, random:K, or point literals separated by ';'
    #[arg(long, global = true, default_value = "strata-generic")]
    sample: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ActionKind {
    /// C^× with z ↦ z⁻¹
    Inversion,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Gl,
    G2,
}

#[derive(Subcommand)]
enum Command {
    /// Strata of the extended quotient of the first kind
    Extquo {
        #[arg(long, value_enum)]
        action: Option<ActionKind>,
    },
    /// Verify the triangle of bijections (or the GL_m(D) triangle with --blocks)
    Triangle {
        #[arg(long)]
        blocks: Option<String>,
    },
    /// KLR parameters with a given infinitesimal character (or over t with --t)
    Params {
        #[arg(long, conflicts_with = "t")]
        point: Option<String>,
        #[arg(long)]
        t: Option<String>,
    },
    /// The Langlands map for inner forms of GL_n
    Glphi {
        #[arg(long)]
        blocks: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        tau: String,
    },
    /// Flat families Y_v
    Family {
        #[arg(long, value_enum, default_value_t = FamilyKind::Gl)]
        kind: FamilyKind,
        #[arg(long, default_value_t = 2)]
        e: usize,
        #[arg(long)]
        point: Option<String>,
    },
    /// Character table of W^s
    Chartable {
        #[arg(long, value_enum)]
        action: Option<ActionKind>,
    },
    /// Springer correspondence of the group
    Springer,
}

fn validation(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Error::Invalid(msg.into()))
}

fn datum(cli: &Cli, action: Option<ActionKind>) -> anyhow::Result<RootDatum> {
    if let Some(ActionKind::Inversion) = action {
        return Ok(build_root_datum("A1")?);
    }
    match (&cli.group, &cli.datum_file) {
        (Some(_), Some(_)) => Err(validation("give either --group or --datum-file")),
        (Some(g), None) => Ok(build_root_datum(g)?),
        (None, Some(f)) => {
            let s = std::fs::read_to_string(f).with_context(|| format!("reading {f}"))?;
            Ok(parse_custom_datum(&s)?)
        }
        (None, None) => match inertial_builtin_group(cli.inertial.trim()) {
            Some(g) => Ok(build_root_datum(g)?),
            None => Err(validation("--group or --datum-file is required")),
        },
    }
}

fn action(cli: &Cli, kind: Option<ActionKind>) -> anyhow::Result<Action> {
    let d = datum(cli, kind)?;
    let c = parse_inertial(&cli.inertial, &d)?;
    Ok(action_for(&d, &c)?)
}

fn z_or(cli: &Cli, default: TorusCoordinate) -> anyhow::Result<TorusCoordinate> {
    Ok(match &cli.z {
        Some(s) => TorusCoordinate::parse(s)?,
        None => default,
    })
}

fn run(cli: &Cli) -> anyhow::Result<Value> {
    let sys = StandardCIrr::default();
    Ok(match &cli.command {
        Command::Extquo { action: k } => report::extquo_doc(&action(cli, *k)?, &cli.inertial, &sys)?,
        Command::Triangle { blocks: Some(b) } => {
            let data = InertialDataGL::parse(b)?;
            let sample = match cli.sample.trim() {
                "" | "strata-generic" => gl_sample(&data),
                s => vec![parse_gl_point(s)?],
            };
            report::gl_triangle_doc(&gl_triangle(&data, &sample)?)
        }
        Command::Triangle { blocks: None } => {
            let a = action(cli, None)?;
            let r = verify_triangle(&a, &sys, &Sample::parse(&cli.sample, cli.seed)?)?;
            report::triangle_doc(&r, &cli.inertial)
        }
        Command::Params { point, t } => {
            let a = action(cli, None)?;
            match (point, t) {
                (Some(p), None) => report::params_doc(&a, &cli.inertial, &TorusPoint::parse(p)?, false)?,
                (None, Some(t)) => report::params_doc(&a, &cli.inertial, &TorusPoint::parse(t)?, true)?,
                _ => return Err(validation("give --point (infinitesimal character) or --t")),
            }
        }
        Command::Glphi { blocks, t, tau } => {
            let data = InertialDataGL::parse(blocks)?;
            let t = parse_gl_point(t)?;
            let tau = parse_gl_tau(tau, &t)?;
            report::glphi_doc(&data, &t, &tau)?
        }
        Command::Family { kind, e, point } => {
            let v = z_or(cli, TorusCoordinate::sqrt_q())?;
            let p = point.as_deref().map(TorusPoint::parse).transpose()?;
            match kind {
                FamilyKind::Gl => report::gl_family_doc(*e, v, p.as_ref(), &sys)?,
                FamilyKind::G2 => report::g2_family_doc(v, p.as_ref(), &sys)?,
            }
        }
        Command::Chartable { action: k } => report::chartable_doc(&action(cli, *k)?)?,
        Command::Springer => report::springer_doc(&datum(cli, None)?)?,
    })
}

fn is_validation(e: &anyhow::Error) -> bool {
    match e.downcast_ref::<Error>() {
        Some(Error::Inconsistent(_)) | Some(Error::NonFiniteType(_)) => false,
        Some(_) => true,
        None => e.downcast_ref::<std::io::Error>().is_some(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            let text = match cli.out {
                Format::Json => serde_json::to_string_pretty(&v).unwrap() + "\n",
                Format::Table => render::render(&v),
            };
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_validation(&e) { 2 } else { 1 })
        }
    }
}
