//! `binform`: command line front end.
//!
//! Results go to stdout as one line of JSON (or CSV for tables). Errors go
//! to stderr as `{"error": ...}`. Exit status is 0 on success, 1 when a
//! check ran and failed, 2 for bad input.

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use binform::curves::{explicit_curve, frobenius_curve, mdegree, verify_complete_curve};
use binform::ideal::{classify_boundary, model_hf, psi, psi_inverse, GradedIdeal};
use binform::invariants::{invariant_dimension, invariant_table, table_csv, BiGradedSlice};
use binform::json::{FamilyJson, FormJson, IdealJson, PointJson};
use binform::limits::{flat_limit, limit_param_point, Chart, TFamily};
use binform::pic::{self, PicClass};
use binform::strata::{canonicalize, census};
use binform::verify::{run_all, Fault, RunConfig};
use binform::{form_gcd, parse_form, resultant, Field};

/// Largest total slice dimension `inv table` accepts.
const MAX_AMBIENT: usize = 5000;

#[derive(Parser)]
#[command(name = "binform", version, about = "Exact computations with pairs of binary forms")]
struct Cli {
    /// Coefficient field: q, fp:P or gf:P^M. Defaults to q, and to fp:101
    /// for verify-all.
    #[arg(long, global = true, env = "BINFORM_FIELD")]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    #[arg(long = "F")]
    f: String,
    #[arg(long = "G")]
    g: String,
}

#[derive(Args)]
struct Typed {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    e: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized gcd of two forms.
    Gcd(Pair),
    /// Resultant of two forms.
    Res(Pair),
    /// Stratum of the point [F, G] of P_{d,e}.
    Classify {
        #[command(flatten)]
        ty: Typed,
        #[command(flatten)]
        pair: Pair,
    },
    /// Hilbert function of an ideal file, or of the ideal (F, G).
    Hf {
        #[arg(long, conflicts_with_all = ["d", "e", "f", "g"])]
        ideal: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        e: Option<usize>,
        #[arg(long = "F")]
        f: Option<String>,
        #[arg(long = "G")]
        g: Option<String>,
        /// Highest degree computed for (F, G); defaults to d + e.
        #[arg(long)]
        window: Option<usize>,
    },
    /// Boundary point glued from Z of type (d-u, e+u) and Z' of type (u, e-d+u).
    Psi {
        #[arg(long)]
        u: usize,
        #[arg(long)]
        z: String,
        #[arg(long)]
        zp: String,
    },
    /// Splits a boundary point back into (u, Z, Z').
    PsiInv {
        #[arg(long)]
        ideal: String,
    },
    /// Flat limit of a family at a parameter value.
    Limit {
        #[arg(long)]
        family: String,
        /// 0, inf, or a field element.
        #[arg(long, default_value = "0")]
        at: String,
        #[arg(long)]
        window: Option<usize>,
    },
    /// Complete-curve certificates and Plücker degrees.
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Plücker degree of a family (same as `curve mdeg`).
    Mdeg(MdegArgs),
    /// Picard-lattice classes.
    #[command(subcommand)]
    Pic(PicCommand),
    /// Exhaustive stratum counts over a finite field, as CSV.
    Census {
        #[command(flatten)]
        ty: Typed,
        /// Prime field to count over; overrides `--field`.
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, visible_alias = "parallel", default_value_t = 1)]
        threads: usize,
    },
    /// Invariant slices of the translation action.
    #[command(subcommand)]
    Inv(InvCommand),
    /// Runs every property suite and prints a JSON report.
    VerifyAll(VerifyArgs),
}

#[derive(Args)]
struct MdegArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    i: usize,
}

#[derive(Subcommand)]
enum CurveCommand {
    /// Certificate for the explicit curve of type (d, d+1), or for a family file.
    Verify {
        #[arg(long, required_unless_present = "family")]
        d: Option<usize>,
        #[arg(long, conflicts_with = "d")]
        family: Option<String>,
    },
    /// p-th power image of a family of type (1, e) over GF(p).
    Frobenius {
        #[arg(long)]
        family: String,
    },
    Mdeg(MdegArgs),
}

#[derive(Subcommand)]
enum PicCommand {
    /// The class L^i.
    Lclass {
        #[command(flatten)]
        ty: Typed,
        #[arg(long)]
        i: usize,
    },
    /// The class of the resultant divisor.
    Delta {
        #[command(flatten)]
        ty: Typed,
    },
    /// Restriction of a class to the u-th exceptional divisor.
    Restrict {
        #[command(flatten)]
        ty: Typed,
        #[arg(long)]
        u: usize,
        /// Coordinates "h,xi,e1,...".
        #[arg(long)]
        class: String,
    },
    /// Coordinates of a class in the L basis and whether it is nef.
    Nef {
        #[command(flatten)]
        ty: Typed,
        #[arg(long)]
        class: String,
    },
}

#[derive(Subcommand)]
enum InvCommand {
    Dim {
        #[command(flatten)]
        ty: Typed,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    Table {
        #[command(flatten)]
        ty: Typed,
        #[arg(long, default_value_t = 4)]
        amax: usize,
        #[arg(long, default_value_t = 3)]
        bmax: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Overrides the per-suite sample counts.
    #[arg(long)]
    samples: Option<usize>,
    /// Hilbert functions are compared up to this degree.
    #[arg(long)]
    window: Option<usize>,
    /// Types d:e for the sampled suites, comma separated.
    #[arg(long, value_delimiter = ',')]
    grid: Vec<String>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long)]
    timings: bool,
    /// Deliberate bug to inject (model-hf-sign).
    #[arg(long)]
    fault: Option<String>,
    /// Only suites whose name starts with one of these.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
}

/// What a command produced: output text and whether its check passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn json(v: Value) -> Outcome {
        Outcome {
            text: v.to_string(),
            passed: true,
        }
    }

    fn check(v: Value, passed: bool) -> Outcome {
        Outcome {
            text: v.to_string(),
            passed,
        }
    }
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_ideal(path: &str, field: Field) -> anyhow::Result<GradedIdeal> {
    let ideal: IdealJson =
        serde_json::from_str(&read_input(path)?).with_context(|| format!("{path}: malformed ideal JSON"))?;
    ideal.to_ideal(field).with_context(|| path.to_string())
}

fn read_family(path: &str, field: Field) -> anyhow::Result<TFamily> {
    let fam: FamilyJson =
        serde_json::from_str(&read_input(path)?).with_context(|| format!("{path}: malformed family JSON"))?;
    fam.to_family(field).with_context(|| path.to_string())
}

fn form_arg(text: &str, field: Field, flag: &str, degree: Option<usize>) -> anyhow::Result<binform::BinaryForm> {
    parse_form(text, field, degree).with_context(|| format!("--{flag}"))
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let field: Field = match &cli.field {
        Some(text) => text.parse().context("--field")?,
        None if matches!(cli.command, Command::VerifyAll(_)) => RunConfig::default().field,
        None => Field::Rational,
    };
    Ok(match cli.command {
        Command::Gcd(p) => {
            let (f, g) = (form_arg(&p.f, field, "F", None)?, form_arg(&p.g, field, "G", None)?);
            let h = form_gcd(&f, &g)?;
            Outcome::json(json!({ "gcd": FormJson::from_form(&h), "text": h.to_string() }))
        }
        Command::Res(p) => {
            let (f, g) = (form_arg(&p.f, field, "F", None)?, form_arg(&p.g, field, "G", None)?);
            Outcome::json(json!({ "resultant": resultant(&f, &g)?.to_string() }))
        }
        Command::Classify { ty, pair } => {
            let f = form_arg(&pair.f, field, "F", Some(ty.d))?;
            let g = form_arg(&pair.g, field, "G", Some(ty.e))?;
            let point = canonicalize(&f, &g)?;
            let (g_deg, u) = point.stratum();
            Outcome::json(json!({ "g": g_deg, "u": u, "in_delta": point.in_delta() }))
        }
        Command::Hf { ideal, d, e, f, g, window } => {
            let ideal = match ideal {
                Some(path) => read_ideal(&path, field)?,
                None => {
                    let (Some(d), Some(e), Some(f), Some(g)) = (d, e, f, g) else {
                        bail!("give --ideal, or all of --d --e --F --G");
                    };
                    let gens = [form_arg(&f, field, "F", Some(d))?, form_arg(&g, field, "G", Some(e))?];
                    GradedIdeal::from_forms(d, e, &gens, window.unwrap_or(d + e))?
                }
            };
            let model = (0..=ideal.window())
                .map(|l| model_hf(ideal.d(), ideal.e(), l))
                .collect::<binform::Result<Vec<_>>>()?;
            Outcome::json(json!({
                "hf": ideal.hilbert_function(),
                "model": model,
                "closed": ideal.is_closed(),
                "is_hilb_point": ideal.is_hilb_point(),
            }))
        }
        Command::Psi { u, z, zp } => {
            let y = psi(u, &read_ideal(&z, field)?, &read_ideal(&zp, field)?)?;
            Outcome::json(serde_json::to_value(IdealJson::from_ideal(&y))?)
        }
        Command::PsiInv { ideal } => {
            let y = read_ideal(&ideal, field)?;
            let u = classify_boundary(&y)?;
            let (_, z, zp) = psi_inverse(&y)?;
            Outcome::json(json!({ "u": u, "Z": IdealJson::from_ideal(&z), "Zp": IdealJson::from_ideal(&zp) }))
        }
        Command::Limit { family, at, window } => {
            let fam = read_family(&family, field)?;
            let chart = match at.trim() {
                "0" => Chart::Zero,
                "inf" => Chart::Infinity,
                other => Chart::At(field.parse_scalar(other).context("--at")?),
            };
            let local = fam.in_chart(&chart);
            let ideal = flat_limit(&local, window.unwrap_or(fam.d() + fam.e()))?;
            let point = limit_param_point(&fam, &chart)?;
            Outcome::json(json!({
                "at": chart.to_string(),
                "point": PointJson::from_point(&point),
                "stratum": { "g": point.stratum().0, "u": point.stratum().1 },
                "ideal": IdealJson::from_ideal(&ideal),
                "is_hilb_point": ideal.is_hilb_point(),
            }))
        }
        Command::Curve(CurveCommand::Verify { d, family }) => {
            let fam = match (d, family) {
                (_, Some(path)) => read_family(&path, field)?,
                (Some(d), None) => explicit_curve(d, field)?,
                (None, None) => bail!("give --d or --family"),
            };
            let cert = verify_complete_curve(&fam)?;
            let passed = cert.verdict;
            Outcome::check(serde_json::to_value(cert)?, passed)
        }
        Command::Curve(CurveCommand::Frobenius { family }) => {
            let fam = read_family(&family, field)?;
            let p = field.characteristic();
            let cert = frobenius_curve(p, &fam)?;
            let passed = cert.verdict;
            Outcome::check(serde_json::to_value(cert)?, passed)
        }
        Command::Curve(CurveCommand::Mdeg(args)) | Command::Mdeg(args) => {
            let fam = read_family(&args.family, field)?;
            Outcome::json(json!({ "i": args.i, "mdegree": mdegree(&fam, args.i)? }))
        }
        Command::Pic(cmd) => pic_command(cmd)?,
        Command::Census { ty, p, threads } => {
            let field = match p {
                Some(p) => Field::prime(p)?,
                None => field,
            };
            let c = census(field, ty.d, ty.e, threads)?;
            eprintln!(
                "delta_by_gcd={} delta_by_resultant={} disagreements={} total={}",
                c.delta_by_gcd, c.delta_by_resultant, c.disagreements, c.total
            );
            Outcome {
                text: c.to_csv().trim_end().to_string(),
                passed: c.disagreements == 0,
            }
        }
        Command::Inv(InvCommand::Dim { ty, a, b }) => {
            let dim = invariant_dimension(field, ty.d, ty.e, a, b)?;
            let ambient = BiGradedSlice::new(ty.d, ty.e, a, b).dimension();
            Outcome::json(json!({ "a": a, "b": b, "ambient": ambient, "dim": dim }))
        }
        Command::Inv(InvCommand::Table { ty, amax, bmax }) => {
            let ambient: usize = (0..=amax)
                .flat_map(|a| (0..=bmax).map(move |b| (a, b)))
                .map(|(a, b)| BiGradedSlice::new(ty.d, ty.e, a, b).dimension())
                .sum();
            if ambient > MAX_AMBIENT {
                bail!("slices up to ({amax},{bmax}) have total dimension {ambient} > {MAX_AMBIENT}");
            }
            let rows = invariant_table(field, ty.d, ty.e, amax, bmax)?;
            Outcome {
                text: table_csv(&rows).trim_end().to_string(),
                passed: true,
            }
        }
        Command::VerifyAll(args) => {
            let mut config = RunConfig {
                field,
                seed: args.seed,
                samples: args.samples,
                window: args.window,
                threads: args.threads,
                timings: args.timings,
                only: args.only,
                ..RunConfig::default()
            };
            if let Some(fault) = args.fault {
                config.fault = Some(fault.parse::<Fault>()?);
            }
            if !args.grid.is_empty() {
                config.grid = args.grid.iter().map(|s| parse_type(s)).collect::<anyhow::Result<_>>()?;
            }
            let report = run_all(&config)?;
            let passed = report.passed;
            Outcome::check(serde_json::to_value(report)?, passed)
        }
    })
}

fn parse_type(s: &str) -> anyhow::Result<(usize, usize)> {
    let (d, e) = s.split_once(':').ok_or_else(|| anyhow!("grid entry {s:?} should look like d:e"))?;
    Ok((d.trim().parse()?, e.trim().parse()?))
}

fn pic_command(cmd: PicCommand) -> anyhow::Result<Outcome> {
    Ok(match cmd {
        PicCommand::Lclass { ty, i } => Outcome::json(serde_json::to_value(pic::l_class(ty.d, ty.e, i)?)?),
        PicCommand::Delta { ty } => Outcome::json(serde_json::to_value(pic::delta_class(ty.d, ty.e)?)?),
        PicCommand::Restrict { ty, u, class } => {
            let c = PicClass::parse(ty.d, ty.e, &class).context("--class")?;
            let (first, second) = pic::restrict(u, &c)?;
            Outcome::json(json!({
                "first": { "d": ty.d - u, "e": ty.e + u, "class": first },
                "second": { "d": u, "e": ty.e - ty.d + u, "class": second },
            }))
        }
        PicCommand::Nef { ty, class } => {
            let c = PicClass::parse(ty.d, ty.e, &class).context("--class")?;
            let coords: Vec<String> = pic::nef_coords(&c)?.iter().map(pic::rational_string).collect();
            Outcome::json(json!({ "coords": coords, "nef": pic::is_nef(&c)? }))
        }
    })
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            let chain: Vec<String> = err.chain().map(|e| e.to_string()).collect();
            eprintln!("{}", json!({ "error": chain.join(": ") }));
            ExitCode::from(2)
        }
    }
}
