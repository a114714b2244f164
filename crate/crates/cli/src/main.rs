//! `cmweyl`: command-line front end for the Calogero-Moser / Weyl-algebra correspondence.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use cmweyl::cm::base_points;
use cmweyl::json::{error_json, generators_from_json, generators_to_json, AutWord};
use cmweyl::rat::parse_rat;
use cmweyl::skew::{Chirality, SkewSum};
use cmweyl::theta::theta_state;
use cmweyl::{
    build_dg_envelope, build_envelope, check_ainf_axioms, equivalent, groebner, omega_ideal,
    restrict_dg_to_ainf, structure_maps_equal, CMPoint, Error, Json, ThetaOptions, TieBreak,
};

const MAX_TRUNC: usize = 16;
const MAX_BOUND: usize = 12;

#[derive(Parser, Debug)]
#[command(
    name = "cmweyl",
    version,
    about = "Calogero-Moser points and rank-one ideals of the Weyl algebra"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Truncation degree of the envelope
    #[arg(long = "trunc", global = true, default_value_t = 8)]
    trunc: usize,
    /// Bound for lambda tables and series checks
    #[arg(long = "lambda-bound", global = true, default_value_t = 4)]
    lambda_bound: usize,
    /// Degree budget for axiom checks
    #[arg(long = "budget", global = true, default_value_t = 4)]
    budget: usize,
    /// Seed for randomized checks
    #[arg(long = "seed", global = true, default_value_t = 0)]
    seed: u64,
    /// Number of randomized cases
    #[arg(long = "cases", global = true, default_value_t = 50)]
    cases: usize,
    /// Step bound for reduction loops
    #[arg(long = "guard", global = true, default_value_t = 1_000_000)]
    guard: u64,
    /// Lift tie-break used by theta
    #[arg(long = "tie-break", global = true, value_enum, default_value_t = Tie::MaxL)]
    tie: Tie,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Tie {
    /// maximal l, then maximal k
    MaxL,
    /// minimal l, then minimal k
    MinL,
}

/// INPUT is `-` (standard input), a file path, inline JSON, or `@name` for a built-in point
/// (`@n0`, `@zero`, `@n2`, `@n1(a,b)`).
#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the rank-one relation of a point
    Validate { input: String },
    /// Print the table j Y^l X^k i for l, k up to --lambda-bound
    Lambda { input: String },
    /// Print kappa and chi and check chi kappa = 1 and the series expansion
    Kappa { input: String },
    /// The fractional ideal of a point and its denominator-free presentation
    Omega { input: String },
    /// Reconstruct a point from right-ideal generators
    Theta { input: String },
    /// omega, clearing, theta, then compare with the input point
    Roundtrip { input: String },
    /// Build the truncated envelope and check its axioms
    EnvelopeCheck {
        input: String,
        /// Perturb one structure constant: `l,k,delta`
        #[arg(long)]
        perturb: Option<String>,
    },
    /// Build the DG envelope, check its Leibniz relations and compare with the envelope
    DgCheck { input: String },
    /// Move a point by an automorphism given as a list of generators
    Act {
        input: String,
        /// Automorphism JSON (same input forms as INPUT)
        #[arg(long)]
        aut: String,
    },
    /// Reduced right Gröbner basis and staircase of an ideal
    Groebner { input: String },
    /// Decide whether two points are conjugate
    Equiv { first: String, second: String },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Input(Value),
    Property(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::Shape(_)
            | Error::InvalidAutomorphism(_)
            | Error::InvalidPoint(_)
            | Error::ZeroElement
            | Error::NoInverse => Failure::Input(error_json(&e)),
            _ => Failure::Property(error_json(&e)),
        }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure::Input(error_json(&Error::Parse(msg.into())))
}

fn builtin(name: &str) -> Option<CMPoint> {
    match name {
        "zero" => return Some(CMPoint::zero_point()),
        "n2" => return Some(CMPoint::nilpotent2()),
        _ => {}
    }
    if let Some(args) = name.strip_prefix("n1(").and_then(|s| s.strip_suffix(')')) {
        let (a, b) = args.split_once(',')?;
        return Some(CMPoint::single(parse_rat(a).ok()?, parse_rat(b).ok()?));
    }
    base_points()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, p)| p)
}

fn read_value(src: &str) -> Result<Value, Failure> {
    if let Some(name) = src.strip_prefix('@') {
        let p =
            builtin(name).ok_or_else(|| input_error(format!("unknown built-in point {name:?}")))?;
        return Ok(p.to_json());
    }
    let text = if src == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_error(e.to_string()))?;
        s
    } else if src.trim_start().starts_with(['{', '[']) {
        src.to_string()
    } else {
        std::fs::read_to_string(src).map_err(|e| input_error(format!("{src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| input_error(e.to_string()))
}

fn read_point(src: &str) -> Result<CMPoint, Failure> {
    Ok(CMPoint::from_json(read_value(src)?)?)
}

fn check_ranges(o: &Opts) -> Result<(), Failure> {
    if o.trunc > MAX_TRUNC {
        return Err(input_error(format!("--trunc must be at most {MAX_TRUNC}")));
    }
    if o.lambda_bound > MAX_BOUND || o.budget > MAX_BOUND {
        return Err(input_error(format!(
            "--lambda-bound and --budget must be at most {MAX_BOUND}"
        )));
    }
    Ok(())
}

fn theta_opts(o: &Opts) -> ThetaOptions {
    let tie = match o.tie {
        Tie::MaxL => TieBreak::MaxL,
        Tie::MinL => TieBreak::MinL,
    };
    ThetaOptions {
        tie,
        guard: o.guard,
    }
}

/// `(json, ok)`: `ok = false` exits with status 1.
fn run(cmd: Cmd, o: &Opts) -> Result<(Value, bool), Failure> {
    check_ranges(o)?;
    match cmd {
        Cmd::Validate { input } => {
            let p = read_point(&input)?;
            let valid = p.validate();
            Ok((json!({ "valid": valid, "n": p.n }), valid))
        }
        Cmd::Lambda { input } => {
            let p = read_point(&input)?;
            Ok((p.lambda_table(o.lambda_bound).to_json(), true))
        }
        Cmd::Kappa { input } => {
            let p = read_point(&input)?;
            let (kappa, chi) = p.kappa();
            let one = SkewSum::one(Chirality::XY);
            let prod_ok = cmweyl::skew::product_equals(&chi, &kappa, &one)?;
            let series_ok = p.kappa_series_check(o.lambda_bound);
            let ok = prod_ok && series_ok;
            Ok((
                json!({
                    "kappa": kappa.to_json(),
                    "chi": chi.to_json(),
                    "chi_kappa_is_one": prod_ok,
                    "series_matches_lambda": series_ok,
                }),
                ok,
            ))
        }
        Cmd::Omega { input } => {
            let p = read_point(&input)?;
            Ok((omega_ideal(&p)?.to_json(), true))
        }
        Cmd::Theta { input } => {
            let gens = generators_from_json(read_value(&input)?)?;
            let state = theta_state(&gens, theta_opts(o))?;
            let point = state.extract_cm()?;
            let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
            let m0_ok = state.check_m0_samples(o.cases, &mut rng)?;
            Ok((
                json!({
                    "point": point.to_json(),
                    "transcript": state.transcript().to_json(),
                    "relation_on_leading_ideal": m0_ok,
                }),
                m0_ok,
            ))
        }
        Cmd::Roundtrip { input } => {
            let p = read_point(&input)?;
            let ideal = omega_ideal(&p)?;
            let q = cmweyl::theta(&ideal.cleared_generators(), theta_opts(o))?.point;
            let eq = equivalent(&p, &q)?;
            let lambda_match = p.lambda_table(o.lambda_bound) == q.lambda_table(o.lambda_bound);
            let mut out = json!({ "equivalent": eq.equivalent });
            if let Some(w) = &eq.witness {
                out["witness"] = json!(w);
            }
            out["lambda_match"] = json!(lambda_match);
            out["cleared"] = generators_to_json(&ideal.cleared_generators());
            out["theta"] = q.to_json();
            Ok((out, eq.equivalent && lambda_match))
        }
        Cmd::EnvelopeCheck { input, perturb } => {
            let p = read_point(&input)?;
            let mut env = build_envelope(&p, o.trunc)?;
            if let Some(arg) = perturb {
                let parts: Vec<&str> = arg.split(',').collect();
                let [l, k, d] = parts.as_slice() else {
                    return Err(input_error("--perturb expects l,k,delta"));
                };
                let l: usize = l.trim().parse().map_err(|_| input_error("bad l"))?;
                let k: usize = k.trim().parse().map_err(|_| input_error("bad k"))?;
                if l >= o.trunc || k >= o.trunc {
                    return Err(input_error("perturbed index must be below --trunc"));
                }
                env = env.with_perturbed_lambda(l, k, &parse_rat(d)?);
            }
            let rep = check_ainf_axioms(&env, o.budget)?;
            let ok = rep.all_pass();
            Ok((rep.to_json(), ok))
        }
        Cmd::DgCheck { input } => {
            let p = read_point(&input)?;
            let dg = build_dg_envelope(&p, o.trunc)?;
            let env = build_envelope(&p, o.trunc)?;
            let mut rep = dg.leibniz_report();
            rep.entries
                .extend(structure_maps_equal(&env, &restrict_dg_to_ainf(&dg), o.budget)?.entries);
            let ok = rep.all_pass();
            Ok((rep.to_json(), ok))
        }
        Cmd::Act { input, aut } => {
            let p = read_point(&input)?;
            let word = AutWord::from_json(read_value(&aut)?)?;
            let q = p.act(&word.automorphism()?)?;
            Ok((q.to_json(), true))
        }
        Cmd::Groebner { input } => {
            let gens = generators_from_json(read_value(&input)?)?;
            let gb = groebner(&gens)?;
            let mut out = gb.to_json();
            let comp: Vec<[usize; 2]> = gb.complement()?.iter().map(|e| [e.k, e.l]).collect();
            out["complement"] = json!(comp);
            Ok((out, true))
        }
        Cmd::Equiv { first, second } => {
            let p = read_point(&first)?;
            let q = read_point(&second)?;
            let eq = equivalent(&p, &q)?;
            let ok = eq.equivalent;
            Ok((eq.to_json(), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match run(cli.cmd, &cli.opts) {
        Ok((v, true)) => (v, 0),
        Ok((v, false)) => (v, 1),
        Err(Failure::Property(v)) => (v, 1),
        Err(Failure::Input(v)) => (v, 2),
    };
    println!("{}", serde_json::to_string(&value).expect("serializable"));
    ExitCode::from(code)
}
