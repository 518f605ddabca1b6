//! Batch front door: validate input documents, print Betti tables, and run
//! the deformation pipeline.
//!
//! Exit codes: 0 success (a failed lift is a finding, not an error),
//! 1 domain failure (axiom violation, invalid base, wrong branch),
//! 2 usage or parse error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};


use leibpair::cohomology::total_cohomology;
use leibpair::deform::{defects, is_infinitesimal, lift_to_order, LiftOutcome};
use leibpair::input::{parse_document, tensor_to_data, InputDocument, ObjectDef};
use leibpair::rational::format_rat;
use leibpair::{Error, JetBase, Rat, TotalCochain};

#[derive(Parser)]
#[command(name = "leibpair", about = "Cohomology and deformations of Leibniz pairs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every object in an input document.
    Validate {
        /// Input document (JSON).
        input: PathBuf,
    },
    /// Compute total cohomology of a pair or Poisson algebra.
    Cohomology(CohomologyArgs),
    /// Check or lift a deformation jet.
    Deform {
        #[command(subcommand)]
        action: DeformAction,
    },
}

#[derive(Args)]
struct CohomologyArgs {
    /// Input document (JSON).
    input: PathBuf,
    /// Name of the pair (or Poisson algebra) in the document.
    #[arg(long)]
    pair: String,
    /// Name of a coefficient module; defaults to self coefficients.
    #[arg(long)]
    module: Option<String>,
    /// Highest total degree to compute.
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[arg(long, value_enum, default_value_t = BranchArg::Leibniz)]
    branch: BranchArg,
    /// Also print canonical representative cocycles.
    #[arg(long)]
    representatives: bool,
    /// Emit machine-readable JSON records.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum DeformAction {
    /// Report axiom defects per order and the infinitesimal's class.
    Check(DeformArgs),
    /// Extend the jet's infinitesimal order by order.
    Lift(DeformArgs),
}

#[derive(Args)]
struct DeformArgs {
    /// Input document (JSON).
    input: PathBuf,
    /// Name of the jet in the document.
    #[arg(long)]
    jet: String,
    /// Target order (lift) or highest order to check; defaults to the
    /// jet's own order for check and 3 for lift.
    #[arg(long)]
    order: Option<usize>,
    /// Emit machine-readable JSON records.
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Leibniz,
    Poisson,
}

/// 1 = domain failure, 2 = usage/parse failure.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            // malformed input data is the caller's problem
            Error::Structural(_) => Failure::usage(e.to_string()),
            _ => Failure::domain(e.to_string()),
        }
    }
}

fn load(path: &PathBuf) -> Result<InputDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_document(&text)?)
}

fn rats(values: &[Rat]) -> String {
    let body: Vec<String> = values.iter().map(format_rat).collect();
    format!("[{}]", body.join(", "))
}

fn cochain_json(c: &TotalCochain) -> serde_json::Value {
    serde_json::Value::Array(
        c.parts
            .iter()
            .map(|part| {
                serde_json::json!({
                    "p": part.bidegree.p,
                    "q": part.bidegree.q,
                    "coeffs": part.coeffs.iter().map(format_rat).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn cmd_validate(input: &PathBuf) -> Result<u8, Failure> {
    let doc = load(input)?;
    let mut all_ok = true;
    for name in doc.objects.keys() {
        let report = doc.validate_object(name)?;
        if report.ok() {
            println!("{name}: ok");
        } else {
            all_ok = false;
            println!("{name}: {} violation(s)", report.violations.len());
            for v in &report.violations {
                println!(
                    "  {} at {:?}: left = {}, right = {}",
                    v.axiom,
                    v.witness,
                    rats(&v.left),
                    rats(&v.right)
                );
            }
        }
    }
    Ok(if all_ok { 0 } else { 1 })
}

fn cmd_cohomology(args: &CohomologyArgs) -> Result<u8, Failure> {
    let doc = load(&args.input)?;
    let complex = match args.branch {
        BranchArg::Poisson => {
            // requesting the poisson branch on a non-poisson object is a
            // domain failure, not a parse failure
            match doc.objects.get(&args.pair) {
                Some(ObjectDef::Poisson { .. }) => {}
                Some(_) => {
                    return Err(Failure::domain(format!(
                        "{:?} is not a Poisson algebra",
                        args.pair
                    )))
                }
                None => return Err(Failure::usage(format!("no object named {:?}", args.pair))),
            }
            if args.module.is_some() {
                return Err(Failure::usage(
                    "the poisson branch uses self coefficients only",
                ));
            }
            let p = doc.resolve_poisson(&args.pair)?;
            if !leibpair::validate_poisson(&p)?.ok() {
                return Err(Failure::domain(format!("{:?} fails validation", args.pair)));
            }
            leibpair::Complex::poisson(&p)
        }
        BranchArg::Leibniz => {
            let pair = doc.resolve_pair(&args.pair)?;
            if !doc.validate_object(&args.pair)?.ok() {
                return Err(Failure::domain(format!("{:?} fails validation", args.pair)));
            }
            let module = match &args.module {
                None => leibpair::PairModule::self_module(&pair),
                Some(name) => {
                    let (mod_pair, module) = doc.resolve_module(name)?;
                    if mod_pair != pair {
                        return Err(Failure::domain(format!(
                            "module {name:?} is not over pair {:?}",
                            args.pair
                        )));
                    }
                    if !doc.validate_object(name)?.ok() {
                        return Err(Failure::domain(format!("{name:?} fails validation")));
                    }
                    module
                }
            };
            leibpair::Complex::leibniz(pair, module)
        }
    };
    let table = total_cohomology(&complex, args.max_degree, args.representatives)?;
    if args.json {
        let records: Vec<serde_json::Value> = table
            .degrees
            .iter()
            .map(|&(n, dim)| {
                let mut rec = serde_json::json!({ "degree": n, "dim": dim });
                if args.representatives {
                    let reps = table
                        .representatives
                        .iter()
                        .find(|(d, _)| *d == n)
                        .map(|(_, v)| v.iter().map(cochain_json).collect::<Vec<_>>())
                        .unwrap_or_default();
                    rec["representatives"] = serde_json::Value::Array(reps);
                }
                rec
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&records).expect("serialization"));
    } else {
        println!("branch: {:?}", complex.branch);
        for &(n, dim) in &table.degrees {
            println!("H^{n}: dim {dim}");
            if args.representatives {
                if let Some((_, reps)) = table.representatives.iter().find(|(d, _)| *d == n) {
                    for (i, rep) in reps.iter().enumerate() {
                        let mut line = String::new();
                        for part in &rep.parts {
                            let _ = write!(
                                line,
                                " ({},{}) {}",
                                part.bidegree.p,
                                part.bidegree.q,
                                rats(&part.coeffs)
                            );
                        }
                        println!("  rep {i}:{line}");
                    }
                }
            }
        }
    }
    Ok(0)
}

fn load_jet(args: &DeformArgs) -> Result<(InputDocument, leibpair::DeformationJet), Failure> {
    let doc = load(&args.input)?;
    let jet = doc.resolve_jet(&args.jet)?;
    // an invalid base is a domain failure
    let base_ok = match &jet.base {
        JetBase::Leibniz(pair) => {
            leibpair::validate_associative(&pair.a)?.ok()
                && leibpair::validate_lie(&pair.l)?.ok()
                && leibpair::validate_pair(pair)?.ok()
        }
        JetBase::Poisson(p) => {
            leibpair::validate_associative(&p.a)?.ok() && leibpair::validate_poisson(p)?.ok()
        }
    };
    if !base_ok {
        return Err(Failure::domain(format!("the base of jet {:?} fails validation", args.jet)));
    }
    Ok((doc, jet))
}

fn cmd_deform_check(args: &DeformArgs) -> Result<u8, Failure> {
    let (_, jet) = load_jet(args)?;
    let max_order = args.order.unwrap_or_else(|| jet.order());
    let mut records = Vec::new();
    for n in 1..=max_order {
        let report = defects(&jet, n)?;
        records.push((n, report));
    }
    let inf = is_infinitesimal(
        &jet.base,
        jet.alpha.first().ok_or_else(|| Failure::usage("the jet has no order-1 terms"))?,
        jet.mu.first(),
        jet.lambda
            .first()
            .ok_or_else(|| Failure::usage("the jet has no order-1 terms"))?,
    )?;
    if args.json {
        let recs: Vec<serde_json::Value> = records
            .iter()
            .map(|(n, r)| {
                serde_json::json!({
                    "order": n,
                    "defects_vanish": r.is_zero(),
                    "assoc_nonzero": !r.assoc_defect.is_zero(),
                    "mu_der_nonzero": !r.mu_der_defect.is_zero(),
                    "mu_mor_nonzero": r.mu_mor_defect.as_ref().map(|c| !c.is_zero()),
                    "jacobi_nonzero": !r.jacobi_defect.is_zero(),
                })
            })
            .collect();
        let out = serde_json::json!({
            "jet": args.jet,
            "orders": recs,
            "infinitesimal": {
                "is_cocycle": inf.is_cocycle,
                "is_coboundary": inf.is_coboundary,
                "class": inf.class.iter().map(format_rat).collect::<Vec<_>>(),
            }
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("serialization"));
    } else {
        println!("jet: {} (order {})", args.jet, jet.order());
        for (n, r) in &records {
            if r.is_zero() {
                println!("order {n}: defects vanish");
            } else {
                let mut bad = Vec::new();
                if !r.assoc_defect.is_zero() {
                    bad.push("associator");
                }
                if !r.mu_der_defect.is_zero() {
                    bad.push("mu-derivation");
                }
                if r.mu_mor_defect.as_ref().is_some_and(|c| !c.is_zero()) {
                    bad.push("mu-morphism");
                }
                if !r.jacobi_defect.is_zero() {
                    bad.push("jacobiator");
                }
                println!("order {n}: nonzero defects: {}", bad.join(", "));
                if !r.assoc_defect.is_zero() {
                    println!("  associator coefficients: {}", rats(&r.assoc_defect.coeffs));
                }
            }
        }
        println!(
            "infinitesimal: cocycle = {}, coboundary = {}, class = {}",
            inf.is_cocycle,
            inf.is_coboundary,
            rats(&inf.class)
        );
    }
    Ok(0)
}

fn cmd_deform_lift(args: &DeformArgs) -> Result<u8, Failure> {
    let (_, jet) = load_jet(args)?;
    let target = args.order.unwrap_or(3);
    let alpha1 = jet
        .alpha
        .first()
        .ok_or_else(|| Failure::usage("the jet has no order-1 terms"))?;
    let lambda1 = jet
        .lambda
        .first()
        .ok_or_else(|| Failure::usage("the jet has no order-1 terms"))?;
    let outcome = lift_to_order(&jet.base, alpha1, jet.mu.first(), lambda1, target)?;
    match outcome {
        LiftOutcome::Lifted(lifted) => {
            if args.json {
                let out = serde_json::json!({
                    "jet": args.jet,
                    "lifted": true,
                    "order": lifted.order(),
                    "alpha": lifted.alpha.iter().map(tensor_to_data).collect::<Vec<_>>(),
                    "mu": lifted.mu.iter().map(tensor_to_data).collect::<Vec<_>>(),
                    "lambda": lifted.lambda.iter().map(tensor_to_data).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&out).expect("serialization"));
            } else {
                println!("lift to order {target}: success");
                for (i, t) in lifted.alpha.iter().enumerate() {
                    let status = if t.is_zero() { "zero" } else { "nonzero" };
                    println!("alpha[{}]: {status}", i + 1);
                }
            }
            Ok(0)
        }
        LiftOutcome::Obstructed { order, class, .. } => {
            // a genuine obstruction is a finding, not an error
            if args.json {
                let out = serde_json::json!({
                    "jet": args.jet,
                    "lifted": false,
                    "obstructed_at": order,
                    "class": class.iter().map(format_rat).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&out).expect("serialization"));
            } else {
                println!("lift to order {target}: obstructed at order {order}");
                println!("obstruction class: {}", rats(&class));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate { input } => cmd_validate(input),
        Command::Cohomology(args) => cmd_cohomology(args),
        Command::Deform { action } => match action {
            DeformAction::Check(args) => cmd_deform_check(args),
            DeformAction::Lift(args) => cmd_deform_lift(args),
        },
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
