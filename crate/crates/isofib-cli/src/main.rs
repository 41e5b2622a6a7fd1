//! Command-line front end: monodromy words, Weierstrass classification,
//! configuration enumeration, torus-action queries, and the claim
//! verification registry.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

use clap::{Args, Parser, Subcommand};
use isofib::configs::{enumerate_profiles, enumerate_starred, rigid_configuration_check};
use isofib::kodaira;
use isofib::poly::RationalPolynomial;
use isofib::sl2z::{self, UnimodularMatrix};
use isofib::torus::{
    builtin_action, desingularization_obstruction, base_invariant_form_dimension, fixed_locus,
    invariant_form_dimension, preserves_symplectic, singularity_inventory, BuiltinAction,
    FiniteActionGroup, TorusPoint,
};
use isofib::verify;
use isofib::weierstrass::{classify_surface, generic_isotrivial_report, JCase};
use num_rational::BigRational;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "isofib",
    about = "Exact arithmetic for isotrivial elliptic fibrations and torus quotients",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct JsonOut {
    /// Write the machine-readable report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form, order, and conjugacy of an SL(2,Z) element.
    Monodromy {
        /// Matrix in the form [[a,b],[c,d]].
        #[arg(long, conflicts_with = "word")]
        matrix: Option<String>,
        /// Word over {a, a2, b} with optional leading '-'.
        #[arg(long)]
        word: Option<String>,
        /// Search for a conjugating word onto this matrix.
        #[arg(long, value_name = "MATRIX")]
        conjugate_to: Option<String>,
        /// Token-length bound for conjugacy search.
        #[arg(long, default_value_t = 6)]
        word_length: usize,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Classify an isotrivial K3 Weierstrass model from its section.
    Classify {
        /// j-case: 0, 1728, or generic.
        #[arg(long, value_name = "J")]
        j: String,
        /// Coefficients of b(t) (j = 0), constant term first.
        #[arg(long, value_name = "COEFFS")]
        b: Option<String>,
        /// Coefficients of a(t) (j = 1728), constant term first.
        #[arg(long, value_name = "COEFFS")]
        a: Option<String>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Enumerate fibre configurations and zero profiles.
    Configs {
        #[command(subcommand)]
        which: ConfigsCommand,
    },
    /// Queries about finite group actions on products of elliptic curves.
    Torus {
        #[command(subcommand)]
        which: TorusCommand,
    },
    /// Run the full claim-verification registry.
    VerifyPaper {
        #[command(flatten)]
        out: JsonOut,
    },
    /// Print the Kodaira fibre table.
    Table {
        #[command(flatten)]
        out: JsonOut,
    },
}

#[derive(Subcommand)]
enum ConfigsCommand {
    /// The all-starred configurations with Euler sum 24.
    Starred {
        #[command(flatten)]
        out: JsonOut,
    },
    /// Admissible zero profiles for a j-case.
    Profiles {
        #[arg(long, value_name = "J")]
        j: String,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Bounded rigidity search on the starred configurations.
    Rigidity {
        /// Token-length bound of the conjugator search.
        #[arg(long, default_value_t = 6)]
        word_length: usize,
        #[command(flatten)]
        out: JsonOut,
    },
}

#[derive(Args)]
struct ActionArgs {
    /// Built-in action: cyclic-surface:k, hilbert:k,n, translated:n,
    /// matsushita:k,n.
    #[arg(long, value_name = "SPEC")]
    action: String,
    /// Group closure cap.
    #[arg(long, default_value_t = isofib::torus::DEFAULT_ORDER_CAP)]
    order_cap: usize,
    /// 2-torsion shift for translated actions, as "p/q,p/q".
    #[arg(long, value_name = "P,Q")]
    torsion: Option<String>,
}

#[derive(Subcommand)]
enum TorusCommand {
    /// Fixed locus of a product of named generators.
    FixedPoints {
        #[command(flatten)]
        action: ActionArgs,
        /// Word in generator names, e.g. "g1.g2".
        #[arg(long, value_name = "WORD")]
        element: String,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Stabilizer and singularity inventory of the quotient.
    Inventory {
        #[command(flatten)]
        action: ActionArgs,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Invariant p-form dimensions.
    Invariants {
        #[command(flatten)]
        action: ActionArgs,
        /// Form degree.
        #[arg(long)]
        p: usize,
        /// Compute on the base (even factors) instead.
        #[arg(long, default_value_t = false)]
        base: bool,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Symplectic desingularization obstruction scan.
    Obstruction {
        #[command(flatten)]
        action: ActionArgs,
        #[command(flatten)]
        out: JsonOut,
    },
}

fn parse_j(s: &str) -> Result<JCase, String> {
    match s {
        "0" | "zero" => Ok(JCase::Zero),
        "1728" => Ok(JCase::J1728),
        "generic" => Ok(JCase::Generic),
        _ => Err(format!("unknown j-case {s:?} (use 0, 1728, or generic)")),
    }
}

fn parse_action(args: &ActionArgs) -> Result<FiniteActionGroup, String> {
    let mut spec = BuiltinAction::from_str(&args.action).map_err(|e| e.to_string())?;
    if let Some(t) = &args.torsion {
        let parts: Vec<&str> = t.split(',').collect();
        if parts.len() != 2 {
            return Err(format!("torsion must be \"p/q,p/q\", got {t:?}"));
        }
        let parse_rat = |s: &str| -> Result<BigRational, String> {
            let s = s.trim();
            if let Some((n, d)) = s.split_once('/') {
                Ok(BigRational::new(
                    n.trim().parse().map_err(|_| format!("bad rational {s:?}"))?,
                    d.trim().parse().map_err(|_| format!("bad rational {s:?}"))?,
                ))
            } else {
                Ok(BigRational::from_integer(
                    s.parse().map_err(|_| format!("bad rational {s:?}"))?,
                ))
            }
        };
        let torsion = (parse_rat(parts[0])?, parse_rat(parts[1])?);
        match &mut spec {
            BuiltinAction::Translated { torsion: t, .. } => *t = torsion,
            _ => return Err("--torsion only applies to translated actions".to_string()),
        }
    }
    builtin_action(&spec, args.order_cap).map_err(|e| e.to_string())
}

fn emit(out: &JsonOut, value: &serde_json::Value) -> Result<(), String> {
    if let Some(path) = &out.json {
        let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
        std::fs::write(path, text + "\n").map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Monodromy {
            matrix,
            word,
            conjugate_to,
            word_length,
            out,
        } => {
            let m = match (matrix, word) {
                (Some(s), None) => UnimodularMatrix::from_str(&s).map_err(|e| e.to_string())?,
                (None, Some(s)) => s
                    .parse::<sl2z::ModularWord>()
                    .map_err(|e| e.to_string())?
                    .evaluate(),
                _ => return Err("provide exactly one of --matrix or --word".to_string()),
            };
            let nf = sl2z::normal_form(&m);
            let ord = sl2z::order(&m);
            let word_display = if nf.is_empty() {
                format!("{}(empty)", if nf.sign() == 1 { "+" } else { "-" })
            } else {
                format!("{}{}", if nf.sign() == 1 { "+" } else { "" }, nf)
            };
            println!("matrix {m}");
            println!("order {ord}, word {word_display}");
            let mut body = json!({
                "matrix": m.to_string(),
                "order": ord.to_string(),
                "normal_form": nf.to_string(),
            });
            if let Some(target) = conjugate_to {
                let target = UnimodularMatrix::from_str(&target).map_err(|e| e.to_string())?;
                let witness =
                    sl2z::is_conjugate(&m, &target, word_length).map_err(|e| e.to_string())?;
                match &witness {
                    Some(w) => println!("conjugate to {target}: yes, witness {w}"),
                    None => {
                        println!("conjugate to {target}: not within word length {word_length}")
                    }
                }
                body["conjugate_to"] = json!(target.to_string());
                body["conjugacy_witness"] = match witness {
                    Some(w) => json!(w.to_string()),
                    None => json!(null),
                };
            }
            emit(&out, &body)?;
            Ok(0)
        }
        Command::Classify { j, b, a, out } => {
            let j = parse_j(&j)?;
            let report = match j {
                JCase::Generic => {
                    if a.is_some() || b.is_some() {
                        return Err("generic j takes no section".to_string());
                    }
                    generic_isotrivial_report()
                }
                JCase::Zero => {
                    let coeffs = b.ok_or("j = 0 needs --b")?;
                    let p = RationalPolynomial::from_str(&coeffs).map_err(|e| e.to_string())?;
                    classify_surface(j, &p).map_err(|e| e.to_string())?
                }
                JCase::J1728 => {
                    let coeffs = a.ok_or("j = 1728 needs --a")?;
                    let p = RationalPolynomial::from_str(&coeffs).map_err(|e| e.to_string())?;
                    classify_surface(j, &p).map_err(|e| e.to_string())?
                }
            };
            let value = report.to_json();
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
            emit(&out, &value)?;
            Ok(0)
        }
        Command::Configs { which } => match which {
            ConfigsCommand::Starred { out } => {
                let configs = enumerate_starred();
                let value = serde_json::Value::Array(
                    configs.iter().map(|c| c.to_json()).collect(),
                );
                for c in &configs {
                    let eulers: Vec<String> = c
                        .expanded()
                        .iter()
                        .map(|k| kodaira::fibre_for(*k).euler.to_string())
                        .collect();
                    println!(
                        "{}  (Euler {} = 24)",
                        c.expanded()
                            .iter()
                            .map(|k| k.to_string())
                            .collect::<Vec<_>>()
                            .join(" + "),
                        eulers.join("+"),
                    );
                }
                emit(&out, &value)?;
                Ok(0)
            }
            ConfigsCommand::Profiles { j, out } => {
                let j = parse_j(&j)?;
                let profiles = enumerate_profiles(j).map_err(|e| e.to_string())?;
                println!("{} admissible profiles for j = {j}", profiles.len());
                let value = serde_json::Value::Array(
                    profiles.iter().map(|p| p.to_json()).collect(),
                );
                emit(&out, &value)?;
                Ok(0)
            }
            ConfigsCommand::Rigidity { word_length, out } => {
                let mut reports = Vec::new();
                for config in enumerate_starred() {
                    let outcome = rigid_configuration_check(&config, word_length)
                        .map_err(|e| e.to_string())?;
                    reports.push(outcome.to_json());
                }
                let value = serde_json::Value::Array(reports);
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
                emit(&out, &value)?;
                Ok(0)
            }
        },
        Command::Torus { which } => match which {
            TorusCommand::FixedPoints {
                action,
                element,
                out,
            } => {
                let group = parse_action(&action)?;
                let g = group.element_from_word(&element).map_err(|e| e.to_string())?;
                let locus = fixed_locus(&g);
                let value = json!({
                    "action": group.to_json(),
                    "element": element,
                    "fixed_locus": locus.to_json(),
                });
                if locus.is_empty() {
                    println!("{element}: no fixed points");
                } else {
                    println!(
                        "{element}: {} component(s) of complex dimension {}",
                        locus.component_count, locus.complex_dim
                    );
                }
                emit(&out, &value)?;
                Ok(0)
            }
            TorusCommand::Inventory { action, out } => {
                let group = parse_action(&action)?;
                let inv = singularity_inventory(&group).map_err(|e| e.to_string())?;
                let value = json!({
                    "action": group.to_json(),
                    "inventory": inv.to_json(),
                });
                println!("{}", serde_json::to_string_pretty(&inv.to_json()).unwrap());
                emit(&out, &value)?;
                Ok(0)
            }
            TorusCommand::Invariants {
                action,
                p,
                base,
                out,
            } => {
                let group = parse_action(&action)?;
                let dim = if base {
                    base_invariant_form_dimension(&group, p).map_err(|e| e.to_string())?
                } else {
                    invariant_form_dimension(&group, p).map_err(|e| e.to_string())?
                };
                println!(
                    "dim of invariant {p}-forms{} = {dim}",
                    if base { " on the base" } else { "" }
                );
                let value = json!({
                    "action": group.to_json(),
                    "p": p,
                    "base": base,
                    "dimension": dim,
                });
                emit(&out, &value)?;
                Ok(0)
            }
            TorusCommand::Obstruction { action, out } => {
                let group = parse_action(&action)?;
                let symplectic = preserves_symplectic(&group).map_err(|e| e.to_string())?;
                if !symplectic {
                    return Err("the action does not preserve the symplectic form".to_string());
                }
                let report = desingularization_obstruction(&group).map_err(|e| e.to_string())?;
                println!("{}", report.verdict);
                for note in &report.notes {
                    println!("  {note}");
                }
                let value = json!({
                    "action": group.to_json(),
                    "report": report.to_json(),
                });
                emit(&out, &value)?;
                Ok(0)
            }
        },
        Command::VerifyPaper { out } => {
            let report = verify::run_all();
            for c in &report.checks {
                println!(
                    "[{}] {} ({}): expected {}, got {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.id,
                    c.location,
                    c.expected,
                    c.computed,
                );
            }
            println!(
                "{} checks, {} passed, {} failed",
                report.checks.len(),
                report.passed(),
                report.failed()
            );
            emit(&out, &report.to_json())?;
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::Table { out } => {
            let value = kodaira::table_json();
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
            emit(&out, &value)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
