use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use gauge_gamma::classify::{distinguishing_primes, ClassifierContext};
use gauge_gamma::engine::Engine;
use gauge_gamma::homotopy::{bspace_pi, sphere_pi, HSpaceFactor};
use gauge_gamma::registry::decomposition;
use gauge_gamma::{verify_all, CaseDatabase, Error, GammaResult, LieGroup, Prime};

#[derive(Parser)]
#[command(
    name = "gauge-gamma",
    version,
    about = "Samelson-product orders and gauge-group classification for exceptional Lie groups"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,
    /// Alternate case database (JSON).
    #[arg(long, env = "GAUGE_GAMMA_CASES", global = true)]
    cases: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// gamma(G, p), gamma_i(G, p) or gamma(G).
    Gamma {
        #[arg(long)]
        group: LieGroup,
        #[arg(long, required_unless_present = "global")]
        prime: Option<Prime>,
        #[arg(long, conflicts_with = "global")]
        index: Option<u32>,
        #[arg(long)]
        global: bool,
    },
    /// Whether G_k and G_l are p-locally homotopy equivalent.
    Classify {
        #[arg(long)]
        group: LieGroup,
        /// Omit to list the primes distinguishing k and l.
        #[arg(long)]
        prime: Option<Prime>,
        #[arg(
            short,
            allow_negative_numbers = true,
            required_unless_present = "classes"
        )]
        k: Option<i64>,
        #[arg(
            short,
            allow_negative_numbers = true,
            required_unless_present = "classes"
        )]
        l: Option<i64>,
        /// List one representative per equivalence class instead.
        #[arg(long, requires = "prime")]
        classes: bool,
    },
    /// A p-local homotopy group of a sphere or a rank-2 H-space.
    Pi {
        /// Dimension of the sphere.
        #[arg(long, conflicts_with = "bspace", required_unless_present = "bspace")]
        sphere: Option<u32>,
        /// Degrees of B(2n-1, 2n+2p-3), comma separated.
        #[arg(long, value_delimiter = ',')]
        bspace: Option<Vec<u32>>,
        /// Offset above the bottom cell.
        #[arg(long)]
        k: u32,
        #[arg(long)]
        prime: Prime,
    },
    /// The mod-p decomposition of G.
    Decompose {
        #[arg(long)]
        group: LieGroup,
        #[arg(long)]
        prime: Prime,
    },
    /// Inspect, validate and evaluate a case of the database.
    Case {
        #[arg(long, required_unless_present = "list")]
        id: Option<String>,
        #[arg(long)]
        validate: bool,
        #[arg(long)]
        evaluate: bool,
        #[arg(long)]
        list: bool,
    },
    /// Recompute every published value and compare.
    Verify,
    /// Write the case database, or the table of gamma values, as JSON.
    Export {
        #[arg(long)]
        table: bool,
    },
}

enum Failure {
    Mismatch(String),
    Usage(String),
    Unsupported(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported { .. } => Failure::Unsupported(e.to_string()),
            Error::Parse { .. }
            | Error::UnknownCase(_)
            | Error::TrivialFactor { .. }
            | Error::Database(_) => Failure::Usage(e.to_string()),
            Error::WrongFactorShape { .. } | Error::NotPrime(_) => Failure::Usage(e.to_string()),
            _ => Failure::Mismatch(e.to_string()),
        }
    }
}

fn emit<T: Serialize>(output: Output, value: &T, text: impl FnOnce() -> String) {
    match output {
        Output::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        ),
        Output::Text => println!("{}", text()),
    }
}

fn gamma_line(r: &GammaResult) -> String {
    let mut s = format!("{} ({}, {})", r.value.value(), r.method, r.citation);
    if !r.witnesses.is_empty() && r.index.is_none() && r.value.exponent > 0 {
        let w: Vec<String> = r.witnesses.iter().map(u32::to_string).collect();
        s.push_str(&format!("\n  witnesses: i = {}", w.join(", ")));
    }
    if let Some(b) = r.upper_bound {
        s.push_str(&format!("\n  homotopy bound: {b}"));
    }
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    let load = || CaseDatabase::resolve(cli.cases.as_deref());
    let out = cli.output;
    match cli.command {
        Command::Gamma {
            group,
            prime,
            index,
            global,
        } => {
            let engine = Engine::new(load()?);
            if global {
                let r = engine.gamma_global(group)?;
                emit(out, &r, || {
                    let parts: Vec<String> = r
                        .factors
                        .iter()
                        .filter(|f| f.value.exponent > 0)
                        .map(|f| f.value.to_string())
                        .collect();
                    format!("gamma({group}) = {} = {}", r.value, parts.join(" * "))
                });
            } else {
                let p = prime.expect("required unless global");
                let r = match index {
                    Some(i) => engine.gamma_i(group, p, i)?,
                    None => engine.gamma_p(group, p)?,
                };
                emit(out, &r, || gamma_line(&r));
            }
        }
        Command::Classify {
            group,
            prime,
            k,
            l,
            classes,
        } => {
            let engine = Engine::new(load()?);
            match prime {
                Some(p) if classes => {
                    let reps = ClassifierContext::new(&engine, group, p)?.equivalence_classes()?;
                    let reps: Vec<String> = reps.iter().map(ToString::to_string).collect();
                    emit(out, &reps, || {
                        format!(
                            "{} classes, representatives k = {}",
                            reps.len(),
                            reps.join(", ")
                        )
                    });
                }
                Some(p) => {
                    let (k, l) = (k.expect("required"), l.expect("required"));
                    let ctx = ClassifierContext::new(&engine, group, p)?;
                    let global = ctx.equivalent_global(k, l);
                    let local = ctx.equivalent_p_local(k, l).ok();
                    emit(out, &json!({ "global": global, "p_local": local }), || {
                        let word = if global.equivalent {
                            "equivalent"
                        } else {
                            "not equivalent"
                        };
                        let mut s = format!(
                            "G_{k} and G_{l} for {group} are {word} at p = {p}\n  nu_p-invariants: {} vs {} (gamma({group}) = {})",
                            global.invariant_k, global.invariant_l, global.gamma_used
                        );
                        if let Some(v) = &local {
                            s.push_str(&format!(
                                "\n  p-local check: gcd with gamma({group}, {p}) = {}: {} vs {}",
                                v.gamma_used, v.invariant_k, v.invariant_l
                            ));
                        }
                        s
                    });
                }
                None => {
                    let (k, l) = (k.expect("required"), l.expect("required"));
                    let primes: Vec<u32> = distinguishing_primes(&engine, group, k, l)?
                        .iter()
                        .map(|p| p.get())
                        .collect();
                    emit(out, &primes, || {
                        if primes.is_empty() {
                            format!("G_{k} and G_{l} for {group} are p-locally equivalent at every prime")
                        } else {
                            let ps: Vec<String> = primes.iter().map(u32::to_string).collect();
                            format!("distinguished at p = {}", ps.join(", "))
                        }
                    });
                }
            }
        }
        Command::Pi {
            sphere,
            bspace,
            k,
            prime,
        } => {
            let (label, d) = match (sphere, bspace) {
                (Some(dim), _) => {
                    if dim % 2 == 0 || dim < 3 {
                        return Err(Failure::Usage(format!(
                            "S^{dim} is not an odd sphere of dimension >= 3"
                        )));
                    }
                    (
                        format!("pi_{}(S^{dim})", dim + k),
                        sphere_pi(dim.div_ceil(2), k, prime),
                    )
                }
                (None, Some(degrees)) => {
                    let f = HSpaceFactor::new(degrees, None)?;
                    (
                        format!("pi_{}({f})", f.bottom() + k),
                        bspace_pi(&f, k, prime)?,
                    )
                }
                (None, None) => unreachable!("clap requires one"),
            };
            emit(out, &d, || format!("{label}_({prime}) = {d}"));
        }
        Command::Decompose { group, prime } => {
            let d = decomposition(group, prime)?;
            emit(out, &d, || {
                let mut s = format!("{group} at p = {prime}");
                s.push_str(if d.is_p_regular() {
                    " (p-regular)"
                } else if d.is_quasi_p_regular() {
                    " (quasi-p-regular)"
                } else {
                    ""
                });
                for (i, f) in &d.factors {
                    s.push_str(&format!("\n  B_{i} = {f}"));
                }
                s
            });
        }
        Command::Case {
            id,
            validate,
            evaluate,
            list,
        } => {
            let db = load()?;
            if list {
                let ids: Vec<&str> = db.phi_cases.iter().map(|c| c.id.as_str()).collect();
                emit(out, &ids, || ids.join("\n"));
                return Ok(());
            }
            let id = id.expect("required unless list");
            let case = db.case_by_id(&id).ok_or(Error::UnknownCase(id))?.clone();
            let engine = Engine::new(db);
            let (validate, evaluate) = if validate || evaluate {
                (validate, evaluate)
            } else {
                (true, true)
            };
            let report = validate.then(|| engine.validate_phi_case(&case));
            let evaluation = if evaluate {
                let e = engine.evaluate_phi_case(&case)?;
                let basis: Vec<Vec<String>> = e
                    .lattice
                    .reduced_basis()
                    .iter()
                    .map(|v| v.entries().iter().map(ToString::to_string).collect())
                    .collect();
                Some((e.order, basis, e.lattice.pivot_valuations()))
            } else {
                None
            };
            let failed = report.as_ref().is_some_and(|r| !r.passed());
            let eval_json = evaluation
                .as_ref()
                .map(|(o, b, v)| json!({ "order": o, "reduced_basis": b, "pivot_valuations": v }));
            emit(
                out,
                &json!({ "case": case, "validation": report, "evaluation": eval_json }),
                || {
                    let mut s = format!(
                        "{}: {} at p = {}, i = {}\n  {}",
                        case.id, case.group, case.prime, case.index, case.citation
                    );
                    if let Some(r) = &report {
                        for c in &r.checks {
                            s.push_str(&format!(
                                "\n  [{}] {}: {}",
                                if c.passed { "ok" } else { "FAIL" },
                                c.name,
                                c.detail
                            ));
                        }
                    }
                    if let Some((order, basis, _)) = &evaluation {
                        let rows: Vec<String> = basis
                            .iter()
                            .map(|r| format!("({})", r.join(", ")))
                            .collect();
                        s.push_str(&format!("\n  image lattice basis: {}", rows.join(", ")));
                        s.push_str(&format!("\n  order = {order}"));
                    }
                    s
                },
            );
            if failed {
                return Err(Failure::Mismatch(format!(
                    "case {} failed validation",
                    case.id
                )));
            }
        }
        Command::Verify => {
            let db = load().map_err(|e| Failure::Mismatch(e.to_string()))?;
            let report = verify_all(&Engine::new(db));
            emit(out, &report, || {
                let mut s = String::new();
                for c in report.failures() {
                    s.push_str(&format!("FAIL {}: {}\n", c.name, c.detail));
                }
                s.push_str(&report.summary());
                s
            });
            if !report.passed() {
                return Err(Failure::Mismatch(report.summary()));
            }
        }
        Command::Export { table } => {
            let db = load()?;
            if table {
                let engine = Engine::new(db);
                let mut rows = Vec::new();
                for g in LieGroup::ALL {
                    for p in Engine::relevant_primes(g) {
                        rows.push(engine.gamma_p(g, p)?);
                    }
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&rows).expect("serializable")
                );
            } else {
                println!("{}", db.to_json_pretty());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Unsupported(m)) => {
            eprintln!("unsupported: {m}");
            ExitCode::from(3)
        }
    }
}
