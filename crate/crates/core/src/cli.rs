//! Command-line front end: input documents, verbs and JSON results.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::grouplin::{Coords, GroupError, GroupShape};
use crate::homspace::{hom_group, ModuleHom};
use crate::oracle::{
    oracle_homs, oracle_iso, oracle_mingen, oracle_summand_classes, OracleBudget, OracleError,
};
use crate::sideexit::{iso_mingen, mingen, update};
use crate::splitter::{common_summand, iso_splitter};
use crate::structures::{regular_module, AxiomError, FiniteModule, FiniteRing, Submodule};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("axiom violation: {0}")]
    Axiom(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("internal check failed: {0}")]
    Certificate(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Axiom(_) => 3,
            CliError::Oracle(_) => 4,
            CliError::Certificate(_) => 1,
        }
    }
}

fn classify(context: &str, e: AxiomError) -> CliError {
    match e {
        AxiomError::Malformed(_) | AxiomError::Group(_) => CliError::Malformed(format!("{context}: {e}")),
        _ => CliError::Axiom(format!("{context}: {e}")),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingDoc {
    orders: Vec<u64>,
    mul: Vec<Vec<Coords>>,
    one: Coords,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleDoc {
    orders: Vec<u64>,
    action: Vec<Vec<Coords>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputDoc {
    ring: RingDoc,
    #[serde(default)]
    modules: BTreeMap<String, ModuleDoc>,
}

/// A parsed and validated input document.
#[derive(Clone, Debug)]
pub struct InputDocument {
    pub ring: Arc<FiniteRing>,
    pub modules: BTreeMap<String, Arc<FiniteModule>>,
}

impl InputDocument {
    pub fn parse_str(text: &str) -> Result<Self, CliError> {
        let doc: InputDoc = serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))?;
        let shape = |o: Vec<u64>, what: &str| {
            GroupShape::new(o).map_err(|e: GroupError| CliError::Malformed(format!("{what}: {e}")))
        };
        let ring = FiniteRing::new(shape(doc.ring.orders, "ring")?, doc.ring.mul, doc.ring.one)
            .map_err(|e| classify("ring", e))?;
        let ring = Arc::new(ring);
        let mut modules = BTreeMap::new();
        for (name, m) in doc.modules {
            let context = format!("module {name}");
            let s = shape(m.orders, &context)?;
            let module = FiniteModule::new(ring.clone(), s, m.action).map_err(|e| classify(&context, e))?;
            modules.insert(name, Arc::new(module));
        }
        Ok(InputDocument { ring, modules })
    }

    pub fn parse_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
        InputDocument::parse_str(&text)
    }

    pub fn module(&self, name: &str) -> Result<&Arc<FiniteModule>, CliError> {
        self.modules.get(name).ok_or_else(|| CliError::Malformed(format!("no module named {name:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Splitter,
    Mingen,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "finmod", version, about = "Isomorphism and generator computations for finite modules")]
pub struct Cli {
    /// Add wall-clock timing to the JSON result.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the ring and module axioms.
    Validate { input: PathBuf },
    /// Generators of Hom(M, N).
    Hom { input: PathBuf, m: String, n: String },
    /// Decide whether M and N are isomorphic.
    Iso {
        input: PathBuf,
        m: String,
        n: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Largest common direct summand of M and N.
    Summand { input: PathBuf, m: String, n: String },
    /// A minimum-size generating set of M.
    Mingen { input: PathBuf, m: String },
    /// Nilpotent ideal with semisimple-looking quotient.
    RadicalApprox { input: PathBuf },
    /// Brute-force reference computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    Homs { input: PathBuf, m: String, n: String },
    Iso { input: PathBuf, m: String, n: String },
    Mingen { input: PathBuf, m: String },
    Summands { input: PathBuf, m: String },
}

/// The JSON result and a short human-readable summary.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub result: Value,
    pub summary: String,
}

fn module_json(m: &FiniteModule) -> Value {
    json!({ "orders": m.shape().orders(), "action": m.action(), "order": m.order().to_string() })
}

fn basis_json(s: &Submodule) -> Value {
    json!({ "basis": s.basis().rows(), "order": s.order().to_string() })
}

/// Checks that `f` is a well-defined R-linear map with two-sided inverse `g`.
pub fn verify_isomorphism(f: &ModuleHom, g: &ModuleHom) -> Result<(), CliError> {
    let recheck = |h: &ModuleHom| ModuleHom::new(h.dom().clone(), h.cod().clone(), h.images().to_vec());
    recheck(f).map_err(|e| CliError::Certificate(format!("witness: {e}")))?;
    recheck(g).map_err(|e| CliError::Certificate(format!("inverse: {e}")))?;
    if !g.compose(f).is_identity() || !f.compose(g).is_identity() {
        return Err(CliError::Certificate("witness and inverse do not compose to identities".into()));
    }
    Ok(())
}

fn iso_json(f: Option<(ModuleHom, ModuleHom)>) -> Result<Value, CliError> {
    match f {
        None => Ok(json!({ "isomorphic": false, "witness": null, "inverse": null })),
        Some((f, g)) => {
            verify_isomorphism(&f, &g)?;
            Ok(json!({ "isomorphic": true, "witness": f.images(), "inverse": g.images(), "verified": true }))
        }
    }
}

fn splitter_iso(m: &Arc<FiniteModule>, n: &Arc<FiniteModule>) -> Option<(ModuleHom, ModuleHom)> {
    let f = iso_splitter(m, n)?;
    let g = f.inverse().expect("iso_splitter returns a bijection");
    Some((f, g))
}

fn mingen_iso(m: &Arc<FiniteModule>, n: &Arc<FiniteModule>) -> Option<(ModuleHom, ModuleHom)> {
    // The returned map goes N -> M; report it in the M -> N direction.
    iso_mingen(m, n).map(|(lambda, inv)| (inv, lambda))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut out = dispatch(&cli.command)?;
    if cli.timing {
        if let Value::Object(map) = &mut out.result {
            map.insert("timing_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
        }
    }
    Ok(out)
}

fn dispatch(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Validate { input } => {
            let doc = InputDocument::parse_file(input)?;
            let modules: BTreeMap<&String, Value> = doc.modules.iter().map(|(k, m)| (k, module_json(m))).collect();
            Ok(Outcome {
                result: json!({
                    "command": "validate",
                    "valid": true,
                    "ring": { "orders": doc.ring.shape().orders(), "order": doc.ring.order().to_string(),
                              "characteristic": doc.ring.characteristic() },
                    "modules": modules,
                }),
                summary: format!("valid: ring of order {} and {} module(s)", doc.ring.order(), doc.modules.len()),
            })
        }
        Command::Hom { input, m, n } => {
            let doc = InputDocument::parse_file(input)?;
            let h = hom_group(doc.module(m)?, doc.module(n)?).map_err(|e| CliError::Malformed(e.to_string()))?;
            let gens: Vec<&[Coords]> = h.gens().iter().map(ModuleHom::images).collect();
            Ok(Outcome {
                result: json!({
                    "command": "hom", "m": m, "n": n,
                    "generators": gens, "orders": h.shape().orders(), "order": h.order().to_string(),
                }),
                summary: format!("|Hom({m}, {n})| = {}", h.order()),
            })
        }
        Command::Iso { input, m, n, method } => {
            let doc = InputDocument::parse_file(input)?;
            let (a, b) = (doc.module(m)?, doc.module(n)?);
            let mut result = json!({ "command": "iso", "m": m, "n": n });
            let mut answers = Vec::new();
            if matches!(method, Method::Splitter | Method::Both) {
                let r = iso_json(splitter_iso(a, b))?;
                answers.push(r["isomorphic"].as_bool().unwrap_or(false));
                result["splitter"] = r;
            }
            if matches!(method, Method::Mingen | Method::Both) {
                let r = iso_json(mingen_iso(a, b))?;
                answers.push(r["isomorphic"].as_bool().unwrap_or(false));
                result["mingen"] = r;
            }
            let agree = answers.windows(2).all(|w| w[0] == w[1]);
            result["isomorphic"] = json!(answers[0]);
            result["methods_agree"] = json!(agree);
            let summary = if agree {
                format!("{m} and {n} are {}isomorphic", if answers[0] { "" } else { "not " })
            } else {
                "warning: the two methods disagree".to_string()
            };
            Ok(Outcome { result, summary })
        }
        Command::Summand { input, m, n } => {
            let doc = InputDocument::parse_file(input)?;
            let cs = common_summand(doc.module(m)?, doc.module(n)?);
            if !cs.verify() {
                return Err(CliError::Certificate("common summand certificate".into()));
            }
            let pieces: Vec<Value> = cs
                .pieces
                .iter()
                .map(|p| json!({ "a": basis_json(&p.a), "b": basis_json(&p.b), "map": p.map.images() }))
                .collect();
            Ok(Outcome {
                result: json!({
                    "command": "summand", "m": m, "n": n,
                    "order": cs.a.order().to_string(),
                    "a": basis_json(&cs.a), "b": basis_json(&cs.b),
                    "f_total": cs.f_total.images(),
                    "pieces": pieces,
                    "residual_m": basis_json(&cs.residual1), "residual_n": basis_json(&cs.residual2),
                }),
                summary: format!("common summand of order {} in {} piece(s)", cs.a.order(), cs.pieces.len()),
            })
        }
        Command::Mingen { input, m } => {
            let doc = InputDocument::parse_file(input)?;
            let module = doc.module(m)?;
            let res = mingen(&doc.ring, module);
            let generated = Submodule::generated(module, &res.generators).map(|s| s.is_whole()).unwrap_or(false);
            if !generated {
                return Err(CliError::Certificate("generators do not generate".into()));
            }
            Ok(Outcome {
                result: json!({
                    "command": "mingen", "m": m,
                    "count": res.count, "generators": res.generators, "verified": true,
                    "restarts": res.restarts,
                }),
                summary: format!("{m} needs {} generator(s)", res.count),
            })
        }
        Command::RadicalApprox { input } => {
            let doc = InputDocument::parse_file(input)?;
            let rad = update(&doc.ring, &[Arc::new(regular_module(&doc.ring))]);
            let cands: Vec<Value> = rad
                .candidates
                .iter()
                .zip(&rad.multiplicities)
                .map(|(s, &a)| {
                    let mut v = module_json(s);
                    v["multiplicity"] = json!(a);
                    v
                })
                .collect();
            Ok(Outcome {
                result: json!({
                    "command": "radical-approx",
                    "ideal": { "basis": rad.ideal.rows(), "order": rad.ideal.order().to_string() },
                    "candidates": cands,
                }),
                summary: format!("ideal of order {} with {} candidate(s)", rad.ideal.order(), rad.candidates.len()),
            })
        }
        Command::Oracle(sub) => oracle_dispatch(sub, &OracleBudget::from_env()),
    }
}

fn oracle_dispatch(sub: &OracleCommand, budget: &OracleBudget) -> Result<Outcome, CliError> {
    match sub {
        OracleCommand::Homs { input, m, n } => {
            let doc = InputDocument::parse_file(input)?;
            let homs = oracle_homs(doc.module(m)?, doc.module(n)?, budget)?;
            Ok(Outcome {
                summary: format!("{} homomorphisms", homs.len()),
                result: json!({ "command": "oracle homs", "m": m, "n": n, "count": homs.len(), "homs": homs }),
            })
        }
        OracleCommand::Iso { input, m, n } => {
            let doc = InputDocument::parse_file(input)?;
            let w = oracle_iso(doc.module(m)?, doc.module(n)?, budget)?;
            Ok(Outcome {
                summary: format!("isomorphic: {}", w.is_some()),
                result: json!({ "command": "oracle iso", "m": m, "n": n, "isomorphic": w.is_some(), "witness": w }),
            })
        }
        OracleCommand::Mingen { input, m } => {
            let doc = InputDocument::parse_file(input)?;
            let k = oracle_mingen(doc.module(m)?, budget)?;
            Ok(Outcome {
                summary: format!("{m} needs {k} generator(s)"),
                result: json!({ "command": "oracle mingen", "m": m, "count": k }),
            })
        }
        OracleCommand::Summands { input, m } => {
            let doc = InputDocument::parse_file(input)?;
            let classes = oracle_summand_classes(doc.module(m)?, budget)?;
            let orders: Vec<usize> = classes.iter().map(|c| c.order()).collect();
            let reps: Vec<Vec<&Coords>> = classes.iter().map(|c| c.elements.iter().collect()).collect();
            Ok(Outcome {
                summary: format!("{} summand classes", classes.len()),
                result: json!({ "command": "oracle summands", "m": m, "orders": orders, "classes": reps }),
            })
        }
    }
}
