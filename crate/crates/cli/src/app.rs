//! Subcommands and their text/JSON rendering.

use std::fmt::Write as _;

use cdga::formality::{cohomology_algebra, is_formal, Outcome};
use cdga::{
    minimal_model, verify_minimality, verify_quasi_isomorphism, InvariantTable, ModelError, QDga, QMinimalModel,
    Rational, DEFAULT_MAX_ITERATIONS,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::document::InputDocument;

pub const EXIT_INVALID: i32 = 2;
pub const EXIT_ITERATION_LIMIT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "cdga", version, about = "Cohomology, minimal models and formality of rational CDGAs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check d² = 0, the degree of d and d(I) ⊆ I.
    Validate(Options),
    /// Dimension and a basis of H^k.
    Cohomology(Options),
    /// Monomial basis of the degree-k part of the algebra.
    Basis(Options),
    /// The i-minimal model with its map to the algebra.
    MinimalModel(Options),
    /// A presentation of the cohomology algebra up to degree n.
    CohomologyAlgebra(Options),
    /// Decide i-formality as far as the criteria allow.
    Formality(Options),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Presentation file (`-` for stdin).
    pub file: String,
    #[arg(long)]
    pub degree: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS)]
    pub max_iterations: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Re-check the quasi-isomorphism and minimality of every model built.
    #[arg(long)]
    pub verify: bool,
}

impl Command {
    pub fn options(&self) -> &Options {
        match self {
            Command::Validate(o)
            | Command::Cohomology(o)
            | Command::Basis(o)
            | Command::MinimalModel(o)
            | Command::CohomologyAlgebra(o)
            | Command::Formality(o) => o,
        }
    }
}

/// A failed command: exit code and diagnostic for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn internal(message: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: format!("internal error: {message}"),
        }
    }
}

impl From<ModelError<Rational>> for Failure {
    fn from(e: ModelError<Rational>) -> Self {
        match e {
            ModelError::IterationLimitExceeded { ref partial, .. } => Failure {
                code: EXIT_ITERATION_LIMIT,
                message: format!("{e}\npartial invariants: {}", partial.invariants()),
            },
            ModelError::InvalidTarget(report) => Failure::invalid(format!("invalid algebra:\n{report}")),
            other => Failure::internal(other),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::internal(format!("{e:#}"))
    }
}

impl From<cdga::AlgebraError> for Failure {
    fn from(e: cdga::AlgebraError) -> Self {
        Failure::internal(e)
    }
}

fn required_degree(o: &Options) -> Result<u32, Failure> {
    o.degree.ok_or_else(|| Failure::invalid("this command needs --degree"))
}

/// The algebra known up to `bound`, after checking that it is a DGA.
fn checked_dga(doc: &InputDocument, bound: u32) -> Result<QDga, Failure> {
    let a = doc.to_dga(bound.max(doc.validation_bound()))?;
    let report = a.validate();
    if !report.is_valid() {
        return Err(Failure::invalid(format!("invalid algebra:\n{report}")));
    }
    Ok(a)
}

pub fn run(command: &Command, doc: &InputDocument) -> Result<String, Failure> {
    let o = command.options();
    let value = match command {
        Command::Validate(_) => validate(doc, o)?,
        Command::Cohomology(_) => cohomology(doc, o)?,
        Command::Basis(_) => basis(doc, o)?,
        Command::MinimalModel(_) => model(doc, o)?,
        Command::CohomologyAlgebra(_) => presentation(doc, o)?,
        Command::Formality(_) => formality(doc, o)?,
    };
    Ok(match value {
        Rendered::Text(t) => t,
        Rendered::Json(v) => serde_json::to_string_pretty(&v).expect("values serialize") + "\n",
    })
}

enum Rendered {
    Text(String),
    Json(Value),
}

fn validate(doc: &InputDocument, o: &Options) -> Result<Rendered, Failure> {
    let bound = o.degree.unwrap_or(0).max(doc.validation_bound());
    let a = doc.to_dga(bound)?;
    let report = a.validate();
    if !report.is_valid() {
        return Err(Failure::invalid(format!("invalid algebra:\n{report}")));
    }
    Ok(match o.format {
        Format::Text => Rendered::Text(format!("valid (checked up to degree {bound})\n")),
        Format::Json => Rendered::Json(json!({ "valid": true, "checked_degree": bound })),
    })
}

fn cohomology(doc: &InputDocument, o: &Options) -> Result<Rendered, Failure> {
    let k = required_degree(o)?;
    let a = checked_dga(doc, k + 1)?;
    let h = a.cohomology(k)?;
    let basis: Vec<String> = h.representatives().iter().map(|r| a.render(r)).collect();
    Ok(match o.format {
        Format::Text => Rendered::Text(format!("H^{k}: dimension {}\nbasis: [{}]\n", h.dim(), basis.join(", "))),
        Format::Json => Rendered::Json(json!({ "degree": k, "dimension": h.dim(), "basis": basis })),
    })
}

fn basis(doc: &InputDocument, o: &Options) -> Result<Rendered, Failure> {
    let k = required_degree(o)?;
    let a = doc.to_dga(k)?;
    let basis: Vec<String> = a
        .algebra()
        .degree_basis(k)?
        .iter()
        .map(|m| a.table().render_monomial(m))
        .collect();
    Ok(match o.format {
        Format::Text => Rendered::Text(format!("[{}]\n", basis.join(", "))),
        Format::Json => Rendered::Json(json!({ "degree": k, "basis": basis })),
    })
}

pub fn invariants_json(t: &InvariantTable) -> Value {
    let v: Vec<Value> = t.entries().map(|((i, j), n)| json!([i, j, n])).collect();
    json!({ "v": v })
}

fn verify(m: &QMinimalModel, a: &QDga, what: &str) -> Result<(), Failure> {
    let q = verify_quasi_isomorphism(m, a)?;
    let s = verify_minimality(m)?;
    if q.passed() && s.passed() {
        return Ok(());
    }
    let mut msg = format!("verification of the {what} failed");
    for (k, f) in &q.failures {
        let _ = write!(msg, "\n  degree {k}: {f}");
    }
    for f in &s.failures {
        let _ = write!(msg, "\n  {f}");
    }
    Err(Failure {
        code: EXIT_INTERNAL,
        message: msg,
    })
}

fn model(doc: &InputDocument, o: &Options) -> Result<Rendered, Failure> {
    let i = required_degree(o)?;
    let a = checked_dga(doc, i + 2)?;
    let m = minimal_model(&a, i, o.max_iterations)?;
    if o.verify {
        verify(&m, &a, "minimal model")?;
    }
    Ok(match o.format {
        Format::Text => {
            let degrees: Vec<String> = m.generators().iter().map(|g| g.degree.to_string()).collect();
            let mut out = format!(
                "{i}-minimal model: {} generators in degrees ({})\n",
                m.generators().len(),
                degrees.join(", ")
            );
            out.push_str(&m.render_diagram());
            let _ = writeln!(out, "invariants: {}", m.invariants());
            if o.verify {
                out.push_str("verified: quasi-isomorphism and minimality\n");
            }
            Rendered::Text(out)
        }
        Format::Json => {
            let generators: Vec<Value> = m
                .generators()
                .iter()
                .map(|g| json!({ "name": g.name, "degree": g.degree, "stage": g.stage.to_string() }))
                .collect();
            let mut differential = Map::new();
            let mut phi = Map::new();
            for (p, g) in m.generators().iter().enumerate() {
                differential.insert(g.name.clone(), m.render(m.model().generator_differential(p)).into());
                phi.insert(g.name.clone(), m.render_phi(g).into());
            }
            Rendered::Json(json!({
                "degree": i,
                "generators": generators,
                "differential": differential,
                "phi": phi,
                "invariants": invariants_json(m.invariants()),
            }))
        }
    })
}

fn presentation(doc: &InputDocument, o: &Options) -> Result<Rendered, Failure> {
    let n = required_degree(o)?;
    let a = checked_dga(doc, n + 1)?;
    let p = cohomology_algebra(&a, n)?;
    let table = p.table();
    let witnesses: Vec<(String, String)> = table
        .names()
        .iter()
        .zip(p.witnesses())
        .map(|(name, w)| (name.clone(), a.render(w)))
        .collect();
    Ok(match o.format {
        Format::Text => {
            let mut out = format!("# cohomology algebra, valid up to degree {n}\n");
            for (name, w) in &witnesses {
                let _ = writeln!(out, "# {name} -> [{w}]");
            }
            if table.is_empty() {
                out.push_str("# trivial in positive degrees\n");
                return Ok(Rendered::Text(out));
            }
            let emitted = InputDocument {
                generators: table.names().iter().cloned().zip(table.degrees().iter().copied()).collect(),
                differential: Vec::new(),
                relations: p.render_relations(),
            };
            out.push_str(&emitted.to_string());
            Rendered::Text(out)
        }
        Format::Json => {
            let generators: Vec<Value> = table
                .names()
                .iter()
                .zip(table.degrees())
                .map(|(name, d)| json!([name, d]))
                .collect();
            let mut w = Map::new();
            for (name, rep) in witnesses {
                w.insert(name, rep.into());
            }
            Rendered::Json(json!({
                "degree": n,
                "generators": generators,
                "relations": p.render_relations(),
                "witnesses": w,
            }))
        }
    })
}

fn formality(doc: &InputDocument, o: &Options) -> Result<Rendered, Failure> {
    let i = required_degree(o)?;
    let a = checked_dga(doc, i + 2)?;
    if o.verify {
        let m = minimal_model(&a, i, o.max_iterations)?;
        verify(&m, &a, "minimal model")?;
    }
    let v = is_formal(&a, i, o.max_iterations)?;
    Ok(match o.format {
        Format::Text => {
            let mut out = format!("{}\n", v.outcome);
            let _ = writeln!(out, "model invariants: {}", v.model_invariants);
            let stopped = if v.cohomology_model_complete {
                ""
            } else {
                " (stopped at the iteration limit)"
            };
            let _ = writeln!(out, "cohomology invariants: {}{stopped}", v.cohomology_invariants);
            if let Some(m) = v.mismatch {
                let _ = writeln!(out, "first difference: {m}");
            }
            if v.outcome == Outcome::Inconclusive {
                let _ = writeln!(out, "psi does not vanish on: {}", v.psi_failures.join(", "));
            }
            Rendered::Text(out)
        }
        Format::Json => {
            let mismatch = v.mismatch.map(|m| {
                json!({
                    "degree": m.degree,
                    "stage": m.stage,
                    "model": m.model,
                    "cohomology": m.cohomology,
                })
            });
            Rendered::Json(json!({
                "degree": i,
                "verdict": v.outcome.to_string(),
                "invariants": invariants_json(&v.model_invariants),
                "cohomology_invariants": invariants_json(&v.cohomology_invariants),
                "cohomology_model_complete": v.cohomology_model_complete,
                "mismatch": mismatch,
                "psi_failures": v.psi_failures,
            }))
        }
    })
}
