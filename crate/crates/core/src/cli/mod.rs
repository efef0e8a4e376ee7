//! Plumbing for the `mindeg` binary: instance files, JSON reports, random
//! instances and the property battery. Every command returns its stdout
//! payload or a [`CliError`] carrying the process exit code.

pub mod instance;
pub mod random;
pub mod report;
pub mod verify;

use serde_json::{json, Value};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;
pub const EXIT_PROPERTY: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub kind: String,
    pub message: String,
    pub field: Option<String>,
}

impl CliError {
    pub fn new(code: i32, kind: &str, message: impl Into<String>) -> Self {
        CliError { code, kind: kind.to_string(), message: message.into(), field: None }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        CliError::new(EXIT_PARSE, "parse_error", message)
    }

    pub fn with_field(mut self, field: &str) -> Self {
        self.field = Some(field.to_string());
        self
    }

    pub fn from_domain(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::NotPositiveDefinite => (EXIT_COMPUTATION, "not_positive_definite"),
            Error::DimensionMismatch { .. } => (EXIT_INVARIANT, "dimension_mismatch"),
            Error::DimensionTooLarge { .. } => (EXIT_INVARIANT, "dimension_too_large"),
            Error::SingularSubgroupBasis => (EXIT_INVARIANT, "singular_subgroup_basis"),
            Error::ZeroModule => (EXIT_INVARIANT, "zero_module"),
            Error::InvalidClassIndex { .. } => (EXIT_INVARIANT, "invalid_class_index"),
            Error::GenusOneNotHandledHere => (EXIT_INVARIANT, "genus_one_not_handled_here"),
            Error::InconsistentInstance(_) => (EXIT_INVARIANT, "inconsistent_instance"),
            Error::InvalidOrder(_) => (EXIT_INVARIANT, "invalid_order"),
            Error::InvalidField { .. } => (EXIT_INVARIANT, "invalid_field"),
        };
        let field = match &e {
            Error::InvalidField { field, .. } => Some(field.clone()),
            Error::InvalidOrder(_) => Some("order".to_string()),
            Error::SingularSubgroupBasis => Some("coset.h_basis".to_string()),
            Error::ZeroModule => Some("hermitian".to_string()),
            Error::InvalidClassIndex { .. } => Some("curve_data.c_omega".to_string()),
            Error::NotPositiveDefinite => Some("hermitian".to_string()),
            _ => None,
        };
        CliError { code, kind: kind.to_string(), message: e.to_string(), field }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"code": self.code, "kind": self.kind, "message": self.message, "field": self.field}})
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}

/// Output style shared by every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputOptions {
    pub pretty: bool,
    pub digits: u32,
}

impl Default for OutputOptions {
    fn default() -> Self {
        OutputOptions { pretty: false, digits: crate::bounds::DEFAULT_DIGITS }
    }
}

/// A finished command: the document to print and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: Value,
    pub code: i32,
}

impl Outcome {
    pub fn ok(document: Value) -> Self {
        Outcome { document, code: EXIT_OK }
    }

    pub fn render(&self, opts: &OutputOptions) -> String {
        if opts.pretty {
            report::render_text(&self.document)
        } else {
            serde_json::to_string(&self.document).expect("reports serialize") + "\n"
        }
    }
}

pub fn analyze(text: &str, opts: &OutputOptions) -> Result<Outcome, CliError> {
    let loaded = instance::load_instance(text)?;
    report::analyze_outcome(&loaded, opts.digits)
}

pub fn bound(text: &str, opts: &OutputOptions) -> Result<Outcome, CliError> {
    let loaded = instance::load_instance(text)?;
    report::bound_report(&loaded, opts.digits).map(Outcome::ok)
}

pub fn oracle(text: &str, box_bound: Option<u64>) -> Result<Outcome, CliError> {
    let loaded = instance::load_instance(text)?;
    report::oracle_report(&loaded, box_bound)
}

pub fn verify_file(text: &str, opts: &OutputOptions) -> Result<Outcome, CliError> {
    let loaded = instance::load_instance(text)?;
    let summary = verify::run_battery(std::slice::from_ref(&loaded.inst_bundle()), opts.digits);
    let mut doc = summary.to_json();
    doc["mode"] = json!("file");
    doc["input_sha256"] = json!(loaded.input_sha256);
    Ok(Outcome { code: summary.exit_code(), document: doc })
}

pub fn verify_random(seed: u64, count: usize, opts: &OutputOptions) -> Result<Outcome, CliError> {
    let bundles = random::random_bundles(seed, count);
    let summary = verify::run_battery(&bundles, opts.digits);
    let mut doc = summary.to_json();
    doc["mode"] = json!("random");
    doc["seed"] = json!(seed);
    doc["count"] = json!(count);
    Ok(Outcome { code: summary.exit_code(), document: doc })
}
