//! Deterministic report rendering: plain text, LaTeX display math, and a
//! versioned structured (JSON) document.
//!
//! Identical reports render to byte-identical documents. Before anything is
//! emitted, every exponent row is re-checked against the dimensional matrix
//! (`W_k * D(y_k) = sum_j W_kj * D(x_j)`), so a rendered document can never
//! show an inconsistent system.

use dimrep_core::pi::row_dimension_defect;
use dimrep_core::{
    BigInt, ClosedForm, EquationSystem, PiGroup, PowerProduct, ReduceOutcome,
    RepresentationEquation,
};
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::analysis::AnalysisReport;
use crate::model::{AnalysisModel, ParseError, Substitution, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Structured,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RenderOptions {
    pub format: Format,
    /// Render function symbols in the scalar (measure-level) form `psi_l`
    /// instead of the quantity form `Psi_l`. Text and LaTeX only.
    pub scalar: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("render self-check failed: {0}")]
    SelfCheck(String),

    #[error("exponent out of renderable range")]
    ExponentRange,
}

/// Renders a report in the requested format. Output is UTF-8 text ending in
/// a newline, byte-identical across runs and platforms for equal reports.
pub fn render(report: &AnalysisReport, options: &RenderOptions) -> Result<String, RenderError> {
    self_check(&report.system)?;
    match options.format {
        Format::Text => Ok(text_report(report, options.scalar)),
        Format::Latex => Ok(latex_report(report, options.scalar)),
        Format::Structured => structured_report(report),
    }
}

/// Re-verifies the dimension identity of every row against the tuple.
fn self_check(system: &EquationSystem) -> Result<(), RenderError> {
    for eq in &system.equations {
        for row in eq.rows() {
            if !row_dimension_defect(&system.tuple, &eq.partition, row).is_identity() {
                return Err(RenderError::SelfCheck(format!(
                    "row for `{}` violates its dimension identity",
                    system.tuple.entry(row.subject_index()).name()
                )));
            }
        }
    }
    Ok(())
}

fn psi_symbol(index: usize, scalar: bool) -> String {
    if scalar {
        format!("psi_{index}")
    } else {
        format!("Psi_{index}")
    }
}

// ---------------------------------------------------------------------------
// plain text

fn pow_text(name: &str, exp: &BigInt) -> String {
    if exp.is_one() {
        name.to_string()
    } else {
        format!("{name}^{exp}")
    }
}

fn product_text(factors: &[(String, BigInt)]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|(n, e)| pow_text(n, e))
        .collect::<Vec<_>>()
        .join(" * ")
}

/// Nonzero `(name, exponent)` pairs of a row over its partition basis,
/// with exponents optionally scaled by `lambda`.
fn basis_factors(
    system: &EquationSystem,
    eq: &RepresentationEquation,
    exps: &[BigInt],
    lambda: Option<&BigInt>,
) -> PowerProduct {
    eq.partition
        .a_indices
        .iter()
        .zip(exps)
        .filter(|(_, e)| !e.is_zero())
        .map(|(&ai, e)| {
            let e = lambda.map_or_else(|| e.clone(), |l| e * l);
            (system.tuple.entry(ai).name().to_string(), e)
        })
        .collect()
}

fn pi_text(system: &EquationSystem, eq: &RepresentationEquation, pi: &PiGroup) -> String {
    let subject = system.tuple.entry(pi.row.subject_index()).name();
    let numerator = pow_text(subject, pi.row.w0());
    let denominator = basis_factors(system, eq, pi.row.exponents(), None);
    match denominator.len() {
        0 => numerator,
        1 => format!("{numerator} / {}", product_text(&denominator)),
        _ => format!("{numerator} / ({})", product_text(&denominator)),
    }
}

fn equation_text(
    system: &EquationSystem,
    eq: &RepresentationEquation,
    scalar: bool,
    lambda: Option<(&BigInt, &BigInt)>,
) -> String {
    let dep = system.tuple.entry(eq.partition.c_index).name();
    let lhs = match lambda {
        Some((common, _)) => pow_text(dep, common),
        None => pow_text(dep, eq.lhs.w0()),
    };
    let prefactor = basis_factors(system, eq, eq.lhs.exponents(), lambda.map(|(_, l)| l));
    let pis: Vec<String> = eq.pis.iter().map(|p| pi_text(system, eq, p)).collect();
    let mut psi = format!("{}({})", psi_symbol(eq.psi, scalar), pis.join(", "));
    if let Some((_, l)) = lambda {
        if !l.is_one() {
            psi = format!("{psi}^{l}");
        }
    }
    if prefactor.is_empty() {
        format!("{lhs} = {psi}")
    } else {
        format!("{lhs} = {} * {psi}", product_text(&prefactor))
    }
}

/// The equations section of the text report: one block per partition with
/// its exponent matrix, plus the normalized view when present. Everything
/// here is invariant under a change of base dimensions.
pub fn system_text(system: &EquationSystem, scalar: bool) -> String {
    let mut out = String::new();
    for eq in &system.equations {
        let names = |ixs: &[usize]| {
            ixs.iter()
                .map(|&i| system.tuple.entry(i).name())
                .collect::<Vec<_>>()
                .join(", ")
        };
        out.push_str(&format!("equation {}:\n", eq.psi));
        out.push_str(&format!(
            "  A = ({})  B = ({})  C = ({})\n",
            names(&eq.partition.a_indices),
            names(&eq.partition.b_indices),
            names(&[eq.partition.c_index]),
        ));
        out.push_str(&format!(
            "  rows [w0 | {}]:\n",
            names(&eq.partition.a_indices).replace(", ", " ")
        ));
        for row in eq.rows() {
            let name = system.tuple.entry(row.subject_index()).name();
            if row.exponents().is_empty() {
                out.push_str(&format!("    {}: {}\n", name, row.w0()));
            } else {
                let exps: Vec<String> = row.exponents().iter().map(|e| e.to_string()).collect();
                out.push_str(&format!("    {}: {} | {}\n", name, row.w0(), exps.join(" ")));
            }
        }
        out.push_str(&format!("  {}\n\n", equation_text(system, eq, scalar, None)));
    }
    if let Some(n) = &system.normalization {
        out.push_str(&format!(
            "normalized system (common exponent {}):\n",
            n.common_w0
        ));
        for (eq, lambda) in system.equations.iter().zip(&n.lambdas) {
            out.push_str(&format!(
                "  {}\n",
                equation_text(system, eq, scalar, Some((&n.common_w0, lambda)))
            ));
        }
        out.push('\n');
    }
    out
}

fn functional_equation_text(p: i32) -> (String, String) {
    let x_power = if p == 1 { "x" } else { "x^-1" };
    let family = if p == 1 {
        "Psi(x) = k * (1 + x)"
    } else {
        "Psi(x) = k * (1 + x)^-1"
    };
    (
        format!("Psi(x) = {x_power} * Psi(x^-1)"),
        family.to_string(),
    )
}

fn closed_form_text(form: &ClosedForm) -> String {
    let lhs = pow_text(&form.lhs_name, &form.lhs_exponent);
    let terms: Vec<String> = form.terms.iter().map(|t| product_text(t)).collect();
    let sum = format!("({})", terms.join(" + "));
    let sum = if form.functional_exponent == -1 {
        format!("{sum}^-1")
    } else {
        sum
    };
    if form.prefactor.is_empty() {
        format!("{lhs} = {} * {sum}", form.constant)
    } else {
        format!(
            "{lhs} = {} * {} * {sum}",
            form.constant,
            product_text(&form.prefactor)
        )
    }
}

fn model_header_text(report: &AnalysisReport) -> String {
    let model = &report.model;
    let mut out = String::from("# dimensional analysis report\n");
    let dims = if model.base_dims.is_empty() {
        "(none)".to_string()
    } else {
        model.base_dims.join(", ")
    };
    out.push_str(&format!("base dimensions: {dims}\n"));
    out.push_str(&format!(
        "variables: {}\n",
        model
            .variables
            .iter()
            .map(|v| v.name.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    if !model.substitutions.is_empty() {
        let subs: Vec<String> = model
            .substitutions
            .iter()
            .map(|s| {
                let factors: Vec<String> = s
                    .factors
                    .iter()
                    .map(|(n, e)| pow_text(n, &BigInt::from(*e)))
                    .collect();
                format!("{} = {}", s.name, factors.join(" * "))
            })
            .collect();
        out.push_str(&format!("substitutions: {}\n", subs.join("; ")));
        out.push_str(&format!(
            "tuple after substitution: {}\n",
            report
                .tuple
                .entries()
                .iter()
                .map(|e| e.name())
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    out.push_str(&format!("dependent: {}\n", model.dependent));
    out.push_str(&format!("rank: {}\n", report.rank));
    out.push_str(&format!(
        "adequate partitions: {}\n",
        report.system.equations.len()
    ));
    out
}

const COVARIANCE_NOTE: &str = "note: a covariant scalar representation of the underlying \
     relation is assumed; every derived equation is conditional on that premise";

fn text_report(report: &AnalysisReport, scalar: bool) -> String {
    let mut out = model_header_text(report);
    out.push('\n');
    if let Some(diag) = &report.system.diagnostic {
        out.push_str(diag);
        out.push_str("\n\n");
    } else {
        out.push_str(&system_text(&report.system, scalar));
    }
    if let Some(outcome) = &report.reduced {
        let (a, b) = report
            .model
            .symmetry
            .clone()
            .unwrap_or_else(|| ("?".into(), "?".into()));
        out.push_str(&format!("symmetry reduction ({a} <-> {b}):\n"));
        match outcome {
            ReduceOutcome::Reduced(form) => {
                let (feq, family) = functional_equation_text(form.functional_exponent);
                out.push_str(&format!("  functional equation: {feq}\n"));
                out.push_str(&format!("  solution family: {family}\n"));
                out.push_str(&format!("  {}\n", closed_form_text(form)));
            }
            ReduceOutcome::NotApplicable { reason } => {
                out.push_str(&format!("  not applicable: {reason}\n"));
            }
        }
        out.push('\n');
    }
    out.push_str(COVARIANCE_NOTE);
    out.push('\n');
    out
}

// ---------------------------------------------------------------------------
// LaTeX

/// Display form of a tuple entry, honoring `display=` attributes. Macro
/// names get braced so concatenated factors stay well-formed.
fn latex_name(model: &AnalysisModel, name: &str) -> String {
    let display = model.display_of(name);
    if display.starts_with('\\') {
        format!("{{{display}}}")
    } else {
        display.to_string()
    }
}

fn latex_pow(base: String, exp: &BigInt) -> String {
    if exp.is_one() {
        base
    } else {
        format!("{base}^{{{exp}}}")
    }
}

fn latex_product(model: &AnalysisModel, factors: &[(String, BigInt)]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|(n, e)| latex_pow(latex_name(model, n), e))
        .collect::<Vec<_>>()
        .concat()
}

fn latex_pi(
    model: &AnalysisModel,
    system: &EquationSystem,
    eq: &RepresentationEquation,
    pi: &PiGroup,
) -> String {
    let subject = system.tuple.entry(pi.row.subject_index()).name();
    let numerator = latex_pow(latex_name(model, subject), pi.row.w0());
    let denominator = basis_factors(system, eq, pi.row.exponents(), None);
    match denominator.len() {
        0 => numerator,
        1 => format!("{numerator}/{}", latex_product(model, &denominator)),
        _ => format!("{numerator}/({})", latex_product(model, &denominator)),
    }
}

fn latex_psi(index: usize, scalar: bool) -> String {
    if scalar {
        format!("\\psi_{{{index}}}")
    } else {
        format!("\\Psi_{{{index}}}")
    }
}

fn latex_equation(
    model: &AnalysisModel,
    system: &EquationSystem,
    eq: &RepresentationEquation,
    scalar: bool,
    lambda: Option<(&BigInt, &BigInt)>,
) -> String {
    let dep = system.tuple.entry(eq.partition.c_index).name();
    let lhs = match lambda {
        Some((common, _)) => latex_pow(latex_name(model, dep), common),
        None => latex_pow(latex_name(model, dep), eq.lhs.w0()),
    };
    let prefactor = basis_factors(system, eq, eq.lhs.exponents(), lambda.map(|(_, l)| l));
    let pis: Vec<String> = eq
        .pis
        .iter()
        .map(|p| latex_pi(model, system, eq, p))
        .collect();
    let mut psi = format!("{}({})", latex_psi(eq.psi, scalar), pis.join(",\\, "));
    if let Some((_, l)) = lambda {
        if !l.is_one() {
            psi = format!("{psi}^{{{l}}}");
        }
    }
    if prefactor.is_empty() {
        format!("{lhs} = {psi}")
    } else {
        format!("{lhs} = {}\\,{psi}", latex_product(model, &prefactor))
    }
}

fn latex_closed_form(model: &AnalysisModel, form: &ClosedForm) -> String {
    let lhs = latex_pow(latex_name(model, &form.lhs_name), &form.lhs_exponent);
    let terms: Vec<String> = form
        .terms
        .iter()
        .map(|t| latex_product(model, t))
        .collect();
    let mut sum = format!("({})", terms.join("+"));
    if form.functional_exponent == -1 {
        sum = format!("{sum}^{{-1}}");
    }
    let prefactor = if form.prefactor.is_empty() {
        String::new()
    } else {
        latex_product(model, &form.prefactor)
    };
    format!("{lhs} = {}\\,{prefactor}{sum}", form.constant)
}

fn latex_report(report: &AnalysisReport, scalar: bool) -> String {
    let model = &report.model;
    let system = &report.system;
    let mut out = String::from("% dimensional analysis report\n");
    out.push_str(&format!("% rank: {}\n", report.rank));
    if let Some(diag) = &system.diagnostic {
        out.push_str(&format!("% {diag}\n"));
    }
    for eq in &system.equations {
        out.push_str(&format!(
            "\\[\n{}\n\\]\n",
            latex_equation(model, system, eq, scalar, None)
        ));
    }
    if let Some(n) = &system.normalization {
        out.push_str(&format!("% normalized (common exponent {})\n", n.common_w0));
        for (eq, lambda) in system.equations.iter().zip(&n.lambdas) {
            out.push_str(&format!(
                "\\[\n{}\n\\]\n",
                latex_equation(model, system, eq, scalar, Some((&n.common_w0, lambda)))
            ));
        }
    }
    if let Some(outcome) = &report.reduced {
        let (a, b) = model
            .symmetry
            .clone()
            .unwrap_or_else(|| ("?".into(), "?".into()));
        out.push_str(&format!("% symmetry reduction ({a} <-> {b})\n"));
        match outcome {
            ReduceOutcome::Reduced(form) => {
                out.push_str(&format!("\\[\n{}\n\\]\n", latex_closed_form(model, form)));
            }
            ReduceOutcome::NotApplicable { reason } => {
                out.push_str(&format!("% not applicable: {reason}\n"));
            }
        }
    }
    out.push_str(&format!("% {COVARIANCE_NOTE}\n"));
    out
}

// ---------------------------------------------------------------------------
// structured (JSON, schema version 1)

fn int_value(v: &BigInt) -> Result<Value, RenderError> {
    i64::try_from(v)
        .map(Value::from)
        .map_err(|_| RenderError::ExponentRange)
}

fn exponent_map(
    system: &EquationSystem,
    eq: &RepresentationEquation,
    exps: &[BigInt],
) -> Result<Value, RenderError> {
    let mut map = Map::new();
    for (&ai, e) in eq.partition.a_indices.iter().zip(exps) {
        map.insert(
            system.tuple.entry(ai).name().to_string(),
            int_value(e)?,
        );
    }
    Ok(Value::Object(map))
}

fn variable_value(model: &AnalysisModel, v: &Variable) -> Value {
    let mut map = Map::new();
    map.insert("name".into(), json!(v.name));
    let mut dims = Map::new();
    for (dim_name, e) in model.base_dims.iter().zip(v.dim.exponents()) {
        if !e.is_zero() {
            dims.insert(
                dim_name.clone(),
                Value::from(i64::try_from(e).expect("model exponents are small")),
            );
        }
    }
    map.insert("dims".into(), Value::Object(dims));
    if let Some(d) = &v.display {
        map.insert("display".into(), json!(d));
    }
    Value::Object(map)
}

fn substitution_value(s: &Substitution) -> Value {
    let mut map = Map::new();
    map.insert("name".into(), json!(s.name));
    let mut factors = Map::new();
    for (n, e) in &s.factors {
        factors.insert(n.clone(), Value::from(*e));
    }
    map.insert("factors".into(), Value::Object(factors));
    if let Some(d) = &s.display {
        map.insert("display".into(), json!(d));
    }
    Value::Object(map)
}

fn model_value(model: &AnalysisModel) -> Value {
    let mut map = Map::new();
    map.insert("dimensions".into(), json!(model.base_dims));
    map.insert(
        "variables".into(),
        Value::Array(
            model
                .variables
                .iter()
                .map(|v| variable_value(model, v))
                .collect(),
        ),
    );
    map.insert("dependent".into(), json!(model.dependent));
    if let Some((a, b)) = &model.symmetry {
        map.insert("symmetry".into(), json!([a, b]));
    }
    if !model.substitutions.is_empty() {
        map.insert(
            "substitutions".into(),
            Value::Array(model.substitutions.iter().map(substitution_value).collect()),
        );
    }
    Value::Object(map)
}

fn structured_report(report: &AnalysisReport) -> Result<String, RenderError> {
    let system = &report.system;
    let mut root = Map::new();
    root.insert("version".into(), json!("1"));
    root.insert("model".into(), model_value(&report.model));
    root.insert("rank".into(), json!(report.rank));
    if let Some(n) = &system.normalization {
        root.insert("common_w0".into(), int_value(&n.common_w0)?);
    }

    let mut equations = Vec::new();
    for (idx, eq) in system.equations.iter().enumerate() {
        let mut e = Map::new();
        let names = |ixs: &[usize]| -> Vec<String> {
            ixs.iter()
                .map(|&i| system.tuple.entry(i).name().to_string())
                .collect()
        };
        let mut partition = Map::new();
        partition.insert("a".into(), json!(names(&eq.partition.a_indices)));
        partition.insert("b".into(), json!(names(&eq.partition.b_indices)));
        partition.insert(
            "c".into(),
            json!(system.tuple.entry(eq.partition.c_index).name()),
        );
        e.insert("partition".into(), Value::Object(partition));

        let mut lhs = Map::new();
        lhs.insert("w0".into(), int_value(eq.lhs.w0())?);
        lhs.insert(
            "exponents".into(),
            exponent_map(system, eq, eq.lhs.exponents())?,
        );
        e.insert("lhs".into(), Value::Object(lhs));

        let mut pis = Vec::new();
        for pi in &eq.pis {
            let mut p = Map::new();
            p.insert(
                "subject".into(),
                json!(system.tuple.entry(pi.row.subject_index()).name()),
            );
            p.insert("w".into(), int_value(pi.row.w0())?);
            p.insert(
                "exponents".into(),
                exponent_map(system, eq, pi.row.exponents())?,
            );
            pis.push(Value::Object(p));
        }
        e.insert("pis".into(), Value::Array(pis));
        e.insert("psi".into(), json!(format!("Psi_{}", eq.psi)));
        if let Some(n) = &system.normalization {
            e.insert("lambda".into(), int_value(&n.lambdas[idx])?);
        }
        equations.push(Value::Object(e));
    }
    root.insert("equations".into(), Value::Array(equations));

    if let Some(diag) = &system.diagnostic {
        root.insert("diagnostic".into(), json!(diag));
    }
    if let Some(outcome) = &report.reduced {
        match outcome {
            ReduceOutcome::Reduced(form) => {
                let mut r = Map::new();
                r.insert("expression".into(), json!(closed_form_text(form)));
                r.insert("constant".into(), json!(form.constant));
                root.insert("reduced".into(), Value::Object(r));
            }
            ReduceOutcome::NotApplicable { reason } => {
                root.insert("reduced_not_applicable".into(), json!(reason));
            }
        }
    }

    let mut text = serde_json::to_string_pretty(&Value::Object(root))
        .expect("JSON serialization cannot fail");
    text.push('\n');
    Ok(text)
}

/// Rebuilds the analysis model embedded in a structured report, so that
/// `parse -> render(structured) -> parse` is the identity on models.
pub fn model_from_structured(text: &str) -> Result<AnalysisModel, ParseError> {
    let bad = |msg: &str| ParseError {
        line: 1,
        col: 1,
        message: format!("structured document: {msg}"),
    };
    let root: Value =
        serde_json::from_str(text).map_err(|e| bad(&format!("invalid JSON: {e}")))?;
    let model = root.get("model").ok_or_else(|| bad("missing `model`"))?;

    let base_dims: Vec<String> = model
        .get("dimensions")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `model.dimensions`"))?
        .iter()
        .filter_map(|v| v.as_str().map(str::to_string))
        .collect();

    let mut variables = Vec::new();
    for v in model
        .get("variables")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `model.variables`"))?
    {
        let name = v
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("variable without `name`"))?
            .to_string();
        let dims = v
            .get("dims")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("variable without `dims`"))?;
        let mut exps = vec![BigInt::from(0); base_dims.len()];
        for (dim_name, e) in dims {
            let pos = base_dims
                .iter()
                .position(|d| d == dim_name)
                .ok_or_else(|| bad(&format!("unknown dimension `{dim_name}` in dims")))?;
            exps[pos] = BigInt::from(e.as_i64().ok_or_else(|| bad("non-integer exponent"))?);
        }
        variables.push(Variable {
            name,
            display: v.get("display").and_then(Value::as_str).map(str::to_string),
            dim: dimrep_core::DimVector::new(exps),
        });
    }

    let dependent = model
        .get("dependent")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing `model.dependent`"))?
        .to_string();

    let symmetry = match model.get("symmetry").and_then(Value::as_array) {
        Some(pair) if pair.len() == 2 => Some((
            pair[0].as_str().unwrap_or_default().to_string(),
            pair[1].as_str().unwrap_or_default().to_string(),
        )),
        Some(_) => return Err(bad("`symmetry` must hold two names")),
        None => None,
    };

    let mut substitutions = Vec::new();
    if let Some(subs) = model.get("substitutions").and_then(Value::as_array) {
        for s in subs {
            let name = s
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("substitution without `name`"))?
                .to_string();
            let factors_obj = s
                .get("factors")
                .and_then(Value::as_object)
                .ok_or_else(|| bad("substitution without `factors`"))?;
            let mut factors = Vec::new();
            for (n, e) in factors_obj {
                factors.push((
                    n.clone(),
                    e.as_i64().ok_or_else(|| bad("non-integer factor exponent"))?,
                ));
            }
            substitutions.push(Substitution {
                name,
                display: s.get("display").and_then(Value::as_str).map(str::to_string),
                factors,
            });
        }
    }

    Ok(AnalysisModel {
        base_dims,
        variables,
        dependent,
        symmetry,
        substitutions,
    })
}
