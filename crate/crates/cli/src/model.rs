//! Analysis model files: a line-oriented text format naming the base
//! dimensions, the variables with their dimension expressions, the dependent
//! variable, and optional exchange-symmetry and substitution declarations.
//!
//! ```text
//! # comment
//! [dimensions]
//! L
//! T
//!
//! [variables]
//! l = L display=\ell
//! g = L * T^-2
//! t = T
//!
//! [dependent]
//! t
//! ```
//!
//! Dimension expressions are power products over the base dimensions:
//! `1` alone, or `name`, `name^k` factors joined by `*` with integer
//! exponents; repeated names accumulate. `[symmetry]` holds one line with
//! two variable names. `[substitute]` lines introduce new variables as power
//! products over existing ones; the referenced variables leave the tuple.

use std::collections::BTreeMap;
use std::fmt;

use dimrep_core::{BigInt, DimTuple, DimVector};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub display: Option<String>,
    pub dim: DimVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub name: String,
    pub display: Option<String>,
    /// Power-product factors over declared variables, in source order.
    pub factors: Vec<(String, i64)>,
}

/// A parsed and validated analysis model. Dimension expressions are already
/// resolved to exponent vectors over `base_dims`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisModel {
    pub base_dims: Vec<String>,
    pub variables: Vec<Variable>,
    pub dependent: String,
    pub symmetry: Option<(String, String)>,
    pub substitutions: Vec<Substitution>,
}

impl AnalysisModel {
    /// Display string for a variable or substitution name.
    pub fn display_of<'a>(&'a self, name: &'a str) -> &'a str {
        for v in &self.variables {
            if v.name == name {
                return v.display.as_deref().unwrap_or(name);
            }
        }
        for s in &self.substitutions {
            if s.name == name {
                return s.display.as_deref().unwrap_or(name);
            }
        }
        name
    }

    pub fn substitution(&self, name: &str) -> Option<&Substitution> {
        self.substitutions.iter().find(|s| s.name == name)
    }

    /// The dimension tuple this model analyzes: the declared variables with
    /// substitutions applied. Each substitution's variable takes the tuple
    /// position of its earliest factor; the referenced variables are
    /// removed.
    pub fn tuple(&self) -> dimrep_core::Result<DimTuple> {
        let ambient = self.base_dims.len();
        let var_index: BTreeMap<&str, usize> = self
            .variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.as_str(), i))
            .collect();

        let mut removed = vec![false; self.variables.len()];
        // (position key, sequence) -> entry; survivors keep their index,
        // substituted variables adopt their earliest factor's position.
        let mut staged: Vec<(usize, usize, String, DimVector)> = Vec::new();
        for (k, sub) in self.substitutions.iter().enumerate() {
            let mut dim = DimVector::identity(ambient);
            let mut position = usize::MAX;
            for (name, exp) in &sub.factors {
                let idx = var_index[name.as_str()];
                removed[idx] = true;
                position = position.min(idx);
                dim = dim.add(&self.variables[idx].dim.scaled(&BigInt::from(*exp)))?;
            }
            staged.push((position, self.variables.len() + k, sub.name.clone(), dim));
        }
        for (i, v) in self.variables.iter().enumerate() {
            if !removed[i] {
                staged.push((i, i, v.name.clone(), v.dim.clone()));
            }
        }
        staged.sort_by_key(|entry| (entry.0, entry.1));

        let entries: Vec<(String, DimVector)> = staged
            .into_iter()
            .map(|(_, _, name, dim)| (name, dim))
            .collect();
        let dependent = entries
            .iter()
            .position(|(n, _)| n == &self.dependent)
            .expect("validated: dependent survives substitution");
        DimTuple::new(ambient, entries, dependent)
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One `name (^ exponent)?` factor; `col` points at the factor inside its
/// line for diagnostics.
fn parse_factor(term: &str, line_no: usize, col: usize) -> Result<(String, i64), ParseError> {
    let term = term.trim();
    let (name, exp) = match term.split_once('^') {
        None => (term, 1i64),
        Some((name, exp_text)) => {
            let exp_text = exp_text.trim();
            let exp = exp_text.parse::<i64>().map_err(|_| {
                if exp_text.parse::<f64>().is_ok() {
                    ParseError::new(line_no, col, format!("non-integer exponent `{exp_text}`"))
                } else {
                    ParseError::new(line_no, col, format!("malformed exponent `{exp_text}`"))
                }
            })?;
            (name.trim(), exp)
        }
    };
    if !is_ident(name) {
        return Err(ParseError::new(
            line_no,
            col,
            format!("malformed factor `{term}`: expected `name` or `name^integer`"),
        ));
    }
    Ok((name.to_string(), exp))
}

/// Parses a power-product expression into accumulated `(name, exponent)`
/// factors in first-appearance order. `1` alone denotes the empty product.
fn parse_power_product(
    expr: &str,
    line_no: usize,
    line: &str,
) -> Result<Vec<(String, i64)>, ParseError> {
    let col_of = |needle: &str| line.find(needle.trim()).map_or(1, |p| p + 1);
    if expr.trim() == "1" {
        return Ok(Vec::new());
    }
    let mut factors: Vec<(String, i64)> = Vec::new();
    for term in expr.split('*') {
        if term.trim().is_empty() {
            return Err(ParseError::new(
                line_no,
                col_of(expr),
                "empty factor in power product",
            ));
        }
        let (name, exp) = parse_factor(term, line_no, col_of(term))?;
        match factors.iter_mut().find(|(n, _)| n == &name) {
            Some((_, acc)) => *acc += exp,
            None => factors.push((name, exp)),
        }
    }
    Ok(factors)
}

/// Splits an optional trailing `display=<value>` attribute off an
/// expression.
fn split_display(
    rhs: &str,
    line_no: usize,
    line: &str,
) -> Result<(String, Option<String>), ParseError> {
    let tokens: Vec<&str> = rhs.split_whitespace().collect();
    let Some(pos) = tokens.iter().position(|t| t.starts_with("display=")) else {
        return Ok((rhs.trim().to_string(), None));
    };
    let value = &tokens[pos]["display=".len()..];
    if value.is_empty() {
        return Err(ParseError::new(
            line_no,
            line.find("display=").map_or(1, |p| p + 1),
            "empty display attribute",
        ));
    }
    if pos + 1 != tokens.len() {
        return Err(ParseError::new(
            line_no,
            1,
            "unexpected tokens after display attribute",
        ));
    }
    Ok((tokens[..pos].join(" "), Some(value.to_string())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Dimensions,
    Variables,
    Dependent,
    Symmetry,
    Substitute,
}

/// Parses a model document. See the module docs for the format.
pub fn parse_model(text: &str) -> Result<AnalysisModel, ParseError> {
    parse_model_with_dependent(text, None)
}

/// name, display attribute, factors, declaring line.
type RawDeclaration = (String, Option<String>, Vec<(String, i64)>, usize);

/// Like [`parse_model`], but `dependent_override` replaces the file's
/// `[dependent]` section (which then becomes optional).
pub fn parse_model_with_dependent(
    text: &str,
    dependent_override: Option<&str>,
) -> Result<AnalysisModel, ParseError> {
    let mut base_dims: Vec<String> = Vec::new();
    let mut raw_vars: Vec<RawDeclaration> = Vec::new();
    let mut dependent: Option<(String, usize)> = None;
    let mut symmetry: Option<(String, String)> = None;
    let mut raw_subs: Vec<RawDeclaration> = Vec::new();
    let mut section: Option<Section> = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim_end();
        let content = line.trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = Some(match name.trim() {
                "dimensions" => Section::Dimensions,
                "variables" => Section::Variables,
                "dependent" => Section::Dependent,
                "symmetry" => Section::Symmetry,
                "substitute" => Section::Substitute,
                other => {
                    return Err(ParseError::new(
                        line_no,
                        1,
                        format!("unknown section `[{other}]`"),
                    ))
                }
            });
            continue;
        }
        let Some(section) = section else {
            return Err(ParseError::new(
                line_no,
                1,
                "content before the first section header",
            ));
        };
        match section {
            Section::Dimensions => {
                if !is_ident(content) {
                    return Err(ParseError::new(
                        line_no,
                        1,
                        format!("invalid base dimension name `{content}`"),
                    ));
                }
                if base_dims.iter().any(|d| d == content) {
                    return Err(ParseError::new(
                        line_no,
                        1,
                        format!("duplicate base dimension `{content}`"),
                    ));
                }
                base_dims.push(content.to_string());
            }
            Section::Variables | Section::Substitute => {
                let Some((name, rhs)) = content.split_once('=') else {
                    return Err(ParseError::new(
                        line_no,
                        1,
                        "expected `name = expression`",
                    ));
                };
                let name = name.trim();
                if !is_ident(name) {
                    return Err(ParseError::new(
                        line_no,
                        1,
                        format!("invalid variable name `{name}`"),
                    ));
                }
                let (expr, display) = split_display(rhs, line_no, line)?;
                let factors = parse_power_product(&expr, line_no, line)?;
                let slot = (name.to_string(), display, factors, line_no);
                if section == Section::Variables {
                    raw_vars.push(slot);
                } else {
                    raw_subs.push(slot);
                }
            }
            Section::Dependent => {
                if dependent.is_some() {
                    return Err(ParseError::new(line_no, 1, "second [dependent] entry"));
                }
                if !is_ident(content) {
                    return Err(ParseError::new(
                        line_no,
                        1,
                        format!("invalid dependent name `{content}`"),
                    ));
                }
                dependent = Some((content.to_string(), line_no));
            }
            Section::Symmetry => {
                if symmetry.is_some() {
                    return Err(ParseError::new(line_no, 1, "second [symmetry] entry"));
                }
                let names: Vec<&str> = content
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .collect();
                if names.len() != 2 || !names.iter().all(|n| is_ident(n)) {
                    return Err(ParseError::new(
                        line_no,
                        1,
                        "expected two variable names, e.g. `a b`",
                    ));
                }
                symmetry = Some((names[0].to_string(), names[1].to_string()));
            }
        }
    }

    // Resolve variables against the base dimensions.
    let mut variables: Vec<Variable> = Vec::new();
    for (name, display, factors, line_no) in raw_vars {
        if variables.iter().any(|v| v.name == name) {
            return Err(ParseError::new(
                line_no,
                1,
                format!("duplicate variable `{name}`"),
            ));
        }
        let mut exps = vec![BigInt::from(0); base_dims.len()];
        for (dim_name, exp) in &factors {
            let Some(pos) = base_dims.iter().position(|d| d == dim_name) else {
                return Err(ParseError::new(
                    line_no,
                    1,
                    format!("unknown base dimension `{dim_name}`"),
                ));
            };
            exps[pos] += BigInt::from(*exp);
        }
        variables.push(Variable {
            name,
            display,
            dim: DimVector::new(exps),
        });
    }
    if variables.is_empty() {
        return Err(ParseError::new(1, 1, "no variables declared"));
    }

    let dependent = match dependent_override {
        Some(name) => name.to_string(),
        None => {
            dependent
                .ok_or_else(|| ParseError::new(1, 1, "no [dependent] section and no override"))?
                .0
        }
    };
    if !variables.iter().any(|v| v.name == dependent) {
        return Err(ParseError::new(
            1,
            1,
            format!("dependent `{dependent}` is not a declared variable"),
        ));
    }

    // Resolve substitutions against the variables.
    let mut substitutions: Vec<Substitution> = Vec::new();
    for (name, display, factors, line_no) in raw_subs {
        if variables.iter().any(|v| v.name == name)
            || substitutions.iter().any(|s| s.name == name)
        {
            return Err(ParseError::new(
                line_no,
                1,
                format!("substitution name `{name}` is already taken"),
            ));
        }
        if factors.is_empty() {
            return Err(ParseError::new(
                line_no,
                1,
                "substitution needs at least one factor",
            ));
        }
        for (var, exp) in &factors {
            if !variables.iter().any(|v| &v.name == var) {
                return Err(ParseError::new(
                    line_no,
                    1,
                    format!("substitution references undeclared variable `{var}`"),
                ));
            }
            if var == &dependent {
                return Err(ParseError::new(
                    line_no,
                    1,
                    "substitution may not consume the dependent variable",
                ));
            }
            if *exp == 0 {
                return Err(ParseError::new(
                    line_no,
                    1,
                    format!("substitution factor `{var}` has exponent 0"),
                ));
            }
        }
        substitutions.push(Substitution {
            name,
            display,
            factors,
        });
    }

    // Names visible in the final tuple: surviving variables plus
    // substitution names.
    let consumed: Vec<&str> = substitutions
        .iter()
        .flat_map(|s| s.factors.iter().map(|(n, _)| n.as_str()))
        .collect();
    let mut final_names: Vec<&str> = variables
        .iter()
        .map(|v| v.name.as_str())
        .filter(|n| !consumed.contains(n))
        .collect();
    final_names.extend(substitutions.iter().map(|s| s.name.as_str()));

    if let Some((a, b)) = &symmetry {
        for n in [a, b] {
            if !final_names.contains(&n.as_str()) {
                return Err(ParseError::new(
                    1,
                    1,
                    format!("symmetry names `{n}`, which is not in the analyzed tuple"),
                ));
            }
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

impl fmt::Display for AnalysisModel {
    /// Canonical model text; parses back to an identical model.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[dimensions]")?;
        for d in &self.base_dims {
            writeln!(f, "{d}")?;
        }
        writeln!(f, "\n[variables]")?;
        for v in &self.variables {
            let expr = dim_expr_text(&self.base_dims, &v.dim);
            match &v.display {
                Some(d) => writeln!(f, "{} = {} display={}", v.name, expr, d)?,
                None => writeln!(f, "{} = {}", v.name, expr)?,
            }
        }
        writeln!(f, "\n[dependent]\n{}", self.dependent)?;
        if let Some((a, b)) = &self.symmetry {
            writeln!(f, "\n[symmetry]\n{a} {b}")?;
        }
        if !self.substitutions.is_empty() {
            writeln!(f, "\n[substitute]")?;
            for s in &self.substitutions {
                let expr = factors_text(&s.factors);
                match &s.display {
                    Some(d) => writeln!(f, "{} = {} display={}", s.name, expr, d)?,
                    None => writeln!(f, "{} = {}", s.name, expr)?,
                }
            }
        }
        Ok(())
    }
}

fn dim_expr_text(base_dims: &[String], dim: &DimVector) -> String {
    let factors: Vec<(String, i64)> = base_dims
        .iter()
        .zip(dim.exponents())
        .filter(|(_, e)| !e.is_zero())
        .map(|(n, e)| (n.clone(), i64::try_from(e).expect("small exponent")))
        .collect();
    factors_text(&factors)
}

fn factors_text(factors: &[(String, i64)]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|(n, e)| {
            if *e == 1 {
                n.clone()
            } else {
                format!("{n}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

#[cfg(test)]
mod tests {
    use super::*;

    const PENDULUM: &str = "\
# pendulum
[dimensions]
L
T
M

[variables]
l = L display=\\ell
m = M
theta = 1 display=\\theta
g = L * T^-2
t = T

[dependent]
t
";

    #[test]
    fn parses_the_pendulum_model() {
        let model = parse_model(PENDULUM).unwrap();
        assert_eq!(model.base_dims, vec!["L", "T", "M"]);
        assert_eq!(model.dependent, "t");
        assert_eq!(model.variables.len(), 5);
        assert_eq!(model.variables[3].dim, DimVector::from_i64(&[1, -2, 0]));
        assert_eq!(model.variables[2].dim, DimVector::from_i64(&[0, 0, 0]));
        assert_eq!(model.display_of("theta"), "\\theta");

        let tuple = model.tuple().unwrap();
        assert_eq!(tuple.len(), 5);
        assert_eq!(tuple.ambient(), 3);
        assert_eq!(tuple.dependent().name(), "t");
    }

    #[test]
    fn rejects_bad_expressions() {
        let err = |text: &str| parse_model(text).unwrap_err();

        let e = err("[dimensions]\nL\n[variables]\nx = L^0.5\n[dependent]\nx\n");
        assert!(e.message.contains("non-integer exponent"), "{e}");
        assert_eq!(e.line, 4);

        let e = err("[dimensions]\nL\n[variables]\nx = Z\n[dependent]\nx\n");
        assert!(e.message.contains("unknown base dimension `Z`"), "{e}");

        let e = err("[dimensions]\nL\n[variables]\nx = L\nx = L\n[dependent]\nx\n");
        assert!(e.message.contains("duplicate variable"), "{e}");

        let e = err("[dimensions]\nL\n[variables]\nx = L\n");
        assert!(e.message.contains("no [dependent]"), "{e}");

        let e = err("[dimensions]\nL\n[variables]\nx = L\n[dependent]\ny\n");
        assert!(e.message.contains("not a declared variable"), "{e}");
    }

    #[test]
    fn dependent_override_takes_precedence() {
        let model = parse_model_with_dependent(PENDULUM, Some("g")).unwrap();
        assert_eq!(model.dependent, "g");
        let no_section = "[dimensions]\nL\n[variables]\nx = L\ny = L\n";
        let model = parse_model_with_dependent(no_section, Some("y")).unwrap();
        assert_eq!(model.dependent, "y");
    }

    #[test]
    fn exponents_accumulate_per_name() {
        let model =
            parse_model("[dimensions]\nL\n[variables]\nx = L * L^2\n[dependent]\nx\n").unwrap();
        assert_eq!(model.variables[0].dim, DimVector::from_i64(&[3]));
    }

    #[test]
    fn substitutions_replace_their_factors() {
        let text = "\
[dimensions]
L
T
M
I

[variables]
E = L * T^-3 * M * I^-1
H = L^-1 * I
eps = L^-3 * T^4 * M^-1 * I^2
mu = L * T^-2 * M * I^-2
u = L^-1 * T^-2 * M

[dependent]
u

[substitute]
Ep = eps * E^2 display=E'
Hp = mu * H^2 display=H'

[symmetry]
Ep Hp
";
        let model = parse_model(text).unwrap();
        let tuple = model.tuple().unwrap();
        let names: Vec<&str> = tuple.entries().iter().map(|e| e.name()).collect();
        assert_eq!(names, vec!["Ep", "Hp", "u"]);
        // [Ep] = [eps] + 2[E] = L^-1 T^-2 M, same as [u]
        assert_eq!(tuple.entry(0).dim(), &DimVector::from_i64(&[-1, -2, 1, 0]));
        assert_eq!(tuple.entry(0).dim(), tuple.entry(2).dim());
        assert_eq!(model.display_of("Ep"), "E'");
        assert_eq!(model.symmetry, Some(("Ep".into(), "Hp".into())));
    }

    #[test]
    fn substitution_validation() {
        let base = "[dimensions]\nM\n[variables]\na = M\nb = M\nc = M\n[dependent]\nc\n";
        let with = |extra: &str| format!("{base}{extra}");

        let e = parse_model(&with("[substitute]\nq = c^2\n")).unwrap_err();
        assert!(e.message.contains("dependent"), "{e}");

        let e = parse_model(&with("[substitute]\na = b\n")).unwrap_err();
        assert!(e.message.contains("already taken"), "{e}");

        let e = parse_model(&with("[substitute]\nq = w\n")).unwrap_err();
        assert!(e.message.contains("undeclared variable `w`"), "{e}");

        let e = parse_model(&with("[symmetry]\na q\n")).unwrap_err();
        assert!(e.message.contains("not in the analyzed tuple"), "{e}");
    }

    #[test]
    fn canonical_text_round_trips() {
        let model = parse_model(PENDULUM).unwrap();
        let canon = model.to_string();
        assert_eq!(parse_model(&canon).unwrap(), model);
    }
}
