//! Pipeline driver: model in, report out.

use dimrep_core::{
    build_system, normalize_system, symmetry_reduce, ClosedForm, DimTuple, EquationSystem,
    PowerProduct, ReduceOutcome,
};
use thiserror::Error;

use crate::model::{AnalysisModel, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Engine(#[from] dimrep_core::Error),

    #[error("--reduce needs a [symmetry] declaration in the model")]
    MissingSymmetry,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalysisOptions {
    /// Attach lcm normalization data to the system.
    pub normalize: bool,
    /// Attempt the symmetry reduction declared in the model.
    pub reduce: bool,
}

/// Everything a renderer needs: the input model, the analyzed tuple, the
/// equation system, and the reduction outcome if one was requested.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub model: AnalysisModel,
    pub tuple: DimTuple,
    pub rank: usize,
    pub system: EquationSystem,
    pub reduced: Option<ReduceOutcome>,
}

/// Runs the full pipeline on a parsed model.
///
/// An empty system (no adequate partition) is a successful run carrying a
/// diagnostic. Normalization is skipped for empty systems; reduction on an
/// empty system reports "not applicable" rather than failing.
pub fn run_analysis(
    model: &AnalysisModel,
    options: &AnalysisOptions,
) -> Result<AnalysisReport, AnalysisError> {
    let tuple = model.tuple()?;
    let rank = tuple.rank();
    let mut system = build_system(&tuple)?;
    if options.normalize && !system.is_empty() {
        system = normalize_system(&system)?;
    }

    let reduced = if options.reduce {
        let (a, b) = model.symmetry.as_ref().ok_or(AnalysisError::MissingSymmetry)?;
        if system.is_empty() {
            Some(ReduceOutcome::NotApplicable {
                reason: "the system is empty; there is nothing to reduce".to_string(),
            })
        } else {
            let outcome = symmetry_reduce(&system, (a, b))?;
            Some(match outcome {
                ReduceOutcome::Reduced(form) => {
                    ReduceOutcome::Reduced(expand_substitutions(model, form))
                }
                other => other,
            })
        }
    } else {
        None
    };

    Ok(AnalysisReport {
        model: model.clone(),
        tuple,
        rank,
        system,
        reduced,
    })
}

/// Rewrites a closed form over substituted variables back in terms of the
/// original variables, e.g. a term `Ep` with `Ep = eps * E^2` becomes
/// `eps * E^2`.
fn expand_substitutions(model: &AnalysisModel, form: ClosedForm) -> ClosedForm {
    if model.substitutions.is_empty() {
        return form;
    }
    ClosedForm {
        prefactor: expand_power_product(model, &form.prefactor),
        terms: form
            .terms
            .iter()
            .map(|t| expand_power_product(model, t))
            .collect(),
        ..form
    }
}

fn expand_power_product(model: &AnalysisModel, product: &PowerProduct) -> PowerProduct {
    let mut out: PowerProduct = Vec::new();
    let mut push = |name: &str, exp: dimrep_core::BigInt| {
        if let Some((_, acc)) = out.iter_mut().find(|(n, _)| n == name) {
            *acc += exp;
        } else {
            out.push((name.to_string(), exp));
        }
    };
    for (name, exp) in product {
        match model.substitution(name) {
            Some(sub) => {
                for (var, factor_exp) in &sub.factors {
                    push(var, exp * dimrep_core::BigInt::from(*factor_exp));
                }
            }
            None => push(name, exp.clone()),
        }
    }
    out.retain(|(_, e)| !num_traits::Zero::is_zero(e));
    out
}
