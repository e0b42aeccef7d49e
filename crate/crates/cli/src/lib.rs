//! Front end for the dimrep engine: model-file parsing, the analysis
//! pipeline, and deterministic report rendering. The `dimrep` binary is a
//! thin wrapper over this library.

pub mod analysis;
pub mod model;
pub mod render;

pub use analysis::{run_analysis, AnalysisError, AnalysisOptions, AnalysisReport};
pub use model::{parse_model, parse_model_with_dependent, AnalysisModel, ParseError};
pub use render::{model_from_structured, render, system_text, Format, RenderOptions};
