//! Library-level rendering invariants: the structured document embeds the
//! model losslessly, rendering is deterministic, and the render self-check
//! rejects systems whose rows break their dimension identity.

use std::fs;
use std::path::PathBuf;

use dimrep_cli::{
    model_from_structured, parse_model, render, run_analysis, system_text, AnalysisOptions,
    Format, RenderOptions,
};
use dimrep_core::{
    build_system, DimTuple, DimVector, EquationSystem, ExponentRow, RepresentationEquation,
};

fn corpus_files() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "dim"))
        .collect();
    files.sort();
    assert_eq!(
        files.len(),
        9,
        "corpus should hold the six examples plus the basis-change, \
         substitution, and missing-G variants"
    );
    files
}

#[test]
fn structured_documents_round_trip_the_model() {
    for path in corpus_files() {
        let text = fs::read_to_string(&path).unwrap();
        let model = parse_model(&text).unwrap();
        let report = run_analysis(&model, &AnalysisOptions::default()).unwrap();
        let doc = render(
            &report,
            &RenderOptions {
                format: Format::Structured,
                scalar: false,
            },
        )
        .unwrap();
        let recovered = model_from_structured(&doc).unwrap();
        assert_eq!(recovered, model, "round-trip failed for {}", path.display());
    }
}

#[test]
fn rendering_is_deterministic_across_formats() {
    for path in corpus_files() {
        let text = fs::read_to_string(&path).unwrap();
        let model = parse_model(&text).unwrap();
        let report = run_analysis(&model, &AnalysisOptions::default()).unwrap();
        for format in [Format::Text, Format::Latex, Format::Structured] {
            let opts = RenderOptions {
                format,
                scalar: false,
            };
            assert_eq!(render(&report, &opts).unwrap(), render(&report, &opts).unwrap());
        }
    }
}

#[test]
fn self_check_rejects_inconsistent_rows() {
    let tuple = DimTuple::new(
        1,
        vec![
            ("x".to_string(), DimVector::from_i64(&[1])),
            ("y".to_string(), DimVector::from_i64(&[2])),
        ],
        1,
    )
    .unwrap();
    let mut system = build_system(&tuple).unwrap();
    assert_eq!(system.equations.len(), 1);

    // overwrite the valid lhs row (y^1 = x^2) with a row that is primitive
    // but dimensionally wrong for this tuple
    let broken = ExponentRow::new(1, 1.into(), vec![3.into()]).unwrap();
    system.equations[0] = RepresentationEquation {
        lhs: broken,
        ..system.equations[0].clone()
    };

    let broken_system = EquationSystem {
        tuple: tuple.clone(),
        ..system
    };
    let text = system_text(&broken_system, false); // plain section render has no check
    assert!(text.contains("y: 1 | 3"));

    let model = parse_model("[dimensions]\nL\n[variables]\nx = L\ny = L^2\n[dependent]\ny\n")
        .unwrap();
    let report = dimrep_cli::AnalysisReport {
        model,
        tuple,
        rank: 1,
        system: broken_system,
        reduced: None,
    };
    let err = render(
        &report,
        &RenderOptions {
            format: Format::Text,
            scalar: false,
        },
    )
    .unwrap_err();
    assert!(err.to_string().contains("self-check"), "{err}");
}
