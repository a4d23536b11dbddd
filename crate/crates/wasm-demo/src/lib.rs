//! Browser bindings: diagram classes, normal forms and braid witnesses.
//!
//! Each export takes text inputs and returns a JSON string, either the result
//! or `{"error": message}`.

use hurwitz_core::{
    connect, normalize, validate_coxeter_target, CoxeterDiagram, CoxeterSystem, Factorization, Word,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn diagram(text: &str) -> Result<CoxeterDiagram, String> {
    if text.trim_start().starts_with('{') {
        let j = serde_json::from_str(text).map_err(|e| e.to_string())?;
        CoxeterDiagram::from_json(&j).map_err(|e| e.to_string())
    } else {
        CoxeterDiagram::parse(text).map_err(|e| e.to_string())
    }
}

fn factorization(sys: &CoxeterSystem, text: &str) -> Result<Factorization, String> {
    let words: Vec<Vec<usize>> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let words: Vec<Word> = words.into_iter().map(Word).collect();
    Factorization::from_words(sys, &words).map_err(|e| e.to_string())
}

fn words(sys: &CoxeterSystem, f: &[hurwitz_core::Reflection]) -> Result<Vec<Word>, String> {
    f.iter()
        .map(|t| sys.word_of_reflection(t).map_err(|e| e.to_string()))
        .collect()
}

fn render(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

pub fn classes_json(diagram_text: &str) -> Result<Value, String> {
    let d = diagram(diagram_text)?;
    let l = d.odd_components();
    Ok(json!({
        "rank": d.rank(),
        "class_count": l.class_count(),
        "class_of_simple": l.classes(),
        "members": l.members(),
    }))
}

pub fn normalize_json(diagram_text: &str, factors: &str) -> Result<Value, String> {
    let sys = CoxeterSystem::new(diagram(diagram_text)?);
    let f = factorization(&sys, factors)?;
    let nf = normalize(&sys, &f).map_err(|e| e.to_string())?;
    Ok(json!({
        "core": words(&sys, nf.core.factors())?,
        "pairs": words(&sys, &nf.pairs)?,
        "braid": nf.braid,
    }))
}

pub fn connect_json(diagram_text: &str, f: &str, g: &str) -> Result<Value, String> {
    let sys = CoxeterSystem::new(diagram(diagram_text)?);
    let cw = sys
        .diagram()
        .coxeter_word(&(1..=sys.rank()).collect::<Vec<_>>())
        .map_err(|e| e.to_string())?;
    let f = factorization(&sys, f)?;
    let g = factorization(&sys, g)?;
    validate_coxeter_target(&sys, &cw, &f).map_err(|e| format!("f: {e}"))?;
    validate_coxeter_target(&sys, &cw, &g).map_err(|e| format!("g: {e}"))?;
    let d = connect(&sys, &f, &g, &cw).map_err(|e| e.to_string())?;
    serde_json::to_value(d).map_err(|e| e.to_string())
}

/// Conjugacy classes of the simple reflections.
#[wasm_bindgen]
pub fn classes(diagram_text: &str) -> String {
    render(classes_json(diagram_text))
}

/// Core and pairs of the normal form, with the braid word reaching it.
#[wasm_bindgen(js_name = normalize)]
pub fn normalize_factorization(diagram_text: &str, factors: &str) -> String {
    render(normalize_json(diagram_text, factors))
}

/// Equivalence of two factorizations of `s_1 ⋯ s_n`, with a witness when equivalent.
#[wasm_bindgen(js_name = connect)]
pub fn connect_factorizations(diagram_text: &str, f: &str, g: &str) -> String {
    render(connect_json(diagram_text, f, g))
}
