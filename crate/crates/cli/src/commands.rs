use hurwitz_core::hurwitz::{orbit_bfs, orbit_bfs_parallel, replay, Orbit};
use hurwitz_core::{
    connect, decide, normalize, validate_coxeter_target, CoxeterSystem, Decision, Factorization,
    Reflection, Word,
};
use serde_json::{json, Value};

use crate::input::{coxeter_word, load_braid, load_diagram, load_factorization, CliError};

/// JSON document for standard output and the exit status.
pub struct Output {
    pub json: Value,
    pub exit: i32,
}

impl Output {
    fn ok(json: Value) -> Self {
        Output { json, exit: 0 }
    }
}

fn core_err(e: hurwitz_core::Error) -> CliError {
    CliError::from_core(e, Value::Null)
}

fn system(diagram: &str) -> Result<CoxeterSystem, CliError> {
    Ok(CoxeterSystem::new(load_diagram(diagram)?))
}

fn words(sys: &CoxeterSystem, factors: &[Reflection]) -> Result<Vec<Word>, CliError> {
    factors
        .iter()
        .map(|t| sys.word_of_reflection(t))
        .collect::<Result<_, _>>()
        .map_err(core_err)
}

pub fn classes(diagram: &str) -> Result<Output, CliError> {
    let d = load_diagram(diagram)?;
    let labeling = d.odd_components();
    let representatives: Vec<usize> = (1..=labeling.class_count())
        .map(|c| labeling.representative(c).expect("nonempty class"))
        .collect();
    Ok(Output::ok(json!({
        "rank": d.rank(),
        "class_count": labeling.class_count(),
        "class_of_simple": labeling.classes(),
        "representatives": representatives,
        "members": labeling.members(),
    })))
}

struct Pair {
    sys: CoxeterSystem,
    f: Factorization,
    g: Factorization,
    cw: hurwitz_core::CoxeterWord,
}

fn load_pair(diagram: &str, coxeter: Option<&str>, f: &str, g: &str) -> Result<Pair, CliError> {
    let sys = system(diagram)?;
    let cw = coxeter_word(sys.diagram(), coxeter)?;
    let ff = load_factorization(&sys, f)?;
    let gg = load_factorization(&sys, g)?;
    validate_coxeter_target(&sys, &cw, &ff)
        .map_err(|e| CliError::from_core(e, json!({ "file": f })))?;
    validate_coxeter_target(&sys, &cw, &gg)
        .map_err(|e| CliError::from_core(e, json!({ "file": g })))?;
    Ok(Pair {
        sys,
        f: ff,
        g: gg,
        cw,
    })
}

fn decision_output(d: &Decision) -> Output {
    Output {
        json: serde_json::to_value(d).expect("decision serializes"),
        exit: if d.equivalent { 0 } else { 1 },
    }
}

pub fn decide_cmd(
    diagram: &str,
    coxeter: Option<&str>,
    f: &str,
    g: &str,
) -> Result<Output, CliError> {
    let p = load_pair(diagram, coxeter, f, g)?;
    let d = decide(&p.sys, &p.f, &p.g).map_err(core_err)?;
    Ok(decision_output(&d))
}

pub fn connect_cmd(
    diagram: &str,
    coxeter: Option<&str>,
    f: &str,
    g: &str,
) -> Result<Output, CliError> {
    let p = load_pair(diagram, coxeter, f, g)?;
    let d = connect(&p.sys, &p.f, &p.g, &p.cw).map_err(core_err)?;
    if let Some(w) = &d.witness {
        let replayed = replay(&p.sys, &p.f, w).map_err(core_err)?;
        if replayed.factors() != p.g.factors() {
            return Err(CliError::internal("witness failed re-verification"));
        }
    }
    Ok(decision_output(&d))
}

pub fn normalize_cmd(diagram: &str, f: &str) -> Result<Output, CliError> {
    let sys = system(diagram)?;
    let f = load_factorization(&sys, f)?;
    let nf = normalize(&sys, &f).map_err(core_err)?;
    Ok(Output::ok(json!({
        "core": words(&sys, nf.core.factors())?,
        "pairs": words(&sys, &nf.pairs)?,
        "braid": nf.braid,
    })))
}

pub fn orbit_cmd(
    diagram: &str,
    f: &str,
    cap: usize,
    dump: bool,
    threads: usize,
) -> Result<Output, CliError> {
    let sys = system(diagram)?;
    let f = load_factorization(&sys, f)?;
    let orbit = explore(&sys, &f, cap, threads)?;
    let mut out = json!({ "size": orbit.len(), "truncated": orbit.truncated });
    if dump {
        let states = orbit
            .states
            .iter()
            .map(|s| words(&sys, s))
            .collect::<Result<Vec<_>, _>>()?;
        out["states"] = json!(states);
    }
    Ok(Output::ok(out))
}

fn explore(
    sys: &CoxeterSystem,
    f: &Factorization,
    cap: usize,
    threads: usize,
) -> Result<Orbit, CliError> {
    if threads > 1 {
        orbit_bfs_parallel(sys, f, cap, threads).map_err(core_err)
    } else {
        orbit_bfs(sys, f, cap).map_err(core_err)
    }
}

pub fn verify_cmd(diagram: &str, f: &str, braid: &str, expect: &str) -> Result<Output, CliError> {
    let sys = system(diagram)?;
    let ff = load_factorization(&sys, f)?;
    let b = load_braid(braid)?;
    let expected = load_factorization(&sys, expect)?;
    let result =
        replay(&sys, &ff, &b).map_err(|e| CliError::from_core(e, json!({ "file": braid })))?;
    let matches = result.factors() == expected.factors();
    Ok(Output {
        json: json!({
            "match": matches,
            "result": words(&sys, result.factors())?,
        }),
        exit: if matches { 0 } else { 1 },
    })
}
