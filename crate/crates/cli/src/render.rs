//! Text and JSON renderings of each command's result.

use std::fmt;

use clap::ValueEnum;
use diffgalois::elements::HyperElement;
use diffgalois::groebner::PolyIdeal;
use diffgalois::lattice::ExponentLattice;
use diffgalois::pipeline::{describe_component, GaloisOutput, GroupCheck, Stabilizer, TheoreticalBound};
use diffgalois::relations::RelationsIdeal;
use diffgalois::structure::PrimeComponent;
use diffgalois::Field;
use serde_json::{json, Value};

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// What a command prints on success.
pub struct Report(String);

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn emit(format: Format, text: Vec<String>, value: Value) -> Report {
    match format {
        Format::Text => Report(text.into_iter().map(|l| l + "\n").collect()),
        Format::Json => Report(serde_json::to_string_pretty(&value).expect("values serialize") + "\n"),
    }
}

fn gens<C: Field>(ideal: &PolyIdeal<C>) -> Value {
    json!(ideal.canonical_lines())
}

fn components_json<C: Field>(comps: &[PrimeComponent<C>]) -> Value {
    comps.iter().map(|c| json!({ "ideal": gens(&c.ideal), "class": c.class.to_string() })).collect()
}

fn elements_json(els: &[HyperElement]) -> Value {
    els.iter().map(|e| json!({ "p": e.p.to_string(), "certificate": e.b.to_string() })).collect()
}

fn lattice_json(lat: &ExponentLattice) -> Value {
    json!({
        "step": lat.step,
        "basis": lat.basis,
        "witnesses": lat.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    })
}

fn check_json(check: &GroupCheck) -> Value {
    json!({ "points": check.points, "passed": check.passed(), "failures": check.failures })
}

fn stab_json(stab: &Stabilizer) -> Value {
    json!({
        "ideal": gens(&stab.ideal),
        "components": stab.components.iter().map(|c| json!({
            "ideal": gens(&c.ideal),
            "description": describe_component(&c.ideal, stab.n),
        })).collect::<Vec<_>>(),
    })
}

fn stab_lines(stab: &Stabilizer) -> Vec<String> {
    let mut lines = vec![format!("stabilizer: {}", stab.ideal)];
    for (k, c) in stab.components.iter().enumerate() {
        lines.push(format!("component {}: {}", k + 1, describe_component(&c.ideal, stab.n)));
        lines.push(format!("    {}", c.ideal));
    }
    lines
}

pub fn compute(out: &GaloisOutput, format: Format) -> Report {
    let mut text = Vec::new();
    for rec in &out.transcript {
        text.push(format!("[{}] {}", rec.step, rec.title));
        text.extend(rec.lines.iter().map(|l| format!("    {l}")));
    }
    text.push(String::new());
    text.extend(stab_lines(&out.stabilizer));
    text.push(format!("note: {}", out.caveat));
    let value = json!({
        "relations": gens(&out.relations),
        "coeff_degree": out.coeff_degree,
        "components": components_json(&out.components),
        "irr": gens(&out.irr),
        "delta": out.delta,
        "elements": elements_json(&out.elements),
        "lattice": lattice_json(&out.lattice),
        "torsor": gens(&out.torsor),
        "radical": gens(&out.radical),
        "maximal_sigma_ideal": gens(&out.maximal_sigma_ideal),
        "stabilizer": stab_json(&out.stabilizer),
        "group_check": check_json(&out.group_check),
        "caveat": out.caveat,
    });
    emit(format, text, value)
}

pub fn relations(rel: &RelationsIdeal, ell: u32, format: Format) -> Report {
    let text = vec![
        format!("{}", rel.ideal),
        format!("coefficient degree {ell}, operator order {}, kappa {}", rel.operator.order(), rel.kappa),
    ];
    let value = json!({
        "ideal": gens(&rel.ideal),
        "coeff_degree": ell,
        "operator_order": rel.operator.order(),
        "rho": rel.rho,
        "kappa": rel.kappa,
    });
    emit(format, text, value)
}

pub fn decompose<C: Field>(comps: &[PrimeComponent<C>], delta: usize, format: Format) -> Report {
    let mut text: Vec<String> = comps.iter().map(|c| format!("{} [{}]", c.ideal, c.class)).collect();
    if let Some(first) = comps.first() {
        text.push(format!("I_irr = {}", first.ideal));
    }
    text.push(format!("delta = {delta}"));
    let value = json!({ "components": components_json(comps), "delta": delta });
    emit(format, text, value)
}

pub fn hyper(els: &[HyperElement], delta: usize, format: Format) -> Report {
    let mut text: Vec<String> = els.iter().map(|e| e.to_string()).collect();
    text.push(format!("delta = {delta}"));
    emit(format, text, json!({ "delta": delta, "elements": elements_json(els) }))
}

pub fn lattice(lat: &ExponentLattice, format: Format) -> Report {
    emit(format, vec![lat.to_string()], lattice_json(lat))
}

pub fn stab(stab: &Stabilizer, check: Option<&GroupCheck>, format: Format) -> Report {
    let mut text = stab_lines(stab);
    let mut value = stab_json(stab);
    if let Some(c) = check {
        text.push(format!(
            "group axioms at {} sampled points: {}",
            c.points,
            if c.passed() { "ok" } else { "FAILED" }
        ));
        text.extend(c.failures.iter().cloned());
        value["group_check"] = check_json(c);
    }
    emit(format, text, value)
}

pub fn bound(b: &TheoreticalBound, expand: bool, format: Format) -> Report {
    let exponent = b.i_n.to_string().parse::<u64>().map(|e| e - 1).map_or_else(|_| "(I(n) - 1)".into(), |e| e.to_string());
    let d_tilde = match &b.d_tilde {
        Some(d) => d.to_string(),
        None => format!("kappa3^{exponent}"),
    };
    let mut text = vec![
        format!("n = {}", b.n),
        format!("kappa1 = {}", b.kappa1),
        format!("kappa2 = {}", b.kappa2),
        format!("kappa3 = {}", b.kappa3),
        format!("jordan argument = {}", b.jordan_arg),
        format!("I(n) = {}", b.i_n),
    ];
    match b.d_tilde_bits() {
        Some(bits) => text.push(format!("d~ ({bits} bits) = {d_tilde}")),
        None => text.push(format!("d~ = {d_tilde}")),
    }
    if expand && b.d_tilde.is_none() {
        text.push("d~ is too large to expand".into());
    }
    let value = json!({
        "n": b.n,
        "kappa1": b.kappa1.to_string(),
        "kappa2": b.kappa2.to_string(),
        "kappa3": b.kappa3.to_string(),
        "jordan_argument": b.jordan_arg.to_string(),
        "i_n": b.i_n.to_string(),
        "d_tilde": d_tilde,
        "d_tilde_bits": b.d_tilde_bits(),
    });
    emit(format, text, value)
}
