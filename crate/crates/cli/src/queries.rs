//! Subcommand execution: loads and validates inputs, drives the engine,
//! and assembles an [`Outcome`] per query.

use std::fs;
use std::path::Path;

use serde_json::Value;

use tgx_core::factor::rational::DEFAULT_DEGREE_CAP;
use tgx_core::factor::tower::factor_over_tower;
use tgx_core::galois::{
    automorphism_group, classify, galois_over_subfield, is_quasi_galois_wrt,
    unique_conjugation_check, Containment, SearchBounds, Verdict,
};
use tgx_core::parse::{
    parse_basis_spec, parse_poly, parse_subfield_source, parse_tower_source, InputError,
};
use tgx_core::tower::basis::{default_nice_basis, NiceBasis};
use tgx_core::tower::subfield::{linear_disjointness, LinearDisjointness, SubfieldSpec};
use tgx_core::tower::FieldTower;
use tgx_core::QueryError;

use crate::report::Outcome;
use crate::Common;

/// A failed run, classified for the exit-code contract: `Parse` is a
/// syntax-level input problem (exit 1), `Math` is a mathematically invalid
/// input or an engine-reported impossibility (exit 2).
pub enum Failure {
    Parse(String),
    Math(String),
}

fn input_failure(e: InputError) -> Failure {
    match e {
        InputError::Parse(p) => Failure::Parse(p.to_string()),
        InputError::Build(b) => Failure::Math(b.to_string()),
        InputError::Query(q) => Failure::Math(q.to_string()),
    }
}

fn engine_failure(e: QueryError) -> Failure {
    Failure::Math(e.to_string())
}

/// Tower file plus its raw source (the source feeds the input digest).
pub fn load_tower(path: &Path) -> Result<(FieldTower, String), Failure> {
    let src = fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read `{}`: {e}", path.display())))?;
    let tower = parse_tower_source(&src).map_err(input_failure)?;
    Ok((tower, src))
}

pub fn load_subfield(
    path: &Path,
    ambient: &FieldTower,
) -> Result<(SubfieldSpec, String), Failure> {
    let src = fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read `{}`: {e}", path.display())))?;
    let sub = parse_subfield_source(&src, ambient).map_err(input_failure)?;
    Ok((sub, src))
}

pub fn resolve_basis(tower: &FieldTower, spec: &str) -> Result<NiceBasis, Failure> {
    if spec == "default" {
        Ok(default_nice_basis(tower))
    } else {
        parse_basis_spec(spec, tower).map_err(|e| Failure::Parse(e.to_string()))
    }
}

pub fn bounds_from(c: &Common) -> SearchBounds {
    SearchBounds {
        basis_bound: c.basis_bound,
        subfield_degree_bound: c.subfield_degree_bound,
        coeff_bound: c.coeff_bound,
        ..SearchBounds::default()
    }
}

/// Full hierarchy classification; with a presented subfield the query
/// narrows to the Galois property over that subfield.
pub fn classify_cmd(
    tower: &FieldTower,
    common: &Common,
    subfield: Option<&SubfieldSpec>,
) -> Result<Outcome, Failure> {
    let mut out = Outcome::new();
    if let Some(sub) = subfield {
        let v = galois_over_subfield(tower, sub).map_err(engine_failure)?;
        out.line(format!("subfield: {}", sub.render()));
        out.witness("subfield", Value::String(sub.render()));
        out.verdict("galois", &v);
        return Ok(out);
    }
    let bounds = bounds_from(common);
    let mut cls = classify(tower, &bounds).map_err(engine_failure)?;
    if common.basis != "default" {
        let basis = resolve_basis(tower, &common.basis)?;
        cls.quasi_galois = is_quasi_galois_wrt(tower, &basis).map_err(engine_failure)?;
        cls.quasi_basis_label = basis.label.clone();
    }
    for (name, v) in cls.entries() {
        out.verdict(name, v);
        if name == "quasi_galois" {
            out.line(format!("quasi_basis: {}", cls.quasi_basis_label));
            out.witness(
                "quasi_basis",
                Value::String(cls.quasi_basis_label.clone()),
            );
        }
    }
    Ok(out)
}

/// Exact factorization over the tower, with the reconstruction re-checked
/// before the result is certified.
pub fn factor_cmd(tower: &FieldTower, expr: &str) -> Result<Outcome, Failure> {
    let poly = parse_poly(expr, tower).map_err(|e| Failure::Parse(e.to_string()))?;
    let fac = factor_over_tower(&poly, tower, DEFAULT_DEGREE_CAP)
        .map_err(|e| Failure::Math(e.to_string()))?;
    if !fac.verify(&poly) {
        return Err(Failure::Math(
            "factorization failed verification against the input".to_string(),
        ));
    }
    let mut out = Outcome::new();
    out.line(format!("unit: {}", fac.unit));
    let mut factor_values = Vec::new();
    for (i, (f, m)) in fac.factors.iter().enumerate() {
        out.line(format!(
            "factor {i}: {} (multiplicity {m}, irreducible)",
            f.render("X")
        ));
        let mut obj = serde_json::Map::new();
        obj.insert("poly".to_string(), Value::String(f.render("X")));
        obj.insert("multiplicity".to_string(), Value::from(*m));
        obj.insert("irreducible".to_string(), Value::Bool(true));
        factor_values.push(Value::Object(obj));
    }
    out.witness("unit", Value::String(fac.unit.to_string()));
    out.witness("factors", Value::Array(factor_values));
    out.verdict(
        "factorization",
        &Verdict::Certified(
            "product of irreducible factors reproduces the input".to_string(),
        ),
    );
    Ok(out)
}

/// Automorphism group over the transcendence part of the basis, rendered
/// as generator-image rows plus the verified composition table.
pub fn aut_cmd(tower: &FieldTower, basis: &NiceBasis) -> Result<Outcome, Failure> {
    let sub = SubfieldSpec::from_transcendentals(tower, &basis.delta_prime)
        .map_err(engine_failure)?;
    let group = automorphism_group(tower, &sub).map_err(engine_failure)?;
    let mut out = Outcome::new();
    out.line(format!("basis: {}", basis.label));
    out.line(format!("order: {}", group.order()));
    out.line(format!("latin_square: {}", group.is_latin_square()));
    let mut renders = Vec::new();
    for (i, e) in group.elements.iter().enumerate() {
        let r = e.render();
        out.line(format!("aut {i}: {r}"));
        renders.push(Value::String(r));
    }
    out.line("table:");
    let mut table_rows = Vec::new();
    for row in &group.table {
        let cells: Vec<String> = row.iter().map(|k| k.to_string()).collect();
        out.line(cells.join(" "));
        table_rows.push(Value::Array(
            row.iter().map(|k| Value::from(*k as u64)).collect(),
        ));
    }
    out.witness("aut_basis", Value::String(basis.label.clone()));
    out.witness("order", Value::from(group.order() as u64));
    out.witness("latin_square", Value::Bool(group.is_latin_square()));
    out.witness("automorphisms", Value::Array(renders));
    out.witness("table", Value::Array(table_rows));
    out.verdict(
        "aut",
        &Verdict::Certified("group axioms verified on the composition table".to_string()),
    );
    Ok(out)
}

/// Conjugate census over the transcendence part of the basis, with a
/// containment verdict per conjugate.
pub fn conjugations_cmd(tower: &FieldTower, basis: &NiceBasis) -> Result<Outcome, Failure> {
    let rep = unique_conjugation_check(tower, basis).map_err(engine_failure)?;
    let mut out = Outcome::new();
    out.line(format!("basis: {}", rep.basis_label));
    out.line(format!("degree: {}", rep.degree));
    out.line(format!("splitting_degree: {}", rep.splitting.degree()));
    let mut rows = Vec::new();
    let mut first_witness: Option<String> = None;
    for (i, c) in rep.conjugations.iter().enumerate() {
        let desc = match &c.containment {
            Containment::ContainedInL(e) => format!("contained ({})", e.render()),
            Containment::NotContained { witness } => {
                if first_witness.is_none() {
                    first_witness = Some(witness.clone());
                }
                format!("not contained ({witness})")
            }
            Containment::Unknown => "unknown".to_string(),
        };
        out.line(format!("conjugation {i}: {desc}"));
        rows.push(Value::String(desc));
    }
    out.witness("conjugation_basis", Value::String(rep.basis_label.clone()));
    out.witness("degree", Value::from(rep.degree as u64));
    out.witness(
        "splitting_degree",
        Value::from(rep.splitting.degree() as u64),
    );
    out.witness("conjugations", Value::Array(rows));
    let verdict = if rep.unique {
        Verdict::Certified("every conjugate is contained in the tower".to_string())
    } else {
        Verdict::Refuted(
            first_witness.unwrap_or_else(|| "a conjugate escapes the tower".to_string()),
        )
    };
    out.verdict("unique_conjugation", &verdict);
    Ok(out)
}

/// Linear disjointness of K(Delta') and K(A) for the given basis.
pub fn disjoint_cmd(tower: &FieldTower, basis: &NiceBasis) -> Result<Outcome, Failure> {
    let ld = linear_disjointness(tower, basis, SearchBounds::default().ld_degree_bound)
        .map_err(engine_failure)?;
    let mut out = Outcome::new();
    out.line(format!("basis: {}", basis.label));
    let verdict = match ld {
        LinearDisjointness::True { rule } => Verdict::Certified(rule),
        LinearDisjointness::False { witness } => Verdict::Refuted(witness),
        LinearDisjointness::Unknown => Verdict::Unknown,
    };
    out.verdict("linearly_disjoint", &verdict);
    Ok(out)
}

/// Combined report: classification, automorphisms, conjugations, and
/// disjointness for one tower and basis.
pub fn report_cmd(
    tower: &FieldTower,
    common: &Common,
    basis: &NiceBasis,
) -> Result<Outcome, Failure> {
    let mut out = Outcome::new();
    out.line("[classify]");
    out.merge(classify_cmd(tower, common, None)?);
    out.line("[aut]");
    out.merge(aut_cmd(tower, basis)?);
    out.line("[conjugations]");
    out.merge(conjugations_cmd(tower, basis)?);
    out.line("[disjoint]");
    out.merge(disjoint_cmd(tower, basis)?);
    Ok(out)
}
