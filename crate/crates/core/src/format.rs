//! JSON documents for matroids, lattices and polynomials.
//!
//! ```text
//! {"ground": ["a", "b"], "cyclic_flats": [{"set": [], "rank": 0}, ...]}
//! {"elements": ["0", "a", "1"], "covers": [["0", "a"], ["a", "1"]]}
//! {"terms": [{"x": 1, "y": 0, "c": 1}, ...]}
//! ```
//!
//! The emitters write one array member per line in canonical order, so
//! parsing and re-emitting a canonical document reproduces it byte for
//! byte.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::matroid::{Matroid, RankedFamily};
use crate::poset::{lattice_from_covers, FiniteLattice};
use crate::subset::{GroundSet, Subset};
use crate::tutte::TuttePolynomial;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatroidDoc {
    ground: Vec<String>,
    cyclic_flats: Vec<FlatDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlatDoc {
    set: Vec<String>,
    rank: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeDoc {
    elements: Vec<String>,
    covers: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyDoc {
    terms: Vec<TermDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    x: usize,
    y: usize,
    c: serde_json::Number,
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn with_context(e: Error, context: String) -> Error {
    match e {
        Error::UnknownLabel { label, .. } => Error::UnknownLabel { label, context },
        Error::DuplicateSet { set, .. } => Error::DuplicateSet { set, context },
        other => other,
    }
}

fn set_of(ground: &GroundSet, labels: &[String], context: String) -> Result<Subset> {
    let mut s = Subset::EMPTY;
    for l in labels {
        let i = ground.index_of(l).ok_or_else(|| Error::UnknownLabel {
            label: l.clone(),
            context: context.clone(),
        })?;
        if s.contains(i) {
            return Err(Error::DuplicateLabel(format!("{l} (in {context})")));
        }
        s = s.with(i);
    }
    Ok(s)
}

/// Reads a ranked family; it is not validated.
pub fn parse_matroid(text: &str) -> Result<RankedFamily> {
    let doc: MatroidDoc = from_json(text)?;
    let ground = GroundSet::new(doc.ground)?;
    let mut entries = Vec::with_capacity(doc.cyclic_flats.len());
    let mut seen = std::collections::BTreeSet::new();
    for (k, f) in doc.cyclic_flats.iter().enumerate() {
        let s = set_of(&ground, &f.set, format!("cyclic_flats[{k}].set"))?;
        if !seen.insert(s) {
            return Err(Error::DuplicateSet {
                set: ground.format(s),
                context: format!("cyclic_flats[{k}]"),
            });
        }
        entries.push((s, f.rank));
    }
    RankedFamily::new(ground, entries).map_err(|e| with_context(e, "cyclic_flats".into()))
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice> {
    let doc: LatticeDoc = from_json(text)?;
    if doc.elements.is_empty() {
        return Err(Error::EmptyLattice);
    }
    lattice_from_covers(&doc.elements, &doc.covers)
}

pub fn parse_polynomial(text: &str) -> Result<TuttePolynomial> {
    let doc: PolyDoc = from_json(text)?;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (k, t) in doc.terms.into_iter().enumerate() {
        let c: BigInt = t.c.to_string().parse().map_err(|_| Error::Parse {
            line: 0,
            column: 0,
            message: format!("terms[{k}].c: `{}` is not an integer", t.c),
        })?;
        terms.push((t.x, t.y, c));
    }
    Ok(TuttePolynomial::from_terms(terms))
}

fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn label_list<'a>(labels: impl IntoIterator<Item = &'a str>) -> String {
    let items: Vec<String> = labels.into_iter().map(quoted).collect();
    format!("[{}]", items.join(", "))
}

fn block(out: &mut String, key: &str, lines: &[String], last: bool) {
    if lines.is_empty() {
        let _ = write!(out, "  {}: []", quoted(key));
    } else {
        let _ = writeln!(out, "  {}: [", quoted(key));
        for (i, l) in lines.iter().enumerate() {
            let sep = if i + 1 < lines.len() { "," } else { "" };
            let _ = writeln!(out, "    {l}{sep}");
        }
        out.push_str("  ]");
    }
    out.push_str(if last { "\n" } else { ",\n" });
}

/// Canonical document: ground labels in index order, cyclic flats in
/// canonical set order, members of each set in index order.
pub fn emit_family(family: &RankedFamily) -> String {
    let ground = family.ground();
    let flats: Vec<String> = family
        .entries()
        .map(|(s, r)| {
            format!(
                "{{\"set\": {}, \"rank\": {r}}}",
                label_list(ground.labels_of(s))
            )
        })
        .collect();
    let mut out = String::from("{\n");
    let _ = writeln!(
        out,
        "  \"ground\": {},",
        label_list(ground.labels().iter().map(String::as_str))
    );
    block(&mut out, "cyclic_flats", &flats, true);
    out.push_str("}\n");
    out
}

pub fn emit_matroid(m: &Matroid) -> String {
    emit_family(&m.to_family())
}

/// Elements in order, covers sorted by the positions of their endpoints.
pub fn emit_lattice(l: &FiniteLattice) -> String {
    let mut covers = l.covers();
    covers.sort();
    let lines: Vec<String> = covers
        .into_iter()
        .map(|(a, b)| format!("[{}, {}]", quoted(l.name(a)), quoted(l.name(b))))
        .collect();
    let mut out = String::from("{\n");
    let _ = writeln!(
        out,
        "  \"elements\": {},",
        label_list(l.names().iter().map(String::as_str))
    );
    block(&mut out, "covers", &lines, true);
    out.push_str("}\n");
    out
}

/// Nonzero terms sorted by `x` then `y` exponent.
pub fn emit_terms(terms: &[(usize, usize, BigInt)]) -> String {
    let mut terms = terms.to_vec();
    terms.sort();
    let lines: Vec<String> = terms
        .iter()
        .filter(|(_, _, c)| *c != BigInt::from(0))
        .map(|(x, y, c)| format!("{{\"x\": {x}, \"y\": {y}, \"c\": {c}}}"))
        .collect();
    let mut out = String::from("{\n");
    block(&mut out, "terms", &lines, true);
    out.push_str("}\n");
    out
}

pub fn emit_polynomial(p: &TuttePolynomial) -> String {
    emit_terms(&p.terms())
}
