//! Text formats: the context file grammar, concept listings and implications.
//!
//! Context files look like
//!
//! ```text
//! NCTX 1 3
//! sizes 3 3 3
//! labels 1 α β γ
//! mode crosses
//! 1 1 1
//! 1 2 1
//! ```
//!
//! Indices are 1-based. `labels` lines are optional (missing dimensions get
//! `1..=size`). In `holes` mode the tuples listed are the absent ones. A `#`
//! at the start of a line or after whitespace starts a comment.

use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::context::{numeric_labels, ConceptSet, NConcept, NContext};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

fn strip_comment(line: &str) -> &str {
    let mut prev_ws = true;
    for (i, ch) in line.char_indices() {
        if ch == '#' && prev_ws {
            return &line[..i];
        }
        prev_ws = ch.is_whitespace();
    }
    line
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BodyMode {
    Crosses,
    Holes,
}

/// Parses the context file grammar.
pub fn parse_context(text: &str) -> Result<NContext> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let arity = match head.as_slice() {
        ["NCTX", version, n] => {
            let v: u32 = version
                .parse()
                .map_err(|_| perr(ln, format!("bad format version {version:?}")))?;
            if v != FORMAT_VERSION {
                return Err(perr(ln, format!("unsupported format version {v}")));
            }
            let n: usize = n.parse().map_err(|_| perr(ln, format!("bad arity {n:?}")))?;
            if n == 0 {
                return Err(perr(ln, "arity must be positive"));
            }
            n
        }
        _ => return Err(perr(ln, "expected `NCTX <version> <arity>`")),
    };

    let (ln, sizes_line) = lines.next().ok_or_else(|| perr(ln, "missing `sizes` line"))?;
    let mut toks = sizes_line.split_whitespace();
    if toks.next() != Some("sizes") {
        return Err(perr(ln, "expected `sizes j1 .. jn`"));
    }
    let sizes: Vec<usize> = toks
        .map(|t| t.parse().map_err(|_| perr(ln, format!("bad size {t:?}"))))
        .collect::<Result<_>>()?;
    if sizes.len() != arity {
        return Err(perr(ln, format!("{} sizes for arity {arity}", sizes.len())));
    }

    let mut labels: Vec<Option<Vec<String>>> = vec![None; arity];
    let mut mode = None;
    let mut last = ln;
    for (ln, line) in lines.by_ref() {
        last = ln;
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("labels") => {
                let dim: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .filter(|&d| d >= 1 && d <= arity)
                    .ok_or_else(|| perr(ln, "expected `labels <dim> l1 ..` with 1 <= dim <= arity"))?;
                let ls: Vec<String> = toks.map(str::to_string).collect();
                if ls.len() != sizes[dim - 1] {
                    return Err(perr(
                        ln,
                        format!("{} labels for dimension {dim} of size {}", ls.len(), sizes[dim - 1]),
                    ));
                }
                if labels[dim - 1].replace(ls).is_some() {
                    return Err(perr(ln, format!("labels for dimension {dim} given twice")));
                }
            }
            Some("mode") => {
                mode = Some(match (toks.next(), toks.next()) {
                    (Some("crosses"), None) => BodyMode::Crosses,
                    (Some("holes"), None) => BodyMode::Holes,
                    _ => return Err(perr(ln, "expected `mode crosses` or `mode holes`")),
                });
                break;
            }
            _ => return Err(perr(ln, "expected a `labels` or `mode` line")),
        }
    }
    let mode = mode.ok_or_else(|| perr(last, "missing `mode` line"))?;
    let labels: Vec<Vec<String>> = labels
        .into_iter()
        .zip(&sizes)
        .map(|(l, &s)| l.unwrap_or_else(|| numeric_labels(s)))
        .collect();

    let mut ctx = NContext::empty(labels)?;
    let mut listed = ElementSet::empty(ctx.cell_count());
    for (ln, line) in lines {
        let t: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| perr(ln, format!("bad index {tok:?}")))
            })
            .collect::<Result<_>>()?;
        if t.len() != arity {
            return Err(perr(ln, format!("tuple of length {} for arity {arity}", t.len())));
        }
        let mut zero = Vec::with_capacity(arity);
        for (d, &i) in t.iter().enumerate() {
            if i == 0 || i > sizes[d] {
                return Err(Error::Validation(format!(
                    "line {ln}: index {i} out of range 1..={} for dimension {}",
                    sizes[d],
                    d + 1
                )));
            }
            zero.push(i - 1);
        }
        listed.insert(ctx.cell_index(&zero));
    }
    let cells = match mode {
        BodyMode::Crosses => listed,
        BodyMode::Holes => listed.complement(),
    };
    ctx = NContext::from_cells(ctx.all_labels().to_vec(), cells);
    Ok(ctx)
}

/// Canonical serialization: every dimension labelled, the shorter of the two
/// body modes (crosses on ties), tuples in cell order.
pub fn serialize_context(ctx: &NContext) -> String {
    let mut out = format!("NCTX {FORMAT_VERSION} {}\n", ctx.arity());
    let sizes: Vec<String> = ctx.sizes().iter().map(usize::to_string).collect();
    out.push_str(&format!("sizes {}\n", sizes.join(" ")));
    for d in 0..ctx.arity() {
        if ctx.size(d) > 0 {
            out.push_str(&format!("labels {} {}\n", d + 1, ctx.labels(d).join(" ")));
        }
    }
    let crosses = ctx.relation_size();
    let holes = ctx.cell_count() - crosses;
    let (mode, body) = if holes < crosses {
        ("holes", ctx.cells().complement())
    } else {
        ("crosses", ctx.cells().clone())
    };
    out.push_str(&format!("mode {mode}\n"));
    for idx in body.iter() {
        let t: Vec<String> = ctx
            .cell_tuple(idx)
            .iter()
            .map(|i| (i + 1).to_string())
            .collect();
        out.push_str(&t.join(" "));
        out.push('\n');
    }
    out
}

/// `{l1,l2}` or `∅`.
pub fn format_subset(labels: &[String], set: &ElementSet) -> String {
    if set.is_empty() {
        return "∅".to_string();
    }
    let ls: Vec<&str> = set.iter().map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", ls.join(","))
}

pub fn format_concept(ctx: &NContext, c: &NConcept) -> String {
    let parts: Vec<String> = c
        .components
        .iter()
        .enumerate()
        .map(|(d, s)| format_subset(ctx.labels(d), s))
        .collect();
    format!("({})", parts.join(", "))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConceptFormat {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for ConceptFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ConceptFormat::Text),
            "json" => Ok(ConceptFormat::Json),
            "csv" => Ok(ConceptFormat::Csv),
            other => Err(Error::invalid(format!("unknown concept format {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
struct JsonConcept {
    components: Vec<Vec<String>>,
}

fn labelled(ctx: &NContext, c: &NConcept) -> Vec<Vec<String>> {
    c.components
        .iter()
        .enumerate()
        .map(|(d, s)| s.iter().map(|i| ctx.labels(d)[i].clone()).collect())
        .collect()
}

/// Concepts in canonical order, with labels.
pub fn serialize_concepts(ctx: &NContext, cs: &ConceptSet, format: ConceptFormat) -> Result<String> {
    match format {
        ConceptFormat::Text => Ok(cs
            .iter()
            .map(|c| format_concept(ctx, c) + "\n")
            .collect()),
        ConceptFormat::Json => {
            // one concept per line
            let lines = cs
                .iter()
                .map(|c| {
                    serde_json::to_string(&JsonConcept {
                        components: labelled(ctx, c),
                    })
                    .map_err(|e| Error::invalid(e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            if lines.is_empty() {
                return Ok("[]\n".to_string());
            }
            Ok(format!("[\n  {}\n]\n", lines.join(",\n  ")))
        }
        ConceptFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header: Vec<String> = (1..=ctx.arity()).map(|d| format!("dim{d}")).collect();
            w.write_record(&header)
                .map_err(|e| Error::invalid(e.to_string()))?;
            for c in cs {
                let row: Vec<String> = labelled(ctx, c).iter().map(|ls| ls.join(" ")).collect();
                w.write_record(&row).map_err(|e| Error::invalid(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::invalid(e.to_string()))
        }
    }
}

/// Reads back the JSON listing against the context it was produced from.
pub fn parse_concepts_json(ctx: &NContext, text: &str) -> Result<ConceptSet> {
    let items: Vec<JsonConcept> =
        serde_json::from_str(text).map_err(|e| perr(e.line(), e.to_string()))?;
    let concepts = items
        .into_iter()
        .map(|item| {
            if item.components.len() != ctx.arity() {
                return Err(Error::Validation(format!(
                    "concept with {} components for arity {}",
                    item.components.len(),
                    ctx.arity()
                )));
            }
            let comps = item
                .components
                .iter()
                .enumerate()
                .map(|(d, ls)| label_set(ctx.labels(d), ls.iter().map(String::as_str)))
                .collect::<Result<Vec<_>>>()?;
            Ok(NConcept::new(comps))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConceptSet::new(ctx.arity(), concepts))
}

/// Indices of `wanted` among `labels`.
pub fn label_set<'a>(labels: &[String], wanted: impl IntoIterator<Item = &'a str>) -> Result<ElementSet> {
    let mut set = ElementSet::empty(labels.len());
    for w in wanted {
        let i = labels
            .iter()
            .position(|l| l == w)
            .ok_or_else(|| Error::invalid(format!("unknown label {w:?}")))?;
        set.insert(i);
    }
    Ok(set)
}

/// Splits on commas outside parentheses.
fn split_items(side: &str) -> Vec<String> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in side.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            items.push(std::mem::take(&mut cur));
        } else if !ch.is_whitespace() {
            cur.push(ch);
        }
    }
    items.push(cur);
    items.into_iter().filter(|s| !s.is_empty()).collect()
}

/// Parses one side of an implication: `(1,a),(1,b)`, `{3}`, `∅` or nothing.
pub fn parse_attribute_set(labels: &[String], side: &str) -> Result<ElementSet> {
    let mut s = side.trim();
    if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        s = inner;
    }
    if s.trim() == "∅" {
        return Ok(ElementSet::empty(labels.len()));
    }
    let items = split_items(s);
    label_set(labels, items.iter().map(String::as_str))
}

/// Parses `premise -> conclusion` against attribute labels.
pub fn parse_implication(labels: &[String], text: &str) -> Result<(ElementSet, ElementSet)> {
    let parts: Vec<&str> = text.split("->").collect();
    if parts.len() != 2 {
        return Err(Error::invalid(format!(
            "implication {text:?} must contain exactly one `->`"
        )));
    }
    Ok((
        parse_attribute_set(labels, parts[0])?,
        parse_attribute_set(labels, parts[1])?,
    ))
}

pub fn format_implication(labels: &[String], premise: &ElementSet, conclusion: &ElementSet) -> String {
    format!(
        "{} -> {}",
        format_subset(labels, premise),
        format_subset(labels, conclusion)
    )
}
