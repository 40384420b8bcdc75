//! Line-oriented text format for structures, and DOT export.
//!
//! ```text
//! kind graph
//! model reflexive
//! vertices 3
//! edge 0 1
//! edge 1 2
//! ```
//!
//! Graph edges are listed once with `u < v`. Loops never appear as `edge`
//! lines: the reflexive model implies all of them, the plain model lists them
//! as `loop <v>`, and the irreflexive model has none.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::structure::{Kind, Model, Shape, Structure, MAX_VERTICES};

/// A structure together with the kind it was declared with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedStructure {
    pub kind: Kind,
    pub structure: Structure,
}

impl TypedStructure {
    /// Validates `structure` against `kind`.
    pub fn new(kind: Kind, structure: Structure) -> Result<Self> {
        structure.validate(kind)?;
        Ok(TypedStructure { kind, structure })
    }

    pub fn parse(input: &str) -> Result<Self> {
        parse(input)
    }

    pub fn to_text(&self) -> String {
        write_text(self.kind, &self.structure)
    }

    pub fn to_dot(&self) -> String {
        write_dot(self.kind, &self.structure)
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(line: usize, tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| perr(line, format!("invalid {what} `{tok}`")))
}

/// Parses the text format and validates the result against its declared kind.
pub fn parse(input: &str) -> Result<TypedStructure> {
    let mut shape: Option<Shape> = None;
    let mut model: Option<Model> = None;
    let mut structure: Option<Structure> = None;

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let keyword = toks.next().unwrap();
        match keyword {
            "kind" => {
                if shape.is_some() {
                    return Err(perr(lineno, "duplicate `kind` line"));
                }
                let tok = toks.next().ok_or_else(|| perr(lineno, "missing kind"))?;
                shape = Some(tok.parse().map_err(|e: String| perr(lineno, e))?);
            }
            "model" => {
                if shape.is_none() {
                    return Err(perr(lineno, "`model` must follow `kind`"));
                }
                if model.is_some() {
                    return Err(perr(lineno, "duplicate `model` line"));
                }
                let tok = toks.next().ok_or_else(|| perr(lineno, "missing model"))?;
                model = Some(tok.parse().map_err(|e: String| perr(lineno, e))?);
            }
            "vertices" => {
                if model.is_none() {
                    return Err(perr(lineno, "`vertices` must follow `model`"));
                }
                if structure.is_some() {
                    return Err(perr(lineno, "duplicate `vertices` line"));
                }
                let n = parse_usize(lineno, toks.next(), "vertex count")?;
                if n > MAX_VERTICES {
                    return Err(perr(lineno, format!("at most {MAX_VERTICES} vertices supported")));
                }
                structure = Some(Structure::edgeless(n));
            }
            "edge" | "loop" => {
                let s = structure
                    .as_mut()
                    .ok_or_else(|| perr(lineno, format!("`{keyword}` before `vertices`")))?;
                let n = s.n();
                let check = |v: usize| {
                    if v >= n {
                        Err(perr(lineno, format!("vertex {v} out of range")))
                    } else {
                        Ok(v)
                    }
                };
                if keyword == "loop" {
                    let v = check(parse_usize(lineno, toks.next(), "vertex")?)?;
                    if model != Some(Model::Plain) {
                        return Err(perr(lineno, "`loop` lines are only allowed in the plain model"));
                    }
                    if s.has_loop(v) {
                        return Err(perr(lineno, format!("duplicate loop {v}")));
                    }
                    s.insert(v, v);
                } else {
                    let u = check(parse_usize(lineno, toks.next(), "vertex")?)?;
                    let v = check(parse_usize(lineno, toks.next(), "vertex")?)?;
                    if u == v {
                        return Err(perr(lineno, "loops are not listed as edges"));
                    }
                    if shape == Some(Shape::Graph) && u > v {
                        return Err(perr(lineno, "graph edges are listed with u < v"));
                    }
                    if s.has_edge(u, v) {
                        return Err(perr(lineno, format!("duplicate edge {u} {v}")));
                    }
                    s.insert(u, v);
                    if shape == Some(Shape::Graph) {
                        s.insert(v, u);
                    }
                }
                if toks.next().is_some() {
                    return Err(perr(lineno, "trailing tokens"));
                }
                continue;
            }
            other => return Err(perr(lineno, format!("unknown keyword `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(perr(lineno, "trailing tokens"));
        }
    }

    let shape = shape.ok_or_else(|| perr(0, "missing `kind` line"))?;
    let model = model.ok_or_else(|| perr(0, "missing `model` line"))?;
    let mut structure = structure.ok_or_else(|| perr(0, "missing `vertices` line"))?;
    if model == Model::Reflexive {
        structure = structure.with_all_loops();
    }
    TypedStructure::new(Kind::new(shape, model), structure)
}

/// Serializes `s` under `kind`. The output re-parses to an identical structure
/// whenever `s` validates against `kind`.
pub fn write_text(kind: Kind, s: &Structure) -> String {
    let mut out = String::new();
    writeln!(out, "kind {}", kind.shape).unwrap();
    writeln!(out, "model {}", kind.model).unwrap();
    writeln!(out, "vertices {}", s.n()).unwrap();
    for (u, v) in s.edges() {
        if u == v || (kind.shape == Shape::Graph && u > v) {
            continue;
        }
        writeln!(out, "edge {u} {v}").unwrap();
    }
    if kind.model == Model::Plain {
        for v in (0..s.n()).filter(|&v| s.has_loop(v)) {
            writeln!(out, "loop {v}").unwrap();
        }
    }
    out
}

/// DOT rendering. Graph edges are drawn once; loops are drawn only in the
/// plain model.
pub fn write_dot(kind: Kind, s: &Structure) -> String {
    let (header, arrow) = match kind.shape {
        Shape::Graph => ("graph", "--"),
        Shape::Digraph | Shape::Tournament => ("digraph", "->"),
    };
    let note = match kind.model {
        Model::Reflexive => "reflexive (every vertex has a loop; loops not drawn)",
        Model::Irreflexive => "irreflexive (no loops)",
        Model::Plain => "plain (loops drawn explicitly)",
    };
    let mut out = String::new();
    writeln!(out, "// {} {}", kind.shape, note).unwrap();
    writeln!(out, "{header} G {{").unwrap();
    for v in 0..s.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for (u, v) in s.edges() {
        if u == v && kind.model != Model::Plain {
            continue;
        }
        if kind.shape == Shape::Graph && u > v {
            continue;
        }
        writeln!(out, "  {u} {arrow} {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
