//! Line-oriented ring files:
//!
//! ```text
//! # comment
//! field QQ            (or: field GF 32003)
//! vars X Y Z W
//! weights 1 1 1 1     (optional, arity = vars)
//! relations
//! X^2*Z
//! ...
//! end
//! ```

use singbound_core::groebner::Caps;
use singbound_core::poly::{parse_polynomial, PolyRing, Polynomial};
use singbound_core::ring::{Ring, RingPresentation};
use singbound_core::FieldSpec;

/// A failure while reading a ring file: either a syntax problem with its
/// source line (1-based), or an error raised while constructing the
/// presentation (for instance a resource cap during the relation basis).
#[derive(Debug)]
pub enum RingFileError {
    Syntax { line: usize, msg: String },
    Construction(singbound_core::Error),
}

impl RingFileError {
    fn syntax(line: usize, msg: impl Into<String>) -> Self {
        RingFileError::Syntax {
            line,
            msg: msg.into(),
        }
    }

    #[cfg(test)]
    pub fn line(&self) -> Option<usize> {
        match self {
            RingFileError::Syntax { line, .. } => Some(*line),
            RingFileError::Construction(_) => None,
        }
    }
}

impl std::fmt::Display for RingFileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RingFileError::Syntax { line, msg } => write!(f, "line {line}: {msg}"),
            RingFileError::Construction(e) => write!(f, "{e}"),
        }
    }
}

/// The parsed presentation together with its source text.
#[derive(Debug)]
pub struct RingFile {
    pub ring: Ring,
    #[allow(dead_code)]
    pub source: String,
}

impl RingFile {
    /// Renders an equivalent ring file from the parsed presentation.
    #[allow(dead_code)]
    pub fn render(&self) -> String {
        render_presentation(&self.ring)
    }
}

#[allow(dead_code)]
pub fn render_presentation(ring: &Ring) -> String {
    let mut out = String::new();
    match ring.ambient.field {
        FieldSpec::Rational => out.push_str("field QQ\n"),
        FieldSpec::Prime(p) => out.push_str(&format!("field GF {p}\n")),
    }
    out.push_str(&format!("vars {}\n", ring.ambient.vars.join(" ")));
    let weights: Vec<String> = ring.ambient.weights.iter().map(|w| w.to_string()).collect();
    out.push_str(&format!("weights {}\n", weights.join(" ")));
    out.push_str("relations\n");
    for r in &ring.relations {
        out.push_str(&r.render(&ring.ambient));
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

pub fn parse_ring_file(source: &str, caps: Caps) -> Result<RingFile, RingFileError> {
    let mut field: Option<FieldSpec> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut weights: Option<Vec<u64>> = None;
    let mut relation_lines: Vec<(usize, String)> = Vec::new();
    let mut in_relations = false;
    let mut relations_closed = false;

    for (idx, raw) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if in_relations {
            if line == "end" {
                in_relations = false;
                relations_closed = true;
            } else {
                relation_lines.push((lineno, line.to_string()));
            }
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap();
        match head {
            "field" => {
                let kind = tokens.next().ok_or_else(|| {
                    RingFileError::syntax(lineno, "expected `QQ` or `GF <prime>` after `field`")
                })?;
                let spec = match kind {
                    "QQ" => FieldSpec::Rational,
                    "GF" => {
                        let p: u32 = tokens
                            .next()
                            .and_then(|t| t.parse().ok())
                            .ok_or_else(|| {
                                RingFileError::syntax(lineno, "expected a prime after `GF`")
                            })?;
                        FieldSpec::prime(p)
                            .map_err(|e| RingFileError::syntax(lineno, e.to_string()))?
                    }
                    other => {
                        return Err(RingFileError::syntax(
                            lineno,
                            format!("unknown field `{other}`"),
                        ))
                    }
                };
                field = Some(spec);
            }
            "vars" => {
                let names: Vec<String> = tokens.map(|t| t.to_string()).collect();
                if names.is_empty() {
                    return Err(RingFileError::syntax(lineno, "expected at least one variable"));
                }
                for n in &names {
                    let ok = n
                        .chars()
                        .enumerate()
                        .all(|(i, c)| c == '_' || c.is_ascii_alphanumeric() && (i > 0 || c.is_ascii_alphabetic()) || (i == 0 && c == '_'));
                    if !ok {
                        return Err(RingFileError::syntax(
                            lineno,
                            format!("invalid variable name `{n}`"),
                        ));
                    }
                }
                vars = Some(names);
            }
            "weights" => {
                let ws: Result<Vec<u64>, _> = tokens.map(|t| t.parse::<u64>()).collect();
                let ws = ws.map_err(|_| {
                    RingFileError::syntax(lineno, "weights must be positive integers")
                })?;
                if ws.contains(&0) {
                    return Err(RingFileError::syntax(lineno, "weights must be positive"));
                }
                weights = Some(ws);
            }
            "relations" => {
                in_relations = true;
            }
            other => {
                return Err(RingFileError::syntax(
                    lineno,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }
    if in_relations {
        return Err(RingFileError::syntax(
            source.lines().count(),
            "`relations` block not closed by `end`",
        ));
    }
    let field = field.ok_or_else(|| RingFileError::syntax(1, "missing `field` directive"))?;
    let vars = vars.ok_or_else(|| RingFileError::syntax(1, "missing `vars` directive"))?;
    let weights = weights.unwrap_or_else(|| vec![1; vars.len()]);
    if weights.len() != vars.len() {
        return Err(RingFileError::syntax(
            1,
            format!("{} weights for {} variables", weights.len(), vars.len()),
        ));
    }
    let ambient = PolyRing::new(field, vars, weights)
        .map_err(|e| RingFileError::syntax(1, e.to_string()))?;
    let mut relations: Vec<Polynomial> = Vec::new();
    for (lineno, text) in &relation_lines {
        let p = parse_polynomial(&ambient, text)
            .map_err(|e| RingFileError::syntax(*lineno, e.to_string()))?;
        relations.push(p);
    }
    let _ = relations_closed;
    let ring = RingPresentation::new(ambient, relations, caps)
        .map_err(RingFileError::Construction)?;
    Ok(RingFile {
        ring,
        source: source.to_string(),
    })
}
