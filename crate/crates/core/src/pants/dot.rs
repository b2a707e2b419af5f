//! Deterministic DOT rendering of a pants graph, and a parser for exactly
//! that rendering so exports round-trip.

use crate::words::Presentation;

use super::{PantsError, PantsGraph};

fn label_text(label: &[i64]) -> String {
    let parts: Vec<String> = label.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn parse_label(text: &str) -> Option<Vec<i64>> {
    let inner = text.strip_prefix('(')?.strip_suffix(')')?;
    if inner.trim().is_empty() {
        return Some(vec![]);
    }
    inner.split(',').map(|p| p.trim().parse().ok()).collect()
}

/// Render the graph in DOT format: one node per pants, one edge per curve
/// (legs as point-shaped stub nodes), labels and separating status as edge
/// attributes, in a stable order.
pub fn export_dot(pg: &PantsGraph) -> Result<String, PantsError> {
    let violations = pg.validate();
    if !violations.is_empty() {
        return Err(PantsError::ValidationError(violations));
    }
    let p = pg.surface_presentation()?;
    let mut out = String::new();
    out.push_str("graph pants {\n");
    out.push_str(&format!(
        "  graph [genus={} punctures={} pants={}];\n",
        pg.genus(),
        pg.punctures(),
        pg.pants_count()
    ));
    for i in 0..pg.pants_count() {
        match pg.pants_words(i) {
            Some((u, v)) => out.push_str(&format!(
                "  p{i} [words=\"{} | {}\"];\n",
                p.format_word(u),
                p.format_word(v)
            )),
            None => out.push_str(&format!("  p{i};\n")),
        }
    }
    for (ci, c) in pg.curves().iter().enumerate() {
        let mut attrs = Vec::new();
        if let Some(name) = &c.name {
            attrs.push(format!("name=\"{name}\""));
        }
        attrs.push(format!("label=\"{}\"", label_text(&c.ends[0].label)));
        if let Some(w) = &c.word {
            attrs.push(format!("word=\"{}\"", p.format_word(w)));
        }
        attrs.push(format!("separating={}", pg.curve_is_separating(ci)?));
        out.push_str(&format!(
            "  p{} -- p{} [{}];\n",
            c.ends[0].pants,
            c.ends[1].pants,
            attrs.join(" ")
        ));
    }
    for (li, l) in pg.legs().iter().enumerate() {
        out.push_str(&format!("  leg{li} [shape=point];\n"));
        let mut attrs = vec![format!("label=\"{}\"", label_text(&l.label))];
        if let Some(w) = &l.word {
            attrs.push(format!("word=\"{}\"", p.format_word(w)));
        }
        out.push_str(&format!(
            "  p{} -- leg{li} [{}];\n",
            l.pants,
            attrs.join(" ")
        ));
    }
    out.push_str("}\n");
    Ok(out)
}

fn parse_attrs(text: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b',') {
            i += 1;
        }
        let key_start = i;
        while i < bytes.len() && bytes[i] != b'=' {
            i += 1;
        }
        if i >= bytes.len() {
            break;
        }
        let key = text[key_start..i].trim().to_string();
        i += 1;
        let value = if i < bytes.len() && bytes[i] == b'"' {
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i] != b'"' {
                i += 1;
            }
            let v = text[start..i].to_string();
            i += 1;
            v
        } else {
            let start = i;
            while i < bytes.len() && bytes[i] != b' ' {
                i += 1;
            }
            text[start..i].to_string()
        };
        out.push((key, value));
    }
    out
}

fn dot_err(line_no: usize, msg: impl Into<String>) -> PantsError {
    PantsError::DomainError(format!("dot line {}: {}", line_no + 1, msg.into()))
}

/// Parse a graph produced by [`export_dot`].
pub fn import_dot(text: &str) -> Result<PantsGraph, PantsError> {
    let mut header: Option<(usize, usize, usize)> = None;
    struct PendingCurve {
        p0: usize,
        p1: usize,
        attrs: Vec<(String, String)>,
    }
    struct PendingLeg {
        pants: usize,
        attrs: Vec<(String, String)>,
    }
    let mut curves: Vec<PendingCurve> = Vec::new();
    let mut legs: Vec<PendingLeg> = Vec::new();
    let mut node_words: Vec<(usize, String)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim().trim_end_matches(';');
        if line.is_empty() || line == "graph pants {" || line == "}" {
            continue;
        }
        let (head, attr_text) = match line.find('[') {
            Some(idx) => {
                let a = line[idx + 1..]
                    .strip_suffix(']')
                    .ok_or_else(|| dot_err(ln, "unterminated attribute list"))?;
                (line[..idx].trim(), a)
            }
            None => (line, ""),
        };
        let attrs = parse_attrs(attr_text);
        if head == "graph" {
            let mut g = None;
            let mut h = None;
            let mut n = None;
            for (k, v) in &attrs {
                let parsed = v.parse::<usize>().map_err(|_| dot_err(ln, "bad integer"))?;
                match k.as_str() {
                    "genus" => g = Some(parsed),
                    "punctures" => h = Some(parsed),
                    "pants" => n = Some(parsed),
                    _ => {}
                }
            }
            header = Some((
                g.ok_or_else(|| dot_err(ln, "missing genus"))?,
                h.ok_or_else(|| dot_err(ln, "missing punctures"))?,
                n.ok_or_else(|| dot_err(ln, "missing pants count"))?,
            ));
        } else if let Some((left, right)) = head.split_once("--") {
            let left = left.trim();
            let right = right.trim();
            let p0 = left
                .strip_prefix('p')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| dot_err(ln, "edge must start at a pants node"))?;
            if let Some(leg_text) = right.strip_prefix("leg") {
                let _: usize = leg_text.parse().map_err(|_| dot_err(ln, "bad leg index"))?;
                legs.push(PendingLeg { pants: p0, attrs });
            } else {
                let p1 = right
                    .strip_prefix('p')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| dot_err(ln, "bad pants node"))?;
                curves.push(PendingCurve { p0, p1, attrs });
            }
        } else if let Some(idx_text) = head.strip_prefix('p') {
            let idx: usize = idx_text
                .parse()
                .map_err(|_| dot_err(ln, "bad pants node"))?;
            for (k, v) in attrs {
                if k == "words" {
                    node_words.push((idx, v));
                }
            }
        } else if head.starts_with("leg") {
            // Stub node declaration; nothing to record.
        } else {
            return Err(dot_err(ln, format!("unrecognized line {line:?}")));
        }
    }

    let (genus, punctures, pants_count) =
        header.ok_or_else(|| dot_err(0, "missing graph header"))?;
    let presentation = Presentation::surface(genus, punctures)?;
    let parse_word = |t: &str| presentation.parse_word(t);

    let mut pg = PantsGraph::new(genus, punctures, pants_count);
    for c in curves {
        let mut label = None;
        let mut word = None;
        let mut name = None;
        for (k, v) in &c.attrs {
            match k.as_str() {
                "label" => {
                    label = Some(
                        parse_label(v)
                            .ok_or_else(|| PantsError::DomainError(format!("bad label {v:?}")))?,
                    )
                }
                "word" => word = Some(parse_word(v)?),
                "name" => name = Some(v.clone()),
                _ => {}
            }
        }
        let label = label.ok_or_else(|| PantsError::DomainError("curve without label".into()))?;
        let ci = pg.add_curve(c.p0, c.p1, label, word);
        if let Some(n) = name {
            pg.set_curve_name(ci, n);
        }
    }
    for l in legs {
        let mut label = None;
        let mut word = None;
        for (k, v) in &l.attrs {
            match k.as_str() {
                "label" => {
                    label = Some(
                        parse_label(v)
                            .ok_or_else(|| PantsError::DomainError(format!("bad label {v:?}")))?,
                    )
                }
                "word" => word = Some(parse_word(v)?),
                _ => {}
            }
        }
        let label = label.ok_or_else(|| PantsError::DomainError("leg without label".into()))?;
        pg.add_leg(l.pants, label, word);
    }
    for (idx, text) in node_words {
        let (u, v) = text.split_once('|').ok_or_else(|| {
            PantsError::DomainError("pants words need the form \"u | v\"".to_string())
        })?;
        pg.set_pants_words(idx, parse_word(u.trim())?, parse_word(v.trim())?);
    }
    Ok(pg)
}
