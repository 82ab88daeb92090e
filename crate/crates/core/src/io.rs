//! Interchange formats.
//!
//! `psts/1` text:
//!
//! ```text
//! psts 6 4
//! 0 1 3
//! 0 2 4
//! 1 2 5
//! 3 4 5
//! # label 0 {1,2}
//! ```
//!
//! The header gives the point and line counts, then one sorted line per row in
//! sorted order, then optional `# label <id> <name>` rows (the name runs to the
//! end of the row). Other `#` rows and blank rows are ignored on input. JSON
//! mirrors the same data. Both writers are deterministic.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::StpDiagram;
use crate::error::{Error, Result};
use crate::incidence::{Config, Line, PointId};
use crate::isomorphism::CanonicalCertificate;

pub fn write_psts(c: &Config) -> String {
    let mut out = format!("psts {} {}\n", c.num_points(), c.lines().len());
    for l in c.lines() {
        let [a, b, d] = l.points();
        let _ = writeln!(out, "{a} {b} {d}");
    }
    if let Some(labels) = c.labels() {
        for (id, name) in labels.iter().enumerate() {
            let _ = writeln!(out, "# label {id} {name}");
        }
    }
    out
}

pub fn parse_psts(text: &str) -> Result<Config> {
    let err = |line: usize, reason: &str| Error::Parse {
        line,
        reason: reason.to_string(),
    };
    let mut header: Option<(usize, usize)> = None;
    let mut lines = Vec::new();
    let mut labels: Vec<Option<String>> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let ln = k + 1;
        let row = raw.trim();
        if row.is_empty() {
            continue;
        }
        if let Some(rest) = row.strip_prefix('#') {
            if let Some(spec) = rest.trim_start().strip_prefix("label ") {
                let (id, name) = spec
                    .trim_start()
                    .split_once(' ')
                    .ok_or_else(|| err(ln, "label row needs an id and a name"))?;
                let id: usize = id.parse().map_err(|_| err(ln, "label id is not a number"))?;
                let (nu, _) = header.ok_or_else(|| err(ln, "label before header"))?;
                if id >= nu {
                    return Err(err(ln, &format!("label id {id} outside 0..{nu}")));
                }
                if labels[id].replace(name.to_string()).is_some() {
                    return Err(err(ln, &format!("point {id} labelled twice")));
                }
            }
            continue;
        }
        let toks: Vec<&str> = row.split_whitespace().collect();
        match header {
            None => {
                if toks.len() != 3 || toks[0] != "psts" {
                    return Err(err(ln, "expected header `psts <nu> <b>`"));
                }
                let nu = toks[1].parse().map_err(|_| err(ln, "bad point count"))?;
                let b = toks[2].parse().map_err(|_| err(ln, "bad line count"))?;
                header = Some((nu, b));
                labels = vec![None; nu];
            }
            Some((nu, _)) => {
                if toks.len() != 3 {
                    return Err(err(ln, "a line needs exactly three point ids"));
                }
                let mut ids = [0usize; 3];
                for (slot, t) in ids.iter_mut().zip(&toks) {
                    *slot = t.parse().map_err(|_| err(ln, &format!("{t:?} is not a point id")))?;
                    if *slot >= nu {
                        return Err(err(ln, &format!("point {slot} outside 0..{nu}")));
                    }
                }
                lines.push(Line::new(ids[0], ids[1], ids[2]));
            }
        }
    }
    let (nu, b) = header.ok_or_else(|| err(0, "empty input"))?;
    if lines.len() != b {
        return Err(err(0, &format!("header announces {b} lines, found {}", lines.len())));
    }
    let mut c = Config::new(nu, lines);
    if labels.iter().any(Option::is_some) {
        if labels.iter().any(Option::is_none) {
            return Err(err(0, "labels must cover every point or none"));
        }
        c = c.with_labels(labels.into_iter().map(|l| l.expect("checked")).collect());
    }
    Ok(c)
}

#[derive(Serialize, Deserialize)]
struct JsonConfig {
    format: String,
    nu: usize,
    b: usize,
    lines: Vec<[u32; 3]>,
    labels: Option<Vec<String>>,
}

pub fn write_json(c: &Config) -> String {
    let doc = JsonConfig {
        format: "psts/1".into(),
        nu: c.num_points(),
        b: c.lines().len(),
        lines: c.lines().iter().map(|l| l.points().map(|p| p.0)).collect(),
        labels: c.labels().map(<[String]>::to_vec),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes") + "\n"
}

pub fn parse_json(text: &str) -> Result<Config> {
    let doc: JsonConfig = serde_json::from_str(text)?;
    if doc.lines.len() != doc.b {
        return Err(Error::Parse {
            line: 0,
            reason: format!("b = {} but {} lines given", doc.b, doc.lines.len()),
        });
    }
    let c = Config::new(
        doc.nu,
        doc.lines.iter().map(|t| Line::new(PointId(t[0]), PointId(t[1]), PointId(t[2]))).collect(),
    );
    Ok(match doc.labels {
        Some(l) => c.with_labels(l),
        None => c,
    })
}

/// Reads psts/1 or JSON, by the first non-blank character.
pub fn parse_any(text: &str) -> Result<Config> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_psts(text)
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The Levi graph: point nodes (circles) and line nodes (boxes).
pub fn write_dot(c: &Config) -> String {
    let mut out = String::from("graph levi {\n  node [shape=circle];\n");
    for p in c.points() {
        let _ = writeln!(out, "  p{} [label={}];", p.0, quote(&c.display_point(p)));
    }
    for (k, _) in c.lines().iter().enumerate() {
        let _ = writeln!(out, "  l{k} [shape=box, label=\"L{k}\"];");
    }
    for (k, l) in c.lines().iter().enumerate() {
        for p in l.points() {
            let _ = writeln!(out, "  p{} -- l{k};", p.0);
        }
    }
    out.push_str("}\n");
    out
}

/// The 3×3 triangle diagram, one rank per row, matchings as labelled edges.
pub fn write_stp_dot(d: &StpDiagram, c: &Config) -> String {
    let mut out = String::from("graph stp {\n  node [shape=plaintext];\n");
    for (r, row) in d.row_labels.iter().enumerate() {
        let _ = write!(out, "  {{ rank=same; ");
        for (col, name) in row.iter().enumerate() {
            let _ = write!(out, "r{r}c{col} [label={}]; ", quote(name));
        }
        out.push_str("}\n");
        let _ = writeln!(out, "  r{r}c0 -- r{r}c1 -- r{r}c2 [style=invis];");
    }
    for (k, &(ra, rb)) in [(0usize, 1usize), (0, 2), (1, 2)].iter().enumerate() {
        let centre = c.display_point(d.centers[k]);
        for col in 0..3 {
            let _ = writeln!(
                out,
                "  r{ra}c{col} -- r{rb}c{} [label={}];",
                d.matching[k][col],
                quote(&centre)
            );
        }
    }
    out.push_str("}\n");
    out
}

/// A certificate as psts/1 text of the canonical configuration.
pub fn write_certificate(cert: &CanonicalCertificate) -> String {
    write_psts(&cert.to_config())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::grassmannian;

    #[test]
    fn grassmannian_four_golden() {
        let text = write_psts(&grassmannian(4).unwrap());
        let expected = "psts 6 4\n0 1 3\n0 2 4\n1 2 5\n3 4 5\n\
                        # label 0 {1,2}\n# label 1 {1,3}\n# label 2 {1,4}\n\
                        # label 3 {2,3}\n# label 4 {2,4}\n# label 5 {3,4}\n";
        assert_eq!(text, expected);
        assert_eq!(write_psts(&parse_psts(&text).unwrap()), text);
    }

    #[test]
    fn json_round_trip() {
        let g = grassmannian(5).unwrap();
        assert_eq!(parse_json(&write_json(&g)).unwrap(), g);
        assert_eq!(parse_any(&write_json(&g)).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_psts("psts 3 1\n0 1 7\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        assert!(parse_psts("psts 3 2\n0 1 2\n").is_err());
        assert!(parse_psts("hello").is_err());
        assert!(parse_psts("psts 3 1\n0 1 2\n# label 0 x\n").is_err());
    }

    #[test]
    fn labels_keep_spaces() {
        let t = "psts 3 1\n0 1 2\n# label 0 a^1 b^0 c^0\n# label 1 y\n# label 2 z\n";
        assert_eq!(parse_psts(t).unwrap().label(PointId(0)), Some("a^1 b^0 c^0"));
    }

    #[test]
    fn dot_mentions_every_incidence() {
        let dot = write_dot(&grassmannian(4).unwrap());
        assert_eq!(dot.matches(" -- ").count(), 12);
        assert!(dot.contains("label=\"{1,2}\""));
    }
}
