//! The group text format: line 1 is the degree, every following non-empty,
//! non-comment (`#`) line is one generator, written either as whitespace-
//! separated 1-based images or in disjoint-cycle notation `(1 2 3)(4 5)`.
//! Notations may be mixed across lines.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::perm::Permutation;

pub fn parse_group_text(text: &str, cap: usize) -> Result<Arc<GroupTable>> {
    let mut degree: Option<u16> = None;
    let mut generators = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let d: u64 = line.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    message: format!("expected the degree, found {:?}", line),
                })?;
                if d == 0 || d > u16::MAX as u64 {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!("degree {} out of range", d),
                    });
                }
                degree = Some(d as u16);
            }
            Some(d) => {
                generators.push(parse_generator(line, d, lineno + 1)?);
            }
        }
    }
    let degree = degree.ok_or(Error::Parse {
        line: 1,
        message: "empty file: missing degree line".into(),
    })?;
    GroupTable::enumerate(degree, &generators, cap)
}

fn parse_generator(line: &str, degree: u16, lineno: usize) -> Result<Permutation> {
    if line.starts_with('(') {
        parse_cycles(line, degree, lineno)
    } else {
        parse_images(line, degree, lineno)
    }
}

fn parse_images(line: &str, degree: u16, lineno: usize) -> Result<Permutation> {
    let mut images = Vec::new();
    for tok in line.split_whitespace() {
        let v: u64 = tok.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("expected a 1-based image, found {:?}", tok),
        })?;
        if v == 0 || v > degree as u64 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("image {} out of range 1..{}", v, degree),
            });
        }
        images.push((v - 1) as u16);
    }
    if images.len() != degree as usize {
        return Err(Error::Parse {
            line: lineno,
            message: format!(
                "expected {} images, found {}",
                degree,
                images.len()
            ),
        });
    }
    Permutation::new(images).map_err(|e| Error::Parse {
        line: lineno,
        message: e.to_string(),
    })
}

fn parse_cycles(line: &str, degree: u16, lineno: usize) -> Result<Permutation> {
    let mut cycles: Vec<Vec<u16>> = Vec::new();
    let mut rest = line.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected '(', found {:?}", rest),
            });
        }
        let close = rest.find(')').ok_or(Error::Parse {
            line: lineno,
            message: "unclosed cycle".into(),
        })?;
        let body = &rest[1..close];
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let v: u64 = tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("expected a point, found {:?}", tok),
            })?;
            if v == 0 || v > degree as u64 {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("point {} out of range 1..{}", v, degree),
                });
            }
            cycle.push((v - 1) as u16);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = rest[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles).map_err(|e| Error::Parse {
        line: lineno,
        message: e.to_string(),
    })
}

pub fn read_group_file(path: &Path, cap: usize) -> Result<Arc<GroupTable>> {
    let text = std::fs::read_to_string(path)?;
    parse_group_text(&text, cap)
}

/// Renders a group as degree plus its generators in cycle notation.
pub fn group_to_text(table: &GroupTable, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {}\n# order {}\n{}\n", name, table.order(), table.degree()));
    for &g in table.generator_indices() {
        out.push_str(&format!("{}\n", table.element(g)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_notations() {
        let text = "3\n# a comment\n(1 2 3)\n2 1 3\n";
        let g = parse_group_text(text, 100).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn reports_line_numbers_on_errors() {
        match parse_group_text("3\n(1 2 5)\n", 100) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected parse error on line 2, got {:?}", other.map(|g| g.order())),
        }
        match parse_group_text("3\n1 1 2\n", 100) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected parse error on line 2, got {:?}", other.map(|g| g.order())),
        }
    }

    #[test]
    fn round_trips_through_text() {
        let text = "4\n(1 2 3 4)\n(1 3)\n";
        let g = parse_group_text(text, 100).unwrap();
        let emitted = group_to_text(&g, "d8");
        let g2 = parse_group_text(&emitted, 100).unwrap();
        assert_eq!(g.order(), g2.order());
        assert_eq!(g.elements(), g2.elements());
    }
}
