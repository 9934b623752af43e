//! NBALIST: a non-binary variant of the alist text format.
//!
//! ```text
//! N M q
//! dv_max dc_max
//! <N variable-node degrees>
//! <M check-node degrees>
//! <M rows: "n1 h1 n2 h2 ...", 1-based variable indices, labels in [1, q)>
//! ```
//!
//! `#` starts a comment that runs to the end of the line. The serializer
//! closes the file with a comment naming the field's primitive polynomial.

use std::fmt::Write as _;

use super::{Code, RowEntry};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some(Line { number: i + 1, tokens })
    })
}

fn numbers(line: &Line<'_>) -> Result<Vec<usize>> {
    line.tokens
        .iter()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(line.number, format!("expected a nonnegative integer, found {t:?}")))
        })
        .collect()
}

/// Parses NBALIST text into a validated [`Code`].
pub fn parse_code_file(text: &str) -> Result<Code> {
    let last_line = text.lines().count().max(1);
    if !text.ends_with('\n') {
        return Err(parse_err(last_line, "missing final newline"));
    }
    let mut lines = content_lines(text);
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| parse_err(last_line, format!("unexpected end of input, expected {what}")))
    };

    let header = next("header \"N M q\"")?;
    let h = numbers(&header)?;
    let [n, m, q] = h[..] else {
        return Err(parse_err(header.number, "header must be \"N M q\""));
    };
    let field = Field::with_cardinality(q).map_err(|e| parse_err(header.number, e.to_string()))?;
    if n == 0 || m == 0 {
        return Err(parse_err(header.number, "N and M must be positive"));
    }

    let maxes_line = next("\"dv_max dc_max\"")?;
    let maxes = numbers(&maxes_line)?;
    let [dv_max, dc_max] = maxes[..] else {
        return Err(parse_err(maxes_line.number, "expected \"dv_max dc_max\""));
    };

    let var_line = next("variable-node degrees")?;
    let var_degrees = numbers(&var_line)?;
    if var_degrees.len() != n {
        return Err(parse_err(
            var_line.number,
            format!("expected {n} variable-node degrees, found {}", var_degrees.len()),
        ));
    }
    let check_line = next("check-node degrees")?;
    let check_degrees = numbers(&check_line)?;
    if check_degrees.len() != m {
        return Err(parse_err(
            check_line.number,
            format!("expected {m} check-node degrees, found {}", check_degrees.len()),
        ));
    }

    let mut rows = Vec::with_capacity(m);
    let mut seen_var_degree = vec![0usize; n];
    for (mi, &deg) in check_degrees.iter().enumerate() {
        let line = next("check row")?;
        let vals = numbers(&line)?;
        if vals.len() % 2 != 0 {
            return Err(parse_err(line.number, "check row must hold (index, label) pairs"));
        }
        if vals.len() / 2 != deg {
            return Err(parse_err(
                line.number,
                format!(
                    "check {} declares degree {deg} but lists {} entries",
                    mi + 1,
                    vals.len() / 2
                ),
            ));
        }
        let mut row = Vec::with_capacity(deg);
        for pair in vals.chunks(2) {
            let (idx, label) = (pair[0], pair[1]);
            if idx == 0 || idx > n {
                return Err(parse_err(
                    line.number,
                    format!("variable index {idx} out of range 1..={n}"),
                ));
            }
            if label == 0 {
                return Err(parse_err(line.number, format!("zero label on variable {idx}")));
            }
            if label >= q {
                return Err(parse_err(line.number, format!("label {label} is not in [1, {q})")));
            }
            seen_var_degree[idx - 1] += 1;
            row.push(RowEntry {
                var: idx - 1,
                label: FieldElement(label as u8),
            });
        }
        rows.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(parse_err(extra.number, "trailing content after the last check row"));
    }

    if let Some(v) = (0..n).find(|&v| seen_var_degree[v] != var_degrees[v]) {
        return Err(parse_err(
            var_line.number,
            format!(
                "variable {} declares degree {} but appears in {} rows",
                v + 1,
                var_degrees[v],
                seen_var_degree[v]
            ),
        ));
    }
    let actual_dv = var_degrees.iter().copied().max().unwrap_or(0);
    let actual_dc = check_degrees.iter().copied().max().unwrap_or(0);
    if dv_max != actual_dv || dc_max != actual_dc {
        return Err(parse_err(
            maxes_line.number,
            format!("declared maxima ({dv_max}, {dc_max}) differ from actual ({actual_dv}, {actual_dc})"),
        ));
    }

    Code::new(n, field, rows).map_err(|e| parse_err(check_line.number, e.to_string()))
}

/// Writes `code` as NBALIST text: rows ascending, entries by variable index.
pub fn serialize_code_file(code: &Code) -> String {
    let mut out = String::new();
    let join = |it: &mut dyn Iterator<Item = usize>| it.map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    let var_degrees: Vec<usize> = (0..code.n()).map(|v| code.var_degree(v)).collect();
    let check_degrees: Vec<usize> = (0..code.m()).map(|c| code.check_degree(c)).collect();

    writeln!(out, "{} {} {}", code.n(), code.m(), code.q()).unwrap();
    writeln!(
        out,
        "{} {}",
        var_degrees.iter().max().unwrap(),
        check_degrees.iter().max().unwrap()
    )
    .unwrap();
    writeln!(out, "{}", join(&mut var_degrees.iter().copied())).unwrap();
    writeln!(out, "{}", join(&mut check_degrees.iter().copied())).unwrap();
    for row in code.rows() {
        let line = join(&mut row.iter().flat_map(|e| [e.var + 1, e.label.index()]));
        writeln!(out, "{line}").unwrap();
    }
    writeln!(
        out,
        "# GF({}) primitive polynomial {:#x}",
        code.q(),
        code.field().primitive_poly()
    )
    .unwrap();
    out
}

/// Drops comments and blank lines and collapses whitespace runs to one space.
pub fn normalize_code_text(text: &str) -> String {
    let mut out = String::new();
    for line in content_lines(text) {
        out.push_str(&line.tokens.join(" "));
        out.push('\n');
    }
    out
}
