//! The "ecg" interchange format and its JSON mirror.
//!
//! Text layout, bit-exact: line 1 is `ecg <n> <k>`, then n-1 rows. The row
//! for vertex u (line u+2) lists the colors of pairs {u, j} for j = u+1..n-1
//! as space-separated decimals. A trailing newline is mandatory; comments and
//! blank lines are not allowed.

use serde::{Deserialize, Serialize};

use crate::coloring::{pair_index, EdgeColoring, MAX_COLORS, MAX_VERTICES};
use crate::error::{Error, Result};

/// Canonical text form; identical colorings serialize byte-identically.
pub fn serialize(g: &EdgeColoring) -> String {
    let mut out = format!("ecg {} {}\n", g.n(), g.k());
    for u in 0..g.n().saturating_sub(1) {
        for j in u + 1..g.n() {
            if j > u + 1 {
                out.push(' ');
            }
            out.push_str(&g.color(u, j).to_string());
        }
        out.push('\n');
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split(' ');
    if it.next() != Some("ecg") {
        return Err(parse_err(1, "expected header `ecg <n> <k>`"));
    }
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(1, "bad vertex count in header"))?;
    let k: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(1, "bad palette size in header"))?;
    if it.next().is_some() {
        return Err(parse_err(1, "trailing tokens after header"));
    }
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::OrderOutOfRange {
            n,
            max: MAX_VERTICES,
        });
    }
    if k == 0 || k > MAX_COLORS {
        return Err(Error::ParameterOutOfRange(format!(
            "palette size {k} outside 1..={MAX_COLORS}"
        )));
    }
    Ok((n, k))
}

pub fn parse(text: &str) -> Result<EdgeColoring> {
    if !text.ends_with('\n') {
        return Err(parse_err(
            text.lines().count().max(1),
            "missing trailing newline",
        ));
    }
    let mut lines = text.split('\n');
    let header = lines.next().ok_or_else(|| parse_err(1, "empty document"))?;
    let (n, k) = parse_header(header)?;

    let mut colors = vec![0u16; n * (n - 1) / 2];
    for u in 0..n.saturating_sub(1) {
        let lineno = u + 2;
        let row = lines
            .next()
            .ok_or_else(|| parse_err(lineno, format!("missing row for vertex {u}")))?;
        let mut count = 0;
        for tok in row.split(' ') {
            let c: usize = tok
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad color token {tok:?}")))?;
            if c >= k {
                return Err(Error::InvalidColor { color: c, k });
            }
            let j = u + 1 + count;
            if j >= n {
                return Err(parse_err(
                    lineno,
                    format!("row for vertex {u} has more than {} entries", n - 1 - u),
                ));
            }
            colors[pair_index(u, j)] = c as u16;
            count += 1;
        }
        if count != n - 1 - u {
            return Err(parse_err(
                lineno,
                format!(
                    "row for vertex {u} has {count} entries, expected {}",
                    n - 1 - u
                ),
            ));
        }
    }
    // The final split piece after the mandatory trailing newline is "".
    match lines.next() {
        Some("") => {}
        Some(_) => return Err(parse_err(n + 1, "unexpected content after last row")),
        None => return Err(parse_err(n, "missing trailing newline")),
    }
    if lines.next().is_some() {
        return Err(parse_err(n + 2, "unexpected content after last row"));
    }
    Ok(EdgeColoring::from_raw(n, k, colors))
}

#[derive(Serialize, Deserialize)]
struct EcgJson {
    n: usize,
    k: usize,
    rows: Vec<Vec<usize>>,
}

/// JSON mirror with the same row semantics as the text form.
pub fn serialize_json(g: &EdgeColoring) -> String {
    let rows: Vec<Vec<usize>> = (0..g.n().saturating_sub(1))
        .map(|u| (u + 1..g.n()).map(|j| g.color(u, j)).collect())
        .collect();
    let doc = EcgJson {
        n: g.n(),
        k: g.k(),
        rows,
    };
    serde_json::to_string(&doc).expect("serialization cannot fail")
}

pub fn parse_json(text: &str) -> Result<EdgeColoring> {
    let doc: EcgJson =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    let EcgJson { n, k, rows } = doc;
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::OrderOutOfRange {
            n,
            max: MAX_VERTICES,
        });
    }
    if k == 0 || k > MAX_COLORS {
        return Err(Error::ParameterOutOfRange(format!(
            "palette size {k} outside 1..={MAX_COLORS}"
        )));
    }
    if rows.len() != n - 1 {
        return Err(parse_err(
            1,
            format!("expected {} rows, got {}", n - 1, rows.len()),
        ));
    }
    let mut colors = vec![0u16; n * (n - 1) / 2];
    for (u, row) in rows.iter().enumerate() {
        if row.len() != n - 1 - u {
            return Err(parse_err(
                1,
                format!(
                    "row for vertex {u} has {} entries, expected {}",
                    row.len(),
                    n - 1 - u
                ),
            ));
        }
        for (off, &c) in row.iter().enumerate() {
            if c >= k {
                return Err(Error::InvalidColor { color: c, k });
            }
            colors[pair_index(u, u + 1 + off)] = c as u16;
        }
    }
    Ok(EdgeColoring::from_raw(n, k, colors))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_round_trip() {
        let g = EdgeColoring::new_uniform(3, 0, 2).unwrap();
        let text = serialize(&g);
        assert_eq!(text, "ecg 3 2\n0 0\n0\n");
        assert_eq!(parse(&text).unwrap(), g);
    }

    #[test]
    fn single_vertex() {
        let g = EdgeColoring::new_uniform(1, 0, 3).unwrap();
        let text = serialize(&g);
        assert_eq!(text, "ecg 1 3\n");
        assert_eq!(parse(&text).unwrap(), g);
    }

    #[test]
    fn color_out_of_palette() {
        assert!(matches!(
            parse("ecg 2 1\n1\n"),
            Err(Error::InvalidColor { color: 1, k: 1 })
        ));
    }

    #[test]
    fn structural_errors_carry_line_numbers() {
        assert!(matches!(parse("ecg 3 2\n0 0\n0"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse("ecg 3 2\n0 0 0\n0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("ecg 3 2\n0\n0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("ecg 3 2\n0 0\n0\nextra\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse("egg 3 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse("ecg 3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn json_mirror_round_trip() {
        let mut g = EdgeColoring::new_uniform(4, 0, 3).unwrap();
        g.set(1, 3, 2);
        g.set(0, 2, 1);
        let doc = serialize_json(&g);
        assert_eq!(doc, r#"{"n":4,"k":3,"rows":[[0,1,0],[0,2],[0]]}"#);
        assert_eq!(parse_json(&doc).unwrap(), g);
        assert!(parse_json(r#"{"n":2,"k":1,"rows":[[1]]}"#).is_err());
        assert!(parse_json(r#"{"n":3,"k":1,"rows":[[0]]}"#).is_err());
    }

    #[test]
    fn text_and_json_agree() {
        let mut g = EdgeColoring::new_uniform(5, 1, 4).unwrap();
        g.set(0, 4, 3);
        g.set(2, 3, 0);
        let via_text = parse(&serialize(&g)).unwrap();
        let via_json = parse_json(&serialize_json(&g)).unwrap();
        assert_eq!(via_text, via_json);
        assert_eq!(via_text, g);
    }
}
