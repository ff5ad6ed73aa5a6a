//! Text formats: a plain edge list and graph6.
//!
//! Edge list: a header line `n m` followed by `m` lines `u v`. Blank lines
//! and lines starting with `#` are skipped.
//!
//! graph6: `N(n)` followed by the upper triangle of the adjacency matrix,
//! column by column (`x(0,1) x(0,2) x(1,2) x(0,3) …`), packed into 6-bit
//! groups, each offset by 63.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header \"n m\"".into(),
    })?;
    let (n, m) = parse_pair(header, hline, "header")?;

    let mut g = Graph::empty(n);
    let mut seen = 0usize;
    for (line, body) in lines {
        if seen == m {
            return Err(Error::Parse {
                line,
                message: format!("more than the declared {m} edge lines"),
            });
        }
        let (u, v) = parse_pair(body, line, "edge")?;
        g.add_edge(u, v).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        seen += 1;
    }
    if seen < m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: format!("expected {m} edge lines, found {seen}"),
        });
    }
    Ok(g)
}

fn parse_pair(body: &str, line: usize, what: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse {
        line,
        message: format!("malformed {what} line {body:?}"),
    };
    let mut it = body.split_whitespace();
    let a = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    let b = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

const BIAS: u8 = 63;
const MAX_N: usize = 68_719_476_735; // 2^36 - 1

pub fn serialize_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= MAX_N, "graph6 cannot encode {n} vertices");
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 0x3f) as u8 + BIAS));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 0x3f) as u8 + BIAS));
    }

    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(chunk + BIAS);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some((pos, &b)) = bytes
        .iter()
        .enumerate()
        .find(|(_, &b)| !(BIAS..=126).contains(&b))
    {
        return Err(Error::Graph6(format!(
            "byte {b:#04x} at offset {pos} is outside the printable range 63..=126"
        )));
    }
    let six = |b: u8| (b - BIAS) as usize;

    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated vertex count".into()));
            }
            let n = rest[..6].iter().fold(0, |acc, &b| (acc << 6) | six(b));
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated vertex count".into()));
            }
            let n = rest[..3].iter().fold(0, |acc, &b| (acc << 6) | six(b));
            (n, &rest[3..])
        }
        [b, rest @ ..] => (six(*b), rest),
    };

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "{n} vertices need {expected} data bytes, found {}",
            body.len()
        )));
    }

    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six(body[k / 6]);
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}
