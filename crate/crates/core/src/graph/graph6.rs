use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";
const FORMAT: &str = "graph6";
const MAX_VERTICES: u64 = (1 << 36) - 1;

/// Decodes one graph6 record. A leading `>>graph6<<` header and surrounding
/// whitespace are ignored; byte offsets in errors refer to the original text.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let lead = text.len() - text.trim_start().len();
    let mut body = text.trim();
    let mut base = lead;
    if let Some(rest) = body.strip_prefix(HEADER) {
        body = rest;
        base += HEADER.len();
    }
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(Error::parse(FORMAT, base, "empty input"));
    }
    for (i, &c) in bytes.iter().enumerate() {
        if !(63..=126).contains(&c) {
            return Err(Error::parse(
                FORMAT,
                base + i,
                format!("byte {c:#04x} outside the printable range 63..=126"),
            ));
        }
    }

    let (n, header_len) = decode_order(bytes, base)?;
    let pairs = n.checked_mul(n.saturating_sub(1)).map(|p| p / 2);
    let needed = pairs
        .map(|p| p.div_ceil(6))
        .ok_or_else(|| Error::parse(FORMAT, base, "vertex count too large"))?;
    let data = &bytes[header_len..];
    if (data.len() as u64) < needed {
        return Err(Error::parse(
            FORMAT,
            base + bytes.len(),
            format!("truncated bit field: expected {needed} bytes, found {}", data.len()),
        ));
    }
    if data.len() as u64 > needed {
        return Err(Error::parse(
            FORMAT,
            base + header_len + needed as usize,
            "trailing bytes after the adjacency field",
        ));
    }
    let n = usize::try_from(n).map_err(|_| Error::parse(FORMAT, base, "vertex count too large"))?;

    let mut edges = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[bit / 6] - 63;
            if byte & (1 << (5 - bit % 6)) != 0 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges)
}

fn decode_order(bytes: &[u8], base: usize) -> Result<(u64, usize)> {
    let word = |from: usize, len: usize| -> Result<u64> {
        if bytes.len() < from + len {
            return Err(Error::parse(FORMAT, base + bytes.len(), "truncated size header"));
        }
        Ok(bytes[from..from + len]
            .iter()
            .fold(0u64, |acc, &c| (acc << 6) | u64::from(c - 63)))
    };
    if bytes[0] != 126 {
        return Ok((u64::from(bytes[0] - 63), 1));
    }
    if bytes.len() > 1 && bytes[1] == 126 {
        Ok((word(2, 6)?, 8))
    } else {
        Ok((word(1, 3)?, 4))
    }
}

/// Encodes `g` in the shortest standard graph6 form, without header or newline.
pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.vertex_count() as u64;
    if n > MAX_VERTICES {
        return Err(Error::InvalidGraph(format!(
            "{n} vertices exceed the graph6 limit {MAX_VERTICES}"
        )));
    }
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let n = g.vertex_count();
    let total = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u8; total.div_ceil(6)];
    for &(u, v) in g.edges() {
        // Column-major position of pair (u, v), u < v.
        let pos = v * (v - 1) / 2 + u;
        bits[pos / 6] |= 1 << (5 - pos % 6);
    }
    out.extend(bits.into_iter().map(|b| b + 63));
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}
