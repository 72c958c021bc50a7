//! graph6, sparse6 and a plain edge-list text format.

use super::{GraphBuilder, Multigraph};
use crate::error::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";
const SPARSE6_HEADER: &str = ">>sparse6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Decodes `N(n)` starting at `pos`; returns `(n, bytes consumed)`.
fn decode_n(bytes: &[u8], pos: usize) -> Result<(usize, usize)> {
    let get = |i: usize| -> Result<usize> {
        match bytes.get(pos + i) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
            Some(_) => Err(parse_err(pos + i, "byte outside the printable range 63..=126")),
            None => Err(parse_err(pos + i, "truncated vertex count")),
        }
    };
    let first = get(0)?;
    if first < 63 {
        return Ok((first, 1));
    }
    if get(1)? < 63 {
        let mut n = 0;
        for i in 1..4 {
            n = (n << 6) | get(i)?;
        }
        return Ok((n, 4));
    }
    let mut n = 0;
    for i in 2..8 {
        n = (n << 6) | get(i)?;
    }
    Ok((n, 8))
}

fn strip_line(text: &str) -> &str {
    text.trim_end_matches(['\n', '\r'])
}

/// Decodes one graph6 line (the `>>graph6<<` header is optional).
pub fn parse_graph6(text: &str) -> Result<Multigraph> {
    let line = strip_line(text);
    let start = if line.starts_with(GRAPH6_HEADER) {
        GRAPH6_HEADER.len()
    } else {
        0
    };
    let bytes = line.as_bytes();
    let (n, used) = decode_n(bytes, start)?;
    let body = start + used;
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    let have = bytes.len() - body;
    if have != need {
        let offset = body + have.min(need);
        return Err(parse_err(
            offset,
            format!("expected {need} adjacency bytes for {n} vertices, found {have}"),
        ));
    }
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte_at = body + k / 6;
            let byte = bytes[byte_at];
            if !(63..=126).contains(&byte) {
                return Err(parse_err(byte_at, "byte outside the printable range 63..=126"));
            }
            if ((byte - 63) >> (5 - k % 6)) & 1 == 1 {
                b.add_edge(i, j);
            }
            k += 1;
        }
    }
    if need > 0 {
        let last = bytes[body + need - 1];
        if !(63..=126).contains(&last) {
            return Err(parse_err(body + need - 1, "byte outside the printable range 63..=126"));
        }
    }
    b.build()
}

/// Encodes a simple graph as graph6 (no header, no newline).
pub fn write_graph6(g: &Multigraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::InvalidParameter(
            "graph6 cannot encode parallel edges; use sparse6".into(),
        ));
    }
    let n = g.order();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.edge_between(i, j).is_some() as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

/// Bits needed to write `n - 1` in binary.
fn sparse6_width(n: usize) -> usize {
    let mut k = 0;
    while k < usize::BITS as usize && (1usize << k) < n {
        k += 1;
    }
    k
}

/// Decodes one sparse6 line (leading `:`; the `>>sparse6<<` header is optional).
/// Repeated pairs become multiplicities.
pub fn parse_sparse6(text: &str) -> Result<Multigraph> {
    let line = strip_line(text);
    let mut pos = if line.starts_with(SPARSE6_HEADER) {
        SPARSE6_HEADER.len()
    } else {
        0
    };
    let bytes = line.as_bytes();
    if bytes.get(pos) != Some(&b':') {
        return Err(parse_err(pos, "sparse6 data must start with ':'"));
    }
    pos += 1;
    let (n, used) = decode_n(bytes, pos)?;
    pos += used;
    let k = sparse6_width(n);
    let mut bits = Vec::with_capacity((bytes.len() - pos) * 6);
    for (i, &byte) in bytes[pos..].iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(parse_err(pos + i, "byte outside the printable range 63..=126"));
        }
        let x = byte - 63;
        for s in (0..6).rev() {
            bits.push((x >> s) & 1);
        }
    }
    let mut b = GraphBuilder::new(n);
    let mut v = 0usize;
    let mut i = 0;
    while i + 1 + k <= bits.len() {
        let bit = bits[i];
        let mut x = 0usize;
        for &t in &bits[i + 1..i + 1 + k] {
            x = (x << 1) | t as usize;
        }
        let offset = pos + i / 6;
        i += 1 + k;
        if bit == 1 {
            v += 1;
        }
        if x >= n || v >= n {
            break;
        }
        if x > v {
            v = x;
        } else if x == v {
            return Err(parse_err(offset, format!("loop at vertex {v}")));
        } else {
            b.add_edge(x, v);
        }
    }
    b.build()
}

/// Encodes any loopless multigraph as sparse6 (leading `:`, no newline).
pub fn write_sparse6(g: &Multigraph) -> String {
    let n = g.order();
    let k = sparse6_width(n);
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        for _ in 0..e.mult {
            pairs.push((e.v, e.u));
        }
    }
    pairs.sort_unstable();
    let mut bits: Vec<u8> = Vec::new();
    let push = |bits: &mut Vec<u8>, x: usize| {
        for s in (0..k).rev() {
            bits.push(((x >> s) & 1) as u8);
        }
    };
    let mut cur = 0usize;
    for &(v, u) in &pairs {
        if v == cur {
            bits.push(0);
            push(&mut bits, u);
        } else if v == cur + 1 {
            cur = v;
            bits.push(1);
            push(&mut bits, u);
        } else {
            cur = v;
            bits.push(1);
            push(&mut bits, v);
            bits.push(0);
            push(&mut bits, u);
        }
    }
    let pad = (6 - bits.len() % 6) % 6;
    if k < 6 && n == (1 << k) && pad >= k && cur + 1 < n {
        bits.push(0);
    }
    while bits.len() % 6 != 0 {
        bits.push(1);
    }
    let mut out = vec![b':'];
    encode_n(n, &mut out);
    for chunk in bits.chunks(6) {
        let x = chunk.iter().fold(0u8, |a, &b| (a << 1) | b);
        out.push(x + 63);
    }
    String::from_utf8(out).expect("sparse6 output is ASCII")
}

/// Dispatches on the line prefix: `:` or `>>sparse6<<` means sparse6,
/// anything else graph6.
pub fn parse_graph_line(text: &str) -> Result<Multigraph> {
    let line = strip_line(text);
    if line.starts_with(':') || line.starts_with(SPARSE6_HEADER) {
        parse_sparse6(line)
    } else {
        parse_graph6(line)
    }
}

/// graph6 for simple graphs, sparse6 otherwise.
pub fn write_graph_line(g: &Multigraph) -> String {
    if g.is_simple() {
        write_graph6(g).expect("simple graphs encode as graph6")
    } else {
        write_sparse6(g)
    }
}

/// `n m` on the first line, then one `u v mult` line per base edge.
pub fn write_edge_list(g: &Multigraph) -> String {
    let mut s = format!("{} {}\n", g.order(), g.base_edge_count());
    for e in g.edges() {
        s.push_str(&format!("{} {} {}\n", e.u, e.v, e.mult));
    }
    s
}

/// Parses the format written by [`write_edge_list`]. The multiplicity column
/// may be omitted (default 1); blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Multigraph> {
    let mut offset = 0;
    let mut header: Option<(usize, usize)> = None;
    let mut b = GraphBuilder::new(0);
    let mut seen = 0;
    for raw in text.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |i: usize| -> Result<usize> {
            fields[i]
                .parse::<usize>()
                .map_err(|_| parse_err(line_start, format!("'{}' is not a number", fields[i])))
        };
        match header {
            None => {
                if fields.len() != 2 {
                    return Err(parse_err(line_start, "header must be 'n m'"));
                }
                header = Some((num(0)?, num(1)?));
                b = GraphBuilder::new(num(0)?);
            }
            Some(_) => {
                if !(2..=3).contains(&fields.len()) {
                    return Err(parse_err(line_start, "edge line must be 'u v [mult]'"));
                }
                let (u, v) = (num(0)?, num(1)?);
                let mult = if fields.len() == 3 { num(2)? } else { 1 };
                if u == v {
                    return Err(parse_err(line_start, format!("loop at vertex {u}")));
                }
                let n = header.unwrap().0;
                if u >= n || v >= n {
                    return Err(parse_err(line_start, format!("vertex out of range 0..{n}")));
                }
                b.add_edge_mult(u, v, mult as u32, None);
                seen += 1;
            }
        }
    }
    let Some((_, m)) = header else {
        return Err(parse_err(0, "missing 'n m' header"));
    };
    if seen != m {
        return Err(parse_err(
            offset,
            format!("header announced {m} edge lines, found {seen}"),
        ));
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_graph6() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!((g.order(), g.edge_count()), (4, 6));
        assert_eq!(write_graph6(&g).unwrap(), "C~");
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), g);
    }

    #[test]
    fn empty_graph6() {
        let g = parse_graph6("?").unwrap();
        assert_eq!(g.order(), 0);
        assert_eq!(write_graph6(&g).unwrap(), "?");
    }

    #[test]
    fn truncated_graph6_reports_offset() {
        match parse_graph6("D~") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_graph6(""), Err(Error::Parse { offset: 0, .. })));
    }

    #[test]
    fn sparse6_known_example() {
        // Example from the format description: 7 vertices, edges 0-1 0-2 1-2 5-6.
        let g = parse_sparse6(":Fa@x^").unwrap();
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 2), (5, 6)]);
        assert_eq!(write_sparse6(&g), ":Fa@x^");
    }

    #[test]
    fn sparse6_carries_multiplicity() {
        let g = Multigraph::with_multiplicities(2, [(0, 1, 3)]).unwrap();
        let s = write_sparse6(&g);
        assert_eq!(parse_graph_line(&s).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Multigraph::with_multiplicities(4, [(0, 1, 2), (2, 3, 2), (0, 2, 1), (1, 3, 1)])
            .unwrap();
        let text = write_edge_list(&g);
        assert!(text.starts_with("4 4\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        assert!(parse_edge_list("2 1\n0 0\n").is_err());
        assert!(parse_edge_list("2 2\n0 1\n").is_err());
    }
}
