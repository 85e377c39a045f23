//! `planar_code` and a line-oriented text format. Both use 1-based vertex
//! ids on disk.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::plane::PlaneGraph;

pub const PLANAR_CODE_HEADER: &[u8] = b">>planar_code<<";

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    PlanarCode,
    Text,
}

/// Reads every record of a `planar_code` stream. The outer face of each graph
/// is the default one (see [`PlaneGraph::new`]).
pub fn read_planar_code(bytes: &[u8]) -> Result<Vec<PlaneGraph>> {
    let mut pos = 0;
    if bytes.starts_with(PLANAR_CODE_HEADER) {
        pos = PLANAR_CODE_HEADER.len();
    }
    let mut out = Vec::new();
    while pos < bytes.len() {
        let start = pos;
        let n = bytes[pos] as usize;
        pos += 1;
        if n == 0 {
            return Err(Error::parse(format!("byte {start}"), "graph order 0"));
        }
        let mut rot = Vec::with_capacity(n);
        for v in 0..n {
            let mut r = Vec::new();
            loop {
                let Some(&b) = bytes.get(pos) else {
                    return Err(Error::parse(
                        format!("byte {pos}"),
                        format!("truncated rotation of vertex {}", v + 1),
                    ));
                };
                pos += 1;
                if b == 0 {
                    break;
                }
                if b as usize > n {
                    return Err(Error::parse(
                        format!("byte {}", pos - 1),
                        format!("neighbor {b} exceeds order {n}"),
                    ));
                }
                r.push(b as usize - 1);
            }
            rot.push(r);
        }
        let g = PlaneGraph::new(rot, None)
            .map_err(|e| Error::parse(format!("record at byte {start}"), e.to_string()))?;
        out.push(g);
    }
    Ok(out)
}

/// Writes graphs as `planar_code`, header included. Orders above 255 do not
/// fit the one-byte encoding and are rejected.
pub fn write_planar_code(graphs: &[PlaneGraph]) -> Result<Vec<u8>> {
    let mut out = PLANAR_CODE_HEADER.to_vec();
    for g in graphs {
        let n = g.vertex_count();
        if n > 255 {
            return Err(Error::BadOrder(n));
        }
        out.push(n as u8);
        for v in 0..n {
            out.extend(g.rotation(v).iter().map(|&w| (w + 1) as u8));
            out.push(0);
        }
    }
    Ok(out)
}

/// Reads one or more `pg <n>` records.
pub fn read_text(input: &str) -> Result<Vec<PlaneGraph>> {
    struct Pending {
        line: usize,
        rot: Vec<Option<Vec<usize>>>,
        outer: Option<(usize, usize)>,
    }
    fn finish(p: Pending) -> Result<PlaneGraph> {
        let mut rot = Vec::with_capacity(p.rot.len());
        for (i, r) in p.rot.into_iter().enumerate() {
            rot.push(r.ok_or_else(|| {
                Error::parse(
                    format!("line {}", p.line),
                    format!("vertex {} missing", i + 1),
                )
            })?);
        }
        PlaneGraph::new(rot, p.outer)
            .map_err(|e| Error::parse(format!("record at line {}", p.line), e.to_string()))
    }

    let mut out = Vec::new();
    let mut cur: Option<Pending> = None;
    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let at = || format!("line {lineno}");
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let num = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| Error::parse(at(), format!("expected an integer, got {s:?}")))
        };
        if let Some(rest) = line.strip_prefix("pg ") {
            if let Some(p) = cur.take() {
                out.push(finish(p)?);
            }
            let n = num(rest.trim())?;
            if n == 0 {
                return Err(Error::parse(at(), "graph order 0"));
            }
            cur = Some(Pending {
                line: lineno,
                rot: vec![None; n],
                outer: None,
            });
            continue;
        }
        let p = cur
            .as_mut()
            .ok_or_else(|| Error::parse(at(), "expected `pg <n>` first"))?;
        let n = p.rot.len();
        let id = |x: usize| -> Result<usize> {
            if x == 0 || x > n {
                Err(Error::parse(at(), format!("vertex {x} outside 1..={n}")))
            } else {
                Ok(x - 1)
            }
        };
        if let Some(rest) = line.strip_prefix("outer:") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::parse(at(), "outer line needs two vertices"));
            }
            p.outer = Some((id(num(parts[0])?)?, id(num(parts[1])?)?));
            continue;
        }
        let (head, tail) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(at(), "expected `<i>: <neighbors>`"))?;
        let v = id(num(head.trim())?)?;
        if p.rot[v].is_some() {
            return Err(Error::parse(at(), format!("vertex {} listed twice", v + 1)));
        }
        let mut r = Vec::new();
        for tok in tail.split_whitespace() {
            r.push(id(num(tok)?)?);
        }
        p.rot[v] = Some(r);
    }
    match cur {
        Some(p) => out.push(finish(p)?),
        None => return Err(Error::parse("end of input", "no `pg` record")),
    }
    Ok(out)
}

/// Writes one graph in the text format, always including the outer hint.
pub fn write_text(g: &PlaneGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "pg {}", g.vertex_count());
    for v in 0..g.vertex_count() {
        let _ = write!(s, "{}:", v + 1);
        for &w in g.rotation(v) {
            let _ = write!(s, " {}", w + 1);
        }
        s.push('\n');
    }
    if let Some((a, b)) = g.outer_dart() {
        let _ = writeln!(s, "outer: {} {}", a + 1, b + 1);
    }
    s
}

pub fn read_graphs(bytes: &[u8], format: Format) -> Result<Vec<PlaneGraph>> {
    match format {
        Format::PlanarCode => read_planar_code(bytes),
        Format::Text => {
            let s = std::str::from_utf8(bytes)
                .map_err(|e| Error::parse(format!("byte {}", e.valid_up_to()), "invalid UTF-8"))?;
            read_text(s)
        }
    }
}

pub fn write_graphs(graphs: &[PlaneGraph], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::PlanarCode => write_planar_code(graphs),
        Format::Text => Ok(graphs
            .iter()
            .map(write_text)
            .collect::<String>()
            .into_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::fixtures::*;

    #[test]
    fn planar_code_round_trip() {
        let gs = vec![k4(), cycle(5)];
        let bytes = write_planar_code(&gs).unwrap();
        assert!(bytes.starts_with(PLANAR_CODE_HEADER));
        let back = read_planar_code(&bytes).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].rotations(), gs[0].rotations());
        assert_eq!(write_planar_code(&back).unwrap(), bytes);
    }

    #[test]
    fn planar_code_without_header() {
        let bytes = [3u8, 2, 3, 0, 3, 1, 0, 1, 2, 0];
        let g = &read_planar_code(&bytes).unwrap()[0];
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.face_count(), 2);
    }

    #[test]
    fn planar_code_errors_carry_offsets() {
        let err = read_planar_code(&[3u8, 2, 3, 0, 3]).unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "byte 5"));
        let err = read_planar_code(&[2u8, 7, 0, 1, 0]).unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "byte 1"));
    }

    #[test]
    fn text_round_trip_keeps_outer_face() {
        let g = wheel(5);
        let s = write_text(&g);
        assert!(s.starts_with("pg 6\n"));
        let back = read_text(&s).unwrap().remove(0);
        assert_eq!(back, g);
        assert_eq!(write_text(&back), s);
    }

    #[test]
    fn text_comments_and_errors() {
        let s = "# a triangle\npg 3\n\n1: 2 3\n2: 3 1\n3: 1 2\n";
        assert_eq!(read_text(s).unwrap()[0].edge_count(), 3);
        let err = read_text("pg 3\n1: 2 4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "line 2"));
        assert!(read_text("1: 2\n").is_err());
    }
}
