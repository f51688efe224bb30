//! Plain-text readers and writers for graphs, point clouds, and partitions.
//!
//! All readers accept `#` comments (the rest of the line is ignored) and
//! blank lines, and report failures with the source name and 1-based line
//! number. All writers use the shortest round-trip decimal form of each
//! float, so identical data always serializes to identical bytes.

use super::types::{Points, SparseGraph};
use crate::error::{Error, Result};
use crate::scalar::Real;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

fn parse_err(source: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: source.to_string(),
        line,
        msg: msg.into(),
    }
}

/// Strips a trailing `#` comment and surrounding whitespace.
fn payload(line: &str) -> &str {
    let stripped = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    stripped.trim()
}

/// Parses a whitespace-separated edge list: one `u v w` triple per line,
/// vertices 0-based, weights positive. The vertex count is one more than the
/// largest index mentioned.
pub fn parse_edge_list<S: Real, R: BufRead>(reader: R, source: &str) -> Result<SparseGraph<S>> {
    let mut edges: Vec<(usize, usize, S)> = Vec::new();
    let mut n = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let body = payload(&line);
        if body.is_empty() {
            continue;
        }
        let mut tok = body.split_whitespace();
        let (u, v, w) = match (tok.next(), tok.next(), tok.next(), tok.next()) {
            (Some(a), Some(b), Some(c), None) => (a, b, c),
            _ => {
                return Err(parse_err(
                    source,
                    lineno,
                    format!("expected `u v w`, got `{body}`"),
                ))
            }
        };
        let u: usize = u
            .parse()
            .map_err(|_| parse_err(source, lineno, format!("bad vertex index `{u}`")))?;
        let v: usize = v
            .parse()
            .map_err(|_| parse_err(source, lineno, format!("bad vertex index `{v}`")))?;
        let w: f64 = w
            .parse()
            .map_err(|_| parse_err(source, lineno, format!("bad edge weight `{w}`")))?;
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v, S::c(w)));
    }
    if edges.is_empty() {
        return Err(Error::NoEdges);
    }
    SparseGraph::from_edges(n, edges)
}

pub fn read_edge_list<S: Real>(path: &Path) -> Result<SparseGraph<S>> {
    let file = File::open(path)?;
    parse_edge_list(BufReader::new(file), &path.display().to_string())
}

/// Writes `u\tv\tw` lines in the graph's canonical (sorted) edge order.
pub fn write_edge_list<S: Real, W: Write>(g: &SparseGraph<S>, mut out: W) -> Result<()> {
    for e in g.edges() {
        writeln!(out, "{}\t{}\t{}", e.u, e.v, e.w.as_f64())?;
    }
    Ok(())
}

/// Parses a point cloud: one point per line, comma-separated coordinates,
/// no header, every line the same width.
pub fn parse_points<S: Real, R: BufRead>(reader: R, source: &str) -> Result<Points<S>> {
    let mut rows: Vec<Vec<S>> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let body = payload(&line);
        if body.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for field in body.split(',') {
            let field = field.trim();
            let x: f64 = field
                .parse()
                .map_err(|_| parse_err(source, lineno, format!("bad coordinate `{field}`")))?;
            row.push(S::c(x));
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(parse_err(
                    source,
                    lineno,
                    format!("expected {} coordinates, got {}", first.len(), row.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(source, 1, "no points in input"));
    }
    Points::from_rows(rows)
}

pub fn read_points<S: Real>(path: &Path) -> Result<Points<S>> {
    let file = File::open(path)?;
    parse_points(BufReader::new(file), &path.display().to_string())
}

pub fn write_points<S: Real, W: Write>(points: &Points<S>, mut out: W) -> Result<()> {
    for i in 0..points.n() {
        let row = points.row(i);
        let mut first = true;
        for x in row {
            if first {
                write!(out, "{}", x.as_f64())?;
                first = false;
            } else {
                write!(out, ",{}", x.as_f64())?;
            }
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Parses a partition file: a `vertex,label` header, then one `v,label` row
/// per vertex. Every vertex 0..n-1 must appear exactly once; rows may be in
/// any order. Returns labels indexed by vertex.
pub fn parse_partition<R: BufRead>(reader: R, source: &str) -> Result<Vec<usize>> {
    let mut labels: Vec<Option<usize>> = Vec::new();
    let mut saw_header = false;
    let mut entries: Vec<(usize, usize)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let body = payload(&line);
        if body.is_empty() {
            continue;
        }
        if !saw_header {
            let normalized: String = body.split(',').map(str::trim).collect::<Vec<_>>().join(",");
            if normalized != "vertex,label" {
                return Err(parse_err(
                    source,
                    lineno,
                    format!("expected header `vertex,label`, got `{body}`"),
                ));
            }
            saw_header = true;
            continue;
        }
        let mut fields = body.split(',').map(str::trim);
        let (v, l) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(parse_err(
                    source,
                    lineno,
                    format!("expected `vertex,label`, got `{body}`"),
                ))
            }
        };
        let v: usize = v
            .parse()
            .map_err(|_| parse_err(source, lineno, format!("bad vertex `{v}`")))?;
        let l: usize = l
            .parse()
            .map_err(|_| parse_err(source, lineno, format!("bad label `{l}`")))?;
        entries.push((v, l));
        if v >= labels.len() {
            labels.resize(v + 1, None);
        }
        if labels[v].is_some() {
            return Err(parse_err(source, lineno, format!("vertex {v} listed twice")));
        }
        labels[v] = Some(l);
    }
    if !saw_header {
        return Err(parse_err(source, 1, "missing `vertex,label` header"));
    }
    let mut out = Vec::with_capacity(labels.len());
    for (v, l) in labels.into_iter().enumerate() {
        match l {
            Some(l) => out.push(l),
            None => {
                return Err(parse_err(
                    source,
                    entries.len() + 1,
                    format!("vertex {v} missing from partition"),
                ))
            }
        }
    }
    Ok(out)
}

pub fn read_partition(path: &Path) -> Result<Vec<usize>> {
    let file = File::open(path)?;
    parse_partition(BufReader::new(file), &path.display().to_string())
}

pub fn write_partition<W: Write>(labels: &[usize], mut out: W) -> Result<()> {
    writeln!(out, "vertex,label")?;
    for (v, l) in labels.iter().enumerate() {
        writeln!(out, "{v},{l}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn edge_list_round_trip() {
        let text = "# a triangle with a tail\n0 1 1.5\n1 2 0.25\n0 2 2\n2 3 0.125 # tail\n";
        let g: SparseGraph<f64> = parse_edge_list(Cursor::new(text), "test").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges().len(), 4);
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let text2 = String::from_utf8(buf).unwrap();
        assert_eq!(text2, "0\t1\t1.5\n0\t2\t2\n1\t2\t0.25\n2\t3\t0.125\n");
        let g2: SparseGraph<f64> = parse_edge_list(Cursor::new(&text2), "round").unwrap();
        assert_eq!(g.edges(), g2.edges());
    }

    #[test]
    fn edge_list_errors_carry_location() {
        let bad = "0 1 1.0\n0 oops 2.0\n";
        let err = parse_edge_list::<f64, _>(Cursor::new(bad), "edges.tsv").unwrap_err();
        match err {
            Error::Parse { path, line, msg } => {
                assert_eq!(path, "edges.tsv");
                assert_eq!(line, 2);
                assert!(msg.contains("oops"));
            }
            other => panic!("wrong error: {other:?}"),
        }
        let empty = "# nothing\n\n";
        assert!(matches!(
            parse_edge_list::<f64, _>(Cursor::new(empty), "e"),
            Err(Error::NoEdges)
        ));
        let short = "0 1\n";
        assert!(matches!(
            parse_edge_list::<f64, _>(Cursor::new(short), "e"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn points_round_trip_and_ragged_row() {
        let text = "0.5,1\n-2,3.25\n";
        let pts: Points<f64> = parse_points(Cursor::new(text), "pts").unwrap();
        assert_eq!(pts.n(), 2);
        assert_eq!(pts.row(1), &[-2.0, 3.25]);
        let mut buf = Vec::new();
        write_points(&pts, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0.5,1\n-2,3.25\n");

        let ragged = "1,2\n3\n";
        assert!(matches!(
            parse_points::<f64, _>(Cursor::new(ragged), "p"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn partition_round_trip_any_order() {
        let text = "vertex,label\n2,0\n0,1\n1,1\n";
        let labels = parse_partition(Cursor::new(text), "part").unwrap();
        assert_eq!(labels, vec![1, 1, 0]);
        let mut buf = Vec::new();
        write_partition(&labels, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "vertex,label\n0,1\n1,1\n2,0\n");
    }

    #[test]
    fn partition_rejects_bad_inputs() {
        assert!(matches!(
            parse_partition(Cursor::new("0,1\n"), "p"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_partition(Cursor::new("vertex,label\n0,1\n0,2\n"), "p"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(parse_partition(Cursor::new("vertex,label\n0,1\n2,0\n"), "p").is_err());
    }
}
