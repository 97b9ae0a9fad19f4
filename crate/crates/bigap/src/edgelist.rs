//! Plain-text edge-list formats, the laboratory's only on-disk graph
//! representation.
//!
//! Bipartite format: first line `n1 n2 m`, then `m` lines `i j` with 0-based
//! left/right indices. Plain-graph format: first line `n m`, then `a b`
//! pairs with `a < b`. Both use single spaces, ASCII decimal, LF line
//! endings, and no trailing content — writers and readers here are exact
//! inverses, and the round trip is tested.
//!
//! Parse errors carry the 1-based line number (the CLI surfaces them with
//! exit code 2), and loaded graphs pass through the checked constructors so
//! a malformed file can never smuggle in a duplicate edge or a bad index.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graphgen::{BipartiteGraph, Graph};

/// Serialize a bipartite graph in the `n1 n2 m` edge-list format.
pub fn write_bipartite(g: &BipartiteGraph, w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "{} {} {}", g.n1(), g.n2(), g.m())?;
    for &(i, j) in g.edges() {
        writeln!(w, "{i} {j}")?;
    }
    Ok(())
}

/// Serialize a plain graph in the `n m` edge-list format.
pub fn write_plain(g: &Graph, w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "{} {}", g.n(), g.m())?;
    for &(a, b) in g.edges() {
        writeln!(w, "{a} {b}")?;
    }
    Ok(())
}

/// Write a bipartite graph to a file.
pub fn save_bipartite(g: &BipartiteGraph, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    write_bipartite(g, &mut w).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

/// Parse a bipartite graph from a reader. `origin` names the source in
/// errors (a path, or `<stdin>`).
pub fn read_bipartite(r: impl BufRead, origin: &str) -> Result<BipartiteGraph> {
    let mut lines = NumberedLines::new(r, origin);
    let (line_no, header) = lines.next_required("header `n1 n2 m`")?;
    let fields = parse_fields::<3>(&header, origin, line_no, "n1 n2 m")?;
    let [n1, n2, m] = fields;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = lines.next_required("edge line `i j`")?;
        let [i, j] = parse_fields::<2>(&line, origin, line_no, "i j")?;
        edges.push((i, j));
    }
    lines.expect_end()?;
    BipartiteGraph::new(n1, n2, edges).map_err(|e| Error::Parse {
        path: origin.to_string(),
        line: 1,
        message: e.to_string(),
    })
}

/// Parse a plain graph from a reader.
pub fn read_plain(r: impl BufRead, origin: &str) -> Result<Graph> {
    let mut lines = NumberedLines::new(r, origin);
    let (line_no, header) = lines.next_required("header `n m`")?;
    let [n, m] = parse_fields::<2>(&header, origin, line_no, "n m")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = lines.next_required("edge line `a b`")?;
        let [a, b] = parse_fields::<2>(&line, origin, line_no, "a b")?;
        edges.push((a, b));
    }
    lines.expect_end()?;
    Graph::new(n, edges).map_err(|e| Error::Parse {
        path: origin.to_string(),
        line: 1,
        message: e.to_string(),
    })
}

/// Load a bipartite graph from a file.
pub fn load_bipartite(path: &Path) -> Result<BipartiteGraph> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_bipartite(std::io::BufReader::new(file), &path.display().to_string())
}

/// Line iterator that tracks 1-based numbers and builds positioned errors.
struct NumberedLines<R> {
    reader: R,
    origin: String,
    line_no: usize,
}

impl<R: BufRead> NumberedLines<R> {
    fn new(reader: R, origin: &str) -> Self {
        NumberedLines { reader, origin: origin.to_string(), line_no: 0 }
    }

    fn next_line(&mut self) -> Result<Option<String>> {
        let mut buf = String::new();
        let n = self.reader.read_line(&mut buf).map_err(|e| Error::io(&self.origin, e))?;
        if n == 0 {
            return Ok(None);
        }
        self.line_no += 1;
        while buf.ends_with('\n') || buf.ends_with('\r') {
            buf.pop();
        }
        Ok(Some(buf))
    }

    fn next_required(&mut self, what: &str) -> Result<(usize, String)> {
        match self.next_line()? {
            Some(line) => Ok((self.line_no, line)),
            None => Err(Error::Parse {
                path: self.origin.clone(),
                line: self.line_no + 1,
                message: format!("unexpected end of file, expected {what}"),
            }),
        }
    }

    /// Anything after the declared edge count (other than a final blank) is
    /// an error: trailing garbage usually means a truncated or doubled write.
    fn expect_end(&mut self) -> Result<()> {
        while let Some(line) = self.next_line()? {
            if !line.trim().is_empty() {
                return Err(Error::Parse {
                    path: self.origin.clone(),
                    line: self.line_no,
                    message: format!("unexpected content after the declared edge count: `{line}`"),
                });
            }
        }
        Ok(())
    }
}

/// Split a line into exactly `N` whitespace-separated usize fields.
fn parse_fields<const N: usize>(
    line: &str,
    origin: &str,
    line_no: usize,
    expected: &str,
) -> Result<[usize; N]> {
    let raw: Vec<&str> = line.split_whitespace().collect();
    if raw.len() != N {
        return Err(Error::Parse {
            path: origin.to_string(),
            line: line_no,
            message: format!("expected {N} fields `{expected}`, found {}", raw.len()),
        });
    }
    let mut out = [0usize; N];
    for (slot, token) in out.iter_mut().zip(&raw) {
        *slot = token.parse().map_err(|_| Error::Parse {
            path: origin.to_string(),
            line: line_no,
            message: format!("`{token}` is not a nonnegative integer"),
        })?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::sample_bipartite;
    use crate::rng::{derive_stream, SeedSpec};

    fn to_string_bipartite(g: &BipartiteGraph) -> String {
        let mut buf = Vec::new();
        write_bipartite(g, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn bipartite_round_trip_is_exact() {
        let mut s = derive_stream(SeedSpec::new(5, 0));
        let g = sample_bipartite(10, 14, 0.25, &mut s).unwrap();
        let text = to_string_bipartite(&g);
        let back = read_bipartite(text.as_bytes(), "<memory>").unwrap();
        assert_eq!(g, back);
        // And the re-serialization is byte-identical.
        assert_eq!(text, to_string_bipartite(&back));
    }

    #[test]
    fn plain_round_trip_is_exact() {
        let mut s = derive_stream(SeedSpec::new(5, 1));
        let g = crate::graphgen::sample_er(20, 0.2, &mut s).unwrap();
        let mut buf = Vec::new();
        write_plain(&g, &mut buf).unwrap();
        let back = read_plain(&buf[..], "<memory>").unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn empty_graph_serializes_to_header_only() {
        let g = BipartiteGraph::new(4, 7, vec![]).unwrap();
        assert_eq!(to_string_bipartite(&g), "4 7 0\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = read_bipartite("2 3\n".as_bytes(), "g.txt").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");

        let err = read_bipartite("2 3 2\n0 0\n".as_bytes(), "g.txt").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "missing edge line: {err}");

        let err = read_bipartite("2 3 1\n0 x\n".as_bytes(), "g.txt").unwrap_err();
        match err {
            Error::Parse { line, ref message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains('x'), "{message}");
            }
            other => panic!("expected parse error, got {other}"),
        }

        let err = read_bipartite("2 3 1\n0 1\n0 2\n".as_bytes(), "g.txt").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "trailing content: {err}");
    }

    #[test]
    fn invalid_edges_are_rejected_on_load() {
        let err = read_bipartite("2 3 1\n5 0\n".as_bytes(), "g.txt").unwrap_err();
        assert!(err.to_string().contains("out of range"), "{err}");
        let err = read_bipartite("2 3 2\n0 0\n0 0\n".as_bytes(), "g.txt").unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
    }

    #[test]
    fn crlf_input_is_tolerated() {
        let g = read_bipartite("2 3 1\r\n1 2\r\n".as_bytes(), "g.txt").unwrap();
        assert_eq!(g.edges(), &[(1, 2)]);
    }
}
