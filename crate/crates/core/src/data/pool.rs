//! Line-oriented text format for augmented pools (and any labeled dataset).
//!
//! ```text
//! mevolve-pool 1
//! classes <class_count>
//! graphs <graph_count>
//! graph <vertices> <edges> <label> original <id>
//! graph <vertices> <edges> <label> augmented <source_id> <iteration>
//! <u> <v>
//! ```
//!
//! Every `graph` record is followed by exactly `<edges>` edge lines, each
//! with `u < v`, in ascending order. Tokens are separated by one space and
//! lines end with `\n`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{LabeledDataset, Provenance};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

pub const POOL_SCHEMA_VERSION: u32 = 1;
const MAGIC: &str = "mevolve-pool";

pub fn write_pool<W: Write>(pool: &LabeledDataset, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{MAGIC} {POOL_SCHEMA_VERSION}")?;
    writeln!(w, "classes {}", pool.class_count())?;
    writeln!(w, "graphs {}", pool.len())?;
    for (g, y, p) in pool.iter() {
        write!(w, "graph {} {} {y} ", g.vertex_count(), g.edge_count())?;
        match p {
            Provenance::Original { id } => writeln!(w, "original {id}")?,
            Provenance::Augmented { source, iteration } => {
                writeln!(w, "augmented {source} {iteration}")?
            }
        }
        for e in g.edges() {
            writeln!(w, "{} {}", e.u(), e.v())?;
        }
    }
    w.flush()
}

pub fn save_pool(pool: &LabeledDataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_pool(pool, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn load_pool(path: impl AsRef<Path>) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_pool(BufReader::new(file), path)
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    path: PathBuf,
    line: usize,
}

impl<R: BufRead> Lines<R> {
    fn next(&mut self, what: &str) -> Result<String> {
        self.line += 1;
        match self.inner.next() {
            Some(Ok(l)) => Ok(l),
            Some(Err(e)) => Err(Error::io(&self.path, e)),
            None => Err(self.err(format!("unexpected end of file, expected {what}"))),
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Schema {
            path: self.path.clone(),
            line: self.line,
            message: message.into(),
        }
    }

    fn num<T: std::str::FromStr>(&self, tok: Option<&str>, what: &str) -> Result<T> {
        tok.and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err(format!("expected {what}")))
    }

    /// `<keyword> <number>` header line.
    fn header(&mut self, keyword: &str) -> Result<usize> {
        let l = self.next(keyword)?;
        let mut toks = l.split(' ');
        if toks.next() != Some(keyword) {
            return Err(self.err(format!("expected `{keyword} <count>`, found {l:?}")));
        }
        let v = self.num(toks.next(), "a count")?;
        if toks.next().is_some() {
            return Err(self.err("trailing tokens"));
        }
        Ok(v)
    }
}

/// `path` only labels error messages.
pub fn read_pool<R: BufRead>(reader: R, path: impl AsRef<Path>) -> Result<LabeledDataset> {
    let mut lines = Lines {
        inner: reader.lines(),
        path: path.as_ref().to_path_buf(),
        line: 0,
    };
    let magic = lines.next("pool header")?;
    match magic.split_once(' ') {
        Some((MAGIC, v)) => {
            let version: u32 = lines.num(Some(v), "a schema version")?;
            if version != POOL_SCHEMA_VERSION {
                return Err(lines.err(format!(
                    "unsupported pool schema version {version}, expected {POOL_SCHEMA_VERSION}"
                )));
            }
        }
        _ => return Err(lines.err(format!("not a pool file: header {magic:?}"))),
    }
    let classes = lines.header("classes")?;
    let count = lines.header("graphs")?;
    let mut pool = LabeledDataset::new(classes);
    for _ in 0..count {
        let l = lines.next("a graph record")?;
        let toks: Vec<&str> = l.split(' ').collect();
        if toks.first() != Some(&"graph") {
            return Err(lines.err(format!("expected a graph record, found {l:?}")));
        }
        let n: usize = lines.num(toks.get(1).copied(), "vertex count")?;
        let m: usize = lines.num(toks.get(2).copied(), "edge count")?;
        let y: usize = lines.num(toks.get(3).copied(), "label")?;
        let prov = match (toks.get(4).copied(), toks.len()) {
            (Some("original"), 6) => Provenance::Original {
                id: lines.num(toks.get(5).copied(), "original id")?,
            },
            (Some("augmented"), 7) => Provenance::Augmented {
                source: lines.num(toks.get(5).copied(), "source id")?,
                iteration: lines.num(toks.get(6).copied(), "iteration")?,
            },
            _ => return Err(lines.err(format!("malformed provenance in {l:?}"))),
        };
        if y >= classes {
            return Err(lines.err(format!("label {y} outside 0..{classes}")));
        }
        let mut edges = std::collections::BTreeSet::new();
        let mut last: Option<Edge> = None;
        for _ in 0..m {
            let l = lines.next("an edge line")?;
            let mut t = l.split(' ');
            let u: usize = lines.num(t.next(), "edge endpoint")?;
            let v: usize = lines.num(t.next(), "edge endpoint")?;
            if t.next().is_some() || u >= v || v >= n {
                return Err(lines.err(format!("invalid edge line {l:?}")));
            }
            let e = Edge::ordered(u, v);
            if last.is_some_and(|p| p >= e) {
                return Err(lines.err("edges out of order or duplicated"));
            }
            last = Some(e);
            edges.insert(e);
        }
        pool.push(Graph::from_edge_set(n, edges), y, prov)?;
    }
    if let Some(extra) = lines.inner.next() {
        lines.line += 1;
        let l = extra.map_err(|e| Error::io(&lines.path, e))?;
        if !l.is_empty() {
            return Err(lines.err(format!("unexpected trailing content {l:?}")));
        }
    }
    Ok(pool)
}
