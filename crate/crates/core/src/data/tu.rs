//! Reader for the TU benchmark layout: a directory holding
//! `<name>_A.txt` (one `u, v` pair per line, 1-based global node ids),
//! `<name>_graph_indicator.txt` (line `i` = graph id of node `i`, 1-based) and
//! `<name>_graph_labels.txt` (line `g` = label of graph `g`).

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use log::{info, warn};

use super::LabeledDataset;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// A loaded TU dataset plus what the loader had to normalize.
#[derive(Debug, Clone)]
pub struct TuDataset {
    pub dataset: LabeledDataset,
    /// `label_values[k]` is the raw label mapped to class `k`.
    pub label_values: Vec<i64>,
    pub self_loops_dropped: usize,
    /// Files with the dataset prefix that were not read (attributes etc.).
    pub ignored_files: Vec<String>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn parse_int(path: &Path, line: usize, tok: &str) -> Result<i64> {
    tok.trim().parse::<i64>().map_err(|_| Error::Parse {
        path: path.to_path_buf(),
        line,
        message: format!("expected an integer, found {:?}", tok.trim()),
    })
}

/// Non-blank lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

pub fn load_tu_dataset(dir: impl AsRef<Path>, name: &str) -> Result<TuDataset> {
    let dir = dir.as_ref();
    if !dir.is_dir() {
        return Err(Error::io(
            dir,
            std::io::Error::new(std::io::ErrorKind::NotFound, "dataset directory not found"),
        ));
    }
    let file = |suffix: &str| -> PathBuf { dir.join(format!("{name}_{suffix}.txt")) };
    let labels_path = file("graph_labels");
    let indicator_path = file("graph_indicator");
    let edges_path = file("A");

    let mut raw_labels = Vec::new();
    for (ln, l) in lines(&read(&labels_path)?) {
        raw_labels.push(parse_int(&labels_path, ln, l)?);
    }
    let graph_count = raw_labels.len();

    let label_values: Vec<i64> = raw_labels.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let class_of: BTreeMap<i64, usize> = label_values.iter().enumerate().map(|(k, &v)| (v, k)).collect();

    // node_graph[i] = (0-based graph index, 0-based local vertex id) of global node i+1
    let mut node_graph = Vec::new();
    let mut sizes = vec![0usize; graph_count];
    for (ln, l) in lines(&read(&indicator_path)?) {
        let gid = parse_int(&indicator_path, ln, l)?;
        if gid < 1 || gid as usize > graph_count {
            return Err(parse_err(
                &indicator_path,
                ln,
                format!("graph id {gid} outside 1..={graph_count}"),
            ));
        }
        let g = gid as usize - 1;
        node_graph.push((g, sizes[g]));
        sizes[g] += 1;
    }

    let mut edge_sets = vec![BTreeSet::new(); graph_count];
    let mut self_loops = 0;
    for (ln, l) in lines(&read(&edges_path)?) {
        let mut toks = l.split(',');
        let (Some(a), Some(b), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(parse_err(&edges_path, ln, format!("expected `u, v`, found {l:?}")));
        };
        let (a, b) = (parse_int(&edges_path, ln, a)?, parse_int(&edges_path, ln, b)?);
        let node = |x: i64| -> Result<(usize, usize)> {
            if x < 1 || x as usize > node_graph.len() {
                return Err(parse_err(
                    &edges_path,
                    ln,
                    format!("node {x} outside 1..={}", node_graph.len()),
                ));
            }
            Ok(node_graph[x as usize - 1])
        };
        let ((ga, va), (gb, vb)) = (node(a)?, node(b)?);
        if ga != gb {
            return Err(parse_err(
                &edges_path,
                ln,
                format!("edge joins node {a} of graph {} to node {b} of graph {}", ga + 1, gb + 1),
            ));
        }
        if va == vb {
            self_loops += 1;
            warn!("{}:{ln}: dropping self-loop on node {a}", edges_path.display());
            continue;
        }
        edge_sets[ga].insert(Edge::ordered(va, vb));
    }

    let graphs = sizes
        .iter()
        .zip(edge_sets)
        .map(|(&n, set)| Graph::from_edge_set(n, set))
        .collect();
    let labels = raw_labels.iter().map(|v| class_of[v]).collect();
    let dataset = LabeledDataset::from_parts(graphs, labels, label_values.len())?;

    let known: BTreeSet<PathBuf> = [labels_path, indicator_path, edges_path].into_iter().collect();
    let prefix = format!("{name}_");
    let mut ignored_files: Vec<String> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| !known.contains(p))
        .filter_map(|p| p.file_name().and_then(|f| f.to_str()).map(str::to_owned))
        .filter(|f| f.starts_with(&prefix))
        .collect();
    ignored_files.sort();
    for f in &ignored_files {
        info!("ignoring {f}: only topology is used");
    }

    Ok(TuDataset {
        dataset,
        label_values,
        self_loops_dropped: self_loops,
        ignored_files,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs::write;

    fn fixture(a: &str, ind: &str, labels: &str) -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path().join("T_A.txt"), a).unwrap();
        write(dir.path().join("T_graph_indicator.txt"), ind).unwrap();
        write(dir.path().join("T_graph_labels.txt"), labels).unwrap();
        dir
    }

    #[test]
    fn triangle_and_edge() {
        let dir = fixture(
            "1, 2\n2, 3\n3, 1\n4, 5\n",
            "1\n1\n1\n2\n2\n",
            "1\n-1\n",
        );
        let tu = load_tu_dataset(dir.path(), "T").unwrap();
        let d = &tu.dataset;
        assert_eq!(d.len(), 2);
        assert_eq!((d.graphs()[0].vertex_count(), d.graphs()[0].edge_count()), (3, 3));
        assert_eq!((d.graphs()[1].vertex_count(), d.graphs()[1].edge_count()), (2, 1));
        assert_eq!(tu.label_values, vec![-1, 1]);
        assert_eq!(d.labels(), &[1, 0]);
    }

    #[test]
    fn reciprocal_lines_collapse_and_self_loops_drop() {
        let dir = fixture("1, 2\n2, 1\n2, 2\n", "1\n1\n", "0\n");
        let tu = load_tu_dataset(dir.path(), "T").unwrap();
        assert_eq!(tu.dataset.graphs()[0].edge_count(), 1);
        assert_eq!(tu.self_loops_dropped, 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let dir = fixture("1, 2\n1, x\n", "1\n1\n", "0\n");
        let err = load_tu_dataset(dir.path(), "T").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        let dir = fixture("1, 3\n", "1\n1\n2\n", "0\n1\n");
        let err = load_tu_dataset(dir.path(), "T").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");

        let dir = fixture("1, 9\n", "1\n1\n", "0\n");
        assert!(load_tu_dataset(dir.path(), "T").is_err());
    }

    #[test]
    fn missing_files() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(load_tu_dataset(dir.path(), "T"), Err(Error::Io { .. })));
        assert!(matches!(
            load_tu_dataset(dir.path().join("nope"), "T"),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn attribute_files_are_reported() {
        let dir = fixture("1, 2\n", "1\n1\n", "0\n");
        write(dir.path().join("T_node_labels.txt"), "0\n0\n").unwrap();
        let tu = load_tu_dataset(dir.path(), "T").unwrap();
        assert_eq!(tu.ignored_files, vec!["T_node_labels.txt".to_string()]);
    }
}
