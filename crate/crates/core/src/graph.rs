//! Immutable undirected, unweighted graphs and the structural queries the
//! augmentation mappings are built on: neighborhoods, resource-allocation
//! similarity, simple-path search and connectivity.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Undirected edge stored with its endpoints in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Self-pairs are rejected.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::input(format!("self-loop on vertex {a}")));
        }
        Ok(Self::ordered(a, b))
    }

    pub(crate) fn ordered(a: usize, b: usize) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Self { u: a, v: b }
        } else {
            Self { u: b, v: a }
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

impl From<Edge> for (usize, usize) {
    fn from(e: Edge) -> Self {
        (e.u, e.v)
    }
}

/// Simple undirected graph on dense vertex ids `0..n`.
///
/// Equality is structural: same vertex count and same edge set.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicates and reversed copies
    /// collapse; self-loops and out-of-range endpoints are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::input(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            set.insert(Edge::new(a, b)?);
        }
        Ok(Self::from_edge_set(n, set))
    }

    pub(crate) fn from_edge_set(n: usize, set: BTreeSet<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in &set {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self {
            n,
            edges: set.into_iter().collect(),
            adj,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edge_set(n, BTreeSet::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && a != b && self.adj[a].binary_search(&b).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::input(format!(
                "vertex {v} out of range for {} vertices",
                self.n
            )))
        } else {
            Ok(())
        }
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> Result<&[usize]> {
        self.check_vertex(v)?;
        Ok(&self.adj[v])
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.neighbors(v).map(<[usize]>::len)
    }

    /// Resource-allocation index: sum of `1 / deg(z)` over the common
    /// neighbors `z` of `i` and `j`.
    pub fn ra_score(&self, i: usize, j: usize) -> Result<f64> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::input(format!("RA score needs distinct vertices, got {i} twice")));
        }
        Ok(self.ra_unchecked(i, j))
    }

    pub(crate) fn ra_unchecked(&self, i: usize, j: usize) -> f64 {
        // Merge the two sorted neighbor lists; summation follows ascending z.
        let (a, b) = (&self.adj[i], &self.adj[j]);
        let (mut x, mut y) = (0, 0);
        let mut score = 0.0;
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => {
                    score += 1.0 / self.adj[a[x]].len() as f64;
                    x += 1;
                    y += 1;
                }
            }
        }
        score
    }

    /// All simple paths with exactly `len` edges from `i` to `j`, ordered
    /// lexicographically by their internal vertex sequence.
    pub fn find_paths(&self, i: usize, j: usize, len: usize) -> Result<Vec<Path>> {
        self.check_path_query(i, j, len)?;
        let mut out = Vec::new();
        let mut stack = vec![i];
        let mut on_path = vec![false; self.n];
        on_path[i] = true;
        self.collect_paths(j, len, &mut stack, &mut on_path, &mut out);
        Ok(out)
    }

    fn collect_paths(
        &self,
        target: usize,
        len: usize,
        stack: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Path>,
    ) {
        let here = *stack.last().expect("path stack starts non-empty");
        let depth = stack.len() - 1;
        if depth + 1 == len {
            if self.has_edge(here, target) {
                let mut vertices = stack.clone();
                vertices.push(target);
                out.push(Path { vertices });
            }
            return;
        }
        for &next in &self.adj[here] {
            if next == target || on_path[next] {
                continue;
            }
            on_path[next] = true;
            stack.push(next);
            self.collect_paths(target, len, stack, on_path, out);
            stack.pop();
            on_path[next] = false;
        }
    }

    /// Whether any simple path with exactly `len` edges joins `i` and `j`.
    /// Stops at the first one found.
    pub fn has_length_l_path(&self, i: usize, j: usize, len: usize) -> Result<bool> {
        self.check_path_query(i, j, len)?;
        let mut on_path = vec![false; self.n];
        on_path[i] = true;
        Ok(self.path_exists(i, j, len, &mut on_path))
    }

    fn path_exists(&self, here: usize, target: usize, remaining: usize, on_path: &mut [bool]) -> bool {
        if remaining == 1 {
            return self.has_edge(here, target);
        }
        for &next in &self.adj[here] {
            if next == target || on_path[next] {
                continue;
            }
            on_path[next] = true;
            let found = self.path_exists(next, target, remaining - 1, on_path);
            on_path[next] = false;
            if found {
                return true;
            }
        }
        false
    }

    /// Every vertex `j > i` reachable from `i` by a simple path of exactly
    /// `len` edges, in ascending order.
    pub(crate) fn path_endpoints_above(&self, i: usize, len: usize) -> Vec<usize> {
        let mut reached = vec![false; self.n];
        let mut on_path = vec![false; self.n];
        on_path[i] = true;
        self.mark_endpoints(i, len, &mut on_path, &mut reached);
        (i + 1..self.n).filter(|&j| reached[j]).collect()
    }

    fn mark_endpoints(&self, here: usize, remaining: usize, on_path: &mut [bool], reached: &mut [bool]) {
        for &next in &self.adj[here] {
            if on_path[next] {
                continue;
            }
            if remaining == 1 {
                reached[next] = true;
                continue;
            }
            on_path[next] = true;
            self.mark_endpoints(next, remaining - 1, on_path, reached);
            on_path[next] = false;
        }
    }

    fn check_path_query(&self, i: usize, j: usize, len: usize) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::input(format!("path search needs distinct endpoints, got {i} twice")));
        }
        if len < 2 {
            return Err(Error::input(format!("path length must be at least 2, got {len}")));
        }
        Ok(())
    }

    /// Number of connected components; isolated vertices count individually.
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// True for a single component. The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Copy of the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::input(format!(
                "permutation has {} entries for {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::input("relabeling is not a permutation"));
            }
        }
        Self::from_edges(self.n, self.edges.iter().map(|e| (perm[e.u], perm[e.v])))
    }
}

/// Simple path stored as its vertex sequence, head first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<usize>,
}

impl Path {
    pub fn head(&self) -> usize {
        self.vertices[0]
    }

    pub fn tail(&self) -> usize {
        *self.vertices.last().expect("paths have at least two vertices")
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn internal(&self) -> &[usize] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    /// Edges in traversal order from head to tail.
    pub fn edges(&self) -> Vec<Edge> {
        self.vertices
            .windows(2)
            .map(|w| Edge::ordered(w[0], w[1]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn triangle() -> Graph {
        g(3, &[(0, 1), (1, 2), (0, 2)])
    }

    #[test]
    fn neighbors_examples() {
        assert_eq!(triangle().neighbors(0).unwrap(), &[1, 2]);
        assert_eq!(g(3, &[(0, 1), (1, 2)]).neighbors(1).unwrap(), &[0, 2]);
        assert!(g(3, &[(0, 1)]).neighbors(2).unwrap().is_empty());
        assert!(triangle().neighbors(3).is_err());
    }

    #[test]
    fn construction_rejects_bad_edges_and_dedups() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        let dup = g(3, &[(0, 1), (1, 0), (0, 1)]);
        assert_eq!(dup.edge_count(), 1);
        assert!(dup.has_edge(1, 0));
    }

    #[test]
    fn ra_examples() {
        assert_eq!(g(3, &[(0, 1), (1, 2)]).ra_score(0, 2).unwrap(), 0.5);
        assert_eq!(g(2, &[(0, 1)]).ra_score(0, 1).unwrap(), 0.0);
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!((k4.ra_score(0, 1).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(k4.ra_score(2, 2).is_err());
    }

    #[test]
    fn path_examples() {
        let p = triangle().find_paths(0, 2, 2).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].edges(), vec![Edge::ordered(0, 1), Edge::ordered(1, 2)]);

        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let p = c4.find_paths(0, 2, 2).unwrap();
        assert_eq!(p.iter().map(|p| p.internal().to_vec()).collect::<Vec<_>>(), vec![vec![1], vec![3]]);

        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        let p = star.find_paths(1, 2, 2).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].internal(), &[0]);

        assert!(triangle().find_paths(0, 0, 2).is_err());
        assert!(triangle().find_paths(0, 1, 1).is_err());
    }

    #[test]
    fn has_path_examples() {
        assert!(triangle().has_length_l_path(0, 2, 2).unwrap());
        assert!(!Graph::empty(3).has_length_l_path(0, 1, 2).unwrap());
        assert!(g(4, &[(0, 1), (1, 2), (2, 3)]).has_length_l_path(0, 3, 3).unwrap());
    }

    #[test]
    fn path_endpoints_agree_with_has_path() {
        let c5 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]);
        for len in 2..=4 {
            for i in 0..5 {
                let ends = c5.path_endpoints_above(i, len);
                for j in i + 1..5 {
                    assert_eq!(ends.contains(&j), c5.has_length_l_path(i, j, len).unwrap());
                }
            }
        }
    }

    #[test]
    fn connectivity_examples() {
        assert!(triangle().is_connected());
        assert!(!g(4, &[(0, 1), (2, 3)]).is_connected());
        assert!(Graph::empty(1).is_connected());
        assert_eq!(g(5, &[(0, 1), (2, 3)]).component_count(), 3);
    }
}
