//! Simple undirected graphs, trees, and their Laplacian matrices.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::Deref;

use num_traits::One;

use crate::arith::BigInt;
use crate::error::{Error, Result};

/// A simple undirected graph on the vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph, rejecting self-loops, parallel edges and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::InvalidEdge {
                u,
                v,
                reason: "endpoint out of range",
            });
        }
        if u == v {
            return Err(Error::InvalidEdge {
                u,
                v,
                reason: "self-loop",
            });
        }
        if self.has_edge(u, v) {
            return Err(Error::InvalidEdge {
                u,
                v,
                reason: "duplicate edge",
            });
        }
        insert_sorted(&mut self.adj[u], v);
        insert_sorted(&mut self.adj[v], u);
        insert_sorted(&mut self.edges, (u.min(v), u.max(v)));
        Ok(())
    }

    /// Appends a new isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Parses the edge-list text format: the first non-blank line holds the
    /// vertex count, every following non-blank line an edge `u v`. Lines
    /// starting with `#` are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing vertex count".into(),
        })?;
        let n: usize = header.parse().map_err(|_| Error::Parse {
            line: first,
            msg: format!("bad vertex count {header:?}"),
        })?;
        let mut g = Graph::empty(n);
        for (line, text) in lines {
            let fields: Vec<&str> = text.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad vertex {s:?}"),
                })
            };
            match fields.as_slice() {
                [u, v] => g.add_edge(parse(u)?, parse(v)?)?,
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected two vertices, got {text:?}"),
                    })
                }
            }
        }
        Ok(g)
    }

    /// Inverse of [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.order());
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Product of all vertex degrees. Fails on an isolated vertex, where
    /// the Laplacian ratio is undefined.
    pub fn product_of_degrees(&self) -> Result<BigInt> {
        let mut pd = BigInt::one();
        for (v, nb) in self.adj.iter().enumerate() {
            if nb.is_empty() {
                return Err(Error::ZeroDegree(v));
            }
            pd *= nb.len();
        }
        Ok(pd)
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Largest shortest-path distance, by BFS from every vertex.
    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for v in 0..self.order() {
            for d in self.distances_from(v) {
                best = best.max(d.ok_or(Error::Disconnected)?);
            }
        }
        Ok(best)
    }

    /// The graph with edge `uv` removed; vertex labels are unchanged.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::NoSuchEdge(u, v));
        }
        let key = (u.min(v), u.max(v));
        Graph::from_edges(
            self.order(),
            self.edges.iter().copied().filter(|&e| e != key),
        )
    }

    /// The graph with vertex `v` deleted. Vertices above `v` shift down by
    /// one; the returned map sends old labels to new ones.
    pub fn without_vertex(&self, v: usize) -> (Graph, Vec<Option<usize>>) {
        let map: Vec<Option<usize>> = (0..self.order())
            .map(|x| match x.cmp(&v) {
                std::cmp::Ordering::Less => Some(x),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(x - 1),
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((map[a]?, map[b]?)));
        let g = Graph::from_edges(self.order() - 1, edges).expect("relabeling keeps edges simple");
        (g, map)
    }

    /// Subgraph induced by `keep`, relabeled densely in the order given.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut map = vec![None; self.order()];
        for (i, &x) in keep.iter().enumerate() {
            map[x] = Some(i);
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((map[a]?, map[b]?)));
        Graph::from_edges(keep.len(), edges).expect("induced subgraph is simple")
    }

    /// Applies the vertex relabeling `perm` (old label `i` becomes
    /// `perm[i]`).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order());
        let edges = self.edges.iter().map(|&(a, b)| (perm[a], perm[b]));
        Graph::from_edges(self.order(), edges).expect("permutation keeps edges simple")
    }

    pub fn laplacian(&self) -> LaplacianMatrix {
        LaplacianMatrix::of(self)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.order())?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("]")
    }
}

fn insert_sorted<T: Ord>(v: &mut Vec<T>, x: T) {
    let pos = v.binary_search(&x).unwrap_or_else(|p| p);
    v.insert(pos, x);
}

/// A connected acyclic graph. Validated on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree(Graph);

impl Tree {
    pub fn new(g: Graph) -> Result<Self> {
        if g.order() == 0 {
            return Err(Error::NotATree("empty graph"));
        }
        if g.size() + 1 != g.order() {
            return Err(Error::NotATree("edge count is not n - 1"));
        }
        if !g.is_connected() {
            return Err(Error::NotATree("disconnected"));
        }
        Ok(Tree(g))
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Tree::new(Graph::from_edges(n, edges)?)
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        Tree::new(Graph::parse_edge_list(text)?)
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    /// Builds a tree from a parent array: vertex `i + 1` is joined to
    /// `parent[i]`.
    pub fn from_parents(parent: &[usize]) -> Result<Self> {
        let n = parent.len() + 1;
        Tree::from_edges(n, parent.iter().enumerate().map(|(i, &p)| (i + 1, p)))
    }

    /// The vertices of a longest path, found by a double BFS sweep.
    pub fn diametral_path(&self) -> Vec<usize> {
        let far = |src: usize| {
            let dist = self.distances_from(src);
            (0..self.order())
                .max_by_key(|&v| (dist[v].unwrap(), std::cmp::Reverse(v)))
                .unwrap()
        };
        let a = far(0);
        let b = far(a);
        self.path_between(a, b)
    }

    /// Tree diameter by double sweep.
    pub fn tree_diameter(&self) -> usize {
        self.diametral_path().len() - 1
    }

    /// The unique path from `a` to `b`, inclusive.
    pub fn path_between(&self, a: usize, b: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.order()];
        parent[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for &y in self.neighbors(x) {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![b];
        let mut x = b;
        while x != a {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        path
    }

    /// Vertices of the component containing `start` once edge `(start,
    /// blocked)` is cut.
    pub fn side_of(&self, start: usize, blocked: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in self.neighbors(x) {
                if !(x == start && y == blocked) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    pub fn relabel(&self, perm: &[usize]) -> Tree {
        Tree(self.0.relabel(perm))
    }

    /// Attaches `count` new pendant vertices to `at`.
    pub fn with_pendants(&self, at: usize, count: usize) -> Tree {
        let mut g = self.0.clone();
        for _ in 0..count {
            let w = g.add_vertex();
            g.add_edge(at, w).expect("new pendant edge is simple");
        }
        Tree(g)
    }
}

impl Deref for Tree {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `L(G) = D(G) - A(G)`, with an optional set of struck rows/columns that
/// selects a principal submatrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianMatrix {
    order: usize,
    entries: Vec<i64>,
    struck: Vec<bool>,
}

impl LaplacianMatrix {
    pub fn of(g: &Graph) -> Self {
        let n = g.order();
        let mut entries = vec![0i64; n * n];
        for v in 0..n {
            entries[v * n + v] = g.degree(v) as i64;
        }
        for &(u, v) in g.edges() {
            entries[u * n + v] = -1;
            entries[v * n + u] = -1;
        }
        LaplacianMatrix {
            order: n,
            entries,
            struck: vec![false; n],
        }
    }

    /// Order of the source matrix, ignoring strikes.
    pub fn full_order(&self) -> usize {
        self.order
    }

    pub fn effective_order(&self) -> usize {
        self.struck.iter().filter(|s| !**s).count()
    }

    /// Source labels of the rows still present, ascending.
    pub fn live_indices(&self) -> Vec<usize> {
        (0..self.order).filter(|&i| !self.struck[i]).collect()
    }

    pub fn is_struck(&self, i: usize) -> bool {
        self.struck[i]
    }

    /// Entry by source labels.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.order + j]
    }

    /// Removes the rows and columns of `vertices`. Every index must be in
    /// range, not yet struck, and listed once.
    pub fn strike(&self, vertices: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        for &v in vertices {
            if v >= self.order || out.struck[v] {
                return Err(Error::Index {
                    index: v,
                    order: self.order,
                });
            }
            out.struck[v] = true;
        }
        Ok(out)
    }

    /// The principal submatrix as a dense matrix.
    pub fn to_matrix(&self) -> IntMatrix {
        let live = self.live_indices();
        let m = live.len();
        let mut data = Vec::with_capacity(m * m);
        for &i in &live {
            for &j in &live {
                data.push(self.get(i, j));
            }
        }
        IntMatrix::from_vec(m, data)
    }
}

/// A dense square matrix of machine integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_vec(n: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), n * n, "matrix data must be n*n");
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            data.extend_from_slice(r);
        }
        IntMatrix { n, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    /// Parses rows of whitespace-separated integers (test fixture format).
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<i64>().map_err(|_| Error::Parse {
                        line: i + 1,
                        msg: format!("bad entry {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push((i + 1, row));
        }
        let n = rows.len();
        if let Some((line, _)) = rows.iter().find(|(_, r)| r.len() != n) {
            return Err(Error::Parse {
                line: *line,
                msg: "matrix is not square".into(),
            });
        }
        Ok(IntMatrix::from_rows(
            &rows.into_iter().map(|(_, r)| r).collect::<Vec<_>>(),
        ))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// The matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> IntMatrix {
        let n = self.n;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for r in (0..n).filter(|&r| r != i) {
            for c in (0..n).filter(|&c| c != j) {
                data.push(self.get(r, c));
            }
        }
        IntMatrix { n: n - 1, data }
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n + other.n;
        let mut data = vec![0; n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                data[i * n + j] = self.get(i, j);
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                data[(self.n + i) * n + self.n + j] = other.get(i, j);
            }
        }
        IntMatrix { n, data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn broom53() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let g = Graph::parse_edge_list("2\n0 1").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(
            Graph::parse_edge_list("5\n0 1\n1 2\n2 3\n3 4").unwrap(),
            path(5)
        );
        assert!(matches!(
            Graph::parse_edge_list("3\n0 1\n0 1"),
            Err(Error::InvalidEdge { .. })
        ));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Graph::parse_edge_list("3\n0 3"),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("3\n1 1"),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("3\n0 1 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("x"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list(""),
            Err(Error::Parse { .. })
        ));
        let g = path(4);
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(path(5).degrees(), vec![1, 2, 2, 2, 1]);
        assert_eq!(broom53().degrees(), vec![1, 2, 3, 1, 1]);
        assert_eq!(Graph::empty(1).degrees(), vec![0]);
        let g = broom53();
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.size());
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(path(5).diameter().unwrap(), 4);
        let b64 = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5)]).unwrap();
        assert_eq!(b64.diameter().unwrap(), 4);
        let s6 = Graph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        assert_eq!(s6.diameter().unwrap(), 2);
        assert_eq!(Graph::empty(2).diameter(), Err(Error::Disconnected));
        let t = Tree::new(b64).unwrap();
        assert_eq!(t.tree_diameter(), 4);
    }

    #[test]
    fn product_of_degrees_examples() {
        assert_eq!(path(5).product_of_degrees().unwrap(), BigInt::from(8));
        assert_eq!(broom53().product_of_degrees().unwrap(), BigInt::from(6));
        for n in 3..9 {
            let s = Graph::from_edges(n, (1..n).map(|i| (0, i))).unwrap();
            assert_eq!(s.product_of_degrees().unwrap(), BigInt::from(n - 1));
        }
        assert_eq!(
            Graph::empty(1).product_of_degrees(),
            Err(Error::ZeroDegree(0))
        );
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(
            path(2).laplacian().to_matrix(),
            IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]])
        );
        assert_eq!(
            path(3).laplacian().to_matrix(),
            IntMatrix::from_rows(&[vec![1, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]])
        );
        let b84 =
            Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (3, 6), (3, 7)]).unwrap();
        let l = b84.laplacian().to_matrix();
        for i in 0..8 {
            assert_eq!(l.row(i).iter().sum::<i64>(), 0);
            for j in 0..8 {
                assert_eq!(l.get(i, j), l.get(j, i));
            }
        }
    }

    #[test]
    fn strike_examples() {
        let l = path(3).laplacian();
        assert_eq!(
            l.strike(&[0]).unwrap().to_matrix(),
            IntMatrix::from_rows(&[vec![2, -1], vec![-1, 1]])
        );
        let empty = l.strike(&[0, 1, 2]).unwrap();
        assert_eq!(empty.effective_order(), 0);
        let once = l.strike(&[0, 1]).unwrap();
        assert!(matches!(
            once.strike(&[1, 2]),
            Err(Error::Index { index: 1, .. })
        ));
        assert!(matches!(l.strike(&[3]), Err(Error::Index { .. })));
        assert!(matches!(l.strike(&[2, 2]), Err(Error::Index { .. })));
    }

    #[test]
    fn tree_validation() {
        assert!(Tree::new(path(4)).is_ok());
        assert!(Tree::new(Graph::empty(1)).is_ok());
        assert!(Tree::new(Graph::empty(2)).is_err());
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(Tree::new(tri).is_err());
        let forest = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(Tree::new(forest).is_err());
    }

    #[test]
    fn vertex_and_edge_deletion() {
        let g = broom53();
        let (h, map) = g.without_vertex(2);
        assert_eq!(map, vec![Some(0), Some(1), None, Some(2), Some(3)]);
        assert_eq!(h.edges(), &[(0, 1)]);
        let h = g.without_edge(2, 1).unwrap();
        assert_eq!(h.size(), 3);
        assert_eq!(g.without_edge(0, 4), Err(Error::NoSuchEdge(0, 4)));
    }

    #[test]
    fn tree_paths() {
        let t = Tree::new(broom53()).unwrap();
        let p = t.diametral_path();
        assert_eq!(p.len(), 4);
        assert_eq!(t.path_between(0, 4), vec![0, 1, 2, 4]);
        assert_eq!(t.side_of(2, 1), BTreeSet::from([2, 3, 4]));
    }

    #[test]
    fn matrix_fixture_format() {
        let m = IntMatrix::parse("1 -1\n-1 1\n").unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]));
        assert!(IntMatrix::parse("1 2\n3\n").is_err());
        assert_eq!(IntMatrix::parse("").unwrap().order(), 0);
    }
}
