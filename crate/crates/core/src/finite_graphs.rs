//! Small explicit graphs with their path metrics: homogeneity checks,
//! isometry search and twisted metrics.

use std::collections::VecDeque;
use std::fmt;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutations::Twist;
use crate::triangle_catalog::{TriangleSet, Triple};

/// Default vertex cap for [`is_metrically_homogeneous`].
pub const DEFAULT_HOMOGENEITY_CAP: usize = 24;
/// Default number of search steps allowed to one homogeneity check.
pub const DEFAULT_SEARCH_BUDGET: usize = 50_000_000;

/// A symmetric matrix of non-negative integer distances with zero diagonal.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        let mut d = Vec::with_capacity(n * n);
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "row {u} has {} entries, expected {n}",
                    row.len()
                )));
            }
            d.extend_from_slice(row);
        }
        let m = Self { n, d };
        for u in 0..n {
            if m.get(u, u) != 0 {
                return Err(Error::InvalidInput(format!("non-zero diagonal at {u}")));
            }
            for v in 0..u {
                if m.get(u, v) != m.get(v, u) {
                    return Err(Error::InvalidInput(format!("asymmetric at ({u},{v})")));
                }
                if m.get(u, v) == 0 {
                    return Err(Error::InvalidInput(format!("zero distance at ({u},{v})")));
                }
            }
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|u| self.row(u).to_vec()).collect()
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    /// A triple of points breaking the triangle inequality, if any.
    pub fn triangle_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if self.get(u, w) > self.get(u, v) + self.get(v, w) {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }

    /// Adjacency lists of the distance-1 relation.
    pub fn unit_neighbors(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|u| (0..self.n).filter(|&v| self.get(u, v) == 1).collect())
            .collect()
    }

    /// Sorted triangle types realized by triples of distinct points.
    pub fn triangle_types(&self) -> Vec<(u32, u32, u32)> {
        let n = self.n;
        let mut seen = std::collections::BTreeSet::new();
        for u in 0..n {
            for v in u + 1..n {
                for w in v + 1..n {
                    let mut t = [self.get(u, v), self.get(u, w), self.get(v, w)];
                    t.sort_unstable();
                    seen.insert((t[0], t[1], t[2]));
                }
            }
        }
        seen.into_iter().collect()
    }

    fn profile_sorted(&self, u: usize) -> Vec<u32> {
        let mut r = self.row(u).to_vec();
        r.sort_unstable();
        r
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DistanceMatrix[{}]", self.n)?;
        for u in 0..self.n {
            writeln!(f, "  {:?}", self.row(u))?;
        }
        Ok(())
    }
}

/// A connected graph with its path metric.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteMetricGraph {
    neighbors: Vec<Vec<usize>>,
    metric: DistanceMatrix,
}

impl fmt::Debug for FiniteMetricGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteMetricGraph(n={}, edges={}, diameter={})",
            self.len(),
            self.edge_count(),
            self.diameter()
        )
    }
}

/// Sorts and deduplicates an edge list into neighbor lists.
fn neighbor_lists(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut nb = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!(
                "edge ({u},{v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("loop at vertex {u}")));
        }
        nb[u].push(v);
        nb[v].push(u);
    }
    for l in &mut nb {
        l.sort_unstable();
        l.dedup();
    }
    Ok(nb)
}

fn components(neighbors: &[Vec<usize>]) -> usize {
    let n = neighbors.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &neighbors[u] {
                if !std::mem::replace(&mut seen[v], true) {
                    stack.push(v);
                }
            }
        }
    }
    count
}

/// All-pairs shortest paths by BFS from every vertex.
pub fn path_metric(neighbors: &[Vec<usize>]) -> Result<DistanceMatrix> {
    let n = neighbors.len();
    if n == 0 {
        return Err(Error::InvalidArgument("graph has no vertices".into()));
    }
    let mut d = vec![u32::MAX; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &neighbors[u] {
                if row[v] == u32::MAX {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if row.contains(&u32::MAX) {
            return Err(Error::Disconnected {
                components: components(neighbors),
            });
        }
    }
    Ok(DistanceMatrix { n, d })
}

impl FiniteMetricGraph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_adjacency(neighbor_lists(n, edges)?)
    }

    /// Builds a graph from neighbor lists, which must be symmetric.
    pub fn from_adjacency(neighbors: Vec<Vec<usize>>) -> Result<Self> {
        let n = neighbors.len();
        let mut edges = Vec::new();
        for (u, l) in neighbors.iter().enumerate() {
            for &v in l {
                if v >= n || !neighbors[v].contains(&u) {
                    return Err(Error::InvalidInput(format!(
                        "adjacency is not symmetric at ({u},{v})"
                    )));
                }
                edges.push((u, v));
            }
        }
        let neighbors = neighbor_lists(n, &edges)?;
        let metric = path_metric(&neighbors)?;
        debug_assert!(metric.triangle_violation().is_none());
        Ok(Self { neighbors, metric })
    }

    pub fn from_bool_matrix(adj: &[Vec<bool>]) -> Result<Self> {
        let n = adj.len();
        let mut edges = Vec::new();
        for (u, row) in adj.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput("adjacency matrix is not square".into()));
            }
            for (v, &e) in row.iter().enumerate() {
                if e != adj[v][u] {
                    return Err(Error::InvalidInput(format!(
                        "adjacency is not symmetric at ({u},{v})"
                    )));
                }
                if e && u < v {
                    edges.push((u, v));
                }
            }
        }
        Self::from_edges(n, &edges)
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.metric.get(u, v) == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, l) in self.neighbors.iter().enumerate() {
            out.extend(l.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.metric.get(u, v)
    }

    pub fn metric(&self) -> &DistanceMatrix {
        &self.metric
    }

    pub fn diameter(&self) -> u32 {
        self.metric.diameter()
    }

    /// Vertices at distance `i` from `u`.
    pub fn fiber(&self, u: usize, i: u32) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.dist(u, v) == i).collect()
    }

    pub fn is_bipartite(&self) -> bool {
        self.edges()
            .iter()
            .all(|&(u, v)| self.dist(0, u) % 2 != self.dist(0, v) % 2)
    }

    /// The unique vertex at distance δ from every vertex, if the graph is
    /// antipodal.
    pub fn antipodal_map(&self) -> Option<Vec<usize>> {
        let delta = self.diameter();
        (0..self.len())
            .map(|u| match self.fiber(u, delta).as_slice() {
                [v] => Some(*v),
                _ => None,
            })
            .collect()
    }

    pub fn is_antipodal(&self) -> bool {
        self.antipodal_map().is_some()
    }

    /// Reads an edge list: one `u v` pair per line, 0-indexed; blank
    /// lines and `#` comments are skipped.
    pub fn read_edge_list<R: BufRead>(input: R) -> Result<Self> {
        let mut edges = Vec::new();
        let mut n = 0;
        for (lineno, line) in input.lines().enumerate() {
            let line = line?;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut it = body.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => {
                    n = n.max(u + 1).max(v + 1);
                    edges.push((u, v));
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected two vertex indices, got {body:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Self::from_edges(n, &edges)
    }

    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&AdjacencyJson {
            n: self.len(),
            adjacency: self.neighbors.clone(),
        })?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let a: AdjacencyJson = serde_json::from_str(text)?;
        if a.adjacency.len() != a.n {
            return Err(Error::InvalidInput(format!(
                "n = {} but {} adjacency rows",
                a.n,
                a.adjacency.len()
            )));
        }
        Self::from_adjacency(a.adjacency)
    }

    /// Realized triangle types as a catalog triangle set (distances of
    /// the graph must fit its own diameter, which they always do).
    pub fn triangle_set(&self) -> Result<TriangleSet> {
        let triples = self
            .metric
            .triangle_types()
            .into_iter()
            .map(|(a, b, c)| Triple::new(a, b, c))
            .collect::<Result<Vec<_>>>()?;
        TriangleSet::from_triples(self.diameter(), triples)
    }
}

/// Adjacency JSON: `{"n": 5, "adjacency": [[1,4],[0,2],...]}`.
#[derive(Debug, Serialize, Deserialize)]
struct AdjacencyJson {
    n: usize,
    adjacency: Vec<Vec<usize>>,
}

pub fn cycle_graph(n: usize) -> Result<FiniteMetricGraph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle length {n} < 3")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    FiniteMetricGraph::from_edges(n, &edges)
}

pub fn path_graph(n: usize) -> Result<FiniteMetricGraph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("path on {n} vertices")));
    }
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    FiniteMetricGraph::from_edges(n, &edges)
}

/// `K_{m,m}` minus a perfect matching. Vertex `i < m` is `aᵢ`, `m + i` is
/// `bᵢ`.
pub fn crown_graph(m: usize) -> Result<FiniteMetricGraph> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "crown graph needs m ≥ 3, got {m}"
        )));
    }
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j {
                edges.push((i, m + j));
            }
        }
    }
    FiniteMetricGraph::from_edges(2 * m, &edges)
}

pub fn complete_multipartite(parts: &[usize]) -> Result<FiniteMetricGraph> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::InvalidArgument(format!("bad part sizes {parts:?}")));
    }
    if parts.len() == 1 && parts[0] > 1 {
        return Err(Error::InvalidArgument(
            "a single part of size > 1 has no edges".into(),
        ));
    }
    let mut label = Vec::new();
    for (p, &s) in parts.iter().enumerate() {
        label.extend(std::iter::repeat_n(p, s));
    }
    let n = label.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if label[u] != label[v] {
                edges.push((u, v));
            }
        }
    }
    FiniteMetricGraph::from_edges(n, &edges)
}

/// `K_m □ K_m`: vertices `(r, c)` adjacent when they share a row or a column.
pub fn rook_graph(m: usize) -> Result<FiniteMetricGraph> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "rook graph needs m ≥ 2, got {m}"
        )));
    }
    let n = m * m;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if u / m == v / m || u % m == v % m {
                edges.push((u, v));
            }
        }
    }
    FiniteMetricGraph::from_edges(n, &edges)
}

pub fn hypercube(dim: u32) -> Result<FiniteMetricGraph> {
    if dim == 0 || dim > 16 {
        return Err(Error::InvalidArgument(format!("hypercube dimension {dim}")));
    }
    let n = 1usize << dim;
    let mut edges = Vec::new();
    for u in 0..n {
        for b in 0..dim {
            let v = u ^ (1 << b);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    FiniteMetricGraph::from_edges(n, &edges)
}

/// The regular icosahedron from a fixed edge list: apex 0, upper ring
/// 1..=5, lower ring 6..=10, apex 11.
pub fn icosahedron() -> FiniteMetricGraph {
    #[rustfmt::skip]
    const EDGES: [(usize, usize); 30] = [
        (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
        (1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
        (6, 7), (7, 8), (8, 9), (9, 10), (10, 6),
        (1, 6), (1, 7), (2, 7), (2, 8), (3, 8),
        (3, 9), (4, 9), (4, 10), (5, 10), (5, 6),
        (11, 6), (11, 7), (11, 8), (11, 9), (11, 10),
    ];
    FiniteMetricGraph::from_edges(12, &EDGES).expect("icosahedron edge list is valid")
}

/// Taylor's double cover of a graph `H` on `h` vertices: two apexes `u`
/// (vertex 0) and `u'` (vertex `2h + 1`), copies `(x, 0) = 1 + x` and
/// `(x, 1) = 1 + h + x`. Each copy induces `H`; `u` sees copy 0, `u'`
/// copy 1; `(x, 0) ~ (y, 1)` iff `x ≠ y` and `x ≁ y` in `H`.
///
/// Applied to `C₅` this yields the icosahedron, and to the empty graph on
/// `m` vertices the crown graph on `m + 1`.
pub fn antipodal_double_cover(h: &[Vec<usize>]) -> Result<FiniteMetricGraph> {
    let m = h.len();
    if m == 0 {
        return Err(Error::InvalidArgument("empty base graph".into()));
    }
    let adj = |x: usize, y: usize| h[x].contains(&y);
    let (u, u2) = (0, 2 * m + 1);
    let mut edges = Vec::new();
    for x in 0..m {
        edges.push((u, 1 + x));
        edges.push((u2, 1 + m + x));
        for y in 0..m {
            if x < y && adj(x, y) {
                edges.push((1 + x, 1 + y));
                edges.push((1 + m + x, 1 + m + y));
            }
            if x != y && !adj(x, y) {
                edges.push((1 + x, 1 + m + y));
            }
        }
    }
    FiniteMetricGraph::from_edges(2 * m + 2, &edges)
}

/// A partial isometry that has no extension to an isometry of the whole
/// space: the points of `domain` map to those of `range` in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomogeneityWitness {
    pub domain: Vec<usize>,
    pub range: Vec<usize>,
}

impl fmt::Display for HomogeneityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.domain, self.range)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous,
    NotHomogeneous(HomogeneityWitness),
}

impl Homogeneity {
    pub fn is_homogeneous(&self) -> bool {
        matches!(self, Homogeneity::Homogeneous)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HomogeneityOptions {
    pub vertex_cap: usize,
    pub step_budget: usize,
}

impl Default for HomogeneityOptions {
    fn default() -> Self {
        Self {
            vertex_cap: DEFAULT_HOMOGENEITY_CAP,
            step_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

pub fn is_metrically_homogeneous(g: &FiniteMetricGraph) -> Result<Homogeneity> {
    check_homogeneity(g.metric(), &HomogeneityOptions::default())
}

/// Homogeneity of a finite metric space.
///
/// Walks a tree of point tuples, one per orbit of the automorphism group
/// on tuples. At each tuple `ā`, every two points with the same distances
/// to `ā` must be exchanged by an automorphism fixing `ā` pointwise; when
/// that fails, `ā a ↦ ā b` is a non-extendable partial isometry. Once the
/// distances to `ā` separate all remaining points, every further
/// extension is forced and the branch is done.
pub fn check_homogeneity(m: &DistanceMatrix, opts: &HomogeneityOptions) -> Result<Homogeneity> {
    if m.len() > opts.vertex_cap {
        return Err(Error::Budget {
            what: "homogeneity check vertices",
            requested: m.len(),
            limit: opts.vertex_cap,
        });
    }
    let steps = std::sync::atomic::AtomicUsize::new(0);
    let search = Search {
        m,
        budget: opts.step_budget,
        steps: &steps,
    };
    let children = match search.expand(&[])? {
        Expansion::Fail(w) => return Ok(Homogeneity::NotHomogeneous(w)),
        Expansion::Leaf => return Ok(Homogeneity::Homogeneous),
        Expansion::Children(c) => c,
    };
    let results: Vec<Result<Option<HomogeneityWitness>>> = children
        .par_iter()
        .map(|&a| search.walk(&mut vec![a]))
        .collect();
    for r in results {
        if let Some(w) = r? {
            return Ok(Homogeneity::NotHomogeneous(w));
        }
    }
    Ok(Homogeneity::Homogeneous)
}

struct Search<'a> {
    m: &'a DistanceMatrix,
    budget: usize,
    steps: &'a std::sync::atomic::AtomicUsize,
}

enum Expansion {
    Fail(HomogeneityWitness),
    Leaf,
    Children(Vec<usize>),
}

impl Search<'_> {
    fn tick(&self, n: usize) -> Result<()> {
        let used = self
            .steps
            .fetch_add(n, std::sync::atomic::Ordering::Relaxed)
            + n;
        if used > self.budget {
            return Err(Error::Budget {
                what: "homogeneity search steps",
                requested: used,
                limit: self.budget,
            });
        }
        Ok(())
    }

    fn walk(&self, tuple: &mut Vec<usize>) -> Result<Option<HomogeneityWitness>> {
        match self.expand(tuple)? {
            Expansion::Fail(w) => Ok(Some(w)),
            Expansion::Leaf => Ok(None),
            Expansion::Children(c) => {
                for a in c {
                    tuple.push(a);
                    let r = self.walk(tuple)?;
                    tuple.pop();
                    if r.is_some() {
                        return Ok(r);
                    }
                }
                Ok(None)
            }
        }
    }

    /// Orbits of the pointwise stabilizer of `tuple` inside each class of
    /// points with equal distance profile.
    fn expand(&self, tuple: &[usize]) -> Result<Expansion> {
        let m = self.m;
        let n = m.len();
        let rest: Vec<usize> = (0..n).filter(|v| !tuple.contains(v)).collect();
        let mut classes: std::collections::BTreeMap<Vec<u32>, Vec<usize>> = Default::default();
        for &v in &rest {
            let key = tuple.iter().map(|&a| m.get(a, v)).collect();
            classes.entry(key).or_default().push(v);
        }
        if classes.values().all(|c| c.len() == 1) {
            return Ok(Expansion::Leaf);
        }
        let mut children = Vec::new();
        for class in classes.values() {
            let lead = class[0];
            children.push(lead);
            for &b in &class[1..] {
                let mut pre: Vec<usize> = tuple.to_vec();
                let mut img: Vec<usize> = tuple.to_vec();
                pre.push(lead);
                img.push(b);
                if self.extend(&pre, &img)?.is_none() {
                    // `b` lies outside the orbit of `lead`.
                    return Ok(Expansion::Fail(HomogeneityWitness {
                        domain: pre,
                        range: img,
                    }));
                }
            }
        }
        Ok(Expansion::Children(children))
    }

    /// Extends the partial isometry `pre ↦ img` to an isometry, if possible.
    fn extend(&self, pre: &[usize], img: &[usize]) -> Result<Option<Vec<usize>>> {
        let mut steps = 0;
        let r = extend_isometry(self.m, self.m, pre, img, &mut steps, usize::MAX);
        self.tick(steps)?;
        Ok(r)
    }
}

/// Backtracking search for an isometry `a → b` that extends `pre ↦ img`.
/// Counts visited nodes in `steps` and gives up (returns `None`) past
/// `limit`.
fn extend_isometry(
    a: &DistanceMatrix,
    b: &DistanceMatrix,
    pre: &[usize],
    img: &[usize],
    steps: &mut usize,
    limit: usize,
) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for (&x, &y) in pre.iter().zip(img) {
        map[x] = y;
        used[y] = true;
    }
    for (i, &x) in pre.iter().enumerate() {
        for (j, &y) in pre.iter().enumerate() {
            if a.get(x, y) != b.get(img[i], img[j]) {
                return None;
            }
        }
    }
    let prof_a: Vec<_> = (0..n).map(|u| a.profile_sorted(u)).collect();
    let prof_b: Vec<_> = (0..n).map(|u| b.profile_sorted(u)).collect();
    if pre.iter().zip(img).any(|(&x, &y)| prof_a[x] != prof_b[y]) {
        return None;
    }
    let order: Vec<usize> = {
        // Points closest to what is already placed come first, so that
        // each new choice is tightly constrained.
        let mut placed: Vec<usize> = pre.to_vec();
        let mut left: Vec<usize> = (0..n).filter(|v| map[*v] == usize::MAX).collect();
        let mut order = Vec::new();
        while !left.is_empty() {
            let pos = if placed.is_empty() {
                0
            } else {
                (0..left.len())
                    .min_by_key(|&i| placed.iter().map(|&p| a.get(p, left[i])).min())
                    .expect("non-empty")
            };
            let v = left.remove(pos);
            placed.push(v);
            order.push(v);
        }
        order
    };
    #[allow(clippy::too_many_arguments)]
    fn go(
        a: &DistanceMatrix,
        b: &DistanceMatrix,
        prof_a: &[Vec<u32>],
        prof_b: &[Vec<u32>],
        order: &[usize],
        placed: &mut Vec<usize>,
        map: &mut [usize],
        used: &mut [bool],
        steps: &mut usize,
        limit: usize,
    ) -> bool {
        let Some((&x, rest)) = order.split_first() else {
            return true;
        };
        for y in 0..b.len() {
            if used[y] || prof_a[x] != prof_b[y] {
                continue;
            }
            *steps += 1;
            if *steps > limit {
                return false;
            }
            if placed.iter().all(|&p| a.get(p, x) == b.get(map[p], y)) {
                map[x] = y;
                used[y] = true;
                placed.push(x);
                if go(a, b, prof_a, prof_b, rest, placed, map, used, steps, limit) {
                    return true;
                }
                placed.pop();
                used[y] = false;
                map[x] = usize::MAX;
            }
        }
        false
    }
    let mut placed = pre.to_vec();
    if go(
        a,
        b,
        &prof_a,
        &prof_b,
        &order,
        &mut placed,
        &mut map,
        &mut used,
        steps,
        limit,
    ) {
        Some(map)
    } else {
        None
    }
}

/// An isometry from `a` onto `b` (`map[u]` is the image of `u`), if any.
pub fn find_isometry(a: &DistanceMatrix, b: &DistanceMatrix) -> Option<Vec<usize>> {
    let mut steps = 0;
    extend_isometry(a, b, &[], &[], &mut steps, usize::MAX)
}

/// The distance structure obtained by relabelling a graph's distances.
#[derive(Debug, Clone)]
pub struct TwistedMetric {
    pub matrix: DistanceMatrix,
    pub report: TwistReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    /// Points `(u, v, w)` with `d'(u,w) > d'(u,v) + d'(v,w)`.
    pub triangle_violation: Option<(usize, usize, usize)>,
    /// Components of the `d' = 1` relation.
    pub unit_components: usize,
    /// Some `k < δ` with no `(1, k, k+1)` triangle.
    pub missing_geodesic: Option<u32>,
    /// Whether `d'` equals the path metric of its `d' = 1` graph.
    pub is_path_metric: bool,
}

impl TwistReport {
    pub fn is_valid(&self) -> bool {
        self.triangle_violation.is_none()
            && self.unit_components == 1
            && self.missing_geodesic.is_none()
            && self.is_path_metric
    }
}

impl TwistedMetric {
    /// The graph whose path metric is `d'`, when the report is valid.
    pub fn graph(&self) -> Option<FiniteMetricGraph> {
        if !self.report.is_valid() {
            return None;
        }
        FiniteMetricGraph::from_adjacency(self.matrix.unit_neighbors()).ok()
    }
}

/// Replaces every distance `d(u,v)` of `g` by `t(d(u,v))`.
pub fn apply_twist_metric(g: &FiniteMetricGraph, t: &Twist) -> Result<TwistedMetric> {
    if t.delta() != g.diameter() {
        return Err(Error::DimensionMismatch {
            left: g.diameter(),
            right: t.delta(),
        });
    }
    let n = g.len();
    let d: Vec<u32> = g
        .metric
        .d
        .iter()
        .map(|&x| if x == 0 { 0 } else { t.image(x) })
        .collect();
    let matrix = DistanceMatrix { n, d };
    let unit = matrix.unit_neighbors();
    let unit_components = components(&unit);
    let is_path_metric = unit_components == 1 && path_metric(&unit).is_ok_and(|pm| pm == matrix);
    let types = matrix.triangle_types();
    let delta = t.delta();
    let missing_geodesic = (1..delta).find(|&k| !types.contains(&(1, k, k + 1)));
    let report = TwistReport {
        triangle_violation: matrix.triangle_violation(),
        unit_components,
        missing_geodesic,
        is_path_metric,
    };
    Ok(TwistedMetric { matrix, report })
}

/// Outcome of testing the antipodal law `d(u,v) = δ − d(u',v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AntipodalLaw {
    Holds,
    Fails {
        u: usize,
        v: usize,
    },
    /// Precondition failed: `vertex` has `partners` vertices at distance δ.
    NotAntipodal {
        vertex: usize,
        partners: usize,
    },
}

pub fn check_antipodal_law(g: &FiniteMetricGraph) -> AntipodalLaw {
    let delta = g.diameter();
    let mut partner = vec![0; g.len()];
    for (u, p) in partner.iter_mut().enumerate() {
        match g.fiber(u, delta).as_slice() {
            [v] => *p = *v,
            other => {
                return AntipodalLaw::NotAntipodal {
                    vertex: u,
                    partners: other.len(),
                }
            }
        }
    }
    for (u, &pu) in partner.iter().enumerate() {
        for v in 0..g.len() {
            if g.dist(u, v) != delta - g.dist(pu, v) {
                return AntipodalLaw::Fails { u, v };
            }
        }
    }
    AntipodalLaw::Holds
}

/// The `(1 2)` twist of a diameter-2 graph, i.e. its complement.
#[derive(Debug, Clone)]
pub struct ComplementTwist {
    /// Neighbor lists of the complement.
    pub complement: Vec<Vec<usize>>,
    pub components: usize,
    /// Homogeneity of the complement, when it is connected.
    pub homogeneous: Option<bool>,
}

impl ComplementTwist {
    /// The complement is again a connected metrically homogeneous graph.
    pub fn is_twistable(&self) -> bool {
        self.components == 1 && self.homogeneous == Some(true)
    }
}

pub fn complement_twist(g: &FiniteMetricGraph) -> Result<ComplementTwist> {
    if g.diameter() != 2 {
        return Err(Error::InvalidInput(format!(
            "complement twist needs diameter 2, got {}",
            g.diameter()
        )));
    }
    let n = g.len();
    let complement: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| v != u && !g.adjacent(u, v)).collect())
        .collect();
    let comps = components(&complement);
    let homogeneous = if comps == 1 {
        let h = FiniteMetricGraph::from_adjacency(complement.clone())?;
        Some(is_metrically_homogeneous(&h)?.is_homogeneous())
    } else {
        None
    };
    Ok(ComplementTwist {
        complement,
        components: comps,
        homogeneous,
    })
}
