//! Finite simple graphs and their edge polytopes.

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;

const CYCLE_LIMIT: usize = 16;
const CLASS_LIMIT: usize = 8;

/// A simple graph on vertices `1..=n`. Edges are stored as sorted pairs
/// `(i, j)` with `i < j`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::new(raw.n, raw.edges.into_iter().map(|[i, j]| (i, j)).collect())
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph { n: g.n, edges: g.edges.into_iter().map(|(i, j)| [i, j]).collect() }
    }
}

impl Graph {
    /// Edges may be given in either orientation; loops, repeated edges and
    /// out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for (i, j) in edges {
            if i == j {
                return Err(Error::InvalidInput(format!("loop at vertex {i}")));
            }
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidInput(format!("edge ({i}, {j}) outside 1..={n}")));
            }
            out.push((i.min(j), i.max(j)));
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("repeated edge".into()));
        }
        Ok(Self { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbourhoods as bitmasks over 0-based vertex indices.
    fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &(i, j) in &self.edges {
            adj[i - 1] |= 1 << (j - 1);
            adj[j - 1] |= 1 << (i - 1);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i - 1].push(j - 1);
            adj[j - 1].push(i - 1);
        }
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![-1i8; self.n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i - 1].push(j - 1);
            adj[j - 1].push(i - 1);
        }
        for s in 0..self.n {
            if colour[s] >= 0 {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if colour[w] < 0 {
                        colour[w] = 1 - colour[u];
                        stack.push(w);
                    } else if colour[w] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The cycle `1 - 2 - .. - m - 1`.
pub fn cycle_graph(m: usize) -> Result<Graph> {
    if m < 3 {
        return Err(Error::InvalidInput(format!("a cycle needs at least 3 vertices, got {m}")));
    }
    Graph::new(m, (1..=m).map(|i| (i, i % m + 1)).collect())
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidInput("a complete graph needs at least one vertex".into()));
    }
    Graph::new(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect())
}

/// The vertex for edge `(i, j)`: the 0/1 vector supported on `i` and `j`.
pub fn edge_vertex(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i - 1] = 1;
    v[j - 1] = 1;
    v
}

/// Convex hull of the edge vertices, one per edge in edge order.
pub fn edge_polytope(g: &Graph) -> Result<LatticePolytope> {
    if g.edges.is_empty() {
        return Err(Error::InvalidInput("edge polytope of a graph without edges".into()));
    }
    let vertices = g.edges.iter().map(|&(i, j)| edge_vertex(g.n, i, j)).collect();
    LatticePolytope::new(g.n, vertices)
}

/// Vertex sets of all cycles, as a table indexed by bitmask.
fn cycle_sets(g: &Graph) -> Vec<bool> {
    let n = g.n;
    let adj = g.adjacency();
    let mut cycles = vec![false; 1 << n];
    // paths[mask]: endpoints v of simple paths from s through exactly mask,
    // where s is the least vertex of mask
    let mut paths = vec![0u64; 1 << n];
    for s in 0..n {
        let start = 1usize << s;
        paths[start] = start as u64;
        let free = !((1usize << (s + 1)) - 1) & ((1usize << n) - 1);
        // masks are visited in increasing order, so subsets come first
        let mut sub = 0usize;
        loop {
            let mask = start | sub;
            let ends = paths[mask];
            if ends != 0 {
                if mask.count_ones() >= 3 && ends & adj[s] != 0 {
                    cycles[mask] = true;
                }
                let mut e = ends;
                while e != 0 {
                    let v = e.trailing_zeros() as usize;
                    e &= e - 1;
                    let mut next = adj[v] & free as u64 & !(mask as u64);
                    while next != 0 {
                        let w = next.trailing_zeros() as usize;
                        next &= next - 1;
                        paths[mask | (1 << w)] |= 1 << w;
                    }
                }
            }
            paths[mask] = 0;
            if sub == free {
                break;
            }
            sub = (sub.wrapping_sub(free)) & free;
        }
    }
    cycles
}

/// Whether `g` contains two vertex-disjoint odd cycles.
pub fn has_two_disjoint_odd_cycles(g: &Graph) -> Result<bool> {
    if g.n > CYCLE_LIMIT {
        return Err(Error::TooLarge { n: g.n, limit: CYCLE_LIMIT });
    }
    let full = (1usize << g.n) - 1;
    let cycles = cycle_sets(g);
    // within[m]: some odd cycle uses only vertices of m
    let mut within: Vec<bool> = cycles.iter().enumerate().map(|(m, &c)| c && m.count_ones() % 2 == 1).collect();
    let odd: Vec<usize> = (0..=full).filter(|&m| within[m]).collect();
    for b in 0..g.n {
        for m in 0..=full {
            if m >> b & 1 == 1 && within[m ^ (1 << b)] {
                within[m] = true;
            }
        }
    }
    Ok(odd.into_iter().any(|m| within[full & !m]))
}

/// The edge polytope of a connected graph is unimodular exactly when the
/// graph has no two vertex-disjoint odd cycles.
pub fn is_unimodular_edge_polytope(g: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::InvalidInput("graph is not connected".into()));
    }
    Ok(!has_two_disjoint_odd_cycles(g)?)
}

fn edge_bit(n: usize, i: usize, j: usize) -> u64 {
    let (i, j) = (i.min(j), i.max(j));
    1 << (i * n + j)
}

fn canonical_mask(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    perms.iter().map(|p| edges.iter().fold(0u64, |m, &(i, j)| m | edge_bit(n, p[i], p[j]))).min().unwrap_or(0)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(n, &mut p, &mut out);
    out
}

/// One representative of every isomorphism class of connected graphs on `n`
/// vertices.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > CLASS_LIMIT {
        return Err(Error::TooLarge { n, limit: CLASS_LIMIT });
    }
    let mut classes: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for m in 2..=n {
        let perms = permutations(m);
        let mut seen = FxHashSet::default();
        let mut next = Vec::new();
        for edges in &classes {
            for nb in 1u64..(1 << (m - 1)) {
                let mut e = edges.clone();
                e.extend((0..m - 1).filter(|&i| nb >> i & 1 == 1).map(|i| (i, m - 1)));
                if seen.insert(canonical_mask(m, &e, &perms)) {
                    next.push(e);
                }
            }
        }
        classes = next;
    }
    classes.into_iter().map(|e| Graph::new(n, e.into_iter().map(|(i, j)| (i + 1, j + 1)).collect())).collect()
}
