use crate::error::{Error, Result};
use crate::scalar::Real;

/// Undirected weighted edge, stored once with u < v.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<S> {
    pub u: usize,
    pub v: usize,
    pub w: S,
}

/// Simple weighted undirected graph. No self-loops, positive weights, each
/// pair stored once; adjacency carries the edge index so edge-indexed state
/// (dual variables) lines up with neighbor scans.
#[derive(Debug, Clone)]
pub struct SparseGraph<S> {
    n: usize,
    edges: Vec<Edge<S>>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl<S: Real> SparseGraph<S> {
    pub fn from_edges<I>(n: usize, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, S)>,
    {
        let mut edges = Vec::new();
        for (i, j, w) in raw {
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            if i >= n || j >= n {
                return Err(Error::VertexOutOfRange {
                    index: i.max(j),
                    n,
                });
            }
            if !(w > S::zero()) {
                return Err(Error::NonPositiveWeight {
                    i,
                    j,
                    weight: w.as_f64(),
                });
            }
            let (u, v) = if i < j { (i, j) } else { (j, i) };
            edges.push(Edge { u, v, w });
        }
        edges.sort_by(|a, b| (a.u, a.v).cmp(&(b.u, b.v)));
        for pair in edges.windows(2) {
            if pair[0].u == pair[1].u && pair[0].v == pair[1].v {
                return Err(Error::DuplicateEdge(pair[0].u, pair[0].v));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, idx));
            adj[e.v].push((e.u, idx));
        }
        Ok(SparseGraph { n, edges, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, usize)] {
        &self.adj[i]
    }

    /// Weighted degree Σ_j w_ij.
    pub fn degree(&self, i: usize) -> S {
        self.adj[i]
            .iter()
            .map(|&(_, e)| self.edges[e].w)
            .sum()
    }

    pub fn max_degree(&self) -> S {
        (0..self.n)
            .map(|i| self.degree(i))
            .fold(S::zero(), |a, b| a.max(b))
    }

    /// (Lx)_i = Σ_j w_ij (x_i − x_j)
    pub fn laplacian_times(&self, x: &[S]) -> Vec<S> {
        debug_assert_eq!(x.len(), self.n);
        let mut y = vec![S::zero(); self.n];
        for e in &self.edges {
            let d = e.w * (x[e.u] - x[e.v]);
            y[e.u] += d;
            y[e.v] -= d;
        }
        y
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for &(j, _) in &self.adj[i] {
                    if !seen[j] {
                        seen[j] = true;
                        comp.push(j);
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `members` (deduplicated, sorted), with local
    /// vertex ids 0..members.len(), plus each member's total edge weight to
    /// the outside. Returns (subgraph, sorted members, external weights).
    pub fn induced_with_external(&self, members: &[usize]) -> Result<(Self, Vec<usize>, Vec<S>)> {
        let mut sorted: Vec<usize> = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &v in &sorted {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { index: v, n: self.n });
            }
        }
        let mut local = vec![usize::MAX; self.n];
        for (li, &gi) in sorted.iter().enumerate() {
            local[gi] = li;
        }
        let mut edges = Vec::new();
        let mut ext = vec![S::zero(); sorted.len()];
        for e in &self.edges {
            match (local[e.u], local[e.v]) {
                (u, v) if u != usize::MAX && v != usize::MAX => edges.push((u, v, e.w)),
                (u, v) if u != usize::MAX => {
                    debug_assert_eq!(v, usize::MAX);
                    ext[u] += e.w;
                }
                (_, v) if v != usize::MAX => ext[v] += e.w,
                _ => {}
            }
        }
        let sub = SparseGraph::from_edges(sorted.len(), edges)?;
        Ok((sub, sorted, ext))
    }
}

/// Fixed-dimension point cloud, row-major.
#[derive(Debug, Clone)]
pub struct Points<S> {
    n: usize,
    d: usize,
    data: Vec<S>,
}

impl<S: Real> Points<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        let d = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(n * d);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != d {
                return Err(Error::InvalidConfig(format!(
                    "ragged point row {i}: expected {d} coordinates, got {}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Points { n, d, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn dist2(&self, i: usize, j: usize) -> S {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum()
    }
}

/// Labeling of vertices into k nonempty clusters 0..k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<usize>,
    k: usize,
}

impl Partition {
    pub fn from_labels(labels: Vec<usize>) -> Result<Self> {
        let k = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut counts = vec![0usize; k];
        for &l in &labels {
            counts[l] += 1;
        }
        for (c, &count) in counts.iter().enumerate() {
            if count == 0 {
                return Err(Error::EmptyCluster(c));
            }
        }
        Ok(Partition { labels, k })
    }

    /// Two clusters from a membership mask; cluster 0 is the `true` side.
    /// Both sides must be nonempty.
    pub fn from_mask(mask: &[bool]) -> Result<Self> {
        if mask.iter().all(|&b| b) || mask.iter().all(|&b| !b) {
            return Err(Error::DegenerateCut);
        }
        Ok(Partition {
            labels: mask.iter().map(|&b| if b { 0 } else { 1 }).collect(),
            k: 2,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn members(&self, cluster: usize) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == cluster)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.k];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }
}
