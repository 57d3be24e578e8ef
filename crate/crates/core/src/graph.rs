use serde::{Deserialize, Serialize};

use crate::subset::Subset;

/// Finite graph with ordered vertices `0..vertices` and edges sorted by
/// `(min endpoint, max endpoint)`. Loops and multi-edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge {0} has an endpoint outside 0..{1}")]
    BadEndpoint(usize, usize),
    #[error("too many edges ({0}); at most 20 are supported")]
    TooManyEdges(usize),
}

impl Graph {
    /// Normalizes endpoint order and sorts edges; the input order breaks ties.
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if edges.len() > 20 {
            return Err(GraphError::TooManyEdges(edges.len()));
        }
        let mut es = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(GraphError::BadEndpoint(i, vertices));
            }
            es.push((u.min(v), u.max(v)));
        }
        es.sort();
        Ok(Graph { vertices, edges: es })
    }

    pub fn complete(n: usize) -> Self {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, &e).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        let e: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &e).unwrap()
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::new(n, &e).unwrap()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Component label per vertex for the spanning subgraph on `s`; labels
    /// are the minimal vertex of each component.
    pub fn components(&self, s: Subset) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for e in s.elements() {
            let (u, v) = self.edges[e];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                // keep the smaller vertex as root
                if a < b {
                    parent[b] = a;
                } else {
                    parent[a] = b;
                }
            }
        }
        (0..self.vertices).map(|v| find(&mut parent, v)).collect()
    }

    /// Sorted minimal vertices of the components of `[G : s]`.
    pub fn component_minima(&self, s: Subset) -> Vec<usize> {
        let lab = self.components(s);
        (0..self.vertices).filter(|&v| lab[v] == v).collect()
    }

    pub fn component_count(&self, s: Subset) -> usize {
        self.component_minima(s).len()
    }

    pub fn is_connected(&self) -> bool {
        self.vertices > 0 && self.component_count(Subset::full(self.edges.len())) == 1
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|(u, v)| u == v)
    }

    /// Number of proper colorings with `k` colors, by exhaustive search.
    pub fn count_colorings(&self, k: usize) -> u64 {
        if self.vertices == 0 {
            return 1;
        }
        if k == 0 {
            return 0;
        }
        let mut col = vec![0usize; self.vertices];
        let mut count = 0u64;
        loop {
            if self.edges.iter().all(|&(u, v)| col[u] != col[v]) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == self.vertices {
                    return count;
                }
                col[i] += 1;
                if col[i] < k {
                    break;
                }
                col[i] = 0;
                i += 1;
            }
        }
    }
}
