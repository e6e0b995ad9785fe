use serde::Serialize;

/// Simple undirected graph on `0..n` with sorted edge and adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph; edges are normalized to `(min, max)`, deduplicated and sorted.
    ///
    /// Panics on self-loops or out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| {
                assert!(a != b, "self-loop at {a}");
                assert!(a < n && b < n, "edge ({a}, {b}) out of range for {n} vertices");
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Some triangle `(a, b, c)` with `a < b < c`, if one exists.
    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        self.edges.iter().find_map(|&(a, b)| {
            self.adj[a]
                .iter()
                .find(|&&c| c > b && self.has_edge(b, c))
                .map(|&c| (a, b, c))
        })
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_without(None)
    }

    fn is_connected_without(&self, removed: Option<usize>) -> bool {
        let start = match (0..self.n).find(|&v| Some(v) != removed) {
            Some(s) => s,
            None => return true,
        };
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] && Some(w) != removed {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n - usize::from(removed.is_some())
    }

    /// Vertices whose removal disconnects the graph.
    pub fn cut_vertices(&self) -> Vec<usize> {
        if self.n <= 2 {
            return Vec::new();
        }
        (0..self.n)
            .filter(|&v| !self.is_connected_without(Some(v)))
            .collect()
    }

    /// Connected with at least three vertices and no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.cut_vertices().is_empty()
    }
}
