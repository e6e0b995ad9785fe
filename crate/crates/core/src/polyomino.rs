//! Fixed polyominoes: decomposition of `n`, basic polyominoes, adjacency
//! accounting and exhaustive enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par;

/// Largest `n` accepted by the enumeration routines.
pub const MAX_ENUMERATION: usize = 12;

pub type Cell = (i32, i32);

/// An edge-connected, nonempty set of unit cells, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PolyominoJson", into = "PolyominoJson")]
pub struct Polyomino {
    cells: Vec<Cell>,
}

#[derive(Serialize, Deserialize)]
struct PolyominoJson {
    cells: Vec<[i32; 2]>,
}

impl TryFrom<PolyominoJson> for Polyomino {
    type Error = Error;
    fn try_from(j: PolyominoJson) -> Result<Self> {
        Polyomino::new(j.cells.into_iter().map(|[i, j]| (i, j)).collect())
    }
}

impl From<Polyomino> for PolyominoJson {
    fn from(p: Polyomino) -> Self {
        PolyominoJson {
            cells: p.cells.into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

const NEIGHBORS: [Cell; 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

impl Polyomino {
    pub fn new(mut cells: Vec<Cell>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Contract("a polyomino needs at least one cell".into()));
        }
        cells.sort_unstable();
        if cells.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Contract("duplicate cell".into()));
        }
        let p = Polyomino { cells };
        if !p.graph().is_connected() {
            return Err(Error::Contract("cells are not edge-connected".into()));
        }
        Ok(p)
    }

    /// Sorted cells.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    fn index_of(&self, c: Cell) -> Option<usize> {
        self.cells.binary_search(&c).ok()
    }

    /// Translate moving the lexicographically least cell to `(0, 0)`.
    pub fn canonical(&self) -> Polyomino {
        let (i0, j0) = self.cells[0];
        Polyomino {
            cells: self.cells.iter().map(|&(i, j)| (i - i0, j - j0)).collect(),
        }
    }

    /// Number of unordered pairs of cells sharing a side.
    pub fn edge_count(&self) -> usize {
        self.cells
            .iter()
            .map(|&(i, j)| {
                usize::from(self.index_of((i + 1, j)).is_some())
                    + usize::from(self.index_of((i, j + 1)).is_some())
            })
            .sum()
    }

    /// Number of cell sides not shared with another cell.
    pub fn perimeter(&self) -> usize {
        self.cells
            .iter()
            .map(|&(i, j)| {
                NEIGHBORS
                    .iter()
                    .filter(|&&(di, dj)| self.index_of((i + di, j + dj)).is_none())
                    .count()
            })
            .sum()
    }

    /// Adjacency graph on cell indices (positions in [`Polyomino::cells`]).
    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        for (a, &(i, j)) in self.cells.iter().enumerate() {
            for c in [(i + 1, j), (i, j + 1)] {
                if let Some(b) = self.index_of(c) {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(self.cells.len(), edges)
    }
}

/// `G(p)`: cells adjacent when they share a side.
pub fn graph_of(p: &Polyomino) -> Graph {
    p.graph()
}

/// `n = ℓ(ℓ + ε) + k` with `ε ∈ {0, 1}` and `0 ≤ k < ℓ + ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub n: u64,
    pub ell: u64,
    pub eps: u64,
    pub k: u64,
}

pub fn decompose(n: i64) -> Result<Decomposition> {
    if n < 1 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            range: "n >= 1",
        });
    }
    let n = n as u64;
    let ell = n.isqrt();
    let (eps, k) = if n < ell * (ell + 1) {
        (0, n - ell * ell)
    } else {
        (1, n - ell * (ell + 1))
    };
    Ok(Decomposition { n, ell, eps, k })
}

/// Where the strip of `k` cells sits against the quasi-square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StripSide {
    /// A `1 × k` column to the right of the quasi-square, starting at the bottom row.
    #[default]
    RightVertical,
    /// A `k × 1` row above the quasi-square, starting at the left column.
    TopHorizontal,
}

/// Quasi-square with sides `ℓ` and `ℓ + ε` plus a flush strip of `k` cells.
pub fn basic_polyomino(n: i64, side: StripSide) -> Result<Polyomino> {
    let d = decompose(n)?;
    let (ell, eps, k) = (d.ell as i32, d.eps as i32, d.k as i32);
    let (w, h) = match side {
        StripSide::RightVertical => (ell + eps, ell),
        StripSide::TopHorizontal => (ell, ell + eps),
    };
    let mut cells: Vec<Cell> = (0..w).flat_map(|i| (0..h).map(move |j| (i, j))).collect();
    match side {
        StripSide::RightVertical => cells.extend((0..k).map(|j| (w, j))),
        StripSide::TopHorizontal => cells.extend((0..k).map(|i| (i, h))),
    }
    Polyomino::new(cells)
}

fn check_range(n: usize) -> Result<()> {
    if (1..=MAX_ENUMERATION).contains(&n) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            range: "1..=12",
        })
    }
}

/// Redelmeier search state: the growing shape, its untried frontier and the
/// cells ever added to a frontier.
#[derive(Clone)]
struct State {
    cells: Vec<Cell>,
    untried: Vec<Cell>,
    seen: Vec<bool>,
    width: i32,
}

impl State {
    fn root(n: usize) -> State {
        let width = 2 * n as i32 + 1;
        let mut st = State {
            cells: Vec::new(),
            untried: vec![(0, 0)],
            seen: vec![false; (width * (n as i32 + 1)) as usize],
            width,
        };
        st.mark((0, 0));
        st
    }

    /// Marks `c` as seen; false if it already was.
    fn mark(&mut self, (i, j): Cell) -> bool {
        let idx = (j * self.width + i + self.width / 2) as usize;
        !std::mem::replace(&mut self.seen[idx], true)
    }

    /// Pushes the unseen admissible neighbors of `c`: above row 0, or in row 0
    /// at or right of the root.
    fn extend_from(&mut self, c: Cell) {
        for (di, dj) in NEIGHBORS {
            let nb = (c.0 + di, c.1 + dj);
            if (nb.1 > 0 || (nb.1 == 0 && nb.0 >= 0)) && self.mark(nb) {
                self.untried.push(nb);
            }
        }
    }
}

fn grow(mut st: State, stop_at: usize, visit: &mut dyn FnMut(&State)) {
    while let Some(c) = st.untried.pop() {
        st.cells.push(c);
        if st.cells.len() == stop_at {
            visit(&st);
        } else {
            let mut child = st.clone();
            child.extend_from(c);
            grow(child, stop_at, visit);
        }
        st.cells.pop();
    }
}

/// Subtrees rooted at shapes of up to 5 cells; each is finished independently.
fn for_each_subtree<R: Send>(n: usize, f: impl Fn(State) -> R + Sync + Send) -> Vec<R> {
    let split = n.min(5);
    let mut frontier = Vec::new();
    grow(State::root(n), split, &mut |s| {
        let mut s = s.clone();
        if split < n {
            let c = *s.cells.last().expect("nonempty");
            s.extend_from(c);
        }
        frontier.push(s);
    });
    par::map(&frontier, |s| f(s.clone()))
}

fn finish(st: State, n: usize, visit: &mut dyn FnMut(&State)) {
    if st.cells.len() == n {
        visit(&st);
    } else {
        grow(st, n, visit);
    }
}

/// Every fixed `n`-omino exactly once, canonical, in sorted order.
pub fn enumerate_fixed(n: usize) -> Result<Vec<Polyomino>> {
    check_range(n)?;
    let parts = for_each_subtree(n, |st| {
        let mut out = Vec::new();
        finish(st, n, &mut |s| {
            out.push(Polyomino { cells: sorted(&s.cells) }.canonical());
        });
        out
    });
    let mut all: Vec<Polyomino> = parts.into_iter().flatten().collect();
    all.sort_unstable();
    Ok(all)
}

fn sorted(cells: &[Cell]) -> Vec<Cell> {
    let mut v = cells.to_vec();
    v.sort_unstable();
    v
}

/// Number of fixed `n`-ominoes.
pub fn count_fixed(n: usize) -> Result<u64> {
    check_range(n)?;
    let parts = for_each_subtree(n, |st| {
        let mut count = 0u64;
        finish(st, n, &mut |_| count += 1);
        count
    });
    Ok(parts.into_iter().sum())
}

/// Largest number of shared sides among fixed `n`-ominoes, by exhaustive search.
pub fn max_edge_count(n: usize) -> Result<usize> {
    check_range(n)?;
    let parts = for_each_subtree(n, |st| {
        let mut best = 0;
        finish(st, n, &mut |s| {
            let p = Polyomino { cells: sorted(&s.cells) };
            best = best.max(p.edge_count());
        });
        best
    });
    Ok(parts.into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 7-cell shape with minimum degree 2 whose graph has a cut vertex.
    pub(crate) fn p7() -> Polyomino {
        Polyomino::new(vec![(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)]).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(7).unwrap();
        assert_eq!((d.ell, d.eps, d.k), (2, 1, 1));
        let d = decompose(4).unwrap();
        assert_eq!((d.ell, d.eps, d.k), (2, 0, 0));
        let d = decompose(12).unwrap();
        assert_eq!((d.ell, d.eps, d.k), (3, 1, 0));
        assert!(decompose(0).is_err());
    }

    #[test]
    fn decomposition_is_unique() {
        // Oracle: scan every (ℓ, ε, k) with ℓ ≤ n.
        for n in 1..=200u64 {
            let sols: Vec<_> = (1..=n)
                .flat_map(|l| (0..=1).flat_map(move |e| (0..l + e).map(move |k| (l, e, k))))
                .filter(|&(l, e, k)| l * (l + e) + k == n)
                .collect();
            assert_eq!(sols.len(), 1, "n={n}");
            let d = decompose(n as i64).unwrap();
            assert_eq!(sols[0], (d.ell, d.eps, d.k));
        }
    }

    #[test]
    fn basic_examples() {
        let p = basic_polyomino(4, StripSide::RightVertical).unwrap();
        assert_eq!(p.edge_count(), 4);
        let p = basic_polyomino(7, StripSide::RightVertical).unwrap();
        assert_eq!(p.len(), 7);
        assert_eq!(p.edge_count(), 8);
        assert_eq!(p.perimeter(), 12);
        let p = basic_polyomino(8, StripSide::RightVertical).unwrap();
        assert_eq!(p.edge_count(), 10);
        assert_eq!(
            basic_polyomino(8, StripSide::TopHorizontal).unwrap().edge_count(),
            10
        );
    }

    #[test]
    fn counting_examples() {
        let strip = Polyomino::new(vec![(0, 0), (1, 0), (2, 0)]).unwrap();
        assert_eq!(strip.edge_count(), 2);
        let sq = Polyomino::new(vec![(0, 0), (1, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(sq.edge_count(), 4);
        assert_eq!(sq.perimeter(), 8);
        assert_eq!(Polyomino::new(vec![(5, 5)]).unwrap().perimeter(), 4);
        assert_eq!(p7().edge_count(), 8);
    }

    #[test]
    fn graphs() {
        let domino = Polyomino::new(vec![(0, 0), (0, 1)]).unwrap();
        assert_eq!(graph_of(&domino).edges(), &[(0, 1)]);
        let g = graph_of(&p7());
        assert_eq!(g.min_degree(), 2);
        assert!(!g.is_biconnected());
        assert_eq!(g.cut_vertices().len(), 1);
        let sq = graph_of(&Polyomino::new(vec![(0, 0), (1, 0), (0, 1), (1, 1)]).unwrap());
        assert_eq!(sq.edge_count(), 4);
        assert!(sq.is_biconnected() && sq.max_degree() == 2);
    }

    #[test]
    fn validation() {
        assert!(Polyomino::new(vec![]).is_err());
        assert!(Polyomino::new(vec![(0, 0), (1, 1)]).is_err());
        assert!(Polyomino::new(vec![(0, 0), (0, 0)]).is_err());
        let p = Polyomino::new(vec![(3, 4), (3, 5)]).unwrap();
        assert_eq!(p.canonical().cells(), &[(0, 0), (0, 1)]);
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_fixed(1).unwrap().len(), 1);
        let two = enumerate_fixed(2).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0].cells(), &[(0, 0), (0, 1)]);
        assert_eq!(enumerate_fixed(3).unwrap().len(), 6);
        assert!(enumerate_fixed(0).is_err());
        assert!(enumerate_fixed(13).is_err());
    }

    #[test]
    fn max_edges_small() {
        assert_eq!(max_edge_count(1).unwrap(), 0);
        assert_eq!(max_edge_count(7).unwrap(), 8);
        assert_eq!(max_edge_count(9).unwrap(), 12);
    }
}
