//! Maximum clique search by Bron–Kerbosch with pivoting, bounded by greedy colouring.

use crate::par;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn and(&self, o: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&o.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn and_not(&self, o: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&o.words).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }
}

/// Number of colours in a greedy colouring of `p`: an upper bound on its clique size.
fn colour_bound(adj: &[BitSet], p: &BitSet) -> usize {
    let mut uncoloured = p.clone();
    let mut colours = 0;
    while !uncoloured.is_empty() {
        colours += 1;
        let mut avail = uncoloured.clone();
        loop {
            let Some(v) = avail.iter().next() else { break };
            uncoloured.remove(v);
            avail.remove(v);
            avail = avail.and_not(&adj[v]);
        }
    }
    colours
}

fn expand(adj: &[BitSet], r: &mut Vec<usize>, p: BitSet, best: &mut Vec<usize>, cutoff: usize) {
    if best.len() >= cutoff {
        return;
    }
    if p.is_empty() || r.len() >= cutoff {
        if r.len() > best.len() {
            *best = r.clone();
        }
        return;
    }
    if r.len() + colour_bound(adj, &p) <= best.len() {
        return;
    }
    let pivot = p
        .iter()
        .max_by_key(|&u| (p.and(&adj[u]).len(), std::cmp::Reverse(u)))
        .expect("p is nonempty");
    let branch: Vec<usize> = p.and_not(&adj[pivot]).iter().collect();
    let mut p = p;
    for v in branch {
        r.push(v);
        expand(adj, r, p.and(&adj[v]), best, cutoff);
        r.pop();
        p.remove(v);
        if best.len() >= cutoff || r.len() + p.len() <= best.len() {
            return;
        }
    }
}

/// A maximum clique of size at most `cutoff`, starting from the clique `seed`.
///
/// The seed is returned unless a strictly larger clique exists. Top-level
/// branches run in parallel with independent bounds; the result is the same as
/// a sequential run because the earliest strictly larger clique wins.
pub(crate) fn max_clique(adj: &[BitSet], seed: Vec<usize>, cutoff: usize) -> Vec<usize> {
    let n = adj.len();
    let results = par::map_range(n, |v| {
        let mut p = BitSet::new(n);
        for u in adj[v].iter().filter(|&u| u > v) {
            p.insert(u);
        }
        let mut best = seed.clone();
        let mut r = vec![v];
        expand(adj, &mut r, p, &mut best, cutoff);
        best
    });
    results
        .into_iter()
        .fold(seed, |acc, c| if c.len() > acc.len() { c } else { acc })
}
