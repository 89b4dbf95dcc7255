//! Individualization-refinement search over ordered partitions of at most
//! 64 vertices. Cells and adjacency rows are `u64` bitmasks.

use crate::dsu::Dsu;

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Splits cells until each vertex of a cell has the same number of
/// neighbours in every cell. Sub-cells are ordered by ascending count.
pub(crate) fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    let n = adj.len();
    let mut buckets: Vec<(u32, u64)> = Vec::with_capacity(8);
    loop {
        let mut changed = false;
        let mut w = 0;
        while w < cells.len() {
            if cells.len() == n {
                return;
            }
            let splitter = cells[w];
            let mut next = Vec::with_capacity(cells.len() + 4);
            for &cell in cells.iter() {
                if cell & (cell - 1) == 0 {
                    next.push(cell);
                    continue;
                }
                buckets.clear();
                for v in bits(cell) {
                    let k = (adj[v] & splitter).count_ones();
                    match buckets.iter_mut().find(|(c, _)| *c == k) {
                        Some((_, m)) => *m |= 1 << v,
                        None => buckets.push((k, 1 << v)),
                    }
                }
                if buckets.len() > 1 {
                    changed = true;
                    buckets.sort_unstable_by_key(|&(k, _)| k);
                }
                next.extend(buckets.iter().map(|&(_, m)| m));
            }
            *cells = next;
            w += 1;
        }
        if !changed {
            return;
        }
    }
}

/// Upper triangle of the relabeled adjacency, row-major, packed MSB first.
pub(crate) fn encode(adj: &[u64], lab: &[usize]) -> Vec<u64> {
    let n = lab.len();
    let total = n * n.saturating_sub(1) / 2;
    let mut words = vec![0u64; total.div_ceil(64).max(1)];
    let mut k = 0;
    for i in 0..n {
        let row = adj[lab[i]];
        for &b in &lab[i + 1..] {
            if row >> b & 1 == 1 {
                words[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    words
}

#[derive(Debug, Clone)]
pub(crate) struct Leaf {
    pub code: Vec<u64>,
    /// lab[i] is the vertex placed at canonical position i.
    pub lab: Vec<usize>,
    /// Which search (root) produced the leaf.
    pub tag: usize,
}

/// Collects the lexicographically least leaf over one or more searches on
/// the same vertex set. Automorphisms found along the way are kept for
/// pruning; callers must only combine searches whose equal leaves really
/// induce automorphisms of the structure being canonized.
pub(crate) struct Engine {
    n: usize,
    autos: Vec<Vec<usize>>,
    best: Option<Leaf>,
}

impl Engine {
    pub fn new(n: usize) -> Self {
        Engine {
            n,
            autos: Vec::new(),
            best: None,
        }
    }

    pub fn into_best(self) -> Leaf {
        self.best.expect("search has not run")
    }

    /// Orbit partition of the group generated by the stored automorphisms
    /// that fix every vertex of `fixed`.
    pub fn orbits_fixing(&self, fixed: &[usize]) -> Dsu {
        let mut d = Dsu::new(self.n);
        for g in &self.autos {
            if fixed.iter().all(|&v| g[v] == v) {
                for (v, &w) in g.iter().enumerate() {
                    d.union(v, w);
                }
            }
        }
        d
    }

    /// Explores the tree below `cells`. Vertices in `fixed` must already be
    /// singleton cells; stored automorphisms are used at a node only when
    /// they fix these and the node's individualized vertices.
    pub fn search(&mut self, adj: &[u64], cells: Vec<u64>, fixed: &[usize], tag: usize) {
        let mut prefix = Vec::with_capacity(self.n);
        prefix.extend_from_slice(fixed);
        self.node(adj, cells, &mut prefix, tag);
    }

    fn node(&mut self, adj: &[u64], mut cells: Vec<u64>, prefix: &mut Vec<usize>, tag: usize) {
        refine(adj, &mut cells);
        let Some(t) = cells.iter().position(|c| c & (c - 1) != 0) else {
            self.leaf(adj, &cells, tag);
            return;
        };
        let cell = cells[t];
        let mut tried: Vec<usize> = Vec::new();
        let mut orbits: Option<(usize, Dsu)> = None;
        for v in bits(cell) {
            if let Some(&w) = tried
                .iter()
                .find(|&&w| (adj[v] ^ adj[w]) & !(1u64 << v | 1u64 << w) == 0)
            {
                let mut g: Vec<usize> = (0..self.n).collect();
                g.swap(v, w);
                self.autos.push(g);
                continue;
            }
            if !self.autos.is_empty() && !tried.is_empty() {
                let stale = orbits.as_ref().is_none_or(|(seen, _)| *seen != self.autos.len());
                if stale {
                    orbits = Some((self.autos.len(), self.orbits_fixing(prefix)));
                }
                let d = &mut orbits.as_mut().unwrap().1;
                if tried.iter().any(|&w| d.same(v, w)) {
                    continue;
                }
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1 << v);
            child.push(cell & !(1 << v));
            child.extend_from_slice(&cells[t + 1..]);
            prefix.push(v);
            self.node(adj, child, prefix, tag);
            prefix.pop();
        }
    }

    fn leaf(&mut self, adj: &[u64], cells: &[u64], tag: usize) {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let code = encode(adj, &lab);
        match &self.best {
            None => self.best = Some(Leaf { code, lab, tag }),
            Some(best) => match code.cmp(&best.code) {
                std::cmp::Ordering::Less => self.best = Some(Leaf { code, lab, tag }),
                std::cmp::Ordering::Equal => {
                    let mut g = vec![0; self.n];
                    for (i, &v) in best.lab.iter().enumerate() {
                        g[v] = lab[i];
                    }
                    if g.iter().enumerate().any(|(v, &w)| v != w) {
                        self.autos.push(g);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }
}
