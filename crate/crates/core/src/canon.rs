//! Canonical labelling by partition refinement and individualisation.
//!
//! The search tree individualises one vertex of a non-singleton cell at each
//! node and refines to an equitable partition. Every leaf is a labelling;
//! the canonical one is the leaf whose relabelled adjacency rows are
//! lexicographically smallest. Children are skipped when a known
//! automorphism fixing the current prefix maps them onto an explored child,
//! which includes every pair of twin vertices.

use std::fmt;

use crate::bits::{self, bit, count, members, Bits};
use crate::graph::Graph;
use crate::graph6;

/// Relabelling-invariant key of an isomorphism class: the graph6 string of
/// the canonically labelled graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Box<[u8]>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    /// The canonically labelled representative.
    pub fn to_graph(&self) -> Graph {
        graph6::decode(self.as_str()).expect("canonical form holds valid graph6")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let cg = canonical_graph(g);
    CanonicalForm(graph6::encode(&cg).into_bytes().into_boxed_slice())
}

pub fn canonical_graph(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

/// Permutation mapping each vertex of `g` to its canonical position.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let mut search = Search {
        g,
        best: None,
        autos: Vec::new(),
    };
    search.node(vec![g.vertices()], &mut Vec::new());
    search.best.expect("search reaches a leaf").1
}

/// Automorphisms found while canonically labelling `g`. They generate a
/// subgroup of `Aut(g)`; the orbits they induce are used for pruning only.
pub fn automorphisms_found(g: &Graph) -> Vec<Vec<usize>> {
    if g.order() == 0 {
        return Vec::new();
    }
    let mut search = Search {
        g,
        best: None,
        autos: Vec::new(),
    };
    search.node(vec![g.vertices()], &mut Vec::new());
    search.autos
}

const MAX_STORED_AUTOS: usize = 256;

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<Bits>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn node(&mut self, mut cells: Vec<Bits>, prefix: &mut Vec<usize>) {
        refine(self.g, &mut cells);
        if cells.len() == self.g.order() {
            self.leaf(&cells);
            return;
        }
        let (ti, target) = target_cell(&cells);
        let mut explored: Vec<usize> = Vec::new();
        for v in members(target) {
            if explored.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            if !explored.is_empty() && self.same_orbit_as_explored(prefix, &explored, v) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..ti]);
            child.push(bit(v));
            child.push(target & !bit(v));
            child.extend_from_slice(&cells[ti + 1..]);
            prefix.push(v);
            self.node(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    fn leaf(&mut self, cells: &[Bits]) {
        let n = self.g.order();
        let mut perm = vec![0; n];
        for (pos, &c) in cells.iter().enumerate() {
            perm[c.trailing_zeros() as usize] = pos;
        }
        let rows = self.g.permuted(&perm).rows().to_vec();
        match &self.best {
            None => self.best = Some((rows, perm)),
            Some((best_rows, best_perm)) => match rows.cmp(best_rows) {
                std::cmp::Ordering::Less => self.best = Some((rows, perm)),
                std::cmp::Ordering::Equal => {
                    // gamma = best^-1 . perm is an automorphism.
                    let mut inv = vec![0; n];
                    for (v, &p) in best_perm.iter().enumerate() {
                        inv[p] = v;
                    }
                    let gamma: Vec<usize> = perm.iter().map(|&p| inv[p]).collect();
                    if self.autos.len() < MAX_STORED_AUTOS && gamma.iter().enumerate().any(|(v, &w)| v != w) {
                        self.autos.push(gamma);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        let g = self.g;
        g.neighbors(u) & !bit(v) == g.neighbors(v) & !bit(u)
    }

    fn same_orbit_as_explored(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if prefix.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

/// First non-singleton cell of maximum size.
fn target_cell(cells: &[Bits]) -> (usize, Bits) {
    let mut best = (usize::MAX, 0 as Bits);
    let mut best_size = 1;
    for (i, &c) in cells.iter().enumerate() {
        let s = count(c);
        if s > best_size {
            best = (i, c);
            best_size = s;
        }
    }
    best
}

/// Refines `cells` to the coarsest equitable partition finer than it. Split
/// fragments are ordered by their neighbour count into the splitting cell,
/// so the result depends only on structure, never on vertex names.
fn refine(g: &Graph, cells: &mut Vec<Bits>) {
    let mut counts = vec![0usize; g.order()];
    loop {
        let mut changed = false;
        let mut si = 0;
        while si < cells.len() {
            let splitter = cells[si];
            let mut next: Vec<Bits> = Vec::with_capacity(cells.len());
            let mut local_change = false;
            for &c in cells.iter() {
                if count(c) == 1 {
                    next.push(c);
                    continue;
                }
                let mut lo = usize::MAX;
                let mut hi = 0;
                for v in members(c) {
                    let k = count(g.neighbors(v) & splitter);
                    counts[v] = k;
                    lo = lo.min(k);
                    hi = hi.max(k);
                }
                if lo == hi {
                    next.push(c);
                    continue;
                }
                local_change = true;
                let mut ks: Vec<usize> = members(c).map(|v| counts[v]).collect();
                ks.sort_unstable();
                ks.dedup();
                for k in ks {
                    next.push(members(c).filter(|&v| counts[v] == k).fold(0, |acc, v| acc | bit(v)));
                }
            }
            if local_change {
                changed = true;
                *cells = next;
            }
            si += 1;
        }
        if !changed {
            break;
        }
    }
    debug_assert_eq!(cells.iter().fold(0, |a, &c| a | c), bits::prefix(g.order()));
}
