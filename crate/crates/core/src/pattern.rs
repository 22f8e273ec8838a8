//! Avoided complement patterns and the containment searches behind them.
//!
//! A pattern `H` on `k` vertices is "contained in the complement" of `G` when
//! some `k`-subset of `V(G)` can be matched to `V(H)` so that every edge of
//! `H` lands on a non-edge of `G`. For `J_k = K_k - e` this means a `k`-set
//! spanning at most one edge of `G`; for `K_k` an independent `k`-set.

use std::fmt;
use std::str::FromStr;

use crate::bits::{self, bit, count, first, members, Bits};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Some `k`-subset spans at most this many edges of `G`.
    MaxEdges(usize),
    /// Some `k`-subset maps bijectively onto `V(F)` with every `G`-edge inside
    /// the subset landing on an `F`-edge. `F` is the complement of the avoided
    /// graph.
    ExplicitComplement(Graph),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    size: usize,
    shape: Shape,
}

impl Pattern {
    /// `J_k = K_k - e`.
    pub fn j(k: usize) -> Self {
        Pattern {
            size: k,
            shape: Shape::MaxEdges(1),
        }
    }

    /// The complete graph `K_k`.
    pub fn complete(k: usize) -> Self {
        Pattern {
            size: k,
            shape: Shape::MaxEdges(0),
        }
    }

    pub fn max_edges(k: usize, t: usize) -> Self {
        Pattern {
            size: k,
            shape: Shape::MaxEdges(t),
        }
    }

    /// Pattern whose complement is `f`, e.g. `2K_2 + 5K_1` for `K_9 - 2K_2`.
    pub fn explicit_complement(f: Graph) -> Self {
        Pattern {
            size: f.order(),
            shape: Shape::ExplicitComplement(f),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// `Some(k)` when this is `J_k`.
    pub fn j_size(&self) -> Option<usize> {
        match self.shape {
            Shape::MaxEdges(1) => Some(self.size),
            _ => None,
        }
    }

    /// Pattern avoided by every residual `G_v` of a graph avoiding `self`:
    /// one vertex fewer, provided the pattern has a vertex that may be placed
    /// on `v` (isolated in the complement description).
    pub fn residual_pattern(&self) -> Option<Pattern> {
        if self.size == 0 {
            return None;
        }
        match &self.shape {
            Shape::MaxEdges(t) => Some(Pattern::max_edges(self.size - 1, *t)),
            Shape::ExplicitComplement(f) => {
                let x = (0..f.order()).find(|&x| f.degree(x) == 0)?;
                Some(Pattern::explicit_complement(f.delete_vertex(x)))
            }
        }
    }

    /// Whether `g` contains the pattern in its complement. Graphs smaller
    /// than the pattern never do.
    pub fn found_in(&self, g: &Graph) -> bool {
        self.found_within(g, g.vertices())
    }

    /// As [`Pattern::found_in`], restricted to subsets of `set`.
    pub fn found_within(&self, g: &Graph, set: Bits) -> bool {
        let k = self.size;
        if count(set) < k {
            return false;
        }
        match &self.shape {
            Shape::MaxEdges(0) => has_independent_set(g, set, k),
            Shape::MaxEdges(1) => {
                if has_independent_set(g, set, k) {
                    return true;
                }
                if k < 2 {
                    return false;
                }
                for u in members(set) {
                    for v in members(g.neighbors(u) & set & !bits::prefix(u + 1)) {
                        let rest = set & !g.neighbors(u) & !g.neighbors(v) & !bit(u) & !bit(v);
                        if has_independent_set(g, rest, k - 2) {
                            return true;
                        }
                    }
                }
                false
            }
            Shape::MaxEdges(t) => sparse_set(g, 0, set, k, *t),
            Shape::ExplicitComplement(f) => embeds(g, f, set, None),
        }
    }

    /// Whether some occurrence contains every vertex of `must`. For explicit
    /// complements with `must` of two or more vertices this falls back to a
    /// search over the whole graph.
    pub fn found_containing(&self, g: &Graph, must: Bits) -> bool {
        let k = self.size;
        let m = count(must);
        if m > k || g.order() < k {
            return false;
        }
        match &self.shape {
            Shape::MaxEdges(t) => {
                let used = g.edges_within(must);
                if used > *t {
                    return false;
                }
                let left = t - used;
                let cand = members(g.vertices() & !must)
                    .filter(|&u| count(g.neighbors(u) & must) <= left)
                    .fold(0, |acc, u| acc | bit(u));
                sparse_set(g, must, cand, k - m, left)
            }
            Shape::ExplicitComplement(f) => match m {
                0 => self.found_in(g),
                1 => embeds(g, f, g.vertices(), first(must)),
                _ => self.found_in(g),
            },
        }
    }

    /// Whether some occurrence uses vertex `v`.
    pub fn found_through(&self, g: &Graph, v: usize) -> bool {
        let k = self.size;
        if k == 0 || g.order() < k {
            return false;
        }
        match &self.shape {
            Shape::MaxEdges(t) => {
                let t = *t;
                let others = g.vertices() & !bit(v);
                let cand = if t == 0 { others & !g.neighbors(v) } else { others };
                sparse_set(g, bit(v), cand, k - 1, t)
            }
            Shape::ExplicitComplement(f) => embeds(g, f, g.vertices(), Some(v)),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::MaxEdges(0) => write!(f, "K{}", self.size),
            Shape::MaxEdges(1) => write!(f, "J{}", self.size),
            Shape::MaxEdges(t) => write!(f, "S{}/{}", self.size, t),
            Shape::ExplicitComplement(g) => {
                write!(f, "compl:{}", crate::graph6::encode(g))
            }
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Parses `J<k>`, `K<k>`, `S<k>/<t>` or `compl:<graph6>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedInput(format!("unrecognised pattern `{s}`"));
        if let Some(g6) = s.strip_prefix("compl:") {
            return Ok(Pattern::explicit_complement(crate::graph6::decode(g6)?));
        }
        let (head, rest) = s.split_at(s.len().min(1));
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        match head {
            "J" => Ok(Pattern::j(num(rest)?)),
            "K" => Ok(Pattern::complete(num(rest)?)),
            "S" => {
                let (k, t) = rest.split_once('/').ok_or_else(bad)?;
                Ok(Pattern::max_edges(num(k)?, num(t)?))
            }
            _ => Err(bad()),
        }
    }
}

pub fn contains_pattern_in_complement(g: &Graph, p: &Pattern) -> Result<bool> {
    if p.size() > g.order() {
        return Err(Error::PatternTooLarge {
            size: p.size(),
            order: g.order(),
        });
    }
    Ok(p.found_in(g))
}

/// Triangle-free and free of the pattern in the complement.
pub fn is_ramsey_graph(g: &Graph, p: &Pattern) -> bool {
    g.is_triangle_free() && !p.found_in(g)
}

/// `floor((k-1) n / 2)`: a Ramsey graph for a `k`-vertex pattern has maximum
/// degree below `k`.
pub fn max_edge_bound(p: &Pattern, n: usize) -> usize {
    p.size().saturating_sub(1) * n / 2
}

/// Upper bound on the independence number of `g[set]` from a greedy clique
/// partition.
fn clique_cover(g: &Graph, set: Bits) -> usize {
    let mut rest = set;
    let mut cliques = 0;
    while let Some(v) = first(rest) {
        let mut clique = bit(v);
        let mut cand = rest & g.neighbors(v);
        while let Some(u) = first(cand) {
            clique |= bit(u);
            cand &= g.neighbors(u);
        }
        rest &= !clique;
        cliques += 1;
    }
    cliques
}

/// Whether `g[set]` has an independent set of size `need`.
pub fn has_independent_set(g: &Graph, set: Bits, need: usize) -> bool {
    let mut set = set;
    let mut need = need;
    loop {
        if need == 0 {
            return true;
        }
        if count(set) < need {
            return false;
        }
        // Vertices of degree <= 1 inside the set belong to some maximum
        // independent set, so take them without branching.
        let mut forced = None;
        for v in members(set) {
            if count(g.neighbors(v) & set) <= 1 {
                forced = Some(v);
                break;
            }
        }
        match forced {
            Some(v) => {
                set &= !g.neighbors(v) & !bit(v);
                need -= 1;
            }
            None => break,
        }
    }
    if clique_cover(g, set) < need {
        return false;
    }
    let v = members(set)
        .max_by_key(|&v| count(g.neighbors(v) & set))
        .expect("non-empty set");
    has_independent_set(g, set & !g.neighbors(v) & !bit(v), need - 1)
        || has_independent_set(g, set & !bit(v), need)
}

/// Size of a maximum independent set of `g[set]`.
pub fn independence_number(g: &Graph, set: Bits) -> usize {
    let mut a = 0;
    while has_independent_set(g, set, a + 1) {
        a += 1;
    }
    a
}

/// Extends `chosen` by `need` vertices from `cand` so that the whole set
/// spans at most `budget` more edges. Every vertex in `cand` must already
/// have at most `budget` neighbors in `chosen`.
fn sparse_set(g: &Graph, chosen: Bits, cand: Bits, need: usize, budget: usize) -> bool {
    if need == 0 {
        return true;
    }
    if count(cand) < need {
        return false;
    }
    if budget == 0 {
        let free = members(cand).filter(|&u| g.neighbors(u) & chosen == 0);
        return has_independent_set(g, bits::from_members(free), need);
    }
    if clique_cover(g, cand) + budget < need {
        return false;
    }
    let v = first(cand).expect("non-empty");
    let cost = count(g.neighbors(v) & chosen);
    if cost <= budget {
        let left = budget - cost;
        let chosen2 = chosen | bit(v);
        let cand2 = members(cand & !bit(v))
            .filter(|&u| count(g.neighbors(u) & chosen2) <= left)
            .fold(0, |acc, u| acc | bit(u));
        if sparse_set(g, chosen2, cand2, need - 1, left) {
            return true;
        }
    }
    sparse_set(g, chosen, cand & !bit(v), need, budget)
}

/// Searches for an injection of `V(f)` into `set` under which every edge of
/// `g` between images is an edge of `f`. With `through = Some(v)` the image
/// must contain `v`.
fn embeds(g: &Graph, f: &Graph, set: Bits, through: Option<usize>) -> bool {
    let k = f.order();
    if count(set) < k {
        return false;
    }
    // Place the pattern vertices with the most non-neighbors first.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| f.degree(i));
    match through {
        None => place(g, f, &order, &mut vec![usize::MAX; k], 0, set),
        Some(v) => {
            if set & bit(v) == 0 {
                return false;
            }
            (0..k).any(|pos| {
                let mut rest = order.clone();
                let i = rest.remove(pos);
                rest.insert(0, i);
                let mut image = vec![usize::MAX; k];
                image[i] = v;
                place(g, f, &rest, &mut image, 1, set & !bit(v))
            })
        }
    }
}

fn place(g: &Graph, f: &Graph, order: &[usize], image: &mut [usize], depth: usize, free: Bits) -> bool {
    if depth == order.len() {
        return true;
    }
    if count(free) < order.len() - depth {
        return false;
    }
    let i = order[depth];
    let mut cand = free;
    for &j in &order[..depth] {
        if !f.has_edge(i, j) {
            cand &= !g.neighbors(image[j]);
        }
    }
    for a in members(cand) {
        image[i] = a;
        if place(g, f, order, image, depth + 1, free & !bit(a)) {
            return true;
        }
    }
    image[i] = usize::MAX;
    false
}
