//! Exhaustive generation of `(3,H;n)`-graphs: maximal triangle-free Ramsey
//! graphs first, then every graph reachable from them by deleting edges.
//!
//! The mtf generator adds one vertex at a time and deduplicates each level
//! by canonical form. An intermediate graph on `i` vertices is kept only if
//! it could still be an induced subgraph of an mtf Ramsey graph on `n`
//! vertices, i.e. it passes these necessary conditions with `r = n - i`
//! vertices still to come:
//!
//! * it is itself a Ramsey graph;
//! * when the largest order `U` of a Ramsey graph for the residual pattern is
//!   known, every vertex has degree at least `n - 1 - U - r`, since its
//!   final residual has at most `U` vertices;
//! * every free pair (non-adjacent, no common neighbour) must get its
//!   common neighbour among the `r` missing vertices, so the free pairs are
//!   covered by at most `r` independent sets of size below `k`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::bits::{self, bit, count, members, Bits};
use crate::budget::{Budget, Meter};
use crate::canon::{canonical_form, CanonicalForm};
use crate::census::{Census, EdgeWindow};
use crate::error::{Error, Result};
use crate::etable::{Bound, BoundKind, Provenance};
use crate::graph::Graph;
use crate::pattern::Pattern;

/// How the minimum-degree pruning learns the largest residual order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ResidualLimit {
    /// No degree pruning.
    Off,
    /// Largest order of a Ramsey graph for the residual pattern.
    Given(usize),
    /// Computed by a recursive search when it is likely to pay off.
    #[default]
    Auto,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub budget: Budget,
    /// Spread each level over the rayon pool. The sequential mode is the
    /// reference; both produce the same sets.
    pub parallel: bool,
    pub residual_limit: ResidualLimit,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: Budget::default(),
            parallel: true,
            residual_limit: ResidualLimit::Auto,
        }
    }
}

impl Options {
    pub fn sequential() -> Self {
        Options {
            parallel: false,
            ..Options::default()
        }
    }
}

pub fn is_maximal_triangle_free(g: &Graph) -> Result<bool> {
    if !g.is_triangle_free() {
        return Err(Error::NotTriangleFree);
    }
    Ok(g.free_pairs().next().is_none())
}

/// Maps `f` over `items` in parallel or sequentially, then sorts and dedups.
pub(crate) fn collect_forms<T, F>(items: &[T], parallel: bool, f: F) -> Vec<CanonicalForm>
where
    T: Sync,
    F: Fn(&T) -> Vec<CanonicalForm> + Sync + Send,
{
    let mut out: Vec<CanonicalForm> = if parallel {
        items.par_iter().flat_map_iter(|x| f(x)).collect()
    } else {
        items.iter().flat_map(&f).collect()
    };
    out.par_sort_unstable();
    out.dedup();
    out
}

/// All mtf Ramsey graphs of order `n` for `p`, one per isomorphism class.
/// An empty complete result certifies `R(3,H) <= n`.
pub fn generate_mtf_ramsey(p: &Pattern, n: usize, opts: &Options) -> Result<Census> {
    if n > bits::MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let limit = resolve_limit(p, n, opts)?;
    let min_degree = limit.map_or(0, |u| (n - 1).saturating_sub(u));
    let meter = Meter::new(opts.budget);
    let k = p.size();
    let max_degree = k.saturating_sub(1);

    let mut level = vec![Graph::empty(0)];
    for i in 1..=n {
        let r = n - i;
        let rule = Prune {
            pattern: p,
            min_degree: min_degree.saturating_sub(r),
            remaining: r,
            max_degree,
        };
        let forms = collect_forms(&level, opts.parallel, |h| {
            let mut out = Vec::new();
            extend_vertex(h, &rule, &meter, &mut out);
            out
        });
        if meter.exhausted() {
            let mut c = Census::new(p.clone(), n, EdgeWindow::ALL);
            c.complete = false;
            return Ok(c);
        }
        level = forms.iter().map(CanonicalForm::to_graph).collect();
    }
    let mut c = Census::new(p.clone(), n, EdgeWindow::ALL);
    c.forms = level.iter().map(canonical_form).collect();
    Ok(c)
}

fn resolve_limit(p: &Pattern, n: usize, opts: &Options) -> Result<Option<usize>> {
    Ok(match opts.residual_limit {
        ResidualLimit::Off => None,
        ResidualLimit::Given(u) => Some(u),
        ResidualLimit::Auto => match p.residual_pattern() {
            // Ramsey orders of these patterns grow at least linearly; below
            // twice the residual size the bound cannot prune anything.
            Some(rp) if rp.size() >= 2 && n > 2 * rp.size() => {
                let sub = Options {
                    parallel: opts.parallel,
                    ..Options::default()
                };
                largest_ramsey_order(&rp, &sub)?
            }
            _ => None,
        },
    })
}

/// Largest order of a Ramsey graph for `p`, i.e. `R(3,H) - 1`, by running
/// the mtf generator at increasing orders until it comes back empty.
/// `None` if the budget ran out first.
pub fn largest_ramsey_order(p: &Pattern, opts: &Options) -> Result<Option<usize>> {
    for n in 1..=bits::MAX_ORDER {
        let c = generate_mtf_ramsey(p, n, opts)?;
        if !c.complete {
            return Ok(None);
        }
        if c.is_empty() {
            return Ok(Some(n - 1));
        }
    }
    Ok(None)
}

struct Prune<'a> {
    pattern: &'a Pattern,
    min_degree: usize,
    remaining: usize,
    max_degree: usize,
}

impl Prune<'_> {
    /// Necessary conditions for `g` to be an induced subgraph of an mtf
    /// Ramsey graph with `remaining` more vertices. `g` is assumed Ramsey.
    fn admits(&self, g: &Graph) -> bool {
        if g.vertices().count_ones() > 0 && g.min_degree() < self.min_degree {
            return false;
        }
        free_pairs_coverable(g, self.remaining, self.max_degree)
    }
}

/// Adds one vertex to `h` in every admissible way.
fn extend_vertex(h: &Graph, rule: &Prune, meter: &Meter, out: &mut Vec<CanonicalForm>) {
    let m = h.order();
    // Vertices one short of the degree threshold must gain the new vertex.
    let forced = members(h.vertices())
        .filter(|&u| h.degree(u) < rule.min_degree)
        .fold(0 as Bits, |a, u| a | bit(u));
    if forced & !h.vertices() != 0 || !h.is_independent(forced) {
        return;
    }
    if members(h.vertices()).any(|u| h.degree(u) + 1 < rule.min_degree) {
        return;
    }
    let cand = h.vertices() & !forced & !neighbourhood(h, forced);
    let mut sets = Vec::new();
    independent_supersets(h, forced, cand, rule.max_degree, &mut sets);
    for s in sets {
        if count(s) < rule.min_degree {
            continue;
        }
        if !meter.tick(1) {
            return;
        }
        let mut g = h.clone();
        g.push_vertex(s);
        if rule.pattern.found_through(&g, m) {
            continue;
        }
        if rule.admits(&g) {
            out.push(canonical_form(&g));
        }
    }
}

fn neighbourhood(g: &Graph, set: Bits) -> Bits {
    members(set).fold(0, |a, v| a | g.neighbors(v))
}

/// Every independent set `base ∪ T` with `T ⊆ cand` and size at most `cap`.
fn independent_supersets(g: &Graph, base: Bits, cand: Bits, cap: usize, out: &mut Vec<Bits>) {
    if count(base) > cap {
        return;
    }
    out.push(base);
    if count(base) == cap {
        return;
    }
    let mut rest = cand;
    while let Some(v) = bits::first(rest) {
        rest &= !bit(v);
        independent_supersets(g, base | bit(v), rest & !g.neighbors(v), cap, out);
    }
}

/// Whether the free pairs of `g` can be covered by `r` independent sets of
/// size at most `cap`. Inconclusive searches answer `true`.
fn free_pairs_coverable(g: &Graph, r: usize, cap: usize) -> bool {
    let pairs: Vec<(usize, usize)> = g.free_pairs().collect();
    if pairs.is_empty() {
        return true;
    }
    if r == 0 || cap < 2 {
        return false;
    }
    // Each covering set gives a vertex at most cap - 1 partners.
    let mut partners = vec![0usize; g.order()];
    for &(a, b) in &pairs {
        partners[a] += 1;
        partners[b] += 1;
    }
    if partners.iter().any(|&c| c > r * (cap - 1)) {
        return false;
    }
    if r > 3 {
        return true;
    }
    let touched = pairs.iter().fold(0 as Bits, |a, &(u, v)| a | bit(u) | bit(v));
    let mut nodes = 0usize;
    cover_search(g, &pairs, 0, r, cap, touched, &mut Vec::new(), &mut nodes)
}

const COVER_NODE_LIMIT: usize = 20_000;

#[allow(clippy::too_many_arguments)]
fn cover_search(
    g: &Graph,
    pairs: &[(usize, usize)],
    from: usize,
    r: usize,
    cap: usize,
    touched: Bits,
    chosen: &mut Vec<Bits>,
    nodes: &mut usize,
) -> bool {
    *nodes += 1;
    if *nodes > COVER_NODE_LIMIT {
        return true;
    }
    let Some(idx) = (from..pairs.len()).find(|&i| {
        let (a, b) = pairs[i];
        !chosen.iter().any(|&s| s & bit(a) != 0 && s & bit(b) != 0)
    }) else {
        return true;
    };
    if chosen.len() == r {
        return false;
    }
    let (a, b) = pairs[idx];
    let base = bit(a) | bit(b);
    let cand = touched & !base & !g.neighbors(a) & !g.neighbors(b);
    let mut sets = Vec::new();
    independent_supersets(g, base, cand, cap, &mut sets);
    // Only sets that cannot grow further inside `touched` are worth trying.
    sets.retain(|&s| count(s) == cap || touched & !s & !neighbourhood(g, s) == 0);
    for s in sets {
        chosen.push(s);
        let ok = cover_search(g, pairs, idx + 1, r, cap, touched, chosen, nodes);
        chosen.pop();
        if ok {
            return true;
        }
    }
    false
}

/// Every Ramsey graph obtained from `seeds` by deleting edges, one per
/// isomorphism class, restricted to `window`. Seeds outside the window's
/// upper end still feed the levels below it.
pub fn edge_removal_closure(
    seeds: &[Graph],
    p: &Pattern,
    window: EdgeWindow,
    opts: &Options,
) -> Result<BTreeMap<usize, Vec<CanonicalForm>>> {
    let meter = Meter::new(opts.budget);
    let mut pending: BTreeMap<usize, BTreeSet<CanonicalForm>> = BTreeMap::new();
    for g in seeds {
        pending.entry(g.edge_count()).or_default().insert(canonical_form(g));
    }
    let mut levels: BTreeMap<usize, Vec<CanonicalForm>> = BTreeMap::new();
    let floor = window.min.unwrap_or(0);
    let Some(&top) = pending.keys().next_back() else {
        return Ok(levels);
    };
    let mut carried: Vec<CanonicalForm> = Vec::new();
    for e in (floor..=top).rev() {
        let mut here: BTreeSet<CanonicalForm> = pending.remove(&e).unwrap_or_default();
        here.extend(carried.drain(..));
        let graphs: Vec<Graph> = here.iter().map(CanonicalForm::to_graph).collect();
        if e > floor {
            carried = collect_forms(&graphs, opts.parallel, |g| drop_one_edge(g, p, &meter));
            if meter.exhausted() {
                return Err(Error::ResourceLimit(format!(
                    "edge-removal closure stopped at {e} edges after {} nodes",
                    meter.nodes()
                )));
            }
        }
        if window.contains(e) && !here.is_empty() {
            levels.insert(e, here.into_iter().collect());
        }
    }
    Ok(levels)
}

fn drop_one_edge(g: &Graph, p: &Pattern, meter: &Meter) -> Vec<CanonicalForm> {
    let mut out = Vec::new();
    for (u, v) in g.edges().collect::<Vec<_>>() {
        if !meter.tick(1) {
            break;
        }
        let mut h = g.clone();
        h.remove_edge(u, v);
        if !p.found_containing(&h, bit(u) | bit(v)) {
            out.push(canonical_form(&h));
        }
    }
    out
}

/// The full census of `(3,H;n)`-graphs in `window`: mtf seeds closed under
/// edge removal.
pub fn census(p: &Pattern, n: usize, window: EdgeWindow, opts: &Options) -> Result<Census> {
    let mtf = generate_mtf_ramsey(p, n, opts)?;
    if !mtf.complete {
        let mut c = Census::new(p.clone(), n, window);
        c.complete = false;
        return Ok(c);
    }
    let seeds: Vec<Graph> = mtf.graphs().collect();
    let levels = match edge_removal_closure(&seeds, p, window, opts) {
        Ok(levels) => levels,
        Err(Error::ResourceLimit(_)) => {
            let mut c = Census::new(p.clone(), n, window);
            c.complete = false;
            return Ok(c);
        }
        Err(e) => return Err(e),
    };
    let mut c = Census::new(p.clone(), n, window);
    c.forms = levels.into_values().flatten().collect();
    Ok(c)
}

/// `e(3,H,n)` with all witnesses of that size.
#[derive(Clone, Debug)]
pub struct MinEdges {
    pub bound: Bound,
    pub witnesses: Census,
}

pub fn enumerate_min_edges(p: &Pattern, n: usize, opts: &Options) -> Result<MinEdges> {
    let full = census(p, n, EdgeWindow::ALL, opts)?;
    if !full.complete {
        return Err(Error::ResourceLimit(format!("census of ({p};{n}) incomplete")));
    }
    let note = format!("{} graphs in the ({p};{n}) census", full.len());
    match full.min_edges() {
        None => Ok(MinEdges {
            bound: Bound::new(BoundKind::Infinite, Provenance::Enumerated, note),
            witnesses: full,
        }),
        Some(e) => Ok(MinEdges {
            bound: Bound::new(BoundKind::Exact(e), Provenance::Enumerated, note),
            witnesses: full.with_edges(e),
        }),
    }
}
