//! Neighbourhood gluing: from a `(3,J_k;m)`-graph `H` and a degree `d`, all
//! `(3,J_{k+1};m+d+1)`-graphs with a vertex `v` of degree `d` whose residual
//! is `H`.
//!
//! In the output `H` keeps vertices `0..m`, the neighbours `u_1..u_d` of `v`
//! are `m..m+d` and `v` is `m+d`. The only new edges are `v-u_i` and `u_i-s`
//! for `s` in the independent set `S_i` glued to `u_i`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bits::{bit, count, members, Bits};
use crate::budget::{Budget, Meter};
use crate::canon::{canonical_form, CanonicalForm};
use crate::census::{Census, EdgeWindow};
use crate::enumerate::collect_forms;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::Pattern;

#[derive(Clone, Debug)]
pub struct GlueJob {
    pub host: Graph,
    /// Size `k` of the pattern `J_k` the host avoids; outputs avoid `J_{k+1}`.
    pub k: usize,
    pub d: usize,
    pub window: EdgeWindow,
    /// Keep only outputs in which `v` has maximum degree.
    pub require_max_degree: bool,
    /// Apply the two pruning rules. Disabled, the search only filters
    /// complete candidates, which makes it an oracle for the pruned search.
    pub pruning: bool,
}

impl GlueJob {
    pub fn new(host: Graph, k: usize, d: usize) -> Self {
        GlueJob {
            host,
            k,
            d,
            window: EdgeWindow::ALL,
            require_max_degree: false,
            pruning: true,
        }
    }

    pub fn order(&self) -> usize {
        self.host.order() + self.d + 1
    }
}

/// Independent sets `S` of `h` (the empty set included) such that
/// `h - S` has no independent set of order `k - 1`: otherwise a neighbour
/// glued to `S`, together with `v` and that independent set, would span a
/// `J_{k+1}` in the complement.
pub fn eligible_independent_sets(h: &Graph, k: usize) -> Vec<Bits> {
    let all = h.vertices();
    let mut out = Vec::new();
    let mut stack = vec![(0 as Bits, all)];
    while let Some((s, cand)) = stack.pop() {
        if k == 0 || !crate::pattern::has_independent_set(h, all & !s, k - 1) {
            out.push(s);
        }
        let mut rest = cand;
        while let Some(v) = crate::bits::first(rest) {
            rest &= !bit(v);
            stack.push((s | bit(v), rest & !h.neighbors(v)));
        }
    }
    out.sort_by_key(|&s| (count(s), s));
    out
}

/// Abort signal for a partial gluing: with two or more sets assigned, the
/// vertices of `h` outside all of them must not contain a `J_{k-1}` in the
/// complement, since two neighbours of `v` would complete it to `J_{k+1}`.
pub fn prune_residual(h: &Graph, glued: &[Bits], k: usize) -> bool {
    if glued.len() < 2 || k < 1 {
        return false;
    }
    let union = glued.iter().fold(0 as Bits, |a, &s| a | s);
    Pattern::j(k - 1).found_within(h, h.vertices() & !union)
}

/// All outputs of `job`, one per isomorphism class.
pub fn glue_extend(job: &GlueJob, budget: Budget) -> Result<Census> {
    let meter = Meter::new(budget);
    let forms = glue_forms(job, &meter, true);
    if meter.exhausted() {
        return Err(Error::ResourceLimit(format!("gluing stopped after {} nodes", meter.nodes())));
    }
    let mut c = Census::new(Pattern::j(job.k + 1), job.order(), job.window);
    c.forms = forms.into_iter().collect();
    Ok(c)
}

fn glue_forms(job: &GlueJob, meter: &Meter, parallel: bool) -> Vec<CanonicalForm> {
    let search = match Search::new(job) {
        Some(s) => s,
        None => return Vec::new(),
    };
    if job.d == 0 {
        let mut out = Vec::new();
        search.finish(&[], meter, &mut out);
        return out;
    }
    let firsts: Vec<usize> = (0..search.sets.len()).collect();
    collect_forms(&firsts, parallel, |&i| {
        let mut out = Vec::new();
        let mut state = State::new(&search);
        if state.push(&search, i) {
            search.descend(&mut state, meter, &mut out);
        }
        out
    })
}

struct Search<'a> {
    job: &'a GlueJob,
    target: Pattern,
    sets: Vec<Bits>,
    /// Degree cap for every vertex of the output.
    cap: usize,
    host_edges: usize,
}

struct State {
    chosen: Vec<usize>,
    degree: Vec<usize>,
    edges: usize,
    partial: Graph,
}

impl State {
    fn new(s: &Search) -> State {
        State {
            chosen: Vec::with_capacity(s.job.d),
            degree: s.job.host.degrees(),
            edges: s.host_edges + s.job.d,
            partial: s.job.host.clone(),
        }
    }

    /// Assigns set `i` to the next neighbour; false if that breaks a rule.
    fn push(&mut self, s: &Search, i: usize) -> bool {
        let set = s.sets[i];
        let job = s.job;
        if job.pruning {
            if members(set).any(|x| self.degree[x] + 1 > s.cap) {
                return false;
            }
            // Sets come in nondecreasing size, so the rest cost at least this much.
            let left = job.d - self.chosen.len() - 1;
            let low = self.edges + count(set) + left * count(set);
            if job.window.max.is_some_and(|m| low > m) {
                return false;
            }
            let high = self.edges + count(set) + left * count(*s.sets.last().expect("non-empty"));
            if job.window.min.is_some_and(|m| high < m) {
                return false;
            }
            for &j in &self.chosen {
                if prune_residual(&job.host, &[s.sets[j], set], job.k) {
                    return false;
                }
            }
        }
        for x in members(set) {
            self.degree[x] += 1;
        }
        self.edges += count(set);
        self.chosen.push(i);
        let u = self.partial.push_vertex(set);
        if job.pruning && s.target.found_through(&self.partial, u) {
            self.pop(s);
            return false;
        }
        true
    }

    fn pop(&mut self, s: &Search) {
        let i = self.chosen.pop().expect("something assigned");
        let set = s.sets[i];
        for x in members(set) {
            self.degree[x] -= 1;
        }
        self.edges -= count(set);
        let last = self.partial.order() - 1;
        self.partial = self.partial.delete_vertex(last);
    }
}

impl<'a> Search<'a> {
    fn new(job: &'a GlueJob) -> Option<Search<'a>> {
        let k = job.k;
        // Degrees stay below the target pattern size k + 1.
        let mut cap = k;
        if job.require_max_degree {
            cap = cap.min(job.d);
        }
        if job.d > cap || job.host.max_degree() > cap {
            return None;
        }
        let mut sets = eligible_independent_sets(&job.host, k);
        if !job.pruning {
            // The oracle tries every independent set.
            sets = all_independent_sets(&job.host);
        }
        // A neighbour u_i has degree |S_i| + 1.
        sets.retain(|&s| count(s) < cap);
        if sets.is_empty() && job.d > 0 {
            return None;
        }
        Some(Search {
            job,
            target: Pattern::j(k + 1),
            sets,
            cap,
            host_edges: job.host.edge_count(),
        })
    }

    fn descend(&self, state: &mut State, meter: &Meter, out: &mut Vec<CanonicalForm>) {
        if !meter.tick(1) {
            return;
        }
        if state.chosen.len() == self.job.d {
            let chosen: Vec<Bits> = state.chosen.iter().map(|&i| self.sets[i]).collect();
            self.finish(&chosen, meter, out);
            return;
        }
        let from = *state.chosen.last().expect("first set assigned by caller");
        for i in from..self.sets.len() {
            if state.push(self, i) {
                self.descend(state, meter, out);
                state.pop(self);
            }
        }
    }

    /// Builds the output for a complete assignment and keeps it if valid.
    fn finish(&self, chosen: &[Bits], _meter: &Meter, out: &mut Vec<CanonicalForm>) {
        let job = self.job;
        let m = job.host.order();
        let mut g = job.host.clone();
        for &s in chosen {
            g.push_vertex(s);
        }
        let v = g.push_vertex(((m..m + job.d).fold(0 as Bits, |a, u| a | bit(u))) as Bits);
        if !job.window.contains(g.edge_count()) {
            return;
        }
        if job.require_max_degree && g.max_degree() > job.d {
            return;
        }
        if g.max_degree() > job.k {
            return;
        }
        if !job.pruning {
            if !crate::pattern::is_ramsey_graph(&g, &self.target) {
                return;
            }
        } else if self.target.found_through(&g, v) {
            return;
        }
        out.push(canonical_form(&g));
    }
}

fn all_independent_sets(h: &Graph) -> Vec<Bits> {
    let mut out = Vec::new();
    let mut stack = vec![(0 as Bits, h.vertices())];
    while let Some((s, cand)) = stack.pop() {
        out.push(s);
        let mut rest = cand;
        while let Some(v) = crate::bits::first(rest) {
            rest &= !bit(v);
            stack.push((s | bit(v), rest & !h.neighbors(v)));
        }
    }
    out.sort_by_key(|&s| (count(s), s));
    out
}

/// Glues every host of `hosts` (a complete `(3,J_k;m)` census) with degree
/// `d = n - m - 1`, keeping outputs in `window` where `v` has maximum
/// degree. Work items are `(host, first set)` pairs.
pub fn glue_hosts(
    hosts: &Census,
    n: usize,
    window: EdgeWindow,
    require_max_degree: bool,
    parallel: bool,
    meter: &Meter,
) -> Vec<CanonicalForm> {
    let k = hosts.pattern.j_size().expect("hosts avoid a J pattern");
    let m = hosts.order;
    if n < m + 1 {
        return Vec::new();
    }
    let d = n - m - 1;
    let jobs: Vec<GlueJob> = hosts
        .graphs()
        .map(|h| GlueJob {
            host: h,
            k,
            d,
            window,
            require_max_degree,
            pruning: true,
        })
        .collect();
    collect_forms(&jobs, parallel, |job| glue_forms(job, meter, false))
}

/// Builds `(3,J_k;n)` censuses by gluing, starting from the trivial `J_2`
/// censuses (only the graphs on zero and one vertex avoid `J_2`).
#[derive(Debug)]
pub struct GluingCensus {
    pub parallel: bool,
    meter: Meter,
    cache: BTreeMap<(usize, usize), Census>,
}

impl GluingCensus {
    pub fn new(budget: Budget, parallel: bool) -> Self {
        GluingCensus {
            parallel,
            meter: Meter::new(budget),
            cache: BTreeMap::new(),
        }
    }

    /// Supplies a census computed elsewhere, e.g. by the enumeration module.
    pub fn insert(&mut self, c: Census) {
        if let Some(k) = c.pattern.j_size() {
            self.cache.insert((k, c.order), c);
        }
    }

    /// The full `(3,J_k;n)` census. Every such graph has a vertex `v` of
    /// maximum degree `d < k`, and its residual is a `(3,J_{k-1};n-d-1)`
    /// graph, so gluing all smaller censuses with `v` forced to maximum
    /// degree reaches every class.
    pub fn census(&mut self, k: usize, n: usize) -> Result<Census> {
        self.census_in(k, n, EdgeWindow::ALL)
    }

    pub fn census_in(&mut self, k: usize, n: usize, window: EdgeWindow) -> Result<Census> {
        if let Some(c) = self.cache.get(&(k, n)) {
            return Ok(c.restrict(window));
        }
        let p = Pattern::j(k);
        let mut c = Census::new(p.clone(), n, window);
        if k <= 2 {
            if n <= 1 && k == 2 {
                c.forms.insert(canonical_form(&Graph::empty(n)));
            }
            if k < 2 && n < k {
                c.forms.insert(canonical_form(&Graph::empty(n)));
            }
        } else if n == 0 {
            c.forms.insert(canonical_form(&Graph::empty(0)));
        } else {
            let mut forms = Vec::new();
            for d in 0..k.min(n) {
                let m = n - d - 1;
                let hosts = self.census(k - 1, m)?;
                forms.extend(glue_hosts(&hosts, n, window, true, self.parallel, &self.meter));
                if self.meter.exhausted() {
                    return Err(Error::ResourceLimit(format!(
                        "gluing census of (J{k};{n}) stopped after {} nodes",
                        self.meter.nodes()
                    )));
                }
            }
            c.forms = forms.into_iter().collect();
        }
        if window == EdgeWindow::ALL {
            self.cache.insert((k, n), c.clone());
        }
        Ok(c)
    }
}

/// Every `(3,J_{k+1};n)`-graph in `window` reachable by gluing some host of
/// `hosts` (any orders) with any degree, not only maximum degree.
pub fn glue_union(hosts: &[Census], n: usize, window: EdgeWindow, parallel: bool, budget: Budget) -> Result<Census> {
    let meter = Meter::new(budget);
    let k = hosts
        .first()
        .and_then(|c| c.pattern.j_size())
        .ok_or_else(|| Error::MalformedInput("gluing needs J-pattern host censuses".into()))?;
    let mut forms: Vec<CanonicalForm> = hosts
        .par_iter()
        .with_max_len(1)
        .flat_map_iter(|h| glue_hosts(h, n, window, false, parallel, &meter))
        .collect();
    forms.sort_unstable();
    forms.dedup();
    if meter.exhausted() {
        return Err(Error::ResourceLimit(format!("gluing stopped after {} nodes", meter.nodes())));
    }
    let mut c = Census::new(Pattern::j(k + 1), n, window);
    c.forms = forms.into_iter().collect();
    Ok(c)
}
