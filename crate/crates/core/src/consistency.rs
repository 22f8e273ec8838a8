//! Cross-validation suites over census files: integrity, edge minimality,
//! drop/add closure between edge windows, and descent into residual censuses.
//!
//! Every suite starts with the integrity check of each file it reads, so a
//! corrupted input fails whichever suite it is given to.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm};
use crate::census::{Census, CensusFile};
use crate::error::{Error, Result};
use crate::feasibility::{deficiency_graph, deficiency_vertex, DegreeHistogram, ETableView};
use crate::graph::Graph;
use crate::graph6;
use crate::pattern::is_ramsey_graph;

/// Outcome of one suite on one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: &'static str,
    pub subject: String,
    pub passed: bool,
    /// Graphs examined.
    pub checked: usize,
    pub detail: String,
    /// First offending graph, in graph6.
    pub counterexample: Option<String>,
}

impl Report {
    fn pass(suite: &'static str, subject: &CensusFile, checked: usize, detail: impl Into<String>) -> Self {
        Report {
            suite,
            subject: subject.path.display().to_string(),
            passed: true,
            checked,
            detail: detail.into(),
            counterexample: None,
        }
    }

    fn fail(suite: &'static str, subject: &CensusFile, detail: impl Into<String>, g: Option<&Graph>) -> Self {
        Report {
            suite,
            subject: subject.path.display().to_string(),
            passed: false,
            checked: 0,
            detail: detail.into(),
            counterexample: g.map(graph6::encode),
        }
    }

    /// Relabels a failed precondition as a failure of `suite`.
    fn under(mut self, suite: &'static str) -> Self {
        self.detail = format!("{} check of {}: {}", self.suite, self.subject, self.detail);
        self.suite = suite;
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} {}: {}", self.suite, self.subject, self.detail)?;
        if let Some(g) = &self.counterexample {
            write!(f, " [counterexample {g}]")?;
        }
        Ok(())
    }
}

/// Members have the declared order, avoid the pattern, are triangle-free,
/// sit in the declared edge window, are pairwise non-isomorphic, and match
/// the manifest's counts.
pub fn check_integrity(file: &CensusFile) -> Report {
    const SUITE: &str = "integrity";
    let m = &file.manifest;
    let window = file.window();
    for g in &file.graphs {
        if g.order() != m.order {
            return Report::fail(SUITE, file, format!("order {} but manifest says {}", g.order(), m.order), Some(g));
        }
        if !is_ramsey_graph(g, &file.pattern) {
            return Report::fail(SUITE, file, format!("not a (3,{}) graph", file.pattern), Some(g));
        }
        if !window.contains(g.edge_count()) {
            return Report::fail(SUITE, file, format!("{} edges is outside the window", g.edge_count()), Some(g));
        }
    }
    let mut seen = BTreeSet::new();
    for g in &file.graphs {
        if !seen.insert(canonical_form(g)) {
            return Report::fail(SUITE, file, "duplicate isomorphism class", Some(g));
        }
    }
    let mut counts = BTreeMap::new();
    for g in &file.graphs {
        *counts.entry(g.edge_count()).or_insert(0usize) += 1;
    }
    if file.graphs.len() != m.total || counts != m.counts {
        return Report::fail(
            SUITE,
            file,
            format!(
                "counts {:?} (total {}) but manifest says {:?} (total {})",
                counts,
                file.graphs.len(),
                m.counts,
                m.total
            ),
            None,
        );
    }
    Report::pass(SUITE, file, file.graphs.len(), format!("{} graphs", file.graphs.len()))
}

fn checked(suite: &'static str, files: &[&CensusFile]) -> std::result::Result<(), Report> {
    for f in files {
        let r = check_integrity(f);
        if !r.passed {
            return Err(r.under(suite));
        }
    }
    Ok(())
}

fn first_failure<'a, F>(graphs: &'a [Graph], bad: F) -> Option<(&'a Graph, String)>
where
    F: Fn(&Graph) -> Option<String> + Sync,
{
    graphs
        .par_iter()
        .find_map_first(|g| bad(g).map(|why| (g, why)))
}

/// Every member loses the Ramsey property when any single edge is deleted.
pub fn verify_edge_minimal(file: &CensusFile) -> Report {
    const SUITE: &str = "edge-minimal";
    if let Err(r) = checked(SUITE, &[file]) {
        return r;
    }
    let p = &file.pattern;
    let found = first_failure(&file.graphs, |g| {
        g.edges().find_map(|(u, v)| {
            let mut h = g.clone();
            h.remove_edge(u, v);
            is_ramsey_graph(&h, p).then(|| format!("deleting {u}-{v} keeps it Ramsey"))
        })
    });
    match found {
        Some((g, why)) => Report::fail(SUITE, file, why, Some(g)),
        None => Report::pass(SUITE, file, file.graphs.len(), "every edge is needed"),
    }
}

/// Adding up to `f` edges to members of `lower` in all ways, and keeping
/// the Ramsey graphs inside `upper`'s window, yields only members of
/// `upper`; deleting one edge from members of `upper` and keeping the
/// Ramsey graphs inside `lower`'s window yields only members of `lower`.
pub fn verify_drop_add_closure(lower: &CensusFile, upper: &CensusFile, f: usize) -> Report {
    const SUITE: &str = "drop-add";
    if let Err(r) = checked(SUITE, &[lower, upper]) {
        return r;
    }
    if lower.manifest.order != upper.manifest.order || lower.pattern != upper.pattern {
        return Report::fail(SUITE, upper, "censuses differ in order or pattern", None);
    }
    let p = &lower.pattern;
    let up = upper.to_census();
    let low = lower.to_census();
    let (lw, uw) = (lower.window(), upper.window());

    let found = first_failure(&lower.graphs, |g| {
        let mut level: BTreeSet<CanonicalForm> = [canonical_form(g)].into();
        for added in 1..=f {
            let mut next = BTreeSet::new();
            for form in &level {
                let g = form.to_graph();
                // Only pairs that keep it triangle-free; a triangle never goes away.
                for (u, v) in g.free_pairs() {
                    let mut h = g.clone();
                    h.add_edge(u, v);
                    let hf = canonical_form(&h);
                    if is_ramsey_graph(&h, p) && uw.contains(h.edge_count()) && !up.forms.contains(&hf) {
                        return Some(format!("adding {added} edge(s) gives {hf}, missing from the upper census"));
                    }
                    next.insert(hf);
                }
            }
            level = next;
        }
        None
    });
    if let Some((g, why)) = found {
        return Report::fail(SUITE, upper, why, Some(g));
    }

    let found = first_failure(&upper.graphs, |h| {
        h.edges().find_map(|(u, v)| {
            let mut g = h.clone();
            g.remove_edge(u, v);
            (lw.contains(g.edge_count()) && is_ramsey_graph(&g, p) && !low.contains(&g))
                .then(|| format!("deleting {u}-{v} gives {}, missing from the lower census", canonical_form(&g)))
        })
    });
    match found {
        Some((g, why)) => Report::fail(SUITE, lower, why, Some(g)),
        None => Report::pass(
            SUITE,
            upper,
            lower.graphs.len() + upper.graphs.len(),
            format!("closed under adding up to {f} edges and deleting one"),
        ),
    }
}

/// Every residual `G_v` of every member is in the census for the residual
/// pattern at its order. `lower` may hold several files; a residual must
/// land in one whose order matches and whose window covers its edge count.
/// A residual no file covers is a [`Error::MissingCensus`].
pub fn verify_descent(file: &CensusFile, lower: &[CensusFile]) -> Result<Report> {
    const SUITE: &str = "descent";
    let refs: Vec<&CensusFile> = std::iter::once(file).chain(lower).collect();
    if let Err(r) = checked(SUITE, &refs) {
        return Ok(r);
    }
    let rp = file
        .pattern
        .residual_pattern()
        .ok_or_else(|| Error::MalformedInput(format!("pattern {} has no residual pattern", file.pattern)))?;
    let mut by_order: BTreeMap<usize, Vec<(crate::census::EdgeWindow, Census)>> = BTreeMap::new();
    for l in lower {
        if l.pattern != rp {
            return Err(Error::MalformedInput(format!(
                "{} holds {} graphs, expected {rp}",
                l.path.display(),
                l.pattern
            )));
        }
        if !l.manifest.complete {
            return Err(Error::MissingCensus(format!("{} is marked incomplete", l.path.display())));
        }
        by_order.entry(l.manifest.order).or_default().push((l.window(), l.to_census()));
    }

    let mut missing: Option<String> = None;
    let mut bad: Option<(&Graph, String)> = None;
    'outer: for g in &file.graphs {
        for v in 0..g.order() {
            let r = g.residual(v);
            let (n, e) = (r.order(), r.edge_count());
            let covering: Vec<&Census> = by_order
                .get(&n)
                .into_iter()
                .flatten()
                .filter(|(w, _)| w.contains(e))
                .map(|(_, c)| c)
                .collect();
            if covering.is_empty() {
                missing = Some(format!("({rp};{n},{e})"));
                break 'outer;
            }
            if !covering.iter().any(|c| c.contains(&r)) {
                bad = Some((g, format!("residual at vertex {v} ({n} vertices, {e} edges) is not in the ({rp};{n}) census")));
                break 'outer;
            }
        }
    }
    if let Some(m) = missing {
        return Err(Error::MissingCensus(m));
    }
    Ok(match bad {
        Some((g, why)) => Report::fail(SUITE, file, why, Some(g)),
        None => Report::pass(SUITE, file, file.graphs.len(), "every residual is accounted for"),
    })
}

/// Every member has `gamma(v) >= 0` at each vertex and `gamma(G) >= 0`,
/// with residual minima taken from `view`.
pub fn verify_deficiency(file: &CensusFile, view: &ETableView) -> Result<Report> {
    const SUITE: &str = "deficiency";
    if let Err(r) = checked(SUITE, &[file]) {
        return Ok(r);
    }
    let big_k = file
        .pattern
        .j_size()
        .ok_or_else(|| Error::MalformedInput(format!("deficiency needs a J pattern, got {}", file.pattern)))?;
    for g in &file.graphs {
        let (n, e) = (g.order(), g.edge_count());
        for v in 0..n {
            match deficiency_vertex(e, g.z_value(v), view, big_k, n, g.degree(v))? {
                Some(x) if x >= 0 => {}
                x => return Ok(Report::fail(SUITE, file, format!("gamma at vertex {v} is {x:?}"), Some(g))),
            }
        }
        match deficiency_graph(&DegreeHistogram::of_graph(g), view, big_k)? {
            Some(x) if x >= 0 => {}
            x => return Ok(Report::fail(SUITE, file, format!("gamma of the graph is {x:?}"), Some(g))),
        }
    }
    Ok(Report::pass(SUITE, file, file.graphs.len(), "all deficiencies nonnegative"))
}

/// Two independently produced censuses hold the same isomorphism classes.
pub fn verify_agreement(a: &CensusFile, b: &CensusFile) -> Report {
    const SUITE: &str = "agreement";
    if let Err(r) = checked(SUITE, &[a, b]) {
        return r;
    }
    let (ca, cb) = (a.to_census(), b.to_census());
    if let Some(f) = ca.forms.difference(&cb.forms).next() {
        return Report::fail(SUITE, b, format!("missing a class present in {}", a.path.display()), Some(&f.to_graph()));
    }
    if let Some(f) = cb.forms.difference(&ca.forms).next() {
        return Report::fail(SUITE, a, format!("missing a class present in {}", b.path.display()), Some(&f.to_graph()));
    }
    Report::pass(SUITE, a, ca.len(), format!("{} classes agree", ca.len()))
}

/// The three corruptions every suite must reject.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Drop the last member, leaving the manifest alone.
    RemoveMember,
    /// Append a graph that is not a Ramsey graph for the pattern.
    InsertNonRamsey,
    /// Append a relabelled copy of the first member.
    InsertDuplicate,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [Mutation::RemoveMember, Mutation::InsertNonRamsey, Mutation::InsertDuplicate];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::RemoveMember => "removed",
            Mutation::InsertNonRamsey => "nonramsey",
            Mutation::InsertDuplicate => "duplicate",
        }
    }

    /// A corrupted copy of `file`, keeping its manifest. `file` must be
    /// nonempty.
    pub fn apply(self, file: &CensusFile) -> CensusFile {
        let mut out = file.clone();
        match self {
            Mutation::RemoveMember => {
                out.graphs.pop();
            }
            Mutation::InsertNonRamsey => {
                // Same order, no edges: an independent set of every size.
                out.graphs.push(Graph::empty(file.manifest.order));
            }
            Mutation::InsertDuplicate => {
                let g = &file.graphs[0];
                let perm: Vec<usize> = (0..g.order()).rev().collect();
                out.graphs.push(g.permuted(&perm));
            }
        }
        out
    }
}
