//! Degree-sequence arithmetic for `(3,J_K;n,e)`-graphs.
//!
//! For a vertex `v` of degree `d`, the residual `G_v` is a
//! `(3,J_{K-1};n-d-1,e-Z(v))`-graph, so the deficiency
//! `gamma(v) = e - Z(v) - e(3,J_{K-1},n-d-1)` is nonnegative. Summing over
//! all vertices gives
//! `gamma(G) = n e - sum_i n_i (i^2 + e(3,J_{K-1},n-i-1)) >= 0`
//! where `n_i` counts vertices of degree `i`. Any lower bounds on the
//! `J_{K-1}` row may stand in for the exact values.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::etable::{Bound, BoundKind, ETable, Provenance};
use crate::graph::Graph;

/// Vertex counts per degree: `counts[i] = n_i`. Trailing zeros are trimmed
/// so equal histograms compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DegreeHistogram {
    counts: Vec<usize>,
}

impl DegreeHistogram {
    pub fn new(mut counts: Vec<usize>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        DegreeHistogram { counts }
    }

    /// From `(degree, count)` pairs.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        let top = pairs.iter().map(|&(i, _)| i + 1).max().unwrap_or(0);
        let mut counts = vec![0; top];
        for &(i, c) in pairs {
            counts[i] += c;
        }
        DegreeHistogram::new(counts)
    }

    pub fn of_graph(g: &Graph) -> Self {
        let mut counts = vec![0; g.max_degree() + 1];
        for d in g.degrees() {
            counts[d] += 1;
        }
        DegreeHistogram::new(counts)
    }

    pub fn count(&self, i: usize) -> usize {
        self.counts.get(i).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn order(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn degree_sum(&self) -> usize {
        self.counts.iter().enumerate().map(|(i, c)| i * c).sum()
    }

    pub fn edges(&self) -> Option<usize> {
        let s = self.degree_sum();
        (s % 2 == 0).then_some(s / 2)
    }

    /// `(degree, count)` for the nonzero classes, lowest degree first.
    pub fn classes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i, c))
    }
}

pub fn degree_histogram(g: &Graph) -> DegreeHistogram {
    DegreeHistogram::of_graph(g)
}

impl fmt::Display for DegreeHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.classes().map(|(i, c)| format!("n_{i}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for DegreeHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `e(3,J_K,n)` from the closed form for small orders, with `k = K - 2`:
/// `0` for `n <= k+1`; `n-k` for `k+2 <= n <= 2k`; `3n-5k` for
/// `2k < n <= 5k/2`, `k >= 3`; `5n-10k` for `5k/2 < n <= 3k`, `k >= 6`;
/// `6n-13k` for `3k < n <= 13k/4 - 1`, `k >= 6`, and also for `k = 4t`,
/// `n = 13t`. Outside these ranges `6n-13k` is still a lower bound for
/// `k >= 6`. Valid only where the value is finite.
pub fn e_closed_form(big_k: usize, n: usize) -> Option<BoundKind> {
    if big_k < 3 {
        return None;
    }
    let k = (big_k - 2) as i64;
    let n_ = n as i64;
    let exact = |v: i64| Some(BoundKind::Exact(v as usize));
    if n_ <= k + 1 {
        return exact(0);
    }
    if n_ <= 2 * k {
        return exact(n_ - k);
    }
    if k >= 3 && 2 * n_ <= 5 * k {
        return exact(3 * n_ - 5 * k);
    }
    if k >= 6 && n_ <= 3 * k {
        return exact(5 * n_ - 10 * k);
    }
    if k >= 6 && 4 * n_ <= 13 * k - 4 {
        return exact(6 * n_ - 13 * k);
    }
    if k >= 6 && k % 4 == 0 && 4 * n_ == 13 * k {
        return exact(6 * n_ - 13 * k);
    }
    if k >= 6 {
        return Some(BoundKind::AtLeast((6 * n_ - 13 * k).max(0) as usize));
    }
    None
}

/// Lower-bound lookups into an [`ETable`]: the stored (or inferred) cell,
/// else an exact closed-form value, else, only when allowed, the closed-form
/// lower bound `6n-13k`. Each use of that fallback is recorded.
#[derive(Debug)]
pub struct ETableView<'a> {
    table: &'a ETable,
    allow_closed_form_lower: bool,
    fallbacks: Mutex<BTreeSet<(usize, usize)>>,
}

impl<'a> ETableView<'a> {
    pub fn new(table: &'a ETable) -> Self {
        ETableView {
            table,
            allow_closed_form_lower: false,
            fallbacks: Mutex::new(BTreeSet::new()),
        }
    }

    pub fn with_closed_form_fallback(mut self, allow: bool) -> Self {
        self.allow_closed_form_lower = allow;
        self
    }

    pub fn table(&self) -> &ETable {
        self.table
    }

    /// Best lower bound on `e(3,J_k,n)`; `None` when no graph exists.
    pub fn lower(&self, k: usize, n: usize) -> Result<Option<usize>> {
        if let Some(b) = self.table.get(k, n) {
            return Ok(b.kind.lower());
        }
        match e_closed_form(k, n) {
            Some(BoundKind::Exact(v)) => Ok(Some(v)),
            Some(BoundKind::AtLeast(v)) if self.allow_closed_form_lower => {
                self.fallbacks.lock().expect("not poisoned").insert((k, n));
                Ok(Some(v))
            }
            _ => Err(Error::MissingTableEntry { k, n }),
        }
    }

    /// Cells answered by the `6n-13k` fallback so far.
    pub fn fallbacks_used(&self) -> Vec<(usize, usize)> {
        self.fallbacks.lock().expect("not poisoned").iter().copied().collect()
    }
}

/// `gamma(v) = e - z - e(3,J_{K-1},n-d-1)`, or `None` if no
/// `(3,J_{K-1};n-d-1)`-graph exists (the configuration is impossible).
pub fn deficiency_vertex(
    e: usize,
    z: usize,
    view: &ETableView,
    big_k: usize,
    n: usize,
    d: usize,
) -> Result<Option<i64>> {
    if d + 1 > n {
        return Ok(None);
    }
    Ok(view
        .lower(big_k - 1, n - d - 1)?
        .map(|low| e as i64 - z as i64 - low as i64))
}

/// `gamma(G) = n e - sum_i n_i (i^2 + e(3,J_{K-1},n-i-1))`, or `None` if
/// some occupied degree class has no possible residual. An odd degree sum
/// is rejected as malformed.
pub fn deficiency_graph(h: &DegreeHistogram, view: &ETableView, big_k: usize) -> Result<Option<i64>> {
    let n = h.order();
    let e = h
        .edges()
        .ok_or_else(|| Error::MalformedInput(format!("odd degree sum in {h}")))?;
    let mut gamma = (n * e) as i64;
    for (i, c) in h.classes() {
        if i + 1 > n {
            return Ok(None);
        }
        match view.lower(big_k - 1, n - i - 1)? {
            None => return Ok(None),
            Some(low) => gamma -= (c * (i * i + low)) as i64,
        }
    }
    Ok(Some(gamma))
}

/// Cost `i^2 + e(3,J_{K-1},n-i-1)` of each degree class, `None` for
/// classes that cannot occur.
fn class_costs(big_k: usize, n: usize, view: &ETableView) -> Result<Vec<Option<i64>>> {
    let mut costs = vec![None; big_k];
    for (i, slot) in costs.iter_mut().enumerate() {
        if i + 1 > n {
            break;
        }
        *slot = view.lower(big_k - 1, n - i - 1)?.map(|low| (i * i + low) as i64);
    }
    Ok(costs)
}

/// Every histogram over degrees `0..K` with `n` vertices, `e` edges and
/// `gamma(G) >= 0`, in descending lexicographic order of
/// `(n_{K-1}, ..., n_0)`. An empty answer proves no
/// `(3,J_K;n,e)`-graph exists.
pub fn feasible_degree_sequences(big_k: usize, n: usize, e: usize, view: &ETableView) -> Result<Vec<DegreeHistogram>> {
    if big_k == 0 {
        return Ok(Vec::new());
    }
    let costs = class_costs(big_k, n, view)?;
    let mut search = HistSearch {
        costs: &costs,
        counts: vec![0; big_k],
        out: Vec::new(),
    };
    let budget = n as i64 * e as i64;
    search.run(big_k - 1, n as i64, 2 * e as i64, budget);
    Ok(search.out)
}

struct HistSearch<'a> {
    costs: &'a [Option<i64>],
    counts: Vec<usize>,
    out: Vec<DegreeHistogram>,
}

impl HistSearch<'_> {
    /// Chooses `n_i, n_{i-1}, ..., n_0` for `left` vertices with degree sum
    /// `deg`, keeping the total cost within `slack`.
    fn run(&mut self, i: usize, left: i64, deg: i64, slack: i64) {
        if !self.lp_feasible(i, left, deg, slack) {
            return;
        }
        if i == 0 {
            // The whole remainder has degree 0.
            if deg == 0 {
                self.counts[0] = left as usize;
                self.out.push(DegreeHistogram::new(self.counts.clone()));
                self.counts[0] = 0;
            }
            return;
        }
        let Some(c) = self.costs[i] else {
            self.run(i - 1, left, deg, slack);
            return;
        };
        let ii = i as i64;
        let top = left.min(deg / ii);
        for take in (0..=top).rev() {
            let cost = take * c;
            if cost > slack {
                continue;
            }
            self.counts[i] = take as usize;
            self.run(i - 1, left - take, deg - take * ii, slack - cost);
        }
        self.counts[i] = 0;
    }

    /// Whether the linear relaxation over classes `0..=i` can place `left`
    /// vertices with degree sum `deg` at cost at most `slack`. Its optimum
    /// uses at most two classes `a <= deg/left <= b`.
    fn lp_feasible(&self, i: usize, left: i64, deg: i64, slack: i64) -> bool {
        if left == 0 {
            return deg == 0;
        }
        let classes: Vec<(i64, i64)> = (0..=i)
            .filter_map(|j| self.costs[j].map(|c| (j as i64, c)))
            .collect();
        for &(a, ca) in &classes {
            if a * left > deg {
                continue;
            }
            for &(b, cb) in &classes {
                if b * left < deg || b < a {
                    continue;
                }
                let ok = if a == b {
                    a * left == deg && left * ca <= slack
                } else {
                    // Cost of the mix is (ca (b L - D) + cb (D - a L)) / (b - a).
                    (ca * (b * left - deg) + cb * (deg - a * left)) as i128 <= slack as i128 * (b - a) as i128
                };
                if ok {
                    return true;
                }
            }
        }
        false
    }
}

/// Whether `h` survives the per-vertex test: for every occupied degree
/// class `d`, the smallest possible `Z(v)` (the `d` smallest degrees among
/// the other vertices, degree-0 vertices excluded) must leave
/// `gamma(v) >= 0`. Adjacency among the neighbours is not modelled.
pub fn refine_per_vertex(h: &DegreeHistogram, e: usize, big_k: usize, view: &ETableView) -> Result<bool> {
    let n = h.order();
    for (d, _) in h.classes() {
        let Some(z) = min_z(h, d) else {
            return Ok(false);
        };
        match deficiency_vertex(e, z, view, big_k, n, d)? {
            Some(g) if g >= 0 => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Smallest neighbour degree sum of a degree-`d` vertex, or `None` if too
/// few other vertices have positive degree.
pub fn min_z(h: &DegreeHistogram, d: usize) -> Option<usize> {
    let mut need = d;
    let mut z = 0;
    for (j, c) in h.classes() {
        if j == 0 || need == 0 {
            continue;
        }
        let avail = if j == d { c - 1 } else { c };
        let take = avail.min(need);
        z += take * j;
        need -= take;
    }
    (need == 0).then_some(z)
}

/// Which test a lower bound is computed with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Level {
    /// `gamma(G) >= 0` only.
    Graph,
    /// `gamma(G) >= 0` and the per-vertex test.
    Vertex,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LowerBoundReport {
    pub kind: BoundKind,
    /// Histograms surviving at the bound (empty for Infinite).
    pub histograms: Vec<DegreeHistogram>,
    /// Histograms passing `gamma(G) >= 0` but rejected per vertex, at edge
    /// counts up to the bound.
    pub rejected_per_vertex: Vec<(usize, DegreeHistogram)>,
}

/// Least `e` admitting a histogram that survives the chosen test, as
/// AtLeast(e); Infinite when none survives up to `(K-1) n / 2`.
pub fn min_edges_lower_bound(big_k: usize, n: usize, view: &ETableView, level: Level) -> Result<LowerBoundReport> {
    min_edges_lower_bound_from(big_k, n, view, level, 0)
}

/// As [`min_edges_lower_bound`], starting the scan at `e_start` (a known
/// lower bound).
pub fn min_edges_lower_bound_from(
    big_k: usize,
    n: usize,
    view: &ETableView,
    level: Level,
    e_start: usize,
) -> Result<LowerBoundReport> {
    let max_e = big_k.saturating_sub(1) * n / 2;
    let mut rejected = Vec::new();
    for e in e_start..=max_e {
        let hs = feasible_degree_sequences(big_k, n, e, view)?;
        let mut keep = Vec::new();
        for h in hs {
            if level == Level::Graph || refine_per_vertex(&h, e, big_k, view)? {
                keep.push(h);
            } else {
                rejected.push((e, h));
            }
        }
        if !keep.is_empty() {
            return Ok(LowerBoundReport {
                kind: BoundKind::AtLeast(e),
                histograms: keep,
                rejected_per_vertex: rejected,
            });
        }
    }
    Ok(LowerBoundReport {
        kind: BoundKind::Infinite,
        histograms: Vec::new(),
        rejected_per_vertex: rejected,
    })
}

/// Derives row `K` from row `K-1` for every order in `ns` (default: from
/// `K` until the first Infinite), merging each result into `table`. A cell
/// takes the closed form instead when that is stronger than the degree
/// sequence bound. Returns the derived bounds, before merging.
pub fn propagate(
    table: &mut ETable,
    big_k: usize,
    ns: Option<std::ops::RangeInclusive<usize>>,
    allow_closed_form_lower: bool,
) -> Result<Vec<(usize, Bound)>> {
    let mut derived = Vec::new();
    {
        let view = ETableView::new(table).with_closed_form_fallback(allow_closed_form_lower);
        let (lo, hi) = match &ns {
            Some(r) => (*r.start(), *r.end()),
            None => (big_k, crate::bits::MAX_ORDER.max(big_k)),
        };
        for n in lo..=hi {
            let rep = min_edges_lower_bound(big_k, n, &view, Level::Vertex)?;
            let note = match &rep.kind {
                BoundKind::Infinite => "no feasible degree sequence".to_string(),
                _ if rep.histograms.len() == 1 => format!("unique solution {}", rep.histograms[0]),
                _ => String::new(),
            };
            let inf = rep.kind.is_infinite();
            let bound = match (rep.kind, e_closed_form(big_k, n)) {
                (BoundKind::AtLeast(a), Some(cf @ BoundKind::Exact(_))) if cf.lower() >= Some(a) => {
                    Bound::new(cf, Provenance::ClosedForm, "closed form")
                }
                (BoundKind::AtLeast(a), Some(cf @ BoundKind::AtLeast(c))) if c > a => {
                    Bound::new(cf, Provenance::ClosedForm, format!("closed form; degree sequences give {a}"))
                }
                (kind, _) => Bound::new(kind, Provenance::Feasibility, note),
            };
            derived.push((n, bound));
            if inf && ns.is_none() {
                break;
            }
        }
        let used = view.fallbacks_used();
        if !used.is_empty() {
            for (_, b) in derived.iter_mut() {
                b.note = format!("{} [closed-form fallback at {:?}]", b.note, used).trim().to_string();
            }
        }
    }
    for (n, b) in &derived {
        table.merge(big_k, *n, b.clone())?;
    }
    Ok(derived)
}
