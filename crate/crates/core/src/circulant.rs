//! Circulant graphs: construction, witness checks and exhaustive search over
//! distance sets up to multiplier equivalence.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bits::{self, bit, members, Bits, MAX_ORDER};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::Pattern;

/// Order `n` and a set of distances from `1..=n/2`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirculantSpec {
    n: usize,
    dists: Vec<usize>,
}

impl CirculantSpec {
    pub fn new(n: usize, dists: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut d: Vec<usize> = dists.into_iter().collect();
        d.sort_unstable();
        if d.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedInput(format!("repeated distance in {d:?}")));
        }
        if let Some(&x) = d.iter().find(|&&x| x == 0 || 2 * x > n) {
            return Err(Error::MalformedInput(format!("distance {x} outside 1..={}", n / 2)));
        }
        Ok(CirculantSpec { n, dists: d })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn distances(&self) -> &[usize] {
        &self.dists
    }

    /// Degree of every vertex.
    pub fn degree(&self) -> usize {
        self.dists.iter().map(|&d| if 2 * d == self.n { 1 } else { 2 }).sum()
    }

    /// The residues `±D` modulo `n` as a bit set.
    fn connection_set(&self) -> Bits {
        self.dists.iter().fold(0, |s, &d| s | bit(d) | bit((self.n - d) % self.n))
    }

    /// The lexicographically least distance set among all `u·D` with `u` a
    /// unit modulo `n`. Multiplying by a unit is an isomorphism.
    pub fn orbit_min(&self) -> CirculantSpec {
        units(self.n)
            .map(|u| self.scaled(u))
            .min()
            .unwrap_or_else(|| self.clone())
    }

    fn scaled(&self, u: usize) -> CirculantSpec {
        let n = self.n;
        let mut d: Vec<usize> = self
            .dists
            .iter()
            .map(|&x| {
                let r = x * u % n;
                r.min(n - r)
            })
            .collect();
        d.sort_unstable();
        CirculantSpec { n, dists: d }
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.dists.iter().map(|x| x.to_string()).collect();
        write!(f, "{}: {}", self.n, d.join(","))
    }
}

impl FromStr for CirculantSpec {
    type Err = Error;

    /// Parses `n: d1,d2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedInput(format!("bad circulant spec `{s}`, expected `n: d1,d2,...`"));
        let (n, ds) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let ds = ds
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        CirculantSpec::new(n, ds)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Units modulo `n` up to sign, which is all that matters on distances.
fn units(n: usize) -> impl Iterator<Item = usize> {
    (1..=n / 2).filter(move |&u| gcd(u, n) == 1)
}

pub fn build_circulant(spec: &CirculantSpec) -> Result<Graph> {
    let n = spec.n;
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let conn = spec.connection_set();
    let rows = (0..n).map(|i| rotate(conn, i, n)).collect();
    Graph::from_rows(rows)
}

/// `{s + a mod n : s in set}` for a set of residues.
fn rotate(set: Bits, a: usize, n: usize) -> Bits {
    let a = a % n;
    if a == 0 {
        return set;
    }
    ((set << a) | (set >> (n - a))) & bits::prefix(n)
}

/// Triangle-freeness from the distances alone: no `a, b, c` in `±D` with
/// `a + b + c = 0 (mod n)`, i.e. `±D` is sum-free.
pub fn sum_free(spec: &CirculantSpec) -> bool {
    spec.n <= MAX_ORDER && set_sum_free(spec.connection_set(), spec.n)
}

fn set_sum_free(conn: Bits, n: usize) -> bool {
    members(conn).all(|a| rotate(conn, a, n) & conn == 0)
}

/// Whether the circulant is a Ramsey graph for `p`. A passing order `n`
/// certifies `R(3, p) >= n + 1`.
pub fn verify_witness(spec: &CirculantSpec, p: &Pattern) -> Result<bool> {
    let g = build_circulant(spec)?;
    Ok(crate::pattern::is_ramsey_graph(&g, p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantSearch {
    /// Orbit-minimal distance sets whose circulant avoids the pattern, sorted.
    pub specs: Vec<CirculantSpec>,
    pub complete: bool,
}

/// Every nonempty distance set on `n` vertices, one per multiplier orbit,
/// whose circulant is a Ramsey graph for `p`. Distance 1 is not forced.
pub fn search_circulants(n: usize, p: &Pattern, budget: Budget) -> Result<CirculantSearch> {
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let meter = Meter::new(budget);
    // The neighbourhood is independent, so degree at most size - 1.
    let max_deg = p.size().saturating_sub(1);
    let mut cands = Vec::new();
    let mut stack = Vec::new();
    sum_free_sets(n, 1, 0, max_deg, &mut stack, &mut cands, &meter);
    let mut specs: Vec<CirculantSpec> = cands
        .into_par_iter()
        .filter(|s| s.orbit_min() == *s)
        .filter(|s| {
            if !meter.tick(1) {
                return false;
            }
            // Vertex-transitive: an occurrence exists iff one passes through 0.
            let g = build_circulant(s).expect("order checked");
            !p.found_through(&g, 0)
        })
        .collect();
    specs.sort();
    Ok(CirculantSearch {
        specs,
        complete: !meter.exhausted(),
    })
}

fn sum_free_sets(
    n: usize,
    from: usize,
    conn: Bits,
    max_deg: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<CirculantSpec>,
    meter: &Meter,
) {
    for d in from..=n / 2 {
        if !meter.tick(1) {
            return;
        }
        let next = conn | bit(d) | bit(n - d);
        if bits::count(next) > max_deg || !set_sum_free(next, n) {
            continue;
        }
        stack.push(d);
        out.push(CirculantSpec {
            n,
            dists: stack.clone(),
        });
        sum_free_sets(n, d + 1, next, max_deg, stack, out, meter);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;

    fn spec(s: &str) -> CirculantSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let s = spec("54: 2,3,9,16,20,24");
        assert_eq!(s.order(), 54);
        assert_eq!(s.distances(), &[2, 3, 9, 16, 20, 24]);
        assert_eq!(s.to_string(), "54: 2,3,9,16,20,24");
        assert!("5: 3".parse::<CirculantSpec>().is_err());
        assert!("5: 1,1".parse::<CirculantSpec>().is_err());
        assert!("5 1".parse::<CirculantSpec>().is_err());
        assert!("6: 0".parse::<CirculantSpec>().is_err());
    }

    #[test]
    fn small_builds() {
        assert_eq!(canonical_form(&build_circulant(&spec("5: 1")).unwrap()), canonical_form(&Graph::cycle(5)));
        assert_eq!(build_circulant(&spec("5: 1,2")).unwrap(), Graph::complete(5));
        let g = build_circulant(&spec("6: 3")).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(spec("6: 3").degree(), 1);
        assert!(build_circulant(&CirculantSpec::new(MAX_ORDER + 2, [1]).unwrap()).is_err());
    }

    #[test]
    fn witness_on_54() {
        let s = spec("54: 2,3,9,16,20,24");
        let g = build_circulant(&s).unwrap();
        assert_eq!(g.degrees(), vec![12; 54]);
        assert_eq!(g.edge_count(), 324);
        assert!(sum_free(&s));
        assert!(verify_witness(&s, &Pattern::j(13)).unwrap());
        assert!(!verify_witness(&s, &Pattern::j(12)).unwrap());
    }

    #[test]
    fn small_witnesses() {
        assert!(verify_witness(&spec("5: 1"), &Pattern::j(4)).unwrap());
        // C_6: dropping two vertices removes at most four of its six edges,
        // so every 4-subset spans at least two.
        let c6 = build_circulant(&spec("6: 1")).unwrap();
        let sparse = (0u64..64).filter(|m| m.count_ones() == 4).any(|m| c6.edges_within(m as Bits) <= 1);
        assert!(!sparse);
        assert!(verify_witness(&spec("6: 1"), &Pattern::j(4)).unwrap());
        assert!(!verify_witness(&spec("7: 1"), &Pattern::j(4)).unwrap());
    }

    #[test]
    fn small_searches() {
        let r = search_circulants(5, &Pattern::j(4), Budget::default()).unwrap();
        assert!(r.complete);
        assert_eq!(r.specs, vec![spec("5: 1")]);
        assert_eq!(spec("5: 2").orbit_min(), spec("5: 1"));
        let r = search_circulants(11, &Pattern::j(5), Budget::default()).unwrap();
        assert!(r.complete && r.specs.is_empty());
    }

    #[test]
    fn search_54_finds_the_witness() {
        let r = search_circulants(54, &Pattern::j(13), Budget::default()).unwrap();
        assert!(r.complete);
        assert!(r.specs.contains(&spec("54: 2,3,9,16,20,24")));
        // Three multiplier orbits, all one graph up to isomorphism.
        assert_eq!(r.specs.len(), 3);
        let forms: std::collections::BTreeSet<_> =
            r.specs.iter().map(|s| canonical_form(&build_circulant(s).unwrap())).collect();
        assert_eq!(forms.len(), 1);
        assert!(search_circulants(55, &Pattern::j(13), Budget::default()).unwrap().specs.is_empty());
    }

    #[test]
    fn search_respects_budget() {
        let r = search_circulants(54, &Pattern::j(13), Budget::nodes(100)).unwrap();
        assert!(!r.complete);
    }

    #[test]
    fn sum_free_matches_triangle_test() {
        for n in 3..=16 {
            let all: Vec<usize> = (1..=n / 2).collect();
            for mask in 1u32..(1 << all.len()) {
                let s = CirculantSpec::new(n, all.iter().copied().filter(|&d| mask >> (d - 1) & 1 == 1)).unwrap();
                assert_eq!(sum_free(&s), build_circulant(&s).unwrap().is_triangle_free(), "{s}");
            }
        }
    }

    #[test]
    fn multipliers_are_isomorphisms() {
        for text in ["13: 1,5", "17: 1,2,4,8", "20: 2,7", "54: 2,3,9,16,20,24"] {
            let s = spec(text);
            let f = canonical_form(&build_circulant(&s).unwrap());
            for u in units(s.order()) {
                assert_eq!(canonical_form(&build_circulant(&s.scaled(u)).unwrap()), f, "{text} * {u}");
            }
        }
    }
}
