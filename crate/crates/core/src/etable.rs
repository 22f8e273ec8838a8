//! Ledger of bounds on `e(3,J_K,n)` with provenance.
//!
//! Ledger files hold one record per line:
//! `K,n,kind,value,provenance,note` with `kind` one of `exact`, `atleast`,
//! `infinite` (empty value), `#` starting a comment. The note runs to the end
//! of the line and may contain commas.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundKind {
    Exact(usize),
    AtLeast(usize),
    /// No graph exists.
    Infinite,
}

impl BoundKind {
    /// Best known lower bound; `None` for Infinite.
    pub fn lower(&self) -> Option<usize> {
        match *self {
            BoundKind::Exact(v) | BoundKind::AtLeast(v) => Some(v),
            BoundKind::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundKind::Infinite)
    }

    /// Whether every value admitted by `self` is also admitted by `other`
    /// (i.e. `self` is at least as strong).
    pub fn implies(&self, other: &BoundKind) -> bool {
        use BoundKind::*;
        match (*self, *other) {
            (Infinite, AtLeast(_)) | (Infinite, Infinite) => true,
            (Infinite, Exact(_)) => false,
            (Exact(a), Exact(b)) => a == b,
            (Exact(a), AtLeast(b)) | (AtLeast(a), AtLeast(b)) => a >= b,
            (AtLeast(_), Exact(_)) | (_, Infinite) => false,
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Exact(v) => write!(f, "Exact {v}"),
            BoundKind::AtLeast(v) => write!(f, "AtLeast {v}"),
            BoundKind::Infinite => write!(f, "Infinite"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    ClosedForm,
    Enumerated,
    Gluing,
    Feasibility,
    Imported,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Enumerated => "enumerated",
            Provenance::Gluing => "gluing",
            Provenance::Feasibility => "feasibility",
            Provenance::Imported => "imported",
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "closed-form" | "theorem1" => Provenance::ClosedForm,
            "enumerated" => Provenance::Enumerated,
            "gluing" => Provenance::Gluing,
            "feasibility" => Provenance::Feasibility,
            "imported" => Provenance::Imported,
            _ => return Err(Error::MalformedInput(format!("unknown provenance `{s}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub kind: BoundKind,
    pub provenance: Provenance,
    pub note: String,
}

impl Bound {
    pub fn new(kind: BoundKind, provenance: Provenance, note: impl Into<String>) -> Self {
        Bound {
            kind,
            provenance,
            note: note.into(),
        }
    }

    pub fn exact(v: usize, provenance: Provenance) -> Self {
        Bound::new(BoundKind::Exact(v), provenance, "")
    }

    pub fn at_least(v: usize, provenance: Provenance) -> Self {
        Bound::new(BoundKind::AtLeast(v), provenance, "")
    }

    pub fn infinite(provenance: Provenance) -> Self {
        Bound::new(BoundKind::Infinite, provenance, "")
    }
}

/// Bounds keyed by `(K, n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ETable {
    cells: BTreeMap<(usize, usize), Bound>,
}

impl ETable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Bound)> {
        self.cells.iter()
    }

    /// The stored record, without any inference.
    pub fn stored(&self, k: usize, n: usize) -> Option<&Bound> {
        self.cells.get(&(k, n))
    }

    /// The stored bound, else Exact(0) for `n < K`, else Infinite when a
    /// smaller order of the same row is Infinite. `None` means unknown.
    pub fn get(&self, k: usize, n: usize) -> Option<Bound> {
        if let Some(b) = self.cells.get(&(k, n)) {
            return Some(b.clone());
        }
        if n < k {
            return Some(Bound::new(BoundKind::Exact(0), Provenance::ClosedForm, "no edges needed below K"));
        }
        self.ramsey_upper(k).filter(|&r| r <= n).map(|r| {
            Bound::new(
                BoundKind::Infinite,
                self.cells[&(k, r)].provenance,
                format!("Infinite at n={r}"),
            )
        })
    }

    /// Merges `b` into cell `(k, n)` without ever weakening it. Bounds that
    /// contradict each other (two different Exact values, an AtLeast above
    /// an Exact, Infinite against Exact) are an error.
    pub fn merge(&mut self, k: usize, n: usize, b: Bound) -> Result<bool> {
        use BoundKind::*;
        let Some(old) = self.cells.get(&(k, n)) else {
            self.cells.insert((k, n), b);
            return Ok(true);
        };
        let conflict = || Error::ExactConflict {
            k,
            n,
            old: old.kind.to_string(),
            new: b.kind.to_string(),
        };
        let replace = match (old.kind, b.kind) {
            (Exact(a), Exact(c)) if a != c => return Err(conflict()),
            (Exact(a), AtLeast(c)) if c > a => return Err(conflict()),
            (AtLeast(a), Exact(c)) if a > c => return Err(conflict()),
            (Exact(_), Infinite) | (Infinite, Exact(_)) => return Err(conflict()),
            (Exact(_), _) => false,
            (AtLeast(_), Exact(_)) => true,
            (AtLeast(a), AtLeast(c)) => c > a,
            (AtLeast(_), Infinite) => true,
            (Infinite, _) => false,
        };
        if replace {
            self.cells.insert((k, n), b);
        }
        Ok(replace)
    }

    pub fn merge_table(&mut self, other: &ETable) -> Result<()> {
        for (&(k, n), b) in &other.cells {
            self.merge(k, n, b.clone())?;
        }
        Ok(())
    }

    /// Least `n` whose cell in row `k` is Infinite.
    pub fn ramsey_upper(&self, k: usize) -> Option<usize> {
        self.cells
            .range((k, 0)..=(k, usize::MAX))
            .find(|(_, b)| b.kind.is_infinite())
            .map(|(&(_, n), _)| n)
    }

    /// Orders present in row `k`.
    pub fn row(&self, k: usize) -> impl Iterator<Item = (usize, &Bound)> {
        self.cells.range((k, 0)..=(k, usize::MAX)).map(|(&(_, n), b)| (n, b))
    }

    pub fn rows(&self) -> Vec<usize> {
        let mut ks: Vec<usize> = self.cells.keys().map(|&(k, _)| k).collect();
        ks.dedup();
        ks
    }

    /// Checks the row invariants: finite values nondecreasing in `n` and
    /// nothing finite above an Infinite cell. Returns the first violation.
    pub fn check_monotone(&self) -> Option<String> {
        for k in self.rows() {
            let mut prev: Option<(usize, BoundKind)> = None;
            for (n, b) in self.row(k) {
                if let Some((pn, pk)) = prev {
                    match (pk, b.kind) {
                        (BoundKind::Infinite, BoundKind::Infinite) => {}
                        (BoundKind::Infinite, _) => {
                            return Some(format!("K={k}: finite bound at n={n} above Infinite at n={pn}"));
                        }
                        (BoundKind::Exact(a), BoundKind::Exact(c)) if c < a => {
                            return Some(format!("K={k}: exact value drops from {a} at n={pn} to {c} at n={n}"));
                        }
                        (BoundKind::Exact(a), BoundKind::AtLeast(c)) if c < a => {
                            return Some(format!("K={k}: bound at n={n} is below the exact value at n={pn}"));
                        }
                        _ => {}
                    }
                }
                prev = Some((n, b.kind));
            }
        }
        None
    }

    pub fn parse(text: &str) -> Result<ETable> {
        let mut t = ETable::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |why: &str| Error::MalformedInput(format!("ledger line {}: {why}: `{raw}`", lineno + 1));
            let f: Vec<&str> = line.splitn(6, ',').map(str::trim).collect();
            if f.len() < 5 {
                return Err(bad("expected K,n,kind,value,provenance[,note]"));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad("not a number"));
            let k = num(f[0])?;
            let n = num(f[1])?;
            let kind = match f[2] {
                "exact" => BoundKind::Exact(num(f[3])?),
                "atleast" => BoundKind::AtLeast(num(f[3])?),
                "infinite" if f[3].is_empty() => BoundKind::Infinite,
                "infinite" => return Err(bad("infinite takes no value")),
                _ => return Err(bad("unknown kind")),
            };
            let provenance = f[4].parse().map_err(|_| bad("unknown provenance"))?;
            let note = f.get(5).copied().unwrap_or("").to_string();
            t.merge(k, n, Bound { kind, provenance, note })?;
        }
        Ok(t)
    }

    pub fn load(path: &Path) -> Result<ETable> {
        ETable::parse(&std::fs::read_to_string(path)?)
    }

    /// Ledger text sorted by `(K, n)`.
    pub fn export(&self) -> String {
        let mut out = String::from("# K,n,kind,value,provenance,note\n");
        for (&(k, n), b) in &self.cells {
            let (kind, value) = match b.kind {
                BoundKind::Exact(v) => ("exact", v.to_string()),
                BoundKind::AtLeast(v) => ("atleast", v.to_string()),
                BoundKind::Infinite => ("infinite", String::new()),
            };
            out.push_str(&format!("{k},{n},{kind},{value},{},{}\n", b.provenance.as_str(), b.note));
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.export())?;
        Ok(())
    }

    /// A grid with one row per order and one column per `K`: exact values
    /// plain, lower bounds prefixed by `>=`, `inf` where no graph exists,
    /// blank where unknown.
    pub fn grid(&self, ks: &[usize], ns: std::ops::RangeInclusive<usize>) -> String {
        let cell = |k: usize, n: usize| -> String {
            match self.get(k, n).map(|b| b.kind) {
                Some(BoundKind::Exact(v)) => v.to_string(),
                Some(BoundKind::AtLeast(v)) => format!(">={v}"),
                Some(BoundKind::Infinite) => "inf".to_string(),
                None => String::new(),
            }
        };
        let mut out = format!("{:>4}", "n");
        for k in ks {
            out.push_str(&format!(" {:>6}", format!("K={k}")));
        }
        out.push('\n');
        for n in ns {
            // Past the first Infinite of a row only blanks are printed, like
            // the usual presentation of such tables.
            let mut line = format!("{n:>4}");
            for &k in ks {
                let shown = match self.ramsey_upper(k) {
                    Some(r) if n > r => String::new(),
                    _ => cell(k, n),
                };
                line.push_str(&format!(" {shown:>6}"));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(kind: BoundKind) -> Bound {
        Bound::new(kind, Provenance::Imported, "")
    }

    #[test]
    fn merge_never_weakens() {
        let mut t = ETable::new();
        t.merge(10, 26, b(BoundKind::Exact(52))).unwrap();
        assert!(!t.merge(10, 26, b(BoundKind::AtLeast(50))).unwrap());
        assert_eq!(t.get(10, 26).unwrap().kind, BoundKind::Exact(52));
        assert!(matches!(
            t.merge(10, 26, b(BoundKind::Exact(53))),
            Err(Error::ExactConflict { k: 10, n: 26, .. })
        ));
        t.merge(12, 40, b(BoundKind::AtLeast(120))).unwrap();
        assert!(t.merge(12, 40, b(BoundKind::AtLeast(128))).unwrap());
        assert!(!t.merge(12, 40, b(BoundKind::AtLeast(127))).unwrap());
        assert!(t.merge(12, 40, b(BoundKind::Infinite)).unwrap());
        assert!(!t.merge(12, 40, b(BoundKind::AtLeast(500))).unwrap());
    }

    #[test]
    fn inference_and_upper() {
        let mut t = ETable::new();
        assert_eq!(t.ramsey_upper(10), None);
        assert_eq!(t.get(10, 9).unwrap().kind, BoundKind::Exact(0));
        assert!(t.get(10, 20).is_none());
        t.merge(10, 37, b(BoundKind::Infinite)).unwrap();
        assert_eq!(t.ramsey_upper(10), Some(37));
        assert_eq!(t.get(10, 40).unwrap().kind, BoundKind::Infinite);
        assert!(t.get(10, 36).is_none());
    }

    #[test]
    fn ledger_round_trip() {
        let text = "# comment\n10,36,exact,156,imported,maximum 162, per row\n10,37,infinite,,imported,\n11,35,atleast,107,imported,extender\n";
        let t = ETable::parse(text).unwrap();
        assert_eq!(t.get(10, 36).unwrap().note, "maximum 162, per row");
        let again = ETable::parse(&t.export()).unwrap();
        assert_eq!(again, t);
        assert_eq!(again.export(), t.export());
    }

    #[test]
    fn bad_ledgers() {
        assert!(ETable::parse("10,36,exactly,156,imported").is_err());
        assert!(ETable::parse("10,36,exact,x,imported").is_err());
        assert!(ETable::parse("10,36,infinite,3,imported").is_err());
        assert!(ETable::parse("10,36,exact,156,guess").is_err());
        assert!(ETable::parse("10,36,exact").is_err());
    }

    #[test]
    fn monotone_check() {
        let mut t = ETable::parse("5,9,exact,12,enumerated,\n5,10,exact,15,enumerated,\n5,11,infinite,,enumerated,\n")
            .unwrap();
        assert_eq!(t.check_monotone(), None);
        t.merge(5, 12, b(BoundKind::AtLeast(3))).unwrap();
        assert!(t.check_monotone().is_some());
    }

    #[test]
    fn implication() {
        assert!(BoundKind::Infinite.implies(&BoundKind::AtLeast(9)));
        assert!(BoundKind::Exact(9).implies(&BoundKind::AtLeast(9)));
        assert!(!BoundKind::AtLeast(9).implies(&BoundKind::Exact(9)));
    }
}
