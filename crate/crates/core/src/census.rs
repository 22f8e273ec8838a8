//! Canonically deduplicated graph sets and their on-disk form: a graph6
//! file plus a JSON manifest beside it.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::pattern::Pattern;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWindow {
    pub min: Option<usize>,
    pub max: Option<usize>,
}

impl EdgeWindow {
    pub const ALL: EdgeWindow = EdgeWindow { min: None, max: None };

    pub fn new(min: Option<usize>, max: Option<usize>) -> Self {
        EdgeWindow { min, max }
    }

    pub fn exactly(e: usize) -> Self {
        EdgeWindow {
            min: Some(e),
            max: Some(e),
        }
    }

    pub fn at_most(e: usize) -> Self {
        EdgeWindow { min: None, max: Some(e) }
    }

    pub fn contains(&self, e: usize) -> bool {
        self.min.is_none_or(|m| e >= m) && self.max.is_none_or(|m| e <= m)
    }
}

/// A set of `(3,H;n)`-graphs within an edge window, one canonical form per
/// isomorphism class.
#[derive(Clone, Debug)]
pub struct Census {
    pub pattern: Pattern,
    pub order: usize,
    pub window: EdgeWindow,
    pub forms: BTreeSet<CanonicalForm>,
    pub complete: bool,
}

impl Census {
    pub fn new(pattern: Pattern, order: usize, window: EdgeWindow) -> Self {
        Census {
            pattern,
            order,
            window,
            forms: BTreeSet::new(),
            complete: true,
        }
    }

    pub fn from_graphs<'a, I: IntoIterator<Item = &'a Graph>>(
        pattern: Pattern,
        order: usize,
        window: EdgeWindow,
        graphs: I,
    ) -> Self {
        let mut c = Census::new(pattern, order, window);
        c.forms = graphs.into_iter().map(canonical_form).collect();
        c
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Canonically labelled members, in canonical-form order.
    pub fn graphs(&self) -> impl Iterator<Item = Graph> + '_ {
        self.forms.iter().map(|f| f.to_graph())
    }

    pub fn contains(&self, g: &Graph) -> bool {
        self.forms.contains(&canonical_form(g))
    }

    /// Number of members per edge count.
    pub fn counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for g in self.graphs() {
            *out.entry(g.edge_count()).or_insert(0) += 1;
        }
        out
    }

    /// Members with exactly `e` edges.
    pub fn with_edges(&self, e: usize) -> Census {
        let mut c = Census::new(self.pattern.clone(), self.order, EdgeWindow::exactly(e));
        c.complete = self.complete;
        c.forms = self.forms.iter().filter(|f| f.to_graph().edge_count() == e).cloned().collect();
        c
    }

    pub fn restrict(&self, window: EdgeWindow) -> Census {
        let mut c = Census::new(self.pattern.clone(), self.order, window);
        c.complete = self.complete;
        c.forms = self
            .forms
            .iter()
            .filter(|f| window.contains(f.to_graph().edge_count()))
            .cloned()
            .collect();
        c
    }

    pub fn min_edges(&self) -> Option<usize> {
        self.graphs().map(|g| g.edge_count()).min()
    }

    pub fn manifest(&self) -> Manifest {
        let counts = self.counts();
        Manifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            kind: "census".to_string(),
            pattern: self.pattern.to_string(),
            order: self.order,
            edge_min: self.window.min,
            edge_max: self.window.max,
            total: self.forms.len(),
            counts,
            complete: self.complete,
            extra: BTreeMap::new(),
        }
    }

    /// Writes `<path>` (graph6, canonical order) and the manifest beside it.
    pub fn save(&self, path: &Path) -> Result<Manifest> {
        let manifest = self.manifest();
        self.save_with(path, &manifest)?;
        Ok(manifest)
    }

    pub fn save_with(&self, path: &Path, manifest: &Manifest) -> Result<()> {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        let mut w = BufWriter::new(File::create(path)?);
        for f in &self.forms {
            writeln!(w, "{f}")?;
        }
        w.flush()?;
        manifest.write(&manifest_path(path))
    }
}

/// The manifest that sits beside a graph6 file: `foo.g6` -> `foo.manifest.json`.
pub fn manifest_path(g6: &Path) -> PathBuf {
    g6.with_extension("manifest.json")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub kind: String,
    pub pattern: String,
    pub order: usize,
    pub edge_min: Option<usize>,
    pub edge_max: Option<usize>,
    pub total: usize,
    pub counts: BTreeMap<usize, usize>,
    pub complete: bool,
    /// Job-specific fields (configuration, timings, notes).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl Manifest {
    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::MalformedInput(e.to_string()))?;
        fs::write(path, text + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Manifest> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))
    }
}

/// A census as read from disk, before any validation.
#[derive(Clone, Debug)]
pub struct CensusFile {
    pub path: PathBuf,
    pub manifest: Manifest,
    pub pattern: Pattern,
    pub graphs: Vec<Graph>,
}

impl CensusFile {
    pub fn load(path: &Path) -> Result<CensusFile> {
        let manifest = Manifest::read(&manifest_path(path))?;
        let pattern: Pattern = manifest.pattern.parse()?;
        let graphs = graph6::read_all(BufReader::new(File::open(path)?))?;
        Ok(CensusFile {
            path: path.to_path_buf(),
            manifest,
            pattern,
            graphs,
        })
    }

    pub fn window(&self) -> EdgeWindow {
        EdgeWindow::new(self.manifest.edge_min, self.manifest.edge_max)
    }

    /// An in-memory file image of `c`, labelled `label`.
    pub fn from_census(c: &Census, label: &str) -> CensusFile {
        CensusFile {
            path: PathBuf::from(label),
            manifest: c.manifest(),
            pattern: c.pattern.clone(),
            graphs: c.graphs().collect(),
        }
    }

    /// Writes the graphs exactly as held, duplicates included, with the manifest.
    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        graph6::write_all(BufWriter::new(File::create(path)?), &self.graphs)?;
        self.manifest.write(&manifest_path(path))
    }

    /// Canonical deduplication into a [`Census`], without checking anything.
    pub fn to_census(&self) -> Census {
        let mut c = Census::from_graphs(self.pattern.clone(), self.manifest.order, self.window(), &self.graphs);
        c.complete = self.manifest.complete;
        c
    }
}
