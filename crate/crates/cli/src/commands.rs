use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use ramsey_core::budget::Budget;
use ramsey_core::census::{manifest_path, Census, CensusFile, EdgeWindow};
use ramsey_core::circulant::{build_circulant, search_circulants, verify_witness, CirculantSpec};
use ramsey_core::consistency::{self, Report};
use ramsey_core::enumerate::{census, enumerate_min_edges, generate_mtf_ramsey, Options};
use ramsey_core::etable::ETable;
use ramsey_core::feasibility::{
    feasible_degree_sequences, min_edges_lower_bound, propagate, refine_per_vertex, ETableView, Level,
};
use ramsey_core::glue::{glue_union, GluingCensus};
use ramsey_core::{canonical_form, graph6, Error, Graph, Pattern, Result};
use serde_json::{json, Value};

use crate::{Cli, Cmd, Format, LevelArg, Suite, Window, EXIT_INCOMPLETE, EXIT_INCONSISTENT, EXIT_OK};

/// What a finished job reports back for its manifest and exit status.
struct Outcome {
    complete: bool,
    failed: bool,
    counts: Value,
    result: Value,
}

impl Outcome {
    fn ok(counts: Value, result: Value) -> Self {
        Outcome {
            complete: true,
            failed: false,
            counts,
            result,
        }
    }

    fn code(&self) -> u8 {
        if self.failed {
            EXIT_INCONSISTENT
        } else if !self.complete {
            EXIT_INCOMPLETE
        } else {
            EXIT_OK
        }
    }
}

struct Job<'a> {
    cli: &'a Cli,
    start: Instant,
}

impl Job<'_> {
    fn budget(&self) -> Budget {
        self.cli.budget.as_ref().map(|b| b.0).unwrap_or_default()
    }

    fn parallel(&self) -> bool {
        !self.cli.deterministic && self.cli.workers != Some(1)
    }

    fn options(&self) -> Options {
        Options {
            budget: self.budget(),
            parallel: self.parallel(),
            ..Options::default()
        }
    }

    fn config(&self) -> Value {
        let workers = if self.cli.deterministic {
            1
        } else {
            self.cli.workers.unwrap_or_else(rayon::current_num_threads)
        };
        json!({
            "command": format!("{:?}", self.cli.cmd),
            "workers": workers,
            "deterministic": self.cli.deterministic,
            "budget_nodes": self.budget().max_nodes,
            "budget_seconds": self.budget().max_time.as_secs_f64(),
        })
    }

    fn manifest_target(&self, out: Option<&Path>) -> Option<PathBuf> {
        self.cli.manifest.clone().or_else(|| out.map(manifest_path))
    }

    fn job_fields(&self) -> BTreeMap<String, Value> {
        BTreeMap::from([
            ("config".to_string(), self.config()),
            ("cli_version".to_string(), json!(env!("CARGO_PKG_VERSION"))),
            ("wall_time_s".to_string(), json!(self.start.elapsed().as_secs_f64())),
        ])
    }

    /// Writes a census with its manifest; the manifest also goes to
    /// `--manifest` when given.
    fn save_census(&self, c: &Census, out: Option<&Path>) -> Result<()> {
        let mut m = c.manifest();
        m.extra = self.job_fields();
        if let Some(out) = out {
            c.save_with(out, &m)?;
        }
        if let Some(path) = &self.cli.manifest {
            m.write(path)?;
        }
        Ok(())
    }

    fn write_manifest(&self, out: Option<&Path>, o: &Outcome) -> Result<()> {
        let Some(path) = self.manifest_target(out) else {
            return Ok(());
        };
        let mut v = json!({
            "tool": "jramsey",
            "version": env!("CARGO_PKG_VERSION"),
            "complete": o.complete,
            "passed": !o.failed,
            "counts": o.counts,
            "result": o.result,
        });
        for (k, x) in self.job_fields() {
            v[k] = x;
        }
        let text = serde_json::to_string_pretty(&v).map_err(|e| Error::MalformedInput(e.to_string()))?;
        fs::write(path, text + "\n")?;
        Ok(())
    }
}

pub fn run(cli: &Cli) -> Result<u8> {
    let job = Job {
        cli,
        start: Instant::now(),
    };
    match &cli.cmd {
        Cmd::Enumerate {
            pattern,
            n,
            window,
            mtf,
            out,
        } => {
            let p = parse_pattern(pattern)?;
            let w = edge_window(window);
            let c = if *mtf {
                generate_mtf_ramsey(&p, *n, &job.options())?.restrict(w)
            } else {
                census(&p, *n, w, &job.options())?
            };
            print_census(&c);
            job.save_census(&c, out.as_deref())?;
            Ok(if c.complete { EXIT_OK } else { EXIT_INCOMPLETE })
        }
        Cmd::MinEdges { pattern, n, out } => {
            let p = parse_pattern(pattern)?;
            let m = enumerate_min_edges(&p, *n, &job.options())?;
            println!("e(3,{p},{n}) = {}", m.bound.kind);
            println!("graphs attaining it: {}", m.witnesses.len());
            job.save_census(&m.witnesses, out.as_deref())?;
            Ok(EXIT_OK)
        }
        Cmd::Glue {
            pattern,
            n,
            window,
            hosts,
            out,
        } => {
            let p = parse_pattern(pattern)?;
            let k = p
                .j_size()
                .ok_or_else(|| Error::MalformedInput(format!("gluing needs a J pattern, got {p}")))?;
            let w = edge_window(window);
            let c = if hosts.is_empty() {
                GluingCensus::new(job.budget(), job.parallel()).census_in(k, *n, w)?
            } else {
                let hs = hosts
                    .iter()
                    .map(|h| CensusFile::load(h).map(|f| f.to_census()))
                    .collect::<Result<Vec<_>>>()?;
                if hs.iter().any(|h| h.pattern != Pattern::j(k - 1)) {
                    return Err(Error::MalformedInput(format!("host censuses must avoid J{}", k - 1)));
                }
                glue_union(&hs, *n, w, job.parallel(), job.budget())?
            };
            print_census(&c);
            job.save_census(&c, out.as_deref())?;
            Ok(EXIT_OK)
        }
        Cmd::Feasible { pattern, n, e, tables } => {
            let big_k = j_size(pattern)?;
            let t = load_tables(&tables.tables)?;
            let view = ETableView::new(&t).with_closed_form_fallback(tables.allow_fallback);
            let seqs = feasible_degree_sequences(big_k, *n, *e, &view)?;
            let mut rows = Vec::new();
            for h in &seqs {
                let ok = refine_per_vertex(h, *e, big_k, &view)?;
                println!("{h}  per-vertex: {}", if ok { "feasible" } else { "rejected" });
                rows.push(json!({"histogram": h.to_string(), "per_vertex": ok}));
            }
            println!("{} degree sequences for (3,J{big_k};{n},{e})", seqs.len());
            report_fallbacks(&view);
            let o = Outcome::ok(json!({"sequences": seqs.len()}), json!(rows));
            job.write_manifest(None, &o)?;
            Ok(o.code())
        }
        Cmd::Bound {
            pattern,
            n,
            level,
            tables,
        } => {
            let big_k = j_size(pattern)?;
            let t = load_tables(&tables.tables)?;
            let view = ETableView::new(&t).with_closed_form_fallback(tables.allow_fallback);
            let level = match level {
                LevelArg::Graph => Level::Graph,
                LevelArg::Vertex => Level::Vertex,
            };
            let rep = min_edges_lower_bound(big_k, *n, &view, level)?;
            println!("e(3,J{big_k},{n}): {}", rep.kind);
            const LISTED: usize = 8;
            let mut by_e: BTreeMap<usize, Vec<String>> = BTreeMap::new();
            for (e, h) in &rep.rejected_per_vertex {
                by_e.entry(*e).or_default().push(h.to_string());
            }
            for (e, hs) in &by_e {
                if hs.len() <= LISTED {
                    println!("  rejected per vertex at e={e}: {}", hs.join(" "));
                } else {
                    println!("  rejected per vertex at e={e}: {} histograms", hs.len());
                }
            }
            if rep.histograms.len() <= LISTED {
                for h in &rep.histograms {
                    println!("  surviving: {h}");
                }
            } else {
                println!("  surviving: {} histograms", rep.histograms.len());
            }
            report_fallbacks(&view);
            let o = Outcome::ok(
                json!({"surviving": rep.histograms.len(), "rejected_per_vertex": rep.rejected_per_vertex.len()}),
                json!({
                    "bound": rep.kind.to_string(),
                    "surviving": rep.histograms.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
                    "rejected_per_vertex": rep.rejected_per_vertex.iter().map(|(e, h)| json!({"e": e, "histogram": h.to_string()})).collect::<Vec<_>>(),
                }),
            );
            job.write_manifest(None, &o)?;
            Ok(o.code())
        }
        Cmd::Propagate {
            k,
            from,
            to,
            tables,
            out,
        } => {
            let mut t = load_tables(&tables.tables)?;
            let ns = match (from, to) {
                (None, None) => None,
                (a, b) => Some(a.unwrap_or(*k)..=b.unwrap_or(ramsey_core::bits::MAX_ORDER)),
            };
            let derived = propagate(&mut t, *k, ns, tables.allow_fallback)?;
            let mut rows = Vec::new();
            for (n, b) in &derived {
                let stored = t.get(*k, *n).map(|s| s.kind.to_string()).unwrap_or_default();
                println!("e(3,J{k},{n}): {} [{}] {}  (table: {stored})", b.kind, b.provenance.as_str(), b.note);
                rows.push(json!({"n": n, "derived": b.kind.to_string(), "table": stored}));
            }
            if let Some(r) = t.ramsey_upper(*k) {
                println!("R(3,J{k}) <= {r}");
            }
            if let Some(out) = out {
                t.save(out)?;
            }
            let o = Outcome::ok(
                json!({"derived": derived.len()}),
                json!({"rows": rows, "ramsey_upper": t.ramsey_upper(*k)}),
            );
            job.write_manifest(out.as_deref(), &o)?;
            Ok(o.code())
        }
        Cmd::RamseyUpper { k, tables } => {
            let t = load_tables(tables)?;
            let ks: Vec<usize> = match k {
                Some(k) => vec![*k],
                None => t.rows(),
            };
            let mut res = BTreeMap::new();
            for k in ks {
                match t.ramsey_upper(k) {
                    Some(r) => println!("R(3,J{k}) <= {r}"),
                    None => println!("R(3,J{k}): no Infinite cell recorded"),
                }
                res.insert(k.to_string(), json!(t.ramsey_upper(k)));
            }
            let o = Outcome::ok(json!({"rows": res.len()}), json!(res));
            job.write_manifest(None, &o)?;
            Ok(o.code())
        }
        Cmd::CirculantVerify {
            spec,
            n,
            dist,
            pattern,
            out,
        } => {
            let s: CirculantSpec = match (spec, n, dist) {
                (Some(s), _, _) => s.parse()?,
                (None, Some(n), Some(d)) => format!("{n}: {d}").parse()?,
                _ => return Err(Error::MalformedInput("give --spec or both --n and --dist".into())),
            };
            let p = parse_pattern(pattern)?;
            let ok = verify_witness(&s, &p)?;
            let g = build_circulant(&s)?;
            let note = format!("circulant {s}, {}-regular, {} edges", s.degree(), g.edge_count());
            if ok {
                println!("witness confirmed: {note} is a (3,{p};{})-graph", s.order());
                println!("R(3,{p}) >= {}", s.order() + 1);
                if let Some(out) = out {
                    let text = format!("# {note}, avoids {p}: R(3,{p}) >= {}\n{}\n", s.order() + 1, graph6::encode(&g));
                    fs::write(out, text)?;
                }
            } else {
                println!("not a witness: {note} is not a (3,{p};{})-graph", s.order());
            }
            let o = Outcome {
                complete: true,
                failed: !ok,
                counts: json!({"edges": g.edge_count()}),
                result: json!({"spec": s.to_string(), "pattern": p.to_string(), "witness": ok, "ramsey_lower": ok.then_some(s.order() + 1)}),
            };
            job.write_manifest(out.as_deref(), &o)?;
            Ok(o.code())
        }
        Cmd::CirculantSearch { n, pattern, out } => {
            let p = parse_pattern(pattern)?;
            let r = search_circulants(*n, &p, job.budget())?;
            let mut text = String::new();
            for s in &r.specs {
                text.push_str(&format!("{s}\n"));
            }
            print!("{text}");
            println!(
                "{} circulant (3,{p};{n})-graphs up to multipliers{}",
                r.specs.len(),
                if r.complete { "" } else { " (incomplete: budget exhausted)" }
            );
            if let Some(out) = out {
                fs::write(out, &text)?;
            }
            let o = Outcome {
                complete: r.complete,
                failed: false,
                counts: json!({"specs": r.specs.len()}),
                result: json!(r.specs.iter().map(|s| s.to_string()).collect::<Vec<_>>()),
            };
            job.write_manifest(out.as_deref(), &o)?;
            Ok(o.code())
        }
        Cmd::Verify {
            suite,
            census,
            other,
            lower,
            add,
            tables,
        } => {
            let main = CensusFile::load(census)?;
            let need_other = || {
                other
                    .as_ref()
                    .ok_or_else(|| Error::MalformedInput("this suite needs --other".into()))
                    .and_then(|p| CensusFile::load(p))
            };
            let report: Report = match suite {
                Suite::Integrity => consistency::check_integrity(&main),
                Suite::EdgeMinimal => consistency::verify_edge_minimal(&main),
                Suite::DropAdd => consistency::verify_drop_add_closure(&main, &need_other()?, *add),
                Suite::Agreement => consistency::verify_agreement(&main, &need_other()?),
                Suite::Descent => {
                    let lows = lower.iter().map(|p| CensusFile::load(p)).collect::<Result<Vec<_>>>()?;
                    consistency::verify_descent(&main, &lows)?
                }
                Suite::Deficiency => {
                    let t = load_tables(tables)?;
                    consistency::verify_deficiency(&main, &ETableView::new(&t))?
                }
            };
            println!("{report}");
            let o = Outcome {
                complete: true,
                failed: !report.passed,
                counts: json!({"checked": report.checked}),
                result: json!({
                    "suite": report.suite,
                    "subject": report.subject,
                    "passed": report.passed,
                    "detail": report.detail,
                    "counterexample": report.counterexample,
                }),
            };
            job.write_manifest(None, &o)?;
            Ok(o.code())
        }
        Cmd::Canon { input, unique, out } => {
            let graphs = read_graphs(input.as_deref(), Format::G6)?;
            let mut seen = std::collections::BTreeSet::new();
            let mut text = String::new();
            for g in &graphs {
                let f = canonical_form(g);
                if !*unique || seen.insert(f.clone()) {
                    text.push_str(f.as_str());
                    text.push('\n');
                }
            }
            emit(out.as_deref(), &text)?;
            let lines = text.lines().count();
            let o = Outcome::ok(json!({"input": graphs.len(), "output": lines}), Value::Null);
            job.write_manifest(out.as_deref(), &o)?;
            Ok(o.code())
        }
        Cmd::Convert { input, from, to, out } => {
            let graphs = read_graphs(input.as_deref(), *from)?;
            let mut text = String::new();
            for g in &graphs {
                text.push_str(&match to {
                    Format::G6 => graph6::encode(g),
                    Format::Edges => edge_line(g),
                });
                text.push('\n');
            }
            emit(out.as_deref(), &text)?;
            let o = Outcome::ok(json!({"graphs": graphs.len()}), Value::Null);
            job.write_manifest(out.as_deref(), &o)?;
            Ok(o.code())
        }
    }
}

/// `J<k>`, `K<k>`, `S<k>/<t>`, or `compl:<file or graph6>`.
fn parse_pattern(s: &str) -> Result<Pattern> {
    if let Some(rest) = s.strip_prefix("compl:") {
        let path = Path::new(rest);
        if path.is_file() {
            let gs = graph6::read_all(BufReader::new(fs::File::open(path)?))?;
            let [f] = gs.as_slice() else {
                return Err(Error::MalformedInput(format!("{rest} must hold exactly one graph")));
            };
            return Ok(Pattern::explicit_complement(f.clone()));
        }
    }
    s.parse()
}

fn j_size(s: &str) -> Result<usize> {
    let p = parse_pattern(s)?;
    p.j_size()
        .ok_or_else(|| Error::MalformedInput(format!("degree-sequence bounds need a J pattern, got {p}")))
}

fn edge_window(w: &Window) -> EdgeWindow {
    EdgeWindow::new(w.emin, w.emax)
}

fn load_tables(paths: &[PathBuf]) -> Result<ETable> {
    let mut t = ETable::new();
    for p in paths {
        let part = ETable::load(p)
            .map_err(|e| match e {
                Error::Io(io) => Error::MalformedInput(format!("{}: {io}", p.display())),
                other => other,
            })?;
        t.merge_table(&part)?;
    }
    Ok(t)
}

fn report_fallbacks(view: &ETableView) {
    let used = view.fallbacks_used();
    if !used.is_empty() {
        eprintln!("note: closed-form lower bound used for cells {used:?}");
    }
}

fn print_census(c: &Census) {
    let status = if c.complete { "" } else { " (incomplete: budget exhausted)" };
    println!("(3,{};{}): {} graphs{status}", c.pattern, c.order, c.len());
    for (e, count) in c.counts() {
        println!("  e={e}: {count}");
    }
}

fn edge_line(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("{}: {}", g.order(), edges.join(" ")).trim_end().to_string()
}

fn parse_edge_line(line: &str) -> Result<Graph> {
    let bad = || Error::MalformedInput(format!("bad edge list `{line}`, expected `n: u-v u-v ...`"));
    let (n, rest) = line.split_once(':').ok_or_else(bad)?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    let mut g = Graph::try_empty(n)?;
    for tok in rest.split_whitespace() {
        let (u, v) = tok.split_once('-').ok_or_else(bad)?;
        let (u, v): (usize, usize) = (u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?);
        if u >= n || v >= n || u == v {
            return Err(bad());
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

fn read_graphs(input: Option<&Path>, format: Format) -> Result<Vec<Graph>> {
    let reader: Box<dyn BufRead> = match input {
        Some(p) => Box::new(BufReader::new(fs::File::open(p)?)),
        None => Box::new(BufReader::new(io::stdin())),
    };
    match format {
        Format::G6 => graph6::read_all(reader),
        Format::Edges => {
            let mut out = Vec::new();
            for line in reader.lines() {
                let line = line?;
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                out.push(parse_edge_line(line)?);
            }
            Ok(out)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
