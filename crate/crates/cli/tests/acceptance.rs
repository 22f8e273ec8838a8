//! Acceptance suite. Drives the `jramsey` binary only and prints one
//! PASS/FAIL line per criterion; exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn table(name: &str) -> String {
    root().join("tables").join(format!("{name}.ledger")).display().to_string()
}

fn data(rel: &str) -> String {
    root().join("data").join(rel).display().to_string()
}

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn jr(args: &[&str]) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_jramsey"))
        .args(args)
        .output()
        .expect("jramsey runs");
    Out {
        code: o.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&o.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&o.stderr).into_owned(),
    }
}

/// The checks behind one criterion.
struct Criterion {
    id: u32,
    title: &'static str,
    start: Instant,
    failures: Vec<String>,
    checks: usize,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            start: Instant::now(),
            failures: Vec::new(),
            checks: 0,
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) -> bool {
        self.checks += 1;
        if !ok {
            self.failures.push(what.into());
        }
        ok
    }

    fn within(&mut self, limit: Duration) {
        let t = self.start.elapsed();
        self.check(t <= limit, format!("took {t:?}, limit {limit:?}"));
    }

    fn finish(self) -> bool {
        let ok = self.failures.is_empty();
        println!(
            "criterion {} [{}] {} ({} checks, {:.1}s)",
            self.id,
            if ok { "PASS" } else { "FAIL" },
            self.title,
            self.checks,
            self.start.elapsed().as_secs_f64()
        );
        for f in &self.failures {
            println!("    - {f}");
        }
        ok
    }
}

/// Value after `=` or `:` in the first line starting with `prefix`.
fn value_after<'a>(stdout: &'a str, prefix: &str) -> Option<&'a str> {
    stdout
        .lines()
        .find(|l| l.starts_with(prefix))
        .and_then(|l| l.rsplit_once(['=', ':']).map(|(_, v)| v.trim()))
}

fn min_edges(p: &str, n: usize) -> String {
    let o = jr(&["min-edges", "--pattern", p, "--n", &n.to_string()]);
    if o.code != 0 {
        return format!("exit {} {}", o.code, o.stderr.trim());
    }
    value_after(&o.stdout, &format!("e(3,{p},{n})")).unwrap_or("?").to_string()
}

fn expect_row(c: &mut Criterion, p: &str, row: &[(usize, &str)]) {
    for &(n, want) in row {
        let got = min_edges(p, n);
        c.check(got == want, format!("e(3,{p},{n}): got {got}, want {want}"));
    }
}

fn exact_row(k: usize, values: &[usize]) -> Vec<(usize, String)> {
    let mut row: Vec<(usize, String)> = (1..k).map(|n| (n, "Exact 0".to_string())).collect();
    row.extend(values.iter().enumerate().map(|(i, v)| (k + i, format!("Exact {v}"))));
    row.push((k + values.len(), "Infinite".to_string()));
    row
}

fn criterion_1() -> bool {
    let mut c = Criterion::new(1, "e(3,J_4,n) and e(3,J_5,n) by enumeration, R(3,J_4)=7, R(3,J_5)=11");
    for (p, k, vals) in [("J4", 4, &[2, 4, 6][..]), ("J5", 5, &[2, 3, 6, 8, 12, 15][..])] {
        let row = exact_row(k, vals);
        let row: Vec<(usize, &str)> = row.iter().map(|(n, s)| (*n, s.as_str())).collect();
        expect_row(&mut c, p, &row);
    }
    c.within(Duration::from_secs(300));
    c.finish()
}

/// The Clebsch graph as the folded 5-cube: 4-bit labels, adjacent when they
/// differ in one bit or in all four.
fn clebsch_edges() -> String {
    let mut edges = Vec::new();
    for u in 0u32..16 {
        for v in u + 1..16 {
            let d = (u ^ v).count_ones();
            if d == 1 || d == 4 {
                edges.push(format!("{u}-{v}"));
            }
        }
    }
    format!("16: {}\n", edges.join(" "))
}

fn criterion_2(dir: &Path) -> bool {
    let mut c = Criterion::new(2, "e(3,J_6,n) for n <= 16, empty census at 17, Clebsch graph unique at (16,40)");
    let row = exact_row(6, &[2, 3, 4, 7, 10, 14, 18, 24, 30, 35, 40]);
    let row: Vec<(usize, &str)> = row.iter().map(|(n, s)| (*n, s.as_str())).collect();
    expect_row(&mut c, "J6", &row);

    let o = jr(&["enumerate", "--pattern", "J6", "--n", "17"]);
    c.check(o.code == 0 && o.stdout.starts_with("(3,J6;17): 0 graphs"), format!("n=17 census: {}", o.stdout.trim()));

    let wit = dir.join("j6_16_min.g6");
    let o = jr(&["min-edges", "--pattern", "J6", "--n", "16", "--out", wit.to_str().unwrap()]);
    c.check(o.code == 0 && o.stdout.contains("graphs attaining it: 1"), format!("n=16 minimum census: {}", o.stdout.trim()));
    let edges = dir.join("clebsch.txt");
    fs::write(&edges, clebsch_edges()).unwrap();
    let g6 = dir.join("clebsch.g6");
    jr(&["convert", "--from", "edges", "--to", "g6", "--input", edges.to_str().unwrap(), "--out", g6.to_str().unwrap()]);
    let canon = jr(&["canon", "--input", g6.to_str().unwrap()]);
    let found = fs::read_to_string(&wit).unwrap_or_default();
    c.check(
        found.trim() == canon.stdout.trim() && !found.trim().is_empty(),
        format!("minimum graph {} is not the Clebsch graph {}", found.trim(), canon.stdout.trim()),
    );
    c.within(Duration::from_secs(3 * 3600));
    c.finish()
}

fn census_counts(stdout: &str) -> (Option<usize>, BTreeMap<usize, usize>) {
    let total = stdout
        .lines()
        .next()
        .and_then(|l| l.split(": ").nth(1))
        .and_then(|r| r.split_whitespace().next())
        .and_then(|x| x.parse().ok());
    let counts = stdout
        .lines()
        .filter_map(|l| l.trim().strip_prefix("e="))
        .filter_map(|l| l.split_once(": "))
        .map(|(e, c)| (e.parse().unwrap(), c.parse().unwrap()))
        .collect();
    (total, counts)
}

fn criterion_3() -> bool {
    let mut c = Criterion::new(3, "(3,J_7;8) and (3,J_7;9) censuses match the per-edge counts");
    let n8: BTreeMap<usize, usize> = [
        (3, 1),
        (4, 6),
        (5, 14),
        (6, 31),
        (7, 51),
        (8, 69),
        (9, 76),
        (10, 66),
        (11, 41),
        (12, 22),
        (13, 9),
        (14, 3),
        (15, 2),
        (16, 1),
    ]
    .into();
    let n9: BTreeMap<usize, usize> = [
        (4, 1),
        (5, 2),
        (6, 14),
        (7, 41),
        (8, 108),
        (9, 195),
        (10, 291),
        (11, 329),
        (12, 302),
        (13, 204),
        (14, 117),
        (15, 53),
        (16, 25),
        (17, 9),
        (18, 4),
        (19, 1),
        (20, 1),
    ]
    .into();
    for (n, want, total) in [(8, n8, 392), (9, n9, 1697)] {
        let o = jr(&["enumerate", "--pattern", "J7", "--n", &n.to_string()]);
        let (t, counts) = census_counts(&o.stdout);
        c.check(o.code == 0, format!("n={n}: exit {}", o.code));
        c.check(t == Some(total), format!("n={n}: total {t:?}, want {total}"));
        c.check(counts == want, format!("n={n}: counts {counts:?}, want {want:?}"));
    }
    c.within(Duration::from_secs(2 * 3600));
    c.finish()
}

/// Lines of `bound` output naming surviving histograms.
fn surviving(stdout: &str) -> Vec<String> {
    stdout
        .lines()
        .filter_map(|l| l.trim().strip_prefix("surviving: "))
        .map(str::to_string)
        .collect()
}

fn bound(c: &mut Criterion, k: usize, n: usize, tables: &[&str]) -> (String, Vec<String>) {
    let start = Instant::now();
    let (n_s, p) = (n.to_string(), format!("J{k}"));
    let mut args = vec!["bound", "--pattern", &p, "--n", &n_s];
    let paths: Vec<String> = tables.iter().map(|t| table(t)).collect();
    for t in &paths {
        args.push("--table");
        args.push(t);
    }
    let o = jr(&args);
    let t = start.elapsed();
    c.check(t < Duration::from_secs(10), format!("bound J{k} n={n} took {t:?}"));
    c.check(o.code == 0, format!("bound J{k} n={n}: exit {} {}", o.code, o.stderr.trim()));
    let kind = value_after(&o.stdout, &format!("e(3,J{k},{n})")).unwrap_or("?").to_string();
    (kind, surviving(&o.stdout))
}

fn criterion_4() -> bool {
    let mut c = Criterion::new(4, "degree-sequence feasibility reproduces the J_12..J_16 bounds");
    let t4 = ["t2", "t3", "t4"];

    let start = Instant::now();
    let mut args = vec!["feasible", "--pattern", "J12", "--n", "39", "--e", "116"];
    let paths: Vec<String> = t4.iter().map(|t| table(t)).collect();
    for t in &paths {
        args.push("--table");
        args.push(t);
    }
    let o = jr(&args);
    c.check(start.elapsed() < Duration::from_secs(10), "feasible J12 n=39 over 10s");
    let seqs: BTreeSet<&str> = o.stdout.lines().filter(|l| l.starts_with('{')).collect();
    let want: BTreeSet<&str> = [
        "{n_4:1, n_6:38}  per-vertex: rejected",
        "{n_5:2, n_6:37}  per-vertex: rejected",
    ]
    .into();
    c.check(seqs == want, format!("J12 n=39 e=116 sequences: {seqs:?}"));
    let (kind, _) = bound(&mut c, 12, 39, &t4);
    c.check(kind == "AtLeast 117", format!("J12 n=39: {kind}, want AtLeast 117"));

    let (kind, hs) = bound(&mut c, 12, 48, &t4);
    c.check(kind == "AtLeast 222", format!("J12 n=48: {kind}, want AtLeast 222"));
    c.check(
        hs == ["{n_7:36, n_8:12}"],
        format!("J12 n=48 unique histogram: got {hs:?}, want [\"{{n_7:36, n_8:12}}\"]"),
    );
    let (kind, _) = bound(&mut c, 12, 53, &t4);
    c.check(kind == "Infinite", format!("J12 n=53: {kind}, want Infinite"));

    let t5 = ["t2", "t5"];
    for (n, want_kind, want_h) in [
        (40, "AtLeast 100", "{n_5:40}"),
        (41, "AtLeast 109", "{n_5:28, n_6:13}"),
        (56, "AtLeast 283", "{n_10:50, n_11:6}"),
    ] {
        let (kind, hs) = bound(&mut c, 13, n, &t5);
        c.check(kind == want_kind, format!("J13 n={n}: {kind}, want {want_kind}"));
        c.check(hs == [want_h], format!("J13 n={n}: histograms {hs:?}, want [{want_h}]"));
    }
    for (k, n, tabs) in [(13, 62, &t5[..]), (14, 71, &["t2", "t6"][..]), (15, 80, &["t2", "t7"][..]), (16, 91, &["t2", "t8"][..])] {
        let (kind, _) = bound(&mut c, k, n, tabs);
        c.check(kind == "Infinite", format!("J{k} n={n}: {kind}, want Infinite"));
    }
    c.finish()
}

fn criterion_5() -> bool {
    let mut c = Criterion::new(5, "circulant 54: 2,3,9,16,20,24 is a (3,J_13;54)-graph, R(3,J_13) >= 55");
    let o = jr(&["circulant-verify", "--n", "54", "--dist", "2,3,9,16,20,24", "--pattern", "J13"]);
    c.check(o.code == 0, format!("exit {}", o.code));
    c.check(o.stdout.contains("witness confirmed"), o.stdout.trim().to_string());
    c.check(o.stdout.contains("R(3,J13) >= 55"), o.stdout.trim().to_string());
    c.within(Duration::from_secs(600));
    c.finish()
}

// ---- criterion 6 helpers -------------------------------------------------

#[derive(Clone)]
struct Small {
    n: usize,
    adj: Vec<u32>,
}

impl Small {
    fn from_mask(n: usize, mask: u64) -> Small {
        let mut adj = vec![0u32; n];
        let mut bit = 0;
        for v in 1..n {
            for u in 0..v {
                if mask >> bit & 1 == 1 {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
                bit += 1;
            }
        }
        Small { n, adj }
    }

    fn random(rng: &mut StdRng, n: usize) -> Small {
        let p: f64 = rng.gen_range(0.1..0.9);
        let mut adj = vec![0u32; n];
        for v in 1..n {
            for u in 0..v {
                if rng.gen_bool(p) {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
            }
        }
        Small { n, adj }
    }

    fn permuted(&self, perm: &[usize]) -> Small {
        let mut adj = vec![0u32; self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                if self.adj[u] >> v & 1 == 1 {
                    adj[perm[u]] |= 1 << perm[v];
                }
            }
        }
        Small { n: self.n, adj }
    }

    fn triangle_free(&self) -> bool {
        (0..self.n).all(|u| (0..self.n).all(|v| self.adj[u] >> v & 1 == 0 || self.adj[u] & self.adj[v] == 0))
    }

    fn edges_in(&self, s: u32) -> u32 {
        (0..self.n)
            .filter(|&u| s >> u & 1 == 1)
            .map(|u| (self.adj[u] & s).count_ones())
            .sum::<u32>()
            / 2
    }

    fn line(&self) -> String {
        let mut e = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u] >> v & 1 == 1 {
                    e.push(format!("{u}-{v}"));
                }
            }
        }
        format!("{}: {}", self.n, e.join(" ")).trim_end().to_string()
    }
}

#[derive(Clone)]
enum Pat {
    /// k vertices spanning at most t edges.
    Sparse(usize, u32),
    /// k-subset whose edges map into the edge set of F under some bijection.
    Compl(Small),
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |s| s.count_ones() as usize == k)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for x in 0..k {
            if !prefix.contains(&x) {
                prefix.push(x);
                go(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), k, &mut out);
    out
}

fn contains(g: &Small, p: &Pat, perms: &[Vec<usize>]) -> bool {
    match p {
        Pat::Sparse(k, t) => subsets(g.n, *k).any(|s| g.edges_in(s) <= *t),
        Pat::Compl(f) => subsets(g.n, f.n).any(|s| {
            let verts: Vec<usize> = (0..g.n).filter(|&u| s >> u & 1 == 1).collect();
            perms.iter().any(|perm| {
                verts.iter().enumerate().all(|(i, &u)| {
                    verts
                        .iter()
                        .enumerate()
                        .all(|(j, &v)| g.adj[u] >> v & 1 == 0 || f.adj[perm[i]] >> perm[j] & 1 == 1)
                })
            })
        }),
    }
}

fn write_lines(path: &Path, lines: impl IntoIterator<Item = String>) {
    let mut s = String::new();
    for l in lines {
        writeln!(s, "{l}").unwrap();
    }
    fs::write(path, s).unwrap();
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Sorted distinct canonical forms of the edge-list graphs in `edges`.
fn canon_set(dir: &Path, tag: &str, lines: Vec<String>) -> BTreeSet<String> {
    let e = dir.join(format!("{tag}.edges"));
    let g = dir.join(format!("{tag}.g6"));
    write_lines(&e, lines);
    jr(&["convert", "--from", "edges", "--to", "g6", "--input", p(&e), "--out", p(&g)]);
    jr(&["canon", "--unique", "--input", p(&g)]).stdout.lines().map(str::to_string).collect()
}

fn census_file(dir: &Path, cmd: &str, pattern: &str, n: usize) -> (PathBuf, Out) {
    let out = dir.join(format!("{cmd}_{}_{n}.g6", pattern.replace([':', '/'], "_")));
    let o = jr(&[cmd, "--pattern", pattern, "--n", &n.to_string(), "--out", p(&out)]);
    (out, o)
}

fn lines_of(path: &Path) -> BTreeSet<String> {
    fs::read_to_string(path)
        .unwrap_or_default()
        .lines()
        .map(str::to_string)
        .collect()
}

fn criterion_6(dir: &Path) -> bool {
    let mut c = Criterion::new(6, "property suites through the CLI");
    let mut rng = StdRng::seed_from_u64(0x5eed);

    // Canonical forms are invariant under relabelling: 1000 random graphs.
    let mut orig = Vec::new();
    let mut perm = Vec::new();
    for _ in 0..1000 {
        let n = rng.gen_range(1..=24);
        let g = Small::random(&mut rng, n);
        let mut pi: Vec<usize> = (0..n).collect();
        pi.shuffle(&mut rng);
        orig.push(g.line());
        perm.push(g.permuted(&pi).line());
    }
    let (a, b) = (dir.join("orig.edges"), dir.join("perm.edges"));
    write_lines(&a, orig.clone());
    write_lines(&b, perm);
    let to_g6 = |src: &Path, dst: &Path| jr(&["convert", "--from", "edges", "--to", "g6", "--input", p(src), "--out", p(dst)]);
    let (ag, bg) = (dir.join("orig.g6"), dir.join("perm.g6"));
    to_g6(&a, &ag);
    to_g6(&b, &bg);
    let ca = jr(&["canon", "--input", p(&ag)]).stdout;
    let cb = jr(&["canon", "--input", p(&bg)]).stdout;
    c.check(
        ca.lines().count() == 1000 && ca == cb,
        "canonical form changes under relabelling",
    );

    // graph6 round trip on the same graphs.
    let back = dir.join("back.edges");
    jr(&["convert", "--from", "g6", "--to", "edges", "--input", p(&ag), "--out", p(&back)]);
    let back: Vec<String> = fs::read_to_string(&back).unwrap().lines().map(str::to_string).collect();
    c.check(back == orig, "graph6 round trip changed a graph");

    // Enumeration against brute force over all labelled graphs, n <= 7.
    let two_k2 = Small {
        n: 5,
        adj: vec![0b10, 0b1, 0b1000, 0b100, 0],
    };
    let p4_k1 = Small {
        n: 5,
        adj: vec![0b10, 0b101, 0b1010, 0b100, 0],
    };
    let f_g6 = |f: &Small, tag: &str| {
        let e = dir.join(format!("{tag}.edges"));
        write_lines(&e, [f.line()]);
        let g = dir.join(format!("{tag}.g6"));
        to_g6(&e, &g);
        fs::read_to_string(&g).unwrap().trim().to_string()
    };
    let mut patterns: Vec<(String, Pat)> = Vec::new();
    for k in 3..=7 {
        patterns.push((format!("J{k}"), Pat::Sparse(k, 1)));
        patterns.push((format!("K{k}"), Pat::Sparse(k, 0)));
    }
    patterns.push(("S5/2".into(), Pat::Sparse(5, 2)));
    patterns.push(("S6/3".into(), Pat::Sparse(6, 3)));
    patterns.push((format!("compl:{}", f_g6(&two_k2, "f1")), Pat::Compl(two_k2.clone())));
    patterns.push((format!("compl:{}", f_g6(&p4_k1, "f2")), Pat::Compl(p4_k1.clone())));
    let perms5 = permutations(5);
    let mut mismatches = 0;
    for n in 1..=7usize {
        let m = n * (n - 1) / 2;
        let tf: Vec<Small> = (0u64..1 << m)
            .map(|mask| Small::from_mask(n, mask))
            .filter(Small::triangle_free)
            .collect();
        for (name, pat) in &patterns {
            let lines: Vec<String> = tf.iter().filter(|g| !contains(g, pat, &perms5)).map(Small::line).collect();
            let want = canon_set(dir, "oracle", lines);
            let (out, o) = census_file(dir, "enumerate", name, n);
            let got = lines_of(&out);
            if !c.check(o.code == 0 && got == want, format!("{name} n={n}: {} graphs, brute force {}", got.len(), want.len())) {
                mismatches += 1;
            }
        }
    }
    c.check(mismatches == 0, format!("{mismatches} brute-force mismatches"));

    // Censuses used by the descent, deficiency and gluing checks.
    let mut files: BTreeMap<(usize, usize), PathBuf> = BTreeMap::new();
    let orders = |k: usize| -> std::ops::RangeInclusive<usize> {
        match k {
            4 => 0..=6,
            5 => 0..=10,
            6 => 0..=16,
            _ => 0..=11,
        }
    };
    for k in 4..=7 {
        for n in orders(k) {
            let (f, o) = census_file(dir, "enumerate", &format!("J{k}"), n);
            c.check(o.code == 0, format!("enumerate J{k} n={n}: exit {}", o.code));
            files.insert((k, n), f);
        }
    }

    // Residual descent and nonnegative deficiency.
    for k in 5..=7 {
        let lower: Vec<&str> = files.range((k - 1, 0)..(k, 0)).map(|(_, f)| p(f)).collect();
        for n in orders(k).filter(|&n| n >= k) {
            let f = p(&files[&(k, n)]);
            let mut args = vec!["verify", "--suite", "descent", "--census", f, "--lower"];
            args.extend(&lower);
            let o = jr(&args);
            c.check(o.code == 0, format!("descent J{k} n={n}: {}{}", o.stdout.trim(), o.stderr.trim()));
            let t2 = table("t2");
            let o = jr(&["verify", "--suite", "deficiency", "--census", f, "--table", &t2]);
            c.check(o.code == 0, format!("deficiency J{k} n={n}: {}{}", o.stdout.trim(), o.stderr.trim()));
        }
    }

    // Gluing and enumeration agree.
    for (k, top) in [(5, 11), (6, 17), (7, 11)] {
        for n in 0..=top {
            let (g, o) = census_file(dir, "glue", &format!("J{k}"), n);
            c.check(o.code == 0, format!("glue J{k} n={n}: exit {} {}", o.code, o.stderr.trim()));
            let e = match files.get(&(k, n)) {
                Some(e) => e.clone(),
                None => census_file(dir, "enumerate", &format!("J{k}"), n).0,
            };
            let o = jr(&["verify", "--suite", "agreement", "--census", p(&e), "--other", p(&g)]);
            c.check(o.code == 0, format!("gluing vs enumeration J{k} n={n}: {}", o.stdout.trim()));
        }
    }

    // Shipped references pass, shipped mutation controls fail every suite.
    let reference = data("census/j7_n8.g6");
    let lower6: Vec<String> = (0..=7).map(|n| data(&format!("census/j6_n{n}.g6"))).collect();
    let t2 = table("t2");
    let suites = |target: &str| -> Vec<Vec<String>> {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let mut descent = s(&["verify", "--suite", "descent", "--census", target, "--lower"]);
        descent.extend(lower6.iter().cloned());
        vec![
            s(&["verify", "--suite", "integrity", "--census", target]),
            s(&["verify", "--suite", "edge-minimal", "--census", target]),
            s(&["verify", "--suite", "drop-add", "--census", target, "--other", &reference]),
            s(&["verify", "--suite", "drop-add", "--census", &reference, "--other", target]),
            descent,
            s(&["verify", "--suite", "deficiency", "--census", target, "--table", &t2]),
            s(&["verify", "--suite", "agreement", "--census", target, "--other", &reference]),
        ]
    };
    for args in suites(&reference) {
        if args[2] == "edge-minimal" {
            continue;
        }
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = jr(&a);
        c.check(o.code == 0, format!("reference fails {}: {}", args[2], o.stdout.trim()));
    }
    let o = jr(&["verify", "--suite", "edge-minimal", "--census", &data("census/j6_n16.g6")]);
    c.check(o.code == 0, format!("reference edge-minimal: {}", o.stdout.trim()));
    for m in ["removed", "nonramsey", "duplicate"] {
        let target = data(&format!("mutations/j7_n8_{m}.g6"));
        for args in suites(&target) {
            let a: Vec<&str> = args.iter().map(String::as_str).collect();
            let o = jr(&a);
            c.check(o.code == 4, format!("mutation {m} passes {} (exit {})", args[2], o.code));
        }
    }
    c.finish()
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    println!("acceptance: jramsey at {}", env!("CARGO_BIN_EXE_jramsey"));
    let results = [
        criterion_1(),
        criterion_2(dir.path()),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(dir.path()),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
