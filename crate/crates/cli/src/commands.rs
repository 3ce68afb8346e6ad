//! One function per subcommand. Each returns a report plus whether every
//! internal agreement check passed.

use std::fs;
use std::path::{Path, PathBuf};

use plumbing_core::dinv::d_report;
use plumbing_core::graph::{bad_vertices, parse_graph};
use plumbing_core::lattice::{theta_oracle, verify_ssw_embedding};
use plumbing_core::recursion::{contribution_table, theta_all_roots, theta_tree};
use plumbing_core::rotation::{rotation_table, verify_minimization, MinimizationOptions};
use plumbing_core::search::{
    family_members, in_family, search_general_theta_two, search_theta_two, symmetric_theta, verify_by_tree,
    SymmetricStar, SPORADIC,
};
use plumbing_core::seifert::{normalize, star_graph, theta_nn, theta_seifert};
use plumbing_core::{BigInt, BigRational, Error, PlumbingGraph};
use serde_json::{json, Value};

use crate::report::{int, ints, rat, Report};

/// Failures that map to distinct exit codes.
#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, source: std::io::Error },
    Usage(String),
    Parse(String),
    Core(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Usage(msg) | CliError::Parse(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CmdResult = Result<(Report, bool), CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_graph(path: &Path) -> Result<PlumbingGraph, CliError> {
    Ok(parse_graph(&read(path)?)?)
}

fn graph_json(g: &PlumbingGraph) -> Value {
    let vertices: Vec<Value> = (0..g.len())
        .map(|v| json!({"id": g.id(v), "weight": int(g.weight(v))}))
        .collect();
    let edges: Vec<Value> = g.edges().iter().map(|&(u, v)| json!([g.id(u), g.id(v)])).collect();
    json!({"vertices": vertices, "edges": edges})
}

pub fn check(file: &Path) -> CmdResult {
    let mut report = Report::new("check", json!({"graph_file": file}));
    let g = load_graph(file)?;
    let q = g.intersection_matrix();
    report.results = json!({
        "vertices": g.len(),
        "tree": true,
        "connected": true,
        "negative_definite": q.is_negative_definite(),
        "determinant": int(&q.determinant()),
        "minimal": g.is_minimal(),
        "bad_vertices": bad_vertices(&g),
        "bad_vertex_count": g.bad_vertices().len(),
        "almost_rational_proxy": g.is_almost_rational_proxy(),
        "rational": g.is_rational(),
    });
    report
        .diagnostics
        .push("almost_rational_proxy is the at-most-one-bad-vertex criterion".into());
    Ok((report, true))
}

pub fn theta(file: &Path, roots: &[String], table: bool, all_roots: bool) -> CmdResult {
    let mut report = Report::new(
        "theta",
        json!({"graph_file": file, "roots": roots, "table": table, "all_roots": all_roots}),
    );
    let g = load_graph(file)?;
    let default_root = vec![g.id(0).to_string()];
    let roots = if roots.is_empty() { &default_root } else { roots };

    let oracle = theta_oracle(&g)?;
    let mut agree = true;
    let mut per_root = Vec::new();
    for root in roots {
        let t = theta_tree(&g, root)?;
        agree &= t == oracle;
        let mut entry = json!({"root": root, "theta": rat(&t)});
        if table {
            let ct = contribution_table(&g, root)?;
            let rows: Vec<Value> = ct
                .rows
                .iter()
                .map(|(v, x)| json!({"vertex": v, "alpha_s2": rat(x)}))
                .collect();
            entry["table"] = Value::Array(rows);
            entry["sum"] = rat(&ct.total);
        }
        per_root.push(entry);
    }
    let recursion = theta_tree(&g, &roots[0])?;
    let mut results = json!({
        "theta_recursion": rat(&recursion),
        "theta_oracle": rat(&oracle),
        "agree": agree,
        "roots": per_root,
    });
    if all_roots {
        let sweep = theta_all_roots(&g)?;
        let uniform = sweep.windows(2).all(|w| w[0] == w[1]);
        agree &= uniform;
        results["root_sweep"] = Value::Array(
            sweep
                .iter()
                .enumerate()
                .map(|(v, t)| json!({"root": g.id(v), "theta": rat(t)}))
                .collect(),
        );
        results["root_independent"] = json!(uniform);
    }
    results["agree"] = json!(agree);
    report.results = results;
    Ok((report, agree))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    All,
    Closed,
    Nn,
    Tree,
    Oracle,
}

/// `p/q` with positive integers, read as the leg `r = q/p`; a bare `p`
/// means `r = 1/p`.
pub fn parse_leg(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("invalid leg `{s}`: expected p/q with positive integers"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if p <= BigInt::from(0) || q <= BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(q, p))
}

pub fn theta_seifert_cmd(e0: i64, legs: &[String], route: Route) -> CmdResult {
    let mut report = Report::new(
        "theta-seifert",
        json!({"e0": e0, "legs": legs, "route": format!("{route:?}").to_lowercase()}),
    );
    let fractions = legs.iter().map(|l| parse_leg(l)).collect::<Result<Vec<_>, _>>()?;
    let sd = normalize(&BigInt::from(e0), &fractions)?;
    sd.validate()?;
    if sd.needs_separate_justification() {
        report.diagnostics.push(
            "e0 = -1: the Legendrian surgery argument does not cover this case; \
             the value rests on the algebraic identity, cross-checked by the other routes"
                .into(),
        );
    }
    let g = star_graph(&sd)?;
    let want = |r: Route| route == Route::All || route == r;
    let mut values: Vec<(&str, BigRational)> = Vec::new();
    if want(Route::Closed) {
        values.push(("closed", theta_seifert(&sd)?));
    }
    if want(Route::Nn) {
        values.push(("dedekind", theta_nn(&sd)?));
    }
    if want(Route::Tree) {
        values.push(("tree", theta_tree(&g, "c")?));
    }
    if want(Route::Oracle) {
        values.push(("oracle", theta_oracle(&g)?));
    }
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    let routes: Vec<Value> = values
        .iter()
        .map(|(n, v)| json!({"route": n, "theta": rat(v)}))
        .collect();
    let normalized_legs: Vec<Value> = sd.legs.iter().map(|l| json!(format!("{}/{}", l.q(), l.p()))).collect();
    report.results = json!({
        "normalized": {"e0": int(&sd.e0), "legs": normalized_legs},
        "euler_number": rat(&sd.euler_number()),
        "theta": rat(&values[0].1),
        "routes": routes,
        "agree": agree,
        "star_graph": graph_json(&g),
    });
    Ok((report, agree))
}

pub fn d(file: &Path) -> CmdResult {
    let mut report = Report::new("d", json!({"graph_file": file}));
    let g = load_graph(file)?;
    let rep = d_report(&g)?;
    let consistent = !rep.rational || rep.gap == BigRational::from(BigInt::from(0));
    report.results = json!({
        "d": rat(&rep.d),
        "d_source": "via cited formula d = (max k^2 + N)/4",
        "max_k_squared": rat(&rep.search.max_k_squared),
        "argmax_c": ints(&rep.search.argmax_c),
        "lower_bound": rat(&rep.lower_bound),
        "gap": rat(&rep.gap),
        "almost_rational_proxy": rep.almost_rational,
        "rational": rep.rational,
        "points_explored": rep.search.explored,
    });
    if rep.almost_rational && !rep.rational && rep.gap > BigRational::from(BigInt::from(0)) {
        report
            .diagnostics
            .push("at most one bad vertex but not rational: K_can is not the maximizer here".into());
    }
    Ok((report, consistent))
}

pub fn rotations(file: &Path, cap: u64, no_parity: bool) -> CmdResult {
    let mut report = Report::new(
        "rotations",
        json!({"graph_file": file, "cap": cap, "no_parity": no_parity}),
    );
    let g = load_graph(file)?;
    let opts = MinimizationOptions {
        parity: !no_parity,
        cap,
    };
    let rows = rotation_table(&g, opts)?;
    let rep = verify_minimization(&g, opts)?;
    let table: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "z": ints(r.z.entries()),
                "theta": rat(&r.theta),
                "class": r.class.to_string(),
                "rhb_obstructed": r.obstructed,
            })
        })
        .collect();
    report.results = json!({
        "vectors": rows.len(),
        "rows": table,
        "theta_canonical": rat(&rep.theta_canonical),
        "min_inconsistent_theta": rep.min_inconsistent.as_ref().map(rat),
        "gap": rep.gap.as_ref().map(rat),
        "witness": rep.witness.as_ref().map(|w| ints(w.entries())),
        "verdict": if rep.holds { "minimization holds" } else { "minimization violated" },
    });
    Ok((report, rep.holds))
}

fn star_row(s: &SymmetricStar) -> Result<(Value, bool), CliError> {
    let theta = symmetric_theta(s)?;
    let tree = verify_by_tree(s)?;
    let minus_two = BigRational::from(BigInt::from(-2));
    let verified = theta == minus_two && tree == minus_two;
    let origin = match in_family(s) {
        Some(id) => format!("family {id}"),
        None if SPORADIC.contains(s) => "sporadic".into(),
        None => "-".into(),
    };
    let row = json!({
        "ell": s.ell,
        "k": s.k,
        "b": s.b,
        "theta": rat(&theta),
        "vertices": s.vertex_count(),
        "tree_verified": verified,
        "origin": origin,
    });
    Ok((row, verified))
}

pub struct SearchArgs {
    pub max_vertices: i64,
    pub families: bool,
    pub max_ell: i64,
    pub include_small_k: bool,
    pub general: bool,
    pub max_weight: i64,
}

pub fn search(args: &SearchArgs) -> CmdResult {
    let mut report = Report::new(
        "search-theta2",
        json!({
            "max_vertices": args.max_vertices,
            "families": args.families,
            "max_ell": args.max_ell,
            "include_small_k": args.include_small_k,
            "general": args.general,
            "max_weight": args.max_weight,
        }),
    );
    if args.max_vertices < 2 {
        return Err(CliError::Usage("--max-vertices must be at least 2".into()));
    }
    let mut all_ok = true;
    let mut results = serde_json::Map::new();

    let stars: Vec<SymmetricStar> = if args.families {
        family_members(args.max_ell).into_iter().map(|(_, s)| s).collect()
    } else {
        search_theta_two(args.max_vertices, args.include_small_k)
    };
    let mut rows = Vec::new();
    for s in &stars {
        let (row, ok) = star_row(s)?;
        all_ok &= ok;
        rows.push(row);
    }
    results.insert("hits".into(), json!(rows.len()));
    results.insert("stars".into(), Value::Array(rows));

    if args.general {
        let max_n = usize::try_from(args.max_vertices).unwrap_or(0);
        let graphs = search_general_theta_two(max_n, args.max_weight)?;
        let listed: Vec<Value> = graphs
            .iter()
            .map(|g| {
                json!({
                    "vertices": g.len(),
                    "weights": ints(g.weights()),
                    "edges": g.edges().iter().map(|&(u, v)| format!("{}-{}", g.id(u), g.id(v))).collect::<Vec<_>>().join(" "),
                })
            })
            .collect();
        results.insert("general_trees".into(), Value::Array(listed));
        report
            .diagnostics
            .push("general tree search is experimental: a bounded sampler, not a classification".into());
    }
    results.insert("all_verified".into(), json!(all_ok));
    report.results = Value::Object(results);
    Ok((report, all_ok))
}

/// `N` lines of `N` integers; row `v` is the image of vertex `v`.
pub fn parse_certificate(text: &str, n: usize) -> Result<Vec<Vec<BigInt>>, CliError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let row = trimmed
            .split_whitespace()
            .enumerate()
            .map(|(j, tok)| {
                tok.parse::<BigInt>().map_err(|_| {
                    CliError::Parse(format!(
                        "certificate line {}, entry {}: `{tok}` is not an integer",
                        i + 1,
                        j + 1
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(CliError::Parse(format!(
                "certificate line {}: expected {n} integers, found {}",
                i + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(CliError::Parse(format!(
            "certificate has {} rows, expected {n}",
            rows.len()
        )));
    }
    Ok(rows)
}

pub fn verify_ssw(graph_file: &Path, cert_file: &Path) -> CmdResult {
    let mut report = Report::new(
        "verify-ssw",
        json!({"graph_file": graph_file, "certificate_file": cert_file}),
    );
    let g = load_graph(graph_file)?;
    let phi = parse_certificate(&read(cert_file)?, g.len())?;
    let valid = verify_ssw_embedding(&g, &phi)?;
    let mut results = json!({"valid": valid});
    if let Ok(t) = theta_oracle(&g) {
        results["theta"] = rat(&t);
    }
    report.results = results;
    Ok((report, valid))
}
