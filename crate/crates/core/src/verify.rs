//! The acceptance suites: named-value checks and randomized property checks,
//! each reported as a [`Check`] with expected value, actual value and tolerance.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coloring::{
    chromatic_number, grundy_number, independence_bound, kneser_check, max_chi_h,
    min_entropy_coloring,
};
use crate::config::{Caps, SolverConfig, SYMMETRY_TOL};
use crate::corner::{entropy_am, entropy_fw, splitting_gap};
use crate::counting::{bregman_bound_parts, shearer_check, PointSet3D};
use crate::error::{Error, Result};
use crate::fractional::{fractional_chromatic_number, fractional_edge_chromatic, Rational};
use crate::graph::enumerate::nonisomorphic_graphs_up_to;
use crate::graph::{
    bipartition, conormal_power, disjoint_union, generate, line_graph, Family, Graph, VertexSet,
};
use crate::prob::{entropy, Distribution};
use crate::symmetry::{check_bipartite_symmetric, is_perfect, numeric_symmetry_check};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Paper,
    Properties,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "paper" => Ok(Suite::Paper),
            "properties" => Ok(Suite::Properties),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidParameter(format!("unknown suite `{other}`"))),
        }
    }
}

impl Suite {
    /// Criterion numbers in execution order.
    pub fn criteria(self) -> Vec<u8> {
        match self {
            Suite::Paper => vec![2, 3, 5, 9],
            Suite::Properties => vec![1, 4, 6, 7, 8, 10, 11, 12],
            Suite::All => (1..=12).collect(),
        }
    }
}

#[derive(Debug, Clone)]
#[derive(Default)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Check only this many randomly chosen graphs in the splitting criterion.
    pub sample: Option<usize>,
    pub cfg: SolverConfig,
}


#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub expected: Value,
    pub actual: Value,
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn approx(criterion: u8, name: &str, expected: f64, actual: f64, tol: f64) -> Check {
        Check {
            criterion,
            name: name.into(),
            passed: (actual - expected).abs() <= tol,
            expected: json!(expected),
            actual: json!(actual),
            tolerance: Some(tol),
            note: None,
        }
    }

    /// Passes when `actual <= bound`.
    fn at_most(criterion: u8, name: &str, bound: f64, actual: f64) -> Check {
        Check {
            criterion,
            name: name.into(),
            passed: actual <= bound,
            expected: json!(format!("<= {bound:e}")),
            actual: json!(actual),
            tolerance: Some(bound),
            note: None,
        }
    }

    fn exact<T: Serialize + PartialEq>(criterion: u8, name: &str, expected: T, actual: T) -> Check {
        Check {
            criterion,
            name: name.into(),
            passed: expected == actual,
            expected: json!(expected),
            actual: json!(actual),
            tolerance: None,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }
}

/// Runs every criterion of `suite` in order.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<Check> {
    suite.criteria().into_iter().flat_map(|k| run_criterion(k, opts)).collect()
}

/// Runs one criterion; errors are reported as a failed check.
pub fn run_criterion(k: u8, opts: &VerifyOptions) -> Vec<Check> {
    let result = match k {
        1 => complete_graph_identity(opts),
        2 => vertex_transitive_values(opts),
        3 => line_graph_value(opts),
        4 => bipartite_symmetry(opts),
        5 => chromatic_entropy_values(opts),
        6 => sandwich_chain(opts),
        7 => splitting_and_perfection(opts),
        8 => grundy_maximum(opts),
        9 => kneser_theorem(opts),
        10 => conormal_powers(opts),
        11 => cross_algorithm_agreement(opts),
        12 => counting_bounds(opts),
        _ => Err(Error::InvalidParameter(format!("no criterion {k}"))),
    };
    result.unwrap_or_else(|e| {
        vec![Check {
            criterion: k,
            name: "error".into(),
            passed: false,
            expected: Value::Null,
            actual: Value::Null,
            tolerance: None,
            note: Some(e.to_string()),
        }]
    })
}

fn rng_for(opts: &VerifyOptions, criterion: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ criterion as u64)
}

/// A distribution with i.i.d. exponential weights, i.e. uniform on the simplex.
pub fn random_distribution<R: Rng>(rng: &mut R, n: usize) -> Distribution {
    let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln() + 1e-12).collect();
    Distribution::normalized(w).expect("positive weights")
}

/// An Erdős–Rényi graph `G(n, q)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, q: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(q) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid edges")
}

fn gen(f: Family) -> Result<Graph> {
    generate(&f)
}

fn complete_graph_identity(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = rng_for(opts, 1);
    let (mut fw_dev, mut am_dev) = (0.0f64, 0.0f64);
    for n in 2..=8 {
        let g = gen(Family::Complete(n))?;
        for _ in 0..20 {
            let p = random_distribution(&mut rng, n);
            let h = entropy(&p);
            fw_dev = fw_dev.max((entropy_fw(&g, &p, &opts.cfg)?.result.value - h).abs());
            am_dev = am_dev.max((entropy_am(&g, &p, &opts.cfg)?.value - h).abs());
        }
    }
    Ok(vec![
        Check::at_most(1, "complete_graph_fw_max_deviation", 1e-6, fw_dev),
        Check::at_most(1, "complete_graph_am_max_deviation", 1e-6, am_dev),
    ])
}

fn vertex_transitive_values(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, g) in [("c5", gen(Family::Cycle(5))?), ("petersen", gen(Family::Petersen)?)] {
        let h = entropy_fw(&g, &Distribution::uniform(g.n())?, &opts.cfg)?.result.value;
        out.push(Check::approx(2, &format!("{name}_uniform_entropy"), 2.5f64.log2(), h, 1e-6));
        let chi_f = fractional_chromatic_number(&g, &opts.cfg.caps)?.value;
        out.push(Check::exact(2, &format!("{name}_chi_f"), Rational::new(5, 2), chi_f.clone()));
        out.push(Check::approx(
            2,
            &format!("{name}_entropy_vs_log_chi_f"),
            chi_f.to_f64().log2(),
            h,
            1e-6,
        ));
    }
    Ok(out)
}

fn line_graph_value(opts: &VerifyOptions) -> Result<Vec<Check>> {
    const PAPER_VALUE: f64 = 1.75712;
    let g = gen(Family::Fig52)?;
    let lg = line_graph(&g)?.graph;
    let h = entropy_fw(&lg, &Distribution::uniform(lg.n())?, &opts.cfg)?.result.value;
    let chi_e = fractional_edge_chromatic(&g, &opts.cfg.caps)?.value;
    let gap = chi_e.to_f64().log2() - h;
    Ok(vec![
        Check::approx(3, "line_fig52_uniform_entropy", PAPER_VALUE, h, 1e-3),
        Check::exact(3, "fig52_fractional_edge_chromatic", Rational::new(7, 2), chi_e),
        Check::approx(3, "line_fig52_symmetry_gap", 3.5f64.log2() - PAPER_VALUE, gap, 1e-3),
    ])
}

/// Bipartite graphs without isolated vertices on at most 12 vertices: all
/// such graphs up to 7 vertices, named families, and random graphs.
fn bipartite_corpus(opts: &VerifyOptions) -> Result<Vec<(String, Graph)>> {
    let mut out = Vec::new();
    for (i, g) in nonisomorphic_graphs_up_to(7)?.into_iter().enumerate() {
        if g.n() >= 2 && (0..g.n()).all(|v| g.degree(v) > 0) && bipartition(&g).is_some() {
            out.push((format!("small#{i}"), g));
        }
    }
    for n in (4..=12).step_by(2) {
        out.push((format!("cycle {n}"), gen(Family::Cycle(n))?));
    }
    for n in 2..=12 {
        out.push((format!("path {n}"), gen(Family::Path(n))?));
    }
    for k in 1..=11 {
        out.push((format!("star {k}"), gen(Family::Star(k))?));
    }
    for a in 1..=6 {
        for b in a..=12 - a {
            out.push((format!("K_{a},{b}"), gen(Family::CompleteMultipartite(vec![a, b]))?));
        }
    }
    out.push(("C4+C6".into(), disjoint_union(&gen(Family::Cycle(4))?, &gen(Family::Cycle(6))?)));
    let mut rng = rng_for(opts, 4);
    let mut made = 0;
    while made < 20 {
        let (a, b) = (rng.gen_range(3..=6), rng.gen_range(3..=6));
        let q = rng.gen_range(0.25..0.75);
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                if rng.gen_bool(q) {
                    edges.push((u, a + v));
                }
            }
        }
        let g = Graph::from_edges(a + b, edges)?;
        if (0..g.n()).all(|v| g.degree(v) > 0) {
            out.push((format!("random bipartite #{made}"), g));
            made += 1;
        }
    }
    Ok(out)
}

fn bipartite_symmetry(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let corpus = bipartite_corpus(opts)?;
    let mut mismatches = Vec::new();
    let mut worst = 0.0f64;
    let mut with_pm = 0;
    for (name, g) in &corpus {
        let structural = check_bipartite_symmetric(g, &opts.cfg)?.symmetric;
        let numeric = numeric_symmetry_check(g, SYMMETRY_TOL, &opts.cfg)?.symmetric;
        if structural != numeric {
            mismatches.push(name.clone());
        }
        if structural == Some(true) {
            with_pm += 1;
            let h = entropy_fw(g, &Distribution::uniform(g.n())?, &opts.cfg)?.result.value;
            worst = worst.max((h - 1.0).abs());
        }
    }
    let mut verdicts = Check::exact(4, "structural_equals_numeric", 0, mismatches.len())
        .with_note(format!("{} graphs", corpus.len()));
    if !mismatches.is_empty() {
        verdicts.note = Some(format!("mismatches: {}", mismatches.join(", ")));
    }
    Ok(vec![
        verdicts,
        Check::at_most(4, "perfect_matching_entropy_one", 1e-5, worst)
            .with_note(format!("{with_pm} graphs with a perfect matching")),
    ])
}

fn chromatic_entropy_values(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let caps = &opts.cfg.caps;
    let c5 = gen(Family::Cycle(5))?;
    let u = min_entropy_coloring(&c5, &Distribution::uniform(5)?, caps)?.value;
    let p = Distribution::new(vec![0.3, 0.2, 0.2, 0.1, 0.2])?;
    let w = min_entropy_coloring(&c5, &p, caps)?.value;
    let mut star_p = vec![1.0 / 14.0; 8];
    star_p[0] = 0.5;
    let star = min_entropy_coloring(&gen(Family::Star(7))?, &Distribution::normalized(star_p)?, caps)?;
    let h = |v: &[f64]| entropy(&Distribution::new(v.to_vec()).expect("valid"));
    // The printed values carry five decimals.
    Ok(vec![
        Check::approx(5, "c5_uniform_exact", h(&[0.4, 0.4, 0.2]), u, 1e-9),
        Check::approx(5, "c5_uniform_printed", 1.52193, u, 5e-6),
        Check::approx(5, "c5_weighted_exact", h(&[0.5, 0.4, 0.1]), w, 1e-9),
        Check::approx(5, "c5_weighted_printed", 1.36096, w, 5e-6),
        Check::approx(5, "star7_value", 1.0, star.value, 1e-9),
    ])
}

fn sandwich_chain(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = rng_for(opts, 6);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..200 {
        let n = rng.gen_range(2..=10);
        let q = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, q);
        let p = random_distribution(&mut rng, n);
        let lower = independence_bound(&g, &p)?;
        let hk = entropy_fw(&g, &p, &opts.cfg)?.result.value;
        let hchi = min_entropy_coloring(&g, &p, &opts.cfg.caps)?.value;
        let upper = (chromatic_number(&g, &opts.cfg.caps)?.chi as f64).log2();
        worst = worst.max(lower - hk).max(hk - hchi).max(hchi - upper);
    }
    Ok(vec![Check::at_most(6, "sandwich_max_violation", 1e-5, worst)])
}

fn splitting_and_perfection(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = rng_for(opts, 7);
    let mut graphs = nonisomorphic_graphs_up_to(7)?;
    if let Some(k) = opts.sample {
        graphs.shuffle(&mut rng);
        graphs.truncate(k);
    }
    let (mut perfect, mut imperfect) = (0, 0);
    let mut worst_perfect = 0.0f64;
    let mut weakest_imperfect = f64::INFINITY;
    for g in &graphs {
        let mut max_gap = 0.0f64;
        for _ in 0..10 {
            let p = random_distribution(&mut rng, g.n());
            max_gap = max_gap.max(splitting_gap(g, &p, &opts.cfg)?.abs());
        }
        if is_perfect(g, &opts.cfg.caps)? {
            perfect += 1;
            worst_perfect = worst_perfect.max(max_gap);
        } else {
            imperfect += 1;
            weakest_imperfect = weakest_imperfect.min(max_gap);
        }
    }
    let mut detect = Check {
        criterion: 7,
        name: "imperfect_min_of_max_gap".into(),
        passed: imperfect == 0 || weakest_imperfect > 1e-3,
        expected: json!("> 1e-3"),
        actual: json!(if imperfect == 0 { Value::Null } else { json!(weakest_imperfect) }),
        tolerance: Some(1e-3),
        note: None,
    };
    detect.note = Some(format!("{imperfect} imperfect graphs"));
    Ok(vec![
        Check::at_most(7, "perfect_max_gap", 1e-5, worst_perfect)
            .with_note(format!("{perfect} perfect graphs")),
        detect,
    ])
}

fn grundy_maximum(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let caps = &opts.cfg.caps;
    let mut rng = rng_for(opts, 8);
    let mut graphs = Vec::new();
    for n in 2..=10 {
        graphs.push(Family::Path(n));
    }
    for n in 3..=10 {
        graphs.push(Family::Cycle(n));
    }
    for k in 1..=9 {
        graphs.push(Family::Star(k));
    }
    graphs.push(Family::Petersen);
    graphs.push(Family::Fig51);
    let mut out = Vec::new();
    for f in graphs {
        let g = gen(f.clone())?;
        let gamma = grundy_number(&g, caps)?.number;
        let witness = max_chi_h(&g, caps)?;
        let mut best = match &witness.witness {
            Some(d) => min_entropy_coloring(&g, d, caps)?.chi_h,
            None => 0,
        };
        let mut exceeded = false;
        for _ in 0..50 {
            let c = min_entropy_coloring(&g, &random_distribution(&mut rng, g.n()), caps)?.chi_h;
            exceeded |= c > gamma;
            best = best.max(c);
        }
        let mut check = Check::exact(8, &format!("{f}_max_chi_h_equals_grundy"), gamma, best);
        check.passed &= !exceeded && witness.verified;
        if !witness.verified {
            check.note = Some("witness unverified".into());
        }
        out.push(check);
    }
    Ok(out)
}

fn kneser_theorem(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (v, r) in [(4, 2), (5, 2), (6, 2)] {
        // K(6,2) has 15 vertices, one above the default search cap.
        let n = gen(Family::Kneser(v, r))?.n();
        let caps = Caps {
            min_entropy_coloring: opts.cfg.caps.min_entropy_coloring.max(n),
            ..opts.cfg.caps.clone()
        };
        let k = kneser_check(v, r, &caps)?;
        out.push(Check::exact(9, &format!("kneser_{v}_{r}_chi_h_equals_chi"), k.chi, k.chi_h));
    }
    Ok(out)
}

fn conormal_powers(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let caps = &opts.cfg.caps;
    let mut out = Vec::new();
    for (name, f) in [
        ("k2", Family::Complete(2)),
        ("k3", Family::Complete(3)),
        ("c5", Family::Cycle(5)),
        ("c4", Family::Cycle(4)),
    ] {
        let g = gen(f)?;
        let log_chi_f = fractional_chromatic_number(&g, caps)?.value.to_f64().log2();
        let mut rates = Vec::new();
        for k in 1..=2 {
            let power = conormal_power(&g, k, caps.power_vertices)?;
            let chi = chromatic_number(&power, caps)?.chi;
            rates.push((chi as f64).log2() / k as f64);
        }
        for (k, &rate) in rates.iter().enumerate() {
            out.push(Check {
                criterion: 10,
                name: format!("{name}_rate_{}_at_least_log_chi_f", k + 1),
                passed: rate >= log_chi_f - 1e-9,
                expected: json!(format!(">= {log_chi_f}")),
                actual: json!(rate),
                tolerance: Some(1e-9),
                note: None,
            });
        }
        out.push(Check {
            criterion: 10,
            name: format!("{name}_rate_nonincreasing"),
            passed: rates[1] <= rates[0] + 1e-9,
            expected: json!(format!("<= {}", rates[0])),
            actual: json!(rates[1]),
            tolerance: Some(1e-9),
            note: None,
        });
    }
    Ok(out)
}

fn cross_algorithm_agreement(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = rng_for(opts, 11);
    let cfg = opts.cfg.clone().with_tol(1e-7);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let n = rng.gen_range(2..=10);
        let q = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, q);
        let p = random_distribution(&mut rng, n);
        let fw = entropy_fw(&g, &p, &cfg)?.result.value;
        let am = entropy_am(&g, &p, &cfg)?.value;
        worst = worst.max((fw - am).abs());
    }
    Ok(vec![Check::at_most(11, "fw_am_max_difference", 2e-7, worst)])
}

fn counting_bounds(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let caps = &opts.cfg.caps;
    let mut rng = rng_for(opts, 12);
    let mut shearer_failures = 0;
    for _ in 0..1000 {
        let want = rng.gen_range(1..=100);
        let mut pts = std::collections::BTreeSet::new();
        while pts.len() < want {
            pts.insert([rng.gen_range(0..5), rng.gen_range(0..5), rng.gen_range(0..5)]);
        }
        let set = PointSet3D::new(pts.into_iter().collect())?;
        if !shearer_check(&set).holds {
            shearer_failures += 1;
        }
    }
    let mut bregman_failures = 0;
    let mut made = 0;
    while made < 1000 {
        let k = rng.gen_range(1..=7);
        let q = rng.gen_range(0.2..0.9);
        let mut edges = Vec::new();
        for u in 0..k {
            for v in 0..k {
                if rng.gen_bool(q) {
                    edges.push((u, k + v));
                }
            }
        }
        let g = Graph::from_edges(2 * k, edges)?;
        if (0..k).any(|v| g.degree(v) == 0) {
            continue;
        }
        made += 1;
        let a = VertexSet::full(k);
        let b = VertexSet::full(2 * k).difference(a);
        if !bregman_bound_parts(&g, a, b, caps)?.holds {
            bregman_failures += 1;
        }
    }
    let k33 = gen(Family::CompleteMultipartite(vec![3, 3]))?;
    let eq = bregman_bound_parts(&k33, VertexSet(0b000111), VertexSet(0b111000), caps)?;
    Ok(vec![
        Check::exact(12, "shearer_failures", 0, shearer_failures),
        Check::exact(12, "bregman_failures", 0, bregman_failures),
        Check::exact(12, "k33_matchings", 6u128, eq.count),
        Check::approx(12, "k33_bregman_bound", 6.0, eq.bound, 1e-9),
    ])
}
