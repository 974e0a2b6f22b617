//! Acceptance suite. Runs every criterion in order, prints one PASS/FAIL
//! line each, and exits non-zero if any failed.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use graphguess::algorithms::{bp_spec, pagerank_spec, sssp_spec, wcc_spec, AlgoKind, BeliefPropagation};
use graphguess::bench::{run_sweep_on, GraphSource, SweepPlan, SweepRow};
use graphguess::engine::{run, sparsify, Orientation, PullView, VertexProgram};
use graphguess::graph::{generate_dumbbell, generate_power_law, Graph};
use graphguess::metrics::{self, label_relative_error, relative_error, stretch_error, topk_error};
use graphguess::{EngineConfig, Scheme};

use common::*;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn cfg(scheme: Scheme, sigma: f64, theta: f64, alpha: usize, max_iterations: usize, seed: u64) -> EngineConfig {
    EngineConfig { scheme, sigma, theta, alpha, max_iterations, seed, threads: threads() }
}

// ---------------------------------------------------------------- 1

fn bits_f64(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

/// Runs accurate, gg(σ=1, α ≥ budget) and sp(σ=1); returns true when both
/// approximate runs match accurate bit for bit.
fn exact_triple<A, F>(g: &Graph, program: &A, budget: usize, key: F) -> bool
where
    A: VertexProgram,
    F: Fn(&[A::Property]) -> Vec<u64>,
{
    let reference = run(g, program, &cfg(Scheme::Accurate, 1.0, 0.5, 1, budget, 0)).unwrap();
    let want = key(&reference.final_properties);
    [
        cfg(Scheme::Gg, 1.0, 0.5, budget, budget, 3),
        cfg(Scheme::Sp, 1.0, 0.5, 1, budget, 3),
    ]
    .iter()
    .all(|c| key(&run(g, program, c).unwrap().final_properties) == want)
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    for seed in 0..20u64 {
        let g = generate_power_law(1000, 8.0, 2.1, 100 + seed).unwrap();
        let pr = pagerank_spec(0.85, 1e-7).unwrap();
        let sssp = sssp_spec(0, g.num_vertices()).unwrap();
        let bp = bp_spec(2, 0.8, 1e-6).unwrap();
        let checks = [
            ("pr", exact_triple(&g, &pr, 50, bits_f64)),
            ("sssp", exact_triple(&g, &sssp, 1000, bits_f64)),
            ("wcc", exact_triple(&g, &wcc_spec(), 1000, |p| p.iter().map(|&x| x as u64).collect())),
            ("bp", exact_triple(&g, &bp, 30, |p| {
                p.iter()
                    .flat_map(|s| s.belief.iter().chain(&s.incoming).map(|x| x.to_bits()))
                    .collect()
            })),
        ];
        failures.extend(checks.iter().filter(|c| !c.1).map(|c| format!("{}@graph{seed}", c.0)));
    }
    let elapsed = start.elapsed();
    verdict(
        failures.is_empty() && elapsed < Duration::from_secs(60),
        format!("80 algorithm/graph pairs, mismatches {failures:?}, {:.1}s (limit 60s)", elapsed.as_secs_f64()),
    )
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Verdict {
    let mut worst_pr: f64 = 0.0;
    let mut sssp_ok = true;
    let mut wcc_ok = true;
    let mut worst_bp: f64 = 0.0;
    let mut oracle_gap: f64 = 0.0;
    for seed in 0..10u64 {
        // PageRank, N <= 100
        let n = 20 + 8 * seed as usize;
        let edges = random_edges(n, 4 * n, seed);
        let g = Graph::from_edges(n, &edges, None).unwrap();
        let pr = pagerank_spec(0.85, 1e-15).unwrap();
        let got = run(&g, &pr, &cfg(Scheme::Accurate, 1.0, 0.0, 1, 10_000, 0)).unwrap();
        worst_pr = worst_pr.max(l1(&got.final_properties, &dense_pagerank(n, &edges, 0.85, 2000)));

        // SSSP, N <= 200, weighted
        let n = 50 + 15 * seed as usize;
        let edges = random_edges(n, 3 * n, 1000 + seed);
        let w = quarter_weights(edges.len(), 2000 + seed);
        let g = Graph::from_edges(n, &edges, Some(w.clone())).unwrap();
        let src = (seed as u32 * 7) % n as u32;
        let got = run(&g, &sssp_spec(src, n).unwrap(), &cfg(Scheme::Accurate, 1.0, 0.0, 1, 10_000, 0)).unwrap();
        sssp_ok &= got.final_properties == dijkstra(n, &edges, &w, src);

        // WCC, N <= 500, sparse enough to leave several components
        let n = 100 + 40 * seed as usize;
        let edges = random_edges(n, n / 2 + seed as usize * 5, 3000 + seed);
        let g = Graph::from_edges(n, &edges, None).unwrap();
        let got = run(&g, &wcc_spec(), &cfg(Scheme::Accurate, 1.0, 0.0, 1, 10_000, 0)).unwrap();
        wcc_ok &= got.final_properties == union_find_labels(n, &edges);

        // BP on trees, N <= 50
        let n = 5 + 5 * seed as usize;
        let states = 2 + seed as usize % 2;
        let tree = random_tree(n, 4000 + seed);
        let bp = bp_spec(states, 0.8, 1e-14).unwrap();
        let g = Graph::from_edges(n, &tree, None).unwrap();
        let got = run(&g, &bp, &cfg(Scheme::Accurate, 1.0, 0.0, 1, 500, 0)).unwrap();
        let priors: Vec<Vec<f64>> = (0..n as u32).map(|v| bp.prior(v)).collect();
        let exact = tree_marginals(&priors, &tree, 0.8);
        for (s, e) in got.final_properties.iter().zip(&exact) {
            worst_bp = worst_bp.max(l1(&s.belief, e));
        }
        if n <= 10 {
            let brute = brute_force_marginals(&priors, &tree, 0.8);
            for (a, b) in brute.iter().zip(&exact) {
                oracle_gap = oracle_gap.max(l1(a, b));
            }
        }
    }
    // star: 3 leaves -> hub
    let star = [(1, 0), (2, 0), (3, 0)];
    let g = Graph::from_edges(4, &star, None).unwrap();
    let pr = pagerank_spec(0.85, 1e-15).unwrap();
    let got = run(&g, &pr, &cfg(Scheme::Accurate, 1.0, 0.0, 1, 1000, 0)).unwrap();
    let star_l1 = l1(&got.final_properties, &dense_pagerank(4, &star, 0.85, 2000));

    let pass = worst_pr < 1e-10 && star_l1 < 1e-10 && sssp_ok && wcc_ok && worst_bp < 1e-8 && oracle_gap < 1e-12;
    verdict(
        pass,
        format!(
            "pr L1 max {worst_pr:.2e} (star {star_l1:.2e}), sssp exact {sssp_ok}, wcc exact {wcc_ok}, \
             bp L1 max {worst_bp:.2e} (tree oracle vs brute force {oracle_gap:.2e})"
        ),
    )
}

// ---------------------------------------------------------------- 3

/// First seed whose σ=0.5 sparsification of the symmetric WCC view leaves
/// every bridge edge inactive.
fn bridge_dropping_seed(g: &Graph, k: u32) -> u64 {
    let view = PullView::new(g, Orientation::Symmetric);
    let vg = view.graph();
    let bridge: Vec<usize> = vg
        .edges()
        .enumerate()
        .filter(|(_, (s, d, _))| (*s < k) != (*d < k))
        .map(|(e, _)| e)
        .collect();
    assert_eq!(bridge.len(), 4);
    (0..)
        .find(|&seed| {
            let flags = sparsify(vg, 0.5, seed).unwrap();
            bridge.iter().all(|&e| !flags.get(e))
        })
        .unwrap()
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let k = 8;
    let g = generate_dumbbell(k).unwrap();
    let seed = bridge_dropping_seed(&g, k as u32);
    let exact = union_find_labels(2 * k, &g.edges().map(|(s, d, _)| (s, d)).collect::<Vec<_>>());
    let acc = |c: EngineConfig| {
        let r = run(&g, &wcc_spec(), &c).unwrap();
        label_relative_error(&r.final_properties, &exact).unwrap().accuracy
    };
    let sp = acc(cfg(Scheme::Sp, 0.5, 0.5, 1, 100, seed));
    let gg_before = acc(cfg(Scheme::Gg, 0.5, 0.5, 2, 2, seed));
    // smallest budget at which gg is exact
    let first_exact = (1..=30).find(|&m| acc(cfg(Scheme::Gg, 0.5, 0.5, 2, m, seed)) == 100.0);
    let elapsed = start.elapsed();
    let pass = sp < 100.0
        && gg_before < 100.0
        && first_exact.is_some_and(|m| m >= 3)
        && elapsed < Duration::from_secs(1);
    verdict(
        pass,
        format!(
            "seed {seed}: sp accuracy {sp:.2}, gg accuracy {gg_before:.2} before the superstep at t=3, \
             gg exact from t={first_exact:?}, {:.3}s",
            elapsed.as_secs_f64()
        ),
    )
}

// ---------------------------------------------------------------- 4-6, 9

fn benchmark_graph() -> (GraphSource, Graph) {
    let source: GraphSource = "gen:powerlaw:10000,16,2.1,7".parse().unwrap();
    let g = source.load(false).unwrap();
    (source, g)
}

fn sweep(g: &Graph, source: &GraphSource, algo: AlgoKind, schemes: &[Scheme], sigma: &[f64], theta: &[f64], alpha: &[usize]) -> Vec<SweepRow> {
    let plan = SweepPlan {
        schemes: schemes.to_vec(),
        sigma: sigma.to_vec(),
        theta: theta.to_vec(),
        alpha: alpha.to_vec(),
        repeats: 5,
        seed: 0,
        threads: threads(),
        ..SweepPlan::new(algo, source.clone())
    };
    run_sweep_on(&plan, g).unwrap()
}

fn criterion_4(g: &Graph, source: &GraphSource) -> Verdict {
    let start = Instant::now();
    let sigmas: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    let rows = sweep(g, source, AlgoKind::Pr, &[Scheme::Gg], &sigmas, &[0.5], &[5]);
    let gg: Vec<&SweepRow> = rows.iter().filter(|r| r.scheme == Scheme::Gg).collect();
    let acc_ok = gg.windows(2).all(|w| w[1].accuracy >= w[0].accuracy - 1.0);
    let work_ok = gg.windows(2).all(|w| w[1].edge_ratio >= w[0].edge_ratio);
    let elapsed = start.elapsed();
    let list = |f: fn(&SweepRow) -> f64| gg.iter().map(|r| format!("{:.3}", f(r))).collect::<Vec<_>>().join(" ");
    verdict(
        acc_ok && work_ok && elapsed < Duration::from_secs(120),
        format!(
            "accuracy [{}], edge ratio [{}], {:.1}s",
            list(|r| r.accuracy),
            list(|r| r.edge_ratio),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_5(g: &Graph, source: &GraphSource) -> Verdict {
    let rows = sweep(g, source, AlgoKind::Pr, &[Scheme::Gg], &[0.5], &[0.05, 0.5, 0.8], &[5]);
    let gg: Vec<&SweepRow> = rows.iter().filter(|r| r.scheme == Scheme::Gg).collect();
    let (a, r): (Vec<f64>, Vec<f64>) = gg.iter().map(|x| (x.accuracy, x.edge_ratio)).unzip();
    let pass = a[0] >= a[1] && a[1] >= a[2] && r[0] > r[1] && r[1] >= r[2];
    verdict(pass, format!("theta 0.05/0.5/0.8: accuracy {a:.3?}, edge ratio {r:.4?}"))
}

fn criterion_6(g: &Graph, source: &GraphSource) -> Verdict {
    let mut pass = true;
    let mut detail = Vec::new();
    for algo in [AlgoKind::Pr, AlgoKind::Sssp] {
        let rows = sweep(g, source, algo, &[Scheme::Sp, Scheme::Sms, Scheme::Gg], &[0.5], &[0.5], &[5]);
        let get = |s: Scheme| rows.iter().find(|r| r.scheme == s).unwrap();
        let (sp, sms, gg) = (get(Scheme::Sp), get(Scheme::Sms), get(Scheme::Gg));
        let checks = [
            ("acc sp<=gg", sp.accuracy <= gg.accuracy),
            ("acc gg<=sms+0.5", gg.accuracy <= sms.accuracy + 0.5),
            ("work sp<=gg", sp.edge_ratio <= gg.edge_ratio),
            ("work gg<=sms", gg.edge_ratio <= sms.edge_ratio),
        ];
        let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
        pass &= failed.is_empty();
        detail.push(format!(
            "{algo}: accuracy sp {:.2} gg {:.2} sms {:.2}, edge ratio sp {:.3} gg {:.3} sms {:.3}, violated {failed:?}",
            sp.accuracy, gg.accuracy, sms.accuracy, sp.edge_ratio, gg.edge_ratio, sms.edge_ratio
        ));
    }
    verdict(pass, detail.join("; "))
}

fn criterion_9(g: &Graph, source: &GraphSource) -> Verdict {
    let rows = sweep(g, source, AlgoKind::Pr, &[Scheme::Gg], &[0.3, 0.5, 0.7], &[0.001, 0.01], &[10, 20]);
    let hit = rows
        .iter()
        .filter(|r| r.scheme == Scheme::Gg && r.accuracy >= 90.0 && r.edge_ratio < 0.75)
        .min_by(|a, b| a.edge_ratio.total_cmp(&b.edge_ratio));
    match hit {
        Some(r) => verdict(
            true,
            format!(
                "gg sigma={} theta={} alpha={}: accuracy {:.2}, edge ratio {:.4}, wall-time speedup {:.3}",
                r.sigma, r.theta, r.alpha, r.accuracy, r.edge_ratio, r.speedup
            ),
        ),
        None => verdict(false, "no gg cell with accuracy >= 90 and edge ratio < 0.75"),
    }
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Verdict {
    let mut mismatches = Vec::new();
    for seed in 0..10u64 {
        let n = 300;
        let edges = random_edges(n, 250 + 10 * seed as usize, 5000 + seed);
        let g = Graph::from_edges(n, &edges, None).unwrap();
        let alpha = 2 + seed as usize % 4;
        let theta = [0.1, 0.5, 0.9][seed as usize % 3];
        let labels = |s: Scheme| run(&g, &wcc_spec(), &cfg(s, 0.5, theta, alpha, 10_000, seed)).unwrap().final_properties;
        let (gg, sms) = (labels(Scheme::Gg), labels(Scheme::Sms));
        if gg != sms || gg != union_find_labels(n, &edges) {
            mismatches.push(seed);
        }
    }
    verdict(
        mismatches.is_empty(),
        format!("10 random graphs, sigma 0.5, theta in (0,1): gg and sms labels differ on {mismatches:?}"),
    )
}

// ---------------------------------------------------------------- 8

fn criterion_8() -> Verdict {
    let mut ok = true;
    let exact = [0.9, 0.8, 0.1, 0.7, 0.0];
    let approx = [0.9, 0.8, 0.75, 0.1, 0.0];
    let r = topk_error(&approx, &exact, 3).unwrap();
    ok &= r.error == 1.0 / 3.0 && format!("{:.2}", r.accuracy) == "66.67";
    ok &= label_relative_error(&[0, 0, 2, 2], &[0, 0, 2, 2]).unwrap().accuracy == 100.0;
    ok &= label_relative_error(&[5, 0, 0, 0], &[0, 0, 0, 0]).unwrap().accuracy == 75.0;
    ok &= stretch_error(&[0.0, 1.0, 2.0], &[0.0, 1.0, 2.0]).unwrap().error == 0.0;
    ok &= stretch_error(&[0.0, f64::INFINITY], &[0.0, 1.0]).unwrap().error == 1.0;
    ok &= topk_error(&[1.0], &[1.0], 2).is_err();
    ok &= relative_error(&[1.0], &[1.0, 2.0]).is_err();
    ok &= metrics::default_k(10_000) == 100;

    use proptest::prelude::*;
    use proptest::test_runner::{Config, TestRunner};
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    let strategy = (
        proptest::collection::vec(0.0f64..1.0, 1..300),
        proptest::collection::vec(-0.3f64..0.3, 300),
        1usize..300,
    );
    let prop = runner.run(&strategy, |(exact, noise, k)| {
        let n = exact.len();
        let k = k.min(n);
        let approx: Vec<f64> = exact.iter().zip(&noise).map(|(x, e)| x + e).collect();
        let f = |v: &[f64]| v.iter().map(|x| 5.0 * x.powi(3) + 2.0).collect::<Vec<_>>();
        let a = topk_error(&approx, &exact, k).unwrap().error;
        let b = topk_error(&f(&approx), &f(&exact), k).unwrap().error;
        prop_assert_eq!(a, b);
        Ok(())
    });
    let prop_ok = prop.is_ok();
    verdict(
        ok && prop_ok,
        format!("fixed examples {ok}, monotone-transform invariance over 100 random vectors {prop_ok}"),
    )
}

// ---------------------------------------------------------------- 10

fn criterion_10() -> Verdict {
    let exe = env!("CARGO_BIN_EXE_graphguess");
    let dir = tempfile::tempdir().unwrap();
    let mut masked = Vec::new();
    for i in 0..3 {
        let out = dir.path().join(format!("run{i}.csv"));
        let status = Command::new(exe)
            .args([
                "sweep", "--algo", "pr", "--graph", "gen:powerlaw:2000,8,2.1,3", "--schemes", "sp,sms,gg",
                "--sigma", "0.3,0.7", "--theta", "0.05,0.5", "--alpha", "3", "--repeats", "2", "--threads", "4",
                "--out",
            ])
            .arg(&out)
            .output()
            .unwrap();
        assert!(status.status.success());
        masked.push(mask_wall_columns(&std::fs::read_to_string(&out).unwrap()));
    }
    let csv_ok = masked.windows(2).all(|w| w[0] == w[1]);

    let g = generate_power_law(3000, 8.0, 2.1, 11).unwrap();
    let with = |t: usize| EngineConfig { threads: t, ..cfg(Scheme::Gg, 0.5, 0.3, 3, 40, 9) };
    let same = |a: Vec<u64>, b: Vec<u64>| a == b;
    let pr = pagerank_spec(0.85, 1e-7).unwrap();
    let bp: BeliefPropagation = bp_spec(2, 0.8, 1e-6).unwrap();
    let sssp = sssp_spec(0, g.num_vertices()).unwrap();
    let threads_ok = same(
        bits_f64(&run(&g, &pr, &with(1)).unwrap().final_properties),
        bits_f64(&run(&g, &pr, &with(8)).unwrap().final_properties),
    ) && same(
        bits_f64(&run(&g, &sssp, &with(1)).unwrap().final_properties),
        bits_f64(&run(&g, &sssp, &with(8)).unwrap().final_properties),
    ) && run(&g, &wcc_spec(), &with(1)).unwrap().final_properties
        == run(&g, &wcc_spec(), &with(8)).unwrap().final_properties
        && run(&g, &bp, &with(1)).unwrap().final_properties == run(&g, &bp, &with(8)).unwrap().final_properties;
    verdict(
        csv_ok && threads_ok,
        format!("3 CLI sweeps identical outside wall-time columns: {csv_ok}; 1 vs 8 threads identical for all algorithms: {threads_ok}"),
    )
}

type Criterion<'a> = (&'a str, Box<dyn Fn() -> Verdict + 'a>);

fn main() {
    let (source, g) = benchmark_graph();
    let criteria: Vec<Criterion> = vec![
        ("exactness gate", Box::new(criterion_1)),
        ("oracle equivalence", Box::new(criterion_2)),
        ("dumbbell recovery", Box::new(criterion_3)),
        ("sigma monotonicity", Box::new(|| criterion_4(&g, &source))),
        ("theta trade-off", Box::new(|| criterion_5(&g, &source))),
        ("gg between sp and sms", Box::new(|| criterion_6(&g, &source))),
        ("wcc gg equals sms", Box::new(criterion_7)),
        ("metric suite", Box::new(criterion_8)),
        ("work reduction at 90-95% accuracy", Box::new(|| criterion_9(&g, &source))),
        ("determinism", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| verdict(false, format!("panicked: {:?}", e.downcast_ref::<String>())));
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {:>2} {name}: {} ({:.2}s)",
            i + 1,
            v.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!v.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
