//! Independent reference implementations used by the integration tests.
//! None of these touch the engine; they work from raw edge lists.

#![allow(dead_code)]

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` uniformly random directed edges without self-loops.
pub fn random_edges(n: usize, m: usize, seed: u64) -> Vec<(u32, u32)> {
    let mut r = rng(seed);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let s = r.gen_range(0..n as u32);
        let d = r.gen_range(0..n as u32);
        if s != d {
            edges.push((s, d));
        }
    }
    edges
}

/// Weights that are multiples of 1/4 in [0.25, 10], so path sums are exact.
pub fn quarter_weights(m: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    (0..m).map(|_| r.gen_range(1..=40) as f64 / 4.0).collect()
}

/// Random tree on `n` vertices, each edge in a random direction.
pub fn random_tree(n: usize, seed: u64) -> Vec<(u32, u32)> {
    let mut r = rng(seed);
    (1..n as u32)
        .map(|v| {
            let p = r.gen_range(0..v);
            if r.gen_bool(0.5) {
                (p, v)
            } else {
                (v, p)
            }
        })
        .collect()
}

/// Dense power iteration of `x = (1-d)/N + d * A^T D^-1 x`, where rank
/// leaving a sink is lost.
pub fn dense_pagerank(n: usize, edges: &[(u32, u32)], d: f64, iterations: usize) -> Vec<f64> {
    let mut out = vec![0usize; n];
    for &(s, _) in edges {
        out[s as usize] += 1;
    }
    let mut m = vec![vec![0.0f64; n]; n];
    for &(s, t) in edges {
        m[t as usize][s as usize] += 1.0 / out[s as usize] as f64;
    }
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..iterations {
        x = (0..n)
            .map(|i| (1.0 - d) / n as f64 + d * m[i].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>())
            .collect();
    }
    x
}

#[derive(PartialEq)]
struct Dist(f64);

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

pub fn dijkstra(n: usize, edges: &[(u32, u32)], weights: &[f64], source: u32) -> Vec<f64> {
    let mut adj = vec![Vec::new(); n];
    for (&(s, d), &w) in edges.iter().zip(weights) {
        adj[s as usize].push((d as usize, w));
    }
    let mut dist = vec![f64::INFINITY; n];
    dist[source as usize] = 0.0;
    let mut heap = BinaryHeap::from([Reverse((Dist(0.0), source as usize))]);
    while let Some(Reverse((Dist(du), u))) = heap.pop() {
        if du > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = du + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((Dist(nd), v)));
            }
        }
    }
    dist
}

/// Weak components labelled by their smallest vertex id.
pub fn union_find_labels(n: usize, edges: &[(u32, u32)]) -> Vec<u32> {
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
        if ra != rb {
            // keep the smaller id as root
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    }
    (0..n).map(|v| find(&mut parent, v) as u32).collect()
}

fn potential(states: usize, c: f64, i: usize, j: usize) -> f64 {
    if i == j {
        c
    } else {
        (1.0 - c) / (states - 1) as f64
    }
}

fn normalized(mut v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v
}

/// Exact marginals of the pairwise model on a tree by an upward and a
/// downward message pass from root 0.
pub fn tree_marginals(priors: &[Vec<f64>], edges: &[(u32, u32)], coupling: f64) -> Vec<Vec<f64>> {
    let n = priors.len();
    let s = priors[0].len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a as usize].push(b as usize);
        adj[b as usize].push(a as usize);
    }
    // preorder with parents
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = u;
                order.push(v);
            }
        }
        i += 1;
    }
    assert_eq!(order.len(), n, "tree must be connected");

    let send = |from_belief: &[f64]| -> Vec<f64> {
        normalized(
            (0..s)
                .map(|xi| (0..s).map(|xj| potential(s, coupling, xi, xj) * from_belief[xj]).sum())
                .collect(),
        )
    };

    // up[v]: message v -> parent(v)
    let mut up = vec![vec![1.0; s]; n];
    for &v in order.iter().rev() {
        let mut b = priors[v].clone();
        for &c in &adj[v] {
            if c != parent[v] {
                b.iter_mut().zip(&up[c]).for_each(|(x, m)| *x *= m);
            }
        }
        up[v] = send(&b);
    }
    // down[v]: message parent(v) -> v
    let mut down = vec![vec![1.0; s]; n];
    for &u in &order {
        for &v in &adj[u] {
            if v == parent[u] {
                continue;
            }
            let mut b = priors[u].clone();
            if u != 0 {
                b.iter_mut().zip(&down[u]).for_each(|(x, m)| *x *= m);
            }
            for &c in &adj[u] {
                if c != parent[u] && c != v {
                    b.iter_mut().zip(&up[c]).for_each(|(x, m)| *x *= m);
                }
            }
            down[v] = send(&b);
        }
    }
    (0..n)
        .map(|v| {
            let mut b = priors[v].clone();
            if v != 0 {
                b.iter_mut().zip(&down[v]).for_each(|(x, m)| *x *= m);
            }
            for &c in &adj[v] {
                if c != parent[v] {
                    b.iter_mut().zip(&up[c]).for_each(|(x, m)| *x *= m);
                }
            }
            normalized(b)
        })
        .collect()
}

/// Marginals by summing the joint over every assignment. Exponential; for
/// tiny graphs only.
pub fn brute_force_marginals(priors: &[Vec<f64>], edges: &[(u32, u32)], coupling: f64) -> Vec<Vec<f64>> {
    let n = priors.len();
    let s = priors[0].len();
    let mut marg = vec![vec![0.0; s]; n];
    let mut x = vec![0usize; n];
    let total = s.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for xi in x.iter_mut() {
            *xi = c % s;
            c /= s;
        }
        let mut p: f64 = (0..n).map(|v| priors[v][x[v]]).product();
        for &(a, b) in edges {
            p *= potential(s, coupling, x[a as usize], x[b as usize]);
        }
        for v in 0..n {
            marg[v][x[v]] += p;
        }
    }
    marg.into_iter().map(normalized).collect()
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// CSV text with the wall-time derived columns (speedup, wall_ms_mean,
/// wall_ms_ref) replaced by `*`.
pub fn mask_wall_columns(csv_text: &str) -> String {
    let mut out = csv::Writer::from_writer(Vec::new());
    for record in csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(csv_text.as_bytes())
        .records()
    {
        let mut fields: Vec<String> = record.expect("valid csv").iter().map(str::to_string).collect();
        if fields[0] != "scheme" {
            for i in [9, 11, 12] {
                fields[i] = "*".into();
            }
        }
        out.write_record(&fields).unwrap();
    }
    String::from_utf8(out.into_inner().unwrap()).unwrap()
}
