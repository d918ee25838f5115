#![allow(dead_code)]

//! Reference computations written against the definitions, sharing no code
//! with the library beyond the hypergraph container.

use hyperspec::hypergraph::{generate, Family};
use hyperspec::UniformHypergraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `x^T A x^{r-1}` as `r · Σ_e Π_{v∈e} x_v`.
pub fn form_a(h: &UniformHypergraph, x: &[f64]) -> f64 {
    h.r() as f64
        * h.edges()
            .iter()
            .map(|e| e.iter().map(|&v| x[v]).product::<f64>())
            .sum::<f64>()
}

/// `x^T Q x^{r-1}` as `Σ_i d_i x_i^r + x^T A x^{r-1}`.
pub fn form_q(h: &UniformHypergraph, x: &[f64]) -> f64 {
    let r = h.r() as i32;
    let mut d = vec![0.0; h.n()];
    for e in h.edges() {
        for &v in e {
            d[v] += 1.0;
        }
    }
    d.iter().zip(x).map(|(d, xi)| d * xi.powi(r)).sum::<f64>() + form_a(h, x)
}

fn gradient(h: &UniformHypergraph, x: &[f64], signless: bool) -> Vec<f64> {
    let r = h.r();
    let mut g = vec![0.0; h.n()];
    for e in h.edges() {
        for (k, &i) in e.iter().enumerate() {
            let others: f64 = e
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != k)
                .map(|(_, &v)| x[v])
                .product();
            g[i] += r as f64 * others;
            if signless {
                g[i] += r as f64 * x[i].powi(r as i32 - 1);
            }
        }
    }
    g
}

fn normalized(mut x: Vec<f64>, r: usize) -> Option<Vec<f64>> {
    let s: f64 = x.iter().map(|v| v.abs().powi(r as i32)).sum::<f64>();
    if s <= 0.0 {
        return None;
    }
    let s = s.powf(1.0 / r as f64);
    x.iter_mut().for_each(|v| *v /= s);
    Some(x)
}

fn ascend(h: &UniformHypergraph, start: Vec<f64>, signless: bool) -> f64 {
    let r = h.r();
    let value = |x: &[f64]| if signless { form_q(h, x) } else { form_a(h, x) };
    let Some(mut x) = normalized(start, r) else {
        return 0.0;
    };
    let mut f = value(&x);
    let mut step = 1.0;
    for _ in 0..100_000 {
        let g = gradient(h, &x, signless);
        let normal: Vec<f64> = x.iter().map(|v| v.powi(r as i32 - 1)).collect();
        let nn: f64 = normal.iter().map(|v| v * v).sum();
        let gn: f64 = g.iter().zip(&normal).map(|(a, b)| a * b).sum();
        let mut p: Vec<f64> = g
            .iter()
            .zip(&normal)
            .map(|(a, b)| a - gn / nn * b)
            .collect();
        // Directions that would push a zero coordinate negative are inert.
        for (pi, xi) in p.iter_mut().zip(&x) {
            if *xi <= 0.0 && *pi < 0.0 {
                *pi = 0.0;
            }
        }
        let pp: f64 = p.iter().map(|v| v * v).sum();
        if pp.sqrt() < 1e-10 {
            break;
        }
        let mut t = step * 2.0;
        loop {
            let trial: Vec<f64> = x
                .iter()
                .zip(&p)
                .map(|(a, b)| (a + t * b).max(0.0))
                .collect();
            if let Some(y) = normalized(trial, r) {
                let fy = value(&y);
                if fy > f && fy >= f + 1e-4 * t * pp {
                    x = y;
                    f = fy;
                    step = t;
                    break;
                }
            }
            t *= 0.5;
            if t < 1e-18 {
                return f;
            }
        }
    }
    f
}

/// Largest Rayleigh value found by projected gradient ascent over the
/// nonnegative unit r-sphere from `starts` random points.
pub fn oracle_rho(h: &UniformHypergraph, signless: bool, starts: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..starts)
        .map(|_| {
            let x0: Vec<f64> = (0..h.n()).map(|_| rng.random_range(0.05..1.0)).collect();
            ascend(h, x0, signless)
        })
        .fold(0.0, f64::max)
}

pub fn degrees(h: &UniformHypergraph) -> Vec<f64> {
    let mut d = vec![0.0; h.n()];
    for e in h.edges() {
        for &v in e {
            d[v] += 1.0;
        }
    }
    d
}

/// `((1/n) Σ d_i^{r/(r-1)})^{(r-1)/r}`
pub fn power_mean(h: &UniformHypergraph) -> f64 {
    let r = h.r() as f64;
    let n = h.n() as f64;
    let s: f64 = degrees(h).iter().map(|d| d.powf(r / (r - 1.0))).sum();
    (s / n).powf((r - 1.0) / r)
}

pub fn average_degree(h: &UniformHypergraph) -> f64 {
    degrees(h).iter().sum::<f64>() / h.n() as f64
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

/// Random nonnegative vector of unit r-norm.
pub fn random_unit(rng: &mut ChaCha8Rng, n: usize, r: usize) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        if let Some(x) = normalized(x, r) {
            return x;
        }
    }
}

/// `{i, i+1, …, i+r-1} mod n` for every i; regular of degree r.
pub fn tight_cycle(n: usize, r: usize) -> UniformHypergraph {
    let edges = (0..n)
        .map(|i| (0..r).map(|k| (i + k) % n).collect())
        .collect();
    UniformHypergraph::new(n, r, edges).unwrap()
}

fn shuffled(h: &UniformHypergraph, rng: &mut ChaCha8Rng) -> UniformHypergraph {
    let mut perm: Vec<usize> = (0..h.n()).collect();
    for i in (1..perm.len()).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    h.relabel(&perm).unwrap()
}

/// 200 connected hypergraphs with r ∈ {3, 4}, n ≤ 12, m ≤ 20: every tenth
/// is a relabeled regular one, the rest are uniform random draws.
pub fn sweep(seed: u64) -> Vec<UniformHypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let regular = [
        tight_cycle(5, 3),
        tight_cycle(7, 3),
        tight_cycle(12, 3),
        tight_cycle(6, 4),
        tight_cycle(9, 4),
        tight_cycle(11, 4),
        generate(Family::Complete { n: 5, r: 3 }).unwrap(),
        generate(Family::Complete { n: 6, r: 3 }).unwrap(),
        generate(Family::Complete { n: 5, r: 4 }).unwrap(),
        generate(Family::Complete { n: 6, r: 4 }).unwrap(),
    ];
    let mut out = Vec::with_capacity(200);
    while out.len() < 200 {
        if out.len() % 10 == 9 {
            let h = &regular[(out.len() / 10) % regular.len()];
            out.push(shuffled(h, &mut rng));
            continue;
        }
        let r = rng.random_range(3..=4usize);
        let n = rng.random_range(r + 1..=12usize);
        let min_m = (n - 1).div_ceil(r - 1);
        let max_m = 20.min(binomial(n as u64, r as u64) as usize);
        if min_m > max_m {
            continue;
        }
        let m = rng.random_range(min_m..=max_m);
        let h = generate(Family::Random {
            n,
            r,
            m,
            seed: rng.random(),
        })
        .unwrap();
        if h.is_connected() {
            out.push(h);
        }
    }
    out
}

/// Every connected r = 3 hypergraph on n ≤ 5 labeled vertices with at most
/// four edges.
pub fn small_connected_3_graphs() -> Vec<UniformHypergraph> {
    let mut out = Vec::new();
    for n in 3..=5usize {
        let triples: Vec<Vec<usize>> = (0..n)
            .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| vec![a, b, c])))
            .collect();
        let t = triples.len();
        for mask in 1u32..(1 << t) {
            if mask.count_ones() > 4 {
                continue;
            }
            let edges = (0..t)
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| triples[k].clone())
                .collect();
            let h = UniformHypergraph::new(n, 3, edges).unwrap();
            if h.is_connected() {
                out.push(h);
            }
        }
    }
    out
}
