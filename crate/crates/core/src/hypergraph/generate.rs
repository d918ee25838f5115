use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::UniformHypergraph;
use crate::error::{Error, Result};

const MAX_GENERATED_EDGES: u128 = 5_000_000;

/// Built-in hypergraph families, written on the command line as `name:args`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// All r-subsets of n vertices.
    Complete { n: usize, r: usize },
    /// One edge on r vertices.
    SingleEdge { r: usize },
    /// `len` edges where consecutive edges share exactly one vertex.
    LoosePath { r: usize, len: usize },
    /// `m` distinct edges drawn uniformly without replacement.
    Random {
        n: usize,
        r: usize,
        m: usize,
        seed: u64,
    },
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

pub fn generate(family: Family) -> Result<UniformHypergraph> {
    match family {
        Family::Complete { n, r } => {
            check_uniformity(r)?;
            if n < r {
                return Err(Error::Infeasible(format!(
                    "complete needs n >= r, got n={n}, r={r}"
                )));
            }
            if binomial(n, r) > MAX_GENERATED_EDGES {
                return Err(Error::Capacity(format!(
                    "complete({n},{r}) has too many edges"
                )));
            }
            UniformHypergraph::new(n, r, (0..n).combinations(r).collect())
        }
        Family::SingleEdge { r } => {
            check_uniformity(r)?;
            UniformHypergraph::new(r, r, vec![(0..r).collect()])
        }
        Family::LoosePath { r, len } => {
            check_uniformity(r)?;
            if len == 0 {
                return Err(Error::Infeasible(
                    "loose path needs at least one edge".into(),
                ));
            }
            let n = len * (r - 1) + 1;
            let edges = (0..len)
                .map(|k| (k * (r - 1)..k * (r - 1) + r).collect())
                .collect();
            UniformHypergraph::new(n, r, edges)
        }
        Family::Random { n, r, m, seed } => random(n, r, m, seed),
    }
}

fn check_uniformity(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::Infeasible(format!(
            "uniformity must be at least 2, got {r}"
        )));
    }
    Ok(())
}

fn random(n: usize, r: usize, m: usize, seed: u64) -> Result<UniformHypergraph> {
    check_uniformity(r)?;
    if n < r {
        return Err(Error::Infeasible(format!(
            "random needs n >= r, got n={n}, r={r}"
        )));
    }
    let total = binomial(n, r);
    if m as u128 > total {
        return Err(Error::Infeasible(format!(
            "m={m} exceeds C({n},{r})={total}"
        )));
    }
    if m as u128 > MAX_GENERATED_EDGES {
        return Err(Error::Capacity(format!("m={m} edges requested")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<Vec<usize>> = if 2 * m as u128 <= total {
        // rejection sampling stays uniform over m-subsets and is fast when m is at most half
        let mut seen = HashSet::with_capacity(m);
        let mut edges = Vec::with_capacity(m);
        while edges.len() < m {
            let mut e = rand::seq::index::sample(&mut rng, n, r).into_vec();
            e.sort_unstable();
            if seen.insert(e.clone()) {
                edges.push(e);
            }
        }
        edges
    } else {
        let all: Vec<Vec<usize>> = (0..n).combinations(r).collect();
        rand::seq::index::sample(&mut rng, all.len(), m)
            .into_iter()
            .map(|k| all[k].clone())
            .collect()
    };
    UniformHypergraph::new(n, r, edges)
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = |msg: String| Error::Infeasible(format!("generator `{spec}`: {msg}"));
        let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
        let args: Vec<u64> = if args.trim().is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| {
                    a.trim()
                        .parse::<u64>()
                        .map_err(|_| bad(format!("`{a}` is not an integer")))
                })
                .collect::<Result<_>>()?
        };
        let want = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(bad(format!("expected {k} arguments, got {}", args.len())))
            }
        };
        let u = |x: u64| x as usize;
        match name.trim() {
            "complete" => {
                want(2)?;
                Ok(Family::Complete {
                    n: u(args[0]),
                    r: u(args[1]),
                })
            }
            "single_edge" => {
                want(1)?;
                Ok(Family::SingleEdge { r: u(args[0]) })
            }
            "loose_path" => {
                want(2)?;
                Ok(Family::LoosePath {
                    r: u(args[0]),
                    len: u(args[1]),
                })
            }
            "random" => {
                want(4)?;
                Ok(Family::Random {
                    n: u(args[0]),
                    r: u(args[1]),
                    m: u(args[2]),
                    seed: args[3],
                })
            }
            other => Err(bad(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Complete { n, r } => write!(f, "complete:{n},{r}"),
            Family::SingleEdge { r } => write!(f, "single_edge:{r}"),
            Family::LoosePath { r, len } => write!(f, "loose_path:{r},{len}"),
            Family::Random { n, r, m, seed } => write!(f, "random:{n},{r},{m},{seed}"),
        }
    }
}
