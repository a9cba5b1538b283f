//! Seeded random `(m, 0)`-sparse instances and stage timings.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::decompose::decompose_ksw;
use crate::error::{Error, Result};
use crate::graph::{write_graph6, Graph};
use crate::partition::partition_forest_plus;
use crate::pebble::PebbleGame;
use crate::rational::{self, Rational};
use crate::sparsity;

/// A random `(m, 0)`-sparse graph on `n` vertices: all vertex pairs in a
/// seeded random order, each kept when the graph stays `(m, 0)`-sparse.
pub fn random_sparse_graph(n: usize, m: Rational, seed: u64) -> Result<Graph> {
    if m <= Rational::from_integer(0) {
        return Err(Error::Domain("m must be positive".into()));
    }
    let (p, q) = (*m.numer() as u32, *m.denom() as usize);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs.shuffle(&mut rng);
    // q * e(H) <= p * v(H) is (p, 0)-sparsity of the graph with every edge
    // repeated q times.
    let copies: Vec<(usize, usize)> = pairs
        .iter()
        .flat_map(|&pair| std::iter::repeat_n(pair, q))
        .collect();
    let mut game = PebbleGame::new(n, &copies, p, 0);
    let mut kept = Vec::new();
    for (i, &pair) in pairs.iter().enumerate() {
        let ids = i * q..(i + 1) * q;
        let mut inserted = Vec::new();
        for id in ids {
            if !game.try_insert(id) {
                break;
            }
            inserted.push(id);
        }
        if inserted.len() == q {
            kept.push(pair);
        } else {
            inserted.into_iter().for_each(|id| game.remove(id));
        }
    }
    Graph::new(n, kept)
}

/// Hex SHA-256 of the graph6 encoding.
pub fn instance_hash(g: &Graph) -> Result<String> {
    let digest = Sha256::digest(write_graph6(g)?.as_bytes());
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Decompose,
    Partition,
    Check,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "decompose" => Ok(Suite::Decompose),
            "partition" => Ok(Suite::Partition),
            "check" => Ok(Suite::Check),
            other => Err(Error::Domain(format!(
                "unknown bench suite {other:?} (expected decompose, partition or check)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub suite: String,
    pub n: usize,
    pub edges: usize,
    #[serde(with = "rational::serde_rational")]
    pub m: Rational,
    pub seed: u64,
    pub instance_hash: String,
    pub generate_seconds: f64,
    pub stages: Vec<(String, f64)>,
    pub total_seconds: f64,
}

pub fn run_bench(suite: Suite, n: usize, m: Rational, seed: u64) -> Result<BenchRow> {
    let start = Instant::now();
    let g = random_sparse_graph(n, m, seed)?;
    let generate_seconds = start.elapsed().as_secs_f64();
    let hash = instance_hash(&g)?;
    let k = rational::floor(&m);
    let eps = m - Rational::from_integer(k);
    let start = Instant::now();
    let stages = match suite {
        Suite::Decompose => decompose_ksw(&g, m)?
            .trace
            .stages
            .into_iter()
            .map(|s| (s.stage, s.seconds))
            .collect(),
        Suite::Partition => {
            partition_forest_plus(&g, k, eps)?;
            vec![("partition".to_string(), start.elapsed().as_secs_f64())]
        }
        Suite::Check => {
            sparsity::is_sparse(&g, crate::params::SparsityParams::new(m, Rational::from_integer(0))?)?;
            vec![("check".to_string(), start.elapsed().as_secs_f64())]
        }
    };
    let total_seconds = start.elapsed().as_secs_f64();
    Ok(BenchRow {
        suite: format!("{suite:?}").to_lowercase(),
        n,
        edges: g.edge_count(),
        m,
        seed,
        instance_hash: hash,
        generate_seconds,
        stages,
        total_seconds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::SparsityParams;
    use crate::rational::rational;

    #[test]
    fn generated_graphs_are_sparse_and_reproducible() {
        let m = rational(5, 2);
        let g = random_sparse_graph(30, m, 7).unwrap();
        let h = random_sparse_graph(30, m, 7).unwrap();
        assert_eq!(g, h);
        let params = SparsityParams::new(m, Rational::from_integer(0)).unwrap();
        assert!(sparsity::check_sparse(&g, params).unwrap());
        // Greedy insertion over all pairs ends maximal: no pair can be added.
        assert!(g.edge_count() >= 60);
        assert_ne!(instance_hash(&g).unwrap(), instance_hash(&random_sparse_graph(30, m, 8).unwrap()).unwrap());
    }

    #[test]
    fn unknown_suite() {
        assert!("nope".parse::<Suite>().is_err());
    }
}
