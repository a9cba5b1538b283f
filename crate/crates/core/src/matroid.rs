//! Count matroids: the `(a, b)`-sparse edge subsets of a host graph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::ClosureSolver;
use crate::graph::{EdgeSet, Graph, VertexSet};
use crate::params::SparsityParams;
use crate::pebble::PebbleGame;
use crate::sparsity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidityClass {
    /// `-2a <= b <= 0`.
    Lorea,
    /// `b > 0`.
    WhiteWhiteley,
}

/// Which algorithm answers independence queries during augmentation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Engine {
    /// The pebble game where it applies (`-2a < b <= 0`), flows elsewhere.
    #[default]
    Auto,
    /// Always the pebble game; only valid for `-2a < b <= 0`.
    Pebble,
    /// Always the min-cut engine.
    Flow,
}

/// Independence and rank oracle for the count matroid `I_{a,b}` on a host's edges.
#[derive(Debug, Clone, Copy)]
pub struct CountMatroidOracle<'g> {
    host: &'g Graph,
    a: i64,
    b: i64,
}

/// Builds the oracle, rejecting parameters outside `a >= 1`, `b >= -2a`.
pub fn make_oracle(host: &Graph, a: i64, b: i64) -> Result<CountMatroidOracle<'_>> {
    if a < 1 || b < -2 * a {
        return Err(Error::MatroidRegime { a, b });
    }
    Ok(CountMatroidOracle { host, a, b })
}

impl<'g> CountMatroidOracle<'g> {
    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn params(&self) -> SparsityParams {
        SparsityParams::integral(self.a, self.b).expect("a >= 1")
    }

    pub fn validity_class(&self) -> ValidityClass {
        if self.b > 0 {
            ValidityClass::WhiteWhiteley
        } else {
            ValidityClass::Lorea
        }
    }

    /// Whether the pebble game decides this matroid.
    pub(crate) fn pebble_ready(&self) -> bool {
        self.b <= 0 && -self.b < 2 * self.a
    }

    pub(crate) fn resolve(&self, engine: Engine) -> Result<Engine> {
        match engine {
            Engine::Auto if self.pebble_ready() => Ok(Engine::Pebble),
            Engine::Auto => Ok(Engine::Flow),
            Engine::Pebble if !self.pebble_ready() => Err(Error::Domain(format!(
                "the pebble game does not cover a = {}, b = {}",
                self.a, self.b
            ))),
            other => Ok(other),
        }
    }

    pub(crate) fn new_game(&self) -> PebbleGame {
        PebbleGame::new(
            self.host.vertex_count(),
            self.host.edges(),
            self.a as u32,
            (-self.b) as u32,
        )
    }

    fn endpoints(&self, s: &EdgeSet) -> Vec<(usize, usize)> {
        s.iter().map(|id| self.host.endpoints(id)).collect()
    }

    /// Whether `(V(s), s)` is `(a, b)`-sparse. The empty set is independent.
    pub fn is_independent(&self, s: &EdgeSet) -> Result<bool> {
        s.validate(self.host)?;
        if s.is_empty() {
            return Ok(true);
        }
        if 2 * self.a + self.b < 1 {
            // b = -2a: a single edge already has e = 1 > 2a + b.
            return Ok(false);
        }
        Ok(sparsity::sparse_verdict(
            self.host.vertex_count(),
            &self.endpoints(s),
            self.params(),
        ))
    }

    /// Circuit test for `x` against the independent set marked in `member`:
    /// `None` if `member + x` is independent, otherwise the members that
    /// form the fundamental circuit with `x`.
    pub(crate) fn exact_probe(&self, member: &[bool], x: usize) -> Option<Vec<usize>> {
        let ids: Vec<usize> = (0..member.len()).filter(|&i| member[i]).collect();
        let mut ends: Vec<(usize, usize)> = ids.iter().map(|&i| self.host.endpoints(i)).collect();
        let (u, v) = self.host.endpoints(x);
        ends.push((u, v));
        let mut solver = ClosureSolver::new(self.host.vertex_count(), &ends, self.a, 1);
        if solver.solve(&[u, v]) <= self.b {
            return None;
        }
        let side = solver.min_side();
        Some(
            ids.into_iter()
                .filter(|&i| {
                    let (p, q) = self.host.endpoints(i);
                    side[p] && side[q]
                })
                .collect(),
        )
    }

    /// Size of a largest independent subset of `s`.
    pub fn rank(&self, s: &EdgeSet) -> Result<usize> {
        Ok(self.max_independent_subset(s)?.len())
    }

    pub fn rank_with(&self, s: &EdgeSet, engine: Engine) -> Result<usize> {
        Ok(self.max_independent_subset_with(s, engine)?.len())
    }

    /// Greedy basis of `s`, scanning edges by ascending id.
    pub fn max_independent_subset(&self, s: &EdgeSet) -> Result<EdgeSet> {
        self.max_independent_subset_with(s, Engine::Auto)
    }

    pub fn max_independent_subset_with(&self, s: &EdgeSet, engine: Engine) -> Result<EdgeSet> {
        s.validate(self.host)?;
        match self.resolve(engine)? {
            Engine::Pebble => {
                let mut game = self.new_game();
                Ok(s.iter().filter(|&x| game.try_insert(x)).collect())
            }
            _ => {
                let mut member = vec![false; self.host.edge_count()];
                let mut basis = Vec::new();
                for x in s.iter() {
                    if self.exact_probe(&member, x).is_none() {
                        member[x] = true;
                        basis.push(x);
                    }
                }
                Ok(EdgeSet::from_ids(basis))
            }
        }
    }

    /// Vertex sets of the maximal tight subgraphs of `(V(s), s)`, for an
    /// independent `s` and `-a <= b <= 0`. These sets are pairwise disjoint.
    pub fn find_tight_components(&self, s: &EdgeSet) -> Result<Vec<VertexSet>> {
        if self.b > 0 || self.b < -self.a {
            return Err(Error::Domain(format!(
                "tight components are disjoint only for -a <= b <= 0, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        if !self.is_independent(s)? {
            return Err(Error::Domain("edge set is not independent".into()));
        }
        let n = self.host.vertex_count();
        let ends = self.endpoints(s);
        let mut touched = vec![false; n];
        for &(u, v) in &ends {
            touched[u] = true;
            touched[v] = true;
        }
        let mut solver = ClosureSolver::new(n, &ends, self.a, 1);
        let mut assigned = vec![false; n];
        let mut components = Vec::new();
        for w in 0..n {
            if !touched[w] || assigned[w] {
                continue;
            }
            if solver.solve(&[w]) != self.b {
                continue;
            }
            let side: Vec<bool> = solver
                .max_side()
                .into_iter()
                .zip(&touched)
                .map(|(s, &t)| s && t)
                .collect();
            for (v, &inside) in side.iter().enumerate() {
                assigned[v] |= inside;
            }
            components.push(VertexSet::from_mask(&side));
        }
        Ok(components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;

    #[test]
    fn regime_guard() {
        let g = complete_graph(4).unwrap();
        assert!(make_oracle(&g, 1, -3).is_err());
        assert!(make_oracle(&g, 0, 0).is_err());
        assert_eq!(make_oracle(&g, 1, -1).unwrap().validity_class(), ValidityClass::Lorea);
        assert_eq!(make_oracle(&g, 1, 1).unwrap().validity_class(), ValidityClass::WhiteWhiteley);
    }

    #[test]
    fn independence_and_rank_on_k4() {
        let g = complete_graph(4).unwrap();
        let forest = make_oracle(&g, 1, -1).unwrap();
        let star = EdgeSet::new(&g, [0, 1, 2]).unwrap();
        assert!(forest.is_independent(&star).unwrap());
        assert!(!forest.is_independent(&g.all_edges()).unwrap());
        assert_eq!(forest.rank(&g.all_edges()).unwrap(), 3);
        let pseudo = make_oracle(&g, 1, 0).unwrap();
        assert_eq!(pseudo.rank(&g.all_edges()).unwrap(), 4);
        assert_eq!(pseudo.rank(&EdgeSet::empty()).unwrap(), 0);
        assert!(forest.is_independent(&EdgeSet::new(&g, [5]).unwrap()).unwrap());
        assert!(forest.is_independent(&EdgeSet::from_ids([6])).is_err());
    }

    #[test]
    fn loops_when_b_is_minus_two_a() {
        let g = complete_graph(3).unwrap();
        let o = make_oracle(&g, 1, -2).unwrap();
        assert!(!o.is_independent(&EdgeSet::new(&g, [0]).unwrap()).unwrap());
        assert_eq!(o.rank(&g.all_edges()).unwrap(), 0);
    }

    #[test]
    fn engines_agree_on_rank() {
        let g = complete_graph(6).unwrap();
        for (a, b) in [(1, -1), (1, 0), (2, -3), (2, -2), (2, 0), (3, -5)] {
            let o = make_oracle(&g, a, b).unwrap();
            let all = g.all_edges();
            assert_eq!(
                o.max_independent_subset_with(&all, Engine::Pebble).unwrap(),
                o.max_independent_subset_with(&all, Engine::Flow).unwrap(),
                "a = {a}, b = {b}"
            );
        }
    }

    #[test]
    fn tight_components_of_forests() {
        let g = Graph::new(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let o = make_oracle(&g, 1, -1).unwrap();
        let comps = o.find_tight_components(&g.all_edges()).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].as_slice(), &[0, 1, 2]);
        assert_eq!(comps[1].as_slice(), &[3, 4, 5]);
        assert!(make_oracle(&g, 1, 1).unwrap().find_tight_components(&g.all_edges()).is_err());
    }
}
