//! Exhaustive ground-truth engines for small inputs. Nothing here uses the
//! flow or pebble machinery; everything is plain enumeration.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, VertexSet};
use crate::matroid::CountMatroidOracle;
use crate::params::{SparsityCertificate, Verdict};
use crate::rational::{self, Rational};

const SPARSE_LIMIT: usize = 22;
const PARTITION_LIMIT: usize = 20;
const AXIOM_LIMIT: usize = 12;
const CANONICAL_LIMIT: usize = 8;
const CHUNK_BITS: usize = 14;

fn neighbour_masks(g: &Graph) -> Vec<u32> {
    let mut nbr = vec![0u32; g.vertex_count()];
    for &(u, v) in g.edges() {
        nbr[u] |= 1 << v;
        nbr[v] |= 1 << u;
    }
    nbr
}

/// Best `(q*e - p*|U|, |U|, mask)` over vertex sets spanning an edge within
/// Gray-code positions `range`. Larger score wins; ties prefer fewer
/// vertices, then the smaller mask.
fn scan(nbr: &[u32], p: i64, q: i64, range: std::ops::Range<u64>) -> Option<(i64, u32, u32)> {
    let gray = |i: u64| (i ^ (i >> 1)) as u32;
    let mut mask = gray(range.start);
    let mut edges: i64 = (0..nbr.len())
        .filter(|&v| mask & (1 << v) != 0)
        .map(|v| i64::from((nbr[v] & mask).count_ones()))
        .sum::<i64>()
        / 2;
    let mut best: Option<(i64, u32, u32)> = None;
    for i in range.clone() {
        if i != range.start {
            let v = (i.trailing_zeros()) as usize;
            let bit = 1u32 << v;
            let delta = i64::from((nbr[v] & mask & !bit).count_ones());
            if mask & bit != 0 {
                mask &= !bit;
                edges -= delta;
            } else {
                mask |= bit;
                edges += delta;
            }
        }
        if edges == 0 {
            continue;
        }
        let size = mask.count_ones();
        let score = q * edges - p * i64::from(size);
        let better = match best {
            None => true,
            Some((s, sz, m)) => score > s || (score == s && (size < sz || (size == sz && mask < m))),
        };
        if better {
            best = Some((score, size, mask));
        }
    }
    best
}

fn pick(x: Option<(i64, u32, u32)>, y: Option<(i64, u32, u32)>) -> Option<(i64, u32, u32)> {
    match (x, y) {
        (None, other) | (other, None) => other,
        (Some(a), Some(b)) => {
            let b_wins = b.0 > a.0 || (b.0 == a.0 && (b.1 < a.1 || (b.1 == a.1 && b.2 < a.2)));
            Some(if b_wins { b } else { a })
        }
    }
}

/// Exhaustive `(a, b)`-sparsity over every vertex set spanning at least one
/// edge. Parameters are not screened for pathology.
pub fn brute_sparse(g: &Graph, a: Rational, b: Rational) -> Result<SparsityCertificate> {
    let n = g.vertex_count();
    if n > SPARSE_LIMIT {
        return Err(Error::TooLarge {
            what: "vertices",
            actual: n,
            limit: SPARSE_LIMIT,
        });
    }
    let nbr = neighbour_masks(g);
    let (p, q) = (*a.numer(), *a.denom());
    let total = 1u64 << n;
    let best = if n > CHUNK_BITS {
        let chunk = 1u64 << CHUNK_BITS;
        (0..total / chunk)
            .into_par_iter()
            .map(|c| scan(&nbr, p, q, c * chunk..(c + 1) * chunk))
            .reduce(|| None, pick)
    } else {
        scan(&nbr, p, q, 0..total)
    };
    Ok(match best {
        None => SparsityCertificate {
            verdict: Verdict::Sparse,
            a,
            b,
            witness: VertexSet::empty(),
            max_violation: None,
            min_potential: None,
        },
        Some((score, _, mask)) => {
            let value = Rational::new(score, q);
            let violation = value - b;
            SparsityCertificate {
                verdict: if violation <= Rational::from_integer(0) {
                    Verdict::Sparse
                } else {
                    Verdict::NotSparse
                },
                a,
                b,
                witness: (0..n).filter(|&v| mask & (1 << v) != 0).collect(),
                max_violation: Some(violation),
                min_potential: Some(-value),
            }
        }
    })
}

/// Incremental side of the partition search: adjacency restricted to the
/// edges assigned so far.
struct SearchSide {
    p: i64,
    q: i64,
    r: i64,
    adj: Vec<u32>,
}

impl SearchSide {
    fn new(n: usize, a: Rational, b: Rational) -> Self {
        let d = rational::common_denominator(&[a, b]);
        SearchSide {
            p: (a * d).to_integer(),
            q: d,
            r: (b * d).to_integer(),
            adj: vec![0; n],
        }
    }

    fn toggle(&mut self, u: usize, v: usize) {
        self.adj[u] ^= 1 << v;
        self.adj[v] ^= 1 << u;
    }

    fn component(&self, seed: u32) -> u32 {
        let mut component = seed;
        let mut frontier = seed;
        while frontier != 0 {
            let w = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[w] & !component;
            component |= fresh;
            frontier |= fresh;
        }
        component
    }

    /// Scaled `q e(U) - p |U|` over the sets `base ∪ S` with `S ⊆ free`
    /// spanning at least one edge. `None` if there is no such set.
    fn best_within(&self, base: u32, free: u32) -> Option<i64> {
        let others: Vec<u32> = (0..32).filter(|&w| free & (1 << w) != 0).map(|w| 1 << w).collect();
        (0u32..1 << others.len())
            .filter_map(|bits| {
                let mut mask = base;
                for (i, &w) in others.iter().enumerate() {
                    if bits & (1 << i) != 0 {
                        mask |= w;
                    }
                }
                let twice: u32 = (0..32)
                    .filter(|&w| mask & (1 << w) != 0)
                    .map(|w| (self.adj[w] & mask).count_ones())
                    .sum();
                let edges = i64::from(twice / 2);
                (edges > 0).then(|| self.q * edges - self.p * i64::from(mask.count_ones()))
            })
            .max()
    }

    /// Assuming the side was sparse before `uv` was added, it stays sparse
    /// iff no vertex set containing both `u` and `v` violates the bound.
    /// For `b <= 0` a violator may be taken connected; otherwise other
    /// components can add their best positive surplus.
    fn still_sparse(&self, u: usize, v: usize) -> bool {
        let base = (1u32 << u) | (1u32 << v);
        let own = self.component(base);
        let mut best = self.best_within(base, own & !base).expect("uv spans an edge");
        if self.r > 0 {
            let mut rest: u32 = (0..self.adj.len())
                .filter(|&w| self.adj[w] != 0)
                .fold(0, |m, w| m | 1 << w)
                & !own;
            while rest != 0 {
                let c = self.component(1 << rest.trailing_zeros());
                rest &= !c;
                best += self.best_within(0, c).map_or(0, |x| x.max(0));
            }
        }
        best <= self.r
    }
}

/// Exhaustive search for `E(g) = E1 ⊔ E2` with `E1` `(a1, b1)`-sparse and
/// `E2` `(a2, b2)`-sparse. Returns a witness when one exists.
pub fn brute_partition_exists(
    g: &Graph,
    a1: Rational,
    b1: Rational,
    a2: Rational,
    b2: Rational,
) -> Result<Option<(EdgeSet, EdgeSet)>> {
    if g.edge_count() > PARTITION_LIMIT {
        return Err(Error::TooLarge {
            what: "edges",
            actual: g.edge_count(),
            limit: PARTITION_LIMIT,
        });
    }
    let n = g.vertex_count();
    if n > 32 {
        return Err(Error::TooLarge {
            what: "vertices",
            actual: n,
            limit: 32,
        });
    }
    let mut sides = [SearchSide::new(n, a1, b1), SearchSide::new(n, a2, b2)];
    let mut colour = vec![0usize; g.edge_count()];
    if assign(g, 0, &mut sides, &mut colour) {
        let e1 = (0..g.edge_count()).filter(|&e| colour[e] == 0).collect();
        let e2 = (0..g.edge_count()).filter(|&e| colour[e] == 1).collect();
        Ok(Some((e1, e2)))
    } else {
        Ok(None)
    }
}

fn assign(g: &Graph, e: usize, sides: &mut [SearchSide; 2], colour: &mut [usize]) -> bool {
    if e == g.edge_count() {
        return true;
    }
    let (u, v) = g.endpoints(e);
    for side in 0..2 {
        sides[side].toggle(u, v);
        if sides[side].still_sparse(u, v) {
            colour[e] = side;
            if assign(g, e + 1, sides, colour) {
                return true;
            }
        }
        sides[side].toggle(u, v);
    }
    false
}

/// Anything that can say whether a subset of `0..ground_size()` is independent.
pub trait IndependenceOracle: Sync {
    fn ground_size(&self) -> usize;
    fn independent(&self, set: &EdgeSet) -> bool;
}

impl IndependenceOracle for CountMatroidOracle<'_> {
    fn ground_size(&self) -> usize {
        self.host().edge_count()
    }

    fn independent(&self, set: &EdgeSet) -> bool {
        self.is_independent(set).expect("subset of the host's edges")
    }
}

fn set_of(mask: u32, size: usize) -> EdgeSet {
    (0..size).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Checks the matroid axioms over the whole power set of the ground set:
/// the empty set is independent, independence is hereditary, and every
/// independent `I` can be augmented from any independent `J` with
/// `|J| = |I| + 1`.
pub fn check_matroid_axioms(o: &impl IndependenceOracle) -> Result<bool> {
    let size = o.ground_size();
    if size > AXIOM_LIMIT {
        return Err(Error::TooLarge {
            what: "edges",
            actual: size,
            limit: AXIOM_LIMIT,
        });
    }
    let full = 1u32 << size;
    let independent: Vec<bool> = (0..full)
        .into_par_iter()
        .map(|mask| o.independent(&set_of(mask, size)))
        .collect();
    if !independent[0] {
        return Ok(false);
    }
    let hereditary = (0..full).all(|mask| {
        !independent[mask as usize]
            || (0..size).all(|i| mask & (1 << i) == 0 || independent[(mask & !(1 << i)) as usize])
    });
    if !hereditary {
        return Ok(false);
    }
    // ext[I] = elements x outside I with I + x independent.
    let ext: Vec<u32> = (0..full)
        .map(|mask| {
            (0..size)
                .filter(|&i| mask & (1 << i) == 0 && independent[(mask | 1 << i) as usize])
                .fold(0u32, |acc, i| acc | 1 << i)
        })
        .collect();
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); size + 1];
    for mask in 0..full {
        if independent[mask as usize] {
            by_size[mask.count_ones() as usize].push(mask);
        }
    }
    let exchange = (0..size).all(|k| {
        by_size[k].par_iter().all(|&i| {
            by_size[k + 1]
                .iter()
                .all(|&j| (j & !i) & ext[i as usize] != 0)
        })
    });
    Ok(exchange)
}

/// Canonical labelling by individualisation and refinement.
struct Canon<'a> {
    n: usize,
    adj: &'a [u16],
    best: Option<(u64, Vec<usize>)>,
}

impl Canon<'_> {
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let mut changed = false;
            let mut s = 0;
            while s < cells.len() {
                let splitter: u16 = cells[s].iter().fold(0, |acc, &v| acc | 1 << v);
                let mut next = Vec::with_capacity(cells.len());
                for cell in &cells {
                    if cell.len() == 1 {
                        next.push(cell.clone());
                        continue;
                    }
                    let mut keyed: Vec<(u32, usize)> = cell
                        .iter()
                        .map(|&v| ((self.adj[v] & splitter).count_ones(), v))
                        .collect();
                    keyed.sort_by_key(|&(count, _)| count);
                    let mut start = 0;
                    for i in 1..=keyed.len() {
                        if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                            next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                            start = i;
                        }
                    }
                }
                if next.len() != cells.len() {
                    changed = true;
                    cells = next;
                    break;
                }
                s += 1;
            }
            if !changed {
                return cells;
            }
        }
    }

    fn code(&self, order: &[usize]) -> u64 {
        let mut code = 0u64;
        for j in 1..self.n {
            for i in 0..j {
                code = (code << 1) | u64::from(self.adj[order[i]] & (1 << order[j]) != 0);
            }
        }
        code
    }

    fn search(&mut self, cells: Vec<Vec<usize>>) {
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let code = self.code(&order);
            if self.best.as_ref().is_none_or(|(b, _)| code > *b) {
                self.best = Some((code, order));
            }
            return;
        };
        for &v in &cells[target] {
            let mut split = cells.clone();
            let rest: Vec<usize> = cells[target].iter().copied().filter(|&w| w != v).collect();
            split[target] = vec![v];
            split.insert(target + 1, rest);
            self.search(split);
        }
    }
}

fn canonical_code(n: usize, adj: &[u16]) -> (u64, Vec<usize>) {
    if n == 0 {
        return (0, Vec::new());
    }
    let mut canon = Canon { n, adj, best: None };
    canon.search(vec![(0..n).collect()]);
    canon.best.expect("at least one leaf")
}

/// Relabels `g` canonically: isomorphic graphs map to identical graphs.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let n = g.vertex_count();
    if n > 16 {
        return Err(Error::TooLarge {
            what: "vertices",
            actual: n,
            limit: 16,
        });
    }
    let mut adj = vec![0u16; n];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let (_, order) = canonical_code(n, &adj);
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    Graph::new(n, g.edges().iter().map(|&(u, v)| (position[u], position[v])))
}

/// One representative of every isomorphism class of graphs on `n` vertices.
pub fn canonical_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > CANONICAL_LIMIT {
        return Err(Error::TooLarge {
            what: "vertices",
            actual: n,
            limit: CANONICAL_LIMIT,
        });
    }
    let mut level: Vec<Vec<u16>> = vec![Vec::new()];
    for order in 1..=n {
        let parent = order - 1;
        let found: HashSet<(u64, Vec<u16>)> = level
            .par_iter()
            .flat_map_iter(|adj| {
                (0u16..1 << parent).map(move |nbrs| {
                    let mut next = adj.clone();
                    next.push(nbrs);
                    for (v, row) in next.iter_mut().enumerate().take(parent) {
                        if nbrs & (1 << v) != 0 {
                            *row |= 1 << parent;
                        }
                    }
                    let (code, order_vec) = canonical_code(order, &next);
                    let mut canonical = vec![0u16; order];
                    for (i, &v) in order_vec.iter().enumerate() {
                        for (j, &w) in order_vec.iter().enumerate() {
                            if next[v] & (1 << w) != 0 {
                                canonical[i] |= 1 << j;
                            }
                        }
                    }
                    (code, canonical)
                })
            })
            .collect();
        let mut sorted: Vec<(u64, Vec<u16>)> = found.into_iter().collect();
        sorted.sort();
        level = sorted.into_iter().map(|(_, adj)| adj).collect();
    }
    Ok(level
        .into_iter()
        .map(|adj| {
            let edges = (0..n).flat_map(|j| {
                let row = adj[j];
                (0..j).filter(move |&i| row & (1 << i) != 0).map(move |i| (i, j))
            });
            Graph::new(n, edges).expect("canonical graphs are simple")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant, complete_graph};
    use crate::matroid::make_oracle;
    use crate::rational::integer;

    #[test]
    fn cycle_and_complete_graph() {
        let c4 = circulant(4, 1).unwrap();
        let cert = brute_sparse(&c4, integer(1), integer(0)).unwrap();
        assert!(cert.is_sparse());
        assert_eq!(cert.max_violation, Some(integer(0)));
        let k4 = complete_graph(4).unwrap();
        assert!(!brute_sparse(&k4, integer(1), integer(-1)).unwrap().is_sparse());
    }

    #[test]
    fn small_partitions() {
        let c5 = circulant(5, 1).unwrap();
        let (e1, e2) = brute_partition_exists(&c5, integer(1), integer(-1), integer(1), integer(-1))
            .unwrap()
            .unwrap();
        assert_eq!(e1.len() + e2.len(), 5);
        let k4 = complete_graph(4).unwrap();
        assert!(brute_partition_exists(&k4, integer(1), integer(-1), integer(1), integer(-2))
            .unwrap()
            .is_none());
    }

    #[test]
    fn positive_offset_sees_disconnected_violations() {
        // Two copies of K4 - e each have surplus e - v = 1, within (1, 2)
        // together. Completing one copy raises its surplus to 2 on its own
        // component but to 3 on the union.
        let mut side = SearchSide::new(8, integer(1), integer(2));
        for base in [0, 4] {
            for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)] {
                side.toggle(base + u, base + v);
            }
        }
        side.toggle(2, 3);
        assert!(!side.still_sparse(2, 3));
        let mut tighter = SearchSide::new(8, integer(1), integer(3));
        tighter.adj = side.adj.clone();
        assert!(tighter.still_sparse(2, 3));

        let twice = crate::graph::gen_counterexample_disconnected(1, 1, 5, 2).unwrap();
        assert!(brute_partition_exists(&twice, integer(1), integer(-1), integer(1), integer(1))
            .unwrap()
            .is_none());
    }

    #[test]
    fn graphic_matroid_passes() {
        let k4 = complete_graph(4).unwrap();
        assert!(check_matroid_axioms(&make_oracle(&k4, 1, -1).unwrap()).unwrap());
    }

    #[test]
    fn graph_counts_match_the_known_sequence() {
        let expected = [1, 1, 2, 4, 11, 34, 156];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(canonical_graphs(n).unwrap().len(), count, "n = {n}");
        }
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        let a = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)]).unwrap();
        let b = Graph::new(5, [(4, 3), (3, 2), (2, 1), (1, 0), (4, 2)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let c = circulant(5, 1).unwrap();
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&c).unwrap());
    }
}
