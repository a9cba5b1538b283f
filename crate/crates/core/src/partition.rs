//! Two-way partitions of a graph's edges into independent sets of two count
//! matroids, by matroid-partition augmentation.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::matroid::{make_oracle, CountMatroidOracle, Engine};
use crate::params::SparsityParams;
use crate::pebble::PebbleGame;
use crate::rational::{self, Rational};
use crate::sparsity::{self, slack};

/// Either a valid 2-colouring of the edges or a certificate that none exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PartitionResult {
    Success {
        e1: EdgeSet,
        e2: EdgeSet,
    },
    /// `r1 + r2 < |B|` where `ri` is the rank of `B` in the i-th matroid.
    Deficiency {
        #[serde(rename = "B")]
        b: EdgeSet,
        r1: usize,
        r2: usize,
    },
}

impl PartitionResult {
    pub fn is_success(&self) -> bool {
        matches!(self, PartitionResult::Success { .. })
    }
}

/// Sufficient conditions under which a sparse graph always splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hypothesis {
    /// `-a1 <= b1 <= 0` and `-a2 <= b2 <= 0`.
    A,
    /// `b1 >= 0` and `b2 >= 0`.
    B,
}

pub fn hypothesis(a1: i64, b1: i64, a2: i64, b2: i64) -> Option<Hypothesis> {
    if -a1 <= b1 && b1 <= 0 && -a2 <= b2 && b2 <= 0 {
        Some(Hypothesis::A)
    } else if b1 >= 0 && b2 >= 0 {
        Some(Hypothesis::B)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct UnionOptions {
    pub engine: Engine,
    /// Shrink a deficiency certificate until no single edge can be dropped.
    pub minimize: bool,
}

/// One side of the partition during augmentation.
trait Side {
    fn contains(&self, x: usize) -> bool;
    /// `None` if `x` can join; otherwise the members of its circuit.
    fn probe(&mut self, x: usize) -> Option<Vec<usize>>;
    fn insert(&mut self, x: usize) -> bool;
    fn remove(&mut self, x: usize);
}

struct PebbleSide(PebbleGame);

impl Side for PebbleSide {
    fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }
    fn probe(&mut self, x: usize) -> Option<Vec<usize>> {
        self.0.probe(x)
    }
    fn insert(&mut self, x: usize) -> bool {
        self.0.try_insert(x)
    }
    fn remove(&mut self, x: usize) {
        self.0.remove(x)
    }
}

/// Exact side backed by min-cut probes, with answers cached per member set.
struct FlowSide<'g> {
    oracle: CountMatroidOracle<'g>,
    member: Vec<bool>,
    fingerprint: u64,
    cache: HashMap<(u64, usize), Option<Vec<usize>>>,
}

fn zobrist(id: usize) -> u64 {
    // splitmix64
    let mut z = (id as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl FlowSide<'_> {
    fn toggle(&mut self, x: usize) {
        self.member[x] = !self.member[x];
        self.fingerprint ^= zobrist(x);
    }
}

impl Side for FlowSide<'_> {
    fn contains(&self, x: usize) -> bool {
        self.member[x]
    }
    fn probe(&mut self, x: usize) -> Option<Vec<usize>> {
        let key = (self.fingerprint, x);
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let answer = self.oracle.exact_probe(&self.member, x);
        self.cache.insert(key, answer.clone());
        answer
    }
    fn insert(&mut self, x: usize) -> bool {
        if self.oracle.exact_probe(&self.member, x).is_some() {
            return false;
        }
        self.toggle(x);
        true
    }
    fn remove(&mut self, x: usize) {
        self.toggle(x);
    }
}

fn make_side<'g>(oracle: CountMatroidOracle<'g>, engine: Engine) -> Result<Box<dyn Side + 'g>> {
    Ok(match oracle.resolve(engine)? {
        Engine::Pebble => Box::new(PebbleSide(oracle.new_game())),
        _ => Box::new(FlowSide {
            oracle,
            member: vec![false; oracle.host().edge_count()],
            fingerprint: 0,
            cache: HashMap::new(),
        }),
    })
}

fn same_host(g: &Graph, oracle: &CountMatroidOracle<'_>) -> bool {
    std::ptr::eq(g, oracle.host()) || g == oracle.host()
}

/// Partitions `E(g)` into independent sets of `m1` and `m2`, or certifies
/// that no such partition exists.
pub fn matroid_union_partition(
    g: &Graph,
    m1: &CountMatroidOracle<'_>,
    m2: &CountMatroidOracle<'_>,
) -> Result<PartitionResult> {
    matroid_union_partition_with(g, m1, m2, UnionOptions::default())
}

pub fn matroid_union_partition_with(
    g: &Graph,
    m1: &CountMatroidOracle<'_>,
    m2: &CountMatroidOracle<'_>,
    options: UnionOptions,
) -> Result<PartitionResult> {
    matroid_union_extend(g, m1, m2, &EdgeSet::empty(), &EdgeSet::empty(), options)
}

/// Like [`matroid_union_partition_with`], starting from the partial
/// partition `(start1, start2)` instead of two empty sides. The remaining
/// edges are added by ascending id.
pub fn matroid_union_extend(
    g: &Graph,
    m1: &CountMatroidOracle<'_>,
    m2: &CountMatroidOracle<'_>,
    start1: &EdgeSet,
    start2: &EdgeSet,
    options: UnionOptions,
) -> Result<PartitionResult> {
    if !same_host(g, m1) || !same_host(g, m2) {
        return Err(Error::HostMismatch);
    }
    start1.validate(g)?;
    start2.validate(g)?;
    if !start1.is_disjoint(start2) {
        return Err(Error::Domain("starting sides overlap".into()));
    }
    let mut sides = [make_side(*m1, options.engine)?, make_side(*m2, options.engine)?];
    for (side, start) in sides.iter_mut().zip([start1, start2]) {
        for x in start.iter() {
            if !side.insert(x) {
                return Err(Error::Domain(format!(
                    "starting side is not independent (edge {x})"
                )));
            }
        }
    }

    for x in 0..g.edge_count() {
        if sides[0].contains(x) || sides[1].contains(x) {
            continue;
        }
        if let Some(reached) = augment(&mut sides, x)? {
            return deficiency(g, m1, m2, EdgeSet::from_ids(reached), options.minimize);
        }
    }

    let e1: EdgeSet = (0..g.edge_count()).filter(|&x| sides[0].contains(x)).collect();
    let e2: EdgeSet = (0..g.edge_count()).filter(|&x| sides[1].contains(x)).collect();
    if !m1.is_independent(&e1)? || !m2.is_independent(&e2)? {
        return Err(Error::InvariantViolation(
            "augmentation produced a dependent side".into(),
        ));
    }
    Ok(PartitionResult::Success { e1, e2 })
}

/// Places `x` by a shortest exchange path. Returns the reachable elements
/// when no path exists.
fn augment(sides: &mut [Box<dyn Side + '_>; 2], x: usize) -> Result<Option<Vec<usize>>> {
    // parent[y] = (element that displaced y, side that y leaves)
    let mut parent: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut order = vec![x];
    let mut queue = VecDeque::from([x]);
    let mut sink = None;
    'bfs: while let Some(y) = queue.pop_front() {
        for (s, side) in sides.iter_mut().enumerate() {
            if side.contains(y) {
                continue;
            }
            match side.probe(y) {
                None => {
                    sink = Some((y, s));
                    break 'bfs;
                }
                Some(circuit) => {
                    for z in circuit {
                        if z != x && !parent.contains_key(&z) {
                            parent.insert(z, (y, s));
                            order.push(z);
                            queue.push_back(z);
                        }
                    }
                }
            }
        }
    }
    let Some((mut y, mut s)) = sink else {
        return Ok(Some(order));
    };

    // Walk back: y enters side s; if y came from a side, its displacer enters there.
    let mut moves: Vec<(usize, usize, Option<usize>)> = Vec::new();
    loop {
        let from = if y == x { None } else { Some(parent[&y].1) };
        moves.push((y, s, from));
        match from {
            None => break,
            Some(side) => {
                s = side;
                y = parent[&y].0;
            }
        }
    }
    for &(y, _, from) in &moves {
        if let Some(side) = from {
            sides[side].remove(y);
        }
    }
    for &(y, to, _) in &moves {
        if !sides[to].insert(y) {
            return Err(Error::InvariantViolation(format!(
                "exchange along a shortest path left edge {y} dependent"
            )));
        }
    }
    Ok(None)
}

fn rank_sum(m1: &CountMatroidOracle<'_>, m2: &CountMatroidOracle<'_>, b: &EdgeSet) -> Result<(usize, usize)> {
    Ok((m1.rank(b)?, m2.rank(b)?))
}

fn deficiency(
    _g: &Graph,
    m1: &CountMatroidOracle<'_>,
    m2: &CountMatroidOracle<'_>,
    mut b: EdgeSet,
    minimize: bool,
) -> Result<PartitionResult> {
    let (mut r1, mut r2) = rank_sum(m1, m2, &b)?;
    if r1 + r2 >= b.len() {
        return Err(Error::InvariantViolation(format!(
            "blocked set of {} edges has rank sum {}",
            b.len(),
            r1 + r2
        )));
    }
    if minimize {
        let mut changed = true;
        while changed {
            changed = false;
            for x in b.as_slice().to_vec() {
                let smaller: EdgeSet = b.iter().filter(|&y| y != x).collect();
                let (s1, s2) = rank_sum(m1, m2, &smaller)?;
                if s1 + s2 < smaller.len() {
                    b = smaller;
                    (r1, r2) = (s1, s2);
                    changed = true;
                }
            }
        }
    }
    Ok(PartitionResult::Deficiency { b, r1, r2 })
}

/// Splits a certified `(a1 + a2, b1 + b2)`-sparse graph into an
/// `(a1, b1)`-sparse and an `(a2, b2)`-sparse part. Under hypothesis
/// [`Hypothesis::A`] or [`Hypothesis::B`] a deficiency is an invariant
/// violation; otherwise it is a legitimate answer.
pub fn partition_sparse(g: &Graph, a1: i64, b1: i64, a2: i64, b2: i64) -> Result<PartitionResult> {
    partition_sparse_with(g, a1, b1, a2, b2, UnionOptions::default())
}

pub fn partition_sparse_with(
    g: &Graph,
    a1: i64,
    b1: i64,
    a2: i64,
    b2: i64,
    options: UnionOptions,
) -> Result<PartitionResult> {
    let m1 = make_oracle(g, a1, b1)?;
    let m2 = make_oracle(g, a2, b2)?;
    let total = SparsityParams::integral(a1 + a2, b1 + b2)?;
    if !sparsity::sparse_verdict(g.vertex_count(), g.edges(), total) {
        return Err(Error::NotSparse(Box::new(sparsity::certify(g, total))));
    }
    let result = matroid_union_partition_with(g, &m1, &m2, options)?;
    if !result.is_success() && hypothesis(a1, b1, a2, b2).is_some() {
        return Err(Error::InvariantViolation(format!(
            "a ({}, {})-sparse graph failed to split into ({a1}, {b1}) and ({a2}, {b2}) parts",
            a1 + a2,
            b1 + b2
        )));
    }
    Ok(result)
}

/// Splits a certified `(k + eps, 0)`-sparse graph into a forest (first side)
/// and a `(k, 1 - f)`-sparse graph, `f = slack(k, eps)`.
pub fn partition_forest_plus(g: &Graph, k: i64, eps: Rational) -> Result<PartitionResult> {
    let f = slack(k, eps)?;
    let m = Rational::from_integer(k) + eps;
    let params = SparsityParams::new(m, Rational::from_integer(0))?;
    if !sparsity::check_sparse(g, params)? {
        return Err(Error::NotSparse(Box::new(sparsity::certify(g, params))));
    }
    let forest = make_oracle(g, 1, -1)?;
    let rest = make_oracle(g, k, 1 - f)?;
    let result = matroid_union_partition(g, &forest, &rest)?;
    if !result.is_success() {
        return Err(Error::InvariantViolation(format!(
            "a ({}, 0)-sparse graph did not split into a forest and a ({k}, {})-sparse graph",
            rational::format_rational(&m),
            1 - f
        )));
    }
    Ok(result)
}
