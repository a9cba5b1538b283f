//! Edge-swap refinements of forest partitions: removing triangles from a
//! pseudoforest side, and repairing dense `(2k+1)`-vertex sets.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_forest, DisjointSets, EdgeSet, Graph, VertexSet};
use crate::params::SparsityParams;
use crate::partition::PartitionResult;
use crate::sparsity;

/// `E(host) = F ⊔ R` with `F` acyclic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestPartition {
    #[serde(rename = "F")]
    pub f: EdgeSet,
    #[serde(rename = "R")]
    pub r: EdgeSet,
}

impl ForestPartition {
    pub fn new(g: &Graph, f: EdgeSet, r: EdgeSet) -> Result<Self> {
        f.validate(g)?;
        r.validate(g)?;
        if !f.is_disjoint(&r) || f.len() + r.len() != g.edge_count() {
            return Err(Error::Domain("F and R do not partition the edge set".into()));
        }
        if !is_forest(g, &f) {
            return Err(Error::Domain("F contains a cycle".into()));
        }
        Ok(ForestPartition { f, r })
    }

    /// Takes the first side of a successful partition as the forest.
    pub fn from_result(g: &Graph, result: &PartitionResult) -> Result<Self> {
        match result {
            PartitionResult::Success { e1, e2 } => Self::new(g, e1.clone(), e2.clone()),
            PartitionResult::Deficiency { .. } => {
                Err(Error::Domain("cannot refine a deficiency certificate".into()))
            }
        }
    }
}

/// Mutable working copy: membership masks plus the forest's components.
struct Work<'g> {
    g: &'g Graph,
    in_f: Vec<bool>,
}

impl<'g> Work<'g> {
    fn new(g: &'g Graph, p: &ForestPartition) -> Self {
        Work {
            g,
            in_f: p.f.to_mask(g.edge_count()),
        }
    }

    fn finish(&self) -> ForestPartition {
        let f = EdgeSet::from_mask(&self.in_f);
        let r = (0..self.g.edge_count()).filter(|&e| !self.in_f[e]).collect();
        ForestPartition { f, r }
    }

    fn r_edges(&self) -> Vec<usize> {
        (0..self.g.edge_count()).filter(|&e| !self.in_f[e]).collect()
    }

    fn forest_components(&self) -> DisjointSets {
        let mut dsu = DisjointSets::new(self.g.vertex_count());
        for (e, &(u, v)) in self.g.edges().iter().enumerate() {
            if self.in_f[e] {
                dsu.union(u, v);
            }
        }
        dsu
    }

    /// Edge ids of the `F`-path from `from` to `to`, in order from `from`.
    fn forest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let n = self.g.vertex_count();
        let mut via = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(w) = queue.pop_front() {
            if w == to {
                break;
            }
            for &(z, e) in self.g.neighbors(w) {
                if self.in_f[e] && !seen[z] {
                    seen[z] = true;
                    via[z] = e;
                    queue.push_back(z);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = Vec::new();
        let mut w = to;
        while w != from {
            let e = via[w];
            path.push(e);
            let (a, b) = self.g.endpoints(e);
            w = if a == w { b } else { a };
        }
        path.reverse();
        Some(path)
    }
}

/// Sorted `(x, y, z)` triangles of the edge set `r`, lexicographic order.
fn triangles(g: &Graph, in_r: &dyn Fn(usize) -> bool) -> Vec<[usize; 3]> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if in_r(e) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    adj.iter_mut().for_each(|a| a.sort_unstable());
    let mut out = Vec::new();
    for x in 0..n {
        for &y in adj[x].iter().filter(|&&y| y > x) {
            for &z in adj[y].iter().filter(|&&z| z > y) {
                if adj[x].binary_search(&z).is_ok() {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// Pseudoforest test: no component has more edges than vertices.
fn is_pseudoforest(g: &Graph, in_r: &dyn Fn(usize) -> bool) -> bool {
    let n = g.vertex_count();
    let mut dsu = DisjointSets::new(n);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if in_r(e) {
            dsu.union(u, v);
        }
    }
    let mut vertices = vec![0usize; n];
    let mut edges = vec![0usize; n];
    for v in 0..n {
        vertices[dsu.find(v)] += 1;
    }
    for (e, &(u, _)) in g.edges().iter().enumerate() {
        if in_r(e) {
            edges[dsu.find(u)] += 1;
        }
    }
    (0..n).all(|c| edges[c] <= vertices[c])
}

fn spanning_sparse(g: &Graph, edges: &[usize], a: i64, b: i64) -> bool {
    let ends: Vec<(usize, usize)> = edges.iter().map(|&e| g.endpoints(e)).collect();
    sparsity::sparse_verdict(
        g.vertex_count(),
        &ends,
        SparsityParams::integral(a, b).expect("a >= 1"),
    )
}

/// One outer iteration of [`eliminate_triangles_traced`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleStep {
    pub triangle: [usize; 3],
    /// The triangle edge that left `R`.
    pub moved: usize,
    /// The forest edge that entered `R`, if a swap was needed.
    pub swapped_in: Option<usize>,
    pub triangles_before: usize,
    pub triangles_after: usize,
}

/// Rearranges a forest/pseudoforest partition of a `(2, -1)`-sparse graph so
/// that the pseudoforest side has no triangles.
pub fn eliminate_triangles(g: &Graph, p: &ForestPartition) -> Result<ForestPartition> {
    eliminate_triangles_traced(g, p, false).map(|(q, _)| q)
}

/// As [`eliminate_triangles`], also returning one record per iteration.
/// With `instrumented` set, every iteration re-checks that `F` is acyclic,
/// `R` is `(1, 0)`-sparse, and the triangle count dropped.
pub fn eliminate_triangles_traced(
    g: &Graph,
    p: &ForestPartition,
    instrumented: bool,
) -> Result<(ForestPartition, Vec<TriangleStep>)> {
    let p = ForestPartition::new(g, p.f.clone(), p.r.clone())?;
    if !sparsity::check_sparse(g, SparsityParams::integral(2, -1)?)? {
        return Err(Error::Domain("host is not (2, -1)-sparse".into()));
    }
    if !spanning_sparse(g, p.r.as_slice(), 1, 0) {
        return Err(Error::Domain("R is not a pseudoforest".into()));
    }

    let mut work = Work::new(g, &p);
    let mut steps = Vec::new();
    loop {
        let current = {
            let in_f = &work.in_f;
            triangles(g, &|e| !in_f[e])
        };
        let Some(&triangle) = current.first() else {
            break;
        };
        let step = triangle_step(&mut work, triangle, current.len())?;
        if instrumented {
            let f = EdgeSet::from_mask(&work.in_f);
            if !is_forest(g, &f) {
                return Err(Error::InvariantViolation("F acquired a cycle".into()));
            }
            if !spanning_sparse(g, &work.r_edges(), 1, 0) {
                return Err(Error::InvariantViolation("R stopped being a pseudoforest".into()));
            }
            if step.triangles_after >= step.triangles_before {
                return Err(Error::InvariantViolation(
                    "triangle count did not decrease".into(),
                ));
            }
        }
        steps.push(step);
    }
    Ok((work.finish(), steps))
}

fn triangle_step(work: &mut Work<'_>, triangle: [usize; 3], before: usize) -> Result<TriangleStep> {
    let g = work.g;
    let mut components = work.forest_components();
    for &v in &triangle {
        let mut ends = triangle.iter().copied().filter(|&w| w != v);
        let (p, q) = (ends.next().unwrap(), ends.next().unwrap());
        let e_v = g.edge_id(p, q).expect("triangle edge");
        if components.find(p) != components.find(q) {
            work.in_f[e_v] = true;
            let in_f = &work.in_f;
            let after = triangles(g, &|e| !in_f[e]).len();
            return Ok(TriangleStep {
                triangle,
                moved: e_v,
                swapped_in: None,
                triangles_before: before,
                triangles_after: after,
            });
        }
        let path = work
            .forest_path(p, q)
            .ok_or_else(|| Error::InvariantViolation("forest components disagree".into()))?;
        for e in path {
            let in_f = &work.in_f;
            let in_r = |x: usize| (x == e) || (x != e_v && !in_f[x]);
            if !is_pseudoforest(g, &in_r) {
                continue;
            }
            let after = triangles(g, &in_r).len();
            if after < before {
                work.in_f[e] = false;
                work.in_f[e_v] = true;
                return Ok(TriangleStep {
                    triangle,
                    moved: e_v,
                    swapped_in: Some(e),
                    triangles_before: before,
                    triangles_after: after,
                });
            }
        }
    }
    Err(Error::InvariantViolation(format!(
        "no swap removes the triangle {triangle:?}"
    )))
}

/// `(2k+1)`-vertex sets `U` with `k|U| - e(R[U]) = s - 1`, in lexicographic order.
pub fn find_bad_sets(g: &Graph, r: &EdgeSet, k: usize, s: usize) -> Result<Vec<VertexSet>> {
    r.validate(g)?;
    if k < 1 || s < 1 {
        return Err(Error::Domain(format!("need k >= 1 and s >= 1, got k = {k}, s = {s}")));
    }
    let n = g.vertex_count();
    let size = 2 * k + 1;
    let allowed_missing = s - 1;
    let words = n.div_ceil(64);
    let mut adj = vec![vec![0u64; words]; n];
    let mut degree = vec![0usize; n];
    for id in r.iter() {
        let (u, v) = g.endpoints(id);
        adj[u][v / 64] |= 1 << (v % 64);
        adj[v][u / 64] |= 1 << (u % 64);
        degree[u] += 1;
        degree[v] += 1;
    }
    // Inside a bad set every vertex misses at most s - 1 of the other 2k.
    let threshold = (2 * k).saturating_sub(allowed_missing);
    let candidates: Vec<usize> = (0..n).filter(|&v| degree[v] >= threshold).collect();
    if candidates.len() < size {
        return Ok(Vec::new());
    }
    let search = Search {
        adj: &adj,
        candidates: &candidates,
        size,
        allowed_missing,
    };
    let found: Vec<Vec<VertexSet>> = (0..candidates.len())
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            search.extend(&mut vec![candidates[first]], first + 1, 0, &mut out);
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

struct Search<'a> {
    adj: &'a [Vec<u64>],
    candidates: &'a [usize],
    size: usize,
    allowed_missing: usize,
}

impl Search<'_> {
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v / 64] & (1 << (v % 64)) != 0
    }

    fn extend(&self, chosen: &mut Vec<usize>, next: usize, missing: usize, out: &mut Vec<VertexSet>) {
        if chosen.len() == self.size {
            if missing == self.allowed_missing {
                out.push(VertexSet::from_indices(chosen.iter().copied()));
            }
            return;
        }
        let remaining = self.size - chosen.len();
        for i in next..=self.candidates.len() - remaining {
            let v = self.candidates[i];
            let extra = chosen.iter().filter(|&&u| !self.adjacent(u, v)).count();
            if missing + extra > self.allowed_missing {
                continue;
            }
            chosen.push(v);
            self.extend(chosen, i + 1, missing + extra, out);
            chosen.pop();
        }
    }
}

/// One iteration of [`brooks_refine_traced`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrooksStep {
    pub repaired: VertexSet,
    /// The `R` edge moved into `F`.
    pub moved: usize,
    /// The forest edge moved into `R`, if a swap was needed.
    pub swapped_in: Option<usize>,
    pub bad_before: usize,
    pub bad_after: usize,
}

/// Largest host for the exhaustive potential check in instrumented mode.
const EXHAUSTIVE_CHECK_LIMIT: usize = 10;

/// Rearranges a forest partition of a `(k+1, -s)`-sparse graph so that the
/// `(k, 1-s)`-sparse side has at most `k(2k+1) - s` edges on every
/// `(2k+1)`-vertex set.
pub fn brooks_refine(g: &Graph, p: &ForestPartition, k: usize, s: usize) -> Result<ForestPartition> {
    brooks_refine_traced(g, p, k, s, false).map(|(q, _)| q)
}

/// As [`brooks_refine`], also returning one record per iteration. With
/// `instrumented` set each iteration checks that the bad family shrinks to a
/// subfamily avoiding every repaired set, that `F` stays acyclic and `R`
/// stays `(k, 1-s)`-sparse, and (for at most ten vertices) that every vertex
/// set whose potential dropped still has potential at least `s`.
pub fn brooks_refine_traced(
    g: &Graph,
    p: &ForestPartition,
    k: usize,
    s: usize,
    instrumented: bool,
) -> Result<(ForestPartition, Vec<BrooksStep>)> {
    let p = ForestPartition::new(g, p.f.clone(), p.r.clone())?;
    if s < 1 || s + 1 > k {
        return Err(Error::Domain(format!("need 1 <= s <= k - 1, got k = {k}, s = {s}")));
    }
    let (ki, si) = (k as i64, s as i64);
    if !sparsity::check_sparse(g, SparsityParams::integral(ki + 1, -si)?)? {
        return Err(Error::Domain(format!("host is not ({}, -{s})-sparse", k + 1)));
    }
    if !spanning_sparse(g, p.r.as_slice(), ki, 1 - si) {
        return Err(Error::Domain(format!("R is not ({k}, {})-sparse", 1 - si)));
    }

    let mut work = Work::new(g, &p);
    let mut steps = Vec::new();
    let mut repaired: HashSet<VertexSet> = HashSet::new();
    let mut bad = find_bad_sets(g, &p.r, k, s)?;
    while let Some(u) = bad.first().cloned() {
        let old_r = work.r_edges();
        let (moved, swapped_in) = brooks_step(&mut work, &u)?;
        let r = EdgeSet::from_ids(work.r_edges());
        let next = find_bad_sets(g, &r, k, s)?;
        if instrumented {
            repaired.insert(u.clone());
            let old: HashSet<&VertexSet> = bad.iter().collect();
            if next.iter().any(|w| !old.contains(w) || repaired.contains(w)) {
                return Err(Error::InvariantViolation(
                    "bad family did not shrink to a subfamily".into(),
                ));
            }
            if !is_forest(g, &EdgeSet::from_mask(&work.in_f)) {
                return Err(Error::InvariantViolation("F acquired a cycle".into()));
            }
            if !spanning_sparse(g, r.as_slice(), ki, 1 - si) {
                return Err(Error::InvariantViolation(format!(
                    "R stopped being ({k}, {})-sparse",
                    1 - si
                )));
            }
            if g.vertex_count() <= EXHAUSTIVE_CHECK_LIMIT {
                check_potential_drops(g, &old_r, r.as_slice(), ki, si)?;
            }
        }
        steps.push(BrooksStep {
            repaired: u,
            moved,
            swapped_in,
            bad_before: bad.len(),
            bad_after: next.len(),
        });
        bad = next;
    }
    Ok((work.finish(), steps))
}

fn brooks_step(work: &mut Work<'_>, u: &VertexSet) -> Result<(usize, Option<usize>)> {
    let g = work.g;
    let inside = u.to_mask(g.vertex_count());
    let mut touches_f = vec![false; g.vertex_count()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if work.in_f[e] && inside[a] && inside[b] {
            touches_f[a] = true;
            touches_f[b] = true;
        }
    }
    let r_edge_at = |y: usize| {
        g.neighbors(y)
            .iter()
            .filter(|&&(z, e)| inside[z] && !work.in_f[e])
            .map(|&(_, e)| e)
            .min()
    };
    let (y, e) = u
        .iter()
        .filter(|&y| !touches_f[y])
        .find_map(|y| r_edge_at(y).map(|e| (y, e)))
        .ok_or_else(|| {
            Error::InvariantViolation(format!("no vertex of {:?} is free of F", u.as_slice()))
        })?;
    let (a, b) = g.endpoints(e);
    let x = if a == y { b } else { a };
    match work.forest_path(y, x) {
        None => {
            work.in_f[e] = true;
            Ok((e, None))
        }
        Some(path) => {
            let f = path[0];
            work.in_f[f] = false;
            work.in_f[e] = true;
            Ok((e, Some(f)))
        }
    }
}

/// Every vertex set whose `R`-potential dropped must still have potential at least `s`.
fn check_potential_drops(g: &Graph, old_r: &[usize], new_r: &[usize], k: i64, s: i64) -> Result<()> {
    let n = g.vertex_count();
    let masks = |edges: &[usize]| -> Vec<u32> {
        edges
            .iter()
            .map(|&e| {
                let (u, v) = g.endpoints(e);
                (1u32 << u) | (1u32 << v)
            })
            .collect()
    };
    let (old, new) = (masks(old_r), masks(new_r));
    for w in 1u32..(1 << n) {
        let count = |list: &[u32]| list.iter().filter(|&&m| m & w == m).count() as i64;
        let size = i64::from(w.count_ones());
        let before = k * size - count(&old);
        let after = k * size - count(&new);
        if after < before && after < s {
            return Err(Error::InvariantViolation(format!(
                "vertex set {w:#b} dropped to potential {after} < {s}"
            )));
        }
    }
    Ok(())
}
