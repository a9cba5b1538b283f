//! Exact sparsity decisions, potentials and density indices.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flow::ClosureSolver;
use crate::graph::{Graph, VertexSet};
use crate::params::{SparsityCertificate, SparsityParams, Verdict};
use crate::rational::{self, Rational};

/// Below this many forced subproblems the sweep stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 48;
const M2_ENUMERATION_LIMIT: usize = 16;
const PAIR_ENUMERATION_LIMIT: usize = 20;

/// Scales `values` to integers over their common denominator.
fn scaled(values: &[Rational]) -> (Vec<i64>, i64) {
    let d = rational::common_denominator(values);
    let ints = values.iter().map(|v| (v * d).to_integer()).collect();
    (ints, d)
}

/// Evaluates every forced subproblem and returns the first index attaining
/// the maximum together with the value.
fn best_forced(solver: &ClosureSolver, forced: &[[usize; 2]], width: usize) -> (usize, i64) {
    let eval = |s: &mut ClosureSolver, (i, f): (usize, &[usize; 2])| (s.solve(&f[..width]), i);
    let (value, index) = if forced.len() >= PARALLEL_THRESHOLD {
        forced
            .par_iter()
            .enumerate()
            .map_init(|| solver.clone(), eval)
            .reduce(|| (i64::MIN, usize::MAX), pick_first_max)
    } else {
        let mut s = solver.clone();
        forced
            .iter()
            .enumerate()
            .map(|x| eval(&mut s, x))
            .fold((i64::MIN, usize::MAX), pick_first_max)
    };
    (index, value)
}

fn pick_first_max(x: (i64, usize), y: (i64, usize)) -> (i64, usize) {
    if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
        y
    } else {
        x
    }
}

/// `max q*e(U) - p*|U|` over vertex sets spanning at least one edge, with the
/// maximizer. Ties go to the first edge (by id) whose endpoints are forced,
/// then to the inclusion-minimal optimal set.
pub(crate) fn spanning_maximum(
    n: usize,
    edges: &[(usize, usize)],
    p: i64,
    q: i64,
) -> Option<(i64, Vec<bool>)> {
    if edges.is_empty() {
        return None;
    }
    let mut solver = ClosureSolver::new(n, edges, p, q);
    let free = solver.solve(&[]);
    if free > 0 {
        return Some((free, solver.min_side()));
    }
    let forced: Vec<[usize; 2]> = edges.iter().map(|&(u, v)| [u, v]).collect();
    let (index, value) = best_forced(&solver, &forced, 2);
    solver.solve(&forced[index]);
    Some((value, solver.min_side()))
}

/// `max q*e(U) - p*|U|` over nonempty vertex sets, with the maximizer.
pub(crate) fn nonempty_maximum(
    n: usize,
    edges: &[(usize, usize)],
    p: i64,
    q: i64,
) -> (i64, Vec<bool>) {
    let mut solver = ClosureSolver::new(n, edges, p, q);
    let free = solver.solve(&[]);
    if free > 0 {
        return (free, solver.min_side());
    }
    let forced: Vec<[usize; 2]> = (0..n).map(|v| [v, v]).collect();
    let (index, value) = best_forced(&solver, &forced, 1);
    solver.solve(&forced[index][..1]);
    (value, solver.min_side())
}

/// Whether some vertex set spanning an edge has `q*e(U) - p*|U| > r`.
pub(crate) fn violates(n: usize, edges: &[(usize, usize)], p: i64, q: i64, r: i64) -> bool {
    if edges.is_empty() {
        return false;
    }
    let mut solver = ClosureSolver::new(n, edges, p, q);
    let free = solver.solve(&[]);
    if free > r.max(0) {
        return true;
    }
    if r >= 0 {
        return false;
    }
    // Any nonempty edgeless set scores at most -p, so when r >= -p forcing a
    // single vertex is enough; otherwise force both ends of an edge.
    let forced: Vec<Vec<usize>> = if r >= -p {
        let mut touched = vec![false; n];
        for &(u, v) in edges {
            touched[u] = true;
            touched[v] = true;
        }
        (0..n).filter(|&v| touched[v]).map(|v| vec![v]).collect()
    } else {
        edges.iter().map(|&(u, v)| vec![u, v]).collect()
    };
    if forced.len() >= PARALLEL_THRESHOLD {
        forced
            .par_iter()
            .map_init(|| solver.clone(), |s, f| s.solve(f) > r)
            .any(|hit| hit)
    } else {
        forced.iter().any(|f| solver.solve(f) > r)
    }
}

/// `a|U| - e(G[U])` for a nonempty `U`.
pub fn potential(g: &Graph, u: &VertexSet, a: Rational) -> Result<Rational> {
    if u.is_empty() {
        return Err(Error::Domain("potential of the empty vertex set".into()));
    }
    if let Some(v) = u.iter().find(|&v| v >= g.vertex_count()) {
        return Err(Error::ForeignVertex {
            vertex: v,
            vertices: g.vertex_count(),
        });
    }
    Ok(a * Rational::from_integer(u.len() as i64)
        - Rational::from_integer(g.induced_edge_count(u) as i64))
}

/// Maximum of `e(G[U]) - a|U|` over nonempty `U`, with the inclusion-minimal
/// maximizer (ties between forced vertices go to the smallest index).
pub fn max_violation(g: &Graph, a: Rational) -> Result<(Rational, VertexSet)> {
    if g.vertex_count() == 0 {
        return Err(Error::Domain("max_violation needs at least one vertex".into()));
    }
    let (ints, q) = scaled(&[a]);
    let (value, side) = nonempty_maximum(g.vertex_count(), g.edges(), ints[0], q);
    Ok((Rational::new(value, q), VertexSet::from_mask(&side)))
}

/// Sparsity certificate without the pathological-parameter guard.
pub(crate) fn certify(g: &Graph, params: SparsityParams) -> SparsityCertificate {
    let (a, b) = (params.a(), params.b());
    let (ints, q) = scaled(&[a]);
    match spanning_maximum(g.vertex_count(), g.edges(), ints[0], q) {
        None => SparsityCertificate {
            verdict: Verdict::Sparse,
            a,
            b,
            witness: VertexSet::empty(),
            max_violation: None,
            min_potential: None,
        },
        Some((value, side)) => {
            let best = Rational::new(value, q);
            let violation = best - b;
            SparsityCertificate {
                verdict: if violation <= Rational::zero() {
                    Verdict::Sparse
                } else {
                    Verdict::NotSparse
                },
                a,
                b,
                witness: VertexSet::from_mask(&side),
                max_violation: Some(violation),
                min_potential: Some(-best),
            }
        }
    }
}

/// Decides `(a, b)`-sparsity: `e(H) <= a v(H) + b` for every subgraph `H`
/// with at least one edge.
pub fn is_sparse(g: &Graph, params: SparsityParams) -> Result<SparsityCertificate> {
    params.ensure_regular()?;
    Ok(certify(g, params))
}

/// Verdict only, with early exit. Skips certificate construction.
pub(crate) fn sparse_verdict(n: usize, edges: &[(usize, usize)], params: SparsityParams) -> bool {
    let (ints, d) = scaled(&[params.a(), params.b()]);
    !violates(n, edges, ints[0], d, ints[1])
}

/// Convenience wrapper over [`sparse_verdict`] for a whole graph.
pub fn check_sparse(g: &Graph, params: SparsityParams) -> Result<bool> {
    params.ensure_regular()?;
    Ok(sparse_verdict(g.vertex_count(), g.edges(), params))
}

/// Sparse and `e(G) = a v(G) + b`.
pub fn is_tight(g: &Graph, params: SparsityParams) -> Result<bool> {
    params.ensure_regular()?;
    let total = params.a() * Rational::from_integer(g.vertex_count() as i64) + params.b();
    if Rational::from_integer(g.edge_count() as i64) != total {
        return Ok(false);
    }
    Ok(sparse_verdict(g.vertex_count(), g.edges(), params))
}

/// `max e(J) / v(J)` over subgraphs `J`.
pub fn m_of(g: &Graph) -> Result<Rational> {
    if g.edge_count() == 0 {
        return Err(Error::Domain("density of an edgeless graph".into()));
    }
    let n = g.vertex_count();
    let mut lambda = Rational::new(g.edge_count() as i64, n as i64);
    let mut solver = ClosureSolver::new(n, g.edges(), *lambda.numer(), *lambda.denom());
    loop {
        if solver.solve(&[]) <= 0 {
            return Ok(lambda);
        }
        let side = solver.min_side();
        let size = side.iter().filter(|&&s| s).count() as i64;
        let edges = g.edges_within(&side).len() as i64;
        lambda = Rational::new(edges, size);
        solver = ClosureSolver::new(n, g.edges(), *lambda.numer(), *lambda.denom());
    }
}

/// `max (e(J) - 1) / (v(J) - 2)` over subgraphs `J` on at least three vertices.
pub fn m2_of(g: &Graph) -> Result<Rational> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::Domain(format!(
            "m2 needs a subgraph on at least 3 vertices, graph has {n}"
        )));
    }
    if g.edge_count() == 0 {
        return Ok(Rational::new(-1, n as i64 - 2));
    }
    if n <= M2_ENUMERATION_LIMIT {
        return Ok(m2_enumerate(g));
    }
    let whole = Rational::new(g.edge_count() as i64 - 1, n as i64 - 2);
    let mut lambda = whole;
    loop {
        let (p, q) = (*lambda.numer(), *lambda.denom());
        let (value, side) = spanning_maximum(n, g.edges(), p, q).expect("graph has edges");
        if value <= q - 2 * p {
            return Ok(lambda);
        }
        let size = side.iter().filter(|&&s| s).count() as i64;
        let edges = g.edges_within(&side).len() as i64;
        lambda = Rational::new(edges - 1, size - 2);
    }
}

fn neighbour_masks(g: &Graph) -> Vec<u32> {
    let mut masks = vec![0u32; g.vertex_count()];
    for &(u, v) in g.edges() {
        masks[u] |= 1 << v;
        masks[v] |= 1 << u;
    }
    masks
}

/// Edge counts of every induced subgraph, indexed by vertex bitmask.
fn induced_counts(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let nbr = neighbour_masks(g);
    let mut counts = vec![0u32; 1 << n];
    for mask in 1usize..1 << n {
        let top = usize::BITS - 1 - mask.leading_zeros();
        let rest = mask & !(1 << top);
        counts[mask] = counts[rest] + (nbr[top as usize] & rest as u32).count_ones();
    }
    counts
}

fn m2_enumerate(g: &Graph) -> Rational {
    let counts = induced_counts(g);
    counts
        .iter()
        .enumerate()
        .filter(|(mask, _)| mask.count_ones() >= 3)
        .map(|(mask, &e)| Rational::new(i64::from(e) - 1, i64::from(mask.count_ones()) - 2))
        .max()
        .expect("n >= 3")
}

/// `max e(J) / (v(J) - 2 + 1/m2(H2))` over subgraphs `J` of `H1` with at least one edge.
pub fn m2_pair(h1: &Graph, h2: &Graph) -> Result<Rational> {
    let m2 = m2_of(h2)?;
    if m2 <= Rational::zero() {
        return Err(Error::Domain(format!(
            "m2(h2) = {} is not positive",
            rational::format_rational(&m2)
        )));
    }
    let n = h1.vertex_count();
    if n > PAIR_ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            what: "vertices of h1",
            actual: n,
            limit: PAIR_ENUMERATION_LIMIT,
        });
    }
    if h1.edge_count() == 0 {
        return Err(Error::Domain("h1 has no edges".into()));
    }
    let offset = m2.recip() - Rational::from_integer(2);
    let counts = induced_counts(h1);
    Ok(counts
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(mask, &e)| {
            let den = Rational::from_integer(i64::from(mask.count_ones())) + offset;
            Rational::from_integer(i64::from(e)) / den
        })
        .max()
        .expect("h1 has an edge"))
}

/// The largest integer `f` such that every `(k + eps, 0)`-sparse graph is
/// `(k + 1, -f)`-sparse, by the four-case ceiling formula. The cases are
/// tried in order and the first match wins.
pub fn slack(k: i64, eps: Rational) -> Result<i64> {
    if k < 1 || eps < Rational::zero() || eps >= Rational::one() {
        return Err(Error::Domain(format!(
            "slack needs k >= 1 and 0 <= eps < 1, got k = {k}, eps = {}",
            rational::format_rational(&eps)
        )));
    }
    let int = Rational::from_integer;
    let half = Rational::new(1, 2);
    let one_minus = Rational::one() - eps;
    if eps * int(2 * k + 2) < int(2) {
        return Ok(2 * k);
    }
    if eps >= Rational::new(2, 2 * k + 2) && eps < half {
        return Ok(rational::ceil(&(int(2 * k + 2) * one_minus)));
    }
    if eps >= half && eps < Rational::new(k + 2, 2 * k + 3) {
        return Ok(k + 1);
    }
    Ok(rational::ceil(&(int(2 * k + 3) * one_minus)))
}
