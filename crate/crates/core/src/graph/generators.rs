use super::Graph;
use crate::error::{Error, Result};

pub fn complete_graph(t: usize) -> Result<Graph> {
    if t == 0 {
        return Err(Error::Domain("complete graph needs at least one vertex".into()));
    }
    Graph::new(t, (0..t).flat_map(|j| (0..j).map(move |i| (i, j))))
}

/// Vertex `i` joined to `i ± 1, ..., i ± radius` modulo `n`.
pub fn circulant(n: usize, radius: usize) -> Result<Graph> {
    if n < 2 * radius + 1 {
        return Err(Error::Domain(format!(
            "circulant({n}, {radius}) needs n >= {} to avoid parallel edges",
            2 * radius + 1
        )));
    }
    Graph::new(
        n,
        (0..n).flat_map(|i| (1..=radius).map(move |d| (i, (i + d) % n))),
    )
}

/// Disjoint union with `g2`'s vertices numbered after `g1`'s.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let shift = g1.vertex_count();
    Graph::new(
        shift + g2.vertex_count(),
        g1.edges()
            .iter()
            .copied()
            .chain(g2.edges().iter().map(|&(u, v)| (u + shift, v + shift))),
    )
    .expect("disjoint union of simple graphs is simple")
}

/// Disjoint union of `g1` and `g2` with `v2` identified with `v1`.
///
/// The vertices of `g2` other than `v2` follow those of `g1`, in order.
pub fn glue(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Result<Graph> {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    if v1 >= n1 || v2 >= n2 {
        return Err(Error::Domain(format!(
            "glue vertices ({v1}, {v2}) out of range ({n1}, {n2})"
        )));
    }
    let map = |w: usize| match w.cmp(&v2) {
        std::cmp::Ordering::Equal => v1,
        std::cmp::Ordering::Less => n1 + w,
        std::cmp::Ordering::Greater => n1 + w - 1,
    };
    Graph::new(
        n1 + n2 - 1,
        g1.edges()
            .iter()
            .copied()
            .chain(g2.edges().iter().map(|&(u, v)| (map(u), map(v)))),
    )
}

/// The rotational decomposition of `K_order` (`order` even) into
/// `order / 2` edge-disjoint Hamiltonian paths, each given as a vertex sequence.
pub fn hamiltonian_paths(order: usize) -> Result<Vec<Vec<usize>>> {
    if order == 0 || order % 2 != 0 {
        return Err(Error::Domain(format!(
            "Hamiltonian path decomposition needs a positive even order, got {order}"
        )));
    }
    let paths = (0..order / 2)
        .map(|start| {
            let mut path = vec![start];
            for j in 1..=order / 2 {
                path.push((start + j) % order);
                if path.len() < order {
                    path.push((start + order - j) % order);
                }
            }
            path
        })
        .collect();
    Ok(paths)
}

/// `t` disjoint copies of the `2(a1 + a2)`-regular circulant on `n` vertices.
pub fn gen_counterexample_disconnected(a1: usize, a2: usize, n: usize, t: usize) -> Result<Graph> {
    if a1 < 1 || a2 < 1 {
        return Err(Error::Domain("a1 and a2 must be at least 1".into()));
    }
    if t < 2 {
        return Err(Error::Domain(format!("need at least two copies, got t = {t}")));
    }
    let copy = circulant(n, a1 + a2)?;
    let mut g = copy.clone();
    for _ in 1..t {
        g = disjoint_union(&g, &copy);
    }
    Ok(g)
}

/// Two copies of the union of `2a` edge-disjoint Hamiltonian paths of
/// `K_{4a}`, glued at vertex 0 of each copy. The result is `(2a, -2a)`-tight.
pub fn gen_counterexample_glued_trees(a: usize) -> Result<Graph> {
    if a < 2 {
        return Err(Error::Domain(format!("glued trees need a >= 2, got {a}")));
    }
    let order = 4 * a;
    let paths = hamiltonian_paths(order)?;
    let edges = paths
        .iter()
        .take(2 * a)
        .flat_map(|p| p.windows(2).map(|w| (w[0], w[1])));
    let h = Graph::new(order, edges)?;
    glue(&h, 0, &h, 0)
}

/// `t` copies of `K_{2a+2}` minus an edge `x_i y_i`, with `y_i` identified
/// with `x_{i+1}` cyclically. The result is `(a+1, -a-2)`-sparse.
pub fn gen_counterexample_ring(a: usize, t: usize) -> Result<Graph> {
    if a < 1 {
        return Err(Error::Domain("ring needs a >= 1".into()));
    }
    if t < a + 2 {
        return Err(Error::Domain(format!("ring needs t >= a + 2 = {}, got {t}", a + 2)));
    }
    let stride = 2 * a + 1;
    let n = t * stride;
    let mut edges = Vec::new();
    for i in 0..t {
        let x = i * stride;
        let y = ((i + 1) % t) * stride;
        let block: Vec<usize> = std::iter::once(x)
            .chain((1..=2 * a).map(|j| x + j))
            .chain(std::iter::once(y))
            .collect();
        for (p, &u) in block.iter().enumerate() {
            for &v in &block[p + 1..] {
                if (u, v) != (x, y) {
                    edges.push((u, v));
                }
            }
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_and_circulant_sizes() {
        assert_eq!(complete_graph(2).unwrap().edge_count(), 1);
        assert_eq!(complete_graph(6).unwrap().edge_count(), 15);
        assert_eq!(circulant(5, 2).unwrap(), complete_graph(5).unwrap());
        let c = circulant(7, 2).unwrap();
        assert_eq!(c.edge_count(), 14);
        assert!((0..7).all(|v| c.degree(v) == 4));
        assert!(circulant(4, 2).is_err());
    }

    #[test]
    fn glue_counts() {
        let k3 = complete_graph(3).unwrap();
        let g = glue(&k3, 0, &k3, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 6));
        let k2 = complete_graph(2).unwrap();
        let p3 = glue(&k2, 1, &k2, 0).unwrap();
        assert_eq!(p3.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn hamiltonian_paths_partition_the_complete_graph() {
        for order in [2, 4, 6, 8, 12] {
            let paths = hamiltonian_paths(order).unwrap();
            assert_eq!(paths.len(), order / 2);
            let mut seen = std::collections::HashSet::new();
            for p in &paths {
                let mut sorted = p.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..order).collect::<Vec<_>>());
                for w in p.windows(2) {
                    assert!(seen.insert((w[0].min(w[1]), w[0].max(w[1]))));
                }
            }
            assert_eq!(seen.len(), order * (order - 1) / 2);
        }
        assert!(hamiltonian_paths(5).is_err());
    }

    #[test]
    fn counterexample_sizes() {
        let d = gen_counterexample_disconnected(1, 1, 5, 2).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count()), (10, 20));
        let g = gen_counterexample_glued_trees(2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (15, 56));
        let r = gen_counterexample_ring(1, 3).unwrap();
        assert_eq!((r.vertex_count(), r.edge_count()), (9, 15));
        assert!(gen_counterexample_ring(2, 3).is_err());
        assert!(gen_counterexample_glued_trees(1).is_err());
        assert!(gen_counterexample_disconnected(1, 1, 4, 2).is_err());
        assert!(gen_counterexample_disconnected(1, 1, 5, 1).is_err());
    }
}
