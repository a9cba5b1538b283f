#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparsity_forge::sparsity::check_sparse;
use sparsity_forge::{EdgeSet, Graph, SparsityParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Erdős–Rényi graph.
pub fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = all_pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::new(n, edges).unwrap()
}

/// Adds random pairs to `seed_edges` while the graph stays `(a, b)`-sparse,
/// stopping after `budget` additions.
pub fn grow_sparse(
    rng: &mut ChaCha8Rng,
    n: usize,
    seed_edges: &[(usize, usize)],
    params: SparsityParams,
    budget: usize,
) -> Graph {
    let mut edges = seed_edges.to_vec();
    let mut pairs = all_pairs(n);
    pairs.shuffle(rng);
    let mut added = 0;
    for pair in pairs {
        if added == budget {
            break;
        }
        if edges.contains(&pair) {
            continue;
        }
        edges.push(pair);
        let g = Graph::new(n, edges.iter().copied()).unwrap();
        if check_sparse(&g, params).unwrap() {
            added += 1;
        } else {
            edges.pop();
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Triangles of `g` all of whose edges lie in `s`.
pub fn triangles(g: &Graph, s: &EdgeSet) -> usize {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for id in s.iter() {
        let (u, v) = g.endpoints(id);
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            if !adj[a][b] {
                continue;
            }
            count += (b + 1..n).filter(|&c| adj[a][c] && adj[b][c]).count();
        }
    }
    count
}

/// Whether `s` is acyclic, by union-find written independently of the crate.
pub fn acyclic(g: &Graph, s: &EdgeSet) -> bool {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for id in s.iter() {
        let (u, v) = g.endpoints(id);
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

/// All `size`-subsets of `0..n` as bitmasks.
pub fn subsets_of_size(n: usize, size: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == size).collect()
}

/// Edges of `s` with both endpoints in `mask`.
pub fn edges_inside(g: &Graph, s: &EdgeSet, mask: u32) -> usize {
    s.iter()
        .filter(|&id| {
            let (u, v) = g.endpoints(id);
            mask >> u & 1 == 1 && mask >> v & 1 == 1
        })
        .count()
}
