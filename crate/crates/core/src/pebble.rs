//! The `(k, l)` pebble game for `0 <= l < 2k`, maintained incrementally.
//!
//! Every vertex owns `k` pebbles. An accepted edge is oriented away from the
//! vertex whose pebble it consumed, so `pebbles(v) + outdeg(v) = k` always.
//! An edge `uv` can be accepted exactly when `l + 1` pebbles can be gathered
//! on `{u, v}`.

#[derive(Debug, Clone)]
pub(crate) struct PebbleGame {
    l: u32,
    ends: Vec<(usize, usize)>,
    pebbles: Vec<u32>,
    out: Vec<Vec<usize>>,
    slot: Vec<usize>,
    tail: Vec<usize>,
    present: Vec<bool>,
    seen: Vec<u32>,
    stamp: u32,
    via: Vec<usize>,
}

impl PebbleGame {
    /// `ends` lists the endpoints of every potential edge, indexed by id.
    pub(crate) fn new(n: usize, ends: &[(usize, usize)], k: u32, l: u32) -> Self {
        debug_assert!(l < 2 * k);
        PebbleGame {
            l,
            ends: ends.to_vec(),
            pebbles: vec![k; n],
            out: vec![Vec::new(); n],
            slot: vec![usize::MAX; ends.len()],
            tail: vec![usize::MAX; ends.len()],
            present: vec![false; ends.len()],
            seen: vec![0; n],
            stamp: 0,
            via: vec![usize::MAX; n],
        }
    }

    pub(crate) fn contains(&self, e: usize) -> bool {
        self.present[e]
    }

    fn head(&self, e: usize) -> usize {
        let (u, v) = self.ends[e];
        if self.tail[e] == u {
            v
        } else {
            u
        }
    }

    fn attach(&mut self, e: usize, from: usize) {
        self.tail[e] = from;
        self.slot[e] = self.out[from].len();
        self.out[from].push(e);
    }

    fn detach(&mut self, e: usize) {
        let from = self.tail[e];
        let pos = self.slot[e];
        self.out[from].swap_remove(pos);
        if let Some(&moved) = self.out[from].get(pos) {
            self.slot[moved] = pos;
        }
    }

    fn next_stamp(&mut self) -> u32 {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        self.stamp
    }

    /// Moves one pebble to `from` along reversed out-edges without touching
    /// `blocked`. Returns false when no free pebble is reachable.
    fn fetch(&mut self, from: usize, blocked: usize) -> bool {
        let stamp = self.next_stamp();
        self.seen[from] = stamp;
        self.seen[blocked] = stamp;
        let mut stack = vec![from];
        let mut found = None;
        'search: while let Some(w) = stack.pop() {
            for i in 0..self.out[w].len() {
                let e = self.out[w][i];
                let z = self.head(e);
                if self.seen[z] == stamp {
                    continue;
                }
                self.seen[z] = stamp;
                self.via[z] = e;
                if self.pebbles[z] > 0 {
                    found = Some(z);
                    break 'search;
                }
                stack.push(z);
            }
        }
        let Some(mut z) = found else {
            return false;
        };
        self.pebbles[z] -= 1;
        while z != from {
            let e = self.via[z];
            let w = self.tail[e];
            self.detach(e);
            self.attach(e, z);
            z = w;
        }
        self.pebbles[from] += 1;
        true
    }

    fn gather(&mut self, u: usize, v: usize) -> bool {
        while self.pebbles[u] + self.pebbles[v] <= self.l {
            if !self.fetch(u, v) && !self.fetch(v, u) {
                return false;
            }
        }
        true
    }

    /// Vertices reachable from `u` or `v` along out-edges.
    fn reach(&mut self, u: usize, v: usize) -> Vec<usize> {
        let stamp = self.next_stamp();
        let mut order = vec![u, v];
        self.seen[u] = stamp;
        self.seen[v] = stamp;
        let mut i = 0;
        while i < order.len() {
            let w = order[i];
            i += 1;
            for j in 0..self.out[w].len() {
                let z = self.head(self.out[w][j]);
                if self.seen[z] != stamp {
                    self.seen[z] = stamp;
                    order.push(z);
                }
            }
        }
        order
    }

    /// `None` if `e` can be added; otherwise the edges of the current set that
    /// close a circuit with `e`. The edge set is unchanged either way.
    pub(crate) fn probe(&mut self, e: usize) -> Option<Vec<usize>> {
        let (u, v) = self.ends[e];
        if self.gather(u, v) {
            return None;
        }
        let mut circuit: Vec<usize> = self
            .reach(u, v)
            .into_iter()
            .flat_map(|w| self.out[w].iter().copied())
            .collect();
        circuit.sort_unstable();
        Some(circuit)
    }

    pub(crate) fn try_insert(&mut self, e: usize) -> bool {
        debug_assert!(!self.present[e]);
        let (u, v) = self.ends[e];
        if !self.gather(u, v) {
            return false;
        }
        let from = if self.pebbles[u] > 0 { u } else { v };
        self.pebbles[from] -= 1;
        self.attach(e, from);
        self.present[e] = true;
        true
    }

    pub(crate) fn remove(&mut self, e: usize) {
        debug_assert!(self.present[e]);
        let from = self.tail[e];
        self.detach(e);
        self.pebbles[from] += 1;
        self.present[e] = false;
    }
}
