//! Maximum cardinality matching in general graphs (Edmonds' blossom
//! algorithm, BFS formulation with base relabeling for contracted blossoms).

use std::collections::VecDeque;

use crate::matching::{normalize, Edge};

const NONE: usize = usize::MAX;

/// A simple undirected graph on `{0, .., order - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    order: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
    edge_count: usize,
}

impl SimpleGraph {
    pub fn new(order: usize) -> Self {
        SimpleGraph {
            order,
            adj: vec![Vec::new(); order],
            matrix: vec![false; order * order],
            edge_count: 0,
        }
    }

    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut g = Self::new(order);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `{u, v}`; returns `false` if it was already present.
    ///
    /// # Panics
    ///
    /// On loops or out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v && u < self.order && v < self.order, "invalid edge ({u}, {v})");
        if self.matrix[u * self.order + v] {
            return false;
        }
        self.matrix[u * self.order + v] = true;
        self.matrix[v * self.order + u] = true;
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edge_count += 1;
        true
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.matrix[u * self.order + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = (0..self.order)
            .flat_map(|u| self.adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// The graph with exactly the non-edges of `self`.
    pub fn complement(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.order);
        for u in 0..self.order {
            for v in u + 1..self.order {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// A maximum matching, as canonical edges sorted ascending.
    pub fn maximum_matching(&self) -> Vec<Edge> {
        let mate = Blossom::new(self).run();
        let mut out: Vec<Edge> = mate
            .iter()
            .enumerate()
            .filter(|&(v, &w)| w != NONE && v < w)
            .map(|(v, &w)| normalize((v, w)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Size of a maximum matching.
    pub fn matching_number(&self) -> usize {
        self.maximum_matching().len()
    }
}

struct Blossom<'a> {
    g: &'a SimpleGraph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a SimpleGraph) -> Self {
        let n = g.order;
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn run(mut self) -> Vec<usize> {
        let n = self.g.order;
        // Greedy warm start.
        for v in 0..n {
            if self.mate[v] == NONE {
                if let Some(&w) = self.g.adj[v].iter().find(|&&w| self.mate[w] == NONE) {
                    self.mate[v] = w;
                    self.mate[w] = v;
                }
            }
        }
        for root in 0..n {
            if self.mate[root] == NONE {
                if let Some(end) = self.find_path(root) {
                    self.augment(end);
                }
            }
        }
        self.mate
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.order];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from the exposed vertex `root`; returns the
    /// exposed endpoint reached, with `parent` links describing the path.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.order;
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.adj[v].len() {
                let to = self.g.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // Odd cycle: contract the blossom onto its base.
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}
