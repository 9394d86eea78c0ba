//! Stallings core graphs of finitely generated subgroups.
//!
//! A [`CoreGraph`] is a folded, connected, based graph whose edges carry
//! generator labels. The base vertex is always vertex `0`. Folding makes
//! the graph deterministic in both directions, so a graph is stored as two
//! partial transition tables (outgoing and incoming) indexed by
//! `(vertex, label)`.

mod fold;
mod json;
mod pullback;
mod schreier;
mod tree;

pub use fold::{from_generators, LabeledGraph};
pub use json::{EdgeJson, GraphJson};
pub use pullback::pullback;
pub use schreier::{coset_permutation, schreier_graph};
pub use tree::{basis, rewrite_in_basis, spanning_tree, BasisWord, SpanningTree};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Word, MAX_RANK};

/// A directed edge `from --label--> to`, with `label` in `1..=rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

impl Edge {
    pub fn new(from: usize, to: usize, label: usize) -> Edge {
        Edge { from, to, label }
    }
}

/// Folded core graph with base vertex `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoreGraph {
    rank: usize,
    vertex_count: usize,
    out: Vec<Option<usize>>,
    inc: Vec<Option<usize>>,
}

impl CoreGraph {
    /// The graph of the trivial subgroup: one vertex, no edges.
    pub fn trivial(rank: usize) -> Result<CoreGraph> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidRank(rank));
        }
        Ok(CoreGraph {
            rank,
            vertex_count: 1,
            out: vec![None; rank],
            inc: vec![None; rank],
        })
    }

    /// Graph of the whole free group: a bouquet of `rank` loops.
    pub fn rose(rank: usize) -> Result<CoreGraph> {
        let edges: Vec<Edge> = (1..=rank).map(|l| Edge::new(0, 0, l)).collect();
        CoreGraph::from_edges(rank, 1, &edges)
    }

    /// Build from an explicit edge list, keeping the vertex numbering.
    ///
    /// The edges must already be folded, connected and core (apart from the
    /// base). Use [`LabeledGraph::fold`] for arbitrary input.
    pub fn from_edges(rank: usize, vertex_count: usize, edges: &[Edge]) -> Result<CoreGraph> {
        let g = CoreGraph::from_edges_unchecked(rank, vertex_count, edges)?;
        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        if let Some(v) = (1..g.vertex_count).find(|&v| g.degree(v) < 2) {
            return Err(Error::InvalidGraph(format!("vertex {v} is a hanging vertex")));
        }
        Ok(g)
    }

    /// Only checks ranges and determinism.
    pub(crate) fn from_edges_unchecked(
        rank: usize,
        vertex_count: usize,
        edges: &[Edge],
    ) -> Result<CoreGraph> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidRank(rank));
        }
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut out = vec![None; vertex_count * rank];
        let mut inc = vec![None; vertex_count * rank];
        for e in edges {
            if e.label == 0 || e.label > rank {
                return Err(Error::InvalidGraph(format!("label {} out of range", e.label)));
            }
            if e.from >= vertex_count || e.to >= vertex_count {
                return Err(Error::InvalidGraph(format!("edge {e:?} leaves the vertex set")));
            }
            let o = &mut out[e.from * rank + e.label - 1];
            let i = &mut inc[e.to * rank + e.label - 1];
            if o.is_some() || i.is_some() {
                return Err(Error::InvalidGraph(format!("edge {e:?} violates folding")));
            }
            *o = Some(e.to);
            *i = Some(e.from);
        }
        Ok(CoreGraph {
            rank,
            vertex_count,
            out,
            inc,
        })
    }

    /// Ambient rank `n` of the free group `F_n`.
    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().filter(|t| t.is_some()).count()
    }

    /// Edges ordered by `(from, label)`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut edges = Vec::with_capacity(self.edge_count());
        for v in 0..self.vertex_count {
            for l in 1..=self.rank {
                if let Some(t) = self.out(v, l) {
                    edges.push(Edge::new(v, t, l));
                }
            }
        }
        edges
    }

    pub fn out(&self, v: usize, label: usize) -> Option<usize> {
        self.out[v * self.rank + label - 1]
    }

    pub fn inc(&self, v: usize, label: usize) -> Option<usize> {
        self.inc[v * self.rank + label - 1]
    }

    /// Follow a signed letter from `v`.
    pub fn step(&self, v: usize, letter: i32) -> Option<usize> {
        let l = letter.unsigned_abs() as usize;
        if letter > 0 {
            self.out(v, l)
        } else {
            self.inc(v, l)
        }
    }

    /// End of the path reading `letters` from `start`, if it exists.
    pub fn trace(&self, start: usize, letters: &[i32]) -> Option<usize> {
        letters.iter().try_fold(start, |v, &x| self.step(v, x))
    }

    pub fn has_edge(&self, e: &Edge) -> bool {
        e.from < self.vertex_count
            && e.label >= 1
            && e.label <= self.rank
            && self.out(e.from, e.label) == Some(e.to)
    }

    /// Total degree; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        (1..=self.rank)
            .map(|l| self.out(v, l).is_some() as usize + self.inc(v, l).is_some() as usize)
            .sum()
    }

    fn is_connected(&self) -> bool {
        self.bfs_order(0).len() == self.vertex_count
    }

    /// Vertices in canonical BFS order from `root`: outgoing labels
    /// `1..=n` first, then incoming labels `1..=n`.
    pub(crate) fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count];
        let mut order = vec![root];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let next = (1..=self.rank)
                .map(|l| self.out(v, l))
                .chain((1..=self.rank).map(|l| self.inc(v, l)));
            for t in next.flatten() {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        order
    }

    /// Membership: the path of `w` from the base exists and returns to it.
    pub fn contains(&self, w: &Word) -> Result<bool> {
        self.check_word(w)?;
        Ok(self.trace(0, w.letters()) == Some(0))
    }

    pub(crate) fn check_word(&self, w: &Word) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch(self.rank, w.rank()));
        }
        Ok(())
    }

    /// Free rank of the subgroup, `|E| - |V| + 1`.
    pub fn subgroup_rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count
    }

    /// Every vertex has an outgoing and incoming edge for every label.
    pub fn is_complete(&self) -> bool {
        self.out.iter().all(Option::is_some) && self.inc.iter().all(Option::is_some)
    }

    /// `Some(|V|)` for a finite-index subgroup, `None` for infinite index.
    pub fn index(&self) -> Option<usize> {
        self.is_complete().then_some(self.vertex_count)
    }

    pub fn is_trivial(&self) -> bool {
        self.edge_count() == 0
    }

    /// Renumber vertices in canonical BFS order from the base.
    pub fn canonicalize(&self) -> CoreGraph {
        self.rerooted(0)
    }

    /// Canonical form with `root` as the new base vertex.
    pub(crate) fn rerooted(&self, root: usize) -> CoreGraph {
        let order = self.bfs_order(root);
        let mut new_id = vec![usize::MAX; self.vertex_count];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }
        let edges: Vec<Edge> = self
            .edges()
            .into_iter()
            .filter(|e| new_id[e.from] != usize::MAX)
            .map(|e| Edge::new(new_id[e.from], new_id[e.to], e.label))
            .collect();
        CoreGraph::from_edges_unchecked(self.rank, order.len(), &edges)
            .expect("renumbering preserves folding")
    }

    /// Same subgroup (canonical forms agree).
    pub fn same_subgroup(&self, other: &CoreGraph) -> bool {
        self.canonicalize() == other.canonicalize()
    }

    /// The same subgroup inside a free group of larger rank.
    pub fn embed(&self, rank: usize) -> Result<CoreGraph> {
        if rank < self.rank {
            return Err(Error::RankMismatch(self.rank, rank));
        }
        CoreGraph::from_edges_unchecked(rank, self.vertex_count, &self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h3() -> CoreGraph {
        let gens = ["a", "baBB", "bbaB", "bbb"].map(|s| Word::parse(s, 2).unwrap());
        from_generators(2, &gens).unwrap()
    }

    fn k3() -> CoreGraph {
        let gens = ["a", "baBB", "bbaB"].map(|s| Word::parse(s, 2).unwrap());
        from_generators(2, &gens).unwrap()
    }

    #[test]
    fn whole_group() {
        let gens = ["a", "b"].map(|s| Word::parse(s, 2).unwrap());
        let g = from_generators(2, &gens).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 2));
        assert_eq!(g.subgroup_rank(), 2);
        assert_eq!(g.index(), Some(1));
        assert_eq!(g, CoreGraph::rose(2).unwrap());
    }

    #[test]
    fn h3_from_generators() {
        let g = h3();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 6));
        assert_eq!(g.index(), Some(3));
        assert_eq!(g.subgroup_rank(), 4);
    }

    #[test]
    fn k3_from_generators() {
        let g = k3();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 5));
        assert_eq!(g.index(), None);
        assert_eq!(g.subgroup_rank(), 3);
    }

    #[test]
    fn membership() {
        let g = h3();
        let p = |s: &str| Word::parse(s, 2).unwrap();
        assert!(g.contains(&p("bbb")).unwrap());
        assert!(!g.contains(&p("a[a,b]")).unwrap());
        assert!(g.contains(&p("(a[a,b])^2")).unwrap());
        assert!(g.contains(&p("")).unwrap());
        let wrong = Word::parse("a", 3).unwrap();
        assert_eq!(g.contains(&wrong), Err(Error::RankMismatch(2, 3)));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        let dup = [Edge::new(0, 0, 1), Edge::new(0, 1, 1), Edge::new(1, 0, 2)];
        assert!(matches!(CoreGraph::from_edges(2, 2, &dup), Err(Error::InvalidGraph(_))));
        let hanging = [Edge::new(0, 0, 1), Edge::new(0, 1, 2)];
        assert!(matches!(CoreGraph::from_edges(2, 2, &hanging), Err(Error::InvalidGraph(_))));
        let split = [Edge::new(0, 0, 1), Edge::new(1, 1, 1)];
        assert!(matches!(CoreGraph::from_edges(2, 2, &split), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn canonicalize_is_idempotent_and_ignores_numbering() {
        let g = h3();
        let c = g.canonicalize();
        assert_eq!(c.canonicalize(), c);
        // swap vertices 1 and 2
        let swap = |v: usize| match v {
            1 => 2,
            2 => 1,
            v => v,
        };
        let relabeled: Vec<Edge> = g
            .edges()
            .iter()
            .map(|e| Edge::new(swap(e.from), swap(e.to), e.label))
            .collect();
        let r = CoreGraph::from_edges(2, 3, &relabeled).unwrap();
        assert_ne!(r, g);
        assert_eq!(r.canonicalize(), c);
    }

    #[test]
    fn trivial_graph() {
        let t = CoreGraph::trivial(2).unwrap();
        assert_eq!(t.subgroup_rank(), 0);
        assert!(t.is_trivial());
        assert_eq!(t.index(), None);
    }
}
