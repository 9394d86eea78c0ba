use std::collections::HashMap;

use super::{CoreGraph, Edge};
use crate::error::{Error, Result};
use crate::word::{Word, MAX_RANK};

/// An arbitrary based graph with labeled edges (base is vertex `0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub rank: usize,
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(rank: usize) -> LabeledGraph {
        LabeledGraph {
            rank,
            vertex_count: 1,
            edges: Vec::new(),
        }
    }

    /// Wedge of loops at the base, one per generator.
    pub fn bouquet(rank: usize, generators: &[Word]) -> Result<LabeledGraph> {
        let mut g = LabeledGraph::new(rank);
        for w in generators {
            if w.rank() != rank {
                return Err(Error::RankMismatch(rank, w.rank()));
            }
            g.add_loop(w.letters());
        }
        Ok(g)
    }

    /// Attach a closed path reading `letters` at the base.
    pub fn add_loop(&mut self, letters: &[i32]) {
        if letters.is_empty() {
            return;
        }
        let mut cur = 0;
        for (i, &x) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() {
                0
            } else {
                self.vertex_count += 1;
                self.vertex_count - 1
            };
            let l = x.unsigned_abs() as usize;
            if x > 0 {
                self.edges.push(Edge::new(cur, next, l));
            } else {
                self.edges.push(Edge::new(next, cur, l));
            }
            cur = next;
        }
    }

    /// Fold until deterministic, keep the base component, trim hanging
    /// trees and return the canonical core graph.
    pub fn fold(&self) -> Result<CoreGraph> {
        if self.rank == 0 || self.rank > MAX_RANK {
            return Err(Error::InvalidRank(self.rank));
        }
        if self.vertex_count == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        for e in &self.edges {
            if e.label == 0 || e.label > self.rank {
                return Err(Error::InvalidGraph(format!("label {} out of range", e.label)));
            }
            if e.from >= self.vertex_count || e.to >= self.vertex_count {
                return Err(Error::InvalidGraph(format!("edge {e:?} leaves the vertex set")));
            }
        }

        let mut uf = UnionFind::new(self.vertex_count);
        loop {
            let mut merged = false;
            let mut out: HashMap<(usize, usize), usize> = HashMap::new();
            let mut inc: HashMap<(usize, usize), usize> = HashMap::new();
            for e in &self.edges {
                let (o, t) = (uf.find(e.from), uf.find(e.to));
                if let Some(&t2) = out.get(&(o, e.label)) {
                    merged |= uf.union(t, t2);
                } else {
                    out.insert((o, e.label), t);
                }
                let (o, t) = (uf.find(e.from), uf.find(e.to));
                if let Some(&o2) = inc.get(&(t, e.label)) {
                    merged |= uf.union(o, o2);
                } else {
                    inc.insert((t, e.label), o);
                }
            }
            if !merged {
                break;
            }
        }

        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge::new(uf.find(e.from), uf.find(e.to), e.label))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let base = uf.find(0);
        core_of(self.rank, self.vertex_count, base, &edges)
    }
}

/// Component of `base`, trimmed of hanging trees (the base is never removed),
/// compacted and canonicalized. `edges` must be deterministic.
pub(crate) fn core_of(
    rank: usize,
    vertex_count: usize,
    base: usize,
    edges: &[Edge],
) -> Result<CoreGraph> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    for (i, e) in edges.iter().enumerate() {
        adj[e.from].push(i);
        adj[e.to].push(i);
    }
    let mut alive_edge = vec![true; edges.len()];
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut alive = vec![true; vertex_count];
    let mut stack: Vec<usize> = (0..vertex_count)
        .filter(|&v| v != base && degree[v] <= 1)
        .collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &i in &adj[v] {
            if !alive_edge[i] {
                continue;
            }
            alive_edge[i] = false;
            let e = edges[i];
            let other = if e.from == v { e.to } else { e.from };
            if other != v {
                degree[other] -= 1;
                if other != base && alive[other] && degree[other] <= 1 {
                    stack.push(other);
                }
            }
        }
    }

    let mut new_id = vec![usize::MAX; vertex_count];
    let mut count = 0;
    for v in std::iter::once(base).chain(0..vertex_count) {
        if alive[v] && new_id[v] == usize::MAX {
            new_id[v] = count;
            count += 1;
        }
    }
    let kept: Vec<Edge> = edges
        .iter()
        .zip(&alive_edge)
        .filter(|(_, &a)| a)
        .map(|(e, _)| Edge::new(new_id[e.from], new_id[e.to], e.label))
        .collect();
    // canonicalize also drops whatever is not reachable from the base
    Ok(CoreGraph::from_edges_unchecked(rank, count, &kept)?.canonicalize())
}

/// Stallings graph of the subgroup generated by `generators`.
///
/// Identity words are ignored; if nothing is left the subgroup is trivial and
/// [`Error::TrivialSubgroup`] is returned (see [`CoreGraph::trivial`]).
pub fn from_generators(rank: usize, generators: &[Word]) -> Result<CoreGraph> {
    if generators.iter().all(Word::is_identity) {
        return Err(Error::TrivialSubgroup);
    }
    LabeledGraph::bouquet(rank, generators)?.fold()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn folding_a_folded_graph_changes_nothing() {
        let g = from_generators(2, &[p("a"), p("baBB"), p("bbaB"), p("bbb")]).unwrap();
        let raw = LabeledGraph {
            rank: 2,
            vertex_count: g.vertex_count(),
            edges: g.edges(),
        };
        assert_eq!(raw.fold().unwrap(), g);
    }

    #[test]
    fn two_loops_with_same_label_merge() {
        // 0 -a-> 1 -b-> 0 and 0 -a-> 2 -b-> 0 fold onto one loop "ab"
        let raw = LabeledGraph {
            rank: 2,
            vertex_count: 3,
            edges: vec![
                Edge::new(0, 1, 1),
                Edge::new(1, 0, 2),
                Edge::new(0, 2, 1),
                Edge::new(2, 0, 2),
            ],
        };
        let g = raw.fold().unwrap();
        assert_eq!(g, from_generators(2, &[p("ab")]).unwrap());
        assert_eq!(g.vertex_count(), 2);
    }

    #[test]
    fn a_squared_and_a_give_one_loop() {
        let g = from_generators(2, &[p("aa"), p("a")]).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edges(), vec![Edge::new(0, 0, 1)]);
    }

    #[test]
    fn non_cyclically_reduced_generator_keeps_stem() {
        // b a B: base hangs on a stem of length one
        let g = from_generators(2, &[p("baB")]).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.subgroup_rank(), 1);
        assert!(g.contains(&p("ba^5B")).unwrap());
        assert!(!g.contains(&p("a")).unwrap());
    }

    #[test]
    fn trivial_generators() {
        assert_eq!(from_generators(2, &[p(""), p("aA")]), Err(Error::TrivialSubgroup));
        assert_eq!(from_generators(2, &[]), Err(Error::TrivialSubgroup));
    }

    #[test]
    fn disconnected_junk_is_dropped() {
        let raw = LabeledGraph {
            rank: 2,
            vertex_count: 3,
            edges: vec![Edge::new(0, 0, 1), Edge::new(1, 2, 2), Edge::new(2, 1, 1)],
        };
        assert_eq!(raw.fold().unwrap(), from_generators(2, &[p("a")]).unwrap());
    }
}
