//! Spanning trees, the induced free bases, and rewriting members in them.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use super::{CoreGraph, Edge};
use crate::error::{Error, Result};
use crate::word::{free_reduce, IntVector, Word};

/// A spanning tree of a core graph plus the ordered non-tree edges.
///
/// Non-tree edge `j` (0-based) corresponds to basis symbol `j + 1`, with
/// sign `+1` for traversal along the stored orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    tree_edges: Vec<Edge>,
    nontree_edges: Vec<Edge>,
    /// Letters of the tree path from the base to each vertex.
    paths: Vec<Vec<i32>>,
    /// `(from * rank + label - 1)` -> position in `nontree_edges`.
    symbol_of: Vec<Option<usize>>,
    rank: usize,
}

impl SpanningTree {
    pub fn tree_edges(&self) -> &[Edge] {
        &self.tree_edges
    }

    pub fn nontree_edges(&self) -> &[Edge] {
        &self.nontree_edges
    }

    /// Tree path from the base to `v`, as a word.
    pub fn path_to(&self, v: usize) -> Word {
        Word::from_reduced(self.rank, self.paths[v].clone())
    }

    /// Basis symbol (1-based) of a non-tree edge, or `None` for tree edges.
    pub fn symbol(&self, e: &Edge) -> Option<usize> {
        self.symbol_of
            .get(e.from * self.rank + e.label - 1)
            .copied()
            .flatten()
            .filter(|&j| self.nontree_edges[j] == *e)
            .map(|j| j + 1)
    }

    fn check(&self, graph: &CoreGraph) -> Result<()> {
        let fits = self.rank == graph.ambient_rank()
            && self.paths.len() == graph.vertex_count()
            && self.nontree_edges.len() == graph.subgroup_rank()
            && self.tree_edges.iter().chain(&self.nontree_edges).all(|e| graph.has_edge(e));
        if fits {
            Ok(())
        } else {
            Err(Error::NotASpanningTree("tree belongs to a different graph".into()))
        }
    }
}

/// Spanning tree of `graph`.
///
/// Without an override this is the BFS tree from the base that explores
/// outgoing labels `1..=n` and then incoming labels `1..=n`. Non-tree edges
/// are listed by `(origin, label)`.
pub fn spanning_tree(graph: &CoreGraph, tree_override: Option<&[Edge]>) -> Result<SpanningTree> {
    let n = graph.ambient_rank();
    let vc = graph.vertex_count();
    let mut is_tree = vec![false; vc * n];
    match tree_override {
        None => {
            let mut seen = vec![false; vc];
            seen[0] = true;
            let mut queue = VecDeque::from([0]);
            while let Some(v) = queue.pop_front() {
                let outgoing = (1..=n).filter_map(|l| graph.out(v, l).map(|t| (Edge::new(v, t, l), t)));
                let incoming = (1..=n).filter_map(|l| graph.inc(v, l).map(|s| (Edge::new(s, v, l), s)));
                let next: Vec<_> = outgoing.chain(incoming).collect();
                for (e, u) in next {
                    if !seen[u] {
                        seen[u] = true;
                        is_tree[e.from * n + e.label - 1] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        Some(edges) => {
            if edges.len() + 1 != vc {
                return Err(Error::NotASpanningTree(format!(
                    "{} edges given, a spanning tree needs {}",
                    edges.len(),
                    vc - 1
                )));
            }
            for e in edges {
                if !graph.has_edge(e) {
                    return Err(Error::NotASpanningTree(format!("{e:?} is not an edge")));
                }
                let slot = &mut is_tree[e.from * n + e.label - 1];
                if *slot {
                    return Err(Error::NotASpanningTree(format!("{e:?} listed twice")));
                }
                *slot = true;
            }
        }
    }

    // Paths from the base along tree edges; also checks connectivity.
    let mut paths: Vec<Option<Vec<i32>>> = vec![None; vc];
    paths[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        let here = paths[v].clone().expect("queued vertices have paths");
        for l in 1..=n {
            if let Some(t) = graph.out(v, l) {
                if is_tree[v * n + l - 1] && paths[t].is_none() {
                    let mut p = here.clone();
                    p.push(l as i32);
                    paths[t] = Some(p);
                    queue.push_back(t);
                }
            }
            if let Some(s) = graph.inc(v, l) {
                if is_tree[s * n + l - 1] && paths[s].is_none() {
                    let mut p = here.clone();
                    p.push(-(l as i32));
                    paths[s] = Some(p);
                    queue.push_back(s);
                }
            }
        }
    }
    let paths: Vec<Vec<i32>> = paths
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| Error::NotASpanningTree(format!("vertex {v} is not reached"))))
        .collect::<Result<_>>()?;

    let mut tree_edges = Vec::new();
    let mut nontree_edges = Vec::new();
    let mut symbol_of = vec![None; vc * n];
    for e in graph.edges() {
        if is_tree[e.from * n + e.label - 1] {
            tree_edges.push(e);
        } else {
            symbol_of[e.from * n + e.label - 1] = Some(nontree_edges.len());
            nontree_edges.push(e);
        }
    }
    Ok(SpanningTree {
        tree_edges,
        nontree_edges,
        paths,
        symbol_of,
        rank: n,
    })
}

/// Free basis of the subgroup read off the non-tree edges of `tree`.
pub fn basis(graph: &CoreGraph, tree: &SpanningTree) -> Result<Vec<Word>> {
    tree.check(graph)?;
    Ok(tree
        .nontree_edges
        .iter()
        .map(|e| {
            let back = tree.paths[e.to].iter().rev().map(|x| -x);
            let letters = free_reduce(
                tree.paths[e.from]
                    .iter()
                    .copied()
                    .chain(std::iter::once(e.label as i32))
                    .chain(back),
            );
            Word::from_reduced(graph.ambient_rank(), letters)
        })
        .collect())
}

/// Express a member of the subgroup as a word in the basis of `tree`.
pub fn rewrite_in_basis(graph: &CoreGraph, tree: &SpanningTree, w: &Word) -> Result<BasisWord> {
    tree.check(graph)?;
    graph.check_word(w)?;
    let mut v = 0;
    let mut symbols = Vec::new();
    for &x in w.letters() {
        let l = x.unsigned_abs() as usize;
        let (edge, next) = if x > 0 {
            let t = graph.out(v, l).ok_or(Error::NotAMember)?;
            (Edge::new(v, t, l), t)
        } else {
            let s = graph.inc(v, l).ok_or(Error::NotAMember)?;
            (Edge::new(s, v, l), s)
        };
        if let Some(j) = tree.symbol(&edge) {
            symbols.push(if x > 0 { j as i32 } else { -(j as i32) });
        }
        v = next;
    }
    if v != 0 {
        return Err(Error::NotAMember);
    }
    Ok(BasisWord::new(tree.nontree_edges.len(), symbols))
}

/// A reduced word over the symbols `1..=rank` of a subgroup basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasisWord {
    pub rank: usize,
    pub letters: Vec<i32>,
}

impl BasisWord {
    pub fn new(rank: usize, letters: Vec<i32>) -> BasisWord {
        debug_assert!(letters.iter().all(|&x| x != 0 && x.unsigned_abs() as usize <= rank));
        BasisWord {
            rank,
            letters: free_reduce(letters),
        }
    }

    /// Substitute basis words for the symbols.
    pub fn evaluate(&self, basis: &[Word]) -> Result<Word> {
        if basis.len() != self.rank {
            return Err(Error::RankMismatch(self.rank, basis.len()));
        }
        let ambient = basis.first().map(Word::rank).unwrap_or(1);
        let mut acc = Word::identity(ambient)?;
        for &x in &self.letters {
            let b = &basis[x.unsigned_abs() as usize - 1];
            let factor = if x > 0 { b.clone() } else { b.inverse() };
            acc = acc.multiply(&factor)?;
        }
        Ok(acc)
    }

    /// Exponent sum of each basis symbol.
    pub fn exponent_sums(&self) -> Result<IntVector> {
        let mut v = vec![0i64; self.rank];
        for &x in &self.letters {
            let slot = &mut v[x.unsigned_abs() as usize - 1];
            *slot = slot.checked_add(x.signum() as i64).ok_or(Error::Overflow)?;
        }
        Ok(IntVector(v))
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&x| if x > 0 { format!("s{x}") } else { format!("s{}^-1", -x) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
