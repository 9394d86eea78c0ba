use super::{CoreGraph, Edge};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::word::Word;

/// Coset graph of a transitive action: generator `i` moves `p` to
/// `perms[i-1](p)`. The result is rebased at `base` and canonical.
pub fn schreier_graph(rank: usize, perms: &[Permutation], base: usize) -> Result<CoreGraph> {
    if perms.len() != rank {
        return Err(Error::RankMismatch(rank, perms.len()));
    }
    let degree = perms.first().map(Permutation::degree).unwrap_or(0);
    if degree == 0 || perms.iter().any(|p| p.degree() != degree) {
        return Err(Error::InvalidPermutation("permutations must share a positive degree".into()));
    }
    if base >= degree {
        return Err(Error::InvalidPermutation(format!("base point {base} out of range")));
    }
    let edges: Vec<Edge> = perms
        .iter()
        .enumerate()
        .flat_map(|(i, p)| (0..degree).map(move |v| Edge::new(v, p.apply(v), i + 1)))
        .collect();
    let g = CoreGraph::from_edges_unchecked(rank, degree, &edges)?;
    if g.bfs_order(base).len() != degree {
        return Err(Error::NotConnected);
    }
    Ok(g.rerooted(base))
}

/// Permutation of the vertices induced by lifting `w` at every vertex.
pub fn coset_permutation(graph: &CoreGraph, w: &Word) -> Result<Permutation> {
    graph.check_word(w)?;
    if !graph.is_complete() {
        return Err(Error::NotACovering);
    }
    let images = (0..graph.vertex_count())
        .map(|v| graph.trace(v, w.letters()).expect("complete graphs lift every path"))
        .collect();
    Permutation::new(images)
}
