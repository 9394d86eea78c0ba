//! Abelianization: visibility in `F_n` and in subgroups, the transfer map
//! into the abelianization of a finite-index subgroup, and the chain-level
//! map back down to `Z^n`.
//!
//! A finite-index subgroup `H` is handled through its covering graph. Its
//! abelianization is identified with the first homology of the graph, and a
//! spanning tree fixes coordinates: a 1-cycle is recorded by its
//! coefficients on the non-tree edges, which is the same as its exponent
//! vector in the basis of the tree.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stallings::{coset_permutation, rewrite_in_basis, CoreGraph, Edge, SpanningTree};
use crate::word::{IntVector, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisTag {
    Ambient,
    Subgroup,
}

/// An element of `Z^n` (ambient) or of the abelianized subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianVector {
    pub basis: BasisTag,
    pub entries: IntVector,
}

impl AbelianVector {
    pub fn gcd(&self) -> u64 {
        self.entries.gcd()
    }

    pub fn is_visible(&self) -> bool {
        self.entries.is_visible()
    }
}

/// `sigma(w)` as an ambient vector.
pub fn abelianize(w: &Word) -> Result<AbelianVector> {
    Ok(AbelianVector {
        basis: BasisTag::Ambient,
        entries: w.sigma()?,
    })
}

/// The exponent sums of `w` have gcd one. The identity is never visible.
pub fn is_visible_ambient(w: &Word) -> bool {
    w.sigma().map(|v| v.is_visible()).unwrap_or(false)
}

/// Image of a member `w` in the abelianization of the subgroup, in the
/// coordinates of `tree`.
pub fn abelianize_in_subgroup(
    graph: &CoreGraph,
    tree: &SpanningTree,
    w: &Word,
) -> Result<AbelianVector> {
    Ok(AbelianVector {
        basis: BasisTag::Subgroup,
        entries: rewrite_in_basis(graph, tree, w)?.exponent_sums()?,
    })
}

/// Visibility of a member inside the subgroup. The answer does not depend
/// on the tree.
pub fn is_visible_in_subgroup(graph: &CoreGraph, tree: &SpanningTree, w: &Word) -> Result<bool> {
    Ok(abelianize_in_subgroup(graph, tree, w)?.is_visible())
}

/// Transfer of `w` into the abelianization of a finite-index subgroup.
///
/// For each cycle of the coset action of `w` the closed lift starting at
/// the cycle's smallest vertex `v` is the member
/// `path(v) . w^len . path(v)^-1`; the transfer is the sum of their images.
pub fn transfer(graph: &CoreGraph, tree: &SpanningTree, w: &Word) -> Result<AbelianVector> {
    transfer_with_representatives(graph, tree, w, |cycle| cycle[0])
}

/// [`transfer`] with a caller-chosen starting vertex for every cycle.
pub fn transfer_with_representatives<F>(
    graph: &CoreGraph,
    tree: &SpanningTree,
    w: &Word,
    mut pick: F,
) -> Result<AbelianVector>
where
    F: FnMut(&[usize]) -> usize,
{
    let perm = coset_permutation(graph, w)?;
    let mut total = IntVector::zero(graph.subgroup_rank());
    for cycle in perm.cycles() {
        let v = pick(&cycle);
        if !cycle.contains(&v) {
            return Err(Error::Parameter(format!("vertex {v} is not on cycle {cycle:?}")));
        }
        let to_v = tree.path_to(v);
        let member = to_v
            .multiply(&w.power(cycle.len() as i64))?
            .multiply(&to_v.inverse())?;
        total.add_assign_checked(&abelianize_in_subgroup(graph, tree, &member)?.entries)?;
    }
    Ok(AbelianVector {
        basis: BasisTag::Subgroup,
        entries: total,
    })
}

/// Integer coefficients on the edges of a graph, indexed like
/// [`CoreGraph::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainVector {
    pub coefficients: Vec<i64>,
}

impl ChainVector {
    /// Chain of the path reading `letters` from `start`.
    pub fn of_path(graph: &CoreGraph, start: usize, letters: &[i32]) -> Result<ChainVector> {
        let edges = graph.edges();
        let position = |e: &Edge| edges.binary_search_by_key(&(e.from, e.label), |f| (f.from, f.label));
        let mut coefficients = vec![0i64; edges.len()];
        let mut v = start;
        for &x in letters {
            let l = x.unsigned_abs() as usize;
            let (e, next) = if x > 0 {
                let t = graph.out(v, l).ok_or(Error::NotAMember)?;
                (Edge::new(v, t, l), t)
            } else {
                let s = graph.inc(v, l).ok_or(Error::NotAMember)?;
                (Edge::new(s, v, l), s)
            };
            let i = position(&e).expect("edge exists");
            coefficients[i] += x.signum() as i64;
            v = next;
        }
        Ok(ChainVector { coefficients })
    }

    /// Incoming minus outgoing coefficient sum at every vertex vanishes.
    pub fn is_cycle(&self, graph: &CoreGraph) -> bool {
        let mut balance = vec![0i64; graph.vertex_count()];
        for (e, c) in graph.edges().iter().zip(&self.coefficients) {
            balance[e.to] += c;
            balance[e.from] -= c;
        }
        balance.iter().all(|&b| b == 0)
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    pub rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn apply(&self, v: &IntVector) -> Result<IntVector> {
        self.rows
            .iter()
            .map(|row| {
                if row.len() != v.len() {
                    return Err(Error::RankMismatch(row.len(), v.len()));
                }
                row.iter().zip(v.entries()).try_fold(0i64, |acc, (a, b)| {
                    a.checked_mul(*b).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow)
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }
}

/// Matrix of the chain map that sends the lift of `x_i` at the base to
/// `e_i` and every other edge to zero, restricted to cycles and written in
/// the basis of `tree` (columns) and the ambient basis (rows).
pub fn phi_matrix(graph: &CoreGraph, tree: &SpanningTree) -> Result<IntMatrix> {
    if !graph.is_complete() {
        return Err(Error::NotACovering);
    }
    let n = graph.ambient_rank();
    let edges = graph.edges();
    let lifts: Vec<usize> = (1..=n)
        .map(|l| {
            let t = graph.out(0, l).ok_or(Error::NotACovering)?;
            Ok(edges.iter().position(|e| *e == Edge::new(0, t, l)).expect("edge exists"))
        })
        .collect::<Result<_>>()?;
    let basis = crate::stallings::basis(graph, tree)?;
    let mut rows = vec![vec![0i64; basis.len()]; n];
    for (j, b) in basis.iter().enumerate() {
        let chain = ChainVector::of_path(graph, 0, b.letters())?;
        for (i, &e) in lifts.iter().enumerate() {
            rows[i][j] = chain.coefficients[e];
        }
    }
    Ok(IntMatrix { rows })
}
