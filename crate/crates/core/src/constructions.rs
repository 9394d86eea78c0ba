//! Explicit subgroups of `F_2 = <x, y>` built from the dihedral quotient.
//!
//! `Γ_m` is the `m`-sheeted covering with vertices `v_0..v_{m-1}`, an
//! `x`-edge `e_i: v_i -> v_{-i}` and a `y`-edge `f_i: v_i -> v_{i+1}`
//! (indices mod `m`). Its fundamental group at `v_0` is `H_m`, the preimage
//! of the reflection subgroup `<t>` under `F_2 -> D_m`, `x -> t`, `y -> s`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::stallings::{from_generators, spanning_tree, BasisWord, CoreGraph, Edge, SpanningTree};
use crate::word::Word;

const X: i32 = 1;
const Y: i32 = 2;

/// Element `t^reflection s^rotation` of the dihedral group of order `2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DihedralElement {
    pub reflection: bool,
    pub rotation: u64,
    pub m: u64,
}

impl DihedralElement {
    pub fn identity(m: u64) -> Self {
        DihedralElement {
            reflection: false,
            rotation: 0,
            m,
        }
    }

    pub fn t(m: u64) -> Self {
        DihedralElement {
            reflection: true,
            ..Self::identity(m)
        }
    }

    pub fn s(m: u64) -> Self {
        DihedralElement {
            rotation: 1 % m,
            ..Self::identity(m)
        }
    }

    /// `t^a s^b`, reducing `b` mod `m`.
    pub fn new(reflection: bool, rotation: i64, m: u64) -> Self {
        DihedralElement {
            reflection,
            rotation: rotation.rem_euclid(m as i64) as u64,
            m,
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.reflection && self.rotation == 0
    }

    /// `s^a t = t s^-a`.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.m, other.m);
        let a = if other.reflection {
            (self.m - self.rotation) % self.m
        } else {
            self.rotation
        };
        DihedralElement {
            reflection: self.reflection ^ other.reflection,
            rotation: (a + other.rotation) % self.m,
            m: self.m,
        }
    }

    pub fn inverse(&self) -> Self {
        if self.reflection {
            *self
        } else {
            DihedralElement::new(false, -(self.rotation as i64), self.m)
        }
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.reflection, self.rotation) {
            (false, 0) => write!(f, "1"),
            (true, 0) => write!(f, "t"),
            (false, r) => write!(f, "s^{r}"),
            (true, r) => write!(f, "t s^{r}"),
        }
    }
}

fn check_m(m: usize, least: usize) -> Result<()> {
    if m < least {
        return Err(Error::Parameter(format!("m = {m} must be at least {least}")));
    }
    Ok(())
}

/// `Γ_m` with the vertex numbering `v_i = i`.
pub fn gamma_m(m: usize) -> Result<CoreGraph> {
    check_m(m, 2)?;
    let mut edges = Vec::with_capacity(2 * m);
    for i in 0..m {
        edges.push(Edge::new(i, (m - i) % m, 1));
        edges.push(Edge::new(i, (i + 1) % m, 2));
    }
    CoreGraph::from_edges(2, m, &edges)
}

/// Image of a rank-2 word under `x -> t`, `y -> s` in `D_m`.
pub fn psi_m(w: &Word, m: usize) -> Result<DihedralElement> {
    if w.rank() != 2 {
        return Err(Error::RankMismatch(2, w.rank()));
    }
    check_m(m, 1)?;
    let m = m as u64;
    let gens = [DihedralElement::t(m), DihedralElement::s(m)];
    Ok(w.letters().iter().fold(DihedralElement::identity(m), |acc, &x| {
        let g = gens[x.unsigned_abs() as usize - 1];
        acc.mul(&if x > 0 { g } else { g.inverse() })
    }))
}

/// The tree `{f_0, ..., f_{m-2}}` of `Γ_m`.
pub fn h_m_tree_edges(m: usize) -> Vec<Edge> {
    (0..m.saturating_sub(1)).map(|i| Edge::new(i, i + 1, 2)).collect()
}

/// `H_m` as `Γ_m` together with the tree `{f_0, ..., f_{m-2}}`, whose basis
/// is `x, t_1, ..., t_{m-1}, y^m`.
pub fn h_m_graph(m: usize) -> Result<(CoreGraph, SpanningTree)> {
    let g = gamma_m(m)?;
    let tree = spanning_tree(&g, Some(&h_m_tree_edges(m)))?;
    Ok((g, tree))
}

/// `t_i = y^i x y^-(m-i)`.
pub fn t_word(m: usize, i: usize) -> Word {
    let mut letters = vec![Y; i];
    letters.push(X);
    letters.extend(std::iter::repeat_n(-Y, m - i));
    Word::new(2, letters).expect("rank-2 letters")
}

/// `x, t_1, ..., t_{m-1}, y^m`.
pub fn h_m_basis(m: usize) -> Vec<Word> {
    let mut out = vec![Word::generator(2, 1).expect("rank 2")];
    out.extend((1..m).map(|i| t_word(m, i)));
    out.push(Word::new(2, vec![Y; m]).expect("rank 2"));
    out
}

/// Generators of the action of `F_2` on the right cosets of `<t>` in `D_m`,
/// found by enumerating cosets; coset `0` is `<t>` itself.
pub fn dihedral_coset_action(m: usize) -> Result<Vec<Permutation>> {
    check_m(m, 1)?;
    let mm = m as u64;
    let t = DihedralElement::t(mm);
    let gens = [t, DihedralElement::s(mm)];
    let key = |g: DihedralElement| g.min(t.mul(&g));
    let mut index: HashMap<DihedralElement, usize> = HashMap::new();
    let mut reps = vec![DihedralElement::identity(mm)];
    index.insert(key(reps[0]), 0);
    let mut images: [Vec<Option<usize>>; 2] = [vec![], vec![]];
    let mut queue = VecDeque::from([0]);
    while let Some(c) = queue.pop_front() {
        for (i, g) in gens.iter().enumerate() {
            let next = reps[c].mul(g);
            let id = *index.entry(key(next)).or_insert_with(|| {
                reps.push(next);
                queue.push_back(reps.len() - 1);
                reps.len() - 1
            });
            if images[i].len() <= c {
                images[i].resize(c + 1, None);
            }
            images[i][c] = Some(id);
        }
    }
    images
        .into_iter()
        .map(|img| Permutation::new(img.into_iter().map(|x| x.expect("every coset expanded")).collect()))
        .collect()
}

/// `L_m`: `H_{m-1}` for even `m`, `<x, t_1, ..., t_{m-1}>` inside `H_m` for
/// odd `m`. Both have rank `m`.
pub fn l_m_graph(m: usize) -> Result<CoreGraph> {
    check_m(m, 3)?;
    if m.is_multiple_of(2) {
        Ok(h_m_graph(m - 1)?.0)
    } else {
        let mut gens = h_m_basis(m);
        gens.pop();
        from_generators(2, &gens)
    }
}

/// `w_k = x [x, y]^k`.
pub fn w_k(k: usize) -> Result<Word> {
    if k < 1 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    let x = Word::generator(2, 1)?;
    let y = Word::generator(2, 2)?;
    x.multiply(&x.commutator(&y)?.power(k as i64))
}

/// Closed form of `w_k^2` for `m = 2k + 1` over the basis symbols
/// `x = 1`, `t_j = j + 1`, `y^m = m + 1`:
/// `x^2 (t_{m-1}^-1 t_{m-2} ... t_2^-1 t_1) (t_{m-1} t_{m-2}^-1 ... t_2 t_1^-1)`.
pub fn lemma33_word(m: usize) -> Result<BasisWord> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::Parameter(format!("m = {m} must be odd and at least 3")));
    }
    let t = |j: usize, sign: i32| sign * (j as i32 + 1);
    let mut letters = vec![1, 1];
    letters.extend((1..m).rev().map(|j| t(j, if j % 2 == 0 { -1 } else { 1 })));
    letters.extend((1..m).rev().map(|j| t(j, if j % 2 == 0 { 1 } else { -1 })));
    Ok(BasisWord::new(m + 1, letters))
}
