//! Retracts of free groups and their intersections with subgroups.
//!
//! Whether an arbitrary subgroup is a retract is not decided here. The
//! verdicts in [`IntersectionReport`] use only two facts: a cyclic subgroup
//! `<u>` of a free group `H` is a retract iff `u` is visible in `H`, and a
//! proper retract of `H` has strictly smaller rank.

pub mod random;
mod suite;

pub use suite::{run_suite, SuiteBounds, SuiteReport, SUITES};

use rand::Rng;
use serde::Serialize;

use crate::abelian::{is_visible_ambient, is_visible_in_subgroup};
use crate::constructions::{l_m_graph, w_k};
use crate::error::{Error, Result};
use crate::stallings::{basis, coset_permutation, from_generators, pullback, spanning_tree, CoreGraph};
use crate::word::{IntVector, Word};

/// A retract `R = s(F_k)` of `F_n` given by a section `s` (images of the
/// abstract generators of `F_k` in `F_n`) and a retraction `ρ: F_n -> F_k`
/// with `ρ ∘ s = id`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractPresentation {
    pub ambient_rank: usize,
    pub section_images: Vec<Word>,
    pub retraction_images: Vec<Word>,
}

impl RetractPresentation {
    /// Checks the section property `ρ(s(x_i)) = x_i`.
    pub fn new(
        ambient_rank: usize,
        section_images: Vec<Word>,
        retraction_images: Vec<Word>,
    ) -> Result<RetractPresentation> {
        let k = section_images.len();
        if k == 0 {
            return Err(Error::Parameter("a retract needs at least one generator".into()));
        }
        if retraction_images.len() != ambient_rank {
            return Err(Error::RankMismatch(ambient_rank, retraction_images.len()));
        }
        if let Some(w) = section_images.iter().find(|w| w.rank() != ambient_rank) {
            return Err(Error::RankMismatch(ambient_rank, w.rank()));
        }
        if let Some(w) = retraction_images.iter().find(|w| w.rank() != k) {
            return Err(Error::RankMismatch(k, w.rank()));
        }
        for (i, s) in section_images.iter().enumerate() {
            let back = s.substitute(&retraction_images)?;
            if back != Word::generator(k, i + 1)? {
                return Err(Error::SectionProperty(format!(
                    "retraction sends section image {s} to {back}, expected generator {}",
                    i + 1
                )));
            }
        }
        Ok(RetractPresentation {
            ambient_rank,
            section_images,
            retraction_images,
        })
    }

    pub fn rank(&self) -> usize {
        self.section_images.len()
    }

    pub fn graph(&self) -> Result<CoreGraph> {
        from_generators(self.ambient_rank, &self.section_images)
    }

    /// `s(ρ(w))`, the retraction of `F_n` onto `R`.
    pub fn retract(&self, w: &Word) -> Result<Word> {
        w.substitute(&self.retraction_images)?.substitute(&self.section_images)
    }
}

/// `<w>` is a retract of `F_n` iff `w` is visible.
pub fn cyclic_retract_check(w: &Word) -> bool {
    is_visible_ambient(w)
}

/// Extended Euclid on `(a, b)`: `(g, x, y)` with `a x + b y = g >= 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Integer coefficients `c` with `sum c_i a_i = gcd(a)`.
pub fn bezout(a: &IntVector) -> Result<Vec<i64>> {
    let mut coeffs = vec![0i64; a.len()];
    let mut g = 0i64;
    for (i, &ai) in a.entries().iter().enumerate() {
        let (g2, x, y) = ext_gcd(g, ai);
        for c in coeffs.iter_mut().take(i) {
            *c = c.checked_mul(x).ok_or(Error::Overflow)?;
        }
        coeffs[i] = y;
        g = g2;
    }
    Ok(coeffs)
}

/// The cyclic retract `<w>` of a visible `w`, with the retraction
/// `x_i -> z^{c_i}` for Bezout coefficients of `sigma(w)`.
pub fn cyclic_retract(w: &Word) -> Result<RetractPresentation> {
    let sigma = w.sigma()?;
    if !sigma.is_visible() {
        return Err(Error::Parameter(format!("{w} is not visible, <{w}> is not a retract")));
    }
    let z = Word::generator(1, 1)?;
    let images = bezout(&sigma)?.into_iter().map(|c| z.power(c)).collect();
    RetractPresentation::new(w.rank(), vec![w.clone()], images)
}

/// Random retract of rank `k` in `F_n`.
///
/// The retraction fixes `x_1..x_k` and sends `x_j` (`j > k`) to a random
/// word `v_j` in `x_1..x_k`; the section sends `x_i` to `x_i c_i`, where
/// `c_i` is a product of conjugates of the kernel elements `x_j v_j^-1`.
/// `complexity` bounds word lengths and the number of conjugates; `0`
/// gives the free factor `<x_1, ..., x_k>`.
pub fn random_retract(n: usize, k: usize, seed: u64, complexity: usize) -> Result<RetractPresentation> {
    random_retract_with(&mut random::rng(seed, 0), n, k, complexity)
}

pub fn random_retract_with<R: Rng>(
    rng: &mut R,
    n: usize,
    k: usize,
    complexity: usize,
) -> Result<RetractPresentation> {
    if k < 1 || k >= n {
        return Err(Error::Parameter(format!("need 1 <= k <= n - 1, got n = {n}, k = {k}")));
    }
    const ATTEMPTS: usize = 16;
    for _ in 0..ATTEMPTS {
        let vs: Vec<Word> = (k + 1..=n)
            .map(|_| random::random_word(rng, k, complexity))
            .collect();
        let mut retraction: Vec<Word> = (1..=k).map(|i| Word::generator(k, i)).collect::<Result<_>>()?;
        retraction.extend(vs.iter().cloned());

        // x_j v_j^-1 with v_j read in F_n
        let kernel: Vec<Word> = vs
            .iter()
            .enumerate()
            .map(|(j, v)| Word::generator(n, k + 1 + j)?.multiply(&v.embed(n)?.inverse()))
            .collect::<Result<_>>()?;
        let section: Vec<Word> = (1..=k)
            .map(|i| {
                let factors = if complexity == 0 { 0 } else { rng.gen_range(0..=complexity) };
                let mut c = Word::identity(n)?;
                for _ in 0..factors {
                    let u = random::random_word(rng, n, complexity);
                    let z = &kernel[rng.gen_range(0..kernel.len())];
                    let z = if rng.gen_bool(0.5) { z.clone() } else { z.inverse() };
                    c = c.multiply(&u.multiply(&z)?.multiply(&u.inverse())?)?;
                }
                Word::generator(n, i)?.multiply(&c)
            })
            .collect::<Result<_>>()?;
        let r = RetractPresentation::new(n, section, retraction)?;
        if r.graph()?.subgroup_rank() == k {
            return Ok(r);
        }
    }
    Err(Error::Parameter(format!("no rank-{k} retract after {ATTEMPTS} draws")))
}

/// Smallest `m >= 1` with `w^m` in the subgroup, if any.
pub fn smallest_power_in(graph: &CoreGraph, w: &Word) -> Result<Option<usize>> {
    graph.check_word(w)?;
    if w.is_identity() {
        return Err(Error::TrivialWord);
    }
    if graph.is_complete() {
        return Ok(Some(coset_permutation(graph, w)?.orbit_len(0)));
    }
    let cyclic = from_generators(graph.ambient_rank(), std::slice::from_ref(w))?;
    let meet = pullback(graph, &cyclic)?;
    if meet.is_trivial() {
        return Ok(None);
    }
    let u = basis(&meet, &spanning_tree(&meet, None)?)?.remove(0);
    // u = w^{±m} and |w^m| >= m
    for m in 1..=u.len() {
        let p = w.power(m as i64);
        if p == u || p.inverse() == u {
            return Ok(Some(m));
        }
    }
    unreachable!("generator of <w> ∩ H is a power of w")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

/// Outcome of intersecting `H` with `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub rank_h: usize,
    pub rank_r: usize,
    pub rank_intersection: usize,
    pub intersection_basis: Vec<Word>,
    pub smallest_power: Option<usize>,
    pub intersection_visible_in_h: Option<bool>,
    pub retract_verdict: Verdict,
}

/// Intersect `H` with `R` and decide, where rank data allows, whether the
/// intersection is a retract of `H`.
pub fn intersection_report(h: &CoreGraph, r: &CoreGraph) -> Result<IntersectionReport> {
    let meet = pullback(h, r)?;
    let rank_h = h.subgroup_rank();
    let rank_i = meet.subgroup_rank();
    let meet_basis = basis(&meet, &spanning_tree(&meet, None)?)?;

    let mut visible = None;
    let verdict = if rank_i == 0 {
        Verdict::Yes
    } else if rank_i == 1 {
        let v = is_visible_in_subgroup(h, &spanning_tree(h, None)?, &meet_basis[0])?;
        visible = Some(v);
        if v {
            Verdict::Yes
        } else {
            Verdict::No
        }
    } else if rank_i > rank_h {
        Verdict::No
    } else if rank_i == rank_h {
        if meet.same_subgroup(h) {
            Verdict::Yes
        } else {
            Verdict::No
        }
    } else {
        Verdict::Undecided
    };

    let smallest_power = if r.subgroup_rank() == 1 {
        let w = basis(r, &spanning_tree(r, None)?)?.remove(0);
        smallest_power_in(h, &w)?
    } else {
        None
    };

    Ok(IntersectionReport {
        rank_h,
        rank_r: r.subgroup_rank(),
        rank_intersection: rank_i,
        intersection_basis: meet_basis,
        smallest_power,
        intersection_visible_in_h: visible,
        retract_verdict: verdict,
    })
}

/// Report for `H = L_m` (in the first two letters of `F_n`) against the
/// rank-`k` retract `R = <w_j> * <x_3, ..., x_{k+1}>`, `j = ⌊(m-1)/2⌋`.
pub fn bergman_counterexample(n: usize, m: usize, k: usize) -> Result<IntersectionReport> {
    let (h, r, w) = bergman_instance(n, m, k)?;
    let mut report = intersection_report(&h, &r.graph()?)?;
    report.smallest_power = smallest_power_in(&h, &w)?;
    Ok(report)
}

/// `(L_m, R, w_j)` for [`bergman_counterexample`].
pub fn bergman_instance(n: usize, m: usize, k: usize) -> Result<(CoreGraph, RetractPresentation, Word)> {
    if n < 2 || m < 3 || k < 1 || k >= n {
        return Err(Error::Parameter(format!(
            "need n >= 2, m >= 3, 1 <= k <= n - 1; got n = {n}, m = {m}, k = {k}"
        )));
    }
    let h = l_m_graph(m)?.embed(n)?;
    let w = w_k((m - 1) / 2)?.embed(n)?;
    let mut section = vec![w.clone()];
    for i in 3..=k + 1 {
        section.push(Word::generator(n, i)?);
    }
    // sigma(w_j) = (1, 0): x -> z_1, y -> 1, x_i -> z_{i-1} for 3 <= i <= k + 1
    let mut retraction = vec![Word::generator(k, 1)?, Word::identity(k)?];
    for i in 3..=n {
        retraction.push(if i <= k + 1 {
            Word::generator(k, i - 1)?
        } else {
            Word::identity(k)?
        });
    }
    let r = RetractPresentation::new(n, section, retraction)?;
    Ok((h, r, w))
}

/// `x_1^{k_1} ... x_n^{k_n}` is a test element iff every `k_i` is nonzero
/// and the gcd of the `k_i` is not one.
pub fn turner_power_word(exponents: &IntVector) -> bool {
    !exponents.is_empty() && exponents.entries().iter().all(|&k| k != 0) && exponents.gcd() != 1
}
