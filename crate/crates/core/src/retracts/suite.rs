//! Randomized property suites.
//!
//! Each suite draws independent instances from `(seed, trial)` streams and
//! checks one inequality or identity per instance. A report keeps the pass
//! count and the first failing instance.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::random::{
    random_finite_index_subgroup, random_normal_subgroup, random_subgroup, random_visible_word, rng,
};
use super::{intersection_report, random_retract_with, smallest_power_in, Verdict};
use crate::abelian::{abelianize_in_subgroup, is_visible_in_subgroup, phi_matrix, transfer};
use crate::error::{Error, Result};
use crate::stallings::{coset_permutation, from_generators, pullback, spanning_tree, CoreGraph};

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "transfer-visibility",
    "transitive-case",
    "normal-case",
    "retract-rank2",
    "rank-bound-rk3",
    "hanna-neumann",
    "schreier-formula",
];

/// Size limits for generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteBounds {
    /// Largest index of a random finite-index subgroup.
    pub max_index: usize,
    /// Longest random test word.
    pub max_word_len: usize,
    /// Longest generator of a random subgroup `H`.
    pub max_gen_len: usize,
    /// Largest ambient rank for retract suites.
    pub max_rank: usize,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            max_index: 12,
            max_word_len: 40,
            max_gen_len: 30,
            max_rank: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<Value>,
    pub seed: u64,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.passes == self.trials
    }
}

/// `None` on success, the offending instance otherwise.
type Trial = fn(&mut ChaCha8Rng, &SuiteBounds) -> Result<Option<Value>>;

pub fn run_suite(name: &str, trials: usize, seed: u64, bounds: &SuiteBounds) -> Result<SuiteReport> {
    let trial: Trial = match name {
        "transfer-visibility" => transfer_visibility,
        "transitive-case" => transitive_case,
        "normal-case" => normal_case,
        "retract-rank2" => retract_rank2,
        "rank-bound-rk3" => rank_bound,
        "hanna-neumann" => hanna_neumann,
        "schreier-formula" => schreier_formula,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let outcomes: Vec<Option<Value>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(seed, i as u64);
            match trial(&mut r, bounds) {
                Ok(None) => None,
                Ok(Some(v)) => Some(json!({ "trial": i, "instance": v })),
                Err(e) => Some(json!({ "trial": i, "error": e.to_string() })),
            }
        })
        .collect();
    let passes = outcomes.iter().filter(|o| o.is_none()).count();
    let failures = outcomes.into_iter().flatten().take(1).collect();
    Ok(SuiteReport {
        suite: name.to_string(),
        trials,
        passes,
        failures,
        seed,
    })
}

fn fail_if(bad: bool, instance: impl FnOnce() -> Value) -> Result<Option<Value>> {
    Ok(bad.then(instance))
}

fn transfer_visibility(r: &mut ChaCha8Rng, b: &SuiteBounds) -> Result<Option<Value>> {
    let n = r.gen_range(2..=3);
    let h = random_finite_index_subgroup(r, n, b.max_index)?;
    let tree = spanning_tree(&h, None)?;
    let w = random_visible_word(r, n, b.max_word_len);
    let t = transfer(&h, &tree, &w)?;
    let down = phi_matrix(&h, &tree)?.apply(&t.entries)?;
    fail_if(!t.is_visible() || down != w.sigma()?, || {
        json!({ "graph": h.to_json(), "word": w, "transfer": t, "phi_transfer": down })
    })
}

fn transitive_case(r: &mut ChaCha8Rng, b: &SuiteBounds) -> Result<Option<Value>> {
    let (h, w) = loop {
        let n = r.gen_range(2..=3);
        let h = random_finite_index_subgroup(r, n, b.max_index)?;
        let w = random_visible_word(r, n, b.max_word_len);
        if coset_permutation(&h, &w)?.orbit_len(0) == h.vertex_count() {
            break (h, w);
        }
    };
    let m = h.vertex_count();
    let tree = spanning_tree(&h, None)?;
    let wm = w.power(m as i64);
    let t = transfer(&h, &tree, &w)?;
    let image = abelianize_in_subgroup(&h, &tree, &wm)?;
    let power = smallest_power_in(&h, &w)?;
    fail_if(t != image || !image.is_visible() || power != Some(m), || {
        json!({ "graph": h.to_json(), "word": w, "m": m, "transfer": t, "power_image": image })
    })
}

fn normal_case(r: &mut ChaCha8Rng, b: &SuiteBounds) -> Result<Option<Value>> {
    let n = r.gen_range(2..=3);
    let (h, group) = random_normal_subgroup(r, n)?;
    let w = random_visible_word(r, n, b.max_word_len);
    let m = smallest_power_in(&h, &w)?.ok_or(Error::NotACovering)?;
    let tree = spanning_tree(&h, None)?;
    let visible = is_visible_in_subgroup(&h, &tree, &w.power(m as i64))?;
    fail_if(!visible, || {
        json!({ "group": format!("{group:?}"), "graph": h.to_json(), "word": w, "m": m })
    })
}

fn random_rank(r: &mut ChaCha8Rng, b: &SuiteBounds) -> usize {
    r.gen_range(2..=b.max_rank.max(2))
}

fn retract_rank2(r: &mut ChaCha8Rng, b: &SuiteBounds) -> Result<Option<Value>> {
    let n = random_rank(r, b);
    let h = loop {
        let h = random_subgroup(r, n, 2, b.max_gen_len)?;
        if h.subgroup_rank() == 2 {
            break h;
        }
    };
    let (kind, rg) = if r.gen_bool(0.5) {
        let k = r.gen_range(1..n);
        let c = r.gen_range(0..=4);
        ("retract", random_retract_with(r, n, k, c)?.graph()?)
    } else {
        let w = random_visible_word(r, n, 12);
        ("cyclic", from_generators(n, &[w])?)
    };
    let rep = intersection_report(&h, &rg)?;
    fail_if(rep.retract_verdict != Verdict::Yes, || {
        json!({ "h": h.to_json(), "r_kind": kind, "r": rg.to_json(), "report": rep })
    })
}

fn rank_bound(r: &mut ChaCha8Rng, b: &SuiteBounds) -> Result<Option<Value>> {
    let n = random_rank(r, b);
    let count = r.gen_range(1..=3);
    let h = random_subgroup(r, n, count, b.max_gen_len)?;
    let k = r.gen_range(1..n);
    let c = r.gen_range(0..=4);
    let rg = random_retract_with(r, n, k, c)?.graph()?;
    let meet = pullback(&h, &rg)?;
    fail_if(meet.subgroup_rank() > h.subgroup_rank(), || {
        json!({ "h": h.to_json(), "r": rg.to_json(), "intersection": meet.to_json() })
    })
}

fn mixed_subgroup(r: &mut ChaCha8Rng, n: usize) -> Result<CoreGraph> {
    if r.gen_bool(0.5) {
        random_finite_index_subgroup(r, n, 6)
    } else {
        let count = r.gen_range(1..=3);
        random_subgroup(r, n, count, 12)
    }
}

fn hanna_neumann(r: &mut ChaCha8Rng, _b: &SuiteBounds) -> Result<Option<Value>> {
    let n = r.gen_range(2..=3);
    let a = mixed_subgroup(r, n)?;
    let c = mixed_subgroup(r, n)?;
    let meet = pullback(&a, &c)?;
    let lhs = (meet.subgroup_rank() as i64 - 1).max(0);
    let rhs = (a.subgroup_rank() as i64 - 1) * (c.subgroup_rank() as i64 - 1);
    fail_if(lhs > rhs, || {
        json!({ "a": a.to_json(), "b": c.to_json(), "intersection": meet.to_json() })
    })
}

fn schreier_formula(r: &mut ChaCha8Rng, b: &SuiteBounds) -> Result<Option<Value>> {
    let n = random_rank(r, b);
    let h = random_finite_index_subgroup(r, n, b.max_index)?;
    let index = h.index().ok_or(Error::NotACovering)?;
    fail_if(h.subgroup_rank() != index * (n - 1) + 1, || json!({ "graph": h.to_json() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert_eq!(
            run_suite("nope", 1, 0, &SuiteBounds::default()),
            Err(Error::UnknownSuite("nope".into()))
        );
    }

    #[test]
    fn small_runs_pass_and_are_deterministic() {
        for name in SUITES {
            let a = run_suite(name, 20, 3, &SuiteBounds::default()).unwrap();
            assert!(a.all_passed(), "{name}: {:?}", a.failures);
            let b = run_suite(name, 20, 3, &SuiteBounds::default()).unwrap();
            assert_eq!(a, b);
        }
    }
}
