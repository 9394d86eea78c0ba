//! Seeded instance generators.
//!
//! Every trial draws from its own ChaCha stream `(seed, trial)`, so a suite
//! gives the same instances however the trials are scheduled.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::is_visible_ambient;
use crate::error::Result;
use crate::perm::Permutation;
use crate::stallings::{schreier_graph, CoreGraph};
use crate::word::Word;

/// Independent generator for trial `stream` of run `seed`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniformly random reduced word of exactly `len` letters.
pub fn random_reduced_word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Word {
    let mut letters: Vec<i32> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = rng.gen_range(1..=rank as i32);
        let x = if rng.gen_bool(0.5) { l } else { -l };
        if letters.last() != Some(&-x) {
            letters.push(x);
        }
    }
    Word::new(rank, letters).expect("letters are in range")
}

/// Reduced word whose length is uniform in `0..=max_len`.
pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    random_reduced_word(rng, rank, len)
}

/// Visible word of length `1..=max_len` (rejection sampling).
pub fn random_visible_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    loop {
        let len = rng.gen_range(1..=max_len.max(1));
        let w = random_reduced_word(rng, rank, len);
        if is_visible_ambient(&w) {
            return w;
        }
    }
}

pub fn random_permutation<R: Rng>(rng: &mut R, degree: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffle is a bijection")
}

fn is_transitive(perms: &[Permutation], degree: usize) -> bool {
    let mut seen = vec![false; degree];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(p) = stack.pop() {
        for g in perms {
            for q in [g.apply(p), g.inverse().apply(p)] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// `rank` permutations of `degree` points generating a transitive group.
pub fn random_transitive_action<R: Rng>(rng: &mut R, rank: usize, degree: usize) -> Vec<Permutation> {
    loop {
        let perms: Vec<Permutation> = (0..rank).map(|_| random_permutation(rng, degree)).collect();
        if is_transitive(&perms, degree) {
            return perms;
        }
    }
}

/// Point stabilizer of a random transitive action of degree `1..=max_index`.
pub fn random_finite_index_subgroup<R: Rng>(rng: &mut R, rank: usize, max_index: usize) -> Result<CoreGraph> {
    let degree = rng.gen_range(1..=max_index.max(1));
    schreier_graph(rank, &random_transitive_action(rng, rank, degree), 0)
}

/// Subgroup generated by `count` random words of length `1..=max_len`.
pub fn random_subgroup<R: Rng>(rng: &mut R, rank: usize, count: usize, max_len: usize) -> Result<CoreGraph> {
    let gens: Vec<Word> = (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            random_reduced_word(rng, rank, len)
        })
        .collect();
    crate::stallings::from_generators(rank, &gens)
}

/// Small finite groups given by permutation generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallGroup {
    Cyclic(usize),
    Dihedral(usize),
    Klein,
    Alternating4,
}

impl SmallGroup {
    /// All families of order at most 12 used by the normal-subgroup suite.
    pub fn catalogue() -> Vec<SmallGroup> {
        let mut out: Vec<SmallGroup> = (2..=12).map(SmallGroup::Cyclic).collect();
        out.extend((3..=6).map(SmallGroup::Dihedral));
        out.push(SmallGroup::Klein);
        out.push(SmallGroup::Alternating4);
        out
    }

    fn generators(self) -> Vec<Permutation> {
        let p = |v: Vec<usize>| Permutation::new(v).expect("valid generator");
        match self {
            SmallGroup::Cyclic(d) => vec![p((0..d).map(|i| (i + 1) % d).collect())],
            SmallGroup::Dihedral(d) => vec![
                p((0..d).map(|i| (i + 1) % d).collect()),
                p((0..d).map(|i| (d - i) % d).collect()),
            ],
            SmallGroup::Klein => vec![p(vec![1, 0, 3, 2]), p(vec![2, 3, 0, 1])],
            SmallGroup::Alternating4 => vec![p(vec![1, 2, 0, 3]), p(vec![1, 0, 3, 2])],
        }
    }

    /// All elements, by closure under the generators.
    pub fn elements(self) -> Vec<Permutation> {
        closure(&self.generators())
    }
}

fn closure(gens: &[Permutation]) -> Vec<Permutation> {
    let degree = gens[0].degree();
    let mut elems = vec![Permutation::identity(degree)];
    let mut seen: std::collections::HashSet<Permutation> = elems.iter().cloned().collect();
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let h = elems[i].then(g);
            if seen.insert(h.clone()) {
                elems.push(h);
            }
        }
        i += 1;
    }
    elems
}

/// Regular right action of the subgroup generated by `images` on its own
/// elements; the stabilizer of the identity is the kernel of
/// `x_i -> images[i]`, a normal subgroup.
pub fn regular_action(images: &[Permutation]) -> Vec<Permutation> {
    let elems = closure(images);
    let index: std::collections::HashMap<&Permutation, usize> =
        elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    images
        .iter()
        .map(|g| {
            Permutation::new(elems.iter().map(|h| index[&h.then(g)]).collect())
                .expect("right multiplication is a bijection")
        })
        .collect()
}

/// Kernel of a random map from `F_rank` onto a nontrivial subgroup of a
/// random small group, with the group used.
pub fn random_normal_subgroup<R: Rng>(rng: &mut R, rank: usize) -> Result<(CoreGraph, SmallGroup)> {
    let catalogue = SmallGroup::catalogue();
    loop {
        let group = *catalogue.choose(rng).expect("nonempty catalogue");
        let elems = group.elements();
        let images: Vec<Permutation> = (0..rank).map(|_| elems.choose(rng).cloned().expect("nonempty")).collect();
        if images.iter().all(Permutation::is_identity) {
            continue;
        }
        return Ok((schreier_graph(rank, &regular_action(&images), 0)?, group));
    }
}
