use std::collections::{HashMap, VecDeque};

use super::fold::core_of;
use super::{CoreGraph, Edge};
use crate::error::{Error, Result};

/// Core graph of the intersection of the two subgroups.
///
/// Explores the fiber product only from the pair of base points; the
/// trivial intersection comes back as [`CoreGraph::trivial`].
pub fn pullback(a: &CoreGraph, b: &CoreGraph) -> Result<CoreGraph> {
    let n = a.ambient_rank();
    if n != b.ambient_rank() {
        return Err(Error::RankMismatch(n, b.ambient_rank()));
    }
    let mut ids: HashMap<(usize, usize), usize> = HashMap::from([((0, 0), 0)]);
    let mut pairs = vec![(0, 0)];
    let mut queue = VecDeque::from([0]);
    let mut edges = Vec::new();
    let mut visit = |p: (usize, usize), pairs: &mut Vec<_>, queue: &mut VecDeque<_>| {
        *ids.entry(p).or_insert_with(|| {
            pairs.push(p);
            queue.push_back(pairs.len() - 1);
            pairs.len() - 1
        })
    };
    while let Some(id) = queue.pop_front() {
        let (u, v) = pairs[id];
        for l in 1..=n {
            if let (Some(s), Some(t)) = (a.out(u, l), b.out(v, l)) {
                let target = visit((s, t), &mut pairs, &mut queue);
                edges.push(Edge::new(id, target, l));
            }
            // incoming edges are recorded when their origin is expanded
            if let (Some(s), Some(t)) = (a.inc(u, l), b.inc(v, l)) {
                visit((s, t), &mut pairs, &mut queue);
            }
        }
    }
    core_of(n, pairs.len(), 0, &edges)
}

#[cfg(test)]
mod tests {
    use super::super::from_generators;
    use super::*;
    use crate::word::Word;

    fn p(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn self_intersection_is_diagonal() {
        let g = from_generators(2, &[p("a"), p("baBB"), p("bbaB")]).unwrap();
        assert_eq!(pullback(&g, &g).unwrap(), g);
    }

    #[test]
    fn k_meets_w1() {
        let k = from_generators(2, &[p("a"), p("baBB"), p("bbaB")]).unwrap();
        let r = from_generators(2, &[p("a[a,b]")]).unwrap();
        let i = pullback(&k, &r).unwrap();
        assert_eq!(i.subgroup_rank(), 1);
        assert_eq!(i, from_generators(2, &[p("(a[a,b])^2")]).unwrap());
        assert_eq!(pullback(&r, &k).unwrap(), i);
    }

    #[test]
    fn disjoint_cyclic_subgroups() {
        let a = from_generators(2, &[p("a")]).unwrap();
        let b = from_generators(2, &[p("b")]).unwrap();
        assert_eq!(pullback(&a, &b).unwrap(), CoreGraph::trivial(2).unwrap());
    }

    #[test]
    fn rank_mismatch() {
        let a = CoreGraph::rose(2).unwrap();
        let b = CoreGraph::rose(3).unwrap();
        assert_eq!(pullback(&a, &b), Err(Error::RankMismatch(2, 3)));
    }
}
