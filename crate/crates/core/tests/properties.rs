use fgr::abelian::{
    abelianize_in_subgroup, is_visible_in_subgroup, phi_matrix, transfer, transfer_with_representatives,
};
use fgr::retracts::random::{
    random_finite_index_subgroup, random_reduced_word, random_subgroup, random_visible_word, rng,
};
use fgr::stallings::{
    basis, coset_permutation, from_generators, pullback, rewrite_in_basis, spanning_tree, LabeledGraph,
};
use fgr::{CoreGraph, Edge, Word};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    let letter = (1..=rank as i32).prop_flat_map(|l| prop_oneof![Just(l), Just(-l)]);
    prop::collection::vec(letter, 0..=max_len).prop_map(move |v| Word::new(rank, v).unwrap())
}

fn raw_letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    let letter = (1..=rank as i32).prop_flat_map(|l| prop_oneof![Just(l), Just(-l)]);
    prop::collection::vec(letter, 0..=max_len)
}

/// Random spanning tree by Kruskal over shuffled edges.
fn random_tree_edges<R: Rng>(r: &mut R, g: &CoreGraph) -> Vec<Edge> {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut edges = g.edges();
    edges.shuffle(r);
    let mut tree = Vec::new();
    for e in edges {
        let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
        if a != b {
            parent[a] = b;
            tree.push(e);
        }
    }
    tree
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduce_is_idempotent_and_shortens(raw in raw_letters(3, 40)) {
        let w = Word::new(3, raw.clone()).unwrap();
        prop_assert!(w.len() <= raw.len());
        prop_assert_eq!(Word::new(3, w.letters().to_vec()).unwrap(), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != -p[1]));
    }

    #[test]
    fn inverse_cancels(u in word(3, 30)) {
        prop_assert!(u.multiply(&u.inverse()).unwrap().is_identity());
        prop_assert!(u.inverse().multiply(&u).unwrap().is_identity());
    }

    #[test]
    fn sigma_is_a_homomorphism(u in word(4, 30), v in word(4, 30)) {
        let lhs = u.multiply(&v).unwrap().sigma().unwrap();
        let rhs = u.sigma().unwrap().checked_add(&v.sigma().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(u.commutator(&v).unwrap().sigma().unwrap().0, vec![0; 4]);
    }

    #[test]
    fn power_laws(u in word(2, 12), k in -6i64..6) {
        prop_assert_eq!(u.power(-k), u.power(k).inverse());
        prop_assert_eq!(u.power(k).multiply(&u).unwrap(), u.power(k + 1));
    }

    #[test]
    fn render_parse_round_trip(u in word(26, 40)) {
        prop_assert_eq!(Word::parse(&u.to_string(), 26).unwrap(), u);
    }

    #[test]
    fn generated_subgroup_contains_products(seed in any::<u64>()) {
        let mut r = rng(seed, 0);
        let n = r.gen_range(2..=4);
        let count = r.gen_range(1..=4);
        let gens: Vec<Word> = (0..count)
            .map(|_| { let l = r.gen_range(1..=15); random_reduced_word(&mut r, n, l) })
            .collect();
        let g = from_generators(n, &gens).unwrap();
        prop_assert!(g.subgroup_rank() <= gens.len());
        for s in &gens {
            prop_assert!(g.contains(s).unwrap());
        }
        for _ in 0..100 {
            let mut w = Word::identity(n).unwrap();
            for _ in 0..r.gen_range(0..5) {
                let s = gens.choose(&mut r).unwrap();
                let s = if r.gen_bool(0.5) { s.clone() } else { s.inverse() };
                w = w.multiply(&s).unwrap();
            }
            prop_assert!(g.contains(&w).unwrap());
        }
    }

    #[test]
    fn basis_rewrite_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed, 1);
        let n = r.gen_range(2..=3);
        let g = random_subgroup(&mut r, n, 3, 12).unwrap();
        let tree = spanning_tree(&g, Some(&random_tree_edges(&mut r, &g))).unwrap();
        let b = basis(&g, &tree).unwrap();
        prop_assert_eq!(b.len(), g.subgroup_rank());
        let mut w = Word::identity(n).unwrap();
        for _ in 0..r.gen_range(0..8) {
            let s = b.choose(&mut r).unwrap();
            w = w.multiply(&if r.gen_bool(0.5) { s.clone() } else { s.inverse() }).unwrap();
        }
        let rw = rewrite_in_basis(&g, &tree, &w).unwrap();
        prop_assert_eq!(rw.evaluate(&b).unwrap(), w);
    }

    #[test]
    fn finite_index_satisfies_schreier(seed in any::<u64>()) {
        let mut r = rng(seed, 2);
        let n = r.gen_range(2..=4);
        let g = random_finite_index_subgroup(&mut r, n, 12).unwrap();
        prop_assert_eq!(g.subgroup_rank(), g.index().unwrap() * (n - 1) + 1);
    }

    #[test]
    fn pullback_is_intersection(seed in any::<u64>()) {
        let mut r = rng(seed, 3);
        let n = 2;
        let a = random_finite_index_subgroup(&mut r, n, 5).unwrap();
        let b = if r.gen_bool(0.5) {
            random_finite_index_subgroup(&mut r, n, 5).unwrap()
        } else {
            random_subgroup(&mut r, n, 2, 6).unwrap()
        };
        let meet = pullback(&a, &b).unwrap();
        prop_assert_eq!(pullback(&b, &a).unwrap(), meet.clone());
        // random words, plus products of basis words of A (so some land in A)
        let ba = basis(&a, &spanning_tree(&a, None).unwrap()).unwrap();
        for i in 0..100 {
            let w = if i % 2 == 0 {
                let l = r.gen_range(0..10);
                random_reduced_word(&mut r, n, l)
            } else {
                let mut w = Word::identity(n).unwrap();
                for _ in 0..r.gen_range(1..4) {
                    w = w.multiply(ba.choose(&mut r).unwrap()).unwrap();
                }
                w
            };
            prop_assert_eq!(
                meet.contains(&w).unwrap(),
                a.contains(&w).unwrap() && b.contains(&w).unwrap()
            );
        }
        let lhs = (meet.subgroup_rank() as i64 - 1).max(0);
        prop_assert!(lhs <= (a.subgroup_rank() as i64 - 1) * (b.subgroup_rank() as i64 - 1));
    }

    #[test]
    fn coset_action_is_a_homomorphism(seed in any::<u64>(), u in word(2, 20), v in word(2, 20)) {
        let mut r = rng(seed, 4);
        let g = random_finite_index_subgroup(&mut r, 2, 10).unwrap();
        let pu = coset_permutation(&g, &u).unwrap();
        let pv = coset_permutation(&g, &v).unwrap();
        prop_assert_eq!(coset_permutation(&g, &u.multiply(&v).unwrap()).unwrap(), pu.then(&pv));
        prop_assert_eq!(g.contains(&u).unwrap(), pu.apply(0) == 0);
    }

    #[test]
    fn fold_is_confluent(seed in any::<u64>()) {
        let mut r = rng(seed, 5);
        let n = r.gen_range(2..=3);
        let gens: Vec<Word> = (0..r.gen_range(1..=4))
            .map(|_| { let l = r.gen_range(1..=10); random_reduced_word(&mut r, n, l) })
            .collect();
        let raw = LabeledGraph::bouquet(n, &gens).unwrap();
        let reference = raw.fold().unwrap();
        // shuffle edge order and rename non-base vertices
        let mut names: Vec<usize> = (1..raw.vertex_count).collect();
        names.shuffle(&mut r);
        let rename = |v: usize| if v == 0 { 0 } else { names[v - 1] };
        let mut edges: Vec<Edge> = raw.edges.iter().map(|e| Edge::new(rename(e.from), rename(e.to), e.label)).collect();
        edges.shuffle(&mut r);
        let shuffled = LabeledGraph { rank: n, vertex_count: raw.vertex_count, edges };
        prop_assert_eq!(shuffled.fold().unwrap(), reference.clone());
        prop_assert_eq!(reference.canonicalize(), reference);
    }

    #[test]
    fn commuting_diagram_and_visibility(seed in any::<u64>()) {
        let mut r = rng(seed, 6);
        let n = r.gen_range(2..=3);
        let g = random_finite_index_subgroup(&mut r, n, 12).unwrap();
        let tree = spanning_tree(&g, None).unwrap();
        let w = random_visible_word(&mut r, n, 40);
        let t = transfer(&g, &tree, &w).unwrap();
        prop_assert_eq!(phi_matrix(&g, &tree).unwrap().apply(&t.entries).unwrap(), w.sigma().unwrap());
        prop_assert_eq!(t.gcd(), 1);

        // the gcd does not depend on the tree
        let other = spanning_tree(&g, Some(&random_tree_edges(&mut r, &g))).unwrap();
        let t2 = transfer(&g, &other, &w).unwrap();
        prop_assert_eq!(t2.gcd(), t.gcd());
        prop_assert_eq!(phi_matrix(&g, &other).unwrap().apply(&t2.entries).unwrap(), w.sigma().unwrap());

        // and neither does the choice of starting vertex on each cycle
        let mut picks = rng(seed, 7);
        let t3 = transfer_with_representatives(&g, &tree, &w, |c| *c.choose(&mut picks).unwrap()).unwrap();
        prop_assert_eq!(t3, t);
    }

    #[test]
    fn subgroup_abelianization_is_additive(seed in any::<u64>()) {
        let mut r = rng(seed, 8);
        let g = random_subgroup(&mut r, 2, 3, 10).unwrap();
        let tree = spanning_tree(&g, None).unwrap();
        let b = basis(&g, &tree).unwrap();
        let pick = |r: &mut rand_chacha::ChaCha8Rng| {
            let mut w = Word::identity(2).unwrap();
            for _ in 0..r.gen_range(0..5) {
                let s = b.choose(r).unwrap();
                w = w.multiply(&if r.gen_bool(0.5) { s.clone() } else { s.inverse() }).unwrap();
            }
            w
        };
        let (u, v) = (pick(&mut r), pick(&mut r));
        let sum = abelianize_in_subgroup(&g, &tree, &u).unwrap().entries
            .checked_add(&abelianize_in_subgroup(&g, &tree, &v).unwrap().entries).unwrap();
        prop_assert_eq!(abelianize_in_subgroup(&g, &tree, &u.multiply(&v).unwrap()).unwrap().entries, sum);
        // visibility in H does not depend on the tree either
        let other = spanning_tree(&g, Some(&random_tree_edges(&mut r, &g))).unwrap();
        if !u.is_identity() {
            prop_assert_eq!(
                is_visible_in_subgroup(&g, &tree, &u).unwrap(),
                is_visible_in_subgroup(&g, &other, &u).unwrap()
            );
        }
    }
}
