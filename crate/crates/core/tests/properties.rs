use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superpat_core::perm::{enumerate_class, is_embedding, perm, Permutation};
use superpat_core::plane_graph::{
    random_connected_plane_graph, random_maximal_plane_graph, validate_canonical_order,
};
use superpat_core::search::{insert, Checker};
use superpat_core::strahler::is_tree_augmented;
use superpat_core::{
    canonical_order, cperm, draw, orientation, recanonize, stretchperm, tree_augment, triangulate,
    universal_pointset, is_superpattern, mu,
};

fn any_perm(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn avoider(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max, any::<prop::sample::Index>()).prop_map(|(n, i)| {
        let class = enumerate_class(n, &[perm("213")]);
        class[i.index(class.len())].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stretched_triples_turn_clockwise(s in any_perm(12)) {
        let p = stretchperm(&s).unwrap();
        let v = s.values();
        let n = v.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    if v[i].max(v[j]) < v[k] {
                        prop_assert_eq!(orientation(&p[i], &p[k], &p[j]), -1);
                    }
                }
            }
        }
    }

    #[test]
    fn drawings_are_planar(seed in any::<u64>(), n in 3usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected_plane_graph(n, &mut rng);
        let d = draw(&g).unwrap();
        prop_assert!(d.crossing_free);
        let u = universal_pointset(n).unwrap();
        prop_assert!(d.points.iter().all(|p| u.contains(p)));
        let mut xs: Vec<u64> = d.points.iter().map(|p| p.x).collect();
        xs.sort_unstable();
        xs.dedup();
        prop_assert_eq!(xs.len(), n);
    }

    #[test]
    fn canonical_orders_give_213_avoiders(seed in any::<u64>(), n in 3usize..40) {
        let g = random_maximal_plane_graph(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let o = &g.outer_face;
        let co = canonical_order(&g, [o[0], o[1], o[2]]).unwrap();
        validate_canonical_order(&g, &co.order).unwrap();
        let re = recanonize(&g, &co).unwrap();
        validate_canonical_order(&g, &re.order).unwrap();
        let p = cperm(&re);
        prop_assert!(p.avoids_213());
        prop_assert_eq!(p.values()[0], 1);
        for v in 0..n {
            for w in 0..n {
                let anc = re.is_ancestor(v, w);
                prop_assert_eq!(anc, re.pre[v] < re.pre[w] && re.rpost[v] < re.rpost[w]);
            }
        }
    }

    #[test]
    fn triangulation_keeps_input(seed in any::<u64>(), n in 3usize..30) {
        let g = random_connected_plane_graph(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let (full, co) = triangulate(&g).unwrap();
        prop_assert!(full.is_maximal());
        prop_assert_eq!(full.edge_count(), 3 * n - 6);
        for (a, b) in g.edges() {
            prop_assert!(full.has_edge(a, b));
        }
        validate_canonical_order(&full, &co.order).unwrap();
    }

    #[test]
    fn tree_augmentation_invariants(p in avoider(8)) {
        let a = tree_augment(&p).unwrap();
        prop_assert!(a.perm.len() <= 2 * p.len() - 1);
        prop_assert!(a.perm.avoids_213());
        prop_assert!(is_tree_augmented(&a.perm));
        prop_assert!(is_embedding(&a.perm, &p, &a.provenance));
        prop_assert_eq!(a.real_mask.iter().filter(|&&r| r).count(), p.len());
        if p.len() >= 2 {
            prop_assert!(a.strahler() >= 2);
        }
    }

    #[test]
    fn checker_agrees_with_direct_containment(s in any_perm(9), k in 2usize..5) {
        let class = enumerate_class(k, &[perm("213")]);
        let direct = class.iter().all(|p| s.contains(p).is_some());
        prop_assert_eq!(Checker::new(class).check(s.values()), direct);
    }

    #[test]
    fn superpatterns_survive_insertion(n in 1usize..6, pos in any::<prop::sample::Index>(), val in any::<prop::sample::Index>()) {
        let m = mu(n);
        let len = m.len();
        let grown = insert(pos.index(len + 1), val.index(len + 1) + 1, m.values());
        prop_assert!(is_superpattern(&Permutation::new(grown).unwrap(), &[perm("213")], n));
    }
}
