use num_traits::Zero;
use permratio::enumeration::prufer_decode;
use permratio::expansion::{edge_deletion, expand_vertex, pendant_reduction};
use permratio::matching::{matching_sums_rooted, matching_weights};
use permratio::transforms::{caterpillar_gap, check_split};
use permratio::{
    canonical_code, laplacian_ratio, tree_permanent, BigRational, Graph, PermanentEngine, Tree,
};
use proptest::prelude::*;

/// Random labeled trees of order `2..=max`, drawn through Prufer sequences.
fn tree(max: usize) -> impl Strategy<Value = Tree> {
    (2..=max).prop_flat_map(|n| {
        prop::collection::vec(0..n, n - 2).prop_map(|seq| {
            if seq.is_empty() {
                Tree::from_edges(2, [(0, 1)]).unwrap()
            } else {
                prufer_decode(&seq)
            }
        })
    })
}

fn tree_and_perm(max: usize) -> impl Strategy<Value = (Tree, Vec<usize>)> {
    tree(max).prop_flat_map(|t| {
        let n = t.order();
        (Just(t), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// A tree plus a few extra edges.
fn connected_graph(max: usize) -> impl Strategy<Value = Graph> {
    tree(max).prop_flat_map(|t| {
        let n = t.order();
        prop::collection::vec((0..n, 0..n), 0..4).prop_map(move |extra| {
            let mut g = t.graph().clone();
            for (u, v) in extra {
                if u != v && !g.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_code_ignores_labels((t, perm) in tree_and_perm(14)) {
        prop_assert_eq!(canonical_code(&t), canonical_code(&t.relabel(&perm)));
    }

    #[test]
    fn ratio_ignores_labels((t, perm) in tree_and_perm(14)) {
        prop_assert_eq!(laplacian_ratio(&t).unwrap(), laplacian_ratio(&t.relabel(&perm)).unwrap());
    }

    #[test]
    fn matching_sums_ignore_the_root(t in tree(14), r in 0usize..14) {
        let root = r % t.order();
        prop_assert_eq!(matching_sums_rooted(&t, root), matching_sums_rooted(&t, 0));
    }

    #[test]
    fn tree_permanent_matches_ryser(t in tree(12)) {
        let engine = PermanentEngine::default();
        prop_assert_eq!(tree_permanent(&t), engine.graph(&t).unwrap());
    }

    #[test]
    fn matching_weights_are_well_formed(t in tree(14)) {
        let w = matching_weights(&t).unwrap();
        prop_assert_eq!(w.pi_k[0].clone(), BigRational::from_integer(1.into()));
        prop_assert!(w.pi_k.iter().all(|p| *p >= BigRational::zero()));
        prop_assert_eq!(w.ratio(), laplacian_ratio(&t).unwrap());
    }

    #[test]
    fn ratio_at_least_two(t in tree(14)) {
        // Stars attain the minimum.
        prop_assert!(laplacian_ratio(&t).unwrap() >= BigRational::from_integer(2.into()));
    }

    #[test]
    fn expansions_reproduce_the_permanent(g in connected_graph(8), v in 0usize..8) {
        let engine = PermanentEngine::default();
        let per = engine.graph(&g).unwrap();
        let v = v % g.order();
        prop_assert_eq!(expand_vertex(&engine, &g, v).unwrap(), per.clone());
        for &(a, b) in g.edges() {
            prop_assert_eq!(edge_deletion(&engine, &g, a, b).unwrap(), per.clone());
        }
        for p in (0..g.order()).filter(|&x| g.degree(x) == 1) {
            prop_assert_eq!(pendant_reduction(&engine, &g, p).unwrap(), per.clone());
        }
    }

    #[test]
    fn splitting_off_a_subtree_never_raises_the_ratio(t in tree(11), e in 0usize..10, flip in any::<bool>()) {
        let (a, b) = t.edges()[e % t.edges().len()];
        let (u, v) = if flip { (b, a) } else { (a, b) };
        let check = check_split(&t, u, v).unwrap();
        prop_assert!(check.pi_g1 >= check.pi_g2);
    }

    #[test]
    fn caterpillarizing_never_raises_the_ratio(t in tree(12)) {
        let spine = t.diametral_path();
        let (_, gap) = caterpillar_gap(&t, &spine).unwrap();
        prop_assert!(gap >= BigRational::zero());
    }
}
