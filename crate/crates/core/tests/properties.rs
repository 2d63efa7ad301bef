use proptest::prelude::*;

use steklov_trees::enumerate::{free_tree_codes, random_subtree, random_tree};
use steklov_trees::graph::{
    canonical_code, diameter, leaves, matching_number, tree_from_code, BoundarySet, FamilySpec,
    TreeGraph,
};
use steklov_trees::spectra::{
    dtn_matrix, eigenvalues_sym, harmonic_extension, laplacian_matrix, laplacian_spectrum,
    leaf_steklov_spectrum, normal_derivative, BoundaryFunction,
};

fn tree_strategy(max_n: usize) -> impl Strategy<Value = TreeGraph> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| random_tree(n, seed))
}

fn boundary_strategy() -> impl Strategy<Value = (TreeGraph, BoundarySet)> {
    (tree_strategy(14), any::<u64>()).prop_map(|(t, mask)| {
        let n = t.order();
        let mut members: Vec<usize> = (0..n).filter(|&v| mask >> (v % 64) & 1 == 1).collect();
        if members.is_empty() {
            members.push((mask as usize) % n);
        }
        let b = BoundarySet::new(&t, members).unwrap();
        (t, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dtn_is_psd_with_constants_in_kernel((t, b) in boundary_strategy()) {
        let dtn = dtn_matrix(&t, &b).unwrap();
        let ones = vec![1.0; b.len()];
        let image = dtn.apply(&ones).unwrap();
        prop_assert!(image.iter().all(|x| x.abs() < 1e-9));
        let spec = eigenvalues_sym(&dtn).unwrap();
        prop_assert!(spec.values[0].abs() < 1e-9);
        prop_assert!(spec.values.iter().all(|&x| x > -1e-9));
        for i in 0..b.len() {
            for j in 0..b.len() {
                prop_assert!((dtn.get(i, j) - dtn.get(j, i)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn schur_complement_matches_harmonic_extension(
        (t, b) in boundary_strategy(),
        raw in proptest::collection::vec(-1.0f64..1.0, 64),
    ) {
        let f = BoundaryFunction(raw[..b.len()].to_vec());
        let g = harmonic_extension(&t, &b, &f).unwrap();
        let l = laplacian_matrix(&t);
        let lg = l.apply(&g).unwrap();
        for (v, x) in lg.iter().enumerate() {
            if !b.contains(v) {
                prop_assert!(x.abs() < 1e-9);
            }
        }
        let via_extension = normal_derivative(&t, &b, &g);
        let via_schur = dtn_matrix(&t, &b).unwrap().apply(&f.0).unwrap();
        for (x, y) in via_extension.iter().zip(&via_schur) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn laplacian_trace_and_kernel(t in tree_strategy(16)) {
        let s = laplacian_spectrum(&t).unwrap();
        let trace: f64 = s.values.iter().sum();
        prop_assert!((trace - 2.0 * (t.order() as f64 - 1.0)).abs() < 1e-8);
        prop_assert!(s.values[0].abs() < 1e-9);
        prop_assert!(s.values[1] > 1e-9);
    }

    #[test]
    fn subtree_monotonicity(t in tree_strategy(14), seed in any::<u64>()) {
        let sub = random_subtree(&t, seed);
        let (s, s_sub) = (leaf_steklov_spectrum(&t).unwrap(), leaf_steklov_spectrum(&sub).unwrap());
        for i in 1..=s_sub.len() {
            prop_assert!(s.nth(i).unwrap() <= s_sub.nth(i).unwrap() + 1e-8);
        }
        let (l, l_sub) = (laplacian_spectrum(&t).unwrap(), laplacian_spectrum(&sub).unwrap());
        for i in 1..=l_sub.len() {
            prop_assert!(l.nth(i).unwrap() <= l_sub.nth(i).unwrap() + 1e-8);
        }
    }

    #[test]
    fn canonical_code_ignores_labels(t in tree_strategy(16), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..t.order()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let relabelled = t.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_code(&t), canonical_code(&relabelled));
        prop_assert_eq!(
            leaf_steklov_spectrum(&t).unwrap().values.len(),
            leaf_steklov_spectrum(&relabelled).unwrap().values.len()
        );
    }

    #[test]
    fn diameter_at_most_twice_matching(t in tree_strategy(18)) {
        prop_assert!(diameter(&t) <= 2 * matching_number(&t));
    }

    #[test]
    fn edge_list_round_trip(t in tree_strategy(18)) {
        let text = t.to_edge_list();
        prop_assert_eq!(TreeGraph::parse_edge_list(&text).unwrap(), t);
    }

    #[test]
    fn family_specs_round_trip(
        kind in 0usize..5,
        a in 1usize..6,
        b in 1usize..6,
        c in 1usize..5,
    ) {
        let spec = match kind {
            0 => FamilySpec::Path(a + 1),
            1 => FamilySpec::Star(a + 1),
            2 => FamilySpec::Spider(vec![(a + 1, c + 1), (b, c)]),
            3 => FamilySpec::Crab { b1: a, b2: b, r: c },
            _ => FamilySpec::ExtraSpecial { b: a + 2, p: c },
        };
        let parsed: FamilySpec = spec.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &spec);
        let t = spec.build().unwrap();
        let named = FamilySpec::recognize(&t);
        if let Some(named) = named {
            prop_assert_eq!(canonical_code(&named.build().unwrap()), canonical_code(&t));
        }
    }
}

/// The bounds on the matching number in terms of leaves and diameter, over
/// every tree with at most 13 vertices.
#[test]
fn matching_number_against_diameter() {
    for n in 2..=13 {
        for code in free_tree_codes(n).unwrap().iter() {
            let t = tree_from_code(code).unwrap();
            let b = leaves(&t).len();
            let d = diameter(&t);
            let m = matching_number(&t);
            if b >= 3 {
                let t4 = d.div_ceil(4).max(1);
                assert!(m <= b * t4, "{code}: diameter {d} <= 4*{t4}");
                let t2 = d.saturating_sub(2).div_ceil(4).max(1);
                assert!(m <= b * t2 + 1, "{code}: diameter {d} <= 4*{t2}+2");
                let t3 = d.saturating_sub(3).div_ceil(4);
                assert!(m <= b * t3 + 2, "{code}: diameter {d} <= 4*{t3}+3");
            }
            if b >= 2 && d % 4 == 1 && d >= 5 {
                let tt = (d - 1) / 4;
                if m == b * tt + 1 {
                    let is_crab = (1..b).any(|b1| {
                        let crab = steklov_trees::graph::build_crab(b1, b - b1, 2 * tt).unwrap();
                        canonical_code(&crab) == *code
                    });
                    assert!(is_crab, "{code}");
                }
            }
        }
    }
}
