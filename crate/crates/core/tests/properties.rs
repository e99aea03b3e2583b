use proptest::prelude::*;

use hd1::constructions::canonical_dn;
use hd1::grid::{
    canonical_path, collapse, expand, is_degree1, lift, CellLabel, LabelGrid, PathPolicy,
};
use hd1::lattice::{a_set, b_set, c_set, has_degree_at_most, pow3, TernaryPoint, VertexSet};
use hd1::sat::{parse_dimacs, to_dimacs, CnfFormula};
use hd1::symmetry::{canonical_form, find_isomorphism, Automorphism};

const EIGHT: [CellLabel; 8] = [
    CellLabel::A,
    CellLabel::B,
    CellLabel::C,
    CellLabel::X,
    CellLabel::Y,
    CellLabel::Z,
    CellLabel::Empty,
    CellLabel::Full,
];

fn automorphism(n: usize) -> impl Strategy<Value = Automorphism> {
    (
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        prop::collection::vec(1u8..=2, n),
        prop::collection::vec(0u8..=2, n),
    )
        .prop_map(|(p, c, y)| Automorphism::new(p, c, y).unwrap())
}

fn vertex_set(n: usize) -> impl Strategy<Value = VertexSet> {
    prop::collection::vec(any::<bool>(), pow3(n))
        .prop_map(move |bits| VertexSet::from_fn(n, |i| bits[i]))
}

fn sized_set() -> impl Strategy<Value = VertexSet> {
    (1usize..=5).prop_flat_map(vertex_set)
}

fn small_set() -> impl Strategy<Value = (VertexSet, Automorphism)> {
    (1usize..=3).prop_flat_map(|n| (vertex_set(n), automorphism(n)))
}

fn grid(m: usize) -> impl Strategy<Value = LabelGrid> {
    prop::collection::vec(prop::sample::select(EIGHT.to_vec()), pow3(m))
        .prop_map(move |cells| LabelGrid::new(m, 1, cells).unwrap())
}

/// Collapse of an automorphic image of `D_n` along the image of its saturated direction.
fn saturated_grid() -> impl Strategy<Value = LabelGrid> {
    (2usize..=4).prop_flat_map(automorphism).prop_map(|s| {
        let n = s.n();
        let d = s.apply_set(&canonical_dn(n).unwrap()).unwrap();
        collapse(&d, s.image_axis(0) + 1).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn index_codec_round_trips(n in 1usize..=8, seed in any::<usize>()) {
        let i = seed % pow3(n);
        let p = TernaryPoint::from_index(i, n).unwrap();
        prop_assert_eq!(p.index(), i);
        prop_assert_eq!(TernaryPoint::new(p.coords().to_vec()).unwrap(), p);
    }

    #[test]
    fn set_json_round_trips(s in sized_set()) {
        prop_assert_eq!(VertexSet::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn expand_inverts_collapse(s in sized_set(), axis in 1usize..=5) {
        prop_assume!(axis <= s.n());
        let g = collapse(&s, axis).unwrap();
        prop_assert_eq!(g.collapse_axis(), axis);
        prop_assert_eq!(expand(&g), s);
    }

    #[test]
    fn grid_json_and_text_round_trip(g in grid(2)) {
        prop_assert_eq!(LabelGrid::from_json(&g.to_json()).unwrap(), g.clone());
        prop_assert_eq!(LabelGrid::from_text(&g.to_text(), 1).unwrap(), g);
    }

    #[test]
    fn dimacs_round_trips(
        vars in 1u32..20,
        clauses in prop::collection::vec(prop::collection::vec((1i32..20, any::<bool>()), 1..5), 0..30),
    ) {
        let mut f = CnfFormula::new();
        f.reserve_vars(vars);
        for c in &clauses {
            let lits: Vec<i32> = c
                .iter()
                .map(|&(v, neg)| {
                    let v = (v - 1) % vars as i32 + 1;
                    if neg { -v } else { v }
                })
                .collect();
            f.add_clause(&lits).unwrap();
        }
        let back = parse_dimacs(&to_dimacs(&f)).unwrap();
        prop_assert_eq!(back.var_count(), f.var_count());
        prop_assert_eq!(back.clauses(), f.clauses());
    }

    #[test]
    fn compose_and_inverse_act_pointwise(
        (s, t) in (1usize..=5).prop_flat_map(|n| (automorphism(n), automorphism(n)))
    ) {
        let st = s.compose(&t).unwrap();
        let inv = s.inverse();
        for i in 0..pow3(s.n()) {
            prop_assert_eq!(st.apply_index(i), s.apply_index(t.apply_index(i)));
            prop_assert_eq!(inv.apply_index(s.apply_index(i)), i);
        }
    }

    #[test]
    fn automorphisms_preserve_degree_profile((s, a) in small_set()) {
        let img = a.apply_set(&s).unwrap();
        prop_assert_eq!(img.len(), s.len());
        for d in 0..4 {
            prop_assert_eq!(has_degree_at_most(&img, d), has_degree_at_most(&s, d));
        }
    }

    #[test]
    fn canonical_form_is_constant_on_orbits((s, a) in small_set()) {
        let img = a.apply_set(&s).unwrap();
        prop_assert_eq!(canonical_form(&img).unwrap(), canonical_form(&s).unwrap());
    }

    #[test]
    fn found_isomorphism_maps_one_set_onto_the_other((s, a) in small_set()) {
        let img = a.apply_set(&s).unwrap();
        let found = find_isomorphism(&s, &img).unwrap().expect("image is isomorphic");
        prop_assert_eq!(found.apply_set(&s).unwrap(), img);
    }

    #[test]
    fn dn_images_avoiding_a_meet_b_and_c_equally(
        (perm, signs) in (1usize..=4).prop_flat_map(|n| (
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            prop::collection::vec(1u8..=2, n),
        ))
    ) {
        let n = perm.len();
        let d = canonical_dn(n).unwrap();
        let (a, b, c) = (a_set(n), b_set(n), c_set(n));
        for y in 0..pow3(n) {
            let shift = TernaryPoint::from_index(y, n).unwrap().coords().to_vec();
            let s = Automorphism::new(perm.clone(), signs.clone(), shift).unwrap();
            let img = s.apply_set(&d).unwrap();
            if img.is_disjoint(&a) {
                prop_assert_eq!(
                    img.intersection(&b).unwrap().len(),
                    img.intersection(&c).unwrap().len()
                );
            }
        }
    }

    #[test]
    fn grid_check_agrees_with_point_degree(g in prop_oneof![grid(2), grid(3)]) {
        prop_assert_eq!(is_degree1(&g), has_degree_at_most(&g.expand(), 1));
    }

    #[test]
    fn lift_keeps_degree_one_and_extra_cells(g in saturated_grid()) {
        prop_assert!(is_degree1(&g));
        let up = lift(&g).unwrap();
        prop_assert!(is_degree1(&up));
        prop_assert!(up.is_saturated());
        prop_assert_eq!(up.extra_cells().len(), g.extra_cells().len());
        prop_assert_eq!(up.point_count(), 3 * g.point_count() - 2 * g.extra_cells().len());
    }

    #[test]
    fn canonical_paths_end_at_the_extra_point(g in saturated_grid(), start in any::<usize>(), seed in any::<u64>()) {
        let x = TernaryPoint::from_index(start % pow3(g.m()), g.m()).unwrap();
        let extra = g.extra_point().unwrap();
        for policy in [PathPolicy::SmallestDirection, PathPolicy::Random { seed }] {
            let p = canonical_path(&g, &x, policy).unwrap();
            prop_assert!(p.terminated);
            prop_assert_eq!(p.end(), &extra);
        }
    }
}

#[test]
fn every_dn_image_avoiding_a_meets_b_and_c_equally() {
    for n in 1..=3 {
        let d = canonical_dn(n).unwrap();
        let (a, b, c) = (a_set(n), b_set(n), c_set(n));
        let mut hits = 0;
        for s in hd1::symmetry::group_elements(n) {
            let img = s.apply_set(&d).unwrap();
            if img.is_disjoint(&a) {
                hits += 1;
                assert_eq!(
                    img.intersection(&b).unwrap().len(),
                    img.intersection(&c).unwrap().len()
                );
            }
        }
        assert!(hits > 0, "n={n}");
    }
}
