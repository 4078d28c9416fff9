mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use rankone::dimfun::SuperClassFunction;
use rankone::isotropy::{rank_one_family, Family};
use rankone::linalg::IntMatrix;
use rankone::orbitcat::*;
use rankone::permgroup::Lattice;
use rankone::Error;

fn nbar(l: &Arc<Lattice>, values: &[(&str, i64)]) -> SuperClassFunction {
    let mut v = vec![-1; l.len()];
    for &(label, x) in values {
        v[l.find_label(label).unwrap()] = x;
    }
    SuperClassFunction::new(l.clone(), v).unwrap()
}

fn degrees(c: &OCChainComplex, label: &str) -> Vec<(i64, usize, Vec<String>)> {
    let t = c.homology(Coefficients::Integers);
    t.class(label)
        .unwrap()
        .degrees
        .iter()
        .map(|d| (d.degree, d.rank, d.torsion.clone()))
        .collect()
}

#[test]
fn reflection_circle_matches_its_cw_structure() {
    let l = lattice("C2");
    let c = reflection_circle(&l);
    let g = l.group();
    let at_c2 = c.evaluate(&g.whole(), false).complex;
    assert_eq!((at_c2.rank(0), at_c2.rank(1)), (2, 0));
    // Direct cellular complex of the circle: vertices v0, v1 and edges e, se, both from v0 to v1.
    let oracle = IntMatrix::from_rows(&[vec![-1, -1], vec![1, 1]]);
    let at_1 = c.evaluate(&g.trivial_subgroup(), false).complex;
    assert_eq!((at_1.rank(0), at_1.rank(1)), (2, 2));
    assert_eq!(at_1.boundary(1), oracle);

    assert_eq!(degrees(&c, "2.1"), vec![(0, 1, vec![])]);
    assert_eq!(degrees(&c, "1.1"), vec![(1, 1, vec![])]);
    let n = nbar(&l, &[("1.1", 1), ("2.1", 0)]);
    assert!(c.is_homology_sphere(&n, Coefficients::Integers).passed);
    let oriented = c.is_oriented(Coefficients::Integers);
    assert_eq!(oriented.get("2.1"), Some(true));
    assert_eq!(oriented.get("1.1"), Some(false));
    let table = c.homology(Coefficients::Integers);
    assert_eq!(table.class("1.1").unwrap().actions[0].matrix, vec![vec![-1]]);
    assert_eq!(c.check_algrep(&n, Coefficients::Integers).failures().count(), 0);
    let (dim, hom) = c.dim_functions(Coefficients::Integers).unwrap();
    assert_eq!(dim.values(), n.values());
    assert_eq!(hom.values(), n.values());
    assert!(c.tightness(Coefficients::Integers).unwrap().passed);
}

#[test]
fn free_rotation_is_an_oriented_sphere() {
    for name in ["C3", "C5"] {
        let l = lattice(name);
        let c = rotation_circle(&l);
        let at_1 = c.evaluate(&l.group().trivial_subgroup(), false).complex;
        assert!(check_homology_oracle(&at_1).is_ok());
        assert_eq!(degrees(&c, "1.1"), vec![(1, 1, vec![])]);
        let n = nbar(&l, &[("1.1", 1)]);
        assert!(c.is_homology_sphere(&n, Coefficients::Integers).passed);
        assert!(c.is_oriented(Coefficients::Integers).passed);
        assert_eq!(c.check_algrep(&n, Coefficients::Integers).failures().count(), 0);
    }
}

#[test]
fn point_is_not_a_zero_sphere() {
    let l = lattice("S3");
    let c = point(&l);
    for k in 0..l.len() {
        assert_eq!(c.evaluate(l.rep(k), false).complex.rank(0), 1);
    }
    let zero = SuperClassFunction::constant(l.clone(), 0);
    let verdict = c.is_homology_sphere(&zero, Coefficients::Integers);
    assert!(!verdict.passed);
    assert!(verdict.classes.iter().all(|(_, ok)| !ok));
}

#[test]
fn padding_breaks_tightness() {
    let l = lattice("C2");
    let c = padded_reflection(&l);
    let (dim, hom) = c.dim_functions(Coefficients::Integers).unwrap();
    assert_eq!(dim.value(0), 2);
    assert_eq!(hom.value(0), 1);
    let t = c.tightness(Coefficients::Integers).unwrap();
    assert_eq!(t.get("1.1"), Some(false));
    assert_eq!(t.get("2.1"), Some(true));
}

#[test]
fn zero_complex_has_empty_dimension_functions() {
    let l = lattice("C3");
    let c = OCChainComplex::new(l.clone(), vec![], false).unwrap();
    let (dim, hom) = c.dim_functions(Coefficients::Integers).unwrap();
    assert!(dim.values().iter().chain(hom.values()).all(|&v| v == -1));
    assert!(c
        .homology(Coefficients::Integers)
        .classes
        .iter()
        .all(|h| h.degrees.is_empty()));
}

#[test]
fn evaluation_of_a_free_orbit_has_rank_the_group_order() {
    let l = lattice("S3");
    let one = l.group().trivial_subgroup();
    let c = OCChainComplex::new(l.clone(), vec![vec![Cell::new(one.clone(), vec![])]], false).unwrap();
    assert_eq!(c.evaluate(&one, false).complex.rank(0), 6);
    for k in 1..l.len() {
        assert_eq!(c.evaluate(l.rep(k), false).complex.top(), -1);
    }
}

#[test]
fn invalid_complexes_are_rejected() {
    let l = lattice("C2");
    let g = l.group();
    let e = g.identity();
    let square_nonzero = OCChainComplex::new(
        l.clone(),
        vec![
            vec![Cell::new(g.trivial_subgroup(), vec![])],
            vec![Cell::new(g.trivial_subgroup(), vec![term(0, 1, e)])],
            vec![Cell::new(g.trivial_subgroup(), vec![term(0, 1, e)])],
        ],
        false,
    );
    assert!(matches!(square_nonzero, Err(Error::BoundaryNotSquareZero(_))));
    let bad_morphism = OCChainComplex::new(
        l.clone(),
        vec![
            vec![Cell::new(g.trivial_subgroup(), vec![])],
            vec![Cell::new(g.whole(), vec![term(0, 1, e)])],
        ],
        false,
    );
    assert!(matches!(bad_morphism, Err(Error::InvalidMorphism(_))));
    let augmentation = OCChainComplex::new(
        l.clone(),
        vec![
            vec![Cell::new(g.whole(), vec![])],
            vec![Cell::new(g.trivial_subgroup(), vec![term(0, 1, e)])],
        ],
        true,
    );
    assert!(matches!(augmentation, Err(Error::BoundaryNotSquareZero(_))));
}

#[test]
fn orbit_category_of_the_rank_one_two_family_in_a6() {
    let l = lattice("A6");
    let family = rank_one_family(&l, 2);
    assert_eq!(family.len(), 3);
    let oc = OrbitCategory::new(&family).unwrap();
    let c4 = (0..l.len())
        .find(|&k| l.order_of(k) == 4 && family.contains(k))
        .unwrap();
    let i = oc.object_of_class(c4).unwrap();
    assert_eq!(oc.morphism_count(i, i), 2);
    let g = l.group();
    let fixed = |h: usize, k: usize| {
        let t = g.coset_table(l.rep(k));
        t.reps()
            .iter()
            .filter(|&&a| is_morphism(g, l.rep(h), l.rep(k), a))
            .count()
    };
    for (a, &h) in oc.objects().iter().enumerate() {
        for (b, &k) in oc.objects().iter().enumerate() {
            assert_eq!(oc.morphism_count(a, b), fixed(h, k));
        }
    }
}

#[test]
fn orbit_category_composition_is_associative() {
    let l = lattice("S4");
    let family = Family::new(l.clone(), 0..l.len()).unwrap();
    let oc = OrbitCategory::new(&family).unwrap();
    let n = oc.objects().len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for m in [0, n - 1] {
                    for a in 0..oc.morphism_count(i, j).min(3) {
                        for b in 0..oc.morphism_count(j, k).min(3) {
                            for c in 0..oc.morphism_count(k, m).min(3) {
                                let left = oc.compose(i, k, m, oc.compose(i, j, k, a, b), c);
                                let right = oc.compose(i, j, m, a, oc.compose(j, k, m, b, c));
                                assert_eq!(left, right);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn non_closed_family_is_rejected() {
    let l = lattice("C4");
    let c4 = l.whole_class();
    let family = Family::new(l.clone(), [0, c4]);
    if let Ok(f) = family {
        assert!(matches!(OrbitCategory::new(&f), Err(Error::FamilyNotClosed(_))));
    }
}

#[test]
fn join_of_reflection_circles_is_a_three_sphere() {
    let l = lattice("C2");
    let c = reflection_circle(&l);
    let j = join(&c, &c).unwrap();
    assert_eq!(degrees(&j, "1.1"), vec![(3, 1, vec![])]);
    assert_eq!(degrees(&j, "2.1"), vec![(1, 1, vec![])]);
    let n = nbar(&l, &[("1.1", 3), ("2.1", 1)]);
    assert!(j.is_homology_sphere(&n, Coefficients::Integers).passed);
    assert!(j.is_oriented(Coefficients::Integers).passed);
    assert!(j.tightness(Coefficients::Integers).unwrap().passed);
    assert_eq!(j.check_algrep(&n, Coefficients::Integers).failures().count(), 0);
}

#[test]
fn join_of_triangles() {
    let l = lattice("S3");
    let t = triangle(&l);
    let j = join(&t, &t).unwrap();
    let (dim, _) = j.dim_functions(Coefficients::Integers).unwrap();
    assert!(j.is_homology_sphere(&dim, Coefficients::Integers).passed);
    assert_eq!(dim.value(0), 3);
    let c2 = (0..l.len()).find(|&k| l.order_of(k) == 2).unwrap();
    assert_eq!(dim.value(c2), 1);
    assert!(j.check_algrep(&dim, Coefficients::Integers).failures().count() == 0);
}

#[test]
fn join_with_point_is_contractible() {
    let l = lattice("S3");
    let j = join(&triangle(&l), &point(&l)).unwrap();
    for class in j.homology(Coefficients::Integers).classes {
        assert!(class.degrees.is_empty(), "{}", class.class_label);
    }
}

#[test]
fn corpus_properties() {
    let corpus = corpus();
    assert!(corpus.len() >= 10);
    let mut tight_spheres = 0;
    for (name, c) in &corpus {
        let l = c.lattice();
        for k in 0..l.len() {
            for reduced in [false, true] {
                let e = c.evaluate(l.rep(k), reduced).complex;
                assert!(e.is_square_zero(), "{name}");
                check_homology_oracle(&e).unwrap_or_else(|m| panic!("{name}: {m}"));
                let alt: i64 = e
                    .homology(Coefficients::Integers)
                    .iter()
                    .map(|h| {
                        if h.degree % 2 == 0 {
                            h.free_rank as i64
                        } else {
                            -(h.free_rank as i64)
                        }
                    })
                    .sum();
                assert_eq!(e.euler_characteristic(), alt, "{name}");
            }
        }
        check_restriction_split(c).unwrap_or_else(|m| panic!("{name}: {m}"));
        check_intersection_identity(c).unwrap_or_else(|m| panic!("{name}: {m}"));
        let (dim, _) = c.dim_functions(Coefficients::Integers).unwrap();
        assert!(dim.is_monotone(), "{name}");
        if c.is_augmented()
            && c.is_homology_sphere(&dim, Coefficients::Integers).passed
            && c.tightness(Coefficients::Integers).unwrap().passed
        {
            tight_spheres += 1;
            let report = c.check_algrep(&dim, Coefficients::Integers);
            assert_eq!(report.failures().count(), 0, "{name}");
        }
    }
    assert!(tight_spheres >= 6, "{tight_spheres}");
}

#[test]
fn closure_violation_fails_condition_three() {
    let l = lattice("V4");
    let c = point(&l);
    let order_two: Vec<usize> = (0..l.len()).filter(|&k| l.order_of(k) == 2).collect();
    let mut v = vec![-1; l.len()];
    v[0] = 0;
    v[order_two[0]] = 0;
    v[order_two[1]] = 0;
    let n = SuperClassFunction::new(l.clone(), v).unwrap();
    let report = c.check_algrep(&n, Coefficients::Integers);
    assert!(report.failures().any(|f| f.condition == "closure"));
}

#[test]
fn non_isomorphic_restriction_fails_condition_two() {
    // Reflection circle with n = 0 at both classes: the two fixed points are not the whole circle.
    let l = lattice("C2");
    let c = reflection_circle(&l);
    let n = nbar(&l, &[("1.1", 0), ("2.1", 0)]);
    let report = c.check_algrep(&n, Coefficients::Integers);
    assert!(report
        .failures()
        .any(|f| f.condition == "restriction-homology-isomorphism"));
}

#[test]
fn local_coefficients_drop_prime_to_p_torsion() {
    let l = lattice("C2");
    let g = l.group();
    let e = g.identity();
    let c = OCChainComplex::new(
        l.clone(),
        vec![
            vec![Cell::new(g.whole(), vec![])],
            vec![Cell::new(g.whole(), vec![term(0, 6, e)])],
        ],
        false,
    )
    .unwrap();
    let t = |coeffs| {
        let table = c.homology(coeffs);
        table
            .class("2.1")
            .unwrap()
            .degrees
            .first()
            .map(|d| d.torsion.clone())
            .unwrap_or_default()
    };
    assert_eq!(t(Coefficients::Integers), vec!["6".to_string()]);
    assert_eq!(t(Coefficients::Local(2)), vec!["2".to_string()]);
    assert_eq!(t(Coefficients::Local(5)), Vec::<String>::new());
}

#[test]
fn restriction_images_and_splitting() {
    let l = lattice("C2");
    let c = reflection_circle(&l);
    let g = l.group();
    let (one, whole) = (g.trivial_subgroup(), g.whole());
    let full = c.restriction_image(&one, &one).unwrap();
    assert_eq!(full[0], IntMatrix::identity(2));
    let image = c.restriction_image(&one, &whole).unwrap();
    assert_eq!((image[0].cols(), image[1].cols()), (2, 0));
    assert!(matches!(
        c.restriction_image(&whole, &one),
        Err(Error::NotSubconjugate(_))
    ));
    assert!(c.restriction_is_split_injective(&one, &whole).unwrap());

    let (sub, quotient) = c.splitting(&whole);
    assert_eq!(sub.top(), -1);
    assert_eq!(quotient.rank(0), 2);
    let (sub, quotient) = c.splitting(&one);
    assert_eq!((sub.rank(0), sub.rank(1)), (2, 0));
    assert_eq!((quotient.rank(0), quotient.rank(1)), (0, 2));
    let n = nbar(&l, &[("1.1", 1), ("2.1", 0)]);
    let vanishing = c.vanishing_hypothesis(&n, Coefficients::Integers);
    assert_eq!(vanishing.get("2.1"), Some(true));
    assert_eq!(vanishing.get("1.1"), Some(true));

    let sum = c.image_sum_homology(&one, &[l.whole_class()], Coefficients::Integers);
    assert_eq!(sum, vec![(0, 2, vec![])]);
}

#[test]
fn free_family_splitting_is_the_whole_evaluation() {
    let l = lattice("C3");
    let c = rotation_circle(&l);
    let one = l.group().trivial_subgroup();
    let (sub, quotient) = c.splitting(&one);
    assert_eq!(sub.top(), -1);
    assert_eq!(quotient, c.evaluate(&one, false).complex);
}

#[test]
fn extension_of_a_trivial_kernel_is_the_resolution() {
    let l = lattice("C3");
    let one = l.group().trivial_subgroup();
    let p = GroupRingComplex::periodic_resolution(l.group(), &one, 3).unwrap();
    let e = extension_functor(l.clone(), &p).unwrap();
    let ev = e.evaluate(&one, false).complex;
    assert_eq!((0..4).map(|d| ev.rank(d)).collect::<Vec<_>>(), vec![3, 3, 3, 3]);
    let h: Vec<_> = ev
        .homology(Coefficients::Integers)
        .into_iter()
        .filter(|h| !h.is_zero())
        .map(|h| (h.degree, h.free_rank))
        .collect();
    assert_eq!(h, vec![(0, 1), (3, 1)]);
}

#[test]
fn extension_vanishes_on_incomparable_subgroups() {
    let l = lattice("V4");
    let g = l.group();
    let order_two: Vec<usize> = (0..l.len()).filter(|&k| l.order_of(k) == 2).collect();
    let k = l.rep(order_two[0]).clone();
    let p = GroupRingComplex::periodic_resolution(g, &k, 1).unwrap();
    let e = extension_functor(l.clone(), &p).unwrap();
    assert_eq!(e.evaluate(l.rep(order_two[1]), false).complex.top(), -1);
    assert_eq!(e.evaluate(&k, false).complex.rank(0), 2);
}

#[test]
fn extension_functor_level_pattern() {
    let l = lattice_of(generalized_dihedral_18());
    let g = l.group();
    let k_class = (0..l.len()).find(|&c| l.order_of(c) == 9).unwrap();
    let k = l.rep(k_class).clone();
    for top in [1, 3, 5] {
        let p = GroupRingComplex::periodic_resolution(g, &k, top).unwrap();
        let e = extension_functor(l.clone(), &p).unwrap();
        for h in 0..l.len() {
            let ev = e.evaluate(l.rep(h), false).complex;
            let nonzero: Vec<_> = ev
                .homology(Coefficients::Integers)
                .into_iter()
                .filter(|x| !x.is_zero())
                .map(|x| (x.degree, x.free_rank, x.torsion.len()))
                .collect();
            if l.is_subconjugate(h, k_class) {
                assert_eq!(nonzero, vec![(0, 1, 0), (top as i64, 1, 0)], "{}", l.label(h));
            } else {
                assert!(nonzero.is_empty());
            }
        }
    }
}

#[test]
fn periodic_resolution_needs_a_cyclic_weyl_group() {
    let l = lattice_of(generalized_dihedral_18());
    let c3 = (0..l.len()).find(|&c| l.order_of(c) == 3).unwrap();
    assert!(GroupRingComplex::periodic_resolution(l.group(), l.rep(c3), 1).is_err());
}

#[test]
fn pushout_special_cases() {
    let l = lattice("C2");
    let c = reflection_circle(&l);
    let b = rotation_circle(&lattice("C2"));
    let b = OCChainComplex::new(l.clone(), b.cells().to_vec(), true).unwrap();

    let sum = pushout(&c, &b, &[], &vec![]).unwrap();
    for k in 0..l.len() {
        let (ec, eb, es) = (
            c.evaluate(l.rep(k), false),
            b.evaluate(l.rep(k), false),
            sum.evaluate(l.rep(k), false),
        );
        for d in 0..3 {
            assert_eq!(es.complex.rank(d), ec.complex.rank(d) + eb.complex.rank(d));
        }
    }

    let all: Vec<Vec<usize>> = c.cells().iter().map(|layer| (0..layer.len()).collect()).collect();
    let identity: CellMap = c
        .cells()
        .iter()
        .map(|layer| {
            (0..layer.len())
                .map(|i| vec![term(i, 1, l.group().identity())])
                .collect()
        })
        .collect();
    let same = pushout(&c, &c, &all, &identity).unwrap();
    assert_eq!(same.cells().len(), c.cells().len());
    for k in 0..l.len() {
        assert_eq!(
            same.evaluate(l.rep(k), true).complex,
            c.evaluate(l.rep(k), true).complex
        );
    }

    let twice = vec![vec![0, 0]];
    assert!(matches!(
        pushout(&c, &c, &twice, &identity),
        Err(Error::NotInjective(_))
    ));
    let not_sub = vec![vec![], vec![0]];
    assert!(matches!(
        pushout(&c, &c, &not_sub, &identity),
        Err(Error::NotInjective(_))
    ));
}

#[test]
fn pushout_along_a_collapse() {
    // Glue the free circle onto a point along its vertex orbit: the result is a wedge-like complex.
    let l = lattice("C3");
    let g = l.group();
    let b = rotation_circle(&l);
    let c = point(&l);
    let f: CellMap = vec![vec![vec![term(0, 1, g.identity())]]];
    let out = pushout(&c, &b, &[vec![0]], &f).unwrap();
    let one = out.evaluate(&g.trivial_subgroup(), false).complex;
    assert_eq!((one.rank(0), one.rank(1)), (1, 3));
    let h: Vec<_> = one
        .homology(Coefficients::Integers)
        .into_iter()
        .map(|h| h.free_rank)
        .collect();
    assert_eq!(h, vec![1, 3]);
    let not_chain_map: CellMap = vec![vec![vec![term(0, 1, g.identity())]], vec![vec![]]];
    assert!(matches!(
        pushout(&b, &b, &[vec![0], vec![0]], &not_chain_map),
        Err(Error::InvalidComplex(_))
    ));
}

#[test]
fn pushout_evaluation_rank_and_euler_identities() {
    let l = lattice("C2");
    let c = reflection_circle(&l);
    let g = l.group();
    let e = c.evaluate(&g.trivial_subgroup(), false).complex;
    let zero = ZComplex::zero();
    let empty = |d: i64| IntMatrix::zeros(e.rank(d), 0);
    let out = pushout_evaluation(&e, &zero, &e, &empty, &empty).unwrap();
    for d in 0..2 {
        assert_eq!(out.rank(d), 2 * e.rank(d));
    }
    assert_eq!(out.euler_characteristic(), 2 * e.euler_characteristic());
    let id = |d: i64| IntMatrix::identity(e.rank(d));
    let glued = pushout_evaluation(&e, &e, &e, &id, &id).unwrap();
    for d in 0..2 {
        assert_eq!(glued.rank(d), e.rank(d));
    }
    let double = |d: i64| {
        let mut m = IntMatrix::identity(e.rank(d));
        for i in 0..e.rank(d) {
            m.set(i, i, 2.into());
        }
        m
    };
    assert!(matches!(
        pushout_evaluation(&e, &e, &e, &id, &double),
        Err(Error::NotInjective(_))
    ));
}

#[test]
fn gcw_round_trip() {
    let l = lattice("S3");
    let t = triangle(&l);
    let file = to_gcw(
        &t,
        Some(GroupSpec {
            builtin: Some("S3".into()),
            degree: None,
            generators: vec![],
        }),
    );
    let text = serde_json::to_string(&file).unwrap();
    let parsed = parse_gcw(&text).unwrap();
    let group = Arc::new(parsed.group.as_ref().unwrap().build().unwrap());
    let l2 = Arc::new(Lattice::new(group));
    let back = from_gcw(l2.clone(), &parsed).unwrap();
    for k in 0..l.len() {
        assert_eq!(
            back.evaluate(l2.rep(k), true).complex,
            t.evaluate(l.rep(k), true).complex
        );
    }
}

#[test]
fn gcw_with_class_labels() {
    let text = r#"{
        "group": {"builtin": "C2"},
        "cells": [
            [{"stabilizerClassLabel": "2.1"}, {"stabilizerClassLabel": "2.1"}],
            [{"stabilizerClassLabel": "1.1", "boundary": [
                {"targetCellIndex": 1, "coefficient": 1},
                {"targetCellIndex": 0, "coefficient": -1, "morphismCosetRep": "()"}
            ]}]
        ]
    }"#;
    let file = parse_gcw(text).unwrap();
    let l = lattice("C2");
    let c = from_gcw(l.clone(), &file).unwrap();
    assert_eq!(degrees(&c, "1.1"), vec![(1, 1, vec![])]);
    let broken = text.replace("\"coefficient\": -1", "\"coefficient\": 1");
    let file = parse_gcw(&broken).unwrap();
    assert!(matches!(
        from_gcw(l.clone(), &file),
        Err(Error::BoundaryNotSquareZero(_))
    ));
    let unknown = text.replace("\"2.1\"}, {", "\"9.9\"}, {");
    assert!(from_gcw(l, &parse_gcw(&unknown).unwrap()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_free_complexes_satisfy_the_lemmas(seed in 0u64..10_000, which in 0usize..4) {
        let l = lattice(["C2", "C3", "S3", "C4"][which]);
        let c = random_free_complex(&l, seed);
        let (dim, _) = c.dim_functions(Coefficients::Integers).unwrap();
        prop_assert!(dim.is_monotone());
        for k in 0..l.len() {
            let e = c.evaluate(l.rep(k), false).complex;
            prop_assert!(e.is_square_zero());
            prop_assert!(check_homology_oracle(&e).is_ok());
        }
        prop_assert!(check_restriction_split(&c).is_ok());
        prop_assert!(check_intersection_identity(&c).is_ok());
    }
}
