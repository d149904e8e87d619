mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use smallrings::cube::*;
use smallrings::lattice::int_rat;
use smallrings::quadform::{compose, content, discriminant, BinaryQuadraticForm, Gl2};
use smallrings::quadring::{conjugate, form_from_basis, ideal_from_form, multiply, QuadIdeal};

fn cube() -> impl Strategy<Value = Cube> {
    prop::array::uniform8(-4i64..=4)
        .prop_map(Cube::new)
        .prop_filter("nondegenerate", |c| {
            !c.is_degenerate() && cube_discriminant(c) != BigInt::from(0)
        })
}

fn gl2() -> impl Strategy<Value = Gl2> {
    prop::array::uniform4(-3i64..=3)
        .prop_map(|[a, b, c, d]| Gl2::new(a, b, c, d))
        .prop_filter("unimodular", |g| {
            g.det() == BigInt::from(1) || g.det() == BigInt::from(-1)
        })
}

/// Class of a definite form, negated to positive definite.
fn positive(f: &BinaryQuadraticForm) -> BinaryQuadraticForm {
    if f.a < BigInt::from(0) {
        BinaryQuadraticForm::new(-f.a.clone(), f.b.clone(), -f.c.clone())
    } else {
        f.clone()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn forms_share_discriminant(c in cube()) {
        let [f1, f2, f3] = associated_forms(&c);
        prop_assert_eq!(discriminant(&f1), discriminant(&f2));
        prop_assert_eq!(discriminant(&f1), discriminant(&f3));
        prop_assert_eq!(ring_of_cube(&c).unwrap().disc(), discriminant(&f1));
    }

    #[test]
    fn actions_have_ring_char_poly(c in cube()) {
        let r = ring_of_cube(&c).unwrap();
        for m in xi_actions(&c).unwrap() {
            prop_assert_eq!(m.trace(), int_rat(&r.t));
            prop_assert_eq!(m.det(), int_rat(&r.u));
        }
    }

    #[test]
    fn tau_projects_to_entries(c in cube()) {
        let tau = tau_system(&c).unwrap();
        for (t, a) in tau.iter().zip(&c.0) {
            prop_assert_eq!(&t.y, &int_rat(a));
        }
    }

    #[test]
    fn tau_is_trilinear(c in cube()) {
        prop_assert!(common::trilinear_holds(&c));
    }

    #[test]
    fn cube_triple_round_trip(c in cube()) {
        let (t, bases) = triple_from_cube(&c).unwrap();
        prop_assert!(is_balanced(&t).unwrap());
        prop_assert_eq!(cube_from_triple(&t, &bases).unwrap(), c.clone());
        for (f, b) in associated_forms(&c).iter().zip(&bases) {
            prop_assert_eq!(f, &form_from_basis(&t.ring, b).unwrap());
        }
    }

    #[test]
    fn gamma_is_functorial(c in cube(), g1 in gl2(), g2 in gl2(), g3 in gl2()) {
        let sign = g1.det() * g2.det() * g3.det();
        let g3 = if sign == BigInt::from(1) { g3 } else { Gl2::new(-g3.a.clone(), -g3.b.clone(), g3.c.clone(), g3.d.clone()) };
        let g = GammaElement([g1, g2, g3]);
        let moved = gamma_act(&g, &c).unwrap();
        prop_assert_eq!(ring_of_cube(&moved).unwrap().normalized(), ring_of_cube(&c).unwrap().normalized());
        prop_assert_eq!(associated_forms(&moved), gamma_act_forms(&g, &associated_forms(&c)).unwrap());
    }

    #[test]
    fn projective_cubes_compose_to_identity(c in cube().prop_filter("definite", |c| cube_discriminant(c) < BigInt::from(0))) {
        let forms = associated_forms(&c);
        prop_assume!(forms.iter().all(|f| content(f) == BigInt::from(1)));
        let classes: Vec<_> = forms.iter().map(positive).collect();
        let prod = compose(&compose(&classes[0], &classes[1]).unwrap(), &classes[2]).unwrap();
        let d = cube_discriminant(&c);
        prop_assert!(prod.properly_equivalent(&BinaryQuadraticForm::principal(&d).unwrap()).unwrap());
        let (t, _) = triple_from_cube(&c).unwrap();
        prop_assert!(triples_equivalent(&t, &t).unwrap());
    }
}

#[test]
fn dirichlet_cubes_of_minus_23() {
    let d = BigInt::from(-23);
    let principal = BinaryQuadraticForm::principal(&d).unwrap();
    let mut seen = 0;
    for h in [-3i64, -1, 1, 3] {
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                for g in -6i64..=6 {
                    if h * h + 4 * a * b * g != -23 {
                        continue;
                    }
                    let c = Cube::new([1, 0, 0, a, 0, b, g, -h]);
                    let forms = associated_forms(&c);
                    assert_eq!(forms[0], BinaryQuadraticForm::new(-a, h, b * g));
                    let classes: Vec<_> = forms.iter().map(positive).collect();
                    let prod =
                        compose(&compose(&classes[0], &classes[1]).unwrap(), &classes[2]).unwrap();
                    assert!(prod.properly_equivalent(&principal).unwrap());
                    seen += 1;
                }
            }
        }
    }
    assert!(seen > 10);
}

fn tr(i: &QuadIdeal, j: &QuadIdeal, k: &QuadIdeal) -> BalancedTriple {
    BalancedTriple {
        ring: i.ring.clone(),
        ideals: [i.clone(), j.clone(), k.clone()],
    }
}

#[test]
fn two_boxes_with_equal_forms() {
    let b = common::ideal_b();
    let plus = Cube::new([1, 2, 2, -1, 2, -1, -1, -2]);
    let minus = Cube::new([-1, 2, 2, 1, 2, 1, 1, -2]);
    let expected = [
        tr(&b, &b, &b.scale(&common::gaussian(10, 5)).unwrap()),
        tr(&b, &b, &b.scale(&common::gaussian(10, -5)).unwrap()),
    ];
    let mut triples = Vec::new();
    for (c, e) in [&plus, &minus].into_iter().zip(&expected) {
        let f = BinaryQuadraticForm::new(5, 0, 5);
        assert_eq!(associated_forms(c), [f.clone(), f.clone(), f]);
        let (t, _) = triple_from_cube(c).unwrap();
        assert_eq!(t.ring.disc(), BigInt::from(-100));
        assert!(triples_equivalent(&t, e).unwrap());
        triples.push(t);
    }
    assert_eq!(triples[0], expected[0]);
    assert_eq!(triples[1], expected[1]);
    assert!(!triples_equivalent(&triples[0], &triples[1]).unwrap());
}

#[test]
fn products_of_balanced_triples_are_balanced() {
    let r = common::z5i();
    let s = r.unit_ideal();
    let a = ideal_from_form(&BinaryQuadraticForm::new(2, 2, 13), &r).unwrap();
    let a_inv = conjugate(&a).scale_rat(&int_rat(&BigInt::from(2))).unwrap();
    let b = common::ideal_b();
    let invertible = [
        tr(&s, &s, &s),
        tr(&s, &a, &a_inv),
        tr(&a, &a_inv, &s),
        tr(&a, &s, &a_inv),
    ];
    let others = [
        tr(&s, &s, &s),
        tr(&s, &b, &b.scale_rat(&int_rat(&BigInt::from(5))).unwrap()),
        tr(&b, &b, &b.scale(&common::gaussian(10, 5)).unwrap()),
        tr(&b, &b, &b.scale(&common::gaussian(10, -5)).unwrap()),
    ];
    for i in &invertible {
        assert!(is_balanced(i).unwrap());
        for j in &others {
            assert!(is_balanced(j).unwrap());
            let prod: Vec<QuadIdeal> = (0..3)
                .map(|k| multiply(&i.ideals[k], &j.ideals[k]).unwrap())
                .collect();
            assert!(is_balanced(&tr(&prod[0], &prod[1], &prod[2])).unwrap());
        }
    }
}
