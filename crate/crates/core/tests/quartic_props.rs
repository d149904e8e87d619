mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;
use smallrings::cubic::{cubic_twisted_act, BinaryCubicForm};
use smallrings::lattice::{det, int_rat, Rat};
use smallrings::quadform::Gl2;
use smallrings::quartic::*;

fn pair() -> impl Strategy<Value = TernaryPair> {
    (
        prop::array::uniform6(-3i64..=3),
        prop::array::uniform6(-3i64..=3),
    )
        .prop_map(|(a, b)| TernaryPair::new(a, b))
}

fn elem(x: [i64; 3]) -> QuarticElem {
    elem_from_ints([0, x[0], x[1], x[2]])
}

/// `x ∧ y ∧ xy` against `det(φ(x), φ(y))`, independent of how the table was built.
fn wedge_identity(p: &TernaryPair, q: &QuarticRing, x: [i64; 3], y: [i64; 3]) -> bool {
    let (xe, ye) = (elem(x), elem(y));
    let xy = q.mul(&xe, &ye);
    let lhs = det(vec![xe[1..].to_vec(), ye[1..].to_vec(), xy[1..].to_vec()]);
    let fx = p.eval(&x.map(BigInt::from));
    let fy = p.eval(&y.map(BigInt::from));
    lhs == int_rat(&(&fx[0] * &fy[1] - &fx[1] * &fy[0]))
}

/// All fifteen relations between the table and the λ-system, for every ordering of the indices.
fn c_lambda_relations(p: &TernaryPair, q: &QuarticRing) -> bool {
    let l = lambda_system(p);
    let c = &q.c;
    PERMUTATIONS.iter().all(|&(i, j, k)| {
        let e = BigInt::from(perm_sign(i, j, k));
        c[i][i][j + 1] == &e * l.get(i, k, i, i)
            && c[i][j][k + 1] == &e * l.get(i, i, j, j)
            && &c[i][j][j + 1] - &c[i][k][k + 1] == &e * l.get(j, k, i, i)
            && &c[i][i][i + 1] - &c[i][j][j + 1] - &c[i][k][k + 1] == &e * l.get(i, j, i, k)
    })
}

fn twisted_equivalent(f: &BinaryCubicForm, g: &BinaryCubicForm) -> bool {
    let r = -4i64..=4;
    let neg = g.scale(&BigInt::from(-1));
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    let m = Gl2::new(a, b, c, d);
                    if (m.det() == BigInt::from(1) || m.det() == BigInt::from(-1)) && {
                        let h = cubic_twisted_act(&m, f).unwrap();
                        h == *g || h == neg
                    } {
                        return true;
                    }
                }
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring_is_commutative_associative(p in pair()) {
        let q = ring_from_pair(&p);
        prop_assert!(QuarticRing::from_table(q.c.clone()).is_ok());
        prop_assert_eq!(q.normalized(), q.clone());
    }

    #[test]
    fn table_matches_lambda_relations(p in pair()) {
        let q = ring_from_pair(&p);
        prop_assert!(c_lambda_relations(&p, &q));
        prop_assert_eq!(lambda_from_ring(&q), lambda_system(&p));
        prop_assert!(plucker_check(&lambda_from_ring(&q)));
    }

    #[test]
    fn wedge_oracle(p in pair(), x in prop::array::uniform3(-3i64..=3), y in prop::array::uniform3(-3i64..=3)) {
        let q = ring_from_pair(&p);
        prop_assert!(wedge_identity(&p, &q, x, y));
    }

    #[test]
    fn discriminants_agree(p in pair()) {
        prop_assert!(disc_match(&p));
    }

    #[test]
    fn resolvent_identity(p in pair(), x in prop::array::uniform3(-2i64..=2)) {
        prop_assert!(resolvent_identity_check(&p, &x.map(BigInt::from)));
    }

    #[test]
    fn lambda_survives_translation(p in pair(), t in prop::array::uniform3(-3i64..=3)) {
        let q = ring_from_pair(&p);
        let mut c = q.c.clone();
        // ξᵢ ↦ ξᵢ + tᵢ
        for i in 0..3 {
            for j in 0..3 {
                let old = q.c[i][j].clone();
                c[i][j][i + 1] += t[j];
                c[i][j][j + 1] += t[i];
                let mut k0 = &old[0] + BigInt::from(t[i] * t[j]);
                for k in 0..3 {
                    k0 -= &c[i][j][k + 1] * t[k];
                }
                c[i][j][0] = k0;
            }
        }
        let moved = QuarticRing::from_table(c).unwrap();
        prop_assert_eq!(lambda_from_ring(&moved), lambda_system(&p));
        prop_assert_eq!(moved.normalized(), q);
    }
}

#[test]
fn round_trip_through_resolvents() {
    let mut r = common::rng(7);
    let mut checked = 0;
    while checked < 60 {
        let p = common::random_pair(&mut r, 3);
        let q = ring_from_pair(&p);
        if q.is_trivial() {
            continue;
        }
        let (min, witness) = pair_from_ring(&q).unwrap();
        let lam = lambda_system(&p);
        let g = lam
            .values()
            .iter()
            .fold(BigInt::from(0), |g, x| num_integer::Integer::gcd(&g, x));
        assert_eq!(min.content, g);
        assert_eq!(ring_from_pair(&witness), q);
        assert!(
            twisted_equivalent(&cubic_resolvent_form(&witness), &cubic_resolvent_form(&p))
                || min.content != BigInt::from(1)
        );
        checked += 1;
    }
}

#[test]
fn numerical_resolvents_of_random_rings() {
    let mut r = common::rng(11);
    for _ in 0..40 {
        let p = common::random_pair(&mut r, 3);
        let q = ring_from_pair(&p);
        if q.is_trivial() {
            continue;
        }
        let min = minimal_resolvent(&q).unwrap();
        let all = enumerate_numerical_resolvents(&q).unwrap();
        assert_eq!(
            BigInt::from(all.len()),
            count_numerical_resolvents(&q).unwrap()
        );
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        for m in &all {
            assert!(m.contains_lattice(&min.m0));
            assert_eq!(m.det(), Rat::from_integer(BigInt::from(1)));
            assert_eq!(
                lambda_system(&pair_in_resolvent(&min, m).unwrap()),
                lambda_from_ring(&q)
            );
        }
    }
}

#[test]
fn conditions_imply_non_maximal() {
    let tags = [
        MaximalityCondition::A,
        MaximalityCondition::B,
        MaximalityCondition::C,
        MaximalityCondition::D,
    ];
    let mut r = common::rng(3);
    let mut checked = 0;
    while checked < 60 {
        let pr = if r.gen_bool(0.5) { 2 } else { 3 };
        let p =
            common::force_condition(&common::random_pair(&mut r, 3), tags[r.gen_range(0..4)], pr);
        let q = ring_from_pair(&p);
        if disc_quartic(&q) == BigInt::from(0) {
            continue;
        }
        assert!(!nonmaximality_conditions(&p, pr as u64).is_empty());
        assert!(!is_maximal_at_p(&q, pr as u64).unwrap().maximal, "{p}");
        checked += 1;
    }
}
