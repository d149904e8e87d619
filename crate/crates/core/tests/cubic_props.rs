use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use smallrings::cubic::*;
use smallrings::quadform::Gl2;

fn form() -> impl Strategy<Value = BinaryCubicForm> {
    prop::array::uniform4(-30i64..=30).prop_map(|[p, q, r, s]| BinaryCubicForm::new(p, q, r, s))
}

fn gl2() -> impl Strategy<Value = Gl2> {
    prop::array::uniform4(-3i64..=3)
        .prop_map(|[a, b, c, d]| Gl2::new(a, b, c, d))
        .prop_filter("unimodular", |g| {
            g.det() == BigInt::from(1) || g.det() == BigInt::from(-1)
        })
}

#[test]
fn dictionary_sweep() {
    for p in -5i64..=5 {
        for q in -5i64..=5 {
            for r in -5i64..=5 {
                for s in -5i64..=5 {
                    let phi = BinaryCubicForm::new(p, q, r, s);
                    let ring = ring_from_cubic_form(&phi);
                    assert_eq!(form_from_cubic_ring(&ring), phi);
                    assert!(ring.table().is_associative());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn disc_is_trace_form_disc(phi in form()) {
        prop_assert_eq!(cubic_form_disc(&phi), ring_from_cubic_form(&phi).trace_disc());
    }

    #[test]
    fn content_scales(phi in form(), n in 1i64..=7) {
        let n = BigInt::from(n);
        prop_assert_eq!(cubic_content(&phi.scale(&n)), cubic_content(&phi) * n);
    }

    #[test]
    fn base_change_matches_twisted_action(phi in form(), g in gl2()) {
        let moved = ring_from_cubic_form(&phi).rebase(&g).unwrap();
        let twisted = cubic_twisted_act(&g, &phi).unwrap();
        prop_assert_eq!(form_from_cubic_ring(&moved), twisted.clone());
        prop_assert_eq!(cubic_form_disc(&twisted), cubic_form_disc(&phi));
        prop_assert_eq!(cubic_content(&twisted), cubic_content(&phi));
    }

    #[test]
    fn values_are_residues_of_values(phi in form(), m in 2u64..=12, x in -20i64..=20, y in -20i64..=20) {
        let set = values_mod(&phi, m).unwrap();
        let v = phi.eval(&BigInt::from(x), &BigInt::from(y));
        let r = v.mod_floor(&BigInt::from(m));
        prop_assert!(set.contains(&u64::try_from(r).unwrap()));
    }
}

#[test]
fn orbit_of_split_form_is_split() {
    let phi = BinaryCubicForm::new(0, 1, 1, 0);
    for g in [
        Gl2::new(1, 1, 0, 1),
        Gl2::new(2, 1, 1, 1),
        Gl2::new(0, 1, -1, 0),
    ] {
        let moved = ring_from_cubic_form(&cubic_twisted_act(&g, &phi).unwrap());
        assert!(is_isomorphic_to_z3(&moved, 10));
    }
}
