#![allow(dead_code)]

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallrings::cube::{cube_discriminant, ring_of_cube, tau_system, xi_actions, Cube};
use smallrings::quadring::{QuadElem, QuadIdeal, QuadraticRing};
use smallrings::quartic::{pair_index, MaximalityCondition, TernaryPair};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_pair(r: &mut impl Rng, bound: i64) -> TernaryPair {
    let mut v = || std::array::from_fn(|_| r.gen_range(-bound..=bound));
    let a = v();
    let b = v();
    TernaryPair::new(a, b)
}

pub fn random_cube(r: &mut impl Rng, bound: i64) -> Cube {
    loop {
        let c = Cube::new(std::array::from_fn(|_| r.gen_range(-bound..=bound)));
        if !c.is_degenerate() && cube_discriminant(&c) != BigInt::from(0) {
            return c;
        }
    }
}

/// `ℤ[5i]` as the ring `ξ² = −25`.
pub fn z5i() -> QuadraticRing {
    QuadraticRing::new(0, 25)
}

/// `B = ℤ[i] = ⟨1, ξ/5⟩` inside `ℤ[5i]`.
pub fn ideal_b() -> QuadIdeal {
    let r = z5i();
    QuadIdeal::from_generators(
        &r,
        &[
            QuadElem::int(1, 0),
            QuadElem::new(
                smallrings::lattice::rat(0),
                smallrings::lattice::ratio(1, 5),
            ),
        ],
    )
    .unwrap()
}

/// `x + y·i` with `i = ξ/5`.
pub fn gaussian(x: i64, y: i64) -> QuadElem {
    QuadElem::new(
        smallrings::lattice::rat(x),
        smallrings::lattice::ratio(y, 5),
    )
}

/// Multiplies the entries named by a condition so that it holds.
pub fn force_condition(p: &TernaryPair, tag: MaximalityCondition, pr: i64) -> TernaryPair {
    let mut out = p.clone();
    let (p1, p2) = (BigInt::from(pr), BigInt::from(pr * pr));
    let idx = |i: usize, j: usize| pair_index(i - 1, j - 1);
    match tag {
        MaximalityCondition::A => {
            out.a[idx(1, 1)] *= &p2;
            for k in [idx(1, 2), idx(1, 3)] {
                out.a[k] *= &p1;
            }
            out.b[idx(1, 1)] *= &p1;
        }
        MaximalityCondition::B => {
            for k in [idx(1, 1), idx(1, 2), idx(2, 2)] {
                out.a[k] *= &p1;
                out.b[k] *= &p1;
            }
        }
        MaximalityCondition::C => {
            for k in [idx(1, 1), idx(1, 2), idx(2, 2)] {
                out.a[k] *= &p2;
            }
            for k in [idx(1, 3), idx(2, 3)] {
                out.a[k] *= &p1;
            }
        }
        MaximalityCondition::D => {
            for v in out.a.iter_mut() {
                *v *= &p1;
            }
        }
    }
    out
}

/// `ξτ` for the two positions along `axis`, as predicted by the action on that factor.
pub fn trilinear_holds(c: &Cube) -> bool {
    let ring = ring_of_cube(c).unwrap();
    let tau = tau_system(c).unwrap();
    let acts = xi_actions(c).unwrap();
    let at = |axis: usize, r: usize, o1: usize, o2: usize| -> usize {
        match axis {
            0 => 4 * r + 2 * o1 + o2,
            1 => 4 * o1 + 2 * r + o2,
            _ => 4 * o1 + 2 * o2 + r,
        }
    };
    for (axis, m) in acts.iter().enumerate() {
        for o1 in 0..2 {
            for o2 in 0..2 {
                let t1 = &tau[at(axis, 0, o1, o2)];
                let t2 = &tau[at(axis, 1, o1, o2)];
                let lhs1 = ring.mul(&QuadElem::xi(), t1);
                let lhs2 = ring.mul(&QuadElem::xi(), t2);
                let rhs1 = t1.scale(&m.a).add(&t2.scale(&m.c));
                let rhs2 = t1.scale(&m.b).add(&t2.scale(&m.d));
                if lhs1 != rhs1 || lhs2 != rhs2 {
                    return false;
                }
            }
        }
    }
    true
}
