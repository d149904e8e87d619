//! Resolvent lattices, the cubic resolvent form and the discriminant identity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{disc_quartic, lambda_from_ring, pair_index, ring_from_pair, QuarticRing, TernaryPair};
use crate::cubic::{cubic_form_disc, BinaryCubicForm};
use crate::error::{Error, Result};
use crate::lattice::{divisor_sigma, hnf_canonicalize, int_rat, LatticeBasis, Rat, RatMatrix};

/// The span `M₀` of the six vectors `μ_ij` in ℚ², normalized so that `θ` is the standard determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalResolvent {
    pub m0: LatticeBasis,
    pub content: BigInt,
    pub mu: Vec<[Rat; 2]>,
}

/// `4·det(Ax + By)` with off-diagonal entries `a_ij / 2`.
pub fn cubic_resolvent_form(pair: &TernaryPair) -> BinaryCubicForm {
    // each entry is a linear form in (x, y); expand the 3×3 determinant as a cubic
    type Lin = [BigInt; 2];
    let entry = |i: usize, j: usize| -> Lin {
        let p = pair_index(i, j);
        let k = if i == j {
            BigInt::from(2)
        } else {
            BigInt::one()
        };
        [&pair.a[p] * &k, &pair.b[p] * &k]
    };
    let mul2 = |u: &Lin, v: &Lin| -> [BigInt; 3] {
        [&u[0] * &v[0], &u[0] * &v[1] + &u[1] * &v[0], &u[1] * &v[1]]
    };
    let mul3 = |q: &[BigInt; 3], w: &Lin| -> [BigInt; 4] {
        [
            &q[0] * &w[0],
            &q[0] * &w[1] + &q[1] * &w[0],
            &q[1] * &w[1] + &q[2] * &w[0],
            &q[2] * &w[1],
        ]
    };
    let mut total: [BigInt; 4] = Default::default();
    for (i, j, k) in super::PERMUTATIONS {
        let s = super::perm_sign(i, j, k);
        let term = mul3(&mul2(&entry(0, i), &entry(1, j)), &entry(2, k));
        for (t, v) in total.iter_mut().zip(term) {
            *t += v * s;
        }
    }
    // the doubled matrix has determinant 8·det, and we want 4·det
    let [p, q, r, s] = total.map(|v| v / 2);
    BinaryCubicForm { p, q, r, s }
}

pub fn disc_match(pair: &TernaryPair) -> bool {
    disc_quartic(&ring_from_pair(pair)) == cubic_form_disc(&cubic_resolvent_form(pair))
}

/// `x ∧ x² ∧ x³ = θ(y ∧ y²)` for `y = φ(x)`, where the resolvent ring on `(η₁, η₂)`
/// has the form `(u, v) ↦ G(v, −u)` and `G` is the cubic resolvent form.
pub fn resolvent_identity_check(pair: &TernaryPair, x: &[BigInt; 3]) -> bool {
    let q = ring_from_pair(pair);
    let xe: super::QuarticElem = [Rat::zero(), int_rat(&x[0]), int_rat(&x[1]), int_rat(&x[2])];
    let x2 = q.mul(&xe, &xe);
    let x3 = q.mul(&x2, &xe);
    let lhs = crate::lattice::det(vec![xe[1..].to_vec(), x2[1..].to_vec(), x3[1..].to_vec()]);
    let [u, v] = pair.eval(x);
    let rhs = cubic_resolvent_form(pair).eval(&v, &-u);
    lhs == int_rat(&rhs)
}

fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Builds `μ` vectors realizing the λ-system of `q`; `θ` is the standard determinant on ℚ².
pub fn minimal_resolvent(q: &QuarticRing) -> Result<MinimalResolvent> {
    let lam = lambda_from_ring(q);
    if lam.is_zero() {
        return Err(Error::TrivialRing);
    }
    let content = gcd_all(&lam.values());
    let l = |p: usize, r: usize| int_rat(&lam.0[p][r]);
    let (x, y) = (0..6)
        .flat_map(|p| (0..6).map(move |r| (p, r)))
        .find(|&(p, r)| !lam.0[p][r].is_zero())
        .expect("some λ is nonzero");
    // μ_x = (1, 0), μ_y = (0, λ_xy), and μ_z is fixed by its pairings with both
    let mu: Vec<[Rat; 2]> = (0..6).map(|z| [l(z, y) / l(x, y), l(x, z)]).collect();
    let m0 = hnf_canonicalize(&RatMatrix::from_rows(
        mu.iter().map(|m| m.to_vec()).collect(),
    )?)?;
    debug_assert_eq!(m0.det(), int_rat(&content));
    Ok(MinimalResolvent { m0, content, mu })
}

/// Lattices `M ⊇ M₀` of index equal to the content, so that `θ` identifies `Λ²M` with ℤ.
pub fn enumerate_numerical_resolvents(q: &QuarticRing) -> Result<Vec<LatticeBasis>> {
    let min = minimal_resolvent(q)?;
    let c = &min.content;
    let scaled: Vec<Vec<Rat>> = min
        .m0
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x / int_rat(c)).collect())
        .collect();
    let mut out = Vec::new();
    let mut a = BigInt::one();
    while &a <= c {
        if (c % &a).is_zero() {
            let d = c / &a;
            let mut b = BigInt::zero();
            while b < d {
                let h = [[int_rat(&a), int_rat(&b)], [Rat::zero(), int_rat(&d)]];
                let rows: Vec<Vec<Rat>> = h
                    .iter()
                    .map(|hr| {
                        (0..2)
                            .map(|k| &hr[0] * &scaled[0][k] + &hr[1] * &scaled[1][k])
                            .collect()
                    })
                    .collect();
                out.push(hnf_canonicalize(&RatMatrix::from_rows(rows)?)?);
                b += 1;
            }
        }
        a += 1;
    }
    Ok(out)
}

pub fn count_numerical_resolvents(q: &QuarticRing) -> Result<BigInt> {
    divisor_sigma(&minimal_resolvent(q)?.content)
}

/// Coordinates of the `μ` vectors in a positively oriented basis of `m`.
pub fn pair_in_resolvent(min: &MinimalResolvent, m: &LatticeBasis) -> Result<TernaryPair> {
    let rows = m.rows();
    let mut b1 = rows[0].clone();
    let b2 = rows[1].clone();
    let dt = &b1[0] * &b2[1] - &b1[1] * &b2[0];
    if dt.abs() != Rat::one() {
        return Err(Error::DomainError(
            "lattice is not a numerical resolvent".into(),
        ));
    }
    if dt.is_negative() {
        b1 = b1.into_iter().map(|x| -x).collect();
    }
    let oriented = [b1, b2];
    let mut a: [BigInt; 6] = Default::default();
    let mut b: [BigInt; 6] = Default::default();
    for (p, mu) in min.mu.iter().enumerate() {
        let sol = crate::lattice::solve_unique(
            &[
                vec![oriented[0][0].clone(), oriented[1][0].clone()],
                vec![oriented[0][1].clone(), oriented[1][1].clone()],
            ],
            mu,
        )
        .ok_or(Error::Degenerate)?;
        if !sol.iter().all(Rat::is_integer) {
            return Err(Error::DomainError(
                "μ vector outside the resolvent lattice".into(),
            ));
        }
        a[p] = sol[0].to_integer();
        b[p] = sol[1].to_integer();
    }
    Ok(TernaryPair { a, b })
}

/// The minimal resolvent together with a pair realizing the first numerical resolvent.
pub fn pair_from_ring(q: &QuarticRing) -> Result<(MinimalResolvent, TernaryPair)> {
    let min = minimal_resolvent(q)?;
    let first = enumerate_numerical_resolvents(q)?
        .into_iter()
        .next()
        .expect("σ(n) ≥ 1");
    let pair = pair_in_resolvent(&min, &first)?;
    Ok((min, pair))
}
