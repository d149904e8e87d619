//! 2x2x2 integer boxes and balanced triples of ideals in quadratic rings.
//!
//! Entries are indexed by `(i, j, k) ∈ {0,1}³` at position `4i + 2j + k`, so the
//! eight letters `a..h` run lexicographically from `a₁₁₁` to `a₂₂₂`. Everything
//! indexed "by factor" (forms, ξ-actions, ideals) follows the axis order i, j, k.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::int_rat;
use crate::quadform::{discriminant, twisted_act, BinaryQuadraticForm, Gl2};
use crate::quadring::{
    basis_det, endomorphism_order, ideal_basis_from_form, ideal_norm, multiply, rebase_elem,
    scalar_between, units_of_order, QuadElem, QuadIdeal, QuadraticRing, XiAction,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cube(pub [BigInt; 8]);

impl Cube {
    pub fn new(v: [i64; 8]) -> Self {
        Cube(v.map(BigInt::from))
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.0[4 * i + 2 * j + k]
    }

    /// The box of `(S, S, S)` with bases `(1, ξ)` in the ring of discriminant `d`.
    pub fn identity(d: &BigInt) -> Result<Self> {
        let r = crate::quadring::ring_from_disc(d)?;
        let (t, u) = (r.t, r.u);
        let tt = &t * &t - &u;
        Ok(Cube([
            BigInt::zero(),
            BigInt::one(),
            BigInt::one(),
            t.clone(),
            BigInt::one(),
            t.clone(),
            t,
            tt,
        ]))
    }

    /// Relabel so that `axis` becomes the first index, the other two keeping their order.
    fn to_front(&self, axis: usize) -> Cube {
        let mut out = self.0.clone();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let src = match axis {
                        0 => self.get(i, j, k),
                        1 => self.get(j, i, k),
                        _ => self.get(j, k, i),
                    };
                    out[4 * i + 2 * j + k] = src.clone();
                }
            }
        }
        Cube(out)
    }

    fn letters(&self) -> [&BigInt; 8] {
        let v = &self.0;
        [&v[0], &v[1], &v[2], &v[3], &v[4], &v[5], &v[6], &v[7]]
    }

    pub fn is_degenerate(&self) -> bool {
        associated_forms(self)
            .iter()
            .any(BinaryQuadraticForm::is_zero)
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(BigInt::to_string).collect();
        write!(f, "[{}]", s.join(", "))
    }
}

/// `-det(x A₀ + y A₁)` for the two slices of the first axis.
fn first_form(q: &Cube) -> BinaryQuadraticForm {
    let [a, b, c, d, e, f, g, h] = q.letters();
    BinaryQuadraticForm {
        a: b * c - a * d,
        b: b * g + c * f - a * h - d * e,
        c: f * g - e * h,
    }
}

/// The three forms, one per axis.
pub fn associated_forms(q: &Cube) -> [BinaryQuadraticForm; 3] {
    [0, 1, 2].map(|ax| first_form(&q.to_front(ax)))
}

pub fn ring_of_cube(q: &Cube) -> Result<QuadraticRing> {
    if q.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let [a, b, c, d, e, f, g, h] = q.letters();
    let t = a * h + b * g + c * f + d * e;
    let d = discriminant(&first_form(q));
    let u = (&t * &t - d) / 4;
    Ok(QuadraticRing { t, u })
}

fn first_action(q: &Cube) -> XiAction {
    let [a, b, c, d, e, f, g, h] = q.letters();
    let r = |x: BigInt| int_rat(&x);
    XiAction {
        a: r(a * h + d * e),
        b: r(e * h - f * g),
        c: r(b * c - a * d),
        d: r(b * g + c * f),
    }
}

pub fn xi_actions(q: &Cube) -> Result<[XiAction; 3]> {
    if q.is_degenerate() {
        return Err(Error::Degenerate);
    }
    Ok([0, 1, 2].map(|ax| first_action(&q.to_front(ax))))
}

/// The elements that serve as the products `η₁ᵢη₂ⱼη₃ₖ`, in the ring of the cube,
/// indexed like the entries.
pub fn tau_system(q: &Cube) -> Result<[QuadElem; 8]> {
    let ring = ring_of_cube(q)?;
    let mut out: [QuadElem; 8] = std::array::from_fn(|_| QuadElem::zero());
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let x = q.get(i, j, k);
                let p = q.get(1 - i, j, k) * q.get(i, 1 - j, k) * q.get(i, j, 1 - k);
                let s = p + x * x * q.get(1 - i, 1 - j, 1 - k);
                // i + j + k odd in 1-based indexing means even here
                let constant = if (i + j + k) % 2 == 0 {
                    s - x * &ring.t
                } else {
                    -s
                };
                out[4 * i + 2 * j + k] = QuadElem::new(int_rat(&constant), int_rat(x));
            }
        }
    }
    Ok(out)
}

/// Three fractional ideals of one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedTriple {
    pub ring: QuadraticRing,
    pub ideals: [QuadIdeal; 3],
}

pub type TripleBases = [[QuadElem; 2]; 3];

/// Each of the three matrices acts on its own factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaElement(pub [Gl2; 3]);

impl GammaElement {
    pub fn identity() -> Self {
        GammaElement([Gl2::identity(), Gl2::identity(), Gl2::identity()])
    }
}

pub fn is_balanced(t: &BalancedTriple) -> Result<bool> {
    let [i1, i2, i3] = &t.ideals;
    if [i1, i2, i3].iter().any(|i| i.ring != t.ring) {
        return Err(Error::RingMismatch);
    }
    let prod = multiply(&multiply(i1, i2)?, i3)?;
    let norms = ideal_norm(i1) * ideal_norm(i2) * ideal_norm(i3);
    Ok(t.ring.unit_ideal().contains_ideal(&prod) && norms.is_one())
}

/// Reconstructs the triple of a nondegenerate cube with bases reproducing it.
pub fn triple_from_cube(q: &Cube) -> Result<(BalancedTriple, TripleBases)> {
    let ring = ring_of_cube(q)?;
    let forms = associated_forms(q);
    let b1 = ideal_basis_from_form(&forms[0], &ring)?;
    let b2 = ideal_basis_from_form(&forms[1], &ring)?;
    let tau = tau_system(q)?;
    let mut b3: [QuadElem; 2] = [QuadElem::zero(), QuadElem::zero()];
    for (k, slot) in b3.iter_mut().enumerate() {
        // z with (η₁ᵢη₂ⱼ) z = τᵢⱼₖ for all i, j
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let w = ring.mul(&b1[i], &b2[j]);
                let target = &tau[4 * i + 2 * j + k];
                // w z = (w.x z.x - u w.y z.y) + (w.y z.x + (w.x + t w.y) z.y) ξ
                rows.push(vec![w.x.clone(), -int_rat(&ring.u) * &w.y]);
                rows.push(vec![w.y.clone(), &w.x + int_rat(&ring.t) * &w.y]);
                rhs.push(target.x.clone());
                rhs.push(target.y.clone());
            }
        }
        let z = crate::lattice::solve_unique(&rows, &rhs).ok_or(Error::Degenerate)?;
        *slot = QuadElem::from_coords(&z);
    }
    let target = ring.normalized();
    let mut bases = [b1, b2, b3];
    for b in bases.iter_mut().flatten() {
        *b = rebase_elem(&ring, &target, b)?;
    }
    let ring = target;
    let ideals = bases
        .iter()
        .map(|b| QuadIdeal::from_generators(&ring, b))
        .collect::<Result<Vec<_>>>()?;
    let ideals: [QuadIdeal; 3] = ideals.try_into().expect("three ideals");
    Ok((BalancedTriple { ring, ideals }, bases))
}

/// `a_ijk` is the ξ-coefficient of `η₁ᵢη₂ⱼη₃ₖ`.
pub fn cube_from_triple(t: &BalancedTriple, bases: &TripleBases) -> Result<Cube> {
    if !is_balanced(t)? {
        return Err(Error::NotBalanced);
    }
    for (r, (ideal, basis)) in t.ideals.iter().zip(bases).enumerate() {
        let spanned = QuadIdeal::from_generators(&t.ring, basis)?;
        if spanned != *ideal || basis_det(basis).abs() != ideal_norm(ideal) {
            return Err(Error::BadBases(format!(
                "basis {} does not span ideal {}",
                r + 1,
                r + 1
            )));
        }
    }
    let mut out: [BigInt; 8] = std::array::from_fn(|_| BigInt::zero());
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let p = t
                    .ring
                    .mul(&t.ring.mul(&bases[0][i], &bases[1][j]), &bases[2][k]);
                debug_assert!(p.y.is_integer());
                out[4 * i + 2 * j + k] = p.y.to_integer();
            }
        }
    }
    Ok(Cube(out))
}

/// `a'_ijk = Σ M₁[i][i'] M₂[j][j'] M₃[k][k'] a_i'j'k'`.
pub fn gamma_act(g: &GammaElement, q: &Cube) -> Result<Cube> {
    let dets: BigInt = g.0.iter().map(Gl2::det).product();
    if !dets.is_one() {
        return Err(Error::NotInGamma);
    }
    let m = |gl: &Gl2, r: usize, c: usize| match (r, c) {
        (0, 0) => gl.a.clone(),
        (0, 1) => gl.b.clone(),
        (1, 0) => gl.c.clone(),
        _ => gl.d.clone(),
    };
    let mut out: [BigInt; 8] = std::array::from_fn(|_| BigInt::zero());
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let mut acc = BigInt::zero();
                for i2 in 0..2 {
                    for j2 in 0..2 {
                        for k2 in 0..2 {
                            acc += m(&g.0[0], i, i2)
                                * m(&g.0[1], j, j2)
                                * m(&g.0[2], k, k2)
                                * q.get(i2, j2, k2);
                        }
                    }
                }
                out[4 * i + 2 * j + k] = acc;
            }
        }
    }
    Ok(Cube(out))
}

/// Forms transformed factorwise by the twisted action.
pub fn gamma_act_forms(
    g: &GammaElement,
    forms: &[BinaryQuadraticForm; 3],
) -> Result<[BinaryQuadraticForm; 3]> {
    Ok([
        twisted_act(&g.0[0], &forms[0])?,
        twisted_act(&g.0[1], &forms[1])?,
        twisted_act(&g.0[2], &forms[2])?,
    ])
}

/// Whether scalars `γᵢ` with `γ₁γ₂γ₃ = 1` carry one triple onto the other.
/// Decided for rings of negative discriminant, where unit groups are finite.
pub fn triples_equivalent(x: &BalancedTriple, y: &BalancedTriple) -> Result<bool> {
    if x.ring.disc() != y.ring.disc() {
        return Ok(false);
    }
    let ring = x.ring.clone();
    let rebased: Vec<QuadIdeal> = y
        .ideals
        .iter()
        .map(|i| i.rebase(&ring))
        .collect::<Result<_>>()?;
    let mut gammas = Vec::new();
    for (i, j) in x.ideals.iter().zip(&rebased) {
        match scalar_between(i, j)? {
            Some(g) => gammas.push(g),
            None => return Ok(false),
        }
    }
    let prod = ring.mul(&ring.mul(&gammas[0], &gammas[1]), &gammas[2]);
    let units: Vec<Vec<QuadElem>> = x
        .ideals
        .iter()
        .map(|i| units_of_order(&endomorphism_order(i)))
        .collect();
    for u1 in &units[0] {
        for u2 in &units[1] {
            for u3 in &units[2] {
                let u = ring.mul(&ring.mul(u1, u2), u3);
                if ring.mul(&prod, &u) == QuadElem::one() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Discriminant shared by the three forms.
pub fn cube_discriminant(q: &Cube) -> BigInt {
    discriminant(&associated_forms(q)[0])
}

/// Each ideal with its canonical basis.
pub fn canonical_bases(t: &BalancedTriple) -> TripleBases {
    [
        t.ideals[0].basis(),
        t.ideals[1].basis(),
        t.ideals[2].basis(),
    ]
}
