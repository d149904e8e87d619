//! Quadratic rings `Z[ξ]/(ξ² - tξ + u)` and their fractional ideals.
//!
//! Elements of `Q + Qξ` are coordinate pairs `(x, y)` for `x + yξ`. The
//! orientation is fixed by `α(1∧ξ) = 1`, so the covolume of an ideal's canonical
//! basis is its norm.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{hnf_canonicalize, int_rat, rat, solve_unique, LatticeBasis, Rat, RatMatrix};
use crate::quadform::{
    content, discriminant, enumerate_reduced, reduce, twisted_act, BinaryQuadraticForm, Gl2,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticRing {
    pub t: BigInt,
    pub u: BigInt,
}

/// `x + yξ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub x: Rat,
    pub y: Rat,
}

impl QuadElem {
    pub fn new(x: Rat, y: Rat) -> Self {
        QuadElem { x, y }
    }

    pub fn int(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        QuadElem {
            x: Rat::from_integer(x.into()),
            y: Rat::from_integer(y.into()),
        }
    }

    pub fn zero() -> Self {
        QuadElem::int(0, 0)
    }

    pub fn one() -> Self {
        QuadElem::int(1, 0)
    }

    pub fn xi() -> Self {
        QuadElem::int(0, 1)
    }

    pub fn add(&self, o: &QuadElem) -> QuadElem {
        QuadElem::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &QuadElem) -> QuadElem {
        QuadElem::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, k: &Rat) -> QuadElem {
        QuadElem::new(&self.x * k, &self.y * k)
    }

    pub fn coords(&self) -> Vec<Rat> {
        vec![self.x.clone(), self.y.clone()]
    }

    pub fn from_coords(v: &[Rat]) -> QuadElem {
        QuadElem::new(v[0].clone(), v[1].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ξ", self.x, self.y)
    }
}

impl QuadraticRing {
    pub fn new(t: impl Into<BigInt>, u: impl Into<BigInt>) -> Self {
        QuadraticRing {
            t: t.into(),
            u: u.into(),
        }
    }

    pub fn disc(&self) -> BigInt {
        &self.t * &self.t - BigInt::from(4) * &self.u
    }

    /// Translate `ξ` by `s`: `(t, u) -> (t + 2s, u + st + s²)`.
    pub fn translate(&self, s: &BigInt) -> QuadraticRing {
        QuadraticRing {
            t: &self.t + BigInt::from(2) * s,
            u: &self.u + s * &self.t + s * s,
        }
    }

    /// The representative with `t ∈ {0, 1}`.
    pub fn normalized(&self) -> QuadraticRing {
        self.translate(&-self.t.div_floor(&BigInt::from(2)))
    }

    pub fn is_isomorphic(&self, o: &QuadraticRing) -> bool {
        self.disc() == o.disc()
    }

    pub fn mul(&self, p: &QuadElem, q: &QuadElem) -> QuadElem {
        // ξ² = tξ - u
        let yy = &p.y * &q.y;
        QuadElem::new(
            &p.x * &q.x - int_rat(&self.u) * &yy,
            &p.x * &q.y + &q.x * &p.y + int_rat(&self.t) * yy,
        )
    }

    pub fn conj(&self, p: &QuadElem) -> QuadElem {
        QuadElem::new(&p.x + int_rat(&self.t) * &p.y, -&p.y)
    }

    pub fn norm(&self, p: &QuadElem) -> Rat {
        &p.x * &p.x + int_rat(&self.t) * &p.x * &p.y + int_rat(&self.u) * &p.y * &p.y
    }

    pub fn trace(&self, p: &QuadElem) -> Rat {
        rat(2) * &p.x + int_rat(&self.t) * &p.y
    }

    pub fn inv(&self, p: &QuadElem) -> Option<QuadElem> {
        let n = self.norm(p);
        if n.is_zero() {
            return None;
        }
        Some(self.conj(p).scale(&(Rat::one() / n)))
    }

    /// The ring itself as an ideal.
    pub fn unit_ideal(&self) -> QuadIdeal {
        QuadIdeal::from_generators(self, &[QuadElem::one(), QuadElem::xi()]).expect("unit ideal")
    }
}

impl fmt::Display for QuadraticRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ξ² = {}ξ - {} (D = {})", self.t, self.u, self.disc())
    }
}

pub fn ring_from_disc(d: &BigInt) -> Result<QuadraticRing> {
    match d.mod_floor(&BigInt::from(4)) {
        r if r.is_zero() => Ok(QuadraticRing::new(0, -d / 4)),
        r if r.is_one() => Ok(QuadraticRing::new(1, (BigInt::one() - d) / 4)),
        _ => Err(Error::UnsupportedDiscriminant(d.to_string())),
    }
}

/// The ring whose norm form is `f`, given a vector where `f` takes the value 1.
pub fn ring_from_norm_form(
    f: &BinaryQuadraticForm,
    v: (&BigInt, &BigInt),
) -> Result<QuadraticRing> {
    let (v1, v2) = v;
    if !f.eval(v1, v2).is_one() {
        return Err(Error::NotUnit);
    }
    // v1 w2 - v2 w1 = 1
    let e = v1.extended_gcd(v2);
    let m = Gl2 {
        a: v1.clone(),
        b: v2.clone(),
        c: -e.y,
        d: e.x,
    };
    let g = twisted_act(&m, f)?;
    Ok(QuadraticRing::new(g.b, g.c).normalized())
}

/// Matrix `[[a, b], [c, d]]` with `ξη₁ = aη₁ + cη₂`, `ξη₂ = bη₁ + dη₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiAction {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl XiAction {
    pub fn trace(&self) -> Rat {
        &self.a + &self.d
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_integral(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .all(|x| x.is_integer())
    }

    /// `cx² + (d - a)xy - by²`.
    pub fn form(&self) -> Result<BinaryQuadraticForm> {
        if !self.is_integral() {
            return Err(Error::NotIdeal);
        }
        Ok(BinaryQuadraticForm {
            a: self.c.to_integer(),
            b: (&self.d - &self.a).to_integer(),
            c: -self.b.to_integer(),
        })
    }
}

/// Coordinates `(α₁, α₂)` of `w = α₁η₁ + α₂η₂`.
fn coords_in(basis: &[QuadElem; 2], w: &QuadElem) -> Option<(Rat, Rat)> {
    let a = vec![
        vec![basis[0].x.clone(), basis[1].x.clone()],
        vec![basis[0].y.clone(), basis[1].y.clone()],
    ];
    let s = solve_unique(&a, &[w.x.clone(), w.y.clone()])?;
    Some((s[0].clone(), s[1].clone()))
}

pub fn xi_action(ring: &QuadraticRing, basis: &[QuadElem; 2]) -> Result<XiAction> {
    let bad = || Error::BadBases("basis is linearly dependent".into());
    let (a, c) = coords_in(basis, &ring.mul(&QuadElem::xi(), &basis[0])).ok_or_else(bad)?;
    let (b, d) = coords_in(basis, &ring.mul(&QuadElem::xi(), &basis[1])).ok_or_else(bad)?;
    Ok(XiAction { a, b, c, d })
}

/// Form of a module relative to the given basis.
pub fn form_from_basis(ring: &QuadraticRing, basis: &[QuadElem; 2]) -> Result<BinaryQuadraticForm> {
    xi_action(ring, basis)?.form()
}

pub fn basis_det(basis: &[QuadElem; 2]) -> Rat {
    &basis[0].x * &basis[1].y - &basis[0].y * &basis[1].x
}

/// Fractional ideal: a full-rank lattice in `Q + Qξ` stable under `ξ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadIdeal {
    pub ring: QuadraticRing,
    pub lattice: LatticeBasis,
}

impl QuadIdeal {
    pub fn from_generators(ring: &QuadraticRing, gens: &[QuadElem]) -> Result<QuadIdeal> {
        let m = RatMatrix::from_rows(gens.iter().map(QuadElem::coords).collect())?;
        let lattice = hnf_canonicalize(&m)?;
        let ideal = QuadIdeal {
            ring: ring.clone(),
            lattice,
        };
        for g in ideal.basis() {
            if !ideal.contains(&ring.mul(&QuadElem::xi(), &g)) {
                return Err(Error::NotIdeal);
            }
        }
        Ok(ideal)
    }

    pub fn basis(&self) -> [QuadElem; 2] {
        let r = self.lattice.rows();
        [QuadElem::from_coords(&r[0]), QuadElem::from_coords(&r[1])]
    }

    pub fn contains(&self, v: &QuadElem) -> bool {
        self.lattice.contains(&v.coords())
    }

    pub fn contains_ideal(&self, o: &QuadIdeal) -> bool {
        self.lattice.contains_lattice(&o.lattice)
    }

    pub fn scale(&self, g: &QuadElem) -> Result<QuadIdeal> {
        let gens: Vec<_> = self.basis().iter().map(|b| self.ring.mul(g, b)).collect();
        QuadIdeal::from_generators(&self.ring, &gens)
    }

    pub fn scale_rat(&self, k: &Rat) -> Result<QuadIdeal> {
        Ok(QuadIdeal {
            ring: self.ring.clone(),
            lattice: self.lattice.scale(k)?,
        })
    }

    /// Same ideal written in the coordinates of an isomorphic ring `(t', u')`,
    /// where `ξ' = ξ + s` with `t' = t + 2s`.
    pub fn rebase(&self, target: &QuadraticRing) -> Result<QuadIdeal> {
        let gens: Vec<_> = self
            .basis()
            .iter()
            .map(|g| rebase_elem(&self.ring, target, g))
            .collect::<Result<_>>()?;
        QuadIdeal::from_generators(target, &gens)
    }

    /// Form relative to the canonical (positively oriented) basis.
    pub fn raw_form(&self) -> BinaryQuadraticForm {
        form_from_basis(&self.ring, &self.basis()).expect("ideal is xi-stable")
    }
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.basis();
        write!(f, "<{a}, {b}>")
    }
}

pub fn rebase_elem(from: &QuadraticRing, to: &QuadraticRing, g: &QuadElem) -> Result<QuadElem> {
    let diff = &to.t - &from.t;
    if from.disc() != to.disc() || diff.is_odd() {
        return Err(Error::RingMismatch);
    }
    let s = diff / 2;
    // x + yξ = (x - sy) + yξ'
    Ok(QuadElem::new(&g.x - int_rat(&s) * &g.y, g.y.clone()))
}

/// A basis of an ideal of `ring` on which the form is exactly `f`.
pub fn ideal_basis_from_form(
    f: &BinaryQuadraticForm,
    ring: &QuadraticRing,
) -> Result<[QuadElem; 2]> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let d = discriminant(f);
    if d != ring.disc() {
        return Err(Error::FormRingMismatch(
            d.to_string(),
            ring.disc().to_string(),
        ));
    }
    let m = if !f.a.is_zero() {
        Gl2::identity()
    } else if !f.c.is_zero() {
        Gl2::new(0, -1, 1, 0)
    } else {
        Gl2::new(1, 1, 0, 1)
    };
    let g = twisted_act(&m, f)?;
    // I = Z + Z (ξ + s)/p where ξ + s has trace q
    let s = (&g.b - &ring.t) / 2;
    let p = int_rat(&g.a);
    let e1 = QuadElem::one();
    let e2 = QuadElem::new(int_rat(&s) / &p, Rat::one() / &p);
    let mi = m.inverse()?;
    let comb = |x: &BigInt, y: &BigInt| e1.scale(&int_rat(x)).add(&e2.scale(&int_rat(y)));
    Ok([comb(&mi.a, &mi.b), comb(&mi.c, &mi.d)])
}

pub fn ideal_from_form(f: &BinaryQuadraticForm, ring: &QuadraticRing) -> Result<QuadIdeal> {
    QuadIdeal::from_generators(ring, &ideal_basis_from_form(f, ring)?)
}

/// Associated form, reduced when the discriminant is negative.
pub fn form_from_ideal(i: &QuadIdeal) -> BinaryQuadraticForm {
    let f = i.raw_form();
    if i.ring.disc().is_negative() {
        reduce(&f)
            .expect("positively oriented forms are positive definite")
            .0
    } else {
        f
    }
}

pub fn multiply(i: &QuadIdeal, j: &QuadIdeal) -> Result<QuadIdeal> {
    if i.ring != j.ring {
        return Err(Error::RingMismatch);
    }
    let mut gens = Vec::with_capacity(4);
    for a in i.basis() {
        for b in j.basis() {
            gens.push(i.ring.mul(&a, &b));
        }
    }
    QuadIdeal::from_generators(&i.ring, &gens)
}

pub fn conjugate(i: &QuadIdeal) -> QuadIdeal {
    let gens: Vec<_> = i.basis().iter().map(|g| i.ring.conj(g)).collect();
    QuadIdeal::from_generators(&i.ring, &gens).expect("conjugate of an ideal")
}

pub fn ideal_norm(i: &QuadIdeal) -> Rat {
    i.lattice.det().abs()
}

/// `End I` as a module in the coordinates of `I`'s ring.
pub fn endomorphism_order(i: &QuadIdeal) -> QuadIdeal {
    let act = xi_action(&i.ring, &i.basis()).expect("canonical basis");
    let k = content(&i.raw_form());
    // (ξ - a)/k acts integrally on I
    let omega = QuadElem::new(-&act.a / int_rat(&k), Rat::one() / int_rat(&k));
    QuadIdeal::from_generators(&i.ring, &[QuadElem::one(), omega]).expect("order")
}

pub fn endomorphism_ring(i: &QuadIdeal) -> QuadraticRing {
    let k = content(&i.raw_form());
    ring_from_disc(&(i.ring.disc() / (&k * &k))).expect("D/k² is a discriminant")
}

pub fn is_invertible(i: &QuadIdeal) -> bool {
    content(&i.raw_form()).is_one()
}

/// Roots of unity in the order `o` (a ring lattice), for negative discriminant.
pub fn units_of_order(o: &QuadIdeal) -> Vec<QuadElem> {
    let ring = &o.ring;
    let d = ring.disc();
    let mut out = vec![QuadElem::one(), QuadElem::int(-1, 0)];
    // an order of conductor k relative to the coordinate ring has covolume 1/k
    let k = o.lattice.det().abs().recip().to_integer();
    let d_order = &d / (&k * &k);
    if !d.is_negative() || !(d_order == BigInt::from(-3) || d_order == BigInt::from(-4)) {
        return out;
    }
    // sqrt(D') = (2ξ - t)/k
    let root = QuadElem::new(-int_rat(&ring.t) / int_rat(&k), rat(2) / int_rat(&k));
    for x in -2i64..=2 {
        for y in [-1i64, 1] {
            let e = QuadElem::one()
                .scale(&rat(x))
                .add(&root.scale(&rat(y)))
                .scale(&Rat::new(1.into(), 2.into()));
            if ring.norm(&e).is_one() && o.contains(&e) {
                out.push(e);
            }
        }
    }
    out
}

/// A scalar `γ` with `γI = J`, for ideals of a ring with negative discriminant.
pub fn scalar_between(i: &QuadIdeal, j: &QuadIdeal) -> Result<Option<QuadElem>> {
    if i.ring != j.ring {
        return Err(Error::RingMismatch);
    }
    if !i.ring.disc().is_negative() {
        return Err(Error::UnsupportedDiscriminant(i.ring.disc().to_string()));
    }
    let reduced_basis = |x: &QuadIdeal| -> Result<(BinaryQuadraticForm, QuadElem)> {
        let (g, m) = reduce(&x.raw_form())?;
        let [e1, e2] = x.basis();
        Ok((g, e1.scale(&int_rat(&m.a)).add(&e2.scale(&int_rat(&m.b)))))
    };
    let (fi, ei) = reduced_basis(i)?;
    let (fj, ej) = reduced_basis(j)?;
    if fi != fj {
        return Ok(None);
    }
    let gamma = i
        .ring
        .mul(&ej, &i.ring.inv(&ei).expect("nonzero element of a field"));
    debug_assert_eq!(i.scale(&gamma)?, *j);
    Ok(Some(gamma))
}

/// Ideal classes of the ring of discriminant `d` with their multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSemigroup {
    pub ring: QuadraticRing,
    pub classes: Vec<BinaryQuadraticForm>,
    pub table: Vec<Vec<usize>>,
}

pub fn class_semigroup(d: &BigInt) -> Result<ClassSemigroup> {
    let classes = enumerate_reduced(d)?;
    let ring = ring_from_disc(d)?;
    let ideals: Vec<_> = classes
        .iter()
        .map(|f| ideal_from_form(f, &ring))
        .collect::<Result<_>>()?;
    let mut table = Vec::new();
    for i in &ideals {
        let mut row = Vec::new();
        for j in &ideals {
            let f = form_from_ideal(&multiply(i, j)?);
            let idx = classes
                .iter()
                .position(|c| *c == f)
                .ok_or_else(|| Error::DomainError(format!("product class {f} missing")))?;
            row.push(idx);
        }
        table.push(row);
    }
    Ok(ClassSemigroup {
        ring,
        classes,
        table,
    })
}

/// Integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}
