//! Binary cubic forms and cubic rings with a normalized basis `(1, ξ₁, ξ₂)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{det, int_rat};
use crate::quadform::Gl2;

/// `p x³ + q x²y + r xy² + s y³`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryCubicForm {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl BinaryCubicForm {
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        s: impl Into<BigInt>,
    ) -> Self {
        BinaryCubicForm {
            p: p.into(),
            q: q.into(),
            r: r.into(),
            s: s.into(),
        }
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.p * x * x * x + &self.q * x * x * y + &self.r * x * y * y + &self.s * y * y * y
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.r.is_zero() && self.s.is_zero()
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        BinaryCubicForm {
            p: &self.p * n,
            q: &self.q * n,
            r: &self.r * n,
            s: &self.s * n,
        }
    }
}

impl fmt::Display for BinaryCubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.p, self.q, self.r, self.s)
    }
}

/// Element `x₀ + x₁ξ₁ + x₂ξ₂`.
pub type CubicElem = [BigInt; 3];

/// A multiplication table in which `ξ₁ξ₂` is a constant:
/// `ξ₁² = ℓ + aξ₁ + bξ₂`, `ξ₁ξ₂ = m`, `ξ₂² = n + eξ₁ + fξ₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicRing {
    pub a: BigInt,
    pub b: BigInt,
    pub e: BigInt,
    pub f: BigInt,
}

/// Unnormalized table; `ξ₁ξ₂ = m + cξ₁ + dξ₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicTable {
    pub xi1xi1: [BigInt; 3],
    pub xi1xi2: [BigInt; 3],
    pub xi2xi2: [BigInt; 3],
}

fn zero3() -> CubicElem {
    [BigInt::zero(), BigInt::zero(), BigInt::zero()]
}

impl CubicTable {
    fn product(&self, i: usize, j: usize) -> &[BigInt; 3] {
        match (i.min(j), i.max(j)) {
            (1, 1) => &self.xi1xi1,
            (1, 2) => &self.xi1xi2,
            _ => &self.xi2xi2,
        }
    }

    pub fn mul(&self, x: &CubicElem, y: &CubicElem) -> CubicElem {
        let mut out = zero3();
        for i in 0..3 {
            for j in 0..3 {
                let c = &x[i] * &y[j];
                if c.is_zero() {
                    continue;
                }
                if i == 0 || j == 0 {
                    out[i + j] += c;
                } else {
                    for (o, t) in out.iter_mut().zip(self.product(i, j)) {
                        *o += &c * t;
                    }
                }
            }
        }
        out
    }

    pub fn is_associative(&self) -> bool {
        let basis = unit_vectors();
        basis.iter().all(|x| {
            basis.iter().all(|y| {
                basis
                    .iter()
                    .all(|z| self.mul(&self.mul(x, y), z) == self.mul(x, &self.mul(y, z)))
            })
        })
    }

    /// Translate `ξ₁ ↦ ξ₁ − d`, `ξ₂ ↦ ξ₂ − c` so that `ξ₁ξ₂` becomes constant.
    pub fn normalize(&self) -> Result<CubicRing> {
        if !self.is_associative() {
            return Err(Error::DomainError(
                "multiplication table is not associative".into(),
            ));
        }
        let [_, a, b] = &self.xi1xi1;
        let [_, c, d] = &self.xi1xi2;
        let [_, e, f] = &self.xi2xi2;
        Ok(CubicRing {
            a: a - 2 * d,
            b: b.clone(),
            e: e.clone(),
            f: f - 2 * c,
        })
    }
}

fn unit_vectors() -> [CubicElem; 3] {
    let mut v = [zero3(), zero3(), zero3()];
    for (i, x) in v.iter_mut().enumerate() {
        x[i] = BigInt::one();
    }
    v
}

impl CubicRing {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        e: impl Into<BigInt>,
        f: impl Into<BigInt>,
    ) -> Self {
        CubicRing {
            a: a.into(),
            b: b.into(),
            e: e.into(),
            f: f.into(),
        }
    }

    pub fn l(&self) -> BigInt {
        -(&self.b * &self.f)
    }

    pub fn m(&self) -> BigInt {
        &self.b * &self.e
    }

    pub fn n(&self) -> BigInt {
        -(&self.a * &self.e)
    }

    pub fn table(&self) -> CubicTable {
        CubicTable {
            xi1xi1: [self.l(), self.a.clone(), self.b.clone()],
            xi1xi2: [self.m(), BigInt::zero(), BigInt::zero()],
            xi2xi2: [self.n(), self.e.clone(), self.f.clone()],
        }
    }

    pub fn mul(&self, x: &CubicElem, y: &CubicElem) -> CubicElem {
        self.table().mul(x, y)
    }

    pub fn trace(&self, x: &CubicElem) -> BigInt {
        let t = self.table();
        (0..3)
            .map(|j| {
                let mut e = zero3();
                e[j] = BigInt::one();
                t.mul(x, &e)[j].clone()
            })
            .sum()
    }

    /// Determinant of the trace pairing on `(1, ξ₁, ξ₂)`.
    pub fn trace_disc(&self) -> BigInt {
        let basis = unit_vectors();
        let m: Vec<Vec<_>> = basis
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|y| int_rat(&self.trace(&self.mul(x, y))))
                    .collect()
            })
            .collect();
        det(m).to_integer()
    }

    /// The ring on the basis `(1, g₁₁ξ₁ + g₁₂ξ₂, g₂₁ξ₁ + g₂₂ξ₂)`, renormalized.
    pub fn rebase(&self, g: &Gl2) -> Result<CubicRing> {
        let gi = g.inverse()?;
        let new = [
            [BigInt::zero(), g.a.clone(), g.b.clone()],
            [BigInt::zero(), g.c.clone(), g.d.clone()],
        ];
        // old coordinates (x₁, x₂) become new ones via the inverse
        let to_new = |v: &CubicElem| -> [BigInt; 3] {
            [
                v[0].clone(),
                &v[1] * &gi.a + &v[2] * &gi.c,
                &v[1] * &gi.b + &v[2] * &gi.d,
            ]
        };
        let prod = |i: usize, j: usize| to_new(&self.mul(&new[i], &new[j]));
        CubicTable {
            xi1xi1: prod(0, 0),
            xi1xi2: prod(0, 1),
            xi2xi2: prod(1, 1),
        }
        .normalize()
    }
}

impl fmt::Display for CubicRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ξ₁² = {} + {}ξ₁ + {}ξ₂, ξ₁ξ₂ = {}, ξ₂² = {} + {}ξ₁ + {}ξ₂",
            self.l(),
            self.a,
            self.b,
            self.m(),
            self.n(),
            self.e,
            self.f
        )
    }
}

pub fn ring_from_cubic_form(phi: &BinaryCubicForm) -> CubicRing {
    CubicRing {
        a: -phi.q.clone(),
        b: phi.p.clone(),
        e: -phi.s.clone(),
        f: phi.r.clone(),
    }
}

/// `φ(x, y) = 1 ∧ v ∧ v²` for `v = xξ₁ + yξ₂`.
pub fn form_from_cubic_ring(c: &CubicRing) -> BinaryCubicForm {
    BinaryCubicForm {
        p: c.b.clone(),
        q: -c.a.clone(),
        r: c.f.clone(),
        s: -c.e.clone(),
    }
}

pub fn cubic_form_disc(phi: &BinaryCubicForm) -> BigInt {
    let (p, q, r, s) = (&phi.p, &phi.q, &phi.r, &phi.s);
    18 * p * q * r * s - 4 * q * q * q * s + q * q * r * r - 4 * p * r * r * r - 27 * p * p * s * s
}

pub fn cubic_content(phi: &BinaryCubicForm) -> BigInt {
    phi.p.gcd(&phi.q).gcd(&phi.r).gcd(&phi.s)
}

/// `φ^M(x, y) = det(M)⁻¹ φ(ax + cy, bx + dy)`.
pub fn cubic_twisted_act(g: &Gl2, phi: &BinaryCubicForm) -> Result<BinaryCubicForm> {
    let dt = g.det();
    if dt.abs() != BigInt::one() {
        return Err(Error::NotUnimodular);
    }
    // expand φ(αx + γy, βx + δy) as a polynomial in x, y
    let lin = |u: &BigInt, v: &BigInt| [u.clone(), v.clone()];
    let x = lin(&g.a, &g.c);
    let y = lin(&g.b, &g.d);
    let mul = |p: &[BigInt], q: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    let terms = [
        (&phi.p, mul(&mul(&x, &x), &x)),
        (&phi.q, mul(&mul(&x, &x), &y)),
        (&phi.r, mul(&mul(&x, &y), &y)),
        (&phi.s, mul(&mul(&y, &y), &y)),
    ];
    let mut c = vec![BigInt::zero(); 4];
    for (k, poly) in terms {
        for (ci, pi) in c.iter_mut().zip(poly) {
            *ci += k * pi;
        }
    }
    let c: Vec<BigInt> = c.into_iter().map(|v| v * &dt).collect();
    Ok(BinaryCubicForm {
        p: c[0].clone(),
        q: c[1].clone(),
        r: c[2].clone(),
        s: c[3].clone(),
    })
}

pub fn values_mod(phi: &BinaryCubicForm, m: u64) -> Result<BTreeSet<u64>> {
    if m < 2 {
        return Err(Error::DomainError(format!("modulus {m} is below 2")));
    }
    let mb = BigInt::from(m);
    let mut out = BTreeSet::new();
    for x in 0..m {
        for y in 0..m {
            let v = phi.eval(&BigInt::from(x), &BigInt::from(y)).mod_floor(&mb);
            out.insert(u64::try_from(v).expect("residue fits"));
        }
    }
    Ok(out)
}

/// Finds orthogonal idempotents `e₁ + e₂ + e₃ = 1` forming a ℤ-basis, with
/// coordinates bounded by `height`. `false` only means none was found.
pub fn is_isomorphic_to_z3(c: &CubicRing, height: i64) -> bool {
    let range = -height..=height;
    let mut idem = Vec::new();
    for x0 in range.clone() {
        for x1 in range.clone() {
            for x2 in range.clone() {
                let v = [BigInt::from(x0), BigInt::from(x1), BigInt::from(x2)];
                if c.mul(&v, &v) == v && !v.iter().all(Zero::is_zero) {
                    idem.push(v);
                }
            }
        }
    }
    let one = [BigInt::one(), BigInt::zero(), BigInt::zero()];
    for (i, e1) in idem.iter().enumerate() {
        for e2 in &idem[i + 1..] {
            if !c.mul(e1, e2).iter().all(Zero::is_zero) {
                continue;
            }
            let e3: CubicElem = std::array::from_fn(|k| &one[k] - &e1[k] - &e2[k]);
            if e3.iter().all(Zero::is_zero) {
                continue;
            }
            let m = vec![
                e1.iter().map(int_rat).collect(),
                e2.iter().map(int_rat).collect(),
                e3.iter().map(int_rat).collect(),
            ];
            if det(m).abs().is_one() {
                return true;
            }
        }
    }
    false
}
