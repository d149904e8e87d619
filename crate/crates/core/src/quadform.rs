//! Binary quadratic forms `ax² + bxy + cy²`: the twisted GL2 action, reduction
//! of positive definite forms, composition and class groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryQuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// Integer 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gl2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Gl2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        Gl2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Gl2::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &Gl2) -> Gl2 {
        Gl2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn inverse(&self) -> Result<Gl2> {
        let det = self.det();
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular);
        }
        Ok(Gl2 {
            a: &self.d * &det,
            b: -&self.b * &det,
            c: -&self.c * &det,
            d: &self.a * &det,
        })
    }
}

impl BinaryQuadraticForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        BinaryQuadraticForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    /// The principal form of discriminant `d`: `x² + εxy + ((ε-d)/4)y²` with ε = d mod 2.
    pub fn principal(d: &BigInt) -> Result<Self> {
        let eps = d.mod_floor(&BigInt::from(4));
        if eps > BigInt::one() {
            return Err(Error::UnsupportedDiscriminant(d.to_string()));
        }
        Ok(BinaryQuadraticForm::new(1, eps.clone(), (eps - d) / 4))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// `(a, -b, c)`, the inverse class.
    pub fn conjugate(&self) -> Self {
        BinaryQuadraticForm::new(self.a.clone(), -&self.b, self.c.clone())
    }

    pub fn negate(&self) -> Self {
        BinaryQuadraticForm::new(-&self.a, -&self.b, -&self.c)
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        if !a.is_positive() || b.abs() > *a || a > c {
            return false;
        }
        !((b.abs() == *a || a == c) && b.is_negative())
    }

    /// Proper (SL2) equivalence of definite forms, via reduced representatives.
    /// Negative definite forms are compared through their negatives.
    pub fn properly_equivalent(&self, other: &Self) -> Result<bool> {
        let sign = |f: &Self| {
            if f.a.is_negative() {
                f.negate()
            } else {
                f.clone()
            }
        };
        if self.a.is_negative() != other.a.is_negative() {
            return Ok(false);
        }
        Ok(reduce(&sign(self))?.0 == reduce(&sign(other))?.0)
    }
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

pub fn discriminant(f: &BinaryQuadraticForm) -> BigInt {
    &f.b * &f.b - BigInt::from(4) * &f.a * &f.c
}

pub fn content(f: &BinaryQuadraticForm) -> BigInt {
    f.a.gcd(&f.b).gcd(&f.c)
}

/// `(M.f)(x, y) = f(ax + cy, bx + dy) / (ad - bc)`.
pub fn twisted_act(m: &Gl2, f: &BinaryQuadraticForm) -> Result<BinaryQuadraticForm> {
    let det = m.det();
    if det.abs() != BigInt::one() {
        return Err(Error::NotUnimodular);
    }
    let (p, q, r) = (&f.a, &f.b, &f.c);
    // substitute x -> a x + c y, y -> b x + d y
    let na = p * &m.a * &m.a + q * &m.a * &m.b + r * &m.b * &m.b;
    let nb = BigInt::from(2) * p * &m.a * &m.c
        + q * (&m.a * &m.d + &m.b * &m.c)
        + BigInt::from(2) * r * &m.b * &m.d;
    let nc = p * &m.c * &m.c + q * &m.c * &m.d + r * &m.d * &m.d;
    Ok(BinaryQuadraticForm {
        a: na * &det,
        b: nb * &det,
        c: nc * det,
    })
}

/// Reduces a positive definite form. Returns the reduced form `g` and `M` with `g = M.f`.
pub fn reduce(f: &BinaryQuadraticForm) -> Result<(BinaryQuadraticForm, Gl2)> {
    let d = discriminant(f);
    if !d.is_negative() {
        return Err(Error::UnsupportedDiscriminant(d.to_string()));
    }
    if !f.a.is_positive() {
        return Err(Error::NotPositiveDefinite);
    }
    let mut g = f.clone();
    let mut m = Gl2::identity();
    let two = BigInt::from(2);
    loop {
        // translate b into (-a, a]
        let two_a = &two * &g.a;
        let k = (&g.a - &g.b).div_floor(&two_a);
        if !k.is_zero() {
            let t = Gl2::new(1, 0, k, 1);
            g = twisted_act(&t, &g)?;
            m = t.mul(&m);
        }
        if g.a > g.c || (g.a == g.c && g.b.is_negative()) {
            let s = Gl2::new(0, -1, 1, 0);
            g = twisted_act(&s, &g)?;
            m = s.mul(&m);
            continue;
        }
        break;
    }
    debug_assert!(g.is_reduced());
    Ok((g, m))
}

fn check_disc(d: &BigInt) -> Result<()> {
    let r = d.mod_floor(&BigInt::from(4));
    if !d.is_negative() || r > BigInt::one() {
        return Err(Error::UnsupportedDiscriminant(d.to_string()));
    }
    Ok(())
}

/// All reduced forms of discriminant `d < 0`, primitive or not, sorted.
pub fn enumerate_reduced(d: &BigInt) -> Result<Vec<BinaryQuadraticForm>> {
    check_disc(d)?;
    let bound = (-d / BigInt::from(3)).sqrt();
    let mut out = Vec::new();
    let mut a = BigInt::one();
    while a <= bound {
        let mut b = -&a;
        while b <= a {
            let num = &b * &b - d;
            let den = BigInt::from(4) * &a;
            if (&num % &den).is_zero() {
                let f = BinaryQuadraticForm::new(a.clone(), b.clone(), num / den);
                if f.is_reduced() {
                    out.push(f);
                }
            }
            b += 1;
        }
        a += 1;
    }
    out.sort();
    Ok(out)
}

/// Gauss composition of primitive positive definite forms of the same discriminant,
/// returned reduced.
pub fn compose(f: &BinaryQuadraticForm, g: &BinaryQuadraticForm) -> Result<BinaryQuadraticForm> {
    let d = discriminant(f);
    let d2 = discriminant(g);
    if d != d2 {
        return Err(Error::DiscriminantMismatch(d.to_string(), d2.to_string()));
    }
    check_disc(&d)?;
    if !content(f).is_one() || !content(g).is_one() {
        return Err(Error::NotPrimitive);
    }
    if !f.a.is_positive() || !g.a.is_positive() {
        return Err(Error::NotPositiveDefinite);
    }
    let two = BigInt::from(2);
    let beta = (&f.b + &g.b) / &two;
    // e = gcd(a1, a2, beta) = x a1 + y a2 + z beta
    let g1 = f.a.extended_gcd(&g.a);
    let g2 = g1.gcd.extended_gcd(&beta);
    let e = g2.gcd;
    let (x, y, z) = (&g2.x * &g1.x, &g2.x * &g1.y, g2.y);
    let big_a = &f.a * &g.a / (&e * &e);
    let num = &x * &f.a * &g.b + &y * &g.a * &f.b + &z * ((&f.b * &g.b + &d) / &two);
    let big_b = (num / &e).mod_floor(&(&two * &big_a));
    let big_c = (&big_b * &big_b - &d) / (BigInt::from(4) * &big_a);
    Ok(reduce(&BinaryQuadraticForm::new(big_a, big_b, big_c))?.0)
}

/// Finite abelian group of primitive reduced forms under composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    pub elements: Vec<BinaryQuadraticForm>,
    /// `table[i][j]` is the index of `elements[i] * elements[j]`.
    pub table: Vec<Vec<usize>>,
    /// Invariant factors `n1 | n2 | ...`, all > 1; empty for the trivial group.
    pub invariants: Vec<u64>,
}

impl ClassGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != self.identity() {
            cur = self.table[cur][i];
            k += 1;
        }
        k
    }
}

pub fn class_group(d: &BigInt) -> Result<ClassGroup> {
    let mut elements: Vec<_> = enumerate_reduced(d)?
        .into_iter()
        .filter(|f| content(f).is_one())
        .collect();
    // principal form first
    let p = BinaryQuadraticForm::principal(d)?;
    elements.sort_by_key(|f| (f != &p, f.clone()));
    let index = |f: &BinaryQuadraticForm| elements.iter().position(|e| e == f);
    let mut table = Vec::with_capacity(elements.len());
    for f in &elements {
        let mut row = Vec::with_capacity(elements.len());
        for g in &elements {
            let h = compose(f, g)?;
            row.push(
                index(&h).ok_or_else(|| Error::DomainError(format!("{h} not in class list")))?,
            );
        }
        table.push(row);
    }
    let mut group = ClassGroup {
        elements,
        table,
        invariants: Vec::new(),
    };
    group.invariants = invariant_factors(&group);
    Ok(group)
}

fn invariant_factors(g: &ClassGroup) -> Vec<u64> {
    let n = g.order() as u64;
    let orders: Vec<u64> = (0..g.order()).map(|i| g.element_order(i) as u64).collect();
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    // per prime, the partition of exponents read from |G[p^k]|
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for p in primes {
        let mut counts = vec![1u64];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let c = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
            if c == *counts.last().unwrap() {
                break;
            }
            counts.push(c);
        }
        // number of cyclic factors of order >= p^k
        let ranks: Vec<u32> = counts.windows(2).map(|w| (w[1] / w[0]).ilog(p)).collect();
        let mut factors = Vec::new();
        for (k, r) in ranks.iter().enumerate() {
            let next = ranks.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(r - next) {
                factors.push(p.pow(k as u32 + 1));
            }
        }
        factors.sort_unstable_by(|a, b| b.cmp(a));
        columns.push(factors);
    }
    let len = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..len)
        .map(|i| {
            columns
                .iter()
                .map(|c| c.get(i).copied().unwrap_or(1))
                .product()
        })
        .collect();
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64) -> BinaryQuadraticForm {
        BinaryQuadraticForm::new(a, b, c)
    }

    #[test]
    fn disc_and_content() {
        assert_eq!(discriminant(&q(1, 0, 25)), BigInt::from(-100));
        assert_eq!(discriminant(&q(0, 0, 0)), BigInt::from(0));
        assert_eq!(discriminant(&q(2, 1, 3)), BigInt::from(-23));
        assert_eq!(content(&q(5, 0, 5)), BigInt::from(5));
        assert_eq!(content(&q(2, 2, 13)), BigInt::from(1));
        assert_eq!(content(&q(0, 0, 0)), BigInt::from(0));
    }

    #[test]
    fn twisted_examples() {
        assert_eq!(
            twisted_act(&Gl2::identity(), &q(2, 1, 3)).unwrap(),
            q(2, 1, 3)
        );
        assert_eq!(
            twisted_act(&Gl2::new(0, 1, 1, 0), &q(2, 1, 3)).unwrap(),
            q(-3, -1, -2)
        );
        assert_eq!(
            twisted_act(&Gl2::new(1, 0, 1, 1), &q(1, 0, 25)).unwrap(),
            q(1, 2, 26)
        );
        assert_eq!(
            twisted_act(&Gl2::new(2, 0, 0, 1), &q(1, 0, 1)),
            Err(Error::NotUnimodular)
        );
    }

    #[test]
    fn reduction_examples() {
        for (f, g) in [
            (q(1, 2, 26), q(1, 0, 25)),
            (q(5, 0, 5), q(5, 0, 5)),
            (q(13, -2, 2), q(2, 2, 13)),
        ] {
            let (r, m) = reduce(&f).unwrap();
            assert_eq!(r, g);
            assert_eq!(twisted_act(&m, &f).unwrap(), r);
            assert!(m.det().is_one());
        }
        assert!(matches!(
            reduce(&q(1, 3, 1)),
            Err(Error::UnsupportedDiscriminant(_))
        ));
        assert_eq!(reduce(&q(-1, 0, -1)), Err(Error::NotPositiveDefinite));
    }

    #[test]
    fn reduced_lists() {
        assert_eq!(
            enumerate_reduced(&BigInt::from(-100)).unwrap(),
            vec![q(1, 0, 25), q(2, 2, 13), q(5, 0, 5)]
        );
        assert_eq!(
            enumerate_reduced(&BigInt::from(-3)).unwrap(),
            vec![q(1, 1, 1)]
        );
        assert_eq!(
            enumerate_reduced(&BigInt::from(-23)).unwrap(),
            vec![q(1, 1, 6), q(2, -1, 3), q(2, 1, 3)]
        );
        assert!(enumerate_reduced(&BigInt::from(-5)).is_err());
        assert!(enumerate_reduced(&BigInt::from(5)).is_err());
    }

    #[test]
    fn composition_examples() {
        assert_eq!(compose(&q(1, 1, 6), &q(2, 1, 3)).unwrap(), q(2, 1, 3));
        assert_eq!(compose(&q(1, 0, 1), &q(1, 0, 1)).unwrap(), q(1, 0, 1));
        assert_eq!(compose(&q(2, 1, 3), &q(2, 1, 3)).unwrap(), q(2, -1, 3));
        assert!(matches!(
            compose(&q(1, 0, 1), &q(1, 1, 1)),
            Err(Error::DiscriminantMismatch(..))
        ));
        assert_eq!(compose(&q(5, 0, 5), &q(1, 0, 25)), Err(Error::NotPrimitive));
    }

    #[test]
    fn class_groups() {
        let g = class_group(&BigInt::from(-100)).unwrap();
        assert_eq!(g.elements, vec![q(1, 0, 25), q(2, 2, 13)]);
        assert_eq!(g.table, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(g.invariants, vec![2]);
        assert_eq!(class_group(&BigInt::from(-23)).unwrap().invariants, vec![3]);
        assert!(class_group(&BigInt::from(-4))
            .unwrap()
            .invariants
            .is_empty());
        // Cl(-4*21) = Z/2 x Z/2, Cl(-47) = Z/5
        assert_eq!(
            class_group(&BigInt::from(-84)).unwrap().invariants,
            vec![2, 2]
        );
        assert_eq!(class_group(&BigInt::from(-47)).unwrap().invariants, vec![5]);
    }
}
