//! Maximality at a prime by enumerating overrings inside `p⁻¹Q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{disc_quartic, pair_index, QuarticElem, QuarticRing, TernaryPair};
use crate::error::{Error, Result};
use crate::lattice::{hnf_canonicalize, is_prime, LatticeBasis, Rat, RatMatrix};

/// Subspaces of `F_p^n` in reduced row echelon form, excluding the zero space.
fn subspaces(p: u64, n: usize) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        // free slots: columns after a row's pivot that are not pivots themselves
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &c)| {
                (c + 1..n)
                    .filter(|col| !pivots.contains(col))
                    .map(move |col| (r, col))
            })
            .collect();
        let total = p.pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows = vec![vec![0u64; n]; pivots.len()];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            for &(r, col) in &free {
                rows[r][col] = code % p;
                code /= p;
            }
            out.push(rows);
        }
    }
    out
}

fn closed_under_mul(q: &QuarticRing, lat: &LatticeBasis) -> bool {
    let rows: Vec<QuarticElem> = lat
        .rows()
        .into_iter()
        .map(|r| r.try_into().expect("rank 4"))
        .collect();
    for (i, x) in rows.iter().enumerate() {
        for y in &rows[i..] {
            if !lat.contains(&q.mul(x, y)) {
                return false;
            }
        }
    }
    true
}

/// Outcome of a maximality test at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMaximality {
    pub maximal: bool,
    /// A ring strictly between `Q` and `p⁻¹Q`, when one exists.
    pub witness: Option<LatticeBasis>,
}

/// Any overring of `Q` of `p`-power index contains one inside `p⁻¹Q` (the multiplier ring of
/// the `p`-radical), so it suffices to try `Q + p⁻¹·V` for subspaces `V` of `Q/pQ`.
pub fn is_maximal_at_p(q: &QuarticRing, p: u64) -> Result<PMaximality> {
    if !is_prime(p) {
        return Err(Error::DomainError(format!("{p} is not prime")));
    }
    if disc_quartic(q).is_zero() {
        return Err(Error::DegenerateRing);
    }
    let pr = Rat::from_integer(BigInt::from(p));
    let unit: Vec<Vec<Rat>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|k| if i == k { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for v in subspaces(p, 4) {
        // 1 ∈ V would put 1/p in the overring
        if v[0] == [1, 0, 0, 0] {
            continue;
        }
        let mut gens = unit.clone();
        gens.extend(v.iter().map(|r| {
            r.iter()
                .map(|&x| Rat::from_integer(BigInt::from(x)) / &pr)
                .collect()
        }));
        let lat = hnf_canonicalize(&RatMatrix::from_rows(gens)?)?;
        if closed_under_mul(q, &lat) {
            return Ok(PMaximality {
                maximal: false,
                witness: Some(lat),
            });
        }
    }
    Ok(PMaximality {
        maximal: true,
        witness: None,
    })
}

/// Primes whose square divides `n`.
pub fn square_divisor_primes(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e >= 2 {
            out.push(d.to_u64().expect("prime fits in u64"));
        }
        d += 1;
    }
    out
}

/// Checks every prime whose square divides the discriminant.
pub fn is_maximal(q: &QuarticRing) -> Result<bool> {
    let d = disc_quartic(q);
    if d.is_zero() {
        return Err(Error::DegenerateRing);
    }
    for p in square_divisor_primes(&d) {
        if !is_maximal_at_p(q, p)?.maximal {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MaximalityCondition {
    A,
    B,
    C,
    D,
}

impl fmt::Display for MaximalityCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MaximalityCondition::A => "a",
            MaximalityCondition::B => "b",
            MaximalityCondition::C => "c",
            MaximalityCondition::D => "d",
        };
        f.write_str(s)
    }
}

/// All conditions the pair satisfies in its given basis.
pub fn nonmaximality_conditions(pair: &TernaryPair, p: u64) -> Vec<MaximalityCondition> {
    let p = BigInt::from(p);
    let p2 = &p * &p;
    let a = |i: usize, j: usize| &pair.a[pair_index(i - 1, j - 1)];
    let b = |i: usize, j: usize| &pair.b[pair_index(i - 1, j - 1)];
    let divides = |m: &BigInt, xs: &[&BigInt]| xs.iter().all(|x| x.is_multiple_of(m));
    let mut out = Vec::new();
    if divides(&p2, &[a(1, 1)]) && divides(&p, &[a(1, 2), a(1, 3), b(1, 1)]) {
        out.push(MaximalityCondition::A);
    }
    if divides(&p, &[a(1, 1), a(1, 2), a(2, 2), b(1, 1), b(1, 2), b(2, 2)]) {
        out.push(MaximalityCondition::B);
    }
    if divides(&p2, &[a(1, 1), a(1, 2), a(2, 2)]) && divides(&p, &[a(1, 3), a(2, 3)]) {
        out.push(MaximalityCondition::C);
    }
    if pair.a.iter().all(|x| x.is_multiple_of(&p)) {
        out.push(MaximalityCondition::D);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::ring_from_pair;

    #[test]
    fn subspace_counts() {
        // Gaussian binomials summed over dimensions 1..=4
        assert_eq!(subspaces(2, 4).len(), 15 + 35 + 15 + 1);
        assert_eq!(subspaces(3, 4).len(), 40 + 130 + 40 + 1);
    }

    #[test]
    fn z4_is_maximal() {
        let q = ring_from_pair(&TernaryPair::z4());
        for p in [2, 3, 5] {
            assert!(is_maximal_at_p(&q, p).unwrap().maximal);
        }
        assert!(is_maximal(&q).unwrap());
        assert!(is_maximal_at_p(&q, 4).is_err());
        let zero = ring_from_pair(&TernaryPair::new([0; 6], [0; 6]));
        assert_eq!(is_maximal_at_p(&zero, 2), Err(Error::DegenerateRing));
    }

    #[test]
    fn scaled_z4_is_not_maximal() {
        for p in [2u64, 3, 5] {
            let pair = TernaryPair::z4().scale_a(&BigInt::from(p));
            let q = ring_from_pair(&pair);
            let res = is_maximal_at_p(&q, p).unwrap();
            assert!(!res.maximal);
            let w = res.witness.unwrap();
            assert!(w.det() < Rat::one());
            assert!(nonmaximality_conditions(&pair, p).contains(&MaximalityCondition::D));
            assert!(!is_maximal(&q).unwrap());
        }
        assert!(nonmaximality_conditions(&TernaryPair::z4(), 2).is_empty());
        let c = TernaryPair::new([9, 9, 1, 18, 3, 6], [1, 1, 1, 1, 1, 1]);
        assert_eq!(
            nonmaximality_conditions(&c, 3),
            vec![MaximalityCondition::C]
        );
    }
}
