//! Balanced triples over `S_n = ℤ_p[pⁿ√u]` for an odd prime `p` and a non-residue `u`.
//!
//! The oracle models `ℤ_p` by `ℤ/p^m`; an element `a + b√u` is a pair of residues.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadicConfig {
    pub p: u64,
    pub n: u32,
    pub u: i64,
}

impl PadicConfig {
    pub fn new(p: u64, n: u32, u: i64) -> Result<Self> {
        if p < 3 || !crate::lattice::is_prime(p) {
            return Err(Error::DomainError(format!("{p} is not an odd prime")));
        }
        let r = u.rem_euclid(p as i64) as u64;
        if r == 0 || pow_mod(r, (p - 1) / 2, p) != 1 {
            return Ok(PadicConfig { p, n, u });
        }
        Err(Error::DomainError(format!("{u} is a square mod {p}")))
    }

    /// The smallest positive non-residue mod `p`.
    pub fn with_default_u(p: u64, n: u32) -> Result<Self> {
        let u = (2..p)
            .find(|&u| pow_mod(u, (p - 1) / 2, p) == p - 1)
            .unwrap_or(2);
        PadicConfig::new(p, n, u as i64)
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, m);
        }
        b = mulm(b, b, m);
        e >>= 1;
    }
    r
}

fn mulm(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn sorted_checked(cfg: &PadicConfig, idx: (u32, u32, u32)) -> Result<(u32, u32, u32)> {
    let (i, j, k) = idx;
    if !(i <= j && j <= k && k <= cfg.n) {
        return Err(Error::DomainError(format!(
            "need 0 ≤ i ≤ j ≤ k ≤ {}, got ({i}, {j}, {k})",
            cfg.n
        )));
    }
    Ok(idx)
}

/// `s = (3n − i − j − k)/2` when the parity and triangle conditions hold.
fn exponent(n: u32, (i, j, k): (u32, u32, u32)) -> Option<u32> {
    let (n, i, j, k) = (n as i64, i as i64, j as i64, k as i64);
    let twice = 3 * n - i - j - k;
    let triangle = (n - j) + (n - k) >= n - i;
    (twice % 2 == 0 && triangle).then_some((twice / 2) as u32)
}

/// Number of classes of boxes whose ideals are `S_i, S_j, S_k`.
pub fn balanced_count(cfg: &PadicConfig, idx: (u32, u32, u32)) -> Result<u64> {
    let (i, _, _) = sorted_checked(cfg, idx)?;
    let Some(s) = exponent(cfg.n, idx) else {
        return Ok(0);
    };
    let t = cfg.n.saturating_sub(s);
    let p = cfg.p;
    Ok(match (i, t) {
        (0, 0) => 1,
        (i, 0) => p.pow(i - 1) * (p + 1),
        (i, t) => p.pow(i - t),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tetrahedron {
    First,
    Second,
    Boundary,
}

impl fmt::Display for Tetrahedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tetrahedron::First => "1",
            Tetrahedron::Second => "2",
            Tetrahedron::Boundary => "boundary",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StellaPoint {
    pub inside: bool,
    /// `None` outside the stella octangula.
    pub tetrahedron: Option<Tetrahedron>,
}

/// The first tetrahedron is the hull of `(n,n,n)` and the three points with two coordinates negated.
fn in_first(n: i64, x: i64, y: i64, z: i64) -> bool {
    x + y + z >= -n && x + y - z <= n && x - y + z <= n && -x + y + z <= n
}

pub fn stella_membership(n: u32, (x, y, z): (i64, i64, i64)) -> StellaPoint {
    let n = n as i64;
    let mut abs = [x.abs(), y.abs(), z.abs()];
    abs.sort_unstable();
    let parity = (x + y + z - n).rem_euclid(2) == 0;
    let inside = parity && abs[1] + abs[2] - abs[0] <= n;
    if !inside {
        return StellaPoint {
            inside,
            tetrahedron: None,
        };
    }
    let tetrahedron = match (in_first(n, x, y, z), in_first(n, -x, -y, -z)) {
        (true, true) => Tetrahedron::Boundary,
        (true, false) => Tetrahedron::First,
        (false, true) => Tetrahedron::Second,
        (false, false) => unreachable!("the region is the union of the two tetrahedra"),
    };
    StellaPoint {
        inside,
        tetrahedron: Some(tetrahedron),
    }
}

/// `ℤ[√u]/p^m` with elements `(a, b) = a + b√u`.
struct Residues {
    q: u64,
    u: u64,
}

impl Residues {
    fn mul(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        let q = self.q;
        let a = (mulm(x.0, y.0, q) + mulm(mulm(x.1, y.1, q), self.u, q)) % q;
        let b = (mulm(x.0, y.1, q) + mulm(x.1, y.0, q)) % q;
        (a, b)
    }
}

/// Count by enumeration of unit multipliers `γ′` modulo `p^m`, divided by the size of `S_i^×`.
pub fn enumerate_balanced_oracle(cfg: &PadicConfig, idx: (u32, u32, u32), m: u32) -> Result<u64> {
    let (i, j, k) = sorted_checked(cfg, idx)?;
    if m < cfg.n + 1 {
        return Err(Error::PrecisionError(m));
    }
    // parity alone; the triangle condition is left for the enumeration to discover
    let twice = 3 * cfg.n as i64 - (i + j + k) as i64;
    if twice % 2 != 0 {
        return Ok(0);
    }
    let s = (twice / 2) as u32;
    let p = cfg.p;
    let q = p.pow(m);
    let ring = Residues {
        q,
        u: cfg.u.rem_euclid(q as i64) as u64,
    };
    let gen = |e: u32| [(1 % q, 0), (0, p.pow(e) % q)];
    let mut products = Vec::with_capacity(8);
    for x in gen(i) {
        for y in gen(j) {
            for z in gen(k) {
                products.push(ring.mul(ring.mul(x, y), z));
            }
        }
    }
    let ps = if s >= m { 0 } else { p.pow(s) };
    let pn = p.pow(cfg.n);
    let mut valid = 0u64;
    for a in 0..q {
        for b in 0..q {
            if a % p == 0 && b % p == 0 {
                continue;
            }
            let g = ring.mul((a, b), (ps, 0));
            if products
                .iter()
                .all(|&pr| ring.mul(g, pr).1.is_multiple_of(pn))
            {
                valid += 1;
            }
        }
    }
    let units = unit_count(p, m, i);
    Ok(valid / units)
}

/// `|S_e^×|` modulo `p^m`: `a` a unit and `pᵉ | b`.
fn unit_count(p: u64, m: u32, e: u32) -> u64 {
    let q = p.pow(m);
    if e == 0 {
        return q * q - (q / p) * (q / p);
    }
    (q - q / p) * (q / p.pow(e.min(m)))
}

/// `[S₀^× : S_e^×]` by counting residues modulo `p^m`.
pub fn unit_index_oracle(p: u64, e: u32, m: u32) -> Result<u64> {
    if m < e + 1 {
        return Err(Error::PrecisionError(m));
    }
    let q = p.pow(m);
    let pe = p.pow(e);
    let mut all = 0u64;
    let mut sub = 0u64;
    for a in 0..q {
        for b in 0..q {
            if a % p == 0 && b % p == 0 {
                continue;
            }
            all += 1;
            if b % pe == 0 {
                sub += 1;
            }
        }
    }
    Ok(all / sub)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_spot_values() {
        let c = |n| PadicConfig::with_default_u(3, n).unwrap();
        assert_eq!(balanced_count(&c(0), (0, 0, 0)).unwrap(), 1);
        assert_eq!(balanced_count(&c(4), (2, 2, 2)).unwrap(), 3);
        assert_eq!(balanced_count(&c(4), (1, 1, 2)).unwrap(), 4);
        assert_eq!(balanced_count(&c(2), (0, 2, 2)).unwrap(), 0);
        assert!(balanced_count(&c(2), (2, 1, 1)).is_err());
    }

    #[test]
    fn oracle_spot_values() {
        let c = |n| PadicConfig::with_default_u(3, n).unwrap();
        assert_eq!(enumerate_balanced_oracle(&c(1), (0, 0, 1), 2).unwrap(), 1);
        assert_eq!(enumerate_balanced_oracle(&c(1), (1, 1, 1), 2).unwrap(), 1);
        assert_eq!(
            enumerate_balanced_oracle(&c(2), (1, 1, 2), 3).unwrap(),
            balanced_count(&c(2), (1, 1, 2)).unwrap()
        );
        assert_eq!(
            enumerate_balanced_oracle(&c(2), (1, 1, 2), 2),
            Err(Error::PrecisionError(2))
        );
    }

    #[test]
    fn config_checks() {
        assert!(PadicConfig::new(3, 1, 2).is_ok());
        assert!(PadicConfig::new(3, 1, 1).is_err());
        assert!(PadicConfig::new(2, 1, 3).is_err());
        assert!(PadicConfig::new(9, 1, 2).is_err());
        assert_eq!(PadicConfig::with_default_u(7, 1).unwrap().u, 3);
    }

    #[test]
    fn stella_points() {
        assert_eq!(
            stella_membership(1, (1, 1, 1)),
            StellaPoint {
                inside: true,
                tetrahedron: Some(Tetrahedron::First)
            }
        );
        assert_eq!(
            stella_membership(1, (1, 1, -1)),
            StellaPoint {
                inside: true,
                tetrahedron: Some(Tetrahedron::Second)
            }
        );
        assert!(!stella_membership(2, (0, 2, 2)).inside);
        assert_eq!(
            stella_membership(2, (0, 0, 0)).tetrahedron,
            Some(Tetrahedron::Boundary)
        );
    }

    #[test]
    fn unit_indices() {
        for p in [3u64, 5] {
            for e in 1..=3u32 {
                assert_eq!(
                    unit_index_oracle(p, e, e + 1).unwrap(),
                    p.pow(e - 1) * (p + 1)
                );
            }
        }
    }
}
