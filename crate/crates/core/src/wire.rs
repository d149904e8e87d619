//! JSON shapes for every object the CLI reads or writes. Integers and rationals
//! are decimal strings (`"-7"`, `"3/5"`) so that no consumer has to handle overflow.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cube::{BalancedTriple, Cube, TripleBases};
use crate::cubic::{BinaryCubicForm, CubicRing, CubicTable};
use crate::error::{Error, Result};
use crate::lattice::{parse_rat, rat_to_string, Rat};
use crate::quadform::BinaryQuadraticForm;
use crate::quadring::{QuadElem, QuadIdeal, QuadraticRing};
use crate::quartic::{QuarticRing, TernaryPair};

fn int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Malformed(format!("bad integer {s:?}")))
}

fn ints<const N: usize>(v: &[String]) -> Result<[BigInt; N]> {
    if v.len() != N {
        return Err(Error::Malformed(format!(
            "expected {N} integers, got {}",
            v.len()
        )));
    }
    let parsed = v.iter().map(|s| int(s)).collect::<Result<Vec<_>>>()?;
    Ok(parsed.try_into().expect("length checked"))
}

fn strs(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

pub fn from_json<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("wire types serialize")
}

/// `[a, b, c]`.
pub type FormJson = Vec<String>;

pub fn form_to_json(f: &BinaryQuadraticForm) -> FormJson {
    strs(&[f.a.clone(), f.b.clone(), f.c.clone()])
}

pub fn form_from_json(v: &FormJson) -> Result<BinaryQuadraticForm> {
    let [a, b, c] = ints::<3>(v)?;
    Ok(BinaryQuadraticForm { a, b, c })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub t: String,
    pub u: String,
}

impl RingJson {
    pub fn from_ring(r: &QuadraticRing) -> Self {
        RingJson {
            t: r.t.to_string(),
            u: r.u.to_string(),
        }
    }

    pub fn to_ring(&self) -> Result<QuadraticRing> {
        let r = QuadraticRing {
            t: int(&self.t)?,
            u: int(&self.u)?,
        };
        if r.disc() == BigInt::from(0) {
            return Err(Error::DomainError("ring discriminant is 0".into()));
        }
        Ok(r)
    }
}

/// `x + yξ` as `[x, y]`.
pub type ElemJson = [String; 2];

fn elem_to_json(e: &QuadElem) -> ElemJson {
    [rat_to_string(&e.x), rat_to_string(&e.y)]
}

fn elem_from_json(e: &ElemJson) -> Result<QuadElem> {
    Ok(QuadElem::new(parse_rat(&e[0])?, parse_rat(&e[1])?))
}

fn basis_to_json(b: &[QuadElem; 2]) -> [ElemJson; 2] {
    [elem_to_json(&b[0]), elem_to_json(&b[1])]
}

fn basis_from_json(b: &[ElemJson; 2]) -> Result<[QuadElem; 2]> {
    Ok([elem_from_json(&b[0])?, elem_from_json(&b[1])?])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub ring: RingJson,
    pub basis: [ElemJson; 2],
}

impl IdealJson {
    pub fn from_ideal(i: &QuadIdeal) -> Self {
        IdealJson {
            ring: RingJson::from_ring(&i.ring),
            basis: basis_to_json(&i.basis()),
        }
    }

    pub fn to_ideal(&self) -> Result<QuadIdeal> {
        QuadIdeal::from_generators(&self.ring.to_ring()?, &basis_from_json(&self.basis)?)
    }
}

/// `[a, b, c, d, e, f, g, h]`.
pub type CubeJson = Vec<String>;

pub fn cube_to_json(c: &Cube) -> CubeJson {
    strs(&c.0)
}

pub fn cube_from_json(v: &CubeJson) -> Result<Cube> {
    Ok(Cube(ints::<8>(v)?))
}

/// The ideals are the spans of the bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleJson {
    pub ring: RingJson,
    pub bases: [[ElemJson; 2]; 3],
}

impl TripleJson {
    pub fn from_triple(bases: &TripleBases, t: &BalancedTriple) -> Self {
        TripleJson {
            ring: RingJson::from_ring(&t.ring),
            bases: [0, 1, 2].map(|i| basis_to_json(&bases[i])),
        }
    }

    pub fn to_triple(&self) -> Result<(BalancedTriple, TripleBases)> {
        let ring = self.ring.to_ring()?;
        let bases = [
            basis_from_json(&self.bases[0])?,
            basis_from_json(&self.bases[1])?,
            basis_from_json(&self.bases[2])?,
        ];
        let ideals = [
            QuadIdeal::from_generators(&ring, &bases[0])?,
            QuadIdeal::from_generators(&ring, &bases[1])?,
            QuadIdeal::from_generators(&ring, &bases[2])?,
        ];
        Ok((BalancedTriple { ring, ideals }, bases))
    }
}

/// `[p, q, r, s]`.
pub type CubicFormJson = Vec<String>;

pub fn cubic_form_to_json(f: &BinaryCubicForm) -> CubicFormJson {
    strs(&[f.p.clone(), f.q.clone(), f.r.clone(), f.s.clone()])
}

pub fn cubic_form_from_json(v: &CubicFormJson) -> Result<BinaryCubicForm> {
    let [p, q, r, s] = ints::<4>(v)?;
    Ok(BinaryCubicForm { p, q, r, s })
}

/// Each product as `[constant, ξ₁-coefficient, ξ₂-coefficient]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicRingJson {
    pub xi1xi1: Vec<String>,
    pub xi1xi2: Vec<String>,
    pub xi2xi2: Vec<String>,
}

impl CubicRingJson {
    pub fn from_ring(c: &CubicRing) -> Self {
        let t = c.table();
        CubicRingJson {
            xi1xi1: strs(&t.xi1xi1),
            xi1xi2: strs(&t.xi1xi2),
            xi2xi2: strs(&t.xi2xi2),
        }
    }

    /// Accepts any associative table and normalizes it.
    pub fn to_ring(&self) -> Result<CubicRing> {
        CubicTable {
            xi1xi1: ints::<3>(&self.xi1xi1)?,
            xi1xi2: ints::<3>(&self.xi1xi2)?,
            xi2xi2: ints::<3>(&self.xi2xi2)?,
        }
        .normalize()
    }
}

/// Coefficients in the order `11, 22, 33, 12, 13, 23`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
}

impl PairJson {
    pub fn from_pair(p: &TernaryPair) -> Self {
        PairJson {
            a: strs(&p.a),
            b: strs(&p.b),
        }
    }

    pub fn to_pair(&self) -> Result<TernaryPair> {
        Ok(TernaryPair {
            a: ints::<6>(&self.a)?,
            b: ints::<6>(&self.b)?,
        })
    }
}

/// Keys `"ij,k"` with `1 ≤ i ≤ j ≤ 3` and `0 ≤ k ≤ 3`; `k = 0` is the constant term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticRingJson {
    pub c: BTreeMap<String, String>,
}

impl QuarticRingJson {
    pub fn from_ring(q: &QuarticRing) -> Self {
        let mut c = BTreeMap::new();
        for i in 0..3 {
            for j in i..3 {
                for k in 0..4 {
                    c.insert(
                        format!("{}{},{}", i + 1, j + 1, k),
                        q.c[i][j][k].to_string(),
                    );
                }
            }
        }
        QuarticRingJson { c }
    }

    /// Missing keys read as 0; the table must be associative.
    pub fn to_ring(&self) -> Result<QuarticRing> {
        let mut c: [[[BigInt; 4]; 3]; 3] = Default::default();
        for (key, val) in &self.c {
            let bad = || Error::Malformed(format!("bad table key {key:?}"));
            let (ij, k) = key.split_once(',').ok_or_else(bad)?;
            let digits: Vec<usize> = ij
                .chars()
                .map(|ch| ch.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(bad)?;
            let k: usize = k.trim().parse().map_err(|_| bad())?;
            let [i, j] = digits[..] else {
                return Err(bad());
            };
            if !(1..=3).contains(&i) || !(1..=3).contains(&j) || k > 3 {
                return Err(bad());
            }
            let v = int(val)?;
            c[i - 1][j - 1][k] = v.clone();
            c[j - 1][i - 1][k] = v;
        }
        QuarticRing::from_table(c)
    }
}

pub fn rat_json(x: &Rat) -> String {
    rat_to_string(x)
}
