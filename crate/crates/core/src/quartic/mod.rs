//! Quartic rings from pairs of ternary quadratic forms.
//!
//! Index pairs are ordered `11, 22, 33, 12, 13, 23` throughout, both for the
//! coefficients of a pair and for the rows and columns of a λ-system.

mod maximal;
mod resolvent;

pub use maximal::{
    is_maximal, is_maximal_at_p, nonmaximality_conditions, square_divisor_primes,
    MaximalityCondition, PMaximality,
};
pub use resolvent::{
    count_numerical_resolvents, cubic_resolvent_form, disc_match, enumerate_numerical_resolvents,
    minimal_resolvent, pair_from_ring, pair_in_resolvent, resolvent_identity_check,
    MinimalResolvent,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{det, int_rat, solve_unique, Rat};

pub const PAIR_LABELS: [&str; 6] = ["11", "22", "33", "12", "13", "23"];

/// Position of the index pair `{i, j}` (0-based) in the standard order.
pub fn pair_index(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 0) => 0,
        (1, 1) => 1,
        (2, 2) => 2,
        (0, 1) => 3,
        (0, 2) => 4,
        _ => 5,
    }
}

/// `φ(x) = Σ_{i≤j} (a_ij η₁ + b_ij η₂) xᵢxⱼ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernaryPair {
    pub a: [BigInt; 6],
    pub b: [BigInt; 6],
}

impl TernaryPair {
    pub fn new(a: [i64; 6], b: [i64; 6]) -> Self {
        TernaryPair {
            a: a.map(BigInt::from),
            b: b.map(BigInt::from),
        }
    }

    /// The pair of ℤ⁴, from the resolvent `(ab + cd, ac + bd, ad + bc)`.
    pub fn z4() -> Self {
        TernaryPair::new([0, 0, 0, 1, 0, -1], [0, 0, 0, 0, 1, -1])
    }

    pub fn mu(&self, p: usize) -> [BigInt; 2] {
        [self.a[p].clone(), self.b[p].clone()]
    }

    /// `φ(x)` in coordinates `(η₁, η₂)`.
    pub fn eval(&self, x: &[BigInt; 3]) -> [BigInt; 2] {
        let mut out = [BigInt::zero(), BigInt::zero()];
        for i in 0..3 {
            for j in i..3 {
                let p = pair_index(i, j);
                let m = &x[i] * &x[j];
                out[0] += &self.a[p] * &m;
                out[1] += &self.b[p] * &m;
            }
        }
        out
    }

    pub fn scale_a(&self, k: &BigInt) -> Self {
        TernaryPair {
            a: self.a.clone().map(|x| x * k),
            b: self.b.clone(),
        }
    }
}

impl fmt::Display for TernaryPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: &[BigInt; 6]| {
            v.iter()
                .map(BigInt::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "A = [{}], B = [{}]", s(&self.a), s(&self.b))
    }
}

/// `λ^{ij}_{kl} = a_ij b_kl − b_ij a_kl`, stored as an antisymmetric 6×6 matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaSystem(pub [[BigInt; 6]; 6]);

impl LambdaSystem {
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &BigInt {
        &self.0[pair_index(i, j)][pair_index(k, l)]
    }

    /// The 15 values `λ_pq` for `p < q`.
    pub fn values(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(15);
        for p in 0..6 {
            for q in p + 1..6 {
                out.push(self.0[p][q].clone());
            }
        }
        out
    }

    pub fn from_values(v: &[BigInt]) -> Result<Self> {
        if v.len() != 15 {
            return Err(Error::DimensionError(format!(
                "{} λ values, expected 15",
                v.len()
            )));
        }
        let mut m: [[BigInt; 6]; 6] = Default::default();
        let mut it = v.iter();
        for p in 0..6 {
            for q in p + 1..6 {
                let x = it.next().expect("15 values");
                m[p][q] = x.clone();
                m[q][p] = -x;
            }
        }
        Ok(LambdaSystem(m))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }
}

pub fn lambda_system(pair: &TernaryPair) -> LambdaSystem {
    let mut m: [[BigInt; 6]; 6] = Default::default();
    for p in 0..6 {
        for q in 0..6 {
            m[p][q] = &pair.a[p] * &pair.b[q] - &pair.b[p] * &pair.a[q];
        }
    }
    LambdaSystem(m)
}

/// `λ_pq λ_rs − λ_pr λ_qs + λ_ps λ_qr = 0` for each `p < q < r < s`.
pub fn plucker_check(l: &LambdaSystem) -> bool {
    let m = &l.0;
    for p in 0..6 {
        for q in p + 1..6 {
            for r in q + 1..6 {
                for s in r + 1..6 {
                    let v = &m[p][q] * &m[r][s] - &m[p][r] * &m[q][s] + &m[p][s] * &m[q][r];
                    if !v.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Element `x₀ + x₁ξ₁ + x₂ξ₂ + x₃ξ₃`.
pub type QuarticElem = [Rat; 4];

/// `ξᵢξⱼ = c[i][j][0] + Σ_k c[i][j][k] ξ_k`, with `i, j` 0-based and `k` shifted by one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuarticRing {
    pub c: [[[BigInt; 4]; 3]; 3],
}

/// Sign of `(i, j, k)` as a permutation of `(0, 1, 2)`.
pub fn perm_sign(i: usize, j: usize, k: usize) -> i32 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        _ => -1,
    }
}

pub const PERMUTATIONS: [(usize, usize, usize); 6] = [
    (0, 1, 2),
    (0, 2, 1),
    (1, 0, 2),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
];

pub fn elem_from_ints(v: [i64; 4]) -> QuarticElem {
    v.map(|x| Rat::from_integer(BigInt::from(x)))
}

impl QuarticRing {
    pub fn from_table(c: [[[BigInt; 4]; 3]; 3]) -> Result<Self> {
        let q = QuarticRing { c };
        for i in 0..3 {
            for j in 0..3 {
                if q.c[i][j] != q.c[j][i] {
                    return Err(Error::DomainError(format!(
                        "ξ{}ξ{} and ξ{}ξ{} differ",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        if !q.is_associative() {
            return Err(Error::DomainError(
                "multiplication table is not associative".into(),
            ));
        }
        Ok(q)
    }

    pub fn is_trivial(&self) -> bool {
        self.c.iter().flatten().flatten().all(Zero::is_zero)
    }

    pub fn mul(&self, x: &QuarticElem, y: &QuarticElem) -> QuarticElem {
        let mut out: QuarticElem = std::array::from_fn(|_| Rat::zero());
        for i in 0..4 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                let c = &x[i] * &y[j];
                if c.is_zero() {
                    continue;
                }
                if i == 0 || j == 0 {
                    out[i + j] += c;
                } else {
                    for (o, t) in out.iter_mut().zip(&self.c[i - 1][j - 1]) {
                        *o += &c * int_rat(t);
                    }
                }
            }
        }
        out
    }

    pub fn is_associative(&self) -> bool {
        let basis: Vec<QuarticElem> = (0..4)
            .map(|i| std::array::from_fn(|k| if k == i { Rat::one() } else { Rat::zero() }))
            .collect();
        basis.iter().all(|x| {
            basis.iter().all(|y| {
                basis
                    .iter()
                    .all(|z| self.mul(&self.mul(x, y), z) == self.mul(x, &self.mul(y, z)))
            })
        })
    }

    pub fn trace(&self, x: &QuarticElem) -> Rat {
        (0..4)
            .map(|j| {
                let e: QuarticElem =
                    std::array::from_fn(|k| if k == j { Rat::one() } else { Rat::zero() });
                self.mul(x, &e)[j].clone()
            })
            .sum()
    }

    /// Translate `ξᵢ` by integers so that `c₁₂¹ = c₂₃² = c₁₃³ = 0`.
    pub fn normalized(&self) -> QuarticRing {
        // ξᵢ' = ξᵢ + tᵢ shifts c_ij^j by tᵢ and c_ij^i by tⱼ
        let t = [
            -self.c[0][2][3].clone(),
            -self.c[0][1][1].clone(),
            -self.c[1][2][2].clone(),
        ];
        let mut c = self.c.clone();
        for i in 0..3 {
            for j in 0..3 {
                let row = &mut c[i][j];
                // ξᵢ'ξⱼ' = ξᵢξⱼ + tⱼξᵢ + tᵢξⱼ + tᵢtⱼ, then rewrite ξ_k = ξ_k' − t_k
                row[i + 1] += &t[j];
                row[j + 1] += &t[i];
                let mut konst = &self.c[i][j][0] + &t[i] * &t[j];
                for k in 0..3 {
                    konst -= &row[k + 1] * &t[k];
                }
                row[0] = konst;
            }
        }
        QuarticRing { c }
    }
}

const SUB: [char; 3] = ['₁', '₂', '₃'];

impl fmt::Display for QuarticRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for i in 0..3 {
            for j in i..3 {
                let c = &self.c[i][j];
                parts.push(format!(
                    "ξ{}ξ{} = {} + {}ξ₁ + {}ξ₂ + {}ξ₃",
                    SUB[i], SUB[j], c[0], c[1], c[2], c[3]
                ));
            }
        }
        write!(f, "{}", parts.join(", "))
    }
}

fn epsilon(i: usize, j: usize, k: usize) -> BigInt {
    BigInt::from(perm_sign(i, j, k))
}

pub fn ring_from_pair(pair: &TernaryPair) -> QuarticRing {
    let lam = lambda_system(pair);
    let l = |i, j, k, m| lam.get(i, j, k, m).clone();
    let mut c: [[[BigInt; 4]; 3]; 3] = Default::default();
    let set = |c: &mut [[[BigInt; 4]; 3]; 3], i: usize, j: usize, k: usize, v: BigInt| {
        c[i][j][k] = v.clone();
        c[j][i][k] = v;
    };
    for (i, j, k) in PERMUTATIONS {
        let e = epsilon(i, j, k);
        set(&mut c, i, i, j + 1, &e * l(i, k, i, i));
        set(&mut c, i, j, k + 1, &e * l(i, i, j, j));
    }
    set(&mut c, 0, 1, 2, l(1, 2, 0, 0));
    set(&mut c, 1, 2, 3, l(0, 2, 1, 1));
    set(&mut c, 0, 2, 1, l(0, 1, 2, 2));
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let v = l(i, j, i, k) + &c[i][j][j + 1] + &c[i][k][k + 1];
        set(&mut c, i, i, i + 1, v);
    }
    let q = QuarticRing { c };
    let konst = constant_terms(&q).expect("associativity determines the constant terms");
    let mut c = q.c;
    for i in 0..3 {
        for j in i..3 {
            set(&mut c, i, j, 0, konst[pair_index(i, j)].clone());
        }
    }
    let q = QuarticRing { c };
    debug_assert!(q.is_associative());
    q
}

/// Solves for `c_ij⁰` from the ξ-components of `(ξᵢξⱼ)ξₖ = ξᵢ(ξⱼξₖ)`, which are linear in them.
fn constant_terms(q: &QuarticRing) -> Option<Vec<BigInt>> {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for m in 0..3 {
                    let mut row = vec![Rat::zero(); 6];
                    if k == m {
                        row[pair_index(i, j)] += Rat::one();
                    }
                    if i == m {
                        row[pair_index(j, k)] -= Rat::one();
                    }
                    let mut known = BigInt::zero();
                    for l in 0..3 {
                        known += &q.c[i][j][l + 1] * &q.c[l][k][m + 1]
                            - &q.c[j][k][l + 1] * &q.c[i][l][m + 1];
                    }
                    rows.push(row);
                    rhs.push(int_rat(&-known));
                }
            }
        }
    }
    let sol = solve_unique(&rows, &rhs)?;
    sol.into_iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// The 15 λ values recovered from a table; translation invariant.
pub fn lambda_from_ring(q: &QuarticRing) -> LambdaSystem {
    let c = &q.c;
    let mut m: [[BigInt; 6]; 6] = Default::default();
    let mut put = |p: usize, r: usize, v: BigInt| {
        m[r][p] = -&v;
        m[p][r] = v;
    };
    for (i, j, k) in PERMUTATIONS {
        let e = epsilon(i, j, k);
        put(pair_index(i, k), pair_index(i, i), &e * &c[i][i][j + 1]);
        if i < j {
            put(pair_index(i, i), pair_index(j, j), &e * &c[i][j][k + 1]);
        }
        if j < k {
            put(
                pair_index(j, k),
                pair_index(i, i),
                &e * (&c[i][j][j + 1] - &c[i][k][k + 1]),
            );
            put(
                pair_index(i, j),
                pair_index(i, k),
                &e * (&c[i][i][i + 1] - &c[i][j][j + 1] - &c[i][k][k + 1]),
            );
        }
    }
    LambdaSystem(m)
}

/// Determinant of the trace pairing on `(1, ξ₁, ξ₂, ξ₃)`.
pub fn disc_quartic(q: &QuarticRing) -> BigInt {
    let basis: Vec<QuarticElem> = (0..4)
        .map(|i| std::array::from_fn(|k| if k == i { Rat::one() } else { Rat::zero() }))
        .collect();
    let m: Vec<Vec<Rat>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| q.trace(&q.mul(x, y))).collect())
        .collect();
    det(m).to_integer()
}
