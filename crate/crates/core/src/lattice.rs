//! Exact rational matrices and canonical bases of full-rank lattices.
//!
//! A lattice is stored through its canonical basis: the generators are scaled by
//! the lcm of their denominators, put in row Hermite normal form (upper
//! triangular, positive pivots, entries above a pivot reduced into `[0, pivot)`),
//! and scaled back. Two generating sets of the same lattice give equal bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

/// Row-major matrix of rationals with 1 to 4 columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if rows == 0 || cols == 0 || cols > 4 {
            return Err(Error::DimensionError(format!("{rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionError(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionError("ragged rows".into()));
        }
        RatMatrix::new(n, m, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::DimensionError(
                "determinant of a non-square matrix".into(),
            ));
        }
        Ok(det(self.row_vecs()))
    }

    pub fn rank(&self) -> usize {
        rank(self.row_vecs())
    }
}

/// Determinant by Gaussian elimination over the rationals.
pub fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut acc = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            m.swap(p, col);
            acc = -acc;
        }
        let piv = m[col][col].clone();
        acc *= &piv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &piv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    acc
}

fn rank(mut m: Vec<Vec<Rat>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let piv = m[r][col].clone();
        for i in r + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &piv;
            for c in col..cols {
                let t = &f * &m[r][c];
                m[i][c] -= t;
            }
        }
        r += 1;
    }
    r
}

/// Solves `a x = b` and returns `x` only when the solution exists and is unique.
pub fn solve_unique(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut r = 0;
    for col in 0..n {
        let p = (r..m.len()).find(|&i| !m[i][col].is_zero())?;
        m.swap(p, r);
        let piv = m[r][col].clone();
        for c in col..=n {
            m[r][c] = &m[r][c] / &piv;
        }
        for i in 0..m.len() {
            if i == r || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for c in col..=n {
                let t = &f * &m[r][c];
                m[i][c] -= t;
            }
        }
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// Canonical basis of a full-rank lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    basis: RatMatrix,
}

impl LatticeBasis {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn rows(&self) -> Vec<Vec<Rat>> {
        self.basis.row_vecs()
    }

    /// Covolume; positive because the canonical basis is triangular with positive pivots.
    pub fn det(&self) -> Rat {
        (0..self.dim()).fold(Rat::one(), |acc, i| acc * self.basis.get(i, i))
    }

    /// Integer coordinates of `v` in the canonical basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<BigInt>> {
        let n = self.dim();
        if v.len() != n {
            return None;
        }
        let mut rest = v.to_vec();
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n {
            let x = &rest[i] / self.basis.get(i, i);
            if !x.is_integer() {
                return None;
            }
            for j in i..n {
                let t = &x * self.basis.get(i, j);
                rest[j] -= t;
            }
            out[i] = x.to_integer();
        }
        Some(out)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_lattice(&self, other: &LatticeBasis) -> bool {
        other.rows().iter().all(|r| self.contains(r))
    }

    /// Lattice generated by both sets of generators.
    pub fn sum(&self, other: &LatticeBasis) -> Result<LatticeBasis> {
        let mut rows = self.rows();
        rows.extend(other.rows());
        hnf_canonicalize(&RatMatrix::from_rows(rows)?)
    }

    pub fn scale(&self, k: &Rat) -> Result<LatticeBasis> {
        let rows = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * k).collect())
            .collect();
        hnf_canonicalize(&RatMatrix::from_rows(rows)?)
    }
}

/// Row Hermite normal form of an integer matrix; zero rows are dropped.
pub fn integer_hnf(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for col in 0..cols {
        loop {
            let piv = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by_key(|&i| rows[i][col].abs());
            let Some(piv) = piv else { break };
            rows.swap(r, piv);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                for c in col..cols {
                    let t = &q * &rows[r][c];
                    rows[i][c] -= t;
                }
                if !rows[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r >= rows.len() || rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for c in col..cols {
                rows[r][c] = -&rows[r][c];
            }
        }
        for i in 0..r {
            let q = rows[i][col].div_floor(&rows[r][col]);
            if q.is_zero() {
                continue;
            }
            for c in col..cols {
                let t = &q * &rows[r][c];
                rows[i][c] -= t;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Canonical basis of the lattice spanned by the rows of `m`.
pub fn hnf_canonicalize(m: &RatMatrix) -> Result<LatticeBasis> {
    let cols = m.ncols();
    let scale = m
        .row_vecs()
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Vec<BigInt>> = m
        .row_vecs()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| (x * int_rat(&scale)).to_integer())
                .collect()
        })
        .collect();
    let h = integer_hnf(ints, cols);
    let full = h.len() == cols && (0..cols).all(|i| !h[i][i].is_zero());
    if !full {
        return Err(Error::RankError);
    }
    let data = h
        .into_iter()
        .flatten()
        .map(|x| Rat::new(x, scale.clone()))
        .collect();
    Ok(LatticeBasis {
        basis: RatMatrix::new(cols, cols, data)?,
    })
}

/// `[sup : sub]` as `|det sub| / |det sup|`.
pub fn lattice_index(sub: &LatticeBasis, sup: &LatticeBasis) -> Result<Rat> {
    if sub.dim() != sup.dim() {
        return Err(Error::DimensionError(format!(
            "{} vs {}",
            sub.dim(),
            sup.dim()
        )));
    }
    Ok(sub.det().abs() / sup.det().abs())
}

pub fn contains(lat: &LatticeBasis, v: &[Rat]) -> bool {
    lat.contains(v)
}

pub fn divisor_sigma(n: &BigInt) -> Result<BigInt> {
    if !n.is_positive() {
        return Err(Error::DomainError(format!("divisor_sigma of {n}")));
    }
    let mut total = BigInt::zero();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            total += &d;
            let e = n / &d;
            if e != d {
                total += e;
            }
        }
        d += 1;
    }
    Ok(total)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

pub fn rat_to_string(x: &Rat) -> String {
    x.to_string()
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Malformed(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[&[i64]]) -> LatticeBasis {
        hnf_canonicalize(&RatMatrix::from_i64_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn redundant_generator_dropped() {
        assert_eq!(lat(&[&[2, 0], &[0, 3], &[2, 3]]), lat(&[&[2, 0], &[0, 3]]));
    }

    #[test]
    fn index_two_sublattice() {
        assert_eq!(lat(&[&[1, 1], &[1, -1]]).det(), rat(2));
    }

    #[test]
    fn scaled_basis() {
        let m = RatMatrix::from_rows(vec![vec![ratio(1, 5), rat(0)], vec![rat(0), ratio(1, 5)]]);
        assert_eq!(hnf_canonicalize(&m.unwrap()).unwrap().det(), ratio(1, 25));
    }

    #[test]
    fn rank_deficient() {
        let m = RatMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(hnf_canonicalize(&m), Err(Error::RankError));
    }

    #[test]
    fn indices() {
        let z2 = lat(&[&[1, 0], &[0, 1]]);
        assert_eq!(
            lattice_index(&lat(&[&[2, 0], &[0, 2]]), &z2).unwrap(),
            rat(4)
        );
        assert_eq!(lattice_index(&z2, &z2).unwrap(), rat(1));
        // Z + Z*5i inside Z + Z*i, coordinates (x, y) for x + y i
        assert_eq!(
            lattice_index(&lat(&[&[1, 0], &[0, 5]]), &z2).unwrap(),
            rat(5)
        );
        let z3 = lat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(matches!(
            lattice_index(&z2, &z3),
            Err(Error::DimensionError(_))
        ));
    }

    #[test]
    fn membership() {
        let z2 = lat(&[&[1, 0], &[0, 1]]);
        assert!(z2.contains(&[rat(3), rat(-7)]));
        assert!(!z2.contains(&[ratio(1, 2), rat(0)]));
        assert!(lat(&[&[5, 0], &[1, 1]]).contains(&[rat(6), rat(1)]));
    }

    #[test]
    fn sigma() {
        assert_eq!(divisor_sigma(&BigInt::from(1)).unwrap(), BigInt::from(1));
        assert_eq!(divisor_sigma(&BigInt::from(7)).unwrap(), BigInt::from(8));
        assert_eq!(divisor_sigma(&BigInt::from(12)).unwrap(), BigInt::from(28));
        assert!(divisor_sigma(&BigInt::from(0)).is_err());
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rat("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(rat_to_string(&ratio(2, 4)), "1/2");
        assert_eq!(rat_to_string(&rat(-4)), "-4");
        assert!(parse_rat("1/0").is_err());
    }
}
