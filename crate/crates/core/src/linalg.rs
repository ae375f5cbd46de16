//! Exact determinant, rank and linear solves for small rational matrices.
//!
//! Rows are first scaled to integers, then reduced with Bareiss'
//! fraction-free elimination so every intermediate stays an integer whose
//! size is bounded by a minor of the input.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        RatMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Submatrix on the given row and column index sets.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        RatMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Integer rows obtained by multiplying each row with the lcm of its
    /// denominators. Returns the scaled rows and the product of the scales.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut total = BigInt::one();
        let rows = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                total *= &lcm;
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();
        (rows, total)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Bareiss elimination in place. Returns the rank and, for square input of
/// full rank, the determinant sign-corrected for row swaps.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            swaps += 1;
        }
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    let det = if rank == rows && rows == cols {
        if swaps % 2 == 1 {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    (rank, det)
}

/// Exact determinant of a square matrix.
pub fn rat_det(m: &RatMatrix) -> Result<Rational> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    if m.rows == 0 {
        return Ok(Rational::one());
    }
    let (rows, scale) = m.integer_rows();
    let (_, det) = bareiss(rows, m.cols);
    Ok(Rational::new(det, scale))
}

/// Exact rank over the rationals.
pub fn rat_rank(m: &RatMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let (rows, _) = m.integer_rows();
    bareiss(rows, m.cols).0
}

/// Solves `m x = rhs`. Returns one solution when the system is consistent
/// (the unique one when `m` has full column rank), `None` otherwise.
pub fn solve(m: &RatMatrix, rhs: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if rhs.len() != m.rows {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} rows",
            rhs.len(),
            m.rows
        )));
    }
    let n = m.cols;
    let mut aug: Vec<Vec<Rational>> = (0..m.rows)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..aug.len()).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(p, rank);
        let inv = aug[rank][col].recip();
        for x in aug[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..aug.len() {
            if r != rank && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=n {
                    let delta = &f * &aug[rank][c];
                    aug[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if aug[rank..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Ok(Some(x))
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// the first row. Only meant for the small symbolic identities (n <= 6).
pub fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "poly_det needs a square matrix");
    let nvars = m.first().and_then(|r| r.first()).map_or(0, Poly::nvars);
    if n == 0 {
        return Poly::constant(nvars, Rational::one());
    }
    let idx: Vec<usize> = (0..n).collect();
    poly_det_rec(m, 0, &idx, nvars)
}

fn poly_det_rec(m: &[Vec<Poly>], row: usize, cols: &[usize], nvars: usize) -> Poly {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = Poly::zero(nvars);
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = &m[row][c] * &poly_det_rec(m, row + 1, &rest, nvars);
        acc = if k % 2 == 0 { acc + minor } else { acc - minor };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn laplace(m: &RatMatrix) -> Rational {
        let n = m.rows();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = Rational::zero();
        for c in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&x| x != c).collect();
            let term = m.get(0, c) * laplace(&m.select(&rows, &cols));
            if c % 2 == 0 {
                acc += term
            } else {
                acc -= term
            }
        }
        acc
    }

    #[test]
    fn identity_determinant_is_one() {
        assert_eq!(rat_det(&RatMatrix::identity(3)).unwrap(), int(1));
    }

    #[test]
    fn non_square_determinant_errors() {
        let m = RatMatrix::zeros(2, 3);
        assert!(matches!(rat_det(&m), Err(Error::Dimension(_))));
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(rat_rank(&RatMatrix::zeros(6, 6)), 0);
    }

    #[test]
    fn fractional_entries() {
        let m = RatMatrix::from_rows(vec![
            vec![frac(1, 2), frac(1, 3)],
            vec![frac(1, 4), frac(1, 5)],
        ])
        .unwrap();
        assert_eq!(rat_det(&m).unwrap(), frac(1, 10) - frac(1, 12));
    }

    #[test]
    fn row_swap_flips_sign() {
        let m = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(rat_det(&m).unwrap(), int(-1));
        let m = RatMatrix::from_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).unwrap();
        assert_eq!(rat_det(&m).unwrap(), int(-1));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = RatMatrix::from_i64(&[&[1, 1], &[1, -1], &[2, 0]]).unwrap();
        let x = solve(&m, &[int(3), int(1), int(4)]).unwrap().unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        assert!(solve(&m, &[int(3), int(1), int(5)]).unwrap().is_none());
    }

    #[test]
    fn poly_det_of_symbolic_2x2() {
        let a = Poly::var(2, 0);
        let b = Poly::var(2, 1);
        let d = poly_det(&[vec![a.clone(), b.clone()], vec![b.clone(), a.clone()]]);
        assert_eq!(d, &(&a * &a) - &(&b * &b));
    }

    proptest::proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(
            n in 1usize..=4,
            vals in proptest::collection::vec((-9i64..=9, 1i64..=4), 16)
        ) {
            let entries = vals.iter().take(n * n).map(|&(p, q)| frac(p, q)).collect();
            let m = RatMatrix::new(n, n, entries).unwrap();
            proptest::prop_assert_eq!(rat_det(&m).unwrap(), laplace(&m));
        }
    }
}
