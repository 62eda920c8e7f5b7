//! Fraction-free (Bareiss) elimination over exact domains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub trait ExactDomain: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    /// Division known to be exact.
    fn div_exact(&self, rhs: &Self) -> Result<Self>;
    /// Whether this entry may serve as a pivot.
    fn usable_pivot(&self) -> bool {
        !self.is_zero()
    }
}

impl ExactDomain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        if Zero::is_zero(rhs) {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.div_rem(rhs);
        debug_assert!(Zero::is_zero(&r), "Bareiss division must be exact");
        Ok(q)
    }
}

impl ExactDomain for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn usable_pivot(&self) -> bool {
        self.is_invertible()
    }
}

/// Result of forward elimination: `pivots[k] = (row k, column)`, and
/// `row_labels[k]` is the original index of the row now stored at `k`.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub pivots: Vec<usize>,
    pub row_labels: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Fraction-free forward elimination on the first `pivot_cols` columns.
pub fn bareiss<T: ExactDomain>(rows: &mut [Vec<T>], pivot_cols: usize) -> Result<Echelon> {
    let n = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut labels: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..pivot_cols.min(ncols) {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| rows[i][c].usable_pivot()) else {
            if (r..n).any(|i| !rows[i][c].is_zero()) {
                return Err(Error::NotInvertible(
                    "no invertible pivot available".to_string(),
                ));
            }
            continue;
        };
        rows.swap(r, p);
        labels.swap(r, p);
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            if row[c].is_zero() {
                // (p * x - 0) / prev
                for x in row.iter_mut().take(ncols).skip(c + 1) {
                    if !x.is_zero() {
                        *x = pivot_row[c].mul(x).div_exact(&prev)?;
                    }
                }
                continue;
            }
            for j in (c + 1)..ncols {
                let v = pivot_row[c].mul(&row[j]).sub(&row[c].mul(&pivot_row[j]));
                row[j] = if v.is_zero() { v } else { v.div_exact(&prev)? };
            }
            row[c] = T::zero();
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Ok(Echelon {
        pivots,
        row_labels: labels,
    })
}

/// Exact inverse of a square matrix of scalars given as rows.
pub fn invert(a: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = a.len();
    let mut rows: Vec<Vec<Scalar>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }));
            row
        })
        .collect();
    let ech = bareiss(&mut rows, n)?;
    if ech.rank() < n {
        return Err(Error::Singular);
    }
    let mut x: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); n]; n];
    for i in (0..n).rev() {
        let pivot_inv = rows[i][i].inv()?;
        for col in 0..n {
            let mut acc = rows[i][n + col].clone();
            for k in (i + 1)..n {
                if !rows[i][k].is_zero() && !x[k][col].is_zero() {
                    acc = &acc - &(&rows[i][k] * &x[k][col]);
                }
            }
            x[i][col] = &acc * &pivot_inv;
        }
    }
    Ok(x)
}

/// Solution set of a rational linear system `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSolution {
    pub rank: usize,
    /// Particular solution with all free variables set to zero, if consistent.
    pub particular: Option<Vec<BigRational>>,
    /// One basis vector per free variable.
    pub null_space: Vec<Vec<BigRational>>,
    /// Indices of the original equations left inconsistent after elimination.
    pub conflicting: Vec<usize>,
}

fn row_to_integers(row: &[BigRational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(<BigInt as One>::one(), |acc, c| acc.lcm(c.denom()));
    row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

/// Solve `A x = b` exactly: integer-scaled Bareiss elimination followed by
/// rational back substitution.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> LinearSolution {
    let nvars = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(r, rhs)| {
            let mut full = r.clone();
            full.push(rhs.clone());
            row_to_integers(&full)
        })
        .collect();
    let ech = bareiss(&mut rows, nvars).expect("integer elimination cannot fail");
    let rank = ech.rank();
    let conflicting: Vec<usize> = (rank..rows.len())
        .filter(|&i| !Zero::is_zero(&rows[i][nvars]))
        .map(|i| ech.row_labels[i])
        .collect();

    let mut red: Vec<Vec<BigRational>> = rows[..rank]
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    for k in (0..rank).rev() {
        let pc = ech.pivots[k];
        let p = red[k][pc].clone();
        for v in red[k].iter_mut() {
            *v /= &p;
        }
        let (above, rest) = red.split_at_mut(k);
        for row in above.iter_mut() {
            let f = row[pc].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&rest[0]).take(nvars + 1) {
                *x -= &f * y;
            }
        }
    }

    let free: Vec<usize> = (0..nvars).filter(|c| !ech.pivots.contains(c)).collect();
    let null_space = free
        .iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); nvars];
            v[f] = BigRational::one();
            for (k, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = -red[k][f].clone();
            }
            v
        })
        .collect();
    let particular = conflicting.is_empty().then(|| {
        let mut x = vec![BigRational::zero(); nvars];
        for (k, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = red[k][nvars].clone();
        }
        x
    });
    LinearSolution {
        rank,
        particular,
        null_space,
        conflicting,
    }
}
