//! Z2-graded matrices over [`Scalar`]: Koszul-signed Kronecker products, the
//! graded flip, leg embeddings for three-fold tensor products and the graded
//! Yang-Baxter check.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{Bindings, Scalar};

/// Parity bit per basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityVector(Vec<u8>);

impl ParityVector {
    pub fn new(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "parity bits must be 0 or 1");
        ParityVector(bits)
    }

    pub fn even(dim: usize) -> Self {
        ParityVector(vec![0; dim])
    }

    /// The grading of the three-dimensional fundamental module.
    pub fn fundamental() -> Self {
        ParityVector(vec![0, 1, 0])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    /// Parities of `V ⊗ W` in row-major composite order `i * dim(W) + a`.
    pub fn tensor(&self, other: &ParityVector) -> ParityVector {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for &p in &self.0 {
            for &q in &other.0 {
                out.push((p + q) % 2);
            }
        }
        ParityVector(out)
    }
}

/// Sign rule attached to the Kronecker product of graded matrices.
///
/// For entry `((i,a),(j,b))` of `A ⊗ B`:
/// * `Standard`: `(-1)^{p(j)(p(a)+p(b))}`, i.e. `(A⊗B)(x⊗y) = (-1)^{|B||x|} Ax⊗By`;
/// * `RowParity`: `(-1)^{p(i)(p(a)+p(b))}`;
/// * `SecondRow`: `(-1)^{p(a)(p(i)+p(j))}`;
/// * `SecondCol`: `(-1)^{p(b)(p(i)+p(j))}`;
/// * `Unsigned`: no sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KoszulConvention {
    Standard,
    RowParity,
    SecondRow,
    SecondCol,
    Unsigned,
}

impl KoszulConvention {
    pub const ALL: [KoszulConvention; 5] = [
        KoszulConvention::Standard,
        KoszulConvention::RowParity,
        KoszulConvention::SecondRow,
        KoszulConvention::SecondCol,
        KoszulConvention::Unsigned,
    ];

    fn odd(self, i: u8, j: u8, a: u8, b: u8) -> bool {
        let e = match self {
            KoszulConvention::Standard => j * (a + b),
            KoszulConvention::RowParity => i * (a + b),
            KoszulConvention::SecondRow => a * (i + j),
            KoszulConvention::SecondCol => b * (i + j),
            KoszulConvention::Unsigned => 0,
        };
        e % 2 == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    rows: ParityVector,
    cols: ParityVector,
    entries: Vec<Scalar>,
}

impl GradedMatrix {
    pub fn zeros(rows: ParityVector, cols: ParityVector) -> Self {
        assert_eq!(rows.len(), cols.len(), "graded matrices are square");
        let n = rows.len();
        GradedMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); n * n],
        }
    }

    pub fn zeros_on(p: &ParityVector) -> Self {
        GradedMatrix::zeros(p.clone(), p.clone())
    }

    pub fn identity(p: &ParityVector) -> Self {
        let mut m = GradedMatrix::zeros_on(p);
        for i in 0..p.len() {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(p: &ParityVector, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let n = p.len();
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        GradedMatrix {
            rows: p.clone(),
            cols: p.clone(),
            entries,
        }
    }

    /// Zero matrix with the given 1-based `(row, col, value)` entries.
    pub fn from_entries(
        p: &ParityVector,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut m = GradedMatrix::zeros_on(p);
        for (i, j, v) in entries {
            m.set(i - 1, j - 1, v);
        }
        m
    }

    /// Elementary matrix `E_ij` (1-based).
    pub fn unit(p: &ParityVector, i: usize, j: usize) -> Self {
        GradedMatrix::from_entries(p, [(i, j, Scalar::one())])
    }

    pub fn diagonal(p: &ParityVector, diag: Vec<Scalar>) -> Self {
        assert_eq!(p.len(), diag.len());
        let mut m = GradedMatrix::zeros_on(p);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn row_parity(&self) -> &ParityVector {
        &self.rows
    }

    pub fn col_parity(&self) -> &ParityVector {
        &self.cols
    }

    /// Parity of the space, for matrices acting on a single graded space.
    pub fn parity(&self) -> &ParityVector {
        &self.rows
    }

    /// 0-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let n = self.dim();
        self.entries[i * n + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// Nonzero entries as 0-based `(i, j, value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        let n = self.dim();
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / n, k % n, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        self.entries.iter().enumerate().all(|(k, v)| {
            if k / n == k % n {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    }

    /// `Some(d)` if every nonzero entry `(i, j)` has `p(i) + p(j) = d (mod 2)`.
    pub fn degree(&self) -> Option<u8> {
        let mut deg = None;
        for (i, j, _) in self.nonzero() {
            let d = (self.rows.get(i) + self.cols.get(j)) % 2;
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar + Sync + Send) -> GradedMatrix {
        GradedMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.par_iter().map(f).collect(),
        }
    }

    pub fn try_map(
        &self,
        f: impl Fn(&Scalar) -> Result<Scalar> + Sync + Send,
    ) -> Result<GradedMatrix> {
        Ok(GradedMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.par_iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn scale(&self, c: &Scalar) -> GradedMatrix {
        self.map(|v| v * c)
    }

    pub fn scale_rational(&self, c: &BigRational) -> GradedMatrix {
        self.map(|v| v.scale(c))
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<GradedMatrix> {
        self.try_map(|v| v.substitute(bindings))
    }

    pub fn limit_at_one(&self) -> Result<GradedMatrix> {
        self.try_map(Scalar::limit_at_one)
    }

    pub fn truncate_xi(&self, order: u32) -> GradedMatrix {
        self.map(|v| v.truncate_xi(order))
    }

    pub fn xi_coefficient(&self, k: u32) -> GradedMatrix {
        self.map(|v| v.xi_coefficient(k))
    }

    pub fn transpose(&self) -> GradedMatrix {
        let n = self.dim();
        GradedMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries: (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &GradedMatrix) -> Result<GradedMatrix> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} x {} product",
                self.dim(),
                rhs.dim()
            )));
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(
                "column and row gradings differ".to_string(),
            ));
        }
        let n = self.dim();
        let sparse_rhs: Vec<Vec<(usize, &Scalar)>> = (0..n)
            .map(|k| {
                (0..n)
                    .filter_map(|j| {
                        let v = rhs.get(k, j);
                        (!v.is_zero()).then_some((j, v))
                    })
                    .collect()
            })
            .collect();
        let rows: Vec<Vec<Scalar>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![Scalar::zero(); n];
                for (k, sparse_row) in sparse_rhs.iter().enumerate() {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    for &(j, b) in sparse_row {
                        row[j] = &row[j] + &(a * b);
                    }
                }
                row
            })
            .collect();
        Ok(GradedMatrix {
            rows: self.rows.clone(),
            cols: rhs.cols.clone(),
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn pow(&self, e: u32) -> GradedMatrix {
        let mut acc = GradedMatrix::identity(&self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Graded bracket `ab - (-1)^{|a||b|} ba`; both operands must be homogeneous.
    pub fn bracket(&self, rhs: &GradedMatrix) -> Result<GradedMatrix> {
        let (da, db) = match (self.degree(), rhs.degree()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::InvalidArgument(
                    "graded bracket needs homogeneous operands".to_string(),
                ))
            }
        };
        let ab = self.checked_mul(rhs)?;
        let ba = rhs.checked_mul(self)?;
        Ok(if da * db == 1 { &ab + &ba } else { &ab - &ba })
    }

    /// Plain commutator `ab - ba`.
    pub fn commutator(&self, rhs: &GradedMatrix) -> GradedMatrix {
        &(self * rhs) - &(rhs * self)
    }

    /// Exact inverse by fraction-free elimination.
    pub fn inverse(&self) -> Result<GradedMatrix> {
        let n = self.dim();
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let inv = linalg::invert(&rows)?;
        Ok(GradedMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries: inv.into_iter().flatten().collect(),
        })
    }

    /// `exp(N)` for nilpotent `N`, as the terminating series.
    pub fn exp_nilpotent(&self) -> Result<GradedMatrix> {
        let n = self.dim();
        let mut acc = GradedMatrix::identity(&self.rows);
        let mut term = GradedMatrix::identity(&self.rows);
        for k in 1..=n {
            term = (&term * self).scale_rational(&BigRational::new(1.into(), (k as i64).into()));
            if term.is_zero() {
                return Ok(acc);
            }
            acc = &acc + &term;
        }
        Err(Error::NotNilpotent(n))
    }

    /// `log(U)` for unipotent `U`.
    pub fn log_unipotent(&self) -> Result<GradedMatrix> {
        let n = self.dim();
        let nil = self - &GradedMatrix::identity(&self.rows);
        let mut acc = GradedMatrix::zeros_on(&self.rows);
        let mut power = GradedMatrix::identity(&self.rows);
        for k in 1..=n {
            power = &power * &nil;
            if power.is_zero() {
                return Ok(acc);
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = &acc + &power.scale_rational(&BigRational::new(sign.into(), (k as i64).into()));
        }
        Err(Error::NotNilpotent(n))
    }

    /// Nilpotency index: the least `k` with `N^k = 0`, if any `k <= dim`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut p = GradedMatrix::identity(&self.rows);
        for k in 1..=self.dim() {
            p = &p * self;
            if p.is_zero() {
                return Some(k);
            }
        }
        None
    }

    pub fn rank(&self) -> usize {
        let n = self.dim();
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        linalg::bareiss(&mut rows, n).map(|e| e.rank()).unwrap_or(n)
    }
}

impl Add for &GradedMatrix {
    type Output = GradedMatrix;
    fn add(self, rhs: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in sum");
        GradedMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &GradedMatrix {
    type Output = GradedMatrix;
    fn sub(self, rhs: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in difference");
        GradedMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &GradedMatrix {
    type Output = GradedMatrix;
    fn neg(self) -> GradedMatrix {
        self.map(|v| -v)
    }
}

impl Mul for &GradedMatrix {
    type Output = GradedMatrix;
    fn mul(self, rhs: &GradedMatrix) -> GradedMatrix {
        self.checked_mul(rhs).expect("incompatible matrix product")
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|j| self.get(i, j).to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Koszul-signed Kronecker product under the standard convention.
pub fn gkron(a: &GradedMatrix, b: &GradedMatrix) -> GradedMatrix {
    gkron_with(a, b, KoszulConvention::Standard)
}

pub fn gkron_with(a: &GradedMatrix, b: &GradedMatrix, conv: KoszulConvention) -> GradedMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let rows = a.rows.tensor(&b.rows);
    let cols = a.cols.tensor(&b.cols);
    let mut out = GradedMatrix::zeros(rows, cols);
    let bnz: Vec<(usize, usize, &Scalar)> = b.nonzero().collect();
    for (i, j, av) in a.nonzero() {
        for &(x, y, bv) in &bnz {
            let mut v = av * bv;
            if conv.odd(a.rows.get(i), a.cols.get(j), b.rows.get(x), b.cols.get(y)) {
                v = -v;
            }
            out.set(i * nb + x, j * nb + y, v);
        }
    }
    debug_assert_eq!(out.dim(), na * nb);
    out
}

/// Graded flip `V_a ⊗ V_b -> V_b ⊗ V_a`, `e_i ⊗ e_x -> (-1)^{p(i)p(x)} e_x ⊗ e_i`.
pub fn gflip_between(pa: &ParityVector, pb: &ParityVector) -> GradedMatrix {
    let (na, nb) = (pa.len(), pb.len());
    let mut out = GradedMatrix::zeros(pb.tensor(pa), pa.tensor(pb));
    for i in 0..na {
        for x in 0..nb {
            let v = if pa.get(i) * pb.get(x) == 1 {
                Scalar::from_int(-1)
            } else {
                Scalar::one()
            };
            out.set(x * na + i, i * nb + x, v);
        }
    }
    out
}

/// Graded flip on `V ⊗ V`.
pub fn gflip(p: &ParityVector) -> GradedMatrix {
    gflip_between(p, p)
}

/// `R_21 = P R P` for `R` on `V_a ⊗ V_b`; the result acts on `V_b ⊗ V_a`.
pub fn conjugate_flip_between(
    r: &GradedMatrix,
    pa: &ParityVector,
    pb: &ParityVector,
) -> Result<GradedMatrix> {
    let expected = pa.tensor(pb);
    if r.dim() != expected.len() || r.row_parity() != &expected {
        return Err(Error::DimensionMismatch(format!(
            "matrix of dimension {} does not act on a {}x{} tensor space",
            r.dim(),
            pa.len(),
            pb.len()
        )));
    }
    let to = gflip_between(pa, pb);
    let back = gflip_between(pb, pa);
    Ok(&(&to * r) * &back)
}

pub fn conjugate_flip(r: &GradedMatrix, leg: &ParityVector) -> Result<GradedMatrix> {
    conjugate_flip_between(r, leg, leg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Legs {
    L12,
    L13,
    L23,
}

/// Place `R` (on `V ⊗ V`) on two legs of `V ⊗ V ⊗ V`.
pub fn embed(r: &GradedMatrix, legs: Legs, p: &ParityVector) -> GradedMatrix {
    match legs {
        Legs::L12 => gkron(r, &GradedMatrix::identity(p)),
        Legs::L23 => gkron(&GradedMatrix::identity(p), r),
        Legs::L13 => embed13(r, p, p, p),
    }
}

/// Place `R` acting on `V_a ⊗ V_c` onto legs 1 and 3 of `V_a ⊗ V_b ⊗ V_c`.
pub fn embed13(
    r: &GradedMatrix,
    pa: &ParityVector,
    pb: &ParityVector,
    pc: &ParityVector,
) -> GradedMatrix {
    let ia = GradedMatrix::identity(pa);
    let r_on_acb = gkron(r, &GradedMatrix::identity(pb));
    let to_abc = gkron(&ia, &gflip_between(pc, pb));
    let to_acb = gkron(&ia, &gflip_between(pb, pc));
    &(&to_abc * &r_on_acb) * &to_acb
}

/// Summary of a residual matrix that should vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub nonzero_entries: usize,
    /// Largest `xi` degree among the nonzero residual entries.
    pub max_xi_degree: u32,
    /// First few nonzero entries, 1-based.
    pub sample: Vec<(usize, usize, String)>,
}

impl Residual {
    pub fn of(m: &GradedMatrix) -> Residual {
        let mut nonzero_entries = 0;
        let mut max_xi_degree = 0;
        let mut sample = Vec::new();
        for (i, j, v) in m.nonzero() {
            nonzero_entries += 1;
            max_xi_degree = max_xi_degree.max(v.xi_degree());
            if sample.len() < 3 {
                sample.push((i + 1, j + 1, v.to_string()));
            }
        }
        Residual {
            nonzero_entries,
            max_xi_degree,
            sample,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_entries == 0
    }

    pub fn summary(&self) -> String {
        if self.is_zero() {
            "0".to_string()
        } else {
            let parts: Vec<String> = self
                .sample
                .iter()
                .map(|(i, j, v)| format!("({i},{j}) = {v}"))
                .collect();
            format!(
                "{} nonzero entries; {}",
                self.nonzero_entries,
                parts.join("; ")
            )
        }
    }
}

/// `R12 R13 R23 - R23 R13 R12` on `V ⊗ V ⊗ V`.
pub fn gybe_residual(r: &GradedMatrix, p: &ParityVector) -> GradedMatrix {
    let r12 = embed(r, Legs::L12, p);
    let r13 = embed(r, Legs::L13, p);
    let r23 = embed(r, Legs::L23, p);
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    &lhs - &rhs
}

pub fn check_gybe(r: &GradedMatrix, p: &ParityVector) -> Residual {
    Residual::of(&gybe_residual(r, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fund() -> ParityVector {
        ParityVector::fundamental()
    }

    #[test]
    fn identity_kron() {
        let i3 = GradedMatrix::identity(&fund());
        assert!(gkron(&i3, &i3).is_identity());
    }

    #[test]
    fn kron_of_m() {
        let p = fund();
        let m = &GradedMatrix::identity(&p) + &GradedMatrix::unit(&p, 1, 3).scale(&Scalar::theta());
        let mm = gkron(&m, &m);
        // brute-force sign evaluation for the even matrix M
        for (i, j, v) in mm.nonzero() {
            let (ri, ra, cj, cb) = (i / 3, i % 3, j / 3, j % 3);
            assert_eq!(v, &(m.get(ri, cj) * m.get(ra, cb)));
        }
        assert_eq!(mm.get(0, 2), &Scalar::theta());
        assert_eq!(mm.get(0, 6), &Scalar::theta());
        assert_eq!(mm.get(0, 8), &Scalar::theta().powi(2));
        assert_eq!(mm.nonzero().count(), 9 + 6 + 1);
    }

    #[test]
    fn flip_signs() {
        let p = fund();
        let f = gflip(&p);
        // ((2,2),(2,2)) -> composite index 4
        assert_eq!(f.get(4, 4), &Scalar::from_int(-1));
        // e_1 ⊗ e_2 (index 1) -> e_2 ⊗ e_1 (index 3)
        assert_eq!(f.get(3, 1), &Scalar::one());
        assert!((&f * &f).is_identity());
    }

    #[test]
    fn conjugate_flip_dimension_mismatch() {
        let r = GradedMatrix::identity(&ParityVector::even(4));
        assert!(matches!(
            conjugate_flip(&r, &fund()),
            Err(Error::DimensionMismatch(_))
        ));
        let i9 = GradedMatrix::identity(&fund().tensor(&fund()));
        assert!(conjugate_flip(&i9, &fund()).unwrap().is_identity());
    }

    #[test]
    fn embed_identity_and_ordinary_placement() {
        let p = fund();
        let i9 = GradedMatrix::identity(&p.tensor(&p));
        assert!(embed(&i9, Legs::L13, &p).is_identity());

        let a = &GradedMatrix::unit(&p, 1, 3) + &GradedMatrix::unit(&p, 2, 2);
        let b = &GradedMatrix::unit(&p, 3, 1).scale(&Scalar::xi()) + &GradedMatrix::identity(&p);
        let r13 = embed(&gkron(&a, &b), Legs::L13, &p);
        let expect = gkron(&gkron(&a, &GradedMatrix::identity(&p)), &b);
        assert_eq!(r13, expect);
    }

    #[test]
    fn embed_odd_factors_pick_up_signs() {
        let p = fund();
        let v = GradedMatrix::unit(&p, 1, 2);
        let r13 = embed(&gkron(&v, &v), Legs::L13, &p);
        let naive = gkron_with(
            &gkron_with(&v, &GradedMatrix::identity(&p), KoszulConvention::Unsigned),
            &v,
            KoszulConvention::Unsigned,
        );
        assert_ne!(r13, naive);
        // entries agree up to sign
        for (i, j, x) in r13.nonzero() {
            let y = naive.get(i, j);
            assert!(x == y || x == &-y);
        }
    }

    #[test]
    fn unipotent_inverse() {
        let p = fund();
        let e13 = GradedMatrix::unit(&p, 1, 3).scale(&Scalar::theta());
        let m = &GradedMatrix::identity(&p) + &e13;
        assert_eq!(m.inverse().unwrap(), &GradedMatrix::identity(&p) - &e13);
        let i9 = GradedMatrix::identity(&p.tensor(&p));
        assert!(i9.inverse().unwrap().is_identity());
    }

    #[test]
    fn exp_and_log() {
        let p = fund();
        assert!(GradedMatrix::zeros_on(&p)
            .exp_nilpotent()
            .unwrap()
            .is_identity());
        let n = GradedMatrix::unit(&p, 1, 3)
            .scale(&Scalar::from_int(2))
            .scale(&Scalar::xi());
        let u = &GradedMatrix::identity(&p) + &n;
        assert_eq!(u.log_unipotent().unwrap(), n);
        assert_eq!(n.exp_nilpotent().unwrap(), u);
        let not_nil = GradedMatrix::identity(&p);
        assert_eq!(not_nil.exp_nilpotent(), Err(Error::NotNilpotent(3)));
    }

    #[test]
    fn singular_inverse() {
        let p = fund();
        assert_eq!(GradedMatrix::unit(&p, 1, 1).inverse(), Err(Error::Singular));
    }

    #[test]
    fn degree_detection() {
        let p = fund();
        assert_eq!(GradedMatrix::unit(&p, 1, 2).degree(), Some(1));
        assert_eq!(GradedMatrix::unit(&p, 1, 3).degree(), Some(0));
        let mixed = &GradedMatrix::unit(&p, 1, 2) + &GradedMatrix::unit(&p, 1, 3);
        assert_eq!(mixed.degree(), None);
    }
}
