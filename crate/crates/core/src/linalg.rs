//! Exact linear algebra over the rationals.
//!
//! Dense matrices carry the public surface (differentials, subspace bases,
//! change of basis). Rank computations go through a sparse fraction-free
//! elimination on integer rows, which is what the cohomology code leans on.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// Sparse vector: strictly increasing indices with nonzero values.
pub type SparseVec<T> = Vec<(usize, T)>;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses a rational literal such as `"3"`, `"-2"` or `"-3/4"`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim())
            .map_err(|e| Error::Parse(format!("bad numerator in {s:?}: {e}")))?;
        let d = BigInt::from_str(d.trim())
            .map_err(|e| Error::Parse(format!("bad denominator in {s:?}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n = BigInt::from_str(t).map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))?;
        Ok(BigRational::from_integer(n))
    }
}

/// Renders a scalar as `"p"` or `"p/q"`.
pub fn format_scalar(c: &Scalar) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Dense exact rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from explicit rows; all rows must share a length.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidInput(format!(
                    "row {r} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| scalar(x)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `v * self`.
    pub fn left_apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.rows {
            return Err(Error::InvalidInput(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![Scalar::zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let b = self.get(r, c);
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form with zero rows dropped, plus pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.row_vecs();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            let Some(p) = (lead..m.len()).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(lead, p);
            let inv = m[lead][c].recip();
            for x in m[lead].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            let pivot_row = m[lead].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r == lead || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(c);
            lead += 1;
            if lead == m.len() {
                break;
            }
        }
        m.truncate(lead);
        let reduced = Self::from_rows(self.cols, m).expect("rref preserves shape");
        (reduced, pivots)
    }

    /// Exact rank via sparse fraction-free elimination.
    pub fn rank(&self) -> usize {
        let rows = (0..self.rows).map(|r| {
            self.row(r)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (c, x.clone()))
                .collect::<SparseVec<Scalar>>()
        });
        rank_of_sparse(self.cols, rows)
    }

    /// Basis of `{v : self * v = 0}` as the rows of a matrix in reduced
    /// row-echelon form.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            basis.push(v);
        }
        let k = Self::from_rows(self.cols, basis).expect("kernel rows");
        k.rref().0
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput(format!(
                "cannot invert non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::InvalidInput("matrix is singular".into()));
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }
}

/// Rank of a family of sparse rational vectors living in `dim` coordinates.
///
/// Each vector is scaled to a primitive integer vector and the family is
/// reduced to echelon form with integer row operations, dividing out row
/// content after every step. Machine integers are tried first; on overflow
/// the whole reduction is redone with big integers.
pub fn rank_of_sparse<I>(dim: usize, vectors: I) -> usize
where
    I: IntoIterator<Item = SparseVec<Scalar>>,
{
    let ints: Vec<SparseVec<BigInt>> = vectors
        .into_iter()
        .map(|v| primitive_integer_vector(&v))
        .filter(|v| !v.is_empty())
        .collect();
    let small: Option<Vec<SparseVec<i64>>> = ints
        .iter()
        .map(|v| {
            v.iter()
                .map(|(i, x)| x.to_i64().map(|x| (*i, x)))
                .collect::<Option<SparseVec<i64>>>()
        })
        .collect();
    if let Some(small) = small {
        if let Some(r) = EchelonBasis::<i64>::rank_of(dim, small) {
            return r;
        }
    }
    EchelonBasis::<BigInt>::rank_of(dim, ints).expect("big integer elimination cannot overflow")
}

fn primitive_integer_vector(v: &SparseVec<Scalar>) -> SparseVec<BigInt> {
    let lcm = v
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let mut out: SparseVec<BigInt> = v
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (*i, x.numer() * (&lcm / x.denom())))
        .collect();
    out.sort_by_key(|(i, _)| *i);
    divide_content(&mut out);
    out
}

fn divide_content<T: EliminationInt>(v: &mut SparseVec<T>) {
    let Some((_, first)) = v.first() else { return };
    let mut g = first.abs_val();
    for (_, x) in v.iter().skip(1) {
        if g.is_unit() {
            return;
        }
        g = g.gcd_with(x);
    }
    if !g.is_unit() {
        for (_, x) in v.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
}

/// Integer arithmetic needed by the echelon reduction. Operations that can
/// overflow return `None`.
pub(crate) trait EliminationInt: Clone + Sized {
    fn is_zero_val(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_val(&self) -> Self;
    fn gcd_with(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    /// `a * x - b * y`
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn scaled(&self, a: &Self) -> Option<Self>;
    fn neg_scaled(&self, a: &Self) -> Option<Self>;
}

impl EliminationInt for i64 {
    fn is_zero_val(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn scaled(&self, a: &Self) -> Option<Self> {
        self.checked_mul(*a)
    }
    fn neg_scaled(&self, a: &Self) -> Option<Self> {
        self.checked_mul(*a)?.checked_neg()
    }
}

impl EliminationInt for BigInt {
    fn is_zero_val(&self) -> bool {
        self.is_zero()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn scaled(&self, a: &Self) -> Option<Self> {
        Some(self * a)
    }
    fn neg_scaled(&self, a: &Self) -> Option<Self> {
        Some(-(self * a))
    }
}

/// Echelon basis keyed by leading index.
struct EchelonBasis<T> {
    by_lead: Vec<Option<SparseVec<T>>>,
    rank: usize,
}

impl<T: EliminationInt> EchelonBasis<T> {
    fn rank_of(dim: usize, vectors: Vec<SparseVec<T>>) -> Option<usize> {
        let mut basis = Self {
            by_lead: vec![None; dim],
            rank: 0,
        };
        for v in vectors {
            basis.insert(v)?;
        }
        Some(basis.rank)
    }

    fn insert(&mut self, mut v: SparseVec<T>) -> Option<()> {
        while let Some(&(lead, _)) = v.first() {
            match &self.by_lead[lead] {
                Some(b) => v = eliminate_lead(&v, b)?,
                None => {
                    self.by_lead[lead] = Some(v);
                    self.rank += 1;
                    return Some(());
                }
            }
        }
        Some(())
    }
}

/// Cancels the shared leading entry of `v` using `b`, returning a primitive
/// vector whose leading index is strictly larger.
fn eliminate_lead<T: EliminationInt>(v: &SparseVec<T>, b: &SparseVec<T>) -> Option<SparseVec<T>> {
    let (va, ba) = (&v[0].1, &b[0].1);
    let g = va.gcd_with(ba);
    let (vf, bf) = (ba.div_exact(&g), va.div_exact(&g));
    let mut out = Vec::with_capacity(v.len() + b.len());
    let (mut i, mut j) = (1, 1);
    while i < v.len() || j < b.len() {
        let vi = v.get(i).map(|e| e.0);
        let bj = b.get(j).map(|e| e.0);
        let (idx, val) = match (vi, bj) {
            (Some(x), Some(y)) if x == y => {
                let r = T::cross(&vf, &v[i].1, &bf, &b[j].1)?;
                i += 1;
                j += 1;
                (x, r)
            }
            (Some(x), Some(y)) if x < y => {
                i += 1;
                (x, v[i - 1].1.scaled(&vf)?)
            }
            (Some(x), None) => {
                i += 1;
                (x, v[i - 1].1.scaled(&vf)?)
            }
            (_, Some(y)) => {
                j += 1;
                (y, b[j - 1].1.neg_scaled(&bf)?)
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero_val() {
            out.push((idx, val));
        }
    }
    divide_content(&mut out);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parse_and_format_round_trip() {
        assert_eq!(parse_scalar("3").unwrap(), scalar(3));
        assert_eq!(parse_scalar(" -6/4 ").unwrap(), q(-3, 2));
        assert_eq!(format_scalar(&q(-3, 2)), "-3/2");
        assert_eq!(format_scalar(&scalar(7)), "7");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("").is_err());
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let z = RationalMatrix::zeros(3, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis(), RationalMatrix::identity(3));
    }

    #[test]
    fn rank_and_kernel_of_small_matrix() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 1);
        // x + 2y + 3z = 0, x + z = 0 => (-1, -1, 1)
        assert_eq!(k.row(0), &[scalar(1), scalar(1), scalar(-1)]);
    }

    #[test]
    fn inverse_and_singular() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(2));
        let s = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_err());
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 3;
        let rows = vec![
            vec![(0, scalar(big)), (1, scalar(big - 1))],
            vec![(0, scalar(big - 7)), (1, scalar(big))],
        ];
        assert_eq!(rank_of_sparse(2, rows), 2);
    }

    #[test]
    fn rational_entries_are_cleared() {
        let rows = vec![
            vec![(0, q(1, 2)), (1, q(1, 3))],
            vec![(0, q(3, 2)), (1, scalar(1))],
        ];
        assert_eq!(rank_of_sparse(2, rows), 1);
    }
}
