use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{AlgebraError, Poly, RatFunc, Rational};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(AlgebraError::Dimension("matrix must be non-empty"));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Dimension("rows of unequal length"));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(rows > 0 && cols > 0);
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    fn row_vecs(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.cols).map(<[T]>::to_vec).collect()
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: core::ops::Mul<&'a T, Output = T>,
{
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).fold(T::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
            .collect()
    }
}

impl Matrix<Rational> {
    /// Exact solve of `A r = b` by fraction-free elimination.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        check_square(self.rows, self.cols, b.len())?;
        let mut aug = self.row_vecs();
        for (row, bi) in aug.iter_mut().zip(b) {
            row.push(bi.clone());
        }
        bareiss_forward(&mut aug)?;
        let n = self.rows;
        let mut x = alloc::vec![<Rational as Zero>::zero(); n];
        for i in (0..n).rev() {
            let mut acc = aug[i][n].clone();
            for j in i + 1..n {
                acc -= &aug[i][j] * &x[j];
            }
            x[i] = acc / &aug[i][i];
        }
        Ok(x)
    }
}

impl Matrix<RatFunc> {
    /// Exact solve over Q(x). Each row is first cleared of denominators, then
    /// the polynomial system is reduced by Bareiss elimination in Q[x] (every
    /// division exact), and the triangular system is back-substituted in Q(x).
    pub fn solve(&self, b: &[RatFunc]) -> Result<Vec<RatFunc>, AlgebraError> {
        check_square(self.rows, self.cols, b.len())?;
        let mut aug: Vec<Vec<Poly>> = Vec::with_capacity(self.rows);
        for (i, bi) in b.iter().enumerate() {
            let row: Vec<&RatFunc> = (0..self.cols)
                .map(|j| self.get(i, j))
                .chain(core::iter::once(bi))
                .collect();
            let mut common = Poly::one();
            for f in &row {
                if !f.den().is_one() {
                    common = Poly::lcm(&common, f.den())?;
                }
            }
            aug.push(
                row.iter()
                    .map(|f| (f.num() * &common).exact_div(f.den()))
                    .collect::<Result<_, _>>()?,
            );
        }
        bareiss_forward(&mut aug)?;
        let n = self.rows;
        let mut x: Vec<RatFunc> = alloc::vec![RatFunc::zero(); n];
        for i in (0..n).rev() {
            let mut acc = RatFunc::from_poly(aug[i][n].clone());
            for j in i + 1..n {
                if !aug[i][j].is_zero() {
                    acc = &acc - &(&RatFunc::from_poly(aug[i][j].clone()) * &x[j]);
                }
            }
            x[i] = acc.checked_div(&RatFunc::from_poly(aug[i][i].clone()))?;
        }
        Ok(x)
    }
}

fn check_square(rows: usize, cols: usize, rhs: usize) -> Result<(), AlgebraError> {
    if rows != cols {
        return Err(AlgebraError::Dimension("matrix is not square"));
    }
    if rhs != rows {
        return Err(AlgebraError::Dimension("right-hand side length"));
    }
    Ok(())
}

/// Ring operations Bareiss elimination needs, with a size measure for pivot
/// choice.
trait Elim: Clone {
    fn is_zero(&self) -> bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn exact_div(&self, other: &Self) -> Self;
    fn weight(&self) -> u64;
}

impl Elim for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
    fn weight(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

impl Elim for Poly {
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn exact_div(&self, other: &Self) -> Self {
        Poly::exact_div(self, other).expect("Bareiss pivot is nonzero")
    }
    fn weight(&self) -> u64 {
        self.degree().unwrap_or(0) as u64
    }
}

/// Fraction-free forward elimination on an augmented `n x m` system, `m > n`.
/// Pivot: the nonzero candidate of least weight in the current column.
/// Leaves an upper-triangular left block.
fn bareiss_forward<T: Elim>(m: &mut [Vec<T>]) -> Result<(), AlgebraError> {
    let n = m.len();
    let width = m[0].len();
    let mut prev = T::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].weight())
            .ok_or(AlgebraError::Singular)?;
        m.swap(k, pivot);
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..width {
                let t = pivot_row[k].mul(&row[j]).sub(&factor.mul(&pivot_row[j]));
                row[j] = if k == 0 { t } else { t.exact_div(&prev) };
            }
            row[k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(())
}
