//! Exact integer and rational linear algebra.
//!
//! Lattice vectors are `i64` slices; every intermediate product is formed in
//! `i128` or `BigInt`, so nothing here rounds. Rank and kernel use
//! fraction-free Gauss-Jordan elimination, first attempted in `i128` and
//! redone in `BigInt` whenever an intermediate overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;
pub type IntVector = Vec<i64>;
pub type RatVector = Vec<Rational>;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<Int>;
pub type RatMatrix = Matrix<Rational>;

impl<T: Clone> Matrix<T> {
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl IntMatrix {
    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect(),
        )
    }

    pub fn to_i64_rows(&self) -> Vec<IntVector> {
        self.row_vecs()
            .into_iter()
            .map(|r| r.iter().map(to_i64).collect())
            .collect()
    }

    pub fn to_rational(&self) -> RatMatrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Rational::from_integer(x.clone())).collect(),
        }
    }
}

impl RatMatrix {
    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_i64_rows(cols, rows).to_rational()
    }

    /// Rows as integer vectors; panics if an entry is not integral.
    pub fn integer_rows(&self) -> Vec<Vec<Int>> {
        self.row_vecs()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| {
                        assert!(x.is_integer(), "non-integral entry {x}");
                        x.to_integer()
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn to_i64(x: &Int) -> i64 {
    x.to_i64().expect("lattice coordinate exceeds the i64 range")
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

pub fn rat_vec(v: &[i64]) -> RatVector {
    v.iter().map(|&x| rat(x)).collect()
}

/// Pairing of integer vectors, accumulated in `i128`.
pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    let s: i128 = a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
    i64::try_from(s).expect("pairing exceeds the i64 range")
}

pub fn dot_rat(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// `v` divided by the gcd of its entries.
pub fn primitive(v: &[i64]) -> Result<IntVector> {
    let g = gcd_all(v);
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|&x| x / g).collect())
}

fn primitive_big(v: &mut [Int]) {
    let g = v.iter().fold(Int::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Clears denominators row by row.
fn integer_scaled(rows: &[Vec<Rational>]) -> Vec<Vec<Int>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
            row.iter()
                .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// The primitive integer multiple of a nonzero rational vector (sign kept).
pub fn integer_scaled_row(v: &[Rational]) -> Vec<Int> {
    let mut row = integer_scaled(&[v.to_vec()]).pop().unwrap();
    primitive_big(&mut row);
    row
}

trait FfScalar: Clone + PartialEq + Sized {
    fn ff_one() -> Self;
    fn ff_is_zero(&self) -> bool;
    /// `(a*b - c*d) / e`, where the division is exact. `None` on overflow.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self>;
}

impl FfScalar for i128 {
    fn ff_one() -> Self {
        1
    }
    fn ff_is_zero(&self) -> bool {
        *self == 0
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        let num = a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)?;
        debug_assert_eq!(num % e, 0, "inexact fraction-free division");
        Some(num / e)
    }
}

impl FfScalar for Int {
    fn ff_one() -> Self {
        One::one()
    }
    fn ff_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        let num = a * b - c * d;
        debug_assert!((&num % e).is_zero(), "inexact fraction-free division");
        Some(num / e)
    }
}

/// Fraction-free Gauss-Jordan. On success the first `pivots.len()` rows are
/// reduced: each carries the common pivot value in its pivot column and zeros
/// in every other pivot column.
fn ff_gauss_jordan<T: FfScalar>(rows: &mut [Vec<T>], cols: usize) -> Option<Vec<usize>> {
    let n = rows.len();
    let mut prev = T::ff_one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !rows[i][c].ff_is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for i in 0..n {
            if i == r {
                continue;
            }
            let m = rows[i][c].clone();
            #[allow(clippy::needless_range_loop)]
            for j in 0..cols {
                let v = T::cross_div(&piv, &rows[i][j], &m, &rows[r][j], &prev)?;
                rows[i][j] = v;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Some(pivots)
}

/// Reduced integer form of `rows`; returns (reduced rows, pivot columns).
fn reduce_integer(rows: Vec<Vec<Int>>, cols: usize) -> (Vec<Vec<Int>>, Vec<usize>) {
    let small: Option<Vec<Vec<i128>>> = rows.iter().map(|r| r.iter().map(|x| x.to_i128()).collect()).collect();
    if let Some(mut small) = small {
        if let Some(pivots) = ff_gauss_jordan(&mut small, cols) {
            let big = small
                .into_iter()
                .map(|r| r.into_iter().map(Int::from).collect())
                .collect();
            return (big, pivots);
        }
    }
    let mut rows = rows;
    let pivots = ff_gauss_jordan(&mut rows, cols).expect("BigInt elimination cannot overflow");
    (rows, pivots)
}

/// Rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let (_, pivots) = reduce_integer(integer_scaled(&m.row_vecs()), m.cols());
    pivots.len()
}

pub fn rank_i64(rows: &[Vec<i64>], cols: usize) -> usize {
    rank(&RatMatrix::from_i64_rows(cols, rows))
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per row. Each row is
/// a primitive integer vector whose first nonzero entry is positive.
pub fn kernel_basis(m: &RatMatrix) -> RatMatrix {
    let cols = m.cols();
    let (reduced, pivots) = if m.rows() == 0 {
        (Vec::new(), Vec::new())
    } else {
        reduce_integer(integer_scaled(&m.row_vecs()), cols)
    };
    let mut basis = Vec::new();
    let mut is_pivot = vec![None; cols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    for f in 0..cols {
        if is_pivot[f].is_some() {
            continue;
        }
        let mut x = vec![Int::zero(); cols];
        if pivots.is_empty() {
            x[f] = Int::one();
        } else {
            let d = reduced[0][pivots[0]].clone();
            x[f] = d;
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = -reduced[r][f].clone();
            }
        }
        primitive_big(&mut x);
        if x.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
            for v in x.iter_mut() {
                *v = -v.clone();
            }
        }
        basis.push(x.into_iter().map(Rational::from_integer).collect());
    }
    Matrix::from_rows(cols, basis)
}

pub fn kernel_basis_i64(rows: &[Vec<i64>], cols: usize) -> Vec<IntVector> {
    let k = kernel_basis(&RatMatrix::from_i64_rows(cols, rows));
    k.integer_rows()
        .iter()
        .map(|r| r.iter().map(to_i64).collect())
        .collect()
}

/// Dimension of the sum of the row spaces of `bases`.
pub fn subspace_sum_dim(bases: &[RatMatrix], ambient_dim: usize) -> usize {
    let mut echelon = EchelonBasis::new(ambient_dim);
    for b in bases {
        assert_eq!(b.cols(), ambient_dim, "basis row length differs from ambient dimension");
        for row in b.row_vecs() {
            echelon.insert_rational(&row);
        }
    }
    echelon.len()
}

/// Some solution of `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<RatVector> {
    assert_eq!(m.rows(), b.len());
    let cols = m.cols();
    if m.rows() == 0 {
        return Some(vec![Rational::zero(); cols]);
    }
    let aug: Vec<Vec<Rational>> = m
        .row_vecs()
        .into_iter()
        .zip(b)
        .map(|(mut r, x)| {
            r.push(x.clone());
            r
        })
        .collect();
    let (reduced, pivots) = reduce_integer(integer_scaled(&aug), cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = Rational::new(reduced[r][cols].clone(), reduced[r][c].clone());
    }
    Some(x)
}

/// Incrementally maintained row-echelon basis of a subspace, with primitive
/// integer rows.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<(usize, Vec<Int>)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis; returns the residue.
    fn reduce(&self, mut v: Vec<Int>) -> Vec<Int> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = row[*p].clone();
            let b = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = &*x * &a - &b * y;
            }
            primitive_big(&mut v);
        }
        v
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: Vec<Int>) -> bool {
        assert_eq!(v.len(), self.dim);
        let v = self.reduce(v);
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }

    pub fn insert_rational(&mut self, v: &[Rational]) -> bool {
        let scaled = integer_scaled(&[v.to_vec()]).pop().unwrap();
        self.insert(scaled)
    }

    pub fn insert_i64(&mut self, v: &[i64]) -> bool {
        self.insert(v.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn contains_rational(&self, v: &[Rational]) -> bool {
        let scaled = integer_scaled(&[v.to_vec()]).pop().unwrap();
        self.reduce(scaled).iter().all(|x| x.is_zero())
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        self.reduce(v.iter().map(|&x| Int::from(x)).collect())
            .iter()
            .all(|x| x.is_zero())
    }

    /// Columns carrying the pivots, in insertion order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

fn row_axpy(m: &mut IntMatrix, target: usize, factor: &Int, source: usize) {
    if factor.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let v = m.get(target, j) - factor * m.get(source, j);
        m.set(target, j, v);
    }
}

fn col_axpy(m: &mut IntMatrix, target: usize, factor: &Int, source: usize) {
    if factor.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let v = m.get(i, target) - factor * m.get(i, source);
        m.set(i, target, v);
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        let v = -m.get(i, j).clone();
        m.set(i, j, v);
    }
}

/// Row Hermite normal form: `H = U m` with `U` unimodular, pivots positive and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut r = 0;
    for c in 0..m.cols() {
        if r == h.rows() {
            break;
        }
        loop {
            let best = (r..h.rows())
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by_key(|&i| h.get(i, c).abs());
            let Some(best) = best else { break };
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            let mut clean = true;
            for i in r + 1..h.rows() {
                let q = h.get(i, c).div_floor(h.get(r, c));
                row_axpy(&mut h, i, &q, r);
                row_axpy(&mut u, i, &q, r);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_floor(h.get(r, c));
            row_axpy(&mut h, i, &q, r);
            row_axpy(&mut u, i, &q, r);
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form: `S = U m V`, diagonal with each entry dividing the next.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..s.rows() {
                for j in t..s.cols() {
                    let x = s.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (s, u, v);
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..s.rows() {
                let q = s.get(i, t).div_floor(s.get(t, t));
                row_axpy(&mut s, i, &q, t);
                row_axpy(&mut u, i, &q, t);
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..s.cols() {
                let q = s.get(t, j).div_floor(s.get(t, t));
                col_axpy(&mut s, j, &q, t);
                col_axpy(&mut v, j, &q, t);
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let piv = s.get(t, t).clone();
            let offender = (t + 1..s.rows()).find(|&i| (t + 1..s.cols()).any(|j| !(s.get(i, j) % &piv).is_zero()));
            match offender {
                Some(i) => {
                    let minus_one = -Int::one();
                    row_axpy(&mut s, t, &minus_one, i);
                    row_axpy(&mut u, t, &minus_one, i);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    (s, u, v)
}

/// Nonzero diagonal entries of the Smith normal form.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<Int> {
    let (s, _, _) = snf(m);
    (0..s.rows().min(s.cols()))
        .map(|i| s.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn det(m: &IntMatrix) -> Int {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Int::one();
    }
    let mut a = m.row_vecs();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Int::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Z-basis of `{x in Z^n : rows . x = 0}`.
pub fn lattice_kernel(rows: &[Vec<i64>], n: usize) -> Vec<IntVector> {
    if rows.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    }
    let a = IntMatrix::from_i64_rows(n, rows);
    let (h, u) = hnf(&a.transpose());
    (0..h.rows())
        .filter(|&i| h.row(i).iter().all(|x| x.is_zero()))
        .map(|i| u.row(i).iter().map(to_i64).collect())
        .collect()
}

/// Nonzero rows of the Hermite form: a canonical basis of the lattice
/// spanned by `rows`.
pub fn lattice_hnf_basis(rows: &[Vec<i64>], n: usize) -> Vec<IntVector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let (h, _) = hnf(&IntMatrix::from_i64_rows(n, rows));
    h.to_i64_rows()
        .into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect()
}

/// Unimodular `U` (columns are a basis of Z^n) with `r^T U = e_last^T`.
/// Requires `r` primitive. When `r` is already `e_last`, `U` is the identity.
pub fn unimodular_completion(r: &[i64]) -> Result<IntMatrix> {
    let n = r.len();
    if gcd_all(r) != 1 {
        return Err(Error::NonPrimitiveDegree(r.to_vec()));
    }
    if r[..n - 1].iter().all(|&x| x == 0) && r[n - 1] == 1 {
        return Ok(IntMatrix::identity(n));
    }
    // W r = e_1 (Hermite form of the column r), hence r^T W^T = e_1^T.
    let col: Vec<Vec<i64>> = r.iter().map(|&x| vec![x]).collect();
    let (h, w) = hnf(&IntMatrix::from_i64_rows(1, &col));
    debug_assert!(h.get(0, 0).is_one());
    let wt = w.transpose();
    // Move column 0 to the end.
    let mut u = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let src = if j == n - 1 { 0 } else { j + 1 };
            u.set(i, j, wt.get(i, src).clone());
        }
    }
    Ok(u)
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(u: &IntMatrix) -> IntMatrix {
    let n = u.rows();
    let (h, w) = hnf(u);
    debug_assert_eq!(h, IntMatrix::identity(n), "matrix is not unimodular");
    w
}

/// Basis of the linear dependences among `vectors`: the kernel of the
/// matrix having them as columns.
pub fn dependences(vectors: &[&RatVector]) -> RatMatrix {
    let k = vectors.len();
    let n = vectors.first().map_or(0, |v| v.len());
    let rows: Vec<RatVector> = (0..n).map(|c| vectors.iter().map(|v| v[c].clone()).collect()).collect();
    kernel_basis(&Matrix::from_rows(k, rows))
}

/// `L(U) / sum_i L(S_i)` for index sets `S_i` inside `U`, where `L` takes
/// dependences among the indexed `vectors` and coordinates are positions in
/// `union` (sorted). Returns the quotient dimension and the rows of the `L(U)` basis
/// that complete a basis of the sum, chosen greedily in basis order.
pub fn dependence_quotient(vectors: &[RatVector], union: &[usize], subsets: &[Vec<usize>]) -> (usize, RatMatrix) {
    let width = union.len();
    let position = |i: usize| union.binary_search(&i).expect("subset index outside the union");
    let mut sum = EchelonBasis::new(width);
    for s in subsets {
        if s.len() < 2 {
            continue;
        }
        let cols: Vec<&RatVector> = s.iter().map(|&i| &vectors[i]).collect();
        for row in dependences(&cols).row_vecs() {
            let mut full = vec![Rational::zero(); width];
            for (x, &i) in row.into_iter().zip(s) {
                full[position(i)] = x;
            }
            sum.insert_rational(&full);
        }
    }
    let cols: Vec<&RatVector> = union.iter().map(|&i| &vectors[i]).collect();
    let big = dependences(&cols);
    let mut complement = Vec::new();
    for row in big.row_vecs() {
        if sum.insert_rational(&row) {
            complement.push(row);
        }
    }
    (complement.len(), Matrix::from_rows(width, complement))
}

/// Integer solutions of `rows . x = rhs`: a particular solution and a
/// Z-basis of the homogeneous solutions, or `None` if no integer solution
/// exists.
pub fn integer_solve(rows: &[Vec<i64>], n: usize, rhs: &[i64]) -> Option<(IntVector, Vec<IntVector>)> {
    assert_eq!(rows.len(), rhs.len());
    if rows.is_empty() {
        return Some((vec![0; n], lattice_kernel(rows, n)));
    }
    // H = U A^T, so A = H^T U^{-T}; with y = U^{-T} x the system is H^T y = rhs.
    let a = IntMatrix::from_i64_rows(n, rows);
    let (h, u) = hnf(&a.transpose());
    let mut y: Vec<Int> = vec![Int::zero(); n];
    let mut r = 0;
    while r < h.rows() && h.row(r).iter().any(|x| !x.is_zero()) {
        let p = h.row(r).iter().position(|x| !x.is_zero()).unwrap();
        let mut acc = Int::from(rhs[p]);
        for (j, yj) in y.iter().enumerate().take(r) {
            acc -= yj * h.get(j, p);
        }
        let (q, rem) = acc.div_rem(h.get(r, p));
        if !rem.is_zero() {
            return None;
        }
        y[r] = q;
        r += 1;
    }
    for (k, &b) in rhs.iter().enumerate() {
        let s = (0..r).fold(Int::zero(), |s, j| s + &y[j] * h.get(j, k));
        if s != Int::from(b) {
            return None;
        }
    }
    let x: IntVector = (0..n)
        .map(|i| to_i64(&(0..r).fold(Int::zero(), |s, j| s + &y[j] * u.get(j, i))))
        .collect();
    let kernel = (r..n).map(|j| u.row(j).iter().map(to_i64).collect()).collect();
    Some((x, kernel))
}
