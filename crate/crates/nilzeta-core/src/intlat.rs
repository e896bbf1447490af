//! Integer-matrix normal forms: Hermite and Smith forms with unimodular
//! transforms, exact linear solving over ℤ, and congruence-kernel bases.
//!
//! All lattice bookkeeping in this crate (sublattice bases, membership tests,
//! duals, quotient invariant factors, character well-definedness) reduces to
//! the routines here. Entries are arbitrary-precision integers, so there is
//! no overflow regime to worry about; every assertion is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IMat {
    /// Zero matrix of the given shape.
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Identity matrix.
    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of machine integers.
    ///
    /// # Panics
    ///
    /// Panics if the rows are ragged or empty.
    #[must_use]
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        assert!(r > 0, "matrix must have at least one row");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    /// Number of rows.
    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`.
    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    /// Sets entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    /// Column `j` as a vector.
    #[must_use]
    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Matrix product `self · rhs`.
    ///
    /// # Panics
    ///
    /// Panics on shape mismatch.
    #[must_use]
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * rhs.get(k, j);
                    let cur = out.get(i, j) + t;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Matrix–vector product.
    ///
    /// # Panics
    ///
    /// Panics on shape mismatch.
    #[must_use]
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination; exact.
    ///
    /// # Panics
    ///
    /// Panics if the matrix is not square.
    #[must_use]
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                // Pivot search below row k.
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    let t = a.get(k, j).clone();
                    a.set(k, j, a.get(p, j).clone());
                    a.set(p, j, t);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a.set(i, j, q);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1).clone()
    }

    fn swap_cols(&mut self, j1: usize, j2: usize) {
        if j1 == j2 {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + j1, i * self.cols + j2);
        }
    }

    fn swap_rows(&mut self, i1: usize, i2: usize) {
        if i1 == i2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(i1 * self.cols + j, i2 * self.cols + j);
        }
    }

    /// `col_dst -= q * col_src`.
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = self.get(i, dst) - q * self.get(i, src);
            self.set(i, dst, t);
        }
    }

    /// `row_dst -= q * row_src`.
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = self.get(dst, j) - q * self.get(src, j);
            self.set(dst, j, t);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let t = -self.get(i, j).clone();
            self.set(i, j, t);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let t = -self.get(i, j).clone();
            self.set(i, j, t);
        }
    }
}

/// Column Hermite normal form `H = A · U` with `U` unimodular.
///
/// `H` is in column echelon form: pivot columns come first, each pivot is the
/// first nonzero entry of its column (scanning down), pivots sit in strictly
/// increasing rows, pivots are positive, entries to the *left* of a pivot in
/// its row are reduced into `[0, pivot)`, and entries to the right of a pivot
/// in its row are zero. Trailing columns of `H` are zero.
#[derive(Clone, Debug)]
pub struct ColumnHermite {
    /// The Hermite form `H`.
    pub h: IMat,
    /// The unimodular column transform, `H = A · U`.
    pub u: IMat,
    /// Row index of the pivot of each pivot column (length = rank).
    pub pivot_rows: Vec<usize>,
}

/// Computes the column Hermite normal form of `a`.
#[must_use]
pub fn column_hermite(a: &IMat) -> ColumnHermite {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IMat::identity(n);
    let mut pivot_rows = Vec::new();
    let mut pc = 0usize; // next pivot column
    for row in 0..m {
        if pc == n {
            break;
        }
        if (pc..n).all(|j| h.get(row, j).is_zero()) {
            continue;
        }
        // Zero out h[row, pc+1..] by column gcd steps.
        loop {
            let jmin = (pc..n)
                .filter(|&j| !h.get(row, j).is_zero())
                .min_by_key(|&j| h.get(row, j).abs())
                .expect("nonzero entry exists");
            h.swap_cols(pc, jmin);
            u.swap_cols(pc, jmin);
            let mut clean = true;
            let pivot = h.get(row, pc).clone();
            for j in pc + 1..n {
                let q = h.get(row, j).div_floor(&pivot);
                h.sub_col(j, pc, &q);
                u.sub_col(j, pc, &q);
                if !h.get(row, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(row, pc).is_negative() {
            h.negate_col(pc);
            u.negate_col(pc);
        }
        // Reduce earlier columns in this row into [0, pivot).
        let pivot = h.get(row, pc).clone();
        for j in 0..pc {
            let q = h.get(row, j).div_floor(&pivot);
            h.sub_col(j, pc, &q);
            u.sub_col(j, pc, &q);
        }
        pivot_rows.push(row);
        pc += 1;
    }
    ColumnHermite { h, u, pivot_rows }
}

impl ColumnHermite {
    /// Rank of the original matrix.
    #[must_use]
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// The nonzero columns of `H`: a canonical basis of the column lattice.
    #[must_use]
    pub fn lattice_basis(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank()).map(|j| self.h.col(j)).collect()
    }

    /// Solves `A · x = w` over ℤ, if a solution exists.
    ///
    /// Returns an integer solution vector (length = `A.cols()`), or `None`
    /// when `w` is not in the column lattice of `A`.
    #[must_use]
    pub fn solve(&self, w: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(w.len(), self.h.rows(), "shape mismatch in lattice solve");
        let n = self.h.cols();
        let mut y = vec![BigInt::zero(); n];
        for (k, &row) in self.pivot_rows.iter().enumerate() {
            let mut acc = w[row].clone();
            for (j, yj) in y.iter().enumerate().take(k) {
                acc -= self.h.get(row, j) * yj;
            }
            let (q, r) = acc.div_rem(self.h.get(row, k));
            if !r.is_zero() {
                return None;
            }
            y[k] = q;
        }
        // Verify rows without pivots as well.
        let residual = self.h.mul_vec(&y);
        if residual.iter().zip(w).any(|(a, b)| a != b) {
            return None;
        }
        Some(self.u.mul_vec(&y))
    }
}

/// Smith normal form `S = U · A · V` with `U`, `V` unimodular and `S`
/// diagonal with nonnegative entries `s₁ | s₂ | …`.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    /// Diagonal form `S`.
    pub s: IMat,
    /// Row transform (left factor).
    pub u: IMat,
    /// Column transform (right factor).
    pub v: IMat,
}

impl SmithNormalForm {
    /// The nonzero diagonal entries `s₁ | s₂ | …`.
    #[must_use]
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k)
            .map(|i| self.s.get(i, i).clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

/// Computes the Smith normal form of `a`.
#[must_use]
pub fn smith(a: &IMat) -> SmithNormalForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IMat::identity(m);
    let mut v = IMat::identity(n);
    let k = m.min(n);
    for t in 0..k {
        'pivot: loop {
            // Find the smallest nonzero entry of the trailing submatrix.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if s.get(i, j).is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if s.get(i, j).abs() < s.get(bi, bj).abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot; // trailing submatrix is zero
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let pivot = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = s.get(i, t).div_floor(&pivot);
                s.sub_row(i, t, &q);
                u.sub_row(i, t, &q);
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = s.get(t, j).div_floor(&pivot);
                s.sub_col(j, t, &q);
                v.sub_col(j, t, &q);
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Enforce the divisibility chain: s[t,t] must divide the rest.
            let pivot = s.get(t, t).clone();
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !s.get(i, j).mod_floor(&pivot).is_zero());
            match offender {
                Some((i, _)) => {
                    // Fold row i into row t and restart the elimination.
                    let minus_one = -BigInt::one();
                    s.sub_row(t, i, &minus_one);
                    u.sub_row(t, i, &minus_one);
                }
                None => break 'pivot,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithNormalForm { s, u, v }
}

/// Basis of the congruence kernel `{ m ∈ ℤⁿ : C·m ≡ 0 (mod d) }`.
///
/// Returns `n` basis vectors (the kernel always has full rank `n`, since
/// `d·ℤⁿ` is contained in it).
///
/// # Panics
///
/// Panics if `d` is not positive.
#[must_use]
pub fn congruence_kernel_basis(c: &IMat, d: &BigInt) -> Vec<Vec<BigInt>> {
    assert!(d.is_positive(), "modulus must be positive");
    let snf = smith(c);
    let n = c.cols();
    let k = c.rows().min(n);
    // With S = U·C·V and m = V·y:  C·m ≡ 0 (mod d)  ⟺  sᵢ·yᵢ ≡ 0 (mod d),
    // i.e. yᵢ ∈ (d / gcd(sᵢ, d))·ℤ. Beyond the diagonal, yᵢ is free.
    (0..n)
        .map(|i| {
            let si = if i < k {
                snf.s.get(i, i).clone()
            } else {
                BigInt::zero()
            };
            let scale = d / si.gcd(d);
            (0..n).map(|r| snf.v.get(r, i) * &scale).collect()
        })
        .collect()
}
