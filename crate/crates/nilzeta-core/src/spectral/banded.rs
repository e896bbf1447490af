//! Complex banded matrices and banded block matrices.
//!
//! Truncated Hermite-basis realizations of the Rumin differentials are banded
//! in the mode index: every generator acts by a matrix whose entries vanish
//! outside a narrow band around the diagonal raises/lowers the mode by a
//! bounded amount. Compositions stay banded with additive bandwidths, so the
//! whole operator calculus runs in `O(n · bw)` memory instead of `O(n²)`.

use num_complex::Complex64;
use num_traits::Zero;

/// Dense-in-band complex matrix of dimension `n` with half-bandwidth `bw`:
/// entries `(i, j)` with `|i − j| > bw` are identically zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CBand {
    n: usize,
    bw: usize,
    /// Row-major band storage: entry `(i, j)` lives at `i·(2bw+1) + (j−i+bw)`.
    data: Vec<Complex64>,
}

impl CBand {
    /// Zero matrix of dimension `n` and half-bandwidth `bw` (clamped to
    /// `n − 1`).
    #[must_use]
    pub fn zeros(n: usize, bw: usize) -> Self {
        assert!(n > 0, "banded matrix must have positive dimension");
        let bw = bw.min(n - 1);
        Self {
            n,
            bw,
            data: vec![Complex64::zero(); n * (2 * bw + 1)],
        }
    }

    /// Identity matrix (bandwidth 0).
    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, 0);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Dimension.
    #[must_use]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Half-bandwidth.
    #[must_use]
    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    /// Entry `(i, j)`; zero outside the band.
    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let (lo, hi) = (i.saturating_sub(self.bw), (i + self.bw).min(self.n - 1));
        if j < lo || j > hi {
            return Complex64::zero();
        }
        self.data[i * (2 * self.bw + 1) + (j + self.bw - i)]
    }

    /// Sets entry `(i, j)`.
    ///
    /// # Panics
    ///
    /// Panics if `(i, j)` lies outside the band.
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        assert!(
            i < self.n && j < self.n && i.abs_diff(j) <= self.bw,
            "entry ({i}, {j}) outside band (n={}, bw={})",
            self.n,
            self.bw
        );
        self.data[i * (2 * self.bw + 1) + (j + self.bw - i)] = v;
    }

    /// Adds `v` into entry `(i, j)`.
    ///
    /// # Panics
    ///
    /// Panics if `(i, j)` lies outside the band.
    pub fn add_to(&mut self, i: usize, j: usize, v: Complex64) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    /// Matrix product; the result has half-bandwidth `bw₁ + bw₂` (clamped).
    ///
    /// # Panics
    ///
    /// Panics on dimension mismatch.
    #[must_use]
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch in banded product");
        let mut out = Self::zeros(self.n, self.bw + rhs.bw);
        for i in 0..self.n {
            let klo = i.saturating_sub(self.bw);
            let khi = (i + self.bw).min(self.n - 1);
            for k in klo..=khi {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let jlo = k.saturating_sub(rhs.bw);
                let jhi = (k + rhs.bw).min(self.n - 1);
                for j in jlo..=jhi {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, a * b);
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    #[must_use]
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.n, self.bw);
        for i in 0..self.n {
            let jlo = i.saturating_sub(self.bw);
            let jhi = (i + self.bw).min(self.n - 1);
            for j in jlo..=jhi {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.set(j, i, v.conj());
                }
            }
        }
        out
    }

    /// Sum; the result has the larger of the two bandwidths.
    ///
    /// # Panics
    ///
    /// Panics on dimension mismatch.
    #[must_use]
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch in banded sum");
        let mut out = Self::zeros(self.n, self.bw.max(rhs.bw));
        for i in 0..self.n {
            let b = self.bw.max(rhs.bw);
            let jlo = i.saturating_sub(b);
            let jhi = (i + b).min(self.n - 1);
            for j in jlo..=jhi {
                let v = self.get(i, j) + rhs.get(i, j);
                if !v.is_zero() {
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Scalar multiple.
    #[must_use]
    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= c;
        }
        out
    }

    /// Integer matrix power by repeated multiplication (`p ≥ 1`).
    ///
    /// # Panics
    ///
    /// Panics if `p == 0`.
    #[must_use]
    pub fn pow(&self, p: usize) -> Self {
        assert!(p >= 1, "matrix power must be positive");
        let mut acc = self.clone();
        for _ in 1..p {
            acc = acc.mul(self);
        }
        acc
    }

    /// Largest absolute deviation from Hermitian symmetry,
    /// `max |a_{ij} − conj(a_{ji})|`.
    #[must_use]
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            let jlo = i.saturating_sub(self.bw);
            let jhi = (i + self.bw).min(self.n - 1);
            for j in jlo..=jhi {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Replaces the matrix by its Hermitian part `(A + A*)/2`.
    #[must_use]
    pub fn symmetrize(&self) -> Self {
        self.add(&self.adjoint()).scale(Complex64::new(0.5, 0.0))
    }

    /// Largest entry magnitude.
    #[must_use]
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute row sum (the operator ∞-norm).
    ///
    /// For a Hermitian matrix this dominates the spectral norm, making it a
    /// safe scale factor in eigenvalue roundoff estimates.
    #[must_use]
    pub fn inf_norm(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            let jlo = i.saturating_sub(self.bw);
            let jhi = (i + self.bw).min(self.n - 1);
            let row: f64 = (jlo..=jhi).map(|j| self.get(i, j).norm()).sum();
            worst = worst.max(row);
        }
        worst
    }

    /// Leading `m × m` principal submatrix (same bandwidth).
    ///
    /// Computing a product at an enlarged size and then taking the principal
    /// submatrix yields entries free of truncation-boundary corruption.
    ///
    /// # Panics
    ///
    /// Panics if `m` exceeds the dimension.
    #[must_use]
    pub fn principal(&self, m: usize) -> Self {
        assert!(m <= self.n, "principal submatrix larger than matrix");
        let mut out = CBand::zeros(m, self.bw.min(m.saturating_sub(1)));
        for i in 0..m {
            let jlo = i.saturating_sub(self.bw);
            let jhi = (i + self.bw).min(m - 1);
            for j in jlo..=jhi {
                let v = self.get(i, j);
                if v != Complex64::zero() {
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// LAPACK upper band storage (`'U'` convention): a column-major
    /// `(kd+1) × n` array with `A(i,j)` at `ab[kd + i − j + j·(kd+1)]` for
    /// `max(0, j−kd) ≤ i ≤ j`. Returns `(kd, ab)`.
    #[must_use]
    pub fn to_lapack_upper(&self) -> (usize, Vec<Complex64>) {
        let kd = self.bw;
        let ldab = kd + 1;
        let mut ab = vec![Complex64::zero(); ldab * self.n];
        for j in 0..self.n {
            for i in j.saturating_sub(kd)..=j {
                ab[kd + i - j + j * ldab] = self.get(i, j);
            }
        }
        (kd, ab)
    }
}

/// A (possibly rectangular) matrix in LAPACK general band storage:
/// column-major `(ldab × cols)` array with `A(i,j)` at
/// `ab[ku + i − j + j·ldab]` for `j − ku ≤ i ≤ j + kl`.
#[derive(Clone, Debug)]
pub struct GeneralBand {
    /// Number of rows.
    pub rows: usize,
    /// Number of columns.
    pub cols: usize,
    /// Lower bandwidth.
    pub kl: usize,
    /// Upper bandwidth.
    pub ku: usize,
    /// Leading dimension of the storage (`kl + ku + 1`).
    pub ldab: usize,
    /// Column-major band storage.
    pub ab: Vec<Complex64>,
}

/// Rectangular block matrix whose blocks are banded operators on a common
/// mode space of dimension `modes`. Missing blocks are zero.
#[derive(Clone, Debug)]
pub struct BandBlockMat {
    block_rows: usize,
    block_cols: usize,
    modes: usize,
    blocks: Vec<Option<CBand>>,
}

impl BandBlockMat {
    /// Zero block matrix of the given block shape over a mode space of
    /// dimension `modes`.
    #[must_use]
    pub fn zeros(block_rows: usize, block_cols: usize, modes: usize) -> Self {
        Self {
            block_rows,
            block_cols,
            modes,
            blocks: vec![None; block_rows * block_cols],
        }
    }

    /// Number of block rows.
    #[must_use]
    pub fn block_rows(&self) -> usize {
        self.block_rows
    }

    /// Number of block columns.
    #[must_use]
    pub fn block_cols(&self) -> usize {
        self.block_cols
    }

    /// Mode-space dimension of every block.
    #[must_use]
    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Block `(i, j)`, if present.
    #[must_use]
    pub fn block(&self, i: usize, j: usize) -> Option<&CBand> {
        self.blocks[i * self.block_cols + j].as_ref()
    }

    /// Installs block `(i, j)`.
    ///
    /// # Panics
    ///
    /// Panics if the block dimension does not match `modes`.
    pub fn set_block(&mut self, i: usize, j: usize, b: CBand) {
        assert_eq!(b.dim(), self.modes, "block dimension mismatch");
        self.blocks[i * self.block_cols + j] = Some(b);
    }

    /// Blockwise product.
    ///
    /// # Panics
    ///
    /// Panics on block-shape or mode mismatch.
    #[must_use]
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.block_cols, rhs.block_rows, "block shape mismatch");
        assert_eq!(self.modes, rhs.modes, "mode dimension mismatch");
        let mut out = Self::zeros(self.block_rows, rhs.block_cols, self.modes);
        for i in 0..self.block_rows {
            for j in 0..rhs.block_cols {
                let mut acc: Option<CBand> = None;
                for k in 0..self.block_cols {
                    if let (Some(a), Some(b)) = (self.block(i, k), rhs.block(k, j)) {
                        let prod = a.mul(b);
                        acc = Some(match acc {
                            None => prod,
                            Some(s) => s.add(&prod),
                        });
                    }
                }
                out.blocks[i * out.block_cols + j] = acc;
            }
        }
        out
    }

    /// Blockwise conjugate transpose.
    #[must_use]
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.block_cols, self.block_rows, self.modes);
        for i in 0..self.block_rows {
            for j in 0..self.block_cols {
                if let Some(b) = self.block(i, j) {
                    out.set_block(j, i, b.adjoint());
                }
            }
        }
        out
    }

    /// Blockwise sum.
    ///
    /// # Panics
    ///
    /// Panics on shape mismatch.
    #[must_use]
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.block_rows, rhs.block_rows, "block shape mismatch");
        assert_eq!(self.block_cols, rhs.block_cols, "block shape mismatch");
        assert_eq!(self.modes, rhs.modes, "mode dimension mismatch");
        let mut out = Self::zeros(self.block_rows, self.block_cols, self.modes);
        for (idx, slot) in out.blocks.iter_mut().enumerate() {
            *slot = match (&self.blocks[idx], &rhs.blocks[idx]) {
                (None, None) => None,
                (Some(a), None) => Some(a.clone()),
                (None, Some(b)) => Some(b.clone()),
                (Some(a), Some(b)) => Some(a.add(b)),
            };
        }
        out
    }

    /// Blockwise power of a square block matrix (`p ≥ 1`).
    ///
    /// # Panics
    ///
    /// Panics if not square or `p == 0`.
    #[must_use]
    pub fn pow(&self, p: usize) -> Self {
        assert_eq!(self.block_rows, self.block_cols, "power of non-square");
        assert!(p >= 1, "matrix power must be positive");
        let mut acc = self.clone();
        for _ in 1..p {
            acc = acc.mul(self);
        }
        acc
    }

    /// Flattens into LAPACK general band storage on the padded square block
    /// index `(mode, component) ↦ mode·d + component` with
    /// `d = max(block rows, block cols)`; the narrower side is padded with
    /// zero component slots, which only adds zero columns or rows (and hence
    /// zero singular values). Rows keep all modes; columns are restricted to
    /// the first `keep_cols` modes, so the result represents the operator
    /// composed with the mode-truncation projection on the domain side.
    ///
    /// # Panics
    ///
    /// Panics if `keep_cols` exceeds the mode dimension.
    #[must_use]
    pub fn to_lapack_general_band(&self, keep_cols: usize) -> GeneralBand {
        assert!(keep_cols <= self.modes, "keep_cols exceeds modes");
        let d = self.block_rows.max(self.block_cols);
        let rows = self.modes * d;
        let cols = keep_cols * d;
        let inner_bw = self
            .blocks
            .iter()
            .flatten()
            .map(CBand::bandwidth)
            .max()
            .unwrap_or(0);
        let band = inner_bw * d + d.saturating_sub(1);
        let (kl, ku) = (band, band);
        let ldab = kl + ku + 1;
        let mut ab = vec![Complex64::zero(); ldab * cols.max(1)];
        for bi in 0..self.block_rows {
            for bj in 0..self.block_cols {
                let Some(blk) = self.block(bi, bj) else {
                    continue;
                };
                for mcol in 0..keep_cols {
                    let lo = mcol.saturating_sub(blk.bandwidth());
                    let hi = (mcol + blk.bandwidth()).min(self.modes - 1);
                    for mrow in lo..=hi {
                        let v = blk.get(mrow, mcol);
                        if !v.is_zero() {
                            let r = mrow * d + bi;
                            let c = mcol * d + bj;
                            ab[ku + r - c + c * ldab] = v;
                        }
                    }
                }
            }
        }
        GeneralBand {
            rows,
            cols,
            kl,
            ku,
            ldab,
            ab,
        }
    }

    /// Flattens a square block matrix into a single banded matrix on the
    /// index `(mode, component) ↦ mode·d + component` (`d` = block dimension),
    /// which keeps the flat bandwidth at `bw·d + d − 1`.
    ///
    /// # Panics
    ///
    /// Panics if the block matrix is not square.
    #[must_use]
    pub fn flatten(&self) -> CBand {
        assert_eq!(self.block_rows, self.block_cols, "flatten of non-square");
        let d = self.block_rows;
        let inner_bw = self
            .blocks
            .iter()
            .flatten()
            .map(CBand::bandwidth)
            .max()
            .unwrap_or(0);
        let mut out = CBand::zeros(self.modes * d, inner_bw * d + d - 1);
        for bi in 0..d {
            for bj in 0..d {
                let Some(blk) = self.block(bi, bj) else {
                    continue;
                };
                for m in 0..self.modes {
                    let lo = m.saturating_sub(blk.bandwidth());
                    let hi = (m + blk.bandwidth()).min(self.modes - 1);
                    for mm in lo..=hi {
                        let v = blk.get(m, mm);
                        if !v.is_zero() {
                            out.set(m * d + bi, mm * d + bj, v);
                        }
                    }
                }
            }
        }
        out
    }
}
