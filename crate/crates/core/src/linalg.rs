//! Exact linear algebra over prime fields `F_p`.
//!
//! Matrices over `F_2` are bit-packed by rows (64 columns per word); every other
//! prime uses one byte per entry. Row reduction, kernels and subspace arithmetic
//! all go through the reduced row-echelon form, which doubles as the canonical
//! key for subspace equality and hashing.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("modulus mismatch: F_{0} vs F_{1}")]
    ModulusMismatch(u8, u8),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not a supported prime modulus (need a prime below 256)")]
    NotPrime(u32),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Validates a field characteristic and narrows it to the entry type.
pub fn check_prime(p: u32) -> Result<u8> {
    if p < 256 && is_prime(p) {
        Ok(p as u8)
    } else {
        Err(LinalgError::NotPrime(p))
    }
}

#[inline]
fn mul_mod(a: u8, b: u8, p: u8) -> u8 {
    ((a as u16 * b as u16) % p as u16) as u8
}

#[inline]
fn add_mod(a: u8, b: u8, p: u8) -> u8 {
    ((a as u16 + b as u16) % p as u16) as u8
}

#[inline]
fn neg_mod(a: u8, p: u8) -> u8 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Multiplicative inverse by Fermat; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u8, p: u8) -> u8 {
    debug_assert!(!a.is_multiple_of(p));
    let mut result = 1u8;
    let mut base = a % p;
    let mut e = p as u32 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Storage {
    /// Row-major bits, `words` u64 per row, padding bits always zero.
    Packed { words: usize, data: Vec<u64> },
    Bytes(Vec<u8>),
}

/// A dense matrix over `F_p` with entries in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    p: u8,
    rows: usize,
    cols: usize,
    storage: Storage,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(p: u8, rows: usize, cols: usize) -> Self {
        let storage = if p == 2 {
            let words = cols.div_ceil(64);
            Storage::Packed {
                words,
                data: vec![0; rows * words],
            }
        } else {
            Storage::Bytes(vec![0; rows * cols])
        };
        Matrix {
            p,
            rows,
            cols,
            storage,
        }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(p: u8, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c).rem_euclid(p as i64) as u8;
                if v != 0 {
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows(p: u8, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch(format!(
                "row of length {} in a matrix with {} columns",
                bad.len(),
                cols
            )));
        }
        Ok(Self::from_fn(p, rows.len(), cols, |r, c| rows[r][c]))
    }

    /// Builds a matrix whose rows are the given residue vectors.
    pub fn from_vectors(p: u8, cols: usize, vectors: &[Vec<u8>]) -> Self {
        Self::from_fn(p, vectors.len(), cols, |r, c| vectors[r][c] as i64)
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        debug_assert!(r < self.rows && c < self.cols);
        match &self.storage {
            Storage::Packed { words, data } => ((data[r * words + c / 64] >> (c % 64)) & 1) as u8,
            Storage::Bytes(data) => data[r * self.cols + c],
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(r < self.rows && c < self.cols);
        let v = v % self.p;
        let cols = self.cols;
        match &mut self.storage {
            Storage::Packed { words, data } => {
                let w = &mut data[r * *words + c / 64];
                let bit = 1u64 << (c % 64);
                if v == 1 {
                    *w |= bit;
                } else {
                    *w &= !bit;
                }
            }
            Storage::Bytes(data) => data[r * cols + c] = v,
        }
    }

    pub fn row(&self, r: usize) -> Vec<u8> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.storage {
            Storage::Packed { data, .. } => data.iter().all(|&w| w == 0),
            Storage::Bytes(data) => data.iter().all(|&x| x == 0),
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.p != other.p {
            Err(LinalgError::ModulusMismatch(self.p, other.p))
        } else {
            Ok(())
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v != 0 {
                    t.set(c, r, v);
                }
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.p, self.rows, rhs.cols);
        if let (Storage::Packed { .. }, Storage::Packed { words, data: rdata }) = (&self.storage, &rhs.storage) {
            let words = *words;
            let Storage::Packed { data: odata, .. } = &mut out.storage else {
                unreachable!()
            };
            for i in 0..self.rows {
                for k in 0..self.cols {
                    if self.get(i, k) == 1 {
                        for w in 0..words {
                            odata[i * words + w] ^= rdata[k * words + w];
                        }
                    }
                }
            }
            return Ok(out);
        }
        let p = self.p as u32;
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0u32;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u32 * rhs.get(k, j) as u32;
                }
                out.set(i, j, (acc % p) as u8);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        let p = self.p as u32;
        (0..self.rows)
            .map(|r| {
                let acc: u32 = (0..self.cols).map(|c| self.get(r, c) as u32 * v[c] as u32).sum();
                (acc % p) as u8
            })
            .collect()
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(u8, u8) -> u8) -> Result<Matrix> {
        self.same_field(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(LinalgError::DimensionMismatch(format!(
                "entrywise operation on {:?} and {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        let mut out = Matrix::zeros(self.p, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, f(self.get(r, c), rhs.get(r, c)));
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        let p = self.p;
        self.zip_with(rhs, |a, b| add_mod(a, b, p))
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        let p = self.p;
        self.zip_with(rhs, |a, b| add_mod(a, neg_mod(b, p), p))
    }

    pub fn scale(&self, s: u8) -> Matrix {
        let s = s % self.p;
        let mut out = Matrix::zeros(self.p, self.rows, self.cols);
        if s == 0 {
            return out;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, mul_mod(self.get(r, c), s, self.p));
            }
        }
        out
    }

    /// Horizontal concatenation; all parts must share a row count.
    pub fn hstack(p: u8, rows: usize, parts: &[&Matrix]) -> Result<Matrix> {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let mut off = 0;
        for m in parts {
            if m.p != p {
                return Err(LinalgError::ModulusMismatch(p, m.p));
            }
            if m.rows != rows {
                return Err(LinalgError::DimensionMismatch(format!(
                    "hstack of a {}-row block into {} rows",
                    m.rows, rows
                )));
            }
            out.paste(m, 0, off);
            off += m.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation; all parts must share a column count.
    pub fn vstack(p: u8, cols: usize, parts: &[&Matrix]) -> Result<Matrix> {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let mut off = 0;
        for m in parts {
            if m.p != p {
                return Err(LinalgError::ModulusMismatch(p, m.p));
            }
            if m.cols != cols {
                return Err(LinalgError::DimensionMismatch(format!(
                    "vstack of a {}-column block into {} columns",
                    m.cols, cols
                )));
            }
            out.paste(m, off, 0);
            off += m.rows;
        }
        Ok(out)
    }

    pub fn block_diag(p: u8, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.paste(m, r0, c0);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, block: &Matrix, r0: usize, c0: usize) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.p, rows, cols, |r, c| self.get(r0 + r, c0 + c) as i64)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        match &mut self.storage {
            Storage::Packed { words, data } => {
                for w in 0..*words {
                    data.swap(a * *words + w, b * *words + w);
                }
            }
            Storage::Bytes(data) => {
                for c in 0..self.cols {
                    data.swap(a * self.cols + c, b * self.cols + c);
                }
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: u8) {
        if let Storage::Bytes(data) = &mut self.storage {
            let p = self.p;
            for x in &mut data[r * self.cols..(r + 1) * self.cols] {
                *x = mul_mod(*x, s, p);
            }
        }
        // Over F_2 the only nonzero scalar is 1.
    }

    /// `row[dst] += s * row[src]`, touching columns from `from_col` onward.
    fn add_row_multiple(&mut self, dst: usize, src: usize, s: u8, from_col: usize) {
        match &mut self.storage {
            Storage::Packed { words, data } => {
                let words = *words;
                for w in from_col / 64..words {
                    let v = data[src * words + w];
                    data[dst * words + w] ^= v;
                }
            }
            Storage::Bytes(data) => {
                let p = self.p;
                let cols = self.cols;
                for c in from_col..cols {
                    let v = data[src * cols + c];
                    if v != 0 {
                        data[dst * cols + c] = add_mod(data[dst * cols + c], mul_mod(v, s, p), p);
                    }
                }
            }
        }
    }

    /// The unique reduced row-echelon form, its rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(found) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, found);
            let lead = m.get(row, col);
            if lead != 1 {
                m.scale_row(row, inv_mod(lead, m.p));
            }
            for r in 0..m.rows {
                if r != row {
                    let v = m.get(r, col);
                    if v != 0 {
                        m.add_row_multiple(r, row, neg_mod(v, m.p), col);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            matrix: m,
            rank: row,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of the right kernel `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let Rref { matrix, pivots, .. } = self.rref();
        kernel_from_rref(&matrix, &pivots, self.cols)
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vec<u8>> {
    let mut is_pivot = vec![false; cols];
    for &pc in pivots {
        is_pivot[pc] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![0u8; cols];
            x[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = neg_mod(r.get(i, f), r.p);
            }
            x
        })
        .collect()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}{:?}", self.p, self.to_rows())
    }
}

/// All solutions of `A X = B`: a particular solution plus the kernel of `A`,
/// applied independently to every column of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Matrix,
    pub kernel: Vec<Vec<u8>>,
}

impl AffineSolution {
    /// True iff `x` differs from the particular solution column-wise by kernel vectors.
    pub fn contains(&self, x: &Matrix) -> bool {
        if x.shape() != self.particular.shape() {
            return false;
        }
        let Ok(diff) = x.sub(&self.particular) else {
            return false;
        };
        let kernel = Subspace::from_vectors(self.particular.p(), self.particular.rows(), &self.kernel);
        (0..diff.cols()).all(|c| kernel.contains_vector(&diff.column(c)))
    }
}

/// Solves `A X = B`; `None` means the system is inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<AffineSolution>> {
    a.same_field(b)?;
    if a.rows != b.rows {
        return Err(LinalgError::DimensionMismatch(format!(
            "solve with A of {} rows and B of {} rows",
            a.rows, b.rows
        )));
    }
    let aug = Matrix::hstack(a.p, a.rows, &[a, b])?;
    let Rref { matrix, pivots, .. } = aug.rref();
    if pivots.iter().any(|&pc| pc >= a.cols) {
        return Ok(None);
    }
    let mut particular = Matrix::zeros(a.p, a.cols, b.cols);
    for (i, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            particular.set(pc, j, matrix.get(i, a.cols + j));
        }
    }
    let left = matrix.submatrix(0, 0, matrix.rows, a.cols);
    Ok(Some(AffineSolution {
        particular,
        kernel: kernel_from_rref(&left, &pivots, a.cols),
    }))
}

/// A linear subspace of `F_p^n`, stored as an RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u8, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(p, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn whole(p: u8, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(p, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// The row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let Rref {
            matrix,
            rank,
            pivots,
        } = m.rref();
        Subspace {
            ambient_dim: m.cols(),
            basis: matrix.submatrix(0, 0, rank, m.cols()),
            pivots,
        }
    }

    /// The column space of `m`, as a subspace of `F_p^{rows}`.
    pub fn column_space(m: &Matrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn from_vectors(p: u8, ambient_dim: usize, vectors: &[Vec<u8>]) -> Self {
        Self::row_space(&Matrix::from_vectors(p, ambient_dim, vectors))
    }

    /// Right kernel of `m` as a subspace of `F_p^{cols}`.
    pub fn kernel_of(m: &Matrix) -> Self {
        Self::from_vectors(m.p(), m.cols(), &m.nullspace())
    }

    pub fn p(&self) -> u8 {
        self.basis.p()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<u8>> {
        self.basis.to_rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.p() != other.p() {
            return Err(LinalgError::ModulusMismatch(self.p(), other.p()));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let stacked = Matrix::vstack(self.p(), self.ambient_dim, &[&self.basis, &other.basis])?;
        Ok(Subspace::row_space(&stacked))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.p(), self.ambient_dim));
        }
        // a*U = -b*V for every left-kernel vector (a, b) of [U; V].
        let stacked = Matrix::vstack(self.p(), self.ambient_dim, &[&self.basis, &other.basis])?;
        let k = self.dim();
        let combos = stacked.transpose().nullspace();
        let coeffs: Vec<Vec<u8>> = combos.iter().map(|c| c[..k].to_vec()).collect();
        if coeffs.is_empty() {
            return Ok(Subspace::zero(self.p(), self.ambient_dim));
        }
        let a = Matrix::from_vectors(self.p(), k, &coeffs);
        Ok(Subspace::row_space(&a.mul(&self.basis)?))
    }

    /// True iff `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        Ok((0..other.dim()).all(|r| self.contains_vector(&other.basis.row(r))))
    }

    /// Eliminates the pivot coordinates of `v`; the result is the canonical
    /// representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.ambient_dim);
        let p = self.p();
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c != 0 {
                let s = neg_mod(c, p);
                for (j, x) in out.iter_mut().enumerate().skip(pc) {
                    let b = self.basis.get(i, j);
                    if b != 0 {
                        *x = add_mod(*x, mul_mod(b, s, p), p);
                    }
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Non-pivot coordinates: the standard complement used for quotients.
    pub fn complement_positions(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &pc in &self.pivots {
            is_pivot[pc] = true;
        }
        (0..self.ambient_dim).filter(|&c| !is_pivot[c]).collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Span{:?}", self.basis.to_rows())
    }
}

/// Enumerates every vector of `F_p^n` (in lexicographic order); test and search helper.
pub fn all_vectors(p: u8, n: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = (p as u64).checked_pow(n as u32).expect("vector space too large to enumerate");
    (0..total).map(move |mut idx| {
        let mut v = vec![0u8; n];
        for x in v.iter_mut() {
            *x = (idx % p as u64) as u8;
            idx /= p as u64;
        }
        v
    })
}

/// Every subspace of `F_p^n` of dimension at most `max_dim`, each listed once.
pub fn all_subspaces(p: u8, n: usize, max_dim: usize) -> Vec<Subspace> {
    let mut out = vec![Subspace::zero(p, n)];
    let mut frontier = out.clone();
    let vectors: Vec<Vec<u8>> = all_vectors(p, n).skip(1).collect();
    for _ in 0..max_dim.min(n) {
        let mut next = std::collections::BTreeSet::new();
        for s in &frontier {
            for v in &vectors {
                if !s.contains_vector(v) {
                    let mut basis = s.vectors();
                    basis.push(v.clone());
                    next.insert(Subspace::from_vectors(p, n, &basis));
                }
            }
        }
        frontier = next.into_iter().collect();
        out.extend(frontier.iter().cloned());
    }
    out
}
