//! Small dense and sparse linear algebra used by the geometry and FEM layers.
//!
//! Dense matrices here are tiny (vertex matrices, face Grams, metric
//! coefficients); the large generalized eigensolves go through
//! [`crate::fem`], which combines these kernels with a dense backend.

use crate::error::{Error, Result};
use crate::scalar::Real;
use num_complex::Complex;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> DenseMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
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

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |m, &v| m.max(v.abs()))
    }

    /// Max-norm of the symmetry defect `|A - Aᵀ|`.
    pub fn symmetry_defect(&self) -> T {
        let mut d = T::zero();
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                d = d.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        d
    }

    /// Infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> T {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .fold(T::zero(), |acc, &v| acc + v.abs())
            })
            .fold(T::zero(), |m, v| m.max(v))
    }

    /// LU factorization with partial pivoting; returns (inverse, determinant).
    pub fn lu_invert(&self) -> Result<(Self, T)> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let mut det = T::one();
        for col in 0..n {
            let mut piv = col;
            let mut best = a[(col, col)].abs();
            for r in (col + 1)..n {
                if a[(r, col)].abs() > best {
                    best = a[(r, col)].abs();
                    piv = r;
                }
            }
            if best == T::zero() {
                return Err(Error::LinearSolve("singular matrix"));
            }
            if piv != col {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
                det = -det;
            }
            let d = a[(col, col)];
            det = det * d;
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)] / d;
                if f == T::zero() {
                    continue;
                }
                for c in 0..n {
                    let acc = a[(col, c)];
                    a[(r, c)] = a[(r, c)] - f * acc;
                    let icc = inv[(col, c)];
                    inv[(r, c)] = inv[(r, c)] - f * icc;
                }
            }
        }
        for r in 0..n {
            let d = a[(r, r)];
            for c in 0..n {
                inv[(r, c)] = inv[(r, c)] / d;
            }
        }
        Ok((inv, det))
    }

    /// Determinant via LU (no inverse kept).
    pub fn determinant(&self) -> T {
        match self.lu_invert() {
            Ok((_, d)) => d,
            Err(_) => T::zero(),
        }
    }

    /// Cholesky factor `L` (lower) of a symmetric positive definite matrix.
    pub fn cholesky(&self) -> Result<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut l = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s = s - l[(i, k)] * l[(j, k)];
                }
                if i == j {
                    if s <= T::zero() {
                        return Err(Error::NotPositiveDefinite("cholesky pivot <= 0"));
                    }
                    l[(i, j)] = s.sqrt();
                } else {
                    l[(i, j)] = s / l[(j, j)];
                }
            }
        }
        Ok(l)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<T: Real> std::ops::Index<(usize, usize)> for DenseMat<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> std::ops::IndexMut<(usize, usize)> for DenseMat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Gram determinant of a set of spanning vectors (rows of `v`), clamped
/// against tiny negative round-off.
pub fn gram_det<T: Real>(vectors: &[Vec<T>]) -> T {
    let k = vectors.len();
    let mut g = DenseMat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            g[(i, j)] = vectors[i]
                .iter()
                .zip(&vectors[j])
                .fold(T::zero(), |acc, (&a, &b)| acc + a * b);
        }
    }
    let d = g.determinant();
    if d < T::zero() {
        T::zero()
    } else {
        d
    }
}

/// Euclidean norm of a slice.
pub fn norm2<T: Real>(x: &[T]) -> T {
    x.iter()
        .fold(T::zero(), |acc, &v| acc + v * v)
        .sqrt()
}

/// Dot product of two slices.
pub fn dot<T: Real>(x: &[T], y: &[T]) -> T {
    x.iter().zip(y).fold(T::zero(), |acc, (&a, &b)| acc + a * b)
}

// ---------------------------------------------------------------------------
// Sparse CSR
// ---------------------------------------------------------------------------

/// Compressed sparse row matrix with the full (both-triangle) pattern.
#[derive(Debug, Clone)]
pub struct Csr<T> {
    n_rows: usize,
    n_cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<T>,
}

impl<T: Real> Csr<T> {
    /// Build from (row, col, value) triplets, summing duplicates.
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut entries: Vec<(usize, usize, T)> = triplets.into_iter().collect();
        entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut merged: Vec<(usize, usize, T)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some((lr, lc, lv)) if *lr == r && *lc == c => *lv = *lv + v,
                _ => merged.push((r, c, v)),
            }
        }
        let mut row_ptr = vec![0usize; n_rows + 1];
        for &(r, _, _) in &merged {
            row_ptr[r + 1] += 1;
        }
        for r in 0..n_rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        let (col_idx, values) = merged.into_iter().map(|(_, c, v)| (c, v)).unzip();
        Self {
            n_rows,
            n_cols,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> (&[usize], &[T]) {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.col_idx[a..b], &self.values[a..b])
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(p) => vals[p],
            Err(_) => T::zero(),
        }
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.n_cols);
        let mut y = vec![T::zero(); self.n_rows];
        for i in 0..self.n_rows {
            let (cols, vals) = self.row(i);
            let mut acc = T::zero();
            for (&c, &v) in cols.iter().zip(vals) {
                acc = acc + v * x[c];
            }
            y[i] = acc;
        }
        y
    }

    pub fn mul_complex_vec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(x.len(), self.n_cols);
        let mut y = vec![Complex::new(T::zero(), T::zero()); self.n_rows];
        for i in 0..self.n_rows {
            let (cols, vals) = self.row(i);
            let mut acc = Complex::new(T::zero(), T::zero());
            for (&c, &v) in cols.iter().zip(vals) {
                acc = acc + x[c] * v;
            }
            y[i] = acc;
        }
        y
    }

    /// Quadratic form `xᵀ A y`.
    pub fn bilinear(&self, x: &[T], y: &[T]) -> T {
        let ay = self.mul_vec(y);
        dot(x, &ay)
    }

    /// Hermitian-style bilinear form `xᵀ A ȳ` on complex vectors (A real).
    pub fn bilinear_complex(&self, x: &[Complex<T>], y: &[Complex<T>]) -> Complex<T> {
        let ay = self.mul_complex_vec(y);
        x.iter()
            .zip(&ay)
            .map(|(a, b)| a * b.conj())
            .fold(Complex::new(T::zero(), T::zero()), |s, v| s + v)
    }

    pub fn to_dense(&self) -> DenseMat<T> {
        let mut d = DenseMat::zeros(self.n_rows, self.n_cols);
        for i in 0..self.n_rows {
            let (cols, vals) = self.row(i);
            for (&c, &v) in cols.iter().zip(vals) {
                d[(i, c)] = v;
            }
        }
        d
    }

    /// Max-norm symmetry defect; the assembled operators must be symmetric.
    pub fn symmetry_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n_rows {
            let (cols, vals) = self.row(i);
            for (&c, &v) in cols.iter().zip(vals) {
                worst = worst.max((v - self.get(c, i)).abs());
            }
        }
        worst
    }

    pub fn row_sums(&self) -> Vec<T> {
        (0..self.n_rows)
            .map(|i| self.row(i).1.iter().fold(T::zero(), |a, &v| a + v))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Reverse Cuthill–McKee ordering and skyline Cholesky
// ---------------------------------------------------------------------------

/// Reverse Cuthill–McKee permutation for the pattern of a symmetric CSR
/// matrix. `perm[new] = old`. Deterministic: ties break on vertex index.
pub fn reverse_cuthill_mckee<T: Real>(a: &Csr<T>) -> Vec<usize> {
    let n = a.n_rows();
    if n == 0 {
        return Vec::new();
    }
    let degree = |v: usize| a.row(v).0.len();
    let bfs = |start: usize, visited: &mut Vec<bool>| -> Vec<usize> {
        let mut order = vec![start];
        visited[start] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            let mut nbrs: Vec<usize> = a.row(v).0.iter().copied().filter(|&u| !visited[u]).collect();
            nbrs.sort_by_key(|&u| (degree(u), u));
            for u in nbrs {
                if !visited[u] {
                    visited[u] = true;
                    order.push(u);
                }
            }
        }
        order
    };

    let mut perm = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    // Components processed in index order; each started from a
    // pseudo-peripheral vertex found by a double BFS.
    for seed in 0..n {
        if visited[seed] {
            continue;
        }
        let mut probe = visited.clone();
        let comp = bfs(seed, &mut probe);
        let start = *comp.last().unwrap();
        let run = bfs(start, &mut visited);
        perm.extend(run);
    }
    perm.reverse();
    perm
}

/// Skyline (variable-band) Cholesky factorization of a sparse SPD matrix,
/// with an internal RCM reordering to shrink the profile.
#[derive(Debug, Clone)]
pub struct SkylineCholesky<T> {
    n: usize,
    /// perm[new] = old
    perm: Vec<usize>,
    /// iperm[old] = new
    iperm: Vec<usize>,
    /// first stored column of each (permuted) row
    first: Vec<usize>,
    /// start of each row segment in `data`
    start: Vec<usize>,
    data: Vec<T>,
}

impl<T: Real> SkylineCholesky<T> {
    pub fn factor(a: &Csr<T>) -> Result<Self> {
        let n = a.n_rows();
        let perm = reverse_cuthill_mckee(a);
        let mut iperm = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            iperm[old] = new;
        }

        let mut first = vec![0usize; n];
        for new in 0..n {
            let old = perm[new];
            let mut f = new;
            for &c in a.row(old).0 {
                f = f.min(iperm[c]);
            }
            first[new] = f.min(new);
        }
        let mut start = vec![0usize; n + 1];
        for i in 0..n {
            start[i + 1] = start[i] + (i - first[i] + 1);
        }
        let mut data = vec![T::zero(); start[n]];
        for new in 0..n {
            let old = perm[new];
            let (cols, vals) = a.row(old);
            for (&c, &v) in cols.iter().zip(vals) {
                let cn = iperm[c];
                if cn <= new {
                    data[start[new] + (cn - first[new])] = v;
                }
            }
        }

        // In-place factorization: data holds L with L[i][first..=i].
        for i in 0..n {
            let fi = first[i];
            for j in fi..i {
                let fj = first[j];
                let lo = fi.max(fj);
                let mut s = data[start[i] + (j - fi)];
                for k in lo..j {
                    s = s - data[start[i] + (k - fi)] * data[start[j] + (k - fj)];
                }
                let djj = data[start[j] + (j - fj)];
                data[start[i] + (j - fi)] = s / djj;
            }
            let mut s = data[start[i] + (i - fi)];
            for k in fi..i {
                let l = data[start[i] + (k - fi)];
                s = s - l * l;
            }
            if s <= T::zero() {
                return Err(Error::NotPositiveDefinite("skyline cholesky pivot <= 0"));
            }
            data[start[i] + (i - fi)] = s.sqrt();
        }

        Ok(Self {
            n,
            perm,
            iperm,
            first,
            start,
            data,
        })
    }

    /// Solve `A x = b`.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        assert_eq!(b.len(), self.n);
        let n = self.n;
        let mut y: Vec<T> = (0..n).map(|i| b[self.perm[i]]).collect();
        // forward: L y' = y
        for i in 0..n {
            let fi = self.first[i];
            let mut s = y[i];
            for k in fi..i {
                s = s - self.data[self.start[i] + (k - fi)] * y[k];
            }
            y[i] = s / self.data[self.start[i] + (i - fi)];
        }
        // backward: Lᵀ x' = y'
        for i in (0..n).rev() {
            let fi = self.first[i];
            let xi = y[i] / self.data[self.start[i] + (i - fi)];
            y[i] = xi;
            for k in fi..i {
                y[k] = y[k] - self.data[self.start[i] + (k - fi)] * xi;
            }
        }
        let mut x = vec![T::zero(); n];
        for new in 0..n {
            x[self.perm[new]] = y[new];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lu_inverts_small_matrices() {
        let m = DenseMat::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]);
        let (inv, det) = m.lu_invert().unwrap();
        assert_relative_eq!(det, 5.0, epsilon = 1e-14);
        let prod = m.matmul(&inv);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_relative_eq!(prod[(i, j)], expect, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn lu_rejects_singular() {
        let m = DenseMat::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(m.lu_invert().is_err());
    }

    #[test]
    fn lu_random_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| rng.gen_range(-1.0..1.0) + if i == j { 3.0 } else { 0.0 })
                        .collect()
                })
                .collect();
            let m = DenseMat::from_rows(&rows);
            let (inv, _) = m.lu_invert().unwrap();
            let defect = m
                .matmul(&inv)
                .as_slice()
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    let (i, j) = (k / n, k % n);
                    (v - if i == j { 1.0 } else { 0.0 }).abs()
                })
                .fold(0.0f64, f64::max);
            assert!(defect < 1e-12, "n = {n}, defect = {defect:e}");
        }
    }

    #[test]
    fn cholesky_of_spd() {
        let m = DenseMat::from_rows(&[vec![4.0, 2.0], vec![2.0, 3.0]]);
        let l = m.cholesky().unwrap();
        let lt = l.transpose();
        let prod = l.matmul(&lt);
        assert_relative_eq!(prod[(0, 0)], 4.0, epsilon = 1e-14);
        assert_relative_eq!(prod[(0, 1)], 2.0, epsilon = 1e-14);
        assert_relative_eq!(prod[(1, 1)], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let m = DenseMat::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(m.cholesky().is_err());
    }

    #[test]
    fn gram_det_orthogonal_vectors() {
        let v = vec![vec![1.0, 0.0, 0.0], vec![0.0, 2.0, 0.0]];
        assert_relative_eq!(gram_det(&v), 4.0, epsilon = 1e-14);
    }

    #[test]
    fn csr_from_triplets_merges_duplicates() {
        let a = Csr::from_triplets(
            2,
            2,
            vec![(0, 0, 1.0), (0, 0, 2.0), (1, 1, 5.0), (0, 1, 4.0)],
        );
        assert_eq!(a.get(0, 0), 3.0);
        assert_eq!(a.get(0, 1), 4.0);
        assert_eq!(a.get(1, 0), 0.0);
        assert_eq!(a.get(1, 1), 5.0);
        assert_eq!(a.nnz(), 3);
    }

    #[test]
    fn csr_matvec_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 12;
        let mut trips = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if rng.gen_bool(0.3) {
                    trips.push((i, j, rng.gen_range(-1.0..1.0)));
                }
            }
        }
        let a = Csr::from_triplets(n, n, trips);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let dense = a.to_dense();
        let y1 = a.mul_vec(&x);
        let y2 = dense.mul_vec(&x);
        for (u, v) in y1.iter().zip(&y2) {
            assert_relative_eq!(u, v, epsilon = 1e-14);
        }
    }

    fn random_sparse_spd(n: usize, seed: u64) -> Csr<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut trips = Vec::new();
        for i in 0..n {
            trips.push((i, i, 4.0 + rng.gen_range(0.0..1.0)));
            // a couple of symmetric off-diagonal couplings
            for _ in 0..2 {
                let j = rng.gen_range(0..n);
                if j != i {
                    let v = rng.gen_range(-0.4..0.4);
                    trips.push((i, j, v));
                    trips.push((j, i, v));
                }
            }
        }
        Csr::from_triplets(n, n, trips)
    }

    #[test]
    fn skyline_solves_match_dense() {
        for seed in 0..4u64 {
            let n = 40;
            let a = random_sparse_spd(n, seed);
            let chol = SkylineCholesky::factor(&a).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
            let x_true: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let b = a.mul_vec(&x_true);
            let x = chol.solve(&b);
            for (u, v) in x.iter().zip(&x_true) {
                assert_relative_eq!(u, v, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn rcm_is_a_permutation() {
        let a = random_sparse_spd(25, 3);
        let perm = reverse_cuthill_mckee(&a);
        let mut seen = vec![false; 25];
        for &p in &perm {
            assert!(!seen[p]);
            seen[p] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
