use crate::error::{Error, Result};

/// Compressed-sparse-row matrix of `f64`.
///
/// Assembled matrices never contain duplicate `(row, col)` pairs or explicit
/// zeros, and column indices are sorted within each row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            row_offsets: vec![0; nrows + 1],
            col_indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            nrows: n,
            ncols: n,
            row_offsets: (0..=n).collect(),
            col_indices: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let triplets: Vec<_> = diag.iter().enumerate().map(|(i, &v)| (i, i, v)).collect();
        Self::from_triplets(diag.len(), diag.len(), &triplets)
    }

    /// Assembles from `(row, col, value)` triplets. Duplicates are summed and
    /// entries that sum to exactly zero are dropped.
    ///
    /// Panics if an index is out of range.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, f64)]) -> Self {
        let mut counts = vec![0usize; nrows + 1];
        for &(r, c, _) in triplets {
            assert!(r < nrows && c < ncols, "triplet ({r}, {c}) out of range {nrows}x{ncols}");
            counts[r + 1] += 1;
        }
        for i in 0..nrows {
            counts[i + 1] += counts[i];
        }
        // bucket by row, keeping insertion order so summation order is fixed
        let mut next = counts.clone();
        let mut cols = vec![0usize; triplets.len()];
        let mut vals = vec![0.0; triplets.len()];
        for &(r, c, v) in triplets {
            let k = next[r];
            cols[k] = c;
            vals[k] = v;
            next[r] += 1;
        }

        let mut row_offsets = Vec::with_capacity(nrows + 1);
        let mut col_indices = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());
        row_offsets.push(0);
        let mut scratch: Vec<(usize, f64)> = Vec::new();
        for r in 0..nrows {
            scratch.clear();
            scratch.extend((counts[r]..counts[r + 1]).map(|k| (cols[k], vals[k])));
            scratch.sort_by_key(|&(c, _)| c);
            let mut i = 0;
            while i < scratch.len() {
                let c = scratch[i].0;
                let mut sum = 0.0;
                while i < scratch.len() && scratch[i].0 == c {
                    sum += scratch[i].1;
                    i += 1;
                }
                if sum != 0.0 {
                    col_indices.push(c);
                    values.push(sum);
                }
            }
            row_offsets.push(col_indices.len());
        }
        Self {
            nrows,
            ncols,
            row_offsets,
            col_indices,
            values,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Iterates the stored `(col, value)` pairs of one row.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_offsets[r]..self.row_offsets[r + 1];
        self.col_indices[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    /// Iterates every stored entry as `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.nrows).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let span = self.row_offsets[r]..self.row_offsets[r + 1];
        match self.col_indices[span.clone()].binary_search(&c) {
            Ok(k) => self.values[span.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.nrows.min(self.ncols)).map(|i| self.get(i, i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.ncols + 1];
        for &c in &self.col_indices {
            counts[c + 1] += 1;
        }
        for i in 0..self.ncols {
            counts[i + 1] += counts[i];
        }
        let mut next = counts.clone();
        let mut col_indices = vec![0usize; self.nnz()];
        let mut values = vec![0.0; self.nnz()];
        // rows are visited in increasing order, so transposed rows come out sorted
        for (r, c, v) in self.triplets() {
            let k = next[c];
            col_indices[k] = r;
            values[k] = v;
            next[c] += 1;
        }
        Self {
            nrows: self.ncols,
            ncols: self.nrows,
            row_offsets: counts,
            col_indices,
            values,
        }
    }

    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.nrows];
        self.spmv_into(x, &mut y)?;
        Ok(y)
    }

    pub fn spmv_into(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        if x.len() != self.ncols || y.len() != self.nrows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to vector of length {} into length {}",
                self.nrows,
                self.ncols,
                x.len(),
                y.len()
            )));
        }
        for (r, yr) in y.iter_mut().enumerate() {
            *yr = self.row(r).map(|(c, v)| v * x[c]).sum();
        }
        Ok(())
    }

    /// Sparse product `self * rhs`.
    pub fn matmul(&self, rhs: &CsrMatrix) -> Result<CsrMatrix> {
        if self.ncols != rhs.nrows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let mut triplets = Vec::new();
        for (r, k, a) in self.triplets() {
            triplets.extend(rhs.row(k).map(|(c, b)| (r, c, a * b)));
        }
        Ok(CsrMatrix::from_triplets(self.nrows, rhs.ncols, &triplets))
    }

    pub fn scaled(&self, factor: f64) -> CsrMatrix {
        let triplets: Vec<_> = self.triplets().map(|(r, c, v)| (r, c, factor * v)).collect();
        CsrMatrix::from_triplets(self.nrows, self.ncols, &triplets)
    }

    /// Keeps only the listed rows and columns, renumbered in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> CsrMatrix {
        let mut col_map = vec![usize::MAX; self.ncols];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = new;
        }
        let mut triplets = Vec::new();
        for (new_r, &old_r) in rows.iter().enumerate() {
            for (c, v) in self.row(old_r) {
                if col_map[c] != usize::MAX {
                    triplets.push((new_r, col_map[c], v));
                }
            }
        }
        CsrMatrix::from_triplets(rows.len(), cols.len(), &triplets)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `max |A - A^T|` over all entries.
    pub fn max_asymmetry(&self) -> f64 {
        if self.nrows != self.ncols {
            return f64::INFINITY;
        }
        let t = self.transpose();
        let mut worst: f64 = 0.0;
        for r in 0..self.nrows {
            // both rows are sorted; merge
            let mut a = self.row(r).peekable();
            let mut b = t.row(r).peekable();
            loop {
                match (a.peek().copied(), b.peek().copied()) {
                    (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                        worst = worst.max((va - vb).abs());
                        a.next();
                        b.next();
                    }
                    (Some((ca, va)), Some((cb, _))) if ca < cb => {
                        worst = worst.max(va.abs());
                        a.next();
                    }
                    (Some(_), Some((_, vb))) => {
                        worst = worst.max(vb.abs());
                        b.next();
                    }
                    (Some((_, va)), None) => {
                        worst = worst.max(va.abs());
                        a.next();
                    }
                    (None, Some((_, vb))) => {
                        worst = worst.max(vb.abs());
                        b.next();
                    }
                    (None, None) => break,
                }
            }
        }
        worst
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut dense = vec![vec![0.0; self.ncols]; self.nrows];
        for (r, c, v) in self.triplets() {
            dense[r][c] = v;
        }
        dense
    }
}

/// Lays out a grid of blocks into one matrix. `None` stands for a zero block;
/// every block row needs at least one `Some` to fix its height, and likewise
/// for block columns.
pub fn block_assemble(blocks: &[Vec<Option<&CsrMatrix>>]) -> Result<CsrMatrix> {
    let n_block_rows = blocks.len();
    let n_block_cols = blocks.first().map_or(0, Vec::len);
    if blocks.iter().any(|row| row.len() != n_block_cols) {
        return Err(Error::DimensionMismatch("ragged block layout".into()));
    }
    let mut heights = vec![None; n_block_rows];
    let mut widths = vec![None; n_block_cols];
    for (i, row) in blocks.iter().enumerate() {
        for (j, block) in row.iter().enumerate() {
            if let Some(m) = block {
                for (slot, size) in [(&mut heights[i], m.nrows()), (&mut widths[j], m.ncols())] {
                    match slot {
                        Some(s) if *s != size => {
                            return Err(Error::DimensionMismatch(format!(
                                "block ({i}, {j}) is {}x{}, inconsistent with its neighbours",
                                m.nrows(),
                                m.ncols()
                            )))
                        }
                        _ => *slot = Some(size),
                    }
                }
            }
        }
    }
    let heights: Vec<usize> = heights
        .into_iter()
        .enumerate()
        .map(|(i, h)| h.ok_or_else(|| Error::DimensionMismatch(format!("block row {i} is all zero"))))
        .collect::<Result<_>>()?;
    let widths: Vec<usize> = widths
        .into_iter()
        .enumerate()
        .map(|(j, w)| w.ok_or_else(|| Error::DimensionMismatch(format!("block column {j} is all zero"))))
        .collect::<Result<_>>()?;

    let row_start: Vec<usize> = heights.iter().scan(0, |acc, h| { let s = *acc; *acc += h; Some(s) }).collect();
    let col_start: Vec<usize> = widths.iter().scan(0, |acc, w| { let s = *acc; *acc += w; Some(s) }).collect();
    let mut triplets = Vec::new();
    for (i, row) in blocks.iter().enumerate() {
        for (j, block) in row.iter().enumerate() {
            if let Some(m) = block {
                triplets.extend(m.triplets().map(|(r, c, v)| (row_start[i] + r, col_start[j] + c, v)));
            }
        }
    }
    Ok(CsrMatrix::from_triplets(
        heights.iter().sum(),
        widths.iter().sum(),
        &triplets,
    ))
}

/// The mixed saddle-point operator `[[-H, D^T], [D, 0]]`.
pub fn saddle_point(h: &CsrMatrix, d: &CsrMatrix) -> Result<CsrMatrix> {
    let neg_h = h.scaled(-1.0);
    let dt = d.transpose();
    block_assemble(&[vec![Some(&neg_h), Some(&dt)], vec![Some(d), None]])
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_mul(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
        a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
    }

    #[test]
    fn identity_is_neutral() {
        let x = [1.0, -2.0, 3.5];
        assert_eq!(CsrMatrix::identity(3).spmv(&x).unwrap(), x.to_vec());
    }

    #[test]
    fn duplicates_summed_and_zeros_purged() {
        let m = CsrMatrix::from_triplets(2, 2, &[(0, 0, 1.0), (0, 0, 2.0), (1, 0, 1.0), (1, 0, -1.0), (1, 1, 0.0)]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 0), 3.0);
        assert_eq!(m.get(1, 0), 0.0);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let m = CsrMatrix::identity(3);
        assert!(matches!(m.spmv(&[1.0, 2.0]), Err(Error::DimensionMismatch(_))));
        assert!(m.matmul(&CsrMatrix::identity(2)).is_err());
    }

    #[test]
    fn block_layout_matches_hand_layout() {
        let h = CsrMatrix::from_triplets(2, 2, &[(0, 0, 1.0), (0, 1, 2.0), (1, 0, 2.0), (1, 1, 5.0)]);
        let d = CsrMatrix::from_triplets(2, 2, &[(0, 0, 3.0), (1, 1, -4.0), (1, 0, 7.0)]);
        let k = saddle_point(&h, &d).unwrap();
        let expected = vec![
            vec![-1.0, -2.0, 3.0, 7.0],
            vec![-2.0, -5.0, 0.0, -4.0],
            vec![3.0, 0.0, 0.0, 0.0],
            vec![7.0, -4.0, 0.0, 0.0],
        ];
        assert_eq!(k.to_dense(), expected);
        assert_eq!(k.max_asymmetry(), 0.0);
    }

    #[test]
    fn select_renumbers() {
        let m = CsrMatrix::from_triplets(3, 3, &[(0, 0, 1.0), (1, 2, 2.0), (2, 1, 3.0), (2, 2, 4.0)]);
        let s = m.select(&[2, 1], &[2, 1]);
        assert_eq!(s.to_dense(), vec![vec![4.0, 3.0], vec![2.0, 0.0]]);
    }

    fn arb_matrix() -> impl Strategy<Value = (usize, usize, Vec<(usize, usize, f64)>)> {
        (1usize..12, 1usize..12).prop_flat_map(|(r, c)| {
            let t = prop::collection::vec((0..r, 0..c, -10.0f64..10.0), 0..40);
            (Just(r), Just(c), t)
        })
    }

    proptest! {
        #[test]
        fn transpose_is_involution((r, c, t) in arb_matrix()) {
            let m = CsrMatrix::from_triplets(r, c, &t);
            prop_assert_eq!(m.transpose().transpose(), m);
        }

        #[test]
        fn spmv_matches_dense((r, c, t) in arb_matrix(), seed in 0u64..1000) {
            let m = CsrMatrix::from_triplets(r, c, &t);
            let x: Vec<f64> = (0..c).map(|i| ((i as u64 * 7919 + seed) % 23) as f64 - 11.0).collect();
            let y = m.spmv(&x).unwrap();
            let yd = dense_mul(&m.to_dense(), &x);
            for (a, b) in y.iter().zip(&yd) {
                prop_assert!((a - b).abs() <= 1e-13 * (1.0 + b.abs()));
            }
        }

        #[test]
        fn matmul_matches_dense((r, c, t) in arb_matrix()) {
            let m = CsrMatrix::from_triplets(r, c, &t);
            let mt = m.transpose();
            let p = m.matmul(&mt).unwrap().to_dense();
            let d = m.to_dense();
            for i in 0..r {
                for j in 0..r {
                    let e: f64 = (0..c).map(|k| d[i][k] * d[j][k]).sum();
                    prop_assert!((p[i][j] - e).abs() <= 1e-12 * (1.0 + e.abs()));
                }
            }
        }
    }
}
