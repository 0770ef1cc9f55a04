use num::Zero;
use std::fmt;

use super::rational::{format_q, q, Q};
use super::vector::SparseVec;
use crate::error::{dim_err, Result};

/// Exact sparse matrix over the rationals, stored by columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, columns: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn scalar(n: usize, a: &Q) -> Self {
        SparseMatrix { rows: n, cols: n, columns: (0..n).map(|i| SparseVec::unit(i).scaled(a)).collect() }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, Q)>) -> Result<Self> {
        let mut per_col: Vec<Vec<(usize, Q)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return dim_err(format!("entry ({r},{c}) outside {rows}x{cols}"));
            }
            per_col[c].push((r, v));
        }
        Ok(SparseMatrix { rows, cols, columns: per_col.into_iter().map(SparseVec::from_pairs).collect() })
    }

    /// Builds from columns; each column must fit in `rows`.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().map_or(true, |i| i < rows)));
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    /// Dense integer constructor, row-major; convenient in tests.
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let trip = rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, q(*v))));
        SparseMatrix::from_triplets(r, c, trip).expect("rectangular input")
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

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.columns[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn triplets(&self) -> Vec<(usize, usize, Q)> {
        let mut out: Vec<(usize, usize, Q)> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v.clone())))
            .collect();
        out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.cols]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.iter() {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, v) in x.iter() {
            out.axpy(v, &self.columns[*j]);
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return dim_err(format!("product of {:?} and {:?}", self.shape(), other.shape()));
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|c| self.mul_vec(c)).collect(),
        })
    }

    /// Product for callers that already guarantee compatible shapes.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        self.mul(other).expect("composable shapes")
    }

    fn zip(&self, other: &SparseMatrix, a: &Q) -> Result<SparseMatrix> {
        if self.shape() != other.shape() {
            return dim_err(format!("sum of {:?} and {:?}", self.shape(), other.shape()));
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(x, y)| {
                let mut z = x.clone();
                z.axpy(a, y);
                z
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, columns })
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.zip(other, &q(1))
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.zip(other, &q(-1))
    }

    pub fn plus(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(other).expect("equal shapes")
    }

    pub fn minus(&self, other: &SparseMatrix) -> SparseMatrix {
        self.sub(other).expect("equal shapes")
    }

    pub fn scaled(&self, a: &Q) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols, columns: self.columns.iter().map(|c| c.scaled(a)).collect() }
    }

    pub fn neg(&self) -> SparseMatrix {
        self.scaled(&q(-1))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let trip = self.triplets().into_iter().map(|(i, j, v)| (j, i, v));
        SparseMatrix::from_triplets(self.cols, self.rows, trip).expect("in range")
    }

    /// Keeps the listed rows (in the given order) and columns.
    pub fn submatrix(&self, row_sel: &[usize], col_sel: &[usize]) -> SparseMatrix {
        let mut row_map = vec![usize::MAX; self.rows];
        for (k, r) in row_sel.iter().enumerate() {
            row_map[*r] = k;
        }
        let columns = col_sel
            .iter()
            .map(|j| self.columns[*j].filter_map_indices(|i| (row_map[i] != usize::MAX).then(|| row_map[i])))
            .collect();
        SparseMatrix { rows: row_sel.len(), cols: col_sel.len(), columns }
    }

    /// Assembles a block matrix. `blocks[i][j]` may be `None` for a zero block;
    /// `row_dims` and `col_dims` fix the block sizes.
    pub fn block(row_dims: &[usize], col_dims: &[usize], blocks: &[Vec<Option<&SparseMatrix>>]) -> Result<SparseMatrix> {
        let row_off: Vec<usize> = offsets(row_dims);
        let col_off: Vec<usize> = offsets(col_dims);
        let rows: usize = row_dims.iter().sum();
        let cols: usize = col_dims.iter().sum();
        let mut columns = vec![SparseVec::new(); cols];
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, blk) in row.iter().enumerate() {
                let Some(m) = blk else { continue };
                if m.shape() != (row_dims[bi], col_dims[bj]) {
                    return dim_err(format!(
                        "block ({bi},{bj}) has shape {:?}, expected {:?}",
                        m.shape(),
                        (row_dims[bi], col_dims[bj])
                    ));
                }
                for (j, c) in m.columns.iter().enumerate() {
                    let tgt = &mut columns[col_off[bj] + j];
                    *tgt = tgt.add(&c.shifted(row_off[bi]));
                }
            }
        }
        Ok(SparseMatrix { rows, cols, columns })
    }

    pub fn direct_sum(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
        SparseMatrix::block(&[a.rows, b.rows], &[a.cols, b.cols], &[vec![Some(a), None], vec![None, Some(b)]])
            .expect("consistent blocks")
    }

    pub fn hstack(parts: &[&SparseMatrix]) -> Result<SparseMatrix> {
        let rows = parts.first().map_or(0, |m| m.rows);
        let mut columns = Vec::new();
        for m in parts {
            if m.rows != rows {
                return dim_err("hstack with differing row counts");
            }
            columns.extend(m.columns.iter().cloned());
        }
        Ok(SparseMatrix { rows, cols: columns.len(), columns })
    }

    pub fn vstack(parts: &[&SparseMatrix]) -> Result<SparseMatrix> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != cols) {
            return dim_err("vstack with differing column counts");
        }
        let row_dims: Vec<usize> = parts.iter().map(|m| m.rows).collect();
        let blocks: Vec<Vec<Option<&SparseMatrix>>> = parts.iter().map(|m| vec![Some(*m)]).collect();
        SparseMatrix::block(&row_dims, &[cols], &blocks)
    }
}

pub(crate) fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    dims.iter()
        .map(|d| {
            let o = acc;
            acc += d;
            o
        })
        .collect()
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{}", self.rows, self.cols)?;
        if self.rows * self.cols <= 64 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(format_q).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        } else {
            for (i, j, v) in self.triplets() {
                writeln!(f, "  ({i},{j}) = {}", format_q(&v))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_rows_i64(&[vec![1, 2], vec![0, 1], vec![3, 0]]);
        let b = SparseMatrix::from_rows_i64(&[vec![1, 0, 1], vec![1, 1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, SparseMatrix::from_rows_i64(&[vec![3, 2, 1], vec![1, 1, 0], vec![3, 0, 3]]));
        assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()).unwrap());
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn blocks() {
        let i = SparseMatrix::identity(2);
        let z = SparseMatrix::from_rows_i64(&[vec![5], vec![6]]);
        let m = SparseMatrix::block(&[2], &[2, 1], &[vec![Some(&i), Some(&z)]]).unwrap();
        assert_eq!(m, SparseMatrix::from_rows_i64(&[vec![1, 0, 5], vec![0, 1, 6]]));
        assert_eq!(m.submatrix(&[1], &[2, 0]), SparseMatrix::from_rows_i64(&[vec![6, 0]]));
    }
}
