//! Sparse matrices over `Q(i)` and exact Gauss–Jordan elimination.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::coeff::GaussianRational;

/// A sparse vector: `(index, nonzero value)` pairs sorted by index.
pub type SparseRow = Vec<(usize, GaussianRational)>;

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    columns: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, columns: vec![Vec::new(); ncols] }
    }

    /// Columns must hold sorted, in-range row indices with nonzero values.
    pub fn from_columns(nrows: usize, columns: Vec<SparseRow>) -> Self {
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)
            && c.iter().all(|(i, v)| *i < nrows && !v.is_zero())));
        SparseMatrix { nrows, ncols: columns.len(), columns }
    }

    pub fn from_rows(ncols: usize, rows: &[SparseRow]) -> Self {
        let mut columns = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row {
                columns[*j].push((i, v.clone()));
            }
        }
        SparseMatrix { nrows: rows.len(), ncols, columns }
    }

    /// Dense convenience constructor (row-major).
    pub fn from_dense(rows: &[Vec<GaussianRational>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let sparse: Vec<SparseRow> = rows
            .iter()
            .map(|r| r.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self::from_rows(ncols, &sparse)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn column(&self, j: usize) -> &SparseRow {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseRow] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn rows(&self) -> Vec<SparseRow> {
        let mut rows = vec![Vec::new(); self.nrows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                rows[*i].push((j, v.clone()));
            }
        }
        rows
    }

    pub fn get(&self, i: usize, j: usize) -> GaussianRational {
        match self.columns[j].binary_search_by_key(&i, |(r, _)| *r) {
            Ok(k) => self.columns[j][k].1.clone(),
            Err(_) => GaussianRational::zero(),
        }
    }

    /// `self * rhs`, or `None` on a shape mismatch.
    pub fn mul(&self, rhs: &SparseMatrix) -> Option<SparseMatrix> {
        if self.ncols != rhs.nrows {
            return None;
        }
        let columns = rhs
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, GaussianRational> = BTreeMap::new();
                for (k, x) in col {
                    for (i, y) in &self.columns[*k] {
                        let e = acc.entry(*i).or_insert_with(GaussianRational::zero);
                        *e += &(y * x);
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Some(SparseMatrix { nrows: self.nrows, ncols: rhs.ncols, columns })
    }
}

/// `a - f * b` for sparse rows.
pub(crate) fn axpy(a: &SparseRow, f: &GaussianRational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map(|e| e.0);
        let kb = b.get(j).map(|e| e.0);
        match (ka, kb) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 - &(f * &b[j].1);
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(f * &b[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn lookup(row: &SparseRow, col: usize) -> Option<&GaussianRational> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| &row[k].1)
}

/// Reduced row-echelon form, built incrementally.
///
/// Rows are kept fully reduced at all times: every stored row has a leading
/// one at its pivot and zeros in every other pivot column. The result is the
/// unique RREF of the inserted rows, independent of insertion order.
#[derive(Clone, Debug, Default)]
pub struct Rref {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl Rref {
    pub fn new(ncols: usize) -> Self {
        Rref { ncols, rows: BTreeMap::new() }
    }

    pub fn from_rows(ncols: usize, rows: impl IntoIterator<Item = SparseRow>) -> Self {
        let mut r = Self::new(ncols);
        for row in rows {
            r.insert(row);
        }
        r
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Nonzero rows ordered by pivot.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseRow)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    pub fn row_with_pivot(&self, col: usize) -> Option<&SparseRow> {
        self.rows.get(&col)
    }

    /// The part of `row` left after eliminating every pivot column.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut out = row.clone();
        for (c, v) in row {
            if let Some(prow) = self.rows.get(c) {
                out = axpy(&out, v, prow);
            }
        }
        out
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Adds a row; returns the new pivot column if the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> Option<usize> {
        let residual = self.reduce(&row);
        let (pivot, lead) = residual.first().cloned()?;
        let inv = lead.inv().expect("leading entry is nonzero");
        let normalized: SparseRow = residual.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        for prow in self.rows.values_mut() {
            if let Some(f) = lookup(prow, pivot).cloned() {
                *prow = axpy(prow, &f, &normalized);
            }
        }
        self.rows.insert(pivot, normalized);
        Some(pivot)
    }

    /// Basis of the null space `{x : A x = 0}` of the reduced matrix: one
    /// vector per free column, with a one there and `-R[i][free]` at each
    /// pivot.
    pub fn nullspace(&self) -> Vec<SparseRow> {
        let mut by_col: BTreeMap<usize, Vec<(usize, GaussianRational)>> = BTreeMap::new();
        for (&pivot, row) in &self.rows {
            for (c, v) in row.iter().skip(1) {
                by_col.entry(*c).or_default().push((pivot, -v));
            }
        }
        (0..self.ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|free| {
                let mut v = by_col.remove(&free).unwrap_or_default();
                v.push((free, GaussianRational::from(1)));
                v.sort_by_key(|(c, _)| *c);
                v
            })
            .collect()
    }

    pub fn to_matrix(&self) -> SparseMatrix {
        let rows: Vec<SparseRow> = self.rows.values().cloned().collect();
        SparseMatrix::from_rows(self.ncols, &rows)
    }
}

/// RREF of the rows of `m`.
pub fn rref(m: &SparseMatrix) -> Rref {
    Rref::from_rows(m.ncols(), m.rows())
}
