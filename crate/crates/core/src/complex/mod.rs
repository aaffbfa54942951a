//! The bigraded complex `(R_[d] ⊗ Λ^p V, sigma)` and its cohomology.
//!
//! Each differential `sigma^p_[d]: (d, p) -> (d+1, p+1)` becomes a sparse
//! matrix in the canonical cell bases. Dimensions come from rank and nullity;
//! representatives come from stacking an RREF basis of the incoming image on
//! top of a null-space basis and reducing once more.

mod classify;
pub mod sparse;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::GaussianRational;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::exterior::{cell_dimension, GradedCell, MultiVector};
use crate::schouten::{sigma, PoissonBivector};

pub use classify::{classify_generator, GeneratorType};
pub use sparse::{rref, Rref, SparseMatrix, SparseRow};

/// Matrix of `sigma^p_[d]` in the canonical bases of its two cells.
#[derive(Clone, Debug)]
pub struct SigmaMatrix {
    pub domain: GradedCell,
    pub codomain: GradedCell,
    pub matrix: SparseMatrix,
}

impl SigmaMatrix {
    pub fn shape(&self) -> (usize, usize) {
        self.matrix.shape()
    }
}

/// Column `j` holds the coordinates of `sigma(domain.basis[j])`. Cells with
/// `d < 0`, `p < 0` or `p > 2n` are zero spaces.
pub fn assemble_sigma_matrix(n: usize, d: i64, p: i64, pi: &PoissonBivector) -> Result<SigmaMatrix> {
    if pi.n() != n {
        return Err(Error::Dimension(format!("pi_B has n = {}, requested n = {n}", pi.n())));
    }
    let domain = GradedCell::enumerate(n, d, p);
    let codomain = GradedCell::enumerate(n, d + 1, p + 1);
    let columns = (0..domain.dim())
        .map(|j| codomain.coordinates(&sigma(&domain.basis_vector(j), pi)?))
        .collect::<Result<Vec<_>>>()?;
    let matrix = SparseMatrix::from_columns(codomain.dim(), columns);
    Ok(SigmaMatrix { domain, codomain, matrix })
}

/// Rank of `sigma^p_[d]` (zero for degenerate cells).
pub fn sigma_rank(n: usize, d: i64, p: i64, pi: &PoissonBivector) -> Result<usize> {
    if cell_dimension(n, d, p) == 0 {
        return Ok(0);
    }
    Ok(rref(&assemble_sigma_matrix(n, d, p, pi)?.matrix).rank())
}

/// `dim H^p_[d] = nullity(sigma^p_[d]) - rank(sigma^{p-1}_[d-1])`.
pub fn cohomology_dim(n: usize, d: i64, p: i64, pi: &PoissonBivector) -> Result<usize> {
    let cols = cell_dimension(n, d, p);
    let nullity = cols - sigma_rank(n, d, p, pi)?;
    let incoming = sigma_rank(n, d - 1, p - 1, pi)?;
    nullity.checked_sub(incoming).ok_or_else(|| {
        Error::Invariant(format!(
            "image of rank {incoming} exceeds kernel of dimension {nullity} at (d={d}, p={p})"
        ))
    })
}

/// Everything produced while extracting representatives for one cell.
#[derive(Clone, Debug)]
pub struct CellCohomology {
    pub cell: GradedCell,
    /// RREF basis of `im sigma^{p-1}_[d-1]` in this cell's coordinates.
    pub image: Rref,
    /// Null-space basis of `sigma^p_[d]`, one vector per free column.
    pub kernel: Vec<SparseRow>,
    /// RREF of the image rows stacked over the kernel rows.
    pub stacked: Rref,
    /// Stacked rows whose pivot is not an image pivot, in pivot order.
    pub representatives: Vec<SparseRow>,
}

impl CellCohomology {
    pub fn compute(n: usize, d: i64, p: i64, pi: &PoissonBivector) -> Result<Self> {
        let outgoing = assemble_sigma_matrix(n, d, p, pi)?;
        let cell = outgoing.domain.clone();
        let dim = cell.dim();

        // image basis: the column space of the incoming map
        let incoming = assemble_sigma_matrix(n, d - 1, p - 1, pi)?;
        let image = Rref::from_rows(dim, incoming.matrix.columns().iter().cloned());

        let kernel = rref(&outgoing.matrix).nullspace();

        let mut stacked = Rref::new(dim);
        for row in image.rows().map(|(_, r)| r.clone()).chain(kernel.iter().cloned()) {
            stacked.insert(row);
        }
        if stacked.rank() != kernel.len() {
            return Err(Error::Invariant(format!(
                "image is not contained in the kernel at (d={d}, p={p}): rank {} vs nullity {}",
                stacked.rank(),
                kernel.len()
            )));
        }
        if image.pivots().iter().any(|c| !stacked.is_pivot(*c)) {
            return Err(Error::Invariant(format!("image pivots lost in stacked reduction at (d={d}, p={p})")));
        }
        let representatives: Vec<SparseRow> = stacked
            .rows()
            .filter(|(pivot, _)| !image.is_pivot(*pivot))
            .map(|(_, r)| r.clone())
            .collect();
        debug_assert_eq!(representatives.len(), kernel.len() - image.rank());
        Ok(CellCohomology { cell, image, kernel, stacked, representatives })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representative_fields(&self) -> Vec<MultiVector> {
        self.representatives
            .iter()
            .map(|r| self.cell.assemble(r.iter().map(|(i, c)| (*i, c))))
            .collect()
    }

    /// Whether `v` is a coboundary.
    pub fn is_exact(&self, v: &MultiVector) -> Result<bool> {
        Ok(self.image.contains(&self.cell.coordinates(v)?))
    }

    /// Coordinates of the class of `v` in the representative basis, or `None`
    /// when `v` is not a cocycle.
    pub fn class_coordinates(&self, v: &MultiVector) -> Result<Option<Vec<GaussianRational>>> {
        let residual = self.image.reduce(&self.cell.coordinates(v)?);
        let mut remaining = residual.clone();
        let mut coords = Vec::with_capacity(self.representatives.len());
        for rep in &self.representatives {
            let pivot = rep[0].0;
            let c = residual
                .binary_search_by_key(&pivot, |(k, _)| *k)
                .map(|k| residual[k].1.clone())
                .unwrap_or_default();
            if !c.is_zero() {
                remaining = sparse::axpy(&remaining, &c, rep);
            }
            coords.push(c);
        }
        Ok(remaining.is_empty().then_some(coords))
    }

    /// Whether `targets` span the same subspace of cohomology as the
    /// representatives.
    pub fn spans_same_classes(&self, targets: &[MultiVector]) -> Result<bool> {
        let mut with_targets = self.image.clone();
        for t in targets {
            let coords = self.cell.coordinates(t)?;
            if self.class_coordinates(t)?.is_none() {
                return Ok(false);
            }
            with_targets.insert(coords);
        }
        Ok(with_targets.rank() == self.stacked.rank())
    }
}

/// Basis representatives of `H^p_[d]`, each scaled so its leading
/// canonical coefficient is one.
pub fn cohomology_representatives(n: usize, d: i64, p: i64, pi: &PoissonBivector) -> Result<Vec<MultiVector>> {
    Ok(CellCohomology::compute(n, d, p, pi)?.representative_fields())
}

/// `sigma^{p+1}_[d+1] ∘ sigma^p_[d] = 0` as an exact matrix product.
pub fn sigma_squared_vanishes(n: usize, d: i64, p: i64, pi: &PoissonBivector) -> Result<bool> {
    let first = assemble_sigma_matrix(n, d, p, pi)?;
    let second = assemble_sigma_matrix(n, d + 1, p + 1, pi)?;
    let product = second
        .matrix
        .mul(&first.matrix)
        .ok_or_else(|| Error::Invariant("sigma matrices do not compose".into()))?;
    Ok(product.is_zero())
}

#[derive(Clone, Debug, Default)]
pub struct TableOptions {
    pub representatives: bool,
    pub classify: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub d: i64,
    pub p: i64,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub types: Option<Vec<GeneratorType>>,
    #[serde(skip)]
    pub fields: Option<Vec<MultiVector>>,
}

/// Dimensions of `H^p_[d]` for `0 <= d <= dmax`, `0 <= p <= 2n`, plus
/// representatives and their types when requested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologySummary {
    pub n: usize,
    pub b: DenseMatrix,
    pub dmax: i64,
    /// Row-major over `(d, p)`.
    pub cells: Vec<CellRecord>,
}

impl CohomologySummary {
    pub fn dim(&self, d: i64, p: i64) -> usize {
        if d < 0 || d > self.dmax || p < 0 || p > 2 * self.n as i64 {
            return 0;
        }
        self.cells[(d as usize) * (2 * self.n + 1) + p as usize].dim
    }

    pub fn cell(&self, d: i64, p: i64) -> &CellRecord {
        &self.cells[(d as usize) * (2 * self.n + 1) + p as usize]
    }

    /// Rows of dimensions, `grid()[d][p]`.
    pub fn grid(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(2 * self.n + 1).map(|row| row.iter().map(|c| c.dim).collect()).collect()
    }

    /// `H^p_[d]` for `d = 0..=dmax`.
    pub fn column(&self, p: i64) -> Vec<usize> {
        (0..=self.dmax).map(|d| self.dim(d, p)).collect()
    }
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Computes the table of cohomology dimensions. Cells are evaluated in
/// parallel; the result does not depend on scheduling.
pub fn full_table(pi: &PoissonBivector, dmax: i64, opts: &TableOptions) -> Result<CohomologySummary> {
    let n = pi.n();
    let top = 2 * n as i64;
    let keys: Vec<(i64, i64)> = (0..=dmax).flat_map(|d| (0..=top).map(move |p| (d, p))).collect();

    let cells = in_pool(opts.jobs, || -> Result<Vec<CellRecord>> {
        if opts.representatives || opts.classify {
            keys.par_iter()
                .map(|&(d, p)| {
                    let coh = CellCohomology::compute(n, d, p, pi)?;
                    let fields = coh.representative_fields();
                    let types = opts.classify.then(|| fields.iter().map(classify_generator).collect());
                    Ok(CellRecord {
                        d,
                        p,
                        dim: coh.dim(),
                        representatives: Some(fields.iter().map(MultiVector::term_strings).collect()),
                        types,
                        fields: Some(fields),
                    })
                })
                .collect()
        } else {
            // ranks of every outgoing map; incoming ranks are read off the
            // (d-1, p-1) entry
            let ranks: Vec<usize> = keys
                .par_iter()
                .map(|&(d, p)| sigma_rank(n, d, p, pi))
                .collect::<Result<_>>()?;
            let rank_at = |d: i64, p: i64| -> usize {
                if d < 0 || p < 0 {
                    0
                } else {
                    ranks[(d as usize) * (top as usize + 1) + p as usize]
                }
            };
            keys.iter()
                .map(|&(d, p)| {
                    let nullity = cell_dimension(n, d, p) - rank_at(d, p);
                    let dim = nullity.checked_sub(rank_at(d - 1, p - 1)).ok_or_else(|| {
                        Error::Invariant(format!("image exceeds kernel at (d={d}, p={p})"))
                    })?;
                    Ok(CellRecord { d, p, dim, representatives: None, types: None, fields: None })
                })
                .collect()
        }
    })??;
    Ok(CohomologySummary { n, b: pi.matrix().clone(), dmax, cells })
}

/// Checks `Σ_p (-1)^p dim C^{(s+p, p)} = Σ_p (-1)^p dim H^p_[s+p]` for the
/// shifted subcomplex starting at degree `s`. Returns both sides.
pub fn euler_characteristic(n: usize, shift: i64, pi: &PoissonBivector) -> Result<(i64, i64)> {
    let mut chain = 0i64;
    let mut homology = 0i64;
    for p in 0..=2 * n as i64 {
        let sign = if p % 2 == 0 { 1 } else { -1 };
        chain += sign * cell_dimension(n, shift + p, p) as i64;
        if shift + p >= 0 {
            homology += sign * cohomology_dim(n, shift + p, p, pi)? as i64;
        }
    }
    Ok((chain, homology))
}
