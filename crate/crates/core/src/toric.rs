//! Hermitian coefficient data for toric Poisson structures.
//!
//! A real toric Poisson structure of type (1,1) reads
//! `-2i Σ B_pq z_p z̄_q ∂_{z_p} ^ ∂_{z̄_q}` in a chart, for a Hermitian matrix
//! `B`. After complexifying (`z̄_k -> w_k`) the constant `-2i` only rescales
//! the differential and does not change cohomology, so it is omitted here.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::GaussianRational;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::schouten::PoissonBivector;

/// The coefficient matrix `B`, with cached Hermitian flag and determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    entries: DenseMatrix,
    hermitian: bool,
    det: GaussianRational,
}

impl HermitianForm {
    /// Rejects matrices with `B_qp != conj(B_pq)`.
    pub fn new(entries: DenseMatrix) -> Result<Self> {
        let form = Self::raw(entries);
        if !form.hermitian {
            return Err(Error::NotHermitian);
        }
        Ok(form)
    }

    /// Accepts any square matrix; check [`HermitianForm::is_hermitian`]
    /// before relying on reality of `pi_B`.
    pub fn raw(entries: DenseMatrix) -> Self {
        let hermitian = entries.is_hermitian();
        let det = entries.determinant();
        HermitianForm { entries, hermitian, det }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(DenseMatrix::parse(text)?)
    }

    pub fn n(&self) -> usize {
        self.entries.n()
    }

    pub fn entries(&self) -> &DenseMatrix {
        &self.entries
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.is_symmetric()
    }

    pub fn determinant(&self) -> &GaussianRational {
        &self.det
    }

    pub fn is_invertible(&self) -> bool {
        !self.det.is_zero()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::raw(self.entries.scale(c))
    }
}

impl fmt::Display for HermitianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.entries.fmt(f)
    }
}

pub fn build_pi(b: &HermitianForm) -> PoissonBivector {
    PoissonBivector::new(b.entries.clone())
}

/// `B' = P* B P` for a unimodular integer matrix `P` (a change of lattice
/// basis).
pub fn congruence_transform(b: &HermitianForm, p: &[Vec<i64>]) -> Result<HermitianForm> {
    let rows: Vec<&[i64]> = p.iter().map(Vec::as_slice).collect();
    let pm = DenseMatrix::from_ints(&rows)?;
    if pm.n() != b.n() {
        return Err(Error::Dimension(format!("P is {}x{}, B is {}x{}", pm.n(), pm.n(), b.n(), b.n())));
    }
    let det = pm.determinant();
    if !(det.is_one() || (-&det).is_one()) {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    let out = pm.conj_transpose().mul(&b.entries)?.mul(&pm)?;
    Ok(HermitianForm::raw(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hamiltonicity {
    /// Every exponent is a rational integer: the momentum map is a single
    /// valued map to the torus.
    SingleValuedTorusValued,
    /// Real rational exponents: single valued into a finite quotient.
    FiniteQuotientValued,
    /// Some exponent has a nonzero imaginary part. This reading of the
    /// rationality condition is an interpretation.
    NotHamiltonian,
}

impl fmt::Display for Hamiltonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hamiltonicity::SingleValuedTorusValued => "single_valued_torus_valued",
            Hamiltonicity::FiniteQuotientValued => "finite_quotient_valued",
            Hamiltonicity::NotHamiltonian => "not_hamiltonian",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianClass {
    /// `conj(B^{-1})`: the exponents of the group-valued momentum map.
    pub exponent_matrix: DenseMatrix,
    pub classification: Hamiltonicity,
}

pub fn hamiltonian_classify(b: &HermitianForm) -> Result<HamiltonianClass> {
    if !b.is_invertible() {
        return Err(Error::Singular);
    }
    let exponent_matrix = b.entries.inverse()?.conj();
    let n = b.n();
    let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    let classification = if entries.clone().all(|(i, j)| exponent_matrix.get(i, j).is_integer()) {
        Hamiltonicity::SingleValuedTorusValued
    } else if entries.clone().all(|(i, j)| exponent_matrix.get(i, j).is_real()) {
        Hamiltonicity::FiniteQuotientValued
    } else {
        Hamiltonicity::NotHamiltonian
    };
    Ok(HamiltonianClass { exponent_matrix, classification })
}

pub const PRESET_NAMES: [&str; 6] = ["nakanishi", "p1xp1", "p2", "hirzebruch1", "hirzebruch2", "hirzebruch3"];

/// Chart matrices for `C^2` (`[1]`), `CP^1 x CP^1`, `CP^2` and the
/// Hirzebruch surfaces `X_m`, `m = 1, 2, 3`.
pub fn preset(name: &str) -> Result<HermitianForm> {
    let rows: Vec<Vec<i64>> = match name {
        "nakanishi" => vec![vec![1]],
        "p1xp1" => vec![vec![1, 0], vec![0, 1]],
        "p2" => vec![vec![2, 1], vec![1, 2]],
        "hirzebruch1" | "hirzebruch2" | "hirzebruch3" => {
            let m: i64 = name["hirzebruch".len()..].parse().expect("digit suffix");
            vec![vec![2 + m * m, -m], vec![-m, 2]]
        }
        _ => {
            return Err(Error::UnknownPreset { name: name.to_string(), valid: PRESET_NAMES.join(", ") });
        }
    };
    let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    HermitianForm::new(DenseMatrix::from_ints(&rows)?)
}
