//! Polynomial multivector fields on `C^{2n}` with coordinates
//! `z_1..z_n, w_1..w_n`.
//!
//! Internally the `2n` coordinates are flattened to a single list
//! `zeta_0..zeta_{2n-1}` (z's first, then w's), both for monomial exponents and
//! for the coordinate vector fields spanning a wedge factor. Text output uses
//! 1-based names (`z1`, `dw2`, ...), or bare `z`, `w` when `n == 1`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::coeff::GaussianRational;
use crate::error::{Error, Result};

/// A monomial `z^alpha w^beta`, stored as the flattened exponent vector
/// `(alpha, beta)` of length `2n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(alpha: &[u32], beta: &[u32]) -> Result<Self> {
        if alpha.len() != beta.len() || alpha.is_empty() {
            return Err(Error::Dimension(format!(
                "alpha has {} entries, beta has {}",
                alpha.len(),
                beta.len()
            )));
        }
        let mut exps = alpha.to_vec();
        exps.extend_from_slice(beta);
        Ok(Monomial { exps })
    }

    /// Builds from the flattened exponent vector. The length must be even.
    pub fn from_zeta(exps: Vec<u32>) -> Self {
        debug_assert!(!exps.is_empty() && exps.len().is_multiple_of(2));
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; 2 * n] }
    }

    /// The coordinate `zeta_var` as a degree-1 monomial.
    pub fn variable(n: usize, var: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[var] = 1;
        m
    }

    pub fn n(&self) -> usize {
        self.exps.len() / 2
    }

    pub fn alpha(&self) -> &[u32] {
        &self.exps[..self.n()]
    }

    pub fn beta(&self) -> &[u32] {
        &self.exps[self.n()..]
    }

    pub fn zeta(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    /// `d/d zeta_var` of this monomial as `(multiplicity, monomial)`, or `None`
    /// when the variable does not occur.
    pub fn derivative(&self, var: usize) -> Option<(u32, Monomial)> {
        let e = self.exps[var];
        if e == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[var] -= 1;
        Some((e, Monomial { exps }))
    }

    fn write_text(&self, f: &mut impl fmt::Write) -> fmt::Result {
        let n = self.n();
        let mut first = true;
        for (var, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(&var_name(n, var))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Graded reverse-lex style order: lower degree first, then lexicographically
/// descending on the flattened exponents (so `z1^d` leads its degree).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("1");
        }
        self.write_text(f)
    }
}

fn var_name(n: usize, var: usize) -> String {
    let (letter, k) = if var < n { ('z', var + 1) } else { ('w', var - n + 1) };
    if n == 1 {
        letter.to_string()
    } else {
        format!("{letter}{k}")
    }
}

/// A strictly increasing set of coordinate indices naming the wedge product
/// `d_{zeta_i1} ^ d_{zeta_i2} ^ ...`. Stored as a bit set (at most 64
/// coordinates, i.e. `n <= 32`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct WedgeIndex(u64);

impl WedgeIndex {
    pub const EMPTY: WedgeIndex = WedgeIndex(0);

    /// From strictly increasing 0-based indices.
    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        let mut prev: Option<usize> = None;
        for &i in indices {
            if i >= 64 || prev.is_some_and(|p| p >= i) {
                return Err(Error::Dimension(format!(
                    "wedge indices must be strictly increasing and < 64: {indices:?}"
                )));
            }
            mask |= 1 << i;
            prev = Some(i);
        }
        Ok(WedgeIndex(mask))
    }

    pub fn single(i: usize) -> Self {
        WedgeIndex(1 << i)
    }

    pub fn from_mask(mask: u64) -> Self {
        WedgeIndex(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    /// 0-based position of `i` inside the increasing index list.
    pub fn position(self, i: usize) -> usize {
        (self.0 & ((1u64 << i) - 1)).count_ones() as usize
    }

    pub fn remove(self, i: usize) -> Self {
        WedgeIndex(self.0 & !(1 << i))
    }

    /// `self ^ other` as a signed basis element, or `None` if they overlap.
    /// The sign counts the transpositions needed to sort the concatenation.
    pub fn merge(self, other: WedgeIndex) -> Option<(bool, WedgeIndex)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        for t in other.indices() {
            inversions += (self.0 >> t).count_ones();
        }
        Some((inversions % 2 == 1, WedgeIndex(self.0 | other.0)))
    }

    fn write_text(self, n: usize, f: &mut impl fmt::Write) -> fmt::Result {
        for (pos, i) in self.indices().enumerate() {
            if pos > 0 {
                f.write_char('^')?;
            }
            write!(f, "d{}", var_name(n, i))?;
        }
        Ok(())
    }
}

/// Shorter sets first; equal sizes compare lexicographically on the
/// increasing index lists.
impl Ord for WedgeIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for WedgeIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type TermKey = (Monomial, WedgeIndex);

/// A sparse element of `R ⊗ ΛV`: nonzero coefficients keyed by
/// (monomial, wedge basis element).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiVector {
    n: usize,
    terms: BTreeMap<TermKey, GaussianRational>,
}

impl MultiVector {
    pub fn zero(n: usize) -> Self {
        MultiVector { n, terms: BTreeMap::new() }
    }

    pub fn term(monomial: Monomial, wedge: WedgeIndex, coeff: GaussianRational) -> Self {
        let mut mv = Self::zero(monomial.n());
        mv.add_term(monomial, wedge, coeff);
        mv
    }

    /// A basis element with coefficient one.
    pub fn basis(monomial: Monomial, wedge: WedgeIndex) -> Self {
        Self::term(monomial, wedge, GaussianRational::from(1))
    }

    /// The function `z^alpha w^beta` (wedge degree 0).
    pub fn monomial(alpha: &[u32], beta: &[u32]) -> Result<Self> {
        Ok(Self::basis(Monomial::new(alpha, beta)?, WedgeIndex::EMPTY))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, WedgeIndex, &GaussianRational)> {
        self.terms.iter().map(|((m, w), c)| (m, *w, c))
    }

    /// Flattened view: `(zeta exponents, wedge indices, coefficient)`.
    pub fn zeta_terms(&self) -> impl Iterator<Item = (&[u32], WedgeIndex, &GaussianRational)> {
        self.terms.iter().map(|((m, w), c)| (m.zeta(), *w, c))
    }

    pub fn coefficient(&self, monomial: &Monomial, wedge: WedgeIndex) -> GaussianRational {
        self.terms
            .get(&(monomial.clone(), wedge))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn add_term(&mut self, monomial: Monomial, wedge: WedgeIndex, coeff: GaussianRational) {
        debug_assert_eq!(monomial.n(), self.n);
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((monomial, wedge)) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_n(&self, other: &MultiVector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("n = {} vs n = {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiVector) -> Result<MultiVector> {
        self.check_n(other)?;
        let mut out = self.clone();
        for ((m, w), c) in &other.terms {
            out.add_term(m.clone(), *w, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiVector) -> Result<MultiVector> {
        self.add(&other.scale(&GaussianRational::from(-1)))
    }

    pub fn scale(&self, c: &GaussianRational) -> MultiVector {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        MultiVector {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Exterior product, bilinear over the polynomial coefficients.
    pub fn wedge(&self, other: &MultiVector) -> Result<MultiVector> {
        self.check_n(other)?;
        let mut out = Self::zero(self.n);
        for ((m1, w1), c1) in &self.terms {
            for ((m2, w2), c2) in &other.terms {
                if let Some((neg, w)) = w1.merge(*w2) {
                    let c = c1 * c2;
                    out.add_term(m1.mul(m2), w, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// The set of bigrades (homogeneous degree, wedge degree) present.
    pub fn grade(&self) -> BTreeSet<(u32, usize)> {
        self.terms.keys().map(|(m, w)| (m.degree(), w.degree())).collect()
    }

    /// Wedge degrees present.
    pub fn wedge_degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|(_, w)| w.degree()).collect()
    }

    /// Canonical text of every term, in canonical order.
    pub fn term_strings(&self) -> Vec<String> {
        self.terms.iter().map(|((m, w), c)| term_text(c, m, *w)).collect()
    }
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&self.term_strings().join(" + "))
    }
}

/// Term text: `coeff*monomial wedge`, e.g. `2*z1^2*w2^2 dz2^dw1`. Unit
/// coefficients and the constant monomial are elided where unambiguous.
pub fn term_text(coeff: &GaussianRational, monomial: &Monomial, wedge: WedgeIndex) -> String {
    let mut head = String::new();
    let has_mono = monomial.degree() > 0;
    let has_wedge = wedge.degree() > 0;
    let coeff_str = coeff.to_string();
    let needs_parens = !coeff.is_real() && !coeff.re().is_zero();
    if coeff.is_one() && (has_mono || has_wedge) {
    } else if coeff_str == "-1" && (has_mono || has_wedge) {
        head.push('-');
    } else {
        if needs_parens {
            head.push('(');
            head.push_str(&coeff_str);
            head.push(')');
        } else {
            head.push_str(&coeff_str);
        }
        if has_mono {
            head.push('*');
        }
    }
    if has_mono {
        monomial.write_text(&mut head).expect("writing to String");
    }
    if has_wedge {
        if !head.is_empty() && head != "-" {
            head.push(' ');
        }
        wedge.write_text(monomial.n(), &mut head).expect("writing to String");
    }
    head
}

/// `dim R_[d] ⊗ Λ^p V = C(d+2n-1, 2n-1) · C(2n, p)`; zero outside the valid
/// range.
pub fn cell_dimension(n: usize, d: i64, p: i64) -> usize {
    if d < 0 || p < 0 || p as usize > 2 * n {
        return 0;
    }
    let vars = 2 * n as u64;
    (binomial(d as u64 + vars - 1, vars - 1) * binomial(vars, p as u64)) as usize
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// All monomials of total degree `d` in `2n` variables, lexicographically
/// descending on the flattened exponents.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(rest: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if rest == 1 {
            prefix.push(d);
            out.push(Monomial { exps: prefix.clone() });
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(rest - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(2 * n, d, &mut Vec::with_capacity(2 * n), &mut out);
    out
}

/// All `p`-subsets of `{0..m}` in lexicographic order of their increasing
/// index lists.
pub fn subsets_of_size(m: usize, p: usize) -> Vec<WedgeIndex> {
    let mut out = Vec::new();
    if p > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..p).collect();
    loop {
        out.push(WedgeIndex::new(&idx).expect("increasing"));
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < m - p + i {
                idx[i] += 1;
                for j in i + 1..p {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The finite-dimensional space `R_[d] ⊗ Λ^p V` with its canonical basis:
/// ordered by monomial (descending lex), then wedge subset (lex).
#[derive(Clone, Debug)]
pub struct GradedCell {
    pub n: usize,
    pub d: i64,
    pub p: i64,
    basis: Vec<TermKey>,
    index: HashMap<TermKey, usize>,
}

impl GradedCell {
    pub fn enumerate(n: usize, d: i64, p: i64) -> Self {
        let mut basis = Vec::new();
        if cell_dimension(n, d, p) > 0 {
            let subsets = subsets_of_size(2 * n, p as usize);
            for m in monomials_of_degree(n, d as u32) {
                for &s in &subsets {
                    basis.push((m.clone(), s));
                }
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        GradedCell { n, d, p, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[TermKey] {
        &self.basis
    }

    pub fn basis_vector(&self, i: usize) -> MultiVector {
        let (m, w) = &self.basis[i];
        MultiVector::basis(m.clone(), *w)
    }

    pub fn position(&self, key: &TermKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Sparse coordinates of `mv` in this basis, sorted by index.
    pub fn coordinates(&self, mv: &MultiVector) -> Result<Vec<(usize, GaussianRational)>> {
        let mut out = Vec::with_capacity(mv.len());
        for ((m, w), c) in &mv.terms {
            let i = self.position(&(m.clone(), *w)).ok_or_else(|| {
                Error::Grading(format!(
                    "term {} is not in cell (d={}, p={})",
                    term_text(c, m, *w),
                    self.d,
                    self.p
                ))
            })?;
            out.push((i, c.clone()));
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    /// The multivector with the given sparse coordinates.
    pub fn assemble<'a>(&self, coords: impl IntoIterator<Item = (usize, &'a GaussianRational)>) -> MultiVector {
        let mut mv = MultiVector::zero(self.n);
        for (i, c) in coords {
            let (m, w) = &self.basis[i];
            mv.add_term(m.clone(), *w, c.clone());
        }
        mv
    }
}

pub fn enumerate_cell(n: usize, d: i64, p: i64) -> GradedCell {
    GradedCell::enumerate(n, d, p)
}

/// Splits a wedge-degree-1 field by `lambda = mu - e_k`, where `mu` is the
/// flattened exponent of the term and `k` its single wedge index.
pub fn lambda_decompose(x: &MultiVector) -> Result<BTreeMap<Vec<i64>, MultiVector>> {
    let mut parts: BTreeMap<Vec<i64>, MultiVector> = BTreeMap::new();
    for (m, w, c) in x.terms() {
        if w.degree() != 1 {
            return Err(Error::Grading(format!(
                "lambda decomposition needs wedge degree 1, found {}",
                w.degree()
            )));
        }
        let k = w.indices().next().expect("degree 1");
        let mut lambda: Vec<i64> = m.zeta().iter().map(|&e| e as i64).collect();
        lambda[k] -= 1;
        parts
            .entry(lambda)
            .or_insert_with(|| MultiVector::zero(x.n()))
            .add_term(m.clone(), w, c.clone());
    }
    Ok(parts)
}
