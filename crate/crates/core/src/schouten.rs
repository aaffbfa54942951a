//! The Schouten–Nijenhuis bracket and the Poisson differential
//! `sigma(Y) = [Y, pi_B]`.
//!
//! The bracket is computed term by term. Writing a basis term as
//! `f θ_S` with `θ_a` standing for `∂/∂ζ_a`,
//!
//! ```text
//! [f θ_S, g θ_T] = Σ_{a∈S} (θ_S ∂⃖θ_a) ∂_a g θ_T · f
//!                - Σ_{a∈T} ∂_a f · g θ_S (∂⃗θ_a θ_T)
//! ```
//!
//! with a right derivative in the odd variables on the left argument and a
//! left derivative on the right argument. This is the convention with
//! `[X, f] = X(f)`, graded antisymmetry
//! `[X, Y] = -(-1)^{(p-1)(q-1)} [Y, X]` and the graded Leibniz rule
//! `[X, Y ^ Z] = [X, Y] ^ Z + (-1)^{(p-1)q} Y ^ [X, Z]`; with it, `sigma`
//! agrees term for term with the closed forms below.

use num_traits::Zero;

use crate::coeff::GaussianRational;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::exterior::{Monomial, MultiVector, WedgeIndex};

/// `pi_B = Σ_{p,q} B_pq z_p w_q ∂_{z_p} ^ ∂_{w_q}` together with its
/// coefficient matrix.
#[derive(Clone, Debug)]
pub struct PoissonBivector {
    b: DenseMatrix,
    bivector: MultiVector,
}

impl PoissonBivector {
    /// Any square matrix is accepted; whether it is Hermitian is the caller's
    /// concern (see `toric::HermitianForm`).
    pub fn new(b: DenseMatrix) -> Self {
        let n = b.n();
        let mut bivector = MultiVector::zero(n);
        for p in 0..n {
            for q in 0..n {
                let mut m = Monomial::one(n);
                m = m.mul(&Monomial::variable(n, p)).mul(&Monomial::variable(n, n + q));
                let w = WedgeIndex::new(&[p, n + q]).expect("p < n + q");
                bivector.add_term(m, w, b.get(p, q).clone());
            }
        }
        PoissonBivector { b, bivector }
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.b
    }

    pub fn bivector(&self) -> &MultiVector {
        &self.bivector
    }

    /// `B_p · v`, with `B_p` the p-th row.
    fn row_dot(&self, p: usize, v: &[i64]) -> GaussianRational {
        dot((0..self.n()).map(|q| self.b.get(p, q)), v)
    }

    /// `B_q · v`, with `B_q` the q-th column.
    fn col_dot(&self, q: usize, v: &[i64]) -> GaussianRational {
        dot((0..self.n()).map(|p| self.b.get(p, q)), v)
    }

    /// `Σ_p (B_p·b) z_p ∂_{z_p} - Σ_q (B_q·a) w_q ∂_{w_q}`.
    fn euler_combination(&self, a: &[i64], b: &[i64]) -> MultiVector {
        let n = self.n();
        let mut out = MultiVector::zero(n);
        for p in 0..n {
            out.add_term(Monomial::variable(n, p), WedgeIndex::single(p), self.row_dot(p, b));
        }
        for q in 0..n {
            out.add_term(Monomial::variable(n, n + q), WedgeIndex::single(n + q), -self.col_dot(q, a));
        }
        out
    }
}

fn dot<'a>(row: impl Iterator<Item = &'a GaussianRational>, v: &[i64]) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (x, &k) in row.zip(v) {
        if k != 0 {
            acc += &x.scale_int(k);
        }
    }
    acc
}

fn signed(c: GaussianRational, negative: bool) -> GaussianRational {
    if negative {
        -c
    } else {
        c
    }
}

/// Bracket of two basis terms, accumulated into `out`.
fn bracket_terms(
    (f, s, cf): (&Monomial, WedgeIndex, &GaussianRational),
    (g, t, cg): (&Monomial, WedgeIndex, &GaussianRational),
    out: &mut MultiVector,
) {
    let coeff = cf * cg;
    let p = s.degree();
    for a in s.indices() {
        let Some((mult, dg)) = g.derivative(a) else { continue };
        let Some((merge_neg, w)) = s.remove(a).merge(t) else { continue };
        let right_neg = (p - 1 - s.position(a)) % 2 == 1;
        let c = coeff.scale_int(mult as i64);
        out.add_term(f.mul(&dg), w, signed(c, right_neg ^ merge_neg));
    }
    for a in t.indices() {
        let Some((mult, df)) = f.derivative(a) else { continue };
        let Some((merge_neg, w)) = s.merge(t.remove(a)) else { continue };
        let left_neg = t.position(a) % 2 == 1;
        let c = coeff.scale_int(mult as i64);
        // overall minus sign of the second sum
        out.add_term(df.mul(g), w, signed(c, !(left_neg ^ merge_neg)));
    }
}

/// The Schouten–Nijenhuis bracket `[X, Y]`.
pub fn schouten_bracket(x: &MultiVector, y: &MultiVector) -> Result<MultiVector> {
    if x.n() != y.n() {
        return Err(Error::Dimension(format!("n = {} vs n = {}", x.n(), y.n())));
    }
    let mut out = MultiVector::zero(x.n());
    for tx in x.terms() {
        for ty in y.terms() {
            bracket_terms(tx, ty, &mut out);
        }
    }
    Ok(out)
}

fn check_n(y: &MultiVector, pi: &PoissonBivector) -> Result<()> {
    if y.n() != pi.n() {
        return Err(Error::Dimension(format!("multivector has n = {}, pi_B has n = {}", y.n(), pi.n())));
    }
    Ok(())
}

/// `sigma(Y) = [Y, pi_B]`, using the closed forms for wedge degrees 0 and 1
/// and the generic bracket otherwise.
pub fn sigma(y: &MultiVector, pi: &PoissonBivector) -> Result<MultiVector> {
    check_n(y, pi)?;
    let n = pi.n();
    let mut out = MultiVector::zero(n);
    for (m, w, c) in y.terms() {
        let image = match w.degree() {
            0 => closed_sigma_monomial(m.alpha(), m.beta(), pi),
            1 => {
                let k = w.indices().next().expect("degree 1");
                let (side, k) = if k < n { (Side::Z, k) } else { (Side::W, k - n) };
                closed_sigma_vector(m.alpha(), m.beta(), k, side, pi)
            }
            _ => {
                let mut acc = MultiVector::zero(n);
                for t in pi.bivector().terms() {
                    bracket_terms((m, w, &GaussianRational::from(1)), t, &mut acc);
                }
                acc
            }
        };
        out = out.add(&image.scale(c))?;
    }
    Ok(out)
}

/// `sigma` computed only through the generic bracket.
pub fn sigma_generic(y: &MultiVector, pi: &PoissonBivector) -> Result<MultiVector> {
    check_n(y, pi)?;
    schouten_bracket(y, pi.bivector())
}

/// `sigma(z^alpha w^beta) = z^alpha w^beta (Σ_p (B_p·β) z_p∂_{z_p} - Σ_q (B_q·α) w_q∂_{w_q})`.
pub fn closed_sigma_monomial(alpha: &[u32], beta: &[u32], pi: &PoissonBivector) -> MultiVector {
    let a: Vec<i64> = alpha.iter().map(|&x| x as i64).collect();
    let b: Vec<i64> = beta.iter().map(|&x| x as i64).collect();
    let f = Monomial::new(alpha, beta).expect("exponent vectors of length n");
    MultiVector::basis(f, WedgeIndex::EMPTY)
        .wedge(&pi.euler_combination(&a, &b))
        .expect("same n")
}

/// Which coordinate family a vector field `∂_{z_k}` / `∂_{w_k}` points along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Z,
    W,
}

/// `sigma(z^alpha w^beta ∂_{z_k})` and its `∂_{w_k}` mirror, with `k` 0-based.
pub fn closed_sigma_vector(alpha: &[u32], beta: &[u32], k: usize, side: Side, pi: &PoissonBivector) -> MultiVector {
    let n = pi.n();
    let mut a: Vec<i64> = alpha.iter().map(|&x| x as i64).collect();
    let mut b: Vec<i64> = beta.iter().map(|&x| x as i64).collect();
    let var = match side {
        Side::Z => {
            a[k] -= 1;
            k
        }
        Side::W => {
            b[k] -= 1;
            n + k
        }
    };
    let y = MultiVector::basis(Monomial::new(alpha, beta).expect("length n"), WedgeIndex::single(var));
    y.wedge(&pi.euler_combination(&a, &b)).expect("same n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{enumerate_cell, cell_dimension};
    use proptest::prelude::*;

    fn mono(exps: &[u32]) -> Monomial {
        Monomial::from_zeta(exps.to_vec())
    }

    fn wi(ix: &[usize]) -> WedgeIndex {
        WedgeIndex::new(ix).unwrap()
    }

    fn bv(exps: &[u32], ix: &[usize]) -> MultiVector {
        MultiVector::basis(mono(exps), wi(ix))
    }

    fn c(k: i64) -> GaussianRational {
        GaussianRational::from(k)
    }

    fn pi(rows: &[&[i64]]) -> PoissonBivector {
        PoissonBivector::new(DenseMatrix::from_ints(rows).unwrap())
    }

    #[test]
    fn bracket_examples() {
        // commuting dilations
        let z_dz = bv(&[1, 0], &[0]);
        let w_dw = bv(&[0, 1], &[1]);
        assert!(schouten_bracket(&z_dz, &w_dw).unwrap().is_zero());
        // gl2 commutator
        let z_dw = bv(&[1, 0], &[1]);
        let w_dz = bv(&[0, 1], &[0]);
        let expected = z_dz.sub(&w_dw).unwrap();
        assert_eq!(schouten_bracket(&z_dw, &w_dz).unwrap(), expected);
        // [X, f] = X(f), [f, X] = -X(f)
        let f = bv(&[2, 1], &[]);
        let xf = schouten_bracket(&z_dz, &f).unwrap();
        assert_eq!(xf, bv(&[2, 1], &[]).scale(&c(2)));
        assert_eq!(schouten_bracket(&f, &z_dz).unwrap(), xf.scale(&c(-1)));
    }

    #[test]
    fn jacobi_for_presets() {
        for rows in [&[&[1i64][..]][..], &[&[2, 1], &[1, 2]], &[&[6, -2], &[-2, 2]], &[&[1, 5], &[-3, 7]]] {
            let pi = pi(rows);
            assert!(schouten_bracket(pi.bivector(), pi.bivector()).unwrap().is_zero());
        }
        let h = PoissonBivector::new(DenseMatrix::parse("2,1+i;1-i,3").unwrap());
        assert!(schouten_bracket(h.bivector(), h.bivector()).unwrap().is_zero());
    }

    #[test]
    fn sigma_examples() {
        let p = pi(&[&[1]]);
        let zw = bv(&[1, 1], &[]);
        let expected = bv(&[2, 1], &[0]).sub(&bv(&[1, 2], &[1])).unwrap();
        assert_eq!(sigma(&zw, &p).unwrap(), expected);
        assert_eq!(sigma_generic(&zw, &p).unwrap(), expected);
        assert!(sigma(&bv(&[0, 0], &[]), &p).unwrap().is_zero());
        assert!(sigma(&bv(&[1, 0], &[0]), &p).unwrap().is_zero());
        assert!(sigma_generic(&bv(&[1, 0], &[0]), &pi(&[&[7]])).unwrap().is_zero());
    }

    #[test]
    fn closed_monomial_examples() {
        let p1 = pi(&[&[1]]);
        assert!(closed_sigma_monomial(&[0], &[0], &p1).is_zero());
        assert_eq!(closed_sigma_monomial(&[2], &[0], &p1), bv(&[2, 1], &[1]).scale(&c(-2)));
        let p2 = pi(&[&[2, 1], &[1, 2]]);
        let expected = bv(&[1, 0, 1, 0], &[2]).scale(&c(-2)).sub(&bv(&[1, 0, 0, 1], &[3])).unwrap();
        assert_eq!(closed_sigma_monomial(&[1, 0], &[0, 0], &p2), expected);
    }

    #[test]
    fn closed_vector_examples() {
        let p1 = pi(&[&[1]]);
        assert!(closed_sigma_vector(&[1], &[0], 0, Side::Z, &p1).is_zero());
        // w^2 dz ^ (2 z dz + w dw) = w^3 dz^dw
        assert_eq!(closed_sigma_vector(&[0], &[2], 0, Side::Z, &p1), bv(&[0, 3], &[0, 1]));
        // dw1 ^ (-z1 dz1) = z1 dz1^dw1
        let id = pi(&[&[1, 0], &[0, 1]]);
        assert_eq!(closed_sigma_vector(&[0, 0], &[0, 0], 0, Side::W, &id), bv(&[1, 0, 0, 0], &[0, 2]));
    }

    #[test]
    fn closed_forms_pin_row_versus_column() {
        // non-symmetric B distinguishes B_p (row) from B_q (column)
        let p = PoissonBivector::new(DenseMatrix::parse("1,i;-i,2").unwrap());
        let q = pi(&[&[1, 3], &[-2, 5]]);
        for pi in [&p, &q] {
            for d in 0..=3 {
                for pdeg in 0..=1 {
                    let cell = enumerate_cell(2, d, pdeg);
                    for i in 0..cell.dim() {
                        let y = cell.basis_vector(i);
                        assert_eq!(sigma(&y, pi).unwrap(), sigma_generic(&y, pi).unwrap(), "{y}");
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_squares_to_zero_small() {
        let p = pi(&[&[2, 1], &[1, 2]]);
        for d in 0..=3 {
            for pdeg in 0..=4 {
                let cell = enumerate_cell(2, d, pdeg);
                for i in 0..cell.dim() {
                    let y = cell.basis_vector(i);
                    let s = sigma(&y, &p).unwrap();
                    assert!(sigma(&s, &p).unwrap().is_zero());
                    for (gd, gp) in s.grade() {
                        assert_eq!((gd as i64, gp as i64), (d + 1, pdeg + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_locality() {
        use crate::exterior::lambda_decompose;
        let p = pi(&[&[6, -2], &[-2, 2]]);
        let cell = enumerate_cell(2, 2, 1);
        // the Hamiltonian field of z1*w2 is a kernel element spread over one lambda
        let ham = sigma(&bv(&[1, 0, 0, 1], &[]), &p).unwrap();
        let mixed = ham.add(&cell.basis_vector(3)).unwrap();
        for x in [ham, mixed] {
            let in_kernel = sigma(&x, &p).unwrap().is_zero();
            let parts = lambda_decompose(&x).unwrap();
            let all_parts = parts.values().all(|xl| sigma(xl, &p).unwrap().is_zero());
            assert_eq!(in_kernel, all_parts);
        }
    }

    fn arb_term_sum(n: usize, d: i64, p: i64) -> impl Strategy<Value = MultiVector> {
        let dim = cell_dimension(n, d, p).max(1);
        prop::collection::vec((0..dim, -2i64..3), 0..3).prop_map(move |entries| {
            let cell = enumerate_cell(n, d, p);
            let mut mv = MultiVector::zero(n);
            if cell.dim() > 0 {
                for (i, k) in entries {
                    let (m, w) = &cell.basis()[i];
                    mv.add_term(m.clone(), *w, GaussianRational::from(k));
                }
            }
            mv
        })
    }

    fn arb_graded_triple() -> impl Strategy<Value = (Vec<MultiVector>, Vec<usize>)> {
        (1usize..=2).prop_flat_map(|n| {
            let top = 2 * n as i64;
            prop::collection::vec((0i64..=3, 0i64..=top), 3).prop_flat_map(move |grades| {
                let ps: Vec<usize> = grades.iter().map(|g| g.1 as usize).collect();
                let vs: Vec<_> = grades.iter().map(|&(d, p)| arb_term_sum(n, d, p)).collect();
                (vs, Just(ps))
            })
        })
    }

    fn sgn(e: usize) -> GaussianRational {
        GaussianRational::from(if e.is_multiple_of(2) { 1 } else { -1 })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn graded_antisymmetry_and_leibniz((v, ps) in arb_graded_triple()) {
            let (x, y, z) = (&v[0], &v[1], &v[2]);
            let (p, q) = (ps[0], ps[1]);
            // [X,Y] = -(-1)^{(p-1)(q-1)} [Y,X], with exponents taken mod 2
            let e = ((p + 1) * (q + 1)) % 2;
            let lhs = schouten_bracket(x, y).unwrap();
            let rhs = schouten_bracket(y, x).unwrap().scale(&-sgn(e));
            prop_assert_eq!(lhs, rhs);
            // [X, Y^Z] = [X,Y]^Z + (-1)^{(p-1)q} Y^[X,Z]
            let lhs = schouten_bracket(x, &y.wedge(z).unwrap()).unwrap();
            let first = schouten_bracket(x, y).unwrap().wedge(z).unwrap();
            let second = y.wedge(&schouten_bracket(x, z).unwrap()).unwrap().scale(&sgn(((p + 1) * q) % 2));
            prop_assert_eq!(lhs, first.add(&second).unwrap());
        }
    }
}
