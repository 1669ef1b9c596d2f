//! Coordinates on the quotient: conjugation-invariant normal forms for
//! single-marked-point instances and for diagonalizable multi-point
//! instances.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::MatrixExact;
use crate::subspace::kernel;

use super::{canonical_point, MarkedMap};

/// The companion normal form of a one-point instance (T, v).
///
/// When v is cyclic and T^{N+1}·v ≠ 0, the vector α solving
///
/// ```text
///     T^{N+1} v = α_1·v + α_2·Tv + … + α_{N+1}·T^N v
/// ```
///
/// determines (T, v) up to conjugation: in the Krylov basis (v, Tv, …, T^N v)
/// the map becomes the companion matrix of x^{N+1} − α_{N+1}x^N − … − α_1
/// and the point becomes e_1. Conjugating the instance leaves α unchanged.
/// (Rescaling the chosen matrix representative rescales α entry-wise by
/// powers of the scalar; α is reported for the representative as stored.)
///
/// Errors with `NotStable` when v is not cyclic or T is nilpotent — exactly
/// the degenerate locus where no stable instance lives.
pub fn companion_form<F: Field>(mm: &MarkedMap<F>) -> Result<Vec<F::Elem>> {
    if mm.n_points() != 1 {
        return Err(Error::input(
            "the companion normal form needs exactly one marked point",
        ));
    }
    let t = mm.t().matrix();
    let field = t.field().clone();
    let ambient = mm.n_dim() + 1;
    let mut krylov: Vec<Vec<F::Elem>> = vec![mm.points()[0].clone()];
    for _ in 1..ambient {
        krylov.push(t.mul_vec(krylov.last().expect("nonempty"))?);
    }
    let mut p = MatrixExact::zero(field.clone(), ambient, ambient);
    for (c, v) in krylov.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            p.set(r, c, x.clone());
        }
    }
    if p.rank() < ambient {
        return Err(Error::NotStable(
            "the marked point is not a cyclic vector of the map".into(),
        ));
    }
    let top = t.mul_vec(krylov.last().expect("nonempty"))?;
    if top.iter().all(|x| field.is_zero(x)) {
        return Err(Error::NotStable(
            "the map annihilates the Krylov chain (nilpotent on a cyclic vector)".into(),
        ));
    }
    Ok(p.solve(&top).expect("Krylov matrix has full rank"))
}

/// Diagonal coordinates for a generic multi-point instance.
///
/// Requires N+1 distinct eigenvalues in the base field and a first marked
/// point with no zero eigen-coordinate. The output is conjugation-invariant:
/// the sorted eigenvalue list together with the remaining points in the
/// eigenbasis scaled so the first point is (1, …, 1), each further point
/// normalized to leading coordinate 1.
///
/// Errors with `NotGeneric` off that locus.
pub fn moduli_coordinates<F: Field>(
    mm: &MarkedMap<F>,
) -> Result<(Vec<F::Elem>, Vec<Vec<F::Elem>>)> {
    let t = mm.t().matrix();
    let field = t.field().clone();
    let ambient = mm.n_dim() + 1;
    let coeffs = t.char_poly()?;
    let roots = field.poly_roots(&coeffs);
    if roots.len() != ambient {
        return Err(Error::NotGeneric(format!(
            "the map needs {ambient} distinct eigenvalues in the base field; found {}",
            roots.len()
        )));
    }
    let mut w = MatrixExact::zero(field.clone(), ambient, ambient);
    for (c, lambda) in roots.iter().enumerate() {
        let mut shifted = t.clone();
        for i in 0..ambient {
            shifted.set(i, i, field.sub(t.at(i, i), lambda));
        }
        let eig = kernel(&shifted);
        assert_eq!(eig.dim(), 1, "distinct eigenvalues have simple eigenspaces");
        let basis = eig.basis();
        for r in 0..ambient {
            w.set(r, c, basis.at(0, r).clone());
        }
    }
    let c = w
        .solve(&mm.points()[0])
        .expect("eigenbasis matrix is invertible");
    if c.iter().any(|x| field.is_zero(x)) {
        return Err(Error::NotGeneric(
            "the first marked point lies on an eigen-coordinate hyperplane".into(),
        ));
    }
    // A = (W · diag(c))⁻¹ sends the rescaled eigenbasis to the standard one
    // and the first point to (1, …, 1).
    let mut wd = w.clone();
    for col in 0..ambient {
        for row in 0..ambient {
            wd.set(row, col, field.mul(wd.at(row, col), &c[col]));
        }
    }
    let a = wd.inverse().expect("rescaled eigenbasis is invertible");
    let ones = a.mul_vec(&mm.points()[0])?;
    assert!(
        ones.iter().all(|x| *x == field.one()),
        "first point must normalize to the all-ones vector"
    );
    let mut rest = Vec::with_capacity(mm.n_points() - 1);
    for v in &mm.points()[1..] {
        rest.push(canonical_point(&field, &a.mul_vec(v)?));
    }
    Ok((roots, rest))
}
