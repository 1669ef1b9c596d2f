//! An independent brute-force stability oracle over finite fields.
//!
//! For every ordered basis B of F^{N+1} — enumerated in lexicographic order
//! of basis tuples, vectors compared coordinatewise in the field's element
//! order — express the instance in B-coordinates and play the
//! corner-membership game
//!
//! ```text
//!     v*(B) = max_{r ∈ Δ} min_k r · (η_B + q·w_k),
//! ```
//!
//! where η_B is the configuration vector of the marked points in
//! B-coordinates and w_k ranges over the weight vectors of the nonzero
//! entries of B⁻¹·T·B. The instance is unstable exactly when some basis
//! wins strictly (v* > 0), strictly semistable when the best basis ties at
//! zero, and stable when every basis loses. This decides the same question
//! as the flag criterion through a completely different computation — no
//! flag classification and no Ω — so agreement between the two is a
//! meaningful cross-check rather than a tautology.

use std::collections::HashMap;
use std::ops::ControlFlow;

use num::bigint::BigUint;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{format_rational, rat, urat, Field};
use crate::matrix::MatrixExact;
use crate::polyhedra::{corner_game, raw_weight_set, GameSolution, WeightVector};
use crate::subspace::Subspace;

use super::{eta, BasisCertificate, MarkedMap, Mode, Sheaf, StabilityVerdict, Status, Witness};

/// Default cap on the number of bases the oracle will enumerate.
pub const DEFAULT_ORACLE_BUDGET: u64 = 1_000_000;

/// The number of ordered bases of a `dim`-dimensional space over a field
/// with `size` elements: Π_{i=0}^{dim−1} (size^dim − size^i).
pub fn basis_count(size: u64, dim: usize) -> BigUint {
    let s = BigUint::from(size);
    let total = s.pow(dim as u32);
    let mut count = BigUint::one();
    let mut si = BigUint::one();
    for _ in 0..dim {
        count *= &total - &si;
        si *= &s;
    }
    count
}

/// All vectors of F^dim in lexicographic order (first coordinate most
/// significant, coordinates in the field's element order).
fn all_vectors<F: Field>(field: &F, dim: usize) -> Result<Vec<Vec<F::Elem>>> {
    let elems = field
        .all_elements()
        .ok_or_else(|| Error::input("the basis-enumeration oracle needs a finite field"))?;
    let mut out: Vec<Vec<F::Elem>> = vec![Vec::new()];
    for _ in 0..dim {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for prefix in &out {
            for e in &elems {
                let mut v = prefix.clone();
                v.push(e.clone());
                next.push(v);
            }
        }
        out = next;
    }
    Ok(out)
}

fn basis_dfs<F: Field>(
    field: &F,
    dim: usize,
    vectors: &[Vec<F::Elem>],
    chosen: &mut Vec<Vec<F::Elem>>,
    visit: &mut impl FnMut(&MatrixExact<F>) -> Result<ControlFlow<()>>,
) -> Result<ControlFlow<()>> {
    if chosen.len() == dim {
        let mut b = MatrixExact::zero(field.clone(), dim, dim);
        for (c, v) in chosen.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                b.set(r, c, x.clone());
            }
        }
        return visit(&b);
    }
    let span = Subspace::span(field.clone(), dim, chosen)?;
    for v in vectors {
        if !span.contains(v)? {
            chosen.push(v.clone());
            let flow = basis_dfs(field, dim, vectors, chosen, visit)?;
            chosen.pop();
            if flow.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Visit every ordered basis (as a matrix of columns) in canonical order;
/// the visitor may stop the walk early.
pub fn for_each_basis<F: Field>(
    field: &F,
    dim: usize,
    visit: &mut impl FnMut(&MatrixExact<F>) -> Result<ControlFlow<()>>,
) -> Result<()> {
    let vectors = all_vectors(field, dim)?;
    let mut chosen = Vec::with_capacity(dim);
    let _ = basis_dfs(field, dim, &vectors, &mut chosen, visit)?;
    Ok(())
}

/// Decide stability by exhausting all ordered bases (see module docs).
///
/// Requires a finite field and a basis count within `budget`
/// (default [`DEFAULT_ORACLE_BUDGET`]). Returns the first winning basis in
/// enumeration order as a re-verified [`BasisCertificate`].
pub fn hilbert_mumford_oracle<F: Field>(
    mm: &MarkedMap<F>,
    sheaf: &Sheaf,
    budget: Option<u64>,
) -> Result<StabilityVerdict<F>> {
    if sheaf.m().len() != mm.n_points() {
        return Err(Error::input(
            "the polarization needs exactly one weight per marked point",
        ));
    }
    let field = mm.field().clone();
    let size = field
        .all_elements()
        .ok_or_else(|| Error::input("the basis-enumeration oracle needs a finite field"))?
        .len() as u64;
    let ambient = mm.n_dim() + 1;
    let budget_val = budget.unwrap_or(DEFAULT_ORACLE_BUDGET);
    let needed = basis_count(size, ambient);
    if needed > BigUint::from(budget_val) {
        return Err(Error::Budget {
            needed: needed.to_string(),
            budget: budget_val,
        });
    }

    let t = mm.t().matrix();
    let n_dim = mm.n_dim();
    let q = urat(sheaf.q());
    let zero = BigRational::zero();
    // Distinct bases often share (weight set, η); solve each game once.
    let mut cache: HashMap<(Vec<WeightVector>, Vec<String>), GameSolution> = HashMap::new();
    let mut equality = false;
    let mut certificate: Option<BasisCertificate<F>> = None;

    for_each_basis(&field, ambient, &mut |b| {
        let b_inv = b.inverse().expect("enumerated bases are invertible");
        let m_b = b_inv.mul(t)?.mul(b)?;
        let coords: Result<Vec<Vec<F::Elem>>> =
            mm.points().iter().map(|v| b_inv.mul_vec(v)).collect();
        let coords = coords?;
        let eta_b = eta(&field, &coords, sheaf.m(), n_dim)?;
        let weights = raw_weight_set(&m_b)?;
        let payoff = |w: &WeightVector| -> Vec<BigRational> {
            w.iter()
                .zip(&eta_b)
                .map(|(wi, ei)| ei + &q * rat(*wi))
                .collect()
        };
        let key = (
            weights.clone(),
            eta_b.iter().map(format_rational).collect::<Vec<_>>(),
        );
        let sol = cache.entry(key).or_insert_with(|| {
            let zetas: Vec<Vec<BigRational>> = weights.iter().map(&payoff).collect();
            corner_game(&zetas, &vec![zero.clone(); n_dim])
        });
        if sol.value > zero {
            // Re-verify the cached strategy against freshly built payoffs:
            // a probability vector r with min_k r·ζ_k equal to the claimed
            // positive value.
            let r = sol.maximizer.clone();
            assert_eq!(r.len(), n_dim);
            assert!(r.iter().all(|x| *x >= zero));
            assert!(r.iter().cloned().sum::<BigRational>() == BigRational::one());
            let min = weights
                .iter()
                .map(|w| {
                    payoff(w)
                        .iter()
                        .zip(&r)
                        .map(|(a, b)| a * b)
                        .sum::<BigRational>()
                })
                .min()
                .expect("weight set is nonempty");
            assert!(
                min == sol.value && min > zero,
                "oracle certificate failed independent re-verification"
            );
            certificate = Some(BasisCertificate {
                basis: b.clone(),
                value: sol.value.clone(),
                direction: r,
            });
            return Ok(ControlFlow::Break(()));
        }
        if sol.value.is_zero() {
            equality = true;
        }
        Ok(ControlFlow::Continue(()))
    })?;

    Ok(match certificate {
        Some(cert) => StabilityVerdict {
            status: Status::Unstable,
            witness: Some(Witness::Basis(cert)),
            mode: Mode::Exact,
        },
        None => StabilityVerdict {
            status: if equality {
                Status::StrictlySemistable
            } else {
                Status::Stable
            },
            witness: None,
            mode: Mode::Exact,
        },
    })
}
