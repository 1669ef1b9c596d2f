//! Linear subspaces of k^(N+1) in canonical reduced-echelon form.
//!
//! Every subspace is stored as the unique reduced row-echelon basis of its
//! row space, so equal subspaces compare equal structurally and sets of
//! subspaces deduplicate syntactically.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::MatrixExact;

/// A subspace of the ambient column space k^(ambient_dim), stored as a
/// `dim × ambient_dim` reduced-echelon basis matrix (no zero rows; pivots
/// strictly increasing). The zero subspace has an empty basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: MatrixExact<F>,
}

impl<F: Field> Subspace<F> {
    /// The zero subspace of k^ambient.
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { ambient, basis: MatrixExact::zero(field, 0, ambient) }
    }

    /// The full space k^ambient.
    pub fn full(field: F, ambient: usize) -> Self {
        Subspace { ambient, basis: MatrixExact::identity(field, ambient) }
    }

    /// Minimal subspace containing the given vectors.
    pub fn span(field: F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::input(format!(
                    "span: vector of length {} in ambient dimension {}",
                    v.len(),
                    ambient
                )));
            }
        }
        let m = MatrixExact::from_rows(field, ambient, vectors.to_vec())?;
        Ok(Self::from_row_space(&m))
    }

    /// The row space of an arbitrary matrix, canonicalized.
    pub fn from_row_space(m: &MatrixExact<F>) -> Self {
        let (red, pivots) = m.rref();
        let rank = pivots.len();
        let rows: Vec<Vec<<F as Field>::Elem>> = (0..rank).map(|r| red.row(r)).collect();
        let basis = MatrixExact::from_rows(m.field().clone(), m.cols(), rows)
            .expect("echelon rows have ambient length");
        Subspace { ambient: m.cols(), basis }
    }

    /// The column space of a matrix (used for images of linear maps).
    pub fn from_col_space(m: &MatrixExact<F>) -> Self {
        Self::from_row_space(&m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// The canonical reduced-echelon basis, rows = basis vectors.
    pub fn basis(&self) -> &MatrixExact<F> {
        &self.basis
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    /// Does the subspace contain the vector?
    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::input("contains: ambient dimension mismatch"));
        }
        Ok(self.reduces_to_zero(v))
    }

    /// Reduce v against the echelon basis; zero remainder ⇔ membership.
    fn reduces_to_zero(&self, v: &[F::Elem]) -> bool {
        let f = self.field().clone();
        let mut w = v.to_vec();
        for r in 0..self.basis.rows() {
            // Pivot column of row r = first nonzero column of that row.
            let pivot = (0..self.ambient)
                .find(|&c| !f.is_zero(self.basis.at(r, c)))
                .expect("basis rows are nonzero");
            if f.is_zero(&w[pivot]) {
                continue;
            }
            let factor = w[pivot].clone();
            for c in 0..self.ambient {
                let sub = f.mul(&factor, self.basis.at(r, c));
                w[c] = f.sub(&w[c], &sub);
            }
        }
        w.iter().all(|e| f.is_zero(e))
    }

    /// Is `self` contained in `other`?
    pub fn leq(&self, other: &Subspace<F>) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::input("subspace comparison: ambient dimension mismatch"));
        }
        if self.dim() > other.dim() {
            return Ok(false);
        }
        for r in 0..self.basis.rows() {
            if !other.reduces_to_zero(&self.basis.row(r)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sum of two subspaces.
    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        if self.ambient != other.ambient {
            return Err(Error::input("subspace sum: ambient dimension mismatch"));
        }
        let mut rows: Vec<Vec<<F as Field>::Elem>> =
            (0..self.basis.rows()).map(|r| self.basis.row(r)).collect();
        rows.extend((0..other.basis.rows()).map(|r| other.basis.row(r)));
        Subspace::span(self.field().clone(), self.ambient, &rows)
    }

    /// Intersection of two subspaces.
    ///
    /// x ∈ A ∩ B exactly when x = uᵀA = wᵀB for some coefficient vectors; the
    /// kernel of [Aᵀ | −Bᵀ] enumerates the coefficient pairs.
    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        if self.ambient != other.ambient {
            return Err(Error::input("subspace intersection: ambient dimension mismatch"));
        }
        let f = self.field().clone();
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Ok(Subspace::zero(f, self.ambient));
        }
        let mut stacked = MatrixExact::zero(f.clone(), self.ambient, da + db);
        for c in 0..da {
            for r in 0..self.ambient {
                stacked.set(r, c, self.basis.at(c, r).clone());
            }
        }
        for c in 0..db {
            for r in 0..self.ambient {
                stacked.set(r, da + c, f.neg(other.basis.at(c, r)));
            }
        }
        let kernel = stacked.kernel_basis();
        let mut vectors = Vec::with_capacity(kernel.len());
        for k in kernel {
            // The A-part coefficients give a vector in the intersection.
            let mut v = vec![f.zero(); self.ambient];
            for (i, coeff) in k[..da].iter().enumerate() {
                for c in 0..self.ambient {
                    let add = f.mul(coeff, self.basis.at(i, c));
                    v[c] = f.add(&v[c], &add);
                }
            }
            vectors.push(v);
        }
        Subspace::span(f, self.ambient, &vectors)
    }

    /// The image T(self) under a square matrix acting on column vectors.
    pub fn image(&self, t: &MatrixExact<F>) -> Result<Subspace<F>> {
        if t.cols() != self.ambient || t.rows() != self.ambient {
            return Err(Error::input("image: matrix/subspace dimension mismatch"));
        }
        let mut rows = Vec::with_capacity(self.dim());
        for r in 0..self.basis.rows() {
            rows.push(t.mul_vec(&self.basis.row(r))?);
        }
        Subspace::span(self.field().clone(), self.ambient, &rows)
    }

    /// Is the subspace invariant under T (T·self ⊆ self)?
    pub fn is_invariant_under(&self, t: &MatrixExact<F>) -> Result<bool> {
        self.image(t)?.leq(self)
    }
}

/// Kernel of a square matrix as a canonical subspace.
pub fn kernel<F: Field>(t: &MatrixExact<F>) -> Subspace<F> {
    let basis = t.kernel_basis();
    Subspace::span(t.field().clone(), t.cols(), &basis).expect("kernel vectors have ambient length")
}

/// Smallest T-invariant subspace containing the seed vectors, computed by
/// saturating with images (at most ambient-many rounds).
pub fn invariant_span<F: Field>(
    t: &MatrixExact<F>,
    seeds: &[Vec<F::Elem>],
) -> Result<Subspace<F>> {
    if !t.is_square() {
        return Err(Error::input("invariant_span: matrix must be square"));
    }
    let ambient = t.cols();
    let mut current = Subspace::span(t.field().clone(), ambient, seeds)?;
    loop {
        let next = current.sum(&current.image(t)?)?;
        if next.dim() == current.dim() {
            return Ok(current);
        }
        current = next;
    }
}
