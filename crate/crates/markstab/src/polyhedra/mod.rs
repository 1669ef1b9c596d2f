//! Corner polyhedra in s-coordinates: entry weights, closed-form facets, and
//! an independent exact membership oracle.
//!
//! The corner polyhedron of a nonzero matrix is the Minkowski sum of the
//! convex hull of its nonzero entries' weight vectors with the nonnegative
//! orthant O⁺, expressed in the s-coordinate basis of dimension N. Two
//! independent descriptions are implemented:
//!
//! * the closed form: vertices from the control matrix and facets from
//!   Hessenberg conditions on the support pattern ([`corner_facets`]), with a
//!   second route to the same facets by projecting the control matrix to a
//!   coordinate subset ([`verts_projection`]);
//! * a first-principles membership test via an exact matrix game
//!   ([`corner_membership`]), which never consults the closed form.
//!
//! Tests validate the closed form against the oracle exhaustively on small
//! sizes.

mod lp;

pub use lp::{solve_simplex_game, GameSolution};

use num::{BigRational, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::MatrixExact;
use crate::profiles::{control_matrix_of_support, support_pattern, ControlMatrix};

/// A lattice point of the projected character lattice in s-coordinates
/// (length N).
pub type WeightVector = Vec<i64>;

/// The kind of a corner-polyhedron facet. 1A/1B occur for matrices that are
/// not strictly upper-triangular, 2A/2B for strictly upper-triangular ones;
/// A-kinds are coordinate halfspaces {s_ρ ≥ 0}, B-kinds are deeper cuts
/// {s_I ≥ ∓1}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FacetKind {
    F1A,
    F1B,
    F2A,
    F2B,
}

impl FacetKind {
    pub fn label(self) -> &'static str {
        match self {
            FacetKind::F1A => "F-1A",
            FacetKind::F1B => "F-1B",
            FacetKind::F2A => "F-2A",
            FacetKind::F2B => "F-2B",
        }
    }
}

/// A supporting halfspace {s_I ≥ c} with s_I = Σ_{i∈I} s_i.
///
/// Facets produced by [`corner_facets`] have integer constants: 0 for the A
/// kinds (where the index set is a singleton), −1 for F-1B, +1 for F-2B.
/// After [`minkowski_translate`] the constant becomes q·c + s_I(shift), which
/// is a general rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Facet {
    /// Nonempty, strictly increasing subset of [N] (1-based coordinates).
    pub index_set: Vec<usize>,
    pub constant: BigRational,
    pub kind: FacetKind,
}

impl Facet {
    /// Evaluate s_I at a point.
    pub fn functional(&self, point: &[BigRational]) -> BigRational {
        self.index_set.iter().map(|&i| point[i - 1].clone()).sum()
    }
}

/// A corner polyhedron given by both generators (vertices; the recession cone
/// is always O⁺) and a supporting-halfspace description. Construction
/// validates that the two descriptions are consistent: every vertex satisfies
/// every facet inequality and every facet is tight at at least one vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CornerPolyhedron {
    dim: usize,
    vertices: Vec<Vec<BigRational>>,
    facets: Vec<Facet>,
}

impl CornerPolyhedron {
    pub fn new(dim: usize, vertices: Vec<Vec<BigRational>>, facets: Vec<Facet>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::input("corner polyhedron needs at least one vertex"));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::input("corner polyhedron vertex has wrong dimension"));
            }
        }
        for f in &facets {
            if f.index_set.is_empty()
                || f.index_set.windows(2).any(|w| w[0] >= w[1])
                || *f.index_set.last().unwrap() > dim
            {
                return Err(Error::input("facet index set must be a nonempty subset of [N]"));
            }
            let values: Vec<BigRational> = vertices.iter().map(|v| f.functional(v)).collect();
            if values.iter().any(|x| x < &f.constant) {
                return Err(Error::input("facet inequality violated by a vertex"));
            }
            if values.iter().all(|x| x != &f.constant) {
                return Err(Error::input("facet not tight at any vertex"));
            }
        }
        Ok(CornerPolyhedron { dim, vertices, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Does the point satisfy every facet inequality (strictly, if asked)?
    /// This is the closed-form side of the membership question; it agrees
    /// with [`corner_membership`] on the raw weight set by the facet theorem.
    pub fn satisfies_facets(&self, point: &[BigRational], strict: bool) -> bool {
        self.facets.iter().all(|f| {
            let v = f.functional(point);
            if strict {
                v > f.constant
            } else {
                v >= f.constant
            }
        })
    }
}

/// The s-coordinate weight vector of matrix entry (i, j), 1-based in [N+1]².
///
/// Zero on the diagonal; below the diagonal (i > j) a block of −1s on
/// coordinates j..=i−1; above it (i < j) a block of +1s on coordinates
/// i..=j−1.
pub fn entry_weight(i: usize, j: usize, n: usize) -> WeightVector {
    assert!((1..=n + 1).contains(&i) && (1..=n + 1).contains(&j), "entry outside [N+1]²");
    let mut w = vec![0i64; n];
    if i > j {
        for c in j..=i - 1 {
            w[c - 1] = -1;
        }
    } else {
        for c in i..j {
            w[c - 1] = 1;
        }
    }
    w
}

/// Weight vectors of all nonzero entries of a matrix, row-major, deduplicated
/// (duplicates add nothing to the corner polyhedron).
pub fn raw_weight_set<F: Field>(m: &MatrixExact<F>) -> Result<Vec<WeightVector>> {
    assert!(m.is_square());
    let n = m.rows() - 1;
    let field = m.field().clone();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !field.is_zero(m.at(r, c)) {
                let w = entry_weight(r + 1, c + 1, n);
                if seen.insert(w.clone()) {
                    out.push(w);
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::TrivialProfile);
    }
    Ok(out)
}

/// M·S_a ⊆ S_b on the support level: every nonzero entry in columns 1..=a
/// lies in rows 1..=b. Indices may be 0 (zero subspace) or N+1 (full space).
fn maps_into(support: &[Vec<bool>], a: usize, b: usize) -> bool {
    let size = support.len();
    (b..size).all(|r| (0..a.min(size)).all(|c| !support[r][c]))
}

/// Hessenberg value of the coordinate subflag S_{i_1} ⊂ … ⊂ S_{i_γ} at
/// position t ∈ {0,…,γ+1}: the least t′ with M·S_{i_t} ⊆ S_{i_{t′}}, where
/// i_0 = 0 and i_{γ+1} = N+1.
fn subflag_hessenberg(support: &[Vec<bool>], index_set: &[usize], t: usize) -> usize {
    let size = support.len();
    let gamma = index_set.len();
    let level = |u: usize| -> usize {
        if u == 0 {
            0
        } else if u == gamma + 1 {
            size
        } else {
            index_set[u - 1]
        }
    };
    let a = level(t);
    (0..=gamma + 1).find(|&u| maps_into(support, a, level(u))).expect("full space always works")
}

/// Closed-form corner polyhedron of a nonzero matrix: vertices from the
/// control matrix, facets from Hessenberg conditions on the support.
///
/// For a matrix that is not strictly upper-triangular, the facets are
/// {s_ρ ≥ 0} whenever M·S_ρ ⊆ S_ρ (F-1A) and {s_I ≥ −1} whenever the subflag
/// Hessenberg function satisfies h(t) = t+1 for 1 ≤ t ≤ γ (F-1B). For a
/// strictly upper-triangular matrix they are {s_ρ ≥ 0} whenever
/// M·k^{N+1} ⊄ S_ρ or M·S_ρ ≠ 0 (F-2A) and {s_I ≥ 1} whenever h(t) = t−1 for
/// 1 ≤ t ≤ γ+1 (F-2B). A-kind facets are listed first (ρ ascending), then
/// B-kind facets ordered by size then lexicographically.
///
/// # Errors
/// `TrivialProfile` if the matrix is zero.
pub fn corner_facets<F: Field>(m: &MatrixExact<F>) -> Result<CornerPolyhedron> {
    corner_facets_of_support(&support_pattern(m))
}

/// [`corner_facets`] on a 0/1 support pattern.
pub fn corner_facets_of_support(support: &[Vec<bool>]) -> Result<CornerPolyhedron> {
    let ctrl = control_matrix_of_support(support)?;
    let size = support.len();
    let n = size - 1;
    let strictly_upper = (0..size).all(|r| (0..=r.min(size - 1)).all(|c| !support[r][c]));

    let mut facets = Vec::new();
    for rho in 1..=n {
        let is_facet = if strictly_upper {
            !maps_into(support, size, rho) || !maps_into(support, rho, 0)
        } else {
            maps_into(support, rho, rho)
        };
        if is_facet {
            facets.push(Facet {
                index_set: vec![rho],
                constant: BigRational::zero(),
                kind: if strictly_upper { FacetKind::F2A } else { FacetKind::F1A },
            });
        }
    }
    for index_set in subsets_by_size(n) {
        let gamma = index_set.len();
        let (range_end, offset, kind, c) = if strictly_upper {
            (gamma + 1, -1i64, FacetKind::F2B, 1)
        } else {
            (gamma, 1i64, FacetKind::F1B, -1)
        };
        let hessenberg_matches = (1..=range_end)
            .all(|t| subflag_hessenberg(support, &index_set, t) as i64 == t as i64 + offset);
        if hessenberg_matches {
            facets.push(Facet {
                index_set,
                constant: BigRational::from_integer(c.into()),
                kind,
            });
        }
    }

    let vertices = ctrl
        .columns()
        .iter()
        .map(|col| col.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    CornerPolyhedron::new(n, vertices, facets)
}

/// All nonempty subsets of [n], ordered by size then lexicographically.
fn subsets_by_size(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|bits| (1..=n).filter(|&i| bits >> (i - 1) & 1 == 1).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Decide query ∈ Corner(points) — or its interior when `strict` — from
/// first principles via the exact game oracle. Never consults the
/// closed-form facets.
pub fn corner_membership(points: &[WeightVector], query: &WeightVector, strict: bool) -> bool {
    let to_rat =
        |v: &WeightVector| v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
    let points: Vec<Vec<BigRational>> = points.iter().map(to_rat).collect();
    let query: Vec<BigRational> = to_rat(query);
    corner_membership_exact(&points, &query, strict)
}

/// Rational-point version of [`corner_membership`].
pub fn corner_membership_exact(
    points: &[Vec<BigRational>],
    query: &[BigRational],
    strict: bool,
) -> bool {
    let value = corner_game(points, query).value;
    if strict {
        value.is_negative()
    } else {
        !value.is_positive()
    }
}

/// The separation game for query vs. Corner(points): payoff rows are
/// point − query. Value ≤ 0 ⟺ membership; < 0 ⟺ interior membership; the
/// solution carries a separating functional or a convex-combination witness.
pub fn corner_game(points: &[Vec<BigRational>], query: &[BigRational]) -> GameSolution {
    assert!(!points.is_empty(), "corner membership needs at least one point");
    let payoffs: Vec<Vec<BigRational>> = points
        .iter()
        .map(|p| {
            assert_eq!(p.len(), query.len(), "point/query dimension mismatch");
            p.iter().zip(query).map(|(a, b)| a - b).collect()
        })
        .collect();
    solve_simplex_game(&payoffs)
}

/// q·P + shift: vertices scaled and translated, facet constants mapped to
/// q·c + s_I(shift). Kinds and index sets are preserved.
pub fn minkowski_translate(
    p: &CornerPolyhedron,
    shift: &[BigRational],
    scale: u64,
) -> Result<CornerPolyhedron> {
    if shift.len() != p.dim() {
        return Err(Error::input("shift has wrong dimension"));
    }
    if scale == 0 {
        return Err(Error::input("scale must be a positive integer"));
    }
    let q = BigRational::from_integer(scale.into());
    let vertices = p
        .vertices()
        .iter()
        .map(|v| v.iter().zip(shift).map(|(x, s)| &q * x + s).collect())
        .collect();
    let facets = p
        .facets()
        .iter()
        .map(|f| {
            let shift_part: BigRational = f.index_set.iter().map(|&i| shift[i - 1].clone()).sum();
            Facet {
                index_set: f.index_set.clone(),
                constant: &q * &f.constant + shift_part,
                kind: f.kind,
            }
        })
        .collect();
    CornerPolyhedron::new(p.dim(), vertices, facets)
}

/// Vertex matrix of the projection of the corner polyhedron to the
/// coordinates in I: restrict the control matrix to rows I, then delete every
/// column dominated by another (w1 removed when w1 − w2 is coordinatewise
/// ≥ 0 for some distinct remaining w2; among equal columns the first is
/// kept).
///
/// # Errors
/// `TrivialProfile` for the zero matrix; input error when I is empty or not
/// a strictly increasing subset of [N].
pub fn verts_projection<F: Field>(m: &MatrixExact<F>, index_set: &[usize]) -> Result<ControlMatrix> {
    verts_projection_of_support(&support_pattern(m), index_set)
}

/// [`verts_projection`] on a 0/1 support pattern.
pub fn verts_projection_of_support(
    support: &[Vec<bool>],
    index_set: &[usize],
) -> Result<ControlMatrix> {
    let ctrl = control_matrix_of_support(support)?;
    let n = ctrl.n_rows();
    if index_set.is_empty()
        || index_set.windows(2).any(|w| w[0] >= w[1])
        || *index_set.last().unwrap() > n
    {
        return Err(Error::input("projection index set must be a nonempty subset of [N]"));
    }
    let restricted: Vec<WeightVector> = ctrl
        .columns()
        .iter()
        .map(|col| index_set.iter().map(|&i| col[i - 1]).collect())
        .collect();
    // Keep column j unless an earlier equal column or any strictly dominating
    // column exists. Domination is transitive, so one pass suffices.
    let dominated = |a: &WeightVector, b: &WeightVector| {
        a != b && a.iter().zip(b).all(|(x, y)| x >= y)
    };
    let kept: Vec<WeightVector> = restricted
        .iter()
        .enumerate()
        .filter(|(j, col)| {
            !restricted.iter().enumerate().any(|(i, other)| {
                dominated(col, other) || (*other == **col && i < *j)
            })
        })
        .map(|(_, col)| col.clone())
        .collect();
    ControlMatrix::new(index_set.len(), kept)
}
