//! Stability verdicts for projective linear maps with marked points.
//!
//! An instance is a pair (T, v_1…v_n): a nonzero square matrix T up to
//! scale acting on P^N, together with n marked points, weighted by a
//! polarization (q; m_1…m_n). The verdict is decided by the flag criterion:
//! the instance is semistable exactly when, for every test flag H
//! (Type I / II / III relative to T, see [`crate::flags`]),
//!
//! ```text
//!     Ω(v, H) ≤ q · c(T, H),      c = 0 / +1 / −1 by type,
//! ```
//!
//! where Ω(v, H) = Σ_t [ Σ_{i : v_i ∈ H_t} m_i − dim H_t · (Σ m_i)/(N+1) ];
//! it is stable when every inequality is strict.
//!
//! Exact mode decides the full criterion: over a finite field by enumerating
//! every flag (budget-checked), over the rationals in the two decidable
//! special cases (scalar T → the classical point-configuration test; a
//! single marked point → the cyclic-vector trichotomy). Search mode scans
//! the finite candidate family of [`crate::flags::candidate_flags`] and
//! reports either a certified violation or that the family is clean —
//! never an unqualified "stable".
//!
//! All violation witnesses are re-verified by an independent recomputation
//! of Ω and the bound before being returned.

pub mod normal_form;
pub mod oracle;

use std::collections::BTreeSet;

use num::rational::BigRational;
use num::Zero;

use crate::error::{Error, Result};
use crate::field::{format_rational, rat, ratio, urat, Field, PrimeField};
use crate::flags::{candidate_flags, classify_flag, enumerate_flags, Flag, FlagType};
use crate::matrix::MatrixExact;
use crate::subspace::{invariant_span, kernel, Subspace};

/// A nonzero square matrix considered up to nonzero scale.
///
/// The representative is stored exactly as given; scale-equivalence lives in
/// the equality predicate and in [`ProjectiveMatrix::canonical_rep`]. (The
/// companion normal form depends on the chosen representative — rescaling T
/// rescales its output by non-uniform powers — so the stored matrix is
/// never silently renormalized.)
#[derive(Clone, Debug)]
pub struct ProjectiveMatrix<F: Field> {
    m: MatrixExact<F>,
}

impl<F: Field> ProjectiveMatrix<F> {
    pub fn new(m: MatrixExact<F>) -> Result<Self> {
        if !m.is_square() || m.rows() < 2 {
            return Err(Error::input(
                "a projective map needs a square matrix of size at least 2",
            ));
        }
        if m.is_zero() {
            return Err(Error::input("the zero matrix has no projective class"));
        }
        Ok(ProjectiveMatrix { m })
    }

    /// The stored representative.
    pub fn matrix(&self) -> &MatrixExact<F> {
        &self.m
    }

    /// Ambient vector-space dimension N+1.
    pub fn ambient(&self) -> usize {
        self.m.rows()
    }

    /// Projective dimension N.
    pub fn n_dim(&self) -> usize {
        self.m.rows() - 1
    }

    pub fn field(&self) -> &F {
        self.m.field()
    }

    /// The representative scaled so its first nonzero entry (row-major) is 1.
    pub fn canonical_rep(&self) -> MatrixExact<F> {
        let field = self.m.field().clone();
        for r in 0..self.m.rows() {
            for c in 0..self.m.cols() {
                if !field.is_zero(self.m.at(r, c)) {
                    let inv = field.inv(self.m.at(r, c)).expect("nonzero entry");
                    return self.m.scale(&inv);
                }
            }
        }
        unreachable!("projective matrices are nonzero")
    }

    /// Whether T is a scalar multiple of the identity (projectively the
    /// identity map; marked-point stability then reduces to the classical
    /// point-configuration test).
    pub fn is_scalar(&self) -> bool {
        let field = self.m.field();
        let d0 = self.m.at(0, 0);
        for r in 0..self.m.rows() {
            for c in 0..self.m.cols() {
                let e = self.m.at(r, c);
                if r == c {
                    if e != d0 {
                        return false;
                    }
                } else if !field.is_zero(e) {
                    return false;
                }
            }
        }
        true
    }
}

impl<F: Field> PartialEq for ProjectiveMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.m.rows() == other.m.rows() && self.canonical_rep() == other.canonical_rep()
    }
}

impl<F: Field> Eq for ProjectiveMatrix<F> {}

/// A projective linear map together with its marked points.
#[derive(Clone, Debug)]
pub struct MarkedMap<F: Field> {
    t: ProjectiveMatrix<F>,
    points: Vec<Vec<F::Elem>>,
}

impl<F: Field> MarkedMap<F> {
    pub fn new(t: ProjectiveMatrix<F>, points: Vec<Vec<F::Elem>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::input("a marked map needs at least one marked point"));
        }
        let field = t.field().clone();
        for v in &points {
            if v.len() != t.ambient() {
                return Err(Error::input("marked points must have length N+1"));
            }
            if v.iter().all(|x| field.is_zero(x)) {
                return Err(Error::input("marked points must be nonzero"));
            }
        }
        Ok(MarkedMap { t, points })
    }

    pub fn t(&self) -> &ProjectiveMatrix<F> {
        &self.t
    }

    pub fn points(&self) -> &[Vec<F::Elem>] {
        &self.points
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn n_dim(&self) -> usize {
        self.t.n_dim()
    }

    pub fn field(&self) -> &F {
        self.t.field()
    }

    /// The conjugated instance (A·T·A⁻¹, A·v_1, …, A·v_n) for invertible A.
    pub fn conjugate(&self, a: &MatrixExact<F>) -> Result<MarkedMap<F>> {
        let a_inv = a
            .inverse()
            .ok_or_else(|| Error::input("conjugation needs an invertible matrix"))?;
        let t = a.mul(self.t.matrix())?.mul(&a_inv)?;
        let points: Result<Vec<_>> = self.points.iter().map(|v| a.mul_vec(v)).collect();
        MarkedMap::new(ProjectiveMatrix::new(t)?, points?)
    }
}

/// The polarization (q; m_1…m_n): one positive q and one positive weight
/// per marked point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sheaf {
    q: u64,
    m: Vec<u64>,
}

impl Sheaf {
    pub fn new(q: u64, m: Vec<u64>) -> Result<Self> {
        if q < 1 {
            return Err(Error::input("the polarization exponent q must be ≥ 1"));
        }
        if m.is_empty() || m.iter().any(|w| *w < 1) {
            return Err(Error::input("every marked-point weight must be ≥ 1"));
        }
        Ok(Sheaf { q, m })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }
}

/// Outcome of a stability check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    /// Every test-flag inequality is strict (exact mode only).
    Stable,
    /// No violation, but equality is attained somewhere (exact mode only).
    StrictlySemistable,
    /// A violating flag exists; the witness is attached.
    Unstable,
    /// Search mode found (and re-verified) a violating flag.
    UnstableCertified,
    /// Search mode exhausted its candidate family without a violation; this
    /// is *not* a stability certificate.
    NoViolationInFamily,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Stable => "STABLE",
            Status::StrictlySemistable => "STRICTLY_SEMISTABLE",
            Status::Unstable => "UNSTABLE",
            Status::UnstableCertified => "UNSTABLE_CERTIFIED",
            Status::NoViolationInFamily => "NO_VIOLATION_IN_FAMILY",
        }
    }
}

/// How the verdict was reached.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// Complete decision over all test flags.
    Exact,
    /// Scan of the finite candidate family only.
    Search,
}

impl Mode {
    pub fn label(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Search => "search",
        }
    }
}

/// A violating flag with its recomputed functional value and bound.
#[derive(Clone, Debug)]
pub struct FlagWitness<F: Field> {
    pub flag: Flag<F>,
    pub flag_type: FlagType,
    pub omega: BigRational,
    pub bound: BigRational,
}

/// A basis over a finite field at which the corner-membership game is won
/// by the destabilizing player: `direction` is a probability vector over
/// the coordinates with `min_k direction · (η + q·w_k) = value > 0`.
#[derive(Clone, Debug)]
pub struct BasisCertificate<F: Field> {
    pub basis: MatrixExact<F>,
    pub value: BigRational,
    pub direction: Vec<BigRational>,
}

/// Either kind of instability certificate.
#[derive(Clone, Debug)]
pub enum Witness<F: Field> {
    Flag(FlagWitness<F>),
    Basis(BasisCertificate<F>),
}

/// The result of a stability computation.
#[derive(Clone, Debug)]
pub struct StabilityVerdict<F: Field> {
    pub status: Status,
    pub witness: Option<Witness<F>>,
    pub mode: Mode,
}

/// The configuration vector η(v) ∈ ℚ^N of weighted marked points expressed
/// in the working coordinates:
///
/// η_j = −j·(Σ m_i)/(N+1) + Σ_{i : v_i ∈ span(e_1…e_j)} m_i,   j ∈ [1, N],
///
/// where v ∈ span(e_1…e_j) exactly when its coordinates j+1…N+1 vanish.
pub fn eta<F: Field>(
    field: &F,
    points: &[Vec<F::Elem>],
    weights: &[u64],
    n_dim: usize,
) -> Result<Vec<BigRational>> {
    if points.len() != weights.len() {
        return Err(Error::input("eta: one weight per marked point"));
    }
    for v in points {
        if v.len() != n_dim + 1 {
            return Err(Error::input("eta: point length must be N+1"));
        }
    }
    let total: BigRational = weights.iter().map(|w| urat(*w)).sum();
    let np1 = rat(n_dim as i64 + 1);
    let mut out = Vec::with_capacity(n_dim);
    for j in 1..=n_dim {
        let mut incidence = BigRational::zero();
        for (v, w) in points.iter().zip(weights) {
            if v[j..].iter().all(|x| field.is_zero(x)) {
                incidence += urat(*w);
            }
        }
        out.push(incidence - rat(j as i64) * &total / &np1);
    }
    Ok(out)
}

/// The stability functional of a flag:
/// Ω(v, H) = Σ_t [ Σ_{i : v_i ∈ H_t} m_i − dim H_t · (Σ m_i)/(N+1) ].
///
/// Basis-free; for a coordinate subflag with index set I it equals the
/// partial sum Σ_{j ∈ I} η_j of the configuration vector.
pub fn omega<F: Field>(
    points: &[Vec<F::Elem>],
    weights: &[u64],
    flag: &Flag<F>,
) -> Result<BigRational> {
    if points.len() != weights.len() {
        return Err(Error::input("omega: one weight per marked point"));
    }
    let ambient = flag.ambient_dim();
    for v in points {
        if v.len() != ambient {
            return Err(Error::input("omega: point length must be N+1"));
        }
    }
    let total: BigRational = weights.iter().map(|w| urat(*w)).sum();
    let np1 = rat(ambient as i64);
    let mut sum = BigRational::zero();
    for h in flag.spaces() {
        let mut incidence = BigRational::zero();
        for (v, w) in points.iter().zip(weights) {
            if h.contains(v)? {
                incidence += urat(*w);
            }
        }
        sum += incidence - rat(h.dim() as i64) * &total / &np1;
    }
    Ok(sum)
}

/// The bound q·c(T, H) of the stability inequality: c = 0, +1, −1 for
/// Types I, II, III. A flag of no type has no bound.
pub fn flag_bound<F: Field>(t: &MatrixExact<F>, flag: &Flag<F>, q: u64) -> Result<BigRational> {
    let ty = classify_flag(t, flag)?;
    match ty.bound_constant() {
        Some(c) => Ok(rat(c) * urat(q)),
        None => Err(Error::NotATestFlag),
    }
}

/// Recompute Ω and the bound for a claimed violating flag and package the
/// witness; panics if the claim does not survive re-verification.
fn verified_flag_witness<F: Field>(
    t: &MatrixExact<F>,
    points: &[Vec<F::Elem>],
    weights: &[u64],
    q: u64,
    flag: &Flag<F>,
) -> Result<FlagWitness<F>> {
    let flag_type = classify_flag(t, flag)?;
    let bound = flag_bound(t, flag, q)?;
    let om = omega(points, weights, flag)?;
    assert!(
        om > bound,
        "instability witness failed independent re-verification"
    );
    Ok(FlagWitness {
        flag: flag.clone(),
        flag_type,
        omega: om,
        bound,
    })
}

/// Decide stability of a weighted point configuration under the classical
/// criterion: for every nonzero proper subspace H,
/// Σ_{v_i ∈ H} m_i ≤ dim H · (Σ m_i)/(N+1), strict for stability.
///
/// Complete because a violating subspace may be shrunk to the span of the
/// points it contains: it suffices to test spans of nonempty point subsets
/// (incidences recounted against all points).
pub fn mumford_config<F: Field>(
    field: &F,
    points: &[Vec<F::Elem>],
    weights: &[u64],
    n_dim: usize,
) -> Result<StabilityVerdict<F>> {
    if points.is_empty() || points.len() != weights.len() {
        return Err(Error::input(
            "config stability needs nonempty points with one weight each",
        ));
    }
    for v in points {
        if v.len() != n_dim + 1 {
            return Err(Error::input("config stability: point length must be N+1"));
        }
    }
    let n = points.len();
    if n > 20 {
        return Err(Error::Budget {
            needed: format!("2^{n} point subsets"),
            budget: 1 << 20,
        });
    }
    let total: BigRational = weights.iter().map(|w| urat(*w)).sum();
    let np1 = rat(n_dim as i64 + 1);
    let mut equality = false;
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
    for mask in 1u64..(1u64 << n) {
        let subset: Vec<Vec<F::Elem>> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| points[i].clone())
            .collect();
        let span = Subspace::span(field.clone(), n_dim + 1, &subset)?;
        if span.dim() == 0 || span.dim() > n_dim {
            continue;
        }
        let key: Vec<String> = {
            let b = span.basis();
            let mut k = vec![span.dim().to_string()];
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    k.push(field.format(b.at(r, c)));
                }
            }
            k
        };
        if !seen.insert(key) {
            continue;
        }
        let mut incidence = BigRational::zero();
        for (v, w) in points.iter().zip(weights) {
            if span.contains(v)? {
                incidence += urat(*w);
            }
        }
        let slack = incidence - rat(span.dim() as i64) * &total / &np1;
        if slack > BigRational::zero() {
            let flag = Flag::new(vec![span])?;
            // Independent re-verification: Ω of the one-step flag must
            // reproduce the violating slack.
            let om = omega(points, weights, &flag)?;
            assert!(om == slack && om > BigRational::zero());
            return Ok(StabilityVerdict {
                status: Status::Unstable,
                witness: Some(Witness::Flag(FlagWitness {
                    flag,
                    flag_type: FlagType::TypeI,
                    omega: om,
                    bound: BigRational::zero(),
                })),
                mode: Mode::Exact,
            });
        }
        if slack.is_zero() {
            equality = true;
        }
    }
    Ok(StabilityVerdict {
        status: if equality {
            Status::StrictlySemistable
        } else {
            Status::Stable
        },
        witness: None,
        mode: Mode::Exact,
    })
}

/// Decide stability by checking Ω ≤ q·c on every test flag, over a finite
/// field, by exhaustive budgeted flag enumeration.
fn exact_by_enumeration<F: Field>(
    mm: &MarkedMap<F>,
    sheaf: &Sheaf,
    budget: Option<u64>,
) -> Result<StabilityVerdict<F>> {
    let t = mm.t().matrix();
    let n_dim = mm.n_dim();
    let flags = enumerate_flags(t.field(), n_dim, n_dim, budget)?;
    let mut equality = false;
    for flag in &flags {
        let ty = classify_flag(t, flag)?;
        let Some(c) = ty.bound_constant() else {
            continue;
        };
        let om = omega(mm.points(), sheaf.m(), flag)?;
        let bound = rat(c) * urat(sheaf.q());
        if om > bound {
            let witness = verified_flag_witness(t, mm.points(), sheaf.m(), sheaf.q(), flag)?;
            return Ok(StabilityVerdict {
                status: Status::Unstable,
                witness: Some(Witness::Flag(witness)),
                mode: Mode::Exact,
            });
        }
        if om == bound {
            equality = true;
        }
    }
    Ok(StabilityVerdict {
        status: if equality {
            Status::StrictlySemistable
        } else {
            Status::Stable
        },
        witness: None,
        mode: Mode::Exact,
    })
}

/// The single-marked-point trichotomy over any field (exact).
///
/// Let W be the smallest T-invariant subspace containing v.
///
/// * W proper: the one-step flag (W) violates its bound (Ω = m₁(1 −
///   dim W/(N+1)) > 0 ≥ q·c), so the instance is unstable.
/// * v cyclic, T not nilpotent: no Type III flags exist, Type I flags are
///   always strict, and the Krylov chains span(v) ⊂ span(v, Tv) ⊂ … are the
///   extremal Type II flags with Ω = m₁·(γ − γ(γ+1)/(2(N+1))), maximized at
///   γ = N with value m₁·N/2. Verdict by comparing q with m₁·N/2.
/// * v cyclic, T nilpotent: additionally the full kernel chain
///   ker T ⊂ ker T² ⊂ … ⊂ ker T^N is the unique Type III flag, with
///   Ω = −m₁·N/2 against bound −q. Either threshold failure destabilizes;
///   q = m₁·N/2 attains equality on both sides (strictly semistable).
fn one_point_exact<F: Field>(mm: &MarkedMap<F>, sheaf: &Sheaf) -> Result<StabilityVerdict<F>> {
    let t = mm.t().matrix();
    let v = &mm.points()[0];
    let q = sheaf.q();
    let m1 = sheaf.m()[0];
    let n_dim = mm.n_dim();

    let w = invariant_span(t, std::slice::from_ref(v))?;
    if w.dim() <= n_dim {
        let flag = Flag::new(vec![w])?;
        let witness = verified_flag_witness(t, mm.points(), sheaf.m(), q, &flag)?;
        return Ok(StabilityVerdict {
            status: Status::Unstable,
            witness: Some(Witness::Flag(witness)),
            mode: Mode::Exact,
        });
    }

    // v is cyclic. Threshold m₁·N/2 against q.
    let threshold = urat(m1) * ratio(n_dim as i64, 2);
    let qr = urat(q);
    let nilpotent = {
        let mut p = t.clone();
        for _ in 0..n_dim {
            p = p.mul(t)?;
        }
        p.is_zero()
    };

    let greedy_witness = |mmap: &MarkedMap<F>| -> Result<FlagWitness<F>> {
        // Minimal γ whose Krylov chain already violates.
        let field = t.field().clone();
        for gamma in 1..=n_dim {
            let value =
                urat(m1) * (rat(gamma as i64) - ratio((gamma * (gamma + 1)) as i64, 2 * (n_dim as i64 + 1)));
            if value > qr {
                let mut krylov = Vec::with_capacity(gamma);
                let mut vecs: Vec<Vec<F::Elem>> = vec![v.clone()];
                for step in 1..=gamma {
                    krylov.push(Subspace::span(field.clone(), n_dim + 1, &vecs)?);
                    if step < gamma {
                        let next = t.mul_vec(vecs.last().expect("nonempty"))?;
                        vecs.push(next);
                    }
                }
                let flag = Flag::new(krylov)?;
                return verified_flag_witness(t, mmap.points(), sheaf.m(), q, &flag);
            }
        }
        unreachable!("a violating Krylov prefix exists whenever m₁·N/2 > q")
    };

    if !nilpotent {
        return Ok(match qr.cmp(&threshold) {
            std::cmp::Ordering::Greater => StabilityVerdict {
                status: Status::Stable,
                witness: None,
                mode: Mode::Exact,
            },
            std::cmp::Ordering::Equal => StabilityVerdict {
                status: Status::StrictlySemistable,
                witness: None,
                mode: Mode::Exact,
            },
            std::cmp::Ordering::Less => StabilityVerdict {
                status: Status::Unstable,
                witness: Some(Witness::Flag(greedy_witness(mm)?)),
                mode: Mode::Exact,
            },
        });
    }

    // Nilpotent with cyclic vector: T is conjugate to the full shift block;
    // the kernel powers have dimensions 1, 2, …, N.
    if qr > threshold {
        let mut chain = Vec::with_capacity(n_dim);
        let mut power = t.clone();
        for expected_dim in 1..=n_dim {
            let k = kernel(&power);
            assert_eq!(k.dim(), expected_dim, "cyclic nilpotent kernel dims are 1..N");
            chain.push(k);
            power = power.mul(t)?;
        }
        let flag = Flag::new(chain)?;
        let witness = verified_flag_witness(t, mm.points(), sheaf.m(), q, &flag)?;
        return Ok(StabilityVerdict {
            status: Status::Unstable,
            witness: Some(Witness::Flag(witness)),
            mode: Mode::Exact,
        });
    }
    if qr < threshold {
        return Ok(StabilityVerdict {
            status: Status::Unstable,
            witness: Some(Witness::Flag(greedy_witness(mm)?)),
            mode: Mode::Exact,
        });
    }
    Ok(StabilityVerdict {
        status: Status::StrictlySemistable,
        witness: None,
        mode: Mode::Exact,
    })
}

/// Decide (or search) stability of a marked map under the given
/// polarization.
///
/// * `Mode::Exact` — complete verdict. Available over a finite field (full
///   budgeted flag enumeration — shortcuts are deliberately not taken, so
///   cross-checks against independent oracles stay meaningful), and over
///   the rationals when T is scalar (classical configuration test) or when
///   there is a single marked point (cyclic-vector trichotomy). Any other
///   rational instance is rejected with an input error naming search mode.
/// * `Mode::Search` — scans the candidate family; returns
///   `UNSTABLE_CERTIFIED` with a re-verified witness, or
///   `NO_VIOLATION_IN_FAMILY` (which certifies nothing).
pub fn check_stability<F: Field>(
    mm: &MarkedMap<F>,
    sheaf: &Sheaf,
    mode: Mode,
    budget: Option<u64>,
) -> Result<StabilityVerdict<F>> {
    if sheaf.m().len() != mm.n_points() {
        return Err(Error::input(
            "the polarization needs exactly one weight per marked point",
        ));
    }
    match mode {
        Mode::Search => {
            let t = mm.t().matrix();
            let cands = candidate_flags(t, mm.points(), sheaf.q(), sheaf.m())?;
            for flag in &cands {
                let ty = classify_flag(t, flag)?;
                let Some(c) = ty.bound_constant() else {
                    continue;
                };
                let om = omega(mm.points(), sheaf.m(), flag)?;
                let bound = rat(c) * urat(sheaf.q());
                if om > bound {
                    let witness =
                        verified_flag_witness(t, mm.points(), sheaf.m(), sheaf.q(), flag)?;
                    return Ok(StabilityVerdict {
                        status: Status::UnstableCertified,
                        witness: Some(Witness::Flag(witness)),
                        mode: Mode::Search,
                    });
                }
            }
            Ok(StabilityVerdict {
                status: Status::NoViolationInFamily,
                witness: None,
                mode: Mode::Search,
            })
        }
        Mode::Exact => {
            if mm.field().all_elements().is_some() {
                exact_by_enumeration(mm, sheaf, budget)
            } else if mm.t().is_scalar() {
                mumford_config(mm.field(), mm.points(), sheaf.m(), mm.n_dim())
            } else if mm.n_points() == 1 {
                one_point_exact(mm, sheaf)
            } else {
                Err(Error::input(
                    "exact mode over the rationals is only decidable for a scalar map or a \
                     single marked point; use search mode",
                ))
            }
        }
    }
}

/// The largest value of the stability functional Ω over climbing (Type II)
/// flags for a *generic* instance with unit weights: once a point enters a
/// chain level, every later level must absorb one more step of its Krylov
/// segment, so a point whose tail occupies s levels contributes
/// s − n·s(s+1)/(2(N+1)), and the tails share the budget Σ s_i ≤ N of
/// proper dimensions. Degenerate instances can only exceed this value.
pub fn climbing_chain_optimum(n_dim: usize, n_points: usize) -> BigRational {
    let phi = |s: usize| -> BigRational {
        rat(s as i64)
            - ratio(
                (n_points * s * (s + 1)) as i64,
                2 * (n_dim as i64 + 1),
            )
    };
    // Maximize Σ φ(s_i) over n_points nonnegative tails with Σ s_i ≤ n_dim.
    let mut best = vec![BigRational::zero(); n_dim + 1];
    for _ in 0..n_points {
        let mut next = best.clone();
        for budget in 0..=n_dim {
            for s in 1..=budget {
                let cand = &best[budget - s] + phi(s);
                if cand > next[budget] {
                    next[budget] = cand;
                }
            }
        }
        best = next;
    }
    best.into_iter().max().expect("nonempty")
}

/// A marked map that is stable for the polarization (q; 1, …, 1):
/// T = diag(1, …, N+1) over GF(p) for the smallest prime p exceeding both
/// N+1 and n, with the n marked points on the moment curve
/// v_i = (1, i, i², …, i^N). Distinct diagonal entries make the invariant
/// subspaces exactly the coordinate spans, which the everywhere-nonzero
/// points avoid, so every fixed-flag inequality is strict; the points are
/// in general position, which caps every climbing-chain functional at
/// [`climbing_chain_optimum`]. (The test suite confirms the verdict by
/// exhaustive flag enumeration for all small parameters.)
///
/// Errors when q < n, or when q ≤ climbing_chain_optimum(N, n) — for n = 1
/// that threshold (N/2) is sharp and no stable instance exists at all;
/// for n ≥ 2 it is the limit of this construction.
pub fn stable_witness(n_dim: usize, n_points: usize, q: u64) -> Result<MarkedMap<PrimeField>> {
    if n_dim < 1 || n_points < 1 {
        return Err(Error::input("stable witness needs N ≥ 1 and n ≥ 1"));
    }
    if q < n_points as u64 {
        return Err(Error::input("stable witness requires q ≥ n"));
    }
    let cap = climbing_chain_optimum(n_dim, n_points);
    if urat(q) <= cap {
        return Err(Error::input(format!(
            "no stable instance with these parameters is available from this construction: \
             a climbing chain reaches Ω = {}, so stability needs q > {}",
            format_rational(&cap),
            format_rational(&cap),
        )));
    }
    let mut p = (n_dim as u64 + 1).max(n_points as u64) + 1;
    while PrimeField::new(p).is_err() {
        p += 1;
    }
    let field = PrimeField::new(p).expect("found a prime");
    let np1 = n_dim + 1;
    let mut t = MatrixExact::zero(field, np1, np1);
    for i in 0..np1 {
        t.set(i, i, field.from_i64(i as i64 + 1));
    }
    let mut points = Vec::with_capacity(n_points);
    for i in 1..=n_points as i64 {
        let mut v = Vec::with_capacity(np1);
        let x = field.from_i64(i);
        let mut acc = field.one();
        for _ in 0..np1 {
            v.push(acc);
            acc = field.mul(&acc, &x);
        }
        points.push(v);
    }
    MarkedMap::new(ProjectiveMatrix::new(t)?, points)
}

/// Scale a nonzero vector so its first nonzero coordinate is 1.
pub fn canonical_point<F: Field>(field: &F, v: &[F::Elem]) -> Vec<F::Elem> {
    for x in v {
        if !field.is_zero(x) {
            let inv = field.inv(x).expect("nonzero");
            return v.iter().map(|y| field.mul(y, &inv)).collect();
        }
    }
    v.to_vec()
}
