//! Flags of nested subspaces and their interaction with a linear map.
//!
//! A [`Flag`] is a strictly increasing chain of proper nonzero subspaces of
//! k^(N+1). Relative to a square matrix T, every flag has a Hessenberg
//! function h: h(i) is the least index j such that T·H_i ⊆ H_j (with H_0 = 0
//! and H_(γ+1) the full space). Three mutually exclusive shapes of h single
//! out the *test flags* of the stability criterion:
//!
//! * **Type I** — a single invariant subspace: γ = 1, h(1) ≤ 1, and either
//!   h(1) = 1 (the subspace maps onto a nonzero part of itself) or h(2) = 2
//!   (the ambient space does not collapse into it).
//! * **Type II** — strictly climbing chains: h(t) = t + 1 for all t ∈ [1, γ].
//! * **Type III** — strictly falling chains: h(t) = t − 1 for all
//!   t ∈ [1, γ+1]; these exist only for nilpotent T.
//!
//! The module provides the classifier, exhaustive enumeration of all flags
//! over a finite field (with an exact budget precheck via Gaussian binomial
//! counts), and the finite candidate family scanned by the search mode of
//! the stability checker.

use std::collections::BTreeSet;

use num::{BigUint, One, Zero};

use itertools::Itertools;
use num::rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, rat};
use crate::matrix::MatrixExact;
use crate::subspace::{invariant_span, kernel, Subspace};

/// A strictly increasing chain H_1 ⊂ H_2 ⊂ … ⊂ H_γ of proper nonzero
/// subspaces of k^(N+1), with 1 ≤ γ ≤ N.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Flag<F: Field> {
    spaces: Vec<Subspace<F>>,
}

impl<F: Field> Flag<F> {
    /// Validate and build a flag from the chain of subspaces.
    pub fn new(spaces: Vec<Subspace<F>>) -> Result<Self> {
        if spaces.is_empty() {
            return Err(Error::input("a flag must contain at least one subspace"));
        }
        let ambient = spaces[0].ambient_dim();
        if ambient < 2 {
            return Err(Error::input("flag ambient dimension must be at least 2"));
        }
        for s in &spaces {
            if s.ambient_dim() != ambient {
                return Err(Error::input("flag subspaces live in different ambient spaces"));
            }
            if s.dim() == 0 || s.dim() == ambient {
                return Err(Error::input(
                    "flag subspaces must be nonzero and proper",
                ));
            }
        }
        for w in spaces.windows(2) {
            if w[0].dim() >= w[1].dim() || !w[0].leq(&w[1])? {
                return Err(Error::input("flag subspaces must be strictly nested"));
            }
        }
        Ok(Flag { spaces })
    }

    /// Number of subspaces γ in the chain.
    pub fn gamma(&self) -> usize {
        self.spaces.len()
    }

    /// Dimension N+1 of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.spaces[0].ambient_dim()
    }

    pub fn field(&self) -> &F {
        self.spaces[0].field()
    }

    /// The chain H_1, …, H_γ in increasing order.
    pub fn spaces(&self) -> &[Subspace<F>] {
        &self.spaces
    }

    /// Apply an invertible linear map to every subspace of the chain.
    pub fn map(&self, a: &MatrixExact<F>) -> Result<Flag<F>> {
        let mapped: Result<Vec<_>> = self.spaces.iter().map(|s| s.image(a)).collect();
        Flag::new(mapped?)
    }

    /// A total-order key: (γ, dimension vector, formatted basis entries).
    /// Used for deterministic ordering and duplicate detection.
    pub fn canonical_key(&self) -> FlagKey {
        let dims = self.spaces.iter().map(|s| s.dim()).collect();
        let mut entries = Vec::new();
        let field = self.field();
        for s in &self.spaces {
            let b = s.basis();
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    entries.push(field.format(b.at(r, c)));
                }
            }
        }
        (self.gamma(), dims, entries)
    }
}

/// Sort/dedup key of a flag: (γ, dims, formatted basis entries).
pub type FlagKey = (usize, Vec<usize>, Vec<String>);

/// The Hessenberg function of a flag relative to a matrix: values
/// h(0), h(1), …, h(γ+1), where h(i) is the least j with T·H_i ⊆ H_j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HessenbergFunction {
    values: Vec<usize>,
}

impl HessenbergFunction {
    /// h(i), for i ∈ [0, γ+1].
    pub fn at(&self, i: usize) -> usize {
        self.values[i]
    }

    /// All values h(0.. γ+1) in index order.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// The flag length γ the function was computed for.
    pub fn gamma(&self) -> usize {
        self.values.len() - 2
    }
}

/// The classification of a flag relative to a matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FlagType {
    TypeI,
    TypeII,
    TypeIII,
    /// None of the three test shapes: the flag imposes no stability bound.
    None,
}

impl FlagType {
    /// Canonical label used in reports and JSON.
    pub fn label(&self) -> &'static str {
        match self {
            FlagType::TypeI => "TYPE_I",
            FlagType::TypeII => "TYPE_II",
            FlagType::TypeIII => "TYPE_III",
            FlagType::None => "NONE",
        }
    }

    /// The constant c in the stability bound Ω ≤ q·c: 0 / +1 / −1 for
    /// Types I / II / III, undefined for unclassified flags.
    pub fn bound_constant(&self) -> Option<i64> {
        match self {
            FlagType::TypeI => Some(0),
            FlagType::TypeII => Some(1),
            FlagType::TypeIII => Some(-1),
            FlagType::None => None,
        }
    }
}

/// Compute the Hessenberg function of `flag` relative to `t`.
///
/// h(i) = min { j ∈ [0, γ+1] : T·H_i ⊆ H_j }, with H_0 = 0 and H_(γ+1) the
/// full space; h is nondecreasing because the chain is nested.
pub fn hessenberg<F: Field>(t: &MatrixExact<F>, flag: &Flag<F>) -> Result<HessenbergFunction> {
    let ambient = flag.ambient_dim();
    if !t.is_square() || t.rows() != ambient {
        return Err(Error::input(
            "hessenberg: matrix size must match the flag's ambient dimension",
        ));
    }
    let field = flag.field().clone();
    let mut chain = Vec::with_capacity(flag.gamma() + 2);
    chain.push(Subspace::zero(field.clone(), ambient));
    chain.extend(flag.spaces().iter().cloned());
    chain.push(Subspace::full(field, ambient));

    let mut values = Vec::with_capacity(chain.len());
    for h_i in &chain {
        let image = h_i.image(t)?;
        let j = chain
            .iter()
            .position(|h_j| image.leq(h_j).expect("same ambient"))
            .expect("the full space always contains the image");
        values.push(j);
    }
    debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
    Ok(HessenbergFunction { values })
}

/// Classify a flag as Type I / II / III relative to `t`, or `None`.
///
/// The three shapes are mutually exclusive (asserted): Type I forces γ = 1
/// with h(1) ≤ 1, while Types II and III force h(1) = 2 and h(1) = 0
/// respectively.
pub fn classify_flag<F: Field>(t: &MatrixExact<F>, flag: &Flag<F>) -> Result<FlagType> {
    let h = hessenberg(t, flag)?;
    let gamma = flag.gamma();
    let type1 = gamma == 1 && h.at(1) <= 1 && (h.at(1) == 1 || h.at(2) == 2);
    let type2 = (1..=gamma).all(|i| h.at(i) == i + 1);
    let type3 = (1..=gamma + 1).all(|i| h.at(i) == i - 1);
    assert!(
        u8::from(type1) + u8::from(type2) + u8::from(type3) <= 1,
        "flag types must be mutually exclusive"
    );
    Ok(if type1 {
        FlagType::TypeI
    } else if type2 {
        FlagType::TypeII
    } else if type3 {
        FlagType::TypeIII
    } else {
        FlagType::None
    })
}

/// The Gaussian binomial coefficient [m choose k]_s: the number of
/// k-dimensional subspaces of an m-dimensional space over a field with s
/// elements.
pub fn gaussian_binomial(m: usize, k: usize, field_size: u64) -> BigUint {
    if k > m {
        return BigUint::zero();
    }
    let s = BigUint::from(field_size);
    // Pascal-type recurrence [m k] = [m−1 k−1] + s^k·[m−1 k].
    let mut row = vec![BigUint::one()];
    for _ in 0..m {
        let mut next = vec![BigUint::one()];
        for j in 1..=row.len() {
            let upper = row.get(j).cloned().unwrap_or_default();
            next.push(&row[j - 1] + s.pow(j as u32) * upper);
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

fn chains_from(field_size: u64, n: usize, last_dim: usize, remaining: usize) -> BigUint {
    if remaining == 0 {
        return BigUint::zero();
    }
    let mut total = BigUint::zero();
    for d in last_dim + 1..=n {
        let step = gaussian_binomial(n + 1 - last_dim, d - last_dim, field_size);
        total += step * (BigUint::one() + chains_from(field_size, n, d, remaining - 1));
    }
    total
}

/// Exact number of flags of length ≤ max_gamma in k^(N+1) over a field with
/// `field_size` elements (the quantity prechecked against the enumeration
/// budget).
pub fn count_flags(field_size: u64, n: usize, max_gamma: usize) -> BigUint {
    chains_from(field_size, n, 0, max_gamma.min(n))
}

/// Default ceiling on the number of flags (or bases) an exhaustive
/// enumeration may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1_000_000;

/// All subspaces of the given dimension in k^ambient over a finite field,
/// each exactly once, sorted by their canonical basis entries.
///
/// Subspaces are produced directly in reduced-row-echelon form: choose the
/// pivot columns, then sweep every assignment of the free entries.
pub fn enumerate_subspaces<F: Field>(
    field: &F,
    ambient: usize,
    dim: usize,
) -> Result<Vec<Subspace<F>>> {
    let elems = field
        .all_elements()
        .ok_or_else(|| Error::input("subspace enumeration requires a finite field"))?;
    if dim == 0 {
        return Ok(vec![Subspace::zero(field.clone(), ambient)]);
    }
    if dim > ambient {
        return Ok(Vec::new());
    }
    let mut result = Vec::new();
    for pivots in (0..ambient).combinations(dim) {
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            for c in p + 1..ambient {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let mut idx = vec![0usize; free.len()];
        loop {
            let mut rows = vec![vec![field.zero(); ambient]; dim];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = field.one();
            }
            for (k, &(r, c)) in free.iter().enumerate() {
                rows[r][c] = elems[idx[k]].clone();
            }
            result.push(Subspace::span(field.clone(), ambient, &rows)?);
            // Odometer over the free entries.
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < elems.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    result.sort_by(|a, b| {
        let fa = a.basis();
        let fb = b.basis();
        for r in 0..fa.rows() {
            for c in 0..fa.cols() {
                let ord = field.total_cmp(fa.at(r, c), fb.at(r, c));
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
        }
        std::cmp::Ordering::Equal
    });
    Ok(result)
}

/// Every flag of length ≤ max_gamma over a finite field, each exactly once,
/// in a deterministic order (depth-first over chains, subspaces in canonical
/// order at each level).
///
/// The exact number of flags is prechecked against `budget` (default
/// [`DEFAULT_ENUMERATION_BUDGET`]) using Gaussian binomial counts; exceeding
/// it yields [`Error::Budget`] without enumerating anything.
pub fn enumerate_flags<F: Field>(
    field: &F,
    n: usize,
    max_gamma: usize,
    budget: Option<u64>,
) -> Result<Vec<Flag<F>>> {
    let elems = field
        .all_elements()
        .ok_or_else(|| Error::input("flag enumeration requires a finite field"))?;
    if n < 1 {
        return Err(Error::input("flag enumeration needs ambient dimension ≥ 2"));
    }
    if max_gamma < 1 {
        return Err(Error::input("max_gamma must be at least 1"));
    }
    let max_gamma = max_gamma.min(n);
    let budget = budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET);
    let needed = if n <= 24 {
        count_flags(elems.len() as u64, n, max_gamma)
    } else {
        // The dimension-1 layer alone dwarfs any practical budget; report it
        // as a lower bound rather than computing the astronomical total.
        gaussian_binomial(n + 1, 1, elems.len() as u64)
    };
    if needed > BigUint::from(budget) {
        let prefix = if n <= 24 { "" } else { "more than " };
        return Err(Error::Budget {
            needed: format!("{prefix}{needed}"),
            budget,
        });
    }

    let mut by_dim: Vec<Vec<Subspace<F>>> = Vec::with_capacity(n);
    for dim in 1..=n {
        by_dim.push(enumerate_subspaces(field, n + 1, dim)?);
    }

    let mut out = Vec::new();
    let mut chain: Vec<Subspace<F>> = Vec::new();
    extend_chains(&by_dim, n, max_gamma, &mut chain, &mut out)?;
    Ok(out)
}

fn extend_chains<F: Field>(
    by_dim: &[Vec<Subspace<F>>],
    n: usize,
    max_gamma: usize,
    chain: &mut Vec<Subspace<F>>,
    out: &mut Vec<Flag<F>>,
) -> Result<()> {
    if !chain.is_empty() {
        out.push(Flag::new(chain.clone())?);
        if chain.len() == max_gamma {
            return Ok(());
        }
    }
    let last_dim = chain.last().map_or(0, |s| s.dim());
    for dim in last_dim + 1..=n {
        for s in &by_dim[dim - 1] {
            let nested = chain.last().map_or(Ok(true), |last| last.leq(s))?;
            if nested {
                chain.push(s.clone());
                extend_chains(by_dim, n, max_gamma, chain, out)?;
                chain.pop();
            }
        }
    }
    Ok(())
}

/// Ceiling on the number of nested-subset chains the candidate family
/// construction may sweep.
const CANDIDATE_CHAIN_CAP: u64 = 2_000_000;

/// The finite family of candidate test flags scanned by search mode:
///
/// * **Type I candidates** — the smallest T-invariant subspace containing
///   each nonempty subset of the marked points, when proper and nonzero
///   (complete: every Type I violation is witnessed by one of these);
/// * **Type II candidates** — greedy chains H_1 = span(S_1),
///   H_t = span(S_t ∪ T·H_(t−1)) over nested point subsets S_1 ⊆ … ⊆ S_γ,
///   kept when they classify as Type II;
/// * **Type III candidates** — prefixes of the kernel-power filtration
///   ker(T^t) and its intersections with the greedy chains, kept when they
///   classify as Type III.
///
/// The output is deduplicated and sorted by decreasing violation slack
/// Ω − q·c (ties broken by the canonical flag key), so a caller scanning in
/// order meets the worst violation first.
pub fn candidate_flags<F: Field>(
    t: &MatrixExact<F>,
    points: &[Vec<F::Elem>],
    q: u64,
    weights: &[u64],
) -> Result<Vec<Flag<F>>> {
    if !t.is_square() || t.rows() < 2 {
        return Err(Error::input("candidate_flags: T must be square of size ≥ 2"));
    }
    if t.is_zero() {
        return Err(Error::input("candidate_flags: T must be nonzero"));
    }
    if points.len() != weights.len() {
        return Err(Error::input("candidate_flags: one weight per marked point"));
    }
    let ambient = t.rows();
    let n_dim = ambient - 1;
    let npts = points.len();
    for v in points {
        if v.len() != ambient {
            return Err(Error::input("candidate_flags: point length must be N+1"));
        }
    }
    if npts > 62 {
        return Err(Error::Budget {
            needed: format!("more than 2^{npts} point subsets"),
            budget: CANDIDATE_CHAIN_CAP,
        });
    }
    let mut chain_count: u128 = 0;
    for gamma in 1..=n_dim {
        chain_count = chain_count.saturating_add((gamma as u128 + 1).saturating_pow(npts as u32));
    }
    if chain_count > CANDIDATE_CHAIN_CAP as u128 {
        return Err(Error::Budget {
            needed: chain_count.to_string(),
            budget: CANDIDATE_CHAIN_CAP,
        });
    }

    let field = t.field().clone();
    let mut seen: BTreeSet<FlagKey> = BTreeSet::new();
    let mut kept: Vec<(BigRational, FlagKey, Flag<F>)> = Vec::new();
    let mut keep = |flag: Flag<F>, want: Option<FlagType>| -> Result<()> {
        let ty = classify_flag(t, &flag)?;
        let Some(c) = ty.bound_constant() else {
            return Ok(());
        };
        if want.is_some_and(|w| w != ty) {
            return Ok(());
        }
        let key = flag.canonical_key();
        if seen.insert(key.clone()) {
            let slack =
                crate::stability::omega(points, weights, &flag)? - rat(q as i64 * c);
            kept.push((slack, key, flag));
        }
        Ok(())
    };

    // Type I candidates: invariant spans of nonempty point subsets.
    for mask in 1u64..(1u64 << npts) {
        let seeds: Vec<Vec<F::Elem>> = (0..npts)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| points[i].clone())
            .collect();
        let w = invariant_span(t, &seeds)?;
        if w.dim() >= 1 && w.dim() <= n_dim {
            keep(Flag::new(vec![w])?, None)?;
        }
    }

    // Greedy chains over nested point subsets, for the Type II family;
    // every structurally valid chain is also retained for intersection with
    // the kernel filtration below.
    let mut chains: Vec<Vec<Subspace<F>>> = Vec::new();
    let mut chain_seen: BTreeSet<FlagKey> = BTreeSet::new();
    for gamma in 1..=n_dim {
        // Levels: 0 = never included; k ∈ [1, γ] = first appears in S_k.
        let mut levels = vec![0usize; npts];
        loop {
            if levels.contains(&1) {
                let mut chain: Vec<Subspace<F>> = Vec::new();
                let mut point_span = Subspace::zero(field.clone(), ambient);
                let mut ok = true;
                for step in 1..=gamma {
                    let newly: Vec<Vec<F::Elem>> = (0..npts)
                        .filter(|i| levels[*i] == step)
                        .map(|i| points[i].clone())
                        .collect();
                    if !newly.is_empty() {
                        point_span =
                            point_span.sum(&Subspace::span(field.clone(), ambient, &newly)?)?;
                    }
                    let h = match chain.last() {
                        None => point_span.clone(),
                        Some(prev) => point_span.sum(&prev.image(t)?)?,
                    };
                    let prev_dim = chain.last().map_or(0, |s| s.dim());
                    if h.dim() <= prev_dim || h.dim() > n_dim {
                        ok = false;
                        break;
                    }
                    chain.push(h);
                }
                if ok {
                    let flag = Flag::new(chain.clone())?;
                    if chain_seen.insert(flag.canonical_key()) {
                        chains.push(chain);
                        keep(flag, Some(FlagType::TypeII))?;
                    }
                }
            }
            // Odometer over level assignments.
            let mut k = 0;
            while k < npts {
                levels[k] += 1;
                if levels[k] <= gamma {
                    break;
                }
                levels[k] = 0;
                k += 1;
            }
            if k == npts {
                break;
            }
        }
        if npts == 0 {
            break;
        }
    }

    // Kernel-power filtration: the strictly increasing proper prefix of
    // ker(T), ker(T²), ….
    let mut kernel_powers: Vec<Subspace<F>> = Vec::new();
    let mut power = t.clone();
    loop {
        let k = kernel(&power);
        let last_dim = kernel_powers.last().map_or(0, |s| s.dim());
        if k.dim() <= last_dim || k.dim() > n_dim {
            break;
        }
        kernel_powers.push(k);
        power = power.mul(t)?;
    }
    for l in 1..=kernel_powers.len() {
        keep(Flag::new(kernel_powers[..l].to_vec())?, Some(FlagType::TypeIII))?;
    }

    // Intersections of greedy chains with the kernel filtration.
    for chain in &chains {
        for k in &kernel_powers {
            let cut: Result<Vec<_>> = chain.iter().map(|h| h.intersect(k)).collect();
            if let Some(flag) = strictify(cut?, n_dim)? {
                keep(flag, Some(FlagType::TypeIII))?;
            }
        }
        if !kernel_powers.is_empty() {
            let diag: Result<Vec<_>> = chain
                .iter()
                .enumerate()
                .map(|(i, h)| h.intersect(&kernel_powers[i.min(kernel_powers.len() - 1)]))
                .collect();
            if let Some(flag) = strictify(diag?, n_dim)? {
                keep(flag, Some(FlagType::TypeIII))?;
            }
        }
    }

    kept.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    Ok(kept.into_iter().map(|(_, _, f)| f).collect())
}

/// Compress a nested (weakly increasing) chain to the strictly increasing
/// chain of its distinct proper nonzero members; `None` when nothing is left.
fn strictify<F: Field>(chain: Vec<Subspace<F>>, n_dim: usize) -> Result<Option<Flag<F>>> {
    let mut strict: Vec<Subspace<F>> = Vec::new();
    for s in chain {
        let last_dim = strict.last().map_or(0, |p| p.dim());
        if s.dim() > last_dim && s.dim() <= n_dim {
            strict.push(s);
        }
    }
    if strict.is_empty() {
        Ok(None)
    } else {
        Ok(Some(Flag::new(strict)?))
    }
}
