//! Exact two-phase simplex for matrix games over the probability simplex.
//!
//! The membership question "does the query point lie in conv(points) + O⁺?"
//! reduces to the value of the game
//!
//!   v* = max over r in the simplex Δ of  min over k of  r·d_k,
//!
//! where d_k = point_k − query. The query is a member exactly when v* ≤ 0 and
//! an interior member exactly when v* < 0: a maximizing r with positive value
//! is a separating functional in the closed dual orthant, and the optimal
//! mixture λ over the d_k certifies Σλ_k·d_k ≤ v*·𝟙, i.e. a convex
//! combination of the points that the query dominates coordinatewise.
//!
//! Every solve extracts BOTH optimal strategies and cross-verifies them, so
//! each returned value carries its own exact proof of optimality; a failed
//! verification is an internal error and panics. All arithmetic is rational —
//! there is no tolerance parameter anywhere.

use num::{BigRational, Signed, Zero};

/// Solved game with mutually-verifying optimality certificates.
#[derive(Clone, Debug)]
pub struct GameSolution {
    /// The game value v* = max_{r ∈ Δ} min_k r·payoff_k.
    pub value: BigRational,
    /// Optimal maximizer strategy r*: nonnegative, sums to 1, and
    /// min_k r*·payoff_k = value. When value > 0 this is a separating
    /// functional proving non-membership.
    pub maximizer: Vec<BigRational>,
    /// Optimal mixture λ over the payoff rows: nonnegative, sums to 1, and
    /// Σ_k λ_k·payoff_k ≤ value·𝟙 coordinatewise. When value ≤ 0 this is a
    /// membership certificate.
    pub weights: Vec<BigRational>,
}

/// Solve max_{r ∈ Δ_n} min_k r·payoffs[k] exactly.
///
/// # Panics
/// On empty input, ragged rows, or an internal certificate verification
/// failure (which would indicate a solver bug, not bad input).
pub fn solve_simplex_game(payoffs: &[Vec<BigRational>]) -> GameSolution {
    let k = payoffs.len();
    assert!(k >= 1, "game needs at least one payoff row");
    let n = payoffs[0].len();
    assert!(n >= 1, "game needs at least one coordinate");
    assert!(payoffs.iter().all(|row| row.len() == n), "ragged payoff rows");

    // LP: max t  s.t.  r·d_i − t ≥ 0 (i ∈ [k]), Σ_j r_j = 1, r ≥ 0, t free.
    // Standard form columns: r_1..r_n | t⁺ | t⁻ | s_1..s_k | artificial.
    // Rows 0..k−1:  −d_i·r + t⁺ − t⁻ + s_i = 0   (slack s_i basic, value 0)
    // Row  k:        Σ_j r_j + artificial  = 1   (artificial basic, value 1)
    let t_plus = n;
    let t_minus = n + 1;
    let s_base = n + 2;
    let art = n + 2 + k;
    let ncols = n + 3 + k;

    let zero = BigRational::zero();
    let one = BigRational::from_integer(1.into());

    let mut rows = vec![vec![zero.clone(); ncols]; k + 1];
    let mut rhs = vec![zero.clone(); k + 1];
    for i in 0..k {
        for j in 0..n {
            rows[i][j] = -payoffs[i][j].clone();
        }
        rows[i][t_plus] = one.clone();
        rows[i][t_minus] = -one.clone();
        rows[i][s_base + i] = one.clone();
    }
    for j in 0..n {
        rows[k][j] = one.clone();
    }
    rows[k][art] = one.clone();
    rhs[k] = one.clone();

    let basis: Vec<usize> = (0..k).map(|i| s_base + i).chain([art]).collect();
    let mut t = Tableau { rows, rhs, basis, obj: vec![zero.clone(); ncols], zval: zero.clone(), banned: vec![false; ncols] };

    // Phase 1: maximize −artificial. The system is feasible (any r ∈ Δ with
    // matching t and slacks), so the optimum is 0.
    let mut phase1 = vec![zero.clone(); ncols];
    phase1[art] = -one.clone();
    t.set_costs(&phase1);
    t.optimize();
    assert!(t.zval.is_zero(), "phase 1 failed on a feasible system");
    t.evict_artificial(art);
    t.banned[art] = true;

    // Phase 2: maximize t⁺ − t⁻. Bounded because t ≤ max_k max-norm of d_k.
    let mut phase2 = vec![zero.clone(); ncols];
    phase2[t_plus] = one.clone();
    phase2[t_minus] = -one;
    t.set_costs(&phase2);
    t.optimize();

    let value = t.zval.clone();
    let mut maximizer = vec![zero.clone(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            maximizer[b] = t.rhs[i].clone();
        }
    }
    // Dual value of game row i = negated reduced cost of its slack column.
    let weights: Vec<BigRational> = (0..k).map(|i| -t.obj[s_base + i].clone()).collect();

    verify(payoffs, &value, &maximizer, &weights);
    GameSolution { value, maximizer, weights }
}

/// Check both certificates against the raw payoffs; panics on any violation.
fn verify(payoffs: &[Vec<BigRational>], value: &BigRational, r: &[BigRational], lambda: &[BigRational]) {
    let n = payoffs[0].len();
    let one = BigRational::from_integer(1.into());
    assert!(r.iter().all(|x| !x.is_negative()), "maximizer has a negative weight");
    assert!(r.iter().sum::<BigRational>() == one, "maximizer is not on the simplex");
    let min_payoff = payoffs
        .iter()
        .map(|d| d.iter().zip(r).map(|(a, b)| a * b).sum::<BigRational>())
        .min()
        .expect("nonempty payoffs");
    assert!(&min_payoff == value, "maximizer does not attain the reported value");

    assert!(lambda.iter().all(|x| !x.is_negative()), "mixture has a negative weight");
    assert!(lambda.iter().sum::<BigRational>() == one, "mixture is not on the simplex");
    for j in 0..n {
        let combo: BigRational = payoffs.iter().zip(lambda).map(|(d, l)| &d[j] * l).sum();
        assert!(&combo <= value, "mixture fails the coordinatewise bound");
    }
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
    obj: Vec<BigRational>,
    zval: BigRational,
    banned: Vec<bool>,
}

impl Tableau {
    /// Install an objective (maximization): recompute reduced costs and the
    /// objective value for the current basis.
    fn set_costs(&mut self, c: &[BigRational]) {
        self.obj = c.to_vec();
        self.zval = BigRational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            let factor = c[b].clone();
            for j in 0..self.obj.len() {
                let adj = &factor * &self.rows[i][j];
                self.obj[j] -= adj;
            }
            self.zval += &factor * &self.rhs[i];
        }
    }

    /// Bland's rule: entering = lowest-index column with positive reduced
    /// cost; leaving = minimum ratio, ties broken by lowest basis variable.
    /// Guarantees termination under degeneracy.
    fn optimize(&mut self) {
        loop {
            let Some(enter) = (0..self.obj.len())
                .find(|&j| !self.banned[j] && self.obj[j].is_positive())
            else {
                return;
            };
            let mut leave: Option<(BigRational, usize, usize)> = None; // (ratio, basis var, row)
            for i in 0..self.rows.len() {
                if !self.rows[i][enter].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][enter];
                let candidate = (ratio, self.basis[i], i);
                leave = match leave {
                    None => Some(candidate),
                    Some(best) => {
                        if candidate.0 < best.0 || (candidate.0 == best.0 && candidate.1 < best.1) {
                            Some(candidate)
                        } else {
                            Some(best)
                        }
                    }
                };
            }
            let (_, _, row) = leave.expect("LP unbounded: impossible for a simplex game");
            self.pivot(row, enter);
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for c in 0..self.rows[r].len() {
            self.rows[r][c] /= &p;
        }
        self.rhs[r] /= &p;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let factor = self.rows[i][j].clone();
            for c in 0..self.rows[i].len() {
                let adj = &factor * &self.rows[r][c];
                self.rows[i][c] -= adj;
            }
            let adj = &factor * &self.rhs[r];
            self.rhs[i] -= adj;
        }
        if !self.obj[j].is_zero() {
            let factor = self.obj[j].clone();
            for c in 0..self.obj.len() {
                let adj = &factor * &self.rows[r][c];
                self.obj[c] -= adj;
            }
            self.zval += &factor * &self.rhs[r];
        }
        self.basis[r] = j;
    }

    /// After phase 1 the artificial variable has value 0 but may still be
    /// basic (degenerate). Pivot it out on any other nonzero column of its
    /// row; such a column exists because the constraint rows have full rank.
    fn evict_artificial(&mut self, art: usize) {
        let Some(row) = (0..self.basis.len()).find(|&i| self.basis[i] == art) else {
            return;
        };
        debug_assert!(self.rhs[row].is_zero());
        let col = (0..self.rows[row].len())
            .find(|&j| j != art && !self.rows[row][j].is_zero())
            .expect("artificial row has no replacement column: rank-deficient system");
        self.pivot(row, col);
    }
}
