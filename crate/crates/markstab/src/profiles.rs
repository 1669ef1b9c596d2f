//! Staircase profiles of matrices, pivotal entries, the outweighing order,
//! and control matrices.
//!
//! The profile of a nonzero (N+1)×(N+1) matrix is the tightest monotone
//! staircase path — a word of N+1 DOWNs and N+1 RIGHTs — such that every
//! nonzero entry lies in the closed region above/right of the path. Matrices
//! that are not strictly upper-triangular get a LOWER path (weakly below the
//! main diagonal); strictly upper-triangular matrices get an UPPER path
//! (strictly above it). The profile classifies the corner polyhedron of the
//! matrix completely: two nonzero matrices have equal corner polyhedra
//! exactly when they have equal profiles.
//!
//! The corners of the staircase (DOWN immediately followed by RIGHT) are the
//! pivotal entries; the off-diagonal pivotal entries carry the weight vectors
//! that form the columns of the control matrix, which lists the vertices of
//! the corner polyhedron in canonical order.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::MatrixExact;
use crate::polyhedra::{entry_weight, WeightVector};

/// One letter of a profile word. `Down` sorts before `Right`, which makes
/// lexicographic word order list lower profiles before upper ones.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Step {
    Down,
    Right,
}

/// Which side of the main diagonal the staircase hugs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Orientation {
    /// Weakly below the diagonal; used for every matrix that is not strictly
    /// upper-triangular. The word starts with DOWN.
    Lower,
    /// Strictly above the diagonal; used for strictly upper-triangular
    /// matrices. The word starts with RIGHT.
    Upper,
}

/// A staircase profile: a word of N+1 DOWNs and N+1 RIGHTs plus an
/// orientation tag.
///
/// Internally the path is stored as its height vector f(1..N+1), where f(i)
/// is the number of RIGHTs preceding the i-th DOWN. Lower profiles satisfy
/// 0 ≤ f(i) ≤ i−1, upper profiles i ≤ f(i) ≤ N+1; both are nondecreasing.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Profile {
    n: usize,
    orientation: Orientation,
    f: Vec<usize>,
}

/// A corner of the staircase: a DOWN-RIGHT adjacency in the profile word,
/// addressed by 1-based (row, col) in [N+1]².
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PivotalEntry {
    pub row: usize,
    pub col: usize,
}

/// The vertex matrix of a corner polyhedron: one weight-vector column per
/// vertex, in canonical order (block start and end indices both strictly
/// increasing across columns).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ControlMatrix {
    n_rows: usize,
    columns: Vec<WeightVector>,
}

impl Profile {
    /// Build a profile from its height vector. `f[i-1]` = number of RIGHTs
    /// before the i-th DOWN; must be nondecreasing and stay on the correct
    /// side of the diagonal for the orientation.
    pub fn from_heights(n: usize, orientation: Orientation, f: Vec<usize>) -> Result<Self> {
        if f.len() != n + 1 {
            return Err(Error::input("profile heights must have length N+1"));
        }
        let mut prev = 0usize;
        for (idx, &fi) in f.iter().enumerate() {
            let i = idx + 1;
            if fi < prev {
                return Err(Error::input("profile heights must be nondecreasing"));
            }
            let ok = match orientation {
                Orientation::Lower => fi <= i - 1,
                Orientation::Upper => i <= fi && fi <= n + 1,
            };
            if !ok {
                return Err(Error::input(
                    "profile heights cross the main diagonal for this orientation",
                ));
            }
            prev = fi;
        }
        if orientation == Orientation::Upper && f.iter().all(|&fi| fi == n + 1) {
            return Err(Error::TrivialProfile);
        }
        Ok(Profile { n, orientation, f })
    }

    /// Rebuild a profile from its word and orientation tag.
    pub fn from_word(word: &[Step], orientation: Orientation) -> Result<Self> {
        if word.len() < 2 || word.len() % 2 != 0 {
            return Err(Error::input("profile word must have even length ≥ 2"));
        }
        let n = word.len() / 2 - 1;
        let downs = word.iter().filter(|&&s| s == Step::Down).count();
        if downs != n + 1 {
            return Err(Error::input("profile word must have N+1 DOWNs and N+1 RIGHTs"));
        }
        let mut f = Vec::with_capacity(n + 1);
        let mut rights = 0usize;
        for &s in word {
            match s {
                Step::Right => rights += 1,
                Step::Down => f.push(rights),
            }
        }
        Self::from_heights(n, orientation, f)
    }

    /// N: the profile describes (N+1)×(N+1) matrices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Height vector f(1..N+1): `heights()[i-1]` RIGHTs precede the i-th DOWN.
    pub fn heights(&self) -> &[usize] {
        &self.f
    }

    /// The word as a step sequence of length 2N+2.
    pub fn word(&self) -> Vec<Step> {
        let mut w = Vec::with_capacity(2 * self.n + 2);
        let mut prev = 0usize;
        for &fi in &self.f {
            w.extend(std::iter::repeat(Step::Right).take(fi - prev));
            w.push(Step::Down);
            prev = fi;
        }
        w.extend(std::iter::repeat(Step::Right).take(self.n + 1 - prev));
        w
    }

    /// The word as a string over {D, R}, e.g. "DRDR".
    pub fn word_string(&self) -> String {
        self.word()
            .iter()
            .map(|s| match s {
                Step::Down => 'D',
                Step::Right => 'R',
            })
            .collect()
    }
}

/// Compute the profile of a nonzero matrix.
///
/// For each row i, the path descends below row i exactly after covering all
/// columns that contain a nonzero entry in rows ≥ i, clamped so the path
/// never crosses the main diagonal.
///
/// # Errors
/// `TrivialProfile` if the matrix is zero.
pub fn profile<F: Field>(m: &MatrixExact<F>) -> Result<Profile> {
    let support = support_pattern(m);
    profile_of_support(&support)
}

/// Profile of a 0/1 support pattern (`support[i][j]` = entry (i+1, j+1) is
/// nonzero). Must be square.
pub fn profile_of_support(support: &[Vec<bool>]) -> Result<Profile> {
    let size = support.len();
    assert!(size >= 1 && support.iter().all(|r| r.len() == size), "square support required");
    let n = size - 1;
    let mut any = false;
    let mut strictly_upper = true;
    for (r, row) in support.iter().enumerate() {
        for (c, &nz) in row.iter().enumerate() {
            if nz {
                any = true;
                if r >= c {
                    strictly_upper = false;
                }
            }
        }
    }
    if !any {
        return Err(Error::TrivialProfile);
    }
    // m(i) = least (column − 1) over nonzero entries in rows ≥ i, 1-based;
    // computed by a suffix scan. usize::MAX stands for "no entry".
    let mut min_col = vec![usize::MAX; size + 1];
    for i in (0..size).rev() {
        // 0-based position = 1-based column − 1, which is exactly m(i).
        let row_min = support[i].iter().position(|&nz| nz).unwrap_or(usize::MAX);
        min_col[i] = min_col[i + 1].min(row_min);
    }
    let mut f = Vec::with_capacity(size);
    for i in 1..=size {
        let mi = min_col[i - 1];
        let fi = if strictly_upper { mi.min(n + 1) } else { mi.min(i - 1) };
        f.push(fi);
    }
    let orientation = if strictly_upper { Orientation::Upper } else { Orientation::Lower };
    Profile::from_heights(n, orientation, f)
}

/// Extract the 0/1 support pattern of a matrix.
pub fn support_pattern<F: Field>(m: &MatrixExact<F>) -> Vec<Vec<bool>> {
    let field = m.field().clone();
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| !field.is_zero(m.at(r, c))).collect())
        .collect()
}

/// The corners of the staircase — DOWN-RIGHT adjacencies — listed from
/// upper-left to bottom-right.
pub fn pivotal_entries(p: &Profile) -> Vec<PivotalEntry> {
    let n = p.n();
    let f = p.heights();
    let mut out = Vec::new();
    for i in 1..=n + 1 {
        // The path turns right immediately after the i-th DOWN exactly when
        // the next height is larger; the sentinel height past the last DOWN
        // is N+1 (trailing RIGHTs).
        let next = if i == n + 1 { n + 1 } else { f[i] };
        if next > f[i - 1] {
            out.push(PivotalEntry { row: i, col: f[i - 1] + 1 });
        }
    }
    out
}

/// Does entry a outweigh entry b? (1-based indices in [N+1]².)
///
/// a outweighs b exactly when wt(b) ∈ wt(a) + O⁺ and wt(a) ≠ wt(b), i.e. b's
/// weight vector dominates a's componentwise and they differ — so dropping b
/// from a weight set never changes the corner polyhedron while a is present.
pub fn outweighs(a: (usize, usize), b: (usize, usize), n: usize) -> bool {
    let wa = entry_weight(a.0, a.1, n);
    let wb = entry_weight(b.0, b.1, n);
    wa != wb && wb.iter().zip(&wa).all(|(x, y)| x >= y)
}

/// Nonzero entries minimal under the outweighing order (1-based indices,
/// row-major order). These are the entries whose weight vectors are the
/// vertices of the corner polyhedron.
///
/// # Errors
/// `TrivialProfile` if the matrix is zero.
pub fn minimal_entries<F: Field>(m: &MatrixExact<F>) -> Result<Vec<(usize, usize)>> {
    assert!(m.is_square(), "minimal_entries requires a square matrix");
    let n = m.rows() - 1;
    let support = support_pattern(m);
    let nonzeros: Vec<(usize, usize)> = (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r + 1, c + 1)))
        .filter(|&(r, c)| support[r - 1][c - 1])
        .collect();
    if nonzeros.is_empty() {
        return Err(Error::TrivialProfile);
    }
    Ok(nonzeros
        .iter()
        .copied()
        .filter(|&e| !nonzeros.iter().any(|&other| outweighs(other, e, n)))
        .collect())
}

impl ControlMatrix {
    /// Assemble and validate: each column all-zero (then it must be the only
    /// column) or a single contiguous ±1 block; signs uniform across columns;
    /// block starts and ends strictly increasing.
    pub fn new(n_rows: usize, columns: Vec<WeightVector>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::input("control matrix needs at least one column"));
        }
        let mut sign: Option<i64> = None;
        let mut prev_block: Option<(usize, usize)> = None;
        for col in &columns {
            if col.len() != n_rows {
                return Err(Error::input("control matrix column has wrong length"));
            }
            match block_of(col)? {
                None => {
                    if columns.len() != 1 {
                        return Err(Error::input(
                            "all-zero control column only allowed as the single column",
                        ));
                    }
                }
                Some((start, end, s)) => {
                    if *sign.get_or_insert(s) != s {
                        return Err(Error::input("control matrix mixes block signs"));
                    }
                    if let Some((ps, pe)) = prev_block {
                        if start <= ps || end <= pe {
                            return Err(Error::input(
                                "control matrix columns out of canonical order",
                            ));
                        }
                    }
                    prev_block = Some((start, end));
                }
            }
        }
        Ok(ControlMatrix { n_rows, columns })
    }

    /// Number of rows N.
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    /// Vertex columns in canonical order.
    pub fn columns(&self) -> &[WeightVector] {
        &self.columns
    }
}

/// The (start, end, sign) of a column's contiguous ±1 block in 1-based row
/// indices, or None for the zero column. Errors on anything else.
fn block_of(col: &[i64]) -> Result<Option<(usize, usize, i64)>> {
    let nonzero: Vec<usize> = (0..col.len()).filter(|&k| col[k] != 0).collect();
    let Some((&first, &last)) = nonzero.first().zip(nonzero.last()) else {
        return Ok(None);
    };
    let s = col[first];
    if s != 1 && s != -1 {
        return Err(Error::input("control column entries must lie in {−1,0,+1}"));
    }
    if nonzero.len() != last - first + 1 || nonzero.iter().any(|&k| col[k] != s) {
        return Err(Error::input("control column must be a single contiguous ±1 block"));
    }
    Ok(Some((first + 1, last + 1, s)))
}

/// The control matrix of a nonzero matrix: the vertices of its corner
/// polyhedron as columns.
///
/// Upper-triangular matrices with a nonzero diagonal entry have the orthant
/// as corner polyhedron; its single vertex is the origin, encoded as one
/// all-zero column. Every other matrix gets one column per off-diagonal
/// pivotal entry, namely that entry's weight vector, in canonical order.
///
/// # Errors
/// `TrivialProfile` if the matrix is zero.
pub fn control_matrix<F: Field>(m: &MatrixExact<F>) -> Result<ControlMatrix> {
    control_matrix_of_support(&support_pattern(m))
}

/// Control matrix from a 0/1 support pattern.
pub fn control_matrix_of_support(support: &[Vec<bool>]) -> Result<ControlMatrix> {
    let p = profile_of_support(support)?;
    let n = p.n();
    let columns: Vec<WeightVector> = pivotal_entries(&p)
        .into_iter()
        .filter(|e| e.row != e.col)
        .map(|e| entry_weight(e.row, e.col, n))
        .collect();
    if columns.is_empty() {
        // All pivotal entries diagonal ⇔ upper-triangular with nonzero
        // diagonal; the polyhedron is the orthant with vertex 0.
        return ControlMatrix::new(n, vec![vec![0; n]]);
    }
    ControlMatrix::new(n, columns)
}

/// All profiles for a given N: every lower staircase word and every
/// nontrivial upper one (the all-RIGHTs-first upper word belongs to the zero
/// matrix only and is excluded). Sorted lexicographically with DOWN < RIGHT,
/// so lower profiles come first. Count: 2·C(N+1) − 1 (Catalan).
pub fn enumerate_profiles(n: usize) -> Vec<Profile> {
    let mut out = Vec::new();
    let mut heights = Vec::with_capacity(n + 1);
    gather_heights(n, Orientation::Lower, &mut heights, &mut out);
    gather_heights(n, Orientation::Upper, &mut heights, &mut out);
    out.sort_by(|a, b| a.word().cmp(&b.word()));
    out
}

fn gather_heights(
    n: usize,
    orientation: Orientation,
    partial: &mut Vec<usize>,
    out: &mut Vec<Profile>,
) {
    if partial.len() == n + 1 {
        // from_heights rejects exactly the trivial upper profile.
        if let Ok(p) = Profile::from_heights(n, orientation, partial.clone()) {
            out.push(p);
        }
        return;
    }
    let i = partial.len() + 1;
    let floor = partial.last().copied().unwrap_or(0);
    let (lo, hi) = match orientation {
        Orientation::Lower => (floor, i - 1),
        Orientation::Upper => (floor.max(i), n + 1),
    };
    for fi in lo..=hi {
        partial.push(fi);
        gather_heights(n, orientation, partial, out);
        partial.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn mat(data: &[&[i64]]) -> MatrixExact<Rationals> {
        MatrixExact::from_i64(Rationals, data)
    }

    #[test]
    fn zero_matrix_is_trivial() {
        let z = MatrixExact::zero(Rationals, 3, 3);
        assert!(matches!(profile(&z), Err(Error::TrivialProfile)));
        assert!(matches!(minimal_entries(&z), Err(Error::TrivialProfile)));
        assert!(matches!(control_matrix(&z), Err(Error::TrivialProfile)));
    }

    #[test]
    fn staircase_for_upper_triangular_with_diagonal() {
        // Any upper-triangular matrix with a nonzero diagonal entry hugs the
        // diagonal: (DOWN RIGHT)^{N+1}.
        let m = mat(&[&[1, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let p = profile(&m).unwrap();
        assert_eq!(p.orientation(), Orientation::Lower);
        assert_eq!(p.word_string(), "DRDRDR");
        let piv = pivotal_entries(&p);
        assert_eq!(
            piv,
            vec![
                PivotalEntry { row: 1, col: 1 },
                PivotalEntry { row: 2, col: 2 },
                PivotalEntry { row: 3, col: 3 }
            ]
        );
    }

    #[test]
    fn single_superdiagonal_entry_n1() {
        let m = mat(&[&[0, 1], &[0, 0]]);
        let p = profile(&m).unwrap();
        assert_eq!(p.orientation(), Orientation::Upper);
        assert_eq!(p.word_string(), "RDRD");
        assert_eq!(pivotal_entries(&p), vec![PivotalEntry { row: 1, col: 2 }]);
    }

    #[test]
    fn single_subdiagonal_entry_n1() {
        let m = mat(&[&[0, 0], &[1, 0]]);
        let p = profile(&m).unwrap();
        assert_eq!(p.orientation(), Orientation::Lower);
        assert_eq!(p.word_string(), "DDRR");
        assert_eq!(pivotal_entries(&p), vec![PivotalEntry { row: 2, col: 1 }]);
    }

    #[test]
    fn elaborate_lower_example_n7() {
        // 8×8, nonzeros at (3,1), (5,2), (8,7).
        let mut m = MatrixExact::zero(Rationals, 8, 8);
        for (r, c) in [(3, 1), (5, 2), (8, 7)] {
            m.set(r - 1, c - 1, crate::field::rat(1));
        }
        let p = profile(&m).unwrap();
        assert_eq!(p.orientation(), Orientation::Lower);
        assert_eq!(p.heights(), &[0, 0, 0, 1, 1, 5, 6, 6]);
        assert_eq!(p.word_string(), "DDDRDDRRRRDRDDRR");
        let piv = pivotal_entries(&p);
        let coords: Vec<(usize, usize)> = piv.iter().map(|e| (e.row, e.col)).collect();
        assert_eq!(coords, vec![(3, 1), (5, 2), (6, 6), (8, 7)]);

        let ctrl = control_matrix(&m).unwrap();
        assert_eq!(ctrl.n_rows(), 7);
        assert_eq!(
            ctrl.columns(),
            &[
                vec![-1, -1, 0, 0, 0, 0, 0],
                vec![0, -1, -1, -1, 0, 0, 0],
                vec![0, 0, 0, 0, 0, 0, -1]
            ]
        );
    }

    #[test]
    fn strictly_upper_example_5x5() {
        // 5×5, nonzeros at (1,3), (2,4).
        let mut m = MatrixExact::zero(Rationals, 5, 5);
        for (r, c) in [(1, 3), (2, 4)] {
            m.set(r - 1, c - 1, crate::field::rat(1));
        }
        let p = profile(&m).unwrap();
        assert_eq!(p.orientation(), Orientation::Upper);
        assert_eq!(p.heights(), &[2, 3, 5, 5, 5]);
        assert_eq!(p.word_string(), "RRDRDRRDDD");
        let coords: Vec<(usize, usize)> =
            pivotal_entries(&p).iter().map(|e| (e.row, e.col)).collect();
        assert_eq!(coords, vec![(1, 3), (2, 4)]);

        let ctrl = control_matrix(&m).unwrap();
        assert_eq!(ctrl.columns(), &[vec![1, 1, 0, 0], vec![0, 1, 1, 0]]);
    }

    #[test]
    fn outweighing_examples_n3() {
        // Below-diagonal entry dominates everything on or above the diagonal
        // and the shallower below-diagonal entries it covers.
        assert!(outweighs((4, 2), (4, 3), 3));
        assert!(outweighs((4, 2), (3, 2), 3));
        for d in 1..=4 {
            assert!(outweighs((4, 2), (d, d), 3));
        }
        assert!(outweighs((4, 2), (1, 4), 3));
        // Diagonal entries dominate everything strictly above the diagonal.
        assert!(outweighs((2, 2), (1, 2), 3));
        assert!(outweighs((2, 2), (3, 4), 3));
        assert!(!outweighs((2, 2), (3, 3), 3)); // equal weights never outweigh
        // Above-diagonal entries dominate exactly the above-diagonal entries
        // whose +1-block contains theirs: (2,4) covers only (1,4).
        assert!(outweighs((2, 4), (1, 4), 3));
        assert!(!outweighs((2, 4), (3, 4), 3));
        assert!(!outweighs((2, 4), (4, 4), 3));
        // Irreflexivity.
        assert!(!outweighs((4, 2), (4, 2), 3));
        assert!(!outweighs((2, 4), (2, 4), 3));
    }

    #[test]
    fn outweighing_is_a_strict_partial_order() {
        let n = 3;
        let entries: Vec<(usize, usize)> =
            (1..=n + 1).flat_map(|i| (1..=n + 1).map(move |j| (i, j))).collect();
        for &a in &entries {
            assert!(!outweighs(a, a, n));
            for &b in &entries {
                if outweighs(a, b, n) {
                    assert!(!outweighs(b, a, n), "antisymmetry failed at {a:?} {b:?}");
                    for &c in &entries {
                        if outweighs(b, c, n) {
                            assert!(outweighs(a, c, n), "transitivity failed");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_entries_three_shapes() {
        // Upper-triangular with nonzero diagonal: the diagonal nonzeros.
        let m = mat(&[&[1, 1, 0], &[0, 0, 1], &[0, 0, 2]]);
        assert_eq!(minimal_entries(&m).unwrap(), vec![(1, 1), (3, 3)]);
        // Not upper-triangular: below-diagonal pivotal entries.
        let m = mat(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(minimal_entries(&m).unwrap(), vec![(2, 1), (3, 2)]);
        // Strictly upper-triangular: all pivotal entries.
        let m = mat(&[&[0, 1], &[0, 0]]);
        assert_eq!(minimal_entries(&m).unwrap(), vec![(1, 2)]);
    }

    #[test]
    fn control_matrix_orthant_case() {
        let m = mat(&[&[1, 5, 7], &[0, 2, 0], &[0, 0, 3]]);
        let ctrl = control_matrix(&m).unwrap();
        assert_eq!(ctrl.columns(), &[vec![0, 0]]);
    }

    #[test]
    fn control_matrix_lower_stair_n2() {
        let m = mat(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let ctrl = control_matrix(&m).unwrap();
        assert_eq!(ctrl.columns(), &[vec![-1, 0], vec![0, -1]]);
    }

    #[test]
    fn enumerate_profile_counts() {
        assert_eq!(enumerate_profiles(1).len(), 3);
        assert_eq!(enumerate_profiles(2).len(), 9);
        assert_eq!(enumerate_profiles(3).len(), 27);
    }

    #[test]
    fn enumerate_profiles_sorted_and_unique() {
        for n in 1..=4 {
            let ps = enumerate_profiles(n);
            let words: Vec<Vec<Step>> = ps.iter().map(|p| p.word()).collect();
            let mut sorted = words.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(words, sorted, "output must be sorted and duplicate-free");
            for p in &ps {
                match p.orientation() {
                    Orientation::Lower => assert_eq!(p.word()[0], Step::Down),
                    Orientation::Upper => assert_eq!(p.word()[0], Step::Right),
                }
            }
        }
    }

    #[test]
    fn every_support_profile_is_enumerated_n2() {
        use std::collections::HashSet;
        let listed: HashSet<(String, bool)> = enumerate_profiles(2)
            .iter()
            .map(|p| (p.word_string(), p.orientation() == Orientation::Upper))
            .collect();
        let mut seen = HashSet::new();
        for bits in 1u32..(1 << 9) {
            let support: Vec<Vec<bool>> =
                (0..3).map(|r| (0..3).map(|c| bits >> (3 * r + c) & 1 == 1).collect()).collect();
            let p = profile_of_support(&support).unwrap();
            let key = (p.word_string(), p.orientation() == Orientation::Upper);
            assert!(listed.contains(&key), "profile {key:?} missing from enumeration");
            seen.insert(key);
        }
        // Every enumerated profile is realized by some support.
        assert_eq!(seen.len(), listed.len());
    }

    #[test]
    fn word_round_trip() {
        for n in 1..=4 {
            for p in enumerate_profiles(n) {
                let back = Profile::from_word(&p.word(), p.orientation()).unwrap();
                assert_eq!(back, p);
            }
        }
    }
}
