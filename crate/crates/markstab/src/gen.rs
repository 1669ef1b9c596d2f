//! Deterministic seeded generation of random test data.
//!
//! Every randomized suite in the crate draws from [`Rand`], a thin wrapper
//! over a counter-based stream cipher seeded from a single `u64`, so any
//! reported seed reproduces a run exactly, on every platform.

use num::rational::BigRational;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::field::{Field, PrimeField, Rationals};
use crate::matrix::MatrixExact;

/// A seeded deterministic random source.
pub struct Rand {
    rng: ChaCha8Rng,
}

impl Rand {
    pub fn new(seed: u64) -> Self {
        Rand {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform in `[0, n)` (rejection sampling, n ≥ 1).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n >= 1);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.rng.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn i64_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Uniform prime-field element.
    pub fn gf_element(&mut self, field: &PrimeField) -> u64 {
        self.below(field.modulus())
    }

    /// Uniform nonzero vector over GF(p).
    pub fn gf_vector_nonzero(&mut self, field: &PrimeField, len: usize) -> Vec<u64> {
        loop {
            let v: Vec<u64> = (0..len).map(|_| self.gf_element(field)).collect();
            if v.iter().any(|x| *x != 0) {
                return v;
            }
        }
    }

    /// Uniform nonzero n×n matrix over GF(p).
    pub fn gf_matrix_nonzero(&mut self, field: &PrimeField, n: usize) -> MatrixExact<PrimeField> {
        loop {
            let mut m = MatrixExact::zero(*field, n, n);
            for r in 0..n {
                for c in 0..n {
                    m.set(r, c, self.gf_element(field));
                }
            }
            if !m.is_zero() {
                return m;
            }
        }
    }

    /// Uniform invertible n×n matrix over GF(p) (rejection sampling).
    pub fn gf_matrix_invertible(&mut self, field: &PrimeField, n: usize) -> MatrixExact<PrimeField> {
        loop {
            let m = self.gf_matrix_nonzero(field, n);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// Uniform small integer as a rational, in `[−bound, bound]`.
    pub fn q_small(&mut self, bound: i64) -> BigRational {
        crate::field::rat(self.i64_in(-bound, bound))
    }

    /// Small-integer vector over ℚ, nonzero.
    pub fn q_vector_nonzero(&mut self, len: usize, bound: i64) -> Vec<BigRational> {
        loop {
            let v: Vec<BigRational> = (0..len).map(|_| self.q_small(bound)).collect();
            if v.iter().any(|x| !Rationals.is_zero(x)) {
                return v;
            }
        }
    }

    /// Small-integer n×n matrix over ℚ, nonzero.
    pub fn q_matrix_nonzero(&mut self, n: usize, bound: i64) -> MatrixExact<Rationals> {
        loop {
            let m = self.q_matrix(n, bound);
            if !m.is_zero() {
                return m;
            }
        }
    }

    /// Small-integer n×n matrix over ℚ (possibly zero).
    pub fn q_matrix(&mut self, n: usize, bound: i64) -> MatrixExact<Rationals> {
        let mut m = MatrixExact::zero(Rationals, n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, self.q_small(bound));
            }
        }
        m
    }

    /// Small-integer invertible n×n matrix over ℚ (retries until the
    /// determinant is nonzero; succeeds quickly for bound ≥ 1).
    pub fn q_matrix_invertible(&mut self, n: usize, bound: i64) -> MatrixExact<Rationals> {
        loop {
            let m = self.q_matrix(n, bound);
            if m.rank() == n {
                return m;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_are_reproducible() {
        let mut a = Rand::new(42);
        let mut b = Rand::new(42);
        for _ in 0..100 {
            assert_eq!(a.below(1000), b.below(1000));
        }
        let mut c = Rand::new(43);
        let first: Vec<u64> = (0..10).map(|_| Rand::new(42).below(1 << 30)).collect();
        assert!(first.iter().all(|x| *x == first[0]));
        // A different seed diverges somewhere in the first few draws.
        let a_run: Vec<u64> = (0..10).map(|_| a.below(1 << 30)).collect();
        let c_run: Vec<u64> = (0..10).map(|_| c.below(1 << 30)).collect();
        assert_ne!(a_run, c_run);
    }

    #[test]
    fn generators_respect_their_constraints() {
        let f = PrimeField::new(5).unwrap();
        let mut r = Rand::new(7);
        for _ in 0..50 {
            let v = r.gf_vector_nonzero(&f, 3);
            assert_eq!(v.len(), 3);
            assert!(v.iter().any(|x| *x != 0));
            assert!(v.iter().all(|x| *x < 5));
            let m = r.gf_matrix_nonzero(&f, 3);
            assert!(!m.is_zero());
            let a = r.q_matrix_invertible(3, 2);
            assert_eq!(a.rank(), 3);
            let x = r.i64_in(-3, 3);
            assert!((-3..=3).contains(&x));
        }
    }
}
