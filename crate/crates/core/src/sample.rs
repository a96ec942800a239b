//! Deterministic sampling for the falsification suites.
//!
//! The generator is SplitMix64 (Steele, Lea, Flood: the 64-bit finalizer
//! of Java's SplittableRandom): state advances by the golden-ratio
//! constant 0x9E3779B97F4A7C15 and each output mixes the state with two
//! multiply-xorshift rounds. Bounded draws are plain `next % bound`.
//! Anything reimplementing these two rules and the monomial enumeration
//! order below reproduces the sample sets bit for bit.

use crate::ffield::FieldSpec;
use crate::grid;
use crate::mpoly::{Monomial, MultiPoly};

/// SplitMix64. Seeding with the same value reproduces the stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// A draw in `0..bound` by modulo reduction.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        self.next_u64() % bound
    }
}

/// A random reduced polynomial of total degree at most `max_degree`.
///
/// One coefficient is drawn per reduced monomial; monomials are the
/// exponent vectors of `[0, q-1]^n` with sum at most `max_degree`,
/// enumerated in row-major order (last variable fastest).
pub fn random_reduced_poly(
    field: &FieldSpec,
    n: usize,
    max_degree: u32,
    rng: &mut SplitMix64,
) -> MultiPoly {
    let q = field.q();
    let mut terms: Vec<(crate::ffield::FieldElement, Monomial)> = Vec::new();
    grid::scan(q, n, |exps| {
        if exps.iter().map(|&e| e as u64).sum::<u64>() > max_degree as u64 {
            return;
        }
        let c = rng.below(q as u64) as u32;
        if c != 0 {
            terms.push((
                field.element(c).expect("c < q"),
                Monomial::new(exps.to_vec()),
            ));
        }
    });
    MultiPoly::from_terms(field, n, terms)
}

/// A random nonzero reduced polynomial of degree at most `max_degree`
/// (resamples on the zero draw).
pub fn random_nonzero_reduced_poly(
    field: &FieldSpec,
    n: usize,
    max_degree: u32,
    rng: &mut SplitMix64,
) -> MultiPoly {
    loop {
        let f = random_reduced_poly(field, n, max_degree, rng);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random reduced polynomial of total degree exactly `d` (resamples
/// until the top degree is hit; the miss probability is tiny).
pub fn random_reduced_poly_of_degree(
    field: &FieldSpec,
    n: usize,
    d: u32,
    rng: &mut SplitMix64,
) -> MultiPoly {
    loop {
        let f = random_reduced_poly(field, n, d, rng);
        if f.total_degree() == Some(d as u64) {
            return f;
        }
    }
}
