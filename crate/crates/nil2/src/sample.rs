//! Seeded sample generation for randomized certificates and test sweeps.
//!
//! A tiny SplitMix64 generator keeps every randomized check reproducible from
//! an explicit seed, with no dependence on platform or external crates.

use crate::algebra::{AlgebraPresentation, Element};
use crate::mat::RatMatrix;
use crate::rat::{rat, Rat};
use num_traits::Zero;

/// SplitMix64. Deterministic, seedable, good enough for sampling test data.
#[derive(Debug, Clone)]
pub struct Rng64 {
    state: u64,
}

impl Rng64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in `0..n`. The modulo bias is irrelevant for the
    /// small ranges used here.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Inclusive integer range.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// A rational with |numerator| <= max_num and denominator <= max_den.
    pub fn rat(&mut self, max_num: i64, max_den: i64) -> Rat {
        rat(self.int_in(-max_num, max_num), self.int_in(1, max_den))
    }
}

/// Random dense matrix with entries of bounded height.
pub fn rat_matrix(rng: &mut Rng64, rows: usize, cols: usize, height: i64) -> RatMatrix {
    RatMatrix::from_fn(rows, cols, |_, _| rng.rat(height, height))
}

/// Random skew-symmetric matrix: free strictly-upper entries, mirrored.
pub fn skew_matrix(rng: &mut Rng64, n: usize, height: i64) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.rat(height, height);
            m.set(i, j, v.clone());
            m.set(j, i, -v);
        }
    }
    m
}

/// Random presentation of shape `(n, m)`.
pub fn presentation(rng: &mut Rng64, n: usize, m: usize, height: i64) -> AlgebraPresentation {
    let forms = (0..m).map(|_| skew_matrix(rng, n, height)).collect();
    AlgebraPresentation::new(n, m, forms).expect("shape is consistent by construction")
}

/// Random invertible square matrix, by rejection.
pub fn invertible_matrix(rng: &mut Rng64, n: usize, height: i64) -> RatMatrix {
    if n == 0 {
        return RatMatrix::zeros(0, 0);
    }
    loop {
        let m = rat_matrix(rng, n, n, height);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random presentation with nonsingular surjective bracket form, resampling
/// shape and entries until both structural flags hold.
pub fn commutator_center_presentation(
    rng: &mut Rng64,
    max_n: usize,
    max_m: usize,
    height: i64,
) -> AlgebraPresentation {
    loop {
        let n = 1 + rng.below(max_n as u64) as usize;
        let m = 1 + rng.below(max_m as u64) as usize;
        let p = presentation(rng, n, m, height);
        if p.commutator_equals_center() {
            return p;
        }
    }
}

/// Random element conforming to `p`.
pub fn element(rng: &mut Rng64, p: &AlgebraPresentation, height: i64) -> Element {
    Element::new(
        (0..p.n()).map(|_| rng.rat(height, height)).collect(),
        (0..p.m()).map(|_| rng.rat(height, height)).collect(),
    )
}

/// How the first column (the image of the distinguished central generator)
/// of a sampled endomorphism is constrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TColumn {
    Free,
    NonZero,
    Zero,
}

/// Random endomorphism of an (m+1)-dimensional center, with the image of the
/// first coordinate forced nonzero or zero on request.
pub fn extended_w_endo(rng: &mut Rng64, m_ext: usize, height: i64, t: TColumn) -> RatMatrix {
    assert!(m_ext >= 1);
    loop {
        let mut psi = rat_matrix(rng, m_ext, m_ext, height);
        match t {
            TColumn::Free => return psi,
            TColumn::NonZero => {
                if (0..m_ext).any(|i| !psi.at(i, 0).is_zero()) {
                    return psi;
                }
            }
            TColumn::Zero => {
                for i in 0..m_ext {
                    psi.set(i, 0, Rat::zero());
                }
                return psi;
            }
        }
    }
}
