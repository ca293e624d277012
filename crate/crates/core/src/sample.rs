//! Reproducible random sampling for rank computations, invariance trials and
//! property checks.
//!
//! Points are rationals with numerators in [-99, 99] and denominators in
//! [1, 9], drawn from a ChaCha stream cipher seeded with a caller-supplied
//! 64-bit seed, so every verification run is replayable.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::{Monomial, MultiPoly};
use crate::rational::{rat, BigRational};
use crate::vars::VarId;

pub const DEFAULT_SEED: u64 = 42;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One random rational with numerator in [-99, 99], denominator in [1, 9].
pub fn random_rational(rng: &mut impl Rng) -> BigRational {
    rat(rng.gen_range(-99..=99), rng.gen_range(1..=9))
}

/// Same distribution, but never zero. Useful for diagonal group entries.
pub fn random_nonzero_rational(rng: &mut impl Rng) -> BigRational {
    loop {
        let r = random_rational(rng);
        if !num::Zero::is_zero(&r) {
            return r;
        }
    }
}

/// Assigns an independent random rational to every listed variable.
pub fn random_point(rng: &mut impl Rng, vars: &BTreeSet<VarId>) -> BTreeMap<VarId, BigRational> {
    vars.iter().map(|&v| (v, random_rational(rng))).collect()
}

/// Random sparse polynomial in the x_ij variables of an n-by-n lower
/// triangle, with up to `max_terms` terms of degree at most `max_deg` per
/// variable pair, and small integer coefficients.
pub fn random_poly(rng: &mut impl Rng, n: u32, max_terms: usize, max_deg: u32) -> MultiPoly {
    let mut pool = Vec::new();
    for i in 1..=n {
        for j in 1..i {
            pool.push(VarId::x(i, j));
        }
    }
    let terms = rng.gen_range(0..=max_terms);
    let mut p = MultiPoly::zero();
    for _ in 0..terms {
        let nvars = rng.gen_range(0..=2usize);
        let mut pairs = Vec::new();
        for _ in 0..nvars {
            let v = pool[rng.gen_range(0..pool.len())];
            pairs.push((v, rng.gen_range(1..=max_deg)));
        }
        let c = rat(rng.gen_range(-9..=9), 1);
        p = p.add(&MultiPoly::from_terms([(Monomial::from_pairs(&pairs), c)]));
    }
    p
}
