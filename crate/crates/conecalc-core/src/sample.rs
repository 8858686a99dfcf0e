//! Seeded random generation of forms and sums of squares.
//!
//! PRNG: ChaCha12 seeded from a 64-bit value, with the stream index carrying
//! the per-trial split, so batches are reproducible across platforms and
//! trials are independent of evaluation order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::Error;
use crate::poly::{monomials, HomoForm};
use crate::rational::{rat, Rat};
use crate::sphere;

/// RNG for trial `stream` of the batch identified by `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random nonzero form of degree d with integer coefficients in [-3, 3].
pub fn random_form(n: usize, d: u32, rng: &mut ChaCha12Rng) -> HomoForm {
    let basis = monomials(n, d);
    loop {
        let f = HomoForm::from_terms(
            n,
            d,
            basis
                .iter()
                .map(|e| (e.clone(), rat(rng.gen_range(-3i64..=3)))),
        );
        if !f.is_zero() {
            return f;
        }
    }
}

/// Sum of squares of the given degree-k forms, exactly normalized to
/// integral 1 on the sphere.
pub fn sos_from_parts(parts: &[HomoForm]) -> Result<HomoForm, Error> {
    assert!(!parts.is_empty());
    let n = parts[0].dim();
    let d = parts[0].degree();
    let mut acc = HomoForm::zero(n, 2 * d);
    for g in parts {
        acc = acc.add(&g.multiply(g)?);
    }
    let total = sphere::integral(&acc);
    if total == Rat::from_integer(0.into()) {
        return Err(Error::ZeroIntegral);
    }
    Ok(acc.scale(&(Rat::from_integer(1.into()) / total)))
}

/// Seeded random sum of `terms` squares of degree-k forms, normalized to
/// integral 1. Deterministic per (seed, stream).
pub fn sample_sos(n: usize, k: u32, terms: u32, seed: u64) -> HomoForm {
    sample_sos_stream(n, k, terms, seed, 0)
}

/// As `sample_sos`, drawing from the given per-trial stream.
pub fn sample_sos_stream(n: usize, k: u32, terms: u32, seed: u64, stream: u64) -> HomoForm {
    assert!(terms >= 1);
    let mut rng = trial_rng(seed, stream);
    let parts: Vec<HomoForm> = (0..terms).map(|_| random_form(n, k, &mut rng)).collect();
    sos_from_parts(&parts).expect("nonzero squares have positive integral")
}
