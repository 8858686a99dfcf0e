//! Independent validation of the closed-form monomial sphere integral.
//!
//! Two oracles, neither sharing code with the production formula:
//!  1. Monte Carlo integration over S^{n-1} (one million samples per index,
//!     agreement within three standard errors) on twenty seeded multi-indices;
//!  2. the exact axial value Gamma((2k+1)/2) Gamma(n/2) / (sqrt(pi)
//!     Gamma((n+2k)/2)), evaluated symbolically with half-integer Gamma
//!     bookkeeping so the sqrt(pi) factors cancel and the comparison is exact.

use conecalc_core::poly::Exponent;
use conecalc_core::rational::{rat, rat_to_f64, ratio, Rat};
use conecalc_core::sphere::monomial_sphere_integral;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Gamma(j/2) as (rational factor, power of sqrt(pi)), via Gamma(x+1)=x Gamma(x).
fn gamma_half(j: u64) -> (Rat, u32) {
    match j {
        0 => panic!("gamma of zero"),
        1 => (rat(1), 1),
        2 => (rat(1), 0),
        _ => {
            let (r, p) = gamma_half(j - 2);
            (r * ratio(j as i64 - 2, 2), p)
        }
    }
}

#[test]
fn axial_values_match_the_gamma_formula_exactly() {
    for n in 2..=6usize {
        for k in 1..=6u32 {
            let mut exps = vec![0u32; n];
            exps[n - 1] = 2 * k;
            let computed = monomial_sphere_integral(&Exponent::new(exps)).unwrap();

            let (g1, p1) = gamma_half(2 * k as u64 + 1);
            let (g2, p2) = gamma_half(n as u64);
            let (g3, p3) = gamma_half(n as u64 + 2 * k as u64);
            // sqrt(pi) powers: p1 + p2 on top, 1 + p3 below; they must cancel
            assert_eq!(p1 + p2, 1 + p3, "sqrt(pi) bookkeeping failed");
            let expected = g1 * g2 / g3;
            assert_eq!(computed, expected, "axial mismatch at n={n} k={k}");
        }
    }
}

fn standard_normal(rng: &mut ChaCha12Rng) -> f64 {
    // Box-Muller; u1 bounded away from zero
    let u1: f64 = rng.gen_range(1e-12..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

#[test]
fn monte_carlo_agrees_on_twenty_seeded_multi_indices() {
    const SAMPLES: usize = 1_000_000;
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    let mut checked = 0;
    while checked < 20 {
        let n = rng.gen_range(2..=4usize);
        // mixed parities: odd indices exercise the zero case
        let degree_budget = rng.gen_range(2..=8u32);
        let mut exps = vec![0u32; n];
        let mut remaining = degree_budget;
        for slot in exps.iter_mut().take(n - 1) {
            let a = rng.gen_range(0..=remaining);
            *slot = a;
            remaining -= a;
        }
        exps[n - 1] = remaining;
        let alpha = Exponent::new(exps.clone());
        let exact = rat_to_f64(&monomial_sphere_integral(&alpha).unwrap());

        let mut sum = 0.0f64;
        let mut sum_sq = 0.0f64;
        for _ in 0..SAMPLES {
            let mut x: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm < 1e-12 {
                continue;
            }
            for v in x.iter_mut() {
                *v /= norm;
            }
            let mut value = 1.0;
            for (i, &a) in exps.iter().enumerate() {
                for _ in 0..a {
                    value *= x[i];
                }
            }
            sum += value;
            sum_sq += value * value;
        }
        let mean = sum / SAMPLES as f64;
        let variance = (sum_sq / SAMPLES as f64 - mean * mean).max(0.0);
        let std_err = (variance / SAMPLES as f64).sqrt();
        let tolerance = 3.0 * std_err + 1e-12;
        assert!(
            (mean - exact).abs() <= tolerance,
            "alpha={exps:?} n={n}: monte carlo {mean} vs exact {exact} (3se={tolerance})"
        );
        checked += 1;
    }
}
