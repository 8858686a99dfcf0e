//! Floating-point machinery for the sup-norm fallback: compiled form
//! evaluation and deterministic multi-start projected gradient search on the
//! unit sphere. Reported values are lower bounds by construction (each is
//! achieved at a point); no exactness is claimed on this path.

use crate::poly::HomoForm;
use crate::rational::rat_to_f64;

/// A form compiled to f64 coefficients, with precomputed gradients.
#[derive(Debug, Clone)]
pub struct CompiledForm {
    n: usize,
    terms: Vec<(f64, Vec<u32>)>,
    grads: Vec<Vec<(f64, Vec<u32>)>>,
}

impl CompiledForm {
    pub fn new(f: &HomoForm) -> Self {
        let n = f.dim();
        let terms: Vec<(f64, Vec<u32>)> = f
            .terms()
            .iter()
            .map(|(e, c)| (rat_to_f64(c), e.as_slice().to_vec()))
            .collect();
        let mut grads = vec![Vec::new(); n];
        for (c, exps) in &terms {
            for i in 0..n {
                let a = exps[i];
                if a > 0 {
                    let mut de = exps.clone();
                    de[i] -= 1;
                    grads[i].push((c * a as f64, de));
                }
            }
        }
        CompiledForm { n, terms, grads }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (c, exps) in &self.terms {
            let mut term = *c;
            for (i, &a) in exps.iter().enumerate() {
                for _ in 0..a {
                    term *= x[i];
                }
            }
            acc += term;
        }
        acc
    }

    pub fn gradient(&self, x: &[f64], out: &mut [f64]) {
        for (i, grad_terms) in self.grads.iter().enumerate() {
            let mut acc = 0.0;
            for (c, exps) in grad_terms {
                let mut term = *c;
                for (j, &a) in exps.iter().enumerate() {
                    for _ in 0..a {
                        term *= x[j];
                    }
                }
                acc += term;
            }
            out[i] = acc;
        }
    }
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
}

/// Radical-inverse (van der Corput) value of `index` in the given base.
fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let mut result = 0.0;
    let mut fraction = 1.0 / base as f64;
    while index > 0 {
        result += (index % base) as f64 * fraction;
        index /= base;
        fraction /= base as f64;
    }
    result
}

const HALTON_BASES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Deterministic start set: the signed coordinate axes followed by Halton
/// low-discrepancy points mapped to the sphere.
pub fn sphere_starts(n: usize, count: usize) -> Vec<Vec<f64>> {
    assert!(n <= HALTON_BASES.len(), "start generator supports n <= 8");
    let mut starts = Vec::with_capacity(count);
    for i in 0..n {
        for sign in [1.0, -1.0] {
            if starts.len() >= count {
                return starts;
            }
            let mut x = vec![0.0; n];
            x[i] = sign;
            starts.push(x);
        }
    }
    let mut index = 1u64;
    while starts.len() < count {
        let mut x: Vec<f64> = (0..n)
            .map(|i| 2.0 * radical_inverse(index, HALTON_BASES[i]) - 1.0)
            .collect();
        index += 1;
        let norm_sq: f64 = x.iter().map(|v| v * v).sum();
        if norm_sq < 1e-6 {
            continue;
        }
        normalize(&mut x);
        starts.push(x);
    }
    starts
}

/// One projected-gradient ascent/descent run with step halving.
fn local_search(f: &CompiledForm, start: &[f64], maximize: bool, iters: usize) -> (f64, Vec<f64>) {
    let n = f.dim();
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut x = start.to_vec();
    let mut value = f.eval(&x);
    let mut grad = vec![0.0; n];
    let mut step = 0.5;
    for _ in 0..iters {
        f.gradient(&x, &mut grad);
        let dot: f64 = grad.iter().zip(&x).map(|(g, v)| g * v).sum();
        let mut tangent: Vec<f64> = grad.iter().zip(&x).map(|(g, v)| g - dot * v).collect();
        let tangent_norm: f64 = tangent.iter().map(|v| v * v).sum::<f64>().sqrt();
        if tangent_norm < 1e-16 {
            break;
        }
        for t in tangent.iter_mut() {
            *t /= tangent_norm;
        }
        let mut accepted = false;
        while step > 1e-15 {
            let mut candidate: Vec<f64> = x
                .iter()
                .zip(&tangent)
                .map(|(v, t)| v + sign * step * t)
                .collect();
            normalize(&mut candidate);
            let cv = f.eval(&candidate);
            if sign * (cv - value) > 0.0 {
                x = candidate;
                value = cv;
                step = (step * 1.5).min(1.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (value, x)
}

/// Best value of f over the sphere found by deterministic multi-start
/// projected gradient search. Results reduce in start order, so the outcome
/// is identical run to run.
pub fn multistart_extremum(
    f: &HomoForm,
    maximize: bool,
    starts: usize,
    iters: usize,
) -> (f64, Vec<f64>) {
    let compiled = CompiledForm::new(f);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for start in sphere_starts(f.dim(), starts) {
        let (value, x) = local_search(&compiled, &start, maximize, iters);
        let better = match &best {
            None => true,
            Some((bv, _)) => {
                if maximize {
                    value > *bv
                } else {
                    value < *bv
                }
            }
        };
        if better {
            best = Some((value, x));
        }
    }
    best.expect("at least one start")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Exponent;
    use crate::rational::rat;

    #[test]
    fn starts_are_deterministic_and_unit() {
        let a = sphere_starts(3, 64);
        let b = sphere_starts(3, 64);
        assert_eq!(a.len(), 64);
        assert_eq!(a, b);
        for x in &a {
            let norm: f64 = x.iter().map(|v| v * v).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn finds_the_max_of_an_axial_quadratic() {
        // max of 3 x3^2 on the sphere is 3 at the poles
        let f = HomoForm::monomial(3, Exponent::new(vec![0, 0, 2]), rat(3));
        let (max, at) = multistart_extremum(&f, true, 64, 200);
        assert!((max - 3.0).abs() < 1e-9, "max found {max}");
        assert!((at[2].abs() - 1.0).abs() < 1e-6);
        let (min, _) = multistart_extremum(&f, false, 64, 200);
        assert!(min.abs() < 1e-9, "min found {min}");
    }

    #[test]
    fn finds_negative_values() {
        // r^2 - 10 (3 x3^2 - r^2)/2 takes the value 1 - 10 = -9 at the poles
        let legendre = crate::harmonic::legendre_harmonic(3, 2);
        let f = HomoForm::r2(3).sub(&legendre.scale(&rat(10)));
        let (min, _) = multistart_extremum(&f, false, 64, 200);
        assert!((min + 9.0).abs() < 1e-8, "min found {min}");
    }
}
