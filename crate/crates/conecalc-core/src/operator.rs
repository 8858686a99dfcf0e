//! The averaging operator T_{2m,2k}, the zonal expansion of x_n^{2k}, and the
//! volume-ratio bound it yields.
//!
//! T_{2m,2k} averages a degree-2k form against <x,v>^{2m} and acts diagonally
//! on harmonic levels, shrinking level 2i by
//! c_i = m! Gamma((2m+n)/2) / ((m-i)! Gamma((2m+2i+n)/2)). All Gamma ratios
//! here have integer step, so every coefficient is an exact rational.

use num_traits::One;

use crate::error::Error;
use crate::harmonic::{self, dim_harmonics, harmonic_decompose};
use crate::poly::{monomials, Exponent, HomoForm};
use crate::rational::{ceil_rat, factorial, rat, ratio, Rat};
use crate::sphere::monomial_sphere_integral;

/// Gamma(x + steps) / Gamma(x) for x = half/2, telescoped to a rational:
/// prod_{j=0}^{steps-1} (half/2 + j).
pub(crate) fn gamma_ratio_half(half: i64, steps: u32) -> Rat {
    let mut acc = Rat::one();
    for j in 0..steps as i64 {
        acc *= ratio(half + 2 * j, 2);
    }
    acc
}

/// The operator T_{2m,2k} as its per-level diagonal coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSpec {
    pub n: usize,
    pub k: u32,
    pub m: u64,
    /// coeffs[i] multiplies the level-2i component, i = 0..=k.
    pub coeffs: Vec<Rat>,
}

/// Diagonal coefficients of T_{2m,2k}:
/// c_i = prod_{s=0}^{i-1} (m - s) / ((2m + n)/2 + s).
pub fn t_coefficients(n: usize, k: u32, m: u64) -> Result<OperatorSpec, Error> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if k < 1 || m < k as u64 {
        return Err(Error::BadDegrees { k, m });
    }
    let mut coeffs = Vec::with_capacity(k as usize + 1);
    let mut acc = Rat::one();
    coeffs.push(acc.clone());
    for s in 0..k as i64 {
        let m = m as i64;
        acc *= rat(m - s) / ratio(2 * m + n as i64 + 2 * s, 2);
        coeffs.push(acc.clone());
    }
    Ok(OperatorSpec { n, k, m, coeffs })
}

/// Apply the diagonal form of T_{2m,2k} to a degree-2k form.
pub fn apply_t(spec: &OperatorSpec, f: &HomoForm) -> Result<HomoForm, Error> {
    if f.dim() != spec.n {
        return Err(Error::DimensionMismatch(spec.n, f.dim()));
    }
    if f.degree() != 2 * spec.k {
        return Err(Error::DegreeMismatch(2 * spec.k, f.degree()));
    }
    let n = spec.n;
    let parts = harmonic_decompose(f);
    let mut out = HomoForm::zero(n, f.degree());
    for (pos, h) in parts.parts().iter().enumerate() {
        let level = f.degree() - 2 * pos as u32;
        let i = (level / 2) as usize;
        let lifted = HomoForm::r2k(n, pos as u32)
            .multiply(h)
            .expect("same dimension")
            .scale(&spec.coeffs[i]);
        out = out.add(&lifted);
    }
    Ok(out)
}

/// T_{2m,2k} straight from its integral definition, evaluated by exact
/// symbolic integration: (T f)(x) = integral of f(v) <x,v>^{2m} dsigma(v)
/// divided by integral of x_n^{2m}. The result has degree 2m; on the sphere
/// it equals the diagonal output lifted by r^{2(m-k)}.
pub fn apply_t_integral(spec: &OperatorSpec, f: &HomoForm) -> Result<HomoForm, Error> {
    if f.dim() != spec.n {
        return Err(Error::DimensionMismatch(spec.n, f.dim()));
    }
    if f.degree() != 2 * spec.k {
        return Err(Error::DegreeMismatch(2 * spec.k, f.degree()));
    }
    let n = spec.n;
    let two_m = 2 * spec.m as u32;
    let mut axial = vec![0u32; n];
    axial[n - 1] = two_m;
    let normalizer = monomial_sphere_integral(&Exponent::new(axial))?;
    let factorial_2m = factorial(two_m as u64);
    let mut out = HomoForm::zero(n, two_m);
    for beta in monomials(n, two_m) {
        // multinomial(2m; beta)
        let mut multinomial = Rat::from_integer(factorial_2m.clone());
        for &b in beta.as_slice() {
            multinomial /= Rat::from_integer(factorial(b as u64));
        }
        // integral over v of f(v) v^beta
        let mut moment = Rat::from_integer(0.into());
        for (alpha, c) in f.terms() {
            moment += c * monomial_sphere_integral(&alpha.combine(&beta))?;
        }
        out = out.add(&HomoForm::monomial(
            n,
            beta,
            multinomial * moment / &normalizer,
        ));
    }
    Ok(out)
}

/// The zonal expansion of the normalized axial power:
/// x_n^{2k} / integral(x_n^{2k}) = sum_l c_l N(n,2l) r^{2k-2l} L_{n,2l},
/// assembled from the T_{2k,2k} coefficients and the Legendre harmonics.
pub fn power_expansion(n: usize, k: u32) -> HomoForm {
    assert!(n >= 2 && k >= 1);
    let spec = t_coefficients(n, k, k as u64).expect("valid degrees");
    let mut acc = HomoForm::zero(n, 2 * k);
    for l in 0..=k {
        let zonal = harmonic::legendre_harmonic(n, 2 * l);
        let coeff = &spec.coeffs[l as usize] * rat(dim_harmonics(n, 2 * l) as i64);
        let lifted = HomoForm::r2k(n, k - l)
            .multiply(&zonal)
            .expect("same dimension")
            .scale(&coeff);
        acc = acc.add(&lifted);
    }
    acc
}

/// The normalized axial power x_n^{2k} / integral(x_n^{2k}) itself, used as
/// the reference side of the expansion identity.
pub fn normalized_axial_power(n: usize, k: u32) -> HomoForm {
    let mut exps = vec![0u32; n];
    exps[n - 1] = 2 * k;
    let alpha = Exponent::new(exps);
    let scale = Rat::one() / monomial_sphere_integral(&alpha).expect("n >= 2");
    HomoForm::monomial(n, alpha, scale)
}

/// Lower bound on the per-dimension volume ratio of K(2m) against the
/// nonnegative cone: the level-2k shrink factor c_k of T_{2m,2k}.
/// Strictly increasing in m, approaching 1.
pub fn volume_ratio_bound(n: usize, k: u32, m: u64) -> Result<Rat, Error> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if k < 1 || m < k as u64 {
        return Err(Error::BadDegrees { k, m });
    }
    let mut acc = Rat::one();
    for s in 0..k as i64 {
        let m = m as i64;
        acc *= ratio(2 * (m - s), 2 * m + n as i64 + 2 * s);
    }
    Ok(acc)
}

/// Smallest integer m = ceil((2k^2 + kn)/epsilon) guaranteeing a volume-ratio
/// bound of at least 1 - epsilon.
pub fn degree_for_epsilon(n: usize, k: u32, epsilon: &Rat) -> Result<u64, Error> {
    use num_traits::{Signed, ToPrimitive};
    if !epsilon.is_positive() || epsilon > &Rat::one() {
        return Err(Error::BadEpsilon);
    }
    let numerator = rat(2 * (k as i64) * (k as i64) + k as i64 * n as i64);
    let m = ceil_rat(&(numerator / epsilon))
        .to_u64()
        .ok_or(Error::BadEpsilon)?;
    Ok(m.max(k as u64))
}
