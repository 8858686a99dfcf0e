//! Exact integration over the unit sphere with the rotation-invariant
//! probability measure, inner products, and L^p norms of forms.
//!
//! Monomial integrals have the closed form
//! `prod_i (alpha_i - 1)!! / (n (n+2) ... (n + |alpha| - 2))` for even
//! multi-indices (zero otherwise), which keeps the whole pipeline rational.
//! The sup norm is exact on forms that are axially symmetric about e_n (via
//! the univariate meridian restriction) and a flagged numeric lower bound
//! otherwise.

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::harmonic;
use crate::numeric;
use crate::poly::{Exponent, HomoForm};
use crate::rational::{double_factorial, rat, rat_to_f64, Rat};
use crate::univariate;

/// Exact integral of the monomial x^alpha over S^{n-1} with the normalized
/// rotation-invariant measure.
pub fn monomial_sphere_integral(alpha: &Exponent) -> Result<Rat, Error> {
    let n = alpha.len();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if alpha.as_slice().iter().any(|&a| a % 2 == 1) {
        return Ok(Rat::zero());
    }
    let total = alpha.degree() as i64;
    let mut numer = num_bigint::BigInt::from(1);
    for &a in alpha.as_slice() {
        numer *= double_factorial(a as i64 - 1);
    }
    let mut denom = num_bigint::BigInt::from(1);
    let mut j = 0;
    while j < total {
        denom *= n as i64 + j;
        j += 2;
    }
    Ok(Rat::new(numer, denom))
}

/// Exact integral of a form over the sphere. Odd-degree forms integrate to 0.
pub fn integral(f: &HomoForm) -> Rat {
    let mut acc = Rat::zero();
    for (e, c) in f.terms() {
        acc += c * monomial_sphere_integral(e).expect("dimension checked by constructors");
    }
    acc
}

/// Exact inner product <f, g> = integral of fg over the sphere.
/// Requires equal degrees; callers compare forms of different degree by
/// lifting the lower-degree one with a power of r^2 first.
pub fn inner_product(f: &HomoForm, g: &HomoForm) -> Result<Rat, Error> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch(f.dim(), g.dim()));
    }
    if f.degree() != g.degree() && !f.is_zero() && !g.is_zero() {
        return Err(Error::DegreeMismatch(f.degree(), g.degree()));
    }
    Ok(integral(&f.multiply(g)?))
}

/// Exact squared L^2 norm.
pub fn l2_norm_sq(f: &HomoForm) -> Rat {
    inner_product(f, f).expect("same form")
}

/// Exact integral of f^{2l}, with a term budget on the expansion.
pub fn power_integral(f: &HomoForm, l: u32, term_budget: usize) -> Result<Rat, Error> {
    assert!(l >= 1);
    let expanded = f.pow_with_budget(2 * l, term_budget)?;
    Ok(integral(&expanded))
}

/// Options for the sup-norm computation.
#[derive(Debug, Clone)]
pub struct NormOptions {
    /// Absolute enclosure tolerance on the exact axial path.
    pub tol: f64,
    /// Multi-start count for the numeric fallback.
    pub starts: usize,
    /// Iteration cap per start.
    pub iters: usize,
    /// Term budget for even-power expansions.
    pub term_budget: usize,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions {
            tol: 1e-10,
            starts: 64,
            iters: 200,
            term_budget: 1_000_000,
        }
    }
}

/// How an extremum over the sphere was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremaMethod {
    /// Exact univariate restriction of an axially symmetric form; values
    /// carry certified enclosures below the configured tolerance.
    AxialExact,
    /// Multi-start projected gradient search; best found value only.
    MultiStart,
}

/// One extremum (max or min) of a form over the sphere.
#[derive(Debug, Clone)]
pub struct ExtremumReport {
    pub value: f64,
    pub point: Vec<f64>,
    /// Certified rational bounds on the true extremum (axial path only).
    pub enclosure: Option<(Rat, Rat)>,
}

impl ExtremumReport {
    fn from_enclosure(n: usize, enc: &univariate::Enclosure) -> Self {
        let mid = (&enc.lo + &enc.hi) / rat(2);
        ExtremumReport {
            value: rat_to_f64(&mid),
            point: meridian_point(n, &enc.at),
            enclosure: Some((enc.lo.clone(), enc.hi.clone())),
        }
    }
}

fn meridian_point(n: usize, t: &Rat) -> Vec<f64> {
    let tv = rat_to_f64(t).clamp(-1.0, 1.0);
    let mut x = vec![0.0; n];
    x[0] = (1.0 - tv * tv).max(0.0).sqrt();
    x[n - 1] = tv;
    x
}

/// Max and min of a form over the sphere.
#[derive(Debug, Clone)]
pub struct SphereExtrema {
    pub max: ExtremumReport,
    pub min: ExtremumReport,
    pub method: ExtremaMethod,
}

pub fn sphere_extrema(f: &HomoForm, opts: &NormOptions) -> SphereExtrema {
    let n = f.dim();
    if let Some(q) = harmonic::axial_profile(f) {
        let tol = Rat::from_float(opts.tol).filter(|t| t.is_positive());
        let tol = tol.unwrap_or_else(|| Rat::new(1.into(), 10_000_000_000u64.into()));
        let (max_enc, min_enc) = univariate::extrema_on_interval(&q, &tol);
        SphereExtrema {
            max: ExtremumReport::from_enclosure(n, &max_enc),
            min: ExtremumReport::from_enclosure(n, &min_enc),
            method: ExtremaMethod::AxialExact,
        }
    } else {
        let (max_v, max_x) = numeric::multistart_extremum(f, true, opts.starts, opts.iters);
        let (min_v, min_x) = numeric::multistart_extremum(f, false, opts.starts, opts.iters);
        SphereExtrema {
            max: ExtremumReport {
                value: max_v,
                point: max_x,
                enclosure: None,
            },
            min: ExtremumReport {
                value: min_v,
                point: min_x,
                enclosure: None,
            },
            method: ExtremaMethod::MultiStart,
        }
    }
}

/// Sup-norm report. On the axial path the enclosure width is certified below
/// the tolerance; on the numeric path the value is a best-found lower bound
/// and `enclosure_width` is None.
#[derive(Debug, Clone)]
pub struct LinfReport {
    pub value: f64,
    pub enclosure_width: Option<f64>,
    pub argmax: Vec<f64>,
    pub method: ExtremaMethod,
    /// Present when the extremum landed on an exact rational value.
    pub exact: Option<Rat>,
}

fn abs_enclosure(lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    if !lo.is_negative() {
        (lo.clone(), hi.clone())
    } else if !hi.is_positive() {
        (-hi.clone(), -lo.clone())
    } else {
        (Rat::zero(), lo.abs().max(hi.abs()))
    }
}

/// Sup norm of a form over the sphere.
pub fn linf_norm(f: &HomoForm, opts: &NormOptions) -> LinfReport {
    let extrema = sphere_extrema(f, opts);
    match extrema.method {
        ExtremaMethod::AxialExact => {
            let (max_lo, max_hi) = extrema.max.enclosure.clone().expect("axial enclosure");
            let (min_lo, min_hi) = extrema.min.enclosure.clone().expect("axial enclosure");
            let (alo, ahi) = abs_enclosure(&max_lo, &max_hi);
            let (blo, bhi) = abs_enclosure(&min_lo, &min_hi);
            let (lo, hi, argmax) = if alo >= blo {
                (alo.clone().max(blo), ahi.max(bhi), extrema.max.point)
            } else {
                (blo.max(alo), bhi.max(ahi), extrema.min.point)
            };
            let exact = if lo == hi { Some(lo.clone()) } else { None };
            LinfReport {
                value: rat_to_f64(&((&lo + &hi) / rat(2))),
                enclosure_width: Some(rat_to_f64(&(&hi - &lo))),
                argmax,
                method: ExtremaMethod::AxialExact,
                exact,
            }
        }
        ExtremaMethod::MultiStart => {
            let (value, argmax) = if extrema.max.value.abs() >= extrema.min.value.abs() {
                (extrema.max.value.abs(), extrema.max.point)
            } else {
                (extrema.min.value.abs(), extrema.min.point)
            };
            LinfReport {
                value,
                enclosure_width: None,
                argmax,
                method: ExtremaMethod::MultiStart,
                exact: None,
            }
        }
    }
}

/// Norm selector for `lp_norm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormSelector {
    /// L^1 of a form the caller asserts to be nonnegative (then exact).
    OneNonneg,
    L2,
    /// Even power 2l; returns the exact integral of f^{2l}.
    EvenPower(u32),
    Infinity,
}

/// Value of one norm query: an exact p-th power or a sup-norm report.
#[derive(Debug, Clone)]
pub enum NormValue {
    /// The exact rational integral of f^p; the norm is its p-th root.
    ExactPower {
        value: Rat,
        power: u32,
    },
    Sup(LinfReport),
}

pub fn lp_norm(
    f: &HomoForm,
    selector: NormSelector,
    opts: &NormOptions,
) -> Result<NormValue, Error> {
    match selector {
        NormSelector::OneNonneg => Ok(NormValue::ExactPower {
            value: integral(f),
            power: 1,
        }),
        NormSelector::L2 => Ok(NormValue::ExactPower {
            value: l2_norm_sq(f),
            power: 2,
        }),
        NormSelector::EvenPower(l) => Ok(NormValue::ExactPower {
            value: power_integral(f, l, opts.term_budget)?,
            power: 2 * l,
        }),
        NormSelector::Infinity => Ok(NormValue::Sup(linf_norm(f, opts))),
    }
}

/// Bundle of norm facts about one form.
#[derive(Debug, Clone)]
pub struct NormReport {
    /// Exact integral of f; equals the L^1 norm when f is nonnegative.
    pub l1: Option<Rat>,
    pub l2_squared: Rat,
    /// (2l, exact integral of f^{2l}) when requested.
    pub l2l_power: Option<(u32, Rat)>,
    pub linf: LinfReport,
}

pub fn norm_report(
    f: &HomoForm,
    even_power: Option<u32>,
    nonneg: bool,
    opts: &NormOptions,
) -> Result<NormReport, Error> {
    let l2l_power = match even_power {
        Some(l) => Some((2 * l, power_integral(f, l, opts.term_budget)?)),
        None => None,
    };
    Ok(NormReport {
        l1: if nonneg { Some(integral(f)) } else { None },
        l2_squared: l2_norm_sq(f),
        l2l_power,
        linf: linf_norm(f, opts),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::legendre_harmonic;
    use crate::rational::ratio;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn monomial_integral_examples() {
        assert_eq!(
            monomial_sphere_integral(&e(&[0, 0, 2])).unwrap(),
            ratio(1, 3)
        );
        assert_eq!(
            monomial_sphere_integral(&e(&[0, 0, 4])).unwrap(),
            ratio(1, 5)
        );
        assert_eq!(
            monomial_sphere_integral(&e(&[2, 2, 0])).unwrap(),
            ratio(1, 15)
        );
        assert_eq!(monomial_sphere_integral(&e(&[1, 0, 2])).unwrap(), rat(0));
        assert_eq!(
            monomial_sphere_integral(&e(&[0])),
            Err(Error::DimensionTooSmall(1))
        );
        // degree zero: the measure is a probability measure
        assert_eq!(monomial_sphere_integral(&e(&[0, 0])).unwrap(), rat(1));
    }

    #[test]
    fn sum_of_squares_integrates_to_one() {
        // sum_i integral(x_i^2) = integral(r^2) = 1
        for n in 2..=5 {
            assert_eq!(integral(&HomoForm::r2(n)), rat(1));
            assert_eq!(integral(&HomoForm::r2k(n, 3)), rat(1));
        }
    }

    #[test]
    fn inner_product_examples() {
        let r2 = HomoForm::r2(3);
        assert_eq!(inner_product(&r2, &r2).unwrap(), rat(1));
        let l = legendre_harmonic(3, 2);
        assert_eq!(inner_product(&l, &l).unwrap(), ratio(1, 5));
        assert_eq!(inner_product(&l, &r2).unwrap(), rat(0));
        let x3 = HomoForm::variable(3, 2);
        assert_eq!(inner_product(&l, &x3), Err(Error::DegreeMismatch(2, 1)));
    }

    #[test]
    fn integral_examples() {
        let f = HomoForm::monomial(3, e(&[0, 0, 2]), rat(3));
        assert_eq!(integral(&f), rat(1));
        let g = HomoForm::monomial(2, e(&[1, 1]), rat(1));
        assert_eq!(integral(&g), rat(0));
    }

    #[test]
    fn linf_of_axial_forms_is_exact() {
        let f = HomoForm::monomial(3, e(&[0, 0, 2]), rat(3));
        let report = linf_norm(&f, &NormOptions::default());
        assert_eq!(report.method, ExtremaMethod::AxialExact);
        assert_eq!(report.exact, Some(rat(3)));
        assert!((report.value - 3.0).abs() < 1e-12);

        let r4 = HomoForm::r2k(3, 2);
        let report = linf_norm(&r4, &NormOptions::default());
        assert_eq!(report.exact, Some(rat(1)));

        // |L_{3,2}| attains 1 at the poles (interior critical value is 1/2)
        let l = legendre_harmonic(3, 2);
        let report = linf_norm(&l, &NormOptions::default());
        assert_eq!(report.exact, Some(rat(1)));
        assert_eq!(l2_norm_sq(&l), ratio(1, 5));
    }

    #[test]
    fn linf_numeric_fallback_is_flagged() {
        // x1 x2 is not axial about e_3; sup is 1/2 on the equator
        let f = HomoForm::monomial(3, e(&[1, 1, 0]), rat(1));
        let report = linf_norm(&f, &NormOptions::default());
        assert_eq!(report.method, ExtremaMethod::MultiStart);
        assert!(report.enclosure_width.is_none());
        assert!((report.value - 0.5).abs() < 1e-9);
    }

    #[test]
    fn linf_consistency_with_l2_and_argmax() {
        let l = legendre_harmonic(3, 4);
        let opts = NormOptions::default();
        let report = linf_norm(&l, &opts);
        let l2sq = rat_to_f64(&l2_norm_sq(&l));
        assert!(l2sq <= report.value * report.value + 1e-12);
        let compiled = numeric::CompiledForm::new(&l);
        assert!(compiled.eval(&report.argmax).abs() >= report.value - 1e-9);
    }

    #[test]
    fn power_integral_respects_budget() {
        let f = HomoForm::r2(3);
        assert_eq!(power_integral(&f, 2, 1_000_000).unwrap(), rat(1));
        assert_eq!(
            power_integral(&f, 2, 3),
            Err(Error::TermBudgetExceeded { budget: 3 })
        );
    }

    #[test]
    fn lp_norm_dispatch() {
        let f = HomoForm::monomial(3, e(&[0, 0, 2]), rat(3));
        let opts = NormOptions::default();
        match lp_norm(&f, NormSelector::OneNonneg, &opts).unwrap() {
            NormValue::ExactPower { value, power } => {
                assert_eq!((value, power), (rat(1), 1));
            }
            _ => panic!("expected exact power"),
        }
        match lp_norm(&f, NormSelector::L2, &opts).unwrap() {
            NormValue::ExactPower { value, power } => {
                assert_eq!((value, power), (ratio(9, 5), 2));
            }
            _ => panic!("expected exact power"),
        }
        match lp_norm(&f, NormSelector::EvenPower(2), &opts).unwrap() {
            NormValue::ExactPower { value, power } => {
                assert_eq!((value, power), (rat(9), 4));
            }
            _ => panic!("expected exact power"),
        }
        match lp_norm(&f, NormSelector::Infinity, &opts).unwrap() {
            NormValue::Sup(report) => assert_eq!(report.exact, Some(rat(3))),
            _ => panic!("expected sup report"),
        }
    }

    #[test]
    fn norm_report_assembles_fields() {
        let f = HomoForm::monomial(3, e(&[0, 0, 2]), rat(3));
        let report = norm_report(&f, Some(2), true, &NormOptions::default()).unwrap();
        assert_eq!(report.l1, Some(rat(1)));
        assert_eq!(report.l2_squared, ratio(9, 5));
        // integral of (3 x3^2)^4 = 81/9 = 9
        assert_eq!(report.l2l_power, Some((4, rat(9))));
        assert_eq!(report.linf.exact, Some(rat(3)));
    }
}
