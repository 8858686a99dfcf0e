//! Ellipsoid invariants of the cone bases, symmetry coefficients, extreme
//! forms, and exact membership certificates.
//!
//! All bodies live in the hyperplane M of forms with integral 1, centered at
//! r^{2k}. An ellipsoid here is a weighted quadratic inequality over the
//! harmonic levels j >= 2, so membership of a rational form is a rational
//! comparison and every verdict below is exact.

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::harmonic::{self, dim_forms, dim_harmonics, legendre_harmonic};
use crate::operator;
use crate::poly::HomoForm;
use crate::rational::{factorial, rat, Rat};
use crate::sphere;

/// Quadratic region { f in M : sum_j weight_j ||l_j(f - center)||^2 <= bound }.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipsoidSpec {
    pub center: HomoForm,
    /// (harmonic level j >= 2, positive weight) in ascending level order.
    pub weights: Vec<(u32, Rat)>,
    pub bound: Rat,
}

impl EllipsoidSpec {
    fn ball(n: usize, k: u32, bound: Rat) -> Self {
        let weights = (1..=k).map(|i| (2 * i, Rat::one())).collect();
        EllipsoidSpec {
            center: HomoForm::r2k(n, k),
            weights,
            bound,
        }
    }

    /// Squared radius when the ellipsoid is a ball (all weights 1).
    pub fn radius_sq(&self) -> Option<&Rat> {
        if self.weights.iter().all(|(_, w)| w.is_one()) {
            Some(&self.bound)
        } else {
            None
        }
    }

    /// Exact value of the defining quadratic functional at a normalized form.
    /// Since f has integral 1, subtracting the center only cancels level 0,
    /// so the functional reads the form's own level components.
    pub fn functional(&self, f: &HomoForm) -> Result<Rat, Error> {
        if f.dim() != self.center.dim() {
            return Err(Error::DimensionMismatch(self.center.dim(), f.dim()));
        }
        if f.degree() != self.center.degree() {
            return Err(Error::DegreeMismatch(self.center.degree(), f.degree()));
        }
        if !sphere::integral(f).is_one() {
            return Err(Error::NotNormalized);
        }
        let parts = harmonic::harmonic_decompose(f);
        let mut acc = Rat::zero();
        for (level, h) in parts.levels() {
            if level == 0 {
                continue;
            }
            let weight = self
                .weights
                .iter()
                .find(|(j, _)| *j == level)
                .map(|(_, w)| w.clone())
                .unwrap_or_else(Rat::one);
            acc += weight * sphere::inner_product(h, h)?;
        }
        Ok(acc)
    }

    /// Exact membership test for a normalized form.
    pub fn contains(&self, f: &HomoForm) -> Result<bool, Error> {
        Ok(self.functional(f)? <= self.bound)
    }
}

/// Weights and bound of the minimum-volume invariant ellipsoid around the
/// convex hull of a group orbit: weight_i = D_i / ||l_i(v)||^2, bound = D.
pub fn orbit_loewner(
    dims: &[u64],
    proj_norms_sq: &[Rat],
    total_dim: u64,
) -> Result<(Vec<Rat>, Rat), Error> {
    assert_eq!(dims.len(), proj_norms_sq.len());
    assert_eq!(
        dims.iter().sum::<u64>(),
        total_dim,
        "levels must span the space"
    );
    let mut weights = Vec::with_capacity(dims.len());
    for (idx, (d, norm_sq)) in dims.iter().zip(proj_norms_sq).enumerate() {
        if norm_sq.is_zero() {
            return Err(Error::ZeroProjection(idx as u32));
        }
        weights.push(rat(*d as i64) / norm_sq);
    }
    Ok((weights, rat(total_dim as i64)))
}

/// John (maximum-volume inscribed) ball of the base of the nonnegative cone:
/// center r^{2k}, squared radius 1/(D(n,2k) - 1).
pub fn john_ball_c(n: usize, k: u32) -> EllipsoidSpec {
    assert!(n >= 2 && k >= 1);
    let d = dim_forms(n, 2 * k);
    EllipsoidSpec::ball(n, k, Rat::new(1.into(), (d - 1).into()))
}

/// Loewner (minimum-volume enclosing) ball of the base of the dual cone:
/// center r^{2k}, squared radius D(n,2k) - 1. Derived from the orbit of the
/// dual point, whose level norms are ||l_{2i}(p)||^2 = N(n,2i).
pub fn loewner_ball_cstar(n: usize, k: u32) -> EllipsoidSpec {
    assert!(n >= 2 && k >= 1);
    let dims: Vec<u64> = (1..=k).map(|i| dim_harmonics(n, 2 * i)).collect();
    let norms: Vec<Rat> = dims.iter().map(|&d| rat(d as i64)).collect();
    let total: u64 = dims.iter().sum();
    let (weights, bound) = orbit_loewner(&dims, &norms, total).expect("norms positive");
    let weights = (1..=k).map(|i| 2 * i).zip(weights).collect();
    debug_assert_eq!(total, dim_forms(n, 2 * k) - 1);
    EllipsoidSpec {
        center: HomoForm::r2k(n, k),
        weights,
        bound,
    }
}

/// Loewner ellipsoid of the base of the cone of sums of 2k-th powers of
/// linear forms: weight at level 2i is the squared reciprocal of the
/// T_{2k,2k} shrink factor, bound D(n,2k) - 1.
pub fn lf_loewner(n: usize, k: u32) -> EllipsoidSpec {
    assert!(n >= 2 && k >= 1);
    let mut weights = Vec::with_capacity(k as usize);
    for i in 1..=k {
        // (k-i)! Gamma((2k+2i+n)/2) / (k! Gamma((2k+n)/2)), squared
        let ratio = operator::gamma_ratio_half(2 * k as i64 + n as i64, i)
            * Rat::from_integer(factorial((k - i) as u64))
            / Rat::from_integer(factorial(k as u64));
        weights.push((2 * i, &ratio * &ratio));
    }
    let bound = rat(dim_forms(n, 2 * k) as i64 - 1);
    EllipsoidSpec {
        center: HomoForm::r2k(n, k),
        weights,
        bound,
    }
}

/// The two cone bases whose symmetry coefficient is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeBase {
    /// Base of the cone of nonnegative forms.
    Nonneg,
    /// Base of the cone of sums of 2k-th powers of linear forms.
    Powers,
}

/// Coefficient of symmetry of either base about r^{2k}: 1/(D(n,k) - 1).
/// Degenerate at (n,k) = (2,1), where the value 1 means a centrally
/// symmetric base; reported as-is.
pub fn symmetry_coefficient(_cone: ConeBase, n: usize, k: u32) -> Rat {
    assert!(n >= 2 && k >= 1);
    Rat::new(1.into(), (dim_forms(n, k) - 1).into())
}

/// Reflect a boundary form of the nonnegative base through the center:
/// fbar = (r^{2k} - f)/(linf - 1) + r^{2k}. The caller supplies the exact
/// sup norm and asserts that f has integral 1 and minimum 0 on the sphere.
pub fn reflect_through_center(f: &HomoForm, linf: &Rat) -> Result<HomoForm, Error> {
    if !sphere::integral(f).is_one() {
        return Err(Error::NotNormalized);
    }
    if linf <= &Rat::one() {
        return Err(Error::DegenerateMax);
    }
    let n = f.dim();
    let k = f.degree() / 2;
    let center = HomoForm::r2k(n, k);
    let scale = Rat::one() / (linf - Rat::one());
    Ok(center.sub(f).scale(&scale).add(&center))
}

/// The form of maximal sup norm in the nonnegative base:
/// f = (sum_l N(n,k-2l) r^{2l} L_{n,k-2l})^2 / D(n,k),
/// with integral 1 and peak value D(n,k) at e_n.
pub fn max_extreme_form(n: usize, k: u32) -> HomoForm {
    assert!(n >= 2 && k >= 1);
    let mut h = HomoForm::zero(n, k);
    for l in 0..=k / 2 {
        let level = k - 2 * l;
        let zonal = legendre_harmonic(n, level);
        let lifted = HomoForm::r2k(n, l)
            .multiply(&zonal)
            .expect("same dimension")
            .scale(&rat(dim_harmonics(n, level) as i64));
        h = h.add(&lifted);
    }
    let d = dim_forms(n, k);
    h.multiply(&h)
        .expect("same dimension")
        .scale(&Rat::new(1.into(), d.into()))
}

/// Inner radius squared from the symmetry-coefficient sandwich: a body with
/// symmetry coefficient alpha inside an enclosing ellipsoid of least
/// semi-axis squared `outer_radius_sq` contains the ball scaled by alpha/dim.
pub fn ball_sandwich(alpha: &Rat, outer_radius_sq: &Rat, dim: u64) -> Rat {
    assert!(alpha.is_positive() && alpha <= &Rat::one());
    assert!(dim >= 1);
    outer_radius_sq * alpha / rat(dim as i64)
}

/// Squared radius of the ball inside the powers base: the Loewner ellipsoid's
/// least semi-axis (level 2k) shrunk through the symmetry sandwich.
pub fn powerball_radius_sq(n: usize, k: u32) -> Rat {
    let loewner = lf_loewner(n, k);
    let w_max = &loewner.weights.last().expect("k >= 1").1;
    let least_semi_axis_sq = &loewner.bound / w_max;
    let alpha = symmetry_coefficient(ConeBase::Powers, n, k);
    let dim = dim_forms(n, 2 * k) - 1;
    ball_sandwich(&alpha, &least_semi_axis_sq, dim)
}

/// Squared radius of the ball containing the nonnegative base (the sharp
/// L2-vs-L1 outer bound): D(n,k) - 1.
pub fn outer_ball_c_radius_sq(n: usize, k: u32) -> Rat {
    assert!(n >= 2 && k >= 1);
    rat(dim_forms(n, k) as i64 - 1)
}

/// Verdict of a membership certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ProvedMember,
    ProvedNonMember,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::ProvedMember => "ProvedMember",
            Verdict::ProvedNonMember => "ProvedNonMember",
            Verdict::Inconclusive => "Inconclusive",
        };
        write!(f, "{s}")
    }
}

/// Outcome of a ball/ellipsoid membership test. The verdict is exact; the
/// distance is the tested quadratic functional value and the threshold the
/// bound it was compared against. Boundary equality is reported as
/// inconclusive-with-flag for the outer test (the inclusions are closed, so
/// touching the outer ellipsoid proves nothing for the opposite side).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub distance: Rat,
    pub threshold: Rat,
    /// Tag naming the inclusion that decided the verdict.
    pub basis: &'static str,
    /// True when the functional sits exactly on a threshold.
    pub boundary: bool,
    /// Integral of the input before internal normalization.
    pub scale: Rat,
}

fn normalize_for_certificate(f: &HomoForm) -> Result<(HomoForm, Rat), Error> {
    if f.degree() == 0 {
        // the cones live in degree 2k with k >= 1
        return Err(Error::DegreeMismatch(2, 0));
    }
    let s = sphere::integral(f);
    if s.is_zero() {
        return Err(Error::ZeroIntegral);
    }
    Ok((f.scale(&(Rat::one() / &s)), s))
}

/// Certificate for membership of f (after normalization to integral 1) in
/// the nonnegative base: inside the John ball proves nonnegativity, outside
/// the L2 outer ball proves a negative value somewhere.
pub fn certify_nonnegative(f: &HomoForm) -> Result<Certificate, Error> {
    let (g, scale) = normalize_for_certificate(f)?;
    if scale.is_negative() {
        // a nonnegative form has positive mean, so the sign alone decides
        return Ok(Certificate {
            verdict: Verdict::ProvedNonMember,
            distance: scale.clone(),
            threshold: Rat::zero(),
            basis: "negative-integral",
            boundary: false,
            scale,
        });
    }
    let n = g.dim();
    let k = g.degree() / 2;
    let center = HomoForm::r2k(n, k);
    let dist_sq = sphere::l2_norm_sq(&g.sub(&center));
    let inner = john_ball_c(n, k).bound;
    let outer = outer_ball_c_radius_sq(n, k);
    let (verdict, threshold, basis) = if dist_sq <= inner {
        (Verdict::ProvedMember, inner.clone(), "john-ball")
    } else if dist_sq > outer {
        (Verdict::ProvedNonMember, outer.clone(), "l2-outer-ball")
    } else {
        (
            Verdict::Inconclusive,
            outer.clone(),
            "between-john-and-outer-ball",
        )
    };
    let boundary = dist_sq == inner || dist_sq == outer;
    Ok(Certificate {
        verdict,
        distance: dist_sq,
        threshold,
        basis,
        boundary,
        scale,
    })
}

/// Certificate for membership in the base of sums of 2k-th powers of linear
/// forms: inside the powerball proves membership, outside the Loewner
/// ellipsoid (weighted functional) proves non-membership.
pub fn certify_sum_of_powers(f: &HomoForm) -> Result<Certificate, Error> {
    let (g, scale) = normalize_for_certificate(f)?;
    if scale.is_negative() {
        return Ok(Certificate {
            verdict: Verdict::ProvedNonMember,
            distance: scale.clone(),
            threshold: Rat::zero(),
            basis: "negative-integral",
            boundary: false,
            scale,
        });
    }
    let n = g.dim();
    let k = g.degree() / 2;
    let center = HomoForm::r2k(n, k);
    let dist_sq = sphere::l2_norm_sq(&g.sub(&center));
    let inner = powerball_radius_sq(n, k);
    let loewner = lf_loewner(n, k);
    let weighted = loewner.functional(&g)?;
    if dist_sq <= inner {
        let boundary = dist_sq == inner;
        return Ok(Certificate {
            verdict: Verdict::ProvedMember,
            distance: dist_sq,
            threshold: inner,
            basis: "powerball",
            boundary,
            scale,
        });
    }
    let (verdict, basis) = if weighted > loewner.bound {
        (Verdict::ProvedNonMember, "powers-loewner-ellipsoid")
    } else {
        (Verdict::Inconclusive, "between-powerball-and-loewner")
    };
    let boundary = weighted == loewner.bound;
    Ok(Certificate {
        verdict,
        distance: weighted,
        threshold: loewner.bound,
        basis,
        boundary,
        scale,
    })
}
