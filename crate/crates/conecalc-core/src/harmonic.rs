//! Harmonic structure of the space of forms: level decomposition, dimension
//! counts, zonal (Legendre) harmonics, and the point-evaluation dual form.
//!
//! Every degree-d form splits uniquely as f = sum_i r^{2i} h_{d-2i} with each
//! h harmonic. The splitting is computed by iterating the Laplacian, which
//! acts on r^{2i} h_j as multiplication by 2i(2j + 2i + n - 2) and a drop of
//! r^2; the resulting triangular system is solved exactly from the top.

use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::poly::HomoForm;
use crate::rational::{binomial, factorial, rat, Rat};
use crate::sphere;

/// Dimension D(n,d) of the space of degree-d forms in n variables.
pub fn dim_forms(n: usize, d: u32) -> u64 {
    binomial(n as u64 + d as u64 - 1, d as u64)
        .to_u64()
        .expect("dimension exceeds u64 range")
}

/// Dimension N(n,d) of the space of degree-d harmonics in n variables.
pub fn dim_harmonics(n: usize, d: u32) -> u64 {
    assert!(n >= 2);
    if d == 0 {
        return 1;
    }
    let d = d as u64;
    let n = n as u64;
    let num = num_bigint::BigInt::from(2 * d + n - 2) * factorial(d + n - 3);
    let den = factorial(d) * factorial(n - 2);
    (num / den)
        .to_u64()
        .expect("harmonic dimension exceeds u64 range")
}

/// Dimensions of a degree-d space and its harmonic levels d, d-2, ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelDims {
    pub dim: u64,
    /// (level, N(n, level)) in descending level order.
    pub harmonic_dims: Vec<(u32, u64)>,
}

pub fn space_dims(n: usize, d: u32) -> Result<LevelDims, Error> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let mut harmonic_dims = Vec::new();
    let mut level = d as i64;
    while level >= 0 {
        harmonic_dims.push((level as u32, dim_harmonics(n, level as u32)));
        level -= 2;
    }
    Ok(LevelDims {
        dim: dim_forms(n, d),
        harmonic_dims,
    })
}

/// The unique harmonic parts [h_d, h_{d-2}, ...] with f = sum r^{2i} h_{d-2i}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicParts {
    n: usize,
    d: u32,
    parts: Vec<HomoForm>,
}

impl HarmonicParts {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Part h_{d-2i} at position i.
    pub fn part(&self, i: usize) -> &HomoForm {
        &self.parts[i]
    }

    pub fn parts(&self) -> &[HomoForm] {
        &self.parts
    }

    /// Iterate (level j, h_j) in descending level order.
    pub fn levels(&self) -> impl Iterator<Item = (u32, &HomoForm)> {
        self.parts
            .iter()
            .enumerate()
            .map(move |(i, h)| (self.d - 2 * i as u32, h))
    }

    /// Reassemble sum r^{2i} h_{d-2i}.
    pub fn reconstruct(&self) -> HomoForm {
        let mut acc = HomoForm::zero(self.n, self.d);
        for (i, h) in self.parts.iter().enumerate() {
            let lifted = HomoForm::r2k(self.n, i as u32)
                .multiply(h)
                .expect("same dimension");
            acc = acc.add(&lifted);
        }
        acc
    }
}

/// Coefficient of r^{2(i-s)} h_j in Laplacian^s (r^{2i} h_j):
/// prod_{u=0}^{s-1} 2(i-u) (2j + 2(i-u) + n - 2).
fn laplacian_iterate_coeff(n: usize, i: usize, s: usize, j: u32) -> Rat {
    let mut acc = Rat::one();
    for u in 0..s {
        let iv = (i - u) as i64;
        acc *= rat(2 * iv * (2 * j as i64 + 2 * iv + n as i64 - 2));
    }
    acc
}

/// Split a form into its harmonic levels. Total on homogeneous forms.
pub fn harmonic_decompose(f: &HomoForm) -> HarmonicParts {
    let n = f.dim();
    let d = f.degree();
    let p = (d / 2) as usize;
    let mut laplacians = Vec::with_capacity(p + 1);
    laplacians.push(f.clone());
    for s in 1..=p {
        let next = laplacians[s - 1].laplacian();
        laplacians.push(next);
    }
    let mut parts: Vec<HomoForm> = vec![HomoForm::zero(n, 0); p + 1];
    for s in (0..=p).rev() {
        let mut residual = laplacians[s].clone();
        for (i, part) in parts.iter().enumerate().take(p + 1).skip(s + 1) {
            let j = d - 2 * i as u32;
            let coeff = laplacian_iterate_coeff(n, i, s, j);
            let lifted = HomoForm::r2k(n, (i - s) as u32)
                .multiply(part)
                .expect("same dimension")
                .scale(&coeff);
            residual = residual.sub(&lifted);
        }
        let j = d - 2 * s as u32;
        let diag = laplacian_iterate_coeff(n, s, s, j);
        parts[s] = residual.scale(&(Rat::one() / diag));
    }
    HarmonicParts { n, d, parts }
}

/// Component of f inside the level-j subspace, returned as the degree-d form
/// r^{d-j} h_j. Idempotent, and orthogonal across distinct levels.
pub fn project_level(f: &HomoForm, level: u32) -> Result<HomoForm, Error> {
    let d = f.degree();
    if level > d || !(d - level).is_multiple_of(2) {
        return Err(Error::BadLevel { level, degree: d });
    }
    let parts = harmonic_decompose(f);
    let i = ((d - level) / 2) as usize;
    Ok(HomoForm::r2k(f.dim(), i as u32)
        .multiply(parts.part(i))
        .expect("same dimension"))
}

/// Exact squared norm of the level-j component of f.
pub fn level_norm_sq(f: &HomoForm, level: u32) -> Result<Rat, Error> {
    let d = f.degree();
    if level > d || !(d - level).is_multiple_of(2) {
        return Err(Error::BadLevel { level, degree: d });
    }
    let parts = harmonic_decompose(f);
    let i = ((d - level) / 2) as usize;
    let h = parts.part(i);
    sphere::inner_product(h, h)
}

fn check_unit_vector(v: &[Rat]) -> Result<(), Error> {
    let norm_sq: Rat = v.iter().map(|c| c * c).sum();
    if norm_sq == Rat::one() {
        Ok(())
    } else {
        Err(Error::NotUnitVector)
    }
}

/// The Legendre (zonal) harmonic with axis e_n: the unique degree-d harmonic
/// that is rotation-invariant about the axis and equals 1 there. Built by
/// projecting x_n^d onto the top harmonic level and normalizing.
pub fn legendre_harmonic(n: usize, d: u32) -> HomoForm {
    let mut axis = vec![Rat::zero(); n];
    axis[n - 1] = Rat::one();
    legendre_harmonic_with_axis(n, d, &axis).expect("e_n is a unit vector")
}

/// Legendre harmonic with an arbitrary exact rational unit axis.
pub fn legendre_harmonic_with_axis(n: usize, d: u32, axis: &[Rat]) -> Result<HomoForm, Error> {
    assert!(n >= 2);
    if axis.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: axis.len(),
        });
    }
    check_unit_vector(axis)?;
    if d == 0 {
        return Ok(HomoForm::constant(n, Rat::one()));
    }
    let linear = HomoForm::linear_form(axis);
    let power = linear.pow_with_budget(d, usize::MAX).expect("no budget");
    let top = project_level(&power, d)?;
    let at_axis = top.evaluate(axis).expect("arity checked");
    assert!(!at_axis.is_zero(), "zonal projection vanished on its axis");
    Ok(top.scale(&(Rat::one() / at_axis)))
}

/// The dual point p_v of degree 2k: the form whose inner product with any
/// degree-2k form reproduces that form's value at v,
/// p_v = sum_{i=0}^{k} N(n,2i) r^{2k-2i} L^v_{n,2i}.
pub fn dual_point(n: usize, two_k: u32, v: &[Rat]) -> Result<HomoForm, Error> {
    assert!(
        two_k.is_multiple_of(2),
        "dual point is defined for even degree"
    );
    if v.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: v.len(),
        });
    }
    check_unit_vector(v)?;
    let k = two_k / 2;
    let mut acc = HomoForm::zero(n, two_k);
    for i in 0..=k {
        let zonal = legendre_harmonic_with_axis(n, 2 * i, v)?;
        let lifted = HomoForm::r2k(n, k - i)
            .multiply(&zonal)
            .expect("same dimension")
            .scale(&rat(dim_harmonics(n, 2 * i) as i64));
        acc = acc.add(&lifted);
    }
    Ok(acc)
}

/// Univariate meridian profile Q(t) with f(x) = Q(<x, e_n>) on the sphere,
/// for forms that are axially symmetric about e_n. Returns None otherwise.
///
/// Detection goes through the harmonic parts: f is axial exactly when every
/// part is the scalar multiple h_j = h_j(e_n) * L_{n,j} of the zonal.
pub fn axial_profile(f: &HomoForm) -> Option<crate::univariate::UniPoly> {
    let n = f.dim();
    let mut axis = vec![Rat::zero(); n];
    axis[n - 1] = Rat::one();
    let parts = harmonic_decompose(f);
    for (j, h) in parts.levels() {
        let c = h.evaluate(&axis).expect("axis arity");
        let zonal = legendre_harmonic(n, j);
        if *h != zonal.scale(&c) {
            return None;
        }
    }
    Some(restrict_to_meridian(f))
}

/// Substitute x = (sqrt(1-t^2), 0, ..., 0, t) into an axially symmetric form.
/// Only monomials supported on {x_1, x_n} survive; axial symmetry forces even
/// powers of x_1 among those, so the result is a polynomial in t.
fn restrict_to_meridian(f: &HomoForm) -> crate::univariate::UniPoly {
    use crate::univariate::UniPoly;
    let n = f.dim();
    let mut q = UniPoly::zero();
    for (e, c) in f.terms() {
        let alpha = e.as_slice();
        if alpha[1..n - 1].iter().any(|&a| a > 0) {
            continue;
        }
        let a1 = alpha[0];
        assert!(a1 % 2 == 0, "meridian restriction of a non-axial form");
        let t_pow = UniPoly::t_pow(alpha[n - 1] as usize);
        q = q.add(&t_pow.mul_one_minus_t2_pow(a1 / 2).scale(c));
    }
    q
}

/// Exact value of the zonal profile Q_{n,d} extracted from the constructed
/// Legendre harmonic (used by identity tests against the recurrences).
pub fn zonal_profile(n: usize, d: u32) -> crate::univariate::UniPoly {
    restrict_to_meridian(&legendre_harmonic(n, d))
}

/// Evaluate a form at a rational point given as a slice helper (e_n).
pub fn unit_axis(n: usize) -> Vec<Rat> {
    let mut axis = vec![Rat::zero(); n];
    axis[n - 1] = Rat::one();
    axis
}

/// Exact rational points on the unit sphere used by reproducing-property
/// tests: scaled Pythagorean-style tuples, five per dimension.
pub fn rational_sphere_points(n: usize) -> Vec<Vec<Rat>> {
    use crate::rational::ratio;
    let mut points: Vec<Vec<Rat>> = Vec::new();
    match n {
        2 => {
            points.push(vec![ratio(3, 5), ratio(4, 5)]);
            points.push(vec![ratio(5, 13), ratio(-12, 13)]);
            points.push(vec![ratio(-8, 17), ratio(15, 17)]);
            points.push(vec![rat(1), rat(0)]);
            points.push(vec![rat(0), rat(-1)]);
        }
        3 => {
            points.push(vec![ratio(3, 5), ratio(4, 5), rat(0)]);
            points.push(vec![rat(0), ratio(-3, 5), ratio(4, 5)]);
            points.push(vec![ratio(2, 3), ratio(2, 3), ratio(-1, 3)]);
            points.push(vec![ratio(1, 3), ratio(-2, 3), ratio(2, 3)]);
            points.push(vec![ratio(12, 13), ratio(3, 13), ratio(4, 13)]);
        }
        _ => {
            let mut p1 = vec![Rat::zero(); n];
            p1[0] = ratio(1, 2);
            p1[1] = ratio(-1, 2);
            p1[2] = ratio(1, 2);
            p1[3] = ratio(1, 2);
            points.push(p1);
            let mut p2 = vec![Rat::zero(); n];
            p2[0] = ratio(3, 5);
            p2[n - 1] = ratio(4, 5);
            points.push(p2);
            let mut p3 = vec![Rat::zero(); n];
            p3[1] = ratio(-5, 13);
            p3[2] = ratio(12, 13);
            points.push(p3);
            let mut p4 = vec![Rat::zero(); n];
            p4[0] = ratio(2, 3);
            p4[1] = ratio(1, 3);
            p4[n - 1] = ratio(-2, 3);
            points.push(p4);
            let mut p5 = vec![Rat::zero(); n];
            p5[n - 2] = rat(1);
            points.push(p5);
        }
    }
    for p in &points {
        let norm: Rat = p.iter().map(|c| c * c).sum();
        assert!(norm.is_one(), "sphere point table entry is not unit");
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Exponent;
    use crate::rational::ratio;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn dims_match_closed_forms() {
        assert_eq!(dim_forms(3, 2), 6);
        assert_eq!(dim_harmonics(3, 2), 5);
        assert_eq!(dim_forms(3, 0), 1);
        assert_eq!(dim_harmonics(3, 0), 1);
        assert_eq!(dim_harmonics(4, 1), 4);
        assert_eq!(dim_harmonics(2, 6), 2);
        // intermediate factorials exceed u64 here; the count itself must not
        assert_eq!(dim_harmonics(8, 20), 407_330);
        // consistency: sum of level dims equals the total dimension
        for n in 2..=5 {
            for d in 0..=8 {
                let dims = space_dims(n, d).unwrap();
                let total: u64 = dims.harmonic_dims.iter().map(|&(_, nn)| nn).sum();
                assert_eq!(total, dims.dim, "n={n} d={d}");
            }
        }
        assert_eq!(space_dims(1, 2), Err(Error::DimensionTooSmall(1)));
    }

    #[test]
    fn decompose_x3_squared() {
        let f = HomoForm::monomial(3, e(&[0, 0, 2]), rat(1));
        let parts = harmonic_decompose(&f);
        let h2 =
            HomoForm::monomial(3, e(&[0, 0, 2]), rat(1)).sub(&HomoForm::r2(3).scale(&ratio(1, 3)));
        assert_eq!(parts.part(0), &h2);
        assert_eq!(parts.part(1), &HomoForm::constant(3, ratio(1, 3)));
        assert!(parts.part(0).laplacian().is_zero());
        assert_eq!(parts.reconstruct(), f);
    }

    #[test]
    fn decompose_r4_is_pure_level_zero() {
        let f = HomoForm::r2k(4, 2);
        let parts = harmonic_decompose(&f);
        assert!(parts.part(0).is_zero());
        assert!(parts.part(1).is_zero());
        assert_eq!(parts.part(2), &HomoForm::constant(4, rat(1)));
    }

    #[test]
    fn decompose_fixes_harmonics() {
        let legendre = legendre_harmonic(3, 2);
        let parts = harmonic_decompose(&legendre);
        assert_eq!(parts.part(0), &legendre);
        assert!(parts.part(1).is_zero());
    }

    #[test]
    fn projection_examples() {
        let f = HomoForm::monomial(3, e(&[0, 0, 2]), rat(3));
        let proj = project_level(&f, 2).unwrap();
        let expected = HomoForm::monomial(3, e(&[0, 0, 2]), rat(3)).sub(&HomoForm::r2(3));
        assert_eq!(proj, expected);
        assert_eq!(
            project_level(&HomoForm::r2k(3, 2), 0).unwrap(),
            HomoForm::r2k(3, 2)
        );
        assert!(project_level(&legendre_harmonic(3, 2), 0)
            .unwrap()
            .is_zero());
        assert_eq!(
            project_level(&f, 1),
            Err(Error::BadLevel {
                level: 1,
                degree: 2
            })
        );
    }

    #[test]
    fn legendre_quadratic_in_three_vars() {
        let l = legendre_harmonic(3, 2);
        let expected = HomoForm::monomial(3, e(&[0, 0, 2]), rat(3))
            .sub(&HomoForm::r2(3))
            .scale(&ratio(1, 2));
        assert_eq!(l, expected);
        assert_eq!(legendre_harmonic(3, 1), HomoForm::variable(3, 2));
        assert_eq!(legendre_harmonic(4, 0), HomoForm::constant(4, rat(1)));
    }

    #[test]
    fn legendre_rejects_non_unit_axis() {
        let axis = vec![rat(1), rat(1), rat(0)];
        assert_eq!(
            legendre_harmonic_with_axis(3, 2, &axis),
            Err(Error::NotUnitVector)
        );
    }

    #[test]
    fn dual_point_quadratic_example() {
        // p = r^2 + 5 (3 x3^2 - r^2)/2 for n=3, 2k=2, v=e_3
        let p = dual_point(3, 2, &unit_axis(3)).unwrap();
        let expected = HomoForm::r2(3).add(&legendre_harmonic(3, 2).scale(&rat(5)));
        assert_eq!(p, expected);
        // reproduces the value of x3^2 at e_3
        let f = HomoForm::monomial(3, e(&[0, 0, 2]), rat(1));
        assert_eq!(sphere::inner_product(&p, &f).unwrap(), rat(1));
        // p_v(v) = D(n, 2k)
        assert_eq!(p.evaluate(&unit_axis(3)).unwrap(), rat(6));
    }

    #[test]
    fn axial_profile_detects_and_restricts() {
        // 3 x3^2 restricted to the meridian is 3 t^2
        let f = HomoForm::monomial(3, e(&[0, 0, 2]), rat(3));
        let q = axial_profile(&f).unwrap();
        assert_eq!(
            q,
            crate::univariate::UniPoly::new(vec![rat(0), rat(0), rat(3)])
        );
        // x1 x3 is not axially symmetric about e_3
        let g = HomoForm::monomial(3, e(&[1, 0, 1]), rat(1));
        assert!(axial_profile(&g).is_none());
    }

    #[test]
    fn zonal_profile_matches_recurrence() {
        for n in 2..=5 {
            for d in 0..=6 {
                assert_eq!(
                    zonal_profile(n, d),
                    crate::univariate::zonal_recurrence(n, d),
                    "zonal profile mismatch at n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn sphere_point_tables_are_unit() {
        for n in 2..=6 {
            assert_eq!(rational_sphere_points(n).len(), 5);
        }
    }
}
