//! Cone-level invariants: the polarity inequality between the dual Loewner
//! ball and the John ball, powers of linear forms touching the Loewner
//! ellipsoid, equivariance of the averaging operator, and its mapping of
//! sums of squares to numerically nonnegative forms.

use conecalc_core::cone::{john_ball_c, lf_loewner};
use conecalc_core::harmonic::{dim_forms, dual_point, rational_sphere_points};
use conecalc_core::numeric::multistart_extremum;
use conecalc_core::operator::{apply_t, apply_t_integral, t_coefficients};
use conecalc_core::poly::HomoForm;
use conecalc_core::rational::{ceil_sqrt, rat, Rat};
use conecalc_core::sample::{random_form, sample_sos_stream, trial_rng};
use conecalc_core::sphere::{inner_product, integral, l2_norm_sq};
use num_traits::One;
use rand::Rng;

/// Random form of integral zero with ||w||^2 <= cap, built by exact scaling.
fn random_capped_direction(
    n: usize,
    d: u32,
    cap: &Rat,
    rng: &mut rand_chacha::ChaCha12Rng,
) -> HomoForm {
    loop {
        let u = random_form(n, d, rng);
        let centered = u.sub(&HomoForm::r2k(n, d / 2).scale(&integral(&u)));
        if centered.is_zero() {
            continue;
        }
        let norm_sq = l2_norm_sq(&centered);
        // scale c = 1 / ceil_sqrt(norm^2 / cap) gives c^2 norm^2 <= cap
        let c = Rat::one() / ceil_sqrt(&(&norm_sq / cap));
        return centered.scale(&c);
    }
}

#[test]
fn polarity_inequality_between_dual_ball_and_john_ball() {
    // For p_v on the dual Loewner boundary and g = r^{2k} + w in the John
    // ball, <p_v - r^{2k}, g - r^{2k}> >= -1 exactly.
    for (n, k) in [(2usize, 1u32), (3, 1), (3, 2)] {
        let center = HomoForm::r2k(n, k);
        let john_radius_sq = john_ball_c(n, k).bound;
        let mut rng = trial_rng(404, (n as u64) << 8 | k as u64);
        for v in rational_sphere_points(n) {
            let p = dual_point(n, 2 * k, &v).unwrap();
            // boundary fact: ||p - r^{2k}||^2 = D(n,2k) - 1
            assert_eq!(
                l2_norm_sq(&p.sub(&center)),
                rat(dim_forms(n, 2 * k) as i64 - 1)
            );
            for _ in 0..10 {
                let w = random_capped_direction(n, 2 * k, &john_radius_sq, &mut rng);
                let pairing = inner_product(&p.sub(&center), &w).unwrap();
                assert!(
                    pairing >= rat(-1),
                    "polarity violated at n={n} k={k}: {pairing}"
                );
            }
        }
    }
}

#[test]
fn normalized_powers_touch_the_loewner_ellipsoid() {
    // <x,v>^{2k} normalized to integral 1 meets the weighted functional with
    // exact equality, for exact rational unit vectors v.
    for (n, k) in [(2usize, 1u32), (2, 2), (3, 1), (3, 2), (4, 1)] {
        let spec = lf_loewner(n, k);
        let mut axial = vec![0u32; n];
        axial[n - 1] = 2 * k;
        let axial_integral = integral(&HomoForm::monomial(
            n,
            conecalc_core::poly::Exponent::new(axial),
            Rat::one(),
        ));
        for v in rational_sphere_points(n) {
            let linear = HomoForm::linear_form(&v);
            let power = linear.pow_with_budget(2 * k, usize::MAX).unwrap();
            // rotation invariance: integral of <x,v>^{2k} matches the axial value
            let total = integral(&power);
            assert_eq!(total, axial_integral, "n={n} k={k}");
            let f = power.scale(&(Rat::one() / total));
            assert_eq!(
                spec.functional(&f).unwrap(),
                spec.bound,
                "boundary equality failed at n={n} k={k} v={v:?}"
            );
        }
    }
}

#[test]
fn operator_commutes_with_signed_permutations() {
    let spec = t_coefficients(3, 2, 3).unwrap();
    let mut rng = trial_rng(777, 0);
    for _ in 0..20 {
        let f = random_form(3, 4, &mut rng);
        let mut perm: Vec<usize> = (0..3).collect();
        for i in (1..3).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        let signs: Vec<bool> = (0..3).map(|_| rng.gen()).collect();
        let lhs = apply_t(&spec, &f)
            .unwrap()
            .substitute_signed_permutation(&perm, &signs);
        let rhs = apply_t(&spec, &f.substitute_signed_permutation(&perm, &signs)).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn integral_and_diagonal_routes_agree_on_random_forms() {
    for (n, k, m) in [(2usize, 1u32, 2u64), (3, 1, 1), (3, 2, 3)] {
        let spec = t_coefficients(n, k, m).unwrap();
        let mut rng = trial_rng(808, (n as u64) << 8 | m);
        for _ in 0..10 {
            let f = random_form(n, 2 * k, &mut rng);
            let via_integral = apply_t_integral(&spec, &f).unwrap();
            let diagonal = apply_t(&spec, &f).unwrap();
            let lifted = HomoForm::r2k(n, (m as u32) - k)
                .multiply(&diagonal)
                .unwrap();
            assert_eq!(via_integral, lifted, "n={n} k={k} m={m}");
        }
    }
}

#[test]
fn operator_maps_squares_to_numerically_nonnegative_forms() {
    // restatement of "T maps the nonnegative cone into K(2m)": the image of
    // a sum of squares stays nonnegative on the sphere (numeric spot check;
    // the lift by r^{2(m-k)} does not change sphere values)
    for (n, k, m) in [(2usize, 1u32, 2u64), (3, 1, 3), (3, 2, 4)] {
        let spec = t_coefficients(n, k, m).unwrap();
        for stream in 0..10u64 {
            let f = sample_sos_stream(n, k, 3, 616, stream);
            let image = apply_t(&spec, &f).unwrap();
            // lift stays a well-formed element of the higher-degree space
            let lifted = HomoForm::r2k(n, (m as u32) - k).multiply(&image).unwrap();
            assert_eq!(lifted.degree(), 2 * m as u32);
            let (min, _) = multistart_extremum(&image, false, 64, 200);
            assert!(min >= -1e-9, "n={n} k={k} m={m} stream={stream}: min {min}");
        }
    }
}
