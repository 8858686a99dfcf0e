//! Seeded randomized verification of the sharp integral inequalities.
//!
//! Per (n, k) cell the suite checks, for every sampled sum of squares with
//! integral 1:
//!   1. sup norm bounded by D(n,k) times the mean      (numeric sup norm)
//!   2. the two-sided mean sandwich with alpha = 1/D(n,k)
//!   3. the L2-vs-L1 inequality, fully exact
//!   4. the sup-vs-L^{2l} inequality for l in {1, 2}
//!
//! plus the exact identity block (power expansion, zonal normalization,
//! reproducing property, Parseval, powers touching the Loewner ellipsoid)
//! and the equality cases on the extreme form. Identical configurations
//! produce byte-identical reports.

use conecalc_core::cone::{lf_loewner, max_extreme_form};
use conecalc_core::harmonic::{
    dim_forms, dim_harmonics, dual_point, legendre_harmonic, project_level, rational_sphere_points,
    unit_axis,
};
use conecalc_core::poly::{format_form, HomoForm};
use conecalc_core::rational::{rat, rat_to_f64, Rat};
use conecalc_core::sample::{random_form, sample_sos_stream, trial_rng};
use conecalc_core::sphere::{
    inner_product, integral, l2_norm_sq, power_integral, sphere_extrema, NormOptions,
};
use conecalc_core::Error;
use num_traits::One;

/// Configuration of one suite run. Identical configs give identical reports.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Inclusive range of ambient dimensions.
    pub n_range: (usize, usize),
    /// Inclusive range of half-degrees.
    pub k_range: (u32, u32),
    /// Random sums of squares per cell.
    pub trials: u32,
    pub seed: u64,
    /// Absolute tolerance for float-path checks.
    pub tol: f64,
    /// Term budget for even-power expansions; overruns are skipped, counted.
    pub term_budget: usize,
    /// Squares per sampled sum.
    pub sos_terms: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_range: (2, 3),
            k_range: (1, 2),
            trials: 200,
            seed: 42,
            tol: 1e-9,
            term_budget: 1_000_000,
            sos_terms: 3,
        }
    }
}

/// Worst-slack instance of a claim.
#[derive(Debug, Clone)]
pub struct WorstCase {
    pub lhs: String,
    pub rhs: String,
    pub slack: String,
}

/// Aggregated result of one claim over a cell.
#[derive(Debug, Clone)]
pub struct ClaimOutcome {
    pub claim: String,
    /// Short tag naming the fact being checked.
    pub tag: &'static str,
    /// True when every comparison was exact rational arithmetic.
    pub exact: bool,
    pub checks: u32,
    pub failures: u32,
    pub skipped: u32,
    pub worst: Option<WorstCase>,
}

impl ClaimOutcome {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

struct ClaimAcc {
    outcome: ClaimOutcome,
    worst_exact: Option<Rat>,
    worst_float: Option<f64>,
    witnesses: Vec<String>,
}

impl ClaimAcc {
    fn new(claim: String, tag: &'static str, exact: bool) -> Self {
        ClaimAcc {
            outcome: ClaimOutcome {
                claim,
                tag,
                exact,
                checks: 0,
                failures: 0,
                skipped: 0,
                worst: None,
            },
            worst_exact: None,
            worst_float: None,
            witnesses: Vec::new(),
        }
    }

    fn note_failure(&mut self, witness: Option<&HomoForm>) {
        self.outcome.failures += 1;
        if let Some(w) = witness {
            if self.witnesses.len() < 3 {
                self.witnesses
                    .push(format!("{}: {}", self.outcome.claim, format_form(w)));
            }
        }
    }

    /// Exact inequality lhs <= rhs; slack = rhs - lhs.
    fn record_exact_le(&mut self, lhs: &Rat, rhs: &Rat, witness: Option<&HomoForm>) {
        self.outcome.checks += 1;
        let slack = rhs - lhs;
        if self.worst_exact.as_ref().is_none_or(|w| &slack < w) {
            self.worst_exact = Some(slack.clone());
            self.outcome.worst = Some(WorstCase {
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                slack: slack.to_string(),
            });
        }
        if lhs > rhs {
            self.note_failure(witness);
        }
    }

    /// Exact equality lhs == rhs; slack is the signed difference.
    fn record_exact_eq(&mut self, lhs: &Rat, rhs: &Rat, witness: Option<&HomoForm>) {
        self.outcome.checks += 1;
        let slack = rhs - lhs;
        let is_zero = lhs == rhs;
        if self.outcome.worst.is_none() || !is_zero {
            self.outcome.worst = Some(WorstCase {
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                slack: slack.to_string(),
            });
        }
        if !is_zero {
            self.note_failure(witness);
        }
    }

    /// Float inequality lhs <= rhs + tol; slack = rhs - lhs.
    fn record_float_le(&mut self, lhs: f64, rhs: f64, tol: f64, witness: Option<&HomoForm>) {
        self.outcome.checks += 1;
        let slack = rhs - lhs;
        if self.worst_float.is_none_or(|w| slack < w) {
            self.worst_float = Some(slack);
            self.outcome.worst = Some(WorstCase {
                lhs: format!("{lhs:e}"),
                rhs: format!("{rhs:e}"),
                slack: format!("{slack:e}"),
            });
        }
        if slack < -tol {
            self.note_failure(witness);
        }
    }

    /// Float equality |lhs - rhs| <= tol.
    fn record_float_eq(&mut self, lhs: f64, rhs: f64, tol: f64, witness: Option<&HomoForm>) {
        self.outcome.checks += 1;
        let gap = (rhs - lhs).abs();
        if self.worst_float.is_none_or(|w| -gap < w) {
            self.worst_float = Some(-gap);
            self.outcome.worst = Some(WorstCase {
                lhs: format!("{lhs:e}"),
                rhs: format!("{rhs:e}"),
                slack: format!("{gap:e}"),
            });
        }
        if gap > tol {
            self.note_failure(witness);
        }
    }

    fn record_skip(&mut self) {
        self.outcome.skipped += 1;
    }
}

/// Full suite report.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub claims: Vec<ClaimOutcome>,
    pub witnesses: Vec<String>,
    /// True when an exact-identity claim failed (fatal).
    pub exact_failure: bool,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.claims.iter().all(ClaimOutcome::pass)
    }

    /// Machine-readable summary; one record per claim with the worst case.
    pub fn to_json(&self) -> serde_json::Value {
        let results: Vec<serde_json::Value> = self
            .claims
            .iter()
            .map(|c| {
                serde_json::json!({
                    "claim": c.claim,
                    "paper_ref": c.tag,
                    "exact": c.exact,
                    "lhs": c.worst.as_ref().map(|w| w.lhs.clone()).unwrap_or_default(),
                    "rhs": c.worst.as_ref().map(|w| w.rhs.clone()).unwrap_or_default(),
                    "slack": c.worst.as_ref().map(|w| w.slack.clone()).unwrap_or_default(),
                    "pass": c.pass(),
                    "checks": c.checks,
                    "failures": c.failures,
                    "skipped": c.skipped,
                })
            })
            .collect();
        serde_json::json!({
            "pass": self.pass(),
            "results": results,
            "witnesses": self.witnesses,
        })
    }

    /// Human-readable lines, one per claim plus a summary line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let status = if c.pass() { "PASS" } else { "FAIL" };
            let worst = c
                .worst
                .as_ref()
                .map(|w| w.slack.clone())
                .unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{status} {} [{}] checks={} failures={} skipped={} worst-slack={}\n",
                c.claim,
                if c.exact { "exact" } else { "float" },
                c.checks,
                c.failures,
                c.skipped,
                worst
            ));
        }
        for w in &self.witnesses {
            out.push_str(&format!("witness {w}\n"));
        }
        let total: u32 = self.claims.iter().map(|c| c.checks).sum();
        out.push_str(&format!(
            "suite: {} ({} claims, {} checks)\n",
            if self.pass() { "PASS" } else { "FAIL" },
            self.claims.len(),
            total
        ));
        out
    }
}

fn per_trial_stream(n: usize, k: u32, trial: u32) -> u64 {
    ((n as u64) << 40) | ((k as u64) << 32) | trial as u64
}

/// Run the full suite for one configuration.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let mut claims: Vec<ClaimAcc> = Vec::new();
    let opts = NormOptions {
        tol: (config.tol * 1e-2).min(1e-10),
        term_budget: config.term_budget,
        ..NormOptions::default()
    };
    for n in config.n_range.0..=config.n_range.1 {
        for k in config.k_range.0..=config.k_range.1 {
            run_cell(config, &opts, n, k, &mut claims);
        }
    }
    let mut witnesses = Vec::new();
    let mut exact_failure = false;
    for c in &claims {
        witnesses.extend(c.witnesses.iter().cloned());
        if c.outcome.exact && c.outcome.failures > 0 {
            exact_failure = true;
        }
    }
    SuiteReport {
        claims: claims.into_iter().map(|c| c.outcome).collect(),
        witnesses,
        exact_failure,
    }
}

fn run_cell(
    config: &SuiteConfig,
    opts: &NormOptions,
    n: usize,
    k: u32,
    claims: &mut Vec<ClaimAcc>,
) {
    let cell = format!("[n={n},k={k}]");
    let d_half = dim_forms(n, k);
    let alpha = Rat::one() / rat(d_half as i64);
    let alpha_f = rat_to_f64(&alpha);

    // --- exact identity block -------------------------------------------
    let mut expansion = ClaimAcc::new(
        format!("axial-power-expansion{cell}"),
        "zonal-expansion-of-the-axial-power",
        true,
    );
    {
        let lhs = conecalc_core::operator::power_expansion(n, k);
        let rhs = conecalc_core::operator::normalized_axial_power(n, k);
        let same = lhs == rhs;
        expansion.outcome.checks += 1;
        expansion.outcome.worst = Some(WorstCase {
            lhs: format_form(&lhs),
            rhs: format_form(&rhs),
            slack: if same { "0".into() } else { "nonzero".into() },
        });
        if !same {
            expansion.note_failure(Some(&lhs));
        }
    }
    claims.push(expansion);

    let mut zonal = ClaimAcc::new(
        format!("zonal-normalization{cell}"),
        "zonal-harmonic-norm-and-peak",
        true,
    );
    {
        let level = 2 * k;
        let zonal_form = legendre_harmonic(n, level);
        zonal.record_exact_eq(
            &l2_norm_sq(&zonal_form),
            &(Rat::one() / rat(dim_harmonics(n, level) as i64)),
            None,
        );
        zonal.record_exact_eq(
            &zonal_form.evaluate(&unit_axis(n)).unwrap(),
            &Rat::one(),
            None,
        );
        // harmonicity via the norm of the Laplacian
        zonal.record_exact_eq(&l2_norm_sq(&zonal_form.laplacian()), &rat(0), None);
    }
    claims.push(zonal);

    let mut reproducing = ClaimAcc::new(
        format!("point-evaluation-duality{cell}"),
        "dual-point-reproduces-evaluation",
        true,
    );
    {
        let points = rational_sphere_points(n);
        for (pi, v) in points.iter().take(2).enumerate() {
            let p = dual_point(n, 2 * k, v).expect("unit point");
            let mut rng = trial_rng(config.seed, per_trial_stream(n, k, 1_000_000 + pi as u32));
            for _ in 0..5 {
                let f = random_form(n, 2 * k, &mut rng);
                reproducing.record_exact_eq(
                    &inner_product(&p, &f).unwrap(),
                    &f.evaluate(v).unwrap(),
                    Some(&f),
                );
            }
        }
    }
    claims.push(reproducing);

    let mut parseval = ClaimAcc::new(
        format!("parseval-levels{cell}"),
        "level-decomposition-preserves-l2",
        true,
    );
    {
        let mut rng = trial_rng(config.seed, per_trial_stream(n, k, 2_000_000));
        for _ in 0..5 {
            let f = random_form(n, 2 * k, &mut rng);
            let mut total = rat(0);
            let mut level = 0;
            while level <= 2 * k {
                total += l2_norm_sq(&project_level(&f, level).unwrap());
                level += 2;
            }
            parseval.record_exact_eq(&total, &l2_norm_sq(&f), Some(&f));
        }
    }
    claims.push(parseval);

    let mut boundary = ClaimAcc::new(
        format!("powers-touch-loewner{cell}"),
        "powers-of-linear-forms-on-the-loewner-boundary",
        true,
    );
    {
        let spec = lf_loewner(n, k);
        for v in rational_sphere_points(n).iter().take(2) {
            let linear = HomoForm::linear_form(v);
            let power = linear.pow_with_budget(2 * k, usize::MAX).unwrap();
            let f = power.scale(&(Rat::one() / integral(&power)));
            boundary.record_exact_eq(&spec.functional(&f).unwrap(), &spec.bound, Some(&f));
        }
    }
    claims.push(boundary);

    // --- per-trial inequality checks --------------------------------------
    let mut max_vs_mean = ClaimAcc::new(
        format!("max-vs-mean{cell}"),
        "sup-norm-at-most-dim-times-mean",
        false,
    );
    let mut sandwich_lower = ClaimAcc::new(
        format!("mean-sandwich-lower{cell}"),
        "weighted-max-min-lower-bound-on-mean",
        false,
    );
    let mut sandwich_upper = ClaimAcc::new(
        format!("mean-sandwich-upper{cell}"),
        "weighted-max-min-upper-bound-on-mean",
        false,
    );
    let mut l2_vs_l1 = ClaimAcc::new(
        format!("l2-vs-l1{cell}"),
        "l2-at-most-sqrt-dim-times-l1",
        true,
    );
    let mut sup_vs_l2 = ClaimAcc::new(
        format!("sup-vs-l2{cell}"),
        "sup-norm-vs-l2-power-mean",
        false,
    );
    let mut sup_vs_l4 = ClaimAcc::new(
        format!("sup-vs-l4{cell}"),
        "sup-norm-vs-l4-power-mean",
        false,
    );
    for trial in 0..config.trials {
        let f = sample_sos_stream(
            n,
            k,
            config.sos_terms,
            config.seed,
            per_trial_stream(n, k, trial),
        );
        let extrema = sphere_extrema(&f, opts);
        let max_f = extrema.max.value;
        let min_f = extrema.min.value;
        let linf = max_f.abs().max(min_f.abs());

        // (1) sup norm <= D(n,k) * mean (mean is exactly 1)
        max_vs_mean.record_float_le(linf, d_half as f64, config.tol, Some(&f));

        // (2) alpha max + (1-alpha) min <= 1 <= (1-alpha) max + alpha min
        sandwich_lower.record_float_le(
            alpha_f * max_f + (1.0 - alpha_f) * min_f,
            1.0,
            config.tol,
            Some(&f),
        );
        sandwich_upper.record_float_le(
            1.0,
            (1.0 - alpha_f) * max_f + alpha_f * min_f,
            config.tol,
            Some(&f),
        );

        // (3) exact: integral(f^2) <= D(n,k) * integral(f)^2 = D(n,k)
        l2_vs_l1.record_exact_le(&l2_norm_sq(&f), &rat(d_half as i64), Some(&f));

        // (4) sup^{2l} <= D(n, 2kl) * integral(f^{2l}) for l in {1, 2}
        let rhs2 = rat_to_f64(&(rat(dim_forms(n, 2 * k) as i64) * l2_norm_sq(&f)));
        sup_vs_l2.record_float_le(linf * linf, rhs2, config.tol, Some(&f));
        match power_integral(&f, 2, config.term_budget) {
            Ok(p4) => {
                let rhs4 = rat_to_f64(&(rat(dim_forms(n, 4 * k) as i64) * p4));
                sup_vs_l4.record_float_le(linf.powi(4), rhs4, config.tol, Some(&f));
            }
            Err(Error::TermBudgetExceeded { .. }) => sup_vs_l4.record_skip(),
            Err(e) => panic!("unexpected error in power integral: {e}"),
        }
    }
    claims.push(max_vs_mean);
    claims.push(sandwich_lower);
    claims.push(sandwich_upper);
    claims.push(l2_vs_l1);
    claims.push(sup_vs_l2);
    claims.push(sup_vs_l4);

    // --- sharpness on the extreme form ------------------------------------
    let mut extreme_max = ClaimAcc::new(
        format!("extreme-form-max-equality{cell}"),
        "sup-norm-bound-attained-by-the-extreme-form",
        false,
    );
    let mut extreme_mean = ClaimAcc::new(
        format!("extreme-form-mean-equality{cell}"),
        "mean-sandwich-attained-by-the-extreme-form",
        false,
    );
    {
        let f = max_extreme_form(n, k);
        let extrema = sphere_extrema(&f, opts);
        extreme_max.record_float_eq(extrema.max.value, d_half as f64, config.tol, Some(&f));
        extreme_mean.record_float_eq(
            alpha_f * extrema.max.value + (1.0 - alpha_f) * extrema.min.value,
            1.0,
            config.tol,
            Some(&f),
        );
    }
    claims.push(extreme_max);
    claims.push(extreme_mean);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> SuiteConfig {
        SuiteConfig {
            trials: 5,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn small_suite_passes() {
        let report = run_suite(&small_config());
        assert!(report.pass(), "{}", report.render_text());
        assert!(!report.exact_failure);
        assert!(report.witnesses.is_empty());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite(&small_config());
        let b = run_suite(&small_config());
        assert_eq!(a.render_text(), b.render_text());
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
    }

    #[test]
    fn json_records_carry_the_pinned_keys() {
        let report = run_suite(&SuiteConfig {
            trials: 1,
            n_range: (2, 2),
            k_range: (1, 1),
            ..SuiteConfig::default()
        });
        let json = report.to_json();
        let results = json["results"].as_array().unwrap();
        assert!(!results.is_empty());
        for record in results {
            for key in ["claim", "paper_ref", "exact", "lhs", "rhs", "slack", "pass"] {
                assert!(record.get(key).is_some(), "missing key {key}");
            }
        }
    }
}
