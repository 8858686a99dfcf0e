//! Exact univariate polynomials over the rationals.
//!
//! Supports the axial sup-norm path (Sturm-sequence isolation of critical
//! points with certified enclosures) and the exact integration identities:
//! all coefficients are `BigRational`, so every evaluation, division and
//! definite integral below is exact.

use num_traits::{One, Signed, Zero};

use crate::rational::{rat, ratio, Rat};

/// Dense univariate polynomial, coefficients ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial t^k.
    pub fn t_pow(k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = Rat::one();
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the nonzero polynomial; None for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + crate::rational::rat_to_f64(c);
        }
        acc
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let mut coeffs = vec![Rat::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        UniPoly::new(coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &Rat) -> UniPoly {
        if s.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs)
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Exact definite integral over [-1, 1].
    pub fn integrate_m1_1(&self) -> Rat {
        let mut acc = Rat::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % 2 == 0 {
                acc += c * ratio(2, i as i64 + 1);
            }
        }
        acc
    }

    /// Multiply by (1 - t^2)^e.
    pub fn mul_one_minus_t2_pow(&self, e: u32) -> UniPoly {
        let base = UniPoly::new(vec![Rat::one(), Rat::zero(), -Rat::one()]);
        let mut acc = self.clone();
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn div_rem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.coeffs.len() - 1;
        let lead = div.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let r_deg = rem.len() - 1;
            let factor = rem.last().unwrap() / lead;
            if !factor.is_zero() {
                let shift = r_deg - dd;
                for (i, c) in div.coeffs.iter().enumerate() {
                    rem[shift + i] = &rem[shift + i] - &(c * &factor);
                }
                quot[shift] = factor;
            }
            rem.pop();
            while rem.last().is_some_and(Rat::is_zero) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Divide self by a known exact divisor; panics on a nonzero remainder.
    pub fn div_exact(&self, div: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "div_exact called with a non-divisor");
        q
    }

    /// Positive rescaling to a monic polynomial (sign structure preserved).
    fn monic_positive(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&(Rat::one() / l.abs())),
        }
    }

    /// Greatest common divisor, normalized monic.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic_positive();
        }
        match a.leading() {
            None => UniPoly::zero(),
            Some(l) => a.scale(&(Rat::one() / l.clone())),
        }
    }

    /// Square-free part self / gcd(self, self').
    pub fn squarefree_part(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.clone()
        } else {
            self.div_exact(&g)
        }
    }

    /// Upper bound for |p(t)| on [-1, 1].
    pub fn abs_coeff_sum(&self) -> Rat {
        self.coeffs.iter().map(Rat::abs).sum()
    }
}

/// Sturm chain of a squarefree polynomial.
struct SturmChain {
    polys: Vec<UniPoly>,
}

impl SturmChain {
    fn new(g: &UniPoly) -> Self {
        let mut polys = vec![g.clone(), g.derivative()];
        loop {
            let len = polys.len();
            if polys[len - 1].is_zero() {
                polys.pop();
                break;
            }
            let (_, r) = polys[len - 2].div_rem(&polys[len - 1]);
            if r.is_zero() {
                break;
            }
            polys.push(r.scale(&rat(-1)).monic_positive());
        }
        SturmChain { polys }
    }

    fn variations_at(&self, t: &Rat) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.polys {
            let v = p.eval(t);
            if v.is_zero() {
                continue;
            }
            let sign = v.is_positive();
            if let Some(prev) = last {
                if prev != sign {
                    count += 1;
                }
            }
            last = Some(sign);
        }
        count
    }

    /// Number of distinct real roots in (a, b); requires g(a) != 0, g(b) != 0.
    fn count_roots(&self, a: &Rat, b: &Rat) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Location of one real root of a squarefree polynomial.
#[derive(Debug, Clone)]
pub enum RootLoc {
    Exact(Rat),
    /// Open interval (a, b) with a sign change and exactly one root inside.
    Interval(Rat, Rat),
}

/// Result of isolating the real roots of a polynomial on an interval.
///
/// Exact rational roots hit while probing are deflated out, so every
/// `interval` brackets a sign change of `deflated` and contains exactly one
/// of its roots. Refinement must bisect `deflated`, not the original input:
/// an interval may still contain a deflated exact root, where the original
/// polynomial has no sign change.
#[derive(Debug, Clone)]
pub struct IsolatedRoots {
    pub exact: Vec<Rat>,
    pub intervals: Vec<(Rat, Rat)>,
    pub deflated: UniPoly,
}

/// Isolate all real roots of `p` inside the open interval (lo, hi).
pub fn isolate_roots(p: &UniPoly, lo: &Rat, hi: &Rat) -> IsolatedRoots {
    let mut exact: Vec<Rat> = Vec::new();
    let mut g = p.squarefree_part();
    // Deflate roots found at the interval endpoints or at probed midpoints,
    // then restart; the polynomial shrinks each time so this terminates.
    while g.degree().unwrap_or(0) > 0 {
        for endpoint in [lo, hi] {
            while g.degree().unwrap_or(0) > 0 && g.eval(endpoint).is_zero() {
                let lin = UniPoly::new(vec![-endpoint.clone(), Rat::one()]);
                g = g.div_exact(&lin);
            }
        }
        if g.degree().unwrap_or(0) == 0 {
            break;
        }
        match try_isolate(&g, lo, hi) {
            Ok(intervals) => {
                exact.sort();
                return IsolatedRoots {
                    exact,
                    intervals,
                    deflated: g,
                };
            }
            Err(root) => {
                let lin = UniPoly::new(vec![-root.clone(), Rat::one()]);
                g = g.div_exact(&lin);
                exact.push(root);
            }
        }
    }
    exact.sort();
    IsolatedRoots {
        exact,
        intervals: Vec::new(),
        deflated: g,
    }
}

/// Either a full isolation into one-root intervals, or the first exact
/// rational root hit while probing midpoints.
fn try_isolate(g: &UniPoly, lo: &Rat, hi: &Rat) -> Result<Vec<(Rat, Rat)>, Rat> {
    let chain = SturmChain::new(g);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let count = chain.count_roots(&a, &b);
        if count == 0 {
            continue;
        }
        let mid = (&a + &b) / rat(2);
        if g.eval(&mid).is_zero() {
            return Err(mid);
        }
        if count == 1 {
            out.push((a, b));
            continue;
        }
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// Shrink an isolating interval for a root of squarefree `g` until
/// `b - a < width`. Returns `Exact` if a probe lands on the root.
pub fn refine_root(g: &UniPoly, a: &Rat, b: &Rat, width: &Rat) -> RootLoc {
    let mut a = a.clone();
    let mut b = b.clone();
    let sign_a = g.eval(&a).is_positive();
    while &(&b - &a) >= width {
        let mid = (&a + &b) / rat(2);
        let v = g.eval(&mid);
        if v.is_zero() {
            return RootLoc::Exact(mid);
        }
        if v.is_positive() == sign_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    RootLoc::Interval(a, b)
}

/// Certified enclosure of one extremum candidate value.
#[derive(Debug, Clone)]
pub struct Enclosure {
    pub lo: Rat,
    pub hi: Rat,
    /// Representative argument (exact critical point or interval midpoint).
    pub at: Rat,
}

impl Enclosure {
    fn exact(v: Rat, at: Rat) -> Self {
        Enclosure {
            lo: v.clone(),
            hi: v,
            at,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
}

/// Certified enclosures of max and min of `q` over [-1, 1].
///
/// Interior critical points are isolated through the derivative's squarefree
/// part and refined until the Lipschitz bound `sum |q'| * width` drops below
/// `tol`, so each returned enclosure has width below `tol`.
pub fn extrema_on_interval(q: &UniPoly, tol: &Rat) -> (Enclosure, Enclosure) {
    assert!(tol.is_positive());
    let one = rat(1);
    let neg_one = rat(-1);
    let mut max_cands: Vec<Enclosure> = Vec::new();
    let mut min_cands: Vec<Enclosure> = Vec::new();
    for endpoint in [&neg_one, &one] {
        let enc = Enclosure::exact(q.eval(endpoint), endpoint.clone());
        max_cands.push(enc.clone());
        min_cands.push(enc);
    }
    let qp = q.derivative();
    if !qp.is_zero() {
        let lipschitz = qp.abs_coeff_sum();
        let width_target = if lipschitz.is_zero() {
            tol.clone()
        } else {
            tol / &lipschitz
        };
        let iso = isolate_roots(&qp, &neg_one, &one);
        // exact critical points: attained values bound both extrema
        for r in &iso.exact {
            let enc = Enclosure::exact(q.eval(r), r.clone());
            max_cands.push(enc.clone());
            min_cands.push(enc);
        }
        'interval: for (a0, b0) in &iso.intervals {
            let (mut a, mut b) = (a0.clone(), b0.clone());
            // shrink until the Lipschitz slack is below tolerance and no
            // deflated exact root remains inside; only then do the signs of
            // q' at the endpoints classify the bracketed critical point
            let mut target = width_target.clone();
            loop {
                match refine_root(&iso.deflated, &a, &b, &target) {
                    RootLoc::Exact(r) => {
                        let enc = Enclosure::exact(q.eval(&r), r);
                        max_cands.push(enc.clone());
                        min_cands.push(enc);
                        continue 'interval;
                    }
                    RootLoc::Interval(a2, b2) => {
                        a = a2;
                        b = b2;
                    }
                }
                let clean = iso.exact.iter().all(|r| r < &a || r > &b)
                    && !qp.eval(&a).is_zero()
                    && !qp.eval(&b).is_zero();
                if clean {
                    break;
                }
                target /= rat(2);
            }
            let va = q.eval(&a);
            let vb = q.eval(&b);
            let da = qp.eval(&a);
            let db = qp.eval(&b);
            let slack = &lipschitz * (&b - &a);
            let mid = (&a + &b) / rat(2);
            if da.is_positive() && db.is_negative() {
                // local maximum inside (a, b)
                let lo = va.clone().max(vb.clone());
                let hi = va.min(vb) + &slack;
                max_cands.push(Enclosure { lo, hi, at: mid });
            } else if da.is_negative() && db.is_positive() {
                let hi = va.clone().min(vb.clone());
                let lo = va.max(vb) - &slack;
                min_cands.push(Enclosure { lo, hi, at: mid });
            }
            // equal signs: monotone through the critical point, no extremum
        }
    }
    let max = combine(max_cands, true);
    let min = combine(min_cands, false);
    (max, min)
}

fn combine(cands: Vec<Enclosure>, maximize: bool) -> Enclosure {
    let mut best = cands[0].clone();
    let (mut lo, mut hi) = (best.lo.clone(), best.hi.clone());
    for c in cands.into_iter().skip(1) {
        if maximize {
            if c.lo > best.lo {
                best = c.clone();
            }
            if c.lo > lo {
                lo = c.lo.clone();
            }
            if c.hi > hi {
                hi = c.hi;
            }
        } else {
            if c.hi < best.hi {
                best = c.clone();
            }
            if c.hi < hi {
                hi = c.hi.clone();
            }
            if c.lo < lo {
                lo = c.lo;
            }
        }
    }
    Enclosure {
        lo,
        hi,
        at: best.at,
    }
}

/// Legendre-type polynomial Q_{n,d}(t): the restriction of the degree-d zonal
/// harmonic in n variables to a meridian, built by the classical three-term
/// recurrences and normalized so Q(1) = 1. For n = 2 this is the Chebyshev
/// recurrence; for n >= 3 the Gegenbauer recurrence with weight (n-2)/2.
pub fn zonal_recurrence(n: usize, d: u32) -> UniPoly {
    assert!(n >= 2);
    let t = UniPoly::t_pow(1);
    if d == 0 {
        return UniPoly::constant(Rat::one());
    }
    if d == 1 {
        return t;
    }
    if n == 2 {
        // T_d = 2 t T_{d-1} - T_{d-2}
        let mut prev = UniPoly::constant(Rat::one());
        let mut cur = t.clone();
        for _ in 2..=d {
            let next = t.mul(&cur).scale(&rat(2)).sub(&prev);
            prev = cur;
            cur = next;
        }
        return cur;
    }
    // Gegenbauer C_d^lambda with lambda = (n-2)/2, then normalize at t = 1.
    let lambda = ratio(n as i64 - 2, 2);
    let mut prev = UniPoly::constant(Rat::one());
    let mut cur = t.scale(&(&lambda * rat(2)));
    for j in 2..=d as i64 {
        // j C_j = 2 t (j + lambda - 1) C_{j-1} - (j + 2 lambda - 2) C_{j-2}
        let a = (&lambda + rat(j - 1)) * ratio(2, j);
        let b = (&lambda * rat(2) + rat(j - 2)) * ratio(1, j);
        let next = t.mul(&cur).scale(&a).sub(&prev.scale(&b));
        prev = cur;
        cur = next;
    }
    let at_one = cur.eval(&Rat::one());
    cur.scale(&(Rat::one() / at_one))
}
