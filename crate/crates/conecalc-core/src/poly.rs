//! Homogeneous multivariate polynomials with exact rational coefficients.
//!
//! A form is a sparse map from exponent vectors to nonzero rational
//! coefficients. All monomials of a nonzero form share one total degree; the
//! zero form keeps `(n, d)` as metadata so degree bookkeeping survives
//! subtraction and the Laplacian. Values are immutable after construction and
//! every operation is pure.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rational::{pow_rat, rat, Rat};

/// Per-variable degrees of one monomial. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponent(exps)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of the product monomial.
    pub fn combine(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// A homogeneous form in `n` variables of total degree `d`.
#[derive(Debug, Clone)]
pub struct HomoForm {
    n: usize,
    d: u32,
    terms: BTreeMap<Exponent, Rat>,
}

/// Equality is by dimension and term map; zero forms of any nominal degree
/// compare equal.
impl PartialEq for HomoForm {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl Eq for HomoForm {}

impl HomoForm {
    /// The zero form of nominal degree `d`.
    pub fn zero(n: usize, d: u32) -> Self {
        HomoForm {
            n,
            d,
            terms: BTreeMap::new(),
        }
    }

    /// Constant form (degree 0).
    pub fn constant(n: usize, c: Rat) -> Self {
        let mut f = HomoForm::zero(n, 0);
        if !c.is_zero() {
            f.terms.insert(Exponent(vec![0; n]), c);
        }
        f
    }

    /// Single monomial `c * x^alpha`.
    pub fn monomial(n: usize, alpha: Exponent, c: Rat) -> Self {
        assert_eq!(alpha.len(), n, "exponent arity must match dimension");
        let mut f = HomoForm::zero(n, alpha.degree());
        if !c.is_zero() {
            f.terms.insert(alpha, c);
        }
        f
    }

    /// The variable x_{idx} (0-based index).
    pub fn variable(n: usize, idx: usize) -> Self {
        assert!(idx < n);
        let mut exps = vec![0; n];
        exps[idx] = 1;
        HomoForm::monomial(n, Exponent(exps), Rat::one())
    }

    /// r^2 = x_1^2 + ... + x_n^2.
    pub fn r2(n: usize) -> Self {
        let mut f = HomoForm::zero(n, 2);
        for i in 0..n {
            let mut exps = vec![0; n];
            exps[i] = 2;
            f.terms.insert(Exponent(exps), Rat::one());
        }
        f
    }

    /// r^{2k} = (x_1^2 + ... + x_n^2)^k.
    pub fn r2k(n: usize, k: u32) -> Self {
        let r2 = HomoForm::r2(n);
        let mut acc = HomoForm::constant(n, Rat::one());
        for _ in 0..k {
            acc = acc.multiply(&r2).expect("same dimension");
        }
        acc
    }

    /// The linear form <x, coeffs>.
    pub fn linear_form(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        let mut f = HomoForm::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut exps = vec![0; n];
                exps[i] = 1;
                f.terms.insert(Exponent(exps), c.clone());
            }
        }
        f
    }

    /// Build from raw terms, dropping zero coefficients. Panics if a stored
    /// exponent disagrees with `d` or `n`.
    pub fn from_terms<I>(n: usize, d: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rat)>,
    {
        let mut f = HomoForm::zero(n, d);
        for (e, c) in terms {
            assert_eq!(e.len(), n);
            assert_eq!(e.degree(), d, "term degree must equal the form degree");
            f.add_term(e, c);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rat> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, e: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Sum of two forms of the same dimension and degree. Zero forms combine
    /// with any degree.
    pub fn add(&self, other: &HomoForm) -> HomoForm {
        assert_eq!(self.n, other.n, "dimension mismatch in add");
        if !self.is_zero() && !other.is_zero() {
            assert_eq!(self.d, other.d, "degree mismatch in add");
        }
        let d = if self.is_zero() { other.d } else { self.d };
        let mut out = HomoForm {
            n: self.n,
            d,
            terms: self.terms.clone(),
        };
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HomoForm) -> HomoForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomoForm {
        HomoForm {
            n: self.n,
            d: self.d,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> HomoForm {
        if s.is_zero() {
            return HomoForm::zero(self.n, self.d);
        }
        HomoForm {
            n: self.n,
            d: self.d,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    /// Exact product of two forms; degrees add.
    pub fn multiply(&self, other: &HomoForm) -> Result<HomoForm, Error> {
        self.multiply_with_budget(other, usize::MAX)
    }

    /// Product with a cap on the number of stored terms.
    pub fn multiply_with_budget(&self, other: &HomoForm, budget: usize) -> Result<HomoForm, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut out = HomoForm::zero(self.n, self.d + other.d);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.combine(eb), ca * cb);
                if out.terms.len() > budget {
                    return Err(Error::TermBudgetExceeded { budget });
                }
            }
        }
        Ok(out)
    }

    /// self^e with a term budget on every intermediate product.
    pub fn pow_with_budget(&self, e: u32, budget: usize) -> Result<HomoForm, Error> {
        let mut acc = HomoForm::constant(self.n, Rat::one());
        for _ in 0..e {
            acc = acc.multiply_with_budget(self, budget)?;
        }
        Ok(acc)
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat, Error> {
        if point.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &a) in e.as_slice().iter().enumerate() {
                if a > 0 {
                    term *= pow_rat(&point[i], a);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Sum of second partial derivatives. Degree drops by two; forms of
    /// degree < 2 map to the zero form.
    pub fn laplacian(&self) -> HomoForm {
        let d = self.d.saturating_sub(2);
        let mut out = HomoForm::zero(self.n, d);
        for (e, c) in &self.terms {
            for i in 0..self.n {
                let a = e.get(i);
                if a >= 2 {
                    let mut exps = e.as_slice().to_vec();
                    exps[i] -= 2;
                    out.add_term(Exponent(exps), c * rat(a as i64 * (a as i64 - 1)));
                }
            }
        }
        out
    }

    /// Substitution x_i <- sign_i * x_{perm[i]}, an exact orthogonal change of
    /// variables. `perm` must be a permutation of 0..n.
    pub fn substitute_signed_permutation(&self, perm: &[usize], signs: &[bool]) -> HomoForm {
        assert_eq!(perm.len(), self.n);
        assert_eq!(signs.len(), self.n);
        let mut out = HomoForm::zero(self.n, self.d);
        for (e, c) in &self.terms {
            let mut exps = vec![0u32; self.n];
            let mut flip = false;
            for (i, &a) in e.as_slice().iter().enumerate() {
                exps[perm[i]] += a;
                if signs[i] && a % 2 == 1 {
                    flip = !flip;
                }
            }
            let coeff = if flip { -c.clone() } else { c.clone() };
            out.add_term(Exponent(exps), coeff);
        }
        out
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in the order
/// induced by lexicographic comparison (ascending).
pub fn monomials(n: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill(&mut out, &mut current, 0, d);
    out.sort();
    return out;

    fn fill(out: &mut Vec<Exponent>, current: &mut Vec<u32>, idx: usize, remaining: u32) {
        if idx + 1 == current.len() {
            current[idx] = remaining;
            out.push(Exponent::new(current.clone()));
            current[idx] = 0;
            return;
        }
        for v in 0..=remaining {
            current[idx] = v;
            fill(out, current, idx + 1, remaining - v);
        }
        current[idx] = 0;
    }
}

impl fmt::Display for HomoForm {
    /// Canonical text form: terms in descending lexicographic exponent order,
    /// coefficients as exact rationals. Round-trips through the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = e
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, a)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Canonical text rendering of a form; inverse of `parse::parse_form`.
pub fn format_form(f: &HomoForm) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn r2_evaluates_to_one_on_unit_vectors() {
        let f = HomoForm::r2(3);
        let p = [rat(0), rat(0), rat(1)];
        assert_eq!(f.evaluate(&p).unwrap(), rat(1));
        let p = [ratio(3, 5), ratio(4, 5), rat(0)];
        assert_eq!(f.evaluate(&p).unwrap(), rat(1));
    }

    #[test]
    fn legendre_quadratic_evaluates_to_one_on_axis() {
        // (3*x3^2 - r^2)/2 at e_3
        let f = HomoForm::monomial(3, e(&[0, 0, 2]), rat(3))
            .sub(&HomoForm::r2(3))
            .scale(&ratio(1, 2));
        assert_eq!(f.evaluate(&[rat(0), rat(0), rat(1)]).unwrap(), rat(1));
        assert_eq!(
            HomoForm::monomial(3, e(&[0, 0, 2]), rat(1))
                .evaluate(&[rat(1), rat(0), rat(0)])
                .unwrap(),
            rat(0)
        );
    }

    #[test]
    fn evaluate_checks_arity() {
        let f = HomoForm::r2(3);
        assert_eq!(
            f.evaluate(&[rat(1)]),
            Err(Error::ArityMismatch {
                expected: 3,
                got: 1
            })
        );
    }

    #[test]
    fn multiply_expands_r2_squared() {
        let r2 = HomoForm::r2(2);
        let sq = r2.multiply(&r2).unwrap();
        let expected = HomoForm::from_terms(
            2,
            4,
            vec![
                (e(&[4, 0]), rat(1)),
                (e(&[2, 2]), rat(2)),
                (e(&[0, 4]), rat(1)),
            ],
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn multiply_by_monomial_shifts_exponents() {
        let f = HomoForm::r2(3);
        let m = HomoForm::monomial(3, e(&[0, 0, 2]), rat(1));
        let shifted = f.multiply(&m).unwrap();
        let expected = HomoForm::from_terms(
            3,
            4,
            vec![
                (e(&[2, 0, 2]), rat(1)),
                (e(&[0, 2, 2]), rat(1)),
                (e(&[0, 0, 4]), rat(1)),
            ],
        );
        assert_eq!(shifted, expected);
    }

    #[test]
    fn difference_of_squares() {
        let x1 = HomoForm::variable(2, 0);
        let x2 = HomoForm::variable(2, 1);
        let lhs = x1.add(&x2).multiply(&x1.sub(&x2)).unwrap();
        let expected =
            HomoForm::from_terms(2, 2, vec![(e(&[2, 0]), rat(1)), (e(&[0, 2]), rat(-1))]);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn multiply_rejects_dimension_mismatch() {
        let f = HomoForm::r2(2);
        let g = HomoForm::r2(3);
        assert_eq!(f.multiply(&g), Err(Error::DimensionMismatch(2, 3)));
    }

    #[test]
    fn laplacian_of_r2_is_2n() {
        for n in 2..=5 {
            assert_eq!(
                HomoForm::r2(n).laplacian(),
                HomoForm::constant(n, rat(2 * n as i64))
            );
        }
    }

    #[test]
    fn laplacian_kills_harmonics() {
        // (3*x3^2 - r^2)/2 is harmonic in three variables
        let f = HomoForm::monomial(3, e(&[0, 0, 2]), rat(3))
            .sub(&HomoForm::r2(3))
            .scale(&ratio(1, 2));
        assert!(f.laplacian().is_zero());
        // x1*x2 has no repeated variable
        let g = HomoForm::monomial(2, e(&[1, 1]), rat(1));
        assert!(g.laplacian().is_zero());
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(n+d-1, d) monomials of degree d in n variables
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(2, 5).len(), 6);
        assert_eq!(monomials(4, 3).len(), 20);
    }

    #[test]
    fn signed_permutation_is_degree_preserving() {
        let f = HomoForm::from_terms(
            3,
            3,
            vec![(e(&[2, 1, 0]), rat(5)), (e(&[0, 1, 2]), rat(-2))],
        );
        let g = f.substitute_signed_permutation(&[2, 0, 1], &[true, false, false]);
        assert_eq!(g.degree(), 3);
        // x1^2 x2 -> (-x3)^2 x1 = x3^2 x1
        assert_eq!(g.coeff(&e(&[1, 0, 2])), rat(5));
    }
}
