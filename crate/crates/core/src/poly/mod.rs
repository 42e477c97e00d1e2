//! Sparse multivariate polynomials over Q(zeta_12) in 3 or 4 variables.

mod parse;
mod symmetric;
pub mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;
use thiserror::Error;

use crate::exactnum::{ComplexApprox, Cyclo12};
use crate::group::Permutation;

pub use parse::{parse_poly, BasisMode, ParseError, ParseErrorKind};
pub use symmetric::{elementary_symmetric, random_symmetric, random_symmetric_with, weighted_monomials, ElemBasisPoly};
pub use univariate::UniPoly;

pub const MAX_VARS: usize = 4;

/// Printable variable names, by index.
pub const VAR_NAMES: [&str; MAX_VARS] = ["X", "Y", "Z", "W"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("unsupported variable count {0} (expected 1..=4)")]
    BadVarCount(usize),
}

/// Exponents of a monomial; slots past the ambient variable count stay zero.
///
/// Ordered graded-lexicographically: total degree first, then `X > Y > Z > W`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExponentVector([u16; MAX_VARS]);

impl ExponentVector {
    pub fn new(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut e = [0u16; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Self(e)
    }

    pub fn unit(i: usize) -> Self {
        let mut e = [0u16; MAX_VARS];
        e[i] = 1;
        Self(e)
    }

    pub fn get(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn as_array(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn plus(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Self(e)
    }

    fn minus(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a -= b;
        }
        Self(e)
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial `sum c_a X^a` with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Cyclo12>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&nvars), "bad variable count {nvars}");
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Cyclo12) -> Self {
        Self::monomial(nvars, ExponentVector::default(), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Cyclo12::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::monomial(nvars, ExponentVector::unit(i), Cyclo12::one())
    }

    pub fn monomial(nvars: usize, exps: ExponentVector, c: Cyclo12) -> Self {
        let mut p = Self::zero(nvars);
        debug_assert!(exps.0[nvars..].iter().all(|&e| e == 0));
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (ExponentVector, Cyclo12)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Cyclo12)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExponentVector) -> Cyclo12 {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// The graded-lex leading term.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &Cyclo12)> {
        self.terms.last_key_value()
    }

    /// Constant value if the polynomial has degree <= 0.
    pub fn as_constant(&self) -> Option<Cyclo12> {
        match self.terms.len() {
            0 => Some(Cyclo12::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                (e.total_degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    /// Degree if every term has the same total degree.
    pub fn homogeneous_degree(&self) -> Result<u32, PolyError> {
        let mut degs = self.terms.keys().map(|e| e.total_degree());
        let first = degs.next().ok_or(PolyError::ZeroPolynomial)?;
        if degs.all(|d| d == first) {
            Ok(first)
        } else {
            Err(PolyError::NotHomogeneous)
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    /// All coefficients are fixed by complex conjugation.
    pub fn has_real_coefficients(&self) -> bool {
        self.terms.values().all(Cyclo12::is_real)
    }

    /// All coefficients are rational.
    pub fn has_rational_coefficients(&self) -> bool {
        self.terms.values().all(Cyclo12::is_rational)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.0[var] as u32).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.keys().any(|e| e.0[v] > 0))
            .collect()
    }

    fn add_term(&mut self, e: ExponentVector, c: &Cyclo12) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    fn sub_term(&mut self, e: ExponentVector, c: &Cyclo12) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing -= c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, -c);
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::VarCountMismatch(self.nvars, other.nvars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.sub_term(*e, c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.plus(eb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyclo12) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&Cyclo12::from_rational(r.clone()))
    }

    /// Multiply by the monomial `c * X^e`.
    pub fn mul_term(&self, e: &ExponentVector, c: &Cyclo12) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(ea, x)| (ea.plus(e), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient-wise complex conjugation.
    pub fn conj(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect(),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index {i} out of range");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k == 0 {
                continue;
            }
            let mut d = *e;
            d.0[i] -= 1;
            out.add_term(d, &c.scale(&Rational::from(k)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.partial_derivative(i)).collect()
    }

    /// `sum_i X_i df/dX_i - D f`, identically zero for homogeneous `f` of degree `D`.
    pub fn euler_residual(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let d = self.homogeneous_degree()?;
        let mut acc = self.scale_rational(&Rational::from(-(d as i64)));
        for i in 0..self.nvars {
            let term = self.partial_derivative(i).mul_term(&ExponentVector::unit(i), &Cyclo12::one());
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Substitution `X_i -> X_{sigma(i)}`.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Self {
        assert_eq!(sigma.len(), self.nvars, "permutation size must match variable count");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut moved = [0u16; MAX_VARS];
            for i in 0..self.nvars {
                moved[sigma.image(i)] = e.0[i];
            }
            out.terms.insert(ExponentVector(moved), c.clone());
        }
        out
    }

    /// Invariance under a transposition and a full cycle, which generate the symmetric group.
    pub fn is_symmetric(&self) -> bool {
        let n = self.nvars;
        if n == 1 {
            return true;
        }
        let swap = Permutation::transposition(n, 0, 1);
        let cycle = Permutation::cycle(n);
        self.apply_permutation(&swap) == *self && self.apply_permutation(&cycle) == *self
    }

    pub fn evaluate_exact(&self, point: &[Cyclo12]) -> Cyclo12 {
        assert_eq!(point.len(), self.nvars, "point length must match variable count");
        let powers = power_table(point, self.max_exponents(), Cyclo12::one(), |a, b| a * b);
        let mut acc = Cyclo12::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, p) in powers.iter().enumerate() {
                let k = e.0[i] as usize;
                if k > 0 {
                    t = &t * &p[k];
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn evaluate_numeric(&self, point: &[ComplexApprox]) -> ComplexApprox {
        assert_eq!(point.len(), self.nvars, "point length must match variable count");
        let prec = point.iter().map(ComplexApprox::precision_bits).max().unwrap_or(53);
        let powers = power_table(point, self.max_exponents(), ComplexApprox::one(prec), |a, b| a * b);
        let mut acc = ComplexApprox::zero(prec);
        for (e, c) in &self.terms {
            let mut t = c.embed(prec);
            for (i, p) in powers.iter().enumerate() {
                let k = e.0[i] as usize;
                if k > 0 {
                    t = &t * &p[k];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Sum of coefficient magnitudes times `max(1,|p_i|)^deg`, used to scale residuals.
    pub fn evaluation_scale(&self, point: &[ComplexApprox]) -> f64 {
        let m = point.iter().map(|p| p.abs_f64()).fold(1.0f64, f64::max);
        self.terms
            .iter()
            .map(|(e, c)| c.embed(53).abs_f64() * m.powi(e.total_degree() as i32))
            .sum::<f64>()
            .max(f64::MIN_POSITIVE)
    }

    fn max_exponents(&self) -> Vec<usize> {
        (0..self.nvars)
            .map(|i| self.terms.keys().map(|e| e.0[i] as usize).max().unwrap_or(0))
            .collect()
    }

    /// Substitute `X_i = 1`; the variable stays in the ring but no longer occurs.
    pub fn dehomogenize(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut d = *e;
            d.0[i] = 0;
            out.add_term(d, c);
        }
        out
    }

    /// Substitute `X_var = value`.
    pub fn substitute_value(&self, var: usize, value: &Cyclo12) -> Self {
        let max = self.degree_in(var) as usize;
        let powers = power_table(std::slice::from_ref(value), vec![max], Cyclo12::one(), |a, b| a * b);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut d = *e;
            let k = d.0[var] as usize;
            d.0[var] = 0;
            out.add_term(d, &(c * &powers[0][k]));
        }
        out
    }

    /// Simultaneous substitution `X_i -> images[i]`, where images live in a ring with
    /// `images[0].nvars()` variables.
    pub fn compose(&self, images: &[MultiPoly]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target = images[0].nvars;
        let powers = power_table(images, self.max_exponents(), MultiPoly::one(target), |a, b| a * b);
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, p) in powers.iter().enumerate() {
                let k = e.0[i] as usize;
                if k > 0 {
                    t = &t * &p[k];
                }
            }
            for (e2, c2) in t.terms {
                out.add_term(e2, &c2);
            }
        }
        out
    }

    /// Coefficients with respect to `var`: `self = sum_k out[k] * X_var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut d = *e;
            let k = d.0[var] as usize;
            d.0[var] = 0;
            out[k].terms.insert(d, c.clone());
        }
        out
    }

    /// Exact quotient `self / divisor` if the division leaves no remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lm_d, lc_d) = divisor.leading_term()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.inv().ok()?));
        }
        let lc_inv = lc_d.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            if !lm_d.divides(lm_r) {
                return None;
            }
            let m = lm_r.minus(lm_d);
            let c = lc_r * &lc_inv;
            for (e, dc) in &divisor.terms {
                rem.sub_term(e.plus(&m), &(dc * &c));
            }
            quot.add_term(m, &c);
        }
        Some(quot)
    }

    /// Univariate view in `var`; `None` if another variable occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        let coeffs = self
            .coefficients_in(var)
            .into_iter()
            .map(|c| c.as_constant())
            .collect::<Option<Vec<_>>>()?;
        Some(UniPoly::new(coeffs))
    }

    pub fn from_univariate(nvars: usize, var: usize, u: &UniPoly) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = ExponentVector::default();
            e.0[var] = k as u16;
            out.add_term(e, c);
        }
        out
    }

    /// Largest coefficient bit size, a rough measure of coefficient growth.
    pub fn max_coeff_bits(&self) -> u32 {
        self.terms
            .values()
            .flat_map(|c| c.coeffs().iter())
            .map(|r| r.numer().significant_bits() + r.denom().significant_bits())
            .max()
            .unwrap_or(0)
    }
}

fn power_table<T: Clone>(
    base: &[T],
    max_exps: Vec<usize>,
    one: T,
    mul: impl Fn(&T, &T) -> T,
) -> Vec<Vec<T>> {
    base.iter()
        .zip(max_exps)
        .map(|(b, max)| {
            let mut row = Vec::with_capacity(max + 1);
            row.push(one.clone());
            for k in 1..=max {
                let next = mul(&row[k - 1], b);
                row.push(next);
            }
            row
        })
        .collect()
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Cyclo12::from_int(-1))
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

fn needs_parens(c: &Cyclo12) -> bool {
    !(c.is_rational() || c.as_scaled_root_of_unity().is_some())
}

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-lex order, in the parser's syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names: Vec<&str> = VAR_NAMES[..self.nvars].to_vec();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut mono = Vec::new();
            for (i, name) in names.iter().enumerate() {
                match e.0[i] {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    k => mono.push(format!("{name}^{k}")),
                }
            }
            let (neg, mag) = if !needs_parens(c) && c.to_string().starts_with('-') {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let coeff = if needs_parens(&mag) {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(s: &str) -> MultiPoly {
        parse_poly(s, 3, BasisMode::Monomial).unwrap()
    }

    #[test]
    fn ring_examples() {
        let s = p3("X+Y+Z");
        assert_eq!(&s * &s, p3("X^2+Y^2+Z^2+2*X*Y+2*X*Z+2*Y*Z"));
        assert_eq!(&s + &MultiPoly::zero(3), s);
        assert_eq!(&p3("X-Y") * &p3("X+Y"), p3("X^2-Y^2"));
        let four = MultiPoly::zero(4);
        assert_eq!(s.checked_add(&four), Err(PolyError::VarCountMismatch(3, 4)));
        assert_eq!((&s * &p3("X^2")).homogeneous_degree(), Ok(3));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p3("X^2*Y").partial_derivative(0), p3("2*X*Y"));
        assert_eq!(p3("X+Y+Z").partial_derivative(2), p3("1"));
        assert_eq!(p3("X^5+Y^5+Z^5").partial_derivative(0), p3("5*X^4"));
    }

    #[test]
    fn euler_examples() {
        assert!(p3("X^2*Y").euler_residual().unwrap().is_zero());
        assert!(p3("X^5+Y^5+Z^5").euler_residual().unwrap().is_zero());
        assert_eq!(p3("X^2+Y").euler_residual(), Err(PolyError::NotHomogeneous));
    }

    #[test]
    fn permutation_examples() {
        let swap = Permutation::transposition(3, 0, 1);
        assert_eq!(p3("X^2*Y").apply_permutation(&swap), p3("Y^2*X"));
        let cyc = Permutation::cycle(3);
        assert_eq!(p3("X^2*Y").apply_permutation(&cyc), p3("Y^2*Z"));
        for s in Permutation::all(3) {
            assert_eq!(p3("X+Y+Z").apply_permutation(&s), p3("X+Y+Z"));
        }
    }

    #[test]
    fn symmetry_examples() {
        assert!(p3("X^5+Y^5+Z^5").is_symmetric());
        assert!(!p3("X^2*Y").is_symmetric());
        assert!(p3("X*Y+Y*Z+Z*X").is_symmetric());
        // invariant under the transposition only
        assert!(!p3("X*Y + Z").is_symmetric());
    }

    #[test]
    fn evaluation_examples() {
        let w = Cyclo12::omega();
        let w2 = &w * &w;
        assert!(p3("X+Y+Z").evaluate_exact(&[w.clone(), w2, Cyclo12::one()]).is_zero());
        let pt = [Cyclo12::from_int(-1), Cyclo12::one(), Cyclo12::zero()];
        assert!(p3("X^5+Y^5+Z^5").evaluate_exact(&pt).is_zero());
        assert_eq!(p3("X*Y+Y*Z+Z*X").evaluate_exact(&[Cyclo12::one(), Cyclo12::one(), Cyclo12::one()]), Cyclo12::from_int(3));

        let prec = 128;
        let pt = [
            ComplexApprox::from_f64(1.0, 0.0, prec),
            ComplexApprox::from_f64(-0.5, 0.866, prec),
            ComplexApprox::from_f64(-0.5, -0.866, prec),
        ];
        assert!(p3("X+Y+Z").evaluate_numeric(&pt).abs_f64() < 1e-3);
        let two = MultiPoly::constant(1, Cyclo12::from_int(2));
        assert_eq!(two.evaluate_numeric(&[ComplexApprox::from_f64(7.0, 1.0, 64)]).to_f64(), (2.0, 0.0));
        let sq = MultiPoly::var(1, 0).pow(2);
        assert_eq!(sq.evaluate_numeric(&[ComplexApprox::from_f64(3.0, 0.0, 64)]).to_f64(), (9.0, 0.0));
    }

    #[test]
    fn dehomogenize_examples() {
        assert_eq!(p3("X^2+Y*Z").dehomogenize(2), p3("X^2+Y"));
        assert_eq!(p3("Z^3").dehomogenize(2), p3("1"));
        assert_eq!(p3("X+Y+Z").dehomogenize(2), p3("X+Y+1"));
    }

    #[test]
    fn exact_division() {
        let a = p3("X^2 - 2*X*Y + 3*Z^2 + omega*Y");
        let b = p3("X*Y + Z - 7");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b));
        assert_eq!(a.div_exact(&p3("X+Y")), None);
    }

    #[test]
    fn compose_and_coefficients() {
        let f = p3("X^2*Y + Z");
        let images = [p3("Y"), p3("X+Z"), p3("2")];
        assert_eq!(f.compose(&images), p3("Y^2*X + Y^2*Z + 2"));
        let cs = p3("X^2*Y + 3*Y + X").coefficients_in(1);
        assert_eq!(cs, vec![p3("X"), p3("X^2+3")]);
    }

    #[test]
    fn display_round_trips_through_parser() {
        for s in ["X^5+Y^5+Z^5", "-3/4*X*Y + omega*Z^2 - 7", "(2 + I)*X^3 - Y", "0", "I*omega*X"] {
            let p = p3(s);
            assert_eq!(p3(&p.to_string()), p, "{s} -> {p}");
        }
    }
}
