//! Exact arithmetic in the cyclotomic field Q(zeta_12) and its complex embedding.
//!
//! Elements are stored in the power basis `{1, z, z^2, z^3}` with `z` a primitive
//! 12th root of unity satisfying `z^4 = z^2 - 1`. Both `i = z^3` and the cube
//! root of unity `omega = z^4 = z^2 - 1` are exact elements.
//!
//! The embedding into the complex numbers sends `z` to `e^{i pi / 6}`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use thiserror::Error;

/// Arbitrary-precision rational (always reduced, positive denominator).
pub type BigRational = Rational;

/// Default working precision for numerical solving.
pub const DEFAULT_PRECISION: u32 = 128;
/// Smallest precision accepted for embeddings.
pub const MIN_PRECISION: u32 = 53;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
}

/// An element `c0 + c1 z + c2 z^2 + c3 z^3` of Q(zeta_12).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo12 {
    c: [Rational; 4],
}

impl Default for Cyclo12 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Cyclo12 {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        Self { c: [c0, c1, c2, c3] }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self {
            c: [r, Rational::new(), Rational::new(), Rational::new()],
        }
    }

    /// `num/den`; panics if `den == 0`.
    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::from((num, den)))
    }

    /// The primitive 12th root of unity `z`.
    pub fn zeta() -> Self {
        Self::basis(1)
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(12) as u32;
        let mut acc = Self::one();
        let z = Self::zeta();
        for _ in 0..k {
            acc = &acc * &z;
        }
        acc
    }

    /// The imaginary unit `i = z^3`.
    pub fn i() -> Self {
        Self::basis(3)
    }

    /// The primitive cube root of unity `omega = z^4 = z^2 - 1 = e^{2 pi i/3}`.
    pub fn omega() -> Self {
        Self::new(
            Rational::from(-1),
            Rational::new(),
            Rational::from(1),
            Rational::new(),
        )
    }

    /// `sqrt(3) = 2z - z^3`.
    pub fn sqrt3() -> Self {
        Self::new(
            Rational::new(),
            Rational::from(2),
            Rational::new(),
            Rational::from(-1),
        )
    }

    fn basis(k: usize) -> Self {
        let mut out = Self::zero();
        out.c[k] = Rational::from(1);
        out
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.cmp0() == Ordering::Equal)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|x| x.cmp0() == Ordering::Equal)
    }

    /// Returns the rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.c[1..].iter().all(|x| x.cmp0() == Ordering::Equal) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Complex conjugation, `z -> z^11 = z - z^3`.
    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        Self::new(
            Rational::from(c0 + c2),
            c1.clone(),
            Rational::from(-c2),
            -Rational::from(c1 + c3),
        )
    }

    /// Multiplicative inverse, by solving the 4x4 rational system `b * a = 1`.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.clone().recip()));
        }
        // Column j holds the coordinates of self * z^j.
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::new(); 5]; 4];
        let mut col = self.clone();
        let z = Self::zeta();
        for j in 0..4 {
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.c[i].clone();
            }
            col = &col * &z;
        }
        m[0][4] = Rational::from(1);
        let sol = solve_rational_system(m).ok_or(ExactError::DivisionByZero)?;
        let mut it = sol.into_iter();
        Ok(Self::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            c: [
                Rational::from(&self.c[0] * r),
                Rational::from(&self.c[1] * r),
                Rational::from(&self.c[2] * r),
                Rational::from(&self.c[3] * r),
            ],
        }
    }

    /// Complex value under `z = e^{i pi/6}`, correctly rounded from a guarded computation.
    pub fn embed(&self, precision_bits: u32) -> ComplexApprox {
        let prec = precision_bits.max(MIN_PRECISION);
        let work = prec + 32;
        let half_sqrt3 = Float::with_val(work, 3).sqrt() / 2u32;
        let [c0, c1, c2, c3] = &self.c;
        // z = sqrt3/2 + i/2, z^2 = 1/2 + i sqrt3/2, z^3 = i.
        let re = Float::with_val(work, c0)
            + Float::with_val(work, c1) * &half_sqrt3
            + Float::with_val(work, c2) / 2u32;
        let im = Float::with_val(work, c1) / 2u32
            + Float::with_val(work, c2) * &half_sqrt3
            + Float::with_val(work, c3);
        ComplexApprox::new(
            Float::with_val_round(prec, &re, Round::Nearest).0,
            Float::with_val_round(prec, &im, Round::Nearest).0,
        )
    }

    /// If `self = r * u` with `r` rational and `u` a 12th root of unity, returns `(r, k)` with `u = z^k`
    /// and `r > 0`.
    pub fn as_scaled_root_of_unity(&self) -> Option<(Rational, u32)> {
        if self.is_zero() {
            return None;
        }
        for k in 0..12u32 {
            let q = self * &Self::zeta_pow(-(k as i64));
            if let Some(r) = q.as_rational() {
                if r.cmp0() == Ordering::Greater {
                    return Some((r.clone(), k));
                }
            }
        }
        None
    }

    /// Coordinates `(a, b, c, d)` with `self = a + b*I + c*omega + d*I*omega`.
    pub fn to_i_omega_basis(&self) -> [Rational; 4] {
        let [c0, c1, c2, c3] = &self.c;
        // I*omega = z^3 - z, so z = -(I*omega) + I.
        let c = c2.clone();
        let d = Rational::from(-c1);
        let b = Rational::from(c3 + c1);
        let a = Rational::from(c0 + c2);
        [a, b, c, d]
    }
}

/// Gaussian elimination over Q on an augmented `n x (n+1)` matrix.
pub(crate) fn solve_rational_system(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col].cmp0() != Ordering::Equal)?;
        m.swap(col, pivot);
        let inv = m[col][col].clone().recip();
        for x in m[col].iter_mut().skip(col) {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && m[r][col].cmp0() != Ordering::Equal {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let t = Rational::from(&factor * &m[col][c]);
                    m[r][c] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

impl From<i64> for Cyclo12 {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for Cyclo12 {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a Cyclo12> for &'a Cyclo12 {
    type Output = Cyclo12;
    fn add(self, rhs: &Cyclo12) -> Cyclo12 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Cyclo12 {
    type Output = Cyclo12;
    fn add(mut self, rhs: Cyclo12) -> Cyclo12 {
        self += &rhs;
        self
    }
}

impl AddAssign<&Cyclo12> for Cyclo12 {
    fn add_assign(&mut self, rhs: &Cyclo12) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            if b.cmp0() != Ordering::Equal {
                *a += b;
            }
        }
    }
}

impl<'a> Sub<&'a Cyclo12> for &'a Cyclo12 {
    type Output = Cyclo12;
    fn sub(self, rhs: &Cyclo12) -> Cyclo12 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Cyclo12 {
    type Output = Cyclo12;
    fn sub(mut self, rhs: Cyclo12) -> Cyclo12 {
        self -= &rhs;
        self
    }
}

impl SubAssign<&Cyclo12> for Cyclo12 {
    fn sub_assign(&mut self, rhs: &Cyclo12) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            if b.cmp0() != Ordering::Equal {
                *a -= b;
            }
        }
    }
}

impl Neg for Cyclo12 {
    type Output = Cyclo12;
    fn neg(mut self) -> Cyclo12 {
        for a in self.c.iter_mut() {
            *a = Rational::from(-&*a);
        }
        self
    }
}

impl Neg for &Cyclo12 {
    type Output = Cyclo12;
    fn neg(self) -> Cyclo12 {
        -self.clone()
    }
}

impl<'a> Mul<&'a Cyclo12> for &'a Cyclo12 {
    type Output = Cyclo12;
    fn mul(self, rhs: &Cyclo12) -> Cyclo12 {
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        let mut p: [Rational; 7] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.cmp0() == Ordering::Equal {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.cmp0() != Ordering::Equal {
                    p[i + j] += Rational::from(a * b);
                }
            }
        }
        // z^6 = -1, z^5 = z^3 - z, z^4 = z^2 - 1.
        let [mut p0, mut p1, mut p2, mut p3, p4, p5, p6] = p;
        p0 -= &p6;
        p3 += &p5;
        p1 -= &p5;
        p2 += &p4;
        p0 -= &p4;
        Cyclo12 {
            c: [p0, p1, p2, p3],
        }
    }
}

impl Mul for Cyclo12 {
    type Output = Cyclo12;
    fn mul(self, rhs: Cyclo12) -> Cyclo12 {
        &self * &rhs
    }
}

impl MulAssign<&Cyclo12> for Cyclo12 {
    fn mul_assign(&mut self, rhs: &Cyclo12) {
        *self = &*self * rhs;
    }
}

impl<'a> Div<&'a Cyclo12> for &'a Cyclo12 {
    type Output = Result<Cyclo12, ExactError>;
    fn div(self, rhs: &Cyclo12) -> Result<Cyclo12, ExactError> {
        Ok(self * &rhs.inv()?)
    }
}

fn fmt_rational_factor(r: &Rational, unit: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    // r > 0 here; unit is "" for the rational 1.
    if unit.is_empty() {
        return write!(f, "{}", r);
    }
    if *r == 1 {
        write!(f, "{}", unit)
    } else {
        write!(f, "{}*{}", r, unit)
    }
}

const UNIT_NAMES: [(&str, i64); 12] = [
    // (name, sign) indexed by k for z^k; sign -1 means the name denotes -z^k.
    ("", 1),
    ("I*omega", -1),
    ("omega^2", -1),
    ("I", 1),
    ("omega", 1),
    ("I*omega^2", -1),
    ("", -1),
    ("I*omega", 1),
    ("omega^2", 1),
    ("I", -1),
    ("omega", -1),
    ("I*omega^2", 1),
];

impl fmt::Display for Cyclo12 {
    /// Renders in the parser's syntax (`I`, `omega`, rational literals).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some((r, k)) = self.as_scaled_root_of_unity() {
            let (name, sign) = UNIT_NAMES[k as usize];
            if sign < 0 {
                write!(f, "-")?;
            }
            return fmt_rational_factor(&r, name, f);
        }
        let parts = self.to_i_omega_basis();
        let names = ["", "I", "omega", "I*omega"];
        let mut first = true;
        for (r, name) in parts.iter().zip(names) {
            if r.cmp0() == Ordering::Equal {
                continue;
            }
            let neg = r.cmp0() == Ordering::Less;
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            fmt_rational_factor(&Rational::from(r.abs_ref()), name, f)?;
        }
        Ok(())
    }
}

impl serde::Serialize for Cyclo12 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Cyclo12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo12({})", self)
    }
}

/// A complex number with two MPFR components of equal precision.
#[derive(Clone, PartialEq)]
pub struct ComplexApprox {
    re: Float,
    im: Float,
}

impl fmt::Debug for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "({:e} {:+e}i @{})", re, im, self.precision_bits())
    }
}

impl ComplexApprox {
    pub fn new(re: Float, im: Float) -> Self {
        debug_assert!(re.is_finite() && im.is_finite(), "non-finite complex value");
        let prec = re.prec().max(im.prec());
        let re = if re.prec() == prec { re } else { Float::with_val(prec, re) };
        let im = if im.prec() == prec { im } else { Float::with_val(prec, im) };
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_f64(0.0, 0.0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(1.0, 0.0, prec)
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, r),
            im: Float::new(prec),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Self {
            re,
            im: Float::new(prec),
        }
    }

    pub fn precision_bits(&self) -> u32 {
        self.re.prec()
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn to_complex64(&self) -> num_complex::Complex64 {
        let (re, im) = self.to_f64();
        num_complex::Complex64::new(re, im)
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.precision_bits();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        let p = self.precision_bits();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    /// `|self|` as f64, for comparisons against tolerances.
    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.precision_bits();
        Self {
            re: Float::with_val(p, &self.re * s),
            im: Float::with_val(p, &self.im * s),
        }
    }

    pub fn recip(&self) -> Self {
        let p = self.precision_bits();
        let n = self.norm_sqr();
        Self {
            re: Float::with_val(p, &self.re / &n),
            im: Float::with_val(p, -Float::with_val(p, &self.im / &n)),
        }
    }

    /// `e^{i theta}` at the given precision.
    pub fn cis(theta: &Float) -> Self {
        let p = theta.prec();
        let (s, c) = theta.clone().sin_cos(Float::new(p));
        Self { re: c, im: s }
    }

    pub fn powi(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.precision_bits());
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

    /// Distance `|self - other|` as f64.
    pub fn dist(&self, other: &Self) -> f64 {
        (self - other).abs_f64()
    }
}

impl<'a> Add<&'a ComplexApprox> for &'a ComplexApprox {
    type Output = ComplexApprox;
    fn add(self, rhs: &ComplexApprox) -> ComplexApprox {
        let p = self.precision_bits();
        ComplexApprox {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }
}

impl<'a> Sub<&'a ComplexApprox> for &'a ComplexApprox {
    type Output = ComplexApprox;
    fn sub(self, rhs: &ComplexApprox) -> ComplexApprox {
        let p = self.precision_bits();
        ComplexApprox {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }
}

impl<'a> Mul<&'a ComplexApprox> for &'a ComplexApprox {
    type Output = ComplexApprox;
    fn mul(self, rhs: &ComplexApprox) -> ComplexApprox {
        let p = self.precision_bits();
        let re = Float::with_val(p, &self.re * &rhs.re) - Float::with_val(p, &self.im * &rhs.im);
        let im = Float::with_val(p, &self.re * &rhs.im) + Float::with_val(p, &self.im * &rhs.re);
        ComplexApprox { re, im }
    }
}

impl<'a> Div<&'a ComplexApprox> for &'a ComplexApprox {
    type Output = ComplexApprox;
    fn div(self, rhs: &ComplexApprox) -> ComplexApprox {
        self * &rhs.recip()
    }
}

impl Neg for &ComplexApprox {
    type Output = ComplexApprox;
    fn neg(self) -> ComplexApprox {
        let p = self.precision_bits();
        ComplexApprox {
            re: Float::with_val(p, -&self.re),
            im: Float::with_val(p, -&self.im),
        }
    }
}

impl AddAssign<&ComplexApprox> for ComplexApprox {
    fn add_assign(&mut self, rhs: &ComplexApprox) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ComplexApprox> for ComplexApprox {
    fn sub_assign(&mut self, rhs: &ComplexApprox) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// from the continued-fraction convergents of the exact binary value.
pub fn rational_approximation(x: &Float, max_den: u64) -> Option<Rational> {
    let exact = x.to_rational()?;
    let max_den = Integer::from(max_den);
    let (mut h0, mut h1) = (Integer::from(0), Integer::from(1));
    let (mut k0, mut k1) = (Integer::from(1), Integer::from(0));
    let mut rest = exact.clone();
    let mut best = Rational::new();
    for _ in 0..200 {
        let a = Integer::from(rest.floor_ref());
        let h2 = Integer::from(&a * &h1) + &h0;
        let k2 = Integer::from(&a * &k1) + &k0;
        if k2 > max_den {
            break;
        }
        best = Rational::from((h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = rest - a;
        if frac.cmp0() == Ordering::Equal {
            break;
        }
        rest = frac.recip();
    }
    if k1.cmp0() == Ordering::Equal {
        return None;
    }
    Some(best)
}

/// Tries to identify a numeric value as an exact element: Gaussian rationals first,
/// then rational multiples of 12th roots of unity. The candidate must lie within
/// `tol * (1 + |x|)` of `x`.
pub fn recognize(x: &ComplexApprox, tol: f64, max_den: u64) -> Option<Cyclo12> {
    let prec = x.precision_bits();
    let scale = 1.0 + x.abs_f64();
    let close = |c: &Cyclo12| c.embed(prec).dist(x) <= tol * scale;
    let gaussian = || -> Option<Cyclo12> {
        let re = rational_approximation(x.re(), max_den)?;
        let im = rational_approximation(x.im(), max_den)?;
        let c = Cyclo12::from_rational(re) + Cyclo12::from_rational(im) * Cyclo12::i();
        close(&c).then_some(c)
    };
    if let Some(c) = gaussian() {
        return Some(c);
    }
    for k in 0..12i64 {
        let rotated = x * &Cyclo12::zeta_pow(-k).embed(prec);
        if rotated.im().to_f64().abs() > tol * scale {
            continue;
        }
        if let Some(r) = rational_approximation(rotated.re(), max_den) {
            let c = Cyclo12::from_rational(r) * Cyclo12::zeta_pow(k);
            if close(&c) {
                return Some(c);
            }
        }
    }
    None
}

/// `2^{-bits}` as f64.
pub fn pow2_neg(bits: u32) -> f64 {
    Float::with_val(64, Float::i_exp(1, -(bits as i32))).to_f64()
}

/// Integer power helper used in tests and bounds.
pub fn rational_pow(r: &Rational, e: u32) -> Rational {
    r.clone().pow(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_cyclo(rng: &mut ChaCha8Rng) -> Cyclo12 {
        let mut r = || Rational::from((rng.gen_range(-20i64..=20), rng.gen_range(1i64..=7)));
        Cyclo12::new(r(), r(), r(), r())
    }

    #[test]
    fn add_examples() {
        let a = Cyclo12::one() + Cyclo12::i();
        let b = Cyclo12::one() - Cyclo12::i();
        assert_eq!(a + b, Cyclo12::from_int(2));
        let w = Cyclo12::omega();
        let w2 = &w * &w;
        // omega^2 = -z^2
        assert_eq!(w2, -Cyclo12::zeta_pow(2));
        assert!((&(&w + &w2) + &Cyclo12::one()).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&Cyclo12::i() * &Cyclo12::i(), Cyclo12::from_int(-1));
        let w = Cyclo12::omega();
        assert!((&(&w * &w) * &w).is_one());
        assert_ne!(w, Cyclo12::one());
        // z * z^3 = z^4 = z^2 - 1
        let z4 = &Cyclo12::zeta() * &Cyclo12::i();
        assert_eq!(
            z4,
            Cyclo12::new(Rational::from(-1), Rational::new(), Rational::from(1), Rational::new())
        );
        assert_eq!(Cyclo12::zeta_pow(12), Cyclo12::one());
        assert_eq!(Cyclo12::zeta_pow(6), Cyclo12::from_int(-1));
        let s = Cyclo12::sqrt3();
        assert_eq!(&s * &s, Cyclo12::from_int(3));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Cyclo12::i().inv().unwrap(), -Cyclo12::i());
        assert_eq!(Cyclo12::from_int(2).inv().unwrap(), Cyclo12::from_frac(1, 2));
        let w = Cyclo12::omega();
        assert_eq!(w.inv().unwrap(), &w * &w);
        assert_eq!(Cyclo12::zero().inv(), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(Cyclo12::i().conj(), -Cyclo12::i());
        let w = Cyclo12::omega();
        assert_eq!(w.conj(), &w * &w);
        assert_eq!(Cyclo12::from_frac(3, 2).conj(), Cyclo12::from_frac(3, 2));
        assert!(Cyclo12::sqrt3().is_real());
        assert!(!Cyclo12::zeta().is_real());
    }

    #[test]
    fn embed_examples() {
        let w = Cyclo12::omega().embed(128);
        let (re, im) = w.to_f64();
        assert!((re + 0.5).abs() < 1e-15);
        assert!((im - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(Cyclo12::i().embed(53).to_f64(), (0.0, 1.0));
        let third = Cyclo12::from_frac(1, 3).embed(200);
        let err = Float::with_val(200, third.re() - Float::with_val(400, Rational::from((1, 3))));
        assert!(err.abs().to_f64() < 2f64.powi(-196));
    }

    #[test]
    fn field_axioms_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (a, b, c) = (random_cyclo(&mut rng), random_cyclo(&mut rng), random_cyclo(&mut rng));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(a.conj().conj(), a);
            assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            if !a.is_zero() {
                assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn embedding_is_a_ring_morphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let (a, b) = (random_cyclo(&mut rng), random_cyclo(&mut rng));
            let prec = 128;
            let lhs = (&a * &b).embed(prec);
            let rhs = &a.embed(prec) * &b.embed(prec);
            let mag = 1.0 + lhs.abs_f64();
            assert!(lhs.dist(&rhs) < 2f64.powi(-(prec as i32) + 8) * mag);
            let sum = (&a + &b).embed(prec);
            assert!(sum.dist(&(&a.embed(prec) + &b.embed(prec))) < 2f64.powi(-120) * (1.0 + sum.abs_f64()));
        }
    }

    #[test]
    fn is_real_matches_embedding() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for i in 0..200 {
            let a = random_cyclo(&mut rng);
            // half the samples forced real
            let a = if i % 2 == 0 { &a + &a.conj() } else { a };
            let im = a.embed(128).im().to_f64().abs();
            assert_eq!(a.is_real(), im < 1e-30, "{a}");
        }
    }

    #[test]
    fn display_uses_parser_names() {
        let w = Cyclo12::omega();
        assert_eq!(w.to_string(), "omega");
        assert_eq!((&w * &w).to_string(), "omega^2");
        assert_eq!((-Cyclo12::i()).to_string(), "-I");
        assert_eq!(Cyclo12::from_frac(-3, 4).to_string(), "-3/4");
        assert_eq!((Cyclo12::from_int(2) + Cyclo12::i()).to_string(), "2 + I");
        for k in 0..12 {
            let u = Cyclo12::zeta_pow(k);
            let (r, kk) = u.as_scaled_root_of_unity().unwrap();
            assert_eq!((r, kk as i64), (Rational::from(1), k));
        }
    }

    #[test]
    fn recognize_special_values() {
        let prec = 128;
        for k in 0..12 {
            let u = Cyclo12::zeta_pow(k).scale(&Rational::from((3, 7)));
            assert_eq!(recognize(&u.embed(prec), 1e-20, 1_000_000), Some(u));
        }
        let g = Cyclo12::from_frac(5, 3) + Cyclo12::from_frac(-1, 2) * Cyclo12::i();
        assert_eq!(recognize(&g.embed(prec), 1e-20, 1_000_000), Some(g));
        let pi_ish = ComplexApprox::from_real(Float::with_val(prec, rug::float::Constant::Pi));
        assert_eq!(recognize(&pi_ish, 1e-20, 1_000_000), None);
    }

    #[test]
    fn rational_approximation_finds_small_fractions() {
        let x = Float::with_val(128, Rational::from((355, 113)));
        assert_eq!(rational_approximation(&x, 1000), Some(Rational::from((355, 113))));
        let y = Float::with_val(128, -0.75);
        assert_eq!(rational_approximation(&y, 10), Some(Rational::from((-3, 4))));
    }
}
