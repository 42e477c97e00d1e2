//! Dense univariate polynomials over Q(zeta_12): Euclidean gcd and square-free factorization.

use std::fmt;

use rug::Rational;

use crate::exactnum::{ComplexApprox, Cyclo12};

/// Coefficients stored from the constant term up; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Cyclo12>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Cyclo12>) -> Self {
        while coeffs.last().is_some_and(Cyclo12::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Cyclo12) -> Self {
        Self::new(vec![c])
    }

    /// `t - root`.
    pub fn linear(root: &Cyclo12) -> Self {
        Self::new(vec![-root, Cyclo12::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Cyclo12::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Cyclo12] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Cyclo12> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Cyclo12) -> Cyclo12 {
        let mut acc = Cyclo12::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn embed(&self, prec: u32) -> Vec<ComplexApprox> {
        self.coeffs.iter().map(|c| c.embed(prec)).collect()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from(k as u64)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Cyclo12::zero();
        Self::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + other.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Cyclo12::zero();
        Self::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) - other.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Cyclo12::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Cyclo12::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = d * &c;
                rem[k + j] -= &t;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Yun's algorithm: returns `(factor, multiplicity)` with pairwise coprime monic
    /// square-free factors whose product (with multiplicities) is `self` up to a unit.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut mult = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), mult));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            mult += 1;
        }
        out
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*t^{k}"))
            .collect();
        write!(f, "UniPoly[{}]", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = UniPoly::from_ints(&[-2, 1, 1]);
        let b = UniPoly::from_ints(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[-1, 1]));
        let (q, r) = a.mul(&b).div_rem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn squarefree_of_repeated_roots() {
        // (t-2)^2 (t+1)^3 (t - i)
        let t2 = UniPoly::from_ints(&[-2, 1]);
        let t1 = UniPoly::from_ints(&[1, 1]);
        let ti = UniPoly::linear(&Cyclo12::i());
        let p = t2.mul(&t2).mul(&t1).mul(&t1).mul(&t1).mul(&ti);
        let sqf = p.squarefree_decomposition();
        assert_eq!(sqf, vec![(ti, 1), (t2, 2), (t1, 3)]);
        let total: usize = sqf.iter().map(|(f, m)| f.degree().unwrap() * *m as usize).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn cyclotomic_gcd() {
        // t^3 - 1 and t^2 + t + 1 share the primitive cube roots
        let a = UniPoly::from_ints(&[-1, 0, 0, 1]);
        let b = UniPoly::from_ints(&[1, 1, 1]);
        assert_eq!(a.gcd(&b), b);
        let w = Cyclo12::omega();
        assert!(b.eval(&w).is_zero());
        assert!(a.eval(&(&w * &w)).is_zero());
    }
}
