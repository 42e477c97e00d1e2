//! Elementary symmetric basis: conversion both ways and random symmetric forms.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ExponentVector, MultiPoly, PolyError, MAX_VARS};
use crate::exactnum::Cyclo12;

/// The `k`-th elementary symmetric polynomial in `nvars` variables (`e_0 = 1`).
pub fn elementary_symmetric(nvars: usize, k: usize) -> MultiPoly {
    assert!(k <= nvars);
    let mut out = MultiPoly::zero(nvars);
    for mask in 0u32..(1 << nvars) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut e = [0u16; MAX_VARS];
        for (i, slot) in e.iter_mut().enumerate().take(nvars) {
            *slot = ((mask >> i) & 1) as u16;
        }
        out.add_term(ExponentVector(e), &Cyclo12::one());
    }
    out
}

/// A polynomial in `e_1..e_n`; variable `j` of the inner polynomial stands for `e_{j+1}`,
/// which has weight `j+1`.
#[derive(Clone, PartialEq, Eq)]
pub struct ElemBasisPoly {
    poly: MultiPoly,
}

impl ElemBasisPoly {
    pub fn new(poly: MultiPoly) -> Self {
        Self { poly }
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn inner(&self) -> &MultiPoly {
        &self.poly
    }

    fn weight(e: &ExponentVector) -> u32 {
        e.0.iter().enumerate().map(|(j, &k)| (j as u32 + 1) * k as u32).sum()
    }

    /// Common weight of all terms, if there is one.
    pub fn weighted_degree(&self) -> Option<u32> {
        let mut ws = self.poly.terms().map(|(e, _)| Self::weight(e));
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    /// Substitute `e_k` by the elementary symmetric polynomials.
    pub fn to_multipoly(&self) -> MultiPoly {
        let n = self.nvars();
        let mut cache = PowerCache::new(n);
        let mut out = MultiPoly::zero(n);
        for (e, c) in self.poly.terms() {
            let m = cache.e_monomial(e);
            out = &out + &m.scale(c);
        }
        out
    }
}

impl fmt::Display for ElemBasisPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.poly.to_string();
        // Inner variables are printed as X, Y, Z, W; rename to e1..e4.
        let renamed: String = s
            .chars()
            .map(|ch| match ch {
                'X' => "e1".to_string(),
                'Y' => "e2".to_string(),
                'Z' => "e3".to_string(),
                'W' => "e4".to_string(),
                other => other.to_string(),
            })
            .collect();
        write!(f, "{renamed}")
    }
}

impl fmt::Debug for ElemBasisPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElemBasisPoly[{}]({})", self.nvars(), self)
    }
}

struct PowerCache {
    nvars: usize,
    elem: Vec<MultiPoly>,
    powers: HashMap<(usize, u16), MultiPoly>,
}

impl PowerCache {
    fn new(nvars: usize) -> Self {
        Self {
            nvars,
            elem: (1..=nvars).map(|k| elementary_symmetric(nvars, k)).collect(),
            powers: HashMap::new(),
        }
    }

    fn power(&mut self, j: usize, k: u16) -> MultiPoly {
        if k == 0 {
            return MultiPoly::one(self.nvars);
        }
        if let Some(p) = self.powers.get(&(j, k)) {
            return p.clone();
        }
        let p = &self.power(j, k - 1) * &self.elem[j];
        self.powers.insert((j, k), p.clone());
        p
    }

    fn e_monomial(&mut self, e: &ExponentVector) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for j in 0..self.nvars {
            if e.0[j] > 0 {
                acc = &acc * &self.power(j, e.0[j]);
            }
        }
        acc
    }
}

impl MultiPoly {
    /// Rewrites a symmetric polynomial in the elementary basis by repeatedly cancelling
    /// the lexicographic leading term `c X^a` with `c e_1^{a1-a2} ... e_n^{an}`.
    pub fn to_elementary_basis(&self) -> Result<ElemBasisPoly, PolyError> {
        if !self.is_symmetric() {
            return Err(PolyError::NotSymmetric);
        }
        let n = self.nvars();
        let mut cache = PowerCache::new(n);
        let mut rest = self.clone();
        let mut out = MultiPoly::zero(n);
        while !rest.is_zero() {
            let (lead, c) = rest
                .terms()
                .max_by(|a, b| a.0.lex_cmp(b.0))
                .map(|(e, c)| (*e, c.clone()))
                .unwrap();
            let mut ek = [0u16; MAX_VARS];
            for j in 0..n {
                let next = if j + 1 < n { lead.0[j + 1] } else { 0 };
                // symmetric input guarantees a non-increasing leading exponent
                debug_assert!(lead.0[j] >= next);
                ek[j] = lead.0[j] - next;
            }
            let ek = ExponentVector(ek);
            let m = cache.e_monomial(&ek).scale(&c);
            rest = &rest - &m;
            out.add_term(ek, &c);
        }
        Ok(ElemBasisPoly::new(out))
    }
}

/// Exponent vectors `(k_1..k_n)` with `sum j*k_j = weight`, in a fixed order.
pub fn weighted_monomials(nvars: usize, weight: u32) -> Vec<ExponentVector> {
    fn rec(j: usize, nvars: usize, left: u32, cur: &mut [u16; MAX_VARS], out: &mut Vec<ExponentVector>) {
        if j == nvars {
            if left == 0 {
                out.push(ExponentVector(*cur));
            }
            return;
        }
        let w = j as u32 + 1;
        for k in (0..=left / w).rev() {
            cur[j] = k as u16;
            rec(j + 1, nvars, left - k * w, cur, out);
        }
        cur[j] = 0;
    }
    let mut out = Vec::new();
    rec(0, nvars, weight, &mut [0u16; MAX_VARS], &mut out);
    out
}

/// A random weighted-degree-`degree` combination of e-monomials with integer
/// coefficients in `[-coeff_bound, coeff_bound]`, never zero.
pub fn random_symmetric_with<R: Rng + ?Sized>(
    nvars: usize,
    degree: u32,
    rng: &mut R,
    coeff_bound: i64,
) -> ElemBasisPoly {
    assert!(degree >= 1, "degree must be positive");
    assert!(coeff_bound >= 1, "coefficient bound must be positive");
    let monos = weighted_monomials(nvars, degree);
    loop {
        let terms: Vec<(ExponentVector, Cyclo12)> = monos
            .iter()
            .map(|e| (*e, Cyclo12::from_int(rng.gen_range(-coeff_bound..=coeff_bound))))
            .collect();
        let p = MultiPoly::from_terms(nvars, terms);
        if !p.is_zero() {
            return ElemBasisPoly::new(p);
        }
    }
}

/// Seeded version of [`random_symmetric_with`], expanded into monomials.
pub fn random_symmetric(nvars: usize, degree: u32, seed: u64, coeff_bound: i64) -> MultiPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_symmetric_with(nvars, degree, &mut rng, coeff_bound).to_multipoly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, BasisMode};

    fn p3(s: &str) -> MultiPoly {
        parse_poly(s, 3, BasisMode::Monomial).unwrap()
    }

    fn e3(s: &str) -> ElemBasisPoly {
        // e-variables parsed as plain variables X=e1, Y=e2, Z=e3
        let renamed = s.replace("e1", "X").replace("e2", "Y").replace("e3", "Z");
        ElemBasisPoly::new(p3(&renamed))
    }

    /// Power sums from Newton's identities, independent of the leading-term algorithm:
    /// p_k = e1 p_{k-1} - e2 p_{k-2} + e3 p_{k-3} (with p_0 = 3 and e_j = 0 for j > 3).
    fn newton_power_sum(k: usize) -> ElemBasisPoly {
        let e = [p3("X"), p3("Y"), p3("Z")];
        let mut p: Vec<MultiPoly> = vec![p3("3")];
        for m in 1..=k {
            let mut acc = MultiPoly::zero(3);
            for j in 1..=m.min(3) {
                let sign = if j % 2 == 1 { 1 } else { -1 };
                let term = if j == m {
                    e[j - 1].scale(&Cyclo12::from_int(m as i64))
                } else {
                    &e[j - 1] * &p[m - j]
                };
                acc = &acc + &term.scale(&Cyclo12::from_int(sign));
            }
            p.push(acc);
        }
        ElemBasisPoly::new(p[k].clone())
    }

    #[test]
    fn elementary_polys() {
        assert_eq!(elementary_symmetric(3, 1), p3("X+Y+Z"));
        assert_eq!(elementary_symmetric(3, 3), p3("X*Y*Z"));
        assert_eq!(
            elementary_symmetric(4, 2),
            parse_poly("X*Y+X*Z+X*W+Y*Z+Y*W+Z*W", 4, BasisMode::Monomial).unwrap()
        );
    }

    #[test]
    fn to_elementary_examples() {
        assert_eq!(p3("X^2+Y^2+Z^2").to_elementary_basis().unwrap(), e3("e1^2 - 2*e2"));
        assert_eq!(p3("X+Y+Z").to_elementary_basis().unwrap(), e3("e1"));
        let p5 = p3("X^5+Y^5+Z^5").to_elementary_basis().unwrap();
        assert_eq!(p5, newton_power_sum(5));
        assert_eq!(p5, e3("e1^5 - 5*e1^3*e2 + 5*e1*e2^2 + 5*e1^2*e3 - 5*e2*e3"));
        assert_eq!(p3("X^2*Y").to_elementary_basis(), Err(PolyError::NotSymmetric));
    }

    #[test]
    fn newton_oracle_agrees_up_to_degree_eight() {
        for k in 1..=8 {
            let pk = p3(&format!("X^{k}+Y^{k}+Z^{k}"));
            assert_eq!(pk.to_elementary_basis().unwrap(), newton_power_sum(k), "k={k}");
        }
    }

    #[test]
    fn from_elementary_examples() {
        assert_eq!(e3("e1").to_multipoly(), p3("X+Y+Z"));
        assert_eq!(e3("e3").to_multipoly(), p3("X*Y*Z"));
        let e2_4 = ElemBasisPoly::new(MultiPoly::var(4, 1)).to_multipoly();
        assert_eq!(e2_4, elementary_symmetric(4, 2));
        assert!(e3("e1*e2 - 9*e3").to_multipoly().is_symmetric());
    }

    #[test]
    fn weighted_enumeration() {
        assert_eq!(weighted_monomials(3, 1).len(), 1);
        assert_eq!(weighted_monomials(3, 2).len(), 2);
        assert_eq!(weighted_monomials(4, 3).len(), 3);
        assert_eq!(weighted_monomials(4, 4).len(), 5);
        // partitions of 6 into parts <= 3
        assert_eq!(weighted_monomials(3, 6).len(), 7);
    }

    #[test]
    fn random_symmetric_examples() {
        for seed in 0..20 {
            let f = random_symmetric(3, 1, seed, 10);
            let eb = f.to_elementary_basis().unwrap();
            assert_eq!(eb.inner().num_terms(), 1);
            assert_eq!(f.homogeneous_degree(), Ok(1));

            let g = random_symmetric(3, 2, seed, 10);
            let support: Vec<_> = g.to_elementary_basis().unwrap().inner().terms().map(|(e, _)| *e).collect();
            assert!(support.iter().all(|e| weighted_monomials(3, 2).contains(e)));

            let h = random_symmetric(4, 3, seed, 10);
            assert!(h.is_symmetric());
            assert_eq!(h.homogeneous_degree(), Ok(3));
            assert_eq!(h.to_elementary_basis().unwrap().weighted_degree(), Some(3));
        }
        assert_eq!(random_symmetric(3, 4, 99, 10), random_symmetric(3, 4, 99, 10));
    }

    #[test]
    fn display_uses_e_names() {
        assert_eq!(e3("e1^2 - 2*e2").to_string(), "e1^2 - 2*e2");
    }
}
