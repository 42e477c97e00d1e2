//! Sylvester resultants of multivariate polynomials by evaluation and interpolation.
//!
//! The resultant with respect to one variable is a polynomial in the others; it is
//! sampled on an integer grid (one exact Sylvester determinant per node) and rebuilt
//! with Newton interpolation, one variable at a time.

use rug::{Integer, Rational};

use super::SolveError;
use crate::exactnum::Cyclo12;
use crate::poly::{ExponentVector, MultiPoly};

/// `Res_var(f, g)` using the actual degrees of `f` and `g` in `var`.
pub fn sylvester_resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly, SolveError> {
    if f.is_zero() || g.is_zero() {
        return Err(SolveError::ZeroPolynomial);
    }
    let m = f.degree_in(var) as usize;
    let n = g.degree_in(var) as usize;
    Ok(resultant_with_degrees(f, g, var, m, n))
}

/// Resultant with formal degrees `m >= deg f`, `n >= deg g` in `var`; this is the
/// specialization of the generic resultant, so it commutes with substitution.
pub fn resultant_with_degrees(f: &MultiPoly, g: &MultiPoly, var: usize, m: usize, n: usize) -> MultiPoly {
    let nv = f.nvars();
    let others: Vec<usize> = (0..nv)
        .filter(|&v| v != var && (f.degree_in(v) > 0 || g.degree_in(v) > 0))
        .collect();
    let tf = f.total_degree().unwrap_or(0) as usize;
    let tg = g.total_degree().unwrap_or(0) as usize;
    let bounds: Vec<usize> = others
        .iter()
        .map(|&v| {
            let per_var = m * g.degree_in(v) as usize + n * f.degree_in(v) as usize;
            per_var.min(m.max(tf) * n.max(tg))
        })
        .collect();
    res_rec(f, g, var, m, n, &others, &bounds)
}

fn res_rec(
    f: &MultiPoly,
    g: &MultiPoly,
    var: usize,
    m: usize,
    n: usize,
    others: &[usize],
    bounds: &[usize],
) -> MultiPoly {
    let nv = f.nvars();
    let Some((&v, rest)) = others.split_first() else {
        let a = dense_coeffs(f, var, m);
        let b = dense_coeffs(g, var, n);
        return MultiPoly::constant(nv, sylvester_det(&a, &b));
    };
    let b = bounds[0];
    let values: Vec<MultiPoly> = (0..=b)
        .map(|t| {
            let x = Cyclo12::from_int(t as i64);
            res_rec(
                &f.substitute_value(v, &x),
                &g.substitute_value(v, &x),
                var,
                m,
                n,
                rest,
                &bounds[1..],
            )
        })
        .collect();
    newton_interpolate(values, v)
}

/// Interpolates values at nodes `0, 1, .., len-1` as a polynomial in `v`.
fn newton_interpolate(mut c: Vec<MultiPoly>, v: usize) -> MultiPoly {
    let b = c.len() - 1;
    for j in 1..=b {
        let inv = Rational::from((1, j as i64));
        for i in (j..=b).rev() {
            c[i] = (&c[i] - &c[i - 1]).scale_rational(&inv);
        }
    }
    let x = ExponentVector::unit(v);
    let mut p = c[b].clone();
    for k in (0..b).rev() {
        let shifted = p.mul_term(&x, &Cyclo12::one());
        p = &(&shifted - &p.scale(&Cyclo12::from_int(k as i64))) + &c[k];
    }
    p
}

/// Coefficients of `f` in `var` from degree `deg` down to 0; `f` must not involve
/// any other variable.
fn dense_coeffs(f: &MultiPoly, var: usize, deg: usize) -> Vec<Cyclo12> {
    let cs = f.coefficients_in(var);
    (0..=deg)
        .rev()
        .map(|k| {
            cs.get(k)
                .map(|c| c.as_constant().expect("univariate after substitution"))
                .unwrap_or_default()
        })
        .collect()
}

/// Determinant of the Sylvester matrix of `a` (degree m) and `b` (degree n), both
/// given from the leading coefficient down.
pub fn sylvester_det(a: &[Cyclo12], b: &[Cyclo12]) -> Cyclo12 {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return Cyclo12::one();
    }
    let mut mat = vec![vec![Cyclo12::zero(); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for j in 0..m {
        for (k, c) in b.iter().enumerate() {
            mat[n + j][j + k] = c.clone();
        }
    }
    determinant(mat)
}

/// Exact determinant; integer Bareiss when every entry is rational.
pub fn determinant(mat: Vec<Vec<Cyclo12>>) -> Cyclo12 {
    if mat.iter().flatten().all(Cyclo12::is_rational) {
        let rows: Vec<Vec<Rational>> = mat
            .iter()
            .map(|r| r.iter().map(|c| c.as_rational().expect("rational").clone()).collect())
            .collect();
        return Cyclo12::from_rational(rational_det(rows));
    }
    field_det(mat)
}

fn field_det(mut m: Vec<Vec<Cyclo12>>) -> Cyclo12 {
    let n = m.len();
    let mut det = Cyclo12::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Cyclo12::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].inv().expect("nonzero pivot");
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = &m[r][c] * &inv;
            for k in c..n {
                let t = &factor * &m[c][k];
                m[r][k] -= &t;
            }
        }
    }
    det
}

fn rational_det(rows: Vec<Vec<Rational>>) -> Rational {
    let mut scale = Integer::from(1);
    let mut m: Vec<Vec<Integer>> = rows
        .into_iter()
        .map(|r| {
            let mut l = Integer::from(1);
            for x in &r {
                l.lcm_mut(x.denom());
            }
            scale *= &l;
            r.into_iter()
                .map(|x| {
                    let (num, den) = x.into_numer_denom();
                    num * Integer::from(&l / &den)
                })
                .collect()
        })
        .collect();
    Rational::from((bareiss(&mut m), scale))
}

/// Fraction-free elimination; returns the determinant.
fn bareiss(m: &mut [Vec<Integer>]) -> Integer {
    let n = m.len();
    let mut sign = 1;
    let mut prev = Integer::from(1);
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return Integer::new();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = Integer::from(&m[k][k] * &m[i][j]) - Integer::from(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, BasisMode};

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, 3, BasisMode::Monomial).unwrap()
    }

    #[test]
    fn small_resultants() {
        assert_eq!(sylvester_resultant(&p("Y+X"), &p("Y-X"), 1).unwrap(), p("-2*X"));
        assert_eq!(sylvester_resultant(&p("Y^2-X"), &p("Y"), 1).unwrap(), p("-X"));
        let f = p("X*Y^2 + Y + Z^3");
        assert!(sylvester_resultant(&f, &f, 1).unwrap().is_zero());
        assert!(matches!(
            sylvester_resultant(&MultiPoly::zero(3), &f, 1),
            Err(SolveError::ZeroPolynomial)
        ));
    }

    #[test]
    fn resultant_vanishes_at_common_roots() {
        // x^2 + y^2 - 5 and x*y - 2 meet at (1,2), (2,1), (-1,-2), (-2,-1)
        let r = sylvester_resultant(&p("X^2+Y^2-5"), &p("X*Y-2"), 1).unwrap();
        assert_eq!(r.total_degree(), Some(4));
        for x in [1, 2, -1, -2] {
            assert!(r.evaluate_exact(&[Cyclo12::from_int(x), Cyclo12::zero(), Cyclo12::zero()]).is_zero());
        }
    }

    #[test]
    fn matches_direct_determinant_with_cyclotomic_coefficients() {
        let f = p("omega*Y^2 + X*Y - I*X^2 + Z");
        let g = p("Y^3 - 2*X*Z*Y + X^3 + 1");
        let r = sylvester_resultant(&f, &g, 1).unwrap();
        for (x, z) in [(2, 3), (-1, 5), (4, -2)] {
            let xv = Cyclo12::from_int(x);
            let zv = Cyclo12::from_int(z);
            let fs = f.substitute_value(0, &xv).substitute_value(2, &zv);
            let gs = g.substitute_value(0, &xv).substitute_value(2, &zv);
            let direct = sylvester_det(&dense_coeffs(&fs, 1, 2), &dense_coeffs(&gs, 1, 3));
            assert_eq!(r.evaluate_exact(&[xv, Cyclo12::zero(), zv]), direct);
        }
    }

    #[test]
    fn integer_and_field_determinants_agree() {
        let m: Vec<Vec<Cyclo12>> = [[2, -1, 0], [1, 3, 4], [-2, 5, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| Cyclo12::from_frac(x, 3)).collect())
            .collect();
        assert_eq!(determinant(m.clone()), field_det(m));
    }
}
