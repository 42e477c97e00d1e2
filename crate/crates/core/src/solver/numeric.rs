//! Numerical evaluation, Newton refinement and Jacobian conditioning of polynomial systems.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::exactnum::{pow2_neg, ComplexApprox};
use crate::group::ProjPointNumeric;
use crate::poly::MultiPoly;

/// A polynomial with coefficients embedded once at a fixed precision.
#[derive(Clone)]
pub struct NumPoly {
    nvars: usize,
    terms: Vec<([u16; 4], ComplexApprox)>,
}

impl NumPoly {
    pub fn new(f: &MultiPoly, prec: u32) -> Self {
        Self {
            nvars: f.nvars(),
            terms: f.terms().map(|(e, c)| (*e.as_array(), c.embed(prec))).collect(),
        }
    }

    fn precision(&self) -> u32 {
        self.terms.first().map_or(53, |(_, c)| c.precision_bits())
    }

    fn powers(&self, point: &[ComplexApprox], skip: Option<usize>) -> Vec<Vec<ComplexApprox>> {
        let prec = self.precision();
        (0..self.nvars)
            .map(|i| {
                let max = self.terms.iter().map(|(e, _)| e[i] as usize).max().unwrap_or(0);
                let mut v = vec![ComplexApprox::one(prec)];
                if Some(i) != skip {
                    for k in 1..=max {
                        let next = &v[k - 1] * &point[i];
                        v.push(next);
                    }
                }
                v
            })
            .collect()
    }

    pub fn eval(&self, point: &[ComplexApprox]) -> ComplexApprox {
        let pw = self.powers(point, None);
        let mut acc = ComplexApprox::zero(self.precision());
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.nvars {
                if e[i] > 0 {
                    t = &t * &pw[i][e[i] as usize];
                }
            }
            acc += &t;
        }
        acc
    }

    /// `sum |c| prod |p_i|^{e_i}`, the natural scale of `|f(p)|`.
    pub fn scale(&self, point: &[ComplexApprox]) -> f64 {
        let abs: Vec<f64> = point.iter().map(ComplexApprox::abs_f64).collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                (0..self.nvars).fold(c.abs_f64(), |acc, i| acc * abs[i].powi(e[i] as i32))
            })
            .sum()
    }

    pub fn relative_value(&self, point: &[ComplexApprox]) -> f64 {
        let s = self.scale(point);
        if s == 0.0 {
            0.0
        } else {
            self.eval(point).abs_f64() / s
        }
    }

    /// Coefficients in `var` (constant term first) after substituting the other
    /// coordinates of `point`.
    pub fn coeffs_in(&self, var: usize, point: &[ComplexApprox]) -> Vec<ComplexApprox> {
        let pw = self.powers(point, Some(var));
        let prec = self.precision();
        let deg = self.terms.iter().map(|(e, _)| e[var] as usize).max().unwrap_or(0);
        let mut out = vec![ComplexApprox::zero(prec); deg + 1];
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.nvars {
                if i != var && e[i] > 0 {
                    t = &t * &pw[i][e[i] as usize];
                }
            }
            out[e[var] as usize] += &t;
        }
        out
    }
}

/// A square system together with its gradient, embedded at one precision.
pub struct NumSystem {
    pub polys: Vec<NumPoly>,
    pub grads: Vec<Vec<NumPoly>>,
    pub prec: u32,
}

impl NumSystem {
    pub fn new(fs: &[MultiPoly], prec: u32) -> Self {
        Self {
            polys: fs.iter().map(|f| NumPoly::new(f, prec)).collect(),
            grads: fs
                .iter()
                .map(|f| f.gradient().iter().map(|g| NumPoly::new(g, prec)).collect())
                .collect(),
            prec,
        }
    }

    /// Largest relative residual `|f_i(p)| / scale_i(p)`.
    pub fn residual(&self, p: &[ComplexApprox]) -> f64 {
        self.polys.iter().map(|f| f.relative_value(p)).fold(0.0, f64::max)
    }

    /// Newton iteration on the dehomogenized system in the chart of the largest
    /// coordinate; returns the refined representative (chart coordinate 1).
    pub fn newton(&self, p: &[ComplexApprox], max_iter: usize) -> Vec<ComplexApprox> {
        let chart = largest_index(p);
        let inv = p[chart].with_precision(self.prec).recip();
        let mut x: Vec<ComplexApprox> = p.iter().map(|c| &c.with_precision(self.prec) * &inv).collect();
        let vars: Vec<usize> = (0..p.len()).filter(|&i| i != chart).collect();
        let target = pow2_neg(self.prec.saturating_sub(8));
        let mut best = (self.residual(&x), x.clone());
        for _ in 0..max_iter {
            let rhs: Vec<ComplexApprox> = self.polys.iter().map(|f| f.eval(&x)).collect();
            let jac: Vec<Vec<ComplexApprox>> = self
                .grads
                .iter()
                .map(|g| vars.iter().map(|&v| g[v].eval(&x)).collect())
                .collect();
            let Some(delta) = solve_complex(jac, rhs) else { break };
            let mut step: f64 = 0.0;
            for (k, &v) in vars.iter().enumerate() {
                x[v] -= &delta[k];
                step = step.max(delta[k].abs_f64());
            }
            let res = self.residual(&x);
            if res < best.0 {
                best = (res, x.clone());
            }
            let size = x.iter().map(ComplexApprox::abs_f64).fold(1.0, f64::max);
            if step <= target * size {
                break;
            }
        }
        best.1
    }
}

pub fn largest_index(p: &[ComplexApprox]) -> usize {
    let mut best = 0;
    let mut best_abs = -1.0;
    for (k, c) in p.iter().enumerate() {
        let a = c.abs_f64();
        if a > best_abs * (1.0 + 1e-12) {
            best = k;
            best_abs = a;
        }
    }
    best
}

/// Gaussian elimination with partial pivoting; `None` for a singular matrix.
pub fn solve_complex(mut a: Vec<Vec<ComplexApprox>>, mut b: Vec<ComplexApprox>) -> Option<Vec<ComplexApprox>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs_f64().total_cmp(&a[j][c].abs_f64()))?;
        if a[p][c].is_zero() {
            return None;
        }
        a.swap(p, c);
        b.swap(p, c);
        let inv = a[c][c].recip();
        for r in c + 1..n {
            let factor = &a[r][c] * &inv;
            if factor.is_zero() {
                continue;
            }
            for k in c..n {
                let t = &factor * &a[c][k];
                a[r][k] -= &t;
            }
            let t = &factor * &b[c];
            b[r] -= &t;
        }
    }
    let prec = b.first().map_or(53, ComplexApprox::precision_bits);
    let mut x = vec![ComplexApprox::zero(prec); n];
    for r in (0..n).rev() {
        let mut s = b[r].clone();
        for k in r + 1..n {
            s -= &(&a[r][k] * &x[k]);
        }
        x[r] = &s / &a[r][r];
    }
    Some(x)
}

/// Smallest singular value of the row-normalized Jacobian of the dehomogenized
/// system at `p`, in the chart of its largest coordinate.
pub fn jacobian_score(fs: &[MultiPoly], p: &ProjPointNumeric) -> f64 {
    let chart = p.largest_coordinate();
    let x = p.normalized_at(chart);
    let vars: Vec<usize> = (0..p.len()).filter(|&i| i != chart).collect();
    let n = fs.len();
    let mut m = DMatrix::<Complex64>::zeros(n, vars.len());
    for (i, f) in fs.iter().enumerate() {
        let row: Vec<Complex64> = vars
            .iter()
            .map(|&v| f.partial_derivative(v).evaluate_numeric(&x).to_complex64())
            .collect();
        let norm = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return 0.0;
        }
        for (k, z) in row.iter().enumerate() {
            m[(i, k)] = z / norm;
        }
    }
    let sv = m.singular_values();
    sv.iter().copied().fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Cyclo12;
    use crate::group::ProjPointExact;
    use crate::poly::{parse_poly, BasisMode};

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, 3, BasisMode::Monomial).unwrap()
    }

    #[test]
    fn numpoly_agrees_with_exact_evaluation() {
        let f = p("omega*X^2*Y - 3*Z^3 + I*X*Y*Z");
        let pt = [Cyclo12::from_int(2), Cyclo12::omega(), Cyclo12::from_frac(1, 3)];
        let num: Vec<ComplexApprox> = pt.iter().map(|c| c.embed(128)).collect();
        let exact = f.evaluate_exact(&pt).embed(128);
        assert!(NumPoly::new(&f, 128).eval(&num).dist(&exact) < 1e-30);
        // coefficients in Y, evaluated back at Y
        let cs = NumPoly::new(&f, 128).coeffs_in(1, &num);
        let mut acc = ComplexApprox::zero(128);
        for c in cs.iter().rev() {
            acc = &(&acc * &num[1]) + c;
        }
        assert!(acc.dist(&exact) < 1e-30);
    }

    #[test]
    fn newton_polishes_a_perturbed_root() {
        let fs = [p("X+Y+Z"), p("X^5+Y^5+Z^5")];
        let sys = NumSystem::new(&fs, 128);
        let rough = [
            ComplexApprox::from_f64(-1.0 + 1e-6, 0.0, 128),
            ComplexApprox::from_f64(1e-7, 0.0, 128),
            ComplexApprox::from_f64(1.0, 0.0, 128),
        ];
        let refined = sys.newton(&rough, 10);
        assert!(sys.residual(&refined) < 1e-35);
    }

    #[test]
    fn jacobian_scores() {
        // the coordinate axes of the chart Z = 1 meet at right angles
        let fs = [p("2*X"), p("Y")];
        let q = ProjPointExact::from_ints(&[0, 0, 1]).unwrap().to_numeric(128, 1e-8);
        assert!((jacobian_score(&fs, &q) - 1.0).abs() < 1e-12);
        // tangent curves at the origin of the chart
        let fs = [p("Y*Z - X^2"), p("Y*Z + X^2")];
        let o = ProjPointExact::from_ints(&[0, 0, 1]).unwrap().to_numeric(128, 1e-8);
        assert!(jacobian_score(&fs, &o) < 1e-12);
    }
}
