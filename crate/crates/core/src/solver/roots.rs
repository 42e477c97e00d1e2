//! Simultaneous (Aberth-Ehrlich) root finding with multiplicities.

use num_complex::Complex64;
use rug::Float;

use super::SolveError;
use crate::exactnum::{pow2_neg, ComplexApprox};
use crate::poly::UniPoly;

const F64_ITERATIONS: usize = 600;
const MP_ITERATIONS: usize = 200;

/// Roots of an exact polynomial with exact multiplicities: square-free factors are
/// computed exactly, and each factor is solved numerically at `prec` bits.
pub fn univariate_roots(p: &UniPoly, prec: u32) -> Result<Vec<(ComplexApprox, u32)>, SolveError> {
    if p.is_zero() {
        return Err(SolveError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let coeffs = factor.embed(prec + 32);
        let roots = aberth(&coeffs, prec + 32)?;
        let tol = pow2_neg(prec / 2);
        for r in roots {
            let res = relative_residual(&coeffs, &r);
            if res > tol {
                return Err(SolveError::Convergence(format!(
                    "root residual {res:e} above {tol:e} for a factor of degree {}",
                    coeffs.len() - 1
                )));
            }
            out.push((r.with_precision(prec), mult));
        }
    }
    Ok(out)
}

/// `|p(z)| / sum |a_k| |z|^k`.
pub fn relative_residual(coeffs: &[ComplexApprox], z: &ComplexApprox) -> f64 {
    let v = horner(coeffs, z).abs_f64();
    let m = z.abs_f64();
    let scale: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c.abs_f64() * m.powi(k as i32))
        .sum();
    if scale == 0.0 {
        0.0
    } else {
        v / scale
    }
}

pub fn horner(coeffs: &[ComplexApprox], z: &ComplexApprox) -> ComplexApprox {
    let prec = z.precision_bits();
    let mut acc = ComplexApprox::zero(prec);
    for c in coeffs.iter().rev() {
        acc = &(&acc * z) + c;
    }
    acc
}

fn horner_with_derivative(coeffs: &[ComplexApprox], z: &ComplexApprox) -> (ComplexApprox, ComplexApprox) {
    let prec = z.precision_bits();
    let mut p = ComplexApprox::zero(prec);
    let mut dp = ComplexApprox::zero(prec);
    for c in coeffs.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &(&p * z) + c;
    }
    (p, dp)
}

/// Trims numerically zero leading coefficients (relative to the largest one).
pub fn trim_leading(coeffs: &[ComplexApprox], rel: f64) -> Vec<ComplexApprox> {
    let max = coeffs.iter().map(ComplexApprox::abs_f64).fold(0.0, f64::max);
    let mut v = coeffs.to_vec();
    while v.len() > 1 && v.last().unwrap().abs_f64() <= rel * max {
        v.pop();
    }
    v
}

/// All roots of the polynomial with coefficients `coeffs` (constant term first),
/// with zero roots split off exactly and the rest found by Aberth iteration.
pub fn aberth(coeffs: &[ComplexApprox], prec: u32) -> Result<Vec<ComplexApprox>, SolveError> {
    let mut c: Vec<ComplexApprox> = coeffs.iter().map(|x| x.with_precision(prec)).collect();
    while c.last().is_some_and(ComplexApprox::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    let zeros = c.iter().take_while(|x| x.is_zero()).count();
    let mut out = vec![ComplexApprox::zero(prec); zeros];
    let c: Vec<ComplexApprox> = c[zeros..].to_vec();
    let n = c.len() - 1;
    if n == 0 {
        return Ok(out);
    }
    let lead = c[n].recip();
    let monic: Vec<ComplexApprox> = c.iter().map(|x| x * &lead).collect();
    if n == 1 {
        out.push(-&monic[0]);
        return Ok(out);
    }
    let start = aberth_f64(&monic).unwrap_or_else(|| initial_guesses(&monic));
    let mut z: Vec<ComplexApprox> = start
        .iter()
        .map(|w| ComplexApprox::from_f64(w.re, w.im, prec))
        .collect();
    aberth_mp(&monic, &mut z)?;
    out.extend(z);
    Ok(out)
}

fn initial_guesses(monic: &[ComplexApprox]) -> Vec<Complex64> {
    let n = monic.len() - 1;
    // geometric mean of root moduli, clamped into f64 range
    let a0 = monic[0].abs_f64();
    let r = if a0 > 0.0 && a0.is_finite() {
        a0.powf(1.0 / n as f64).clamp(1e-100, 1e100)
    } else {
        1.0
    };
    (0..n)
        .map(|k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect()
}

/// Double-precision Aberth iteration used as a starting point; `None` if the
/// coefficients do not fit in f64 or the iteration does not settle.
fn aberth_f64(monic: &[ComplexApprox]) -> Option<Vec<Complex64>> {
    let c: Vec<Complex64> = monic.iter().map(ComplexApprox::to_complex64).collect();
    if c.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return None;
    }
    let n = c.len() - 1;
    let mut z = initial_guesses(monic);
    // Fujiwara-style radius from the coefficients gives better starts for skewed moduli
    let bound = (0..n)
        .map(|k| c[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max);
    if bound.is_finite() && bound > 0.0 {
        for (k, w) in z.iter_mut().enumerate() {
            *w = Complex64::from_polar(bound, std::f64::consts::TAU * k as f64 / n as f64 + 0.4);
        }
    }
    for _ in 0..F64_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = c.iter().rev().fold((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)), |(p, dp), a| {
                (p * z[k] + a, dp * z[k] + p)
            });
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                return None;
            }
            z[k] -= w;
            max_step = max_step.max(w.norm() / z[k].norm().max(1e-300));
        }
        if max_step < 1e-14 {
            return Some(z);
        }
    }
    z.iter().all(|w| w.re.is_finite() && w.im.is_finite()).then_some(z)
}

fn aberth_mp(monic: &[ComplexApprox], z: &mut [ComplexApprox]) -> Result<(), SolveError> {
    let n = z.len();
    let prec = monic[0].precision_bits();
    let target = pow2_neg(prec.saturating_sub(12));
    let one = ComplexApprox::one(prec);
    // perturb coincident starts so the Aberth sum stays finite
    for k in 1..n {
        for j in 0..k {
            if z[k].dist(&z[j]) == 0.0 {
                let eps = Float::with_val(prec, 1e-12 * (k as f64 + 1.0));
                z[k] = &z[k] + &ComplexApprox::new(eps.clone(), eps);
            }
        }
    }
    let mut settled = 0;
    for _ in 0..MP_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner_with_derivative(monic, &z[k]);
            if p.is_zero() {
                continue;
            }
            let ratio = &p / &dp;
            let mut sum = ComplexApprox::zero(prec);
            for j in 0..n {
                if j != k {
                    sum += &(&z[k] - &z[j]).recip();
                }
            }
            let denom = &one - &(&ratio * &sum);
            let w = &ratio / &denom;
            if !w.is_finite() {
                return Err(SolveError::Convergence("non-finite Aberth correction".into()));
            }
            z[k] -= &w;
            max_step = max_step.max(w.abs_f64() / z[k].abs_f64().max(1e-300));
        }
        if max_step < target {
            settled += 1;
            if settled >= 2 {
                return Ok(());
            }
        }
    }
    // clustered roots converge only linearly; the caller judges the residuals
    Ok(())
}

/// Groups roots lying within `radius` (relative to `max(1, |z|)`) of each other;
/// each group is replaced by its mean and counted with its size.
pub fn cluster(roots: &[ComplexApprox], radius: f64) -> Vec<(ComplexApprox, u32)> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; roots.len()];
    for i in 0..roots.len() {
        if assigned[i] {
            continue;
        }
        let mut group = vec![i];
        assigned[i] = true;
        let mut k = 0;
        while k < group.len() {
            let a = &roots[group[k]];
            for j in 0..roots.len() {
                if !assigned[j] && a.dist(&roots[j]) <= radius * a.abs_f64().max(1.0) {
                    assigned[j] = true;
                    group.push(j);
                }
            }
            k += 1;
        }
        groups.push(group);
    }
    groups
        .into_iter()
        .map(|g| {
            let prec = roots[g[0]].precision_bits();
            let mut sum = ComplexApprox::zero(prec);
            for &i in &g {
                sum += &roots[i];
            }
            let inv = Float::with_val(prec, 1) / g.len() as u32;
            (sum.scale(&inv), g.len() as u32)
        })
        .collect()
}
