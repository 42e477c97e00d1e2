//! Intersections of symmetric hypersurfaces in P2 and P3: resultant elimination,
//! simultaneous root finding, back-substitution, exact certification of special
//! points, transversality checks and orbit decomposition.

mod numeric;
mod resultant;
mod roots;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::{pow2_neg, recognize, ComplexApprox, Cyclo12};
use crate::fixedpoints::{full_catalog, obstruction, Certificate, FixedPointFamily};
use crate::group::{orbit_partition, GroupPoint, OrbitType, ProjPointExact, ProjPointNumeric, Space, SubgroupClass};
use crate::poly::{MultiPoly, UniPoly};

pub use numeric::{jacobian_score, largest_index, solve_complex, NumPoly, NumSystem};
pub use resultant::{determinant, resultant_with_degrees, sylvester_det, sylvester_resultant};
pub use roots::{aberth, cluster, relative_residual, trim_leading, univariate_roots};

/// Back-substituted coordinates must make the other polynomial this small (relative).
const BACKSUB_TOL: f64 = 1e-10;
/// Loose residual filter for P3 candidates before Newton refinement.
const CANDIDATE_TOL: f64 = 1e-6;
/// P3 candidates above this residual after refinement are extraneous.
const REJECT_TOL: f64 = 1e-8;
/// Entries of random chart transforms lie in `[-CHART_BOUND, CHART_BOUND]`.
const CHART_BOUND: i64 = 3;
const NEWTON_ITERATIONS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("the polynomials share a common factor")]
    CommonFactor,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial {0} is constant")]
    Constant(usize),
    #[error("expected {expected} polynomials in {nvars} variables")]
    Arity { expected: usize, nvars: usize },
    #[error("polynomial {0} has the wrong number of variables")]
    VarCount(usize),
    #[error("polynomial {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("polynomial {0} is not symmetric")]
    NotSymmetric(usize),
    #[error("degree product {product} exceeds the cap {cap}")]
    DegreeCap { product: u64, cap: u64 },
    #[error("numerical failure: {0}")]
    Convergence(String),
    #[error("solution set is not closed under the group: {0}")]
    OrbitClosure(String),
}

impl SolveError {
    /// Failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Self::Convergence(_) | Self::OrbitClosure(_))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveOptions {
    pub precision: u32,
    pub match_tolerance: f64,
    pub transversality_threshold: f64,
    pub cluster_radius: f64,
    /// Precision doubles on numerical trouble up to this many bits.
    pub max_precision: u32,
    /// Largest `d1 d2 d3` accepted by `solve_p3`.
    pub max_product_p3: u64,
    /// Random chart changes tried per precision level.
    pub chart_attempts: usize,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            precision: 128,
            match_tolerance: 1e-8,
            transversality_threshold: 1e-6,
            cluster_radius: 1e-6,
            max_precision: 512,
            max_product_p3: 24,
            chart_attempts: 8,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Transversality {
    Transverse,
    NonTransverse,
    /// Numerically simple but ill-conditioned and not exactly certified.
    Undetermined,
}

#[derive(Debug, Clone)]
pub struct IntersectionPoint {
    pub numeric: ProjPointNumeric,
    pub exact: Option<ProjPointExact>,
    pub multiplicity: u32,
    /// Largest relative residual `|f_i(p)| / sum |c| |p^e|` at the unit representative.
    pub residual: f64,
    pub jacobian_score: f64,
    pub is_real: bool,
    pub stabilizer: SubgroupClass,
    pub orbit_id: usize,
    pub status: Transversality,
    /// Exact local check, present for exact points.
    pub certificate: Option<Certificate>,
}

impl Serialize for IntersectionPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IntersectionPoint", 9)?;
        let coords: Vec<[f64; 2]> = self.numeric.to_f64().into_iter().map(|(re, im)| [re, im]).collect();
        st.serialize_field("coords", &coords)?;
        st.serialize_field("exact", &self.exact)?;
        st.serialize_field("stabilizer", &self.stabilizer)?;
        st.serialize_field("orbit_id", &self.orbit_id)?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.serialize_field("residual", &self.residual)?;
        st.serialize_field("jacobian_score", &self.jacobian_score)?;
        st.serialize_field("is_real", &self.is_real)?;
        st.serialize_field("status", &self.status)?;
        st.end()
    }
}

#[derive(Debug, Clone)]
pub struct IntersectionReport {
    pub space: Space,
    pub degrees: Vec<u32>,
    pub polynomials: Vec<MultiPoly>,
    pub points: Vec<IntersectionPoint>,
    pub orbit_type: OrbitType,
    pub transverse: bool,
    pub status: Transversality,
    pub obstruction: Option<Certificate>,
    pub real_count: usize,
    pub bezout: u64,
    /// False when fewer than `bezout` points (with multiplicity) were assembled.
    pub complete: bool,
    pub precision: u32,
}

impl IntersectionReport {
    pub fn total_multiplicity(&self) -> u64 {
        self.points.iter().map(|p| p.multiplicity as u64).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl Serialize for IntersectionReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IntersectionReport", 11)?;
        st.serialize_field("space", &self.space)?;
        st.serialize_field("degrees", &self.degrees)?;
        st.serialize_field("bezout", &self.bezout)?;
        st.serialize_field("transverse", &self.transverse)?;
        st.serialize_field("obstruction", &self.obstruction)?;
        st.serialize_field("orbit_type", &self.orbit_type.to_string())?;
        st.serialize_field("real_count", &self.real_count)?;
        st.serialize_field("points", &self.points)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("complete", &self.complete)?;
        st.serialize_field("precision", &self.precision)?;
        st.end()
    }
}

/// Parameters of a one-parameter family on which a set of polynomials vanishes.
#[derive(Debug, Clone)]
pub enum FamilyRoots {
    IdenticallyZero,
    Roots {
        exact: Vec<Cyclo12>,
        /// Roots not recognized in Q(zeta_12), at 256 bits.
        approximate: Vec<ComplexApprox>,
    },
}

impl FamilyRoots {
    pub fn is_empty(&self) -> bool {
        match self {
            Self::IdenticallyZero => false,
            Self::Roots { exact, approximate } => exact.is_empty() && approximate.is_empty(),
        }
    }
}

/// Exact parameter set of a one-parameter family where every `f` in `fs` vanishes:
/// the roots of the gcd of the restrictions, minus the excluded parameters.
pub fn restricted_family_roots(fs: &[MultiPoly], family: &FixedPointFamily) -> FamilyRoots {
    let mut g = UniPoly::zero();
    for f in fs {
        let r = family.restrict(f).expect("family with one parameter");
        g = g.gcd(&r);
    }
    if g.is_zero() {
        return FamilyRoots::IdenticallyZero;
    }
    let prec = 256;
    let mut exact = Vec::new();
    let mut approximate = Vec::new();
    for (factor, _) in g.squarefree_decomposition() {
        if factor.degree() == Some(1) {
            let c = factor.coeffs();
            exact.push(-&(&c[0] * &c[1].inv().expect("nonzero leading coefficient")));
            continue;
        }
        let Ok(rs) = univariate_roots(&factor, prec) else {
            continue;
        };
        for (r, _) in rs {
            match recognize(&r, 1e-25, 1_000_000).filter(|c| factor.eval(c).is_zero()) {
                Some(c) => exact.push(c),
                None => approximate.push(r),
            }
        }
    }
    let zero_point = |a: &Cyclo12| family.instantiate(std::slice::from_ref(a)).is_none();
    exact.retain(|a| !family.excluded.contains(a) && !zero_point(a));
    approximate.retain(|a| !family.excluded.iter().any(|e| e.embed(prec).dist(a) < 1e-20));
    FamilyRoots::Roots { exact, approximate }
}

/// Intersection of two symmetric plane curves.
pub fn solve_p2(f: &MultiPoly, g: &MultiPoly, options: &SolveOptions) -> Result<IntersectionReport, SolveError> {
    let fs = vec![f.clone(), g.clone()];
    let degrees = validate(&fs, Space::P2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut prec = options.precision;
    loop {
        let result = p2_points(f, g, prec, options, &mut rng)
            .and_then(|raw| assemble(Space::P2, &fs, &degrees, raw, true, prec, options));
        match result {
            Err(e) if e.is_numerical() && prec * 2 <= options.max_precision => prec *= 2,
            other => return other,
        }
    }
}

/// Intersection of three symmetric surfaces in P3 (best effort; see `complete`).
pub fn solve_p3(
    f1: &MultiPoly,
    f2: &MultiPoly,
    f3: &MultiPoly,
    options: &SolveOptions,
) -> Result<IntersectionReport, SolveError> {
    let fs = vec![f1.clone(), f2.clone(), f3.clone()];
    let degrees = validate(&fs, Space::P3)?;
    let product: u64 = degrees.iter().map(|&d| d as u64).product();
    if product > options.max_product_p3 {
        return Err(SolveError::DegreeCap { product, cap: options.max_product_p3 });
    }
    // lowest degree first: it is the one eliminated against the others
    let mut order = [0, 1, 2];
    order.sort_by_key(|&i| degrees[i]);
    let sorted: Vec<MultiPoly> = order.iter().map(|&i| fs[i].clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut prec = options.precision;
    loop {
        let result = p3_points(&sorted, product, prec, options, &mut rng)
            .and_then(|(raw, complete)| assemble(Space::P3, &fs, &degrees, raw, complete, prec, options));
        match result {
            Err(e) if e.is_numerical() && prec * 2 <= options.max_precision => prec *= 2,
            other => return other,
        }
    }
}

fn validate(fs: &[MultiPoly], space: Space) -> Result<Vec<u32>, SolveError> {
    let n = space.nvars();
    if fs.len() != n - 1 {
        return Err(SolveError::Arity { expected: n - 1, nvars: n });
    }
    let mut degrees = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        if f.nvars() != n {
            return Err(SolveError::VarCount(i));
        }
        if f.is_zero() {
            return Err(SolveError::ZeroPolynomial);
        }
        let d = f.homogeneous_degree().map_err(|_| SolveError::NotHomogeneous(i))?;
        if d == 0 {
            return Err(SolveError::Constant(i));
        }
        if !f.is_symmetric() {
            return Err(SolveError::NotSymmetric(i));
        }
        degrees.push(d);
    }
    Ok(degrees)
}

/// A solved point before certification.
#[derive(Debug, Clone)]
struct RawPoint {
    coords: Vec<ComplexApprox>,
    multiplicity: u32,
}

/// Why one chart failed.
enum CoreFail {
    CommonFactor,
    /// The chart is degenerate or the multiplicities are ambiguous; try another.
    Retry(String),
}

impl From<SolveError> for CoreFail {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::CommonFactor => CoreFail::CommonFactor,
            other => CoreFail::Retry(other.to_string()),
        }
    }
}

/// Invertible integer change of coordinates `X = T X'`.
struct Chart {
    m: Vec<Vec<i64>>,
}

impl Chart {
    fn identity(n: usize) -> Self {
        Self { m: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect() }
    }

    fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        loop {
            let m: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-CHART_BOUND..=CHART_BOUND)).collect())
                .collect();
            let exact = m.iter().map(|r| r.iter().map(|&x| Cyclo12::from_int(x)).collect()).collect();
            if !determinant(exact).is_zero() {
                return Self { m };
            }
        }
    }

    /// `f(T X')`.
    fn apply_poly(&self, f: &MultiPoly) -> MultiPoly {
        let n = self.m.len();
        let images: Vec<MultiPoly> = self
            .m
            .iter()
            .map(|row| {
                row.iter().enumerate().fold(MultiPoly::zero(n), |acc, (j, &t)| {
                    &acc + &MultiPoly::var(n, j).scale(&Cyclo12::from_int(t))
                })
            })
            .collect();
        f.compose(&images)
    }

    /// `T v`.
    fn apply_point(&self, v: &[ComplexApprox]) -> Vec<ComplexApprox> {
        let prec = v[0].precision_bits();
        self.m
            .iter()
            .map(|row| {
                row.iter().zip(v).fold(ComplexApprox::zero(prec), |acc, (&t, x)| {
                    &acc + &(x * &ComplexApprox::from_f64(t as f64, 0.0, prec))
                })
            })
            .collect()
    }
}

fn total_degree(f: &MultiPoly) -> usize {
    f.total_degree().unwrap_or(0) as usize
}

fn vanishes_at(f: &MultiPoly, coords: &[i64]) -> bool {
    let p: Vec<Cyclo12> = coords.iter().map(|&c| Cyclo12::from_int(c)).collect();
    f.evaluate_exact(&p).is_zero()
}

/// Numerical coefficients of `f` in `var` at `point`, trimmed; `None` when the
/// polynomial vanishes identically there.
fn specialized(f: &NumPoly, var: usize, point: &[ComplexApprox], prec: u32) -> Option<Vec<ComplexApprox>> {
    let cs = f.coeffs_in(var, point);
    let mut unit = point.to_vec();
    unit[var] = ComplexApprox::one(prec);
    let scale = f.scale(&unit);
    let max = cs.iter().map(ComplexApprox::abs_f64).fold(0.0, f64::max);
    if max <= pow2_neg(prec / 2) * scale {
        return None;
    }
    Some(trim_leading(&cs, pow2_neg(prec / 2)))
}

/// Distinct values of `var` where all `polys` vanish, the others fixed by `point`.
/// Roots come from the lowest-degree nonvanishing polynomial and are checked on the rest.
fn common_roots(
    polys: &[&NumPoly],
    var: usize,
    point: &[ComplexApprox],
    prec: u32,
    opts: &SolveOptions,
    check_tol: f64,
) -> Result<Vec<ComplexApprox>, CoreFail> {
    let mut specs: Vec<Vec<ComplexApprox>> = polys.iter().filter_map(|p| specialized(p, var, point, prec)).collect();
    if specs.is_empty() {
        return Err(CoreFail::Retry("back-substitution polynomials vanish identically".into()));
    }
    specs.sort_by_key(Vec::len);
    let roots = aberth(&specs[0], prec)?;
    Ok(cluster(&roots, opts.cluster_radius)
        .into_iter()
        .map(|(r, _)| r)
        .filter(|r| specs[1..].iter().all(|c| relative_residual(c, r) < check_tol))
        .collect())
}

/// P2 intersection at fixed precision, changing charts until one works.
fn p2_points<R: Rng>(
    f: &MultiPoly,
    g: &MultiPoly,
    prec: u32,
    opts: &SolveOptions,
    rng: &mut R,
) -> Result<Vec<RawPoint>, SolveError> {
    match p2_charts(f, g, prec, opts, rng) {
        Ok(raw) => Ok(raw),
        Err(CoreFail::CommonFactor) => Err(SolveError::CommonFactor),
        Err(CoreFail::Retry(msg)) => Err(SolveError::Convergence(msg)),
    }
}

fn p2_charts<R: Rng>(
    f: &MultiPoly,
    g: &MultiPoly,
    prec: u32,
    opts: &SolveOptions,
    rng: &mut R,
) -> Result<Vec<RawPoint>, CoreFail> {
    let mut last = String::new();
    for attempt in 0..=opts.chart_attempts {
        let chart = if attempt == 0 { Chart::identity(3) } else { Chart::random(3, rng) };
        let (ff, gg) = (chart.apply_poly(f), chart.apply_poly(g));
        match p2_core(&ff, &gg, prec, opts) {
            Ok(raw) => {
                return Ok(raw
                    .into_iter()
                    .map(|p| RawPoint { coords: chart.apply_point(&p.coords), multiplicity: p.multiplicity })
                    .collect())
            }
            Err(CoreFail::CommonFactor) => return Err(CoreFail::CommonFactor),
            Err(CoreFail::Retry(msg)) => last = msg,
        }
    }
    Err(CoreFail::Retry(format!("no usable chart: {last}")))
}

/// Assigns multiplicity `m` of a resultant root to the `k` points above it.
fn assign(m: u32, k: usize) -> Option<Vec<u32>> {
    match k {
        0 => None,
        1 => Some(vec![m]),
        k if k as u32 == m => Some(vec![1; k]),
        _ => None,
    }
}

/// Solves `f = g = 0` in the current coordinates: the chart `Z = 1` through
/// `Res_Y`, then the line at infinity through the binary forms `f(X, Y, 0)`.
fn p2_core(f: &MultiPoly, g: &MultiPoly, prec: u32, opts: &SolveOptions) -> Result<Vec<RawPoint>, CoreFail> {
    let (d, e) = (total_degree(f), total_degree(g));
    if vanishes_at(f, &[0, 1, 0]) && vanishes_at(g, &[0, 1, 0]) {
        return Err(CoreFail::Retry("common point at the pole of the projection".into()));
    }
    let (fa, ga) = (f.dehomogenize(2), g.dehomogenize(2));
    let r = resultant_with_degrees(&fa, &ga, 1, d, e);
    if r.is_zero() {
        return Err(CoreFail::CommonFactor);
    }
    let ru = r.to_univariate(0).expect("resultant in X only");
    let deg_r = ru.degree().unwrap_or(0);
    let xs = if deg_r > 0 { univariate_roots(&ru, prec)? } else { Vec::new() };
    let (nf, ng) = (NumPoly::new(&fa, prec), NumPoly::new(&ga, prec));
    let one = ComplexApprox::one(prec);
    let mut out = Vec::new();
    for (x0, m) in xs {
        let point = [x0.clone(), one.clone(), one.clone()];
        let ys = common_roots(&[&nf, &ng], 1, &point, prec, opts, BACKSUB_TOL)?;
        let mults = assign(m, ys.len())
            .ok_or_else(|| CoreFail::Retry(format!("{} points above a root of multiplicity {m}", ys.len())))?;
        for (y, mult) in ys.into_iter().zip(mults) {
            out.push(RawPoint { coords: vec![x0.clone(), y, one.clone()], multiplicity: mult });
        }
    }
    let at_infinity = |p: &MultiPoly| {
        p.substitute_value(1, &Cyclo12::one())
            .substitute_value(2, &Cyclo12::zero())
            .to_univariate(0)
            .expect("binary form")
    };
    let h = at_infinity(f).gcd(&at_infinity(g));
    if h.is_zero() {
        return Err(CoreFail::CommonFactor);
    }
    let mut inf = Vec::new();
    if h.degree().unwrap_or(0) > 0 {
        for (x, _) in univariate_roots(&h, prec)? {
            inf.push(vec![x, one.clone(), ComplexApprox::zero(prec)]);
        }
    }
    if vanishes_at(f, &[1, 0, 0]) && vanishes_at(g, &[1, 0, 0]) {
        inf.push(vec![one.clone(), ComplexApprox::zero(prec), ComplexApprox::zero(prec)]);
    }
    let m_inf = (d * e - deg_r) as u32;
    if m_inf > 0 || !inf.is_empty() {
        let mults = assign(m_inf, inf.len())
            .ok_or_else(|| CoreFail::Retry(format!("{} points at infinity of multiplicity {m_inf}", inf.len())))?;
        for (coords, mult) in inf.into_iter().zip(mults) {
            out.push(RawPoint { coords, multiplicity: mult });
        }
    }
    refine_and_dedup(out, &[f.clone(), g.clone()], prec, opts)
}

/// Newton-polishes simple points and rejects charts that produced duplicates.
fn refine_and_dedup(
    raw: Vec<RawPoint>,
    fs: &[MultiPoly],
    prec: u32,
    opts: &SolveOptions,
) -> Result<Vec<RawPoint>, CoreFail> {
    let sys = NumSystem::new(fs, prec);
    let mut out: Vec<(ProjPointNumeric, RawPoint)> = Vec::new();
    for mut p in raw {
        if p.multiplicity == 1 {
            p.coords = sys.newton(&p.coords, NEWTON_ITERATIONS);
        }
        let q = ProjPointNumeric::new(p.coords.clone(), opts.match_tolerance)
            .map_err(|e| CoreFail::Retry(e.to_string()))?;
        if out.iter().any(|(o, _)| o.distance(&q) < opts.match_tolerance) {
            return Err(CoreFail::Retry("duplicate points from distinct resultant roots".into()));
        }
        out.push((q, p));
    }
    Ok(out.into_iter().map(|(_, p)| p).collect())
}

/// P3 intersection at fixed precision; the flag reports whether the Bezout count
/// was reached.
fn p3_points<R: Rng>(
    fs: &[MultiPoly],
    bezout: u64,
    prec: u32,
    opts: &SolveOptions,
    rng: &mut R,
) -> Result<(Vec<RawPoint>, bool), SolveError> {
    let mut best: Option<Vec<RawPoint>> = None;
    let mut last = String::new();
    for attempt in 0..=opts.chart_attempts {
        let chart = if attempt == 0 { Chart::identity(4) } else { Chart::random(4, rng) };
        let moved: Vec<MultiPoly> = fs.iter().map(|f| chart.apply_poly(f)).collect();
        match p3_core(&moved, prec, opts, rng) {
            Ok(raw) => {
                let raw: Vec<RawPoint> = raw
                    .into_iter()
                    .map(|p| RawPoint { coords: chart.apply_point(&p.coords), multiplicity: p.multiplicity })
                    .collect();
                let total: u64 = raw.iter().map(|p| p.multiplicity as u64).sum();
                if total == bezout {
                    return Ok((raw, true));
                }
                if total < bezout && best.as_ref().is_none_or(|b| b.len() < raw.len()) {
                    best = Some(raw);
                } else if total > bezout {
                    last = format!("assembled {total} points, more than {bezout}");
                }
            }
            Err(CoreFail::CommonFactor) => return Err(SolveError::CommonFactor),
            Err(CoreFail::Retry(msg)) => last = msg,
        }
    }
    match best {
        Some(raw) => Ok((raw, false)),
        None => Err(SolveError::Convergence(format!("no usable chart: {last}"))),
    }
}

fn p3_core<R: Rng>(fs: &[MultiPoly], prec: u32, opts: &SolveOptions, rng: &mut R) -> Result<Vec<RawPoint>, CoreFail> {
    let d: Vec<usize> = fs.iter().map(total_degree).collect();
    let pole = [0, 0, 1, 0];
    let on_pole: Vec<bool> = fs.iter().map(|f| vanishes_at(f, &pole)).collect();
    if on_pole[0] && (on_pole[1] || on_pole[2]) {
        return Err(CoreFail::Retry("common point at the pole of the projection".into()));
    }
    let a: Vec<MultiPoly> = fs.iter().map(|f| f.dehomogenize(3)).collect();
    let r12 = resultant_with_degrees(&a[0], &a[1], 2, d[0], d[1]);
    let r13 = resultant_with_degrees(&a[0], &a[2], 2, d[0], d[2]);
    if r12.is_zero() || r13.is_zero() {
        return Err(CoreFail::CommonFactor);
    }
    let r = sylvester_resultant(&r12, &r13, 1)?;
    if r.is_zero() {
        if !(on_pole[1] && on_pole[2]) && resultant_with_degrees(&a[1], &a[2], 2, d[1], d[2]).is_zero() {
            return Err(CoreFail::CommonFactor);
        }
        return Err(CoreFail::Retry("eliminants share a factor".into()));
    }
    let ru = r.to_univariate(0).expect("resultant in X only");
    let xs = if ru.degree().unwrap_or(0) > 0 { univariate_roots(&ru, prec)? } else { Vec::new() };
    let (n12, n13) = (NumPoly::new(&r12, prec), NumPoly::new(&r13, prec));
    let na: Vec<NumPoly> = a.iter().map(|p| NumPoly::new(p, prec)).collect();
    let sys = NumSystem::new(fs, prec);
    let one = ComplexApprox::one(prec);
    let mut accepted: Vec<(ProjPointNumeric, RawPoint, usize)> = Vec::new();
    let mut root_mults = Vec::new();
    for (root_index, (x0, m)) in xs.into_iter().enumerate() {
        root_mults.push(m);
        let point = [x0.clone(), one.clone(), one.clone(), one.clone()];
        let ys = common_roots(&[&n12, &n13], 1, &point, prec, opts, BACKSUB_TOL)?;
        for y0 in ys {
            let point = [x0.clone(), y0.clone(), one.clone(), one.clone()];
            let zs = common_roots(&[&na[0], &na[1], &na[2]], 2, &point, prec, opts, CANDIDATE_TOL)?;
            for z0 in zs {
                let coords = vec![x0.clone(), y0.clone(), z0, one.clone()];
                if let Some(p) = accept(&sys, coords, prec, opts)? {
                    push_distinct(&mut accepted, p, root_index, opts);
                }
            }
        }
    }
    // multiplicities from the resultant are trustworthy only without extraneous factors
    let mut out = Vec::new();
    for (root_index, &m) in root_mults.iter().enumerate() {
        let above: Vec<&RawPoint> = accepted.iter().filter(|t| t.2 == root_index).map(|t| &t.1).collect();
        let mults = if d[0] == 1 { assign(m, above.len()) } else { None }.unwrap_or(vec![1; above.len()]);
        for (p, mult) in above.into_iter().zip(mults) {
            out.push(RawPoint { coords: p.coords.clone(), multiplicity: mult });
        }
    }
    for p in plane_at_infinity(fs, &sys, prec, opts, rng)? {
        let q = ProjPointNumeric::new(p.coords.clone(), opts.match_tolerance).map_err(|e| CoreFail::Retry(e.to_string()))?;
        let dup = out.iter().any(|o| {
            ProjPointNumeric::new(o.coords.clone(), opts.match_tolerance).is_ok_and(|o| o.distance(&q) < opts.match_tolerance)
        });
        if !dup {
            out.push(p);
        }
    }
    Ok(out)
}

fn push_distinct(
    accepted: &mut Vec<(ProjPointNumeric, RawPoint, usize)>,
    p: RawPoint,
    root_index: usize,
    opts: &SolveOptions,
) {
    let Ok(q) = ProjPointNumeric::new(p.coords.clone(), opts.match_tolerance) else {
        return;
    };
    if !accepted.iter().any(|(o, _, _)| o.distance(&q) < opts.match_tolerance) {
        accepted.push((q, p, root_index));
    }
}

/// Newton-refines a candidate and classifies it by residual: accepted, rejected as
/// extraneous, or in the gray zone that needs more precision.
fn accept(sys: &NumSystem, coords: Vec<ComplexApprox>, prec: u32, _opts: &SolveOptions) -> Result<Option<RawPoint>, CoreFail> {
    if sys.residual(&coords) > CANDIDATE_TOL {
        return Ok(None);
    }
    let refined = sys.newton(&coords, NEWTON_ITERATIONS);
    let res = sys.residual(&refined);
    if res < pow2_neg(prec / 2) {
        Ok(Some(RawPoint { coords: refined, multiplicity: 1 }))
    } else if res > REJECT_TOL {
        Ok(None)
    } else {
        Err(CoreFail::Retry(format!("candidate residual {res:e} needs more precision")))
    }
}

/// Common zeros on `W = 0`: a pair of the ternary forms `f_i(X, Y, Z, 0)` is solved
/// as a plane problem and filtered by the remaining form.
fn plane_at_infinity<R: Rng>(
    fs: &[MultiPoly],
    sys: &NumSystem,
    prec: u32,
    opts: &SolveOptions,
    rng: &mut R,
) -> Result<Vec<RawPoint>, CoreFail> {
    let ternary: Vec<MultiPoly> = fs
        .iter()
        .map(|f| {
            let t = f.substitute_value(3, &Cyclo12::zero());
            let images: Vec<MultiPoly> = (0..4)
                .map(|i| if i < 3 { MultiPoly::var(3, i) } else { MultiPoly::zero(3) })
                .collect();
            t.compose(&images)
        })
        .collect();
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        if ternary[i].is_zero() || ternary[j].is_zero() {
            continue;
        }
        let plane = match p2_charts(&ternary[i], &ternary[j], prec, opts, rng) {
            Ok(points) => points,
            Err(CoreFail::CommonFactor) => continue,
            Err(e) => return Err(e),
        };
        let third = NumPoly::new(&ternary[k], prec);
        let mut out: Vec<(ProjPointNumeric, RawPoint, usize)> = Vec::new();
        for p in plane {
            if !ternary[k].is_zero() && third.relative_value(&p.coords) > CANDIDATE_TOL {
                continue;
            }
            let mut coords = p.coords;
            coords.push(ComplexApprox::zero(prec));
            if let Some(q) = accept(sys, coords, prec, opts)? {
                push_distinct(&mut out, q, 0, opts);
            }
        }
        return Ok(out.into_iter().map(|t| t.1).collect());
    }
    if ternary.iter().all(MultiPoly::is_zero) {
        return Err(CoreFail::CommonFactor);
    }
    Err(CoreFail::Retry("ternary forms at infinity share factors".into()))
}

/// Isolated catalog points and their orbits, for exact matching.
fn special_points(space: Space) -> Vec<ProjPointExact> {
    let mut out: Vec<ProjPointExact> = Vec::new();
    for family in full_catalog(space).iter().filter(|f| f.is_isolated()) {
        if let Some(p) = family.instantiate(&[]) {
            for q in p.orbit() {
                if !out.contains(&q) {
                    out.push(q);
                }
            }
        }
    }
    out
}

/// An exact obstruction at an isolated catalog point lying on every hypersurface,
/// found without solving.
pub fn special_obstruction(fs: &[MultiPoly]) -> Option<Certificate> {
    let space = match fs.first()?.nvars() {
        3 => Space::P2,
        4 => Space::P3,
        _ => return None,
    };
    special_obstruction_among(fs, &special_points(space))
}

fn special_obstruction_among(fs: &[MultiPoly], specials: &[ProjPointExact]) -> Option<Certificate> {
    specials
        .iter()
        .filter(|s| vanishes_exactly(fs, s))
        .filter_map(|s| obstruction(s, fs).ok())
        .find(Certificate::is_obstruction)
}

fn vanishes_exactly(fs: &[MultiPoly], p: &ProjPointExact) -> bool {
    fs.iter().all(|f| f.evaluate_exact(p.coords()).is_zero())
}

/// Exact coordinates for a numeric point: a catalog special point within the match
/// tolerance, or a recognized element of Q(zeta_12) per coordinate; either way the
/// candidate must vanish exactly.
fn certify(
    q: &ProjPointNumeric,
    multiplicity: u32,
    fs: &[MultiPoly],
    specials: &[ProjPointExact],
    opts: &SolveOptions,
) -> Option<ProjPointExact> {
    let prec = q.precision_bits();
    for s in specials {
        if s.to_numeric(prec, opts.match_tolerance).distance(q) < opts.match_tolerance && vanishes_exactly(fs, s) {
            return Some(s.clone());
        }
    }
    let tol = pow2_neg(prec / (multiplicity + 1)).max(pow2_neg(prec.saturating_sub(16)));
    let idx = q.coords().iter().rposition(|c| c.abs_f64() > 1e-6)?;
    let normalized = q.normalized_at(idx);
    let coords: Option<Vec<Cyclo12>> = normalized
        .iter()
        .map(|c| if c.abs_f64() < tol { Some(Cyclo12::zero()) } else { recognize(c, tol, 1_000_000) })
        .collect();
    let p = ProjPointExact::new(coords?).ok()?;
    (vanishes_exactly(fs, &p) && p.to_numeric(prec, opts.match_tolerance).distance(q) < opts.match_tolerance)
        .then_some(p)
}

/// Certification, transversality and orbit bookkeeping for a solved point set.
fn assemble(
    space: Space,
    fs: &[MultiPoly],
    degrees: &[u32],
    raw: Vec<RawPoint>,
    complete: bool,
    prec: u32,
    opts: &SolveOptions,
) -> Result<IntersectionReport, SolveError> {
    let bezout: u64 = degrees.iter().map(|&d| d as u64).product();
    let specials = special_points(space);
    let sys = NumSystem::new(fs, prec);
    let mut points: Vec<IntersectionPoint> = Vec::new();
    for rp in raw {
        let numeric = ProjPointNumeric::new(rp.coords, opts.match_tolerance)
            .map_err(|e| SolveError::Convergence(e.to_string()))?;
        if let Some(q) = points.iter_mut().find(|q| q.numeric.distance(&numeric) < opts.match_tolerance) {
            q.multiplicity += rp.multiplicity;
            continue;
        }
        let exact = certify(&numeric, rp.multiplicity, fs, &specials, opts);
        let residual = sys.residual(numeric.coords());
        let score = jacobian_score(fs, &numeric);
        let is_real = exact.as_ref().map_or_else(|| numeric.is_real(), ProjPointExact::is_real);
        points.push(IntersectionPoint {
            numeric,
            exact,
            multiplicity: rp.multiplicity,
            residual,
            jacobian_score: score,
            is_real,
            stabilizer: SubgroupClass::trivial(space.group()),
            orbit_id: 0,
            status: Transversality::Undetermined,
            certificate: None,
        });
    }
    for p in &mut points {
        p.certificate = p.exact.as_ref().and_then(|e| obstruction(e, fs).ok());
        p.status = match &p.certificate {
            Some(c) if c.is_obstruction() => Transversality::NonTransverse,
            Some(_) if p.multiplicity == 1 => Transversality::Transverse,
            Some(_) => Transversality::Undetermined,
            None if p.multiplicity > 1 => Transversality::NonTransverse,
            None if p.jacobian_score >= opts.transversality_threshold => Transversality::Transverse,
            None => Transversality::Undetermined,
        };
    }
    let numerics: Vec<ProjPointNumeric> = points.iter().map(|p| p.numeric.clone()).collect();
    let decomposition =
        orbit_partition(&numerics, space.group()).map_err(|e| SolveError::OrbitClosure(e.to_string()))?;
    for (k, p) in points.iter_mut().enumerate() {
        p.orbit_id = decomposition.orbit_ids[k];
        p.stabilizer = p.exact.as_ref().map_or(decomposition.stabilizers[k], |e| e.stabilizer().class);
    }
    let mut obstruction_found = points
        .iter()
        .filter_map(|p| p.certificate.clone())
        .find(Certificate::is_obstruction);
    if obstruction_found.is_none() {
        // exact backstop: an obstructed special point on every hypersurface
        obstruction_found = special_obstruction_among(fs, &specials);
    }
    let total: u64 = points.iter().map(|p| p.multiplicity as u64).sum();
    let complete = complete && total == bezout;
    let status = if obstruction_found.is_some() || points.iter().any(|p| p.status == Transversality::NonTransverse) {
        Transversality::NonTransverse
    } else if !complete || points.iter().any(|p| p.status == Transversality::Undetermined) {
        Transversality::Undetermined
    } else {
        Transversality::Transverse
    };
    let real_count = points.iter().filter(|p| p.is_real).count();
    Ok(IntersectionReport {
        space,
        degrees: degrees.to_vec(),
        polynomials: fs.to_vec(),
        points,
        orbit_type: decomposition.orbit_type,
        transverse: status == Transversality::Transverse,
        status,
        obstruction: obstruction_found,
        real_count,
        bezout,
        complete,
        precision: prec,
    })
}
