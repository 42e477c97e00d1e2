//! Fixed-point catalogs for the subgroups of S3 and S4, and the local obstructions
//! that keep most of them out of transverse intersections.

use std::fmt;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::Cyclo12;
use crate::group::{GroupPoint, Permutation, ProjPointExact, Space, SubgroupClass, SubgroupKind};
use crate::linalg;
use crate::poly::{random_symmetric_with, weighted_monomials, ElemBasisPoly, MultiPoly, UniPoly};
use crate::solver::{restricted_family_roots, FamilyRoots};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixedPointError {
    #[error("singular point: the gradient vanishes")]
    SingularPoint,
    #[error("polynomial {0} does not vanish at the point")]
    NotVanishing(usize),
    #[error("point has {point} coordinates but polynomials have {poly} variables")]
    DimensionMismatch { point: usize, poly: usize },
}

/// One coordinate of a family pattern: a constant or a multiple of a free parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoordExpr {
    Const(Cyclo12),
    Param { index: usize, scale: Cyclo12 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    AllPoints,
    Coords(Vec<CoordExpr>),
}

/// Why a family is (or is not) allowed on a transverse intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    Generic,
    Admissible,
    /// Every symmetric form vanishing at the all-ones point is singular there.
    AllOnesSingular,
    /// Two symmetric curves through `[a:a:1]` share the tangent `X + Y - 2aZ`.
    DiagonalTangent,
    /// Two symmetric curves through `[1:1:0]` share the tangent `Z`.
    TangentAtInfinity,
    /// The Jacobian of three symmetric surfaces drops rank at repeated coordinates.
    RepeatedCoordinates,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Generic => "generic",
            Self::Admissible => "admissible",
            Self::AllOnesSingular => "all-ones-singular",
            Self::DiagonalTangent => "diagonal-tangent",
            Self::TangentAtInfinity => "tangent-at-infinity",
            Self::RepeatedCoordinates => "repeated-coordinates",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointFamily {
    pub space: Space,
    pub stabilizer: SubgroupClass,
    pub pattern: Pattern,
    pub admissible: bool,
    /// Parameter values (single-parameter families only) excluded from the admissible family.
    pub excluded: Vec<Cyclo12>,
    pub reason: Reason,
}

impl FixedPointFamily {
    pub fn num_params(&self) -> usize {
        match &self.pattern {
            Pattern::AllPoints => self.space.nvars(),
            Pattern::Coords(c) => c
                .iter()
                .filter_map(|e| match e {
                    CoordExpr::Param { index, .. } => Some(index + 1),
                    CoordExpr::Const(_) => None,
                })
                .max()
                .unwrap_or(0),
        }
    }

    pub fn is_isolated(&self) -> bool {
        self.num_params() == 0
    }

    /// The point obtained by substituting `params`; `None` for the all-points
    /// pattern or when the substitution yields the zero vector.
    pub fn instantiate(&self, params: &[Cyclo12]) -> Option<ProjPointExact> {
        let Pattern::Coords(coords) = &self.pattern else {
            return None;
        };
        let v = coords
            .iter()
            .map(|e| match e {
                CoordExpr::Const(c) => c.clone(),
                CoordExpr::Param { index, scale } => scale * &params[*index],
            })
            .collect();
        ProjPointExact::new(v).ok()
    }

    /// Parameters `a` with `lambda * p = pattern(a)` for some nonzero `lambda`.
    pub fn match_point(&self, p: &ProjPointExact) -> Option<Vec<Cyclo12>> {
        let Pattern::Coords(coords) = &self.pattern else {
            return Some(p.coords().to_vec());
        };
        let np = self.num_params();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (k, e) in coords.iter().enumerate() {
            let mut row = vec![Cyclo12::zero(); np + 1];
            row[0] = p.coords()[k].clone();
            match e {
                CoordExpr::Const(c) => b.push(c.clone()),
                CoordExpr::Param { index, scale } => {
                    row[index + 1] = -scale;
                    b.push(Cyclo12::zero());
                }
            }
            a.push(row);
        }
        let x = linalg::solve(&a, &b)?;
        if x[0].is_zero() {
            return None;
        }
        Some(x[1..].to_vec())
    }

    pub fn contains(&self, p: &ProjPointExact) -> bool {
        self.match_point(p).is_some()
    }

    /// Restriction of `f` to a one-parameter family, as a polynomial in the parameter.
    pub fn restrict(&self, f: &MultiPoly) -> Option<UniPoly> {
        let Pattern::Coords(coords) = &self.pattern else {
            return None;
        };
        if self.num_params() != 1 {
            return None;
        }
        let images: Vec<MultiPoly> = coords
            .iter()
            .map(|e| match e {
                CoordExpr::Const(c) => MultiPoly::constant(1, c.clone()),
                CoordExpr::Param { scale, .. } => MultiPoly::var(1, 0).scale(scale),
            })
            .collect();
        f.compose(&images).to_univariate(0)
    }

    /// Pattern rendered with `a`, `c` for the parameters.
    pub fn pattern_string(&self) -> String {
        let Pattern::Coords(coords) = &self.pattern else {
            return "all points".to_string();
        };
        let names = ["a", "c"];
        let parts: Vec<String> = coords
            .iter()
            .map(|e| match e {
                CoordExpr::Const(c) => c.to_string(),
                CoordExpr::Param { index, scale } => {
                    let n = names[*index];
                    if scale.is_one() {
                        n.to_string()
                    } else if (-scale).is_one() {
                        format!("-{n}")
                    } else {
                        format!("({scale})*{n}")
                    }
                }
            })
            .collect();
        format!("[{}]", parts.join(" : "))
    }
}

fn k(n: i64) -> CoordExpr {
    CoordExpr::Const(Cyclo12::from_int(n))
}

fn kc(c: Cyclo12) -> CoordExpr {
    CoordExpr::Const(c)
}

fn a() -> CoordExpr {
    CoordExpr::Param { index: 0, scale: Cyclo12::one() }
}

fn neg_a() -> CoordExpr {
    CoordExpr::Param { index: 0, scale: Cyclo12::from_int(-1) }
}

fn c() -> CoordExpr {
    CoordExpr::Param { index: 1, scale: Cyclo12::one() }
}

fn fam(space: Space, class: SubgroupClass, coords: Vec<CoordExpr>, reason: Reason) -> FixedPointFamily {
    FixedPointFamily {
        space,
        stabilizer: class,
        pattern: Pattern::Coords(coords),
        admissible: reason == Reason::Admissible,
        excluded: Vec::new(),
        reason,
    }
}

/// All catalogued fixed-point families of `class`, admissible or not.
pub fn catalog(space: Space, class: SubgroupClass) -> Vec<FixedPointFamily> {
    assert_eq!(space.group(), class.group, "class from the wrong group");
    use Reason::*;
    use SubgroupKind as K;
    let w = Cyclo12::omega();
    let w2 = &w * &w;
    let i = Cyclo12::i();
    let f = |coords, reason| fam(space, class, coords, reason);
    if class.kind == K::Trivial {
        return vec![FixedPointFamily {
            space,
            stabilizer: class,
            pattern: Pattern::AllPoints,
            admissible: true,
            excluded: Vec::new(),
            reason: Generic,
        }];
    }
    match (space, class.kind) {
        (Space::P2, K::C2) => vec![
            f(vec![k(-1), k(1), k(0)], Admissible),
            f(vec![k(1), k(1), k(0)], TangentAtInfinity),
            f(vec![a(), a(), k(1)], DiagonalTangent),
        ],
        (Space::P2, K::C3) => vec![
            f(vec![kc(w.clone()), kc(w2.clone()), k(1)], Admissible),
            f(vec![kc(w2), kc(w), k(1)], Admissible),
            f(vec![k(1), k(1), k(1)], AllOnesSingular),
        ],
        (Space::P2, K::Whole) => vec![f(vec![k(1), k(1), k(1)], AllOnesSingular)],
        (Space::P3, K::C2Odd) => vec![
            f(vec![a(), a(), c(), k(1)], RepeatedCoordinates),
            f(vec![a(), a(), k(1), k(0)], RepeatedCoordinates),
            f(vec![k(1), k(1), k(0), k(0)], RepeatedCoordinates),
            f(vec![k(-1), k(1), k(0), k(0)], RepeatedCoordinates),
        ],
        (Space::P3, K::C2Even) => {
            let mut main = f(vec![a(), neg_a(), k(-1), k(1)], Admissible);
            main.excluded = vec![Cyclo12::zero(), Cyclo12::one(), Cyclo12::from_int(-1)];
            vec![
                main,
                f(vec![a(), a(), k(1), k(1)], RepeatedCoordinates),
                f(vec![k(-1), k(1), k(0), k(0)], RepeatedCoordinates),
                f(vec![k(1), k(1), a(), a()], RepeatedCoordinates),
            ]
        }
        (Space::P3, K::C4) => vec![
            f(vec![k(1), k(1), k(1), k(1)], RepeatedCoordinates),
            f(vec![k(-1), k(1), k(-1), k(1)], RepeatedCoordinates),
            f(vec![kc(i.clone()), k(-1), kc(-&i), k(1)], Admissible),
            f(vec![kc(-&i), k(-1), kc(i), k(1)], Admissible),
        ],
        (Space::P3, K::KleinNormal) => vec![
            f(vec![k(1), k(-1), k(-1), k(1)], RepeatedCoordinates),
            f(vec![k(-1), k(1), k(-1), k(1)], RepeatedCoordinates),
            f(vec![k(1), k(1), k(1), k(1)], RepeatedCoordinates),
            f(vec![k(-1), k(-1), k(1), k(1)], RepeatedCoordinates),
        ],
        (Space::P3, K::Klein) => vec![
            f(vec![k(0), k(0), k(-1), k(1)], RepeatedCoordinates),
            f(vec![a(), a(), k(1), k(1)], RepeatedCoordinates),
            f(vec![k(-1), k(1), k(0), k(0)], RepeatedCoordinates),
            f(vec![k(1), k(1), a(), a()], RepeatedCoordinates),
        ],
        (Space::P3, K::D8) => vec![
            f(vec![k(1), k(1), k(1), k(1)], RepeatedCoordinates),
            f(vec![k(-1), k(1), k(-1), k(1)], RepeatedCoordinates),
        ],
        (Space::P3, K::C3) => vec![
            f(vec![a(), a(), a(), k(1)], RepeatedCoordinates),
            f(vec![k(1), k(1), k(1), k(0)], RepeatedCoordinates),
            f(vec![kc(w.clone()), kc(w2.clone()), k(1), k(0)], Admissible),
            f(vec![kc(w2), kc(w), k(1), k(0)], Admissible),
        ],
        (Space::P3, K::S3) => vec![
            f(vec![k(1), k(1), k(1), k(0)], RepeatedCoordinates),
            f(vec![a(), a(), a(), k(1)], RepeatedCoordinates),
        ],
        (Space::P3, K::A4) | (Space::P3, K::Whole) => {
            vec![f(vec![k(1), k(1), k(1), k(1)], RepeatedCoordinates)]
        }
        _ => unreachable!("no class {class} in {space}"),
    }
}

/// Catalogs of every class of the ambient group, in catalog order.
pub fn full_catalog(space: Space) -> Vec<FixedPointFamily> {
    space
        .group()
        .subgroup_classes()
        .into_iter()
        .flat_map(|c| catalog(space, c))
        .collect()
}

/// Admissible families with nontrivial stabilizer.
pub fn admissible_special_families(space: Space) -> Vec<FixedPointFamily> {
    full_catalog(space)
        .into_iter()
        .filter(|f| f.admissible && f.stabilizer.kind != SubgroupKind::Trivial)
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogCheck {
    pub class: SubgroupClass,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogReport {
    pub space: Space,
    pub checks: Vec<CatalogCheck>,
    /// Complete fixed-point sets of the classes whose fixed locus is finite.
    pub finite_fixed_points: Vec<(SubgroupClass, Vec<ProjPointExact>)>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CatalogCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn finite_points(&self, class: &SubgroupClass) -> Option<&[ProjPointExact]> {
        self.finite_fixed_points
            .iter()
            .find(|(c, _)| c == class)
            .map(|(_, p)| p.as_slice())
    }
}

fn parameter_samples() -> Vec<Cyclo12> {
    vec![
        Cyclo12::from_int(2),
        Cyclo12::from_int(-3),
        Cyclo12::from_frac(1, 2),
        Cyclo12::from_frac(5, 7),
        Cyclo12::omega(),
        Cyclo12::i(),
    ]
}

fn permutation_matrix(sigma: &Permutation) -> linalg::Matrix {
    let n = sigma.len();
    let mut m = vec![vec![Cyclo12::zero(); n]; n];
    for i in 0..n {
        m[sigma.image(i)][i] = Cyclo12::one();
    }
    m
}

fn normalizer(class: &SubgroupClass) -> Vec<Permutation> {
    let mut h = class.elements();
    h.sort();
    class
        .group
        .elements()
        .into_iter()
        .filter(|s| {
            let si = s.inverse();
            let mut conj: Vec<Permutation> = h.iter().map(|x| s.compose(x).compose(&si)).collect();
            conj.sort();
            conj == h
        })
        .collect()
}

fn contains_subgroup(p: &ProjPointExact, class: &SubgroupClass) -> bool {
    class.elements().iter().all(|s| p.act(s) == *p)
}

/// Fixed locus of the representative subgroup, as a list of linear subspaces
/// (common eigenspaces of the generators for eigenvalues among the 12th roots of unity
/// of order at most 4).
fn fixed_subspaces(class: &SubgroupClass) -> Vec<Vec<Vec<Cyclo12>>> {
    let n = class.group.degree();
    let gens = class.generators();
    let w = Cyclo12::omega();
    let eigen = [
        Cyclo12::one(),
        Cyclo12::from_int(-1),
        Cyclo12::i(),
        -&Cyclo12::i(),
        w.clone(),
        &w * &w,
    ];
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in &gens {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..eigen.len()).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for t in tuples {
        let mut rows = Vec::new();
        for (g, &e) in gens.iter().zip(&t) {
            let mut m = permutation_matrix(g);
            for (d, row) in m.iter_mut().enumerate() {
                row[d] -= &eigen[e];
            }
            rows.extend(m);
        }
        let ker = linalg::kernel(&rows, n);
        if !ker.is_empty() {
            out.push(ker);
        }
    }
    out
}

/// Sample points of the projectivized span of `basis`, including the coordinate strata.
fn subspace_samples(basis: &[Vec<Cyclo12>]) -> Vec<ProjPointExact> {
    let n = basis[0].len();
    let r = basis.len();
    let mut combos: Vec<Vec<i64>> = Vec::new();
    for mask in 1u32..(1 << r) {
        combos.push((0..r).map(|j| i64::from(mask >> j & 1)).collect());
    }
    combos.push((0..r as i64).map(|j| 2 + 3 * j).collect());
    combos.push((0..r as i64).map(|j| if j % 2 == 0 { -5 - j } else { 7 + j }).collect());
    combos
        .into_iter()
        .filter_map(|cs| {
            let mut v = vec![Cyclo12::zero(); n];
            for (b, &cc) in basis.iter().zip(&cs) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &y.scale(&rug::Rational::from(cc));
                }
            }
            ProjPointExact::new(v).ok()
        })
        .collect()
}

/// Checks every catalog family against brute-force stabilizers and checks completeness
/// against an independent enumeration of fixed loci.
pub fn verify_catalog_by_stabilizer(space: Space) -> CatalogReport {
    let mut checks = Vec::new();
    let mut finite_fixed_points = Vec::new();
    let samples = parameter_samples();
    for class in space.group().subgroup_classes() {
        let families = catalog(space, class);
        // soundness
        for family in &families {
            let subject = family.pattern_string();
            if family.pattern == Pattern::AllPoints {
                checks.push(CatalogCheck {
                    class,
                    subject,
                    passed: class.kind == SubgroupKind::Trivial,
                    detail: "every point is fixed by the trivial subgroup".into(),
                });
                continue;
            }
            let np = family.num_params();
            let param_sets: Vec<Vec<Cyclo12>> = match np {
                0 => vec![vec![]],
                _ => (0..samples.len())
                    .map(|s| (0..np).map(|j| samples[(s + j) % samples.len()].clone()).collect())
                    .collect(),
            };
            let mut bad = Vec::new();
            let mut tested = 0;
            for params in param_sets {
                if np == 1 && family.excluded.contains(&params[0]) {
                    continue;
                }
                let Some(p) = family.instantiate(&params) else { continue };
                tested += 1;
                if !contains_subgroup(&p, &class) {
                    bad.push(p.to_string());
                }
            }
            checks.push(CatalogCheck {
                class,
                subject,
                passed: bad.is_empty() && tested > 0,
                detail: if bad.is_empty() {
                    format!("{tested} instance(s) fixed by {class}")
                } else {
                    format!("not fixed: {}", bad.join(", "))
                },
            });
        }
        if class.kind == SubgroupKind::Trivial {
            continue;
        }
        // completeness against the enumerated fixed locus
        let norm = normalizer(&class);
        let covered = |p: &ProjPointExact| {
            norm.iter().any(|s| {
                let q = p.act(s);
                families.iter().any(|f| f.contains(&q))
            })
        };
        let subspaces = fixed_subspaces(&class);
        let finite = subspaces.iter().all(|b| b.len() == 1);
        let mut uncovered = Vec::new();
        let mut points = Vec::new();
        for basis in &subspaces {
            for p in subspace_samples(basis) {
                if !contains_subgroup(&p, &class) {
                    uncovered.push(format!("{p} (enumerated but not fixed)"));
                } else if !covered(&p) {
                    uncovered.push(p.to_string());
                }
                if basis.len() == 1 && !points.contains(&p) {
                    points.push(p);
                }
            }
        }
        checks.push(CatalogCheck {
            class,
            subject: "fixed locus coverage".into(),
            passed: uncovered.is_empty(),
            detail: if uncovered.is_empty() {
                format!("{} eigenspace(s) covered", subspaces.len())
            } else {
                format!("uncovered fixed points: {}", uncovered.join(", "))
            },
        });
        if finite {
            let listed: Vec<ProjPointExact> =
                families.iter().filter_map(|f| f.instantiate(&[])).collect();
            let same = listed.len() == points.len() && listed.iter().all(|p| points.contains(p));
            checks.push(CatalogCheck {
                class,
                subject: "finite fixed set".into(),
                passed: same,
                detail: format!(
                    "enumerated {{{}}}, catalog {{{}}}",
                    join_points(&points),
                    join_points(&listed)
                ),
            });
            finite_fixed_points.push((class, points));
        }
    }
    CatalogReport {
        space,
        checks,
        finite_fixed_points,
    }
}

fn join_points(ps: &[ProjPointExact]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Exact gradient of `f` at the given representative.
pub fn gradient_at(f: &MultiPoly, p: &ProjPointExact) -> Vec<Cyclo12> {
    f.gradient().iter().map(|g| g.evaluate_exact(p.coords())).collect()
}

/// Scales a nonzero vector so that its first nonzero entry is 1.
fn normalize_first(v: &[Cyclo12]) -> Option<Vec<Cyclo12>> {
    let lead = v.iter().find(|c| !c.is_zero())?;
    let inv = lead.inv().ok()?;
    Some(v.iter().map(|c| c * &inv).collect())
}

/// Tangent line of the plane curve `V(f)` at `p`, normalized so the first nonzero
/// coefficient is 1.
pub fn tangent_line_p2(f: &MultiPoly, p: &ProjPointExact) -> Result<[Cyclo12; 3], FixedPointError> {
    if f.nvars() != 3 || p.len() != 3 {
        return Err(FixedPointError::DimensionMismatch { point: p.len(), poly: f.nvars() });
    }
    let g = normalize_first(&gradient_at(f, p)).ok_or(FixedPointError::SingularPoint)?;
    Ok([g[0].clone(), g[1].clone(), g[2].clone()])
}

/// Linear form `l0 X + l1 Y + l2 Z` as a polynomial.
pub fn line_polynomial(line: &[Cyclo12; 3]) -> MultiPoly {
    let mut out = MultiPoly::zero(3);
    for (i, c) in line.iter().enumerate() {
        out = &out + &MultiPoly::var(3, i).scale(c);
    }
    out
}

/// Exact evidence that a common zero is not a simple intersection point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// `fs[which]` has zero gradient at the point.
    SingularPoint { point: ProjPointExact, which: usize },
    /// Two smooth plane curves with the same tangent line at the point.
    SharedTangent { point: ProjPointExact, line: Vec<Cyclo12> },
    /// Three smooth surfaces whose Jacobian has rank below 3; `repeated` names two
    /// equal coordinates when there are any.
    RankDrop {
        point: ProjPointExact,
        jacobian: Vec<Vec<Cyclo12>>,
        repeated: Option<(usize, usize)>,
    },
    NoObstruction,
}

impl Certificate {
    pub fn is_obstruction(&self) -> bool {
        !matches!(self, Self::NoObstruction)
    }

    pub fn point(&self) -> Option<&ProjPointExact> {
        match self {
            Self::SingularPoint { point, .. }
            | Self::SharedTangent { point, .. }
            | Self::RankDrop { point, .. } => Some(point),
            Self::NoObstruction => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::SingularPoint { .. } => "singular-point",
            Self::SharedTangent { .. } => "shared-tangent",
            Self::RankDrop { .. } => "rank-drop",
            Self::NoObstruction => "none",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SingularPoint { point, which } => {
                write!(f, "polynomial {} is singular at {point}", which + 1)
            }
            Self::SharedTangent { point, line } => {
                let l = [line[0].clone(), line[1].clone(), line[2].clone()];
                write!(f, "shared tangent {} = 0 at {point}", line_polynomial(&l))
            }
            Self::RankDrop { point, repeated, .. } => {
                write!(f, "Jacobian rank drop at {point}")?;
                if let Some((i, j)) = repeated {
                    write!(f, " (coordinates {i} and {j} agree)")?;
                }
                Ok(())
            }
            Self::NoObstruction => write!(f, "no obstruction"),
        }
    }
}

/// Checks a common zero of `fs` for the local obstructions to transversality.
pub fn obstruction(p: &ProjPointExact, fs: &[MultiPoly]) -> Result<Certificate, FixedPointError> {
    for (idx, f) in fs.iter().enumerate() {
        if f.nvars() != p.len() {
            return Err(FixedPointError::DimensionMismatch { point: p.len(), poly: f.nvars() });
        }
        if !f.evaluate_exact(p.coords()).is_zero() {
            return Err(FixedPointError::NotVanishing(idx));
        }
    }
    let jacobian: Vec<Vec<Cyclo12>> = fs.iter().map(|f| gradient_at(f, p)).collect();
    if let Some(which) = jacobian.iter().position(|g| g.iter().all(Cyclo12::is_zero)) {
        return Ok(Certificate::SingularPoint { point: p.clone(), which });
    }
    if linalg::rank(&jacobian) == fs.len() {
        return Ok(Certificate::NoObstruction);
    }
    if p.len() == 3 && fs.len() == 2 {
        let line = normalize_first(&jacobian[0]).expect("nonzero gradient");
        return Ok(Certificate::SharedTangent { point: p.clone(), line });
    }
    let c = p.coords();
    let repeated = (0..c.len())
        .flat_map(|i| (i + 1..c.len()).map(move |j| (i, j)))
        .find(|&(i, j)| c[i] == c[j]);
    Ok(Certificate::RankDrop {
        point: p.clone(),
        jacobian,
        repeated,
    })
}

/// How an admissible family meets a hypersurface.
#[derive(Debug, Clone)]
pub enum Membership {
    /// An isolated special point lies on the hypersurface.
    Point(ProjPointExact),
    /// The whole one-parameter family lies on it.
    WholeFamily,
    /// Finitely many members lie on it.
    Parameters(FamilyRoots),
}

/// Admissible special families meeting `V(f)`, with the parameters where they do.
pub fn special_point_membership(f: &MultiPoly) -> Vec<(FixedPointFamily, Membership)> {
    let space = match f.nvars() {
        3 => Space::P2,
        4 => Space::P3,
        n => panic!("unsupported variable count {n}"),
    };
    let mut out = Vec::new();
    for family in admissible_special_families(space) {
        if family.is_isolated() {
            let p = family.instantiate(&[]).expect("isolated family point");
            if f.evaluate_exact(p.coords()).is_zero() {
                out.push((family, Membership::Point(p)));
            }
        } else {
            match restricted_family_roots(std::slice::from_ref(f), &family) {
                FamilyRoots::IdenticallyZero => out.push((family, Membership::WholeFamily)),
                roots if !roots.is_empty() => out.push((family, Membership::Parameters(roots))),
                _ => {}
            }
        }
    }
    out
}

/// Random symmetric form of degree `degree` vanishing at `p`, built as
/// `k(p) h - h(p) k` from random `h` and an e-monomial `k` with `k(p) != 0`;
/// `None` when no nonzero symmetric form of that degree vanishes at `p`.
pub fn symmetric_vanishing_at<R: Rng + ?Sized>(
    p: &ProjPointExact,
    degree: u32,
    rng: &mut R,
    bound: i64,
) -> Option<MultiPoly> {
    let n = p.len();
    let monomials: Vec<MultiPoly> = weighted_monomials(n, degree)
        .into_iter()
        .map(|m| ElemBasisPoly::new(MultiPoly::monomial(n, m, Cyclo12::one())).to_multipoly())
        .collect();
    let witness = monomials
        .iter()
        .find(|m| !m.evaluate_exact(p.coords()).is_zero())
        .cloned();
    if witness.is_some() && monomials.len() == 1 {
        return None;
    }
    loop {
        let h = random_symmetric_with(n, degree, rng, bound).to_multipoly();
        let f = match &witness {
            None => h,
            Some(k) => {
                let kp = k.evaluate_exact(p.coords());
                let hp = h.evaluate_exact(p.coords());
                &h.scale(&kp) - &k.scale(&hp)
            }
        };
        if !f.is_zero() {
            return Some(f);
        }
    }
}
