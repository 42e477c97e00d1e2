//! Symmetric groups S3 and S4 acting on projective points by permuting coordinates.
//!
//! A permutation `sigma` moves the coordinate in slot `i` to slot `sigma(i)`, so
//! `(sigma . p)[sigma(i)] = p[i]`. With polynomials acted on by `X_i -> X_sigma(i)`
//! this gives `(sigma f)(sigma . p) = f(p)`.

use std::cmp::Ordering;
use std::fmt;

use rug::Float;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::{ComplexApprox, Cyclo12};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a permutation: {0:?}")]
    NotBijective(Vec<usize>),
    #[error("elements do not form a subgroup: {0} * {1} is missing")]
    NotClosed(Permutation, Permutation),
    #[error("subgroup of unexpected shape (order {0})")]
    Unclassifiable(usize),
    #[error("projective point with all coordinates zero")]
    ZeroPoint,
    #[error("point set is not closed under the group: {permutation} moves point {index} outside the set")]
    NotGClosed { permutation: Permutation, index: usize },
}

/// A bijection of `{0, .., n-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(GroupError::NotBijective(images));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Product of the given disjoint or overlapping cycles, applied right to left.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut out = Self::identity(n);
        for cyc in cycles.iter().rev() {
            let mut images: Vec<usize> = (0..n).collect();
            for (k, &a) in cyc.iter().enumerate() {
                images[a] = cyc[(k + 1) % cyc.len()];
            }
            out = Self { images }.compose(&out);
        }
        out
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Self { images }
    }

    /// The cycle `0 -> 1 -> .. -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Self {
        Self {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    /// All `n!` permutations in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation { images: prefix.clone() });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Self {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Self { images }
    }

    /// Cycle lengths (including fixed points) in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }

    pub fn is_transposition(&self) -> bool {
        self.images.iter().enumerate().filter(|(i, j)| i != *j).count() == 2
    }

    /// Permutes a coordinate vector: `out[sigma(i)] = v[i]`.
    pub fn permute<T: Clone>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.len());
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.images[i]] = x.clone();
        }
        out
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    /// Cycle notation on `0..n`, e.g. `(0 1)(2 3)`; the identity is `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        let mut seen = vec![false; self.len()];
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// Closure of a generating set under composition.
pub fn generate(n: usize, generators: &[Permutation]) -> Vec<Permutation> {
    let mut elems = vec![Permutation::identity(n)];
    let mut frontier = elems.clone();
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = g.compose(&x);
            if !elems.contains(&y) {
                elems.push(y.clone());
                frontier.push(y);
            }
        }
    }
    elems.sort();
    elems
}

/// The two ambient spaces together with their symmetry groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub enum Space {
    P2,
    P3,
}

impl Space {
    pub fn nvars(self) -> usize {
        match self {
            Self::P2 => 3,
            Self::P3 => 4,
        }
    }

    pub fn group(self) -> SymGroup {
        match self {
            Self::P2 => SymGroup::S3,
            Self::P3 => SymGroup::S4,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::P2 => "P2",
            Self::P3 => "P3",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymGroup {
    S3,
    S4,
}

impl SymGroup {
    pub fn degree(self) -> usize {
        match self {
            Self::S3 => 3,
            Self::S4 => 4,
        }
    }

    pub fn order(self) -> usize {
        match self {
            Self::S3 => 6,
            Self::S4 => 24,
        }
    }

    pub fn elements(self) -> Vec<Permutation> {
        Permutation::all(self.degree())
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::S3 => "S3",
            Self::S4 => "S4",
        }
    }

    /// One class per conjugacy class of subgroups, in catalog order.
    pub fn subgroup_classes(self) -> Vec<SubgroupClass> {
        use SubgroupKind::*;
        let kinds: &[SubgroupKind] = match self {
            Self::S3 => &[Trivial, C2, C3, Whole],
            Self::S4 => &[Trivial, C2Odd, C2Even, C4, KleinNormal, Klein, D8, C3, S3, A4, Whole],
        };
        kinds.iter().map(|&kind| SubgroupClass { group: self, kind }).collect()
    }
}

/// Conjugacy-class labels; `C2` is the S3 class, `C2Odd`/`C2Even` the S4 classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubgroupKind {
    Trivial,
    C2,
    C2Odd,
    C2Even,
    C3,
    C4,
    KleinNormal,
    Klein,
    D8,
    S3,
    A4,
    Whole,
}

/// A conjugacy class of subgroups of S3 or S4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubgroupClass {
    pub group: SymGroup,
    pub kind: SubgroupKind,
}

impl SubgroupClass {
    pub fn new(group: SymGroup, kind: SubgroupKind) -> Self {
        Self { group, kind }
    }

    pub fn trivial(group: SymGroup) -> Self {
        Self::new(group, SubgroupKind::Trivial)
    }

    /// Looks up a class by its ASCII name (`C2o`, `K4n`, ...).
    pub fn from_name(group: SymGroup, name: &str) -> Option<Self> {
        group.subgroup_classes().into_iter().find(|c| c.name() == name)
    }

    pub fn name(&self) -> &'static str {
        use SubgroupKind::*;
        match self.kind {
            Trivial => "Trivial",
            C2 => "C2",
            C2Odd => "C2o",
            C2Even => "C2e",
            C3 => "C3",
            C4 => "C4",
            KleinNormal => "K4n",
            Klein => "K4",
            D8 => "D8",
            S3 => "S3",
            A4 => "A4",
            Whole => self.group.name(),
        }
    }

    pub fn order(&self) -> usize {
        use SubgroupKind::*;
        match self.kind {
            Trivial => 1,
            C2 | C2Odd | C2Even => 2,
            C3 => 3,
            C4 | KleinNormal | Klein => 4,
            S3 => 6,
            D8 => 8,
            A4 => 12,
            Whole => self.group.order(),
        }
    }

    /// Orbit size `|G| / |H|`.
    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    pub fn generators(&self) -> Vec<Permutation> {
        use SubgroupKind::*;
        let n = self.group.degree();
        let c = |cycles: &[&[usize]]| Permutation::from_cycles(n, cycles);
        match self.kind {
            Trivial => vec![],
            C2 | C2Odd => vec![c(&[&[0, 1]])],
            C2Even => vec![c(&[&[0, 1], &[2, 3]])],
            C3 => vec![c(&[&[0, 1, 2]])],
            C4 => vec![c(&[&[0, 1, 2, 3]])],
            KleinNormal => vec![c(&[&[0, 1], &[2, 3]]), c(&[&[0, 2], &[1, 3]])],
            Klein => vec![c(&[&[0, 1]]), c(&[&[2, 3]])],
            D8 => vec![c(&[&[0, 1, 2, 3]]), c(&[&[0, 2]])],
            S3 => vec![c(&[&[0, 1, 2]]), c(&[&[0, 1]])],
            A4 => vec![c(&[&[0, 1, 2]]), c(&[&[0, 1], &[2, 3]])],
            Whole => vec![c(&[&[0, 1]]), Permutation::cycle(n)],
        }
    }

    /// Elements of the representative subgroup.
    pub fn elements(&self) -> Vec<Permutation> {
        generate(self.group.degree(), &self.generators())
    }

    fn catalog_position(&self) -> usize {
        self.group
            .subgroup_classes()
            .iter()
            .position(|c| c == self)
            .expect("class belongs to its group")
    }
}

impl fmt::Display for SubgroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for SubgroupClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Identifies the conjugacy class of a subgroup given by its full element list.
pub fn classify_subgroup(elements: &[Permutation]) -> Result<SubgroupClass, GroupError> {
    let n = elements.first().map_or(0, Permutation::len);
    let group = match n {
        3 => SymGroup::S3,
        4 => SymGroup::S4,
        _ => return Err(GroupError::Unclassifiable(elements.len())),
    };
    for a in elements {
        for b in elements {
            let ab = a.compose(b);
            if !elements.contains(&ab) {
                return Err(GroupError::NotClosed(a.clone(), b.clone()));
            }
        }
    }
    let mut distinct = elements.to_vec();
    distinct.sort();
    distinct.dedup();
    let order = distinct.len();
    let transpositions = distinct.iter().filter(|p| p.is_transposition()).count();
    let has_4cycle = distinct.iter().any(|p| p.cycle_type()[0] == 4);
    use SubgroupKind::*;
    let kind = match (group, order) {
        (_, 1) => Trivial,
        (SymGroup::S3, 2) => C2,
        (SymGroup::S3, 3) => C3,
        (SymGroup::S3, 6) => Whole,
        (SymGroup::S4, 2) if transpositions == 1 => C2Odd,
        (SymGroup::S4, 2) => C2Even,
        (SymGroup::S4, 3) => C3,
        (SymGroup::S4, 4) if has_4cycle => C4,
        (SymGroup::S4, 4) if transpositions == 0 => KleinNormal,
        (SymGroup::S4, 4) => Klein,
        (SymGroup::S4, 6) => S3,
        (SymGroup::S4, 8) => D8,
        (SymGroup::S4, 12) => A4,
        (SymGroup::S4, 24) => Whole,
        _ => return Err(GroupError::Unclassifiable(order)),
    };
    Ok(SubgroupClass { group, kind })
}

/// Points on which permutations act; equality is projective.
pub trait GroupPoint: Sized {
    fn act(&self, sigma: &Permutation) -> Self;
    fn same_point(&self, other: &Self) -> bool;
    fn dimension(&self) -> usize;

    fn stabilizer_elements(&self) -> Vec<Permutation> {
        Permutation::all(self.dimension())
            .into_iter()
            .filter(|s| self.act(s).same_point(self))
            .collect()
    }

    fn stabilizer(&self) -> Stabilizer {
        let elements = self.stabilizer_elements();
        let class = classify_subgroup(&elements).expect("stabilizers are subgroups");
        Stabilizer { elements, class }
    }

    /// Distinct images under the full symmetric group.
    fn orbit(&self) -> Vec<Self> {
        let mut out: Vec<Self> = Vec::new();
        for s in Permutation::all(self.dimension()) {
            let q = self.act(&s);
            if !out.iter().any(|p| p.same_point(&q)) {
                out.push(q);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilizer {
    pub elements: Vec<Permutation>,
    pub class: SubgroupClass,
}

/// A point of P^n with exact coordinates, scaled so the last nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPointExact {
    coords: Vec<Cyclo12>,
}

impl ProjPointExact {
    pub fn new(coords: Vec<Cyclo12>) -> Result<Self, GroupError> {
        let last = coords.iter().rposition(|c| !c.is_zero()).ok_or(GroupError::ZeroPoint)?;
        let inv = coords[last].inv().expect("nonzero");
        Ok(Self {
            coords: coords.iter().map(|c| c * &inv).collect(),
        })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, GroupError> {
        Self::new(coords.iter().map(|&c| Cyclo12::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[Cyclo12] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn conj(&self) -> Self {
        Self {
            coords: self.coords.iter().map(Cyclo12::conj).collect(),
        }
    }

    /// True when the point has a representative with real coordinates.
    pub fn is_real(&self) -> bool {
        self.coords.iter().all(Cyclo12::is_real)
    }

    pub fn has_repeated_coordinate(&self) -> bool {
        (0..self.len()).any(|i| (i + 1..self.len()).any(|j| self.coords[i] == self.coords[j]))
    }

    pub fn to_numeric(&self, prec: u32, tolerance: f64) -> ProjPointNumeric {
        ProjPointNumeric::new(self.coords.iter().map(|c| c.embed(prec)).collect(), tolerance)
            .expect("nonzero exact point")
    }
}

impl GroupPoint for ProjPointExact {
    fn act(&self, sigma: &Permutation) -> Self {
        Self::new(sigma.permute(&self.coords)).expect("nonzero")
    }

    fn same_point(&self, other: &Self) -> bool {
        self == other
    }

    fn dimension(&self) -> usize {
        self.len()
    }
}

impl fmt::Display for ProjPointExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

impl Serialize for ProjPointExact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for ProjPointExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A numerical point of P^n: unit norm, largest coordinate real and positive.
#[derive(Clone)]
pub struct ProjPointNumeric {
    coords: Vec<ComplexApprox>,
    tolerance: f64,
}

impl ProjPointNumeric {
    pub fn new(coords: Vec<ComplexApprox>, tolerance: f64) -> Result<Self, GroupError> {
        let prec = coords.iter().map(ComplexApprox::precision_bits).max().unwrap_or(53);
        let mut norm2 = Float::with_val(prec, 0);
        let mut best = 0;
        let mut best_abs = Float::with_val(prec, 0);
        for (k, c) in coords.iter().enumerate() {
            let a = c.norm_sqr();
            norm2 += &a;
            // prefer the earliest coordinate among near-ties so the phase is stable
            if a > Float::with_val(prec, &best_abs * (1.0 + 1e-12)) {
                best = k;
                best_abs = a;
            }
        }
        if norm2.is_zero() {
            return Err(GroupError::ZeroPoint);
        }
        let lead = &coords[best];
        let lead_abs = lead.abs();
        // multiply by conj(lead) / (|lead| * norm) to make coords[best] real positive
        let scale = Float::with_val(prec, &lead_abs * norm2.sqrt());
        let phase = ComplexApprox::new(
            Float::with_val(prec, lead.re() / &scale),
            Float::with_val(prec, -lead.im().clone() / &scale),
        );
        let coords = coords.iter().map(|c| c * &phase).collect();
        Ok(Self { coords, tolerance })
    }

    pub fn coords(&self) -> &[ComplexApprox] {
        &self.coords
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn precision_bits(&self) -> u32 {
        self.coords[0].precision_bits()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Chordal distance `sqrt(1 - |<p, q>|^2)` between unit representatives.
    pub fn distance(&self, other: &Self) -> f64 {
        let prec = self.precision_bits().max(other.precision_bits());
        let mut re = Float::with_val(prec, 0);
        let mut im = Float::with_val(prec, 0);
        for (a, b) in self.coords.iter().zip(&other.coords) {
            // a * conj(b)
            re += Float::with_val(prec, a.re() * b.re()) + Float::with_val(prec, a.im() * b.im());
            im += Float::with_val(prec, a.im() * b.re()) - Float::with_val(prec, a.re() * b.im());
        }
        let ip2 = Float::with_val(prec, re.square_ref()) + Float::with_val(prec, im.square_ref());
        let d2 = Float::with_val(prec, 1 - ip2);
        d2.to_f64().max(0.0).sqrt()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coords.iter().map(ComplexApprox::conj).collect(), self.tolerance)
            .expect("nonzero")
    }

    /// True when the point is within tolerance of its complex conjugate.
    pub fn is_real(&self) -> bool {
        self.distance(&self.conj()) < self.tolerance
    }

    /// Index of the largest-magnitude coordinate.
    pub fn largest_coordinate(&self) -> usize {
        let mut best = 0;
        let mut best_abs = -1.0;
        for (k, c) in self.coords.iter().enumerate() {
            let a = c.abs_f64();
            if a > best_abs * (1.0 + 1e-12) {
                best = k;
                best_abs = a;
            }
        }
        best
    }

    /// Representative with coordinate `i` equal to 1.
    pub fn normalized_at(&self, i: usize) -> Vec<ComplexApprox> {
        let inv = self.coords[i].recip();
        self.coords.iter().map(|c| c * &inv).collect()
    }

    pub fn to_f64(&self) -> Vec<(f64, f64)> {
        self.coords.iter().map(ComplexApprox::to_f64).collect()
    }
}

impl GroupPoint for ProjPointNumeric {
    fn act(&self, sigma: &Permutation) -> Self {
        Self::new(sigma.permute(&self.coords), self.tolerance).expect("nonzero")
    }

    fn same_point(&self, other: &Self) -> bool {
        self.distance(other) < self.tolerance.max(other.tolerance)
    }

    fn dimension(&self) -> usize {
        self.len()
    }
}

impl fmt::Debug for ProjPointNumeric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .to_f64()
            .iter()
            .map(|(re, im)| format!("{re:.6}{im:+.6}i"))
            .collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

/// A finite G-set up to isomorphism: multiplicities of orbits `[G/H]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitType {
    group: SymGroup,
    terms: Vec<(SubgroupClass, usize)>,
}

impl OrbitType {
    pub fn empty(group: SymGroup) -> Self {
        Self { group, terms: Vec::new() }
    }

    pub fn from_terms(group: SymGroup, terms: impl IntoIterator<Item = (SubgroupClass, usize)>) -> Self {
        let mut out = Self::empty(group);
        for (class, k) in terms {
            out.add(class, k);
        }
        out
    }

    pub fn add(&mut self, class: SubgroupClass, k: usize) {
        assert_eq!(class.group, self.group, "orbit class from another group");
        if k == 0 {
            return;
        }
        match self.terms.iter_mut().find(|(c, _)| *c == class) {
            Some((_, m)) => *m += k,
            None => self.terms.push((class, k)),
        }
        self.terms.sort_by(|(a, _), (b, _)| {
            b.order().cmp(&a.order()).then(a.catalog_position().cmp(&b.catalog_position()))
        });
    }

    pub fn group(&self) -> SymGroup {
        self.group
    }

    /// Terms ordered by decreasing stabilizer order.
    pub fn terms(&self) -> &[(SubgroupClass, usize)] {
        &self.terms
    }

    pub fn multiplicity(&self, class: &SubgroupClass) -> usize {
        self.terms.iter().find(|(c, _)| c == class).map_or(0, |(_, k)| *k)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of points in the G-set.
    pub fn size(&self) -> usize {
        self.terms.iter().map(|(c, k)| c.index() * k).sum()
    }

    pub fn num_orbits(&self) -> usize {
        self.terms.iter().map(|(_, k)| k).sum()
    }
}

impl fmt::Display for OrbitType {
    /// Burnside notation, e.g. `2[S3] + [S3/C3]`; the empty set renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let g = self.group.name();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, k)| {
                let k = if *k == 1 { String::new() } else { k.to_string() };
                if c.kind == SubgroupKind::Trivial {
                    format!("{k}[{g}]")
                } else {
                    format!("{k}[{g}/{c}]")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for OrbitType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Orbit partition of a G-closed point set.
#[derive(Debug, Clone)]
pub struct OrbitDecomposition {
    pub orbit_type: OrbitType,
    /// Orbit index of each input point; orbits are numbered by first appearance.
    pub orbit_ids: Vec<usize>,
    /// Stabilizer class of each input point.
    pub stabilizers: Vec<SubgroupClass>,
}

/// Partitions `points` into orbits, failing if the set is not closed under the group.
pub fn orbit_partition<P: GroupPoint>(points: &[P], group: SymGroup) -> Result<OrbitDecomposition, GroupError> {
    let elements = group.elements();
    let mut orbit_ids: Vec<Option<usize>> = vec![None; points.len()];
    let mut stabilizers = vec![SubgroupClass::trivial(group); points.len()];
    let mut orbit_type = OrbitType::empty(group);
    let mut next = 0;
    for i in 0..points.len() {
        if orbit_ids[i].is_some() {
            continue;
        }
        let stab = points[i].stabilizer();
        for sigma in &elements {
            let q = points[i].act(sigma);
            let j = points
                .iter()
                .position(|p| p.same_point(&q))
                .ok_or_else(|| GroupError::NotGClosed {
                    permutation: sigma.clone(),
                    index: i,
                })?;
            orbit_ids[j] = Some(next);
            stabilizers[j] = stab.class;
        }
        orbit_type.add(stab.class, 1);
        next += 1;
    }
    Ok(OrbitDecomposition {
        orbit_type,
        orbit_ids: orbit_ids.into_iter().map(|x| x.expect("assigned")).collect(),
        stabilizers,
    })
}

pub fn decompose_orbits<P: GroupPoint>(points: &[P], group: SymGroup) -> Result<OrbitType, GroupError> {
    orbit_partition(points, group).map(|d| d.orbit_type)
}

impl PartialOrd for SubgroupClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubgroupClass {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.group, self.catalog_position()).cmp(&(other.group, other.catalog_position()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::DEFAULT_PRECISION;

    fn pt(c: Vec<Cyclo12>) -> ProjPointExact {
        ProjPointExact::new(c).unwrap()
    }

    fn w() -> Cyclo12 {
        Cyclo12::omega()
    }

    #[test]
    fn permutation_basics() {
        let s = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]);
        assert_eq!(s.images(), &[1, 2, 3, 0]);
        assert_eq!(s.order(), 4);
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(4));
        assert_eq!(s.to_string(), "(0 1 2 3)");
        assert_eq!(Permutation::all(4).len(), 24);
        let t = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]);
        assert_eq!(t.cycle_type(), vec![2, 2]);
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn action_matches_convention() {
        let s = Permutation::cycle(3);
        let p: Vec<i32> = vec![10, 20, 30];
        assert_eq!(s.permute(&p), vec![30, 10, 20]);
    }

    #[test]
    fn catalog_orders_and_classification() {
        for g in [SymGroup::S3, SymGroup::S4] {
            let classes = g.subgroup_classes();
            assert_eq!(classes.len(), if g == SymGroup::S3 { 4 } else { 11 });
            for c in classes {
                let elems = c.elements();
                assert_eq!(elems.len(), c.order(), "{c}");
                assert_eq!(g.order() % c.order(), 0);
                assert_eq!(classify_subgroup(&elems).unwrap(), c);
            }
        }
    }

    #[test]
    fn classify_spec_examples() {
        let e = Permutation::identity(4);
        let c = |cy: &[&[usize]]| Permutation::from_cycles(4, cy);
        let s = SymGroup::S4;
        assert_eq!(classify_subgroup(&[e.clone(), c(&[&[0, 1]])]).unwrap().name(), "C2o");
        assert_eq!(classify_subgroup(&[e.clone(), c(&[&[0, 1], &[2, 3]])]).unwrap().name(), "C2e");
        let k4n = [e.clone(), c(&[&[0, 1], &[2, 3]]), c(&[&[0, 2], &[1, 3]]), c(&[&[0, 3], &[1, 2]])];
        assert_eq!(classify_subgroup(&k4n).unwrap(), SubgroupClass::new(s, SubgroupKind::KleinNormal));
        assert!(matches!(
            classify_subgroup(&[e, c(&[&[0, 1, 2]])]),
            Err(GroupError::NotClosed(..))
        ));
    }

    #[test]
    fn stabilizer_examples() {
        let p = ProjPointExact::from_ints(&[-1, 1, 0]).unwrap();
        assert_eq!(p.stabilizer().class.name(), "C2");
        let swap = Permutation::transposition(3, 0, 1);
        assert_eq!(p.act(&swap), p);
        let q = pt(vec![w(), &w() * &w(), Cyclo12::one()]);
        assert_eq!(q.stabilizer().class.name(), "C3");
        assert_eq!(q.act(&Permutation::cycle(3)), q);
        let i = Cyclo12::i();
        let r = pt(vec![i.clone(), Cyclo12::from_int(-1), -&i, Cyclo12::one()]);
        assert_eq!(r.stabilizer().class.name(), "C4");
    }

    #[test]
    fn orbit_examples() {
        let p = ProjPointExact::from_ints(&[-1, 1, 0]).unwrap();
        let orb = p.orbit();
        assert_eq!(orb.len(), 3);
        for q in [[-1, 0, 1], [0, -1, 1], [-1, 1, 0]] {
            assert!(orb.contains(&ProjPointExact::from_ints(&q).unwrap()));
        }
        let q = pt(vec![w(), &w() * &w(), Cyclo12::one()]);
        assert_eq!(q.orbit().len(), 2);
        assert_eq!(ProjPointExact::from_ints(&[2, 3, 1]).unwrap().orbit().len(), 6);
    }

    #[test]
    fn example_decomposition() {
        let mut pts = ProjPointExact::from_ints(&[-1, 1, 0]).unwrap().orbit();
        pts.extend(pt(vec![w(), &w() * &w(), Cyclo12::one()]).orbit());
        assert_eq!(pts.len(), 5);
        let ot = decompose_orbits(&pts, SymGroup::S3).unwrap();
        assert_eq!(ot.to_string(), "[S3/C3] + [S3/C2]");
        assert_eq!(ot.size(), 5);
        let empty: Vec<ProjPointExact> = vec![];
        assert!(decompose_orbits(&empty, SymGroup::S3).unwrap().is_empty());
        let generic = ProjPointExact::from_ints(&[2, 3, 1]).unwrap().orbit();
        assert_eq!(decompose_orbits(&generic, SymGroup::S3).unwrap().to_string(), "[S3]");
        let err = decompose_orbits(&generic[..5], SymGroup::S3).unwrap_err();
        assert!(matches!(err, GroupError::NotGClosed { .. }));
    }

    #[test]
    fn numeric_points_match_exact() {
        let q = pt(vec![w(), &w() * &w(), Cyclo12::one()]);
        let n = q.to_numeric(DEFAULT_PRECISION, 1e-8);
        let m = q.act(&Permutation::transposition(3, 0, 1)).to_numeric(DEFAULT_PRECISION, 1e-8);
        assert!(n.distance(&n) < 1e-15);
        assert!(n.distance(&m) > 0.1);
        assert!(n.act(&Permutation::cycle(3)).same_point(&n));
        let mut pts: Vec<_> = ProjPointExact::from_ints(&[-1, 1, 0])
            .unwrap()
            .orbit()
            .iter()
            .map(|p| p.to_numeric(DEFAULT_PRECISION, 1e-8))
            .collect();
        pts.extend(q.orbit().iter().map(|p| p.to_numeric(DEFAULT_PRECISION, 1e-8)));
        let d = orbit_partition(&pts, SymGroup::S3).unwrap();
        assert_eq!(d.orbit_type.to_string(), "[S3/C3] + [S3/C2]");
        assert!(pts[0].is_real());
        assert!(!pts[4].is_real());
    }

    #[test]
    fn orbit_type_rendering() {
        let g = SymGroup::S3;
        let c2 = SubgroupClass::from_name(g, "C2").unwrap();
        let c3 = SubgroupClass::from_name(g, "C3").unwrap();
        let ot = OrbitType::from_terms(g, [(c2, 1), (SubgroupClass::trivial(g), 2), (c3, 1)]);
        assert_eq!(ot.to_string(), "[S3/C3] + [S3/C2] + 2[S3]");
        assert_eq!(ot.size(), 17);
        let ot2 = OrbitType::from_terms(g, [(c2, 2), (c3, 1)]);
        assert_eq!(ot2.to_string(), "[S3/C3] + 2[S3/C2]");
    }
}
