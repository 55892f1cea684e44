//! Rational projective points, point configurations, incidence predicates and
//! the candidate curves (secant lines, conics) that may divide a determinant.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::feasibility_check;
use crate::exactalg::{AlgError, Field, FieldMatrix, HPoly, Monomial3, PolyJson, Scalar, VarSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("points must be distinct")]
    DuplicatePoint,
    #[error("a configuration needs at least {0} points")]
    TooFewPoints(usize),
    #[error("no conic passes through the given points")]
    NoConic,
    #[error("conic through the given points is not unique (kernel dimension {0})")]
    DegenerateConic(usize),
    #[error("unknown configuration name {0:?}")]
    UnknownName(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("generation exceeded its retry budget ({0} attempts)")]
    RetryBudget(usize),
    #[error("configuration does not have the required incidences: {0}")]
    ConstraintViolation(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// A point of the projective plane with integer coordinates, stored in a
/// unique normal form: coprime entries, first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [BigInt; 3],
}

impl ProjPoint {
    pub fn new(x: i64, y: i64, z: i64) -> Result<Self, GeometryError> {
        Self::from_bigints([x.into(), y.into(), z.into()])
    }

    pub fn from_bigints(coords: [BigInt; 3]) -> Result<Self, GeometryError> {
        let g = coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(GeometryError::ZeroPoint);
        }
        let first = coords.iter().find(|c| !c.is_zero()).expect("nonzero");
        let g = if first.is_negative() { -g } else { g };
        Ok(ProjPoint {
            coords: coords.map(|c| c / &g),
        })
    }

    pub fn from_rationals(coords: &[BigRational; 3]) -> Result<Self, GeometryError> {
        let l = coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = coords
            .clone()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer());
        Self::from_bigints(ints)
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.coords
    }

    /// Coordinate triple as scalars of `field`; fails if it vanishes there.
    pub fn coords_in(&self, field: Field) -> Result<[Scalar; 3], GeometryError> {
        let out = self.coords.clone().map(|c| field.from_bigint(&c));
        if out.iter().all(Scalar::is_zero) {
            return Err(GeometryError::ZeroPoint);
        }
        Ok(out)
    }

    pub fn rational_coords(&self) -> [Scalar; 3] {
        self.coords_in(Field::Rational).expect("normalized point is nonzero")
    }

    pub fn cross(&self, other: &ProjPoint) -> [BigInt; 3] {
        let [a0, a1, a2] = &self.coords;
        let [b0, b1, b2] = &other.coords;
        [a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0]
    }

    pub fn dot(&self, other: &[BigInt; 3]) -> BigInt {
        self.coords.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    /// Normalized `lambda * self + mu * other`.
    pub fn combine(&self, lambda: &BigInt, other: &ProjPoint, mu: &BigInt) -> Result<ProjPoint, GeometryError> {
        let c = [0, 1, 2].map(|i| lambda * &self.coords[i] + mu * &other.coords[i]);
        ProjPoint::from_bigints(c)
    }

    pub fn to_strings(&self) -> [String; 3] {
        self.coords.clone().map(|c| c.to_string())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.coords[0], self.coords[1], self.coords[2])
    }
}

pub fn collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    r.dot(&p.cross(q)).is_zero()
}

/// Ordered list of distinct points with a label and optional generator seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    pub label: String,
    pub seed: Option<u64>,
    points: Vec<ProjPoint>,
}

impl PointConfig {
    pub fn new(label: impl Into<String>, seed: Option<u64>, points: Vec<ProjPoint>) -> Result<Self, GeometryError> {
        if points.len() < 2 {
            return Err(GeometryError::TooFewPoints(2));
        }
        if points.iter().duplicates().next().is_some() {
            return Err(GeometryError::DuplicatePoint);
        }
        Ok(PointConfig {
            label: label.into(),
            seed,
            points,
        })
    }

    pub fn from_i64(label: &str, pts: &[[i64; 3]]) -> Result<Self, GeometryError> {
        let points = pts
            .iter()
            .map(|p| ProjPoint::new(p[0], p[1], p[2]))
            .collect::<Result<Vec<_>, _>>()?;
        PointConfig::new(label, None, points)
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_json(&self) -> ConfigJson {
        ConfigJson {
            label: self.label.clone(),
            seed: self.seed,
            points: self.points.iter().map(ProjPoint::to_strings).collect(),
        }
    }

    pub fn from_json(j: &ConfigJson) -> Result<Self, GeometryError> {
        let points = j
            .points
            .iter()
            .map(|p| {
                let c = p
                    .iter()
                    .map(|s| s.trim().parse::<BigInt>().map_err(|_| GeometryError::BadParameter(format!("bad coordinate {s:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                ProjPoint::from_bigints([c[0].clone(), c[1].clone(), c[2].clone()])
            })
            .collect::<Result<Vec<_>, _>>()?;
        PointConfig::new(j.label.clone(), j.seed, points)
    }
}

/// Config JSON: `{"label":..,"seed":..,"points":[["p0","p1","p2"],..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub label: String,
    pub seed: Option<u64>,
    pub points: Vec<[String; 3]>,
}

/// A curve in the plane of the moving point, with the indices of the
/// configuration points it passes through.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    pub poly: HPoly,
    pub degree: u32,
    pub label: String,
    pub support: Vec<usize>,
}

impl PlaneCurve {
    pub fn new(poly: HPoly, label: impl Into<String>) -> Self {
        let poly = poly.canonicalize();
        PlaneCurve {
            degree: poly.degree(),
            poly,
            label: label.into(),
            support: Vec::new(),
        }
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.poly
            .eval(&p.rational_coords())
            .map(|v| v.is_zero())
            .unwrap_or(false)
    }

    /// Recomputes `support` as the indices of the points of `z` on the curve.
    pub fn with_support(mut self, z: &[ProjPoint]) -> Self {
        self.support = z
            .iter()
            .enumerate()
            .filter(|(_, p)| self.contains(p))
            .map(|(i, _)| i)
            .collect();
        self
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson {
            poly: PolyJson::from(&self.poly),
            label: self.label.clone(),
            support: self.support.clone(),
        }
    }
}

/// Polynomial JSON of the curve plus its label and support indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    #[serde(flatten)]
    pub poly: PolyJson,
    pub label: String,
    pub support: Vec<usize>,
}

fn rational_linear(c: [BigInt; 3]) -> HPoly {
    HPoly::linear(VarSet::A, c.map(|v| Field::Rational.from_bigint(&v)))
}

/// Line through two distinct points; coefficients are their cross product.
pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<PlaneCurve, GeometryError> {
    if p == q {
        return Err(GeometryError::DuplicatePoint);
    }
    Ok(PlaneCurve::new(rational_linear(p.cross(q)), "line"))
}

fn conic_rows(points: &[&ProjPoint]) -> Vec<Vec<Scalar>> {
    let basis = Monomial3::all_of_degree(2);
    points
        .iter()
        .map(|p| {
            let c = p.rational_coords();
            basis
                .iter()
                .map(|m| HPoly::monomial(VarSet::A, *m, Field::Rational.one()).eval(&c).expect("rational"))
                .collect()
        })
        .collect()
}

fn conic_from_kernel(points: &[&ProjPoint]) -> Result<PlaneCurve, GeometryError> {
    let m = FieldMatrix::from_rows(conic_rows(points), Field::Rational)?;
    let k = m.kernel_basis();
    match k.basis.len() {
        0 => Err(GeometryError::NoConic),
        1 => {
            let terms = Monomial3::all_of_degree(2).into_iter().zip(k.basis[0].clone()).collect();
            let poly = HPoly::from_terms(VarSet::A, Field::Rational, 2, terms)?;
            Ok(PlaneCurve::new(poly, "conic"))
        }
        n => Err(GeometryError::DegenerateConic(n)),
    }
}

/// The unique conic through at least five points.
pub fn conic_through(points: &[ProjPoint]) -> Result<PlaneCurve, GeometryError> {
    if points.len() < 5 {
        return Err(GeometryError::TooFewPoints(5));
    }
    let refs: Vec<_> = points.iter().collect();
    conic_from_kernel(&refs)
}

/// Maximal collinear (size >= 3) and coconic (size >= 6) subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionReport {
    pub collinear: Vec<Vec<usize>>,
    pub coconic: Vec<Vec<usize>>,
    pub general_position: bool,
}

fn maximal_collinear(z: &[ProjPoint]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, j) in (0..z.len()).tuple_combinations() {
        if out.iter().any(|s| s.contains(&i) && s.contains(&j)) {
            continue;
        }
        let n = z[i].cross(&z[j]);
        let set: Vec<usize> = (0..z.len()).filter(|&k| z[k].dot(&n).is_zero()).collect();
        if set.len() >= 3 {
            out.push(set);
        }
    }
    out
}

/// Conics through 5-subsets with no three points collinear, with full support.
fn irreducible_conics(z: &[ProjPoint], collinear_sets: &[Vec<usize>]) -> Vec<(PlaneCurve, Vec<usize>)> {
    let has_collinear_triple = |s: &[usize]| {
        collinear_sets
            .iter()
            .any(|c| s.iter().filter(|i| c.contains(i)).count() >= 3)
    };
    let mut out: Vec<(PlaneCurve, Vec<usize>)> = Vec::new();
    for subset in (0..z.len()).combinations(5) {
        if has_collinear_triple(&subset) || out.iter().any(|(_, s)| subset.iter().all(|i| s.contains(i))) {
            continue;
        }
        let refs: Vec<_> = subset.iter().map(|&i| &z[i]).collect();
        let Ok(conic) = conic_from_kernel(&refs) else {
            continue;
        };
        let conic = conic.with_support(z);
        let support = conic.support.clone();
        out.push((conic, support));
    }
    out
}

/// Incidence summary. Coconic subsets are sets of at least six points on one
/// conic with no three of them collinear.
pub fn position_report(z: &PointConfig) -> PositionReport {
    let pts = z.points();
    let collinear = maximal_collinear(pts);
    let coconic: Vec<Vec<usize>> = irreducible_conics(pts, &collinear)
        .into_iter()
        .map(|(_, s)| s)
        .filter(|s| s.len() >= 6)
        .collect();
    let general_position = collinear.is_empty() && coconic.is_empty();
    PositionReport {
        collinear,
        coconic,
        general_position,
    }
}

const RANDOM_RETRY_BUDGET: usize = 20_000;

/// Random configuration in general position with coordinates in `[-bound, bound]`.
///
/// Points are drawn one at a time and rejected when they create a collinear
/// triple or six points on a conic, so the output is deterministic in
/// `(n, seed, bound)`.
pub fn random_config(n: usize, seed: u64, bound: i64) -> Result<PointConfig, GeometryError> {
    if n < 2 {
        return Err(GeometryError::TooFewPoints(2));
    }
    if bound < n as i64 {
        return Err(GeometryError::BadParameter(format!("coordinate bound {bound} is smaller than n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<ProjPoint> = Vec::with_capacity(n);
    let mut conics: Vec<HPoly> = Vec::new();
    let mut attempts = 0;
    while pts.len() < n {
        attempts += 1;
        if attempts > RANDOM_RETRY_BUDGET {
            return Err(GeometryError::RetryBudget(RANDOM_RETRY_BUDGET));
        }
        let c = [0; 3].map(|_| rng.gen_range(-bound..=bound));
        let Ok(p) = ProjPoint::new(c[0], c[1], c[2]) else {
            continue;
        };
        if pts.contains(&p) || pts.iter().tuple_combinations().any(|(a, b)| collinear(a, b, &p)) {
            continue;
        }
        let pc = p.rational_coords();
        if conics.iter().any(|q| q.eval(&pc).map(|v| v.is_zero()).unwrap_or(true)) {
            continue;
        }
        pts.push(p);
        if pts.len() >= 5 {
            let last = pts.len() - 1;
            for rest in (0..last).combinations(4) {
                let mut refs: Vec<_> = rest.iter().map(|&i| &pts[i]).collect();
                refs.push(&pts[last]);
                if let Ok(c) = conic_from_kernel(&refs) {
                    conics.push(c.poly);
                }
            }
        }
    }
    PointConfig::new(format!("random(n={n},bound={bound})"), Some(seed), pts)
}

/// Parameters for [`named_config`].
#[derive(Clone, Copy, Debug, Default)]
pub struct NamedParams {
    pub seed: Option<u64>,
    pub d: Option<u32>,
}

const NAMED_RETRY_BUDGET: usize = 500;

/// Deterministic named constructions: `triangle`, `collinear3`, `example-5-2`
/// (seven points on a smooth conic, a line through two of them carrying two
/// more points) and `two-conics` (`d+3` and `d+2` points on two conics of a
/// pencil through four of the points).
pub fn named_config(name: &str, params: NamedParams) -> Result<PointConfig, GeometryError> {
    let (base, inline_d) = match name.split_once('(') {
        Some((b, rest)) => {
            let d = rest
                .trim_end_matches(')')
                .parse::<u32>()
                .map_err(|_| GeometryError::UnknownName(name.to_string()))?;
            (b, Some(d))
        }
        None => (name, None),
    };
    let seed = params.seed.unwrap_or(0);
    match base {
        "triangle" => PointConfig::from_i64("triangle", &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        "collinear3" => PointConfig::from_i64("collinear3", &[[1, 0, 0], [0, 1, 0], [1, 1, 0]]),
        "example-5-2" => conic_plus_line(seed),
        "two-conics" => {
            let d = inline_d
                .or(params.d)
                .ok_or_else(|| GeometryError::BadParameter("two-conics needs d".into()))?;
            two_conics(d, seed)
        }
        _ => Err(GeometryError::UnknownName(name.to_string())),
    }
}

fn small_rational<R: Rng>(rng: &mut R) -> (BigInt, BigInt) {
    let num = loop {
        let v: i64 = rng.gen_range(-9..=9);
        if v != 0 {
            break v;
        }
    };
    (BigInt::from(num), BigInt::from(rng.gen_range(1..=9i64)))
}

fn conic_plus_line(seed: u64) -> Result<PointConfig, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..NAMED_RETRY_BUDGET {
        let mut ts: Vec<i64> = Vec::new();
        while ts.len() < 7 {
            let t = rng.gen_range(-12..=12);
            if !ts.contains(&t) {
                ts.push(t);
            }
        }
        let mut pts: Vec<ProjPoint> = ts
            .iter()
            .map(|&t| ProjPoint::new(1, t, t * t))
            .collect::<Result<_, _>>()?;
        for _ in 0..2 {
            let (mu, lambda) = small_rational(&mut rng);
            let p = pts[0].combine(&lambda, &pts[1], &mu)?;
            pts.push(p);
        }
        let Ok(z) = PointConfig::new("example-5-2", Some(seed), pts) else {
            continue;
        };
        let rep = position_report(&z);
        let ok = rep.collinear.len() == 1
            && rep.collinear[0].len() == 4
            && rep.coconic.len() == 1
            && rep.coconic[0].len() == 7
            && rep.collinear[0].iter().filter(|i| rep.coconic[0].contains(i)).count() == 2;
        if ok {
            return Ok(z);
        }
    }
    Err(GeometryError::RetryBudget(NAMED_RETRY_BUDGET))
}

/// Second intersection of the conic `q` with the line through `base` in direction `w`.
fn second_intersection(q: &HPoly, base: &ProjPoint, w: &ProjPoint) -> Option<ProjPoint> {
    let qw = q.eval(&w.rational_coords()).ok()?;
    // Q(base) = 0, so Q(base + w) - Q(w) is twice the polar form B(base, w).
    let raw_sum: [BigInt; 3] = [0, 1, 2].map(|i| &base.coords()[i] + &w.coords()[i]);
    let qsum_raw = q
        .eval(&raw_sum.map(|c| Field::Rational.from_bigint(&c)))
        .ok()?;
    let two_b = qsum_raw.checked_sub(&qw).ok()?;
    let to_int = |s: &Scalar| s.as_rational().map(|r| r.to_integer());
    let (qw, two_b) = (to_int(&qw)?, to_int(&two_b)?);
    let c = [0, 1, 2].map(|i| &qw * &base.coords()[i] - &two_b * &w.coords()[i]);
    ProjPoint::from_bigints(c).ok()
}

/// Up to `count` rational points on a line or conic, distinct from `avoid_points`
/// and off every curve in `avoid_curves`.
///
/// `anchors` must contain one point of the curve (two for a line).
pub fn rational_points_on<R: Rng>(
    curve: &PlaneCurve,
    anchors: &[ProjPoint],
    count: usize,
    rng: &mut R,
    avoid_points: &[ProjPoint],
    avoid_curves: &[&PlaneCurve],
) -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 200 * count.max(1) {
        tries += 1;
        let cand = match curve.degree {
            1 if anchors.len() >= 2 => {
                let (mu, lambda) = small_rational(rng);
                anchors[0].combine(&lambda, &anchors[1], &mu).ok()
            }
            2 if !anchors.is_empty() => {
                let c = [0; 3].map(|_| rng.gen_range(-9..=9i64));
                ProjPoint::new(c[0], c[1], c[2])
                    .ok()
                    .and_then(|w| second_intersection(&curve.poly, &anchors[0], &w))
            }
            _ => None,
        };
        let Some(p) = cand else { continue };
        if !curve.contains(&p)
            || anchors.contains(&p)
            || avoid_points.contains(&p)
            || out.contains(&p)
            || avoid_curves.iter().any(|c| c.contains(&p))
        {
            continue;
        }
        out.push(p);
    }
    out
}

fn is_smooth_conic(q: &HPoly) -> bool {
    // Hessian of a quadratic form is constant.
    let h: Vec<Vec<Scalar>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let d = q.diff(i).diff(j);
                    d.terms().first().map(|t| t.1.clone()).unwrap_or_else(|| Field::Rational.zero())
                })
                .collect()
        })
        .collect();
    FieldMatrix::from_rows(h, Field::Rational)
        .and_then(|m| m.determinant())
        .map(|d| !d.is_zero())
        .unwrap_or(false)
}

fn two_conics(d: u32, seed: u64) -> Result<PointConfig, GeometryError> {
    if d < 2 {
        return Err(GeometryError::BadParameter("two-conics needs d >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let label = format!("two-conics({d})");
    'attempt: for _ in 0..NAMED_RETRY_BUDGET {
        let mut base: Vec<ProjPoint> = Vec::new();
        while base.len() < 4 {
            let c = [0; 3].map(|_| rng.gen_range(-6..=6i64));
            let Ok(p) = ProjPoint::new(c[0], c[1], c[2]) else { continue };
            if base.contains(&p) || base.iter().tuple_combinations().any(|(a, b)| collinear(a, b, &p)) {
                continue;
            }
            base.push(p);
        }
        let l = |i: usize, j: usize| rational_linear(base[i].cross(&base[j]));
        let q1 = l(0, 1).mul(&l(2, 3))?;
        let q2 = l(0, 2).mul(&l(1, 3))?;
        let lambda1 = rng.gen_range(1..=7i64);
        let lambda2 = -rng.gen_range(1..=7i64);
        let c1 = q1.add(&q2.scale(&Field::Rational.from_i64(lambda1))?)?;
        let c2 = q1.add(&q2.scale(&Field::Rational.from_i64(lambda2))?)?;
        if !is_smooth_conic(&c1) || !is_smooth_conic(&c2) {
            continue;
        }
        let curve1 = PlaneCurve::new(c1, "conic");
        let curve2 = PlaneCurve::new(c2, "conic");
        let extra1 = rational_points_on(&curve1, &base[..1], (d - 1) as usize, &mut rng, &base, &[&curve2]);
        let extra2 = rational_points_on(&curve2, &base[..1], (d - 2) as usize, &mut rng, &base, &[&curve1]);
        if extra1.len() != (d - 1) as usize || extra2.len() != (d - 2) as usize {
            continue;
        }
        let mut pts = base.clone();
        pts.extend(extra1);
        pts.extend(extra2);
        let Ok(z) = PointConfig::new(label.clone(), Some(seed), pts) else {
            continue;
        };
        let rep = position_report(&z);
        if !rep.collinear.is_empty() {
            continue;
        }
        let on1 = curve1.clone().with_support(z.points()).support;
        let on2 = curve2.clone().with_support(z.points()).support;
        if on1.len() != (d + 3) as usize || on2.len() != (d + 2) as usize {
            continue;
        }
        let mut expected: Vec<&Vec<usize>> = [&on1, &on2].into_iter().filter(|s| s.len() >= 6).collect();
        expected.sort();
        let mut seen: Vec<&Vec<usize>> = rep.coconic.iter().collect();
        seen.sort();
        if seen != expected {
            continue 'attempt;
        }
        return Ok(z);
    }
    Err(GeometryError::RetryBudget(NAMED_RETRY_BUDGET))
}

/// A candidate fixed component together with its feasibility verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub curve: PlaneCurve,
    pub feasible: bool,
}

/// Lines through at least two points (one per maximal collinear subset) and
/// conics through at least five points with no three collinear. Curves of
/// degree three or more are never candidates.
pub fn candidate_components(z: &PointConfig, d: u32, m: u32) -> Vec<Candidate> {
    let pts = z.points();
    let collinear_sets = maximal_collinear(pts);
    let mut curves: Vec<PlaneCurve> = Vec::new();
    for (i, j) in (0..pts.len()).tuple_combinations() {
        if curves.iter().any(|c| c.support.contains(&i) && c.support.contains(&j)) {
            continue;
        }
        let line = line_through(&pts[i], &pts[j]).expect("distinct points").with_support(pts);
        curves.push(line);
    }
    for (conic, _) in irreducible_conics(pts, &collinear_sets) {
        if !curves.iter().any(|c| c.poly == conic.poly) {
            curves.push(conic);
        }
    }
    curves
        .into_iter()
        .map(|curve| {
            let feasible = feasibility_check(curve.degree, d, curve.support.len() as u32, m);
            Candidate { curve, feasible }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::new(x, y, z).unwrap()
    }

    fn lin(c: [i64; 3]) -> HPoly {
        rational_linear(c.map(BigInt::from)).canonicalize()
    }

    #[test]
    fn normalization_is_scale_invariant() {
        assert_eq!(p(2, -4, 6), p(-1, 2, -3));
        assert_eq!(p(0, -3, 0).coords()[1], BigInt::from(1));
        let half = BigRational::new(1.into(), 2.into());
        let r = ProjPoint::from_rationals(&[half.clone(), half, BigRational::from_integer(1.into())]).unwrap();
        assert_eq!(r, p(1, 1, 2));
        assert!(ProjPoint::new(0, 0, 0).is_err());
    }

    #[test]
    fn line_examples() {
        assert_eq!(line_through(&p(1, 0, 0), &p(0, 1, 0)).unwrap().poly, lin([0, 0, 1]));
        assert_eq!(line_through(&p(1, 0, 0), &p(0, 0, 1)).unwrap().poly, lin([0, 1, 0]));
        assert_eq!(line_through(&p(1, 1, 1), &p(1, 2, 4)).unwrap().poly, lin([2, -3, 1]));
        assert!(line_through(&p(1, 1, 1), &p(2, 2, 2)).is_err());
        let l = line_through(&p(3, 1, 4), &p(1, 5, 9)).unwrap();
        assert_eq!(l, line_through(&p(1, 5, 9), &p(3, 1, 4)).unwrap());
        assert!(l.contains(&p(3, 1, 4)) && l.contains(&p(1, 5, 9)));
    }

    #[test]
    fn conic_examples() {
        let a = |i| HPoly::var(VarSet::A, Field::Rational, i);
        let target = a(1).pow(2).unwrap().sub(&a(0).mul(&a(2)).unwrap()).unwrap().canonicalize();
        let five = [p(1, 0, 0), p(0, 0, 1), p(1, 1, 1), p(1, 2, 4), p(4, 2, 1)];
        assert_eq!(conic_through(&five).unwrap().poly, target);
        let mut six = five.to_vec();
        six.push(p(1, 3, 9));
        assert_eq!(conic_through(&six).unwrap().poly, target);
        let four_collinear = [p(1, 0, 0), p(0, 1, 0), p(1, 1, 0), p(1, 2, 0), p(0, 0, 1)];
        assert!(matches!(conic_through(&four_collinear), Err(GeometryError::DegenerateConic(_))));
        let mut off = five.to_vec();
        off.push(p(1, 1, 2));
        assert!(matches!(conic_through(&off), Err(GeometryError::NoConic)));
    }

    #[test]
    fn position_examples() {
        let z = PointConfig::from_i64("t", &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]]).unwrap();
        assert!(position_report(&z).general_position);
        let c = named_config("collinear3", NamedParams::default()).unwrap();
        let rep = position_report(&c);
        assert_eq!(rep.collinear, vec![vec![0, 1, 2]]);
        assert!(!rep.general_position);
    }

    #[test]
    fn random_configs_are_reproducible_and_general() {
        let a = random_config(5, 1, 50).unwrap();
        assert_eq!(a, random_config(5, 1, 50).unwrap());
        assert!(position_report(&a).general_position);
        let b = random_config(9, 7, 100).unwrap();
        assert_eq!(b.len(), 9);
        assert!(position_report(&b).general_position);
        assert_eq!(random_config(2, 0, 10).unwrap().len(), 2);
        assert!(random_config(5, 0, 3).is_err());
    }

    #[test]
    fn named_examples() {
        let t = named_config("triangle", NamedParams::default()).unwrap();
        assert_eq!(t.points(), &[p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)]);
        assert!(matches!(named_config("nope", NamedParams::default()), Err(GeometryError::UnknownName(_))));

        let z = named_config("example-5-2", NamedParams { seed: Some(3), d: None }).unwrap();
        assert_eq!(z.len(), 9);
        let rep = position_report(&z);
        assert_eq!(rep.collinear.len(), 1);
        assert_eq!(rep.collinear[0].len(), 4);
        assert_eq!(rep.coconic.len(), 1);
        assert_eq!(rep.coconic[0].len(), 7);

        let tc = named_config("two-conics(4)", NamedParams { seed: Some(1), d: None }).unwrap();
        assert_eq!(tc.len(), 9);
        let mut sizes: Vec<usize> = position_report(&tc).coconic.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![6, 7]);
    }

    #[test]
    fn candidates_for_small_configs() {
        let t = named_config("triangle", NamedParams::default()).unwrap();
        let c = candidate_components(&t, 2, 2);
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|c| c.curve.degree == 1 && c.curve.support.len() == 2));

        let four = random_config(4, 2, 20).unwrap();
        let c = candidate_components(&four, 3, 3);
        assert_eq!(c.len(), 6);

        let z = named_config("example-5-2", NamedParams { seed: Some(3), d: None }).unwrap();
        let c = candidate_components(&z, 4, 3);
        let big_line = c.iter().filter(|c| c.curve.degree == 1 && c.curve.support.len() == 4).count();
        let big_conic = c.iter().filter(|c| c.curve.degree == 2 && c.curve.support.len() == 7).count();
        assert_eq!((big_line, big_conic), (1, 1));
        // 9 points, one 4-point line: 36 pairs - 6 covered + 1 line
        assert_eq!(c.iter().filter(|c| c.curve.degree == 1).count(), 31);
    }

    #[test]
    fn points_on_curves() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let five = [p(1, 0, 0), p(0, 0, 1), p(1, 1, 1), p(1, 2, 4), p(4, 2, 1)];
        let conic = conic_through(&five).unwrap();
        let pts = rational_points_on(&conic, &five[..1], 5, &mut rng, &five, &[]);
        assert_eq!(pts.len(), 5);
        assert!(pts.iter().all(|q| conic.contains(q) && !five.contains(q)));
        let line = line_through(&five[0], &five[1]).unwrap();
        let pts = rational_points_on(&line, &five[..2], 3, &mut rng, &five, &[&conic]);
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|q| line.contains(q) && !conic.contains(q)));
    }
}
