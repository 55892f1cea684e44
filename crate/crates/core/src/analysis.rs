//! Fixed components of the determinant curve, residual factors, numeric lower
//! bounds on the interpolation defect, and an irreducibility probe.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{
    is_prime, restrict_to_line, AlgError, Field, HPoly, Monomial3, PolyJson, Scalar, UniPolyModP, VarSet,
};
use crate::geometry::{candidate_components, rational_points_on, GeometryError, PlaneCurve, PointConfig, ProjPoint};
use crate::interp::{system_dimension, Determinant, InterpError, InterpProblem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("point {0} belongs to the configuration")]
    PointInConfig(String),
    #[error("expected jumping degree needs an odd number of points, got {0}")]
    EvenCount(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Interp(#[from] InterpError),
}

/// `(t^2 - 3t) / 2`, always an integer.
fn half_t_term(t: u32) -> i64 {
    let t = t as i64;
    (t * t - 3 * t) / 2
}

/// Lower bound for the defect `h_{j,B}` at a point `B` on a degree-`t` curve
/// through `n_c` points, clamped at zero.
pub fn h_bound(t: u32, d: u32, n_c: u32, j: u32) -> u32 {
    let v = n_c as i64 + j as i64 - (t as i64) * (d as i64) + half_t_term(t);
    v.max(0) as u32
}

pub fn j_min(t: u32, d: u32, n_c: u32) -> u32 {
    let v = (t as i64) * (d as i64) - n_c as i64 - half_t_term(t) + 1;
    v.max(t as i64) as u32
}

pub fn predicted_multiplicity(t: u32, d: u32, m: u32, n_c: u32) -> u32 {
    (t..=m).map(|j| h_bound(t, d, n_c, j)).sum()
}

pub fn feasibility_check(t: u32, d: u32, n_c: u32, m: u32) -> bool {
    let need = (t as i64 - 1) * d as i64 - half_t_term(t) + 2;
    n_c as i64 >= need && m >= j_min(t, d, n_c)
}

/// Degree of the jumping curve for `n = 2d + 1` points in general position.
pub fn expected_jumping_degree(n: usize) -> Result<u32, AnalysisError> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(AnalysisError::EvenCount(n));
    }
    let d = ((n - 1) / 2) as i64;
    let nodes = (n * (n - 1) / 2) as i64;
    Ok((3 * d * d - nodes) as u32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentFinding {
    pub curve: PlaneCurve,
    pub observed_multiplicity: u32,
    pub predicted_multiplicity: u32,
}

impl ComponentFinding {
    pub fn violates_prediction(&self) -> bool {
        self.observed_multiplicity < self.predicted_multiplicity
    }
}

/// Largest `k` with `g^k | f`.
fn divisibility_order(f: &HPoly, g: &HPoly) -> Result<(u32, HPoly), AlgError> {
    let mut k = 0;
    let mut rest = f.clone();
    while rest.degree() >= g.degree() {
        match rest.exact_divide(g)? {
            Some(q) => {
                k += 1;
                rest = q;
            }
            None => break,
        }
    }
    Ok((k, rest))
}

/// Candidates dividing `f`, with multiplicities. `d` and `m` only feed the
/// predicted multiplicity.
pub fn detect_fixed_components(
    f: &HPoly,
    candidates: &[PlaneCurve],
    d: u32,
    m: u32,
) -> Result<Vec<ComponentFinding>, AnalysisError> {
    if f.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    let mut unique: Vec<&PlaneCurve> = Vec::new();
    for c in candidates {
        if !unique.iter().any(|u| u.poly == c.poly) {
            unique.push(c);
        }
    }
    let mut found = unique
        .par_iter()
        .map(|c| {
            let (k, _) = divisibility_order(f, &c.poly)?;
            Ok((k > 0).then(|| ComponentFinding {
                curve: (*c).clone(),
                observed_multiplicity: k,
                predicted_multiplicity: predicted_multiplicity(c.degree, d, m, c.support.len() as u32),
            }))
        })
        .collect::<Result<Vec<_>, AlgError>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    found.sort_by(|a, b| {
        (a.curve.degree, &a.curve.poly.terms().iter().map(|(m, c)| (*m, c.to_decimal_string())).collect::<Vec<_>>())
            .cmp(&(b.curve.degree, &b.curve.poly.terms().iter().map(|(m, c)| (*m, c.to_decimal_string())).collect::<Vec<_>>()))
    });
    Ok(found)
}

/// `f` divided by every component to its multiplicity, canonicalized.
pub fn residual(f: &HPoly, findings: &[ComponentFinding]) -> Result<HPoly, AnalysisError> {
    let mut rest = f.clone();
    for c in findings {
        for _ in 0..c.observed_multiplicity {
            rest = rest
                .exact_divide(&c.curve.poly)?
                .ok_or_else(|| AnalysisError::Invariant(format!("{} does not divide the residual", c.curve.poly)))?;
        }
    }
    Ok(rest.canonicalize())
}

/// Smallest order of a partial derivative of `f` that is nonzero at `q`.
pub fn multiplicity_at_point(f: &HPoly, q: &ProjPoint) -> Result<u32, AnalysisError> {
    if f.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    let c = q.coords_in(f.field())?;
    for k in 0..=f.degree() {
        for alpha in Monomial3::all_of_degree(k) {
            if !f.diff_multi(alpha.0).eval(&c)?.is_zero() {
                return Ok(k);
            }
        }
    }
    Ok(f.degree())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HBoundRow {
    pub j: u32,
    pub dimension: usize,
    pub expected_dimension: usize,
    pub actual: usize,
    /// Lower bound, present for `j >= t`.
    pub bound: Option<u32>,
    pub violation: bool,
}

/// Defects `h_{j,B}` for `j` in `js`, compared with [`h_bound`]. Only rows
/// with `j >= j_min` are checked for violations.
pub fn verify_h_bounds(
    z: &PointConfig,
    d: u32,
    curve: &PlaneCurve,
    b: &ProjPoint,
    js: impl IntoIterator<Item = u32>,
) -> Result<Vec<HBoundRow>, AnalysisError> {
    if !curve.contains(b) {
        return Err(AnalysisError::NotOnCurve(b.to_string()));
    }
    if z.points().contains(b) {
        return Err(AnalysisError::PointInConfig(b.to_string()));
    }
    let n_c = curve.clone().with_support(z.points()).support.len() as u32;
    let t = curve.degree;
    let jm = j_min(t, d, n_c);
    let forms = (d as usize + 2) * (d as usize + 1) / 2;
    js.into_iter()
        .map(|j| {
            let dimension = system_dimension(d, &[(b.clone(), j)], z.points())?;
            let conditions = z.len() + (j as usize + 1) * j as usize / 2;
            let expected_dimension = forms.saturating_sub(conditions);
            let actual = dimension - expected_dimension;
            let bound = (j >= t).then(|| h_bound(t, d, n_c, j));
            let violation = j >= jm && bound.is_some_and(|h| (actual as u32) < h);
            Ok(HBoundRow {
                j,
                dimension,
                expected_dimension,
                actual,
                bound,
                violation,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Irreducible,
    Reducible,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePattern {
    pub p: u64,
    pub degrees: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    pub verdict: Verdict,
    /// Factor-degree multisets of the restrictions, one per usable prime.
    pub patterns: Vec<PrimePattern>,
    /// Degrees in `1..deg` a rational factor could still have.
    pub possible_factor_degrees: Vec<u32>,
    /// An exact proper factor when one was found.
    pub factor: Option<HPoly>,
    pub lines_tried: u32,
}

const PROBE_LINES: u32 = 4;

fn random_prime<R: Rng>(rng: &mut R) -> u64 {
    loop {
        let p = rng.gen_range((1u64 << 19)..(1u64 << 20)) | 1;
        if is_prime(p) {
            return p;
        }
    }
}

fn subset_sums(degrees: &[u32], total: u32) -> BTreeSet<u32> {
    let mut reach = vec![false; total as usize + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d as usize..=total as usize).rev() {
            if reach[s - d as usize] {
                reach[s] = true;
            }
        }
    }
    (1..total).filter(|&s| reach[s as usize]).collect()
}

fn residues(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    coeffs
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            r.try_into().expect("residue fits")
        })
        .collect()
}

fn eval_int(coeffs: &[BigInt], x: &BigInt, modulus: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(modulus))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Rational roots of an integer polynomial (ascending coefficients) that is
/// squarefree modulo `p` with `p` not dividing the leading coefficient.
fn rational_roots<R: Rng>(coeffs: &[BigInt], p: u64, rng: &mut R) -> Vec<BigRational> {
    let lc = coeffs.last().expect("nonempty").clone();
    let height = coeffs.iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = (lc.abs() + height) * 2 + 1;
    let deriv: Vec<BigInt> = coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k).collect();
    let modp = UniPolyModP::from_residues(p, residues(coeffs, p));
    let mut out = Vec::new();
    for r0 in modp.roots(rng) {
        let mut modulus = BigInt::from(p);
        let mut r = BigInt::from(r0);
        while modulus <= bound {
            modulus = &modulus * &modulus;
            let Some(inv) = mod_inverse(&eval_int(&deriv, &r, &modulus), &modulus) else {
                break;
            };
            r = (&r - eval_int(coeffs, &r, &modulus) * inv).mod_floor(&modulus);
        }
        let mut c = (&lc * &r).mod_floor(&modulus);
        if c > &modulus / 2 {
            c -= &modulus;
        }
        let cand = BigRational::new(c, lc.clone());
        let value = coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, k| acc * &cand + BigRational::from_integer(k.clone()));
        if value.is_zero() && !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

struct Restriction {
    u: [BigInt; 3],
    v: [BigInt; 3],
    coeffs: Vec<BigInt>,
}

fn random_restriction<R: Rng>(f: &HPoly, rng: &mut R) -> Result<Option<Restriction>, AlgError> {
    for _ in 0..64 {
        let u = [0; 3].map(|_| BigInt::from(rng.gen_range(-30..=30i64)));
        let v = [0; 3].map(|_| BigInt::from(rng.gen_range(-30..=30i64)));
        let q = |c: &[BigInt; 3]| c.clone().map(|x| Field::Rational.from_bigint(&x));
        let g = restrict_to_line(f, &q(&u), &q(&v))?;
        if g.coeffs.last().is_some_and(Scalar::is_zero) {
            continue;
        }
        let coeffs = g
            .coeffs
            .iter()
            .map(|c| c.as_rational().map(|r| r.to_integer()))
            .collect::<Option<Vec<_>>>()
            .ok_or(AlgError::Shape)?;
        return Ok(Some(Restriction { u, v, coeffs }));
    }
    Ok(None)
}

fn point_on(r: &Restriction, s: &BigRational) -> Option<ProjPoint> {
    let c = [0, 1, 2].map(|i| s * BigRational::from_integer(r.u[i].clone()) + BigRational::from_integer(r.v[i].clone()));
    ProjPoint::from_rationals(&c).ok()
}

/// Looks for an exact linear factor through rational points of `f` on two lines.
fn find_linear_factor<R: Rng>(f: &HPoly, first: &Restriction, p: u64, rng: &mut R) -> Result<Option<HPoly>, AlgError> {
    let pts_a: Vec<ProjPoint> = rational_roots(&first.coeffs, p, rng).iter().filter_map(|s| point_on(first, s)).collect();
    if pts_a.is_empty() {
        return Ok(None);
    }
    for _ in 0..4 {
        let Some(second) = random_restriction(f, rng)? else { continue };
        let lc = second.coeffs.last().expect("nonempty");
        let Some(q) = (0..20).map(|_| random_prime(rng)).find(|&q| {
            !(lc % BigInt::from(q)).is_zero()
                && UniPolyModP::from_residues(q, residues(&second.coeffs, q)).is_squarefree()
        }) else {
            continue;
        };
        let pts_b: Vec<ProjPoint> = rational_roots(&second.coeffs, q, rng).iter().filter_map(|s| point_on(&second, s)).collect();
        for a in &pts_a {
            for b in &pts_b {
                if a == b {
                    continue;
                }
                let c = a.cross(b).map(|x| Field::Rational.from_bigint(&x));
                let line = HPoly::linear(VarSet::A, c).canonicalize();
                if f.exact_divide(&line)?.is_some() {
                    return Ok(Some(line));
                }
            }
        }
        return Ok(None);
    }
    Ok(None)
}

/// Probes whether `f` factors over the rationals.
///
/// `f` is restricted to random lines; factor degrees of the restriction modulo
/// random 20-bit primes bound the degrees any rational factor can have. When
/// no proper degree survives the verdict is irreducible. Otherwise linear
/// factors and the `extra` candidates are tried by exact division.
pub fn irreducibility_probe(f: &HPoly, n_primes: usize, seed: u64, extra: &[HPoly]) -> Result<ProbeResult, AnalysisError> {
    if f.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    let deg = f.degree();
    if deg == 0 {
        return Err(AnalysisError::ConstantPolynomial);
    }
    let f = f.canonicalize();
    let mut result = ProbeResult {
        verdict: Verdict::Inconclusive,
        patterns: Vec::new(),
        possible_factor_degrees: (1..deg).collect(),
        factor: None,
        lines_tried: 0,
    };
    if deg == 1 {
        result.verdict = Verdict::Irreducible;
        return Ok(result);
    }
    for g in extra {
        if g.degree() >= 1 && g.degree() < deg && f.exact_divide(g)?.is_some() {
            result.verdict = Verdict::Reducible;
            result.factor = Some(g.canonicalize());
            return Ok(result);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut possible: BTreeSet<u32> = (1..deg).collect();
    let mut tried_linear = false;
    for _ in 0..PROBE_LINES {
        result.lines_tried += 1;
        let Some(r) = random_restriction(&f, &mut rng)? else { continue };
        let lc = r.coeffs.last().expect("nonempty").clone();
        let mut good_prime = None;
        let mut found = 0;
        for _ in 0..20 * n_primes.max(1) {
            if found == n_primes {
                break;
            }
            let p = random_prime(&mut rng);
            if (&lc % BigInt::from(p)).is_zero() {
                continue;
            }
            let poly = UniPolyModP::from_residues(p, residues(&r.coeffs, p));
            let Ok(degrees) = poly.factor_degrees() else { continue };
            possible = possible.intersection(&subset_sums(&degrees, deg)).copied().collect();
            result.patterns.push(PrimePattern { p, degrees });
            good_prime.get_or_insert(p);
            found += 1;
        }
        if possible.is_empty() {
            result.verdict = Verdict::Irreducible;
            result.possible_factor_degrees.clear();
            return Ok(result);
        }
        if let (Some(p), false) = (good_prime, tried_linear) {
            if possible.contains(&1) {
                tried_linear = true;
                if let Some(line) = find_linear_factor(&f, &r, p, &mut rng)? {
                    result.verdict = Verdict::Reducible;
                    result.factor = Some(line);
                    result.possible_factor_degrees = possible.into_iter().collect();
                    return Ok(result);
                }
            }
        }
    }
    result.possible_factor_degrees = possible.into_iter().collect();
    Ok(result)
}

/// Options for [`analyze`].
#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub n_primes: usize,
    pub seed: u64,
    /// Compute a defect table at one rational point of each component.
    pub h_tables: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            n_primes: 8,
            seed: 0,
            h_tables: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTable {
    pub component: usize,
    pub point: ProjPoint,
    pub rows: Vec<HBoundRow>,
    pub h_sum: usize,
    pub multiplicity_at_point: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub f_degree: u32,
    pub f_is_zero: bool,
    pub findings: Vec<ComponentFinding>,
    pub residual: HPoly,
    pub irreducibility: Verdict,
    pub residual_probe: Option<ProbeResult>,
    pub h_tables: Vec<HTable>,
    pub d: u32,
    pub m: u32,
    pub n: usize,
    pub label: String,
    pub seed: Option<u64>,
}

impl FactorizationReport {
    pub fn violations(&self) -> Vec<usize> {
        (0..self.findings.len()).filter(|&i| self.findings[i].violates_prediction()).collect()
    }

    /// Product of the components to their multiplicities times the residual.
    pub fn reassemble(&self) -> Result<HPoly, AnalysisError> {
        let mut acc = self.residual.clone();
        for c in &self.findings {
            acc = acc.mul(&c.curve.poly.pow(c.observed_multiplicity)?)?;
        }
        Ok(acc.canonicalize())
    }

    pub fn to_json(&self) -> FactorizationJson {
        FactorizationJson {
            f_degree: self.f_degree,
            f_is_zero: self.f_is_zero,
            components: self
                .findings
                .iter()
                .map(|c| ComponentJson {
                    curve: PolyJson::from(&c.curve.poly),
                    label: c.curve.label.clone(),
                    degree: c.curve.degree,
                    support: c.curve.support.clone(),
                    observed_mult: c.observed_multiplicity,
                    predicted_mult: c.predicted_multiplicity,
                })
                .collect(),
            residual: PolyJson::from(&self.residual),
            residual_degree: self.residual.degree(),
            irreducibility: self.irreducibility,
            residual_probe: self.residual_probe.as_ref().map(|p| ProbeJson {
                verdict: p.verdict,
                patterns: p.patterns.clone(),
                possible_factor_degrees: p.possible_factor_degrees.clone(),
            }),
            h_tables: self
                .h_tables
                .iter()
                .map(|t| HTableJson {
                    component: t.component,
                    point: t.point.to_strings(),
                    rows: t.rows.clone(),
                    h_sum: t.h_sum,
                    multiplicity_at_point: t.multiplicity_at_point,
                })
                .collect(),
            violations: self.violations(),
            params: ParamsJson {
                d: self.d,
                m: self.m,
                n: self.n,
            },
            label: self.label.clone(),
            seed: self.seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub curve: PolyJson,
    pub label: String,
    pub degree: u32,
    pub support: Vec<usize>,
    pub observed_mult: u32,
    pub predicted_mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeJson {
    pub verdict: Verdict,
    pub patterns: Vec<PrimePattern>,
    pub possible_factor_degrees: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HTableJson {
    pub component: usize,
    pub point: [String; 3],
    pub rows: Vec<HBoundRow>,
    pub h_sum: usize,
    pub multiplicity_at_point: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub d: u32,
    pub m: u32,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationJson {
    #[serde(rename = "F_degree")]
    pub f_degree: u32,
    #[serde(rename = "F_is_zero")]
    pub f_is_zero: bool,
    pub components: Vec<ComponentJson>,
    pub residual: PolyJson,
    pub residual_degree: u32,
    pub irreducibility: Verdict,
    pub residual_probe: Option<ProbeJson>,
    pub h_tables: Vec<HTableJson>,
    pub violations: Vec<usize>,
    pub params: ParamsJson,
    pub label: String,
    pub seed: Option<u64>,
}

/// Rational points on a component, off the configuration and off `avoid`.
pub fn sample_points_on_component<R: Rng>(
    curve: &PlaneCurve,
    z: &PointConfig,
    avoid: &[&PlaneCurve],
    count: usize,
    rng: &mut R,
) -> Vec<ProjPoint> {
    let anchors: Vec<ProjPoint> = curve.support.iter().map(|&i| z.points()[i].clone()).collect();
    rational_points_on(curve, &anchors, count, rng, z.points(), avoid)
}

pub fn h_table(
    z: &PointConfig,
    d: u32,
    f: &HPoly,
    component: usize,
    curve: &PlaneCurve,
    b: &ProjPoint,
) -> Result<HTable, AnalysisError> {
    let rows = verify_h_bounds(z, d, curve, b, 1..=d)?;
    Ok(HTable {
        component,
        point: b.clone(),
        h_sum: rows.iter().map(|r| r.actual).sum(),
        rows,
        multiplicity_at_point: multiplicity_at_point(f, b)?,
    })
}

/// Full factorization report for a computed determinant.
pub fn analyze(p: &InterpProblem, det: &Determinant, opts: &AnalyzeOptions) -> Result<FactorizationReport, AnalysisError> {
    let f = &det.canonical;
    let mut report = FactorizationReport {
        f_degree: det.expected_degree,
        f_is_zero: f.is_zero(),
        findings: Vec::new(),
        residual: f.clone(),
        irreducibility: Verdict::Inconclusive,
        residual_probe: None,
        h_tables: Vec::new(),
        d: p.d,
        m: p.m,
        n: p.z.len(),
        label: p.z.label.clone(),
        seed: p.z.seed,
    };
    if f.is_zero() {
        return Ok(report);
    }
    let candidates: Vec<PlaneCurve> = candidate_components(&p.z, p.d, p.m).into_iter().map(|c| c.curve).collect();
    report.findings = detect_fixed_components(f, &candidates, p.d, p.m)?;
    report.residual = residual(f, &report.findings)?;
    let rdeg = report.residual.degree();
    if rdeg >= 1 {
        report.residual_probe = Some(irreducibility_probe(&report.residual, opts.n_primes, opts.seed, &[])?);
    }
    report.irreducibility = match report.findings.as_slice() {
        [] => report.residual_probe.as_ref().map_or(Verdict::Inconclusive, |r| r.verdict),
        [one] if one.observed_multiplicity == 1 && rdeg == 0 => Verdict::Irreducible,
        _ => Verdict::Reducible,
    };
    if opts.h_tables {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for (i, c) in report.findings.iter().enumerate() {
            let others: Vec<&PlaneCurve> = report
                .findings
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, o)| &o.curve)
                .collect();
            if let Some(b) = sample_points_on_component(&c.curve, &p.z, &others, 1, &mut rng).pop() {
                report.h_tables.push(h_table(&p.z, p.d, f, i, &c.curve, &b)?);
            }
        }
    }
    Ok(report)
}
