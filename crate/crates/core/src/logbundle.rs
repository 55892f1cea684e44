//! Splitting types of the derivation bundle of the dual line arrangement,
//! computed from minimal syzygies of the Jacobian partials restricted to
//! pencil lines, and the comparison against the determinant.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::exactalg::BinaryForm;
use crate::exactalg::{restrict_to_line, AlgError, Field, FieldMatrix, HPoly, Scalar, UniPolyModP, VarSet};
use crate::geometry::{GeometryError, PointConfig, ProjPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogError {
    #[error("all restricted partials vanish on the pencil of {0}")]
    DegenerateRestriction(String),
    #[error("all three binary forms are zero")]
    ZeroForms,
    #[error("point has zero coordinates in the active field")]
    ZeroPoint,
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Lines `P_i . a = 0` of the dual plane, their product and its partials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub forms: Vec<HPoly>,
    pub f: HPoly,
    pub partials: [HPoly; 3],
}

impl Arrangement {
    pub fn n(&self) -> usize {
        self.forms.len()
    }

    pub fn field(&self) -> Field {
        self.f.field()
    }

    /// `a0 f_0 + a1 f_1 + a2 f_2 == n f`.
    pub fn euler_holds(&self) -> bool {
        let field = self.field();
        let mut lhs = HPoly::zero(VarSet::A, field, self.f.degree());
        for (i, p) in self.partials.iter().enumerate() {
            let term = HPoly::var(VarSet::A, field, i).mul(p).expect("same field");
            lhs = lhs.add(&term).expect("homogeneous");
        }
        let rhs = self.f.scale(&field.from_i64(self.n() as i64)).expect("same field");
        lhs == rhs
    }
}

pub fn arrangement_of(z: &PointConfig) -> Result<Arrangement, LogError> {
    arrangement_in(z, Field::Rational)
}

pub fn arrangement_in(z: &PointConfig, field: Field) -> Result<Arrangement, LogError> {
    let forms = z
        .points()
        .iter()
        .map(|p| Ok(HPoly::linear(VarSet::A, p.coords_in(field)?)))
        .collect::<Result<Vec<_>, LogError>>()?;
    let mut f = HPoly::constant(VarSet::A, field.one());
    for l in &forms {
        f = f.mul(l)?;
    }
    let partials = [f.diff(0), f.diff(1), f.diff(2)];
    Ok(Arrangement { forms, f, partials })
}

/// How the two spanning vectors of the pencil `{a : B.a = 0}` are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PencilRule {
    /// Project the two standard basis vectors least aligned with `B`
    /// orthogonally to `B` (and to each other), without normalizing.
    #[default]
    GramSchmidt,
    /// Cross products of `B` with the two standard basis vectors other than
    /// the one where `|B_k|` is largest. Valid over every field.
    Rotated,
}

fn dot(a: &[Scalar; 3], b: &[Scalar; 3]) -> Result<Scalar, AlgError> {
    let mut acc = a[0].field().zero();
    for i in 0..3 {
        acc = acc.checked_add(&a[i].checked_mul(&b[i])?)?;
    }
    Ok(acc)
}

fn axpy(x: &[Scalar; 3], alpha: &Scalar, y: &[Scalar; 3], beta: &Scalar) -> Result<[Scalar; 3], AlgError> {
    let c = |i: usize| x[i].checked_mul(alpha)?.checked_add(&y[i].checked_mul(beta)?);
    Ok([c(0)?, c(1)?, c(2)?])
}

fn unit(field: Field, i: usize) -> [Scalar; 3] {
    let mut e = [field.zero(), field.zero(), field.zero()];
    e[i] = field.one();
    e
}

fn magnitude_order(b: &[Scalar; 3]) -> [usize; 3] {
    let mut idx = [0, 1, 2];
    idx.sort_by_key(|&i| {
        let r = b[i].as_rational().map(|r| r.abs()).unwrap_or_default();
        (r, i)
    });
    idx
}

/// Two independent vectors spanning `{a : B.a = 0}`.
pub fn pencil_basis(b: &[Scalar; 3], rule: PencilRule) -> Result<[[Scalar; 3]; 2], LogError> {
    let field = b[0].field();
    if b.iter().all(Scalar::is_zero) {
        return Err(LogError::ZeroPoint);
    }
    match (rule, field) {
        (PencilRule::GramSchmidt, Field::Rational) => {
            let order = magnitude_order(b);
            let bb = dot(b, b)?;
            let project = |e: &[Scalar; 3]| -> Result<[Scalar; 3], AlgError> { axpy(e, &bb, b, &dot(e, b)?.neg()) };
            let w1 = project(&unit(field, order[0]))?;
            let w2 = project(&unit(field, order[1]))?;
            let w2 = axpy(&w2, &dot(&w1, &w1)?, &w1, &dot(&w2, &w1)?.neg())?;
            Ok([w1, w2])
        }
        _ => {
            let k = match field {
                Field::Rational => magnitude_order(b)[2],
                Field::Prime(_) => (0..3).find(|&i| !b[i].is_zero()).expect("nonzero"),
            };
            let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
            let cross = |e: &[Scalar; 3]| -> Result<[Scalar; 3], AlgError> {
                let c = |i: usize, j: usize| b[i].checked_mul(&e[j])?.checked_sub(&b[j].checked_mul(&e[i])?);
                Ok([c(1, 2)?, c(2, 0)?, c(0, 1)?])
            };
            Ok([cross(&unit(field, others[0]))?, cross(&unit(field, others[1]))?])
        }
    }
}

/// The three partials of the arrangement restricted to the pencil of `B`.
pub fn restrict_to_pencil(a: &Arrangement, b: &[Scalar; 3], rule: PencilRule) -> Result<[BinaryForm; 3], LogError> {
    let [u, v] = pencil_basis(b, rule)?;
    let r = |g: &HPoly| restrict_to_line(g, &u, &v);
    Ok([r(&a.partials[0])?, r(&a.partials[1])?, r(&a.partials[2])?])
}

/// Dimension of the space of syzygies of degree `e`.
fn syzygy_space_dimension(g: &[BinaryForm; 3], e: u32) -> Result<usize, AlgError> {
    let field = g[0].field;
    let deg = g[0].degree as usize;
    let e = e as usize;
    let rows = e + deg + 1;
    let cols = 3 * (e + 1);
    let mut m = FieldMatrix::zeros(rows, cols, field)?;
    for (i, form) in g.iter().enumerate() {
        for k in 0..=e {
            for (c, coef) in form.coeffs.iter().enumerate() {
                if !coef.is_zero() {
                    m.set(k + c, i * (e + 1) + k, coef.clone())?;
                }
            }
        }
    }
    Ok(cols - m.rank())
}

/// Smallest `e` with a nonzero syzygy `a g1 + b g2 + c g3 = 0` of degree `e`.
pub fn min_syzygy_degree(g: &[BinaryForm; 3]) -> Result<u32, LogError> {
    if g.iter().all(BinaryForm::is_zero) {
        return Err(LogError::ZeroForms);
    }
    if g.iter().any(|f| f.degree != g[0].degree || f.field != g[0].field) {
        return Err(AlgError::Shape.into());
    }
    for e in 0..=g[0].degree {
        if syzygy_space_dimension(g, e)? > 0 {
            return Ok(e);
        }
    }
    unreachable!("three forms of degree D always have a syzygy of degree <= D")
}

/// Degrees of both generators of the syzygy module, read off from the
/// dimension profile `dim_e = max(0, e-d1+1) + max(0, e-d2+1)`.
pub fn syzygy_degrees(g: &[BinaryForm; 3]) -> Result<(u32, u32), LogError> {
    let d1 = min_syzygy_degree(g)?;
    for e in d1..=g[0].degree {
        let first = (e - d1 + 1) as usize;
        if syzygy_space_dimension(g, e)? > first {
            return Ok((d1, e));
        }
    }
    Ok((d1, g[0].degree))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingType {
    pub d1: u32,
    pub d2: u32,
    pub jump_order: u32,
    /// `d1` came out above the generic value (jump order clamped to 0).
    pub above_generic: bool,
    /// Actual degree of the second syzygy generator of the restriction.
    pub d2_restricted: u32,
}

pub fn generic_d1(n: usize) -> u32 {
    ((n - 1) / 2) as u32
}

pub fn splitting_of(a: &Arrangement, b: &[Scalar; 3], rule: PencilRule) -> Result<SplittingType, LogError> {
    let g = restrict_to_pencil(a, b, rule)?;
    if g.iter().all(BinaryForm::is_zero) {
        let pt: Vec<String> = b.iter().map(Scalar::to_decimal_string).collect();
        return Err(LogError::DegenerateRestriction(pt.join(":")));
    }
    let (d1, d2_restricted) = syzygy_degrees(&g)?;
    let n = a.n();
    let generic = generic_d1(n);
    Ok(SplittingType {
        d1,
        d2: (n as u32 - 1) - d1,
        jump_order: generic.saturating_sub(d1),
        above_generic: d1 > generic,
        d2_restricted,
    })
}

pub fn splitting_and_jump(z: &PointConfig, b: &ProjPoint) -> Result<SplittingType, LogError> {
    let a = arrangement_of(z)?;
    splitting_of(&a, &b.rational_coords(), PencilRule::GramSchmidt)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossRecord {
    #[serde(rename = "B")]
    pub b: [String; 3],
    #[serde(rename = "F_is_zero")]
    pub f_is_zero: bool,
    pub d1: u32,
    pub d2: u32,
    pub jump: u32,
    pub agree: bool,
    pub d2_restricted: u32,
    /// Where the sample came from ("generic", "component 2", "F_p zero").
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossSummary {
    pub total: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub f_zero: usize,
    pub jumping: usize,
    pub field: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub records: Vec<CrossRecord>,
    pub summary: CrossSummary,
}

impl CrossCheckReport {
    pub fn disagreements(&self) -> impl Iterator<Item = &CrossRecord> {
        self.records.iter().filter(|r| !r.agree)
    }
}

/// A point to test, with a tag describing its origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub coords: [Scalar; 3],
    pub source: String,
}

impl Sample {
    pub fn rational(p: &ProjPoint, source: impl Into<String>) -> Self {
        Sample {
            coords: p.rational_coords(),
            source: source.into(),
        }
    }
}

/// Compares vanishing of `f` with a positive jump order at every sample.
/// Both sides are evaluated over the field of `f`.
pub fn cross_check(z: &PointConfig, f: &HPoly, samples: &[Sample], rule: PencilRule) -> Result<CrossCheckReport, LogError> {
    let field = f.field();
    let a = arrangement_in(z, field)?;
    let records = samples
        .par_iter()
        .map(|s| {
            let f_is_zero = f.eval(&s.coords)?.is_zero();
            let st = splitting_of(&a, &s.coords, rule)?;
            Ok(CrossRecord {
                b: s.coords.clone().map(|c| c.to_decimal_string()),
                f_is_zero,
                d1: st.d1,
                d2: st.d2,
                jump: st.jump_order,
                agree: f_is_zero == (st.jump_order >= 1),
                d2_restricted: st.d2_restricted,
                source: s.source.clone(),
            })
        })
        .collect::<Result<Vec<_>, LogError>>()?;
    let agreements = records.iter().filter(|r| r.agree).count();
    let summary = CrossSummary {
        total: records.len(),
        agreements,
        disagreements: records.len() - agreements,
        f_zero: records.iter().filter(|r| r.f_is_zero).count(),
        jumping: records.iter().filter(|r| r.jump >= 1).count(),
        field: field.to_string(),
    };
    Ok(CrossCheckReport { records, summary })
}

/// Random integer points with coordinates in `[-bound, bound]`.
pub fn generic_samples(count: usize, seed: u64, bound: i64) -> Vec<ProjPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = [0; 3].map(|_| rng.gen_range(-bound..=bound));
        if let Ok(p) = ProjPoint::new(c[0], c[1], c[2]) {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Points of `{f = 0}` over `F_p`, found as roots of restrictions of `f` to
/// random lines.
pub fn zeros_mod_p(f: &HPoly, count: usize, seed: u64) -> Result<Vec<[Scalar; 3]>, LogError> {
    let Field::Prime(p) = f.field() else {
        return Err(AlgError::FieldMismatch(f.field(), Field::Prime(0)).into());
    };
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<[Scalar; 3]> = Vec::new();
    let mut seen: Vec<[Scalar; 3]> = Vec::new();
    for _ in 0..50 * count.max(1) {
        if out.len() >= count {
            break;
        }
        let u = [0; 3].map(|_| field.from_i64(rng.gen_range(0..p as i64)));
        let v = [0; 3].map(|_| field.from_i64(rng.gen_range(0..p as i64)));
        let g = restrict_to_line(f, &u, &v)?;
        if g.is_zero() {
            continue;
        }
        let residues: Vec<u64> = g
            .coeffs
            .iter()
            .map(|c| match c {
                Scalar::ModP { value, .. } => *value,
                Scalar::Rational(_) => unreachable!("prime field"),
            })
            .collect();
        for s in UniPolyModP::from_residues(p, residues).roots(&mut rng) {
            let s = field.from_i64(s as i64);
            let pt = axpy(&u, &s, &v, &field.one())?;
            if pt.iter().all(Scalar::is_zero) {
                continue;
            }
            let normal = normalize_mod_p(&pt)?;
            if !seen.contains(&normal) && out.len() < count {
                seen.push(normal.clone());
                out.push(normal);
            }
        }
    }
    Ok(out)
}

/// Scales an `F_p` triple so that its first nonzero entry is 1.
fn normalize_mod_p(pt: &[Scalar; 3]) -> Result<[Scalar; 3], AlgError> {
    let lead = pt.iter().find(|c| !c.is_zero()).ok_or(AlgError::DivisionByZero)?.inv()?;
    Ok([pt[0].checked_mul(&lead)?, pt[1].checked_mul(&lead)?, pt[2].checked_mul(&lead)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Monomial3;
    use crate::geometry::random_config;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    fn bf(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64(Field::Rational, c).unwrap()
    }

    #[test]
    fn arrangement_examples() {
        let z = PointConfig::from_i64("t", &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let a = arrangement_of(&z).unwrap();
        let mono = |e| HPoly::monomial(VarSet::A, Monomial3(e), q(1));
        assert_eq!(a.f, mono([1, 1, 1]));
        assert_eq!(a.partials, [mono([0, 1, 1]), mono([1, 0, 1]), mono([1, 1, 0])]);
        assert!(a.euler_holds());
        let two = PointConfig::from_i64("t", &[[1, 0, 0], [0, 1, 0]]).unwrap();
        assert_eq!(arrangement_of(&two).unwrap().f, mono([1, 1, 0]));
        assert!(arrangement_of(&random_config(7, 3, 40).unwrap()).unwrap().euler_holds());
    }

    #[test]
    fn pencil_vectors_are_orthogonal_and_independent() {
        for b in [[1, 1, 1], [1, 0, 0], [3, -7, 2], [0, 5, 5]] {
            let b = b.map(q);
            for rule in [PencilRule::GramSchmidt, PencilRule::Rotated] {
                let [u, v] = pencil_basis(&b, rule).unwrap();
                assert!(dot(&u, &b).unwrap().is_zero() && dot(&v, &b).unwrap().is_zero());
                let rows = vec![u.to_vec(), v.to_vec()];
                assert_eq!(FieldMatrix::from_rows(rows, Field::Rational).unwrap().rank(), 2);
            }
        }
    }

    #[test]
    fn restriction_consistency() {
        let z = PointConfig::from_i64("t", &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let a = arrangement_of(&z).unwrap();
        let b = [q(1), q(1), q(1)];
        let g = restrict_to_pencil(&a, &b, PencilRule::GramSchmidt).unwrap();
        assert!(g.iter().all(|f| f.degree == 2));
        let [u, _] = pencil_basis(&b, PencilRule::GramSchmidt).unwrap();
        for i in 0..3 {
            assert_eq!(g[i].eval(&q(1), &q(0)).unwrap(), a.partials[i].eval(&u).unwrap());
        }
    }

    #[test]
    fn syzygy_examples() {
        assert_eq!(min_syzygy_degree(&[bf(&[0, 1]), bf(&[1, 0]), bf(&[0, 0])]).unwrap(), 0);
        assert_eq!(min_syzygy_degree(&[bf(&[0, 1]), bf(&[1, 0]), bf(&[1, 1])]).unwrap(), 0);
        assert!(min_syzygy_degree(&[bf(&[0, 0]), bf(&[0, 0]), bf(&[0, 0])]).is_err());
        // s^2, t^2, st: minimal syzygies have degree 1 twice
        assert_eq!(syzygy_degrees(&[bf(&[0, 0, 1]), bf(&[1, 0, 0]), bf(&[0, 1, 0])]).unwrap(), (1, 1));
        let z = PointConfig::from_i64("t", &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let st = splitting_and_jump(&z, &ProjPoint::new(1, 2, 3).unwrap()).unwrap();
        assert_eq!((st.d1, st.d2), (1, 1));
    }

    #[test]
    fn generic_splitting() {
        let z5 = random_config(5, 11, 40).unwrap();
        let st = splitting_and_jump(&z5, &ProjPoint::new(7, -3, 11).unwrap()).unwrap();
        assert_eq!((st.d1, st.d2, st.jump_order), (2, 2, 0));
        let z4 = random_config(4, 12, 40).unwrap();
        let st = splitting_and_jump(&z4, &ProjPoint::new(7, -3, 11).unwrap()).unwrap();
        assert_eq!((st.d1, st.d2, st.jump_order), (1, 2, 0));
    }

    #[test]
    fn rules_agree_on_splitting() {
        let z = random_config(6, 2, 40).unwrap();
        let a = arrangement_of(&z).unwrap();
        for b in generic_samples(5, 9, 30) {
            let c = b.rational_coords();
            let s1 = splitting_of(&a, &c, PencilRule::GramSchmidt).unwrap();
            let s2 = splitting_of(&a, &c, PencilRule::Rotated).unwrap();
            assert_eq!(s1, s2);
        }
    }

    #[test]
    fn zeros_mod_p_lie_on_curve() {
        let f = Field::prime(10_007).unwrap();
        let terms = vec![(Monomial3([2, 0, 0]), f.one()), (Monomial3([0, 1, 1]), f.from_i64(-1))];
        let g = HPoly::from_terms(VarSet::A, f, 2, terms).unwrap();
        let pts = zeros_mod_p(&g, 5, 1).unwrap();
        assert_eq!(pts.len(), 5);
        assert!(pts.iter().all(|p| g.eval(p).unwrap().is_zero()));
    }
}
