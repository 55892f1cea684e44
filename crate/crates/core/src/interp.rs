//! Interpolation matrices of a point configuration plus one fat point, their
//! specializations, and the determinant as a form in the fat-point coordinates.

use std::fmt;
use std::str::FromStr;

use num_integer::binomial;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{
    interpolate_homogeneous, AlgError, Field, FieldMatrix, GridSampler, HPoly, Monomial3, PolyJson, Scalar, VarSet,
};
use crate::geometry::{GeometryError, PointConfig, ProjPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InterpError {
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("no admissible (d, m) for {0} points: the parity rule gives m = 0; pass d and m explicitly")]
    NoParityChoice(usize),
    #[error("invalid parameters d = {d}, m = {m}: need 1 <= m <= d")]
    BadParameters { d: u32, m: u32 },
    #[error("interpolation matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub fn monomial_basis(d: u32) -> Vec<Monomial3> {
    Monomial3::all_of_degree(d)
}

fn num_forms(d: u32) -> usize {
    binomial(d as usize + 2, 2)
}

/// Number of partial derivatives of order `m - 1` in three variables.
fn num_derivative_rows(m: u32) -> usize {
    if m == 0 {
        0
    } else {
        binomial(m as usize + 1, 2)
    }
}

pub fn expected_degree(d: u32, m: u32) -> u32 {
    (num_derivative_rows(m) as u32) * (d + 1).saturating_sub(m)
}

/// Default `(d, m)` for `n` points and the resulting determinant degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityChoice {
    pub n: usize,
    pub d: u32,
    pub m: u32,
    pub expected_degree: u32,
}

pub fn parity_parameters(n: usize) -> Result<ParityChoice, InterpError> {
    if n < 2 {
        return Err(InterpError::TooFewPoints(n));
    }
    let k = (n / 2) as u32;
    let (d, m) = if n % 2 == 1 { (k, k - 1) } else { (2 * k - 1, 2 * k - 1) };
    if m == 0 {
        return Err(InterpError::NoParityChoice(n));
    }
    debug_assert_eq!(num_forms(d), n + num_derivative_rows(m));
    Ok(ParityChoice {
        n,
        d,
        m,
        expected_degree: expected_degree(d, m),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpProblem {
    pub d: u32,
    pub m: u32,
    pub z: PointConfig,
}

impl InterpProblem {
    pub fn new(d: u32, m: u32, z: PointConfig) -> Result<Self, InterpError> {
        if m == 0 || m > d {
            return Err(InterpError::BadParameters { d, m });
        }
        Ok(InterpProblem { d, m, z })
    }

    /// Problem with the parity-rule parameters for `z`.
    pub fn with_parity(z: PointConfig) -> Result<Self, InterpError> {
        let c = parity_parameters(z.len())?;
        InterpProblem::new(c.d, c.m, z)
    }

    pub fn basis(&self) -> Vec<Monomial3> {
        monomial_basis(self.d)
    }

    pub fn rows(&self) -> usize {
        self.z.len() + num_derivative_rows(self.m)
    }

    pub fn cols(&self) -> usize {
        num_forms(self.d)
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn expected_degree(&self) -> u32 {
        expected_degree(self.d, self.m)
    }
}

/// Matrix with polynomial entries in the fat-point coordinates. The first
/// `n_evaluation` rows are constants; the others are the order `m - 1`
/// derivatives listed in `operators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    pub field: Field,
    pub n_evaluation: usize,
    pub operators: Vec<[u32; 3]>,
    pub entries: Vec<Vec<HPoly>>,
}

impl SymbolicMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn to_json(&self) -> MatrixJson {
        let block = |rows: &[Vec<HPoly>]| -> Vec<Vec<PolyJson>> {
            rows.iter().map(|r| r.iter().map(PolyJson::from).collect()).collect()
        };
        MatrixJson {
            rows: self.rows(),
            cols: self.cols(),
            square: self.rows() == self.cols(),
            blocks: vec![
                MatrixBlockJson {
                    kind: "evaluation".into(),
                    operators: None,
                    rows: block(&self.entries[..self.n_evaluation]),
                },
                MatrixBlockJson {
                    kind: "derivative".into(),
                    operators: Some(self.operators.clone()),
                    rows: block(&self.entries[self.n_evaluation..]),
                },
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub square: bool,
    pub blocks: Vec<MatrixBlockJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixBlockJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operators: Option<Vec<[u32; 3]>>,
    pub rows: Vec<Vec<PolyJson>>,
}

pub fn build_matrix(p: &InterpProblem) -> Result<SymbolicMatrix, InterpError> {
    build_matrix_in(p, Field::Rational)
}

pub fn build_matrix_in(p: &InterpProblem, field: Field) -> Result<SymbolicMatrix, InterpError> {
    if p.m == 0 || p.m > p.d {
        return Err(InterpError::BadParameters { d: p.d, m: p.m });
    }
    let basis = p.basis();
    let mut entries = Vec::with_capacity(p.rows());
    for pt in p.z.points() {
        let c = pt.coords_in(field)?;
        let row = basis
            .iter()
            .map(|b| {
                let v = HPoly::monomial(VarSet::A, *b, field.one()).eval(&c)?;
                Ok(HPoly::constant(VarSet::A, v))
            })
            .collect::<Result<Vec<_>, AlgError>>()?;
        entries.push(row);
    }
    let operators: Vec<[u32; 3]> = Monomial3::all_of_degree(p.m - 1).into_iter().map(|a| a.0).collect();
    for alpha in &operators {
        let row = basis
            .iter()
            .map(|b| HPoly::monomial(VarSet::A, *b, field.one()).diff_multi(*alpha))
            .collect();
        entries.push(row);
    }
    Ok(SymbolicMatrix {
        field,
        n_evaluation: p.z.len(),
        operators,
        entries,
    })
}

/// Entry-wise evaluation at a coordinate triple of the matrix field.
pub fn specialize_at(m: &SymbolicMatrix, b: &[Scalar; 3]) -> Result<FieldMatrix, InterpError> {
    let rows = m
        .entries
        .iter()
        .map(|r| r.iter().map(|e| e.eval(b)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FieldMatrix::from_rows(rows, m.field)?)
}

pub fn specialize_at_point(m: &SymbolicMatrix, b: &ProjPoint) -> Result<FieldMatrix, InterpError> {
    specialize_at(m, &b.coords_in(m.field)?)
}

/// Dimension of the space of degree-`d` forms vanishing on `z` and to order
/// at least `mult` at each fat point.
pub fn system_dimension(d: u32, fat_points: &[(ProjPoint, u32)], z: &[ProjPoint]) -> Result<usize, InterpError> {
    system_dimension_in(d, fat_points, z, Field::Rational)
}

pub fn system_dimension_in(
    d: u32,
    fat_points: &[(ProjPoint, u32)],
    z: &[ProjPoint],
    field: Field,
) -> Result<usize, InterpError> {
    let basis = monomial_basis(d);
    let forms: Vec<HPoly> = basis
        .iter()
        .map(|b| HPoly::monomial(VarSet::A, *b, field.one()))
        .collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for pt in z {
        let c = pt.coords_in(field)?;
        rows.push(forms.iter().map(|f| f.eval(&c)).collect::<Result<_, _>>()?);
    }
    for (b, mult) in fat_points {
        let c = b.coords_in(field)?;
        for order in 0..*mult {
            for alpha in Monomial3::all_of_degree(order) {
                rows.push(
                    forms
                        .iter()
                        .map(|f| f.diff_multi(alpha.0).eval(&c))
                        .collect::<Result<_, _>>()?,
                );
            }
        }
    }
    if rows.is_empty() {
        return Ok(basis.len());
    }
    let m = FieldMatrix::from_rows(rows, field)?;
    Ok(basis.len() - m.rank())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetAlgorithm {
    #[default]
    Interpolation,
    Bareiss,
}

impl fmt::Display for DetAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetAlgorithm::Interpolation => "interpolation",
            DetAlgorithm::Bareiss => "bareiss",
        })
    }
}

impl FromStr for DetAlgorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "interpolation" => Ok(DetAlgorithm::Interpolation),
            "bareiss" => Ok(DetAlgorithm::Bareiss),
            _ => Err(format!("unknown algorithm {s:?}")),
        }
    }
}

/// Determinant of the interpolation matrix. `raw` is the determinant in the
/// fixed row/column order; `canonical` is its normalized representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Determinant {
    pub raw: HPoly,
    pub canonical: HPoly,
    pub expected_degree: u32,
    pub algorithm: DetAlgorithm,
}

impl Determinant {
    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    pub fn to_json(&self) -> DeterminantJson {
        DeterminantJson {
            poly: PolyJson::from(&self.canonical),
            expected_degree: self.expected_degree,
            is_zero: self.is_zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminantJson {
    #[serde(flatten)]
    pub poly: PolyJson,
    pub expected_degree: u32,
    pub is_zero: bool,
}

pub fn determinant(p: &InterpProblem, algorithm: DetAlgorithm) -> Result<Determinant, InterpError> {
    determinant_in(p, algorithm, Field::Rational, &GridSampler::default())
}

pub fn determinant_in(
    p: &InterpProblem,
    algorithm: DetAlgorithm,
    field: Field,
    sampler: &GridSampler,
) -> Result<Determinant, InterpError> {
    if !p.is_square() {
        return Err(InterpError::NotSquare {
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    let m = build_matrix_in(p, field)?;
    let degree = p.expected_degree();
    let raw = match algorithm {
        DetAlgorithm::Interpolation => interpolate_homogeneous(degree, VarSet::A, field, |b| {
            specialize_at(&m, b)
                .map_err(|e| match e {
                    InterpError::Alg(a) => a,
                    _ => AlgError::Shape,
                })?
                .determinant()
        }, sampler)?,
        DetAlgorithm::Bareiss => bareiss(m.entries, degree)?,
    };
    Ok(Determinant {
        canonical: raw.canonicalize(),
        raw,
        expected_degree: degree,
        algorithm,
    })
}

/// Fraction-free elimination on polynomial entries. Each quotient by the
/// previous pivot is exact.
fn bareiss(mut a: Vec<Vec<HPoly>>, degree: u32) -> Result<HPoly, AlgError> {
    let n = a.len();
    let field = a[0][0].field();
    let mut sign_negative = false;
    let mut prev = HPoly::constant(VarSet::A, field.one());
    for k in 0..n {
        if a[k][k].is_zero() {
            // Pick the nonzero candidate with the fewest terms to keep growth down.
            let swap = (k + 1..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| (a[i][k].terms().len(), i));
            match swap {
                Some(i) => {
                    a.swap(k, i);
                    sign_negative = !sign_negative;
                }
                None => return Ok(HPoly::zero(VarSet::A, field, degree)),
            }
        }
        let pivot_row = a[k].clone();
        let updated: Vec<(usize, Vec<HPoly>)> = (k + 1..n)
            .into_par_iter()
            .map(|i| {
                let row = &a[i];
                let new_tail = (k + 1..n)
                    .map(|j| {
                        let num = pivot_row[k].mul(&row[j])?.sub(&row[k].mul(&pivot_row[j])?)?;
                        num.exact_divide(&prev)?.ok_or(AlgError::InconsistentOracle)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((i, new_tail))
            })
            .collect::<Result<Vec<_>, AlgError>>()?;
        for (i, tail) in updated {
            let zero = HPoly::zero(VarSet::A, field, 0);
            for (off, v) in tail.into_iter().enumerate() {
                a[i][k + 1 + off] = v;
            }
            a[i][k] = zero;
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    let det = if sign_negative { det.neg() } else { det };
    if det.is_zero() {
        return Ok(HPoly::zero(VarSet::A, field, degree));
    }
    if det.degree() != degree {
        return Err(AlgError::Inhomogeneous);
    }
    Ok(det)
}
