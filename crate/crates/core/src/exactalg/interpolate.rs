//! Recovery of a homogeneous polynomial of known degree from its values.
//!
//! The target is dehomogenized on the chart `var2 = 1` and the bivariate
//! polynomial of degree `<= D` is fitted on the triangular grid
//! `(x0 + i, y0 + j)`, `i + j <= D`. That grid is unisolvent, so the fit is a
//! Newton forward-difference table rather than a dense linear solve.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{AlgError, Field, HPoly, Monomial3, Scalar, VarSet};

const MAX_ATTEMPTS: u32 = 4;

/// Deterministic source of sample grids.
#[derive(Clone, Copy, Debug)]
pub struct GridSampler {
    pub seed: u64,
}

impl GridSampler {
    pub fn new(seed: u64) -> Self {
        GridSampler { seed }
    }

    /// Grid origin for a given attempt; attempt 0 is the plain grid.
    pub fn origin(&self, attempt: u32) -> (i64, i64) {
        if attempt == 0 {
            return (0, 0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ ((attempt as u64) << 32));
        (rng.gen_range(-64..=64), rng.gen_range(-64..=64))
    }
}

impl Default for GridSampler {
    fn default() -> Self {
        GridSampler::new(0)
    }
}

/// Affine sample points `(x0+i, y0+j, 1)` for `i + j <= degree`, ordered by `j` then `i`.
pub fn grid_points(degree: u32, field: Field, origin: (i64, i64)) -> Vec<[Scalar; 3]> {
    let d = degree as i64;
    let mut out = Vec::new();
    for j in 0..=d {
        for i in 0..=d - j {
            out.push([
                field.from_i64(origin.0 + i),
                field.from_i64(origin.1 + j),
                field.one(),
            ]);
        }
    }
    out
}

/// Extra points used to detect an oracle that is not homogeneous of the assumed degree.
/// Two of them lie on the line `var2 = 0`, outside the fitting chart.
fn check_points(degree: u32, field: Field) -> Vec<[Scalar; 3]> {
    let d = degree as i64;
    [[1, 3, 0], [5, -2, 0], [d + 2, -3, 7], [-1, d + 3, 2]]
        .iter()
        .map(|p| [field.from_i64(p[0]), field.from_i64(p[1]), field.from_i64(p[2])])
        .collect()
}

/// Ascending coefficients of the falling product `(t - c)(t - c - 1)...(t - c - k + 1)`.
fn falling_product(k: u32, c: i64, field: Field) -> Vec<Scalar> {
    let mut poly = vec![field.one()];
    for step in 0..k as i64 {
        let root = field.from_i64(c + step);
        let mut next = vec![field.zero(); poly.len() + 1];
        for (e, coef) in poly.iter().enumerate() {
            next[e + 1] = next[e + 1].checked_add(coef).expect("same field");
            let t = coef.checked_mul(&root).expect("same field");
            next[e] = next[e].checked_sub(&t).expect("same field");
        }
        poly = next;
    }
    poly
}

fn forward_differences(values: &mut [Scalar]) {
    let n = values.len();
    for a in 1..n {
        for i in (a..n).rev() {
            values[i] = values[i].checked_sub(&values[i - 1]).expect("same field");
        }
    }
}

/// Fits the degree-`degree` form whose chart values on the grid at `origin` are `values`.
pub fn fit_grid(
    degree: u32,
    vars: VarSet,
    field: Field,
    origin: (i64, i64),
    values: &[Scalar],
) -> Result<HPoly, AlgError> {
    let d = degree as usize;
    if values.len() != (d + 1) * (d + 2) / 2 {
        return Err(AlgError::Shape);
    }
    let mut factorials = vec![field.one()];
    for k in 1..=d {
        let next = factorials[k - 1].checked_mul(&field.from_i64(k as i64))?;
        if next.is_zero() {
            return Err(AlgError::SingularFit);
        }
        factorials.push(next);
    }

    // dx[a][j] = Δ_x^a g(x0, y0 + j)
    let mut dx = vec![Vec::new(); d + 1];
    let mut offset = 0;
    for j in 0..=d {
        let len = d - j + 1;
        let mut row = values[offset..offset + len].to_vec();
        offset += len;
        forward_differences(&mut row);
        for (a, v) in row.into_iter().enumerate() {
            dx[a].push(v);
        }
    }

    // coef[i][j] of x^i y^j
    let mut coef = vec![vec![field.zero(); d + 1]; d + 1];
    for (a, mut column) in dx.into_iter().enumerate() {
        forward_differences(&mut column);
        let mut s = vec![field.zero(); d - a + 1];
        for (b, delta) in column.iter().enumerate() {
            let c = delta.checked_div(&factorials[a])?.checked_div(&factorials[b])?;
            if c.is_zero() {
                continue;
            }
            for (e, q) in falling_product(b as u32, origin.1, field).iter().enumerate() {
                s[e] = s[e].checked_add(&q.checked_mul(&c)?)?;
            }
        }
        let p = falling_product(a as u32, origin.0, field);
        for (i, pi) in p.iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            for (j, sj) in s.iter().enumerate() {
                if !sj.is_zero() {
                    coef[i][j] = coef[i][j].checked_add(&pi.checked_mul(sj)?)?;
                }
            }
        }
    }

    let mut terms = Vec::new();
    for (i, row) in coef.into_iter().enumerate() {
        for (j, c) in row.into_iter().enumerate() {
            if !c.is_zero() {
                if i + j > d {
                    return Err(AlgError::InconsistentOracle);
                }
                terms.push((Monomial3([i as u32, j as u32, (d - i - j) as u32]), c));
            }
        }
    }
    HPoly::from_terms(vars, field, degree, terms)
}

/// Recovers the homogeneous polynomial of degree `degree` (or zero) evaluated by `oracle`.
///
/// Grid values are computed in parallel and combined by grid index, so the
/// result does not depend on scheduling.
pub fn interpolate_homogeneous<F>(
    degree: u32,
    vars: VarSet,
    field: Field,
    oracle: F,
    sampler: &GridSampler,
) -> Result<HPoly, AlgError>
where
    F: Fn(&[Scalar; 3]) -> Result<Scalar, AlgError> + Sync,
{
    let mut last_err = AlgError::SingularFit;
    for attempt in 0..MAX_ATTEMPTS {
        let origin = sampler.origin(attempt);
        let points = grid_points(degree, field, origin);
        let values = points
            .par_iter()
            .map(&oracle)
            .collect::<Result<Vec<_>, _>>()?;
        match fit_grid(degree, vars, field, origin, &values) {
            Ok(poly) => {
                for pt in check_points(degree, field) {
                    if poly.eval(&pt)? != oracle(&pt)? {
                        return Err(AlgError::InconsistentOracle);
                    }
                }
                return Ok(poly);
            }
            Err(AlgError::SingularFit) => last_err = AlgError::SingularFit,
            Err(e) => return Err(e),
        }
    }
    Err(last_err)
}
