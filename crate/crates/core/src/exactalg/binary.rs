//! Binary forms in a parameter pair `(s, t)` and restriction of ternary forms
//! to a parametrized line.

use super::{AlgError, Field, HPoly, Scalar};

/// `coeffs[k]` is the coefficient of `s^k t^(degree-k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub field: Field,
    pub degree: u32,
    pub coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn zero(field: Field, degree: u32) -> Self {
        BinaryForm {
            field,
            degree,
            coeffs: vec![field.zero(); degree as usize + 1],
        }
    }

    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Result<Self, AlgError> {
        if coeffs.is_empty() {
            return Err(AlgError::Shape);
        }
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(AlgError::FieldMismatch(field, coeffs.iter().find(|c| c.field() != field).unwrap().field()));
        }
        Ok(BinaryForm {
            field,
            degree: coeffs.len() as u32 - 1,
            coeffs,
        })
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Result<Self, AlgError> {
        BinaryForm::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// The form `a*s + b*t`.
    pub fn linear(a: Scalar, b: Scalar) -> Self {
        BinaryForm {
            field: a.field(),
            degree: 1,
            coeffs: vec![b, a],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &BinaryForm) -> Result<BinaryForm, AlgError> {
        let mut out = BinaryForm::zero(self.field, self.degree + other.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out.coeffs[i + j] = out.coeffs[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &BinaryForm) -> Result<BinaryForm, AlgError> {
        if self.degree != other.degree {
            return Err(AlgError::Inhomogeneous);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_, _>>()?;
        Ok(BinaryForm { coeffs, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> Result<BinaryForm, AlgError> {
        let coeffs = self.coeffs.iter().map(|a| a.checked_mul(c)).collect::<Result<_, _>>()?;
        Ok(BinaryForm { coeffs, ..self.clone() })
    }

    pub fn eval(&self, s: &Scalar, t: &Scalar) -> Result<Scalar, AlgError> {
        let mut acc = self.field.zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let term = c.checked_mul(&s.pow(k as u32))?.checked_mul(&t.pow(self.degree - k as u32))?;
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    pub fn to_field(&self, field: Field) -> Result<BinaryForm, AlgError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c.as_rational() {
                Some(r) => field.from_rational(r),
                None if c.field() == field => Ok(c.clone()),
                None => Err(AlgError::FieldMismatch(c.field(), field)),
            })
            .collect::<Result<_, _>>()?;
        Ok(BinaryForm {
            field,
            degree: self.degree,
            coeffs,
        })
    }
}

/// Substitutes `a = s*u + t*v` into `f`.
pub fn restrict_to_line(f: &HPoly, u: &[Scalar; 3], v: &[Scalar; 3]) -> Result<BinaryForm, AlgError> {
    let field = f.field();
    let deg = f.degree();
    let lin: Vec<BinaryForm> = (0..3).map(|i| BinaryForm::linear(u[i].clone(), v[i].clone())).collect();
    // powers[i][e] = lin[i]^e
    let powers: Vec<Vec<BinaryForm>> = lin
        .iter()
        .map(|l| {
            let mut v = vec![BinaryForm::new(field, vec![field.one()]).expect("nonempty")];
            for e in 1..=deg as usize {
                let next = v[e - 1].mul(l).expect("same field");
                v.push(next);
            }
            v
        })
        .collect();
    let mut out = BinaryForm::zero(field, deg);
    for (m, c) in f.terms() {
        let mut t = powers[0][m.0[0] as usize].mul(&powers[1][m.0[1] as usize])?;
        t = t.mul(&powers[2][m.0[2] as usize])?;
        out = out.add(&t.scale(c)?)?;
    }
    Ok(out)
}
