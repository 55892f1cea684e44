//! Homogeneous polynomials in three variables with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgError, Field, Scalar};

/// Exponent triple `(e0, e1, e2)`.
///
/// `Ord` is graded-lexicographic with `var0 > var1 > var2`: total degree
/// first, then the exponent of `var0`, then `var1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial3(pub [u32; 3]);

impl Monomial3 {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial3) -> Monomial3 {
        Monomial3([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    pub fn divides(&self, other: &Monomial3) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial3) -> Monomial3 {
        Monomial3([
            other.0[0] - self.0[0],
            other.0[1] - self.0[1],
            other.0[2] - self.0[2],
        ])
    }

    /// All monomials of degree `d`, descending in graded-lex order.
    pub fn all_of_degree(d: u32) -> Vec<Monomial3> {
        let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
        for e0 in (0..=d).rev() {
            for e1 in (0..=d - e0).rev() {
                out.push(Monomial3([e0, e1, d - e0 - e1]));
            }
        }
        out
    }
}

impl Ord for Monomial3 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.0[0].cmp(&other.0[0]))
            .then(self.0[1].cmp(&other.0[1]))
    }
}

impl PartialOrd for Monomial3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Variable set a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarSet {
    /// `x, y, z`: the plane carrying the point configuration.
    Xyz,
    /// `a0, a1, a2`: coordinates of the moving point.
    A,
}

impl VarSet {
    pub fn names(self) -> [&'static str; 3] {
        match self {
            VarSet::Xyz => ["x", "y", "z"],
            VarSet::A => ["a0", "a1", "a2"],
        }
    }

    pub fn from_names(names: &[String]) -> Option<VarSet> {
        [VarSet::Xyz, VarSet::A]
            .into_iter()
            .find(|v| names.len() == 3 && v.names().iter().zip(names).all(|(a, b)| a == b))
    }
}

/// Operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Second operand of [`poly_arith`].
pub enum Operand<'a> {
    Poly(&'a HPoly),
    Scalar(&'a Scalar),
}

/// `f op g` for polynomial operands, or `f * c` when the operand is a scalar.
pub fn poly_arith(op: PolyOp, f: &HPoly, g: Operand<'_>) -> Result<HPoly, AlgError> {
    match (op, g) {
        (PolyOp::Add, Operand::Poly(g)) => f.add(g),
        (PolyOp::Sub, Operand::Poly(g)) => f.sub(g),
        (PolyOp::Mul, Operand::Poly(g)) => f.mul(g),
        (PolyOp::Mul, Operand::Scalar(c)) => f.scale(c),
        (_, Operand::Scalar(_)) => Err(AlgError::Inhomogeneous),
    }
}

/// Homogeneous polynomial with terms stored strictly descending in graded-lex
/// order and no zero coefficients. The zero polynomial keeps a nominal degree.
#[derive(Clone, Debug)]
pub struct HPoly {
    vars: VarSet,
    field: Field,
    degree: u32,
    terms: Vec<(Monomial3, Scalar)>,
}

impl PartialEq for HPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.field == other.field
            && self.terms == other.terms
            && (self.terms.is_empty() || self.degree == other.degree)
    }
}

impl Eq for HPoly {}

impl HPoly {
    pub fn zero(vars: VarSet, field: Field, degree: u32) -> HPoly {
        HPoly {
            vars,
            field,
            degree,
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: VarSet, c: Scalar) -> HPoly {
        HPoly::from_terms(vars, c.field(), 0, vec![(Monomial3([0, 0, 0]), c)])
            .expect("constant is homogeneous")
    }

    /// The variable with index `i` as a degree-1 polynomial.
    pub fn var(vars: VarSet, field: Field, i: usize) -> HPoly {
        let mut e = [0; 3];
        e[i] = 1;
        HPoly::monomial(vars, Monomial3(e), field.one())
    }

    pub fn monomial(vars: VarSet, m: Monomial3, c: Scalar) -> HPoly {
        let field = c.field();
        HPoly::from_terms(vars, field, m.degree(), vec![(m, c)]).expect("single term")
    }

    /// Linear form `c0*v0 + c1*v1 + c2*v2`.
    pub fn linear(vars: VarSet, coeffs: [Scalar; 3]) -> HPoly {
        let field = coeffs[0].field();
        let terms = coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let mut e = [0; 3];
                e[i] = 1;
                (Monomial3(e), c)
            })
            .collect();
        HPoly::from_terms(vars, field, 1, terms).expect("linear form")
    }

    /// Builds a polynomial from arbitrary terms: merges duplicates, drops zeros, sorts.
    pub fn from_terms(
        vars: VarSet,
        field: Field,
        degree: u32,
        terms: Vec<(Monomial3, Scalar)>,
    ) -> Result<HPoly, AlgError> {
        let mut acc: BTreeMap<Monomial3, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if c.field() != field {
                return Err(AlgError::FieldMismatch(field, c.field()));
            }
            if m.degree() != degree {
                return Err(AlgError::Inhomogeneous);
            }
            match acc.get_mut(&m) {
                Some(slot) => *slot = slot.checked_add(&c)?,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Ok(HPoly::from_sorted_map(vars, field, degree, acc))
    }

    fn from_sorted_map(
        vars: VarSet,
        field: Field,
        degree: u32,
        acc: BTreeMap<Monomial3, Scalar>,
    ) -> HPoly {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        HPoly {
            vars,
            field,
            degree,
            terms,
        }
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Total degree (nominal for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(Monomial3, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial3, Scalar)> {
        self.terms.first()
    }

    /// Same polynomial written in another variable set.
    pub fn rename(&self, vars: VarSet) -> HPoly {
        HPoly {
            vars,
            ..self.clone()
        }
    }

    fn check_compatible(&self, other: &HPoly) -> Result<(), AlgError> {
        if self.vars != other.vars {
            return Err(AlgError::VarMismatch);
        }
        if self.field != other.field {
            return Err(AlgError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    fn combine(&self, other: &HPoly, negate: bool) -> Result<HPoly, AlgError> {
        self.check_compatible(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(if negate { other.neg() } else { other.clone() });
        }
        if self.degree != other.degree {
            return Err(AlgError::Inhomogeneous);
        }
        // Merge of two descending term lists.
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => b.0.cmp(&a.0),
                (Some(_), None) => Ordering::Less,
                (None, _) => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (m, c) = &other.terms[j];
                    out.push((*m, if negate { c.neg() } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if negate {
                        a.checked_sub(b)?
                    } else {
                        a.checked_add(b)?
                    };
                    if !c.is_zero() {
                        out.push((*m, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(HPoly {
            vars: self.vars,
            field: self.field,
            degree: self.degree,
            terms: out,
        })
    }

    pub fn add(&self, other: &HPoly) -> Result<HPoly, AlgError> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &HPoly) -> Result<HPoly, AlgError> {
        self.combine(other, true)
    }

    pub fn neg(&self) -> HPoly {
        HPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<HPoly, AlgError> {
        if c.field() != self.field {
            return Err(AlgError::FieldMismatch(self.field, c.field()));
        }
        if c.is_zero() {
            return Ok(HPoly::zero(self.vars, self.field, self.degree));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| Ok((*m, a.checked_mul(c)?)))
            .collect::<Result<_, AlgError>>()?;
        Ok(HPoly {
            terms,
            ..self.clone()
        })
    }

    pub fn mul(&self, other: &HPoly) -> Result<HPoly, AlgError> {
        self.check_compatible(other)?;
        let degree = self.degree + other.degree;
        if self.is_zero() || other.is_zero() {
            return Ok(HPoly::zero(self.vars, self.field, degree));
        }
        let mut acc: BTreeMap<Monomial3, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.checked_mul(cb)?;
                match acc.get_mut(&m) {
                    Some(slot) => *slot = slot.checked_add(&c)?,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(HPoly::from_sorted_map(self.vars, self.field, degree, acc))
    }

    pub fn pow(&self, k: u32) -> Result<HPoly, AlgError> {
        let mut acc = HPoly::constant(self.vars, self.field.one());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Exact partial derivative with respect to variable `var`.
    pub fn diff(&self, var: usize) -> HPoly {
        assert!(var < 3, "variable index out of range");
        let degree = self.degree.saturating_sub(1);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let mut e = m.0;
                let k = e[var];
                e[var] -= 1;
                let factor = self.field.from_i64(k as i64);
                (Monomial3(e), c.checked_mul(&factor).expect("same field"))
            })
            .filter(|(_, c)| !c.is_zero())
            .collect::<Vec<_>>();
        // Differentiation preserves the descending order of the surviving terms.
        HPoly {
            vars: self.vars,
            field: self.field,
            degree,
            terms,
        }
    }

    /// Mixed partial derivative `∂^alpha`.
    pub fn diff_multi(&self, alpha: [u32; 3]) -> HPoly {
        let mut out = self.clone();
        for (var, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                out = out.diff(var);
            }
        }
        out
    }

    /// Value at a coordinate triple.
    pub fn eval(&self, pt: &[Scalar; 3]) -> Result<Scalar, AlgError> {
        for c in pt {
            if c.field() != self.field {
                return Err(AlgError::FieldMismatch(self.field, c.field()));
            }
        }
        let d = self.degree as usize;
        let powers: Vec<Vec<Scalar>> = pt
            .iter()
            .map(|x| {
                let mut v = Vec::with_capacity(d + 1);
                v.push(self.field.one());
                for k in 1..=d {
                    let next = v[k - 1].checked_mul(x).expect("same field");
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                let e = m.0[i] as usize;
                if e > 0 {
                    t = t.checked_mul(&powers[i][e])?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn exact_divide(&self, g: &HPoly) -> Result<Option<HPoly>, AlgError> {
        self.check_compatible(g)?;
        let Some((lm_g, lc_g)) = g.leading().cloned() else {
            return Err(AlgError::DivisionByZero);
        };
        if self.is_zero() {
            let degree = self.degree.saturating_sub(g.degree);
            return Ok(Some(HPoly::zero(self.vars, self.field, degree)));
        }
        if g.degree > self.degree {
            return Ok(None);
        }
        let qdeg = self.degree - g.degree;
        let lc_inv = lc_g.inv()?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((lm_r, lc_r)) = rem.leading().cloned() {
            if !lm_g.divides(&lm_r) {
                return Ok(None);
            }
            let m = lm_g.quotient_of(&lm_r);
            let c = lc_r.checked_mul(&lc_inv)?;
            let step = HPoly::monomial(self.vars, m, c.clone()).mul(g)?;
            rem = rem.sub(&step)?;
            quotient.push((m, c));
        }
        // Quotient terms come out strictly descending.
        Ok(Some(HPoly {
            vars: self.vars,
            field: self.field,
            degree: qdeg,
            terms: quotient,
        }))
    }

    /// Integer-primitive representative with positive leading coefficient.
    /// Polynomials over `F_p` are made monic instead.
    pub fn canonicalize(&self) -> HPoly {
        let Some((_, lc)) = self.leading() else {
            return self.clone();
        };
        match self.field {
            Field::Prime(_) => self.scale(&lc.inv().expect("nonzero")).expect("same field"),
            Field::Rational => {
                let mut den_lcm = BigInt::one();
                let mut num_gcd = BigInt::zero();
                for (_, c) in &self.terms {
                    let r = c.as_rational().expect("rational field");
                    den_lcm = den_lcm.lcm(r.denom());
                    num_gcd = num_gcd.gcd(r.numer());
                }
                let mut factor = BigRational::new(den_lcm, num_gcd);
                if lc.signum() < 0 {
                    factor = -factor;
                }
                self.scale(&Scalar::Rational(factor)).expect("same field")
            }
        }
    }

    /// Integer coefficient vector, valid only for canonical rational polynomials.
    pub fn integer_terms(&self) -> Option<Vec<(Monomial3, BigInt)>> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let r = c.as_rational()?;
                r.is_integer().then(|| (*m, r.numer().clone()))
            })
            .collect()
    }

    /// Reduction of a rational polynomial into another field.
    pub fn to_field(&self, field: Field) -> Result<HPoly, AlgError> {
        if self.field == field {
            return Ok(self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let r = c
                    .as_rational()
                    .ok_or(AlgError::FieldMismatch(Field::Rational, self.field))?;
                Ok((*m, field.from_rational(r)?))
            })
            .collect::<Result<Vec<_>, AlgError>>()?;
        HPoly::from_terms(self.vars, field, self.degree, terms)
    }

    /// Largest absolute value among the numerators of a rational polynomial.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .iter()
            .filter_map(|(_, c)| c.as_rational().map(|r| r.numer().abs()))
            .max()
            .unwrap_or_default()
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.vars.names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for i in 0..3 {
                match m.0[i] {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    e => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    fn a(i: usize) -> HPoly {
        HPoly::var(VarSet::A, Field::Rational, i)
    }

    #[test]
    fn graded_lex_basis_order() {
        let b: Vec<_> = Monomial3::all_of_degree(2).into_iter().map(|m| m.0).collect();
        assert_eq!(b, vec![[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]]);
        assert_eq!(Monomial3::all_of_degree(4).len(), 15);
    }

    #[test]
    fn arith_examples() {
        let s = poly_arith(PolyOp::Add, &a(0), Operand::Poly(&a(1))).unwrap();
        assert_eq!(s.to_string(), "a0 + a1");
        let diff = a(0).sub(&a(1)).unwrap();
        let prod = s.mul(&diff).unwrap();
        assert_eq!(prod, a(0).pow(2).unwrap().sub(&a(1).pow(2).unwrap()).unwrap());
        let x = HPoly::var(VarSet::Xyz, Field::Rational, 0);
        let lin = x
            .add(&HPoly::var(VarSet::Xyz, Field::Rational, 1))
            .unwrap()
            .add(&HPoly::var(VarSet::Xyz, Field::Rational, 2))
            .unwrap();
        assert_eq!(lin.mul(&x).unwrap().degree(), 2);
    }

    #[test]
    fn arith_errors() {
        let x = HPoly::var(VarSet::Xyz, Field::Rational, 0);
        assert!(matches!(a(0).add(&x), Err(AlgError::VarMismatch)));
        let ap = HPoly::var(VarSet::A, Field::Prime(7), 0);
        assert!(matches!(a(0).mul(&ap), Err(AlgError::FieldMismatch(..))));
        assert!(matches!(a(0).add(&a(0).pow(2).unwrap()), Err(AlgError::Inhomogeneous)));
        let zero = HPoly::zero(VarSet::A, Field::Rational, 5);
        assert_eq!(a(0).add(&zero).unwrap(), a(0));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(a(0).pow(2).unwrap().diff(0), a(0).scale(&q(2)).unwrap());
        assert!(a(0).pow(2).unwrap().diff(1).is_zero());
        let m = a(0).mul(&a(1)).unwrap().mul(&a(2)).unwrap();
        assert_eq!(m.diff(0), a(1).mul(&a(2)).unwrap());
    }

    #[test]
    fn eval_examples() {
        let sq = a(0).pow(2).unwrap().add(&a(1).pow(2).unwrap()).unwrap().add(&a(2).pow(2).unwrap()).unwrap();
        assert_eq!(sq.eval(&[q(1), q(0), q(0)]).unwrap(), q(1));
        let conic = a(1).pow(2).unwrap().sub(&a(0).mul(&a(2)).unwrap()).unwrap();
        assert_eq!(conic.eval(&[q(1), q(2), q(4)]).unwrap(), q(0));
        let m = a(0).mul(&a(1)).unwrap().mul(&a(2)).unwrap();
        assert_eq!(m.eval(&[q(1), q(1), q(1)]).unwrap(), q(1));
        let f7 = Field::Prime(7);
        assert!(m.eval(&[f7.one(), f7.one(), f7.one()]).is_err());
    }

    #[test]
    fn divide_examples() {
        let f = a(0).pow(2).unwrap().sub(&a(1).pow(2).unwrap()).unwrap();
        let g = a(0).sub(&a(1)).unwrap();
        assert_eq!(f.exact_divide(&g).unwrap().unwrap(), a(0).add(&a(1)).unwrap());
        let h = a(0).pow(2).unwrap().add(&a(1).pow(2).unwrap()).unwrap();
        assert!(h.exact_divide(&g).unwrap().is_none());
        let m = a(0).mul(&a(1)).unwrap().mul(&a(2)).unwrap().scale(&q(-2)).unwrap();
        assert_eq!(
            m.exact_divide(&a(2)).unwrap().unwrap(),
            a(0).mul(&a(1)).unwrap().scale(&q(-2)).unwrap()
        );
        let zero = HPoly::zero(VarSet::A, Field::Rational, 1);
        assert!(matches!(f.exact_divide(&zero), Err(AlgError::DivisionByZero)));
    }

    #[test]
    fn canonicalize_examples() {
        let two_thirds = Scalar::parse("2/3", Field::Rational).unwrap();
        let four_thirds = Scalar::parse("4/3", Field::Rational).unwrap();
        let f = a(0).scale(&two_thirds).unwrap().sub(&a(1).scale(&four_thirds).unwrap()).unwrap();
        assert_eq!(f.canonicalize(), a(0).sub(&a(1).scale(&q(2)).unwrap()).unwrap());
        let m = a(0).mul(&a(1)).unwrap().mul(&a(2)).unwrap();
        assert_eq!(m.scale(&q(-2)).unwrap().canonicalize(), m);
        let zero = HPoly::zero(VarSet::A, Field::Rational, 3);
        assert!(zero.canonicalize().is_zero());
    }

    #[test]
    fn display_is_readable() {
        let f = a(0).pow(2).unwrap().scale(&q(2)).unwrap().sub(&a(1).mul(&a(2)).unwrap()).unwrap();
        assert_eq!(f.to_string(), "2*a0^2 - a1*a2");
    }
}
