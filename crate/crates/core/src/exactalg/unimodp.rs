//! Dense univariate polynomials over `F_p`: distinct-degree factorization and root finding.

use rand::Rng;

use super::scalar::{is_prime, mul_mod, pow_mod};
use super::AlgError;

/// Univariate polynomial over `F_p`, coefficients ascending, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl UniPolyModP {
    pub fn new(p: u64, coeffs: impl IntoIterator<Item = i64>) -> Self {
        let pi = p as i64;
        let coeffs = coeffs.into_iter().map(|c| c.rem_euclid(pi) as u64).collect();
        Self::from_residues(p, coeffs)
    }

    pub fn from_residues(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPolyModP { p, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn x(p: u64) -> Self {
        UniPolyModP::from_residues(p, vec![0, 1])
    }

    fn one(p: u64) -> Self {
        UniPolyModP::from_residues(p, vec![1])
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::from_residues(self.p, v)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::from_residues(self.p, vec![]);
        }
        let mut v = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::from_residues(self.p, v)
    }

    /// Quotient and remainder; panics on a zero divisor.
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = pow_mod(d.coeffs[dd], self.p - 2, self.p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::from_residues(self.p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = mul_mod(r[k], inv, self.p);
            if c == 0 {
                continue;
            }
            q[k - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = (r[idx] + self.p - mul_mod(c, dc, self.p)) % self.p;
            }
        }
        r.truncate(dd);
        (Self::from_residues(self.p, q), Self::from_residues(self.p, r))
    }

    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = pow_mod(lc, self.p - 2, self.p);
                Self::from_residues(self.p, self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect())
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
            .collect();
        Self::from_residues(self.p, v)
    }

    /// `base^e mod self`.
    fn pow_mod_poly(&self, base: &Self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p).rem(self);
        let mut b = base.rem(self);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(self);
            }
            b = b.mul(&b).rem(self);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).degree() == Some(0)
    }

    fn check_input(&self) -> Result<(), AlgError> {
        if !is_prime(self.p) {
            return Err(AlgError::BadPrime(self.p));
        }
        if self.is_zero() {
            return Err(AlgError::BadPrime(self.p));
        }
        if !self.is_squarefree() {
            return Err(AlgError::NotSquarefree);
        }
        Ok(())
    }

    /// Degrees of the irreducible factors (sorted ascending), by distinct-degree factorization.
    pub fn factor_degrees(&self) -> Result<Vec<u32>, AlgError> {
        self.check_input()?;
        let mut f = self.monic();
        let x = Self::x(self.p);
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut i = 1usize;
        while f.degree().unwrap_or(0) >= 2 * i {
            h = f.pow_mod_poly(&h, self.p);
            let g = f.gcd(&h.sub(&x));
            let gd = g.degree().unwrap_or(0);
            if gd > 0 {
                out.extend(std::iter::repeat_n(i as u32, gd / i));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            i += 1;
        }
        if let Some(fd) = f.degree() {
            if fd > 0 {
                out.push(fd as u32);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// All distinct roots in `F_p`, ascending.
    pub fn roots<R: Rng>(&self, rng: &mut R) -> Vec<u64> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        if self.p < 64 {
            return (0..self.p).filter(|&t| self.eval(t) == 0).collect();
        }
        let x = Self::x(self.p);
        let f = self.monic();
        let xp = f.pow_mod_poly(&x, self.p);
        let g = f.gcd(&xp.sub(&x));
        let mut roots = Vec::new();
        self.split_linear(g, rng, &mut roots);
        roots.sort_unstable();
        roots
    }

    fn split_linear<R: Rng>(&self, g: Self, rng: &mut R, out: &mut Vec<u64>) {
        match g.degree() {
            None | Some(0) => {}
            Some(1) => {
                // monic x + c
                out.push((self.p - g.coeffs[0]) % self.p);
            }
            Some(_) => loop {
                let a = rng.gen_range(0..self.p);
                let shifted = Self::from_residues(self.p, vec![a, 1]);
                let t = g.pow_mod_poly(&shifted, (self.p - 1) / 2).sub(&Self::one(self.p));
                let h = g.gcd(&t);
                let hd = h.degree().unwrap_or(0);
                if hd > 0 && hd < g.degree().unwrap() {
                    let rest = g.div_rem(&h).0.monic();
                    self.split_linear(h, rng, out);
                    self.split_linear(rest, rng, out);
                    return;
                }
            },
        }
    }
}

/// Multiset of irreducible factor degrees of a squarefree polynomial over `F_p`.
pub fn factor_degrees_mod_p(f: &UniPolyModP) -> Result<Vec<u32>, AlgError> {
    f.factor_degrees()
}
