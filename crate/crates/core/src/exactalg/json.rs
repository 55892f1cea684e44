//! Polynomial JSON form:
//! `{"vars":["a0","a1","a2"],"degree":D,"terms":[{"e":[i,j,k],"c":"-2/3"}]}`.

use serde::{Deserialize, Serialize};

use super::{AlgError, Field, HPoly, Monomial3, Scalar, VarSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: [u32; 3],
    pub c: String,
}

impl From<&HPoly> for PolyJson {
    fn from(f: &HPoly) -> Self {
        PolyJson {
            vars: f.vars().names().iter().map(|s| s.to_string()).collect(),
            degree: f.degree(),
            terms: f
                .terms()
                .iter()
                .map(|(m, c)| TermJson {
                    e: m.0,
                    c: c.to_decimal_string(),
                })
                .collect(),
        }
    }
}

impl PolyJson {
    pub fn to_poly(&self, field: Field) -> Result<HPoly, AlgError> {
        let vars = VarSet::from_names(&self.vars)
            .ok_or_else(|| AlgError::Parse(format!("unknown variables {:?}", self.vars)))?;
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((Monomial3(t.e), Scalar::parse(&t.c, field)?)))
            .collect::<Result<Vec<_>, AlgError>>()?;
        HPoly::from_terms(vars, field, self.degree, terms)
    }
}
