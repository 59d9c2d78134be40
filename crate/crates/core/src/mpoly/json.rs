//! Bit-exact JSON form: `{"vars": [...], "terms": [{"c": "<decimal>",
//! "e": [...]}, ...]}` with terms in canonical descending order and
//! coefficients as canonical strings.

use super::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl<C: Coeff> SPoly<C> {
    pub fn to_json(&self) -> PolyJson {
        let n = self.vars.len();
        PolyJson {
            vars: self.vars.names().to_vec(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    c: c.coeff_string(),
                    e: m.exponents(n).iter().map(|&x| x as u32).collect(),
                })
                .collect(),
        }
    }

    /// Decode against an expected variable list.
    pub fn from_json_with_vars(
        json: &PolyJson,
        vars: &Arc<VarSet>,
        ctx: &C::Ctx,
    ) -> Result<SPoly<C>, PolyError> {
        if json.vars != vars.names() {
            return Err(PolyError::VarMismatch);
        }
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            if t.e.len() != vars.len() {
                return Err(PolyError::Parse(format!(
                    "exponent vector length {} does not match {} variables",
                    t.e.len(),
                    vars.len()
                )));
            }
            let m = Monomial::from_exponents(&t.e)?;
            let c = C::parse_coeff(ctx, &t.c).map_err(PolyError::Parse)?;
            if c.is_zero() {
                return Err(PolyError::Parse("zero coefficient stored".into()));
            }
            terms.push((m, c));
        }
        let p = SPoly::from_terms(vars.clone(), ctx.clone(), terms);
        if p.num_terms() != json.terms.len() {
            return Err(PolyError::Parse("duplicate monomials in input".into()));
        }
        Ok(p)
    }

    pub fn from_json(json: &PolyJson, ctx: &C::Ctx) -> Result<SPoly<C>, PolyError> {
        if json.vars.is_empty() || json.vars.len() > MAX_VARS {
            return Err(PolyError::Parse(format!(
                "variable list must have 1..={MAX_VARS} entries"
            )));
        }
        for (i, n) in json.vars.iter().enumerate() {
            if n.is_empty() || json.vars[..i].contains(n) {
                return Err(PolyError::Parse(format!("bad variable name {n:?}")));
            }
        }
        let vars = VarSet::new(&json.vars);
        Self::from_json_with_vars(json, &vars, ctx)
    }
}
