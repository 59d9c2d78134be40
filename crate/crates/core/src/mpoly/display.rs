//! Plain-text form: `2*x*y^3 + 3*a1*x^2*y^2 - a6*z^4`, terms in canonical
//! descending order. The parser accepts the same grammar plus parenthesized
//! grouping, so printed polynomials (including ones with composite
//! coefficients) round-trip.

use super::*;
use std::fmt;

fn monomial_string(vars: &VarSet, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for i in 0..vars.len() {
        let e = m.exponent(i);
        if e == 1 {
            parts.push(vars.name(i).to_string());
        } else if e > 1 {
            parts.push(format!("{}^{}", vars.name(i), e));
        }
    }
    parts.join("*")
}

/// Coefficient strings that are not plain (possibly signed) numerals get
/// wrapped in parentheses when printed in front of a monomial.
fn coeff_needs_parens(s: &str) -> bool {
    s.contains('+')
        || s.contains('*')
        || s.contains('^')
        || s.contains(' ')
        || s[1..].contains('-')
}

pub(crate) fn term_string<C: Coeff>(vars: &VarSet, m: &Monomial, c: &C) -> String {
    let cs = c.coeff_string();
    let mono = monomial_string(vars, m);
    if mono.is_empty() {
        return cs;
    }
    if cs == "1" {
        return mono;
    }
    if cs == "-1" {
        return format!("-{mono}");
    }
    if coeff_needs_parens(&cs) {
        format!("({cs})*{mono}")
    } else {
        format!("{cs}*{mono}")
    }
}

impl<C: Coeff> fmt::Display for SPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let ts = term_string(&self.vars, m, c);
            if i == 0 {
                write!(f, "{ts}")?;
            } else if let Some(rest) = ts.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {ts}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            text,
        }
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse(format!("{msg} at position {} in {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr<C: Coeff>(
        &mut self,
        vars: &Arc<VarSet>,
        ctx: &C::Ctx,
    ) -> Result<SPoly<C>, PolyError> {
        let mut acc = SPoly::<C>::zero(vars.clone(), ctx.clone());
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.bump();
                    1
                }
                Some('-') => {
                    self.bump();
                    -1
                }
                Some(_) if first => 1,
                _ => break,
            };
            let t = self.term(vars, ctx)?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        Ok(acc)
    }

    fn term<C: Coeff>(
        &mut self,
        vars: &Arc<VarSet>,
        ctx: &C::Ctx,
    ) -> Result<SPoly<C>, PolyError> {
        let mut acc = self.factor(vars, ctx)?;
        while self.peek() == Some('*') {
            self.bump();
            acc = acc.mul(&self.factor(vars, ctx)?);
        }
        Ok(acc)
    }

    fn factor<C: Coeff>(
        &mut self,
        vars: &Arc<VarSet>,
        ctx: &C::Ctx,
    ) -> Result<SPoly<C>, PolyError> {
        let base = self.atom(vars, ctx)?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.uint()?;
            if e > u16::MAX as u32 {
                return Err(PolyError::ExponentOverflow);
            }
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn uint(&mut self) -> Result<u32, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected exponent"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u32>().map_err(|_| self.err("exponent too large"))
    }

    fn atom<C: Coeff>(
        &mut self,
        vars: &Arc<VarSet>,
        ctx: &C::Ctx,
    ) -> Result<SPoly<C>, PolyError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let open = self.pos;
                let mut depth = 1;
                let mut close = None;
                for k in self.pos..self.chars.len() {
                    match self.chars[k] {
                        '(' => depth += 1,
                        ')' => {
                            depth -= 1;
                            if depth == 0 {
                                close = Some(k);
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                let close = close.ok_or_else(|| self.err("unbalanced parenthesis"))?;
                // First read as a subexpression over the declared variables;
                // if that fails, the parenthesized text may be a composite
                // coefficient (e.g. a base-ring polynomial).
                let inner: String = self.chars[open..close].iter().collect();
                let mut sub = Parser::new(&inner);
                let parsed = sub
                    .expr::<C>(vars, ctx)
                    .and_then(|p| {
                        if sub.peek().is_none() {
                            Ok(p)
                        } else {
                            Err(sub.err("trailing input"))
                        }
                    })
                    .or_else(|e| match C::parse_coeff(ctx, inner.trim()) {
                        Ok(c) => Ok(SPoly::constant(vars.clone(), ctx.clone(), c)),
                        Err(_) => Err(e),
                    })?;
                self.pos = close + 1;
                Ok(parsed)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/')
                {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let c = C::parse_coeff(ctx, &s).map_err(|e| self.err(&e))?;
                Ok(SPoly::constant(vars.clone(), ctx.clone(), c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric()
                        || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match vars.index_of(&name) {
                    Some(_) => Ok(SPoly::var(vars.clone(), ctx.clone(), &name)),
                    None => Err(self.err(&format!("unknown variable {name}"))),
                }
            }
            _ => Err(self.err("expected a factor")),
        }
    }
}

/// Parse the plain-text polynomial form over the given variables.
pub fn parse_poly<C: Coeff>(
    vars: &Arc<VarSet>,
    ctx: &C::Ctx,
    text: &str,
) -> Result<SPoly<C>, PolyError> {
    let mut p = Parser::new(text);
    let poly = p.expr::<C>(vars, ctx)?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}
