//! Substitution and evaluation: the ring-morphism image of a polynomial
//! under coefficient maps and variable assignments.

use super::*;

impl<C: Coeff> SPoly<C> {
    /// Image of `self` under a coefficient morphism and per-variable images.
    /// `var_images[i]` is the image of variable `i`; all images must live in
    /// `out_vars`/`out_ctx`. Substitution is a ring morphism, so sums and
    /// products commute with it.
    pub fn substitute_map<D: Coeff>(
        &self,
        out_vars: &Arc<VarSet>,
        out_ctx: &D::Ctx,
        coeff_map: &dyn Fn(&C) -> D,
        var_images: &[SPoly<D>],
    ) -> SPoly<D> {
        assert_eq!(var_images.len(), self.vars.len(), "one image per variable");
        // powers[i][k] = image_i^(k+1), filled on demand
        let mut powers: Vec<Vec<SPoly<D>>> = vec![Vec::new(); var_images.len()];
        let mut result = SPoly::<D>::zero(out_vars.clone(), out_ctx.clone());
        for (m, c) in &self.terms {
            let mut term = SPoly::<D>::constant(out_vars.clone(), out_ctx.clone(), coeff_map(c));
            for i in 0..var_images.len() {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() < e {
                    let next = match powers[i].last() {
                        Some(p) => p.mul(&var_images[i]),
                        None => var_images[i].clone(),
                    };
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e - 1]);
            }
            result = result.add(&term);
        }
        result
    }

    /// Substitute polynomials for a subset of variables, retaining the rest.
    /// Bindings and retained variables must all resolve in `out_vars`.
    pub fn substitute(
        &self,
        out_vars: &Arc<VarSet>,
        bindings: &[(&str, SPoly<C>)],
    ) -> Result<SPoly<C>, PolyError> {
        let mut images: Vec<SPoly<C>> = Vec::with_capacity(self.vars.len());
        for i in 0..self.vars.len() {
            let name = self.vars.name(i);
            if let Some((_, img)) = bindings.iter().find(|(n, _)| *n == name) {
                if img.vars() != out_vars {
                    return Err(PolyError::VarMismatch);
                }
                images.push(img.clone());
            } else {
                let j = out_vars.index_of(name).ok_or(PolyError::VarMismatch)?;
                images.push(SPoly {
                    vars: out_vars.clone(),
                    ctx: self.ctx.clone(),
                    terms: vec![(Monomial::var(j, 1), C::one(&self.ctx))],
                });
            }
        }
        Ok(self.substitute_map(out_vars, &self.ctx.clone(), &|c| c.clone(), &images))
    }

    /// Full evaluation at scalar values, by Horner accumulation one variable
    /// at a time (highest index first).
    pub fn eval<D: Coeff>(
        &self,
        out_ctx: &D::Ctx,
        coeff_map: &dyn Fn(&C) -> D,
        values: &[D],
    ) -> D {
        assert_eq!(values.len(), self.vars.len(), "one value per variable");
        let mut terms: Vec<(Monomial, D)> = self
            .terms
            .iter()
            .map(|(m, c)| (*m, coeff_map(c)))
            .collect();
        horner(&mut terms, self.vars.len(), values, out_ctx)
    }
}

fn pow_scalar<D: Coeff>(ctx: &D::Ctx, base: &D, mut k: u32) -> D {
    let mut result = D::one(ctx);
    let mut b = base.clone();
    while k > 0 {
        if k & 1 == 1 {
            result = D::mul(ctx, &result, &b);
        }
        k >>= 1;
        if k > 0 {
            b = D::mul(ctx, &b, &b);
        }
    }
    result
}

fn horner<D: Coeff>(
    terms: &mut [(Monomial, D)],
    nvars: usize,
    values: &[D],
    ctx: &D::Ctx,
) -> D {
    if terms.is_empty() {
        return D::zero(ctx);
    }
    if nvars == 0 {
        debug_assert_eq!(terms.len(), 1, "monomials are distinct");
        return terms[0].1.clone();
    }
    let v = nvars - 1;
    terms.sort_by(|a, b| b.0.exponent(v).cmp(&a.0.exponent(v)));
    let mut acc = D::zero(ctx);
    let mut prev: Option<u16> = None;
    let mut i = 0;
    while i < terms.len() {
        let e = terms[i].0.exponent(v);
        let j = terms[i..]
            .iter()
            .position(|(m, _)| m.exponent(v) != e)
            .map_or(terms.len(), |p| i + p);
        if let Some(pe) = prev {
            acc = D::mul(ctx, &acc, &pow_scalar(ctx, &values[v], (pe - e) as u32));
        }
        let part = horner(&mut terms[i..j], v, values, ctx);
        acc = D::add(ctx, &acc, &part);
        prev = Some(e);
        i = j;
    }
    if let Some(pe) = prev {
        if pe > 0 {
            acc = D::mul(ctx, &acc, &pow_scalar(ctx, &values[v], pe as u32));
        }
    }
    acc
}
