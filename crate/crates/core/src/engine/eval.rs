use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Atom, EngineError, Expr, Monomial};
use crate::field::Field;
use crate::maps::{MapError, UnaryMap, UnaryOp};

type MultiFn<F> = Arc<dyn Fn(&[F]) -> Result<F, MapError> + Send + Sync>;

/// Concrete values for the variables and symbols of an expression.
#[derive(Clone)]
pub struct Interp<F> {
    one: F,
    vars: BTreeMap<String, F>,
    unary: BTreeMap<String, UnaryMap<F>>,
    multi: BTreeMap<String, MultiFn<F>>,
    scalars: BTreeMap<String, F>,
}

impl<F: Field> Interp<F> {
    /// `one` fixes the carrier, for example the extension parameter of ℚ(√d).
    pub fn new(one: F) -> Self {
        Interp {
            one,
            vars: BTreeMap::new(),
            unary: BTreeMap::new(),
            multi: BTreeMap::new(),
            scalars: BTreeMap::new(),
        }
    }

    pub fn var(mut self, name: &str, value: F) -> Self {
        self.vars.insert(name.to_string(), value);
        self
    }

    pub fn set_var(&mut self, name: &str, value: F) {
        self.vars.insert(name.to_string(), value);
    }

    /// Binds an additive or homomorphism symbol.
    pub fn unary(mut self, name: &str, map: impl Into<UnaryMap<F>>) -> Self {
        self.unary.insert(name.to_string(), map.into());
        self
    }

    pub fn multi(
        mut self,
        name: &str,
        f: impl Fn(&[F]) -> Result<F, MapError> + Send + Sync + 'static,
    ) -> Self {
        self.multi.insert(name.to_string(), Arc::new(f));
        self
    }

    pub fn scalar(mut self, name: &str, value: F) -> Self {
        self.scalars.insert(name.to_string(), value);
        self
    }

    pub fn eval(&self, e: &Expr) -> Result<F, EngineError> {
        let mut acc = self.one.zero_like();
        for (m, c) in e.terms() {
            acc = acc + self.one.embed_like(c) * self.eval_monomial(m)?;
        }
        Ok(acc)
    }

    fn eval_monomial(&self, m: &Monomial) -> Result<F, EngineError> {
        let mut acc = self.one.clone();
        for (a, k) in m.factors() {
            acc = acc * self.eval_atom(a)?.pow(*k);
        }
        Ok(acc)
    }

    fn eval_atom(&self, a: &Atom) -> Result<F, EngineError> {
        let unbound = |n: &str| EngineError::Unbound(n.to_string());
        match a {
            Atom::Var(v) => self.vars.get(v).cloned().ok_or_else(|| unbound(v)),
            Atom::App { symbol, args } => {
                let name = symbol.name();
                if args.is_empty() {
                    return self.scalars.get(name).cloned().ok_or_else(|| unbound(name));
                }
                let vals = args
                    .iter()
                    .map(|m| self.eval_monomial(m))
                    .collect::<Result<Vec<_>, _>>()?;
                if let (Some(f), [x]) = (self.unary.get(name), vals.as_slice()) {
                    return Ok(f.eval(x)?);
                }
                let f = self.multi.get(name).ok_or_else(|| unbound(name))?;
                Ok(f(&vals)?)
            }
        }
    }
}
