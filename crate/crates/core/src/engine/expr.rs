use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::EngineError;
use crate::field::{fmt_rational, Rational};

/// How an uninterpreted function symbol interacts with `+` and `·`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    /// Symmetric and additive in each of its `n` arguments.
    MultiAdditive(usize),
    Additive,
    /// Additive and multiplicative.
    Homomorphism,
    /// `πₙ(x) = xⁿ`; applications expand immediately.
    Power(u32),
    /// A constant unknown; takes no arguments.
    Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuncSymbol {
    name: String,
    kind: SymbolKind,
}

impl FuncSymbol {
    pub fn new(name: impl Into<String>, kind: SymbolKind) -> Self {
        FuncSymbol {
            name: name.into(),
            kind,
        }
    }

    pub fn biadditive(name: &str) -> Self {
        Self::new(name, SymbolKind::MultiAdditive(2))
    }

    pub fn multiadditive(name: &str, arity: usize) -> Self {
        Self::new(name, SymbolKind::MultiAdditive(arity))
    }

    pub fn additive(name: &str) -> Self {
        Self::new(name, SymbolKind::Additive)
    }

    pub fn hom(name: &str) -> Self {
        Self::new(name, SymbolKind::Homomorphism)
    }

    pub fn power(name: &str, n: u32) -> Self {
        Self::new(name, SymbolKind::Power(n))
    }

    pub fn scalar(name: &str) -> Self {
        Self::new(name, SymbolKind::Scalar)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        match self.kind {
            SymbolKind::MultiAdditive(n) => n,
            SymbolKind::Scalar => 0,
            _ => 1,
        }
    }

    /// Applies the symbol and expands by its laws.
    pub fn apply(&self, args: Vec<Expr>) -> Result<Expr, EngineError> {
        if args.len() != self.arity() {
            return Err(EngineError::Arity {
                symbol: self.name.clone(),
                expected: self.arity(),
                got: args.len(),
            });
        }
        Ok(match self.kind {
            SymbolKind::Scalar => Expr::from_atom(Atom::App {
                symbol: self.clone(),
                args: Vec::new(),
            }),
            SymbolKind::Power(n) => args[0].pow(n),
            SymbolKind::Additive => {
                let mut out = Expr::zero();
                for (m, c) in args[0].terms() {
                    out.add_term(self.wrap(vec![m.clone()]), c.clone());
                }
                out
            }
            SymbolKind::Homomorphism => {
                let mut out = Expr::zero();
                for (m, c) in args[0].terms() {
                    let image = if m.is_one() {
                        self.wrap(vec![Monomial::one()])
                    } else {
                        let mut factors = BTreeMap::new();
                        for (atom, e) in m.factors() {
                            let arg = Monomial::from_atom(atom.clone());
                            *factors.entry(self.atom(vec![arg])).or_insert(0) += *e;
                        }
                        Monomial(factors)
                    };
                    out.add_term(image, c.clone());
                }
                out
            }
            SymbolKind::MultiAdditive(_) => {
                let mut partial: Vec<(Vec<Monomial>, Rational)> =
                    vec![(Vec::new(), Rational::one())];
                for arg in &args {
                    let mut next = Vec::with_capacity(partial.len() * arg.len());
                    for (prefix, pc) in &partial {
                        for (m, c) in arg.terms() {
                            let mut v = prefix.clone();
                            v.push(m.clone());
                            next.push((v, pc * c));
                        }
                    }
                    partial = next;
                }
                let mut out = Expr::zero();
                for (mut ms, c) in partial {
                    ms.sort();
                    out.add_term(self.wrap(ms), c);
                }
                out
            }
        })
    }

    fn atom(&self, args: Vec<Monomial>) -> Atom {
        Atom::App {
            symbol: self.clone(),
            args,
        }
    }

    fn wrap(&self, args: Vec<Monomial>) -> Monomial {
        Monomial::from_atom(self.atom(args))
    }
}

/// A variable or an application whose arguments are products.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Var(String),
    App {
        symbol: FuncSymbol,
        args: Vec<Monomial>,
    },
}

impl Atom {
    pub fn var(name: &str) -> Self {
        Atom::Var(name.to_string())
    }

    /// Total degree in `v`, counted through nested arguments.
    pub fn var_degree(&self, v: &str) -> u32 {
        match self {
            Atom::Var(name) => u32::from(name == v),
            Atom::App { args, .. } => args.iter().map(|m| m.var_degree(v)).sum(),
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Atom::Var(name) => {
                out.insert(name.clone());
            }
            Atom::App { args, .. } => args.iter().for_each(|m| m.collect_vars(out)),
        }
    }

    fn collect_symbols(&self, out: &mut BTreeSet<FuncSymbol>) {
        if let Atom::App { symbol, args } = self {
            out.insert(symbol.clone());
            args.iter().for_each(|m| m.collect_symbols(out));
        }
    }

    pub(crate) fn substitute(&self, map: &BTreeMap<String, Expr>) -> Result<Expr, EngineError> {
        match self {
            Atom::Var(name) => Ok(map
                .get(name)
                .cloned()
                .unwrap_or_else(|| Expr::from_atom(self.clone()))),
            Atom::App { symbol, args } => {
                let args = args
                    .iter()
                    .map(|m| m.substitute(map))
                    .collect::<Result<Vec<_>, _>>()?;
                symbol.apply(args)
            }
        }
    }
}

/// Commutative product of atoms with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Atom, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn from_atom(atom: Atom) -> Self {
        Monomial(BTreeMap::from([(atom, 1)]))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Atom, &u32)> {
        self.0.iter()
    }

    /// The single atom of a monomial of the form `atom¹`.
    pub fn as_atom(&self) -> Option<&Atom> {
        match self.0.iter().next() {
            Some((a, 1)) if self.0.len() == 1 => Some(a),
            _ => None,
        }
    }

    pub fn var_degree(&self, v: &str) -> u32 {
        self.0.iter().map(|(a, e)| a.var_degree(v) * e).sum()
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        self.0.keys().for_each(|a| a.collect_vars(out));
    }

    fn collect_symbols(&self, out: &mut BTreeSet<FuncSymbol>) {
        self.0.keys().for_each(|a| a.collect_symbols(out));
    }

    pub(crate) fn substitute(&self, map: &BTreeMap<String, Expr>) -> Result<Expr, EngineError> {
        let mut out = Expr::one();
        for (atom, e) in &self.0 {
            out = &out * &atom.substitute(map)?.pow(*e);
        }
        Ok(out)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut f = self.0.clone();
        for (a, e) in &other.0 {
            *f.entry(a.clone()).or_insert(0) += e;
        }
        Monomial(f)
    }
}

/// A generalized polynomial in normal form: a finite sum of rational
/// multiples of distinct monomials, none with a zero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Expr(BTreeMap<Monomial, Rational>);

impl Expr {
    pub fn zero() -> Self {
        Expr(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut e = Expr::zero();
        e.add_term(Monomial::one(), c);
        e
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Self {
        Self::from_atom(Atom::var(name))
    }

    pub fn from_atom(atom: Atom) -> Self {
        Expr::from_monomial(Monomial::from_atom(atom))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Expr(BTreeMap::from([(m, Rational::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr(self.0.iter().map(|(m, k)| (m.clone(), k * c)).collect())
    }

    pub fn pow(&self, n: u32) -> Expr {
        let mut out = Expr::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.0.keys().for_each(|m| m.collect_vars(&mut out));
        out
    }

    pub fn symbols(&self) -> BTreeSet<FuncSymbol> {
        let mut out = BTreeSet::new();
        self.0.keys().for_each(|m| m.collect_symbols(&mut out));
        out
    }

    /// Simultaneous substitution of variables, followed by re-expansion.
    pub fn substitute(&self, map: &BTreeMap<String, Expr>) -> Result<Expr, EngineError> {
        let mut out = Expr::zero();
        for (m, c) in &self.0 {
            out = &out + &m.substitute(map)?.scale(c);
        }
        Ok(out)
    }

    pub fn substitute_var(&self, var: &str, value: &Expr) -> Result<Expr, EngineError> {
        self.substitute(&BTreeMap::from([(var.to_string(), value.clone())]))
    }

    /// Re-expands every application. Normal forms are fixed points.
    pub fn expand(&self) -> Result<Expr, EngineError> {
        self.substitute(&BTreeMap::new())
    }

    /// Keeps the terms for which `keep` holds.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Expr {
        Expr(
            self.0
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }
}

impl From<Rational> for Expr {
    fn from(c: Rational) -> Self {
        Expr::constant(c)
    }
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        for (m, c) in &rhs.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        for (m, c) in &rhs.0 {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &rhs.0 {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Var(v) => f.write_str(v),
            Atom::App { symbol, args } if symbol.kind == SymbolKind::Scalar => {
                debug_assert!(args.is_empty());
                f.write_str(&symbol.name)
            }
            Atom::App { symbol, args } => {
                write!(f, "{}(", symbol.name)?;
                for (i, m) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (a, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{a}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.0.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratio;

    fn b() -> FuncSymbol {
        FuncSymbol::biadditive("B")
    }

    fn x() -> Expr {
        Expr::var("x")
    }

    fn y() -> Expr {
        Expr::var("y")
    }

    #[test]
    fn biadditive_distributes() {
        let z = Expr::var("z");
        let lhs = b().apply(vec![&x() + &y(), z.clone()]).unwrap();
        let rhs = &b().apply(vec![x(), z.clone()]).unwrap() + &b().apply(vec![y(), z]).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "B(x,z) + B(y,z)");
    }

    #[test]
    fn scalars_are_pulled_out() {
        let e = b().apply(vec![x().scale(&ratio(2, 1)), y()]).unwrap();
        assert_eq!(e.to_string(), "2*B(x,y)");
        let e = b().apply(vec![y(), x()]).unwrap();
        assert_eq!(e.to_string(), "B(x,y)");
    }

    #[test]
    fn homomorphism_is_multiplicative() {
        let phi = FuncSymbol::hom("phi");
        let e = &phi.apply(vec![&x() * &y()]).unwrap() * &phi.apply(vec![x()]).unwrap();
        assert_eq!(e.to_string(), "phi(x)^2*phi(y)");
        let one = phi.apply(vec![Expr::int(3)]).unwrap();
        assert_eq!(one.to_string(), "3*phi(1)");
    }

    #[test]
    fn power_symbol_expands() {
        let pi2 = FuncSymbol::power("pi2", 2);
        let e = pi2.apply(vec![&x() + &y()]).unwrap();
        assert_eq!(e.to_string(), "2*x*y + x^2 + y^2");
    }

    #[test]
    fn arity_is_checked() {
        assert!(matches!(
            b().apply(vec![x()]),
            Err(EngineError::Arity { .. })
        ));
    }

    #[test]
    fn rendering() {
        let a = FuncSymbol::additive("a");
        let e = &a.apply(vec![&x() * &x()]).unwrap().scale(&ratio(-1, 3)) + &Expr::int(1);
        assert_eq!(e.to_string(), "1 - 1/3*a(x^2)");
        assert_eq!(Expr::zero().to_string(), "0");
        let c = FuncSymbol::scalar("c").apply(vec![]).unwrap();
        assert_eq!((&c * &x()).to_string(), "x*c");
    }

    #[test]
    fn nested_degrees() {
        let a = FuncSymbol::additive("a");
        let inner = b().apply(vec![&x() * &y(), x()]).unwrap();
        let e = a.apply(vec![inner]).unwrap();
        let (m, _) = e.terms().next().unwrap();
        assert_eq!(m.var_degree("x"), 2);
        assert_eq!(m.var_degree("y"), 1);
    }
}
