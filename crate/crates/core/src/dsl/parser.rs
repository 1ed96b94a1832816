use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::lexer::{lex, Tok, Token};
use super::{DslError, Equation, ErrorKind, Pos, Script, SpecValue, Specialization};
use crate::engine::{EngineError, Expr, Fact, FuncSymbol, SymbolKind};
use crate::field::Rational;

/// Parses a script. Symbols must be declared before use.
pub fn parse(src: &str) -> Result<Script, DslError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        symbols: BTreeMap::new(),
        script: Script::default(),
    };
    while p.peek() != &Tok::Eof {
        p.statement()?;
    }
    Ok(p.script)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    symbols: BTreeMap<String, FuncSymbol>,
    script: Script,
}

fn is_variable_name(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_lowercase())
        && s.chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn syntax(&self, expected: &str) -> DslError {
        DslError::new(
            ErrorKind::Syntax,
            self.pos(),
            format!("expected {expected}, found {}", self.peek()),
        )
    }

    fn semantic(pos: Pos, message: impl Into<String>) -> DslError {
        DslError::new(ErrorKind::Semantic, pos, message)
    }

    fn engine(pos: Pos, e: EngineError) -> DslError {
        Self::semantic(pos, e.to_string())
    }

    fn punct(&mut self, c: char) -> Result<(), DslError> {
        if self.peek() == &Tok::Punct(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(&format!("`{c}`")))
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        let hit = self.peek() == &Tok::Punct(c);
        if hit {
            self.bump();
        }
        hit
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), DslError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let pos = self.bump().pos;
                Ok((s, pos))
            }
            _ => Err(self.syntax(what)),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), DslError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => Err(self.syntax(&format!("`{kw}`"))),
        }
    }

    fn small_int(&mut self, what: &str) -> Result<(u32, Pos), DslError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                n.to_u32()
                    .map(|v| (v, pos))
                    .ok_or_else(|| Self::semantic(pos, format!("{what} {n} is too large")))
            }
            _ => Err(self.syntax(what)),
        }
    }

    fn statement(&mut self) -> Result<(), DslError> {
        let (kw, pos) = self.ident("a statement keyword")?;
        match kw.as_str() {
            "biadditive" => self.declare(SymbolKind::MultiAdditive(2)),
            "multiadditive" => {
                let (name, npos) = self.ident("a symbol name")?;
                self.keyword("arity")?;
                let (n, apos) = self.small_int("an arity")?;
                if n == 0 {
                    return Err(Self::semantic(apos, "arity must be at least 1"));
                }
                self.finish_declaration(name, npos, SymbolKind::MultiAdditive(n as usize))
            }
            "additive" => self.declare(SymbolKind::Additive),
            "hom" => self.declare(SymbolKind::Homomorphism),
            "power" => {
                let (name, npos) = self.ident("a symbol name")?;
                let (n, epos) = self.small_int("an exponent")?;
                if n == 0 {
                    return Err(Self::semantic(epos, "power exponent must be at least 1"));
                }
                self.finish_declaration(name, npos, SymbolKind::Power(n))
            }
            "scalar" => self.declare(SymbolKind::Scalar),
            "eq" => self.equation(),
            "fact" => self.fact(pos),
            "degree" => self.degree(),
            "specialize" => self.specialize(),
            other => Err(DslError::new(
                ErrorKind::Syntax,
                pos,
                format!("unknown statement `{other}`"),
            )),
        }
    }

    fn declare(&mut self, kind: SymbolKind) -> Result<(), DslError> {
        let (name, pos) = self.ident("a symbol name")?;
        self.finish_declaration(name, pos, kind)
    }

    fn finish_declaration(
        &mut self,
        name: String,
        pos: Pos,
        kind: SymbolKind,
    ) -> Result<(), DslError> {
        self.punct(';')?;
        if self.symbols.contains_key(&name) {
            return Err(Self::semantic(pos, format!("symbol {name} declared twice")));
        }
        let sym = FuncSymbol::new(name.clone(), kind);
        self.symbols.insert(name, sym.clone());
        self.script.symbols.push(sym);
        Ok(())
    }

    fn equation(&mut self) -> Result<(), DslError> {
        let (name, pos) = self.ident("an equation name")?;
        self.punct(':')?;
        let lhs = self.expr()?;
        self.punct('=')?;
        let rhs = self.expr()?;
        self.punct(';')?;
        if self.script.equation(&name).is_some() {
            return Err(Self::semantic(
                pos,
                format!("equation {name} defined twice"),
            ));
        }
        self.script.equations.push(Equation { name, lhs, rhs });
        Ok(())
    }

    fn fact(&mut self, pos: Pos) -> Result<(), DslError> {
        let name = match self.peek() {
            Tok::Ident(_) => Some(self.ident("a fact name")?.0),
            _ => None,
        };
        self.punct(':')?;
        let lhs = self.expr()?;
        self.punct('=')?;
        let rhs = self.expr()?;
        self.punct(';')?;
        if let Some(n) = &name {
            if self.script.facts.iter().any(|f| f.name() == Some(n)) {
                return Err(Self::semantic(pos, format!("fact {n} defined twice")));
            }
        }
        let fact = Fact::new(name.as_deref(), &lhs, rhs).map_err(|e| Self::engine(pos, e))?;
        self.script.facts.push(fact);
        Ok(())
    }

    fn degree(&mut self) -> Result<(), DslError> {
        let (name, pos) = self.ident("an equation name")?;
        let (n, npos) = self.small_int("a degree")?;
        self.punct(';')?;
        if self.script.equation(&name).is_none() {
            return Err(Self::semantic(pos, format!("no equation named {name}")));
        }
        if n == 0 {
            return Err(Self::semantic(npos, "degree must be positive"));
        }
        if self.script.degree(&name).is_some() {
            return Err(Self::semantic(pos, format!("degree of {name} given twice")));
        }
        self.script.degrees.push((name, n));
        Ok(())
    }

    fn specialize(&mut self) -> Result<(), DslError> {
        let (equation, pos) = self.ident("an equation name")?;
        if self.script.equation(&equation).is_none() {
            return Err(Self::semantic(pos, format!("no equation named {equation}")));
        }
        self.keyword("at")?;
        self.punct('(')?;
        let mut at = Vec::new();
        loop {
            let vpos = self.pos();
            match self.peek().clone() {
                Tok::Int(n) if n == BigInt::from(1) => {
                    self.bump();
                    at.push(SpecValue::One);
                }
                Tok::Ident(v) if is_variable_name(&v) && !self.symbols.contains_key(&v) => {
                    self.bump();
                    at.push(SpecValue::Var(v));
                }
                _ => {
                    return Err(DslError::new(
                        ErrorKind::Syntax,
                        vpos,
                        format!("expected `1` or a variable, found {}", self.peek()),
                    ))
                }
            }
            if !self.eat_punct(',') {
                break;
            }
        }
        self.punct(')')?;
        let mut with = Vec::new();
        if matches!(self.peek(), Tok::Ident(s) if s == "with") {
            self.bump();
            loop {
                let (name, npos) = self.ident("a fact name")?;
                if !self
                    .script
                    .facts
                    .iter()
                    .any(|f| f.name() == Some(name.as_str()))
                {
                    return Err(Self::semantic(npos, format!("no fact named {name}")));
                }
                with.push(name);
                if !self.eat_punct(',') {
                    break;
                }
            }
        }
        self.punct(';')?;
        self.script
            .specializations
            .push(Specialization { equation, at, with });
        Ok(())
    }

    /// expr := unary (('+' | '-') unary)*
    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_punct('+') {
                acc = &acc + &self.unary()?;
            } else if self.eat_punct('-') {
                acc = &acc - &self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    /// unary := '-' unary | product
    fn unary(&mut self) -> Result<Expr, DslError> {
        if self.eat_punct('-') {
            return Ok(-self.unary()?);
        }
        self.product()
    }

    /// product := power ('*' power)*
    fn product(&mut self) -> Result<Expr, DslError> {
        let mut acc = self.power()?;
        while self.eat_punct('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    /// power := primary ('^' INT)?
    fn power(&mut self) -> Result<Expr, DslError> {
        let base = self.primary()?;
        if self.eat_punct('^') {
            let (n, _) = self.small_int("an exponent")?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, DslError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::constant(Rational::from_integer(n)))
            }
            Tok::Ratio(p, q) => {
                self.bump();
                Ok(Expr::constant(Rational::new(p, q)))
            }
            Tok::Punct('(') => {
                self.bump();
                let e = self.expr()?;
                self.punct(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if self.peek() == &Tok::Punct('(') {
                    self.application(&name, pos)
                } else if let Some(sym) = self.symbols.get(&name) {
                    if sym.kind() == SymbolKind::Scalar {
                        sym.apply(Vec::new()).map_err(|e| Self::engine(pos, e))
                    } else {
                        Err(Self::semantic(
                            pos,
                            format!("symbol {name} needs arguments"),
                        ))
                    }
                } else if is_variable_name(&name) {
                    Ok(Expr::var(&name))
                } else {
                    Err(DslError::new(
                        ErrorKind::UndeclaredSymbol(name.clone()),
                        pos,
                        format!("undeclared symbol {name}"),
                    ))
                }
            }
            _ => Err(self.syntax("an expression")),
        }
    }

    fn application(&mut self, name: &str, pos: Pos) -> Result<Expr, DslError> {
        let sym = self.symbols.get(name).cloned().ok_or_else(|| {
            DslError::new(
                ErrorKind::UndeclaredSymbol(name.to_string()),
                pos,
                format!("undeclared symbol {name}"),
            )
        })?;
        self.punct('(')?;
        let mut args = Vec::new();
        if !self.eat_punct(')') {
            loop {
                args.push(self.expr()?);
                if !self.eat_punct(',') {
                    break;
                }
            }
            self.punct(')')?;
        }
        sym.apply(args).map_err(|e| Self::engine(pos, e))
    }
}
