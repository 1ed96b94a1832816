//! Characterization derivations replayed step by step: symmetrize a
//! one-variable identity, specialize the symmetric form at tuples containing
//! `1`, solve for the bi-additive form and substitute it back.

use std::collections::BTreeMap;

use super::{
    diagonal, polarize_trace, solve_for, specialize, symmetrization_vars, symmetrize, EngineError,
    Expr, Fact, FactSet, FuncSymbol, Monomial,
};
use crate::field::rat;

pub fn b() -> FuncSymbol {
    FuncSymbol::biadditive("B")
}

pub fn a() -> FuncSymbol {
    FuncSymbol::additive("a")
}

pub fn phi1() -> FuncSymbol {
    FuncSymbol::hom("phi1")
}

pub fn phi2() -> FuncSymbol {
    FuncSymbol::hom("phi2")
}

pub fn x() -> Expr {
    Expr::var("x")
}

pub fn y() -> Expr {
    Expr::var("y")
}

pub fn z() -> Expr {
    Expr::var("z")
}

pub fn one() -> Expr {
    Expr::one()
}

pub fn app(s: &FuncSymbol, args: &[Expr]) -> Expr {
    s.apply(args.to_vec())
        .expect("arity matches the pipeline symbols")
}

/// Assignment `x1 ↦ values[0], …`; the value `"1"` stands for the constant.
pub fn at(values: &[&str]) -> BTreeMap<String, Expr> {
    symmetrization_vars(values.len())
        .into_iter()
        .zip(values)
        .map(|(v, s)| (v, if *s == "1" { Expr::one() } else { Expr::var(s) }))
        .collect()
}

fn fact(lhs: Expr, rhs: Expr) -> Fact {
    Fact::new(None, &lhs, rhs).expect("pipeline facts are well-formed")
}

fn facts(list: Vec<Fact>) -> FactSet {
    FactSet::new(list).expect("pipeline facts are distinct")
}

fn monomial(e: &Expr) -> Monomial {
    e.terms().next().expect("nonzero").0.clone()
}

/// `B(1,1) ↦ c`, then `B(x,1) ↦ a(x)`.
fn b_one_facts(c: i64) -> Vec<Fact> {
    vec![
        fact(app(&b(), &[one(), one()]), Expr::int(c)),
        fact(app(&b(), &[x(), one()]), app(&a(), &[x()])),
    ]
}

fn phi_unit_facts() -> Vec<Fact> {
    vec![
        fact(app(&phi1(), &[one()]), one()),
        fact(app(&phi2(), &[one()]), one()),
    ]
}

/// `B(x, y) ↦ form`.
fn b_form_fact(form: &Expr) -> Fact {
    fact(app(&b(), &[x(), y()]), form.clone())
}

/// Quadratic maps that are multiplicative: `q(xy) = q(x)q(y)`.
#[derive(Clone)]
pub struct MultPipeline {
    /// `B(x², x²) − B(x, x)²`.
    pub trace: Expr,
    /// Three times the symmetrization.
    pub b4: Expr,
    pub at_1111: Expr,
    pub at_x111: Expr,
    /// At `(x, x, 1, 1)` with `B(1,1) = 1` and `B(x,1) = a(x)`.
    pub at_xx11: Expr,
    /// Solved for `B(x, x)`.
    pub b_diagonal: Expr,
    /// Polarized: `B(x, y)`.
    pub b_form: Expr,
    /// The trace after substituting `b_form`.
    pub quartic: Expr,
    pub a4: Expr,
    /// `a4` at `(x, y, z, 1)` with `a(1) = 1`.
    pub three_variable: Expr,
}

impl MultPipeline {
    pub fn run() -> Result<Self, EngineError> {
        let trace = &app(&b(), &[x().pow(2), x().pow(2)]) - &app(&b(), &[x(), x()]).pow(2);
        let b4 = symmetrize(&trace, 4)?.scale(&rat(3));
        let none = FactSet::empty();
        let at_1111 = specialize(&b4, &at(&["1", "1", "1", "1"]), &none)?;
        let at_x111 = specialize(&b4, &at(&["x", "1", "1", "1"]), &none)?;
        let at_xx11 = specialize(&b4, &at(&["x", "x", "1", "1"]), &facts(b_one_facts(1)))?;
        let b_diagonal = solve_for(&at_xx11, &monomial(&app(&b(), &[x(), x()])))?;
        let b_form = polarize_trace(&b_diagonal, "x", "y")?;
        let quartic = facts(vec![b_form_fact(&b_form)]).rewrite(&trace)?;
        let a4 = symmetrize(&quartic, 4)?;
        let a_one = facts(vec![fact(app(&a(), &[one()]), one())]);
        let three_variable = specialize(&a4, &at(&["x", "y", "z", "1"]), &a_one)?;
        Ok(MultPipeline {
            trace,
            b4,
            at_1111,
            at_x111,
            at_xx11,
            b_diagonal,
            b_form,
            quartic,
            a4,
            three_variable,
        })
    }
}

/// Quadratic maps with `q(xy) = q(x)y² + x²q(y)`.
#[derive(Clone)]
pub struct AddPipeline {
    /// `B(x², x²) − 2x²B(x, x)`.
    pub trace: Expr,
    pub b4: Expr,
    pub at_1111: Expr,
    /// At `(x, y, 1, 1)` with `B(1,1) = 0` and `B(x,1) = a(x)`.
    pub at_xy11: Expr,
    /// Solved for `B(x, y)`.
    pub b_form: Expr,
    /// `B(x, x)`.
    pub q: Expr,
    /// `2x²q(x) − q(x²)` after substituting `b_form`.
    pub quartic: Expr,
}

impl AddPipeline {
    pub fn run() -> Result<Self, EngineError> {
        let trace = &app(&b(), &[x().pow(2), x().pow(2)])
            - &(&x().pow(2) * &app(&b(), &[x(), x()])).scale(&rat(2));
        let b4 = symmetrize(&trace, 4)?;
        let at_1111 = specialize(&b4, &at(&["1", "1", "1", "1"]), &FactSet::empty())?;
        let at_xy11 = specialize(&b4, &at(&["x", "y", "1", "1"]), &facts(b_one_facts(0)))?;
        let b_form = solve_for(&at_xy11, &monomial(&app(&b(), &[x(), y()])))?;
        let q = diagonal(&b_form, &["y".to_string()], "x")?;
        let quartic = facts(vec![b_form_fact(&b_form)]).rewrite(&-&trace)?;
        Ok(AddPipeline {
            trace,
            b4,
            at_1111,
            at_xy11,
            b_form,
            q,
            quartic,
        })
    }
}

/// Quadratic moment functions of degree one:
/// `q(xy) = φ₁(x)φ₂(x)q(y) + φ₁(y)φ₂(y)q(x)`.
#[derive(Clone)]
pub struct MomentPipeline {
    /// `B(x², x²) − 2φ₁(x)φ₂(x)B(x, x)`.
    pub trace: Expr,
    pub b4: Expr,
    pub at_1111: Expr,
    /// At `(x, 1, 1, 1)` with `φᵢ(1) = 1` and `B(1,1) = 0`.
    pub at_x111: Expr,
    /// At `(x, x, 1, 1)` with additionally `B(x,1) = a(x)`.
    pub at_xx11: Expr,
    /// Solved for `B(x, x)`.
    pub q: Expr,
    pub b_form: Expr,
    /// `2φ₁(x)φ₂(x)q(x) − q(x²)` after substituting `b_form`.
    pub quartic: Expr,
    pub a4: Expr,
    /// `a4` at `(1, 1, 1, 1)` with `φᵢ(1) = 1`.
    pub a4_at_1111: Expr,
    /// Twice `a4` at `(x, y, z, 1)` with `φᵢ(1) = 1` and `a(1) = 0`.
    pub spadesuit: Expr,
    pub spadesuit_diagonal: Expr,
}

impl MomentPipeline {
    pub fn run() -> Result<Self, EngineError> {
        let phis = &app(&phi1(), &[x()]) * &app(&phi2(), &[x()]);
        let trace = &app(&b(), &[x().pow(2), x().pow(2)])
            - &(&phis * &app(&b(), &[x(), x()])).scale(&rat(2));
        let b4 = symmetrize(&trace, 4)?;
        let at_1111 = specialize(&b4, &at(&["1", "1", "1", "1"]), &FactSet::empty())?;
        let mut unit = phi_unit_facts();
        unit.push(fact(app(&b(), &[one(), one()]), Expr::zero()));
        let at_x111 = specialize(&b4, &at(&["x", "1", "1", "1"]), &facts(unit))?;
        let mut unit = phi_unit_facts();
        unit.extend(b_one_facts(0));
        let at_xx11 = specialize(&b4, &at(&["x", "x", "1", "1"]), &facts(unit))?;
        let q = solve_for(&at_xx11, &monomial(&app(&b(), &[x(), x()])))?;
        let b_form = polarize_trace(&q, "x", "y")?;
        let quartic = facts(vec![b_form_fact(&b_form)]).rewrite(&-&trace)?;
        let a4 = symmetrize(&quartic, 4)?;
        let a4_at_1111 = specialize(&a4, &at(&["1", "1", "1", "1"]), &facts(phi_unit_facts()))?;
        let mut unit = phi_unit_facts();
        unit.push(fact(app(&a(), &[one()]), Expr::zero()));
        let spadesuit = specialize(&a4, &at(&["x", "y", "z", "1"]), &facts(unit))?.scale(&rat(2));
        let spadesuit_diagonal = diagonal(&spadesuit, &["y".to_string(), "z".to_string()], "x")?;
        Ok(MomentPipeline {
            trace,
            b4,
            at_1111,
            at_x111,
            at_xx11,
            q,
            b_form,
            quartic,
            a4,
            a4_at_1111,
            spadesuit,
            spadesuit_diagonal,
        })
    }
}

/// The identities derived for the additive function `a`, each
/// stated as `expr = 0`.
pub fn derive_quartic_constraints() -> Result<Vec<(&'static str, Expr)>, EngineError> {
    let mult = MultPipeline::run()?;
    let add = AddPipeline::run()?;
    let moment = MomentPipeline::run()?;
    Ok(vec![
        ("mult-quartic", mult.quartic),
        ("mult-a4", mult.a4),
        ("mult-three-variable", mult.three_variable),
        ("add-quartic", add.quartic),
        ("moment-quartic", moment.quartic),
        ("spadesuit", moment.spadesuit),
        ("spadesuit-diagonal", moment.spadesuit_diagonal),
    ])
}
