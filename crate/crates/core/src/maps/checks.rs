//! Exact checkers for the functional equations. Each draws `samples` tuples
//! from an [`ElementSource`] and compares both sides as canonical field
//! elements; the first failing tuple becomes the report's witness.

use super::{MapError, QuadMap, UnaryOp};
use crate::field::{rat, ratio, Carrier, Field, Poly};
use crate::report::CheckReport;
use crate::sampling::ElementSource;

const VAR_NAMES: [&str; 4] = ["x", "y", "z", "w"];

fn describe<F: Field>(tuple: &[F]) -> String {
    tuple
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{}={v}", VAR_NAMES.get(i).copied().unwrap_or("v")))
        .collect::<Vec<_>>()
        .join(", ")
}

fn compare<F: Field>(label: &str, lhs: F, rhs: F) -> Option<String> {
    if lhs == rhs {
        None
    } else if label.is_empty() {
        Some(format!("lhs={lhs}, rhs={rhs}"))
    } else {
        Some(format!("{label}: lhs={lhs}, rhs={rhs}"))
    }
}

type Verdict = Result<Option<String>, MapError>;

fn run_check<F, S>(
    name: &str,
    samples: usize,
    arity: usize,
    nonzero: bool,
    source: &mut S,
    mut test: impl FnMut(&[F]) -> Verdict,
) -> CheckReport
where
    F: Field,
    S: ElementSource<F> + ?Sized,
{
    for _ in 0..samples {
        let tuple = if nonzero {
            source.nonzero_tuple(arity)
        } else {
            source.tuple(arity)
        };
        match test(&tuple) {
            Ok(None) => {}
            Ok(Some(detail)) => {
                return CheckReport::fail(name, samples, format!("{}: {detail}", describe(&tuple)))
            }
            Err(e) => {
                return CheckReport::fail(
                    name,
                    samples,
                    format!("{}: error: {e}", describe(&tuple)),
                )
            }
        }
    }
    CheckReport::pass(name, samples)
}

fn additivity<F: Field, M: UnaryOp<F> + ?Sized>(m: &M, x: &F, y: &F) -> Verdict {
    let lhs = m.eval(&(x.clone() + y.clone()))?;
    let rhs = m.eval(x)? + m.eval(y)?;
    Ok(compare("not additive", lhs, rhs))
}

/// `m(x + y) = m(x) + m(y)`.
pub fn check_additive<F, M, S>(m: &M, samples: usize, source: &mut S) -> CheckReport
where
    F: Field,
    M: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    run_check("additive", samples, 2, false, source, |v| {
        additivity(m, &v[0], &v[1])
    })
}

/// Additivity plus the Leibniz rule `m(xy) = m(x)y + x·m(y)`.
pub fn check_derivation<F, M, S>(m: &M, samples: usize, source: &mut S) -> CheckReport
where
    F: Field,
    M: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    run_check("derivation", samples, 2, false, source, |v| {
        let (x, y) = (&v[0], &v[1]);
        if let Some(w) = additivity(m, x, y)? {
            return Ok(Some(w));
        }
        let lhs = m.eval(&(x.clone() * y.clone()))?;
        let rhs = m.eval(x)? * y.clone() + x.clone() * m.eval(y)?;
        Ok(compare("", lhs, rhs))
    })
}

/// Additive and multiplicative.
pub fn check_homomorphism<F, M, S>(m: &M, samples: usize, source: &mut S) -> CheckReport
where
    F: Field,
    M: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    run_check("hom", samples, 2, false, source, |v| {
        let (x, y) = (&v[0], &v[1]);
        if let Some(w) = additivity(m, x, y)? {
            return Ok(Some(w));
        }
        let lhs = m.eval(&(x.clone() * y.clone()))?;
        Ok(compare("", lhs, m.eval(x)? * m.eval(y)?))
    })
}

/// Additivity, then the diagonal quartic characterizing second-order
/// derivations: `a(x⁴) − 6x²·a(x²) + 8x³·a(x) = 0`.
pub fn check_order_two_derivation<F, M, S>(m: &M, samples: usize, source: &mut S) -> CheckReport
where
    F: Field,
    M: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    run_check("order2", samples, 2, false, source, |v| {
        let (x, y) = (&v[0], &v[1]);
        if let Some(w) = additivity(m, x, y)? {
            return Ok(Some(w));
        }
        let x2 = x.pow(2);
        let lhs = m.eval(&x.pow(4))? - x.embed_like(&rat(6)) * x2.clone() * m.eval(&x2)?
            + x.embed_like(&rat(8)) * x.pow(3) * m.eval(x)?;
        Ok(compare("a(x^4)-6x^2a(x^2)+8x^3a(x)", lhs, x.zero_like()))
    })
}

fn eval_poly<F: Field>(p: &Poly, x: &F) -> F {
    p.coeffs()
        .iter()
        .rev()
        .fold(x.zero_like(), |acc, c| acc * x.clone() + x.embed_like(c))
}

/// `a(P(x)) = P′(x)·a(x)` for an additive `a`.
pub fn check_classical_derivation_identity<F, M, S>(
    m: &M,
    p: &Poly,
    samples: usize,
    source: &mut S,
) -> CheckReport
where
    F: Field,
    M: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    let dp = p.derivative();
    run_check("classical", samples, 2, false, source, |v| {
        let (x, y) = (&v[0], &v[1]);
        if let Some(w) = additivity(m, x, y)? {
            return Ok(Some(w));
        }
        let lhs = m.eval(&eval_poly(p, x))?;
        let rhs = eval_poly(&dp, x) * m.eval(x)?;
        Ok(compare("", lhs, rhs))
    })
}

/// `q(xy) = q(x)·q(y)` on nonzero pairs.
pub fn check_multiplicative<F, M, S>(q: &M, samples: usize, source: &mut S) -> CheckReport
where
    F: Field,
    M: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    run_check("mult", samples, 2, true, source, |v| {
        let (x, y) = (&v[0], &v[1]);
        Ok(compare(
            "",
            q.eval(&(x.clone() * y.clone()))?,
            q.eval(x)? * q.eval(y)?,
        ))
    })
}

/// `q(xy) = q(x)·y² + x²·q(y)` on nonzero pairs.
pub fn check_pi2_additive<F, M, S>(q: &M, samples: usize, source: &mut S) -> CheckReport
where
    F: Field,
    M: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    run_check("pi2", samples, 2, true, source, |v| {
        let (x, y) = (&v[0], &v[1]);
        let lhs = q.eval(&(x.clone() * y.clone()))?;
        let rhs = q.eval(x)? * y.pow(2) + x.pow(2) * q.eval(y)?;
        Ok(compare("", lhs, rhs))
    })
}

/// `q(xy) = φ(x)²·q(y) + q(x)·φ(y)²`.
pub fn check_twisted<F, Q, P, S>(q: &Q, phi: &P, samples: usize, source: &mut S) -> CheckReport
where
    F: Field,
    Q: UnaryOp<F> + ?Sized,
    P: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    run_check("twisted", samples, 2, true, source, |v| {
        let (x, y) = (&v[0], &v[1]);
        let lhs = q.eval(&(x.clone() * y.clone()))?;
        let rhs = phi.eval(x)?.pow(2) * q.eval(y)? + q.eval(x)? * phi.eval(y)?.pow(2);
        Ok(compare("", lhs, rhs))
    })
}

/// `q(xy) = φ₁(x)φ₂(x)·q(y) + φ₁(y)φ₂(y)·q(x)`.
pub fn check_moment1<F, Q, P, S>(
    q: &Q,
    phi1: &P,
    phi2: &P,
    samples: usize,
    source: &mut S,
) -> CheckReport
where
    F: Field,
    Q: UnaryOp<F> + ?Sized,
    P: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    run_check("moment1", samples, 2, true, source, |v| {
        let (x, y) = (&v[0], &v[1]);
        let lhs = q.eval(&(x.clone() * y.clone()))?;
        let rhs = phi1.eval(x)? * phi2.eval(x)? * q.eval(y)?
            + phi1.eval(y)? * phi2.eval(y)? * q.eval(x)?;
        Ok(compare("", lhs, rhs))
    })
}

/// Left-hand side of the three-variable identity satisfied by the additive
/// part of a quadratic moment function of degree one:
///
/// 2a(xyz) − Σ (φ₁+φ₂)(x)·a(yz) + Σ (φ₁(x)φ₂(y) + φ₂(x)φ₁(y))·a(z),
///
/// both sums running over the three ways of singling out one variable.
pub fn spadesuit_lhs<F, A, P>(a: &A, phi1: &P, phi2: &P, x: &F, y: &F, z: &F) -> Result<F, MapError>
where
    F: Field,
    A: UnaryOp<F> + ?Sized,
    P: UnaryOp<F> + ?Sized,
{
    let two = x.embed_like(&rat(2));
    let s = |u: &F| -> Result<F, MapError> { Ok(phi1.eval(u)? + phi2.eval(u)?) };
    let cross = |u: &F, v: &F| -> Result<F, MapError> {
        Ok(phi1.eval(u)? * phi2.eval(v)? + phi2.eval(u)? * phi1.eval(v)?)
    };
    let xy = x.clone() * y.clone();
    let xz = x.clone() * z.clone();
    let yz = y.clone() * z.clone();
    Ok(two * a.eval(&(xy.clone() * z.clone()))?
        - s(x)? * a.eval(&yz)?
        - s(y)? * a.eval(&xz)?
        - s(z)? * a.eval(&xy)?
        + cross(x, y)? * a.eval(z)?
        + cross(x, z)? * a.eval(y)?
        + cross(y, z)? * a.eval(x)?)
}

/// The three-variable identity on random triples, gated on `a(1) = 0` and
/// on additivity.
pub fn check_spadesuit<F, A, P, S>(
    a: &A,
    phi1: &P,
    phi2: &P,
    samples: usize,
    source: &mut S,
) -> CheckReport
where
    F: Field,
    A: UnaryOp<F> + ?Sized,
    P: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    const NAME: &str = "spadesuit";
    let probe = source.tuple(1).remove(0);
    let one = probe.one_like();
    match a.eval(&one) {
        Ok(v) if v.is_zero() => {}
        Ok(v) => {
            return CheckReport::fail(
                NAME,
                samples,
                format!("precondition a(1)=0 violated: a(1)={v}"),
            )
        }
        Err(e) => {
            return CheckReport::fail(NAME, samples, format!("precondition a(1)=0: error: {e}"))
        }
    }
    run_check(NAME, samples, 3, false, source, |v| {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        if let Some(w) = additivity(a, x, y)? {
            return Ok(Some(w));
        }
        let lhs = spadesuit_lhs(a, phi1, phi2, x, y, z)?;
        Ok(compare("", lhs, x.zero_like()))
    })
}

/// Diagonal `x = y = z` of the three-variable identity:
/// `2a(x³) − 3(φ₁+φ₂)(x)·a(x²) + 6φ₁(x)φ₂(x)·a(x) = 0`.
pub fn check_spadesuit_diagonal<F, A, P, S>(
    a: &A,
    phi1: &P,
    phi2: &P,
    samples: usize,
    source: &mut S,
) -> CheckReport
where
    F: Field,
    A: UnaryOp<F> + ?Sized,
    P: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    run_check("spadesuit-diagonal", samples, 1, false, source, |v| {
        let x = &v[0];
        let (p1, p2) = (phi1.eval(x)?, phi2.eval(x)?);
        let lhs = x.embed_like(&rat(2)) * a.eval(&x.pow(3))?
            - x.embed_like(&rat(3)) * (p1.clone() + p2.clone()) * a.eval(&x.pow(2))?
            + x.embed_like(&rat(6)) * p1 * p2 * a.eval(x)?;
        Ok(compare("", lhs, x.zero_like()))
    })
}

/// `q(x+y) + q(x−y) = 2q(x) + 2q(y)`.
pub fn check_parallelogram<F, M, S>(q: &M, samples: usize, source: &mut S) -> CheckReport
where
    F: Field,
    M: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    run_check("parallelogram", samples, 2, false, source, |v| {
        let (x, y) = (&v[0], &v[1]);
        let two = x.embed_like(&rat(2));
        let lhs = q.eval(&(x.clone() + y.clone()))? + q.eval(&(x.clone() - y.clone()))?;
        let rhs = two.clone() * q.eval(x)? + two * q.eval(y)?;
        Ok(compare("", lhs, rhs))
    })
}

/// The stored bi-additive form of a quadratic map: trace, symmetry,
/// additivity in the first slot and `q(x+y) − q(x) − q(y) = 2B(x, y)`.
pub fn check_polarization<F, S>(q: &QuadMap<F>, samples: usize, source: &mut S) -> CheckReport
where
    F: Carrier,
    S: ElementSource<F> + ?Sized,
{
    run_check("polarization", samples, 3, false, source, |v| {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        if let Some(w) = compare("trace", q.bilinear(x, x)?, q.eval(x)?) {
            return Ok(Some(w));
        }
        if let Some(w) = compare("symmetry", q.bilinear(x, y)?, q.bilinear(y, x)?) {
            return Ok(Some(w));
        }
        let lhs = q.bilinear(&(x.clone() + z.clone()), y)?;
        if let Some(w) = compare("bi-additivity", lhs, q.bilinear(x, y)? + q.bilinear(z, y)?) {
            return Ok(Some(w));
        }
        let diff = q.eval(&(x.clone() + y.clone()))? - q.eval(x)? - q.eval(y)?;
        Ok(compare(
            "difference",
            diff,
            x.embed_like(&rat(2)) * q.bilinear(x, y)?,
        ))
    })
}

/// With `a = (φ₁ + φ₂)/2`: `2a(x)² − a(x²) = φ₁(x)φ₂(x)`.
pub fn check_mult_closing<F, P, S>(
    phi1: &P,
    phi2: &P,
    samples: usize,
    source: &mut S,
) -> CheckReport
where
    F: Field,
    P: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    run_check("mult-closing", samples, 1, false, source, |v| {
        let x = &v[0];
        let half = x.embed_like(&ratio(1, 2));
        let a =
            |u: &F| -> Result<F, MapError> { Ok(half.clone() * (phi1.eval(u)? + phi2.eval(u)?)) };
        let lhs = x.embed_like(&rat(2)) * a(x)?.pow(2) - a(&x.pow(2))?;
        Ok(compare("", lhs, phi1.eval(x)? * phi2.eval(x)?))
    })
}

/// `−a(x⁴) + a(x²)² + 4a(x)²·a(x²) − 4a(x)⁴ = 0`.
pub fn check_mult_quartic<F, A, S>(a: &A, samples: usize, source: &mut S) -> CheckReport
where
    F: Field,
    A: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    run_check("mult-quartic", samples, 1, false, source, |v| {
        let x = &v[0];
        let (a1, a2) = (a.eval(x)?, a.eval(&x.pow(2))?);
        let lhs = -a.eval(&x.pow(4))? + a2.pow(2) + x.embed_like(&rat(4)) * a1.pow(2) * a2
            - x.embed_like(&rat(4)) * a1.pow(4);
        Ok(compare("", lhs, x.zero_like()))
    })
}

/// `−a(xyz) + a(x)a(yz) + a(y)a(xz) + (a(xy) − 2a(x)a(y))·a(z) = 0`.
pub fn check_mult_three_variable<F, A, S>(a: &A, samples: usize, source: &mut S) -> CheckReport
where
    F: Field,
    A: UnaryOp<F> + ?Sized,
    S: ElementSource<F> + ?Sized,
{
    run_check("mult-three-variable", samples, 3, false, source, |v| {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let two = x.embed_like(&rat(2));
        let (ax, ay, az) = (a.eval(x)?, a.eval(y)?, a.eval(z)?);
        let lhs = -a.eval(&(x.clone() * y.clone() * z.clone()))?
            + ax.clone() * a.eval(&(y.clone() * z.clone()))?
            + ay.clone() * a.eval(&(x.clone() * z.clone()))?
            + (a.eval(&(x.clone() * y.clone()))? - two * ax * ay) * az;
        Ok(compare("", lhs, x.zero_like()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{QuadExtElem, RatFunc};
    use crate::maps::{FieldMap, UnaryMap};
    use crate::report::Status;
    use crate::sampling::{QuadExtSource, RatFuncSource};

    const SAMPLES: usize = 20;

    fn src() -> RatFuncSource {
        RatFuncSource::seeded(0)
    }

    fn d() -> FieldMap<RatFunc> {
        FieldMap::FormalDerivative
    }

    fn dd() -> FieldMap<RatFunc> {
        FieldMap::derivative_power(2)
    }

    fn sub_t2() -> FieldMap<RatFunc> {
        FieldMap::substitution(Poly::from_ints(&[0, 0, 1])).unwrap()
    }

    fn assert_pass(r: &CheckReport) {
        assert_eq!(r.status, Status::Pass, "{r}");
        assert_eq!(r.samples, SAMPLES);
        assert!(r.witness.is_none());
    }

    fn assert_fail(r: &CheckReport) -> String {
        assert_eq!(r.status, Status::Fail, "{r}");
        r.witness.clone().expect("failure carries a witness")
    }

    #[test]
    fn derivation_checks() {
        assert_pass(&check_derivation(&d(), SAMPLES, &mut src()));
        assert_pass(&check_derivation(
            &FieldMap::<RatFunc>::Zero,
            SAMPLES,
            &mut src(),
        ));
        let w = assert_fail(&check_derivation(&dd(), SAMPLES, &mut src()));
        // (d∘d)(t²) = 2 while t·0 + 0·t = 0
        assert_eq!(w, "x=t, y=t: lhs=2, rhs=0");
    }

    #[test]
    fn order_two_checks() {
        assert_pass(&check_order_two_derivation(&dd(), SAMPLES, &mut src()));
        assert_pass(&check_order_two_derivation(&d(), SAMPLES, &mut src()));
        let combo = FieldMap::LinearCombo(vec![(RatFunc::t(), dd()), (RatFunc::from_int(3), d())]);
        assert_pass(&check_order_two_derivation(&combo, SAMPLES, &mut src()));
        let shifted = FieldMap::LinearCombo(vec![
            (RatFunc::one(), sub_t2()),
            (RatFunc::from_int(-1), FieldMap::Identity),
        ]);
        let w = assert_fail(&check_order_two_derivation(&shifted, SAMPLES, &mut src()));
        assert!(w.starts_with("x=t, y=t: a(x^4)"), "{w}");
        let d3 = FieldMap::<RatFunc>::derivative_power(3);
        assert_fail(&check_order_two_derivation(&d3, SAMPLES, &mut src()));
    }

    #[test]
    fn non_additive_map_is_rejected_first() {
        let square = UnaryMap::<RatFunc>::new("square", |x| Ok(x.clone() * x.clone()));
        let w = assert_fail(&check_order_two_derivation(&square, SAMPLES, &mut src()));
        assert!(w.contains("not additive"), "{w}");
    }

    #[test]
    fn classical_identity() {
        let p = Poly::from_ints(&[0, 0, 1]);
        assert_pass(&check_classical_derivation_identity(
            &d(),
            &p,
            SAMPLES,
            &mut src(),
        ));
        let zero = FieldMap::<RatFunc>::Zero;
        assert_pass(&check_classical_derivation_identity(
            &zero,
            &p,
            SAMPLES,
            &mut src(),
        ));
        let w = assert_fail(&check_classical_derivation_identity(
            &dd(),
            &p,
            SAMPLES,
            &mut src(),
        ));
        assert_eq!(w, "x=t, y=t: lhs=2, rhs=0");
        let cubic = Poly::from_ints(&[1, -1, 0, 1]);
        assert_pass(&check_classical_derivation_identity(
            &d(),
            &cubic,
            SAMPLES,
            &mut src(),
        ));
    }

    #[test]
    fn multiplicative_checks() {
        assert_pass(&check_multiplicative(
            &QuadMap::<RatFunc>::square(),
            SAMPLES,
            &mut src(),
        ));
        let norm = QuadMap::ProdOfHoms(FieldMap::Identity, FieldMap::QuadConjugation);
        let mut qs = QuadExtSource::seeded(2, 0).unwrap();
        let r = check_multiplicative(&norm, SAMPLES, &mut qs);
        assert_pass(&r);
        let w = assert_fail(&check_multiplicative(
            &QuadMap::DerivOfSquare(d()),
            SAMPLES,
            &mut src(),
        ));
        // d(t⁴) = 4t³ against d(t²)² = 4t²
        assert_eq!(w, "x=t, y=t: lhs=4*t^3, rhs=4*t^2");
    }

    #[test]
    fn norm_witness_by_hand() {
        let norm = QuadMap::ProdOfHoms(FieldMap::Identity, FieldMap::QuadConjugation);
        let x = QuadExtElem::from_ints(1, 1, 2).unwrap();
        let lhs = norm.eval(&(&x * &x)).unwrap();
        assert_eq!(lhs, x.one_like());
        assert_eq!(norm.eval(&x).unwrap().pow(2), x.one_like());
    }

    #[test]
    fn pi2_checks() {
        assert_pass(&check_pi2_additive(
            &QuadMap::DerivOfSquare(d()),
            SAMPLES,
            &mut src(),
        ));
        assert_pass(&check_pi2_additive(
            &QuadMap::SecondOrderForm(dd()),
            SAMPLES,
            &mut src(),
        ));
        let w = assert_fail(&check_pi2_additive(
            &QuadMap::<RatFunc>::square(),
            SAMPLES,
            &mut src(),
        ));
        assert_eq!(w, "x=t, y=t: lhs=t^4, rhs=2*t^4");
    }

    #[test]
    fn twisted_checks() {
        let q = QuadMap::TwistedSecondOrder(sub_t2(), d());
        assert_pass(&check_twisted(&q, &sub_t2(), SAMPLES, &mut src()));
        let q = QuadMap::TwistedSecondOrder(sub_t2(), dd());
        assert_pass(&check_twisted(&q, &sub_t2(), SAMPLES, &mut src()));
        let id = FieldMap::<RatFunc>::Identity;
        assert_pass(&check_twisted(
            &QuadMap::SecondOrderForm(d()),
            &id,
            SAMPLES,
            &mut src(),
        ));
        assert_fail(&check_twisted(
            &QuadMap::<RatFunc>::square(),
            &id,
            SAMPLES,
            &mut src(),
        ));
    }

    #[test]
    fn moment1_checks() {
        let id = FieldMap::<RatFunc>::Identity;
        let q = QuadMap::MomentForm(id.clone(), id.clone(), d());
        assert_pass(&check_moment1(&q, &id, &id, SAMPLES, &mut src()));
        assert_pass(&check_moment1(
            &QuadMap::zero(),
            &id,
            &id,
            SAMPLES,
            &mut src(),
        ));
        assert_fail(&check_moment1(
            &QuadMap::square(),
            &id,
            &id,
            SAMPLES,
            &mut src(),
        ));
        // a = φ∘d∘d with φ₁ = φ₂ = φ
        let phi = sub_t2();
        let a = phi.clone().compose(dd());
        let q = QuadMap::MomentForm(phi.clone(), phi.clone(), a);
        assert_pass(&check_moment1(&q, &phi, &phi, SAMPLES, &mut src()));
    }

    #[test]
    fn spadesuit_checks() {
        let id = FieldMap::<RatFunc>::Identity;
        assert_pass(&check_spadesuit(&d(), &id, &id, SAMPLES, &mut src()));
        assert_pass(&check_spadesuit(&dd(), &id, &id, SAMPLES, &mut src()));
        let w = assert_fail(&check_spadesuit(&id, &id, &id, SAMPLES, &mut src()));
        assert!(w.starts_with("precondition a(1)=0 violated"), "{w}");
        let phi = sub_t2();
        let a = phi.clone().compose(dd());
        assert_pass(&check_spadesuit(&a, &phi, &phi, SAMPLES, &mut src()));
        // a third-order operator violates it
        let d3 = FieldMap::<RatFunc>::derivative_power(3);
        assert_fail(&check_spadesuit(&d3, &id, &id, SAMPLES, &mut src()));
    }

    #[test]
    fn spadesuit_diagonal_hand_values() {
        // x = t, a = d: d(t³) − 3t·d(t²) + 3t²·d(t) = 3t² − 6t² + 3t² = 0
        // x = t, a = d∘d: 6t − 3t·2 + 0 = 0
        let id = FieldMap::<RatFunc>::Identity;
        assert_pass(&check_spadesuit_diagonal(
            &d(),
            &id,
            &id,
            SAMPLES,
            &mut src(),
        ));
        assert_pass(&check_spadesuit_diagonal(
            &dd(),
            &id,
            &id,
            SAMPLES,
            &mut src(),
        ));
        // the coefficient pattern 1, −6, 3 does not vanish for a = d at x = t
        let t = RatFunc::t();
        let printed = d().apply(&t.pow(3)).unwrap()
            - RatFunc::from_int(6) * t.clone() * d().apply(&t.pow(2)).unwrap()
            + RatFunc::from_int(3) * t.pow(2) * d().apply(&t).unwrap();
        assert!(!printed.is_zero());
    }

    #[test]
    fn parallelogram_and_polarization() {
        let maps = vec![
            QuadMap::ProdOfHoms(FieldMap::Identity, sub_t2()),
            QuadMap::DerivOfSquare(d()),
            QuadMap::SecondOrderForm(dd()),
            QuadMap::TwistedSecondOrder(sub_t2(), d()),
            QuadMap::MomentForm(sub_t2(), FieldMap::Identity, dd()),
        ];
        for q in &maps {
            assert_pass(&check_parallelogram(q, SAMPLES, &mut src()));
            assert_pass(&check_polarization(q, SAMPLES, &mut src()));
        }
        let cube = UnaryMap::<RatFunc>::new("cube", |x| Ok(x.pow(3)));
        assert_fail(&check_parallelogram(&cube, SAMPLES, &mut src()));
    }

    #[test]
    fn mult_identities() {
        let id = FieldMap::<RatFunc>::Identity;
        let phi = sub_t2();
        assert_pass(&check_mult_closing(&id, &phi, SAMPLES, &mut src()));
        assert_pass(&check_mult_three_variable(&phi, SAMPLES, &mut src()));
        assert_pass(&check_mult_quartic(&phi, SAMPLES, &mut src()));
        let half_sum = UnaryMap::<RatFunc>::new("(id+sub)/2", move |x| {
            Ok(RatFunc::constant(ratio(1, 2)) * (x.clone() + phi.apply(x)?))
        });
        assert_pass(&check_mult_quartic(&half_sum, SAMPLES, &mut src()));
        assert_pass(&check_mult_three_variable(&half_sum, SAMPLES, &mut src()));
        assert_fail(&check_mult_three_variable(&d(), SAMPLES, &mut src()));
    }

    #[test]
    fn homomorphism_check() {
        assert_pass(&check_homomorphism(&sub_t2(), SAMPLES, &mut src()));
        assert_fail(&check_homomorphism(&d(), SAMPLES, &mut src()));
        let mut qs = QuadExtSource::seeded(2, 0).unwrap();
        assert_pass(&check_homomorphism(
            &FieldMap::QuadConjugation,
            SAMPLES,
            &mut qs,
        ));
    }
}
