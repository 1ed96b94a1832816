use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ArithOp, Carrier, Field, FieldError, Poly, Rational};

/// Element of ℚ(t) in canonical form: coprime numerator and denominator with
/// a monic denominator. Zero is `0/1`, so structural equality is field
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num/den` and reduces it to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.leading().expect("nonzero denominator").recip();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    /// The generator `t`.
    pub fn t() -> Self {
        Self::from_poly(Poly::t())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    /// Formal derivative d/dt by the quotient rule.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(num, &self.den * &self.den)
    }

    /// `x(t) ↦ x(p(t))`.
    pub fn substitute(&self, p: &Poly) -> Self {
        let s = RatFunc::from_poly(p.clone());
        &poly_eval_subst(&self.num, &s)
            * &poly_eval_subst(&self.den, &s)
                .inv()
                .expect("substituting a nonconstant polynomial keeps the denominator nonzero")
    }

    pub fn pow(&self, exp: u32) -> Self {
        RatFunc {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }
}

/// Exact evaluation of `p` at `s` by Horner's rule in ℚ(t).
pub fn poly_eval_subst(p: &Poly, s: &RatFunc) -> RatFunc {
    p.coeffs().iter().rev().fold(RatFunc::zero(), |acc, c| {
        &(&acc * s) + &RatFunc::constant(c.clone())
    })
}

/// Checked arithmetic; division by zero is an error value.
pub fn ratfunc_arith(op: ArithOp, x: &RatFunc, y: &RatFunc) -> Result<RatFunc, FieldError> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// `(num)/(den)`, or just the numerator polynomial when the denominator is 1.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let lhs_cof = rhs.den.exact_div(&g);
        let rhs_cof = self.den.exact_div(&g);
        let num = &(&self.num * &lhs_cof) + &(&rhs.num * &rhs_cof);
        RatFunc::reduce(num, &self.den * &lhs_cof)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel before multiplying to keep degrees down
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        let lc = den.leading().expect("nonzero denominator").recip();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Field for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero()
    }

    fn one_like(&self) -> Self {
        RatFunc::one()
    }

    fn embed_like(&self, q: &Rational) -> Self {
        RatFunc::constant(q.clone())
    }

    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.checked_div(rhs)
    }

    fn pow(&self, exp: u32) -> Self {
        RatFunc::pow(self, exp)
    }
}

impl Carrier for RatFunc {
    const NAME: &'static str = "Q(t)";

    fn formal_derivative(&self) -> Option<Self> {
        Some(self.derivative())
    }

    fn substitute(&self, p: &Poly) -> Option<Self> {
        Some(RatFunc::substitute(self, p))
    }

    fn conjugate(&self) -> Option<Self> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn add_over_common_denominator() {
        let x = rf("(1)/(t)");
        let y = RatFunc::t();
        assert_eq!(&x + &y, rf("(t^2+1)/(t)"));
        assert_eq!((&x + &y).to_string(), "(t^2+1)/(t)");
    }

    #[test]
    fn multiplicative_identity() {
        let x = rf("(t^3-2*t+1)/(t^2+5)");
        assert_eq!(&x * &RatFunc::one(), x);
    }

    #[test]
    fn canonical_form_reduces_gcd() {
        // (2t+2)/(2t^2-2) = 2(t+1)/(2(t-1)(t+1)) = 1/(t-1)
        let x = RatFunc::new(Poly::from_ints(&[2, 2]), Poly::from_ints(&[-2, 0, 2])).unwrap();
        assert_eq!(x.num(), &Poly::one());
        assert_eq!(x.den(), &Poly::from_ints(&[-1, 1]));
        assert_eq!(x.to_string(), "(1)/(t-1)");
    }

    #[test]
    fn denominator_is_monic() {
        let x = RatFunc::new(Poly::from_ints(&[3]), Poly::from_ints(&[0, 6])).unwrap();
        assert_eq!(x.to_string(), "(1/2)/(t)");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let x = RatFunc::t();
        assert_eq!(
            ratfunc_arith(ArithOp::Div, &x, &RatFunc::zero()),
            Err(FieldError::DivisionByZero)
        );
        assert_eq!(
            RatFunc::new(Poly::one(), Poly::zero()),
            Err(FieldError::ZeroDenominator)
        );
    }

    #[test]
    fn horner_substitution() {
        let t2 = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(poly_eval_subst(&t2, &rf("t+1")), rf("t^2+2*t+1"));
        assert_eq!(
            poly_eval_subst(&Poly::one(), &rf("(t^5+3)/(t-7)")),
            RatFunc::one()
        );
        // t^3 - t at 1/t = (1 - t^2)/t^3
        let p = Poly::from_ints(&[0, -1, 0, 1]);
        assert_eq!(poly_eval_subst(&p, &rf("(1)/(t)")), rf("(-t^2+1)/(t^3)"));
    }

    #[test]
    fn quotient_rule() {
        assert_eq!(rf("t^3").derivative(), rf("3*t^2"));
        assert_eq!(rf("(1)/(t)").derivative(), rf("(-1)/(t^2)"));
    }

    #[test]
    fn substitution_homomorphism() {
        assert_eq!(
            rf("t+1").substitute(&Poly::from_ints(&[0, 0, 1])),
            rf("t^2+1")
        );
    }
}
