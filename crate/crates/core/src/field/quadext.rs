use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_rational, ArithOp, Carrier, Field, FieldError, Poly, Rational};

/// Element `a + b·√d` of ℚ(√d).
///
/// The extension parameter travels with each value. The operator impls panic
/// on mismatched `d`; use [`quadext_arith`] for the checked variant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExtElem {
    a: Rational,
    b: Rational,
    d: i64,
}

fn is_square_free(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut k: u64 = 2;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl QuadExtElem {
    pub fn new(a: Rational, b: Rational, d: i64) -> Result<Self, FieldError> {
        if d == 0 || d == 1 || !is_square_free(d) {
            return Err(FieldError::InvalidExtension(d));
        }
        Ok(QuadExtElem { a, b, d })
    }

    pub fn from_ints(a: i64, b: i64, d: i64) -> Result<Self, FieldError> {
        Self::new(
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
            d,
        )
    }

    fn with(&self, a: Rational, b: Rational) -> Self {
        QuadExtElem { a, b, d: self.d }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `a − b√d`.
    pub fn conj(&self) -> Self {
        self.with(self.a.clone(), -&self.b)
    }

    /// `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.d.into()) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.with(&self.a / &n, -&self.b / &n))
    }

    fn check_same(&self, rhs: &Self) -> Result<(), FieldError> {
        if self.d != rhs.d {
            Err(FieldError::ExtensionMismatch(self.d, rhs.d))
        } else {
            Ok(())
        }
    }

    fn assert_same(&self, rhs: &Self) {
        if let Err(e) = self.check_same(rhs) {
            panic!("{e}");
        }
    }
}

/// Checked arithmetic in ℚ(√d): mismatched extensions and division by zero
/// are reported as errors.
pub fn quadext_arith(
    op: ArithOp,
    x: &QuadExtElem,
    y: &QuadExtElem,
) -> Result<QuadExtElem, FieldError> {
    x.check_same(y)?;
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x * &y.inv()?,
    })
}

impl fmt::Debug for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadExtElem({self})")
    }
}

/// `a+b*sqrt(d)`, omitting zero parts.
impl fmt::Display for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("sqrt({})", self.d);
        if self.b.is_zero() {
            return f.write_str(&fmt_rational(&self.a));
        }
        if !self.a.is_zero() {
            f.write_str(&fmt_rational(&self.a))?;
            if self.b.is_positive() {
                f.write_str("+")?;
            }
        }
        if self.b.is_one() {
            f.write_str(&root)
        } else if (-&self.b).is_one() {
            write!(f, "-{root}")
        } else {
            write!(f, "{}*{root}", fmt_rational(&self.b))
        }
    }
}

impl Add for &QuadExtElem {
    type Output = QuadExtElem;
    fn add(self, rhs: &QuadExtElem) -> QuadExtElem {
        self.assert_same(rhs);
        self.with(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QuadExtElem {
    type Output = QuadExtElem;
    fn sub(self, rhs: &QuadExtElem) -> QuadExtElem {
        self.assert_same(rhs);
        self.with(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Neg for &QuadExtElem {
    type Output = QuadExtElem;
    fn neg(self) -> QuadExtElem {
        self.with(-&self.a, -&self.b)
    }
}

impl Mul for &QuadExtElem {
    type Output = QuadExtElem;
    fn mul(self, rhs: &QuadExtElem) -> QuadExtElem {
        self.assert_same(rhs);
        let d = Rational::from_integer(self.d.into());
        self.with(
            &self.a * &rhs.a + d * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadExtElem {
            type Output = QuadExtElem;
            fn $m(self, rhs: QuadExtElem) -> QuadExtElem {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QuadExtElem {
    type Output = QuadExtElem;
    fn neg(self) -> QuadExtElem {
        -&self
    }
}

impl Field for QuadExtElem {
    fn zero_like(&self) -> Self {
        self.with(Rational::zero(), Rational::zero())
    }

    fn one_like(&self) -> Self {
        self.with(Rational::one(), Rational::zero())
    }

    fn embed_like(&self, q: &Rational) -> Self {
        self.with(q.clone(), Rational::zero())
    }

    fn is_zero(&self) -> bool {
        QuadExtElem::is_zero(self)
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        quadext_arith(ArithOp::Div, self, rhs)
    }
}

impl Carrier for QuadExtElem {
    const NAME: &'static str = "Q(sqrt d)";

    fn formal_derivative(&self) -> Option<Self> {
        None
    }

    fn substitute(&self, _p: &Poly) -> Option<Self> {
        None
    }

    fn conjugate(&self) -> Option<Self> {
        Some(self.conj())
    }
}
