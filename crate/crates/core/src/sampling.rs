//! Seeded sources of sample tuples for the identity checkers.
//!
//! The checkers themselves are pure; all randomness enters through an
//! [`ElementSource`]. Sources built from the same seed yield the same tuples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, FieldError, Poly, QuadExtElem, RatFunc, Rational};

/// Maximum degree of generated numerators and denominators.
pub const MAX_DEGREE: usize = 4;
/// Maximum absolute value of generated integer coefficients.
pub const MAX_COEFF: i64 = 10;

pub trait ElementSource<F> {
    /// Next tuple of `arity` elements.
    fn tuple(&mut self, arity: usize) -> Vec<F>;

    /// Next tuple whose entries are all nonzero.
    fn nonzero_tuple(&mut self, arity: usize) -> Vec<F>
    where
        F: Field,
    {
        loop {
            let t = self.tuple(arity);
            if t.iter().all(|x| !x.is_zero()) {
                return t;
            }
        }
    }
}

/// Hands out each probe as a constant tuple `(p, p, …)` before switching to
/// random draws, so the first witnesses are easy to read.
struct ProbeQueue<F> {
    probes: Vec<F>,
    next: usize,
}

impl<F: Clone> ProbeQueue<F> {
    fn next_tuple(&mut self, arity: usize) -> Option<Vec<F>> {
        let p = self.probes.get(self.next)?.clone();
        self.next += 1;
        Some(vec![p; arity])
    }
}

pub fn random_poly<R: Rng + ?Sized>(rng: &mut R) -> Poly {
    let deg = rng.gen_range(0..=MAX_DEGREE);
    Poly::from_ints(
        &(0..=deg)
            .map(|_| rng.gen_range(-MAX_COEFF..=MAX_COEFF))
            .collect::<Vec<_>>(),
    )
}

/// Random element of ℚ(t): numerator and denominator of degree at most
/// [`MAX_DEGREE`] with integer coefficients bounded by [`MAX_COEFF`].
pub fn random_ratfunc<R: Rng + ?Sized>(rng: &mut R) -> RatFunc {
    let num = random_poly(rng);
    loop {
        let den = random_poly(rng);
        if let Ok(x) = RatFunc::new(num.clone(), den) {
            return x;
        }
    }
}

pub fn random_quadext<R: Rng + ?Sized>(rng: &mut R, d: i64) -> Result<QuadExtElem, FieldError> {
    let part = |rng: &mut R| {
        let n = rng.gen_range(-MAX_COEFF..=MAX_COEFF);
        let m = rng.gen_range(1..=MAX_COEFF);
        Rational::new(n.into(), m.into())
    };
    let a = part(rng);
    let b = part(rng);
    QuadExtElem::new(a, b, d)
}

pub struct RatFuncSource {
    rng: ChaCha8Rng,
    probes: ProbeQueue<RatFunc>,
}

impl RatFuncSource {
    /// Probes `t`, `t+1`, `1/t`, then seeded random elements.
    pub fn seeded(seed: u64) -> Self {
        let probes = vec![
            RatFunc::t(),
            RatFunc::from_poly(Poly::from_ints(&[1, 1])),
            RatFunc::t().inv().expect("t is nonzero"),
        ];
        RatFuncSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
            probes: ProbeQueue { probes, next: 0 },
        }
    }

    /// Random draws only.
    pub fn random_only(seed: u64) -> Self {
        RatFuncSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
            probes: ProbeQueue {
                probes: Vec::new(),
                next: 0,
            },
        }
    }
}

impl ElementSource<RatFunc> for RatFuncSource {
    fn tuple(&mut self, arity: usize) -> Vec<RatFunc> {
        if let Some(t) = self.probes.next_tuple(arity) {
            return t;
        }
        (0..arity).map(|_| random_ratfunc(&mut self.rng)).collect()
    }
}

pub struct QuadExtSource {
    d: i64,
    rng: ChaCha8Rng,
    probes: ProbeQueue<QuadExtElem>,
}

impl QuadExtSource {
    /// Probes `1+√d`, `2−√d`, then seeded random elements.
    pub fn seeded(d: i64, seed: u64) -> Result<Self, FieldError> {
        let probes = vec![
            QuadExtElem::from_ints(1, 1, d)?,
            QuadExtElem::from_ints(2, -1, d)?,
        ];
        Ok(QuadExtSource {
            d,
            rng: ChaCha8Rng::seed_from_u64(seed),
            probes: ProbeQueue { probes, next: 0 },
        })
    }
}

impl ElementSource<QuadExtElem> for QuadExtSource {
    fn tuple(&mut self, arity: usize) -> Vec<QuadExtElem> {
        if let Some(t) = self.probes.next_tuple(arity) {
            return t;
        }
        (0..arity)
            .map(|_| random_quadext(&mut self.rng, self.d).expect("d validated at construction"))
            .collect()
    }
}
