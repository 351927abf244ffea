//! Exact scalars and the coefficient ring.
//!
//! [`Rational`] is the base scalar. [`BiPoly`] is a polynomial in `x` and `λ`
//! over it; every family is built with both variables symbolic, and numeric
//! specializations go through [`BiPoly::substitute`].

mod bipoly;
mod rational;

pub use bipoly::{BiPoly, Monomial, Term};
pub use rational::Rational;

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, i| acc * Rational::from(i))
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(Rational::one(), |acc, i| {
        acc * Rational::from((n - i) as i64) / Rational::from((i + 1) as i64)
    })
}
