//! Truncated formal power series in `t` over [`BiPoly`].
//!
//! A [`Series`] of order `N` keeps the ordinary coefficients `c_0..=c_N`.
//! The polynomial families are exponential generating functions, so the
//! `n`-th family member is `n! * c_n`; [`Series::egf_coefficient`] is the
//! single place where that conversion happens.
//!
//! Binary operations between series of different orders truncate to the
//! smaller order.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::{factorial, BiPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BiPoly>,
}

impl Series {
    /// Series from ordinary coefficients `c_0..=c_N`.
    ///
    /// Panics on an empty vector; every series has at least `c_0`.
    pub fn from_coeffs(coeffs: Vec<BiPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        Series { coeffs }
    }

    /// Series from EGF coefficients `a_n`, storing `a_n / n!`.
    pub fn from_egf(egf: Vec<BiPoly>) -> Self {
        Series::from_coeffs(
            egf.into_iter()
                .enumerate()
                .map(|(n, a)| a.scale(&factorial(n).recip().unwrap()))
                .collect(),
        )
    }

    pub fn zero(order: usize) -> Self {
        Series::from_coeffs(vec![BiPoly::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Series::constant(BiPoly::one(), order)
    }

    pub fn constant(c: BiPoly, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * t^k`, vanishing if `k > order`.
    pub fn monomial(c: BiPoly, k: usize, order: usize) -> Self {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Truncation bound `N`; coefficients `c_0..=c_N` are exact.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ordinary coefficient of `t^n`. Panics if `n > order`.
    pub fn coeff(&self, n: usize) -> &BiPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BiPoly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Series::from_coeffs(self.coeffs[..=order].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Applies `f` to every coefficient, e.g. a [`BiPoly::substitute`].
    pub fn map(&self, f: impl Fn(&BiPoly) -> BiPoly) -> Self {
        Series::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Multiplies by `t^r`, keeping the order.
    pub fn shift_mul(&self, r: usize) -> Self {
        let n = self.order();
        Series::from_coeffs(
            (0..=n)
                .map(|i| {
                    if i >= r {
                        self.coeffs[i - r].clone()
                    } else {
                        BiPoly::zero()
                    }
                })
                .collect(),
        )
    }

    /// Exact division by `t^r`; the result has order `N - r`.
    ///
    /// Fails unless `c_0 = ... = c_{r-1} = 0` and `r <= N`.
    pub fn shift_div(&self, r: usize) -> Result<Self> {
        if r > self.order() {
            return Err(Error::Domain(format!(
                "cannot divide a series of order {} by t^{r}",
                self.order()
            )));
        }
        if let Some(i) = self.coeffs[..r].iter().position(|c| !c.is_zero()) {
            return Err(Error::Domain(format!(
                "coefficient of t^{i} is nonzero, series is not divisible by t^{r}"
            )));
        }
        Ok(Series::from_coeffs(self.coeffs[r..].to_vec()))
    }

    /// Multiplicative inverse. `c_0` must be a nonzero rational constant.
    pub fn invert(&self) -> Result<Self> {
        let c0_inv = self
            .coeffs[0]
            .as_constant()
            .and_then(|c| c.recip())
            .ok_or_else(|| {
                Error::Domain(format!(
                    "constant term {} is not an invertible constant",
                    self.coeffs[0]
                ))
            })?;
        let neg_inv = -&c0_inv;
        let mut out = vec![BiPoly::constant(c0_inv)];
        for n in 1..=self.order() {
            let mut acc = BiPoly::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() {
                    acc = acc + &self.coeffs[i] * &out[n - i];
                }
            }
            out.push(acc.scale(&neg_inv));
        }
        Ok(Series::from_coeffs(out))
    }

    /// `outer(inner(t))` by Horner's scheme. `inner` must have zero constant
    /// term.
    pub fn compose(outer: &Series, inner: &Series) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Domain(format!(
                "inner series has nonzero constant term {}",
                inner.coeffs[0]
            )));
        }
        let order = outer.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Series::constant(outer.coeffs[order].clone(), order);
        for j in (0..order).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = &acc.coeffs[0] + &outer.coeffs[j];
        }
        Ok(acc)
    }

    /// The EGF coefficient `n! * c_n`.
    pub fn egf_coefficient(&self, n: usize) -> Result<BiPoly> {
        if n > self.order() {
            return Err(Error::Range {
                index: n,
                order: self.order(),
            });
        }
        Ok(self.coeffs[n].scale(&factorial(n)))
    }

    /// All EGF coefficients `a_0..=a_N`.
    pub fn egf_coefficients(&self) -> Vec<BiPoly> {
        (0..=self.order())
            .map(|n| self.coeffs[n].scale(&factorial(n)))
            .collect()
    }
}

/// `e^{xt}`: `c_n = x^n / n!`.
pub fn exp_xt(order: usize) -> Series {
    Series::from_egf((0..=order as u32).map(|n| BiPoly::x().pow(n)).collect())
}

/// `e^{at}` for a rational `a`.
pub fn exp_scaled(a: &Rational, order: usize) -> Series {
    let mut egf = vec![BiPoly::one()];
    let mut p = Rational::one();
    for _ in 1..=order {
        p = p * a;
        egf.push(BiPoly::constant(p.clone()));
    }
    Series::from_egf(egf)
}

/// `1 - e^{-t}`, the argument of the multiple logarithm in the families.
pub fn one_minus_exp_neg(order: usize) -> Series {
    let e = exp_scaled(&-Rational::one(), order);
    &Series::one(order) - &e
}

/// Degenerate exponential `e_λ^x(t) = (1 + λt)^{x/λ}`: `c_n = (x)_{n,λ} / n!`.
pub fn degenerate_exp(order: usize) -> Series {
    Series::from_egf(
        (0..=order as u32)
            .map(BiPoly::lambda_falling_factorial)
            .collect(),
    )
}

/// `e_λ(t) = e_λ^1(t)`.
pub fn degenerate_exp_one(order: usize) -> Series {
    let one = Rational::one();
    degenerate_exp(order).map(|p| p.substitute(Some(&one), None))
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, rhs: &'a Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::from_coeffs(
            (0..=order)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        )
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, rhs: &'a Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::from_coeffs(
            (0..=order)
                .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
                .collect(),
        )
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.map(|p| -p)
    }
}

/// Cauchy product truncated at the smaller order.
impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, rhs: &'a Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = vec![BiPoly::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                match (a.as_constant(), b.as_constant()) {
                    (Some(c), _) => out[i + j].add_scaled(b, &c),
                    (_, Some(c)) => out[i + j].add_scaled(a, &c),
                    _ => {
                        let prod = a * b;
                        out[i + j].add_scaled(&prod, &Rational::one());
                    }
                }
            }
        }
        Series::from_coeffs(out)
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        &self * &rhs
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        &self + &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn consts(cs: &[Rational]) -> Series {
        Series::from_coeffs(cs.iter().cloned().map(BiPoly::constant).collect())
    }

    #[test]
    fn arith_examples() {
        let a = consts(&[q(1, 1), q(1, 1), q(0, 1)]);
        let b = consts(&[q(1, 1), q(-1, 1), q(0, 1)]);
        assert_eq!(&a * &b, consts(&[q(1, 1), q(0, 1), q(-1, 1)]));

        let e = exp_xt(5);
        assert_eq!(&e + &-&e, Series::zero(5));

        let u = consts(&[q(0, 1), q(2, 1), q(3, 1), q(1, 1)]);
        let v = consts(&[q(0, 1), q(-1, 1), q(5, 1), q(7, 1)]);
        let p = &u * &v;
        assert!(p.coeff(0).is_zero() && p.coeff(1).is_zero());
        assert_eq!(p.coeff(2), &BiPoly::constant(q(-2, 1)));
    }

    #[test]
    fn mixed_orders_truncate() {
        let p = &exp_xt(3) * &exp_xt(6);
        assert_eq!(p.order(), 3);
        assert_eq!((&exp_xt(2) + &exp_xt(4)).order(), 2);
    }

    #[test]
    fn invert_examples() {
        // e^t + 1 at N = 2
        let a = &exp_scaled(&q(1, 1), 2) + &Series::one(2);
        assert_eq!(a.invert().unwrap(), consts(&[q(1, 2), q(-1, 4), q(0, 1)]));
        assert_eq!(Series::one(4).invert().unwrap(), Series::one(4));
        let b = &exp_scaled(&q(3, 1), 6) + &exp_xt(6);
        assert_eq!(b.invert().unwrap().invert().unwrap(), b);
    }

    #[test]
    fn invert_rejects_symbolic_or_zero_constant() {
        let s = Series::constant(BiPoly::x(), 3);
        assert!(matches!(s.invert(), Err(Error::Domain(_))));
        assert!(matches!(Series::zero(3).invert(), Err(Error::Domain(_))));
    }

    #[test]
    fn compose_log_with_one_minus_exp() {
        // Σ t^n / n is -log(1-t); composing with 1 - e^{-t} gives t.
        let n = 12;
        let mut li1 = vec![BiPoly::zero()];
        li1.extend((1..=n as i64).map(|k| BiPoly::constant(q(1, k))));
        let li1 = Series::from_coeffs(li1);
        let c = Series::compose(&li1, &one_minus_exp_neg(n)).unwrap();
        assert_eq!(c, Series::monomial(BiPoly::one(), 1, n));
    }

    #[test]
    fn compose_edge_cases() {
        let f = &exp_xt(5) + &exp_scaled(&q(2, 1), 5);
        let got = Series::compose(&f, &Series::zero(5)).unwrap();
        assert_eq!(got, Series::constant(f.coeff(0).clone(), 5));
        let t = Series::monomial(BiPoly::one(), 1, 5);
        assert_eq!(Series::compose(&f, &t).unwrap(), f);
        assert!(Series::compose(&f, &Series::one(5)).is_err());
    }

    #[test]
    fn shift_div_examples() {
        let t2 = Series::monomial(BiPoly::one(), 2, 4);
        assert_eq!(t2.shift_div(2).unwrap(), Series::one(2));
        let bad = consts(&[q(0, 1), q(1, 1), q(1, 1)]);
        assert!(matches!(bad.shift_div(2), Err(Error::Domain(_))));
        assert!(Series::zero(1).shift_div(3).is_err());
    }

    #[test]
    fn exp_and_degenerate_exp() {
        let e = exp_xt(2);
        assert_eq!(e.coeff(2), &BiPoly::x().pow(2).scale(&q(1, 2)));
        let zero = Rational::zero();
        assert_eq!(e.map(|p| p.substitute(Some(&zero), None)), Series::one(2));

        let d = degenerate_exp(6);
        assert_eq!(
            d.coeff(2),
            &BiPoly::lambda_falling_factorial(2).scale(&q(1, 2))
        );
        assert_eq!(d.map(|p| p.substitute(None, Some(&zero))), exp_xt(6));

        let one = Rational::one();
        let d11 = d.map(|p| p.substitute(Some(&one), Some(&one)));
        assert_eq!(d11, consts(&[q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)]));
    }

    #[test]
    fn exp_binomial_theorem() {
        // e^{xt} e^{λt} = e^{(x+λ)t}, using λ as the second indeterminate.
        let n = 4;
        let el = exp_xt(n).map(|p| {
            BiPoly::from_terms(p.terms().map(|((i, j), c)| ((j, i), c.clone())))
        });
        let lhs = &exp_xt(n) * &el;
        let sum = &BiPoly::x() + &BiPoly::lambda();
        for k in 0..=n {
            assert_eq!(lhs.egf_coefficient(k).unwrap(), sum.pow(k as u32));
        }
    }

    #[test]
    fn egf_examples() {
        assert_eq!(exp_xt(4).egf_coefficient(3).unwrap(), BiPoly::x().pow(3));
        assert_eq!(Series::one(0).egf_coefficient(0).unwrap(), BiPoly::one());
        let n = 3;
        let two = q(2, 1);
        let denom = &exp_scaled(&q(1, 1), n) + &Series::one(n);
        let gf = &denom.invert().unwrap().scale(&two) * &exp_xt(n);
        assert_eq!(
            gf.egf_coefficient(1).unwrap(),
            &BiPoly::x() - &BiPoly::constant(q(1, 2))
        );
        assert!(matches!(gf.egf_coefficient(4), Err(Error::Range { index: 4, order: 3 })));
    }

    fn small_series(order: usize, zero_const: bool) -> impl Strategy<Value = Series> {
        prop::collection::vec((-5i64..=5, 1i64..=3), order + 1).prop_map(move |v| {
            let mut cs: Vec<BiPoly> = v
                .into_iter()
                .map(|(n, d)| BiPoly::constant(q(n, d)))
                .collect();
            if zero_const {
                cs[0] = BiPoly::zero();
            }
            Series::from_coeffs(cs)
        })
    }

    fn symbolic_series(order: usize) -> impl Strategy<Value = Series> {
        prop::collection::vec(
            prop::collection::vec(((0u32..3, 0u32..3), -4i64..=4), 0..4),
            order,
        )
        .prop_flat_map(move |tail| {
            (1i64..=5, prop::bool::ANY).prop_map(move |(c0, sign)| {
                let c0 = if sign { c0 } else { -c0 };
                let mut cs = vec![BiPoly::constant(q(c0, 1))];
                cs.extend(tail.iter().map(|ts| {
                    BiPoly::from_terms(ts.iter().map(|&(m, c)| (m, q(c, 1))))
                }));
                Series::from_coeffs(cs)
            })
        })
    }

    proptest! {
        #[test]
        fn invert_is_inverse(a in symbolic_series(6)) {
            let inv = a.invert().unwrap();
            prop_assert_eq!(&a * &inv, Series::one(6));
        }

        #[test]
        fn compose_associates(
            f in small_series(7, false),
            g in small_series(7, true),
            h in small_series(7, true),
        ) {
            let left = Series::compose(&Series::compose(&f, &g).unwrap(), &h).unwrap();
            let right = Series::compose(&f, &Series::compose(&g, &h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn shift_div_undoes_shift_mul(a in symbolic_series(6), r in 0usize..4) {
            let mut padded = a.coeffs().to_vec();
            padded.resize(7 + r, BiPoly::zero());
            let shifted = &Series::monomial(BiPoly::one(), r, 6 + r) * &Series::from_coeffs(padded);
            prop_assert_eq!(shifted.shift_div(r).unwrap(), a);
        }
    }
}
