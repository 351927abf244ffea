use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;

/// Exponent pair `(x-degree, λ-degree)`.
pub type Monomial = (u32, u32);

/// Polynomial in the two indeterminates `x` and `λ` with rational
/// coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

/// One entry of the serialized term list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub xdeg: u32,
    pub ldeg: u32,
    pub coef: Rational,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        BiPoly::monomial(Rational::one(), 1, 0)
    }

    /// The indeterminate `λ`.
    pub fn lambda() -> Self {
        BiPoly::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, xdeg: u32, ldeg: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((xdeg, ldeg), c);
        }
        BiPoly { terms }
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        BiPoly { terms: map }
    }

    /// λ-falling factorial `(x)_{n,λ} = x(x-λ)...(x-(n-1)λ)`, with
    /// `(x)_{0,λ} = 1`.
    pub fn lambda_falling_factorial(n: u32) -> Self {
        (0..n).fold(BiPoly::one(), |acc, i| {
            let factor = BiPoly::x() - BiPoly::lambda().scale(&Rational::from(i as i64));
            &acc * &factor
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no term involves `x` or `λ`.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&m| m == (0, 0))
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coefficient(0, 0))
        } else {
            None
        }
    }

    pub fn coefficient(&self, xdeg: u32, ldeg: u32) -> Rational {
        self.terms.get(&(xdeg, ldeg)).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending `(xdeg, ldeg)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest power of `x`, `None` for the zero polynomial.
    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(x, _)| x).max()
    }

    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, l)| l).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&m, v)| (m, v * c)).collect(),
        }
    }

    /// `self += c * other`, the inner step of every convolution here.
    pub fn add_scaled(&mut self, other: &BiPoly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (&m, v) in &other.terms {
            let entry = self.terms.entry(m).or_default();
            *entry += v * c;
            if entry.is_zero() {
                self.terms.remove(&m);
            }
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(BiPoly::one(), |acc, _| &acc * self)
    }

    /// Partial evaluation: `None` keeps the variable symbolic.
    pub fn substitute(&self, x: Option<&Rational>, lambda: Option<&Rational>) -> Self {
        let mut xpow = PowerCache::new(x);
        let mut lpow = PowerCache::new(lambda);
        BiPoly::from_terms(self.terms.iter().map(|(&(i, j), c)| {
            let (xi, xc) = xpow.get(i);
            let (lj, lc) = lpow.get(j);
            ((xi, lj), c * &xc * &lc)
        }))
    }

    /// Substitutes `x -> a*x + b`, keeping `x` symbolic.
    pub fn substitute_x_affine(&self, a: &Rational, b: &Rational) -> Self {
        let max = self.x_degree().unwrap_or(0);
        let linear = BiPoly::from_terms([((1, 0), a.clone()), ((0, 0), b.clone())]);
        let mut powers = vec![BiPoly::one()];
        for i in 1..=max as usize {
            let next = &powers[i - 1] * &linear;
            powers.push(next);
        }
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            for ((xi, _), pc) in powers[i as usize].terms() {
                let entry = out.terms.entry((xi, j)).or_default();
                *entry += c * pc;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Substitutes `λ -> c*λ`.
    pub fn scale_lambda(&self, c: &Rational) -> Self {
        let mut cpow = PowerCache::new(Some(c));
        BiPoly::from_terms(self.terms.iter().map(|(&(i, j), v)| {
            let (_, f) = cpow.get(j);
            ((i, j), v * &f)
        }))
    }

    pub fn to_terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(&(xdeg, ldeg), coef)| Term {
                xdeg,
                ldeg,
                coef: coef.clone(),
            })
            .collect()
    }
}

/// Powers of an optional substitution value; a kept variable returns its
/// exponent unchanged with factor 1.
struct PowerCache {
    base: Option<Rational>,
    powers: Vec<Rational>,
}

impl PowerCache {
    fn new(base: Option<&Rational>) -> Self {
        PowerCache {
            base: base.cloned(),
            powers: vec![Rational::one()],
        }
    }

    fn get(&mut self, exp: u32) -> (u32, Rational) {
        match &self.base {
            None => (exp, Rational::one()),
            Some(b) => {
                while self.powers.len() <= exp as usize {
                    let next = self.powers.last().unwrap() * b;
                    self.powers.push(next);
                }
                (0, self.powers[exp as usize].clone())
            }
        }
    }
}

impl From<Rational> for BiPoly {
    fn from(c: Rational) -> Self {
        BiPoly::constant(c)
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &'a BiPoly) -> BiPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(mut self, rhs: BiPoly) -> BiPoly {
        self.add_scaled(&rhs, &Rational::one());
        self
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &'a BiPoly) -> BiPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(mut self, rhs: BiPoly) -> BiPoly {
        self.add_scaled(&rhs, &-Rational::one());
        self
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &'a BiPoly) -> BiPoly {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), f) in &rhs.terms {
                *terms.entry((a + d, b + e)).or_default() += c * f;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        BiPoly { terms }
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<'a> Neg for &'a BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -self.clone()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, xdeg: u32, ldeg: u32) -> fmt::Result {
    let mut parts = Vec::new();
    match xdeg {
        0 => {}
        1 => parts.push("x".to_string()),
        d => parts.push(format!("x^{d}")),
    }
    match ldeg {
        0 => {}
        1 => parts.push("λ".to_string()),
        d => parts.push(format!("λ^{d}")),
    }
    write!(f, "{}", parts.join("*"))
}

/// Human form, descending in `x` then `λ`: `x^2 - λ*x` prints as
/// `x^2 - x*λ`, `E_1(x)` as `x - 1/2`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (&(xdeg, ldeg), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = if neg { -c } else { c.clone() };
            if xdeg == 0 && ldeg == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, xdeg, ldeg)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_terms().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(deserializer)?;
        Ok(BiPoly::from_terms(
            terms.into_iter().map(|t| ((t.xdeg, t.ldeg), t.coef)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let x = BiPoly::x();
        let l = BiPoly::lambda();
        let p = &x * &(&x - &l);
        assert_eq!(
            p,
            BiPoly::from_terms([((2, 0), q(1, 1)), ((1, 1), q(-1, 1))])
        );
        assert_eq!(p, BiPoly::lambda_falling_factorial(2));
        assert!((&p + &-&p).is_zero());

        let half = (&x + &BiPoly::one()).scale(&q(1, 2));
        assert_eq!(half.to_string(), "1/2*x + 1/2");
    }

    #[test]
    fn substitution_examples() {
        let ff2 = BiPoly::lambda_falling_factorial(2);
        assert_eq!(ff2.substitute(None, Some(&Rational::zero())), BiPoly::x().pow(2));

        let p = &BiPoly::x() - &BiPoly::constant(q(1, 2));
        assert_eq!(p.substitute(Some(&q(1, 1)), None), BiPoly::constant(q(1, 2)));

        let ff3 = BiPoly::lambda_falling_factorial(3);
        assert!(ff3.substitute(Some(&q(1, 1)), Some(&q(1, 1))).is_zero());
    }

    #[test]
    fn affine_and_lambda_scaling() {
        // (x)_{2,λ} with x -> (1+x)/3, λ -> λ/3
        let p = BiPoly::lambda_falling_factorial(2)
            .substitute_x_affine(&q(1, 3), &q(1, 3))
            .scale_lambda(&q(1, 3));
        let y = BiPoly::from_terms([((1, 0), q(1, 3)), ((0, 0), q(1, 3))]);
        let expected = &y * &(&y - &BiPoly::lambda().scale(&q(1, 3)));
        assert_eq!(p, expected);
    }

    #[test]
    fn display_forms() {
        assert_eq!(BiPoly::zero().to_string(), "0");
        assert_eq!(BiPoly::lambda_falling_factorial(2).to_string(), "x^2 - x*λ");
        let p = BiPoly::from_terms([((2, 0), q(1, 1)), ((1, 0), q(-1, 1))]);
        assert_eq!(p.to_string(), "x^2 - x");
        assert_eq!(BiPoly::constant(q(-3, 2)).to_string(), "-3/2");
    }

    #[test]
    fn serde_shape() {
        let p = BiPoly::from_terms([((1, 1), q(-3, 2)), ((0, 0), q(2, 1))]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"[{"xdeg":0,"ldeg":0,"coef":"2/1"},{"xdeg":1,"ldeg":1,"coef":"-3/2"}]"#
        );
        let back: BiPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn degrees() {
        assert_eq!(BiPoly::zero().x_degree(), None);
        let ff = BiPoly::lambda_falling_factorial(4);
        assert_eq!(ff.x_degree(), Some(4));
        assert_eq!(ff.lambda_degree(), Some(3));
        assert!(BiPoly::constant(q(3, 1)).is_constant());
        assert!(!ff.is_constant());
    }
}
