//! Stirling numbers, multiple-logarithm coefficients and multi-Stirling
//! numbers of the first kind.
//!
//! The multiple logarithm is
//!
//! ```text
//! Li_{k_1..k_r}(t) = Σ_{0 < n_1 < ... < n_r} t^{n_r} / (n_1^{k_1} ... n_r^{k_r})
//! ```
//!
//! for integer `k_i` of any sign. [`multiple_log_coeffs`] evaluates it by a
//! chain dynamic program; [`multiple_log_nested`] reaches the same series
//! through series multiplication and inversion and is kept as a cross-check.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, BiPoly, Rational};
use crate::series::Series;

/// Ordered tuple `(k_1, ..., k_r)` of integers; `r = 0` is the empty index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<i32>);

impl MultiIndex {
    pub fn new(entries: Vec<i32>) -> Self {
        MultiIndex(entries)
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// `(1, 1, ..., 1)` with `r` entries.
    pub fn ones(r: usize) -> Self {
        MultiIndex(vec![1; r])
    }

    /// Depth `r`.
    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&k| k == 1)
    }

    /// `(k_1, ..., k_{r-1}, k_r - 1)`, `None` for the empty index.
    pub fn with_last_decremented(&self) -> Option<Self> {
        let mut v = self.0.clone();
        *v.last_mut()? -= 1;
        Some(MultiIndex(v))
    }
}

/// `(2,1)`, or `()` for the empty index.
impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `2,1`, `(2,1)` or `-2,3`; `()` is the empty index. Empty entries
/// such as `2,,1` are rejected.
impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "multi-index",
            input: s.to_string(),
        };
        let trimmed = s.trim();
        let inner = match trimmed.strip_prefix('(') {
            Some(rest) => rest.strip_suffix(')').ok_or_else(bad)?.trim(),
            None => trimmed,
        };
        if inner.is_empty() {
            return if trimmed.starts_with('(') {
                Ok(MultiIndex::empty())
            } else {
                Err(bad())
            };
        }
        inner
            .split(',')
            .map(|part| part.trim().parse::<i32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StirlingKind {
    /// Signed numbers of the first kind, `(log(1+t))^k / k!`.
    FirstSigned,
    /// Numbers of the second kind, `(e^t - 1)^k / k!`.
    Second,
}

/// Triangle of Stirling numbers `S(n, k)`, `0 <= k <= n <= n_max`, built
/// row by row from the recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    kind: StirlingKind,
    rows: Vec<Vec<Rational>>,
}

impl StirlingTable {
    /// `S1(n+1, k) = S1(n, k-1) - n S1(n, k)`.
    pub fn first(n_max: usize) -> Self {
        Self::build(StirlingKind::FirstSigned, n_max, |n, _k| {
            -Rational::from(n as i64)
        })
    }

    /// `S2(n+1, k) = S2(n, k-1) + k S2(n, k)`.
    pub fn second(n_max: usize) -> Self {
        Self::build(StirlingKind::Second, n_max, |_n, k| Rational::from(k as i64))
    }

    fn build(kind: StirlingKind, n_max: usize, weight: impl Fn(usize, usize) -> Rational) -> Self {
        let mut rows = vec![vec![Rational::one()]];
        for n in 0..n_max {
            let prev = &rows[n];
            let at = |k: usize| prev.get(k).cloned().unwrap_or_default();
            let row = (0..=n + 1)
                .map(|k| {
                    let left = if k > 0 { at(k - 1) } else { Rational::zero() };
                    left + weight(n, k) * at(k)
                })
                .collect();
            rows.push(row);
        }
        StirlingTable { kind, rows }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(n, k)`, zero for `k > n`. Panics if `n > n_max`.
    pub fn get(&self, n: usize, k: usize) -> Rational {
        assert!(n <= self.n_max(), "row {n} beyond table size {}", self.n_max());
        self.rows[n].get(k).cloned().unwrap_or_default()
    }
}

/// Signed Stirling number of the first kind; zero for `k > n`.
pub fn stirling1(n: usize, k: usize) -> Rational {
    StirlingTable::first(n).get(n, k)
}

/// Stirling number of the second kind; zero for `k > n`.
pub fn stirling2(n: usize, k: usize) -> Rational {
    StirlingTable::second(n).get(n, k)
}

/// `m^{-k}` for `m >= 1`.
fn inverse_power(m: usize, k: i32) -> Rational {
    Rational::from(m as i64)
        .pow(-k)
        .expect("base is at least 1")
}

/// Ordinary coefficients of `Li_k(t)` up to `t^order`, by the chain DP
/// `f_1(m) = m^{-k_1}`, `f_j(m) = m^{-k_j} Σ_{i<m} f_{j-1}(i)`.
///
/// The empty index gives the constant series 1.
pub fn multiple_log_coeffs(k: &MultiIndex, order: usize) -> Series {
    let Some((&first, rest)) = k.entries().split_first() else {
        return Series::one(order);
    };
    let mut f: Vec<Rational> = (0..=order)
        .map(|m| if m == 0 { Rational::zero() } else { inverse_power(m, first) })
        .collect();
    for &kj in rest {
        let mut prefix = Rational::zero();
        let mut next = Vec::with_capacity(order + 1);
        for (m, fm) in f.iter().enumerate() {
            next.push(if m == 0 || prefix.is_zero() {
                Rational::zero()
            } else {
                &prefix * &inverse_power(m, kj)
            });
            prefix += fm;
        }
        f = next;
    }
    Series::from_coeffs(f.into_iter().map(BiPoly::constant).collect())
}

/// Same series as [`multiple_log_coeffs`], built as the nested product
/// `Li_{k_1..k_j} = Θ^{-k_j}( t/(1-t) · Li_{k_1..k_{j-1}} )` where
/// `Θ^{-k}` multiplies the coefficient of `t^n` by `n^{-k}`.
pub fn multiple_log_nested(k: &MultiIndex, order: usize) -> Series {
    let one_minus_t = Series::from_coeffs(
        (0..=order)
            .map(|i| match i {
                0 => BiPoly::one(),
                1 => BiPoly::constant(-Rational::one()),
                _ => BiPoly::zero(),
            })
            .collect(),
    );
    let geometric = one_minus_t
        .invert()
        .expect("1 - t is invertible")
        .shift_mul(1);
    k.entries().iter().fold(Series::one(order), |acc, &kj| {
        let prod = &geometric * &acc;
        Series::from_coeffs(
            prod.coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| {
                    if n == 0 {
                        debug_assert!(c.is_zero());
                        BiPoly::zero()
                    } else {
                        c.scale(&inverse_power(n, kj))
                    }
                })
                .collect(),
        )
    })
}

/// Column `S1^{(k)}(n, r)`, `0 <= n <= n_max`, with `r = depth(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiStirlingTable {
    index: MultiIndex,
    values: Vec<Rational>,
}

impl MultiStirlingTable {
    pub fn new(k: &MultiIndex, n_max: usize) -> Self {
        let li = multiple_log_coeffs(k, n_max);
        MultiStirlingTable {
            index: k.clone(),
            values: (0..=n_max)
                .map(|n| li.coeff(n).coefficient(0, 0) * factorial(n))
                .collect(),
        }
    }

    pub fn index(&self) -> &MultiIndex {
        &self.index
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// `S1^{(k)}(n, r)`. Panics if `n > n_max`.
    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n]
    }
}

/// `S1^{(k)}(n, r) = n! [t^n] Li_k(t)`; `r` must equal the depth of `k`.
pub fn multi_stirling1(k: &MultiIndex, n: usize, r: usize) -> Result<Rational> {
    if r != k.depth() {
        return Err(Error::Rejected(format!(
            "r = {r} does not match the depth {} of {k}",
            k.depth()
        )));
    }
    Ok(MultiStirlingTable::new(k, n).get(n).clone())
}
