//! Polynomial and number families as EGF coefficients of their generating
//! functions.
//!
//! Every family is built with `x` and `λ` symbolic. Numeric values come
//! from [`FamilyTable::value_at`], which only substitutes into the rows.
//!
//! | tag | generating function |
//! |-----|---------------------|
//! | `euler` | `2/(e^t+1) e^{xt}` |
//! | `genocchi` | `2t/(e^t+1) e^{xt}` |
//! | `gen-eg(r)` | `2t^r/(e^t+1) e^{xt}` |
//! | `degen-euler` | `2/(e_λ(t)+1) e_λ^x(t)` |
//! | `degen-genocchi` | `2t/(e_λ(t)+1) e_λ^x(t)` |
//! | `gen-degen-eg(r)` | `2t^r/(e_λ(t)+1) e_λ^x(t)` |
//! | `multi-eg(k)` | `2 r!/(e^t+1) Li_k(1-e^{-t}) e^{xt}` |
//! | `degen-multi-eg(k)` | `2 r!/(e_λ(t)+1) Li_k(1-e^{-t}) e_λ^x(t)` |
//! | `multi-bernoulli(k)` | `r! Li_k(1-e^{-t}) / (e_λ(t)-1)^r` |
//! | `multi-bernoulli-classical(k)` | `r! Li_k(1-e^{-t}) / (e^t-1)^r` |

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, BiPoly, Rational};
use crate::identities::{CheckRecord, CheckReport, Theorem};
use crate::series::{self, Series};
use crate::stirling::{multiple_log_coeffs, MultiIndex};

/// Which exponential sits in the multi-Bernoulli denominator `(E(t) - 1)^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BernoulliDenominator {
    /// `e_λ(t)`.
    Degenerate,
    /// `e^t`.
    Classical,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Euler,
    Genocchi,
    GenEg(usize),
    DegenEuler,
    DegenGenocchi,
    GenDegenEg(usize),
    MultiEg(MultiIndex),
    DegenMultiEg(MultiIndex),
    MultiBernoulli(MultiIndex, BernoulliDenominator),
}

/// Family names accepted by [`FamilyId::from_parts`].
pub const FAMILY_NAMES: &[&str] = &[
    "euler",
    "genocchi",
    "gen-eg",
    "degen-euler",
    "degen-genocchi",
    "gen-degen-eg",
    "multi-eg",
    "degen-multi-eg",
    "multi-bernoulli",
    "multi-bernoulli-classical",
];

impl FamilyId {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::Euler => "euler",
            FamilyId::Genocchi => "genocchi",
            FamilyId::GenEg(_) => "gen-eg",
            FamilyId::DegenEuler => "degen-euler",
            FamilyId::DegenGenocchi => "degen-genocchi",
            FamilyId::GenDegenEg(_) => "gen-degen-eg",
            FamilyId::MultiEg(_) => "multi-eg",
            FamilyId::DegenMultiEg(_) => "degen-multi-eg",
            FamilyId::MultiBernoulli(_, BernoulliDenominator::Degenerate) => "multi-bernoulli",
            FamilyId::MultiBernoulli(_, BernoulliDenominator::Classical) => {
                "multi-bernoulli-classical"
            }
        }
    }

    /// Builds an id from its name plus the parameter the tag requires:
    /// `r` for `gen-eg`/`gen-degen-eg`, `k` for the multi families.
    pub fn from_parts(name: &str, r: Option<usize>, k: Option<MultiIndex>) -> Result<Self> {
        let need_r = || {
            r.ok_or_else(|| Error::Rejected(format!("family {name} needs an order r")))
        };
        let need_k = || {
            k.clone()
                .ok_or_else(|| Error::Rejected(format!("family {name} needs a multi-index k")))
        };
        Ok(match name {
            "euler" => FamilyId::Euler,
            "genocchi" => FamilyId::Genocchi,
            "gen-eg" => FamilyId::GenEg(need_r()?),
            "degen-euler" => FamilyId::DegenEuler,
            "degen-genocchi" => FamilyId::DegenGenocchi,
            "gen-degen-eg" => FamilyId::GenDegenEg(need_r()?),
            "multi-eg" => FamilyId::MultiEg(need_k()?),
            "degen-multi-eg" => FamilyId::DegenMultiEg(need_k()?),
            "multi-bernoulli" => FamilyId::MultiBernoulli(need_k()?, BernoulliDenominator::Degenerate),
            "multi-bernoulli-classical" => {
                FamilyId::MultiBernoulli(need_k()?, BernoulliDenominator::Classical)
            }
            other => {
                return Err(Error::Parse {
                    what: "family",
                    input: other.to_string(),
                })
            }
        })
    }

    pub fn order_param(&self) -> Option<usize> {
        match self {
            FamilyId::GenEg(r) | FamilyId::GenDegenEg(r) => Some(*r),
            _ => None,
        }
    }

    pub fn multi_index(&self) -> Option<&MultiIndex> {
        match self {
            FamilyId::MultiEg(k) | FamilyId::DegenMultiEg(k) | FamilyId::MultiBernoulli(k, _) => {
                Some(k)
            }
            _ => None,
        }
    }

    /// True when the generating function involves `λ`.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            FamilyId::DegenEuler
                | FamilyId::DegenGenocchi
                | FamilyId::GenDegenEg(_)
                | FamilyId::DegenMultiEg(_)
                | FamilyId::MultiBernoulli(_, BernoulliDenominator::Degenerate)
        )
    }

    /// The family a degenerate family reduces to at `λ = 0`.
    pub fn classical_counterpart(&self) -> Option<FamilyId> {
        Some(match self {
            FamilyId::DegenEuler => FamilyId::Euler,
            FamilyId::DegenGenocchi => FamilyId::Genocchi,
            FamilyId::GenDegenEg(r) => FamilyId::GenEg(*r),
            FamilyId::DegenMultiEg(k) => FamilyId::MultiEg(k.clone()),
            FamilyId::MultiBernoulli(k, BernoulliDenominator::Degenerate) => {
                FamilyId::MultiBernoulli(k.clone(), BernoulliDenominator::Classical)
            }
            _ => return None,
        })
    }

    /// Generating function truncated at `t^order`.
    pub fn generating_function(&self, order: usize) -> Result<Series> {
        match self {
            FamilyId::Euler => Ok(euler_kernel(false, order)),
            FamilyId::Genocchi => Ok(euler_kernel(false, order).shift_mul(1)),
            FamilyId::GenEg(r) => Ok(euler_kernel(false, order).shift_mul(*r)),
            FamilyId::DegenEuler => Ok(euler_kernel(true, order)),
            FamilyId::DegenGenocchi => Ok(euler_kernel(true, order).shift_mul(1)),
            FamilyId::GenDegenEg(r) => Ok(euler_kernel(true, order).shift_mul(*r)),
            FamilyId::MultiEg(k) => Ok(multi_eg_gf(k, false, order)),
            FamilyId::DegenMultiEg(k) => Ok(multi_eg_gf(k, true, order)),
            FamilyId::MultiBernoulli(k, denom) => multi_bernoulli_gf(k, *denom, order),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order_param(), self.multi_index()) {
            (Some(r), _) => write!(f, "{}({r})", self.name()),
            (_, Some(k)) => write!(f, "{}{k}", self.name()),
            _ => write!(f, "{}", self.name()),
        }
    }
}

/// `2/(E(t)+1) E^x(t)` with `E = e` or `E = e_λ`.
fn euler_kernel(degenerate: bool, order: usize) -> Series {
    let (base, shifted) = if degenerate {
        (series::degenerate_exp_one(order), series::degenerate_exp(order))
    } else {
        (series::exp_scaled(&Rational::one(), order), series::exp_xt(order))
    };
    let denom = &base + &Series::one(order);
    let inv = denom.invert().expect("constant term is 2");
    &inv.scale(&Rational::from(2)) * &shifted
}

/// `Li_k(1 - e^{-t})`, vanishing to order `depth(k)`.
pub fn composed_multiple_log(k: &MultiIndex, order: usize) -> Series {
    Series::compose(&multiple_log_coeffs(k, order), &series::one_minus_exp_neg(order))
        .expect("1 - e^{-t} has zero constant term")
}

fn multi_eg_gf(k: &MultiIndex, degenerate: bool, order: usize) -> Series {
    let li = composed_multiple_log(k, order).scale(&factorial(k.depth()));
    &euler_kernel(degenerate, order) * &li
}

fn multi_bernoulli_gf(k: &MultiIndex, denom: BernoulliDenominator, order: usize) -> Result<Series> {
    let r = k.depth();
    let work = order + r;
    let internal = |e: Error| Error::Internal(format!("multi-bernoulli{k}: {e}"));
    let numer = composed_multiple_log(k, work).shift_div(r).map_err(internal)?;
    let base = match denom {
        BernoulliDenominator::Degenerate => series::degenerate_exp_one(work),
        BernoulliDenominator::Classical => series::exp_scaled(&Rational::one(), work),
    };
    // (E(t) - 1)/t has constant term 1
    let reduced = (&base - &Series::one(work)).shift_div(1).map_err(internal)?;
    let mut q = Series::one(work);
    for _ in 0..r {
        q = &q * &reduced;
    }
    let inv = q.invert().map_err(internal)?;
    Ok((&numer * &inv).truncate(order).scale(&factorial(r)))
}

/// Rows `0..=n_max` of one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTable {
    id: FamilyId,
    rows: Vec<BiPoly>,
    x: Option<Rational>,
    lambda: Option<Rational>,
}

impl FamilyTable {
    pub fn id(&self) -> &FamilyId {
        &self.id
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[BiPoly] {
        &self.rows
    }

    /// Row `n`. Panics if `n > n_max`.
    pub fn row(&self, n: usize) -> &BiPoly {
        &self.rows[n]
    }

    /// Value substituted for `x`, if the table has been specialized.
    pub fn x_value(&self) -> Option<&Rational> {
        self.x.as_ref()
    }

    pub fn lambda_value(&self) -> Option<&Rational> {
        self.lambda.as_ref()
    }

    /// Row `n` with `x` and/or `λ` substituted.
    pub fn value_at(&self, n: usize, x: Option<&Rational>, lambda: Option<&Rational>) -> BiPoly {
        self.rows[n].substitute(x, lambda)
    }

    /// The whole table with `x` and/or `λ` substituted. Already-substituted
    /// variables stay as they are.
    pub fn specialize(&self, x: Option<&Rational>, lambda: Option<&Rational>) -> FamilyTable {
        FamilyTable {
            id: self.id.clone(),
            rows: self.rows.iter().map(|p| p.substitute(x, lambda)).collect(),
            x: self.x.clone().or_else(|| x.cloned()),
            lambda: self.lambda.clone().or_else(|| lambda.cloned()),
        }
    }
}

/// Builds rows `0..=n_max` from the generating function truncated at
/// `order >= n_max`.
pub fn build_family(id: &FamilyId, n_max: usize, order: usize) -> Result<FamilyTable> {
    if order < n_max {
        return Err(Error::Rejected(format!(
            "truncation order {order} is below n_max {n_max}"
        )));
    }
    let gf = id.generating_function(order)?;
    let rows = (0..=n_max)
        .map(|n| gf.egf_coefficient(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyTable {
        id: id.clone(),
        rows,
        x: None,
        lambda: None,
    })
}

/// Row `n` of a family, specialized. Builds at order `n`.
pub fn family_value_at(
    id: &FamilyId,
    n: usize,
    x: Option<&Rational>,
    lambda: Option<&Rational>,
) -> Result<BiPoly> {
    Ok(build_family(id, n, n)?.value_at(n, x, lambda))
}

/// Compares the all-ones multi families against `gen-eg(r)` and
/// `gen-degen-eg(r)` for rows `0..=n_max`.
pub fn reduction_all_ones(n_max: usize, r: usize) -> Result<CheckReport> {
    let k = MultiIndex::ones(r);
    let pairs = [
        (FamilyId::MultiEg(k.clone()), FamilyId::GenEg(r)),
        (FamilyId::DegenMultiEg(k.clone()), FamilyId::GenDegenEg(r)),
    ];
    let tables = pairs
        .iter()
        .map(|(a, b)| Ok((build_family(a, n_max, n_max)?, build_family(b, n_max, n_max)?)))
        .collect::<Result<Vec<_>>>()?;
    let results = (0..=n_max)
        .map(|n| {
            tables
                .iter()
                .map(|(a, b)| CheckRecord::compare(n, a.row(n).clone(), b.row(n).clone()))
                .find(|rec| !rec.passed())
                .unwrap_or_else(|| CheckRecord::pass(n))
        })
        .collect();
    Ok(CheckReport::new(Theorem::Reductions, k, n_max, None, results))
}

/// Wire form: `{"family", "r"?, "k"?, "n_max", "x"?, "lambda"?, "rows"}`.
#[derive(Serialize, Deserialize)]
struct FamilyTableWire {
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<MultiIndex>,
    n_max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<Rational>,
    rows: Vec<BiPoly>,
}

impl Serialize for FamilyTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyTableWire {
            family: self.id.name().to_string(),
            r: self.id.order_param(),
            k: self.id.multi_index().cloned(),
            n_max: self.n_max(),
            x: self.x.clone(),
            lambda: self.lambda.clone(),
            rows: self.rows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FamilyTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = FamilyTableWire::deserialize(d)?;
        let id = FamilyId::from_parts(&w.family, w.r, w.k).map_err(D::Error::custom)?;
        if w.rows.len() != w.n_max + 1 {
            return Err(D::Error::custom(format!(
                "expected {} rows, found {}",
                w.n_max + 1,
                w.rows.len()
            )));
        }
        Ok(FamilyTable {
            id,
            rows: w.rows,
            x: w.x,
            lambda: w.lambda,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn c(n: i64, d: i64) -> BiPoly {
        BiPoly::constant(q(n, d))
    }

    fn mi(v: &[i32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn euler_rows() {
        let t = build_family(&FamilyId::Euler, 2, 2).unwrap();
        assert_eq!(t.row(0), &BiPoly::one());
        assert_eq!(t.row(1), &(&BiPoly::x() - &c(1, 2)));
        assert_eq!(t.row(2).to_string(), "x^2 - x");
    }

    #[test]
    fn genocchi_numbers() {
        let t = build_family(&FamilyId::Genocchi, 2, 2).unwrap();
        let zero = Rational::zero();
        assert_eq!(t.value_at(1, Some(&zero), None), c(1, 1));
        assert_eq!(t.value_at(2, Some(&zero), None), c(-1, 1));
    }

    #[test]
    fn multi_eg_below_depth_vanishes() {
        let t = build_family(&FamilyId::MultiEg(mi(&[4, -2])), 1, 1).unwrap();
        assert!(t.row(0).is_zero() && t.row(1).is_zero());
    }

    #[test]
    fn degenerate_euler_row_two() {
        let t = build_family(&FamilyId::DegenEuler, 2, 2).unwrap();
        let zero = Rational::zero();
        assert_eq!(
            t.value_at(2, Some(&zero), None),
            BiPoly::lambda().scale(&q(1, 2))
        );
    }

    #[test]
    fn multi_bernoulli_constant_term() {
        for denom in [BernoulliDenominator::Degenerate, BernoulliDenominator::Classical] {
            let t = build_family(&FamilyId::MultiBernoulli(mi(&[1]), denom), 4, 4).unwrap();
            assert_eq!(t.row(0), &BiPoly::one());
            assert!(t.rows().iter().all(|p| p.x_degree().unwrap_or(0) == 0));
        }
        // classical k = (1) gives t/(e^t - 1): the Bernoulli numbers with B_1 = -1/2
        let t = build_family(
            &FamilyId::MultiBernoulli(mi(&[1]), BernoulliDenominator::Classical),
            4,
            4,
        )
        .unwrap();
        assert_eq!(t.rows(), &[c(1, 1), c(-1, 2), c(1, 6), c(0, 1), c(-1, 30)]);
    }

    #[test]
    fn value_at_examples() {
        let t = build_family(&FamilyId::Euler, 0, 0).unwrap();
        assert_eq!(t.value_at(0, Some(&q(7, 3)), None), BiPoly::one());
        let one = Rational::one();
        assert_eq!(
            family_value_at(&FamilyId::MultiEg(mi(&[1])), 1, Some(&one), None).unwrap(),
            c(1, 1)
        );
        let k = mi(&[2, -1]);
        let zero = Rational::zero();
        let degen = build_family(&FamilyId::DegenMultiEg(k.clone()), 8, 8).unwrap();
        let classic = build_family(&FamilyId::MultiEg(k), 8, 8).unwrap();
        for n in 0..=8 {
            assert_eq!(&degen.value_at(n, None, Some(&zero)), classic.row(n));
        }
    }

    #[test]
    fn order_below_n_max_rejected() {
        assert!(matches!(
            build_family(&FamilyId::Euler, 5, 4),
            Err(Error::Rejected(_))
        ));
    }

    #[test]
    fn rows_independent_of_truncation_order() {
        let id = FamilyId::DegenMultiEg(mi(&[3, 0]));
        let a = build_family(&id, 6, 6).unwrap();
        let b = build_family(&id, 6, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reductions_small() {
        for r in 0..=3 {
            let rep = reduction_all_ones(8, r).unwrap();
            assert!(rep.passed(), "r={r}");
            assert_eq!(rep.results().len(), 9);
        }
    }

    #[test]
    fn gen_eg_reductions() {
        let e = build_family(&FamilyId::Euler, 10, 10).unwrap();
        let g = build_family(&FamilyId::Genocchi, 10, 10).unwrap();
        assert_eq!(build_family(&FamilyId::GenEg(0), 10, 10).unwrap().rows(), e.rows());
        assert_eq!(build_family(&FamilyId::GenEg(1), 10, 10).unwrap().rows(), g.rows());
        assert_eq!(
            build_family(&FamilyId::MultiEg(MultiIndex::empty()), 10, 10).unwrap().rows(),
            e.rows()
        );
    }

    #[test]
    fn id_parts_and_display() {
        let id = FamilyId::from_parts("multi-eg", None, Some(mi(&[2, 1]))).unwrap();
        assert_eq!(id.to_string(), "multi-eg(2,1)");
        assert!(FamilyId::from_parts("gen-eg", None, None).is_err());
        assert!(FamilyId::from_parts("bogus", None, None).is_err());
        for name in FAMILY_NAMES {
            let id = FamilyId::from_parts(name, Some(2), Some(mi(&[1, 1]))).unwrap();
            assert_eq!(id.name(), *name);
        }
    }

    #[test]
    fn json_round_trip() {
        let t = build_family(&FamilyId::DegenMultiEg(mi(&[2, -1])), 4, 4)
            .unwrap()
            .specialize(Some(&q(1, 2)), None);
        let s = serde_json::to_string(&t).unwrap();
        let back: FamilyTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(s.starts_with(r#"{"family":"degen-multi-eg","k":[2,-1],"n_max":4,"x":"1/2""#));
    }
}
