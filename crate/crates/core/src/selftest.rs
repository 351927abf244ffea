//! Invariant suites run by `polyg selftest` and the acceptance tests.
//!
//! Each suite returns a [`SuiteResult`] counting individual exact
//! comparisons. Randomized inputs come from a seeded ChaCha stream, so a
//! given seed always produces the same checks.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exact::{BiPoly, Rational};
use crate::families::{build_family, reduction_all_ones, BernoulliDenominator, FamilyId};
use crate::identities::{run_suite, CheckReport};
use crate::stirling::{
    multiple_log_coeffs, multiple_log_nested, MultiIndex, MultiStirlingTable, StirlingTable,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `count` random multi-indices with depth in `1..=max_depth` and entries in
/// `-2..=3`.
pub fn random_indices(seed: u64, count: usize, max_depth: usize) -> Vec<MultiIndex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = rng.gen_range(1..=max_depth);
            MultiIndex::new((0..r).map(|_| rng.gen_range(-2..=3)).collect())
        })
        .collect()
}

/// A seeded subset of `grid` of size `count`, kept in grid order.
pub fn sample_grid(grid: &[MultiIndex], count: usize, seed: u64) -> Vec<MultiIndex> {
    if count >= grid.len() {
        return grid.to_vec();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = sample(&mut rng, grid.len(), count).into_vec();
    picks.sort_unstable();
    picks.into_iter().map(|i| grid[i].clone()).collect()
}

/// Theorems 2.1 to 2.6 over `ks`, one check per record.
pub fn theorem_grid(ks: &[MultiIndex], n_max: usize, moduli: &[u32]) -> Result<(SuiteResult, Vec<CheckReport>)> {
    let reports = run_suite(ks, n_max, moduli)?;
    let mut res = SuiteResult::new("theorems");
    for rep in &reports {
        for rec in rep.results() {
            res.check(rec.passed(), || {
                format!("theorem {} k={} n={}", rep.theorem(), rep.index(), rec.n)
            });
        }
    }
    Ok((res, reports))
}

/// All-ones reductions for depths `0..=max_depth`.
pub fn reductions(max_depth: usize, n_max: usize) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("reductions");
    for r in 0..=max_depth {
        let rep = reduction_all_ones(n_max, r)?;
        for rec in rep.results() {
            res.check(rec.passed(), || format!("r={r} n={}", rec.n));
        }
    }
    Ok(res)
}

/// Chain DP against the nested-product route for the multiple logarithm.
pub fn li_cross_check(ks: &[MultiIndex], order: usize) -> SuiteResult {
    let mut res = SuiteResult::new("li-cross-check");
    for k in ks {
        let dp = multiple_log_coeffs(k, order);
        let nested = multiple_log_nested(k, order);
        for n in 0..=order {
            res.check(dp.coeff(n) == nested.coeff(n), || format!("k={k} n={n}"));
        }
    }
    res
}

/// `n [t^n] Li_k = [t^n] Li_{k with k_r - 1}`.
pub fn derivative_identity(ks: &[MultiIndex], order: usize) -> SuiteResult {
    let mut res = SuiteResult::new("derivative-identity");
    for k in ks {
        let Some(lowered) = k.with_last_decremented() else {
            continue;
        };
        let a = multiple_log_coeffs(k, order);
        let b = multiple_log_coeffs(&lowered, order);
        for n in 0..=order {
            let lhs = a.coeff(n).scale(&Rational::from(n as i64));
            res.check(&lhs == b.coeff(n), || format!("k={k} n={n}"));
        }
    }
    res
}

/// `S1^{(1,..,1)}(n, r) = (-1)^{n-r} S1(n, r)` for `n, r <= bound`.
pub fn all_ones_multi_stirling(bound: usize) -> SuiteResult {
    let mut res = SuiteResult::new("all-ones-multi-stirling");
    let s1 = StirlingTable::first(bound);
    for r in 0..=bound {
        let multi = MultiStirlingTable::new(&MultiIndex::ones(r), bound);
        for n in 0..=bound {
            let expected = Rational::sign_power(n as i64 - r as i64) * s1.get(n, r);
            res.check(multi.get(n) == &expected, || format!("n={n} r={r}"));
        }
    }
    res
}

/// `Σ_k S1(n,k) S2(k,m) = δ_{n,m}` for `n, m <= bound`.
pub fn stirling_inversion(bound: usize) -> SuiteResult {
    let mut res = SuiteResult::new("stirling-inversion");
    let s1 = StirlingTable::first(bound);
    let s2 = StirlingTable::second(bound);
    for n in 0..=bound {
        for m in 0..=bound {
            let sum: Rational = (0..=bound).map(|k| s1.get(n, k) * s2.get(k, m)).sum();
            let delta = if n == m { Rational::one() } else { Rational::zero() };
            res.check(sum == delta, || format!("n={n} m={m}"));
        }
    }
    res
}

/// Every degenerate family with `λ = 0` against its classical counterpart.
pub fn degeneration(ks: &[MultiIndex], max_rank: usize, n_max: usize) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("degeneration");
    let mut ids = vec![FamilyId::DegenEuler, FamilyId::DegenGenocchi];
    ids.extend((0..=max_rank).map(FamilyId::GenDegenEg));
    for k in ks {
        ids.push(FamilyId::DegenMultiEg(k.clone()));
        ids.push(FamilyId::MultiBernoulli(k.clone(), BernoulliDenominator::Degenerate));
    }
    let zero = Rational::zero();
    for id in &ids {
        let classical = id.classical_counterpart().expect("degenerate family");
        let a = build_family(id, n_max, n_max)?;
        let b = build_family(&classical, n_max, n_max)?;
        for n in 0..=n_max {
            res.check(&a.value_at(n, None, Some(&zero)) == b.row(n), || {
                format!("{id} n={n}")
            });
        }
    }
    Ok(res)
}

/// `A_n^{(k)}(x) = 0` for `n < r`, and `deg_x = n - r` otherwise.
pub fn vanishing_and_degree(ks: &[MultiIndex], n_max: usize) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("vanishing-degree");
    for k in ks {
        let r = k.depth();
        let t = build_family(&FamilyId::MultiEg(k.clone()), n_max, n_max)?;
        for (n, row) in t.rows().iter().enumerate() {
            let ok = if n < r {
                row.is_zero()
            } else {
                row.x_degree() == Some((n - r) as u32)
            };
            res.check(ok, || format!("k={k} n={n}"));
        }
    }
    Ok(res)
}

/// Genocchi numbers `G_n(0)` are integers for `n <= bound`.
pub fn genocchi_integrality(bound: usize) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("genocchi-integrality");
    let t = build_family(&FamilyId::Genocchi, bound, bound)?;
    let zero = Rational::zero();
    for n in 0..=bound {
        let v = t.value_at(n, Some(&zero), None);
        let ok = v.as_constant().is_some_and(|c| c.is_integer());
        res.check(ok, || format!("G_{n} = {v}"));
    }
    Ok(res)
}

/// Appell translation `A_n(a + b) = Σ_j C(n,j) A_j(a) b^{n-j}` at a few
/// rational points.
pub fn translation(ks: &[MultiIndex], n_max: usize) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("translation");
    let points = [
        (Rational::new(1, 2).unwrap(), Rational::new(-3, 1).unwrap()),
        (Rational::new(2, 3).unwrap(), Rational::new(5, 7).unwrap()),
    ];
    for k in ks {
        let t = build_family(&FamilyId::MultiEg(k.clone()), n_max, n_max)?;
        for (a, b) in &points {
            let sum = a + b;
            for n in 0..=n_max {
                let lhs = t.value_at(n, Some(&sum), None);
                let mut rhs = BiPoly::zero();
                for j in 0..=n {
                    let w = crate::exact::binomial(n, j) * b.pow((n - j) as i32)?;
                    rhs.add_scaled(&t.value_at(j, Some(a), None), &w);
                }
                res.check(lhs == rhs, || format!("k={k} n={n} a={a} b={b}"));
            }
        }
    }
    Ok(res)
}
