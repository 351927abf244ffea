//! Finite-range verification of the closed-form expansions of the
//! multi-Euler-Genocchi families.
//!
//! Each checker evaluates a right-hand side from Stirling numbers,
//! multi-Stirling numbers and lower-order families, and compares it exactly
//! against the row built from the generating function. The generating
//! function side is the reference; a disagreement is reported with both
//! values, never corrected.
//!
//! | theorem | statement |
//! |---------|-----------|
//! | 2.1 | `A_n^{(k)}(1) = r! Σ_{k'=r}^{n} Σ_{m=r}^{k'} (1/2)^{k'-m} (-1)^{n-k'} k'!/m! S1^{(k)}(m,r) S2(n,k')`, and `0` for `n < r` |
//! | 2.2 | `A_n^{(k)}(x) = Σ_m C(n,m) A_{n-m}^{(r)}(x) Σ_{l=r}^{m+r} S1^{(k)}(l,r)/C(m+r,r) S2(m+r,l) (-1)^{m+r-l}` |
//! | 2.3 | `A_n^{(k)}(1) + A_n^{(k)}(0) = 2 r! Σ_{k'=r}^{n} S1^{(k)}(k',r) (-1)^{n-k'} S2(n,k')`, and `0` for `n < r` |
//! | 2.4 | `A_{n,λ}^{(k)}(x) = Σ_l C(n,l) A_{n-l,λ}^{(r)}(x) Σ_{m=r}^{l+r} S2(l+r,m)/C(l+r,l) (-1)^{l-m-r} S1^{(k)}(m,r)` |
//! | 2.5 | `A_{n,λ}^{(k)}(x) = Σ_{k'} C(n,k') A_{k',λ}^{(k)}(0) (x)_{n-k',λ}` |
//! | 2.6 | `A_{n,λ}^{(k)}(x) = Σ_j C(n,j) Σ_{k'} Σ_{l<m} S1^{(k)}(k',r) (-1)^{j+r-k'} S2(j+r,k')/C(j+r,r) (-1)^l A_{n-j,λ/m}^{(r)}((l+x)/m) m^{n-j-r}`, `m` odd |

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, BiPoly, Rational};
use crate::families::{build_family, FamilyId};
use crate::stirling::{MultiIndex, MultiStirlingTable, StirlingTable};

/// Grid bound used by the self-test and acceptance runs.
pub const DEFAULT_N_MAX: usize = 12;
/// Distribution moduli checked by default.
pub const DEFAULT_MODULI: &[u32] = &[1, 3, 5];
/// Entry range of the default multi-index grid.
pub const DEFAULT_ENTRY_RANGE: std::ops::RangeInclusive<i32> = -2..=3;
/// Largest depth in the default grid.
pub const DEFAULT_MAX_DEPTH: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "2.1")]
    ValueAtOne,
    #[serde(rename = "2.2")]
    Expansion,
    #[serde(rename = "2.3")]
    SumAtZeroAndOne,
    #[serde(rename = "2.4")]
    DegenerateExpansion,
    #[serde(rename = "2.5")]
    DegenerateConvolution,
    #[serde(rename = "2.6")]
    Distribution,
    #[serde(rename = "reductions")]
    Reductions,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::ValueAtOne,
        Theorem::Expansion,
        Theorem::SumAtZeroAndOne,
        Theorem::DegenerateExpansion,
        Theorem::DegenerateConvolution,
        Theorem::Distribution,
        Theorem::Reductions,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Theorem::ValueAtOne => "2.1",
            Theorem::Expansion => "2.2",
            Theorem::SumAtZeroAndOne => "2.3",
            Theorem::DegenerateExpansion => "2.4",
            Theorem::DegenerateConvolution => "2.5",
            Theorem::Distribution => "2.6",
            Theorem::Reductions => "reductions",
        }
    }

    pub fn from_label(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| Error::Parse {
                what: "theorem",
                input: s.to_string(),
            })
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome for one `n`. Both sides are kept only when they differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub n: usize,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<BiPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<BiPoly>,
}

impl CheckRecord {
    pub fn pass(n: usize) -> Self {
        CheckRecord {
            n,
            status: Status::Pass,
            lhs: None,
            rhs: None,
        }
    }

    pub fn compare(n: usize, lhs: BiPoly, rhs: BiPoly) -> Self {
        if lhs == rhs {
            CheckRecord::pass(n)
        } else {
            CheckRecord {
                n,
                status: Status::Fail,
                lhs: Some(lhs),
                rhs: Some(rhs),
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Per-`n` results of one checker run, `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    theorem: Theorem,
    k: MultiIndex,
    n_max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    results: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn new(
        theorem: Theorem,
        k: MultiIndex,
        n_max: usize,
        m: Option<u32>,
        results: Vec<CheckRecord>,
    ) -> Self {
        debug_assert!(results.iter().enumerate().all(|(i, r)| r.n == i));
        debug_assert_eq!(results.len(), n_max + 1);
        CheckReport {
            theorem,
            k,
            n_max,
            m,
            results,
        }
    }

    pub fn theorem(&self) -> Theorem {
        self.theorem
    }

    pub fn index(&self) -> &MultiIndex {
        &self.k
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn modulus(&self) -> Option<u32> {
        self.m
    }

    pub fn results(&self) -> &[CheckRecord] {
        &self.results
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.results.iter().filter(|r| !r.passed())
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Tables shared by every multi-index of one depth `r`.
pub struct RankTables {
    r: usize,
    n_max: usize,
    s2: StirlingTable,
    gen_eg: Vec<BiPoly>,
    gen_degen_eg: Vec<BiPoly>,
    falling: Vec<BiPoly>,
    distribution: BTreeMap<u32, Vec<BiPoly>>,
}

impl RankTables {
    /// Builds the depth-`r` tables, including distribution sums for every
    /// modulus in `moduli`.
    pub fn new(r: usize, n_max: usize, moduli: &[u32]) -> Result<Self> {
        let gen_eg = build_family(&FamilyId::GenEg(r), n_max, n_max)?.rows().to_vec();
        let gen_degen_eg = build_family(&FamilyId::GenDegenEg(r), n_max, n_max)?
            .rows()
            .to_vec();
        let mut tables = RankTables {
            r,
            n_max,
            s2: StirlingTable::second(n_max + r),
            gen_eg,
            gen_degen_eg,
            falling: (0..=n_max as u32)
                .map(BiPoly::lambda_falling_factorial)
                .collect(),
            distribution: BTreeMap::new(),
        };
        for &m in moduli {
            tables.add_modulus(m)?;
        }
        Ok(tables)
    }

    pub fn depth(&self) -> usize {
        self.r
    }

    /// Caches `D_i = Σ_{l<m} (-1)^l A_{i,λ/m}^{(r)}((l+x)/m) m^{i-r}` for
    /// `i = 0..=n_max`.
    pub fn add_modulus(&mut self, m: u32) -> Result<()> {
        check_modulus(m)?;
        if self.distribution.contains_key(&m) {
            return Ok(());
        }
        let mq = Rational::from(m as i64);
        let inv_m = mq.recip().expect("m >= 1");
        let shifted: Vec<Vec<BiPoly>> = (0..m)
            .map(|l| {
                let offset = Rational::from(l as i64) * &inv_m;
                self.gen_degen_eg
                    .iter()
                    .map(|p| p.substitute_x_affine(&inv_m, &offset).scale_lambda(&inv_m))
                    .collect()
            })
            .collect();
        let sums = (0..=self.n_max)
            .map(|i| {
                let weight = mq.pow(i as i32 - self.r as i32).expect("m >= 1");
                let mut acc = BiPoly::zero();
                for (l, rows) in shifted.iter().enumerate() {
                    acc.add_scaled(&rows[i], &(Rational::sign_power(l as i64) * &weight));
                }
                acc
            })
            .collect();
        self.distribution.insert(m, sums);
        Ok(())
    }
}

/// Tables for one multi-index `k`.
pub struct IndexTables {
    k: MultiIndex,
    multi_s1: MultiStirlingTable,
    multi_eg: Vec<BiPoly>,
    degen_multi_eg: Vec<BiPoly>,
}

impl IndexTables {
    pub fn new(k: &MultiIndex, n_max: usize) -> Result<Self> {
        Ok(IndexTables {
            k: k.clone(),
            multi_s1: MultiStirlingTable::new(k, n_max + k.depth()),
            multi_eg: build_family(&FamilyId::MultiEg(k.clone()), n_max, n_max)?
                .rows()
                .to_vec(),
            degen_multi_eg: build_family(&FamilyId::DegenMultiEg(k.clone()), n_max, n_max)?
                .rows()
                .to_vec(),
        })
    }
}

fn check_modulus(m: u32) -> Result<()> {
    if m == 0 || m % 2 == 0 {
        return Err(Error::Rejected(format!(
            "distribution modulus must be odd and positive, got {m}"
        )));
    }
    Ok(())
}

fn check_depth(k: &MultiIndex) -> Result<()> {
    if k.depth() == 0 {
        return Err(Error::Rejected(
            "theorem checks need a nonempty multi-index".to_string(),
        ));
    }
    Ok(())
}

fn q(n: usize) -> Rational {
    Rational::from(n as i64)
}

fn sign(e: i64) -> Rational {
    Rational::sign_power(e)
}

fn report(
    theorem: Theorem,
    idx: &IndexTables,
    rank: &RankTables,
    m: Option<u32>,
    side: impl Fn(usize) -> (BiPoly, BiPoly),
) -> CheckReport {
    let results = (0..=rank.n_max)
        .map(|n| {
            let (lhs, rhs) = side(n);
            CheckRecord::compare(n, lhs, rhs)
        })
        .collect();
    CheckReport::new(theorem, idx.k.clone(), rank.n_max, m, results)
}

fn value_at_one(row: &BiPoly) -> BiPoly {
    row.substitute(Some(&Rational::one()), None)
}

fn value_at_zero(row: &BiPoly) -> BiPoly {
    row.substitute(Some(&Rational::zero()), None)
}

fn thm_2_1(idx: &IndexTables, rank: &RankTables) -> CheckReport {
    let r = rank.r;
    let half = Rational::new(1, 2).unwrap();
    report(Theorem::ValueAtOne, idx, rank, None, |n| {
        let lhs = value_at_one(&idx.multi_eg[n]);
        if n < r {
            return (lhs, BiPoly::zero());
        }
        let mut sum = Rational::zero();
        for kk in r..=n {
            for m in r..=kk {
                let term = half.pow((kk - m) as i32).unwrap()
                    * sign(n as i64 - kk as i64)
                    * (factorial(kk) / factorial(m))
                    * idx.multi_s1.get(m)
                    * rank.s2.get(n, kk);
                sum += term;
            }
        }
        (lhs, BiPoly::constant(factorial(r) * sum))
    })
}

fn thm_2_2(idx: &IndexTables, rank: &RankTables) -> CheckReport {
    let r = rank.r;
    let inner: Vec<Rational> = (0..=rank.n_max)
        .map(|m| {
            (r..=m + r)
                .map(|l| {
                    idx.multi_s1.get(l) / binomial(m + r, r)
                        * rank.s2.get(m + r, l)
                        * sign(m as i64 + r as i64 - l as i64)
                })
                .sum()
        })
        .collect();
    report(Theorem::Expansion, idx, rank, None, |n| {
        let mut rhs = BiPoly::zero();
        for m in 0..=n {
            rhs.add_scaled(&rank.gen_eg[n - m], &(binomial(n, m) * &inner[m]));
        }
        (idx.multi_eg[n].clone(), rhs)
    })
}

fn thm_2_3(idx: &IndexTables, rank: &RankTables) -> CheckReport {
    let r = rank.r;
    report(Theorem::SumAtZeroAndOne, idx, rank, None, |n| {
        let row = &idx.multi_eg[n];
        let lhs = &value_at_one(row) + &value_at_zero(row);
        if n < r {
            return (lhs, BiPoly::zero());
        }
        let sum: Rational = (r..=n)
            .map(|kk| idx.multi_s1.get(kk) * sign(n as i64 - kk as i64) * rank.s2.get(n, kk))
            .sum();
        (lhs, BiPoly::constant(q(2) * factorial(r) * sum))
    })
}

fn thm_2_4(idx: &IndexTables, rank: &RankTables) -> CheckReport {
    let r = rank.r;
    let inner: Vec<Rational> = (0..=rank.n_max)
        .map(|l| {
            (r..=l + r)
                .map(|m| {
                    rank.s2.get(l + r, m) / binomial(l + r, l)
                        * sign(l as i64 - m as i64 - r as i64)
                        * idx.multi_s1.get(m)
                })
                .sum()
        })
        .collect();
    report(Theorem::DegenerateExpansion, idx, rank, None, |n| {
        let mut rhs = BiPoly::zero();
        for l in 0..=n {
            rhs.add_scaled(&rank.gen_degen_eg[n - l], &(binomial(n, l) * &inner[l]));
        }
        (idx.degen_multi_eg[n].clone(), rhs)
    })
}

fn thm_2_5(idx: &IndexTables, rank: &RankTables) -> CheckReport {
    let numbers: Vec<BiPoly> = idx.degen_multi_eg.iter().map(value_at_zero).collect();
    report(Theorem::DegenerateConvolution, idx, rank, None, |n| {
        let mut rhs = BiPoly::zero();
        for k in 0..=n {
            let term = &numbers[k] * &rank.falling[n - k];
            rhs.add_scaled(&term, &binomial(n, k));
        }
        (idx.degen_multi_eg[n].clone(), rhs)
    })
}

fn thm_2_6(idx: &IndexTables, rank: &RankTables, m: u32) -> Result<CheckReport> {
    check_modulus(m)?;
    let dist = rank.distribution.get(&m).ok_or_else(|| {
        Error::Internal(format!("distribution sums for m = {m} were not prepared"))
    })?;
    let r = rank.r;
    let inner: Vec<Rational> = (0..=rank.n_max)
        .map(|j| {
            (r..=j + r)
                .map(|kk| {
                    idx.multi_s1.get(kk)
                        * sign(j as i64 + r as i64 - kk as i64)
                        * rank.s2.get(j + r, kk)
                        / binomial(j + r, r)
                })
                .sum()
        })
        .collect();
    Ok(report(Theorem::Distribution, idx, rank, Some(m), |n| {
        let mut rhs = BiPoly::zero();
        for j in 0..=n {
            rhs.add_scaled(&dist[n - j], &(binomial(n, j) * &inner[j]));
        }
        (idx.degen_multi_eg[n].clone(), rhs)
    }))
}

fn prepare(k: &MultiIndex, n_max: usize, moduli: &[u32]) -> Result<(IndexTables, RankTables)> {
    check_depth(k)?;
    Ok((
        IndexTables::new(k, n_max)?,
        RankTables::new(k.depth(), n_max, moduli)?,
    ))
}

pub fn check_thm_2_1(k: &MultiIndex, n_max: usize) -> Result<CheckReport> {
    let (idx, rank) = prepare(k, n_max, &[])?;
    Ok(thm_2_1(&idx, &rank))
}

pub fn check_thm_2_2(k: &MultiIndex, n_max: usize) -> Result<CheckReport> {
    let (idx, rank) = prepare(k, n_max, &[])?;
    Ok(thm_2_2(&idx, &rank))
}

pub fn check_thm_2_3(k: &MultiIndex, n_max: usize) -> Result<CheckReport> {
    let (idx, rank) = prepare(k, n_max, &[])?;
    Ok(thm_2_3(&idx, &rank))
}

pub fn check_thm_2_4(k: &MultiIndex, n_max: usize) -> Result<CheckReport> {
    let (idx, rank) = prepare(k, n_max, &[])?;
    Ok(thm_2_4(&idx, &rank))
}

pub fn check_thm_2_5(k: &MultiIndex, n_max: usize) -> Result<CheckReport> {
    let (idx, rank) = prepare(k, n_max, &[])?;
    Ok(thm_2_5(&idx, &rank))
}

/// Distribution formula for odd `m`; even `m` is rejected.
pub fn check_thm_2_6(k: &MultiIndex, m: u32, n_max: usize) -> Result<CheckReport> {
    check_modulus(m)?;
    let (idx, rank) = prepare(k, n_max, &[m])?;
    thm_2_6(&idx, &rank, m)
}

/// Runs one theorem for `k`, with the distribution formula once per modulus.
pub fn check_theorem(
    theorem: Theorem,
    k: &MultiIndex,
    n_max: usize,
    moduli: &[u32],
) -> Result<Vec<CheckReport>> {
    if theorem == Theorem::Reductions {
        return Ok(vec![crate::families::reduction_all_ones(n_max, k.depth())?]);
    }
    let (idx, rank) = prepare(k, n_max, moduli)?;
    run_tables(theorem, &idx, &rank, moduli)
}

fn run_tables(
    theorem: Theorem,
    idx: &IndexTables,
    rank: &RankTables,
    moduli: &[u32],
) -> Result<Vec<CheckReport>> {
    Ok(match theorem {
        Theorem::ValueAtOne => vec![thm_2_1(idx, rank)],
        Theorem::Expansion => vec![thm_2_2(idx, rank)],
        Theorem::SumAtZeroAndOne => vec![thm_2_3(idx, rank)],
        Theorem::DegenerateExpansion => vec![thm_2_4(idx, rank)],
        Theorem::DegenerateConvolution => vec![thm_2_5(idx, rank)],
        Theorem::Distribution => moduli
            .iter()
            .map(|&m| thm_2_6(idx, rank, m))
            .collect::<Result<_>>()?,
        Theorem::Reductions => {
            vec![crate::families::reduction_all_ones(rank.n_max, rank.r)?]
        }
    })
}

/// Runs theorems 2.1 to 2.6 for every multi-index, with 2.6 once per
/// modulus. Reports come back in input order: by index, then theorem, then
/// modulus.
pub fn run_suite(ks: &[MultiIndex], n_max: usize, moduli: &[u32]) -> Result<Vec<CheckReport>> {
    for k in ks {
        check_depth(k)?;
    }
    for &m in moduli {
        check_modulus(m)?;
    }
    let mut ranks = BTreeMap::new();
    for k in ks {
        if !ranks.contains_key(&k.depth()) {
            ranks.insert(k.depth(), RankTables::new(k.depth(), n_max, moduli)?);
        }
    }
    let theorems = &Theorem::ALL[..6];
    let per_index: Vec<Vec<CheckReport>> = ks
        .par_iter()
        .map(|k| {
            let idx = IndexTables::new(k, n_max)?;
            let rank = &ranks[&k.depth()];
            let mut out = Vec::new();
            for &t in theorems {
                out.extend(run_tables(t, &idx, rank, moduli)?);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_index.into_iter().flatten().collect())
}

/// Every multi-index of depth `1..=max_depth` with entries in `entries`, in
/// lexicographic order within each depth.
pub fn index_grid(max_depth: usize, entries: std::ops::RangeInclusive<i32>) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 0..max_depth {
        layer = layer
            .iter()
            .flat_map(|prefix: &Vec<i32>| {
                entries.clone().map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned().map(MultiIndex::new));
    }
    out
}

/// The default grid: depth up to 3, entries in `-2..=3`.
pub fn default_grid() -> Vec<MultiIndex> {
    index_grid(DEFAULT_MAX_DEPTH, DEFAULT_ENTRY_RANGE)
}
