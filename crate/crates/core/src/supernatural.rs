//! Root sequences, supernatural cohomology tables and lower bounds for Hom
//! between the supernatural sheaves `E_f = π_* O(-f - 1)` obtained by
//! pushing line bundles forward along the finite map `(P^1)^s → P^s`.
//!
//! Tables use the rank `s!` model, so every entry is an integer:
//! `h^i(E_f(t)) = |∏_k (t - f_k)|` when `f_{i+1} < t < f_i`, and zero
//! otherwise.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial_signed, factorial};
use crate::betti::{parse_extended_list, SeqEntry};
use crate::error::{Error, Result};

/// Strictly decreasing `f_1 > f_2 > ... ` of `n - 1` entries, padded with
/// `-∞`; a root sequence for `P^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSequence {
    finite: Vec<i64>,
    n: usize,
}

impl RootSequence {
    /// `raw` has `n - 1` entries, `None` standing for `-∞`.
    pub fn new(raw: &[Option<i64>], n: usize) -> Result<Self> {
        if n == 0 || raw.len() != n - 1 {
            return Err(Error::LengthMismatch {
                expected: n.saturating_sub(1),
                got: raw.len(),
            });
        }
        let mut finite = Vec::with_capacity(raw.len());
        for (k, e) in raw.iter().enumerate() {
            if let Some(v) = *e {
                if finite.len() < k {
                    return Err(Error::FiniteAfterInfinity(k + 1));
                }
                if finite.last().is_some_and(|&prev| v >= prev) {
                    return Err(Error::NotIncreasing(k + 1));
                }
                finite.push(v);
            }
        }
        Ok(RootSequence { finite, n })
    }

    pub fn from_finite(finite: &[i64], n: usize) -> Result<Self> {
        let mut raw: Vec<Option<i64>> = finite.iter().copied().map(Some).collect();
        if raw.len() > n.saturating_sub(1) {
            return Err(Error::LengthMismatch {
                expected: n.saturating_sub(1),
                got: raw.len(),
            });
        }
        raw.resize(n - 1, None);
        Self::new(&raw, n)
    }

    /// Parses `"-2,-3,-4,-inf"`; `n` is the number of entries plus one.
    pub fn parse(s: &str) -> Result<Self> {
        let raw = parse_extended_list(s, "-inf")?;
        let n = raw.len() + 1;
        Self::new(&raw, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `ℓ(f)`: number of finite roots.
    pub fn length(&self) -> usize {
        self.finite.len()
    }

    pub fn finite(&self) -> &[i64] {
        &self.finite
    }

    /// `f_k` for `1 <= k <= n - 1`; `None` is `-∞`.
    pub fn get(&self, k: usize) -> Option<i64> {
        assert!(k >= 1, "root sequences are 1-indexed");
        self.finite.get(k - 1).copied()
    }

    pub fn is_full(&self) -> bool {
        self.finite.len() + 1 == self.n
    }

    pub fn raw(&self) -> Vec<Option<i64>> {
        (1..self.n).map(|k| self.get(k)).collect()
    }
}

impl fmt::Display for RootSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .raw()
            .into_iter()
            .map(|e| e.map_or("-inf".to_string(), |v| v.to_string()))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for RootSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<SeqEntry> = self.raw().into_iter().map(|e| SeqEntry::from_opt(e, "-inf")).collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<SeqEntry>::deserialize(d)?
            .into_iter()
            .map(|e| e.into_opt("-inf"))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        let n = raw.len() + 1;
        RootSequence::new(&raw, n).map_err(serde::de::Error::custom)
    }
}

/// `f ⪯ f'` componentwise, `-∞` below everything.
pub fn root_leq(f: &RootSequence, fp: &RootSequence) -> bool {
    f.n == fp.n && f.finite.len() <= fp.finite.len() && f.finite.iter().zip(&fp.finite).all(|(a, b)| a <= b)
}

/// Nonzero Hom from a supernatural sheaf of type `f'` to one of type `f`
/// exists exactly when `f ⪯ f'`; see [`hom_lower_bound`] for the size of
/// the explicit family of morphisms.
pub fn root_hom_exists(f: &RootSequence, fp: &RootSequence) -> bool {
    root_leq(f, fp)
}

/// Signed Hilbert polynomial `∏_k (t - f_k)` of the rank-`s!` model.
pub fn hilbert_value(f: &RootSequence, t: i64) -> BigInt {
    f.finite.iter().map(|&fk| BigInt::from(t - fk)).product()
}

/// `h^i(E_f(t))` in the rank-`s!` model, `s = ℓ(f)`.
pub fn h_value(f: &RootSequence, i: usize, t: i64) -> BigUint {
    let s = f.length();
    if i > s {
        return BigUint::zero();
    }
    let above = if i == 0 { None } else { f.get(i) };
    let below = if i < s { f.get(i + 1) } else { None };
    let in_range = above.is_none_or(|fi| t < fi) && below.is_none_or(|fb| t > fb);
    if !in_range {
        return BigUint::zero();
    }
    hilbert_value(f, t).abs().to_biguint().unwrap()
}

/// Cohomology table: entry at row `i`, column `j` is `h^i(E(j - i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupernaturalTable {
    pub f: RootSequence,
    pub rank_convention: BigUint,
    /// Inclusive column range.
    pub window: (i64, i64),
    pub values: BTreeMap<(usize, i64), BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub i: usize,
    pub j: i64,
    pub value: String,
}

impl SupernaturalTable {
    pub fn get(&self, i: usize, j: i64) -> BigUint {
        self.values.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn records(&self) -> Vec<TableRecord> {
        self.values
            .iter()
            .map(|(&(i, j), v)| TableRecord {
                i,
                j,
                value: v.to_string(),
            })
            .collect()
    }
}

impl Serialize for SupernaturalTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Meta<'a> {
            f: &'a RootSequence,
            rank_convention: String,
            window: [i64; 2],
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            metadata: Meta<'a>,
            records: Vec<TableRecord>,
        }
        Repr {
            metadata: Meta {
                f: &self.f,
                rank_convention: self.rank_convention.to_string(),
                window: [self.window.0, self.window.1],
            },
            records: self.records(),
        }
        .serialize(s)
    }
}

impl fmt::Display for SupernaturalTable {
    /// Highest row on top, zeros as `.`, as in the usual cohomology-table
    /// picture.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.window;
        let cell = |i: usize, j: i64| {
            let v = self.get(i, j);
            if v.is_zero() {
                ".".to_string()
            } else {
                v.to_string()
            }
        };
        let rows = self.f.n() - 1;
        let width = (lo..=hi)
            .flat_map(|j| (0..=rows).map(move |i| (i, j)))
            .map(|(i, j)| cell(i, j).len())
            .chain((lo..=hi).map(|j| j.to_string().len()))
            .max()
            .unwrap_or(1);
        writeln!(f, "f = {}, rank {}", self.f, self.rank_convention)?;
        for i in (0..=rows).rev() {
            write!(f, "{i:>3}:")?;
            for j in lo..=hi {
                write!(f, " {:>width$}", cell(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "{:>3} ", "j")?;
        for j in lo..=hi {
            write!(f, " {:>width$}", j)?;
        }
        writeln!(f)
    }
}

/// Columns `[f_s - 2, f_1 + 3]`, wide enough to show where every row
/// starts and stops.
pub fn default_window(f: &RootSequence) -> (i64, i64) {
    match (f.finite.first(), f.finite.last()) {
        (Some(&f1), Some(&fs)) => (fs - 2, f1 + 3),
        _ => (-3, 3),
    }
}

pub fn table(f: &RootSequence, window: Option<(i64, i64)>) -> SupernaturalTable {
    let window = window.unwrap_or_else(|| default_window(f));
    let mut values = BTreeMap::new();
    for j in window.0..=window.1 {
        let mut nonzero_rows = 0;
        for i in 0..f.n() {
            let v = h_value(f, i, j - i as i64);
            if !v.is_zero() {
                nonzero_rows += 1;
                values.insert((i, j), v);
            }
        }
        assert!(nonzero_rows <= 1, "column {j} has {nonzero_rows} nonzero entries");
    }
    SupernaturalTable {
        f: f.clone(),
        rank_convention: factorial(f.length() as u64),
        window,
        values,
    }
}

/// `dim H^0((P^1)^s, O(f' - f)) = ∏_{k <= ℓ(f)} (f'_k - f_k + 1)`: the
/// dimension of the space of morphisms `E_{f'} → E_f` coming from
/// `(P^1)^s`, a lower bound for `dim Hom(E_{f'}, E_f)`. Zero when
/// `f ⋠ f'`.
pub fn hom_lower_bound(f: &RootSequence, fp: &RootSequence) -> BigUint {
    if !root_leq(f, fp) {
        return BigUint::zero();
    }
    f.finite
        .iter()
        .zip(&fp.finite)
        .map(|(a, b)| BigUint::from((b - a + 1) as u64))
        .product()
}

/// Roots `f_1, f_1 - 1, ..., f_1 - s + 1` with no gap.
fn is_consecutive(f: &RootSequence) -> bool {
    f.finite.windows(2).all(|w| w[1] == w[0] - 1)
}

/// Exact `dim Hom(E_{f'}, E_f)` when both bundles split as sums of line
/// bundles: with consecutive roots of equal length `s`,
/// `E_f ≅ O(-f_1 - 1)^{s!}` on `P^s`, so the Hom space has dimension
/// `(s!)^2 · C(f'_1 - f_1 + s, s)`.
pub fn split_hom_dim(f: &RootSequence, fp: &RootSequence) -> Result<BigUint> {
    if f.n != fp.n || f.length() != fp.length() || !is_consecutive(f) || !is_consecutive(fp) {
        return Err(Error::NotSplit);
    }
    let s = f.length();
    if s == 0 {
        return Ok(BigUint::from(1u32));
    }
    let diff = fp.finite[0] - f.finite[0];
    let fac = factorial(s as u64);
    Ok(&fac * &fac * binomial_signed(diff + s as i64, s as i64))
}
