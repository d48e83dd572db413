//! Degree sequences, Betti diagrams, pure diagrams, the order `⪯` on degree
//! sequences and the greedy decomposition of a Betti diagram into pure
//! diagrams.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Strictly increasing sequence `d_0 < d_1 < ... < d_n` of integers followed
/// by `+∞` entries, indexing a pure resolution over a polynomial ring in `n`
/// variables.
///
/// Only the finite prefix is stored; positions past it are infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence {
    finite: Vec<i64>,
    n: usize,
}

impl DegreeSequence {
    /// Validates `n + 1` raw entries, `None` standing for `+∞`.
    pub fn new(raw: &[Option<i64>], n: usize) -> Result<Self> {
        if raw.len() != n + 1 {
            return Err(Error::LengthMismatch {
                expected: n + 1,
                got: raw.len(),
            });
        }
        let mut finite = Vec::with_capacity(raw.len());
        for (i, e) in raw.iter().enumerate() {
            if let Some(v) = *e {
                if finite.len() < i {
                    return Err(Error::FiniteAfterInfinity(i));
                }
                if let Some(&prev) = finite.last() {
                    if v <= prev {
                        return Err(Error::NotIncreasing(i));
                    }
                }
                finite.push(v);
            }
        }
        if finite.is_empty() {
            return Err(Error::AllInfinite);
        }
        Ok(DegreeSequence { finite, n })
    }

    /// Builds a sequence from its finite entries, padding with `+∞` up to
    /// `n + 1` entries.
    pub fn from_finite(finite: &[i64], n: usize) -> Result<Self> {
        if finite.len() > n + 1 {
            return Err(Error::LengthMismatch {
                expected: n + 1,
                got: finite.len(),
            });
        }
        let mut raw: Vec<Option<i64>> = finite.iter().copied().map(Some).collect();
        raw.resize(n + 1, None);
        Self::new(&raw, n)
    }

    /// Parses a comma-separated list such as `"1,2,4,7,inf"`; `n` is the
    /// number of entries minus one.
    pub fn parse(s: &str) -> Result<Self> {
        let raw = parse_extended_list(s, "inf")?;
        if raw.is_empty() {
            return Err(Error::Parse("empty sequence".into()));
        }
        let n = raw.len() - 1;
        Self::new(&raw, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `ℓ(d)`: the largest index carrying a finite entry.
    pub fn length(&self) -> usize {
        self.finite.len() - 1
    }

    pub fn get(&self, i: usize) -> Option<i64> {
        self.finite.get(i).copied()
    }

    pub fn finite(&self) -> &[i64] {
        &self.finite
    }

    pub fn first(&self) -> i64 {
        self.finite[0]
    }

    pub fn last_finite(&self) -> i64 {
        *self.finite.last().unwrap()
    }

    pub fn is_fully_finite(&self) -> bool {
        self.finite.len() == self.n + 1
    }

    pub fn raw(&self) -> Vec<Option<i64>> {
        (0..=self.n).map(|i| self.get(i)).collect()
    }

    /// Subtracts `t` from every finite entry.
    pub fn shift(&self, t: i64) -> Self {
        DegreeSequence {
            finite: self.finite.iter().map(|v| v - t).collect(),
            n: self.n,
        }
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..=self.n {
            if i > 0 {
                write!(f, ",")?;
            }
            match self.get(i) {
                Some(v) => write!(f, "{v}")?,
                None => write!(f, "inf")?,
            }
        }
        write!(f, ")")
    }
}

impl Serialize for DegreeSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<SeqEntry> = self.raw().into_iter().map(|e| SeqEntry::from_opt(e, "inf")).collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DegreeSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<SeqEntry>::deserialize(d)?;
        let raw = entries
            .into_iter()
            .map(|e| e.into_opt("inf"))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        if raw.is_empty() {
            return Err(serde::de::Error::custom("empty degree sequence"));
        }
        let n = raw.len() - 1;
        DegreeSequence::new(&raw, n).map_err(serde::de::Error::custom)
    }
}

/// One serialized sequence entry: an integer, or the sentinel string
/// (`"inf"` / `"-inf"`).
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum SeqEntry {
    Int(i64),
    Sentinel(String),
}

impl SeqEntry {
    pub(crate) fn from_opt(e: Option<i64>, sentinel: &str) -> Self {
        match e {
            Some(v) => SeqEntry::Int(v),
            None => SeqEntry::Sentinel(sentinel.to_string()),
        }
    }

    pub(crate) fn into_opt(self, sentinel: &str) -> std::result::Result<Option<i64>, String> {
        match self {
            SeqEntry::Int(v) => Ok(Some(v)),
            SeqEntry::Sentinel(s) if s == sentinel => Ok(None),
            SeqEntry::Sentinel(s) => Err(format!("expected an integer or {sentinel:?}, got {s:?}")),
        }
    }
}

/// Splits `"a,b,c"` into integers, mapping the `sentinel` token to `None`.
pub(crate) fn parse_extended_list(s: &str, sentinel: &str) -> Result<Vec<Option<i64>>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok.eq_ignore_ascii_case(sentinel) {
                Ok(None)
            } else {
                tok.parse::<i64>()
                    .map(Some)
                    .map_err(|_| Error::Parse(format!("bad sequence entry {tok:?}")))
            }
        })
        .collect()
}

/// Validates a raw degree sequence.
pub fn validate_degree_sequence(raw: &[Option<i64>], n: usize) -> Result<DegreeSequence> {
    DegreeSequence::new(raw, n)
}

/// `d ⪯ d'`: `d_i <= d'_i` in every position, where every integer is below
/// `+∞` and `+∞ <= +∞`. Sequences for different rings are never comparable.
pub fn deg_leq(d: &DegreeSequence, dp: &DegreeSequence) -> bool {
    if d.n != dp.n {
        return false;
    }
    // a finite entry of d' needs a finite entry of d below it
    if dp.finite.len() > d.finite.len() {
        return false;
    }
    dp.finite.iter().zip(&d.finite).all(|(b, a)| a <= b)
}

/// Positions `j <= ℓ(d')` with `d_j = d'_j`.
pub fn touching_indices(d: &DegreeSequence, dp: &DegreeSequence) -> Vec<usize> {
    dp.finite
        .iter()
        .zip(&d.finite)
        .enumerate()
        .filter(|(_, (b, a))| a == b)
        .map(|(j, _)| j)
        .collect()
}

/// Nonzero Hom in degree `<= 0` between modules with pure resolutions of
/// types `d` and `d'` exists exactly when `d ⪯ d'`. A certificate is
/// available from [`crate::es::hom_witness`] after [`shift_reduction`].
pub fn deg_hom_exists(d: &DegreeSequence, dp: &DegreeSequence) -> bool {
    deg_leq(d, dp)
}

/// Shifts `d'` down by `t = min{d'_i - d_i}` so that the result touches `d`
/// in some finite position.
pub fn shift_reduction(d: &DegreeSequence, dp: &DegreeSequence) -> Result<(i64, DegreeSequence)> {
    if !deg_leq(d, dp) {
        return Err(Error::NotComparable);
    }
    let t = dp
        .finite
        .iter()
        .zip(&d.finite)
        .map(|(b, a)| b - a)
        .min()
        .expect("degree sequences have a finite entry");
    Ok((t, dp.shift(t)))
}

/// Graded Betti numbers `β_{i,j}` (homological index `i`, internal degree
/// `j`) with exact rational values. Zero entries are never stored.
///
/// In the usual betti-table layout the entry `β_{i,j}` sits in column `i`
/// and row `j - i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiDiagram {
    n: usize,
    entries: BTreeMap<(usize, i64), Rational>,
}

/// Serialized form of one Betti number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRecord {
    pub i: usize,
    pub j: i64,
    pub value: String,
}

impl BettiDiagram {
    pub fn new(n: usize) -> Self {
        BettiDiagram {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: i64) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `v` to `β_{i,j}`, dropping the entry if it becomes zero.
    pub fn add(&mut self, i: usize, j: i64, v: &Rational) -> Result<()> {
        if i > self.n {
            return Err(Error::IndexOutOfRange { index: i, max: self.n });
        }
        let e = self.entries.entry((i, j)).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
        Ok(())
    }

    pub fn set(&mut self, i: usize, j: i64, v: Rational) -> Result<()> {
        if i > self.n {
            return Err(Error::IndexOutOfRange { index: i, max: self.n });
        }
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, &Rational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = BettiDiagram::new(self.n);
        if !c.is_zero() {
            for (&k, v) in &self.entries {
                out.entries.insert(k, v * c);
            }
        }
        out
    }

    pub fn records(&self) -> Vec<BettiRecord> {
        self.iter()
            .map(|(i, j, v)| BettiRecord {
                i,
                j,
                value: format_rational(v),
            })
            .collect()
    }

    /// Builds a diagram from records; `n` defaults to the largest column.
    pub fn from_records(records: &[BettiRecord], n: Option<usize>) -> Result<Self> {
        let n = n.unwrap_or_else(|| records.iter().map(|r| r.i).max().unwrap_or(0));
        let mut b = BettiDiagram::new(n);
        for r in records {
            b.add(r.i, r.j, &parse_rational(&r.value)?)?;
        }
        Ok(b)
    }

    /// Minimal degree in each column, in order, stopping at the first empty
    /// column. Returns the columns that follow an empty one separately.
    fn top_strand(&self) -> (Vec<i64>, bool) {
        let mut strand = Vec::new();
        let mut gap = false;
        let max_col = self.entries.keys().map(|k| k.0).max().unwrap_or(0);
        for i in 0..=max_col {
            match self.entries.range((i, i64::MIN)..=(i, i64::MAX)).next() {
                Some((&(_, j), _)) if !gap => strand.push(j),
                Some(_) => return (strand, true),
                None => gap = true,
            }
        }
        (strand, false)
    }
}

impl Serialize for BettiDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            entries: Vec<BettiRecord>,
        }
        Repr {
            n: self.n,
            entries: self.records(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiDiagram {
    /// Accepts either `{"n": .., "entries": [..]}` or a bare list of records.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Full { n: Option<usize>, entries: Vec<BettiRecord> },
            Bare(Vec<BettiRecord>),
        }
        let (n, records) = match Repr::deserialize(d)? {
            Repr::Full { n, entries } => (n, entries),
            Repr::Bare(entries) => (None, entries),
        };
        BettiDiagram::from_records(&records, n).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for BettiDiagram {
    /// Conventional betti-table layout: column `i`, row `j - i`; zeros
    /// print as `.`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "(zero diagram)");
        }
        let max_col = self.entries.keys().map(|k| k.0).max().unwrap();
        let rows: Vec<i64> = self.entries.keys().map(|&(i, j)| j - i as i64).collect();
        let (lo, hi) = (*rows.iter().min().unwrap(), *rows.iter().max().unwrap());
        let cell = |i: usize, row: i64| -> String {
            match self.entries.get(&(i, row + i as i64)) {
                Some(v) if v.is_integer() => v.numer().to_string(),
                Some(v) => format!("{}/{}", v.numer(), v.denom()),
                None => ".".to_string(),
            }
        };
        let mut width = 1;
        for row in lo..=hi {
            for i in 0..=max_col {
                width = width.max(cell(i, row).len());
            }
        }
        let label_w = format!("{hi}").len().max(format!("{lo}").len()) + 1;
        write!(f, "{:>label_w$} ", "")?;
        for i in 0..=max_col {
            write!(f, " {:>width$}", i)?;
        }
        writeln!(f)?;
        for row in lo..=hi {
            write!(f, "{:>label_w$}:", row)?;
            for i in 0..=max_col {
                write!(f, " {:>width$}", cell(i, row))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Normalized Betti numbers of the extremal ray of a degree sequence: the
/// smallest coprime positive integers proportional to
/// `∏_{j≠i} 1/|d_j - d_i|`, with `β_i` placed in degree `d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PureDiagram {
    pub d: DegreeSequence,
    #[serde(with = "crate::arith::decimal::vec")]
    pub betti: Vec<BigInt>,
}

impl PureDiagram {
    pub fn to_diagram(&self, coefficient: &Rational) -> BettiDiagram {
        let mut out = BettiDiagram::new(self.d.n());
        for (i, b) in self.betti.iter().enumerate() {
            let v = Rational::from_integer(b.clone()) * coefficient;
            out.set(i, self.d.finite[i], v).expect("column within range");
        }
        out
    }
}

impl fmt::Display for PureDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_diagram(&Rational::one()))
    }
}

/// Herzog–Kühl normalized Betti numbers of the pure diagram of type `d`.
pub fn pure_diagram(d: &DegreeSequence) -> PureDiagram {
    let fin = d.finite();
    // products ∏_{j≠i} |d_j - d_i|; β_i is proportional to L / p_i
    let prods: Vec<BigInt> = (0..fin.len())
        .map(|i| {
            fin.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(BigInt::one(), |acc, (_, &dj)| acc * BigInt::from((dj - fin[i]).abs()))
        })
        .collect();
    let lcm = prods.iter().fold(BigInt::one(), |acc, p| acc.lcm(p));
    let raw: Vec<BigInt> = prods.iter().map(|p| &lcm / p).collect();
    let g = raw.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    PureDiagram {
        d: d.clone(),
        betti: raw.into_iter().map(|v| v / &g).collect(),
    }
}

/// A positive rational combination of pure diagrams along a chain in `⪯`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub terms: Vec<DecompositionTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    #[serde(with = "rational_string")]
    pub coefficient: Rational,
    pub pure: PureDiagram,
}

impl Decomposition {
    /// `Σ c_i · π_i` as a Betti diagram.
    pub fn sum(&self, n: usize) -> BettiDiagram {
        let mut out = BettiDiagram::new(n);
        for t in &self.terms {
            for (i, j, v) in t.pure.to_diagram(&t.coefficient).iter() {
                out.add(i, j, v).expect("column within range");
            }
        }
        out
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} * pi{}", format_rational(&t.coefficient), t.pure.d)?;
        }
        Ok(())
    }
}

pub(crate) mod rational_string {
    use super::*;
    pub fn serialize<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }
    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Greedy decomposition: repeatedly read the top strand, subtract the largest
/// multiple of its pure diagram that keeps every entry nonnegative, and
/// continue until nothing is left.
pub fn decompose(b: &BettiDiagram) -> Result<Decomposition> {
    if b.is_zero() {
        return Err(Error::EmptyDiagram);
    }
    if let Some((&(_, _), v)) = b.entries.iter().find(|(_, v)| v.is_negative()) {
        return Err(Error::NotInCone(format!("negative entry {}", format_rational(v))));
    }
    let mut rest = b.clone();
    let mut terms: Vec<DecompositionTerm> = Vec::new();
    while !rest.is_zero() {
        let (strand, trailing) = rest.top_strand();
        if trailing || strand.is_empty() {
            return Err(Error::NotInCone("columns of the diagram are not contiguous from 0".into()));
        }
        let d = DegreeSequence::from_finite(&strand, rest.n)
            .map_err(|e| Error::NotInCone(format!("top strand {strand:?} is not a degree sequence: {e}")))?;
        let pure = pure_diagram(&d);
        let c = pure
            .betti
            .iter()
            .enumerate()
            .map(|(i, p)| rest.get(i, strand[i]) / Rational::from_integer(p.clone()))
            .min()
            .expect("non-empty strand");
        for (i, p) in pure.betti.iter().enumerate() {
            let v = -(Rational::from_integer(p.clone()) * &c);
            rest.add(i, strand[i], &v)?;
            if rest.get(i, strand[i]).is_negative() {
                return Err(Error::NotInCone(format!("negative entry at ({i},{})", strand[i])));
            }
        }
        if let Some(prev) = terms.last() {
            if !deg_leq(&prev.pure.d, &d) || prev.pure.d == d {
                return Err(Error::NotInCone(format!(
                    "top strands {} and {} do not form a chain",
                    prev.pure.d, d
                )));
            }
        }
        terms.push(DecompositionTerm { coefficient: c, pure });
    }
    Ok(Decomposition { terms })
}
