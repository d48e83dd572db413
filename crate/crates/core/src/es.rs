//! Pure resolutions from pushforwards of twisted Koszul complexes on
//! `P^{n-1} × (P^1)^r`, built simultaneously for two degree sequences
//! `d ⪯ d'`, together with the comparison map `ν_j : F'_j → F_j` induced by
//! multiplication with the monomial `h = ∏ (y_0^(i))^{c_i}`.
//!
//! Only ranks, twists and monomial bases are modeled; the differentials of
//! `F_•` are not. That is enough to decide whether `ν_j` vanishes when
//! `d_j = d'_j`, because then `ν_j` is a matrix of scalars determined by its
//! action on basis monomials.
//!
//! Direction convention: the distinguished witness lives in `F'_j` and its
//! image in `F_j`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, ExponentMatrix};
use crate::betti::{deg_leq, shift_reduction, touching_indices, DegreeSequence};
use crate::error::{Error, Result};

/// Largest basis [`enumerate_basis`] and [`nu_matrix`] will materialize.
pub const DEFAULT_BASIS_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Unprimed,
    Primed,
}

/// Derived data of the construction for a pair `(d, d')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EsData {
    pub d: DegreeSequence,
    pub dp: DegreeSequence,
    /// Number of `P^1` factors.
    pub r: usize,
    /// `D = [d_0, d_0 + ℓ(d) + r]` as an inclusive interval.
    pub interval: (i64, i64),
    /// `D' = [d_0, d_0 + ℓ(d') + r]`; starts at `d_0` of the unprimed side.
    pub interval_p: (i64, i64),
    pub delta: Vec<i64>,
    pub delta_p: Vec<i64>,
    pub a: Vec<i64>,
    pub a_p: Vec<i64>,
    /// `a - a'`, present when `d ⪯ d'`.
    pub c: Option<Vec<i64>>,
}

impl EsData {
    pub fn seq(&self, side: Side) -> &DegreeSequence {
        match side {
            Side::Unprimed => &self.d,
            Side::Primed => &self.dp,
        }
    }

    pub fn a_of(&self, side: Side) -> &[i64] {
        match side {
            Side::Unprimed => &self.a,
            Side::Primed => &self.a_p,
        }
    }

    pub fn d0(&self) -> i64 {
        self.d.first()
    }

    /// Length of the Koszul complex on that side, `ℓ + r`.
    pub fn koszul_length(&self, side: Side) -> usize {
        self.seq(side).length() + self.r
    }
}

fn complement(lo: i64, hi: i64, seq: &[i64]) -> Vec<i64> {
    (lo..=hi).filter(|v| !seq.contains(v)).collect()
}

/// Computes `r`, `D`, `δ`, `a` for both sides and `c = a - a'`.
pub fn es_setup(d: &DegreeSequence, dp: &DegreeSequence) -> Result<EsData> {
    if d.n() != dp.n() {
        return Err(Error::LengthMismatch {
            expected: d.n() + 1,
            got: dp.n() + 1,
        });
    }
    let d0 = d.first();
    let (l, lp) = (d.length() as i64, dp.length() as i64);
    let r = (d.last_finite() - d0 - l).max(dp.last_finite() - d0 - lp);
    debug_assert!(r >= 0);
    let interval = (d0, d0 + l + r);
    let interval_p = (d0, d0 + lp + r);
    let delta = complement(interval.0, interval.1, d.finite());
    let delta_p = complement(interval_p.0, interval_p.1, dp.finite());
    for got in [delta.len(), delta_p.len()] {
        if got != r as usize {
            return Err(Error::DeltaSizeMismatch {
                expected: r as usize,
                got,
            });
        }
    }
    let a: Vec<i64> = delta.iter().map(|x| x - d0 - 1).collect();
    let a_p: Vec<i64> = delta_p.iter().map(|x| x - d0 - 1).collect();
    let c = deg_leq(d, dp).then(|| a.iter().zip(&a_p).map(|(x, y)| x - y).collect::<Vec<_>>());
    if let Some(c) = &c {
        assert!(c.iter().all(|&ci| ci >= 0), "a - a' must be nonnegative when d ⪯ d'");
    }
    Ok(EsData {
        d: d.clone(),
        dp: dp.clone(),
        r: r as usize,
        interval,
        interval_p,
        delta,
        delta_p,
        a,
        a_p,
        c,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRow {
    /// Homological degree in the Koszul complex.
    pub i: usize,
    /// `(-d_0 - i, a_1 - i, ..., a_r - i)`; the first coordinate is the
    /// `P^{n-1}` twist.
    pub twist: Vec<i64>,
    #[serde(with = "crate::arith::decimal")]
    pub koszul_rank: BigUint,
}

/// Twists of the terms of a twisted Koszul complex `K_•`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistTable {
    pub side: Side,
    pub seq: DegreeSequence,
    pub rows: Vec<TwistRow>,
}

pub fn twist_table(e: &EsData, side: Side) -> TwistTable {
    let len = e.koszul_length(side);
    let a = e.a_of(side);
    let rows = (0..=len)
        .map(|i| {
            let ii = i as i64;
            let mut twist = Vec::with_capacity(a.len() + 1);
            twist.push(-e.d0() - ii);
            twist.extend(a.iter().map(|x| x - ii));
            TwistRow {
                i,
                twist,
                koszul_rank: binomial(len as u64, ii),
            }
        })
        .collect();
    TwistTable {
        side,
        seq: e.seq(side).clone(),
        rows,
    }
}

impl fmt::Display for TwistTable {
    /// Rows labelled by `-i`; a `*` marks a `-1` twist on a `P^1` factor,
    /// which is the homological degree that pushforward along that factor
    /// removes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prime = if self.side == Side::Primed { "'" } else { "" };
        writeln!(f, "d{prime} = {}", self.seq)?;
        writeln!(f, "{:>4} | twist in K{prime}_i", "i")?;
        for row in &self.rows {
            let cells: Vec<String> = row
                .twist
                .iter()
                .enumerate()
                .map(|(k, t)| if k > 0 && *t == -1 { format!("{t}*") } else { t.to_string() })
                .collect();
            writeln!(f, "{:>4} | ({})", -(row.i as i64), cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorKind {
    H0,
    H1,
}

/// `H^0(P^1, O(m))` for `m >= 0` or `H^1(P^1, O(m))` for `m <= -2`, with its
/// monomial basis ordered by decreasing `y_0` exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CohomologyFactor {
    pub kind: FactorKind,
    pub degree: i64,
}

impl CohomologyFactor {
    fn new(degree: i64) -> Self {
        assert_ne!(degree, -1, "O(-1) has no cohomology on P^1");
        let kind = if degree >= 0 { FactorKind::H0 } else { FactorKind::H1 };
        CohomologyFactor { kind, degree }
    }

    pub fn dim(&self) -> u64 {
        match self.kind {
            FactorKind::H0 => (self.degree + 1) as u64,
            FactorKind::H1 => (-self.degree - 1) as u64,
        }
    }

    /// True if `col` is the exponent column of a basis monomial.
    pub fn contains(&self, col: [i64; 2]) -> bool {
        if col[0] + col[1] != self.degree {
            return false;
        }
        match self.kind {
            FactorKind::H0 => col[0] >= 0 && col[1] >= 0,
            FactorKind::H1 => col[0] <= -1 && col[1] <= -1,
        }
    }

    pub fn column(&self, idx: u64) -> [i64; 2] {
        debug_assert!(idx < self.dim());
        let t = idx as i64;
        match self.kind {
            FactorKind::H0 => [self.degree - t, t],
            FactorKind::H1 => [-1 - t, self.degree + 1 + t],
        }
    }

    pub fn index_of(&self, col: [i64; 2]) -> Option<u64> {
        if !self.contains(col) {
            return None;
        }
        Some(match self.kind {
            FactorKind::H0 => col[1] as u64,
            FactorKind::H1 => (-1 - col[0]) as u64,
        })
    }
}

impl fmt::Display for CohomologyFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = match self.kind {
            FactorKind::H0 => 0,
            FactorKind::H1 => 1,
        };
        write!(f, "H^{h}(P^1,O({}))", self.degree)
    }
}

/// `F_j = S(-d_j)^{C(ℓ+r, d_j-d_0)} ⊗ ⨂ H^1(O(m_i)) ⊗ ⨂ H^0(O(m_i))` with
/// `m_i = a_i - d_j + d_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeModuleDescriptor {
    pub side: Side,
    pub j: usize,
    /// Generators of `F_j` sit in degree `d_j`.
    pub twist: i64,
    /// `ℓ + r`: number of Koszul generators `ε_1, ..., ε_{ℓ+r}`.
    pub koszul_len: usize,
    /// `d_j - d_0`: exterior degree of the Koszul term.
    pub wedge_degree: usize,
    #[serde(with = "crate::arith::decimal")]
    pub koszul_rank: BigUint,
    /// Number of leading `H^1` factors.
    pub split: usize,
    pub factors: Vec<CohomologyFactor>,
    #[serde(with = "crate::arith::decimal")]
    pub total_rank: BigUint,
}

impl FreeModuleDescriptor {
    fn factor_radix(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, f| acc * f.dim())
    }

    /// True if `b` is one of the basis elements of this module.
    pub fn contains(&self, b: &BasisElement) -> bool {
        b.subset.len() == self.wedge_degree
            && b.subset.windows(2).all(|w| w[0] < w[1])
            && b.subset.first().is_none_or(|&s| s >= 1)
            && b.subset.last().is_none_or(|&s| s <= self.koszul_len)
            && b.exps.ncols() == self.factors.len()
            && self.factors.iter().zip(&b.exps.cols).all(|(f, c)| f.contains(*c))
    }

    /// Position of `b` in the ordering of [`enumerate_basis`].
    pub fn index_of(&self, b: &BasisElement) -> Option<BigUint> {
        if !self.contains(b) {
            return None;
        }
        let mut exp_idx = BigUint::zero();
        for (f, c) in self.factors.iter().zip(&b.exps.cols) {
            exp_idx = exp_idx * f.dim() + f.index_of(*c)?;
        }
        Some(colex_rank(&b.subset) * self.factor_radix() + exp_idx)
    }

    /// Inverse of [`index_of`](Self::index_of).
    pub fn element(&self, idx: &BigUint) -> Option<BasisElement> {
        if idx >= &self.total_rank {
            return None;
        }
        let radix = self.factor_radix();
        let mut exp_idx = idx % &radix;
        let subset = colex_unrank(&(idx / &radix), self.wedge_degree);
        let mut cols = vec![[0i64; 2]; self.factors.len()];
        for (k, f) in self.factors.iter().enumerate().rev() {
            let dim = BigUint::from(f.dim());
            let t = (&exp_idx % &dim).to_u64().unwrap();
            exp_idx /= dim;
            cols[k] = f.column(t);
        }
        Some(BasisElement {
            subset,
            exps: ExponentMatrix::new(cols),
        })
    }
}

impl fmt::Display for FreeModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prime = if self.side == Side::Primed { "'" } else { "" };
        write!(
            f,
            "F{prime}_{} = S({})^C({},{})",
            self.j, -self.twist, self.koszul_len, self.wedge_degree
        )?;
        for fac in &self.factors {
            write!(f, " ⊗ {fac}")?;
        }
        write!(f, "  [rank {}]", self.total_rank)
    }
}

pub fn free_module(e: &EsData, side: Side, j: usize) -> Result<FreeModuleDescriptor> {
    let seq = e.seq(side);
    let dj = seq.get(j).ok_or(Error::IndexOutOfRange {
        index: j,
        max: seq.length(),
    })?;
    let d0 = e.d0();
    let koszul_len = e.koszul_length(side);
    let wedge = dj - d0;
    debug_assert!(wedge >= 0);
    let factors: Vec<CohomologyFactor> = e
        .a_of(side)
        .iter()
        .map(|a| CohomologyFactor::new(a - dj + d0))
        .collect();
    let split = factors.iter().filter(|f| f.kind == FactorKind::H1).count();
    debug_assert!(factors[..split].iter().all(|f| f.kind == FactorKind::H1));
    let koszul_rank = binomial(koszul_len as u64, wedge);
    let total_rank = factors.iter().fold(koszul_rank.clone(), |acc, f| acc * f.dim());
    Ok(FreeModuleDescriptor {
        side,
        j,
        twist: dj,
        koszul_len,
        wedge_degree: wedge as usize,
        koszul_rank,
        split,
        factors,
        total_rank,
    })
}

/// `ε_I ⊗ y^E`: an exterior basis vector tensored with a monomial of the
/// cohomology factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisElement {
    /// Sorted 1-based indices `I = {i_1 < ... < i_k}`.
    pub subset: Vec<usize>,
    pub exps: ExponentMatrix,
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.subset.iter().map(|i| i.to_string()).collect();
        write!(f, "e_{{{}}} ⊗ y^{}", idx.join(","), self.exps)
    }
}

/// Colex rank of a sorted 1-based subset: `Σ_k C(s_k - 1, k)`.
fn colex_rank(subset: &[usize]) -> BigUint {
    subset
        .iter()
        .enumerate()
        .map(|(k, &s)| binomial(s as u64 - 1, k as i64 + 1))
        .sum()
}

fn colex_unrank(rank: &BigUint, k: usize) -> Vec<usize> {
    let mut rank = rank.clone();
    let mut out = vec![0usize; k];
    for pos in (1..=k).rev() {
        // largest m with C(m, pos) <= rank; the element is m + 1
        let mut m = pos - 1;
        while binomial(m as u64 + 1, pos as i64) <= rank {
            m += 1;
        }
        rank -= binomial(m as u64, pos as i64);
        out[pos - 1] = m + 1;
    }
    out
}

/// Advances a sorted subset of `{1..=n}` to its colex successor.
fn next_colex(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in 0..k {
        let limit = if i + 1 < k { s[i + 1] } else { n + 1 };
        if s[i] + 1 < limit {
            s[i] += 1;
            for (t, v) in s.iter_mut().take(i).enumerate() {
                *v = t + 1;
            }
            return true;
        }
    }
    false
}

/// Every basis element of `F_j`: subsets in colex order, then exponent
/// matrices lexicographically with the first column most significant.
pub fn enumerate_basis(fm: &FreeModuleDescriptor, cap: usize) -> Result<Vec<BasisElement>> {
    let total = fm.total_rank.to_usize().filter(|&t| t <= cap).ok_or_else(|| Error::BasisTooLarge {
        rank: fm.total_rank.to_string(),
        cap,
    })?;
    let mut out = Vec::with_capacity(total);
    if total == 0 {
        return Ok(out);
    }
    let dims: Vec<u64> = fm.factors.iter().map(|f| f.dim()).collect();
    let mut subset: Vec<usize> = (1..=fm.wedge_degree).collect();
    loop {
        let mut odo = vec![0u64; dims.len()];
        'exps: loop {
            let cols = fm.factors.iter().zip(&odo).map(|(f, &t)| f.column(t)).collect();
            out.push(BasisElement {
                subset: subset.clone(),
                exps: ExponentMatrix::new(cols),
            });
            for k in (0..dims.len()).rev() {
                odo[k] += 1;
                if odo[k] < dims[k] {
                    continue 'exps;
                }
                odo[k] = 0;
            }
            break;
        }
        if !next_colex(&mut subset, fm.koszul_len) {
            break;
        }
    }
    debug_assert_eq!(out.len(), total);
    Ok(out)
}

/// The distinguished basis element of `F'_j` that `ν_j` does not kill:
/// `ε_{1..d_j-d_0} ⊗ y^E` with column `(m'_i + 1, -1)` on `H^1` factors and
/// `(m'_i, 0)` on `H^0` factors.
pub fn witness_element(e: &EsData, j: usize) -> Result<BasisElement> {
    match (e.d.get(j), e.dp.get(j)) {
        (Some(a), Some(b)) if a == b => {}
        _ => return Err(Error::NoTouchingIndex),
    }
    let fm = free_module(e, Side::Primed, j)?;
    let cols = fm
        .factors
        .iter()
        .map(|f| match f.kind {
            FactorKind::H1 => [f.degree + 1, -1],
            FactorKind::H0 => [f.degree, 0],
        })
        .collect();
    Ok(BasisElement {
        subset: (1..=fm.wedge_degree).collect(),
        exps: ExponentMatrix::new(cols),
    })
}

fn shift_vector(e: &EsData) -> Result<&[i64]> {
    e.c.as_deref().ok_or(Error::NotComparable)
}

/// `ν_j(b)` for a basis element `b` of `F'_j`: multiply by `h = y_0^c` and
/// keep the result if it is a basis monomial of `F_j`, otherwise it maps to
/// zero in cohomology (`None`).
pub fn nu_apply(e: &EsData, j: usize, b: &BasisElement) -> Result<Option<BasisElement>> {
    let c = shift_vector(e)?;
    let target = free_module(e, Side::Unprimed, j)?;
    let image = BasisElement {
        subset: b.subset.clone(),
        exps: b.exps.add_top(c),
    };
    Ok(target.contains(&image).then_some(image))
}

/// 0/1 sparse matrix stored as `(row, col)` positions of its ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub entries: Vec<(usize, usize)>,
}

impl SparseMatrix {
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.entries.binary_search_by(|&(r, c)| (c, r).cmp(&(col, row))).is_ok()
    }
}

/// `ν_j : F'_j → F_j` as an implicit matrix over the monomial bases. Each
/// column has at most one nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuOperator {
    pub j: usize,
    pub source: FreeModuleDescriptor,
    pub target: FreeModuleDescriptor,
    pub c: Vec<i64>,
}

pub fn nu_operator(e: &EsData, j: usize) -> Result<NuOperator> {
    let c = shift_vector(e)?.to_vec();
    if e.d.get(j).is_none() || e.d.get(j) != e.dp.get(j) {
        return Err(Error::NoTouchingIndex);
    }
    Ok(NuOperator {
        j,
        source: free_module(e, Side::Primed, j)?,
        target: free_module(e, Side::Unprimed, j)?,
        c,
    })
}

impl NuOperator {
    pub fn apply(&self, b: &BasisElement) -> Option<BasisElement> {
        let image = BasisElement {
            subset: b.subset.clone(),
            exps: b.exps.add_top(&self.c),
        };
        self.target.contains(&image).then_some(image)
    }

    /// Row index of the single nonzero entry in column `col`, if any.
    pub fn column(&self, col: &BigUint) -> Option<BigUint> {
        let b = self.source.element(col)?;
        self.target.index_of(&self.apply(&b)?)
    }

    /// Number of nonzero entries.
    ///
    /// The action is columnwise on exponents and the identity on `ε_I`
    /// (every `I ⊆ {1..ℓ'+r}` is also a subset of `{1..ℓ+r}`), so the count
    /// factors over the cohomology factors.
    pub fn nnz(&self) -> BigUint {
        let mut count = self.source.koszul_rank.clone();
        if self.source.koszul_len > self.target.koszul_len {
            // only subsets inside {1..ℓ+r} survive
            count = binomial(self.target.koszul_len as u64, self.source.wedge_degree as i64);
        }
        for ((sf, tf), ci) in self.source.factors.iter().zip(&self.target.factors).zip(&self.c) {
            let alive = (0..sf.dim())
                .filter(|&t| {
                    let col = sf.column(t);
                    tf.contains([col[0] + ci, col[1]])
                })
                .count();
            count *= alive;
        }
        count
    }

    /// Materializes the matrix (rows = `F_j` basis, columns = `F'_j` basis).
    pub fn to_sparse(&self, cap: usize) -> Result<SparseMatrix> {
        let too_large = |fm: &FreeModuleDescriptor| Error::BasisTooLarge {
            rank: fm.total_rank.to_string(),
            cap,
        };
        let nrows = self
            .target
            .total_rank
            .to_usize()
            .filter(|&r| r <= cap)
            .ok_or_else(|| too_large(&self.target))?;
        let cols = enumerate_basis(&self.source, cap)?;
        let mut entries = Vec::new();
        for (k, b) in cols.iter().enumerate() {
            if let Some(img) = self.apply(b) {
                let row = self.target.index_of(&img).unwrap().to_usize().unwrap();
                entries.push((row, k));
            }
        }
        Ok(SparseMatrix {
            nrows,
            ncols: cols.len(),
            entries,
        })
    }
}

/// `ν_j` as an explicit sparse matrix, subject to [`DEFAULT_BASIS_CAP`].
pub fn nu_matrix(e: &EsData, j: usize) -> Result<SparseMatrix> {
    nu_operator(e, j)?.to_sparse(DEFAULT_BASIS_CAP)
}

/// Everything needed to check by hand that `Hom(M', M)_0 ≠ 0` for the
/// modules of the construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub data: EsData,
    /// The touching index used (the smallest one).
    pub j: usize,
    pub touching: Vec<usize>,
    /// Exponents of `h = y_0^c`.
    pub h: Vec<i64>,
    pub twists: TwistTable,
    pub twists_p: TwistTable,
    /// `F_j` (target of `ν_j`).
    pub target: FreeModuleDescriptor,
    /// `F'_j` (source of `ν_j`).
    pub source: FreeModuleDescriptor,
    pub witness: BasisElement,
    pub image: BasisElement,
    pub witness_index: String,
    pub image_index: String,
}

impl fmt::Display for WitnessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.data;
        writeln!(f, "d  = {}", e.d)?;
        writeln!(f, "d' = {}", e.dp)?;
        writeln!(f, "r = {}", e.r)?;
        writeln!(f, "delta = {:?}, a = {:?}", e.delta, e.a)?;
        writeln!(f, "delta' = {:?}, a' = {:?}", e.delta_p, e.a_p)?;
        writeln!(f, "c = a - a' = {:?}", self.h)?;
        writeln!(f, "touching indices {:?}, using j = {}", self.touching, self.j)?;
        writeln!(f, "{}", self.source)?;
        writeln!(f, "{}", self.target)?;
        writeln!(f, "witness in F'_{}: {}  (index {})", self.j, self.witness, self.witness_index)?;
        writeln!(f, "image in F_{}:   {}  (index {})", self.j, self.image, self.image_index)?;
        write!(f, "nu_{} != 0, so Hom(M', M)_0 != 0", self.j)
    }
}

/// Certificate for `Hom(M', M)_0 ≠ 0`, requiring `d ⪯ d'` and a touching
/// index `j <= ℓ(d')` with `d_j = d'_j`.
pub fn hom_witness(d: &DegreeSequence, dp: &DegreeSequence) -> Result<WitnessCertificate> {
    if !deg_leq(d, dp) {
        return Err(Error::NotComparable);
    }
    let touching = touching_indices(d, dp);
    let j = *touching.first().ok_or(Error::NoTouchingIndex)?;
    let data = es_setup(d, dp)?;
    let op = nu_operator(&data, j)?;
    let witness = witness_element(&data, j)?;
    let image = op
        .apply(&witness)
        .expect("the distinguished witness always has a nonzero image");
    let witness_index = op.source.index_of(&witness).expect("witness is a basis element");
    let image_index = op.target.index_of(&image).expect("image is a basis element");
    Ok(WitnessCertificate {
        twists: twist_table(&data, Side::Unprimed),
        twists_p: twist_table(&data, Side::Primed),
        h: op.c.clone(),
        data,
        j,
        touching,
        target: op.target,
        source: op.source,
        witness,
        image,
        witness_index: witness_index.to_string(),
        image_index: image_index.to_string(),
    })
}

/// [`shift_reduction`] followed by [`hom_witness`]: the certificate is for
/// `Hom(M', M)_{-t}`.
pub fn reduced_hom_witness(d: &DegreeSequence, dp: &DegreeSequence) -> Result<(i64, WitnessCertificate)> {
    let (t, dpp) = shift_reduction(d, dp)?;
    Ok((t, hom_witness(d, &dpp)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(s: &str) -> DegreeSequence {
        DegreeSequence::parse(s).unwrap()
    }

    fn example() -> EsData {
        es_setup(&ds("0,2,4,5,6"), &ds("1,2,4,7,inf")).unwrap()
    }

    #[test]
    fn setup_example() {
        let e = example();
        assert_eq!(e.r, 4);
        assert_eq!(e.delta, vec![1, 3, 7, 8]);
        assert_eq!(e.a, vec![0, 2, 6, 7]);
        assert_eq!(e.delta_p, vec![0, 3, 5, 6]);
        assert_eq!(e.a_p, vec![-1, 2, 4, 5]);
        assert_eq!(e.c, Some(vec![1, 0, 2, 2]));
    }

    #[test]
    fn setup_koszul() {
        let d = ds("0,1,2,3");
        let e = es_setup(&d, &d).unwrap();
        assert_eq!(e.r, 0);
        assert!(e.delta.is_empty() && e.a.is_empty());
        assert_eq!(e.c, Some(vec![]));
    }

    #[test]
    fn setup_r_seven() {
        let e = es_setup(&ds("0,2,3,5"), &ds("0,3,9,10")).unwrap();
        assert_eq!(e.r, 7);
    }

    #[test]
    fn setup_rejects_lower_start() {
        // d'_0 < d_0 leaves d' outside D'
        assert!(matches!(
            es_setup(&ds("1,2,3"), &ds("0,2,3")),
            Err(Error::DeltaSizeMismatch { .. })
        ));
    }

    #[test]
    fn twist_rows() {
        let e = example();
        let t = twist_table(&e, Side::Unprimed);
        assert_eq!(t.rows[3].twist, vec![-3, -3, -1, 3, 4]);
        assert_eq!(t.rows[0].twist, vec![0, 0, 2, 6, 7]);
        let tp = twist_table(&e, Side::Primed);
        assert_eq!(tp.rows[6].twist, vec![-6, -7, -4, -2, -1]);
        assert_eq!(tp.rows.len(), 8);
    }

    #[test]
    fn free_module_example() {
        let e = example();
        let f2 = free_module(&e, Side::Unprimed, 2).unwrap();
        let degs: Vec<_> = f2.factors.iter().map(|f| (f.kind, f.degree)).collect();
        use FactorKind::*;
        assert_eq!(degs, vec![(H1, -4), (H1, -2), (H0, 2), (H0, 3)]);
        assert_eq!(f2.total_rank, BigUint::from(2520u32));
        assert_eq!(f2.split, 2);
        let f2p = free_module(&e, Side::Primed, 2).unwrap();
        assert_eq!(f2p.total_rank, BigUint::from(280u32));
        assert!(free_module(&e, Side::Primed, 4).is_err());
    }

    #[test]
    fn factor_bases() {
        let h1 = CohomologyFactor::new(-2);
        assert_eq!(h1.dim(), 1);
        assert_eq!(h1.column(0), [-1, -1]);
        let h0 = CohomologyFactor::new(2);
        let cols: Vec<_> = (0..h0.dim()).map(|t| h0.column(t)).collect();
        assert_eq!(cols, vec![[2, 0], [1, 1], [0, 2]]);
    }

    #[test]
    fn basis_size_and_ranking() {
        let e = example();
        let f2 = free_module(&e, Side::Unprimed, 2).unwrap();
        let basis = enumerate_basis(&f2, DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(basis.len(), 2520);
        for (k, b) in basis.iter().enumerate() {
            assert_eq!(f2.index_of(b), Some(BigUint::from(k)));
            assert_eq!(f2.element(&BigUint::from(k)).as_ref(), Some(b));
        }
        assert!(matches!(enumerate_basis(&f2, 100), Err(Error::BasisTooLarge { .. })));
    }

    #[test]
    fn colex_roundtrip() {
        let mut s = vec![1, 2, 3];
        let mut k = 0u32;
        loop {
            assert_eq!(colex_rank(&s), BigUint::from(k));
            assert_eq!(colex_unrank(&BigUint::from(k), 3), s);
            k += 1;
            if !next_colex(&mut s, 6) {
                break;
            }
        }
        assert_eq!(k, 20);
    }

    #[test]
    fn witness_example() {
        let e = example();
        let w = witness_element(&e, 2).unwrap();
        assert_eq!(w.subset, vec![1, 2, 3, 4]);
        assert_eq!(w.exps.cols, vec![[-4, -1], [-1, -1], [0, 0], [1, 0]]);
        assert!(free_module(&e, Side::Primed, 2).unwrap().contains(&w));
        let img = nu_apply(&e, 2, &w).unwrap().unwrap();
        assert_eq!(img.subset, vec![1, 2, 3, 4]);
        assert_eq!(img.exps.cols, vec![[-3, -1], [-1, -1], [2, 0], [3, 0]]);
        assert_eq!(witness_element(&e, 0), Err(Error::NoTouchingIndex));
    }

    #[test]
    fn nu_kills_top_of_h1_range() {
        let e = example();
        // column 1 has c_1 = 1; top entry -1 is pushed to 0, outside H^1
        let b = BasisElement {
            subset: vec![1, 2, 3, 4],
            exps: ExponentMatrix::new(vec![[-1, -4], [-1, -1], [0, 0], [1, 0]]),
        };
        assert!(free_module(&e, Side::Primed, 2).unwrap().contains(&b));
        assert_eq!(nu_apply(&e, 2, &b).unwrap(), None);
    }

    #[test]
    fn nu_matrix_example() {
        let e = example();
        let m = nu_matrix(&e, 2).unwrap();
        assert_eq!((m.nrows, m.ncols), (2520, 280));
        assert!(!m.is_zero());
        let op = nu_operator(&e, 2).unwrap();
        assert_eq!(BigUint::from(m.nnz()), op.nnz());
    }

    #[test]
    fn nu_identity_when_equal() {
        let d = ds("0,2,3,5");
        let e = es_setup(&d, &d).unwrap();
        for j in 0..=3 {
            let m = nu_matrix(&e, j).unwrap();
            assert_eq!(m.nrows, m.ncols);
            assert_eq!(m.nnz(), m.ncols);
            assert!(m.entries.iter().all(|&(r, c)| r == c));
        }
    }

    #[test]
    fn hom_witness_examples() {
        let cert = hom_witness(&ds("0,2,4,5,6"), &ds("1,2,4,7,inf")).unwrap();
        assert_eq!(cert.j, 1);
        assert_eq!(cert.touching, vec![1, 2]);
        let d = ds("0,2,5");
        let cert = hom_witness(&d, &d).unwrap();
        assert_eq!(cert.j, 0);
        assert_eq!(cert.witness, cert.image);
        assert_eq!(hom_witness(&ds("0,1,2"), &ds("1,2,3")).unwrap_err(), Error::NoTouchingIndex);
        let (t, cert) = reduced_hom_witness(&ds("0,1,2"), &ds("1,2,3")).unwrap();
        assert_eq!(t, 1);
        assert_eq!(cert.j, 0);
        assert_eq!(hom_witness(&ds("0,3,inf"), &ds("0,2,4")).unwrap_err(), Error::NotComparable);
    }
}
