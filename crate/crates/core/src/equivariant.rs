//! `GL(V)`-equivariant pure resolutions and supernatural bundles in
//! characteristic zero.
//!
//! The generators of the `j`-th term of the equivariant resolution of type
//! `d` form an irreducible representation of highest weight `λ(d)_j`. These
//! weights are tracked by starting from the Koszul complex and applying the
//! box-removal rule for a unit increment of `d_i`:
//!
//! * `λ_i` is unchanged,
//! * for `j < i` one box is removed from part `i`,
//! * for `j > i` one box is removed from part `i + 1`.
//!
//! Parts may go negative along the way; a single determinant twist applied
//! to all shapes at the end makes the smallest part zero.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, horizontal_strips, weyl_dim, GLWeight};
use crate::betti::{deg_leq, touching_indices, DegreeSequence};
use crate::error::{Error, Result};
use crate::supernatural::{h_value, root_leq, RootSequence};

/// Highest weights `λ(d)_0, ..., λ(d)_n` of the equivariant resolution of
/// type `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqResolutionShape {
    pub d: DegreeSequence,
    pub shapes: Vec<GLWeight>,
    /// Constant added to every part during normalization.
    pub det_twist: i64,
}

impl fmt::Display for EqResolutionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d = {}  (det twist {})", self.d, self.det_twist)?;
        for (j, s) in self.shapes.iter().enumerate() {
            writeln!(f, "lambda_{j} = {s}")?;
            write!(f, "{}", young_columns(s))?;
        }
        Ok(())
    }
}

/// Young diagram drawn with `λ_i` boxes in the `i`-th column.
pub fn young_columns(w: &GLWeight) -> String {
    let height = w.parts().iter().copied().max().unwrap_or(0).max(0);
    if height == 0 {
        return "  (empty)\n".to_string();
    }
    let mut out = String::new();
    for row in 0..height {
        out.push_str("  ");
        for &p in w.parts() {
            out.push_str(if p > row { "[]" } else { "  " });
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    out
}

fn require_finite(d: &DegreeSequence) -> Result<()> {
    if !d.is_fully_finite() {
        return Err(Error::InvalidSequence(format!("{d} has infinite entries")));
    }
    if d.n() == 0 {
        return Err(Error::InvalidSequence("need at least one variable".into()));
    }
    Ok(())
}

/// Applies the box-removal rule for `d_i ↦ d_i + 1` to raw shapes.
fn remove_boxes(shapes: &mut [Vec<i64>], i: usize) {
    for (j, s) in shapes.iter_mut().enumerate() {
        if j < i {
            s[i - 1] -= 1;
        } else if j > i {
            s[i] -= 1;
        }
    }
}

fn koszul_shapes(n: usize) -> Vec<Vec<i64>> {
    (0..=n)
        .map(|j| (0..n).map(|k| i64::from(k < j)).collect())
        .collect()
}

fn normalize(d: &DegreeSequence, raw: Vec<Vec<i64>>) -> Result<EqResolutionShape> {
    let min = raw.iter().flatten().copied().min().unwrap_or(0);
    let shapes = raw
        .into_iter()
        .map(|s| GLWeight::new(s.into_iter().map(|p| p - min).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(EqResolutionShape {
        d: d.clone(),
        shapes,
        det_twist: -min,
    })
}

/// Unit-increment positions taking the Koszul sequence `(d_0, ..., d_0 + n)`
/// to `d`, largest position first.
fn koszul_increments(d: &DegreeSequence) -> Vec<usize> {
    let d0 = d.first();
    let mut order = Vec::new();
    for i in (0..=d.n()).rev() {
        let steps = d.finite()[i] - (d0 + i as i64);
        order.extend(std::iter::repeat_n(i, steps as usize));
    }
    order
}

/// Shapes `λ(d)_j` of the equivariant resolution of type `d`.
pub fn efw_shapes(d: &DegreeSequence) -> Result<EqResolutionShape> {
    require_finite(d)?;
    efw_shapes_with_order(d, &koszul_increments(d))
}

/// Like [`efw_shapes`] but applying the unit increments from the Koszul
/// sequence in the given order. Fails if an intermediate sequence is not a
/// degree sequence or the increments do not reach `d`.
pub fn efw_shapes_with_order(d: &DegreeSequence, order: &[usize]) -> Result<EqResolutionShape> {
    require_finite(d)?;
    let n = d.n();
    let d0 = d.first();
    let mut cur: Vec<i64> = (0..=n as i64).map(|k| d0 + k).collect();
    let mut raw = koszul_shapes(n);
    for &i in order {
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        cur[i] += 1;
        if (i < n && cur[i] >= cur[i + 1]) || cur[i] > d.finite()[i] {
            return Err(Error::InvalidSequence(format!("intermediate sequence {cur:?}")));
        }
        remove_boxes(&mut raw, i);
    }
    if cur != d.finite() {
        return Err(Error::InvalidSequence(format!("increments end at {cur:?}, not {d}")));
    }
    normalize(d, raw)
}

/// The two weights `λ = λ(d)_0` and `μ = λ(d)_1` in closed form:
/// `λ_ℓ = Σ_{j=ℓ}^{n-1} (d_{j+1} - d_j - 1)`, `λ_n = 0`,
/// `μ_1 = λ_1 + d_1 - d_0`, `μ_ℓ = λ_ℓ` otherwise.
pub fn efw_base_case(d: &DegreeSequence) -> Result<(GLWeight, GLWeight)> {
    require_finite(d)?;
    let n = d.n();
    let v = d.finite();
    let mut lambda = vec![0i64; n];
    for l in 1..n {
        lambda[l - 1] = (l..n).map(|j| v[j + 1] - v[j] - 1).sum();
    }
    let mut mu = lambda.clone();
    mu[0] += v[1] - v[0];
    Ok((GLWeight::new(lambda)?, GLWeight::new(mu)?))
}

/// Unit-increment chain `d = d^0 < d^1 < ... < d^r = d'` (excluding `d`),
/// incrementing the largest differing position first.
pub fn increment_chain(d: &DegreeSequence, dp: &DegreeSequence) -> Result<Vec<DegreeSequence>> {
    require_finite(d)?;
    require_finite(dp)?;
    if !deg_leq(d, dp) {
        return Err(Error::NotComparable);
    }
    if touching_indices(d, dp).is_empty() {
        return Err(Error::NoTouchingIndex);
    }
    let mut cur = d.finite().to_vec();
    let mut chain = Vec::new();
    for i in (0..=d.n()).rev() {
        while cur[i] < dp.finite()[i] {
            cur[i] += 1;
            let next = DegreeSequence::from_finite(&cur, d.n())
                .unwrap_or_else(|e| panic!("largest-first increments stay valid: {e}"));
            chain.push(next);
        }
    }
    Ok(chain)
}

/// Whether the Pieri projection `S_{after_j} V ⊗ Sym^N V → S_{before_j} V`
/// exists, i.e. `before_j` is `after_j` plus a horizontal strip of `N`
/// boxes; such a projection onto an irreducible summand is surjective.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieriVerdict {
    pub j: usize,
    pub surjective: bool,
}

/// One step `from → to` raising position `position` by `boxes`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqStep {
    pub position: usize,
    pub boxes: u64,
    pub from: DegreeSequence,
    pub to: DegreeSequence,
    /// `λ(from)_j`, normalized.
    pub before: Vec<GLWeight>,
    /// `λ(to)_j` in the same determinant frame as `before`.
    pub after: Vec<GLWeight>,
    pub verdicts: Vec<PieriVerdict>,
}

impl EqStep {
    pub fn surjective_at(&self, j: usize) -> bool {
        self.verdicts.iter().any(|v| v.j == j && v.surjective)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqHomCertificate {
    pub d: DegreeSequence,
    pub dp: DegreeSequence,
    pub chain: Vec<DegreeSequence>,
    /// One entry per unit increment.
    pub steps: Vec<EqStep>,
    /// Increments grouped by position (`Sym^N` shortcut).
    pub groups: Vec<EqStep>,
    pub touching: Vec<usize>,
    /// The touching index `k` used for the composite surjection (the
    /// largest one).
    pub touching_index: usize,
}

impl fmt::Display for EqHomCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d  = {}", self.d)?;
        writeln!(f, "d' = {}", self.dp)?;
        writeln!(
            f,
            "chain length {} ({} grouped steps), touching indices {:?}, k = {}",
            self.chain.len(),
            self.groups.len(),
            self.touching,
            self.touching_index
        )?;
        for g in &self.groups {
            writeln!(f, "{} -> {}  (position {}, Sym^{})", g.from, g.to, g.position, g.boxes)?;
            for v in &g.verdicts {
                writeln!(
                    f,
                    "  j={}: {} <- {} ⊗ Sym^{}: {}",
                    v.j,
                    g.before[v.j],
                    g.after[v.j],
                    g.boxes,
                    if v.surjective { "surjective" } else { "NOT surjective" }
                )?;
            }
        }
        write!(f, "composite map at k = {} is surjective", self.touching_index)
    }
}

fn pieri_step(from: &DegreeSequence, to: &DegreeSequence, position: usize, boxes: u64) -> Result<EqStep> {
    let before = efw_shapes(from)?.shapes;
    let mut raw: Vec<Vec<i64>> = before.iter().map(|w| w.parts().to_vec()).collect();
    for _ in 0..boxes {
        remove_boxes(&mut raw, position);
    }
    let mut after = Vec::with_capacity(raw.len());
    let mut verdicts = Vec::new();
    for (j, parts) in raw.into_iter().enumerate() {
        let w = GLWeight::new(parts).map_err(|_| Error::PieriFailure { step: position, j })?;
        if j != position {
            let ok = horizontal_strips(&w, boxes).contains(&before[j]);
            verdicts.push(PieriVerdict { j, surjective: ok });
        }
        after.push(w);
    }
    // same resolution as efw_shapes(to), up to a determinant twist
    let expected = efw_shapes(to)?;
    let shift = expected.shapes[0].first() - after[0].first();
    debug_assert!(after.iter().zip(&expected.shapes).all(|(a, e)| &a.det_twist(shift) == e));
    Ok(EqStep {
        position,
        boxes,
        from: from.clone(),
        to: to.clone(),
        before,
        after,
        verdicts,
    })
}

/// Certificate for `Hom_{GL(V)}(M', M)_0 ≠ 0`: every unit step in the
/// increment chain admits Pieri projections at all `j` other than the moved
/// position, so at the touching index the composite is a surjection.
pub fn eq_hom_witness(d: &DegreeSequence, dp: &DegreeSequence) -> Result<EqHomCertificate> {
    let chain = increment_chain(d, dp)?;
    let touching = touching_indices(d, dp);
    let k = *touching.last().expect("increment_chain checked touching");
    let mut steps = Vec::with_capacity(chain.len());
    let mut prev = d.clone();
    for (idx, next) in chain.iter().enumerate() {
        let position = (0..=d.n())
            .find(|&i| prev.get(i) != next.get(i))
            .expect("consecutive chain members differ");
        let step = pieri_step(&prev, next, position, 1)?;
        if let Some(v) = step.verdicts.iter().find(|v| !v.surjective) {
            return Err(Error::PieriFailure { step: idx, j: v.j });
        }
        steps.push(step);
        prev = next.clone();
    }
    let mut groups = Vec::new();
    let mut cur = d.clone();
    for i in (0..=d.n()).rev() {
        let boxes = dp.finite()[i] - d.finite()[i];
        if boxes == 0 {
            continue;
        }
        let mut v = cur.finite().to_vec();
        v[i] += boxes;
        let next = DegreeSequence::from_finite(&v, d.n())?;
        let g = pieri_step(&cur, &next, i, boxes as u64)?;
        if let Some(v) = g.verdicts.iter().find(|v| !v.surjective) {
            return Err(Error::PieriFailure { step: groups.len(), j: v.j });
        }
        groups.push(g);
        cur = next;
    }
    Ok(EqHomCertificate {
        d: d.clone(),
        dp: dp.clone(),
        chain,
        steps,
        groups,
        touching,
        touching_index: k,
    })
}

/// Outcome of Bott's algorithm for `S_w Q ⊗ O(e)` on `P^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BWBResult {
    pub vanishing: bool,
    /// Cohomological degree of the only nonzero group.
    pub degree: Option<usize>,
    /// Highest weight of that group as a `GL_n`-representation.
    pub weight: Option<GLWeight>,
    #[serde(with = "crate::arith::decimal")]
    pub dim: BigInt,
}

/// Bott's algorithm on `α = (w_1, ..., w_{n-1}, -e)`: add
/// `ρ = (n-1, ..., 1, 0)`; a repeated entry means all cohomology vanishes,
/// otherwise the number of inversions is the cohomological degree and
/// `sort(α + ρ) - ρ` the weight.
pub fn bwb(w: &GLWeight, e: i64, n: usize) -> Result<BWBResult> {
    if n < 2 || w.width() != n - 1 {
        return Err(Error::LengthMismatch {
            expected: n.saturating_sub(1),
            got: w.width(),
        });
    }
    let shifted: Vec<i64> = w
        .parts()
        .iter()
        .copied()
        .chain(std::iter::once(-e))
        .enumerate()
        .map(|(k, a)| a + (n - 1 - k) as i64)
        .collect();
    let mut sorted = shifted.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Ok(BWBResult {
            vanishing: true,
            degree: None,
            weight: None,
            dim: BigInt::zero(),
        });
    }
    let inversions = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| shifted[a] < shifted[b])
        .count();
    let weight = GLWeight::new(
        sorted
            .iter()
            .enumerate()
            .map(|(k, v)| v - (n - 1 - k) as i64)
            .collect(),
    )?;
    let dim = weyl_dim(&weight);
    Ok(BWBResult {
        vanishing: false,
        degree: Some(inversions),
        weight: Some(weight),
        dim,
    })
}

fn require_full(f: &RootSequence) -> Result<()> {
    if !f.is_full() || f.n() < 2 {
        return Err(Error::InvalidSequence(format!("{f} must have n - 1 finite roots, n >= 2")));
    }
    Ok(())
}

/// Weight `λ` and twist with `S_λ Q ⊗ O(twist)` supernatural of type `f`:
/// `λ_i = f_1 - f_{n-i} - n + 1 + i`, twist `-f_1 - 1`.
pub fn eq_supernatural_weight(f: &RootSequence) -> Result<(GLWeight, i64)> {
    require_full(f)?;
    let n = f.n() as i64;
    let f1 = f.get(1).unwrap();
    let lambda = (1..n)
        .map(|i| f1 - f.get((n - i) as usize).unwrap() - n + 1 + i)
        .collect();
    Ok((GLWeight::new(lambda)?, -f1 - 1))
}

/// Data of the equivariant Hom test between `E'` (type `f'`) and `E`
/// (type `f`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqRootCertificate {
    pub exists: bool,
    /// `N_i = f'_i - f_i`.
    pub increments: Vec<i64>,
    pub lambda: GLWeight,
    /// `λ'_{n-i} = λ_{n-i} - N_i`.
    pub lambda_p: GLWeight,
    /// `λ'' = λ' + N_1`.
    pub lambda_pp: GLWeight,
    /// Complement in the `(n-1) × λ_1` rectangle: `λ^c_j = λ_1 - λ_{n-j}`.
    pub lambda_c: GLWeight,
    /// `λ_1 + N_1`.
    pub bound: i64,
    /// `λ''_i + λ^c_{n-i}` for `i = 1..n-1`.
    pub lhs: Vec<i64>,
    /// `bound - lhs_i`, which equals `N_{n-i}`.
    pub slack: Vec<i64>,
}

/// Checks `λ''_i + λ^c_{n-i} <= λ_1 + N_1` for all `i`, the condition for
/// `Hom(E', E)` to have a nonzero section; then `E'' = E' ⊗ Hom(E', E)`
/// maps equivariantly onto `E` by evaluation.
pub fn eq_root_hom_exists(f: &RootSequence, fp: &RootSequence) -> Result<EqRootCertificate> {
    require_full(f)?;
    require_full(fp)?;
    if !root_leq(f, fp) {
        return Err(Error::NotComparable);
    }
    let n = f.n();
    let m = n - 1;
    let (lambda, _) = eq_supernatural_weight(f)?;
    let lam = lambda.parts();
    let nv: Vec<i64> = f.finite().iter().zip(fp.finite()).map(|(a, b)| b - a).collect();
    // 1-based helpers
    let big_n = |i: usize| nv[i - 1];
    let lam_at = |i: usize| lam[i - 1];
    let lambda_p: Vec<i64> = (1..=m).map(|j| lam_at(j) - big_n(n - j)).collect();
    let lambda_pp: Vec<i64> = lambda_p.iter().map(|x| x + big_n(1)).collect();
    let lambda_c: Vec<i64> = (1..=m).map(|j| lam_at(1) - lam_at(n - j)).collect();
    let bound = lam_at(1) + big_n(1);
    let lhs: Vec<i64> = (1..=m).map(|i| lambda_pp[i - 1] + lambda_c[n - i - 1]).collect();
    let slack: Vec<i64> = lhs.iter().map(|x| bound - x).collect();
    Ok(EqRootCertificate {
        exists: slack.iter().all(|&s| s >= 0),
        increments: nv,
        lambda: lambda.clone(),
        lambda_p: GLWeight::new(lambda_p)?,
        lambda_pp: GLWeight::new(lambda_pp)?,
        lambda_c: GLWeight::new(lambda_c)?,
        bound,
        lhs,
        slack,
    })
}

/// Comparison of Bott's algorithm against the supernatural table at one
/// twist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistCheck {
    pub t: i64,
    pub bwb: BWBResult,
    /// Row where the rank-`s!` table is nonzero, if any.
    pub table_row: Option<usize>,
    #[serde(with = "crate::arith::decimal")]
    pub table_value: BigUint,
    pub agrees: bool,
}

/// Per-twist comparison of `S_λ Q ⊗ O(-f_1 - 1 + t)` with the supernatural
/// table of type `f`: nonvanishing in the same degree, and
/// `dim · s! = rank · |∏ (t - f_k)|`.
pub fn supernatural_equivariant_report(f: &RootSequence, window: (i64, i64)) -> Result<Vec<TwistCheck>> {
    let (lambda, twist) = eq_supernatural_weight(f)?;
    let n = f.n();
    let rank = weyl_dim(&lambda);
    let s_fact = BigInt::from(factorial(f.length() as u64));
    (window.0..=window.1)
        .map(|t| {
            let res = bwb(&lambda, twist + t, n)?;
            let rows: Vec<(usize, BigUint)> = (0..n)
                .map(|i| (i, h_value(f, i, t)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            let (table_row, table_value) = match rows.as_slice() {
                [] => (None, BigUint::zero()),
                [(i, v)] => (Some(*i), v.clone()),
                _ => panic!("supernatural table has two nonzero rows at twist {t}"),
            };
            let agrees = res.degree == table_row
                && &res.dim * &s_fact == &rank * BigInt::from(table_value.clone());
            Ok(TwistCheck {
                t,
                bwb: res,
                table_row,
                table_value,
                agrees,
            })
        })
        .collect()
}

pub fn verify_supernatural_equivariant(f: &RootSequence, window: (i64, i64)) -> Result<bool> {
    Ok(supernatural_equivariant_report(f, window)?.iter().all(|c| c.agrees))
}
