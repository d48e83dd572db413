#![allow(dead_code)]

use bsorder_core::{DegreeSequence, GLWeight, Rational, RootSequence};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::Rng;

/// Random degree sequence for `n` variables with entries in `[lo, hi]`.
/// With `allow_inf` the length is uniform in `0..=n`.
pub fn degree_seq<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64, allow_inf: bool) -> DegreeSequence {
    let len = if allow_inf { rng.gen_range(0..=n) } else { n };
    let span = (hi - lo + 1) as usize;
    let mut v: Vec<i64> = sample(rng, span, len + 1).into_iter().map(|k| lo + k as i64).collect();
    v.sort_unstable();
    DegreeSequence::from_finite(&v, n).unwrap()
}

/// Random `d' ⪰ d` with every entry at most `max(hi, d_ℓ)`, often touching
/// `d` somewhere.
pub fn comparable_degree_seq<R: Rng>(rng: &mut R, d: &DegreeSequence, hi: i64) -> DegreeSequence {
    let fin = d.finite();
    let len = if rng.gen_bool(0.7) { fin.len() - 1 } else { rng.gen_range(0..fin.len()) };
    let mut out = vec![0i64; len + 1];
    let mut ceiling = hi.max(fin[len]);
    for i in (0..=len).rev() {
        out[i] = if rng.gen_bool(0.3) { fin[i] } else { rng.gen_range(fin[i]..=ceiling) };
        ceiling = out[i] - 1;
    }
    DegreeSequence::from_finite(&out, d.n()).unwrap()
}

/// Random root sequence for `P^{n-1}` with entries in `[lo, hi]`.
pub fn root_seq<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64, full: bool) -> RootSequence {
    let len = if full { n - 1 } else { rng.gen_range(0..n) };
    let span = (hi - lo + 1) as usize;
    let mut v: Vec<i64> = sample(rng, span, len).into_iter().map(|k| lo + k as i64).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    RootSequence::from_finite(&v, n).unwrap()
}

/// Random `f' ⪰ f` with `f'_1 <= max(hi, f_1)` and the same length.
pub fn comparable_root_seq<R: Rng>(rng: &mut R, f: &RootSequence, hi: i64) -> RootSequence {
    let mut out = Vec::with_capacity(f.length());
    let mut ceiling = hi.max(f.finite().first().copied().unwrap_or(hi));
    for &fk in f.finite() {
        let v = if rng.gen_bool(0.3) { fk } else { rng.gen_range(fk..=ceiling) };
        out.push(v);
        ceiling = v - 1;
    }
    RootSequence::from_finite(&out, f.n()).unwrap()
}

/// Horizontal strips by exhaustive search over the box `w_i <= μ_i <= w_i + N`.
pub fn brute_strips(w: &GLWeight, boxes: u64) -> Vec<GLWeight> {
    let p = w.parts();
    let n = boxes as i64;
    let mut out = Vec::new();
    let mut idx = vec![0i64; p.len()];
    loop {
        let mu: Vec<i64> = p.iter().zip(&idx).map(|(a, k)| a + k).collect();
        let decreasing = mu.windows(2).all(|x| x[0] >= x[1]);
        let interlaced = (1..mu.len()).all(|k| mu[k] <= p[k - 1]);
        if decreasing && interlaced && idx.iter().sum::<i64>() == n {
            out.push(GLWeight::new(mu).unwrap());
        }
        let mut k = 0;
        while k < idx.len() && idx[k] == n {
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
        idx[k] += 1;
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// `Σ_i (-1)^i β_i d_i^k` for `k = 0..ℓ`.
pub fn balance_sums(d: &[i64], betti: &[BigInt]) -> Vec<BigInt> {
    (0..d.len() - 1)
        .map(|k| {
            d.iter()
                .zip(betti)
                .enumerate()
                .map(|(i, (&di, b))| {
                    let term = b * BigInt::from(di).pow(k as u32);
                    if i % 2 == 0 { term } else { -term }
                })
                .sum()
        })
        .collect()
}

/// Kernel of the Herzog–Kühl system by exact Gaussian elimination, scaled to
/// coprime positive integers.
pub fn herzog_kuhl_kernel(d: &[i64]) -> Vec<BigInt> {
    let cols = d.len();
    let mut m: Vec<Vec<Rational>> = (0..cols - 1)
        .map(|k| {
            d.iter()
                .enumerate()
                .map(|(i, &di)| {
                    let v = Rational::from_integer(BigInt::from(di).pow(k as u32));
                    if i % 2 == 0 { v } else { -v }
                })
                .collect()
        })
        .collect();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&k| !m[k][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c)).expect("one-dimensional kernel");
    let mut v = vec![Rational::zero(); cols];
    v[free] = Rational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[row][free].clone();
    }
    let den = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| (x / &g).abs()).collect()
}

/// True if `v = k · base` for a positive integer `k`.
pub fn integer_multiple(v: &[BigInt], base: &[BigInt]) -> bool {
    if v.len() != base.len() || base.is_empty() || base[0].is_zero() {
        return false;
    }
    let (k, rem) = v[0].div_rem(&base[0]);
    rem.is_zero() && k.is_positive() && v.iter().zip(base).all(|(a, b)| a == &(&k * b))
}

/// True if `v` and `base` are proportional with a positive rational factor.
pub fn proportional(v: &[BigInt], base: &[BigInt]) -> bool {
    v.len() == base.len()
        && v.iter().all(|x| x.is_positive())
        && (1..v.len()).all(|i| &v[i] * &base[0] == &v[0] * &base[i])
}

/// Strictly increasing `⪯`-chain of up to `max_len` degree sequences for `n`
/// variables with finite entries in `[lo, hi]`. Each link applies one to
/// three moves: raise a finite entry by one, or drop the last finite entry
/// to `∞`.
pub fn degree_chain<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64, max_len: usize) -> Vec<DegreeSequence> {
    let first = degree_seq(rng, n, lo, hi - 2, true);
    let mut chain = vec![first.clone()];
    let mut cur = first.finite().to_vec();
    let target = rng.gen_range(1..=max_len);
    while chain.len() < target {
        let mut moved = false;
        for _ in 0..rng.gen_range(1..=3) {
            let raisable: Vec<usize> = (0..cur.len())
                .filter(|&i| cur[i] < hi && (i + 1 == cur.len() || cur[i] + 1 < cur[i + 1]))
                .collect();
            if cur.len() > 1 && (raisable.is_empty() || rng.gen_bool(0.15)) {
                cur.pop();
                moved = true;
            } else if let Some(&i) = raisable.get(rng.gen_range(0..raisable.len().max(1))) {
                cur[i] += 1;
                moved = true;
            }
        }
        if !moved {
            break;
        }
        chain.push(DegreeSequence::from_finite(&cur, n).unwrap());
    }
    chain
}

/// Positive rational with numerator in `1..=30` and denominator in `1..=20`.
pub fn coefficient<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(1..=30)), BigInt::from(rng.gen_range(1..=20)))
}
