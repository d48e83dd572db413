//! Exact arithmetic and the small amount of weight combinatorics shared by
//! every other module.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Formats a rational as `"p/q"`, including a `/1` for integers.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Binomial coefficient `C(m, k)`, zero outside `0 <= k <= m`.
pub fn binomial(m: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > m {
        return BigUint::zero();
    }
    let k = (k as u64).min(m - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Same as [`binomial`] but accepting a signed top argument; negative `m`
/// yields zero.
pub fn binomial_signed(m: i64, k: i64) -> BigUint {
    if m < 0 {
        BigUint::zero()
    } else {
        binomial(m as u64, k)
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Serde adapters that write big integers as decimal strings.
pub mod decimal {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(|_| D::Error::custom(format!("not an integer: {raw:?}")))
    }

    pub mod vec {
        use std::fmt::Display;
        use std::str::FromStr;

        use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
            Vec::<String>::deserialize(d)?
                .into_iter()
                .map(|raw| raw.parse().map_err(|_| D::Error::custom(format!("not an integer: {raw:?}"))))
                .collect()
        }
    }
}

/// Highest weight of a polynomial (or rational) representation of `GL_n`:
/// a weakly decreasing integer vector whose length is the rank `n`.
///
/// Trailing zeros are significant: `(1, 0)` and `(1, 0, 0)` are different
/// weights because they describe different groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct GLWeight {
    parts: Vec<i64>,
}

impl GLWeight {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidWeight("a weight needs at least one part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(format!(
                "parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(GLWeight { parts })
    }

    pub fn zero(width: usize) -> Self {
        GLWeight {
            parts: vec![0; width.max(1)],
        }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn width(&self) -> usize {
        self.parts.len()
    }

    /// Sum of the parts.
    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn first(&self) -> i64 {
        self.parts[0]
    }

    pub fn last(&self) -> i64 {
        *self.parts.last().unwrap()
    }

    /// Adds `c` to every part (a twist by a power of the determinant).
    pub fn det_twist(&self, c: i64) -> Self {
        GLWeight {
            parts: self.parts.iter().map(|p| p + c).collect(),
        }
    }

    /// Componentwise containment `self ⊆ other` (same width required).
    pub fn contained_in(&self, other: &GLWeight) -> bool {
        self.width() == other.width()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// Dimension of the Schur functor of this weight applied to a space of
    /// dimension `width()`. See [`weyl_dim`].
    pub fn dim(&self) -> BigInt {
        weyl_dim(self)
    }
}

impl TryFrom<Vec<i64>> for GLWeight {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        GLWeight::new(v)
    }
}

impl From<GLWeight> for Vec<i64> {
    fn from(w: GLWeight) -> Vec<i64> {
        w.parts
    }
}

impl fmt::Display for GLWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Weyl dimension formula `∏_{i<j} (w_i - w_j + j - i) / (j - i)` for the
/// Schur functor of `w` on a vector space of dimension `w.width()`.
pub fn weyl_dim(w: &GLWeight) -> BigInt {
    let p = w.parts();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            num *= p[i] - p[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// All weights `μ ⊇ w` obtained by adding a horizontal strip of `boxes`
/// boxes to `w` without changing its width, sorted lexicographically
/// descending.
///
/// A horizontal strip never puts two new boxes in the same column, which for
/// weights means `w_i <= μ_i` and `μ_{i+1} <= w_i`.
pub fn horizontal_strips(w: &GLWeight, boxes: u64) -> Vec<GLWeight> {
    fn go(w: &[i64], k: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<GLWeight>) {
        if k == w.len() {
            if left == 0 {
                out.push(GLWeight { parts: cur.clone() });
            }
            return;
        }
        let hi = if k == 0 { w[0] + left } else { w[k - 1].min(w[k] + left) };
        // descending so that the output is already lexicographically descending
        for v in (w[k]..=hi).rev() {
            cur.push(v);
            go(w, k + 1, left - (v - w[k]), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(w.parts(), 0, boxes as i64, &mut Vec::with_capacity(w.width()), &mut out);
    out
}

/// Two-row exponent matrix of a Laurent monomial in `y_0^(i), y_1^(i)`:
/// column `i` holds the exponents of `y_0^(i)` and `y_1^(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentMatrix {
    pub cols: Vec<[i64; 2]>,
}

impl ExponentMatrix {
    pub fn new(cols: Vec<[i64; 2]>) -> Self {
        ExponentMatrix { cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Adds `shift[i]` to the top (`y_0`) entry of column `i`.
    pub fn add_top(&self, shift: &[i64]) -> Self {
        ExponentMatrix {
            cols: self
                .cols
                .iter()
                .zip(shift)
                .map(|(c, s)| [c[0] + s, c[1]])
                .collect(),
        }
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |k: usize| {
            self.cols
                .iter()
                .map(|c| c[k].to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "[{} ; {}]", row(0), row(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &[i64]) -> GLWeight {
        GLWeight::new(p.to_vec()).unwrap()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(8, 4), BigUint::from(70u32));
        assert_eq!(binomial(7, 4), BigUint::from(35u32));
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial_signed(-3, 0), BigUint::zero());
    }

    #[test]
    fn weyl_dims() {
        assert_eq!(weyl_dim(&w(&[0, 0, 0, 0])), BigInt::one());
        assert_eq!(weyl_dim(&w(&[1, 1])), BigInt::one());
        assert_eq!(weyl_dim(&w(&[1, 0, 0])), BigInt::from(3));
        assert_eq!(weyl_dim(&w(&[2, 0])), BigInt::from(3));
    }

    #[test]
    fn weyl_dim_3100_matches_tableau_count() {
        // semistandard tableaux of shape (3,1) with entries in 1..=4
        let mut count = 0;
        for a in 1..=4 {
            for b in a..=4 {
                for _c in b..=4 {
                    count += (a + 1..=4).count();
                }
            }
        }
        assert_eq!(count, 45);
        assert_eq!(weyl_dim(&w(&[3, 1, 0, 0])), BigInt::from(count));
    }

    #[test]
    fn strips_examples() {
        assert_eq!(horizontal_strips(&w(&[1, 0]), 2), vec![w(&[3, 0]), w(&[2, 1])]);
        assert_eq!(horizontal_strips(&w(&[2, 2]), 1), vec![w(&[3, 2])]);
        assert_eq!(horizontal_strips(&w(&[4, 1, -2]), 0), vec![w(&[4, 1, -2])]);
    }

    #[test]
    fn weights_reject_increasing_parts() {
        assert!(GLWeight::new(vec![0, 1]).is_err());
        assert!(GLWeight::new(vec![]).is_err());
        assert!(GLWeight::new(vec![-1, -1, -3]).is_ok());
    }

    #[test]
    fn rational_parse_and_format() {
        let q = parse_rational("6/4").unwrap();
        assert_eq!(format_rational(&q), "3/2");
        assert_eq!(format_rational(&parse_rational("-7").unwrap()), "-7/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
