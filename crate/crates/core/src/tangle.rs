//! Continued fractions, the even/odd normal form and tangle identities.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("division by zero while evaluating a continued fraction")]
    DivisionByZero,
    #[error("numerator must be even and denominator odd")]
    InvalidParity,
    #[error("numerator and denominator are not coprime")]
    NotCoprime,
    #[error("presentations of length {0} are not supported")]
    UnsupportedLength(usize),
    #[error("invalid tangle: {0}")]
    Invalid(String),
    #[error("cannot parse tangle: {0}")]
    Parse(String),
}

/// Exact value of `a1 + 1/(a2 + 1/(... + 1/a_l))`.
pub fn eval_cf<T>(terms: &[T]) -> Result<Ratio<T>, TangleError>
where
    T: Integer + Clone + Signed,
{
    let (last, rest) = terms.split_last().ok_or(TangleError::DivisionByZero)?;
    let mut acc = Ratio::from_integer(last.clone());
    for a in rest.iter().rev() {
        if acc.is_zero() {
            return Err(TangleError::DivisionByZero);
        }
        acc = Ratio::from_integer(a.clone()) + acc.recip();
    }
    Ok(acc)
}

fn nearest_even<T: Integer + Clone + Signed>(x: &Ratio<T>) -> T {
    let two = T::one() + T::one();
    let half = Ratio::new(x.numer().clone(), x.denom().clone() * two.clone());
    let lo = half.floor().to_integer() * two.clone();
    let hi = lo.clone() + two;
    let dlo = (x.clone() - Ratio::from_integer(lo.clone())).abs();
    let dhi = (Ratio::from_integer(hi.clone()) - x.clone()).abs();
    assert!(dlo != dhi, "even rounding tie on an odd integer");
    if dlo < dhi {
        lo
    } else {
        hi
    }
}

fn nearest_int_toward_zero<T: Integer + Clone + Signed>(x: &Ratio<T>) -> T {
    let lo = x.floor().to_integer();
    let hi = lo.clone() + T::one();
    let dlo = x.clone() - Ratio::from_integer(lo.clone());
    let dhi = Ratio::from_integer(hi.clone()) - x.clone();
    if dlo < dhi {
        lo
    } else if dhi < dlo {
        hi
    } else if lo.abs() < hi.abs() {
        lo
    } else {
        hi
    }
}

/// Expands `p/q` (p even, q odd, coprime) as `[a1,...,a_l]` with `l` odd and
/// every odd-position term even.
pub fn normalize_cf<T>(p: T, q: T) -> Result<Vec<T>, TangleError>
where
    T: Integer + Clone + Signed,
{
    let two = T::one() + T::one();
    if q.is_zero() || p.is_odd() || (q.clone() % two).is_zero() {
        return Err(TangleError::InvalidParity);
    }
    if !p.gcd(&q).is_one() {
        return Err(TangleError::NotCoprime);
    }
    let mut x = Ratio::new(p, q);
    let mut out = Vec::new();
    loop {
        let a = if out.len() % 2 == 0 {
            nearest_even(&x)
        } else {
            nearest_int_toward_zero(&x)
        };
        let rem = x - Ratio::from_integer(a.clone());
        out.push(a);
        if rem.is_zero() {
            break;
        }
        x = rem.recip();
    }
    assert!(out.len() % 2 == 1, "normal form ended on an even step");
    Ok(out)
}

/// True when `p/q` and `p'/q'` have two-bridge closures related by rotation:
/// equal numerators up to sign and `q' = ±q^{±1} mod p`.
pub fn same_closure(a: &Ratio<i64>, b: &Ratio<i64>) -> bool {
    let p = a.numer().abs();
    if p != b.numer().abs() {
        return false;
    }
    if p <= 2 {
        return true;
    }
    let q1 = a.denom().rem_euclid(p);
    let q2 = b.denom().rem_euclid(p);
    let inv = modinv(q1, p);
    [q1, p - q1, inv, p - inv].contains(&q2)
}

fn modinv(a: i64, m: i64) -> i64 {
    let g = num_integer::Integer::extended_gcd(&a, &m);
    g.x.rem_euclid(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A blown-down two-bridge presentation `K^sign([a1,...,a_l])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tangle {
    terms: Vec<i64>,
    sign: Sign,
}

impl Tangle {
    pub fn new(terms: Vec<i64>, sign: Sign) -> Result<Self, TangleError> {
        if terms.len().is_multiple_of(2) {
            return Err(TangleError::Invalid("length must be odd".into()));
        }
        if terms.iter().step_by(2).any(|a| a % 2 != 0) {
            return Err(TangleError::Invalid(
                "odd-position terms must be even".into(),
            ));
        }
        let v = eval_cf(&terms)?;
        if v.numer() % 2 != 0 || v.denom() % 2 == 0 {
            return Err(TangleError::InvalidParity);
        }
        Ok(Tangle { terms, sign })
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn value(&self) -> Ratio<i64> {
        eval_cf(&self.terms).expect("validated on construction")
    }

    /// The presentation of the mirror knot.
    pub fn mirror(&self) -> Tangle {
        Tangle {
            terms: self.terms.iter().map(|a| -a).collect(),
            sign: self.sign.flip(),
        }
    }
}

impl fmt::Display for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(|a| a.to_string()).collect();
        write!(f, "{}:{}", self.sign, terms.join(","))
    }
}

impl FromStr for Tangle {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (sign, rest) = s
            .split_once(':')
            .ok_or_else(|| TangleError::Parse(format!("missing ':' in {s:?}")))?;
        let sign = match sign.trim() {
            "+" | "+1" => Sign::Plus,
            "-" | "-1" => Sign::Minus,
            other => return Err(TangleError::Parse(format!("bad sign {other:?}"))),
        };
        let terms = rest
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| TangleError::Parse(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Tangle::new(terms, sign)
    }
}

/// A presentation equivalent to a given one, possibly describing the mirror.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Presentation {
    pub tangle: Tangle,
    pub mirror: bool,
}

fn rewrites(t: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![t.iter().rev().copied().collect::<Vec<_>>()];
    if let [a, b, c] = *t {
        if b == 1 {
            out.push(vec![a + 2, -1, c + 2]);
        }
        if b == -1 {
            out.push(vec![a - 2, 1, c - 2]);
        }
        match (a, b) {
            (0, 1) | (0, -1) => out.push(vec![c]),
            (2, -1) => out.push(vec![c - 2]),
            (-2, 1) => out.push(vec![c + 2]),
            _ => {}
        }
    }
    out
}

/// All presentations reachable by the rotation, the middle-term rewriting and
/// the length-three collapses, together with their mirror presentations.
pub fn equivalent_presentations(t: &Tangle) -> Result<Vec<Presentation>, TangleError> {
    if t.terms.len() > 3 {
        return Err(TangleError::UnsupportedLength(t.terms.len()));
    }
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack = vec![t.terms.clone()];
    while let Some(cur) = stack.pop() {
        if !seen.insert(cur.clone()) {
            continue;
        }
        for next in rewrites(&cur) {
            if !seen.contains(&next) && Tangle::new(next.clone(), t.sign).is_ok() {
                stack.push(next);
            }
        }
    }
    let mut out: BTreeSet<Presentation> = BTreeSet::new();
    for terms in seen {
        let same = Tangle::new(terms, t.sign)?;
        out.insert(Presentation {
            tangle: same.mirror(),
            mirror: true,
        });
        out.insert(Presentation {
            tangle: same,
            mirror: false,
        });
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        assert_eq!(eval_cf(&[0i64]).unwrap(), Ratio::new(0, 1));
        assert_eq!(eval_cf(&[2i64, 1, 2]).unwrap(), Ratio::new(8, 3));
        assert_eq!(eval_cf(&[4i64, -1, 4]).unwrap(), Ratio::new(8, 3));
        assert_eq!(eval_cf(&[2i64, -1, -2]).unwrap(), Ratio::new(4, 3));
        assert_eq!(eval_cf(&[2i64, 1, 0]), Err(TangleError::DivisionByZero));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_cf(0i64, 1).unwrap(), vec![0]);
        assert_eq!(normalize_cf(4i64, 3).unwrap(), vec![2, -1, -2]);
        assert_eq!(normalize_cf(8i64, 3).unwrap(), vec![2, 1, 2]);
        assert_eq!(normalize_cf(3i64, 4), Err(TangleError::InvalidParity));
        assert_eq!(normalize_cf(6i64, 3), Err(TangleError::NotCoprime));
    }

    #[test]
    fn generic_scalar() {
        assert_eq!(eval_cf(&[2i128, 1, 2]).unwrap(), Ratio::new(8i128, 3));
        assert_eq!(normalize_cf(8i32, 3).unwrap(), vec![2, 1, 2]);
    }

    #[test]
    fn parse_roundtrip() {
        let t: Tangle = "+:2,1,4".parse().unwrap();
        assert_eq!(t.terms(), &[2, 1, 4]);
        assert_eq!(t.to_string(), "+:2,1,4");
        assert!("+:1".parse::<Tangle>().is_err());
        assert!("*:2".parse::<Tangle>().is_err());
    }

    fn contains(t: &str, want: &str, mirror: bool) -> bool {
        let t: Tangle = t.parse().unwrap();
        let want: Tangle = want.parse().unwrap();
        equivalent_presentations(&t)
            .unwrap()
            .contains(&Presentation {
                tangle: want,
                mirror,
            })
    }

    #[test]
    fn relation_examples() {
        assert!(contains("+:2,1,4", "+:4,1,2", false));
        assert!(contains("+:0,1,6", "+:6", false));
        assert!(contains("+:2,-1,6", "+:4", false));
        assert!(contains("+:2,1,4", "-:-2,-1,-4", true));
    }
}
