//! Exact fractions for guess-ratio sums.

use core::cmp::Ordering;
use core::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Non-negative reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    num: u128,
    den: u128,
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };

    pub fn new(num: u128, den: u128) -> Result<Self> {
        if den == 0 {
            return Err(Error::Precondition("zero denominator".into()));
        }
        let d = num.gcd(&den);
        Ok(Fraction { num: num / d, den: den / d })
    }

    pub fn num(&self) -> u128 {
        self.num
    }

    pub fn den(&self) -> u128 {
        self.den
    }

    pub fn checked_add(self, other: Fraction) -> Result<Fraction> {
        let l = self.den.lcm(&other.den);
        let a = self.num.checked_mul(l / self.den).ok_or(Error::Overflow("fraction sum"))?;
        let b = other.num.checked_mul(l / other.den).ok_or(Error::Overflow("fraction sum"))?;
        Fraction::new(a.checked_add(b).ok_or(Error::Overflow("fraction sum"))?, l)
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        // Both reduced with bounded inputs; cross-multiplication is done in
        // two u128 halves to avoid overflow.
        let (a, b) = (self.num, self.den);
        let (c, d) = (other.num, other.den);
        let (q1, r1) = (a / b, a % b);
        let (q2, r2) = (c / d, c % d);
        match q1.cmp(&q2) {
            Ordering::Equal => {}
            o => return o,
        }
        match (r1 == 0, r2 == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            // r1/b vs r2/d  <=>  d/r2 vs b/r1, reversed
            _ => Fraction { num: d, den: r2 }.cmp(&Fraction { num: b, den: r1 }),
        }
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Exact value of the sum of g(v)/h(v).
pub fn guess_ratio_sum(hatness: &[u32], guesses: &[u32]) -> Result<Fraction> {
    hatness.iter().zip(guesses).try_fold(Fraction::ZERO, |acc, (&h, &g)| {
        acc.checked_add(Fraction::new(g as u128, h as u128)?)
    })
}

/// Least common multiple of all values.
pub fn lcm_all(values: &[u32]) -> Option<u128> {
    values.iter().try_fold(1u128, |acc, &v| {
        let l = acc.lcm(&(v as u128));
        (l <= u64::MAX as u128).then_some(l)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u128, d: u128) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn sums() {
        assert_eq!(guess_ratio_sum(&[2, 3], &[1, 1]).unwrap(), f(5, 6));
        assert_eq!(guess_ratio_sum(&[2, 2], &[1, 1]).unwrap(), Fraction::ONE);
        assert_eq!(guess_ratio_sum(&[12, 13], &[6, 6]).unwrap(), f(25, 26));
    }

    #[test]
    fn ordering() {
        assert!(f(5, 6) < Fraction::ONE);
        assert!(f(25, 26) < Fraction::ONE);
        assert!(f(7, 6) > Fraction::ONE);
        assert!(f(1, 3) < f(1, 2));
        assert!(f(2, 3) > f(3, 5));
        assert_eq!(f(4, 6).cmp(&f(2, 3)), Ordering::Equal);
    }

    #[test]
    fn lcm() {
        assert_eq!(lcm_all(&[2, 3, 4]), Some(12));
        assert_eq!(lcm_all(&[]), Some(1));
    }
}
