use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::Color;

/// Bijections used for composite colors.
///
/// `Pair` lays out `[first] x [second]` row-major: `c = c1 * second + c2`.
/// `Reduced` describes a reduced vertex `u` of a join: its hat color is
/// `c_G * residual + t` with `c_G < hatness` and `t < residual`, and the
/// ascending rank `r` of `c_G` in its padded first-stage guess set splits as
/// `(r / divisor, r % divisor)` in `[quotient] x [divisor]`. The host color
/// of the replaced vertex is `sigma * residual + t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ColorCodec {
    Pair { first: u32, second: u32 },
    Reduced { hatness: u32, divisor: u32, quotient: u32, residual: u32 },
}

impl ColorCodec {
    fn layout(&self) -> (u32, u32) {
        match *self {
            ColorCodec::Pair { first, second } => (first, second),
            ColorCodec::Reduced { hatness, residual, .. } => (hatness, residual),
        }
    }

    /// Size of the composite color range.
    pub fn range(&self) -> u64 {
        let (a, b) = self.layout();
        a as u64 * b as u64
    }

    /// `rank -> (rank / divisor, rank % divisor)`; only for reduced codecs.
    pub fn reshape(&self, rank: u32) -> Result<(u32, u32)> {
        match *self {
            ColorCodec::Reduced { divisor, quotient, .. } => {
                if rank >= divisor * quotient {
                    return Err(Error::ColorOutOfRange { color: rank as u64, bound: (divisor * quotient) as u64 });
                }
                Ok((rank / divisor, rank % divisor))
            }
            ColorCodec::Pair { .. } => Err(Error::Unsupported("reshape on a pair codec".into())),
        }
    }

    pub fn unshape(&self, row: u32, sigma: u32) -> Result<u32> {
        match *self {
            ColorCodec::Reduced { divisor, quotient, .. } if row < quotient && sigma < divisor => {
                Ok(row * divisor + sigma)
            }
            ColorCodec::Reduced { divisor, quotient, .. } => {
                Err(Error::ColorOutOfRange { color: (row * divisor + sigma) as u64, bound: (divisor * quotient) as u64 })
            }
            ColorCodec::Pair { .. } => Err(Error::Unsupported("unshape on a pair codec".into())),
        }
    }

    /// Host color `sigma * residual + t` of the replaced vertex.
    pub fn host_color(&self, sigma: u32, t: u32) -> Result<Color> {
        match *self {
            ColorCodec::Reduced { divisor, residual, .. } if sigma < divisor && t < residual => {
                Ok(sigma * residual + t)
            }
            ColorCodec::Reduced { divisor, residual, .. } => {
                Err(Error::ColorOutOfRange { color: (sigma * residual + t) as u64, bound: (divisor * residual) as u64 })
            }
            ColorCodec::Pair { .. } => Err(Error::Unsupported("host color on a pair codec".into())),
        }
    }
}

/// Encodes `(c1, c2)` into one composite color.
pub fn pair_encode(c1: Color, c2: Color, codec: &ColorCodec) -> Result<Color> {
    let (a, b) = codec.layout();
    if c1 >= a {
        return Err(Error::ColorOutOfRange { color: c1 as u64, bound: a as u64 });
    }
    if c2 >= b {
        return Err(Error::ColorOutOfRange { color: c2 as u64, bound: b as u64 });
    }
    Ok(c1 * b + c2)
}

/// Inverse of [`pair_encode`].
pub fn pair_decode(c: Color, codec: &ColorCodec) -> Result<(Color, Color)> {
    let (a, b) = codec.layout();
    if c as u64 >= a as u64 * b as u64 {
        return Err(Error::ColorOutOfRange { color: c as u64, bound: a as u64 * b as u64 });
    }
    Ok((c / b, c % b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_pair_encodes_to_zero() {
        assert_eq!(pair_encode(0, 0, &ColorCodec::Pair { first: 5, second: 7 }).unwrap(), 0);
    }

    #[test]
    fn three_by_four() {
        let codec = ColorCodec::Pair { first: 3, second: 4 };
        assert_eq!(pair_encode(2, 3, &codec).unwrap(), 11);
        assert_eq!(pair_decode(11, &codec).unwrap(), (2, 3));
        assert!(pair_encode(3, 0, &codec).is_err());
        assert!(pair_decode(12, &codec).is_err());
    }

    #[test]
    fn reshape_rank_of_nine_in_four_nine() {
        // A_u = {4, 9}, s_u = 2, a_u = 1: 9 has rank 1.
        let codec = ColorCodec::Reduced { hatness: 10, divisor: 2, quotient: 1, residual: 3 };
        assert_eq!(codec.reshape(1).unwrap(), (0, 1));
        assert_eq!(codec.unshape(0, 1).unwrap(), 1);
        assert!(codec.reshape(2).is_err());
    }
}
