use std::fmt;
use std::str::FromStr;

use crate::error::{AlgebraError, Result};

/// Largest supported generator count.
pub const N_MAX: usize = 16;

/// The pair `(p, q)`: generators `e_1..e_p` square to `+1`, the remaining
/// `e_{p+1}..e_{p+q}` square to `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        if n == 0 || n > N_MAX {
            return Err(AlgebraError::InvalidSignature { p, q, max: N_MAX });
        }
        Ok(Self { p, q })
    }

    pub fn p(self) -> usize {
        self.p
    }

    pub fn q(self) -> usize {
        self.q
    }

    /// Number of generators.
    pub fn n(self) -> usize {
        self.p + self.q
    }

    /// Algebra dimension `N = 2^n`.
    pub fn dim(self) -> usize {
        1 << self.n()
    }

    /// Bitmask of the generators squaring to `-1` (bits `p..n-1`).
    pub fn neg_mask(self) -> u32 {
        ((1u32 << self.q) - 1) << self.p
    }

    /// Mask with every generator bit set.
    pub fn full_mask(self) -> u32 {
        ((1u64 << self.n()) - 1) as u32
    }

    /// `e_i^2` for a 1-based generator index.
    pub fn square(self, i: usize) -> Result<i8> {
        if i == 0 || i > self.n() {
            return Err(AlgebraError::GeneratorOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        Ok(if i <= self.p { 1 } else { -1 })
    }

    /// Sign of `e_A e_B = sign * e_{A xor B}`.
    #[inline]
    pub fn blade_sign(self, a: u32, b: u32) -> i8 {
        if (a & b & self.neg_mask()).count_ones() & 1 == 0 {
            1
        } else {
            -1
        }
    }

    /// Signature of the subalgebra spanned by `e_1..e_{n-1}`, or `None` when
    /// only one generator is left.
    pub fn drop_last(self) -> Option<Self> {
        if self.n() == 1 {
            None
        } else if self.q > 0 {
            Some(Self {
                p: self.p,
                q: self.q - 1,
            })
        } else {
            Some(Self {
                p: self.p - 1,
                q: 0,
            })
        }
    }

    /// Every signature with `1 <= p + q <= max_n`, ordered by `n` then `p`.
    pub fn all_up_to(max_n: usize) -> Vec<Self> {
        (1..=max_n.min(N_MAX))
            .flat_map(|n| (0..=n).map(move |p| Self { p, q: n - p }))
            .collect()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

impl FromStr for Signature {
    type Err = String;

    /// Accepts `"p,q"`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (p, q) = s
            .split_once(',')
            .ok_or_else(|| format!("expected \"p,q\", got {s:?}"))?;
        let p: usize = p.trim().parse().map_err(|_| format!("bad p in {s:?}"))?;
        let q: usize = q.trim().parse().map_err(|_| format!("bad q in {s:?}"))?;
        Signature::new(p, q).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert!(Signature::new(0, 0).is_err());
        assert!(Signature::new(10, 7).is_err());
        assert_eq!(Signature::new(16, 0).unwrap().dim(), 65536);
    }

    #[test]
    fn squares_and_masks() {
        let s = Signature::new(2, 3).unwrap();
        assert_eq!(s.neg_mask(), 0b11100);
        assert_eq!(s.square(2).unwrap(), 1);
        assert_eq!(s.square(3).unwrap(), -1);
        assert!(s.square(6).is_err());
        assert!(s.square(0).is_err());
        assert_eq!(s.blade_sign(0b00100, 0b00100), -1);
        assert_eq!(s.blade_sign(0b01100, 0b01100), 1);
        assert_eq!(s.blade_sign(0b00011, 0b00011), 1);
    }

    #[test]
    fn drop_last_removes_highest_generator() {
        let s = Signature::new(1, 2).unwrap();
        assert_eq!(s.drop_last(), Some(Signature::new(1, 1).unwrap()));
        let s = Signature::new(2, 0).unwrap();
        assert_eq!(s.drop_last(), Some(Signature::new(1, 0).unwrap()));
        assert_eq!(Signature::new(0, 1).unwrap().drop_last(), None);
    }

    #[test]
    fn parse() {
        assert_eq!(
            "1,1".parse::<Signature>().unwrap(),
            Signature::new(1, 1).unwrap()
        );
        assert!("1;1".parse::<Signature>().is_err());
        assert!("0,0".parse::<Signature>().is_err());
        assert_eq!(Signature::all_up_to(3).len(), 2 + 3 + 4);
    }
}
