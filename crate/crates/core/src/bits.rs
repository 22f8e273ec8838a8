//! Fixed-width vertex sets. One machine word per adjacency row by default,
//! two with the `wide` feature.

#[cfg(not(feature = "wide"))]
pub type Bits = u64;
#[cfg(feature = "wide")]
pub type Bits = u128;

/// Largest graph order representable in this build.
pub const MAX_ORDER: usize = Bits::BITS as usize;

#[inline(always)]
pub const fn bit(v: usize) -> Bits {
    (1 as Bits) << v
}

/// Set of the first `n` vertices.
#[inline(always)]
pub const fn prefix(n: usize) -> Bits {
    if n >= MAX_ORDER {
        Bits::MAX
    } else {
        bit(n) - 1
    }
}

#[inline(always)]
pub fn count(s: Bits) -> usize {
    s.count_ones() as usize
}

#[inline(always)]
pub fn first(s: Bits) -> Option<usize> {
    if s == 0 {
        None
    } else {
        Some(s.trailing_zeros() as usize)
    }
}

/// Iterates the members of a set in increasing order.
#[derive(Clone, Copy, Debug)]
pub struct Members(Bits);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = count(self.0);
        (c, Some(c))
    }
}

impl ExactSizeIterator for Members {}

#[inline]
pub fn members(s: Bits) -> Members {
    Members(s)
}

pub fn from_members<I: IntoIterator<Item = usize>>(it: I) -> Bits {
    it.into_iter().fold(0, |acc, v| acc | bit(v))
}
