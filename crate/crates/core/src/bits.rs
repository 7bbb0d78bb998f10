//! Small helpers for `u64` vertex sets.

/// Iterator over the set bits of a `u64`, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Ones(u64);

impl Iterator for Ones {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Ones {}

#[inline]
pub fn ones(mask: u64) -> Ones {
    Ones(mask)
}

#[inline]
pub fn bit(i: usize) -> u64 {
    1u64 << i
}

/// Mask with the lowest `n` bits set.
#[inline]
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn count(mask: u64) -> usize {
    mask.count_ones() as usize
}

pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> u64 {
    it.into_iter().fold(0, |m, i| m | bit(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_iterates_in_order() {
        assert_eq!(ones(0b1011_0000_0001).collect::<Vec<_>>(), vec![0, 8, 9, 11]);
        assert_eq!(ones(0).count(), 0);
        assert_eq!(ones(u64::MAX).count(), 64);
    }

    #[test]
    fn masks() {
        assert_eq!(low_mask(0), 0);
        assert_eq!(low_mask(3), 0b111);
        assert_eq!(low_mask(64), u64::MAX);
        assert_eq!(from_indices([1, 4]), 0b10010);
    }
}
