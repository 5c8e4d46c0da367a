//! Packed coordinate sets over at most 128 positions.

use std::ops::{BitAnd, BitOr, BitXor};

/// Maximum number of coordinates a [`SupportMask`] can address.
pub const MASK_CAPACITY: usize = 128;

/// A set of coordinate positions, bit `i` of the two-word array standing for
/// position `i`. Bits at positions `>= n` of the owning code stay clear.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportMask {
    pub words: [u64; 2],
}

impl SupportMask {
    pub const EMPTY: SupportMask = SupportMask { words: [0, 0] };

    /// Positions `0..n`.
    pub fn full(n: usize) -> SupportMask {
        assert!(n <= MASK_CAPACITY);
        SupportMask::from_u128(if n == 128 { u128::MAX } else { (1u128 << n) - 1 })
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> SupportMask {
        let mut m = SupportMask::EMPTY;
        for i in indices {
            m.insert(i);
        }
        m
    }

    #[inline]
    pub fn from_u128(bits: u128) -> SupportMask {
        SupportMask { words: [bits as u64, (bits >> 64) as u64] }
    }

    #[inline]
    pub fn as_u128(self) -> u128 {
        self.words[0] as u128 | (self.words[1] as u128) << 64
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn count(&self) -> u32 {
        self.words[0].count_ones() + self.words[1].count_ones()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words == [0, 0]
    }

    #[inline]
    pub fn is_subset(&self, other: &SupportMask) -> bool {
        (*self & *other) == *self
    }

    /// Positions in `0..n` not in `self`.
    pub fn complement(&self, n: usize) -> SupportMask {
        SupportMask::full(n) ^ *self
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..2).flat_map(move |w| {
            let mut bits = self.words[w];
            std::iter::from_fn(move || {
                (bits != 0).then(|| {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    w * 64 + t
                })
            })
        })
    }
}

impl BitOr for SupportMask {
    type Output = SupportMask;
    #[inline]
    fn bitor(self, rhs: SupportMask) -> SupportMask {
        SupportMask { words: [self.words[0] | rhs.words[0], self.words[1] | rhs.words[1]] }
    }
}

impl BitAnd for SupportMask {
    type Output = SupportMask;
    #[inline]
    fn bitand(self, rhs: SupportMask) -> SupportMask {
        SupportMask { words: [self.words[0] & rhs.words[0], self.words[1] & rhs.words[1]] }
    }
}

impl BitXor for SupportMask {
    type Output = SupportMask;
    #[inline]
    fn bitxor(self, rhs: SupportMask) -> SupportMask {
        SupportMask { words: [self.words[0] ^ rhs.words[0], self.words[1] ^ rhs.words[1]] }
    }
}

/// Fixed-width word used by the pair-scan kernels; the narrowest type that
/// holds all coordinates is chosen at run time.
pub trait MaskWord: Copy + Send + Sync + Default + Eq + BitAnd<Output = Self> + BitOr<Output = Self> + 'static {
    const BITS: usize;
    fn ones(self) -> u32;
    fn from_mask(m: SupportMask) -> Self;
}

impl MaskWord for u32 {
    const BITS: usize = 32;
    #[inline]
    fn ones(self) -> u32 {
        self.count_ones()
    }
    #[inline]
    fn from_mask(m: SupportMask) -> Self {
        debug_assert!(m.as_u128() >> 32 == 0);
        m.words[0] as u32
    }
}

impl MaskWord for u64 {
    const BITS: usize = 64;
    #[inline]
    fn ones(self) -> u32 {
        self.count_ones()
    }
    #[inline]
    fn from_mask(m: SupportMask) -> Self {
        debug_assert!(m.words[1] == 0);
        m.words[0]
    }
}

impl MaskWord for u128 {
    const BITS: usize = 128;
    #[inline]
    fn ones(self) -> u32 {
        self.count_ones()
    }
    #[inline]
    fn from_mask(m: SupportMask) -> Self {
        m.as_u128()
    }
}
