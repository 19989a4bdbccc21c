//! Fixed-width bit lanes used by the enumeration kernels.
//!
//! A codeword of length `n <= L::BITS` is held as two lanes: the `1`-plane
//! and the `ω`-plane. Kernels are generic over the lane so that lengths up to
//! 64 run on plain `u64` arithmetic.

use std::fmt::Debug;
use std::ops::{BitAnd, BitOr, BitXor, BitXorAssign, Not};

pub trait Lane:
    Copy
    + Eq
    + Ord
    + Default
    + Debug
    + Send
    + Sync
    + BitXor<Output = Self>
    + BitXorAssign
    + BitOr<Output = Self>
    + BitAnd<Output = Self>
    + Not<Output = Self>
    + 'static
{
    const BITS: usize;
    const ZERO: Self;

    fn bit(i: usize) -> Self;
    fn popcount(self) -> u32;
    fn trailing_zeros(self) -> u32;

    /// Mask with the low `n` bits set.
    fn low_mask(n: usize) -> Self;

    fn from_words(words: &[u64]) -> Self;
    fn to_words(self, n: usize) -> Vec<u64>;

    #[inline]
    fn test(self, i: usize) -> bool {
        self & Self::bit(i) != Self::ZERO
    }

    /// Cyclic shift of the low `n` bits by `s` positions towards higher indices.
    fn rotate_in(self, n: usize, s: usize) -> Self;
}

macro_rules! impl_lane {
    ($t:ty) => {
        impl Lane for $t {
            const BITS: usize = <$t>::BITS as usize;
            const ZERO: Self = 0;

            #[inline(always)]
            fn bit(i: usize) -> Self {
                1 << i
            }

            #[inline(always)]
            fn popcount(self) -> u32 {
                self.count_ones()
            }

            #[inline(always)]
            fn trailing_zeros(self) -> u32 {
                <$t>::trailing_zeros(self)
            }

            #[inline]
            fn low_mask(n: usize) -> Self {
                if n >= <Self as Lane>::BITS {
                    !0
                } else {
                    (1 << n) - 1
                }
            }

            fn from_words(words: &[u64]) -> Self {
                let mut out: Self = 0;
                for (k, &w) in words.iter().enumerate().take(<Self as Lane>::BITS / 64) {
                    out |= (w as Self) << (64 * k);
                }
                out
            }

            fn to_words(self, n: usize) -> Vec<u64> {
                (0..n.div_ceil(64))
                    .map(|k| (self >> (64 * k)) as u64)
                    .collect()
            }

            fn rotate_in(self, n: usize, s: usize) -> Self {
                let s = s % n;
                if s == 0 {
                    return self;
                }
                let mask = Self::low_mask(n);
                ((self << s) | (self >> (n - s))) & mask
            }
        }
    };
}

impl_lane!(u64);
impl_lane!(u128);

/// Largest code length handled by the lane kernels.
pub const MAX_KERNEL_LEN: usize = 128;

/// Calls `$body` with `$L` bound to the narrowest lane holding `$n` bits.
#[macro_export]
#[doc(hidden)]
macro_rules! dispatch_lane {
    ($n:expr, $L:ident => $body:expr) => {{
        let n: usize = $n;
        if n <= 64 {
            type $L = u64;
            $body
        } else if n <= 128 {
            type $L = u128;
            $body
        } else {
            Err($crate::Error::TooLong {
                n,
                max: $crate::lane::MAX_KERNEL_LEN,
            })
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotate_wraps_inside_length() {
        let x: u64 = 0b10001;
        assert_eq!(x.rotate_in(5, 1), 0b00011);
        assert_eq!(x.rotate_in(5, 5), x);
        let y: u128 = 1 << 99;
        assert_eq!(y.rotate_in(100, 1), 1);
    }

    #[test]
    fn words_round_trip() {
        let v: u128 = (7u128 << 70) | 5;
        assert_eq!(u128::from_words(&v.to_words(100)), v);
        assert_eq!(v.to_words(100).len(), 2);
    }
}
