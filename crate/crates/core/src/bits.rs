//! Small fixed-width bitsets used for vertex subsets and matroid element subsets.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

macro_rules! bitset {
    ($(#[$meta:meta])* $name:ident, $word:ty, $iter:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
        pub struct $name($word);

        impl $name {
            /// Number of representable members.
            pub const CAPACITY: usize = <$word>::BITS as usize;

            pub const fn empty() -> Self {
                Self(0)
            }

            /// The set `{0, 1, .., n-1}`.
            pub fn full(n: usize) -> Self {
                assert!(n <= Self::CAPACITY, "bitset capacity exceeded");
                if n == Self::CAPACITY {
                    Self(<$word>::MAX)
                } else {
                    Self(((1 as $word) << n) - 1)
                }
            }

            pub fn singleton(i: usize) -> Self {
                assert!(i < Self::CAPACITY, "bitset capacity exceeded");
                Self((1 as $word) << i)
            }

            pub const fn from_bits(bits: $word) -> Self {
                Self(bits)
            }

            pub const fn bits(self) -> $word {
                self.0
            }

            pub fn contains(self, i: usize) -> bool {
                i < Self::CAPACITY && self.0 >> i & 1 == 1
            }

            pub fn insert(&mut self, i: usize) {
                *self = *self | Self::singleton(i);
            }

            pub fn remove(&mut self, i: usize) {
                if i < Self::CAPACITY {
                    self.0 &= !((1 as $word) << i);
                }
            }

            pub fn with(self, i: usize) -> Self {
                self | Self::singleton(i)
            }

            pub fn without(self, i: usize) -> Self {
                let mut s = self;
                s.remove(i);
                s
            }

            pub const fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            pub const fn is_empty(self) -> bool {
                self.0 == 0
            }

            pub fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            pub fn intersects(self, other: Self) -> bool {
                self.0 & other.0 != 0
            }

            /// Smallest member.
            pub fn first(self) -> Option<usize> {
                (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
            }

            /// Members in increasing order.
            pub fn iter(self) -> $iter {
                $iter(self.0)
            }

            /// All subsets of `self`, in increasing order of their bit pattern.
            pub fn subsets(self) -> impl Iterator<Item = Self> {
                let mask = self.0;
                let mut next = Some(0 as $word);
                std::iter::from_fn(move || {
                    let cur = next?;
                    next = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
                    Some(Self(cur))
                })
            }

            /// Shift every member up by `offset`.
            pub fn shifted(self, offset: usize) -> Self {
                if self.0 == 0 {
                    return self;
                }
                assert!(
                    offset < Self::CAPACITY && self.0.leading_zeros() as usize >= offset,
                    "bitset capacity exceeded"
                );
                Self(self.0 << offset)
            }

            /// Compare as sorted member lists (`{0,2} < {1}`, `{0} < {0,1}`).
            pub fn lex_cmp(self, other: Self) -> Ordering {
                let diff = self.0 ^ other.0;
                if diff == 0 {
                    return Ordering::Equal;
                }
                // Below the lowest differing member both lists agree. The side that
                // owns that member is smaller, unless the other list has ended.
                let i = diff.trailing_zeros();
                let (mine, theirs) = if self.0 >> i & 1 == 1 { (Ordering::Less, other) } else { (Ordering::Greater, self) };
                if theirs.0 >> i == 0 {
                    mine.reverse()
                } else {
                    mine
                }
            }
        }

        impl FromIterator<usize> for $name {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                iter.into_iter().fold(Self::empty(), |s, i| s.with(i))
            }
        }

        impl<'a> FromIterator<&'a usize> for $name {
            fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
                iter.into_iter().copied().collect()
            }
        }

        impl IntoIterator for $name {
            type Item = usize;
            type IntoIter = $iter;
            fn into_iter(self) -> $iter {
                self.iter()
            }
        }

        impl BitOr for $name {
            type Output = Self;
            fn bitor(self, rhs: Self) -> Self {
                Self(self.0 | rhs.0)
            }
        }

        impl BitAnd for $name {
            type Output = Self;
            fn bitand(self, rhs: Self) -> Self {
                Self(self.0 & rhs.0)
            }
        }

        impl BitXor for $name {
            type Output = Self;
            fn bitxor(self, rhs: Self) -> Self {
                Self(self.0 ^ rhs.0)
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                Self(self.0 & !rhs.0)
            }
        }

        impl Not for $name {
            type Output = Self;
            fn not(self) -> Self {
                Self(!self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter()).finish()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{{")?;
                for (pos, i) in self.iter().enumerate() {
                    if pos > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{i}")?;
                }
                write!(f, "}}")
            }
        }

        #[derive(Clone, Debug)]
        pub struct $iter($word);

        impl Iterator for $iter {
            type Item = usize;
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

        impl ExactSizeIterator for $iter {}
    };
}

bitset!(
    /// A subset of the vertex set of an instance.
    VertexSet,
    u32,
    VertexSetIter
);

bitset!(
    /// A subset of a matroid ground set (edge ids, root tokens, or both).
    ElementSet,
    u64,
    ElementSetIter
);

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(*other)
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(*other)
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
