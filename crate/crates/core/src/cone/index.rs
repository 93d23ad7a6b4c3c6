use std::fmt;

/// Injective maps `N -> N` on one-based indices, with exact inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexMap {
    /// `i -> a i + b`, with `a >= 1` and `a + b >= 1`.
    Affine { a: usize, b: isize },
    /// The `i`-th positive integer not divisible by `m` (`m >= 2`).
    SkipMultiples { m: usize },
}

impl IndexMap {
    pub const fn affine(a: usize, b: isize) -> Self {
        IndexMap::Affine { a, b }
    }

    pub const fn shift(s: usize) -> Self {
        IndexMap::Affine {
            a: 1,
            b: s as isize,
        }
    }

    pub fn apply(self, i: usize) -> usize {
        match self {
            IndexMap::Affine { a, b } => (a as isize * i as isize + b) as usize,
            IndexMap::SkipMultiples { m } => i + (i - 1) / (m - 1),
        }
    }

    pub fn preimage(self, p: usize) -> Option<usize> {
        match self {
            IndexMap::Affine { a, b } => {
                let x = p as isize - b;
                (x >= a as isize && x % a as isize == 0).then(|| (x / a as isize) as usize)
            }
            IndexMap::SkipMultiples { m } => (!p.is_multiple_of(m)).then(|| p - p / m),
        }
    }
}

impl fmt::Display for IndexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IndexMap::Affine { a, b } if b >= 0 => write!(f, "{a}i+{b}"),
            IndexMap::Affine { a, b } => write!(f, "{a}i-{}", -b),
            IndexMap::SkipMultiples { m } => write!(f, "skip{m}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_round_trip() {
        let f = IndexMap::affine(2, -1);
        assert_eq!(
            (1..6).map(|i| f.apply(i)).collect::<Vec<_>>(),
            vec![1, 3, 5, 7, 9]
        );
        for i in 1..50 {
            assert_eq!(f.preimage(f.apply(i)), Some(i));
        }
        assert_eq!(f.preimage(4), None);
        assert_eq!(IndexMap::shift(1).preimage(1), None);
    }

    #[test]
    fn skip_multiples_of_three() {
        let f = IndexMap::SkipMultiples { m: 3 };
        assert_eq!(
            (1..7).map(|i| f.apply(i)).collect::<Vec<_>>(),
            vec![1, 2, 4, 5, 7, 8]
        );
        for i in 1..100 {
            assert_eq!(f.preimage(f.apply(i)), Some(i));
        }
        assert_eq!(f.preimage(9), None);
    }
}
