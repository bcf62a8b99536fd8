use std::fmt;

/// A permutation of the tetrahedron labels {0,1,2,3}, stored as images.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm([u8; 4]);

/// The 24 elements of S4 in lexicographic order of their image lists.
pub const S4: [[u8; 4]; 24] = [
    [0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1],
    [1, 0, 2, 3], [1, 0, 3, 2], [1, 2, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2], [1, 3, 2, 0],
    [2, 0, 1, 3], [2, 0, 3, 1], [2, 1, 0, 3], [2, 1, 3, 0], [2, 3, 0, 1], [2, 3, 1, 0],
    [3, 0, 1, 2], [3, 0, 2, 1], [3, 1, 0, 2], [3, 1, 2, 0], [3, 2, 0, 1], [3, 2, 1, 0],
];

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Perm> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm(images))
    }

    pub fn from_index(i: usize) -> Perm {
        Perm(S4[i])
    }

    pub fn all() -> impl Iterator<Item = Perm> {
        S4.iter().map(|&p| Perm(p))
    }

    /// Position in [`S4`].
    pub fn index(self) -> usize {
        let [a, b, c, _] = self.0;
        let rest_b = b - (b > a) as u8;
        let rest_c = c - (c > a) as u8 - (c > b) as u8;
        a as usize * 6 + rest_b as usize * 2 + rest_c as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    #[inline]
    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn inverse(self) -> Perm {
        let mut out = [0u8; 4];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Perm(out)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm) -> Perm {
        Perm(other.0.map(|i| self.0[i as usize]))
    }

    pub fn is_even(self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    pub fn sign(self) -> i64 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    /// Transposition of `a` and `b`.
    pub fn swap(a: usize, b: usize) -> Perm {
        let mut out = [0, 1, 2, 3];
        out.swap(a, b);
        Perm(out)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a}{b}{c}{d}")
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for (i, p) in Perm::all().enumerate() {
            assert_eq!(p.index(), i);
            assert_eq!(Perm::from_index(i), p);
        }
    }

    #[test]
    fn group_laws() {
        for p in Perm::all() {
            assert_eq!(p.compose(p.inverse()), Perm::IDENTITY);
            for q in Perm::all() {
                assert_eq!(p.compose(q).is_even(), p.is_even() == q.is_even());
                for i in 0..4 {
                    assert_eq!(p.compose(q).apply(i), p.apply(q.apply(i)));
                }
            }
        }
        assert_eq!(Perm::all().filter(|p| p.is_even()).count(), 12);
    }
}
