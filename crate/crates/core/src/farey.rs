//! Slopes, positive continued fractions and the Farey tessellation.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FareyError {
    #[error("0/0 is not a slope")]
    ZeroZero,
    #[error("cannot parse slope {0:?}")]
    Parse(String),
    #[error("slope {0} is not a positive finite fraction")]
    NotPositive(Slope),
    #[error("norm is undefined for {0}")]
    NormUndefined(Slope),
    #[error("target {0} lies outside the open interval (0, 1)")]
    OutsideUnitInterval(Slope),
    #[error("slopes {0}, {1}, {2} do not span a Farey triangle")]
    NotTriangle(Slope, Slope, Slope),
    #[error("target {0} is already a vertex of the start triangle")]
    AlreadyVertex(Slope),
    #[error("depth insufficient")]
    DepthInsufficient,
    #[error("requires 0 < q < p, got {0}")]
    NotProperFraction(Slope),
}

/// Reduced fraction `q/p` with `p >= 0`; infinity is `1/0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    q: BigInt,
    p: BigInt,
}

impl Slope {
    pub fn new(q: impl Into<BigInt>, p: impl Into<BigInt>) -> Result<Slope, FareyError> {
        let (mut q, mut p) = (q.into(), p.into());
        if q.is_zero() && p.is_zero() {
            return Err(FareyError::ZeroZero);
        }
        if p.is_negative() {
            q = -q;
            p = -p;
        }
        if p.is_zero() {
            return Ok(Slope::infinity());
        }
        let g = q.gcd(&p);
        Ok(Slope { q: q / &g, p: p / &g })
    }

    /// Panicking constructor for literals known to be valid.
    pub fn of(q: i64, p: i64) -> Slope {
        Slope::new(q, p).expect("valid slope literal")
    }

    pub fn infinity() -> Slope {
        Slope { q: BigInt::one(), p: BigInt::zero() }
    }

    pub fn zero() -> Slope {
        Slope { q: BigInt::zero(), p: BigInt::one() }
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn is_infinite(&self) -> bool {
        self.p.is_zero()
    }

    /// The homology vector `(p, q)` of the curve, i.e. `p·mu + q·lambda`.
    pub fn vector(&self) -> (BigInt, BigInt) {
        (self.p.clone(), self.q.clone())
    }

    pub fn from_vector(p: &BigInt, q: &BigInt) -> Result<Slope, FareyError> {
        Slope::new(q.clone(), p.clone())
    }

    pub fn abs(&self) -> Slope {
        Slope { q: self.q.abs(), p: self.p.clone() }
    }

    pub fn neg(&self) -> Slope {
        if self.is_infinite() {
            return self.clone();
        }
        Slope { q: -self.q.clone(), p: self.p.clone() }
    }

    /// Cross determinant `q·p' − p·q'`.
    pub fn det(&self, other: &Slope) -> BigInt {
        &self.q * &other.p - &self.p * &other.q
    }

    /// Geometric intersection number of the two curves on the torus.
    pub fn intersection(&self, other: &Slope) -> BigInt {
        self.det(other).abs()
    }

    /// Strict order on the extended real line with ∞ above every finite value.
    fn less(&self, other: &Slope) -> bool {
        match (self.is_infinite(), other.is_infinite()) {
            (true, _) => false,
            (false, true) => true,
            _ => &self.q * &other.p < &other.q * &self.p,
        }
    }

    /// Farey sum and difference of two adjacent slopes.
    fn sum_and_difference(&self, other: &Slope) -> (Slope, Slope) {
        let s = Slope::new(&self.q + &other.q, &self.p + &other.p).expect("adjacent slopes");
        let d = Slope::new(&self.q - &other.q, &self.p - &other.p).expect("adjacent slopes");
        (s, d)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.q, self.p)
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Slope {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Slope, FareyError> {
        let bad = || FareyError::Parse(s.to_string());
        let (q, p) = match s.trim().split_once('/') {
            Some((q, p)) => (q.trim(), p.trim()),
            None => (s.trim(), "1"),
        };
        let q: BigInt = q.parse().map_err(|_| bad())?;
        let p: BigInt = p.parse().map_err(|_| bad())?;
        if p.is_negative() {
            return Err(bad());
        }
        Slope::new(q, p)
    }
}

/// Positive continued fraction `[a0; a1, ..., an]` with `ai > 0` for `i > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub terms: Vec<BigInt>,
}

impl ContinuedFraction {
    /// Folds the nested fraction back into a slope.
    pub fn value(&self) -> Slope {
        let mut it = self.terms.iter().rev();
        let last = it.next().expect("non-empty continued fraction");
        let (mut num, mut den) = (last.clone(), BigInt::one());
        for a in it {
            let next = a * &num + &den;
            den = num;
            num = next;
        }
        Slope::new(num, den).expect("positive denominator")
    }

    pub fn sum(&self) -> BigInt {
        self.terms.iter().sum()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.terms[0])?;
        for (i, a) in self.terms[1..].iter().enumerate() {
            write!(f, "{}{}", if i == 0 { ';' } else { ',' }, a)?;
        }
        write!(f, "]")
    }
}

pub fn continued_fraction(s: &Slope) -> Result<ContinuedFraction, FareyError> {
    if s.is_infinite() || !s.q.is_positive() {
        return Err(FareyError::NotPositive(s.clone()));
    }
    let (mut a, mut b) = (s.q.clone(), s.p.clone());
    let mut terms = Vec::new();
    while !b.is_zero() {
        let (quot, rem) = a.div_rem(&b);
        terms.push(quot);
        a = b;
        b = rem;
    }
    Ok(ContinuedFraction { terms })
}

/// `‖|q|/p‖`, the sum of the continued-fraction terms.
pub fn norm(s: &Slope) -> Result<BigInt, FareyError> {
    if s.is_infinite() || s.q.is_zero() {
        return Err(FareyError::NormUndefined(s.clone()));
    }
    Ok(continued_fraction(&s.abs())?.sum())
}

/// Convenience for budgets: the norm as a machine integer.
pub fn norm_u64(s: &Slope) -> Result<u64, FareyError> {
    let n = norm(s)?;
    Ok(u64::try_from(n).expect("norm fits in u64"))
}

pub fn farey_adjacent(a: &Slope, b: &Slope) -> bool {
    a.det(b).abs().is_one()
}

pub fn complement_slope(s: &Slope) -> Result<Slope, FareyError> {
    if s.is_infinite() || !s.q.is_positive() || s.q >= s.p {
        return Err(FareyError::NotProperFraction(s.clone()));
    }
    Slope::new(&s.p - &s.q, s.p.clone())
}

/// An ideal triangle of the tessellation; vertices kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FareyTriangle {
    vertices: [Slope; 3],
}

impl FareyTriangle {
    pub fn new(a: Slope, b: Slope, c: Slope) -> Result<FareyTriangle, FareyError> {
        if !(farey_adjacent(&a, &b) && farey_adjacent(&b, &c) && farey_adjacent(&a, &c)) {
            return Err(FareyError::NotTriangle(a, b, c));
        }
        let mut vertices = [a, b, c];
        vertices.sort();
        Ok(FareyTriangle { vertices })
    }

    /// `(0, ∞, sign)` with `sign = ±1`.
    pub fn base(sign: i64) -> FareyTriangle {
        FareyTriangle::new(Slope::zero(), Slope::infinity(), Slope::of(sign.signum(), 1))
            .expect("base triangle")
    }

    pub fn vertices(&self) -> &[Slope; 3] {
        &self.vertices
    }

    pub fn contains(&self, s: &Slope) -> bool {
        self.vertices.contains(s)
    }

    /// The neighbouring triangle across the edge opposite `v`.
    pub fn flip(&self, v: &Slope) -> FareyTriangle {
        let i = self.vertices.iter().position(|x| x == v).expect("vertex of triangle");
        let (a, b) = (&self.vertices[(i + 1) % 3], &self.vertices[(i + 2) % 3]);
        let (s, d) = a.sum_and_difference(b);
        let new = if &s == v { d } else { s };
        FareyTriangle::new(a.clone(), b.clone(), new).expect("flip stays in tessellation")
    }

    /// The vertex of `self` not shared with `other`, if they are neighbours.
    pub fn removed_towards(&self, other: &FareyTriangle) -> Option<Slope> {
        let gone: Vec<&Slope> = self.vertices.iter().filter(|v| !other.contains(v)).collect();
        (gone.len() == 1).then(|| gone[0].clone())
    }

    /// Vertex opposite the edge separating `self` from finite `target`.
    fn steer(&self, target: &Slope) -> Slope {
        let [s0, s1, s2] = &self.vertices;
        let sorted = {
            let mut v = vec![s0, s1, s2];
            v.sort_by(|x, y| {
                if x.less(y) {
                    std::cmp::Ordering::Less
                } else if y.less(x) {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            });
            v
        };
        if sorted[0].less(target) && target.less(sorted[1]) {
            sorted[2].clone()
        } else if sorted[1].less(target) && target.less(sorted[2]) {
            sorted[0].clone()
        } else {
            sorted[1].clone()
        }
    }

    fn height(&self) -> BigInt {
        self.vertices.iter().map(|v| v.q.abs().max(v.p.clone())).max().expect("three vertices")
    }
}

impl fmt::Display for FareyTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.vertices;
        write!(f, "({a}, {b}, {c})")
    }
}

impl fmt::Debug for FareyTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Geodesic walk from any triangle to the first one having finite `target` as a vertex.
pub fn walk_from(target: &Slope, start: &FareyTriangle) -> Result<Vec<FareyTriangle>, FareyError> {
    if target.is_infinite() {
        return Err(FareyError::NotPositive(target.clone()));
    }
    let mut walk = vec![start.clone()];
    while !walk.last().expect("non-empty").contains(target) {
        let cur = walk.last().expect("non-empty");
        let next = cur.flip(&cur.steer(target));
        walk.push(next);
    }
    Ok(walk)
}

pub fn farey_walk(target: &Slope, start: &FareyTriangle) -> Result<Vec<FareyTriangle>, FareyError> {
    if target.is_infinite() || !target.q.is_positive() || target.q >= target.p {
        return Err(FareyError::OutsideUnitInterval(target.clone()));
    }
    if start != &FareyTriangle::base(1) && start != &FareyTriangle::base(-1) {
        return Err(FareyError::NotTriangle(
            start.vertices[0].clone(),
            start.vertices[1].clone(),
            start.vertices[2].clone(),
        ));
    }
    walk_from(target, start)
}

/// Walks from both base triangles and returns the shorter, ties to `(0, ∞, 1)`.
pub fn best_walk(target: &Slope) -> Result<Vec<FareyTriangle>, FareyError> {
    let plus = walk_from(target, &FareyTriangle::base(1))?;
    let minus = walk_from(target, &FareyTriangle::base(-1))?;
    Ok(if minus.len() < plus.len() { minus } else { plus })
}

/// BFS distance in the dual tree between the triangles incident to `a` and
/// those incident to `b`, over triangles whose vertices all have
/// `max(|q|, p) <= depth`.
pub fn farey_line_distance_oracle(a: &Slope, b: &Slope, depth: u64) -> Result<u64, FareyError> {
    let bound = BigInt::from(depth);
    let within = |t: &FareyTriangle| t.height() <= bound;
    // Breadth-first from `sources` until a triangle satisfies `stop`.
    let search = |sources: Vec<FareyTriangle>, stop: &dyn Fn(&FareyTriangle) -> bool| -> Option<(FareyTriangle, u64)> {
        let mut seen: HashSet<FareyTriangle> = sources.iter().cloned().collect();
        let mut queue: VecDeque<(FareyTriangle, u64)> = sources.into_iter().map(|t| (t, 0)).collect();
        while let Some((t, d)) = queue.pop_front() {
            if stop(&t) {
                return Some((t, d));
            }
            for v in t.vertices.clone() {
                let n = t.flip(&v);
                if within(&n) && seen.insert(n.clone()) {
                    queue.push_back((n, d + 1));
                }
            }
        }
        None
    };
    let bases: Vec<FareyTriangle> = [1, -1].into_iter().map(FareyTriangle::base).filter(|t| within(t)).collect();
    let (seed, _) = search(bases, &|t| t.contains(a)).ok_or(FareyError::DepthInsufficient)?;
    // Every triangle at `a`: flipping a vertex other than `a` stays at `a`.
    let mut fan = vec![seed.clone()];
    let mut seen: HashSet<FareyTriangle> = HashSet::from([seed]);
    let mut i = 0;
    while i < fan.len() {
        let t = fan[i].clone();
        for v in t.vertices.iter().filter(|v| *v != a) {
            let n = t.flip(v);
            if within(&n) && seen.insert(n.clone()) {
                fan.push(n);
            }
        }
        i += 1;
    }
    search(fan, &|t| t.contains(b)).map(|(_, d)| d).ok_or(FareyError::DepthInsufficient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Subtractive Euclid, written independently of `continued_fraction`.
    fn oracle_terms(mut q: u64, mut p: u64) -> Vec<u64> {
        let mut out = vec![0u64];
        loop {
            while q >= p {
                q -= p;
                *out.last_mut().unwrap() += 1;
            }
            if q == 0 {
                return out;
            }
            std::mem::swap(&mut q, &mut p);
            out.push(0);
        }
    }

    fn terms(q: i64, p: i64) -> Vec<i64> {
        continued_fraction(&Slope::of(q, p))
            .unwrap()
            .terms
            .iter()
            .map(|t| i64::try_from(t).unwrap())
            .collect()
    }

    #[test]
    fn expansions() {
        assert_eq!(terms(1, 2), vec![0, 2]);
        assert_eq!(terms(5, 1), vec![5]);
        assert_eq!(terms(2, 5), vec![0, 2, 2]);
        assert_eq!(oracle_terms(2, 5), vec![0, 2, 2]);
        assert_eq!(continued_fraction(&Slope::of(2, 5)).unwrap().to_string(), "[0;2,2]");
        assert_eq!(continued_fraction(&Slope::of(5, 1)).unwrap().to_string(), "[5]");
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(continued_fraction(&Slope::infinity()).is_err());
        assert!(continued_fraction(&Slope::zero()).is_err());
        assert!(continued_fraction(&Slope::of(-1, 2)).is_err());
        assert!(norm(&Slope::zero()).is_err());
        assert!(norm(&Slope::infinity()).is_err());
    }

    #[test]
    fn norms() {
        assert_eq!(norm(&Slope::of(1, 2)).unwrap(), 2.into());
        assert_eq!(norm(&Slope::of(2, 5)).unwrap(), 4.into());
        assert_eq!(norm(&Slope::of(3, 5)).unwrap(), 4.into());
        assert_eq!(norm(&Slope::of(-1, 3)).unwrap(), 3.into());
    }

    #[test]
    fn adjacency() {
        assert!(farey_adjacent(&Slope::zero(), &Slope::infinity()));
        assert!(farey_adjacent(&Slope::of(1, 2), &Slope::of(1, 3)));
        assert!(!farey_adjacent(&Slope::of(1, 2), &Slope::of(1, 4)));
    }

    #[test]
    fn complements() {
        assert_eq!(complement_slope(&Slope::of(2, 5)).unwrap(), Slope::of(3, 5));
        assert_eq!(complement_slope(&Slope::of(1, 2)).unwrap(), Slope::of(1, 2));
        assert_eq!(complement_slope(&Slope::of(1, 7)).unwrap(), Slope::of(6, 7));
    }

    #[test]
    fn slope_text() {
        assert_eq!(Slope::infinity().to_string(), "1/0");
        assert_eq!("-2/4".parse::<Slope>().unwrap(), Slope::of(-1, 2));
        assert_eq!("0/-1".parse::<Slope>().is_err(), true);
        assert_eq!(Slope::of(-3, 0), Slope::infinity());
        assert!(Slope::new(0, 0).is_err());
    }

    #[test]
    fn walks() {
        let start = FareyTriangle::base(1);
        let w = farey_walk(&Slope::of(1, 2), &start).unwrap();
        assert_eq!(w.len() - 1, 1);
        assert_eq!(
            w[1],
            FareyTriangle::new(Slope::zero(), Slope::of(1, 1), Slope::of(1, 2)).unwrap()
        );
        assert_eq!(farey_walk(&Slope::of(1, 3), &start).unwrap().len() - 1, 2);
        assert_eq!(farey_walk(&Slope::of(2, 5), &start).unwrap().len() - 1, 3);
        let worse = farey_walk(&Slope::of(2, 5), &FareyTriangle::base(-1)).unwrap();
        assert_eq!(worse.len() - 1, 4);
        assert!(farey_walk(&Slope::of(3, 2), &start).is_err());
    }

    #[test]
    fn line_distances() {
        let inf = Slope::infinity();
        assert_eq!(farey_line_distance_oracle(&inf, &Slope::of(1, 2), 10).unwrap(), 1);
        assert_eq!(farey_line_distance_oracle(&inf, &Slope::of(1, 3), 10).unwrap(), 2);
        assert_eq!(farey_line_distance_oracle(&inf, &Slope::of(1, 1), 10).unwrap(), 0);
        assert_eq!(
            farey_line_distance_oracle(&inf, &Slope::of(2, 7), 3),
            Err(FareyError::DepthInsufficient)
        );
    }

    fn reduced() -> impl Strategy<Value = (i64, i64)> {
        (2i64..=200)
            .prop_flat_map(|p| (1..p, Just(p)))
            .prop_filter("reduced", |(q, p)| q.gcd(p) == 1)
    }

    proptest! {
        #[test]
        fn expansion_matches_oracle((q, p) in reduced()) {
            let got: Vec<u64> = terms(q, p).into_iter().map(|t| t as u64).collect();
            prop_assert_eq!(got, oracle_terms(q as u64, p as u64));
        }

        #[test]
        fn round_trip((q, p) in reduced()) {
            let s = Slope::of(q, p);
            prop_assert_eq!(continued_fraction(&s).unwrap().value(), s.clone());
            let inv = Slope::of(p, q);
            prop_assert_eq!(continued_fraction(&inv).unwrap().value(), inv);
        }

        #[test]
        fn norm_symmetries((q, p) in reduced()) {
            let n = norm(&Slope::of(q, p)).unwrap();
            prop_assert_eq!(&n, &norm(&Slope::of(p - q, p)).unwrap());
            prop_assert_eq!(&n, &norm(&Slope::of(p, q)).unwrap());
            prop_assert_eq!(&n, &norm(&Slope::of(-q, p)).unwrap());
        }

        #[test]
        fn walk_is_geodesic((q, p) in reduced(), sign in prop_oneof![Just(1i64), Just(-1i64)]) {
            let target = Slope::of(q, p);
            let walk = farey_walk(&target, &FareyTriangle::base(sign)).unwrap();
            let mut seen = HashSet::new();
            for t in &walk {
                prop_assert!(seen.insert(t.clone()));
                let [a, b, c] = t.vertices();
                prop_assert!(farey_adjacent(a, b) && farey_adjacent(b, c) && farey_adjacent(a, c));
            }
            for pair in walk.windows(2) {
                let shared = pair[0].vertices().iter().filter(|v| pair[1].contains(v)).count();
                prop_assert_eq!(shared, 2);
            }
            prop_assert!(walk.last().unwrap().contains(&target));
            prop_assert!(walk[..walk.len() - 1].iter().all(|t| !t.contains(&target)));
            let n = norm_u64(&target).unwrap() as usize;
            prop_assert!(walk.len() - 1 == n - 1 || walk.len() - 1 == n);
            prop_assert_eq!(best_walk(&target).unwrap().len() - 1, n - 1);
        }
    }
}
