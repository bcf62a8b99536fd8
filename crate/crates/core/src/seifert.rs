//! Seifert data for bounded Seifert fibered spaces, the triangulation bounds
//! for them, and their predicted first homology.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::farey::{norm, Slope};
use crate::homology::{AbelianGroup, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("at least one boundary component is required")]
    Closed,
    #[error("orientable bases need even a (twice the genus), got {0}")]
    OddOrientable(u32),
    #[error("nonorientable bases need a >= 1")]
    ZeroNonorientable,
    #[error("fibre multiplicity must be positive, got {0}")]
    BadMultiplicity(i64),
    #[error("fibre {0} is not normalized")]
    NotNormalized(String),
    #[error("cannot parse Seifert data: {0}")]
    Parse(String),
}

/// `[Σ, (p₁, q₁), …]` with `0 < qᵢ < pᵢ`, `gcd(pᵢ, qᵢ) = 1`, and `b ≥ 1`.
/// For an orientable base `a` is twice the genus, otherwise the
/// nonorientable genus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertData {
    pub orientable_base: bool,
    pub a: u32,
    pub b: u32,
    /// Exceptional fibres as slopes `q/p`, sorted by `(p, q)`.
    pub fibres: Vec<Slope>,
}

fn check_base(orientable: bool, a: u32, b: u32) -> Result<(), SeifertError> {
    if b == 0 {
        return Err(SeifertError::Closed);
    }
    if orientable && a % 2 == 1 {
        return Err(SeifertError::OddOrientable(a));
    }
    if !orientable && a == 0 {
        return Err(SeifertError::ZeroNonorientable);
    }
    Ok(())
}

/// Reduces each `qᵢ` mod `pᵢ` and drops regular fibres.
pub fn normalize(raw: &[(i64, i64)], orientable: bool, a: u32, b: u32) -> Result<SeifertData, SeifertError> {
    check_base(orientable, a, b)?;
    let mut fibres = Vec::new();
    for &(p, q) in raw {
        if p <= 0 {
            return Err(SeifertError::BadMultiplicity(p));
        }
        let q = q.rem_euclid(p);
        if p == 1 || q == 0 {
            continue;
        }
        if q.gcd(&p) != 1 {
            return Err(SeifertError::NotNormalized(format!("{p}/{q}")));
        }
        fibres.push(Slope::of(q, p));
    }
    fibres.sort_by(|x, y| (x.p(), x.q()).cmp(&(y.p(), y.q())));
    Ok(SeifertData { orientable_base: orientable, a, b, fibres })
}

impl SeifertData {
    /// Builds from already-normalized fibres, rejecting anything else.
    pub fn new(orientable: bool, a: u32, b: u32, fibres: Vec<Slope>) -> Result<SeifertData, SeifertError> {
        check_base(orientable, a, b)?;
        for f in &fibres {
            if !(f.q().is_positive() && f.q() < f.p()) {
                return Err(SeifertError::NotNormalized(format!("{}/{}", f.p(), f.q())));
            }
        }
        let mut fibres = fibres;
        fibres.sort_by(|x, y| (x.p(), x.q()).cmp(&(y.p(), y.q())));
        Ok(SeifertData { orientable_base: orientable, a, b, fibres })
    }

    /// χ(Σ) = 2 − a − b.
    pub fn chi(&self) -> i64 {
        2 - self.a as i64 - self.b as i64
    }

    pub fn norm_sum(&self) -> BigInt {
        self.fibres.iter().map(|f| norm(f).expect("normalized fibre")).sum()
    }

    /// Disc base with at most one exceptional fibre: a solid torus.
    pub fn is_solid_torus(&self) -> bool {
        self.orientable_base && self.a == 0 && self.b == 1 && self.fibres.len() <= 1
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = if self.orientable_base { 'o' } else { 'n' };
        write!(f, "sfs {o} a={} b={}", self.a, self.b)?;
        if !self.fibres.is_empty() {
            let list: Vec<String> = self.fibres.iter().map(|s| format!("{}/{}", s.p(), s.q())).collect();
            write!(f, " fibres={}", list.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for SeifertData {
    type Err = SeifertError;

    /// `sfs <o|n> a=<int> b=<int> [fibres=<p>/<q>,...]`, normalizing the fibres.
    fn from_str(s: &str) -> Result<SeifertData, SeifertError> {
        let bad = |m: &str| SeifertError::Parse(format!("{m} in {s:?}"));
        let mut words = s.split_whitespace();
        if words.next() != Some("sfs") {
            return Err(bad("expected 'sfs'"));
        }
        let orientable = match words.next() {
            Some("o") => true,
            Some("n") => false,
            _ => return Err(bad("expected o or n")),
        };
        let mut field = |name: &str| -> Result<u32, SeifertError> {
            let w = words.next().ok_or_else(|| bad(&format!("missing {name}=")))?;
            w.strip_prefix(name)
                .and_then(|v| v.strip_prefix('='))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(&format!("bad {name}=")))
        };
        let a = field("a")?;
        let b = field("b")?;
        let mut raw = Vec::new();
        if let Some(w) = words.next() {
            let list = w.strip_prefix("fibres=").ok_or_else(|| bad("expected fibres="))?;
            for item in list.split(',') {
                let (p, q) = item.split_once('/').ok_or_else(|| bad("fibre must be p/q"))?;
                let p: i64 = p.parse().map_err(|_| bad("bad fibre multiplicity"))?;
                let q: i64 = q.parse().map_err(|_| bad("bad fibre invariant"))?;
                raw.push((p, q));
            }
        }
        if words.next().is_some() {
            return Err(bad("trailing input"));
        }
        normalize(&raw, orientable, a, b)
    }
}

/// `96|χ(Σ)| + 176 + 70 Σ ‖qᵢ/pᵢ‖`.
pub fn upper_bound(d: &SeifertData) -> BigInt {
    BigInt::from(96 * d.chi().unsigned_abs() + 176) + 70 * d.norm_sum()
}

/// `(|χ(Σ)| + 1) / 6`.
pub fn chi_lower_bound(d: &SeifertData) -> BigRational {
    BigRational::new(BigInt::from(d.chi().unsigned_abs() + 1), BigInt::from(6))
}

/// Free rank of `H₁`: `|2 − χ|` for orientable bases, `|1 − χ|` otherwise.
pub fn predicted_free_rank(d: &SeifertData) -> u64 {
    if d.orientable_base {
        (2 - d.chi()).unsigned_abs()
    } else {
        (1 - d.chi()).unsigned_abs()
    }
}

/// Abelianized fundamental group. Each boundary class but one, and each
/// base generator, is free; the exceptional boundary classes `xᵢ` and the
/// fibre `h` satisfy `pᵢxᵢ + qᵢh = 0`, and `2h = 0` when the base is
/// nonorientable (conjugation by a one-sided loop inverts the fibre).
pub fn expected_h1(d: &SeifertData) -> AbelianGroup {
    let n = d.fibres.len();
    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    for (i, f) in d.fibres.iter().enumerate() {
        let mut col = vec![BigInt::zero(); n + 1];
        col[i] = f.p().clone();
        col[n] = f.q().clone();
        relations.push(col);
    }
    if !d.orientable_base {
        let mut col = vec![BigInt::zero(); n + 1];
        col[n] = BigInt::from(2);
        relations.push(col);
    }
    let mut m = IntMatrix::zeros(n + 1, relations.len());
    for (j, col) in relations.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m[(i, j)] = v.clone();
        }
    }
    let local = AbelianGroup::cokernel(&m);
    let free = (d.a + d.b - 1) as usize;
    let g = AbelianGroup { rank: local.rank + free, invariant_factors: local.invariant_factors };
    assert_eq!(g.rank as u64, predicted_free_rank(d), "free rank disagrees with the Euler characteristic");
    g
}

/// Complexity comparison for one set of Seifert data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub data: SeifertData,
    /// `|χ(Σ)| + Σ ‖qᵢ/pᵢ‖ + 1`.
    pub proxy: BigInt,
    pub upper_bound: BigInt,
    pub chi_lower_bound: BigRational,
    pub solid_torus: bool,
    pub achieved: Option<usize>,
}

pub fn theorem_bound_report(d: &SeifertData) -> BoundReport {
    BoundReport {
        data: d.clone(),
        proxy: BigInt::from(d.chi().unsigned_abs() + 1) + d.norm_sum(),
        upper_bound: upper_bound(d),
        chi_lower_bound: chi_lower_bound(d),
        solid_torus: d.is_solid_torus(),
        achieved: None,
    }
}

impl BoundReport {
    pub fn with_achieved(mut self, tets: usize) -> BoundReport {
        self.achieved = Some(tets);
        self
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "data {}", self.data)?;
        writeln!(f, "chi {}", self.data.chi())?;
        writeln!(f, "proxy {}", self.proxy)?;
        writeln!(f, "upper_bound {}", self.upper_bound)?;
        writeln!(f, "chi_lower_bound {}", self.chi_lower_bound)?;
        if let Some(t) = self.achieved {
            let ratio = BigRational::new(BigInt::from(t), self.proxy.clone());
            writeln!(f, "achieved {t}")?;
            writeln!(f, "ratio {ratio}")?;
        }
        if self.solid_torus {
            writeln!(f, "note solid torus exclusion")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sfs(s: &str) -> SeifertData {
        s.parse().unwrap()
    }

    #[test]
    fn normalization() {
        let d = normalize(&[(3, 4), (2, -1), (1, 5)], true, 0, 1).unwrap();
        assert_eq!(d.fibres, vec![Slope::of(1, 2), Slope::of(1, 3)]);
        assert_eq!(normalize(&[], true, 0, 0), Err(SeifertError::Closed));
        assert!(normalize(&[], true, 1, 1).is_err());
        assert!(normalize(&[], false, 0, 1).is_err());
    }

    #[test]
    fn grammar_round_trip() {
        let d = sfs("sfs o a=0 b=1 fibres=2/1,3/1");
        assert_eq!(d.to_string(), "sfs o a=0 b=1 fibres=2/1,3/1");
        assert_eq!(sfs("sfs n a=1 b=2").to_string(), "sfs n a=1 b=2");
        assert_eq!(sfs("sfs o a=0 b=1 fibres=3/4").to_string(), "sfs o a=0 b=1 fibres=3/1");
        assert!("sfs x a=0 b=1".parse::<SeifertData>().is_err());
        assert!("sfs o b=1 a=0".parse::<SeifertData>().is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(upper_bound(&sfs("sfs o a=0 b=1 fibres=2/1,3/1")), BigInt::from(622));
        assert_eq!(upper_bound(&sfs("sfs o a=0 b=2")), BigInt::from(176));
        assert_eq!(upper_bound(&sfs("sfs o a=4 b=1")), BigInt::from(464));
        assert_eq!(upper_bound(&sfs("sfs o a=0 b=1 fibres=3/1,3/1,3/1")), BigInt::from(902));
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(chi_lower_bound(&sfs("sfs o a=0 b=1")), r(1, 3));
        assert_eq!(chi_lower_bound(&sfs("sfs o a=0 b=2")), r(1, 6));
        assert_eq!(chi_lower_bound(&sfs("sfs o a=4 b=1")), r(2, 3));
    }

    #[test]
    fn predicted_homology() {
        let h = |s: &str| expected_h1(&sfs(s)).to_string();
        assert_eq!(h("sfs o a=0 b=1 fibres=2/1,3/1"), "Z^1");
        assert_eq!(h("sfs o a=0 b=2"), "Z^2");
        assert_eq!(h("sfs o a=0 b=1 fibres=3/1,3/1,3/1"), "Z^1 + Z/3 + Z/3");
        assert_eq!(h("sfs n a=1 b=1"), "Z^1 + Z/2");
        assert_eq!(h("sfs n a=1 b=1 fibres=3/1"), "Z^1 + Z/6");
        assert_eq!(h("sfs n a=1 b=1 fibres=2/1"), "Z^1 + Z/4");
    }

    #[test]
    fn report() {
        let r = theorem_bound_report(&sfs("sfs o a=0 b=1 fibres=2/1,3/1"));
        assert_eq!(r.proxy, BigInt::from(7));
        assert!(!r.solid_torus);
        assert!(theorem_bound_report(&sfs("sfs o a=0 b=1 fibres=5/2")).solid_torus);
        assert_eq!(theorem_bound_report(&sfs("sfs o a=0 b=2")).proxy, BigInt::from(1));
        assert!(r.with_achieved(100).to_string().contains("ratio 100/7"));
    }

    fn raw_fibres() -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((1i64..20, -40i64..40), 0..4)
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(raw in raw_fibres(), a in 0u32..3, b in 1u32..4) {
            let a = 2 * a;
            if let Ok(d) = normalize(&raw, true, a, b) {
                let again: Vec<(i64, i64)> = d.fibres.iter().map(|f| {
                    (i64::try_from(f.p().clone()).unwrap(), i64::try_from(f.q().clone()).unwrap())
                }).collect();
                prop_assert_eq!(normalize(&again, true, a, b).unwrap(), d.clone());
                prop_assert_eq!(d.to_string().parse::<SeifertData>().unwrap(), d);
            }
        }

        #[test]
        fn bound_symmetric_under_complement(p in 2i64..40, q in 1i64..40, orientable in any::<bool>()) {
            let q = q % p;
            prop_assume!(q != 0 && q.gcd(&p) == 1);
            let a = if orientable { 2 } else { 1 };
            let d1 = normalize(&[(p, q)], orientable, a, 1).unwrap();
            let d2 = normalize(&[(p, p - q)], orientable, a, 1).unwrap();
            prop_assert_eq!(upper_bound(&d1), upper_bound(&d2));
            prop_assert_eq!(expected_h1(&d1).rank as u64, predicted_free_rank(&d1));
        }
    }
}
