//! Integer homology of glued tetrahedra, computed on orbit classes.

mod snf;
mod sparse;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use snf::{invariant_factors, smith_normal_form, IntMatrix, SmithForm};
use sparse::{eliminate, rank_and_torsion, Column};

use crate::farey::Slope;
use crate::tricomplex::{boundary_surface, edge_index, face_vertices, EdgeRef, Skeleton, Triangulation};
use crate::unionfind::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("boundary component {0} does not exist")]
    NoSuchComponent(usize),
    #[error("boundary component {0} is not a torus")]
    NotTorus(usize),
    #[error("edge {0:?} is not a boundary loop of component {1}")]
    NotBoundaryLoop(EdgeRef, usize),
    #[error("mu and lambda do not form a basis of the boundary torus")]
    NotBasis,
    #[error("kernel rank {0}")]
    KernelRank(usize),
    #[error("ideal homology needs a closed orientable complex")]
    NotClosedOrientable,
    #[error("cannot parse abelian group: {0}")]
    Parse(String),
}

/// `Z^rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `d₁ | d₂ | … | d_k`, every `dᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup { rank: 0, invariant_factors: Vec::new() }
    }

    pub fn free(rank: usize) -> AbelianGroup {
        AbelianGroup { rank, invariant_factors: Vec::new() }
    }

    /// Any list of cyclic orders; zeros count as free summands, units vanish.
    pub fn from_orders(rank: usize, orders: impl IntoIterator<Item = BigInt>) -> AbelianGroup {
        let mut rank = rank;
        let mut d: Vec<BigInt> = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                rank += 1;
            } else if !o.is_one() {
                d.push(o);
            }
        }
        // Pairwise gcd/lcm sweeps settle into a divisibility chain.
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
        d.retain(|x| !x.is_one());
        AbelianGroup { rank, invariant_factors: d }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Cokernel of an integer matrix (columns are relations on the rows).
    pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
        let f = invariant_factors(m);
        AbelianGroup::from_orders(m.rows() - f.len(), f)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.rank)?;
        for d in &self.invariant_factors {
            write!(f, " + Z/{d}")?;
        }
        Ok(())
    }
}

impl FromStr for AbelianGroup {
    type Err = HomologyError;

    fn from_str(s: &str) -> Result<AbelianGroup, HomologyError> {
        let bad = || HomologyError::Parse(s.to_string());
        let mut rank = 0;
        let mut orders = Vec::new();
        for part in s.split('+').map(str::trim) {
            if let Some(r) = part.strip_prefix("Z^") {
                rank += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d < BigInt::from(2) {
                    return Err(bad());
                }
                orders.push(d);
            } else if part == "Z" {
                rank += 1;
            } else {
                return Err(bad());
            }
        }
        Ok(AbelianGroup::from_orders(rank, orders))
    }
}

/// Boundary maps over the orbit classes of a triangulation.
pub struct ChainComplex {
    pub dims: [usize; 4],
    /// `∂₁` as (tail, head) vertex classes per edge.
    pub edge_ends: Vec<[usize; 2]>,
    pub d2: Vec<Column>,
    pub d3: Vec<Column>,
}

impl ChainComplex {
    pub fn new(t: &Triangulation, s: &Skeleton) -> ChainComplex {
        let d2 = (0..s.faces).map(|c| face_boundary(s, s.face_rep[c])).collect();
        let d3 = (0..t.size())
            .map(|a| {
                let mut col: Vec<(u32, i64)> = Vec::with_capacity(4);
                for i in 0..4 {
                    let sign = if i % 2 == 0 { 1 } else { -1 } * s.face_sign[a][i] as i64;
                    let row = s.face_of[a][i] as u32;
                    match col.iter_mut().find(|x| x.0 == row) {
                        Some(x) => x.1 += sign,
                        None => col.push((row, sign)),
                    }
                }
                col.retain(|x| x.1 != 0);
                col
            })
            .collect();
        ChainComplex { dims: [s.vertices, s.edges, s.faces, t.size()], edge_ends: s.edge_ends.clone(), d2, d3 }
    }

    fn rank_d1(&self) -> usize {
        let mut uf = UnionFind::new(self.dims[0]);
        let mut rank = 0;
        for &[a, b] in &self.edge_ends {
            if uf.find(a) != uf.find(b) {
                uf.union(a, b);
                rank += 1;
            }
        }
        rank
    }

    /// Rank and torsion of `∂_k`, for k in 1..=3.
    fn boundary_invariants(&self, k: usize) -> (usize, Vec<BigInt>) {
        match k {
            1 => (self.rank_d1(), Vec::new()),
            2 => rank_and_torsion(self.dims[1], self.d2.clone()),
            3 => rank_and_torsion(self.dims[2], self.d3.clone()),
            _ => (0, Vec::new()),
        }
    }

    pub fn homology(&self, k: usize) -> AbelianGroup {
        if k > 3 {
            return AbelianGroup::trivial();
        }
        let (rank_in, _) = self.boundary_invariants(k);
        let (rank_out, tors) = self.boundary_invariants(k + 1);
        AbelianGroup::from_orders(self.dims[k] - rank_in - rank_out, tors)
    }
}

/// `∂` of the class of face `(t, f)`, oriented by its sorted vertices.
fn face_boundary(s: &Skeleton, (t, f): (usize, usize)) -> Column {
    let [v0, v1, v2] = face_vertices(f);
    let mut col: Column = Vec::with_capacity(3);
    for (x, y, sign) in [(v1, v2, 1i64), (v0, v2, -1), (v0, v1, 1)] {
        let e = edge_index(x, y);
        let row = s.edge_of[t][e] as u32;
        let v = sign * s.edge_sign[t][e] as i64;
        match col.iter_mut().find(|c| c.0 == row) {
            Some(c) => c.1 += v,
            None => col.push((row, v)),
        }
    }
    col.retain(|c| c.1 != 0);
    col
}

/// `H_k(T; Z)` of the glued complex.
pub fn homology(t: &Triangulation, k: usize) -> AbelianGroup {
    homology_with(t, &Skeleton::new(t), k)
}

/// As [`homology`], reusing a computed skeleton.
pub fn homology_with(t: &Triangulation, s: &Skeleton, k: usize) -> AbelianGroup {
    let h = ChainComplex::new(t, s).homology(k);
    if k == 1 {
        assert!(h.rank <= 6 * t.size(), "first Betti number exceeds the edge count bound");
    }
    h
}

/// First homology of the manifold whose ideal triangulation is `t`
/// (vertices removed). By Lefschetz duality this is `H²(T, vertices)`,
/// the cohomology of the transposed boundary maps in degrees 1–3.
pub fn ideal_h1(t: &Triangulation) -> Result<AbelianGroup, HomologyError> {
    if !t.is_closed() || crate::tricomplex::orientation(t).is_none() {
        return Err(HomologyError::NotClosedOrientable);
    }
    let s = Skeleton::new(t);
    let c = ChainComplex::new(t, &s);
    let (r2, tors2) = rank_and_torsion(c.dims[1], c.d2.clone());
    let (r3, _) = rank_and_torsion(c.dims[2], c.d3.clone());
    // ker ∂₃ᵀ / im ∂₂ᵀ: torsion of the cokernel of ∂₂ᵀ equals that of ∂₂.
    Ok(AbelianGroup::from_orders(c.dims[2] - r3 - r2, tors2))
}

/// Two oriented boundary loops giving a basis of `H₁` of one torus
/// component of the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeripheralBasis {
    pub component: usize,
    pub mu: EdgeRef,
    pub lambda: EdgeRef,
}

impl PeripheralBasis {
    /// Checks that `mu` and `lambda` are loops on torus boundary component
    /// `component` generating its first homology.
    pub fn new(t: &Triangulation, component: usize, mu: EdgeRef, lambda: EdgeRef) -> Result<PeripheralBasis, HomologyError> {
        let s = Skeleton::new(t);
        let bs = boundary_surface(t);
        let comps = bs.surface.components();
        let comp = comps.get(component).ok_or(HomologyError::NoSuchComponent(component))?;
        if !comp.is_torus() {
            return Err(HomologyError::NotTorus(component));
        }
        // Edge classes of the component, densely numbered.
        let mut local = std::collections::HashMap::new();
        let mut relations: Vec<Vec<(usize, i64)>> = Vec::new();
        for &tri in &comp.triangles {
            let col = face_boundary(&s, bs.faces[tri]);
            for e in 0..3 {
                let class = bs.edge_ref(tri, e).class(&s);
                let n = local.len();
                local.entry(class).or_insert(n);
            }
            relations.push(col.iter().map(|&(r, v)| (local[&(r as usize)], v)).collect());
        }
        let loop_row = |e: EdgeRef| -> Result<Vec<(usize, i64)>, HomologyError> {
            if e.check(t).is_err() {
                return Err(HomologyError::NotBoundaryLoop(e, component));
            }
            let class = e.class(&s);
            let [tail, head] = s.edge_ends[class];
            match local.get(&class) {
                Some(&i) if tail == head => Ok(vec![(i, e.sign(&s))]),
                _ => Err(HomologyError::NotBoundaryLoop(e, component)),
            }
        };
        let m = loop_row(mu)?;
        let l = loop_row(lambda)?;
        relations.push(m);
        relations.push(l);
        let edges = local.len();
        let mut mat = IntMatrix::zeros(relations.len(), edges);
        for (i, rel) in relations.iter().enumerate() {
            for &(j, v) in rel {
                mat[(i, j)] += BigInt::from(v);
            }
        }
        // Quotient of the edge group by face relations and the two loops must
        // be free of rank V − 1, i.e. the loops span the cycles modulo boundaries.
        let f = invariant_factors(&mat);
        if f.iter().any(|x| !x.is_one()) || f.len() + comp.vertices - 1 != edges {
            return Err(HomologyError::NotBasis);
        }
        Ok(PeripheralBasis { component, mu, lambda })
    }
}

/// The slope `(p, q)` with `p·mu + q·lambda` null-homologous in `T` over
/// the rationals, as a primitive vector with `p > 0` (or `(0, 1)`).
pub fn peripheral_kernel(t: &Triangulation, b: &PeripheralBasis) -> Result<Slope, HomologyError> {
    let s = Skeleton::new(t);
    let c = ChainComplex::new(t, &s);
    let mut cols = c.d2;
    for e in [b.mu, b.lambda] {
        cols.push(vec![(e.class(&s) as u32, e.sign(&s))]);
    }
    let res = eliminate(c.dims[1], cols, 2);
    let n = res.cols.len();
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let dense = |col: &Column| {
        let mut v = vec![BigRational::zero(); res.rows];
        for &(r, x) in col {
            v[r as usize] = q(x);
        }
        v
    };
    // Echelon basis of the remaining boundary columns, then reduce the loops.
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let reduce = |mut x: Vec<BigRational>, basis: &[(usize, Vec<BigRational>)]| {
        for (r, bv) in basis {
            if !x[*r].is_zero() {
                let k = &x[*r] / &bv[*r];
                for (xi, bi) in x.iter_mut().zip(bv) {
                    if !bi.is_zero() {
                        *xi -= &k * bi;
                    }
                }
            }
        }
        x
    };
    for col in &res.cols[..n - 2] {
        let x = reduce(dense(col), &basis);
        if let Some(r) = x.iter().position(|v| !v.is_zero()) {
            basis.push((r, x));
        }
    }
    let rm = reduce(dense(&res.cols[n - 2]), &basis);
    let rl = reduce(dense(&res.cols[n - 1]), &basis);
    let (pm, pl) = (rm.iter().position(|v| !v.is_zero()), rl.iter().position(|v| !v.is_zero()));
    let (p, qv) = match (pm, pl) {
        (None, None) => return Err(HomologyError::KernelRank(2)),
        (None, Some(_)) => (BigRational::one(), BigRational::zero()),
        (Some(_), None) => (BigRational::zero(), BigRational::one()),
        (Some(i), Some(_)) => {
            // x·rm + y·rl = 0 with (x, y) = (rl[i], −rm[i]) if the residuals are parallel.
            let (x, y) = (rl[i].clone(), -rm[i].clone());
            if rm.iter().zip(&rl).any(|(a, b)| &x * a + &y * b != BigRational::zero()) {
                return Err(HomologyError::KernelRank(0));
            }
            (x, y)
        }
    };
    let den = p.denom().lcm(qv.denom());
    let pi = (p * BigRational::from_integer(den.clone())).to_integer();
    let qi = (qv * BigRational::from_integer(den)).to_integer();
    Slope::new(qi, pi).map_err(|_| HomologyError::KernelRank(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tricomplex::{barycentric_subdivide, Perm};
    use proptest::prelude::*;

    fn solid_torus() -> Triangulation {
        let mut t = Triangulation::new(1);
        t.glue(0, 3, 0, Perm::new([1, 2, 3, 0]).unwrap()).unwrap();
        t
    }

    fn s3() -> Triangulation {
        let mut t = Triangulation::new(2);
        for f in 0..4 {
            t.glue(0, f, 1, Perm::IDENTITY).unwrap();
        }
        t
    }

    #[test]
    fn group_display_and_parse() {
        let g = AbelianGroup::from_orders(1, [2, 3, 0, 1].map(BigInt::from));
        assert_eq!(g.to_string(), "Z^2 + Z/6");
        assert_eq!("Z^2 + Z/6".parse::<AbelianGroup>().unwrap(), g);
        assert_eq!("Z^1 + Z/2 + Z/3".parse::<AbelianGroup>().unwrap(), AbelianGroup::from_orders(1, [BigInt::from(6)]));
        assert_eq!(AbelianGroup::trivial().to_string(), "Z^0");
        assert!("Z/1".parse::<AbelianGroup>().is_err());
    }

    #[test]
    fn basic_complexes() {
        let ball = Triangulation::new(1);
        assert_eq!(homology(&ball, 0), AbelianGroup::free(1));
        assert!(homology(&ball, 1).is_trivial());
        assert!(homology(&ball, 2).is_trivial());
        let st = solid_torus();
        assert_eq!(homology(&st, 1), AbelianGroup::free(1));
        assert!(homology(&st, 2).is_trivial());
        let sphere = s3();
        assert_eq!(homology(&sphere, 3), AbelianGroup::free(1));
        assert!(homology(&sphere, 1).is_trivial());
    }

    #[test]
    fn disc_presentation_example() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3], vec![1, 1]]);
        assert_eq!(AbelianGroup::cokernel(&m), AbelianGroup::free(1));
    }

    #[test]
    fn squared_boundary_vanishes() {
        let t = barycentric_subdivide(&solid_torus());
        let s = Skeleton::new(&t);
        let c = ChainComplex::new(&t, &s);
        for col in &c.d3 {
            let mut acc = vec![0i64; s.edges];
            for &(f, v) in col {
                for &(e, w) in &c.d2[f as usize] {
                    acc[e as usize] += v * w;
                }
            }
            assert!(acc.iter().all(|&x| x == 0));
        }
        for col in &c.d2 {
            let mut acc = vec![0i64; s.vertices];
            for &(e, w) in col {
                let [a, b] = c.edge_ends[e as usize];
                acc[b] += w;
                acc[a] -= w;
            }
            assert!(acc.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solid_torus_peripheral() {
        let t = solid_torus();
        // Edge classes {01,12,23}, {02,13}, {03}: the meridian disc runs
        // once along 01, twice along 02 and three times along 03.
        let b = PeripheralBasis::new(&t, 0, EdgeRef::new(0, 0, 1), EdgeRef::new(0, 0, 2)).unwrap();
        assert_eq!(peripheral_kernel(&t, &b).unwrap(), Slope::of(-1, 2));
        assert!(PeripheralBasis::new(&t, 0, EdgeRef::new(0, 0, 1), EdgeRef::new(0, 1, 2)).is_err());
        assert!(PeripheralBasis::new(&t, 1, EdgeRef::new(0, 0, 1), EdgeRef::new(0, 0, 2)).is_err());
        // Reversing lambda flips the sign of q.
        let b = PeripheralBasis::new(&t, 0, EdgeRef::new(0, 0, 1), EdgeRef::new(0, 2, 0)).unwrap();
        assert_eq!(peripheral_kernel(&t, &b).unwrap(), Slope::of(1, 2));
    }

    #[test]
    fn ideal_homology_of_sphere_is_trivial() {
        assert!(ideal_h1(&s3()).unwrap().is_trivial());
        assert!(ideal_h1(&solid_torus()).is_err());
    }

    fn random_solid_torus_growth() -> impl Strategy<Value = Vec<(usize, usize, usize)>> {
        prop::collection::vec((0usize..64, 0usize..4, 0usize..4), 0..6)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn layering_preserves_homology(steps in random_solid_torus_growth()) {
            let mut t = solid_torus();
            for (tet, a, b) in steps {
                if a == b {
                    continue;
                }
                let e = EdgeRef::new(tet % t.size(), a, b);
                if let Ok((next, _)) = crate::tricomplex::layer_on_boundary_edge(&t, e) {
                    t = next;
                }
            }
            prop_assert_eq!(homology(&t, 1), AbelianGroup::free(1));
            prop_assert_eq!(homology(&t, 0), AbelianGroup::free(1));
            prop_assert!(homology(&t, 2).is_trivial());
            let sub = barycentric_subdivide(&t);
            prop_assert_eq!(homology(&sub, 1), AbelianGroup::free(1));
        }
    }
}
