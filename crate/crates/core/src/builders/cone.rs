//! `D² × I` bounded by a given annulus: cone the annulus to an interior
//! point, then cap each boundary circle with a cone from a new point.

use super::{BuildError, BuildReport};
use crate::surface::SurfaceTriangulation;
use crate::tricomplex::Triangulation;
use crate::unionfind::UnionFind;

fn is_annulus(a: &SurfaceTriangulation) -> bool {
    a.size() > 0
        && a.components().len() == 1
        && a.euler_characteristic() == 0
        && a.is_orientable()
        && a.boundary_component_count() == 2
}

/// A triangulation of `D² × I` whose boundary contains `A` as `∂D² × I`,
/// with `|A| + |∂A|` tetrahedra. Non-simplicial annuli are first
/// barycentrically subdivided, once or twice.
pub fn cone_annulus_to_d2xi(a: &SurfaceTriangulation) -> Result<(Triangulation, BuildReport), BuildError> {
    if !is_annulus(a) {
        return Err(BuildError::NotAnnulus);
    }
    // A second derived subdivision is always simplicial; one may not be.
    let mut a = a.clone();
    let mut rounds = 0;
    while !a.is_simplicial() {
        if rounds == 2 {
            return Err(BuildError::NotSimplicial);
        }
        a = a.barycentric_subdivide();
        rounds += 1;
    }
    let sk = a.skeleton();
    let boundary = &sk.boundary_edges;
    let mut report = BuildReport::new(3 * a.size());

    // Boundary circle of each boundary vertex.
    let mut uf = UnionFind::new(sk.vertices);
    for &(t, e) in boundary {
        let v = sk.vertex_of[t];
        uf.union(v[(e + 1) % 3], v[(e + 2) % 3]);
    }
    let (class, _) = uf.classes();
    let mut circles: Vec<usize> = boundary.iter().map(|&(t, e)| class[sk.vertex_of[t][(e + 1) % 3]]).collect();
    circles.sort_unstable();
    circles.dedup();

    let centre = sk.vertices;
    let cap = |v: usize| centre + 1 + circles.iter().position(|&c| c == class[v]).expect("boundary vertex");
    let mut simplices: Vec<[usize; 4]> = sk.vertex_of.iter().map(|&[x, y, z]| [centre, x, y, z]).collect();
    report.stage("cone", simplices.len());
    for &(t, e) in boundary {
        let v = sk.vertex_of[t];
        let (x, y) = (v[(e + 1) % 3], v[(e + 2) % 3]);
        simplices.push([cap(x), centre, x, y]);
    }
    report.stage("caps", boundary.len());
    Ok((Triangulation::from_simplices(&simplices)?, report))
}

/// The `m × rows` grid on `S¹ × I`, each square cut along a diagonal:
/// `2·m·rows` triangles, `2m` boundary edges. Simplicial for `m ≥ 3`.
pub fn simplicial_annulus(m: usize, rows: usize) -> SurfaceTriangulation {
    assert!(m >= 3 && rows >= 1, "need m ≥ 3 and rows ≥ 1");
    let v = |i: usize, r: usize| r * m + i % m;
    let mut tris = Vec::with_capacity(2 * m * rows);
    for r in 0..rows {
        for i in 0..m {
            tris.push([v(i, r), v(i + 1, r), v(i + 1, r + 1)]);
            tris.push([v(i, r), v(i + 1, r + 1), v(i, r + 1)]);
        }
    }
    SurfaceTriangulation::from_triangles(&tris).expect("grid annulus")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;
    use crate::tricomplex::validate;

    #[test]
    fn smallest_annulus() {
        let a = simplicial_annulus(3, 1);
        assert_eq!(a.size(), 6);
        assert_eq!(a.skeleton().boundary_edges.len(), 6);
        let (t, r) = cone_annulus_to_d2xi(&a).unwrap();
        assert_eq!(t.size(), 12);
        assert_eq!(r.tets_used, 12);
        assert!(r.within_budget());
        assert!(validate(&t).is_ball_candidate());
        assert!(homology(&t, 1).is_trivial());
    }

    #[test]
    fn boundary_contains_the_annulus() {
        let a = simplicial_annulus(5, 3);
        let (t, _) = cone_annulus_to_d2xi(&a).unwrap();
        let r = validate(&t);
        assert!(r.is_ball_candidate() && r.orientable);
        // Boundary: the annulus plus one disc of |∂_j A| triangles per circle.
        assert_eq!(t.boundary_faces().len(), a.size() + 10);
    }

    #[test]
    fn non_simplicial_input_is_subdivided() {
        let a = super::super::base_surface(true, 0, 2).unwrap();
        assert!(!a.is_simplicial());
        let (t, r) = cone_annulus_to_d2xi(&a).unwrap();
        assert!(validate(&t).is_ball_candidate());
        assert_eq!(t.size(), r.tets_used);
    }

    #[test]
    fn rejects_other_surfaces() {
        let disc = SurfaceTriangulation::from_triangles(&[[0, 1, 2]]).unwrap();
        assert_eq!(cone_annulus_to_d2xi(&disc).unwrap_err(), BuildError::NotAnnulus);
    }
}
