use super::skeleton::{walk_to_boundary, Skeleton};
use super::{complement_pair, face_vertices, EdgeRef, Perm, Triangulation, TriError};

/// Attaches a tetrahedron to the two boundary faces on either side of the
/// boundary edge `e`, flipping that edge on the boundary. Returns the new
/// tetrahedron; its edge `2 → 3` is the new boundary diagonal, and its edge
/// `0 → 1` is `e`.
pub fn layer_on_boundary_edge(t: &Triangulation, e: EdgeRef) -> Result<(Triangulation, usize), TriError> {
    let mut out = t.clone();
    let n = layer_in_place(&mut out, e)?;
    Ok((out, n))
}

/// As [`layer_on_boundary_edge`], modifying `t`; on error `t` is unchanged.
pub fn layer_in_place(t: &mut Triangulation, e: EdgeRef) -> Result<usize, TriError> {
    e.check(t)?;
    let (c, d) = complement_pair(e.a, e.b);
    let end1 = walk_to_boundary(t, e.tet, e.a, e.b, d).ok_or(TriError::NotLayerable)?;
    let end2 = walk_to_boundary(t, e.tet, e.a, e.b, c).ok_or(TriError::NotLayerable)?;
    let (t1, f1, a1, b1) = end1;
    let (t2, f2, a2, b2) = end2;
    if (t1, f1) == (t2, f2) {
        return Err(TriError::NotLayerable);
    }
    let c1 = 6 - a1 - b1 - f1;
    let c2 = 6 - a2 - b2 - f2;
    let p1 = Perm::new([a1 as u8, b1 as u8, c1 as u8, f1 as u8]).expect("distinct");
    let p2 = Perm::new([a2 as u8, b2 as u8, f2 as u8, c2 as u8]).expect("distinct");
    let n = t.add_tet();
    t.glue(n, 3, t1, p1).expect("free faces");
    t.glue(n, 2, t2, p2).expect("free faces");
    Ok(n)
}

/// 3-1 move: fills the three boundary faces around boundary vertex
/// `(tet, vertex)` with one tetrahedron. The new tetrahedron's vertex 0 is
/// the filled vertex and face 0 is the new boundary triangle.
pub fn fill_three_faces(t: &Triangulation, tet: usize, vertex: usize) -> Result<(Triangulation, usize), TriError> {
    if tet >= t.size() || vertex > 3 {
        return Err(TriError::NoSuchTet(tet));
    }
    let own = (0..4).find(|&f| f != vertex && t.gluing(tet, f).is_none()).map(|f| (tet, f, vertex));
    let start = match own {
        Some(x) => x,
        None => {
            let sk = Skeleton::new(t);
            let class = sk.vertex_of[tet][vertex];
            t.boundary_faces()
                .into_iter()
                .find_map(|(a, f)| face_vertices(f).into_iter().find(|&w| sk.vertex_of[a][w] == class).map(|w| (a, f, w)))
                .ok_or(TriError::NotFillable)?
        }
    };
    // Walk around the vertex on the boundary, crossing the edge (v, y) each time.
    let mut corners: Vec<(usize, usize, usize, usize, usize)> = Vec::with_capacity(3);
    let (mut a, mut f, mut v) = start;
    let mut x = face_vertices(f).into_iter().find(|&w| w != v).expect("face has three vertices");
    loop {
        let y = 6 - f - v - x;
        corners.push((a, f, v, x, y));
        let (a2, f2, v2, y2) = walk_to_boundary(t, a, v, y, f).ok_or(TriError::NotFillable)?;
        if (a2, f2) == (start.0, start.1) {
            if v2 != start.2 || y2 != corners[0].3 {
                return Err(TriError::NotFillable);
            }
            break;
        }
        if corners.len() == 3 {
            return Err(TriError::NotFillable);
        }
        (a, f, v, x) = (a2, f2, v2, y2);
    }
    if corners.len() != 3 {
        return Err(TriError::NotFillable);
    }
    // Around v the neighbours are w0 = x0, w1 = y0 = x1, w2 = y1 = x2, y2 = w0;
    // the new tetrahedron is (v, w0, w1, w2).
    let [c0, c1, c2] = [corners[0], corners[1], corners[2]];
    let perm = |i: [usize; 4]| Perm::new(i.map(|x| x as u8)).expect("distinct");
    let mut out = t.clone();
    let n = out.add_tet();
    out.glue(n, 3, c0.0, perm([c0.2, c0.3, c0.4, c0.1]))?;
    out.glue(n, 1, c1.0, perm([c1.2, c1.1, c1.3, c1.4]))?;
    out.glue(n, 2, c2.0, perm([c2.2, c2.4, c2.1, c2.3]))?;
    Ok((out, n))
}

/// Barycentric subdivision: tetrahedron `24·t + π.index()` is the flag
/// `π(0) ⊂ π(0)π(1) ⊂ π(0)π(1)π(2) ⊂ t`, with its vertex `k` at the
/// barycentre of the `k`-th flag cell.
pub fn barycentric_subdivide(t: &Triangulation) -> Triangulation {
    let n = t.size();
    let mut out = Triangulation::new(24 * n);
    for a in 0..n {
        for pi in Perm::all() {
            let me = 24 * a + pi.index();
            for i in 0..3 {
                let q = pi.compose(Perm::swap(i, i + 1));
                let other = 24 * a + q.index();
                if other > me {
                    out.glue(me, i, other, Perm::IDENTITY).expect("fresh faces");
                }
            }
            if let Some(g) = t.gluing(a, pi.apply(3)) {
                let other = 24 * g.tet + g.perm.compose(pi).index();
                if other > me {
                    out.glue(me, 3, other, Perm::IDENTITY).expect("fresh faces");
                }
            }
        }
    }
    out
}

/// After subdividing, the half of edge `a b` of tetrahedron `t` that touches vertex `a`.
pub fn subdivided_half_edge(t: usize, a: usize, b: usize) -> EdgeRef {
    let (c, d) = complement_pair(a, b);
    let pi = Perm::new([a as u8, b as u8, c as u8, d as u8]).expect("distinct");
    EdgeRef::new(24 * t + pi.index(), 0, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tricomplex::validate;

    fn solid_torus() -> Triangulation {
        let mut t = Triangulation::new(1);
        t.glue(0, 3, 0, Perm::new([1, 2, 3, 0]).unwrap()).unwrap();
        t
    }

    #[test]
    fn layering_on_a_ball() {
        let t = Triangulation::new(1);
        let (l, n) = layer_on_boundary_edge(&t, EdgeRef::new(0, 0, 1)).unwrap();
        assert_eq!(n, 1);
        let r = validate(&l);
        assert!(r.is_ball_candidate());
        assert_eq!(r.boundary_components[0].triangles.len(), 4);
    }

    #[test]
    fn layering_on_solid_torus() {
        let t = solid_torus();
        for (a, b) in [(0, 1), (0, 2), (0, 3)] {
            let (l, _) = layer_on_boundary_edge(&t, EdgeRef::new(0, a, b)).unwrap();
            let r = validate(&l);
            assert!(r.is_solid_torus_candidate(), "edge {a}{b}");
            assert_eq!(r.boundary_components[0].vertices, 1);
        }
    }

    #[test]
    fn interior_edge_cannot_be_layered() {
        let mut t = Triangulation::new(2);
        for f in 0..4 {
            t.glue(0, f, 1, Perm::IDENTITY).unwrap();
        }
        assert_eq!(layer_on_boundary_edge(&t, EdgeRef::new(0, 0, 1)), Err(TriError::NotLayerable));
    }

    #[test]
    fn three_one_move_on_a_cone() {
        // Three tetrahedra around a common edge form a ball whose boundary has
        // a valence-3 vertex at each end of that edge.
        let t = Triangulation::from_simplices(&[[0, 1, 2, 3], [0, 1, 3, 4], [0, 1, 4, 2]]).unwrap();
        let r = validate(&t);
        assert!(r.is_ball_candidate());
        let (f, _) = fill_three_faces(&t, 0, 0).unwrap();
        let r2 = validate(&f);
        assert!(r2.is_ball_candidate());
        assert_eq!(r2.boundary_components[0].triangles.len(), r.boundary_components[0].triangles.len() - 2);
        // The apex of a single tetrahedron has only three faces but they surround it: fine.
        assert!(fill_three_faces(&Triangulation::new(1), 0, 0).is_ok());
    }

    #[test]
    fn three_one_rejects_high_valence() {
        let t = Triangulation::from_simplices(&[[0, 1, 2, 3], [0, 1, 3, 4], [0, 1, 4, 5], [0, 1, 5, 2]]).unwrap();
        assert_eq!(fill_three_faces(&t, 0, 0).unwrap_err(), TriError::NotFillable);
    }

    #[test]
    fn subdivision_counts() {
        let t = solid_torus();
        let s = barycentric_subdivide(&t);
        assert_eq!(s.size(), 24);
        let (r0, r1) = (validate(&t), validate(&s));
        assert!(r1.is_solid_torus_candidate());
        assert_eq!(r0.euler_characteristic, r1.euler_characteristic);
        let e = subdivided_half_edge(0, 0, 3);
        let k0 = r0.skeleton.edge_of[0][crate::tricomplex::edge_index(0, 3)];
        assert_eq!(r1.edge_link_lengths[e.class(&r1.skeleton)], 2 * r0.edge_link_lengths[k0]);
    }
}
