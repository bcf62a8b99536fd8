//! Material triangulations from ideal ones. Each tetrahedron is truncated
//! at its four corners; each of its hexagonal faces is coned to one of its
//! vertices, and the resulting polyhedron is coned from a vertex of maximal
//! valence. At most 14 tetrahedra replace each ideal one.

use super::{BuildError, BuildReport};
use crate::tricomplex::{face_vertices, Assembler, Skeleton, Triangulation};

/// The corner of the truncated tetrahedron on edge `vw`, next to `v`.
fn point(v: usize, w: usize) -> u8 {
    (4 * v + w) as u8
}

/// The hexagon on face `f`, in cyclic order.
fn hexagon(f: usize) -> [(usize, usize); 6] {
    let [a, b, c] = face_vertices(f);
    [(a, b), (b, a), (b, c), (c, b), (c, a), (a, c)]
}

/// Fan triangles of the hexagon on `f` from the corner `apex`.
fn fan(f: usize, apex: (usize, usize)) -> [[u8; 3]; 4] {
    let h = hexagon(f);
    let i = h.iter().position(|&x| x == apex).expect("apex on hexagon");
    let at = |k: usize| {
        let (v, w) = h[(i + k) % 6];
        point(v, w)
    };
    [1, 2, 3, 4].map(|k| [at(0), at(k), at(k + 1)])
}

fn check_ideal(t: &Triangulation) -> Result<(), BuildError> {
    if t.size() == 0 || !t.is_closed() {
        return Err(BuildError::NotIdeal);
    }
    let s = Skeleton::new(t);
    let links_closed = s.vertex_link_data(t).iter().all(|&(_, has_boundary)| !has_boundary);
    if !s.edge_valid.iter().all(|&v| v) || !links_closed {
        return Err(BuildError::NotIdeal);
    }
    Ok(())
}

pub fn truncate_ideal(t: &Triangulation) -> Result<(Triangulation, BuildReport), BuildError> {
    check_ideal(t)?;
    let n = t.size();
    let mut report = BuildReport::new(14 * n);

    // Hexagon apexes: the lowest corner on the lower side of each face pair.
    let mut apex = vec![[(0usize, 0usize); 4]; n];
    for tet in 0..n {
        for f in 0..4 {
            let g = t.gluing(tet, f).expect("closed");
            if (tet, f) <= (g.tet, g.face) {
                let lowest = *hexagon(f).iter().min_by_key(|&&(v, w)| point(v, w)).expect("six corners");
                apex[tet][f] = lowest;
                apex[g.tet][g.face] = (g.perm.apply(lowest.0), g.perm.apply(lowest.1));
            }
        }
    }

    let mut asm: Assembler<(usize, u8)> = Assembler::new();
    for tet in 0..n {
        let mut triangles: Vec<[u8; 3]> = (0..4)
            .map(|v| {
                let [a, b, c] = face_vertices(v);
                [point(v, a), point(v, b), point(v, c)]
            })
            .collect();
        for f in 0..4 {
            triangles.extend(fan(f, apex[tet][f]));
        }
        let mut valence = [0usize; 16];
        for tri in &triangles {
            for &p in tri {
                valence[p as usize] += 1;
            }
        }
        let z = (0..16u8).max_by_key(|&p| (valence[p as usize], std::cmp::Reverse(p))).expect("corners");
        let mut used = 0;
        for tri in triangles.iter().filter(|tri| !tri.contains(&z)) {
            asm.add_tet([(tet, z), (tet, tri[0]), (tet, tri[1]), (tet, tri[2])]);
            used += 1;
        }
        report.stage(format!("tet {tet} from valence {}", valence[z as usize]), used);
    }
    asm.glue_matching()?;

    for tet in 0..n {
        for f in 0..4 {
            let g = t.gluing(tet, f).expect("closed");
            if (tet, f) > (g.tet, g.face) {
                continue;
            }
            let image = |p: u8| point(g.perm.apply(p as usize / 4), g.perm.apply(p as usize % 4));
            for tri in fan(f, apex[tet][f]) {
                asm.glue_labelled(tri.map(|p| (tet, p)), tri.map(|p| (g.tet, image(p))))?;
            }
        }
    }
    Ok((asm.finish().0, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{homology, ideal_h1};
    use crate::tricomplex::{orientation, validate, vertex_link, Perm};
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn random_closed(n: usize, rng: &mut StdRng) -> Triangulation {
        let mut faces: Vec<(usize, usize)> = (0..n).flat_map(|t| (0..4).map(move |f| (t, f))).collect();
        faces.shuffle(rng);
        let mut t = Triangulation::new(n);
        for pair in faces.chunks(2) {
            let ((a, f), (b, g)) = (pair[0], pair[1]);
            let perm = loop {
                let p = Perm::from_index(rng.gen_range(0..24));
                if p.apply(f) == g {
                    break p;
                }
            };
            t.glue(a, f, b, perm).expect("free faces");
        }
        t
    }

    /// Orientable, connected, every vertex link a torus.
    fn torus_cusped(t: &Triangulation) -> bool {
        if check_ideal(t).is_err() || !t.is_connected() || orientation(t).is_none() {
            return false;
        }
        let s = Skeleton::new(t);
        (0..s.vertices).all(|c| {
            let (link, _) = vertex_link(t, &s, c);
            link.euler_characteristic() == 0 && link.is_orientable()
        })
    }

    #[test]
    fn rejects_non_ideal_input() {
        assert_eq!(truncate_ideal(&Triangulation::new(1)).unwrap_err(), BuildError::NotIdeal);
    }

    #[test]
    fn hexagon_fans_cover_the_hexagon() {
        for f in 0..4 {
            for a in hexagon(f) {
                let mut corners: Vec<u8> = fan(f, a).iter().flatten().copied().collect();
                corners.sort_unstable();
                corners.dedup();
                assert_eq!(corners.len(), 6);
            }
        }
    }

    #[test]
    fn truncated_cusped_manifolds() {
        let mut rng = StdRng::seed_from_u64(7);
        let mut found = 0;
        for n in [2, 3] {
            for _ in 0..20_000 {
                let t = random_closed(n, &mut rng);
                if !torus_cusped(&t) {
                    continue;
                }
                let (m, r) = truncate_ideal(&t).unwrap();
                assert!(m.size() <= 14 * n);
                assert_eq!(m.size(), r.tets_used);
                let v = validate(&m);
                assert!(v.valid_manifold && v.orientable, "{t}");
                let cusps = Skeleton::new(&t).vertices;
                assert_eq!(v.boundary_components.len(), cusps);
                assert_eq!(v.boundary_tori(), cusps);
                assert_eq!(homology(&m, 1), ideal_h1(&t).unwrap());
                found += 1;
            }
        }
        assert!(found > 0);
    }
}
