//! Layered solid tori. Layering a tetrahedron on a boundary edge of a
//! one-vertex torus flips that edge, which moves the boundary's triangle one
//! step in the Farey tessellation; a final fold of the two boundary faces
//! closes the torus off.

use num_traits::{Signed, Zero};

use super::{boundary_faces_along, one_tet_solid_torus, BuildError, BuildReport, LabeledBoundary};
use crate::farey::{best_walk, norm_u64, walk_from, FareyTriangle, Slope};
use crate::homology::peripheral_kernel;
use crate::tricomplex::{face_vertices, layer_in_place, same_edge, EdgeRef, Perm, Triangulation};

/// Boundary edges of a one-vertex torus together with their current slopes.
struct Ledger {
    edges: Vec<(EdgeRef, Slope)>,
    triangle: FareyTriangle,
    /// The two boundary faces, once known.
    faces: Option<[(usize, usize); 2]>,
}

impl Ledger {
    fn position(&self, s: &Slope) -> usize {
        self.edges.iter().position(|(_, x)| x == s).expect("slope in ledger")
    }

    /// Layers on the edge of slope `gone`, moving to the neighbouring triangle.
    fn layer(&mut self, t: &mut Triangulation, gone: &Slope) -> Result<(), BuildError> {
        let next = self.triangle.flip(gone);
        let new = next.vertices().iter().find(|v| !self.triangle.contains(v)).expect("flip adds a vertex").clone();
        let i = self.position(gone);
        let n = layer_in_place(t, self.edges[i].0)?;
        self.edges[i] = (EdgeRef::new(n, 2, 3), new);
        self.triangle = next;
        self.faces = Some([(n, 0), (n, 1)]);
        Ok(())
    }

    /// Glues the two boundary faces to each other, matching the edge of
    /// slope `c` with itself and swapping the other two.
    fn fold(&self, t: &mut Triangulation, c: &Slope) -> Result<(), BuildError> {
        let faces = match self.faces {
            Some(f) => f,
            None => {
                let f = boundary_faces_along(t, self.edges[0].0);
                if f.len() != 2 {
                    return Err(BuildError::Labels("boundary is not a two-triangle torus".into()));
                }
                [f[0], f[1]]
            }
        };
        let labels: Vec<EdgeRef> = self.edges.iter().map(|x| x.0).collect();
        // For each face: the tet vertex opposite each labelled edge.
        let opposite = |(tet, f): (usize, usize)| -> Result<[usize; 3], BuildError> {
            let fv = face_vertices(f);
            let mut out = [usize::MAX; 3];
            for k in 0..3 {
                let (x, y) = (fv[(k + 1) % 3], fv[(k + 2) % 3]);
                let e = EdgeRef::new(tet, x, y);
                let i = labels
                    .iter()
                    .position(|&l| same_edge(t, l, e).is_some())
                    .ok_or_else(|| BuildError::Labels("boundary edge unlabelled".into()))?;
                out[i] = fv[k];
            }
            if out.contains(&usize::MAX) {
                return Err(BuildError::Labels("face repeats a label".into()));
            }
            Ok(out)
        };
        let (oa, ob) = (opposite(faces[0])?, opposite(faces[1])?);
        let ic = self.position(c);
        let (ia, ib) = ((ic + 1) % 3, (ic + 2) % 3);
        let mut images = [0u8; 4];
        images[faces[0].1] = faces[1].1 as u8;
        images[oa[ic]] = ob[ic] as u8;
        images[oa[ia]] = ob[ib] as u8;
        images[oa[ib]] = ob[ia] as u8;
        let perm = Perm::new(images).expect("bijection");
        t.glue(faces[0].0, faces[0].1, faces[1].0, perm)?;
        Ok(())
    }
}

fn check_range(s: &Slope) -> Result<(), BuildError> {
    if s.is_infinite() || s.q().is_zero() || s.q().magnitude() >= s.p().magnitude() {
        return Err(BuildError::SlopeRange(s.clone()));
    }
    Ok(())
}

/// Closes off the labelled boundary with a layered solid torus whose
/// meridian is `p·mu + q·lambda`, where `s = q/p`.
pub fn dehn_fill(t: &Triangulation, b: &LabeledBoundary, s: &Slope) -> Result<(Triangulation, BuildReport), BuildError> {
    let mut out = t.clone();
    let report = dehn_fill_in_place(&mut out, b, s)?;
    Ok((out, report))
}

/// As [`dehn_fill`], modifying `t`.
pub fn dehn_fill_in_place(t: &mut Triangulation, b: &LabeledBoundary, s: &Slope) -> Result<BuildReport, BuildError> {
    check_range(s)?;
    let mut report = BuildReport::new(norm_u64(s)? as usize + 2);
    let mut ledger = Ledger { edges: b.ledger().to_vec(), triangle: b.triangle(), faces: None };
    let walk = walk_from(s, &ledger.triangle)?;
    let mut layers = 0;
    if walk.len() == 1 {
        ledger.layer(t, s)?;
        layers += 1;
    } else {
        for k in 0..walk.len() - 2 {
            let gone = walk[k].removed_towards(&walk[k + 1]).expect("walk steps are flips");
            ledger.layer(t, &gone)?;
            layers += 1;
        }
    }
    report.stage("layer", layers);
    let c = ledger
        .triangle
        .vertices()
        .iter()
        .find(|v| ledger.triangle.flip(v).contains(s))
        .expect("slope is one flip away")
        .clone();
    ledger.fold(t, &c)?;
    report.stage("fold", 0);
    Ok(report)
}

/// A layered solid torus whose meridian is `p·mu + q·lambda` for `0 < q < p`.
/// Stages record the boundary triangle after each layering.
pub fn standalone_lst(s: &Slope) -> Result<(Triangulation, LabeledBoundary, BuildReport), BuildError> {
    if s.is_infinite() || !s.q().is_positive() || s.q() >= s.p() {
        return Err(BuildError::SlopeRange(s.clone()));
    }
    let mut report = BuildReport::new(norm_u64(s)? as usize + 2);
    let walk = best_walk(s)?;
    // Triangles leading away from the meridian, ending at the base triangle.
    let mut path: Vec<FareyTriangle> = walk[..walk.len() - 2].iter().rev().cloned().collect();
    if path.is_empty() {
        let base = &walk[0];
        let one = base.vertices().iter().find(|v| s.det(v).magnitude() == &1u32.into()).expect("weight one vertex");
        path = vec![base.flip(one), base.clone()];
    }
    // path[0] has intersection weights 1, 2, 3 with the meridian.
    let (mut t, one) = one_tet_solid_torus();
    let weight = |v: &Slope| s.det(v).magnitude().clone();
    let mut edges: Vec<(EdgeRef, Slope)> = Vec::new();
    for (e, w) in [(one.mu, 1u32), (one.lambda, 2), (one.diag, 3)] {
        let v = path[0].vertices().iter().find(|v| weight(v) == w.into()).expect("weights 1, 2, 3");
        edges.push((e, v.clone()));
    }
    let mut ledger = Ledger { edges, triangle: path[0].clone(), faces: None };
    report.stage(format!("tet {}", ledger.triangle), 1);
    for k in 0..path.len() - 1 {
        let gone = path[k].removed_towards(&path[k + 1]).expect("path steps are flips");
        ledger.layer(&mut t, &gone)?;
        report.stage(format!("layer {}", ledger.triangle), 1);
    }
    let find = |s: &Slope| ledger.edges[ledger.position(s)].0;
    let diag = ledger.triangle.vertices().iter().find(|v| !v.is_infinite() && !v.q().is_zero()).expect("±1").clone();
    let mut lb = LabeledBoundary::new(&t, find(&Slope::zero()), find(&Slope::infinity()), find(&diag))?;
    let basis = lb.peripheral_basis(&t)?;
    let k = peripheral_kernel(&t, &basis)?;
    if &k != s {
        lb = lb.flip_lambda(&t)?;
        let k = peripheral_kernel(&t, &lb.peripheral_basis(&t)?)?;
        if &k != s {
            return Err(BuildError::Labels(format!("meridian {k} instead of {s}")));
        }
    }
    Ok((t, lb, report))
}
