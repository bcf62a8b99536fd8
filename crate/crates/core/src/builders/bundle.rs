//! Circle bundles over surfaces with boundary, one prism per triangle and
//! circle segment, each prism coned to an interior point (eight tetrahedra).
//!
//! Over a non-orientable base the bundle is twisted: crossing an
//! orientation-reversing edge of the base reverses the circle. The circle
//! is then cut into two segments so that the reflection is simplicial.

use super::surfaces::boundary_loops;
use super::{BuildError, BuildReport, LabeledBoundary};
use crate::surface::SurfaceTriangulation;
use crate::tricomplex::{fill_three_faces, layer_on_boundary_edge, same_edge, Assembler, EdgeRef, Triangulation};

/// Vertex labels: (prism, corner or `CONE`, level).
type Label = (u32, u8, u8);
const CONE: u8 = 3;

/// A torus boundary component of a circle bundle, over one boundary loop of
/// the base. Everything is oriented: the section along the loop, fibre
/// segments upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibredBoundary {
    /// Level-0 loop of the first segment.
    pub section: EdgeRef,
    /// Level-0 loop of the second segment (equal to `section` when untwisted).
    pub upper_section: EdgeRef,
    pub fibres: Vec<EdgeRef>,
    pub diagonals: Vec<EdgeRef>,
    /// Upper quad tetrahedron of the first segment, the one containing
    /// `(u, 0)`, `(v, 1)` and `(u, 1)`.
    upper_tet: usize,
}

impl FibredBoundary {
    pub fn segments(&self) -> usize {
        self.fibres.len()
    }
}

/// The diagonal corner of the quad over edge `e` of triangle `i` in segment `k`.
struct Diagonals {
    low: Vec<[[u8; 3]; 2]>,
}

fn edge_corners(e: usize) -> (usize, usize) {
    match e {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn add_prism(asm: &mut Assembler<Label>, p: u32, low: [u8; 3]) -> [[usize; 2]; 3] {
    let cone = (p, CONE, 0);
    let c = |x: usize, l: u8| (p, x as u8, l);
    asm.add_tet([cone, c(0, 0), c(1, 0), c(2, 0)]);
    asm.add_tet([cone, c(0, 1), c(1, 1), c(2, 1)]);
    let mut quads = [[0; 2]; 3];
    for (e, q) in quads.iter_mut().enumerate() {
        let (u, v) = edge_corners(e);
        let d = low[e] as usize;
        let o = u + v - d;
        q[0] = asm.add_tet([cone, c(d, 0), c(o, 0), c(o, 1)]);
        q[1] = asm.add_tet([cone, c(d, 0), c(o, 1), c(d, 1)]);
    }
    quads
}

/// `S × S¹`, or the orientable twisted bundle when `twisted`. Returns the
/// triangulation and the boundary tori in the order of the base's boundary
/// loops.
pub fn circle_bundle(s: &SurfaceTriangulation, twisted: bool) -> Result<(Triangulation, Vec<FibredBoundary>), BuildError> {
    if twisted && s.is_orientable() {
        return Err(BuildError::Parameters("twisted bundle over an orientable base".into()));
    }
    let loops = boundary_loops(s);
    if loops.is_empty() {
        return Err(BuildError::Parameters("base surface is closed".into()));
    }
    let segs = if twisted { 2 } else { 1 };
    let prism = |i: usize, k: usize| (i * segs + k) as u32;
    let flip = |g: &crate::surface::EdgeGluing| twisted && g.orientation_reversing();
    let n = s.size();

    let mut diag = Diagonals { low: vec![[[0; 3]; 2]; n] };
    for i in 0..n {
        for e in 0..3 {
            let (u, v) = edge_corners(e);
            match s.gluing(i, e) {
                None => {
                    diag.low[i][0][e] = u as u8;
                    if segs == 2 {
                        diag.low[i][1][e] = v as u8;
                    }
                }
                Some(g) if (i, e) < (g.tri, g.edge) => {
                    let partner = if flip(&g) { g.perm[v] } else { g.perm[u] };
                    for k in 0..segs {
                        diag.low[i][k][e] = u as u8;
                        diag.low[g.tri][k][g.edge] = partner;
                    }
                }
                Some(_) => {}
            }
        }
    }

    let mut asm = Assembler::new();
    let mut quads = Vec::with_capacity(n * segs);
    for i in 0..n {
        for k in 0..segs {
            quads.push(add_prism(&mut asm, prism(i, k), diag.low[i][k]));
        }
    }
    asm.glue_matching()?;

    for i in 0..n {
        for k in 0..segs {
            let p = prism(i, k);
            let q = prism(i, (k + 1) % segs);
            asm.glue_labelled([0, 1, 2].map(|x| (p, x, 1)), [0, 1, 2].map(|x| (q, x, 0)))?;
            for e in 0..3 {
                let Some(g) = s.gluing(i, e) else { continue };
                if (i, e) > (g.tri, g.edge) {
                    continue;
                }
                let f = flip(&g);
                let k2 = if f { segs - 1 - k } else { k };
                let q = prism(g.tri, k2);
                let (u, v) = edge_corners(e);
                let d = diag.low[i][k][e] as usize;
                let o = u + v - d;
                let map = |(x, l): (usize, u8)| (q, g.perm[x], if f { 1 - l } else { l });
                for tri in [[(d, 0), (o, 0), (o, 1)], [(d, 0), (o, 1), (d, 1)]] {
                    asm.glue_labelled(tri.map(|(x, l)| (p, x as u8, l)), tri.map(map))?;
                }
            }
        }
    }
    let (t, _) = asm.finish();

    let signs = if twisted { vec![1; n] } else { s.orientation_signs() };
    let mut out = Vec::new();
    for (i, e) in loops {
        let (u, _) = edge_corners(e);
        // Direction u → v agrees with the triangle's boundary orientation unless e = 1.
        let forward = (e != 1) == (signs[i] > 0);
        let mut fb = FibredBoundary { section: EdgeRef::new(0, 0, 1), upper_section: EdgeRef::new(0, 0, 1), fibres: vec![], diagonals: vec![], upper_tet: 0 };
        for k in 0..segs {
            let [a, b] = quads[i * segs + k][e];
            let d = diag.low[i][k][e] as usize;
            // Tet a is [cone, (d,0), (o,0), (o,1)].
            let section = if d == u { EdgeRef::new(a, 1, 2) } else { EdgeRef::new(a, 2, 1) };
            let section = if forward { section } else { section.reversed() };
            if k == 0 {
                fb.section = section;
                fb.upper_tet = b;
            }
            if k + 1 == segs {
                fb.upper_section = section;
            }
            fb.fibres.push(EdgeRef::new(a, 2, 3));
            fb.diagonals.push(EdgeRef::new(a, 1, 3));
        }
        out.push(fb);
    }
    Ok((t, out))
}

/// Makes a fibred boundary torus one-vertex: a no-op over untwisted
/// boundaries; otherwise two layerings and a 3-1 move (three tetrahedra).
/// `mu` is the section, `lambda` the fibre.
pub fn reduce_boundary_torus(t: &Triangulation, fb: &FibredBoundary) -> Result<(Triangulation, LabeledBoundary, BuildReport), BuildError> {
    let mut report = BuildReport::new(3);
    if fb.segments() == 1 {
        let lb = LabeledBoundary::new(t, fb.section, fb.fibres[0], fb.diagonals[0])?;
        report.stage("reduce", 0);
        return Ok((t.clone(), lb, report));
    }
    // Flipping the second section loop leaves a fibre loop at the first vertex.
    let (t1, n1) = layer_on_boundary_edge(t, fb.upper_section)?;
    let apex_below = t1.gluing(n1, 3).map(|g| g.tet) == Some(fb.upper_tet);
    let lambda = if apex_below { EdgeRef::new(n1, 2, 3) } else { EdgeRef::new(n1, 3, 2) };
    // Candidate V0–V1 edges, with which end (0 = tail, 1 = head) is V1.
    let candidates = [(fb.fibres[0], 1), (fb.fibres[1], 0), (fb.diagonals[0], 1), (fb.diagonals[1], 0)];
    for (e, v1_end) in candidates {
        let Ok((t2, n2)) = layer_on_boundary_edge(&t1, e) else { continue };
        // The new tetrahedron's edge 0 → 1 is e, and both faces at it are free.
        let Ok((t3, n3)) = fill_three_faces(&t2, n2, v1_end) else { continue };
        let diag = [(1, 2), (1, 3), (2, 3)]
            .map(|(a, b)| EdgeRef::new(n3, a, b))
            .into_iter()
            .find(|&x| same_edge(&t3, x, fb.section).is_none() && same_edge(&t3, x, lambda).is_none());
        let Some(diag) = diag else { continue };
        let Ok(lb) = LabeledBoundary::new(&t3, fb.section, lambda, diag) else { continue };
        report.stage("layer section", 1);
        report.stage("layer vertical", 1);
        report.stage("fill vertex", 1);
        return Ok((t3, lb, report));
    }
    Err(BuildError::Reduction("no layering makes the second vertex trivalent".into()))
}
