//! Base surfaces with one vertex on every boundary circle, so that each
//! boundary component is a single loop edge.

use super::BuildError;
use crate::surface::SurfaceTriangulation;

fn disc() -> SurfaceTriangulation {
    let mut s = SurfaceTriangulation::new(1);
    s.glue_edge(0, 0, 1, 0, 0, 2).expect("fresh");
    s
}

/// Triangles `(a, b, c)` and `(a, c, d)` with `bc ~ ad`.
fn annulus() -> SurfaceTriangulation {
    let mut s = SurfaceTriangulation::new(2);
    s.glue_edge(0, 1, 2, 1, 0, 2).expect("fresh");
    s.glue_edge(0, 0, 2, 1, 0, 1).expect("fresh");
    s
}

/// Fan triangulation `(P0, Pj, Pj+1)` of the `4g`-gon with sides paired as
/// `a b a⁻¹ b⁻¹` per handle.
fn closed_orientable(genus: usize) -> SurfaceTriangulation {
    let n = 4 * genus;
    let mut s = SurfaceTriangulation::new(n - 2);
    for j in 0..n - 3 {
        s.glue_edge(j, 0, 2, j + 1, 0, 1).expect("fresh");
    }
    // Side i runs P_i → P_{i+1}: (triangle, local start, local end).
    let side = |i: usize| -> (usize, usize, usize) {
        if i == 0 {
            (0, 0, 1)
        } else if i == n - 1 {
            (n - 3, 2, 0)
        } else {
            (i - 1, 1, 2)
        }
    };
    for k in 0..genus {
        for (i, j) in [(4 * k, 4 * k + 2), (4 * k + 1, 4 * k + 3)] {
            let (t1, s1, e1) = side(i);
            let (t2, s2, e2) = side(j);
            s.glue_edge(t1, s1, e1, t2, e2, s2).expect("fresh");
        }
    }
    s
}

/// Two triangles forming a Möbius band whose boundary has two vertices,
/// plus one triangle over the two boundary edges so that the boundary
/// becomes a single loop.
fn mobius() -> SurfaceTriangulation {
    let mut s = SurfaceTriangulation::new(3);
    s.glue_edge(0, 0, 2, 1, 0, 1).expect("fresh");
    s.glue_edge(1, 0, 2, 0, 2, 1).expect("fresh");
    s.glue_edge(0, 0, 1, 2, 0, 1).expect("fresh");
    s.glue_edge(1, 2, 1, 2, 1, 2).expect("fresh");
    s
}

/// Replaces triangle `t = ABC` by `XAB`, `XBC`, `XCA'` and `XA'X'`, where
/// `XA ~ A'X'`; the edge `XX'` becomes a new boundary loop. Adds three
/// triangles.
fn add_hole(s: &mut SurfaceTriangulation, t: usize) {
    let old: Vec<_> = (0..3).map(|e| s.gluing(t, e)).collect();
    for e in 0..3 {
        s.unglue(t, e);
    }
    let xbc = s.add_triangle();
    let xca = s.add_triangle();
    let loop_tri = s.add_triangle();
    // Where vertex v of old edge e now sits: (triangle, local vertex).
    let place = |e: usize, v: usize| -> (usize, usize) {
        match (e, v) {
            (2, 0) => (t, 1),
            (2, 1) => (t, 2),
            (0, 1) => (xbc, 1),
            (0, 2) => (xbc, 2),
            (1, 2) => (xca, 1),
            (1, 0) => (xca, 2),
            _ => unreachable!("vertex not on edge"),
        }
    };
    for (e, g) in old.iter().enumerate() {
        let Some(g) = g else { continue };
        let (u, v) = ((e + 1) % 3, (e + 2) % 3);
        let (tu, lu) = place(e, u);
        let (_, lv) = place(e, v);
        let (nu, nv) = (g.perm[u] as usize, g.perm[v] as usize);
        let (ntri, nlu, nlv) = if g.tri == t {
            let (nt, a) = place(g.edge, nu);
            let (_, b) = place(g.edge, nv);
            (nt, a, b)
        } else {
            (g.tri, nu, nv)
        };
        if s.gluing(tu, 3 - lu - lv).is_none() {
            s.glue_edge(tu, lu, lv, ntri, nlu, nlv).expect("re-glue old edge");
        }
    }
    s.glue_edge(t, 0, 2, xbc, 0, 1).expect("fresh");
    s.glue_edge(xbc, 0, 2, xca, 0, 1).expect("fresh");
    s.glue_edge(xca, 0, 2, loop_tri, 0, 1).expect("fresh");
    s.glue_edge(loop_tri, 1, 2, t, 1, 0).expect("fresh");
}

/// Free edges `(triangle, edge)` in index order.
pub(crate) fn boundary_loops(s: &SurfaceTriangulation) -> Vec<(usize, usize)> {
    (0..s.size()).flat_map(|t| (0..3).map(move |e| (t, e))).filter(|&(t, e)| s.gluing(t, e).is_none()).collect()
}

fn disjoint_union(parts: &[SurfaceTriangulation]) -> (SurfaceTriangulation, Vec<usize>) {
    let total = parts.iter().map(|p| p.size()).sum();
    let mut out = SurfaceTriangulation::new(total);
    let mut offsets = Vec::new();
    let mut off = 0;
    for p in parts {
        offsets.push(off);
        for t in 0..p.size() {
            for e in 0..3 {
                if let Some(g) = p.gluing(t, e) {
                    if out.gluing(off + t, e).is_none() {
                        out.glue(off + t, e, off + g.tri, g.perm).expect("copy");
                    }
                }
            }
        }
        off += p.size();
    }
    (out, offsets)
}

/// `Γ_p`: a Möbius band with `p` one-vertex boundary loops.
fn mobius_block(p: usize) -> SurfaceTriangulation {
    let mut s = mobius();
    for _ in 1..p {
        add_hole(&mut s, 0);
    }
    s
}

/// A surface of Euler characteristic `2 − a − b′` (orientable: `a` is twice
/// the genus; otherwise the number of cross-caps) with `b′` boundary
/// circles, each a single loop edge.
pub fn base_surface(orientable: bool, a: u32, boundary: u32) -> Result<SurfaceTriangulation, BuildError> {
    let b = boundary as usize;
    if b == 0 {
        return Err(BuildError::Parameters("base needs a boundary component".into()));
    }
    if orientable {
        if a % 2 == 1 {
            return Err(BuildError::Parameters(format!("orientable base needs even a, got {a}")));
        }
        let g = (a / 2) as usize;
        let (mut s, holes) = match (g, b) {
            (0, 1) => (disc(), 0),
            (0, _) => (annulus(), b - 2),
            _ => (closed_orientable(g), b),
        };
        for _ in 0..holes {
            add_hole(&mut s, 0);
        }
        return Ok(s);
    }
    if a == 0 {
        return Err(BuildError::Parameters("non-orientable base needs a ≥ 1".into()));
    }
    let a = a as usize;
    let blocks: Vec<SurfaceTriangulation> = (0..a)
        .map(|i| {
            let p = if i == 0 {
                b + usize::from(a > 1)
            } else if i + 1 < a {
                2
            } else {
                1
            };
            mobius_block(p)
        })
        .collect();
    let (mut s, offsets) = disjoint_union(&blocks);
    // Chain the blocks: the last loop of block i meets the first loop of block i+1.
    for i in 0..a - 1 {
        let in_block = |j: usize| {
            let lo = offsets[j];
            let hi = lo + blocks[j].size();
            boundary_loops(&s).into_iter().filter(move |&(t, _)| t >= lo && t < hi).collect::<Vec<_>>()
        };
        let (t1, e1) = *in_block(i).last().expect("spare loop");
        let (t2, e2) = in_block(i + 1)[0];
        let ends = |e: usize| ((e + 1) % 3, (e + 2) % 3);
        let (u1, v1) = ends(e1);
        let (u2, v2) = ends(e2);
        s.glue_edge(t1, u1, v1, t2, u2, v2)?;
    }
    Ok(s)
}
