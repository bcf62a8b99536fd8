//! Triangulated surfaces: triangles with edge pairings.
//!
//! Edge `e` of a triangle is opposite local vertex `e`. A gluing carries the
//! induced map on local vertex labels; it reverses orientation exactly when
//! that map is an even permutation.

use std::collections::HashMap;

use thiserror::Error;

use crate::unionfind::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("triangle {0} does not exist")]
    NoSuchTriangle(usize),
    #[error("edge ({0}, {1}) is already glued")]
    AlreadyGlued(usize, usize),
    #[error("edge ({0}, {1}) would be glued to itself")]
    SelfGluing(usize, usize),
    #[error("bad vertex labels")]
    BadLabels,
    #[error("edge {0:?} occurs in more than two triangles")]
    NonManifoldEdge((usize, usize)),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeGluing {
    pub tri: usize,
    pub edge: usize,
    pub perm: [u8; 3],
}

impl EdgeGluing {
    pub fn orientation_reversing(&self) -> bool {
        perm3_even(self.perm)
    }
}

pub fn perm3_even(p: [u8; 3]) -> bool {
    let inv = (p[0] > p[1]) as u8 + (p[0] > p[2]) as u8 + (p[1] > p[2]) as u8;
    inv % 2 == 0
}

fn perm3_inverse(p: [u8; 3]) -> [u8; 3] {
    let mut out = [0u8; 3];
    for (i, &j) in p.iter().enumerate() {
        out[j as usize] = i as u8;
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurfaceTriangulation {
    glue: Vec<[Option<EdgeGluing>; 3]>,
}

/// Topology of one connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceComponent {
    pub triangles: Vec<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub boundary_circles: usize,
    pub orientable: bool,
}

impl SurfaceComponent {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.triangles.len() as i64
    }

    /// Orientable genus, or nonorientable genus (number of cross-caps).
    pub fn genus(&self) -> u64 {
        let deficit = 2 - self.euler_characteristic() - self.boundary_circles as i64;
        if self.orientable {
            (deficit / 2) as u64
        } else {
            deficit as u64
        }
    }

    pub fn is_torus(&self) -> bool {
        self.orientable && self.boundary_circles == 0 && self.euler_characteristic() == 0
    }

    pub fn is_sphere(&self) -> bool {
        self.boundary_circles == 0 && self.euler_characteristic() == 2
    }
}

/// Orbit data of a surface triangulation.
#[derive(Clone, Debug)]
pub struct SurfaceSkeleton {
    pub vertex_of: Vec<[usize; 3]>,
    pub edge_of: Vec<[usize; 3]>,
    pub vertices: usize,
    pub edges: usize,
    pub boundary_edges: Vec<(usize, usize)>,
    pub components: usize,
    pub component_of_triangle: Vec<usize>,
}

impl SurfaceTriangulation {
    pub fn new(triangles: usize) -> SurfaceTriangulation {
        SurfaceTriangulation { glue: vec![[None; 3]; triangles] }
    }

    pub fn size(&self) -> usize {
        self.glue.len()
    }

    pub fn add_triangle(&mut self) -> usize {
        self.glue.push([None; 3]);
        self.glue.len() - 1
    }

    pub fn gluing(&self, t: usize, e: usize) -> Option<EdgeGluing> {
        self.glue[t][e]
    }

    /// Glues edge `e` of `t` to edge `perm[e]` of `t2`.
    pub fn glue(&mut self, t: usize, e: usize, t2: usize, perm: [u8; 3]) -> Result<(), SurfaceError> {
        for x in [t, t2] {
            if x >= self.size() {
                return Err(SurfaceError::NoSuchTriangle(x));
            }
        }
        let e2 = perm[e] as usize;
        if t == t2 && e == e2 {
            return Err(SurfaceError::SelfGluing(t, e));
        }
        if self.glue[t][e].is_some() {
            return Err(SurfaceError::AlreadyGlued(t, e));
        }
        if self.glue[t2][e2].is_some() {
            return Err(SurfaceError::AlreadyGlued(t2, e2));
        }
        self.glue[t][e] = Some(EdgeGluing { tri: t2, edge: e2, perm });
        self.glue[t2][e2] = Some(EdgeGluing { tri: t, edge: e, perm: perm3_inverse(perm) });
        Ok(())
    }

    /// Glues the edge `u1 v1` of `t1` to the edge `u2 v2` of `t2`, with `u1 ↦ u2`, `v1 ↦ v2`.
    pub fn glue_edge(&mut self, t1: usize, u1: usize, v1: usize, t2: usize, u2: usize, v2: usize) -> Result<(), SurfaceError> {
        if u1 == v1 || u2 == v2 || u1.max(v1) > 2 || u2.max(v2) > 2 {
            return Err(SurfaceError::BadLabels);
        }
        let (e1, e2) = (3 - u1 - v1, 3 - u2 - v2);
        let mut perm = [0u8; 3];
        perm[u1] = u2 as u8;
        perm[v1] = v2 as u8;
        perm[e1] = e2 as u8;
        self.glue(t1, e1, t2, perm)
    }

    pub fn unglue(&mut self, t: usize, e: usize) {
        if let Some(g) = self.glue[t][e].take() {
            self.glue[g.tri][g.edge] = None;
        }
    }

    /// Builds a surface from triangles given by vertex labels, gluing along
    /// shared label pairs.
    pub fn from_triangles(tris: &[[usize; 3]]) -> Result<SurfaceTriangulation, SurfaceError> {
        let mut s = SurfaceTriangulation::new(tris.len());
        let mut sides: HashMap<(usize, usize), Vec<(usize, usize, usize)>> = HashMap::new();
        for (t, tri) in tris.iter().enumerate() {
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(SurfaceError::BadLabels);
            }
            for e in 0..3 {
                let (u, v) = ((e + 1) % 3, (e + 2) % 3);
                let key = (tri[u].min(tri[v]), tri[u].max(tri[v]));
                sides.entry(key).or_default().push((t, u, v));
            }
        }
        let mut keys: Vec<_> = sides.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            match sides[&key].as_slice() {
                [_] => {}
                &[(t1, u1, v1), (t2, _, _)] => {
                    let pos = |x: usize| tris[t2].iter().position(|&y| y == x).expect("shared label");
                    s.glue_edge(t1, u1, v1, t2, pos(tris[t1][u1]), pos(tris[t1][v1]))?;
                }
                _ => return Err(SurfaceError::NonManifoldEdge(key)),
            }
        }
        Ok(s)
    }

    pub fn skeleton(&self) -> SurfaceSkeleton {
        let n = self.size();
        let mut vuf = UnionFind::new(3 * n);
        let mut cuf = UnionFind::new(n);
        for t in 0..n {
            for e in 0..3 {
                if let Some(g) = self.glue[t][e] {
                    cuf.union(t, g.tri);
                    for v in (0..3).filter(|&v| v != e) {
                        vuf.union(3 * t + v, 3 * g.tri + g.perm[v] as usize);
                    }
                }
            }
        }
        let (vclass, vertices) = vuf.classes();
        let (cclass, components) = cuf.classes();
        let mut edge_of = vec![[usize::MAX; 3]; n];
        let mut edges = 0;
        let mut boundary_edges = Vec::new();
        for t in 0..n {
            for e in 0..3 {
                if edge_of[t][e] != usize::MAX {
                    continue;
                }
                edge_of[t][e] = edges;
                match self.glue[t][e] {
                    Some(g) => edge_of[g.tri][g.edge] = edges,
                    None => boundary_edges.push((t, e)),
                }
                edges += 1;
            }
        }
        SurfaceSkeleton {
            vertex_of: (0..n).map(|t| [vclass[3 * t], vclass[3 * t + 1], vclass[3 * t + 2]]).collect(),
            edge_of,
            vertices,
            edges,
            boundary_edges,
            components,
            component_of_triangle: cclass,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        let s = self.skeleton();
        s.vertices as i64 - s.edges as i64 + self.size() as i64
    }

    /// Number of boundary circles, assuming the surface is a manifold.
    pub fn boundary_component_count(&self) -> usize {
        let s = self.skeleton();
        let mut uf = UnionFind::new(s.vertices);
        let mut used = vec![false; s.vertices];
        for &(t, e) in &s.boundary_edges {
            let a = s.vertex_of[t][(e + 1) % 3];
            let b = s.vertex_of[t][(e + 2) % 3];
            used[a] = true;
            used[b] = true;
            uf.union(a, b);
        }
        (0..s.vertices).filter(|&v| used[v] && uf.find(v) == v).count()
    }

    pub fn is_orientable(&self) -> bool {
        let n = self.size();
        let mut sign = vec![0i8; n];
        for start in 0..n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for g in self.glue[t].iter().flatten() {
                    let want = if g.orientation_reversing() { -sign[t] } else { sign[t] };
                    if sign[g.tri] == 0 {
                        sign[g.tri] = want;
                        stack.push(g.tri);
                    } else if sign[g.tri] != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Per-component topology, components in order of their lowest triangle.
    pub fn components(&self) -> Vec<SurfaceComponent> {
        let k = self.skeleton();
        let orient = self.orientation_signs();
        let mut vseen = vec![usize::MAX; k.vertices];
        let mut eseen = vec![usize::MAX; k.edges];
        let mut bound_uf = UnionFind::new(k.vertices);
        let mut on_boundary = vec![false; k.vertices];
        for &(t, e) in &k.boundary_edges {
            let a = k.vertex_of[t][(e + 1) % 3];
            let b = k.vertex_of[t][(e + 2) % 3];
            on_boundary[a] = true;
            on_boundary[b] = true;
            bound_uf.union(a, b);
        }
        let mut out = vec![
            SurfaceComponent { triangles: Vec::new(), vertices: 0, edges: 0, boundary_circles: 0, orientable: true };
            k.components
        ];
        for t in 0..self.size() {
            let c = k.component_of_triangle[t];
            let comp = &mut out[c];
            comp.triangles.push(t);
            for i in 0..3 {
                let v = k.vertex_of[t][i];
                if vseen[v] == usize::MAX {
                    vseen[v] = c;
                    comp.vertices += 1;
                    if on_boundary[v] && bound_uf.find(v) == v {
                        comp.boundary_circles += 1;
                    }
                }
                let e = k.edge_of[t][i];
                if eseen[e] == usize::MAX {
                    eseen[e] = c;
                    comp.edges += 1;
                }
            }
            if orient[t] == 0 {
                comp.orientable = false;
            }
        }
        out
    }

    /// A consistent ±1 orientation per triangle, or 0 on every triangle of a
    /// nonorientable component.
    pub fn orientation_signs(&self) -> Vec<i8> {
        let n = self.size();
        let mut sign = vec![0i8; n];
        let mut bad_roots = Vec::new();
        let mut root = vec![0usize; n];
        for start in 0..n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            root[start] = start;
            let mut stack = vec![start];
            let mut ok = true;
            while let Some(t) = stack.pop() {
                for g in self.glue[t].iter().flatten() {
                    let want = if g.orientation_reversing() { -sign[t] } else { sign[t] };
                    if sign[g.tri] == 0 {
                        sign[g.tri] = want;
                        root[g.tri] = start;
                        stack.push(g.tri);
                    } else if sign[g.tri] != want {
                        ok = false;
                    }
                }
            }
            if !ok {
                bad_roots.push(start);
            }
        }
        for t in 0..n {
            if bad_roots.contains(&root[t]) {
                sign[t] = 0;
            }
        }
        sign
    }

    /// Simplicial: every triangle has three distinct vertices and distinct
    /// edges have distinct vertex pairs, distinct triangles distinct vertex triples.
    pub fn is_simplicial(&self) -> bool {
        let s = self.skeleton();
        let mut pairs = HashMap::new();
        let mut triples = std::collections::HashSet::new();
        for t in 0..self.size() {
            let v = s.vertex_of[t];
            if v[0] == v[1] || v[1] == v[2] || v[0] == v[2] {
                return false;
            }
            let mut tri = v;
            tri.sort_unstable();
            if !triples.insert(tri) {
                return false;
            }
            for e in 0..3 {
                let (a, b) = (v[(e + 1) % 3], v[(e + 2) % 3]);
                let key = (a.min(b), a.max(b));
                if *pairs.entry(key).or_insert(s.edge_of[t][e]) != s.edge_of[t][e] {
                    return false;
                }
            }
        }
        true
    }

    /// Vertex-labelled triangles (labels are vertex classes).
    pub fn labelled_triangles(&self) -> Vec<[usize; 3]> {
        self.skeleton().vertex_of
    }

    /// Barycentric subdivision: six triangles per triangle, one per flag.
    pub fn barycentric_subdivide(&self) -> SurfaceTriangulation {
        const S3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| S3.iter().position(|&q| q == p).expect("permutation");
        let n = self.size();
        let mut out = SurfaceTriangulation::new(6 * n);
        for t in 0..n {
            for (k, &pi) in S3.iter().enumerate() {
                let me = 6 * t + k;
                // Flag vertices: 0 = corner pi[0], 1 = midpoint of edge {pi0,pi1}, 2 = centre.
                for i in 0..2 {
                    let mut q = pi;
                    q.swap(i, i + 1);
                    let other = 6 * t + idx(q);
                    if other > me {
                        out.glue(me, i, other, [0, 1, 2]).expect("fresh");
                    }
                }
                let e = pi[2];
                if let Some(g) = self.glue[t][e] {
                    let q = [g.perm[pi[0]] as usize, g.perm[pi[1]] as usize, g.perm[pi[2]] as usize];
                    let other = 6 * g.tri + idx(q);
                    if (g.tri, idx(q)) > (t, k) {
                        out.glue(me, 2, other, [0, 1, 2]).expect("fresh");
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> SurfaceTriangulation {
        // Square 0=(0,0) 1=(1,0) 2=(1,1) 3=(0,1) cut along 0-2.
        let mut s = SurfaceTriangulation::new(2);
        // triangle A = (0,1,2), triangle B = (0,2,3)
        s.glue_edge(0, 0, 1, 1, 2, 1).unwrap(); // bottom ~ top
        s.glue_edge(0, 1, 2, 1, 0, 2).unwrap(); // right ~ left
        s.glue_edge(0, 0, 2, 1, 0, 1).unwrap(); // diagonal
        s
    }

    #[test]
    fn one_vertex_torus() {
        let s = torus();
        let k = s.skeleton();
        assert_eq!((k.vertices, k.edges), (1, 3));
        assert_eq!(s.euler_characteristic(), 0);
        assert!(s.is_orientable());
        assert!(!s.is_simplicial());
        assert_eq!(s.boundary_component_count(), 0);
    }

    #[test]
    fn simplicial_sphere() {
        let s = SurfaceTriangulation::from_triangles(&[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        assert_eq!(s.euler_characteristic(), 2);
        assert!(s.is_orientable());
        assert!(s.is_simplicial());
    }

    #[test]
    fn subdivision_preserves_topology() {
        for s in [torus(), SurfaceTriangulation::new(1)] {
            let b = s.barycentric_subdivide();
            assert_eq!(b.size(), 6 * s.size());
            assert_eq!(b.euler_characteristic(), s.euler_characteristic());
            assert_eq!(b.is_orientable(), s.is_orientable());
            assert_eq!(b.boundary_component_count(), s.boundary_component_count());
            assert!(b.barycentric_subdivide().is_simplicial());
        }
    }

    #[test]
    fn klein_bottle_is_nonorientable() {
        let mut s = SurfaceTriangulation::new(2);
        s.glue_edge(0, 0, 1, 1, 2, 1).unwrap();
        s.glue_edge(0, 1, 2, 1, 2, 0).unwrap();
        s.glue_edge(0, 0, 2, 1, 0, 1).unwrap();
        assert!(!s.is_orientable());
        assert_eq!(s.euler_characteristic(), 0);
    }
}
