use std::collections::HashMap;

use super::{complement_pair, edge_index, face_vertices, Triangulation, TriError, EDGES};
use crate::surface::{SurfaceComponent, SurfaceTriangulation};
use crate::unionfind::UnionFind;

/// An oriented edge `a → b` of tetrahedron `tet`; names the edge class it lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeRef {
    pub tet: usize,
    pub a: usize,
    pub b: usize,
}

impl EdgeRef {
    pub fn new(tet: usize, a: usize, b: usize) -> EdgeRef {
        EdgeRef { tet, a, b }
    }

    pub fn reversed(self) -> EdgeRef {
        EdgeRef { tet: self.tet, a: self.b, b: self.a }
    }

    pub fn check(self, t: &Triangulation) -> Result<(), TriError> {
        if self.tet >= t.size() || self.a > 3 || self.b > 3 || self.a == self.b {
            return Err(TriError::BadEdge(self.tet, self.a, self.b));
        }
        Ok(())
    }

    pub fn class(self, s: &Skeleton) -> usize {
        s.edge_of[self.tet][edge_index(self.a, self.b)]
    }

    /// +1 when `a → b` agrees with the class orientation.
    pub fn sign(self, s: &Skeleton) -> i64 {
        let base = s.edge_sign[self.tet][edge_index(self.a, self.b)] as i64;
        if self.a < self.b {
            base
        } else {
            -base
        }
    }
}

/// Orbit classes of vertices, edges and faces, with orientation data.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub vertex_of: Vec<[usize; 4]>,
    pub edge_of: Vec<[usize; 6]>,
    /// Orientation of `(t, lo → hi)` relative to its class, ±1.
    pub edge_sign: Vec<[i8; 6]>,
    pub face_of: Vec<[usize; 4]>,
    /// Orientation of face `(t, f)` with sorted vertices relative to its class.
    pub face_sign: Vec<[i8; 4]>,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// False when the edge is identified with itself reversed.
    pub edge_valid: Vec<bool>,
    pub edge_degree: Vec<usize>,
    pub edge_boundary: Vec<bool>,
    pub face_boundary: Vec<bool>,
    pub vertex_boundary: Vec<bool>,
    /// Vertex classes at the tail and head of each oriented edge class.
    pub edge_ends: Vec<[usize; 2]>,
    /// A representative `(tet, edge index)` of each edge class, with positive sign.
    pub edge_rep: Vec<(usize, usize)>,
    pub face_rep: Vec<(usize, usize)>,
}

impl Skeleton {
    pub fn new(t: &Triangulation) -> Skeleton {
        let n = t.size();
        let mut vuf = UnionFind::new(4 * n);
        let mut euf = UnionFind::new(6 * n);
        let mut conflicts = Vec::new();
        for a in 0..n {
            for (f, g) in t.gluings_of(a).iter().enumerate() {
                let Some(g) = g else { continue };
                if (g.tet, g.face) < (a, f) {
                    continue;
                }
                let fv = face_vertices(f);
                for &v in &fv {
                    vuf.union(4 * a + v, 4 * g.tet + g.perm.apply(v));
                }
                for i in 0..3 {
                    for j in i + 1..3 {
                        let (x, y) = (fv[i], fv[j]);
                        let (x2, y2) = (g.perm.apply(x), g.perm.apply(y));
                        let flip = (x2 > y2) as u8;
                        if !euf.union_parity(6 * a + edge_index(x, y), 6 * g.tet + edge_index(x2, y2), flip) {
                            conflicts.push(6 * a + edge_index(x, y));
                        }
                    }
                }
            }
        }
        let (vclass, vertices) = vuf.classes();
        let (eclass, edges) = euf.classes();
        let mut edge_valid = vec![true; edges];
        for c in conflicts {
            edge_valid[eclass[c]] = false;
        }
        let mut vertex_of = vec![[0; 4]; n];
        let mut edge_of = vec![[0; 6]; n];
        let mut edge_sign = vec![[1i8; 6]; n];
        let mut edge_degree = vec![0; edges];
        let mut edge_boundary = vec![false; edges];
        let mut edge_ends = vec![[usize::MAX; 2]; edges];
        let mut edge_rep = vec![(usize::MAX, 0); edges];
        for a in 0..n {
            for v in 0..4 {
                vertex_of[a][v] = vclass[4 * a + v];
            }
            for (e, &(x, y)) in EDGES.iter().enumerate() {
                let atom = 6 * a + e;
                let c = eclass[atom];
                edge_of[a][e] = c;
                let s = if euf.find_parity(atom).1 == 0 { 1 } else { -1 };
                edge_sign[a][e] = s;
                edge_degree[c] += 1;
                let (p, q) = complement_pair(x, y);
                if t.gluing(a, p).is_none() || t.gluing(a, q).is_none() {
                    edge_boundary[c] = true;
                }
                if edge_rep[c].0 == usize::MAX {
                    let (tail, head) = if s == 1 { (x, y) } else { (y, x) };
                    edge_ends[c] = [vclass[4 * a + tail], vclass[4 * a + head]];
                    edge_rep[c] = (a, e);
                }
            }
        }
        let mut face_of = vec![[usize::MAX; 4]; n];
        let mut face_sign = vec![[1i8; 4]; n];
        let mut face_boundary = Vec::new();
        let mut face_rep = Vec::new();
        let mut vertex_boundary = vec![false; vertices];
        for a in 0..n {
            for f in 0..4 {
                if face_of[a][f] != usize::MAX {
                    continue;
                }
                let c = face_rep.len();
                face_rep.push((a, f));
                face_of[a][f] = c;
                match t.gluing(a, f) {
                    Some(g) => {
                        face_boundary.push(false);
                        face_of[g.tet][g.face] = c;
                        let img = face_vertices(f).map(|v| g.perm.apply(v));
                        let inversions = (img[0] > img[1]) as u8 + (img[0] > img[2]) as u8 + (img[1] > img[2]) as u8;
                        face_sign[g.tet][g.face] = if inversions % 2 == 0 { 1 } else { -1 };
                    }
                    None => {
                        face_boundary.push(true);
                        for v in face_vertices(f) {
                            vertex_boundary[vclass[4 * a + v]] = true;
                        }
                    }
                }
            }
        }
        Skeleton {
            vertex_of,
            edge_of,
            edge_sign,
            face_of,
            face_sign,
            vertices,
            edges,
            faces: face_rep.len(),
            edge_valid,
            edge_degree,
            edge_boundary,
            face_boundary,
            vertex_boundary,
            edge_ends,
            edge_rep,
            face_rep,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64 - self.vertex_of.len() as i64
    }

    /// Euler characteristic of each vertex link and whether it has boundary.
    pub fn vertex_link_data(&self, t: &Triangulation) -> Vec<(i64, bool)> {
        let mut corners = vec![0i64; self.vertices];
        let mut free = vec![0i64; self.vertices];
        for a in 0..t.size() {
            for v in 0..4 {
                let c = self.vertex_of[a][v];
                corners[c] += 1;
                for f in (0..4).filter(|&f| f != v) {
                    if t.gluing(a, f).is_none() {
                        free[c] += 1;
                    }
                }
            }
        }
        let mut link_vertices = vec![0i64; self.vertices];
        for e in 0..self.edges {
            let [x, y] = self.edge_ends[e];
            if self.edge_valid[e] {
                link_vertices[x] += 1;
                link_vertices[y] += 1;
            } else {
                link_vertices[x] += 1;
            }
        }
        (0..self.vertices)
            .map(|c| {
                let edges = (3 * corners[c] + free[c]) / 2;
                (link_vertices[c] - edges + corners[c], free[c] > 0)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkKind {
    Sphere,
    Disc,
    Other { euler: i64, has_boundary: bool },
}

/// Topology of one boundary component.
pub type BoundaryComponent = SurfaceComponent;

#[derive(Clone, Debug)]
pub struct SkeletonReport {
    pub skeleton: Skeleton,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub valid_manifold: bool,
    pub connected_components: usize,
    pub boundary_components: Vec<BoundaryComponent>,
    /// Number of tetrahedron corners around each edge class.
    pub edge_link_lengths: Vec<usize>,
    pub vertex_links: Vec<LinkKind>,
}

impl SkeletonReport {
    pub fn boundary_tori(&self) -> usize {
        self.boundary_components.iter().filter(|c| c.is_torus()).count()
    }

    /// Valid, connected, orientable, with a single torus boundary and χ = 0.
    pub fn is_solid_torus_candidate(&self) -> bool {
        self.valid_manifold
            && self.orientable
            && self.connected_components == 1
            && self.euler_characteristic == 0
            && self.boundary_components.len() == 1
            && self.boundary_components[0].is_torus()
    }

    /// Valid with a single sphere boundary and χ = 1.
    pub fn is_ball_candidate(&self) -> bool {
        self.valid_manifold
            && self.connected_components == 1
            && self.euler_characteristic == 1
            && self.boundary_components.len() == 1
            && self.boundary_components[0].is_sphere()
    }
}

/// ±1 per tetrahedron if consistently orientable.
pub fn orientation(t: &Triangulation) -> Option<Vec<i8>> {
    let n = t.size();
    let mut sign = vec![0i8; n];
    for start in 0..n {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for g in t.gluings_of(a).iter().flatten() {
                let want = if g.perm.is_even() { -sign[a] } else { sign[a] };
                if sign[g.tet] == 0 {
                    sign[g.tet] = want;
                    stack.push(g.tet);
                } else if sign[g.tet] != want {
                    return None;
                }
            }
        }
    }
    Some(sign)
}

fn connected_components(t: &Triangulation) -> usize {
    let mut uf = UnionFind::new(t.size());
    for a in 0..t.size() {
        for g in t.gluings_of(a).iter().flatten() {
            uf.union(a, g.tet);
        }
    }
    uf.classes().1
}

pub fn validate(t: &Triangulation) -> SkeletonReport {
    let skeleton = Skeleton::new(t);
    let links = skeleton.vertex_link_data(t);
    let vertex_links: Vec<LinkKind> = links
        .iter()
        .map(|&(euler, has_boundary)| match (euler, has_boundary) {
            (2, false) => LinkKind::Sphere,
            (1, true) => LinkKind::Disc,
            _ => LinkKind::Other { euler, has_boundary },
        })
        .collect();
    let valid_manifold = skeleton.edge_valid.iter().all(|&v| v)
        && vertex_links.iter().all(|k| matches!(k, LinkKind::Sphere | LinkKind::Disc));
    let boundary_components = if valid_manifold {
        boundary_surface(t).surface.components()
    } else {
        Vec::new()
    };
    SkeletonReport {
        euler_characteristic: skeleton.euler_characteristic(),
        orientable: orientation(t).is_some(),
        valid_manifold,
        connected_components: connected_components(t),
        boundary_components,
        edge_link_lengths: skeleton.edge_degree.clone(),
        vertex_links,
        skeleton,
    }
}

/// The boundary faces as a surface, with the `(tet, face)` behind each triangle.
/// Triangle vertex `i` is the `i`-th smallest vertex of its face.
#[derive(Clone, Debug)]
pub struct BoundarySurface {
    pub surface: SurfaceTriangulation,
    pub faces: Vec<(usize, usize)>,
    pub triangle_of: HashMap<(usize, usize), usize>,
}

impl BoundarySurface {
    /// Tetrahedron label of local vertex `i` of triangle `tri`.
    pub fn tet_vertex(&self, tri: usize, i: usize) -> usize {
        face_vertices(self.faces[tri].1)[i]
    }

    /// The oriented tet edge along triangle edge `e` (from its lower to higher local vertex).
    pub fn edge_ref(&self, tri: usize, e: usize) -> EdgeRef {
        let (u, v) = match e {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        EdgeRef::new(self.faces[tri].0, self.tet_vertex(tri, u), self.tet_vertex(tri, v))
    }
}

/// Follows the edge `a b` of tetrahedron `t` around its link, starting by
/// leaving face `from`, until a free face is reached.
/// Returns that face and the images of `a`, `b` there.
pub(crate) fn walk_to_boundary(
    tri: &Triangulation,
    mut t: usize,
    mut a: usize,
    mut b: usize,
    mut from: usize,
) -> Option<(usize, usize, usize, usize)> {
    let start = (t, a, b, from);
    for _ in 0..=4 * tri.size() + 4 {
        let y = 6 - a - b - from;
        match tri.gluing(t, y) {
            None => return Some((t, y, a, b)),
            Some(g) => {
                t = g.tet;
                a = g.perm.apply(a);
                b = g.perm.apply(b);
                from = g.face;
            }
        }
        if (t, a, b, from) == start {
            return None;
        }
    }
    None
}

/// Every embedding of the edge class of `e`, oriented like `e`, found by
/// walking around the edge in both directions.
pub fn edge_embeddings(tri: &Triangulation, e: EdgeRef) -> Vec<EdgeRef> {
    let mut out = vec![e];
    let (c, d) = complement_pair(e.a, e.b);
    for first_exit in [d, c] {
        let (mut t, mut a, mut b, mut exit) = (e.tet, e.a, e.b, first_exit);
        for _ in 0..6 * tri.size() {
            let Some(g) = tri.gluing(t, exit) else { break };
            t = g.tet;
            a = g.perm.apply(a);
            b = g.perm.apply(b);
            if (t, a, b) == (e.tet, e.a, e.b) {
                // Closed loop around an interior edge: nothing left to see.
                return out;
            }
            out.push(EdgeRef::new(t, a, b));
            exit = 6 - a - b - g.face;
        }
    }
    out
}

/// `Some(±1)` when `f` lies in the edge class of `e`, with the relative orientation.
pub fn same_edge(tri: &Triangulation, e: EdgeRef, f: EdgeRef) -> Option<i64> {
    edge_embeddings(tri, e).into_iter().find_map(|x| {
        if x == f {
            Some(1)
        } else if x == f.reversed() {
            Some(-1)
        } else {
            None
        }
    })
}

pub fn boundary_surface(t: &Triangulation) -> BoundarySurface {
    let faces = t.boundary_faces();
    let triangle_of: HashMap<(usize, usize), usize> = faces.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut surface = SurfaceTriangulation::new(faces.len());
    for (i, &(tet, f)) in faces.iter().enumerate() {
        let fv = face_vertices(f);
        for e in 0..3 {
            if surface.gluing(i, e).is_some() {
                continue;
            }
            let (lu, lv) = ((e + 1) % 3, (e + 2) % 3);
            let (a, b) = (fv[lu], fv[lv]);
            let Some((t2, f2, a2, b2)) = walk_to_boundary(t, tet, a, b, f) else { continue };
            let j = triangle_of[&(t2, f2)];
            let fv2 = face_vertices(f2);
            let pos = |x: usize| fv2.iter().position(|&y| y == x).expect("vertex of face");
            let (pu, pv) = (pos(a2), pos(b2));
            if j == i && 3 - pu - pv == e {
                continue;
            }
            let _ = surface.glue_edge(i, lu, lv, j, pu, pv);
        }
    }
    BoundarySurface { surface, faces, triangle_of }
}

/// The link of vertex class `class` as a surface; triangle `k` is the `k`-th
/// corner `(t, v)` of the class in index order, local vertex `i` points to the
/// `i`-th smallest vertex of `t` other than `v`.
pub fn vertex_link(t: &Triangulation, s: &Skeleton, class: usize) -> (SurfaceTriangulation, Vec<(usize, usize)>) {
    let corners: Vec<(usize, usize)> = (0..t.size())
        .flat_map(|a| (0..4).map(move |v| (a, v)))
        .filter(|&(a, v)| s.vertex_of[a][v] == class)
        .collect();
    let index: HashMap<(usize, usize), usize> = corners.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let others = |v: usize| face_vertices(v);
    let mut link = SurfaceTriangulation::new(corners.len());
    for (i, &(a, v)) in corners.iter().enumerate() {
        let ov = others(v);
        for (e, &w) in ov.iter().enumerate() {
            if link.gluing(i, e).is_some() {
                continue;
            }
            let Some(g) = t.gluing(a, w) else { continue };
            let v2 = g.perm.apply(v);
            let j = index[&(g.tet, v2)];
            let ov2 = others(v2);
            let pos = |x: usize| ov2.iter().position(|&y| y == x).expect("link vertex");
            let (lu, lv) = ((e + 1) % 3, (e + 2) % 3);
            let (pu, pv) = (pos(g.perm.apply(ov[lu])), pos(g.perm.apply(ov[lv])));
            if j == i && 3 - pu - pv == e {
                continue;
            }
            let _ = link.glue_edge(i, lu, lv, j, pu, pv);
        }
    }
    (link, corners)
}
