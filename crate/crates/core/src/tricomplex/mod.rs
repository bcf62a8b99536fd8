//! Generalised triangulations: tetrahedra with face pairings.
//!
//! Face `f` of a tetrahedron is the face opposite vertex `f`. A gluing of
//! `(t, f)` to `(t', f')` carries a permutation `σ` of the vertex labels with
//! `σ(f) = f'`.

mod assemble;
mod moves;
mod perm;
mod signature;
mod skeleton;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use assemble::Assembler;
pub use moves::{barycentric_subdivide, fill_three_faces, layer_in_place, layer_on_boundary_edge, subdivided_half_edge};
pub use perm::{Perm, S4};
pub use signature::{canonical_signature, parse_signature};
pub use skeleton::{
    boundary_surface, edge_embeddings, orientation, same_edge, validate, vertex_link, BoundaryComponent, BoundarySurface, EdgeRef, LinkKind,
    Skeleton, SkeletonReport,
};

/// Vertex pairs of the six edges, in the order used for edge indices.
pub const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[inline]
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {a}{b}"),
    }
}

/// The two vertices other than `a` and `b`, in increasing order.
#[inline]
pub fn complement_pair(a: usize, b: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&x| x != a && x != b);
    (rest.next().expect("two left"), rest.next().expect("two left"))
}

/// The three vertices of face `f`, increasing.
#[inline]
pub fn face_vertices(f: usize) -> [usize; 3] {
    match f {
        0 => [1, 2, 3],
        1 => [0, 2, 3],
        2 => [0, 1, 3],
        3 => [0, 1, 2],
        _ => panic!("face index {f}"),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriError {
    #[error("tetrahedron {0} does not exist")]
    NoSuchTet(usize),
    #[error("face ({0}, {1}) would be glued to itself")]
    SelfGluing(usize, usize),
    #[error("permutation {perm} does not send face {from} to face {to}")]
    FaceMismatch { from: usize, to: usize, perm: Perm },
    #[error("face ({0}, {1}) is already glued")]
    AlreadyGlued(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("triangulation is disconnected")]
    Disconnected,
    #[error("bad signature: {0}")]
    BadSignature(String),
    #[error("edge is not a boundary edge with two distinct boundary faces")]
    NotLayerable,
    #[error("vertex does not have exactly three boundary faces forming a disc")]
    NotFillable,
    #[error("assembly: {0}")]
    Assembly(String),
    #[error("invalid edge reference ({0}, {1}, {2})")]
    BadEdge(usize, usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub face: usize,
    pub perm: Perm,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Triangulation {
    glue: Vec<[Option<Gluing>; 4]>,
}

impl Triangulation {
    pub fn new(tets: usize) -> Triangulation {
        Triangulation { glue: vec![[None; 4]; tets] }
    }

    pub fn size(&self) -> usize {
        self.glue.len()
    }

    pub fn add_tet(&mut self) -> usize {
        self.glue.push([None; 4]);
        self.glue.len() - 1
    }

    #[inline]
    pub fn gluing(&self, t: usize, f: usize) -> Option<Gluing> {
        self.glue[t][f]
    }

    #[inline]
    pub fn gluings_of(&self, t: usize) -> &[Option<Gluing>; 4] {
        &self.glue[t]
    }

    /// Glues `(t, f)` to `(t2, perm(f))`, recording both directions.
    pub fn glue(&mut self, t: usize, f: usize, t2: usize, perm: Perm) -> Result<(), TriError> {
        let n = self.size();
        for x in [t, t2] {
            if x >= n {
                return Err(TriError::NoSuchTet(x));
            }
        }
        let f2 = perm.apply(f);
        if t == t2 && f == f2 {
            return Err(TriError::SelfGluing(t, f));
        }
        if self.glue[t][f].is_some() {
            return Err(TriError::AlreadyGlued(t, f));
        }
        if self.glue[t2][f2].is_some() {
            return Err(TriError::AlreadyGlued(t2, f2));
        }
        self.glue[t][f] = Some(Gluing { tet: t2, face: f2, perm });
        self.glue[t2][f2] = Some(Gluing { tet: t, face: f, perm: perm.inverse() });
        Ok(())
    }

    pub fn unglue(&mut self, t: usize, f: usize) {
        if let Some(g) = self.glue[t][f].take() {
            self.glue[g.tet][g.face] = None;
        }
    }

    pub fn is_closed(&self) -> bool {
        self.glue.iter().all(|g| g.iter().all(Option::is_some))
    }

    pub fn boundary_faces(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, g) in self.glue.iter().enumerate() {
            for (f, x) in g.iter().enumerate() {
                if x.is_none() {
                    out.push((t, f));
                }
            }
        }
        out
    }

    /// Appends a disjoint copy of `other`, returning the index offset.
    pub fn append(&mut self, other: &Triangulation) -> usize {
        let off = self.size();
        for g in &other.glue {
            self.glue.push(g.map(|x| x.map(|y| Gluing { tet: y.tet + off, ..y })));
        }
        off
    }

    pub fn is_connected(&self) -> bool {
        let n = self.size();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(t) = stack.pop() {
            for g in self.glue[t].iter().flatten() {
                if !seen[g.tet] {
                    seen[g.tet] = true;
                    count += 1;
                    stack.push(g.tet);
                }
            }
        }
        count == n
    }

    /// Renames tetrahedron `t` to `tet_map[t]` and its vertex `v` to `vertex_maps[t](v)`.
    pub fn relabel(&self, tet_map: &[usize], vertex_maps: &[Perm]) -> Triangulation {
        let mut out = Triangulation::new(self.size());
        for (t, g) in self.glue.iter().enumerate() {
            let rho = vertex_maps[t];
            for (f, x) in g.iter().enumerate() {
                if let Some(x) = x {
                    let rho2 = vertex_maps[x.tet];
                    out.glue[tet_map[t]][rho.apply(f)] = Some(Gluing {
                        tet: tet_map[x.tet],
                        face: rho2.apply(x.face),
                        perm: rho2.compose(x.perm).compose(rho.inverse()),
                    });
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "tri {}", self.size())?;
        for (t, g) in self.glue.iter().enumerate() {
            for (f, x) in g.iter().enumerate() {
                if let Some(x) = x {
                    writeln!(out, "{} {} : {} {} {}", t, f, x.tet, x.face, x.perm)?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Triangulation {
    type Err = TriError;

    fn from_str(text: &str) -> Result<Triangulation, TriError> {
        let err = |line: usize, msg: &str| TriError::Parse { line, msg: msg.to_string() };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
        let n: usize = header
            .strip_prefix("tri ")
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| err(hline, "expected \"tri <tet_count>\""))?;
        let mut raw: Vec<[Option<(Gluing, usize)>; 4]> = vec![[None; 4]; n];
        for (ln, line) in lines {
            let (lhs, rhs) = line.split_once(':').ok_or_else(|| err(ln, "missing ':'"))?;
            let l: Vec<&str> = lhs.split_whitespace().collect();
            let r: Vec<&str> = rhs.split_whitespace().collect();
            if l.len() != 2 || r.len() != 3 {
                return Err(err(ln, "expected \"<t> <f> : <t'> <f'> <perm>\""));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| err(ln, &format!("bad integer {s:?}")));
            let (t, f, t2, f2) = (num(l[0])?, num(l[1])?, num(r[0])?, num(r[1])?);
            if t >= n || t2 >= n {
                return Err(err(ln, "tetrahedron index out of range"));
            }
            if f > 3 || f2 > 3 {
                return Err(err(ln, "face index out of range"));
            }
            let digits: Vec<u8> = r[2].bytes().map(|b| b.wrapping_sub(b'0')).collect();
            let perm = <[u8; 4]>::try_from(digits.as_slice())
                .ok()
                .and_then(Perm::new)
                .ok_or_else(|| err(ln, &format!("bad permutation {:?}", r[2])))?;
            if perm.apply(f) != f2 {
                return Err(err(ln, "permutation does not map the face to its partner"));
            }
            if t == t2 && f == f2 {
                return Err(err(ln, "face glued to itself"));
            }
            if raw[t][f].is_some() {
                return Err(err(ln, "face listed twice"));
            }
            raw[t][f] = Some((Gluing { tet: t2, face: f2, perm }, ln));
        }
        let mut out = Triangulation::new(n);
        for t in 0..n {
            for f in 0..4 {
                if let Some((g, ln)) = raw[t][f] {
                    match raw[g.tet][g.face] {
                        Some((back, _)) if back.tet == t && back.face == f && back.perm == g.perm.inverse() => {}
                        _ => return Err(err(ln, "gluing is not matched by its inverse")),
                    }
                    out.glue[t][f] = Some(g);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let mut t = Triangulation::new(2);
        t.glue(0, 3, 1, Perm::new([1, 0, 2, 3]).unwrap()).unwrap();
        t.glue(0, 0, 0, Perm::new([1, 2, 3, 0]).unwrap()).unwrap();
        let text = t.to_text();
        assert!(text.starts_with("tri 2\n"));
        assert!(text.contains("0 0 : 0 1 1230"));
        assert_eq!(text.parse::<Triangulation>().unwrap(), t);
    }

    #[test]
    fn parser_rejects_broken_involution() {
        let e = "tri 2\n0 3 : 1 3 1023\n".parse::<Triangulation>().unwrap_err();
        assert_eq!(e, TriError::Parse { line: 2, msg: "gluing is not matched by its inverse".into() });
        let e = "tri 1\n0 0 : 0 0 0123\n".parse::<Triangulation>().unwrap_err();
        assert!(matches!(e, TriError::Parse { line: 2, .. }));
        let e = "tri 2\n0 3 : 1 2 0123\n".parse::<Triangulation>().unwrap_err();
        assert!(matches!(e, TriError::Parse { line: 2, .. }));
        assert!("tetra 2".parse::<Triangulation>().is_err());
    }

    #[test]
    fn glue_checks() {
        let mut t = Triangulation::new(1);
        assert_eq!(t.glue(0, 1, 0, Perm::IDENTITY), Err(TriError::SelfGluing(0, 1)));
        t.glue(0, 0, 0, Perm::new([1, 2, 3, 0]).unwrap()).unwrap();
        assert_eq!(t.glue(0, 1, 0, Perm::swap(1, 2)), Err(TriError::AlreadyGlued(0, 1)));
    }

    #[test]
    fn helpers() {
        for (i, &(a, b)) in EDGES.iter().enumerate() {
            assert_eq!(edge_index(a, b), i);
            assert_eq!(edge_index(b, a), i);
            let (c, d) = complement_pair(a, b);
            assert!(c < d && ![a, b].contains(&c) && ![a, b].contains(&d));
        }
        for f in 0..4 {
            assert!(!face_vertices(f).contains(&f));
        }
    }
}
