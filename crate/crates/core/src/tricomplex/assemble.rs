use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use super::{face_vertices, Perm, Triangulation, TriError};

/// Builds a triangulation from tetrahedra whose vertices carry labels; faces
/// are located by their label sets. Labels must be distinct within a tetrahedron.
#[derive(Clone, Debug)]
pub struct Assembler<L> {
    tri: Triangulation,
    labels: Vec<[L; 4]>,
    faces: HashMap<[L; 3], Vec<(usize, usize)>>,
}

impl<L: Copy + Ord + Hash + Debug> Default for Assembler<L> {
    fn default() -> Self {
        Assembler { tri: Triangulation::new(0), labels: Vec::new(), faces: HashMap::new() }
    }
}

impl<L: Copy + Ord + Hash + Debug> Assembler<L> {
    pub fn new() -> Assembler<L> {
        Assembler::default()
    }

    fn key(mut x: [L; 3]) -> [L; 3] {
        x.sort_unstable();
        x
    }

    pub fn add_tet(&mut self, labels: [L; 4]) -> usize {
        let t = self.tri.add_tet();
        for f in 0..4 {
            let k = Self::key(face_vertices(f).map(|v| labels[v]));
            self.faces.entry(k).or_default().push((t, f));
        }
        self.labels.push(labels);
        t
    }

    pub fn labels(&self, t: usize) -> [L; 4] {
        self.labels[t]
    }

    pub fn size(&self) -> usize {
        self.tri.size()
    }

    /// The unique face carrying exactly these labels.
    pub fn find_face(&self, labels: [L; 3]) -> Option<(usize, usize)> {
        match self.faces.get(&Self::key(labels)).map(Vec::as_slice) {
            Some([x]) => Some(*x),
            _ => None,
        }
    }

    /// Glues the face labelled `from` to the face labelled `to`, sending `from[i]` to `to[i]`.
    pub fn glue_labelled(&mut self, from: [L; 3], to: [L; 3]) -> Result<(), TriError> {
        let missing = || TriError::Assembly(format!("no unique face {from:?} / {to:?}"));
        let (t1, f1) = self.find_face(from).ok_or_else(missing)?;
        let (t2, f2) = self.find_face(to).ok_or_else(missing)?;
        self.glue_faces(t1, f1, t2, f2, from, to)
    }

    fn glue_faces(&mut self, t1: usize, f1: usize, t2: usize, f2: usize, from: [L; 3], to: [L; 3]) -> Result<(), TriError> {
        let (l1, l2) = (self.labels[t1], self.labels[t2]);
        let mut images = [0u8; 4];
        for i in 0..4 {
            images[i] = if i == f1 {
                f2 as u8
            } else {
                let j = from.iter().position(|&x| x == l1[i]).expect("label on face");
                l2.iter().position(|&x| x == to[j]).expect("label on face") as u8
            };
        }
        let perm = Perm::new(images).expect("labels distinct");
        self.tri.glue(t1, f1, t2, perm)
    }

    /// Glues every pair of faces that carry the same label set.
    pub fn glue_matching(&mut self) -> Result<(), TriError> {
        let mut pairs: Vec<([L; 3], (usize, usize), (usize, usize))> = self
            .faces
            .iter()
            .filter_map(|(k, v)| match v.as_slice() {
                [a, b] => Some((*k, *a, *b)),
                _ => None,
            })
            .collect();
        pairs.sort_unstable_by_key(|x| (x.1, x.2));
        for (k, (t1, f1), (t2, f2)) in pairs {
            if self.tri.gluing(t1, f1).is_none() && self.tri.gluing(t2, f2).is_none() {
                self.glue_faces(t1, f1, t2, f2, k, k)?;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> (Triangulation, Vec<[L; 4]>) {
        (self.tri, self.labels)
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }
}

impl Triangulation {
    /// A triangulation from labelled simplices glued along shared faces.
    pub fn from_simplices(simplices: &[[usize; 4]]) -> Result<Triangulation, TriError> {
        let mut asm = Assembler::new();
        for s in simplices {
            asm.add_tet(*s);
        }
        asm.glue_matching()?;
        Ok(asm.finish().0)
    }
}

#[cfg(test)]
mod tests {
    use crate::tricomplex::validate;

    use super::*;

    #[test]
    fn boundary_of_four_simplex_is_a_sphere() {
        let tets: Vec<[usize; 4]> = (0..5)
            .map(|skip| {
                let v: Vec<usize> = (0..5).filter(|&x| x != skip).collect();
                [v[0], v[1], v[2], v[3]]
            })
            .collect();
        let t = Triangulation::from_simplices(&tets).unwrap();
        assert!(t.is_closed());
        let r = validate(&t);
        assert!(r.valid_manifold && r.orientable);
        assert_eq!(r.euler_characteristic, 0);
    }
}
