//! Explicit constructions: layered solid tori and Dehn fillings, base
//! surfaces, circle bundles over them, and the Seifert fibered spaces
//! assembled from these pieces.

mod bundle;
mod cone;
mod grid;
mod lst;
mod sfs;
mod surfaces;
mod truncate;

use std::fmt;

use thiserror::Error;

pub use bundle::{circle_bundle, reduce_boundary_torus, FibredBoundary};
pub use cone::{cone_annulus_to_d2xi, simplicial_annulus};
pub use grid::{check_instance, grid_bases, grid_fibre_sets, grid_slopes, run_grid, BaseTally, GridSummary, GRID_MAX_BOUNDARY, GRID_MAX_FIBRES};
pub use lst::{dehn_fill, dehn_fill_in_place, standalone_lst};
pub use sfs::{build_sfs, fill_host, sfs_host, verify_sfs, SfsCheck, SfsHost};
pub use surfaces::base_surface;
pub use truncate::truncate_ideal;

use crate::farey::{FareyError, FareyTriangle, Slope};
use crate::homology::HomologyError;
use crate::surface::SurfaceError;
use crate::tricomplex::{edge_embeddings, face_vertices, same_edge, EdgeRef, Perm, TriError, Triangulation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error(transparent)]
    Tri(#[from] TriError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("not a labelled one-vertex torus: {0}")]
    Labels(String),
    #[error("slope {0} needs 0 < |q| < p")]
    SlopeRange(Slope),
    #[error("input is not an annulus")]
    NotAnnulus,
    #[error("annulus is not simplicial after two subdivisions")]
    NotSimplicial,
    #[error("ideal triangulation must be closed with surface vertex links")]
    NotIdeal,
    #[error("boundary reduction failed: {0}")]
    Reduction(String),
}

/// Tetrahedra spent per construction stage.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub tets_used: usize,
    pub budget: usize,
    pub stages: Vec<(String, usize)>,
}

impl BuildReport {
    pub fn new(budget: usize) -> BuildReport {
        BuildReport { tets_used: 0, budget, stages: Vec::new() }
    }

    pub fn stage(&mut self, name: impl Into<String>, tets: usize) {
        self.tets_used += tets;
        self.stages.push((name.into(), tets));
    }

    pub fn absorb(&mut self, prefix: &str, other: &BuildReport) {
        for (name, k) in &other.stages {
            self.stage(format!("{prefix}{name}"), *k);
        }
    }

    pub fn within_budget(&self) -> bool {
        self.tets_used <= self.budget
    }
}

impl fmt::Display for BuildReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, k) in &self.stages {
            writeln!(f, "stage {name}: {k} tets")?;
        }
        writeln!(f, "tets_used {}", self.tets_used)?;
        write!(f, "budget {}", self.budget)
    }
}

/// Three boundary edges forming a one-vertex torus, with `mu` and `lambda`
/// the basis; `diag` has slope `±1` in that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledBoundary {
    pub mu: EdgeRef,
    pub lambda: EdgeRef,
    pub diag: EdgeRef,
    pub diag_slope: Slope,
}

/// A free face `(tet, f)` containing some embedding of `e`.
fn boundary_faces_along(t: &Triangulation, e: EdgeRef) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in edge_embeddings(t, e) {
        for f in (0..4).filter(|&f| f != x.a && f != x.b) {
            if t.gluing(x.tet, f).is_none() && !out.contains(&(x.tet, f)) {
                out.push((x.tet, f));
            }
        }
    }
    out
}

/// Which of `labels` each edge of the free face is, as `(label, sign)` per
/// local edge `v1v2, v0v2, v0v1` of the sorted face vertices.
fn face_labels(t: &Triangulation, (tet, f): (usize, usize), labels: &[EdgeRef]) -> Option<[(usize, i64); 3]> {
    let [v0, v1, v2] = face_vertices(f);
    let mut out = [(0, 0); 3];
    for (slot, (x, y)) in [(v1, v2), (v0, v2), (v0, v1)].into_iter().enumerate() {
        let e = EdgeRef::new(tet, x, y);
        out[slot] = labels.iter().enumerate().find_map(|(i, &l)| same_edge(t, l, e).map(|s| (i, s)))?;
    }
    Some(out)
}

impl LabeledBoundary {
    /// Checks that the three edges are distinct boundary edge classes
    /// spanning both triangles of a one-vertex torus, and records the
    /// slope of `diag`.
    pub fn new(t: &Triangulation, mu: EdgeRef, lambda: EdgeRef, diag: EdgeRef) -> Result<LabeledBoundary, BuildError> {
        for e in [mu, lambda, diag] {
            e.check(t)?;
        }
        let labels = [mu, lambda, diag];
        for i in 0..3 {
            for j in i + 1..3 {
                if same_edge(t, labels[i], labels[j]).is_some() {
                    return Err(BuildError::Labels("labelled edges coincide".into()));
                }
            }
        }
        let faces = boundary_faces_along(t, mu);
        if faces.len() != 2 {
            return Err(BuildError::Labels(format!("mu borders {} boundary faces", faces.len())));
        }
        let mut slope = None;
        for &face in &faces {
            let fl = face_labels(t, face, &labels).ok_or_else(|| BuildError::Labels("face edge unlabelled".into()))?;
            let mut coeff = [0i64; 3];
            let signs = [1, -1, 1];
            for (slot, &(i, s)) in fl.iter().enumerate() {
                coeff[i] += signs[slot] * s;
            }
            if coeff.iter().any(|c| c.abs() != 1) {
                return Err(BuildError::Labels("face does not carry each label once".into()));
            }
            // c_mu·mu + c_l·lambda + c_d·diag = 0.
            let s = Slope::new(-coeff[1] * coeff[2], -coeff[0] * coeff[2])?;
            if slope.as_ref().is_some_and(|x| x != &s) {
                return Err(BuildError::Labels("faces disagree".into()));
            }
            slope = Some(s);
        }
        Ok(LabeledBoundary { mu, lambda, diag, diag_slope: slope.expect("two faces") })
    }

    /// The edges with their slopes `0`, `∞`, `±1`.
    pub fn ledger(&self) -> [(EdgeRef, Slope); 3] {
        [(self.mu, Slope::zero()), (self.lambda, Slope::infinity()), (self.diag, self.diag_slope.clone())]
    }

    pub fn triangle(&self) -> FareyTriangle {
        let [a, b, c] = self.ledger().map(|x| x.1);
        FareyTriangle::new(a, b, c).expect("labelled torus is a Farey triangle")
    }

    /// Reverses `lambda`, which negates every slope.
    pub fn flip_lambda(&self, t: &Triangulation) -> Result<LabeledBoundary, BuildError> {
        LabeledBoundary::new(t, self.mu, self.lambda.reversed(), self.diag)
    }

    /// Index of the boundary component carrying these edges.
    pub fn component(&self, t: &Triangulation) -> Option<usize> {
        let bs = crate::tricomplex::boundary_surface(t);
        let (tet, f) = *boundary_faces_along(t, self.mu).first()?;
        let tri = *bs.triangle_of.get(&(tet, f))?;
        let comp = bs.surface.skeleton().component_of_triangle[tri];
        Some(comp)
    }

    pub fn peripheral_basis(&self, t: &Triangulation) -> Result<crate::homology::PeripheralBasis, BuildError> {
        let c = self.component(t).ok_or_else(|| BuildError::Labels("mu is not on the boundary".into()))?;
        Ok(crate::homology::PeripheralBasis::new(t, c, self.mu, self.lambda)?)
    }
}

/// One tetrahedron with face 3 glued to face 0: a solid torus whose
/// boundary edges `01`, `02`, `03` meet a meridian disc 1, 2 and 3 times.
pub fn one_tet_solid_torus() -> (Triangulation, LabeledBoundary) {
    let mut t = Triangulation::new(1);
    t.glue(0, 3, 0, Perm::new([1, 2, 3, 0]).expect("perm")).expect("fresh faces");
    let lb = LabeledBoundary::new(&t, EdgeRef::new(0, 0, 1), EdgeRef::new(0, 0, 2), EdgeRef::new(0, 0, 3))
        .expect("one-vertex torus");
    (t, lb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{homology, peripheral_kernel, AbelianGroup};
    use crate::tricomplex::validate;

    #[test]
    fn one_tet_solid_torus_is_a_solid_torus() {
        let (t, lb) = one_tet_solid_torus();
        assert_eq!(t.size(), 1);
        let r = validate(&t);
        assert!(r.is_solid_torus_candidate());
        assert_eq!(homology(&t, 1), AbelianGroup::free(1));
        assert_eq!(lb.diag_slope, Slope::of(1, 1));
        let b = lb.peripheral_basis(&t).unwrap();
        // The meridian is 2·mu − lambda: it crosses mu once, lambda twice, diag three times.
        let m = peripheral_kernel(&t, &b).unwrap();
        assert_eq!(m, Slope::of(-1, 2));
        for (e, s) in lb.ledger() {
            let w = m.det(&s).magnitude().clone();
            let expected = match (e.a, e.b) {
                (0, 1) => 1,
                (0, 2) => 2,
                _ => 3,
            };
            assert_eq!(w, num_bigint::BigUint::from(expected as u32));
        }
    }

    #[test]
    fn labels_are_checked() {
        let (t, _) = one_tet_solid_torus();
        assert!(LabeledBoundary::new(&t, EdgeRef::new(0, 0, 1), EdgeRef::new(0, 1, 2), EdgeRef::new(0, 0, 3)).is_err());
        let ball = Triangulation::new(1);
        assert!(LabeledBoundary::new(&ball, EdgeRef::new(0, 0, 1), EdgeRef::new(0, 0, 2), EdgeRef::new(0, 0, 3)).is_err());
    }

    #[test]
    fn report_format() {
        let mut r = BuildReport::new(10);
        r.stage("layer", 3);
        r.stage("fold", 0);
        assert_eq!(r.to_string(), "stage layer: 3 tets\nstage fold: 0 tets\ntets_used 3\nbudget 10");
        assert!(r.within_budget());
    }
}
