//! Seifert fibered spaces with boundary: a circle bundle over the base with
//! one extra boundary circle per exceptional fibre, each of which is then
//! filled by a layered solid torus.

use num_traits::ToPrimitive;

use super::lst::dehn_fill_in_place;
use super::{base_surface, circle_bundle, reduce_boundary_torus, BuildError, BuildReport, LabeledBoundary};
use crate::homology::{homology_with, AbelianGroup};
use crate::seifert::{expected_h1, upper_bound, SeifertData};
use crate::tricomplex::{validate, Triangulation};

/// The circle bundle over the base with `n` extra boundary circles, those
/// circles' tori made one-vertex and labelled (section, fibre), ready for
/// filling.
#[derive(Clone, Debug)]
pub struct SfsHost {
    pub triangulation: Triangulation,
    pub fillable: Vec<LabeledBoundary>,
    pub report: BuildReport,
}

pub fn sfs_host(orientable: bool, a: u32, b: u32, n: usize) -> Result<SfsHost, BuildError> {
    let mut report = BuildReport::new(usize::MAX);
    let base = base_surface(orientable, a, b + n as u32)?;
    let (mut t, boundaries) = circle_bundle(&base, !orientable)?;
    report.stage(format!("bundle over {} triangles", base.size()), t.size());
    let mut fillable = Vec::with_capacity(n);
    for (i, fb) in boundaries.iter().take(n).enumerate() {
        let (reduced, lb, r) = reduce_boundary_torus(&t, fb)?;
        report.absorb(&format!("fibre {i} "), &r);
        fillable.push(lb);
        t = reduced;
    }
    Ok(SfsHost { triangulation: t, fillable, report })
}

/// Fills the host's labelled tori along the fibre slopes of `d`.
pub fn fill_host(host: &SfsHost, d: &SeifertData) -> Result<(Triangulation, BuildReport), BuildError> {
    if host.fillable.len() != d.fibres.len() {
        return Err(BuildError::Parameters(format!("host has {} fillable tori, data {} fibres", host.fillable.len(), d.fibres.len())));
    }
    let mut report = host.report.clone();
    report.budget = upper_bound(d).to_usize().unwrap_or(usize::MAX);
    let mut t = host.triangulation.clone();
    for (i, (fibre, lb)) in d.fibres.iter().zip(&host.fillable).enumerate() {
        let r = dehn_fill_in_place(&mut t, lb, fibre)?;
        report.absorb(&format!("fibre {i} {fibre} "), &r);
    }
    Ok((t, report))
}

pub fn build_sfs(d: &SeifertData) -> Result<(Triangulation, BuildReport), BuildError> {
    fill_host(&sfs_host(d.orientable_base, d.a, d.b, d.fibres.len())?, d)
}

/// Checks a built Seifert fibered space against its data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SfsCheck {
    pub valid: bool,
    pub orientable: bool,
    pub boundary_tori: usize,
    pub boundary_components: usize,
    pub h1: AbelianGroup,
    pub expected_h1: AbelianGroup,
}

impl SfsCheck {
    pub fn ok(&self, d: &SeifertData) -> bool {
        self.valid
            && self.orientable
            && self.boundary_components == d.b as usize
            && self.boundary_tori == d.b as usize
            && self.h1 == self.expected_h1
    }
}

pub fn verify_sfs(t: &Triangulation, d: &SeifertData) -> SfsCheck {
    let r = validate(t);
    let h1 = homology_with(t, &r.skeleton, 1);
    SfsCheck {
        valid: r.valid_manifold && r.connected_components == 1,
        orientable: r.orientable,
        boundary_tori: r.boundary_tori(),
        boundary_components: r.boundary_components.len(),
        h1,
        expected_h1: expected_h1(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::dehn_fill;

    fn run(text: &str) -> (Triangulation, BuildReport) {
        let d: SeifertData = text.parse().unwrap();
        let (t, r) = build_sfs(&d).unwrap();
        assert_eq!(t.size(), r.tets_used, "{text}");
        assert!(r.within_budget(), "{text}: {r}");
        let c = verify_sfs(&t, &d);
        assert!(c.ok(&d), "{text}: {c:?}");
        (t, r)
    }

    #[test]
    fn examples() {
        let (_, r) = run("sfs o a=0 b=1 fibres=2/1,3/1");
        assert!(r.tets_used <= 622);
        let (_, r) = run("sfs o a=0 b=2");
        assert!(r.tets_used <= 176);
        let (_, r) = run("sfs o a=0 b=1 fibres=3/1,3/1,3/1");
        assert!(r.tets_used <= 902);
    }

    #[test]
    fn assorted_bases() {
        for text in [
            "sfs o a=0 b=1",
            "sfs o a=0 b=1 fibres=5/2",
            "sfs o a=2 b=1 fibres=7/3",
            "sfs o a=4 b=2 fibres=2/1,5/3",
            "sfs n a=1 b=1",
            "sfs n a=1 b=1 fibres=2/1",
            "sfs n a=2 b=2 fibres=3/2,4/1",
            "sfs n a=3 b=1 fibres=12/5,11/7,2/1",
            "sfs n a=5 b=1 fibres=9/4",
        ] {
            run(text);
        }
    }

    #[test]
    fn filling_leaves_other_boundaries_alone() {
        let d: SeifertData = "sfs o a=0 b=2 fibres=3/1".parse().unwrap();
        let base = base_surface(true, 0, 3).unwrap();
        let (t, fbs) = circle_bundle(&base, false).unwrap();
        let (reduced, lb, _) = reduce_boundary_torus(&t, &fbs[0]).unwrap();
        let (filled, _) = dehn_fill(&reduced, &lb, &d.fibres[0]).unwrap();
        // Every boundary face of the untouched components stays free, with the same gluings around it.
        for fb in &fbs[1..] {
            for e in [fb.section, fb.fibres[0], fb.diagonals[0]] {
                assert_eq!(crate::tricomplex::edge_embeddings(&t, e), crate::tricomplex::edge_embeddings(&filled, e));
            }
        }
        for tet in 0..t.size() {
            for f in 0..4 {
                if let Some(g) = t.gluing(tet, f) {
                    assert_eq!(filled.gluing(tet, f), Some(g));
                }
            }
        }
    }

    #[test]
    fn thickened_torus_has_no_peripheral_kernel() {
        // The annulus base with one fillable circle is T²×I before filling.
        let host = sfs_host(true, 0, 1, 1).unwrap();
        let basis = host.fillable[0].peripheral_basis(&host.triangulation).unwrap();
        assert_eq!(
            crate::homology::peripheral_kernel(&host.triangulation, &basis),
            Err(crate::homology::HomologyError::KernelRank(0))
        );
    }
}
