//! The exhaustive family of small Seifert data: every base with
//! `χ ≥ χmin` and at most three boundary circles, with up to three
//! exceptional fibres of multiplicity at most `pmax`. Each instance is built
//! and checked against its bound and predicted homology.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{fill_host, sfs_host, verify_sfs};
use crate::farey::Slope;
use crate::seifert::{predicted_free_rank, upper_bound, SeifertData};

pub const GRID_MAX_BOUNDARY: u32 = 3;
pub const GRID_MAX_FIBRES: usize = 3;

/// Bases `(orientable, a, b)` with `χ = 2 − a − b ≥ chi_min` and `1 ≤ b ≤ 3`.
pub fn grid_bases(chi_min: i64) -> Vec<(bool, u32, u32)> {
    let mut out = Vec::new();
    for orientable in [true, false] {
        for b in 1..=GRID_MAX_BOUNDARY {
            let mut a = if orientable { 0 } else { 1 };
            while 2 - a as i64 - b as i64 >= chi_min {
                out.push((orientable, a, b));
                a += if orientable { 2 } else { 1 };
            }
        }
    }
    out
}

/// All normalized fibres `q/p` with `2 ≤ p ≤ pmax`, in `(p, q)` order.
pub fn grid_slopes(pmax: i64) -> Vec<Slope> {
    (2..=pmax).flat_map(|p| (1..p).filter(move |q| q.gcd(&p) == 1).map(move |q| Slope::of(q, p))).collect()
}

/// Sorted multisets of at most `k` slopes.
pub fn grid_fibre_sets(pmax: i64, k: usize) -> Vec<Vec<Slope>> {
    let slopes = grid_slopes(pmax);
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(Vec<Slope>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..k {
        let mut next = Vec::new();
        for (set, from) in &frontier {
            for (i, s) in slopes.iter().enumerate().skip(*from) {
                let mut grown = set.clone();
                grown.push(s.clone());
                out.push(grown.clone());
                next.push((grown, i));
            }
        }
        frontier = next;
    }
    out
}

/// Checks one build, naming the first violated property.
pub fn check_instance(d: &SeifertData, built: Result<(crate::tricomplex::Triangulation, super::BuildReport), super::BuildError>) -> Result<usize, String> {
    let (t, report) = built.map_err(|e| format!("build: {e}"))?;
    let bound = upper_bound(d).to_usize().unwrap_or(usize::MAX);
    if t.size() != report.tets_used {
        return Err(format!("report: {} tets reported, {} built", report.tets_used, t.size()));
    }
    if t.size() > bound {
        return Err(format!("budget: {} > {bound}", t.size()));
    }
    let c = verify_sfs(&t, d);
    if !c.valid {
        return Err("validate".into());
    }
    if !c.orientable {
        return Err("orientable".into());
    }
    if c.boundary_components != d.b as usize || c.boundary_tori != d.b as usize {
        return Err(format!("boundary: {} components, {} tori", c.boundary_components, c.boundary_tori));
    }
    if c.expected_h1.rank as u64 != predicted_free_rank(d) {
        return Err(format!("free rank: {} predicted, {} expected", predicted_free_rank(d), c.expected_h1.rank));
    }
    if c.h1 != c.expected_h1 {
        return Err(format!("homology: {} instead of {}", c.h1, c.expected_h1));
    }
    Ok(t.size())
}

/// Per-base tallies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BaseTally {
    pub instances: usize,
    pub passed: usize,
    pub max_tets: usize,
}

#[derive(Clone, Debug, Default)]
pub struct GridSummary {
    pub bases: BTreeMap<(bool, u32, u32), BaseTally>,
    pub failures: Vec<(SeifertData, String)>,
}

impl GridSummary {
    pub fn instances(&self) -> usize {
        self.bases.values().map(|t| t.instances).sum()
    }

    pub fn passed(&self) -> usize {
        self.bases.values().map(|t| t.passed).sum()
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.instances() > 0
    }
}

/// Builds and checks every instance. The bundle part of a build depends
/// only on the base and the number of fibres, so it is built once per pair
/// and filled for each fibre set.
pub fn run_grid(pmax: i64, chi_min: i64) -> GridSummary {
    let mut summary = GridSummary::default();
    let fibre_sets = grid_fibre_sets(pmax, GRID_MAX_FIBRES);
    for (orientable, a, b) in grid_bases(chi_min) {
        let tally = summary.bases.entry((orientable, a, b)).or_default();
        for n in 0..=GRID_MAX_FIBRES {
            let host = sfs_host(orientable, a, b, n);
            for fibres in fibre_sets.iter().filter(|f| f.len() == n) {
                let d = SeifertData::new(orientable, a, b, fibres.clone()).expect("grid data is normalized");
                tally.instances += 1;
                let built = match &host {
                    Ok(h) => fill_host(h, &d),
                    Err(e) => Err(e.clone()),
                };
                match check_instance(&d, built) {
                    Ok(tets) => {
                        tally.passed += 1;
                        tally.max_tets = tally.max_tets.max(tets);
                    }
                    Err(why) => summary.failures.push((d, why)),
                }
            }
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        let bases = grid_bases(-4);
        assert_eq!(bases.iter().filter(|b| b.0).count(), 8);
        assert_eq!(bases.iter().filter(|b| !b.0).count(), 12);
        // Σ φ(p) for 2 ≤ p ≤ 12.
        assert_eq!(grid_slopes(12).len(), 45);
        // 1 + 45 + C(46, 2) + C(47, 3).
        assert_eq!(grid_fibre_sets(12, 3).len(), 1 + 45 + 1035 + 16215);
    }

    #[test]
    fn small_grid_passes() {
        let s = run_grid(4, -1);
        assert!(s.ok(), "{:?}", &s.failures[..s.failures.len().min(5)]);
        assert_eq!(s.instances(), s.passed());
    }
}
