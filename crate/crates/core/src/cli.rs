//! Command-line front end. Every verb writes a plain-text report ending in
//! one machine-readable line `RESULT ok|fail <verb> key=value ...`; exit
//! status is 0 on success, 1 when a built or loaded object fails its
//! checks, 2 on bad input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::builders::{build_sfs, grid_bases, run_grid, standalone_lst, truncate_ideal, verify_sfs, GRID_MAX_BOUNDARY, GRID_MAX_FIBRES};
use crate::farey::{best_walk, continued_fraction, norm, Slope};
use crate::homology::{homology, homology_with, ideal_h1, peripheral_kernel, AbelianGroup};
use crate::seifert::{theorem_bound_report, upper_bound, SeifertData};
use crate::tricomplex::{barycentric_subdivide, validate, SkeletonReport, Triangulation};

/// Largest triangulation `subdivide` will produce.
const MAX_SUBDIVIDED: usize = 2_000_000;

#[derive(Debug, Parser)]
#[command(name = "sfstri", version, about = "Triangulations of bounded Seifert fibered spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continued fraction and norm of a slope q/p.
    Norm { slope: String },
    /// Shortest Farey walk from a base triangle to a slope q/p.
    Walk { slope: String },
    /// Layered solid torus with meridian p·mu + q·lambda.
    Lst {
        p: i64,
        q: i64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Builds a Seifert fibered space, e.g. "sfs o a=0 b=1 fibres=2/1,3/1".
    Build {
        data: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Validates a triangulation file, optionally against Seifert data.
    Verify {
        file: PathBuf,
        #[arg(long)]
        sfs: Option<String>,
    },
    /// Integer homology in degree k (default 1).
    Homology { file: PathBuf, k: Option<usize> },
    /// n barycentric subdivisions (default 1), checking invariance.
    Subdivide {
        file: PathBuf,
        n: Option<u32>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Truncates an ideal triangulation to a material one.
    Truncate {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Bounds for Seifert data without building.
    Bound { data: String },
    /// Builds and checks every instance of the small-data grid.
    Grid {
        pmax: i64,
        #[arg(allow_negative_numbers = true)]
        chi_min: i64,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// A finished report: text plus exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
}

/// Parses `argv` (including the program name) and runs the verb.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli.command),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            Outcome { code, text: e.to_string() }
        }
    }
}

pub fn execute(cmd: &Command) -> Outcome {
    let mut out = String::new();
    let verb = verb_name(cmd);
    match dispatch(cmd, &mut out) {
        Ok(fields) => {
            let _ = writeln!(out, "RESULT ok {verb}{fields}");
            Outcome { code: 0, text: out }
        }
        Err(e) => {
            let _ = writeln!(out, "{e}");
            let kind = match e {
                CliError::Check(_) => "check",
                CliError::Input(_) => "input",
            };
            let _ = writeln!(out, "RESULT fail {verb} error={kind}");
            Outcome { code: e.exit_code(), text: out }
        }
    }
}

fn verb_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Norm { .. } => "norm",
        Command::Walk { .. } => "walk",
        Command::Lst { .. } => "lst",
        Command::Build { .. } => "build",
        Command::Verify { .. } => "verify",
        Command::Homology { .. } => "homology",
        Command::Subdivide { .. } => "subdivide",
        Command::Truncate { .. } => "truncate",
        Command::Bound { .. } => "bound",
        Command::Grid { .. } => "grid",
    }
}

fn read_triangulation(path: &Path) -> Result<Triangulation, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    text.parse().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_triangulation(path: &Path, t: &Triangulation, out: &mut String) -> Result<(), CliError> {
    fs::write(path, t.to_text()).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let _ = writeln!(out, "wrote {}", path.display());
    Ok(())
}

fn parse_data(text: &str) -> Result<SeifertData, CliError> {
    text.parse().map_err(input)
}

fn summary(r: &SkeletonReport, out: &mut String) {
    let _ = writeln!(out, "valid_manifold {}", r.valid_manifold);
    let _ = writeln!(out, "orientable {}", r.orientable);
    let _ = writeln!(out, "connected_components {}", r.connected_components);
    let _ = writeln!(out, "euler_characteristic {}", r.euler_characteristic);
    for (i, c) in r.boundary_components.iter().enumerate() {
        let kind = if c.orientable { "orientable" } else { "nonorientable" };
        let _ = writeln!(out, "boundary {i}: {kind} genus {} ({} triangles)", c.genus(), c.triangles.len());
    }
}

fn boundary_shape(r: &SkeletonReport) -> Vec<(bool, u64)> {
    let mut v: Vec<(bool, u64)> = r.boundary_components.iter().map(|c| (c.orientable, c.genus())).collect();
    v.sort_unstable();
    v
}

fn dispatch(cmd: &Command, out: &mut String) -> Result<String, CliError> {
    match cmd {
        Command::Norm { slope } => {
            let s: Slope = slope.parse().map_err(input)?;
            let cf = continued_fraction(&s).map_err(input)?;
            let n = norm(&s).map_err(input)?;
            let _ = writeln!(out, "{cf} norm={n}");
            Ok(format!(" slope={s} norm={n}"))
        }
        Command::Walk { slope } => {
            let s: Slope = slope.parse().map_err(input)?;
            let walk = best_walk(&s).map_err(input)?;
            for (i, tri) in walk.iter().enumerate() {
                let _ = writeln!(out, "step {i}: {tri}");
            }
            let _ = writeln!(out, "length {}", walk.len() - 1);
            Ok(format!(" slope={s} length={}", walk.len() - 1))
        }
        Command::Lst { p, q, out: path } => {
            let s = Slope::new(*q, *p).map_err(input)?;
            let (t, lb, report) = standalone_lst(&s).map_err(input)?;
            let _ = writeln!(out, "{report}");
            let r = validate(&t);
            summary(&r, out);
            let kernel = lb.peripheral_basis(&t).and_then(|b| Ok(peripheral_kernel(&t, &b)?)).map_err(|e| CliError::Check(e.to_string()))?;
            let _ = writeln!(out, "peripheral_kernel {kernel}");
            let h1 = homology_with(&t, &r.skeleton, 1);
            let _ = writeln!(out, "h1 {h1}");
            if !r.is_solid_torus_candidate() {
                return Err(CliError::Check("not a solid torus".into()));
            }
            if h1 != AbelianGroup::free(1) {
                return Err(CliError::Check(format!("H1 is {h1}, not Z")));
            }
            if kernel != s && kernel != s.neg() {
                return Err(CliError::Check(format!("meridian {kernel} instead of {s}")));
            }
            if !report.within_budget() {
                return Err(CliError::Check(format!("budget: {} > {}", report.tets_used, report.budget)));
            }
            if let Some(path) = path {
                write_triangulation(path, &t, out)?;
            }
            Ok(format!(" p={p} q={q} tets={} budget={}", t.size(), report.budget))
        }
        Command::Build { data, out: path } => {
            let d = parse_data(data)?;
            let (t, report) = build_sfs(&d).map_err(input)?;
            let _ = writeln!(out, "{report}");
            let bound = upper_bound(&d);
            let _ = writeln!(out, "upper_bound {bound}");
            let c = verify_sfs(&t, &d);
            let _ = writeln!(out, "h1 {}", c.h1);
            let _ = writeln!(out, "expected_h1 {}", c.expected_h1);
            let _ = write!(out, "{}", theorem_bound_report(&d).with_achieved(t.size()));
            if bound.to_usize().map_or(true, |b| t.size() > b) {
                return Err(CliError::Check(format!("budget: {} > {bound}", t.size())));
            }
            if !c.ok(&d) {
                return Err(CliError::Check(format!("build does not verify: {c:?}")));
            }
            if let Some(path) = path {
                write_triangulation(path, &t, out)?;
            }
            Ok(format!(" tets={} bound={bound} h1={}", t.size(), c.h1.to_string().replace(' ', "")))
        }
        Command::Verify { file, sfs } => {
            let t = read_triangulation(file)?;
            let r = validate(&t);
            let _ = writeln!(out, "tets {}", t.size());
            summary(&r, out);
            let h1 = homology_with(&t, &r.skeleton, 1);
            let _ = writeln!(out, "h1 {h1}");
            if !r.valid_manifold {
                return Err(CliError::Check("valid_manifold".into()));
            }
            if let Some(data) = sfs {
                let d = parse_data(data)?;
                let c = verify_sfs(&t, &d);
                let _ = writeln!(out, "expected_h1 {}", c.expected_h1);
                if !c.ok(&d) {
                    return Err(CliError::Check(format!("does not match {d}: {c:?}")));
                }
            }
            Ok(format!(" tets={} boundary={} h1={}", t.size(), r.boundary_components.len(), h1.to_string().replace(' ', "")))
        }
        Command::Homology { file, k } => {
            let t = read_triangulation(file)?;
            let k = k.unwrap_or(1);
            if k > 3 {
                return Err(CliError::Input(format!("degree {k} out of range 0..=3")));
            }
            let h = homology(&t, k);
            let _ = writeln!(out, "H{k} {h}");
            Ok(format!(" k={k} h={}", h.to_string().replace(' ', "")))
        }
        Command::Subdivide { file, n, out: path } => {
            let t = read_triangulation(file)?;
            let n = n.unwrap_or(1);
            let target = 24usize.checked_pow(n).and_then(|f| f.checked_mul(t.size()));
            if target.map_or(true, |x| x > MAX_SUBDIVIDED) {
                return Err(CliError::Input(format!("{n} subdivisions of {} tets exceed {MAX_SUBDIVIDED} tets", t.size())));
            }
            let before = validate(&t);
            let h_before: Vec<AbelianGroup> = (0..=3).map(|k| homology_with(&t, &before.skeleton, k)).collect();
            let mut s = t.clone();
            for _ in 0..n {
                s = barycentric_subdivide(&s);
            }
            let after = validate(&s);
            let h_after: Vec<AbelianGroup> = (0..=3).map(|k| homology_with(&s, &after.skeleton, k)).collect();
            let _ = writeln!(out, "tets {} -> {}", t.size(), s.size());
            let checks = [
                ("tets", s.size() == target.expect("checked")),
                ("euler_characteristic", before.euler_characteristic == after.euler_characteristic),
                ("orientable", before.orientable == after.orientable),
                ("valid_manifold", before.valid_manifold == after.valid_manifold),
                ("boundary", boundary_shape(&before) == boundary_shape(&after)),
                ("homology", h_before == h_after),
            ];
            for (name, ok) in checks {
                let _ = writeln!(out, "invariant {name} {}", if ok { "preserved" } else { "CHANGED" });
            }
            if let Some((name, _)) = checks.iter().find(|c| !c.1) {
                return Err(CliError::Check(format!("subdivision changed {name}")));
            }
            if let Some(path) = path {
                write_triangulation(path, &s, out)?;
            }
            Ok(format!(" n={n} tets={}", s.size()))
        }
        Command::Truncate { file, out: path } => {
            let t = read_triangulation(file)?;
            let (m, report) = truncate_ideal(&t).map_err(input)?;
            let _ = writeln!(out, "{report}");
            let r = validate(&m);
            summary(&r, out);
            let cusps = crate::tricomplex::Skeleton::new(&t).vertices;
            if !r.valid_manifold {
                return Err(CliError::Check("valid_manifold".into()));
            }
            if r.boundary_components.len() != cusps {
                return Err(CliError::Check(format!("{} boundary components for {cusps} ideal vertices", r.boundary_components.len())));
            }
            if !report.within_budget() {
                return Err(CliError::Check(format!("budget: {} > {}", report.tets_used, report.budget)));
            }
            if let Ok(h) = ideal_h1(&t) {
                let got = homology_with(&m, &r.skeleton, 1);
                let _ = writeln!(out, "h1 {got}");
                if got != h {
                    return Err(CliError::Check(format!("H1 {got}, ideal complex gives {h}")));
                }
            }
            if let Some(path) = path {
                write_triangulation(path, &m, out)?;
            }
            Ok(format!(" tets={} boundary={}", m.size(), r.boundary_components.len()))
        }
        Command::Bound { data } => {
            let d = parse_data(data)?;
            let b = theorem_bound_report(&d);
            let _ = write!(out, "{b}");
            Ok(format!(" upper_bound={} proxy={}", b.upper_bound, b.proxy))
        }
        Command::Grid { pmax, chi_min } => {
            if *pmax < 2 || *chi_min > 1 {
                return Err(CliError::Input("grid needs pmax ≥ 2 and chi_min ≤ 1".into()));
            }
            let _ = writeln!(out, "bases {} b≤{GRID_MAX_BOUNDARY} fibres≤{GRID_MAX_FIBRES} p≤{pmax}", grid_bases(*chi_min).len());
            let s = run_grid(*pmax, *chi_min);
            for (&(o, a, b), tally) in &s.bases {
                let chi = 2 - a as i64 - b as i64;
                let mark = if tally.passed == tally.instances { "pass" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "{mark} {} a={a} b={b} chi={chi} instances={} passed={} max_tets={}",
                    if o { 'o' } else { 'n' },
                    tally.instances,
                    tally.passed,
                    tally.max_tets
                );
            }
            for (d, why) in s.failures.iter().take(20) {
                let _ = writeln!(out, "failure {d}: {why}");
            }
            let fields = format!(" instances={} passed={} failed={}", s.instances(), s.passed(), s.failures.len());
            if !s.ok() {
                return Err(CliError::Check(format!("{} grid instances failed", s.failures.len())));
            }
            Ok(fields)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("sfstri").chain(args.iter().copied()))
    }

    #[test]
    fn norm_example() {
        let o = run_args(&["norm", "2/5"]);
        assert_eq!(o.code, 0);
        assert!(o.text.starts_with("[0;2,2] norm=4\n"), "{}", o.text);
        assert!(o.text.ends_with("RESULT ok norm slope=2/5 norm=4\n"));
    }

    #[test]
    fn bound_example() {
        let o = run_args(&["bound", "sfs o a=0 b=1 fibres=2/1,3/1"]);
        assert_eq!(o.code, 0);
        assert!(o.text.contains("RESULT ok bound upper_bound=622 proxy=7"), "{}", o.text);
    }

    #[test]
    fn input_errors_exit_2() {
        assert_eq!(run_args(&["norm", "x"]).code, 2);
        assert_eq!(run_args(&["bound", "sfs o a=0 b=0"]).code, 2);
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        let o = run_args(&["verify", "/nonexistent/file.tri"]);
        assert_eq!(o.code, 2);
        assert!(o.text.contains("RESULT fail verify error=input"));
    }

    #[test]
    fn walk_and_lst() {
        let o = run_args(&["walk", "2/5"]);
        assert!(o.text.contains("length 3"), "{}", o.text);
        let o = run_args(&["lst", "5", "2"]);
        assert_eq!(o.code, 0, "{}", o.text);
        assert!(o.text.contains("peripheral_kernel"));
    }
}
