//! Every file a build verb writes must verify when read back.

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use sfstri::cli::run;
use sfstri::tricomplex::{vertex_link, Perm, Skeleton, Triangulation};

fn sfstri(args: &[&str]) -> sfstri::cli::Outcome {
    run(std::iter::once("sfstri").chain(args.iter().copied()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sfstri-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn last_line(text: &str) -> &str {
    text.lines().last().unwrap_or("")
}

#[test]
fn build_output_verifies() {
    for data in ["sfs o a=0 b=1 fibres=2/1,3/1", "sfs n a=1 b=2 fibres=5/2", "sfs o a=2 b=1"] {
        let path = scratch("build.tri");
        let p = path.to_str().unwrap();
        let o = sfstri(&["build", data, "--out", p]);
        assert_eq!(o.code, 0, "{}", o.text);
        assert!(last_line(&o.text).starts_with("RESULT ok build tets="));
        let v = sfstri(&["verify", p, "--sfs", data]);
        assert_eq!(v.code, 0, "{}", v.text);
        assert!(last_line(&v.text).starts_with("RESULT ok verify"));
    }
}

#[test]
fn lst_and_subdivide_round_trip() {
    let path = scratch("lst.tri");
    let p = path.to_str().unwrap();
    let o = sfstri(&["lst", "7", "3", "-o", p]);
    assert_eq!(o.code, 0, "{}", o.text);
    let v = sfstri(&["verify", p]);
    assert_eq!(v.code, 0, "{}", v.text);
    assert!(v.text.contains("h1 Z^1"));
    let sub = scratch("lst-sub.tri");
    let s = sfstri(&["subdivide", p, "1", "-o", sub.to_str().unwrap()]);
    assert_eq!(s.code, 0, "{}", s.text);
    assert!(!s.text.contains("CHANGED"));
    assert_eq!(sfstri(&["homology", sub.to_str().unwrap()]).code, 0);
}

/// A two-tetrahedron gluing with one torus vertex link, found by seeded search.
fn two_tet_cusped() -> Triangulation {
    let mut rng = StdRng::seed_from_u64(1);
    loop {
        let mut faces: Vec<(usize, usize)> = (0..2).flat_map(|t| (0..4).map(move |f| (t, f))).collect();
        faces.shuffle(&mut rng);
        let mut t = Triangulation::new(2);
        for pair in faces.chunks(2) {
            let ((a, f), (b, g)) = (pair[0], pair[1]);
            let options: Vec<Perm> = Perm::all().filter(|p| p.apply(f) == g && !p.is_even()).collect();
            t.glue(a, f, b, options[rng.gen_range(0..options.len())]).unwrap();
        }
        let s = Skeleton::new(&t);
        if t.is_connected() && s.edge_valid.iter().all(|&v| v) && s.vertices == 1 && vertex_link(&t, &s, 0).0.euler_characteristic() == 0 {
            return t;
        }
    }
}

#[test]
fn truncate_round_trip() {
    let path = scratch("cusped.tri");
    std::fs::write(&path, two_tet_cusped().to_text()).unwrap();
    let out = scratch("cusped-trunc.tri");
    let o = sfstri(&["truncate", path.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.text);
    assert!(o.text.contains("h1 "), "{}", o.text);
    let v = sfstri(&["verify", out.to_str().unwrap()]);
    assert_eq!(v.code, 0, "{}", v.text);
    assert!(last_line(&v.text).contains("boundary=1"));
}

#[test]
fn broken_file_is_an_input_error_with_a_line_number() {
    let path = scratch("broken.tri");
    std::fs::write(&path, "tri 2\n0 0 : 1 1 1032\n").unwrap();
    let o = sfstri(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.text.contains("line 2"), "{}", o.text);
    assert!(last_line(&o.text).starts_with("RESULT fail verify"));
}
