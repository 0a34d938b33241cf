mod common;

use std::process::{Command, Output};

use common::fixture;

fn tamecx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tamecx"))
        .args(args)
        .env_remove("TAMECX_FIELD")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = tamecx(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

const HEADER: &str = "degree,birth,death,multiplicity,diagonal\n";

#[test]
fn betti_of_a_merging_pair() {
    let out = stdout(&["betti", &path("merging_pair.filt")]);
    assert_eq!(out, format!("{HEADER}0,0,1,1,false\n0,0,inf,1,false\n"));
}

#[test]
fn betti_keeps_or_drops_the_diagonal() {
    let full = stdout(&["betti", &path("filled_triangle.filt")]);
    assert_eq!(
        full,
        format!("{HEADER}0,0,0,2,true\n0,0,inf,1,false\n1,0,1,1,false\n")
    );
    let min = stdout(&["betti", "--min", &path("filled_triangle.filt")]);
    assert_eq!(min, format!("{HEADER}0,0,inf,1,false\n1,0,1,1,false\n"));
}

#[test]
fn output_is_deterministic_and_field_independent_here() {
    for f in [
        "single_vertex.filt",
        "merging_pair.filt",
        "filled_triangle.filt",
    ] {
        let a = stdout(&["betti", &path(f)]);
        assert_eq!(a, stdout(&["betti", &path(f)]));
        assert_eq!(a, stdout(&["--field", "3", "betti", &path(f)]));
    }
}

#[test]
fn closing_zigzags_give_identical_output() {
    let x = stdout(&["zigzag", &path("closing_x.zz"), "--grid", "0,1,2,3"]);
    let y = stdout(&["zigzag", &path("closing_y.zz"), "--grid", "0,1,2,3"]);
    assert_eq!(x, y);
    assert_eq!(
        x,
        format!("{HEADER}0,0,1,1,false\n0,1,1,1,true\n1,2,3,1,false\n1,2,inf,1,false\n")
    );
    let bad = tamecx(&["zigzag", &path("closing_x.zz"), "--grid", "0,1"]);
    assert!(!bad.status.success());
}

#[test]
fn validate_reports_the_failing_degree() {
    let out = tamecx(&["validate", &path("square_nonzero.tame")]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("degree 0"), "{err}");
    assert!(!err.contains("panicked"));
    assert!(stdout(&["validate", &path("sphere_pair.tame")]).starts_with("ok\n"));
}

#[test]
fn malformed_input_fails_cleanly() {
    let dir = std::env::temp_dir().join(format!("tamecx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("late_face.filt", "0 0\n2 1\n1 0 1\n", "[0,1]"),
        ("garbage.tame", "tame\ngrid 0\npoint zero\n", "3:7"),
        (
            "shape.tame",
            "tame\ngrid 0\npoint 0\ndims 1 1\ndiff 0 2x1\n",
            "5:8",
        ),
    ];
    for (name, text, needle) in cases {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        let out = tamecx(&["betti", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(
            err.contains(needle) && !err.contains("panicked"),
            "{name}: {err}"
        );
    }
    let out = tamecx(&["--field", "4", "betti", &path("single_vertex.filt")]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn decompose_cover_and_morphisms() {
    let d = stdout(&["decompose", &path("sphere_pair.tame")]);
    assert_eq!(d, "degree,birth,death\n0,0,inf\n0,1,2\n");
    let s = stdout(&[
        "--format",
        "structured",
        "decompose",
        &path("sphere_pair.tame"),
    ]);
    assert_eq!(s, "I0[0,inf)\nI0[1,2]\n");
    let not_cofibrant = tamecx(&["decompose", &path("closing_x.zz")]);
    assert!(!not_cofibrant.status.success());

    let cover = stdout(&["cover", &path("sphere_pair.tame")]);
    let parsed = tamecx::pipeline::parse_tame(&cover, None).unwrap();
    assert!(parsed.is_cofibrant());

    let args = [
        "morphism-betti",
        &path("sphere_pair.tame"),
        &path("first_sphere.tame"),
        &path("sphere_pair_projection.tamemap"),
    ];
    let default = stdout(&args);
    // the cone on the kernel I0[1,2], plus a diagonal point from the cover of the source
    assert_eq!(default, format!("{HEADER}0,0,0,1,true\n1,1,2,1,false\n"));
    let off = |t: &str| -> Vec<String> {
        t.lines()
            .filter(|l| l.ends_with(",false"))
            .map(String::from)
            .collect()
    };
    for m in ["minfact", "cover-cofiber", "cofiber-covers", "min"] {
        let mut a = args.to_vec();
        a.extend(["--method", m]);
        assert_eq!(off(&stdout(&a)), off(&default), "{m}");
    }
}

#[test]
fn field_flag_overrides_the_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_tamecx"));
        c.args(args).env_remove("TAMECX_FIELD");
        if let Some(v) = env {
            c.env("TAMECX_FIELD", v);
        }
        c.output().unwrap()
    };
    let zz = path("closing_x.zz");
    // the document declares F_2
    assert!(!run(Some("3"), &["validate", &zz]).status.success());
    assert!(run(Some("3"), &["--field", "2", "validate", &zz])
        .status
        .success());
    assert!(run(None, &["validate", &zz]).status.success());
}

#[test]
fn output_flag_writes_a_file() {
    let p = std::env::temp_dir().join(format!("tamecx-out-{}.txt", std::process::id()));
    let out = stdout(&[
        "--format",
        "structured",
        "--output",
        p.to_str().unwrap(),
        "betti",
        &path("merging_pair.filt"),
    ]);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&p).unwrap();
    assert_eq!(text, "diagrams\ndegree 0\n0 1 1\n0 inf 1\n");
    std::fs::remove_file(p).ok();
}
