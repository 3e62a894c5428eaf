use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_persmod"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn barcode_of_two_triangles() {
    let out = stdout(&["barcode", &data("two_triangles.flt")]);
    assert_eq!(out, "0 1 2\n0 1 inf\n0 2 2\n0 2 3\n1 3 6\n1 4 5\n");
    let dropped = stdout(&["barcode", "--drop-ephemeral", &data("two_triangles.flt")]);
    assert!(!dropped.contains("0 2 2"));
    assert_eq!(
        stdout(&["barcode", "--field", "Zp:2", &data("two_triangles.flt")]),
        out
    );
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&["snf", "--dump", &data("five_gens.pmod")]);
    let b = stdout(&["snf", "--dump", &data("five_gens.pmod")]);
    assert_eq!(a, b);
    assert!(a.contains("gen y' 1"));
}

#[test]
fn direct_sum_doubles_bars() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sum.pmod").to_string_lossy().into_owned();
    let a = data("hom_m.pmod");
    stdout(&["op", "dsum", &a, &a, "-o", &out]);
    let bars = stdout(&["presentation-barcode", &out]);
    assert_eq!(bars, "- 1 4\n- 1 4\n- 2 6\n- 2 6\n");
}

#[test]
fn operations_produce_presentations() {
    let f = data("hom_f.pmor");
    let k = stdout(&["op", "kernel", &f, "--minimize"]);
    assert_eq!(k, "field Q\ngen k0 3\nrel kr0: 1t^1*k0\n");
    let (m, n) = (data("hom_m.pmod"), data("hom_n.pmod"));
    for op in ["tensor", "hom", "dsum", "tensor-k"] {
        let out = stdout(&["op", op, &m, &n]);
        assert!(out.starts_with("field Q\ngen "), "{op}: {out}");
    }
    for op in ["dual", "wedge:2", "sym:2"] {
        stdout(&["op", op, &m]);
    }
    for op in ["image", "cokernel"] {
        stdout(&["op", op, &f]);
    }
    stdout(&["op", "pullback", &f, &f]);
    let dir = tempfile::tempdir().unwrap();
    let id = write(
        &dir,
        "id.pmor",
        "[source]\ngen x 1\nrel 1t^3*x\n[target]\ngen x 1\nrel 1t^3*x\n[map]\nmap x -> 1t^0*x\n",
    );
    let po = stdout(&["op", "pushout", &id, &id, "--minimize"]);
    assert_eq!(
        stdout(&["presentation-barcode", &write(&dir, "po.pmod", &po)]),
        "- 1 4\n"
    );
}

#[test]
fn relative_and_stream() {
    let rel = stdout(&["relative", &data("reverse_removals.flt")]);
    assert_eq!(rel.lines().count(), 4);
    let s = stdout(&["stream", &data("shuffled_triangle.flt")]);
    assert_eq!(s, "0 1 inf\n0 2 3\n0 4 5\n1 6 7\n");
    let events = stdout(&["stream", "--emit-events", &data("shuffled_triangle.flt")]);
    assert!(events.contains("# add s2_3 5\n# - 0 4 6\n"));
    assert!(events.ends_with(&s));
}

#[test]
fn real_values_are_ranked() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "c.flt", "0 ; 0.5\n1 ; 1.5\n0 1 ; 2.25\n");
    let out = stdout(&["barcode", &p]);
    assert_eq!(
        out,
        "# grade 0 = 0.5\n# grade 1 = 1.5\n# grade 2 = 2.25\n0 0 inf\n0 1 2\n"
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = write(&dir, "bad.flt", "0 ; 1\nnot a simplex\n");
    let out = run(&["barcode", &garbage]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let missing_face = write(&dir, "face.flt", "0 ; 1\n0 1 ; 2\n");
    assert_eq!(run(&["barcode", &missing_face]).status.code(), Some(2));

    let bad_rel = write(&dir, "p.pmod", "gen x 0\ngen y 1\nrel 1t^1*x + 1t^1*y\n");
    let out = run(&["presentation-barcode", &bad_rel]);
    assert_eq!(out.status.code(), Some(1));

    let incompatible = write(
        &dir,
        "f.pmor",
        "[source]\ngen x 0\n[target]\ngen y 0\nrel 1t^1*y\n[map]\nmap x -> 1t^0*y\n",
    );
    assert_eq!(run(&["op", "kernel", &incompatible]).status.code(), Some(0));
    let incompatible = write(
        &dir,
        "g.pmor",
        "[source]\ngen x 0\nrel 1t^2*x\n[target]\ngen y 0\n[map]\nmap x -> 1t^0*y\n",
    );
    assert_eq!(run(&["op", "kernel", &incompatible]).status.code(), Some(2));

    assert_eq!(
        run(&["op", "wedge:x", &data("hom_m.pmod")]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["barcode", "/nonexistent/file"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["barcode", "--field", "Zp:4", &data("two_triangles.flt")])
            .status
            .code(),
        Some(2)
    );
}
