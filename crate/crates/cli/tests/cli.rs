use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn hypmid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypmid"))
        .args(args)
        .env_remove("HYPMID_TOL")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 output")
}

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn midpoint_json_follows_the_schema() {
    let o = hypmid(&["midpoint", "--model", "h2", "--x", "0,1", "--y", "0,4"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["model", "x", "y", "method", "z", "residual_rho", "residual_carrier", "trace"]);
    assert_eq!(v["method"], "case1");
    let z = v["z"].as_array().unwrap();
    assert!((z[0].as_f64().unwrap()).abs() < 1e-12);
    assert!((z[1].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!(v["residual_rho"].as_f64().unwrap() <= 1e-9);
    assert!(!v["trace"].as_array().unwrap().is_empty());
}

#[test]
fn midpoint_accepts_negative_coordinates() {
    let o = hypmid(&["midpoint", "--model", "b2", "--x", "-0.5,0", "--y", "0,-0.25", "--method", "I"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn inapplicable_method_exits_2() {
    let o = hypmid(&["midpoint", "--model", "b2", "--x", "0.5,0", "--y", "0,0.5", "--method", "I"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("inapplicable"));
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        vec!["midpoint", "--model", "h2", "--x", "0,1"],
        vec!["midpoint", "--model", "k2", "--x", "0,1", "--y", "0,2"],
        vec!["midpoint", "--model", "h2", "--x", "0,1", "--y", "0,2", "--method", "VII"],
        vec!["verify", "--samples", "0"],
        vec!["render", "--model", "b2", "--x", "0.5,0", "--y", "0,0.25", "--width", "0"],
        vec!["render", "--model", "b2", "--x", "0.5,0", "--y", "0,0.25", "--height", "0"],
        vec!["frobnicate"],
    ] {
        assert_eq!(code(&hypmid(&args)), 64, "{args:?}");
    }
}

#[test]
fn points_outside_the_model_exit_1() {
    let o = hypmid(&["midpoint", "--model", "b2", "--x", "1.5,0", "--y", "0,0.25"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn invalid_tolerance_in_environment_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_hypmid"))
        .args(["midpoint", "--model", "h2", "--x", "0,1", "--y", "0,4"])
        .env("HYPMID_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 64);
}

#[test]
fn verify_is_deterministic_for_a_seed() {
    let args = ["verify", "--suite", "all", "--samples", "200", "--seed", "7", "--json"];
    let a = hypmid(&args);
    let b = hypmid(&args);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn script_run_passes_the_corpus() {
    for name in ["method_I_disk.hgc", "case1_halfplane.hgc", "chain_disk.hgc"] {
        let o = hypmid(&["script", "run", &corpus(name)]);
        assert_eq!(code(&o), 0, "{name}: {}{}", stdout(&o), stderr(&o));
        assert!(stdout(&o).contains("0 error(s)"));
    }
}

#[test]
fn script_missing_binding_names_it() {
    let path = scratch("needs_p.hgc");
    std::fs::write(&path, "input point p\nq = invert(p)\noutput q\n").unwrap();
    let path = path.display().to_string();
    let o = hypmid(&["script", "run", &path]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("UnknownName"), "{}", stderr(&o));
    assert!(stderr(&o).contains('p'));
    let o = hypmid(&["script", "run", &path, "--bind", "p=0.25,0"]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn script_fmt_check_accepts_canonical_files_only() {
    let o = hypmid(&["script", "fmt", "--check", &corpus("method_I_disk.hgc")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let path = scratch("messy.hgc");
    std::fs::write(&path, "point   x=( 0.5 ,0 )\noutput   x\n").unwrap();
    let path = path.display().to_string();
    assert_eq!(code(&hypmid(&["script", "fmt", "--check", &path])), 1);
    assert_eq!(code(&hypmid(&["script", "fmt", "--write", &path])), 0);
    assert_eq!(code(&hypmid(&["script", "fmt", "--check", &path])), 0);
}

fn render(args: &[&str]) -> String {
    let out = scratch(&format!("render-{}.svg", args.join("_").replace(['/', ','], "-")));
    let out = out.display().to_string();
    let o = hypmid(&[&["render"], args, &["--out", &out]].concat());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    std::fs::read_to_string(&out).expect("render wrote its output")
}

fn check_golden(name: &str, svg: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, svg).unwrap();
    }
    let expected = std::fs::read_to_string(&path).expect("golden file exists; set UPDATE_GOLDEN=1 to create it");
    assert_eq!(svg, expected, "{name} drifted from its golden copy");
}

const B2_I: [&str; 8] = ["--model", "b2", "--x", "0.5,0", "--y", "0,0.25", "--method", "I"];
const H2_CASE1: [&str; 8] = ["--model", "h2", "--x", "0,1", "--y", "0,4", "--method", "case1"];

#[test]
fn render_disk_method_i_matches_golden() {
    let svg = render(&B2_I);
    assert!(svg.contains("version=\"1.1\""));
    assert!(svg.contains("class=\"boundary\""));
    for label in ["C_a", "C_w", "x_inv", "geodesic", "z"] {
        assert!(svg.contains(&format!(">{label}</text>")), "missing label {label}");
    }
    assert!(svg.contains("class=\"result\""));
    check_golden("b2_method_I.svg", &svg);
}

#[test]
fn render_half_plane_case1_matches_golden() {
    let svg = render(&H2_CASE1);
    for label in ["C_xy", "C_om", "C_oa", "L_xy", "z"] {
        assert!(svg.contains(&format!(">{label}</text>")), "missing label {label}");
    }
    check_golden("h2_case1.svg", &svg);
}

#[test]
fn render_is_byte_deterministic() {
    assert_eq!(render(&B2_I), render(&B2_I));
}

#[test]
fn render_header_documents_the_orientation() {
    let svg = render(&H2_CASE1);
    let start = svg.find("<!--").expect("header comment") + 4;
    let end = svg.find("-->").expect("header comment closes");
    assert!(end < svg.find("<svg").unwrap());
    let header = &svg[start..end];
    assert!(header.contains("y axis is flipped"));
    assert!(!header.contains("--"));
}

#[test]
fn render_script_highlights_outputs() {
    let svg = render(&["--script", &corpus("chain_disk.hgc")]);
    assert!(svg.contains("class=\"boundary\""));
    assert!(svg.contains("class=\"result\""));
}

#[test]
fn render_without_labels_has_no_text() {
    let svg = render(&[&B2_I[..], &["--no-labels"]].concat());
    assert!(!svg.contains("<text"));
}
