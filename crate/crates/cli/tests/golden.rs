//! CLI output compared against stored transcripts in `tests/golden/`.
//! Set `FRIEZE_BLESS=1` to rewrite them.

use std::fs;
use std::path::{Path, PathBuf};

fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

/// Runs `frieze <args>`; a leading `@` on an argument names a fixture.
fn frieze(args: &[&str]) -> frieze_cli::Output {
    let fx = dir("fixtures");
    let mut argv = vec!["frieze".to_string()];
    argv.extend(args.iter().map(|a| match a.strip_prefix('@') {
        Some(f) => fx.join(f).display().to_string(),
        None => a.to_string(),
    }));
    let mut out = frieze_cli::run(argv);
    let prefix = format!("{}/", fx.display());
    out.stdout = out.stdout.replace(&prefix, "");
    out.stderr = out.stderr.replace(&prefix, "");
    out
}

fn golden(name: &str, args: &[&str], code: i32) {
    let out = frieze(args);
    assert_eq!(out.code, code, "{}: exit code\nstdout:\n{}\nstderr:\n{}", name, out.stdout, out.stderr);
    let text = format!("$ frieze {}\n{}", args.join(" "), out.stdout);
    let path = dir("golden").join(format!("{}.out", name));
    if std::env::var_os("FRIEZE_BLESS").is_some() {
        fs::write(&path, &text).unwrap();
        return;
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {} (run with FRIEZE_BLESS=1)", path.display(), e));
    assert_eq!(text, want, "{} differs from {}", name, path.display());
}

#[test]
fn gen_tables() {
    golden("gen_octagon", &["gen", "@octagon.q", "--depth", "5", "--cols", "9"], 0);
    golden("gen_annulus_144", &["gen", "@annulus_144.dis", "--depth", "5", "--cols", "8"], 0);
    golden("gen_hexagon", &["gen", "@hexagon.dis", "--depth", "3", "--cols", "7"], 0);
    golden("gen_octagon_4gon", &["gen", "@octagon_4gon.dis", "--depth", "5", "--cols", "9"], 0);
    golden("gen_annulus_333", &["gen", "@annulus_333.dis"], 0);
    golden("gen_pentagon", &["gen", "@pentagon.dis", "--depth", "8"], 0);
}

#[test]
fn classification() {
    golden("classify_intro", &["classify", "@intro.q"], 1);
    golden("classify_cuts", &["classify", "@cuts.q"], 1);
    golden("classify_quotient", &["classify", "@quotient.q"], 0);
    golden("classify_skeletal", &["classify", "@skeletal.q", "--all-witnesses"], 0);
    golden("realize_quotient", &["realize", "@quotient.q"], 0);
}

#[test]
fn matchings_and_growth() {
    golden("matchings_annulus_333", &["matchings", "@annulus_333.dis", "--from", "0", "--to", "4", "--list"], 0);
    golden("matchings_annulus_333_ann", &["matchings", "@annulus_333.dis", "--from", "0", "--to", "4", "--mode", "ann"], 0);
    golden("matchings_pentagon", &["matchings", "@pentagon.dis", "--from", "4", "--to", "10", "--list"], 0);
    golden("growth_annulus_333", &["growth", "@annulus_333.dis", "--k", "3", "--matchings"], 0);
    golden("growth_inner_outer", &["growth", "@inner_outer.dis", "--k", "2"], 0);
    golden("power_annulus_144", &["power", "@annulus_144.dis", "--k", "2"], 0);
}

#[test]
fn tpaths() {
    golden("tpaths_hexagon", &["tpaths", "@hexagon.dis", "--from", "1", "--to", "4", "--check-phi"], 0);
    golden("tpaths_octagon_complete", &["tpaths", "@octagon_4gon.dis", "--from", "2", "--to", "7", "--kind", "complete"], 0);
}

#[test]
fn verify_and_render() {
    golden("verify_unimodular", &["verify", "unimodular", "--seed", "7", "--count", "20"], 0);
    let out = frieze(&["render", "@annulus_333.dis"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("<svg") && out.stdout.trim_end().ends_with("</svg>"));
    let tmp = tempfile::tempdir().unwrap();
    let svg = tmp.path().join("q.svg");
    let qfile = tmp.path().join("q.dis");
    fs::write(&qfile, frieze(&["realize", "@quotient.q"]).stdout).unwrap();
    let out = frieze(&["render", qfile.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(fs::read_to_string(&svg).unwrap().contains("<svg"));
}

#[test]
fn errors() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.q");
    fs::write(&bad, "[3,2]\n").unwrap();
    let out = frieze(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("offset 3"), "{}", out.stderr);

    let out = frieze(&["wobble"]);
    assert_eq!(out.code, 2);
    assert!(!out.stderr.is_empty());

    let out = frieze(&["classify", "@missing.q"]);
    assert_eq!(out.code, 2);

    let unreal = tmp.path().join("unreal.q");
    fs::write(&unreal, "[3,3] [4,4,4]\n").unwrap();
    assert_eq!(frieze(&["realize", unreal.to_str().unwrap()]).code, 1);

    assert_eq!(frieze(&["growth", "@octagon.q"]).code, 1);
    assert_eq!(frieze(&["verify", "no-such-suite"]).code, 2);
    assert_eq!(frieze(&["matchings", "@annulus_333.dis", "--from", "3", "--to", "1"]).code, 2);
    assert_eq!(frieze(&["--help"]).code, 0);
}
