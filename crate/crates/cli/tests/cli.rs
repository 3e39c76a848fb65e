use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    format!("{}/data/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ocl-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

/// Exit code and parsed JSON report (Null when the command failed before reporting).
fn ocl(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_ocl")).args(args).arg("--json").output().unwrap();
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

#[test]
fn shipped_torus_certificate_verifies() {
    let (code, v) = ocl(&["verify", &data("torus_2_3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["cost"], 1);
    assert_eq!(v["provenance"]["cost"], "verified-certificate");
}

#[test]
fn shipped_certificate_is_what_the_script_emits() {
    let p = scratch("regen.json");
    let (code, _) = ocl(&["torus-knot", "-p", "2", "-q", "3", "--cert-out", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&p).unwrap(), std::fs::read_to_string(data("torus_2_3.json")).unwrap());
}

#[test]
fn tampered_and_malformed_files() {
    let good = std::fs::read_to_string(data("torus_2_3.json")).unwrap();
    let bad = good.replacen("\"sign\": -1", "\"sign\": 1", 1);
    assert_ne!(bad, good);
    let p = scratch("tampered.json");
    std::fs::write(&p, bad).unwrap();
    let (code, v) = ocl(&["verify", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["ok"], false);
    assert_ne!(v["results"]["residual"], "");

    let p = scratch("malformed.json");
    std::fs::write(&p, &good[..good.len() / 2]).unwrap();
    assert_eq!(ocl(&["verify", p.to_str().unwrap()]).0, 2);
    assert_eq!(ocl(&["verify", "/nonexistent/cert.json"]).0, 2);
}

#[test]
fn failing_verification_writes_the_report() {
    let good = std::fs::read_to_string(data("torus_2_3.json")).unwrap();
    let p = scratch("tampered2.json");
    std::fs::write(&p, good.replacen("\"a*b^-1", "\"a*b^-2", 1)).unwrap();
    let out = scratch("tampered2.report.json");
    let (code, _) = ocl(&["verify", p.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!(!v["results"]["residual"].as_str().unwrap().is_empty());
    assert!(v["timestamp"].is_u64());
}

#[test]
fn ghys_bounds() {
    for alpha in ["1", "-1"] {
        let (code, v) = ocl(&["ghys", "--alpha", alpha]);
        assert_eq!(code, 0);
        let r = &v["results"];
        assert_eq!((r["pi_equal"].as_bool(), r["relator_count"].as_u64(), r["t2_bound"].as_u64()), (Some(true), Some(12), Some(62)));
        let (code, v) = ocl(&["ghys", "--alpha", alpha, "--refined", "--axiom", "translations-xi2"]);
        assert_eq!(code, 0);
        assert_eq!((v["results"]["ocl_bound"].as_u64(), v["results"]["genus_bound"].as_u64()), (Some(25), Some(26)));
        assert_eq!(v["provenance"]["ocl_bound"], "axiom-import");
    }
    // without the import the bound is carried by a certificate with no axioms
    let (code, v) = ocl(&["ghys", "--refined"]);
    assert_eq!(code, 0);
    assert_eq!((v["results"]["ocl_bound"].as_u64(), v["results"]["imported_cost"].as_u64()), (Some(53), Some(0)));
    assert_eq!(v["provenance"]["ocl_bound"], "verified-certificate");
    assert_eq!(ocl(&["ghys", "--axiom", "choice"]).0, 2);
    assert_eq!(ocl(&["ghys", "--alpha", "2"]).0, 2);
}

#[test]
fn emitted_certificates_reverify() {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("ghys.json", vec!["ghys", "--refined", "--axiom", "translations-xi2"]),
        ("psi.json", vec!["psi", "--alpha", "-1"]),
        ("search.json", vec!["search", "--presentation", "torus:3,5"]),
        ("t35.json", vec!["torus-knot", "-p", "3", "-q", "5"]),
    ];
    for (name, args) in cases {
        let p = scratch(name);
        let mut a = args.clone();
        a.extend(["--cert-out", p.to_str().unwrap()]);
        assert_eq!(ocl(&a).0, 0, "{:?}", args);
        let (code, v) = ocl(&["verify", p.to_str().unwrap()]);
        assert_eq!(code, 0, "{:?}", args);
        assert_eq!(v["results"]["ok"], true);
    }
    let p = scratch("rel.json");
    assert_eq!(ocl(&["torus-knot", "-p", "2", "-q", "3", "--relator-out", p.to_str().unwrap()]).0, 0);
    let (code, v) = ocl(&["verify", p.to_str().unwrap()]);
    assert_eq!((code, v["results"]["kind"].as_str()), (0, Some("relator-product")));
    assert_eq!(v["results"]["cost"], 2);
}

#[test]
fn torus_knots() {
    for (p, q) in [("2", "3"), ("3", "5")] {
        let (code, v) = ocl(&["torus-knot", "-p", p, "-q", q]);
        assert_eq!(code, 0);
        let r = &v["results"];
        assert_eq!((r["l_s_cost"].as_u64(), r["cl_r_cost"].as_u64(), r["genus_bound"].as_u64()), (Some(2), Some(1), Some(2)));
    }
    assert_eq!(ocl(&["torus-knot", "-p", "2", "-q", "4"]).0, 2);
}

#[test]
fn alexander_stevedore() {
    let (m, b) = (data("stevedore_matrix.txt"), data("stevedore_boundary.txt"));
    let (code, v) = ocl(&["alexander", "--matrix", &m, "--boundary", &b]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["m"]["member"], true);
    assert_eq!(r["l"]["member"], true);
    assert_eq!(r["m"]["witness_checked"], true);
    assert_eq!(r["cyclic"], false);
    assert_eq!(r["delta_vanishes_at_u_inv"], true);
    assert_eq!((r["dim_at_u"].as_u64(), r["dim_at_u_inv"].as_u64()), (Some(1), Some(2)));
    // the default boundary is the same data
    let (_, d) = ocl(&["alexander", "--matrix", &m]);
    assert_eq!(d["digest"], v["digest"]);

    let (code, v) = ocl(&["alexander", "--matrix", &m, "--boundary", &b, "--u", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["m"]["member"], false);
    assert_eq!(v["results"]["boundary_divisible"], false);
}

#[test]
fn alexander_inputs() {
    let id = scratch("id.txt");
    std::fs::write(&id, "1, 0\n0, 1\n").unwrap();
    let (code, v) = ocl(&["alexander", "--matrix", id.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["cyclic"], true);
    assert_eq!(v["results"]["ocmt_refuted"], true);

    let short = scratch("short.txt");
    std::fs::write(&short, "m: 1\nl: 0\n").unwrap();
    let m = data("stevedore_matrix.txt");
    assert_eq!(ocl(&["alexander", "--matrix", &m, "--boundary", short.to_str().unwrap()]).0, 2);
    let garbage = scratch("garbage.txt");
    std::fs::write(&garbage, "t +* 2\n").unwrap();
    assert_eq!(ocl(&["alexander", "--matrix", garbage.to_str().unwrap()]).0, 2);
    let ragged = scratch("ragged.txt");
    std::fs::write(&ragged, "1, t\n2\n").unwrap();
    assert_eq!(ocl(&["alexander", "--matrix", ragged.to_str().unwrap()]).0, 2);
    assert_eq!(ocl(&["alexander", "--matrix", &m, "--u", "0"]).0, 2);
}

#[test]
fn steinberg_check_is_seeded() {
    let (code, a) = ocl(&["steinberg-check", "--samples", "1", "--seed", "3"]);
    assert_eq!(code, 0);
    let (_, b) = ocl(&["steinberg-check", "--samples", "1", "--seed", "3"]);
    let (_, c) = ocl(&["steinberg-check", "--samples", "1", "--seed", "4"]);
    assert_eq!(a["digest"], b["digest"]);
    assert_ne!(a["digest"], c["digest"]);
    // the seed can come from the environment
    let out = Command::new(env!("CARGO_BIN_EXE_ocl"))
        .args(["steinberg-check", "--samples", "1", "--json"])
        .env("OCL_SEED", "3")
        .output()
        .unwrap();
    let e: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(e["digest"], a["digest"]);
    assert_eq!(ocl(&["steinberg-check", "--samples", "0"]).0, 2);
}

#[test]
fn psi_and_search() {
    let (code, v) = ocl(&["psi"]);
    assert_eq!(code, 0);
    assert_eq!((v["results"]["cost"].as_u64(), v["results"]["bound"].as_u64()), (Some(12), Some(12)));
    assert_eq!(v["results"]["ghys_t2_bound"], 62);
    assert_eq!(ocl(&["psi", "--a", "1"]).0, 2);
    assert_eq!(ocl(&["psi", "--a", "u"]).0, 2);

    let (code, v) = ocl(&["search", "--presentation", "torus:2,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["cost"], 1);
    assert_eq!(v["provenance"]["cost"], "search");
    assert_eq!(ocl(&["search"]).0, 2);
    assert_eq!(ocl(&["search", "--target", "x(1,s)"]).0, 2);
    let (code, v) = ocl(&["search", "--target", "[x(1,s),x(1,t)]", "--budget", "50"]);
    assert_eq!((code, v["results"]["found"].as_bool()), (1, Some(false)));
}

#[test]
fn every_number_has_a_tag() {
    let m = data("stevedore_matrix.txt");
    for args in [
        vec!["ghys", "--refined"],
        vec!["torus-knot", "-p", "2", "-q", "3"],
        vec!["alexander", "--matrix", &m],
        vec!["psi"],
        vec!["steinberg-check", "--samples", "2"],
    ] {
        let (_, v) = ocl(&args);
        let tags = v["provenance"].as_object().unwrap();
        for (k, val) in v["results"].as_object().unwrap() {
            if val.is_number() {
                assert!(tags.contains_key(k), "{:?}: {} has no provenance", args, k);
            }
        }
    }
}
