use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn kite(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kite"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn lattice_verdicts_and_exit_codes() {
    let out = kite(&["verify-lattice", "builtin:l3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("MV"));

    let dir = tempfile::tempdir().unwrap();
    let good = kite_core::reslat::io::serialize(&kite_core::reslat::lukasiewicz_chain(3));
    // x*y for the two middle elements becomes the middle element: too big for x\z
    let corrupted = good.replacen("mul\n0 0 0\n0 0 1", "mul\n0 0 0\n0 1 1", 1);
    assert_ne!(good, corrupted);
    let bad = dir.path().join("bad.lat");
    fs::write(&bad, corrupted).unwrap();
    let out = kite(&["verify-lattice", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL"));

    let empty = dir.path().join("empty.lat");
    fs::write(&empty, "").unwrap();
    let out = kite(&["verify-lattice", empty.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    // an invalid lattice is an input error everywhere else
    let out = kite(&[
        "kite-check",
        "--lattice",
        bad.to_str().unwrap(),
        "--frame",
        "builtin:loop",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn frame_classification() {
    let out = kite(&["classify-frame", "cycle4", "--corpus-dir", "corpus"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("Cycle(4)"));
    let out = kite(&["classify-frame", "id4", "--corpus-dir", "corpus"]);
    assert!(stdout(&out).contains("Disconnected"));
    let out = kite(&["classify-frame", "builtin:z-shift"]);
    assert!(stdout(&out).contains("ZShift"));
    let out = kite(&["classify-frame", "builtin:id4", "--lattice", "builtin:trivial"]);
    assert!(stdout(&out).contains("TrivialG"));
}

#[test]
fn kite_checks() {
    let out = kite(&["kite-check", "--lattice", "builtin:c2", "--frame", "builtin:cycle3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("exhaustive"));
    let out = kite(&[
        "kite-check",
        "--lattice",
        "builtin:trivial",
        "--frame",
        "builtin:path2",
        "--depth",
        "4",
    ]);
    assert_eq!(code(&out), 0);
    let out = kite(&[
        "kite-check",
        "--lattice",
        "builtin:l3",
        "--frame",
        "builtin:cycle3",
        "--budget",
        "500",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("coverage 0.500"));
    let out = kite(&["kite-check", "--lattice", "builtin:l3", "--frame", "builtin:z-shift"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn si_and_decomposition() {
    let out = kite(&["si-check", "--lattice", "builtin:l3", "--frame", "builtin:path3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("(Connected)"));
    let out = kite(&[
        "decompose",
        "--lattice",
        "builtin:l3",
        "--frame",
        "builtin:id4",
        "--samples",
        "300",
    ]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert_eq!(s.matches("component").count(), 4);
    assert!(s.contains("300 of 300"));
}

#[test]
fn embeddings() {
    let out = kite(&["embed-check", "--lattice", "builtin:c2", "--embedding", "phi1"]);
    assert_eq!(code(&out), 0);
    let out = kite(&["embed-check", "--lattice", "builtin:c2", "--embedding", "phi3"]);
    assert_eq!(code(&out), 0);
    // exact preservation fails on the small cyclic factors
    let out = kite(&["embed-check", "--lattice", "builtin:c2", "--embedding", "phi2"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("PASS   phi2 product (wrap-free)"));
}

#[test]
fn transformations() {
    for ok in [
        "cycle-mod2",
        "cycle-mod3",
        "two-cycles-fold",
        "cycle-to-loop",
        "z-shift",
    ] {
        let out = kite(&["hom-check", "--map", ok, "--corpus-dir", "corpus"]);
        assert_eq!(code(&out), 0, "{ok}: {}", stdout(&out));
    }
    for (bad, condition) in [
        ("path-into-cycle", "FAIL   condition t^-1(J1) = I1"),
        ("path-shifted", "FAIL   condition t^-1(kappa(J1)) = lambda(I1)"),
        ("cycle-twisted", "FAIL   condition t lambda = kappa t on I1"),
    ] {
        let out = kite(&["hom-check", "--map", bad, "--corpus-dir", "corpus"]);
        assert_eq!(code(&out), 1);
        assert!(stdout(&out).contains(condition), "{bad}");
    }
    let out = kite(&["hom-check", "--map", "path-shifted", "--corpus-dir", "corpus"]);
    assert!(stdout(&out).contains("FAIL   preserves right division"));
    let out = kite(&[
        "hom-check",
        "--map",
        "corpus/maps/cycle-mod2.map",
        "--then",
        "corpus/maps/cycle2-identity.map",
    ]);
    assert!(stdout(&out).contains("compose contravariantly"));
}

#[test]
fn map_with_frame_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("t.map");
    fs::write(&map, "source: nowhere\ntarget: nowhere\nt: 0->0, 1->1, 2->0, 3->1\n").unwrap();
    let m = map.to_str().unwrap();
    assert_eq!(code(&kite(&["hom-check", "--map", m])), 2);
    let out = kite(&[
        "hom-check",
        "--map",
        m,
        "--source",
        "builtin:cycle4",
        "--target",
        "builtin:cycle2",
    ]);
    assert_eq!(code(&out), 0);
    let out = kite(&[
        "hom-check",
        "--map",
        m,
        "--source",
        "builtin:cycle3",
        "--target",
        "builtin:cycle2",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn enumeration() {
    let out = kite(&["enumerate", "lattices", "2"]);
    assert!(stdout(&out).contains("INFO   count: 1\n"));
    let out = kite(&["enumerate", "lattices", "4"]);
    assert!(stdout(&out).contains("INFO   count: 9\n"));
    let out = kite(&["enumerate", "frames", "0"]);
    assert!(stdout(&out).contains("INFO   count: 1\n"));
    assert_eq!(code(&kite(&["enumerate", "lattices", "0"])), 2);
}

#[test]
fn bad_flags_are_input_errors() {
    assert_eq!(code(&kite(&["verify-lattice", "builtin:l3", "--samples", "0"])), 2);
    assert_eq!(code(&kite(&["verify-lattice", "builtin:l3", "--format", "xml"])), 2);
    assert_eq!(code(&kite(&["verify-lattice", "builtin:zz"])), 2);
}

#[test]
fn export_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = kite(&["export", "lattice", "builtin:noncomm"]);
    let path = dir.path().join("n.lat");
    fs::write(&path, &out.stdout).unwrap();
    let again = kite(&["export", "lattice", path.to_str().unwrap()]);
    assert_eq!(out.stdout, again.stdout);
}

/// Each baseline holds the JSON-lines output of the command named in its
/// header; rerunning must reproduce it byte for byte.
#[test]
fn baselines_are_reproduced() {
    let runs: [(&str, &[&str]); 7] = [
        ("verify-l3", &["verify-lattice", "l3"]),
        (
            "kite-c2-cycle3",
            &["kite-check", "--lattice", "c2", "--frame", "cycle3"],
        ),
        ("si-l3-path3", &["si-check", "--lattice", "l3", "--frame", "path3"]),
        (
            "decompose-l3-id4",
            &["decompose", "--lattice", "l3", "--frame", "id4", "--samples", "200"],
        ),
        ("hom-cycle-mod2", &["hom-check", "--map", "corpus/maps/cycle-mod2.map"]),
        (
            "embed-c2-phi1",
            &["embed-check", "--lattice", "c2", "--embedding", "phi1"],
        ),
        ("enumerate-frames-3", &["enumerate", "frames", "3"]),
    ];
    for (name, args) in runs {
        let mut full = args.to_vec();
        full.extend(["--corpus-dir", "corpus", "--format", "json"]);
        let out = kite(&full);
        let want = fs::read_to_string(root().join(format!("corpus/baselines/{name}.records"))).unwrap();
        assert_eq!(stdout(&out), want, "{name}");
        assert_eq!(out.stdout, kite(&full).stdout);
    }
}
