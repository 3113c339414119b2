//! End-to-end tests of the `gsb` front end: the stanza format, the JSON
//! report, exit codes and the documented example runs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command as Process;

use gsb_cli::{parse_document, run, serialize_document, Command, Options, Report, Verdict};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn read(name: &str) -> String {
    fs::read_to_string(fixture(name)).unwrap()
}

fn report(command: Command, name: &str, options: &Options) -> Report {
    run(command, &read(name), options).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn hnn_options() -> Options {
    Options {
        max_len: Some(4),
        samples: Some(200),
        ..Options::default()
    }
}

/// Runs the binary and returns its exit code, stdout and stderr.
fn gsb(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_gsb")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn every_fixture_round_trips_through_the_canonical_form() {
    let mut seen = 0;
    for entry in fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        if path.file_name().unwrap() == "malformed.gsb" {
            continue;
        }
        let text = fs::read_to_string(&path).unwrap();
        let doc = parse_document(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let canonical = serialize_document(&doc);
        assert_eq!(parse_document(&canonical).unwrap(), doc, "{}", path.display());
        assert_eq!(serialize_document(&parse_document(&canonical).unwrap()), canonical);
        seen += 1;
    }
    assert!(seen >= 15);
}

#[test]
fn reports_round_trip_and_embed_their_input() {
    let cases = [
        (Command::Complete, "s3.gsb"),
        (Command::CheckSchreier, "cyclic-s3.gsb"),
        (Command::Derive, "free-abelian.gsb"),
        (Command::Enumerate, "table.gsb"),
        (Command::CheckHnn, "hnn-cancel.gsb"),
    ];
    for (command, name) in cases {
        let r = report(command, name, &hnn_options());
        assert_eq!(r.schema, "v1");
        assert_eq!(r.command, command.name());
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r, "{name}");
        let original = parse_document(&read(name)).unwrap();
        assert_eq!(parse_document(&r.input).unwrap(), original, "{name}");
    }
}

#[test]
fn same_seed_gives_identical_json() {
    let options = Options {
        seed: Some(7),
        ..hnn_options()
    };
    for name in ["hnn-trivial.gsb", "hnn-stable.gsb"] {
        let a = report(Command::CheckHnn, name, &options).to_json();
        let b = report(Command::CheckHnn, name, &options).to_json();
        assert_eq!(a, b);
    }
    let path = fixture("hnn-cancel.gsb");
    let args = ["check-hnn", path.to_str().unwrap(), "--max-len", "3", "--seed", "11", "--json", "-"];
    let (code_a, out_a, _) = gsb(&args);
    let (code_b, out_b, _) = gsb(&args);
    assert_eq!((code_a, &out_a), (code_b, &out_b));
    assert_eq!(Report::from_json(&out_a).unwrap().seed, 11);
}

#[test]
fn exit_codes_follow_the_verdict() {
    let path = |n: &str| fixture(n).to_str().unwrap().to_owned();
    assert_eq!(gsb(&["complete", &path("s3.gsb")]).0, 0);
    assert_eq!(gsb(&["check-schreier", &path("cyclic.gsb")]).0, 0);
    assert_eq!(gsb(&["check-schreier", &path("cyclic-bad.gsb")]).0, 1);
    assert_eq!(gsb(&["enumerate", &path("table.gsb"), "--cross-check"]).0, 0);
    assert_eq!(gsb(&["enumerate", &path("table.gsb"), "--cross-check", "--inject-fault"]).0, 1);
    assert_eq!(gsb(&["check-hnn", &path("hnn-cancel.gsb"), "--max-len", "3"]).0, 1);

    let (code, _, err) = gsb(&["complete", &path("malformed.gsb")]);
    assert_eq!(code, 2);
    assert!(err.contains("line 7"), "{err}");
    let (code, _, err) = gsb(&["complete", &path("unknown-letter.gsb")]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown letter"), "{err}");
    assert_eq!(gsb(&["complete", &path("no-such-file.gsb")]).0, 2);

    let (code, out, _) = gsb(&["complete", &path("braid.gsb"), "--json", "-"]);
    assert_eq!(code, 3);
    assert_eq!(Report::from_json(&out).unwrap().verdict, Verdict::LimitExceeded);
    let (code, out, _) = gsb(&["complete", &path("braid.gsb"), "--max-rules", "3", "--json", "-"]);
    assert_eq!(code, 3);
    assert_eq!(Report::from_json(&out).unwrap().rules.len(), 3);
}

#[test]
fn json_file_output_matches_stdout_json() {
    let dir = std::env::temp_dir().join(format!("gsb-cli-test-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("report.json");
    let input = fixture("cyclic.gsb");
    let (code, text, _) = gsb(&["derive", input.to_str().unwrap(), "--json", out_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.starts_with("derive: PASS"));
    assert!(text.contains("time:"));
    let (_, stdout_json, _) = gsb(&["derive", input.to_str().unwrap(), "--json", "-"]);
    assert_eq!(fs::read_to_string(&out_path).unwrap(), stdout_json);
    assert!(!stdout_json.contains("time"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn completion_and_normal_forms() {
    let r = report(Command::Complete, "s3.gsb", &Options::default());
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.get_fact("unchanged"), Some("yes"));
    assert_eq!(r.rules, ["x x -> 1", "y y -> 1", "y x y -> x y x"]);

    let irr = report(Command::Irr, "s3.gsb", &Options { max_len: Some(6), ..Options::default() });
    assert_eq!(irr.normal_forms, ["1", "x", "y", "x y", "y x", "x y x"]);

    let nf = report(
        Command::Nf,
        "s3.gsb",
        &Options {
            words: vec!["x y x y".into(), "y x y x y x".into()],
            ..Options::default()
        },
    );
    assert_eq!(nf.normal_forms, ["x y x y = y x", "y x y x y x = 1"]);

    let x3 = report(Command::Complete, "x3.gsb", &Options::default());
    assert_eq!(x3.get_fact("unchanged"), Some("yes"));
}

#[test]
fn cyclic_derivation_and_extension_check() {
    let d = report(Command::Derive, "cyclic.gsb", &Options::default());
    assert_eq!(d.equations, ["a0 = a0^{x}", "a a0 = a0 a^{x x}"]);

    let z4 = report(Command::CheckSchreier, "cyclic.gsb", &Options::default());
    assert_eq!(z4.verdict, Verdict::Pass);
    assert!(z4.get_fact("group").unwrap().starts_with("order 4, abelian"));
    assert_eq!(z4.table.len(), 4);

    let s3 = report(Command::CheckSchreier, "cyclic-s3.gsb", &Options::default());
    assert!(s3.get_fact("group").unwrap().starts_with("order 6, nonabelian"));
    assert_eq!(s3.get_fact("A normal"), Some("true"));

    let bad = report(Command::CheckSchreier, "cyclic-bad.gsb", &Options::default());
    assert_eq!(bad.verdict, Verdict::Fail);
    assert!(bad.witnesses.iter().any(|w| w.starts_with("a0 = a0^{x} fails")), "{:?}", bad.witnesses);
}

#[test]
fn free_abelian_conditions() {
    let r = report(Command::Derive, "free-abelian.gsb", &Options::default());
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.get_fact("composition equations"), Some("32"));
    assert_eq!(r.get_fact("action identities"), Some("18"));
    assert_eq!(r.equations.len(), 50);
}

#[test]
fn enumeration_counts_and_fault_detection() {
    let cross = Options {
        cross_check: true,
        ..Options::default()
    };
    let z2 = report(Command::Enumerate, "table-z2.gsb", &cross);
    assert_eq!(z2.get_fact("extensions"), Some("2"));
    assert_eq!(z2.verdict, Verdict::Pass);

    let z3 = report(Command::Enumerate, "table.gsb", &cross);
    assert_eq!(z3.get_fact("extensions"), Some("4"));
    assert_eq!(z3.get_fact("abelian groups"), Some("3"));
    assert_eq!(z3.get_fact("nonabelian groups"), Some("1"));
    assert_eq!(z3.rows.len(), 4);

    let faulty = report(
        Command::Enumerate,
        "table.gsb",
        &Options {
            inject_fault: true,
            ..cross
        },
    );
    assert_eq!(faulty.verdict, Verdict::Fail);
    assert!(!faulty.witnesses.is_empty());

    let limited = run(
        Command::Enumerate,
        &read("table.gsb"),
        &Options {
            guard: Some(1),
            ..Options::default()
        },
    );
    assert_eq!(limited.unwrap_err().verdict(), Verdict::LimitExceeded);
}

#[test]
fn hnn_families_and_models() {
    let families = [
        "h h' h''", "h h' t", "h h' T", "h t T", "h T t", "a h h'", "a h t", "a h T", "a t^e t^-e",
    ];
    let trivial = report(Command::CheckHnn, "hnn-trivial.gsb", &hnn_options());
    assert_eq!(trivial.verdict, Verdict::Pass);
    for f in families {
        assert!(trivial.get_fact(&format!("exact {f}")).unwrap().starts_with("pass"), "{f}");
    }
    assert_eq!(trivial.get_fact("routes agree"), Some("true"));
    assert_eq!(trivial.get_fact("model"), Some("A x H x Z: injective on 28 normal forms"));

    let free = report(Command::CheckHnn, "hnn-free.gsb", &hnn_options());
    assert_eq!(free.verdict, Verdict::Pass);
    assert!(free.get_fact("model").unwrap().contains("injective"));

    let cancel = report(Command::CheckHnn, "hnn-cancel.gsb", &hnn_options());
    assert_eq!(cancel.verdict, Verdict::Fail);
    assert!(cancel.get_fact("exact h t T").unwrap().starts_with("FAIL"));
    assert!(cancel.get_fact("exact h T t").unwrap().starts_with("FAIL"));
    assert!(cancel.get_fact("exact a h h'").unwrap().starts_with("pass"));
    assert_eq!(cancel.get_fact("routes agree"), Some("true"));

    let fixed = report(Command::CheckHnn, "hnn-cancel-fixed.gsb", &hnn_options());
    assert_eq!(fixed.verdict, Verdict::Pass);

    let stable = report(Command::CheckHnn, "hnn-stable.gsb", &hnn_options());
    assert_eq!(stable.verdict, Verdict::Fail);
    assert!(stable.get_fact("exact a t^e t^-e").unwrap().starts_with("FAIL"));
    assert!(stable.witnesses.iter().any(|w| w.starts_with("a t^e t^-e fails")));

    let cocycle = report(Command::CheckHnn, "hnn-cocycle.gsb", &hnn_options());
    assert_eq!(cocycle.verdict, Verdict::Fail);
    assert!(cocycle.get_fact("exact h h' h''").unwrap().starts_with("FAIL"));
}
