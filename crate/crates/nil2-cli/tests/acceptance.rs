//! Acceptance suite for the command-line contract: golden files for every
//! subcommand on the Heisenberg fixture, round-trips for every document
//! kind, and the 0/1/2 exit-code contract.

use nil2::doc;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_nil2")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .expect("golden file exists")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn assert_golden(out: &Output, golden_name: &str, expect_code: i32) {
    assert_eq!(
        code_of(out),
        expect_code,
        "exit code for {golden_name}; stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        stdout_of(out),
        golden(golden_name),
        "stdout for {golden_name}"
    );
}

struct TempDir(PathBuf);

impl TempDir {
    fn new() -> Self {
        let dir = std::env::temp_dir().join(format!(
            "nil2-cli-test-{}-{:x}",
            std::process::id(),
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .unwrap()
                .as_nanos()
        ));
        std::fs::create_dir_all(&dir).unwrap();
        Self(dir)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn parse_file(path: &Path) -> doc::DocumentFile {
    doc::parse_document(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn criterion_9_cli_contract() {
    let tmp = TempDir::new();
    let heis = fixture("heisenberg.json");
    let heis_arg = heis.to_str().unwrap();

    // Golden: info.
    assert_golden(&run(&["info", heis_arg]), "info.txt", 0);

    // A zero-form algebra reports a full radical.
    let out = run(&["info", fixture("zero2.json").to_str().unwrap()]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("dim ker omega: 2"));
    assert!(text.contains("nonsingular: no"));

    // Golden: extend, then quotient by the recorded U + t ideal round-trips
    // to the input presentation entrywise.
    let ext = tmp.path("ext.json");
    let ext_arg = ext.to_str().unwrap();
    assert_golden(&run(&["extend", heis_arg, ext_arg]), "extend.txt", 0);
    let back = tmp.path("back.json");
    assert_golden(
        &run(&["quotient", ext_arg, back.to_str().unwrap(), "--ideal-ut"]),
        "quotient.txt",
        0,
    );
    let (input_alg, _) = doc::decode_algebra(&parse_file(&heis)).unwrap();
    let (back_alg, _) = doc::decode_algebra(&parse_file(&back)).unwrap();
    assert!(
        back_alg.same_presentation(&input_alg),
        "round-trip changed the forms"
    );

    // Extending twice doubles V again and adds another central generator.
    let ext2 = tmp.path("ext2.json");
    assert_eq!(
        code_of(&run(&["extend", ext_arg, ext2.to_str().unwrap()])),
        0
    );
    let (ext2_alg, _) = doc::decode_algebra(&parse_file(&ext2)).unwrap();
    assert_eq!((ext2_alg.n(), ext2_alg.m()), (8, 3));

    // Golden: sum with the empty algebra is the identity transform.
    let sum = tmp.path("sum.json");
    assert_golden(
        &run(&[
            "sum",
            heis_arg,
            fixture("empty.json").to_str().unwrap(),
            sum.to_str().unwrap(),
        ]),
        "sum.txt",
        0,
    );
    let (sum_alg, _) = doc::decode_algebra(&parse_file(&sum)).unwrap();
    assert!(sum_alg.same_presentation(&input_alg));

    // Golden: verify-hom, verified and refuted branches.
    let hom = fixture("hom_double.json");
    let hom_arg = hom.to_str().unwrap();
    let report = tmp.path("vh.json");
    let out = Command::new(bin())
        .args(["verify-hom", heis_arg, heis_arg, hom_arg])
        .args(["--out", report.to_str().unwrap()])
        .output()
        .unwrap();
    assert_golden(&out, "verify_hom.txt", 0);
    let report_doc = parse_file(&report);
    let doc::DocumentBody::Report(r) = &report_doc.body else {
        panic!("expected a report document");
    };
    let input_digest = doc::document_digest(&parse_file(&heis));
    assert_eq!(
        r.report["inputs"]["source"],
        serde_json::json!(input_digest)
    );
    assert_eq!(
        code_of(&run(&[
            "verify-hom",
            heis_arg,
            heis_arg,
            fixture("hom_bad.json").to_str().unwrap()
        ])),
        1,
        "refuted hom must exit 1"
    );

    // Golden: lift-iso; the lifted pair verifies between the extensions.
    let lift = tmp.path("lift.json");
    assert_golden(
        &run(&[
            "lift-iso",
            heis_arg,
            heis_arg,
            hom_arg,
            lift.to_str().unwrap(),
        ]),
        "lift_iso.txt",
        0,
    );
    assert_eq!(
        code_of(&run(&[
            "verify-hom",
            ext_arg,
            ext_arg,
            lift.to_str().unwrap()
        ])),
        0,
        "lifted hom must verify on the extensions"
    );

    // Golden: certify --search is conclusively not-found on Heisenberg
    // (exit 1) and succeeds on the double, whose certificate then verifies.
    assert_golden(
        &run(&["certify", heis_arg, "--search"]),
        "certify_search.txt",
        1,
    );
    // Odd V-dimension always certifies through coordinate functionals.
    assert_eq!(
        code_of(&run(&[
            "certify",
            fixture("odd3.json").to_str().unwrap(),
            "--search"
        ])),
        0
    );
    let double = tmp.path("double.json");
    assert_eq!(
        code_of(&run(&["sum", heis_arg, heis_arg, double.to_str().unwrap()])),
        0
    );
    let cert = tmp.path("cert.json");
    let out = Command::new(bin())
        .args(["certify", double.to_str().unwrap(), "--search"])
        .args(["--out", cert.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        code_of(&run(&[
            "certify",
            double.to_str().unwrap(),
            "--family",
            cert.to_str().unwrap()
        ])),
        0,
        "searched certificate must re-verify"
    );
    // The certificate is digest-bound to the double, not to Heisenberg.
    assert_eq!(
        code_of(&run(&[
            "certify",
            heis_arg,
            "--family",
            cert.to_str().unwrap()
        ])),
        1,
        "digest binding must reject a foreign algebra"
    );

    // Golden: certify-ext with a fixed seed.
    assert_golden(
        &run(&["certify-ext", ext_arg, "--samples", "20", "--seed", "7"]),
        "certify_ext.txt",
        0,
    );

    // Golden: group operations.
    let e1 = fixture("e1.json");
    let e2 = fixture("e2.json");
    let (e1_arg, e2_arg) = (e1.to_str().unwrap(), e2.to_str().unwrap());
    let prod = tmp.path("prod.json");
    let out = Command::new(bin())
        .args(["group", "mul", heis_arg, e1_arg, e2_arg])
        .args(["--out", prod.to_str().unwrap()])
        .output()
        .unwrap();
    assert_golden(&out, "group_mul.txt", 0);
    assert_golden(
        &run(&["group", "inv", heis_arg, e1_arg]),
        "group_inv.txt",
        0,
    );
    assert_golden(
        &run(&["group", "comm", heis_arg, e1_arg, e2_arg]),
        "group_comm.txt",
        0,
    );
    assert_golden(
        &run(&["group", "root", heis_arg, e1_arg, "2"]),
        "group_root.txt",
        0,
    );

    // Golden: oracle iso / embed / sweep.
    assert_golden(
        &run(&["oracle", "iso", heis_arg, heis_arg, "--prime", "3"]),
        "oracle_iso.txt",
        0,
    );
    assert_eq!(
        code_of(&run(&[
            "oracle",
            "iso",
            heis_arg,
            fixture("zero2.json").to_str().unwrap(),
            "--prime",
            "3"
        ])),
        1,
        "non-isomorphic pair must exit 1"
    );
    assert_golden(
        &run(&["oracle", "embed", heis_arg, heis_arg, "--prime", "3"]),
        "oracle_embed.txt",
        0,
    );
    let sweep = tmp.path("sweep.json");
    let out = Command::new(bin())
        .args([
            "oracle", "sweep", "--dim-v", "2", "--dim-w", "1", "--prime", "3",
        ])
        .args(["--out", sweep.to_str().unwrap()])
        .output()
        .unwrap();
    assert_golden(&out, "oracle_sweep.txt", 0);

    // Round-trip parse(serialize(x)) = x for every document kind produced
    // above: algebra, hompair, element, certificate, report.
    for path in [&ext, &lift, &prod, &cert, &sweep] {
        let doc1 = parse_file(path);
        let doc2 = doc::parse_document(&doc::serialize_document(&doc1)).unwrap();
        assert_eq!(doc1, doc2, "round trip failed for {}", path.display());
        assert_eq!(doc::document_digest(&doc1), doc::document_digest(&doc2));
    }

    // Exit-code contract: 2 for parse errors naming the field, 2 for usage.
    let out = run(&["info", fixture("malformed.json").to_str().unwrap()]);
    assert_eq!(code_of(&out), 2, "malformed rational must exit 2");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("forms[0][0][1]"),
        "parse error must name the field, got: {stderr}"
    );
    assert_eq!(code_of(&run(&["info", "/nonexistent/nope.json"])), 2);
    assert_eq!(code_of(&run(&["no-such-command"])), 2);
    assert_eq!(
        code_of(&run(&["quotient", heis_arg, "/tmp/q.json"])),
        2,
        "missing ideal flags is a usage error"
    );

    println!(
        "criterion 9 PASS: golden files for every subcommand, document round-trips, \
         exit-code contract 0/1/2 verified"
    );
}
