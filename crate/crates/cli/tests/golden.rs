//! Byte-for-byte comparison of reports against `golden/*.out`.
//! Run with `ADMGRAD_BLESS=1` to rewrite the expected files.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

struct Case {
    spec: &'static str,
    args: &'static [&'static str],
    code: i32,
    golden: &'static str,
}

const CASES: &[Case] = &[
    Case { spec: "staircase-sl4", args: &["check"], code: 0, golden: "staircase-sl4.check" },
    Case { spec: "staircase-sl4-negative", args: &["check"], code: 1, golden: "staircase-sl4-negative.check" },
    Case { spec: "staircase-sl4", args: &["construct"], code: 0, golden: "staircase-sl4.construct" },
    Case { spec: "staircase-sl4", args: &["connect"], code: 0, golden: "staircase-sl4.connect" },
    Case { spec: "staircase-sl4-second", args: &["chain"], code: 0, golden: "staircase-sl4-second.chain" },
    Case { spec: "corner-sl3", args: &["check"], code: 0, golden: "corner-sl3.check" },
    Case { spec: "corner-sl3", args: &["connect"], code: 0, golden: "corner-sl3.connect" },
    Case { spec: "three-block-sl11", args: &["construct", "--optimal"], code: 1, golden: "three-block-sl11.optimal" },
    Case { spec: "three-block-sl11", args: &["connect"], code: 0, golden: "three-block-sl11.connect" },
    Case { spec: "twin-block-sl8-pair", args: &["chain"], code: 0, golden: "twin-block-sl8-pair.chain" },
    Case { spec: "twin-block-sl8", args: &["construct"], code: 0, golden: "twin-block-sl8.construct" },
    Case { spec: "dynkin-sl4-2-2", args: &["construct"], code: 0, golden: "dynkin-sl4-2-2.construct" },
    Case { spec: "dynkin-sl4-2-2", args: &["connect"], code: 0, golden: "dynkin-sl4-2-2.connect" },
    Case { spec: "dynkin-sl4-2-2", args: &["chain"], code: 0, golden: "dynkin-sl4-2-2.chain" },
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden")
}

fn run(case: &Case) -> (i32, String) {
    let spec = golden_dir().join(format!("{}.spec", case.spec));
    let out = Command::new(env!("CARGO_BIN_EXE_admgrad"))
        .args(case.args)
        .arg("--spec")
        .arg(&spec)
        .output()
        .expect("binary runs");
    (out.status.code().expect("exited"), String::from_utf8(out.stdout).expect("utf-8 report"))
}

#[test]
fn reports_match_golden_files() {
    let bless = std::env::var_os("ADMGRAD_BLESS").is_some();
    let mut mismatched = Vec::new();
    for case in CASES {
        let (code, report) = run(case);
        assert_eq!(code, case.code, "exit code for {} {:?}", case.spec, case.args);
        let path = golden_dir().join(format!("{}.out", case.golden));
        if bless {
            fs::write(&path, &report).unwrap();
            continue;
        }
        let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if expected != report {
            mismatched.push(case.golden);
        }
    }
    assert!(mismatched.is_empty(), "reports differ from golden files: {mismatched:?}");
}

#[test]
fn reports_are_deterministic() {
    for case in CASES.iter().filter(|c| c.spec == "three-block-sl11" || c.spec == "twin-block-sl8-pair") {
        assert_eq!(run(case), run(case), "{}", case.golden);
    }
}
