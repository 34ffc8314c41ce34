use std::path::{Path, PathBuf};

use pifactor_cli::report::parse_kv;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn kv(&self, key: &str) -> Option<String> {
        let text = if self.stdout.starts_with("command=") {
            &self.stdout
        } else {
            &self.stderr
        };
        parse_kv(text)
            .into_iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v)
    }
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = ["pifactor", "--report-format", "kv"]
        .into_iter()
        .chain(args.iter().copied());
    let code = pifactor_cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with_stdin(args, "")
}

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const IDENTITY: &str = r#"{"schema_version":1,"field":"Q","rank":2,"blocks":[{"power":0,"matrix":[["1","0"],["0","1"]]}]}"#;

#[test]
fn example_family_matches_golden_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let (c, d) = (path(dir.path(), "c.json"), path(dir.path(), "d.json"));
    let r = run(&[
        "generate",
        "--kind",
        "example21",
        "--a",
        "1,1",
        "--m",
        "1,2",
        "--out-c",
        &c,
        "--out-d",
        &d,
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(
        std::fs::read(&c).unwrap(),
        std::fs::read(fixture("pseu2_c.json")).unwrap()
    );
    assert_eq!(
        std::fs::read(&d).unwrap(),
        std::fs::read(fixture("pseu2_d.json")).unwrap()
    );
}

#[test]
fn random_generation_is_reproducible() {
    let args = [
        "generate", "--kind", "random", "--rank", "3", "--seed", "7", "--field", "Qi",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout.lines().count(), 2);
    assert_ne!(
        a.stdout,
        run(&["generate", "--kind", "random", "--rank", "3", "--seed", "8", "--field", "Qi"])
            .stdout
    );
}

#[test]
fn decreasing_exponents_are_rejected() {
    let r = run(&[
        "generate",
        "--kind",
        "example21",
        "--a",
        "1,1",
        "--m",
        "2,1",
    ]);
    assert_eq!(r.code, 1);
    assert_eq!(r.kv("code").as_deref(), Some("NONINCREASING_EXPONENTS"));
    let r = run(&["generate", "--kind", "example21", "--a", "1", "--m", "1,2"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.kv("code").as_deref(), Some("BAD_PARAMS"));
}

#[test]
fn verify_accepts_golden_pair() {
    let r = run(&["verify", &fixture("pseu2_c.json"), &fixture("pseu2_d.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.kv("status").as_deref(), Some("ok"));
    assert_eq!(r.kv("genus_c").as_deref(), Some("3"));
}

#[test]
fn identity_pair_is_degenerate() {
    let dir = tempfile::tempdir().unwrap();
    let i = write(dir.path(), "i.json", IDENTITY);
    let r = run(&["verify", &i, &i]);
    assert_eq!(r.code, 0);
    assert!(
        r.stdout.contains("degenerate (constant) pair"),
        "{}",
        r.stdout
    );
}

#[test]
fn verify_names_failed_evaluation() {
    let dir = tempfile::tempdir().unwrap();
    let two = write(
        dir.path(),
        "two.json",
        r#"{"schema_version":1,"field":"Q","rank":2,"blocks":[{"power":0,"matrix":[["2","0"],["0","1/2"]]}]}"#,
    );
    let r = run(&["verify", &two, &two]);
    assert_eq!(r.code, 2);
    assert_eq!(r.kv("status").as_deref(), Some("violation"));
    assert!(r
        .kv("violations")
        .unwrap()
        .contains("EVAL_ONE_NOT_IDENTITY"));
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = write(dir.path(), "g.json", "{ not json");
    let r = run(&["verify", &garbage, &garbage]);
    assert_eq!((r.code, r.kv("code").as_deref()), (1, Some("PARSE_ERROR")));

    let extra = write(
        dir.path(),
        "x.json",
        r#"{"schema_version":1,"field":"Q","rank":2,"blocks":[],"extra":true}"#,
    );
    let r = run(&["verify", &extra, &extra]);
    assert_eq!((r.code, r.kv("code").as_deref()), (1, Some("SCHEMA_ERROR")));

    let bad_scalar = write(
        dir.path(),
        "s.json",
        r#"{"schema_version":1,"field":"Q","rank":1,"blocks":[{"power":0,"matrix":[["1/0"]]}]}"#,
    );
    assert_eq!(run(&["verify", &bad_scalar, &bad_scalar]).code, 1);

    let missing = path(dir.path(), "missing.json");
    let r = run(&["verify", &missing, &missing]);
    assert_eq!((r.code, r.kv("code").as_deref()), (1, Some("IO_ERROR")));

    assert_eq!(run(&["factor"]).code, 1);
}

#[test]
fn factor_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for (input, strategy, emit) in [
        ("pseu2_c.json", "general", "nilpotent"),
        ("pseu2_c.json", "rank2-euclid", "nilpotent"),
        ("pseu2_c.json", "general", "lattice"),
        ("rank3_c.json", "general", "nilpotent"),
        ("rank3_c.json", "general", "lattice"),
    ] {
        let out = path(dir.path(), &format!("{input}_{strategy}_{emit}"));
        let c = fixture(input);
        let r = run(&[
            "factor",
            &c,
            "--strategy",
            strategy,
            "--emit",
            emit,
            "-o",
            &out,
        ]);
        assert_eq!(r.code, 0, "{input} {strategy} {emit}: {}", r.stdout);
        assert_eq!(r.kv("verified").as_deref(), Some("true"));
        let v = run(&["factor", &c, "--verify", &out]);
        assert_eq!(v.code, 0, "{input} {strategy} {emit}: {}", v.stdout);
    }
}

#[test]
fn golden_factor_lists_verify() {
    let r = run(&[
        "factor",
        &fixture("pseu2_c.json"),
        "--verify",
        &fixture("pseu2_factors.json"),
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.kv("sum_k").as_deref(), Some("3"));
    assert_eq!(r.kv("degree").as_deref(), Some("2"));
    let r = run(&[
        "factor",
        &fixture("rank3_c.json"),
        "--verify",
        &fixture("rank3_factors.json"),
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn mismatched_factor_list_exits_two() {
    let r = run(&[
        "factor",
        &fixture("pseu2_c.json"),
        "--verify",
        &fixture("rank3_factors.json"),
    ]);
    assert_eq!(r.code, 2);
    assert_eq!(r.kv("code").as_deref(), Some("FACTORIZATION_MISMATCH"));
}

#[test]
fn non_nilpotent_factor_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f.json",
        r#"{"schema_version":1,"rank":2,"order_note":"C(z) = L_1(z) L_2(z) ... L_r(z) in list order, where L_i(z) = I - N_i + N_i z^-k_i","factors":[{"k":1,"N":[["1","0"],["0","0"]]}]}"#,
    );
    let r = run(&["factor", &fixture("pseu2_c.json"), "--verify", &f]);
    assert_eq!(
        (r.code, r.kv("code").as_deref()),
        (2, Some("NOT_NILPOTENT"))
    );
}

#[test]
fn euclid_strategy_needs_rank_two() {
    let r = run(&[
        "factor",
        &fixture("rank3_c.json"),
        "--strategy",
        "rank2-euclid",
    ]);
    assert_eq!((r.code, r.kv("code").as_deref()), (2, Some("RANK_NOT_TWO")));
}

#[test]
fn factor_reads_stdin_and_writes_stdout() {
    let text = std::fs::read_to_string(fixture("pseu2_c.json")).unwrap();
    let r = run_with_stdin(&["factor", "-"], &text);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.lines().count(), 1);
    assert!(r.stdout.starts_with(r#"{"schema_version":1,"rank":2,"#));
    assert_eq!(r.kv("command").as_deref(), Some("factor"));
}

#[test]
fn trivial_bundle_gives_haar_pair() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(
        dir.path(),
        "b.json",
        r#"{"schema_version":1,"field":"Q","rank":2,"k0":0,"paraunitary":[],"nil_factors":[],"G":[["1"]]}"#,
    );
    let (l, r) = (path(dir.path(), "l.json"), path(dir.path(), "r.json"));
    let c = run(&["wavelet", "compose", &b, "--out-l", &l, "--out-r", &r]);
    assert_eq!(c.code, 0, "{}", c.stdout);
    let haar = "{\n  \"schema_version\": 1,\n  \"field\": \"Q\",\n  \"rank\": 2,\n  \"blocks\": [\n    {\n      \
                \"power\": 0,\n      \"matrix\": [\n        [\"1\", \"1\"],\n        [\"1\", \"-1\"]\n      ]\n    }\n  ]\n}\n";
    assert_eq!(std::fs::read_to_string(&l).unwrap(), haar);
    assert_eq!(std::fs::read_to_string(&r).unwrap(), haar);
    let v = run(&["wavelet", "verify", &l, &r, "--bundle", &b]);
    assert_eq!(v.code, 0, "{}", v.stdout);
}

#[test]
fn identity_is_not_a_wavelet_pair() {
    let dir = tempfile::tempdir().unwrap();
    let i = write(dir.path(), "i.json", IDENTITY);
    let r = run(&["wavelet", "verify", &i, &i]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.contains("LINEAR_VIOLATION"), "{}", r.stdout);
}

#[test]
fn rank_three_bundle_needs_explicit_h() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(
        dir.path(),
        "b.json",
        r#"{"schema_version":1,"field":"Q","rank":3,"k0":0,"paraunitary":[],"nil_factors":[],"G":[["1","0"],["0","1"]]}"#,
    );
    let r = run(&["wavelet", "compose", &b]);
    assert_eq!(
        (r.code, r.kv("code").as_deref()),
        (2, Some("HAAR_UNDEFINED"))
    );
}

#[test]
fn demo_reports_counterexample() {
    let r = run(&["demo-counterexample"]);
    assert_eq!(r.code, 0);
    for (key, value) in [
        ("p", "1"),
        ("c_block_det", "0"),
        ("conjecture_holds", "false"),
        ("weaker_condition_solvable", "false"),
        ("factorization_verified", "true"),
        ("sum_k", "3"),
        ("degree", "2"),
        ("degrees_add_up", "false"),
    ] {
        assert_eq!(r.kv(key).as_deref(), Some(value), "{key}");
    }
}

#[test]
fn help_exits_zero() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("demo-counterexample"));
}
