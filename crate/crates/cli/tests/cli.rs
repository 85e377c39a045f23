use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_plane-turan"))
}

fn run(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("plane-turan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const HEXAGON: &str = "pg 6\n1: 2 6\n2: 3 1\n3: 4 2\n4: 5 3\n5: 6 4\n6: 1 5\n";
const BOWTIE: &str = "pg 5\n1: 2 3 4 5\n2: 3 1\n3: 1 2\n4: 5 1\n5: 1 4\n";

#[test]
fn gen_moon_moser_has_order_16() {
    let g = run(&["gen", "moon-moser", "--level", "2"], b"");
    assert_eq!(g.status.code(), Some(0));
    assert!(stderr(&g).contains("moon-moser level=2 order=16"));
    let a = run(&["analyze"], &g.stdout);
    assert!(stdout(&a).contains("n 16 e 42 f 28"), "{}", stdout(&a));
}

#[test]
fn gen_glued_echoes_spec() {
    let g = run(&["gen", "glued", "--k", "14", "--n", "30"], b"");
    assert_eq!(g.status.code(), Some(0));
    assert!(stderr(&g).contains("m=9 t=4 n'=0"), "{}", stderr(&g));
    assert!(stdout(&g).starts_with("pg 30\n"));
}

#[test]
fn seeded_generation_is_deterministic() {
    let args = [
        "gen",
        "random-2c",
        "--n",
        "20",
        "--target-m",
        "1",
        "--seed",
        "1",
    ];
    let a = run(&args, b"");
    let b = run(&args, b"");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = run(
        &[
            "gen",
            "random-2c",
            "--n",
            "20",
            "--target-m",
            "1",
            "--seed",
            "2",
        ],
        b"",
    );
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn planar_code_round_trips_through_analyze() {
    let gens: [&[&str]; 4] = [
        &["gen", "moon-moser", "--level", "3"],
        &["gen", "glued", "--k", "14", "--n", "33"],
        &[
            "gen",
            "random-2c",
            "--n",
            "25",
            "--target-m",
            "4",
            "--seed",
            "9",
        ],
        &["gen", "near-tri", "--n", "12", "--seed", "3"],
    ];
    for (i, args) in gens.iter().enumerate() {
        let mut args = args.to_vec();
        args.extend(["--format", "planar_code"]);
        let g = run(&args, b"");
        assert_eq!(g.status.code(), Some(0));
        let path = scratch(&format!("round-{i}.pc"));
        let a = run(
            &[
                "analyze",
                "--format",
                "planar_code",
                "--emit",
                path.to_str().unwrap(),
            ],
            &g.stdout,
        );
        assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
        assert_eq!(std::fs::read(&path).unwrap(), g.stdout, "{args:?}");
    }
}

#[test]
fn analyze_reports_flags() {
    let hex = stdout(&run(&["analyze"], HEXAGON.as_bytes()));
    assert!(
        hex.contains("  m 3\n") && hex.contains("circuit-graph true"),
        "{hex}"
    );

    let k4 = run(&["gen", "near-tri", "--n", "4", "--seed", "0"], b"");
    let k4 = stdout(&run(&["analyze"], &k4.stdout));
    assert!(
        k4.contains("  m 0\n") && k4.contains("near-triangulation true"),
        "{k4}"
    );

    let bow = stdout(&run(&["analyze"], BOWTIE.as_bytes()));
    assert!(
        bow.contains("two-connected false") && bow.contains("partial"),
        "{bow}"
    );
    assert!(bow.contains("circuit-graph false") && bow.contains("near-triangulation false"));
}

#[test]
fn analyze_reports_parse_errors() {
    let a = run(&["analyze"], b"pg 3\n1: 2 3\n2: 1 3\n3: 1 7\n");
    assert_eq!(a.status.code(), Some(2));
    assert!(stderr(&a).contains("line"), "{}", stderr(&a));
}

#[test]
fn extract_exit_statuses() {
    let tri = run(&["gen", "near-tri", "--n", "9", "--seed", "4"], b"");
    let found = run(&["extract", "--t", "5"], &tri.stdout);
    assert_eq!(found.status.code(), Some(0));
    assert!(stdout(&found).starts_with("near-triangulation\n"));
    assert!(stdout(&found).contains("order 9\n"));

    let hex = run(&["extract", "--t", "4"], HEXAGON.as_bytes());
    assert_eq!(hex.status.code(), Some(3));

    let bad = run(&["extract", "--t", "3"], HEXAGON.as_bytes());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cycle_queries() {
    let k4 = run(&["gen", "near-tri", "--n", "4", "--seed", "0"], b"");
    let longest = stdout(&run(&["cycles", "longest"], &k4.stdout));
    assert!(longest.contains("longest exact 4:"), "{longest}");
    let three = stdout(&run(&["cycles", "exact-k", "--k", "3"], &k4.stdout));
    assert!(three.contains("cycle 3: "), "{three}");
    let five = stdout(&run(&["cycles", "exact-k", "--k", "5"], &k4.stdout));
    assert!(five.contains("cycle 5: none"));

    let glued = run(&["gen", "glued", "--k", "7", "--n", "12"], b"");
    let two = run(&["cycles", "two-k", "--k", "7"], &glued.stdout);
    assert_eq!(two.status.code(), Some(0));
    assert!(stdout(&two).contains("two 7-cycles: none"));
}

#[test]
fn verify_statuses() {
    let empty = run(&["verify", "lemmas", "--seed", "1", "--trials", "0"], b"");
    assert_eq!(empty.status.code(), Some(0));
    assert!(stdout(&empty).contains("0 records"));

    let mutant = run(
        &[
            "verify",
            "lemmas",
            "--seed",
            "1",
            "--trials",
            "4",
            "--mutant",
            "joinable-off-by-one",
            "--json",
        ],
        b"",
    );
    assert_eq!(mutant.status.code(), Some(4));
    let line = stdout(&mutant)
        .lines()
        .find(|l| l.contains("\"fail\""))
        .unwrap()
        .to_string();
    assert!(line.contains("\"counterexample\":{\"graph\":\"pg "));

    let glued = run(
        &["verify", "glued", "--seed", "0", "--k", "5", "--n", "20"],
        b"",
    );
    assert_eq!(glued.status.code(), Some(0));
    assert!(stdout(&glued).contains("n/a"));

    let unseeded = run(&["verify", "lemmas"], b"");
    assert_eq!(unseeded.status.code(), Some(2));
}

#[test]
fn bounds_profile_output() {
    let b = stdout(&run(&["bounds", "--n", "10", "--t", "4", "--k", "5"], b""));
    assert!(b.contains("extraction_threshold 7/5"), "{b}");
    assert!(b.contains("two_ck_lower not instantiable"));
    let b = stdout(&run(&["bounds", "--n", "30", "--t", "4", "--k", "14"], b""));
    assert!(b.contains("two_ck_lower 74.000000000"));
}

#[test]
fn config_is_echoed_and_usage_errors_exit_2() {
    let b = run(&["bounds", "--n", "10", "--t", "4", "--k", "5"], b"");
    let first = stdout(&b).lines().next().unwrap().to_string();
    assert!(first.starts_with("# config {") && first.contains("\"n\":10"));
    assert_eq!(run(&["bounds", "--n", "10"], b"").status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], b"").status.code(), Some(2));
}
