use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const ZETA2: &str = "1.644934066848226436472415166646025";
const EIGHT_ZETA4: &str = "8.658585869689105532128029572329343";

struct Sandbox {
    dir: tempfile::TempDir,
}

impl Sandbox {
    fn new() -> Self {
        Sandbox {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn cache(&self) -> PathBuf {
        self.dir.path().join("cache").join("zeta.tsv")
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_mzv"))
            .args(args)
            .env("MZV_CACHE", self.cache())
            .env("XDG_CACHE_HOME", self.dir.path())
            .env_remove("RUST_LOG")
            .output()
            .unwrap()
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn eval(sb: &Sandbox, expr: &str) -> String {
    let mut args = vec!["eval"];
    args.extend(expr.split_whitespace());
    let out = sb.run(&args);
    assert_eq!(code(&out), 0, "{expr}: {}", stderr(&out));
    stdout(&out).trim().to_string()
}

#[test]
fn eval_examples() {
    let sb = Sandbox::new();
    assert!(eval(&sb, "zeta 2").starts_with(ZETA2));
    assert_eq!(eval(&sb, "zeta 2,1"), eval(&sb, "zeta 3"));
    assert!(eval(&sb, "S 4 1 x=2 y=5").starts_with(EIGHT_ZETA4));
    // ζ(2,2) + 2ζ(3,1) = 5ζ(4)/4
    assert!(eval(&sb, "Z 4 2 1").starts_with("1.35290404213892273939"));
    // Li_{1,1}(1/2) = (log 2)^2 / 2
    assert!(eval(&sb, "li 1,1 @ 0.5").starts_with("0.24022650695910071233"));
    assert_eq!(eval(&sb, "li 1,1 @ 1/2"), eval(&sb, "li 1,1 @ 0.5"));
    assert!(!eval(&sb, "Sdq 7 3 p=0 q=1 x=2 y=1").is_empty());
    let wide = eval(&sb, "--precision 60 zeta 2");
    assert_eq!(wide.len(), eval(&sb, "zeta 2").len() + 20);
}

#[test]
fn eval_errors_map_to_exit_codes() {
    let sb = Sandbox::new();
    assert_eq!(code(&sb.run(&["eval", "zeta", "1,2"])), 3);
    assert_eq!(code(&sb.run(&["eval", "li", "2", "@", "0.9"])), 3);
    assert_eq!(code(&sb.run(&["eval", "zeta", "two"])), 2);
    assert_eq!(code(&sb.run(&["eval", "frobnicate", "3"])), 2);
    assert_eq!(code(&sb.run(&["eval", "--precision", "20", "zeta", "2"])), 2);
    assert_eq!(code(&sb.run(&["nonsense"])), 2);
}

#[test]
fn verify_theorem_two_and_formats() {
    let sb = Sandbox::new();
    let out = sb.run(&["verify", "--ids", "THM_2", "--weight-cap", "10", "--samples", "3", "--seed", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 24);
    assert!(text.lines().all(|l| l.contains(r#""pass":true"#)));
    assert!(stderr(&out).contains("24 checked, 24 passed, 0 failed"));

    let csv = stdout(&sb.run(&["verify", "--ids", "EULER_SUM", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 1 + 7);
    assert!(csv.starts_with("id,params,residual,tolerance,pass"));
    let table = stdout(&sb.run(&["verify", "--ids", "EULER_SUM,GUO_XIE_D4", "--format", "table"]));
    assert!(table.lines().next().unwrap().starts_with("ID"));
    assert_eq!(table.lines().count(), 1 + 7 + 5);
}

#[test]
fn verify_usage_errors() {
    let sb = Sandbox::new();
    assert_eq!(code(&sb.run(&["verify", "--ids", "PROP_4_2_I", "--weight-cap", "4"])), 2);
    assert_eq!(code(&sb.run(&["verify", "--weight-cap", "15"])), 2);
    assert_eq!(code(&sb.run(&["verify", "--ids", "NOT_AN_ID"])), 2);
    assert_eq!(code(&sb.run(&["verify", "--format", "xml"])), 2);
}

#[test]
fn verify_all_is_deterministic_and_fills_the_cache() {
    let sb = Sandbox::new();
    let a = sb.run(&["verify", "--seed", "5"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    let b = sb.run(&["verify", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let c = sb.run(&["verify", "--seed", "6"]);
    assert_ne!(a.stdout, c.stdout);
    assert!(!stdout(&a).contains("elapsed"));

    let stats = stdout(&sb.run(&["cache", "stats"]));
    let entries: usize = stats
        .lines()
        .find_map(|l| l.strip_prefix("entries: "))
        .unwrap()
        .parse()
        .unwrap();
    // 2^(l-2) admissible indices of each weight l ≤ 9.
    assert!(entries >= 255, "{stats}");
    assert!(stats.contains("hit ratio: 0.9"), "{stats}");
}

#[test]
fn cache_round_trip() {
    let sb = Sandbox::new();
    let before = eval(&sb, "zeta 2,1");
    let backup = sb.path("backup.tsv");
    let backup_s = backup.to_str().unwrap();
    assert_eq!(code(&sb.run(&["cache", "export", backup_s])), 0);
    assert_eq!(code(&sb.run(&["cache", "clear"])), 0);
    assert!(stdout(&sb.run(&["cache", "stats"])).contains("entries: 0"));
    assert_eq!(code(&sb.run(&["cache", "import", backup_s])), 0);
    assert!(stdout(&sb.run(&["cache", "stats"])).contains("entries: 1"));
    assert_eq!(eval(&sb, "zeta 2,1"), before);
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn cache_import_is_tolerant_but_reports_io_errors() {
    let sb = Sandbox::new();
    let bad = sb.path("bad.tsv");
    write(&bad, "3\t40\t1.2020569031595942853997381615114499907649862923405\nthis is not a record\n1,1\t40\t2.0\n");
    let out = sb.run(&["cache", "import", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("imported 1 entries, skipped 2"));
    assert!(stderr(&out).contains("WARN"));
    let missing = sb.path("missing.tsv");
    assert_eq!(code(&sb.run(&["cache", "import", missing.to_str().unwrap()])), 4);
}

#[test]
fn bench_table_shape() {
    let sb = Sandbox::new();
    let out = sb.run(&["bench", "--weight-cap", "6"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let rows = text.lines().skip(1).take_while(|l| !l.contains("indices;")).count();
    assert_eq!(rows, 31);
    let speedup: f64 = text
        .split("(x")
        .nth(1)
        .and_then(|s| s.split(')').next())
        .unwrap()
        .parse()
        .unwrap();
    assert!(speedup >= 10.0, "{text}");
    let max_line = text.lines().find(|l| l.starts_with("max error")).unwrap();
    let conv: f64 = max_line
        .split("convolution ")
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(conv < 1e-35, "{max_line}");
}
