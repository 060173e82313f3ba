use std::fs;

use prime_geodesic::cli::{run, LCache};
use prime_geodesic::geodesics::trace_l_value;

fn run_lib(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("prime-geodesic").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn example_row_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.csv");
    fs::write(&path, "n,delta,D,l,L1\n3,5,5,1,4.3040894096400246e-1\n").unwrap();
    let mut warn = Vec::new();
    let c = LCache::load(&path, &mut warn);
    assert!(warn.is_empty(), "{}", String::from_utf8_lossy(&warn));
    assert_eq!(c.len(), 1);
    assert_eq!(c.entries()[&3].fundamental, 5);
}

#[test]
fn bad_rows_are_skipped_with_warnings() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.csv");
    let text = "n,delta,D,l,L1\n\
                3,5,5,1,4.3040894096400246e-1\n\
                4,13,12,1,0.76\n\
                5,21,21,1,not-a-number\n\
                6,32,8,2,9.3483786021034580e-1\n\
                7,45\n";
    fs::write(&path, text).unwrap();
    let mut warn = Vec::new();
    let c = LCache::load(&path, &mut warn);
    let warn = String::from_utf8(warn).unwrap();
    assert_eq!(c.entries().keys().copied().collect::<Vec<_>>(), [3, 6]);
    assert_eq!(warn.lines().count(), 3, "{warn}");
    assert!(warn.contains(":3: skipped: delta = 13"), "{warn}");
}

#[test]
fn spot_check_discards_wrong_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.csv");
    // first accepted row is always re-derived
    fs::write(&path, "n,delta,D,l,L1\n3,5,5,1,0.5\n").unwrap();
    let mut warn = Vec::new();
    assert!(LCache::load(&path, &mut warn).is_empty());
    assert!(String::from_utf8(warn).unwrap().contains("recomputation"));
}

#[test]
fn unreadable_or_headerless_files_give_a_fresh_cache() {
    let dir = tempfile::tempdir().unwrap();
    let mut warn = Vec::new();
    assert!(LCache::load(dir.path(), &mut warn).is_empty());
    let path = dir.path().join("junk.csv");
    fs::write(&path, "a,b\n1,2\n").unwrap();
    assert!(LCache::load(&path, &mut warn).is_empty());
    assert!(!warn.is_empty());
}

#[test]
fn cli_fills_and_reuses_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.csv");
    let p = path.to_str().unwrap();
    let (code, first, _) = run_lib(&["--cache", p, "--output", "csv", "psi", "--x", "5000"]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,delta,D,l,L1"));
    let ns: Vec<u64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ns, (3..=70).collect::<Vec<_>>());
    assert!(text.contains("\n3,5,5,1,4.30408940964004"));
    let (code, second, _) = run_lib(&["--cache", p, "--output", "csv", "psi", "--x", "5000"]);
    assert_eq!(code, 0);
    assert_eq!(first, second);
    let back = LCache::load(&path, &mut Vec::new());
    for n in [3u64, 17, 70] {
        assert_eq!(back.entries()[&n].l1.to_bits(), trace_l_value(n).unwrap().l1.to_bits());
    }
}

#[test]
fn cache_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env.csv");
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_prime-geodesic"))
        .args(["psi", "--x", "100"])
        .env("PRIME_GEODESIC_CACHE", &path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 1 + 8);
}
