use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monocoronal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn enumerate_tables() {
    let a = cli(&["enumerate", "f2f"]);
    assert!(a.status.success());
    let text = stdout(&a);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 17);
    assert_eq!(rows.iter().filter(|l| l.contains("infeasible")).count(), 7);
    assert_eq!(rows.iter().filter(|l| l.contains("realizable")).count(), 10);
    assert_eq!(stdout(&cli(&["enumerate", "f2f"])), text);

    let non = stdout(&cli(&["enumerate", "nonf2f"]));
    let rows: Vec<&str> = non.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|l| l.contains("realizable")));
}

#[test]
fn generate_verify_render() {
    let dir = tempfile::tempdir().unwrap();
    let patch = dir.path().join("p.txt");
    let o = cli(&["generate", "f2f/6tr-5seg", "-o", path(&patch)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    for mode in ["full", "direct"] {
        let v = cli(&["verify", path(&patch), "--mode", mode]);
        assert_eq!(v.status.code(), Some(0));
        assert!(stdout(&v).contains("monocoronal: true"));
    }

    let svg = dir.path().join("p.svg");
    assert!(cli(&["render", path(&patch), "-o", path(&svg)]).status.success());
    let first = std::fs::read_to_string(&svg).unwrap();
    let again = stdout(&cli(&["render", path(&patch)]));
    assert_eq!(first, again);
    let tiles = std::fs::read_to_string(&patch)
        .unwrap()
        .lines()
        .filter(|l| l.starts_with("tile "))
        .count();
    assert_eq!(first.matches("<path ").count(), tiles);
}

/// Aligned unit squares below y = 4, a running bond above it.
fn mixed_squares() -> String {
    let c = |v: i64| if v % 2 == 0 { format!("[{},0,0,0]", v / 2) } else { format!("[{v}/2,0,0,0]") };
    let mut tiles = Vec::new();
    for row in 0..8i64 {
        let shift = i64::from(row >= 4);
        for col in -8..8i64 {
            let (x, y) = (2 * col + shift, 2 * row);
            tiles.push(format!(
                "tile 4 {} {} {} {} {} {} {} {}",
                c(x),
                c(y),
                c(x + 2),
                c(y),
                c(x + 2),
                c(y + 2),
                c(x),
                c(y + 2)
            ));
        }
    }
    format!(
        "monocoronal-patch v1\norigin [0,0,0,0] [4,0,0,0]\nradius [3,0,0,0]\ntiles {}\n{}\n",
        tiles.len(),
        tiles.join("\n")
    )
}

#[test]
fn verify_rejects_mixed_patch() {
    let dir = tempfile::tempdir().unwrap();
    let mixed = dir.path().join("mixed.txt");
    std::fs::write(&mixed, mixed_squares()).unwrap();
    let v = cli(&["verify", path(&mixed)]);
    assert_eq!(v.status.code(), Some(1), "{}", String::from_utf8_lossy(&v.stderr));
    let out = stdout(&v);
    assert!(out.contains("monocoronal: false"));
    assert!(out.contains("face-to-face: false"));
    assert!(out.contains("witness: "));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["generate", "f2f/nope"]).status.code(), Some(2));
    assert_eq!(cli(&["generate", "f2f/6tr-5seg", "--params", "zz=1"]).status.code(), Some(2));
    assert_eq!(cli(&["stack", "R,P", "--seq", "per:"]).status.code(), Some(2));
    assert_eq!(cli(&["rank", "(stack 3"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "monocoronal-patch v1\norigin [0,0,0,0] [0,0,0,0]\nradius x\n").unwrap();
    let v = cli(&["verify", path(&bad)]);
    assert_eq!(v.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&v.stderr).contains("line 3"));
}

#[test]
fn patch_too_small_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let patch = dir.path().join("p.txt");
    assert!(cli(&["generate", "f2f/4tr-hex", "-o", path(&patch)]).status.success());
    assert_eq!(cli(&["symmetry", "--patch", path(&patch)]).status.code(), Some(3));
}

#[test]
fn symmetry_of_family_and_patch() {
    let fam = stdout(&cli(&["symmetry", "f2f/6tr-5seg", "--special", "equilateral"]));
    assert!(fam.starts_with("group: ∗632\ntranslation rank: 2\n"));

    let dir = tempfile::tempdir().unwrap();
    let patch = dir.path().join("p.txt");
    assert!(cli(&["generate", "f2f/4tr-hex", "--radius", "10", "-o", path(&patch)])
        .status
        .success());
    let bare = stdout(&cli(&["symmetry", "--patch", path(&patch)]));
    assert!(bare.starts_with("group: 632\n"));
}

#[test]
fn stack_and_rank() {
    let s = cli(&["stack", "R,P", "--seq", "per:101100", "--check"]);
    assert_eq!(s.status.code(), Some(0));
    assert_eq!(stdout(&s), "group: ∗∗\ngeometric: ∗∗\n");
    assert_eq!(stdout(&cli(&["stack", "I,P", "--seq", "sand:0||1"])), "group: ∞×\n");

    let r = stdout(&cli(&["rank", "(thm4 7 congruence)"]));
    assert!(r.contains("period rank: 4\n"));
    let r = stdout(&cli(&["rank", "(thm5 3 congruence sand:0|1|1)"]));
    assert!(r.contains("period rank: 0\n"));
    assert!(r.contains("even-cube:4"));
}

#[test]
fn params_and_special_cases() {
    let o = cli(&["generate", "f2f/6tr-5seg", "--special", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let a = stdout(&cli(&["generate", "f2f/6tr-5seg", "--special", "equilateral", "--radius", "2"]));
    assert!(a.starts_with("monocoronal-patch v1\n"));
}
