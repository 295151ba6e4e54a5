use std::fs;
use std::process::{Command, Output};

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .env_remove("HECKE_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn kl_longest_element_of_a2() {
    let o = hecke(&["kl", "--type", "A2", "--w", "s0.s1.s0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|l| l.ends_with("= 1*r^0")), "{out}");
}

#[test]
fn spec_check_exit_codes() {
    let bad = hecke(&["spec-check", "--type", "A1", "--q", "-1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("layer 1"));
    let good = hecke(&["spec-check", "--type", "A2", "--q", "2"]);
    assert_eq!(good.status.code(), Some(0));
    let cube = hecke(&["spec-check", "--type", "A2", "--q", "root-of-unity:3"]);
    assert_eq!(cube.status.code(), Some(1));
}

#[test]
fn hp_group_affine_a1() {
    let o = hecke(&["hp-group", "--type", "affine-A1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "e|1|1|2|1,0\ns0|2|0|2|1\ns1|2|0|2|1\nHP0=3 HP1=0\n");
}

#[test]
fn phicheck_conventions() {
    assert_eq!(hecke(&["phicheck", "--type", "A2"]).status.code(), Some(0));
    assert_eq!(hecke(&["phicheck", "--type", "A1", "--convention", "literal"]).status.code(), Some(3));
}

#[test]
fn usage_errors() {
    assert_eq!(hecke(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hecke(&["kl", "--type", "A2", "--bogus"]).status.code(), Some(2));
    assert_eq!(hecke(&["kl", "--type", "A2", "--w", "s7"]).status.code(), Some(2));
    assert_eq!(hecke(&["spec-check", "--type", "A1", "--q", "0"]).status.code(), Some(2));
    assert_eq!(hecke(&["spec-check", "--type", "A1", "--q", "generic"]).status.code(), Some(2));
}

#[test]
fn records_are_sorted_json() {
    let o = hecke(&["hp-group", "--type", "A2", "--format", "records"]);
    let out = stdout(&o);
    let last = out.lines().last().unwrap();
    assert_eq!(last, r#"{"hp0":3,"hp1":0,"kind":"hp"}"#);
    for l in out.lines() {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert!(v.get("kind").is_some());
    }
}

#[test]
fn homology_of_algebra_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("m2.alg");
    let mut text = String::from("dim=4 field=Q\n");
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                text.push_str(&format!("{} {} {} 1/1\n", 2 * i + j, 2 * j + l, 2 * i + l));
            }
        }
    }
    let mut lines: Vec<&str> = text.lines().skip(1).collect();
    lines.sort_by_key(|l| {
        let v: Vec<usize> = l.split(' ').take(3).map(|x| x.parse().unwrap()).collect();
        (v[0], v[1], v[2])
    });
    fs::write(&p, format!("dim=4 field=Q\n{}\n", lines.join("\n"))).unwrap();
    let path = p.to_str().unwrap();
    assert_eq!(stdout(&hecke(&["hh", "--algebra", path, "--n", "3"])), "HH=1,0,0,0\n");
    assert_eq!(stdout(&hecke(&["hc", "--algebra", path, "--n", "2"])), "HC=1,0,1\n");
    assert_eq!(stdout(&hecke(&["hp-findim", "--algebra", path])), "HP0=1 HP1=0\n");
    let budget = hecke(&["hh", "--algebra", path, "--n", "3", "--budget", "10"]);
    assert_eq!(budget.status.code(), Some(3));
}

#[test]
fn cache_roundtrip_and_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let fill = hecke(&["cache", "fill", "--type", "B2", "--cache-dir", d]);
    assert_eq!(fill.status.code(), Some(0));
    let file = dir.path().join("B2.kl");
    let first = fs::read_to_string(&file).unwrap();
    assert!(first.ends_with('\n'));
    let mut sorted: Vec<&str> = first.lines().collect();
    sorted.sort();
    assert_eq!(sorted, first.lines().collect::<Vec<_>>());
    assert_eq!(hecke(&["cache", "check", "--type", "B2", "--cache-dir", d]).status.code(), Some(0));
    let show = hecke(&["cache", "show", "--type", "B2", "--cache-dir", d]);
    assert_eq!(stdout(&show), first);

    let plain = stdout(&hecke(&["kl", "--type", "B2", "--w", "s0.s1.s0.s1"]));
    let cached = stdout(&hecke(&["kl", "--type", "B2", "--w", "s0.s1.s0.s1", "--cache-dir", d]));
    assert_eq!(plain, cached);
    assert_eq!(fs::read_to_string(&file).unwrap(), first);

    let env = Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(["cache", "check", "--type", "B2"])
        .env("HECKE_CACHE_DIR", d)
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(0));
}

#[test]
fn corrupt_cache_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    hecke(&["cache", "fill", "--type", "A2", "--cache-dir", d]);
    let file = dir.path().join("A2.kl");
    let text = fs::read_to_string(&file).unwrap().replace("A2|s0|s0|1", "A2|s0|s0|2");
    fs::write(&file, text).unwrap();
    let o = hecke(&["cache", "check", "--type", "A2", "--cache-dir", d]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line ") && err.contains("is not 1"), "{err}");
}

#[test]
fn output_is_deterministic() {
    let args = ["classes", "--type", "affine-A2"];
    assert_eq!(stdout(&hecke(&args)), stdout(&hecke(&args)));
    let s1 = stdout(&hecke(&["spec-check", "--type", "B2", "--q", "3", "--seed", "5"]));
    let s2 = stdout(&hecke(&["spec-check", "--type", "B2", "--q", "3", "--seed", "5"]));
    assert_eq!(s1, s2);
}
