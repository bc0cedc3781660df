use std::process::{Command, Output};

use khovanov::output::KnotDocument;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khovanov")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn trefoil_csv() {
    let o = run(&["kh", "--knot", "torus:2,3", "--ring", "Q", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(str::to_string).collect();
    assert_eq!(rows, ["0,1,1", "0,3,1", "2,5,1", "3,9,1"]);
}

#[test]
fn unknot_json_over_f2() {
    let o = run(&["kh", "--knot", "pd:PD[]", "--ring", "F2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: KnotDocument = serde_json::from_str(&stdout(&o)).unwrap();
    let t = doc.table();
    assert_eq!((t.rank(0, -1), t.rank(0, 1), t.total_rank()), (1, 1, 2));
    assert!(doc.thin);
}

#[test]
fn cube_flag_agrees_with_scan() {
    let a = run(&["kh", "--knot", "corpus:6_2", "--format", "csv"]);
    let b = run(&["kh", "--knot", "corpus:6_2", "--format", "csv", "--cube"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn figure_eight_bounds_vanish() {
    let o = run(&["bounds", "--knot", "corpus:4_1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let docs = v.as_array().expect("one document per ring");
    assert_eq!(docs.len(), 2);
    for d in docs {
        let b = &d["bounds"];
        for key in ["alt_lb", "dthin_lb", "turaev_lb", "unknotting_lb"] {
            assert_eq!(b[key], 0, "{}", key);
        }
    }
}

#[test]
fn torsion_and_pages_of_trefoil() {
    let t = run(&["torsion", "--knot", "torus:2,3", "--format", "json"]);
    assert_eq!(t.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&t)).unwrap();
    assert_eq!(v["torsion"]["uX"], 1);
    assert_eq!(v["torsion"]["pg"], 2);
    let p = run(&["pages", "--knot", "torus:2,3"]);
    assert!(stdout(&p).contains("collapses at page 2"));
    let s = run(&["s", "--knot", "torus:3,4"]);
    assert_eq!(s.status.code(), Some(0));
    assert!(stdout(&s).contains('6'));
}

#[test]
fn frobenius_check_and_negative_control() {
    assert_eq!(run(&["frobenius-check", "--n", "2..8"]).status.code(), Some(0));
    assert_eq!(run(&["frobenius-check", "--corrupt"]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["kh", "--knot", "pd:PD[X[1,2,3]]"]).status.code(), Some(2));
    assert_eq!(run(&["kh", "--knot", "torus:2,4"]).status.code(), Some(2));
    assert_eq!(run(&["kh", "--knot", "corpus:no_such_knot"]).status.code(), Some(2));
    assert_eq!(run(&["torsion", "--knot", "torus:2,3", "--ring", "F2", "--deformation", "lee"]).status.code(), Some(2));
    assert_eq!(run(&["--max-objects", "10", "kh", "--knot", "torus:3,5"]).status.code(), Some(3));
}

#[test]
fn dump_writes_complex() {
    let dir = std::env::temp_dir().join(format!("khovanov-dump-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trefoil.txt");
    let o = run(&["kh", "--knot", "torus:2,3", "--dump", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!std::fs::read_to_string(&path).unwrap().is_empty());
    std::fs::remove_dir_all(&dir).unwrap();
}
