use std::process::{Command, Output};

use homlift::hopf::{taft, HopfDocument};
use homlift::Field;
use serde_json::Value;

fn homlift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homlift")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn taft_three_cohomology_is_polynomial() {
    let out = homlift(&["cohomology", "--algebra", "taft:3", "--maxdeg", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let dims: Vec<u64> = v["dims"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
    let powers = v["cup_powers"].as_array().unwrap();
    assert_eq!(powers.len(), 4);
    assert!(powers.iter().all(|p| p["nonzero"] == Value::Bool(true)));
}

#[test]
fn sweedler_square_bracket_table_is_zero() {
    let out = homlift(&["bracket", "--algebra", "taft_tensor:2,2", "--maxdeg", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["all_zero"], Value::Bool(true));
    assert!(!v["brackets"].as_array().unwrap().is_empty());
}

#[test]
fn verify_all_sweedler() {
    let out = homlift(&["verify", "--suite", "all", "--algebra", "taft:2", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["seed"], Value::from(11));
    assert_eq!(v["suites"].as_array().unwrap().len(), 9);
}

#[test]
fn invalid_configurations_exit_two() {
    for args in [
        vec!["bracket", "--algebra", "taft:3", "--diagonal", "symmetrized"],
        vec!["cohomology", "--algebra", "taft:3", "--field", "prime:5"],
        vec!["bracket", "--algebra", "group_zp:3", "--diagonal", "explicit"],
        vec!["induce", "--algebra", "taft:3", "--max-n-envelope", "2"],
        vec!["verify", "--algebra", "taft:2", "--suite", "nonsense"],
        vec!["cohomology", "--algebra", "taft"],
    ] {
        let out = homlift(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn prime_field_taft() {
    let out = homlift(&["cohomology", "--algebra", "taft:3", "--field", "prime:7", "--maxdeg", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["field"], Value::from("prime:7:3:2"));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = homlift(&["bracket", "--algebra", "taft:3", "--maxdeg", "4", "--lifting", "perturbed", "--seed", "3", "--output", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn csv_projection() {
    let out = homlift(&["cohomology", "--algebra", "taft:2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("degree,dim"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn file_algebra_through_free_resolution() {
    let f = Field::cyclotomic(2).unwrap();
    let doc = HopfDocument::from_hopf(&taft(2, &f).unwrap());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweedler.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let alg = format!("file:{}", path.display());
    let out = homlift(&["cohomology", "--algebra", &alg, "--maxdeg", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let dims: Vec<u64> = json(&out)["dims"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 0, 1, 0, 1]);
    let out = homlift(&["cohomology", "--algebra", &alg, "--resolution", "explicit"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn induce_sweedler() {
    let out = homlift(&["induce", "--algebra", "taft:2", "--maxdeg", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["envelope_dim"], Value::from(16));
    assert_eq!(v["hochschild_dims"], v["adjoint_dims"]);
    assert!(v["induced_dims"].as_array().unwrap().iter().all(|d| d.as_u64() == Some(8)));
}
