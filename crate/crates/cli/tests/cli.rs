use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bialg::classify::{lambda_index, DiagonalFamily};
use bialg::cobracket::Cobracket;
use bialg::exterior::ExtVector;
use bialg::{Graph, Rational, TwoStepAlgebra};
use serde_json::Value;
use tempfile::TempDir;

fn bialg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bialg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let out = bialg(args);
    let code = out.status.code().unwrap();
    (
        code,
        serde_json::from_slice(&out.stdout).unwrap_or(Value::Null),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K3: &str = "# triangle\n3\n1 2\n1 3\n2 3\n";
const PATH3: &str = "3\n1 2\n2 3\n";
const EDGE: &str = "2\n1 2\n";
const K4: &str = "4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
const C4: &str = "4\n1 2\n2 3\n3 4\n1 4\n";

#[test]
fn info_reports_dimensions_and_degrees() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.txt", K3);
    let (code, v) = json_of(&["info", s(&k3), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(
        (v["dim_w"].as_u64(), v["dim_z"].as_u64()),
        (Some(3), Some(3))
    );
    assert_eq!(v["degrees"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["check"]["passed"], true);

    let path = write(&dir, "path.txt", PATH3);
    let (_, v) = json_of(&["info", s(&path), "--json"]);
    assert_eq!(v["degrees"], serde_json::json!([1, 2, 1]));
}

#[test]
fn malformed_graph_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "3\n1 2\n1 x\n");
    let out = bialg(&["info", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = bialg(&["info", s(&dir.path().join("missing.txt"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_cross_check() {
    let dir = TempDir::new().unwrap();
    let edge = write(&dir, "edge.txt", EDGE);
    let (code, v) = json_of(&["invariants", s(&edge), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], false);
    assert_eq!(v["dim_invariants"], 2);
    assert_eq!(v["crosscheck_agrees"], true);

    let k3 = write(&dir, "k3.txt", K3);
    let (code, v) = json_of(&["invariants", s(&k3), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], true);
}

#[test]
fn tst_dimensions() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "path.txt", PATH3);
    let (code, v) = json_of(&["tst", s(&path), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["solution_dim"], 1);
    assert_eq!(v["tst_type"], false);
    let k4 = write(&dir, "k4.txt", K4);
    let (code, v) = json_of(&["tst", s(&k4), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["solution_dim"], 0);
}

fn k3_family() -> Cobracket {
    let g = Graph::complete(3);
    let mut lambda = vec![Rational::zero(); 9];
    for (edge, signs) in [(0, [1, 1, -1]), (2, [1, -1, -1]), (1, [1, -1, 1])] {
        for (v, sign) in signs.iter().enumerate() {
            lambda[lambda_index(&g, v, edge)] = Rational::from(*sign);
        }
    }
    DiagonalFamily::new(&g, lambda, vec![ExtVector::zero(6, 2); 3])
        .unwrap()
        .build()
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let zero = Cobracket::zero(TwoStepAlgebra::from_graph(&Graph::complete(3)));
    let zero_file = write(&dir, "zero.json", &zero.to_json().unwrap().to_string());
    let (code, v) = json_of(&["verify", s(&zero_file), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["bialgebra"], true);

    let family = write(&dir, "f3.json", &k3_family().to_json().unwrap().to_string());
    let (code, v) = json_of(&["verify", s(&family), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["nearly_coboundary"], true);

    // δ(a1_2) = v1∧v2 violates the cocycle condition
    let broken = r#"{"algebra":{"graph":{"vertices":3,"edges":[[1,2],[1,3],[2,3]]}},
        "columns":{"a1_2":[{"basis":["v1","v2"],"coeff":"1"}]}}"#;
    let broken = write(&dir, "broken.json", broken);
    let (code, v) = json_of(&["verify", s(&broken), "--json"]);
    assert_eq!(code, 1);
    assert_eq!(v["bialgebra"], false);

    let corrupt = r#"{"algebra":{"graph":{"vertices":2,"edges":[[1,2]]}},
        "columns":{"v1":[{"basis":["v1","a1_2"],"coeff":"1/0"}]}}"#;
    let corrupt = write(&dir, "corrupt.json", corrupt);
    assert_eq!(bialg(&["verify", s(&corrupt)]).status.code(), Some(2));
}

#[test]
fn classify_diagonal_dimensions() {
    let dir = TempDir::new().unwrap();
    for (name, text, dim) in [("k3", K3, 3), ("k4", K4, 0)] {
        let f = write(&dir, name, text);
        let (code, v) = json_of(&["classify", "--diagonal", s(&f), "--json"]);
        assert_eq!(code, 0);
        assert_eq!(v["lambda_dim"], dim, "{name}");
    }
    let c4 = write(&dir, "c4", C4);
    let (_, v) = json_of(&["classify", "--diagonal", s(&c4), "--json"]);
    assert_eq!(v["lambda_dim"], 4);
    assert_eq!(v["caveats"], serde_json::json!([]));
    assert_eq!(bialg(&["classify", s(&c4)]).status.code(), Some(2));
}

#[test]
fn table_and_sweep() {
    let (code, v) = json_of(&["table", "--max-n", "6", "--json"]);
    assert_eq!(code, 0);
    let rows: Vec<_> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["cycle"].clone(), r["complete"].clone()))
        .collect();
    assert_eq!(
        rows[0],
        (serde_json::json!([9, 9]), serde_json::json!([9, 9]))
    );
    assert_eq!(
        rows[3],
        (serde_json::json!([36, 90]), serde_json::json!([90, 630]))
    );
    assert_eq!(bialg(&["table", "--max-n", "2"]).status.code(), Some(2));

    let (code, v) = json_of(&["sweep", "--max-vertices", "4", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["violations"], serde_json::json!([]));
    assert_eq!(
        bialg(&["sweep", "--max-vertices", "8"]).status.code(),
        Some(2)
    );
}

#[test]
fn out_file_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.txt", K3);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        assert_eq!(
            bialg(&["classify", "--diagonal", s(&k3), "--out", s(out)])
                .status
                .code(),
            Some(0)
        );
    }
    let (ra, rb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ra, rb);
    assert!(serde_json::from_slice::<Value>(&ra).is_ok());
}
