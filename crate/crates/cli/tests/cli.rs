use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn snarkit(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_snarkit"))
        .args(args)
        .env_remove("SNARKIT_THREADS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn construct(name: &str, param: Option<&str>) -> String {
    let mut args = vec!["construct", name];
    args.extend(param);
    let out = snarkit(&args, "");
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn flower_five_has_index_four() {
    let out = snarkit(&["chie"], &construct("flower", Some("5")));
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0]["results"]["chie"];
    assert_eq!(r["kind"], "exact");
    assert_eq!(r["value"], 4);
}

#[test]
fn petersen_l_is_infinite() {
    let out = snarkit(&["l"], &construct("petersen", None));
    assert_eq!(records(&out)[0]["results"]["l"]["kind"], "infinite");
}

#[test]
fn batch_keeps_input_order_and_verifies() {
    let names = ["tietze", "k4", "petersen", "prism", "k33", "petersen"];
    let mut input = String::from("# corpus\n\n");
    for n in names {
        input += &construct(n, None);
    }
    let out = snarkit(&["--threads", "3", "batch", "--select", "info,chi,scc,cdc,sp"], &input);
    assert!(out.status.success());
    let recs = records(&out);
    assert_eq!(recs.len(), names.len());
    for (i, r) in recs.iter().enumerate() {
        assert_eq!(r["index"], i);
        assert_eq!(r["schema"], 1);
    }
    assert_eq!(recs[0]["n"], 12);
    assert_eq!(recs[1]["n"], 4);
    assert_eq!(recs[2]["results"]["scc"]["length"], 21);

    let verified = snarkit(&["verify"], &String::from_utf8(out.stdout).unwrap());
    assert_eq!(verified.status.code(), Some(0));
    assert!(records(&verified).iter().all(|v| v["verified"] == true));
}

#[test]
fn verify_rejects_a_tampered_witness() {
    let out = snarkit(&["chi"], &construct("prism", None));
    let mut r = records(&out).remove(0);
    r["results"]["chi"]["coloring"]["colours"][0] = serde_json::json!([1]);
    r["results"]["chi"]["coloring"]["colours"][1] = serde_json::json!([1]);
    let v = snarkit(&["verify"], &format!("{r}\n"));
    assert_eq!(v.status.code(), Some(1));
    assert_eq!(records(&v)[0]["verified"], false);
}

#[test]
fn bad_input_lines_report_errors() {
    let out = snarkit(&["info"], "not-a-graph\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(records(&out)[0]["error"].is_string());
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(snarkit(&["bogus"], "").status.code(), Some(2));
}

#[test]
fn node_limit_gives_indeterminate_exit() {
    let out = snarkit(&["--node-limit", "1", "l"], &construct("tietze", None));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_file_sets_bounds() {
    let dir = std::env::temp_dir().join(format!("snarkit-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bounds.conf");
    std::fs::write(&path, "# tight budget\nnode-limit = 1\n").unwrap();
    let out = snarkit(&["--config", path.to_str().unwrap(), "l"], &construct("tietze", None));
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_output_has_one_row_per_analysis() {
    let input = construct("petersen", None) + &construct("k4", None);
    let out = snarkit(&["--format", "csv", "batch", "--select", "info,chie"], &input);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[2], "analysis");
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(&rows[0][0], "0");
    assert_eq!(&rows[3][0], "1");
    assert_eq!(&rows[1][2], "chie");
}

#[test]
fn construct_edge_list_parses_back() {
    let out = snarkit(&["construct", "circular_ladder", "4", "--edge-list"], "");
    let text = String::from_utf8(out.stdout).unwrap();
    let g = snarkit::graph::parse_edge_list(&text).unwrap();
    assert_eq!(g.order(), 8);
    assert!(g.is_cubic());
}
