//! Re-validation of report records: every embedded witness is checked
//! against the graph stored in the same record, without any search.

use anyhow::{anyhow, bail, ensure, Context, Result};
use serde::de::DeserializeOwned;
use serde_json::Value;

use snarkit::coloring::validate_coloring;
use snarkit::cycles::{is_cycle_double_cover, validate_cover, CycleCover};
use snarkit::graph::parse_graph_line;
use snarkit::matching::is_perfect_matching;
use snarkit::parameters::verify_l_witness;
use snarkit::{EdgeSet, Multigraph, MultiColoring};

fn field<T: DeserializeOwned>(v: &Value, key: &str) -> Result<T> {
    let x = v.get(key).ok_or_else(|| anyhow!("missing field {key:?}"))?;
    serde_json::from_value(x.clone()).with_context(|| format!("field {key:?}"))
}

fn perfect(g: &Multigraph, m: EdgeSet) -> Result<()> {
    ensure!(is_perfect_matching(g, m), "{m:?} is not a perfect matching");
    Ok(())
}

/// Checks one record; returns the names of the results that carried a
/// witness.
pub fn verify_record(record: &Value) -> Result<Vec<String>> {
    if record.get("error").is_some() {
        bail!("record reports an error");
    }
    let schema: u64 = field(record, "schema")?;
    ensure!(schema == 1, "unsupported schema {schema}");
    let line: String = field(record, "graph")?;
    let g = parse_graph_line(&line)?;
    let digest: String = field(record, "digest")?;
    ensure!(digest == g.digest(), "digest does not match the graph");
    let results = record
        .get("results")
        .and_then(Value::as_object)
        .ok_or_else(|| anyhow!("missing results"))?;
    let mut checked = Vec::new();
    for (name, r) in results {
        if check(name, &g, r).with_context(|| format!("result {name:?}"))? {
            checked.push(name.clone());
        }
    }
    Ok(checked)
}

fn check(name: &str, g: &Multigraph, r: &Value) -> Result<bool> {
    match name {
        "chi" => {
            let k: usize = field(r, "chromatic_index")?;
            let c: MultiColoring = field(r, "coloring")?;
            ensure!(c.k() == k, "colouring uses {} colours", c.k());
            validate_coloring(g, &c)?;
            Ok(true)
        }
        "chie" => {
            if r["kind"] != "exact" {
                return Ok(false);
            }
            let value: usize = field(r, "value")?;
            let ms: Vec<EdgeSet> = field(r, "matchings")?;
            ensure!(ms.len() == value, "{} matchings for index {value}", ms.len());
            let mut union = EdgeSet::EMPTY;
            for &m in &ms {
                perfect(g, m)?;
                union = union | m;
            }
            ensure!(union == g.all_edges()?, "matchings do not cover every edge");
            Ok(true)
        }
        "l" => {
            if r["kind"] != "finite" {
                return Ok(false);
            }
            let ms: Vec<EdgeSet> = field(r, "matchings")?;
            let k: usize = field(r, "k")?;
            ensure!(ms.len() == k, "{} matchings for l={k}", ms.len());
            verify_l_witness(g, &ms, &field(r, "coloring")?)?;
            Ok(true)
        }
        "lm" => {
            let rows: Vec<Value> = field(r, "rows")?;
            let mut any = false;
            for row in rows {
                let m: EdgeSet = field(&row, "edges")?;
                perfect(g, m)?;
                let v = &row["value"];
                if v["kind"] == "finite" {
                    let t: u32 = field(v, "t")?;
                    validate_coloring(&g.plus_times(&m, t), &field(v, "coloring")?)?;
                    any = true;
                }
            }
            Ok(any)
        }
        "frumious" => {
            let v = &r["verdict"];
            if v["kind"] != "not_frumious" {
                return Ok(false);
            }
            let m: EdgeSet = field(r, "witness_matching")?;
            perfect(g, m)?;
            let t: u32 = field(v, "t")?;
            validate_coloring(&g.plus_times(&m, t), &field(v, "coloring")?)?;
            Ok(true)
        }
        "scc" => {
            if r.get("cover").is_none() {
                return Ok(false);
            }
            let cover: CycleCover = field(r, "cover")?;
            validate_cover(g, &cover)?;
            let length: usize = field(r, "length")?;
            ensure!(cover.length == length, "length field differs from the cover");
            Ok(true)
        }
        "cdc" => {
            if r.get("cover").is_none() {
                return Ok(false);
            }
            let cover: CycleCover = field(r, "cover")?;
            ensure!(is_cycle_double_cover(g, &cover.cycles), "not a cycle double cover");
            if let Some(c) = r.get("two_factor") {
                let c: EdgeSet = serde_json::from_value(c.clone())?;
                ensure!(cover.cycles.contains(&c), "cover does not contain the 2-factor");
            }
            Ok(true)
        }
        "fan-raspaud" => {
            if r["found"] != true {
                return Ok(false);
            }
            let ms: [EdgeSet; 3] = field(r, "matchings")?;
            for &m in &ms {
                perfect(g, m)?;
            }
            ensure!((ms[0] & ms[1] & ms[2]).is_empty(), "an edge lies in all three");
            Ok(true)
        }
        "sp" => {
            let mut any = false;
            for row in field::<Vec<Value>>(r, "sp")? {
                if row["member"] == true {
                    let t: u32 = field(&row, "t")?;
                    validate_coloring(&g.scaled(t)?, &field(&row, "coloring")?)?;
                    any = true;
                }
            }
            let all = g.all_edges()?;
            for row in field::<Vec<Value>>(r, "sp2")? {
                if row["member"] == true {
                    let fs: Vec<EdgeSet> = field(&row, "factors")?;
                    for &f in &fs {
                        perfect(g, all - f)?;
                    }
                    validate_coloring(&g.plus(fs.iter()), &field(&row, "coloring")?)?;
                    any = true;
                }
            }
            Ok(any)
        }
        _ => Ok(false),
    }
}
