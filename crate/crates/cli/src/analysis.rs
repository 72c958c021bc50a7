//! One JSON object per analysis of one graph. Positive verdicts embed their
//! witnesses as edge-id lists so that `verify` can re-check them without
//! searching.

use std::str::FromStr;

use anyhow::{bail, Result};
use serde_json::{json, Value};

use snarkit::coloring::SolverOptions;
use snarkit::cycles::{
    cdc_extending_two_factor, cdc_from_four_cover, cover_from_coloring, scc_exact,
};
use snarkit::graph::{
    bridges, canonical_form, cyclic_connectivity, girth, is_petersen, Multigraph,
};
use snarkit::matching::{
    enumerate_perfect_matchings, fan_raspaud, perfect_matching_index_with, MatchingList,
};
use snarkit::parameters::{
    chromatic_index, classify, frumious_bounded_with, l_m_with, l_value_with, sp2_witness,
    sp_witness, FrumiousVerdict, LValue, LmValue,
};
use snarkit::{EdgeSet, Error, PmIndex};

use crate::settings::Settings;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Analysis {
    Info,
    Chi,
    Chie,
    L,
    Lm,
    Frumious,
    Scc,
    Cdc,
    FanRaspaud,
    Sp,
}

pub const ALL: [Analysis; 10] = [
    Analysis::Info,
    Analysis::Chi,
    Analysis::Chie,
    Analysis::L,
    Analysis::Lm,
    Analysis::Frumious,
    Analysis::Scc,
    Analysis::Cdc,
    Analysis::FanRaspaud,
    Analysis::Sp,
];

impl Analysis {
    pub fn name(self) -> &'static str {
        match self {
            Analysis::Info => "info",
            Analysis::Chi => "chi",
            Analysis::Chie => "chie",
            Analysis::L => "l",
            Analysis::Lm => "lm",
            Analysis::Frumious => "frumious",
            Analysis::Scc => "scc",
            Analysis::Cdc => "cdc",
            Analysis::FanRaspaud => "fan-raspaud",
            Analysis::Sp => "sp",
        }
    }
}

impl FromStr for Analysis {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match ALL.iter().find(|a| a.name() == s) {
            Some(&a) => Ok(a),
            None => bail!(
                "unknown analysis {s:?} (expected one of {})",
                ALL.map(|a| a.name()).join(", ")
            ),
        }
    }
}

pub struct Outcome {
    pub value: Value,
    /// Short text for the CSV projection.
    pub summary: String,
    pub indeterminate: bool,
}

impl Outcome {
    fn definite(value: Value, summary: impl Into<String>) -> Self {
        Outcome {
            value,
            summary: summary.into(),
            indeterminate: false,
        }
    }
}

/// Per-graph context shared by the analyses.
pub struct Context<'a> {
    pub g: &'a Multigraph,
    pub settings: &'a Settings,
    /// Restricts `lm` to one matching index.
    pub matching: Option<usize>,
    list: Option<MatchingList>,
}

impl<'a> Context<'a> {
    pub fn new(g: &'a Multigraph, settings: &'a Settings, matching: Option<usize>) -> Self {
        Context {
            g,
            settings,
            matching,
            list: None,
        }
    }

    fn list(&mut self) -> Result<&MatchingList> {
        if self.list.is_none() {
            self.list = Some(enumerate_perfect_matchings(self.g)?);
        }
        Ok(self.list.as_ref().expect("just set"))
    }

    fn opts(&self) -> SolverOptions {
        SolverOptions {
            node_limit: self.settings.node_limit,
        }
    }
}

pub fn run(a: Analysis, cx: &mut Context) -> Result<Outcome> {
    match a {
        Analysis::Info => info(cx),
        Analysis::Chi => chi(cx),
        Analysis::Chie => chie(cx),
        Analysis::L => l(cx),
        Analysis::Lm => lm(cx),
        Analysis::Frumious => frumious(cx),
        Analysis::Scc => scc(cx),
        Analysis::Cdc => cdc(cx),
        Analysis::FanRaspaud => fan(cx),
        Analysis::Sp => sp(cx),
    }
}

fn info(cx: &mut Context) -> Result<Outcome> {
    let g = cx.g;
    let bridgeless = bridges(g).is_empty();
    let cc = if g.is_cubic() && g.order() > 0 {
        serde_json::to_value(cyclic_connectivity(g))?
    } else {
        Value::Null
    };
    let gi = girth(g);
    let value = json!({
        "cubic": g.is_cubic(),
        "simple": g.is_simple(),
        "bridgeless": bridgeless,
        "girth": gi,
        "cyclic_connectivity": cc,
        "petersen": is_petersen(g),
        "canonical": canonical_form(g).hex_digest(),
    });
    let girth_text = gi.map_or("inf".to_string(), |x| x.to_string());
    Ok(Outcome::definite(value, format!("girth={girth_text}")))
}

fn chi(cx: &mut Context) -> Result<Outcome> {
    let k = chromatic_index(cx.g)?;
    let c = snarkit::coloring::edge_color(cx.g, k)?;
    Ok(Outcome::definite(
        json!({ "chromatic_index": k, "coloring": c }),
        format!("chi'={k}"),
    ))
}

fn chie(cx: &mut Context) -> Result<Outcome> {
    let cap = cx.settings.cap;
    let g = cx.g;
    let list = cx.list()?.clone();
    let pmi = perfect_matching_index_with(g, &list, cap)?;
    let class = classify(g, &list)?;
    let (value, summary) = match &pmi {
        PmIndex::Exact { value, cover } => {
            let ms: Vec<EdgeSet> = cover.iter().map(|&i| list.get(i)).collect();
            (
                json!({ "kind": "exact", "value": value, "matchings": ms, "class": class }),
                format!("chi'_e={value}"),
            )
        }
        PmIndex::AboveCap { cap } => (
            json!({ "kind": "above_cap", "cap": cap, "class": class }),
            format!("chi'_e>{cap}"),
        ),
        PmIndex::Infinite => (json!({ "kind": "infinite", "class": class }), "chi'_e=inf".into()),
    };
    Ok(Outcome::definite(value, summary))
}

fn l(cx: &mut Context) -> Result<Outcome> {
    let v = match l_value_with(cx.g, cx.settings.kmax, cx.opts()) {
        Err(Error::Bridge) => {
            return Ok(Outcome::definite(json!({ "kind": "bridge" }), "bridge"));
        }
        r => r?,
    };
    let (summary, indeterminate) = match &v {
        LValue::Finite { k, .. } => (format!("l={k}"), false),
        LValue::AtLeast { k } => (format!("l>={k}"), false),
        LValue::Infinite { .. } => ("l=inf".to_string(), false),
        LValue::Indeterminate { k, .. } => (format!("indeterminate at k={k}"), true),
    };
    Ok(Outcome {
        value: serde_json::to_value(&v)?,
        summary,
        indeterminate,
    })
}

fn lm(cx: &mut Context) -> Result<Outcome> {
    let (g, tmax, opts, only) = (cx.g, cx.settings.tmax, cx.opts(), cx.matching);
    let list = cx.list()?.clone();
    let indices: Vec<usize> = match only {
        Some(i) if i >= list.len() => bail!("matching {i} out of range ({} matchings)", list.len()),
        Some(i) => vec![i],
        None => (0..list.len()).collect(),
    };
    let mut rows = Vec::with_capacity(indices.len());
    let mut indeterminate = false;
    let mut finite = 0;
    for i in indices {
        let v = l_m_with(g, &list, list.get(i), tmax, opts)?;
        indeterminate |= matches!(v, LmValue::Indeterminate { .. });
        finite += usize::from(v.finite().is_some());
        rows.push(json!({ "matching": i, "edges": list.get(i), "value": v }));
    }
    let summary = format!("{finite}/{} finite up to t={tmax}", rows.len());
    Ok(Outcome {
        value: json!({ "t_max": tmax, "rows": rows }),
        summary,
        indeterminate,
    })
}

fn frumious(cx: &mut Context) -> Result<Outcome> {
    let (g, tmax, opts) = (cx.g, cx.settings.tmax, cx.opts());
    let list = cx.list()?.clone();
    let report = frumious_bounded_with(g, &list, tmax, opts)?;
    let mut value = serde_json::to_value(&report)?;
    let (summary, indeterminate) = match &report.verdict {
        FrumiousVerdict::NotFrumious { matching, t, .. } => {
            value["witness_matching"] = serde_json::to_value(list.get(*matching))?;
            (format!("not frumious (M{matching}, t={t})"), false)
        }
        FrumiousVerdict::FrumiousUpTo { t_max } => (format!("frumious up to t={t_max}"), false),
        FrumiousVerdict::Indeterminate => ("indeterminate".to_string(), true),
    };
    Ok(Outcome {
        value,
        summary,
        indeterminate,
    })
}

fn scc(cx: &mut Context) -> Result<Outcome> {
    let g = cx.g;
    let m = g.base_edge_count();
    let floor = (4 * m).div_ceil(3);
    match scc_exact(g, cx.settings.family_bound, cx.settings.space_cap) {
        Ok(Some(r)) => Ok(Outcome::definite(
            json!({ "method": "exact", "length": r.length, "cover": r.cover, "nodes": r.nodes }),
            format!("scc={}", r.length),
        )),
        Ok(None) => Ok(Outcome::definite(
            json!({ "method": "none_within_family_bound", "family_bound": cx.settings.family_bound }),
            "no cover within family bound",
        )),
        Err(Error::CycleSpaceTooLarge { dimension, cap }) => {
            // Fall back to the colouring route, which only certifies 4/3|E|.
            let (tmax, opts) = (cx.settings.tmax, cx.opts());
            let list = cx.list()?.clone();
            let report = frumious_bounded_with(g, &list, tmax, opts)?;
            if let FrumiousVerdict::NotFrumious { matching, t, coloring } = report.verdict {
                let cover = cover_from_coloring(g, list.get(matching), t, &coloring)?;
                return Ok(Outcome::definite(
                    json!({ "method": "coloring", "length": cover.length, "cover": cover }),
                    format!("scc={}", cover.length),
                ));
            }
            Ok(Outcome {
                value: json!({
                    "method": "lower_bound",
                    "at_least": floor,
                    "dimension": dimension,
                    "space_cap": cap,
                }),
                summary: format!("scc>={floor}"),
                indeterminate: true,
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn cdc(cx: &mut Context) -> Result<Outcome> {
    let g = cx.g;
    let space_cap = cx.settings.space_cap;
    let list = cx.list()?.clone();
    if let PmIndex::Exact { cover, .. } = perfect_matching_index_with(g, &list, 4)? {
        let mut four = [EdgeSet::EMPTY; 4];
        for (slot, i) in four.iter_mut().zip(cover.iter().cycle()) {
            *slot = list.get(*i);
        }
        let c = cdc_from_four_cover(g, &four)?;
        let n = c.cycles.len();
        return Ok(Outcome::definite(
            json!({ "method": "four_matchings", "matchings": four, "cover": c }),
            format!("cdc with {n} cycles"),
        ));
    }
    let all = g.all_edges()?;
    for &m in list.iter() {
        match cdc_extending_two_factor(g, all - m, space_cap) {
            Ok(Some((c, method))) => {
                let n = c.cycles.len();
                return Ok(Outcome::definite(
                    json!({ "method": "two_factor", "search": method, "two_factor": all - m, "cover": c }),
                    format!("cdc with {n} cycles"),
                ));
            }
            Ok(None) => {}
            Err(Error::CycleSpaceTooLarge { dimension, cap }) => {
                return Ok(Outcome {
                    value: json!({ "method": "none_within_bounds", "dimension": dimension, "space_cap": cap }),
                    summary: "space cap reached".into(),
                    indeterminate: true,
                })
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome::definite(
        json!({ "method": "none_within_bounds", "two_factors_tried": list.len() }),
        "no cdc through a 2-factor",
    ))
}

fn fan(cx: &mut Context) -> Result<Outcome> {
    let list = cx.list()?;
    Ok(match fan_raspaud(list) {
        Some(t) => Outcome::definite(
            json!({ "found": true, "indices": t, "matchings": t.map(|i| list.get(i)) }),
            "triple found",
        ),
        None => Outcome::definite(json!({ "found": false }), "no triple"),
    })
}

fn sp(cx: &mut Context) -> Result<Outcome> {
    let (g, t_max) = (cx.g, cx.settings.sp_max.max(1));
    let mut sp_rows = Vec::new();
    let mut members = Vec::new();
    for t in 1..=t_max {
        let w = sp_witness(g, t)?;
        if w.is_some() {
            members.push(t.to_string());
        }
        sp_rows.push(json!({ "t": t, "member": w.is_some(), "coloring": w }));
    }
    let mut sp2_rows = Vec::new();
    for t in 0..t_max {
        let w = sp2_witness(g, t)?;
        let (factors, coloring) = match w {
            Some((f, c)) => (Some(f), Some(c)),
            None => (None, None),
        };
        sp2_rows.push(json!({
            "t": t,
            "member": coloring.is_some(),
            "factors": factors,
            "coloring": coloring,
        }));
    }
    Ok(Outcome::definite(
        json!({ "sp": sp_rows, "sp2": sp2_rows }),
        format!("sp∩[1,{t_max}]={{{}}}", members.join(",")),
    ))
}
