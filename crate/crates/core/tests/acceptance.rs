//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its elapsed time against a pinned budget; the test fails if any
//! criterion fails.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use snarkit::coloring::{decompose_tight, validate_coloring, SolverOptions, Verdict};
use snarkit::constructions::{
    detect_good_df_pole, extend_with_petersens, flower_snark, k33, k4, petersen, prism, tietze,
    windmill, SPOKE_LABEL,
};
use snarkit::cycles::{
    cdc_from_four_cover, coloring_from_cover, cover_from_coloring, is_cycle_double_cover,
    scc_exact, validate_cover,
};
use snarkit::graph::{parse_graph6, two_cut_connection};
use snarkit::matching::{enumerate_perfect_matchings, perfect_matching_index, PmIndex};
use snarkit::parameters::{
    chromatic_index, extension_witness, frumious_bounded, l_value, one_in_lattice,
    plus_tm_colourable, search_multisets, sp2_membership, sp_membership, verify_l_witness,
    FrumiousVerdict, LValue, MultisetOutcome,
};
use snarkit::{EdgeSet, Multigraph};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

/// Cycle-space cap used for the scc checks; F7 has dimension 15.
const SCC_CAP: usize = 15;
const FAMILY_BOUND: usize = 5;
const PM_CAP: usize = 6;

fn four_thirds(g: &Multigraph) -> usize {
    4 * g.base_edge_count() / 3
}

fn criterion_1() -> Check {
    let p = petersen();
    let chi = chromatic_index(&p).map_err(e)?;
    ensure!(chi == 4, "chromatic index {chi}");
    let pmi = perfect_matching_index(&p, PM_CAP).map_err(e)?;
    ensure!(pmi.value() == Some(5), "perfect matching index {pmi:?}");
    let lat = one_in_lattice(&p).map_err(e)?;
    ensure!(!lat.in_lattice, "all-ones vector reported in the lattice");
    let l = l_value(&p, 3).map_err(e)?;
    ensure!(matches!(l, LValue::Infinite { .. }), "l = {l:?}");
    Ok("chi'=4 chi'_e=5 lattice=false l=inf".into())
}

fn criterion_2() -> Check {
    let p = petersen();
    let list = enumerate_perfect_matchings(&p).map_err(e)?;
    ensure!(list.len() == 6, "{} matchings", list.len());
    for (i, &m) in list.iter().enumerate() {
        for t in 0..=3 {
            let (v, _) = plus_tm_colourable(&p, &list, m, t, SolverOptions::default()).map_err(e)?;
            ensure!(matches!(v, Verdict::NotColourable), "P+{t}M_{i} is Class I");
        }
    }
    let report = frumious_bounded(&p, 3).map_err(e)?;
    ensure!(
        report.verdict == FrumiousVerdict::FrumiousUpTo { t_max: 3 },
        "verdict {:?}",
        report.verdict
    );
    Ok("6 matchings x t=0..3 all Class II".into())
}

fn criterion_3() -> Check {
    let mut total = 0;
    for n in [5, 7] {
        let f = flower_snark(n).map_err(e)?;
        let list = enumerate_perfect_matchings(&f).map_err(e)?;
        for (i, &m) in list.iter().enumerate() {
            let host = f.plus_times(&m, 1);
            let r = decompose_tight(&host, 4, &list, SolverOptions::default()).map_err(e)?;
            let c = r.definite().map_err(e)?;
            let c = c.ok_or_else(|| format!("F{n}+M_{i} is Class II"))?;
            validate_coloring(&host, &c).map_err(e)?;
            let pole = detect_good_df_pole(&f, m).map_err(e)?;
            ensure!(pole.is_some(), "F{n}, M_{i}: no good double pole");
        }
        total += list.len();
    }
    Ok(format!("{total} matchings of F5 and F7, all F+M Class I"))
}

fn criterion_4() -> Check {
    let g = tietze();
    let spokes = EdgeSet::from_ids(g.edges_labelled(SPOKE_LABEL));
    ensure!(spokes.len() == 3, "{} spokes", spokes.len());
    let list = enumerate_perfect_matchings(&g).map_err(e)?;
    let (mut one, mut three) = (0, 0);
    for (i, &m) in list.iter().enumerate() {
        let (v, _) = plus_tm_colourable(&g, &list, m, 1, SolverOptions::default()).map_err(e)?;
        match (m & spokes).len() {
            1 => {
                one += 1;
                ensure!(matches!(v, Verdict::NotColourable), "M_{i} meets one spoke, Class I");
            }
            3 => {
                three += 1;
                let c = v.coloring().ok_or(format!("M_{i} meets three spokes, Class II"))?;
                validate_coloring(&g.plus_times(&m, 1), c).map_err(e)?;
            }
            k => return Err(format!("M_{i} meets {k} spokes")),
        }
    }
    ensure!(one > 0 && three > 0, "one={one} three={three}");
    Ok(format!("{one} one-spoke matchings Class II, {three} three-spoke Class I"))
}

fn criterion_5() -> Check {
    for n in [5, 7] {
        let f = flower_snark(n).map_err(e)?;
        let pmi = perfect_matching_index(&f, PM_CAP).map_err(e)?;
        ensure!(pmi.value() == Some(4), "chi'_e(F{n}) = {pmi:?}");
        match l_value(&f, 3).map_err(e)? {
            LValue::Finite { k: 1, matchings, coloring } => {
                verify_l_witness(&f, &matchings, &coloring).map_err(e)?
            }
            other => return Err(format!("l(F{n}) = {other:?}")),
        }
    }
    let corpus = include_str!("data/small_snarks.g6");
    let mut checked = 0;
    for line in corpus.lines().filter(|l| !l.trim().is_empty()) {
        let g = parse_graph6(line).map_err(e)?;
        if g.order() > 28 {
            continue;
        }
        let pmi_four = perfect_matching_index(&g, PM_CAP).map_err(e)?.value() == Some(4);
        let l_one = matches!(l_value(&g, 1).map_err(e)?, LValue::Finite { k: 1, .. });
        ensure!(pmi_four == l_one, "{line}: chi'_e=4 is {pmi_four}, l=1 is {l_one}");
        checked += 1;
    }
    Ok(format!("F5, F7 chi'_e=4, l=1; equivalence on {checked} corpus snarks"))
}

fn criterion_6() -> Check {
    let w = windmill();
    ensure!(w.order() == 34, "order {}", w.order());
    let pmi = perfect_matching_index(&w, PM_CAP).map_err(e)?;
    ensure!(pmi.value() == Some(5), "chi'_e = {pmi:?}");
    let list = enumerate_perfect_matchings(&w).map_err(e)?;
    for k in 0..=1 {
        let out = search_multisets(&w, &list, k, SolverOptions::default()).map_err(e)?;
        ensure!(matches!(out, MultisetOutcome::Exhausted), "a multiset of size {k} works");
    }
    match l_value(&w, 3).map_err(e)? {
        LValue::Finite { k: 2, matchings, coloring } => {
            verify_l_witness(&w, &matchings, &coloring).map_err(e)?
        }
        other => return Err(format!("l = {other:?}")),
    }
    let report = frumious_bounded(&w, 2).map_err(e)?;
    ensure!(
        report.verdict == FrumiousVerdict::FrumiousUpTo { t_max: 2 },
        "frumious verdict {:?}",
        report.verdict
    );
    ensure!(
        report.table.iter().all(|r| r.class_one.iter().all(|&c| c == Some(false))),
        "some table entry is not a definite failure"
    );
    Ok(format!("l=2, chi'_e=5, {} matchings fail up to t=2", list.len()))
}

fn criterion_7() -> Check {
    let k = scc_exact(&k4(), FAMILY_BOUND, SCC_CAP).map_err(e)?.ok_or("no K4 cover")?;
    ensure!(k.length == 8, "scc(K4) = {}", k.length);
    let f = flower_snark(5).map_err(e)?;
    let direct = scc_exact(&f, FAMILY_BOUND, SCC_CAP).map_err(e)?.ok_or("no F5 cover")?;
    validate_cover(&f, &direct.cover).map_err(e)?;
    ensure!(direct.length == 40, "scc(F5) = {}", direct.length);
    let (m, coloring) = match l_value(&f, 1).map_err(e)? {
        LValue::Finite { k: 1, matchings, coloring } => (matchings[0], coloring),
        other => return Err(format!("l(F5) = {other:?}")),
    };
    let via = cover_from_coloring(&f, m, 1, &coloring).map_err(e)?;
    ensure!(via.length == direct.length, "translated cover has length {}", via.length);
    let p = petersen();
    let pc = scc_exact(&p, FAMILY_BOUND, SCC_CAP).map_err(e)?.ok_or("no Petersen cover")?;
    validate_cover(&p, &pc.cover).map_err(e)?;
    ensure!(pc.length == 21 && pc.length > four_thirds(&p), "scc(P) = {}", pc.length);
    Ok("scc(K4)=8 scc(F5)=40 (direct = translated) scc(P)=21".into())
}

fn criterion_8() -> Check {
    let graphs = [
        ("K4", k4()),
        ("K33", k33()),
        ("prism", prism()),
        ("Petersen", petersen()),
        ("Tietze", tietze()),
        ("F5", flower_snark(5).map_err(e)?),
        ("F7", flower_snark(7).map_err(e)?),
    ];
    let mut summary = Vec::new();
    for (name, g) in graphs {
        let scc = scc_exact(&g, FAMILY_BOUND, SCC_CAP).map_err(e)?.ok_or("no cover")?;
        validate_cover(&g, &scc.cover).map_err(e)?;
        let short = scc.length == four_thirds(&g);
        let report = frumious_bounded(&g, 3).map_err(e)?;
        let not_frumious = matches!(report.verdict, FrumiousVerdict::NotFrumious { .. });
        ensure!(short == not_frumious, "{name}: scc short {short}, not frumious {not_frumious}");
        if let FrumiousVerdict::NotFrumious { matching, t, coloring } = &report.verdict {
            let list = enumerate_perfect_matchings(&g).map_err(e)?;
            let m = list.get(*matching);
            let cover = cover_from_coloring(&g, m, *t, coloring).map_err(e)?;
            ensure!(cover.length == four_thirds(&g), "{name}: translated length {}", cover.length);
            let (m2, t2, c2) = coloring_from_cover(&g, &cover).map_err(e)?;
            ensure!(m2 == m && t2 <= *t, "{name}: round trip changed M or raised t");
            validate_coloring(&g.plus_times(&m2, t2), &c2).map_err(e)?;
        }
        if short {
            let (m, t, c) = coloring_from_cover(&g, &scc.cover).map_err(e)?;
            validate_coloring(&g.plus_times(&m, t), &c).map_err(e)?;
            let back = cover_from_coloring(&g, m, t, &c).map_err(e)?;
            validate_cover(&g, &back).map_err(e)?;
        }
        summary.push(format!("{name}={}", scc.length));
    }
    Ok(summary.join(" "))
}

fn criterion_9() -> Check {
    let graphs = [
        ("K4", k4()),
        ("K33", k33()),
        ("prism", prism()),
        ("Petersen", petersen()),
        ("F5", flower_snark(5).map_err(e)?),
    ];
    let mut rows = Vec::new();
    for (name, g) in graphs {
        for t in 0..=1 {
            let sp2 = sp2_membership(&g, t).map_err(e)?;
            let sp = sp_membership(&g, t + 1).map_err(e)?;
            ensure!(sp2 == sp, "{name}, t={t}: sp2 {sp2}, sp(t+1) {sp}");
            rows.push(format!("{name}/{t}:{}", if sp { 'y' } else { 'n' }));
        }
    }
    Ok(rows.join(" "))
}

fn criterion_10() -> Check {
    let factors = [
        ("Petersen", petersen()),
        ("K4", k4()),
        ("prism", prism()),
        ("F5", flower_snark(5).map_err(e)?),
    ];
    let verdicts: Vec<bool> = factors
        .iter()
        .map(|(_, g)| one_in_lattice(g).map(|v| v.in_lattice))
        .collect::<snarkit::Result<_>>()
        .map_err(e)?;
    let mut rng = StdRng::seed_from_u64(0x2c07);
    let mut outside = 0;
    for _ in 0..10 {
        let a = rng.gen_range(0..factors.len());
        let b = rng.gen_range(0..factors.len());
        let (g1, g2) = (&factors[a].1, &factors[b].1);
        let e1 = rng.gen_range(0..g1.base_edge_count());
        let e2 = rng.gen_range(0..g2.base_edge_count());
        let h = two_cut_connection(g1, e1, g2, e2).map_err(e)?;
        let got = one_in_lattice(&h).map_err(e)?.in_lattice;
        ensure!(
            got == (verdicts[a] && verdicts[b]),
            "{} + {}: composite {got}",
            factors[a].0,
            factors[b].0
        );
        outside += usize::from(!got);
    }
    Ok(format!("10 composites agree, {outside} outside the lattice"))
}

fn criterion_11() -> Check {
    let ext = extend_with_petersens(&k33(), 0).map_err(e)?;
    let h = &ext.graph;
    ensure!(h.order() == 32, "order {}", h.order());
    let (ns, coloring) = extension_witness(h, &ext.cuts)
        .map_err(e)?
        .ok_or("no witness matchings")?;
    ensure!(coloring.k() == 6, "{} colours", coloring.k());
    verify_l_witness(h, &ns, &coloring).map_err(e)?;
    for (i, (&n, &cut)) in ns.iter().zip(&ext.cuts).enumerate() {
        ensure!(cut.is_subset(n), "N_{i} misses its cut");
    }
    let pmi = perfect_matching_index(h, 4).map_err(e)?;
    ensure!(matches!(pmi, PmIndex::AboveCap { cap: 4 }), "chi'_e(H) = {pmi:?}");
    let list = enumerate_perfect_matchings(h).map_err(e)?;
    let k2 = search_multisets(h, &list, 2, SolverOptions::default()).map_err(e)?;
    ensure!(matches!(k2, MultisetOutcome::Exhausted), "a pair of matchings works");
    Ok("witness gives l<=3, chi'_e>=5, pairs exhausted: l=3".into())
}

fn criterion_12() -> Check {
    let mut sizes = Vec::new();
    for n in [5, 7] {
        let f = flower_snark(n).map_err(e)?;
        let list = enumerate_perfect_matchings(&f).map_err(e)?;
        let cover = match perfect_matching_index(&f, PM_CAP).map_err(e)? {
            PmIndex::Exact { value: 4, cover } => cover,
            other => return Err(format!("chi'_e(F{n}) = {other:?}")),
        };
        let four = [0, 1, 2, 3].map(|i| list.get(cover[i]));
        let cdc = cdc_from_four_cover(&f, &four).map_err(e)?;
        ensure!(is_cycle_double_cover(&f, &cdc.cycles), "F{n}: not a double cover");
        sizes.push(format!("F{n}:{} cycles", cdc.cycles.len()));
    }
    Ok(sizes.join(" "))
}

#[test]
fn acceptance() {
    let criteria: [(&str, Duration, fn() -> Check); 12] = [
        ("Petersen baseline", Duration::from_secs(1), criterion_1),
        ("Petersen frumious to t=3", Duration::from_secs(60), criterion_2),
        ("F5, F7 plus any matching Class I", Duration::from_secs(600), criterion_3),
        ("Tietze spoke dichotomy", Duration::from_secs(60), criterion_4),
        ("perfect matching index 4 iff l=1", Duration::from_secs(600), criterion_5),
        ("windmill l=2 and frumious to t=2", Duration::from_secs(1800), criterion_6),
        ("shortest cycle covers", Duration::from_secs(600), criterion_7),
        ("cover/colouring translation", Duration::from_secs(300), criterion_8),
        ("sp2 shift", Duration::from_secs(600), criterion_9),
        ("2-cut lattice composition", Duration::from_secs(60), criterion_10),
        ("Petersen extension of K33", Duration::from_secs(600), criterion_11),
        ("double covers from four matchings", Duration::from_secs(60), criterion_12),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let verdict = match &result {
            Ok(_) if elapsed > *budget => Err(format!("over budget {budget:?}")),
            Ok(detail) => Ok(detail.clone()),
            Err(msg) => Err(msg.clone()),
        };
        match verdict {
            Ok(detail) => println!("PASS [{:>2}] {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(msg) => {
                println!("FAIL [{:>2}] {name} ({elapsed:.2?}): {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
