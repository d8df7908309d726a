use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use ratgenus::conelab::{check_cone, pattern_verdict, random_cone, CircularCone, ConeCheck};
use ratgenus::dinvariant::d_lens_all;
use ratgenus::genusbounds::{bound_report, lens_bound_rows, BoundRow};
use ratgenus::homology::{parse_pair, H1Class, LensSpace, Manifold};
use ratgenus::rational::{fmt_q, Q};
use ratgenus::simpleknot::{gradings_via_d, theta_table, u_knot_class, u_knot_gradings, SimpleKnot};
use ratgenus::vhprofile::{label_string, law_exceptions, random_profile, VHProfile};

use crate::output::{to_json, CliResult, Failure, Format, Report, Table};

fn lens_pairs(pmin: u64, pmax: u64) -> Vec<(u64, u64)> {
    (pmin..=pmax).flat_map(|p| LensSpace::valid_q(p).into_iter().map(move |q| (p, q))).collect()
}

fn parse_lens(s: &str) -> CliResult<(u64, i64)> {
    let (p, q) = parse_pair(s)?;
    if p < 1 {
        return Err(Failure::Input(format!("lens order must be positive, got {p}")));
    }
    LensSpace::new(p as u64, q)?;
    Ok((p as u64, q))
}

fn bool_str(b: bool) -> String {
    b.to_string()
}

#[derive(Serialize)]
struct DRow {
    p: u64,
    q: u64,
    i: u64,
    d: String,
}

pub fn d_table(pmax: u64, format: Format) -> CliResult<Report> {
    if pmax < 1 {
        return Err(Failure::Input("pmax must be at least 1".into()));
    }
    let rows: Vec<DRow> = lens_pairs(1, pmax)
        .par_iter()
        .map(|&(p, q)| {
            let l = LensSpace::new(p, q as i64).expect("valid by construction");
            d_lens_all(&l)
                .into_iter()
                .enumerate()
                .map(|(i, d)| DRow { p, q, i: i as u64, d: fmt_q(&d) })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let body = match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut t = Table::new(&["p", "q", "i", "d"]);
            t.rows = rows.iter().map(|r| vec![r.p.to_string(), r.q.to_string(), r.i.to_string(), r.d.clone()]).collect();
            t.to_csv()?
        }
    };
    Ok(Report::new(body).range("p", format!("1..={pmax}")))
}

pub fn theta(lens: &str, format: Format) -> CliResult<Report> {
    let (p, q) = parse_lens(lens)?;
    let y = Manifold::lens(p, q)?;
    let rows = theta_table(&y)?;
    let body = match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut t = Table::new(&["a", "theta", "d_gap", "a_max", "parity_ok", "symmetry_ok"]);
            t.rows = rows
                .iter()
                .map(|r| {
                    let a = r.class.0.first().copied().unwrap_or(0);
                    vec![
                        a.to_string(),
                        fmt_q(&r.theta),
                        fmt_q(&r.d_gap),
                        fmt_q(&r.a_max),
                        bool_str(r.parity_ok),
                        bool_str(r.symmetry_ok),
                    ]
                })
                .collect();
            t.to_csv()?
        }
    };
    let mut report = Report::new(body).range("lens", format!("L({p},{q})"));
    report.exceptions = rows.iter().filter(|r| !(r.parity_ok && r.symmetry_ok)).count();
    Ok(report)
}

#[derive(Serialize)]
struct UKnotReport {
    p: u64,
    n: i64,
    class: u64,
    all_matches: Vec<u64>,
    closed_form: Vec<String>,
    via_d: Vec<String>,
    a_max: String,
}

pub fn uknot(p: u64, n: i64, format: Format) -> CliResult<Report> {
    let closed = u_knot_gradings(p, n)?.sorted();
    let m = u_knot_class(p, n)?;
    let k = SimpleKnot::in_lens(p, n, m.class)?;
    let via_d = gradings_via_d(&k).sorted();
    if via_d != closed {
        return Err(Failure::Consistency(format!("U-knot gradings in L({p},{n}) disagree")));
    }
    let strs = |v: &[Q]| v.iter().map(fmt_q).collect::<Vec<_>>();
    let rep = UKnotReport {
        p,
        n,
        class: m.class,
        all_matches: m.all_matches.clone(),
        closed_form: strs(&closed),
        via_d: strs(&via_d),
        a_max: fmt_q(closed.last().expect("nonempty")),
    };
    let body = match format {
        Format::Json => to_json(&rep)?,
        Format::Csv => {
            let mut t = Table::new(&["p", "n", "class", "j", "closed_form", "via_d"]);
            t.rows = (0..closed.len())
                .map(|j| {
                    vec![
                        p.to_string(),
                        n.to_string(),
                        m.class.to_string(),
                        j.to_string(),
                        rep.closed_form[j].clone(),
                        rep.via_d[j].clone(),
                    ]
                })
                .collect();
            t.to_csv()?
        }
    };
    Ok(Report::new(body).range("lens", format!("L({p},{n})")))
}

pub fn bounds(
    lens: Option<&str>,
    manifold: Option<&str>,
    class: Option<&str>,
    longitude: Option<&str>,
    sweep: Option<u64>,
    format: Format,
) -> CliResult<Report> {
    if let Some(pmax) = sweep {
        if pmax < 2 {
            return Err(Failure::Input("sweep needs pmax >= 2".into()));
        }
        let rows: Vec<BoundRow> = lens_pairs(2, pmax)
            .par_iter()
            .map(|&(p, q)| lens_bound_rows(p, q))
            .collect::<ratgenus::Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let body = match format {
            Format::Json => to_json(&rows)?,
            Format::Csv => {
                let mut t = Table::new(&[
                    "p", "q", "a", "d_gap", "theta", "nu", "seifert_equality", "slice_equality", "nu_equality",
                ]);
                t.rows = rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.p.to_string(),
                            r.q.to_string(),
                            r.a.to_string(),
                            fmt_q(&r.d_gap),
                            fmt_q(&r.theta),
                            fmt_q(&r.nu),
                            bool_str(r.seifert_equality),
                            bool_str(r.slice_equality),
                            bool_str(r.nu_equality),
                        ]
                    })
                    .collect();
                t.to_csv()?
            }
        };
        let mut report = Report::new(body).range("p", format!("2..={pmax}"));
        report.exceptions =
            rows.iter().filter(|r| !(r.seifert_equality && r.slice_equality && r.nu_equality)).count();
        return Ok(report);
    }
    let y = match (lens, manifold) {
        (Some(l), None) => {
            let (p, q) = parse_lens(l)?;
            Manifold::lens(p, q)?
        }
        (None, Some(m)) => m.parse::<Manifold>()?,
        _ => return Err(Failure::Input("give one of --lens, --manifold or --sweep".into())),
    };
    let class: H1Class = class.ok_or_else(|| Failure::Input("--class is required".into()))?.parse()?;
    let longitude = match longitude {
        None => None,
        Some(s) => {
            let (pp, qq) = parse_pair(s)?;
            if pp < 1 {
                return Err(Failure::Input("p' must be positive".into()));
            }
            Some((pp as u64, qq))
        }
    };
    let report = bound_report(&y, &class, longitude)?;
    let mut out = Report::new(to_json(&report)?).range("manifold", &y).range("class", &class);
    if let Some((pp, qq)) = longitude {
        out = out.range("longitude", format!("{pp},{qq}"));
    }
    Ok(out)
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("reading {}: {e}", path.display())))
}

fn load_cones(path: &Path) -> CliResult<Vec<CircularCone>> {
    let text = read_file(path)?;
    let bad = |e: serde_json::Error| Failure::Input(format!("{}: {e}", path.display()));
    let value: serde_json::Value = serde_json::from_str(&text).map_err(bad)?;
    if value.is_array() {
        serde_json::from_value(value).map_err(bad)
    } else {
        Ok(vec![serde_json::from_value(value).map_err(bad)?])
    }
}

#[derive(Serialize)]
struct ConeSummary {
    cones: usize,
    pattern_fired: usize,
    oracle_not_surjective: usize,
    refused: usize,
    soundness_violations: usize,
    unstable: usize,
}

#[derive(Serialize)]
struct ConeEntry {
    cone: CircularCone,
    check: ConeCheck,
}

#[derive(Serialize)]
struct ConeReport {
    results: Vec<ConeEntry>,
    refused: Vec<usize>,
    summary: ConeSummary,
}

fn verdict_str(v: &Option<ratgenus::conelab::SurjectivityVerdict>) -> String {
    match v {
        None => "refused".into(),
        Some(v) if v.surjective => "surjective".into(),
        Some(_) => "not-surjective".into(),
    }
}

pub fn cone_check(
    file: Option<&Path>,
    seed: u64,
    count: usize,
    depth: Option<usize>,
    format: Format,
) -> CliResult<Report> {
    let cones = match file {
        Some(f) => load_cones(f)?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| random_cone(&mut rng, 12, 5)).collect()
        }
    };
    let checks: Vec<ConeCheck> = cones.par_iter().enumerate().map(|(i, c)| check_cone(i, c, depth)).collect();
    let summary = ConeSummary {
        cones: cones.len(),
        pattern_fired: cones.iter().filter(|c| pattern_verdict(c).is_some()).count(),
        oracle_not_surjective: checks.iter().filter(|c| c.oracle.as_ref().is_some_and(|v| !v.surjective)).count(),
        refused: checks.iter().filter(|c| c.refused).count(),
        soundness_violations: checks.iter().filter(|c| c.soundness_violation).count(),
        unstable: checks.iter().filter(|c| c.unstable).count(),
    };
    let refused: Vec<usize> = checks.iter().filter(|c| c.refused).map(|c| c.index).collect();
    let line = format!(
        "cones {} pattern-fired {} oracle-not-surjective {} refused {} soundness-violations {} unstable {}",
        summary.cones,
        summary.pattern_fired,
        summary.oracle_not_surjective,
        summary.refused,
        summary.soundness_violations,
        summary.unstable
    );
    let exceptions = summary.soundness_violations + summary.unstable;
    let body = match format {
        Format::Json => to_json(&ConeReport {
            results: cones.iter().cloned().zip(checks).map(|(cone, check)| ConeEntry { cone, check }).collect(),
            refused,
            summary,
        })?,
        Format::Csv => {
            let mut t = Table::new(&[
                "index", "labels", "cells", "A", "interval", "star", "pattern", "oracle", "oracle_deeper", "witness",
            ]);
            t.rows = cones
                .iter()
                .zip(&checks)
                .map(|(cone, c)| {
                    let cells: String = cone.cells().iter().map(|(v, h)| format!("({v},{h})")).collect();
                    vec![
                        c.index.to_string(),
                        c.labels.clone(),
                        cells,
                        cone.a_cone().map(|a| fmt_q(&a)).unwrap_or_default(),
                        c.interval.map(|iv| format!("{}@{}-{}", iv.kind, iv.start, iv.end)).unwrap_or_default(),
                        bool_str(c.star),
                        if c.interval.is_some() || c.star { "not-surjective".into() } else { String::new() },
                        verdict_str(&c.oracle),
                        verdict_str(&c.oracle_deeper),
                        c.oracle.as_ref().and_then(|v| v.witness).map(|w| w.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            t.to_csv()?
        }
    };
    let mut report = Report::new(body);
    report = match file {
        Some(f) => report.range("file", f.display()),
        None => report.range("count", count).range("max_len", 12).range("max_vh", 5),
    };
    report.depth = depth;
    report.exceptions = exceptions;
    report.summary = Some(line);
    Ok(report)
}

#[derive(Serialize)]
struct ProfileRow {
    index: usize,
    manifold: String,
    class: String,
    labels: Vec<String>,
    nu_plus: Option<String>,
    exceptions: Vec<String>,
}

#[derive(Serialize)]
struct ProfileReport {
    results: Vec<ProfileRow>,
    profiles: usize,
    exceptions: usize,
}

fn profile_row(index: usize, prof: &VHProfile, knot: Option<(&Manifold, &H1Class)>) -> ProfileRow {
    ProfileRow {
        index,
        manifold: knot.map(|(y, _)| y.to_string()).unwrap_or_default(),
        class: knot.map(|(_, a)| a.to_string()).unwrap_or_default(),
        labels: prof.columns.iter().map(|c| label_string(&c.labels())).collect(),
        nu_plus: prof.nu_plus_overall().ok().map(|(nu, _)| fmt_q(&nu)),
        exceptions: law_exceptions(prof, knot),
    }
}

pub fn profile_check(
    file: Option<&Path>,
    seed: u64,
    count: usize,
    manifold: Option<&str>,
    class: Option<&str>,
    format: Format,
) -> CliResult<Report> {
    let mut rejected = None;
    let rows: Vec<ProfileRow> = match file {
        Some(f) => {
            let text = read_file(f)?;
            let prof: VHProfile =
                serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", f.display())))?;
            let knot = match (manifold, class) {
                (Some(m), Some(c)) => Some((m.parse::<Manifold>()?, c.parse::<H1Class>()?)),
                _ => None,
            };
            if let Err(v) = prof.validate() {
                rejected = Some(format!("{}: {v}", f.display()));
            }
            vec![profile_row(0, &prof, knot.as_ref().map(|(y, a)| (y, a)))]
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let inputs: Vec<(Manifold, H1Class, VHProfile)> = (0..count)
                .map(|_| {
                    let p = rng.gen_range(1..=6u64);
                    let y = Manifold::lens(p, 1).expect("valid");
                    let a = H1Class(if p == 1 { vec![] } else { vec![rng.gen_range(0..p)] });
                    let prof = random_profile(&mut rng, &y, 9);
                    (y, a, prof)
                })
                .collect();
            inputs.par_iter().enumerate().map(|(i, (y, a, prof))| profile_row(i, prof, Some((y, a)))).collect()
        }
    };
    let exceptions: usize = rows.iter().map(|r| r.exceptions.len()).sum();
    let summary = format!("profiles {} exceptions {exceptions}", rows.len());
    let body = match format {
        Format::Json => to_json(&ProfileReport { profiles: rows.len(), exceptions, results: rows })?,
        Format::Csv => {
            let mut t = Table::new(&["index", "manifold", "class", "labels", "nu_plus", "exceptions"]);
            t.rows = rows
                .into_iter()
                .map(|r| {
                    vec![
                        r.index.to_string(),
                        r.manifold,
                        r.class,
                        r.labels.join(" "),
                        r.nu_plus.unwrap_or_default(),
                        r.exceptions.join("; "),
                    ]
                })
                .collect();
            t.to_csv()?
        }
    };
    let mut report = Report::new(body);
    report = match file {
        Some(f) => report.range("file", f.display()),
        None => report.range("count", count).range("max_len", 9).range("lens_p", "1..=6"),
    };
    if rejected.is_none() {
        report.exceptions = exceptions;
    }
    report.rejected = rejected;
    report.summary = Some(summary);
    Ok(report)
}
