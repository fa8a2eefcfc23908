//! Subcommand implementations.  Each returns a [`Report`]: whether the
//! property holds (exit 0) or fails with a certificate (exit 1), and the
//! JSON body printed on standard output.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;
use std::path::Path;

use serde_json::{json, Map, Value};

use recreg::floodlight::uncovered_witness;
use recreg::io::{parse_instance, CertificateFile, Instance, Q};
use recreg::scalar::{to_text, Scalar};
use recreg::*;

use crate::svg;

/// Outcome of a subcommand.
pub struct Report {
    pub holds: bool,
    pub body: Value,
}

impl Report {
    fn new(holds: bool, body: Value) -> Self {
        Report { holds, body }
    }
}

fn text_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(to_text).collect()
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Input(format!("cannot read standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
    }
}

/// Reads an instance file (`-` for standard input).
pub fn load(path: &Path) -> Result<Instance> {
    parse_instance(&read_text(path)?).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", shown(path))),
        other => other,
    })
}

/// How a path is named in messages.
fn shown(path: &Path) -> String {
    if path.as_os_str() == "-" {
        "standard input".into()
    } else {
        path.display().to_string()
    }
}

fn wrong_kind(path: &Path, found: &Instance, expected: &str) -> Error {
    Error::Precondition(format!(
        "{} is a {} file, expected {expected}",
        shown(path),
        found.kind()
    ))
}

pub fn load_subdivision(path: &Path) -> Result<Subdivision> {
    match load(path)? {
        Instance::PointsetSubdivision(f) => f.to_subdivision(),
        Instance::Spiderweb(w) => w.to_web()?.subdivision(),
        other => Err(wrong_kind(path, &other, "a pointset-subdivision")),
    }
}

/// A fan file, or a subdivision file with a `section_height` coned from
/// the origin.
pub fn load_fan(path: &Path) -> Result<Fan> {
    match load(path)? {
        Instance::Fan(f) => f.to_fan(),
        Instance::PointsetSubdivision(f) => {
            let height = f.section_height.clone().ok_or_else(|| {
                Error::Precondition(format!(
                    "{} has no section_height to cone from",
                    path.display()
                ))
            })?;
            fan_from_section(&f.to_subdivision()?, &height.0)
        }
        other => Err(wrong_kind(path, &other, "a fan")),
    }
}

/// Either a subdivision or a fan; fans are analysed through their complex.
pub fn load_complex(path: &Path) -> Result<Subdivision> {
    match load(path)? {
        Instance::Fan(f) => Ok(f.to_fan()?.subdivision().clone()),
        Instance::PointsetSubdivision(f) => f.to_subdivision(),
        Instance::Spiderweb(w) => w.to_web()?.subdivision(),
        other => Err(wrong_kind(path, &other, "a subdivision or fan")),
    }
}

pub fn load_points(path: &Path) -> Result<Vec<Vec<Rational>>> {
    match load(path)? {
        Instance::Points(p) => p.to_points(),
        other => Err(wrong_kind(path, &other, "a points")),
    }
}

pub fn load_assignment(path: &Path) -> Result<Assignment> {
    match load(path)? {
        Instance::Assignment(a) => Ok(Assignment { mapping: a.mapping }),
        other => Err(wrong_kind(path, &other, "an assignment")),
    }
}

pub fn load_web(path: &Path) -> Result<SpiderWeb> {
    match load(path)? {
        Instance::Spiderweb(w) => w.to_web(),
        other => Err(wrong_kind(path, &other, "a spiderweb")),
    }
}

pub fn load_digraph(path: &Path) -> Result<(DirectionalGraph, Option<Vec<Vec<Rational>>>)> {
    match load(path)? {
        Instance::Digraph(d) => d.to_graph(),
        other => Err(wrong_kind(path, &other, "a digraph")),
    }
}

/// Parses `x,y,…` exactly.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|t| Rational::parse_exact(t.trim()))
        .collect()
}

fn certificate_json(cert: &Certificate) -> Value {
    cert.coefficients
        .iter()
        .map(|(l, y)| (l.clone(), Value::String(to_text(y))))
        .collect::<Map<_, _>>()
        .into()
}

fn heights_json(h: &HeightFunction) -> Value {
    json!(text_vec(&h.values))
}

pub fn check_regular(path: &Path) -> Result<Report> {
    let s = load_subdivision(path)?;
    Ok(match is_regular(&s) {
        RegularityVerdict::Regular { witness } => Report::new(
            true,
            json!({"regular": true, "heights": heights_json(&witness)}),
        ),
        RegularityVerdict::NonRegular { certificate, .. } => Report::new(
            false,
            json!({"regular": false, "certificate": certificate_json(&certificate)}),
        ),
    })
}

pub fn frc(path: &Path) -> Result<Report> {
    let s = load_subdivision(path)?;
    let r = finest_regular_coarsening(&s);
    Ok(Report::new(
        true,
        json!({
            "groups": r.coarsening.groups,
            "relaxed_walls": r.relaxed_labels(&s),
            "identity": r.coarsening.is_identity(),
            "trivial": r.coarsening.is_trivial(),
            "heights": heights_json(&r.witness),
        }),
    ))
}

pub fn tree(path: &Path) -> Result<Report> {
    let s = load_subdivision(path)?;
    Ok(Report::new(true, regularity_tree(&s).to_json()))
}

pub fn check_recursive(path: &Path) -> Result<Report> {
    let s = load_subdivision(path)?;
    let (rr, t) = is_recursively_regular(&s);
    Ok(Report::new(rr, t.to_json()))
}

pub fn acyclic(path: &Path, direction: Option<&str>, max_len: Option<usize>) -> Result<Report> {
    let s = load_complex(path)?;
    match direction {
        Some(d) => {
            let v = parse_vector(d)?;
            Ok(match acyclic_in_direction(&s, &v)? {
                DirectionVerdict::Acyclic { order } => {
                    Report::new(true, json!({"acyclic": true, "order": order}))
                }
                DirectionVerdict::Cyclic { cycle } => {
                    Report::new(false, json!({"acyclic": false, "cycle": cycle}))
                }
            })
        }
        None => {
            let max_len = max_len.unwrap_or(s.cell_count());
            Ok(match acyclic_all_directions(&s, max_len)? {
                AllDirectionsVerdict::Acyclic { certificates } => Report::new(
                    true,
                    json!({
                        "acyclic": true,
                        "max_len": max_len,
                        "certificates": certificates.iter().map(|c| c.to_json(&s)).collect::<Vec<_>>(),
                    }),
                ),
                AllDirectionsVerdict::Cyclic { direction, cycle } => Report::new(
                    false,
                    json!({"acyclic": false, "direction": text_vec(&direction), "cycle": cycle}),
                ),
            })
        }
    }
}

fn witness_json(f: &Fan, points: &[Vec<Rational>], a: &Assignment) -> Result<Value> {
    Ok(match uncovered_witness(f, points, a)? {
        Some((w, x)) => json!({"wall": f.walls()[w].name(), "point": text_vec(&x)}),
        None => Value::Null,
    })
}

pub fn assign(fan: &Path, points: &Path, line: bool) -> Result<Report> {
    let f = load_fan(fan)?;
    let p = load_points(points)?;
    if line {
        return Ok(match line_assignment(&f, &p)? {
            LineOutcome::Assigned(a) => {
                let report = overlap_check(&f, &p, &a)?;
                Report::new(
                    true,
                    json!({"mapping": a.mapping, "overlap": report.to_json(f.subdivision())}),
                )
            }
            LineOutcome::Cycle(cycle) => Report::new(false, json!({"cycle": cycle})),
        });
    }
    let out = covering_assignment(&f, &p)?;
    let report = overlap_check(&f, &p, &out.assignment)?;
    Ok(Report::new(
        true,
        json!({
            "mapping": out.assignment.mapping,
            "overlap": report.to_json(f.subdivision()),
            "trace": out.trace.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
        }),
    ))
}

pub fn verify_overlap(fan: &Path, points: &Path, assignment: &Path) -> Result<Report> {
    let f = load_fan(fan)?;
    let p = load_points(points)?;
    let a = load_assignment(assignment)?;
    let report = overlap_check(&f, &p, &a)?;
    Ok(Report::new(
        report.is_clean(),
        json!({
            "clean": report.is_clean(),
            "walls": report.to_json(f.subdivision()),
            "uncovered_witness": witness_json(&f, &p, &a)?,
        }),
    ))
}

pub fn uncovered_2d(fan: &Path, points: &Path, assignment: &Path) -> Result<Report> {
    let f = load_fan(fan)?;
    let p = load_points(points)?;
    let a = load_assignment(assignment)?;
    let report = overlap_check(&f, &p, &a)?;
    if !report.is_clean() {
        // The gap behind a violated wall is unbounded.
        return Ok(Report::new(
            false,
            json!({
                "covered": false,
                "bounded": false,
                "violated_walls": report.violations().iter().map(|w| f.walls()[w.wall].name()).collect::<Vec<_>>(),
                "uncovered_witness": witness_json(&f, &p, &a)?,
            }),
        ));
    }
    let region = uncovered_region_2d(&f, &p, &a)?;
    Ok(Report::new(
        region.is_empty(),
        json!({
            "covered": region.is_empty(),
            "bounded": true,
            "region": region.iter().map(|v| text_vec(v)).collect::<Vec<_>>(),
        }),
    ))
}

pub fn search_universal(fan: &Path, points: &Path) -> Result<Report> {
    let f = load_fan(fan)?;
    let p = load_points(points)?;
    Ok(match universality_search(&f, &p)? {
        UniversalityOutcome::Satisfied(a) => {
            Report::new(true, json!({"satisfied": true, "mapping": a.mapping}))
        }
        UniversalityOutcome::Exhausted(table) => Report::new(
            false,
            json!({
                "satisfied": false,
                "violations": table.iter().map(|(a, w, m)| json!({
                    "mapping": a.mapping,
                    "wall": f.walls()[*w].name(),
                    "margin": to_text(m),
                })).collect::<Vec<_>>(),
            }),
        ),
    })
}

/// Verifies a certificate file, or a label-keyed certificate (as printed
/// by `check-regular`) against the regularity system of a subdivision.
pub fn verify_certificate(path: &Path, against: Option<&Path>) -> Result<Report> {
    let text = read_text(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| {
        Error::Input(format!(
            "{}: line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    let (sys, y) = match against {
        None => {
            let file: CertificateFile = match parse_instance(&text)? {
                Instance::Certificate(c) => c,
                other => return Err(wrong_kind(path, &other, "a certificate")),
            };
            (file.system()?, file.multipliers())
        }
        Some(sub) => {
            let s = load_subdivision(sub)?;
            let sys = regularity_system(&s);
            let map = value.get("certificate").unwrap_or(&value);
            let coefficients: BTreeMap<String, Q> =
                serde_json::from_value(map.clone()).map_err(|e| {
                    Error::Input(format!(
                        "{}: certificate is not a label → number map: {e}",
                        path.display()
                    ))
                })?;
            let cert = Certificate {
                coefficients: coefficients.into_iter().map(|(l, y)| (l, y.0)).collect(),
            };
            let y = sys.dense_certificate(&cert)?;
            (sys, y)
        }
    };
    let holds = verify_dual_certificate(&sys, &y)?;
    let residual = sys.combination(&y)?;
    Ok(Report::new(
        holds,
        json!({
            "valid": holds,
            "rows": sys.rows(),
            "residual": text_vec(&residual),
        }),
    ))
}

pub fn spiderweb(path: &Path) -> Result<Report> {
    let w = load_web(path)?;
    let a = spiderweb_redundant_cables(&w)?;
    Ok(Report::new(true, a.to_json()))
}

pub fn embed_digraph(digraph: &Path, points: &Path, assignment: Option<&Path>) -> Result<Report> {
    let (g, drawing) = load_digraph(digraph)?;
    let p = load_points(points)?;
    if let Some(path) = assignment {
        let a = load_assignment(path)?;
        let report = check_embedding(&g, &p, &a)?;
        return Ok(Report::new(
            report.is_embedding(),
            json!({"mapping": a.mapping, "report": report.to_json()}),
        ));
    }
    let drawing = drawing.ok_or_else(|| {
        Error::Precondition(
            "the digraph has no drawing; pass --assignment to check a given bijection".into(),
        )
    })?;
    let e = embed_drawable(&g, &drawing, &p)?;
    Ok(Report::new(
        true,
        json!({"mapping": e.assignment.mapping, "cost": to_text(&e.cost), "report": e.report.to_json()}),
    ))
}

pub fn forcing(digraph: &Path, max_len: Option<usize>) -> Result<Report> {
    let (g, _) = load_digraph(digraph)?;
    let max_len = max_len.unwrap_or(g.vertex_count());
    Ok(match forcing_cycle(&g, max_len) {
        Some(c) => Report::new(false, json!({"forcing_cycle": c.to_json()})),
        None => Report::new(true, json!({"forcing_cycle": null, "max_len": max_len})),
    })
}

pub fn sample(
    fan: &Path,
    points: &Path,
    assignment: &Path,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let f = load_fan(fan)?;
    let p = load_points(points)?;
    let a = load_assignment(assignment)?;
    let s = sample_coverage(&f, &p, &a, samples, seed)?;
    let witness = witness_json(&f, &p, &a)?;
    Ok(Report::new(
        s.is_full() && witness.is_null(),
        json!({
            "samples": s.samples,
            "covered": s.covered,
            "fraction": s.fraction(),
            "seed": seed,
            // Sampling can miss thin gaps; the exact check is reported too.
            "uncovered_witness": witness,
        }),
    ))
}

/// Draws a section coloured by its finest regular coarsening.  With
/// `overlay`, the walls violated by the assignment of the points to the
/// cone over the section are highlighted.
pub fn plot(path: &Path, out: &Path, overlay: Option<(&Path, &Path)>) -> Result<Report> {
    let s = load_complex(path)?;
    let frc = finest_regular_coarsening(&s);
    let relaxed: BTreeSet<usize> = frc.relaxed_walls.iter().copied().collect();
    let mut violated = BTreeSet::new();
    if let Some((points, assignment)) = overlay {
        let f = load_fan(path)?;
        let p = load_points(points)?;
        let a = load_assignment(assignment)?;
        let report = overlap_check(&f, &p, &a)?;
        // The cone has the cells of the section, hence the same walls.
        for m in report.violations() {
            let cells = f.walls()[m.wall].cells;
            if let Some(w) = s.walls().iter().position(|w| w.cells == cells) {
                violated.insert(w);
            }
        }
    }
    let style = svg::Style {
        group_of: &frc.coarsening.group_of,
        relaxed: &relaxed,
        violated: &violated,
    };
    let drawing = svg::render(&s, &style)?;
    std::fs::write(out, drawing)
        .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", out.display())))?;
    let name = |set: &BTreeSet<usize>| set.iter().map(|&w| s.walls()[w].name()).collect::<Vec<_>>();
    Ok(Report::new(
        true,
        json!({
            "out": out.display().to_string(),
            "cells": s.cell_count(),
            "groups": frc.coarsening.groups.len(),
            "relaxed_walls": name(&relaxed),
            "violated_walls": name(&violated),
        }),
    ))
}
