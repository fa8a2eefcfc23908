//! Covering assignments of fan cells to points.
//!
//! An assignment `σ` sends every cell `C` of a fan to a point `σ(C)`; it is
//! covering when the translated cells `σ(C) + C` cover the support of the
//! fan.  A necessary condition is the overlapping condition: for every wall
//! `C ∩ D` with normal `u` from `C` to `D`, `⟨σ(C) − σ(D), u⟩ ≥ 0`.
//!
//! * [`line_assignment`] handles collinear points: sorting the points along
//!   the line in a topological order of the in-front relation works iff
//!   the fan is acyclic in the line's direction.
//! * [`covering_assignment`] follows the recursion for recursively regular
//!   fans: the finest regular coarsening is lifted to a convex piecewise
//!   linear function with pieces `a_G`, points are distributed to the
//!   groups by an exact capacity-constrained transportation problem with
//!   cost `a_G·p`, whose dual prices are the power-diagram weights, and the
//!   groups are treated recursively.

use std::collections::BTreeSet;

use itertools::Itertools;
use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::{polygon_area, Fan, Subdivision};
use crate::error::{Error, Result};
use crate::matching::min_cost_matching;
use crate::regularity::{finest_regular_coarsening, lifting_functional, restrict};
use crate::scalar::{dot, sub, to_text, Scalar};
use crate::visibility::{acyclic_in_direction, DirectionVerdict};
use crate::Rational;

/// Largest instance accepted by [`universality_search`].
pub const UNIVERSALITY_LIMIT: usize = 8;

/// A bijection from cells to points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    /// Point index assigned to each cell.
    pub mapping: Vec<usize>,
}

impl Assignment {
    pub fn identity(n: usize) -> Self {
        Assignment {
            mapping: (0..n).collect(),
        }
    }

    /// Checks that the mapping is a bijection onto `0..points`.
    pub fn check(&self, cells: usize, points: usize) -> Result<()> {
        if self.mapping.len() != cells || cells != points {
            return Err(Error::Precondition(format!(
                "an assignment needs as many points as cells ({cells} cells, {points} points, {} entries)",
                self.mapping.len()
            )));
        }
        let distinct: BTreeSet<usize> = self.mapping.iter().copied().collect();
        if distinct.len() != cells || self.mapping.iter().any(|&p| p >= points) {
            return Err(Error::Precondition("assignment is not a bijection".into()));
        }
        Ok(())
    }
}

/// Margin of the overlapping condition at one wall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallMargin<T = Rational> {
    pub wall: usize,
    /// `⟨σ(C) − σ(D), u⟩` with `u` from `C` to `D`.
    pub margin: T,
    pub violated: bool,
}

/// Overlapping-condition margins of all interior walls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapReport<T = Rational> {
    pub walls: Vec<WallMargin<T>>,
}

impl<T: Scalar> OverlapReport<T> {
    pub fn violations(&self) -> Vec<&WallMargin<T>> {
        self.walls.iter().filter(|w| w.violated).collect()
    }

    pub fn is_clean(&self) -> bool {
        self.walls.iter().all(|w| !w.violated)
    }

    pub fn to_json(&self, s: &Subdivision<T>) -> Value {
        Value::Array(
            self.walls
                .iter()
                .map(|w| {
                    json!({
                        "wall": s.walls()[w.wall].name(),
                        "cells": [s.walls()[w.wall].cells.0, s.walls()[w.wall].cells.1],
                        "margin": to_text(&w.margin),
                        "violated": w.violated,
                    })
                })
                .collect(),
        )
    }
}

fn check_points<T: Scalar>(f: &Fan<T>, points: &[Vec<T>]) -> Result<()> {
    if let Some(p) = points.iter().find(|p| p.len() != f.dimension()) {
        return Err(Error::Dimension {
            context: "point",
            expected: f.dimension(),
            found: p.len(),
        });
    }
    Ok(())
}

fn check_reverse_set<T: Scalar>(f: &Fan<T>, points: &[Vec<T>]) -> Result<()> {
    if let Some(i) = (0..points.len()).find(|&i| !f.in_reverse_set(&points[i])) {
        return Err(Error::Precondition(format!(
            "point {i} lies outside the reverse set of the fan's support"
        )));
    }
    Ok(())
}

/// Exact overlapping-condition margins for every interior wall.
pub fn overlap_check<T: Scalar>(
    f: &Fan<T>,
    points: &[Vec<T>],
    a: &Assignment,
) -> Result<OverlapReport<T>> {
    check_points(f, points)?;
    a.check(f.cell_count(), points.len())?;
    let walls = f
        .walls()
        .iter()
        .enumerate()
        .map(|(w, wall)| {
            let (c, d) = wall.cells;
            let margin = dot(
                &sub(&points[a.mapping[c]], &points[a.mapping[d]]),
                &wall.normal,
            );
            WallMargin {
                wall: w,
                violated: margin.is_negative(),
                margin,
            }
        })
        .collect();
    Ok(OverlapReport { walls })
}

/// Outcome of [`line_assignment`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineOutcome {
    Assigned(Assignment),
    /// The fan is cyclic in the line's direction; arcs `cᵢ → cᵢ₊₁`.
    Cycle(Vec<usize>),
}

/// Assignment for collinear points: cells in topological order of the
/// in-front relation along the line's direction receive the points in
/// increasing order along that direction.
pub fn line_assignment<T: Scalar>(f: &Fan<T>, points: &[Vec<T>]) -> Result<LineOutcome> {
    check_points(f, points)?;
    let n = f.cell_count();
    if points.len() != n {
        return Err(Error::Precondition(format!(
            "{n} cells but {} points",
            points.len()
        )));
    }
    check_reverse_set(f, points)?;
    let base = &points[0];
    let direction = match points
        .iter()
        .map(|p| sub(p, base))
        .find(|d| d.iter().any(|x| !x.is_zero()))
    {
        Some(d) => d,
        None => return Ok(LineOutcome::Assigned(Assignment::identity(n))),
    };
    // Parameter t with p = base + t·direction.
    let k = direction
        .iter()
        .position(|x| !x.is_zero())
        .expect("nonzero direction");
    let mut params = Vec::with_capacity(n);
    for p in points {
        let d = sub(p, base);
        let t = d[k].clone() / direction[k].clone();
        if (0..d.len()).any(|j| d[j] != t.clone() * direction[j].clone()) {
            return Err(Error::NotCollinear);
        }
        params.push(t);
    }
    match acyclic_in_direction(f, &direction)? {
        DirectionVerdict::Cyclic { cycle } => Ok(LineOutcome::Cycle(cycle)),
        DirectionVerdict::Acyclic { order } => {
            let mut by_param: Vec<usize> = (0..n).collect();
            by_param.sort_by(|&i, &j| params[i].cmp(&params[j]).then(i.cmp(&j)));
            let mut mapping = vec![0; n];
            for (cell, point) in order.into_iter().zip(by_param) {
                mapping[cell] = point;
            }
            let a = Assignment { mapping };
            assert!(
                overlap_check(f, points, &a)?.is_clean(),
                "line assignment violates the overlapping condition"
            );
            Ok(LineOutcome::Assigned(a))
        }
    }
}

/// One step of the covering recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep<T = Rational> {
    /// Cells (of the input fan) handled by this step.
    pub cells: Vec<usize>,
    /// Groups of the finest regular coarsening, as input-fan cells.
    pub groups: Vec<Vec<usize>>,
    /// Linear functional of each group's lifted hyperplane.
    pub lifting: Vec<Vec<T>>,
    /// Power-diagram weight of each group (negated column prices).
    pub weights: Vec<T>,
    /// Input point indices routed to each group.
    pub routed: Vec<Vec<usize>>,
}

impl<T: Scalar> TraceStep<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "cells": self.cells,
            "groups": self.groups,
            "lifting": self.lifting.iter().map(|a| a.iter().map(to_text).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "weights": self.weights.iter().map(to_text).collect::<Vec<_>>(),
            "routed": self.routed,
        })
    }
}

/// A covering assignment together with the recursion that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringOutcome<T = Rational> {
    pub assignment: Assignment,
    pub trace: Vec<TraceStep<T>>,
}

/// The point-independent part of the covering recursion: the finest
/// regular coarsenings of a recursively regular fan and its restrictions,
/// with the lifting functional of every group.  One plan serves any number
/// of point sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringPlan<T = Rational> {
    cells: usize,
    root: PlanNode<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct PlanNode<T> {
    /// Cells of the input fan handled here.
    cells: Vec<usize>,
    /// Groups of the finest regular coarsening, as input-fan cells.
    groups: Vec<Vec<usize>>,
    /// Linear functional of each group's lifted hyperplane.
    lifting: Vec<Vec<T>>,
    /// Sub-plan of each group with more than one cell.
    children: Vec<Option<PlanNode<T>>>,
}

impl<T: Scalar> CoveringPlan<T> {
    /// Builds the plan; fails unless the fan is recursively regular.
    pub fn new(f: &Fan<T>) -> Result<Self> {
        let cells: Vec<usize> = (0..f.cell_count()).collect();
        let root = plan_node(f.subdivision(), &cells)?;
        Ok(CoveringPlan {
            cells: f.cell_count(),
            root,
        })
    }

    /// Covering assignment of `f` (the fan the plan was built for) and a
    /// point set in its reverse cone.
    pub fn assign(&self, f: &Fan<T>, points: &[Vec<T>]) -> Result<CoveringOutcome<T>> {
        check_points(f, points)?;
        let n = f.cell_count();
        if n != self.cells {
            return Err(Error::Precondition(
                "covering plan built for a different fan".into(),
            ));
        }
        if points.len() != n {
            return Err(Error::Precondition(format!(
                "{n} cells but {} points",
                points.len()
            )));
        }
        check_reverse_set(f, points)?;
        let mut mapping = vec![usize::MAX; n];
        let mut trace = Vec::new();
        let point_ids: Vec<usize> = (0..n).collect();
        distribute(&self.root, points, &point_ids, &mut mapping, &mut trace);
        let assignment = Assignment { mapping };
        let report = overlap_check(f, points, &assignment)?;
        assert!(
            report.is_clean(),
            "covering recursion violated the overlapping condition"
        );
        Ok(CoveringOutcome { assignment, trace })
    }
}

/// Covering assignment for a recursively regular fan.
pub fn covering_assignment<T: Scalar>(f: &Fan<T>, points: &[Vec<T>]) -> Result<CoveringOutcome<T>> {
    check_points(f, points)?;
    check_reverse_set(f, points)?;
    CoveringPlan::new(f)?.assign(f, points)
}

/// Plans the (sub)fan `s`, whose cells are `cell_map` in the input fan.
fn plan_node<T: Scalar>(s: &Subdivision<T>, cell_map: &[usize]) -> Result<PlanNode<T>> {
    if s.cell_count() == 1 {
        return Ok(PlanNode {
            cells: cell_map.to_vec(),
            groups: vec![cell_map.to_vec()],
            lifting: vec![vec![T::zero(); s.dimension()]],
            children: vec![None],
        });
    }
    let frc = finest_regular_coarsening(s);
    let groups = &frc.coarsening.groups;
    if groups.len() == 1 {
        return Err(Error::Precondition("fan is not recursively regular".into()));
    }
    let lifting: Vec<Vec<T>> = groups
        .iter()
        .map(|g| {
            let rays: Vec<usize> = g
                .iter()
                .flat_map(|&c| s.cells()[c].iter().copied())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            lifting_functional(s, &rays, &frc.witness.values)
        })
        .collect();
    let children = groups
        .par_iter()
        .map(|group| {
            if group.len() == 1 {
                return Ok(None);
            }
            let r = restrict(s, group).expect("groups are dual-connected");
            let sub_cells: Vec<usize> = r.cells.iter().map(|&c| cell_map[c]).collect();
            plan_node(&r.subdivision, &sub_cells).map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlanNode {
        cells: cell_map.to_vec(),
        groups: groups
            .iter()
            .map(|g| g.iter().map(|&c| cell_map[c]).collect())
            .collect(),
        lifting,
        children,
    })
}

/// Distributes `point_ids` among the cells of a plan node.
fn distribute<T: Scalar>(
    node: &PlanNode<T>,
    points: &[Vec<T>],
    point_ids: &[usize],
    mapping: &mut [usize],
    trace: &mut Vec<TraceStep<T>>,
) {
    if node.cells.len() == 1 {
        mapping[node.cells[0]] = point_ids[0];
        return;
    }
    let groups = &node.groups;
    let lifting = &node.lifting;
    // Capacity-expanded transportation problem: one column per cell, the
    // columns of a group sharing the group's cost a_G·p.
    let column_group: Vec<usize> = groups
        .iter()
        .enumerate()
        .flat_map(|(gi, g)| std::iter::repeat_n(gi, g.len()))
        .collect();
    let cost: Vec<Vec<T>> = point_ids
        .iter()
        .map(|&p| {
            column_group
                .iter()
                .map(|&g| dot(&lifting[g], &points[p]))
                .collect()
        })
        .collect();
    let m = min_cost_matching(&cost);
    let mut weights: Vec<Option<T>> = vec![None; groups.len()];
    for (j, &g) in column_group.iter().enumerate() {
        let w = -m.col_potential[j].clone();
        match &weights[g] {
            None => weights[g] = Some(w),
            Some(prev) => assert_eq!(*prev, w, "copies of a group carry equal prices"),
        }
    }
    let weights: Vec<T> = weights
        .into_iter()
        .map(|w| w.expect("every group has a column"))
        .collect();
    let mut routed: Vec<Vec<usize>> = vec![Vec::new(); groups.len()];
    for (row, &col) in m.row_to_col.iter().enumerate() {
        routed[column_group[col]].push(point_ids[row]);
    }
    // Power-diagram separation: a_G·p + w_G ≤ a_H·p + w_H for p routed to G.
    for (g, pts) in routed.iter().enumerate() {
        for &p in pts {
            let here = dot(&lifting[g], &points[p]) + weights[g].clone();
            for h in 0..groups.len() {
                assert!(
                    here <= dot(&lifting[h], &points[p]) + weights[h].clone(),
                    "power-diagram separation fails"
                );
            }
        }
    }
    trace.push(TraceStep {
        cells: node.cells.clone(),
        groups: groups.clone(),
        lifting: lifting.clone(),
        weights,
        routed: routed.clone(),
    });
    for (g, child) in node.children.iter().enumerate() {
        match child {
            None => mapping[groups[g][0]] = routed[g][0],
            Some(c) => distribute(c, points, &routed[g], mapping, trace),
        }
    }
}

/// Outcome of [`universality_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniversalityOutcome<T = Rational> {
    /// The lexicographically first assignment satisfying every overlapping
    /// condition.
    Satisfied(Assignment),
    /// Every permutation with its first violated wall and that wall's margin.
    Exhausted(Vec<(Assignment, usize, T)>),
}

/// Exhaustive search over all assignments for one satisfying every
/// overlapping condition.
pub fn universality_search<T: Scalar>(
    f: &Fan<T>,
    points: &[Vec<T>],
) -> Result<UniversalityOutcome<T>> {
    check_points(f, points)?;
    let n = f.cell_count();
    if points.len() != n {
        return Err(Error::Precondition(format!(
            "{n} cells but {} points",
            points.len()
        )));
    }
    if n > UNIVERSALITY_LIMIT {
        return Err(Error::Precondition(format!(
            "exhaustive search is limited to {UNIVERSALITY_LIMIT} cells"
        )));
    }
    // margins[w][i][j] = ⟨p_i − p_j, u_w⟩.
    let margins: Vec<Vec<Vec<T>>> = f
        .walls()
        .iter()
        .map(|wall| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| dot(&sub(&points[i], &points[j]), &wall.normal))
                        .collect()
                })
                .collect()
        })
        .collect();
    let walls: Vec<(usize, usize)> = f.walls().iter().map(|w| w.cells).collect();
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let results: Vec<Option<(usize, T)>> = perms
        .par_iter()
        .map(|perm| {
            walls.iter().enumerate().find_map(|(w, &(c, d))| {
                let m = &margins[w][perm[c]][perm[d]];
                m.is_negative().then(|| (w, m.clone()))
            })
        })
        .collect();
    if let Some(i) = results.iter().position(|r| r.is_none()) {
        return Ok(UniversalityOutcome::Satisfied(Assignment {
            mapping: perms[i].clone(),
        }));
    }
    Ok(UniversalityOutcome::Exhausted(
        perms
            .into_iter()
            .zip(results)
            .map(|(mapping, r)| {
                let (w, m) = r.expect("every permutation is violated");
                (Assignment { mapping }, w, m)
            })
            .collect(),
    ))
}

/// Convex polygon clipping by the closed halfplane `⟨n, x⟩ ≥ c`.
fn clip<T: Scalar>(poly: &[Vec<T>], n: &[T], c: &T) -> Vec<Vec<T>> {
    let k = poly.len();
    let mut out = Vec::new();
    for i in 0..k {
        let a = &poly[i];
        let b = &poly[(i + 1) % k];
        let va = dot(n, a) - c.clone();
        let vb = dot(n, b) - c.clone();
        if !va.is_negative() {
            out.push(a.clone());
        }
        if (va.is_negative() && vb.is_positive()) || (va.is_positive() && vb.is_negative()) {
            let t = va.clone() / (va - vb);
            out.push(vec![
                a[0].clone() + t.clone() * (b[0].clone() - a[0].clone()),
                a[1].clone() + t * (b[1].clone() - a[1].clone()),
            ]);
        }
    }
    out
}

fn has_area<T: Scalar>(poly: &[Vec<T>]) -> bool {
    poly.len() >= 3 && !polygon_area(poly).is_zero()
}

/// The region of a bounding box not covered by the translated cones.
fn uncovered_in_box<T: Scalar>(
    f: &Fan<T>,
    points: &[Vec<T>],
    a: &Assignment,
    radius: &T,
) -> Vec<Vec<Vec<T>>> {
    let r = radius.clone();
    let mut pieces: Vec<Vec<Vec<T>>> = vec![vec![
        vec![-r.clone(), -r.clone()],
        vec![r.clone(), -r.clone()],
        vec![r.clone(), r.clone()],
        vec![-r.clone(), r.clone()],
    ]];
    let s = f.subdivision();
    for c in 0..f.cell_count() {
        let apex = &points[a.mapping[c]];
        let normals: Vec<&Vec<T>> = s.facets(c).iter().map(|fc| &fc.normal).collect();
        let mut next = Vec::new();
        for piece in pieces {
            // Complement of the closed cone ∩ {⟨nᵢ, x − apex⟩ ≥ 0}, cut into
            // convex parts: {⟨n₀,·⟩ ≤ 0}, {⟨n₀,·⟩ ≥ 0, ⟨n₁,·⟩ ≤ 0}, …
            let mut rest = piece;
            for n in &normals {
                let neg: Vec<T> = n.iter().map(|x| -x.clone()).collect();
                let offset = dot(n, apex);
                let outside = clip(&rest, &neg, &-offset.clone());
                if has_area(&outside) {
                    next.push(outside);
                }
                rest = clip(&rest, n, &offset);
                if !has_area(&rest) {
                    break;
                }
            }
        }
        pieces = next;
    }
    pieces
}

/// The uncovered region of a complete planar fan under an assignment that
/// satisfies the overlapping condition, as a convex polygon (empty when the
/// assignment is covering).
pub fn uncovered_region_2d<T: Scalar>(
    f: &Fan<T>,
    points: &[Vec<T>],
    a: &Assignment,
) -> Result<Vec<Vec<T>>> {
    if f.dimension() != 2 || !f.is_complete() {
        return Err(Error::Precondition(
            "uncovered_region_2d needs a complete planar fan".into(),
        ));
    }
    let report = overlap_check(f, points, a)?;
    if !report.is_clean() {
        return Err(Error::Precondition(
            "assignment violates the overlapping condition".into(),
        ));
    }
    let extent = points
        .iter()
        .flat_map(|p| p.iter().map(|x| x.abs()))
        .fold(T::one(), |m, x| if x > m { x } else { m });
    let mut radius = extent * T::from_int(4);
    for _ in 0..64 {
        let pieces = uncovered_in_box(f, points, a, &radius);
        if pieces.is_empty() {
            return Ok(Vec::new());
        }
        let all: Vec<Vec<T>> = pieces.into_iter().flatten().collect();
        let touches = all.iter().any(|v| v.iter().any(|x| x.abs() == radius));
        if !touches {
            return Ok(crate::complex::convex_hull_2d(&all));
        }
        radius = radius * T::from_int(2);
    }
    Err(Error::Precondition("uncovered region is unbounded".into()))
}

/// Result of [`sample_coverage`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverageSample {
    pub samples: usize,
    pub covered: usize,
}

impl CoverageSample {
    pub fn fraction(&self) -> f64 {
        if self.samples == 0 {
            1.0
        } else {
            self.covered as f64 / self.samples as f64
        }
    }

    pub fn is_full(&self) -> bool {
        self.covered == self.samples
    }
}

/// Whether `x` lies in some translated cell `σ(C) + C`.
pub fn is_covered<T: Scalar>(f: &Fan<T>, points: &[Vec<T>], a: &Assignment, x: &[T]) -> bool {
    let s = f.subdivision();
    (0..f.cell_count()).any(|c| {
        let y = sub(x, &points[a.mapping[c]]);
        s.facets(c)
            .iter()
            .all(|fc| !dot(&fc.normal, &y).is_negative())
    })
}

/// A point of `|F|` left uncovered by `a`, found exactly.
///
/// For a violated wall `W = C ∩ D` with normal `u` and margin `m < 0`, the
/// points `σ(C) + λ·w − (m / 2|u|²)·u`, with `w` in the relative interior of
/// `W`, lie strictly between the translated wall hyperplanes; for large `λ`
/// no other translated cell reaches them.  `λ` is doubled until an exactly
/// uncovered point of the support is found.  Returns the wall index and the
/// point, or `None` when no wall is violated.
pub fn uncovered_witness<T: Scalar>(
    f: &Fan<T>,
    points: &[Vec<T>],
    a: &Assignment,
) -> Result<Option<(usize, Vec<T>)>> {
    const DOUBLINGS: usize = 128;
    let report = overlap_check(f, points, a)?;
    let s = f.subdivision();
    for wm in report.violations() {
        let wall = &f.walls()[wm.wall];
        let u = &wall.normal;
        let w = wall
            .ridge
            .iter()
            .fold(vec![T::zero(); f.dimension()], |acc, &r| {
                acc.iter()
                    .zip(&f.rays()[r])
                    .map(|(x, y)| x.clone() + y.clone())
                    .collect()
            });
        let shift = -(wm.margin.clone() / (T::from_int(2) * dot(u, u)));
        let base: Vec<T> = points[a.mapping[wall.cells.0]]
            .iter()
            .zip(u)
            .map(|(p, ui)| p.clone() + shift.clone() * ui.clone())
            .collect();
        let mut lambda = T::one();
        for _ in 0..DOUBLINGS {
            let x: Vec<T> = base
                .iter()
                .zip(&w)
                .map(|(b, wi)| b.clone() + lambda.clone() * wi.clone())
                .collect();
            if s.support_contains(&x) && !is_covered(f, points, a, &x) {
                return Ok(Some((wm.wall, x)));
            }
            lambda = lambda * T::from_int(2);
        }
    }
    Ok(None)
}

/// Default sampling radius: twice the largest point coordinate, at least 2.
pub fn default_sampling_radius<T: Scalar>(points: &[Vec<T>]) -> T {
    let extent = points
        .iter()
        .flat_map(|p| p.iter().map(|x| x.abs()))
        .fold(T::one(), |m, x| if x > m { x } else { m });
    extent * T::from_int(2)
}

/// Samples points of `|F|` in a ball around the origin and counts those
/// covered by the translated cells.  Sample `i` is drawn from the ChaCha8
/// stream `i` of `seed`, so the result does not depend on scheduling.
pub fn sample_coverage<T: Scalar>(
    f: &Fan<T>,
    points: &[Vec<T>],
    a: &Assignment,
    samples: usize,
    seed: u64,
) -> Result<CoverageSample> {
    sample_coverage_in_ball(
        f,
        points,
        a,
        samples,
        seed,
        &default_sampling_radius(points),
    )
}

/// [`sample_coverage`] with an explicit ball radius.
pub fn sample_coverage_in_ball<T: Scalar>(
    f: &Fan<T>,
    points: &[Vec<T>],
    a: &Assignment,
    samples: usize,
    seed: u64,
    radius: &T,
) -> Result<CoverageSample> {
    check_points(f, points)?;
    a.check(f.cell_count(), points.len())?;
    if samples == 0 {
        warn!("no samples requested; coverage is vacuously complete");
        return Ok(CoverageSample {
            samples: 0,
            covered: 0,
        });
    }
    // Coordinates are multiples of 1/STEPS inside [-R, R]^d with R the
    // radius rounded up, which keeps the exact arithmetic cheap.
    const STEPS: i64 = 64;
    const ATTEMPTS: usize = 10_000;
    let d = f.dimension();
    let r2 = radius.clone() * radius.clone();
    let bound = radius.to_f64_lossy().ceil() as i64 * STEPS;
    let step = T::one() / T::from_int(STEPS);
    let s = f.subdivision();
    let draws: Vec<Option<bool>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            for _ in 0..ATTEMPTS {
                let x: Vec<T> = (0..d)
                    .map(|_| T::from_int(rng.gen_range(-bound..=bound)) * step.clone())
                    .collect();
                if dot(&x, &x) > r2 || !s.support_contains(&x) {
                    continue;
                }
                return Some(is_covered(f, points, a, &x));
            }
            None
        })
        .collect();
    let drawn: Vec<bool> = draws.into_iter().flatten().collect();
    if drawn.len() < samples {
        warn!(
            "{} of {samples} samples fell outside the support",
            samples - drawn.len()
        );
    }
    Ok(CoverageSample {
        samples: drawn.len(),
        covered: drawn.iter().filter(|&&c| c).count(),
    })
}
