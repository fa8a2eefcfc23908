//! The in-front (visibility) relation between cells and its acyclicity.
//!
//! For a direction `v` and a wall `W = C ∩ D` whose normal `u` points from
//! `C` to `D`, the in-front digraph has the arc `D → C` iff `⟨u, v⟩ > 0`.
//! Walls orthogonal to `v` contribute no arc.
//!
//! Acyclicity in all directions is checked the way it is done by hand:
//! every simple cycle `C₀, …, C_{k-1}` of the dual graph is tested for a
//! direction making all its walls point the same way around the cycle.
//! Such a direction exists iff the oriented normals admit a strict solution
//! of `⟨uᵢ, δ⟩ > 0`; otherwise a positive dependence `Σ λᵢ uᵢ = 0` is a
//! certificate that the cycle is never realized.  Reversing the traversal
//! replaces `δ` by `-δ`, so one orientation per cycle suffices.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::{fan_from_section, Subdivision};
use crate::error::{Error, Result};
use crate::lp::{gordan, positive_dependence, GordanWitness};
use crate::matrix::Matrix;
use crate::relaxation::{minimum_relaxation, RelaxableSystem};
use crate::scalar::{dot, scale, to_text, Scalar};
use crate::Rational;

/// One arc of the in-front digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InFrontArc<T = Rational> {
    pub from: usize,
    pub to: usize,
    pub wall: usize,
    /// `⟨u, v⟩ > 0` for the wall normal `u` (from `to` to `from`).
    pub margin: T,
}

/// The in-front digraph for one direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InFrontDigraph<T = Rational> {
    pub vertices: usize,
    pub arcs: Vec<InFrontArc<T>>,
}

/// Outcome of the per-direction test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectionVerdict {
    /// Cells in an order compatible with every arc (`from` before `to`).
    Acyclic { order: Vec<usize> },
    /// Cells `c₀, …, c_{k-1}` with arcs `cᵢ → cᵢ₊₁` (indices mod `k`).
    Cyclic { cycle: Vec<usize> },
}

impl DirectionVerdict {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, DirectionVerdict::Acyclic { .. })
    }
}

/// A positive dependence certifying that a dual-graph cycle is never an
/// in-front cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCertificate<T = Rational> {
    /// Cells in traversal order.
    pub cycle: Vec<usize>,
    /// Wall crossed by each step `cᵢ → cᵢ₊₁`.
    pub walls: Vec<usize>,
    /// Coefficient of each step's normal, oriented from `cᵢ` to `cᵢ₊₁`.
    /// Non-negative and nonzero; strictly positive on every step unless
    /// some steps are redundant for the contradiction.
    pub coefficients: Vec<T>,
}

impl<T: Scalar> CycleCertificate<T> {
    /// Oriented step normals of the cycle.
    pub fn oriented_normals(&self, s: &Subdivision<T>) -> Vec<Vec<T>> {
        oriented_normals(s, &self.cycle, &self.walls)
    }

    /// `Σ λᵢ uᵢ = 0` exactly, `λ ≥ 0` and `λ ≠ 0`.
    pub fn verify(&self, s: &Subdivision<T>) -> bool {
        let normals = self.oriented_normals(s);
        let dim = s.dimension();
        let mut sum = vec![T::zero(); dim];
        for (u, l) in normals.iter().zip(&self.coefficients) {
            for j in 0..dim {
                sum[j] = sum[j].clone() + l.clone() * u[j].clone();
            }
        }
        sum.iter().all(|x| x.is_zero())
            && self.coefficients.iter().all(|l| !l.is_negative())
            && self.coefficients.iter().any(|l| l.is_positive())
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.coefficients.iter().all(|l| l.is_positive())
    }

    pub fn to_json(&self, s: &Subdivision<T>) -> Value {
        json!({
            "cycle": self.cycle,
            "walls": self.walls.iter().map(|&w| s.walls()[w].name()).collect::<Vec<_>>(),
            "coefficients": self.coefficients.iter().map(to_text).collect::<Vec<_>>(),
        })
    }
}

/// Outcome of the all-directions test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AllDirectionsVerdict<T = Rational> {
    Acyclic {
        /// One certificate per simple dual-graph cycle, in enumeration order.
        certificates: Vec<CycleCertificate<T>>,
    },
    Cyclic {
        /// A direction realizing the cycle.
        direction: Vec<T>,
        /// The in-front cycle for that direction (arcs `cᵢ → cᵢ₊₁`).
        cycle: Vec<usize>,
    },
}

impl<T> AllDirectionsVerdict<T> {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, AllDirectionsVerdict::Acyclic { .. })
    }
}

fn check_direction<T: Scalar>(s: &Subdivision<T>, direction: &[T]) -> Result<()> {
    if direction.len() != s.dimension() {
        return Err(Error::Dimension {
            context: "direction",
            expected: s.dimension(),
            found: direction.len(),
        });
    }
    if direction.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroDirection);
    }
    Ok(())
}

/// The in-front digraph of a complex (subdivision or fan) in a direction.
pub fn infront_digraph<T: Scalar, C: AsRef<Subdivision<T>>>(
    c: &C,
    direction: &[T],
) -> Result<InFrontDigraph<T>> {
    let s = c.as_ref();
    check_direction(s, direction)?;
    let mut arcs = Vec::new();
    for (w, wall) in s.walls().iter().enumerate() {
        let m = dot(&wall.normal, direction);
        let (cell_c, cell_d) = wall.cells;
        if m.is_positive() {
            arcs.push(InFrontArc {
                from: cell_d,
                to: cell_c,
                wall: w,
                margin: m,
            });
        } else if m.is_negative() {
            arcs.push(InFrontArc {
                from: cell_c,
                to: cell_d,
                wall: w,
                margin: -m,
            });
        }
    }
    Ok(InFrontDigraph {
        vertices: s.cell_count(),
        arcs,
    })
}

impl<T: Scalar> InFrontDigraph<T> {
    /// Kahn's algorithm (smallest available cell first); on failure a cycle
    /// is extracted by walking predecessors inside the unsorted remainder.
    pub fn topological_order(&self) -> DirectionVerdict {
        let n = self.vertices;
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in &self.arcs {
            indeg[a.to] += 1;
            out[a.from].push(a.to);
            inc[a.to].push(a.from);
        }
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = heap.pop() {
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        if order.len() == n {
            return DirectionVerdict::Acyclic { order };
        }
        // Every remaining vertex has a remaining predecessor.
        let remaining: BTreeSet<usize> = (0..n).filter(|v| indeg[*v] > 0).collect();
        let start = *remaining.iter().next().expect("some vertex remains");
        let mut seen = vec![usize::MAX; n];
        let mut walk = Vec::new();
        let mut v = start;
        while seen[v] == usize::MAX {
            seen[v] = walk.len();
            walk.push(v);
            v = *inc[v]
                .iter()
                .find(|u| remaining.contains(u))
                .expect("remaining vertices have remaining predecessors");
        }
        // walk[seen[v]..] is a cycle followed backwards.
        let mut cycle: Vec<usize> = walk[seen[v]..].to_vec();
        cycle.reverse();
        DirectionVerdict::Cyclic { cycle }
    }
}

/// Decides acyclicity of the in-front relation in one direction.
pub fn acyclic_in_direction<T: Scalar, C: AsRef<Subdivision<T>>>(
    c: &C,
    direction: &[T],
) -> Result<DirectionVerdict> {
    Ok(infront_digraph(c, direction)?.topological_order())
}

/// In-front acyclicity of a planar section seen from a point `x` of its
/// plane, decided on the fan over the section lifted to `height`: the
/// relation from `x` is the relation of the fan in direction `-(x, height)`.
pub fn acyclic_from_section_point<T: Scalar>(
    section: &Subdivision<T>,
    height: &T,
    x: &[T],
) -> Result<DirectionVerdict> {
    let fan = fan_from_section(section, height)?;
    let mut lifted = x.to_vec();
    lifted.push(height.clone());
    let direction = scale(&-T::one(), &lifted);
    acyclic_in_direction(&fan, &direction)
}

/// Simple cycles of the dual graph with 3 to `max_len` cells, each listed
/// once: starting at its smallest cell, second cell smaller than the last.
pub fn dual_cycles<T: Scalar>(s: &Subdivision<T>, max_len: usize) -> Vec<Vec<usize>> {
    let adj: Vec<Vec<usize>> = s
        .dual_graph()
        .into_iter()
        .map(|nb| {
            let mut v: Vec<usize> = nb.into_iter().map(|(c, _)| c).collect();
            v.sort_unstable();
            v
        })
        .collect();
    simple_cycles(&adj, max_len)
}

/// Simple cycles of length `3..=max_len` of an undirected graph given by
/// sorted adjacency lists, each reported once: it starts at its smallest
/// vertex and its second vertex is smaller than its last.
pub(crate) fn simple_cycles(adj: &[Vec<usize>], max_len: usize) -> Vec<Vec<usize>> {
    let mut cycles = Vec::new();
    for start in 0..adj.len() {
        let mut path = vec![start];
        let mut on_path = vec![false; adj.len()];
        on_path[start] = true;
        extend(adj, start, max_len, &mut path, &mut on_path, &mut cycles);
    }
    cycles
}

fn extend(
    adj: &[Vec<usize>],
    start: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    cycles: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().expect("non-empty path");
    for &next in &adj[last] {
        if next == start && path.len() >= 3 && path[1] < last {
            cycles.push(path.clone());
        }
        if next > start && !on_path[next] && path.len() < max_len {
            path.push(next);
            on_path[next] = true;
            extend(adj, start, max_len, path, on_path, cycles);
            on_path[next] = false;
            path.pop();
        }
    }
}

fn wall_between<T: Scalar>(s: &Subdivision<T>, a: usize, b: usize) -> usize {
    s.walls()
        .iter()
        .position(|w| w.cells == (a.min(b), a.max(b)))
        .expect("consecutive cycle cells are adjacent")
}

fn oriented_normals<T: Scalar>(
    s: &Subdivision<T>,
    cycle: &[usize],
    walls: &[usize],
) -> Vec<Vec<T>> {
    let k = cycle.len();
    (0..k)
        .map(|i| {
            let wall = &s.walls()[walls[i]];
            if wall.cells.0 == cycle[i] {
                wall.normal.clone()
            } else {
                scale(&-T::one(), &wall.normal)
            }
        })
        .collect()
}

enum CycleOutcome<T> {
    Realizable(Vec<T>),
    Certified(CycleCertificate<T>),
}

fn test_cycle<T: Scalar>(s: &Subdivision<T>, cycle: &[usize]) -> CycleOutcome<T> {
    let k = cycle.len();
    let walls: Vec<usize> = (0..k)
        .map(|i| wall_between(s, cycle[i], cycle[(i + 1) % k]))
        .collect();
    let normals = oriented_normals(s, cycle, &walls);
    let m = Matrix::from_rows_with_cols(&normals, s.dimension()).expect("uniform normals");
    match gordan(&m) {
        GordanWitness::Primal(delta) => CycleOutcome::Realizable(delta),
        GordanWitness::Dual(y) => {
            // Prefer the dependence with the largest support (all steps that
            // are forced to vanish), which is strictly positive whenever no
            // step is redundant.
            let sys = RelaxableSystem::from_rows(&normals).expect("non-empty rows");
            let support = minimum_relaxation(&sys).relaxed;
            let coefficients = positive_dependence(&m, &support)
                .map(|l| T::primitive(&l))
                .unwrap_or(y);
            CycleOutcome::Certified(CycleCertificate {
                cycle: cycle.to_vec(),
                walls,
                coefficients,
            })
        }
    }
}

/// Tests every simple dual-graph cycle up to `max_len` cells.
///
/// Returns a realizing direction for the first realizable cycle, or one
/// verified certificate per cycle.  This is exhaustive over dual-graph
/// cycles, the standard working method; whether it captures every in-front
/// cycle in all dimensions is not claimed.
pub fn acyclic_all_directions<T: Scalar, C: AsRef<Subdivision<T>>>(
    c: &C,
    max_len: usize,
) -> Result<AllDirectionsVerdict<T>> {
    if max_len < 3 {
        return Err(Error::Precondition("max_len must be at least 3".into()));
    }
    let s = c.as_ref();
    let cycles = dual_cycles(s, max_len);
    let outcomes: Vec<CycleOutcome<T>> = cycles.par_iter().map(|cy| test_cycle(s, cy)).collect();
    let mut certificates = Vec::with_capacity(outcomes.len());
    for (cycle, outcome) in cycles.iter().zip(outcomes) {
        match outcome {
            CycleOutcome::Realizable(delta) => {
                // Normals oriented c_i -> c_{i+1} with <u, δ> > 0 give arcs
                // c_{i+1} -> c_i: the in-front cycle runs backwards.
                let mut back = cycle.clone();
                back.reverse();
                debug_assert!(!acyclic_in_direction(c, &delta)?.is_acyclic());
                return Ok(AllDirectionsVerdict::Cyclic {
                    direction: delta,
                    cycle: back,
                });
            }
            CycleOutcome::Certified(cert) => {
                assert!(cert.verify(s), "cycle certificate failed verification");
                certificates.push(cert);
            }
        }
    }
    Ok(AllDirectionsVerdict::Acyclic { certificates })
}
