//! Applications: redundant cables of spider webs and embeddings of
//! directional graphs.
//!
//! A spider web is a planar straight-line drawing whose bounded faces are
//! convex and whose boundary vertices are pinned.  Its bounded faces form a
//! subdivision of the point set; the cables lying on walls relaxed by the
//! finest regular coarsening cannot carry a positive stress, and recursive
//! regularity certifies rigidity.
//!
//! A directional graph assigns antisymmetric vectors `h(u, v)` to the edges
//! of a graph.  An embedding into a point set is a bijection `σ` with
//! `⟨h(v, u), σ(v) − σ(u)⟩ ≥ 0` on every edge; a drawing is a placement `π`
//! with `π(v) − π(u)` a positive multiple of `h(v, u)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::{
    orient_2d, ComplexKind, Fan, PointConfiguration, Subdivision, ValidationOptions,
};
use crate::error::{Error, Result};
use crate::floodlight::Assignment;
use crate::lp::{gordan, GordanWitness};
use crate::matching::min_cost_matching;
use crate::matrix::Matrix;
use crate::rectree::{regularity_tree, RegularityTree};
use crate::regularity::{finest_regular_coarsening, FinestRegularCoarsening};
use crate::scalar::{dot, sub, to_text, Scalar};
use crate::visibility::simple_cycles;
use crate::Rational;

/// A planar web of cables with its convex-hull vertices pinned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiderWeb<T = Rational> {
    vertices: Vec<Vec<T>>,
    cables: Vec<(usize, usize)>,
    labels: Vec<Option<String>>,
    pinned: Vec<usize>,
}

impl<T: Scalar> SpiderWeb<T> {
    /// Validates a web: planar coordinates, simple cables, a connected
    /// graph, and (if given) a pinned set equal to the vertices on the
    /// boundary of the convex hull.  `labels` name cables by endpoints.
    pub fn new(
        vertices: Vec<Vec<T>>,
        cables: Vec<(usize, usize)>,
        pinned: Option<Vec<usize>>,
        labels: &[(String, (usize, usize))],
    ) -> Result<Self> {
        let n = vertices.len();
        if let Some(v) = vertices.iter().find(|v| v.len() != 2) {
            return Err(Error::Dimension {
                context: "spider web vertex",
                expected: 2,
                found: v.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &cables {
            for i in [a, b] {
                if i >= n {
                    return Err(Error::IndexOutOfRange {
                        context: "cable endpoint",
                        index: i,
                        size: n,
                    });
                }
            }
            if a == b || !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::Precondition(format!(
                    "cable ({a}, {b}) is a loop or a duplicate"
                )));
            }
        }
        let adj = adjacency(n, &cables);
        if !is_connected(&adj) {
            return Err(Error::Precondition(
                "the cable graph is not connected".into(),
            ));
        }
        let boundary = hull_boundary(&vertices);
        if let Some(mut p) = pinned {
            p.sort_unstable();
            p.dedup();
            if p != boundary {
                return Err(Error::Precondition(format!(
                    "pinned vertices {p:?} differ from the convex-hull vertices {boundary:?}"
                )));
            }
        }
        let mut names = vec![None; cables.len()];
        for (label, (a, b)) in labels {
            let key = ((*a).min(*b), (*a).max(*b));
            let i = cables
                .iter()
                .position(|&(x, y)| (x.min(y), x.max(y)) == key)
                .ok_or_else(|| {
                    Error::Precondition(format!("cable label {label:?}: ({a}, {b}) is not a cable"))
                })?;
            names[i] = Some(label.clone());
        }
        Ok(SpiderWeb {
            vertices,
            cables,
            labels: names,
            pinned: boundary,
        })
    }

    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    pub fn cables(&self) -> &[(usize, usize)] {
        &self.cables
    }

    /// Vertices on the boundary of the convex hull, sorted.
    pub fn pinned(&self) -> &[usize] {
        &self.pinned
    }

    /// The label of a cable, or `"a-b"` from its endpoints.
    pub fn cable_name(&self, i: usize) -> String {
        self.labels[i].clone().unwrap_or_else(|| {
            let (a, b) = self.cables[i];
            format!("{}-{}", a.min(b), a.max(b))
        })
    }

    /// Labels attached to cables, by cable index.
    pub fn cable_labels(&self) -> Vec<(String, (usize, usize))> {
        self.labels
            .iter()
            .zip(&self.cables)
            .filter_map(|(l, &c)| l.clone().map(|l| (l, c)))
            .collect()
    }

    /// Bounded faces of the drawing, each as its counterclockwise vertex
    /// cycle.  Fails on a crossing-free violation such as a reflex corner.
    pub fn faces(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.vertices.len();
        let mut rotation = adjacency(n, &self.cables);
        for (v, nb) in rotation.iter_mut().enumerate() {
            let base = &self.vertices[v];
            nb.sort_by(|&a, &b| {
                angular_cmp(&sub(&self.vertices[a], base), &sub(&self.vertices[b], base))
            });
        }
        let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut faces = Vec::new();
        for &(a, b) in &self.cables {
            for start in [(a, b), (b, a)] {
                if visited.contains(&start) {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut u, mut v) = start;
                while visited.insert((u, v)) {
                    walk.push(u);
                    let nb = &rotation[v];
                    let at = nb
                        .iter()
                        .position(|&x| x == u)
                        .expect("rotation contains the reverse edge");
                    let w = nb[(at + nb.len() - 1) % nb.len()];
                    u = v;
                    v = w;
                }
                let pts: Vec<Vec<T>> = walk.iter().map(|&i| self.vertices[i].clone()).collect();
                if signed_double_area(&pts).is_positive() {
                    faces.push(walk);
                }
            }
        }
        for face in &faces {
            let k = face.len();
            let reflex = (0..k).any(|i| {
                let p = &self.vertices[face[i]];
                let q = &self.vertices[face[(i + 1) % k]];
                let r = &self.vertices[face[(i + 2) % k]];
                orient_2d(p, q, r).is_negative()
            });
            if reflex || BTreeSet::from_iter(face.iter().copied()).len() != k {
                return Err(Error::Precondition(format!(
                    "face {face:?} of the web is not a convex cell"
                )));
            }
        }
        Ok(faces)
    }

    /// The subdivision formed by the bounded faces, with cable labels
    /// carried over to the walls they span.
    pub fn subdivision(&self) -> Result<Subdivision<T>> {
        let faces = self.faces()?;
        let config = PointConfiguration::new(2, self.vertices.clone(), None)?;
        let s = Subdivision::validate(
            config,
            faces,
            ComplexKind::PointSubdivision,
            ValidationOptions::default(),
        )?;
        let wall_labels: Vec<(String, Vec<usize>)> = self
            .cable_labels()
            .into_iter()
            .filter(|(_, (a, b))| {
                let key = vec![*a.min(b), *a.max(b)];
                s.walls().iter().any(|w| w.ridge == key)
            })
            .map(|(l, (a, b))| (l, vec![a, b]))
            .collect();
        s.with_wall_labels(&wall_labels)
    }

    /// Indices of cables not on the boundary of the hull, paired with the
    /// wall of `s` containing them.
    fn cable_walls(&self, s: &Subdivision<T>) -> Vec<(usize, usize)> {
        self.cables
            .iter()
            .enumerate()
            .filter_map(|(i, &(a, b))| {
                s.walls()
                    .iter()
                    .position(|w| w.ridge.contains(&a) && w.ridge.contains(&b))
                    .map(|w| (i, w))
            })
            .collect()
    }

    /// The web with the given cables removed.
    pub fn without_cables(&self, remove: &[usize]) -> Result<Self> {
        let drop: BTreeSet<usize> = remove.iter().copied().collect();
        let keep: Vec<usize> = (0..self.cables.len())
            .filter(|i| !drop.contains(i))
            .collect();
        let cables = keep.iter().map(|&i| self.cables[i]).collect();
        let labels: Vec<(String, (usize, usize))> = keep
            .iter()
            .filter_map(|&i| self.labels[i].clone().map(|l| (l, self.cables[i])))
            .collect();
        SpiderWeb::new(
            self.vertices.clone(),
            cables,
            Some(self.pinned.clone()),
            &labels,
        )
    }
}

/// Outcome of the redundancy analysis of a web.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WebAnalysis<T = Rational> {
    /// Interior cables (index into the web's cables).
    pub interior: Vec<usize>,
    /// Interior cables lying on walls relaxed by the finest regular
    /// coarsening: no positive stress can use them.
    pub redundant: Vec<usize>,
    /// Names of the redundant cables.
    pub redundant_names: Vec<String>,
    /// The finest regular coarsening of the web's subdivision.
    pub frc: FinestRegularCoarsening<T>,
    /// The regularity tree; recursive regularity certifies rigidity.
    pub tree: RegularityTree<T>,
}

impl<T: Scalar> WebAnalysis<T> {
    /// Rigidity certified by recursive regularity (a sufficient condition;
    /// `false` means no verdict).
    pub fn rigid(&self) -> bool {
        self.tree.is_recursively_regular()
    }

    /// Whether the finest regular coarsening is the identity, which
    /// infinitesimal rigidity requires.
    pub fn frc_is_identity(&self) -> bool {
        self.frc.coarsening.is_identity()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "interior_cables": self.interior.len(),
            "redundant": self.redundant_names,
            "rigid": self.rigid(),
            "frc_identity": self.frc_is_identity(),
            "frc_groups": self.frc.coarsening.groups,
            "tree_depth": self.tree.depth(),
        })
    }
}

/// Finds the cables of `w` that cannot support a positive stress and
/// decides the rigidity certificate.
pub fn spiderweb_redundant_cables<T: Scalar>(w: &SpiderWeb<T>) -> Result<WebAnalysis<T>> {
    let s = w.subdivision()?;
    let frc = finest_regular_coarsening(&s);
    let relaxed: BTreeSet<usize> = frc.relaxed_walls.iter().copied().collect();
    let pairs = w.cable_walls(&s);
    let interior: Vec<usize> = pairs.iter().map(|&(c, _)| c).collect();
    let redundant: Vec<usize> = pairs
        .iter()
        .filter(|(_, wall)| relaxed.contains(wall))
        .map(|&(c, _)| c)
        .collect();
    let redundant_names = redundant.iter().map(|&c| w.cable_name(c)).collect();
    let tree = regularity_tree(&s);
    Ok(WebAnalysis {
        interior,
        redundant,
        redundant_names,
        frc,
        tree,
    })
}

/// A directional graph: vertices `0..n` and antisymmetric edge vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionalGraph<T = Rational> {
    dimension: usize,
    vertices: usize,
    /// Non-zero values of `h`, stored for both orientations.
    h: BTreeMap<(usize, usize), Vec<T>>,
}

impl<T: Scalar> DirectionalGraph<T> {
    /// Builds a graph from arcs `(u, v, h(u, v))`; `h(v, u) = −h(u, v)` is
    /// implied, and an arc given in both orientations must be antisymmetric.
    /// Zero vectors (and loops with zero vector) add no edge.
    pub fn new(
        dimension: usize,
        vertices: usize,
        arcs: Vec<(usize, usize, Vec<T>)>,
    ) -> Result<Self> {
        let mut h: BTreeMap<(usize, usize), Vec<T>> = BTreeMap::new();
        for (u, v, x) in arcs {
            for i in [u, v] {
                if i >= vertices {
                    return Err(Error::IndexOutOfRange {
                        context: "directional graph arc",
                        index: i,
                        size: vertices,
                    });
                }
            }
            if x.len() != dimension {
                return Err(Error::Dimension {
                    context: "directional graph vector",
                    expected: dimension,
                    found: x.len(),
                });
            }
            let zero = x.iter().all(|c| c.is_zero());
            if u == v {
                if !zero {
                    return Err(Error::Precondition(format!("h({u}, {u}) must be zero")));
                }
                continue;
            }
            let neg: Vec<T> = x.iter().map(|c| -c.clone()).collect();
            let consistent =
                h.get(&(u, v)).is_none_or(|y| *y == x) && h.get(&(v, u)).is_none_or(|y| *y == neg);
            let zero_conflict = zero && h.contains_key(&(u, v));
            if !consistent || zero_conflict {
                return Err(Error::Precondition(format!(
                    "h is not antisymmetric on the edge ({u}, {v})"
                )));
            }
            if !zero {
                h.insert((u, v), x);
                h.insert((v, u), neg);
            }
        }
        Ok(DirectionalGraph {
            dimension,
            vertices,
            h,
        })
    }

    /// The graph whose drawing is `π`: `h(u, v) = π(u) − π(v)` on `edges`.
    pub fn from_drawing(drawing: &[Vec<T>], edges: &[(usize, usize)]) -> Result<Self> {
        let d = drawing.first().map_or(0, Vec::len);
        let arcs = edges
            .iter()
            .map(|&(u, v)| {
                let pu = drawing.get(u).ok_or(Error::IndexOutOfRange {
                    context: "drawing",
                    index: u,
                    size: drawing.len(),
                })?;
                let pv = drawing.get(v).ok_or(Error::IndexOutOfRange {
                    context: "drawing",
                    index: v,
                    size: drawing.len(),
                })?;
                Ok((u, v, sub(pu, pv)))
            })
            .collect::<Result<Vec<_>>>()?;
        DirectionalGraph::new(d, drawing.len(), arcs)
    }

    /// Directional graph of a polytope: `h(u, v) = v − u` on its edges.
    /// The negated vertex coordinates are a drawing.
    pub fn polytope(vertices: &[Vec<T>], edges: &[(usize, usize)]) -> Result<Self> {
        let negated: Vec<Vec<T>> = vertices
            .iter()
            .map(|v| v.iter().map(|x| -x.clone()).collect())
            .collect();
        DirectionalGraph::from_drawing(&negated, edges)
    }

    /// Normal graph of a fan: cells, with `h(C, D)` the normal of their
    /// common wall pointing from `C` to `D`.
    pub fn normal_graph(f: &Fan<T>) -> Result<Self> {
        let arcs = f
            .walls()
            .iter()
            .map(|w| (w.cells.0, w.cells.1, w.normal.clone()))
            .collect();
        DirectionalGraph::new(f.dimension(), f.cell_count(), arcs)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// `h(u, v)`, zero off the edges.
    pub fn h(&self, u: usize, v: usize) -> Vec<T> {
        self.h
            .get(&(u, v))
            .cloned()
            .unwrap_or_else(|| vec![T::zero(); self.dimension])
    }

    /// Edges `(u, v)` with `u < v` and `h(u, v) ≠ 0`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.h.keys().filter(|(u, v)| u < v).copied().collect()
    }

    /// Checks that `drawing` is a drawing: injective, and
    /// `π(v) − π(u) = λ·h(v, u)` with `λ > 0` on every edge.
    pub fn check_drawing(&self, drawing: &[Vec<T>]) -> Result<()> {
        if drawing.len() != self.vertices {
            return Err(Error::Precondition(format!(
                "a drawing places {} vertices, found {}",
                self.vertices,
                drawing.len()
            )));
        }
        if let Some(p) = drawing.iter().find(|p| p.len() != self.dimension) {
            return Err(Error::Dimension {
                context: "drawing",
                expected: self.dimension,
                found: p.len(),
            });
        }
        if drawing.iter().collect::<BTreeSet<_>>().len() != drawing.len() {
            return Err(Error::Precondition("a drawing must be injective".into()));
        }
        for (u, v) in self.edges() {
            let diff = sub(&drawing[v], &drawing[u]);
            let h = self.h(v, u);
            if !positive_multiple(&diff, &h) {
                return Err(Error::Precondition(format!(
                    "drawing violates the direction of edge ({u}, {v})"
                )));
            }
        }
        Ok(())
    }
}

/// Whether `x = λ·y` for some `λ > 0` (`y ≠ 0`).
fn positive_multiple<T: Scalar>(x: &[T], y: &[T]) -> bool {
    let Some(j) = y.iter().position(|c| !c.is_zero()) else {
        return false;
    };
    let lambda = x[j].clone() / y[j].clone();
    lambda.is_positive()
        && x.iter()
            .zip(y)
            .all(|(a, b)| *a == lambda.clone() * b.clone())
}

/// Embedding margin of one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMargin<T = Rational> {
    pub u: usize,
    pub v: usize,
    /// `⟨h(v, u), σ(v) − σ(u)⟩`; the same value for either orientation.
    pub margin: T,
    pub violated: bool,
}

/// Margins of all edges under a vertex-to-point bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport<T = Rational> {
    pub edges: Vec<EdgeMargin<T>>,
}

impl<T: Scalar> EmbeddingReport<T> {
    pub fn violations(&self) -> Vec<&EdgeMargin<T>> {
        self.edges.iter().filter(|e| e.violated).collect()
    }

    /// True iff the bijection is an embedding.
    pub fn is_embedding(&self) -> bool {
        self.edges.iter().all(|e| !e.violated)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "embedding": self.is_embedding(),
            "edges": self.edges.iter().map(|e| json!({
                "edge": [e.u, e.v],
                "margin": to_text(&e.margin),
                "violated": e.violated,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Exact embedding margins of `σ` (vertex `v` ↦ point `σ(v)`).
pub fn check_embedding<T: Scalar>(
    g: &DirectionalGraph<T>,
    points: &[Vec<T>],
    sigma: &Assignment,
) -> Result<EmbeddingReport<T>> {
    sigma.check(g.vertex_count(), points.len())?;
    if let Some(p) = points.iter().find(|p| p.len() != g.dimension()) {
        return Err(Error::Dimension {
            context: "embedding point",
            expected: g.dimension(),
            found: p.len(),
        });
    }
    let edges = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let margin = dot(
                &g.h(v, u),
                &sub(&points[sigma.mapping[v]], &points[sigma.mapping[u]]),
            );
            EdgeMargin {
                u,
                v,
                violated: margin.is_negative(),
                margin,
            }
        })
        .collect();
    Ok(EmbeddingReport { edges })
}

/// An embedding of a drawable graph obtained from a least-squares matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawableEmbedding<T = Rational> {
    /// Vertex `v` ↦ point index `μ(π(v))`.
    pub assignment: Assignment,
    /// Total squared distance of the matching.
    pub cost: T,
    pub report: EmbeddingReport<T>,
}

/// Embeds a drawable graph into `points`: matches the drawing to the points
/// minimizing the total squared distance and returns `μ ∘ π`.
pub fn embed_drawable<T: Scalar>(
    g: &DirectionalGraph<T>,
    drawing: &[Vec<T>],
    points: &[Vec<T>],
) -> Result<DrawableEmbedding<T>> {
    g.check_drawing(drawing)?;
    if points.len() != drawing.len() {
        return Err(Error::Precondition(format!(
            "{} vertices but {} points",
            drawing.len(),
            points.len()
        )));
    }
    let cost = squared_distances(drawing, points)?;
    let m = min_cost_matching(&cost);
    let assignment = Assignment {
        mapping: m.row_to_col,
    };
    let report = check_embedding(g, points, &assignment)?;
    assert!(
        report.is_embedding(),
        "a least-squares matching of a drawing is an embedding"
    );
    Ok(DrawableEmbedding {
        assignment,
        cost: m.cost,
        report,
    })
}

/// Cost matrix `|π(v) − p_j|²`.
pub fn squared_distances<T: Scalar>(drawing: &[Vec<T>], points: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let d = drawing.first().map_or(0, Vec::len);
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(Error::Dimension {
            context: "embedding point",
            expected: d,
            found: p.len(),
        });
    }
    Ok(drawing
        .iter()
        .map(|a| {
            points
                .iter()
                .map(|b| {
                    let x = sub(a, b);
                    dot(&x, &x)
                })
                .collect()
        })
        .collect())
}

/// A cycle `v₀, …, v_{k-1}` with `⟨h(vᵢ, vᵢ₊₁), δ⟩ > 0` for all `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcingCycle<T = Rational> {
    pub cycle: Vec<usize>,
    pub delta: Vec<T>,
}

impl<T: Scalar> ForcingCycle<T> {
    /// Re-checks the strict inequalities exactly.
    pub fn verify(&self, g: &DirectionalGraph<T>) -> bool {
        let k = self.cycle.len();
        k >= 2
            && (0..k).all(|i| {
                let h = g.h(self.cycle[i], self.cycle[(i + 1) % k]);
                dot(&h, &self.delta).is_positive()
            })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cycle": self.cycle,
            "delta": self.delta.iter().map(to_text).collect::<Vec<_>>(),
        })
    }
}

/// Searches the simple cycles of length at most `max_len` for a forcing
/// cycle; the first one found in canonical cycle order is returned.
pub fn forcing_cycle<T: Scalar>(
    g: &DirectionalGraph<T>,
    max_len: usize,
) -> Option<ForcingCycle<T>> {
    let adj = adjacency(g.vertex_count(), &g.edges());
    let cycles = simple_cycles(&adj, max_len);
    cycles.par_iter().find_map_first(|cycle| {
        let k = cycle.len();
        let rows: Vec<Vec<T>> = (0..k).map(|i| g.h(cycle[i], cycle[(i + 1) % k])).collect();
        let m =
            Matrix::from_rows_with_cols(&rows, g.dimension()).expect("rows share the dimension");
        match gordan(&m) {
            GordanWitness::Primal(delta) => Some(ForcingCycle {
                cycle: cycle.clone(),
                delta,
            }),
            GordanWitness::Dual(_) => None,
        }
    })
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for nb in &mut adj {
        nb.sort_unstable();
        nb.dedup();
    }
    adj
}

fn is_connected(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return true;
    }
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Counterclockwise order of directions starting at angle 0.
fn angular_cmp<T: Scalar>(a: &[T], b: &[T]) -> Ordering {
    let half = |v: &[T]| !(v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()));
    match half(a).cmp(&half(b)) {
        Ordering::Equal => {
            let cross = a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone();
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
        o => o,
    }
}

fn signed_double_area<T: Scalar>(poly: &[Vec<T>]) -> T {
    let k = poly.len();
    (0..k).fold(T::zero(), |acc, i| {
        let (p, q) = (&poly[i], &poly[(i + 1) % k]);
        acc + p[0].clone() * q[1].clone() - p[1].clone() * q[0].clone()
    })
}

/// Indices of points on the boundary of the convex hull, sorted.
fn hull_boundary<T: Scalar>(points: &[Vec<T>]) -> Vec<usize> {
    let hull = crate::complex::convex_hull_2d(points);
    let k = hull.len();
    (0..points.len())
        .filter(|&i| {
            let p = &points[i];
            if k < 3 {
                return true;
            }
            (0..k).any(|j| {
                let (a, b) = (&hull[j], &hull[(j + 1) % k]);
                orient_2d(a, b, p).is_zero()
                    && (0..2).all(|c| {
                        let (lo, hi) = if a[c] <= b[c] {
                            (&a[c], &b[c])
                        } else {
                            (&b[c], &a[c])
                        };
                        *lo <= p[c] && p[c] <= *hi
                    })
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ints;
    use num_traits::Signed;

    fn square_web() -> SpiderWeb {
        // Unit square with a centre vertex joined to all corners.
        SpiderWeb::new(
            vec![
                ints(&[0, 0]),
                ints(&[2, 0]),
                ints(&[2, 2]),
                ints(&[0, 2]),
                ints(&[1, 1]),
            ],
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (0, 4),
                (1, 4),
                (2, 4),
                (3, 4),
            ],
            None,
            &[("d".into(), (0, 4))],
        )
        .unwrap()
    }

    #[test]
    fn faces_of_a_wheel() {
        let w = square_web();
        assert_eq!(w.pinned(), &[0, 1, 2, 3]);
        let mut faces: Vec<Vec<usize>> = w
            .faces()
            .unwrap()
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        faces.sort();
        assert_eq!(
            faces,
            vec![vec![0, 1, 4], vec![0, 3, 4], vec![1, 2, 4], vec![2, 3, 4]]
        );
        let s = w.subdivision().unwrap();
        assert!(s
            .walls()
            .iter()
            .any(|wall| wall.label.as_deref() == Some("d")));
    }

    #[test]
    fn regular_wheel_has_no_redundant_cable() {
        let a = spiderweb_redundant_cables(&square_web()).unwrap();
        assert_eq!(a.interior.len(), 4);
        assert!(a.redundant.is_empty());
        assert!(a.rigid());
        assert!(a.frc_is_identity());
    }

    #[test]
    fn wrong_pinned_set_is_rejected() {
        let w = square_web();
        let err = SpiderWeb::new(
            w.vertices().to_vec(),
            w.cables().to_vec(),
            Some(vec![0, 1, 2]),
            &[],
        );
        assert!(err.is_err());
    }

    #[test]
    fn reflex_face_is_rejected() {
        // A dart: the centre vertex makes a reflex corner of the outer region.
        let w = SpiderWeb::<Rational>::new(
            vec![ints(&[0, 0]), ints(&[4, 0]), ints(&[2, 4]), ints(&[2, 1])],
            vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 1)],
            None,
            &[],
        )
        .unwrap();
        assert!(w.faces().is_err());
    }

    #[test]
    fn antisymmetry_is_enforced() {
        let ok = DirectionalGraph::<Rational>::new(
            2,
            2,
            vec![(0, 1, ints(&[1, 0])), (1, 0, ints(&[-1, 0]))],
        );
        assert!(ok.is_ok());
        let bad = DirectionalGraph::<Rational>::new(
            2,
            2,
            vec![(0, 1, ints(&[1, 0])), (1, 0, ints(&[1, 0]))],
        );
        assert!(bad.is_err());
        let loop_ = DirectionalGraph::<Rational>::new(2, 1, vec![(0, 0, ints(&[1, 0]))]);
        assert!(loop_.is_err());
    }

    #[test]
    fn parallel_triangle_forces() {
        let g = DirectionalGraph::<Rational>::new(
            2,
            3,
            vec![
                (0, 1, ints(&[1, 0])),
                (1, 2, ints(&[1, 0])),
                (2, 0, ints(&[1, 0])),
            ],
        )
        .unwrap();
        let fc = forcing_cycle(&g, 3).unwrap();
        assert!(fc.verify(&g));
        assert_eq!(fc.delta, ints(&[1, 0]));
    }

    #[test]
    fn square_drawing_embeds_identically() {
        let square: Vec<Vec<Rational>> =
            vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[1, 1]), ints(&[0, 1])];
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0)];
        let g = DirectionalGraph::from_drawing(&square, &edges).unwrap();
        g.check_drawing(&square).unwrap();
        let e = embed_drawable(&g, &square, &square).unwrap();
        assert_eq!(e.assignment, Assignment::identity(4));
        assert!(e.report.edges.iter().all(|m| m.margin.is_positive()));
        assert!(forcing_cycle(&g, 4).is_none());
    }

    #[test]
    fn polytope_graph_is_drawn_by_negated_vertices() {
        let square: Vec<Vec<Rational>> =
            vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[1, 1]), ints(&[0, 1])];
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0)];
        let g = DirectionalGraph::polytope(&square, &edges).unwrap();
        assert_eq!(g.h(0, 1), ints(&[1, 0]));
        let negated: Vec<Vec<Rational>> = square
            .iter()
            .map(|v| v.iter().map(|x| -x).collect())
            .collect();
        g.check_drawing(&negated).unwrap();
        assert!(g.check_drawing(&square).is_err());
    }

    #[test]
    fn zero_graph_has_no_violations() {
        let g = DirectionalGraph::<Rational>::new(2, 3, vec![(0, 1, ints(&[0, 0]))]).unwrap();
        assert!(g.edges().is_empty());
        let pts = vec![ints(&[0, 0]), ints(&[5, 1]), ints(&[-2, 3])];
        let r = check_embedding(
            &g,
            &pts,
            &Assignment {
                mapping: vec![2, 0, 1],
            },
        )
        .unwrap();
        assert!(r.is_embedding());
    }
}
