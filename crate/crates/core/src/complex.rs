//! Point configurations, polyhedral subdivisions, fans, walls and
//! coarsenings.
//!
//! Cells are stored combinatorially as sorted vertex-index sets.  All
//! geometry is computed in *homogeneous* form: a point `x ∈ ℝᵈ` of a point
//! subdivision is treated as the vector `(1, x) ∈ ℝᵈ⁺¹`, a ray of a fan is
//! used as is.  With this convention a polytope cell is the section of the
//! cone spanned by its homogeneous vertices, affine dependencies become
//! linear ones, and points and fans share one code path.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{gordan, GordanWitness};
use crate::matrix::{rank_of, Matrix};
use crate::scalar::{dot, Scalar};
use crate::Rational;

/// Whether a complex is made of polytopes spanned by points or of cones
/// spanned by rays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComplexKind {
    #[serde(rename = "pointset-subdivision")]
    PointSubdivision,
    #[serde(rename = "fan")]
    Fan,
}

/// A finite labeled set of exact points (or ray generators) in `ℝᵈ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration<T = Rational> {
    dimension: usize,
    points: Vec<Vec<T>>,
    labels: Option<Vec<String>>,
}

impl<T: Scalar> PointConfiguration<T> {
    /// Checks lengths, label count and pairwise distinctness.
    pub fn new(dimension: usize, points: Vec<Vec<T>>, labels: Option<Vec<String>>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Precondition("dimension must be at least 1".into()));
        }
        for p in &points {
            if p.len() != dimension {
                return Err(Error::Dimension {
                    context: "point coordinates",
                    expected: dimension,
                    found: p.len(),
                });
            }
        }
        if let Some(l) = &labels {
            if l.len() != points.len() {
                return Err(Error::Dimension {
                    context: "point labels",
                    expected: points.len(),
                    found: l.len(),
                });
            }
        }
        let mut seen = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            if let Some(j) = seen.insert(p.clone(), i) {
                return Err(Error::Precondition(format!("points {j} and {i} coincide")));
            }
        }
        Ok(PointConfiguration {
            dimension,
            points,
            labels,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of point `i` (its index when unlabeled).
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }
}

/// A facet of a cell: the vertices on a supporting hyperplane, with the
/// primitive homogeneous inward normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet<T = Rational> {
    pub vertices: Vec<usize>,
    pub normal: Vec<T>,
}

/// An interior wall `C ∩ D` with its normal oriented from `C` to `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall<T = Rational> {
    /// `(C, D)` with `C < D`.
    pub cells: (usize, usize),
    /// Vertices spanning the wall.
    pub ridge: Vec<usize>,
    /// Primitive integer normal in `ℝᵈ`, pointing from `C` into `D`.
    pub normal: Vec<T>,
    /// Offset `c` with `⟨normal, x⟩ + c = 0` on the wall (zero for fans).
    pub offset: T,
    /// Optional user-facing name.
    pub label: Option<String>,
}

impl<T: Scalar> Wall<T> {
    /// The user label, or `"C-D"` from the cell indices.
    pub fn name(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("{}-{}", self.cells.0, self.cells.1))
    }

    /// Signed value `⟨normal, x⟩ + offset`: positive on the `D` side.
    pub fn side(&self, x: &[T]) -> T {
        dot(&self.normal, x) + self.offset.clone()
    }
}

/// A single defect found by validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    IndexOutOfRange {
        cell: usize,
        index: usize,
    },
    EmptyCell {
        cell: usize,
    },
    DegenerateCell {
        cell: usize,
    },
    NotPointed {
        cell: usize,
    },
    NonConvexCell {
        cell: usize,
        vertex: usize,
    },
    Overlap {
        cells: (usize, usize),
        witness: Vec<String>,
    },
    Gap {
        cell: usize,
        witness: Vec<String>,
    },
    NotFaceToFace {
        cells: (usize, usize),
        witness: Vec<String>,
    },
    AreaMismatch {
        cells_area: String,
        hull_area: String,
    },
    GroundNotPointed,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IndexOutOfRange { cell, index } => {
                write!(f, "cell {cell} references missing point {index}")
            }
            Violation::EmptyCell { cell } => write!(f, "cell {cell} is empty"),
            Violation::DegenerateCell { cell } => write!(f, "cell {cell} is not full-dimensional"),
            Violation::NotPointed { cell } => write!(f, "cone {cell} is not pointed"),
            Violation::NonConvexCell { cell, vertex } => write!(
                f,
                "non-convex cell {cell}: listed point {vertex} lies in the cell's interior"
            ),
            Violation::Overlap { cells, witness } => write!(
                f,
                "interiors of cells {} and {} overlap at ({})",
                cells.0,
                cells.1,
                witness.join(", ")
            ),
            Violation::Gap { cell, witness } => write!(
                f,
                "gap: facet of cell {cell} at ({}) has no neighbor and is not on the boundary",
                witness.join(", ")
            ),
            Violation::NotFaceToFace { cells, witness } => write!(
                f,
                "cells {} and {} meet in a non-common face near ({})",
                cells.0,
                cells.1,
                witness.join(", ")
            ),
            Violation::AreaMismatch {
                cells_area,
                hull_area,
            } => write!(
                f,
                "cells cover area {cells_area} but the hull has area {hull_area}"
            ),
            Violation::GroundNotPointed => write!(f, "the fan's support is not a pointed cone"),
        }
    }
}

/// Options for [`Subdivision::validate`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ValidationOptions {
    /// Skip the pairwise interior-overlap programs (trusted fixture inputs).
    pub trusted: bool,
    /// For fans: the cells must cover all of `ℝᵈ`.
    pub complete: bool,
}

/// A polyhedral subdivision of a point configuration, or a fan (cells are
/// then cones over ray generators).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision<T = Rational> {
    config: PointConfiguration<T>,
    cells: Vec<Vec<usize>>,
    kind: ComplexKind,
    facets: Vec<Vec<Facet<T>>>,
    walls: Vec<Wall<T>>,
    /// `(cell, facet index)` of facets not shared with another cell.
    boundary: Vec<(usize, usize)>,
}

impl<T: Scalar> AsRef<Subdivision<T>> for Subdivision<T> {
    fn as_ref(&self) -> &Subdivision<T> {
        self
    }
}

impl<T: Scalar> Subdivision<T> {
    /// Validates `cells` as a polyhedral subdivision (or fan) of `config`.
    ///
    /// Checks, in every dimension and exactly: index ranges, full
    /// dimensionality, pointedness of cones, listed points lying on the
    /// cell boundary, pairwise disjoint interiors (skipped for trusted
    /// inputs), and that every facet is either shared with exactly one
    /// neighbor across the same hyperplane or lies on the boundary of the
    /// support.  In the plane the area identity "cells cover the hull" is
    /// verified as well.
    pub fn validate(
        config: PointConfiguration<T>,
        cells: Vec<Vec<usize>>,
        kind: ComplexKind,
        options: ValidationOptions,
    ) -> Result<Self> {
        let (s, mut violations) = Self::assemble(config, cells, kind)?;
        if violations.is_empty() {
            violations.extend(s.vertex_position_violations());
        }
        if violations.is_empty() && !options.trusted {
            violations.extend(s.overlap_violations());
        }
        if violations.is_empty() {
            violations.extend(s.boundary_violations(options.complete));
        }
        if violations.is_empty() && kind == ComplexKind::PointSubdivision && s.dimension() == 2 {
            violations.extend(s.area_violation());
        }
        if violations.is_empty() && kind == ComplexKind::Fan && !options.complete {
            let used: Vec<Vec<T>> = s
                .used_points()
                .iter()
                .map(|&i| s.config.point(i).to_vec())
                .collect();
            let m = Matrix::from_rows_with_cols(&used, s.dimension())?;
            if !gordan(&m).is_primal() {
                violations.push(Violation::GroundNotPointed);
            }
        }
        if violations.is_empty() {
            Ok(s)
        } else {
            Err(Error::Invalid(violations))
        }
    }

    /// Builds the complex, computing facets and walls, without the global
    /// overlap and coverage checks.  Used for restrictions of validated
    /// complexes, whose geometry is inherited.
    pub fn from_trusted_parts(
        config: PointConfiguration<T>,
        cells: Vec<Vec<usize>>,
        kind: ComplexKind,
    ) -> Result<Self> {
        let (s, violations) = Self::assemble(config, cells, kind)?;
        if violations.is_empty() {
            Ok(s)
        } else {
            Err(Error::Invalid(violations))
        }
    }

    fn assemble(
        config: PointConfiguration<T>,
        cells: Vec<Vec<usize>>,
        kind: ComplexKind,
    ) -> Result<(Self, Vec<Violation>)> {
        let mut violations = Vec::new();
        let mut sorted = Vec::with_capacity(cells.len());
        for (c, cell) in cells.into_iter().enumerate() {
            let set: BTreeSet<usize> = cell.into_iter().collect();
            if set.is_empty() {
                violations.push(Violation::EmptyCell { cell: c });
            }
            for &i in &set {
                if i >= config.len() {
                    violations.push(Violation::IndexOutOfRange { cell: c, index: i });
                }
            }
            sorted.push(set.into_iter().collect::<Vec<_>>());
        }
        let mut s = Subdivision {
            config,
            cells: sorted,
            kind,
            facets: Vec::new(),
            walls: Vec::new(),
            boundary: Vec::new(),
        };
        if !violations.is_empty() {
            return Ok((s, violations));
        }
        if s.cells.is_empty() {
            return Err(Error::Precondition(
                "a complex needs at least one cell".into(),
            ));
        }
        let hdim = s.homogeneous_dimension();
        for c in 0..s.cells.len() {
            let vs = s.cell_vectors(c);
            if rank_of(&vs, hdim) != hdim {
                violations.push(Violation::DegenerateCell { cell: c });
            } else if kind == ComplexKind::Fan {
                let m = Matrix::from_rows(&vs)?;
                if !gordan(&m).is_primal() {
                    violations.push(Violation::NotPointed { cell: c });
                }
            }
        }
        if !violations.is_empty() {
            return Ok((s, violations));
        }
        s.facets = (0..s.cells.len()).map(|c| s.compute_facets(c)).collect();
        s.match_facets();
        Ok((s, violations))
    }

    fn compute_facets(&self, c: usize) -> Vec<Facet<T>> {
        let hdim = self.homogeneous_dimension();
        let cell = &self.cells[c];
        let vectors = self.cell_vectors(c);
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut facets = Vec::new();
        for subset in combinations(cell.len(), hdim - 1) {
            let rows: Vec<Vec<T>> = subset.iter().map(|&k| vectors[k].clone()).collect();
            let m = Matrix::from_rows_with_cols(&rows, hdim).expect("uniform length");
            let ns = m.nullspace();
            if ns.len() != 1 {
                continue;
            }
            let mut n = T::primitive(&ns[0]);
            let values: Vec<T> = vectors.iter().map(|v| dot(&n, v)).collect();
            let has_pos = values.iter().any(|v| v.is_positive());
            let has_neg = values.iter().any(|v| v.is_negative());
            if has_pos && has_neg {
                continue;
            }
            if has_neg {
                n = n.into_iter().map(|x| -x).collect();
            }
            let on: Vec<usize> = cell
                .iter()
                .zip(&values)
                .filter(|(_, v)| v.is_zero())
                .map(|(&i, _)| i)
                .collect();
            if seen.insert(on.clone()) {
                facets.push(Facet {
                    vertices: on,
                    normal: n,
                });
            }
        }
        facets
    }

    fn match_facets(&mut self) {
        let mut by_set: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, fs) in self.facets.iter().enumerate() {
            for (k, f) in fs.iter().enumerate() {
                by_set.entry(f.vertices.clone()).or_default().push((c, k));
            }
        }
        let mut walls = Vec::new();
        let mut boundary = Vec::new();
        for (set, owners) in by_set {
            let opposite = owners.len() == 2 && {
                let (a, ka) = owners[0];
                let (b, kb) = owners[1];
                let na = &self.facets[a][ka].normal;
                let nb = &self.facets[b][kb].normal;
                na.iter().zip(nb).all(|(x, y)| x.clone() == -y.clone())
            };
            if opposite {
                let (c, _) = owners[0];
                let (d, kd) = owners[1];
                let (normal, offset) = self.spatial_normal(&self.facets[d][kd].normal);
                walls.push(Wall {
                    cells: (c, d),
                    ridge: set,
                    normal,
                    offset,
                    label: None,
                });
            } else {
                boundary.extend(owners);
            }
        }
        walls.sort_by(|a, b| a.cells.cmp(&b.cells).then(a.ridge.cmp(&b.ridge)));
        boundary.sort();
        self.walls = walls;
        self.boundary = boundary;
    }

    /// Splits a homogeneous normal into a primitive spatial normal and an
    /// offset (points), or returns it unchanged (fans).
    fn spatial_normal(&self, h: &[T]) -> (Vec<T>, T) {
        match self.kind {
            ComplexKind::Fan => (h.to_vec(), T::zero()),
            ComplexKind::PointSubdivision => {
                let spatial = &h[1..];
                let prim = T::primitive(spatial);
                let k = spatial
                    .iter()
                    .zip(&prim)
                    .find(|(s, _)| !s.is_zero())
                    .map(|(s, p)| p.clone() / s.clone())
                    .expect("affine wall normal has a nonzero spatial part");
                (prim, h[0].clone() * k)
            }
        }
    }

    fn vertex_position_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (c, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                if !self.facets[c].iter().any(|f| f.vertices.contains(&v)) {
                    out.push(Violation::NonConvexCell { cell: c, vertex: v });
                }
            }
        }
        out
    }

    fn overlap_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for a in 0..self.cells.len() {
            for b in a + 1..self.cells.len() {
                if self.separated_by_facet(a, b) || self.separated_by_facet(b, a) {
                    continue;
                }
                let rows: Vec<Vec<T>> = self.facets[a]
                    .iter()
                    .chain(&self.facets[b])
                    .map(|f| f.normal.clone())
                    .collect();
                let m = Matrix::from_rows(&rows).expect("uniform length");
                if let GordanWitness::Primal(x) = gordan(&m) {
                    out.push(Violation::Overlap {
                        cells: (a, b),
                        witness: self.render_homogeneous(&x),
                    });
                }
            }
        }
        out
    }

    fn separated_by_facet(&self, a: usize, b: usize) -> bool {
        let vb = self.cell_vectors(b);
        self.facets[a]
            .iter()
            .any(|f| vb.iter().all(|v| !dot(&f.normal, v).is_positive()))
    }

    fn boundary_violations(&self, complete: bool) -> Vec<Violation> {
        let used: Vec<Vec<T>> = self
            .used_points()
            .iter()
            .map(|&i| self.homogeneous(i))
            .collect();
        let mut out = Vec::new();
        for &(c, k) in &self.boundary {
            let f = &self.facets[c][k];
            let supporting = used.iter().all(|v| !dot(&f.normal, v).is_negative());
            if supporting && !(complete && self.kind == ComplexKind::Fan) {
                continue;
            }
            let witness = self.render_barycenter(&f.vertices);
            let neg: Vec<T> = f.normal.iter().map(|x| -x.clone()).collect();
            let touching = self
                .boundary
                .iter()
                .find(|&&(d, kd)| d != c && self.facets[d][kd].normal == neg);
            match touching {
                Some(&(d, _)) => out.push(Violation::NotFaceToFace {
                    cells: (c.min(d), c.max(d)),
                    witness,
                }),
                None => out.push(Violation::Gap { cell: c, witness }),
            }
        }
        out.dedup();
        out
    }

    fn area_violation(&self) -> Option<Violation> {
        let cell_area = self
            .cells
            .iter()
            .map(|c| {
                let pts: Vec<Vec<T>> = c.iter().map(|&i| self.config.point(i).to_vec()).collect();
                polygon_area(&convex_hull_2d(&pts))
            })
            .fold(T::zero(), |a, b| a + b);
        let used: Vec<Vec<T>> = self
            .used_points()
            .iter()
            .map(|&i| self.config.point(i).to_vec())
            .collect();
        let hull_area = polygon_area(&convex_hull_2d(&used));
        (cell_area != hull_area).then(|| Violation::AreaMismatch {
            cells_area: cell_area.to_string(),
            hull_area: hull_area.to_string(),
        })
    }

    fn render_homogeneous(&self, x: &[T]) -> Vec<String> {
        match self.kind {
            ComplexKind::Fan => x.iter().map(|v| v.to_string()).collect(),
            ComplexKind::PointSubdivision => x[1..]
                .iter()
                .map(|v| (v.clone() / x[0].clone()).to_string())
                .collect(),
        }
    }

    fn render_barycenter(&self, vertices: &[usize]) -> Vec<String> {
        let pts: Vec<Vec<T>> = vertices
            .iter()
            .map(|&i| self.config.point(i).to_vec())
            .collect();
        barycenter(&pts).iter().map(|v| v.to_string()).collect()
    }

    /// Attaches user labels to walls, addressed by their ridge vertex sets.
    pub fn with_wall_labels(mut self, labels: &[(String, Vec<usize>)]) -> Result<Self> {
        for (label, ridge) in labels {
            let mut key = ridge.clone();
            key.sort_unstable();
            let wall = self
                .walls
                .iter_mut()
                .find(|w| w.ridge == key)
                .ok_or_else(|| {
                    Error::Precondition(format!(
                        "wall label {label:?}: {ridge:?} is not an interior wall"
                    ))
                })?;
            wall.label = Some(label.clone());
        }
        Ok(self)
    }

    pub fn config(&self) -> &PointConfiguration<T> {
        &self.config
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    /// Ambient dimension `d` of points or rays.
    pub fn dimension(&self) -> usize {
        self.config.dimension()
    }

    /// Dimension of the homogeneous vectors (`d + 1` for points, `d` for rays).
    pub fn homogeneous_dimension(&self) -> usize {
        match self.kind {
            ComplexKind::PointSubdivision => self.dimension() + 1,
            ComplexKind::Fan => self.dimension(),
        }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Interior walls in lexicographic order of their cell pairs.
    pub fn walls(&self) -> &[Wall<T>] {
        &self.walls
    }

    /// Facets of cell `c`.
    pub fn facets(&self, c: usize) -> &[Facet<T>] {
        &self.facets[c]
    }

    /// Facets not shared with another cell, as `(cell, facet)` pairs.
    pub fn boundary_facets(&self) -> impl Iterator<Item = &Facet<T>> {
        self.boundary.iter().map(|&(c, k)| &self.facets[c][k])
    }

    /// Homogeneous vector of point `i`.
    pub fn homogeneous(&self, i: usize) -> Vec<T> {
        match self.kind {
            ComplexKind::Fan => self.config.point(i).to_vec(),
            ComplexKind::PointSubdivision => {
                let mut v = Vec::with_capacity(self.dimension() + 1);
                v.push(T::one());
                v.extend(self.config.point(i).iter().cloned());
                v
            }
        }
    }

    /// Homogeneous vectors of the vertices of cell `c`.
    pub fn cell_vectors(&self, c: usize) -> Vec<Vec<T>> {
        self.cells[c].iter().map(|&i| self.homogeneous(i)).collect()
    }

    /// Points used by at least one cell, in increasing order.
    pub fn used_points(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.cells.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// Points of the configuration used by no cell.
    pub fn unused_points(&self) -> Vec<usize> {
        let used: BTreeSet<usize> = self.cells.iter().flatten().copied().collect();
        (0..self.config.len())
            .filter(|i| !used.contains(i))
            .collect()
    }

    /// Vertex barycenter of cell `c` (in `ℝᵈ`).
    pub fn cell_barycenter(&self, c: usize) -> Vec<T> {
        let pts: Vec<Vec<T>> = self.cells[c]
            .iter()
            .map(|&i| self.config.point(i).to_vec())
            .collect();
        barycenter(&pts)
    }

    /// Vertex barycenter of a set of points.
    pub fn barycenter_of(&self, vertices: &[usize]) -> Vec<T> {
        let pts: Vec<Vec<T>> = vertices
            .iter()
            .map(|&i| self.config.point(i).to_vec())
            .collect();
        barycenter(&pts)
    }

    /// Whether `x ∈ ℝᵈ` lies in the closed cell `c`.
    pub fn cell_contains(&self, c: usize, x: &[T]) -> bool {
        let h = match self.kind {
            ComplexKind::Fan => x.to_vec(),
            ComplexKind::PointSubdivision => {
                let mut v = vec![T::one()];
                v.extend(x.iter().cloned());
                v
            }
        };
        self.facets[c]
            .iter()
            .all(|f| !dot(&f.normal, &h).is_negative())
    }

    /// Whether `x` lies in the support (union of all cells).
    pub fn support_contains(&self, x: &[T]) -> bool {
        (0..self.cells.len()).any(|c| self.cell_contains(c, x))
    }

    /// Dual-graph adjacency: for each cell, `(neighbor, wall index)` pairs.
    pub fn dual_graph(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.cells.len()];
        for (w, wall) in self.walls.iter().enumerate() {
            let (c, d) = wall.cells;
            adj[c].push((d, w));
            adj[d].push((c, w));
        }
        adj
    }

    /// Whether `group` induces a connected subgraph of the dual graph.
    pub fn is_connected(&self, group: &[usize]) -> bool {
        let members: BTreeSet<usize> = group.iter().copied().collect();
        let Some(&start) = members.iter().next() else {
            return false;
        };
        let adj = self.dual_graph();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for &(d, _) in &adj[c] {
                if members.contains(&d) && seen.insert(d) {
                    stack.push(d);
                }
            }
        }
        seen.len() == members.len()
    }
}

/// A polyhedral fan: cones over rays, either complete (covering `ℝᵈ`) or
/// conic (supported on a pointed convex cone).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan<T = Rational> {
    complex: Subdivision<T>,
    complete: bool,
}

impl<T: Scalar> AsRef<Subdivision<T>> for Fan<T> {
    fn as_ref(&self) -> &Subdivision<T> {
        &self.complex
    }
}

impl<T: Scalar> Fan<T> {
    /// Validates a fan given by ray generators and cells of ray indices.
    pub fn new(
        dimension: usize,
        rays: Vec<Vec<T>>,
        cells: Vec<Vec<usize>>,
        complete: bool,
    ) -> Result<Self> {
        Self::with_options(dimension, rays, cells, complete, false)
    }

    /// Like [`Fan::new`], optionally skipping the pairwise overlap checks.
    pub fn with_options(
        dimension: usize,
        rays: Vec<Vec<T>>,
        cells: Vec<Vec<usize>>,
        complete: bool,
        trusted: bool,
    ) -> Result<Self> {
        let config = PointConfiguration::new(dimension, rays, None)?;
        let complex = Subdivision::validate(
            config,
            cells,
            ComplexKind::Fan,
            ValidationOptions { trusted, complete },
        )?;
        Ok(Fan { complex, complete })
    }

    /// Wraps an already validated fan-kind complex.
    pub fn from_subdivision(complex: Subdivision<T>, complete: bool) -> Result<Self> {
        if complex.kind() != ComplexKind::Fan {
            return Err(Error::Precondition("complex is not a fan".into()));
        }
        Ok(Fan { complex, complete })
    }

    pub fn subdivision(&self) -> &Subdivision<T> {
        &self.complex
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn dimension(&self) -> usize {
        self.complex.dimension()
    }

    pub fn rays(&self) -> &[Vec<T>] {
        self.complex.config().points()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        self.complex.cells()
    }

    pub fn walls(&self) -> &[Wall<T>] {
        self.complex.walls()
    }

    pub fn cell_count(&self) -> usize {
        self.complex.cell_count()
    }

    /// Inward normals of the support's bounding halfspaces (empty for
    /// complete fans).
    pub fn support_normals(&self) -> Vec<Vec<T>> {
        if self.complete {
            return Vec::new();
        }
        let mut set: BTreeSet<Vec<T>> = BTreeSet::new();
        for f in self.complex.boundary_facets() {
            set.insert(f.normal.clone());
        }
        set.into_iter().collect()
    }

    /// Whether `p` lies in the reverse set `|F|⁻ = -|F|` (everything for a
    /// complete fan).
    pub fn in_reverse_set(&self, p: &[T]) -> bool {
        self.support_normals()
            .iter()
            .all(|n| !dot(n, p).is_positive())
    }
}

/// Lifts a point subdivision of `ℝᵈ` into the hyperplane `x_{d+1} = height`
/// and cones it from the origin.
pub fn fan_from_section<T: Scalar>(s: &Subdivision<T>, height: &T) -> Result<Fan<T>> {
    if height.is_zero() {
        return Err(Error::ZeroHeight);
    }
    if s.kind() != ComplexKind::PointSubdivision {
        return Err(Error::Precondition(
            "fan_from_section needs a point subdivision".into(),
        ));
    }
    let rays: Vec<Vec<T>> = s
        .config()
        .points()
        .iter()
        .map(|p| {
            let mut r = p.clone();
            r.push(height.clone());
            r
        })
        .collect();
    let config = PointConfiguration::new(
        s.dimension() + 1,
        rays,
        s.config().labels().map(|l| l.to_vec()),
    )?;
    let complex = Subdivision::from_trusted_parts(config, s.cells().to_vec(), ComplexKind::Fan)?;
    let labels: Vec<(String, Vec<usize>)> = s
        .walls()
        .iter()
        .filter_map(|w| w.label.clone().map(|l| (l, w.ridge.clone())))
        .collect();
    let complex = complex.with_wall_labels(&labels)?;
    Ok(Fan {
        complex,
        complete: false,
    })
}

/// A coarsening: a partition of the cells of a base complex into groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coarsening {
    /// Groups of cell indices, each sorted, ordered by smallest member.
    pub groups: Vec<Vec<usize>>,
    /// Group index of every cell.
    pub group_of: Vec<usize>,
    /// Walls of the base separating different groups: `(group a, group b, wall)`.
    pub group_walls: Vec<(usize, usize, usize)>,
}

impl Coarsening {
    /// Groups = connected components of the dual graph restricted to the
    /// `merged` walls.
    pub fn from_merged_walls<T: Scalar>(base: &Subdivision<T>, merged: &BTreeSet<usize>) -> Self {
        let n = base.cell_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &w in merged {
            let (c, d) = base.walls()[w].cells;
            let (rc, rd) = (find(&mut parent, c), find(&mut parent, d));
            if rc != rd {
                parent[rc.max(rd)] = rc.min(rd);
            }
        }
        let mut root_to_group = BTreeMap::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut group_of = vec![0; n];
        for (c, slot) in group_of.iter_mut().enumerate() {
            let r = find(&mut parent, c);
            let g = *root_to_group.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(c);
            *slot = g;
        }
        let group_walls = base
            .walls()
            .iter()
            .enumerate()
            .filter(|(_, w)| group_of[w.cells.0] != group_of[w.cells.1])
            .map(|(i, w)| (group_of[w.cells.0], group_of[w.cells.1], i))
            .collect();
        Coarsening {
            groups,
            group_of,
            group_walls,
        }
    }

    /// True when every group is a single cell.
    pub fn is_identity(&self) -> bool {
        self.groups.iter().all(|g| g.len() == 1)
    }

    /// True when there is a single group.
    pub fn is_trivial(&self) -> bool {
        self.groups.len() == 1
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Vertex barycenter.
pub fn barycenter<T: Scalar>(points: &[Vec<T>]) -> Vec<T> {
    let d = points.first().map_or(0, Vec::len);
    let n = T::from_int(points.len() as i64);
    (0..d)
        .map(|j| points.iter().fold(T::zero(), |a, p| a + p[j].clone()) / n.clone())
        .collect()
}

/// Twice the signed area of the triangle `abc` (positive if counterclockwise).
pub fn orient_2d<T: Scalar>(a: &[T], b: &[T], c: &[T]) -> T {
    (b[0].clone() - a[0].clone()) * (c[1].clone() - a[1].clone())
        - (b[1].clone() - a[1].clone()) * (c[0].clone() - a[0].clone())
}

/// Convex hull vertices in counterclockwise order (monotone chain; collinear
/// boundary points dropped).
pub fn convex_hull_2d<T: Scalar>(points: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut pts: Vec<Vec<T>> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec<T>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !orient_2d(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<T>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !orient_2d(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Area of a counterclockwise polygon (shoelace).
pub fn polygon_area<T: Scalar>(poly: &[Vec<T>]) -> T {
    let n = poly.len();
    if n < 3 {
        return T::zero();
    }
    let twice = (0..n).fold(T::zero(), |acc, i| {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        acc + a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()
    });
    twice / T::from_int(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ints;
    use num_traits::Signed;

    fn config(points: &[[i64; 2]]) -> PointConfiguration {
        PointConfiguration::new(2, points.iter().map(|p| ints(p)).collect(), None).unwrap()
    }

    fn validate(points: &[[i64; 2]], cells: Vec<Vec<usize>>) -> Result<Subdivision> {
        Subdivision::validate(
            config(points),
            cells,
            ComplexKind::PointSubdivision,
            ValidationOptions::default(),
        )
    }

    #[test]
    fn unit_triangle_is_valid() {
        let s = validate(&[[0, 0], [1, 0], [0, 1]], vec![vec![0, 1, 2]]).unwrap();
        assert!(s.walls().is_empty());
        assert_eq!(s.facets(0).len(), 3);
    }

    #[test]
    fn square_with_diagonal() {
        let s = validate(
            &[[0, 0], [1, 0], [1, 1], [0, 1]],
            vec![vec![0, 1, 2], vec![0, 2, 3]],
        )
        .unwrap();
        assert_eq!(s.walls().len(), 1);
        let w = &s.walls()[0];
        assert_eq!(w.ridge, vec![0, 2]);
        // Normal is orthogonal to the diagonal and points into cell 1.
        assert_eq!(dot(&w.normal, &ints(&[1, 1])), Rational::from_int(0));
        assert!(w.side(&ints(&[0, 1])).is_positive());
        assert!(w.side(&ints(&[1, 0])).is_negative());
    }

    #[test]
    fn t_junction_is_not_face_to_face() {
        let pts = [[0, 0], [2, 0], [1, 1], [0, 2], [2, 2]];
        // Big triangle 0-1-4? use a square split where one side is split by a vertex.
        let r = validate(&pts, vec![vec![0, 1, 3], vec![1, 2, 4], vec![2, 3, 4]]);
        match r {
            Err(Error::Invalid(v)) => assert!(
                v.iter()
                    .any(|x| matches!(x, Violation::NotFaceToFace { .. })),
                "{v:?}"
            ),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn overlap_is_detected() {
        let r = validate(
            &[[0, 0], [2, 0], [0, 2], [2, 2]],
            vec![vec![0, 1, 2], vec![0, 1, 3]],
        );
        match r {
            Err(Error::Invalid(v)) => {
                assert!(v.iter().any(|x| matches!(x, Violation::Overlap { .. })))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gap_is_detected() {
        // Square with only one triangle used plus a far triangle: hull not covered.
        let r = validate(
            &[[0, 0], [1, 0], [1, 1], [0, 1], [5, 5], [6, 5], [5, 6]],
            vec![vec![0, 1, 2], vec![4, 5, 6]],
        );
        assert!(matches!(r, Err(Error::Invalid(_))));
    }

    #[test]
    fn interior_listed_point_is_rejected() {
        let r = validate(&[[0, 0], [4, 0], [0, 4], [1, 1]], vec![vec![0, 1, 2, 3]]);
        match r {
            Err(Error::Invalid(v)) => {
                assert_eq!(v, vec![Violation::NonConvexCell { cell: 0, vertex: 3 }])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degenerate_cell() {
        let r = validate(&[[0, 0], [1, 1], [2, 2]], vec![vec![0, 1, 2]]);
        assert!(
            matches!(r, Err(Error::Invalid(v)) if v == vec![Violation::DegenerateCell { cell: 0 }])
        );
    }

    #[test]
    fn complete_fan_in_the_plane() {
        let f = Fan::<Rational>::new(
            2,
            vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[-1, 0]), ints(&[0, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
            true,
        )
        .unwrap();
        assert_eq!(f.walls().len(), 4);
        assert!(f.in_reverse_set(&ints(&[5, -7])));
        // Missing one quadrant: not complete.
        let r = Fan::<Rational>::new(
            2,
            vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[-1, 0]), ints(&[0, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
            true,
        );
        assert!(r.is_err());
    }

    #[test]
    fn fan_from_section_of_triangle() {
        let s = validate(&[[0, 0], [1, 0], [0, 1]], vec![vec![0, 1, 2]]).unwrap();
        let f = fan_from_section(&s, &Rational::from_int(-1)).unwrap();
        assert_eq!(f.dimension(), 3);
        assert!(f.walls().is_empty());
        assert!(fan_from_section(&s, &Rational::from_int(0)).is_err());
        // Reverse set: -|F| contains (0,0,1) but not (0,0,-1).
        assert!(f.in_reverse_set(&ints(&[0, 0, 1])));
        assert!(!f.in_reverse_set(&ints(&[0, 0, -1])));
    }

    #[test]
    fn combinations_enumerate_subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }
}
