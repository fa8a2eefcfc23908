//! Regularity systems, regularity decisions, finest regular coarsenings,
//! restrictions and the brute-force lower-hull construction in the plane.
//!
//! The regularity system of a subdivision has one column per point (the
//! unknown height `ω`) and
//!
//! * one strict *folding* row per interior wall `W = C ∩ D`: with `B` an
//!   affine basis of `D` and `a ∈ C \ D`, the row is
//!   `det(1;B) · det(1,1;B,a;ω_B,ω_a)` expanded along its last row.  Its
//!   coefficient on `ω_a` is `det(1;B)² > 0`, so `row·ω > 0` says exactly
//!   that `a` is lifted strictly above the plane of `D`;
//! * one baseline *coplanarity* equation per extra vertex of every
//!   non-simplicial cell, relative to the cell's lexicographically first
//!   affine basis.
//!
//! For fans the same construction runs on the ray vectors themselves (the
//! rows of ones disappear).  Rows are ordered walls first (row `w` is wall
//! `w`), then coplanarity equations.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{
    convex_hull_2d, orient_2d, Coarsening, ComplexKind, PointConfiguration, Subdivision,
    ValidationOptions,
};
use crate::error::{Error, Result};
use crate::lp::{gordan_relaxed, GordanWitness};
use crate::matrix::{greedy_basis, minor_dependence, Matrix};
use crate::relaxation::{minimum_relaxation, Certificate, RelaxableSystem, RelaxationResult};
use crate::scalar::{dot, Scalar};
use crate::Rational;

/// Heights of all points of a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeightFunction<T = Rational> {
    pub values: Vec<T>,
}

/// Regular (with a height witness) or not (with a dual certificate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularityVerdict<T = Rational> {
    Regular {
        witness: HeightFunction<T>,
    },
    NonRegular {
        /// Dense multipliers over the rows of the regularity system.
        multipliers: Vec<T>,
        /// The same multipliers keyed by row label.
        certificate: Certificate<T>,
    },
}

impl<T> RegularityVerdict<T> {
    pub fn is_regular(&self) -> bool {
        matches!(self, RegularityVerdict::Regular { .. })
    }
}

/// The finest regular coarsening with its inducing heights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinestRegularCoarsening<T = Rational> {
    pub coarsening: Coarsening,
    /// Indices of the relaxed walls (`E(M) \ E₀`).
    pub relaxed_walls: Vec<usize>,
    /// Heights inducing the coarsening.
    pub witness: HeightFunction<T>,
    /// The relaxation run on the regularity system.
    pub relaxation: RelaxationResult<T>,
}

impl<T: Scalar> FinestRegularCoarsening<T> {
    /// Names of the relaxed walls.
    pub fn relaxed_labels(&self, s: &Subdivision<T>) -> Vec<String> {
        self.relaxed_walls
            .iter()
            .map(|&w| s.walls()[w].name())
            .collect()
    }
}

/// A restriction of a subdivision to a group of cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction<T = Rational> {
    pub subdivision: Subdivision<T>,
    /// Parent index of every point of the restricted configuration.
    pub points: Vec<usize>,
    /// Parent index of every cell of the restricted subdivision.
    pub cells: Vec<usize>,
}

/// Folding row of wall `w`, over all points: the heights fold upwards
/// across the wall exactly when the row is positive on them.
pub fn wall_row<T: Scalar>(s: &Subdivision<T>, w: usize) -> Vec<T> {
    let wall = &s.walls()[w];
    let (c, d) = wall.cells;
    let hdim = s.homogeneous_dimension();
    let d_cell = &s.cells()[d];
    let d_vectors = s.cell_vectors(d);
    let basis: Vec<usize> = greedy_basis(&d_vectors, hdim)
        .into_iter()
        .map(|k| d_cell[k])
        .collect();
    let a = *s.cells()[c]
        .iter()
        .find(|v| !d_cell.contains(v))
        .expect("adjacent distinct cells differ in a vertex");
    let mut vectors: Vec<Vec<T>> = basis.iter().map(|&b| s.homogeneous(b)).collect();
    vectors.push(s.homogeneous(a));
    let coeffs = minor_dependence(&vectors);
    let det_b = coeffs[hdim].clone();
    let mut row = vec![T::zero(); s.config().len()];
    for (k, &b) in basis.iter().enumerate() {
        row[b] = det_b.clone() * coeffs[k].clone();
    }
    row[a] = det_b.clone() * det_b;
    row
}

/// Coplanarity equations of cell `c`: one `(vertex, row)` per vertex beyond
/// the lexicographically first basis.
pub fn coplanarity_rows<T: Scalar>(s: &Subdivision<T>, c: usize) -> Vec<(usize, Vec<T>)> {
    let hdim = s.homogeneous_dimension();
    let cell = &s.cells()[c];
    let vectors = s.cell_vectors(c);
    let basis_pos = greedy_basis(&vectors, hdim);
    let basis: Vec<usize> = basis_pos.iter().map(|&k| cell[k]).collect();
    cell.iter()
        .filter(|v| !basis.contains(v))
        .map(|&v| {
            let mut vs: Vec<Vec<T>> = basis.iter().map(|&b| s.homogeneous(b)).collect();
            vs.push(s.homogeneous(v));
            let coeffs = minor_dependence(&vs);
            let mut row = vec![T::zero(); s.config().len()];
            for (k, &b) in basis.iter().enumerate() {
                row[b] = coeffs[k].clone();
            }
            row[v] = coeffs[hdim].clone();
            (v, row)
        })
        .collect()
}

/// Builds the regularity system: folding rows for all walls (in wall
/// order) followed by the baseline coplanarity equations.
pub fn regularity_system<T: Scalar>(s: &Subdivision<T>) -> RelaxableSystem<T> {
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (w, wall) in s.walls().iter().enumerate() {
        rows.push(wall_row(s, w));
        labels.push(wall.name());
    }
    let mut baseline = BTreeSet::new();
    for c in 0..s.cell_count() {
        for (v, row) in coplanarity_rows(s, c) {
            baseline.insert(rows.len());
            rows.push(row);
            labels.push(format!("cell{c}:{v}"));
        }
    }
    let matrix = Matrix::from_rows_with_cols(&rows, s.config().len()).expect("uniform row length");
    RelaxableSystem::new(matrix, labels, baseline).expect("labels are unique")
}

/// Decides regularity; the witness heights fold strictly across every wall
/// and are coplanar on every cell, the certificate is a verified dual
/// solution of the regularity system.
pub fn is_regular<T: Scalar>(s: &Subdivision<T>) -> RegularityVerdict<T> {
    let sys = regularity_system(s);
    match gordan_relaxed(sys.matrix(), sys.baseline()) {
        GordanWitness::Primal(x) => {
            let mut values = x;
            raise_unused_points(s, &mut values);
            RegularityVerdict::Regular {
                witness: HeightFunction { values },
            }
        }
        GordanWitness::Dual(y) => {
            let certificate = sys.labeled_certificate(&y);
            RegularityVerdict::NonRegular {
                multipliers: y,
                certificate,
            }
        }
    }
}

/// Computes the finest regular coarsening by relaxing `E(M)`.
pub fn finest_regular_coarsening<T: Scalar>(s: &Subdivision<T>) -> FinestRegularCoarsening<T> {
    let sys = regularity_system(s);
    let relaxation = minimum_relaxation(&sys);
    let nwalls = s.walls().len();
    let relaxed_walls: Vec<usize> = relaxation
        .relaxed
        .iter()
        .copied()
        .filter(|&r| r < nwalls)
        .collect();
    let merged: BTreeSet<usize> = relaxed_walls.iter().copied().collect();
    let coarsening = Coarsening::from_merged_walls(s, &merged);
    for (w, wall) in s.walls().iter().enumerate() {
        let same = coarsening.group_of[wall.cells.0] == coarsening.group_of[wall.cells.1];
        assert!(
            !same || merged.contains(&w),
            "strict wall {w} inside a merged group contradicts the witness"
        );
    }
    let mut values = relaxation.final_witness.clone();
    raise_unused_points(s, &mut values);
    FinestRegularCoarsening {
        coarsening,
        relaxed_walls,
        witness: HeightFunction { values },
        relaxation,
    }
}

/// The linear functional `λ` on homogeneous vectors with `λ·v̂ = ω(v)` for
/// the given (spanning, coplanarly lifted) vertices.
pub fn lifting_functional<T: Scalar>(
    s: &Subdivision<T>,
    vertices: &[usize],
    heights: &[T],
) -> Vec<T> {
    let hdim = s.homogeneous_dimension();
    let rows: Vec<Vec<T>> = vertices.iter().map(|&v| s.homogeneous(v)).collect();
    let rhs: Vec<T> = vertices.iter().map(|&v| heights[v].clone()).collect();
    let m = Matrix::from_rows_with_cols(&rows, hdim).expect("uniform length");
    m.solve(&rhs)
        .expect("sizes match")
        .particular
        .expect("vertices are lifted onto a common hyperplane")
}

/// Gives every unused point a height strictly above the lifted cells
/// containing it, so that the heights regenerate exactly the given cells.
fn raise_unused_points<T: Scalar>(s: &Subdivision<T>, values: &mut [T]) {
    if s.kind() != ComplexKind::PointSubdivision {
        return;
    }
    for p in s.unused_points() {
        let x = s.config().point(p).to_vec();
        let h = s.homogeneous(p);
        let mut top: Option<T> = None;
        for c in 0..s.cell_count() {
            if s.cell_contains(c, &x) {
                let lam = lifting_functional(s, &s.cells()[c], values);
                let v = dot(&lam, &h);
                top = Some(match top {
                    Some(t) if t >= v => t,
                    _ => v,
                });
            }
        }
        if let Some(t) = top {
            values[p] = t + T::one();
        }
    }
}

/// Restricts a subdivision to a dual-connected group of cells.  The new
/// configuration consists of the vertices used by the group's cells, in
/// increasing parent order; other points are dropped.
pub fn restrict<T: Scalar>(s: &Subdivision<T>, group: &[usize]) -> Result<Restriction<T>> {
    let cells: Vec<usize> = group
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if let Some(&c) = cells.iter().find(|&&c| c >= s.cell_count()) {
        return Err(Error::IndexOutOfRange {
            context: "restriction group",
            index: c,
            size: s.cell_count(),
        });
    }
    if !s.is_connected(&cells) {
        return Err(Error::DisconnectedGroup);
    }
    let points: Vec<usize> = cells
        .iter()
        .flat_map(|&c| s.cells()[c].iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let new_index = |p: usize| points.binary_search(&p).expect("vertex of a group cell");
    let coords: Vec<Vec<T>> = points
        .iter()
        .map(|&p| s.config().point(p).to_vec())
        .collect();
    let labels = s
        .config()
        .labels()
        .map(|l| points.iter().map(|&p| l[p].clone()).collect());
    let config = PointConfiguration::new(s.dimension(), coords, labels)?;
    let new_cells: Vec<Vec<usize>> = cells
        .iter()
        .map(|&c| s.cells()[c].iter().map(|&v| new_index(v)).collect())
        .collect();
    let sub = Subdivision::from_trusted_parts(config, new_cells, s.kind())?;
    let wall_labels: Vec<(String, Vec<usize>)> = s
        .walls()
        .iter()
        .filter(|w| cells.contains(&w.cells.0) && cells.contains(&w.cells.1))
        .filter_map(|w| {
            w.label
                .clone()
                .map(|l| (l, w.ridge.iter().map(|&v| new_index(v)).collect()))
        })
        .collect();
    let subdivision = sub.with_wall_labels(&wall_labels)?;
    Ok(Restriction {
        subdivision,
        points,
        cells,
    })
}

/// The regular subdivision of a planar configuration induced by heights,
/// by brute-force lower-hull enumeration: every non-collinear triple spans
/// a candidate plane, kept iff no lifted point lies strictly below it; the
/// points on a kept plane that lie on the boundary of their convex hull
/// form one cell.
pub fn lift_project_2d<T: Scalar>(
    config: &PointConfiguration<T>,
    heights: &HeightFunction<T>,
) -> Result<Subdivision<T>> {
    if config.dimension() != 2 {
        return Err(Error::Precondition(
            "lift_project_2d needs planar points".into(),
        ));
    }
    let n = config.len();
    if heights.values.len() != n {
        return Err(Error::Dimension {
            context: "heights",
            expected: n,
            found: heights.values.len(),
        });
    }
    let pts = config.points();
    let w = &heights.values;
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut any_triangle = false;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let det = orient_2d(&pts[i], &pts[j], &pts[k]);
                if det.is_zero() {
                    continue;
                }
                any_triangle = true;
                // Plane z = α + β x + γ y through the three lifted points,
                // evaluated via the sign of the lifted orientation determinant.
                let below = |p: usize| -> T {
                    // Returns (height of p) - (plane at p), scaled by det.
                    let l = |q: usize| -> [T; 3] {
                        [
                            pts[q][0].clone() - pts[p][0].clone(),
                            pts[q][1].clone() - pts[p][1].clone(),
                            w[q].clone() - w[p].clone(),
                        ]
                    };
                    let (a, b, c) = (l(i), l(j), l(k));
                    let d3 = a[0].clone()
                        * (b[1].clone() * c[2].clone() - b[2].clone() * c[1].clone())
                        - a[1].clone()
                            * (b[0].clone() * c[2].clone() - b[2].clone() * c[0].clone())
                        + a[2].clone()
                            * (b[0].clone() * c[1].clone() - b[1].clone() * c[0].clone());
                    -(d3 / det.clone())
                };
                let mut on = Vec::new();
                let mut lower = true;
                for p in 0..n {
                    let v = below(p);
                    if v.is_negative() {
                        // p lies below the plane: not a lower face.
                        lower = false;
                        break;
                    }
                    if v.is_zero() {
                        on.push(p);
                    }
                }
                if lower {
                    faces.insert(on);
                }
            }
        }
    }
    if !any_triangle {
        return Err(Error::Collinear);
    }
    let cells: Vec<Vec<usize>> = faces
        .into_iter()
        .map(|face| {
            let coords: Vec<Vec<T>> = face.iter().map(|&p| pts[p].clone()).collect();
            let hull = convex_hull_2d(&coords);
            face.into_iter()
                .filter(|&p| on_polygon_boundary(&hull, &pts[p]))
                .collect()
        })
        .collect();
    Subdivision::validate(
        config.clone(),
        cells,
        ComplexKind::PointSubdivision,
        ValidationOptions::default(),
    )
}

fn on_polygon_boundary<T: Scalar>(poly: &[Vec<T>], p: &[T]) -> bool {
    let n = poly.len();
    (0..n).any(|i| {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        orient_2d(a, b, p).is_zero()
            && p[0] >= a[0].clone().min(b[0].clone())
            && p[0] <= a[0].clone().max(b[0].clone())
            && p[1] >= a[1].clone().min(b[1].clone())
            && p[1] <= a[1].clone().max(b[1].clone())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ints;
    use num_traits::Signed;

    fn square() -> PointConfiguration {
        PointConfiguration::new(
            2,
            vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[1, 1]), ints(&[0, 1])],
            None,
        )
        .unwrap()
    }

    #[test]
    fn square_with_diagonal_system() {
        let s = Subdivision::validate(
            square(),
            vec![vec![0, 1, 2], vec![0, 2, 3]],
            ComplexKind::PointSubdivision,
            ValidationOptions::default(),
        )
        .unwrap();
        let sys = regularity_system(&s);
        assert_eq!(sys.rows(), 1);
        assert!(sys.baseline().is_empty());
        // Affine heights ω = 2 + 3x - 5y annihilate the row.
        let affine: Vec<Rational> = square()
            .points()
            .iter()
            .map(|p| {
                Rational::from_int(2) + Rational::from_int(3) * p[0].clone()
                    - Rational::from_int(5) * p[1].clone()
            })
            .collect();
        assert_eq!(dot(sys.matrix().row(0), &affine), Rational::from_int(0));
        // Coefficient on the vertex opposite the wall is positive.
        assert!(sys.matrix()[(0, 1)].is_positive());
        assert!(is_regular(&s).is_regular());
    }

    #[test]
    fn one_cell_is_regular_with_zero_heights() {
        let s = Subdivision::validate(
            square(),
            vec![vec![0, 1, 2, 3]],
            ComplexKind::PointSubdivision,
            ValidationOptions::default(),
        )
        .unwrap();
        let sys = regularity_system(&s);
        assert_eq!(sys.baseline().len(), 1);
        match is_regular(&s) {
            RegularityVerdict::Regular { witness } => {
                assert!(witness.values.iter().all(|v| v == &Rational::from_int(0)))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn flat_square_lifts_to_one_cell() {
        let s = lift_project_2d(
            &square(),
            &HeightFunction {
                values: ints(&[0, 0, 0, 0]),
            },
        )
        .unwrap();
        assert_eq!(s.cells(), &[vec![0, 1, 2, 3]]);
    }

    #[test]
    fn lifted_corner_selects_the_other_diagonal() {
        let s = lift_project_2d(
            &square(),
            &HeightFunction {
                values: ints(&[0, 0, 1, 0]),
            },
        )
        .unwrap();
        assert_eq!(s.cells(), &[vec![0, 1, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn collinear_points_are_rejected() {
        let c = PointConfiguration::<Rational>::new(
            2,
            vec![ints(&[0, 0]), ints(&[1, 1]), ints(&[2, 2])],
            None,
        )
        .unwrap();
        assert_eq!(
            lift_project_2d(
                &c,
                &HeightFunction {
                    values: ints(&[0, 0, 0])
                }
            ),
            Err(Error::Collinear)
        );
    }

    #[test]
    fn restriction_to_everything_is_identity() {
        let s = lift_project_2d(
            &square(),
            &HeightFunction {
                values: ints(&[0, 0, 1, 0]),
            },
        )
        .unwrap();
        let r = restrict(&s, &[0, 1]).unwrap();
        assert_eq!(r.subdivision, s);
        let one = restrict(&s, &[1]).unwrap();
        assert_eq!(one.subdivision.cell_count(), 1);
        assert_eq!(one.points, vec![1, 2, 3]);
        assert!(is_regular(&one.subdivision).is_regular());
    }
}
