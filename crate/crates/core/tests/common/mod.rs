//! Shared fixtures, generators and independent oracles for the integration
//! tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use recreg::complex::orient_2d;
use recreg::io::{load_fixture, Instance};
use recreg::scalar::ints;
use recreg::*;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(v: i64) -> Rational {
    Rational::from_int(v)
}

pub fn subdivision(name: &str) -> Subdivision {
    match load_fixture(name).expect("fixture loads") {
        Instance::PointsetSubdivision(f) => f.to_subdivision().expect("fixture validates"),
        other => panic!("{name} is a {} file", other.kind()),
    }
}

pub fn fan(name: &str) -> Fan {
    match load_fixture(name).expect("fixture loads") {
        Instance::Fan(f) => f.to_fan().expect("fixture validates"),
        other => panic!("{name} is a {} file", other.kind()),
    }
}

pub fn points(name: &str) -> Vec<Vec<Rational>> {
    match load_fixture(name).expect("fixture loads") {
        Instance::Points(p) => p.to_points().expect("points parse"),
        other => panic!("{name} is a {} file", other.kind()),
    }
}

pub fn certificate(name: &str) -> (RelaxableSystem, Vec<Rational>) {
    match load_fixture(name).expect("fixture loads") {
        Instance::Certificate(c) => (c.system().expect("rows form a system"), c.multipliers()),
        other => panic!("{name} is a {} file", other.kind()),
    }
}

pub fn web(name: &str) -> SpiderWeb {
    match load_fixture(name).expect("fixture loads") {
        Instance::Spiderweb(w) => w.to_web().expect("web validates"),
        other => panic!("{name} is a {} file", other.kind()),
    }
}

/// `Σ yᵢ sᵢ`, computed directly from the rows.
pub fn residual(rows: &[Vec<Rational>], y: &[Rational]) -> Vec<Rational> {
    let d = rows[0].len();
    (0..d)
        .map(|j| {
            rows.iter()
                .zip(y)
                .fold(Rational::zero(), |a, (r, c)| a + &r[j] * c)
        })
        .collect()
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    range: i64,
) -> Vec<Vec<Rational>> {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| q(rng.gen_range(-range..=range)))
                .collect()
        })
        .collect()
}

fn primitive_row(v: &[Rational]) -> Vec<Rational> {
    Rational::primitive(v)
}

/// Fourier–Motzkin decision of `{a·z > 0 for every row a}` in `vars`
/// variables.  Positive combinations of strict inequalities stay strict, so
/// the system is infeasible iff elimination produces the row `0 > 0`.
pub fn strictly_feasible(rows: &[Vec<Rational>], vars: usize) -> bool {
    let mut rows: BTreeSet<Vec<Rational>> = rows.iter().map(|r| primitive_row(r)).collect();
    for k in (0..vars).rev() {
        if rows.iter().any(|r| r.iter().all(|x| x.is_zero())) {
            return false;
        }
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), BTreeSet::new());
        for r in rows {
            if r[k].is_positive() {
                pos.push(r);
            } else if r[k].is_negative() {
                neg.push(r);
            } else {
                next.insert(r[..k].to_vec());
            }
        }
        for p in &pos {
            for n in &neg {
                let a = -n[k].clone();
                let b = p[k].clone();
                let combo: Vec<Rational> = (0..k).map(|j| &p[j] * &a + &n[j] * &b).collect();
                next.insert(primitive_row(&combo));
            }
        }
        rows = next;
    }
    rows.is_empty()
}

/// Independent decision of `S(M, E)`: rows in `E` vanish, the others are
/// strictly positive.  Uses a nullspace parametrization of the equations
/// and Fourier–Motzkin on the rest.
pub fn system_compatible(m: &[Vec<Rational>], relaxed: &BTreeSet<usize>) -> bool {
    let cols = m[0].len();
    let basis: Vec<Vec<Rational>> = if relaxed.is_empty() {
        (0..cols)
            .map(|i| {
                (0..cols)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    } else {
        let eq: Vec<Vec<Rational>> = relaxed.iter().map(|&i| m[i].clone()).collect();
        Matrix::from_rows(&eq).unwrap().nullspace()
    };
    let strict: Vec<Vec<Rational>> = (0..m.len())
        .filter(|i| !relaxed.contains(i))
        .map(|i| {
            basis
                .iter()
                .map(|b| {
                    b.iter()
                        .zip(&m[i])
                        .fold(Rational::zero(), |a, (x, y)| a + x * y)
                })
                .collect()
        })
        .collect();
    if strict.is_empty() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    strictly_feasible(&strict, basis.len())
}

/// The minimum relaxation set by brute force: the intersection of all
/// sets `E` with `S(M, E)` compatible.
pub fn brute_min_relaxation(m: &[Vec<Rational>]) -> BTreeSet<usize> {
    let n = m.len();
    let mut acc: BTreeSet<usize> = (0..n).collect();
    for mask in 0u32..(1 << n) {
        let e: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if e.is_superset(&acc) {
            continue;
        }
        if system_compatible(m, &e) {
            acc = acc.intersection(&e).copied().collect();
        }
    }
    acc
}

/// Determinant by cofactor expansion.
pub fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    (0..n).fold(Rational::zero(), |acc, j| {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Random 2D configuration of `n` distinct integer points, not all collinear.
pub fn random_config_2d(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<Vec<Rational>> {
    loop {
        let mut pts: BTreeSet<Vec<Rational>> = BTreeSet::new();
        while pts.len() < n {
            pts.insert(ints(&[
                rng.gen_range(-range..=range),
                rng.gen_range(-range..=range),
            ]));
        }
        let pts: Vec<Vec<Rational>> = pts.into_iter().collect();
        let spread = (2..n).any(|k| !orient_2d(&pts[0], &pts[1], &pts[k]).is_zero());
        if spread {
            return pts;
        }
    }
}

/// Random complete 2D fan with `cells` cells: integer rays in angular
/// order with every consecutive angle below π.
pub fn random_complete_fan_2d(rng: &mut ChaCha8Rng, cells: usize) -> Fan {
    assert!(cells >= 3);
    loop {
        let mut rays: Vec<Vec<Rational>> = Vec::new();
        while rays.len() < cells {
            let r: Vec<Rational> = ints(&[rng.gen_range(-9..=9), rng.gen_range(-9..=9)]);
            if r.iter().all(|x| x.is_zero()) {
                continue;
            }
            let dup = rays.iter().any(|s| {
                orient_2d(&[q(0), q(0)], s, &r).is_zero()
                    && (&s[0] * &r[0] + &s[1] * &r[1]).is_positive()
            });
            if !dup {
                rays.push(r);
            }
        }
        rays.sort_by(|a, b| angle_cmp(a, b));
        let ok = (0..cells).all(|i| {
            let (a, b) = (&rays[i], &rays[(i + 1) % cells]);
            orient_2d(&[q(0), q(0)], a, b).is_positive()
        });
        if !ok {
            continue;
        }
        let cells_idx: Vec<Vec<usize>> = (0..cells).map(|i| vec![i, (i + 1) % cells]).collect();
        return Fan::new(2, rays, cells_idx, true).expect("consecutive rays span convex cones");
    }
}

fn angle_cmp(a: &[Rational], b: &[Rational]) -> std::cmp::Ordering {
    let half = |v: &[Rational]| !(v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()));
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        if cross.is_positive() {
            std::cmp::Ordering::Less
        } else if cross.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    })
}

/// `n` random points of the reverse cone `−|F|`: negated positive
/// combinations of the rays of a random cell.
pub fn reverse_cone_points(rng: &mut ChaCha8Rng, f: &Fan, n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|_| {
            let c = &f.cells()[rng.gen_range(0..f.cell_count())];
            let mut p = vec![Rational::zero(); f.dimension()];
            for &r in c {
                let w = Rational::new(rng.gen_range(0..=20).into(), rng.gen_range(1..=4).into());
                for (x, y) in p.iter_mut().zip(&f.rays()[r]) {
                    *x -= &w * y;
                }
            }
            p
        })
        .collect()
}

/// A twisted triangulation of six points whose cone is cyclic in the
/// direction `(-3, 140, 99)`.
pub fn pinwheel_section() -> Subdivision {
    let pts = vec![
        ints(&[1, 1]),
        ints(&[-1, -2]),
        ints(&[1, -2]),
        ints(&[5, 11]),
        ints(&[-8, -6]),
        ints(&[11, -8]),
    ];
    let cells = vec![
        vec![0, 1, 4],
        vec![0, 4, 3],
        vec![1, 2, 5],
        vec![1, 5, 4],
        vec![2, 0, 3],
        vec![2, 3, 5],
        vec![0, 1, 2],
    ];
    let config = PointConfiguration::new(2, pts, None).unwrap();
    Subdivision::validate(
        config,
        cells,
        ComplexKind::PointSubdivision,
        ValidationOptions::default(),
    )
    .unwrap()
}

pub fn pinwheel_direction() -> Vec<Rational> {
    ints(&[-3, 140, 99])
}
