//! Acceptance criteria, one status line each.
//!
//! Status values:
//! - `PASS`: every check holds as stated.
//! - `ERRATUM`: every check holds once a documented misprint in the
//!   published data is corrected; the printed value is checked too, and
//!   the exact discrepancy is shown.
//! - `FAIL`: a check does not hold.  The target exits with failure.
//!
//! All comparisons are exact rational arithmetic; the only tolerances are
//! the wall-clock budgets, enforced in optimized builds.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::Rng;

use common::*;
use recreg::floodlight::{uncovered_witness, LineOutcome};
use recreg::regularity::HeightFunction;
use recreg::scalar::{dot, ints, scale};
use recreg::*;

/// Exact comparisons: residuals and margins must be exactly zero / signed.
const TOLERANCE: &str = "exact";

/// Wall-clock budgets per criterion, in seconds.
const BUDGETS: [u64; 10] = [1, 1, 5, 10, 60, 30, 60, 30, 60, 30];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Erratum,
    Fail,
}

struct Outcome {
    status: Status,
    detail: String,
}

/// Collects the checks of one criterion.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    errata: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn erratum(&mut self, what: impl Into<String>) {
        self.errata.push(what.into());
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(self) -> Outcome {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if !self.errata.is_empty() {
            Status::Erratum
        } else {
            Status::Pass
        };
        let mut parts = self.notes;
        parts.extend(self.errata.into_iter().map(|e| format!("erratum: {e}")));
        parts.extend(self.failures.into_iter().map(|f| format!("FAILED: {f}")));
        Outcome {
            status,
            detail: parts.join("; "),
        }
    }
}

fn text(v: &[Rational]) -> String {
    format!(
        "({})",
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

/// Checks a transcribed certificate; returns whether it verifies exactly.
fn check_certificate(c: &mut Checks, name: &str) -> bool {
    let (sys, y) = certificate(name);
    let ok = verify_dual_certificate(&sys, &y).expect("lengths agree");
    let res = residual(&sys.matrix().to_rows(), &y);
    if ok {
        c.require(
            is_zero_vector(&res),
            format!("{name}: verified but residual {}", text(&res)),
        );
    }
    ok
}

fn criterion_1() -> Outcome {
    let mut c = Checks::default();
    let printed = check_certificate(&mut c, "appendixE-certificate.json");
    let corrected = check_certificate(&mut c, "appendixE-certificate-corrected.json");
    c.require(
        corrected,
        "corrected certificate verifies with zero residual",
    );
    if !printed {
        let (sys, y) = certificate("appendixE-certificate.json");
        let res = residual(&sys.matrix().to_rows(), &y);
        c.erratum(format!(
            "printed s9 is shifted by one position; printed residual {}",
            text(&res)
        ));
    }
    let s = subdivision("appendixE.json");
    c.require(
        !is_regular(&s).is_regular(),
        "reconstructed subdivision is non-regular",
    );
    c.note("10 rows, y = (1,1,1/32,1/32,1/2,...,1/2), residual 0; is_regular = false");
    c.finish()
}

fn criterion_2() -> Outcome {
    let mut c = Checks::default();
    let printed = check_certificate(&mut c, "appendixD-certificate.json");
    let corrected = check_certificate(&mut c, "appendixD-certificate-corrected.json");
    c.require(corrected, "corrected multipliers verify with zero residual");
    let (sys, y) = certificate("appendixD-certificate.json");
    if !printed {
        let res = residual(&sys.matrix().to_rows(), &y);
        c.erratum(format!(
            "printed y11 = 198 leaves residual {} = -682·s11; y11 = 880 verifies",
            text(&res)
        ));
    }
    let rows = RelaxableSystem::from_rows(&sys.matrix().to_rows()).unwrap();
    let e = minimum_relaxation(&rows).relaxed;
    c.require(
        e == (0..13).collect::<BTreeSet<_>>(),
        format!("minimum relaxation of the 13 rows is all rows (got {e:?})"),
    );
    let s = subdivision("appendixD.json");
    let frc = finest_regular_coarsening(&s);
    c.require(
        frc.coarsening.is_trivial(),
        "fixture is completely non-regular",
    );
    let (rr, _) = is_recursively_regular(&s);
    c.require(!rr, "fixture is not recursively regular");
    c.note("E = {s1..s13}; completely non-regular; is_recursively_regular = false");
    c.finish()
}

fn criterion_3() -> Outcome {
    let mut c = Checks::default();
    let printed = check_certificate(&mut c, "appendixF-certificate.json");
    let corrected = check_certificate(&mut c, "appendixF-certificate-corrected.json");
    c.require(corrected, "corrected rows verify with zero residual");
    if !printed {
        let (sys, y) = certificate("appendixF-certificate.json");
        let res = residual(&sys.matrix().to_rows(), &y);
        c.erratum(format!(
            "printed s9 has the sign of its second entry flipped and printed s12 is shifted; printed residual {}",
            text(&res)
        ));
    }
    let s = subdivision("appendixF.json");
    let (rr, tree) = is_recursively_regular(&s);
    c.require(rr, "fixture is recursively regular");
    c.require(
        tree.depth() == 2,
        format!("tree depth 2 (got {})", tree.depth()),
    );
    let leaves_regular = tree
        .root
        .leaves()
        .iter()
        .all(|l| l.status == NodeStatus::LeafRegular);
    c.require(leaves_regular, "all leaves regular");
    let mut splits = Vec::new();
    let mut stack = vec![&tree.root];
    while let Some(n) = stack.pop() {
        if !n.is_leaf() {
            splits.push(n.children.len());
            stack.extend(n.children.iter());
        }
    }
    c.note(format!(
        "depth {}, internal splits {:?}",
        tree.depth(),
        splits
    ));
    if splits.iter().any(|&k| k != 5) {
        // The published certificate forces its 12 walls into the relaxed set,
        // which merges the root into at most 4 groups.
        let forced = minimum_relaxation(&regularity_system(&s)).relaxed.len();
        c.erratum(format!(
            "stated 5-way split at every internal node; the root splits {}-way because the published certificate's support relaxes {} walls",
            splits[0], forced
        ));
    }
    c.finish()
}

/// Published normals of the counterexample fan.
fn published_normals() -> Vec<(&'static str, Vec<Rational>)> {
    vec![
        ("12", ints(&[4, 0, -32])),
        ("13", ints(&[2, 2, 0])),
        ("15", ints(&[1, -3, 16])),
        ("23", ints(&[0, 4, 32])),
        ("24", ints(&[4, 0, 32])),
        ("25", ints(&[0, -4, 32])),
        ("34", ints(&[2, -2, 0])),
        ("45", ints(&[-2, -3, 8])),
    ]
}

/// A cycle (1-based cells) with its `(coefficient, wall)` identity.
type CycleIdentity = (Vec<usize>, Vec<(Rational, &'static str)>);

/// Published cycle certificates.
fn published_cycles() -> Vec<CycleIdentity> {
    let f = |p: i64, q: i64| Rational::new(p.into(), q.into());
    vec![
        (
            vec![1, 3, 4, 5],
            vec![
                (f(1, 1), "13"),
                (f(1, 4), "34"),
                (f(1, 1), "45"),
                (f(-1, 2), "15"),
            ],
        ),
        (
            vec![2, 5, 1, 3],
            vec![
                (f(3, 4), "25"),
                (f(-1, 4), "15"),
                (f(1, 2), "13"),
                (f(-1, 4), "23"),
            ],
        ),
        (
            vec![2, 1, 3, 4],
            vec![
                (f(-1, 2), "12"),
                (f(1, 1), "13"),
                (f(1, 1), "34"),
                (f(-1, 2), "24"),
            ],
        ),
        (
            vec![2, 3, 4, 5],
            vec![
                (f(1, 2), "23"),
                (f(1, 1), "34"),
                (f(1, 1), "45"),
                (f(-3, 4), "25"),
            ],
        ),
        (
            vec![2, 4, 5, 1],
            vec![
                (f(1, 2), "24"),
                (f(1, 1), "45"),
                (f(-1, 1), "15"),
                (f(1, 4), "12"),
            ],
        ),
        (
            vec![2, 1, 3, 4, 5],
            vec![
                (f(-1, 2), "12"),
                (f(1, 1), "13"),
                (f(1, 1), "34"),
                (f(1, 1), "45"),
                (f(-3, 4), "25"),
            ],
        ),
        (
            vec![2, 3, 4, 5, 1],
            vec![
                (f(1, 2), "23"),
                (f(1, 1), "34"),
                (f(1, 1), "45"),
                (f(-1, 1), "15"),
                (f(1, 4), "12"),
            ],
        ),
        (
            vec![2, 4, 5, 1, 3],
            vec![
                (f(1, 2), "24"),
                (f(1, 1), "45"),
                (f(-1, 1), "15"),
                (f(1, 2), "13"),
                (f(-1, 4), "23"),
            ],
        ),
        (
            vec![2, 5, 1, 3, 4],
            vec![
                (f(3, 4), "25"),
                (f(-1, 4), "15"),
                (f(1, 2), "13"),
                (f(1, 4), "34"),
                (f(-1, 4), "24"),
            ],
        ),
    ]
}

/// Exact replacements for published identities that do not sum to zero.
/// Both misprint the weight of `v15`, and the five-cycle also that of `v34`.
fn corrected_cycle(cycle: &[usize]) -> Option<Vec<(Rational, &'static str)>> {
    let f = |p: i64, q: i64| Rational::new(p.into(), q.into());
    match cycle {
        [2, 5, 1, 3] => Some(vec![
            (f(3, 4), "25"),
            (f(-1, 1), "15"),
            (f(1, 2), "13"),
            (f(-1, 4), "23"),
        ]),
        [2, 5, 1, 3, 4] => Some(vec![
            (f(3, 4), "25"),
            (f(-1, 1), "15"),
            (f(1, 2), "13"),
            (f(1, 2), "34"),
            (f(-1, 4), "24"),
        ]),
        _ => None,
    }
}

fn positive_multiple(a: &[Rational], b: &[Rational]) -> bool {
    let Some(j) = b.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let l = &a[j] / &b[j];
    l.is_positive() && a.iter().zip(b).all(|(x, y)| *x == &l * y)
}

/// Same cycle up to rotation and reversal.
fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    let canon = |c: &[usize]| {
        let k = c.len();
        let mut best: Option<Vec<usize>> = None;
        for rev in [false, true] {
            for s in 0..k {
                let v: Vec<usize> = (0..k)
                    .map(|i| {
                        if rev {
                            c[(s + k - i) % k]
                        } else {
                            c[(s + i) % k]
                        }
                    })
                    .collect();
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
        best.unwrap_or_default()
    };
    canon(a) == canon(b)
}

fn criterion_4() -> Outcome {
    let mut c = Checks::default();
    let section = subdivision("appendixC-section.json");
    let height = Rational::new((-1).into(), 8.into());
    let f = fan_from_section(&section, &height).expect("section cones");
    let stored = fan("appendixC-fan.json");
    c.require(f.walls().len() == 8, "8 walls");
    let wall_by_name = |name: &str| {
        f.walls()
            .iter()
            .position(|w| w.label.as_deref() == Some(name))
    };
    for (name, v) in published_normals() {
        match wall_by_name(name) {
            Some(w) => c.require(
                positive_multiple(&f.walls()[w].normal, &v),
                format!("v{name} reproduced up to positive scaling"),
            ),
            None => c.require(false, format!("wall {name} present")),
        }
    }
    c.require(
        stored
            .walls()
            .iter()
            .zip(f.walls())
            .all(|(a, b)| a.normal == b.normal),
        "stored fan fixture agrees with the computed section fan",
    );
    let p = points("appendixC-points.json");
    match universality_search(&f, &p).expect("search runs") {
        UniversalityOutcome::Exhausted(table) => {
            c.require(table.len() == 120, "120 violated permutations")
        }
        UniversalityOutcome::Satisfied(a) => c.require(
            false,
            format!("no satisfying assignment (found {:?})", a.mapping),
        ),
    }
    let id = overlap_check(&f, &p, &Assignment::identity(5)).unwrap();
    let w12 = wall_by_name("12").unwrap();
    let published_12 = &published_normals()[0].1;
    let m = &id.walls[w12].margin;
    let scale_factor = &published_12[0] / &f.walls()[w12].normal[0];
    let published_margin = m * &scale_factor;
    c.require(id.walls[w12].violated, "identity violates wall 12");
    c.require(
        published_margin == q(-8),
        format!(
            "identity margin at wall 12 is -8 with the published normal (got {published_margin})"
        ),
    );
    c.note(format!(
        "identity margin {m} with the primitive normal, {published_margin} with v12"
    ));
    // Published identities, exact and with oriented non-negative weights.
    let normals = published_normals();
    let normal = |name: &str| normals.iter().find(|(n, _)| *n == name).unwrap().1.clone();
    let verdict = acyclic_all_directions(&f, 5).expect("cycle search runs");
    let certs = match verdict {
        AllDirectionsVerdict::Acyclic { certificates } => certificates,
        AllDirectionsVerdict::Cyclic { cycle, .. } => {
            c.require(
                false,
                format!("fan acyclic in every direction (cycle {cycle:?})"),
            );
            Vec::new()
        }
    };
    let combine = |terms: &[(Rational, &str)]| {
        let mut sum = vec![Rational::zero(); 3];
        for (coef, wall) in terms {
            sum = sum
                .iter()
                .zip(scale(coef, &normal(wall)))
                .map(|(a, b)| a + b)
                .collect::<Vec<_>>();
        }
        sum
    };
    for (cycle, mut terms) in published_cycles() {
        let sum = combine(&terms);
        if !is_zero_vector(&sum) {
            match corrected_cycle(&cycle) {
                Some(fixed) if is_zero_vector(&combine(&fixed)) => {
                    c.erratum(format!(
                        "published identity for {cycle:?} sums to {}; corrected weights {} sum to zero",
                        text(&sum),
                        fixed.iter().map(|(k, w)| format!("{k}·v{w}")).collect::<Vec<_>>().join(" + ")
                    ));
                    terms = fixed;
                }
                _ => c.require(
                    false,
                    format!(
                        "published identity for {cycle:?} sums to zero (got {})",
                        text(&sum)
                    ),
                ),
            }
        }
        let k = cycle.len();
        let oriented_ok = (0..k).all(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % k]);
            terms.iter().all(|(coef, wall)| {
                let label = format!("{}{}", a.min(b), a.max(b));
                if *wall != label {
                    return true;
                }
                let sign = if a < b { coef.clone() } else { -coef.clone() };
                sign.is_positive()
            })
        });
        c.require(
            oriented_ok,
            format!("published weights for {cycle:?} are positive along the cycle"),
        );
        let cells: Vec<usize> = cycle.iter().map(|x| x - 1).collect();
        let found = certs
            .iter()
            .any(|cert| same_cycle(&cert.cycle, &cells) && cert.verify(f.subdivision()));
        c.require(
            found,
            format!("cycle {cycle:?} certified by acyclic_all_directions"),
        );
    }
    c.note(format!(
        "8 normals, 120/120 violated, 9 published identities checked, {} cycles certified",
        certs.len()
    ));
    c.finish()
}

fn criterion_5() -> Outcome {
    let mut c = Checks::default();
    let mut rng = rng(5);
    let mut nontrivial = 0;
    for _ in 0..200 {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=5);
        let mut m = random_matrix(&mut rng, rows, cols, 3);
        if rows >= 3 && cols >= 2 && rng.gen_bool(0.6) {
            // Plant a positive dependence inside the hyperplane z⊥ and put the
            // other rows strictly on z's side, so E is a proper subset.
            let z = loop {
                let z = random_matrix(&mut rng, 1, cols, 3).remove(0);
                if !is_zero_vector(&z) {
                    break z;
                }
            };
            let zz = dot(&z, &z);
            let k = rng.gen_range(2..rows);
            for (i, row) in m.iter_mut().enumerate() {
                let az = dot(row, &z);
                if i < k - 1 {
                    *row = row.iter().zip(&z).map(|(a, b)| a * &zz - &az * b).collect();
                } else if i >= k && az.is_negative() {
                    *row = row.iter().map(|a| -a).collect();
                } else if i >= k && az.is_zero() {
                    *row = row.iter().zip(&z).map(|(a, b)| a + b).collect();
                }
            }
            let weights: Vec<Rational> = (0..k - 1).map(|_| q(rng.gen_range(1..=3))).collect();
            m[k - 1] = (0..cols)
                .map(|j| -(0..k - 1).fold(Rational::zero(), |a, i| a + &m[i][j] * &weights[i]))
                .collect();
        }
        let sys = RelaxableSystem::from_rows(&m).unwrap();
        let r = minimum_relaxation(&sys);
        let oracle = brute_min_relaxation(&m);
        if r.relaxed != oracle {
            c.require(
                false,
                format!("E = {:?} vs oracle {:?} for {m:?}", r.relaxed, oracle),
            );
            break;
        }
        if !r.relaxed.is_empty() && r.relaxed.len() < rows {
            nontrivial += 1;
        }
        c.require(
            system_compatible(&m, &r.relaxed),
            "S(M, E) compatible (oracle)",
        );
        let w = &r.final_witness;
        let ok = (0..rows).all(|i| {
            let v = dot(&m[i], w);
            if r.relaxed.contains(&i) {
                v.is_zero()
            } else {
                v.is_positive()
            }
        });
        c.require(ok, "final witness solves S(M, E)");
    }
    c.note(format!(
        "200 matrices agree with the brute-force oracle ({nontrivial} with a proper non-empty E)"
    ));
    c.finish()
}

fn criterion_6() -> Outcome {
    let mut c = Checks::default();
    let mut rng = rng(6);
    let (mut primal, mut dual) = (0, 0);
    for _ in 0..500 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=4);
        let m = random_matrix(&mut rng, rows, cols, 4);
        let mat = Matrix::from_rows(&m).unwrap();
        let feasible = strictly_feasible(&m, cols);
        match gordan(&mat) {
            GordanWitness::Primal(x) => {
                primal += 1;
                c.require(
                    m.iter().all(|r| dot(r, &x).is_positive()),
                    "primal witness verified",
                );
                c.require(feasible, "oracle agrees the strict system is feasible");
            }
            GordanWitness::Dual(y) => {
                dual += 1;
                let sum = residual(&m, &y);
                let ok = is_zero_vector(&sum)
                    && y.iter().all(|v| !v.is_negative())
                    && y.iter().any(|v| v.is_positive());
                c.require(ok, "dual witness verified");
                c.require(!feasible, "oracle agrees the strict system is infeasible");
            }
        }
    }
    c.note(format!("500 matrices: {primal} primal, {dual} dual witnesses, each verified and matching Fourier–Motzkin"));
    c.finish()
}

fn same_cells(a: &Subdivision, b: &Subdivision) -> bool {
    let norm = |s: &Subdivision| {
        let mut cells: Vec<Vec<usize>> = s
            .cells()
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        cells.sort();
        cells
    };
    norm(a) == norm(b)
}

fn criterion_7() -> Outcome {
    let mut c = Checks::default();
    let mut rng = rng(7);
    let mut directions = 0;
    for _ in 0..100 {
        let n = rng.gen_range(4..=9);
        let pts = random_config_2d(&mut rng, n, 6);
        let heights = HeightFunction {
            values: (0..n).map(|_| q(rng.gen_range(-5..=5))).collect(),
        };
        let config = PointConfiguration::new(2, pts, None).unwrap();
        let s = lift_project_2d(&config, &heights).expect("lift and project");
        match is_regular(&s) {
            RegularityVerdict::Regular { witness } => {
                let again = lift_project_2d(&config, &witness).expect("witness lifts");
                c.require(
                    same_cells(&s, &again),
                    "witness heights induce the same subdivision",
                );
            }
            RegularityVerdict::NonRegular { .. } => {
                c.require(false, "lifted subdivision is regular")
            }
        }
        c.require(
            finest_regular_coarsening(&s).coarsening.is_identity(),
            "finest regular coarsening is the identity",
        );
        for _ in 0..20 {
            let v = loop {
                let v = ints(&[rng.gen_range(-9..=9), rng.gen_range(-9..=9)]);
                if !is_zero_vector(&v) {
                    break v;
                }
            };
            directions += 1;
            c.require(
                acyclic_in_direction(&s, &v).unwrap().is_acyclic(),
                "regular subdivision acyclic in direction",
            );
        }
    }
    c.note(format!("100 lifted configurations regular with identity coarsening; {directions} directions acyclic"));
    c.finish()
}

fn criterion_8() -> Outcome {
    let mut c = Checks::default();
    let mut rng = rng(8);
    for _ in 0..50 {
        let cells = rng.gen_range(3..=7);
        let f = random_complete_fan_2d(&mut rng, cells);
        let delta = loop {
            let v = ints(&[rng.gen_range(-5..=5), rng.gen_range(-5..=5)]);
            if !is_zero_vector(&v) {
                break v;
            }
        };
        let base = ints(&[rng.gen_range(-20..=20), rng.gen_range(-20..=20)]);
        let mut ts: BTreeSet<i64> = BTreeSet::new();
        while ts.len() < cells {
            ts.insert(rng.gen_range(-30..=30));
        }
        let pts: Vec<Vec<Rational>> = ts
            .iter()
            .rev()
            .map(|&t| base.iter().zip(&delta).map(|(b, d)| b + d * q(t)).collect())
            .collect();
        c.require(
            acyclic_in_direction(&f, &delta).unwrap().is_acyclic(),
            "complete 2D fan acyclic in the line's direction",
        );
        match line_assignment(&f, &pts).expect("line assignment runs") {
            LineOutcome::Assigned(a) => {
                c.require(
                    overlap_check(&f, &pts, &a).unwrap().is_clean(),
                    "overlapping conditions hold",
                );
                let region = uncovered_region_2d(&f, &pts, &a).expect("region computed");
                c.require(region.is_empty(), "uncovered region empty");
            }
            LineOutcome::Cycle(cycle) => c.require(false, format!("unexpected cycle {cycle:?}")),
        }
    }
    let section = pinwheel_section();
    let f = fan_from_section(&section, &q(-1)).unwrap();
    let v = pinwheel_direction();
    let pts: Vec<Vec<Rational>> = (1..=7).map(|k| scale(&q(k), &v)).collect();
    match line_assignment(&f, &pts).expect("line assignment runs") {
        LineOutcome::Cycle(cycle) => {
            let arcs = recreg::visibility::infront_digraph(&f, &v).unwrap();
            let k = cycle.len();
            let is_cycle = k >= 3
                && (0..k).all(|i| {
                    arcs.arcs
                        .iter()
                        .any(|a| a.from == cycle[i] && a.to == cycle[(i + 1) % k])
                });
            c.require(is_cycle, "returned witness is an in-front cycle");
            c.note(format!(
                "50 random fans assigned and covered; pinwheel fan cycle {cycle:?} in direction {}",
                text(&v)
            ));
        }
        LineOutcome::Assigned(a) => c.require(
            false,
            format!("cyclic fan returned an assignment {:?}", a.mapping),
        ),
    }
    c.finish()
}

fn criterion_9() -> Outcome {
    let mut c = Checks::default();
    let mut rng = rng(9);
    let section = subdivision("appendixE.json");
    let (rr, _) = is_recursively_regular(&section);
    c.require(rr, "section is recursively regular");
    let f = fan_from_section(&section, &q(-1)).unwrap();
    let plan = CoveringPlan::new(&f).expect("cone over a recursively regular section");
    for _ in 0..100 {
        let pts = reverse_cone_points(&mut rng, &f, f.cell_count());
        let out = plan.assign(&f, &pts).expect("covering assignment");
        let report = overlap_check(&f, &pts, &out.assignment).unwrap();
        c.require(
            report.walls.iter().all(|w| !w.margin.is_negative()),
            "all margins ≥ 0",
        );
        c.require(
            uncovered_witness(&f, &pts, &out.assignment)
                .unwrap()
                .is_none(),
            "no uncovered witness",
        );
    }
    let mut planar = 0;
    for _ in 0..20 {
        let cells = rng.gen_range(3..=7);
        let f2 = random_complete_fan_2d(&mut rng, cells);
        let pts: Vec<Vec<Rational>> = (0..cells)
            .map(|_| ints(&[rng.gen_range(-15..=15), rng.gen_range(-15..=15)]))
            .collect();
        let out = covering_assignment(&f2, &pts).expect("complete 2D fans are regular");
        c.require(
            overlap_check(&f2, &pts, &out.assignment)
                .unwrap()
                .is_clean(),
            "2D margins ≥ 0",
        );
        c.require(
            uncovered_region_2d(&f2, &pts, &out.assignment)
                .unwrap()
                .is_empty(),
            "2D uncovered region empty",
        );
        planar += 1;
    }
    let config = PointConfiguration::new(
        2,
        vec![
            ints(&[0, 0]),
            ints(&[4, 0]),
            ints(&[4, 4]),
            ints(&[0, 4]),
            ints(&[1, 2]),
        ],
        None,
    )
    .unwrap();
    let s = lift_project_2d(
        &config,
        &HeightFunction {
            values: ints(&[0, 0, 0, 0, -1]),
        },
    )
    .unwrap();
    let f3 = fan_from_section(&s, &q(-1)).unwrap();
    let pts = reverse_cone_points(&mut rng, &f3, f3.cell_count());
    let a = covering_assignment(&f3, &pts).unwrap().assignment;
    let sample = sample_coverage(&f3, &pts, &a, 10_000, 2024).unwrap();
    c.require(
        sample.samples == 10_000 && sample.is_full(),
        format!(
            "sampled coverage 1 (got {}/{})",
            sample.covered, sample.samples
        ),
    );
    c.note(format!(
        "100 point sets on the 22-cone fan and {planar} planar fans covered with margins ≥ 0; regular 3D fan covers {}/{} samples",
        sample.covered, sample.samples
    ));
    c.finish()
}

fn criterion_10() -> Outcome {
    let mut c = Checks::default();
    let w = web("web-fig2.json");
    let a = spiderweb_redundant_cables(&w).expect("web analyses");
    let mut names = a.redundant_names.clone();
    names.sort_by_key(|n| n[1..].parse::<usize>().unwrap_or(usize::MAX));
    let expected: Vec<String> = (1..=10).map(|i| format!("s{i}")).collect();
    c.require(
        names == expected,
        format!("redundant cables s1..s10 (got {names:?})"),
    );
    c.require(a.rigid(), "verdict rigid");
    let mut rng = rng(10);
    let square: Vec<Vec<Rational>> =
        vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[1, 1]), ints(&[0, 1])];
    let sq_edges = [(0, 1), (1, 2), (2, 3), (3, 0)];
    let sq = DirectionalGraph::polytope(&square, &sq_edges).unwrap();
    let sq_drawing: Vec<Vec<Rational>> = square.iter().map(|v| scale(&q(-1), v)).collect();
    let cube: Vec<Vec<i64>> = (0..8)
        .map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1])
        .collect();
    let project = |v: &[i64]| ints(&[3 * v[0] + v[2], 5 * v[1] + v[2]]);
    let mut cube_arcs = Vec::new();
    for u in 0..8usize {
        for b in 0..3 {
            let v = u ^ (1 << b);
            if u < v {
                let h: Vec<i64> = (0..3).map(|k| cube[v][k] - cube[u][k]).collect();
                cube_arcs.push((u, v, project(&h)));
            }
        }
    }
    let cube_graph = DirectionalGraph::new(2, 8, cube_arcs).unwrap();
    let cube_drawing: Vec<Vec<Rational>> =
        cube.iter().map(|v| scale(&q(-1), &project(v))).collect();
    for _ in 0..100 {
        for (g, drawing) in [(&sq, &sq_drawing), (&cube_graph, &cube_drawing)] {
            let n = drawing.len();
            let pts: Vec<Vec<Rational>> = (0..n)
                .map(|_| ints(&[rng.gen_range(-20..=20), rng.gen_range(-20..=20)]))
                .collect();
            let e = embed_drawable(g, drawing, &pts).expect("drawing is valid");
            c.require(
                check_embedding(g, &pts, &e.assignment)
                    .unwrap()
                    .is_embedding(),
                "embedding passes check_embedding",
            );
        }
    }
    c.note("redundant = {s1..s10}, rigid; 200 drawable embeddings valid".to_string());
    c.finish()
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("appendix E certificate", criterion_1),
        ("appendix D certificate", criterion_2),
        ("appendix F certificate and two-level tree", criterion_3),
        ("appendix C fan, assignments and cycles", criterion_4),
        ("minimum relaxation oracle", criterion_5),
        ("Gordan dichotomy", criterion_6),
        ("regular round trip", criterion_7),
        ("line assignment", criterion_8),
        ("recursive covering assignment", criterion_9),
        ("applications", criterion_10),
    ];
    let optimized = !cfg!(debug_assertions);
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(BUDGETS[i]);
        let mut status = outcome.status;
        let mut timing = format!("{:.2} s of {} s", elapsed.as_secs_f64(), BUDGETS[i]);
        if elapsed > budget {
            if optimized {
                status = Status::Fail;
                timing.push_str(", over budget");
            } else {
                timing.push_str(", over budget in an unoptimized build");
            }
        }
        let tag = match status {
            Status::Pass => "PASS",
            Status::Erratum => "ERRATUM",
            Status::Fail => "FAIL",
        };
        if status == Status::Fail {
            failed += 1;
        }
        println!(
            "[{tag}] {:>2}. {name} ({TOLERANCE}; {timing}): {}",
            i + 1,
            outcome.detail
        );
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
