//! Exact linear programming (two-phase dense simplex with Bland's rule) and
//! the Gordan alternative built on it.
//!
//! Every certificate returned from this module is re-verified exactly before
//! it is handed out; a failed verification is an internal bug and panics.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{dot, Scalar};
use crate::Rational;

/// Relation of a constraint row to its right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// Sign restriction of a variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bound {
    NonNegative,
    Free,
}

/// `maximize objective·x  s.t.  constraints x (relations) rhs, bounds`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T = Rational> {
    pub objective: Vec<T>,
    pub constraints: Matrix<T>,
    pub relations: Vec<Relation>,
    pub rhs: Vec<T>,
    pub bounds: Vec<Bound>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Outcome of [`lp_solve`].  `primal`, `dual` and `objective_value` are only
/// meaningful when `status == Optimal` (they are empty / zero otherwise).
#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome<T = Rational> {
    pub status: LpStatus,
    pub primal: Vec<T>,
    pub dual: Vec<T>,
    pub objective_value: T,
}

impl<T: Scalar> LinearProgram<T> {
    fn check(&self) -> Result<()> {
        let n = self.objective.len();
        let m = self.constraints.rows();
        if self.constraints.cols() != n {
            return Err(Error::Dimension {
                context: "constraint columns vs objective length",
                expected: n,
                found: self.constraints.cols(),
            });
        }
        if self.relations.len() != m {
            return Err(Error::Dimension {
                context: "relations per row",
                expected: m,
                found: self.relations.len(),
            });
        }
        if self.rhs.len() != m {
            return Err(Error::Dimension {
                context: "right-hand side",
                expected: m,
                found: self.rhs.len(),
            });
        }
        if self.bounds.len() != n {
            return Err(Error::Dimension {
                context: "variable bounds",
                expected: n,
                found: self.bounds.len(),
            });
        }
        Ok(())
    }

    /// True when `x` satisfies every constraint and bound exactly.
    pub fn is_feasible(&self, x: &[T]) -> bool {
        if x.len() != self.objective.len() {
            return false;
        }
        let bounds_ok = x
            .iter()
            .zip(&self.bounds)
            .all(|(v, b)| *b == Bound::Free || !v.is_negative());
        bounds_ok
            && (0..self.constraints.rows()).all(|i| {
                let lhs = dot(self.constraints.row(i), x);
                match self.relations[i] {
                    Relation::Le => lhs <= self.rhs[i],
                    Relation::Ge => lhs >= self.rhs[i],
                    Relation::Eq => lhs == self.rhs[i],
                }
            })
    }

    /// True when `y` is feasible for the dual of this (maximization)
    /// program: `Aᵀy ≥ c` on non-negative variables, `= c` on free ones,
    /// `y ≥ 0` on `≤` rows, `y ≤ 0` on `≥` rows.
    pub fn is_dual_feasible(&self, y: &[T]) -> bool {
        if y.len() != self.constraints.rows() {
            return false;
        }
        let signs_ok = y.iter().zip(&self.relations).all(|(v, r)| match r {
            Relation::Le => !v.is_negative(),
            Relation::Ge => !v.is_positive(),
            Relation::Eq => true,
        });
        let aty = self
            .constraints
            .transpose_mul_vec(y)
            .expect("sizes checked");
        signs_ok
            && aty
                .iter()
                .zip(&self.objective)
                .zip(&self.bounds)
                .all(|((a, c), b)| match b {
                    Bound::NonNegative => a >= c,
                    Bound::Free => a == c,
                })
    }
}

/// Dense simplex tableau in standard form `A x = b, x ≥ 0, b ≥ 0`.
struct Tableau<T> {
    /// `m x (ncols + 1)`; the last column is the current basic solution.
    t: Matrix<T>,
    basis: Vec<usize>,
    ncols: usize,
}

impl<T: Scalar> Tableau<T> {
    fn value(&self, row: usize) -> &T {
        &self.t[(row, self.ncols)]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.ncols + 1;
        let inv = T::one() / self.t[(row, col)].clone();
        // The scaled pivot row, kept sparse: most tableau entries are zero.
        let mut pivot_row: Vec<(usize, T)> = Vec::new();
        for j in 0..width {
            if self.t[(row, j)].is_zero() {
                continue;
            }
            let v = std::mem::replace(&mut self.t[(row, j)], T::zero()) * inv.clone();
            self.t[(row, j)] = v.clone();
            pivot_row.push((j, v));
        }
        for i in 0..self.t.rows() {
            if i == row || self.t[(i, col)].is_zero() {
                continue;
            }
            let f = self.t[(i, col)].clone();
            for (j, v) in &pivot_row {
                let cur = std::mem::replace(&mut self.t[(i, *j)], T::zero());
                self.t[(i, *j)] = cur - f.clone() * v.clone();
            }
        }
        self.basis[row] = col;
    }

    /// Maximizes `cost·x` over the columns flagged in `allowed`, starting
    /// from the current basis.  Returns `false` if unbounded.
    fn optimize(&mut self, cost: &[T], allowed: &[bool]) -> bool {
        let m = self.t.rows();
        loop {
            let mut basic = vec![false; self.ncols];
            for &b in &self.basis {
                basic[b] = true;
            }
            // Only rows whose basic variable carries a cost contribute to
            // the reduced costs.
            let costed: Vec<usize> = (0..m).filter(|&i| !cost[self.basis[i]].is_zero()).collect();
            // Bland: the smallest-index improving column enters.
            let entering = (0..self.ncols).find(|&j| {
                if !allowed[j] || basic[j] {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for &i in &costed {
                    let a = &self.t[(i, j)];
                    if !a.is_zero() {
                        reduced = reduced - cost[self.basis[i]].clone() * a.clone();
                    }
                }
                reduced.is_positive()
            });
            let Some(col) = entering else {
                return true;
            };
            // Ratio test; ties broken by the smallest basic variable index.
            let mut best: Option<(usize, T)> = None;
            for i in 0..m {
                let a = &self.t[(i, col)];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.value(i).clone() / a.clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((row, _)) = best else {
                return false;
            };
            self.pivot(row, col);
        }
    }
}

/// Solves a linear program exactly.
///
/// The program is brought to standard form (free variables split, rows
/// flipped to non-negative right-hand sides, slack/surplus/artificial
/// columns added) and solved by the two-phase simplex method with Bland's
/// anti-cycling rule.  Dual values are recovered from the optimal basis by
/// solving `Bᵀ y = c_B` exactly and mapped back to the original rows.
pub fn lp_solve<T: Scalar>(p: &LinearProgram<T>) -> Result<LpOutcome<T>> {
    p.check()?;
    let n = p.objective.len();
    let m = p.constraints.rows();

    // Structural columns: x_j (and -x_j for free variables).
    let mut struct_cols: Vec<(usize, bool)> = Vec::new(); // (original var, negated)
    for (j, b) in p.bounds.iter().enumerate() {
        struct_cols.push((j, false));
        if *b == Bound::Free {
            struct_cols.push((j, true));
        }
    }
    let ns = struct_cols.len();

    // Row signs so that every right-hand side is non-negative; homogeneous
    // `≥` rows are negated too, so that their slack can start in the basis
    // instead of an artificial variable.
    let flip: Vec<bool> = p
        .rhs
        .iter()
        .zip(&p.relations)
        .map(|(b, r)| b.is_negative() || (b.is_zero() && *r == Relation::Ge))
        .collect();
    let rel: Vec<Relation> = p
        .relations
        .iter()
        .zip(&flip)
        .map(|(r, f)| match (r, f) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => *r,
        })
        .collect();

    let n_slack = rel.iter().filter(|r| **r != Relation::Eq).count();
    let n_art = rel.iter().filter(|r| **r != Relation::Le).count();
    let ncols = ns + n_slack + n_art;
    let mut t = Matrix::zeros(m, ncols + 1);
    let mut basis = vec![0; m];
    let mut is_art = vec![false; ncols];
    let mut slack_next = ns;
    let mut art_next = ns + n_slack;
    for i in 0..m {
        let sgn = if flip[i] { -T::one() } else { T::one() };
        for (c, &(j, neg)) in struct_cols.iter().enumerate() {
            let a = p.constraints[(i, j)].clone() * sgn.clone();
            t[(i, c)] = if neg { -a } else { a };
        }
        t[(i, ncols)] = p.rhs[i].clone() * sgn;
        match rel[i] {
            Relation::Le => {
                t[(i, slack_next)] = T::one();
                basis[i] = slack_next;
                slack_next += 1;
            }
            Relation::Ge => {
                t[(i, slack_next)] = -T::one();
                slack_next += 1;
                t[(i, art_next)] = T::one();
                is_art[art_next] = true;
                basis[i] = art_next;
                art_next += 1;
            }
            Relation::Eq => {
                t[(i, art_next)] = T::one();
                is_art[art_next] = true;
                basis[i] = art_next;
                art_next += 1;
            }
        }
    }
    let mut tab = Tableau { t, basis, ncols };

    // Phase 1: maximize -Σ artificials.
    if n_art > 0 {
        let cost1: Vec<T> = is_art
            .iter()
            .map(|&a| if a { -T::one() } else { T::zero() })
            .collect();
        let all = vec![true; ncols];
        let bounded = tab.optimize(&cost1, &all);
        debug_assert!(bounded, "phase 1 is always bounded");
        let infeasible = (0..m).any(|i| is_art[tab.basis[i]] && !tab.value(i).is_zero());
        if infeasible {
            return Ok(LpOutcome {
                status: LpStatus::Infeasible,
                primal: Vec::new(),
                dual: Vec::new(),
                objective_value: T::zero(),
            });
        }
        // Drive zero-level artificials out of the basis where possible.
        for i in 0..m {
            if is_art[tab.basis[i]] {
                if let Some(j) = (0..ncols).find(|&j| !is_art[j] && !tab.t[(i, j)].is_zero()) {
                    tab.pivot(i, j);
                }
            }
        }
    }

    // Phase 2.
    let mut cost2 = vec![T::zero(); ncols];
    for (c, &(j, neg)) in struct_cols.iter().enumerate() {
        cost2[c] = if neg {
            -p.objective[j].clone()
        } else {
            p.objective[j].clone()
        };
    }
    let allowed: Vec<bool> = is_art.iter().map(|a| !a).collect();
    if !tab.optimize(&cost2, &allowed) {
        return Ok(LpOutcome {
            status: LpStatus::Unbounded,
            primal: Vec::new(),
            dual: Vec::new(),
            objective_value: T::zero(),
        });
    }

    let mut std_x = vec![T::zero(); ncols];
    for i in 0..m {
        std_x[tab.basis[i]] = tab.value(i).clone();
    }
    let mut x = vec![T::zero(); n];
    for (c, &(j, neg)) in struct_cols.iter().enumerate() {
        if neg {
            x[j] = x[j].clone() - std_x[c].clone();
        } else {
            x[j] = x[j].clone() + std_x[c].clone();
        }
    }

    // Duals from the optimal basis of the original standard-form columns.
    let mut b_t = Matrix::zeros(m, m);
    let mut c_b = vec![T::zero(); m];
    {
        // Rebuild the initial standard-form matrix to read basis columns.
        let mut a0 = Matrix::zeros(m, ncols);
        let mut slack_next = ns;
        let mut art_next = ns + n_slack;
        for i in 0..m {
            let sgn = if flip[i] { -T::one() } else { T::one() };
            for (c, &(j, neg)) in struct_cols.iter().enumerate() {
                let a = p.constraints[(i, j)].clone() * sgn.clone();
                a0[(i, c)] = if neg { -a } else { a };
            }
            match rel[i] {
                Relation::Le => {
                    a0[(i, slack_next)] = T::one();
                    slack_next += 1;
                }
                Relation::Ge => {
                    a0[(i, slack_next)] = -T::one();
                    slack_next += 1;
                    a0[(i, art_next)] = T::one();
                    art_next += 1;
                }
                Relation::Eq => {
                    a0[(i, art_next)] = T::one();
                    art_next += 1;
                }
            }
        }
        for (k, &col) in tab.basis.iter().enumerate() {
            for i in 0..m {
                b_t[(k, i)] = a0[(i, col)].clone();
            }
            c_b[k] = cost2[col].clone();
        }
    }
    let y_std = b_t
        .solve(&c_b)?
        .particular
        .expect("optimal basis matrix is invertible");
    let dual: Vec<T> = y_std
        .into_iter()
        .zip(&flip)
        .map(|(y, f)| if *f { -y } else { y })
        .collect();
    let objective_value = dot(&p.objective, &x);

    let outcome = LpOutcome {
        status: LpStatus::Optimal,
        primal: x,
        dual,
        objective_value,
    };
    assert!(
        p.is_feasible(&outcome.primal),
        "simplex returned an infeasible primal"
    );
    assert!(
        p.is_dual_feasible(&outcome.dual),
        "simplex returned an infeasible dual"
    );
    assert_eq!(
        dot(&p.rhs, &outcome.dual),
        outcome.objective_value,
        "strong duality violated"
    );
    Ok(outcome)
}

/// One of the two alternatives of Gordan's theorem (relaxed form).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GordanWitness<T = Rational> {
    /// `x` with `s_i·x = 0` for relaxed rows and `s_j·x > 0` for all others.
    Primal(Vec<T>),
    /// `y` with `Mᵀy = 0`, `y_j ≥ 0` outside the relaxed set and some
    /// `y_j > 0` outside it.
    Dual(Vec<T>),
}

impl<T> GordanWitness<T> {
    pub fn is_primal(&self) -> bool {
        matches!(self, GordanWitness::Primal(_))
    }
}

/// True when `x` solves `S(M, E)`: equality on `E`, strict positivity off `E`.
pub fn is_strict_witness<T: Scalar>(m: &Matrix<T>, relaxed: &BTreeSet<usize>, x: &[T]) -> bool {
    x.len() == m.cols()
        && (0..m.rows()).all(|i| {
            let v = dot(m.row(i), x);
            if relaxed.contains(&i) {
                v.is_zero()
            } else {
                v.is_positive()
            }
        })
}

/// True when `y` solves the dual system `S*(M, E)`.
pub fn is_dual_witness<T: Scalar>(m: &Matrix<T>, relaxed: &BTreeSet<usize>, y: &[T]) -> bool {
    if y.len() != m.rows() {
        return false;
    }
    let combo = m.transpose_mul_vec(y).expect("length checked");
    let outside = (0..m.rows()).filter(|i| !relaxed.contains(i));
    combo.iter().all(|c| c.is_zero())
        && outside.clone().all(|i| !y[i].is_negative())
        && outside.clone().any(|i| y[i].is_positive())
}

/// The bounded dual LP of one relaxation round:
/// maximize `Σ_{i∉E} y_i` s.t. `Mᵀy = 0`, `y_i ≥ 0 (i ∉ E)`, `y_i` free
/// (`i ∈ E`, split into `y⁺ - y⁻`), `Σ_{i∉E} y_i + Σ_{i∈E} (y⁺_i + y⁻_i) ≤ 1`.
/// Returns the optimal value and the optimal `y`.
pub fn dual_round<T: Scalar>(m: &Matrix<T>, relaxed: &BTreeSet<usize>) -> (T, Vec<T>) {
    let rows = m.rows();
    let cols = m.cols();
    // Variable layout: one per row, plus one extra (negative part) per relaxed row.
    let mut var_of_row: Vec<(usize, Option<usize>)> = Vec::with_capacity(rows);
    let mut nvars = rows;
    for i in 0..rows {
        if relaxed.contains(&i) {
            var_of_row.push((i, Some(nvars)));
            nvars += 1;
        } else {
            var_of_row.push((i, None));
        }
    }
    let mut a = Matrix::zeros(cols + 1, nvars);
    for i in 0..rows {
        for j in 0..cols {
            let v = m[(i, j)].clone();
            if v.is_zero() {
                continue;
            }
            a[(j, i)] = v.clone();
            if let (_, Some(neg)) = var_of_row[i] {
                a[(j, neg)] = -v;
            }
        }
    }
    for v in 0..nvars {
        a[(cols, v)] = T::one();
    }
    let mut objective = vec![T::zero(); nvars];
    for (i, o) in objective.iter_mut().enumerate().take(rows) {
        if !relaxed.contains(&i) {
            *o = T::one();
        }
    }
    let mut relations = vec![Relation::Eq; cols];
    relations.push(Relation::Le);
    let mut rhs = vec![T::zero(); cols];
    rhs.push(T::one());
    let lp = LinearProgram {
        objective,
        constraints: a,
        relations,
        rhs,
        bounds: vec![Bound::NonNegative; nvars],
    };
    let out = lp_solve(&lp).expect("well-formed round program");
    assert_eq!(
        out.status,
        LpStatus::Optimal,
        "round program is feasible and bounded"
    );
    let y: Vec<T> = (0..rows)
        .map(|i| match var_of_row[i] {
            (_, Some(neg)) => out.primal[i].clone() - out.primal[neg].clone(),
            _ => out.primal[i].clone(),
        })
        .collect();
    (out.objective_value, y)
}

/// Max-margin program: maximize `t` s.t. `s_i·x = 0 (i∈E)`,
/// `s_j·x ≥ t (j∉E)`, `t ≤ 1`, `x` free.  Returns the optimal `(t, x)`.
pub fn max_margin<T: Scalar>(m: &Matrix<T>, relaxed: &BTreeSet<usize>) -> (T, Vec<T>) {
    let rows = m.rows();
    let cols = m.cols();
    if (0..rows).all(|i| relaxed.contains(&i)) {
        return (T::one(), vec![T::zero(); cols]);
    }
    let nvars = cols + 1;
    let mut a = Matrix::zeros(rows + 1, nvars);
    let mut relations = Vec::with_capacity(rows + 1);
    for i in 0..rows {
        for j in 0..cols {
            a[(i, j)] = m[(i, j)].clone();
        }
        if relaxed.contains(&i) {
            relations.push(Relation::Eq);
        } else {
            a[(i, cols)] = -T::one();
            relations.push(Relation::Ge);
        }
    }
    a[(rows, cols)] = T::one();
    relations.push(Relation::Le);
    let mut rhs = vec![T::zero(); rows];
    rhs.push(T::one());
    let mut objective = vec![T::zero(); nvars];
    objective[cols] = T::one();
    let lp = LinearProgram {
        objective,
        constraints: a,
        relations,
        rhs,
        bounds: vec![Bound::Free; nvars],
    };
    let out = lp_solve(&lp).expect("well-formed margin program");
    assert_eq!(
        out.status,
        LpStatus::Optimal,
        "margin program is feasible and bounded"
    );
    let t = out.primal[cols].clone();
    let x = out.primal[..cols].to_vec();
    (t, x)
}

/// Gordan's alternative: either `x` with `M x > 0` or `y ≥ 0, y ≠ 0` with
/// `Mᵀy = 0`.
pub fn gordan<T: Scalar>(m: &Matrix<T>) -> GordanWitness<T> {
    gordan_relaxed(m, &BTreeSet::new())
}

/// Relaxed Gordan alternative for `S(M, E)` versus `S*(M, E)`.
///
/// The primal side is decided by the max-margin program; when its optimum
/// is zero the bounded dual program of the relaxation round supplies the
/// dual witness.  Both witnesses are verified exactly.
pub fn gordan_relaxed<T: Scalar>(m: &Matrix<T>, relaxed: &BTreeSet<usize>) -> GordanWitness<T> {
    let (t, x) = max_margin(m, relaxed);
    if t.is_positive() {
        let x = T::primitive(&x);
        assert!(
            is_strict_witness(m, relaxed, &x),
            "max-margin witness failed verification"
        );
        return GordanWitness::Primal(x);
    }
    let (value, y) = dual_round(m, relaxed);
    assert!(
        value.is_positive(),
        "Gordan alternative: neither system is compatible"
    );
    assert!(
        is_dual_witness(m, relaxed, &y),
        "dual witness failed verification"
    );
    GordanWitness::Dual(y)
}

/// A non-negative combination `Σ λ_i s_i = 0` supported exactly on
/// `support` with `λ_i > 0` there, if one exists.
pub fn positive_dependence<T: Scalar>(m: &Matrix<T>, support: &BTreeSet<usize>) -> Option<Vec<T>> {
    if support.is_empty() {
        return None;
    }
    let rows: Vec<usize> = support.iter().copied().collect();
    let k = rows.len();
    let cols = m.cols();
    // Variables λ (k, free) and t; maximize t s.t. Σ λ_i s_i = 0, λ_i ≥ t, t ≤ 1.
    let nvars = k + 1;
    let mut a = Matrix::zeros(cols + k + 1, nvars);
    let mut relations = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..cols {
        for (v, &i) in rows.iter().enumerate() {
            a[(j, v)] = m[(i, j)].clone();
        }
        relations.push(Relation::Eq);
        rhs.push(T::zero());
    }
    for v in 0..k {
        a[(cols + v, v)] = T::one();
        a[(cols + v, k)] = -T::one();
        relations.push(Relation::Ge);
        rhs.push(T::zero());
    }
    a[(cols + k, k)] = T::one();
    relations.push(Relation::Le);
    rhs.push(T::one());
    let mut objective = vec![T::zero(); nvars];
    objective[k] = T::one();
    let lp = LinearProgram {
        objective,
        constraints: a,
        relations,
        rhs,
        bounds: vec![Bound::Free; nvars],
    };
    let out = lp_solve(&lp).ok()?;
    if out.status != LpStatus::Optimal || !out.primal[k].is_positive() {
        return None;
    }
    let mut y = vec![T::zero(); m.rows()];
    for (v, &i) in rows.iter().enumerate() {
        y[i] = out.primal[v].clone();
    }
    Some(y)
}
