//! Exact minimum-cost perfect matching (Hungarian method with potentials).

use crate::scalar::Scalar;

/// An optimal matching with its dual potentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching<T> {
    /// Column matched to each row.
    pub row_to_col: Vec<usize>,
    /// Row potentials `u`.
    pub row_potential: Vec<T>,
    /// Column potentials `v`; `u_i + v_j ≤ c_ij` with equality on matched pairs.
    pub col_potential: Vec<T>,
    pub cost: T,
}

/// Solves the square assignment problem `min Σ c_{i,σ(i)}` exactly.
///
/// # Panics
/// If the cost matrix is not square.
pub fn min_cost_matching<T: Scalar>(cost: &[Vec<T>]) -> Matching<T> {
    let n = cost.len();
    assert!(
        cost.iter().all(|r| r.len() == n),
        "cost matrix must be square"
    );
    // 1-based arrays; column 0 is a virtual start.
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0usize;
        let mut minv: Vec<Option<T>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta: Option<T> = None;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1].clone() - u[i0].clone() - v[j].clone();
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].clone().expect("just set");
                if delta.as_ref().is_none_or(|d| mj < *d) {
                    delta = Some(mj);
                    j1 = j;
                }
            }
            let delta = delta.expect("an unused column remains");
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] = u[owner[j]].clone() + delta.clone();
                    v[j] = v[j].clone() - delta.clone();
                } else if let Some(m) = minv[j].as_mut() {
                    *m = m.clone() - delta.clone();
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_to_col = vec![0usize; n];
    for j in 1..=n {
        row_to_col[owner[j] - 1] = j - 1;
    }
    let total = (0..n).fold(T::zero(), |acc, i| acc + cost[i][row_to_col[i]].clone());
    let matching = Matching {
        row_to_col,
        row_potential: u[1..].to_vec(),
        col_potential: v[1..].to_vec(),
        cost: total,
    };
    debug_assert!(matching.certifies(cost));
    matching
}

impl<T: Scalar> Matching<T> {
    /// Checks dual feasibility and complementary slackness, which together
    /// prove optimality.
    pub fn certifies(&self, cost: &[Vec<T>]) -> bool {
        let n = cost.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s = self.row_potential[i].clone() + self.col_potential[j].clone();
                if self.row_to_col[i] == j {
                    s == cost[i][j]
                } else {
                    s <= cost[i][j]
                }
            })
        })
    }
}
