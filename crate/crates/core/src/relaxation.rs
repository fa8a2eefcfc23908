//! Minimum relaxation sets of homogeneous strict systems and verification
//! of dual certificates.
//!
//! A relaxable system is a matrix `M` whose rows `s_i` stand for strict
//! inequalities `s_i·x > 0`, except for the rows of a baseline set `E₀`
//! which are equations from the start.  Relaxing a row turns it into an
//! equation.  The minimum relaxation set `E(M) ⊇ E₀` is the unique smallest
//! set of rows whose relaxation makes the system compatible; it is found by
//! repeatedly solving the bounded dual program and relaxing the positive
//! support of its optimum.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{dual_round, is_dual_witness, is_strict_witness, max_margin};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::Rational;

/// Constraint rows with labels and a baseline of equation rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelaxableSystem<T = Rational> {
    matrix: Matrix<T>,
    labels: Vec<String>,
    baseline: BTreeSet<usize>,
}

/// One round of the relaxation algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelaxationRound<T = Rational> {
    /// Relaxed set before the round.
    pub relaxed_before: BTreeSet<usize>,
    /// Optimal dual multipliers of the round (`Mᵀy = 0`).
    pub dual: Vec<T>,
    /// Rows outside `relaxed_before` with `y_i > 0`; they join the set.
    pub support: BTreeSet<usize>,
}

/// Outcome of [`minimum_relaxation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelaxationResult<T = Rational> {
    /// The minimum relaxation set `E ⊇ E₀`.
    pub relaxed: BTreeSet<usize>,
    /// Dual witnesses, one per round that enlarged the set.
    pub rounds: Vec<RelaxationRound<T>>,
    /// A solution of `S(M, E)`: zero on `E`, strictly positive elsewhere.
    pub final_witness: Vec<T>,
}

impl<T: Scalar> RelaxableSystem<T> {
    /// Builds a system; labels must be unique and the baseline in range.
    pub fn new(matrix: Matrix<T>, labels: Vec<String>, baseline: BTreeSet<usize>) -> Result<Self> {
        if labels.len() != matrix.rows() {
            return Err(Error::Dimension {
                context: "row labels",
                expected: matrix.rows(),
                found: labels.len(),
            });
        }
        let unique: BTreeSet<&String> = labels.iter().collect();
        if unique.len() != labels.len() {
            return Err(Error::Precondition("row labels must be unique".into()));
        }
        if let Some(&i) = baseline.iter().find(|&&i| i >= matrix.rows()) {
            return Err(Error::IndexOutOfRange {
                context: "baseline equations",
                index: i,
                size: matrix.rows(),
            });
        }
        Ok(RelaxableSystem {
            matrix,
            labels,
            baseline,
        })
    }

    /// A system with default labels `s1, s2, …` and no baseline.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let matrix = Matrix::from_rows(rows)?;
        let labels = (1..=matrix.rows()).map(|i| format!("s{i}")).collect();
        Self::new(matrix, labels, BTreeSet::new())
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn baseline(&self) -> &BTreeSet<usize> {
        &self.baseline
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    /// Index of the row with the given label.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The same rows with a different baseline.
    pub fn with_baseline(&self, baseline: BTreeSet<usize>) -> Result<Self> {
        Self::new(self.matrix.clone(), self.labels.clone(), baseline)
    }

    /// `Mᵀy`, the residual of a candidate certificate.
    pub fn combination(&self, y: &[T]) -> Result<Vec<T>> {
        self.matrix.transpose_mul_vec(y)
    }

    /// Converts a label-indexed certificate into a dense multiplier vector
    /// (missing labels count as zero).
    pub fn dense_certificate(&self, cert: &Certificate<T>) -> Result<Vec<T>> {
        let mut y = vec![T::zero(); self.rows()];
        for (label, value) in &cert.coefficients {
            let i = self.index_of(label).ok_or_else(|| {
                Error::Precondition(format!("certificate names unknown row {label:?}"))
            })?;
            y[i] = value.clone();
        }
        Ok(y)
    }

    /// Converts a dense multiplier vector into a label-indexed certificate
    /// (zero entries omitted).
    pub fn labeled_certificate(&self, y: &[T]) -> Certificate<T> {
        Certificate {
            coefficients: self
                .labels
                .iter()
                .zip(y)
                .filter(|(_, v)| !v.is_zero())
                .map(|(l, v)| (l.clone(), v.clone()))
                .collect(),
        }
    }
}

/// Dual multipliers keyed by row label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Certificate<T = Rational> {
    pub coefficients: BTreeMap<String, T>,
}

/// Computes the minimum relaxation set relative to the baseline.
///
/// Each round solves the bounded dual program for `S*(M, E)`; a positive
/// optimum exhibits rows that cannot be strict in any solution, and all of
/// them (the whole positive support) are relaxed.  A zero optimum means
/// `S(M, E)` is compatible and the max-margin program supplies the final
/// witness.  At most `rows` rounds are needed.
pub fn minimum_relaxation<T: Scalar>(sys: &RelaxableSystem<T>) -> RelaxationResult<T> {
    let m = sys.matrix();
    let mut relaxed = sys.baseline().clone();
    let mut rounds = Vec::new();
    loop {
        let (t, x) = max_margin(m, &relaxed);
        if t.is_positive() {
            let x = T::primitive(&x);
            assert!(
                is_strict_witness(m, &relaxed, &x),
                "final witness failed verification"
            );
            return RelaxationResult {
                relaxed,
                rounds,
                final_witness: x,
            };
        }
        let (value, y) = dual_round(m, &relaxed);
        assert!(
            value.is_positive(),
            "incompatible system without a dual witness"
        );
        assert!(
            is_dual_witness(m, &relaxed, &y),
            "round witness failed verification"
        );
        let support: BTreeSet<usize> = (0..m.rows())
            .filter(|i| !relaxed.contains(i) && y[*i].is_positive())
            .collect();
        assert!(!support.is_empty());
        rounds.push(RelaxationRound {
            relaxed_before: relaxed.clone(),
            dual: y,
            support: support.clone(),
        });
        relaxed.extend(support);
    }
}

/// True iff `y` certifies incompatibility of `S(M, E₀)`: `Mᵀy = 0` exactly,
/// `y_i ≥ 0` outside `E₀` and `y_j > 0` for some `j` outside `E₀`.
pub fn verify_dual_certificate<T: Scalar>(sys: &RelaxableSystem<T>, y: &[T]) -> Result<bool> {
    if y.len() != sys.rows() {
        return Err(Error::Dimension {
            context: "certificate length",
            expected: sys.rows(),
            found: y.len(),
        });
    }
    Ok(is_dual_witness(sys.matrix(), sys.baseline(), y))
}
