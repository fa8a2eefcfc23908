//! Regularity trees and recursive regularity.
//!
//! A subdivision that is regular, or whose finest regular coarsening is
//! trivial, is a leaf.  Otherwise the node's children are the regularity
//! trees of the restrictions to the groups of its finest regular coarsening.
//! A subdivision is recursively regular iff every leaf is regular.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::Subdivision;
use crate::regularity::{finest_regular_coarsening, restrict};
use crate::relaxation::Certificate;
use crate::scalar::{to_text, Scalar};
use crate::Rational;

/// Status of a tree node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeStatus {
    Internal,
    LeafRegular,
    LeafCompletelyNonRegular,
}

impl NodeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeStatus::Internal => "internal",
            NodeStatus::LeafRegular => "leaf-regular",
            NodeStatus::LeafCompletelyNonRegular => "leaf-completely-non-regular",
        }
    }
}

/// A node of a regularity tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode<T = Rational> {
    /// Cells of the root subdivision covered by this node, sorted.
    pub cells: Vec<usize>,
    pub status: NodeStatus,
    pub children: Vec<TreeNode<T>>,
    /// Heights (indexed by root point index) inducing the node's finest
    /// regular coarsening; for regular leaves they induce the node itself.
    pub heights: Vec<(usize, T)>,
    /// Names of the walls relaxed by the node's finest regular coarsening.
    pub relaxed_walls: Vec<String>,
    /// For completely non-regular leaves: dual multipliers over the node's
    /// regularity system, keyed by row label.
    pub certificate: Option<Certificate<T>>,
}

/// A regularity tree with construction statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityTree<T = Rational> {
    pub root: TreeNode<T>,
    /// Number of finest-regular-coarsening computations performed.
    pub frc_invocations: usize,
}

impl<T: Scalar> TreeNode<T> {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Length of the longest root-to-leaf path (a single node has depth 0).
    pub fn depth(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    /// All leaves, left to right.
    pub fn leaves(&self) -> Vec<&TreeNode<T>> {
        if self.is_leaf() {
            vec![self]
        } else {
            self.children.iter().flat_map(|c| c.leaves()).collect()
        }
    }

    /// Total number of nodes.
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.node_count()).sum::<usize>()
    }

    /// Nested JSON: cells, status, certificates and children.
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "cells": self.cells,
            "status": self.status.as_str(),
        });
        if !self.heights.is_empty() {
            v["heights"] = self
                .heights
                .iter()
                .map(|(p, h)| (p.to_string(), Value::String(to_text(h))))
                .collect::<serde_json::Map<_, _>>()
                .into();
        }
        if !self.relaxed_walls.is_empty() {
            v["relaxed_walls"] = json!(self.relaxed_walls);
        }
        if let Some(cert) = &self.certificate {
            v["certificate"] = cert
                .coefficients
                .iter()
                .map(|(l, y)| (l.clone(), Value::String(to_text(y))))
                .collect::<serde_json::Map<_, _>>()
                .into();
        }
        if !self.children.is_empty() {
            v["children"] = Value::Array(self.children.iter().map(|c| c.to_json()).collect());
        }
        v
    }
}

impl<T: Scalar> RegularityTree<T> {
    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    /// True iff every leaf is regular.
    pub fn is_recursively_regular(&self) -> bool {
        self.root
            .leaves()
            .iter()
            .all(|l| l.status == NodeStatus::LeafRegular)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "recursively_regular": self.is_recursively_regular(),
            "depth": self.depth(),
            "frc_invocations": self.frc_invocations,
            "root": self.root.to_json(),
        })
    }
}

/// Builds the regularity tree; child subtrees are computed in parallel and
/// kept in group order.
pub fn regularity_tree<T: Scalar>(s: &Subdivision<T>) -> RegularityTree<T> {
    let counter = AtomicUsize::new(0);
    let cells: Vec<usize> = (0..s.cell_count()).collect();
    let points: Vec<usize> = (0..s.config().len()).collect();
    let root = build(s, &cells, &points, &counter);
    RegularityTree {
        root,
        frc_invocations: counter.into_inner(),
    }
}

/// Decides recursive regularity, returning the tree as evidence.
pub fn is_recursively_regular<T: Scalar>(s: &Subdivision<T>) -> (bool, RegularityTree<T>) {
    let tree = regularity_tree(s);
    (tree.is_recursively_regular(), tree)
}

fn build<T: Scalar>(
    s: &Subdivision<T>,
    cell_map: &[usize],
    point_map: &[usize],
    counter: &AtomicUsize,
) -> TreeNode<T> {
    let mut cells = cell_map.to_vec();
    cells.sort_unstable();
    if s.cell_count() == 1 {
        return TreeNode {
            cells,
            status: NodeStatus::LeafRegular,
            children: Vec::new(),
            heights: s.cells()[0]
                .iter()
                .map(|&p| (point_map[p], T::zero()))
                .collect(),
            relaxed_walls: Vec::new(),
            certificate: None,
        };
    }
    counter.fetch_add(1, Ordering::Relaxed);
    let frc = finest_regular_coarsening(s);
    let heights: Vec<(usize, T)> = frc
        .witness
        .values
        .iter()
        .enumerate()
        .map(|(p, h)| (point_map[p], h.clone()))
        .collect();
    let relaxed_walls = frc.relaxed_labels(s);
    if frc.coarsening.is_identity() {
        return TreeNode {
            cells,
            status: NodeStatus::LeafRegular,
            children: Vec::new(),
            heights,
            relaxed_walls,
            certificate: None,
        };
    }
    if frc.coarsening.is_trivial() {
        let sys = crate::regularity::regularity_system(s);
        let first = &frc.relaxation.rounds[0].dual;
        return TreeNode {
            cells,
            status: NodeStatus::LeafCompletelyNonRegular,
            children: Vec::new(),
            heights,
            relaxed_walls,
            certificate: Some(sys.labeled_certificate(first)),
        };
    }
    let children: Vec<TreeNode<T>> = frc
        .coarsening
        .groups
        .par_iter()
        .map(|group| {
            let r = restrict(s, group).expect("groups of a coarsening are dual-connected");
            let sub_cells: Vec<usize> = r.cells.iter().map(|&c| cell_map[c]).collect();
            let sub_points: Vec<usize> = r.points.iter().map(|&p| point_map[p]).collect();
            build(&r.subdivision, &sub_cells, &sub_points, counter)
        })
        .collect();
    assert!(
        children.len() >= 2,
        "an internal node needs a proper, non-trivial coarsening"
    );
    TreeNode {
        cells,
        status: NodeStatus::Internal,
        children,
        heights,
        relaxed_walls,
        certificate: None,
    }
}
