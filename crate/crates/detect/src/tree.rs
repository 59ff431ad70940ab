//! Leaf-wise (best-first) regression-tree growth on gradient/hessian
//! histograms. At each step the open leaf with the highest-gain valid
//! split is expanded, until the leaf budget or the depth cap is hit or no
//! split has positive gain.

use serde::{Deserialize, Serialize};

use crate::binning::FeatureBins;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Node {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
    },
}

/// One additive tree; node 0 is the root, leaves carry raw logit deltas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

impl Tree {
    pub fn value(&self, row: &[f64]) -> f64 {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                Node::Leaf { value } => return *value,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if row[*feature] <= *threshold { *left } else { *right };
                }
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Leaf { .. }))
            .count()
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], at: usize) -> usize {
            match &nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }
}

pub(crate) struct GrowContext<'a> {
    /// Column-major bin indices for the full training data.
    pub binned: &'a [Vec<u16>],
    pub bins: &'a FeatureBins,
    pub grad: &'a [f64],
    pub hess: &'a [f64],
    pub min_leaf: usize,
    pub l2: f64,
    pub max_depth: usize,
    pub num_leaves: usize,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    gain: f64,
    feature: usize,
    threshold_idx: usize,
}

struct OpenLeaf {
    node: usize,
    rows: Vec<u32>,
    depth: usize,
    sum_g: f64,
    sum_h: f64,
    best: Option<Candidate>,
}

fn leaf_objective(g: f64, h: f64, l2: f64) -> f64 {
    g * g / (h + l2)
}

/// Best split of one leaf. Features and thresholds are scanned in
/// ascending order and only strict gain improvements replace the
/// incumbent, so equal-gain ties resolve to the lowest feature index and
/// then the lowest threshold.
fn best_split(ctx: &GrowContext, leaf: &OpenLeaf) -> Option<Candidate> {
    if leaf.depth >= ctx.max_depth || leaf.rows.len() < 2 * ctx.min_leaf {
        return None;
    }
    let parent = leaf_objective(leaf.sum_g, leaf.sum_h, ctx.l2);
    let mut best: Option<Candidate> = None;
    for (feature, column) in ctx.binned.iter().enumerate() {
        let m = ctx.bins.n_bins_of(feature);
        if m < 2 {
            continue;
        }
        let mut hist = vec![(0.0f64, 0.0f64, 0u32); m];
        for &i in &leaf.rows {
            let b = column[i as usize] as usize;
            let cell = &mut hist[b];
            cell.0 += ctx.grad[i as usize];
            cell.1 += ctx.hess[i as usize];
            cell.2 += 1;
        }
        let mut left_g = 0.0;
        let mut left_h = 0.0;
        let mut left_n = 0usize;
        for (threshold_idx, cell) in hist[..m - 1].iter().enumerate() {
            left_g += cell.0;
            left_h += cell.1;
            left_n += cell.2 as usize;
            let right_n = leaf.rows.len() - left_n;
            if left_n < ctx.min_leaf || right_n < ctx.min_leaf {
                continue;
            }
            let right_g = leaf.sum_g - left_g;
            let right_h = leaf.sum_h - left_h;
            let gain = 0.5
                * (leaf_objective(left_g, left_h, ctx.l2)
                    + leaf_objective(right_g, right_h, ctx.l2)
                    - parent);
            if best.is_none_or(|b| gain > b.gain) {
                best = Some(Candidate {
                    gain,
                    feature,
                    threshold_idx,
                });
            }
        }
    }
    best.filter(|b| b.gain > 0.0)
}

/// Grows one tree over the sampled rows. The open-leaf list starts with
/// the root; a split replaces the picked slot with the left child and
/// appends the right child, and gain ties across leaves go to the earliest
/// slot.
pub(crate) fn grow_tree(ctx: &GrowContext, rows: Vec<u32>) -> Tree {
    let sum = |idx: &[u32]| -> (f64, f64) {
        idx.iter().fold((0.0, 0.0), |(g, h), &i| {
            (g + ctx.grad[i as usize], h + ctx.hess[i as usize])
        })
    };

    let mut nodes = vec![Node::Leaf { value: 0.0 }];
    let (sum_g, sum_h) = sum(&rows);
    let mut root = OpenLeaf {
        node: 0,
        rows,
        depth: 0,
        sum_g,
        sum_h,
        best: None,
    };
    root.best = best_split(ctx, &root);
    let mut open = vec![root];

    while open.len() < ctx.num_leaves {
        let mut picked: Option<(usize, f64)> = None;
        for (slot, leaf) in open.iter().enumerate() {
            if let Some(c) = leaf.best {
                if picked.is_none_or(|(_, g)| c.gain > g) {
                    picked = Some((slot, c.gain));
                }
            }
        }
        let Some((slot, _)) = picked else { break };
        let leaf = &mut open[slot];
        let cand = leaf.best.expect("picked leaf has a split");
        let threshold = ctx.bins.thresholds[cand.feature][cand.threshold_idx];
        let rows = std::mem::take(&mut leaf.rows);
        let depth = leaf.depth + 1;
        let parent_node = leaf.node;

        let (mut left_rows, mut right_rows) = (Vec::new(), Vec::new());
        for i in rows {
            if ctx.binned[cand.feature][i as usize] as usize <= cand.threshold_idx {
                left_rows.push(i);
            } else {
                right_rows.push(i);
            }
        }
        let left_node = nodes.len();
        nodes.push(Node::Leaf { value: 0.0 });
        let right_node = nodes.len();
        nodes.push(Node::Leaf { value: 0.0 });
        nodes[parent_node] = Node::Split {
            feature: cand.feature,
            threshold,
            left: left_node,
            right: right_node,
        };

        let (lg, lh) = sum(&left_rows);
        let mut left = OpenLeaf {
            node: left_node,
            rows: left_rows,
            depth,
            sum_g: lg,
            sum_h: lh,
            best: None,
        };
        left.best = best_split(ctx, &left);
        let mut right = OpenLeaf {
            node: right_node,
            rows: right_rows,
            depth,
            sum_g: leaf.sum_g - lg,
            sum_h: leaf.sum_h - lh,
            best: None,
        };
        right.best = best_split(ctx, &right);
        open[slot] = left;
        open.push(right);
    }

    for leaf in open {
        nodes[leaf.node] = Node::Leaf {
            value: -leaf.sum_g / (leaf.sum_h + ctx.l2),
        };
    }
    Tree { nodes }
}
