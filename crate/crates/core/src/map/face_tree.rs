use serde::Serialize;

use super::{distances_from_root, FaceKind, RootedMap};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceTreeNode {
    pub level: usize,
    /// Length of the boundary separating this region from the ball.
    pub boundary_len: usize,
    pub parent: Option<usize>,
    /// Whether the region still contains unexplored territory.
    pub unresolved: bool,
}

/// Regions outside the balls `B_1 .. B_r` of a host map, linked by
/// containment. Node 0 stands for the whole map at level 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceTree {
    pub nodes: Vec<FaceTreeNode>,
}

impl FaceTree {
    pub fn level(&self, r: usize) -> impl Iterator<Item = &FaceTreeNode> {
        self.nodes.iter().filter(move |n| n.level == r)
    }

    pub fn children(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(move |&j| self.nodes[j].parent == Some(i))
    }
}

/// Builds the face tree of the balls of radius `1..=r_max` of `host`.
pub fn face_tree(host: &RootedMap, r_max: usize) -> Result<FaceTree> {
    let mut nodes = vec![FaceTreeNode {
        level: 0,
        boundary_len: 0,
        parent: None,
        unresolved: host.unrevealed_face().is_some(),
    }];
    if host.is_single_vertex() {
        return Ok(FaceTree { nodes });
    }
    let dist = distances_from_root(host);
    let nf = host.face_count();
    // Component (node index) of every face outside the previous ball.
    let mut prev_comp = vec![Some(0usize); nf];
    for r in 1..=r_max {
        let mut inside = vec![false; nf];
        for h in 0..host.half_edge_count() {
            if dist[host.origin(h)] < r {
                match host.kind(h) {
                    FaceKind::Internal => inside[host.face(h)] = true,
                    FaceKind::Unrevealed => return Err(Error::InsufficientRegion),
                    FaceKind::External => {}
                }
            }
        }
        let mut comp = vec![None; nf];
        for f in 0..nf {
            if inside[f] || comp[f].is_some() {
                continue;
            }
            let id = nodes.len();
            let parent = prev_comp[f];
            let mut boundary_len = 0;
            let mut unresolved = false;
            comp[f] = Some(id);
            let mut stack = vec![f];
            while let Some(g) = stack.pop() {
                let h0 = host.face_half_edge(g);
                unresolved |= host.kind(h0) == FaceKind::Unrevealed;
                for h in host.face_cycle(h0) {
                    let t = host.face(host.twin(h));
                    if inside[t] {
                        boundary_len += 1;
                    } else if comp[t].is_none() {
                        comp[t] = Some(id);
                        stack.push(t);
                    }
                }
            }
            if parent.is_none() {
                return Err(crate::error::domain("balls are not nested"));
            }
            nodes.push(FaceTreeNode { level: r, boundary_len, parent, unresolved });
        }
        prev_comp = comp;
    }
    Ok(FaceTree { nodes })
}
