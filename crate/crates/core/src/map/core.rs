use std::collections::HashMap;

use super::{FaceKind, RootedMap};
use crate::error::{domain, Error, Result};

/// Read access to a half-edge structure, shared by frozen maps and maps
/// under construction.
pub(crate) trait Topology {
    fn half_edges(&self) -> usize;
    fn vertices(&self) -> usize;
    fn root_edge(&self) -> usize;
    fn twin_of(&self, h: usize) -> usize;
    fn next_of(&self, h: usize) -> usize;
    fn origin_of(&self, h: usize) -> usize;
    fn is_unrevealed(&self, h: usize) -> bool;
    /// Next outgoing half-edge counterclockwise around the origin.
    fn rotate_of(&self, h: usize) -> usize;
}

impl Topology for RootedMap {
    fn half_edges(&self) -> usize {
        self.half_edge_count()
    }
    fn vertices(&self) -> usize {
        self.vertex_count()
    }
    fn root_edge(&self) -> usize {
        self.root()
    }
    fn twin_of(&self, h: usize) -> usize {
        self.twin(h)
    }
    fn next_of(&self, h: usize) -> usize {
        self.next(h)
    }
    fn origin_of(&self, h: usize) -> usize {
        self.origin(h)
    }
    fn is_unrevealed(&self, h: usize) -> bool {
        self.kind(h) == FaceKind::Unrevealed
    }
    fn rotate_of(&self, h: usize) -> usize {
        self.rotate(h)
    }
}

/// Half-edges whose faces make up the root's 3-connected component, whether
/// the unrevealed face is among them, and the number of vertices touched.
///
/// Faces are explored from the root face. Crossing an edge `p -> q` leads to
/// the far side of the first edge `p -> q` met when turning around `p`
/// through the current face: the edge itself when it has no parallel copy,
/// otherwise the copy that closes off the bundle on this side.
pub(crate) fn cell_of<T: Topology>(map: &T) -> (Vec<bool>, bool, usize) {
    let mut marked = vec![false; map.half_edges()];
    let mut touched = vec![false; map.vertices()];
    let mut unrevealed = false;
    let mut vertex_count = 0;
    let mut stack = vec![map.root_edge()];
    let enter = |h: usize, marked: &mut Vec<bool>, stack: &mut Vec<usize>| {
        let mut g = h;
        loop {
            marked[g] = true;
            stack.push(g);
            g = map.next_of(g);
            if g == h {
                break;
            }
        }
    };
    let root = stack.pop().expect("root");
    enter(root, &mut marked, &mut stack);
    while let Some(g) = stack.pop() {
        unrevealed |= map.is_unrevealed(g);
        let p = map.origin_of(g);
        if !touched[p] {
            touched[p] = true;
            vertex_count += 1;
        }
        let q = map.origin_of(map.twin_of(g));
        let mut e = map.rotate_of(g);
        while map.origin_of(map.twin_of(e)) != q {
            e = map.rotate_of(e);
        }
        let t = map.twin_of(e);
        if !marked[t] {
            enter(t, &mut marked, &mut stack);
        }
    }
    (marked, unrevealed, vertex_count)
}

/// Faces of the root's 3-connected component; see [`cell_of`].
#[derive(Clone, Debug)]
pub(crate) struct RootCell {
    pub faces: Vec<bool>,
    pub contains_unrevealed: bool,
}

pub(crate) fn root_cell(map: &RootedMap) -> RootCell {
    let (marked, contains_unrevealed, _) = cell_of(map);
    let mut faces = vec![false; map.face_count()];
    for (h, &m) in marked.iter().enumerate() {
        if m {
            faces[map.face(h)] = true;
        }
    }
    RootCell { faces, contains_unrevealed }
}

/// Builds the core from a root cell: keeps the cell's faces and glues the
/// two sides of every collapsed bundle of parallel edges.
pub(crate) fn collapse_cell(map: &RootedMap, cell: &RootCell) -> Result<RootedMap> {
    let n = map.half_edge_count();
    let sel = |h: usize| cell.faces[map.face(h)];
    let mut id = vec![usize::MAX; n];
    let mut count = 0;
    for h in 0..n {
        if sel(h) {
            id[h] = count;
            count += 1;
        }
    }
    let mut twin = vec![usize::MAX; count];
    let mut next = vec![0; count];
    let mut kind = vec![FaceKind::Internal; count];
    let mut open: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for h in 0..n {
        if !sel(h) {
            continue;
        }
        next[id[h]] = id[map.next(h)];
        kind[id[h]] = map.kind(h);
        let t = map.twin(h);
        if sel(t) {
            twin[id[h]] = id[t];
        } else {
            let (a, b) = (map.origin(h), map.head(h));
            open.entry((a.min(b), a.max(b))).or_default().push(h);
        }
    }
    for ((a, b), hs) in open {
        if hs.len() != 2 || map.origin(hs[0]) == map.origin(hs[1]) {
            return Err(domain(format!("cannot collapse the bundle between {a} and {b}")));
        }
        let (x, y) = (id[hs[0]], id[hs[1]]);
        twin[x] = y;
        twin[y] = x;
    }
    RootedMap::from_parts(twin, next, kind, id[map.root()])
}

/// The 3-connected component of the root face, with each bundle of parallel
/// edges collapsed to one edge.
pub fn three_connected_core(map: &RootedMap) -> Result<RootedMap> {
    if map.is_single_vertex() {
        return Ok(map.clone());
    }
    let cell = root_cell(map);
    if cell.contains_unrevealed {
        return Err(Error::InsufficientRegion);
    }
    collapse_cell(map, &cell)
}
