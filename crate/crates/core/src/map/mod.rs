//! Rooted maps as half-edge rotation systems.
//!
//! A map is stored as two permutations on half-edges: `twin` (a fixed-point
//! free involution) and `next` (counterclockwise successor around the face
//! lying to the left of the half-edge). Vertices are orbits of
//! `h -> twin(prev(h))`. The root is a half-edge whose left face is the root
//! face.

mod ball;
mod builder;
mod census;
mod code;
mod core;
mod face_tree;
mod format;
mod reroot;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::TriType;

pub use ball::{ball, distances_from_root, rigidity_criterion, Rigidity};
pub(crate) use builder::{MapBuilder, Slot};
pub use census::{brute_force_census, census_size, sphere_census, CENSUS_BOUND};
pub use code::{canonical_code, CanonicalCode};
pub use self::core::three_connected_core;
pub(crate) use self::core::{cell_of, collapse_cell, root_cell};
pub use face_tree::{face_tree, FaceTree, FaceTreeNode};
pub use reroot::{rw_reroot, rw_reroot_kernel, uniform_reroot, uniform_reroot_kernel};

/// Role of the face a half-edge borders on its left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FaceKind {
    /// A triangle of the triangulation.
    Internal,
    /// A boundary face of a disc, or an outer face of a ball.
    External,
    /// The not yet explored part of an infinite triangulation.
    Unrevealed,
}

impl FaceKind {
    fn as_byte(self) -> u8 {
        match self {
            FaceKind::Internal => 0,
            FaceKind::External => 1,
            FaceKind::Unrevealed => 2,
        }
    }
}

/// The first invariant a map fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    LengthMismatch,
    BadRoot,
    TwinNotInvolution(usize),
    NextNotPermutation(usize),
    MixedFaceKinds(usize),
    MultipleUnrevealed,
    Disconnected,
    Euler { vertices: usize, edges: usize, faces: usize },
    NonTriangleFace(usize),
    Loop(usize),
    MultipleEdge(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LengthMismatch => write!(f, "array length mismatch"),
            Violation::BadRoot => write!(f, "root out of range"),
            Violation::TwinNotInvolution(h) => write!(f, "twin is not an involution at {h}"),
            Violation::NextNotPermutation(h) => write!(f, "next is not a permutation at {h}"),
            Violation::MixedFaceKinds(h) => write!(f, "face of {h} has mixed kinds"),
            Violation::MultipleUnrevealed => write!(f, "more than one unrevealed face"),
            Violation::Disconnected => write!(f, "disconnected"),
            Violation::Euler { vertices, edges, faces } => {
                write!(f, "euler characteristic: V={vertices} E={edges} F={faces}")
            }
            Violation::NonTriangleFace(face) => write!(f, "non-triangle face {face}"),
            Violation::Loop(h) => write!(f, "loop at half-edge {h}"),
            Violation::MultipleEdge(a, b) => write!(f, "multiple edge between {a} and {b}"),
        }
    }
}

/// A rooted planar map with marked external faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedMap {
    twin: Vec<usize>,
    next: Vec<usize>,
    kind: Vec<FaceKind>,
    root: usize,
    prev: Vec<usize>,
    origin: Vec<usize>,
    face: Vec<usize>,
    vertex_rep: Vec<usize>,
    face_rep: Vec<usize>,
}

impl RootedMap {
    /// The map with one vertex and no edges.
    pub fn single_vertex() -> Self {
        RootedMap {
            twin: vec![],
            next: vec![],
            kind: vec![],
            root: 0,
            prev: vec![],
            origin: vec![],
            face: vec![],
            vertex_rep: vec![usize::MAX],
            face_rep: vec![],
        }
    }

    /// Builds a map from its permutations, checking only the structural
    /// invariants needed to derive vertices and faces.
    pub fn from_parts(
        twin: Vec<usize>,
        next: Vec<usize>,
        kind: Vec<FaceKind>,
        root: usize,
    ) -> Result<Self> {
        let n = twin.len();
        let bad = |v| Error::InvalidMap(v);
        if next.len() != n || kind.len() != n {
            return Err(bad(Violation::LengthMismatch));
        }
        if n == 0 {
            return Ok(Self::single_vertex());
        }
        if root >= n {
            return Err(bad(Violation::BadRoot));
        }
        for h in 0..n {
            let t = twin[h];
            if t >= n || t == h || twin[t] != h {
                return Err(bad(Violation::TwinNotInvolution(h)));
            }
        }
        let mut prev = vec![usize::MAX; n];
        for h in 0..n {
            let x = next[h];
            if x >= n || prev[x] != usize::MAX {
                return Err(bad(Violation::NextNotPermutation(h)));
            }
            prev[x] = h;
        }
        let mut face = vec![usize::MAX; n];
        let mut face_rep = Vec::new();
        for h in 0..n {
            if face[h] != usize::MAX {
                continue;
            }
            let id = face_rep.len();
            face_rep.push(h);
            let mut g = h;
            loop {
                if kind[g] != kind[h] {
                    return Err(bad(Violation::MixedFaceKinds(h)));
                }
                face[g] = id;
                g = next[g];
                if g == h {
                    break;
                }
            }
        }
        if face_rep.iter().filter(|&&h| kind[h] == FaceKind::Unrevealed).count() > 1 {
            return Err(bad(Violation::MultipleUnrevealed));
        }
        let mut origin = vec![usize::MAX; n];
        let mut vertex_rep = Vec::new();
        for h in 0..n {
            if origin[h] != usize::MAX {
                continue;
            }
            let id = vertex_rep.len();
            vertex_rep.push(h);
            let mut g = h;
            loop {
                origin[g] = id;
                g = twin[prev[g]];
                if g == h {
                    break;
                }
            }
        }
        Ok(RootedMap { twin, next, kind, root, prev, origin, face, vertex_rep, face_rep })
    }

    pub fn is_single_vertex(&self) -> bool {
        self.twin.is_empty()
    }

    pub fn half_edge_count(&self) -> usize {
        self.twin.len()
    }

    pub fn edge_count(&self) -> usize {
        self.twin.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_rep.len()
    }

    pub fn face_count(&self) -> usize {
        self.face_rep.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_vertex(&self) -> usize {
        if self.is_single_vertex() {
            0
        } else {
            self.origin[self.root]
        }
    }

    pub fn twin(&self, h: usize) -> usize {
        self.twin[h]
    }

    pub fn next(&self, h: usize) -> usize {
        self.next[h]
    }

    pub fn prev(&self, h: usize) -> usize {
        self.prev[h]
    }

    pub fn origin(&self, h: usize) -> usize {
        self.origin[h]
    }

    pub fn head(&self, h: usize) -> usize {
        self.origin[self.twin[h]]
    }

    /// Next outgoing half-edge counterclockwise around `origin(h)`.
    pub fn rotate(&self, h: usize) -> usize {
        self.twin[self.prev[h]]
    }

    pub fn face(&self, h: usize) -> usize {
        self.face[h]
    }

    pub fn kind(&self, h: usize) -> FaceKind {
        self.kind[h]
    }

    pub fn face_kind(&self, f: usize) -> FaceKind {
        self.kind[self.face_rep[f]]
    }

    /// Smallest half-edge on face `f`.
    pub fn face_half_edge(&self, f: usize) -> usize {
        self.face_rep[f]
    }

    /// Smallest half-edge leaving vertex `v`.
    pub fn vertex_half_edge(&self, v: usize) -> usize {
        self.vertex_rep[v]
    }

    pub fn face_len(&self, f: usize) -> usize {
        self.face_cycle(self.face_rep[f]).count()
    }

    /// Half-edges of the face containing `h`, starting at `h`.
    pub fn face_cycle(&self, h: usize) -> impl Iterator<Item = usize> + '_ {
        let mut cur = Some(h);
        std::iter::from_fn(move || {
            let g = cur?;
            let n = self.next[g];
            cur = if n == h { None } else { Some(n) };
            Some(g)
        })
    }

    /// Outgoing half-edges of `origin(h)` in counterclockwise order from `h`.
    pub fn rotation(&self, h: usize) -> impl Iterator<Item = usize> + '_ {
        let mut cur = Some(h);
        std::iter::from_fn(move || {
            let g = cur?;
            let n = self.rotate(g);
            cur = if n == h { None } else { Some(n) };
            Some(g)
        })
    }

    /// Number of edge ends at `v` (loops would count twice).
    pub fn degree(&self, v: usize) -> usize {
        if self.is_single_vertex() {
            return 0;
        }
        self.rotation(self.vertex_rep[v]).count()
    }

    pub fn faces_of_kind(&self, k: FaceKind) -> Vec<usize> {
        (0..self.face_count()).filter(|&f| self.face_kind(f) == k).collect()
    }

    pub fn triangle_count(&self) -> usize {
        self.faces_of_kind(FaceKind::Internal).len()
    }

    pub fn is_sphere(&self) -> bool {
        self.kind.iter().all(|&k| k == FaceKind::Internal)
    }

    pub fn unrevealed_face(&self) -> Option<usize> {
        self.faces_of_kind(FaceKind::Unrevealed).first().copied()
    }

    /// Same map, different root.
    pub fn with_root(&self, h: usize) -> Result<Self> {
        if h >= self.half_edge_count() {
            return Err(Error::InvalidMap(Violation::BadRoot));
        }
        let mut m = self.clone();
        m.root = h;
        Ok(m)
    }

    /// Same map with every face marked as a triangle of the triangulation.
    pub fn all_internal(&self) -> Result<Self> {
        let kind = vec![FaceKind::Internal; self.half_edge_count()];
        Self::from_parts(self.twin.clone(), self.next.clone(), kind, self.root)
    }

    /// Orientation-reversed copy; each half-edge keeps its face but now
    /// runs the other way.
    pub fn mirror(&self) -> Self {
        if self.is_single_vertex() {
            return self.clone();
        }
        Self::from_parts(self.twin.clone(), self.prev.clone(), self.kind.clone(), self.root)
            .expect("mirror of a valid map")
    }

    /// Rooted at the directed edge of `h`, with the root face on the left
    /// (`flip = false`) or on the right (`flip = true`).
    pub fn rerooted(&self, h: usize, flip: bool) -> Result<Self> {
        if flip {
            self.mirror().with_root(self.twin[h])
        } else {
            self.with_root(h)
        }
    }

    pub fn code(&self) -> CanonicalCode {
        canonical_code(self).expect("connected map")
    }

    pub fn validate(&self, t: TriType) -> std::result::Result<(), Violation> {
        validate(self, t)
    }

    pub(crate) fn twins(&self) -> &[usize] {
        &self.twin
    }

    pub(crate) fn nexts(&self) -> &[usize] {
        &self.next
    }

    pub fn to_text(&self) -> String {
        format::to_text(self)
    }

    pub fn from_text(s: &str) -> Result<Self> {
        format::from_text(s)
    }
}

/// Checks every invariant of a triangulation of the given type and reports
/// the first one violated.
pub fn validate(map: &RootedMap, t: TriType) -> std::result::Result<(), Violation> {
    if map.is_single_vertex() {
        return Ok(());
    }
    let n = map.half_edge_count();
    let mut seen = vec![false; n];
    let mut stack = vec![map.root];
    seen[map.root] = true;
    let mut count = 1;
    while let Some(h) = stack.pop() {
        for g in [map.next[h], map.twin[h], map.prev[h]] {
            if !seen[g] {
                seen[g] = true;
                count += 1;
                stack.push(g);
            }
        }
    }
    if count != n {
        return Err(Violation::Disconnected);
    }
    let (v, e, f) = (map.vertex_count(), map.edge_count(), map.face_count());
    if v + f != e + 2 {
        return Err(Violation::Euler { vertices: v, edges: e, faces: f });
    }
    for face in 0..f {
        if map.face_kind(face) == FaceKind::Internal && map.face_len(face) != 3 {
            return Err(Violation::NonTriangleFace(face));
        }
    }
    for h in 0..n {
        if map.origin(h) == map.head(h) {
            return Err(Violation::Loop(h));
        }
    }
    if t == TriType::TypeIII {
        let mut pairs = HashSet::with_capacity(n / 2);
        for h in 0..n {
            let (a, b) = (map.origin(h), map.head(h));
            if a < b && !pairs.insert((a, b)) {
                return Err(Violation::MultipleEdge(a, b));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Tetrahedron: vertices 0..4, faces 012, 031, 132, 023 counterclockwise.
    pub fn tetrahedron() -> RootedMap {
        triangles_to_map(&[[0, 1, 2], [0, 3, 1], [1, 3, 2], [0, 2, 3]], &[])
    }

    /// Builds a map from oriented triangles plus oriented external faces; every
    /// directed edge must appear exactly once.
    pub fn triangles_to_map(tris: &[[usize; 3]], ext: &[Vec<usize>]) -> RootedMap {
        let mut faces: Vec<(Vec<usize>, FaceKind)> =
            tris.iter().map(|t| (t.to_vec(), FaceKind::Internal)).collect();
        faces.extend(ext.iter().map(|f| (f.clone(), FaceKind::External)));
        let mut index = std::collections::HashMap::new();
        let mut next = Vec::new();
        let mut kind = Vec::new();
        let mut ends = Vec::new();
        for (f, k) in &faces {
            let base = ends.len();
            for i in 0..f.len() {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                assert!(index.insert((a, b), base + i).is_none(), "duplicate edge {a}->{b}");
                ends.push((a, b));
                next.push(base + (i + 1) % f.len());
                kind.push(*k);
            }
        }
        let twin = ends.iter().map(|&(a, b)| index[&(b, a)]).collect();
        RootedMap::from_parts(twin, next, kind, 0).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn tetrahedron_is_valid() {
        let t = tetrahedron();
        assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (4, 6, 4));
        assert_eq!(validate(&t, TriType::TypeIII), Ok(()));
        for v in 0..4 {
            assert_eq!(t.degree(v), 3);
        }
    }

    #[test]
    fn quadrilateral_face_rejected() {
        // Square pyramid with the square face marked internal.
        let m = triangles_to_map(
            &[[4, 0, 1], [4, 1, 2], [4, 2, 3], [4, 3, 0]],
            &[vec![0, 3, 2, 1]],
        );
        assert_eq!(validate(&m, TriType::TypeIII), Ok(()));
        let m = m.all_internal().unwrap();
        assert!(matches!(validate(&m, TriType::TypeII), Err(Violation::NonTriangleFace(_))));
    }

    #[test]
    fn loop_reported_as_loop() {
        // Half-edges 0/1 form a loop; triangle 0,5,4 and outer face 1,2,3.
        let twin = vec![1, 0, 3, 2, 5, 4];
        let next = vec![5, 2, 3, 1, 0, 4];
        let kind = vec![
            FaceKind::Internal,
            FaceKind::External,
            FaceKind::External,
            FaceKind::External,
            FaceKind::Internal,
            FaceKind::Internal,
        ];
        let m = RootedMap::from_parts(twin, next, kind, 0).unwrap();
        assert!(matches!(validate(&m, TriType::TypeIII), Err(Violation::Loop(_))));
    }

    #[test]
    fn mirror_is_involution() {
        let t = tetrahedron();
        assert_eq!(t.mirror().mirror(), t);
        assert_eq!(validate(&t.mirror(), TriType::TypeIII), Ok(()));
    }

    #[test]
    fn rotation_visits_degree() {
        let t = tetrahedron();
        for h in 0..t.half_edge_count() {
            assert!(t.rotation(h).all(|g| t.origin(g) == t.origin(h)));
        }
    }
}
