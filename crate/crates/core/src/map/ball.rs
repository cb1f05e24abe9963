use std::collections::VecDeque;

use super::{FaceKind, RootedMap};
use crate::error::{Error, Result};

/// Graph distance from the root vertex to every vertex (`usize::MAX` when
/// unreachable).
pub fn distances_from_root(map: &RootedMap) -> Vec<usize> {
    let mut dist = vec![usize::MAX; map.vertex_count()];
    if map.is_single_vertex() {
        dist[0] = 0;
        return dist;
    }
    let r = map.root_vertex();
    dist[r] = 0;
    let mut queue = VecDeque::from([r]);
    while let Some(v) = queue.pop_front() {
        for g in map.rotation(map.vertex_half_edge(v)) {
            let w = map.head(g);
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Submap made of the triangles selected by `keep` (indexed by face id);
/// every unmatched side becomes part of an external face. The root must lie
/// on a kept face.
pub(crate) fn submap(map: &RootedMap, keep: &[bool]) -> Result<RootedMap> {
    let n = map.half_edge_count();
    let sel = |h: usize| keep[map.face(h)];
    if !sel(map.root()) {
        return Err(Error::InsufficientRegion);
    }
    let mut id = vec![usize::MAX; n];
    let mut count = 0;
    for h in 0..n {
        if sel(h) {
            id[h] = count;
            count += 1;
        }
    }
    let mut ext = vec![usize::MAX; n];
    for h in 0..n {
        if sel(h) && !sel(map.twin(h)) {
            ext[h] = count;
            count += 1;
        }
    }
    let mut twin = vec![0; count];
    let mut next = vec![0; count];
    let mut kind = vec![FaceKind::External; count];
    for h in 0..n {
        if !sel(h) {
            continue;
        }
        let i = id[h];
        next[i] = id[map.next(h)];
        kind[i] = map.kind(h);
        if sel(map.twin(h)) {
            twin[i] = id[map.twin(h)];
            continue;
        }
        let e = ext[h];
        twin[i] = e;
        twin[e] = i;
        // Turn clockwise around origin(h) through unselected faces.
        let mut g = h;
        loop {
            let g1 = map.next(map.twin(g));
            if sel(g1) {
                break;
            }
            g = g1;
        }
        next[e] = ext[map.twin(g)];
    }
    RootedMap::from_parts(twin, next, kind, id[map.root()])
}

/// Ball of radius `r` around the root vertex: the triangles incident to a
/// vertex at distance at most `r - 1`, with the rest marked external.
pub fn ball(map: &RootedMap, r: usize) -> Result<RootedMap> {
    if r == 0 || map.is_single_vertex() {
        return Ok(RootedMap::single_vertex());
    }
    let dist = distances_from_root(map);
    let mut keep = vec![false; map.face_count()];
    for h in 0..map.half_edge_count() {
        if dist[map.origin(h)] < r {
            match map.kind(h) {
                FaceKind::Internal => keep[map.face(h)] = true,
                FaceKind::Unrevealed => return Err(Error::InsufficientRegion),
                FaceKind::External => {}
            }
        }
    }
    submap(map, &keep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rigidity {
    Rigid,
    Unknown,
}

/// Sufficient condition for rigidity: the triangles are connected through
/// shared edges and every vertex lies on a triangle.
pub fn rigidity_criterion(map: &RootedMap) -> Rigidity {
    let tri = |h: usize| map.kind(h) == FaceKind::Internal;
    let Some(start) = (0..map.half_edge_count()).find(|&h| tri(h)) else {
        return Rigidity::Unknown;
    };
    let mut seen = vec![false; map.face_count()];
    seen[map.face(start)] = true;
    let mut stack = vec![start];
    while let Some(h) = stack.pop() {
        for g in map.face_cycle(h) {
            let t = map.twin(g);
            if tri(t) && !seen[map.face(t)] {
                seen[map.face(t)] = true;
                stack.push(t);
            }
        }
    }
    let connected = (0..map.face_count())
        .all(|f| map.face_kind(f) != FaceKind::Internal || seen[f]);
    let covered = (0..map.vertex_count())
        .all(|v| map.rotation(map.vertex_half_edge(v)).any(tri));
    if connected && covered {
        Rigidity::Rigid
    } else {
        Rigidity::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::TriType;
    use crate::map::fixtures::{tetrahedron, triangles_to_map};

    /// Double pyramid over an `n`-cycle: apexes `n` (top) and `n+1`.
    pub(crate) fn double_pyramid(n: usize) -> RootedMap {
        let mut tris = Vec::new();
        for i in 0..n {
            let j = (i + 1) % n;
            tris.push([n, i, j]);
            tris.push([n + 1, j, i]);
        }
        triangles_to_map(&tris, &[])
    }

    #[test]
    fn tetrahedron_balls() {
        let t = tetrahedron();
        assert!(ball(&t, 0).unwrap().is_single_vertex());
        let b1 = ball(&t, 1).unwrap();
        assert_eq!(b1.triangle_count(), 3);
        assert_eq!(b1.faces_of_kind(FaceKind::External).len(), 1);
        assert_eq!(b1.validate(TriType::TypeIII), Ok(()));
        assert_eq!(ball(&t, 2).unwrap().code(), t.code());
    }

    #[test]
    fn double_pyramid_balls() {
        let p = double_pyramid(6);
        assert_eq!(p.validate(TriType::TypeIII), Ok(()));
        // Root vertex is the top apex: B_1 is the upper cone, B_2 everything.
        let b1 = ball(&p, 1).unwrap();
        assert_eq!(b1.triangle_count(), 6);
        assert_eq!(b1.face_len(b1.faces_of_kind(FaceKind::External)[0]), 6);
        assert_eq!(ball(&p, 2).unwrap().code(), p.code());
    }

    #[test]
    fn balls_are_rigid() {
        let p = double_pyramid(5);
        for r in 1..3 {
            assert_eq!(rigidity_criterion(&ball(&p, r).unwrap()), Rigidity::Rigid);
        }
        let single = triangles_to_map(&[[0, 1, 2]], &[vec![0, 2, 1]]);
        assert_eq!(rigidity_criterion(&single), Rigidity::Rigid);
        // Two triangles sharing only vertex 0.
        let bow = triangles_to_map(&[[0, 1, 2], [0, 3, 4]], &[vec![0, 2, 1, 0, 4, 3]]);
        assert_eq!(rigidity_criterion(&bow), Rigidity::Unknown);
    }
}
