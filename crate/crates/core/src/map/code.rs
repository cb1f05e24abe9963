use std::fmt;

use super::{RootedMap, Violation};
use crate::error::{Error, Result};

/// Label-invariant encoding of a rooted map.
///
/// Half-edges are numbered in breadth-first order from the root, following
/// `next` before `twin`; the code lists, in that order, the numbers of each
/// half-edge's `next` and `twin` and the kind of its face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        hex::decode(s.trim())
            .map(CanonicalCode)
            .map_err(|e| Error::Parse(format!("bad code: {e}")))
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

fn push_varint(out: &mut Vec<u8>, mut x: usize) {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

/// Breadth-first numbering of half-edges from the root.
pub(crate) fn bfs_order(map: &RootedMap) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = map.half_edge_count();
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    if n == 0 {
        return Some((label, order));
    }
    label[map.root()] = 0;
    order.push(map.root());
    let mut i = 0;
    while i < order.len() {
        let h = order[i];
        i += 1;
        for g in [map.next(h), map.twin(h)] {
            if label[g] == usize::MAX {
                label[g] = order.len();
                order.push(g);
            }
        }
    }
    (order.len() == n).then_some((label, order))
}

pub fn canonical_code(map: &RootedMap) -> Result<CanonicalCode> {
    let (label, order) = bfs_order(map).ok_or(Error::InvalidMap(Violation::Disconnected))?;
    let mut out = Vec::with_capacity(3 * order.len() + 2);
    push_varint(&mut out, order.len());
    for &h in &order {
        push_varint(&mut out, label[map.next(h)]);
        push_varint(&mut out, label[map.twin(h)]);
        out.push(map.kind(h).as_byte());
    }
    Ok(CanonicalCode(out))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::tetrahedron;
    use super::super::{FaceKind, RootedMap};
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    pub(crate) fn relabel(map: &RootedMap, perm: &[usize]) -> RootedMap {
        let n = map.half_edge_count();
        let mut twin = vec![0; n];
        let mut next = vec![0; n];
        let mut kind = vec![FaceKind::Internal; n];
        for h in 0..n {
            twin[perm[h]] = perm[map.twin(h)];
            next[perm[h]] = perm[map.next(h)];
            kind[perm[h]] = map.kind(h);
        }
        RootedMap::from_parts(twin, next, kind, perm[map.root()]).unwrap()
    }

    #[test]
    fn tetrahedron_has_one_rooted_class() {
        let t = tetrahedron();
        let c = t.code();
        for h in 0..t.half_edge_count() {
            for flip in [false, true] {
                assert_eq!(t.rerooted(h, flip).unwrap().code(), c);
            }
        }
    }

    #[test]
    fn relabeling_preserves_code() {
        let t = tetrahedron();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut perm: Vec<usize> = (0..t.half_edge_count()).collect();
        for _ in 0..100 {
            perm.shuffle(&mut rng);
            assert_eq!(relabel(&t, &perm).code(), t.code());
        }
    }

    #[test]
    fn hex_round_trip() {
        let c = tetrahedron().code();
        assert_eq!(CanonicalCode::from_hex(&c.to_hex()).unwrap(), c);
        assert_eq!(RootedMap::single_vertex().code().as_bytes(), &[0]);
    }
}
