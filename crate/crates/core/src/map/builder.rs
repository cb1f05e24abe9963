use super::core::Topology;
use super::{FaceKind, RootedMap};

/// What lies on the left of a half-edge while a map is under construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Slot {
    Triangle,
    Outer,
    Hole,
}

/// Mutable half-edge structure used by the census, the samplers and the
/// peeling process. Holes are faces still to be triangulated.
///
/// Half-edges are never reused; dead ones are dropped by [`MapBuilder::freeze`].
#[derive(Clone, Debug)]
pub(crate) struct MapBuilder {
    pub twin: Vec<usize>,
    pub next: Vec<usize>,
    pub prev: Vec<usize>,
    pub origin: Vec<usize>,
    pub alive: Vec<bool>,
    pub slot: Vec<Slot>,
    pub vert_out: Vec<usize>,
    pub root: usize,
}

impl MapBuilder {
    fn empty() -> Self {
        MapBuilder {
            twin: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            origin: Vec::new(),
            alive: Vec::new(),
            slot: Vec::new(),
            vert_out: Vec::new(),
            root: 0,
        }
    }

    /// A `k`-gon whose inside is a hole and whose outside is an external
    /// face; the root is the inner half-edge from vertex 0 to vertex 1.
    pub fn polygon(k: usize) -> Self {
        assert!(k >= 2);
        let mut b = Self::empty();
        for i in 0..k {
            b.push(i, Slot::Hole);
        }
        for i in 0..k {
            b.push((i + 1) % k, Slot::Outer);
        }
        for i in 0..k {
            b.twin[i] = k + i;
            b.twin[k + i] = i;
            b.next[i] = (i + 1) % k;
            b.prev[(i + 1) % k] = i;
            let o = k + i;
            let o_next = k + (i + k - 1) % k;
            b.next[o] = o_next;
            b.prev[o_next] = o;
        }
        b.vert_out = (0..k).collect();
        b
    }

    /// The root triangle with its outside left as a hole.
    pub fn triangle_with_hole() -> Self {
        let mut b = Self::polygon(3);
        for h in 0..6 {
            b.slot[h] = if h < 3 { Slot::Triangle } else { Slot::Hole };
        }
        b
    }

    pub fn from_map(map: &RootedMap) -> Self {
        let n = map.half_edge_count();
        let mut b = Self::empty();
        for h in 0..n {
            let slot = match map.kind(h) {
                FaceKind::Internal => Slot::Triangle,
                FaceKind::External => Slot::Outer,
                FaceKind::Unrevealed => Slot::Hole,
            };
            b.push(map.origin(h), slot);
            b.twin[h] = map.twin(h);
            b.next[h] = map.next(h);
            b.prev[h] = map.prev(h);
        }
        b.vert_out = (0..map.vertex_count()).map(|v| map.vertex_half_edge(v)).collect();
        b.root = map.root();
        b
    }

    fn push(&mut self, origin: usize, slot: Slot) -> usize {
        let id = self.twin.len();
        self.twin.push(usize::MAX);
        self.next.push(usize::MAX);
        self.prev.push(usize::MAX);
        self.origin.push(origin);
        self.alive.push(true);
        self.slot.push(slot);
        id
    }

    fn link(&mut self, a: usize, b: usize) {
        self.next[a] = b;
        self.prev[b] = a;
    }

    fn pair(&mut self, a: usize, b: usize) {
        self.twin[a] = b;
        self.twin[b] = a;
    }

    pub fn vertex_count(&self) -> usize {
        self.vert_out.len()
    }

    pub fn head(&self, h: usize) -> usize {
        self.origin[self.twin[h]]
    }

    /// Counterclockwise successor among the half-edges leaving `origin(h)`.
    pub fn rotate(&self, h: usize) -> usize {
        self.twin[self.prev[h]]
    }

    pub fn walk_next(&self, mut h: usize, k: usize) -> usize {
        for _ in 0..k {
            h = self.next[h];
        }
        h
    }

    pub fn walk_prev(&self, mut h: usize, k: usize) -> usize {
        for _ in 0..k {
            h = self.prev[h];
        }
        h
    }

    pub fn cycle_len(&self, h: usize) -> usize {
        let mut n = 1;
        let mut g = self.next[h];
        while g != h {
            n += 1;
            g = self.next[g];
        }
        n
    }

    /// Fills the hole corner at `h = u -> v` with a triangle whose third
    /// vertex is new. Returns `(w, u -> w, w -> v)`, the last two being on the
    /// hole.
    pub fn grow(&mut self, h: usize) -> (usize, usize, usize) {
        debug_assert_eq!(self.slot[h], Slot::Hole);
        let u = self.origin[h];
        let v = self.head(h);
        let w = self.vert_out.len();
        let (hp, hn) = (self.prev[h], self.next[h]);
        let a = self.push(v, Slot::Triangle);
        let b = self.push(w, Slot::Triangle);
        let a2 = self.push(w, Slot::Hole);
        let b2 = self.push(u, Slot::Hole);
        self.vert_out.push(b);
        self.pair(a, a2);
        self.pair(b, b2);
        self.slot[h] = Slot::Triangle;
        self.link(h, a);
        self.link(a, b);
        self.link(b, h);
        if hp == h {
            unreachable!("hole of length one");
        }
        self.link(hp, b2);
        self.link(b2, a2);
        self.link(a2, hn);
        (w, b2, a2)
    }

    /// Fills the hole corner at `h = u -> v` with the triangle `u, v, x`
    /// where `x = origin(g)` is on the same hole. Returns `(x -> v, u -> x)`:
    /// the first lies on the hole through `next(h) .. prev(g)`, the second on
    /// the hole through `g .. prev(h)`.
    pub fn close_on(&mut self, h: usize, g: usize) -> (usize, usize) {
        debug_assert_eq!(self.slot[h], Slot::Hole);
        debug_assert!(g != h && g != self.next[h]);
        let u = self.origin[h];
        let v = self.head(h);
        let x = self.origin[g];
        let (hn, hp, gp) = (self.next[h], self.prev[h], self.prev[g]);
        let a = self.push(v, Slot::Triangle);
        let b = self.push(x, Slot::Triangle);
        let a2 = self.push(x, Slot::Hole);
        let b2 = self.push(u, Slot::Hole);
        self.pair(a, a2);
        self.pair(b, b2);
        self.slot[h] = Slot::Triangle;
        self.link(h, a);
        self.link(a, b);
        self.link(b, h);
        self.link(gp, a2);
        self.link(a2, hn);
        self.link(hp, b2);
        self.link(b2, g);
        (a2, b2)
    }

    /// Closes a hole of length two by identifying its two sides.
    pub fn glue_digon(&mut self, h: usize) {
        let n = self.next[h];
        debug_assert_eq!(self.next[n], h);
        let (th, tn) = (self.twin[h], self.twin[n]);
        self.pair(th, tn);
        self.alive[h] = false;
        self.alive[n] = false;
        let (u, v) = (self.origin[h], self.origin[n]);
        if self.vert_out[u] == h || self.vert_out[u] == n {
            self.vert_out[u] = tn;
        }
        if self.vert_out[v] == h || self.vert_out[v] == n {
            self.vert_out[v] = th;
        }
        if self.root == h || self.root == n {
            self.root = if self.root == h { tn } else { th };
        }
    }

    /// Cuts the edge of `h` open into a hole of length two. Returns the hole
    /// half-edge paired with `h`.
    pub fn open_edge(&mut self, h: usize) -> usize {
        let t = self.twin[h];
        let u = self.origin[h];
        let v = self.origin[t];
        let d1 = self.push(v, Slot::Hole);
        let d2 = self.push(u, Slot::Hole);
        self.pair(h, d1);
        self.pair(t, d2);
        self.link(d1, d2);
        self.link(d2, d1);
        d1
    }

    /// Outgoing half-edges of vertex `v`.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.vert_out[v];
        let mut cur = Some(start);
        std::iter::from_fn(move || {
            let g = cur?;
            let n = self.rotate(g);
            cur = if n == start { None } else { Some(n) };
            Some(g)
        })
    }

    /// Compacts the structure into a [`RootedMap`]; remaining holes get
    /// `hole_kind`.
    pub fn freeze(&self, hole_kind: FaceKind) -> RootedMap {
        let mut id = vec![usize::MAX; self.twin.len()];
        let mut count = 0;
        for h in 0..self.twin.len() {
            if self.alive[h] {
                id[h] = count;
                count += 1;
            }
        }
        if count == 0 {
            return RootedMap::single_vertex();
        }
        let mut twin = Vec::with_capacity(count);
        let mut next = Vec::with_capacity(count);
        let mut kind = Vec::with_capacity(count);
        for h in 0..self.twin.len() {
            if !self.alive[h] {
                continue;
            }
            twin.push(id[self.twin[h]]);
            next.push(id[self.next[h]]);
            kind.push(match self.slot[h] {
                Slot::Triangle => FaceKind::Internal,
                Slot::Outer => FaceKind::External,
                Slot::Hole => hole_kind,
            });
        }
        RootedMap::from_parts(twin, next, kind, id[self.root]).expect("builder keeps invariants")
    }
}

impl Topology for MapBuilder {
    fn half_edges(&self) -> usize {
        self.twin.len()
    }
    fn vertices(&self) -> usize {
        self.vert_out.len()
    }
    fn root_edge(&self) -> usize {
        self.root
    }
    fn twin_of(&self, h: usize) -> usize {
        self.twin[h]
    }
    fn next_of(&self, h: usize) -> usize {
        self.next[h]
    }
    fn origin_of(&self, h: usize) -> usize {
        self.origin[h]
    }
    fn is_unrevealed(&self, h: usize) -> bool {
        self.slot[h] == Slot::Hole
    }
    fn rotate_of(&self, h: usize) -> usize {
        self.rotate(h)
    }
}
