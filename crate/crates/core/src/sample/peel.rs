use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use serde::Serialize;

use super::free::fill_free;
use super::laws::{peel_exact, peel_probability, peel_variant, with_peel_cdf, PeelVariant, Side};
use super::ExactRng;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::map::{ball, cell_of, FaceKind, MapBuilder, RootedMap, Slot};

const UNSET: usize = usize::MAX;

/// Which frontier edge is peeled next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
pub enum Policy {
    /// An edge leaving a frontier vertex of least revealed distance.
    #[default]
    MinDistance,
    /// The frontier edge that has been on the frontier the longest.
    Fifo,
}

/// One line of a peeling event log.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRecord {
    pub step: usize,
    pub m_before: usize,
    pub m_after: usize,
    pub event: PeelVariant,
    #[serde(with = "crate::exact::rational_serde")]
    pub probability: Rational,
}

/// Revealed part of a type II UIPT together with its single unrevealed face,
/// whose boundary (the frontier) has length `m + 2`.
///
/// Swallowed regions are filled with independent free triangulations as soon
/// as they are closed, so the revealed map is always complete away from the
/// unrevealed face. Revealed distances from the root vertex are kept up to
/// date for every vertex.
#[derive(Clone, Debug)]
pub struct PeelState {
    b: MapBuilder,
    m: usize,
    steps: usize,
    dist: Vec<usize>,
    on_frontier: Vec<bool>,
    hole_out: Vec<usize>,
    buckets: Vec<Vec<usize>>,
    lowest: usize,
    fifo: VecDeque<usize>,
    trace: Option<Vec<TraceRecord>>,
}

impl Default for PeelState {
    fn default() -> Self {
        Self::new()
    }
}

impl PeelState {
    /// The root triangle alone; the rest of the plane is unrevealed.
    pub fn new() -> Self {
        let b = MapBuilder::triangle_with_hole();
        let mut s = PeelState {
            b,
            m: 1,
            steps: 0,
            dist: vec![0, 1, 1],
            on_frontier: vec![true; 3],
            hole_out: vec![5, 3, 4],
            buckets: Vec::new(),
            lowest: 0,
            fifo: VecDeque::from([3, 4, 5]),
            trace: None,
        };
        for v in 0..3 {
            s.enqueue(v);
        }
        s
    }

    /// Records every subsequent step in an event log.
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn trace(&self) -> &[TraceRecord] {
        self.trace.as_deref().unwrap_or(&[])
    }

    /// Boundary index of the unrevealed face.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn vertex_count(&self) -> usize {
        self.b.vertex_count()
    }

    /// Revealed distance from the root vertex.
    pub fn distance(&self, v: usize) -> usize {
        self.dist[v]
    }

    /// The revealed map, with the frontier bounding an unrevealed face.
    pub fn revealed(&self) -> RootedMap {
        self.b.freeze(FaceKind::Unrevealed)
    }

    /// Vertices of the frontier in boundary order.
    pub fn frontier(&self) -> Vec<usize> {
        let start = self.hole_out[self.b.origin[self.b.root]];
        let start = if self.on_frontier[self.b.origin[self.b.root]] { start } else { self.any_frontier_edge() };
        let mut out = vec![self.b.origin[start]];
        let mut h = self.b.next[start];
        while h != start {
            out.push(self.b.origin[h]);
            h = self.b.next[h];
        }
        out
    }

    fn any_frontier_edge(&self) -> usize {
        let v = (0..self.on_frontier.len()).find(|&v| self.on_frontier[v]).expect("frontier is never empty");
        self.hole_out[v]
    }

    /// Least revealed distance over frontier vertices.
    pub fn min_frontier_distance(&mut self) -> usize {
        let v = self.lowest_vertex();
        self.dist[v]
    }

    fn enqueue(&mut self, v: usize) {
        let d = self.dist[v];
        if self.buckets.len() <= d {
            self.buckets.resize_with(d + 1, Vec::new);
        }
        self.buckets[d].push(v);
    }

    fn lowest_vertex(&mut self) -> usize {
        loop {
            let d = self.lowest;
            while let Some(&v) = self.buckets[d].last() {
                if self.on_frontier[v] && self.dist[v] == d {
                    return v;
                }
                self.buckets[d].pop();
            }
            self.lowest += 1;
        }
    }

    fn select(&mut self, policy: Policy) -> usize {
        match policy {
            Policy::MinDistance => {
                let v = self.lowest_vertex();
                self.hole_out[v]
            }
            Policy::Fifo => loop {
                let h = *self.fifo.front().expect("frontier is never empty");
                if self.b.alive[h] && self.b.slot[h] == Slot::Hole {
                    return h;
                }
                self.fifo.pop_front();
            },
        }
    }

    /// Reveals the triangle on the frontier edge chosen by `policy`.
    pub fn peel(&mut self, policy: Policy, rng: &mut ExactRng) -> PeelVariant {
        let h = self.select(policy);
        let m = self.m;
        let i = with_peel_cdf(m, |cdf| rng.categorical(cdf, || peel_exact(m)));
        let event = peel_variant(m, i);
        self.apply(h, event, rng);
        if let Some(t) = self.trace.as_mut() {
            t.push(TraceRecord {
                step: self.steps,
                m_before: m,
                m_after: self.m,
                event,
                probability: peel_probability(m, event),
            });
        }
        event
    }

    fn apply(&mut self, h: usize, event: PeelVariant, rng: &mut ExactRng) {
        self.steps += 1;
        let u = self.b.origin[h];
        let v = self.b.head(h);
        match event {
            PeelVariant::Grow => {
                let (w, e_uw, e_wv) = self.b.grow(h);
                self.dist.push(self.dist[u].min(self.dist[v]) + 1);
                self.on_frontier.push(true);
                self.hole_out.push(e_wv);
                self.hole_out[u] = e_uw;
                self.enqueue(w);
                self.fifo.push_back(e_uw);
                self.fifo.push_back(e_wv);
                self.m += 1;
            }
            PeelVariant::Swallow { side, k } => {
                let m = self.m;
                let g = match side {
                    Side::Right if k + 1 <= m + 1 - k => self.b.walk_next(h, k + 1),
                    Side::Right => self.b.walk_prev(h, m + 1 - k),
                    Side::Left if k <= m + 2 - k => self.b.walk_prev(h, k),
                    Side::Left => self.b.walk_next(h, m + 2 - k),
                };
                let x = self.b.origin[g];
                let (e_xv, e_ux) = self.b.close_on(h, g);
                let (pocket, kept) = match side {
                    Side::Right => (e_xv, e_ux),
                    Side::Left => (e_ux, e_xv),
                };
                self.hole_out[self.b.origin[kept]] = kept;
                self.fifo.push_back(kept);
                let mut seeds = Vec::with_capacity(k + 3);
                seeds.extend([u, v]);
                let mut e = pocket;
                loop {
                    let y = self.b.origin[e];
                    seeds.push(y);
                    if y != x {
                        self.on_frontier[y] = false;
                    }
                    e = self.b.next[e];
                    if e == pocket {
                        break;
                    }
                }
                fill_free(&mut self.b, pocket, rng);
                let n = self.b.vertex_count();
                self.dist.resize(n, UNSET);
                self.on_frontier.resize(n, false);
                self.hole_out.resize(n, UNSET);
                self.relax(&seeds);
                self.m = m - k;
            }
        }
    }

    /// Propagates distance decreases from `seeds` through the revealed map.
    fn relax(&mut self, seeds: &[usize]) {
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
            seeds.iter().map(|&s| Reverse((self.dist[s], s))).collect();
        while let Some(Reverse((d, v))) = heap.pop() {
            if d != self.dist[v] {
                continue;
            }
            let start = self.b.vert_out[v];
            let mut e = start;
            loop {
                let y = self.b.head(e);
                if d + 1 < self.dist[y] {
                    self.dist[y] = d + 1;
                    heap.push(Reverse((d + 1, y)));
                    if self.on_frontier[y] {
                        self.enqueue(y);
                    }
                }
                e = self.b.rotate(e);
                if e == start {
                    break;
                }
            }
        }
    }

    /// Whether the root's 3-connected component still contains the
    /// unrevealed face, and how many vertices it has.
    pub(crate) fn root_component(&self) -> (bool, usize) {
        let (_, open, vertices) = cell_of(&self.b);
        (open, vertices)
    }

    /// True once every triangle at the root vertex has been revealed.
    pub fn root_is_internal(&self) -> bool {
        !self.on_frontier[self.b.origin[self.b.root]]
    }

    /// Number of edge ends at the root vertex in the revealed map.
    pub fn root_degree(&self) -> usize {
        self.degree(self.b.origin[self.b.root])
    }

    /// Number of edge ends at `v` in the revealed map.
    pub fn degree(&self, v: usize) -> usize {
        self.b.out_edges(v).count()
    }
}

/// One peeling step on an owned state.
pub fn peel_once(mut state: PeelState, policy: Policy, rng: &mut ExactRng) -> PeelState {
    state.peel(policy, rng);
    state
}

/// Peels until every frontier vertex is at revealed distance at least
/// `r + 2`, or fails after `budget` steps.
pub fn peel_until_ball(state: &mut PeelState, r: usize, policy: Policy, budget: usize, rng: &mut ExactRng) -> Result<()> {
    while state.min_frontier_distance() < r + 2 {
        if state.steps() >= budget {
            return Err(Error::BudgetExhausted { budget });
        }
        state.peel(policy, rng);
    }
    Ok(())
}

/// Ball of radius `r` around the root vertex of a type II UIPT.
pub fn uipt_ball(r: usize, policy: Policy, budget: usize, rng: &mut ExactRng) -> Result<RootedMap> {
    if r == 0 {
        return Ok(RootedMap::single_vertex());
    }
    let mut state = PeelState::new();
    peel_until_ball(&mut state, r, policy, budget, rng)?;
    ball(&state.revealed(), r)
}

/// Edge degree of the root vertex of a type II UIPT.
pub fn uipt_root_degree(policy: Policy, budget: usize, rng: &mut ExactRng) -> Result<usize> {
    let mut state = PeelState::new();
    while !state.root_is_internal() {
        if state.steps() >= budget {
            return Err(Error::BudgetExhausted { budget });
        }
        state.peel(policy, rng);
    }
    Ok(state.root_degree())
}
