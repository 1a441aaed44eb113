//! Combinatorial link diagrams: PD-code and braid-word front ends, component
//! tracing, orientations, writhe, rotation number, mirrors, and
//! relabeling-invariant canonical codes.
//!
//! A crossing stores its four edge-ends `[s0, s1, s2, s3]` in counterclockwise
//! planar order with the under-strand on the `(s0, s2)` diagonal, matching the
//! PD convention that slots are read counterclockwise starting from the
//! under-strand. A positive crossing is one whose incoming legs are
//! `{s0, s1}` or `{s2, s3}` once orientations are fixed; the braid generator
//! `sigma_i` is constructed to be positive under the upward braid orientation.

use crate::planar::{self, FaceStructure};
use crate::Error;
use std::collections::BTreeMap;

/// One crossing: edge ids at the four slots, counterclockwise, under-strand on
/// the `(0, 2)` diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub slots: [u32; 4],
}

impl Crossing {
    /// Normalizes the stored rotation so that the two equivalent encodings
    /// `X[a,b,c,d]` and `X[c,d,a,b]` compare equal.
    pub fn new(slots: [u32; 4]) -> Self {
        let rotated = [slots[2], slots[3], slots[0], slots[1]];
        if rotated < slots {
            Self { slots: rotated }
        } else {
            Self { slots }
        }
    }
}

/// An unoriented closed link diagram: crossings over a dense edge set plus a
/// count of crossing-free circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    edge_count: usize,
    free_loops: usize,
    /// For each edge, its two `(crossing, slot)` ends in scan order.
    ends: Vec<[(usize, u8); 2]>,
}

/// An end of an edge, identified by crossing index and slot.
pub type EdgeEnd = (usize, u8);

impl LinkDiagram {
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, Error> {
        let mut occurrences: BTreeMap<u32, Vec<EdgeEnd>> = BTreeMap::new();
        for (ci, x) in crossings.iter().enumerate() {
            for (si, &e) in x.slots.iter().enumerate() {
                occurrences.entry(e).or_default().push((ci, si as u8));
            }
        }
        let edge_count = occurrences.len();
        let mut ends = vec![[(0usize, 0u8); 2]; edge_count];
        for (i, (&label, occ)) in occurrences.iter().enumerate() {
            if occ.len() != 2 {
                return Err(Error::NotClosed(label as u64, occ.len()));
            }
            if label as usize != i {
                return Err(Error::Parse(format!(
                    "edge ids must be dense, found {label}"
                )));
            }
            ends[i] = [occ[0], occ[1]];
        }
        Ok(Self {
            crossings,
            edge_count,
            free_loops,
            ends,
        })
    }

    pub fn empty() -> Self {
        Self::new(Vec::new(), 0).unwrap()
    }

    pub fn unknot() -> Self {
        Self::new(Vec::new(), 1).unwrap()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn with_free_loops(&self, free_loops: usize) -> Self {
        let mut d = self.clone();
        d.free_loops = free_loops;
        d
    }

    pub fn edge_ends(&self, e: u32) -> [EdgeEnd; 2] {
        self.ends[e as usize]
    }

    /// The edge occupying slot `s` of crossing `c`.
    pub fn edge_at(&self, c: usize, s: u8) -> u32 {
        self.crossings[c].slots[s as usize]
    }

    /// Which end of its edge the position `(c, s)` is (0 or 1).
    pub fn end_index(&self, c: usize, s: u8) -> usize {
        let e = self.edge_at(c, s) as usize;
        if self.ends[e][0] == (c, s) {
            0
        } else {
            debug_assert_eq!(self.ends[e][1], (c, s));
            1
        }
    }

    /// Partition of edges into link components; returns per-edge component ids
    /// and the number of edge-components (free loops not included).
    pub fn edge_components(&self) -> (Vec<usize>, usize) {
        let mut uf = planar::UnionFind::new(self.edge_count);
        for x in &self.crossings {
            uf.union(x.slots[0] as usize, x.slots[2] as usize);
            uf.union(x.slots[1] as usize, x.slots[3] as usize);
        }
        let mut ids = vec![usize::MAX; self.edge_count];
        let mut next = 0usize;
        for e in 0..self.edge_count {
            let r = uf.find(e);
            if ids[r] == usize::MAX {
                ids[r] = next;
                next += 1;
            }
            ids[e] = ids[r];
        }
        (ids, next)
    }

    /// Total number of link components, free loops included.
    pub fn component_count(&self) -> usize {
        self.edge_components().1 + self.free_loops
    }

    /// Swap over and under strands at every crossing.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|x| Crossing::new([x.slots[1], x.slots[2], x.slots[3], x.slots[0]]))
            .collect();
        Self::new(crossings, self.free_loops).expect("mirror preserves closedness")
    }

    /// All `2^components` coherent orientations, in a deterministic order.
    pub fn enumerate_orientations(&self) -> Vec<OrientedLinkDiagram> {
        let k = self.component_count();
        assert!(k < usize::BITS as usize, "too many components");
        (0..1usize << k)
            .map(|mask| self.orient_with(mask))
            .collect()
    }

    /// A single canonical orientation (all component bits zero).
    pub fn orient(&self) -> OrientedLinkDiagram {
        self.orient_with(0)
    }

    fn orient_with(&self, mask: usize) -> OrientedLinkDiagram {
        let (comp_of, n_comp) = self.edge_components();
        // Per component, orient the traversal starting from its lowest edge;
        // the walk visits every edge of the component, so a set tail means
        // the component is done.
        let mut tail = vec![u8::MAX; self.edge_count];
        for e0 in 0..self.edge_count {
            if tail[e0] != u8::MAX {
                continue;
            }
            let flip = mask >> comp_of[e0] & 1 == 1;
            // Direct e0 from end 0 toward end 1 (or flipped), then propagate.
            let mut e = e0;
            let mut t = if flip { 1u8 } else { 0u8 };
            loop {
                tail[e] = t;
                // Head end of e, then continue through the crossing.
                let (c, s) = self.ends[e][1 - t as usize];
                let s_out = (s + 2) % 4;
                let f = self.edge_at(c, s_out) as usize;
                let idx = self.end_index(c, s_out);
                if f == e0 && idx as u8 == tail[e0] {
                    break;
                }
                e = f;
                t = idx as u8;
            }
        }
        let loop_senses = (0..self.free_loops)
            .map(|i| {
                if mask >> (n_comp + i) & 1 == 1 {
                    -1i8
                } else {
                    1
                }
            })
            .collect();
        let oriented = OrientedLinkDiagram {
            diagram: self.clone(),
            tail,
            loop_senses,
        };
        debug_assert!(oriented.is_coherent());
        oriented
    }

    /// Relabeling-invariant code: minimal Gauss-style token sequence over all
    /// basepoints, traversal directions, and component orders, with the
    /// free-loop count appended.
    pub fn canonical_code(&self) -> String {
        canonical_code_impl(self, None)
    }
}

/// A link diagram together with an orientation of every edge and every free
/// loop.
#[derive(Clone, Debug)]
pub struct OrientedLinkDiagram {
    pub diagram: LinkDiagram,
    /// Per edge: which stored end is the tail (edge directed tail -> head).
    tail: Vec<u8>,
    /// Per free loop: +1 counterclockwise, -1 clockwise.
    loop_senses: Vec<i8>,
}

impl OrientedLinkDiagram {
    pub fn from_parts(
        diagram: LinkDiagram,
        tail: Vec<u8>,
        loop_senses: Vec<i8>,
    ) -> Self {
        let d = Self {
            diagram,
            tail,
            loop_senses,
        };
        debug_assert!(d.is_coherent());
        d
    }

    pub fn loop_senses(&self) -> &[i8] {
        &self.loop_senses
    }

    /// True when the edge at `(c, s)` points into the crossing.
    pub fn is_incoming(&self, c: usize, s: u8) -> bool {
        let e = self.diagram.edge_at(c, s) as usize;
        let head = 1 - self.tail[e] as usize;
        self.diagram.ends[e][head] == (c, s)
    }

    /// Edge direction as the tail end index.
    pub fn edge_tail(&self, e: u32) -> u8 {
        self.tail[e as usize]
    }

    /// Every strand has one incoming and one outgoing end at each crossing.
    pub fn is_coherent(&self) -> bool {
        (0..self.diagram.crossing_count()).all(|c| {
            self.is_incoming(c, 0) != self.is_incoming(c, 2)
                && self.is_incoming(c, 1) != self.is_incoming(c, 3)
        })
    }

    /// Crossing sign: `+1` when the incoming legs are `{s0, s1}` or
    /// `{s2, s3}`.
    pub fn crossing_sign(&self, c: usize) -> i64 {
        let under_in_0 = self.is_incoming(c, 0);
        let over_in_1 = self.is_incoming(c, 1);
        if under_in_0 == over_in_1 {
            1
        } else {
            -1
        }
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        (0..self.diagram.crossing_count())
            .map(|c| self.crossing_sign(c))
            .sum()
    }

    /// Reverse the orientation of every component.
    pub fn reverse_all(&self) -> Self {
        Self {
            diagram: self.diagram.clone(),
            tail: self.tail.iter().map(|&t| 1 - t).collect(),
            loop_senses: self.loop_senses.iter().map(|&s| -s).collect(),
        }
    }

    /// Mirror with the same orientations carried over.
    pub fn mirror(&self) -> Self {
        let mirrored = self.diagram.mirror();
        // Each crossing's slots rotate by one, plus the extra rotation by two
        // when `Crossing::new` renormalized; recover the per-crossing shift.
        let shift: Vec<u8> = self
            .diagram
            .crossings
            .iter()
            .map(|x| {
                let s = x.slots;
                let cand = [s[1], s[2], s[3], s[0]];
                let rot2 = [cand[2], cand[3], cand[0], cand[1]];
                if rot2 < cand {
                    1
                } else {
                    3
                }
            })
            .collect();
        let tail = (0..mirrored.edge_count())
            .map(|e| {
                let (c, s) = self.diagram.ends[e][self.tail[e] as usize];
                mirrored.end_index(c, (s + shift[c]) % 4) as u8
            })
            .collect();
        Self::from_parts(mirrored, tail, self.loop_senses.clone())
    }

    /// The Whitney rotation number: signed count of Seifert circles of the
    /// oriented smoothing, plus free-loop senses.
    pub fn rotation_number(&self) -> i64 {
        let faces = FaceStructure::build(&self.diagram);
        planar::rotation_of_seifert_state(&self.diagram, &faces, self)
    }

    /// Canonical code respecting the orientation (memo key for the oriented
    /// skein recursion).
    pub fn canonical_code(&self) -> String {
        canonical_code_impl(&self.diagram, Some(self))
    }
}

/// Parse the PD text format: whitespace-separated `X[a,b,c,d]` tokens with
/// positive integer edge labels, plus `O` tokens for crossing-free circles.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, Error> {
    let mut raw: Vec<[u64; 4]> = Vec::new();
    let mut free_loops = 0usize;
    for token in text.split_whitespace() {
        if token == "O" {
            free_loops += 1;
            continue;
        }
        let inner = token
            .strip_prefix("X[")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("malformed PD token '{token}'")))?;
        let labels: Vec<u64> = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad edge label in '{token}'")))
            })
            .collect::<Result<_, _>>()?;
        if labels.len() != 4 || labels.contains(&0) {
            return Err(Error::Parse(format!(
                "PD token '{token}' needs four positive labels"
            )));
        }
        raw.push([labels[0], labels[1], labels[2], labels[3]]);
    }
    // Dense ids by first appearance, preserving closedness diagnostics on the
    // original labels.
    let mut dense: BTreeMap<u64, u32> = BTreeMap::new();
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for x in &raw {
        for &l in x {
            *counts.entry(l).or_insert(0) += 1;
        }
    }
    if let Some((&l, &n)) = counts.iter().find(|(_, &n)| n != 2) {
        return Err(Error::NotClosed(l, n));
    }
    let mut next = 0u32;
    let crossings = raw
        .iter()
        .map(|x| {
            let slots = x.map(|l| {
                *dense.entry(l).or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                })
            });
            Crossing::new(slots)
        })
        .collect();
    LinkDiagram::new(crossings, free_loops)
}

/// Parse a batch file: one PD diagram per non-empty, non-comment line.
pub fn parse_pd_batch(text: &str) -> Result<Vec<LinkDiagram>, Error> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_pd)
        .collect()
}

/// Closure of a braid word. Generator `i > 0` is the positive crossing between
/// strands `i` and `i+1`; negative indices are inverses.
pub fn from_braid_word(word: &[i64], strands: usize) -> Result<LinkDiagram, Error> {
    if strands == 0 {
        return Err(Error::Parse("braid needs at least one strand".into()));
    }
    for &g in word {
        if g == 0 || g.unsigned_abs() as usize >= strands {
            return Err(Error::BraidIndex(g, strands));
        }
    }
    // Provisional edge ids per strand position, then unify across the closure.
    let mut next = 0u32;
    let mut fresh = || {
        let id = next;
        next += 1;
        id
    };
    let initial: Vec<u32> = (0..strands).map(|_| fresh()).collect();
    let mut current = initial.clone();
    let mut crossings_raw: Vec<[u32; 4]> = Vec::new();
    for &g in word {
        let i = (g.unsigned_abs() - 1) as usize;
        let (u, v) = (current[i], current[i + 1]);
        let x = fresh(); // outgoing at position i
        let y = fresh(); // outgoing at position i + 1
        if g > 0 {
            // Under-strand bottom-left to top-right.
            crossings_raw.push([u, v, y, x]);
        } else {
            crossings_raw.push([v, y, x, u]);
        }
        current[i] = x;
        current[i + 1] = y;
    }
    // Closure: identify each strand's final edge with its initial edge.
    let mut uf = planar::UnionFind::new(next as usize);
    for p in 0..strands {
        uf.union(initial[p] as usize, current[p] as usize);
    }
    let mut used = vec![false; next as usize];
    for x in &crossings_raw {
        for &e in x {
            used[uf.find(e as usize)] = true;
        }
    }
    let mut dense: Vec<Option<u32>> = vec![None; next as usize];
    let mut id = 0u32;
    let crossings = crossings_raw
        .iter()
        .map(|x| {
            Crossing::new(x.map(|e| {
                let r = uf.find(e as usize);
                *dense[r].get_or_insert_with(|| {
                    let v = id;
                    id += 1;
                    v
                })
            }))
        })
        .collect();
    // Strand positions whose class never meets a crossing close into loops.
    let mut loop_classes: Vec<usize> = (0..strands)
        .map(|p| uf.find(initial[p] as usize))
        .filter(|&r| !used[r])
        .collect();
    loop_classes.sort_unstable();
    loop_classes.dedup();
    LinkDiagram::new(crossings, loop_classes.len())
}

/// Parse the braid text format `BR strands : i1 i2 -i1 ...`.
pub fn parse_braid(text: &str) -> Result<LinkDiagram, Error> {
    let rest = text
        .trim()
        .strip_prefix("BR")
        .ok_or_else(|| Error::Parse("braid spec must start with 'BR'".into()))?;
    let (strands, word) = rest
        .split_once(':')
        .ok_or_else(|| Error::Parse("braid spec needs ':' after strand count".into()))?;
    let strands: usize = strands
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad strand count '{}'", strands.trim())))?;
    let word: Vec<i64> = word
        .split_whitespace()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad braid letter '{t}'")))
        })
        .collect::<Result<_, _>>()?;
    from_braid_word(&word, strands)
}

// --- diagram surgery ----------------------------------------------------------

/// Replacement plan for [`rewire`]: keep a crossing or replace its cell by
/// non-crossing arcs, with uncovered legs (and their edges) erased.
pub struct RewireSpec {
    /// Per crossing: `None` keeps it, `Some(pairs)` substitutes undirected
    /// arcs between the listed slots.
    pub cells: Vec<Option<Vec<(u8, u8)>>>,
    pub edge_live: Vec<bool>,
    /// Surviving crossing-free loops of the original diagram.
    pub live_loops: usize,
}

pub struct Rewired {
    pub diagram: LinkDiagram,
    /// Old crossing index to new index, for kept crossings.
    pub crossing_map: Vec<Option<usize>>,
    /// For each new edge, its two old ports `(old crossing, slot)`.
    pub ports: Vec<[EdgeEnd; 2]>,
}

/// Rebuild the diagram after replacing cells: chains of old edges and arcs
/// become single edges between kept crossings, closed chains become loops.
pub fn rewire(d: &LinkDiagram, spec: &RewireSpec) -> Rewired {
    let n = d.crossing_count();
    assert_eq!(spec.cells.len(), n);
    let mut partner = vec![[None::<u8>; 4]; n];
    for (c, cell) in spec.cells.iter().enumerate() {
        if let Some(pairs) = cell {
            for &(x, y) in pairs {
                partner[c][x as usize] = Some(y);
                partner[c][y as usize] = Some(x);
            }
        }
    }
    let keep = |c: usize| spec.cells[c].is_none();
    let mut crossing_map = vec![None; n];
    let mut next_crossing = 0usize;
    for (c, slot) in crossing_map.iter_mut().enumerate() {
        if keep(c) {
            *slot = Some(next_crossing);
            next_crossing += 1;
        }
    }

    let far_end = |e: u32, this: EdgeEnd| -> EdgeEnd {
        let [a, b] = d.edge_ends(e);
        if a == this {
            b
        } else {
            debug_assert_eq!(b, this);
            a
        }
    };

    let mut new_edge_at: BTreeMap<EdgeEnd, u32> = BTreeMap::new();
    let mut ports: Vec<[EdgeEnd; 2]> = Vec::new();
    let mut edge_seen = vec![false; d.edge_count()];
    for c in 0..n {
        if !keep(c) {
            continue;
        }
        for s in 0..4u8 {
            if new_edge_at.contains_key(&(c, s)) {
                continue;
            }
            let id = ports.len() as u32;
            let mut cur: EdgeEnd = (c, s);
            let end: EdgeEnd = loop {
                let e = d.edge_at(cur.0, cur.1);
                assert!(spec.edge_live[e as usize], "kept strand reaches erased edge");
                edge_seen[e as usize] = true;
                let (c2, s2) = far_end(e, cur);
                if keep(c2) {
                    break (c2, s2);
                }
                let t = partner[c2][s2 as usize].expect("kept strand reaches erased leg");
                cur = (c2, t);
            };
            new_edge_at.insert((c, s), id);
            new_edge_at.insert(end, id);
            ports.push([(c, s), end]);
        }
    }

    // Remaining live edges close up into crossing-free loops.
    let mut loops = spec.live_loops;
    for e0 in 0..d.edge_count() {
        if edge_seen[e0] || !spec.edge_live[e0] {
            continue;
        }
        loops += 1;
        let mut cur = d.edge_ends(e0 as u32)[0];
        loop {
            let e = d.edge_at(cur.0, cur.1);
            edge_seen[e as usize] = true;
            let (c2, s2) = far_end(e, cur);
            debug_assert!(!keep(c2));
            let t = partner[c2][s2 as usize].expect("live loop reaches erased leg");
            cur = (c2, t);
            if d.edge_at(cur.0, cur.1) as usize == e0 {
                break;
            }
        }
    }

    let crossings: Vec<Crossing> = (0..n)
        .filter(|&c| keep(c))
        .map(|c| Crossing {
            slots: [0, 1, 2, 3].map(|s| new_edge_at[&(c, s as u8)]),
        })
        .collect();
    let diagram = LinkDiagram::new(crossings, loops).expect("rewired diagram is closed");
    Rewired {
        diagram,
        crossing_map,
        ports,
    }
}

impl OrientedLinkDiagram {
    /// Same diagram with crossing `c` switched, orientations carried over.
    pub fn switch_crossing(&self, c: usize) -> Self {
        let mut crossings = self.diagram.crossings.clone();
        let s = crossings[c].slots;
        crossings[c] = Crossing {
            slots: [s[1], s[2], s[3], s[0]],
        };
        let diagram =
            LinkDiagram::new(crossings, self.diagram.free_loops).expect("switch keeps closedness");
        let tail = (0..diagram.edge_count())
            .map(|e| {
                let (tc, ts) = self.diagram.ends[e][self.tail[e] as usize];
                let mapped = if tc == c { (tc, (ts + 3) % 4) } else { (tc, ts) };
                diagram.end_index(mapped.0, mapped.1) as u8
            })
            .collect();
        Self::from_parts(diagram, tail, self.loop_senses.clone())
    }

    /// Oriented smoothing at crossing `c`: each incoming leg joins the
    /// adjacent outgoing leg.
    pub fn smooth_crossing(&self, c: usize) -> Self {
        let arcs = crate::planar::seifert_arcs_for_crossing(self, c);
        let mut cells = vec![None; self.diagram.crossing_count()];
        cells[c] = Some(arcs.iter().map(|&(x, y)| (x, y)).collect());
        let spec = RewireSpec {
            cells,
            edge_live: vec![true; self.diagram.edge_count()],
            live_loops: self.diagram.free_loops,
        };
        self.resolve(&spec)
    }

    /// Apply a rewiring plan, deriving the orientation of every new edge from
    /// the old one.
    pub fn resolve(&self, spec: &RewireSpec) -> Self {
        let rw = rewire(&self.diagram, spec);
        let tail = rw
            .ports
            .iter()
            .map(|&[a, b]| {
                let a_out = !self.is_incoming(a.0, a.1);
                let b_out = !self.is_incoming(b.0, b.1);
                assert!(a_out != b_out, "resolved edge needs one outgoing end");
                let (oc, os) = if a_out { a } else { b };
                let nc = rw.crossing_map[oc].unwrap();
                rw.diagram.end_index(nc, os) as u8
            })
            .collect();
        let mut loop_senses = self.loop_senses.clone();
        loop_senses.resize(rw.diagram.free_loops(), 1);
        OrientedLinkDiagram::from_parts(rw.diagram, tail, loop_senses)
    }
}

impl LinkDiagram {
    /// Same diagram with crossing `c` switched.
    pub fn switch_crossing(&self, c: usize) -> Self {
        let mut crossings = self.crossings.clone();
        let s = crossings[c].slots;
        crossings[c] = Crossing {
            slots: [s[1], s[2], s[3], s[0]],
        };
        LinkDiagram::new(crossings, self.free_loops).expect("switch keeps closedness")
    }

    /// Replace crossing `c` by the two arcs pairing `pairs` of its slots.
    pub fn smooth_crossing(&self, c: usize, pairs: [(u8, u8); 2]) -> Self {
        let mut cells = vec![None; self.crossing_count()];
        cells[c] = Some(pairs.to_vec());
        let spec = RewireSpec {
            cells,
            edge_live: vec![true; self.edge_count()],
            live_loops: self.free_loops,
        };
        rewire(self, &spec).diagram
    }
}

// --- canonical codes ---------------------------------------------------------

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Token {
    number: u32,
    under: bool,
    /// 0 first visit; 1 second visit entering at the ccw-next slot of the
    /// first entry; 2 at the cw-next slot.
    hand: u8,
}

/// Walk one full component from `(edge, head_end)` and emit its tokens,
/// extending the crossing numbering map.
fn walk_component(
    d: &LinkDiagram,
    start_edge: usize,
    start_head: usize,
    numbering: &mut [(u32, u8)], // per crossing: (number, first entry slot), u32::MAX unset
    next_number: &mut u32,
    visited_edges: &mut [bool],
) -> Vec<Token> {
    let mut tokens = Vec::new();
    let (mut e, mut head) = (start_edge, start_head);
    loop {
        visited_edges[e] = true;
        let (c, s) = d.ends[e][head];
        let (num, first_slot) = numbering[c];
        if num == u32::MAX {
            numbering[c] = (*next_number, s);
            tokens.push(Token {
                number: *next_number,
                under: s % 2 == 0,
                hand: 0,
            });
            *next_number += 1;
        } else {
            let hand = if (first_slot + 1) % 4 == s { 1 } else { 2 };
            debug_assert!(hand == 1 || (first_slot + 3) % 4 == s);
            tokens.push(Token {
                number: num,
                under: s % 2 == 0,
                hand,
            });
        }
        let s_out = (s + 2) % 4;
        let f = d.edge_at(c, s_out) as usize;
        let idx = d.end_index(c, s_out);
        if f == start_edge && 1 - idx == start_head {
            break;
        }
        e = f;
        head = 1 - idx;
    }
    tokens
}

fn render(tokens: &[Vec<Token>], free_loops: usize) -> String {
    let mut out = String::new();
    for comp in tokens {
        out.push('/');
        for t in comp {
            out.push_str(&t.number.to_string());
            out.push(if t.under { 'u' } else { 'o' });
            out.push(match t.hand {
                0 => '.',
                1 => '+',
                _ => '-',
            });
        }
    }
    out.push_str(&format!("/L{free_loops}"));
    out
}

fn canonical_code_impl(d: &LinkDiagram, oriented: Option<&OrientedLinkDiagram>) -> String {
    if d.crossing_count() == 0 {
        return render(&[], d.free_loops());
    }
    let (comp_of, n_comp) = d.edge_components();
    // Candidate starts per component: every (edge, direction); orientation
    // restricts the direction to the edge's own.
    let mut starts: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_comp];
    for e in 0..d.edge_count() {
        match oriented {
            Some(o) => starts[comp_of[e]].push((e, 1 - o.edge_tail(e as u32) as usize)),
            None => {
                starts[comp_of[e]].push((e, 0));
                starts[comp_of[e]].push((e, 1));
            }
        }
    }

    struct Search<'a> {
        d: &'a LinkDiagram,
        starts: &'a [Vec<(usize, usize)>],
        best: Option<Vec<Vec<Token>>>,
    }
    impl Search<'_> {
        fn go(
            &mut self,
            acc: &mut Vec<Vec<Token>>,
            used: &mut [bool],
            numbering: &mut [(u32, u8)],
            next_number: u32,
            visited_edges: &mut [bool],
        ) {
            if acc.len() == self.starts.len() {
                if self.best.as_ref().map(|b| &*acc < b).unwrap_or(true) {
                    self.best = Some(acc.clone());
                }
                return;
            }
            for comp in 0..self.starts.len() {
                if used[comp] {
                    continue;
                }
                for &(e, head) in &self.starts[comp] {
                    let mut numbering2 = numbering.to_vec();
                    let mut next2 = next_number;
                    let mut visited2 = visited_edges.to_vec();
                    let tokens = walk_component(
                        self.d,
                        e,
                        head,
                        &mut numbering2,
                        &mut next2,
                        &mut visited2,
                    );
                    acc.push(tokens);
                    let prune = match &self.best {
                        Some(b) => acc.as_slice() > &b[..acc.len().min(b.len())],
                        None => false,
                    };
                    if !prune {
                        used[comp] = true;
                        self.go(acc, used, &mut numbering2, next2, &mut visited2);
                        used[comp] = false;
                    }
                    acc.pop();
                }
            }
        }
    }

    let mut search = Search {
        d,
        starts: &starts,
        best: None,
    };
    let mut numbering = vec![(u32::MAX, 0u8); d.crossing_count()];
    search.go(
        &mut Vec::new(),
        &mut vec![false; n_comp],
        &mut numbering,
        0,
        &mut vec![false; d.edge_count()],
    );
    render(&search.best.expect("diagram has components"), d.free_loops())
}
