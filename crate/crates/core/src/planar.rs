//! Planar-map face calculus for rotation numbers.
//!
//! The diagram's universe is a 4-valent map: darts `4c + s` with the
//! counterclockwise rotation inherited from the PD slot order. Faces are the
//! orbits of `d -> sigma^{-1}(alpha(d))`, which walks each face keeping it on
//! the left of the traversal; the sector between slots `i` and `i+1` of a
//! crossing belongs to the face of dart `i`.
//!
//! A Seifert state replaces every crossing cell by non-crossing arcs (possibly
//! erasing strands), which only ever merges faces. The resulting arrangement
//! of disjoint circles has a tree of faces (faces as nodes, circles as edges);
//! rooting it at the outer face gives each circle its sense: `+1` exactly when
//! the face on its left is on the side away from the root. The rotation number
//! is the signed count of circles. Disconnected universes are placed side by
//! side by merging their outer faces; each per-component outer face is chosen
//! deterministically (largest boundary, then lowest dart), which matches the
//! natural drawing for braid closures.

use crate::diagram::{LinkDiagram, OrientedLinkDiagram};

/// Minimal union-find with path halving.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Faces of a diagram's universe, with the side-by-side placement of
/// disconnected pieces prestaged.
pub struct FaceStructure {
    alpha: Vec<usize>,
    face_of: Vec<usize>,
    n_faces: usize,
    /// Unions identifying every component's outer face with the global one.
    outer_unions: Vec<(usize, usize)>,
    /// Global outer face, `usize::MAX` for a crossingless universe.
    outer: usize,
}

impl FaceStructure {
    pub fn build(d: &LinkDiagram) -> Self {
        let n_darts = 4 * d.crossing_count();
        let mut alpha = vec![0usize; n_darts];
        for e in 0..d.edge_count() as u32 {
            let [(c1, s1), (c2, s2)] = d.edge_ends(e);
            alpha[4 * c1 + s1 as usize] = 4 * c2 + s2 as usize;
            alpha[4 * c2 + s2 as usize] = 4 * c1 + s1 as usize;
        }
        // Face orbits of next(d) = sigma^{-1}(alpha(d)).
        let mut face_of = vec![usize::MAX; n_darts];
        let mut face_sizes = Vec::new();
        for start in 0..n_darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = face_sizes.len();
            let mut size = 0usize;
            let mut dart = start;
            while face_of[dart] == usize::MAX {
                face_of[dart] = id;
                size += 1;
                let a = alpha[dart];
                dart = 4 * (a / 4) + (a % 4 + 3) % 4;
            }
            debug_assert_eq!(dart, start, "face walk must close up");
            face_sizes.push(size);
        }
        let n_faces = face_sizes.len();

        // Universe components and their deterministic outer faces.
        let mut comp = UnionFind::new(n_darts);
        for (dart, &a) in alpha.iter().enumerate() {
            comp.union(dart, a);
            comp.union(dart, 4 * (dart / 4) + (dart % 4 + 1) % 4);
        }
        let mut outer_of_comp: Vec<(usize, usize)> = Vec::new(); // (root dart, face)
        for (dart, &f) in face_of.iter().enumerate() {
            let root = comp.find(dart);
            match outer_of_comp.iter_mut().find(|(r, _)| *r == root) {
                None => outer_of_comp.push((root, f)),
                Some((_, best)) => {
                    if face_sizes[f] > face_sizes[*best] {
                        *best = f;
                    }
                }
            }
        }
        // Euler check per component: V - E + F = 2 on the sphere.
        #[cfg(debug_assertions)]
        {
            use std::collections::BTreeSet;
            let mut roots: BTreeSet<usize> = BTreeSet::new();
            for dart in 0..n_darts {
                roots.insert(comp.find(dart));
            }
            for &root in &roots {
                let darts: Vec<usize> =
                    (0..n_darts).filter(|&x| comp.find(x) == root).collect();
                let v = darts.len() / 4;
                let e = darts.len() / 2;
                let f = darts
                    .iter()
                    .map(|&x| face_of[x])
                    .collect::<BTreeSet<_>>()
                    .len();
                debug_assert_eq!(v + f, e + 2, "universe component must be planar");
            }
        }
        let outer = outer_of_comp.first().map(|&(_, f)| f).unwrap_or(usize::MAX);
        let outer_unions = outer_of_comp
            .iter()
            .map(|&(_, f)| (outer, f))
            .collect();
        Self {
            alpha,
            face_of,
            n_faces,
            outer_unions,
            outer,
        }
    }
}

/// A choice of non-crossing arcs in every crossing cell plus edge and loop
/// data: the fully smoothed picture whose circles carry the rotation number.
pub struct SeifertState {
    /// Per crossing: live directed arcs `(from_slot, to_slot)`; legs not
    /// covered by an arc are erased.
    pub arcs: Vec<Vec<(u8, u8)>>,
    /// Per edge: `Some(tail_end_index)` when live, `None` when erased.
    pub edge_dir: Vec<Option<u8>>,
    /// Senses of the surviving crossing-free loops of the original diagram.
    pub loop_senses: Vec<i8>,
}

/// Rotation number of a Seifert state: the signed count of its circles.
pub fn rotation_of_state(d: &LinkDiagram, faces: &FaceStructure, state: &SeifertState) -> i64 {
    debug_assert_eq!(state.arcs.len(), d.crossing_count());
    debug_assert_eq!(state.edge_dir.len(), d.edge_count());
    let mut uf = UnionFind::new(faces.n_faces.max(1));
    for &(a, b) in &faces.outer_unions {
        uf.union(a, b);
    }

    // Merge the faces joined inside each resolved cell. Sector i (between
    // slots i and i+1) belongs to the face of dart 4c + i; two sectors join
    // exactly when no live chord separates them.
    for (c, arcs) in state.arcs.iter().enumerate() {
        let chords: Vec<(u8, u8)> = arcs
            .iter()
            .map(|&(x, y)| (x.min(y), x.max(y)))
            .collect();
        for i in 0..4u8 {
            for j in i + 1..4 {
                let split = chords
                    .iter()
                    .any(|&(x, y)| ((x <= i) && (i < y)) != ((x <= j) && (j < y)));
                if !split {
                    uf.union(faces.face_of[4 * c + i as usize], faces.face_of[4 * c + j as usize]);
                }
            }
        }
    }

    // Trace the circles, recording the merged face on each side.
    let mut visited = vec![Vec::new(); d.crossing_count()];
    for (c, arcs) in state.arcs.iter().enumerate() {
        visited[c] = vec![false; arcs.len()];
    }
    let mut circles: Vec<(usize, usize)> = Vec::new(); // (left face, right face)
    for c0 in 0..d.crossing_count() {
        for a0 in 0..state.arcs[c0].len() {
            if visited[c0][a0] {
                continue;
            }
            let mut left = usize::MAX;
            let mut right = usize::MAX;
            let (mut c, mut a) = (c0, a0);
            loop {
                visited[c][a] = true;
                let (_, to) = state.arcs[c][a];
                let e = d.edge_at(c, to);
                debug_assert!(state.edge_dir[e as usize].is_some(), "live arc hit erased edge");
                let dart = 4 * c + to as usize;
                let l = uf.find(faces.face_of[dart]);
                let r = uf.find(faces.face_of[faces.alpha[dart]]);
                debug_assert!(left == usize::MAX || left == l, "inconsistent left face");
                debug_assert!(right == usize::MAX || right == r, "inconsistent right face");
                left = l;
                right = r;
                // Continue through the edge to the next cell arc.
                let far = faces.alpha[dart];
                let (c2, s2) = (far / 4, (far % 4) as u8);
                let a2 = state.arcs[c2]
                    .iter()
                    .position(|&(from, _)| from == s2)
                    .expect("arc continues at far end");
                (c, a) = (c2, a2);
                if (c, a) == (c0, a0) {
                    break;
                }
            }
            assert_ne!(left, right, "a circle must separate two faces");
            circles.push((left, right));
        }
    }

    // The faces and circles of a disjoint-circle arrangement form a tree;
    // root it at the outer face and read off each circle's sense.
    let mut rot: i64 = state.loop_senses.iter().map(|&s| s as i64).sum();
    if circles.is_empty() {
        return rot;
    }
    let root = uf.find(faces.outer);
    let mut adj: std::collections::BTreeMap<usize, Vec<(usize, usize)>> = Default::default();
    for (i, &(l, r)) in circles.iter().enumerate() {
        adj.entry(l).or_default().push((r, i));
        adj.entry(r).or_default().push((l, i));
    }
    let mut parent_side: Vec<Option<bool>> = vec![None; circles.len()]; // true: parent is right
    let mut seen = std::collections::BTreeSet::new();
    let mut queue = std::collections::VecDeque::from([root]);
    seen.insert(root);
    while let Some(f) = queue.pop_front() {
        for &(g, i) in adj.get(&f).into_iter().flatten() {
            if parent_side[i].is_some() {
                continue;
            }
            assert!(seen.insert(g), "face-circle incidence must be a tree");
            parent_side[i] = Some(circles[i].1 == f);
            queue.push_back(g);
        }
    }
    for side in parent_side {
        let toward_root_is_right = side.expect("every circle lies in the tree");
        rot += if toward_root_is_right { 1 } else { -1 };
    }
    rot
}

/// Rotation number of an oriented diagram: smooth every crossing along its
/// orientation and count the circles with signs.
pub fn rotation_of_seifert_state(
    d: &LinkDiagram,
    faces: &FaceStructure,
    oriented: &OrientedLinkDiagram,
) -> i64 {
    let arcs = (0..d.crossing_count())
        .map(|c| seifert_arcs_for_crossing(oriented, c))
        .collect();
    let state = SeifertState {
        arcs,
        edge_dir: (0..d.edge_count() as u32)
            .map(|e| Some(oriented.edge_tail(e)))
            .collect(),
        loop_senses: oriented.loop_senses().to_vec(),
    };
    rotation_of_state(d, faces, &state)
}

/// The two oriented-smoothing arcs at a retained crossing: each incoming leg
/// turns onto the adjacent outgoing leg.
pub fn seifert_arcs_for_crossing(oriented: &OrientedLinkDiagram, c: usize) -> Vec<(u8, u8)> {
    let under_in = if oriented.is_incoming(c, 0) { 0u8 } else { 2 };
    let over_in = if oriented.is_incoming(c, 1) { 1u8 } else { 3 };
    let x = if (under_in + 1) % 4 == over_in {
        under_in
    } else {
        debug_assert_eq!((over_in + 1) % 4, under_in);
        over_in
    };
    vec![(x, (x + 3) % 4), ((x + 1) % 4, (x + 2) % 4)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{from_braid_word, parse_pd};

    #[test]
    fn face_counts() {
        // Curl: 1 crossing, 2 edges, 3 faces.
        let curl = parse_pd("X[1,1,2,2]").unwrap();
        let f = FaceStructure::build(&curl);
        assert_eq!(f.n_faces, 3);
        // Trefoil: 3 crossings, 6 edges, 5 faces.
        let trefoil = from_braid_word(&[1, 1, 1], 2).unwrap();
        assert_eq!(FaceStructure::build(&trefoil).n_faces, 5);
    }

    #[test]
    fn rotation_of_loops() {
        // Two disjoint circles: one of each sense cancels, equal senses add.
        let d = crate::LinkDiagram::new(Vec::new(), 2).unwrap();
        let rots: Vec<i64> = d
            .enumerate_orientations()
            .iter()
            .map(|o| o.rotation_number())
            .collect();
        assert_eq!(rots.iter().filter(|&&r| r == 0).count(), 2);
        assert!(rots.contains(&2) && rots.contains(&-2));
    }

    #[test]
    fn rotation_negates_under_reversal() {
        for d in [
            from_braid_word(&[1, 1, 1], 2).unwrap(),
            from_braid_word(&[1, -2, 1, -2], 3).unwrap(),
            from_braid_word(&[1, 1], 2).unwrap(),
        ] {
            for o in d.enumerate_orientations() {
                assert_eq!(o.rotation_number(), -o.reverse_all().rotation_number());
            }
        }
    }

    #[test]
    fn braid_closure_rotation() {
        // Two nested Seifert circles with equal sense.
        let trefoil = from_braid_word(&[1, 1, 1], 2).unwrap();
        let rots: Vec<i64> = trefoil
            .enumerate_orientations()
            .iter()
            .map(|o| o.rotation_number())
            .collect();
        assert!(rots.contains(&2) && rots.contains(&-2), "got {rots:?}");
    }
}
