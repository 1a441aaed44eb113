//! Framed HOMFLY-PT polynomial `P(a, q)` of an oriented diagram by memoized
//! skein recursion.
//!
//! `P` satisfies `P(X+) - P(X-) = (q - q^-1) P(X0)` with `X0` the oriented
//! smoothing, scales by `a^{±1}` under positive/negative kinks, takes the
//! value `(a - a^-1)/(q - q^-1)` on a crossing-free circle, and is
//! multiplicative over disjoint unions with `P(empty) = 1`.
//!
//! The recursion walks each component from a fixed basepoint and switches the
//! first crossing met on its under-strand; the switched branch strictly
//! approaches a descending diagram and the smoothed branch drops a crossing,
//! so the recursion terminates. A descending diagram is a framed unlink and
//! evaluates in closed form as `a^writhe * delta^components`.

use crate::diagram::OrientedLinkDiagram;
use crate::laurent::RationalFunction;
use std::collections::HashMap;

/// Memo table keyed by the oriented canonical code. Entries are only ever
/// inserted, never changed: the recursion is pure, so an insert under the same
/// key always carries the same value.
#[derive(Default)]
pub struct SkeinMemo {
    map: HashMap<String, RationalFunction>,
}

impl SkeinMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub(crate) fn get_raw(&self, key: &str) -> Option<RationalFunction> {
        self.map.get(key).cloned()
    }

    pub(crate) fn insert_raw(&mut self, key: String, value: RationalFunction) {
        self.map.insert(key, value);
    }
}

/// Framed HOMFLY-PT polynomial of an oriented diagram.
pub fn evaluate_homfly(d: &OrientedLinkDiagram) -> RationalFunction {
    evaluate_homfly_with(d, &mut SkeinMemo::new())
}

/// Same, sharing a memo across evaluations.
pub fn evaluate_homfly_with(
    d: &OrientedLinkDiagram,
    memo: &mut SkeinMemo,
) -> RationalFunction {
    let key = d.canonical_code();
    if let Some(v) = memo.map.get(&key) {
        return v.clone();
    }
    let value = match first_bad_crossing(d) {
        None => descending_value(d),
        Some(c) => {
            let switched = evaluate_homfly_with(&d.switch_crossing(c), memo);
            let smoothed = evaluate_homfly_with(&d.smooth_crossing(c), memo);
            let step = RationalFunction::z().mul(&smoothed);
            if d.crossing_sign(c) > 0 {
                switched.add(&step)
            } else {
                switched.sub(&step)
            }
        }
    };
    memo.map.insert(key, value.clone());
    value
}

/// `P` after the substitution `a -> q^n`.
pub fn specialize_homfly(d: &OrientedLinkDiagram, n: i64) -> RationalFunction {
    evaluate_homfly(d).substitute_a(n)
}

/// Descending diagrams are framed unlinks: `a^writhe * delta^components`.
fn descending_value(d: &OrientedLinkDiagram) -> RationalFunction {
    let delta = RationalFunction::loop_value_oriented();
    let k = d.diagram.component_count() as i64;
    delta.pow(k).mul_monomial(1, d.writhe(), 0)
}

/// First crossing whose first visit along the canonical walk is on the
/// under-strand; `None` means the diagram is descending. The walk starts each
/// component at its lowest edge, travels along the orientation, and takes
/// components in order of their lowest edges.
fn first_bad_crossing(d: &OrientedLinkDiagram) -> Option<usize> {
    let dg = &d.diagram;
    let (comp_of, n_comp) = dg.edge_components();
    let mut start_of = vec![usize::MAX; n_comp];
    for e in (0..dg.edge_count()).rev() {
        start_of[comp_of[e]] = e;
    }
    let mut seen = vec![false; dg.crossing_count()];
    for &e0 in &start_of {
        let head0 = 1 - d.edge_tail(e0 as u32) as usize;
        let (mut e, mut head) = (e0, head0);
        loop {
            let (c, s) = dg.edge_ends(e as u32)[head];
            if !seen[c] {
                seen[c] = true;
                if s % 2 == 0 {
                    return Some(c);
                }
            }
            let s_out = (s + 2) % 4;
            let f = dg.edge_at(c, s_out) as usize;
            let idx = dg.end_index(c, s_out);
            if f == e0 && 1 - idx == head0 {
                break;
            }
            e = f;
            head = 1 - idx;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{from_braid_word, LinkDiagram};
    use crate::laurent::parse_rational;

    fn delta() -> RationalFunction {
        RationalFunction::loop_value_oriented()
    }

    #[test]
    fn circle_value() {
        let p = evaluate_homfly(&LinkDiagram::unknot().orient());
        assert!(p.equals(&delta()));
    }

    #[test]
    fn empty_value() {
        let p = evaluate_homfly(&LinkDiagram::empty().orient());
        assert!(p.equals(&RationalFunction::one()));
    }

    #[test]
    fn positive_curl_scales_by_a() {
        let curl = from_braid_word(&[1], 2).unwrap();
        let p = evaluate_homfly(&curl.orient());
        assert!(p.equals(&delta().mul_monomial(1, 1, 0)));

        let neg = from_braid_word(&[-1], 2).unwrap();
        let p = evaluate_homfly(&neg.orient());
        assert!(p.equals(&delta().mul_monomial(1, -1, 0)));
    }

    #[test]
    fn r2_pair_is_unlink() {
        let d = from_braid_word(&[1, -1], 2).unwrap();
        let p = evaluate_homfly(&d.orient());
        assert!(p.equals(&delta().mul(&delta())));
    }

    #[test]
    fn trefoil_value() {
        // Closure of sigma^3: P = a*delta + z*delta^2 + z^2*a*delta.
        let t = from_braid_word(&[1, 1, 1], 2).unwrap();
        let p = evaluate_homfly(&t.orient());
        let z = RationalFunction::z();
        let expected = delta()
            .mul_monomial(1, 1, 0)
            .add(&z.mul(&delta()).mul(&delta()))
            .add(&z.mul(&z).mul(&delta()).mul_monomial(1, 1, 0));
        assert!(p.equals(&expected));
        // Framed sl_1 triviality: a^-w P at a=q is 1.
        let normalized = p.mul_monomial(1, -3, 0).substitute_a(1);
        assert!(normalized.equals(&RationalFunction::one()));
    }

    #[test]
    fn specialization_of_circle() {
        let o = LinkDiagram::unknot().orient();
        assert!(specialize_homfly(&o, 2).equals(&parse_rational("q + q^-1").unwrap()));
        assert!(specialize_homfly(&o, 1).equals(&RationalFunction::one()));
    }

    #[test]
    fn reversal_invariance_small() {
        for d in [
            from_braid_word(&[1, 1, 1], 2).unwrap(),
            from_braid_word(&[1, -2, 1, -2], 3).unwrap(),
        ] {
            let o = d.orient();
            assert!(evaluate_homfly(&o).equals(&evaluate_homfly(&o.reverse_all())));
        }
    }
}
