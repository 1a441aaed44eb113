//! Framed Kauffman polynomial `F(a, q)` of an unoriented diagram by memoized
//! switching recursion.
//!
//! In the crossing's own slot coordinates the defining relation reads
//! `F(D) - F(switch D) = (q - q^-1) (F(D_b) - F(D_a))` where `D_b` pairs the
//! slots `(0,3)(1,2)` and `D_a` pairs `(0,1)(2,3)`. A positive kink scales `F`
//! by `a^2 q^-1`, a negative one by `a^-2 q`, the crossing-free circle takes
//! the value `(a^2 q^-1 - a^-2 q)/(q - q^-1) + 1`, and disjoint unions
//! multiply. Internally this is the two-variable Dubrovnik algorithm in
//! disguise: with `a' = a^2 q^-1` and `z = q - q^-1` the curl factor is `a'`
//! and the loop value `(a' - a'^-1)/z + 1`, so the classical descending-
//! diagram termination argument applies unchanged.

use crate::diagram::LinkDiagram;
use crate::homfly::SkeinMemo;
use crate::laurent::RationalFunction;

/// Slot pairs of the two unoriented smoothings, in the coordinates of the
/// crossing being resolved.
pub const SMOOTH_B: [(u8, u8); 2] = [(0, 3), (1, 2)];
pub const SMOOTH_A: [(u8, u8); 2] = [(0, 1), (2, 3)];

/// Framed Kauffman polynomial of a closed unoriented diagram.
pub fn evaluate_kauffman(d: &LinkDiagram) -> RationalFunction {
    evaluate_kauffman_with(d, &mut SkeinMemo::new())
}

pub fn evaluate_kauffman_with(d: &LinkDiagram, memo: &mut SkeinMemo) -> RationalFunction {
    let key = d.canonical_code();
    if let Some(v) = memo_get(memo, &key) {
        return v;
    }
    let value = match first_bad_crossing(d) {
        None => descending_value(d),
        Some(c) => {
            let switched = evaluate_kauffman_with(&d.switch_crossing(c), memo);
            let b = evaluate_kauffman_with(&d.smooth_crossing(c, SMOOTH_B), memo);
            let a = evaluate_kauffman_with(&d.smooth_crossing(c, SMOOTH_A), memo);
            let z = RationalFunction::z();
            switched.add(&z.mul(&b.sub(&a)))
        }
    };
    memo_insert(memo, key, value.clone());
    value
}

/// `F` after the substitution `a -> q^n`.
pub fn specialize_kauffman(d: &LinkDiagram, n: i64) -> RationalFunction {
    evaluate_kauffman(d).substitute_a(n)
}

/// Descending diagrams reduce to unlinks with kinks: the value is
/// `(a^2 q^-1)^w * F(circle)^k` with `w` the signed self-crossing count.
fn descending_value(d: &LinkDiagram) -> RationalFunction {
    let delta = RationalFunction::loop_value_unoriented();
    let k = d.component_count() as i64;
    let w = self_writhe(d);
    delta.pow(k).mul_monomial(1, 2 * w, -w)
}

/// Sum of self-crossing signs; independent of the orientation choice.
fn self_writhe(d: &LinkDiagram) -> i64 {
    let (comp_of, _) = d.edge_components();
    let o = d.orient();
    (0..d.crossing_count())
        .filter(|&c| {
            comp_of[d.edge_at(c, 0) as usize] == comp_of[d.edge_at(c, 1) as usize]
        })
        .map(|c| o.crossing_sign(c))
        .sum()
}

/// First crossing met on its under-strand along the canonical unoriented
/// walk (components from their lowest edges, each walked toward the second
/// stored end); `None` means descending.
fn first_bad_crossing(d: &LinkDiagram) -> Option<usize> {
    let (comp_of, n_comp) = d.edge_components();
    let mut start_of = vec![usize::MAX; n_comp];
    for e in (0..d.edge_count()).rev() {
        start_of[comp_of[e]] = e;
    }
    let mut seen = vec![false; d.crossing_count()];
    for &e0 in &start_of {
        let head0 = 1;
        let (mut e, mut head) = (e0, head0);
        loop {
            let (c, s) = d.edge_ends(e as u32)[head];
            if !seen[c] {
                seen[c] = true;
                if s % 2 == 0 {
                    return Some(c);
                }
            }
            let s_out = (s + 2) % 4;
            let f = d.edge_at(c, s_out) as usize;
            let idx = d.end_index(c, s_out);
            if f == e0 && 1 - idx == head0 {
                break;
            }
            e = f;
            head = 1 - idx;
        }
    }
    None
}

fn memo_get(memo: &SkeinMemo, key: &str) -> Option<RationalFunction> {
    memo.get_raw(key)
}

fn memo_insert(memo: &mut SkeinMemo, key: String, value: RationalFunction) {
    memo.insert_raw(key, value);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::from_braid_word;
    use crate::laurent::parse_rational;

    fn delta() -> RationalFunction {
        RationalFunction::loop_value_unoriented()
    }

    #[test]
    fn circle_and_empty() {
        assert!(evaluate_kauffman(&LinkDiagram::unknot()).equals(&delta()));
        assert!(evaluate_kauffman(&LinkDiagram::empty()).equals(&RationalFunction::one()));
    }

    #[test]
    fn unlink_multiplicativity() {
        let two = LinkDiagram::new(Vec::new(), 2).unwrap();
        assert!(evaluate_kauffman(&two).equals(&delta().mul(&delta())));
        // R2-reducible two-component diagram agrees.
        let r2 = from_braid_word(&[1, -1], 2).unwrap();
        assert!(evaluate_kauffman(&r2).equals(&delta().mul(&delta())));
    }

    #[test]
    fn curl_factors() {
        let pos = from_braid_word(&[1], 2).unwrap();
        assert!(evaluate_kauffman(&pos).equals(&delta().mul_monomial(1, 2, -1)));
        let neg = from_braid_word(&[-1], 2).unwrap();
        assert!(evaluate_kauffman(&neg).equals(&delta().mul_monomial(1, -2, 1)));
    }

    #[test]
    fn specializations_of_circle() {
        let o = LinkDiagram::unknot();
        assert!(specialize_kauffman(&o, 2)
            .equals(&parse_rational("q^2 + q^-2 + 2").unwrap()));
        assert!(specialize_kauffman(&o, 1).equals(&parse_rational("2").unwrap()));
    }

    #[test]
    fn mirror_covariance_trefoil() {
        let t = from_braid_word(&[1, 1, 1], 2).unwrap();
        let f = evaluate_kauffman(&t);
        let fm = evaluate_kauffman(&t.mirror());
        assert!(fm.equals(&f.invert_variables()));
        assert!(!fm.equals(&f), "chiral knot distinguishes mirrors");
    }
}
