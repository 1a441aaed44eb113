//! Randomized property suite: ring axioms for the value domain, structural
//! diagram invariants on random braid closures, and the skein relations at
//! random sites.

use proptest::prelude::*;
use skein::diagram::{from_braid_word, Crossing, LinkDiagram};
use skein::expansion::{default_rule_table, enumerate_states, enumerate_states_brute, Family};
use skein::homfly::evaluate_homfly;
use skein::kauffman::{evaluate_kauffman, SMOOTH_A, SMOOTH_B};
use skein::laurent::{BivariateLaurent, RationalFunction};

fn laurent_strategy() -> impl Strategy<Value = BivariateLaurent> {
    proptest::collection::vec(((-3i64..=3), (-2i64..=2), (-2i64..=2)), 0..4)
        .prop_map(BivariateLaurent::from_terms)
}

fn nonzero_laurent() -> impl Strategy<Value = BivariateLaurent> {
    laurent_strategy().prop_map(|p| {
        if p.is_zero() {
            BivariateLaurent::one()
        } else {
            p
        }
    })
}

fn rational_strategy() -> impl Strategy<Value = RationalFunction> {
    (laurent_strategy(), nonzero_laurent()).prop_map(|(n, d)| RationalFunction::new(n, d))
}

/// Values the engines actually produce: denominators are monomial multiples
/// of powers of `q - q^-1`, which keeps the substitution `a -> q^n` total.
fn value_domain_strategy() -> impl Strategy<Value = RationalFunction> {
    (laurent_strategy(), 0u32..3, -2i64..=2, -2i64..=2).prop_map(|(n, zk, ea, eq)| {
        let mut den = BivariateLaurent::monomial(1, ea, eq);
        for _ in 0..zk {
            den = den.mul(&BivariateLaurent::z_poly());
        }
        RationalFunction::new(n, den)
    })
}

fn braid_strategy() -> impl Strategy<Value = LinkDiagram> {
    (2usize..=3, proptest::collection::vec((1i64..=2, proptest::bool::ANY), 0..=4)).prop_map(
        |(strands, letters)| {
            let word: Vec<i64> = letters
                .into_iter()
                .map(|(i, neg)| {
                    let i = i.min(strands as i64 - 1);
                    if neg {
                        -i
                    } else {
                        i
                    }
                })
                .collect();
            from_braid_word(&word, strands).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(x in rational_strategy(), y in rational_strategy(), z in rational_strategy()) {
        prop_assert!(x.add(&y).add(&z).equals(&x.add(&y.add(&z))));
        prop_assert!(x.mul(&y).equals(&y.mul(&x)));
        prop_assert!(x.add(&y).equals(&y.add(&x)));
        prop_assert!(x.mul(&y.add(&z)).equals(&x.mul(&y).add(&x.mul(&z))));
    }

    #[test]
    fn substitution_is_a_ring_morphism(x in value_domain_strategy(), y in value_domain_strategy(), n in -3i64..=3) {
        prop_assert!(x.mul(&y).substitute_a(n).equals(&x.substitute_a(n).mul(&y.substitute_a(n))));
        prop_assert!(x.add(&y).substitute_a(n).equals(&x.substitute_a(n).add(&y.substitute_a(n))));
    }

    #[test]
    fn equality_is_an_equivalence(x in rational_strategy(), scale in nonzero_laurent()) {
        // A rescaled representation of the same value stays equal, and
        // equality is symmetric.
        let y = RationalFunction::new(
            x.numerator().mul(&scale),
            x.denominator().mul(&scale),
        );
        prop_assert!(x.equals(&x));
        prop_assert!(x.equals(&y) && y.equals(&x));
    }

    #[test]
    fn involution_is_involutive(x in rational_strategy()) {
        prop_assert!(x.invert_variables().invert_variables().equals(&x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn braid_closure_structure(d in braid_strategy()) {
        let k = d.component_count();
        let orientations = d.enumerate_orientations();
        prop_assert_eq!(orientations.len(), 1usize << k);
        for o in &orientations {
            prop_assert!(o.is_coherent());
            prop_assert_eq!(o.rotation_number(), -o.reverse_all().rotation_number());
            prop_assert_eq!(o.writhe(), -o.mirror().writhe());
        }
    }

    #[test]
    fn canonical_code_is_relabeling_invariant(d in braid_strategy(), seed in 0u64..1000) {
        // Permute the dense edge ids pseudo-randomly and re-parse.
        let n = d.edge_count() as u32;
        let mut perm: Vec<u32> = (0..n).collect();
        let mut state = seed.wrapping_add(1);
        for i in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let relabeled: Vec<Crossing> = d
            .crossings()
            .iter()
            .map(|x| Crossing::new(x.slots.map(|e| perm[e as usize])))
            .collect();
        let d2 = LinkDiagram::new(relabeled, d.free_loops()).unwrap();
        prop_assert_eq!(d.canonical_code(), d2.canonical_code());
    }

    #[test]
    fn rotation_additive_under_disjoint_loops(d in braid_strategy(), extra in 0usize..3) {
        let with_loops = d.with_free_loops(d.free_loops() + extra);
        let o = d.orient();
        let ol = with_loops.orient();
        // Canonical orientation gives every added loop sense +1.
        prop_assert_eq!(ol.rotation_number(), o.rotation_number() + extra as i64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn skein_relations_at_random_sites(d in braid_strategy()) {
        let z = RationalFunction::z();
        for c in 0..d.crossing_count() {
            let lhs = evaluate_kauffman(&d).sub(&evaluate_kauffman(&d.switch_crossing(c)));
            let rhs = z.mul(
                &evaluate_kauffman(&d.smooth_crossing(c, SMOOTH_B))
                    .sub(&evaluate_kauffman(&d.smooth_crossing(c, SMOOTH_A))),
            );
            prop_assert!(lhs.equals(&rhs));
        }
        let o = d.orient();
        for c in 0..d.crossing_count() {
            let (pos, neg) = if o.crossing_sign(c) > 0 {
                (evaluate_homfly(&o), evaluate_homfly(&o.switch_crossing(c)))
            } else {
                (evaluate_homfly(&o.switch_crossing(c)), evaluate_homfly(&o))
            };
            prop_assert!(pos.sub(&neg).equals(&z.mul(&evaluate_homfly(&o.smooth_crossing(c)))));
        }
    }

    #[test]
    fn disjoint_union_multiplicativity(d in braid_strategy()) {
        let with_loop = d.with_free_loops(d.free_loops() + 1);
        let p = evaluate_homfly(&d.orient());
        let pl = evaluate_homfly(&with_loop.orient());
        prop_assert!(pl.equals(&p.mul(&RationalFunction::loop_value_oriented())));
        let f = evaluate_kauffman(&d);
        let fl = evaluate_kauffman(&with_loop);
        prop_assert!(fl.equals(&f.mul(&RationalFunction::loop_value_unoriented())));
    }

    #[test]
    fn state_weights_factor_and_states_cohere(d in braid_strategy()) {
        let t = default_rule_table(Family::Dn);
        for s in enumerate_states(&d, &t) {
            let mut w = RationalFunction::one();
            for &ri in &s.choices {
                w = w.mul(&t.crossing_rules[ri].weight);
            }
            for &ri in &s.loop_choices {
                w = w.mul(&t.loop_rules[ri].weight);
            }
            prop_assert!(w.equals(&s.weight));
            prop_assert!(s.resolved.is_coherent());
        }
    }
}

#[test]
fn reversal_invariance_corpus_wide() {
    for e in skein::corpus::bundled_corpus() {
        let d = e.diagram().unwrap();
        let o = d.orient();
        assert!(
            evaluate_homfly(&o).equals(&evaluate_homfly(&o.reverse_all())),
            "{}",
            e.name
        );
    }
}

#[test]
fn kauffman_specialization_agrees_with_expansion() {
    // The engine's specialized value against the state sum's, at a = q^2.
    let d = skein::corpus::bundled_entry("trefoil-right")
        .unwrap()
        .diagram()
        .unwrap();
    let engine = skein::kauffman::specialize_kauffman(&d, 2);
    let t = default_rule_table(Family::Dn);
    let sum = skein::expansion::expand(&d, &t).substitute_a(2);
    assert!(engine.equals(&sum));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn pruned_enumeration_matches_brute_force(d in braid_strategy()) {
        prop_assume!(d.crossing_count() <= 3);
        for family in [Family::Dn, Family::Bn] {
            let t = default_rule_table(family);
            let pruned = enumerate_states(&d, &t);
            let brute = enumerate_states_brute(&d, &t);
            prop_assert_eq!(pruned.len(), brute.len());
            for (p, b) in pruned.iter().zip(&brute) {
                prop_assert_eq!(&p.choices, &b.choices);
                prop_assert_eq!(&p.loop_choices, &b.loop_choices);
                prop_assert!(p.weight.equals(&b.weight));
                prop_assert_eq!(p.rot, b.rot);
            }
        }
    }
}
