//! Rule-table-driven state expansion.
//!
//! Every crossing of an unoriented diagram is replaced by one entry of the
//! table: a retained oriented crossing, an antiparallel smoothing or turnback,
//! or (in the experimental odd-orthogonal table) a picture with erased
//! strands. Crossing-free loops choose an orientation or erasure. Only
//! globally coherent choices survive: along every edge the two induced
//! endpoint orientations must agree, and erasure must agree as well. Each
//! state carries the product of its entry weights; its value is
//! `weight * base^rot * P(resolved)` where `rot` is the rotation number of the
//! resolved picture in the diagram's own planar embedding and `P` is the
//! framed HOMFLY-PT polynomial. Summing over all states of the default table
//! reproduces the framed Kauffman polynomial exactly, which
//! [`verify_identity`] checks.
//!
//! Table entries are written in the slot coordinates of the crossing being
//! resolved (slots counterclockwise, under-strand on the `(0, 2)` diagonal),
//! so a single entry list applies uniformly to every crossing; reading the
//! same list through the two possible drawings of a crossing yields the
//! familiar positive-picture and negative-picture rule displays.

use crate::diagram::{rewire, LinkDiagram, OrientedLinkDiagram, RewireSpec};
use crate::homfly::{evaluate_homfly_with, SkeinMemo};
use crate::kauffman::evaluate_kauffman;
use crate::laurent::{parse_rational, RationalFunction};
use crate::planar::{rotation_of_state, FaceStructure, SeifertState};
use crate::Error;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Dn,
    Bn,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Dn => "dn",
            Family::Bn => "bn",
        }
    }
}

/// One local picture, in the slot coordinates of the crossing it resolves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolution {
    /// Retain the crossing with the orientation entering at these two
    /// (cyclically adjacent) slots.
    Keep { in_slots: (u8, u8) },
    /// Replace the cell by directed arcs `from -> to`; slots not covered are
    /// erased together with their strands.
    Rewire { arcs: Vec<(u8, u8)> },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Leg {
    In,
    Out,
    Erased,
}

impl Resolution {
    fn legs(&self) -> [Leg; 4] {
        let mut legs = [Leg::Erased; 4];
        match self {
            Resolution::Keep { in_slots: (x, y) } => {
                legs = [Leg::Out; 4];
                legs[*x as usize] = Leg::In;
                legs[*y as usize] = Leg::In;
            }
            Resolution::Rewire { arcs } => {
                for &(f, t) in arcs {
                    legs[f as usize] = Leg::In;
                    legs[t as usize] = Leg::Out;
                }
            }
        }
        legs
    }

    /// Arcs of the fully smoothed picture, for rotation numbers.
    fn seifert_arcs(&self) -> Vec<(u8, u8)> {
        match self {
            Resolution::Keep { in_slots: (x, _) } => {
                vec![(*x, (*x + 3) % 4), ((*x + 1) % 4, (*x + 2) % 4)]
            }
            Resolution::Rewire { arcs } => arcs.clone(),
        }
    }

    fn validate(&self) -> Result<(), Error> {
        match self {
            Resolution::Keep { in_slots: (x, y) } => {
                if *x >= 4 || *y != (*x + 1) % 4 {
                    return Err(Error::InvalidTable(format!(
                        "keep entry needs cyclically adjacent in-slots, got ({x}, {y})"
                    )));
                }
            }
            Resolution::Rewire { arcs } => {
                let mut used = [false; 4];
                for &(f, t) in arcs {
                    if f >= 4 || t >= 4 || f == t {
                        return Err(Error::InvalidTable(format!("bad arc ({f}, {t})")));
                    }
                    for s in [f, t] {
                        if std::mem::replace(&mut used[s as usize], true) {
                            return Err(Error::InvalidTable(format!(
                                "slot {s} used by two arcs"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct CrossingRule {
    pub resolution: Resolution,
    pub weight: RationalFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoopChoice {
    Orient(i8),
    Erase,
}

#[derive(Clone, Debug)]
pub struct LoopRule {
    pub choice: LoopChoice,
    pub weight: RationalFunction,
}

/// Family-indexed table of local pictures with weights and a bracket mode.
#[derive(Clone, Debug)]
pub struct RuleTable {
    pub family: Family,
    pub crossing_rules: Vec<CrossingRule>,
    pub loop_rules: Vec<LoopRule>,
    /// Monomial `(e_a, e_q)` whose `rot`-th power multiplies `P` in the
    /// bracket.
    pub bracket_base: (i64, i64),
    pub experimental: bool,
}

impl RuleTable {
    pub fn validate(&self) -> Result<(), Error> {
        if self.crossing_rules.is_empty() || self.loop_rules.is_empty() {
            return Err(Error::InvalidTable("empty rule list".into()));
        }
        for r in &self.crossing_rules {
            r.resolution.validate()?;
        }
        for l in &self.loop_rules {
            if let LoopChoice::Orient(s) = l.choice {
                if s != 1 && s != -1 {
                    return Err(Error::InvalidTable(format!("bad loop sense {s}")));
                }
            }
        }
        Ok(())
    }
}

fn one() -> RationalFunction {
    RationalFunction::one()
}

fn z() -> RationalFunction {
    RationalFunction::z()
}

/// The shipped table for a family.
pub fn default_rule_table(family: Family) -> RuleTable {
    let keeps = (0..4u8).map(|x| CrossingRule {
        resolution: Resolution::Keep {
            in_slots: (x, (x + 1) % 4),
        },
        weight: one(),
    });
    match family {
        Family::Dn => RuleTable {
            family,
            crossing_rules: keeps
                .chain([
                    // Antiparallel smoothing, weight q - q^-1.
                    CrossingRule {
                        resolution: Resolution::Rewire {
                            arcs: vec![(1, 2), (3, 0)],
                        },
                        weight: z(),
                    },
                    // Antiparallel turnback, weight -(q - q^-1).
                    CrossingRule {
                        resolution: Resolution::Rewire {
                            arcs: vec![(1, 0), (3, 2)],
                        },
                        weight: z().neg(),
                    },
                ])
                .collect(),
            loop_rules: vec![
                LoopRule {
                    choice: LoopChoice::Orient(1),
                    weight: one(),
                },
                LoopRule {
                    choice: LoopChoice::Orient(-1),
                    weight: one(),
                },
            ],
            bracket_base: (-1, 1),
            experimental: false,
        },
        Family::Bn => {
            let mut rules: Vec<CrossingRule> = keeps.collect();
            // Smoothing family: full, left strand only, right strand only.
            for arcs in [vec![(1, 2), (3, 0)], vec![(1, 2)], vec![(3, 0)]] {
                rules.push(CrossingRule {
                    resolution: Resolution::Rewire { arcs },
                    weight: z(),
                });
            }
            // Turnback family, negated.
            for arcs in [vec![(1, 0), (3, 2)], vec![(1, 0)], vec![(3, 2)]] {
                rules.push(CrossingRule {
                    resolution: Resolution::Rewire { arcs },
                    weight: z().neg(),
                });
            }
            // Both strands erased.
            rules.push(CrossingRule {
                resolution: Resolution::Rewire { arcs: vec![] },
                weight: one(),
            });
            // One strand retained straight through, the other erased.
            for arcs in [vec![(0, 2)], vec![(2, 0)], vec![(1, 3)], vec![(3, 1)]] {
                rules.push(CrossingRule {
                    resolution: Resolution::Rewire { arcs },
                    weight: one().neg(),
                });
            }
            RuleTable {
                family,
                crossing_rules: rules,
                loop_rules: vec![
                    LoopRule {
                        choice: LoopChoice::Orient(1),
                        weight: one(),
                    },
                    LoopRule {
                        choice: LoopChoice::Orient(-1),
                        weight: one(),
                    },
                    LoopRule {
                        choice: LoopChoice::Erase,
                        weight: one(),
                    },
                ],
                bracket_base: (-1, 0),
                experimental: true,
            }
        }
    }
}

/// One coherent choice of local pictures, with its weight, rotation number,
/// and resolved oriented diagram.
#[derive(Clone, Debug)]
pub struct ExpansionState {
    pub choices: Vec<usize>,
    pub loop_choices: Vec<usize>,
    pub weight: RationalFunction,
    pub rot: i64,
    pub resolved: OrientedLinkDiagram,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum EdgeReq {
    /// Edge directed away from this stored end index.
    Tail(u8),
    Erased,
}

/// All globally coherent states, in lexicographic choice order.
pub fn enumerate_states(d: &LinkDiagram, t: &RuleTable) -> Vec<ExpansionState> {
    let faces = FaceStructure::build(d);
    let mut out = Vec::new();
    let mut edge_req: Vec<Option<EdgeReq>> = vec![None; d.edge_count()];
    let mut choices = vec![0usize; d.crossing_count()];
    place_crossing(d, t, &faces, 0, &mut choices, &mut edge_req, &mut out);
    out
}

fn place_crossing(
    d: &LinkDiagram,
    t: &RuleTable,
    faces: &FaceStructure,
    c: usize,
    choices: &mut Vec<usize>,
    edge_req: &mut Vec<Option<EdgeReq>>,
    out: &mut Vec<ExpansionState>,
) {
    if c == d.crossing_count() {
        let mut loop_choices = vec![0usize; d.free_loops()];
        emit_loop_states(d, t, faces, choices, edge_req, 0, &mut loop_choices, out);
        return;
    }
    for (ri, rule) in t.crossing_rules.iter().enumerate() {
        let legs = rule.resolution.legs();
        let mut undo: Vec<(usize, Option<EdgeReq>)> = Vec::new();
        let mut ok = true;
        for s in 0..4u8 {
            let e = d.edge_at(c, s) as usize;
            let end = d.end_index(c, s) as u8;
            let want = match legs[s as usize] {
                // Incoming: the head is here, so the tail is the other end.
                Leg::In => EdgeReq::Tail(1 - end),
                Leg::Out => EdgeReq::Tail(end),
                Leg::Erased => EdgeReq::Erased,
            };
            match edge_req[e] {
                Some(have) if have != want => {
                    ok = false;
                    break;
                }
                Some(_) => {}
                None => {
                    undo.push((e, None));
                    edge_req[e] = Some(want);
                }
            }
        }
        if ok {
            choices[c] = ri;
            place_crossing(d, t, faces, c + 1, choices, edge_req, out);
        }
        for (e, prev) in undo {
            edge_req[e] = prev;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn emit_loop_states(
    d: &LinkDiagram,
    t: &RuleTable,
    faces: &FaceStructure,
    choices: &[usize],
    edge_req: &[Option<EdgeReq>],
    li: usize,
    loop_choices: &mut Vec<usize>,
    out: &mut Vec<ExpansionState>,
) {
    if li == d.free_loops() {
        out.push(build_state(d, t, faces, choices, edge_req, loop_choices));
        return;
    }
    for ri in 0..t.loop_rules.len() {
        loop_choices[li] = ri;
        emit_loop_states(d, t, faces, choices, edge_req, li + 1, loop_choices, out);
    }
}

fn build_state(
    d: &LinkDiagram,
    t: &RuleTable,
    faces: &FaceStructure,
    choices: &[usize],
    edge_req: &[Option<EdgeReq>],
    loop_choices: &[usize],
) -> ExpansionState {
    let mut weight = RationalFunction::one();
    for (c, &ri) in choices.iter().enumerate() {
        let _ = c;
        weight = weight.mul(&t.crossing_rules[ri].weight);
    }
    for &ri in loop_choices {
        weight = weight.mul(&t.loop_rules[ri].weight);
    }

    let live_senses: Vec<i8> = loop_choices
        .iter()
        .filter_map(|&ri| match t.loop_rules[ri].choice {
            LoopChoice::Orient(s) => Some(s),
            LoopChoice::Erase => None,
        })
        .collect();

    // Rotation number of the fully smoothed state in the diagram's embedding.
    let seifert = SeifertState {
        arcs: choices
            .iter()
            .map(|&ri| t.crossing_rules[ri].resolution.seifert_arcs())
            .collect(),
        edge_dir: edge_req
            .iter()
            .map(|r| match r.expect("all edges constrained") {
                EdgeReq::Tail(t) => Some(t),
                EdgeReq::Erased => None,
            })
            .collect(),
        loop_senses: live_senses.clone(),
    };
    let rot = rotation_of_state(d, faces, &seifert);

    // Resolved oriented diagram: retained crossings survive, smoothed cells
    // rewire, erased strands disappear.
    let spec = RewireSpec {
        cells: choices
            .iter()
            .map(|&ri| match &t.crossing_rules[ri].resolution {
                Resolution::Keep { .. } => None,
                Resolution::Rewire { arcs } => Some(arcs.iter().map(|&(f, g)| (f, g)).collect()),
            })
            .collect(),
        edge_live: edge_req
            .iter()
            .map(|r| !matches!(r, Some(EdgeReq::Erased)))
            .collect(),
        live_loops: live_senses.len(),
    };
    let rw = rewire(d, &spec);
    let tails: Vec<u8> = rw
        .ports
        .iter()
        .map(|&[a, b]| {
            let tail_port = |p: (usize, u8)| -> bool {
                let e = d.edge_at(p.0, p.1) as usize;
                match edge_req[e] {
                    Some(EdgeReq::Tail(tl)) => d.end_index(p.0, p.1) as u8 == tl,
                    _ => unreachable!("live port on erased edge"),
                }
            };
            let a_out = tail_port(a);
            debug_assert_ne!(a_out, tail_port(b));
            let (oc, os) = if a_out { a } else { b };
            let nc = rw.crossing_map[oc].unwrap();
            rw.diagram.end_index(nc, os) as u8
        })
        .collect();
    let mut senses = live_senses;
    senses.resize(rw.diagram.free_loops(), 1);
    let resolved = OrientedLinkDiagram::from_parts(rw.diagram, tails, senses);

    ExpansionState {
        choices: choices.to_vec(),
        loop_choices: loop_choices.to_vec(),
        weight,
        rot,
        resolved,
    }
}

/// Unpruned reference enumerator: try every combination of entries and filter
/// by coherence afterwards. Used to cross-check the propagation pruning.
pub fn enumerate_states_brute(d: &LinkDiagram, t: &RuleTable) -> Vec<ExpansionState> {
    let faces = FaceStructure::build(d);
    let nc = d.crossing_count();
    let nl = d.free_loops();
    let n_rules = t.crossing_rules.len();
    let n_loop = t.loop_rules.len();
    let mut out = Vec::new();
    let total = n_rules.pow(nc as u32) * n_loop.pow(nl as u32);
    'combo: for idx in 0..total {
        let mut rest = idx;
        let mut choices = Vec::with_capacity(nc);
        for _ in 0..nc {
            choices.push(rest % n_rules);
            rest /= n_rules;
        }
        let mut loop_choices = Vec::with_capacity(nl);
        for _ in 0..nl {
            loop_choices.push(rest % n_loop);
            rest /= n_loop;
        }
        // Coherence: both ends of every edge must induce the same requirement.
        let mut edge_req: Vec<Option<EdgeReq>> = vec![None; d.edge_count()];
        for (c, &ri) in choices.iter().enumerate() {
            let legs = t.crossing_rules[ri].resolution.legs();
            for s in 0..4u8 {
                let e = d.edge_at(c, s) as usize;
                let end = d.end_index(c, s) as u8;
                let want = match legs[s as usize] {
                    Leg::In => EdgeReq::Tail(1 - end),
                    Leg::Out => EdgeReq::Tail(end),
                    Leg::Erased => EdgeReq::Erased,
                };
                match edge_req[e] {
                    Some(have) if have != want => continue 'combo,
                    _ => edge_req[e] = Some(want),
                }
            }
        }
        out.push(build_state(d, t, &faces, &choices, &edge_req, &loop_choices));
    }
    // Match the pruned enumerator's lexicographic order.
    out.sort_by(|a, b| (&a.choices, &a.loop_choices).cmp(&(&b.choices, &b.loop_choices)));
    out
}

/// `weight * base^rot * P(resolved)`.
pub fn evaluate_state(
    s: &ExpansionState,
    t: &RuleTable,
    memo: &mut SkeinMemo,
) -> RationalFunction {
    let p = evaluate_homfly_with(&s.resolved, memo);
    let (ba, bq) = t.bracket_base;
    s.weight
        .mul(&p)
        .mul_monomial(1, ba * s.rot, bq * s.rot)
}

/// Sum of all state values.
pub fn expand(d: &LinkDiagram, t: &RuleTable) -> RationalFunction {
    let mut memo = SkeinMemo::new();
    enumerate_states(d, t)
        .iter()
        .fold(RationalFunction::zero(), |acc, s| {
            acc.add(&evaluate_state(s, t, &mut memo))
        })
}

/// Parallel expansion with a deterministic reduction order; exact arithmetic
/// makes the result identical to [`expand`].
pub fn expand_par(d: &LinkDiagram, t: &RuleTable) -> RationalFunction {
    use rayon::prelude::*;
    let states = enumerate_states(d, t);
    let values: Vec<RationalFunction> = states
        .par_iter()
        .map_init(SkeinMemo::new, |memo, s| evaluate_state(s, t, memo))
        .collect();
    values
        .into_iter()
        .fold(RationalFunction::zero(), |acc, v| acc.add(&v))
}

/// Comparison of the state sum against the independently computed Kauffman
/// polynomial.
pub struct VerifyReport {
    pub family: Family,
    pub expansion: RationalFunction,
    pub kauffman: RationalFunction,
    /// Exact equality of the quantities the family predicts; for the
    /// experimental table this is informational.
    pub equal: bool,
    pub state_count: usize,
    pub elapsed: Duration,
    pub bn_info: Option<BnInfo>,
}

/// Informational checks for the experimental table.
pub struct BnInfo {
    /// Two-variable comparison `expand = F` after `a^2 -> a^2 q`.
    pub two_variable_match: Option<bool>,
    /// Specialized comparisons at `a = q^n`: the sum against `F` under
    /// `a^2 -> q^{2n+1}`, for n = 1, 2, 3.
    pub specialized_match: Vec<(i64, bool)>,
}

/// Check the expansion identity on one diagram with the default table of the
/// given family.
pub fn verify_identity_with(d: &LinkDiagram, family: Family) -> VerifyReport {
    let t = default_rule_table(family);
    verify_table(d, &t)
}

/// Identity check for the default two-orthogonal table.
pub fn verify_identity(d: &LinkDiagram) -> VerifyReport {
    verify_identity_with(d, Family::Dn)
}

/// Identity check against an arbitrary table.
pub fn verify_table(d: &LinkDiagram, t: &RuleTable) -> VerifyReport {
    let start = Instant::now();
    let states = enumerate_states(d, t);
    let mut memo = SkeinMemo::new();
    let expansion = states
        .iter()
        .fold(RationalFunction::zero(), |acc, s| {
            acc.add(&evaluate_state(s, t, &mut memo))
        });
    let kauffman = evaluate_kauffman(d);
    let (equal, bn_info) = match t.family {
        Family::Dn => (expansion.equals(&kauffman), None),
        Family::Bn => {
            let substituted = kauffman.substitute_a2_to_a2q();
            let two_variable_match = substituted.as_ref().map(|f| expansion.equals(f));
            let specialized_match = (1..=3)
                .map(|n| {
                    let lhs = expansion.substitute_a(n);
                    let rhs = match &substituted {
                        Some(f) => f.substitute_a(n),
                        None => return (n, false),
                    };
                    (n, lhs.equals(&rhs))
                })
                .collect();
            (
                two_variable_match.unwrap_or(false),
                Some(BnInfo {
                    two_variable_match,
                    specialized_match,
                }),
            )
        }
    };
    VerifyReport {
        family: t.family,
        expansion,
        kauffman,
        equal,
        state_count: states.len(),
        elapsed: start.elapsed(),
    bn_info,
    }
}

/// Per-pair equality of `expand` on regular-isotopy-equivalent diagrams.
pub struct ValidationReport {
    pub results: Vec<bool>,
    pub pass: bool,
}

pub fn validate_table(t: &RuleTable, pairs: &[(LinkDiagram, LinkDiagram)]) -> ValidationReport {
    let results: Vec<bool> = pairs
        .iter()
        .map(|(a, b)| expand(a, t).equals(&expand(b, t)))
        .collect();
    let pass = results.iter().all(|&r| r);
    ValidationReport { results, pass }
}

// --- JSON form ----------------------------------------------------------------

pub fn table_to_json(t: &RuleTable) -> serde_json::Value {
    let crossing: Vec<serde_json::Value> = t
        .crossing_rules
        .iter()
        .map(|r| match &r.resolution {
            Resolution::Keep { in_slots } => serde_json::json!({
                "kind": "keep",
                "in_slots": [in_slots.0, in_slots.1],
                "weight": r.weight.to_string(),
            }),
            Resolution::Rewire { arcs } => serde_json::json!({
                "kind": "arcs",
                "arcs": arcs.iter().map(|&(f, g)| vec![f, g]).collect::<Vec<_>>(),
                "weight": r.weight.to_string(),
            }),
        })
        .collect();
    let loops: Vec<serde_json::Value> = t
        .loop_rules
        .iter()
        .map(|r| match r.choice {
            LoopChoice::Orient(s) => serde_json::json!({
                "kind": "orient",
                "sense": s,
                "weight": r.weight.to_string(),
            }),
            LoopChoice::Erase => serde_json::json!({
                "kind": "erase",
                "weight": r.weight.to_string(),
            }),
        })
        .collect();
    serde_json::json!({
        "family": t.family.name(),
        "bracket_base": { "e_a": t.bracket_base.0, "e_q": t.bracket_base.1 },
        "experimental": t.experimental,
        "crossing_rules": crossing,
        "loop_rules": loops,
    })
}

pub fn table_from_json(v: &serde_json::Value) -> Result<RuleTable, Error> {
    let family = match v.get("family").and_then(|f| f.as_str()) {
        Some("dn") => Family::Dn,
        Some("bn") => Family::Bn,
        other => {
            return Err(Error::InvalidTable(format!(
                "family must be 'dn' or 'bn', got {other:?}"
            )))
        }
    };
    let base = v
        .get("bracket_base")
        .ok_or_else(|| Error::InvalidTable("missing bracket_base".into()))?;
    let bracket_base = (
        base.get("e_a").and_then(|x| x.as_i64()).ok_or_else(|| {
            Error::InvalidTable("bracket_base.e_a must be an integer".into())
        })?,
        base.get("e_q").and_then(|x| x.as_i64()).ok_or_else(|| {
            Error::InvalidTable("bracket_base.e_q must be an integer".into())
        })?,
    );
    let weight_of = |r: &serde_json::Value| -> Result<RationalFunction, Error> {
        let text = r
            .get("weight")
            .and_then(|w| w.as_str())
            .ok_or_else(|| Error::InvalidTable("entry missing weight".into()))?;
        parse_rational(text)
    };
    let slot = |x: &serde_json::Value| -> Result<u8, Error> {
        x.as_u64()
            .filter(|&s| s < 4)
            .map(|s| s as u8)
            .ok_or_else(|| Error::InvalidTable("slot must be 0..4".into()))
    };
    let mut crossing_rules = Vec::new();
    for r in v
        .get("crossing_rules")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::InvalidTable("missing crossing_rules".into()))?
    {
        let resolution = match r.get("kind").and_then(|k| k.as_str()) {
            Some("keep") => {
                let s = r
                    .get("in_slots")
                    .and_then(|x| x.as_array())
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::InvalidTable("keep entry needs in_slots".into()))?;
                Resolution::Keep {
                    in_slots: (slot(&s[0])?, slot(&s[1])?),
                }
            }
            Some("arcs") => {
                let arcs = r
                    .get("arcs")
                    .and_then(|x| x.as_array())
                    .ok_or_else(|| Error::InvalidTable("arcs entry needs arcs".into()))?
                    .iter()
                    .map(|p| {
                        let p = p
                            .as_array()
                            .filter(|p| p.len() == 2)
                            .ok_or_else(|| Error::InvalidTable("arc must be [from, to]".into()))?;
                        Ok((slot(&p[0])?, slot(&p[1])?))
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
                Resolution::Rewire { arcs }
            }
            other => return Err(Error::InvalidTable(format!("bad entry kind {other:?}"))),
        };
        crossing_rules.push(CrossingRule {
            resolution,
            weight: weight_of(r)?,
        });
    }
    let mut loop_rules = Vec::new();
    for r in v
        .get("loop_rules")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::InvalidTable("missing loop_rules".into()))?
    {
        let choice = match r.get("kind").and_then(|k| k.as_str()) {
            Some("orient") => {
                let s = r
                    .get("sense")
                    .and_then(|x| x.as_i64())
                    .ok_or_else(|| Error::InvalidTable("orient entry needs sense".into()))?;
                LoopChoice::Orient(s as i8)
            }
            Some("erase") => LoopChoice::Erase,
            other => return Err(Error::InvalidTable(format!("bad loop kind {other:?}"))),
        };
        loop_rules.push(LoopRule {
            choice,
            weight: weight_of(r)?,
        });
    }
    let t = RuleTable {
        family,
        crossing_rules,
        loop_rules,
        bracket_base,
        experimental: v
            .get("experimental")
            .and_then(|x| x.as_bool())
            .unwrap_or(false),
    };
    t.validate()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::from_braid_word;

    fn delta_f() -> RationalFunction {
        RationalFunction::loop_value_unoriented()
    }

    #[test]
    fn table_shapes() {
        let dn = default_rule_table(Family::Dn);
        dn.validate().unwrap();
        assert_eq!(dn.crossing_rules.len(), 6);
        assert_eq!(dn.loop_rules.len(), 2);
        let keeps = dn
            .crossing_rules
            .iter()
            .filter(|r| matches!(r.resolution, Resolution::Keep { .. }))
            .count();
        assert_eq!(keeps, 4);
        assert!(dn
            .crossing_rules
            .iter()
            .filter(|r| matches!(r.resolution, Resolution::Keep { .. }))
            .all(|r| r.weight.equals(&RationalFunction::one())));
        let smooth: Vec<&CrossingRule> = dn
            .crossing_rules
            .iter()
            .filter(|r| matches!(r.resolution, Resolution::Rewire { .. }))
            .collect();
        assert!(smooth[0].weight.equals(&RationalFunction::z()));
        assert!(smooth[1].weight.equals(&RationalFunction::z().neg()));

        let bn = default_rule_table(Family::Bn);
        bn.validate().unwrap();
        assert_eq!(bn.crossing_rules.len(), 15);
        assert_eq!(bn.loop_rules.len(), 3);
        assert!(bn.experimental);
    }

    #[test]
    fn circle_states() {
        let circle = LinkDiagram::unknot();
        let dn = default_rule_table(Family::Dn);
        let states = enumerate_states(&circle, &dn);
        assert_eq!(states.len(), 2);
        assert!(states
            .iter()
            .all(|s| s.weight.equals(&RationalFunction::one())));
        let sum = expand(&circle, &dn);
        assert!(sum.equals(&delta_f()));

        let bn = default_rule_table(Family::Bn);
        let states = enumerate_states(&circle, &bn);
        assert_eq!(states.len(), 3);
        // The erased-loop state resolves to the empty diagram and contributes 1.
        let mut memo = SkeinMemo::new();
        let erased: Vec<&ExpansionState> = states
            .iter()
            .filter(|s| s.resolved.diagram.component_count() == 0)
            .collect();
        assert_eq!(erased.len(), 1);
        assert_eq!(erased[0].rot, 0);
        assert!(evaluate_state(erased[0], &bn, &mut memo).equals(&RationalFunction::one()));
        let sum = expand(&circle, &bn);
        let expected = crate::laurent::parse_rational("(a^2 - a^-2 + q - q^-1) / (q - q^-1)")
            .unwrap();
        assert!(sum.equals(&expected));
    }

    #[test]
    fn empty_diagram_single_state() {
        let dn = default_rule_table(Family::Dn);
        let states = enumerate_states(&LinkDiagram::empty(), &dn);
        assert_eq!(states.len(), 1);
        assert!(states[0].weight.equals(&RationalFunction::one()));
        assert!(expand(&LinkDiagram::empty(), &dn).equals(&RationalFunction::one()));
    }

    #[test]
    fn circle_state_values() {
        let dn = default_rule_table(Family::Dn);
        let circle = LinkDiagram::unknot();
        let states = enumerate_states(&circle, &dn);
        let mut memo = SkeinMemo::new();
        let delta = RationalFunction::loop_value_oriented();
        let values: Vec<RationalFunction> = states
            .iter()
            .map(|s| evaluate_state(s, &dn, &mut memo))
            .collect();
        let ccw = delta.mul_monomial(1, -1, 1);
        let cw = delta.mul_monomial(1, 1, -1);
        assert!(values.iter().any(|v| v.equals(&ccw)));
        assert!(values.iter().any(|v| v.equals(&cw)));
    }

    #[test]
    fn curl_expansions_match_kauffman() {
        for word in [[1i64], [-1i64]] {
            let curl = from_braid_word(&word, 2).unwrap();
            let report = verify_identity(&curl);
            assert!(
                report.equal,
                "curl {word:?}: expansion {} vs kauffman {}",
                report.expansion, report.kauffman
            );
        }
    }

    #[test]
    fn trefoil_identity_both_chiralities() {
        for word in [[1i64, 1, 1], [-1i64, -1, -1]] {
            let t = from_braid_word(&word, 2).unwrap();
            let report = verify_identity(&t);
            assert!(report.equal, "trefoil {word:?} failed");
        }
    }

    #[test]
    fn pruned_equals_brute_on_hopf() {
        let hopf = from_braid_word(&[1, 1], 2).unwrap();
        for fam in [Family::Dn, Family::Bn] {
            let t = default_rule_table(fam);
            let pruned = enumerate_states(&hopf, &t);
            let brute = enumerate_states_brute(&hopf, &t);
            assert_eq!(pruned.len(), brute.len());
            for (p, b) in pruned.iter().zip(&brute) {
                assert_eq!(p.choices, b.choices);
                assert_eq!(p.loop_choices, b.loop_choices);
                assert!(p.weight.equals(&b.weight));
                assert_eq!(p.rot, b.rot);
            }
        }
    }

    #[test]
    fn corrupted_table_fails_r2() {
        let mut t = default_rule_table(Family::Dn);
        // Flip the smoothing weight sign.
        let idx = t
            .crossing_rules
            .iter()
            .position(|r| matches!(&r.resolution, Resolution::Rewire { arcs } if arcs.len() == 2 && arcs[0] == (1, 2)))
            .unwrap();
        t.crossing_rules[idx].weight = t.crossing_rules[idx].weight.neg();
        let pairs = vec![
            (
                from_braid_word(&[1, -1], 2).unwrap(),
                LinkDiagram::new(Vec::new(), 2).unwrap(),
            ),
            (
                from_braid_word(&[1, 1, -1], 2).unwrap(),
                from_braid_word(&[1], 2).unwrap(),
            ),
        ];
        let good = validate_table(&default_rule_table(Family::Dn), &pairs);
        assert!(good.pass);
        let bad = validate_table(&t, &pairs);
        assert!(!bad.pass);
        assert_eq!(bad.results, vec![true, false]);
    }

    #[test]
    fn table_json_roundtrip() {
        for fam in [Family::Dn, Family::Bn] {
            let t = default_rule_table(fam);
            let j = table_to_json(&t);
            let t2 = table_from_json(&j).unwrap();
            assert_eq!(t2.crossing_rules.len(), t.crossing_rules.len());
            assert_eq!(t2.bracket_base, t.bracket_base);
            // Same expansion on a small diagram.
            let d = from_braid_word(&[1], 2).unwrap();
            assert!(expand(&d, &t).equals(&expand(&d, &t2)));
        }
    }
}
