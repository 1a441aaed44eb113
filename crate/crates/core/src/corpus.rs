//! Bundled test diagrams with independently derived, frozen oracle values,
//! plus ingestion of external corpus files.
//!
//! The oracle values were produced once by [`oracle_homfly`] and
//! [`oracle_kauffman`] — deliberately different code paths from the main
//! evaluators (no memoization, reversed traversal, last bad crossing instead
//! of first, smoothed branch evaluated first) — and are stored as text. The
//! `oracle` CLI subcommand regenerates the table.

use crate::diagram::{parse_pd, LinkDiagram, OrientedLinkDiagram};
use crate::expansion::{verify_identity, VerifyReport};
use crate::homfly::evaluate_homfly;
use crate::kauffman::evaluate_kauffman;
use crate::laurent::{parse_rational, RationalFunction};
use crate::Error;
use std::time::Duration;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub pd: String,
    pub components: usize,
    pub oracle_homfly: Option<String>,
    pub oracle_kauffman: Option<String>,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Result<LinkDiagram, Error> {
        parse_pd(&self.pd)
    }

    pub fn oracle_homfly_value(&self) -> Result<Option<RationalFunction>, Error> {
        self.oracle_homfly.as_deref().map(parse_rational).transpose()
    }

    pub fn oracle_kauffman_value(&self) -> Result<Option<RationalFunction>, Error> {
        self.oracle_kauffman.as_deref().map(parse_rational).transpose()
    }
}

/// `(name, pd, components, oracle_homfly, oracle_kauffman)`; oracle texts are
/// frozen outputs of the independent recursion (see module docs).
const BUNDLED: &[(&str, &str, usize, &str, &str)] = &[
    ("empty", "", 0, "1", "1"),
    (
        "circle",
        "O",
        1,
        "(-q + a^2*q) / (-a + a*q^2)",
        "(-q^2 - a^2 + a^2*q^2 + a^4) / (-a^2 + a^2*q^2)",
    ),
    (
        "curl-positive",
        "X[1,2,2,1]",
        1,
        "(-q^2 + a^2*q^2) / (-q + q^3)",
        "(-q^2 - a^2 + a^2*q^2 + a^4) / (-q + q^3)",
    ),
    (
        "curl-negative",
        "X[1,1,2,2]",
        1,
        "(-q^2 + a^2*q^2) / (-a^2*q + a^2*q^3)",
        "(-q^4 - a^2*q^2 + a^2*q^4 + a^4*q^2) / (-a^4*q + a^4*q^3)",
    ),
    (
        "trefoil-right",
        "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]",
        1,
        "(q^3 - a^2*q - a^2*q^3 - a^2*q^5 + a^4*q + a^4*q^5) / (-a^2*q^2 + a^2*q^4)",
        "(-q^7 + q^9 + a^2*q^7 + a^4*q^3 - a^4*q^9 - a^6*q^3 - a^6*q^5 - a^6*q^7 - a^8*q + a^8*q^7 + a^10*q + a^10*q^5) / (-a^6*q^4 + a^6*q^6)",
    ),
    (
        "trefoil-left",
        "X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]",
        1,
        "(-q - q^5 + a^2*q + a^2*q^3 + a^2*q^5 - a^4*q^3) / (-a^2*q^2 + a^2*q^4)",
        "(-q^5 - q^9 - a^2*q^3 + a^2*q^9 + a^4*q^3 + a^4*q^5 + a^4*q^7 + a^6*q - a^6*q^7 - a^8*q^3 - a^10*q + a^10*q^3) / (-a^4*q^4 + a^4*q^6)",
    ),
    (
        "figure-eight",
        "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]",
        1,
        "(-q^3 + a^2*q + a^2*q^5 - a^4*q - a^4*q^5 + a^6*q^3) / (-a^3*q^2 + a^3*q^4)",
        "(-q^7 + q^9 - q^11 + a^4*q^3 + a^4*q^11 - a^6*q^5 + a^6*q^7 - a^8*q - a^8*q^9 + a^12*q - a^12*q^3 + a^12*q^5) / (-a^6*q^5 + a^6*q^7)",
    ),
    (
        "hopf-positive",
        "X[1,2,3,4] X[4,3,2,1]",
        2,
        "(q^2 - a^2 - a^2*q^4 + a^4 - a^4*q^2 + a^4*q^4) / (a^2 - 2*a^2*q^2 + a^2*q^4)",
        "(q^4 - q^6 + q^8 + a^2*q^2 - a^2*q^4 + a^2*q^6 - a^2*q^8 - a^4*q^2 - a^4*q^6 - a^6 + a^6*q^2 - a^6*q^4 + a^6*q^6 + a^8 - a^8*q^2 + a^8*q^4) / (a^4*q^2 - 2*a^4*q^4 + a^4*q^6)",
    ),
    (
        "hopf-negative",
        "X[2,3,4,1] X[3,2,1,4]",
        2,
        "(q^2 - a^2 - a^2*q^4 + a^4 - a^4*q^2 + a^4*q^4) / (a^2 - 2*a^2*q^2 + a^2*q^4)",
        "(q^4 - q^6 + q^8 + a^2*q^2 - a^2*q^4 + a^2*q^6 - a^2*q^8 - a^4*q^2 - a^4*q^6 - a^6 + a^6*q^2 - a^6*q^4 + a^6*q^6 + a^8 - a^8*q^2 + a^8*q^4) / (a^4*q^2 - 2*a^4*q^4 + a^4*q^6)",
    ),
    (
        "solomon",
        "X[1,2,3,4] X[4,3,5,6] X[6,5,7,8] X[8,7,2,1]",
        2,
        "(q^2 - q^4 + q^6 - a^2 - a^2*q^8 + a^4 - a^4*q^2 + a^4*q^4 - a^4*q^6 + a^4*q^8) / (a^2*q^2 - 2*a^2*q^4 + a^2*q^6)",
        "(q^8 - 2*q^10 + q^12 + a^4*q^6 - a^4*q^8 + a^4*q^10 + a^6*q^2 - a^6*q^4 + a^6*q^10 - a^6*q^12 - a^8*q^2 - a^8*q^10 - a^10 + a^10*q^2 - a^10*q^8 + a^10*q^10 + a^12 - a^12*q^2 + a^12*q^4 - a^12*q^6 + a^12*q^8) / (a^8*q^4 - 2*a^8*q^6 + a^8*q^8)",
    ),
    (
        "5_1",
        "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]",
        1,
        "(q^3 + q^7 - a^2*q - a^2*q^3 - a^2*q^5 - a^2*q^7 - a^2*q^9 + a^4*q + a^4*q^5 + a^4*q^9) / (-a^2*q^4 + a^2*q^6)",
        "(-q^11 + q^13 + a^6*q^7 + a^6*q^11 + a^8*q^3 - a^8*q^13 - a^10*q^3 - a^10*q^5 - a^10*q^7 - a^10*q^9 - a^10*q^11 - a^12*q + a^12*q^11 + a^14*q + a^14*q^5 + a^14*q^9) / (-a^10*q^6 + a^10*q^8)",
    ),
    (
        "5_2",
        "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]",
        1,
        "(q^3 - a^2*q - a^2*q^5 + a^6*q - a^6*q^3 + a^6*q^5) / (-a^2*q^2 + a^2*q^4)",
        "(-q^7 + q^9 - q^11 + q^13 + a^2*q^9 + a^4*q^3 - a^4*q^13 - a^6*q^5 - a^6*q^9 - a^8*q + a^8*q^3 - a^8*q^5 + a^8*q^7 - a^8*q^9 + a^8*q^11 - a^12*q^3 + a^12*q^5 + a^14*q - a^14*q^3 + a^14*q^5) / (-a^6*q^6 + a^6*q^8)",
    ),
    (
        "6_1",
        "X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]",
        1,
        "(-q^3 + a^2*q + a^2*q^5 - a^4*q^3 - a^6*q + a^6*q^3 - a^6*q^5 + a^8*q^3) / (-a^3*q^2 + a^3*q^4)",
        "(-q^7 + q^9 - q^11 + q^13 - q^15 + a^2*q^9 - a^2*q^11 + a^4*q^3 + a^4*q^15 - a^6*q^5 + a^6*q^11 - a^8*q + a^8*q^3 - a^8*q^5 + a^8*q^7 - a^8*q^9 + a^8*q^11 - a^8*q^13 + a^10*q^3 - a^10*q^5 + a^10*q^7 - a^10*q^9 - a^12*q^3 + a^12*q^5 - a^12*q^7 - a^14*q^3 + a^14*q^5 + a^16*q - a^16*q^3 + a^16*q^5) / (-a^6*q^7 + a^6*q^9)",
    ),
];

pub fn bundled_corpus() -> Vec<CorpusEntry> {
    BUNDLED
        .iter()
        .map(|&(name, pd, components, h, k)| CorpusEntry {
            name: name.into(),
            pd: pd.into(),
            components,
            oracle_homfly: Some(h.into()),
            oracle_kauffman: Some(k.into()),
        })
        .collect()
}

pub fn bundled_entry(name: &str) -> Result<CorpusEntry, Error> {
    bundled_corpus()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownName(name.into()))
}

// --- independent oracle evaluators ---------------------------------------------

/// Framed HOMFLY-PT by an unmemoized recursion that walks components from
/// their highest edges against the scan direction and always resolves the
/// last bad crossing.
pub fn oracle_homfly(d: &OrientedLinkDiagram) -> RationalFunction {
    match bad_crossings_reversed(&d.diagram, Some(d)).pop() {
        None => {
            let delta = RationalFunction::loop_value_oriented();
            delta
                .pow(d.diagram.component_count() as i64)
                .mul_monomial(1, d.writhe(), 0)
        }
        Some(c) => {
            let smoothed = oracle_homfly(&d.smooth_crossing(c));
            let switched = oracle_homfly(&d.switch_crossing(c));
            let step = RationalFunction::z().mul(&smoothed);
            if d.crossing_sign(c) > 0 {
                switched.add(&step)
            } else {
                switched.sub(&step)
            }
        }
    }
}

/// Framed Kauffman by the same independent strategy.
pub fn oracle_kauffman(d: &LinkDiagram) -> RationalFunction {
    match bad_crossings_reversed(d, None).pop() {
        None => {
            let delta = RationalFunction::loop_value_unoriented();
            let (comp_of, _) = d.edge_components();
            let o = d.orient();
            let w: i64 = (0..d.crossing_count())
                .filter(|&c| {
                    comp_of[d.edge_at(c, 0) as usize] == comp_of[d.edge_at(c, 1) as usize]
                })
                .map(|c| o.crossing_sign(c))
                .sum();
            delta
                .pow(d.component_count() as i64)
                .mul_monomial(1, 2 * w, -w)
        }
        Some(c) => {
            let b = oracle_kauffman(&d.smooth_crossing(c, crate::kauffman::SMOOTH_B));
            let a = oracle_kauffman(&d.smooth_crossing(c, crate::kauffman::SMOOTH_A));
            let switched = oracle_kauffman(&d.switch_crossing(c));
            switched.add(&RationalFunction::z().mul(&b.sub(&a)))
        }
    }
}

/// Bad crossings along the reversed walk: components taken from the highest
/// edge down, each walked from its highest edge toward the first stored end
/// (against the orientation when none is given).
fn bad_crossings_reversed(d: &LinkDiagram, oriented: Option<&OrientedLinkDiagram>) -> Vec<usize> {
    let (comp_of, n_comp) = d.edge_components();
    let mut start_of = vec![usize::MAX; n_comp];
    for e in 0..d.edge_count() {
        start_of[comp_of[e]] = e; // highest edge wins
    }
    start_of.reverse();
    let mut seen = vec![false; d.crossing_count()];
    let mut bad = Vec::new();
    for &e0 in &start_of {
        let head0 = match oriented {
            Some(o) => 1 - o.edge_tail(e0 as u32) as usize,
            None => 0,
        };
        let (mut e, mut head) = (e0, head0);
        loop {
            let (c, s) = d.edge_ends(e as u32)[head];
            if !seen[c] {
                seen[c] = true;
                if s % 2 == 0 {
                    bad.push(c);
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
    bad
}

// --- cross-checking -------------------------------------------------------------

pub struct CrossCheckOutcome {
    pub name: String,
    pub components_ok: bool,
    pub homfly_ok: bool,
    pub kauffman_ok: bool,
    pub identity_ok: bool,
    pub state_count: usize,
    pub elapsed: Duration,
    pub detail: Option<String>,
}

impl CrossCheckOutcome {
    pub fn pass(&self) -> bool {
        self.components_ok && self.homfly_ok && self.kauffman_ok && self.identity_ok
    }
}

pub struct CrossCheckReport {
    pub outcomes: Vec<CrossCheckOutcome>,
    pub pass: bool,
}

/// Check every bundled entry: engines against frozen oracles, and the state
/// expansion against the Kauffman value.
pub fn cross_check() -> Result<CrossCheckReport, Error> {
    cross_check_entries(&bundled_corpus())
}

pub fn cross_check_entries(entries: &[CorpusEntry]) -> Result<CrossCheckReport, Error> {
    let mut outcomes = Vec::new();
    for entry in entries {
        let d = entry.diagram()?;
        let components_ok = entry.components == usize::MAX || d.component_count() == entry.components;
        let p = evaluate_homfly(&d.orient());
        let f = evaluate_kauffman(&d);
        let mut detail = None;
        let homfly_ok = match entry.oracle_homfly_value()? {
            Some(oracle) => {
                let ok = p.equals(&oracle);
                if !ok {
                    detail = Some(format!("homfly: engine {p} vs oracle {oracle}"));
                }
                ok
            }
            None => true,
        };
        let kauffman_ok = match entry.oracle_kauffman_value()? {
            Some(oracle) => {
                let ok = f.equals(&oracle);
                if !ok {
                    detail
                        .get_or_insert_with(String::new)
                        .push_str(&format!(" kauffman: engine {f} vs oracle {oracle}"));
                }
                ok
            }
            None => true,
        };
        let report: VerifyReport = verify_identity(&d);
        outcomes.push(CrossCheckOutcome {
            name: entry.name.clone(),
            components_ok,
            homfly_ok,
            kauffman_ok,
            identity_ok: report.equal,
            state_count: report.state_count,
            elapsed: report.elapsed,
            detail,
        });
    }
    let pass = outcomes.iter().all(|o| o.pass());
    Ok(CrossCheckReport { outcomes, pass })
}

// --- corpus file format ----------------------------------------------------------

/// Parse the block-oriented corpus file format: per entry a `name:` line, a
/// `pd:` line, and optional `oracle_homfly:` / `oracle_kauffman:` lines.
pub fn parse_corpus_file(text: &str) -> Result<Vec<CorpusEntry>, Error> {
    let mut entries: Vec<CorpusEntry> = Vec::new();
    let mut current: Option<CorpusEntry> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| {
            Error::Parse(format!("corpus line {}: expected 'key: value'", lineno + 1))
        })?;
        let value = value.trim().to_string();
        match key.trim() {
            "name" => {
                if let Some(e) = current.take() {
                    entries.push(finish_entry(e)?);
                }
                current = Some(CorpusEntry {
                    name: value,
                    pd: String::new(),
                    components: usize::MAX,
                    oracle_homfly: None,
                    oracle_kauffman: None,
                });
            }
            key => {
                let entry = current.as_mut().ok_or_else(|| {
                    Error::Parse(format!("corpus line {}: '{key}' before 'name'", lineno + 1))
                })?;
                match key {
                    "pd" => entry.pd = value,
                    "oracle_homfly" => entry.oracle_homfly = Some(value),
                    "oracle_kauffman" => entry.oracle_kauffman = Some(value),
                    other => {
                        return Err(Error::Parse(format!(
                            "corpus line {}: unknown key '{other}'",
                            lineno + 1
                        )))
                    }
                }
            }
        }
    }
    if let Some(e) = current.take() {
        entries.push(finish_entry(e)?);
    }
    Ok(entries)
}

fn finish_entry(mut e: CorpusEntry) -> Result<CorpusEntry, Error> {
    let d = e.diagram()?;
    e.components = d.component_count();
    Ok(e)
}

/// Render entries in the corpus file format, recomputing oracle values with
/// the independent evaluators (the regeneration path for the frozen table).
pub fn render_corpus_with_oracles(entries: &[CorpusEntry]) -> Result<String, Error> {
    let mut out = String::new();
    for e in entries {
        let d = e.diagram()?;
        let p = oracle_homfly(&d.orient());
        let f = oracle_kauffman(&d);
        out.push_str(&format!(
            "name: {}\npd: {}\noracle_homfly: {}\noracle_kauffman: {}\n\n",
            e.name, e.pd, p, f
        ));
    }
    Ok(out)
}

// --- fixed regular-isotopy test pairs --------------------------------------------

fn braid(word: &[i64], strands: usize) -> LinkDiagram {
    crate::diagram::from_braid_word(word, strands).expect("fixed test braid")
}

/// Pairs differing by one kink, with the kink's sign.
pub fn r1_pairs() -> Vec<(LinkDiagram, LinkDiagram, i64)> {
    vec![
        (braid(&[1], 2), LinkDiagram::unknot(), 1),
        (braid(&[-1], 2), LinkDiagram::unknot(), -1),
        (braid(&[1, 1, 1, 2], 3), braid(&[1, 1, 1], 2), 1),
        (braid(&[1, 1, 1, -2], 3), braid(&[1, 1, 1], 2), -1),
    ]
}

/// Regular-isotopy-equivalent pairs related by a second Reidemeister move.
pub fn r2_pairs() -> Vec<(LinkDiagram, LinkDiagram)> {
    vec![
        (braid(&[1, -1], 2), LinkDiagram::new(Vec::new(), 2).unwrap()),
        (braid(&[1, 1, -1], 2), braid(&[1], 2)),
        (braid(&[1, 1, 1, -1], 2), braid(&[1, 1], 2)),
        (braid(&[-1, 1, 2, -2], 3), braid(&[], 3)),
    ]
}

/// Pairs related by a third Reidemeister move (braid relation).
pub fn r3_pairs() -> Vec<(LinkDiagram, LinkDiagram)> {
    vec![
        (braid(&[1, 2, 1], 3), braid(&[2, 1, 2], 3)),
        (braid(&[1, 2, 1, 1], 3), braid(&[2, 1, 2, 1], 3)),
        (braid(&[1, 2, -1], 3), braid(&[-2, 1, 2], 3)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_entries_are_wellformed() {
        let corpus = bundled_corpus();
        assert!(corpus.len() >= 13);
        for e in &corpus {
            let d = e.diagram().unwrap();
            assert_eq!(
                d.component_count(),
                e.components,
                "component count of {}",
                e.name
            );
        }
        // All distinct diagrams, except the Hopf pair: the unoriented Hopf
        // link is amphichiral, so the mirror PD codes coincide and only the
        // orientation classes differ.
        let codes: Vec<String> = corpus
            .iter()
            .map(|e| e.diagram().unwrap().canonical_code())
            .collect();
        for i in 0..codes.len() {
            for j in i + 1..codes.len() {
                let names = (corpus[i].name.as_str(), corpus[j].name.as_str());
                if names == ("hopf-positive", "hopf-negative") {
                    assert_eq!(codes[i], codes[j]);
                    continue;
                }
                assert_ne!(codes[i], codes[j], "{} vs {}", corpus[i].name, corpus[j].name);
            }
        }
    }

    #[test]
    fn hand_entered_codes_match_braid_closures() {
        use crate::diagram::from_braid_word;
        let pairs = [
            ("trefoil-right", vec![1i64, 1, 1], 2usize),
            ("trefoil-left", vec![-1, -1, -1], 2),
            ("hopf-positive", vec![1, 1], 2),
            ("hopf-negative", vec![-1, -1], 2),
            ("solomon", vec![1, 1, 1, 1], 2),
            ("5_1", vec![1, 1, 1, 1, 1], 2),
            ("figure-eight", vec![1, -2, 1, -2], 3),
        ];
        for (name, word, strands) in pairs {
            let entry = bundled_entry(name).unwrap();
            let hand = entry.diagram().unwrap();
            let from_braid = from_braid_word(&word, strands).unwrap();
            assert_eq!(
                hand.canonical_code(),
                from_braid.canonical_code(),
                "{name}"
            );
        }
    }

    #[test]
    fn oracles_agree_with_engines() {
        for e in bundled_corpus() {
            let d = e.diagram().unwrap();
            if d.crossing_count() > 4 {
                continue; // unmemoized oracle; keep the unit test quick
            }
            let o = d.orient();
            assert!(
                oracle_homfly(&o).equals(&evaluate_homfly(&o)),
                "homfly {}",
                e.name
            );
            assert!(
                oracle_kauffman(&d).equals(&evaluate_kauffman(&d)),
                "kauffman {}",
                e.name
            );
        }
    }

    #[test]
    fn perturbed_oracle_fails() {
        let mut entries = vec![bundled_entry("circle").unwrap()];
        entries[0].oracle_homfly = Some("q".into());
        let report = cross_check_entries(&entries).unwrap();
        assert!(!report.pass);
        assert!(!report.outcomes[0].homfly_ok);
        assert!(report.outcomes[0].kauffman_ok);
        assert!(report.outcomes[0].detail.is_some());
    }

    #[test]
    fn empty_corpus_passes() {
        let report = cross_check_entries(&[]).unwrap();
        assert!(report.pass);
        assert!(report.outcomes.is_empty());
        assert!(parse_corpus_file("").unwrap().is_empty());
    }

    #[test]
    fn corpus_file_roundtrip() {
        let text = "name: circle\npd: O\noracle_homfly: (a - a^-1) / (q - q^-1)\n\nname: two\npd: O O\n";
        let entries = parse_corpus_file(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].name, "circle");
        assert_eq!(entries[0].components, 1);
        assert_eq!(entries[1].components, 2);
        assert!(entries[1].oracle_homfly.is_none());
        let report = cross_check_entries(&entries).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn mirror_pairs_covariant_oracles() {
        // The Hopf pair is excluded: both PD texts give the same unoriented
        // diagram, so the canonical-orientation oracle values coincide rather
        // than swapping under inversion.
        for (a, b) in [
            ("trefoil-right", "trefoil-left"),
            ("curl-positive", "curl-negative"),
        ] {
            let ea = bundled_entry(a).unwrap();
            let eb = bundled_entry(b).unwrap();
            let pa = ea.oracle_homfly_value().unwrap().unwrap();
            let pb = eb.oracle_homfly_value().unwrap().unwrap();
            assert!(pa.invert_variables().equals(&pb), "homfly {a}/{b}");
            let fa = ea.oracle_kauffman_value().unwrap().unwrap();
            let fb = eb.oracle_kauffman_value().unwrap().unwrap();
            assert!(fa.invert_variables().equals(&fb), "kauffman {a}/{b}");
        }
    }
}
