//! Targeted local search for spondees.
//!
//! A deterministic automaton visits the feet in a configurable order (foot 2
//! first, where spondees are most likely) and scans a per-foot window of
//! syllables for two adjacent safely-long syllables. Windows are the minimal
//! ranges consistent with the syllable count and the spondees confirmed so
//! far, so they narrow as the search progresses. Once the required number of
//! spondees is found the remaining feet are forced dactyls; rule-confirmed
//! longs are never overwritten, so a conflicting fill surfaces as a
//! plausibility failure downstream.
//!
//! Verses of 12 and 17 syllables have a fully forced scheme and use a simple
//! automaton; counts outside 12-17 route to error handling.

use std::collections::BTreeMap;

use crate::config::ScanConfig;
use crate::meter::{all_variants, required_spondees, variant_with_spondees, ScansionMark, Variant};
use crate::rules::{is_long_with, RuleOptions};
use crate::syllable::Syllable;
use crate::{Error, Result};

/// 1-based syllable indices of a confirmed adjacent pair.
pub type SpondeePair = (usize, usize);

/// Confirmed spondees by 1-based foot.
pub type ConfirmedSpondees = BTreeMap<usize, SpondeePair>;

/// Per-syllable marks discovered so far, plus the confirmed spondees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAnnotation {
    /// One mark per syllable, each Long, Short or Unknown.
    pub marks: Vec<ScansionMark>,
    pub spondee_feet: ConfirmedSpondees,
}

impl PartialAnnotation {
    pub fn all_unknown(len: usize) -> Self {
        PartialAnnotation {
            marks: vec![ScansionMark::Unknown; len],
            spondee_feet: ConfirmedSpondees::new(),
        }
    }

    pub fn from_marks(marks: Vec<ScansionMark>) -> Self {
        PartialAnnotation {
            marks,
            spondee_feet: ConfirmedSpondees::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.marks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty()
    }
}

/// States of the spondee-search automaton. `Accept`, `HandOff` and `Reject`
/// are the exits: scheme complete, partial annotation to global analysis,
/// and error handling respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutomatonState {
    Start,
    Search(usize),
    Found(usize),
    NoPair(usize),
    Fill,
    Accept,
    HandOff,
    Reject,
}

impl std::fmt::Display for AutomatonState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AutomatonState::Start => write!(f, "start"),
            AutomatonState::Search(foot) => write!(f, "search_foot_{foot}"),
            AutomatonState::Found(foot) => write!(f, "found_foot_{foot}"),
            AutomatonState::NoPair(foot) => write!(f, "no_pair_foot_{foot}"),
            AutomatonState::Fill => write!(f, "fill"),
            AutomatonState::Accept => write!(f, "accept"),
            AutomatonState::HandOff => write!(f, "hand_off"),
            AutomatonState::Reject => write!(f, "reject"),
        }
    }
}

/// What the local search produced.
#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    /// Full mark sequence (final mark anceps); goes to the plausibility check.
    Complete(Vec<ScansionMark>),
    /// Not enough spondees found; goes to global analysis.
    Partial(PartialAnnotation),
    /// Syllable count admits no variant; goes to error handling.
    NotHexameter(PartialAnnotation),
    /// Confirmed longs contradict every variant; goes to error handling.
    Contradiction(PartialAnnotation),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalSearchResult {
    pub outcome: SearchOutcome,
    /// Visited automaton states, for diagnostics.
    pub trace: Vec<AutomatonState>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutomatonKind {
    /// Counts 13-16: windowed spondee search.
    Searcher,
    /// Counts 12 and 17: the scheme is fully forced.
    Forced,
    /// Any other count: route to error handling.
    OutOfRange,
}

/// A per-syllable-count search automaton. The transition structure is fixed;
/// `target_spondees` and `search_order` instantiate it for one verse length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpondeeAutomaton {
    pub syllable_count: usize,
    pub target_spondees: usize,
    pub search_order: Vec<usize>,
    pub kind: AutomatonKind,
}

/// Pick the automaton that handles this syllable count.
pub fn select_automaton(syllable_count: usize, search_order: &[usize]) -> SpondeeAutomaton {
    let kind = match syllable_count {
        13..=16 => AutomatonKind::Searcher,
        12 | 17 => AutomatonKind::Forced,
        _ => AutomatonKind::OutOfRange,
    };
    SpondeeAutomaton {
        syllable_count,
        target_spondees: required_spondees(syllable_count).unwrap_or(0),
        search_order: search_order.to_vec(),
        kind,
    }
}

/// Variants of the right length whose layout honours every confirmed pair.
fn consistent_variants(
    syllable_count: usize,
    confirmed: &ConfirmedSpondees,
) -> Vec<&'static Variant> {
    all_variants()
        .iter()
        .filter(|v| v.syllable_count() == syllable_count)
        .filter(|v| {
            confirmed.iter().all(|(&foot, &pair)| {
                v.is_spondee(foot) && v.foot_ranges()[foot - 1] == pair
            })
        })
        .collect()
}

/// Could `pair` be foot `foot`'s spondee in some variant consistent with the
/// syllable count and the spondees confirmed so far?
fn pair_consistent(
    syllable_count: usize,
    foot: usize,
    pair: SpondeePair,
    confirmed: &ConfirmedSpondees,
) -> bool {
    let mut extended = confirmed.clone();
    extended.insert(foot, pair);
    !consistent_variants(syllable_count, &extended).is_empty()
}

/// The minimal contiguous 1-based syllable range that can contain foot
/// `foot` under any variant consistent with the count and the confirmed
/// spondees. Fails when the confirmed set contradicts every variant.
pub fn foot_window(
    syllable_count: usize,
    foot: usize,
    confirmed: &ConfirmedSpondees,
) -> Result<(usize, usize)> {
    let variants = consistent_variants(syllable_count, confirmed);
    if variants.is_empty() {
        return Err(Error::Contradiction);
    }
    let ranges = variants.iter().map(|v| v.foot_ranges()[foot - 1]);
    let lo = ranges.clone().map(|r| r.0).min().unwrap();
    let hi = ranges.map(|r| r.1).max().unwrap();
    Ok((lo, hi))
}

/// Result of scanning one window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FootSearch {
    pub found: Option<SpondeePair>,
    /// Every syllable the rules confirmed long while scanning, 1-based.
    pub longs: Vec<usize>,
}

/// Scan adjacent pairs inside `window` left to right. The first pair whose
/// members are both safely long and that `accept` admits is the spondee;
/// individual longs encountered on the way are recorded either way.
pub fn search_spondee_in_foot(
    syllables: &[Syllable],
    window: (usize, usize),
    opts: &RuleOptions,
    accept: impl Fn(SpondeePair) -> bool,
) -> FootSearch {
    let (lo, hi) = window;
    let hi = hi.min(syllables.len());
    let mut longs = Vec::new();
    let mut long_at = |i: usize| {
        let long = is_long_with(&syllables[i - 1], opts);
        if long && !longs.contains(&i) {
            longs.push(i);
        }
        long
    };
    let mut found = None;
    for i in lo..hi {
        let first = long_at(i);
        let second = long_at(i + 1);
        if first && second && accept((i, i + 1)) {
            found = Some((i, i + 1));
            break;
        }
    }
    FootSearch { found, longs }
}

/// Fill a mark vector with a variant's scheme without overwriting any
/// rule-confirmed Long. The final mark is always anceps.
fn fill_preserving_longs(marks: &[ScansionMark], variant: &Variant) -> Vec<ScansionMark> {
    variant
        .marks()
        .iter()
        .zip(marks.iter())
        .map(|(&scheme, &noted)| {
            if noted == ScansionMark::Long && scheme == ScansionMark::Short {
                ScansionMark::Long
            } else {
                scheme
            }
        })
        .collect()
}

impl SpondeeAutomaton {
    /// Run the automaton over one verse.
    pub fn run(&self, syllables: &[Syllable], opts: &RuleOptions) -> LocalSearchResult {
        let n = syllables.len();
        debug_assert_eq!(n, self.syllable_count);
        let mut trace = vec![AutomatonState::Start];

        let rule_marks = || -> Vec<ScansionMark> {
            syllables
                .iter()
                .map(|s| {
                    if is_long_with(s, opts) {
                        ScansionMark::Long
                    } else {
                        ScansionMark::Unknown
                    }
                })
                .collect()
        };

        match self.kind {
            AutomatonKind::OutOfRange => {
                trace.push(AutomatonState::Reject);
                LocalSearchResult {
                    outcome: SearchOutcome::NotHexameter(PartialAnnotation::from_marks(
                        rule_marks(),
                    )),
                    trace,
                }
            }
            AutomatonKind::Forced => {
                // one variant fits this count; apply the rules everywhere and
                // fill the forced scheme around them
                let variant = all_variants()
                    .iter()
                    .find(|v| v.syllable_count() == n)
                    .expect("counts 12 and 17 have a variant");
                trace.push(AutomatonState::Fill);
                trace.push(AutomatonState::Accept);
                LocalSearchResult {
                    outcome: SearchOutcome::Complete(fill_preserving_longs(
                        &rule_marks(),
                        variant,
                    )),
                    trace,
                }
            }
            AutomatonKind::Searcher => self.run_searcher(syllables, opts, trace),
        }
    }

    fn run_searcher(
        &self,
        syllables: &[Syllable],
        opts: &RuleOptions,
        mut trace: Vec<AutomatonState>,
    ) -> LocalSearchResult {
        let n = syllables.len();
        let mut marks = vec![ScansionMark::Unknown; n];
        let mut confirmed = ConfirmedSpondees::new();

        for &foot in &self.search_order {
            if confirmed.len() == self.target_spondees {
                break;
            }
            trace.push(AutomatonState::Search(foot));
            let window = match foot_window(n, foot, &confirmed) {
                Ok(w) => w,
                Err(_) => {
                    trace.push(AutomatonState::Reject);
                    return LocalSearchResult {
                        outcome: SearchOutcome::Contradiction(PartialAnnotation {
                            marks,
                            spondee_feet: confirmed,
                        }),
                        trace,
                    };
                }
            };
            let result = search_spondee_in_foot(syllables, window, opts, |pair| {
                pair_consistent(n, foot, pair, &confirmed)
            });
            for &i in &result.longs {
                marks[i - 1] = ScansionMark::Long;
            }
            match result.found {
                Some(pair) => {
                    confirmed.insert(foot, pair);
                    trace.push(AutomatonState::Found(foot));
                }
                None => trace.push(AutomatonState::NoPair(foot)),
            }
        }

        if confirmed.len() == self.target_spondees {
            trace.push(AutomatonState::Fill);
            let feet: Vec<usize> = confirmed.keys().copied().collect();
            let variant = variant_with_spondees(&feet).expect("a variant exists for every set");
            let positions_match = confirmed
                .iter()
                .all(|(&foot, &pair)| variant.foot_ranges()[foot - 1] == pair);
            if !positions_match {
                trace.push(AutomatonState::Reject);
                return LocalSearchResult {
                    outcome: SearchOutcome::Contradiction(PartialAnnotation {
                        marks,
                        spondee_feet: confirmed,
                    }),
                    trace,
                };
            }
            trace.push(AutomatonState::Accept);
            LocalSearchResult {
                outcome: SearchOutcome::Complete(fill_preserving_longs(&marks, variant)),
                trace,
            }
        } else {
            trace.push(AutomatonState::HandOff);
            LocalSearchResult {
                outcome: SearchOutcome::Partial(PartialAnnotation {
                    marks,
                    spondee_feet: confirmed,
                }),
                trace,
            }
        }
    }
}

/// Select and run the automaton for this verse.
pub fn run_local_search(syllables: &[Syllable], cfg: &ScanConfig) -> LocalSearchResult {
    let automaton = select_automaton(syllables.len(), &cfg.search_order);
    automaton.run(syllables, &cfg.rule_options())
}
