//! Error handling: vowel-level reanalysis and a simple synizesis heuristic.
//!
//! When the plausibility check or the global analysis fails, the verse is
//! re-analysed without the syllabification result: each vowel (or greedily
//! detected diphthong) becomes one unit and the length rules are applied per
//! unit. If the transducer still rejects the verse, candidate analyses are
//! generated by fusing one adjacent in-word vowel pair at a time into a
//! single long unit, later pairs first. The candidate set is deliberately
//! narrow; multi-fusion verses stay out of reach.

use crate::config::ScanConfig;
use crate::greek::NormalizedVerse;
use crate::meter::ScansionMark;
use crate::rules::is_long_with;
use crate::search::PartialAnnotation;
use crate::syllable::{vowel_units, Syllable, VowelUnit};
use crate::Result;

/// Which recovery strategy produced an annotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecoveryStrategy {
    VowelReanalysis,
    Synizesis,
}

/// One candidate re-analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryAttempt {
    pub strategy: RecoveryStrategy,
    /// 1-based unit indices fused into one long unit (synizesis only).
    pub merged_positions: Option<(usize, usize)>,
    pub annotation: PartialAnnotation,
}

fn unit_to_syllable(unit: &VowelUnit, index: usize) -> Syllable {
    Syllable {
        onset: Vec::new(),
        nucleus: unit.chars.clone(),
        coda: Vec::new(),
        index,
        circumflexed: unit.circumflexed,
        iota_subscript: unit.iota_subscript,
        word_final: unit.word_final,
        followed_by: unit.followed_by.clone(),
    }
}

fn unit_marks(units: &[VowelUnit], cfg: &ScanConfig) -> Vec<ScansionMark> {
    let opts = cfg.rule_options();
    units
        .iter()
        .enumerate()
        .map(|(i, u)| {
            if is_long_with(&unit_to_syllable(u, i + 1), &opts) {
                ScansionMark::Long
            } else {
                ScansionMark::Unknown
            }
        })
        .collect()
}

/// Establish a length per vowel unit, ignoring any prior syllabification.
pub fn reanalyze_by_vowels(verse: &NormalizedVerse, cfg: &ScanConfig) -> Result<PartialAnnotation> {
    let units = vowel_units(verse, &cfg.diphthongs)?;
    Ok(PartialAnnotation::from_marks(unit_marks(&units, cfg)))
}

/// Candidate analyses with one vowel pair fused, ordered right to left.
///
/// A pair qualifies when its units are adjacent within one word with no
/// consonants between, the first unit is a lone candidate vowel (epsilon by
/// default), and neither unit carries a trema. The fused unit is always
/// marked long before re-entering global analysis.
pub fn apply_synizesis(verse: &NormalizedVerse, cfg: &ScanConfig) -> Result<Vec<RecoveryAttempt>> {
    let units = vowel_units(verse, &cfg.diphthongs)?;
    let base_marks = unit_marks(&units, cfg);

    let mut attempts = Vec::new();
    for i in (0..units.len().saturating_sub(1)).rev() {
        let first = &units[i];
        let second = &units[i + 1];
        let fusable = first.word == second.word
            && first.followed_by.is_empty()
            && first.chars.len() == 1
            && cfg.synizesis_first_vowels.contains(&first.chars[0])
            && !first.trema
            && !second.trema;
        if !fusable {
            continue;
        }
        let mut marks = Vec::with_capacity(base_marks.len() - 1);
        marks.extend_from_slice(&base_marks[..i]);
        marks.push(ScansionMark::Long);
        marks.extend_from_slice(&base_marks[i + 2..]);
        attempts.push(RecoveryAttempt {
            strategy: RecoveryStrategy::Synizesis,
            merged_positions: Some((i + 1, i + 2)),
            annotation: PartialAnnotation::from_marks(marks),
        });
    }
    Ok(attempts)
}
