//! Evaluation of scansion output: precision, recall, F-measure, Cohen's
//! kappa, and syllable-/verse-wise accuracy.
//!
//! A "correct" scansion means an exact variant-index match at whole-verse
//! granularity. False negatives are valid verses for which no scansion was
//! produced. Degenerate denominators surface as explicit undefined-metric
//! errors, never as silent zeros.

use std::collections::{BTreeMap, BTreeSet};

use crate::pipeline::{VerseRecord, VerseStatus};
use crate::{Error, Result};

/// Label used for verses without output when rejections take part in
/// agreement computations.
pub const REJECTED_LABEL: &str = "rejected";

/// Verse-level outcome counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionCounts {
    /// Verses scanned correctly.
    pub true_positives: usize,
    /// Verses scanned incorrectly.
    pub false_positives: usize,
    /// Valid verses with no output.
    pub false_negatives: usize,
}

/// Precision, recall and F-measure. F is undefined iff p = r = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrfScores {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: Option<f64>,
}

/// p = tp/(tp+fp), r = tp/(tp+fn), F = 2pr/(p+r).
pub fn compute_prf(c: ConfusionCounts) -> Result<PrfScores> {
    let p_den = c.true_positives + c.false_positives;
    let r_den = c.true_positives + c.false_negatives;
    if p_den == 0 {
        return Err(Error::UndefinedMetric("precision: no annotated verses"));
    }
    if r_den == 0 {
        return Err(Error::UndefinedMetric("recall: no valid verses"));
    }
    let precision = c.true_positives as f64 / p_den as f64;
    let recall = c.true_positives as f64 / r_den as f64;
    let f_measure = if precision + recall > 0.0 {
        Some(2.0 * precision * recall / (precision + recall))
    } else {
        None
    };
    Ok(PrfScores {
        precision,
        recall,
        f_measure,
    })
}

/// Per-verse label pairs from two annotators.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AgreementTable {
    pub pairs: Vec<(String, String)>,
}

impl AgreementTable {
    pub fn from_pairs(pairs: Vec<(String, String)>) -> Self {
        AgreementTable { pairs }
    }

    /// Fraction of pairs whose labels agree.
    pub fn observed_agreement(&self) -> f64 {
        if self.pairs.is_empty() {
            return 0.0;
        }
        let agree = self.pairs.iter().filter(|(a, b)| a == b).count();
        agree as f64 / self.pairs.len() as f64
    }

    /// Chance agreement from the per-category marginals.
    pub fn expected_agreement(&self) -> f64 {
        if self.pairs.is_empty() {
            return 0.0;
        }
        let n = self.pairs.len() as f64;
        let mut count_a: BTreeMap<&str, usize> = BTreeMap::new();
        let mut count_b: BTreeMap<&str, usize> = BTreeMap::new();
        for (a, b) in &self.pairs {
            *count_a.entry(a).or_default() += 1;
            *count_b.entry(b).or_default() += 1;
        }
        count_a
            .iter()
            .map(|(label, &ca)| {
                let cb = count_b.get(label).copied().unwrap_or(0);
                (ca as f64 / n) * (cb as f64 / n)
            })
            .sum()
    }
}

/// kappa = (A_o - A_e) / (1 - A_e).
pub fn compute_kappa(t: &AgreementTable) -> Result<f64> {
    if t.pairs.is_empty() {
        return Err(Error::UndefinedMetric("kappa: no paired annotations"));
    }
    let observed = t.observed_agreement();
    let expected = t.expected_agreement();
    if expected >= 1.0 {
        return Err(Error::UndefinedMetric("kappa: expected agreement is 1"));
    }
    Ok((observed - expected) / (1.0 - expected))
}

/// Unit of accuracy computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Granularity {
    Syllable,
    Verse,
}

/// Fraction of exactly matching units over aligned per-verse sequences.
///
/// Verse granularity requires the full sequence to match. At syllable
/// granularity a length mismatch counts the whole verse wrong while its
/// gold units stay in the denominator.
pub fn compute_accuracy(pred: &[Vec<String>], gold: &[Vec<String>], granularity: Granularity) -> f64 {
    match granularity {
        Granularity::Verse => {
            if gold.is_empty() {
                return 0.0;
            }
            let hits = pred
                .iter()
                .zip(gold.iter())
                .filter(|(p, g)| p == g)
                .count();
            hits as f64 / gold.len() as f64
        }
        Granularity::Syllable => {
            let total: usize = gold.iter().map(|g| g.len()).sum();
            if total == 0 {
                return 0.0;
            }
            let mut hits = 0usize;
            for (p, g) in pred.iter().zip(gold.iter()) {
                if p.len() == g.len() {
                    hits += p.iter().zip(g.iter()).filter(|(a, b)| a == b).count();
                }
            }
            hits as f64 / total as f64
        }
    }
}

/// A verse id with its annotation label; None means no output (rejection).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledVerse {
    pub id: String,
    pub label: Option<String>,
}

impl LabeledVerse {
    pub fn from_record(r: &VerseRecord) -> Self {
        LabeledVerse {
            id: r.id.clone(),
            label: if r.status == VerseStatus::Ok {
                r.variant.clone()
            } else {
                None
            },
        }
    }
}

/// One disagreement between two annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerseDiff {
    pub id: String,
    pub a: Option<String>,
    pub b: Option<String>,
}

/// Agreement report over two annotation files.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub counts: ConfusionCounts,
    pub table: AgreementTable,
    pub kappa: Option<f64>,
    pub diffs: Vec<VerseDiff>,
    pub only_in_a: Vec<String>,
    pub only_in_b: Vec<String>,
}

/// Quantify the agreement between two annotations, matching verses by id.
///
/// Confusion counts treat annotation B as the reference. When
/// `include_rejections` is set, verses both sides rejected count as
/// agreement under the dedicated rejection label; otherwise pairs with a
/// rejection on either side are left out of the kappa table. Disagreements
/// (including output-vs-rejection) are listed in `diffs`.
pub fn compare_annotations(
    a: &[LabeledVerse],
    b: &[LabeledVerse],
    include_rejections: bool,
) -> ComparisonReport {
    let b_by_id: BTreeMap<&str, &LabeledVerse> =
        b.iter().map(|v| (v.id.as_str(), v)).collect();
    let a_ids: BTreeSet<&str> = a.iter().map(|v| v.id.as_str()).collect();

    let mut pairs = Vec::new();
    let mut counts = ConfusionCounts::default();
    let mut diffs = Vec::new();
    let mut only_in_a = Vec::new();

    for va in a {
        let Some(vb) = b_by_id.get(va.id.as_str()) else {
            only_in_a.push(va.id.clone());
            continue;
        };
        match (&va.label, &vb.label) {
            (Some(la), Some(lb)) => {
                pairs.push((la.clone(), lb.clone()));
                if la == lb {
                    counts.true_positives += 1;
                } else {
                    counts.false_positives += 1;
                    diffs.push(VerseDiff {
                        id: va.id.clone(),
                        a: Some(la.clone()),
                        b: Some(lb.clone()),
                    });
                }
            }
            (Some(la), None) => {
                if include_rejections {
                    pairs.push((la.clone(), REJECTED_LABEL.to_string()));
                }
                counts.false_positives += 1;
                diffs.push(VerseDiff {
                    id: va.id.clone(),
                    a: Some(la.clone()),
                    b: None,
                });
            }
            (None, Some(lb)) => {
                if include_rejections {
                    pairs.push((REJECTED_LABEL.to_string(), lb.clone()));
                }
                counts.false_negatives += 1;
                diffs.push(VerseDiff {
                    id: va.id.clone(),
                    a: None,
                    b: Some(lb.clone()),
                });
            }
            (None, None) => {
                if include_rejections {
                    pairs.push((REJECTED_LABEL.to_string(), REJECTED_LABEL.to_string()));
                }
            }
        }
    }

    let only_in_b = b
        .iter()
        .filter(|v| !a_ids.contains(v.id.as_str()))
        .map(|v| v.id.clone())
        .collect();

    let table = AgreementTable::from_pairs(pairs);
    let kappa = compute_kappa(&table).ok();
    ComparisonReport {
        counts,
        table,
        kappa,
        diffs,
        only_in_a,
        only_in_b,
    }
}

/// Verse-level evaluation of predictions against a gold annotation.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub counts: ConfusionCounts,
    pub prf: Option<PrfScores>,
    /// Fraction of gold verses whose variant matched exactly.
    pub verse_accuracy: f64,
    /// Syllable-wise syllabification accuracy.
    pub syllable_accuracy: f64,
    pub diffs: Vec<VerseDiff>,
}

/// Score predicted records against gold records, matched by verse id.
pub fn evaluate_against_gold(pred: &[VerseRecord], gold: &[VerseRecord]) -> EvaluationReport {
    let pred_by_id: BTreeMap<&str, &VerseRecord> =
        pred.iter().map(|r| (r.id.as_str(), r)).collect();

    let mut counts = ConfusionCounts::default();
    let mut diffs = Vec::new();
    let mut pred_syllables = Vec::new();
    let mut gold_syllables = Vec::new();

    for g in gold {
        let p = pred_by_id.get(g.id.as_str());
        let gold_label = if g.status == VerseStatus::Ok {
            g.variant.clone()
        } else {
            None
        };
        let pred_label = p.and_then(|r| {
            if r.status == VerseStatus::Ok {
                r.variant.clone()
            } else {
                None
            }
        });
        match (&pred_label, &gold_label) {
            (Some(pl), Some(gl)) if pl == gl => counts.true_positives += 1,
            (Some(_), _) => {
                counts.false_positives += 1;
                diffs.push(VerseDiff {
                    id: g.id.clone(),
                    a: pred_label.clone(),
                    b: gold_label.clone(),
                });
            }
            (None, Some(_)) => {
                counts.false_negatives += 1;
                diffs.push(VerseDiff {
                    id: g.id.clone(),
                    a: None,
                    b: gold_label.clone(),
                });
            }
            (None, None) => {}
        }
        gold_syllables.push(g.syllables.clone());
        pred_syllables.push(p.map(|r| r.syllables.clone()).unwrap_or_default());
    }

    let verse_accuracy = if gold.is_empty() {
        0.0
    } else {
        counts.true_positives as f64 / gold.len() as f64
    };
    let syllable_accuracy =
        compute_accuracy(&pred_syllables, &gold_syllables, Granularity::Syllable);

    EvaluationReport {
        counts,
        prf: compute_prf(counts).ok(),
        verse_accuracy,
        syllable_accuracy,
        diffs,
    }
}
