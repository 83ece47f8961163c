//! Per-verse scansion pipeline and corpus processing.
//!
//! Each verse runs through normalize, syllabify, local search, then either
//! the plausibility check (complete local result) or the transducer (partial
//! result). On failure the verse enters error handling: vowel-level
//! reanalysis, then synizesis attempts, each re-entering global analysis.
//! A completion is accepted only when it contradicts none of the determined
//! input marks; the transducer may still rank corrected paths, but a verse
//! whose best completion needs corrections counts as implausible and moves
//! on to recovery.
//!
//! Verses are independent; corpus scans may fan out to worker threads while
//! output order stays the input order.

use std::collections::BTreeMap;
use std::io::BufRead;

use crate::config::ScanConfig;
use crate::greek::normalize;
use crate::meter::{plausibility_check, render_marks, FootPattern};
use crate::recovery::{apply_synizesis, reanalyze_by_vowels, RecoveryStrategy};
use crate::search::{run_local_search, AutomatonState, SearchOutcome};
use crate::syllable::syllabify_with;
use crate::transducer::{build_transducer, complete_scansion, Completion, WeightedTransducer};
use crate::{Error, Result};

/// Outcome class of one verse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerseStatus {
    /// Scanned to a valid variant.
    Ok,
    /// No valid hexameter analysis (a fragment, for instance).
    Rejected,
    /// The text could not be processed at all.
    Unprocessable,
}

impl VerseStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            VerseStatus::Ok => "ok",
            VerseStatus::Rejected => "rejected",
            VerseStatus::Unprocessable => "unprocessable",
        }
    }
}

/// Pipeline step that produced the accepted result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Local,
    Global,
    Recovery,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Local => "local",
            Stage::Global => "global",
            Stage::Recovery => "recovery",
        }
    }
}

/// How much of the pipeline to run. `Complete` is the production setting;
/// the reduced modes exist for ablation studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineMode {
    LocalOnly,
    LocalGlobal,
    Complete,
}

/// Annotated result for one verse.
#[derive(Debug, Clone, PartialEq)]
pub struct VerseRecord {
    pub id: String,
    pub raw: String,
    pub status: VerseStatus,
    /// Two-digit variant index; None unless status is ok.
    pub variant: Option<String>,
    /// Rendered scansion marks; empty unless status is ok.
    pub marks: String,
    /// Rendered syllable segmentation.
    pub syllables: Vec<String>,
    pub stage: Option<Stage>,
    pub notes: String,
}

impl VerseRecord {
    fn failure(id: &str, raw: &str, status: VerseStatus, notes: String) -> Self {
        VerseRecord {
            id: id.to_string(),
            raw: raw.to_string(),
            status,
            variant: None,
            marks: String::new(),
            syllables: Vec::new(),
            stage: None,
            notes,
        }
    }
}

/// A ready-to-run scansion engine: validated config plus the built
/// transducer, immutable and shareable across worker threads.
#[derive(Debug, Clone)]
pub struct Engine {
    cfg: ScanConfig,
    transducer: WeightedTransducer,
}

/// A completion the pipeline accepts: one that exists and contradicts no
/// determined input mark.
fn plausible(completion: Option<Completion>) -> Option<Completion> {
    completion.filter(|c| c.corrections == 0)
}

impl Engine {
    pub fn new(cfg: ScanConfig) -> Result<Engine> {
        cfg.validate()?;
        let transducer = build_transducer(&cfg.weights)?;
        Ok(Engine { cfg, transducer })
    }

    pub fn config(&self) -> &ScanConfig {
        &self.cfg
    }

    pub fn transducer(&self) -> &WeightedTransducer {
        &self.transducer
    }

    /// Scan one verse through the full pipeline.
    pub fn scan_verse(&self, id: &str, raw: &str) -> VerseRecord {
        self.scan_verse_mode(id, raw, PipelineMode::Complete).0
    }

    /// Scan one verse and keep the local-search state trace.
    pub fn scan_verse_traced(&self, id: &str, raw: &str) -> (VerseRecord, Vec<AutomatonState>) {
        self.scan_verse_mode(id, raw, PipelineMode::Complete)
    }

    /// Scan one verse, stopping after the given pipeline stage.
    pub fn scan_verse_mode(
        &self,
        id: &str,
        raw: &str,
        mode: PipelineMode,
    ) -> (VerseRecord, Vec<AutomatonState>) {
        let verse = match normalize(raw) {
            Ok(v) => v,
            Err(e) => {
                return (
                    VerseRecord::failure(id, raw, VerseStatus::Unprocessable, e.to_string()),
                    Vec::new(),
                )
            }
        };
        let syllables = match syllabify_with(&verse, &self.cfg.diphthongs) {
            Ok(s) => s,
            Err(e) => {
                return (
                    VerseRecord::failure(id, raw, VerseStatus::Unprocessable, e.to_string()),
                    Vec::new(),
                )
            }
        };
        let rendered: Vec<String> = syllables.iter().map(|s| s.text()).collect();

        let local = run_local_search(&syllables, &self.cfg);
        let trace = local.trace.clone();

        let mut record = VerseRecord {
            id: id.to_string(),
            raw: raw.to_string(),
            status: VerseStatus::Rejected,
            variant: None,
            marks: String::new(),
            syllables: rendered,
            stage: None,
            notes: String::new(),
        };

        match local.outcome {
            SearchOutcome::Complete(marks) => {
                if let Ok(Some(variant)) = plausibility_check(&marks) {
                    record.status = VerseStatus::Ok;
                    record.variant = Some(variant.index());
                    record.marks = render_marks(&marks);
                    record.stage = Some(Stage::Local);
                    return (record, trace);
                }
                // plausibility failure: fall through to error handling
            }
            SearchOutcome::Partial(annotation) => {
                if mode == PipelineMode::LocalOnly {
                    return (record, trace);
                }
                if let Some(c) = plausible(complete_scansion(&self.transducer, &annotation)) {
                    record.status = VerseStatus::Ok;
                    record.variant = Some(c.variant.index());
                    record.marks = render_marks(&c.marks);
                    record.stage = Some(Stage::Global);
                    return (record, trace);
                }
                // global analysis failure: fall through to error handling
            }
            SearchOutcome::NotHexameter(_) | SearchOutcome::Contradiction(_) => {}
        }

        if mode != PipelineMode::Complete {
            return (record, trace);
        }

        // error handling: vowel-level reanalysis, then synizesis attempts
        let Ok(annotation) = reanalyze_by_vowels(&verse, &self.cfg) else {
            record.status = VerseStatus::Unprocessable;
            record.notes = Error::NoVowels.to_string();
            return (record, trace);
        };
        if let Some(c) = plausible(complete_scansion(&self.transducer, &annotation)) {
            record.status = VerseStatus::Ok;
            record.variant = Some(c.variant.index());
            record.marks = render_marks(&c.marks);
            record.stage = Some(Stage::Recovery);
            record.notes = "vowel reanalysis".to_string();
            return (record, trace);
        }
        if let Ok(attempts) = apply_synizesis(&verse, &self.cfg) {
            for attempt in attempts {
                if let Some(c) = plausible(complete_scansion(&self.transducer, &attempt.annotation))
                {
                    let (i, j) = attempt.merged_positions.expect("synizesis merges a pair");
                    debug_assert_eq!(attempt.strategy, RecoveryStrategy::Synizesis);
                    record.status = VerseStatus::Ok;
                    record.variant = Some(c.variant.index());
                    record.marks = render_marks(&c.marks);
                    record.stage = Some(Stage::Recovery);
                    record.notes = format!("synizesis: fused units {i}+{j}");
                    return (record, trace);
                }
            }
        }
        (record, trace)
    }

    /// Scan many verses, preserving input order. `workers` > 1 fans the
    /// verses out to scoped threads in contiguous chunks.
    pub fn scan_lines(&self, lines: &[(String, String)], workers: usize) -> Vec<VerseRecord> {
        if workers <= 1 || lines.len() < 2 {
            return lines
                .iter()
                .map(|(id, raw)| self.scan_verse(id, raw))
                .collect();
        }
        let workers = workers.min(lines.len());
        let chunk = lines.len().div_ceil(workers);
        let mut results: Vec<Option<VerseRecord>> = vec![None; lines.len()];
        std::thread::scope(|scope| {
            for (slot, work) in results.chunks_mut(chunk).zip(lines.chunks(chunk)) {
                scope.spawn(move || {
                    for (out, (id, raw)) in slot.iter_mut().zip(work.iter()) {
                        *out = Some(self.scan_verse(id, raw));
                    }
                });
            }
        });
        results.into_iter().map(|r| r.expect("every slot filled")).collect()
    }
}

/// Read `id<TAB>verse` or bare-verse lines; blank lines are skipped and
/// missing ids become 1-based line numbers.
pub fn parse_input(reader: impl BufRead) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match line.split_once('\t') {
            Some((id, raw)) => out.push((id.trim().to_string(), raw.to_string())),
            None => out.push(((lineno + 1).to_string(), line)),
        }
    }
    Ok(out)
}

/// Corpus-level counts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CorpusSummary {
    pub total: usize,
    pub ok: usize,
    pub rejected: usize,
    pub unprocessable: usize,
    pub by_stage: BTreeMap<&'static str, usize>,
    /// Dactyls observed per foot 1-5 over accepted verses.
    pub foot_dactyls: [usize; 5],
}

impl CorpusSummary {
    pub fn from_records(records: &[VerseRecord]) -> Self {
        let mut summary = CorpusSummary {
            total: records.len(),
            ..CorpusSummary::default()
        };
        for r in records {
            match r.status {
                VerseStatus::Ok => summary.ok += 1,
                VerseStatus::Rejected => summary.rejected += 1,
                VerseStatus::Unprocessable => summary.unprocessable += 1,
            }
            if let Some(stage) = r.stage {
                *summary.by_stage.entry(stage.as_str()).or_default() += 1;
            }
            if let Some(v) = r.variant.as_deref().and_then(crate::meter::variant_by_index) {
                for foot in 1..=5 {
                    if v.body()[foot - 1] == FootPattern::Dactyl {
                        summary.foot_dactyls[foot - 1] += 1;
                    }
                }
            }
        }
        summary
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "verses: {}  ok: {}  rejected: {}  unprocessable: {}\n",
            self.total, self.ok, self.rejected, self.unprocessable
        );
        out.push_str("stages:");
        for (stage, count) in &self.by_stage {
            out.push_str(&format!("  {stage}: {count}"));
        }
        out.push('\n');
        out.push_str("dactyl frequency by foot:");
        for foot in 1..=5 {
            let freq = if self.ok > 0 {
                self.foot_dactyls[foot - 1] as f64 / self.ok as f64
            } else {
                0.0
            };
            out.push_str(&format!("  {foot}: {freq:.3}"));
        }
        out.push('\n');
        out
    }
}

/// Scan a whole input stream and summarize it.
pub fn scan_corpus(
    engine: &Engine,
    reader: impl BufRead,
    workers: usize,
) -> Result<(Vec<VerseRecord>, CorpusSummary)> {
    let lines = parse_input(reader)?;
    let records = engine.scan_lines(&lines, workers);
    let summary = CorpusSummary::from_records(&records);
    Ok((records, summary))
}

const TSV_HEADER: &str = "id\tstatus\tvariant\tmarks\tsyllables\tstage\tnotes";

fn field_or_dash(s: &str) -> &str {
    if s.is_empty() {
        "-"
    } else {
        s
    }
}

/// One record as a TSV line: id, status, variant, marks, syllables
/// (pipe-separated), stage, notes. Empty fields render as '-'.
pub fn record_to_tsv(r: &VerseRecord) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        r.id,
        r.status.as_str(),
        field_or_dash(r.variant.as_deref().unwrap_or("")),
        field_or_dash(&r.marks),
        field_or_dash(&r.syllables.join("|")),
        field_or_dash(r.stage.map(Stage::as_str).unwrap_or("")),
        field_or_dash(&r.notes.replace('\t', " ")),
    )
}

/// The same fields in a labelled block, one per line, blank-line separated.
pub fn record_to_structured(r: &VerseRecord) -> String {
    format!(
        "id: {}\nstatus: {}\nvariant: {}\nmarks: {}\nsyllables: {}\nstage: {}\nnotes: {}\n",
        r.id,
        r.status.as_str(),
        field_or_dash(r.variant.as_deref().unwrap_or("")),
        field_or_dash(&r.marks),
        field_or_dash(&r.syllables.join("|")),
        field_or_dash(r.stage.map(Stage::as_str).unwrap_or("")),
        field_or_dash(&r.notes),
    )
}

/// Render records in the given format ("tsv" or "structured"), with header.
pub fn render_records(records: &[VerseRecord], structured: bool) -> String {
    if structured {
        records
            .iter()
            .map(record_to_structured)
            .collect::<Vec<_>>()
            .join("\n")
    } else {
        let mut out = String::from(TSV_HEADER);
        out.push('\n');
        for r in records {
            out.push_str(&record_to_tsv(r));
            out.push('\n');
        }
        out
    }
}

fn parse_status(s: &str, line: usize) -> Result<VerseStatus> {
    match s {
        "ok" => Ok(VerseStatus::Ok),
        "rejected" => Ok(VerseStatus::Rejected),
        "unprocessable" => Ok(VerseStatus::Unprocessable),
        other => Err(Error::Parse {
            line,
            message: format!("unknown status '{other}'"),
        }),
    }
}

fn parse_stage(s: &str, line: usize) -> Result<Option<Stage>> {
    match s {
        "-" | "" => Ok(None),
        "local" => Ok(Some(Stage::Local)),
        "global" => Ok(Some(Stage::Global)),
        "recovery" => Ok(Some(Stage::Recovery)),
        other => Err(Error::Parse {
            line,
            message: format!("unknown stage '{other}'"),
        }),
    }
}

/// Parse TSV produced by [`render_records`] back into records.
pub fn parse_records(text: &str) -> Result<Vec<VerseRecord>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.is_empty() || line == TSV_HEADER || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 7 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected 7 tab-separated fields, got {}", fields.len()),
            });
        }
        let undash = |s: &str| if s == "-" { String::new() } else { s.to_string() };
        let variant = undash(fields[2]);
        let syllables = undash(fields[4]);
        out.push(VerseRecord {
            id: fields[0].to_string(),
            raw: String::new(),
            status: parse_status(fields[1], lineno)?,
            variant: (!variant.is_empty()).then_some(variant),
            marks: undash(fields[3]),
            syllables: if syllables.is_empty() {
                Vec::new()
            } else {
                syllables.split('|').map(String::from).collect()
            },
            stage: parse_stage(fields[5], lineno)?,
            notes: undash(fields[6]),
        })
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine() -> Engine {
        Engine::new(ScanConfig::default()).unwrap()
    }

    #[test]
    fn forced_twelve_syllable_verse_is_local() {
        let r = engine().scan_verse("v", "ηη ωω ηη ωω ηη ωω");
        assert_eq!(r.status, VerseStatus::Ok);
        assert_eq!(r.variant.as_deref(), Some("50"));
        assert_eq!(r.stage, Some(Stage::Local));
        assert_eq!(r.marks, "-----------X");
    }

    #[test]
    fn sparse_rule_hits_resolve_globally() {
        // fourteen ambiguous syllables: no rule fires, the transducer picks
        // the cheapest three-spondee variant
        let r = engine().scan_verse("v", "τα με ρο κι τα με ρο κι τα με ρο κι τα με");
        assert_eq!(r.status, VerseStatus::Ok);
        assert_eq!(r.stage, Some(Stage::Global));
        assert_eq!(r.marks.len(), 14);
        assert!(r.marks.ends_with('X'));
    }

    #[test]
    fn fragment_is_rejected() {
        let r = engine().scan_verse("v", "τα με ρο κι τα με ρο κι τα");
        assert_eq!(r.status, VerseStatus::Rejected);
        assert_eq!(r.variant, None);
        assert!(r.marks.is_empty());
        assert_eq!(r.stage, None);
    }

    #[test]
    fn unreadable_text_is_unprocessable() {
        let r = engine().scan_verse("v", "μηνιν abc");
        assert_eq!(r.status, VerseStatus::Unprocessable);
        assert!(r.notes.contains("position"));
    }

    #[test]
    fn listing_one_needs_synizesis() {
        let r = engine().scan_verse("il-1-1", "Μῆνιν ἄειδε θεὰ Πηληϊάδεω Ἀχιλῆος");
        assert_eq!(r.status, VerseStatus::Ok);
        assert_eq!(r.stage, Some(Stage::Recovery));
        assert!(r.notes.contains("synizesis"));
        assert_eq!(r.marks.len(), 16);
        assert_eq!(r.variant.as_deref(), Some("12"));
    }

    #[test]
    fn stage_ordering_under_modes() {
        let verse = "Μῆνιν ἄειδε θεὰ Πηληϊάδεω Ἀχιλῆος";
        let (local_only, _) = engine().scan_verse_mode("v", verse, PipelineMode::LocalOnly);
        assert_eq!(local_only.status, VerseStatus::Rejected);
        let (local_global, _) = engine().scan_verse_mode("v", verse, PipelineMode::LocalGlobal);
        assert_eq!(local_global.status, VerseStatus::Rejected);
    }

    #[test]
    fn parse_input_ids() {
        let input = "il-1-1\tΜῆνιν ἄειδε\n\nθεὰ Πηληϊάδεω\n";
        let lines = parse_input(std::io::Cursor::new(input)).unwrap();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].0, "il-1-1");
        assert_eq!(lines[1], ("3".to_string(), "θεὰ Πηληϊάδεω".to_string()));
    }

    #[test]
    fn workers_do_not_change_output() {
        let engine = engine();
        let lines: Vec<(String, String)> = (0..40)
            .map(|i| {
                (
                    format!("v{i}"),
                    "οὐλομένην, ἣ μυρί᾽ Ἀχαιοῖς ἄλγε᾽ ἔθηκε,".to_string(),
                )
            })
            .collect();
        let one = engine.scan_lines(&lines, 1);
        let four = engine.scan_lines(&lines, 4);
        assert_eq!(one, four);
    }

    #[test]
    fn tsv_round_trip() {
        let records = vec![
            engine().scan_verse("a", "ηη ωω ηη ωω ηη ωω"),
            engine().scan_verse("b", "τα με"),
        ];
        let text = render_records(&records, false);
        let parsed = parse_records(&text).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0].variant.as_deref(), Some("50"));
        assert_eq!(parsed[0].syllables, records[0].syllables);
        assert_eq!(parsed[1].status, VerseStatus::Rejected);
    }

    #[test]
    fn malformed_tsv_names_line() {
        match parse_records("one\ttwo") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn summary_counts() {
        let engine = engine();
        let records = vec![
            engine.scan_verse("a", "ηη ωω ηη ωω ηη ωω"),
            engine.scan_verse("b", "τα με"),
            engine.scan_verse("c", "μηνιν abc"),
        ];
        let summary = CorpusSummary::from_records(&records);
        assert_eq!(summary.total, 3);
        assert_eq!(summary.ok, 1);
        assert_eq!(summary.rejected, 1);
        assert_eq!(summary.unprocessable, 1);
        assert_eq!(summary.by_stage.get("local"), Some(&1));
        assert_eq!(summary.foot_dactyls, [0; 5]);
    }

    #[test]
    fn empty_input_empty_output() {
        let engine = engine();
        let (records, summary) = scan_corpus(&engine, std::io::Cursor::new(""), 1).unwrap();
        assert!(records.is_empty());
        assert_eq!(summary.total, 0);
    }

    #[test]
    fn duplicate_lines_get_identical_records() {
        let engine = engine();
        let a = engine.scan_verse("x", "ἐξ οὗ δὴ τὰ πρῶτα διαστήτην ἐρίσαντε");
        let b = engine.scan_verse("x", "ἐξ οὗ δὴ τὰ πρῶτα διαστήτην ἐρίσαντε");
        assert_eq!(a, b);
    }
}
