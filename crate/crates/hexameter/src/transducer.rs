//! Weighted finite-state transducer for global analysis.
//!
//! The machine reads one input symbol per syllable over {Long, Short,
//! Unknown} and writes {Long, Short, Anceps}. Processing starts in q0; three
//! states carry the first foot (after-long, mid-dactyl, foot-end), the same
//! block repeats for feet 2-5 with foot-specific weights, and two states emit
//! the final long + anceps into the accepting state. Alternative paths model
//! the dactyl/spondee choice, so the machine accepts exactly the inputs of
//! length 12-17 and every accepting path renders one of the 32 variants.
//!
//! Best paths minimize the summed edge cost (min-sum). A determined input
//! mark may be contradicted only on a correction edge, which adds the
//! configured penalty; in strict mode those edges are omitted entirely.

use crate::meter::{plausibility_check, ScansionMark, Variant};
use crate::search::PartialAnnotation;
use crate::{Error, Result};

/// Edge weights of the transducer.
///
/// The defaults are hand-set, encoding only the traditional ordering
/// constraints (the fifth foot is the likeliest dactyl, the second the
/// least likely); they are not learned from data.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightConfig {
    /// Cost of a dactyl in feet 1-5.
    pub dactyl_costs: [f64; 5],
    /// Cost of a spondee in feet 1-5.
    pub spondee_costs: [f64; 5],
    /// Cost added when the output contradicts a determined input mark.
    pub correction_penalty: f64,
    /// When false, determined input marks are binding (strict mode).
    pub allow_corrections: bool,
}

impl Default for WeightConfig {
    fn default() -> Self {
        let dactyl_costs = [0.45, 0.65, 0.55, 0.60, 0.10];
        let spondee_costs = dactyl_costs.map(|c| 1.0 - c);
        WeightConfig {
            dactyl_costs,
            spondee_costs,
            correction_penalty: 5.0,
            allow_corrections: true,
        }
    }
}

impl WeightConfig {
    pub fn validate(&self) -> Result<()> {
        let all = self.dactyl_costs.iter().chain(self.spondee_costs.iter());
        let mut max_cost = 0.0f64;
        for &c in all {
            if !c.is_finite() || c < 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "foot costs must be finite and non-negative, got {c}"
                )));
            }
            max_cost = max_cost.max(c);
        }
        if !self.correction_penalty.is_finite() || self.correction_penalty <= max_cost {
            return Err(Error::InvalidConfig(format!(
                "correction_penalty must exceed every foot cost ({} <= {max_cost})",
                self.correction_penalty
            )));
        }
        Ok(())
    }
}

pub type StateId = usize;

/// One transition: consumes `input`, emits `output`, costs `base` plus the
/// correction penalty when `correction` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub from: StateId,
    pub to: StateId,
    pub input: ScansionMark,
    pub output: ScansionMark,
    pub base: f64,
    pub correction: bool,
}

impl Edge {
    /// Full traversal cost.
    pub fn cost(&self, penalty: f64) -> f64 {
        if self.correction {
            self.base + penalty
        } else {
            self.base
        }
    }
}

/// The built machine.
#[derive(Debug, Clone)]
pub struct WeightedTransducer {
    pub num_states: usize,
    pub start: StateId,
    pub accepting: StateId,
    pub edges: Vec<Edge>,
    pub correction_penalty: f64,
    outgoing: Vec<Vec<usize>>,
}

/// An accepted completion: the minimum-cost output for the given input.
#[derive(Debug, Clone, PartialEq)]
pub struct Completion {
    pub marks: Vec<ScansionMark>,
    pub variant: &'static Variant,
    pub cost: f64,
    pub corrections: usize,
}

const INPUTS: [ScansionMark; 3] = [ScansionMark::Long, ScansionMark::Short, ScansionMark::Unknown];

/// Build the transducer for a weight configuration.
pub fn build_transducer(cfg: &WeightConfig) -> Result<WeightedTransducer> {
    cfg.validate()?;

    let mut edges: Vec<Edge> = Vec::new();
    // states: q0, then (after_long, mid_dactyl, end) per foot, then the
    // final-foot pair (after_long, accept)
    let num_states = 1 + 3 * 5 + 2;
    let after_long = |foot: usize| 1 + 3 * (foot - 1);
    let mid_dactyl = |foot: usize| 2 + 3 * (foot - 1);
    let foot_end = |foot: usize| 3 + 3 * (foot - 1);
    let final_long = num_states - 2;
    let accept = num_states - 1;

    let mut add = |from: StateId, to: StateId, output: ScansionMark, base: f64| {
        for input in INPUTS {
            let correction = input.is_determined()
                && output != ScansionMark::Anceps
                && input != output;
            if correction && !cfg.allow_corrections {
                continue;
            }
            edges.push(Edge {
                from,
                to,
                input,
                output,
                base,
                correction,
            });
        }
    };

    for foot in 1..=5 {
        let entry = if foot == 1 { 0 } else { foot_end(foot - 1) };
        // every foot starts long
        add(entry, after_long(foot), ScansionMark::Long, 0.0);
        // spondee branch: a second long closes the foot
        add(
            after_long(foot),
            foot_end(foot),
            ScansionMark::Long,
            cfg.spondee_costs[foot - 1],
        );
        // dactyl branch: two shorts
        add(
            after_long(foot),
            mid_dactyl(foot),
            ScansionMark::Short,
            cfg.dactyl_costs[foot - 1],
        );
        add(mid_dactyl(foot), foot_end(foot), ScansionMark::Short, 0.0);
    }
    add(foot_end(5), final_long, ScansionMark::Long, 0.0);
    add(final_long, accept, ScansionMark::Anceps, 0.0);

    let mut outgoing = vec![Vec::new(); num_states];
    for (i, e) in edges.iter().enumerate() {
        outgoing[e.from].push(i);
    }

    Ok(WeightedTransducer {
        num_states,
        start: 0,
        accepting: accept,
        edges,
        correction_penalty: cfg.correction_penalty,
        outgoing,
    })
}

struct Path {
    base: f64,
    corrections: usize,
    output: Vec<ScansionMark>,
}

impl WeightedTransducer {
    /// Enumerate every accepting path for this input.
    fn accepting_paths(&self, input: &[ScansionMark]) -> Vec<Path> {
        let mut paths = Vec::new();
        let mut output = Vec::with_capacity(input.len());
        self.walk(self.start, input, 0, 0.0, 0, &mut output, &mut paths);
        paths
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        state: StateId,
        input: &[ScansionMark],
        pos: usize,
        base: f64,
        corrections: usize,
        output: &mut Vec<ScansionMark>,
        paths: &mut Vec<Path>,
    ) {
        if pos == input.len() {
            if state == self.accepting {
                paths.push(Path {
                    base,
                    corrections,
                    output: output.clone(),
                });
            }
            return;
        }
        for &idx in &self.outgoing[state] {
            let edge = &self.edges[idx];
            if edge.input != input[pos] {
                continue;
            }
            output.push(edge.output);
            self.walk(
                edge.to,
                input,
                pos + 1,
                base + edge.base,
                corrections + edge.correction as usize,
                output,
                paths,
            );
            output.pop();
        }
    }

    fn completions(&self, input: &[ScansionMark]) -> Vec<Completion> {
        let mut out: Vec<Completion> = self
            .accepting_paths(input)
            .into_iter()
            .map(|p| {
                let variant = plausibility_check(&p.output)
                    .expect("outputs are fully determined")
                    .expect("every accepting path renders a variant");
                Completion {
                    marks: p.output,
                    variant,
                    cost: p.base + p.corrections as f64 * self.correction_penalty,
                    corrections: p.corrections,
                }
            })
            .collect();
        // min-sum best path; equal costs break toward the smaller index
        out.sort_by(|a, b| {
            a.cost
                .total_cmp(&b.cost)
                .then_with(|| a.variant.index().cmp(&b.variant.index()))
        });
        out
    }

    /// Edge list in textual form: from, to, input, output, weight per line,
    /// then the accepting state.
    pub fn dump_text(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                e.from,
                e.to,
                e.input.symbol(),
                e.output.symbol(),
                e.cost(self.correction_penalty)
            ));
        }
        out.push_str(&format!("{}\n", self.accepting));
        out
    }
}

/// Complete (and possibly correct) a partial annotation, or reject it.
///
/// Returns the minimum-cost accepting path's output; None means no accepting
/// path exists and the verse is invalid (a fragment, for instance).
pub fn complete_scansion(
    t: &WeightedTransducer,
    partial: &PartialAnnotation,
) -> Option<Completion> {
    t.completions(&partial.marks).into_iter().next()
}

/// Up to `k` distinct completions in non-decreasing cost order.
pub fn rank_completions(
    t: &WeightedTransducer,
    partial: &PartialAnnotation,
    k: usize,
) -> Vec<Completion> {
    let mut out = t.completions(&partial.marks);
    out.truncate(k);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meter::{parse_marks, render_marks};

    fn unknowns(n: usize) -> PartialAnnotation {
        PartialAnnotation::all_unknown(n)
    }

    fn default_transducer() -> WeightedTransducer {
        build_transducer(&WeightConfig::default()).unwrap()
    }

    #[test]
    fn validates_config() {
        let zero_penalty = WeightConfig {
            correction_penalty: 0.0,
            ..WeightConfig::default()
        };
        assert!(build_transducer(&zero_penalty).is_err());
        let mut negative_cost = WeightConfig::default();
        negative_cost.dactyl_costs[2] = -0.1;
        assert!(build_transducer(&negative_cost).is_err());
    }

    #[test]
    fn accepts_exactly_lengths_12_to_17() {
        let t = default_transducer();
        for n in 1..25 {
            let got = complete_scansion(&t, &unknowns(n));
            assert_eq!(got.is_some(), (12..=17).contains(&n), "length {n}");
        }
    }

    #[test]
    fn forced_lengths() {
        let t = default_transducer();
        let c = complete_scansion(&t, &unknowns(12)).unwrap();
        assert_eq!(c.variant.index(), "50");
        assert_eq!(render_marks(&c.marks), "-----------X");
        let c = complete_scansion(&t, &unknowns(17)).unwrap();
        assert_eq!(c.variant.index(), "00");
        assert_eq!(render_marks(&c.marks), "-**-**-**-**-**-X");
    }

    #[test]
    fn path_count_matches_variant_count() {
        let t = default_transducer();
        assert_eq!(t.accepting_paths(&unknowns(14).marks).len(), 10);
        assert_eq!(t.accepting_paths(&unknowns(16).marks).len(), 5);
    }

    #[test]
    fn equal_weights_tie_break_is_smallest_index() {
        let cfg = WeightConfig {
            dactyl_costs: [0.5; 5],
            spondee_costs: [0.5; 5],
            ..WeightConfig::default()
        };
        let t = build_transducer(&cfg).unwrap();
        let ranked = rank_completions(&t, &unknowns(16), 10);
        assert_eq!(ranked.len(), 5);
        assert!(ranked.iter().all(|c| c.cost == ranked[0].cost));
        let idx: Vec<String> = ranked.iter().map(|c| c.variant.index()).collect();
        assert_eq!(idx, ["10", "11", "12", "13", "14"]);
    }

    #[test]
    fn determined_longs_steer_completion() {
        // longs fixed at positions 4-5 of a 14-mark verse: foot 2 spondee
        let mut partial = unknowns(14);
        partial.marks[3] = ScansionMark::Long;
        partial.marks[4] = ScansionMark::Long;
        let t = default_transducer();
        let c = complete_scansion(&t, &partial).unwrap();
        assert_eq!(c.corrections, 0);
        assert!(c.variant.is_spondee(2));
    }

    #[test]
    fn corrections_only_when_unavoidable() {
        // a Short where every variant demands the verse-initial Long
        let mut partial = unknowns(12);
        partial.marks[0] = ScansionMark::Short;
        let t = default_transducer();
        let c = complete_scansion(&t, &partial).unwrap();
        assert_eq!(c.corrections, 1);
        assert_eq!(c.variant.index(), "50");

        let strict = build_transducer(&WeightConfig {
            allow_corrections: false,
            ..WeightConfig::default()
        })
        .unwrap();
        assert_eq!(complete_scansion(&strict, &partial), None);
    }

    #[test]
    fn rank_head_equals_best() {
        let t = default_transducer();
        for n in 12..=17 {
            let best = complete_scansion(&t, &unknowns(n)).unwrap();
            let ranked = rank_completions(&t, &unknowns(n), 1);
            assert_eq!(ranked, vec![best]);
        }
    }

    #[test]
    fn rank_respects_k_and_order() {
        let t = default_transducer();
        let ranked = rank_completions(&t, &unknowns(16), 10);
        assert_eq!(ranked.len(), 5);
        for pair in ranked.windows(2) {
            assert!(pair[0].cost <= pair[1].cost);
        }
        let ranked3 = rank_completions(&t, &unknowns(16), 3);
        assert_eq!(ranked3, ranked[..3]);
    }

    #[test]
    fn outputs_pass_plausibility() {
        let t = default_transducer();
        let partial = PartialAnnotation::from_marks(parse_marks("-?*??-???*????").unwrap());
        for c in rank_completions(&t, &partial, 32) {
            assert!(plausibility_check(&c.marks).unwrap().is_some());
        }
    }

    #[test]
    fn dump_lists_every_edge_and_final_state() {
        let t = default_transducer();
        let dump = t.dump_text();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines.len(), t.edges.len() + 1);
        assert_eq!(*lines.last().unwrap(), t.accepting.to_string());
        assert!(lines[0].split('\t').count() == 5);
    }
}
