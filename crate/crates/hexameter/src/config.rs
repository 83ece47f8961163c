//! Pipeline configuration: transducer weights, rule toggles, inventories and
//! the search order, read from a plain key-value file.
//!
//! A missing file yields the documented defaults. Every key is optional;
//! malformed entries fail with the key named.

use std::path::Path;

use crate::greek::{is_vowel, DEFAULT_DIPHTHONGS};
use crate::rules::RuleOptions;
use crate::transducer::WeightConfig;
use crate::{Error, Result};

/// Default foot visiting order: foot 2 first, where spondees are likeliest;
/// foot 5 last, where dactyls are.
pub const DEFAULT_SEARCH_ORDER: [usize; 5] = [2, 3, 4, 1, 5];

/// All knobs of the scansion pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub weights: WeightConfig,
    pub diphthongs: Vec<[char; 2]>,
    /// Permutation of feet 1-5 visited by the local search.
    pub search_order: Vec<usize>,
    /// Muta cum liquida cancels positional length.
    pub mcl_blocks_position: bool,
    /// Count alpha with iota subscript as long by nature.
    pub subscript_alpha_long: bool,
    /// First vowels of synizesis candidate pairs.
    pub synizesis_first_vowels: Vec<char>,
    /// Count double rejections as agreement when comparing annotations.
    pub include_rejections_in_agreement: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            weights: WeightConfig::default(),
            diphthongs: DEFAULT_DIPHTHONGS.to_vec(),
            search_order: DEFAULT_SEARCH_ORDER.to_vec(),
            mcl_blocks_position: true,
            subscript_alpha_long: false,
            synizesis_first_vowels: vec!['ε'],
            include_rejections_in_agreement: true,
        }
    }
}

impl ScanConfig {
    pub fn rule_options(&self) -> RuleOptions {
        RuleOptions {
            mcl_blocks_position: self.mcl_blocks_position,
            subscript_alpha_long: self.subscript_alpha_long,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.weights.validate()?;
        let mut order = self.search_order.clone();
        order.sort_unstable();
        if order != [1, 2, 3, 4, 5] {
            return Err(Error::InvalidConfig(
                "search_order: must be a permutation of 1,2,3,4,5".into(),
            ));
        }
        for d in &self.diphthongs {
            if !is_vowel(d[0]) || !is_vowel(d[1]) {
                return Err(Error::InvalidConfig(format!(
                    "diphthongs: '{}{}' is not a vowel pair",
                    d[0], d[1]
                )));
            }
        }
        for &v in &self.synizesis_first_vowels {
            if !is_vowel(v) {
                return Err(Error::InvalidConfig(format!(
                    "synizesis_first_vowels: '{v}' is not a vowel"
                )));
            }
        }
        Ok(())
    }
}

fn bad(key: &str, detail: impl std::fmt::Display) -> Error {
    Error::InvalidConfig(format!("{key}: {detail}"))
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value.trim().parse().map_err(|e| bad(key, e))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(bad(key, format!("expected boolean, got '{other}'"))),
    }
}

fn parse_costs(key: &str, value: &str) -> Result<[f64; 5]> {
    let parts: Vec<f64> = value
        .split(',')
        .map(|p| parse_f64(key, p))
        .collect::<Result<_>>()?;
    parts
        .try_into()
        .map_err(|_| bad(key, "expected five comma-separated costs"))
}

/// Parse configuration text. Lines are `key = value`; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<ScanConfig> {
    let mut cfg = ScanConfig::default();
    let mut spondee_costs_set = false;

    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidConfig(format!("'{line}': expected key = value")))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "dactyl_costs" => {
                cfg.weights.dactyl_costs = parse_costs(key, value)?;
                if !spondee_costs_set {
                    cfg.weights.spondee_costs = cfg.weights.dactyl_costs.map(|c| 1.0 - c);
                }
            }
            "spondee_costs" => {
                cfg.weights.spondee_costs = parse_costs(key, value)?;
                spondee_costs_set = true;
            }
            "correction_penalty" => cfg.weights.correction_penalty = parse_f64(key, value)?,
            "allow_corrections" => cfg.weights.allow_corrections = parse_bool(key, value)?,
            "search_order" => {
                cfg.search_order = value
                    .split(',')
                    .map(|p| p.trim().parse::<usize>().map_err(|e| bad(key, e)))
                    .collect::<Result<_>>()?;
            }
            "diphthongs" => {
                cfg.diphthongs = value
                    .split(',')
                    .map(|p| {
                        let chars: Vec<char> = p.trim().chars().collect();
                        <[char; 2]>::try_from(chars)
                            .map_err(|_| bad(key, format!("'{}' is not a vowel pair", p.trim())))
                    })
                    .collect::<Result<_>>()?;
            }
            "muta_cum_liquida_blocks_position" => {
                cfg.mcl_blocks_position = parse_bool(key, value)?;
            }
            "subscript_alpha_long" => cfg.subscript_alpha_long = parse_bool(key, value)?,
            "synizesis_first_vowels" => {
                cfg.synizesis_first_vowels = value
                    .split(',')
                    .map(|p| {
                        let mut chars = p.trim().chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) => Ok(c),
                            _ => Err(bad(key, format!("'{}' is not a single vowel", p.trim()))),
                        }
                    })
                    .collect::<Result<_>>()?;
            }
            "include_rejections_in_agreement" => {
                cfg.include_rejections_in_agreement = parse_bool(key, value)?;
            }
            other => return Err(Error::InvalidConfig(format!("unknown key '{other}'"))),
        }
    }

    cfg.validate()?;
    Ok(cfg)
}

/// Load a configuration file; absent path or file yields the defaults.
pub fn load_config(path: Option<&Path>) -> Result<ScanConfig> {
    match path {
        Some(p) if p.exists() => parse_config(&std::fs::read_to_string(p)?),
        _ => Ok(ScanConfig::default()),
    }
}
