//! The hexameter catalog: scansion marks, foot patterns, the 32 variants and
//! the plausibility check.
//!
//! Variants are indexed by two digits. The tens digit counts the spondees
//! among feet 1-5; the units digit enumerates the spondee-position sets of
//! that class in lexicographic order, so among the one-spondee variants
//! index 10 has the spondee in foot 1 and index 14 in foot 5. This ordering
//! is frozen for output stability.

use std::sync::OnceLock;

use crate::{Error, Result};

/// A scansion symbol. Rendered as '-', '*', '?', 'X' in all text output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScansionMark {
    Long,
    Short,
    Unknown,
    Anceps,
}

impl ScansionMark {
    pub fn symbol(self) -> char {
        match self {
            ScansionMark::Long => '-',
            ScansionMark::Short => '*',
            ScansionMark::Unknown => '?',
            ScansionMark::Anceps => 'X',
        }
    }

    pub fn from_symbol(c: char) -> Result<Self> {
        match c {
            '-' => Ok(ScansionMark::Long),
            '*' => Ok(ScansionMark::Short),
            '?' => Ok(ScansionMark::Unknown),
            'X' => Ok(ScansionMark::Anceps),
            _ => Err(Error::InvalidMarks(format!("unknown symbol '{c}'"))),
        }
    }

    /// Long or Short, as opposed to Unknown (and Anceps).
    pub fn is_determined(self) -> bool {
        matches!(self, ScansionMark::Long | ScansionMark::Short)
    }
}

impl std::fmt::Display for ScansionMark {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

pub fn render_marks(marks: &[ScansionMark]) -> String {
    marks.iter().map(|m| m.symbol()).collect()
}

pub fn parse_marks(s: &str) -> Result<Vec<ScansionMark>> {
    s.chars().map(ScansionMark::from_symbol).collect()
}

/// A metrical foot shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FootPattern {
    /// Long-short-short.
    Dactyl,
    /// Long-long.
    Spondee,
    /// Long-anceps, the sixth foot.
    FinalFoot,
}

impl FootPattern {
    pub fn marks(self) -> &'static [ScansionMark] {
        match self {
            FootPattern::Dactyl => &[ScansionMark::Long, ScansionMark::Short, ScansionMark::Short],
            FootPattern::Spondee => &[ScansionMark::Long, ScansionMark::Long],
            FootPattern::FinalFoot => &[ScansionMark::Long, ScansionMark::Anceps],
        }
    }

    /// Syllables in the foot: 3 for a dactyl, 2 otherwise.
    pub fn syllable_count(self) -> usize {
        self.marks().len()
    }
}

/// One of the 32 valid hexameter schemes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variant {
    body: [FootPattern; 5],
    tens: u8,
    units: u8,
}

impl Variant {
    /// Two-digit label, e.g. "00" or "50".
    pub fn index(&self) -> String {
        format!("{}{}", self.tens, self.units)
    }

    /// Feet 1-5; the final foot is implicit.
    pub fn body(&self) -> &[FootPattern; 5] {
        &self.body
    }

    /// All six feet.
    pub fn feet(&self) -> [FootPattern; 6] {
        [
            self.body[0],
            self.body[1],
            self.body[2],
            self.body[3],
            self.body[4],
            FootPattern::FinalFoot,
        ]
    }

    /// Whether 1-based foot 1-5 is a spondee.
    pub fn is_spondee(&self, foot: usize) -> bool {
        self.body[foot - 1] == FootPattern::Spondee
    }

    pub fn spondee_count(&self) -> usize {
        self.body.iter().filter(|&&f| f == FootPattern::Spondee).count()
    }

    /// 1-based feet that are spondees, ascending.
    pub fn spondee_feet(&self) -> Vec<usize> {
        (1..=5).filter(|&f| self.is_spondee(f)).collect()
    }

    pub fn syllable_count(&self) -> usize {
        12 + self.body.iter().filter(|&&f| f == FootPattern::Dactyl).count()
    }

    /// The full mark sequence, ending in Long + Anceps.
    pub fn marks(&self) -> Vec<ScansionMark> {
        self.feet().iter().flat_map(|f| f.marks().iter().copied()).collect()
    }

    /// 1-based inclusive syllable range of each of the six feet.
    pub fn foot_ranges(&self) -> [(usize, usize); 6] {
        let mut out = [(0, 0); 6];
        let mut start = 1;
        for (i, foot) in self.feet().iter().enumerate() {
            out[i] = (start, start + foot.syllable_count() - 1);
            start += foot.syllable_count();
        }
        out
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.index(), render_marks(&self.marks()))
    }
}

fn build_catalog() -> Vec<Variant> {
    let mut variants = Vec::with_capacity(32);
    for spondees in 0..=5usize {
        // spondee-position sets of size `spondees`, lexicographic
        let mut sets: Vec<Vec<usize>> = (0u8..32)
            .filter(|m| m.count_ones() as usize == spondees)
            .map(|m| (1..=5).filter(|f| m & (1 << (f - 1)) != 0).collect())
            .collect();
        sets.sort();
        for (units, set) in sets.into_iter().enumerate() {
            let mut body = [FootPattern::Dactyl; 5];
            for f in &set {
                body[f - 1] = FootPattern::Spondee;
            }
            variants.push(Variant {
                body,
                tens: spondees as u8,
                units: units as u8,
            });
        }
    }
    variants
}

/// The 32 hexameter variants, built once and shared.
pub fn all_variants() -> &'static [Variant] {
    static CATALOG: OnceLock<Vec<Variant>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

/// Look up a variant by its two-digit index.
pub fn variant_by_index(index: &str) -> Option<&'static Variant> {
    all_variants().iter().find(|v| v.index() == index)
}

/// The variant whose spondees sit exactly at the given 1-based feet.
pub fn variant_with_spondees(feet: &[usize]) -> Option<&'static Variant> {
    all_variants()
        .iter()
        .find(|v| v.spondee_feet() == feet)
}

/// Number of spondees among feet 1-5 forced by the syllable count.
pub fn required_spondees(syllable_count: usize) -> Result<usize> {
    if (12..=17).contains(&syllable_count) {
        Ok(17 - syllable_count)
    } else {
        Err(Error::NotAHexameter {
            count: syllable_count,
        })
    }
}

/// Check a fully determined mark sequence against the catalog.
///
/// The final mark is treated as anceps whatever it is. Returns the unique
/// matching variant, or None when no variant matches. An Unknown mark is a
/// precondition violation.
pub fn plausibility_check(marks: &[ScansionMark]) -> Result<Option<&'static Variant>> {
    if marks.contains(&ScansionMark::Unknown) {
        return Err(Error::InvalidMarks(
            "plausibility check requires fully determined marks".into(),
        ));
    }
    if marks.len() < 12 || marks.len() > 17 {
        return Ok(None);
    }
    Ok(all_variants().iter().find(|v| {
        v.syllable_count() == marks.len()
            && v.marks()[..marks.len() - 1]
                .iter()
                .zip(marks[..marks.len() - 1].iter())
                .all(|(a, b)| a == b)
    }))
}
