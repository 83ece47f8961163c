//! Local length rules and their combination.
//!
//! Five predicates decide whether a syllable can safely be considered long:
//! circumflex, natural length of eta/omega, natural length of diphthongs,
//! positional length, and the muta-cum-liquida exception that cancels it.
//! A `false` verdict means "not safely long", never "safely short"; unknowns
//! are resolved downstream by the transducer.

use crate::greek::{is_double_consonant, is_liquid, is_mute};
use crate::syllable::Syllable;

/// Toggles for the rule set, exposed through the pipeline config.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleOptions {
    /// Muta cum liquida cancels positional length (the conservative reading).
    pub mcl_blocks_position: bool,
    /// Treat a nucleus that carried an iota subscript as long by nature even
    /// when the base vowel is alpha.
    pub subscript_alpha_long: bool,
}

impl Default for RuleOptions {
    fn default() -> Self {
        RuleOptions {
            mcl_blocks_position: true,
            subscript_alpha_long: false,
        }
    }
}

/// Circumflex marks the vowel as long.
pub fn rule_circumflex(s: &Syllable) -> bool {
    s.circumflexed
}

/// Eta and omega are long by nature.
pub fn rule_nature_vowel(s: &Syllable) -> bool {
    s.nucleus.len() == 1 && matches!(s.nucleus[0], 'η' | 'ω')
}

/// Diphthongs are long by nature.
pub fn rule_nature_diphthong(s: &Syllable) -> bool {
    s.nucleus.len() == 2
}

/// A vowel followed by two consonants, or by zeta, xi or psi, is long by
/// position.
pub fn rule_position(s: &Syllable) -> bool {
    s.followed_by.len() >= 2
        || s.followed_by.first().is_some_and(|&c| is_double_consonant(c))
}

/// The following consonants start with a mute-liquid pair.
pub fn rule_muta_cum_liquida(s: &Syllable) -> bool {
    s.followed_by.len() >= 2 && is_mute(s.followed_by[0]) && is_liquid(s.followed_by[1])
}

/// The rule combination: zf ∨ nl1 ∨ nl2 ∨ (pl ∧ ¬ml).
pub fn combine_verdicts(zf: bool, nl1: bool, nl2: bool, pl: bool, ml: bool) -> bool {
    zf || nl1 || nl2 || (pl && !ml)
}

/// Whether the syllable is safely long under the default options.
pub fn is_long(s: &Syllable) -> bool {
    is_long_with(s, &RuleOptions::default())
}

/// Whether the syllable is safely long under the given options.
pub fn is_long_with(s: &Syllable, opts: &RuleOptions) -> bool {
    let nl1 = rule_nature_vowel(s) || (opts.subscript_alpha_long && s.iota_subscript);
    let ml = opts.mcl_blocks_position && rule_muta_cum_liquida(s);
    combine_verdicts(
        rule_circumflex(s),
        nl1,
        rule_nature_diphthong(s),
        rule_position(s),
        ml,
    )
}
