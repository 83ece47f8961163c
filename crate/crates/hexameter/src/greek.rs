//! Unicode normalization of polytonic Greek and phonological classification.
//!
//! Pre-processing lower-cases the verse and strips the diacritics that carry
//! no prosodic information (acute, grave, breathings, iota subscript). Two
//! marks are informative and survive as per-character flags before being
//! stripped: the circumflex, which marks a vowel as long, and the trema,
//! which marks a vowel as not fused with its predecessor into a diphthong.

use unicode_normalization::UnicodeNormalization;

use crate::{Error, Result};

/// Default diphthong inventory. Overridable through the pipeline config.
pub const DEFAULT_DIPHTHONGS: [[char; 2]; 9] = [
    ['α', 'ι'],
    ['ε', 'ι'],
    ['ο', 'ι'],
    ['υ', 'ι'],
    ['α', 'υ'],
    ['ε', 'υ'],
    ['ο', 'υ'],
    ['η', 'υ'],
    ['ω', 'υ'],
];

const VOWELS: [char; 7] = ['α', 'ε', 'η', 'ι', 'ο', 'υ', 'ω'];
const MUTES_TENUIS: [char; 3] = ['π', 'τ', 'κ'];
const MUTES_VOICED: [char; 3] = ['β', 'δ', 'γ'];
const MUTES_ASPIRATED: [char; 3] = ['φ', 'θ', 'χ'];
const LIQUIDS: [char; 4] = ['λ', 'ρ', 'μ', 'ν'];
const DOUBLE_CONSONANTS: [char; 3] = ['ζ', 'ξ', 'ψ'];

/// Phonological class of a normalized character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharClass {
    Vowel,
    MuteTenuis,
    MuteVoiced,
    MuteAspirated,
    Liquid,
    DoubleConsonant,
    OtherConsonant,
    Apostrophe,
    Space,
}

/// Classify a character of the normalized alphabet.
pub fn classify_char(c: char) -> Result<CharClass> {
    let class = match c {
        _ if VOWELS.contains(&c) => CharClass::Vowel,
        _ if MUTES_TENUIS.contains(&c) => CharClass::MuteTenuis,
        _ if MUTES_VOICED.contains(&c) => CharClass::MuteVoiced,
        _ if MUTES_ASPIRATED.contains(&c) => CharClass::MuteAspirated,
        _ if LIQUIDS.contains(&c) => CharClass::Liquid,
        _ if DOUBLE_CONSONANTS.contains(&c) => CharClass::DoubleConsonant,
        'σ' => CharClass::OtherConsonant,
        '\'' => CharClass::Apostrophe,
        ' ' => CharClass::Space,
        _ => return Err(Error::UnknownCharacter { ch: c, position: 0 }),
    };
    Ok(class)
}

pub fn is_vowel(c: char) -> bool {
    VOWELS.contains(&c)
}

pub fn is_mute(c: char) -> bool {
    MUTES_TENUIS.contains(&c) || MUTES_VOICED.contains(&c) || MUTES_ASPIRATED.contains(&c)
}

pub fn is_liquid(c: char) -> bool {
    LIQUIDS.contains(&c)
}

pub fn is_double_consonant(c: char) -> bool {
    DOUBLE_CONSONANTS.contains(&c)
}

pub fn is_consonant(c: char) -> bool {
    !is_vowel(c) && c != '\'' && c != ' '
}

/// True iff `(v1, v2)` fuse into a diphthong from the default inventory.
///
/// A trema on the second vowel always blocks fusion.
pub fn detect_diphthong(v1: char, v2: char, trema_on_v2: bool) -> bool {
    detect_diphthong_in(&DEFAULT_DIPHTHONGS, v1, v2, trema_on_v2)
}

/// Diphthong test against an explicit inventory.
pub fn detect_diphthong_in(inventory: &[[char; 2]], v1: char, v2: char, trema_on_v2: bool) -> bool {
    !trema_on_v2 && inventory.iter().any(|d| d[0] == v1 && d[1] == v2)
}

/// A verse reduced to lowercase unaccented Greek letters, apostrophes and
/// spaces, with the informative diacritics retained as per-character flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedVerse {
    /// The raw input text.
    pub original: String,
    /// Base characters: lowercase Greek letters, apostrophe, space.
    pub chars: Vec<char>,
    /// True where the character carried a circumflex.
    pub circumflex: Vec<bool>,
    /// True where the character carried a trema (diaeresis).
    pub trema: Vec<bool>,
    /// True where the character carried an iota subscript.
    pub iota_subscript: Vec<bool>,
}

impl NormalizedVerse {
    /// The normalized characters as a string.
    pub fn chars_string(&self) -> String {
        self.chars.iter().collect()
    }
}

// Combining marks of polytonic Greek, by scalar value.
const COMBINING_GRAVE: char = '\u{0300}';
const COMBINING_ACUTE: char = '\u{0301}';
const COMBINING_MACRON: char = '\u{0304}';
const COMBINING_BREVE: char = '\u{0306}';
const COMBINING_DIAERESIS: char = '\u{0308}';
const COMBINING_SMOOTH: char = '\u{0313}';
const COMBINING_ROUGH: char = '\u{0314}';
const COMBINING_PERISPOMENI: char = '\u{0342}';
const COMBINING_KORONIS: char = '\u{0343}';
const COMBINING_DIALYTIKA_TONOS: char = '\u{0344}';
const COMBINING_YPOGEGRAMMENI: char = '\u{0345}';

fn is_stripped_mark(c: char) -> bool {
    matches!(
        c,
        COMBINING_GRAVE
            | COMBINING_ACUTE
            | COMBINING_MACRON
            | COMBINING_BREVE
            | COMBINING_SMOOTH
            | COMBINING_ROUGH
            | COMBINING_KORONIS
    )
}

/// Map a decomposed base character to its lowercase normalized form, or None
/// if it is not a Greek letter.
fn fold_letter(c: char) -> Option<char> {
    let lower = match c {
        'Α'..='Ρ' | 'Σ'..='Ω' => char::from_u32(c as u32 + 0x20)?,
        'ς' => 'σ',
        'ϲ' | 'Ϲ' => 'σ',
        'α'..='ω' => c,
        _ => return None,
    };
    if ('α'..='ω').contains(&lower) && lower != 'ς' {
        Some(lower)
    } else {
        None
    }
}

fn is_apostrophe(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '\u{02BC}' | '\u{1FBD}' | '\u{1FBF}')
}

fn is_dropped_punctuation(c: char) -> bool {
    matches!(
        c,
        ',' | '.' | ';' | ':' | '!' | '?' | '"' | '(' | ')' | '[' | ']' | '<' | '>'
    ) || matches!(
        c,
        '\u{0387}' | '\u{037E}' | '\u{00B7}' | '\u{2018}' | '\u{00AB}' | '\u{00BB}' | '\u{2013}'
            | '\u{2014}' | '\u{2026}' | '\u{201C}' | '\u{201D}' | '\u{2020}' | '\u{2021}'
    )
}

/// Normalize a line of polytonic Greek.
///
/// Both NFC and NFD inputs yield the same result: the text is decomposed
/// before flag extraction, so every flag aligns to exactly one base vowel.
/// Punctuation is dropped, whitespace collapsed, elision apostrophes kept.
pub fn normalize(raw: &str) -> Result<NormalizedVerse> {
    let mut chars = Vec::new();
    let mut circumflex = Vec::new();
    let mut trema = Vec::new();
    let mut iota_subscript = Vec::new();
    for (offset, c) in raw.nfd().enumerate() {
        let position = offset + 1;
        match c {
            COMBINING_PERISPOMENI => {
                if let Some(&last) = chars.last() {
                    if is_vowel(last) {
                        *circumflex.last_mut().unwrap() = true;
                    }
                }
            }
            COMBINING_DIAERESIS | COMBINING_DIALYTIKA_TONOS => {
                if let Some(&last) = chars.last() {
                    if is_vowel(last) {
                        *trema.last_mut().unwrap() = true;
                    }
                }
            }
            COMBINING_YPOGEGRAMMENI => {
                if let Some(&last) = chars.last() {
                    if is_vowel(last) {
                        *iota_subscript.last_mut().unwrap() = true;
                    }
                }
            }
            _ if is_stripped_mark(c) => {}
            _ if is_apostrophe(c) => {
                chars.push('\'');
                circumflex.push(false);
                trema.push(false);
                iota_subscript.push(false);
            }
            _ if c.is_whitespace() => {
                if !matches!(chars.last(), None | Some(' ')) {
                    chars.push(' ');
                    circumflex.push(false);
                    trema.push(false);
                    iota_subscript.push(false);
                }
            }
            _ if is_dropped_punctuation(c) => {}
            _ => match fold_letter(c) {
                Some(letter) => {
                    chars.push(letter);
                    circumflex.push(false);
                    trema.push(false);
                    iota_subscript.push(false);
                }
                None => return Err(Error::UnknownCharacter { ch: c, position }),
            },
        }
    }

    while chars.last() == Some(&' ') {
        chars.pop();
        circumflex.pop();
        trema.pop();
        iota_subscript.pop();
    }

    Ok(NormalizedVerse {
        original: raw.to_string(),
        chars,
        circumflex,
        trema,
        iota_subscript,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chars_of(s: &str) -> String {
        normalize(s).unwrap().chars_string()
    }

    #[test]
    fn lowercases_and_strips_accents() {
        let v = normalize("Μῆνιν").unwrap();
        assert_eq!(v.chars_string(), "μηνιν");
        // circumflex recorded on the eta
        let eta = v.chars.iter().position(|&c| c == 'η').unwrap();
        assert!(v.circumflex[eta]);
        assert_eq!(v.circumflex.iter().filter(|&&f| f).count(), 1);
    }

    #[test]
    fn trema_recorded_on_iota() {
        let v = normalize("Πηληϊάδεω").unwrap();
        assert_eq!(v.chars_string(), "πηληιαδεω");
        let iota = v.chars.iter().position(|&c| c == 'ι').unwrap();
        assert!(v.trema[iota]);
    }

    #[test]
    fn grave_is_uninformative() {
        let v = normalize("θεὰ").unwrap();
        assert_eq!(v.chars_string(), "θεα");
        assert!(v.circumflex.iter().all(|&f| !f));
        assert!(v.trema.iter().all(|&f| !f));
    }

    #[test]
    fn breathings_and_subscript_stripped() {
        assert_eq!(chars_of("ἀλλ᾽ ὅ γε"), "αλλ' ο γε");
        let v = normalize("τῇ").unwrap();
        assert_eq!(v.chars_string(), "τη");
        assert!(v.iota_subscript[1]);
    }

    #[test]
    fn final_sigma_folds() {
        assert_eq!(chars_of("Ἀχιλῆος"), "αχιληοσ");
    }

    #[test]
    fn nfc_and_nfd_agree() {
        let nfc = "ᾧ"; // precomposed omega + rough + circumflex + subscript
        let nfd: String = nfc.nfd().collect();
        assert_eq!(normalize(nfc).unwrap(), {
            let mut v = normalize(&nfd).unwrap();
            v.original = nfc.to_string();
            v
        });
    }

    #[test]
    fn punctuation_dropped_apostrophe_kept() {
        assert_eq!(chars_of("οὐλομένην, ἣ μυρί᾽ Ἀχαιοῖς"), "ουλομενην η μυρι' αχαιοισ");
    }

    #[test]
    fn non_greek_rejected_with_position() {
        match normalize("μηνq") {
            Err(Error::UnknownCharacter { ch, position }) => {
                assert_eq!(ch, 'q');
                assert_eq!(position, 4);
            }
            other => panic!("expected UnknownCharacter, got {other:?}"),
        }
    }

    #[test]
    fn flags_only_on_vowels_and_lengths_match() {
        let v = normalize("Πηληϊάδεω Ἀχιλῆος ᾧ τῷδε").unwrap();
        assert_eq!(v.chars.len(), v.circumflex.len());
        assert_eq!(v.chars.len(), v.trema.len());
        assert_eq!(v.chars.len(), v.iota_subscript.len());
        for i in 0..v.chars.len() {
            if v.circumflex[i] || v.trema[i] || v.iota_subscript[i] {
                assert!(is_vowel(v.chars[i]));
            }
        }
    }

    #[test]
    fn normalize_is_idempotent_on_chars() {
        for raw in ["Μῆνιν ἄειδε θεὰ Πηληϊάδεω Ἀχιλῆος", "ἀλλ᾽ οὐδ᾽ ὣς"] {
            let once = normalize(raw).unwrap();
            let twice = normalize(&once.chars_string()).unwrap();
            assert_eq!(once.chars, twice.chars);
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_char('ζ').unwrap(), CharClass::DoubleConsonant);
        assert_eq!(classify_char('λ').unwrap(), CharClass::Liquid);
        assert_eq!(classify_char('π').unwrap(), CharClass::MuteTenuis);
        assert_eq!(classify_char('σ').unwrap(), CharClass::OtherConsonant);
        assert!(classify_char('q').is_err());
    }

    #[test]
    fn diphthong_examples() {
        assert!(detect_diphthong('α', 'ι', false));
        assert!(!detect_diphthong('η', 'ι', true));
        assert!(!detect_diphthong('ε', 'η', false));
    }
}
