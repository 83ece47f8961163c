//! Syllabification of normalized verses.
//!
//! Every vowel that is not absorbed into a diphthong heads exactly one
//! syllable. Intervocalic consonants are distributed by convention: a single
//! consonant opens the following syllable, of two or more the first closes
//! the preceding syllable, and a muta-cum-liquida pair moves entirely into
//! the following onset. Word boundaries confine onset/coda assignment but do
//! not block the `followed_by` context, since positional length operates
//! across words.

use crate::greek::{detect_diphthong_in, is_consonant, is_liquid, is_mute, is_vowel, NormalizedVerse, DEFAULT_DIPHTHONGS};
use crate::{Error, Result};

/// One syllable of a verse, with the context needed by the length rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syllable {
    pub onset: Vec<char>,
    /// A single vowel, or a diphthong of two vowels.
    pub nucleus: Vec<char>,
    pub coda: Vec<char>,
    /// 1-based position in the verse.
    pub index: usize,
    /// The nucleus carried a circumflex.
    pub circumflexed: bool,
    /// The nucleus carried an iota subscript.
    pub iota_subscript: bool,
    /// Last syllable of its word.
    pub word_final: bool,
    /// Consonants after the nucleus up to the next nucleus, across word
    /// boundaries.
    pub followed_by: Vec<char>,
}

impl Syllable {
    /// Concatenated onset, nucleus and coda.
    pub fn text(&self) -> String {
        self.onset
            .iter()
            .chain(self.nucleus.iter())
            .chain(self.coda.iter())
            .collect()
    }

    pub fn nucleus_is_diphthong(&self) -> bool {
        self.nucleus.len() == 2
    }
}

/// A nucleus found during the vowel scan, before consonant assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct VowelUnit {
    pub chars: Vec<char>,
    /// Char index of the first vowel.
    pub start: usize,
    /// Char index one past the last vowel.
    pub end: usize,
    pub word: usize,
    pub circumflexed: bool,
    pub iota_subscript: bool,
    pub trema: bool,
    pub word_final: bool,
    pub followed_by: Vec<char>,
}

/// Greedy left-to-right nucleus scan. Two adjacent vowels of one word fuse
/// into a diphthong when the inventory allows it and the second carries no
/// trema; a trema-marked vowel always heads its own unit.
pub(crate) fn vowel_units(verse: &NormalizedVerse, inventory: &[[char; 2]]) -> Result<Vec<VowelUnit>> {
    // word id per char; separators get none
    let mut word_of = vec![usize::MAX; verse.chars.len()];
    let mut word = 0usize;
    let mut in_word = false;
    for (i, &c) in verse.chars.iter().enumerate() {
        if c == ' ' || c == '\'' {
            if in_word {
                word += 1;
                in_word = false;
            }
        } else {
            word_of[i] = word;
            in_word = true;
        }
    }

    let mut units = Vec::new();
    let mut i = 0;
    while i < verse.chars.len() {
        let c = verse.chars[i];
        if !is_vowel(c) {
            i += 1;
            continue;
        }
        let mut end = i + 1;
        if i + 1 < verse.chars.len()
            && is_vowel(verse.chars[i + 1])
            && word_of[i + 1] == word_of[i]
            && detect_diphthong_in(inventory, c, verse.chars[i + 1], verse.trema[i + 1])
        {
            end = i + 2;
        }
        units.push(VowelUnit {
            chars: verse.chars[i..end].to_vec(),
            start: i,
            end,
            word: word_of[i],
            circumflexed: (i..end).any(|j| verse.circumflex[j]),
            iota_subscript: (i..end).any(|j| verse.iota_subscript[j]),
            trema: (i..end).any(|j| verse.trema[j]),
            word_final: false,
            followed_by: Vec::new(),
        });
        i = end;
    }

    if units.is_empty() {
        return Err(Error::NoVowels);
    }

    let n = units.len();
    for idx in 0..n {
        let from = units[idx].end;
        let to = if idx + 1 < n {
            units[idx + 1].start
        } else {
            verse.chars.len()
        };
        units[idx].followed_by = verse.chars[from..to]
            .iter()
            .copied()
            .filter(|&c| is_consonant(c))
            .collect();
        units[idx].word_final = idx + 1 == n || units[idx + 1].word != units[idx].word;
    }
    Ok(units)
}

/// Split an intervocalic same-word consonant cluster into (coda, onset).
fn split_cluster(cluster: &[char]) -> (Vec<char>, Vec<char>) {
    match cluster.len() {
        0 => (Vec::new(), Vec::new()),
        1 => (Vec::new(), cluster.to_vec()),
        2 if is_mute(cluster[0]) && is_liquid(cluster[1]) => (Vec::new(), cluster.to_vec()),
        _ => (cluster[..1].to_vec(), cluster[1..].to_vec()),
    }
}

/// Syllabify with the default diphthong inventory.
pub fn syllabify(verse: &NormalizedVerse) -> Result<Vec<Syllable>> {
    syllabify_with(verse, &DEFAULT_DIPHTHONGS)
}

/// Syllabify with an explicit diphthong inventory.
pub fn syllabify_with(verse: &NormalizedVerse, inventory: &[[char; 2]]) -> Result<Vec<Syllable>> {
    let units = vowel_units(verse, inventory)?;

    // word id per char, as in vowel_units
    let mut word_of = vec![usize::MAX; verse.chars.len()];
    let mut word = 0usize;
    let mut in_word = false;
    for (i, &c) in verse.chars.iter().enumerate() {
        if c == ' ' || c == '\'' {
            if in_word {
                word += 1;
                in_word = false;
            }
        } else {
            word_of[i] = word;
            in_word = true;
        }
    }

    let letters_between = |from: usize, to: usize| -> Vec<(char, usize)> {
        verse.chars[from..to]
            .iter()
            .enumerate()
            .filter(|(_, &c)| is_consonant(c))
            .map(|(off, &c)| (c, word_of[from + off]))
            .collect()
    };

    let n = units.len();
    let mut onsets: Vec<Vec<char>> = vec![Vec::new(); n];
    let mut codas: Vec<Vec<char>> = vec![Vec::new(); n];

    // everything before the first nucleus opens the first syllable
    onsets[0] = letters_between(0, units[0].start).into_iter().map(|(c, _)| c).collect();
    // everything after the last nucleus closes the last syllable
    codas[n - 1] = letters_between(units[n - 1].end, verse.chars.len())
        .into_iter()
        .map(|(c, _)| c)
        .collect();

    for idx in 1..n {
        let prev = &units[idx - 1];
        let next = &units[idx];
        let gap = letters_between(prev.end, next.start);
        if prev.word == next.word {
            let cluster: Vec<char> = gap.iter().map(|&(c, _)| c).collect();
            let (coda, onset) = split_cluster(&cluster);
            codas[idx - 1] = coda;
            onsets[idx] = onset;
        } else {
            // word-final consonants close the previous syllable; consonants
            // of later words (including vowelless elision remnants) open the
            // next one
            for (c, w) in gap {
                if w == prev.word {
                    codas[idx - 1].push(c);
                } else {
                    onsets[idx].push(c);
                }
            }
        }
    }

    Ok(units
        .into_iter()
        .enumerate()
        .map(|(idx, u)| Syllable {
            onset: std::mem::take(&mut onsets[idx]),
            nucleus: u.chars,
            coda: std::mem::take(&mut codas[idx]),
            index: idx + 1,
            circumflexed: u.circumflexed,
            iota_subscript: u.iota_subscript,
            word_final: u.word_final,
            followed_by: u.followed_by,
        })
        .collect())
}
