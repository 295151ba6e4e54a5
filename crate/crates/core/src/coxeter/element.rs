use std::cmp::Ordering;
use std::fmt;

/// An element `w * omega` of an extended Coxeter group, with `w` stored as
/// its ShortLex-minimal reduced word.
///
/// Elements are only meaningful relative to the [`super::CoxeterDatum`] that
/// produced them; construct them through the datum.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupElement {
    pub(crate) word: Vec<u8>,
    pub(crate) omega: u8,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn omega(&self) -> usize {
        self.omega as usize
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty() && self.omega == 0
    }

    /// Canonical text key, e.g. `s0.s1.w1`; the identity is `e`.
    pub fn key(&self) -> String {
        self.to_string()
    }
}

// ShortLex on the word, then the Omega index.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.omega.cmp(&other.omega))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        let mut parts: Vec<String> = self.word.iter().map(|s| format!("s{s}")).collect();
        if self.omega != 0 {
            parts.push(format!("w{}", self.omega));
        }
        write!(f, "{}", parts.join("."))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A raw letter of an input word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    S(usize),
    Omega(usize),
}

pub fn parse_letters(text: &str) -> Result<Vec<Letter>, String> {
    let text = text.trim();
    if text == "e" || text.is_empty() {
        return Ok(Vec::new());
    }
    text.split('.')
        .map(|tok| {
            let (kind, idx) = tok.split_at(tok.len().min(1));
            let i: usize = idx.parse().map_err(|_| tok.to_string())?;
            match kind {
                "s" => Ok(Letter::S(i)),
                "w" => Ok(Letter::Omega(i)),
                _ => Err(tok.to_string()),
            }
        })
        .collect()
}
