use std::fmt;

use crate::freegroup::{parse_word, ReducedWord};
use crate::grouprep::LabelSet;

use super::OrbitError;

/// A finitely supported map `F_n -> labels`, stored sparsely: only entries
/// different from the basepoint (label index 0) are kept, sorted by word.
/// The empty configuration is the constant basepoint map `1_p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config {
    rank: u32,
    entries: Vec<(ReducedWord, u16)>,
}

impl Config {
    pub fn basepoint(rank: u32) -> Self {
        Config { rank, entries: Vec::new() }
    }

    /// Builds a configuration, dropping basepoint entries. Fails on a
    /// repeated word or a word of the wrong rank.
    pub fn from_entries(
        rank: u32,
        entries: impl IntoIterator<Item = (ReducedWord, u16)>,
    ) -> Result<Self, OrbitError> {
        let mut entries: Vec<(ReducedWord, u16)> =
            entries.into_iter().filter(|(_, l)| *l != 0).collect();
        if let Some((w, _)) = entries.iter().find(|(w, _)| w.rank() != rank) {
            return Err(OrbitError::RankMismatch { expected: rank, found: w.rank() });
        }
        entries.sort();
        if let Some(pair) = entries.windows(2).find(|p| p[0].0 == p[1].0) {
            return Err(OrbitError::DuplicateWord(pair[0].0.to_string()));
        }
        Ok(Config { rank, entries })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn entries(&self) -> &[(ReducedWord, u16)] {
        &self.entries
    }

    pub fn is_basepoint(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of non-basepoint entries.
    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn support(&self) -> impl Iterator<Item = &ReducedWord> {
        self.entries.iter().map(|(w, _)| w)
    }

    /// Label index at `w` (0 = basepoint).
    pub fn get(&self, w: &ReducedWord) -> u16 {
        self.entries
            .binary_search_by(|(x, _)| x.cmp(w))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// Largest word length in the support; 0 for `1_p`.
    pub fn radius(&self) -> usize {
        self.entries.iter().map(|(w, _)| w.len()).max().unwrap_or(0)
    }

    /// Left translation: `(w . f)(x) = f(w^-1 x)`, so the support moves to `w . supp f`.
    pub fn translate(&self, w: &ReducedWord) -> Config {
        if w.is_identity() {
            return self.clone();
        }
        let mut entries: Vec<(ReducedWord, u16)> =
            self.entries.iter().map(|(x, l)| (w * x, *l)).collect();
        entries.sort();
        Config { rank: self.rank, entries }
    }

    /// Canonical text form `{word:label,...}`, or `{}` for the basepoint map.
    pub fn render(&self, labels: &LabelSet) -> String {
        let mut out = String::from("{");
        for (i, (w, l)) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(w.as_str());
            out.push(':');
            out.push_str(labels.name(*l));
        }
        out.push('}');
        out
    }

    /// Parses the text form produced by [`Config::render`].
    pub fn parse(text: &str, rank: u32, labels: &LabelSet) -> Result<Config, OrbitError> {
        let syntax = |m: &str| OrbitError::Syntax(format!("{m} in {text:?}"));
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| syntax("expected braces"))?;
        if inner.trim().is_empty() {
            return Ok(Config::basepoint(rank));
        }
        let mut entries = Vec::new();
        for item in inner.split(',') {
            let (word, label) = item.split_once(':').ok_or_else(|| syntax("expected word:label"))?;
            let w = parse_word(word.trim(), rank).map_err(OrbitError::Word)?;
            let l = labels
                .index_of(label.trim())
                .ok_or_else(|| OrbitError::UnknownLabel(label.trim().to_string()))?;
            if l == 0 {
                return Err(OrbitError::BasepointEntry(w.to_string()));
            }
            entries.push((w, l));
        }
        Config::from_entries(rank, entries)
    }
}

impl fmt::Debug for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (w, l)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}:#{l}")?;
        }
        f.write_str("}")
    }
}

pub fn translate(w: &ReducedWord, f: &Config) -> Config {
    f.translate(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::{FiniteGroupSpec, Side};

    fn w(s: &str) -> ReducedWord {
        parse_word(s, 2).unwrap()
    }

    #[test]
    fn translate_examples() {
        let f = Config::from_entries(2, [(w("e"), 1)]).unwrap();
        assert_eq!(f.translate(&w("e")), f);
        assert_eq!(f.translate(&w("a1")), Config::from_entries(2, [(w("a1"), 1)]).unwrap());
        let g = Config::from_entries(2, [(w("a1"), 1), (w("a1*a2"), 1)]).unwrap();
        assert_eq!(
            g.translate(&w("a1^-1")),
            Config::from_entries(2, [(w("e"), 1), (w("a2"), 1)]).unwrap()
        );
    }

    #[test]
    fn basepoint_entries_are_dropped() {
        let f = Config::from_entries(2, [(w("a1"), 0), (w("a2"), 1)]).unwrap();
        assert_eq!(f.support_size(), 1);
        assert_eq!(f.get(&w("a1")), 0);
        assert_eq!(f.get(&w("a2")), 1);
        assert!(Config::from_entries(2, [(w("a1"), 1), (w("a1"), 2)]).is_err());
    }

    #[test]
    fn render_and_parse() {
        let s3 = FiniteGroupSpec::builtin("S3").unwrap();
        let labels = s3.labels(Side::Topological);
        let f = Config::from_entries(2, [(w("a1*a2"), 2), (w("e"), 1), (w("a1^-1"), 1)]).unwrap();
        let text = f.render(&labels);
        assert_eq!(text, "{e:sgn,a1^-1:sgn,a1*a2:std}");
        assert_eq!(Config::parse(&text, 2, &labels).unwrap(), f);
        assert_eq!(Config::basepoint(2).render(&labels), "{}");
        assert_eq!(Config::parse("{}", 2, &labels).unwrap(), Config::basepoint(2));
        assert!(matches!(Config::parse("{e:triv}", 2, &labels), Err(OrbitError::BasepointEntry(_))));
        assert!(matches!(Config::parse("{e:xx}", 2, &labels), Err(OrbitError::UnknownLabel(_))));
        assert!(Config::parse("e:sgn", 2, &labels).is_err());
    }
}
