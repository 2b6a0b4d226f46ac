use std::fmt;

use serde::{Deserialize, Serialize};

/// Opaque vertex identifier. Integers sort numerically and before strings;
/// strings sort lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Str(String),
}

impl Label {
    /// Parse a text token: integers become `Int`, anything else `Str`.
    pub fn parse(token: &str) -> Label {
        token
            .parse::<i64>()
            .map(Label::Int)
            .unwrap_or_else(|_| Label::Str(token.to_string()))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(v) => write!(f, "{v}"),
            Label::Str(s) => f.write_str(s),
        }
    }
}

impl From<i64> for Label {
    fn from(v: i64) -> Self {
        Label::Int(v)
    }
}

impl From<i32> for Label {
    fn from(v: i32) -> Self {
        Label::Int(v as i64)
    }
}

impl From<u32> for Label {
    fn from(v: u32) -> Self {
        Label::Int(v as i64)
    }
}

impl From<usize> for Label {
    fn from(v: usize) -> Self {
        Label::Int(v as i64)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Str(s.to_string())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label::Str(s)
    }
}

impl From<&Label> for Label {
    fn from(l: &Label) -> Self {
        l.clone()
    }
}

/// A face: a sorted set of distinct labels. The empty face has dimension -1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<Label>);

impl Face {
    /// Build a face, sorting the labels. Returns the repeated label on failure.
    pub fn new<I, L>(labels: I) -> Result<Face, Label>
    where
        I: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        let mut v: Vec<Label> = labels.into_iter().map(Into::into).collect();
        v.sort();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(w[0].clone());
        }
        Ok(Face(v))
    }

    /// Build a face from labels known to be distinct.
    ///
    /// # Panics
    /// On repeated labels.
    pub fn of<I, L>(labels: I) -> Face
    where
        I: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        Face::new(labels).unwrap_or_else(|l| panic!("repeated vertex {l} in face"))
    }

    pub fn empty() -> Face {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.0.binary_search(l).is_ok()
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        v.dedup();
        Face(v)
    }

    pub fn minus(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .filter(|l| !other.contains(l))
                .cloned()
                .collect(),
        )
    }

    pub fn into_vec(self) -> Vec<Label> {
        self.0
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("]")
    }
}
