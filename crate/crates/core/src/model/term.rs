use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Kind of an RDF term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TermKind {
    Iri,
    BlankNode,
    Literal,
}

/// An RDF term.
///
/// Equality is exact on kind and lexical form; no IRI normalization and no
/// literal value-space canonicalization is performed, so `"1"` and `"01"`
/// are different terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(String),
    BlankNode(String),
    Literal {
        lexical: String,
        datatype: Option<String>,
        lang: Option<String>,
    },
}

impl Term {
    /// Builds an IRI term, rejecting empty text and whitespace.
    pub fn iri(text: impl Into<String>) -> Result<Self, ModelError> {
        let text = text.into();
        if text.is_empty() || text.chars().any(char::is_whitespace) {
            return Err(ModelError::InvalidIri(text));
        }
        Ok(Term::Iri(text))
    }

    pub fn blank(label: impl Into<String>) -> Result<Self, ModelError> {
        let label = label.into();
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(ModelError::InvalidBlankLabel(label));
        }
        Ok(Term::BlankNode(label))
    }

    pub fn literal(lexical: impl Into<String>) -> Self {
        Term::Literal {
            lexical: lexical.into(),
            datatype: None,
            lang: None,
        }
    }

    pub fn typed_literal(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        Term::Literal {
            lexical: lexical.into(),
            datatype: Some(datatype.into()),
            lang: None,
        }
    }

    pub fn lang_literal(lexical: impl Into<String>, lang: impl Into<String>) -> Self {
        Term::Literal {
            lexical: lexical.into(),
            datatype: None,
            lang: Some(lang.into()),
        }
    }

    pub fn kind(&self) -> TermKind {
        match self {
            Term::Iri(_) => TermKind::Iri,
            Term::BlankNode(_) => TermKind::BlankNode,
            Term::Literal { .. } => TermKind::Literal,
        }
    }

    /// IRI text, blank label, or literal lexical form.
    pub fn lexical(&self) -> &str {
        match self {
            Term::Iri(s) | Term::BlankNode(s) => s,
            Term::Literal { lexical, .. } => lexical,
        }
    }
}

/// Writes the term in N-Triples syntax.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => {
                f.write_str("<")?;
                write_escaped_iri(f, iri)?;
                f.write_str(">")
            }
            Term::BlankNode(label) => write!(f, "_:{label}"),
            Term::Literal {
                lexical,
                datatype,
                lang,
            } => {
                f.write_str("\"")?;
                write_escaped_literal(f, lexical)?;
                f.write_str("\"")?;
                if let Some(lang) = lang {
                    write!(f, "@{lang}")
                } else if let Some(dt) = datatype {
                    f.write_str("^^<")?;
                    write_escaped_iri(f, dt)?;
                    f.write_str(">")
                } else {
                    Ok(())
                }
            }
        }
    }
}

fn write_escaped_iri(f: &mut fmt::Formatter<'_>, iri: &str) -> fmt::Result {
    for c in iri.chars() {
        match c {
            '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\' => write!(f, "\\u{:04X}", c as u32)?,
            c if (c as u32) <= 0x20 => write!(f, "\\u{:04X}", c as u32)?,
            c => write!(f, "{c}")?,
        }
    }
    Ok(())
}

fn write_escaped_literal(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            '\r' => f.write_str("\\r")?,
            c => write!(f, "{c}")?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iri_rejects_empty_and_whitespace() {
        assert!(Term::iri("").is_err());
        assert!(Term::iri("a b").is_err());
        assert!(Term::iri("http://x/a").is_ok());
    }

    #[test]
    fn literal_equality_is_lexical() {
        assert_ne!(Term::literal("1"), Term::literal("01"));
        assert_ne!(
            Term::literal("1"),
            Term::typed_literal("1", "http://www.w3.org/2001/XMLSchema#integer")
        );
    }

    #[test]
    fn display_escapes_literals() {
        let t = Term::lang_literal("a \"q\"\n", "en");
        assert_eq!(t.to_string(), r#""a \"q\"\n"@en"#);
    }
}
