//! N-Triples reader and writer.
//!
//! Lines are parsed to terms in parallel and interned serially in line order,
//! so the resulting ids do not depend on the number of threads.

use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::NtError;
use crate::model::{Dictionary, Term, Triple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Strictness {
    #[default]
    Strict,
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseDiagnostic {
    /// 1-based.
    pub line_number: usize,
    pub message: String,
    pub severity: Severity,
}

#[derive(Debug, Default)]
pub struct ParseOutput {
    pub triples: Vec<Triple>,
    pub diagnostics: Vec<ParseDiagnostic>,
}

pub fn parse_ntriples<R: BufRead>(
    reader: R,
    dict: &mut Dictionary,
    strictness: Strictness,
) -> Result<ParseOutput, NtError> {
    let lines = reader.lines().collect::<Result<Vec<_>, _>>()?;
    let parsed: Vec<_> = lines
        .par_iter()
        .enumerate()
        .filter_map(|(i, line)| parse_line(line).map(|r| (i + 1, r)))
        .collect();

    let mut out = ParseOutput::default();
    for (line_number, result) in parsed {
        match result {
            Ok([s, p, o]) => {
                let t = Triple::new(dict.intern(s), dict.intern(p), dict.intern(o));
                out.triples.push(t);
            }
            Err(message) => match strictness {
                Strictness::Strict => {
                    return Err(NtError::Parse(ParseDiagnostic {
                        line_number,
                        message,
                        severity: Severity::Error,
                    }))
                }
                Strictness::Lenient => out.diagnostics.push(ParseDiagnostic {
                    line_number,
                    message,
                    severity: Severity::Warning,
                }),
            },
        }
    }
    Ok(out)
}

pub fn parse_str(
    text: &str,
    dict: &mut Dictionary,
    strictness: Strictness,
) -> Result<ParseOutput, NtError> {
    parse_ntriples(text.as_bytes(), dict, strictness)
}

/// Formats one triple as an N-Triples line including the trailing newline.
pub fn format_triple(t: &Triple, dict: &Dictionary) -> Result<String, NtError> {
    let term = |id| dict.decode(id).map_err(|_| NtError::UnknownTermId(id));
    Ok(format!("{} {} {} .\n", term(t.s)?, term(t.p)?, term(t.o)?))
}

/// Writes `triples` as N-Triples; with `sorted` the lines are ordered byte-wise.
pub fn write_ntriples<'a, I, W>(
    triples: I,
    dict: &Dictionary,
    sorted: bool,
    mut writer: W,
) -> Result<(), NtError>
where
    I: IntoIterator<Item = &'a Triple>,
    W: Write,
{
    if sorted {
        let mut lines = triples
            .into_iter()
            .map(|t| format_triple(t, dict))
            .collect::<Result<Vec<_>, _>>()?;
        lines.par_sort_unstable();
        for line in lines {
            writer.write_all(line.as_bytes())?;
        }
    } else {
        for t in triples {
            writer.write_all(format_triple(t, dict)?.as_bytes())?;
        }
    }
    writer.flush()?;
    Ok(())
}

pub fn to_string<'a, I>(triples: I, dict: &Dictionary, sorted: bool) -> Result<String, NtError>
where
    I: IntoIterator<Item = &'a Triple>,
{
    let mut buf = Vec::new();
    write_ntriples(triples, dict, sorted, &mut buf)?;
    Ok(String::from_utf8(buf).expect("writer emits UTF-8"))
}

/// `None` for blank and comment lines.
fn parse_line(line: &str) -> Option<Result<[Term; 3], String>> {
    let mut cur = Cursor::new(line);
    cur.skip_ws();
    if cur.at_end() || cur.peek() == Some('#') {
        return None;
    }
    Some(parse_statement(&mut cur))
}

fn parse_statement(cur: &mut Cursor<'_>) -> Result<[Term; 3], String> {
    let s = match cur.peek() {
        Some('<') => cur.iri()?,
        Some('_') => cur.blank()?,
        _ => return Err(cur.error("expected IRI or blank node as subject")),
    };
    cur.skip_ws();
    let p = match cur.peek() {
        Some('<') => cur.iri()?,
        _ => return Err(cur.error("expected IRI as predicate")),
    };
    cur.skip_ws();
    let o = match cur.peek() {
        Some('<') => cur.iri()?,
        Some('_') => cur.blank()?,
        Some('"') => cur.literal()?,
        _ => return Err(cur.error("expected IRI, blank node or literal as object")),
    };
    cur.skip_ws();
    if cur.peek() != Some('.') {
        return Err(cur.error("expected '.' after object"));
    }
    cur.bump();
    cur.skip_ws();
    if !cur.at_end() && cur.peek() != Some('#') {
        return Err(cur.error("unexpected content after '.'"));
    }
    Ok([s, p, o])
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.bump();
        }
    }

    fn error(&self, msg: &str) -> String {
        format!("{msg} at column {}", self.pos + 1)
    }

    fn iri(&mut self) -> Result<Term, String> {
        self.bump(); // '<'
        let mut text = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error("unterminated IRI")),
                Some('>') => break,
                Some('\\') => match self.bump() {
                    Some('u') => text.push(self.hex(4)?),
                    Some('U') => text.push(self.hex(8)?),
                    _ => return Err(self.error("invalid escape in IRI")),
                },
                Some(c) if c <= ' ' || "<\"{}|^`".contains(c) => {
                    return Err(self.error("invalid character in IRI"))
                }
                Some(c) => text.push(c),
            }
        }
        Term::iri(text).map_err(|e| self.error(&e.to_string()))
    }

    fn blank(&mut self) -> Result<Term, String> {
        if !self.rest().starts_with("_:") {
            return Err(self.error("expected '_:'"));
        }
        self.pos += 2;
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\u{B7}') {
                self.bump();
            } else {
                break;
            }
        }
        // a label cannot end in '.'; give it back to the statement terminator
        while self.pos > start && self.text[..self.pos].ends_with('.') {
            self.pos -= 1;
        }
        let label = &self.text[start..self.pos];
        if label.is_empty() || label.starts_with(['-', '.']) {
            return Err(self.error("invalid blank node label"));
        }
        Ok(Term::BlankNode(label.to_string()))
    }

    fn literal(&mut self) -> Result<Term, String> {
        self.bump(); // '"'
        let mut lexical = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error("unterminated literal")),
                Some('"') => break,
                Some('\\') => {
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{C}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex(4)?,
                        Some('U') => self.hex(8)?,
                        _ => return Err(self.error("invalid escape in literal")),
                    };
                    lexical.push(c);
                }
                Some('\n') | Some('\r') => return Err(self.error("raw line break in literal")),
                Some(c) => lexical.push(c),
            }
        }
        if self.rest().starts_with("^^") {
            self.pos += 2;
            if self.peek() != Some('<') {
                return Err(self.error("expected datatype IRI"));
            }
            let Term::Iri(dt) = self.iri()? else {
                unreachable!()
            };
            Ok(Term::typed_literal(lexical, dt))
        } else if self.peek() == Some('@') {
            self.bump();
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                self.bump();
            }
            let tag = &self.text[start..self.pos];
            let valid = !tag.is_empty()
                && tag.split('-').all(|part| !part.is_empty())
                && tag
                    .split('-')
                    .next()
                    .is_some_and(|p| p.chars().all(|c| c.is_ascii_alphabetic()));
            if !valid {
                return Err(self.error("invalid language tag"));
            }
            Ok(Term::lang_literal(lexical, tag))
        } else {
            Ok(Term::literal(lexical))
        }
    }

    fn hex(&mut self, digits: usize) -> Result<char, String> {
        let rest = self.rest();
        let code = rest
            .get(..digits)
            .filter(|h| h.chars().all(|c| c.is_ascii_hexdigit()))
            .and_then(|h| u32::from_str_radix(h, 16).ok())
            .and_then(char::from_u32)
            .ok_or_else(|| self.error("invalid unicode escape"))?;
        self.pos += digits;
        Ok(code)
    }
}
