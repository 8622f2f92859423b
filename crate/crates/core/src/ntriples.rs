//! Line-oriented N-Triples parsing and serialization.
//!
//! Each triple sits on its own line as `subject predicate object .` with the
//! three terms separated by one or more spaces or tabs. Lines whose first
//! non-whitespace character is `#` are comments, blank lines are skipped, and
//! a comment may trail the terminal period. IRIs are written `<...>`, blank
//! nodes `_:label`, and literals `"..."` with an optional `^^<datatype>` or
//! `@lang` suffix.

use crate::model::{Term, Triple, TripleSet};
use thiserror::Error;

/// Parser behavior switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept a quoted literal in predicate position and store it as a
    /// literal predicate. On by default; when off, predicates must be IRIs.
    pub allow_literal_predicates: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            allow_literal_predicates: true,
        }
    }
}

/// A parse failure with its 1-based line and column position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing terminal `.`")]
    MissingPeriod,
    #[error("literal not allowed in subject position")]
    LiteralSubject,
    #[error("literal not allowed in predicate position")]
    LiteralPredicate,
    #[error("blank node not allowed in predicate position")]
    BlankPredicate,
    #[error("unterminated IRI")]
    UnterminatedIri,
    #[error("unterminated string literal")]
    UnterminatedLiteral,
    #[error("invalid escape sequence")]
    InvalidEscape,
    #[error("empty IRI")]
    EmptyIri,
    #[error("character not allowed in IRI")]
    IllegalIriCharacter,
    #[error("invalid language tag")]
    InvalidLanguageTag,
    #[error("invalid blank node label")]
    InvalidBlankLabel,
    #[error("expected a term")]
    ExpectedTerm,
    #[error("malformed term")]
    MalformedTerm,
    #[error("missing separator between terms")]
    MissingSeparator,
    #[error("unexpected trailing content")]
    TrailingContent,
}

/// Parses a full document under the default options.
pub fn parse_document(text: &str, doc_id: &str) -> Result<TripleSet, ParseError> {
    parse_document_with(text, doc_id, &ParseOptions::default())
}

/// Parses a full document. The first error aborts the parse.
pub fn parse_document_with(
    text: &str,
    doc_id: &str,
    options: &ParseOptions,
) -> Result<TripleSet, ParseError> {
    debug_assert!(!doc_id.is_empty(), "document id must be nonempty");
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut set = TripleSet::new(doc_id);
    for (index, raw_line) in text.lines().enumerate() {
        let mut scanner = Scanner::new(raw_line, index + 1);
        if let Some(triple) = scanner.parse_line(doc_id, options)? {
            set.insert(triple);
        }
    }
    Ok(set)
}

/// Parses a single term token, e.g. `<http://example.org/a>` or `"text"@en`.
pub fn parse_term(token: &str, doc_id: &str) -> Result<Term, ParseError> {
    let mut scanner = Scanner::new(token, 1);
    scanner.skip_whitespace();
    let term = scanner.scan_term(doc_id)?;
    scanner.skip_whitespace();
    if !scanner.at_end() {
        return Err(scanner.error(ParseErrorKind::TrailingContent));
    }
    Ok(term)
}

/// Serializes to canonical N-Triples: one triple per line in the set's
/// iteration order, single space separators, LF line endings.
pub fn serialize(set: &TripleSet) -> String {
    let mut out = String::new();
    for triple in set.iter() {
        out.push_str(&triple.to_string());
        out.push('\n');
    }
    out
}

const IRI_FORBIDDEN: &[char] = &['<', '>', '"', '{', '}', '|', '^', '`', '\\'];

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Scanner {
    fn new(text: &str, line: usize) -> Self {
        let mut chars: Vec<char> = text.chars().collect();
        if chars.last() == Some(&'\r') {
            chars.pop();
        }
        Scanner {
            chars,
            pos: 0,
            line,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        self.error_at(self.pos, kind)
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: pos + 1,
            kind,
        }
    }

    fn skip_whitespace(&mut self) -> usize {
        let mut skipped = 0;
        while matches!(self.peek(), Some(' ') | Some('\t')) {
            self.pos += 1;
            skipped += 1;
        }
        skipped
    }

    /// Parses one line: a triple, or `None` for blank and comment lines.
    fn parse_line(
        &mut self,
        doc_id: &str,
        options: &ParseOptions,
    ) -> Result<Option<Triple>, ParseError> {
        self.skip_whitespace();
        if self.at_end() || self.peek() == Some('#') {
            return Ok(None);
        }

        let subject_pos = self.pos;
        let subject = self.scan_term(doc_id)?;
        if subject.is_literal() {
            return Err(self.error_at(subject_pos, ParseErrorKind::LiteralSubject));
        }
        self.require_separator()?;

        let predicate_pos = self.pos;
        let predicate = self.scan_term(doc_id)?;
        match predicate {
            Term::Iri(_) => {}
            Term::Literal { .. } if options.allow_literal_predicates => {}
            Term::Literal { .. } => {
                return Err(self.error_at(predicate_pos, ParseErrorKind::LiteralPredicate));
            }
            Term::Blank { .. } => {
                return Err(self.error_at(predicate_pos, ParseErrorKind::BlankPredicate));
            }
        }
        self.require_separator()?;

        let object = self.scan_term(doc_id)?;

        self.skip_whitespace();
        match self.peek() {
            Some('.') => {
                self.pos += 1;
            }
            _ => return Err(self.error(ParseErrorKind::MissingPeriod)),
        }
        self.skip_whitespace();
        if !self.at_end() && self.peek() != Some('#') {
            return Err(self.error(ParseErrorKind::TrailingContent));
        }

        Ok(Some(Triple::new(subject, predicate, object)))
    }

    /// Requires at least one space or tab, except directly before the
    /// terminal period.
    fn require_separator(&mut self) -> Result<(), ParseError> {
        if self.skip_whitespace() == 0 {
            return Err(self.error(ParseErrorKind::MissingSeparator));
        }
        Ok(())
    }

    fn scan_term(&mut self, doc_id: &str) -> Result<Term, ParseError> {
        match self.peek() {
            Some('<') => self.scan_iri().map(Term::Iri),
            Some('"') => self.scan_literal(),
            Some('_') => self.scan_blank(doc_id),
            Some('.') | None => Err(self.error(ParseErrorKind::ExpectedTerm)),
            Some(_) => Err(self.error(ParseErrorKind::MalformedTerm)),
        }
    }

    fn scan_iri(&mut self) -> Result<String, ParseError> {
        let open = self.pos;
        self.pos += 1; // '<'
        let mut text = String::new();
        loop {
            match self.peek() {
                None => return Err(self.error_at(open, ParseErrorKind::UnterminatedIri)),
                Some('>') => {
                    self.pos += 1;
                    if text.is_empty() {
                        return Err(self.error_at(open, ParseErrorKind::EmptyIri));
                    }
                    return Ok(text);
                }
                Some('\\') => {
                    let at = self.pos;
                    self.pos += 1;
                    let c = self.scan_unicode_escape()?;
                    // An escape must not smuggle in a character the raw
                    // syntax forbids, or the rendering would not reparse.
                    if (c as u32) <= 0x20 || IRI_FORBIDDEN.contains(&c) {
                        return Err(self.error_at(at, ParseErrorKind::IllegalIriCharacter));
                    }
                    text.push(c);
                }
                Some(c) if (c as u32) <= 0x20 || IRI_FORBIDDEN.contains(&c) => {
                    return Err(self.error(ParseErrorKind::IllegalIriCharacter));
                }
                Some(c) => {
                    self.pos += 1;
                    text.push(c);
                }
            }
        }
    }

    fn scan_literal(&mut self) -> Result<Term, ParseError> {
        let open = self.pos;
        self.pos += 1; // '"'
        let mut lexical = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error_at(open, ParseErrorKind::UnterminatedLiteral)),
                Some('"') => break,
                Some('\\') => lexical.push(self.scan_escape()?),
                Some(c) => lexical.push(c),
            }
        }
        match self.peek() {
            Some('@') => {
                self.pos += 1;
                let language = self.scan_language_tag()?;
                Ok(Term::lang_literal(lexical, language))
            }
            Some('^') => {
                let caret = self.pos;
                self.pos += 1;
                if self.peek() != Some('^') {
                    return Err(self.error_at(caret, ParseErrorKind::MalformedTerm));
                }
                self.pos += 1;
                if self.peek() != Some('<') {
                    return Err(self.error(ParseErrorKind::MalformedTerm));
                }
                let datatype = self.scan_iri()?;
                Ok(Term::typed_literal(lexical, datatype))
            }
            _ => Ok(Term::literal(lexical)),
        }
    }

    fn scan_language_tag(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        let mut tag = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            tag.push(self.bump().unwrap());
        }
        if tag.is_empty() {
            return Err(self.error_at(start, ParseErrorKind::InvalidLanguageTag));
        }
        while self.peek() == Some('-') {
            tag.push(self.bump().unwrap());
            let mut sub = 0;
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                tag.push(self.bump().unwrap());
                sub += 1;
            }
            if sub == 0 {
                return Err(self.error_at(start, ParseErrorKind::InvalidLanguageTag));
            }
        }
        Ok(tag)
    }

    fn scan_blank(&mut self, doc_id: &str) -> Result<Term, ParseError> {
        let start = self.pos;
        self.pos += 1; // '_'
        if self.peek() != Some(':') {
            return Err(self.error_at(start, ParseErrorKind::MalformedTerm));
        }
        self.pos += 1;
        let mut label = String::new();
        match self.peek() {
            Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
                label.push(c);
                self.pos += 1;
            }
            _ => return Err(self.error_at(start, ParseErrorKind::InvalidBlankLabel)),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
        {
            label.push(self.bump().unwrap());
        }
        // A trailing '.' terminates the triple, not the label.
        while label.ends_with('.') {
            label.pop();
            self.pos -= 1;
        }
        if label.is_empty() {
            return Err(self.error_at(start, ParseErrorKind::InvalidBlankLabel));
        }
        Ok(Term::blank(label, doc_id))
    }

    /// An escape after `\` inside a string literal.
    fn scan_escape(&mut self) -> Result<char, ParseError> {
        let at = self.pos.saturating_sub(1);
        match self.bump() {
            Some('t') => Ok('\t'),
            Some('b') => Ok('\u{08}'),
            Some('n') => Ok('\n'),
            Some('r') => Ok('\r'),
            Some('f') => Ok('\u{0C}'),
            Some('"') => Ok('"'),
            Some('\'') => Ok('\''),
            Some('\\') => Ok('\\'),
            Some('u') => self.scan_hex_codepoint(at, 4),
            Some('U') => self.scan_hex_codepoint(at, 8),
            _ => Err(self.error_at(at, ParseErrorKind::InvalidEscape)),
        }
    }

    /// An escape after `\` inside an IRI; only `\uXXXX` and `\UXXXXXXXX`.
    fn scan_unicode_escape(&mut self) -> Result<char, ParseError> {
        let at = self.pos.saturating_sub(1);
        match self.bump() {
            Some('u') => self.scan_hex_codepoint(at, 4),
            Some('U') => self.scan_hex_codepoint(at, 8),
            _ => Err(self.error_at(at, ParseErrorKind::InvalidEscape)),
        }
    }

    fn scan_hex_codepoint(&mut self, at: usize, digits: usize) -> Result<char, ParseError> {
        let mut value: u32 = 0;
        for _ in 0..digits {
            let digit = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.error_at(at, ParseErrorKind::InvalidEscape))?;
            value = value * 16 + digit;
        }
        char::from_u32(value).ok_or_else(|| self.error_at(at, ParseErrorKind::InvalidEscape))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(text: &str) -> Term {
        Term::iri(text)
    }

    #[test]
    fn parses_single_iri_triple() {
        let text = "<http://www.example.org/staffid/85740> <http://www.example.org/terms/desig> <http://www.example.org/dept/accountant> .";
        let set = parse_document(text, "t1").unwrap();
        assert_eq!(set.len(), 1);
        let t = set.iter().next().unwrap();
        assert_eq!(t.subject, iri("http://www.example.org/staffid/85740"));
        assert_eq!(t.predicate, iri("http://www.example.org/terms/desig"));
        assert_eq!(t.object, iri("http://www.example.org/dept/accountant"));
    }

    #[test]
    fn parses_empty_input_to_empty_set() {
        let set = parse_document("", "empty").unwrap();
        assert!(set.is_empty());
    }

    #[test]
    fn parses_blank_subject_and_literal_object() {
        let text = "_:addressid <http://ex.org/terms/city> \"Bedford\" .";
        let set = parse_document(text, "t1").unwrap();
        assert_eq!(set.len(), 1);
        let t = set.iter().next().unwrap();
        assert_eq!(t.subject, Term::blank("addressid", "t1"));
        assert_eq!(t.object, Term::literal("Bedford"));
    }

    #[test]
    fn rejects_two_term_line() {
        let err = parse_document("<a> <b> .", "g").unwrap_err();
        assert_eq!(err.line, 1);
        assert_eq!(err.kind, ParseErrorKind::ExpectedTerm);
        assert_eq!(err.column, 9);
    }

    #[test]
    fn rejects_missing_period() {
        let err = parse_document("<a> <b> <c>", "g").unwrap_err();
        assert_eq!(err.line, 1);
        assert_eq!(err.kind, ParseErrorKind::MissingPeriod);
    }

    #[test]
    fn rejects_literal_subject() {
        let err = parse_document("\"x\" <b> <c> .", "g").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::LiteralSubject);
        assert_eq!(err.column, 1);
    }

    #[test]
    fn rejects_unterminated_iri_and_literal() {
        let err = parse_document("<a> <b> <http://unclosed .", "g").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::IllegalIriCharacter);
        let err = parse_document("<a> <b> <http://unclosed", "g").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnterminatedIri);
        assert_eq!(err.column, 9);
        let err = parse_document("<a> <b> \"unclosed .", "g").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnterminatedLiteral);
    }

    #[test]
    fn first_error_aborts_and_reports_line_number() {
        let text = "<a> <b> <c> .\n# fine\n\n<a> <b> .\n<d> <e> <f> .";
        let err = parse_document(text, "g").unwrap_err();
        assert_eq!(err.line, 4);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let text = "  # leading comment\n\n<a> <b> <c> . # trailing comment\n   \t\n";
        let set = parse_document(text, "g").unwrap();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn rejects_second_triple_on_same_line() {
        let err = parse_document("<a> <b> <c> . <d> <e> <f> .", "g").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::TrailingContent);
    }

    #[test]
    fn literal_predicate_allowed_by_default_and_rejected_when_disabled() {
        let text = "<http://www.example.org/staffid/85740> \"published\" <http://www.wikipedia.com/technology/C.V> .";
        let set = parse_document(text, "t1").unwrap();
        assert_eq!(
            set.iter().next().unwrap().predicate,
            Term::literal("published")
        );

        let strict = ParseOptions {
            allow_literal_predicates: false,
        };
        let err = parse_document_with(text, "t1", &strict).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::LiteralPredicate);
    }

    #[test]
    fn rejects_blank_predicate() {
        let err = parse_document("<a> _:p <c> .", "g").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::BlankPredicate);
    }

    #[test]
    fn parse_term_classifies_and_unescapes() {
        assert_eq!(
            parse_term("<http://www.example.org/club/treasurer>", "d").unwrap(),
            iri("http://www.example.org/club/treasurer")
        );
        assert_eq!(
            parse_term("\"1501 Grant Avenue\"", "d").unwrap(),
            Term::literal("1501 Grant Avenue")
        );
        assert_eq!(
            parse_term("\"a\\\"b\"", "d").unwrap(),
            Term::literal("a\"b")
        );
        assert_eq!(
            parse_term("\"tab\\there\"", "d").unwrap(),
            Term::literal("tab\there")
        );
        assert_eq!(
            parse_term("\"\\u0041\\U0001F49E\"", "d").unwrap(),
            Term::literal("A\u{1F49E}")
        );
        assert_eq!(parse_term("_:b1", "d").unwrap(), Term::blank("b1", "d"));
    }

    #[test]
    fn parse_term_rejects_malformed_escapes() {
        let err = parse_term("\"bad \\q escape\"", "d").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::InvalidEscape);
        let err = parse_term("\"bad \\uZZZZ\"", "d").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::InvalidEscape);
    }

    #[test]
    fn iri_escapes_must_not_encode_forbidden_characters() {
        assert_eq!(
            parse_term("<http://ex.org/\\u2665>", "d").unwrap(),
            Term::iri("http://ex.org/♥")
        );
        for bad in ["\\u0020", "\\u003E", "\\u003C", "\\u005C", "\\u0000"] {
            let err = parse_term(&format!("<http://ex.org/{bad}>"), "d").unwrap_err();
            assert_eq!(err.kind, ParseErrorKind::IllegalIriCharacter, "{bad}");
        }
    }

    #[test]
    fn non_ascii_iris_round_trip_raw() {
        let set = parse_document("<http://ex.org/caf\u{e9}/♥> <http://ex.org/p> \"x\" .", "g").unwrap();
        let text = serialize(&set);
        assert_eq!(parse_document(&text, "g").unwrap(), set);
    }

    #[test]
    fn literal_suffix_errors_are_reported() {
        let err = parse_document("<a> <b> \"x\"@ .", "g").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::InvalidLanguageTag);
        let err = parse_document("<a> <b> \"x\"^y .", "g").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MalformedTerm);
        let err = parse_document("<a> <b> \"x\"^^y .", "g").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MalformedTerm);
    }

    #[test]
    fn parses_literal_suffixes() {
        let set = parse_document(
            "<a> <b> \"5\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n<a> <c> \"hello\"@en-US .",
            "g",
        )
        .unwrap();
        let triples: Vec<&Triple> = set.iter().collect();
        assert_eq!(
            triples[0].object,
            Term::typed_literal("5", "http://www.w3.org/2001/XMLSchema#integer")
        );
        assert_eq!(triples[1].object, Term::lang_literal("hello", "en-US"));
    }

    #[test]
    fn period_may_abut_the_object() {
        let set = parse_document("<a> <b> <c>.", "g").unwrap();
        assert_eq!(set.len(), 1);
        let set = parse_document("<a> <b> \"x\".", "g").unwrap();
        assert_eq!(set.len(), 1);
        let set = parse_document("<a> <b> _:tail.", "g").unwrap();
        assert_eq!(set.iter().next().unwrap().object, Term::blank("tail", "g"));
    }

    #[test]
    fn terms_require_whitespace_separators() {
        let err = parse_document("<a><b> <c> .", "g").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingSeparator);
    }

    #[test]
    fn duplicate_lines_collapse_to_one_output_line() {
        let set = parse_document("<a> <b> <c> .\n<a> <b> <c> .", "g").unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(serialize(&set), "<a> <b> <c> .\n");
    }

    #[test]
    fn serialize_round_trips_the_parse() {
        let text = "<http://www.example.org/staffid/85740> <http://www.example.org/terms/desig> <http://www.example.org/dept/accountant> .";
        let set = parse_document(text, "t1").unwrap();
        let out = serialize(&set);
        assert_eq!(out.trim_end(), text);
        let reparsed = parse_document(&out, "t1").unwrap();
        assert_eq!(reparsed, set);
    }

    #[test]
    fn serialize_of_empty_set_is_empty() {
        assert_eq!(serialize(&TripleSet::new("g")), "");
    }

    #[test]
    fn extra_whitespace_does_not_change_the_result() {
        let tight = parse_document("<a> <b> <c> .", "g").unwrap();
        let loose = parse_document("  <a>\t\t<b>   <c>\t. ", "g").unwrap();
        assert_eq!(tight, loose);
    }

    #[test]
    fn same_text_under_different_doc_ids_scopes_blanks_apart() {
        let text = "_:b <http://example.org/p> \"x\" .";
        let one = parse_document(text, "doc1").unwrap();
        let two = parse_document(text, "doc2").unwrap();
        let s1 = &one.iter().next().unwrap().subject;
        let s2 = &two.iter().next().unwrap().subject;
        assert_ne!(s1, s2);
    }

    #[test]
    fn crlf_lines_parse_like_lf_lines() {
        let set = parse_document("<a> <b> <c> .\r\n<a> <b> <d> .\r\n", "g").unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn leading_byte_order_mark_is_ignored() {
        let set = parse_document("\u{feff}<a> <b> <c> .", "g").unwrap();
        assert_eq!(set.len(), 1);
    }
}
