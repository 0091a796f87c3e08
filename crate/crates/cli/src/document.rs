//! The line-oriented presentation format.
//!
//! ```text
//! # comment
//! generators: e1:1 e2:1 e7:2
//! differential:
//!   e1 = -e1*e2
//! relations:
//!   e7^2
//! ```
//!
//! `relations:` may also list its expressions inline, separated by commas.

use std::fmt;

use anyhow::Context;

use cdga::expr::{parse_element, ExprError};
use cdga::{AlgebraError, Dga, Element, GeneratorTable, QElement, Rational};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InputDocument {
    pub generators: Vec<(String, u32)>,
    /// `(name, expression)` in generator order; absent names have `d = 0`.
    pub differential: Vec<(String, String)>,
    pub relations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct DocumentError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, DocumentError> {
    Err(DocumentError {
        line,
        column,
        message: message.into(),
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Differential,
    Relations,
}

/// A piece of text with its 1-based position in the file.
struct Span<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Span<'a> {
    fn trimmed(text: &'a str, line: usize, column: usize) -> Self {
        let lead = text.len() - text.trim_start().len();
        Span {
            text: text.trim(),
            line,
            column: column + text[..lead].chars().count(),
        }
    }

    /// Splits on `sep`, keeping positions.
    fn split(&self, sep: char) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, c) in self.text.char_indices().chain([(self.text.len(), sep)]) {
            if c == sep {
                let col = self.column + self.text[..start].chars().count();
                out.push(Span::trimmed(&self.text[start..i], self.line, col));
                start = i + c.len_utf8();
            }
        }
        out
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn check_expression(
    table: &GeneratorTable,
    span: &Span<'_>,
    expected_degree: Option<u32>,
) -> Result<QElement, DocumentError> {
    let value: QElement = parse_element(table, span.text).map_err(|e| {
        let column = span.column + e.column().map_or(0, |c| c - 1);
        let message = match e {
            ExprError::Syntax { message, .. } => message,
            other => other.to_string(),
        };
        DocumentError {
            line: span.line,
            column,
            message,
        }
    })?;
    if value.is_zero() {
        return Ok(value);
    }
    let Some(degree) = value.degree() else {
        return err(span.line, span.column, format!("expression is not homogeneous: `{}`", span.text));
    };
    if let Some(want) = expected_degree {
        if degree != want {
            return err(
                span.line,
                span.column,
                format!("expression has degree {degree}, expected {want}"),
            );
        }
    }
    Ok(value)
}

/// Parses and checks a document: names are unique, degrees are positive,
/// every expression parses, is homogeneous and has the right degree.
pub fn parse(text: &str) -> Result<InputDocument, DocumentError> {
    let mut doc = InputDocument::default();
    let mut generators_line = None;
    let mut section = None;
    let mut seen = Vec::new();
    let mut pending_diff: Vec<(Span<'_>, Span<'_>)> = Vec::new();
    let mut pending_rel: Vec<Span<'_>> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let indented = line.starts_with([' ', '\t']);
        if indented {
            let span = Span::trimmed(line, line_no, 1);
            match section {
                Some(Section::Differential) => pending_diff.push(split_assignment(&span)?),
                Some(Section::Relations) => pending_rel.push(span),
                None => return err(line_no, span.column, "indented line outside a section"),
            }
            continue;
        }
        let Some(colon) = line.find(':') else {
            return err(line_no, 1, "expected `generators:`, `differential:` or `relations:`");
        };
        let key = line[..colon].trim();
        let rest_column = line[..colon + 1].chars().count() + 1;
        let rest = Span::trimmed(&line[colon + 1..], line_no, rest_column);
        if seen.contains(&key.to_string()) {
            return err(line_no, 1, format!("section `{key}` appears twice"));
        }
        seen.push(key.to_string());
        match key {
            "generators" => {
                generators_line = Some(line_no);
                section = None;
                for word in rest.split(' ').into_iter().filter(|s| !s.text.is_empty()) {
                    doc.generators.push(parse_generator(&word)?);
                }
            }
            "differential" => {
                section = Some(Section::Differential);
                if !rest.text.is_empty() {
                    for item in rest.split(',') {
                        pending_diff.push(split_assignment(&item)?);
                    }
                }
            }
            "relations" => {
                section = Some(Section::Relations);
                if !rest.text.is_empty() {
                    pending_rel.extend(rest.split(','));
                }
            }
            other => return err(line_no, 1, format!("unknown section `{other}`")),
        }
    }

    let Some(gen_line) = generators_line else {
        return err(1, 1, "missing `generators:` line");
    };
    if doc.generators.is_empty() {
        return err(gen_line, 1, "no generators");
    }
    let table = GeneratorTable::new(doc.generators.clone()).map_err(|e| DocumentError {
        line: gen_line,
        column: 1,
        message: e.to_string(),
    })?;

    let mut diffs: Vec<Option<String>> = vec![None; table.len()];
    for (name, expr) in &pending_diff {
        let Some(g) = table.index_of(name.text) else {
            return err(name.line, name.column, format!("unknown generator `{}`", name.text));
        };
        if diffs[g].is_some() {
            return err(name.line, name.column, format!("differential of `{}` given twice", name.text));
        }
        check_expression(&table, expr, Some(table.degree(g) + 1))?;
        diffs[g] = Some(expr.text.to_string());
    }
    doc.differential = doc
        .generators
        .iter()
        .zip(diffs)
        .filter_map(|((name, _), d)| d.map(|d| (name.clone(), d)))
        .collect();
    for rel in &pending_rel {
        if check_expression(&table, rel, None)?.is_zero() {
            return err(rel.line, rel.column, "relation is zero");
        }
        doc.relations.push(rel.text.to_string());
    }
    Ok(doc)
}

fn parse_generator(word: &Span<'_>) -> Result<(String, u32), DocumentError> {
    let Some((name, degree)) = word.text.split_once(':') else {
        return err(word.line, word.column, format!("expected `name:degree`, found `{}`", word.text));
    };
    let valid_name = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_alphanumeric() || c == '_');
    if !valid_name {
        return err(word.line, word.column, format!("invalid generator name `{name}`"));
    }
    let degree_column = word.column + name.chars().count() + 1;
    let Ok(degree) = degree.parse::<u32>() else {
        return err(word.line, degree_column, format!("invalid degree `{degree}`"));
    };
    if degree == 0 {
        return err(word.line, degree_column, format!("generator `{name}` has degree 0; the algebra must be connected"));
    }
    Ok((name.to_string(), degree))
}

fn split_assignment<'a>(span: &Span<'a>) -> Result<(Span<'a>, Span<'a>), DocumentError> {
    let parts = span.split('=');
    match <[Span<'a>; 2]>::try_from(parts) {
        Ok([name, expr]) if !name.text.is_empty() && !expr.text.is_empty() => Ok((name, expr)),
        _ => err(span.line, span.column, "expected `name = expression`"),
    }
}

impl fmt::Display for InputDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|(n, d)| format!("{n}:{d}")).collect();
        writeln!(f, "generators: {}", gens.join(" "))?;
        if !self.differential.is_empty() {
            writeln!(f, "differential:")?;
            for (name, expr) in &self.differential {
                writeln!(f, "  {name} = {expr}")?;
            }
        }
        if !self.relations.is_empty() {
            writeln!(f, "relations:")?;
            for r in &self.relations {
                writeln!(f, "  {r}")?;
            }
        }
        Ok(())
    }
}

impl InputDocument {
    pub fn table(&self) -> Result<GeneratorTable, AlgebraError> {
        GeneratorTable::new(self.generators.clone())
    }

    /// The presented algebra, known up to `degree_bound`.
    pub fn to_dga(&self, degree_bound: u32) -> anyhow::Result<Dga<Rational>> {
        let table = self.table()?;
        let expr = |s: &str| -> anyhow::Result<QElement> {
            parse_element(&table, s).with_context(|| format!("in `{s}`"))
        };
        let mut diffs = vec![Element::zero(); table.len()];
        for (name, e) in &self.differential {
            let g = table.index_of(name).ok_or_else(|| AlgebraError::UnknownGenerator(name.clone()))?;
            diffs[g] = expr(e)?;
        }
        let relations = self.relations.iter().map(|r| expr(r)).collect::<anyhow::Result<_>>()?;
        Ok(Dga::new(table, relations, diffs, degree_bound)?)
    }

    /// Smallest bound at which the differential and the ideal can be checked.
    pub fn validation_bound(&self) -> u32 {
        let gen = self.generators.iter().map(|(_, d)| d + 2).max().unwrap_or(2);
        let table = self.table().ok();
        let rel = table
            .map(|t| {
                self.relations
                    .iter()
                    .filter_map(|r| parse_element::<Rational>(&t, r).ok()?.degree())
                    .map(|d| d + 1)
                    .max()
                    .unwrap_or(0)
            })
            .unwrap_or(0);
        gen.max(rel)
    }
}
