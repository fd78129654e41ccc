//! Line-oriented input documents.
//!
//! ```text
//! quiver kronecker2          poset crown
//! vertex x                   element a
//! vertex y                   element b
//! arrow a x y                covers a c
//! arrow b x y                relation b <= a
//! relation monomial a b      end
//! relation truncate 2
//! end
//! ```
//!
//! `#` starts a comment. A quiver document takes either monomial relations
//! (arrows in traversal order, one relation per line) or a single truncation
//! level, not both.

use std::collections::HashSet;
use std::fmt::Write as _;

use hochschild::presentations::{check_minimal, AlgebraPresentation, MonomialIdeal, RelationScheme};
use hochschild::quiver::{Path, Quiver};
use hochschild::simplicial::Poset;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unresolved name `{0}`")]
    Unresolved(String),
    #[error("duplicate definition of `{0}`")]
    Duplicate(String),
    #[error("invalid document: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Quiver(AlgebraPresentation),
    Poset(Poset),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub name: String,
    pub body: Body,
}

impl Document {
    /// The presentation to hand to the oracle; posets become incidence algebras.
    pub fn presentation(&self) -> AlgebraPresentation {
        match &self.body {
            Body::Quiver(p) => p.clone(),
            Body::Poset(p) => AlgebraPresentation::incidence(p.clone()),
        }
    }
}

#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    err(line, column, ParseErrorKind::Syntax(msg.into()))
}

/// A name together with where it was written.
#[derive(Debug, Clone)]
struct Located {
    name: String,
    line: usize,
    column: usize,
}

impl Located {
    fn new(tok: &Token<'_>, line: usize) -> Self {
        Located {
            name: tok.text.to_owned(),
            line,
            column: tok.column,
        }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        err(self.line, self.column, kind)
    }
}

#[derive(Default)]
struct QuiverDraft {
    vertices: Vec<Located>,
    arrows: Vec<(Located, Located, Located)>,
    monomials: Vec<Vec<Located>>,
    truncate: Option<(usize, usize, usize)>,
}

#[derive(Default)]
struct PosetDraft {
    elements: Vec<Located>,
    /// `(lower, upper)`
    relations: Vec<(Located, Located)>,
}

enum Draft {
    Quiver(QuiverDraft),
    Poset(PosetDraft),
}

fn expect_args(toks: &[Token<'_>], n: usize, line: usize, usage: &str) -> Result<(), ParseError> {
    if toks.len() == n + 1 {
        Ok(())
    } else {
        let column = toks.get(n + 1).map_or(toks[0].column, |t| t.column);
        Err(syntax(line, column, format!("expected `{usage}`")))
    }
}

fn check_unique(items: &[Located]) -> Result<(), ParseError> {
    let mut seen = HashSet::new();
    for it in items {
        if !seen.insert(it.name.as_str()) {
            return Err(it.error(ParseErrorKind::Duplicate(it.name.clone())));
        }
    }
    Ok(())
}

/// Parse one document.
pub fn parse(input: &str) -> Result<Document, ParseError> {
    let mut header: Option<(String, Draft)> = None;
    let mut ended: Option<usize> = None;
    let mut last_line = 0;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokenize(raw);
        let Some(first) = toks.first() else { continue };
        if ended.is_some() {
            return Err(syntax(line, first.column, "content after `end`"));
        }
        let Some((_, draft)) = header.as_mut() else {
            let draft = match first.text {
                "quiver" => Draft::Quiver(QuiverDraft::default()),
                "poset" => Draft::Poset(PosetDraft::default()),
                other => {
                    return Err(syntax(
                        line,
                        first.column,
                        format!("expected `quiver <name>` or `poset <name>`, found `{other}`"),
                    ))
                }
            };
            expect_args(&toks, 1, line, &format!("{} <name>", first.text))?;
            header = Some((toks[1].text.to_owned(), draft));
            continue;
        };
        if first.text == "end" {
            expect_args(&toks, 0, line, "end")?;
            ended = Some(line);
            continue;
        }
        match draft {
            Draft::Quiver(q) => quiver_line(q, &toks, line)?,
            Draft::Poset(p) => poset_line(p, &toks, line)?,
        }
    }
    let Some((name, draft)) = header else {
        return Err(syntax(last_line.max(1), 1, "empty document"));
    };
    let Some(end_line) = ended else {
        return Err(syntax(last_line, 1, "missing `end`"));
    };
    let body = match draft {
        Draft::Quiver(q) => Body::Quiver(build_quiver(q, end_line)?),
        Draft::Poset(p) => Body::Poset(build_poset(p, end_line)?),
    };
    Ok(Document { name, body })
}

fn quiver_line(q: &mut QuiverDraft, toks: &[Token<'_>], line: usize) -> Result<(), ParseError> {
    match toks[0].text {
        "vertex" => {
            expect_args(toks, 1, line, "vertex <id>")?;
            q.vertices.push(Located::new(&toks[1], line));
        }
        "arrow" => {
            expect_args(toks, 3, line, "arrow <id> <source> <target>")?;
            q.arrows.push((
                Located::new(&toks[1], line),
                Located::new(&toks[2], line),
                Located::new(&toks[3], line),
            ));
        }
        "relation" => match toks.get(1).map(|t| t.text) {
            Some("monomial") => {
                if q.truncate.is_some() {
                    return Err(syntax(line, toks[1].column, "monomial relations cannot be mixed with truncation"));
                }
                if toks.len() < 3 {
                    return Err(syntax(line, toks[1].column, "expected `relation monomial <arrow> …`"));
                }
                q.monomials.push(toks[2..].iter().map(|t| Located::new(t, line)).collect());
            }
            Some("truncate") => {
                expect_args(toks, 2, line, "relation truncate <m>")?;
                if !q.monomials.is_empty() {
                    return Err(syntax(line, toks[1].column, "truncation cannot be mixed with monomial relations"));
                }
                if q.truncate.is_some() {
                    return Err(err(line, toks[1].column, ParseErrorKind::Duplicate("relation truncate".into())));
                }
                let m = toks[2]
                    .text
                    .parse::<usize>()
                    .map_err(|_| syntax(line, toks[2].column, "truncation level must be a natural number"))?;
                q.truncate = Some((m, line, toks[2].column));
            }
            _ => {
                let column = toks.get(1).map_or(toks[0].column, |t| t.column);
                return Err(syntax(line, column, "expected `relation monomial …` or `relation truncate <m>`"));
            }
        },
        other => return Err(syntax(line, toks[0].column, format!("unknown directive `{other}`"))),
    }
    Ok(())
}

fn poset_line(p: &mut PosetDraft, toks: &[Token<'_>], line: usize) -> Result<(), ParseError> {
    match toks[0].text {
        "element" => {
            expect_args(toks, 1, line, "element <id>")?;
            p.elements.push(Located::new(&toks[1], line));
        }
        "covers" => {
            expect_args(toks, 2, line, "covers <upper> <lower>")?;
            p.relations.push((Located::new(&toks[2], line), Located::new(&toks[1], line)));
        }
        "relation" => {
            expect_args(toks, 3, line, "relation <a> <= <b>")?;
            if toks[2].text != "<=" {
                return Err(syntax(line, toks[2].column, "expected `<=`"));
            }
            p.relations.push((Located::new(&toks[1], line), Located::new(&toks[3], line)));
        }
        other => return Err(syntax(line, toks[0].column, format!("unknown directive `{other}`"))),
    }
    Ok(())
}

fn build_quiver(d: QuiverDraft, end_line: usize) -> Result<AlgebraPresentation, ParseError> {
    if d.vertices.is_empty() {
        return Err(syntax(end_line, 1, "a quiver needs at least one vertex"));
    }
    check_unique(&d.vertices)?;
    let arrow_names: Vec<Located> = d.arrows.iter().map(|(a, _, _)| a.clone()).collect();
    check_unique(&arrow_names)?;
    for (_, s, t) in &d.arrows {
        for end in [s, t] {
            if !d.vertices.iter().any(|v| v.name == end.name) {
                return Err(end.error(ParseErrorKind::Unresolved(end.name.clone())));
            }
        }
    }
    let quiver = Quiver::new(
        d.vertices.iter().map(|v| v.name.as_str()),
        d.arrows
            .iter()
            .map(|(a, s, t)| (a.name.as_str(), s.name.as_str(), t.name.as_str())),
    )
    .map_err(|e| syntax(end_line, 1, e.to_string()))?;
    if let Some((m, line, column)) = d.truncate {
        return AlgebraPresentation::truncated(quiver, m)
            .map_err(|e| err(line, column, ParseErrorKind::Invalid(e.to_string())));
    }
    if d.monomials.is_empty() {
        return Ok(AlgebraPresentation::path_algebra(quiver));
    }
    let mut gens: Vec<(Path, &Located)> = Vec::new();
    for rel in &d.monomials {
        for a in rel {
            if quiver.arrow_index(&a.name).is_none() {
                return Err(a.error(ParseErrorKind::Unresolved(a.name.clone())));
            }
        }
        let names: Vec<&str> = rel.iter().map(|a| a.name.as_str()).collect();
        let path = quiver
            .path_by_names(&names)
            .map_err(|e| rel[0].error(ParseErrorKind::Invalid(e.to_string())))?;
        if gens.iter().any(|(g, _)| *g == path) {
            return Err(rel[0].error(ParseErrorKind::Duplicate(quiver.path_label(&path))));
        }
        gens.push((path, &rel[0]));
    }
    let paths: Vec<Path> = gens.iter().map(|(p, _)| p.clone()).collect();
    if let Err(e) = check_minimal(&quiver, &paths) {
        // report at the first relation whose label appears in the message
        let msg = e.to_string();
        let at = gens
            .iter()
            .find(|(p, _)| msg.contains(&format!("`{}`", quiver.path_label(p))))
            .map_or(gens[0].1, |(_, l)| *l);
        return Err(at.error(ParseErrorKind::Invalid(msg)));
    }
    let ideal = MonomialIdeal::new(&quiver, paths)
        .map_err(|e| syntax(end_line, 1, e.to_string()))?;
    Ok(AlgebraPresentation::monomial(quiver, ideal))
}

fn build_poset(d: PosetDraft, end_line: usize) -> Result<Poset, ParseError> {
    if d.elements.is_empty() {
        return Err(syntax(end_line, 1, "a poset needs at least one element"));
    }
    check_unique(&d.elements)?;
    for (a, b) in &d.relations {
        for x in [a, b] {
            if !d.elements.iter().any(|e| e.name == x.name) {
                return Err(x.error(ParseErrorKind::Unresolved(x.name.clone())));
            }
        }
    }
    Poset::new(
        d.elements.iter().map(|e| e.name.as_str()),
        d.relations.iter().map(|(a, b)| (a.name.as_str(), b.name.as_str())),
    )
    .map_err(|e| err(end_line, 1, ParseErrorKind::Invalid(e.to_string())))
}

/// Render a document in the input grammar. Posets are written by their covers.
pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    match &doc.body {
        Body::Quiver(p) => {
            let q = p.quiver();
            let _ = writeln!(out, "quiver {}", doc.name);
            for v in q.vertices() {
                let _ = writeln!(out, "vertex {v}");
            }
            for a in q.arrows() {
                let _ = writeln!(
                    out,
                    "arrow {} {} {}",
                    a.name,
                    q.vertices()[a.source],
                    q.vertices()[a.target]
                );
            }
            match p.scheme() {
                RelationScheme::Monomial(z) => {
                    for g in z.generators() {
                        let names: Vec<&str> = g.arrows().iter().map(|&a| q.arrows()[a].name.as_str()).collect();
                        let _ = writeln!(out, "relation monomial {}", names.join(" "));
                    }
                }
                RelationScheme::Truncated(t) => {
                    let _ = writeln!(out, "relation truncate {}", t.m());
                }
                RelationScheme::None | RelationScheme::Incidence(_) => {}
            }
        }
        Body::Poset(p) => {
            let _ = writeln!(out, "poset {}", doc.name);
            for e in p.elements() {
                let _ = writeln!(out, "element {e}");
            }
            for (upper, lower) in p.covers() {
                let _ = writeln!(out, "covers {} {}", p.elements()[upper], p.elements()[lower]);
            }
        }
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker() {
        let doc = parse("quiver k2\nvertex x\nvertex y\narrow a x y\narrow b x y\nend\n").unwrap();
        assert_eq!(doc.name, "k2");
        let Body::Quiver(p) = &doc.body else { panic!() };
        assert_eq!(p.quiver().arrow_count(), 2);
        assert_eq!(p.scheme(), &RelationScheme::None);
    }

    #[test]
    fn truncation_and_comments() {
        let doc = parse(
            "# a cycle\nquiver c3\nvertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3 # last\narrow c 3 1\nrelation truncate 2\nend\n",
        )
        .unwrap();
        let Body::Quiver(p) = &doc.body else { panic!() };
        assert!(matches!(p.scheme(), RelationScheme::Truncated(t) if t.m() == 2));
    }

    #[test]
    fn poset_with_covers_and_relations() {
        let doc = parse("poset p\nelement a\nelement b\nelement c\ncovers a b\nrelation c <= b\nend\n").unwrap();
        let Body::Poset(p) = &doc.body else { panic!() };
        assert!(p.leq(2, 0));
    }

    fn error_at(input: &str) -> (usize, usize, ParseErrorKind) {
        let e = parse(input).unwrap_err();
        (e.line, e.column, e.kind)
    }

    #[test]
    fn errors_carry_positions() {
        let (l, c, k) = error_at("quiver q\nvertex x\nfrobnicate\nend\n");
        assert_eq!((l, c), (3, 1));
        assert!(matches!(k, ParseErrorKind::Syntax(_)));

        let (l, c, k) = error_at("quiver q\nvertex x\narrow a x   y\nend\n");
        assert_eq!((l, c), (3, 13));
        assert_eq!(k, ParseErrorKind::Unresolved("y".into()));

        let (l, c, k) = error_at("quiver q\nvertex x\n  vertex x\nend\n");
        assert_eq!((l, c), (3, 10));
        assert_eq!(k, ParseErrorKind::Duplicate("x".into()));

        let (l, _, _) = error_at("quiver q\nvertex x\narrow a x x\nrelation truncate 2\nrelation monomial a a\nend\n");
        assert_eq!(l, 5);

        let (l, _, k) = error_at("quiver q\nvertex x\nvertex y\narrow a x y\nrelation monomial a\nend\n");
        assert_eq!(l, 5);
        assert!(matches!(k, ParseErrorKind::Invalid(_)));

        let (l, _, _) = error_at("quiver q\nvertex x\n");
        assert_eq!(l, 2);

        let (l, _, _) = error_at("quiver q\nvertex x\nend\nvertex y\n");
        assert_eq!(l, 4);

        let (_, _, k) = error_at("poset p\nelement a\nelement b\ncovers a b\ncovers b a\nend\n");
        assert!(matches!(k, ParseErrorKind::Invalid(_)));
    }

    #[test]
    fn non_minimal_relations_point_at_the_longer_one() {
        let src = "quiver q\nvertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\nrelation monomial a b c\nrelation monomial a b\nend\n";
        let e = parse(src).unwrap_err();
        assert_eq!(e.line, 9);
    }

    #[test]
    fn round_trip() {
        let src = "quiver q\nvertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\narrow c 2 3\nrelation monomial a b\nend\n";
        let doc = parse(src).unwrap();
        assert_eq!(serialize(&doc), src);
        let poset = parse("poset crown\nelement a\nelement b\nelement c\nelement d\ncovers a c\ncovers a d\ncovers b c\ncovers b d\nend\n").unwrap();
        assert_eq!(parse(&serialize(&poset)).unwrap(), poset);
    }
}
