//! Line-oriented text format for quasi-Hopf data, plus the command layer
//! behind the `qhspec` binary.
//!
//! The grammar is documented in `docs/qhspec-format.md` at the repository root. A document is a
//! header followed by sections, each closed by `end`:
//!
//! ```text
//! qhspec 1
//! field 4
//! dim 4
//! label 0 1
//! ...
//! mul
//! 2 2 0 1        # e_2 e_2 = 1·e_0 + ...
//! end
//! ```

pub mod cli;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algcore::{AlgebraData, Element, LinearForm, TensorElement};
use crate::error::{Error, Result};
use crate::exactmath::sparse::normalize_vec;
use crate::exactmath::{Scalar, SparseVec};
use crate::quasihopf::{PivotalData, QuasiHopfAlgebra, QuasiHopfParts};

pub const FORMAT_VERSION: u32 = 1;

/// A parsed document: the algebra plus named elements and forms carried
/// along for the solvers (reference normalizations, elements to trace).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecDocument {
    pub algebra: QuasiHopfAlgebra,
    pub elements: Vec<(String, Element)>,
    pub forms: Vec<(String, LinearForm)>,
}

impl SpecDocument {
    pub fn new(algebra: QuasiHopfAlgebra) -> Self {
        SpecDocument {
            algebra,
            elements: Vec::new(),
            forms: Vec::new(),
        }
    }

    pub fn element(&self, name: &str) -> Option<&Element> {
        self.elements.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    pub fn form(&self, name: &str) -> Option<&LinearForm> {
        self.forms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
}

/// Section kinds and the number of basis indices per data line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Unit,
    Mul,
    Coproduct,
    Counit,
    Antipode,
    AntipodeInv,
    Phi,
    PhiInv,
    Alpha,
    Beta,
    Pivot,
    Twist,
    TwistInv,
    Generator,
    Element,
    Form,
}

impl Section {
    fn parse(word: &str) -> Option<Section> {
        Some(match word {
            "unit" => Section::Unit,
            "mul" => Section::Mul,
            "coproduct" => Section::Coproduct,
            "counit" => Section::Counit,
            "antipode" => Section::Antipode,
            "antipode_inv" => Section::AntipodeInv,
            "phi" => Section::Phi,
            "phi_inv" => Section::PhiInv,
            "alpha" => Section::Alpha,
            "beta" => Section::Beta,
            "pivot" => Section::Pivot,
            "twist" => Section::Twist,
            "twist_inv" => Section::TwistInv,
            "generator" => Section::Generator,
            "element" => Section::Element,
            "form" => Section::Form,
            _ => return None,
        })
    }

    fn keyword(self) -> &'static str {
        match self {
            Section::Unit => "unit",
            Section::Mul => "mul",
            Section::Coproduct => "coproduct",
            Section::Counit => "counit",
            Section::Antipode => "antipode",
            Section::AntipodeInv => "antipode_inv",
            Section::Phi => "phi",
            Section::PhiInv => "phi_inv",
            Section::Alpha => "alpha",
            Section::Beta => "beta",
            Section::Pivot => "pivot",
            Section::Twist => "twist",
            Section::TwistInv => "twist_inv",
            Section::Generator => "generator",
            Section::Element => "element",
            Section::Form => "form",
        }
    }

    fn arity(self) -> usize {
        match self {
            Section::Mul | Section::Coproduct | Section::Phi | Section::PhiInv => 3,
            Section::Antipode | Section::AntipodeInv | Section::Twist | Section::TwistInv => 2,
            _ => 1,
        }
    }

    fn named(self) -> bool {
        matches!(self, Section::Generator | Section::Element | Section::Form)
    }
}

/// One data line: basis indices and a coefficient.
type Entry = (Vec<usize>, Scalar);

struct RawSection {
    kind: Section,
    name: Option<String>,
    line: usize,
    entries: Vec<Entry>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits off the first whitespace-delimited token, returning it with its
/// 1-based column and the remainder.
fn token(s: &str, offset: usize) -> Option<(&str, usize, &str, usize)> {
    let start = s.len() - s.trim_start().len();
    let rest = &s[start..];
    if rest.is_empty() {
        return None;
    }
    let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
    Some((&rest[..end], offset + start + 1, &rest[end..], offset + start + end))
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim_end()
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next non-blank line with comments removed, with its 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.iter.by_ref() {
            let line = strip_comment(raw);
            if !line.trim().is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }
}

fn parse_index(tok: &str, line: usize, col: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| syntax(line, col, format!("expected a basis index, found '{tok}'")))
}

fn parse_scalar(text: &str, line: usize, col: usize, conductor: u32) -> Result<Scalar> {
    Scalar::parse_in(text, conductor).map_err(|e| match e {
        Error::ScalarSyntax { column, message } => syntax(line, col + column.saturating_sub(1), message),
        Error::DivisionByZero => syntax(line, col, format!("division by zero in coefficient '{text}'")),
        Error::Semantic(m) => syntax(line, col, m),
        other => other,
    })
}

fn header_value<'a>(lines: &mut Lines<'a>, key: &str) -> Result<(usize, &'a str, usize)> {
    let (ln, line) = lines
        .next()
        .ok_or_else(|| syntax(0, 1, format!("unexpected end of input, expected '{key}'")))?;
    let (word, col, rest, off) = token(line, 0).expect("non-blank line");
    if word != key {
        return Err(syntax(ln, col, format!("expected '{key}', found '{word}'")));
    }
    let (value, vcol, tail, _) =
        token(rest, off).ok_or_else(|| syntax(ln, off + 1, format!("'{key}' needs a value")))?;
    if key != "label" && !tail.trim().is_empty() {
        return Err(syntax(ln, vcol + value.len(), "trailing input"));
    }
    Ok((ln, if key == "label" { rest.trim() } else { value }, vcol))
}

/// Parses a document; see the module docs for the layout.
pub fn parse(text: &str) -> Result<SpecDocument> {
    let mut lines = Lines {
        iter: text.lines().enumerate(),
    };
    let (ln, version, col) = header_value(&mut lines, "qhspec")?;
    if version != FORMAT_VERSION.to_string() {
        return Err(syntax(ln, col, format!("unsupported format version '{version}'")));
    }
    let (ln, field, col) = header_value(&mut lines, "field")?;
    let conductor: u32 = field
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| syntax(ln, col, format!("bad conductor '{field}'")))?;
    let (ln, dim, col) = header_value(&mut lines, "dim")?;
    let d: usize = dim
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| syntax(ln, col, format!("bad dimension '{dim}'")))?;

    let mut labels = Vec::with_capacity(d);
    for expected in 0..d {
        let (ln, rest, col) = header_value(&mut lines, "label")?;
        let (idx, icol, label, _) = token(rest, col - 1).expect("non-empty");
        if parse_index(idx, ln, icol)? != expected {
            return Err(syntax(ln, icol, format!("expected label {expected}")));
        }
        let label = label.trim();
        if label.is_empty() {
            return Err(syntax(ln, icol + idx.len(), "missing label text"));
        }
        labels.push(label.to_string());
    }

    let mut sections: Vec<RawSection> = Vec::new();
    while let Some((ln, line)) = lines.next() {
        let (word, col, rest, off) = token(line, 0).expect("non-blank line");
        let kind = Section::parse(word).ok_or_else(|| syntax(ln, col, format!("unknown section '{word}'")))?;
        let name = match token(rest, off) {
            Some((n, ncol, tail, _)) => {
                if !kind.named() {
                    return Err(syntax(ln, ncol, format!("section '{word}' takes no name")));
                }
                if !tail.trim().is_empty() {
                    return Err(syntax(ln, ncol + n.len(), "trailing input"));
                }
                Some(n.to_string())
            }
            None if kind.named() => return Err(syntax(ln, col + word.len(), format!("section '{word}' needs a name"))),
            None => None,
        };
        let mut entries = Vec::new();
        loop {
            let (eln, eline) = lines
                .next()
                .ok_or_else(|| syntax(ln, col, format!("section '{word}' is not closed by 'end'")))?;
            let (first, fcol, _, _) = token(eline, 0).expect("non-blank line");
            if first == "end" {
                if eline.trim() != "end" {
                    return Err(syntax(eln, fcol + 3, "trailing input after 'end'"));
                }
                break;
            }
            let mut rest = eline;
            let mut offset = 0;
            let mut idx = Vec::with_capacity(kind.arity());
            for _ in 0..kind.arity() {
                let (tok, tcol, tail, toff) = token(rest, offset).ok_or_else(|| {
                    syntax(
                        eln,
                        offset + 1,
                        format!("expected {} indices and a coefficient", kind.arity()),
                    )
                })?;
                let i = parse_index(tok, eln, tcol)?;
                if i >= d {
                    return Err(Error::Semantic(format!(
                        "line {eln}: basis index {i} out of range (dim {d})"
                    )));
                }
                idx.push(i);
                rest = tail;
                offset = toff;
            }
            let scol = offset + (rest.len() - rest.trim_start().len()) + 1;
            if rest.trim().is_empty() {
                return Err(syntax(eln, scol, "missing coefficient"));
            }
            entries.push((idx, parse_scalar(rest.trim(), eln, scol, conductor)?));
        }
        sections.push(RawSection {
            kind,
            name,
            line: ln,
            entries,
        });
    }
    assemble(conductor, labels, sections)
}

fn take_one(sections: &mut Vec<RawSection>, kind: Section) -> Result<Option<RawSection>> {
    let mut found = sections.iter().filter(|s| s.kind == kind);
    if let (Some(_), Some(dup)) = (found.next(), found.next()) {
        return Err(Error::Semantic(format!(
            "line {}: duplicate section '{}'",
            dup.line,
            kind.keyword()
        )));
    }
    Ok(sections.iter().position(|s| s.kind == kind).map(|p| sections.remove(p)))
}

fn require(sections: &mut Vec<RawSection>, kind: Section) -> Result<RawSection> {
    take_one(sections, kind)?.ok_or_else(|| Error::Semantic(format!("missing section '{}'", kind.keyword())))
}

fn vector(entries: Vec<Entry>) -> SparseVec {
    normalize_vec(entries.into_iter().map(|(i, c)| (i[0], c)).collect())
}

/// Groups `i j… c` lines by their first index into `d` sparse rows keyed by
/// the remaining indices.
fn rows(entries: Vec<Entry>, d: usize) -> Vec<SparseVec> {
    let mut out = vec![Vec::new(); d];
    for (idx, c) in entries {
        let key = idx[1..].iter().fold(0, |k, &i| k * d + i);
        out[idx[0]].push((key, c));
    }
    out.into_iter().map(normalize_vec).collect()
}

fn tensor(entries: Vec<Entry>, d: usize) -> TensorElement {
    let order = entries.first().map_or(0, |(i, _)| i.len());
    let terms = entries
        .into_iter()
        .map(|(idx, c)| (idx.iter().fold(0, |k, &i| k * d + i), c))
        .collect();
    TensorElement::from_keys(order, d, terms)
}

fn tensor_section(sections: &mut Vec<RawSection>, kind: Section, d: usize) -> Result<Option<TensorElement>> {
    Ok(take_one(sections, kind)?.map(|s| {
        let order = kind.arity();
        let t = tensor(s.entries, d);
        if t.is_empty() {
            TensorElement::zero(order, d)
        } else {
            t
        }
    }))
}

fn assemble(conductor: u32, labels: Vec<String>, mut sections: Vec<RawSection>) -> Result<SpecDocument> {
    let d = labels.len();
    let unit = vector(require(&mut sections, Section::Unit)?.entries);
    let mul = {
        let mut table = vec![Vec::new(); d * d];
        for (idx, c) in require(&mut sections, Section::Mul)?.entries {
            table[idx[0] * d + idx[1]].push((idx[2], c));
        }
        table
    };
    let alg = AlgebraData::new(labels, mul, unit)?;
    let coproduct = rows(require(&mut sections, Section::Coproduct)?.entries, d)
        .into_iter()
        .map(|r| TensorElement::from_keys(2, d, r))
        .collect();
    let counit_vec = vector(require(&mut sections, Section::Counit)?.entries);
    let mut counit = vec![Scalar::zero(); d];
    for (i, c) in counit_vec {
        counit[i] = c;
    }
    let antipode = rows(require(&mut sections, Section::Antipode)?.entries, d);
    let antipode_inv = rows(
        take_one(&mut sections, Section::AntipodeInv)?
            .ok_or_else(|| Error::Semantic("missing inverse antipode (section 'antipode_inv')".into()))?
            .entries,
        d,
    );
    for (i, s) in antipode.iter().enumerate() {
        let back: SparseVec = normalize_vec(
            s.iter()
                .flat_map(|(j, c)| antipode_inv[*j].iter().map(move |(k, v)| (*k, c * v)))
                .collect(),
        );
        if back != alg.basis(i) {
            return Err(Error::Semantic(format!(
                "antipode_inv is not inverse to antipode on basis element {}",
                alg.label(i)
            )));
        }
    }
    let unit3 = TensorElement::unit(&alg, 3);
    let phi = tensor_section(&mut sections, Section::Phi, d)?;
    let phi_inv = tensor_section(&mut sections, Section::PhiInv, d)?;
    let (phi, phi_inv) = match (phi, phi_inv) {
        (None, None) => (unit3.clone(), unit3.clone()),
        (Some(p), Some(q)) => (p, q),
        (Some(_), None) => return Err(Error::Semantic("section 'phi' requires 'phi_inv'".into())),
        (None, Some(_)) => return Err(Error::Semantic("section 'phi_inv' requires 'phi'".into())),
    };
    if alg.mul_tensor(&phi, &phi_inv)? != unit3 || alg.mul_tensor(&phi_inv, &phi)? != unit3 {
        return Err(Error::Semantic(
            "coassociator is not invertible with the given phi_inv".into(),
        ));
    }
    let alpha = take_one(&mut sections, Section::Alpha)?.map_or_else(|| alg.unit().clone(), |s| vector(s.entries));
    let beta = take_one(&mut sections, Section::Beta)?.map_or_else(|| alg.unit().clone(), |s| vector(s.entries));
    let pivot = take_one(&mut sections, Section::Pivot)?;
    let twist = tensor_section(&mut sections, Section::Twist, d)?;
    let twist_inv = tensor_section(&mut sections, Section::TwistInv, d)?;
    let pivotal = match (pivot, twist, twist_inv) {
        (None, None, None) => None,
        (Some(g), Some(f), Some(f_inv)) => {
            let unit2 = TensorElement::unit(&alg, 2);
            if alg.mul_tensor(&f, &f_inv)? != unit2 {
                return Err(Error::Semantic("twist_inv is not inverse to twist".into()));
            }
            Some(PivotalData::new(&alg, vector(g.entries), f, f_inv)?)
        }
        _ => {
            return Err(Error::Semantic(
                "pivotal data needs all of 'pivot', 'twist' and 'twist_inv'".into(),
            ))
        }
    };
    let mut generators = Vec::new();
    let mut elements = Vec::new();
    let mut forms = Vec::new();
    let mut seen: BTreeMap<(&'static str, String), usize> = BTreeMap::new();
    for s in sections {
        let name = s.name.clone().expect("named section");
        if let Some(prev) = seen.insert((s.kind.keyword(), name.clone()), s.line) {
            return Err(Error::Semantic(format!(
                "line {}: '{} {name}' already defined on line {prev}",
                s.line,
                s.kind.keyword()
            )));
        }
        match s.kind {
            Section::Generator => generators.push((name, vector(s.entries))),
            Section::Element => elements.push((name, vector(s.entries))),
            Section::Form => forms.push((name, LinearForm::new(1, d, vector(s.entries)))),
            other => {
                return Err(Error::Semantic(format!(
                    "line {}: duplicate section '{}'",
                    s.line,
                    other.keyword()
                )))
            }
        }
    }
    let algebra = QuasiHopfAlgebra::new(QuasiHopfParts {
        alg,
        conductor,
        coproduct,
        counit,
        antipode,
        antipode_inv,
        phi,
        phi_inv,
        alpha,
        beta,
        pivotal,
        generators,
    })?;
    Ok(SpecDocument {
        algebra,
        elements,
        forms,
    })
}

struct Writer {
    out: String,
}

impl Writer {
    fn section(&mut self, header: &str, mut entries: Vec<(Vec<usize>, &Scalar)>) {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        self.out.push_str(header);
        self.out.push('\n');
        for (idx, c) in entries {
            if c.is_zero() {
                continue;
            }
            for i in idx {
                let _ = write!(self.out, "{i} ");
            }
            let _ = write!(self.out, "{c}");
            self.out.push('\n');
        }
        self.out.push_str("end\n");
    }

    fn vector(&mut self, header: &str, v: &[(usize, Scalar)]) {
        self.section(header, v.iter().map(|(i, c)| (vec![*i], c)).collect());
    }

    fn tensor(&mut self, header: &str, t: &TensorElement) {
        self.section(header, t.iter().map(|(legs, c)| (legs.to_vec(), c)).collect());
    }

    fn rows(&mut self, header: &str, rows: &[SparseVec], order: usize, d: usize) {
        let mut entries = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            for (key, c) in r {
                let mut idx = vec![i];
                let mut legs = Vec::with_capacity(order);
                let mut k = *key;
                for _ in 0..order {
                    legs.push(k % d);
                    k /= d;
                }
                legs.reverse();
                idx.extend(legs);
                entries.push((idx, c));
            }
        }
        self.section(header, entries);
    }
}

/// Canonical text for a document: sections in a fixed order, entries sorted
/// by index, coefficients written in the smallest cyclotomic field holding
/// them.
pub fn serialize(doc: &SpecDocument) -> Result<String> {
    let h = &doc.algebra;
    let d = h.dim();
    let mut w = Writer { out: String::new() };
    let _ = writeln!(w.out, "qhspec {FORMAT_VERSION}");
    let _ = writeln!(w.out, "field {}", h.conductor());
    let _ = writeln!(w.out, "dim {d}");
    for (i, l) in h.alg().labels().iter().enumerate() {
        let _ = writeln!(w.out, "label {i} {l}");
    }
    w.vector("unit", h.alg().unit());
    let mul: Vec<SparseVec> = (0..d * d).map(|k| h.alg().product(k / d, k % d).clone()).collect();
    {
        let mut entries = Vec::new();
        for (k, v) in mul.iter().enumerate() {
            for (r, c) in v {
                entries.push((vec![k / d, k % d, *r], c));
            }
        }
        w.section("mul", entries);
    }
    w.rows("coproduct", h.coproduct().images(), 2, d);
    w.vector("counit", h.counit().coeffs());
    w.rows("antipode", h.antipode().images(), 1, d);
    w.rows("antipode_inv", h.antipode_inv().images(), 1, d);
    w.tensor("phi", h.phi());
    w.tensor("phi_inv", h.phi_inv());
    w.vector("alpha", h.alpha());
    w.vector("beta", h.beta());
    if let Some(p) = h.pivotal() {
        w.vector("pivot", p.pivot());
        w.tensor("twist", p.twist());
        w.tensor("twist_inv", p.twist_inv());
    }
    for (name, g) in h.generators() {
        w.vector(&format!("generator {name}"), g);
    }
    for (name, e) in &doc.elements {
        w.vector(&format!("element {name}"), e);
    }
    for (name, f) in &doc.forms {
        w.vector(&format!("form {name}"), f.coeffs());
    }
    Ok(w.out)
}

/// Reads and parses a file.
pub fn load(path: &std::path::Path) -> Result<SpecDocument> {
    parse(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{kz2, kz2_nonpivotal, sweedler};

    #[test]
    fn fixtures_round_trip() {
        for h in [kz2(), sweedler(), kz2_nonpivotal()] {
            let doc = SpecDocument::new(h);
            let text = serialize(&doc).unwrap();
            let back = parse(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(serialize(&back).unwrap(), text);
        }
    }

    #[test]
    fn bad_coefficient_names_line() {
        let mut text = serialize(&SpecDocument::new(kz2())).unwrap();
        text = text.replacen("0 0 0 1\n", "0 0 0 1/0\n", 1);
        match parse(&text) {
            Err(Error::Syntax { line, .. }) => {
                assert_eq!(text.lines().nth(line - 1).unwrap(), "0 0 0 1/0");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn semantic_errors() {
        let text = serialize(&SpecDocument::new(kz2())).unwrap();
        let out_of_range = text.replacen("0 0 0 1\n", "0 0 7 1\n", 1);
        assert!(matches!(parse(&out_of_range), Err(Error::Semantic(_))));
        let start = text.find("antipode_inv").unwrap();
        let end = start + text[start..].find("end\n").unwrap() + 4;
        let missing = format!("{}{}", &text[..start], &text[end..]);
        assert!(matches!(parse(&missing), Err(Error::Semantic(m)) if m.contains("inverse antipode")));
        assert!(matches!(
            parse("qhspec 1\nfield x\n"),
            Err(Error::Syntax { line: 2, column: 7, .. })
        ));
    }
}
