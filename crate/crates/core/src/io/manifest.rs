//! Line-oriented files: pair manifests, ideal files and system files.
//!
//! ```text
//! ground_field: Q
//! n: 1
//! primality: constructed:affine/graph
//! [V]
//! [W]
//! u1 - x1^2
//! [point]
//! x1 = 1
//! ```
//!
//! Header lines are `key: value`; sections hold one entry per line; `#`
//! starts a comment line.

use std::fmt::Write as _;
use std::path::Path;

use num_rational::BigRational;

use super::parse::{parse_equation, parse_poly_in, parse_rational, ParseContext};
use super::print::poly_to_string;
use crate::diff::DiffSystem;
use crate::error::{Error, Result};
use crate::ideal::{standard_ambient, Ideal};
use crate::pair::{Family, GoodPair, Primality, RationalPoint, VarietyPresentation};
use crate::poly::var::{u_vars, x_vars};
use crate::poly::{GroundField, Polynomial, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ManifestPrimality {
    Asserted,
    Constructed { v: Family, w: Family },
}

impl ManifestPrimality {
    fn parse(s: &str) -> Option<Self> {
        if s == "asserted" {
            return Some(ManifestPrimality::Asserted);
        }
        let rest = s.strip_prefix("constructed:")?;
        let (v, w) = rest.split_once('/')?;
        Some(ManifestPrimality::Constructed { v: Family::parse(v)?, w: Family::parse(w)? })
    }

    fn split(self) -> (Primality, Primality) {
        match self {
            ManifestPrimality::Asserted => (Primality::Asserted, Primality::Asserted),
            ManifestPrimality::Constructed { v, w } => (Primality::Constructed(v), Primality::Constructed(w)),
        }
    }
}

impl std::fmt::Display for ManifestPrimality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ManifestPrimality::Asserted => write!(f, "asserted"),
            ManifestPrimality::Constructed { v, w } => write!(f, "constructed:{}/{}", v.name(), w.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairManifest {
    pub field: GroundField,
    pub n: u32,
    pub primality: ManifestPrimality,
    /// Number of stacked coordinate blocks, when known.
    pub blocks: Option<u32>,
    /// Extra `key: value` lines, kept in order.
    pub meta: Vec<(String, String)>,
    pub v: Vec<Polynomial>,
    pub w: Vec<Polynomial>,
    pub point: Option<RationalPoint>,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Moves an error from a single-line sub-parse to its place in the file.
fn relocate(e: Error, line: usize, offset: usize) -> Error {
    match e {
        Error::Parse { column, message, .. } => parse_error(line, column + offset, message),
        other => other,
    }
}

/// One logical line: number (1-based), leading-whitespace offset, content.
struct Line<'a> {
    no: usize,
    offset: usize,
    text: &'a str,
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let trimmed = raw.trim_start();
        let offset = raw.chars().count() - trimmed.chars().count();
        let t = trimmed.trim_end();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some(Line { no: i + 1, offset, text: t })
        }
    })
}

/// Splits a file into header pairs and named sections.
struct Sections<'a> {
    header: Vec<(Line<'a>, &'a str, &'a str)>,
    sections: Vec<(String, Line<'a>, Vec<Line<'a>>)>,
}

fn split<'a>(text: &'a str, allowed: &[&str]) -> Result<Sections<'a>> {
    let mut out = Sections { header: Vec::new(), sections: Vec::new() };
    for line in lines(text) {
        if let Some(name) = line.text.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| parse_error(line.no, line.offset + 1, "unterminated section header"))?;
            if !allowed.contains(&name) {
                return Err(parse_error(line.no, line.offset + 2, format!("unknown section [{}]", name)));
            }
            if out.sections.iter().any(|(s, _, _)| s == name) {
                return Err(parse_error(line.no, line.offset + 2, format!("duplicate section [{}]", name)));
            }
            out.sections.push((name.to_string(), line, Vec::new()));
        } else if let Some((_, _, body)) = out.sections.last_mut() {
            body.push(line);
        } else {
            let (k, v) = line
                .text
                .split_once(':')
                .ok_or_else(|| parse_error(line.no, line.offset + 1, "expected 'key: value'"))?;
            out.header.push((Line { no: line.no, offset: line.offset, text: line.text }, k.trim(), v.trim()));
        }
    }
    Ok(out)
}

impl<'a> Sections<'a> {
    fn section(&self, name: &str) -> Option<&[Line<'a>]> {
        self.sections.iter().find(|(s, _, _)| s == name).map(|(_, _, b)| b.as_slice())
    }

    fn value(&self, key: &str) -> Option<(&Line<'a>, &'a str)> {
        self.header.iter().find(|(_, k, _)| *k == key).map(|(l, _, v)| (l, *v))
    }

    fn required(&self, key: &str) -> Result<(&Line<'a>, &'a str)> {
        self.value(key).ok_or_else(|| parse_error(1, 1, format!("missing '{}:'", key)))
    }
}

fn value_column(line: &Line<'_>) -> usize {
    let colon = line.text.find(':').unwrap_or(0);
    let rest = &line.text[colon + 1..];
    line.offset + colon + 2 + (rest.len() - rest.trim_start().len())
}

fn field_of(s: &Sections<'_>) -> Result<GroundField> {
    let (line, v) = s.required("ground_field")?;
    GroundField::parse(v).ok_or_else(|| parse_error(line.no, value_column(line), format!("unknown ground field '{}'", v)))
}

fn number(s: &Sections<'_>, key: &str) -> Result<Option<u32>> {
    match s.value(key) {
        None => Ok(None),
        Some((line, v)) => match v.parse::<u32>() {
            Ok(k) if k >= 1 => Ok(Some(k)),
            _ => Err(parse_error(line.no, value_column(line), format!("'{}' must be a positive integer", key))),
        },
    }
}

fn polys(body: &[Line<'_>], ctx: &ParseContext) -> Result<Vec<Polynomial>> {
    body.iter()
        .map(|l| parse_poly_in(l.text, ctx).map_err(|e| relocate(e, l.no, l.offset)))
        .collect()
}

fn parse_point(body: &[Line<'_>], field: GroundField, n: u32) -> Result<RationalPoint> {
    let mut t = None;
    let mut coords: Vec<Option<BigRational>> = vec![None; n as usize];
    for l in body {
        let (k, v) = l
            .text
            .split_once('=')
            .ok_or_else(|| parse_error(l.no, l.offset + 1, "expected 'name = value'"))?;
        let col = l.offset + k.len() + 2 + (v.len() - v.trim_start().len());
        let value = parse_rational(v.trim()).map_err(|e| relocate(e, l.no, col - 1))?;
        let k = k.trim();
        if k == "t" {
            if field != GroundField::Qt {
                return Err(parse_error(l.no, l.offset + 1, "'t' given for a point over Q"));
            }
            t = Some(value);
        } else {
            let idx = k
                .strip_prefix('x')
                .and_then(|i| i.parse::<u32>().ok())
                .filter(|i| *i >= 1 && *i <= n)
                .ok_or_else(|| parse_error(l.no, l.offset + 1, format!("expected t or x1..x{}", n)))?;
            coords[idx as usize - 1] = Some(value);
        }
    }
    if field == GroundField::Qt && t.is_none() {
        return Err(parse_error(body.first().map_or(1, |l| l.no), 1, "point over Q(t) needs a value for t"));
    }
    let coords = coords
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| parse_error(body.first().map_or(1, |l| l.no), 1, format!("point lacks x{}", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalPoint { t, coords })
}

fn rational_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl PairManifest {
    pub fn parse(text: &str) -> Result<PairManifest> {
        let s = split(text, &["V", "W", "point"])?;
        let field = field_of(&s)?;
        let n = number(&s, "n")?.ok_or_else(|| parse_error(1, 1, "missing 'n:'"))?;
        let (pl, pv) = s.required("primality")?;
        let primality = ManifestPrimality::parse(pv).ok_or_else(|| {
            parse_error(pl.no, value_column(pl), "primality must be 'asserted' or 'constructed:<family>/<family>'")
        })?;
        let blocks = number(&s, "blocks")?;
        let known = ["ground_field", "n", "primality", "blocks"];
        let meta = s
            .header
            .iter()
            .filter(|(_, k, _)| !known.contains(k))
            .map(|(_, k, v)| (k.to_string(), v.to_string()))
            .collect();
        let vctx = ParseContext { field, allow_u: false, allow_derivatives: false, max_index: Some(n) };
        let wctx = ParseContext { allow_u: true, ..vctx };
        let v = polys(s.section("V").ok_or_else(|| parse_error(1, 1, "missing [V] section"))?, &vctx)?;
        let w = polys(s.section("W").ok_or_else(|| parse_error(1, 1, "missing [W] section"))?, &wctx)?;
        let point = match s.section("point") {
            Some(body) => Some(parse_point(body, field, n)?),
            None => None,
        };
        Ok(PairManifest { field, n, primality, blocks, meta, v, w, point })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "ground_field: {}", self.field.name()).unwrap();
        writeln!(out, "n: {}", self.n).unwrap();
        writeln!(out, "primality: {}", self.primality).unwrap();
        if let Some(b) = self.blocks {
            writeln!(out, "blocks: {}", b).unwrap();
        }
        for (k, v) in &self.meta {
            writeln!(out, "{}: {}", k, v).unwrap();
        }
        out.push_str("[V]\n");
        for p in &self.v {
            writeln!(out, "{}", poly_to_string(p)).unwrap();
        }
        out.push_str("[W]\n");
        for p in &self.w {
            writeln!(out, "{}", poly_to_string(p)).unwrap();
        }
        if let Some(pt) = &self.point {
            out.push_str("[point]\n");
            if let Some(t) = &pt.t {
                writeln!(out, "t = {}", rational_text(t)).unwrap();
            }
            for (i, c) in pt.coords.iter().enumerate() {
                writeln!(out, "x{} = {}", i + 1, rational_text(c)).unwrap();
            }
        }
        out
    }

    pub fn load(path: &Path) -> Result<PairManifest> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {}", path.display(), e)))?;
        PairManifest::parse(&text)
    }

    pub fn presentations(&self) -> Result<(VarietyPresentation, VarietyPresentation)> {
        let (pv, pw) = self.primality.split();
        let v = VarietyPresentation::base(self.field, self.n, self.v.clone(), pv)?;
        let w = VarietyPresentation::total(self.field, self.n, self.w.clone(), pw)?;
        Ok((v, w))
    }

    /// A manifest for an accepted pair, generators as stored in the pair.
    pub fn from_pair(pair: &GoodPair) -> PairManifest {
        let primality = match (pair.v.primality, pair.w.primality) {
            (Primality::Constructed(v), Primality::Constructed(w)) => ManifestPrimality::Constructed { v, w },
            _ => ManifestPrimality::Asserted,
        };
        PairManifest {
            field: pair.field(),
            n: pair.n(),
            primality,
            blocks: None,
            meta: Vec::new(),
            v: pair.v.generators().to_vec(),
            w: pair.w.generators().to_vec(),
            point: pair.point.clone(),
        }
    }
}

/// An ideal file: `ground_field`, optional `n`, and an `[ideal]` section.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealFile {
    pub field: GroundField,
    pub n: Option<u32>,
    pub generators: Vec<Polynomial>,
}

impl IdealFile {
    pub fn parse(text: &str) -> Result<IdealFile> {
        let s = split(text, &["ideal"])?;
        let field = field_of(&s)?;
        let n = number(&s, "n")?;
        let ctx = ParseContext { field, allow_u: true, allow_derivatives: false, max_index: n };
        let generators = polys(s.section("ideal").ok_or_else(|| parse_error(1, 1, "missing [ideal] section"))?, &ctx)?;
        Ok(IdealFile { field, n, generators })
    }

    /// `x1..xn` (and `u1..un` if any generator uses them) when `n` is given,
    /// else the variables that occur.
    pub fn ideal(&self) -> Result<Ideal> {
        let uses_u = self.generators.iter().any(|g| g.involves(|v| v.is_u()));
        let vars: Vec<Var> = match self.n {
            Some(n) => {
                let mut v = x_vars(n);
                if uses_u {
                    v.extend(u_vars(n));
                }
                v
            }
            None => self.generators.iter().flat_map(|g| g.vars()).collect(),
        };
        Ideal::new(self.field, standard_ambient(vars), self.generators.clone())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ground_field: {}\n", self.field.name());
        if let Some(n) = self.n {
            writeln!(out, "n: {}", n).unwrap();
        }
        out.push_str("[ideal]\n");
        for g in &self.generators {
            writeln!(out, "{}", poly_to_string(g)).unwrap();
        }
        out
    }
}

/// A system file: `ground_field`, `n`, and `[equations]` of the form
/// `x1'' = x1'`.
pub fn parse_system(text: &str) -> Result<DiffSystem> {
    let s = split(text, &["equations"])?;
    let field = field_of(&s)?;
    let n = number(&s, "n")?.ok_or_else(|| parse_error(1, 1, "missing 'n:'"))?;
    let ctx = ParseContext::differential(field).with_max_index(n);
    let mut eqs = Vec::new();
    for l in s.section("equations").unwrap_or(&[]) {
        let (lhs, rhs) = parse_equation(l.text, &ctx).map_err(|e| relocate(e, l.no, l.offset))?;
        let lead = match lhs.terms().collect::<Vec<_>>().as_slice() {
            [(m, c)] if c.is_one() && m.degree() == 1 => m.factors()[0].0,
            _ => return Err(parse_error(l.no, l.offset + 1, "left-hand side must be a single derivative")),
        };
        eqs.push((lead, rhs));
    }
    DiffSystem::new(field, n, eqs)
}

pub fn system_to_text(system: &DiffSystem) -> String {
    let mut out = format!("ground_field: {}\nn: {}\n[equations]\n", system.field().name(), system.n());
    for (i, k, g) in system.equations() {
        writeln!(out, "{} = {}", Var::deriv(i, k), poly_to_string(g)).unwrap();
    }
    out
}
