use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::chaincx::{ChainComplex, ChainMap};
use crate::decomp::BettiDiagram;
use crate::error::{Error, Result};
use crate::exactlin::{Field, FieldMatrix};
use crate::tamecat::{Param, TameComplex, TameMap};
use crate::zigzag::{DiscreteZigzag, Profile};

use super::filtration::{parse_filtration, FilteredComplex};
use super::text::{join, write_matrix, Line, Reader};

// `dims …` followed by `diff n RxC` blocks
fn read_complex(r: &mut Reader, field: Field, head: &Line) -> Result<ChainComplex> {
    let dl = r.expect("dims")?;
    let dims: Vec<usize> = dl.numbers(1)?;
    let mut diffs: Vec<FieldMatrix> = (0..dims.len().saturating_sub(1))
        .map(|n| FieldMatrix::zeros(field, dims[n], dims[n + 1]))
        .collect();
    while r.peek_keyword() == Some("diff") {
        let l = r.next_line().expect("peeked");
        l.expect_len(3)?;
        let n: usize = l.number(1)?;
        let (rows, cols) = l.shape(2)?;
        let want = (
            dims.get(n).copied().unwrap_or(0),
            dims.get(n + 1).copied().unwrap_or(0),
        );
        if n >= diffs.len() || (rows, cols) != want {
            return Err(l.error(2, format!("δ_{n} must be {}x{}", want.0, want.1)));
        }
        diffs[n] = r.matrix(field, rows, cols)?;
    }
    ChainComplex::new(field, dims, diffs).map_err(|e| head.wrap(e))
}

fn write_complex(out: &mut String, x: &ChainComplex) {
    out.push_str("dims");
    for d in x.dims() {
        out.push_str(&format!(" {d}"));
    }
    out.push('\n');
    for n in 0..x.len().saturating_sub(1) {
        let d = x.diff(n);
        if !d.is_zero() {
            write_matrix(out, &format!("diff {n}"), &d);
        }
    }
}

// `deg n RxC` blocks
fn read_map(
    r: &mut Reader,
    field: Field,
    x: &ChainComplex,
    y: &ChainComplex,
    head: &Line,
) -> Result<ChainMap> {
    let len = x.len().max(y.len());
    let mut comps: Vec<FieldMatrix> = (0..len)
        .map(|n| FieldMatrix::zeros(field, y.dim(n), x.dim(n)))
        .collect();
    while r.peek_keyword() == Some("deg") {
        let l = r.next_line().expect("peeked");
        l.expect_len(3)?;
        let n: usize = l.number(1)?;
        let (rows, cols) = l.shape(2)?;
        if (rows, cols) != (y.dim(n), x.dim(n)) {
            return Err(l.error(
                2,
                format!("degree {n} component must be {}x{}", y.dim(n), x.dim(n)),
            ));
        }
        let m = r.matrix(field, rows, cols)?;
        if n < len {
            comps[n] = m;
        }
    }
    ChainMap::new(x.clone(), y.clone(), comps).map_err(|e| head.wrap(e))
}

fn write_map(out: &mut String, g: &ChainMap) {
    for (n, c) in g.components().iter().enumerate() {
        if !c.is_zero() {
            write_matrix(out, &format!("deg {n}"), c);
        }
    }
}

fn read_index(l: &Line, count: usize, seen: &mut [bool]) -> Result<usize> {
    l.expect_len(2)?;
    let a: usize = l.number(1)?;
    if a >= count {
        return Err(l.error(1, format!("index {a} out of range 0..{count}")));
    }
    if std::mem::replace(&mut seen[a], true) {
        return Err(l.error(1, format!("index {a} given twice")));
    }
    Ok(a)
}

fn read_grid<'a>(r: &mut Reader<'a>) -> Result<(Line<'a>, Vec<Param>)> {
    let l = r.expect("grid")?;
    let grid = (1..l.len())
        .map(|i| l.param(i))
        .collect::<Result<Vec<_>>>()?;
    if grid.is_empty() {
        return Err(l.error(1, "grid needs at least one value"));
    }
    Ok((l, grid))
}

fn unexpected(r: &mut Reader, what: &str) -> Error {
    match r.next_line() {
        Some(l) => l.error(0, format!("unexpected `{}` in {what}", l.keyword())),
        None => r.eof_error(format!("unexpected end of {what}")),
    }
}

/// Parse a `tame` document.
///
/// `field` is the modulus requested by the caller, if any; a `field` line in the
/// document must agree with it.
pub fn parse_tame(text: &str, field: Option<Field>) -> Result<TameComplex> {
    let mut r = Reader::new(text);
    r.expect("tame")?;
    let field = r.field(field)?;
    let (gl, grid) = read_grid(&mut r)?;
    let k = grid.len();
    let mut values: Vec<Option<(Line, ChainComplex)>> = vec![None; k];
    let mut seen = vec![false; k];
    while r.peek_keyword() == Some("point") {
        let l = r.next_line().expect("peeked");
        let a = read_index(&l, k, &mut seen)?;
        let x = read_complex(&mut r, field, &l)?;
        values[a] = Some((l, x));
    }
    let values: Vec<ChainComplex> = values
        .into_iter()
        .enumerate()
        .map(|(a, v)| {
            v.map(|v| v.1)
                .ok_or_else(|| gl.error(0, format!("point {a} is missing")))
        })
        .collect::<Result<_>>()?;
    let mut steps: Vec<Option<ChainMap>> = vec![None; k];
    let mut seen = vec![false; k];
    seen[0] = true;
    while r.peek_keyword() == Some("step") {
        let l = r.next_line().expect("peeked");
        let a = read_index(&l, k, &mut seen)?;
        steps[a] = Some(read_map(&mut r, field, &values[a - 1], &values[a], &l)?);
    }
    if r.peek().is_some() {
        return Err(unexpected(&mut r, "tame document"));
    }
    let transitions = (1..k)
        .map(|a| {
            steps[a]
                .take()
                .unwrap_or_else(|| ChainMap::zero(&values[a - 1], &values[a]))
        })
        .collect();
    TameComplex::new(grid, values, transitions).map_err(|e| gl.wrap(e))
}

pub fn serialize_tame(x: &TameComplex) -> String {
    let mut out = format!(
        "tame\nfield {}\ngrid {}\n",
        x.field().modulus(),
        join(x.grid())
    );
    for (a, v) in x.values().iter().enumerate() {
        out.push_str(&format!("point {a}\n"));
        write_complex(&mut out, v);
    }
    for a in 1..x.num_points() {
        out.push_str(&format!("step {a}\n"));
        write_map(&mut out, x.step(a));
    }
    out
}

/// Parse a `tamemap` document between two given objects; both are refined to its grid.
pub fn parse_tame_map(
    text: &str,
    source: &TameComplex,
    target: &TameComplex,
    field: Option<Field>,
) -> Result<TameMap> {
    let mut r = Reader::new(text);
    r.expect("tamemap")?;
    let field = r.field(field.or(Some(source.field())))?;
    let (gl, grid) = read_grid(&mut r)?;
    let x = source.refine(&grid).map_err(|e| gl.wrap(e))?;
    let y = target.refine(&grid).map_err(|e| gl.wrap(e))?;
    let k = grid.len();
    let mut comps: Vec<Option<ChainMap>> = vec![None; k];
    let mut seen = vec![false; k];
    while r.peek_keyword() == Some("point") {
        let l = r.next_line().expect("peeked");
        let a = read_index(&l, k, &mut seen)?;
        comps[a] = Some(read_map(&mut r, field, x.value(a), y.value(a), &l)?);
    }
    if r.peek().is_some() {
        return Err(unexpected(&mut r, "tamemap document"));
    }
    let comps = comps
        .into_iter()
        .enumerate()
        .map(|(a, c)| c.unwrap_or_else(|| ChainMap::zero(x.value(a), y.value(a))))
        .collect();
    TameMap::new(x, y, comps).map_err(|e| gl.wrap(e))
}

pub fn serialize_tame_map(g: &TameMap) -> String {
    let mut out = format!(
        "tamemap\nfield {}\ngrid {}\n",
        g.source().field().modulus(),
        join(g.grid())
    );
    for (a, c) in g.components().iter().enumerate() {
        out.push_str(&format!("point {a}\n"));
        write_map(&mut out, c);
    }
    out
}

pub fn parse_zigzag(text: &str, field: Option<Field>) -> Result<DiscreteZigzag> {
    let mut r = Reader::new(text);
    r.expect("zigzag")?;
    let field = r.field(field)?;
    let pl = r.expect("profile")?;
    pl.expect_len(2)?;
    let profile: Profile = pl
        .tok(1)
        .expect("length checked")
        .parse()
        .map_err(|e: Error| pl.error(1, e.to_string()))?;
    let k = profile.k();
    let mut spaces: Vec<Option<ChainComplex>> = vec![None; k + 1];
    let mut seen = vec![false; k + 1];
    while r.peek_keyword() == Some("space") {
        let l = r.next_line().expect("peeked");
        let a = read_index(&l, k + 1, &mut seen)?;
        spaces[a] = Some(read_complex(&mut r, field, &l)?);
    }
    let spaces: Vec<ChainComplex> = spaces
        .into_iter()
        .enumerate()
        .map(|(a, s)| s.ok_or_else(|| pl.error(0, format!("space {a} is missing"))))
        .collect::<Result<_>>()?;
    let mut maps: Vec<Option<ChainMap>> = vec![None; k + 1];
    let mut seen = vec![false; k + 1];
    seen[0] = true;
    let ends = |a: usize| match profile.dir(a) {
        crate::zigzag::Direction::R => (&spaces[a - 1], &spaces[a]),
        crate::zigzag::Direction::L => (&spaces[a], &spaces[a - 1]),
    };
    while r.peek_keyword() == Some("map") {
        let l = r.next_line().expect("peeked");
        let a = read_index(&l, k + 1, &mut seen)?;
        let (x, y) = ends(a);
        maps[a] = Some(read_map(&mut r, field, x, y, &l)?);
    }
    if r.peek().is_some() {
        return Err(unexpected(&mut r, "zigzag document"));
    }
    let maps = (1..=k)
        .map(|a| {
            maps[a].take().unwrap_or_else(|| {
                let (x, y) = ends(a);
                ChainMap::zero(x, y)
            })
        })
        .collect();
    DiscreteZigzag::new(profile, spaces, maps).map_err(|e| pl.wrap(e))
}

pub fn serialize_zigzag(z: &DiscreteZigzag) -> String {
    let mut out = format!(
        "zigzag\nfield {}\nprofile {}\n",
        z.space(0).field().modulus(),
        z.profile()
    );
    for (a, s) in z.spaces().iter().enumerate() {
        out.push_str(&format!("space {a}\n"));
        write_complex(&mut out, s);
    }
    for a in 1..=z.k() {
        out.push_str(&format!("map {a}\n"));
        write_map(&mut out, z.map(a));
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DiagramFormat {
    #[default]
    Csv,
    Structured,
}

impl FromStr for DiagramFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(DiagramFormat::Csv),
            "structured" => Ok(DiagramFormat::Structured),
            other => Err(Error::Invalid(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for DiagramFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagramFormat::Csv => "csv",
            DiagramFormat::Structured => "structured",
        })
    }
}

pub const CSV_HEADER: &str = "degree,birth,death,multiplicity,diagonal";

/// Write Betti diagrams, one point per row, ordered by degree and then `(birth, death)`.
pub fn emit_diagrams(diagrams: &[BettiDiagram], format: DiagramFormat) -> String {
    let mut out = String::new();
    match format {
        DiagramFormat::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for (n, d) in diagrams.iter().enumerate() {
                for &((s, e), m) in d.points() {
                    out.push_str(&format!("{n},{s},{e},{m},{}\n", s == e));
                }
            }
        }
        DiagramFormat::Structured => {
            out.push_str("diagrams\n");
            for (n, d) in diagrams.iter().enumerate() {
                out.push_str(&format!("degree {n}\n"));
                for &((s, e), m) in d.points() {
                    out.push_str(&format!("{s} {e} {m}\n"));
                }
            }
        }
    }
    out
}

/// Parse the structured diagram format.
pub fn parse_diagrams(text: &str) -> Result<Vec<BettiDiagram>> {
    let mut r = Reader::new(text);
    r.expect("diagrams")?;
    let mut out: Vec<BettiDiagram> = Vec::new();
    while let Some(l) = r.next_line() {
        if l.keyword() == "degree" {
            l.expect_len(2)?;
            let n: usize = l.number(1)?;
            if n != out.len() {
                return Err(l.error(1, format!("expected degree {}", out.len())));
            }
            out.push(BettiDiagram::new());
            continue;
        }
        let Some(d) = out.last_mut() else {
            return Err(l.error(0, "point before the first `degree` line"));
        };
        l.expect_len(3)?;
        let (s, e) = (l.param(0)?, l.param(1)?);
        let m: usize = l.number(2)?;
        if !s.is_finite() || s > e {
            return Err(l.error(0, format!("({s}, {e}) is not a point with s <= e")));
        }
        d.insert(s, e, m);
    }
    Ok(out)
}

/// Any of the documents the command line reads.
#[derive(Clone, Debug)]
pub enum Document {
    Filtration(FilteredComplex),
    Tame(TameComplex),
    Zigzag(DiscreteZigzag),
    Diagrams(Vec<BettiDiagram>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Filtration(_) => "filtration",
            Document::Tame(_) => "tame",
            Document::Zigzag(_) => "zigzag",
            Document::Diagrams(_) => "diagrams",
        }
    }
}

/// Dispatch on the first keyword; anything without a known header is a filtration.
pub fn parse_document(text: &str, field: Option<Field>) -> Result<Document> {
    match Reader::new(text).peek_keyword() {
        Some("tame") => parse_tame(text, field).map(Document::Tame),
        Some("zigzag") => parse_zigzag(text, field).map(Document::Zigzag),
        Some("diagrams") => parse_diagrams(text).map(Document::Diagrams),
        Some("tamemap") => Err(Error::Invalid(
            "a tamemap document needs its source and target; use morphism-betti".into(),
        )),
        _ => parse_filtration(text).map(Document::Filtration),
    }
}

/// Summary counts used by `validate`.
pub fn describe(doc: &Document) -> BTreeMap<&'static str, String> {
    let mut m = BTreeMap::new();
    m.insert("kind", doc.kind().to_string());
    match doc {
        Document::Filtration(f) => {
            m.insert("simplices", f.simplices().len().to_string());
        }
        Document::Tame(x) => {
            m.insert("field", x.field().modulus().to_string());
            m.insert("grid", join(x.grid()));
            m.insert("cofibrant", x.is_cofibrant().to_string());
        }
        Document::Zigzag(z) => {
            m.insert("field", z.space(0).field().modulus().to_string());
            m.insert("profile", z.profile().to_string());
        }
        Document::Diagrams(d) => {
            m.insert("degrees", d.len().to_string());
        }
    }
    m
}
