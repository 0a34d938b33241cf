use std::collections::HashMap;

use crate::chaincx::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactlin::{Field, FieldMatrix};
use crate::tamecat::{Param, TameComplex};

use super::text::Reader;

/// Simplices with the parameter at which each enters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    simplices: Vec<(Vec<u32>, Param)>,
}

impl FilteredComplex {
    /// Vertex lists are sorted on the way in; a repeated vertex or simplex is an error.
    pub fn new(simplices: Vec<(Vec<u32>, Param)>) -> Result<Self> {
        let mut seen = HashMap::new();
        let mut out = Vec::with_capacity(simplices.len());
        for (mut s, t) in simplices {
            s.sort_unstable();
            if s.is_empty() || s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invalid(format!(
                    "simplex {} is empty or repeats a vertex",
                    show(&s)
                )));
            }
            if !t.is_finite() {
                return Err(Error::BadParams(format!(
                    "simplex {} enters at inf",
                    show(&s)
                )));
            }
            if seen.insert(s.clone(), t).is_some() {
                return Err(Error::Invalid(format!("simplex {} listed twice", show(&s))));
            }
            out.push((s, t));
        }
        for (s, t) in &out {
            if s.len() < 2 {
                continue;
            }
            for i in 0..s.len() {
                let face: Vec<u32> = face_of(s, i);
                match seen.get(&face) {
                    Some(ft) if ft <= t => {}
                    _ => {
                        return Err(Error::FaceOrder {
                            simplex: show(s),
                            face: show(&face),
                        })
                    }
                }
            }
        }
        Ok(FilteredComplex { simplices: out })
    }

    pub fn simplices(&self) -> &[(Vec<u32>, Param)] {
        &self.simplices
    }
}

fn face_of(s: &[u32], i: usize) -> Vec<u32> {
    s.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &v)| v)
        .collect()
}

fn show(s: &[u32]) -> String {
    let v: Vec<String> = s.iter().map(u32::to_string).collect();
    format!("[{}]", v.join(","))
}

/// One simplex per line: the entry parameter, then the vertex ids.
///
/// ```text
/// # two points joined at time 1
/// 0 0
/// 0 1
/// 1 0 1
/// ```
pub fn parse_filtration(text: &str) -> Result<FilteredComplex> {
    let mut r = Reader::new(text);
    if r.peek_keyword() == Some("filtration") {
        r.next_line();
    }
    let mut simplices = Vec::new();
    while let Some(line) = r.next_line() {
        let t: Param = line.param(0)?;
        let verts = (1..line.len())
            .map(|i| line.number::<u32>(i))
            .collect::<Result<Vec<_>>>()?;
        if verts.is_empty() {
            return Err(line.error(0, "expected vertex ids after the parameter"));
        }
        simplices.push((verts, t));
    }
    FilteredComplex::new(simplices)
}

pub fn serialize_filtration(f: &FilteredComplex) -> String {
    let mut out = String::from("filtration\n");
    for (s, t) in &f.simplices {
        out.push_str(&t.to_string());
        for v in s {
            out.push(' ');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

/// The simplicial chains of the sublevel complexes.
///
/// The grid is 0 followed by the distinct entry values. Each degree is ordered by entry
/// value and then lexicographically, so every transition is the inclusion of a prefix.
/// Boundaries use `∂[v_0..v_q] = Σ (-1)^i [.., v̂_i, ..]`.
pub fn ingest_filtration(f: &FilteredComplex, field: Field) -> Result<TameComplex> {
    let mut grid: Vec<Param> = f.simplices.iter().map(|(_, t)| *t).collect();
    grid.push(Param::ZERO);
    grid.sort();
    grid.dedup();

    let top = f.simplices.iter().map(|(s, _)| s.len()).max().unwrap_or(0);
    let mut by_dim: Vec<Vec<(Param, &Vec<u32>)>> = vec![Vec::new(); top];
    for (s, t) in &f.simplices {
        by_dim[s.len() - 1].push((*t, s));
    }
    for d in &mut by_dim {
        d.sort();
    }
    let index: Vec<HashMap<&Vec<u32>, usize>> = by_dim
        .iter()
        .map(|d| d.iter().enumerate().map(|(i, (_, s))| (*s, i)).collect())
        .collect();
    // full boundary matrices; each grid point takes a leading block
    let full: Vec<FieldMatrix> = (1..top)
        .map(|q| {
            let mut m = FieldMatrix::zeros(field, by_dim[q - 1].len(), by_dim[q].len());
            for (j, (_, s)) in by_dim[q].iter().enumerate() {
                for i in 0..s.len() {
                    let row = index[q - 1][&face_of(s, i)];
                    m.set(row, j, field.from_i64(if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            m
        })
        .collect();

    let values: Vec<ChainComplex> = grid
        .iter()
        .map(|&t| {
            let dims: Vec<usize> = by_dim
                .iter()
                .map(|d| d.partition_point(|(e, _)| *e <= t))
                .collect();
            let diffs = (0..top.saturating_sub(1))
                .map(|q| full[q].submatrix(0, dims[q], 0, dims[q + 1]))
                .collect();
            ChainComplex::new(field, dims, diffs)
        })
        .collect::<Result<_>>()?;
    let transitions = (1..grid.len())
        .map(|a| {
            let (x, y) = (&values[a - 1], &values[a]);
            let comps = (0..y.len())
                .map(|n| FieldMatrix::identity(field, y.dim(n)).submatrix(0, y.dim(n), 0, x.dim(n)))
                .collect();
            ChainMap::new(x.clone(), y.clone(), comps)
        })
        .collect::<Result<_>>()?;
    TameComplex::new(grid, values, transitions)
}
