//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use rand::Rng;
use tamecx::decomp::BettiDiagram;
use tamecx::tamecat::{Param, TameComplex};

/// `(degree, birth, death) -> multiplicity`, zero-length bars omitted.
pub type Barcode = BTreeMap<(usize, Param, Param), usize>;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Off-diagonal points of library diagrams in oracle form.
pub fn barcode_of(diagrams: &[BettiDiagram]) -> Barcode {
    let mut out = Barcode::new();
    for (n, d) in diagrams.iter().enumerate() {
        for &((s, e), m) in d.points() {
            if s != e {
                *out.entry((n, s, e)).or_default() += m;
            }
        }
    }
    out
}

/// Standard column reduction over F2.
///
/// `columns[j]` lists the rows of column `j` (rows and columns share one index space,
/// already in filtration order). Returns the pivot row of every reduced column.
fn reduce_f2(columns: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(columns.len());
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut lows = Vec::with_capacity(columns.len());
    for col in columns {
        let mut c: Vec<usize> = col.clone();
        c.sort_unstable();
        while let Some(&j) = c.last().and_then(|low| owner.get(low)) {
            c = xor(&c, &reduced[j]);
        }
        let low = c.last().copied();
        if let Some(l) = low {
            owner.insert(l, reduced.len());
        }
        lows.push(low);
        reduced.push(c);
    }
    lows
}

fn xor(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(*x);
                i += 1;
            }
            (Some(x), None) => {
                out.push(*x);
                i += 1;
            }
            (_, Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Persistence of a simplicial filtration over F2 by boundary-matrix reduction.
pub fn filtration_barcode(simplices: &[(Vec<u32>, Param)]) -> Barcode {
    let mut order: Vec<(Param, usize, Vec<u32>)> = simplices
        .iter()
        .map(|(s, t)| {
            let mut s = s.clone();
            s.sort_unstable();
            (*t, s.len(), s)
        })
        .collect();
    order.sort();
    let index: HashMap<&Vec<u32>, usize> = order
        .iter()
        .enumerate()
        .map(|(i, (_, _, s))| (s, i))
        .collect();
    let columns: Vec<Vec<usize>> = order
        .iter()
        .map(|(_, _, s)| {
            if s.len() < 2 {
                return Vec::new();
            }
            (0..s.len())
                .map(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    index[&f]
                })
                .collect()
        })
        .collect();
    let lows = reduce_f2(&columns);
    let mut paired = vec![false; order.len()];
    let mut out = Barcode::new();
    for (j, low) in lows.iter().enumerate() {
        if let Some(i) = *low {
            paired[i] = true;
            paired[j] = true;
            let (b, d) = (order[i].0, order[j].0);
            if b != d {
                *out.entry((order[i].1 - 1, b, d)).or_default() += 1;
            }
        }
    }
    for (j, low) in lows.iter().enumerate() {
        if low.is_none() && !paired[j] {
            *out.entry((order[j].1 - 1, order[j].0, Param::Infinity))
                .or_default() += 1;
        }
    }
    out
}

/// Barcode of a tame vector space over F2 through its mapping telescope: generators of
/// every `V^a` enter at `τ_a`, and at `τ_a` an edge joins each basis vector of `V^{a-1}`
/// to its image in `V^a`. `H_0` of the telescope at `τ_a` is `V^a`.
pub fn module_barcode(x: &TameComplex) -> Barcode {
    assert_eq!(x.field().modulus(), 2);
    let k = x.num_points();
    let dims: Vec<usize> = (0..k).map(|a| x.value(a).dim(0)).collect();
    let mut offset = vec![0];
    for d in &dims {
        offset.push(offset.last().unwrap() + d);
    }
    let rows = offset[k];
    let mut births = Vec::with_capacity(rows);
    for a in 0..k {
        births.extend(std::iter::repeat_n(x.grid()[a], dims[a]));
    }
    // rows come first in the shared order, so column indices start at `rows`
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); rows];
    let mut deaths = Vec::new();
    for a in 1..k {
        let m = x.step(a).component(0).into_owned();
        for j in 0..dims[a - 1] {
            let mut c = vec![offset[a - 1] + j];
            c.extend(
                (0..dims[a])
                    .filter(|&i| m.get(i, j) != 0)
                    .map(|i| offset[a] + i),
            );
            columns.push(c);
            deaths.push(x.grid()[a]);
        }
    }
    let lows = reduce_f2(&columns);
    let mut paired = vec![false; rows];
    let mut out = Barcode::new();
    for (j, low) in lows.iter().enumerate().skip(rows) {
        if let Some(i) = *low {
            paired[i] = true;
            let (b, d) = (births[i], deaths[j - rows]);
            if b != d {
                *out.entry((0, b, d)).or_default() += 1;
            }
        }
    }
    for (i, &b) in births.iter().enumerate() {
        if !paired[i] {
            *out.entry((0, b, Param::Infinity)).or_default() += 1;
        }
    }
    out
}

/// Random filtration on at most five vertices up to triangles; every simplex
/// enters no earlier than its faces.
pub fn random_filtration<R: Rng + ?Sized>(rng: &mut R) -> Vec<(Vec<u32>, Param)> {
    let n = rng.gen_range(1..=5u32);
    let mut entries: BTreeMap<Vec<u32>, Param> = BTreeMap::new();
    let mut subsets: Vec<Vec<u32>> = (1u32..(1 << n))
        .map(|mask| {
            (0..n)
                .filter(|v| mask & (1 << v) != 0)
                .collect::<Vec<u32>>()
        })
        .filter(|s| s.len() <= 3)
        .collect();
    subsets.sort_by_key(|s| s.len());
    for s in subsets {
        if !rng.gen_bool(0.75) {
            continue;
        }
        let base = if s.len() == 1 {
            Some(Param::ZERO)
        } else {
            (0..s.len())
                .map(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    entries.get(&f).copied()
                })
                .collect::<Option<Vec<_>>>()
                .map(|v| v.into_iter().max().unwrap())
        };
        if let Some(base) = base {
            let t = Param::new(rng.gen_range(0..10), 2).unwrap().max(base);
            entries.insert(s, t);
        }
    }
    entries.into_iter().collect()
}

pub fn filtration_text(simplices: &[(Vec<u32>, Param)]) -> String {
    let mut out = String::new();
    for (s, t) in simplices {
        out.push_str(&t.to_string());
        for v in s {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}
