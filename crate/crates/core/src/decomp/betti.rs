use std::collections::BTreeMap;
use std::fmt;

use crate::tamecat::Param;

use super::IntervalSphere;

/// A finite multiset of `(s, e)` pairs with `s <= e`, sorted by `(s, e)`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BettiDiagram {
    points: Vec<((Param, Param), usize)>,
}

impl BettiDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Param, Param)>) -> Self {
        let mut d = Self::new();
        for (s, e) in pairs {
            d.insert(s, e, 1);
        }
        d
    }

    pub fn insert(&mut self, s: Param, e: Param, mult: usize) {
        if mult == 0 {
            return;
        }
        match self.points.binary_search_by(|(k, _)| k.cmp(&(s, e))) {
            Ok(i) => self.points[i].1 += mult,
            Err(i) => self.points.insert(i, ((s, e), mult)),
        }
    }

    pub fn multiplicity(&self, s: Param, e: Param) -> usize {
        self.points
            .binary_search_by(|(k, _)| k.cmp(&(s, e)))
            .map_or(0, |i| self.points[i].1)
    }

    pub fn points(&self) -> &[((Param, Param), usize)] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of points counted with multiplicity.
    pub fn total(&self) -> usize {
        self.points.iter().map(|(_, m)| m).sum()
    }

    pub fn has_diagonal(&self) -> bool {
        self.points.iter().any(|((s, e), _)| s == e)
    }

    /// The same diagram without its `(s, s)` points.
    pub fn diagonal_zeroed(&self) -> Self {
        BettiDiagram {
            points: self
                .points
                .iter()
                .filter(|((s, e), _)| s != e)
                .cloned()
                .collect(),
        }
    }

    pub fn diagonal(&self) -> Self {
        BettiDiagram {
            points: self
                .points
                .iter()
                .filter(|((s, e), _)| s == e)
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Debug for BettiDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.points
                    .iter()
                    .map(|((s, e), m)| (format!("({s},{e})"), m)),
            )
            .finish()
    }
}

/// Group interval spheres by degree; trailing empty degrees are dropped.
pub fn diagrams_from_spheres(
    spheres: impl IntoIterator<Item = IntervalSphere>,
) -> Vec<BettiDiagram> {
    let mut by_degree: BTreeMap<usize, BettiDiagram> = BTreeMap::new();
    for sp in spheres {
        by_degree.entry(sp.n).or_default().insert(sp.s, sp.e, 1);
    }
    let len = by_degree.keys().next_back().map_or(0, |n| n + 1);
    (0..len)
        .map(|n| by_degree.remove(&n).unwrap_or_default())
        .collect()
}

/// Every point of every degree, repeated by multiplicity.
pub fn spheres_of(diagrams: &[BettiDiagram]) -> Vec<IntervalSphere> {
    let mut out = Vec::new();
    for (n, d) in diagrams.iter().enumerate() {
        for &((s, e), m) in d.points() {
            for _ in 0..m {
                out.push(IntervalSphere { n, s, e });
            }
        }
    }
    out
}

/// Drop trailing empty degrees so equal multisets compare equal.
pub fn normalize(mut diagrams: Vec<BettiDiagram>) -> Vec<BettiDiagram> {
    while diagrams.last().is_some_and(|d| d.is_empty()) {
        diagrams.pop();
    }
    diagrams
}

/// Remove diagonal points in every degree.
pub fn off_diagonal(diagrams: &[BettiDiagram]) -> Vec<BettiDiagram> {
    normalize(diagrams.iter().map(BettiDiagram::diagonal_zeroed).collect())
}
