use crate::chaincx::{
    cofiber, cofiber_map, desuspend_map_by, suspend_by, suspend_map_by, ChainComplex, ChainMap,
    HomotopySquare,
};
use crate::decomp::{betti, BettiDiagram};
use crate::error::{Error, Result};
use crate::exactlin::FieldMatrix;
use crate::tamecat::{Param, TameComplex, TameMap};

use super::{Direction, DiscreteZigzag, Profile, ZigzagMap};

/// A functor `[k] -> Ch` obtained from a zigzag, with the weights used to build it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightenedZigzag {
    pub spaces: Vec<ChainComplex>,
    /// `maps[a-1]: spaces[a-1] -> spaces[a]`
    pub maps: Vec<ChainMap>,
    pub weights: Vec<usize>,
    pub profile: Profile,
}

impl StraightenedZigzag {
    pub fn k(&self) -> usize {
        self.maps.len()
    }

    /// Kan extension along `grid` (one point per index).
    pub fn incarnate(&self, grid: &[Param]) -> Result<TameComplex> {
        if grid.len() != self.spaces.len() {
            return Err(Error::GridLength {
                expected: self.spaces.len(),
                got: grid.len(),
            });
        }
        TameComplex::kan_extension(self.spaces.clone(), self.maps.clone(), grid.to_vec())
    }
}

/// A natural transformation between straightened zigzags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightenedMap {
    pub source: StraightenedZigzag,
    pub target: StraightenedZigzag,
    pub components: Vec<ChainMap>,
}

impl StraightenedMap {
    pub fn new(
        source: StraightenedZigzag,
        target: StraightenedZigzag,
        components: Vec<ChainMap>,
    ) -> Result<Self> {
        if components.len() != source.spaces.len() || source.spaces.len() != target.spaces.len() {
            return Err(Error::GridLength {
                expected: source.spaces.len(),
                got: components.len(),
            });
        }
        for (a, c) in components.iter().enumerate() {
            if c.source() != &source.spaces[a] || c.target() != &target.spaces[a] {
                return Err(Error::Invalid(format!(
                    "component {a} has the wrong endpoints"
                )));
            }
        }
        for a in 1..components.len() {
            if components[a].compose(&source.maps[a - 1])?
                != target.maps[a - 1].compose(&components[a - 1])?
            {
                return Err(Error::NotNatural { index: a });
            }
        }
        Ok(StraightenedMap {
            source,
            target,
            components,
        })
    }

    /// Read a natural transformation between incarnations on a grid of `k+1` points.
    pub fn from_tame(
        source: &StraightenedZigzag,
        target: &StraightenedZigzag,
        g: &TameMap,
    ) -> Result<Self> {
        let n = source.spaces.len();
        let comps = g.components();
        // the Kan extension may have prepended a zero point
        let comps = &comps[comps.len() - n..];
        StraightenedMap::new(source.clone(), target.clone(), comps.to_vec())
    }

    pub fn incarnate(&self, grid: &[Param]) -> Result<TameMap> {
        let s = self.source.incarnate(grid)?;
        let t = self.target.incarnate(grid)?;
        let mut comps = Vec::new();
        if s.num_points() > self.components.len() {
            comps.push(ChainMap::zero(s.value(0), t.value(0)));
        }
        comps.extend(self.components.iter().cloned());
        TameMap::new(s, t, comps)
    }

    pub fn compose(&self, other: &StraightenedMap) -> Result<StraightenedMap> {
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.compose(b))
            .collect::<Result<_>>()?;
        StraightenedMap::new(other.source.clone(), self.target.clone(), comps)
    }
}

/// `X̄`: `S^{w_a}X^a` before a right step, `S^{w_a}C(X^{a+1 -> a})` before a left step,
/// `S^{w_k}X^k` at the end; the maps are suspensions of the zigzag maps, of `i` and of `p`.
pub fn straighten(z: &DiscreteZigzag) -> StraightenedZigzag {
    let prof = z.profile();
    let k = z.k();
    let w = prof.weights();
    // cofiber sequences of the left maps, indexed by the step a with c_a = l
    let cof: Vec<Option<_>> = (1..=k)
        .map(|a| (prof.dir(a) == Direction::L).then(|| cofiber(z.map(a))))
        .collect();
    let cof_at = |a: usize| cof[a - 1].as_ref().expect("left step");
    let spaces: Vec<ChainComplex> = (0..=k)
        .map(|a| {
            if a < k && prof.dir(a + 1) == Direction::L {
                suspend_by(&cof_at(a + 1).cofiber, w[a])
            } else {
                suspend_by(z.space(a), w[a])
            }
        })
        .collect();
    let maps = (1..=k)
        .map(|a| {
            let next_left = a < k && prof.dir(a + 1) == Direction::L;
            let into_a = match prof.dir(a) {
                Direction::R => suspend_map_by(z.map(a), w[a]),
                Direction::L => suspend_map_by(&cof_at(a).projection, w[a - 1]),
            };
            if next_left {
                suspend_map_by(&cof_at(a + 1).inclusion, w[a])
                    .compose(&into_a)
                    .expect("S^w X^a is the source of S^w i")
            } else {
                into_a
            }
        })
        .collect();
    StraightenedZigzag {
        spaces,
        maps,
        weights: w,
        profile: prof.clone(),
    }
}

/// `f̄^a = S^{w_a} f^a`, or `S^{w_a} C(f^{a+1}, f^a)` before a left step.
pub fn straighten_map(f: &ZigzagMap) -> StraightenedMap {
    let k = f.source().k();
    let zeros = (0..=k).map(|_| None).collect::<Vec<_>>();
    straighten_pair(f.source(), f.target(), f.components(), &zeros)
        .expect("a natural transformation straightens")
}

/// The straightened map of components `ĝ^a` and homotopies `h_a` at the left steps:
/// the inverse of [`unstraighten_map`].
///
/// `homotopies[a]` (for `c_a = l`) holds `h_n: X^a_n -> Y^{a-1}_{n+1}`; `None` means zero.
pub fn straighten_pair(
    x: &DiscreteZigzag,
    y: &DiscreteZigzag,
    components: &[ChainMap],
    homotopies: &[Option<Vec<FieldMatrix>>],
) -> Result<StraightenedMap> {
    let prof = x.profile();
    let k = x.k();
    let w = prof.weights();
    let mut comps = Vec::with_capacity(k + 1);
    for a in 0..=k {
        let c = if a < k && prof.dir(a + 1) == Direction::L {
            let mut sq = HomotopySquare::strict(
                x.map(a + 1).clone(),
                y.map(a + 1).clone(),
                components[a + 1].clone(),
                components[a].clone(),
            );
            if let Some(Some(h)) = homotopies.get(a + 1) {
                sq.h = h.clone();
            }
            cofiber_map(&sq)?
        } else {
            components[a].clone()
        };
        comps.push(suspend_map_by(&c, w[a]));
    }
    StraightenedMap::new(straighten(x), straighten(y), comps)
}

/// Components `ĝ^a: X^a -> Y^a` and homotopies `h_a` (for `c_a = l`) recovered from a
/// natural transformation of straightened zigzags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unstraightened {
    pub components: Vec<ChainMap>,
    /// `homotopies[a]` is `Some` exactly when `c_a = l`.
    pub homotopies: Vec<Option<Vec<FieldMatrix>>>,
}

/// Desuspend each component; before a left step read `ĝ^a` and `h_{a+1}` off the top-left
/// and top-right blocks of `S^{-w_a} g^a` on `Y^a ⊕ SY^{a+1}`.
pub fn unstraighten_map(
    x: &DiscreteZigzag,
    y: &DiscreteZigzag,
    g: &StraightenedMap,
) -> Result<Unstraightened> {
    let prof = x.profile();
    let k = x.k();
    let w = prof.weights();
    let field = x.space(0).field();
    let mut comps: Vec<Option<ChainMap>> = vec![None; k + 1];
    let mut homs: Vec<Option<Vec<FieldMatrix>>> = vec![None; k + 1];
    for a in (0..=k).rev() {
        let d = desuspend_map_by(&g.components[a], w[a]);
        if a < k && prof.dir(a + 1) == Direction::L {
            let (xa, ya) = (x.space(a), y.space(a));
            let xb = x.space(a + 1);
            let len = xa.len().max(ya.len());
            let mut top_left = Vec::with_capacity(len);
            let mut h = Vec::with_capacity(xb.len());
            for n in 0..d.source().len().max(d.target().len()) {
                let m = d.component(n);
                let xo = xa.dim(n);
                let yo = ya.dim(n);
                if m.rows() < yo || m.cols() < xo {
                    return Err(Error::Invalid(
                        "component does not fit the cofiber blocks".into(),
                    ));
                }
                if n < len {
                    top_left.push(m.submatrix(0, yo, 0, xo));
                }
                if n > 0 {
                    h.push(m.submatrix(0, yo, xo, m.cols()));
                    // the lower-left block must vanish: g^a preserves the image of i
                    if !m.submatrix(yo, m.rows(), 0, xo).is_zero() {
                        return Err(Error::NotNatural { index: a + 1 });
                    }
                }
            }
            while h.len() < xb.len() {
                let n = h.len();
                h.push(FieldMatrix::zeros(field, ya.dim(n + 1), xb.dim(n)));
            }
            h.truncate(xb.len());
            comps[a] = Some(ChainMap::new(xa.clone(), ya.clone(), top_left)?);
            homs[a + 1] = Some(h);
        } else {
            comps[a] = Some(ChainMap::new(
                x.space(a).clone(),
                y.space(a).clone(),
                d.components().to_vec(),
            )?);
        }
    }
    let components: Vec<ChainMap> = comps.into_iter().map(|c| c.expect("filled")).collect();
    // the recovered data must straighten back to g
    let back = straighten_pair(x, y, &components, &homs)?;
    if back.components != g.components {
        return Err(Error::Invalid(
            "map does not come from a zigzag pair".into(),
        ));
    }
    Ok(Unstraightened {
        components,
        homotopies: homs,
    })
}

/// Kan extension of `X̄` along a grid of `k+1` points.
pub fn incarnate(z: &DiscreteZigzag, grid: &[Param]) -> Result<TameComplex> {
    straighten(z).incarnate(grid)
}

/// `β_n` of the incarnation.
pub fn zigzag_betti(z: &DiscreteZigzag, grid: &[Param]) -> Result<Vec<BettiDiagram>> {
    betti(&incarnate(z, grid)?)
}
