use std::fmt;

use crate::chaincx::{self, ChainMap};
use crate::error::{Error, Result};
use crate::exactlin::FieldMatrix;

use super::complex::{cofiber_of_square, descend, restrict, TameComplex};
use super::param::{merge_grids, Param};

/// A natural transformation between tame complexes on a shared grid.
#[derive(Clone, PartialEq, Eq)]
pub struct TameMap {
    source: TameComplex,
    target: TameComplex,
    components: Vec<ChainMap>,
}

impl TameMap {
    pub fn new(
        source: TameComplex,
        target: TameComplex,
        components: Vec<ChainMap>,
    ) -> Result<Self> {
        if source.grid() != target.grid() {
            return Err(Error::Invalid(
                "source and target live on different grids".into(),
            ));
        }
        if components.len() != source.num_points() {
            return Err(Error::GridLength {
                expected: source.num_points(),
                got: components.len(),
            });
        }
        for (a, c) in components.iter().enumerate() {
            if c.source() != source.value(a) || c.target() != target.value(a) {
                return Err(Error::Invalid(format!(
                    "component {a} has the wrong endpoints"
                )));
            }
        }
        for a in 1..components.len() {
            let lhs = components[a].compose(source.step(a))?;
            let rhs = target.step(a).compose(&components[a - 1])?;
            if lhs != rhs {
                return Err(Error::NotNatural { index: a });
            }
        }
        Ok(TameMap {
            source,
            target,
            components,
        })
    }

    pub(crate) fn from_parts(
        source: TameComplex,
        target: TameComplex,
        components: Vec<ChainMap>,
    ) -> Self {
        if cfg!(debug_assertions) {
            Self::new(source, target, components).expect("internal construction is not natural")
        } else {
            TameMap {
                source,
                target,
                components,
            }
        }
    }

    pub fn identity(x: &TameComplex) -> Self {
        let comps = x.values().iter().map(ChainMap::identity).collect();
        Self::from_parts(x.clone(), x.clone(), comps)
    }

    /// Zero map; both objects are refined to a common grid.
    pub fn zero(x: &TameComplex, y: &TameComplex) -> Self {
        let (x, y) = super::common_grid(x, y);
        let comps = x
            .values()
            .iter()
            .zip(y.values())
            .map(|(a, b)| ChainMap::zero(a, b))
            .collect();
        Self::from_parts(x, y, comps)
    }

    pub fn source(&self) -> &TameComplex {
        &self.source
    }

    pub fn target(&self) -> &TameComplex {
        &self.target
    }

    pub fn grid(&self) -> &[Param] {
        self.source.grid()
    }

    pub fn components(&self) -> &[ChainMap] {
        &self.components
    }

    pub fn component(&self, a: usize) -> &ChainMap {
        &self.components[a]
    }

    pub fn refine(&self, grid2: &[Param]) -> Result<TameMap> {
        if grid2 == self.grid() {
            return Ok(self.clone());
        }
        let s = self.source.refine(grid2)?;
        let t = self.target.refine(grid2)?;
        let comps = grid2
            .iter()
            .map(|&p| self.components[self.source.index_at(p)].clone())
            .collect();
        Ok(Self::from_parts(s, t, comps))
    }

    /// `self ∘ other`, refining to a common grid.
    pub fn compose(&self, other: &TameMap) -> Result<TameMap> {
        let g = merge_grids(self.grid(), other.grid());
        let a = self.refine(&g)?;
        let b = other.refine(&g)?;
        if b.target != a.source {
            return Err(Error::Invalid("maps do not compose".into()));
        }
        let comps = a
            .components
            .iter()
            .zip(&b.components)
            .map(|(x, y)| x.compose(y))
            .collect::<Result<_>>()?;
        Ok(Self::from_parts(b.source, a.target, comps))
    }

    fn zip(
        &self,
        other: &TameMap,
        op: impl Fn(&ChainMap, &ChainMap) -> Result<ChainMap>,
    ) -> Result<TameMap> {
        let g = merge_grids(self.grid(), other.grid());
        let a = self.refine(&g)?;
        let b = other.refine(&g)?;
        let comps = a
            .components
            .iter()
            .zip(&b.components)
            .map(|(x, y)| op(x, y))
            .collect::<Result<_>>()?;
        Ok(Self::from_parts(a.source, a.target, comps))
    }

    pub fn add(&self, other: &TameMap) -> Result<TameMap> {
        self.zip(other, |x, y| x.add(y))
    }

    pub fn sub(&self, other: &TameMap) -> Result<TameMap> {
        self.zip(other, |x, y| x.sub(y))
    }

    pub fn direct_sum(&self, other: &TameMap) -> TameMap {
        let g = merge_grids(self.grid(), other.grid());
        let a = self.refine(&g).expect("union refines");
        let b = other.refine(&g).expect("union refines");
        let comps = a
            .components
            .iter()
            .zip(&b.components)
            .map(|(x, y)| x.direct_sum(y))
            .collect();
        Self::from_parts(
            a.source.direct_sum(&b.source),
            a.target.direct_sum(&b.target),
            comps,
        )
    }

    /// `[self ; other]: X -> Y ⊕ Y'`.
    pub fn vstack(&self, other: &TameMap) -> Result<TameMap> {
        let g = merge_grids(self.grid(), other.grid());
        let a = self.refine(&g)?;
        let b = other.refine(&g)?;
        let comps = a
            .components
            .iter()
            .zip(&b.components)
            .map(|(x, y)| x.vstack(y))
            .collect::<Result<_>>()?;
        Ok(Self::from_parts(
            a.source.clone(),
            a.target.direct_sum(&b.target),
            comps,
        ))
    }

    /// `[self | other]: X ⊕ X' -> Y`.
    pub fn hstack(&self, other: &TameMap) -> Result<TameMap> {
        let g = merge_grids(self.grid(), other.grid());
        let a = self.refine(&g)?;
        let b = other.refine(&g)?;
        let comps = a
            .components
            .iter()
            .zip(&b.components)
            .map(|(x, y)| x.hstack(y))
            .collect::<Result<_>>()?;
        Ok(Self::from_parts(
            a.source.direct_sum(&b.source),
            a.target.clone(),
            comps,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn is_weak_equivalence(&self) -> bool {
        self.components.iter().all(|c| c.is_weak_equivalence())
    }

    pub fn is_fibration(&self) -> bool {
        self.components.iter().all(|c| c.is_fibration())
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|c| c.is_iso())
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().all(|c| c.is_mono())
    }

    /// Degreewise mono at every grid point and every ladder square a pullback.
    pub fn is_cofibration(&self) -> bool {
        if !self.is_mono() {
            return false;
        }
        (1..self.components.len()).all(|a| self.square_is_pullback(a))
    }

    fn square_is_pullback(&self, a: usize) -> bool {
        let x0 = self.source.value(a - 1);
        let tx = self.target.step(a);
        let g1 = &self.components[a];
        (0..x0.len().max(g1.target().len())).all(|n| {
            let pb =
                FieldMatrix::pullback(&g1.component(n), &tx.component(n)).expect("shapes agree");
            pb.dim == x0.dim(n)
        })
    }

    /// Cofibration test through the pushout factorisation: every `ĝ^τ` mono.
    pub fn is_cofibration_via_factorisation(&self) -> bool {
        super::factorise(self).ghat.is_mono()
    }

    pub fn kernel(&self) -> (TameComplex, TameMap) {
        let parts: Vec<_> = self.components.iter().map(chaincx::kernel).collect();
        let values = parts.iter().map(|(w, _)| w.clone()).collect();
        let transitions = (1..parts.len())
            .map(|a| restrict(&parts[a - 1].1, &parts[a].1, self.source.step(a)))
            .collect();
        let w = TameComplex::from_parts(self.grid().to_vec(), values, transitions);
        let j = Self::from_parts(
            w.clone(),
            self.source.clone(),
            parts.into_iter().map(|(_, j)| j).collect(),
        );
        (w, j)
    }

    /// Quotient of the target by the image, with the projection.
    pub fn image_quotient(&self) -> (TameComplex, TameMap) {
        let parts: Vec<_> = self.components.iter().map(chaincx::quotient).collect();
        let values = parts.iter().map(|q| q.quotient.clone()).collect();
        let transitions = (1..parts.len())
            .map(|a| descend(&parts[a - 1], &parts[a], self.target.step(a)))
            .collect();
        let q = TameComplex::from_parts(self.grid().to_vec(), values, transitions);
        let p = Self::from_parts(
            self.target.clone(),
            q.clone(),
            parts.into_iter().map(|d| d.projection).collect(),
        );
        (q, p)
    }

    /// `Y/g(X)` for degreewise injective `g`.
    pub fn quotient(&self) -> Result<TameComplex> {
        if let Some(c) = self.components.iter().find_map(|c| c.first_non_mono()) {
            return Err(Error::NotMono { degree: c });
        }
        Ok(self.image_quotient().0)
    }

    /// Parameterwise cofiber `Y -i-> Cg -p-> SX`.
    pub fn cofiber(&self) -> TameCofiber {
        let parts: Vec<_> = self.components.iter().map(chaincx::cofiber).collect();
        let values = parts.iter().map(|c| c.cofiber.clone()).collect();
        let transitions = (1..parts.len())
            .map(|a| {
                cofiber_of_square(
                    &self.components[a - 1],
                    &self.components[a],
                    self.source.step(a),
                    self.target.step(a),
                )
            })
            .collect();
        let cg = TameComplex::from_parts(self.grid().to_vec(), values, transitions);
        let sx = self.source.suspend();
        let i = Self::from_parts(
            self.target.clone(),
            cg.clone(),
            parts.iter().map(|c| c.inclusion.clone()).collect(),
        );
        let p = Self::from_parts(
            cg.clone(),
            sx,
            parts.into_iter().map(|c| c.projection).collect(),
        );
        TameCofiber {
            cofiber: cg,
            inclusion: i,
            projection: p,
        }
    }

    pub fn suspend(&self) -> TameMap {
        Self::from_parts(
            self.source.suspend(),
            self.target.suspend(),
            self.components.iter().map(chaincx::suspend_map).collect(),
        )
    }
}

/// Parameterwise cofiber sequence of a tame map.
#[derive(Clone, Debug)]
pub struct TameCofiber {
    pub cofiber: TameComplex,
    pub inclusion: TameMap,
    pub projection: TameMap,
}

impl fmt::Debug for TameMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TameMap on grid {:?}", self.grid())?;
        for (a, c) in self.components.iter().enumerate() {
            writeln!(f, "  {} : {:?}", self.grid()[a], c)?;
        }
        Ok(())
    }
}
