use std::borrow::Cow;
use std::fmt;

use super::ChainComplex;
use crate::error::{dim_err, Error, Result};
use crate::exactlin::FieldMatrix;

/// A graded linear map commuting with the differentials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: Vec<FieldMatrix>,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        components: Vec<FieldMatrix>,
    ) -> Result<Self> {
        let g = Self::build(source, target, components)?;
        g.check_commutes()?;
        Ok(g)
    }

    fn build(
        source: ChainComplex,
        target: ChainComplex,
        mut components: Vec<FieldMatrix>,
    ) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch {
                left: source.field().modulus(),
                right: target.field().modulus(),
            });
        }
        let len = source.len().max(target.len());
        for (n, c) in components.iter().enumerate() {
            if c.shape() != (target.dim(n), source.dim(n)) {
                return Err(dim_err(
                    "chain map",
                    format!(
                        "component {n} is {}x{}, expected {}x{}",
                        c.rows(),
                        c.cols(),
                        target.dim(n),
                        source.dim(n)
                    ),
                ));
            }
        }
        components.truncate(len);
        while components.len() < len {
            let n = components.len();
            components.push(FieldMatrix::zeros(
                source.field(),
                target.dim(n),
                source.dim(n),
            ));
        }
        Ok(ChainMap {
            source,
            target,
            components,
        })
    }

    fn check_commutes(&self) -> Result<()> {
        for n in 0..self.components.len().saturating_sub(1) {
            let lhs = &*self.component(n) * &self.source.diff(n);
            let rhs = &*self.target.diff(n) * &self.component(n + 1);
            if lhs != rhs {
                return Err(Error::NotAChainMap { degree: n });
            }
        }
        Ok(())
    }

    pub(crate) fn from_parts(
        source: ChainComplex,
        target: ChainComplex,
        components: Vec<FieldMatrix>,
    ) -> Self {
        if cfg!(debug_assertions) {
            Self::new(source, target, components).expect("internal construction is not a chain map")
        } else {
            Self::build(source, target, components).expect("internal construction has bad shapes")
        }
    }

    /// Build degreewise from a closure producing `target.dim(n) x source.dim(n)` matrices.
    pub(crate) fn from_fn(
        source: &ChainComplex,
        target: &ChainComplex,
        f: impl FnMut(usize) -> FieldMatrix,
    ) -> Self {
        let len = source.len().max(target.len());
        let comps = (0..len).map(f).collect();
        Self::from_parts(source.clone(), target.clone(), comps)
    }

    pub fn identity(x: &ChainComplex) -> Self {
        Self::from_fn(x, x, |n| FieldMatrix::identity(x.field(), x.dim(n)))
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        Self::from_fn(source, target, |n| {
            FieldMatrix::zeros(source.field(), target.dim(n), source.dim(n))
        })
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn components(&self) -> &[FieldMatrix] {
        &self.components
    }

    pub fn component(&self, n: usize) -> Cow<'_, FieldMatrix> {
        match self.components.get(n) {
            Some(c) => Cow::Borrowed(c),
            None => Cow::Owned(FieldMatrix::zeros(
                self.source.field(),
                self.target.dim(n),
                self.source.dim(n),
            )),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if other.target != self.source {
            return Err(dim_err(
                "compose",
                "target of the right map is not the source of the left",
            ));
        }
        Ok(Self::from_fn(&other.source, &self.target, |n| {
            &*self.component(n) * &other.component(n)
        }))
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.same_ends(other)?;
        Ok(Self::from_fn(&self.source, &self.target, |n| {
            &*self.component(n) + &other.component(n)
        }))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.same_ends(other)?;
        Ok(Self::from_fn(&self.source, &self.target, |n| {
            &*self.component(n) - &other.component(n)
        }))
    }

    pub fn neg(&self) -> ChainMap {
        Self::from_fn(&self.source, &self.target, |n| -&*self.component(n))
    }

    fn same_ends(&self, other: &ChainMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(dim_err("sum of chain maps", "different source or target"));
        }
        Ok(())
    }

    /// `[self ; other]: X -> Y ⊕ Y'`.
    pub fn vstack(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source {
            return Err(dim_err("vstack", "different sources"));
        }
        let target = self.target.direct_sum(&other.target);
        Ok(Self::from_fn(&self.source, &target, |n| {
            FieldMatrix::vstack(&self.component(n), &other.component(n))
        }))
    }

    /// `[self | other]: X ⊕ X' -> Y`.
    pub fn hstack(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.target != other.target {
            return Err(dim_err("hstack", "different targets"));
        }
        let source = self.source.direct_sum(&other.source);
        Ok(Self::from_fn(&source, &self.target, |n| {
            FieldMatrix::hstack(&self.component(n), &other.component(n))
        }))
    }

    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        Self::from_fn(&source, &target, |n| {
            FieldMatrix::block_diag(&self.component(n), &other.component(n))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Degreewise injective (a cofibration of chain complexes).
    pub fn is_mono(&self) -> bool {
        self.components.iter().all(|c| c.is_injective())
    }

    pub fn first_non_mono(&self) -> Option<usize> {
        self.components.iter().position(|c| !c.is_injective())
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().all(|c| c.is_surjective())
    }

    /// Degreewise surjective in degrees `>= 1`.
    pub fn is_fibration(&self) -> bool {
        self.components.iter().skip(1).all(|c| c.is_surjective())
    }

    pub fn is_iso(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.is_square() && c.is_injective())
    }

    /// Matrix of `H_n(g)` with respect to the chosen homology splittings.
    pub fn homology_map(&self, n: usize) -> FieldMatrix {
        let hx = self.source.homology();
        let hy = self.target.homology();
        self.homology_map_with(n, &hx, &hy)
    }

    pub(crate) fn homology_map_with(
        &self,
        n: usize,
        hx: &super::HomologyData,
        hy: &super::HomologyData,
    ) -> FieldMatrix {
        let s = hx.section(n, self.source.field(), self.source.dim(n));
        hy.class_of(n, &(&*self.component(n) * &s))
    }

    /// Induces an isomorphism on homology in every degree.
    pub fn is_weak_equivalence(&self) -> bool {
        let hx = self.source.homology();
        let hy = self.target.homology();
        let len = self.source.len().max(self.target.len());
        (0..len).all(|n| {
            let m = self.homology_map_with(n, &hx, &hy);
            m.is_square() && m.is_injective()
        })
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ChainMap {:?} -> {:?} {:?}",
            self.source.dims(),
            self.target.dims(),
            self.components
        )
    }
}
