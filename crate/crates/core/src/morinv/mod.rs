//! Betti diagrams of morphisms and of commutative ladders.

use std::fmt;
use std::str::FromStr;

use crate::chaincx::{self, ChainComplex, ChainMap, HomotopySquare};
use crate::decomp::{decompose_cofibrant, off_diagonal, BettiDiagram};
use crate::error::{Error, Result};
use crate::exactlin::FieldMatrix;
use crate::tamecat::{
    lift_tame, merge_grids, minimal_cover, minimal_factorisation_tame, TameComplex, TameMap,
};

/// Which cofibrant object is extracted from a morphism `g: X -> Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// `A/α(X)` for the minimal factorisation `X -α-> A -β-> Y`.
    Minfact,
    /// The minimal cover of the cofiber `Cg`.
    CoverCofiber,
    /// The cofiber `Cg'` of a lift `g': cov(X) -> cov(Y)`.
    CofiberCovers,
    /// The minimal representative of `cov(Cg)`.
    Min,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Minfact,
        Method::CoverCofiber,
        Method::CofiberCovers,
        Method::Min,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Minfact => "minfact",
            Method::CoverCofiber => "cover-cofiber",
            Method::CofiberCovers => "cofiber-covers",
            Method::Min => "min",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s || m.name().replace('-', "_") == s)
            .ok_or_else(|| Error::Invalid(format!("unknown method {s:?}")))
    }
}

/// Betti diagrams assigned to a morphism by one method.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismBetti {
    pub method: Method,
    pub diagrams: Vec<BettiDiagram>,
}

impl MorphismBetti {
    pub fn off_diagonal(&self) -> Vec<BettiDiagram> {
        off_diagonal(&self.diagrams)
    }
}

pub fn morphism_betti(g: &TameMap, method: Method) -> Result<MorphismBetti> {
    match method {
        Method::Minfact => morphism_betti_minfact(g),
        Method::CoverCofiber => morphism_betti_cover_cofiber(g),
        Method::CofiberCovers => morphism_betti_cofiber_covers(g),
        Method::Min => morphism_betti_min(g),
    }
}

pub fn morphism_betti_minfact(g: &TameMap) -> Result<MorphismBetti> {
    let f = minimal_factorisation_tame(g)?;
    let q = f.alpha.quotient()?;
    Ok(MorphismBetti {
        method: Method::Minfact,
        diagrams: decompose_cofibrant(&q)?,
    })
}

pub fn morphism_betti_cover_cofiber(g: &TameMap) -> Result<MorphismBetti> {
    let cg = g.cofiber().cofiber;
    Ok(MorphismBetti {
        method: Method::CoverCofiber,
        diagrams: decompose_cofibrant(&minimal_cover(&cg)?.cover)?,
    })
}

pub fn morphism_betti_min(g: &TameMap) -> Result<MorphismBetti> {
    let d = morphism_betti_cover_cofiber(g)?;
    Ok(MorphismBetti {
        method: Method::Min,
        diagrams: d.off_diagonal(),
    })
}

pub fn morphism_betti_cofiber_covers(g: &TameMap) -> Result<MorphismBetti> {
    let cc = cofiber_of_covers(g)?;
    Ok(MorphismBetti {
        method: Method::CofiberCovers,
        diagrams: decompose_cofibrant(&cc.lift.cofiber().cofiber)?,
    })
}

/// The square `c_Y ∘ g' = g ∘ c_X` between minimal covers, on one common grid.
#[derive(Clone, Debug)]
pub struct CoverSquare {
    pub g: TameMap,
    pub lift: TameMap,
    pub cover_source: TameMap,
    pub cover_target: TameMap,
}

/// Minimal covers of both ends of `g` and a lift `g': cov(X) -> cov(Y)`.
///
/// `g'` solves the lifting problem of `0 -> cov(X)` against the acyclic fibration `c_Y`,
/// grid point by grid point and degree by degree.
pub fn cofiber_of_covers(g: &TameMap) -> Result<CoverSquare> {
    let cx = minimal_cover(g.source())?.map;
    let cy = minimal_cover(g.target())?.map;
    let grid = merge_grids(&merge_grids(g.grid(), cx.grid()), cy.grid());
    let (g, cx, cy) = (g.refine(&grid)?, cx.refine(&grid)?, cy.refine(&grid)?);
    let zero = TameComplex::zero(g.source().field(), grid.clone());
    let from_zero = TameMap::zero(&zero, cx.source());
    let into_cy = TameMap::zero(&zero, cy.source());
    let lift = lift_tame(&from_zero, &cy, &into_cy, &g.compose(&cx)?)?;
    Ok(CoverSquare {
        g,
        lift,
        cover_source: cx,
        cover_target: cy,
    })
}

impl CoverSquare {
    /// `C(c_X, c_Y): Cg' -> Cg`, parameterwise, with zero homotopy.
    pub fn comparison(&self) -> Result<TameMap> {
        let src = self.lift.cofiber().cofiber;
        let tgt = self.g.cofiber().cofiber;
        let comps = (0..self.g.grid().len())
            .map(|a| {
                chaincx::cofiber_map(&HomotopySquare::strict(
                    self.lift.component(a).clone(),
                    self.g.component(a).clone(),
                    self.cover_source.component(a).clone(),
                    self.cover_target.component(a).clone(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        TameMap::new(src, tgt, comps)
    }
}

/// The differential `δ: Z_1 -> Z_0` of a commutative ladder, as a map of
/// parametrised vector spaces.
pub fn ladder_differential(z: &TameComplex) -> Result<TameMap> {
    if let Some(degree) = z.values().iter().map(|v| v.len()).find(|&l| l > 2) {
        return Err(Error::NotALadder { degree: degree - 1 });
    }
    let field = z.field();
    let part = |n: usize| -> Result<TameComplex> {
        let values: Vec<ChainComplex> = z
            .values()
            .iter()
            .map(|v| ChainComplex::graded(field, vec![v.dim(n)]))
            .collect();
        let transitions = (1..z.num_points())
            .map(|a| {
                let t = z.step(a).component(n).into_owned();
                ChainMap::new(values[a - 1].clone(), values[a].clone(), vec![t])
            })
            .collect::<Result<Vec<_>>>()?;
        TameComplex::new(z.grid().to_vec(), values, transitions)
    };
    let (z1, z0) = (part(1)?, part(0)?);
    let comps = (0..z.num_points())
        .map(|a| {
            let d: FieldMatrix = z.value(a).diff(0).into_owned();
            ChainMap::new(z1.value(a).clone(), z0.value(a).clone(), vec![d])
        })
        .collect::<Result<Vec<_>>>()?;
    TameMap::new(z1, z0, comps)
}

/// All four morphism diagrams of the ladder's differential.
pub fn ladder_betti(z: &TameComplex) -> Result<Vec<MorphismBetti>> {
    let d = ladder_differential(z)?;
    Method::ALL
        .into_iter()
        .map(|m| morphism_betti(&d, m))
        .collect()
}
