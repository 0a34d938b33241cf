use crate::chaincx::{self, ChainComplex, ChainMap};
use crate::error::{Error, Result};

use super::complex::{common_grid, TameComplex};
use super::map::TameMap;

/// `g = ĝ ∘ ḡ` through the inductive pushouts `Q^{τ_a} = colim(Y^{τ_{a-1}} <- X^{τ_{a-1}} -> X^{τ_a})`.
#[derive(Clone, Debug)]
pub struct TameFactorisation {
    pub gbar: TameMap,
    pub q: TameComplex,
    pub ghat: TameMap,
}

pub fn factorise(g: &TameMap) -> TameFactorisation {
    let x = g.source();
    let y = g.target();
    let k = x.num_points();
    let mut values = vec![x.value(0).clone()];
    let mut gbar = vec![ChainMap::identity(x.value(0))];
    let mut ghat = vec![g.component(0).clone()];
    let mut transitions = Vec::new();
    for a in 1..k {
        let po = chaincx::pushout(g.component(a - 1), x.step(a)).expect("common source");
        let hat = po.induced(y.step(a), g.component(a));
        transitions.push(po.from_w0.compose(&ghat[a - 1]).expect("composable"));
        values.push(po.object.clone());
        gbar.push(po.from_w1.clone());
        ghat.push(hat);
    }
    let q = TameComplex::from_parts(x.grid().to_vec(), values, transitions);
    TameFactorisation {
        gbar: TameMap::from_parts(x.clone(), q.clone(), gbar),
        ghat: TameMap::from_parts(q.clone(), y.clone(), ghat),
        q,
    }
}

/// Solve the tame lifting problem `φ: Y -> E` with `φα = top`, `βφ = bottom`,
/// for `α: X -> Y` a cofibration and `β: E -> B` an acyclic fibration.
///
/// Grid point by grid point: at `τ_a` the lift on the pushout `Q^{τ_a}` is forced, and is
/// extended over `Q^{τ_a} ↪ Y^{τ_a}` by the degreewise lift of chain complexes.
pub fn lift_tame(
    alpha: &TameMap,
    beta: &TameMap,
    top: &TameMap,
    bottom: &TameMap,
) -> Result<TameMap> {
    let grid = super::param::merge_grids(
        &super::param::merge_grids(alpha.grid(), beta.grid()),
        &super::param::merge_grids(top.grid(), bottom.grid()),
    );
    let alpha = alpha.refine(&grid)?;
    let beta = beta.refine(&grid)?;
    let top = top.refine(&grid)?;
    let bottom = bottom.refine(&grid)?;
    let x = alpha.source();
    let y = alpha.target();
    let e = beta.source();
    let mut phis: Vec<ChainMap> = Vec::with_capacity(grid.len());
    for a in 0..grid.len() {
        let phi = if a == 0 {
            chaincx::lift(
                alpha.component(0),
                beta.component(0),
                top.component(0),
                bottom.component(0),
            )?
        } else {
            let po = chaincx::pushout(x.step(a), alpha.component(a - 1))?;
            let ahat = po.induced(alpha.component(a), y.step(a));
            if let Some(d) = ahat.first_non_mono() {
                return Err(Error::NotMono { degree: d });
            }
            let prev = e.step(a).compose(&phis[a - 1])?;
            let phi_q = po.induced(top.component(a), &prev);
            chaincx::lift(&ahat, beta.component(a), &phi_q, bottom.component(a))?
        };
        phis.push(phi);
    }
    TameMap::new(y.clone(), e.clone(), phis)
}

/// A factorisation of a tame map through a middle object.
#[derive(Clone, Debug)]
pub struct TameMinimalFactorisation {
    pub alpha: TameMap,
    pub middle: TameComplex,
    pub beta: TameMap,
}

/// Minimal factorisation of `g: A -> X` into a cofibration followed by an acyclic fibration.
pub fn minimal_factorisation_tame(g: &TameMap) -> Result<TameMinimalFactorisation> {
    let a_obj = g.source();
    let x_obj = g.target();
    let k = a_obj.num_points();
    let f0 = chaincx::minimal_factorisation_chain(g.component(0))?;
    let mut alphas = vec![f0.alpha];
    let mut betas = vec![f0.beta];
    let mut values = vec![f0.middle];
    let mut transitions = Vec::new();
    for a in 1..k {
        // Q = colim(A^a <- A^{a-1} -> Y^{a-1})
        let po = chaincx::pushout(a_obj.step(a), &alphas[a - 1])?;
        let prev = x_obj.step(a).compose(&betas[a - 1])?;
        let beta_q = po.induced(g.component(a), &prev);
        let fac = chaincx::minimal_factorisation_chain(&beta_q)?;
        alphas.push(fac.alpha.compose(&po.from_w0)?);
        transitions.push(fac.alpha.compose(&po.from_w1)?);
        betas.push(fac.beta);
        values.push(fac.middle);
    }
    let middle = TameComplex::new(a_obj.grid().to_vec(), values, transitions)?;
    Ok(TameMinimalFactorisation {
        alpha: TameMap::new(a_obj.clone(), middle.clone(), alphas)?,
        beta: TameMap::new(middle.clone(), x_obj.clone(), betas)?,
        middle,
    })
}

/// A cofibrant object with an acyclic fibration onto `X`.
#[derive(Clone, Debug)]
pub struct MinimalCover {
    pub cover: TameComplex,
    pub map: TameMap,
}

/// Minimal factorisation of `0 -> X`.
pub fn minimal_cover(x: &TameComplex) -> Result<MinimalCover> {
    let zero = TameComplex::zero(x.field(), x.grid().to_vec());
    let f = minimal_factorisation_tame(&TameMap::zero(&zero, x))?;
    Ok(MinimalCover {
        cover: f.middle,
        map: f.beta,
    })
}

/// Inclusions of the summands of `X ⊕ Y`, on the common grid.
pub fn sum_inclusions(x: &TameComplex, y: &TameComplex) -> (TameMap, TameMap) {
    let (x, y) = common_grid(x, y);
    let s = x.direct_sum(&y);
    let parts: Vec<(ChainMap, ChainMap)> = x
        .values()
        .iter()
        .zip(y.values())
        .map(|(a, b)| chaincx::sum_inclusions(a, b))
        .collect();
    let i0 = TameMap::from_parts(
        x.clone(),
        s.clone(),
        parts.iter().map(|p| p.0.clone()).collect(),
    );
    let i1 = TameMap::from_parts(y.clone(), s, parts.into_iter().map(|p| p.1).collect());
    (i0, i1)
}

pub fn sum_projections(x: &TameComplex, y: &TameComplex) -> (TameMap, TameMap) {
    let (x, y) = common_grid(x, y);
    let s = x.direct_sum(&y);
    let parts: Vec<(ChainMap, ChainMap)> = x
        .values()
        .iter()
        .zip(y.values())
        .map(|(a, b)| chaincx::sum_projections(a, b))
        .collect();
    let p0 = TameMap::from_parts(
        s.clone(),
        x.clone(),
        parts.iter().map(|p| p.0.clone()).collect(),
    );
    let p1 = TameMap::from_parts(s, y.clone(), parts.into_iter().map(|p| p.1).collect());
    (p0, p1)
}

/// Constant tame complex on a grid with identity transitions.
pub fn constant_on(x: &ChainComplex, grid: &[crate::tamecat::Param]) -> Result<TameComplex> {
    TameComplex::constant(x.clone()).refine(grid)
}
