use crate::error::{Error, Result};
use crate::exactlin::FieldMatrix;

use super::constructions::{cone, kernel, path, sum_inclusions, sum_projections};
use super::{ChainComplex, ChainMap};

/// `X ≅ CBX ⊕ HX` together with its pieces.
#[derive(Clone, Debug)]
pub struct StandardDecomposition {
    /// `BX` with zero differentials.
    pub boundaries: ChainComplex,
    pub cone_on_boundaries: ChainComplex,
    /// `HX` with zero differentials.
    pub homology: ChainComplex,
    pub phi: ChainMap,
    pub s: ChainMap,
    /// `[φ | s]: CBX ⊕ HX -> X`, an isomorphism.
    pub iso: ChainMap,
}

pub fn standard_decomposition(x: &ChainComplex) -> StandardDecomposition {
    let k = x.field();
    let hd = x.homology();
    let b_bases: Vec<FieldMatrix> = (0..x.len()).map(|n| x.diff(n).image_basis()).collect();
    let bx = ChainComplex::graded(k, b_bases.iter().map(|b| b.cols()).collect());
    let cbx = cone(&bx).cofiber;
    let hx = ChainComplex::graded(k, hd.dims());
    // φ on the B_{n-1} summand lifts the boundary basis through δ_{n-1}
    let phi = ChainMap::from_fn(&cbx, x, |n| {
        let incl = b_bases
            .get(n)
            .cloned()
            .unwrap_or_else(|| FieldMatrix::zeros(k, x.dim(n), 0));
        if n == 0 {
            incl
        } else {
            let lift = match b_bases.get(n - 1) {
                Some(b) => x
                    .diff(n - 1)
                    .solve(b)
                    .expect("shapes agree")
                    .expect("boundaries are hit"),
                None => FieldMatrix::zeros(k, x.dim(n), 0),
            };
            FieldMatrix::hstack(&incl, &lift)
        }
    });
    let s = ChainMap::from_fn(&hx, x, |n| hd.section(n, k, x.dim(n)));
    let iso = phi.hstack(&s).expect("common target");
    StandardDecomposition {
        boundaries: bx,
        cone_on_boundaries: cbx,
        homology: hx,
        phi,
        s,
        iso,
    }
}

/// `HX` with zero differentials and a weak equivalence `HX -> X`.
pub fn minimal_representative_chain(x: &ChainComplex) -> (ChainComplex, ChainMap) {
    let d = standard_decomposition(x);
    (d.homology, d.s)
}

/// Solve the lifting problem
///
/// ```text
///   A --top--> E
///   |a         |b
///   v          v
///   Y --bot--> B
/// ```
///
/// for `a` degreewise mono and `b` an acyclic fibration, degree by degree.
pub fn lift(a: &ChainMap, b: &ChainMap, top: &ChainMap, bottom: &ChainMap) -> Result<ChainMap> {
    let y = a.target();
    let e = b.source();
    if let Some(degree) = a.first_non_mono() {
        return Err(Error::NotMono { degree });
    }
    let len = y.len().max(e.len());
    let mut comps: Vec<FieldMatrix> = Vec::with_capacity(len);
    for n in 0..len {
        let an = a.component(n);
        let (_, sec) = FieldMatrix::complement_section(&an, y.dim(n))?;
        let bn = b.component(n);
        let rhs_b = &*bottom.component(n) * &sec;
        let phi_u = if n == 0 {
            bn.solve(&rhs_b)?
        } else {
            let lhs = FieldMatrix::vstack(&bn, &e.diff(n - 1));
            let rhs_d = &(&comps[n - 1] * &y.diff(n - 1)) * &sec;
            lhs.solve(&FieldMatrix::vstack(&rhs_b, &rhs_d))?
        };
        let phi_u = phi_u.ok_or(Error::LiftFailed { degree: n })?;
        let basis = FieldMatrix::hstack(&an, &sec);
        let values = FieldMatrix::hstack(&top.component(n), &phi_u);
        comps.push(&values * &basis.inverse()?);
    }
    ChainMap::new(y.clone(), e.clone(), comps)
}

/// A factorisation `g = β ∘ α` through a middle object.
#[derive(Clone, Debug)]
pub struct ChainFactorisation {
    pub alpha: ChainMap,
    pub middle: ChainComplex,
    pub beta: ChainMap,
}

/// Minimal factorisation of `g: X -> Y` as a cofibration followed by an acyclic fibration.
///
/// With `W = ker g`, the middle is `(CBW ⊕ CHW) ⊕ Y`, `β = [0 1]`, `α = [φ; g]`
/// where `φ` extends `W ≅ CBW ⊕ HW ↪ CBW ⊕ CHW` over `X`.
pub fn minimal_factorisation_chain(g: &ChainMap) -> Result<ChainFactorisation> {
    let x = g.source();
    let y = g.target();
    let (j, alpha_w) = kernel_embedding(g)?;
    let d = alpha_w.target().clone();
    let zero = ChainComplex::zero(x.field());
    let to_zero = ChainMap::zero(&d, &zero);
    let phi = lift(&j, &to_zero, &alpha_w, &ChainMap::zero(x, &zero))?;
    let alpha = phi.vstack(g)?;
    let middle = alpha.target().clone();
    let (_, beta) = sum_projections(&d, y);
    Ok(ChainFactorisation {
        alpha,
        middle,
        beta,
    })
}

/// The kernel inclusion `j: W -> X` of `g` and the cofibration
/// `W ≅ CBW ⊕ HW ↪ CBW ⊕ CHW`, whose quotient is `SHW` with zero differentials.
pub fn kernel_embedding(g: &ChainMap) -> Result<(ChainMap, ChainMap)> {
    let (w, j) = kernel(g);
    let sd = standard_decomposition(&w);
    let chw = cone(&sd.homology);
    let into_d = ChainMap::identity(&sd.cone_on_boundaries).direct_sum(&chw.inclusion);
    let alpha_w = into_d.compose(&invert(&sd.iso)?)?;
    Ok((j, alpha_w))
}

/// Degreewise inverse of an isomorphism of chain complexes.
pub fn invert(g: &ChainMap) -> Result<ChainMap> {
    let comps = g
        .components()
        .iter()
        .map(|c| c.inverse())
        .collect::<Result<Vec<_>>>()?;
    ChainMap::new(g.target().clone(), g.source().clone(), comps)
}

/// `X -> CX ⊕ Y -> Y`: natural, a cofibration then an acyclic fibration, not minimal in general.
pub fn factor_through_cone(g: &ChainMap) -> ChainFactorisation {
    let c = cone(g.source());
    let alpha = c.inclusion.vstack(g).expect("common source");
    let (_, beta) = sum_projections(&c.cofiber, g.target());
    ChainFactorisation {
        middle: alpha.target().clone(),
        alpha,
        beta,
    }
}

/// `X -> X ⊕ PY -> Y`: natural, an acyclic cofibration then a fibration.
pub fn factor_through_path(g: &ChainMap) -> ChainFactorisation {
    let (py, p) = path(g.target());
    let (alpha, _) = sum_inclusions(g.source(), &py);
    let beta = g.hstack(&p).expect("common target");
    ChainFactorisation {
        middle: alpha.target().clone(),
        alpha,
        beta,
    }
}
