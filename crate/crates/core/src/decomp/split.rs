use crate::chaincx::ChainMap;
use crate::error::{Error, Result};
use crate::exactlin::FieldMatrix;
use crate::tamecat::{minimal_cover, Param, TameComplex, TameMap};

use super::betti::{diagrams_from_spheres, off_diagonal, spheres_of};
use super::{BettiDiagram, IntervalSphere};

/// One summand of a decomposition together with its embedding into the decomposed object.
#[derive(Clone, Debug)]
pub struct Summand {
    pub sphere: IntervalSphere,
    pub embedding: TameMap,
}

/// Split a cofibrant object into interval spheres.
///
/// While some differential is nonzero: take the lowest such degree `n`, the first grid
/// point `e` where `δ_n` is nonzero, and the first `s <= e` whose cycles reach `im δ_n^e`.
/// The summand `Iⁿ[s,e]` is embedded by `I(x, y)` and split off through a retraction
/// onto it; the loop continues on the kernel of the retraction. What remains has zero
/// differentials and splits into `Iⁿ[τ,∞)` along the cokernels of its transitions.
pub fn decompose_with_summands(x: &TameComplex) -> Result<Vec<Summand>> {
    if let Some(index) = x.first_non_mono_transition() {
        return Err(Error::NotCofibrant { index });
    }
    let mut out = Vec::new();
    let mut cur = x.clone();
    let mut incl = TameMap::identity(x);
    while let Some(split) = find_split(&cur)? {
        let emb = split.sphere.map_into(&cur, &split.x, Some(&split.y))?;
        let psi = retraction(&cur, &split)?;
        out.push(Summand {
            sphere: split.sphere,
            embedding: incl.compose(&emb)?,
        });
        let (rest, j) = psi.kernel();
        incl = incl.compose(&j)?;
        cur = rest;
    }
    for a in 0..cur.num_points() {
        let v = cur.value(a);
        for n in 0..v.len() {
            let fresh = if a == 0 {
                FieldMatrix::identity(cur.field(), v.dim(n))
            } else {
                let im = cur.step(a).component(n).image_basis();
                FieldMatrix::complement_section(&im, v.dim(n))?.1
            };
            let sphere = IntervalSphere::new(n, cur.grid()[a], Param::Infinity)?;
            for j in 0..fresh.cols() {
                let emb = sphere.map_into(&cur, &fresh.column(j), None)?;
                out.push(Summand {
                    sphere,
                    embedding: incl.compose(&emb)?,
                });
            }
        }
    }
    Ok(out)
}

struct Split {
    sphere: IntervalSphere,
    s_idx: usize,
    x: FieldMatrix,
    y: FieldMatrix,
}

fn find_split(x: &TameComplex) -> Result<Option<Split>> {
    let degrees = x.num_degrees();
    let Some((n, ei)) = (0..degrees.saturating_sub(1)).find_map(|n| {
        (0..x.num_points())
            .find(|&a| !x.value(a).diff(n).is_zero())
            .map(|a| (n, a))
    }) else {
        return Ok(None);
    };
    let d = x.value(ei).diff(n).into_owned();
    for si in 0..=ei {
        let t = x.transition_between(si, ei).component(n).into_owned();
        let pb = FieldMatrix::pullback(&t, &d)?;
        if pb.dim == 0 {
            continue;
        }
        let meet = (&t * &pb.into_w1).image_basis();
        if meet.cols() == 0 {
            continue;
        }
        let v = meet.column(0);
        let xs = t.solve(&v)?.expect("v lies in the image of the transition");
        let ys = d
            .solve(&v)?
            .expect("v lies in the image of the differential");
        let sphere = IntervalSphere::new(n, x.grid()[si], x.grid()[ei])?;
        return Ok(Some(Split {
            sphere,
            s_idx: si,
            x: xs,
            y: ys,
        }));
    }
    unreachable!("δ_n^e is nonzero, so the intersection at s = e is nonzero")
}

/// `ψ: X -> Iⁿ[s,e]` with `ψ ∘ I(x, y) = id`.
///
/// On degree `n` it is `f ∘ X^{τ_a -> τ_k}` for a functional `f` on the last value with
/// `f(x) = 1` that kills everything present before `s`; on degree `n+1` it is `ψ_n ∘ δ_n`.
fn retraction(x: &TameComplex, split: &Split) -> Result<TameMap> {
    let field = x.field();
    let n = split.sphere.n;
    let last = x.num_points() - 1;
    let top = |a: usize| x.transition_between(a, last).component(n).into_owned();
    let u = &top(split.s_idx) * &split.x;
    let before = if split.s_idx == 0 {
        FieldMatrix::zeros(field, u.rows(), 0)
    } else {
        top(split.s_idx - 1).image_basis()
    };
    let lhs = FieldMatrix::hstack(&before, &u).transpose();
    let mut rhs = FieldMatrix::zeros(field, lhs.rows(), 1);
    rhs.set(lhs.rows() - 1, 0, 1);
    let f = lhs
        .solve(&rhs)?
        .ok_or_else(|| Error::Invalid("split generator comes from an earlier grid point".into()))?
        .transpose();
    let target = split.sphere.realize_on(field, x.grid())?;
    let mut comps = Vec::with_capacity(x.num_points());
    for a in 0..x.num_points() {
        let src = x.value(a);
        let tgt = target.value(a);
        let len = src.len().max(tgt.len());
        let mut c: Vec<FieldMatrix> = (0..len)
            .map(|m| FieldMatrix::zeros(field, tgt.dim(m), src.dim(m)))
            .collect();
        if tgt.dim(n) == 1 {
            c[n] = &f * &top(a);
            if tgt.dim(n + 1) == 1 {
                c[n + 1] = &c[n] * &src.diff(n);
            }
        }
        comps.push(ChainMap::new(src.clone(), tgt.clone(), c)?);
    }
    TameMap::new(x.clone(), target, comps)
}

/// Betti diagrams of a cofibrant object, indexed by degree.
pub fn decompose_cofibrant(x: &TameComplex) -> Result<Vec<BettiDiagram>> {
    Ok(diagrams_from_spheres(
        decompose_with_summands(x)?.into_iter().map(|s| s.sphere),
    ))
}

/// `β_n`: the decomposition of the minimal cover.
pub fn betti(x: &TameComplex) -> Result<Vec<BettiDiagram>> {
    decompose_cofibrant(&minimal_cover(x)?.cover)
}

/// `β_n^min`: the Betti diagrams without diagonal points.
pub fn min_betti(x: &TameComplex) -> Result<Vec<BettiDiagram>> {
    Ok(off_diagonal(&betti(x)?))
}

/// A minimal object weakly equivalent to `x`.
pub fn minimal_representative_tame(x: &TameComplex) -> Result<TameComplex> {
    Ok(rebuild_from_betti(x.field(), &min_betti(x)?))
}

/// Cofibrant with no `Iⁿ[s,s]` summand.
pub fn is_minimal(x: &TameComplex) -> bool {
    x.is_cofibrant() && decompose_cofibrant(x).is_ok_and(|d| d.iter().all(|b| !b.has_diagonal()))
}

/// Whether `c: X -> Y` is a minimal cover.
///
/// Beyond the cofibrant source and the acyclic fibration, no summand `Iⁿ[s,s]` of `X` may
/// lie in the kernel of `c`. Such a summand is a cofibration `I(δy, y)` with `c(y) = 0`
/// and `δy` not coming from the preceding grid point, so the test is: at every grid point
/// and degree, `ker c_{n+1}` lies in `{y : δy ∈ im X^{prev -> τ}}`.
pub fn is_minimal_cover(c: &TameMap) -> bool {
    let x = c.source();
    if !x.is_cofibrant() || !c.is_fibration() || !c.is_weak_equivalence() {
        return false;
    }
    for a in 0..x.num_points() {
        let v = x.value(a);
        for n in 0..v.len().saturating_sub(1) {
            let k = c.component(a).component(n + 1).kernel_basis();
            if k.cols() == 0 {
                continue;
            }
            let dk = &*v.diff(n) * &k;
            let reachable = if a == 0 {
                dk.is_zero()
            } else {
                let prev = x.step(a).component(n).into_owned();
                FieldMatrix::hstack(&prev, &dk).rank() == prev.rank()
            };
            if !reachable {
                return false;
            }
        }
    }
    true
}

/// `⊕ (Iⁿ[s,e])^{β_n(s,e)}` on the merged grid.
pub fn rebuild_from_betti(field: crate::exactlin::Field, diagrams: &[BettiDiagram]) -> TameComplex {
    let spheres = spheres_of(diagrams);
    let mut grid = vec![Param::ZERO];
    for sp in &spheres {
        grid = crate::tamecat::merge_grids(&grid, &sp.grid());
    }
    let mut out = TameComplex::zero(field, grid.clone());
    for sp in &spheres {
        out = out.direct_sum(
            &sp.realize_on(field, &grid)
                .expect("merged grid contains s and e"),
        );
    }
    out
}
