use crate::error::{Error, Result};
use crate::exactlin::{FieldMatrix, Pushout};

use super::{ChainComplex, ChainMap};

/// `SX`: `(SX)_{n+1} = X_n`, `δ^{SX}_n = -δ_{n-1}`.
pub fn suspend(x: &ChainComplex) -> ChainComplex {
    let f = x.field();
    if x.is_empty() {
        return x.clone();
    }
    let mut dims = vec![0];
    dims.extend_from_slice(x.dims());
    let mut diffs = vec![FieldMatrix::zeros(f, 0, x.dim(0))];
    diffs.extend((0..x.len().saturating_sub(1)).map(|n| -&*x.diff(n)));
    ChainComplex::from_parts(f, dims, diffs)
}

pub fn suspend_map(g: &ChainMap) -> ChainMap {
    let sx = suspend(g.source());
    let sy = suspend(g.target());
    ChainMap::from_fn(&sx, &sy, |n| {
        if n == 0 {
            FieldMatrix::zeros(sx.field(), 0, 0)
        } else {
            g.component(n - 1).into_owned()
        }
    })
}

/// Iterated suspension.
pub fn suspend_by(x: &ChainComplex, k: usize) -> ChainComplex {
    (0..k).fold(x.clone(), |acc, _| suspend(&acc))
}

pub fn suspend_map_by(g: &ChainMap, k: usize) -> ChainMap {
    (0..k).fold(g.clone(), |acc, _| suspend_map(&acc))
}

fn z1_basis(x: &ChainComplex) -> FieldMatrix {
    x.diff(0).kernel_basis()
}

/// `S⁻¹X`: `(S⁻¹X)_0 = Z_1X` in kernel-basis coordinates, `(S⁻¹X)_n = X_{n+1}`.
pub fn desuspend(x: &ChainComplex) -> ChainComplex {
    let f = x.field();
    let z1 = z1_basis(x);
    if x.len() < 2 {
        return ChainComplex::zero(f);
    }
    let mut dims = vec![z1.cols()];
    dims.extend_from_slice(&x.dims()[2..]);
    let d0 = z1
        .solve(&-&*x.diff(1))
        .expect("shapes agree")
        .expect("boundaries of degree 2 are cycles");
    let mut diffs = vec![d0];
    diffs.extend((2..x.len().saturating_sub(1)).map(|n| -&*x.diff(n)));
    ChainComplex::from_parts(f, dims, diffs)
}

pub fn desuspend_map(g: &ChainMap) -> ChainMap {
    let sx = desuspend(g.source());
    let sy = desuspend(g.target());
    let zx = z1_basis(g.source());
    let zy = z1_basis(g.target());
    ChainMap::from_fn(&sx, &sy, |n| {
        if n == 0 {
            zy.solve(&(&*g.component(1) * &zx))
                .expect("shapes agree")
                .expect("chain maps preserve cycles")
        } else {
            g.component(n + 1).into_owned()
        }
    })
}

pub fn desuspend_by(x: &ChainComplex, k: usize) -> ChainComplex {
    (0..k).fold(x.clone(), |acc, _| desuspend(&acc))
}

pub fn desuspend_map_by(g: &ChainMap, k: usize) -> ChainMap {
    (0..k).fold(g.clone(), |acc, _| desuspend_map(&acc))
}

/// The cofiber sequence `Y -i-> Cf -p-> SX` of `f: X -> Y`.
#[derive(Clone, Debug)]
pub struct CofiberData {
    pub cofiber: ChainComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// `(Cf)_n = Y_n ⊕ X_{n-1}` with differential `[[δ_Y, f], [0, -δ_X]]`.
pub fn cofiber(f: &ChainMap) -> CofiberData {
    let x = f.source();
    let y = f.target();
    let k = x.field();
    let len = y.len().max(x.len() + 1);
    let dims: Vec<usize> = (0..len)
        .map(|n| y.dim(n) + if n > 0 { x.dim(n - 1) } else { 0 })
        .collect();
    let diffs = (0..len.saturating_sub(1))
        .map(|n| {
            let top = FieldMatrix::hstack(&y.diff(n), &f.component(n));
            if n == 0 {
                top
            } else {
                let bottom = FieldMatrix::hstack(
                    &FieldMatrix::zeros(k, x.dim(n - 1), y.dim(n + 1)),
                    &-&*x.diff(n - 1),
                );
                FieldMatrix::vstack(&top, &bottom)
            }
        })
        .collect();
    let cf = ChainComplex::from_parts(k, dims, diffs);
    let sx = suspend(x);
    let inclusion = ChainMap::from_fn(y, &cf, |n| {
        let xd = if n > 0 { x.dim(n - 1) } else { 0 };
        FieldMatrix::vstack(
            &FieldMatrix::identity(k, y.dim(n)),
            &FieldMatrix::zeros(k, xd, y.dim(n)),
        )
    });
    let projection = ChainMap::from_fn(&cf, &sx, |n| {
        let xd = if n > 0 { x.dim(n - 1) } else { 0 };
        FieldMatrix::hstack(
            &FieldMatrix::zeros(k, xd, y.dim(n)),
            &FieldMatrix::identity(k, xd),
        )
    });
    CofiberData {
        cofiber: cf,
        inclusion,
        projection,
    }
}

/// `CX = C(1_X)`.
pub fn cone(x: &ChainComplex) -> CofiberData {
    cofiber(&ChainMap::identity(x))
}

/// The path complex `PX` with its projection `p: PX -> X`.
///
/// `(PX)_0 = X_1`, `(PX)_n = X_{n+1} ⊕ X_n`; `δ_0 = [-δ_1, 1]`,
/// `δ_n = [[-δ_{n+1}, 1], [0, δ_n]]`; `p_0 = δ_0`, `p_n = [0, 1]`.
pub fn path(x: &ChainComplex) -> (ChainComplex, ChainMap) {
    let k = x.field();
    let len = x.len();
    let pdim = |n: usize| {
        if n == 0 {
            x.dim(1)
        } else {
            x.dim(n + 1) + x.dim(n)
        }
    };
    let dims: Vec<usize> = (0..len).map(pdim).collect();
    let diffs = (0..len.saturating_sub(1))
        .map(|n| {
            let top =
                FieldMatrix::hstack(&-&*x.diff(n + 1), &FieldMatrix::identity(k, x.dim(n + 1)));
            if n == 0 {
                top
            } else {
                let bottom =
                    FieldMatrix::hstack(&FieldMatrix::zeros(k, x.dim(n), x.dim(n + 2)), &x.diff(n));
                FieldMatrix::vstack(&top, &bottom)
            }
        })
        .collect();
    let px = ChainComplex::from_parts(k, dims, diffs);
    let p = ChainMap::from_fn(&px, x, |n| {
        if n == 0 {
            x.diff(0).into_owned()
        } else {
            FieldMatrix::hstack(
                &FieldMatrix::zeros(k, x.dim(n), x.dim(n + 1)),
                &FieldMatrix::identity(k, x.dim(n)),
            )
        }
    });
    (px, p)
}

/// A square `β f ≃ g α` up to the homotopy `h_n: X_n -> Y'_{n+1}`,
/// where `f: X -> Y`, `g: X' -> Y'`, `α: X -> X'`, `β: Y -> Y'`.
#[derive(Clone, Debug)]
pub struct HomotopySquare {
    pub f: ChainMap,
    pub g: ChainMap,
    pub alpha: ChainMap,
    pub beta: ChainMap,
    pub h: Vec<FieldMatrix>,
}

impl HomotopySquare {
    /// Strictly commuting square with zero homotopy.
    pub fn strict(f: ChainMap, g: ChainMap, alpha: ChainMap, beta: ChainMap) -> Self {
        let k = f.source().field();
        let h = (0..f.source().len())
            .map(|n| FieldMatrix::zeros(k, g.target().dim(n + 1), f.source().dim(n)))
            .collect();
        HomotopySquare {
            f,
            g,
            alpha,
            beta,
            h,
        }
    }

    fn h(&self, n: usize) -> FieldMatrix {
        let k = self.f.source().field();
        match self.h.get(n) {
            Some(m) => m.clone(),
            None => FieldMatrix::zeros(k, self.g.target().dim(n + 1), self.f.source().dim(n)),
        }
    }

    /// Check shapes and `β_n f_n - g_n α_n = δ h_n + h_{n-1} δ`.
    pub fn validate(&self) -> Result<()> {
        let x = self.f.source();
        let yp = self.g.target();
        let bad = |what: &str| Err(Error::Invalid(format!("homotopy square: {what}")));
        if self.alpha.source() != x
            || self.alpha.target() != self.g.source()
            || self.beta.source() != self.f.target()
            || self.beta.target() != yp
        {
            return bad("maps do not form a square");
        }
        for (n, h) in self.h.iter().enumerate() {
            if h.shape() != (yp.dim(n + 1), x.dim(n)) {
                return bad("homotopy has the wrong shape");
            }
        }
        let len = x.len().max(yp.len());
        for n in 0..len {
            let lhs = &(&*self.beta.component(n) * &self.f.component(n))
                - &(&*self.g.component(n) * &self.alpha.component(n));
            let mut rhs = &*yp.diff(n) * &self.h(n);
            if n > 0 {
                rhs = &rhs + &(&self.h(n - 1) * &x.diff(n - 1));
            }
            if lhs != rhs {
                return Err(Error::HomotopyViolated { degree: n });
            }
        }
        Ok(())
    }
}

/// `C(α, β, h): Cf -> Cg` with components `[[β_n, h_{n-1}], [0, α_{n-1}]]`.
pub fn cofiber_map(sq: &HomotopySquare) -> Result<ChainMap> {
    sq.validate()?;
    let cf = cofiber(&sq.f).cofiber;
    let cg = cofiber(&sq.g).cofiber;
    let k = cf.field();
    Ok(ChainMap::from_fn(&cf, &cg, |n| {
        let beta = sq.beta.component(n);
        if n == 0 {
            beta.into_owned()
        } else {
            let xpd = sq.g.source().dim(n - 1);
            FieldMatrix::blocks(
                &beta,
                &sq.h(n - 1),
                &FieldMatrix::zeros(k, xpd, sq.f.target().dim(n)),
                &sq.alpha.component(n - 1),
            )
        }
    }))
}

/// `Y/f(X)` with the quotient map and a degreewise section of it.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub quotient: ChainComplex,
    pub projection: ChainMap,
    pub sections: Vec<FieldMatrix>,
}

/// Quotient of the target by the image subcomplex of `f`.
pub fn quotient(f: &ChainMap) -> QuotientData {
    let y = f.target();
    let k = y.field();
    let parts: Vec<(FieldMatrix, FieldMatrix)> = (0..y.len())
        .map(|n| {
            FieldMatrix::complement_section(&f.component(n).image_basis(), y.dim(n))
                .expect("image basis is independent")
        })
        .collect();
    let dims: Vec<usize> = parts.iter().map(|(p, _)| p.rows()).collect();
    let diffs = (0..y.len().saturating_sub(1))
        .map(|n| &(&parts[n].0 * &y.diff(n)) * &parts[n + 1].1)
        .collect();
    let q = ChainComplex::from_parts(k, dims, diffs);
    let projection = ChainMap::from_fn(y, &q, |n| match parts.get(n) {
        Some((p, _)) => p.clone(),
        None => FieldMatrix::zeros(k, 0, 0),
    });
    QuotientData {
        quotient: q,
        projection,
        sections: parts.into_iter().map(|(_, s)| s).collect(),
    }
}

/// Quotient by a degreewise injective map; errors otherwise.
pub fn quotient_mono(f: &ChainMap) -> Result<QuotientData> {
    if let Some(degree) = f.first_non_mono() {
        return Err(Error::NotMono { degree });
    }
    Ok(quotient(f))
}

/// The comparison morphism `Cf -> Y/f(X)`, components `[q, 0]`.
pub fn comparison_morphism(f: &ChainMap) -> ChainMap {
    let cf = cofiber(f).cofiber;
    let q = quotient(f);
    let k = cf.field();
    ChainMap::from_fn(&cf, &q.quotient, |n| {
        let qn = q.projection.component(n);
        let xd = if n > 0 { f.source().dim(n - 1) } else { 0 };
        FieldMatrix::hstack(&qn, &FieldMatrix::zeros(k, qn.rows(), xd))
    })
}

/// Kernel subcomplex `W = ker g` with its inclusion `j: W -> X`.
pub fn kernel(g: &ChainMap) -> (ChainComplex, ChainMap) {
    let x = g.source();
    let k = x.field();
    let bases: Vec<FieldMatrix> = (0..x.len())
        .map(|n| g.component(n).kernel_basis())
        .collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
    let diffs = (0..x.len().saturating_sub(1))
        .map(|n| {
            bases[n]
                .solve(&(&*x.diff(n) * &bases[n + 1]))
                .expect("shapes agree")
                .expect("kernel is a subcomplex")
        })
        .collect();
    let w = ChainComplex::from_parts(k, dims, diffs);
    let j = ChainMap::from_fn(&w, x, |n| match bases.get(n) {
        Some(b) => b.clone(),
        None => FieldMatrix::zeros(k, 0, 0),
    });
    (w, j)
}

/// Degreewise pushout of `W0 <-f- V -g-> W1`.
#[derive(Clone, Debug)]
pub struct ChainPushout {
    pub object: ChainComplex,
    pub from_w0: ChainMap,
    pub from_w1: ChainMap,
    parts: Vec<Pushout>,
}

impl ChainPushout {
    /// The chain map out of the pushout induced by `h0: W0 -> Z`, `h1: W1 -> Z`.
    pub fn induced(&self, h0: &ChainMap, h1: &ChainMap) -> ChainMap {
        let k = self.object.field();
        let z = h0.target();
        ChainMap::from_fn(&self.object, z, |n| match self.parts.get(n) {
            Some(p) => p.induced(&h0.component(n), &h1.component(n)),
            None => FieldMatrix::zeros(k, z.dim(n), 0),
        })
    }
}

pub fn pushout(f: &ChainMap, g: &ChainMap) -> Result<ChainPushout> {
    if f.source() != g.source() {
        return Err(Error::Invalid("pushout legs have different sources".into()));
    }
    let w0 = f.target();
    let w1 = g.target();
    let k = w0.field();
    let len = w0.len().max(w1.len());
    let parts: Vec<Pushout> = (0..len)
        .map(|n| FieldMatrix::pushout(&f.component(n), &g.component(n)))
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = parts.iter().map(|p| p.dim).collect();
    let diffs = (0..len.saturating_sub(1))
        .map(|n| {
            let a = &parts[n].from_w0 * &w0.diff(n);
            let b = &parts[n].from_w1 * &w1.diff(n);
            parts[n + 1].induced(&a, &b)
        })
        .collect();
    let object = ChainComplex::from_parts(k, dims, diffs);
    let from_w0 = ChainMap::from_fn(w0, &object, |n| match parts.get(n) {
        Some(p) => p.from_w0.clone(),
        None => FieldMatrix::zeros(k, 0, 0),
    });
    let from_w1 = ChainMap::from_fn(w1, &object, |n| match parts.get(n) {
        Some(p) => p.from_w1.clone(),
        None => FieldMatrix::zeros(k, 0, 0),
    });
    Ok(ChainPushout {
        object,
        from_w0,
        from_w1,
        parts,
    })
}

/// Inclusion and projection for `X ⊕ Y`.
pub fn sum_inclusions(x: &ChainComplex, y: &ChainComplex) -> (ChainMap, ChainMap) {
    let s = x.direct_sum(y);
    let k = x.field();
    let i0 = ChainMap::from_fn(x, &s, |n| {
        FieldMatrix::vstack(
            &FieldMatrix::identity(k, x.dim(n)),
            &FieldMatrix::zeros(k, y.dim(n), x.dim(n)),
        )
    });
    let i1 = ChainMap::from_fn(y, &s, |n| {
        FieldMatrix::vstack(
            &FieldMatrix::zeros(k, x.dim(n), y.dim(n)),
            &FieldMatrix::identity(k, y.dim(n)),
        )
    });
    (i0, i1)
}

pub fn sum_projections(x: &ChainComplex, y: &ChainComplex) -> (ChainMap, ChainMap) {
    let s = x.direct_sum(y);
    let k = x.field();
    let p0 = ChainMap::from_fn(&s, x, |n| {
        FieldMatrix::hstack(
            &FieldMatrix::identity(k, x.dim(n)),
            &FieldMatrix::zeros(k, x.dim(n), y.dim(n)),
        )
    });
    let p1 = ChainMap::from_fn(&s, y, |n| {
        FieldMatrix::hstack(
            &FieldMatrix::zeros(k, y.dim(n), x.dim(n)),
            &FieldMatrix::identity(k, y.dim(n)),
        )
    });
    (p0, p1)
}
