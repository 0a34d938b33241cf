use std::fmt;

use crate::chaincx::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactlin::{Field, FieldMatrix};
use crate::tamecat::{merge_grids, Param, TameComplex, TameMap};

/// `Iⁿ[s,e]`: a sphere `𝕊ⁿ` born at `s` and capped by `𝔻ⁿ⁺¹` at `e`.
///
/// `e = ∞` means never capped, `s = e` means born already capped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalSphere {
    pub n: usize,
    pub s: Param,
    pub e: Param,
}

impl IntervalSphere {
    pub fn new(n: usize, s: Param, e: Param) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::BadParams("birth must be finite".into()));
        }
        if s > e {
            return Err(Error::BadParams(format!("birth {s} after death {e}")));
        }
        Ok(IntervalSphere { n, s, e })
    }

    pub fn is_diagonal(&self) -> bool {
        self.s == self.e
    }

    /// The grid points at which the realization changes.
    pub fn grid(&self) -> Vec<Param> {
        let mut g = vec![Param::ZERO, self.s];
        if self.e.is_finite() {
            g.push(self.e);
        }
        g.dedup();
        g
    }

    /// Realization on its own minimal grid.
    pub fn realize(&self, field: Field) -> TameComplex {
        self.realize_on(field, &self.grid())
            .expect("own grid contains s and e")
    }

    /// Realization on a grid containing `s` (and `e` when finite).
    pub fn realize_on(&self, field: Field, grid: &[Param]) -> Result<TameComplex> {
        let g = merge_grids(grid, &self.grid());
        if g.len() != grid.len() {
            return Err(Error::NotARefinement);
        }
        let values: Vec<ChainComplex> = grid.iter().map(|&t| self.value_at(field, t)).collect();
        let transitions = (1..grid.len())
            .map(|a| self.step_map(field, &values[a - 1], &values[a]))
            .collect();
        TameComplex::new(grid.to_vec(), values, transitions)
    }

    fn value_at(&self, field: Field, t: Param) -> ChainComplex {
        if t < self.s {
            ChainComplex::zero(field)
        } else if t < self.e {
            ChainComplex::sphere(field, self.n)
        } else {
            ChainComplex::disk(field, self.n)
        }
    }

    // 0 -> 𝕊ⁿ is zero, 𝕊ⁿ -> 𝔻ⁿ⁺¹ is the inclusion, anything else is an identity
    fn step_map(&self, field: Field, a: &ChainComplex, b: &ChainComplex) -> ChainMap {
        let one = FieldMatrix::identity(field, 1);
        let comps = (0..b.len().max(a.len()))
            .map(|m| one.submatrix(0, b.dim(m), 0, a.dim(m)))
            .collect();
        ChainMap::new(a.clone(), b.clone(), comps).expect("interval sphere steps are chain maps")
    }

    /// The standard inclusion `Iⁿ[s,e] -> Iⁿ[s,s]`.
    pub fn standard_inclusion(&self, field: Field) -> TameMap {
        let diag = IntervalSphere { e: self.s, ..*self };
        let grid = self.grid();
        let src = self.realize_on(field, &grid).expect("own grid");
        let tgt = diag.realize_on(field, &grid).expect("refines own grid");
        let comps = (0..grid.len())
            .map(|a| self.step_map(field, src.value(a), tgt.value(a)))
            .collect();
        TameMap::new(src, tgt, comps).expect("standard inclusion is natural")
    }

    /// `I(x)` for `e = ∞`, or `I(x, y)` for finite `e`, into `target`.
    ///
    /// `target`'s grid must contain `s` and `e`; `x` is a column in `X_n^s`, `y` in `X_{n+1}^e`.
    pub fn map_into(
        &self,
        target: &TameComplex,
        x: &FieldMatrix,
        y: Option<&FieldMatrix>,
    ) -> Result<TameMap> {
        let field = target.field();
        let src = self.realize_on(field, target.grid())?;
        let si = target
            .grid()
            .iter()
            .position(|&t| t == self.s)
            .expect("grid contains s");
        let ei = if self.e.is_finite() {
            Some(
                target
                    .grid()
                    .iter()
                    .position(|&t| t == self.e)
                    .expect("grid contains e"),
            )
        } else {
            None
        };
        let y = match (ei, y) {
            (Some(_), Some(y)) => Some(y),
            (Some(_), None) => return Err(Error::Invalid("finite death needs a chain y".into())),
            (None, _) => None,
        };
        let mut comps = Vec::with_capacity(target.num_points());
        for a in 0..target.num_points() {
            let t = target.value(a);
            let len = t.len().max(src.value(a).len());
            let mut c: Vec<FieldMatrix> = (0..len)
                .map(|m| FieldMatrix::zeros(field, t.dim(m), src.value(a).dim(m)))
                .collect();
            if a >= si {
                c[self.n] = &*target.transition_between(si, a).component(self.n) * x;
            }
            if let (Some(ei), Some(y)) = (ei, y) {
                if a >= ei {
                    c[self.n + 1] = &*target.transition_between(ei, a).component(self.n + 1) * y;
                }
            }
            comps.push(ChainMap::new(src.value(a).clone(), t.clone(), c)?);
        }
        TameMap::new(src, target.clone(), comps)
    }
}

impl fmt::Display for IntervalSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_finite() {
            write!(f, "I{}[{},{}]", self.n, self.s, self.e)
        } else {
            write!(f, "I{}[{},inf)", self.n, self.s)
        }
    }
}

/// A basis of the morphisms `Iⁿ[s,e] -> x`, after refining `x` to contain `s` and `e`.
///
/// For `e = ∞` these are the `I(z)` for a basis `z` of `Z_n x^s`; otherwise the `I(z, y)`
/// for a basis of `lim(Z_n x^s -> x_n^e <-δ- x_{n+1}^e)`.
pub fn hom_from_sphere(sphere: &IntervalSphere, x: &TameComplex) -> Result<Vec<TameMap>> {
    let x = x.refine(&merge_grids(x.grid(), &sphere.grid()))?;
    let n = sphere.n;
    let si = x.index_at(sphere.s);
    let v = x.value(si);
    let z = if n == 0 {
        FieldMatrix::identity(x.field(), v.dim(0))
    } else {
        v.diff(n - 1).kernel_basis()
    };
    if !sphere.e.is_finite() {
        return (0..z.cols())
            .map(|j| sphere.map_into(&x, &z.column(j), None))
            .collect();
    }
    let ei = x.index_at(sphere.e);
    let t = &*x.transition_between(si, ei).component(n) * &z;
    let d = x.value(ei).diff(n).into_owned();
    let pb = FieldMatrix::pullback(&t, &d)?;
    let xs = &z * &pb.into_w1;
    (0..pb.dim)
        .map(|j| sphere.map_into(&x, &xs.column(j), Some(&pb.into_w0.column(j))))
        .collect()
}

/// Image-avoidance test for a map out of an interval sphere into a cofibrant target:
/// the generator at `s` (and the one at `e`) must not come from the preceding grid point.
pub fn is_cofibration_from_sphere(sphere: &IntervalSphere, g: &TameMap) -> bool {
    let x = g.target();
    if !x.is_cofibrant() {
        return false;
    }
    let fresh = |t: Param, m: usize| -> bool {
        let a = x.index_at(t);
        let col = g.component(a).component(m).into_owned();
        if col.is_zero() {
            return false;
        }
        if a == 0 {
            return true;
        }
        let prev = x.step(a).component(m).into_owned();
        prev.solve(&col).expect("shapes agree").is_none()
    };
    fresh(sphere.s, sphere.n) && (!sphere.e.is_finite() || fresh(sphere.e, sphere.n + 1))
}
