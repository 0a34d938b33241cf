use std::fmt;

use crate::chaincx::{self, ChainComplex, ChainMap, HomotopySquare};
use crate::error::{Error, Result};
use crate::exactlin::{Field, FieldMatrix};

use super::param::{merge_grids, validate_grid, Param};

/// A tame `[0,∞)`-parametrised chain complex, stored on a finite grid `0 = τ_0 < … < τ_k`.
///
/// The value at `t` is `values[a]` for the largest `a` with `grid[a] <= t`;
/// `transitions[a-1]` is the map `values[a-1] -> values[a]`.
#[derive(Clone, PartialEq, Eq)]
pub struct TameComplex {
    field: Field,
    grid: Vec<Param>,
    values: Vec<ChainComplex>,
    transitions: Vec<ChainMap>,
}

impl TameComplex {
    pub fn new(
        grid: Vec<Param>,
        values: Vec<ChainComplex>,
        transitions: Vec<ChainMap>,
    ) -> Result<Self> {
        validate_grid(&grid)?;
        if values.len() != grid.len() {
            return Err(Error::GridLength {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if transitions.len() + 1 != grid.len() {
            return Err(Error::GridLength {
                expected: grid.len() - 1,
                got: transitions.len(),
            });
        }
        let field = values[0].field();
        for (a, t) in transitions.iter().enumerate() {
            if t.source() != &values[a] || t.target() != &values[a + 1] {
                return Err(Error::Invalid(format!(
                    "transition {} does not connect grid values {} and {}",
                    a + 1,
                    a,
                    a + 1
                )));
            }
        }
        if values.iter().any(|v| v.field() != field) {
            return Err(Error::FieldMismatch {
                left: field.modulus(),
                right: values
                    .iter()
                    .find(|v| v.field() != field)
                    .unwrap()
                    .field()
                    .modulus(),
            });
        }
        Ok(TameComplex {
            field,
            grid,
            values,
            transitions,
        })
    }

    pub(crate) fn from_parts(
        grid: Vec<Param>,
        values: Vec<ChainComplex>,
        transitions: Vec<ChainMap>,
    ) -> Self {
        Self::new(grid, values, transitions)
            .expect("internal construction produced an invalid tame complex")
    }

    /// Left Kan extension of a finite sequence along an increasing grid.
    ///
    /// A grid starting above 0 gets a leading point 0 carrying the zero complex.
    pub fn kan_extension(
        values: Vec<ChainComplex>,
        maps: Vec<ChainMap>,
        grid: Vec<Param>,
    ) -> Result<Self> {
        if grid.is_empty() || values.len() != grid.len() {
            return Err(Error::GridLength {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if grid[0].is_zero() {
            return Self::new(grid, values, maps);
        }
        let field = values[0].field();
        let zero = ChainComplex::zero(field);
        let mut g = vec![Param::ZERO];
        g.extend(grid);
        let mut v = vec![zero.clone()];
        let first = ChainMap::zero(&zero, &values[0]);
        v.extend(values);
        let mut m = vec![first];
        m.extend(maps);
        Self::new(g, v, m)
    }

    pub fn constant(x: ChainComplex) -> Self {
        TameComplex {
            field: x.field(),
            grid: vec![Param::ZERO],
            values: vec![x],
            transitions: Vec::new(),
        }
    }

    pub fn zero(field: Field, grid: Vec<Param>) -> Self {
        let z = ChainComplex::zero(field);
        let values = vec![z.clone(); grid.len()];
        let transitions = vec![ChainMap::identity(&z); grid.len().saturating_sub(1)];
        Self::from_parts(grid, values, transitions)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn grid(&self) -> &[Param] {
        &self.grid
    }

    pub fn values(&self) -> &[ChainComplex] {
        &self.values
    }

    pub fn value(&self, a: usize) -> &ChainComplex {
        &self.values[a]
    }

    /// All stored transitions; entry `a-1` is `values[a-1] -> values[a]`.
    pub fn transitions(&self) -> &[ChainMap] {
        &self.transitions
    }

    /// The transition into grid point `a >= 1`.
    pub fn step(&self, a: usize) -> &ChainMap {
        &self.transitions[a - 1]
    }

    pub fn num_points(&self) -> usize {
        self.grid.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_empty())
    }

    /// Highest degree plus one over all grid values.
    pub fn num_degrees(&self) -> usize {
        self.values.iter().map(|v| v.len()).max().unwrap_or(0)
    }

    pub fn index_at(&self, t: Param) -> usize {
        self.grid.iter().rposition(|&g| g <= t).unwrap_or(0)
    }

    pub fn evaluate(&self, t: Param) -> &ChainComplex {
        &self.values[self.index_at(t)]
    }

    /// Composite of the stored steps between grid indices `a <= b`.
    pub fn transition_between(&self, a: usize, b: usize) -> ChainMap {
        let mut m = ChainMap::identity(&self.values[a]);
        for c in a + 1..=b {
            m = self.step(c).compose(&m).expect("consecutive steps compose");
        }
        m
    }

    /// `X^{s<=t}`; steps crossing grid points in `(s, t]` are composed.
    pub fn transition(&self, s: Param, t: Param) -> Result<ChainMap> {
        if s > t {
            return Err(Error::BadParams(format!("{s} > {t}")));
        }
        if !t.is_finite() {
            return Err(Error::BadParams("transition to infinity".into()));
        }
        Ok(self.transition_between(self.index_at(s), self.index_at(t)))
    }

    /// Re-express on a finer grid; new points carry identity transitions.
    pub fn refine(&self, grid2: &[Param]) -> Result<TameComplex> {
        validate_grid(grid2)?;
        if !self.grid.iter().all(|g| grid2.contains(g)) {
            return Err(Error::NotARefinement);
        }
        if grid2 == self.grid.as_slice() {
            return Ok(self.clone());
        }
        let idx: Vec<usize> = grid2.iter().map(|&t| self.index_at(t)).collect();
        let values = idx.iter().map(|&a| self.values[a].clone()).collect();
        let transitions = idx
            .windows(2)
            .map(|w| {
                if w[0] == w[1] {
                    ChainMap::identity(&self.values[w[0]])
                } else {
                    self.step(w[1]).clone()
                }
            })
            .collect();
        Ok(Self::from_parts(grid2.to_vec(), values, transitions))
    }

    pub fn direct_sum(&self, other: &TameComplex) -> TameComplex {
        let (x, y) = common_grid(self, other);
        let values = x
            .values
            .iter()
            .zip(&y.values)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        let transitions = x
            .transitions
            .iter()
            .zip(&y.transitions)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Self::from_parts(x.grid.clone(), values, transitions)
    }

    /// Every transition is degreewise injective.
    pub fn is_cofibrant(&self) -> bool {
        self.first_non_mono_transition().is_none()
    }

    /// Grid index `a >= 1` of the first non-injective transition.
    pub fn first_non_mono_transition(&self) -> Option<usize> {
        self.transitions
            .iter()
            .position(|t| !t.is_mono())
            .map(|i| i + 1)
    }

    pub fn suspend(&self) -> TameComplex {
        TameComplex::from_parts(
            self.grid.clone(),
            self.values.iter().map(chaincx::suspend).collect(),
            self.transitions.iter().map(chaincx::suspend_map).collect(),
        )
    }

    /// Drop grid points across which every transition is an isomorphism.
    pub fn coarsen(&self) -> TameComplex {
        let keep: Vec<usize> = (0..self.grid.len())
            .filter(|&a| a == 0 || !self.step(a).is_iso())
            .collect();
        let grid = keep.iter().map(|&a| self.grid[a]).collect();
        let values = keep.iter().map(|&a| self.values[a].clone()).collect();
        let mut transitions = Vec::new();
        for w in keep.windows(2) {
            // steps w[0]+1 .. w[1]-1 are isomorphisms; fold them into the next kept step
            let mut m = self.transition_between(w[0], w[1] - 1);
            m = self
                .step(w[1])
                .compose(&m)
                .expect("consecutive steps compose");
            transitions.push(m);
        }
        // trailing isomorphisms are absorbed by changing nothing: values past the last kept point
        // are isomorphic to the last kept value, which the Kan extension holds constant.
        Self::from_parts(grid, values, transitions)
    }
}

/// Refine both objects to the union of their grids.
pub fn common_grid(x: &TameComplex, y: &TameComplex) -> (TameComplex, TameComplex) {
    if x.grid == y.grid {
        return (x.clone(), y.clone());
    }
    let g = merge_grids(&x.grid, &y.grid);
    (
        x.refine(&g).expect("union refines"),
        y.refine(&g).expect("union refines"),
    )
}

impl fmt::Debug for TameComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TameComplex over {:?}", self.field)?;
        for (a, v) in self.values.iter().enumerate() {
            write!(f, "  {} : {:?}", self.grid[a], v)?;
            if a > 0 {
                write!(f, "  <- {:?}", self.step(a).components())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `W0 -> W1` induced on subcomplexes `j0: W0 ↪ X0`, `j1: W1 ↪ X1` by `t: X0 -> X1`.
pub(crate) fn restrict(j0: &ChainMap, j1: &ChainMap, t: &ChainMap) -> ChainMap {
    let w0 = j0.source();
    let w1 = j1.source();
    let comps = (0..w0.len().max(w1.len()))
        .map(|n| {
            j1.component(n)
                .solve(&(&*t.component(n) * &j0.component(n)))
                .expect("shapes agree")
                .expect("transition preserves the subcomplex")
        })
        .collect();
    ChainMap::new(w0.clone(), w1.clone(), comps).expect("restriction is a chain map")
}

/// Map between quotients induced by `t`, given projections and sections of the source quotient.
pub(crate) fn descend(
    q0: &chaincx::QuotientData,
    q1: &chaincx::QuotientData,
    t: &ChainMap,
) -> ChainMap {
    let a = &q0.quotient;
    let b = &q1.quotient;
    let k = a.field();
    let comps = (0..a.len().max(b.len()))
        .map(|n| {
            let s = q0
                .sections
                .get(n)
                .cloned()
                .unwrap_or_else(|| FieldMatrix::zeros(k, t.source().dim(n), 0));
            &(&*q1.projection.component(n) * &t.component(n)) * &s
        })
        .collect();
    ChainMap::new(a.clone(), b.clone(), comps).expect("induced quotient map is a chain map")
}

/// `C(α, β)` with zero homotopy, for a strictly commuting square.
pub(crate) fn cofiber_of_square(
    f: &ChainMap,
    g: &ChainMap,
    alpha: &ChainMap,
    beta: &ChainMap,
) -> ChainMap {
    chaincx::cofiber_map(&HomotopySquare::strict(
        f.clone(),
        g.clone(),
        alpha.clone(),
        beta.clone(),
    ))
    .expect("square commutes")
}
