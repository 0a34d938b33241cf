use std::borrow::Cow;
use std::fmt;

use crate::error::{dim_err, Error, Result};
use crate::exactlin::{Field, FieldMatrix};

/// A compact non-negatively graded chain complex.
///
/// `diffs[n]` is `δ_n: X_{n+1} -> X_n`. Trailing zero degrees are trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainComplex {
    field: Field,
    dims: Vec<usize>,
    diffs: Vec<FieldMatrix>,
}

impl ChainComplex {
    /// Validate shapes and `δ_n δ_{n+1} = 0`.
    pub fn new(field: Field, dims: Vec<usize>, diffs: Vec<FieldMatrix>) -> Result<Self> {
        let x = Self::build(field, dims, diffs)?;
        for n in 0..x.diffs.len().saturating_sub(1) {
            if !(&x.diffs[n] * &x.diffs[n + 1]).is_zero() {
                return Err(Error::NotAComplex { degree: n });
            }
        }
        Ok(x)
    }

    fn build(field: Field, mut dims: Vec<usize>, mut diffs: Vec<FieldMatrix>) -> Result<Self> {
        if diffs.len() + 1 < dims.len() {
            // missing top differentials are zero
            for n in diffs.len()..dims.len() - 1 {
                diffs.push(FieldMatrix::zeros(field, dims[n], dims[n + 1]));
            }
        }
        for (n, d) in diffs.iter().enumerate() {
            let rows = dims.get(n).copied().unwrap_or(0);
            let cols = dims.get(n + 1).copied().unwrap_or(0);
            if d.shape() != (rows, cols) {
                return Err(dim_err(
                    "differential",
                    format!(
                        "δ_{n} is {}x{}, expected {}x{}",
                        d.rows(),
                        d.cols(),
                        rows,
                        cols
                    ),
                ));
            }
            if d.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.modulus(),
                    right: d.field().modulus(),
                });
            }
        }
        while dims.last() == Some(&0) {
            dims.pop();
        }
        diffs.truncate(dims.len().saturating_sub(1));
        Ok(ChainComplex { field, dims, diffs })
    }

    /// Trusted constructor for internal constructions; validates only in debug builds.
    pub(crate) fn from_parts(field: Field, dims: Vec<usize>, diffs: Vec<FieldMatrix>) -> Self {
        if cfg!(debug_assertions) {
            Self::new(field, dims, diffs)
                .expect("internal construction produced an invalid complex")
        } else {
            Self::build(field, dims, diffs).expect("internal construction produced bad shapes")
        }
    }

    pub fn zero(field: Field) -> Self {
        ChainComplex {
            field,
            dims: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// Graded vector space with zero differentials.
    pub fn graded(field: Field, dims: Vec<usize>) -> Self {
        Self::from_parts(field, dims, Vec::new())
    }

    /// `𝕊ⁿ`: one copy of the field in degree `n`.
    pub fn sphere(field: Field, n: usize) -> Self {
        let mut dims = vec![0; n + 1];
        dims[n] = 1;
        Self::graded(field, dims)
    }

    /// `𝔻ⁿ⁺¹`, the cone on `𝕊ⁿ`: the field in degrees `n` and `n+1` joined by the identity.
    pub fn disk(field: Field, n: usize) -> Self {
        let mut dims = vec![0; n + 2];
        dims[n] = 1;
        dims[n + 1] = 1;
        let mut diffs: Vec<FieldMatrix> = (0..n + 1)
            .map(|k| FieldMatrix::zeros(field, dims[k], dims[k + 1]))
            .collect();
        diffs[n] = FieldMatrix::identity(field, 1);
        Self::from_parts(field, dims, diffs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// Number of stored degrees: one past the top nonzero degree.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `δ_n: X_{n+1} -> X_n`.
    pub fn diff(&self, n: usize) -> Cow<'_, FieldMatrix> {
        match self.diffs.get(n) {
            Some(d) => Cow::Borrowed(d),
            None => Cow::Owned(FieldMatrix::zeros(self.field, self.dim(n), self.dim(n + 1))),
        }
    }

    pub fn has_trivial_differentials(&self) -> bool {
        self.diffs.iter().all(|d| d.is_zero())
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        assert_eq!(self.field, other.field, "field mismatch");
        let len = self.len().max(other.len());
        let dims = (0..len).map(|n| self.dim(n) + other.dim(n)).collect();
        let diffs = (0..len.saturating_sub(1))
            .map(|n| FieldMatrix::block_diag(&self.diff(n), &other.diff(n)))
            .collect();
        Self::from_parts(self.field, dims, diffs)
    }

    /// Cycles, boundaries and a chosen splitting of homology in every degree.
    pub fn homology(&self) -> HomologyData {
        let degrees = (0..self.len())
            .map(|n| {
                let cycles = if n == 0 {
                    FieldMatrix::identity(self.field, self.dim(0))
                } else {
                    self.diff(n - 1).kernel_basis()
                };
                let boundaries = self.diff(n).image_basis();
                let in_cycles = cycles
                    .solve(&boundaries)
                    .expect("shapes agree")
                    .expect("boundaries are cycles");
                let (proj, sec) = FieldMatrix::complement_section(&in_cycles, cycles.cols())
                    .expect("boundary basis is independent");
                let section = &cycles * &sec;
                HomologyDegree {
                    cycles,
                    boundaries,
                    proj,
                    section,
                }
            })
            .collect();
        HomologyData { degrees }
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        let mut h: Vec<usize> = (0..self.len())
            .map(|n| {
                let z = if n == 0 {
                    self.dim(0)
                } else {
                    self.dim(n) - self.diff(n - 1).rank()
                };
                z - self.diff(n).rank()
            })
            .collect();
        while h.last() == Some(&0) {
            h.pop();
        }
        h
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().is_empty()
    }

    /// Conjugate every differential by the given degreewise invertible matrices.
    pub fn change_basis(&self, basis: &[FieldMatrix]) -> Result<ChainComplex> {
        let mut invs = Vec::with_capacity(self.len());
        for n in 0..self.len() {
            let b = basis
                .get(n)
                .ok_or_else(|| dim_err("change_basis", format!("missing degree {n}")))?;
            if b.shape() != (self.dim(n), self.dim(n)) {
                return Err(dim_err("change_basis", format!("degree {n}")));
            }
            invs.push(b.inverse()?);
        }
        let diffs = (0..self.len().saturating_sub(1))
            .map(|n| &(&basis[n] * &self.diff(n)) * &invs[n + 1])
            .collect();
        Ok(Self::from_parts(self.field, self.dims.clone(), diffs))
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex{:?}", self.dims)?;
        for (n, d) in self.diffs.iter().enumerate() {
            if !d.is_zero() {
                write!(f, " δ{n}={d:?}")?;
            }
        }
        Ok(())
    }
}

/// Homology of one degree: `Z_n`, `B_n` as bases inside `X_n`, plus a splitting.
#[derive(Clone, Debug)]
pub struct HomologyDegree {
    pub cycles: FieldMatrix,
    pub boundaries: FieldMatrix,
    /// Projection from cycle coordinates to `H_n`.
    pub proj: FieldMatrix,
    /// Section `H_n -> X_n` landing in cycles.
    pub section: FieldMatrix,
}

#[derive(Clone, Debug)]
pub struct HomologyData {
    pub degrees: Vec<HomologyDegree>,
}

impl HomologyData {
    pub fn dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.section.cols())
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut h: Vec<usize> = (0..self.degrees.len()).map(|n| self.dim(n)).collect();
        while h.last() == Some(&0) {
            h.pop();
        }
        h
    }

    /// Homology class of each column of `c`, which must consist of cycles of degree `n`.
    pub fn class_of(&self, n: usize, c: &FieldMatrix) -> FieldMatrix {
        match self.degrees.get(n) {
            None => FieldMatrix::zeros(c.field(), 0, c.cols()),
            Some(d) => {
                let coords = d
                    .cycles
                    .solve(c)
                    .expect("shapes agree")
                    .expect("columns are cycles");
                &d.proj * &coords
            }
        }
    }

    pub fn section(&self, n: usize, field: Field, ambient: usize) -> FieldMatrix {
        match self.degrees.get(n) {
            Some(d) => d.section.clone(),
            None => FieldMatrix::zeros(field, ambient, 0),
        }
    }
}
