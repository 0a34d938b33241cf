use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use super::Field;
use crate::error::{dim_err, Error, Result};

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of reduced row echelon elimination: `transform * m == reduced`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: FieldMatrix,
    pub pivots: Vec<usize>,
    pub transform: FieldMatrix,
}

/// `P = ker[f | -g]`, presented by its two projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub dim: usize,
    pub into_w1: FieldMatrix,
    pub into_w0: FieldMatrix,
}

/// `Q = (W0 ⊕ W1) / im(f, -g)`.
///
/// `section` is a right inverse of `[from_w0 | from_w1]`; maps out of the
/// pushout are induced by precomposing `[h0 | h1]` with it.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub dim: usize,
    pub from_w0: FieldMatrix,
    pub from_w1: FieldMatrix,
    pub section: FieldMatrix,
}

impl Pushout {
    /// The map `Q -> Z` induced by `h0: W0 -> Z`, `h1: W1 -> Z` with `h0 f = h1 g`.
    pub fn induced(&self, h0: &FieldMatrix, h1: &FieldMatrix) -> FieldMatrix {
        &FieldMatrix::hstack(h0, h1) * &self.section
    }
}

impl FieldMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.modulus();
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(field.from_i64(f(i, j)));
            }
        }
        FieldMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Build from integer rows; every row must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(dim_err(
                    "from_rows",
                    format!(
                        "row of length {} in a matrix with {} columns",
                        r.len(),
                        cols
                    ),
                ));
            }
            data.extend(r.iter().map(|&v| field.from_i64(v)));
        }
        Ok(FieldMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        let p = field.modulus();
        let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
        FieldMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Random invertible matrix, as a product of random unit lower and upper triangular factors.
    pub fn random_invertible<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Self {
        let p = field.modulus();
        let mut l = Self::identity(field, n);
        let mut u = Self::identity(field, n);
        for i in 0..n {
            for j in 0..i {
                l.set(i, j, rng.gen_range(0..p));
                u.set(j, i, rng.gen_range(0..p));
            }
            u.set(i, i, rng.gen_range(1..p));
        }
        &l * &u
    }

    pub fn permutation(field: Field, perm: &[usize]) -> Self {
        // column j maps e_j to e_{perm[j]}
        let n = perm.len();
        let mut m = Self::zeros(field, n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, 1);
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v % self.field.modulus();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = self.field.from_i64(c);
        let f = self.field;
        FieldMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f.mul(v, c)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &FieldMatrix) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(dim_err(
                "product",
                format!(
                    "{}x{} times {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &FieldMatrix) -> Self {
        let f = self.field;
        let p = f.modulus() as u64;
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let mut acc = vec![0u64; m];
        let mut data = Vec::with_capacity(n * m);
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            for l in 0..k {
                let a = self.data[i * k + l] as u64;
                if a == 0 {
                    continue;
                }
                let row = &other.data[l * m..(l + 1) * m];
                for (x, &b) in acc.iter_mut().zip(row) {
                    *x = (*x + a * b as u64) % p;
                }
            }
            data.extend(acc.iter().map(|&v| v as u32));
        }
        FieldMatrix {
            field: f,
            rows: n,
            cols: m,
            data,
        }
    }

    fn zip_with(&self, other: &FieldMatrix, op: impl Fn(u32, u32) -> u32) -> Self {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(
            self.shape(),
            other.shape(),
            "shape mismatch in elementwise op"
        );
        FieldMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    fn check_field(&self, other: &FieldMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        Ok(())
    }

    /// `[a | b]`
    pub fn hstack(a: &FieldMatrix, b: &FieldMatrix) -> Self {
        assert_eq!(a.rows, b.rows, "hstack row mismatch");
        assert_eq!(a.field, b.field, "field mismatch");
        let cols = a.cols + b.cols;
        let mut data = Vec::with_capacity(a.rows * cols);
        for i in 0..a.rows {
            data.extend_from_slice(a.row(i));
            data.extend_from_slice(b.row(i));
        }
        FieldMatrix {
            field: a.field,
            rows: a.rows,
            cols,
            data,
        }
    }

    /// `[a ; b]`
    pub fn vstack(a: &FieldMatrix, b: &FieldMatrix) -> Self {
        assert_eq!(a.cols, b.cols, "vstack column mismatch");
        assert_eq!(a.field, b.field, "field mismatch");
        let mut data = a.data.clone();
        data.extend_from_slice(&b.data);
        FieldMatrix {
            field: a.field,
            rows: a.rows + b.rows,
            cols: a.cols,
            data,
        }
    }

    /// Assemble a 2x2 block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &FieldMatrix, b: &FieldMatrix, c: &FieldMatrix, d: &FieldMatrix) -> Self {
        Self::vstack(&Self::hstack(a, b), &Self::hstack(c, d))
    }

    pub fn block_diag(a: &FieldMatrix, b: &FieldMatrix) -> Self {
        let f = a.field;
        Self::blocks(
            a,
            &Self::zeros(f, a.rows, b.cols),
            &Self::zeros(f, b.rows, a.cols),
            b,
        )
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for i in r0..r1 {
            data.extend_from_slice(&self.data[i * self.cols + c0..i * self.cols + c1]);
        }
        FieldMatrix {
            field: self.field,
            rows: r1 - r0,
            cols: c1 - c0,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.field, self.rows, idx.len(), |i, j| {
            self.get(i, idx[j]) as i64
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.field, idx.len(), self.cols, |i, j| {
            self.get(idx[i], j) as i64
        })
    }

    pub fn column(&self, j: usize) -> Self {
        self.select_columns(&[j])
    }

    /// Reduced row echelon form with leftmost pivot column and topmost unused row.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut r = self.clone();
        let mut t = Self::identity(f, self.rows);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&i| r.get(i, col) != 0) else {
                continue;
            };
            r.swap_rows(row, piv);
            t.swap_rows(row, piv);
            let inv = f.inv(r.get(row, col));
            r.scale_row(row, inv);
            t.scale_row(row, inv);
            for i in 0..self.rows {
                if i != row {
                    let c = r.get(i, col);
                    if c != 0 {
                        let c = f.neg(c);
                        r.add_row_multiple(i, row, c);
                        t.add_row_multiple(i, row, c);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            reduced: r,
            pivots,
            transform: t,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, c: u32) {
        let f = self.field;
        for v in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *v = f.mul(*v, c);
        }
    }

    // row_i += c * row_src
    fn add_row_multiple(&mut self, i: usize, src: usize, c: u32) {
        let f = self.field;
        let n = self.cols;
        for j in 0..n {
            let s = self.data[src * n + j];
            if s != 0 {
                let v = &mut self.data[i * n + j];
                *v = f.add(*v, f.mul(c, s));
            }
        }
    }

    /// Pivot columns only; cheaper than a full `rref` when the transform is not needed.
    fn pivot_columns(&self) -> (FieldMatrix, Vec<usize>) {
        let f = self.field;
        let mut r = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&i| r.get(i, col) != 0) else {
                continue;
            };
            r.swap_rows(row, piv);
            let inv = f.inv(r.get(row, col));
            r.scale_row(row, inv);
            for i in 0..self.rows {
                if i != row {
                    let c = r.get(i, col);
                    if c != 0 {
                        r.add_row_multiple(i, row, f.neg(c));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.pivot_columns().1.len()
    }

    /// Columns spanning the kernel, one per free column of the rref.
    pub fn kernel_basis(&self) -> Self {
        let f = self.field;
        let (r, pivots) = self.pivot_columns();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        k
    }

    /// The pivot columns of `self`: a basis of the column space.
    pub fn image_basis(&self) -> Self {
        let (_, pivots) = self.pivot_columns();
        self.select_columns(&pivots)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    /// Some `x` with `self * x == b`, free coordinates set to zero; `None` if unsolvable.
    pub fn solve(&self, b: &FieldMatrix) -> Result<Option<FieldMatrix>> {
        self.check_field(b)?;
        if self.rows != b.rows {
            return Err(dim_err(
                "solve",
                format!("{} rows on the left, {} on the right", self.rows, b.rows),
            ));
        }
        let rr = self.rref();
        let tb = rr.transform.mul_unchecked(b);
        let r = rr.pivots.len();
        for i in r..tb.rows {
            if tb.row(i).iter().any(|&v| v != 0) {
                return Ok(None);
            }
        }
        let mut x = Self::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in rr.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, tb.get(i, j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(dim_err("inverse", format!("{}x{}", self.rows, self.cols)));
        }
        let rr = self.rref();
        if rr.pivots.len() != self.rows {
            return Err(Error::Singular);
        }
        Ok(rr.transform)
    }

    /// `lim(W1 -f-> U <-g- W0)`.
    pub fn pullback(f: &FieldMatrix, g: &FieldMatrix) -> Result<Pullback> {
        f.check_field(g)?;
        if f.rows != g.rows {
            return Err(dim_err(
                "pullback",
                format!("codomains of dimension {} and {}", f.rows, g.rows),
            ));
        }
        let k = Self::hstack(f, &-g).kernel_basis();
        Ok(Pullback {
            dim: k.cols,
            into_w1: k.submatrix(0, f.cols, 0, k.cols),
            into_w0: k.submatrix(f.cols, k.rows, 0, k.cols),
        })
    }

    /// `colim(W0 <-f- V -g-> W1)`.
    pub fn pushout(f: &FieldMatrix, g: &FieldMatrix) -> Result<Pushout> {
        f.check_field(g)?;
        if f.cols != g.cols {
            return Err(dim_err(
                "pushout",
                format!("domains of dimension {} and {}", f.cols, g.cols),
            ));
        }
        let stacked = Self::vstack(f, &-g);
        let (proj, section) = Self::complement_section(&stacked.image_basis(), stacked.rows)?;
        Ok(Pushout {
            dim: proj.rows,
            from_w0: proj.submatrix(0, proj.rows, 0, f.rows),
            from_w1: proj.submatrix(0, proj.rows, f.rows, proj.cols),
            section,
        })
    }

    /// Quotient `V -> V/span(sub)` together with a section spanned by standard basis
    /// vectors at the non-pivot positions of `rref(subᵀ)`.
    pub fn complement_section(
        sub: &FieldMatrix,
        total: usize,
    ) -> Result<(FieldMatrix, FieldMatrix)> {
        if sub.rows != total {
            return Err(dim_err(
                "complement_section",
                format!("{} rows in a space of dimension {}", sub.rows, total),
            ));
        }
        let f = sub.field;
        let (_, pivots) = sub.transpose().pivot_columns();
        if pivots.len() != sub.cols {
            return Err(Error::DependentColumns);
        }
        let rest: Vec<usize> = (0..total).filter(|c| !pivots.contains(c)).collect();
        let section = Self::identity(f, total).select_columns(&rest);
        let basis = Self::hstack(sub, &section);
        let inv = basis.inverse()?;
        let proj = inv.submatrix(sub.cols, total, 0, total);
        Ok((proj, section))
    }
}

impl Add for &FieldMatrix {
    type Output = FieldMatrix;
    fn add(self, o: &FieldMatrix) -> FieldMatrix {
        let f = self.field;
        self.zip_with(o, |a, b| f.add(a, b))
    }
}

impl Sub for &FieldMatrix {
    type Output = FieldMatrix;
    fn sub(self, o: &FieldMatrix) -> FieldMatrix {
        let f = self.field;
        self.zip_with(o, |a, b| f.sub(a, b))
    }
}

impl Neg for &FieldMatrix {
    type Output = FieldMatrix;
    fn neg(self) -> FieldMatrix {
        let f = self.field;
        FieldMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f.neg(v)).collect(),
        }
    }
}

impl Mul for &FieldMatrix {
    type Output = FieldMatrix;
    /// Panics on a shape or field mismatch; use `checked_mul` for untrusted shapes.
    fn mul(self, o: &FieldMatrix) -> FieldMatrix {
        self.checked_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} over {:?} [", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}
