//! Random generators for complexes, maps and diagrams, used by tests and benchmarks.
//!
//! Maps are drawn from the solution space of their defining linear constraints, so every
//! generated morphism is valid by construction.

use rand::Rng;

use crate::chaincx::{ChainComplex, ChainMap};
use crate::decomp::{diagrams_from_spheres, hom_from_sphere, BettiDiagram, IntervalSphere};
use crate::exactlin::{Field, FieldMatrix};
use crate::tamecat::{common_grid, Param, TameComplex, TameMap};
use crate::zigzag::{Direction, DiscreteZigzag, Profile, ZigzagMap};

/// Homogeneous linear system in several matrix unknowns, each constraint a sum of
/// terms `L · U_i · R`.
pub struct LinearSystem {
    field: Field,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    rows: Vec<Vec<u32>>,
}

impl LinearSystem {
    pub fn new(field: Field) -> Self {
        LinearSystem {
            field,
            shapes: Vec::new(),
            offsets: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Register an unknown matrix of the given shape; returns its index.
    pub fn unknown(&mut self, rows: usize, cols: usize) -> usize {
        let off = self.offsets.last().map_or(0, |o| {
            o + {
                let (r, c) = *self.shapes.last().unwrap();
                r * c
            }
        });
        self.shapes.push((rows, cols));
        self.offsets.push(off);
        self.shapes.len() - 1
    }

    fn num_unknowns(&self) -> usize {
        self.shapes
            .last()
            .map_or(0, |(r, c)| self.offsets.last().unwrap() + r * c)
    }

    /// Add the constraint `Σ L_t · U_{i_t} · R_t = 0`, all terms of one common shape.
    pub fn constrain(&mut self, terms: &[(&FieldMatrix, usize, &FieldMatrix)]) {
        let Some(&(l0, _, r0)) = terms.first() else {
            return;
        };
        let (m, k) = (l0.rows(), r0.cols());
        if m * k == 0 {
            return;
        }
        let n = self.num_unknowns();
        let f = self.field;
        let mut block = vec![vec![0u32; n]; m * k];
        for &(l, u, r) in terms {
            let (ur, uc) = self.shapes[u];
            assert_eq!((l.rows(), l.cols(), r.rows(), r.cols()), (m, ur, uc, k));
            let off = self.offsets[u];
            for a in 0..ur {
                for b in 0..uc {
                    let col = off + a + b * ur;
                    for p in 0..m {
                        let lv = l.get(p, a);
                        if lv == 0 {
                            continue;
                        }
                        for q in 0..k {
                            let rv = r.get(b, q);
                            if rv != 0 {
                                let e = &mut block[p + q * m][col];
                                *e = f.add(*e, f.mul(lv, rv));
                            }
                        }
                    }
                }
            }
        }
        self.rows.extend(block);
    }

    /// A random element of the solution space, returned as its matrix unknowns.
    ///
    /// Only a random subset of the kernel basis is combined, so low-rank solutions are common.
    pub fn random_solution<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<FieldMatrix> {
        let f = self.field;
        let n = self.num_unknowns();
        let sys = FieldMatrix::from_fn(f, self.rows.len(), n, |i, j| self.rows[i][j] as i64);
        let ker = sys.kernel_basis();
        let keep = rng.gen_range(0.3..=1.0);
        let coeffs = FieldMatrix::from_fn(f, ker.cols(), 1, |_, _| {
            if rng.gen_bool(keep) {
                rng.gen_range(0..f.modulus()) as i64
            } else {
                0
            }
        });
        let v = &ker * &coeffs;
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &off)| {
                FieldMatrix::from_fn(f, r, c, |a, b| v.get(off + a + b * r, 0) as i64)
            })
            .collect()
    }
}

/// Random complex with the given per-degree dimensions.
pub fn random_complex_with_dims<R: Rng + ?Sized>(
    field: Field,
    dims: &[usize],
    rng: &mut R,
) -> ChainComplex {
    let mut diffs: Vec<FieldMatrix> = Vec::new();
    for n in 0..dims.len().saturating_sub(1) {
        // columns of δ_n drawn from ker δ_{n-1}, with random rank
        let ker = if n == 0 {
            FieldMatrix::identity(field, dims[0])
        } else {
            diffs[n - 1].kernel_basis()
        };
        let r = rng.gen_range(0..=ker.cols().min(dims[n + 1]));
        let a = FieldMatrix::random(field, ker.cols(), r, rng);
        let b = FieldMatrix::random(field, r, dims[n + 1], rng);
        diffs.push(&(&ker * &a) * &b);
    }
    ChainComplex::new(field, dims.to_vec(), diffs).expect("generated complex is valid")
}

/// Random complex with at most `max_degree + 1` degrees and total dimension at most `max_total`.
pub fn random_complex<R: Rng + ?Sized>(
    field: Field,
    max_degree: usize,
    max_total: usize,
    rng: &mut R,
) -> ChainComplex {
    let len = rng.gen_range(0..=max_degree + 1);
    let mut dims = vec![0; len];
    let mut left = rng.gen_range(0..=max_total);
    for d in dims.iter_mut() {
        let v = rng.gen_range(0..=left.min(max_total / len.max(1) + 1));
        *d = v;
        left -= v;
    }
    random_complex_with_dims(field, &dims, rng)
}

/// Random chain map `x -> y`, uniform over a random coordinate subspace of all chain maps.
pub fn random_chain_map<R: Rng + ?Sized>(
    x: &ChainComplex,
    y: &ChainComplex,
    rng: &mut R,
) -> ChainMap {
    let f = x.field();
    let len = x.len().max(y.len());
    let mut sys = LinearSystem::new(f);
    let us: Vec<usize> = (0..len).map(|n| sys.unknown(y.dim(n), x.dim(n))).collect();
    for n in 0..len.saturating_sub(1) {
        let iy = FieldMatrix::identity(f, y.dim(n));
        let ix = FieldMatrix::identity(f, x.dim(n + 1));
        let dx = x.diff(n);
        let dy = -&*y.diff(n);
        sys.constrain(&[(&iy, us[n], &dx), (&dy, us[n + 1], &ix)]);
    }
    let comps = sys.random_solution(rng);
    ChainMap::new(x.clone(), y.clone(), comps).expect("generated map is a chain map")
}

/// Grid `0 < t_1 < … < t_{k-1}` with random steps in `{1/2, 1, 3/2, 2}`.
pub fn random_grid<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<Param> {
    let mut halves = 0i64;
    let mut g = vec![Param::ZERO];
    for _ in 1..k {
        halves += rng.gen_range(1..=4);
        g.push(Param::new(halves, 2).expect("positive"));
    }
    g
}

/// Random per-degree dimensions with `len` degrees, each at most `max_dim`.
pub fn random_dims<R: Rng + ?Sized>(len: usize, max_dim: usize, rng: &mut R) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..=max_dim)).collect()
}

/// Random tame complex on `k` grid points with arbitrary (not necessarily injective) transitions.
pub fn random_tame_complex<R: Rng + ?Sized>(
    field: Field,
    k: usize,
    degrees: usize,
    max_dim: usize,
    rng: &mut R,
) -> TameComplex {
    let grid = random_grid(k, rng);
    let values: Vec<ChainComplex> = (0..k)
        .map(|_| {
            let dims = random_dims(degrees, max_dim, rng);
            random_complex_with_dims(field, &dims, rng)
        })
        .collect();
    let transitions = (1..k)
        .map(|a| random_chain_map(&values[a - 1], &values[a], rng))
        .collect();
    TameComplex::new(grid, values, transitions).expect("generated tame complex is valid")
}

/// Random cofibrant tame complex: each grid point adds random cells attached to the previous value.
pub fn random_cofibrant_tame<R: Rng + ?Sized>(
    field: Field,
    k: usize,
    degrees: usize,
    max_new: usize,
    rng: &mut R,
) -> TameComplex {
    let grid = random_grid(k, rng);
    let mut values = vec![random_complex_with_dims(
        field,
        &random_dims(degrees, max_new, rng),
        rng,
    )];
    let mut transitions = Vec::new();
    for a in 1..k {
        let old = values[a - 1].clone();
        let new_cells = random_complex_with_dims(field, &random_dims(degrees, max_new, rng), rng);
        let x = attach_cells(&old, &new_cells, rng);
        let (incl, _) = crate::chaincx::sum_inclusions(&old, &new_cells);
        let incl = ChainMap::new(old, x.clone(), incl.components().to_vec())
            .expect("inclusion of old cells");
        values.push(x);
        transitions.push(incl);
    }
    TameComplex::new(grid, values, transitions).expect("generated tame complex is valid")
}

/// `X ∪ E` with differential `[[δ_X, C], [0, δ_E]]` for a random attaching map `C`.
fn attach_cells<R: Rng + ?Sized>(x: &ChainComplex, e: &ChainComplex, rng: &mut R) -> ChainComplex {
    let f = x.field();
    let len = x.len().max(e.len());
    let mut sys = LinearSystem::new(f);
    // C_n: E_{n+1} -> X_n
    let cs: Vec<usize> = (0..len.saturating_sub(1))
        .map(|n| sys.unknown(x.dim(n), e.dim(n + 1)))
        .collect();
    for n in 0..len.saturating_sub(2) {
        // δ_n C_{n+1} + C_n δ^E_{n+1} = 0
        let ix = FieldMatrix::identity(f, x.dim(n));
        let ie = FieldMatrix::identity(f, e.dim(n + 2));
        sys.constrain(&[(&x.diff(n), cs[n + 1], &ie), (&ix, cs[n], &e.diff(n + 1))]);
    }
    let c = sys.random_solution(rng);
    let dims: Vec<usize> = (0..len).map(|n| x.dim(n) + e.dim(n)).collect();
    let diffs = (0..len.saturating_sub(1))
        .map(|n| {
            FieldMatrix::blocks(
                &x.diff(n),
                &c[n],
                &FieldMatrix::zeros(f, e.dim(n), x.dim(n + 1)),
                &e.diff(n),
            )
        })
        .collect();
    ChainComplex::new(f, dims, diffs).expect("attached complex is valid")
}

/// Random natural transformation `x -> y` (both refined to a common grid first).
pub fn random_tame_map<R: Rng + ?Sized>(x: &TameComplex, y: &TameComplex, rng: &mut R) -> TameMap {
    let (x, y) = common_grid(x, y);
    let f = x.field();
    let k = x.num_points();
    let len = x.num_degrees().max(y.num_degrees());
    let mut sys = LinearSystem::new(f);
    let us: Vec<Vec<usize>> = (0..k)
        .map(|a| {
            (0..len)
                .map(|n| sys.unknown(y.value(a).dim(n), x.value(a).dim(n)))
                .collect()
        })
        .collect();
    for a in 0..k {
        let (xa, ya) = (x.value(a), y.value(a));
        for n in 0..len.saturating_sub(1) {
            let iy = FieldMatrix::identity(f, ya.dim(n));
            let ix = FieldMatrix::identity(f, xa.dim(n + 1));
            let dy = -&*ya.diff(n);
            sys.constrain(&[(&iy, us[a][n], &xa.diff(n)), (&dy, us[a][n + 1], &ix)]);
        }
        if a > 0 {
            for n in 0..len {
                let iy = FieldMatrix::identity(f, ya.dim(n));
                let ix = FieldMatrix::identity(f, x.value(a - 1).dim(n));
                let ty = -&*y.step(a).component(n);
                sys.constrain(&[
                    (&iy, us[a][n], &x.step(a).component(n)),
                    (&ty, us[a - 1][n], &ix),
                ]);
            }
        }
    }
    let sol = sys.random_solution(rng);
    let comps = (0..k)
        .map(|a| {
            let c = us[a].iter().map(|&u| sol[u].clone()).collect();
            ChainMap::new(x.value(a).clone(), y.value(a).clone(), c).expect("generated component")
        })
        .collect();
    TameMap::new(x, y, comps).expect("generated map is natural")
}

/// Random Betti diagrams: at most `max_points` points in degrees `0..=max_degree`, births on a
/// half-integer grid, a mix of diagonal, finite and infinite deaths.
pub fn random_betti<R: Rng + ?Sized>(
    max_points: usize,
    max_degree: usize,
    rng: &mut R,
) -> Vec<BettiDiagram> {
    let count = rng.gen_range(0..=max_points);
    let spheres = (0..count).map(|_| {
        let n = rng.gen_range(0..=max_degree);
        let s = Param::new(rng.gen_range(0..=8), 2).expect("positive denominator");
        let e = match rng.gen_range(0..3) {
            0 => s,
            1 => Param::Infinity,
            _ => Param::new(rng.gen_range(1..=6), 2)
                .map(|d| add(s, d))
                .expect("positive denominator"),
        };
        IntervalSphere::new(n, s, e).expect("s <= e by construction")
    });
    diagrams_from_spheres(spheres)
}

fn add(a: Param, b: Param) -> Param {
    match (a, b) {
        (Param::Finite(x), Param::Finite(y)) => Param::Finite(x + y),
        _ => Param::Infinity,
    }
}

/// Transport `x` along random invertible matrices at every grid point and degree.
///
/// Returns the new presentation and the isomorphism `x -> x'`.
pub fn random_basis_change<R: Rng + ?Sized>(
    x: &TameComplex,
    rng: &mut R,
) -> (TameComplex, TameMap) {
    let f = x.field();
    let bases: Vec<Vec<FieldMatrix>> = x
        .values()
        .iter()
        .map(|v| {
            (0..v.len())
                .map(|n| FieldMatrix::random_invertible(f, v.dim(n), rng))
                .collect()
        })
        .collect();
    transport(x, &bases)
}

fn transport(x: &TameComplex, bases: &[Vec<FieldMatrix>]) -> (TameComplex, TameMap) {
    let values: Vec<ChainComplex> = x
        .values()
        .iter()
        .zip(bases)
        .map(|(v, b)| v.change_basis(b).expect("invertible bases"))
        .collect();
    let isos: Vec<ChainMap> = (0..x.num_points())
        .map(|a| {
            ChainMap::new(x.value(a).clone(), values[a].clone(), bases[a].clone())
                .expect("basis change")
        })
        .collect();
    let transitions = (1..x.num_points())
        .map(|a| {
            let back = crate::chaincx::invert(&isos[a - 1]).expect("isomorphism");
            isos[a]
                .compose(x.step(a))
                .and_then(|m| m.compose(&back))
                .expect("composable")
        })
        .collect();
    let y = TameComplex::new(x.grid().to_vec(), values, transitions).expect("transported complex");
    let iso = TameMap::new(x.clone(), y.clone(), isos).expect("transport is natural");
    (y, iso)
}

/// Random natural automorphism of `⊕ realize(spheres[i])` (all realized on `grid`):
/// identity plus random maps from summand `i` to summand `j` for `i < j`.
pub fn random_sum_automorphism<R: Rng + ?Sized>(
    field: Field,
    spheres: &[IntervalSphere],
    grid: &[Param],
    rng: &mut R,
) -> TameMap {
    let parts: Vec<TameComplex> = spheres
        .iter()
        .map(|s| {
            s.realize_on(field, grid)
                .expect("grid contains all endpoints")
        })
        .collect();
    let mut sum = TameComplex::zero(field, grid.to_vec());
    for p in &parts {
        sum = sum.direct_sum(p);
    }
    let len = sum.num_degrees();
    let offsets: Vec<Vec<Vec<usize>>> = (0..grid.len())
        .map(|a| {
            (0..len)
                .map(|n| {
                    let mut acc = 0;
                    let mut o = Vec::new();
                    for p in &parts {
                        o.push(acc);
                        acc += p.value(a).dim(n);
                    }
                    o
                })
                .collect()
        })
        .collect();
    let mut comps: Vec<Vec<FieldMatrix>> = (0..grid.len())
        .map(|a| {
            (0..len)
                .map(|n| FieldMatrix::identity(field, sum.value(a).dim(n)))
                .collect()
        })
        .collect();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if !rng.gen_bool(0.5) {
                continue;
            }
            let basis = hom_from_sphere(&spheres[i], &parts[j]).expect("grid contains endpoints");
            for h in basis {
                let c = rng.gen_range(0..field.modulus()) as i64;
                if c == 0 {
                    continue;
                }
                for (a, comp) in comps.iter_mut().enumerate() {
                    for (n, m) in comp.iter_mut().enumerate() {
                        let block = h.component(a).component(n).scale(c);
                        for r in 0..block.rows() {
                            for col in 0..block.cols() {
                                let (ro, co) = (offsets[a][n][j] + r, offsets[a][n][i] + col);
                                let v = field.add(m.get(ro, co), block.get(r, col));
                                m.set(ro, co, v);
                            }
                        }
                    }
                }
            }
        }
    }
    let comps = comps
        .into_iter()
        .enumerate()
        .map(|(a, c)| {
            ChainMap::new(sum.value(a).clone(), sum.value(a).clone(), c)
                .expect("automorphism component")
        })
        .collect();
    TameMap::new(sum.clone(), sum, comps).expect("sum of natural maps is natural")
}

/// Present `⊕ realize(spheres)` through a random natural automorphism followed by a random
/// gridpoint-wise basis change, so no summand sits in a coordinate block.
pub fn scrambled_sum<R: Rng + ?Sized>(
    field: Field,
    spheres: &[IntervalSphere],
    rng: &mut R,
) -> TameComplex {
    let mut grid = vec![Param::ZERO];
    for s in spheres {
        grid = crate::tamecat::merge_grids(&grid, &s.grid());
    }
    let phi = random_sum_automorphism(field, spheres, &grid, rng);
    let x = phi.source();
    let bases: Vec<Vec<FieldMatrix>> = (0..x.num_points())
        .map(|a| {
            let v = x.value(a);
            (0..v.len())
                .map(|n| {
                    let r = FieldMatrix::random_invertible(field, v.dim(n), rng);
                    &r * &*phi.component(a).component(n)
                })
                .collect()
        })
        .collect();
    transport(x, &bases).0
}

/// Random profile of length `1..=max_k`.
pub fn random_profile<R: Rng + ?Sized>(max_k: usize, rng: &mut R) -> Profile {
    let k = rng.gen_range(1..=max_k.max(1));
    let dirs = (0..k)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Direction::R
            } else {
                Direction::L
            }
        })
        .collect();
    Profile::new(dirs).expect("k >= 1")
}

/// Random zigzag of the given profile with random complexes and chain maps.
pub fn random_zigzag<R: Rng + ?Sized>(
    field: Field,
    profile: &Profile,
    max_degree: usize,
    max_total: usize,
    rng: &mut R,
) -> DiscreteZigzag {
    let spaces: Vec<ChainComplex> = (0..=profile.k())
        .map(|_| random_complex(field, max_degree, max_total, rng))
        .collect();
    let maps = (1..=profile.k())
        .map(|a| match profile.dir(a) {
            Direction::R => random_chain_map(&spaces[a - 1], &spaces[a], rng),
            Direction::L => random_chain_map(&spaces[a], &spaces[a - 1], rng),
        })
        .collect();
    DiscreteZigzag::new(profile.clone(), spaces, maps).expect("generated zigzag is valid")
}

/// Random natural transformation between zigzags of one profile.
pub fn random_zigzag_map<R: Rng + ?Sized>(
    x: &DiscreteZigzag,
    y: &DiscreteZigzag,
    rng: &mut R,
) -> ZigzagMap {
    let f = x.space(0).field();
    let k = x.k();
    let len = (0..=k)
        .map(|a| x.space(a).len().max(y.space(a).len()))
        .max()
        .unwrap_or(0);
    let mut sys = LinearSystem::new(f);
    let us: Vec<Vec<usize>> = (0..=k)
        .map(|a| {
            (0..len)
                .map(|n| sys.unknown(y.space(a).dim(n), x.space(a).dim(n)))
                .collect()
        })
        .collect();
    for a in 0..=k {
        let (xa, ya) = (x.space(a), y.space(a));
        for n in 0..len.saturating_sub(1) {
            let iy = FieldMatrix::identity(f, ya.dim(n));
            let ix = FieldMatrix::identity(f, xa.dim(n + 1));
            let dy = -&*ya.diff(n);
            sys.constrain(&[(&iy, us[a][n], &xa.diff(n)), (&dy, us[a][n + 1], &ix)]);
        }
    }
    for a in 1..=k {
        // g_to ∘ x_map = y_map ∘ g_from
        let (from, to) = match x.profile().dir(a) {
            Direction::R => (a - 1, a),
            Direction::L => (a, a - 1),
        };
        for n in 0..len {
            let iy = FieldMatrix::identity(f, y.space(to).dim(n));
            let ix = FieldMatrix::identity(f, x.space(from).dim(n));
            let ym = -&*y.map(a).component(n);
            sys.constrain(&[
                (&iy, us[to][n], &x.map(a).component(n)),
                (&ym, us[from][n], &ix),
            ]);
        }
    }
    let sol = sys.random_solution(rng);
    let comps = (0..=k)
        .map(|a| {
            let c = us[a].iter().map(|&u| sol[u].clone()).collect();
            ChainMap::new(x.space(a).clone(), y.space(a).clone(), c).expect("generated component")
        })
        .collect();
    ZigzagMap::new(x.clone(), y.clone(), comps).expect("generated map is natural")
}
