//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every criterion is a list of exact sub-checks plus a runtime bound. A criterion whose
//! failure has been analysed lists the sub-checks expected to fail in `EXPECTED_FAILURES`;
//! the run exits nonzero when any sub-check deviates from its expectation in either
//! direction.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{barcode_of, fixture, module_barcode};
use tamecx::chaincx::{
    cofiber, cone, invert, standard_decomposition, suspend, ChainComplex, ChainMap,
};
use tamecx::decomp::{
    betti, decompose_cofibrant, is_minimal_cover, normalize, rebuild_from_betti, spheres_of,
    BettiDiagram, IntervalSphere,
};
use tamecx::morinv::{cofiber_of_covers, ladder_betti, morphism_betti, Method};
use tamecx::random::{
    random_basis_change, random_betti, random_chain_map, random_cofibrant_tame, random_complex,
    random_profile, random_tame_complex, random_tame_map, random_zigzag, random_zigzag_map,
    scrambled_sum,
};
use tamecx::tamecat::{merge_grids, minimal_factorisation_tame, Param, TameComplex, TameMap};
use tamecx::zigzag::{
    straighten, straighten_map, unstraighten_map, zigzag_betti, Direction, DiscreteZigzag, Profile,
};
use tamecx::{Field, FieldMatrix};

/// `(criterion, sub-check)` pairs known to fail; see the notes printed with them.
const EXPECTED_FAILURES: &[(u32, &str, &str)] = &[
    (
        1,
        "stated diagrams",
        "H0 of both incarnations is K at 0 and 0 afterwards, so only one degree-0 bar \
         (0,1) exists; the second degree-0 point is the diagonal (1,1) of the cone C(1_K2)",
    ),
    (
        7,
        "no diagonal in degree 1: cofiber-covers",
        "the cofiber of a lift between covers is Cg' = C(I0[1,3]) = I0[1,1] + I1[3,3] for \
         the Kan-extended D1 -> 0, so this method can produce (s,s) points in degree 1",
    ),
    (
        7,
        "pair agrees: cofiber-covers",
        "same cause: the Kan-extended D1 -> 0 gives an extra I1[3,3]",
    ),
];

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    checks: Vec<(String, bool, String)>,
}

impl Criterion {
    fn new(id: u32, title: &'static str, limit_secs: u64) -> Self {
        Criterion {
            id,
            title,
            limit: Duration::from_secs(limit_secs),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push((name.into(), ok, detail.into()));
    }

    fn expected_to_fail(&self, name: &str) -> Option<&'static str> {
        EXPECTED_FAILURES
            .iter()
            .find(|(id, n, _)| *id == self.id && *n == name)
            .map(|(_, _, why)| *why)
    }

    /// Print the result; returns whether every sub-check met its expectation.
    fn report(mut self, elapsed: Duration) -> bool {
        self.check(
            format!("runtime < {} s", self.limit.as_secs()),
            elapsed < self.limit,
            format!("{:.2} s", elapsed.as_secs_f64()),
        );
        let pass = self.checks.iter().all(|c| c.1);
        println!(
            "{} {} {}",
            if pass { "PASS" } else { "FAIL" },
            self.id,
            self.title
        );
        let mut as_expected = true;
        for (name, ok, detail) in &self.checks {
            let known = self.expected_to_fail(name);
            let mark = match (ok, known) {
                (true, None) => "ok",
                (false, Some(_)) => "known failure",
                (true, Some(_)) => "UNEXPECTED PASS",
                (false, None) => "UNEXPECTED FAILURE",
            };
            as_expected &= *ok == known.is_none();
            println!("    - {name}: {mark} {detail}");
            if let (false, Some(why)) = (ok, known) {
                println!("      ({why})");
            }
        }
        as_expected
    }
}

fn run(c: Criterion, body: impl FnOnce(&mut Criterion)) -> bool {
    let mut c = c;
    let t = Instant::now();
    body(&mut c);
    let elapsed = t.elapsed();
    c.report(elapsed)
}

fn p(n: i64) -> Param {
    Param::int(n)
}

fn vs(k: Field, d: usize) -> ChainComplex {
    ChainComplex::graded(k, vec![d])
}

fn linear(x: &ChainComplex, y: &ChainComplex, rows: &[Vec<i64>]) -> ChainMap {
    let m = FieldMatrix::from_rows(x.field(), x.dim(0), rows).unwrap();
    ChainMap::new(x.clone(), y.clone(), vec![m]).unwrap()
}

fn closing_zigzag(last: [i64; 2]) -> DiscreteZigzag {
    let k = Field::F2;
    let (k1, k2) = (vs(k, 1), vs(k, 2));
    DiscreteZigzag::new(
        "rlr".parse().unwrap(),
        vec![k1.clone(), k2.clone(), k2.clone(), k1.clone()],
        vec![
            linear(&k1, &k2, &[vec![1], vec![0]]),
            ChainMap::identity(&k2),
            linear(&k2, &k1, &[last.to_vec()]),
        ],
    )
    .unwrap()
}

fn criterion_1() -> bool {
    run(
        Criterion::new(1, "closing zigzag pair over 0<1<2<3", 1),
        |c| {
            let grid: Vec<Param> = (0..4).map(p).collect();
            let bx = zigzag_betti(&closing_zigzag([1, 0]), &grid).unwrap();
            let by = zigzag_betti(&closing_zigzag([0, 1]), &grid).unwrap();
            c.check("X and Y agree", bx == by, "");
            let mut b0 = BettiDiagram::new();
            b0.insert(p(0), p(1), 2);
            let stated = vec![
                b0,
                BettiDiagram::from_pairs([(p(2), p(3)), (p(2), Param::Infinity)]),
            ];
            c.check(
                "stated diagrams",
                bx == stated && by == stated,
                format!("got {bx:?}, stated {stated:?}"),
            );
        },
    )
}

fn criterion_2() -> bool {
    run(
        Criterion::new(2, "vector spaces against column reduction", 30),
        |c| {
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            let (mut agree, mut higher, mut diag) = (0, 0, 0);
            for _ in 0..200 {
                let k = rng.gen_range(1..=6);
                let x = random_tame_complex(Field::F2, k, 1, 5, &mut rng);
                let b = betti(&x).unwrap();
                agree += usize::from(barcode_of(&b) == module_barcode(&x));
                higher += usize::from(b.iter().skip(1).all(BettiDiagram::is_empty));
                diag += usize::from(b.iter().all(|d| !d.has_diagonal()));
            }
            c.check(
                "beta_0 equals the oracle",
                agree == 200,
                format!("{agree}/200"),
            );
            c.check(
                "beta_n = 0 for n > 0",
                higher == 200,
                format!("{higher}/200"),
            );
            c.check("empty diagonal", diag == 200, format!("{diag}/200"));
        },
    )
}

fn criterion_3() -> bool {
    run(
        Criterion::new(3, "structure theorem round trip", 120),
        |c| {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let (mut plain, mut scrambled) = (0, 0);
            for i in 0..200 {
                let field = if i % 2 == 0 {
                    Field::F2
                } else {
                    Field::new(3).unwrap()
                };
                let b = normalize(random_betti(10, 3, &mut rng));
                let x = rebuild_from_betti(field, &b);
                plain += usize::from(normalize(decompose_cofibrant(&x).unwrap()) == b);
                let y = scrambled_sum(field, &spheres_of(&b), &mut rng);
                scrambled += usize::from(normalize(decompose_cofibrant(&y).unwrap()) == b);
            }
            c.check(
                "decompose(rebuild(B)) = B",
                plain == 200,
                format!("{plain}/200"),
            );
            c.check(
                "scrambled rebuild decomposes to B",
                scrambled == 200,
                format!("{scrambled}/200"),
            );
        },
    )
}

fn criterion_4() -> bool {
    run(Criterion::new(4, "chain-level identities", 10), |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let fields = [Field::F2, Field::new(3).unwrap(), Field::new(5).unwrap()];
        let (mut cone_ok, mut susp_ok, mut iso_ok, mut exact_ok) = (0, 0, 0, 0);
        for i in 0..500 {
            let k = fields[i % 3];
            let x = random_complex(k, 4, 20, &mut rng);
            cone_ok += usize::from(cone(&x).cofiber.is_acyclic());
            let hs = suspend(&x).homology_dims();
            let hx = x.homology_dims();
            let top = hs.len().max(hx.len() + 1);
            susp_ok += usize::from((0..top).all(|n| {
                let prev = if n == 0 {
                    0
                } else {
                    hx.get(n - 1).copied().unwrap_or(0)
                };
                hs.get(n).copied().unwrap_or(0) == prev
            }));
            let sd = standard_decomposition(&x);
            iso_ok += usize::from((0..x.len()).all(|n| {
                let m = sd.iso.component(n);
                m.rows() == x.dim(n) && m.cols() == x.dim(n) && m.rank() == x.dim(n)
            }));
            let y = random_complex(k, 4, 20, &mut rng);
            let f = random_chain_map(&x, &y, &mut rng);
            let cf = cofiber(&f);
            exact_ok += usize::from((0..cf.cofiber.len()).all(|n| {
                let i = cf.inclusion.component(n);
                let pr = cf.projection.component(n);
                (&*pr * &*i).is_zero() && i.rank() + pr.rank() == cf.cofiber.dim(n)
            }));
        }
        c.check("H(CX) = 0", cone_ok == 500, format!("{cone_ok}/500"));
        c.check(
            "dim H_n(SX) = dim H_(n-1)(X)",
            susp_ok == 500,
            format!("{susp_ok}/500"),
        );
        c.check("[phi|s] invertible", iso_ok == 500, format!("{iso_ok}/500"));
        c.check("ker p = im i", exact_ok == 500, format!("{exact_ok}/500"));
    })
}

fn inverse(g: &TameMap) -> TameMap {
    let comps = g.components().iter().map(|c| invert(c).unwrap()).collect();
    TameMap::new(g.target().clone(), g.source().clone(), comps).unwrap()
}

/// Midpoints between grid points and one point past the end.
fn finer(grid: &[Param], rng: &mut ChaCha8Rng) -> Vec<Param> {
    let mut extra = Vec::new();
    for w in grid.windows(2) {
        if let (Param::Finite(a), Param::Finite(b)) = (w[0], w[1]) {
            if rng.gen_bool(0.5) {
                extra.push(Param::Finite((a + b) / 2));
            }
        }
    }
    if let Some(Param::Finite(last)) = grid.last() {
        extra.push(Param::Finite(last + 1));
    }
    merge_grids(grid, &extra)
}

/// Interval spheres of the middle object: its own decomposition when it is cofibrant,
/// otherwise that of its minimal cover.
fn middle_spheres(m: &TameComplex) -> Vec<BettiDiagram> {
    if m.is_cofibrant() {
        normalize(decompose_cofibrant(m).unwrap())
    } else {
        normalize(betti(m).unwrap())
    }
}

fn criterion_5() -> bool {
    run(
        Criterion::new(5, "minimal factorisation contract", 60),
        |c| {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            let (mut cof, mut fib, mut fact, mut refine_ok, mut basis_ok) = (0, 0, 0, 0, 0);
            for i in 0..200 {
                let k = if i % 2 == 0 {
                    Field::F2
                } else {
                    Field::new(3).unwrap()
                };
                let x = if i % 4 < 2 {
                    random_cofibrant_tame(k, rng.gen_range(1..=4), 2, 2, &mut rng)
                } else {
                    random_tame_complex(k, rng.gen_range(1..=4), 2, 2, &mut rng)
                };
                let y = random_tame_complex(k, rng.gen_range(1..=4), 2, 2, &mut rng);
                let g = random_tame_map(&x, &y, &mut rng);
                let m = minimal_factorisation_tame(&g).unwrap();
                cof += usize::from(m.alpha.is_cofibration());
                fib += usize::from(m.beta.is_fibration() && m.beta.is_weak_equivalence());
                fact += usize::from(m.beta.compose(&m.alpha).unwrap() == g);
                let d = middle_spheres(&m.middle);

                let gf = g.refine(&finer(g.grid(), &mut rng)).unwrap();
                let mf = minimal_factorisation_tame(&gf).unwrap();
                refine_ok += usize::from(middle_spheres(&mf.middle) == d);

                let (_, ix) = random_basis_change(g.source(), &mut rng);
                let (_, iy) = random_basis_change(g.target(), &mut rng);
                let gb = iy.compose(&g).unwrap().compose(&inverse(&ix)).unwrap();
                let mb = minimal_factorisation_tame(&gb).unwrap();
                basis_ok += usize::from(middle_spheres(&mb.middle) == d);
            }
            c.check("alpha is a cofibration", cof == 200, format!("{cof}/200"));
            c.check(
                "beta is an acyclic fibration",
                fib == 200,
                format!("{fib}/200"),
            );
            c.check("beta alpha = g", fact == 200, format!("{fact}/200"));
            c.check(
                "middle invariant under refinement",
                refine_ok == 200,
                format!("{refine_ok}/200"),
            );
            c.check(
                "middle invariant under basis change",
                basis_ok == 200,
                format!("{basis_ok}/200"),
            );
        },
    )
}

fn criterion_6() -> bool {
    run(
        Criterion::new(6, "morphism invariants agree off the diagonal", 60),
        |c| {
            let mut rng = ChaCha8Rng::seed_from_u64(6);
            let (mut agree, mut minimal, mut cofibrant) = (0, 0, 0);
            for i in 0..100 {
                let k = if i % 3 == 2 {
                    Field::new(3).unwrap()
                } else {
                    Field::F2
                };
                let x = if i % 2 == 0 {
                    random_cofibrant_tame(k, rng.gen_range(1..=3), 2, 2, &mut rng)
                } else {
                    random_tame_complex(k, rng.gen_range(1..=3), 2, 2, &mut rng)
                };
                let y = random_tame_complex(k, rng.gen_range(1..=3), 2, 2, &mut rng);
                let g = random_tame_map(&x, &y, &mut rng);
                let three: Vec<_> = [Method::Minfact, Method::CoverCofiber, Method::CofiberCovers]
                    .iter()
                    .map(|&m| morphism_betti(&g, m).unwrap().off_diagonal())
                    .collect();
                agree += usize::from(three[1] == three[0] && three[2] == three[0]);
                if g.source().is_cofibrant() {
                    cofibrant += 1;
                    let comparison = cofiber_of_covers(&g).unwrap().comparison().unwrap();
                    minimal += usize::from(is_minimal_cover(&comparison));
                }
            }
            c.check(
                "minfact = cover-cofiber = cofiber-covers for s < e",
                agree == 100,
                format!("{agree}/100"),
            );
            c.check(
                "C(c_X, c_Y) is a minimal cover for cofibrant sources",
                minimal == cofibrant && cofibrant > 0,
                format!("{minimal}/{cofibrant}"),
            );
        },
    )
}

fn criterion_7() -> bool {
    run(Criterion::new(7, "commutative ladders", 30), |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut low = [0usize; 4];
        let mut no_diag = [0usize; 4];
        for _ in 0..100 {
            let z = random_tame_complex(Field::F2, rng.gen_range(1..=4), 2, 2, &mut rng);
            for m in ladder_betti(&z).unwrap() {
                let i = Method::ALL.iter().position(|&x| x == m.method).unwrap();
                low[i] += usize::from(m.diagrams.len() <= 2);
                no_diag[i] += usize::from(m.diagrams.iter().skip(1).all(|d| !d.has_diagonal()));
            }
        }
        for (i, m) in Method::ALL.iter().enumerate() {
            c.check(
                format!("beta_n = 0 for n > 1: {m}"),
                low[i] == 100,
                format!("{}/100", low[i]),
            );
            c.check(
                format!("no diagonal in degree 1: {m}"),
                no_diag[i] == 100,
                format!("{}/100", no_diag[i]),
            );
        }

        let k = Field::F2;
        let (mut same_betti, mut same) = (true, [true; 4]);
        for (s, e) in [
            (p(1), p(3)),
            (p(0), p(1)),
            (Param::new(1, 2).unwrap(), p(2)),
        ] {
            let diag = IntervalSphere::new(0, s, s).unwrap().realize(k);
            let d1 = ChainComplex::disk(k, 0);
            let z0 = ChainComplex::zero(k);
            let kan = TameComplex::kan_extension(
                vec![d1.clone(), z0.clone()],
                vec![ChainMap::zero(&d1, &z0)],
                vec![s, e],
            )
            .unwrap();
            same_betti &= betti(&diag).unwrap() == betti(&kan).unwrap();
            let (a, b) = (ladder_betti(&diag).unwrap(), ladder_betti(&kan).unwrap());
            for (i, (ma, mb)) in a.iter().zip(&b).enumerate() {
                same[i] &= ma.diagrams == mb.diagrams;
            }
        }
        c.check("pair has equal Betti diagrams", same_betti, "");
        for (i, m) in Method::ALL.iter().enumerate() {
            c.check(format!("pair agrees: {m}"), same[i], "");
        }
    })
}

fn expected_dims(z: &DiscreteZigzag, a: usize) -> Vec<usize> {
    let c = z.profile();
    let w = (1..=a).filter(|&b| c.dir(b) == Direction::L).count();
    let left = a < c.k() && c.dir(a + 1) == Direction::L;
    let top = w + z
        .space(a)
        .len()
        .max(if left { z.space(a + 1).len() + 1 } else { 0 });
    let mut d: Vec<usize> = (0..top)
        .map(|n| {
            let own = n.checked_sub(w).map_or(0, |m| z.space(a).dim(m));
            let cone = match n.checked_sub(w + 1) {
                Some(m) if left => z.space(a + 1).dim(m),
                _ => 0,
            };
            own + cone
        })
        .collect();
    while d.last() == Some(&0) {
        d.pop();
    }
    d
}

fn criterion_8() -> bool {
    run(Criterion::new(8, "zigzag straightening", 10), |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let (mut round, mut dims) = (0, 0);
        let mut mixed = 0;
        for i in 0..100 {
            let k = if i % 2 == 0 {
                Field::F2
            } else {
                Field::new(3).unwrap()
            };
            let prof: Profile = random_profile(5, &mut rng);
            let x = random_zigzag(k, &prof, 2, 5, &mut rng);
            let y = random_zigzag(k, &prof, 2, 5, &mut rng);
            let f = random_zigzag_map(&x, &y, &mut rng);
            let u = unstraighten_map(&x, &y, &straighten_map(&f)).unwrap();
            round += usize::from(
                u.components == f.components()
                    && u.homotopies
                        .iter()
                        .flatten()
                        .flatten()
                        .all(FieldMatrix::is_zero),
            );

            let z = random_zigzag(k, &random_profile(6, &mut rng), 3, 6, &mut rng);
            mixed += usize::from(z.profile().directions().windows(2).any(|w| w[0] != w[1]));
            let s = straighten(&z);
            dims += usize::from((0..=z.k()).all(|a| s.spaces[a].dims() == expected_dims(&z, a)));
        }
        c.check(
            "unstraighten(straighten(f)) = (f, 0)",
            round == 100,
            format!("{round}/100"),
        );
        c.check(
            "dimension formula",
            dims == 100,
            format!("{dims}/100, {mixed} mixed profiles"),
        );
    })
}

fn criterion_9() -> bool {
    run(
        Criterion::new(9, "command line on filtration fixtures", 5),
        |c| {
            let header = "degree,birth,death,multiplicity,diagonal\n";
            let stated = [
                ("single_vertex.filt", "0,0,inf,1,false\n"),
                ("merging_pair.filt", "0,0,1,1,false\n0,0,inf,1,false\n"),
                ("filled_triangle.filt", "0,0,inf,1,false\n1,0,1,1,false\n"),
            ];
            let bin = env!("CARGO_BIN_EXE_tamecx");
            let out = |args: &[&str]| -> Option<Vec<u8>> {
                let o = Command::new(bin)
                    .args(args)
                    .env_remove("TAMECX_FIELD")
                    .output()
                    .ok()?;
                o.status.success().then_some(o.stdout)
            };
            for (name, rows) in stated {
                let path = fixture(name).to_string_lossy().into_owned();
                let first = out(&["betti", "--min", &path]);
                let again = out(&["betti", "--min", &path]);
                let f3 = out(&["--field", "3", "betti", "--min", &path]);
                let full = (
                    out(&["betti", &path]),
                    out(&["--field", "3", "betti", &path]),
                );
                let want = format!("{header}{rows}");
                c.check(
                    format!("{name}: stated diagram"),
                    first.as_deref() == Some(want.as_bytes()),
                    "",
                );
                c.check(
                    format!("{name}: byte-identical across runs and fields"),
                    first.is_some()
                        && first == again
                        && first == f3
                        && full.0.is_some()
                        && full.0 == full.1,
                    "",
                );
            }
        },
    )
}

fn main() {
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    let deviating: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    if deviating.is_empty() {
        println!("all criteria behave as recorded");
    } else {
        println!("criteria deviating from their recorded outcome: {deviating:?}");
        std::process::exit(1);
    }
}
