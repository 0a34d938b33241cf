use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::decomp::{betti, BettiDiagram};
use crate::error::Error;
use crate::exactlin::Field;
use crate::random::{
    random_betti, random_profile, random_tame_complex, random_tame_map, random_zigzag,
};
use crate::tamecat::Param;

fn p(n: i64) -> Param {
    Param::int(n)
}

fn ingest(text: &str, k: Field) -> crate::tamecat::TameComplex {
    ingest_filtration(&parse_filtration(text).unwrap(), k).unwrap()
}

#[test]
fn single_vertex_is_constant() {
    let x = ingest("0 0\n", Field::F2);
    assert_eq!(x.grid(), &[p(0)]);
    assert_eq!(x.value(0).dims(), &[1]);
    assert_eq!(
        betti(&x).unwrap(),
        vec![BettiDiagram::from_pairs([(p(0), Param::Infinity)])]
    );
}

#[test]
fn merging_pair_and_filled_triangle() {
    for k in [Field::F2, Field::new(3).unwrap(), Field::new(5).unwrap()] {
        let x = ingest("0 0\n0 1\n1 0 1\n", k);
        assert!(x.is_cofibrant());
        assert_eq!(
            betti(&x).unwrap(),
            vec![BettiDiagram::from_pairs([
                (p(0), p(1)),
                (p(0), Param::Infinity)
            ])]
        );
        let t = ingest(
            "filtration\n0 0\n0 1\n0 2\n0 0 1\n0 1 2\n0 0 2\n1 0 1 2\n",
            k,
        );
        // two of the edges at 0 kill components born at 0
        let b = betti(&t).unwrap();
        let mut b0 = BettiDiagram::from_pairs([(p(0), Param::Infinity)]);
        b0.insert(p(0), p(0), 2);
        assert_eq!(b, vec![b0, BettiDiagram::from_pairs([(p(0), p(1))])]);
        assert_eq!(
            crate::decomp::min_betti(&t).unwrap(),
            vec![
                BettiDiagram::from_pairs([(p(0), Param::Infinity)]),
                BettiDiagram::from_pairs([(p(0), p(1))]),
            ]
        );
    }
}

#[test]
fn vertex_order_and_late_grid() {
    // listed out of order, first simplex after 0
    let x = ingest("3/2 1 0\n1 1\n1/2 0\n", Field::F2);
    assert_eq!(
        x.grid(),
        &[
            p(0),
            Param::new(1, 2).unwrap(),
            p(1),
            Param::new(3, 2).unwrap()
        ]
    );
    assert_eq!(x.value(0).total_dim(), 0);
    assert_eq!(
        betti(&x).unwrap(),
        vec![BettiDiagram::from_pairs([
            (Param::new(1, 2).unwrap(), Param::Infinity),
            (p(1), Param::new(3, 2).unwrap()),
        ])]
    );
}

#[test]
fn faces_entering_late_are_rejected() {
    let e = parse_filtration("0 0\n2 1\n1 0 1\n").unwrap_err();
    match e {
        Error::FaceOrder { simplex, face } => {
            assert_eq!(simplex, "[0,1]");
            assert_eq!(face, "[1]");
        }
        other => panic!("{other}"),
    }
    assert!(matches!(
        parse_filtration("0 0 1\n"),
        Err(Error::FaceOrder { .. })
    ));
    assert!(parse_filtration("0 0\n0 0\n").is_err());
    assert!(parse_filtration("0 1 1\n").is_err());
}

#[test]
fn parse_errors_carry_positions() {
    let e = parse_filtration("0 0\n  x 1\n").unwrap_err();
    assert!(
        matches!(
            e,
            Error::Parse {
                line: 2,
                column: 3,
                ..
            }
        ),
        "{e}"
    );
    let e = parse_tame("tame\ngrid 0\npoint 0\ndims 1 1\ndiff 0 1x2\n1 1\n", None).unwrap_err();
    assert!(
        matches!(
            e,
            Error::Parse {
                line: 5,
                column: 8,
                ..
            }
        ),
        "{e}"
    );
    let e = parse_tame("tame\ngrid 0\npoint 0\ndims 1 1\ndiff 0 1x1\n1 1\n", None).unwrap_err();
    assert!(matches!(e, Error::Parse { line: 6, .. }), "{e}");
    let e = parse_tame("tame\ngrid 0\n", None).unwrap_err();
    assert!(e.to_string().contains("point 0 is missing"), "{e}");
    let e = parse_tame("tame\ngrid 0\npoint 0\ndims 1\nbogus\n", None).unwrap_err();
    assert!(
        matches!(
            e,
            Error::Parse {
                line: 5,
                column: 1,
                ..
            }
        ),
        "{e}"
    );
}

#[test]
fn square_zero_violation_names_the_degree() {
    let text = "tame\nfield 2\ngrid 0\npoint 0\ndims 1 1 1\ndiff 0 1x1\n1\ndiff 1 1x1\n1\n";
    let e = parse_tame(text, None).unwrap_err();
    assert!(e.to_string().contains("degree 0"), "{e}");
    assert!(matches!(e, Error::Parse { line: 4, .. }));
}

#[test]
fn field_lines_and_requests() {
    let text = "tame\nfield 3\ngrid 0\npoint 0\ndims 1\n";
    assert_eq!(parse_tame(text, None).unwrap().field().modulus(), 3);
    assert!(parse_tame(text, Some(Field::F2)).is_err());
    let bare = "tame\ngrid 0\npoint 0\ndims 1\n";
    assert_eq!(parse_tame(bare, None).unwrap().field(), Field::F2);
    assert_eq!(
        parse_tame(bare, Some(Field::new(7).unwrap()))
            .unwrap()
            .field()
            .modulus(),
        7
    );
    assert!(parse_tame("tame\nfield 4\ngrid 0\n", None).is_err());
}

#[test]
fn diagram_emission() {
    let mut b0 = BettiDiagram::new();
    b0.insert(p(0), p(1), 2);
    let b1 = BettiDiagram::from_pairs([(p(2), p(3)), (p(2), Param::Infinity)]);
    let csv = emit_diagrams(&[b0.clone(), b1.clone()], DiagramFormat::Csv);
    assert_eq!(
        csv,
        format!("{CSV_HEADER}\n0,0,1,2,false\n1,2,3,1,false\n1,2,inf,1,false\n")
    );
    assert_eq!(
        emit_diagrams(&[], DiagramFormat::Csv),
        format!("{CSV_HEADER}\n")
    );
    let d = BettiDiagram::from_pairs([(Param::new(1, 2).unwrap(), Param::new(1, 2).unwrap())]);
    assert_eq!(
        emit_diagrams(&[d], DiagramFormat::Csv),
        format!("{CSV_HEADER}\n0,1/2,1/2,1,true\n")
    );
    let s = emit_diagrams(&[b0.clone(), b1.clone()], DiagramFormat::Structured);
    assert_eq!(parse_diagrams(&s).unwrap(), vec![b0, b1]);
}

#[test]
fn documents_dispatch_on_their_header() {
    assert_eq!(parse_document("0 0\n", None).unwrap().kind(), "filtration");
    assert_eq!(
        parse_document("tame\ngrid 0\npoint 0\ndims\n", None)
            .unwrap()
            .kind(),
        "tame"
    );
    assert_eq!(
        parse_document("diagrams\n", None).unwrap().kind(),
        "diagrams"
    );
    assert!(parse_document("tamemap\n", None).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tame_documents_round_trip(seed in any::<u64>(), p3 in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = if p3 { Field::new(3).unwrap() } else { Field::F2 };
        let x = random_tame_complex(k, 4, 3, 3, &mut rng);
        let text = serialize_tame(&x);
        prop_assert_eq!(parse_tame(&text, None).unwrap(), x.clone());
        prop_assert_eq!(serialize_tame(&parse_tame(&text, Some(k)).unwrap()), text);

        let y = random_tame_complex(k, 3, 3, 3, &mut rng);
        let g = random_tame_map(&x, &y, &mut rng);
        let mt = serialize_tame_map(&g);
        prop_assert_eq!(parse_tame_map(&mt, &x, &y, None).unwrap(), g);
    }

    #[test]
    fn zigzag_documents_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_profile(4, &mut rng);
        let z = random_zigzag(Field::new(5).unwrap(), &c, 2, 6, &mut rng);
        let text = serialize_zigzag(&z);
        prop_assert_eq!(parse_zigzag(&text, None).unwrap(), z);
    }

    #[test]
    fn diagram_documents_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_betti(8, 3, &mut rng);
        let s = emit_diagrams(&b, DiagramFormat::Structured);
        prop_assert_eq!(parse_diagrams(&s).unwrap(), b);
    }

    #[test]
    fn filtrations_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_filtration(&mut rng);
        let text = serialize_filtration(&f);
        prop_assert_eq!(parse_filtration(&text).unwrap(), f.clone());
        let x = ingest_filtration(&f, Field::F2).unwrap();
        prop_assert!(x.is_cofibrant());
    }
}

/// Random clique filtration on up to five vertices: a simplex enters with its last face
/// or later.
fn random_filtration(rng: &mut ChaCha8Rng) -> FilteredComplex {
    use rand::Rng;
    let n = rng.gen_range(1..=5u32);
    let mut entries: std::collections::BTreeMap<Vec<u32>, Param> = Default::default();
    for mask in 1u32..(1 << n) {
        let s: Vec<u32> = (0..n).filter(|v| mask & (1 << v) != 0).collect();
        if s.len() > 3 || !rng.gen_bool(0.7) {
            continue;
        }
        let faces: Option<Vec<Param>> = if s.len() == 1 {
            Some(vec![Param::ZERO])
        } else {
            (0..s.len())
                .map(|i| {
                    let f: Vec<u32> = s
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, &v)| v)
                        .collect();
                    entries.get(&f).copied()
                })
                .collect()
        };
        if let Some(fs) = faces {
            let base = fs.into_iter().max().unwrap();
            let t = if rng.gen_bool(0.5) {
                base
            } else {
                Param::new(rng.gen_range(0..8), 2).unwrap().max(base)
            };
            entries.insert(s, t);
        }
    }
    FilteredComplex::new(entries.into_iter().collect()).unwrap()
}
