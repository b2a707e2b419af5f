//! Property tests for the structural invariants: field axioms, evaluation
//! homomorphism, rank invariances, abelianization additivity, Fox-derivative
//! reduction stability, wedge-factor cycles, and flip invariants.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom as _;
use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;

use pochhammer::homology::{
    build_complex, class_is_nonzero, loop_cycle, twisted_betti, BettiVector,
};
use pochhammer::linalg::{rank_exact, rank_randomized, Matrix};
use pochhammer::pants::{tshirt_flip, BoundaryRef, FlipSpec, PantsError};
use pochhammer::ring::{Exponents, LaurentPoly, RationalFunction};
use pochhammer::words::{fox_derivative, Letter, Presentation, Twist, Word};
use pochhammer::Ranker;

const NVARS: usize = 2;

fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, NVARS), -4i64..=4), 0..4).prop_map(
        |terms| {
            let mut p = LaurentPoly::zero(NVARS);
            for (e, c) in terms {
                let mono =
                    LaurentPoly::monomial(NVARS, Exponents(e), BigRational::from_integer(c.into()));
                p = &p + &mono;
            }
            p
        },
    )
}

fn rf_strategy() -> impl Strategy<Value = RationalFunction> {
    (poly_strategy(), poly_strategy()).prop_map(|(n, d)| {
        if d.is_zero() {
            RationalFunction::from_poly(n)
        } else {
            RationalFunction::from_ratio(n, d).unwrap()
        }
    })
}

fn word_strategy(m: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..m, any::<bool>()), 0..10).prop_map(|ls| {
        Word::from_letters(
            ls.into_iter()
                .map(|(gen, inverse)| Letter { gen, inverse })
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(x in rf_strategy(), y in rf_strategy(), z in rf_strategy()) {
        let assoc = &(&(&x + &y) + &z) - &(&x + &(&y + &z));
        prop_assert!(assoc.is_zero());
        let distrib = &(&x * &(&y + &z)) - &(&(&x * &y) + &(&x * &z));
        prop_assert!(distrib.is_zero());
        let comm = &(&x * &y) - &(&y * &x);
        prop_assert!(comm.is_zero());
        if !x.is_zero() {
            let unit = &x.inv().unwrap() * &x;
            prop_assert!(unit.is_one());
        }
    }

    #[test]
    fn display_parse_round_trip(x in rf_strategy()) {
        let text = x.to_string();
        let back = RationalFunction::parse(&text, NVARS).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        x in rf_strategy(),
        y in rf_strategy(),
        px in 1i64..7,
        py in 1i64..7,
    ) {
        let point = [
            BigRational::from_integer(BigInt::from(px)),
            BigRational::from_integer(BigInt::from(py)),
        ];
        let (ex, ey) = match (x.evaluate(&point), y.evaluate(&point)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Ok(()), // pole: resample
        };
        let prod = &x * &y;
        if let Ok(ep) = prod.evaluate(&point) {
            prop_assert_eq!(ep, ex.clone() * ey.clone());
        }
        let sum = &x + &y;
        if let Ok(es) = sum.evaluate(&point) {
            prop_assert_eq!(es, ex + ey);
        }
    }

    #[test]
    fn abelianization_is_additive(u in word_strategy(4), v in word_strategy(4)) {
        let p = Presentation::surface(2, 0).unwrap();
        let t = Twist::hurewicz(&p);
        let sum: Vec<i64> =
            t.of_word(&u).iter().zip(t.of_word(&v)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(t.of_word(&u.concat(&v)), sum);
        let neg: Vec<i64> = t.of_word(&u).iter().map(|a| -a).collect();
        prop_assert_eq!(t.of_word(&u.inverse()), neg);
    }

    #[test]
    fn free_reduction_preserves_fox_derivatives(w in word_strategy(4)) {
        let p = Presentation::surface(2, 0).unwrap();
        let t = Twist::hurewicz(&p);
        let reduced = w.reduced();
        for j in 0..p.generator_count() {
            prop_assert_eq!(fox_derivative(&w, j, &t), fox_derivative(&reduced, j, &t));
        }
    }
}

#[test]
fn rank_bounds_and_invariances() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..25 {
        let m = common::random_matrix(6, 2, &mut rng);
        let r = rank_exact(&m);
        assert!(r <= m.rows().min(m.cols()));
        assert!(rank_randomized(&m, 2, 5).unwrap() <= r);

        // Permute rows and columns, scale one row by a unit.
        let rows: Vec<usize> = {
            let mut v: Vec<usize> = (0..m.rows()).collect();
            v.shuffle(&mut rng);
            v
        };
        let cols: Vec<usize> = {
            let mut v: Vec<usize> = (0..m.cols()).collect();
            v.shuffle(&mut rng);
            v
        };
        let unit = RationalFunction::parse("-3*z1^-1*z2", 2).unwrap();
        let scaled_row = rng.gen_range(0..m.rows());
        let permuted = Matrix::from_fn(m.rows(), m.cols(), 2, |i, j| {
            let e = m.get(rows[i], cols[j]);
            if rows[i] == scaled_row {
                &unit * e
            } else {
                e.clone()
            }
        });
        assert_eq!(rank_exact(&permuted), r);
    }
}

#[test]
fn wedge_factor_inclusion_generates_homology() {
    // Twists trivial on the first circle and nontrivial on the second: the
    // first factor's fundamental class maps to a generator in degree 1.
    let wedge = Presentation::wedge();
    let ranker = Ranker::exact();
    for second in [vec![1], vec![-2], vec![3]] {
        let rows = vec![vec![0, second[0]]];
        let t = Twist::from_matrix(&wedge, rows).unwrap();
        assert_eq!(
            twisted_betti(&wedge, &t, &ranker).unwrap(),
            BettiVector(vec![0, 1])
        );
        let c = build_complex(&wedge, &t).unwrap();
        let x1 = wedge.parse_word("x1").unwrap();
        let cycle = loop_cycle(&x1, &t, &c).unwrap();
        assert!(class_is_nonzero(&cycle, &c, &ranker).unwrap());
    }
}

#[test]
fn conjugation_invariance_of_class_verdict() {
    let p = Presentation::surface(2, 0).unwrap();
    let t = Twist::hurewicz(&p);
    let c = build_complex(&p, &t).unwrap();
    let ranker = Ranker::exact();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10 {
        // Conjugating a lattice-trivial loop scales its cycle by a unit, so
        // the class verdict cannot change.
        let u = common::random_word(4, 6, &mut rng);
        let w = p.parse_word("[a1,b1] [a2,b2]^-1").unwrap();
        let base = loop_cycle(&w, &t, &c).unwrap();
        let conj = loop_cycle(&w.conjugated_by(&u), &t, &c).unwrap();
        let unit = RationalFunction::from_poly(t.monomial(&u));
        assert_eq!(conj, base.scaled(&unit));
        assert_eq!(
            class_is_nonzero(&base, &c, &ranker).unwrap(),
            class_is_nonzero(&conj, &c, &ranker).unwrap()
        );
    }
}

#[test]
fn random_flips_preserve_graph_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut done = 0;
    while done < 40 {
        let pg = common::random_genus3_graph(&mut rng);
        // Pick a random non-self-loop curve and a random sleeve pair.
        let candidates: Vec<usize> = (0..pg.curves().len())
            .filter(|&c| pg.curves()[c].ends[0].pants != pg.curves()[c].ends[1].pants)
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let curve = candidates[rng.gen_range(0..candidates.len())];
        let not_this =
            |r: &BoundaryRef| !matches!(r, BoundaryRef::CurveEnd { curve: c, .. } if *c == curve);
        let (pa, pb) = (
            pg.curves()[curve].ends[0].pants,
            pg.curves()[curve].ends[1].pants,
        );
        let side_a: Vec<BoundaryRef> = pg
            .boundary_circles(pa)
            .into_iter()
            .filter(not_this)
            .collect();
        let side_b: Vec<BoundaryRef> = pg
            .boundary_circles(pb)
            .into_iter()
            .filter(not_this)
            .collect();
        let spec = FlipSpec {
            curve,
            sleeve1: side_a[rng.gen_range(0..side_a.len())],
            sleeve2: side_b[rng.gen_range(0..side_b.len())],
        };
        match tshirt_flip(&pg, &spec) {
            Ok(flipped) => {
                assert!(flipped.validate().is_empty(), "{:?}", flipped.validate());
                assert_eq!(flipped.pants_count(), pg.pants_count());
                assert_eq!(flipped.curves().len(), pg.curves().len());
                assert_eq!(flipped.legs().len(), pg.legs().len());
                assert_eq!(flipped.graph_betti(), pg.graph_betti());
                done += 1;
            }
            Err(PantsError::InvalidFlipSpec(_)) => continue,
            Err(other) => panic!("unexpected flip failure: {other}"),
        }
    }
}
