use acwb::laurent::{det2, evans_matrix, ge2_reduce, multiply_factors, Ge2Factor, Ge2Outcome, LaurentPoly, Mat2, DEFAULT_GE2_BUDGET};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const K: usize = 2;

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let mut p = LaurentPoly::zero(K);
    for _ in 0..rng.gen_range(1..=3) {
        let e = vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
        let c = loop {
            let c: i32 = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        p = &p + &LaurentPoly::monomial(K, e, BigInt::from(c));
    }
    p
}

fn random_unit(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let c = if rng.gen_bool(0.5) { 1 } else { -1 };
    LaurentPoly::monomial(K, vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)], BigInt::from(c))
}

fn random_factor(rng: &mut ChaCha8Rng) -> Ge2Factor {
    match rng.gen_range(0..5) {
        0 => Ge2Factor::Diagonal(random_unit(rng), random_unit(rng)),
        1 | 2 => Ge2Factor::Elementary { row: 0, col: 1, p: random_poly(rng) },
        _ => Ge2Factor::Elementary { row: 1, col: 0, p: random_poly(rng) },
    }
}

#[test]
fn random_ge2_products_factor_and_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e32);
    let mut solved = 0;
    for _ in 0..100 {
        let depth = rng.gen_range(1..=6);
        let factors: Vec<Ge2Factor> = (0..depth).map(|_| random_factor(&mut rng)).collect();
        let m = multiply_factors(K, &factors);
        assert!(det2(&m).is_trivial_unit());
        match ge2_reduce(&m, DEFAULT_GE2_BUDGET).unwrap() {
            Ge2Outcome::Factorization(found) => {
                assert_eq!(multiply_factors(K, &found), m);
                solved += 1;
            }
            Ge2Outcome::GaveUp { .. } => eprintln!("gave up on {m:?}"),
        }
    }
    assert_eq!(solved, 100);
}

#[test]
fn evans_matrix_resists_reduction() {
    let e = evans_matrix();
    assert!(det2(&e).is_one());
    assert!(matches!(ge2_reduce(&e, DEFAULT_GE2_BUDGET).unwrap(), Ge2Outcome::GaveUp { .. }));
    let bundled: Mat2 = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/matrices/evans.mat2"))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(bundled, e);
}
