use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qmat_core::freealg::{Gen, NCPoly, Word};
use qmat_core::pairing::{pair, perm_length};
use qmat_core::qmatcalc::build_calculus;
use qmat_core::scalars::{Field, QRat, ZPoly};
use qmat_core::uq::coproduct;

fn laurent(coeffs: &[i64], shift: i64) -> QRat {
    let p = ZPoly::from_i64s(coeffs);
    QRat::from_poly(p).mul(&QRat::q_pow(shift))
}

fn qrat() -> impl Strategy<Value = QRat> {
    (
        prop::collection::vec(-4i64..=4, 1..4),
        -2i64..=2,
        prop::collection::vec(-3i64..=3, 1..3),
    )
        .prop_map(|(num, shift, den)| {
            let d = laurent(&den, 0);
            let n = laurent(&num, shift);
            if d.is_zero() {
                n
            } else {
                n.try_div(&d).unwrap()
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in qrat(), b in qrat(), c in qrat()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.try_inv().unwrap()).is_one());
            prop_assert_eq!(b.try_div(&a).unwrap().mul(&a), b.clone());
        }
    }

    #[test]
    fn specialization_is_a_homomorphism(a in qrat(), b in qrat()) {
        let q0 = BigRational::new(BigInt::from(3), BigInt::from(2));
        if let (Ok(x), Ok(y), Ok(xy), Ok(s)) = (
            a.specialize(&q0),
            b.specialize(&q0),
            a.mul(&b).specialize(&q0),
            a.add(&b).specialize(&q0),
        ) {
            prop_assert_eq!(xy, &x * &y);
            prop_assert_eq!(s, &x + &y);
        }
    }

    #[test]
    fn perm_length_complements_reversal(seed in any::<u64>(), m in 1usize..6) {
        let mut w: Vec<usize> = (0..m).collect();
        let mut s = seed;
        for i in (1..m).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            w.swap(i, (s >> 33) as usize % (i + 1));
        }
        let rev: Vec<usize> = w.iter().rev().copied().collect();
        prop_assert_eq!(perm_length(&w) + perm_length(&rev), m * (m - 1) / 2);
    }

    #[test]
    fn pairing_is_multiplicative(
        left in prop::collection::vec((1u8..=3, 1u8..=3), 1..3),
        right in prop::collection::vec((1u8..=3, 1u8..=3), 1..3),
        word in prop::collection::vec(0usize..8, 0..4),
    ) {
        let alphabet = [Gen::E(1), Gen::E(2), Gen::F(1), Gen::F(2), Gen::K(1), Gen::K(2), Gen::Kinv(1), Gen::Kinv(2)];
        let u = |v: &[(u8, u8)]| NCPoly::<QRat>::from_word(Word::from_gens(
            &v.iter().map(|&(i, j)| Gen::U { i, j }).collect::<Vec<_>>(),
        ));
        let (p1, p2) = (u(&left), u(&right));
        let w = Word::from_gens(&word.iter().map(|&k| alphabet[k]).collect::<Vec<_>>());
        let mut expected = QRat::zero();
        for (legs, c) in coproduct::<QRat>(&w, 2).terms() {
            expected = expected.add(&c.mul(&pair(&p1, &legs[0])).mul(&pair(&p2, &legs[1])));
        }
        prop_assert_eq!(pair(&p1.mul(&p2), &w), expected);
    }
}

#[test]
fn graded_leibniz_on_products() {
    for (m, n) in [(1, 2), (2, 2)] {
        let c = build_calculus(m, n, 0).unwrap().calculus;
        let basis = c.basis_up_to(2);
        for a in &basis {
            for b in basis.iter().step_by(3) {
                let (pa, pb) = (NCPoly::from_word(a.clone()), NCPoly::from_word(b.clone()));
                let lhs = c.differential(&c.mul(&pa, &pb).unwrap()).unwrap();
                let sign = if a.form_degree() % 2 == 0 { QRat::one() } else { QRat::from_int(-1) };
                let rhs = c
                    .mul(&c.differential(&pa).unwrap(), &pb)
                    .unwrap()
                    .add(&c.mul(&pa, &c.differential(&pb).unwrap()).unwrap().scale(&sign));
                assert_eq!(lhs, rhs, "d({a} * {b})");
            }
        }
    }
}
