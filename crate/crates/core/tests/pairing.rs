use qmat_core::freealg::{Gen, Word};
use qmat_core::pairing::{dual_divide, embed, embed_check, FunctionalTable, Pairing};
use qmat_core::scalars::{Field, QRat};

const SHAPES: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

fn embedded(p: &Pairing, a: usize, alpha: usize) -> (FunctionalTable, FunctionalTable, FunctionalTable) {
    let (den, num) = embed(p.m(), p.n(), a, alpha).unwrap();
    let x = p.u_table(&den.expand());
    let y = p.u_table(&num.expand());
    let f = dual_divide(&x, &y).unwrap();
    (x, y, f)
}

#[test]
fn division_reproduces_the_numerator() {
    for (m, n) in SHAPES {
        let p = Pairing::new(m, n, 3);
        let idx = p.index().clone();
        for a in 1..=n {
            for alpha in 1..=m {
                let (x, y, f) = embedded(&p, a, alpha);
                let back = x.convolve(&f);
                for k in 0..idx.count_up_to(p.max_len() - 1) {
                    assert_eq!(back.value(k), y.value(k), "({m},{n}) t[{a},{alpha}] at {}", idx.word(k));
                }
            }
        }
    }
}

#[test]
fn grouplike_right_translation_scales() {
    for (m, n) in SHAPES {
        let p = Pairing::new(m, n, 3);
        let idx = p.index().clone();
        for a in 1..=n {
            for alpha in 1..=m {
                let (_, _, f) = embedded(&p, a, alpha);
                for i in 1..m + n {
                    let kappa = Gen::K(i as u8);
                    let mut ratios: Vec<QRat> = Vec::new();
                    for k in 0..idx.count_up_to(p.max_len() - 1) {
                        let v = f.value(k);
                        if v.is_zero() {
                            continue;
                        }
                        let moved = idx.extend(k, kappa).expect("in range");
                        let r = f.value(moved).try_div(&v).unwrap();
                        if !ratios.contains(&r) {
                            ratios.push(r);
                        }
                    }
                    assert!(ratios.len() <= 1, "({m},{n}) t[{a},{alpha}] K_{i}: {ratios:?}");
                    for r in &ratios {
                        let (c, _) = r.as_q_monomial().expect("q-power");
                        assert_eq!(c, 1.into(), "{r}");
                    }
                }
            }
        }
    }
}

#[test]
fn embed_examples() {
    let r = embed_check(1, 1, 4, 3).unwrap();
    assert!(r.passed(), "{r}");
    let r = embed_check(1, 2, 3, 1).unwrap();
    assert!(r.passed(), "{r}");
    let relations = r.checks.iter().filter(|c| c.name.contains("relation")).count();
    assert!(relations >= 1, "{r}");
}

#[test]
fn coordinate_table_values() {
    // (1,1): t = u11^-1 u12 pairs to q^-1 with E_1 and 0 with 1
    let p = Pairing::new(1, 1, 2);
    let (_, _, f) = embedded(&p, 1, 1);
    assert_eq!(f.get(&Word::letter(Gen::E(1))), Some(QRat::q_pow(-1)));
    assert_eq!(f.get(&Word::empty()), Some(QRat::zero()));
}
