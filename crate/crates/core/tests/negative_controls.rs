use qmat_core::action::{verify_module_algebra, HiddenAction, ModuleAction};
use qmat_core::freealg::Gen;
use qmat_core::qmatcalc::{build_calculus, OmegaPresentation, QmatError, RHat};
use qmat_core::report::Report;
use qmat_core::scalars::{Field, QRat};
use qmat_core::uq;

const SHAPES: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

fn assert_fails_with_witness(r: &Report) {
    assert!(!r.passed(), "{r}");
    assert!(r.failures().all(|c| c.witness.is_some()), "{r}");
}

#[test]
fn corrupted_k_entries_break_the_suite() {
    for (m, n) in SHAPES {
        let h = HiddenAction::build(m, n, 3).unwrap();
        for i in 1..(m + n) as u8 {
            let t = Gen::T { a: 1, alpha: 1 };
            let mut table = h.table().clone();
            let bad = table.entry(Gen::K(i), t).unwrap().scale(&QRat::q());
            table.set_entry(Gen::K(i), t, bad);
            let action = ModuleAction::new(h.presentation.calculus.clone(), table).unwrap();
            let r = verify_module_algebra(&action, &uq::relations(m + n), &h.presentation.relations.all(), 1)
                .unwrap();
            assert_fails_with_witness(&r);
        }
    }
}

#[test]
fn wrong_raising_entry_breaks_the_suite() {
    let h = HiddenAction::build(1, 2, 3).unwrap();
    let mut table = h.table().clone();
    let t = Gen::T { a: 2, alpha: 1 };
    let bad = table.entry(Gen::F(1), t).unwrap().neg();
    table.set_entry(Gen::F(1), t, bad);
    let h = h.with_table(table).unwrap();
    assert_fails_with_witness(&h.verify(2).unwrap());
}

#[test]
fn dropped_relations_break_flatness() {
    for (m, n) in SHAPES {
        let p = build_calculus(m, n, 0).unwrap();
        let broken = OmegaPresentation::from_relations(m, n, p.relations.dropping_first()).unwrap();
        assert_fails_with_witness(&broken.flatness_report(2).unwrap());
    }
}

#[test]
fn flipped_rhat_entries_are_caught() {
    for big_n in 2..=4 {
        for (entry, x) in [((1, 1, 1, 1), QRat::q()), ((1, 2, 2, 1), QRat::from_int(2)), ((2, 1, 2, 1), QRat::one())] {
            let (i, j, ip, jp) = entry;
            let r = RHat::unchecked(big_n).with_entry(i, j, ip, jp, x.clone());
            assert_fails_with_witness(&r.report());
            assert!(matches!(r.validate(), Err(QmatError::RHatInvariant(_))));
        }
    }
}
