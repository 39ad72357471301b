//! Assembled tables against the published ones.

use nilhom_core::assemble::{cup_product, full_table, verify_against_reference, CupClass, NilTable};
use nilhom_core::reduce::{LocalCache, ReduceConfig, Reducer};
use nilhom_core::{Permutation, PrimePower};

fn table(n: usize) -> NilTable {
    let cache = LocalCache::new();
    full_table(n, &Reducer::new(ReduceConfig::default(), &cache)).unwrap()
}

#[test]
fn tables_up_to_six_match() {
    for n in 2..=6 {
        let t = table(n);
        let report = verify_against_reference(&t).unwrap();
        assert!(report.passed(), "n={n}: {:?}", report.mismatches);
        assert!(t.duality_failures().is_empty());
        assert!(t.dwyer_violations().is_empty());
    }
    let t = table(6);
    let h6 = t.row(6);
    assert_eq!(h6.free_rank, 90);
    assert_eq!(h6.torsion[&PrimePower::new(2, 1)], 118);
    assert_eq!(h6.torsion[&PrimePower::new(3, 1)], 35);
    assert_eq!(h6.torsion[&PrimePower::new(2, 2)], 12);
}

/// The published `H_17(nil_7)` lists `ℤ_2^4`; duality with `H_3` forces
/// `ℤ_2^35`, and every other entry agrees.
#[test]
fn seven_differs_only_in_the_misprinted_entry() {
    let t = table(7);
    let report = verify_against_reference(&t).unwrap();
    assert_eq!(report.mismatches.len(), 1, "{:?}", report.mismatches);
    let m = &report.mismatches[0];
    assert_eq!((m.degree, m.group, m.expected, m.actual), (17, Some(PrimePower::new(2, 1)), 4, 35));
    assert!(t.duality_failures().is_empty());
    assert!(t.dwyer_violations().is_empty());
    assert_eq!(t.row(17).torsion, t.row(3).torsion);
    assert_eq!(NilTable::reference(7).unwrap().duality_failures(), vec![3, 17]);
}

#[test]
fn cup_examples() {
    let p = |v: Vec<u8>| Permutation::new(v).unwrap();
    match cup_product(&p(vec![1, 3, 2]), &p(vec![3, 1, 2])).unwrap() {
        CupClass::Class { sign, permutation } => {
            assert_eq!(sign.abs(), 1);
            assert_eq!(permutation.entries(), [3, 2, 1]);
        }
        CupClass::Zero => panic!("nonzero product expected"),
    }
    assert_eq!(cup_product(&p(vec![2, 1, 3]), &p(vec![1, 3, 2])).unwrap(), CupClass::Zero);
}
