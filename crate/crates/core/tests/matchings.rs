//! Morse matchings on summands: the reduced complexes keep the homology.

use nilhom_core::complex::cone;
use nilhom_core::morse::{matching_second_two, matching_two_three_three, matching_two_two, reduce_by_matching, validate_matching};
use nilhom_core::reduce::{direct_profile, rule_cone_33};
use nilhom_core::summand::summand_size;
use nilhom_core::weights::enumerate_weights;
use nilhom_core::{build_summand, homology_profile, WeightVector};

fn weights() -> impl Iterator<Item = WeightVector> {
    (3..=6).flat_map(enumerate_weights).filter(|w| w.at(1) == 2)
}

#[test]
fn two_two_is_perfect() {
    for w in weights().filter(|w| w.at(2) == 2) {
        let s = build_summand(&w).unwrap();
        let m = matching_two_two(&s).unwrap();
        validate_matching(s.complex(), &m).unwrap();
        assert_eq!(2 * m.len(), s.len(), "{w}");
        assert!(reduce_by_matching(s.complex(), &m).unwrap().complex.is_zero());
    }
}

#[test]
fn two_three_three_halves_to_a_cone() {
    let mut seen = 0;
    for w in weights().filter(|w| w.entries()[..3] == [2, 3, 3]) {
        let s = build_summand(&w).unwrap();
        let (q, m) = matching_two_three_three(&s).unwrap();
        let r = reduce_by_matching(&q, &m).unwrap();
        let inner = rule_cone_33(&w).unwrap().inner.map_or(0, |v| summand_size(&v, u64::MAX));
        assert_eq!(r.complex.total_dim() as u64, 2 * inner, "{w}");
        let h = homology_profile(&r.complex).unwrap();
        assert_eq!(h, homology_profile(&q).unwrap(), "{w}");
        assert_eq!(h, direct_profile(&w).unwrap(), "{w}");
        seen += 1;
    }
    assert!(seen >= 20);
}

#[test]
fn second_two_is_a_cone() {
    for w in weights() {
        let s = build_summand(&w).unwrap();
        let direct = homology_profile(s.complex()).unwrap();
        for k in (2..=w.n()).filter(|&k| w.at(k) == 2) {
            let red = matching_second_two(&s, k).unwrap();
            assert_eq!(homology_profile(&red.reduced.complex).unwrap(), direct, "{w} k={k}");
            assert_eq!(homology_profile(&cone(&red.phi).unwrap()).unwrap(), direct, "{w} k={k}");
        }
    }
}

#[test]
fn second_two_next_to_last_multiplies_by_last_entry() {
    let mut seen = 0;
    for w in weights().filter(|w| w.at(w.n() - 1) == 2) {
        let s = build_summand(&w).unwrap();
        let red = matching_second_two(&s, w.n() - 1).unwrap();
        let q = w.at(w.n()) as i64 - 1;
        for (&d, cells) in &red.a_cells {
            let phi = red.phi.component(d - 1);
            let b = red.b_cells.get(&(d - 1)).map_or(&[][..], Vec::as_slice);
            for (i, &a) in cells.iter().enumerate() {
                let image = red.iota(a).unwrap();
                let row = b.iter().position(|&x| x == image).unwrap() as u32;
                let col = phi.column(i);
                assert_eq!(col.len(), 1, "{w} {a}");
                assert_eq!(col[0].0, row, "{w} {a}");
                assert_eq!(col[0].1.abs(), q, "{w} {a}");
                seen += 1;
            }
        }
    }
    assert!(seen > 50, "{seen}");
}
