//! Rotation, complement-reversal and reversal checked on every summand with
//! `n <= 6` against homology computed from scratch.

use nilhom_core::reduce::direct_profile;
use nilhom_core::weights::{dual_gamma, enumerate_weights, orbit, reverse_beta, rotate_alpha};
use nilhom_core::{canonicalize, HomologyProfile, WeightVector};
use std::collections::HashMap;

fn profiles(n: usize) -> HashMap<WeightVector, HomologyProfile> {
    enumerate_weights(n).into_iter().map(|w| (w.clone(), direct_profile(&w).unwrap())).collect()
}

#[test]
fn rotation_shifts_by_twice_the_first_entry() {
    for n in 2..=6 {
        let h = profiles(n);
        for (w, p) in &h {
            let (v, s) = rotate_alpha(w);
            assert_eq!(s, 2 * w.at(1) as i32 - n as i32 - 1);
            assert_eq!(&h[&v].shifted(s), p, "{w}");
        }
    }
}

#[test]
fn complement_reversal_keeps_degrees() {
    for n in 2..=6 {
        let h = profiles(n);
        for (w, p) in &h {
            assert_eq!(&h[&reverse_beta(w)], p, "{w}");
        }
    }
}

#[test]
fn reversal_mirrors_torsion() {
    for n in 2..=6 {
        let h = profiles(n);
        let top = (n * (n - 1) / 2) as i32;
        for (w, p) in &h {
            if w.is_permutation() {
                assert!(dual_gamma(w).is_err());
                continue;
            }
            let r = &h[&dual_gamma(w).unwrap()];
            for k in 0..=top {
                assert_eq!(r.get(k).torsion, p.get(top - 1 - k).torsion, "{w} at {k}");
            }
        }
    }
}

#[test]
fn canonical_profile_transports_to_every_member() {
    for n in 2..=6 {
        let h = profiles(n);
        for (w, p) in &h {
            let c = canonicalize(w);
            assert!(c.canonical <= *w || c.dualized);
            assert_eq!(&c.transport(&h[&c.canonical]), p, "{w}");
            for (u, _) in orbit(w) {
                assert_eq!(canonicalize(&u).canonical, c.canonical);
            }
        }
    }
}

#[test]
fn worked_orbits() {
    let w = WeightVector::new(vec![3, 2, 3, 2]).unwrap();
    let c = canonicalize(&w);
    assert_eq!(c.canonical.entries(), [2, 3, 2, 3]);
    assert_eq!(c.degree_shift, 1);
    let b = WeightVector::new(vec![2, 3, 3, 3, 4]).unwrap();
    assert_eq!(reverse_beta(&b), b);
    let id = WeightVector::new(vec![1, 2, 3]).unwrap();
    assert_eq!(canonicalize(&id).canonical, id);
}
