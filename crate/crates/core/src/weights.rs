//! Weight vectors, the sets `S_n`, `F_n`, `T_n`, and the symmetries
//! `α` (rotation), `β` (complement-reversal) and `γ` (reversal, torsion only).
//!
//! Shift convention: `⟦w⟧ ≅ ⟦v⟧_s` means `H_k⟦w⟧ = H_{k-s}⟦v⟧`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exterior::{Generator, Monomial, MAX_N};
use crate::homology::HomologyProfile;

/// A vector in `{1..n}^n` whose entries sum to `n(n+1)/2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WeightVector(Vec<u8>);

impl WeightVector {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        let n = entries.len();
        if n > MAX_N {
            return Err(Error::AmbientOutOfRange { n, max: MAX_N });
        }
        for (i, &v) in entries.iter().enumerate() {
            if v == 0 || v as usize > n {
                return Err(Error::EntryOutOfRange { position: i + 1, value: v as i64, n });
            }
        }
        let expected = (n * (n + 1) / 2) as u32;
        let actual: u32 = entries.iter().map(|&v| v as u32).sum();
        if actual != expected {
            return Err(Error::WeightSumMismatch { expected, actual });
        }
        Ok(Self(entries))
    }

    /// Accepts arbitrary integers, e.g. the output of entrywise arithmetic.
    pub fn from_i64(entries: &[i64]) -> Result<Self> {
        let n = entries.len();
        if n > MAX_N {
            return Err(Error::AmbientOutOfRange { n, max: MAX_N });
        }
        let mut out = Vec::with_capacity(n);
        for (i, &v) in entries.iter().enumerate() {
            if v < 1 || v > n as i64 {
                return Err(Error::EntryOutOfRange { position: i + 1, value: v, n });
            }
            out.push(v as u8);
        }
        Self::new(out)
    }

    pub(crate) fn new_unchecked(entries: Vec<u8>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok());
        Self(entries)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> u8 {
        self.0[i - 1]
    }

    /// `n(n-1)/2`, the top degree of the ambient complex.
    pub fn top_degree(&self) -> i32 {
        let n = self.n() as i32;
        n * (n - 1) / 2
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = 0u32;
        self.0.iter().all(|&v| {
            let fresh = seen & (1 << v) == 0;
            seen |= 1 << v;
            fresh
        })
    }

    pub fn classify(&self) -> WeightClass {
        if self.is_permutation() {
            WeightClass::Permutation(Permutation(self.0.clone()))
        } else {
            WeightClass::Torsion
        }
    }

    pub fn contains(&self, v: u8) -> bool {
        self.0.contains(&v)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        let w = WeightVector::new(entries)?;
        match w.classify() {
            WeightClass::Permutation(p) => Ok(p),
            WeightClass::Torsion => Err(Error::PatternMismatch("a permutation")),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n as u8).collect())
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Pairs `i < j` (1-based) with `π_i > π_j`.
    pub fn inversion_pairs(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        let n = self.0.len();
        (0..n).flat_map(move |i| {
            (i + 1..n).filter(move |&j| self.0[i] > self.0[j]).map(move |j| (i as u8 + 1, j as u8 + 1))
        })
    }

    pub fn inversions(&self) -> usize {
        self.inversion_pairs().count()
    }

    pub fn as_weight(&self) -> WeightVector {
        WeightVector::new_unchecked(self.0.clone())
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&WeightVector(self.0.clone()), f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightClass {
    /// Distinct entries; the summand is one copy of `ℤ`.
    Permutation(Permutation),
    /// A repeated entry; the summand has torsion homology only.
    Torsion,
}

/// Modified weight `w_i = i + out_i - in_i` of a monomial in ambient `n`.
pub fn weight_of(m: Monomial, n: usize) -> WeightVector {
    let mut w: Vec<i32> = (1..=n as i32).collect();
    for g in m.generators() {
        w[g.row() as usize - 1] += 1;
        w[g.col() as usize - 1] -= 1;
    }
    WeightVector::new_unchecked(w.into_iter().map(|v| v as u8).collect())
}

/// Every vector of `S_n`, in lexicographic order.
pub fn enumerate_weights(n: usize) -> Vec<WeightVector> {
    let mut out = Vec::new();
    for_each_weight(n, |w| out.push(WeightVector::new_unchecked(w.to_vec())));
    out
}

/// Streams `S_n` in lexicographic order without materialising it.
pub fn for_each_weight<F: FnMut(&[u8])>(n: usize, mut visit: F) {
    fn go<F: FnMut(&[u8])>(n: usize, remaining: usize, cur: &mut Vec<u8>, visit: &mut F) {
        let slots = n - cur.len();
        if slots == 0 {
            if remaining == 0 {
                visit(cur);
            }
            return;
        }
        let rest = slots - 1;
        let lo = remaining.saturating_sub(rest * n).max(1);
        let hi = remaining.saturating_sub(rest).min(n);
        for v in lo..=hi {
            cur.push(v as u8);
            go(n, remaining - v, cur, visit);
            cur.pop();
        }
    }
    go(n, n * (n + 1) / 2, &mut Vec::with_capacity(n), &mut visit);
}

/// `e_π`, the wedge of `e_ij` over the inversions of `π`.
pub fn inversion_monomial(pi: &Permutation) -> Monomial {
    pi.inversion_pairs()
        .fold(Monomial::EMPTY, |m, (i, j)| m.with(Generator::new_unchecked(i, j)))
}

/// `α`: `⟦w_1,…,w_n⟧ ≅ ⟦w_2,…,w_n,w_1⟧_{2w_1-n-1}`.
pub fn rotate_alpha(w: &WeightVector) -> (WeightVector, i32) {
    if w.n() == 0 {
        return (w.clone(), 0);
    }
    let mut v = w.0.clone();
    v.rotate_left(1);
    (WeightVector(v), alpha_shift(w))
}

fn alpha_shift(w: &WeightVector) -> i32 {
    2 * w.0[0] as i32 - w.n() as i32 - 1
}

/// `β`: `⟦w_1,…,w_n⟧ ≅ ⟦n+1-w_n,…,n+1-w_1⟧` with no shift.
pub fn reverse_beta(w: &WeightVector) -> WeightVector {
    let n = w.n() as u8;
    WeightVector(w.0.iter().rev().map(|&v| n + 1 - v).collect())
}

/// `γ`: reversal. Only meaningful on torsion summands, where the torsion in
/// degree `k` of `⟦γw⟧` equals the torsion in degree `N-1-k` of `⟦w⟧`.
pub fn dual_gamma(w: &WeightVector) -> Result<WeightVector> {
    if w.is_permutation() {
        return Err(Error::NotTorsion);
    }
    Ok(WeightVector(w.0.iter().rev().copied().collect()))
}

/// The `α`/`β` orbit of `w` with shifts: each `(v, s)` satisfies `⟦w⟧ ≅ ⟦v⟧_s`.
/// Elements are listed as `α^i w` then `α^i β w`, first occurrence kept.
pub fn orbit(w: &WeightVector) -> Vec<(WeightVector, i32)> {
    let mut out: Vec<(WeightVector, i32)> = Vec::with_capacity(2 * w.n());
    for start in [w.clone(), reverse_beta(w)] {
        let (mut v, mut s) = (start, 0);
        for _ in 0..w.n().max(1) {
            if !out.iter().any(|(u, _)| *u == v) {
                out.push((v.clone(), s));
            }
            let (next, a) = rotate_alpha(&v);
            s += a;
            v = next;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Alpha,
    Beta,
    Gamma,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Alpha => "α",
            Symmetry::Beta => "β",
            Symmetry::Gamma => "γ",
        })
    }
}

/// How a vector relates to the canonical member of its symmetry class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCertificate {
    pub canonical: WeightVector,
    /// `⟦w⟧ ≅ ⟦canonical⟧_shift`, or `⟦γw⟧ ≅ ⟦canonical⟧_shift` when dualized.
    pub degree_shift: i32,
    pub dualized: bool,
    /// Symbols that carry `canonical` to the query vector, applied left to right.
    pub transform_word: Vec<Symmetry>,
}

impl OrbitCertificate {
    /// Converts a profile of the canonical summand into one for the query.
    pub fn transport(&self, canonical: &HomologyProfile) -> HomologyProfile {
        let p = canonical.shifted(self.degree_shift);
        if self.dualized {
            p.dual_flip(self.canonical.top_degree())
        } else {
            p
        }
    }

    /// Applies `transform_word` to `canonical`; returns the resulting vector
    /// and the shift accumulated before any `γ`.
    pub fn replay(&self) -> (WeightVector, i32) {
        let mut v = self.canonical.clone();
        let mut shift = 0;
        for s in &self.transform_word {
            match s {
                Symmetry::Alpha => {
                    let (next, a) = rotate_alpha(&v);
                    shift -= a;
                    v = next;
                }
                Symmetry::Beta => v = reverse_beta(&v),
                Symmetry::Gamma => v = WeightVector(v.0.iter().rev().copied().collect()),
            }
        }
        (v, shift)
    }
}

fn word_to(w: &WeightVector, target: &WeightVector) -> Vec<Symmetry> {
    // target = α^i w or α^i β w; invert to reach w from target
    let n = w.n().max(1);
    let mut v = w.clone();
    for i in 0..n {
        if v == *target {
            return core::iter::repeat_n(Symmetry::Alpha, (n - i) % n).collect();
        }
        v = rotate_alpha(&v).0;
    }
    let mut v = reverse_beta(w);
    for i in 0..n {
        if v == *target {
            let mut word: Vec<Symmetry> = core::iter::repeat_n(Symmetry::Alpha, (n - i) % n).collect();
            word.push(Symmetry::Beta);
            return word;
        }
        v = rotate_alpha(&v).0;
    }
    unreachable!("target lies in the orbit")
}

/// Lexicographically least member of the class of `w` under `α`, `β` and,
/// for torsion vectors, `γ`.
pub fn canonicalize(w: &WeightVector) -> OrbitCertificate {
    let least = |v: &WeightVector| orbit(v).into_iter().min_by(|a, b| a.0.cmp(&b.0)).unwrap();
    let (canonical, degree_shift) = least(w);
    if !w.is_permutation() {
        let g = WeightVector(w.0.iter().rev().copied().collect());
        let (dual, dual_shift) = least(&g);
        if dual < canonical {
            let mut word = word_to(&g, &dual);
            word.push(Symmetry::Gamma);
            return OrbitCertificate { canonical: dual, degree_shift: dual_shift, dualized: true, transform_word: word };
        }
    }
    let transform_word = word_to(w, &canonical);
    OrbitCertificate { canonical, degree_shift, dualized: false, transform_word }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn wv(v: &[u8]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(WeightVector::new(vec![1, 1]), Err(Error::WeightSumMismatch { .. })));
        assert!(matches!(WeightVector::new(vec![0, 3]), Err(Error::EntryOutOfRange { .. })));
        assert!(matches!(WeightVector::from_i64(&[4, -1, 3]), Err(Error::EntryOutOfRange { .. })));
        assert!(WeightVector::new(vec![]).is_ok());
    }

    #[test]
    fn small_weight_sets() {
        assert_eq!(enumerate_weights(2), vec![wv(&[1, 2]), wv(&[2, 1])]);
        let s3 = enumerate_weights(3);
        assert_eq!(s3.len(), 7);
        assert!(s3.contains(&wv(&[2, 2, 2])));
    }

    #[test]
    fn weight_of_examples() {
        let e = |r, c| Generator::new(r, c).unwrap();
        assert_eq!(weight_of(Monomial::EMPTY, 3), wv(&[1, 2, 3]));
        assert_eq!(weight_of(Monomial::EMPTY.with(e(1, 2)), 2), wv(&[2, 1]));
        assert_eq!(weight_of(Monomial::EMPTY.with(e(1, 3)).with(e(2, 3)), 3), wv(&[2, 3, 1]));
    }

    #[test]
    fn inversion_monomials() {
        let p = Permutation::new(vec![2, 4, 3, 1, 5]).unwrap();
        assert_eq!(alloc::format!("{}", inversion_monomial(&p)), "e14e23e24e34");
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn symmetries() {
        assert_eq!(rotate_alpha(&wv(&[2, 3, 2, 3])), (wv(&[3, 2, 3, 2]), -1));
        assert_eq!(reverse_beta(&wv(&[2, 3, 4, 2, 4])), wv(&[2, 4, 2, 3, 4]));
        assert_eq!(reverse_beta(&wv(&[2, 3, 3, 3, 4])), wv(&[2, 3, 3, 3, 4]));
        assert_eq!(dual_gamma(&wv(&[2, 3, 3, 4, 3])).unwrap(), wv(&[3, 4, 3, 3, 2]));
        assert_eq!(dual_gamma(&wv(&[3, 2, 1])), Err(Error::NotTorsion));
    }

    #[test]
    fn canonical_forms() {
        let c = canonicalize(&wv(&[3, 2, 3, 2]));
        assert_eq!(c.canonical, wv(&[2, 3, 2, 3]));
        assert_eq!(c.degree_shift, 1);
        let c = canonicalize(&wv(&[2, 3, 2, 3]));
        assert_eq!((c.degree_shift, c.transform_word.len()), (0, 0));
    }

    #[test]
    fn replay_reproduces_query() {
        for n in 2..=6 {
            for w in enumerate_weights(n) {
                let c = canonicalize(&w);
                let (v, s) = c.replay();
                assert_eq!(v, w);
                assert_eq!(s, c.degree_shift, "{w}");
            }
        }
    }
}
