//! Wedge monomials in the generators `e_ij` of the nilpotent Lie ring and the
//! Chevalley–Eilenberg boundary acting on them.
//!
//! A [`Monomial`] is stored as a bit set over all positions `(i, j)` with
//! `1 <= i < j <= MAX_N`. Bit order agrees with the lexicographic order on
//! `(row, col)`, so the bit set *is* the canonical sorted wedge and reordering
//! signs reduce to popcounts.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported matrix size. `MAX_N * (MAX_N - 1)` positions fit in a `u128`.
pub const MAX_N: usize = 11;

/// The basis element `e_ij` of the Lie ring: the matrix unit at `(row, col)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    row: u8,
    col: u8,
}

impl Generator {
    pub fn new(row: u8, col: u8) -> Result<Self> {
        if row >= 1 && row < col && (col as usize) <= MAX_N {
            Ok(Self { row, col })
        } else {
            Err(Error::InvalidGenerator { row, col })
        }
    }

    pub(crate) const fn new_unchecked(row: u8, col: u8) -> Self {
        Self { row, col }
    }

    pub fn row(self) -> u8 {
        self.row
    }

    pub fn col(self) -> u8 {
        self.col
    }

    pub fn is_valid_for(self, n: usize) -> bool {
        (self.col as usize) <= n
    }

    #[inline]
    pub(crate) fn bit(self) -> u32 {
        (self.row as u32 - 1) * MAX_N as u32 + (self.col as u32 - 1)
    }

    #[inline]
    pub(crate) fn from_bit(bit: u32) -> Self {
        let row = bit / MAX_N as u32 + 1;
        let col = bit % MAX_N as u32 + 1;
        Self { row: row as u8, col: col as u8 }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.col < 10 {
            write!(f, "e{}{}", self.row, self.col)
        } else {
            write!(f, "e({},{})", self.row, self.col)
        }
    }
}

/// Lie bracket of two generators: `[e_ab, e_cd]` is `e_ad` when `b = c`,
/// `-e_cb` when `a = d`, and zero otherwise.
pub fn bracket(a: Generator, b: Generator) -> Option<(i64, Generator)> {
    if a.col == b.row {
        Some((1, Generator::new_unchecked(a.row, b.col)))
    } else if a.row == b.col {
        Some((-1, Generator::new_unchecked(b.row, a.col)))
    } else {
        None
    }
}

/// A wedge of distinct generators, kept in canonical (sorted) order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const EMPTY: Monomial = Monomial(0);

    pub fn from_bits(bits: u128) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// Wedges the generators in the given order and brings the result into
    /// canonical order. Returns the reordering sign, or `None` if a generator
    /// repeats (the wedge vanishes).
    pub fn from_generators<I: IntoIterator<Item = Generator>>(gens: I) -> Option<(i64, Monomial)> {
        let mut m = Monomial::EMPTY;
        let mut sign = 1;
        for g in gens {
            // appending g after m: move it left past every larger element
            if m.contains(g) {
                return None;
            }
            let above = (m.0 >> g.bit()).count_ones();
            if above % 2 == 1 {
                sign = -sign;
            }
            m.0 |= 1u128 << g.bit();
        }
        Some((sign, m))
    }

    /// Builds a monomial from generators that are already sorted and distinct.
    pub fn from_sorted(gens: &[Generator]) -> Option<Monomial> {
        match Self::from_generators(gens.iter().copied()) {
            Some((1, m)) if m.degree() == gens.len() => Some(m),
            _ => None,
        }
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, g: Generator) -> bool {
        self.0 & (1u128 << g.bit()) != 0
    }

    pub fn with(self, g: Generator) -> Monomial {
        Monomial(self.0 | (1u128 << g.bit()))
    }

    pub fn without(self, g: Generator) -> Monomial {
        Monomial(self.0 & !(1u128 << g.bit()))
    }

    /// Number of generators of `self` that sort before `g`.
    #[inline]
    pub fn rank_of(self, g: Generator) -> u32 {
        (self.0 & ((1u128 << g.bit()) - 1)).count_ones()
    }

    /// Largest column index used, i.e. the smallest ambient `n` containing the wedge.
    pub fn ambient(self) -> usize {
        self.generators().map(|g| g.col as usize).max().unwrap_or(1)
    }

    pub fn generators(self) -> Generators {
        Generators(self.0)
    }

    /// `self ∧ other` in canonical order, or `None` if they share a generator.
    pub fn wedge(self, other: Monomial) -> Option<(i64, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // each generator of `other` passes over the larger generators of `self`
        let mut swaps = 0u32;
        for g in other.generators() {
            swaps += (self.0 >> g.bit()).count_ones();
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Monomial(self.0 | other.0)))
    }

    /// Chevalley–Eilenberg boundary: the signed sum over position pairs
    /// `p < q` of `(-1)^(p+q) [g_p, g_q] ∧ (rest)`.
    pub fn boundary(self) -> FormalSum {
        let mut out = FormalSum::new();
        self.for_each_boundary_term(|m, c| out.add(m, c));
        out
    }

    /// Visits the nonzero terms of the boundary without collecting them.
    /// Distinct position pairs never produce the same monomial, so every
    /// visited coefficient is `±1` and no two visits coincide.
    pub fn for_each_boundary_term<F: FnMut(Monomial, i64)>(self, mut visit: F) {
        let gens: Vec<Generator> = self.generators().collect();
        for (p, &a) in gens.iter().enumerate() {
            for (q, &b) in gens.iter().enumerate().skip(p + 1) {
                let Some((bsign, g)) = bracket(a, b) else { continue };
                let rest = self.without(a).without(b);
                if rest.contains(g) {
                    continue;
                }
                // positions are 1-based in the sign (-1)^(p+q); the parity is unchanged
                let mut sign = if (p + q) % 2 == 0 { 1 } else { -1 };
                sign *= bsign;
                if rest.rank_of(g) % 2 == 1 {
                    sign = -sign;
                }
                visit(rest.with(g), sign);
            }
        }
    }
}

/// Iterator over the generators of a monomial in canonical order.
#[derive(Clone, Debug)]
pub struct Generators(u128);

impl Iterator for Generators {
    type Item = Generator;

    fn next(&mut self) -> Option<Generator> {
        if self.0 == 0 {
            return None;
        }
        let bit = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(Generator::from_bit(bit))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Generators {}

impl Ord for Monomial {
    /// Lexicographic order on the sorted generator lists.
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff.trailing_zeros();
        let above = |bits: u128| if low == 127 { 0 } else { bits >> (low + 1) };
        if self.0 & (1u128 << low) != 0 {
            // self has the smaller generator at the first difference, unless
            // other has run out of generators there
            if above(other.0) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if above(self.0) != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        for g in self.generators() {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Integer linear combination of monomials with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<Monomial, i64>,
}

impl FormalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(m: Monomial, c: i64) -> Self {
        let mut s = Self::new();
        s.add(m, c);
        s
    }

    pub fn add(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn coefficient(&self, m: Monomial) -> i64 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Monomial, i64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    /// Linear extension of [`Monomial::boundary`].
    pub fn boundary(&self) -> FormalSum {
        let mut out = FormalSum::new();
        for (m, c) in self.iter() {
            m.for_each_boundary_term(|t, s| out.add(t, s * c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(r: u8, c: u8) -> Generator {
        Generator::new(r, c).unwrap()
    }

    fn mono(gens: &[(u8, u8)]) -> Monomial {
        Monomial::from_sorted(&gens.iter().map(|&(r, c)| e(r, c)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn bracket_cases() {
        assert_eq!(bracket(e(1, 2), e(2, 3)), Some((1, e(1, 3))));
        assert_eq!(bracket(e(1, 2), e(3, 4)), None);
        assert_eq!(bracket(e(2, 3), e(1, 2)), Some((-1, e(1, 3))));
    }

    #[test]
    fn invalid_generators_rejected() {
        assert!(Generator::new(2, 2).is_err());
        assert!(Generator::new(0, 2).is_err());
        assert!(Generator::new(3, 2).is_err());
        assert!(Generator::new(1, 12).is_err());
    }

    #[test]
    fn boundary_examples() {
        assert!(mono(&[(1, 3)]).boundary().is_zero());
        let b = mono(&[(1, 2), (2, 3)]).boundary();
        assert_eq!(b, FormalSum::single(mono(&[(1, 3)]), -1));
        assert!(mono(&[(1, 2), (1, 3), (2, 3)]).boundary().is_zero());
    }

    #[test]
    fn wedge_signs() {
        let (s, m) = Monomial::from_generators([e(2, 3), e(1, 2)]).unwrap();
        assert_eq!((s, m), (-1, mono(&[(1, 2), (2, 3)])));
        assert!(Monomial::from_generators([e(1, 2), e(1, 2)]).is_none());
        let (s, _) = mono(&[(2, 3)]).wedge(mono(&[(1, 2), (1, 3)])).unwrap();
        assert_eq!(s, 1);
        let (s, _) = mono(&[(2, 3), (3, 4)]).wedge(mono(&[(1, 2)])).unwrap();
        assert_eq!(s, 1);
        let (s, _) = mono(&[(2, 3)]).wedge(mono(&[(1, 2)])).unwrap();
        assert_eq!(s, -1);
    }

    #[test]
    fn lexicographic_order() {
        let a = mono(&[(1, 2), (3, 4)]);
        let b = mono(&[(1, 3)]);
        let c = mono(&[(1, 2)]);
        assert!(c < a);
        assert!(a < b);
        assert!(Monomial::EMPTY < c);
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", mono(&[(1, 2), (2, 3)])), "e12e23");
        assert_eq!(alloc::format!("{}", Monomial::EMPTY), "∅");
    }
}
