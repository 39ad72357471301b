//! Published homology of `nil_n` for `2 <= n <= 8`, embedded as text.
//!
//! One line per `(n, k)`: `n k free [order:count]...`, where each order is a
//! prime power and `count` is its multiplicity.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::homology::PrimePower;

pub const REFERENCE_DATA: &str = include_str!("../data/reference_tables.txt");

/// Largest `n` with reference data.
pub const REFERENCE_MAX_N: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceRow {
    pub n: usize,
    pub degree: i32,
    pub free_rank: u64,
    pub torsion: Vec<(PrimePower, u64)>,
}

pub fn parse_reference(text: &str) -> Result<Vec<ReferenceRow>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::ReferenceData { line: i + 1 };
        let mut fields = line.split_whitespace();
        let mut num = || -> Result<u64> { fields.next().ok_or_else(bad)?.parse().map_err(|_| bad()) };
        let n = num()? as usize;
        let degree = num()? as i32;
        let free_rank = num()?;
        let mut torsion = Vec::new();
        for f in line.split_whitespace().skip(3) {
            let (order, count) = f.split_once(':').ok_or_else(bad)?;
            let order: u64 = order.parse().map_err(|_| bad())?;
            let count: u64 = count.parse().map_err(|_| bad())?;
            torsion.push((PrimePower::from_order(order).ok_or_else(bad)?, count));
        }
        rows.push(ReferenceRow { n, degree, free_rank, torsion });
    }
    Ok(rows)
}

/// Rows for one `n`, ordered by degree.
pub fn reference_rows(n: usize) -> Result<Vec<ReferenceRow>> {
    if !(2..=REFERENCE_MAX_N).contains(&n) {
        return Err(Error::UnknownN { n });
    }
    let mut rows: Vec<ReferenceRow> = parse_reference(REFERENCE_DATA)?.into_iter().filter(|r| r.n == n).collect();
    rows.sort_by_key(|r| r.degree);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_data_parses() {
        let rows = parse_reference(REFERENCE_DATA).unwrap();
        for n in 2..=8 {
            let top = (n * (n - 1) / 2) as i32;
            let degrees: Vec<i32> = rows.iter().filter(|r| r.n == n).map(|r| r.degree).collect();
            assert_eq!(degrees, (0..=top).collect::<Vec<_>>());
        }
    }

    #[test]
    fn malformed_lines_rejected() {
        assert_eq!(parse_reference("2 0 1\n2 x 1"), Err(Error::ReferenceData { line: 2 }));
        assert_eq!(parse_reference("4 2 5 6:1"), Err(Error::ReferenceData { line: 1 }));
        assert_eq!(reference_rows(9), Err(Error::UnknownN { n: 9 }));
    }
}
