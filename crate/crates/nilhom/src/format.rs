//! JSON documents for tables, profiles and traces.
//!
//! Table schema: `{n, rows: [{degree, free_rank, torsion: [{prime, power, count}]}], meta}`.
//! Rows run over every degree `0..=n(n-1)/2`; torsion is ordered by prime,
//! then power.

use std::collections::BTreeMap;

use nilhom_core::assemble::{NilTable, TableRow};
use nilhom_core::reduce::{MemoEntry, ReductionTrace, Rule, Step, Terminal};
use nilhom_core::{DegreeHomology, HomologyProfile, PrimePower, WeightVector};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionDto {
    pub prime: u64,
    pub power: u32,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowDto {
    pub degree: i32,
    pub free_rank: u64,
    pub torsion: Vec<TorsionDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMeta {
    pub engine_version: String,
    /// Symmetry classes of torsion weight vectors that were computed.
    pub classes: usize,
    /// Outcome of the comparison with the published table, when requested.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDto {
    pub n: usize,
    pub rows: Vec<RowDto>,
    pub meta: TableMeta,
}

fn torsion_dto(torsion: &BTreeMap<PrimePower, u64>) -> Vec<TorsionDto> {
    torsion.iter().map(|(g, &count)| TorsionDto { prime: g.prime, power: g.exponent, count }).collect()
}

impl TableDto {
    pub fn from_table(table: &NilTable, verified: Option<bool>) -> Self {
        let rows = table
            .rows
            .iter()
            .map(|(&degree, r)| RowDto { degree, free_rank: r.free_rank, torsion: torsion_dto(&r.torsion) })
            .collect();
        let meta = TableMeta {
            engine_version: nilhom_core::ENGINE_VERSION.to_string(),
            classes: table.provenance.len(),
            verified,
        };
        Self { n: table.n, rows, meta }
    }

    /// The table without provenance.
    pub fn to_table(&self) -> NilTable {
        let mut table = NilTable::empty(self.n);
        for r in &self.rows {
            let torsion = r.torsion.iter().map(|t| (PrimePower::new(t.prime, t.power), t.count)).collect();
            table.rows.insert(r.degree, TableRow { free_rank: r.free_rank, torsion });
        }
        table
    }
}

/// Nonzero degrees only.
pub fn profile_rows(p: &HomologyProfile) -> Vec<RowDto> {
    p.iter()
        .filter(|(_, h)| !h.is_zero())
        .map(|(degree, h)| {
            let mut counts = BTreeMap::new();
            for g in &h.torsion {
                *counts.entry(*g).or_insert(0) += 1;
            }
            RowDto { degree, free_rank: h.free_rank, torsion: torsion_dto(&counts) }
        })
        .collect()
}

pub fn profile_from_rows(rows: &[RowDto]) -> HomologyProfile {
    let mut p = HomologyProfile::zero();
    for r in rows {
        let mut torsion = Vec::new();
        for t in &r.torsion {
            torsion.extend((0..t.count).map(|_| PrimePower::new(t.prime, t.power)));
        }
        torsion.sort();
        p.insert(r.degree, DegreeHomology { free_rank: r.free_rank, torsion });
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDto {
    pub rule: String,
    pub input: Vec<u8>,
    pub output: String,
    pub shift: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TerminalDto {
    DirectSnf,
    Acyclic,
    Cone { multiplier: u64, inner: Option<Vec<u8>> },
    Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDto {
    pub steps: Vec<StepDto>,
    pub terminal: TerminalDto,
}

impl TraceDto {
    pub fn from_trace(t: &ReductionTrace) -> Self {
        let steps = t
            .steps
            .iter()
            .map(|s| StepDto {
                rule: s.rule.name().to_string(),
                input: s.input.entries().to_vec(),
                output: s.output.clone(),
                shift: s.shift,
            })
            .collect();
        let terminal = match &t.terminal {
            Terminal::DirectSnf => TerminalDto::DirectSnf,
            Terminal::Acyclic => TerminalDto::Acyclic,
            Terminal::Permutation => TerminalDto::Permutation,
            Terminal::Cone { multiplier, inner } => {
                TerminalDto::Cone { multiplier: *multiplier, inner: inner.as_ref().map(|v| v.entries().to_vec()) }
            }
        };
        Self { steps, terminal }
    }

    /// `None` if a rule name or vector does not parse.
    pub fn to_trace(&self) -> Option<ReductionTrace> {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                Some(Step {
                    rule: Rule::from_name(&s.rule)?,
                    input: WeightVector::new(s.input.clone()).ok()?,
                    output: s.output.clone(),
                    shift: s.shift,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        let terminal = match &self.terminal {
            TerminalDto::DirectSnf => Terminal::DirectSnf,
            TerminalDto::Acyclic => Terminal::Acyclic,
            TerminalDto::Permutation => Terminal::Permutation,
            TerminalDto::Cone { multiplier, inner } => Terminal::Cone {
                multiplier: *multiplier,
                inner: match inner {
                    Some(v) => Some(WeightVector::new(v.clone()).ok()?),
                    None => None,
                },
            },
        };
        Some(ReductionTrace { steps, terminal })
    }
}

/// One cache document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub engine_version: String,
    pub n: usize,
    pub weight: Vec<u8>,
    pub profile: Vec<RowDto>,
    pub trace: TraceDto,
}

impl CacheEntry {
    pub fn new(w: &WeightVector, e: &MemoEntry) -> Self {
        Self {
            engine_version: nilhom_core::ENGINE_VERSION.to_string(),
            n: w.n(),
            weight: w.entries().to_vec(),
            profile: profile_rows(&e.profile),
            trace: TraceDto::from_trace(&e.trace),
        }
    }

    /// The memo entry, if the document belongs to `w` and this engine.
    pub fn to_memo(&self, w: &WeightVector) -> Option<MemoEntry> {
        if self.engine_version != nilhom_core::ENGINE_VERSION || self.weight != w.entries() {
            return None;
        }
        Some(MemoEntry { profile: profile_from_rows(&self.profile), trace: self.trace.to_trace()? })
    }
}
