//! Aggregate verdicts, the `K_{m,m2}` grid and the family scans.
//!
//! Everything here is deterministic: parallel work is collected and
//! returned in parameter order.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{real_root_report, sequence_checks, RootCountReport, SequenceFlags};
use crate::bases::{
    is_magic_positive, is_palindromic, power_to_hstar, power_to_magic, HStarVector, MagicForm,
    MagicVerdict,
};
use crate::counting::{count_graph_dual, ehrhart_from_counts, GraphShape, GraphSpec};
use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::families::{cycle_dual, stasheff_aux, stasheff_dual, FamilyId};

/// Where an Ehrhart polynomial comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Family(FamilyId),
    Graph(GraphShape),
    GraphFile(GraphSpec),
}

impl Source {
    /// Family strings win over graph shortcuts (`cycle:4` is the family of
    /// dimension 4); a leading `graph:` forces the graph reading.
    pub fn parse(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("graph:") {
            return Ok(Source::Graph(rest.parse()?));
        }
        match s.parse::<FamilyId>() {
            Ok(f) => Ok(Source::Family(f)),
            Err(family_err) => match s.parse::<GraphShape>() {
                Ok(g) => Ok(Source::Graph(g)),
                Err(_) => Err(family_err),
            },
        }
    }

    pub fn from_graph_file(path: &Path) -> Result<Self> {
        Ok(Source::GraphFile(GraphSpec::from_file(path)?))
    }

    pub fn dimension(&self) -> usize {
        match self {
            Source::Family(f) => f.d,
            Source::Graph(g) => g.dimension(),
            Source::GraphFile(g) => g.dimension(),
        }
    }

    /// The Ehrhart polynomial; graphs go through counting and interpolation.
    pub fn ehrhart(&self, budget: u64) -> Result<Poly> {
        match self {
            Source::Family(f) => Ok(f.ehrhart()),
            Source::Graph(g) => {
                ehrhart_from_counts(|n| Ok(g.count(n, budget)?.count), g.dimension())
            }
            Source::GraphFile(g) => {
                ehrhart_from_counts(|n| count_graph_dual(g, n, budget), g.dimension())
            }
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Family(id) => write!(f, "{id}"),
            Source::Graph(g) => write!(f, "graph:{g}"),
            Source::GraphFile(g) => write!(f, "graph-file({} vertices)", g.vertices),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HStarSummary {
    #[serde(flatten)]
    pub vector: HStarVector,
    pub integral: bool,
    pub flags: SequenceFlags,
    pub roots: RootCountReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub source: String,
    pub d: usize,
    pub power: Poly,
    pub magic: MagicForm,
    pub magic_verdict: MagicVerdict,
    pub magic_palindromic: bool,
    pub hstar: HStarSummary,
}

impl CheckReport {
    pub fn magic_positive(&self) -> bool {
        self.magic_verdict.is_positive()
    }
}

/// Every verdict for one polynomial of ambient degree `d`.
pub fn check_poly(source: String, p: &Poly, d: usize) -> Result<CheckReport> {
    let magic = power_to_magic(p, d)?;
    let hv = power_to_hstar(p, d)?;
    let hstar = HStarSummary {
        integral: hv.h.iter().all(|x| x.is_integer()),
        flags: sequence_checks(&hv.h),
        roots: real_root_report(&hv.as_poly())?,
        vector: hv,
    };
    Ok(CheckReport {
        source,
        d,
        power: p.clone(),
        magic_verdict: is_magic_positive(&magic),
        magic_palindromic: is_palindromic(&magic),
        magic,
        hstar,
    })
}

pub fn check_source(src: &Source, budget: u64) -> Result<CheckReport> {
    let p = src.ehrhart(budget)?;
    check_poly(src.to_string(), &p, src.dimension())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableCell {
    pub m: usize,
    pub m2: usize,
    /// `None` for cells outside the requested `m + m2` bound.
    pub magic_positive: Option<bool>,
}

/// Magic positivity of the `K_{m,m2}` duals for `2 <= m <= max_m`,
/// `2 <= m2 <= max_m2`, computed where `m + m2 <= max_sum`. Row-major.
pub fn bipartite_table(max_m: usize, max_m2: usize, max_sum: usize) -> Result<Vec<TableCell>> {
    let cells: Vec<(usize, usize)> = (2..=max_m)
        .flat_map(|m| (2..=max_m2).map(move |m2| (m, m2)))
        .collect();
    cells
        .into_par_iter()
        .map(|(m, m2)| {
            if m + m2 > max_sum {
                return Ok(TableCell {
                    m,
                    m2,
                    magic_positive: None,
                });
            }
            let shape = GraphShape::CompleteBipartite { m, m2 };
            let p = Source::Graph(shape).ehrhart(u64::MAX)?;
            let magic = power_to_magic(&p, shape.dimension())?;
            Ok(TableCell {
                m,
                m2,
                magic_positive: Some(is_magic_positive(&magic).is_positive()),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    Cycle,
    Stasheff,
    /// The auxiliary sequence `E_d - (n/2) E_{d-1}` of the Stasheff family.
    StasheffAux,
}

impl FromStr for ScanKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycle" => Ok(ScanKind::Cycle),
            "stasheff" => Ok(ScanKind::Stasheff),
            "stasheff_aux" => Ok(ScanKind::StasheffAux),
            other => Err(Error::Parse(format!("unknown scan kind {other:?}"))),
        }
    }
}

impl ScanKind {
    pub fn min_d(self) -> usize {
        match self {
            ScanKind::Cycle => 2,
            ScanKind::Stasheff | ScanKind::StasheffAux => 1,
        }
    }

    fn poly(self, d: usize) -> Poly {
        match self {
            ScanKind::Cycle => cycle_dual(d),
            ScanKind::Stasheff => stasheff_dual(d),
            ScanKind::StasheffAux => stasheff_aux(d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub d: usize,
    pub verdict: MagicVerdict,
    pub palindromic: bool,
}

pub fn scan_one(kind: ScanKind, d: usize) -> Result<ScanRow> {
    let magic = power_to_magic(&kind.poly(d), d)?;
    Ok(ScanRow {
        d,
        verdict: is_magic_positive(&magic),
        palindromic: is_palindromic(&magic),
    })
}

/// Scans `min_d..=max_d` and hands rows to `emit` in increasing `d`.
///
/// Work is done in ordered batches of `batch` dimensions, so output order
/// and content do not depend on the number of worker threads.
pub fn scan<F>(kind: ScanKind, max_d: usize, batch: usize, mut emit: F) -> Result<Vec<ScanRow>>
where
    F: FnMut(&ScanRow),
{
    if kind == ScanKind::Stasheff || kind == ScanKind::StasheffAux {
        // fill the memo table serially before fanning out
        let _ = stasheff_dual(max_d);
    }
    let dims: Vec<usize> = (kind.min_d()..=max_d).collect();
    let mut rows = Vec::with_capacity(dims.len());
    for chunk in dims.chunks(batch.max(1)) {
        let done: Vec<ScanRow> = chunk
            .par_iter()
            .map(|&d| scan_one(kind, d))
            .collect::<Result<_>>()?;
        for row in done {
            emit(&row);
            rows.push(row);
        }
    }
    Ok(rows)
}
