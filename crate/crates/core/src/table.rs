//! Relative errors of the kinetic-energy approximations for real atoms.

use rayon::prelude::*;
use serde::Serialize;

use crate::atomic_data::{atom_density, StoAtomRecord};
use crate::correction::{CorrectionTable, DeltaKind};
use crate::error::Result;
use crate::kedf::{gradient_expansion, EnergyBreakdown, GridSettings, RadialGrid};

/// Closed-subshell atoms of the comparison table.
pub const TABLE_ATOMS: [&str; 5] = ["He", "Ne", "Ar", "Kr", "Xe"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub symbol: String,
    pub z: u32,
    pub delta_kind: DeltaKind,
    #[serde(flatten)]
    pub energies: EnergyBreakdown,
}

pub fn table_row(record: &StoAtomRecord, correction: &CorrectionTable, settings: &GridSettings) -> Result<TableRow> {
    let density = atom_density(record)?;
    let grid = RadialGrid::for_density(&density, settings)?;
    let terms = gradient_expansion(&density, &grid)?;
    let delta = correction.delta_t(record.z)?;
    Ok(TableRow {
        symbol: record.symbol.clone(),
        z: record.z,
        delta_kind: delta.kind,
        energies: EnergyBreakdown::new(&terms, delta.value, record.reference_kinetic()),
    })
}

/// One row per record, computed in parallel and ordered by `Z`.
pub fn table_rows(
    records: &[&StoAtomRecord],
    correction: &CorrectionTable,
    settings: &GridSettings,
) -> Vec<(String, Result<TableRow>)> {
    let mut sorted: Vec<&StoAtomRecord> = records.to_vec();
    sorted.sort_by_key(|r| r.z);
    sorted
        .par_iter()
        .map(|r| (r.symbol.clone(), table_row(r, correction, settings)))
        .collect()
}
