//! Polyakov spec documents (JSON) with top-level keys `closed_surface`,
//! `area_g`, `area_h`, `corners`, `interior_nodes`, `boundary_nodes`.

use std::path::Path;

use sectordet::polyakov::{integrated_polyakov, variational_polyakov, CurvilinearDomainSpec};

use crate::CliError;

pub fn read_spec(path: &Path) -> Result<CurvilinearDomainSpec, CliError> {
    let text = std::fs::read_to_string(path)?;
    parse_spec(&text)
}

pub fn parse_spec(text: &str) -> Result<CurvilinearDomainSpec, CliError> {
    let spec: CurvilinearDomainSpec = serde_json::from_str(text)?;
    spec.validate()?;
    Ok(spec)
}

/// (variational, integrated).
pub fn evaluate(spec: &CurvilinearDomainSpec) -> Result<(f64, f64), CliError> {
    Ok((variational_polyakov(spec)?, integrated_polyakov(spec)?))
}
