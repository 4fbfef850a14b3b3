//! Parallel spectrum construction and CSV export.

use std::path::Path;

use rayon::prelude::*;
use sectordet::spectral_oracle::{
    angular_modes, assemble_spectrum, check_truncation, radial_eigenvalues, Geometry, SpectrumTruncation,
};
use sectordet::OpeningAngle;

use crate::{fmt17, CliError};

/// Same table as `spectral_oracle::build_spectrum`, with one task per angular mode.
pub fn build_spectrum_parallel(
    geometry: Geometry,
    angle: &OpeningAngle,
    l_max: usize,
    n_max: usize,
) -> Result<SpectrumTruncation, CliError> {
    check_truncation(geometry, angle, l_max, n_max)?;
    let rows = angular_modes(geometry, angle, l_max)
        .par_iter()
        .map(|m| radial_eigenvalues(m.nu, n_max))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(assemble_spectrum(geometry, angle, l_max, n_max, rows)?)
}

/// Columns `nu,n,lambda_sq,multiplicity`.
pub fn write_spectrum_csv(spectrum: &SpectrumTruncation, path: &Path) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["nu", "n", "lambda_sq", "multiplicity"])?;
    for e in &spectrum.entries {
        w.write_record([fmt17(e.nu), e.n.to_string(), fmt17(e.lambda_sq), e.multiplicity.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
