//! Domain configuration file: a flat JSON document naming the grid extents.
//!
//! Unknown keys are rejected so that a typo in an extent name fails fast
//! instead of silently falling back to a default.

use decomp_core::{GridShape, Layout};
use serde::Deserialize;
use std::path::Path;

use crate::CliError;

fn default_element_bytes() -> usize {
    16 // complex double precision
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub naky: usize,
    pub nakx: usize,
    /// Field-parallel grid half-extent; the full extent is `2*ntgrid + 1`.
    pub ntgrid: usize,
    pub nlambda: usize,
    pub negrid: usize,
    pub nspec: usize,
    /// Full X extent; defaults to the 3/2 rule over `nakx`.
    #[serde(default)]
    pub inx: Option<usize>,
    /// Full Y extent; defaults to the 3/2 rule over `naky`.
    #[serde(default)]
    pub iny: Option<usize>,
    #[serde(default = "default_element_bytes")]
    pub element_bytes: usize,
    /// Default layout, overridable on the command line.
    #[serde(default)]
    pub layout: Option<String>,
    /// Default rank count, overridable on the command line.
    #[serde(default)]
    pub nprocs: Option<usize>,
}

impl DomainConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }

    pub fn shape(&self) -> Result<GridShape, CliError> {
        GridShape {
            nakx: self.nakx,
            naky: self.naky,
            inx: self.inx.unwrap_or_else(|| GridShape::full_extent(self.nakx)),
            iny: self.iny.unwrap_or_else(|| GridShape::full_extent(self.naky)),
            nig: 2 * self.ntgrid + 1,
            nsign: 2,
            nlambda: self.nlambda,
            negrid: self.negrid,
            nspec: self.nspec,
            element_bytes: self.element_bytes,
        }
        .validated()
        .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn default_layout(&self) -> Result<Option<Layout>, CliError> {
        self.layout
            .as_deref()
            .map(|s| s.parse().map_err(|e: decomp_core::Error| CliError::Config(e.to_string())))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_config_with_derived_extents() {
        let cfg: DomainConfig = serde_json::from_str(
            r#"{"naky": 32, "nakx": 32, "ntgrid": 15, "nlambda": 32, "negrid": 8, "nspec": 2}"#,
        )
        .unwrap();
        let shape = cfg.shape().unwrap();
        assert_eq!(shape.nig, 31);
        assert_eq!(shape.inx, 48);
        assert_eq!(shape.iny, 48);
        assert_eq!(shape.element_bytes, 16);
    }

    #[test]
    fn rejects_unknown_keys() {
        let parsed: Result<DomainConfig, _> = serde_json::from_str(
            r#"{"naky": 4, "nakx": 4, "ntgrid": 2, "nlambda": 2, "negrid": 2, "nspec": 2, "nlamda": 3}"#,
        );
        assert!(parsed.is_err());
    }

    #[test]
    fn rejects_invalid_extents() {
        let cfg: DomainConfig = serde_json::from_str(
            r#"{"naky": 4, "nakx": 4, "inx": 2, "ntgrid": 2, "nlambda": 2, "negrid": 2, "nspec": 2}"#,
        )
        .unwrap();
        assert!(matches!(cfg.shape(), Err(CliError::Config(_))));
    }
}
