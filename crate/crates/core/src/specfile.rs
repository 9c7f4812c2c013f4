//! JSON algebra descriptions and the bundled presets.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qtorus::{AlgebraSpec, Caps, ClusterData};

/// Optional overrides of [`Caps`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsFile {
    pub max_basis: Option<u64>,
    pub max_det: Option<usize>,
    pub max_subsets: Option<usize>,
    pub max_gb_steps: Option<usize>,
}

impl CapsFile {
    pub fn apply(&self, caps: Caps) -> Caps {
        Caps {
            max_basis: self.max_basis.unwrap_or(caps.max_basis),
            max_det: self.max_det.unwrap_or(caps.max_det),
            max_subsets: self.max_subsets.unwrap_or(caps.max_subsets),
            max_gb_steps: self.max_gb_steps.unwrap_or(caps.max_gb_steps),
        }
    }
}

/// On-disk form: `ex` is 1-based and `btilde` is `n × |ex|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub n: usize,
    pub ell: u32,
    pub lambda: Vec<Vec<i64>>,
    pub invertible: Vec<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ex: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub btilde: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<CapsFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

pub const PRESETS: &[(&str, &str)] = &[
    ("qp2", include_str!("../presets/qp2.json")),
    ("qp3", include_str!("../presets/qp3.json")),
    ("qtorus3", include_str!("../presets/qtorus3.json")),
    ("cluster-a2", include_str!("../presets/cluster-a2.json")),
];

impl SpecFile {
    pub fn parse(src: &str) -> Result<SpecFile> {
        serde_json::from_str(src).map_err(|e| Error::Parse {
            offset: line_offset(src, e.line(), e.column()),
            message: format!("line {}, column {}: {e}", e.line(), e.column()),
        })
    }

    pub fn preset(name: &str) -> Result<SpecFile> {
        let src = PRESETS
            .iter()
            .find(|(n, _)| *n == name.trim_end_matches(".json"))
            .map(|(_, s)| *s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown preset {name}")))?;
        Self::parse(src)
    }

    /// Reads a file, falling back to a preset name when no such file exists.
    pub fn load(path: &str) -> Result<SpecFile> {
        if Path::new(path).is_file() {
            let src = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidParameter(format!("cannot read {path}: {e}")))?;
            Self::parse(&src)
        } else {
            Self::preset(path)
        }
    }

    pub fn to_spec(&self) -> Result<AlgebraSpec> {
        if self.lambda.len() != self.n || self.lambda.iter().any(|r| r.len() != self.n) {
            return Err(Error::InvalidParameter(format!("lambda must be {0} x {0}", self.n)));
        }
        let mut spec = AlgebraSpec::new(self.ell, self.lambda.clone(), self.invertible.clone())?;
        match (&self.ex, &self.btilde, &self.d) {
            (None, None, None) => {}
            (Some(ex), Some(btilde), Some(d)) => {
                if let Some(&bad) = ex.iter().find(|&&i| i == 0 || i > self.n) {
                    return Err(Error::InvalidParameter(format!(
                        "exchangeable index {bad} out of range 1..={}",
                        self.n
                    )));
                }
                spec = spec.with_cluster(ClusterData {
                    ex: ex.iter().map(|i| i - 1).collect(),
                    btilde: btilde.clone(),
                    d: d.clone(),
                })?;
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "cluster data needs all of ex, btilde and d".into(),
                ))
            }
        }
        let caps = self.caps.clone().unwrap_or_default().apply(Caps::default());
        Ok(spec.with_caps(caps))
    }
}

fn line_offset(src: &str, line: usize, column: usize) -> usize {
    let before: usize = src.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    before + column.saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_load() {
        for (name, _) in PRESETS {
            let spec = SpecFile::preset(name).unwrap().to_spec().unwrap();
            assert!(spec.rank() >= 2, "{name}");
        }
        let a2 = SpecFile::preset("cluster-a2").unwrap().to_spec().unwrap();
        assert_eq!(a2.cluster().unwrap().ex, vec![0, 1]);
    }

    #[test]
    fn validation_errors() {
        let bad = r#"{"n": 2, "ell": 2, "lambda": [[0, 1], [1, 0]], "invertible": [false, false]}"#;
        assert!(matches!(
            SpecFile::parse(bad).unwrap().to_spec(),
            Err(Error::InvalidParameter(_))
        ));
        let broken = "{\n  \"n\": 2,\n  \"ell\": 2,\n  \"lambda\": [[0, 1], [-1 0]]\n}";
        match SpecFile::parse(broken) {
            Err(Error::Parse { message, .. }) => assert!(message.starts_with("line 4"), "{message}"),
            other => panic!("{other:?}"),
        }
        let partial = r#"{"n": 2, "ell": 2, "lambda": [[0, 1], [-1, 0]], "invertible": [false, false], "ex": [1]}"#;
        assert!(SpecFile::parse(partial).unwrap().to_spec().is_err());
    }

    #[test]
    fn caps_override() {
        let src = r#"{"n": 2, "ell": 2, "lambda": [[0, 1], [-1, 0]], "invertible": [false, false], "caps": {"max_det": 3}}"#;
        let spec = SpecFile::parse(src).unwrap().to_spec().unwrap();
        assert_eq!(spec.caps().max_det, 3);
        assert_eq!(spec.caps().max_basis, Caps::default().max_basis);
    }
}
