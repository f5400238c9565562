//! JSON run configuration.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use torsion_core::lie::{EllipticClass, GHighestWeight};
use torsion_core::torsion::OrbifoldData;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(#[from] torsion_core::Error),
    #[error("invalid config: {0}")]
    Range(&'static str),
}

/// Rotation numerators of one cuspidal elliptic class: a single `p` for
/// `n = 1`, or one per rotation block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Numerators {
    One(u32),
    Many(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticEntry {
    pub p: Numerators,
    pub q: u32,
    #[serde(default = "unit_weight")]
    pub weight: f64,
}

fn unit_weight() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub n: usize,
    pub volume: f64,
    pub kappa: u32,
    pub base_tau: Vec<i64>,
    #[serde(default)]
    pub cusp_elliptic: Vec<EllipticEntry>,
    pub m_min: u64,
    pub m_max: u64,
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let config: Self = serde_json::from_str(text)?;
        config.orbifold()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Validated geometry; the `m`-range is checked as well.
    pub fn orbifold(&self) -> Result<OrbifoldData, ConfigError> {
        if self.m_min > self.m_max {
            return Err(ConfigError::Range("m_min exceeds m_max"));
        }
        if self.base_tau.len() != self.n + 1 {
            return Err(ConfigError::Range("base_tau needs n + 1 coordinates"));
        }
        let classes = self
            .cusp_elliptic
            .iter()
            .map(|e| {
                let numerators = match &e.p {
                    Numerators::One(p) => vec![*p; self.n],
                    Numerators::Many(ps) => ps.clone(),
                };
                if numerators.len() != self.n {
                    return Err(ConfigError::Range("elliptic entry needs n rotation numerators"));
                }
                Ok(EllipticClass::new(numerators, e.q, e.weight)?)
            })
            .collect::<Result<Vec<_>, ConfigError>>()?;
        let base = GHighestWeight::new(self.base_tau.clone())?;
        Ok(OrbifoldData::new(self.n, self.volume, self.kappa, classes, base)?)
    }

    /// The model orbifold: one cusp, one order-two class, unit volume,
    /// base `(1, 1)`.
    pub fn model(m_max: u64) -> Self {
        Self {
            n: 1,
            volume: 1.0,
            kappa: 1,
            base_tau: vec![1, 1],
            cusp_elliptic: vec![EllipticEntry {
                p: Numerators::One(1),
                q: 2,
                weight: 1.0,
            }],
            m_min: 1,
            m_max,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_layout() {
        let text = r#"{"n": 1, "volume": 2.5, "kappa": 1, "base_tau": [1, 1],
            "cusp_elliptic": [{"p": 1, "q": 3, "weight": 0.5}, {"p": 1, "q": 2}],
            "m_min": 1, "m_max": 20}"#;
        let config = Config::from_json(text).unwrap();
        let orb = config.orbifold().unwrap();
        assert_eq!(orb.cusp_elliptic().len(), 2);
        assert_eq!(orb.cusp_elliptic()[0].order(), 3);
        assert_eq!(orb.cusp_elliptic()[0].weight(), 0.5);
        assert_eq!(orb.cusp_elliptic()[1].weight(), 1.0);
    }

    #[test]
    fn rejects_invalid_geometry() {
        let bad = [
            r#"{"n": 1, "volume": 1, "kappa": 1, "base_tau": [1, 0], "m_min": 1, "m_max": 2}"#,
            r#"{"n": 1, "volume": 0, "kappa": 1, "base_tau": [1, 1], "m_min": 1, "m_max": 2}"#,
            r#"{"n": 1, "volume": 1, "kappa": 1, "base_tau": [1, 1], "m_min": 3, "m_max": 2}"#,
            r#"{"n": 1, "volume": 1, "kappa": 1, "base_tau": [1, 1, 1], "m_min": 1, "m_max": 2}"#,
            r#"{"n": 1, "volume": 1, "kappa": 1, "base_tau": [1, 1], "m_min": 1, "m_max": 2,
                "cusp_elliptic": [{"p": 2, "q": 2}]}"#,
            r#"{"n": 1, "volume": 1, "kappa": 1, "base_tau": [1, 1], "m_min": 1, "m_max": 2, "x": 0}"#,
        ];
        for text in bad {
            assert!(Config::from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn higher_rank_classes_take_one_numerator_per_block() {
        let text = r#"{"n": 2, "volume": 1, "kappa": 2, "base_tau": [2, 1, 1],
            "cusp_elliptic": [{"p": [1, 2], "q": 5}], "m_min": 0, "m_max": 3}"#;
        let orb = Config::from_json(text).unwrap().orbifold().unwrap();
        assert_eq!(orb.cusp_elliptic()[0].numerators(), &[1, 2]);
        let short = text.replace("[1, 2]", "[1]");
        assert!(Config::from_json(&short).is_err());
    }
}
