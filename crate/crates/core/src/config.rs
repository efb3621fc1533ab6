//! Resource bounds for explicit computation.
//!
//! Defaults can be overridden through the `HALLFRAT_BOUNDS` environment
//! variable, a comma-separated list of `key=value` pairs, for example
//! `HALLFRAT_BOUNDS=enumeration=5000,max_order=1000000`.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const BOUNDS_ENV: &str = "HALLFRAT_BOUNDS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest group order for which subgroups are enumerated.
    pub enumeration: u64,
    /// Largest group order for the naive-closure oracle.
    pub closure_oracle: u64,
    /// Largest group order for element-wise normalizer scans.
    pub brute_normalizer: u64,
    /// Largest permutation degree for explicit builds.
    pub max_degree: usize,
    /// Largest group order for explicit builds.
    pub max_order: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            enumeration: 2000,
            closure_oracle: 5000,
            brute_normalizer: 10_000,
            max_degree: 100_000,
            max_order: 100_000_000,
        }
    }
}

impl Bounds {
    pub fn parse_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                Error::Semantic(format!("bound override {item:?} is not key=value"))
            })?;
            let value: u64 = value.trim().parse().map_err(|_| {
                Error::Semantic(format!("bound override {item:?} has a non-numeric value"))
            })?;
            match key.trim() {
                "enumeration" => self.enumeration = value,
                "closure_oracle" => self.closure_oracle = value,
                "brute_normalizer" => self.brute_normalizer = value,
                "max_degree" => self.max_degree = value as usize,
                "max_order" => self.max_order = value,
                other => {
                    return Err(Error::Semantic(format!("unknown bound {other:?}")));
                }
            }
        }
        Ok(self)
    }

    /// Process-wide bounds: defaults plus any environment overrides.
    /// A malformed override is ignored with a warning on stderr.
    pub fn global() -> &'static Bounds {
        static BOUNDS: OnceLock<Bounds> = OnceLock::new();
        BOUNDS.get_or_init(|| match std::env::var(BOUNDS_ENV) {
            Ok(spec) => Bounds::default().parse_overrides(&spec).unwrap_or_else(|e| {
                eprintln!("warning: ignoring {BOUNDS_ENV}: {e}");
                Bounds::default()
            }),
            Err(_) => Bounds::default(),
        })
    }

    pub fn check_enumeration(&self, order: u64) -> Result<()> {
        if order > self.enumeration {
            return Err(Error::BoundExceeded {
                what: "group order for enumeration",
                value: order,
                limit: self.enumeration,
            });
        }
        Ok(())
    }
}
