//! Sidecar metadata for generated gap instances (JSON).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::gadget::{shutter_pairs, GapInstance, Permutation, PermutationTable};
use super::params::GadgetParams;
use crate::error::{Error, Result};

pub const META_FORMAT: &str = "labelcut-gadget 1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub mu: usize,
    pub nu: usize,
    pub chain: usize,
    /// One-based images `sigma(1), ..., sigma(d)`.
    pub sigma: Vec<usize>,
}

/// Everything needed to rebuild a [`PermutationTable`] exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GadgetMeta {
    pub format: String,
    pub params: GadgetParams,
    pub chains: Vec<ChainRecord>,
}

impl GadgetMeta {
    pub fn of(gap: &GapInstance) -> Self {
        let p = gap.params;
        let chains = shutter_pairs(p.k)
            .into_iter()
            .flat_map(|(mu, nu)| (1..=p.h).map(move |i| (mu, nu, i)))
            .map(|(mu, nu, chain)| ChainRecord {
                mu,
                nu,
                chain,
                sigma: gap.permutations.get(mu, nu, chain).images(),
            })
            .collect();
        GadgetMeta {
            format: META_FORMAT.to_string(),
            params: p,
            chains,
        }
    }

    pub fn table(&self) -> Result<PermutationTable> {
        if self.format != META_FORMAT {
            return Err(Error::Version {
                found: self.format.clone(),
                expected: META_FORMAT.to_string(),
            });
        }
        let p = self.params;
        p.validate()?;
        let expected: Vec<(usize, usize, usize)> = shutter_pairs(p.k)
            .into_iter()
            .flat_map(|(mu, nu)| (1..=p.h).map(move |i| (mu, nu, i)))
            .collect();
        if expected.len() != self.chains.len() {
            return Err(Error::input(format!(
                "metadata lists {} chains, expected {}",
                self.chains.len(),
                expected.len()
            )));
        }
        let mut perms = Vec::with_capacity(expected.len());
        for (want, rec) in expected.into_iter().zip(&self.chains) {
            if want != (rec.mu, rec.nu, rec.chain) {
                return Err(Error::input(format!(
                    "chain record ({}, {}, {}) out of layout order",
                    rec.mu, rec.nu, rec.chain
                )));
            }
            perms.push(Permutation::new(rec.sigma.clone())?);
        }
        PermutationTable::from_parts(p.k, p.d, p.h, perms)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("metadata serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// `<instance path>.meta.json`
pub fn sidecar_path(instance_path: impl AsRef<Path>) -> PathBuf {
    let mut s = instance_path.as_ref().as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{assemble, make_gap_instance};

    #[test]
    fn meta_rebuilds_the_instance() {
        let gap = make_gap_instance(&GadgetParams::new(3, 4, 2, 42).unwrap()).unwrap();
        let meta = GadgetMeta::from_json(&GadgetMeta::of(&gap).to_json()).unwrap();
        let table = meta.table().unwrap();
        assert_eq!(table, gap.permutations);
        let rebuilt = assemble(&meta.params, table, false).unwrap();
        assert_eq!(rebuilt, gap);
    }

    #[test]
    fn rejects_tampered_meta() {
        let gap = make_gap_instance(&GadgetParams::new(2, 2, 1, 1).unwrap()).unwrap();
        let mut meta = GadgetMeta::of(&gap);
        meta.chains[0].sigma = vec![1, 1];
        assert!(meta.table().is_err());
        let mut meta = GadgetMeta::of(&gap);
        meta.format = "labelcut-gadget 9".into();
        assert!(matches!(meta.table(), Err(Error::Version { .. })));
    }
}
