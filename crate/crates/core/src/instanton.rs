//! Gromov–Witten / BPS tables and the multicover relation
//! `N_D = Σ_{k|D} n_{D/k} / k^3`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{as_integer, mobius, parse_rat, rat_to_string, rint, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("BPS number at degree {degree} is not an integer: {value}")]
    NonIntegral { degree: u32, value: String },
    #[error("malformed table: {0}")]
    Decode(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstantonEntry {
    pub degree: u32,
    /// Rational Gromov–Witten invariant.
    pub gw: Rat,
    /// Integer BPS (instanton) number.
    pub bps: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InstantonTable {
    entries: Vec<InstantonEntry>,
}

impl InstantonTable {
    /// Builds from `N_1..N_D`, inverting the multicover relation. A
    /// non-integer BPS number is a hard failure.
    pub fn from_gw(gw: Vec<Rat>) -> Result<Self, TableError> {
        let mut entries = Vec::with_capacity(gw.len());
        for d in 1..=gw.len() as u64 {
            let mut n = rint(0);
            for k in 1..=d {
                if d % k == 0 {
                    let mu = mobius(k);
                    if mu != 0 {
                        n += &gw[(d / k - 1) as usize] * Rat::new(mu.into(), (k * k * k).into());
                    }
                }
            }
            let bps = as_integer(&n).ok_or_else(|| TableError::NonIntegral {
                degree: d as u32,
                value: n.to_string(),
            })?;
            entries.push(InstantonEntry { degree: d as u32, gw: gw[d as usize - 1].clone(), bps });
        }
        Ok(InstantonTable { entries })
    }

    pub fn entries(&self) -> &[InstantonEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `N_d`, zero outside the table.
    pub fn gw(&self, d: u32) -> Rat {
        self.entries
            .get(d as usize - 1)
            .map(|e| e.gw.clone())
            .unwrap_or_else(|| rint(0))
    }

    pub fn bps(&self, d: u32) -> Option<&BigInt> {
        self.entries.get(d as usize - 1).map(|e| &e.bps)
    }

    pub fn truncated(&self, upto: usize) -> Self {
        InstantonTable { entries: self.entries.iter().take(upto).cloned().collect() }
    }

    /// Re-sums `Σ_{k|D} n_{D/k}/k^3` and compares with the stored `N_D`.
    pub fn multicover_holds(&self) -> bool {
        self.entries.iter().all(|e| {
            let d = e.degree as u64;
            let mut sum = rint(0);
            for k in 1..=d {
                if d % k == 0 {
                    let n = &self.entries[(d / k - 1) as usize].bps;
                    sum += Rat::new(n.clone(), BigInt::from(k * k * k));
                }
            }
            sum == e.gw
        })
    }

    /// CSV with columns `d,N_d,n_d`; rationals as `num/den`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,N_d,n_d\n");
        for e in &self.entries {
            out.push_str(&format!("{},{},{}\n", e.degree, rat_to_string(&e.gw), e.bps));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, TableError> {
        let mut gw = Vec::new();
        for (i, line) in text.lines().enumerate().skip(1) {
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(TableError::Decode(format!("line {}: expected 3 columns", i + 1)));
            }
            gw.push(
                parse_rat(cols[1])
                    .ok_or_else(|| TableError::Decode(format!("line {}: bad N_d", i + 1)))?,
            );
        }
        Self::from_gw(gw)
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            entries: self
                .entries
                .iter()
                .map(|e| EntryJson {
                    d: e.degree,
                    gw: rat_to_string(&e.gw),
                    bps: e.bps.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(raw: &TableJson) -> Result<Self, TableError> {
        let gw = raw
            .entries
            .iter()
            .map(|e| parse_rat(&e.gw).ok_or_else(|| TableError::Decode(format!("d={}", e.d))))
            .collect::<Result<Vec<_>, _>>()?;
        let table = Self::from_gw(gw)?;
        for (e, raw_e) in table.entries.iter().zip(&raw.entries) {
            if e.bps.to_string() != raw_e.bps || e.degree != raw_e.d {
                return Err(TableError::Decode(format!("inconsistent entry d={}", raw_e.d)));
            }
        }
        Ok(table)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub d: u32,
    #[serde(rename = "N_d")]
    pub gw: String,
    #[serde(rename = "n_d")]
    pub bps: String,
}
