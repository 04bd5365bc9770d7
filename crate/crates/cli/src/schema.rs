//! The JSON file formats.  Rationals travel as `"p/q"` strings so nothing is
//! ever rounded; all maps are ordered so serialized output is byte-stable.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use duality_core::abacus::{ChargeVector, Multipartition};
use duality_core::arrangement::PolarizedArrangement;
use duality_core::exactlin::RatMatrix;
use duality_core::kgroup::{FixedPointPackage, LeafPoset};
use duality_core::typea::{Composition, Partition};
use duality_core::Rat;

use crate::CliError;

pub fn parse_rational(s: &str) -> Result<Rat, CliError> {
    Rat::from_str(s.trim()).map_err(|e| CliError::Parse(format!("bad rational {s:?}: {e}")))
}

pub fn rational_string(r: &Rat) -> String {
    r.to_string()
}

/// `{"d":…, "normals":[[int]], "constants":["p/q"], "objective":["p/q"]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub d: usize,
    pub normals: Vec<Vec<i64>>,
    pub constants: Vec<String>,
    pub objective: Vec<String>,
}

impl ArrangementFile {
    pub fn to_arrangement(&self) -> Result<PolarizedArrangement, CliError> {
        if self.normals.len() != self.d {
            return Err(CliError::Parse(format!(
                "normals has {} rows, d is {}",
                self.normals.len(),
                self.d
            )));
        }
        let n = self.normals.first().map_or(0, Vec::len);
        if self.normals.iter().any(|row| row.len() != n) {
            return Err(CliError::Parse("ragged normal matrix".into()));
        }
        if self.constants.len() != n {
            return Err(CliError::Parse(format!(
                "{} constants for {} hyperplanes",
                self.constants.len(),
                n
            )));
        }
        let rows: Vec<&[i64]> = self.normals.iter().map(Vec::as_slice).collect();
        let normals = RatMatrix::from_i64(&rows);
        let constants = self
            .constants
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        let objective = self
            .objective
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        PolarizedArrangement::new(normals, constants, objective)
            .map_err(|e| CliError::Precondition(e.to_string()))
    }

    pub fn from_arrangement(arr: &PolarizedArrangement) -> Self {
        let normals = (0..arr.d())
            .map(|r| {
                (0..arr.n())
                    .map(|c| {
                        let v = arr.normals().at(r, c);
                        i64::try_from(v.to_integer()).expect("normal entry fits i64")
                    })
                    .collect()
            })
            .collect();
        ArrangementFile {
            d: arr.d(),
            normals,
            constants: arr.constants().iter().map(rational_string).collect(),
            objective: arr.objective().iter().map(rational_string).collect(),
        }
    }
}

/// `{"offset":int, "parts":[int]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionFile {
    pub offset: i64,
    pub parts: Vec<usize>,
}

impl CompositionFile {
    pub fn to_composition(&self) -> Composition {
        Composition::new(self.offset, self.parts.clone())
    }
}

/// Input of `audit-s3`: the two compositions.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct S3File {
    pub mu: CompositionFile,
    pub nu: CompositionFile,
}

/// `{"e":int, "s":[int], "components":[[int]]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbacusFile {
    pub e: i64,
    pub s: Vec<i64>,
    pub components: Vec<Vec<usize>>,
}

impl AbacusFile {
    pub fn to_data(&self) -> Result<(Multipartition, ChargeVector), CliError> {
        let components = self
            .components
            .iter()
            .map(|parts| {
                Partition::new(parts.clone())
                    .map_err(|e| CliError::Parse(format!("bad partition: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if components.len() != self.s.len() {
            return Err(CliError::Parse(format!(
                "{} components for {} charges",
                components.len(),
                self.s.len()
            )));
        }
        let charges = ChargeVector::new(self.s.clone(), self.e)
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        Ok((Multipartition::new(components), charges))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PackagePoint {
    pub name: String,
    pub weights: Vec<i64>,
}

/// `{"d":int, "points":[{"name","weights"}], "order":[[a,b]], "leaf":{pt:label}}`
/// plus an optional `"leaf_order"` list of label pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PackageFile {
    pub d: usize,
    pub points: Vec<PackagePoint>,
    pub order: Vec<(String, String)>,
    pub leaf: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaf_order: Option<Vec<(String, String)>>,
}

impl PackageFile {
    pub fn to_package(&self) -> Result<FixedPointPackage, CliError> {
        let names: Vec<String> = self.points.iter().map(|p| p.name.clone()).collect();
        let weights: Vec<Vec<i64>> = self.points.iter().map(|p| p.weights.clone()).collect();
        let leaf = names
            .iter()
            .map(|n| {
                self.leaf
                    .get(n)
                    .cloned()
                    .ok_or_else(|| CliError::Parse(format!("no leaf label for point {n:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let pkg = FixedPointPackage::new(self.d, names, weights, &self.order, leaf)
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        if let Some(pairs) = &self.leaf_order {
            let mut labels: Vec<String> = self.leaf.values().cloned().collect();
            labels.sort();
            labels.dedup();
            let idx =
                |l: &String| labels.iter().position(|x| x == l).ok_or_else(|| {
                    CliError::Parse(format!("leaf_order mentions unknown label {l:?}"))
                });
            let m = labels.len();
            let mut leq = vec![vec![false; m]; m];
            for (i, row) in leq.iter_mut().enumerate() {
                row[i] = true;
            }
            for (a, b) in pairs {
                let (ia, ib) = (idx(a)?, idx(b)?);
                leq[ia][ib] = true;
            }
            for k in 0..m {
                for i in 0..m {
                    if leq[i][k] {
                        for j in 0..m {
                            if leq[k][j] {
                                leq[i][j] = true;
                            }
                        }
                    }
                }
            }
            return Ok(pkg.with_leaf_order(LeafPoset { labels, leq }));
        }
        Ok(pkg)
    }
}

/// Parse a JSON document, reporting the position on failure.
pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Parse(format!("{} at line {} column {}", e, e.line(), e.column()))
    })
}
