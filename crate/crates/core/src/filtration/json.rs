//! JSON encodings for matrices and filtrations. Entries use the scalar
//! encoding of `TwistedScalar`, optionally as a `{num, den}` fraction; a
//! bare `"num/den"` string is accepted for rational entries.

use serde::{Deserialize, Serialize};

use super::{Direction, ExactMatrix, Filtration, FiltrationError, SymFrac, Subspace};
use crate::scalar::{ScalarJson, TwistedScalar};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum EntryJson {
    Scalar(ScalarJson),
    Frac { num: ScalarJson, den: ScalarJson },
    Rational(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<EntryJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StepJson {
    pub index: i32,
    pub basis: Vec<Vec<EntryJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FiltrationJson {
    pub direction: String,
    pub ambient: usize,
    pub steps: Vec<StepJson>,
}

/// Input document for the command-line MHS tools.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct MhsInput {
    #[serde(rename = "N")]
    pub n: Option<MatrixJson>,
    #[serde(rename = "Q")]
    pub q: Option<MatrixJson>,
    pub center: Option<i32>,
    pub weight: Option<i32>,
    #[serde(rename = "W")]
    pub w: Option<FiltrationJson>,
    #[serde(rename = "M")]
    pub m: Option<FiltrationJson>,
    #[serde(rename = "F")]
    pub f: Option<FiltrationJson>,
}

fn decode_scalar(raw: &ScalarJson) -> Result<TwistedScalar, FiltrationError> {
    TwistedScalar::from_json(raw)
        .ok_or_else(|| FiltrationError::Decode(format!("bad scalar {raw:?}")))
}

impl EntryJson {
    pub fn encode(x: &SymFrac) -> Self {
        match x.as_scalar() {
            Some(s) => EntryJson::Scalar(s.to_json()),
            None => EntryJson::Frac { num: x.numer().to_json(), den: x.denom().to_json() },
        }
    }

    pub fn decode(&self) -> Result<SymFrac, FiltrationError> {
        match self {
            EntryJson::Scalar(s) => Ok(SymFrac::scalar(decode_scalar(s)?)),
            EntryJson::Frac { num, den } => {
                let den = decode_scalar(den)?;
                if crate::ring::Ring::is_zero(&den) {
                    return Err(FiltrationError::Decode("zero denominator".into()));
                }
                Ok(SymFrac::new(decode_scalar(num)?, den))
            }
            EntryJson::Rational(text) => crate::ring::parse_rat(text)
                .map(SymFrac::rat)
                .ok_or_else(|| FiltrationError::Decode(format!("bad rational {text:?}"))),
        }
    }
}

fn decode_vectors(rows: &[Vec<EntryJson>]) -> Result<Vec<Vec<SymFrac>>, FiltrationError> {
    rows.iter().map(|r| r.iter().map(EntryJson::decode).collect()).collect()
}

impl ExactMatrix {
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows(),
            cols: self.cols(),
            entries: (0..self.rows())
                .map(|i| self.row(i).iter().map(EntryJson::encode).collect())
                .collect(),
        }
    }

    pub fn from_json(raw: &MatrixJson) -> Result<Self, FiltrationError> {
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(FiltrationError::Decode("matrix shape does not match entries".into()));
        }
        if raw.rows == 0 {
            return Ok(ExactMatrix::zeros(0, raw.cols));
        }
        Ok(ExactMatrix::from_rows(decode_vectors(&raw.entries)?))
    }
}

impl Filtration {
    pub fn to_json(&self) -> FiltrationJson {
        FiltrationJson {
            direction: match self.direction() {
                Direction::Increasing => "increasing".into(),
                Direction::Decreasing => "decreasing".into(),
            },
            ambient: self.ambient(),
            steps: self
                .steps()
                .iter()
                .map(|(&index, s)| StepJson {
                    index,
                    basis: s
                        .vectors()
                        .iter()
                        .map(|v| v.iter().map(EntryJson::encode).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(raw: &FiltrationJson) -> Result<Self, FiltrationError> {
        let direction = match raw.direction.as_str() {
            "increasing" => Direction::Increasing,
            "decreasing" => Direction::Decreasing,
            other => return Err(FiltrationError::Decode(format!("unknown direction {other}"))),
        };
        let mut steps = std::collections::BTreeMap::new();
        for step in &raw.steps {
            let vecs = decode_vectors(&step.basis)?;
            if let Some(v) = vecs.iter().find(|v| v.len() != raw.ambient) {
                return Err(FiltrationError::DimensionMismatch {
                    expected: raw.ambient,
                    got: v.len(),
                });
            }
            steps.insert(step.index, Subspace::span(raw.ambient, &vecs));
        }
        Filtration::new(direction, raw.ambient, steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, Ring};

    #[test]
    fn matrix_round_trip() {
        let c = SymFrac::scalar(TwistedScalar::c());
        let half = SymFrac::rat(rat(1, 2));
        let frac = SymFrac::one().div(&SymFrac::one().add(&c));
        let m = ExactMatrix::from_rows(vec![vec![c, half], vec![frac, SymFrac::zero()]]);
        let text = serde_json::to_string(&m.to_json()).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ExactMatrix::from_json(&back).unwrap(), m);
    }

    #[test]
    fn plain_rational_entries() {
        let raw: MatrixJson =
            serde_json::from_str(r#"{"rows":1,"cols":2,"entries":[["-25/6", [["0,1","200"]]]]}"#).unwrap();
        let m = ExactMatrix::from_json(&raw).unwrap();
        assert_eq!(m.get(0, 0), &SymFrac::rat(rat(-25, 6)));
        assert_eq!(m.get(0, 1), &SymFrac::scalar(TwistedScalar::c().mul_rat(&rat(200, 1))));
    }

    #[test]
    fn filtration_round_trip() {
        let f = Filtration::increasing(
            3,
            [(2, Subspace::coordinate(3, &[2])), (4, Subspace::coordinate(3, &[1, 2]))],
        )
        .unwrap();
        let back = Filtration::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
    }
}
