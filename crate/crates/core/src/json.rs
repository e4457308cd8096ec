//! JSON encodings of polynomials, root lists, partitions and flats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flat::{AffineFlat, Constraint};
use crate::partitions::Partition;
use crate::poly::{c, Field, MonicPoly, NormalVector, Scalar};

/// A scalar as `[re, im]`, or a bare real number on input.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Pair([f64; 2]),
    Real(f64),
}

impl ScalarJson {
    pub fn value(self) -> Scalar {
        match self {
            ScalarJson::Pair([re, im]) => c(re, im),
            ScalarJson::Real(re) => c(re, 0.0),
        }
    }
}

impl From<Scalar> for ScalarJson {
    fn from(z: Scalar) -> Self {
        ScalarJson::Pair([z.re, z.im])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub degree: usize,
    pub coeffs: Vec<ScalarJson>,
}

impl From<&MonicPoly> for PolyJson {
    fn from(p: &MonicPoly) -> Self {
        PolyJson {
            degree: p.degree(),
            coeffs: p.coeffs().iter().map(|&z| z.into()).collect(),
        }
    }
}

impl PolyJson {
    pub fn to_poly(&self, field: Field) -> Result<MonicPoly> {
        if self.degree != self.coeffs.len() {
            return Err(Error::InvalidInput(format!(
                "degree {} but {} coefficients",
                self.degree,
                self.coeffs.len()
            )));
        }
        MonicPoly::new(self.coeffs.iter().map(|s| s.value()).collect(), field)
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::InvalidInput(format!("malformed JSON: {e}"))
}

pub fn parse_poly(text: &str, field: Field) -> Result<MonicPoly> {
    serde_json::from_str::<PolyJson>(text)
        .map_err(parse_err)?
        .to_poly(field)
}

pub fn poly_to_value(p: &MonicPoly) -> serde_json::Value {
    serde_json::to_value(PolyJson::from(p)).expect("serializable")
}

/// A root multiset: a JSON array of numbers or `[re, im]` pairs.
pub fn parse_roots(text: &str) -> Result<Vec<Scalar>> {
    let raw: Vec<ScalarJson> = serde_json::from_str(text).map_err(parse_err)?;
    Ok(raw.into_iter().map(ScalarJson::value).collect())
}

pub fn scalar_to_value(z: Scalar) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

pub fn partition_to_value(p: &Partition) -> serde_json::Value {
    serde_json::json!(p.parts())
}

pub fn parse_partition_json(text: &str) -> Result<Partition> {
    let parts: Vec<usize> = serde_json::from_str(text).map_err(parse_err)?;
    Ok(Partition::new(parts))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub normal: Vec<ScalarJson>,
    pub offset: ScalarJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatJson {
    pub ambient_dim: usize,
    pub constraints: Vec<ConstraintJson>,
}

impl From<&AffineFlat> for FlatJson {
    fn from(f: &AffineFlat) -> Self {
        FlatJson {
            ambient_dim: f.ambient_dim(),
            constraints: f
                .constraints()
                .iter()
                .map(|cn| ConstraintJson {
                    normal: cn.normal.components().iter().map(|&z| z.into()).collect(),
                    offset: cn.offset.into(),
                })
                .collect(),
        }
    }
}

impl FlatJson {
    pub fn to_flat(&self) -> Result<AffineFlat> {
        let constraints = self
            .constraints
            .iter()
            .map(|cn| {
                Constraint::new(
                    NormalVector(cn.normal.iter().map(|s| s.value()).collect()),
                    cn.offset.value(),
                )
            })
            .collect();
        AffineFlat::new(self.ambient_dim, constraints)
    }
}

pub fn flat_to_value(f: &AffineFlat) -> serde_json::Value {
    serde_json::to_value(FlatJson::from(f)).expect("serializable")
}

pub fn parse_flat(text: &str) -> Result<AffineFlat> {
    serde_json::from_str::<FlatJson>(text)
        .map_err(parse_err)?
        .to_flat()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::r;
    use crate::strata::tangent_flat;

    #[test]
    fn poly_accepts_bare_numbers() {
        let p = parse_poly(r#"{"degree":2,"coeffs":[-3,2]}"#, Field::Real).unwrap();
        assert_eq!(p.coeffs(), &[r(-3.0), r(2.0)]);
        let q = parse_poly(r#"{"degree":1,"coeffs":[[0,1]]}"#, Field::Complex).unwrap();
        assert_eq!(q.coeffs(), &[c(0.0, 1.0)]);
        assert!(parse_poly(r#"{"degree":1,"coeffs":[[0,1]]}"#, Field::Real).is_err());
        assert!(parse_poly(r#"{"degree":3,"coeffs":[1]}"#, Field::Real).is_err());
    }

    #[test]
    fn round_trips() {
        let p = MonicPoly::complex(vec![c(0.25, -1.5), r(3.0)]).unwrap();
        let text = poly_to_value(&p).to_string();
        assert_eq!(parse_poly(&text, Field::Complex).unwrap(), p);
        let f = tangent_flat(c(0.5, 0.25), 4, 2).unwrap();
        assert_eq!(parse_flat(&flat_to_value(&f).to_string()).unwrap(), f);
        let mu = Partition::new(vec![3, 1, 2]);
        assert_eq!(parse_partition_json(&partition_to_value(&mu).to_string()).unwrap(), mu);
    }
}
