//! JSON formats. Scalars are strings `"p/q"` (or `"p"`), matrices nested
//! arrays of scalars, polynomials lists of `{exponents, coeff}` terms.

use dissident_core::dissident::{DissidentMap, DissidentTriple, MatrixQuadruple};
use dissident_core::exact::{format_scalar, parse_scalar, ExactMatrix, HomogeneousPoly, Scalar};
use dissident_core::lifting::Lifting;
use dissident_core::qda::AlgebraPresentation;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

fn invalid<E: std::fmt::Display>(e: E) -> FormatError {
    FormatError::Invalid(e.to_string())
}

pub type MatrixDto = Vec<Vec<String>>;
pub type TensorDto = Vec<Vec<Vec<String>>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDto {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Map {
        n: usize,
        tensor: TensorDto,
    },
    Triple {
        n: usize,
        xi: MatrixDto,
        eta: TensorDto,
    },
    Quadruple {
        a: MatrixDto,
        b: MatrixDto,
        c: MatrixDto,
        d: MatrixDto,
    },
    Algebra {
        dim: usize,
        constants: TensorDto,
        unity: Vec<String>,
    },
    Matrix {
        entries: MatrixDto,
    },
    Lifting {
        n: usize,
        degree: u32,
        components: Vec<Vec<TermDto>>,
    },
}

/// A parsed and validated input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Map(DissidentMap),
    Triple(DissidentTriple),
    Quadruple(MatrixQuadruple),
    Algebra(AlgebraPresentation),
    Matrix(ExactMatrix),
    Lifting(Lifting),
}

pub fn scalars(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

pub fn matrix(m: &ExactMatrix) -> MatrixDto {
    m.to_rows().iter().map(|r| scalars(r)).collect()
}

fn tensor(n: usize, flat: &[Scalar]) -> TensorDto {
    flat.chunks(n * n)
        .map(|plane| plane.chunks(n).map(scalars).collect())
        .collect()
}

pub fn poly(p: &HomogeneousPoly) -> Vec<TermDto> {
    p.terms()
        .map(|(e, c)| TermDto {
            exponents: e.clone(),
            coeff: format_scalar(c),
        })
        .collect()
}

fn parse_vec(v: &[String]) -> Result<Vec<Scalar>, FormatError> {
    v.iter().map(|s| parse_scalar(s).map_err(invalid)).collect()
}

fn parse_matrix(m: &MatrixDto) -> Result<ExactMatrix, FormatError> {
    let rows = m
        .iter()
        .map(|r| parse_vec(r))
        .collect::<Result<Vec<_>, _>>()?;
    ExactMatrix::from_rows(rows).map_err(invalid)
}

fn parse_tensor(n: usize, t: &TensorDto) -> Result<Vec<Scalar>, FormatError> {
    if t.len() != n
        || t.iter()
            .any(|p| p.len() != n || p.iter().any(|r| r.len() != n))
    {
        return Err(FormatError::Invalid(format!("tensor must be {n}x{n}x{n}")));
    }
    t.iter()
        .flatten()
        .map(|r| parse_vec(r))
        .collect::<Result<Vec<_>, _>>()
        .map(|v| v.concat())
}

impl Document {
    pub fn from_object(o: &Object) -> Self {
        match o {
            Object::Map(m) => Self::Map {
                n: m.n(),
                tensor: tensor(m.n(), m.tensor()),
            },
            Object::Triple(t) => Self::Triple {
                n: t.n(),
                xi: matrix(t.xi()),
                eta: tensor(t.n(), t.eta().tensor()),
            },
            Object::Quadruple(q) => Self::Quadruple {
                a: matrix(q.a()),
                b: matrix(q.b()),
                c: matrix(q.c()),
                d: matrix(q.d()),
            },
            Object::Algebra(a) => Self::Algebra {
                dim: a.dim(),
                constants: tensor(a.dim(), a.constants()),
                unity: scalars(a.unity()),
            },
            Object::Matrix(m) => Self::Matrix { entries: matrix(m) },
            Object::Lifting(l) => Self::Lifting {
                n: l.n(),
                degree: l.degree().unwrap_or(0),
                components: l.components().iter().map(poly).collect(),
            },
        }
    }

    pub fn to_object(&self) -> Result<Object, FormatError> {
        Ok(match self {
            Self::Map { n, tensor } => {
                Object::Map(DissidentMap::new(*n, parse_tensor(*n, tensor)?).map_err(invalid)?)
            }
            Self::Triple { n, xi, eta } => {
                let eta = DissidentMap::new(*n, parse_tensor(*n, eta)?).map_err(invalid)?;
                Object::Triple(DissidentTriple::new(parse_matrix(xi)?, eta).map_err(invalid)?)
            }
            Self::Quadruple { a, b, c, d } => Object::Quadruple(
                MatrixQuadruple::new(
                    parse_matrix(a)?,
                    parse_matrix(b)?,
                    parse_matrix(c)?,
                    parse_matrix(d)?,
                )
                .map_err(invalid)?,
            ),
            Self::Algebra {
                dim,
                constants,
                unity,
            } => Object::Algebra(
                AlgebraPresentation::new(*dim, parse_tensor(*dim, constants)?, parse_vec(unity)?)
                    .map_err(invalid)?,
            ),
            Self::Matrix { entries } => Object::Matrix(parse_matrix(entries)?),
            Self::Lifting {
                n,
                degree,
                components,
            } => {
                let polys = components
                    .iter()
                    .map(|terms| {
                        let parsed = terms
                            .iter()
                            .map(|t| {
                                Ok((
                                    t.exponents.clone(),
                                    parse_scalar(&t.coeff).map_err(invalid)?,
                                ))
                            })
                            .collect::<Result<Vec<_>, FormatError>>()?;
                        HomogeneousPoly::from_terms(*n, *degree, parsed).map_err(invalid)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Object::Lifting(Lifting::new(polys).map_err(invalid)?)
            }
        })
    }
}

pub fn parse(text: &str) -> Result<Object, FormatError> {
    serde_json::from_str::<Document>(text)?.to_object()
}

pub fn to_json(o: &Object) -> String {
    let mut s = serde_json::to_string_pretty(&Document::from_object(o)).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use dissident_core::octonion::octonions;

    #[test]
    fn documents_round_trip() {
        let objects = [
            Object::Map(DissidentMap::cross(3).unwrap()),
            Object::Triple(DissidentTriple::cross(7).unwrap()),
            Object::Quadruple(MatrixQuadruple::random(1)),
            Object::Algebra(octonions()),
            Object::Matrix(ExactMatrix::identity(2)),
            Object::Lifting(Lifting::identity(3)),
        ];
        for o in objects {
            assert_eq!(parse(&to_json(&o)).unwrap(), o);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse("{").is_err());
        assert!(parse(r#"{"kind": "matrix", "entries": [["1/0"]]}"#).is_err());
        assert!(parse(r#"{"kind": "map", "n": 3, "tensor": []}"#).is_err());
        let not_antisymmetric = r#"{"kind": "matrix", "entries": [["1", "x"]]}"#;
        assert!(parse(not_antisymmetric).is_err());
    }

    #[test]
    fn scalar_encoding() {
        let m = ExactMatrix::from_rows(vec![vec![
            Scalar::new(6.into(), (-4).into()),
            Scalar::from_integer(5.into()),
        ]])
        .unwrap();
        assert_eq!(matrix(&m), vec![vec!["-3/2".to_string(), "5".to_string()]]);
    }
}
