//! Inputs shipped with the tool. The JSON sources are embedded at build
//! time; [`reference`] rebuilds each one from the library so the embedded
//! copies can be checked against it.

use dissident_core::dissident::{DissidentMap, DissidentTriple, MatrixQuadruple};
use dissident_core::exact::{frac, int, ExactMatrix};
use dissident_core::octonion::{octonions, quaternions, OctonionTable};
use dissident_core::sample::sign_tensor;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::format::{self, FormatError, Object};

pub const NAMES: [&str; 7] = [
    "cross7",
    "cross3",
    "octonions",
    "quaternions",
    "identity-quadruple",
    "degree3-example",
    "degree5-example",
];

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "cross7" => include_str!("../data/cross7.json"),
        "cross3" => include_str!("../data/cross3.json"),
        "octonions" => include_str!("../data/octonions.json"),
        "quaternions" => include_str!("../data/quaternions.json"),
        "identity-quadruple" => include_str!("../data/identity-quadruple.json"),
        "degree3-example" => include_str!("../data/degree3-example.json"),
        "degree5-example" => include_str!("../data/degree5-example.json"),
        _ => return None,
    })
}

pub fn load(name: &str) -> Result<Object, FormatError> {
    let text = source(name).ok_or_else(|| {
        FormatError::Invalid(format!(
            "unknown builtin {name:?}; expected one of {}",
            NAMES.join(", ")
        ))
    })?;
    format::parse(text)
}

/// `v x w + (v^t A w) e_1 / 10`, `A = E_12 - E_21 + E_34 - E_43`. Degree 3.
pub fn degree3_example() -> DissidentMap {
    let mut a = ExactMatrix::zeros(7, 7);
    for (i, j) in [(0, 1), (2, 3)] {
        a[(i, j)] = int(1);
        a[(j, i)] = int(-1);
    }
    let mut u = vec![int(0); 7];
    u[0] = int(1);
    let t = DissidentMap::rank_one(&a, &u).expect("antisymmetric");
    DissidentMap::cross(7)
        .expect("seven")
        .add_scaled(&frac(1, 10), &t)
        .expect("seven")
}

/// `v x w + T(v, w) / 20` for the sign tensor drawn with seed 1. Degree 5.
pub fn degree5_example() -> DissidentMap {
    let t = sign_tensor(&mut ChaCha8Rng::seed_from_u64(1), 7);
    DissidentMap::cross(7)
        .expect("seven")
        .add_scaled(&frac(1, 20), &t)
        .expect("seven")
}

pub fn reference(name: &str) -> Option<Object> {
    Some(match name {
        "cross7" => Object::Triple(DissidentTriple::cross(7).expect("seven")),
        "cross3" => Object::Triple(DissidentTriple::cross(3).expect("three")),
        "octonions" => Object::Algebra(octonions()),
        "quaternions" => Object::Algebra(quaternions()),
        "identity-quadruple" => Object::Quadruple(MatrixQuadruple::identity()),
        "degree3-example" => Object::Map(degree3_example()),
        "degree5-example" => Object::Map(degree5_example()),
        _ => return None,
    })
}

/// The structure constants of the octonions as integers, `[i][j][k]`.
pub fn octonion_table() -> Value {
    json!({
        "basis": ["1", "i", "j", "k", "l", "il", "jl", "kl"],
        "tensor": OctonionTable::new().tensor(),
    })
}

pub const OCTONION_TABLE: &str = include_str!("../data/octonion-table.json");
