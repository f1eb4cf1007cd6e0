//! Serialization helpers for machine-readable output. Every exact number is
//! written as a string: integers as digits, rationals as `p/q`.

use serde::{Serialize, Serializer};

use crate::arith::{rational_to_string, BigInt, BigRational};
use crate::graph::Graph;

pub fn rational_str<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(x))
}

pub fn rationals_str<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<String> = xs.iter().map(rational_to_string).collect();
    v.serialize(s)
}

pub fn bigint_str<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// A graph as `{ "n": .., "edges": [[u, v], ..] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeListJson {
    fn from(g: &Graph) -> Self {
        EdgeListJson {
            n: g.order(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}
