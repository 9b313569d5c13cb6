//! Decorated half-graphs indexing the torus-fixed loci of real maps.

mod census;
mod enumerate;
mod halfgraph;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use census::{census_entry, load_or_build_census, CacheStatus, CensusEntry, CensusKey, CENSUS_FORMAT_VERSION};
pub use enumerate::{admissible_d0, enumerate_half_graphs, enumerate_shapes, sign_vectors};
pub use halfgraph::{Edge, HalfGraph, MarkedPoint, Vertex, ROOT};

use crate::error::Error;

/// The two anti-holomorphic involutions on `P^(2M-1)`, also used for the
/// involution class of the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Involution {
    Tau,
    Eta,
}

impl Involution {
    /// `|τ| = 0`, `|η| = 1`.
    pub fn parity(self) -> u32 {
        match self {
            Involution::Tau => 0,
            Involution::Eta => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Involution::Tau => "tau",
            Involution::Eta => "eta",
        }
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Involution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "tau" | "τ" => Ok(Involution::Tau),
            "eta" | "η" => Ok(Involution::Eta),
            other => Err(Error::InvalidQuery(format!("unknown involution {other:?}"))),
        }
    }
}

/// Involution class of the domain of a fixed locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphClass {
    pub c: Involution,
}

impl GraphClass {
    /// `|φ| + |c| d0` must be even.
    pub fn admits(self, phi: Involution, d0: u32) -> bool {
        (phi.parity() + self.c.parity() * d0).is_multiple_of(2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignMode {
    AllSigns,
    PlusOnly,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_parity() {
        let tau = GraphClass { c: Involution::Tau };
        let eta = GraphClass { c: Involution::Eta };
        assert!(tau.admits(Involution::Tau, 3));
        assert!(!tau.admits(Involution::Eta, 3));
        assert!(eta.admits(Involution::Eta, 1));
        assert!(!eta.admits(Involution::Eta, 2));
        assert!(eta.admits(Involution::Tau, 2));
    }

    #[test]
    fn involution_parsing() {
        assert_eq!("tau".parse::<Involution>().unwrap(), Involution::Tau);
        assert_eq!("ETA".parse::<Involution>().unwrap(), Involution::Eta);
        assert!("rho".parse::<Involution>().is_err());
        assert_eq!(serde_json::to_string(&Involution::Eta).unwrap(), "\"eta\"");
    }
}
