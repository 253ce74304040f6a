use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArchKind {
    Real,
    Complex,
}

/// A place of a number field.
///
/// Finite places are labelled by the rational prime below them and a slot
/// index into the ascending list of residue degrees over that prime.
/// Archimedean places are labelled by type and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Place {
    Finite { p: u64, slot: usize },
    Arch { arch: ArchKind, index: usize },
}

impl Place {
    pub fn finite(p: u64, slot: usize) -> Place {
        Place::Finite { p, slot }
    }

    pub fn real(index: usize) -> Place {
        Place::Arch { arch: ArchKind::Real, index }
    }

    pub fn complex(index: usize) -> Place {
        Place::Arch { arch: ArchKind::Complex, index }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Place::Finite { .. })
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Place::Finite { p, .. } => Some(*p),
            Place::Arch { .. } => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite { p, slot } => write!(f, "{p}.{slot}"),
            Place::Arch { arch: ArchKind::Real, index } => write!(f, "real{index}"),
            Place::Arch { arch: ArchKind::Complex, index } => write!(f, "complex{index}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shapes() {
        assert_eq!(serde_json::to_string(&Place::finite(7, 0)).unwrap(), r#"{"p":7,"slot":0}"#);
        assert_eq!(serde_json::to_string(&Place::real(1)).unwrap(), r#"{"arch":"real","index":1}"#);
        let back: Place = serde_json::from_str(r#"{"arch":"complex","index":2}"#).unwrap();
        assert_eq!(back, Place::complex(2));
    }

    #[test]
    fn finite_places_sort_first_by_prime() {
        let mut v = vec![Place::real(0), Place::finite(13, 0), Place::finite(7, 1), Place::finite(7, 0)];
        v.sort();
        assert_eq!(v, vec![Place::finite(7, 0), Place::finite(7, 1), Place::finite(13, 0), Place::real(0)]);
    }
}
