//! Points of a product of elliptic curves in lattice coordinates.

use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

/// Reduce into the canonical representative in [0, 1).
pub(crate) fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// A point of E^d in lattice coordinates: 2d exact rationals, one pair per
/// curve factor, each reduced into [0, 1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: Vec<BigRational>,
}

impl TorusPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        assert!(coords.len() % 2 == 0, "lattice coordinates come in pairs");
        TorusPoint {
            coords: coords.iter().map(frac).collect(),
        }
    }

    pub fn zero(complex_dim: usize) -> Self {
        TorusPoint {
            coords: vec![BigRational::zero(); 2 * complex_dim],
        }
    }

    /// Builds a point from one (p, q) lattice pair per curve factor.
    pub fn from_curve_coords(pairs: &[(BigRational, BigRational)]) -> Self {
        let mut coords = Vec::with_capacity(2 * pairs.len());
        for (p, q) in pairs {
            coords.push(p.clone());
            coords.push(q.clone());
        }
        TorusPoint::new(coords)
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn lattice_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn complex_dim(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// True when every coordinate is an integer, i.e. the point is the
    /// origin of the torus.
    pub fn is_lattice_point(&self) -> bool {
        // Coordinates are canonical representatives, so integral means zero.
        self.is_zero()
    }

    pub fn add(&self, other: &TorusPoint) -> TorusPoint {
        assert_eq!(self.coords.len(), other.coords.len());
        TorusPoint::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn neg(&self) -> TorusPoint {
        TorusPoint::new(self.coords.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, k: i64) -> TorusPoint {
        let k = BigRational::from_integer(k.into());
        TorusPoint::new(self.coords.iter().map(|c| c * &k).collect())
    }

    /// True for points killed by multiplication by 2.
    pub fn is_two_torsion(&self) -> bool {
        self.scale(2).is_zero()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coords
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonicalization() {
        let p = TorusPoint::new(vec![rat(3, 2), rat(-1, 4)]);
        assert_eq!(p.coords(), &[rat(1, 2), rat(3, 4)]);
        let q = TorusPoint::new(vec![rat(3, 1), rat(-2, 1)]);
        assert!(q.is_zero());
        assert!(q.is_lattice_point());
    }

    #[test]
    fn torsion_checks() {
        assert!(TorusPoint::new(vec![rat(1, 2), rat(0, 1)]).is_two_torsion());
        assert!(!TorusPoint::new(vec![rat(1, 4), rat(0, 1)]).is_two_torsion());
        assert!(TorusPoint::zero(1).is_two_torsion());
    }

    #[test]
    fn addition_wraps() {
        let a = TorusPoint::new(vec![rat(3, 4), rat(0, 1)]);
        let b = TorusPoint::new(vec![rat(1, 2), rat(0, 1)]);
        assert_eq!(a.add(&b).coords()[0], rat(1, 4));
        assert_eq!(a.add(&a.neg()), TorusPoint::zero(1));
    }
}
