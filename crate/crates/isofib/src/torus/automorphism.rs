//! Affine automorphisms x -> Mx + t of a product of elliptic curves.
//!
//! The linear part is an integer matrix on lattice coordinates, required
//! to be invertible over Z and to commute with the complex structure: each
//! 2x2 block must be p*I + q*J_tau (multiplication by p + q*tau), with
//! q = 0 for curves without extra endomorphisms. The induced holomorphic
//! action is the d x d matrix over the endomorphism field recovered
//! blockwise.

use crate::cm::{Cm, CmKind, CmMatrix};
use crate::matrix::IntMatrix;
use crate::torus::point::{frac, TorusPoint};
use crate::torus::TorusError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;

/// Holomorphic affine map on E^d in lattice coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusAutomorphism {
    kind: CmKind,
    linear: IntMatrix,
    translation: TorusPoint,
}

impl TorusAutomorphism {
    pub fn new(
        kind: CmKind,
        linear: IntMatrix,
        translation: TorusPoint,
    ) -> Result<Self, TorusError> {
        if !linear.is_square() || linear.rows() % 2 != 0 {
            return Err(TorusError::BadDimension(linear.rows()));
        }
        if translation.lattice_dim() != linear.rows() {
            return Err(TorusError::BadDimension(translation.lattice_dim()));
        }
        let det = linear.determinant();
        if !det.abs().is_one() {
            return Err(TorusError::NotUnimodular { det });
        }
        let auto = TorusAutomorphism {
            kind,
            linear,
            translation,
        };
        auto.check_holomorphic()?;
        Ok(auto)
    }

    fn check_holomorphic(&self) -> Result<(), TorusError> {
        let d = self.complex_dim();
        for bi in 0..d {
            for bj in 0..d {
                let b00 = &self.linear[(2 * bi, 2 * bj)];
                let b01 = &self.linear[(2 * bi, 2 * bj + 1)];
                let b10 = &self.linear[(2 * bi + 1, 2 * bj)];
                let b11 = &self.linear[(2 * bi + 1, 2 * bj + 1)];
                let ok = match self.kind.j_block() {
                    // block = p*I + q*J with J the tau block
                    Some(j) => {
                        let p = b00;
                        let q = if j[1][0] != 0 {
                            b10 / BigInt::from(j[1][0])
                        } else {
                            BigInt::zero()
                        };
                        let expect = |jv: i64, diag: &BigInt| diag + BigInt::from(jv) * &q;
                        *b10 == expect(j[1][0], &BigInt::zero())
                            && *b01 == expect(j[0][1], &BigInt::zero())
                            && *b11 == expect(j[1][1], p)
                    }
                    // rational kind: scalar blocks only
                    None => b01.is_zero() && b10.is_zero() && b00 == b11,
                };
                if !ok {
                    return Err(TorusError::NotHolomorphic);
                }
            }
        }
        Ok(())
    }

    pub fn identity(kind: CmKind, complex_dim: usize) -> Self {
        TorusAutomorphism {
            kind,
            linear: IntMatrix::identity(2 * complex_dim),
            translation: TorusPoint::zero(complex_dim),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.is_zero()
    }

    /// Builds the linear part from a d x d matrix over the endomorphism
    /// field with integral entries, realified blockwise.
    pub fn from_cm_matrix(
        kind: CmKind,
        holomorphic: &CmMatrix,
        translation: TorusPoint,
    ) -> Result<Self, TorusError> {
        let d = holomorphic.size();
        let mut linear = IntMatrix::zero(2 * d, 2 * d);
        for i in 0..d {
            for j in 0..d {
                let e = &holomorphic[(i, j)];
                if !e.re.denom().is_one() || !e.im.denom().is_one() {
                    return Err(TorusError::NotHolomorphic);
                }
                let p = e.re.numer().clone();
                let q = e.im.numer().clone();
                match kind.j_block() {
                    Some(jb) => {
                        linear[(2 * i, 2 * j)] = p.clone();
                        linear[(2 * i, 2 * j + 1)] = BigInt::from(jb[0][1]) * &q;
                        linear[(2 * i + 1, 2 * j)] = BigInt::from(jb[1][0]) * &q;
                        linear[(2 * i + 1, 2 * j + 1)] = &p + BigInt::from(jb[1][1]) * &q;
                    }
                    None => {
                        if !q.is_zero() {
                            return Err(TorusError::IncompatibleField);
                        }
                        linear[(2 * i, 2 * j)] = p.clone();
                        linear[(2 * i + 1, 2 * j + 1)] = p;
                    }
                }
            }
        }
        TorusAutomorphism::new(kind, linear, translation)
    }

    /// Diagonal action by field units, one per curve factor.
    pub fn from_units(
        kind: CmKind,
        units: &[Cm],
        translation: TorusPoint,
    ) -> Result<Self, TorusError> {
        let m = CmMatrix::diagonal(kind, units);
        TorusAutomorphism::from_cm_matrix(kind, &m, translation)
    }

    /// Permutation of the curve factors: factor i moves to position perm[i].
    pub fn from_permutation(
        kind: CmKind,
        perm: &[usize],
        translation: TorusPoint,
    ) -> Result<Self, TorusError> {
        let d = perm.len();
        let mut m = CmMatrix::zero(kind, d);
        for (i, &pi) in perm.iter().enumerate() {
            m[(pi, i)] = Cm::one();
        }
        TorusAutomorphism::from_cm_matrix(kind, &m, translation)
    }

    pub fn kind(&self) -> CmKind {
        self.kind
    }

    pub fn complex_dim(&self) -> usize {
        self.linear.rows() / 2
    }

    pub fn linear(&self) -> &IntMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &TorusPoint {
        &self.translation
    }

    pub fn apply(&self, p: &TorusPoint) -> TorusPoint {
        let coords: Vec<BigRational> = p.coords().to_vec();
        let n = coords.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = self.translation.coords()[i].clone();
            for j in 0..n {
                let m = &self.linear[(i, j)];
                if m.is_zero() {
                    continue;
                }
                acc += BigRational::from_integer(m.clone()) * &coords[j];
            }
            out.push(frac(&acc));
        }
        TorusPoint::new(out)
    }

    /// Composition acting as self after other: (self*other)(x) = self(other(x)).
    pub fn compose(&self, other: &TorusAutomorphism) -> TorusAutomorphism {
        assert_eq!(self.kind, other.kind);
        let linear = self.linear.mul(&other.linear);
        let translation = self.apply(&other.translation);
        TorusAutomorphism {
            kind: self.kind,
            linear,
            translation,
        }
    }

    pub fn inverse(&self) -> TorusAutomorphism {
        let minv = self
            .linear
            .inverse_unimodular()
            .expect("linear part is unimodular by construction");
        // x = M y + t  =>  y = M^-1 x - M^-1 t
        let neg_t = self.translation.neg();
        let coords: Vec<BigRational> = (0..minv.rows())
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..minv.cols() {
                    acc += BigRational::from_integer(minv[(i, j)].clone())
                        * &neg_t.coords()[j];
                }
                frac(&acc)
            })
            .collect();
        TorusAutomorphism {
            kind: self.kind,
            linear: minv,
            translation: TorusPoint::new(coords),
        }
    }

    /// The induced d x d holomorphic matrix over the endomorphism field.
    pub fn holomorphic_matrix(&self) -> CmMatrix {
        let d = self.complex_dim();
        let mut m = CmMatrix::zero(self.kind, d);
        for i in 0..d {
            for j in 0..d {
                let p = self.linear[(2 * i, 2 * j)].clone();
                let q = self.linear[(2 * i + 1, 2 * j)].clone();
                let q = match self.kind.j_block() {
                    Some(jb) => {
                        debug_assert!(jb[1][0] == 1);
                        q
                    }
                    None => {
                        debug_assert!(q.is_zero());
                        BigInt::zero()
                    }
                };
                m[(i, j)] = Cm::new(
                    BigRational::from_integer(p),
                    BigRational::from_integer(q),
                );
            }
        }
        m
    }

    /// Multiplicative order, or `None` past the cap.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let mut g = self.clone();
        for k in 1..=cap {
            if g.is_identity() {
                return Some(k);
            }
            g = self.compose(&g);
        }
        None
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.linear.rows();
        json!({
            "field": self.kind.name(),
            "complex_dim": self.complex_dim(),
            "linear": (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| self.linear[(i, j)].to_string())
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>(),
            "translation": self.translation.to_json(),
        })
    }
}

impl std::fmt::Debug for TorusAutomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TorusAutomorphism({} on E^{}, t={})",
            self.holomorphic_matrix().display(),
            self.complex_dim(),
            self.translation
        )
    }
}
