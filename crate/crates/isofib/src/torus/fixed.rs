//! Fixed loci of torus automorphisms.
//!
//! A fixed point of x -> Mx + t solves (M - I)x = -t modulo the lattice.
//! Writing D = U (M - I) V in Smith normal form and x = V y turns the
//! system into independent congruences d_i y_i = c_i (mod 1) with c = U(-t):
//! a zero diagonal with non-integral c_i kills solvability, a zero diagonal
//! with integral c_i frees the coordinate (a positive-dimensional
//! component), and a nonzero d_i contributes |d_i| choices. With no free
//! coordinates the number of fixed points is |det(M - I)|.

use crate::matrix::{smith_normal_form, IntMatrix};
use crate::torus::automorphism::TorusAutomorphism;
use crate::torus::point::{frac, TorusPoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A connected component of a fixed locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComponent {
    /// One point on the component.
    pub sample: TorusPoint,
    /// Basis of the direction lattice (columns, length = lattice dim).
    /// Empty for isolated points.
    pub directions: Vec<Vec<BigInt>>,
    /// Complex dimension of the component.
    pub complex_dim: usize,
}

/// Solution set of the fixed-point congruence.
#[derive(Clone, Debug)]
pub struct FixedLocus {
    pub solvable: bool,
    /// Number of components (isolated points count individually).
    pub component_count: BigInt,
    /// Complex dimension of each component.
    pub complex_dim: usize,
    /// All components; for dimension zero these are the isolated points
    /// themselves (populated only when materialization is requested).
    pub components: Vec<FixedComponent>,
}

impl FixedLocus {
    fn empty() -> Self {
        FixedLocus {
            solvable: false,
            component_count: BigInt::zero(),
            complex_dim: 0,
            components: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.solvable
    }

    pub fn isolated_points(&self) -> Vec<TorusPoint> {
        if self.complex_dim != 0 {
            return Vec::new();
        }
        self.components.iter().map(|c| c.sample.clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "solvable": self.solvable,
            "component_count": self.component_count.to_string(),
            "complex_dim": self.complex_dim,
            "components": self
                .components
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "sample": c.sample.to_json(),
                        "complex_dim": c.complex_dim,
                        "directions": c
                            .directions
                            .iter()
                            .map(|col| {
                                col.iter().map(|v| v.to_string()).collect::<Vec<_>>()
                            })
                            .collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

/// Fixed locus with all components materialized. The component list of an
/// isolated locus has |det(M - I)| entries, so callers on large
/// automorphisms may prefer [`fixed_locus_bounded`].
pub fn fixed_locus(g: &TorusAutomorphism) -> FixedLocus {
    fixed_locus_bounded(g, None)
}

/// Fixed locus; component materialization is skipped when the component
/// count exceeds `max_components` (the count and dimension are always
/// exact).
pub fn fixed_locus_bounded(g: &TorusAutomorphism, max_components: Option<usize>) -> FixedLocus {
    let n = g.linear().rows();
    let m_minus_i = g.linear().sub(&IntMatrix::identity(n));
    let snf = smith_normal_form(&m_minus_i);
    let minus_t: Vec<BigRational> = g
        .translation()
        .coords()
        .iter()
        .map(|c| -c.clone())
        .collect();
    // c = U * (-t)
    let c: Vec<BigRational> = (0..n)
        .map(|i| {
            let mut acc = BigRational::zero();
            for j in 0..n {
                acc += BigRational::from_integer(snf.u[(i, j)].clone()) * &minus_t[j];
            }
            acc
        })
        .collect();

    let diag = snf.diagonal();
    let mut free_indices = Vec::new();
    let mut finite: Vec<(usize, BigInt)> = Vec::new();
    for i in 0..n {
        if diag[i].is_zero() {
            if !frac(&c[i]).is_zero() {
                return FixedLocus::empty();
            }
            free_indices.push(i);
        } else {
            finite.push((i, diag[i].clone()));
        }
    }

    let mut component_count = BigInt::one();
    for (_, d) in &finite {
        component_count *= d.abs();
    }
    debug_assert!(
        free_indices.len() % 2 == 0,
        "holomorphic fixed loci have even real dimension"
    );
    let complex_dim = free_indices.len() / 2;

    let materialize = match max_components {
        Some(limit) => component_count <= BigInt::from(limit),
        None => true,
    };
    let mut components = Vec::new();
    if materialize {
        let directions: Vec<Vec<BigInt>> =
            free_indices.iter().map(|&i| snf.v.column(i)).collect();
        // Mixed-radix enumeration over the finite coordinates of y.
        let radices: Vec<u64> = finite
            .iter()
            .map(|(_, d)| d.abs().to_u64().expect("component count fits in u64"))
            .collect();
        let total = component_count
            .to_u64()
            .expect("component count fits in u64");
        let mut y = vec![BigRational::zero(); n];
        for idx in 0..total {
            let mut rem = idx;
            for ((i, d), &r) in finite.iter().zip(&radices) {
                let j = rem % r;
                rem /= r;
                // d * y = c (mod 1): y = (c + j) / d
                let numer = &c[*i] + BigRational::from_integer(BigInt::from(j));
                y[*i] = frac(&(numer / BigRational::from_integer(d.clone())));
            }
            // x = V y, reduced mod 1.
            let coords: Vec<BigRational> = (0..n)
                .map(|r| {
                    let mut acc = BigRational::zero();
                    for (ci, yv) in y.iter().enumerate() {
                        if yv.is_zero() {
                            continue;
                        }
                        acc += BigRational::from_integer(snf.v[(r, ci)].clone()) * yv;
                    }
                    frac(&acc)
                })
                .collect();
            components.push(FixedComponent {
                sample: TorusPoint::new(coords),
                directions: directions.clone(),
                complex_dim,
            });
        }
        components.sort_by(|a, b| a.sample.cmp(&b.sample));
    }

    FixedLocus {
        solvable: true,
        component_count,
        complex_dim,
        components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cm::{Cm, CmKind};
    use crate::torus::group::{builtin_action, BuiltinAction, DEFAULT_ORDER_CAP};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn negation_on_e2_has_sixteen_fixed_points() {
        let g = TorusAutomorphism::from_units(
            CmKind::Gauss,
            &[Cm::from_int(-1), Cm::from_int(-1)],
            TorusPoint::zero(2),
        )
        .unwrap();
        let locus = fixed_locus(&g);
        assert!(locus.solvable);
        assert_eq!(locus.complex_dim, 0);
        assert_eq!(locus.component_count, BigInt::from(16));
        let points = locus.isolated_points();
        assert_eq!(points.len(), 16);
        // All fixed points are 2-torsion.
        for p in &points {
            assert!(p.is_two_torsion());
            assert_eq!(g.apply(p), *p);
        }
        // Count agrees with |det(M - I)| computed independently.
        let det = g
            .linear()
            .sub(&IntMatrix::identity(4))
            .determinant();
        assert_eq!(det.abs(), BigInt::from(16));
    }

    #[test]
    fn cyclic_surface_fixed_point_counts() {
        for (k, expected) in [(2u32, 16u64), (3, 9), (4, 4), (6, 1)] {
            let g = builtin_action(&BuiltinAction::CyclicSurface { k }, DEFAULT_ORDER_CAP)
                .unwrap();
            let gen = g.generator("g").unwrap();
            let locus = fixed_locus(gen);
            assert_eq!(
                locus.component_count,
                BigInt::from(expected),
                "order {k} action"
            );
            assert_eq!(locus.complex_dim, 0);
            for p in locus.isolated_points() {
                assert_eq!(gen.apply(&p), p);
            }
        }
    }

    #[test]
    fn pure_translation_has_no_fixed_points() {
        let g = TorusAutomorphism::from_units(
            CmKind::Rational,
            &[Cm::one()],
            TorusPoint::new(vec![rat(1, 2), rat(0, 1)]),
        )
        .unwrap();
        let locus = fixed_locus(&g);
        assert!(locus.is_empty());
    }

    #[test]
    fn identity_fixes_everything() {
        let g = TorusAutomorphism::identity(CmKind::Gauss, 2);
        let locus = fixed_locus(&g);
        assert!(locus.solvable);
        assert_eq!(locus.complex_dim, 2);
        assert_eq!(locus.component_count, BigInt::one());
    }

    #[test]
    fn mixed_locus_with_free_block() {
        // Negate the first factor, leave the second alone: the fixed locus
        // is four translates of the second-factor subtorus.
        let g = TorusAutomorphism::from_units(
            CmKind::Gauss,
            &[Cm::from_int(-1), Cm::one()],
            TorusPoint::zero(2),
        )
        .unwrap();
        let locus = fixed_locus(&g);
        assert!(locus.solvable);
        assert_eq!(locus.complex_dim, 1);
        assert_eq!(locus.component_count, BigInt::from(4));
        assert_eq!(locus.components.len(), 4);
        for comp in &locus.components {
            assert_eq!(comp.directions.len(), 2);
            assert_eq!(g.apply(&comp.sample), comp.sample);
        }
    }

    #[test]
    fn bounded_materialization_skips_points() {
        let g = TorusAutomorphism::from_units(
            CmKind::Gauss,
            &[Cm::from_int(-1), Cm::from_int(-1)],
            TorusPoint::zero(2),
        )
        .unwrap();
        let locus = fixed_locus_bounded(&g, Some(4));
        assert_eq!(locus.component_count, BigInt::from(16));
        assert!(locus.components.is_empty());
    }
}
