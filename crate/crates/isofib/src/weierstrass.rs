//! Classification of isotrivial elliptic K3 surfaces from Weierstrass data.
//!
//! A constant-j elliptic K3 with a section is cut out by y^2 z = x^3 + b(t) z^3
//! (j = 0, b a degree-12 section) or y^2 z = x^3 + a(t) x z^2 (j = 1728,
//! a a degree-8 section). The singular fibres are read off from the zero
//! multiplicities of the section, including the zero at infinity carried by
//! the degree deficit. Each zero of order m contributes a fibre, an Euler
//! number (2m or 3m), a monodromy power, and a rational double point of the
//! contracted model.

use crate::kodaira::FibreKind;
use crate::poly::RationalPolynomial;
use crate::sl2z::UnimodularMatrix;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeierstrassError {
    #[error("the section vanishes identically; the data belongs to the other j-case")]
    WrongJCase,
    #[error("degree {degree} exceeds the bundle degree {bundle}")]
    DegreeExceedsBundle { degree: usize, bundle: u32 },
    #[error("zero of order {m} is out of range for this j-case (max {max})")]
    ZeroOrderTooLarge { m: u32, max: u32 },
    #[error("4a^3 + 27b^2 vanishes identically; not an elliptic fibration")]
    NotElliptic,
    #[error("operation requires j-case 0 or 1728")]
    GenericJCase,
}

/// Value class of the constant j-function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JCase {
    Zero,
    J1728,
    Generic,
}

impl JCase {
    /// Degree of the line bundle whose section drives the fibres.
    pub fn bundle_degree(&self) -> Result<u32, WeierstrassError> {
        match self {
            JCase::Zero => Ok(12),
            JCase::J1728 => Ok(8),
            JCase::Generic => Err(WeierstrassError::GenericJCase),
        }
    }

    /// Largest zero order compatible with rational double points.
    pub fn max_zero_order(&self) -> Result<u32, WeierstrassError> {
        match self {
            JCase::Zero => Ok(5),
            JCase::J1728 => Ok(3),
            JCase::Generic => Err(WeierstrassError::GenericJCase),
        }
    }
}

impl fmt::Display for JCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JCase::Zero => write!(f, "0"),
            JCase::J1728 => write!(f, "1728"),
            JCase::Generic => write!(f, "generic"),
        }
    }
}

/// Rational double point label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdeLabel {
    A(u32),
    D(u32),
    E(u32),
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeLabel::A(n) => write!(f, "A{n}"),
            AdeLabel::D(n) => write!(f, "D{n}"),
            AdeLabel::E(n) => write!(f, "E{n}"),
        }
    }
}

/// Multiset of zero multiplicities of a section, including infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroProfile {
    /// multiplicity -> number of distinct roots with that multiplicity
    pub finite_zeros: BTreeMap<u32, u32>,
    pub infinity_multiplicity: u32,
}

impl ZeroProfile {
    pub fn total_multiplicity(&self) -> u32 {
        self.finite_zeros.iter().map(|(m, c)| m * c).sum::<u32>() + self.infinity_multiplicity
    }

    /// All zero orders present, with infinity folded in, sorted decreasing.
    pub fn all_orders(&self) -> Vec<u32> {
        let mut orders = Vec::new();
        for (&m, &c) in &self.finite_zeros {
            for _ in 0..c {
                orders.push(m);
            }
        }
        if self.infinity_multiplicity > 0 {
            orders.push(self.infinity_multiplicity);
        }
        orders.sort_unstable_by(|x, y| y.cmp(x));
        orders
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "finite_zeros": self
                .finite_zeros
                .iter()
                .map(|(m, c)| json!({"multiplicity": m, "count": c}))
                .collect::<Vec<_>>(),
            "infinity_multiplicity": self.infinity_multiplicity,
        })
    }
}

/// Zero-multiplicity structure of `p` as a section of O(bundle_degree),
/// computed by square-free decomposition; no root is ever found explicitly.
pub fn multiplicity_profile(
    p: &RationalPolynomial,
    bundle_degree: u32,
) -> Result<ZeroProfile, WeierstrassError> {
    if p.is_zero() {
        return Err(WeierstrassError::WrongJCase);
    }
    let degree = p.degree().unwrap();
    if degree > bundle_degree as usize {
        return Err(WeierstrassError::DegreeExceedsBundle {
            degree,
            bundle: bundle_degree,
        });
    }
    let mut finite_zeros = BTreeMap::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let count = factor.degree().unwrap() as u32;
        if count > 0 {
            finite_zeros.insert(mult, count);
        }
    }
    Ok(ZeroProfile {
        finite_zeros,
        infinity_multiplicity: bundle_degree - degree as u32,
    })
}

/// Data attached to a single zero of order m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroClassification {
    pub kind: FibreKind,
    pub euler: u32,
    pub monodromy: UnimodularMatrix,
    /// `None` exactly when the contracted model is smooth at the zero.
    pub singularity: Option<AdeLabel>,
}

/// Fibre type, Euler number, monodromy power, and local singularity of a
/// zero of order `m` of the driving section.
pub fn classify_zero(j_case: JCase, m: u32) -> Result<ZeroClassification, WeierstrassError> {
    assert!(m >= 1, "zero order must be positive");
    let max = j_case.max_zero_order()?;
    if m > max {
        return Err(WeierstrassError::ZeroOrderTooLarge { m, max });
    }
    let c = match (j_case, m) {
        (JCase::Zero, 1) => (FibreKind::II, 2, UnimodularMatrix::alpha(), None),
        (JCase::Zero, 2) => (
            FibreKind::IV,
            4,
            UnimodularMatrix::alpha().pow(2),
            Some(AdeLabel::A(2)),
        ),
        (JCase::Zero, 3) => (
            FibreKind::I0Star,
            6,
            UnimodularMatrix::alpha().pow(3),
            Some(AdeLabel::D(4)),
        ),
        (JCase::Zero, 4) => (
            FibreKind::IVStar,
            8,
            UnimodularMatrix::alpha().pow(4),
            Some(AdeLabel::E(6)),
        ),
        (JCase::Zero, 5) => (
            FibreKind::IIStar,
            10,
            UnimodularMatrix::alpha().pow(5),
            Some(AdeLabel::E(8)),
        ),
        (JCase::J1728, 1) => (
            FibreKind::III,
            3,
            UnimodularMatrix::beta(),
            Some(AdeLabel::A(1)),
        ),
        (JCase::J1728, 2) => (
            FibreKind::I0Star,
            6,
            UnimodularMatrix::beta().pow(2),
            Some(AdeLabel::D(4)),
        ),
        (JCase::J1728, 3) => (
            FibreKind::IIIStar,
            9,
            UnimodularMatrix::beta().pow(3),
            Some(AdeLabel::E(7)),
        ),
        _ => unreachable!("orders past the maximum are rejected above"),
    };
    Ok(ZeroClassification {
        kind: c.0,
        euler: c.1,
        monodromy: c.2,
        singularity: c.3,
    })
}

/// Full classification of one Weierstrass surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotrivialK3Report {
    pub j_case: JCase,
    /// (fibre kind, number of fibres), classifiable zeros only.
    pub fibres: Vec<(FibreKind, u32)>,
    /// Rational double points of the contracted model, with counts.
    pub local_singularities: Vec<(AdeLabel, u32)>,
    pub euler_total: u32,
    pub valid_k3: bool,
    /// Reasons the surface fails to be a K3 Weierstrass model, if any.
    pub violations: Vec<String>,
}

impl IsotrivialK3Report {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "j_case": self.j_case.to_string(),
            "fibres": self
                .fibres
                .iter()
                .map(|(k, c)| json!({"type": k.to_string(), "count": c}))
                .collect::<Vec<_>>(),
            "local_singularities": self
                .local_singularities
                .iter()
                .map(|(l, c)| json!({"label": l.to_string(), "count": c}))
                .collect::<Vec<_>>(),
            "euler_total": self.euler_total,
            "valid_k3": self.valid_k3,
            "violations": self.violations,
        })
    }
}

/// Classify the surface driven by section `p` in the given j-case.
///
/// Zero orders beyond the rational-double-point bound do not abort: they
/// are reported as violations with `valid_k3 = false`, so batch runs over
/// generated inputs never crash.
pub fn classify_surface(
    j_case: JCase,
    p: &RationalPolynomial,
) -> Result<IsotrivialK3Report, WeierstrassError> {
    let bundle = j_case.bundle_degree()?;
    let profile = multiplicity_profile(p, bundle)?;
    Ok(classify_profile(j_case, &profile))
}

/// Classification from an already-computed profile.
pub fn classify_profile(j_case: JCase, profile: &ZeroProfile) -> IsotrivialK3Report {
    let mut fibres: BTreeMap<FibreKind, u32> = BTreeMap::new();
    let mut sings: BTreeMap<AdeLabel, u32> = BTreeMap::new();
    let mut violations = Vec::new();
    let mut euler_total = 0u32;

    let mut push_zero = |m: u32, at_infinity: bool, violations: &mut Vec<String>| {
        match classify_zero(j_case, m) {
            Ok(z) => {
                *fibres.entry(z.kind).or_default() += 1;
                if let Some(s) = z.singularity {
                    *sings.entry(s).or_default() += 1;
                }
                euler_total += z.euler;
            }
            Err(_) => {
                let max = j_case.max_zero_order().unwrap();
                let place = if at_infinity { " at t=infinity" } else { "" };
                violations.push(format!(
                    "zero of order {m}{place} exceeds the bound {max} (worse than a rational double point)"
                ));
            }
        }
    };

    for (&m, &count) in &profile.finite_zeros {
        for _ in 0..count {
            push_zero(m, false, &mut violations);
        }
    }
    if profile.infinity_multiplicity > 0 {
        push_zero(profile.infinity_multiplicity, true, &mut violations);
    }

    let valid_k3 = violations.is_empty();
    IsotrivialK3Report {
        j_case,
        fibres: fibres.into_iter().collect(),
        local_singularities: sings.into_iter().collect(),
        euler_total,
        valid_k3,
        violations,
    }
}

/// The constant report for constant j different from 0 and 1728: the only
/// possible singular fibres are I0*, and the Euler number forces four.
pub fn generic_isotrivial_report() -> IsotrivialK3Report {
    IsotrivialK3Report {
        j_case: JCase::Generic,
        fibres: vec![(FibreKind::I0Star, 4)],
        local_singularities: vec![(AdeLabel::A(1), 16)],
        euler_total: 24,
        valid_k3: true,
        violations: Vec::new(),
    }
}

/// Constancy class of j = 1728 * 4a^3 / (4a^3 + 27b^2).
#[derive(Clone, Debug, PartialEq)]
pub enum JConstancy {
    ConstantZero,
    Constant1728,
    ConstantOther(BigRational),
    NonConstant,
}

/// Decide whether the j-function of y^2 z = x^3 + a x z^2 + b z^3 is
/// constant, entirely in polynomial arithmetic: j is constant iff
/// N * D(t0) - D * N(t0) vanishes identically, where N = 4a^3,
/// D = 4a^3 + 27b^2, and t0 is any point with D(t0) != 0.
pub fn j_invariant_constancy(
    a: &RationalPolynomial,
    b: &RationalPolynomial,
) -> Result<JConstancy, WeierstrassError> {
    let four = RationalPolynomial::from_i64(&[4]);
    let twenty_seven = RationalPolynomial::from_i64(&[27]);
    let numerator = four.mul(&a.pow(3));
    let discriminant = numerator.add(&twenty_seven.mul(&b.pow(2)));
    if discriminant.is_zero() {
        return Err(WeierstrassError::NotElliptic);
    }
    // First integer point that is not a root of the discriminant.
    let t0 = (0..)
        .map(|k| BigRational::from_integer(k.into()))
        .find(|t| !discriminant.evaluate(t).is_zero())
        .expect("a nonzero polynomial has only finitely many roots");
    let n_at = numerator.evaluate(&t0);
    let d_at = discriminant.evaluate(&t0);
    let cross = numerator
        .scale(&d_at)
        .sub(&discriminant.scale(&n_at));
    if !cross.is_zero() {
        return Ok(JConstancy::NonConstant);
    }
    let value = BigRational::from_integer(1728.into()) * n_at / d_at;
    if value.is_zero() {
        Ok(JConstancy::ConstantZero)
    } else if value == BigRational::from_integer(1728.into()) {
        Ok(JConstancy::Constant1728)
    } else {
        Ok(JConstancy::ConstantOther(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn poly(coeffs: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_i64(coeffs)
    }

    fn twelve_distinct_roots() -> RationalPolynomial {
        let mut p = RationalPolynomial::one();
        for r in 0..12 {
            p = p.mul(&poly(&[-r, 1]));
        }
        p
    }

    #[test]
    fn profile_of_twelve_simple_roots() {
        let p = twelve_distinct_roots();
        let profile = multiplicity_profile(&p, 12).unwrap();
        assert_eq!(profile.finite_zeros, BTreeMap::from([(1, 12)]));
        assert_eq!(profile.infinity_multiplicity, 0);
    }

    #[test]
    fn profile_of_constant_lives_at_infinity() {
        let profile = multiplicity_profile(&RationalPolynomial::one(), 12).unwrap();
        assert!(profile.finite_zeros.is_empty());
        assert_eq!(profile.infinity_multiplicity, 12);
    }

    #[test]
    fn profile_mixed_multiplicities() {
        // t^5 (t-1)^4 (t-2)^2 (t-3), degree 12
        let p = RationalPolynomial::t()
            .pow(5)
            .mul(&poly(&[-1, 1]).pow(4))
            .mul(&poly(&[-2, 1]).pow(2))
            .mul(&poly(&[-3, 1]));
        let profile = multiplicity_profile(&p, 12).unwrap();
        assert_eq!(
            profile.finite_zeros,
            BTreeMap::from([(5, 1), (4, 1), (2, 1), (1, 1)])
        );
        assert_eq!(profile.infinity_multiplicity, 0);
    }

    #[test]
    fn profile_errors() {
        assert_eq!(
            multiplicity_profile(&RationalPolynomial::zero(), 12),
            Err(WeierstrassError::WrongJCase)
        );
        let p = RationalPolynomial::t().pow(13);
        assert!(matches!(
            multiplicity_profile(&p, 12),
            Err(WeierstrassError::DegreeExceedsBundle { .. })
        ));
    }

    #[test]
    fn zero_classification_tables() {
        let a = UnimodularMatrix::alpha();
        let b = UnimodularMatrix::beta();
        let zero_rows = [
            (1, FibreKind::II, 2, a.clone(), None),
            (2, FibreKind::IV, 4, a.pow(2), Some(AdeLabel::A(2))),
            (3, FibreKind::I0Star, 6, a.pow(3), Some(AdeLabel::D(4))),
            (4, FibreKind::IVStar, 8, a.pow(4), Some(AdeLabel::E(6))),
            (5, FibreKind::IIStar, 10, a.pow(5), Some(AdeLabel::E(8))),
        ];
        for (m, kind, euler, mono, sing) in zero_rows {
            let z = classify_zero(JCase::Zero, m).unwrap();
            assert_eq!((z.kind, z.euler, z.monodromy, z.singularity), (kind, euler, mono, sing));
        }
        let j1728_rows = [
            (1, FibreKind::III, 3, b.clone(), Some(AdeLabel::A(1))),
            (2, FibreKind::I0Star, 6, b.pow(2), Some(AdeLabel::D(4))),
            (3, FibreKind::IIIStar, 9, b.pow(3), Some(AdeLabel::E(7))),
        ];
        for (m, kind, euler, mono, sing) in j1728_rows {
            let z = classify_zero(JCase::J1728, m).unwrap();
            assert_eq!((z.kind, z.euler, z.monodromy, z.singularity), (kind, euler, mono, sing));
        }
        assert_eq!(
            classify_zero(JCase::Zero, 6),
            Err(WeierstrassError::ZeroOrderTooLarge { m: 6, max: 5 })
        );
        assert_eq!(
            classify_zero(JCase::J1728, 4),
            Err(WeierstrassError::ZeroOrderTooLarge { m: 4, max: 3 })
        );
    }

    #[test]
    fn euler_equals_two_or_three_times_order() {
        for m in 1..=5 {
            assert_eq!(classify_zero(JCase::Zero, m).unwrap().euler, 2 * m);
        }
        for m in 1..=3 {
            assert_eq!(classify_zero(JCase::J1728, m).unwrap().euler, 3 * m);
        }
    }

    #[test]
    fn monodromy_exponents_add_under_collision() {
        let a = UnimodularMatrix::alpha();
        for m in 1..=5 {
            let z = classify_zero(JCase::Zero, m).unwrap();
            assert_eq!(z.monodromy, a.pow(m));
        }
        let b = UnimodularMatrix::beta();
        for m in 1..=3 {
            let z = classify_zero(JCase::J1728, m).unwrap();
            assert_eq!(z.monodromy, b.pow(m));
        }
    }

    #[test]
    fn surface_with_twelve_simple_zeros() {
        let report = classify_surface(JCase::Zero, &twelve_distinct_roots()).unwrap();
        assert!(report.valid_k3);
        assert_eq!(report.fibres, vec![(FibreKind::II, 12)]);
        assert_eq!(report.euler_total, 24);
        assert!(report.local_singularities.is_empty());
    }

    #[test]
    fn surface_with_two_iiistar_and_one_i0star() {
        // a(t) = t^3 (t-1)^3 (t-2)^2: profile {3:2, 2:1}, degree 8.
        let p = RationalPolynomial::t()
            .pow(3)
            .mul(&poly(&[-1, 1]).pow(3))
            .mul(&poly(&[-2, 1]).pow(2));
        let report = classify_surface(JCase::J1728, &p).unwrap();
        assert!(report.valid_k3);
        assert_eq!(
            report.fibres,
            vec![(FibreKind::I0Star, 1), (FibreKind::IIIStar, 2)]
        );
        assert_eq!(report.euler_total, 24);
        assert_eq!(
            report.local_singularities,
            vec![(AdeLabel::D(4), 1), (AdeLabel::E(7), 2)]
        );
    }

    #[test]
    fn order_seven_zero_is_invalid_but_does_not_crash() {
        let p = RationalPolynomial::t().pow(7);
        let report = classify_surface(JCase::Zero, &p).unwrap();
        assert!(!report.valid_k3);
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].contains("order 7"));
        // The order-5 zero at infinity still classifies as II*.
        assert_eq!(report.fibres, vec![(FibreKind::IIStar, 1)]);
    }

    #[test]
    fn constant_section_is_invalid_via_infinity() {
        let report = classify_surface(JCase::Zero, &RationalPolynomial::one()).unwrap();
        assert!(!report.valid_k3);
        assert!(report.violations[0].contains("t=infinity"));
    }

    #[test]
    fn generic_case_is_four_i0star() {
        let r = generic_isotrivial_report();
        assert_eq!(r.fibres, vec![(FibreKind::I0Star, 4)]);
        assert_eq!(r.euler_total, 24);
        assert!(r.valid_k3);
    }

    #[test]
    fn j_constancy_cases() {
        let zero = RationalPolynomial::zero();
        let b = poly(&[1, 2, 3]);
        assert_eq!(
            j_invariant_constancy(&zero, &b).unwrap(),
            JConstancy::ConstantZero
        );
        let a = poly(&[5, -1]);
        assert_eq!(
            j_invariant_constancy(&a, &zero).unwrap(),
            JConstancy::Constant1728
        );
        assert_eq!(
            j_invariant_constancy(&poly(&[1]), &RationalPolynomial::t()).unwrap(),
            JConstancy::NonConstant
        );
        assert_eq!(
            j_invariant_constancy(&zero, &zero),
            Err(WeierstrassError::NotElliptic)
        );
        // Constant a and b with a value away from 0 and 1728.
        match j_invariant_constancy(&poly(&[1]), &poly(&[1])).unwrap() {
            JConstancy::ConstantOther(v) => {
                assert_eq!(v, BigRational::new(6912.into(), 31.into()));
            }
            other => panic!("expected ConstantOther, got {other:?}"),
        }
    }

    #[test]
    fn j_constancy_oracle_two_point_evaluation() {
        // Independent route: evaluate j at two non-root points and compare.
        let a = poly(&[1]);
        let b = RationalPolynomial::t();
        let j_at = |t: i64| {
            let t = BigRational::from_integer(t.into());
            let n = BigRational::from_integer(4.into()) * a.evaluate(&t).pow(3);
            let d = n.clone() + BigRational::from_integer(27.into()) * b.evaluate(&t).pow(2);
            BigRational::from_integer(1728.into()) * n / d
        };
        assert_ne!(j_at(0), j_at(1));
        assert_eq!(
            j_invariant_constancy(&a, &b).unwrap(),
            JConstancy::NonConstant
        );
    }
}
