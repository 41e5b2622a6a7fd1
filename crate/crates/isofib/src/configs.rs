//! Singular-fibre configurations of isotrivial elliptic K3 surfaces.
//!
//! Three questions are mechanized here: which all-starred configurations
//! have Euler sum 24 (a partition problem over {6,8,9,10}); which zero
//! profiles of the driving section are admissible in each j-case; and, for
//! the starred configurations, what the trivial-monodromy-product equation
//! forces about the individual monodromies.

use crate::kodaira::{fibre_for, FibreKind};
use crate::partition;
use crate::poly::RationalPolynomial;
use crate::sl2z::{self, UnimodularMatrix};
use crate::weierstrass::{JCase, ZeroProfile};
use num_rational::BigRational;
use serde_json::json;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("configuration contains a fibre kind with infinite monodromy order: {0}")]
    InfiniteMonodromy(String),
    #[error("j-case must be 0 or 1728 for profile enumeration")]
    GenericJCase,
}

/// Multiset of fibre kinds with a j-case tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreConfiguration {
    /// (kind, count), sorted by decreasing Euler number then kind.
    pub fibres: Vec<(FibreKind, u32)>,
    pub j_case: JCase,
}

impl FibreConfiguration {
    pub fn new(fibres: Vec<(FibreKind, u32)>, j_case: JCase) -> Result<Self, ConfigError> {
        for (kind, _) in &fibres {
            if matches!(kind, FibreKind::Ik(_)) {
                return Err(ConfigError::InfiniteMonodromy(kind.to_string()));
            }
        }
        let mut fibres = fibres;
        fibres.sort_by(|(ka, _), (kb, _)| {
            fibre_for(*kb)
                .euler
                .cmp(&fibre_for(*ka).euler)
                .then(ka.cmp(kb))
        });
        Ok(FibreConfiguration { fibres, j_case })
    }

    pub fn euler_sum(&self) -> u32 {
        self.fibres
            .iter()
            .map(|(k, c)| fibre_for(*k).euler * c)
            .sum()
    }

    pub fn is_all_starred(&self) -> bool {
        self.fibres.iter().all(|(k, _)| k.is_starred())
    }

    /// Fibre kinds expanded with multiplicity, largest Euler number first.
    pub fn expanded(&self) -> Vec<FibreKind> {
        let mut out = Vec::new();
        for (k, c) in &self.fibres {
            for _ in 0..*c {
                out.push(*k);
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "j_case": self.j_case.to_string(),
            "fibres": self
                .fibres
                .iter()
                .map(|(k, c)| json!({"type": k.to_string(), "count": c}))
                .collect::<Vec<_>>(),
            "euler_sum": self.euler_sum(),
        })
    }
}

fn starred_kind_for_euler(e: u32) -> FibreKind {
    match e {
        6 => FibreKind::I0Star,
        8 => FibreKind::IVStar,
        9 => FibreKind::IIIStar,
        10 => FibreKind::IIStar,
        _ => unreachable!("not a starred Euler number"),
    }
}

/// j-case forced by a starred configuration: II* and IV* pin j to 0, III*
/// pins it to 1728, and bare I0* leaves j generic.
fn j_case_of_starred(kinds: &[FibreKind]) -> JCase {
    if kinds
        .iter()
        .any(|k| matches!(k, FibreKind::IIStar | FibreKind::IVStar))
    {
        JCase::Zero
    } else if kinds.iter().any(|k| matches!(k, FibreKind::IIIStar)) {
        JCase::J1728
    } else {
        JCase::Generic
    }
}

/// All configurations with every fibre starred and Euler sum 24, computed
/// by exhaustive partition of 24 into parts from {6, 8, 9, 10}.
pub fn enumerate_starred() -> Vec<FibreConfiguration> {
    partition::partitions_with_parts(24, &[6, 8, 9, 10])
        .into_iter()
        .map(|parts| {
            let kinds: Vec<FibreKind> = parts.iter().map(|&e| starred_kind_for_euler(e)).collect();
            let mut counts: BTreeMap<FibreKind, u32> = BTreeMap::new();
            for k in &kinds {
                *counts.entry(*k).or_default() += 1;
            }
            FibreConfiguration::new(counts.into_iter().collect(), j_case_of_starred(&kinds))
                .expect("starred kinds have finite monodromy")
        })
        .collect()
}

/// All admissible zero profiles for the given j-case: multisets of
/// multiplicities within the rational-double-point bound summing to the
/// bundle degree. Each is realizable by a section with distinct roots.
pub fn enumerate_profiles(j_case: JCase) -> Result<Vec<ZeroProfile>, ConfigError> {
    let (total, max_part) = match j_case {
        JCase::Zero => (12, 5),
        JCase::J1728 => (8, 3),
        JCase::Generic => return Err(ConfigError::GenericJCase),
    };
    Ok(partition::bounded_partitions(total, max_part)
        .into_iter()
        .map(|parts| {
            let mut finite_zeros: BTreeMap<u32, u32> = BTreeMap::new();
            for p in parts {
                *finite_zeros.entry(p).or_default() += 1;
            }
            ZeroProfile {
                finite_zeros,
                infinity_multiplicity: 0,
            }
        })
        .collect())
}

/// A section with the given profile, using distinct integer roots 0,1,2,...
pub fn realize_profile(profile: &ZeroProfile) -> RationalPolynomial {
    let mut p = RationalPolynomial::one();
    let mut root = 0i64;
    for (&m, &count) in &profile.finite_zeros {
        for _ in 0..count {
            let r = BigRational::from_integer(root.into());
            p = p.mul(&RationalPolynomial::linear_root(&r).pow(m));
            root += 1;
        }
    }
    p
}

/// What the trivial-product equation forces for a starred configuration.
#[derive(Clone, Debug)]
pub struct StarredRigidityReport {
    pub config: FibreConfiguration,
    pub word_length_bound: usize,
    /// Conjugacy-class representatives, in configuration order.
    pub class_representatives: Vec<UnimodularMatrix>,
    pub solution_count: u64,
    /// Per position: the single conjugate taken across all solutions, if
    /// the position is forced.
    pub forced_monodromies: Vec<Option<UnimodularMatrix>>,
    /// True when every position is forced to its class representative.
    pub all_forced_to_representatives: bool,
    /// Product of the representatives (must be the identity).
    pub product_is_identity: bool,
    /// Order of the subgroup generated by the representatives.
    pub monodromy_group_order: u64,
}

impl StarredRigidityReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "config": self.config.to_json(),
            "word_length_bound": self.word_length_bound,
            "class_representatives": self
                .class_representatives
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>(),
            "solution_count": self.solution_count,
            "forced_monodromies": self
                .forced_monodromies
                .iter()
                .map(|f| match f {
                    Some(m) => json!(m.to_string()),
                    None => json!(null),
                })
                .collect::<Vec<_>>(),
            "all_forced_to_representatives": self.all_forced_to_representatives,
            "product_is_identity": self.product_is_identity,
            "monodromy_group_order": self.monodromy_group_order,
        })
    }
}

/// Outcome of [`rigid_configuration_check`].
#[derive(Clone, Debug)]
pub enum RigidityCheckOutcome {
    /// Full bounded search was run (all-starred configurations).
    Starred(StarredRigidityReport),
    /// Only the exponent-sum necessary condition was evaluated; whether a
    /// trivial-product assignment exists beyond it is not decided here.
    NecessaryConditions {
        config: FibreConfiguration,
        exponent_sum_vanishes: bool,
        detail: String,
    },
}

impl RigidityCheckOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            RigidityCheckOutcome::Starred(r) => json!({
                "mode": "starred-search",
                "report": r.to_json(),
            }),
            RigidityCheckOutcome::NecessaryConditions {
                config,
                exponent_sum_vanishes,
                detail,
            } => json!({
                "mode": "necessary-conditions",
                "config": config.to_json(),
                "exponent_sum_vanishes": exponent_sum_vanishes,
                "detail": detail,
            }),
        }
    }
}

/// Generator exponent of a fibre kind's monodromy in its j-case family:
/// powers of alpha for j = 0 (modulus 6), powers of beta for j = 1728
/// (modulus 4). I0* sits in both families.
fn monodromy_exponent(j_case: JCase, kind: FibreKind) -> Option<(u32, u32)> {
    match (j_case, kind) {
        (JCase::Zero, FibreKind::II) => Some((1, 6)),
        (JCase::Zero, FibreKind::IV) => Some((2, 6)),
        (JCase::Zero, FibreKind::I0Star) => Some((3, 6)),
        (JCase::Zero, FibreKind::IVStar) => Some((4, 6)),
        (JCase::Zero, FibreKind::IIStar) => Some((5, 6)),
        (JCase::J1728, FibreKind::III) => Some((1, 4)),
        (JCase::J1728, FibreKind::I0Star) => Some((2, 4)),
        (JCase::J1728, FibreKind::IIIStar) => Some((3, 4)),
        (JCase::Generic, FibreKind::I0Star) => Some((1, 2)),
        _ => None,
    }
}

/// Sum of monodromy exponents over the configuration, reduced mod the
/// family modulus; vanishing is necessary for a trivial product.
pub fn exponent_sum_vanishes(config: &FibreConfiguration) -> Option<(bool, String)> {
    let mut total = 0u32;
    let mut modulus = 1u32;
    for kind in config.expanded() {
        let (e, m) = monodromy_exponent(config.j_case, kind)?;
        total += e;
        modulus = modulus.max(m);
    }
    let vanishes = total % modulus == 0;
    Some((
        vanishes,
        format!("exponent sum {total} mod {modulus} = {}", total % modulus),
    ))
}

/// Run the bounded conjugate-tuple search on a starred configuration and
/// report which monodromies the trivial-product equation forces.
///
/// The word-length bound is a completeness horizon: the search is
/// exhaustive over conjugators of token length at most `word_length_bound`
/// (6 by default in the CLI, which covers all four starred cases).
pub fn rigid_configuration_check(
    config: &FibreConfiguration,
    word_length_bound: usize,
) -> Result<RigidityCheckOutcome, ConfigError> {
    for (kind, _) in &config.fibres {
        if matches!(kind, FibreKind::Ik(_)) {
            return Err(ConfigError::InfiniteMonodromy(kind.to_string()));
        }
    }
    if !config.is_all_starred() {
        let (vanishes, detail) = exponent_sum_vanishes(config)
            .expect("finite-monodromy configurations have exponent data");
        return Ok(RigidityCheckOutcome::NecessaryConditions {
            config: config.clone(),
            exponent_sum_vanishes: vanishes,
            detail,
        });
    }

    let kinds = config.expanded();
    let classes: Vec<UnimodularMatrix> =
        kinds.iter().map(|k| fibre_for(*k).monodromy).collect();

    let k = classes.len();
    let mut solution_count = 0u64;
    // Per position: Some(conjugate) while a single value has been seen.
    let mut forced: Vec<Option<UnimodularMatrix>> = vec![None; k];
    let mut first = true;
    sl2z::for_each_rigidity_solution(&classes, word_length_bound, |sol| {
        solution_count += 1;
        if first {
            for (slot, c) in sol.conjugates.iter().enumerate() {
                forced[slot] = Some(c.clone());
            }
            first = false;
        } else {
            for (slot, c) in sol.conjugates.iter().enumerate() {
                if forced[slot].as_ref() != Some(c) {
                    forced[slot] = None;
                }
            }
        }
    });

    let all_forced_to_representatives = solution_count > 0
        && forced
            .iter()
            .zip(&classes)
            .all(|(f, rep)| f.as_ref() == Some(rep));
    let product = classes
        .iter()
        .fold(UnimodularMatrix::identity(), |acc, c| acc.mul(c));
    let monodromy_group_order =
        sl2z::group_order(&classes, 1000).expect("starred monodromies generate a finite group");

    Ok(RigidityCheckOutcome::Starred(StarredRigidityReport {
        config: config.clone(),
        word_length_bound,
        class_representatives: classes,
        solution_count,
        forced_monodromies: forced,
        all_forced_to_representatives,
        product_is_identity: product.is_identity(),
        monodromy_group_order,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::{classify_profile, JCase};

    #[test]
    fn starred_enumeration_is_the_four_partitions() {
        let configs = enumerate_starred();
        assert_eq!(configs.len(), 4);
        let as_eulers: Vec<Vec<u32>> = configs
            .iter()
            .map(|c| {
                c.expanded()
                    .iter()
                    .map(|k| fibre_for(*k).euler)
                    .collect::<Vec<_>>()
            })
            .collect();
        assert_eq!(
            as_eulers,
            vec![
                vec![6, 6, 6, 6],
                vec![8, 8, 8],
                vec![9, 9, 6],
                vec![10, 8, 6],
            ]
        );
        for c in &configs {
            assert_eq!(c.euler_sum(), 24);
            assert!(c.is_all_starred());
            let (vanishes, _) = exponent_sum_vanishes(c).unwrap();
            assert!(vanishes);
            // Direct matrix check: representatives multiply to the identity.
            let prod = c
                .expanded()
                .iter()
                .map(|k| fibre_for(*k).monodromy)
                .fold(UnimodularMatrix::identity(), |acc, m| acc.mul(&m));
            assert!(prod.is_identity());
        }
        let j_cases: Vec<JCase> = configs.iter().map(|c| c.j_case).collect();
        assert_eq!(
            j_cases,
            vec![JCase::Generic, JCase::Zero, JCase::J1728, JCase::Zero]
        );
    }

    #[test]
    fn profile_counts_match_dp_oracle() {
        let zero = enumerate_profiles(JCase::Zero).unwrap();
        assert_eq!(
            zero.len() as u64,
            partition::count_bounded_partitions(12, 5)
        );
        assert_eq!(zero.len(), 47);

        let j1728 = enumerate_profiles(JCase::J1728).unwrap();
        assert_eq!(
            j1728.len() as u64,
            partition::count_bounded_partitions(8, 3)
        );
        assert_eq!(j1728.len(), 10);

        assert_eq!(enumerate_profiles(JCase::Generic), Err(ConfigError::GenericJCase));
    }

    #[test]
    fn zero_case_contains_5421() {
        let zero = enumerate_profiles(JCase::Zero).unwrap();
        let target: BTreeMap<u32, u32> = [(5, 1), (4, 1), (2, 1), (1, 1)].into_iter().collect();
        assert!(zero.iter().any(|p| p.finite_zeros == target));
        // II* + IV* + IV + II has Euler sum 10 + 8 + 4 + 2 = 24.
        let profile = ZeroProfile {
            finite_zeros: target,
            infinity_multiplicity: 0,
        };
        let report = classify_profile(JCase::Zero, &profile);
        assert_eq!(report.euler_total, 24);
    }

    #[test]
    fn every_profile_classifies_to_euler_24() {
        for j in [JCase::Zero, JCase::J1728] {
            for profile in enumerate_profiles(j).unwrap() {
                let report = classify_profile(j, &profile);
                assert!(report.valid_k3);
                assert_eq!(report.euler_total, 24, "profile {profile:?}");
            }
        }
    }

    #[test]
    fn realized_profiles_round_trip() {
        for j in [JCase::Zero, JCase::J1728] {
            let bundle = j.bundle_degree().unwrap();
            for profile in enumerate_profiles(j).unwrap() {
                let p = realize_profile(&profile);
                let again = crate::weierstrass::multiplicity_profile(&p, bundle).unwrap();
                assert_eq!(again, profile);
            }
        }
    }

    #[test]
    fn rigidity_of_four_i0star() {
        let config = enumerate_starred().remove(0);
        let out = rigid_configuration_check(&config, 3).unwrap();
        let RigidityCheckOutcome::Starred(r) = out else {
            panic!("expected starred search")
        };
        assert!(r.all_forced_to_representatives);
        assert_eq!(r.monodromy_group_order, 2);
        assert!(r.product_is_identity);
        for f in &r.forced_monodromies {
            assert!(f.as_ref().unwrap().is_neg_identity());
        }
        // Every conjugator tuple works for central classes.
        let words = sl2z::reduced_words_up_to(3).len() as u64;
        assert_eq!(r.solution_count, words.pow(3));
    }

    #[test]
    fn rigidity_of_three_ivstar() {
        let configs = enumerate_starred();
        let out = rigid_configuration_check(&configs[1], 6).unwrap();
        let RigidityCheckOutcome::Starred(r) = out else {
            panic!("expected starred search")
        };
        assert_eq!(r.solution_count, 1);
        assert!(r.all_forced_to_representatives);
        assert_eq!(r.monodromy_group_order, 3);
    }

    #[test]
    fn rigidity_of_mixed_starred_configs() {
        let configs = enumerate_starred();
        // Two III* and one I0*: group order 4.
        let out = rigid_configuration_check(&configs[2], 6).unwrap();
        let RigidityCheckOutcome::Starred(r) = out else {
            panic!()
        };
        assert!(r.all_forced_to_representatives);
        assert_eq!(r.monodromy_group_order, 4);
        // II*, IV*, I0*: group order 6.
        let out = rigid_configuration_check(&configs[3], 6).unwrap();
        let RigidityCheckOutcome::Starred(r) = out else {
            panic!()
        };
        assert!(r.all_forced_to_representatives);
        assert_eq!(r.monodromy_group_order, 6);
    }

    #[test]
    fn mixed_configuration_gets_necessary_conditions_only() {
        let config = FibreConfiguration::new(
            vec![(FibreKind::II, 2), (FibreKind::IVStar, 1), (FibreKind::IV, 3)],
            JCase::Zero,
        )
        .unwrap();
        assert_eq!(config.euler_sum(), 24);
        let out = rigid_configuration_check(&config, 6).unwrap();
        let RigidityCheckOutcome::NecessaryConditions {
            exponent_sum_vanishes: v,
            ..
        } = out
        else {
            panic!("expected necessary-conditions mode")
        };
        // 1+1+4+2+2+2 = 12 = 0 mod 6.
        assert!(v);
    }

    #[test]
    fn infinite_monodromy_is_rejected() {
        assert!(matches!(
            FibreConfiguration::new(vec![(FibreKind::Ik(3), 1)], JCase::Generic),
            Err(ConfigError::InfiniteMonodromy(_))
        ));
    }
}
