//! Stabilizer and singularity inventory of a torus quotient.
//!
//! Collects every isolated fixed point of a nontrivial element, computes
//! full stabilizers and orbits, aggregates counts by stabilizer order, and
//! attaches an A_{j-1} label whenever a cyclic stabilizer of order j acts
//! on a 2-dimensional slice with determinant one. Positive-dimensional
//! strata are reported with their transverse stabilizer representations.
//!
//! Point collection enumerates |det(M - I)| points per element, so groups
//! with large fixed-point sets are costly; the Kummer-type surface actions
//! are instant.

use crate::torus::fixed::{fixed_locus_bounded, FixedComponent};
use crate::torus::group::FiniteActionGroup;
use crate::torus::point::TorusPoint;
use crate::torus::strata::{evaluate_stratum, Stratum, StratumInterner};
use crate::torus::TorusError;
use crate::weierstrass::AdeLabel;
use std::collections::{BTreeMap, HashMap, HashSet};

/// Labeling note attached to every inventory: the tool derives A-labels
/// from stabilizer orders, which can disagree with ad-hoc chain counts.
pub const ADE_CONVENTION: &str = "cyclic stabilizers of order j acting with determinant one on a \
     2-dimensional slice are labeled A_{j-1}";

/// One orbit of singular points.
#[derive(Clone, Debug)]
pub struct PointOrbit {
    /// Lexicographically smallest point of the orbit.
    pub representative: TorusPoint,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub stabilizer_cyclic: bool,
    /// A_{order-1} when the stabilizer is cyclic with a determinant-one
    /// 2-dimensional slice action.
    pub ade: Option<AdeLabel>,
}

#[derive(Clone, Debug)]
pub struct SingularityInventory {
    pub point_orbits: Vec<PointOrbit>,
    /// stabilizer order -> number of points with that stabilizer order
    pub points_by_stabilizer_order: BTreeMap<usize, usize>,
    /// stabilizer order -> number of orbits
    pub orbits_by_stabilizer_order: BTreeMap<usize, usize>,
    /// ADE label -> number of orbits carrying it
    pub ade_counts: BTreeMap<String, usize>,
    /// Deduplicated positive-dimensional strata.
    pub strata: Vec<Stratum>,
    pub labeling_note: &'static str,
}

impl SingularityInventory {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "point_orbits": self
                .point_orbits
                .iter()
                .map(|o| {
                    serde_json::json!({
                        "representative": o.representative.to_json(),
                        "orbit_size": o.orbit_size,
                        "stabilizer_order": o.stabilizer_order,
                        "stabilizer_cyclic": o.stabilizer_cyclic,
                        "ade": o.ade.map(|l| l.to_string()),
                    })
                })
                .collect::<Vec<_>>(),
            "points_by_stabilizer_order": to_string_map(&self.points_by_stabilizer_order),
            "orbits_by_stabilizer_order": to_string_map(&self.orbits_by_stabilizer_order),
            "ade_counts": self
                .ade_counts
                .iter()
                .map(|(k, v)| (k.clone(), serde_json::json!(v)))
                .collect::<serde_json::Map<_, _>>(),
            "positive_dimensional_strata": self
                .strata
                .iter()
                .map(|s| s.to_json())
                .collect::<Vec<_>>(),
            "labeling_note": self.labeling_note,
        })
    }
}

fn to_string_map(m: &BTreeMap<usize, usize>) -> serde_json::Map<String, serde_json::Value> {
    m.iter()
        .map(|(k, v)| (k.to_string(), serde_json::json!(v)))
        .collect()
}

/// Full stabilizer of a point (element indices; includes the identity).
fn point_stabilizer(group: &FiniteActionGroup, p: &TorusPoint) -> Vec<usize> {
    group
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.apply(p) == *p)
        .map(|(i, _)| i)
        .collect()
}

/// ADE label of an isolated point: requires a 2-dimensional slice (so
/// complex dimension 2), a cyclic stabilizer, and determinant one.
fn ade_label(
    group: &FiniteActionGroup,
    stabilizer: &[usize],
    cyclic: bool,
) -> Option<AdeLabel> {
    if group.complex_dim() != 2 || stabilizer.len() < 2 || !cyclic {
        return None;
    }
    let order = stabilizer.len();
    // A generator of the cyclic stabilizer must act with determinant one.
    let generator = stabilizer.iter().find(|&&i| {
        group.elements()[i]
            .order(order)
            .is_some_and(|o| o == order)
    })?;
    let a = group.elements()[*generator].holomorphic_matrix();
    if a.det().is_one() {
        Some(AdeLabel::A(order as u32 - 1))
    } else {
        None
    }
}

/// Cap on the total number of isolated points the inventory will collect.
pub const DEFAULT_POINT_CAP: usize = 200_000;

pub fn singularity_inventory(
    group: &FiniteActionGroup,
) -> Result<SingularityInventory, TorusError> {
    let lattice_dim = 2 * group.complex_dim();

    // Collect isolated points of all nontrivial elements, and dedupe
    // positive-dimensional strata.
    let mut points: HashSet<TorusPoint> = HashSet::new();
    let mut interner = StratumInterner::new();
    let mut positive: Vec<FixedComponent> = Vec::new();
    let mut tag = 0usize;
    for g in group.elements().iter().skip(1) {
        let locus = fixed_locus_bounded(g, Some(DEFAULT_POINT_CAP));
        if !locus.solvable {
            continue;
        }
        if locus.components.is_empty() {
            return Err(TorusError::InventoryTooLarge {
                count: locus.component_count.to_string(),
            });
        }
        if locus.complex_dim == 0 {
            for comp in &locus.components {
                points.insert(comp.sample.clone());
                if points.len() > DEFAULT_POINT_CAP {
                    return Err(TorusError::InventoryTooLarge {
                        count: format!("more than {DEFAULT_POINT_CAP}"),
                    });
                }
            }
        } else {
            for comp in &locus.components {
                if interner.intern(lattice_dim, comp, tag).is_none() {
                    positive.push(comp.clone());
                    tag += 1;
                }
            }
        }
    }

    // Stabilizers, computed per point (data-parallel), then orbits.
    let mut sorted_points: Vec<TorusPoint> = points.into_iter().collect();
    sorted_points.sort();
    let stabilizers: Vec<Vec<usize>> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            sorted_points
                .par_iter()
                .map(|p| point_stabilizer(group, p))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            sorted_points
                .iter()
                .map(|p| point_stabilizer(group, p))
                .collect()
        }
    };

    let index_of: HashMap<&TorusPoint, usize> = sorted_points
        .iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut assigned = vec![false; sorted_points.len()];
    let mut point_orbits = Vec::new();
    let mut points_by_order: BTreeMap<usize, usize> = BTreeMap::new();
    let mut orbits_by_order: BTreeMap<usize, usize> = BTreeMap::new();
    let mut ade_counts: BTreeMap<String, usize> = BTreeMap::new();

    for i in 0..sorted_points.len() {
        if assigned[i] {
            continue;
        }
        let rep = &sorted_points[i];
        let mut orbit: Vec<usize> = Vec::new();
        for g in group.elements() {
            let image = g.apply(rep);
            let j = index_of
                .get(&image)
                .copied()
                .expect("orbits stay inside the collected point set");
            if !assigned[j] {
                assigned[j] = true;
                orbit.push(j);
            }
        }
        let stab = &stabilizers[i];
        let order = stab.len();
        debug_assert_eq!(orbit.len() * order, group.order(), "orbit-stabilizer");
        let cyclic = order == 1
            || stab.iter().any(|&gi| {
                group.elements()[gi]
                    .order(order)
                    .is_some_and(|o| o == order)
            });
        let ade = ade_label(group, stab, cyclic);
        if let Some(l) = ade {
            *ade_counts.entry(l.to_string()).or_default() += 1;
        }
        *points_by_order.entry(order).or_default() += orbit.len();
        *orbits_by_order.entry(order).or_default() += 1;
        point_orbits.push(PointOrbit {
            representative: rep.clone(),
            orbit_size: orbit.len(),
            stabilizer_order: order,
            stabilizer_cyclic: cyclic,
            ade,
        });
    }

    point_orbits.sort_by(|a, b| {
        b.stabilizer_order
            .cmp(&a.stabilizer_order)
            .then_with(|| a.representative.cmp(&b.representative))
    });

    let strata: Vec<Stratum> = positive
        .iter()
        .map(|comp| evaluate_stratum(group, comp))
        .collect();

    Ok(SingularityInventory {
        point_orbits,
        points_by_stabilizer_order: points_by_order,
        orbits_by_stabilizer_order: orbits_by_order,
        ade_counts,
        strata,
        labeling_note: ADE_CONVENTION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::group::{builtin_action, DEFAULT_ORDER_CAP};

    fn inventory(spec: &str) -> SingularityInventory {
        let g = builtin_action(&spec.parse().unwrap(), DEFAULT_ORDER_CAP).unwrap();
        singularity_inventory(&g).unwrap()
    }

    #[test]
    fn classical_kummer_sixteen_a1() {
        let inv = inventory("cyclic-surface:2");
        assert_eq!(inv.points_by_stabilizer_order, BTreeMap::from([(2, 16)]));
        assert_eq!(inv.orbits_by_stabilizer_order, BTreeMap::from([(2, 16)]));
        assert_eq!(inv.ade_counts, BTreeMap::from([("A1".to_string(), 16)]));
        assert!(inv.strata.is_empty());
    }

    #[test]
    fn order_three_action_nine_a2() {
        let inv = inventory("cyclic-surface:3");
        assert_eq!(inv.points_by_stabilizer_order, BTreeMap::from([(3, 9)]));
        assert_eq!(inv.orbits_by_stabilizer_order, BTreeMap::from([(3, 9)]));
        assert_eq!(inv.ade_counts, BTreeMap::from([("A2".to_string(), 9)]));
    }

    #[test]
    fn order_four_action_four_a3_six_a1() {
        let inv = inventory("cyclic-surface:4");
        assert_eq!(
            inv.points_by_stabilizer_order,
            BTreeMap::from([(4, 4), (2, 12)])
        );
        assert_eq!(
            inv.orbits_by_stabilizer_order,
            BTreeMap::from([(4, 4), (2, 6)])
        );
        assert_eq!(
            inv.ade_counts,
            BTreeMap::from([("A3".to_string(), 4), ("A1".to_string(), 6)])
        );
    }

    #[test]
    fn order_six_action_counts() {
        let inv = inventory("cyclic-surface:6");
        assert_eq!(
            inv.points_by_stabilizer_order,
            BTreeMap::from([(6, 1), (3, 8), (2, 15)])
        );
        assert_eq!(
            inv.orbits_by_stabilizer_order,
            BTreeMap::from([(6, 1), (3, 4), (2, 5)])
        );
        assert_eq!(
            inv.ade_counts,
            BTreeMap::from([
                ("A5".to_string(), 1),
                ("A2".to_string(), 4),
                ("A1".to_string(), 5)
            ])
        );
    }

    #[test]
    fn orbit_sizes_multiply_out() {
        let inv = inventory("cyclic-surface:6");
        for orbit in &inv.point_orbits {
            assert_eq!(orbit.orbit_size * orbit.stabilizer_order, 6);
        }
    }
}
