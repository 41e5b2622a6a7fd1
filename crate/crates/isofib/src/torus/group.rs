//! Finite groups of torus automorphisms: closure and the built-in actions.
//!
//! Built-ins:
//! - `cyclic-surface:k` — the order-k diagonal action diag(a, a^{-1}) on
//!   E^2, k in {2, 3, 4, 6}; the quotients are the Kummer-type K3s.
//! - `hilbert:k,n` — G^n semidirect S_n on E^{2n}, with (a_1,...,a_n)
//!   acting by diag(a_1, a_1^{-1}, ..., a_n, a_n^{-1}) and S_n permuting
//!   the E^2 blocks.
//! - `translated:n` — (Z/2)^n semidirect S_n on E^{2n}, where the i-th
//!   sign flip also translates the other fibre coordinates by a 2-torsion
//!   point; works over any curve, so the field kind is rational.
//! - `matsushita:k,n` — the subgroup of `hilbert` with product of the unit
//!   tuple equal to 1 and only even permutations.

use crate::cm::{Cm, CmKind};
use crate::torus::automorphism::TorusAutomorphism;
use crate::torus::point::TorusPoint;
use crate::torus::TorusError;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// A finite group of torus automorphisms, closed under composition.
#[derive(Clone)]
pub struct FiniteActionGroup {
    name: String,
    kind: CmKind,
    complex_dim: usize,
    generators: Vec<(String, TorusAutomorphism)>,
    elements: Vec<TorusAutomorphism>,
}

impl FiniteActionGroup {
    /// Breadth-first closure of the generators. Deterministic element
    /// order: identity first, then by discovery.
    pub fn closure(
        name: impl Into<String>,
        generators: Vec<(String, TorusAutomorphism)>,
        cap: usize,
    ) -> Result<Self, TorusError> {
        assert!(!generators.is_empty(), "need at least one generator");
        let kind = generators[0].1.kind();
        let complex_dim = generators[0].1.complex_dim();
        for (_, g) in &generators {
            if g.kind() != kind || g.complex_dim() != complex_dim {
                return Err(TorusError::IncompatibleField);
            }
        }
        let identity = TorusAutomorphism::identity(kind, complex_dim);
        let mut index: HashMap<TorusAutomorphism, usize> = HashMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let g = elements[i].clone();
            for (_, h) in &generators {
                let gh = g.compose(h);
                if !index.contains_key(&gh) {
                    if elements.len() >= cap {
                        return Err(TorusError::OrderCapExceeded { cap });
                    }
                    index.insert(gh.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(gh);
                }
            }
        }
        Ok(FiniteActionGroup {
            name: name.into(),
            kind,
            complex_dim,
            generators,
            elements,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> CmKind {
        self.kind
    }

    pub fn complex_dim(&self) -> usize {
        self.complex_dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// All elements; index 0 is the identity.
    pub fn elements(&self) -> &[TorusAutomorphism] {
        &self.elements
    }

    pub fn generators(&self) -> &[(String, TorusAutomorphism)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&TorusAutomorphism> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
    }

    /// Compose named generators left to right as maps:
    /// "g1.g2" sends x to g1(g2(x)).
    pub fn element_from_word(&self, word: &str) -> Result<TorusAutomorphism, TorusError> {
        let mut out = TorusAutomorphism::identity(self.kind, self.complex_dim);
        for name in word.split('.').map(str::trim).filter(|s| !s.is_empty()) {
            let g = self
                .generator(name)
                .ok_or_else(|| TorusError::UnknownGenerator(name.to_string()))?;
            out = out.compose(g);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "field": self.kind.name(),
            "complex_dim": self.complex_dim,
            "order": self.order(),
            "generators": self
                .generators
                .iter()
                .map(|(n, g)| serde_json::json!({"name": n, "map": g.to_json()}))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Debug for FiniteActionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteActionGroup({}, order {}, E^{} over {})",
            self.name,
            self.order(),
            self.complex_dim,
            self.kind.name()
        )
    }
}

/// Specification of a built-in action.
#[derive(Clone, Debug, PartialEq)]
pub enum BuiltinAction {
    CyclicSurface { k: u32 },
    Hilbert { k: u32, n: usize },
    Translated { n: usize, torsion: (BigRational, BigRational) },
    Matsushita { k: u32, n: usize },
}

impl BuiltinAction {
    pub fn translated(n: usize) -> Self {
        BuiltinAction::Translated {
            n,
            torsion: (BigRational::new(1.into(), 2.into()), BigRational::zero()),
        }
    }
}

impl FromStr for BuiltinAction {
    type Err = TorusError;

    /// `cyclic-surface:4`, `hilbert:2,3`, `translated:3`, `matsushita:6,3`.
    fn from_str(s: &str) -> Result<Self, TorusError> {
        let err = || TorusError::UnknownAction(s.to_string());
        let (name, args) = s.split_once(':').ok_or_else(err)?;
        let nums: Vec<&str> = args.split(',').map(str::trim).collect();
        match (name.trim(), nums.as_slice()) {
            ("cyclic-surface", [k]) => Ok(BuiltinAction::CyclicSurface {
                k: k.parse().map_err(|_| err())?,
            }),
            ("hilbert", [k, n]) => Ok(BuiltinAction::Hilbert {
                k: k.parse().map_err(|_| err())?,
                n: n.parse().map_err(|_| err())?,
            }),
            ("translated", [n]) => Ok(BuiltinAction::translated(
                n.parse().map_err(|_| err())?,
            )),
            ("matsushita", [k, n]) => Ok(BuiltinAction::Matsushita {
                k: k.parse().map_err(|_| err())?,
                n: n.parse().map_err(|_| err())?,
            }),
            _ => Err(err()),
        }
    }
}

/// Field forced by the order of the units needed: k in {3, 6} needs the
/// sixth roots, k = 4 the fourth roots, k = 2 works anywhere (Gauss by
/// default).
fn field_for_order(k: u32) -> Result<CmKind, TorusError> {
    match k {
        2 | 4 => Ok(CmKind::Gauss),
        3 | 6 => Ok(CmKind::Eisenstein),
        _ => Err(TorusError::UnsupportedUnitOrder(k)),
    }
}

fn unit_pair(kind: CmKind, k: u32) -> Result<(Cm, Cm), TorusError> {
    let a = kind
        .unit_of_order(k)
        .ok_or(TorusError::UnsupportedUnitOrder(k))?;
    let ainv = a.inv(kind);
    Ok((a, ainv))
}

/// Identity units for all factors except `slot` (a, a^{-1}) at the slot.
fn diag_units(d: usize, slot: usize, a: &Cm, ainv: &Cm) -> Vec<Cm> {
    let mut units = vec![Cm::one(); d];
    units[2 * slot] = a.clone();
    units[2 * slot + 1] = ainv.clone();
    units
}

/// Block transposition of E^2 factors i and i+1 inside E^{2n}.
fn block_transposition(n: usize, i: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..2 * n).collect();
    perm.swap(2 * i, 2 * i + 2);
    perm.swap(2 * i + 1, 2 * i + 3);
    perm
}

/// Block 3-cycle (i, i+1, i+2) of E^2 factors.
fn block_three_cycle(n: usize, i: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..2 * n).collect();
    // factor i -> i+1 -> i+2 -> i
    for o in 0..2 {
        perm[2 * i + o] = 2 * (i + 1) + o;
        perm[2 * (i + 1) + o] = 2 * (i + 2) + o;
        perm[2 * (i + 2) + o] = 2 * i + o;
    }
    perm
}

/// Construct a built-in action and close it.
pub fn builtin_action(spec: &BuiltinAction, cap: usize) -> Result<FiniteActionGroup, TorusError> {
    match spec {
        BuiltinAction::CyclicSurface { k } => {
            let kind = field_for_order(*k)?;
            let (a, ainv) = unit_pair(kind, *k)?;
            let g =
                TorusAutomorphism::from_units(kind, &[a, ainv], TorusPoint::zero(2))?;
            FiniteActionGroup::closure(
                format!("cyclic-surface:{k}"),
                vec![("g".to_string(), g)],
                cap,
            )
        }
        BuiltinAction::Hilbert { k, n } => {
            let kind = field_for_order(*k)?;
            let (a, ainv) = unit_pair(kind, *k)?;
            let d = 2 * n;
            let mut gens = Vec::new();
            for i in 0..*n {
                let g = TorusAutomorphism::from_units(
                    kind,
                    &diag_units(d, i, &a, &ainv),
                    TorusPoint::zero(d),
                )?;
                gens.push((format!("a{}", i + 1), g));
            }
            for i in 0..n.saturating_sub(1) {
                let g = TorusAutomorphism::from_permutation(
                    kind,
                    &block_transposition(*n, i),
                    TorusPoint::zero(d),
                )?;
                gens.push((format!("s{}", i + 1), g));
            }
            FiniteActionGroup::closure(format!("hilbert:{k},{n}"), gens, cap)
        }
        BuiltinAction::Translated { n, torsion } => {
            let kind = CmKind::Rational;
            let d = 2 * n;
            let b = TorusPoint::new(vec![torsion.0.clone(), torsion.1.clone()]);
            if !b.is_two_torsion() || b.is_zero() {
                return Err(TorusError::NotTwoTorsion(b.to_string()));
            }
            let mut gens = Vec::new();
            for i in 0..*n {
                // Negate factor pair i; translate the other fibre (odd)
                // coordinates by the 2-torsion point.
                let units = diag_units(d, i, &Cm::from_int(-1), &Cm::from_int(-1));
                let mut pairs = vec![(BigRational::zero(), BigRational::zero()); d];
                for j in 0..*n {
                    if j != i {
                        pairs[2 * j] = (torsion.0.clone(), torsion.1.clone());
                    }
                }
                let t = TorusPoint::from_curve_coords(&pairs);
                let g = TorusAutomorphism::from_units(kind, &units, t)?;
                gens.push((format!("g{}", i + 1), g));
            }
            for i in 0..n.saturating_sub(1) {
                let g = TorusAutomorphism::from_permutation(
                    kind,
                    &block_transposition(*n, i),
                    TorusPoint::zero(d),
                )?;
                gens.push((format!("s{}", i + 1), g));
            }
            FiniteActionGroup::closure(format!("translated:{n}"), gens, cap)
        }
        BuiltinAction::Matsushita { k, n } => {
            if *n < 2 {
                return Err(TorusError::BadDimension(*n));
            }
            let kind = field_for_order(*k)?;
            let (a, ainv) = unit_pair(kind, *k)?;
            let d = 2 * n;
            let mut gens = Vec::new();
            // Product-one unit tuples are generated by (a at i, a^{-1} at i+1).
            for i in 0..n - 1 {
                let mut units = vec![Cm::one(); d];
                units[2 * i] = a.clone();
                units[2 * i + 1] = ainv.clone();
                units[2 * (i + 1)] = ainv.clone();
                units[2 * (i + 1) + 1] = a.clone();
                let g = TorusAutomorphism::from_units(kind, &units, TorusPoint::zero(d))?;
                gens.push((format!("v{}", i + 1), g));
            }
            // Alternating part: consecutive 3-cycles (trivial for n = 2).
            for i in 0..n.saturating_sub(2) {
                let g = TorusAutomorphism::from_permutation(
                    kind,
                    &block_three_cycle(*n, i),
                    TorusPoint::zero(d),
                )?;
                gens.push((format!("c{}", i + 1), g));
            }
            FiniteActionGroup::closure(format!("matsushita:{k},{n}"), gens, cap)
        }
    }
}

/// The sample set exercised by the verification suite.
pub fn builtin_sample_set() -> Vec<BuiltinAction> {
    vec![
        BuiltinAction::CyclicSurface { k: 2 },
        BuiltinAction::CyclicSurface { k: 3 },
        BuiltinAction::CyclicSurface { k: 4 },
        BuiltinAction::CyclicSurface { k: 6 },
        BuiltinAction::Hilbert { k: 2, n: 2 },
        BuiltinAction::Hilbert { k: 2, n: 3 },
        BuiltinAction::Hilbert { k: 3, n: 2 },
        BuiltinAction::Hilbert { k: 4, n: 2 },
        BuiltinAction::Hilbert { k: 6, n: 2 },
        BuiltinAction::Hilbert { k: 6, n: 3 },
        BuiltinAction::translated(2),
        BuiltinAction::translated(3),
        BuiltinAction::translated(4),
        BuiltinAction::Matsushita { k: 2, n: 3 },
        BuiltinAction::Matsushita { k: 3, n: 3 },
        BuiltinAction::Matsushita { k: 4, n: 3 },
        BuiltinAction::Matsushita { k: 6, n: 2 },
        BuiltinAction::Matsushita { k: 6, n: 3 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(spec: &str) -> FiniteActionGroup {
        builtin_action(&spec.parse().unwrap(), DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn cyclic_surface_orders() {
        for (k, field) in [(2, "gauss"), (3, "eisenstein"), (4, "gauss"), (6, "eisenstein")] {
            let g = close(&format!("cyclic-surface:{k}"));
            assert_eq!(g.order(), k as usize);
            assert_eq!(g.kind().name(), field);
            assert_eq!(g.complex_dim(), 2);
        }
        assert!(matches!(
            builtin_action(&BuiltinAction::CyclicSurface { k: 5 }, 100),
            Err(TorusError::UnsupportedUnitOrder(5))
        ));
    }

    #[test]
    fn hilbert_orders_match_formula() {
        for (k, n) in [(2usize, 2usize), (2, 3), (3, 2), (4, 2), (6, 2)] {
            let g = close(&format!("hilbert:{k},{n}"));
            let expected = k.pow(n as u32) * (1..=n).product::<usize>();
            assert_eq!(g.order(), expected, "hilbert:{k},{n}");
        }
    }

    #[test]
    fn translated_order_and_generators() {
        let g = close("translated:3");
        assert_eq!(g.order(), 48);
        assert_eq!(g.kind(), CmKind::Rational);
        // Generators commute pairwise as maps.
        let g1 = g.generator("g1").unwrap();
        let g2 = g.generator("g2").unwrap();
        assert_eq!(g1.compose(g2), g2.compose(g1));
        // gamma_1 gamma_2 negates the first two factors and translates them.
        let prod = g.element_from_word("g1.g2").unwrap();
        let m = prod.holomorphic_matrix();
        for i in 0..4 {
            assert_eq!(m[(i, i)], Cm::from_int(-1));
        }
        for i in 4..6 {
            assert_eq!(m[(i, i)], Cm::one());
        }
    }

    #[test]
    fn translated_rejects_non_torsion() {
        let bad = BuiltinAction::Translated {
            n: 3,
            torsion: (BigRational::new(1.into(), 3.into()), BigRational::zero()),
        };
        assert!(matches!(
            builtin_action(&bad, 100),
            Err(TorusError::NotTwoTorsion(_))
        ));
    }

    #[test]
    fn matsushita_orders() {
        // |Gamma'| = k^{n-1} * n!/2
        for (k, n, expected) in [(6, 3, 108), (2, 3, 12), (6, 2, 6), (3, 3, 27)] {
            let g = close(&format!("matsushita:{k},{n}"));
            assert_eq!(g.order(), expected, "matsushita:{k},{n}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            builtin_action(&BuiltinAction::Hilbert { k: 6, n: 4 }, DEFAULT_ORDER_CAP),
            Err(TorusError::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn element_word_lookup() {
        let g = close("translated:2");
        assert!(g.element_from_word("g1.bogus").is_err());
        let e = g.element_from_word("g1.g1").unwrap();
        assert!(e.is_identity());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            "cyclic-surface:4".parse::<BuiltinAction>().unwrap(),
            BuiltinAction::CyclicSurface { k: 4 }
        );
        assert_eq!(
            "hilbert:2,3".parse::<BuiltinAction>().unwrap(),
            BuiltinAction::Hilbert { k: 2, n: 3 }
        );
        assert!("nope:1".parse::<BuiltinAction>().is_err());
        assert!("translated".parse::<BuiltinAction>().is_err());
    }
}
