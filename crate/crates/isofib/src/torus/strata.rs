//! Singular strata of a torus quotient.
//!
//! A stratum is a component K of the fixed locus of some nontrivial group
//! element, together with the pointwise stabilizer
//! H = { h : h fixes K pointwise } and the representation of H on the
//! transverse slice C^d / (directions of K). At a generic point of K the
//! local model of the quotient is (slice / H) x C^{dim K}.

use crate::cm::{Cm, CmKind, CmMatrix};
use crate::matrix::{column_hermite, smith_normal_form, IntMatrix};
use crate::torus::automorphism::TorusAutomorphism;
use crate::torus::fixed::FixedComponent;
use crate::torus::group::FiniteActionGroup;
use crate::torus::point::{frac, TorusPoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;

/// A singular stratum with its transverse data.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub sample: TorusPoint,
    /// Lattice basis of the component directions (columns).
    pub directions: Vec<Vec<BigInt>>,
    pub complex_dim: usize,
    pub transverse_complex_dim: usize,
    /// Indices into the group's element list; includes the identity.
    pub stabilizer: Vec<usize>,
    pub stabilizer_order: usize,
    pub stabilizer_cyclic: bool,
    /// Transverse action of each nontrivial stabilizer element, aligned
    /// with `stabilizer[1..]`.
    pub transverse_actions: Vec<CmMatrix>,
    /// True when every nontrivial stabilizer element acts on the slice
    /// without nonzero fixed vectors (the stabilizer is free outside the
    /// origin of the slice).
    pub fixed_point_free_slice: bool,
    /// Dimension of the subspace of the slice fixed by the whole
    /// stabilizer.
    pub invariant_slice_dim: usize,
}

impl Stratum {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "sample": self.sample.to_json(),
            "complex_dim": self.complex_dim,
            "transverse_complex_dim": self.transverse_complex_dim,
            "stabilizer_order": self.stabilizer_order,
            "stabilizer_cyclic": self.stabilizer_cyclic,
            "transverse_actions": self
                .transverse_actions
                .iter()
                .map(|m| m.to_json())
                .collect::<Vec<_>>(),
            "fixed_point_free_slice": self.fixed_point_free_slice,
            "invariant_slice_dim": self.invariant_slice_dim,
        })
    }
}

/// Canonical identity of a component as a subset of the torus: the Hermite
/// basis of its direction lattice plus canonical transverse coordinates of
/// the sample point. Two (element, component) pairs describing the same
/// subset get equal keys.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComponentKey {
    lattice: Vec<String>,
    coset: Vec<BigRational>,
}

/// Memoized per-lattice data: the transform rows that read off the
/// transverse coset of a point modulo (span directions + lattice).
pub struct CosetReader {
    /// Canonical Hermite basis of the direction lattice.
    pub hermite: IntMatrix,
    /// Rows of U (from the SNF of the Hermite basis) with zero diagonal:
    /// integer functionals vanishing on the directions.
    transverse_rows: Vec<Vec<BigInt>>,
}

impl CosetReader {
    pub fn new(lattice_dim: usize, directions: &[Vec<BigInt>]) -> Self {
        let b = IntMatrix::from_columns(lattice_dim, directions);
        let hermite = column_hermite(&b);
        let rank = hermite.cols();
        let snf = smith_normal_form(&hermite);
        let transverse_rows = (rank..lattice_dim)
            .map(|i| (0..lattice_dim).map(|j| snf.u[(i, j)].clone()).collect())
            .collect();
        CosetReader {
            hermite,
            transverse_rows,
        }
    }

    /// Coset coordinates of a point modulo (directions + lattice).
    pub fn coset(&self, p: &TorusPoint) -> Vec<BigRational> {
        self.transverse_rows
            .iter()
            .map(|row| {
                let mut acc = BigRational::zero();
                for (j, r) in row.iter().enumerate() {
                    if r.is_zero() {
                        continue;
                    }
                    acc += BigRational::from_integer(r.clone()) * &p.coords()[j];
                }
                frac(&acc)
            })
            .collect()
    }

    fn lattice_key(&self) -> Vec<String> {
        let mut key = vec![format!("{}x{}", self.hermite.rows(), self.hermite.cols())];
        for i in 0..self.hermite.rows() {
            for j in 0..self.hermite.cols() {
                key.push(self.hermite[(i, j)].to_string());
            }
        }
        key
    }
}

/// Cache of coset readers keyed by the canonical lattice basis.
#[derive(Default)]
pub struct StratumInterner {
    readers: HashMap<Vec<String>, CosetReader>,
    seen: HashMap<ComponentKey, usize>,
}

impl StratumInterner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Canonical key of a component; `None` the first time it is seen.
    /// Returns `Some(first_index)` for duplicates.
    pub fn intern(&mut self, lattice_dim: usize, comp: &FixedComponent, tag: usize) -> Option<usize> {
        let probe = CosetReader::new(lattice_dim, &comp.directions);
        let lkey = probe.lattice_key();
        let reader = self.readers.entry(lkey.clone()).or_insert(probe);
        let key = ComponentKey {
            lattice: lkey,
            coset: reader.coset(&comp.sample),
        };
        match self.seen.get(&key) {
            Some(&first) => Some(first),
            None => {
                self.seen.insert(key, tag);
                None
            }
        }
    }
}

/// Elements fixing the component pointwise: h(sample) = sample and the
/// linear part acts as the identity on the direction span.
pub fn pointwise_stabilizer(group: &FiniteActionGroup, comp: &FixedComponent) -> Vec<usize> {
    let n = 2 * group.complex_dim();
    group
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, h)| {
            comp.directions.iter().all(|col| {
                (0..n).all(|i| {
                    let mut acc = BigInt::zero();
                    for (j, cj) in col.iter().enumerate() {
                        if cj.is_zero() {
                            continue;
                        }
                        acc += &h.linear()[(i, j)] * cj;
                    }
                    acc == col[i]
                })
            }) && h.apply(&comp.sample) == comp.sample
        })
        .map(|(i, _)| i)
        .collect()
}

/// Complex direction vectors of a component: each lattice column packs
/// (p, q) pairs read as p + q*tau per factor.
fn complex_directions(kind: CmKind, d: usize, directions: &[Vec<BigInt>]) -> Vec<Vec<Cm>> {
    directions
        .iter()
        .map(|col| {
            (0..d)
                .map(|i| {
                    Cm::new(
                        BigRational::from_integer(col[2 * i].clone()),
                        BigRational::from_integer(col[2 * i + 1].clone()),
                    )
                })
                .collect()
        })
        .collect()
}

/// Evaluate the stratum data of a component under the full group.
pub fn evaluate_stratum(group: &FiniteActionGroup, comp: &FixedComponent) -> Stratum {
    let kind = group.kind();
    let d = group.complex_dim();
    let stabilizer = pointwise_stabilizer(group, comp);
    let stab_order = stabilizer.len();

    // Complex basis of the direction span.
    let cdirs = complex_directions(kind, d, &comp.directions);
    let indep = CmMatrix::independent_columns(kind, d, &cdirs);
    let w: Vec<Vec<Cm>> = indep.iter().map(|&i| cdirs[i].clone()).collect();
    debug_assert_eq!(w.len(), comp.complex_dim, "direction span dimension");

    // Complement: standard basis vectors extending the span to C^d.
    let mut basis_cols = w.clone();
    let mut complement = Vec::new();
    for i in 0..d {
        let mut e = vec![Cm::zero(); d];
        e[i] = Cm::one();
        let mut probe = basis_cols.clone();
        probe.push(e.clone());
        if CmMatrix::independent_columns(kind, d, &probe).len() == probe.len() {
            basis_cols.push(e);
            complement.push(i);
        }
    }
    debug_assert_eq!(basis_cols.len(), d);
    let slice_dim = complement.len();

    // Change-of-basis matrix with the direction span first.
    let mut b = CmMatrix::zero(kind, d);
    for (j, col) in basis_cols.iter().enumerate() {
        for i in 0..d {
            b[(i, j)] = col[i].clone();
        }
    }

    // Transverse action of h: express A_h * e_q in the mixed basis and keep
    // the complement coefficients.
    let w_len = w.len();
    let mut transverse_actions = Vec::new();
    let mut cyclic = stab_order == 1;
    for &hi in stabilizer.iter().skip(1) {
        let a = group.elements()[hi].holomorphic_matrix();
        let mut slice = CmMatrix::zero(kind, slice_dim);
        for (qj, &q) in complement.iter().enumerate() {
            let mut e = vec![Cm::zero(); d];
            e[q] = Cm::one();
            let image = a.mul_vec(&e);
            let coeffs = b.solve(&image).expect("basis is invertible");
            for (qi, &_qrow) in complement.iter().enumerate() {
                slice[(qi, qj)] = coeffs[w_len + qi].clone();
            }
        }
        transverse_actions.push(slice);
    }

    // Cyclic check: some element of full order.
    if stab_order > 1 {
        for &hi in &stabilizer {
            if group.elements()[hi]
                .order(stab_order)
                .is_some_and(|o| o == stab_order)
            {
                cyclic = true;
                break;
            }
        }
    }

    // Fixed-vector analysis on the slice.
    let identity = CmMatrix::identity(kind, slice_dim);
    let fixed_point_free_slice = !transverse_actions.is_empty()
        && transverse_actions
            .iter()
            .all(|s| !s.sub(&identity).det().is_zero());
    // dim of invariants = average of traces over the stabilizer.
    let mut trace_sum = Cm::from_int(slice_dim as i64); // identity contributes dim
    for s in &transverse_actions {
        trace_sum = trace_sum.add(&s.trace());
    }
    let avg = trace_sum.scale(&BigRational::new(1.into(), BigInt::from(stab_order)));
    assert!(avg.is_rational(), "invariant dimension must be rational");
    assert!(avg.re.denom().is_one(), "invariant dimension must be integral");
    let invariant_slice_dim = usize::try_from(avg.re.numer()).expect("nonnegative dimension");

    Stratum {
        sample: comp.sample.clone(),
        directions: comp.directions.clone(),
        complex_dim: comp.complex_dim,
        transverse_complex_dim: slice_dim,
        stabilizer_order: stab_order,
        stabilizer,
        stabilizer_cyclic: cyclic,
        transverse_actions,
        fixed_point_free_slice,
        invariant_slice_dim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::fixed::fixed_locus;
    use crate::torus::group::{builtin_action, BuiltinAction, DEFAULT_ORDER_CAP};

    #[test]
    fn translated_pair_product_stratum_is_minus_one_on_c4() {
        let g = builtin_action(&BuiltinAction::translated(3), DEFAULT_ORDER_CAP).unwrap();
        let g1g2 = g.element_from_word("g1.g2").unwrap();
        let locus = fixed_locus(&g1g2);
        assert!(locus.solvable);
        assert_eq!(locus.complex_dim, 2);
        // 4 solutions in each of the four negated coordinates: 256 pieces.
        assert_eq!(locus.component_count, BigInt::from(256));
        // The component through (1/4, 0, 3/4, 0, *, *); the block-swap
        // symmetry fixes diagonal components like x1 = x2 pointwise, so the
        // off-diagonal one carries the minimal stabilizer.
        let rat = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let witness_sample = TorusPoint::from_curve_coords(&[
            (rat(1, 4), rat(0, 1)),
            (rat(0, 1), rat(0, 1)),
            (rat(3, 4), rat(0, 1)),
            (rat(0, 1), rat(0, 1)),
            (rat(0, 1), rat(0, 1)),
            (rat(0, 1), rat(0, 1)),
        ]);
        let comp = locus
            .components
            .iter()
            .find(|c| c.sample == witness_sample)
            .expect("witness point is a component sample");
        let stratum = evaluate_stratum(&g, comp);
        assert_eq!(stratum.stabilizer_order, 2);
        assert_eq!(stratum.transverse_complex_dim, 4);
        assert!(stratum.stabilizer_cyclic);
        let minus = CmMatrix::scalar(CmKind::Rational, 4, &Cm::from_int(-1));
        assert_eq!(stratum.transverse_actions, vec![minus]);
        assert!(stratum.fixed_point_free_slice);
        assert_eq!(stratum.invariant_slice_dim, 0);
    }

    #[test]
    fn interner_identifies_duplicate_components() {
        let g = builtin_action(&BuiltinAction::Matsushita { k: 6, n: 3 }, DEFAULT_ORDER_CAP)
            .unwrap();
        let v1 = g.generator("v1").unwrap();
        let locus1 = fixed_locus(v1);
        // The inverse has the same fixed-point set.
        let locus2 = fixed_locus(&v1.inverse());
        assert_eq!(locus1.components.len(), 1);
        assert_eq!(locus2.components.len(), 1);
        let mut interner = StratumInterner::new();
        assert!(interner.intern(12, &locus1.components[0], 0).is_none());
        assert_eq!(interner.intern(12, &locus2.components[0], 1), Some(0));
    }

    #[test]
    fn matsushita_generator_stratum_has_cyclic_order_six_stabilizer() {
        let g = builtin_action(&BuiltinAction::Matsushita { k: 6, n: 3 }, DEFAULT_ORDER_CAP)
            .unwrap();
        let v1 = g.generator("v1").unwrap();
        let locus = fixed_locus(v1);
        assert_eq!(locus.complex_dim, 2);
        assert_eq!(locus.component_count, BigInt::from(1));
        let stratum = evaluate_stratum(&g, &locus.components[0]);
        assert_eq!(stratum.stabilizer_order, 6);
        assert!(stratum.stabilizer_cyclic);
        assert_eq!(stratum.transverse_complex_dim, 4);
        assert!(stratum.fixed_point_free_slice);
        assert_eq!(stratum.invariant_slice_dim, 0);
    }
}
