//! Dimensions of invariant holomorphic p-forms.
//!
//! Holomorphic p-forms on E^d form the p-th exterior power of the span of
//! dz_1..dz_d; an affine map acts through its linear part only. The
//! dimension of the invariant subspace is the group average of the traces
//! of the exterior-power action, read off exactly from characteristic
//! polynomial coefficients over the endomorphism field. The result is
//! checked to be a nonnegative rational integer before being returned.

use crate::cm::{Cm, CmMatrix};
use crate::torus::group::FiniteActionGroup;
use crate::torus::TorusError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// dim of the G-invariant holomorphic p-forms on E^d.
pub fn invariant_form_dimension(group: &FiniteActionGroup, p: usize) -> Result<u64, TorusError> {
    let d = group.complex_dim();
    if p > d {
        return Err(TorusError::FormDegreeTooLarge { p, d });
    }
    let matrices = group
        .elements()
        .iter()
        .map(|g| g.holomorphic_matrix())
        .collect::<Vec<_>>();
    average_exterior_trace(group, p, &matrices)
}

/// dim of the invariant p-forms on the product of the even (base) factors.
///
/// Requires the action to preserve the even-coordinate span, which holds
/// for all the built-in actions; the induced matrices are the even-even
/// blocks.
pub fn base_invariant_form_dimension(
    group: &FiniteActionGroup,
    p: usize,
) -> Result<u64, TorusError> {
    let d = group.complex_dim();
    if d % 2 != 0 {
        return Err(TorusError::OddDimension(d));
    }
    let base_dim = d / 2;
    if p > base_dim {
        return Err(TorusError::FormDegreeTooLarge { p, d: base_dim });
    }
    let kind = group.kind();
    let mut matrices = Vec::with_capacity(group.order());
    for g in group.elements() {
        let a = g.holomorphic_matrix();
        // Check the odd/even block structure and extract the even block.
        let mut base = CmMatrix::zero(kind, base_dim);
        for i in 0..d {
            for j in 0..d {
                let mixing = (i % 2) != (j % 2);
                if mixing && !a[(i, j)].is_zero() {
                    return Err(TorusError::MixesBaseAndFibre);
                }
                if i % 2 == 1 && j % 2 == 1 {
                    base[(i / 2, j / 2)] = a[(i, j)].clone();
                }
            }
        }
        matrices.push(base);
    }
    average_exterior_trace(group, p, &matrices)
}

fn average_exterior_trace(
    group: &FiniteActionGroup,
    p: usize,
    matrices: &[CmMatrix],
) -> Result<u64, TorusError> {
    let sum = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            matrices
                .par_iter()
                .map(|a| a.exterior_trace(p))
                .reduce(Cm::zero, |x, y| x.add(&y))
        }
        #[cfg(not(feature = "parallel"))]
        {
            matrices
                .iter()
                .map(|a| a.exterior_trace(p))
                .fold(Cm::zero(), |x, y| x.add(&y))
        }
    };
    let avg = sum.scale(&BigRational::new(
        BigInt::one(),
        BigInt::from(group.order()),
    ));
    if !avg.is_rational() || !avg.re.denom().is_one() {
        return Err(TorusError::NonIntegralAverage(format!(
            "{:?} for p = {p}",
            avg
        )));
    }
    u64::try_from(avg.re.numer()).map_err(|_| {
        TorusError::NonIntegralAverage(format!("negative average {:?} for p = {p}", avg))
    })
}
