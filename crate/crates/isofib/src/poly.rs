//! Dense univariate polynomials over the exact rationals.
//!
//! Only what the zero-multiplicity analysis needs: ring operations, exact
//! division, gcd, and Yun's square-free decomposition. Root multiplicities
//! over the algebraic closure are read off from the decomposition without
//! any root-finding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot parse polynomial coefficient {0:?}")]
    Parse(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact division")]
    InexactDivision,
}

/// Polynomial with exact rational coefficients, constant term first.
/// Trailing zero coefficients are stripped; the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RationalPolynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RationalPolynomial::new(vec![c])
    }

    /// The monomial t.
    pub fn t() -> Self {
        RationalPolynomial::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        RationalPolynomial::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// t - r
    pub fn linear_root(r: &BigRational) -> Self {
        RationalPolynomial::new(vec![-r.clone(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn evaluate(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            let b = other
                .coeffs
                .get(i)
                .cloned()
                .unwrap_or_else(BigRational::zero);
            out.push(a + b);
        }
        RationalPolynomial::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        RationalPolynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut out = RationalPolynomial::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return RationalPolynomial::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        RationalPolynomial::new(out)
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading_coefficient().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![
            BigRational::zero();
            self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1
        ];
        while !rem.is_zero() && rem.degree().unwrap() >= dd {
            let rd = rem.degree().unwrap();
            let factor = rem.leading_coefficient().unwrap() / &lead;
            let shift = rd - dd;
            quot[shift] = factor.clone();
            // rem -= factor * t^shift * divisor
            let mut sub = vec![BigRational::zero(); shift];
            sub.extend(divisor.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&RationalPolynomial::new(sub));
            if rem.degree().map_or(true, |d| d < rd) {
                continue;
            }
            // Exact arithmetic always cancels the leading term.
            unreachable!("leading term must cancel in exact division step");
        }
        Ok((RationalPolynomial::new(quot), rem))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    /// Scales to a primitive integer polynomial (content removed, positive
    /// leading coefficient). Keeps coefficients small through gcd chains.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = num_integer::gcd(content, v.clone());
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        RationalPolynomial::new(
            ints.iter()
                .map(|v| BigRational::from_integer(v / &content))
                .collect(),
        )
    }

    /// Monic gcd over Q, computed on primitive parts to control growth.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading_coefficient().unwrap().clone();
        a.scale(&lead.recip())
    }

    /// Yun's square-free decomposition: returns pairs (factor, multiplicity)
    /// with the factors square-free, pairwise coprime, and monic, such that
    /// the product of factor^multiplicity equals the input up to a constant.
    /// Factors of degree zero are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(RationalPolynomial, u32)> {
        assert!(!self.is_zero(), "square-free decomposition of zero");
        if self.is_constant() {
            return Vec::new();
        }
        let f = {
            let lead = self.leading_coefficient().unwrap().clone();
            self.scale(&lead.recip())
        };
        let fp = f.derivative();
        let g = f.gcd(&fp);
        if g.is_constant() {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        let mut w = f.div_exact(&g).expect("gcd divides");
        let mut y = fp.div_exact(&g).expect("gcd divides derivative");
        let mut i = 1u32;
        loop {
            let z = y.sub(&w.derivative());
            if z.is_zero() {
                if !w.is_constant() {
                    out.push((w, i));
                }
                break;
            }
            let d = w.gcd(&z);
            if !d.is_constant() {
                out.push((d.clone(), i));
            }
            w = w.div_exact(&d).expect("factor divides");
            y = z.div_exact(&d).expect("factor divides");
            i += 1;
        }
        out
    }
}

impl fmt::Display for RationalPolynomial {
    /// Comma-separated coefficients, constant term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poly[{self}]")
    }
}

impl FromStr for RationalPolynomial {
    type Err = PolyError;

    /// Parses comma-separated rational coefficients, constant term first,
    /// e.g. `"0,1,-3/2"` for -3/2 t^2 + t.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let mut coeffs = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let c = if let Some((num, den)) = tok.split_once('/') {
                let n = BigInt::from_str(num.trim()).map_err(|_| PolyError::Parse(tok.into()))?;
                let d = BigInt::from_str(den.trim()).map_err(|_| PolyError::Parse(tok.into()))?;
                if d.is_zero() {
                    return Err(PolyError::Parse(tok.into()));
                }
                BigRational::new(n, d)
            } else {
                BigInt::from_str(tok)
                    .map(BigRational::from_integer)
                    .map_err(|_| PolyError::Parse(tok.into()))?
            };
            coeffs.push(c);
        }
        Ok(RationalPolynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_and_display() {
        let p: RationalPolynomial = "0,1,-3/2".parse().unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.coeffs()[2], rat(-3, 2));
        assert_eq!(p.to_string(), "0,1,-3/2");
        assert!("1,x".parse::<RationalPolynomial>().is_err());
        assert!("1/0".parse::<RationalPolynomial>().is_err());
        // Trailing zeros are stripped.
        let q: RationalPolynomial = "1,0,0".parse().unwrap();
        assert_eq!(q.degree(), Some(0));
    }

    #[test]
    fn division_and_gcd() {
        // (t-1)(t-2) / (t-1) = (t-2)
        let p = RationalPolynomial::from_i64(&[2, -3, 1]);
        let d = RationalPolynomial::from_i64(&[-1, 1]);
        let q = p.div_exact(&d).unwrap();
        assert_eq!(q, RationalPolynomial::from_i64(&[-2, 1]));

        let a = RationalPolynomial::from_i64(&[-1, 0, 1]); // (t-1)(t+1)
        let b = RationalPolynomial::from_i64(&[1, 2, 1]); // (t+1)^2
        assert_eq!(a.gcd(&b), RationalPolynomial::from_i64(&[1, 1]));
        assert_eq!(
            RationalPolynomial::from_i64(&[2]).gcd(&RationalPolynomial::from_i64(&[0])),
            RationalPolynomial::one()
        );
    }

    #[test]
    fn squarefree_decomposition_known_example() {
        // t^5 (t-1)^4 (t-2)^2 (t-3)
        let p = RationalPolynomial::t()
            .pow(5)
            .mul(&RationalPolynomial::from_i64(&[-1, 1]).pow(4))
            .mul(&RationalPolynomial::from_i64(&[-2, 1]).pow(2))
            .mul(&RationalPolynomial::from_i64(&[-3, 1]));
        assert_eq!(p.degree(), Some(12));
        let dec = p.squarefree_decomposition();
        let by_mult: std::collections::BTreeMap<u32, usize> = dec
            .iter()
            .map(|(f, m)| (*m, f.degree().unwrap()))
            .collect();
        let expected: std::collections::BTreeMap<u32, usize> =
            [(1u32, 1usize), (2, 1), (4, 1), (5, 1)].into_iter().collect();
        assert_eq!(by_mult, expected);
        // Reconstruction up to the (monic) normalization.
        let mut rebuilt = RationalPolynomial::one();
        for (f, m) in &dec {
            rebuilt = rebuilt.mul(&f.pow(*m));
        }
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn squarefree_of_squarefree_is_trivial() {
        let p = RationalPolynomial::from_i64(&[-6, 11, -6, 1]); // (t-1)(t-2)(t-3)
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[0].1, 1);
        assert_eq!(dec[0].0.degree(), Some(3));
    }

    proptest! {
        /// Build a polynomial from known distinct roots and multiplicities;
        /// the decomposition must recover exactly the multiplicity profile.
        #[test]
        fn squarefree_recovers_multiplicities(mults in proptest::collection::vec(1u32..5, 1..5)) {
            let mut p = RationalPolynomial::one();
            let mut expected: std::collections::BTreeMap<u32, usize> = Default::default();
            for (i, &m) in mults.iter().enumerate() {
                let root = rat(i as i64, 1);
                p = p.mul(&RationalPolynomial::linear_root(&root).pow(m));
                *expected.entry(m).or_default() += 1;
            }
            let dec = p.squarefree_decomposition();
            let got: std::collections::BTreeMap<u32, usize> = dec
                .iter()
                .map(|(f, m)| (*m, f.degree().unwrap()))
                .collect();
            prop_assert_eq!(got, expected);
        }

        #[test]
        fn division_inverts_multiplication(
            a in proptest::collection::vec(-6i64..6, 1..5),
            b in proptest::collection::vec(-6i64..6, 1..5),
        ) {
            let pa = RationalPolynomial::from_i64(&a);
            let pb = RationalPolynomial::from_i64(&b);
            prop_assume!(!pa.is_zero() && !pb.is_zero());
            let prod = pa.mul(&pb);
            prop_assert_eq!(prod.div_exact(&pb).unwrap(), pa);
        }
    }
}
