//! Exact arithmetic in the endomorphism fields of CM elliptic curves.
//!
//! An element is a pair (re, im) of rationals meaning `re + im*tau`, where
//! tau = i (Gauss, tau^2 = -1), tau = zeta a primitive sixth root of unity
//! (Eisenstein, zeta^2 = zeta - 1), or absent (rational, im = 0). On
//! lattice coordinates of C/<1,tau>, multiplication by tau is the integer
//! block returned by [`CmKind::j_block`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Which endomorphism field the curve carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmKind {
    /// No extra endomorphisms; only the units ±1 are available.
    Rational,
    /// tau = i; finite unit group {±1, ±i} of order 4.
    Gauss,
    /// tau = zeta, primitive sixth root; unit group <zeta> of order 6.
    Eisenstein,
}

impl CmKind {
    /// Integer 2x2 block of multiplication by tau on lattice coordinates,
    /// acting on column vectors. `None` for the rational kind.
    pub fn j_block(&self) -> Option<[[i64; 2]; 2]> {
        match self {
            CmKind::Rational => None,
            CmKind::Gauss => Some([[0, -1], [1, 0]]),
            // zeta*(p + q*zeta) = -q + (p+q)*zeta
            CmKind::Eisenstein => Some([[0, -1], [1, 1]]),
        }
    }

    /// Order of the finite unit group.
    pub fn unit_group_order(&self) -> u32 {
        match self {
            CmKind::Rational => 2,
            CmKind::Gauss => 4,
            CmKind::Eisenstein => 6,
        }
    }

    /// A unit of exact multiplicative order k, if the field has one.
    pub fn unit_of_order(&self, k: u32) -> Option<Cm> {
        if k == 0 || self.unit_group_order() % k != 0 {
            return None;
        }
        let gen = match self {
            CmKind::Rational => Cm::from_int(-1),
            CmKind::Gauss => Cm::tau(),
            CmKind::Eisenstein => Cm::tau(),
        };
        // gen has order unit_group_order; raise to the cofactor.
        let e = self.unit_group_order() / k;
        Some(gen.pow(*self, e))
    }

    pub fn name(&self) -> &'static str {
        match self {
            CmKind::Rational => "rational",
            CmKind::Gauss => "gauss",
            CmKind::Eisenstein => "eisenstein",
        }
    }

    /// Symbol used when printing the imaginary part.
    fn tau_symbol(&self) -> &'static str {
        match self {
            CmKind::Rational => "?",
            CmKind::Gauss => "i",
            CmKind::Eisenstein => "z",
        }
    }
}

/// Field element `re + im*tau` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cm {
    pub re: BigRational,
    pub im: BigRational,
}

impl Cm {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Cm { re, im }
    }

    pub fn zero() -> Self {
        Cm::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Cm::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Cm::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn tau() -> Self {
        Cm::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &Cm) -> Cm {
        Cm::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Cm) -> Cm {
        Cm::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Cm {
        Cm::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, kind: CmKind, o: &Cm) -> Cm {
        let (p, q) = (&self.re, &self.im);
        let (r, s) = (&o.re, &o.im);
        match kind {
            CmKind::Rational => {
                debug_assert!(q.is_zero() && s.is_zero());
                Cm::new(p * r, BigRational::zero())
            }
            // (p+qi)(r+si) = pr - qs + (ps+qr) i
            CmKind::Gauss => Cm::new(p * r - q * s, p * s + q * r),
            // (p+qz)(r+sz) = pr - qs + (ps+qr+qs) z   using z^2 = z-1
            CmKind::Eisenstein => Cm::new(p * r - q * s, p * s + q * r + q * s),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Cm {
        Cm::new(&self.re * s, &self.im * s)
    }

    pub fn conj(&self, kind: CmKind) -> Cm {
        match kind {
            CmKind::Rational => self.clone(),
            // conj(p+qi) = p - qi
            CmKind::Gauss => Cm::new(self.re.clone(), -self.im.clone()),
            // conj(zeta) = 1 - zeta, so conj(p+qz) = (p+q) - qz
            CmKind::Eisenstein => Cm::new(&self.re + &self.im, -self.im.clone()),
        }
    }

    /// Field norm: a * conj(a), always rational.
    pub fn norm(&self, kind: CmKind) -> BigRational {
        let n = self.mul(kind, &self.conj(kind));
        debug_assert!(n.im.is_zero());
        n.re
    }

    pub fn inv(&self, kind: CmKind) -> Cm {
        assert!(!self.is_zero(), "inverse of zero");
        let n = self.norm(kind);
        self.conj(kind).scale(&n.recip())
    }

    pub fn pow(&self, kind: CmKind, mut k: u32) -> Cm {
        let mut out = Cm::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(kind, &base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(kind, &base);
            }
        }
        out
    }

    /// Multiplicative order among the finite units, if this is one.
    pub fn unit_order(&self, kind: CmKind) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=kind.unit_group_order() {
            if p.is_one() {
                return Some(k);
            }
            p = p.mul(kind, self);
        }
        None
    }

    pub fn display(&self, kind: CmKind) -> String {
        use num_traits::Signed;
        if self.im.is_zero() {
            return self.re.to_string();
        }
        let sym = kind.tau_symbol();
        if self.re.is_zero() {
            return format!("{}{sym}", self.im);
        }
        let sep = if self.im.is_negative() { "" } else { "+" };
        format!("{}{}{}{sym}", self.re, sep, self.im)
    }
}

impl fmt::Debug for Cm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}+{}t", self.re, self.im)
        }
    }
}

/// Dense square matrix over a CM field.
#[derive(Clone, PartialEq, Eq)]
pub struct CmMatrix {
    pub kind: CmKind,
    n: usize,
    data: Vec<Cm>,
}

impl CmMatrix {
    pub fn new(kind: CmKind, n: usize, data: Vec<Cm>) -> Self {
        assert_eq!(data.len(), n * n);
        CmMatrix { kind, n, data }
    }

    pub fn identity(kind: CmKind, n: usize) -> Self {
        let mut m = CmMatrix::zero(kind, n);
        for i in 0..n {
            m[(i, i)] = Cm::one();
        }
        m
    }

    pub fn zero(kind: CmKind, n: usize) -> Self {
        CmMatrix::new(kind, n, vec![Cm::zero(); n * n])
    }

    pub fn scalar(kind: CmKind, n: usize, c: &Cm) -> Self {
        let mut m = CmMatrix::zero(kind, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diagonal(kind: CmKind, entries: &[Cm]) -> Self {
        let mut m = CmMatrix::zero(kind, entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn mul(&self, o: &CmMatrix) -> CmMatrix {
        assert_eq!(self.n, o.n);
        let mut out = CmMatrix::zero(self.kind, self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    let t = a.mul(self.kind, &o[(k, j)]);
                    out[(i, j)] = out[(i, j)].add(&t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cm]) -> Vec<Cm> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = Cm::zero();
                for j in 0..self.n {
                    acc = acc.add(&self[(i, j)].mul(self.kind, &v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> CmMatrix {
        let mut out = CmMatrix::zero(self.kind, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Cm {
        let mut acc = Cm::zero();
        for i in 0..self.n {
            acc = acc.add(&self[(i, i)]);
        }
        acc
    }

    pub fn sub(&self, o: &CmMatrix) -> CmMatrix {
        assert_eq!(self.n, o.n);
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        CmMatrix::new(self.kind, self.n, data)
    }

    pub fn is_identity(&self) -> bool {
        *self == CmMatrix::identity(self.kind, self.n)
    }

    /// Characteristic polynomial coefficients c_1..c_n with
    /// char(x) = x^n + c_1 x^{n-1} + ... + c_n (Faddeev-LeVerrier).
    pub fn char_poly(&self) -> Vec<Cm> {
        let n = self.n;
        let mut coeffs = Vec::with_capacity(n);
        let mut m = self.clone();
        for k in 1..=n {
            let t = m.trace();
            let ck = t.scale(&-BigRational::new(BigInt::one(), BigInt::from(k)));
            coeffs.push(ck.clone());
            if k < n {
                let shifted = m.add_scalar(&ck);
                m = self.mul(&shifted);
            }
        }
        coeffs
    }

    fn add_scalar(&self, c: &Cm) -> CmMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] = out[(i, i)].add(c);
        }
        out
    }

    /// p-th elementary symmetric function of the eigenvalues, i.e. the
    /// trace of the p-th exterior power. e_0 = 1 and e_n = det.
    pub fn exterior_trace(&self, p: usize) -> Cm {
        assert!(p <= self.n, "exterior power beyond dimension");
        if p == 0 {
            return Cm::one();
        }
        let c = self.char_poly();
        // char(x) = sum (-1)^k e_k x^{n-k}  =>  e_p = (-1)^p c_p.
        let e = c[p - 1].clone();
        if p % 2 == 1 {
            e.neg()
        } else {
            e
        }
    }

    pub fn det(&self) -> Cm {
        self.exterior_trace(self.n)
    }

    /// Solve self * x = rhs by Gaussian elimination. `None` if singular.
    pub fn solve(&self, rhs: &[Cm]) -> Option<Vec<Cm>> {
        assert_eq!(rhs.len(), self.n);
        let n = self.n;
        let kind = self.kind;
        let mut a = self.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a[(col, j)].clone();
                    a[(col, j)] = a[(pivot, j)].clone();
                    a[(pivot, j)] = tmp;
                }
                b.swap(col, pivot);
            }
            let inv = a[(col, col)].inv(kind);
            for j in 0..n {
                a[(col, j)] = a[(col, j)].mul(kind, &inv);
            }
            b[col] = b[col].mul(kind, &inv);
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = f.mul(kind, &a[(col, j)]);
                    a[(r, j)] = a[(r, j)].sub(&t);
                }
                let t = f.mul(kind, &b[col]);
                b[r] = b[r].sub(&t);
            }
        }
        Some(b)
    }

    /// Indices of a maximal linearly independent subset of the given
    /// columns (column-echelon pivots over the field).
    pub fn independent_columns(kind: CmKind, n_rows: usize, cols: &[Vec<Cm>]) -> Vec<usize> {
        let mut basis: Vec<Vec<Cm>> = Vec::new(); // row-reduced vectors
        let mut pivots_of_basis: Vec<usize> = Vec::new();
        let mut chosen = Vec::new();
        for (ci, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n_rows);
            let mut v = col.clone();
            for (bv, &bp) in basis.iter().zip(&pivots_of_basis) {
                if v[bp].is_zero() {
                    continue;
                }
                let f = v[bp].clone();
                for i in 0..n_rows {
                    let t = f.mul(kind, &bv[i]);
                    v[i] = v[i].sub(&t);
                }
            }
            if let Some(p) = (0..n_rows).find(|&i| !v[i].is_zero()) {
                let inv = v[p].inv(kind);
                for x in v.iter_mut() {
                    *x = x.mul(kind, &inv);
                }
                basis.push(v);
                pivots_of_basis.push(p);
                chosen.push(ci);
            }
        }
        chosen
    }

    pub fn display(&self) -> String {
        let mut rows = Vec::new();
        for i in 0..self.n {
            let cells: Vec<String> = (0..self.n).map(|j| self[(i, j)].display(self.kind)).collect();
            rows.push(format!("[{}]", cells.join(", ")));
        }
        format!("[{}]", rows.join(", "))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.n)
                .map(|i| {
                    serde_json::Value::Array(
                        (0..self.n)
                            .map(|j| serde_json::Value::String(self[(i, j)].display(self.kind)))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

impl std::ops::Index<(usize, usize)> for CmMatrix {
    type Output = Cm;
    fn index(&self, (i, j): (usize, usize)) -> &Cm {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CmMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cm {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for CmMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}
