//! Exact arithmetic in SL(2,Z) and PSL(2,Z).
//!
//! The group SL(2,Z) is generated by
//! `alpha = [[1,1],[-1,0]]` (order 6) and `beta = [[0,1],[-1,0]]` (order 4),
//! with `alpha^3 = beta^2 = -I`. Modulo the centre, PSL(2,Z) is the free
//! product Z/3 * Z/2 on the images of `alpha` and `beta`, so every element
//! has a unique reduced word. This module computes orders, normal forms,
//! bounded conjugacy witnesses, and exhaustive searches for tuples of
//! conjugates with trivial product.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Sl2zError {
    #[error("matrix [[{a},{b}],[{c},{d}]] has determinant {det}, expected 1")]
    NotUnimodular {
        a: BigInt,
        b: BigInt,
        c: BigInt,
        d: BigInt,
        det: BigInt,
    },
    #[error("conjugacy search requires finite-order (elliptic) inputs")]
    InfiniteOrder,
    #[error("subgroup closure exceeded cap of {0} elements")]
    ClosureCapExceeded(usize),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

/// 2x2 integer matrix of determinant one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnimodularMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl UnimodularMatrix {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self, Sl2zError> {
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Sl2zError::NotUnimodular { a, b, c, d, det });
        }
        Ok(UnimodularMatrix { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self, Sl2zError> {
        UnimodularMatrix::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        UnimodularMatrix::from_i64(1, 0, 0, 1).unwrap()
    }

    pub fn neg_identity() -> Self {
        UnimodularMatrix::from_i64(-1, 0, 0, -1).unwrap()
    }

    /// `[[1,1],[-1,0]]`, elliptic of order six.
    pub fn alpha() -> Self {
        UnimodularMatrix::from_i64(1, 1, -1, 0).unwrap()
    }

    /// `[[0,1],[-1,0]]`, elliptic of order four.
    pub fn beta() -> Self {
        UnimodularMatrix::from_i64(0, 1, -1, 0).unwrap()
    }

    pub fn alpha_pow(k: i64) -> Self {
        UnimodularMatrix::alpha().pow_signed(k, 6)
    }

    pub fn beta_pow(k: i64) -> Self {
        UnimodularMatrix::beta().pow_signed(k, 4)
    }

    fn pow_signed(&self, k: i64, order: i64) -> Self {
        let k = k.rem_euclid(order) as u32;
        self.pow(k)
    }

    pub fn entries(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn mul(&self, o: &Self) -> Self {
        UnimodularMatrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    /// Inverse via the adjugate; exact since det = 1.
    pub fn inverse(&self) -> Self {
        UnimodularMatrix {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        UnimodularMatrix {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = UnimodularMatrix::identity();
        let mut base = self.clone();
        let mut k = k;
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

    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.mul(self).mul(&u.inverse())
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_neg_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == BigInt::from(-1) && self.a == self.d
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for UnimodularMatrix {
    type Err = Sl2zError;

    /// Parses the `[[a,b],[c,d]]` form (whitespace tolerated).
    fn from_str(s: &str) -> Result<Self, Sl2zError> {
        let err = || Sl2zError::Parse {
            what: "matrix",
            input: s.to_string(),
        };
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = cleaned
            .strip_prefix("[[")
            .and_then(|t| t.strip_suffix("]]"))
            .ok_or_else(err)?;
        let parts: Vec<&str> = inner.split("],[").collect();
        if parts.len() != 2 {
            return Err(err());
        }
        let mut nums = Vec::with_capacity(4);
        for part in parts {
            for tok in part.split(',') {
                nums.push(BigInt::from_str(tok).map_err(|_| err())?);
            }
        }
        if nums.len() != 4 {
            return Err(err());
        }
        let d = nums.pop().unwrap();
        let c = nums.pop().unwrap();
        let b = nums.pop().unwrap();
        let a = nums.pop().unwrap();
        UnimodularMatrix::new(a, b, c, d)
    }
}

/// Order of a group element: least k >= 1 with m^k = I, or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

/// Least k >= 1 with m^k = I, or `Infinite`.
///
/// The elliptic/parabolic/hyperbolic trichotomy decides finiteness:
/// |trace| >= 2 forces infinite order unless m = ±I, and otherwise the
/// order is one of 1, 2, 3, 4, 6.
pub fn order(m: &UnimodularMatrix) -> Order {
    if m.is_identity() {
        return Order::Finite(1);
    }
    if m.is_neg_identity() {
        return Order::Finite(2);
    }
    if m.trace().abs() >= BigInt::from(2) {
        return Order::Infinite;
    }
    let mut p = m.clone();
    for k in 2..=6u64 {
        p = p.mul(m);
        if p.is_identity() {
            return Order::Finite(k);
        }
    }
    unreachable!("elliptic elements of SL(2,Z) have order dividing 4 or 6")
}

/// Token of a reduced word in PSL(2,Z) = Z/3 * Z/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// image of alpha
    A,
    /// image of alpha^2
    A2,
    /// image of beta
    B,
}

impl Letter {
    fn is_a_power(self) -> bool {
        matches!(self, Letter::A | Letter::A2)
    }

    fn matrix(self) -> UnimodularMatrix {
        match self {
            Letter::A => UnimodularMatrix::alpha(),
            Letter::A2 => UnimodularMatrix::alpha().pow(2),
            Letter::B => UnimodularMatrix::beta(),
        }
    }
}

/// Reduced word with a sign: `sign * product(letters)` in SL(2,Z).
///
/// Reduced means the letters alternate between an A-power and B, which is
/// the unique normal form in the free product Z/3 * Z/2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModularWord {
    sign: i8,
    letters: Vec<Letter>,
}

impl ModularWord {
    pub fn identity() -> Self {
        ModularWord {
            sign: 1,
            letters: Vec::new(),
        }
    }

    pub fn neg_identity() -> Self {
        ModularWord {
            sign: -1,
            letters: Vec::new(),
        }
    }

    pub fn new(sign: i8, letters: Vec<Letter>) -> Result<Self, Sl2zError> {
        if sign != 1 && sign != -1 {
            return Err(Sl2zError::Parse {
                what: "word sign",
                input: sign.to_string(),
            });
        }
        let alternating = letters
            .windows(2)
            .all(|w| w[0].is_a_power() != w[1].is_a_power());
        if !alternating {
            return Err(Sl2zError::Parse {
                what: "word (not reduced)",
                input: format!("{letters:?}"),
            });
        }
        Ok(ModularWord { sign, letters })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Token count; `A2` counts as a single token.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn evaluate(&self) -> UnimodularMatrix {
        let mut m = if self.sign == 1 {
            UnimodularMatrix::identity()
        } else {
            UnimodularMatrix::neg_identity()
        };
        for l in &self.letters {
            m = m.mul(&l.matrix());
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl fmt::Display for ModularWord {
    /// Concatenated tokens over {"a","a2","b"} with an optional leading "-".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == -1 {
            write!(f, "-")?;
        }
        for l in &self.letters {
            match l {
                Letter::A => write!(f, "a")?,
                Letter::A2 => write!(f, "a2")?,
                Letter::B => write!(f, "b")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ModularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "{}1", if self.sign == 1 { "+" } else { "-" })
        } else {
            write!(f, "{}{}", if self.sign == 1 { "+" } else { "-" }, self)
        }
    }
}

impl FromStr for ModularWord {
    type Err = Sl2zError;

    fn from_str(s: &str) -> Result<Self, Sl2zError> {
        let err = || Sl2zError::Parse {
            what: "word",
            input: s.to_string(),
        };
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s.strip_prefix('+').unwrap_or(s)),
        };
        let mut letters = Vec::new();
        let mut chars = body.chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                'a' => {
                    if chars.peek() == Some(&'2') {
                        chars.next();
                        letters.push(Letter::A2);
                    } else {
                        letters.push(Letter::A);
                    }
                }
                'b' => letters.push(Letter::B),
                _ => return Err(err()),
            }
        }
        ModularWord::new(sign, letters)
    }
}

/// Push a letter onto a reduced-word stack, merging A-powers mod 3 and
/// cancelling B against B. Signs are ignored here; the caller recovers the
/// sign by evaluation.
fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) {
    match (stack.last().copied(), letter) {
        (Some(top), l) if top.is_a_power() && l.is_a_power() => {
            let exp = |x: Letter| if x == Letter::A { 1 } else { 2 };
            let e = (exp(top) + exp(l)) % 3;
            stack.pop();
            match e {
                0 => {}
                1 => push_reduced(stack, Letter::A),
                _ => push_reduced(stack, Letter::A2),
            }
        }
        (Some(Letter::B), Letter::B) => {
            stack.pop();
        }
        _ => stack.push(letter),
    }
}

/// Unique reduced word (with sign) evaluating to `m`.
///
/// The matrix is first decomposed into translations T = [[1,1],[0,1]] and
/// the flip beta by the Euclidean algorithm on the first column, then the
/// tokens are rewritten through T = -beta*alpha^2 and reduced in the free
/// product. Uniqueness of reduced words makes the result canonical.
pub fn normal_form(m: &UnimodularMatrix) -> ModularWord {
    // Phase 1: m = T^{q_1} B T^{q_2} B ... T^{q_k} modulo sign.
    let mut n = m.clone();
    let mut qs: Vec<Option<BigInt>> = Vec::new(); // None marks a B separator
    loop {
        let (a, _b, c, d) = n.entries();
        if c.is_zero() {
            // n = ±[[1,q],[0,1]]; a = d = ±1 and q = a*b.
            debug_assert!(a == d);
            let q = a * n.b.clone();
            if !q.is_zero() {
                qs.push(Some(q));
            }
            break;
        }
        let q = num_integer::Integer::div_floor(a, c);
        // T^{-q} * n, then beta * (that): new bottom-left is -(a - q c).
        let tinv = UnimodularMatrix {
            a: BigInt::one(),
            b: -q.clone(),
            c: BigInt::zero(),
            d: BigInt::one(),
        };
        n = UnimodularMatrix::beta().mul(&tinv).mul(&n);
        if !q.is_zero() {
            qs.push(Some(q));
        }
        qs.push(None);
    }

    // Phase 2: substitute T = beta * alpha^2 (mod sign), T^{-1} = alpha * beta,
    // and reduce in Z/3 * Z/2.
    let mut stack: Vec<Letter> = Vec::new();
    for item in qs {
        match item {
            Some(q) => {
                let steps: u64 = q.abs().try_into().expect("word exponent fits in u64");
                if q.is_positive() {
                    for _ in 0..steps {
                        push_reduced(&mut stack, Letter::B);
                        push_reduced(&mut stack, Letter::A2);
                    }
                } else {
                    for _ in 0..steps {
                        push_reduced(&mut stack, Letter::A);
                        push_reduced(&mut stack, Letter::B);
                    }
                }
            }
            None => push_reduced(&mut stack, Letter::B),
        }
    }

    let unsigned = ModularWord {
        sign: 1,
        letters: stack,
    };
    let value = unsigned.evaluate();
    if &value == m {
        unsigned
    } else {
        debug_assert_eq!(value.neg(), *m, "sign fix-up must close the loop");
        ModularWord {
            sign: -1,
            letters: unsigned.letters,
        }
    }
}

/// All reduced words of token length <= `max_len` with sign +1, in
/// canonical order: by length, then by generation order with A < A2 < B.
/// These are exactly the PSL(2,Z) elements reachable within the bound.
pub fn reduced_words_up_to(max_len: usize) -> Vec<ModularWord> {
    let mut out = vec![ModularWord::identity()];
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            let choices: &[Letter] = match w.last() {
                Some(l) if l.is_a_power() => &[Letter::B],
                Some(Letter::B) => &[Letter::A, Letter::A2],
                _ => &[Letter::A, Letter::A2, Letter::B],
            };
            for &c in choices {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        for v in &next {
            out.push(ModularWord {
                sign: 1,
                letters: v.clone(),
            });
        }
        frontier = next;
    }
    out
}

/// Bounded conjugacy search for elliptic elements.
///
/// Returns a word `u` (sign +1) with `u m1 u^{-1} = m2` if one exists at
/// token length <= `search_bound`, or `None` when the exhaustive search
/// finds nothing. Conjugators only matter modulo the centre, so scanning
/// PSL(2,Z) words loses nothing. Infinite-order inputs are rejected: the
/// search is only guaranteed meaningful for elliptic classes.
pub fn is_conjugate(
    m1: &UnimodularMatrix,
    m2: &UnimodularMatrix,
    search_bound: usize,
) -> Result<Option<ModularWord>, Sl2zError> {
    if order(m1) == Order::Infinite || order(m2) == Order::Infinite {
        return Err(Sl2zError::InfiniteOrder);
    }
    for w in reduced_words_up_to(search_bound) {
        let u = w.evaluate();
        if m1.conjugate_by(&u) == *m2 {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// One solution of the trivial-product equation: conjugators `u_i` and the
/// resulting conjugates `u_i c_i u_i^{-1}` whose ordered product is I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigiditySolution {
    pub conjugators: Vec<ModularWord>,
    pub conjugates: Vec<UnimodularMatrix>,
}

/// Enumerate all tuples of conjugators (u_1, ..., u_k), each of token
/// length <= `max_word_length`, with `prod_i u_i c_i u_i^{-1} = I`.
///
/// Solutions are reported up to the central symmetry u -> -u (words carry
/// sign +1) and up to simultaneous change of basis: replacing every u_i by
/// w*u_i preserves the equation, so the first conjugator is normalized to
/// the identity. Output order is deterministic (lexicographic in the word
/// enumeration).
pub fn rigidity_search(
    classes: &[UnimodularMatrix],
    max_word_length: usize,
) -> Vec<RigiditySolution> {
    let mut out = Vec::new();
    for_each_rigidity_solution(classes, max_word_length, |sol| out.push(sol));
    out
}

/// Streaming core of [`rigidity_search`]; visits solutions in the same
/// deterministic order without materializing the list.
pub fn for_each_rigidity_solution<F: FnMut(RigiditySolution)>(
    classes: &[UnimodularMatrix],
    max_word_length: usize,
    mut visit: F,
) {
    assert!(!classes.is_empty(), "classes must be nonempty");
    let words = reduced_words_up_to(max_word_length);
    let k = classes.len();
    if k == 1 {
        if classes[0].is_identity() {
            visit(RigiditySolution {
                conjugators: vec![ModularWord::identity()],
                conjugates: vec![classes[0].clone()],
            });
        }
        return;
    }

    // Conjugates of each free class by every candidate word, precomputed.
    let conj_tables: Vec<Vec<UnimodularMatrix>> = classes[1..]
        .iter()
        .map(|c| {
            words
                .iter()
                .map(|w| {
                    let u = w.evaluate();
                    c.conjugate_by(&u)
                })
                .collect()
        })
        .collect();

    let solutions = collect_rigidity_tuples(&classes[0], &conj_tables, words.len());
    for idxs in solutions {
        let mut conjugators = Vec::with_capacity(k);
        let mut conjugates = Vec::with_capacity(k);
        conjugators.push(ModularWord::identity());
        conjugates.push(classes[0].clone());
        for (slot, &wi) in idxs.iter().enumerate() {
            conjugators.push(words[wi].clone());
            conjugates.push(conj_tables[slot][wi].clone());
        }
        visit(RigiditySolution {
            conjugators,
            conjugates,
        });
    }
}

/// Index tuples (into the word list) solving the trivial-product equation,
/// in lexicographic order. The outer loop over the first free conjugator is
/// data-parallel when the `parallel` feature is enabled.
fn collect_rigidity_tuples(
    first: &UnimodularMatrix,
    conj_tables: &[Vec<UnimodularMatrix>],
    word_count: usize,
) -> Vec<Vec<usize>> {
    let scan_one = |w1: usize| -> Vec<Vec<usize>> {
        let mut found = Vec::new();
        let prefix = first.mul(&conj_tables[0][w1]);
        rigidity_dfs(&prefix, &conj_tables[1..], &mut vec![w1], &mut found);
        found
    };

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..word_count)
            .into_par_iter()
            .map(scan_one)
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..word_count).flat_map(scan_one).collect()
    }
}

fn rigidity_dfs(
    prefix: &UnimodularMatrix,
    remaining: &[Vec<UnimodularMatrix>],
    chosen: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    match remaining.split_first() {
        None => {
            if prefix.is_identity() {
                found.push(chosen.clone());
            }
        }
        Some((table, rest)) => {
            for (wi, conj) in table.iter().enumerate() {
                chosen.push(wi);
                let next = prefix.mul(conj);
                rigidity_dfs(&next, rest, chosen, found);
                chosen.pop();
            }
        }
    }
}

/// Order of the subgroup generated by `gens`, by breadth-first closure.
pub fn group_order(gens: &[UnimodularMatrix], cap: usize) -> Result<u64, Sl2zError> {
    let mut seen: HashSet<UnimodularMatrix> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(UnimodularMatrix::identity());
    queue.push_back(UnimodularMatrix::identity());
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh = g.mul(h);
            if seen.insert(gh.clone()) {
                if seen.len() > cap {
                    return Err(Sl2zError::ClosureCapExceeded(cap));
                }
                queue.push_back(gh);
            }
        }
    }
    Ok(seen.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn alpha() -> UnimodularMatrix {
        UnimodularMatrix::alpha()
    }

    fn beta() -> UnimodularMatrix {
        UnimodularMatrix::beta()
    }

    #[test]
    fn generator_relations() {
        assert_eq!(alpha().pow(3), UnimodularMatrix::neg_identity());
        assert_eq!(beta().pow(2), UnimodularMatrix::neg_identity());
        assert_eq!(alpha().pow(6), UnimodularMatrix::identity());
        assert_eq!(beta().pow(4), UnimodularMatrix::identity());
        assert_eq!(
            alpha().pow(5),
            UnimodularMatrix::from_i64(0, -1, 1, 1).unwrap()
        );
        assert_eq!(
            alpha().pow(4),
            UnimodularMatrix::from_i64(-1, -1, 1, 0).unwrap()
        );
        assert_eq!(
            beta().pow(3),
            UnimodularMatrix::from_i64(0, -1, 1, 0).unwrap()
        );
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(matches!(
            UnimodularMatrix::from_i64(2, 0, 0, 2),
            Err(Sl2zError::NotUnimodular { .. })
        ));
    }

    #[test]
    fn orders_of_named_elements() {
        assert_eq!(order(&alpha()), Order::Finite(6));
        assert_eq!(order(&beta()), Order::Finite(4));
        assert_eq!(order(&UnimodularMatrix::identity()), Order::Finite(1));
        assert_eq!(order(&UnimodularMatrix::neg_identity()), Order::Finite(2));
        assert_eq!(order(&alpha().pow(2)), Order::Finite(3));
        assert_eq!(order(&alpha().pow(4)), Order::Finite(3));
        assert_eq!(order(&alpha().pow(5)), Order::Finite(6));
        assert_eq!(order(&beta().pow(3)), Order::Finite(4));
    }

    /// Oracle: iterate matrix powers up to 12 looking for the identity.
    fn order_by_iteration(m: &UnimodularMatrix, max: u32) -> Order {
        let mut p = UnimodularMatrix::identity();
        for k in 1..=max {
            p = p.mul(m);
            if p.is_identity() {
                return Order::Finite(k as u64);
            }
        }
        Order::Infinite
    }

    #[test]
    fn beta_alpha_is_infinite_order() {
        let m = beta().mul(&alpha());
        assert_eq!(order_by_iteration(&m, 12), Order::Infinite);
        assert_eq!(order(&m), Order::Infinite);
        // Parabolic case: trace 2 but not the identity.
        let t = UnimodularMatrix::from_i64(1, 1, 0, 1).unwrap();
        assert_eq!(order(&t), Order::Infinite);
        let h = UnimodularMatrix::from_i64(2, 1, 1, 1).unwrap();
        assert_eq!(order(&h), Order::Infinite);
    }

    #[test]
    fn normal_form_of_generators() {
        let w = normal_form(&alpha());
        assert_eq!(w.sign(), 1);
        assert_eq!(w.letters(), &[Letter::A]);

        let w = normal_form(&UnimodularMatrix::neg_identity());
        assert_eq!(w.sign(), -1);
        assert!(w.is_empty());

        let w = normal_form(&UnimodularMatrix::identity());
        assert_eq!(w.sign(), 1);
        assert!(w.is_empty());

        let w = normal_form(&beta());
        assert_eq!(w.sign(), 1);
        assert_eq!(w.letters(), &[Letter::B]);

        // alpha^4 = -alpha reduces to sign -1, single letter A.
        let w = normal_form(&alpha().pow(4));
        assert_eq!(w.sign(), -1);
        assert_eq!(w.letters(), &[Letter::A]);
    }

    #[test]
    fn normal_form_round_trips_on_fixed_products() {
        let samples = [
            alpha().mul(&beta()),
            beta().mul(&alpha()),
            alpha().pow(2).mul(&beta()).mul(&alpha()),
            beta().mul(&alpha().pow(5)).mul(&beta().pow(3)),
            UnimodularMatrix::from_i64(1, 1, 0, 1).unwrap(),
            UnimodularMatrix::from_i64(1, 0, 7, 1).unwrap(),
            UnimodularMatrix::from_i64(43, 19, 9, 4).unwrap(),
        ];
        for m in samples {
            let w = normal_form(&m);
            assert_eq!(w.evaluate(), m, "round trip failed for {m}");
        }
    }

    #[test]
    fn word_parse_display_round_trip() {
        for s in ["", "-", "a", "a2", "b", "ab", "a2ba", "-ba2ba"] {
            let w: ModularWord = s.parse().unwrap();
            assert_eq!(w.to_string(), s);
        }
        assert!("c".parse::<ModularWord>().is_err());
        assert!("aa".parse::<ModularWord>().is_err());
        assert!("bb".parse::<ModularWord>().is_err());
    }

    #[test]
    fn word_enumeration_counts() {
        // Alternating words: lengths 0..=6 give 1,3,4,6,8,12,16 words.
        let expected = [1usize, 4, 8, 14, 22, 34, 50];
        for (len, want) in expected.iter().enumerate() {
            assert_eq!(reduced_words_up_to(len).len(), *want, "length {len}");
        }
        // All evaluated matrices are distinct in PSL: m and -m identified.
        let words = reduced_words_up_to(6);
        let mut seen = HashSet::new();
        for w in &words {
            let m = w.evaluate();
            let key = std::cmp::min(m.clone(), m.neg());
            assert!(seen.insert(key), "duplicate PSL element from {w:?}");
        }
    }

    #[test]
    fn conjugacy_examples() {
        let a4 = alpha().pow(4);
        // Reflexive with identity witness.
        let w = is_conjugate(&a4, &a4, 0).unwrap().unwrap();
        assert!(w.is_empty());
        // Different orders are never conjugate.
        assert!(is_conjugate(&alpha(), &beta(), 6).unwrap().is_none());
        // A constructed conjugate is recovered with a verified witness.
        let u = "ba2ba".parse::<ModularWord>().unwrap().evaluate();
        let target = a4.conjugate_by(&u);
        let w = is_conjugate(&a4, &target, 5).unwrap().unwrap();
        assert_eq!(a4.conjugate_by(&w.evaluate()), target);
        // Infinite order rejected.
        let h = UnimodularMatrix::from_i64(2, 1, 1, 1).unwrap();
        assert_eq!(is_conjugate(&h, &h, 3), Err(Sl2zError::InfiniteOrder));
    }

    #[test]
    fn alpha2_and_alpha4_share_order_and_trace_but_are_not_conjugate() {
        let a2 = alpha().pow(2);
        let a4 = alpha().pow(4);
        assert_eq!(order(&a2), order(&a4));
        assert_eq!(a2.trace(), a4.trace());
        assert!(is_conjugate(&a2, &a4, 7).unwrap().is_none());
    }

    #[test]
    fn rigidity_alpha4_triple_is_central_only() {
        let a4 = alpha().pow(4);
        let sols = rigidity_search(&[a4.clone(), a4.clone(), a4.clone()], 6);
        assert_eq!(sols.len(), 1);
        for sol in &sols {
            for u in &sol.conjugators {
                assert!(u.is_empty(), "conjugator must be central: {u:?}");
            }
            for c in &sol.conjugates {
                assert_eq!(*c, a4);
            }
        }
    }

    #[test]
    fn rigidity_beta_family_forces_class_representatives() {
        let b3 = beta().pow(3);
        let b2 = beta().pow(2);
        let sols = rigidity_search(&[b3.clone(), b2.clone(), b3.clone()], 6);
        assert!(!sols.is_empty());
        for sol in &sols {
            assert_eq!(sol.conjugates[0], b3);
            assert_eq!(sol.conjugates[1], b2);
            assert_eq!(sol.conjugates[2], b3);
        }
    }

    #[test]
    fn rigidity_mixed_alpha_family_forces_third_conjugate() {
        let classes = [alpha().pow(5), alpha().pow(3), alpha().pow(4)];
        let sols = rigidity_search(&classes, 6);
        assert!(!sols.is_empty());
        for sol in &sols {
            assert_eq!(sol.conjugates[2], alpha().pow(4));
            let prod = sol
                .conjugates
                .iter()
                .fold(UnimodularMatrix::identity(), |acc, c| acc.mul(c));
            assert!(prod.is_identity());
        }
    }

    #[test]
    fn every_conjugate_of_neg_identity_is_neg_identity() {
        let minus = UnimodularMatrix::neg_identity();
        for w in reduced_words_up_to(5) {
            assert_eq!(minus.conjugate_by(&w.evaluate()), minus);
        }
    }

    #[test]
    fn group_orders_of_cyclic_subgroups() {
        assert_eq!(group_order(&[alpha()], 100).unwrap(), 6);
        assert_eq!(group_order(&[beta()], 100).unwrap(), 4);
        assert_eq!(group_order(&[alpha().pow(4)], 100).unwrap(), 3);
        assert_eq!(group_order(&[UnimodularMatrix::neg_identity()], 100).unwrap(), 2);
        assert_eq!(group_order(&[alpha(), beta()], 10), Err(Sl2zError::ClosureCapExceeded(10)));
    }

    proptest! {
        /// Round trip on random products of up to 40 generators, and
        /// constancy of the normal form across different factorizations.
        #[test]
        fn normal_form_round_trip_random(choices in proptest::collection::vec(0u8..4, 1..40)) {
            let mut m = UnimodularMatrix::identity();
            for c in &choices {
                let f = match c {
                    0 => alpha(),
                    1 => alpha().pow(2),
                    2 => beta(),
                    _ => beta().pow(3),
                };
                m = m.mul(&f);
            }
            let w = normal_form(&m);
            prop_assert_eq!(w.evaluate(), m.clone());
            // Multiplying by a trivial relator must not change the word.
            let m2 = m.mul(&alpha().pow(6));
            prop_assert_eq!(normal_form(&m2), w.clone());
            let m3 = m.mul(&beta().pow(2)).mul(&UnimodularMatrix::neg_identity());
            prop_assert_eq!(normal_form(&m3), w);
        }

        #[test]
        fn orders_of_generator_powers_divide(k in 0i64..24) {
            match order(&UnimodularMatrix::alpha_pow(k)) {
                Order::Finite(n) => prop_assert_eq!(6 % n, 0),
                Order::Infinite => prop_assert!(false),
            }
            match order(&UnimodularMatrix::beta_pow(k)) {
                Order::Finite(n) => prop_assert_eq!(4 % n, 0),
                Order::Infinite => prop_assert!(false),
            }
        }
    }
}
