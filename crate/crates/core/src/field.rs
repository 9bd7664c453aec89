//! Arithmetic in finite fields of odd order.
//!
//! A field of order `q = p^e` is represented by polynomials of degree `< e`
//! over `F_p` reduced modulo a monic irreducible polynomial. Every element is
//! encoded as the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` of its
//! coefficient vector, so enumeration order is numeric order of that encoding:
//! `0, 1, ..., p-1` first (the prime subfield), then `t, t+1, ...`.
//!
//! Fields are tiny at the scales this crate works at (`q <= 81` by default), so
//! all arithmetic is driven by precomputed tables and the hot-path type [`Fq`]
//! is a bare `u16` index. [`FieldElement`] pairs an index with its field for
//! checked, self-describing arithmetic at API boundaries.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default upper bound on the field order.
pub const DEFAULT_MAX_ORDER: u32 = 81;

/// Hard ceiling for `max_order`; multiplication tables are `q * q` entries.
const ABSOLUTE_MAX_ORDER: u32 = 2048;

/// Conway polynomials, constant term first.
const BUILTIN_MODULI: &[(u32, u32, &[u32])] = &[
    (3, 2, &[2, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
];

/// A raw field element: the index of its coefficient vector.
///
/// Only meaningful together with the [`FieldSpec`] that produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(u16);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<Fq>,
    mul: Vec<Fq>,
    neg: Vec<Fq>,
    inv: Vec<Fq>,
    sqrt: Vec<Option<Fq>>,
    nonsquare: Fq,
}

/// A finite field `F_q`, `q = p^e` odd. Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.e == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}{:?}", self.inner.q, self.inner.modulus)
        }
    }
}

/// Construction options for [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    pub max_order: u32,
    /// Monic modulus, constant term first. `None` picks the built-in one.
    pub modulus: Option<Vec<u32>>,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig {
            max_order: DEFAULT_MAX_ORDER,
            modulus: None,
        }
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Splits `q` as `p^e`, if it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

// Polynomials over F_p, constant term first, no trailing zeros except for zero itself.
fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = mod_pow(m[dm], p - 2, p);
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let top = *r.last().unwrap();
        if top != 0 {
            let factor = top * lead_inv % p;
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - factor * c % p) % p;
            }
        }
        r.pop();
    }
    if r.is_empty() {
        r.push(0);
    }
    poly_trim(r)
}

fn mod_pow(mut base: u32, mut exp: u32, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// True when the monic polynomial `f` (constant term first) is irreducible over `F_p`.
///
/// Exhaustive search for a monic divisor of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p) == [0] {
                return false;
            }
        }
    }
    true
}

fn first_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    (0..count)
        .map(|code| {
            let mut f = Vec::with_capacity(e as usize + 1);
            let mut c = code;
            for _ in 0..e {
                f.push((c % p as u64) as u32);
                c /= p as u64;
            }
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `F_{p^e}` with the default order cap.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Self> {
        let config = FieldConfig {
            modulus: modulus.map(<[u32]>::to_vec),
            ..FieldConfig::default()
        };
        Self::with_config(p, e, &config)
    }

    /// The field of order `q` with the built-in modulus.
    pub fn from_order(q: u32) -> Result<Self> {
        Self::from_order_with(q, &FieldConfig::default())
    }

    pub fn from_order_with(q: u32, config: &FieldConfig) -> Result<Self> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::with_config(p, e, config)
    }

    pub fn with_config(p: u32, e: u32, config: &FieldConfig) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p == 2 {
            return Err(Error::InvalidField(
                "characteristic 2 is not supported".into(),
            ));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        let cap = config.max_order.min(ABSOLUTE_MAX_ORDER) as u64;
        if q > cap {
            return Err(Error::InvalidField(format!(
                "order {q} exceeds the configured cap {cap}"
            )));
        }
        let q = q as u32;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            let m = match &config.modulus {
                Some(m) => m.clone(),
                None => BUILTIN_MODULI
                    .iter()
                    .find(|(bp, be, _)| *bp == p && *be == e)
                    .map(|(_, _, m)| m.to_vec())
                    .unwrap_or_else(|| first_irreducible(p, e)),
            };
            if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                return Err(Error::InvalidField(format!(
                    "modulus {m:?} is not a monic degree-{e} polynomial over F_{p}"
                )));
            }
            if !is_irreducible(&m, p) {
                return Err(Error::InvalidField(format!(
                    "modulus {m:?} is reducible over F_{p}"
                )));
            }
            m
        };
        Ok(FieldSpec {
            inner: Arc::new(Tables::build(p, e, q, modulus)),
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Monic modulus, constant term first (`[0, 1]` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.e == 1
    }

    /// All elements in enumeration order, starting with zero.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + Clone {
        (0..self.inner.q as u16).map(Fq)
    }

    /// Element with the given index; `None` if out of range.
    pub fn element(&self, index: usize) -> Option<Fq> {
        (index < self.inner.q as usize).then_some(Fq(index as u16))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, value: i64) -> Fq {
        Fq(value.rem_euclid(self.inner.p as i64) as u16)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fq> {
        if coeffs.len() > self.inner.e as usize || coeffs.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::InvalidField(format!(
                "{coeffs:?} is not a coefficient vector of {self:?}"
            )));
        }
        let index = coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.inner.p + c);
        Ok(Fq(index as u16))
    }

    pub fn coeffs(&self, a: Fq) -> Vec<u32> {
        let mut v = a.0 as u32;
        (0..self.inner.e)
            .map(|_| {
                let c = v % self.inner.p;
                v /= self.inner.p;
                c
            })
            .collect()
    }

    #[inline]
    fn idx(&self, a: Fq, b: Fq) -> usize {
        a.index() * self.inner.q as usize + b.index()
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        self.inner.add[self.idx(a, b)]
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.inner.neg[a.index()]
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        self.inner.mul[self.idx(a, b)]
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inner.inv[a.index()])
        }
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, mut base: Fq, mut exp: u64) -> Fq {
        let mut acc = Fq::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Euler's criterion; zero counts as a square.
    pub fn is_square(&self, a: Fq) -> bool {
        a.is_zero() || self.pow(a, (self.inner.q as u64 - 1) / 2) == Fq::ONE
    }

    /// Some `b` with `b * b == a`, if one exists.
    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        self.inner.sqrt[a.index()]
    }

    /// The first nonsquare in enumeration order.
    pub fn nonsquare(&self) -> Fq {
        self.inner.nonsquare
    }

    /// `sum(a[i] * b[i])`.
    #[inline]
    pub fn dot(&self, a: &[Fq], b: &[Fq]) -> Fq {
        if self.inner.e == 1 {
            let p = self.inner.p;
            // products are below 2^22, so a u64 accumulator cannot overflow
            let s: u64 = a.iter().zip(b).map(|(x, y)| x.0 as u64 * y.0 as u64).sum();
            Fq((s % p as u64) as u16)
        } else {
            a.iter()
                .zip(b)
                .fold(Fq::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
        }
    }

    /// Human-readable form of an element: an integer in prime fields, a
    /// polynomial in `t` otherwise.
    pub fn format(&self, a: Fq) -> String {
        if self.inner.e == 1 {
            return a.0.to_string();
        }
        let coeffs = self.coeffs(a);
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl Tables {
    fn build(p: u32, e: u32, q: u32, modulus: Vec<u32>) -> Tables {
        let qs = q as usize;
        let digits = |v: usize| -> Vec<u32> {
            let mut v = v as u32;
            (0..e)
                .map(|_| {
                    let c = v % p;
                    v /= p;
                    c
                })
                .collect()
        };
        let encode =
            |c: &[u32]| -> Fq { Fq(c.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u16) };
        let all: Vec<Vec<u32>> = (0..qs).map(digits).collect();

        let mut add = vec![Fq::ZERO; qs * qs];
        let mut mul = vec![Fq::ZERO; qs * qs];
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
                add[i * qs + j] = encode(&sum);
                let mut prod = vec![0u32; 2 * e as usize - 1];
                for (s, x) in a.iter().enumerate() {
                    for (t, y) in b.iter().enumerate() {
                        prod[s + t] = (prod[s + t] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&poly_trim(prod), &modulus, p);
                r.resize(e as usize, 0);
                mul[i * qs + j] = encode(&r);
            }
        }
        let neg: Vec<Fq> = all
            .iter()
            .map(|a| encode(&a.iter().map(|&c| (p - c) % p).collect::<Vec<_>>()))
            .collect();
        let mut inv = vec![Fq::ZERO; qs];
        let mut sqrt = vec![None; qs];
        for a in 0..qs {
            for b in 0..qs {
                let m = mul[a * qs + b];
                if m == Fq::ONE {
                    inv[a] = Fq(b as u16);
                }
                if a == b && sqrt[m.index()].is_none() {
                    sqrt[m.index()] = Some(Fq(a as u16));
                }
            }
        }
        let nonsquare = (1..qs)
            .find(|&a| sqrt[a].is_none())
            .map(|a| Fq(a as u16))
            .expect("odd order fields have nonsquares");
        Tables {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            sqrt,
            nonsquare,
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `"9"` or `"3^2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad field order {s:?}")))
        };
        match s.split_once('^') {
            Some((p, e)) => FieldSpec::new(parse(p)?, parse(e)?, None),
            None => FieldSpec::from_order(parse(s)?),
        }
    }
}

/// A field element bundled with its field, with checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    value: Fq,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

impl FieldElement {
    pub fn new(field: &FieldSpec, value: Fq) -> Self {
        FieldElement {
            field: field.clone(),
            value,
        }
    }

    pub fn from_int(field: &FieldSpec, value: i64) -> Self {
        Self::new(field, field.from_int(value))
    }

    pub fn from_coeffs(field: &FieldSpec, coeffs: &[u32]) -> Result<Self> {
        Ok(Self::new(field, field.from_coeffs(coeffs)?))
    }

    pub fn value(&self) -> Fq {
        self.value
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, value: Fq) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.div(self.value, other.value)?))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.with(self.field.pow(self.value, exp))
    }

    pub fn is_square(&self) -> bool {
        self.field.is_square(self.value)
    }
}

/// True iff `a = b^2` for some `b`. Zero is a square; see [`FieldElement::is_zero`].
pub fn is_square(a: &FieldElement) -> bool {
    a.is_square()
}

/// The first nonsquare of `F_q` in enumeration order.
pub fn find_nonsquare(field: &FieldSpec) -> FieldElement {
    FieldElement::new(field, field.nonsquare())
}

/// Every element of the field, in enumeration order.
pub fn enumerate_field(field: &FieldSpec) -> Vec<FieldElement> {
    field
        .elements()
        .map(|a| FieldElement::new(field, a))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(f: &FieldSpec, v: i64) -> FieldElement {
        FieldElement::from_int(f, v)
    }

    fn squares_by_brute_force(f: &FieldSpec) -> Vec<bool> {
        let mut is_sq = vec![false; f.order() as usize];
        for b in f.elements() {
            is_sq[f.mul(b, b).index()] = true;
        }
        is_sq
    }

    fn supported_orders() -> Vec<u32> {
        (3..=DEFAULT_MAX_ORDER)
            .filter(|&q| q % 2 == 1 && prime_power(q).is_some())
            .collect()
    }

    #[test]
    fn small_arithmetic() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(el(&f3, 2).add(&el(&f3, 2)).unwrap(), el(&f3, 1));
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(el(&f5, 3).inv().unwrap(), el(&f5, 2));
        assert_eq!(el(&f5, 0).inv(), Err(Error::DivisionByZero));
        assert_eq!(el(&f5, 1).div(&el(&f5, 0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn f9_with_t_squared_plus_one() {
        let f9 = FieldSpec::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let t = FieldElement::from_coeffs(&f9, &[0, 1]).unwrap();
        let tt = t.mul(&t).unwrap();
        assert_eq!(tt, el(&f9, 2));
        assert_eq!(tt.to_string(), "2");
        assert_eq!(t.to_string(), "t");
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let f3 = FieldSpec::prime(3).unwrap();
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(el(&f3, 1).add(&el(&f5, 1)), Err(Error::FieldMismatch));
        let f9a = FieldSpec::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let f9b = FieldSpec::from_order(9).unwrap();
        assert_eq!(el(&f9a, 1).mul(&el(&f9b, 1)), Err(Error::FieldMismatch));
    }

    #[test]
    fn square_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(!is_square(&el(&f3, 2)));
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(!is_square(&el(&f7, 3)));
        for q in supported_orders() {
            let f = FieldSpec::from_order(q).unwrap();
            assert!(is_square(&el(&f, 1)));
            assert!(is_square(&el(&f, 0)) && el(&f, 0).is_zero());
        }
    }

    #[test]
    fn nonsquare_examples() {
        for (q, expected) in [(3, 2), (5, 2), (7, 3)] {
            let f = FieldSpec::prime(q).unwrap();
            assert_eq!(find_nonsquare(&f), el(&f, expected));
        }
    }

    #[test]
    fn enumeration_order() {
        let f3 = FieldSpec::prime(3).unwrap();
        let v: Vec<u16> = enumerate_field(&f3).iter().map(|a| a.value().0).collect();
        assert_eq!(v, [0, 1, 2]);
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(enumerate_field(&f5).len(), 5);
        let f9 = FieldSpec::from_order(9).unwrap();
        let all = enumerate_field(&f9);
        assert_eq!(all.len(), 9);
        assert!(all[0].is_zero());
        // prime subfield first
        assert_eq!(all[1], el(&f9, 1));
        assert_eq!(all[2], el(&f9, 2));
    }

    #[test]
    fn euler_criterion_matches_brute_force_everywhere() {
        for q in supported_orders() {
            let f = FieldSpec::from_order(q).unwrap();
            let brute = squares_by_brute_force(&f);
            let mut nonzero_squares = 0;
            for a in f.elements() {
                assert_eq!(f.is_square(a), brute[a.index()], "q={q} a={a:?}");
                if !a.is_zero() && brute[a.index()] {
                    nonzero_squares += 1;
                }
                if let Some(r) = f.sqrt(a) {
                    assert_eq!(f.mul(r, r), a);
                }
            }
            assert_eq!(nonzero_squares, (q - 1) / 2, "q={q}");
            let lambda = f.nonsquare();
            assert!(!brute[lambda.index()]);
            assert!(f
                .elements()
                .take(lambda.index())
                .skip(1)
                .all(|a| brute[a.index()]));
            for a in f.elements().skip(1) {
                assert!(f.is_square(a) ^ f.is_square(f.mul(lambda, a)));
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [3, 5, 7, 9] {
            let f = FieldSpec::from_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Fq::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn field_axioms_random(qi in 0usize..15, a in 0usize..81, b in 0usize..81, c in 0usize..81) {
            let orders = supported_orders();
            let f = FieldSpec::from_order(orders[qi % orders.len()]).unwrap();
            let q = f.order() as usize;
            let (a, b, c) = (f.element(a % q).unwrap(), f.element(b % q).unwrap(), f.element(c % q).unwrap());
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            if !b.is_zero() {
                prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
            }
        }
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(FieldSpec::from_order(4).is_err());
        assert!(FieldSpec::from_order(6).is_err());
        assert!(FieldSpec::from_order(243).is_err());
        assert!(FieldSpec::new(3, 2, Some(&[2, 0, 1])).is_err()); // t^2 + 2 = (t+1)(t+2)
        assert!(FieldSpec::new(9, 1, None).is_err());
        let big = FieldConfig {
            max_order: 243,
            modulus: None,
        };
        assert_eq!(FieldSpec::from_order_with(243, &big).unwrap().order(), 243);
    }

    #[test]
    fn builtin_moduli_are_irreducible() {
        for (p, _, m) in BUILTIN_MODULI {
            assert!(is_irreducible(m, *p), "{m:?}");
        }
        assert!(!is_irreducible(&[1, 0, 0, 0, 1], 3)); // t^4+1 = (t^2+t+2)(t^2+2t+2)
    }

    #[test]
    fn parses_specs() {
        assert_eq!("9".parse::<FieldSpec>().unwrap().order(), 9);
        assert_eq!("3^3".parse::<FieldSpec>().unwrap().order(), 27);
        assert!("x".parse::<FieldSpec>().is_err());
        assert!("4".parse::<FieldSpec>().is_err());
    }
}
