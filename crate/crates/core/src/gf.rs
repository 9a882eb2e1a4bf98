//! Finite fields GF(p^f) with a polynomial basis over the prime field.
//!
//! Elements are stored as a single byte: the coefficient vector
//! `(c_0, .., c_{f-1})` of `c_0 + c_1 w + .. + c_{f-1} w^{f-1}` is packed as the
//! integer `sum c_i p^i`.  Integer order on these codes is the enumeration
//! order used everywhere a "first element with property X" is chosen.
//!
//! The defining polynomial is the first monic irreducible of degree `f` when
//! monic polynomials are listed by the same packing of their lower coefficients.
//! A field built with [`Field::quadratic`] is GF(q^2) with the designated
//! subfield GF(q) = { a : a^q = a }, which is what unitary forms need.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest base field order accepted by the constructors.
pub const MAX_BASE_ORDER: usize = 16;

/// A field element in packed form.  Only meaningful together with its [`Field`].
pub type Elt = u8;

struct FieldCtx {
    p: usize,
    deg: usize,
    order: usize,
    /// lower coefficients of the monic modulus
    modulus: Vec<u8>,
    /// subfield order when this is a quadratic extension
    sub: Option<usize>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob_q: Vec<u8>,
}

/// Shared handle to a finite field context.  Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.deg == other.0.deg && self.0.sub == other.0.sub)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.sub {
            Some(q) => write!(f, "GF({}^2)", q),
            None => write!(f, "GF({})", self.0.order),
        }
    }
}

fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut r, mut f) = (q, 0);
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

fn unpack(mut v: usize, p: usize, n: usize) -> Vec<usize> {
    let mut c = vec![0; n];
    for x in c.iter_mut() {
        *x = v % p;
        v /= p;
    }
    c
}

fn pack(c: &[usize], p: usize) -> usize {
    c.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Remainder of `a` modulo the monic polynomial with lower coefficients `m`.
fn poly_rem(mut a: Vec<usize>, m: &[usize], p: usize) -> Vec<usize> {
    let f = m.len();
    while a.len() > f {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let off = a.len() - f;
            for (i, &mi) in m.iter().enumerate() {
                a[off + i] = (a[off + i] + p - (lead * mi) % p) % p;
            }
        }
    }
    a.resize(f, 0);
    a
}

fn poly_mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut r = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    r
}

/// True when the monic polynomial with lower coefficients `m` has no monic
/// factor of degree `1..=deg/2`.  Exhaustive, which is fine at these sizes.
fn is_irreducible(m: &[usize], p: usize) -> bool {
    let f = m.len();
    for k in 1..=f / 2 {
        for code in 0..p.pow(k as u32) {
            let mut div = unpack(code, p, k);
            div.push(1);
            // long division of x^f + m by div
            let mut a: Vec<usize> = m.to_vec();
            a.push(1);
            for top in (k..=f).rev() {
                let c = a[top];
                if c != 0 {
                    for (i, &d) in div.iter().enumerate() {
                        let idx = top - k + i;
                        a[idx] = (a[idx] + p - (c * d) % p) % p;
                    }
                }
            }
            if a[..k].iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// GF(q) for a prime power `q <= 16`.
    pub fn new(q: usize) -> Result<Field> {
        let (p, f) = prime_power(q).ok_or(Error::BadParams(format!("{} is not a prime power", q)))?;
        if q > MAX_BASE_ORDER {
            return Err(Error::BadParams(format!("field order {} exceeds {}", q, MAX_BASE_ORDER)));
        }
        Ok(Field::build(p, f, None))
    }

    /// GF(q^2) with designated subfield GF(q), for a prime power `q <= 16`.
    pub fn quadratic(q: usize) -> Result<Field> {
        let (p, f) = prime_power(q).ok_or(Error::BadParams(format!("{} is not a prime power", q)))?;
        if q > MAX_BASE_ORDER {
            return Err(Error::BadParams(format!("field order {} exceeds {}", q, MAX_BASE_ORDER)));
        }
        Ok(Field::build(p, 2 * f, Some(q)))
    }

    fn build(p: usize, deg: usize, sub: Option<usize>) -> Field {
        let order = p.pow(deg as u32);
        let modulus = (0..p.pow(deg as u32))
            .map(|code| unpack(code, p, deg))
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial exists in every degree");
        let mut add = vec![0u8; order * order];
        let mut mul = vec![0u8; order * order];
        let coeffs: Vec<Vec<usize>> = (0..order).map(|v| unpack(v, p, deg)).collect();
        for a in 0..order {
            for b in 0..order {
                let s: Vec<usize> = coeffs[a].iter().zip(&coeffs[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * order + b] = pack(&s, p) as u8;
                let prod = poly_rem(poly_mul(&coeffs[a], &coeffs[b], p), &modulus, p);
                mul[a * order + b] = pack(&prod, p) as u8;
            }
        }
        let mut neg = vec![0u8; order];
        let mut inv = vec![0u8; order];
        for a in 0..order {
            neg[a] = (0..order).find(|&b| add[a * order + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..order).find(|&b| mul[a * order + b] == 1).unwrap() as u8;
            }
        }
        let frob_exp = sub.unwrap_or(order);
        let frob_q = (0..order)
            .map(|a| {
                let mut r = 1u8;
                for _ in 0..frob_exp {
                    r = mul[r as usize * order + a];
                }
                if a == 0 {
                    0
                } else {
                    r
                }
            })
            .collect();
        Field(Arc::new(FieldCtx {
            p,
            deg,
            order,
            modulus: modulus.iter().map(|&x| x as u8).collect(),
            sub,
            add,
            mul,
            neg,
            inv,
            frob_q,
        }))
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn characteristic(&self) -> usize {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.deg
    }

    /// Subfield order `q` when this is GF(q^2) built by [`Field::quadratic`].
    pub fn subfield_order(&self) -> Option<usize> {
        self.0.sub
    }

    pub fn is_quadratic_extension(&self) -> bool {
        self.0.sub.is_some()
    }

    /// Lower coefficients of the monic defining polynomial.
    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        self.0.add[a as usize * self.0.order + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.0.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.0.mul[a as usize * self.0.order + b as usize]
    }

    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.0.inv[a as usize])
        }
    }

    /// Inverse of a value already known to be nonzero.
    #[inline]
    pub fn inv_nz(&self, a: Elt) -> Elt {
        debug_assert!(a != 0);
        self.0.inv[a as usize]
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elt, mut e: u64) -> Elt {
        let mut base = a;
        let mut r = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// The integer `n` reduced into the prime field.
    pub fn from_int(&self, n: i64) -> Elt {
        n.rem_euclid(self.0.p as i64) as Elt
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.0.order).map(|a| a as Elt)
    }

    /// The involution `a -> a^q` of GF(q^2).
    pub fn conj(&self, a: Elt) -> Result<Elt> {
        if self.0.sub.is_none() {
            return Err(Error::NotQuadraticExtension);
        }
        Ok(self.0.frob_q[a as usize])
    }

    /// `a^q` for GF(q^2) and the identity otherwise.  Used by sesquilinear forms.
    #[inline]
    pub fn sigma(&self, a: Elt) -> Elt {
        if self.0.sub.is_some() {
            self.0.frob_q[a as usize]
        } else {
            a
        }
    }

    /// Relative trace `a + a^q` of GF(q^2) over GF(q).
    pub fn trace(&self, a: Elt) -> Result<Elt> {
        Ok(self.add(a, self.conj(a)?))
    }

    /// Relative norm `a^(q+1)` of GF(q^2) over GF(q).
    pub fn norm(&self, a: Elt) -> Result<Elt> {
        Ok(self.mul(a, self.conj(a)?))
    }

    pub fn in_subfield(&self, a: Elt) -> bool {
        self.sigma(a) == a
    }

    /// Elements of the designated subfield (the whole field if not an extension).
    pub fn subfield_elements(&self) -> Vec<Elt> {
        self.elements().filter(|&a| self.in_subfield(a)).collect()
    }

    /// First element in enumeration order with trace `target`.
    pub fn solve_trace(&self, target: Elt) -> Result<Elt> {
        self.solve_trace_where(target, |_| true)
    }

    /// First element in enumeration order with trace `target` satisfying `keep`.
    pub fn solve_trace_where(&self, target: Elt, keep: impl Fn(Elt) -> bool) -> Result<Elt> {
        if !self.in_subfield(target) {
            return Err(Error::BadParams("trace target outside the subfield".into()));
        }
        for a in self.elements() {
            if self.trace(a)? == target && keep(a) {
                return Ok(a);
            }
        }
        Err(Error::BadParams("no element with the requested trace".into()))
    }

    pub fn is_square(&self, a: Elt) -> bool {
        a == 0 || self.0.p == 2 || self.pow(a, (self.0.order as u64 - 1) / 2) == 1
    }

    /// Some square root of `a`, the first in enumeration order.
    pub fn sqrt(&self, a: Elt) -> Option<Elt> {
        self.elements().find(|&b| self.mul(b, b) == a)
    }

    pub fn multiplicative_order(&self, a: Elt) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// First element of multiplicative order `|F| - 1`.
    pub fn primitive_element(&self) -> Elt {
        let target = self.0.order as u64 - 1;
        self.elements()
            .find(|&a| self.multiplicative_order(a) == Some(target))
            .expect("finite fields have primitive elements")
    }

    /// First `zeta` such that `X^2 + X + zeta` has no root in the field.
    pub fn find_zeta(&self) -> Elt {
        self.elements()
            .find(|&z| self.elements().all(|r| self.add(self.add(self.mul(r, r), r), z) != 0))
            .expect("an irreducible monic quadratic of this shape exists")
    }

    /// Checked wrapper around an element of this field.
    pub fn elem(&self, value: Elt) -> FieldElement {
        FieldElement { field: self.clone(), value }
    }

    /// Coordinates over the prime field, constant term first.
    pub fn coords(&self, a: Elt) -> Vec<u8> {
        unpack(a as usize, self.0.p, self.0.deg).into_iter().map(|c| c as u8).collect()
    }

    /// Human readable form: an integer for prime fields, a polynomial in `w` otherwise.
    pub fn fmt_elt(&self, a: Elt) -> String {
        if self.0.deg == 1 {
            return a.to_string();
        }
        let c = unpack(a as usize, self.0.p, self.0.deg);
        let mut terms = Vec::new();
        for (i, &x) in c.iter().enumerate().rev() {
            if x == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{}", i),
            };
            terms.push(match (x, i) {
                (_, 0) => x.to_string(),
                (1, _) => mono,
                _ => format!("{}{}", x, mono),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// An element that remembers its field.  Arithmetic across different fields
/// is rejected with [`Error::MixedContext`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    pub field: Field,
    pub value: Elt,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.fmt_elt(self.value))
    }
}

impl FieldElement {
    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            Err(Error::MixedContext)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.elem(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.elem(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.elem(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.elem(self.field.div(self.value, other.value)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.field.elem(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.field.elem(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.elem(self.field.pow(self.value, e))
    }

    pub fn conj(&self) -> Result<FieldElement> {
        Ok(self.field.elem(self.field.conj(self.value)?))
    }

    pub fn trace(&self) -> Result<FieldElement> {
        Ok(self.field.elem(self.field.trace(self.value)?))
    }

    pub fn is_square(&self) -> bool {
        self.field.is_square(self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_defining_relation() {
        let f = Field::new(4).unwrap();
        let w = 2;
        assert_eq!(f.mul(w, w), f.add(w, 1));
        assert_eq!(f.modulus(), &[1, 1]);
    }

    #[test]
    fn gf9_conj_is_cube() {
        let f = Field::quadratic(3).unwrap();
        for a in f.elements() {
            assert_eq!(f.conj(a).unwrap(), f.pow(a, 3));
        }
        assert_eq!(f.inv(2).unwrap(), 2);
    }

    #[test]
    fn zeta_values() {
        assert_eq!(Field::new(2).unwrap().find_zeta(), 1);
        assert_eq!(Field::new(3).unwrap().find_zeta(), 2);
        assert_eq!(Field::new(4).unwrap().find_zeta(), 2);
    }

    #[test]
    fn trace_solutions() {
        let f = Field::quadratic(2).unwrap();
        assert_eq!(f.solve_trace(0).unwrap(), 0);
        assert_eq!(f.solve_trace(1).unwrap(), 2);
        assert!(matches!(Field::new(4).unwrap().trace(1), Err(Error::NotQuadraticExtension)));
    }

    #[test]
    fn mixed_context_rejected() {
        let a = Field::new(3).unwrap().elem(1);
        let b = Field::new(9).unwrap().elem(1);
        assert!(matches!(a.add(&b), Err(Error::MixedContext)));
        assert!(matches!(a.div(&a.field.elem(0)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn caps() {
        assert!(Field::new(32).is_err());
        assert!(Field::new(6).is_err());
        assert!(Field::quadratic(16).is_ok());
    }
}
