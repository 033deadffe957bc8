//! Arithmetic in GF(ℓ^k).
//!
//! Elements are encoded as integers `0..q` whose base-ℓ digits are the
//! coefficients of the representing polynomial, constant term least
//! significant. That encoding is also the enumeration order used wherever a
//! deterministic choice is made ("the smallest element with ...").
//!
//! The modulus is the smallest monic irreducible polynomial of degree `k` in
//! that same encoding of its non-leading coefficients. For `k = 1` it is `x`.

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

/// A field element in the integer encoding described in the module docs.
pub type Elem = u32;

pub const DEFAULT_FIELD_CEILING: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct Field {
    characteristic: u32,
    degree: u32,
    order: u32,
    /// `degree + 1` coefficients, constant term first; leading coefficient 1.
    modulus: Vec<u32>,
    /// Discrete exp/log tables with respect to `primitive`, extension fields only.
    exp: Vec<Elem>,
    log: Vec<u32>,
    primitive: Elem,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.characteristic == other.characteristic && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl Field {
    /// GF(ℓ^k) with the default ceiling on the order.
    pub fn new(characteristic: u64, degree: u32) -> Result<Field> {
        Self::with_ceiling(characteristic, degree, DEFAULT_FIELD_CEILING)
    }

    pub fn prime(characteristic: u64) -> Result<Field> {
        Self::new(characteristic, 1)
    }

    pub fn with_ceiling(characteristic: u64, degree: u32, ceiling: u64) -> Result<Field> {
        if !is_prime(characteristic) {
            return Err(Error::InvalidPrime(characteristic));
        }
        if degree == 0 {
            return Err(Error::ShapeError("field degree must be positive".into()));
        }
        let order = crate::arith::pow_u128(characteristic, degree).unwrap_or(u128::MAX);
        if order > ceiling as u128 || order > u32::MAX as u128 {
            return Err(Error::FieldTooLarge { order, ceiling });
        }
        let l = characteristic as u32;
        let order = order as u32;
        let modulus = smallest_irreducible(l, degree);
        let mut field = Field {
            characteristic: l,
            degree,
            order,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            primitive: 0,
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q1 = (self.order - 1) as u64;
        let prime_divisors: Vec<u64> = factorize(q1).into_iter().map(|(r, _)| r).collect();
        let g = (1..self.order)
            .find(|&g| {
                prime_divisors
                    .iter()
                    .all(|&r| self.pow_slow(g, q1 / r) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        self.primitive = g;
        if self.degree == 1 {
            return;
        }
        let mut exp = vec![0; self.order as usize - 1];
        let mut log = vec![0; self.order as usize];
        let mut acc = 1;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = acc;
            log[acc as usize] = i as u32;
            acc = self.mul_slow(acc, g);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn order(&self) -> u32 {
        self.order
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn is_prime_field(&self) -> bool {
        self.degree == 1
    }
    /// A generator of the multiplicative group (smallest in enumeration order).
    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }

    pub fn zero(&self) -> Elem {
        0
    }
    pub fn one(&self) -> Elem {
        1
    }

    /// Polynomial coefficients of `a`, constant term first, length `degree`.
    pub fn digits(&self, mut a: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            out.push(a % self.characteristic);
            a /= self.characteristic;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.characteristic + d % self.characteristic)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let l = self.characteristic;
        if self.degree == 1 {
            let s = a + b;
            return if s >= l { s - l } else { s };
        }
        if l == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut place, mut out) = (a, b, 1u32, 0u32);
        while a > 0 || b > 0 {
            out += ((a % l + b % l) % l) * place;
            a /= l;
            b /= l;
            place *= l;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let l = self.characteristic;
        if self.degree == 1 {
            return if a == 0 { 0 } else { l - a };
        }
        if l == 2 {
            return a;
        }
        let (mut a, mut place, mut out) = (a, 1u32, 0u32);
        while a > 0 {
            out += ((l - a % l) % l) * place;
            a /= l;
            place *= l;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if self.degree == 1 {
            return ((a as u64 * b as u64) % self.characteristic as u64) as Elem;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.order as u64 - 1);
        self.exp[e as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        if self.degree == 1 {
            return Some(self.pow(a, self.order as u64 - 2));
        }
        let q1 = self.order - 1;
        let e = (q1 - self.log[a as usize]) % q1;
        Some(self.exp[e as usize])
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Returns `ζ = g^((q−1)/p)` for the smallest `g` with `ζ ≠ 1`, an element of
    /// multiplicative order `p`.
    pub fn element_of_order(&self, p: u64) -> Result<Elem> {
        let q1 = self.order as u64 - 1;
        if p == 0 || !q1.is_multiple_of(p) {
            return Err(Error::NoSuchRoot { q: self.order as u64, p });
        }
        (1..self.order)
            .map(|g| self.pow(g, q1 / p))
            .find(|&z| z != 1)
            .ok_or(Error::NoSuchRoot { q: self.order as u64, p })
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        if self.degree == 1 {
            return ((a as u64 * b as u64) % self.characteristic as u64) as Elem;
        }
        let prod = poly_mul(&self.digits(a), &self.digits(b), self.characteristic);
        let rem = poly_rem(&prod, &self.modulus, self.characteristic);
        let mut digits = rem;
        digits.resize(self.degree as usize, 0);
        self.from_digits(&digits)
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }
}

fn poly_mul(a: &[u32], b: &[u32], l: u32) -> Vec<u32> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % l as u64;
        }
    }
    out.into_iter().map(|c| c as u32).collect()
}

/// Remainder of `a` modulo the monic polynomial `m` (coefficients constant first).
fn poly_rem(a: &[u32], m: &[u32], l: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let l = l as u64;
    if r.len() <= dm {
        return r.into_iter().map(|c| c as u32).collect();
    }
    for top in (dm..r.len()).rev() {
        let c = r[top] % l;
        if c == 0 {
            continue;
        }
        for (j, &mj) in m.iter().enumerate() {
            let idx = top - dm + j;
            r[idx] = (r[idx] + (l - c) * mj as u64) % l;
        }
    }
    r.truncate(dm);
    r.into_iter().map(|c| c as u32).collect()
}

fn monic_from_code(mut code: u64, degree: u32, l: u32) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(degree as usize + 1);
    for _ in 0..degree {
        coeffs.push((code % l as u64) as u32);
        code /= l as u64;
    }
    coeffs.push(1);
    coeffs
}

/// Irreducibility by trial division against every monic polynomial of degree ≤ k/2.
pub fn is_irreducible(poly: &[u32], l: u32) -> bool {
    let k = poly.len() as u32 - 1;
    for d in 1..=k / 2 {
        let count = (l as u64).pow(d);
        for code in 0..count {
            let divisor = monic_from_code(code, d, l);
            if poly_rem(poly, &divisor, l).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(l: u32, degree: u32) -> Vec<u32> {
    let count = (l as u64).pow(degree);
    (0..count)
        .map(|code| monic_from_code(code, degree, l))
        .find(|poly| is_irreducible(poly, l))
        .expect("irreducible polynomials exist in every degree")
}
