//! Arithmetic in GF(p^m) backed by discrete log tables.
//!
//! A [`FieldCtx`] owns the tables for one field. Elements are canonical
//! indices: writing an index in base p, least significant digit first, gives
//! the coordinates of the element in the polynomial basis 1, x, ...,
//! x^(m-1) modulo the chosen irreducible polynomial. Index 0 is zero and
//! index 1 is one, for every field.
//!
//! The modulus is chosen deterministically so that two builds of the same
//! field agree element by element: for m = 1 it is x - g with g the smallest
//! primitive root mod p, and for m >= 2 it is the primitive polynomial whose
//! coefficient vector has the smallest canonical index. In both cases the
//! residue class of x is a generator, and `gamma()` returns it.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Hard upper bound on the field order. Keeps the log tables at a few MiB.
pub const FIELD_SIZE_CAP: u64 = 1 << 22;

/// An element of some [`FieldCtx`], stored as its canonical index.
///
/// Elements carry no reference to their field; mixing elements of different
/// contexts is not detected at this level.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Canonical index of the element.
    pub fn index(self) -> u64 {
        u64::from(self.0)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Tabulated finite field GF(p^m).
#[derive(Clone)]
pub struct FieldCtx {
    p: u64,
    m: u32,
    order: u64,
    gamma: FieldElement,
    /// Monic modulus, coefficients little endian over GF(p), length m + 1.
    modulus: Vec<u64>,
    /// antilog[i] is the index of gamma^i, for 0 <= i < order - 1.
    antilog: Vec<u32>,
    /// log[index] for nonzero indices; log[0] is a sentinel.
    log: Vec<u32>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("order", &self.order)
            .field("gamma", &self.gamma)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl FieldCtx {
    /// Builds GF(p^m), including the generator search and both lookup tables.
    pub fn build(p: u64, m: u32) -> Result<FieldCtx> {
        assert!(m >= 1, "extension degree must be positive");
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        let wide = (0..m).try_fold(1u128, |acc, _| acc.checked_mul(p as u128));
        let order = match wide {
            Some(o) if o <= FIELD_SIZE_CAP as u128 => o as u64,
            Some(o) => {
                return Err(Error::FieldTooLarge {
                    order: o,
                    cap: FIELD_SIZE_CAP,
                })
            }
            None => {
                return Err(Error::FieldTooLarge {
                    order: u128::MAX,
                    cap: FIELD_SIZE_CAP,
                })
            }
        };

        let modulus = if m == 1 {
            let g = smallest_primitive_root(p);
            vec![(p - g) % p, 1]
        } else {
            smallest_primitive_poly(p, m, order)
        };

        let group = order - 1;
        let mut antilog = vec![0u32; group as usize];
        let mut log = vec![u32::MAX; order as usize];
        let mut cur = vec![0u64; m as usize];
        cur[0] = 1;
        for i in 0..group {
            let idx = digits_to_index(&cur, p) as u32;
            assert_eq!(log[idx as usize], u32::MAX, "generator order too small");
            antilog[i as usize] = idx;
            log[idx as usize] = i as u32;
            shift_reduce(&mut cur, &modulus, p);
        }
        assert_eq!(digits_to_index(&cur, p), 1, "generator order too large");

        let gamma = if group == 1 {
            FieldElement(1)
        } else {
            FieldElement(antilog[1])
        };
        Ok(FieldCtx {
            p,
            m,
            order,
            gamma,
            modulus,
            antilog,
            log,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// The fixed generator of the multiplicative group: the class of x.
    pub fn gamma(&self) -> FieldElement {
        self.gamma
    }

    /// Monic modulus polynomial, little endian coefficients over GF(p).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index < self.order {
            Ok(FieldElement(index as u32))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    /// All elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|i| FieldElement(i as u32))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let mut ra = u64::from(a.0);
        let mut rb = u64::from(b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        while ra > 0 || rb > 0 {
            out += (ra % self.p + rb % self.p) % self.p * place;
            ra /= self.p;
            rb /= self.p;
            place *= self.p;
        }
        FieldElement(out as u32)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let mut ra = u64::from(a.0);
        let mut out = 0u64;
        let mut place = 1u64;
        while ra > 0 {
            out += (self.p - ra % self.p) % self.p * place;
            ra /= self.p;
            place *= self.p;
        }
        FieldElement(out as u32)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let group = self.order - 1;
        let exp = (u64::from(self.log[a.0 as usize]) + u64::from(self.log[b.0 as usize])) % group;
        FieldElement(self.antilog[exp as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero { order: self.order });
        }
        let group = self.order - 1;
        let exp = (group - u64::from(self.log[a.0 as usize])) % group;
        Ok(FieldElement(self.antilog[exp as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^k, with 0^0 = 1.
    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if a.is_zero() {
            return if k == 0 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            };
        }
        let group = self.order - 1;
        let exp = (u128::from(self.log[a.0 as usize]) * u128::from(k) % u128::from(group)) as u64;
        FieldElement(self.antilog[exp as usize])
    }

    /// Discrete logarithm to base gamma.
    pub fn log(&self, a: FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(u64::from(self.log[a.0 as usize]))
    }

    /// gamma^exp; the exponent is reduced modulo order - 1.
    pub fn antilog(&self, exp: u64) -> FieldElement {
        let group = self.order - 1;
        FieldElement(self.antilog[(exp % group) as usize])
    }

    /// Degree of the field over the subfield of the given order.
    fn tower(&self, sub_order: u64) -> Result<u32> {
        let mut t = sub_order;
        let mut f = 0u32;
        while t > 1 && t.is_multiple_of(self.p) {
            t /= self.p;
            f += 1;
        }
        if sub_order < 2 || t != 1 || f == 0 || !self.m.is_multiple_of(f) {
            return Err(Error::NotASubfieldTower {
                sub: sub_order,
                order: self.order,
            });
        }
        Ok(self.m / f)
    }

    /// Trace into the subfield of the given order: the sum of the conjugates
    /// x^(q^i) for i = 0 .. s-1 where s is the tower degree.
    pub fn trace(&self, x: FieldElement, sub_order: u64) -> Result<FieldElement> {
        let s = self.tower(sub_order)?;
        let mut acc = FieldElement::ZERO;
        let mut pw = x;
        for _ in 0..s {
            acc = self.add(acc, pw);
            pw = self.pow(pw, sub_order);
        }
        debug_assert_eq!(self.pow(acc, sub_order), acc);
        Ok(acc)
    }

    pub fn multiplicative_order(&self, x: FieldElement) -> Result<u64> {
        let group = self.order - 1;
        let t = self.log(x)?;
        Ok(group / t.gcd(&group))
    }

    /// Generator of the multiplicative group of the subfield of the given
    /// order, namely gamma^((order-1)/(sub_order-1)).
    pub fn subfield_generator(&self, sub_order: u64) -> Result<FieldElement> {
        self.tower(sub_order)?;
        let step = (self.order - 1) / (sub_order - 1);
        Ok(self.antilog(step % (self.order - 1)))
    }

    /// The subfield of the given order: zero followed by the powers of the
    /// subfield generator in exponent order.
    pub fn subfield_elements(&self, sub_order: u64) -> Result<Vec<FieldElement>> {
        self.tower(sub_order)?;
        let step = (self.order - 1) / (sub_order - 1);
        let mut out = Vec::with_capacity(sub_order as usize);
        out.push(FieldElement::ZERO);
        for j in 0..sub_order - 1 {
            out.push(self.antilog(j * step));
        }
        Ok(out)
    }

    /// Whether x is fixed by the q-power map, i.e. lies in GF(q).
    pub fn in_subfield(&self, x: FieldElement, sub_order: u64) -> Result<bool> {
        self.tower(sub_order)?;
        Ok(self.pow(x, sub_order) == x)
    }

    /// Minimal polynomial of x over the subfield of the given order, monic,
    /// computed as the product of X - r over the conjugate orbit of x.
    pub fn minimal_polynomial(&self, x: FieldElement, sub_order: u64) -> Result<Poly> {
        self.tower(sub_order)?;
        if x.is_zero() {
            return Ok(Poly::from_coeffs(vec![
                FieldElement::ZERO,
                FieldElement::ONE,
            ]));
        }
        let mut orbit = vec![x];
        let mut y = self.pow(x, sub_order);
        while y != x {
            orbit.push(y);
            y = self.pow(y, sub_order);
        }
        let mut coeffs = vec![FieldElement::ONE];
        for &r in &orbit {
            let mut next = vec![FieldElement::ZERO; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.sub(next[i], self.mul(r, c));
            }
            coeffs = next;
        }
        debug_assert!(coeffs.iter().all(|&c| self.pow(c, sub_order) == c));
        Ok(Poly::from_coeffs(coeffs))
    }
}

/// Polynomial with coefficients in one field, little endian.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    /// Trims trailing zero coefficients.
    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = ctx.add(ctx.mul(acc, x), c);
        }
        acc
    }

    pub fn mul(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Product in the quotient ring modulo x^n - 1.
    pub fn cyclic_mul(&self, other: &Poly, ctx: &FieldCtx, n: usize) -> Poly {
        assert!(n >= 1);
        let mut out = vec![FieldElement::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = (i + j) % n;
                out[k] = ctx.add(out[k], ctx.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }
}

impl std::fmt::Display for Poly {
    /// Comma separated coefficient indices, constant term first.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Multiplicative order of q modulo n, for n >= 2 and gcd(q, n) = 1.
pub fn ord_mod(q: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::ModulusOutOfRange(n));
    }
    if q.gcd(&n) != 1 {
        return Err(Error::NotCoprime { a: q, b: n });
    }
    let q0 = q % n;
    let mut cur = q0;
    let mut t = 1u64;
    while cur != 1 {
        cur = (u128::from(cur) * u128::from(q0) % u128::from(n)) as u64;
        t += 1;
    }
    Ok(t)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut result = 1u64;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = (u128::from(result) * u128::from(b) % u128::from(modulus)) as u64;
        }
        b = (u128::from(b) * u128::from(b) % u128::from(modulus)) as u64;
        exp >>= 1;
    }
    result
}

fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let group = p - 1;
    let divs = prime_divisors(group);
    (2..p)
        .find(|&g| divs.iter().all(|&r| pow_mod(g, group / r, p) != 1))
        .expect("every prime has a primitive root")
}

/// First candidate, in canonical index order of the lower coefficient vector,
/// that is primitive: x generates the full unit group of GF(p)[x]/(f). A
/// reducible f has a smaller unit group, so the order test alone suffices.
fn smallest_primitive_poly(p: u64, m: u32, order: u64) -> Vec<u64> {
    let group = order - 1;
    let divs = prime_divisors(group);
    for v in 0..order {
        let lower = index_to_digits(v, p, m);
        if lower[0] == 0 {
            continue;
        }
        let mut f = lower;
        f.push(1);
        if x_has_full_order(&f, p, group, &divs) {
            return f;
        }
    }
    unreachable!("primitive polynomials exist for every p and m")
}

fn x_has_full_order(f: &[u64], p: u64, group: u64, prime_divs: &[u64]) -> bool {
    let one = {
        let mut v = vec![0u64; f.len() - 1];
        v[0] = 1;
        v
    };
    if poly_pow_x(group, f, p) != one {
        return false;
    }
    prime_divs
        .iter()
        .all(|&r| poly_pow_x(group / r, f, p) != one)
}

/// x^k in GF(p)[x]/(f), by square and multiply.
fn poly_pow_x(mut k: u64, f: &[u64], p: u64) -> Vec<u64> {
    let m = f.len() - 1;
    let mut result = vec![0u64; m];
    result[0] = 1;
    let mut base = vec![0u64; m];
    base[1] = 1;
    while k > 0 {
        if k & 1 == 1 {
            result = poly_mulmod(&result, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        k >>= 1;
    }
    result
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let m = f.len() - 1;
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    for deg in (m..2 * m - 1).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for j in 0..m {
            let sub = c * f[j] % p;
            prod[deg - m + j] = (prod[deg - m + j] + p - sub) % p;
        }
    }
    prod.truncate(m);
    prod
}

/// Multiply the digit vector by the class of x and reduce by the monic
/// modulus, in place.
fn shift_reduce(d: &mut [u64], modulus: &[u64], p: u64) {
    let m = d.len();
    let carry = d[m - 1];
    for j in (1..m).rev() {
        d[j] = d[j - 1];
    }
    d[0] = 0;
    if carry != 0 {
        for j in 0..m {
            let sub = carry * modulus[j] % p;
            d[j] = (d[j] + p - sub) % p;
        }
    }
}

fn digits_to_index(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * p + d)
}

fn index_to_digits(mut v: u64, p: u64, m: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}
