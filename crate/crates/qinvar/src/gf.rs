//! Exact arithmetic in finite fields GF(p^k).
//!
//! Elements are polynomials over GF(p) reduced modulo a fixed irreducible
//! monic polynomial of degree k. The modulus is chosen deterministically
//! (lowest lexicographic monic irreducible, constant coefficient varying
//! fastest), so field constructions are reproducible across runs.
//!
//! The supported range is capped at p^k <= 32, which keeps exhaustive
//! verification of the field axioms cheap and covers every dimension the
//! basis constructions need.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 32;

#[derive(Debug, PartialEq, Eq)]
struct FieldRepr {
    p: u64,
    k: usize,
    /// Monic modulus, little-endian coefficients, length k+1.
    modulus: Vec<u64>,
}

/// Arithmetic context of GF(p^k). Cheap to clone; equality compares
/// (p, k, modulus), not identity.
#[derive(Clone, Debug)]
pub struct Field {
    repr: Arc<FieldRepr>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr
    }
}
impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.repr.k == 1 {
            write!(f, "GF({})", self.repr.p)
        } else {
            write!(f, "GF({}^{})", self.repr.p, self.repr.k)
        }
    }
}

impl Field {
    /// Construct GF(p^k) with the lowest lexicographic monic irreducible
    /// modulus. Errors if p is not prime or p^k exceeds [`MAX_ORDER`].
    pub fn new(p: u64, k: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidParameter(
                "extension degree k must be >= 1".into(),
            ));
        }
        let order = p.checked_pow(k as u32).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(Error::DimensionCap(order as usize, MAX_ORDER as usize));
        }
        let modulus = find_modulus(p, k)
            .ok_or_else(|| Error::Numerical(format!("no irreducible modulus for GF({order})")))?;
        Ok(Field {
            repr: Arc::new(FieldRepr { p, k, modulus }),
        })
    }

    pub fn p(&self) -> u64 {
        self.repr.p
    }

    pub fn k(&self) -> usize {
        self.repr.k
    }

    /// Field order p^k.
    pub fn order(&self) -> u64 {
        self.repr.p.pow(self.repr.k as u32)
    }

    /// Little-endian coefficients of the monic modulus (length k+1).
    pub fn modulus(&self) -> &[u64] {
        &self.repr.modulus
    }

    /// The element whose polynomial coefficients are the base-p digits of
    /// `index`. Panics if `index >= order()`; indices and elements are in
    /// bijection, which the basis constructions use for enumeration.
    pub fn element(&self, index: u64) -> FieldElement {
        assert!(index < self.order(), "element index out of range");
        let mut coeffs = vec![0u64; self.repr.k];
        let mut n = index;
        for c in coeffs.iter_mut() {
            *c = n % self.repr.p;
            n /= self.repr.p;
        }
        FieldElement {
            coeffs,
            field: self.clone(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// All field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }
}

/// An element of GF(p^k) in the polynomial representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    /// Little-endian residues mod p, length k.
    coeffs: Vec<u64>,
    field: Field,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Index of this element under the base-p digit bijection.
    pub fn index(&self) -> u64 {
        let p = self.field.p();
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(FieldElement {
            coeffs,
            field: self.field.clone(),
        })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Ok(FieldElement {
            coeffs,
            field: self.field.clone(),
        })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        let p = self.field.p();
        let k = self.field.k();
        // Schoolbook convolution, then reduction by the monic modulus.
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let reduced = poly_mod(&prod, self.field.modulus(), p);
        let mut coeffs = vec![0u64; k];
        coeffs[..reduced.len()].copy_from_slice(&reduced);
        Ok(FieldElement {
            coeffs,
            field: self.field.clone(),
        })
    }

    /// Repeated squaring; exponents are small here (at most p^k).
    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via a^(p^k - 2). Errors on zero.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    /// Field trace to the prime subfield: a + a^p + ... + a^(p^(k-1)),
    /// reported as an integer in [0, p).
    pub fn trace(&self) -> u64 {
        let p = self.field.p();
        let k = self.field.k();
        let mut term = self.clone();
        let mut total = self.clone();
        for _ in 1..k {
            term = term.pow(p);
            total = total.add(&term).expect("same field");
        }
        // The trace is Frobenius-fixed, hence lies in the prime subfield.
        debug_assert!(total.coeffs[1..].iter().all(|&c| c == 0));
        total.coeffs[0]
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "x")?,
                1 => write!(f, "{c}x")?,
                _ if c == 1 => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Lowest lexicographic monic irreducible polynomial of degree k over
/// GF(p): candidates are enumerated by interpreting n in [0, p^k) as the
/// base-p digits of the non-leading coefficients.
fn find_modulus(p: u64, k: usize) -> Option<Vec<u64>> {
    let count = p.pow(k as u32);
    for n in 0..count {
        let mut poly = vec![0u64; k + 1];
        let mut m = n;
        for c in poly.iter_mut().take(k) {
            *c = m % p;
            m /= p;
        }
        poly[k] = 1;
        if is_irreducible(&poly, p) {
            return Some(poly);
        }
    }
    None
}

/// Exhaustive irreducibility test for the small degrees in scope: a root
/// scan covers degrees 2 and 3, and trial division by every monic
/// polynomial of degree 2..=deg/2 covers degrees 4 and 5.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for x in 0..p {
        if poly_eval(poly, x, p) == 0 {
            return false;
        }
    }
    for div_deg in 2..=deg / 2 {
        let count = p.pow(div_deg as u32);
        for n in 0..count {
            let mut div = vec![0u64; div_deg + 1];
            let mut m = n;
            for c in div.iter_mut().take(div_deg) {
                *c = m % p;
                m /= p;
            }
            div[div_deg] = 1;
            if poly_rem(poly, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Remainder of `a` modulo the monic polynomial `m`, little-endian, over
/// GF(p). The result is truncated to degree < deg(m).
fn poly_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + (p - lead % p) * mc) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    poly_mod(a, m, p)
}
