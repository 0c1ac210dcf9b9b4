//! Table-driven finite fields GF(p^k) for q ≤ 16.
//!
//! Elements are polynomial residues over GF(p) encoded as base-p digit
//! strings: the element with coefficients `c_0 + c_1 x + ...` has index
//! `c_0 + c_1 p + ...`. Index 0 is the additive identity and 1 the
//! multiplicative identity.

use std::fmt;

use thiserror::Error;

/// Largest field order supported; keeps every table at ≤ 256 entries.
pub const MAX_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("field order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(usize),
    #[error("no default irreducible polynomial for q = {0}; supply one")]
    NoDefaultPolynomial(usize),
    #[error("invalid polynomial: {0}")]
    BadPolynomial(String),
    #[error("polynomial {0:?} is reducible over GF({1})")]
    Reducible(Vec<u32>, u32),
    #[error("field axiom violated: {0}")]
    AxiomViolation(String),
}

/// Pinned default moduli, coefficients in ascending degree.
pub fn default_polynomial(q: usize) -> Option<&'static [u32]> {
    match q {
        4 => Some(&[1, 1, 1]),        // x^2 + x + 1
        8 => Some(&[1, 1, 0, 1]),     // x^3 + x + 1
        9 => Some(&[1, 0, 1]),        // x^2 + 1
        16 => Some(&[1, 1, 0, 0, 1]), // x^4 + x + 1
        _ => None,
    }
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Splits `q` as `p^k`.
pub fn prime_power(q: usize) -> Result<(u32, u32), FieldError> {
    if q < 2 {
        return Err(FieldError::NotPrimePower(q));
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d)).unwrap();
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(FieldError::NotPrimePower(q));
    }
    Ok((p as u32, k))
}

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    irreducible: Option<Vec<u32>>,
}

impl FiniteField {
    /// GF(p^k). For `k > 1` the modulus is `irreducible` (ascending
    /// coefficients, monic, length `k + 1`) or the pinned default.
    pub fn new(p: u32, k: u32, irreducible: Option<&[u32]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroExponent);
        }
        let q = (p as usize).checked_pow(k).filter(|&q| q <= MAX_ORDER);
        let q = q.ok_or(FieldError::TooLarge((p as usize).saturating_pow(k)))?;

        let modulus = if k == 1 {
            if irreducible.is_some() {
                return Err(FieldError::BadPolynomial(
                    "a prime field takes no modulus polynomial".into(),
                ));
            }
            None
        } else {
            let poly = match irreducible {
                Some(c) => c.to_vec(),
                None => default_polynomial(q).ok_or(FieldError::NoDefaultPolynomial(q))?.to_vec(),
            };
            validate_modulus(&poly, p, k)?;
            Some(poly)
        };

        let digits = |e: usize| -> Vec<u32> {
            let mut v = Vec::with_capacity(k as usize);
            let mut e = e;
            for _ in 0..k {
                v.push((e % p as usize) as u32);
                e /= p as usize;
            }
            v
        };
        let encode = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum);
                let prod = poly_mul(&da, &db, p);
                let reduced = match &modulus {
                    Some(m) => poly_rem(&prod, m, p),
                    None => prod,
                };
                let mut r = reduced;
                r.resize(k as usize, 0);
                mul[a * q + b] = encode(&r);
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u32).collect();
        let inv =
            (0..q)
                .map(|a| {
                    if a == 0 {
                        0
                    } else {
                        (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as u32
                    }
                })
                .collect();

        let field = FiniteField { p, k, q, add, mul, neg, inv, irreducible: modulus };
        field.self_check()?;
        Ok(field)
    }

    /// GF(q) with the default modulus when `q` is not prime.
    pub fn of_order(q: usize, irreducible: Option<&[u32]>) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q)?;
        Self::new(p, k, irreducible)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn irreducible(&self) -> Option<&[u32]> {
        self.irreducible.as_deref()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u32).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.idx() * self.q + b.idx()])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.idx() * self.q + b.idx()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.idx()])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (a != FieldElement::ZERO).then(|| FieldElement(self.inv[a.idx()]))
    }

    /// Order of `a` in the multiplicative group; `None` for zero.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<usize> {
        if a == FieldElement::ZERO {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    fn self_check(&self) -> Result<(), FieldError> {
        let fail = |msg: String| Err(FieldError::AxiomViolation(msg));
        let els: Vec<FieldElement> = self.elements().collect();
        let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
        for &a in &els {
            if self.add(a, zero) != a || self.mul(a, one) != a {
                return fail(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != zero {
                return fail(format!("no additive inverse for {a}"));
            }
            if a != zero && self.mul(a, FieldElement(self.inv[a.idx()])) != one {
                return fail(format!("no multiplicative inverse for {a}"));
            }
            let mut s = zero;
            for _ in 0..self.p {
                s = self.add(s, a);
            }
            if s != zero {
                return fail(format!("characteristic {} fails at {a}", self.p));
            }
            for &b in &els {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail(format!("commutativity fails at ({a}, {b})"));
                }
                for &c in &els {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail(format!("additive associativity fails at ({a}, {b}, {c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail(format!(
                            "multiplicative associativity fails at ({a}, {b}, {c})"
                        ));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail(format!("distributivity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn validate_modulus(poly: &[u32], p: u32, k: u32) -> Result<(), FieldError> {
    if poly.len() != k as usize + 1 {
        return Err(FieldError::BadPolynomial(format!(
            "expected {} coefficients for degree {k}, got {}",
            k + 1,
            poly.len()
        )));
    }
    if let Some(&c) = poly.iter().find(|&&c| c >= p) {
        return Err(FieldError::BadPolynomial(format!("coefficient {c} is not below {p}")));
    }
    if poly[k as usize] != 1 {
        return Err(FieldError::BadPolynomial("polynomial must be monic".into()));
    }
    if is_reducible(poly, p) {
        return Err(FieldError::Reducible(poly.to_vec(), p));
    }
    Ok(())
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_reducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    (1..=deg / 2).any(|d| {
        let count = (p as usize).pow(d as u32);
        (0..count).any(|low| {
            let mut g = Vec::with_capacity(d + 1);
            let mut e = low;
            for _ in 0..d {
                g.push((e % p as usize) as u32);
                e /= p as usize;
            }
            g.push(1);
            poly_rem(poly, &g, p).iter().all(|&c| c == 0)
        })
    })
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    for top in (dm..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (i, &mc) in m.iter().enumerate() {
            let pos = top - dm + i;
            r[pos] = (r[pos] + p * p - c * mc % p) % p;
        }
    }
    r.truncate(dm);
    r
}
