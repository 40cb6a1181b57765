//! Finite fields F_q with q = p^n.
//!
//! Elements are canonical integers in `[0, q)`. The base-p digits of an
//! element are its coordinates in the polynomial basis `1, t, ..., t^{n-1}`,
//! where `t` is the class of the variable modulo the defining polynomial.
//! Multiplication goes through discrete log/antilog tables built once at
//! construction; addition is digit-wise.

mod extension;
pub(crate) mod modulus;

use std::fmt;
use std::sync::Arc;

use crate::arith::{is_prime, order_by_descent};
use crate::error::{Error, Result};

pub use extension::Extension;

/// Largest field order accepted unless a caller asks otherwise.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 16;

/// An element of some [`FieldCtx`], stored by its canonical integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[cfg(test)]
    pub(crate) fn from_raw(v: u32) -> Self {
        Elem(v)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    n: u32,
    q: u32,
    /// Monic, low degree first, length n + 1. `None` for prime fields.
    modulus: Option<Vec<u32>>,
    cap: u64,
    generator: u32,
    /// `exp[i] = g^i` for `0 <= i < q - 1`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

/// Handle to a constructed finite field. Cloning is cheap and shares tables.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "F_{}", self.0.p),
            Some(m) => write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.n, m),
        }
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.n == other.0.n && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds F_{p^n} under the default size cap. When `modulus` is omitted
    /// and `n > 1`, the smallest monic irreducible of degree `n` is used.
    pub fn new(p: u64, n: u32, modulus: Option<&[u32]>) -> Result<Self> {
        Self::with_cap(p, n, modulus, DEFAULT_SIZE_CAP)
    }

    /// Prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn with_cap(p: u64, n: u32, modulus: Option<&[u32]>, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidModulus(
                "extension degree must be at least 1".into(),
            ));
        }
        let q = (p as u128)
            .checked_pow(n)
            .filter(|&q| q <= cap as u128 && q <= u32::MAX as u128)
            .ok_or(Error::SizeLimit {
                requested: (p as u128).saturating_pow(n),
                cap,
            })?;
        let p = p as u32;
        let modulus = match (n, modulus) {
            (1, None) => None,
            (1, Some(_)) => {
                return Err(Error::InvalidModulus(
                    "a prime field takes no modulus".into(),
                ))
            }
            (_, None) => Some(modulus::smallest_irreducible(p, n)),
            (_, Some(m)) => {
                if m.len() != n as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients for degree {n}, got {}",
                        n + 1,
                        m.len()
                    )));
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::InvalidModulus(format!(
                        "coefficient {c} is not below {p}"
                    )));
                }
                if m[n as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if !modulus::is_irreducible(m, p) {
                    return Err(Error::Reducible(m.to_vec(), p));
                }
                Some(m.to_vec())
            }
        };
        Ok(Self::build(p, n, q as u32, modulus, cap))
    }

    fn build(p: u32, n: u32, q: u32, modulus: Option<Vec<u32>>, cap: u64) -> Self {
        let raw = RawArith {
            p,
            n,
            modulus: modulus.as_deref(),
        };
        let group = (q - 1) as u128;
        let generator = (1..q)
            .find(|&c| order_by_descent(group, |e| raw.pow(c, e) == 1) == group)
            .expect("F_q^* is cyclic");
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for i in 0..q - 1 {
            exp.push(acc);
            log[acc as usize] = i;
            acc = raw.mul(acc, generator);
        }
        FieldCtx(Arc::new(Inner {
            p,
            n,
            q,
            modulus,
            cap,
            generator,
            exp,
            log,
        }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn q_usize(&self) -> usize {
        self.0.q as usize
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn size_cap(&self) -> u64 {
        self.0.cap
    }

    /// Validates a canonical integer as an element.
    pub fn elem(&self, v: u64) -> Result<Elem> {
        if v < self.0.q as u64 {
            Ok(Elem(v as u32))
        } else {
            Err(Error::InvalidElement(v, self.0.q))
        }
    }

    /// Element at canonical index `i`; panics when `i >= q`.
    pub fn at(&self, i: usize) -> Elem {
        assert!(i < self.q_usize(), "index {i} outside F_{}", self.0.q);
        Elem(i as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The image of the integer `k` under Z -> F_p -> F_q.
    pub fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.0.p as i64) as u32)
    }

    /// Base-p digits (coordinates in the polynomial basis), length n.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.0.n)
            .map(|_| {
                let d = v % self.0.p;
                v /= self.0.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        Elem(
            digits
                .iter()
                .rev()
                .fold(0u32, |acc, &d| acc * self.0.p + d % self.0.p),
        )
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if self.0.n == 1 {
            return Elem(((a.0 as u64 + b.0 as u64) % p as u64) as u32);
        }
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..self.0.n {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.n == 1 {
            return Elem((p - a.0) % p);
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        for _ in 0..self.0.n {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.0.n == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % self.0.p as u64) as u32);
        }
        let order = self.0.q - 1;
        let s = self.0.log[a.0 as usize] + self.0.log[b.0 as usize];
        Elem(self.0.exp[(s % order) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivideByZero);
        }
        let order = self.0.q - 1;
        let l = self.0.log[a.0 as usize];
        Ok(Elem(self.0.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by square-and-multiply, with `0^0 = 1`.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Smallest element (by canonical integer) of multiplicative order q - 1.
    /// Over F_2 this is 1.
    pub fn multiplicative_generator(&self) -> Elem {
        Elem(self.0.generator)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Elem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::DivideByZero);
        }
        let group = (self.0.q - 1) as u128;
        Ok(order_by_descent(group, |e| self.pow(a, e as u64) == Elem::ONE) as u64)
    }

    /// Sum of `coeffs[i] * x^i` with coefficients given in this field.
    pub fn eval_poly(&self, coeffs: &[Elem], x: Elem) -> Elem {
        coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Canonical integer, or the polynomial-basis expression such as `3+2t`.
    pub fn format(&self, a: Elem, pretty: bool) -> String {
        if !pretty || self.0.n == 1 {
            return a.0.to_string();
        }
        let terms: Vec<String> = self
            .digits(a)
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| match (i, d) {
                (0, d) => d.to_string(),
                (1, 1) => "t".to_string(),
                (1, d) => format!("{d}t"),
                (i, 1) => format!("t^{i}"),
                (i, d) => format!("{d}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Constructs F_{q^m} together with an embedding of this field into it.
    pub fn extension_of(&self, m: u32) -> Result<Extension> {
        Extension::new(self, m)
    }
}

/// Table-free arithmetic on canonical integers, used while the log tables
/// are being built.
struct RawArith<'a> {
    p: u32,
    n: u32,
    modulus: Option<&'a [u32]>,
}

impl RawArith<'_> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let Some(m) = self.modulus else {
            return ((a as u64 * b as u64) % p) as u32;
        };
        let n = self.n as usize;
        let digits = |mut v: u32| -> Vec<u64> {
            (0..n)
                .map(|_| {
                    let d = (v % self.p) as u64;
                    v /= self.p;
                    d
                })
                .collect()
        };
        let (x, y) = (digits(a), digits(b));
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        // t^n = -(m_0 + ... + m_{n-1} t^{n-1})
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &mi) in m[..n].iter().enumerate() {
                let idx = k - n + i;
                prod[idx] = (prod[idx] + p - c * mi as u64 % p) % p;
            }
        }
        prod[..n]
            .iter()
            .rev()
            .fold(0u32, |acc, &d| acc * self.p + d as u32)
    }

    fn pow(&self, a: u32, e: u128) -> u32 {
        let (mut acc, mut base, mut e) = (1u32, a, e);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}
