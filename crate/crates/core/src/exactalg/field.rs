//! Finite fields `GF(p^n)` with log/antilog multiplication tables.
//!
//! Elements are encoded as `u32` integers `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`,
//! the coefficient vector of a polynomial reduced modulo the field's modulus.
//! Under this encoding the prime subfield is exactly `0..p`, so a vector over
//! `GF(p)` is also a vector over every `GF(p^n)` without relabelling.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default upper bound on `p^n` accepted by [`FieldSpec::new`].
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

pub type Elem = u32;

struct Tables {
    p: u32,
    n: u32,
    order: u32,
    /// Monic modulus, coefficients low to high (length `n + 1`).
    modulus: Vec<u32>,
    /// `exp[k] = gen^k` for `k < order - 1`.
    exp: Vec<Elem>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

/// A finite field `GF(p^n)` with a deterministic modulus.
///
/// Cloning is cheap; tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Tables>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut a: u32, p: u32, n: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(a % p);
        a /= p;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `m` over `GF(p)`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = ((r[idx] as u64 + p as u64 - (lead as u64 * mc as u64) % p as u64) % p as u64) as u32;
            }
        }
        r.pop();
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem(&prod, m, p)
}

/// Monic polynomial of degree `deg` whose lower coefficients encode `code`.
fn monic_from_code(code: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut c = digits(code, p, deg);
    c.push(1);
    c
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let n = (m.len() - 1) as u32;
    for deg in 1..=n / 2 {
        for code in 0..p.pow(deg) {
            let f = monic_from_code(code, deg, p);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible polynomial of degree `n` over `GF(p)` whose lower
/// coefficients, read as a base-`p` number with `x^{n-1}` most significant,
/// are smallest.
pub fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    (0..p.pow(n))
        .map(|code| monic_from_code(code, n, p))
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial exists in every degree")
}

impl FieldSpec {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        Self::with_bound(p, n, DEFAULT_FIELD_BOUND)
    }

    pub fn with_bound(p: u32, n: u32, bound: u64) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = (p as u64).checked_pow(n).filter(|&o| o <= bound && o <= u32::MAX as u64);
        let order = order.ok_or(Error::FieldTooLarge { p, n, bound })? as u32;
        let modulus = smallest_irreducible(p, n);

        // Find a primitive element by brute force over the encodings.
        let mut exp = Vec::new();
        for cand in 1..order {
            let g = digits(cand, p, n);
            let mut powers = vec![1u32];
            let mut cur = digits(1, p, n);
            loop {
                cur = poly_mul_mod(&cur, &g, &modulus, p);
                cur.resize(n as usize, 0);
                let e = encode(&cur, p);
                if e == 1 {
                    break;
                }
                powers.push(e);
            }
            if powers.len() as u32 == order - 1 {
                exp = powers;
                break;
            }
        }
        let mut log = vec![0u32; order as usize];
        for (k, &e) in exp.iter().enumerate() {
            log[e as usize] = k as u32;
        }
        Ok(FieldSpec {
            inner: Arc::new(Tables {
                p,
                n,
                order,
                modulus,
                exp,
                log,
            }),
        })
    }

    /// The prime field `GF(p)`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.n
    }

    pub fn order(&self) -> u32 {
        self.inner.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.inner.order
    }

    /// Whether `GF(p)` embeds into this field, i.e. the characteristics agree.
    pub fn extends(&self, base: &FieldSpec) -> bool {
        base.degree() == 1 && base.characteristic() == self.characteristic()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let t = &*self.inner;
        if t.p == 2 {
            return a ^ b;
        }
        if t.n == 1 {
            return (a + b) % t.p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..t.n {
            out += ((a % t.p + b % t.p) % t.p) * place;
            a /= t.p;
            b /= t.p;
            place *= t.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let t = &*self.inner;
        if t.p == 2 {
            return a;
        }
        if t.n == 1 {
            return (t.p - a) % t.p;
        }
        let mut a = a;
        let (mut out, mut place) = (0, 1);
        for _ in 0..t.n {
            out += ((t.p - a % t.p) % t.p) * place;
            a /= t.p;
            place *= t.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.inner;
        let m = t.order - 1;
        t.exp[((t.log[a as usize] + t.log[b as usize]) % m) as usize]
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        let t = &*self.inner;
        let m = t.order - 1;
        t.exp[((m - t.log[a as usize]) % m) as usize]
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
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.n == other.inner.n)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.p.hash(state);
        self.inner.n.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.n)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.n == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.n)
        }
    }
}
