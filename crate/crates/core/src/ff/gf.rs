//! Arithmetic in a single finite field `GF(p^n)`.
//!
//! Elements are [`Fe`] handles holding the canonical base-`p` encoding of the
//! polynomial-basis coordinates: `sum c_i p^i` represents `sum c_i x^i` modulo
//! the defining polynomial. The encoding is shared by every backend, so
//! values can be compared, hashed and serialized without consulting the
//! field. Prime-field constants `c < p` encode as themselves.
//!
//! Fields up to [`TABLE_LIMIT`] elements use exp/log/Zech tables; larger
//! fields fall back to schoolbook polynomial arithmetic.

use serde::{Deserialize, Serialize};

use super::fpoly;
use super::prime::{checked_pow, prime_divisors};
use crate::error::{Error, Result};

/// Largest field size backed by lookup tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

/// Maximum supported degree over the prime field.
const MAX_DIGITS: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Prime,
    Tables { exp: Vec<u32>, log: Vec<u32>, zech: Vec<u32> },
    Poly,
}

const NO_LOG: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Gf {
    p: u64,
    degree: u32,
    size: u64,
    modulus: Vec<u64>,
    repr: Repr,
    /// Bit mask of the modulus below its leading term (characteristic 2 only).
    mod_bits: u64,
}

/// Public description of a field, as recorded in certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub degree: u32,
    pub modulus: Vec<u64>,
}

impl Gf {
    /// Prime field `GF(p)`.
    pub fn prime(p: u64) -> Result<Gf> {
        Gf::new(p, vec![0, 1])
    }

    /// `GF(p^n)` defined by the canonical (lexicographically first) irreducible.
    pub fn canonical(p: u64, n: u32) -> Result<Gf> {
        if !super::prime::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 1 {
            return Gf::prime(p);
        }
        Gf::new(p, fpoly::first_irreducible(p, n))
    }

    /// Field with the given monic defining polynomial over `F_p` (low degree first).
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Gf> {
        if !super::prime::is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        let degree = (modulus.len() - 1) as u32;
        if degree == 0 || modulus.last() != Some(&1) {
            return Err(Error::InvalidField(format!("modulus must be monic of positive degree: {modulus:?}")));
        }
        let size = checked_pow(p, degree)
            .filter(|&s| s < 1 << 63 && (degree as usize) < MAX_DIGITS)
            .ok_or_else(|| Error::InvalidField(format!("GF({p}^{degree}) exceeds the 63-bit element encoding")))?;
        if degree > 1 && !fpoly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over GF({p})")));
        }
        let mod_bits = if p == 2 {
            modulus[..degree as usize]
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };
        let mut field = Gf { p, degree, size, modulus, repr: Repr::Poly, mod_bits };
        if degree == 1 {
            field.modulus = vec![0, 1];
            field.repr = Repr::Prime;
        } else if size <= TABLE_LIMIT {
            field.repr = field.build_tables();
        }
        Ok(field)
    }

    fn build_tables(&self) -> Repr {
        let q = self.size;
        let order = q - 1;
        let divisors = prime_divisors(order);
        let generator = (2..q)
            .map(Fe)
            .find(|&g| divisors.iter().all(|&r| self.slow_pow(g, order / r) != Fe::ONE))
            .unwrap_or(Fe(1));
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = Fe::ONE;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur.0 as u32;
            log[cur.0 as usize] = i as u32;
            cur = self.slow_mul(cur, generator);
        }
        let zech = (0..order as usize)
            .map(|k| {
                let s = self.slow_add(Fe::ONE, Fe(exp[k] as u64));
                if s.is_zero() {
                    NO_LOG
                } else {
                    log[s.0 as usize]
                }
            })
            .collect();
        Repr::Tables { exp, log, zech }
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Degree over the prime field.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, degree: self.degree, modulus: self.modulus.clone() }
    }

    pub fn has_tables(&self) -> bool {
        matches!(self.repr, Repr::Tables { .. })
    }

    /// Element from an integer label in `0..size`.
    pub fn from_u64(&self, v: u64) -> Result<Fe> {
        if v < self.size {
            Ok(Fe(v))
        } else {
            Err(Error::InvalidElement { value: v, size: self.size })
        }
    }

    /// Image of an integer in the prime subfield.
    #[inline]
    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u64)
    }

    /// Class of `x` modulo the defining polynomial (zero for prime fields,
    /// whose modulus is `x`).
    pub fn gen(&self) -> Fe {
        if self.degree == 1 {
            Fe::ZERO
        } else {
            Fe(self.p)
        }
    }

    pub fn digits(&self, a: Fe) -> Vec<u64> {
        let mut v = a.0;
        (0..self.degree)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[u64]) -> Fe {
        Fe(d.iter().rev().fold(0u64, |acc, &c| acc * self.p + c % self.p))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        match &self.repr {
            Repr::Prime => {
                let s = a.0 + b.0;
                Fe(if s >= self.p { s - self.p } else { s })
            }
            Repr::Tables { exp, log, zech } => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                let order = self.size - 1;
                let la = log[a.0 as usize] as u64;
                let lb = log[b.0 as usize] as u64;
                let d = if lb >= la { lb - la } else { lb + order - la };
                let z = zech[d as usize];
                if z == NO_LOG {
                    return Fe::ZERO;
                }
                let e = la + z as u64;
                Fe(exp[(if e >= order { e - order } else { e }) as usize] as u64)
            }
            Repr::Poly => self.slow_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        match &self.repr {
            Repr::Prime => Fe(self.p - a.0),
            Repr::Tables { exp, log, .. } => {
                let order = self.size - 1;
                let e = log[a.0 as usize] as u64 + order / 2;
                Fe(exp[(if e >= order { e - order } else { e }) as usize] as u64)
            }
            Repr::Poly => {
                let d: Vec<u64> = self.digits(a).into_iter().map(|c| (self.p - c) % self.p).collect();
                self.from_digits(&d)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        match &self.repr {
            Repr::Prime => Fe(a.0 * b.0 % self.p),
            Repr::Tables { exp, log, .. } => {
                let order = self.size - 1;
                let e = log[a.0 as usize] as u64 + log[b.0 as usize] as u64;
                Fe(exp[(if e >= order { e - order } else { e }) as usize] as u64)
            }
            Repr::Poly => self.slow_mul(a, b),
        }
    }

    #[inline]
    pub fn sqr(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(!a.is_zero(), "inverse of zero");
        match &self.repr {
            Repr::Prime => Fe(fpoly::pow_mod(a.0, self.p - 2, self.p)),
            Repr::Tables { exp, log, .. } => {
                let order = self.size - 1;
                let l = log[a.0 as usize] as u64;
                Fe(exp[((order - l) % order) as usize] as u64)
            }
            Repr::Poly => self.slow_pow(a, self.size - 2),
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        match &self.repr {
            Repr::Tables { exp, log, .. } => {
                let order = (self.size - 1) as u128;
                let l = log[a.0 as usize] as u128;
                Fe(exp[(l * (e as u128 % order) % order) as usize] as u64)
            }
            _ => self.slow_pow(a, e),
        }
    }

    /// Discrete logarithm with respect to the table generator, when tables exist.
    #[inline]
    pub fn log(&self, a: Fe) -> Option<u32> {
        match &self.repr {
            Repr::Tables { log, .. } if !a.is_zero() => Some(log[a.0 as usize]),
            _ => None,
        }
    }

    /// `a^p`.
    pub fn frobenius_p(&self, a: Fe) -> Fe {
        self.pow(a, self.p)
    }

    pub fn is_square(&self, a: Fe) -> bool {
        if a.is_zero() || self.p == 2 {
            return true;
        }
        self.pow(a, (self.size - 1) / 2) == Fe::ONE
    }

    /// Square root when it exists.
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return Some(Fe::ZERO);
        }
        if self.p == 2 {
            // Squaring is bijective: a^(Q/2) is the root.
            return Some(self.pow(a, self.size / 2));
        }
        if !self.is_square(a) {
            return None;
        }
        // Tonelli-Shanks in the multiplicative group of order Q-1.
        let q = self.size;
        let mut s = 0;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = (2..q).map(Fe).find(|&z| !self.is_square(z)).expect("non-residue exists");
        let mut m = s;
        let mut c = self.pow(z, t);
        let mut x = self.pow(a, t.div_ceil(2));
        let mut b = self.pow(a, t);
        while b != Fe::ONE {
            let mut i = 0;
            let mut bb = b;
            while bb != Fe::ONE {
                bb = self.sqr(bb);
                i += 1;
            }
            let mut g = c;
            for _ in 0..(m - i - 1) {
                g = self.sqr(g);
            }
            x = self.mul(x, g);
            c = self.sqr(g);
            b = self.mul(b, c);
            m = i;
        }
        Some(x)
    }

    /// Absolute trace to the prime field, `a + a^p + ... + a^(p^(n-1))`.
    pub fn abs_trace(&self, a: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        let mut cur = a;
        for _ in 0..self.degree {
            acc = self.add(acc, cur);
            cur = self.frobenius_p(cur);
        }
        acc
    }

    /// Iterator over all elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size).map(Fe)
    }

    // ---- polynomial-basis backend -------------------------------------

    fn slow_add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.degree {
            let d = (x % p + y % p) % p;
            out += d * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Fe(out)
    }

    fn slow_mul(&self, a: Fe, b: Fe) -> Fe {
        if self.degree == 1 {
            return Fe(a.0 * b.0 % self.p);
        }
        if self.p == 2 {
            return Fe(self.clmul_reduce(a.0, b.0));
        }
        let n = self.degree as usize;
        let p = self.p;
        let mut da = [0u64; MAX_DIGITS];
        let mut db = [0u64; MAX_DIGITS];
        let (mut x, mut y) = (a.0, b.0);
        for i in 0..n {
            da[i] = x % p;
            db[i] = y % p;
            x /= p;
            y /= p;
        }
        let mut prod = [0u64; 2 * MAX_DIGITS];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] += da[i] * db[j];
            }
            // keep partial sums bounded
            if i % 8 == 7 {
                for v in prod.iter_mut().take(2 * n) {
                    *v %= p;
                }
            }
        }
        for v in prod.iter_mut().take(2 * n) {
            *v %= p;
        }
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                let m = self.modulus[i];
                if m != 0 {
                    prod[k - n + i] = (prod[k - n + i] + (p - m) * c) % p;
                }
            }
        }
        let mut out = 0u64;
        for i in (0..n).rev() {
            out = out * p + prod[i];
        }
        Fe(out)
    }

    fn clmul_reduce(&self, a: u64, b: u64) -> u64 {
        let n = self.degree;
        let mut prod: u128 = 0;
        let mut bb = b;
        let mut i = 0;
        while bb != 0 {
            if bb & 1 == 1 {
                prod ^= (a as u128) << i;
            }
            bb >>= 1;
            i += 1;
        }
        let mut k = 2 * n as i32 - 2;
        while k >= n as i32 {
            if (prod >> k) & 1 == 1 {
                prod ^= 1u128 << k;
                prod ^= (self.mod_bits as u128) << (k - n as i32);
            }
            k -= 1;
        }
        prod as u64
    }

    fn slow_pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc = Fe::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        acc
    }
}
