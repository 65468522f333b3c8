//! p-adic bookkeeping: valuations, square classes of Q_p^*, Hensel lifting
//! of square roots, and small modular arithmetic helpers.

use super::ArithError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Deterministic primality for u64 (Miller-Rabin with a complete base set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = modpow_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn modpow_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, b, m);
        }
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Legendre symbol of an integer residue by Euler's criterion: 0 if p | u.
pub fn legendre_u64(u: i64, p: u64) -> i8 {
    let r = u.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let e = modpow_u64(r, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

pub fn legendre_bigint(u: &BigInt, p: u64) -> i8 {
    let r = u.mod_floor(&BigInt::from(p));
    let r64 = u64::try_from(r).expect("residue fits u64");
    if r64 == 0 {
        return 0;
    }
    legendre_u64(r64 as i64, p)
}

/// p-adic valuation of a nonzero integer.
pub fn val_p_int(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = m.div_rem(&p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

/// p-adic valuation of a nonzero rational.
pub fn val_p_rat(q: &BigRational, p: u64) -> i64 {
    val_p_int(q.numer(), p) - val_p_int(q.denom(), p)
}

/// The square class of a nonzero element of Q_p^* for odd p: its valuation
/// together with the Legendre character of the unit part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicClass {
    pub val: i64,
    pub unit_leg: i8,
}

impl PadicClass {
    pub fn of_rational(q: &BigRational, p: u64) -> Result<Self, ArithError> {
        if q.is_zero() {
            return Err(ArithError::ZeroArgument);
        }
        let vn = val_p_int(q.numer(), p);
        let vd = val_p_int(q.denom(), p);
        let pk_n = BigInt::from(p).pow(vn as u32);
        let pk_d = BigInt::from(p).pow(vd as u32);
        let un = q.numer() / pk_n;
        let ud = q.denom() / pk_d;
        // leg(un/ud) = leg(un) * leg(ud)
        Ok(PadicClass {
            val: vn - vd,
            unit_leg: legendre_bigint(&un, p) * legendre_bigint(&ud, p),
        })
    }

    /// Class of the product of two elements.
    pub fn product(self, other: PadicClass) -> PadicClass {
        PadicClass {
            val: self.val + other.val,
            unit_leg: self.unit_leg * other.unit_leg,
        }
    }
}

/// Hilbert symbol of two square classes at an odd prime: with a = p^alpha u,
/// b = p^beta v the symbol is (-1)^{alpha beta (p-1)/2} (u|p)^beta (v|p)^alpha.
pub fn symbol_from_classes(a: PadicClass, b: PadicClass, p: u64) -> i8 {
    let alpha_odd = a.val.rem_euclid(2) == 1;
    let beta_odd = b.val.rem_euclid(2) == 1;
    let mut s: i8 = 1;
    if alpha_odd && beta_odd && ((p - 1) / 2) % 2 == 1 {
        s = -s;
    }
    if beta_odd {
        s *= a.unit_leg;
    }
    if alpha_odd {
        s *= b.unit_leg;
    }
    s
}

/// Lifts a square root of d mod p to a root mod p^k (Newton, p odd, p ∤ d).
pub fn hensel_sqrt(d: u64, p: u64, root: u64, k: u32) -> BigInt {
    let d = BigInt::from(d);
    let mut modulus = BigInt::from(p);
    let mut r = BigInt::from(root);
    let mut prec = 1u32;
    while prec < k {
        let next = prec.saturating_mul(2).min(k);
        let m_next = BigInt::from(p).pow(next);
        // r <- (r + d / r) / 2 mod p^next
        let inv_r = mod_inverse(&r, &m_next).expect("root is a unit");
        let inv_2 = mod_inverse(&BigInt::from(2), &m_next).expect("p odd");
        r = ((&r + &d * inv_r) * inv_2).mod_floor(&m_next);
        modulus = m_next;
        prec = next;
    }
    let _ = modulus;
    r.mod_floor(&BigInt::from(p).pow(k))
}

/// Modular inverse by extended gcd; None when not coprime.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}
