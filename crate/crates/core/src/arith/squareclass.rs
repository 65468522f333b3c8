//! Square classes of Q and of the real quadratic field Q(sqrt d).

use super::QuadElem;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// True when the rational is the square of a rational.
pub fn is_rational_square(q: &BigRational) -> bool {
    if q.is_negative() {
        return false;
    }
    if q.is_zero() {
        return true;
    }
    let ns = q.numer().sqrt();
    let ds = q.denom().sqrt();
    &ns * &ns == *q.numer() && &ds * &ds == *q.denom()
}

/// Square-free part of a nonzero integer: the product of the sign and the
/// primes of odd multiplicity. Exact for inputs whose prime factors beyond
/// the trial bound 10^6 occur with multiplicity at most two (always the case
/// for the small discriminants handled here).
pub fn squarefree_part_int(n: &BigInt) -> BigInt {
    assert!(!n.is_zero());
    let mut m = n.abs();
    let mut out = BigInt::from(n.signum());
    let mut p = BigInt::from(2);
    let bound = BigInt::from(1_000_000u64);
    while &p * &p <= m && p <= bound {
        let mut mult = 0u32;
        loop {
            let (q, r) = num_integer::Integer::div_rem(&m, &p);
            if r.is_zero() {
                m = q;
                mult += 1;
            } else {
                break;
            }
        }
        if mult % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    if !m.is_one() {
        let s = m.sqrt();
        if &s * &s == m {
            // large prime with even multiplicity: drop
        } else {
            out *= m;
        }
    }
    out
}

/// Square-free representative of a nonzero rational's square class.
pub fn squarefree_part_rat(q: &BigRational) -> BigInt {
    squarefree_part_int(&(q.numer() * q.denom()))
}

/// Whether a nonzero element of Q(sqrt d) is a square in the field.
///
/// For rational x: x is a square iff x > 0 and x or x*d is a rational
/// square. For x = a + b sqrt(d) with b != 0: writing x = (u + v sqrt d)^2
/// forces u^2 and d v^2 to be the roots (a ± s)/2 of t^2 - a t + d b^2/4,
/// where s^2 = N(x) = a^2 - d b^2; so x is a square iff N(x) is a rational
/// square and one of (a ± s)/2 is a rational square.
pub fn is_square_in_field(x: &QuadElem) -> bool {
    if x.is_zero() {
        return true;
    }
    let d_rat = BigRational::from_integer(BigInt::from(x.d));
    if x.b.is_zero() {
        if x.a.is_negative() {
            return false;
        }
        return is_rational_square(&x.a) || is_rational_square(&(&x.a * &d_rat));
    }
    if x.d == 1 {
        return is_rational_square(&(&x.a + &x.b));
    }
    let norm = &x.a * &x.a - &d_rat * &x.b * &x.b;
    if norm.is_negative() || !is_rational_square(&norm) {
        return false;
    }
    let s = BigRational::new(norm.numer().sqrt(), norm.denom().sqrt());
    let two = BigRational::from_integer(BigInt::from(2));
    let t1 = (&x.a + &s) / &two;
    let t2 = (&x.a - &s) / &two;
    is_rational_square(&t1) || is_rational_square(&t2)
}

/// Whether two nonzero field elements lie in the same square class.
pub fn same_square_class(x: &QuadElem, y: &QuadElem) -> bool {
    is_square_in_field(&x.mul(y))
}
