//! Splitting of quaternion algebras `(a, b)_ℚ` via Hilbert symbols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalars::Rational;

fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

fn valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    (v, n)
}

/// Legendre symbol `(u / p)` for odd prime `p ∤ u`.
fn legendre(u: &BigInt, p: &BigInt) -> i32 {
    let e = (p - 1u32) / 2u32;
    let r = u.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Hilbert symbol `(a, b)_p` for nonzero integers; `p = None` is the real place.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, p: Option<&BigInt>) -> i32 {
    let Some(p) = p else {
        return if a.is_negative() && b.is_negative() { -1 } else { 1 };
    };
    let (alpha, u) = valuation(a, p);
    let (beta, v) = valuation(b, p);
    if *p == BigInt::from(2) {
        let eps = |x: &BigInt| ((x - 1u32) / 2u32).mod_floor(&BigInt::from(2)).to_u32().unwrap();
        let omega = |x: &BigInt| ((x * x - 1u32) / 8u32).mod_floor(&BigInt::from(2)).to_u32().unwrap();
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let eps_p = ((p - 1u32) / 2u32).mod_floor(&BigInt::from(2)).to_u32().unwrap();
    let mut s = if (alpha * beta * eps_p) % 2 == 0 { 1 } else { -1 };
    if beta % 2 == 1 {
        s *= legendre(&u, p);
    }
    if alpha % 2 == 1 {
        s *= legendre(&v, p);
    }
    s
}

fn to_integer_class(q: &Rational) -> BigInt {
    // q · denom² has the same square class as q
    q.numer() * q.denom()
}

/// Whether `(a, b)_ℚ ≅ M₂(ℚ)`: all local Hilbert symbols are trivial.
pub fn quaternion_splits(a: &Rational, b: &Rational) -> bool {
    assert!(!a.is_zero() && !b.is_zero(), "quaternion parameters must be nonzero");
    let (a, b) = (to_integer_class(a), to_integer_class(b));
    if hilbert_symbol(&a, &b, None) == -1 {
        return false;
    }
    let mut primes = prime_factors(&(&a * &b));
    if !primes.contains(&BigInt::from(2)) {
        primes.push(BigInt::from(2));
    }
    primes.iter().all(|p| hilbert_symbol(&a, &b, Some(p)) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn classical_cases() {
        assert!(!quaternion_splits(&rat(-1, 1), &rat(-1, 1)));
        assert!(quaternion_splits(&rat(1, 1), &rat(-1, 1)));
        assert!(quaternion_splits(&rat(-1, 1), &rat(2, 1)));
        assert!(!quaternion_splits(&rat(-1, 1), &rat(3, 1)));
        assert!(quaternion_splits(&rat(2, 1), &rat(7, 1)));
        assert!(!quaternion_splits(&rat(-2, 1), &rat(-5, 1)));
        assert!(quaternion_splits(&rat(5, 4), &rat(-1, 9)));
    }
}
