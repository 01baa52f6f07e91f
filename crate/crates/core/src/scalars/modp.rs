//! Dense polynomials over a prime field `F_p`, `p < 2^31`.

use num_bigint::BigUint;
use rand::Rng;

pub(crate) type PolyP = Vec<u64>;

pub(crate) fn trim(mut a: PolyP) -> PolyP {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn add(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &[u64], c: u64, p: u64) -> PolyP {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub(crate) fn div_rem(a: &[u64], b: &[u64], p: u64) -> (PolyP, PolyP) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut q = vec![0u64; rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db] * inv % p;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - c * bj % p) % p;
            }
        }
        q[k] = c;
    }
    rem.truncate(db);
    (trim(q), trim(rem))
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> PolyP {
    div_rem(a, b, p).1
}

pub(crate) fn monic(a: &[u64], p: u64) -> PolyP {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s a + t b = g` monic.
pub(crate) fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (PolyP, PolyP, PolyP) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(*r0.last().unwrap(), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub(crate) fn derivative(a: &[u64], p: u64) -> PolyP {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

fn pow_mod_poly(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> PolyP {
    let mut result = vec![1u64];
    let mut b = rem(base, m, p);
    for i in 0..e.bits() {
        if e.bit(i) {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
    }
    result
}

/// Distinct-degree factorization of a monic squarefree `f`:
/// pairs `(product of all irreducible factors of degree d, d)`.
fn distinct_degree(f: &[u64], p: u64) -> Vec<(PolyP, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let deg = f.len() - 1;
            out.push((f.clone(), deg));
            break;
        }
        h = pow_mod_poly(&h, &pb, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = div_rem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting for odd `p`.
fn equal_degree<R: Rng>(f: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<PolyP> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: PolyP = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = sub(&pow_mod_poly(&a, &e, f, p), &[1], p);
        let g = gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let q = div_rem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&monic(&q, p), d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial over `F_p`, `p` odd.
pub(crate) fn factor_squarefree<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<PolyP> {
    let f = monic(f, p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_mod_p() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        // x^4 - 1 over F_5 splits completely
        let f = vec![4u64, 0, 0, 0, 1];
        let fs = factor_squarefree(&f, 5, &mut rng);
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|g| g.len() == 2));
        // x^2 + 1 over F_7 is irreducible
        assert_eq!(factor_squarefree(&[1, 0, 1], 7, &mut rng).len(), 1);
        let prod = fs.iter().fold(vec![1u64], |acc, g| mul(&acc, g, 5));
        assert_eq!(prod, f);
    }
}
