//! Factorization over ℚ: squarefree decomposition, factorization modulo a
//! good prime, Hensel lifting and factor recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp;
use super::poly::UniPoly;
use super::rational::Rational;
use crate::{Error, Result};

type IntPoly = Vec<BigInt>;

fn trim(mut a: IntPoly) -> IntPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Coefficients reduced into the symmetric range `(-m/2, m/2]`.
fn symmetric(a: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_modp(a: &[BigInt], p: u64) -> modp::PolyP {
    let pb = BigInt::from(p);
    modp::trim(a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_modp(a: &[u64]) -> IntPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Lift `f ≡ u·w (mod p)` to `f ≡ U·W (mod p^k)` with `U` monic.
fn hensel_pair(f: &[BigInt], u: &[u64], w: &[u64], p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (g, s, t) = modp::ext_gcd(u, w, p);
    debug_assert_eq!(g, vec![1]);
    let mut uu = from_modp(u);
    let mut ww = from_modp(w);
    let pb = BigInt::from(p);
    let mut pm = pb.clone();
    for _ in 1..k {
        let uw = int_mul(&uu, &ww);
        let n = f.len().max(uw.len());
        let diff: IntPoly =
            (0..n).map(|i| f.get(i).cloned().unwrap_or_default() - uw.get(i).cloned().unwrap_or_default()).collect();
        let e: IntPoly = diff
            .iter()
            .map(|c| {
                debug_assert!((c % &pm).is_zero());
                c / &pm
            })
            .collect();
        let e = to_modp(&e, p);
        if !e.is_empty() {
            let (q, sigma) = modp::div_rem(&modp::mul(&t, &e, p), u, p);
            let tau = modp::add(&modp::mul(&e, &s, p), &modp::mul(&q, w, p), p);
            for (i, c) in sigma.iter().enumerate() {
                uu[i] += &pm * BigInt::from(*c);
            }
            if ww.len() < tau.len() {
                ww.resize(tau.len(), BigInt::zero());
            }
            for (i, c) in tau.iter().enumerate() {
                ww[i] += &pm * BigInt::from(*c);
            }
        }
        pm *= &pb;
    }
    (uu, trim(ww))
}

fn divides(h: &[BigInt], g: &[BigInt]) -> Option<IntPoly> {
    let (q, r) = UniPoly::from_bigints(g).div_rem(&UniPoly::from_bigints(h))?;
    if !r.is_zero() || q.coeffs().iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
}

fn primitive(a: &[BigInt]) -> IntPoly {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let s = if a.last().is_some_and(Signed::is_negative) { -g } else { g };
    a.iter().map(|c| c / &s).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Irreducible factors over ℤ of a primitive squarefree integer polynomial.
fn zassenhaus(g: &[BigInt]) -> Vec<IntPoly> {
    let n = g.len() - 1;
    if n <= 1 {
        return vec![g.to_vec()];
    }
    let lc = g[n].clone();
    // pick the good prime with the fewest modular factors among the first few
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<modp::PolyP>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let gp = to_modp(g, p);
        if modp::gcd(&gp, &modp::derivative(&gp, p), p) != vec![1] {
            continue;
        }
        let fs = modp::factor_squarefree(&gp, p, &mut rng);
        if fs.len() == 1 {
            return vec![g.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (p, mods) = best.expect("a good prime always exists");

    let maxc = g.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = lc.abs() * (BigInt::one() << n) * BigInt::from(n + 1) * maxc * 2;
    let mut k = 1u32;
    let mut modulus = BigInt::from(p);
    while modulus <= bound {
        modulus *= p;
        k += 1;
    }

    // multifactor lifting, peeling one factor at a time
    let mut lifted = Vec::new();
    let mut target = g.to_vec();
    for i in 0..mods.len() - 1 {
        let rest = mods[i + 1..].iter().fold(vec![1u64], |acc, f| modp::mul(&acc, f, p));
        let lc_t = to_modp(&[target.last().unwrap().clone()], p);
        let w = modp::scale(&rest, lc_t[0], p);
        let (u, w) = hensel_pair(&target, &mods[i], &w, p, k);
        lifted.push(symmetric(&u, &modulus));
        target = symmetric(&w, &modulus);
    }
    let lt = target.last().unwrap().mod_floor(&modulus);
    let lt_inv = lt.modinv(&modulus).expect("leading coefficient is a unit");
    let last: IntPoly = target.iter().map(|c| c * &lt_inv).collect();
    lifted.push(symmetric(&last, &modulus));

    // recombination
    let mut out = Vec::new();
    let mut g = g.to_vec();
    let mut remaining = lifted;
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let lcg = g.last().unwrap().clone();
        let mut found = None;
        for subset in combinations(remaining.len(), s) {
            let prod =
                subset.iter().fold(vec![lcg.clone()], |acc, &i| symmetric(&int_mul(&acc, &remaining[i]), &modulus));
            let h = primitive(&prod);
            if let Some(q) = divides(&h, &g) {
                found = Some((subset, h, q));
                break;
            }
        }
        match found {
            Some((subset, h, q)) => {
                out.push(h);
                g = primitive(&q);
                remaining =
                    remaining.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, f)| f).collect();
            }
            None => s += 1,
        }
    }
    if g.len() > 1 {
        out.push(g);
    }
    out
}

fn sort_key(p: &UniPoly) -> (usize, Vec<Rational>) {
    (p.degree().unwrap_or(0), p.coeffs().to_vec())
}

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// lexicographically on coefficients. Constants have no factors.
pub fn factor_rational_poly(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let mut out = Vec::new();
    for (g, mult) in p.squarefree_decomposition() {
        for h in zassenhaus(&g.primitive_integer()) {
            out.push((UniPoly::from_bigints(&h).monic(), mult));
        }
    }
    out.sort_by_key(|a| sort_key(&a.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reassemble(f: &[(UniPoly, u32)]) -> UniPoly {
        f.iter().fold(UniPoly::one(), |acc, (g, m)| acc.mul(&g.pow(*m)))
    }

    #[test]
    fn small_cases() {
        let f = factor_rational_poly(&UniPoly::from_ints(&[-1, 0, 0, 0, 1])).unwrap();
        let polys: Vec<_> = f.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(
            polys,
            vec![UniPoly::from_ints(&[-1, 1]), UniPoly::from_ints(&[1, 1]), UniPoly::from_ints(&[1, 0, 1])]
        );
        let f = factor_rational_poly(&UniPoly::from_ints(&[-1, 0, 0, 1])).unwrap();
        assert_eq!(f, vec![(UniPoly::from_ints(&[-1, 1]), 1), (UniPoly::from_ints(&[1, 1, 1]), 1)]);
        let sq = UniPoly::from_ints(&[-2, 0, 1]).pow(2);
        assert_eq!(factor_rational_poly(&sq).unwrap(), vec![(UniPoly::from_ints(&[-2, 0, 1]), 2)]);
        assert!(factor_rational_poly(&UniPoly::zero()).is_err());
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        let p = UniPoly::from_ints(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_rational_poly(&p).unwrap(), vec![(p.clone(), 1)]);
    }

    #[test]
    fn non_monic_and_larger() {
        // (2x^3 - 3x + 5)(3x^2 + 7)(x^5 - x - 1)·(1/6)
        let a = UniPoly::from_ints(&[5, -3, 0, 2]);
        let b = UniPoly::from_ints(&[7, 0, 3]);
        let c = UniPoly::from_ints(&[-1, -1, 0, 0, 0, 1]);
        let p = a.mul(&b).mul(&c).scale(&super::super::rat(1, 6));
        let f = factor_rational_poly(&p).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(reassemble(&f), p.monic());
    }

    #[test]
    fn cyclotomic_24() {
        // x^24 - 1 has 8 cyclotomic factors
        let mut c = vec![0i64; 25];
        c[0] = -1;
        c[24] = 1;
        let p = UniPoly::from_ints(&c);
        let f = factor_rational_poly(&p).unwrap();
        assert_eq!(f.len(), 8);
        assert_eq!(reassemble(&f), p);
    }
}
