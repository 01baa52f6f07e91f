use num_traits::{Signed, Zero};

use super::factor::factor_rational_poly;
use super::poly::UniPoly;
use crate::{Error, Result};

/// Sturm chain of the squarefree part of `p`.
pub fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let p0 = p.squarefree_part();
    let mut chain = vec![p0.clone(), p0.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_at_infinity(p: &UniPoly, negative: bool) -> i8 {
    let lc = p.lc();
    let mut s: i8 = if lc.is_positive() {
        1
    } else if lc.is_zero() {
        0
    } else {
        -1
    };
    if negative && p.degree().unwrap_or(0) % 2 == 1 {
        s = -s;
    }
    s
}

/// Number of distinct real roots.
pub fn real_root_count(p: &UniPoly) -> Result<usize> {
    match p.degree() {
        None => return Err(Error::InvalidInput("zero polynomial".into())),
        Some(0) => return Ok(0),
        _ => {}
    }
    let chain = sturm_chain(p);
    let at_neg = sign_changes(chain.iter().map(|q| sign_at_infinity(q, true)));
    let at_pos = sign_changes(chain.iter().map(|q| sign_at_infinity(q, false)));
    Ok(at_neg - at_pos)
}

/// `(r1, r2)` of the number field `ℚ[x]/(p)`.
pub fn signature_from_minpoly(p: &UniPoly) -> Result<(usize, usize)> {
    let deg = p
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidInput("minimal polynomial must have degree ≥ 1".into()))?;
    let factors = factor_rational_poly(p)?;
    if factors.len() != 1 || factors[0].1 != 1 {
        return Err(Error::InvalidInput(format!("{p} is reducible; nontrivial factor {}", factors[0].0)));
    }
    let r1 = real_root_count(p)?;
    Ok((r1, (deg - r1) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(real_root_count(&UniPoly::from_ints(&[-2, 0, 1])).unwrap(), 2);
        assert_eq!(real_root_count(&UniPoly::from_ints(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(real_root_count(&UniPoly::from_ints(&[-2, 0, 0, 1])).unwrap(), 1);
        assert!(real_root_count(&UniPoly::zero()).is_err());
        // repeated roots are counted once
        let p = UniPoly::from_ints(&[-1, 1]).pow(3).mul(&UniPoly::from_ints(&[1, 1]));
        assert_eq!(real_root_count(&p).unwrap(), 2);
    }

    #[test]
    fn x3_minus_2_by_hand() {
        // Chain: x^3-2, 3x^2, 2. At -inf: (-,+,+) one change; at +inf: none.
        let chain = sturm_chain(&UniPoly::from_ints(&[-2, 0, 0, 1]));
        assert_eq!(chain.len(), 3);
        assert_eq!(chain[2].degree(), Some(0));
        assert!(chain[2].lc().is_positive());
    }

    #[test]
    fn signatures() {
        assert_eq!(signature_from_minpoly(&UniPoly::from_ints(&[-1, 1])).unwrap(), (1, 0));
        assert_eq!(signature_from_minpoly(&UniPoly::from_ints(&[1, 0, 1])).unwrap(), (0, 1));
        assert_eq!(signature_from_minpoly(&UniPoly::from_ints(&[-2, 0, 0, 1])).unwrap(), (1, 1));
        let err = signature_from_minpoly(&UniPoly::from_ints(&[-1, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(m) if m.contains("x - 1") || m.contains("x + 1")));
    }
}
