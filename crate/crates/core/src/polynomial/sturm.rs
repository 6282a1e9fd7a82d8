//! Exact real-root counting with Sturm sequences over `Z[x]`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Polynomial;
use crate::error::{Error, Result};

type IntPoly = Polynomial<BigInt>;

/// Remainder of `a` by `b` after scaling `a` by `|lc(b)|^(deg a - deg b + 1)`.
///
/// The scaling factor is positive, so the sign pattern needed by Sturm's
/// theorem is preserved.
fn positive_pseudo_remainder(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().expect("nonzero divisor");
    let lead = b.leading().unwrap().clone();
    let lead_abs = lead.abs();
    let mut rem: Vec<BigInt> = a.coeffs().to_vec();
    while rem.len() > db {
        let top = rem.len() - 1;
        let c = rem[top].clone();
        if c.is_zero() {
            rem.pop();
            continue;
        }
        // rem <- |lc(b)| * rem - sign(lc(b)) * c * x^(top-db) * b
        for r in rem.iter_mut() {
            *r *= &lead_abs;
        }
        let factor = if lead.is_negative() { -c } else { c };
        for (j, bc) in b.coeffs().iter().enumerate() {
            rem[top - db + j] -= &factor * bc;
        }
        debug_assert!(rem[top].is_zero());
        rem.pop();
    }
    Polynomial::from_coeffs(rem)
}

/// Primitive gcd in `Z[x]`, normalized to a positive leading coefficient.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut x = a.primitive_part();
    let mut y = b.primitive_part();
    if x.degree() < y.degree() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = positive_pseudo_remainder(&x, &y);
        x = y;
        y = r.primitive_part();
    }
    x.primitive_part()
}

/// `p / gcd(p, p')`, primitive with positive leading coefficient.
pub fn square_free_part(p: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(IntPoly::one());
    }
    let g = gcd(p, &p.derivative());
    Ok(p.primitive_part().exact_divide(&g)?.primitive_part())
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Number of distinct real roots of `p`.
pub fn count_real_roots(p: &IntPoly) -> Result<usize> {
    let sf = square_free_part(p)?;
    if sf.is_constant() {
        return Ok(0);
    }
    let mut chain = vec![sf.clone(), sf.derivative().primitive_part()];
    loop {
        let n = chain.len();
        let r = positive_pseudo_remainder(&chain[n - 2], &chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push((-&r).primitive_part_keep_sign());
    }
    let sign_at_pos_inf = chain.iter().map(lead_sign);
    let sign_at_neg_inf = chain.iter().map(|q| {
        let s = lead_sign(q);
        if q.degree().unwrap_or(0) % 2 == 1 {
            -s
        } else {
            s
        }
    });
    let neg = sign_changes(sign_at_neg_inf);
    let pos = sign_changes(sign_at_pos_inf);
    Ok(neg - pos)
}

fn lead_sign(q: &IntPoly) -> i8 {
    match q.leading() {
        Some(c) if c.is_positive() => 1,
        Some(c) if c.is_negative() => -1,
        _ => 0,
    }
}

impl Polynomial<BigInt> {
    /// Divide by the positive content, keeping the sign of every coefficient.
    fn primitive_part_keep_sign(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        self.map(|c| c / &g)
    }
}
