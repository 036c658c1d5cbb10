//! Multivariate polynomial gcd over the rationals by recursive content
//! extraction and primitive pseudo-remainder sequences.

use num_traits::One;

use super::field::Rational;
use super::order::TermOrder;
use super::poly::MultiPoly;

/// Greatest common divisor, normalized to be primitive with positive
/// grevlex-leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let (a, b) = a.align(b);
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    gcd_rec(&a, &b).primitive()
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.vars());
    }
    if a == b {
        return a.clone();
    }
    let sa = a.support();
    let sb = b.support();
    // pick the first variable occurring in either
    let v = *sa.iter().chain(sb.iter()).min().unwrap();
    let in_a = sa.contains(&v);
    let in_b = sb.contains(&v);
    match (in_a, in_b) {
        (true, false) => gcd_rec(&content(a, v), b),
        (false, true) => gcd_rec(a, &content(b, v)),
        _ => {
            if sa.len() == 1 && sb.len() == 1 && sa == sb {
                return euclid_univariate(a, b, v);
            }
            let ca = content(a, v);
            let cb = content(b, v);
            let pa = a.div_exact(&ca).expect("content divides");
            let pb = b.div_exact(&cb).expect("content divides");
            let c = gcd_rec(&ca, &cb);
            let g = primitive_prs(&pa, &pb, v);
            &c * &g
        }
    }
}

/// Gcd of the coefficients of `p` viewed as a polynomial in variable `v`.
fn content(p: &MultiPoly, v: usize) -> MultiPoly {
    let coeffs = p.univariate_coeffs(v);
    let mut g = MultiPoly::zero(p.vars());
    for c in coeffs.iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.clone() } else { gcd_rec(&g, c) };
        if g.is_constant() {
            return MultiPoly::one(p.vars());
        }
    }
    g.primitive()
}

fn primitive_part(p: &MultiPoly, v: usize) -> MultiPoly {
    let c = content(p, v);
    p.div_exact(&c).expect("content divides").primitive()
}

fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let db = b.degree_in(v).unwrap();
    let bc = b.univariate_coeffs(v);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(v) {
        if r.is_zero() || dr < db {
            break;
        }
        let rc = r.univariate_coeffs(v);
        let lr = rc[dr as usize].clone();
        let mut shift = vec![0u32; r.nvars()];
        shift[v] = dr - db;
        r = &(&r * &lb) - &(&lr * &b.mul_monomial(&shift, &Rational::one()));
    }
    r
}

fn primitive_prs(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let (mut r0, mut r1) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        let r = pseudo_rem(&r0, &r1, v);
        if r.is_zero() {
            return primitive_part(&r1, v);
        }
        if r.degree_in(v) == Some(0) {
            return MultiPoly::one(a.vars());
        }
        r0 = r1;
        r1 = primitive_part(&r, v);
    }
}

fn euclid_univariate(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let mut r0 = a.monic(TermOrder::Lex);
    let mut r1 = b.monic(TermOrder::Lex);
    if r0.degree_in(v) < r1.degree_in(v) {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_zero() {
        let r = univariate_rem(&r0, &r1, v);
        r0 = r1;
        r1 = r.monic(TermOrder::Lex);
    }
    r0
}

fn univariate_rem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let db = b.degree_in(v).unwrap();
    let lb = b.leading_coeff(TermOrder::Lex).unwrap().clone();
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v).unwrap();
        if dr < db {
            break;
        }
        let lr = r.leading_coeff(TermOrder::Lex).unwrap().clone();
        let mut shift = vec![0u32; r.nvars()];
        shift[v] = dr - db;
        r -= &b.mul_monomial(&shift, &(lr / &lb));
    }
    r
}

/// Least common multiple, primitive.
pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero(&a.vars().union(b.vars()));
    }
    let g = gcd(a, b);
    (a * b).div_exact(&g).expect("gcd divides").primitive()
}
