//! Univariate polynomials over the exact fields, as coefficient vectors with
//! the constant term first. Only what eigenvalue extraction needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::FieldSpec;
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub fn eval(poly: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero(x.field());
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Divides by (t − r), assuming r is a root. Returns the quotient.
pub fn deflate(poly: &[Scalar], r: &Scalar) -> Vec<Scalar> {
    let n = poly.len() - 1;
    let mut q = vec![Scalar::zero(r.field()); n];
    let mut carry = Scalar::zero(r.field());
    for k in (0..n).rev() {
        carry = &poly[k + 1] + &(&carry * r);
        q[k] = carry.clone();
    }
    q
}

fn trim(mut poly: Vec<Scalar>) -> Vec<Scalar> {
    while poly.len() > 1 && poly.last().is_some_and(Scalar::is_zero) {
        poly.pop();
    }
    poly
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

fn candidate_roots(poly: &[Scalar]) -> Result<Vec<Scalar>> {
    let field = poly[0].field();
    match field {
        FieldSpec::Prime { p } => Ok((0..p).map(|v| Scalar::Mod { value: v, p }).collect()),
        FieldSpec::Rational => {
            // clear denominators, then apply the rational root theorem
            let mut l = BigInt::one();
            for c in poly {
                l = l.lcm(c.as_rational().unwrap().denom());
            }
            let ints: Vec<BigInt> = poly
                .iter()
                .map(|c| (c.as_rational().unwrap() * BigRational::from_integer(l.clone())).to_integer())
                .collect();
            let lead = ints.last().unwrap();
            let low = ints.iter().find(|c| !c.is_zero()).unwrap();
            let mut out = vec![Scalar::zero(field)];
            for a in divisors(low) {
                for b in divisors(lead) {
                    let q = BigRational::new(a.clone(), b.clone());
                    out.push(Scalar::Rational(q.clone()));
                    out.push(Scalar::Rational(-q));
                }
            }
            out.sort_by(|x, y| x.as_rational().cmp(&y.as_rational()));
            out.dedup();
            Ok(out)
        }
        FieldSpec::Cyclotomic { m } => Err(Error::Unsupported(format!(
            "root finding over Q(zeta_{m})"
        ))),
    }
}

/// All roots in the base field with multiplicity, plus the unsplit remainder
/// (constant when the polynomial splits).
pub fn roots(poly: &[Scalar]) -> Result<(Vec<(Scalar, usize)>, Vec<Scalar>)> {
    let mut rest = trim(poly.to_vec());
    let mut found = Vec::new();
    if rest.len() <= 1 {
        return Ok((found, rest));
    }
    for cand in candidate_roots(&rest)? {
        let mut mult = 0;
        while rest.len() > 1 && eval(&rest, &cand).is_zero() {
            rest = deflate(&rest, &cand);
            mult += 1;
        }
        if mult > 0 {
            found.push((cand, mult));
        }
        if rest.len() <= 1 {
            break;
        }
    }
    Ok((found, rest))
}

pub fn format_poly(poly: &[Scalar]) -> String {
    let mut terms = Vec::new();
    for (k, c) in poly.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = c.to_string();
        terms.push(match k {
            0 => cs,
            1 => format!("({cs})*t"),
            _ => format!("({cs})*t^{k}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
