use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use super::cyclotomic;
use super::field::FieldSpec;
use super::mat::Mat;
use crate::error::{Error, Result};

/// An element of one of the supported exact fields.
///
/// Arithmetic operators panic when the operands live in different fields;
/// the `try_*` methods return [`Error::FieldMismatch`] instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, p: u64 },
    Cyclotomic { m: u32, coeffs: Vec<BigRational> },
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime { p } => Scalar::Mod { value: 0, p },
            FieldSpec::Cyclotomic { m } => Scalar::Cyclotomic {
                m,
                coeffs: vec![BigRational::zero(); cyclotomic::totient(m)],
            },
        }
    }

    pub fn one(field: FieldSpec) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, n: i64) -> Scalar {
        Scalar::from_rational(field, &BigRational::from_integer(BigInt::from(n)))
            .expect("integers embed in every field")
    }

    /// Embeds a rational number. Fails in characteristic p when p divides the denominator.
    pub fn from_rational(field: FieldSpec, q: &BigRational) -> Result<Scalar> {
        match field {
            FieldSpec::Rational => Ok(Scalar::Rational(q.clone())),
            FieldSpec::Prime { p } => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb).to_u64().unwrap();
                let den = q.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let inv = powmod(den, p - 2, p);
                Ok(Scalar::Mod { value: mulmod(num, inv, p), p })
            }
            FieldSpec::Cyclotomic { m } => {
                let mut coeffs = vec![BigRational::zero(); cyclotomic::totient(m)];
                coeffs[0] = q.clone();
                Ok(Scalar::Cyclotomic { m, coeffs })
            }
        }
    }

    /// The primitive root of unity ζ_m raised to `e`.
    pub fn zeta(m: u32, e: i64) -> Scalar {
        Scalar::Cyclotomic { m, coeffs: cyclotomic::zeta_pow(m, e) }
    }

    pub fn cyclotomic(m: u32, coeffs: Vec<BigRational>) -> Result<Scalar> {
        if m == 0 {
            return Err(Error::InvalidField("cyclotomic order must be >= 1".into()));
        }
        Ok(Scalar::Cyclotomic { m, coeffs: cyclotomic::reduce(m, coeffs) })
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Mod { p, .. } => FieldSpec::Prime { p: *p },
            Scalar::Cyclotomic { m, .. } => FieldSpec::Cyclotomic { m: *m },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Cyclotomic { coeffs, .. } => coeffs.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.field())
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar> {
        self.field().ensure_same(&o.field())?;
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => {
                Scalar::Mod { value: ((*a as u128 + *b as u128) % *p as u128) as u64, p: *p }
            }
            (Scalar::Cyclotomic { m, coeffs: a }, Scalar::Cyclotomic { coeffs: b, .. }) => {
                Scalar::Cyclotomic { m: *m, coeffs: a.iter().zip(b).map(|(x, y)| x + y).collect() }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar> {
        self.try_add(&o.neg_ref())
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar> {
        self.field().ensure_same(&o.field())?;
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => {
                Scalar::Mod { value: mulmod(*a, *b, *p), p: *p }
            }
            (Scalar::Cyclotomic { m, coeffs: a }, Scalar::Cyclotomic { coeffs: b, .. }) => {
                Scalar::Cyclotomic { m: *m, coeffs: cyclotomic::mul(*m, a, b) }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar> {
        self.field().ensure_same(&o.field())?;
        self.try_mul(&o.inv()?)
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, p } => Scalar::Mod { value: (p - value) % p, p: *p },
            Scalar::Cyclotomic { m, coeffs } => {
                Scalar::Cyclotomic { m: *m, coeffs: coeffs.iter().map(|c| -c).collect() }
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Rational(a) => Ok(Scalar::Rational(a.recip())),
            Scalar::Mod { value, p } => Ok(Scalar::Mod { value: powmod(*value, p - 2, *p), p: *p }),
            Scalar::Cyclotomic { m, coeffs } => {
                // Solve (multiplication by self) · c = 1 over Q.
                let d = coeffs.len();
                let mut cols = Vec::with_capacity(d);
                for k in 0..d {
                    cols.push(cyclotomic::mul(*m, coeffs, &cyclotomic::zeta_pow(*m, k as i64)));
                }
                let mut entries = Vec::with_capacity(d * d);
                for r in 0..d {
                    for col in &cols {
                        entries.push(Scalar::Rational(col[r].clone()));
                    }
                }
                let mat = Mat::new(FieldSpec::Rational, d, d, entries)?;
                let rhs = Mat::from_fn(FieldSpec::Rational, d, 1, |r, _| {
                    Scalar::from_i64(FieldSpec::Rational, (r == 0) as i64)
                });
                let sol = mat.solve(&rhs)?.ok_or(Error::DivisionByZero)?;
                let coeffs = (0..d).map(|r| sol.get(r, 0).as_rational().unwrap().clone()).collect();
                Ok(Scalar::Cyclotomic { m: *m, coeffs })
            }
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one(self.field());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Complex conjugation. On Q(ζ_m) this is ζ ↦ ζ^{-1}; on Q and F_p it is the identity.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Cyclotomic { m, coeffs } => Scalar::Cyclotomic {
                m: *m,
                coeffs: cyclotomic::galois(*m, coeffs, m - 1),
            },
            other => other.clone(),
        }
    }

    /// Galois automorphism ζ ↦ ζ^a of Q(ζ_m); identity on other fields.
    pub fn galois(&self, a: u32) -> Result<Scalar> {
        match self {
            Scalar::Cyclotomic { m, coeffs } => {
                if num_integer::gcd(a, *m) != 1 {
                    return Err(Error::Invalid(format!("{a} is not a unit mod {m}")));
                }
                Ok(Scalar::Cyclotomic { m: *m, coeffs: cyclotomic::galois(*m, coeffs, a % m) })
            }
            other => Ok(other.clone()),
        }
    }

    /// The rational value, when the element lies in the prime subfield Q.
    pub fn rational_part(&self) -> Result<BigRational> {
        match self {
            Scalar::Rational(q) => Ok(q.clone()),
            Scalar::Cyclotomic { coeffs, .. } => {
                if coeffs[1..].iter().all(Zero::is_zero) {
                    Ok(coeffs[0].clone())
                } else {
                    Err(Error::NotRational(self.to_string()))
                }
            }
            Scalar::Mod { .. } => Err(Error::NotRational(self.to_string())),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            _ => None,
        }
    }

    /// Serializes as described in the crate docs: rationals `"p/q"`, prime
    /// field elements `"n mod p"`, cyclotomic elements as coefficient lists.
    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Cyclotomic { coeffs, .. } => {
                Value::Array(coeffs.iter().map(|c| Value::String(c.to_string())).collect())
            }
            other => Value::String(other.to_string()),
        }
    }

    /// Parses a scalar of the given field from JSON. Accepts integers,
    /// strings (`"3"`, `"-2/5"`, `"4 mod 7"`) and coefficient arrays.
    pub fn from_json(field: FieldSpec, v: &Value) -> Result<Scalar> {
        match v {
            Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("non-integer number {n}")))?;
                Ok(Scalar::from_i64(field, i))
            }
            Value::String(s) => Scalar::parse(field, s),
            Value::Array(items) => {
                let FieldSpec::Cyclotomic { m } = field else {
                    return Err(Error::Parse("coefficient list outside a cyclotomic field".into()));
                };
                let mut coeffs = Vec::with_capacity(items.len());
                for it in items {
                    let c = Scalar::from_json(FieldSpec::Rational, it)?;
                    coeffs.push(c.as_rational().unwrap().clone());
                }
                Scalar::cyclotomic(m, coeffs)
            }
            other => Err(Error::Parse(format!("cannot read scalar from {other}"))),
        }
    }

    pub fn parse(field: FieldSpec, s: &str) -> Result<Scalar> {
        let s = s.trim();
        if let Some((n, p)) = s.split_once("mod") {
            let p: u64 = p.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            if field != (FieldSpec::Prime { p }) {
                return Err(Error::FieldMismatch(field, FieldSpec::Prime { p }));
            }
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            return Scalar::from_rational(field, &BigRational::from_integer(n));
        }
        let q = parse_rational(s)?;
        Scalar::from_rational(field, &q)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Mod { value, p } => write!(f, "{value} mod {p}"),
            Scalar::Cyclotomic { coeffs, .. } => {
                let mut first = true;
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
                    } else if c.is_negative() {
                        write!(f, "-")?;
                    }
                    first = false;
                    let a = c.abs();
                    match (k, a.is_one()) {
                        (0, _) => write!(f, "{a}")?,
                        (_, true) => write!(f, "z^{k}")?,
                        (_, false) => write!(f, "{a}*z^{k}")?,
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, o: &'a Scalar) -> Scalar {
                self.$try(o).expect("scalar operands from different fields")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, o: Scalar) -> Scalar {
                (&self).$try(&o).expect("scalar operands from different fields")
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, o: &'a Scalar) -> Scalar {
                (&self).$try(o).expect("scalar operands from different fields")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, e: i64) -> Scalar {
        Scalar::zeta(m, e)
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let f = FieldSpec::Cyclotomic { m: 4 };
        assert_eq!(&z(4, 1) * &z(4, 1), Scalar::from_i64(f, -1));
    }

    #[test]
    fn conj_zeta3() {
        let f = FieldSpec::Cyclotomic { m: 3 };
        let expect = &Scalar::from_i64(f, -1) - &z(3, 1);
        assert_eq!(z(3, 1).conj(), expect);
        assert_eq!(z(3, 1).conj(), z(3, 2));
    }

    #[test]
    fn one_is_identity() {
        let f = FieldSpec::Cyclotomic { m: 5 };
        let a = &z(5, 1) + &Scalar::from_i64(f, 3);
        assert_eq!(&Scalar::one(f) * &a, a);
    }

    #[test]
    fn mismatch_is_error() {
        let a = Scalar::zeta(3, 1);
        let b = Scalar::zeta(4, 1);
        assert!(matches!(a.try_mul(&b), Err(Error::FieldMismatch(..))));
        let q = Scalar::from_i64(FieldSpec::Rational, 2);
        assert!(q.try_add(&a).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = FieldSpec::prime(7).unwrap();
        for n in 1..7 {
            let a = Scalar::from_i64(f, n);
            assert!((&a * &a.inv().unwrap()).is_one());
        }
        assert_eq!(Scalar::from_i64(f, -1).as_residue(), Some(6));
    }

    #[test]
    fn cyclotomic_inverse() {
        let a = &z(8, 1) + &z(8, 3);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn rational_part_rejects_irrational() {
        let r2 = &z(8, 1) - &z(8, 3);
        assert!(r2.rational_part().is_err());
        // √2 · √2 = 2
        assert_eq!((&r2 * &r2).rational_part().unwrap(), rat(2, 1));
    }

    #[test]
    fn text_forms() {
        let f = FieldSpec::prime(5).unwrap();
        let a = Scalar::parse(f, "7 mod 5").unwrap();
        assert_eq!(a.to_string(), "2 mod 5");
        let q = Scalar::parse(FieldSpec::Rational, "6/-4").unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(Scalar::parse(FieldSpec::Rational, "5").unwrap().to_string(), "5");
        let c = Scalar::from_json(FieldSpec::Cyclotomic { m: 3 }, &serde_json::json!(["1", "1/2"])).unwrap();
        assert_eq!(c.to_json(), serde_json::json!(["1", "1/2"]));
    }
}
