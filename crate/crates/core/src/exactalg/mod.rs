//! Exact scalar arithmetic and dense linear algebra.
//!
//! Three kinds of field are supported: the rationals (arbitrary precision),
//! prime fields F_p, and cyclotomic fields Q(ζ_m). Every matrix carries its
//! field, and operations on operands from different fields fail with
//! [`Error::FieldMismatch`](crate::Error::FieldMismatch).

pub mod cyclotomic;
mod field;
mod mat;
pub mod poly;
mod scalar;

pub use field::{is_prime, FieldSpec};
pub use mat::{Mat, Rref};
pub use scalar::{parse_rational, rat, Scalar};

/// Product `a · b` in a cyclotomic field.
pub fn cyclo_mul(a: &Scalar, b: &Scalar) -> crate::Result<Scalar> {
    for s in [a, b] {
        if !matches!(s.field(), FieldSpec::Cyclotomic { .. }) {
            return Err(crate::Error::InvalidField(format!("{} is not cyclotomic", s.field())));
        }
    }
    a.try_mul(b)
}

/// Conjugation ζ ↦ ζ^{-1}.
pub fn cyclo_conj(a: &Scalar) -> crate::Result<Scalar> {
    if !matches!(a.field(), FieldSpec::Cyclotomic { .. }) {
        return Err(crate::Error::InvalidField(format!("{} is not cyclotomic", a.field())));
    }
    Ok(a.conj())
}
