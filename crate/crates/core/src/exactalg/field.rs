use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The exact field a scalar or matrix lives in.
///
/// Serializes as `{"kind":"rational"}`, `{"kind":"prime","p":5}` or
/// `{"kind":"cyclotomic","m":8}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
    Cyclotomic { m: u32 },
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        let f = FieldSpec::Prime { p };
        f.validate()?;
        Ok(f)
    }

    pub fn cyclotomic(m: u32) -> Result<Self> {
        let f = FieldSpec::Cyclotomic { m };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rational => Ok(()),
            FieldSpec::Prime { p } => {
                // residues are multiplied in u128, so any u64 prime is fine
                if is_prime(p) {
                    Ok(())
                } else {
                    Err(Error::InvalidField(format!("{p} is not prime")))
                }
            }
            FieldSpec::Cyclotomic { m } => {
                if m >= 1 {
                    Ok(())
                } else {
                    Err(Error::InvalidField("cyclotomic order must be >= 1".into()))
                }
            }
        }
    }

    /// Characteristic of the field (0 for characteristic zero).
    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Prime { p } => p,
            _ => 0,
        }
    }

    pub(crate) fn ensure_same(&self, other: &FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(*self, *other))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Cyclotomic { m } => write!(f, "Q(zeta_{m})"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
