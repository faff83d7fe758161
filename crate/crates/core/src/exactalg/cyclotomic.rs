//! Arithmetic in the cyclotomic fields Q(ζ_m).
//!
//! Elements are coefficient vectors over Q in the power basis
//! 1, ζ, …, ζ^{φ(m)-1}, always reduced modulo the m-th cyclotomic polynomial.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Precomputed data for Q(ζ_m).
#[derive(Debug)]
pub struct CycloData {
    pub m: u32,
    /// Φ_m, monic, lowest coefficient first.
    pub phi: Vec<i64>,
    /// ζ^e reduced into the power basis, for e in 0..m.
    pub powers: Vec<Vec<i64>>,
}

impl CycloData {
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut q = vec![0i64; num.len() - dn];
    for k in (0..q.len()).rev() {
        let c = rem[k + dn];
        q[k] = c;
        for (t, &d) in den.iter().enumerate() {
            rem[k + t] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn cyclotomic_poly(m: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    // x^m - 1 = Π_{d | m} Φ_d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let pd = cyclotomic_poly(d, memo);
            num = poly_div_exact(&num, &pd);
        }
    }
    memo.insert(m, num.clone());
    num
}

fn build(m: u32) -> CycloData {
    let mut memo = HashMap::new();
    let phi = cyclotomic_poly(m, &mut memo);
    let d = phi.len() - 1;
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; d];
    cur[0] = 1;
    for _ in 0..m {
        powers.push(cur.clone());
        // multiply by ζ
        let top = cur[d - 1];
        let mut next = vec![0i64; d];
        next[1..d].copy_from_slice(&cur[..(d - 1)]);
        for t in 0..d {
            next[t] -= top * phi[t];
        }
        cur = next;
    }
    CycloData { m, phi, powers }
}

pub fn data(m: u32) -> Arc<CycloData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic cache poisoned");
    guard.entry(m).or_insert_with(|| Arc::new(build(m))).clone()
}

/// Euler's totient, via the degree of Φ_m.
pub fn totient(m: u32) -> usize {
    data(m).degree()
}

pub(crate) fn reduce(m: u32, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    let dat = data(m);
    let d = dat.degree();
    if coeffs.len() < d {
        coeffs.resize(d, BigRational::zero());
        return coeffs;
    }
    for k in (d..coeffs.len()).rev() {
        let c = std::mem::replace(&mut coeffs[k], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        for t in 0..d {
            let p = dat.phi[t];
            if p != 0 {
                coeffs[k - d + t] -= &c * BigInt::from(p);
            }
        }
    }
    coeffs.truncate(d);
    coeffs
}

pub(crate) fn mul(m: u32, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    reduce(m, prod)
}

/// Image of Σ c_k ζ^k under ζ ↦ ζ^a (a coprime to m for a field automorphism).
pub(crate) fn galois(m: u32, coeffs: &[BigRational], a: u32) -> Vec<BigRational> {
    let dat = data(m);
    let d = dat.degree();
    let mut out = vec![BigRational::zero(); d];
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = ((k as u64 * a as u64) % m as u64) as usize;
        for (t, &p) in dat.powers[e].iter().enumerate() {
            if p != 0 {
                out[t] += c * BigInt::from(p);
            }
        }
    }
    out
}

/// Coefficient vector of ζ^e.
pub(crate) fn zeta_pow(m: u32, e: i64) -> Vec<BigRational> {
    let dat = data(m);
    let e = e.rem_euclid(m as i64) as usize;
    dat.powers[e]
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect()
}

#[cfg(test)]
fn one(m: u32) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); totient(m)];
    v[0] = <BigRational as num_traits::One>::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(data(1).phi, vec![-1, 1]);
        assert_eq!(data(2).phi, vec![1, 1]);
        assert_eq!(data(3).phi, vec![1, 1, 1]);
        assert_eq!(data(4).phi, vec![1, 0, 1]);
        assert_eq!(data(6).phi, vec![1, -1, 1]);
        assert_eq!(data(8).phi, vec![1, 0, 0, 0, 1]);
        assert_eq!(data(12).phi, vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(5), 4);
        assert_eq!(totient(20), 8);
        assert_eq!(totient(60), 16);
    }

    #[test]
    fn powers_cycle() {
        for m in 1..25u32 {
            let dat = data(m);
            // ζ^m = 1: multiplying ζ^{m-1} by ζ must return to 1.
            let last = zeta_pow(m, m as i64 - 1);
            let z = zeta_pow(m, 1);
            assert_eq!(mul(m, &last, &z), one(m), "m = {m}");
            assert_eq!(dat.powers.len(), m as usize);
        }
    }
}
