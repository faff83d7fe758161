//! Root combinatorics attached to a quiver's Cartan matrix.
//!
//! Covers `p(v)`, the set `R'` of vectors with `C α·α ≤ 2`, regularity of
//! hyper-Kähler parameters, the decomposition analysis that decides flatness
//! and irreducible components of preprojective fibers, Cartan-type
//! classification, and weight bookkeeping with Freudenthal multiplicities.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::exactalg::{FieldSpec, Mat};
use crate::quiver::{bilinear, dot, mat_vec, DimVector, IntMatrix, Quiver};

/// `p(v) = 1 + A v·v − v·v`.
pub fn p_value(q: &Quiver, v: &[i64]) -> i64 {
    1 + q.adjacency_form(v, v) - dot(v, v)
}

/// All `0 < α ≤ v` with `C α·α ≤ 2`, in lexicographic order.
pub fn rprime_below(q: &Quiver, v: &DimVector) -> Result<Vec<DimVector>> {
    q.check_dim(v)?;
    let c = q.cartan();
    Ok(box_vectors(v.as_slice())
        .filter(|a| a.iter().any(|&x| x > 0) && bilinear(&c, a, a) <= 2)
        .map(|a| DimVector::new(a).unwrap())
        .collect())
}

/// Every integer vector in the box `0 ≤ α ≤ bound`, lexicographically.
pub fn box_vectors(bound: &[i64]) -> impl Iterator<Item = Vec<i64>> + '_ {
    let mut cur: Option<Vec<i64>> = Some(vec![0; bound.len()]);
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        for i in (0..next.len()).rev() {
            if next[i] < bound[i] {
                next[i] += 1;
                cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    })
}

/// A hyper-Kähler parameter: complex `λ` with rational real and imaginary
/// parts, and integral `θ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HKParam {
    pub lambda: Vec<(BigRational, BigRational)>,
    pub theta: Vec<i64>,
}

impl HKParam {
    pub fn zero(n: usize) -> HKParam {
        HKParam { lambda: vec![(BigRational::zero(), BigRational::zero()); n], theta: vec![0; n] }
    }

    /// `(0, θ⁺)` with `θ⁺ = (1, …, 1)`.
    pub fn theta_plus(n: usize) -> HKParam {
        HKParam { theta: vec![1; n], ..HKParam::zero(n) }
    }

    pub fn real(lambda: &[BigRational], theta: &[i64]) -> HKParam {
        HKParam {
            lambda: lambda.iter().map(|l| (l.clone(), BigRational::zero())).collect(),
            theta: theta.to_vec(),
        }
    }

    fn lambda_vanishes_on(&self, alpha: &[i64]) -> bool {
        let (mut re, mut im) = (BigRational::zero(), BigRational::zero());
        for ((r, i), &a) in self.lambda.iter().zip(alpha) {
            re += r * BigInt::from(a);
            im += i * BigInt::from(a);
        }
        re.is_zero() && im.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Regularity {
    pub regular: bool,
    pub witness: Option<Vec<i64>>,
}

/// `(λ, θ)` is v-regular when no `α ∈ R'` with `α ≤ v` has both
/// `λ·α = 0` and `θ·α = 0`.
pub fn is_v_regular(q: &Quiver, param: &HKParam, v: &DimVector) -> Result<Regularity> {
    let n = q.num_vertices();
    if param.lambda.len() != n || param.theta.len() != n {
        return Err(invalid("parameter length does not match the quiver"));
    }
    for alpha in rprime_below(q, v)? {
        let a = alpha.as_slice();
        if param.lambda_vanishes_on(a) && dot(&param.theta, a) == 0 {
            return Ok(Regularity { regular: false, witness: Some(a.to_vec()) });
        }
    }
    Ok(Regularity { regular: true, witness: None })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CartanType {
    Finite,
    Affine,
    Indefinite,
}

fn principal_minor(c: &IntMatrix, idx: &[usize]) -> BigRational {
    if idx.is_empty() {
        return BigRational::from_integer(1.into());
    }
    let rows: Vec<Vec<i64>> = idx.iter().map(|&i| idx.iter().map(|&j| c[i][j]).collect()).collect();
    let m = Mat::from_i64(FieldSpec::Rational, &rows);
    m.det().unwrap().as_rational().unwrap().clone()
}

fn positive_definite(c: &IntMatrix, keep: &[usize]) -> bool {
    (1..=keep.len()).all(|k| principal_minor(c, &keep[..k]).is_positive())
}

/// Finite iff positive definite; affine iff `det = 0` and every proper
/// principal submatrix is positive definite; otherwise indefinite.
pub fn classify_cartan(c: &IntMatrix) -> CartanType {
    let n = c.len();
    let all: Vec<usize> = (0..n).collect();
    if positive_definite(c, &all) {
        return CartanType::Finite;
    }
    if n == 0 {
        return CartanType::Finite;
    }
    let det_zero = principal_minor(c, &all).is_zero();
    // a symmetric matrix whose maximal proper principal submatrices are all
    // positive definite has every proper principal minor positive
    let proper_pd = (0..n).all(|skip| {
        let keep: Vec<usize> = all.iter().copied().filter(|&i| i != skip).collect();
        positive_definite(c, &keep)
    });
    if det_zero && proper_pd {
        CartanType::Affine
    } else {
        CartanType::Indefinite
    }
}

/// A multiset decomposition `v = Σ mult·α`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub parts: Vec<(Vec<i64>, usize)>,
    pub p_sum: i64,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.parts.iter().map(|(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GgReport {
    pub cartan_type: CartanType,
    pub p_v: i64,
    pub positive_roots: Vec<Vec<i64>>,
    pub decompositions: usize,
    pub flat: bool,
    pub strict: bool,
    /// Decompositions attaining `p(v) = Σ p(α_j)`; one per irreducible component.
    pub components: Vec<Decomposition>,
    pub component_dim: i64,
    /// A decomposition violating the inequality, when not flat.
    pub violation: Option<Decomposition>,
}

/// Enumerates all decompositions of `v` into `λ`-orthogonal roots below `v`
/// and compares `p(v)` with the sums `Σ p(α_j)`.
pub fn gg_analysis(q: &Quiver, lambda: &[BigRational], v: &DimVector) -> Result<GgReport> {
    q.check_dim(v)?;
    if lambda.len() != q.num_vertices() {
        return Err(invalid("lambda length does not match the quiver"));
    }
    let lv: BigRational = lambda.iter().zip(v.as_slice()).map(|(l, &x)| l * BigInt::from(x)).sum();
    if !lv.is_zero() {
        return Err(invalid(format!("lambda·v = {lv} is not zero")));
    }
    let cartan_type = classify_cartan(&q.cartan());
    if cartan_type == CartanType::Indefinite {
        return Err(Error::Unsupported(
            "component analysis needs a finite or affine Cartan matrix".into(),
        ));
    }
    let param = HKParam::real(lambda, &vec![0; lambda.len()]);
    let roots: Vec<Vec<i64>> = rprime_below(q, v)?
        .into_iter()
        .map(Vec::from)
        .filter(|a| param.lambda_vanishes_on(a))
        .collect();

    let mut memo = HashMap::new();
    let all = decompose(v.as_slice(), 0, &roots, &mut memo);
    let p_v = p_value(q, v.as_slice());
    let mut components = Vec::new();
    let mut flat = true;
    let mut strict = true;
    let mut violation = None;
    for d in all.iter() {
        let mut parts: Vec<(Vec<i64>, usize)> = Vec::new();
        for &r in d {
            match parts.last_mut() {
                Some((a, m)) if *a == roots[r] => *m += 1,
                _ => parts.push((roots[r].clone(), 1)),
            }
        }
        let p_sum: i64 = d.iter().map(|&r| p_value(q, &roots[r])).sum();
        let dec = Decomposition { parts, p_sum };
        if p_v < p_sum {
            flat = false;
            violation.get_or_insert_with(|| dec.clone());
        }
        if d.len() > 1 && p_v <= p_sum {
            strict = false;
        }
        if p_v == p_sum {
            components.push(dec);
        }
    }
    let av = q.adjacency_form(v.as_slice(), v.as_slice());
    Ok(GgReport {
        cartan_type,
        p_v,
        positive_roots: roots,
        decompositions: all.len(),
        flat,
        strict,
        components,
        component_dim: 1 + 2 * av - dot(v.as_slice(), v.as_slice()),
        violation,
    })
}

type DecompMemo = HashMap<(Vec<i64>, usize), std::rc::Rc<Vec<Vec<usize>>>>;

/// Multisets of root indices `≥ start`, nondecreasing, summing to `rest`.
fn decompose(rest: &[i64], start: usize, roots: &[Vec<i64>], memo: &mut DecompMemo) -> std::rc::Rc<Vec<Vec<usize>>> {
    if rest.iter().all(|&x| x == 0) {
        return std::rc::Rc::new(vec![vec![]]);
    }
    let key = (rest.to_vec(), start);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut out = Vec::new();
    for r in start..roots.len() {
        let root = &roots[r];
        if root.iter().zip(rest).all(|(a, b)| a <= b) {
            let next: Vec<i64> = rest.iter().zip(root).map(|(b, a)| b - a).collect();
            for tail in decompose(&next, r, roots, memo).iter() {
                let mut d = Vec::with_capacity(tail.len() + 1);
                d.push(r);
                d.extend_from_slice(tail);
                out.push(d);
            }
        }
    }
    let out = std::rc::Rc::new(out);
    memo.insert(key, out.clone());
    out
}

/// Positive roots of a finite-type symmetric Cartan matrix, generated from
/// the simple roots by reflections `s_i(β) = β − (Cβ)_i e_i`.
pub fn positive_roots_by_reflection(c: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    if classify_cartan(c) != CartanType::Finite {
        return Err(Error::Unsupported("root generation needs a finite-type Cartan matrix".into()));
    }
    let n = c.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        let cb = mat_vec(c, &beta);
        for i in 0..n {
            let mut r = beta.clone();
            r[i] -= cb[i];
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// A weight in the basis of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }
}

/// `Σ (w_i ϖ_i − v_i α_i) = w − C v`.
pub fn weight_of(q: &Quiver, v: &DimVector, w: &DimVector) -> Result<Weight> {
    q.check_dim(v)?;
    q.check_dim(w)?;
    let cv = mat_vec(&q.cartan(), v.as_slice());
    Ok(Weight(w.as_slice().iter().zip(cv).map(|(a, b)| a - b).collect()))
}

pub fn highest_weight(q: &Quiver, w: &DimVector) -> Result<Weight> {
    q.check_dim(w)?;
    Ok(Weight(w.as_slice().to_vec()))
}

/// `α_i = Σ_j C_ji ϖ_j`.
pub fn simple_root_weight(c: &IntMatrix, i: usize) -> Weight {
    Weight(c.iter().map(|row| row[i]).collect())
}

pub fn is_dominant(w: &Weight) -> bool {
    w.is_dominant()
}

/// Weight multiplicities of the irreducible highest-weight module `V(Λ)` for a
/// finite-type symmetric Cartan matrix, by Freudenthal's recursion.
pub struct Freudenthal {
    cartan: IntMatrix,
    inverse: Vec<Vec<BigRational>>,
    positive_roots: Vec<Vec<i64>>,
    highest: Vec<i64>,
    memo: HashMap<Vec<i64>, u64>,
}

impl Freudenthal {
    pub fn new(c: &IntMatrix, highest: &Weight) -> Result<Freudenthal> {
        let n = c.len();
        if highest.0.len() != n {
            return Err(invalid("weight length does not match the Cartan matrix"));
        }
        if (0..n).any(|i| (0..n).any(|j| c[i][j] != c[j][i])) {
            return Err(invalid("Cartan matrix must be symmetric"));
        }
        if !highest.is_dominant() {
            return Err(invalid("highest weight must be dominant"));
        }
        let positive_roots = positive_roots_by_reflection(c)?;
        let inv = Mat::from_i64(FieldSpec::Rational, c).inverse()?.expect("finite type is invertible");
        let inverse = (0..n)
            .map(|i| (0..n).map(|j| inv.get(i, j).as_rational().unwrap().clone()).collect())
            .collect();
        Ok(Freudenthal { cartan: c.clone(), inverse, positive_roots, highest: highest.0.clone(), memo: HashMap::new() })
    }

    /// `(λ, μ) = λᵀ C⁻¹ μ` on weights.
    fn form(&self, a: &[i64], b: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    acc += &self.inverse[i][j] * BigInt::from(x * y);
                }
            }
        }
        acc
    }

    fn weight_at(&self, depth: &[i64]) -> Vec<i64> {
        let cd = mat_vec(&self.cartan, depth);
        self.highest.iter().zip(cd).map(|(h, x)| h - x).collect()
    }

    /// Multiplicity of `Λ − Σ depth_i α_i`.
    fn mult_at_depth(&mut self, depth: &[i64]) -> u64 {
        if depth.iter().any(|&d| d < 0) {
            return 0;
        }
        if depth.iter().all(|&d| d == 0) {
            return 1;
        }
        if let Some(&m) = self.memo.get(depth) {
            return m;
        }
        let n = depth.len();
        let rho = vec![1i64; n];
        let mu = self.weight_at(depth);
        let lr: Vec<i64> = self.highest.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let mr: Vec<i64> = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let denom = self.form(&lr, &lr) - self.form(&mr, &mr);
        let result = if denom.is_zero() {
            0
        } else {
            let mut num = BigRational::zero();
            for r in 0..self.positive_roots.len() {
                let beta = self.positive_roots[r].clone();
                let mut k = 1i64;
                loop {
                    let d: Vec<i64> = depth.iter().zip(&beta).map(|(a, b)| a - k * b).collect();
                    if d.iter().any(|&x| x < 0) {
                        break;
                    }
                    let m = self.mult_at_depth(&d);
                    if m > 0 {
                        // (μ + kα, α) = (μ + kα)·β with μ + kα in ϖ-coordinates
                        let w = self.weight_at(&d);
                        num += BigRational::from_integer(BigInt::from(m as i64 * dot(&w, &beta)));
                    }
                    k += 1;
                }
            }
            let val = num * BigInt::from(2) / denom;
            assert!(val.is_integer() && !val.is_negative(), "Freudenthal recursion produced {val}");
            val.to_integer().to_u64().unwrap()
        };
        self.memo.insert(depth.to_vec(), result);
        result
    }

    pub fn multiplicity(&mut self, mu: &Weight) -> Result<u64> {
        let n = self.highest.len();
        if mu.0.len() != n {
            return Err(invalid("weight length does not match the Cartan matrix"));
        }
        // Λ − μ = C·depth
        let diff: Vec<i64> = self.highest.iter().zip(&mu.0).map(|(a, b)| a - b).collect();
        let mut depth = Vec::with_capacity(n);
        for row in &self.inverse {
            let d: BigRational = row.iter().zip(&diff).map(|(c, &x)| c * BigInt::from(x)).sum();
            if !d.is_integer() || d.is_negative() {
                return Ok(0);
            }
            depth.push(d.to_integer().to_i64().unwrap());
        }
        Ok(self.mult_at_depth(&depth))
    }

    /// Every weight of `V(Λ)` with its multiplicity.
    pub fn character(&mut self) -> BTreeMap<Vec<i64>, u64> {
        let n = self.highest.len();
        let mut out = BTreeMap::new();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([vec![0i64; n]]);
        seen.insert(vec![0i64; n]);
        while let Some(d) = queue.pop_front() {
            let m = self.mult_at_depth(&d);
            if m == 0 {
                continue;
            }
            out.insert(self.weight_at(&d), m);
            for i in 0..n {
                let mut next = d.clone();
                next[i] += 1;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        out
    }

    /// `Π_{α>0} (Λ+ρ, α) / (ρ, α)`.
    pub fn weyl_dimension(&self) -> u64 {
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for beta in &self.positive_roots {
            num *= BigInt::from(self.highest.iter().zip(beta).map(|(l, b)| (l + 1) * b).sum::<i64>());
            den *= BigInt::from(beta.iter().sum::<i64>());
        }
        (num / den).to_u64().unwrap()
    }
}

/// Multiplicity of `μ` in `V(Λ)`.
pub fn freudenthal_mult(c: &IntMatrix, highest: &Weight, mu: &Weight) -> Result<u64> {
    Freudenthal::new(c, highest)?.multiplicity(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn dv(v: &[i64]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    fn a1() -> Quiver {
        Quiver::new(&["0"], &[]).unwrap()
    }

    #[test]
    fn p_examples() {
        let a2 = Quiver::type_a(2);
        assert_eq!(p_value(&a2, &[1, 1]), 0);
        assert_eq!(p_value(&a2, &[1, 0]), 0);
        for n in 0..5 {
            assert_eq!(p_value(&Quiver::jordan(), &[n]), 1);
        }
    }

    #[test]
    fn rprime_examples() {
        let a2 = Quiver::type_a(2);
        let got: Vec<Vec<i64>> = rprime_below(&a2, &dv(&[1, 1])).unwrap().into_iter().map(Vec::from).collect();
        assert_eq!(got, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        let j: Vec<Vec<i64>> = rprime_below(&Quiver::jordan(), &dv(&[3])).unwrap().into_iter().map(Vec::from).collect();
        assert_eq!(j, vec![vec![1], vec![2], vec![3]]);
        assert!(rprime_below(&a2, &dv(&[0, 0])).unwrap().is_empty());
    }

    #[test]
    fn regularity_examples() {
        let a2 = Quiver::type_a(2);
        let v = dv(&[1, 1]);
        assert!(is_v_regular(&a2, &HKParam::theta_plus(2), &v).unwrap().regular);
        let r = is_v_regular(&a2, &HKParam::zero(2), &v).unwrap();
        assert!(!r.regular);
        assert!(r.witness.is_some());
        let p = HKParam::real(&[rat(0, 1), rat(0, 1)], &[1, -1]);
        let r = is_v_regular(&a2, &p, &v).unwrap();
        assert_eq!(r.witness, Some(vec![1, 1]));
        // imaginary parts count too
        let mut p = HKParam::zero(2);
        p.lambda[0].1 = rat(1, 1);
        p.lambda[1].1 = rat(2, 1);
        assert!(is_v_regular(&a2, &p, &v).unwrap().regular);
    }

    #[test]
    fn gg_examples() {
        let a2 = Quiver::type_a(2);
        let r = gg_analysis(&a2, &[rat(0, 1), rat(0, 1)], &dv(&[1, 1])).unwrap();
        assert!(r.flat);
        assert!(!r.strict);
        assert_eq!(r.components.len(), 2);
        assert_eq!(r.component_dim, 1);

        let r = gg_analysis(&a2, &[rat(1, 1), rat(-1, 1)], &dv(&[1, 1])).unwrap();
        assert_eq!(r.positive_roots, vec![vec![1, 1]]);
        assert_eq!(r.decompositions, 1);
        assert!(r.flat && r.strict);

        let r = gg_analysis(&a1(), &[rat(0, 1)], &dv(&[1])).unwrap();
        assert_eq!(r.decompositions, 1);
        assert_eq!(r.component_dim, 0);

        assert!(gg_analysis(&a2, &[rat(1, 1), rat(0, 1)], &dv(&[1, 1])).is_err());
        let k3 = Quiver::kronecker(3);
        assert!(matches!(
            gg_analysis(&k3, &[rat(0, 1), rat(0, 1)], &dv(&[1, 1])),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn commuting_variety_is_not_flat() {
        // Rep(Π_0, n) for the Jordan quiver has dimension n² + n > n² + 1 when n ≥ 2
        let r = gg_analysis(&Quiver::jordan(), &[rat(0, 1)], &dv(&[2])).unwrap();
        assert_eq!(r.cartan_type, CartanType::Affine);
        assert!(!r.flat);
        assert_eq!(r.violation.unwrap().len(), 2);
    }

    #[test]
    fn cartan_classes() {
        assert_eq!(classify_cartan(&vec![vec![2, -1], vec![-1, 2]]), CartanType::Finite);
        assert_eq!(classify_cartan(&vec![vec![2, -2], vec![-2, 2]]), CartanType::Affine);
        assert_eq!(classify_cartan(&vec![vec![2, -3], vec![-3, 2]]), CartanType::Indefinite);
        assert_eq!(classify_cartan(&Quiver::cycle(4).cartan()), CartanType::Affine);
        assert_eq!(classify_cartan(&Quiver::jordan().cartan()), CartanType::Affine);
    }

    #[test]
    fn weight_examples() {
        let a2 = Quiver::type_a(2);
        let w = dv(&[1, 1]);
        assert_eq!(weight_of(&a2, &dv(&[0, 0]), &w).unwrap(), Weight(vec![1, 1]));
        assert_eq!(weight_of(&a2, &dv(&[1, 1]), &w).unwrap(), Weight(vec![0, 0]));
        for r in 0..6 {
            for k in 0..=r {
                assert_eq!(weight_of(&a1(), &dv(&[k]), &dv(&[r])).unwrap(), Weight(vec![r - 2 * k]));
            }
        }
        assert!(highest_weight(&a2, &w).unwrap().is_dominant());
        assert!(!is_dominant(&Weight(vec![1, -1])));
        assert_eq!(simple_root_weight(&a2.cartan(), 0), Weight(vec![2, -1]));
    }

    #[test]
    fn freudenthal_examples() {
        let c2 = Quiver::type_a(2).cartan();
        let lam = Weight(vec![1, 1]);
        assert_eq!(freudenthal_mult(&c2, &lam, &lam).unwrap(), 1);
        assert_eq!(freudenthal_mult(&c2, &lam, &Weight(vec![0, 0])).unwrap(), 2);
        let c1 = vec![vec![2]];
        for r in 0..6 {
            for k in 0..=r {
                assert_eq!(freudenthal_mult(&c1, &Weight(vec![r]), &Weight(vec![r - 2 * k])).unwrap(), 1);
            }
            assert_eq!(freudenthal_mult(&c1, &Weight(vec![r]), &Weight(vec![r + 2])).unwrap(), 0);
        }
        assert!(freudenthal_mult(&vec![vec![0]], &Weight(vec![1]), &Weight(vec![1])).is_err());
        assert!(freudenthal_mult(&c2, &Weight(vec![-1, 0]), &Weight(vec![0, 0])).is_err());
    }

    #[test]
    fn reflection_roots_match_rprime() {
        for n in 1..5 {
            let q = Quiver::type_a(n);
            let refl = positive_roots_by_reflection(&q.cartan()).unwrap();
            assert_eq!(refl.len(), n * (n + 1) / 2);
            let big = dv(&vec![3; n]);
            let rp: Vec<Vec<i64>> = rprime_below(&q, &big).unwrap().into_iter().map(Vec::from).collect();
            assert_eq!(rp, refl);
        }
    }
}
