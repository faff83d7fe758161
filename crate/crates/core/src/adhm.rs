//! The Jordan quiver with one-dimensional framing: commuting pairs, points of
//! the Hilbert scheme of the plane, their ideals, joint spectra and
//! Calogero–Moser points.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{invalid, shape, Error, Result};
use crate::exactalg::poly::{format_poly, roots};
use crate::exactalg::{FieldSpec, Mat, Scalar};
use crate::quiver::{DimVector, Quiver};
use crate::reps::{framed_endomorphism_space, min_closure, moment_residual, FramedRep, GradedSubspace, Rep};

/// A quadruple `(x, y, i, j)` with `x, y : Cⁿ → Cⁿ`, `i : C → Cⁿ`, `j : Cⁿ → C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdhmData {
    pub n: usize,
    pub field: FieldSpec,
    pub x: Mat,
    pub y: Mat,
    pub i: Mat,
    pub j: Mat,
}

/// A monomial `x^a y^b` as `(a, b)`.
pub type Monomial = (u32, u32);

impl AdhmData {
    pub fn new(x: Mat, y: Mat, i: Mat, j: Mat) -> Result<AdhmData> {
        let n = x.rows();
        let field = x.field();
        let ok = x.is_square()
            && (y.rows(), y.cols()) == (n, n)
            && (i.rows(), i.cols()) == (n, 1)
            && (j.rows(), j.cols()) == (1, n);
        if !ok {
            return Err(shape(format!("x, y must be {n}x{n}, i {n}x1 and j 1x{n}")));
        }
        for m in [&y, &i, &j] {
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
        }
        Ok(AdhmData { n, field, x, y, i, j })
    }

    /// `(x, y, i)` with `j = 0`.
    pub fn triple(x: Mat, y: Mat, i: Mat) -> Result<AdhmData> {
        let j = Mat::zeros(x.field(), 1, x.rows());
        AdhmData::new(x, y, i, j)
    }

    pub fn to_framed(&self) -> FramedRep {
        let q = Quiver::jordan().double();
        let v = DimVector::new(vec![self.n as i64]).unwrap();
        let rep = Rep::new(q, v, self.field, vec![self.x.clone(), self.y.clone()]).unwrap();
        let w = DimVector::new(vec![1]).unwrap();
        FramedRep::new(rep, w, vec![self.i.clone()], vec![self.j.clone()]).unwrap()
    }

    pub fn from_framed(r: &FramedRep) -> Result<AdhmData> {
        if r.quiver().num_vertices() != 1 || r.quiver().edges().len() != 2 || r.w().as_slice() != [1] {
            return Err(invalid("expected a point of the framed Jordan double with w = 1"));
        }
        let m = r.rep().mats();
        AdhmData::new(m[0].clone(), m[1].clone(), r.i()[0].clone(), r.j()[0].clone())
    }

    /// `x ↦ g x g⁻¹`, `y ↦ g y g⁻¹`, `i ↦ g i`, `j ↦ j g⁻¹`.
    pub fn act(&self, g: &Mat) -> Result<AdhmData> {
        AdhmData::from_framed(&self.to_framed().conjugate(std::slice::from_ref(g))?)
    }

    pub fn commutator(&self) -> Mat {
        commutator(&self.x, &self.y)
    }

    /// The vector `x^a y^b i`.
    pub fn spin(&self, m: Monomial) -> Mat {
        let mut v = self.i.clone();
        for _ in 0..m.1 {
            v = self.y.mul(&v).unwrap();
        }
        for _ in 0..m.0 {
            v = self.x.mul(&v).unwrap();
        }
        v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field,
            "n": self.n,
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "i": self.i.to_json(),
            "j": self.j.to_json(),
        })
    }

    /// Reads `{"field", "n", "x", "y", "i", "j"}`; `j` defaults to zero.
    pub fn from_json(value: &Value) -> Result<AdhmData> {
        let field = match value.get("field") {
            None => FieldSpec::Rational,
            Some(f) => serde_json::from_value(f.clone()).map_err(|e| Error::Parse(format!("field: {e}")))?,
        };
        field.validate()?;
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer n".into()))? as usize;
        let read = |key: &str, r: usize, c: usize| -> Result<Mat> {
            match value.get(key) {
                Some(m) => Mat::from_json(field, r, c, m),
                None if key == "j" => Ok(Mat::zeros(field, r, c)),
                None => Err(Error::Parse(format!("missing key {key}"))),
            }
        };
        AdhmData::new(read("x", n, n)?, read("y", n, n)?, read("i", n, 1)?, read("j", 1, n)?)
    }
}

fn commutator(x: &Mat, y: &Mat) -> Mat {
    x.mul(y).unwrap().sub(&y.mul(x).unwrap()).unwrap()
}

fn is_cyclic(d: &AdhmData) -> bool {
    let rep = d.to_framed();
    let seed = GradedSubspace::from_spans(vec![d.i.clone()]);
    min_closure(rep.rep(), &seed).unwrap().is_full()
}

/// `[x, y] = 0`, `j = 0` and `i` cyclic.
pub fn is_hilbert_point(d: &AdhmData) -> bool {
    d.commutator().is_zero() && d.j.is_zero() && is_cyclic(d)
}

/// Monomials of degree `deg` in increasing degree-lexicographic order, `x < y`.
fn monomials_of_degree(deg: u32) -> impl Iterator<Item = Monomial> {
    (0..=deg).map(move |b| (deg - b, b))
}

fn deglex_key(m: &Monomial) -> (u32, u32) {
    (m.0 + m.1, m.1)
}

/// Quotient data of the ideal `{f : f(x, y) i = 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialIdealView {
    /// Standard monomials, in degree-lexicographic order.
    pub staircase: Vec<Monomial>,
    /// Minimal monomials outside the staircase.
    pub leading_terms: Vec<Monomial>,
    pub codimension: usize,
    /// Reduced Gröbner basis: for each leading term `m`, the coefficients
    /// `c_s` with `m − Σ c_s s` in the ideal, indexed like `staircase`.
    #[serde(skip)]
    pub normal_forms: Vec<Vec<Scalar>>,
}

impl MonomialIdealView {
    /// Gröbner basis elements written out, e.g. `y - x`.
    pub fn generators(&self) -> Vec<String> {
        self.leading_terms
            .iter()
            .zip(&self.normal_forms)
            .map(|(lt, coeffs)| {
                let mut s = monomial_name(*lt);
                for (m, c) in self.staircase.iter().zip(coeffs).rev() {
                    if !c.is_zero() {
                        s.push_str(&format!(" - ({c})*{}", monomial_name(*m)));
                    }
                }
                s
            })
            .collect()
    }
}

pub fn monomial_name((a, b): Monomial) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    match (a, b) {
        (0, 0) => "1".into(),
        (_, 0) => part("x", a),
        (0, _) => part("y", b),
        _ => format!("{}{}", part("x", a), part("y", b)),
    }
}

/// Minimal monomials outside an order ideal.
fn outer_corners(staircase: &[Monomial]) -> Vec<Monomial> {
    let inside = |m: Monomial| staircase.contains(&m);
    let top = staircase.iter().map(|m| m.0 + m.1).max().map_or(0, |d| d + 1);
    let mut out = Vec::new();
    for deg in 0..=top {
        for m in monomials_of_degree(deg) {
            if inside(m) {
                continue;
            }
            let left = m.0 == 0 || inside((m.0 - 1, m.1));
            let down = m.1 == 0 || inside((m.0, m.1 - 1));
            if left && down {
                out.push(m);
            }
        }
    }
    out
}

/// Spins `m(x, y) i` over monomials in degree-lexicographic order; a
/// monomial is standard iff its vector is independent of the earlier ones.
pub fn ideal_from_triple(d: &AdhmData) -> Result<MonomialIdealView> {
    if !d.commutator().is_zero() {
        return Err(invalid("x and y do not commute"));
    }
    if !is_cyclic(d) {
        return Err(invalid("i is not a cyclic vector"));
    }
    let f = d.field;
    let mut staircase = Vec::new();
    let mut basis = Mat::zeros(f, d.n, 0);
    for deg in 0..=d.n as u32 {
        for m in monomials_of_degree(deg) {
            let cand = basis.hstack(&d.spin(m))?;
            if cand.rank() > basis.cols() {
                staircase.push(m);
                basis = cand;
            }
        }
    }
    let leading_terms = outer_corners(&staircase);
    let normal_forms = leading_terms
        .iter()
        .map(|&lt| {
            let sol = basis.solve(&d.spin(lt)).unwrap().expect("standard monomials span");
            (0..sol.rows()).map(|r| sol.get(r, 0).clone()).collect()
        })
        .collect();
    Ok(MonomialIdealView { codimension: staircase.len(), staircase, leading_terms, normal_forms })
}

pub fn is_order_ideal(staircase: &[Monomial]) -> bool {
    let mut seen = std::collections::HashSet::new();
    staircase.iter().all(|&m| seen.insert(m))
        && staircase.iter().all(|&(a, b)| {
            (a == 0 || staircase.contains(&(a - 1, b))) && (b == 0 || staircase.contains(&(a, b - 1)))
        })
}

/// The triple of a monomial ideal: the quotient basis is the staircase in
/// degree-lexicographic order, `x` and `y` multiply (products leaving the
/// staircase are zero), `i = 1`, `j = 0`.
pub fn triple_from_staircase(staircase: &[Monomial], field: FieldSpec) -> Result<AdhmData> {
    if staircase.is_empty() || !is_order_ideal(staircase) {
        return Err(invalid("staircase must be a nonempty order ideal"));
    }
    let mut basis = staircase.to_vec();
    basis.sort_by_key(deglex_key);
    let n = basis.len();
    let pos = |m: Monomial| basis.iter().position(|&b| b == m);
    let mult = |shift: Monomial| {
        let mut m = Mat::zeros(field, n, n);
        for (c, &(a, b)) in basis.iter().enumerate() {
            if let Some(r) = pos((a + shift.0, b + shift.1)) {
                m.set(r, c, Scalar::one(field));
            }
        }
        m
    };
    let mut i = Mat::zeros(field, n, 1);
    i.set(pos((0, 0)).unwrap(), 0, Scalar::one(field));
    AdhmData::triple(mult((1, 0)), mult((0, 1)), i)
}

/// Every order ideal of the given size, each in degree-lexicographic order.
pub fn staircases(n: usize) -> Vec<Vec<Monomial>> {
    // order ideals of size n in N² are partitions of n
    fn parts(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            parts(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut ps = Vec::new();
    parts(n as u32, n as u32, &mut Vec::new(), &mut ps);
    ps.into_iter()
        .map(|p| {
            let mut s: Vec<Monomial> =
                p.iter().enumerate().flat_map(|(b, &len)| (0..len).map(move |a| (a, b as u32))).collect();
            s.sort_by_key(deglex_key);
            s
        })
        .collect()
}

/// Pairs `(u_k, w_k)` on the diagonal of a simultaneous triangularization:
/// for each eigenvalue `u` of `x`, the eigenvalues of `y` on the generalized
/// eigenspace of `u`.
pub fn joint_spectrum(x: &Mat, y: &Mat) -> Result<Vec<(Scalar, Scalar)>> {
    if !x.is_square() || x.rows() != y.rows() || !y.is_square() {
        return Err(shape("x and y must be square of equal size"));
    }
    if !commutator(x, y).is_zero() {
        return Err(invalid("x and y do not commute"));
    }
    let n = x.rows();
    let f = x.field();
    let split = |m: &Mat, what: &str| -> Result<Vec<(Scalar, usize)>> {
        let (rs, rest) = roots(&m.charpoly()?)?;
        if rest.len() > 1 {
            return Err(Error::NonSplit(format!("{what} has irreducible factor {}", format_poly(&rest))));
        }
        Ok(rs)
    };
    let mut out = Vec::with_capacity(n);
    for (u, _) in split(x, "characteristic polynomial of x")? {
        let shifted = x.sub(&Mat::identity(f, n).scale(&u))?;
        let space = shifted.pow(n as u32)?.kernel_basis();
        // y preserves the generalized eigenspace; restrict it there
        let restricted = space.solve(&y.mul(&space)?)?.expect("y preserves generalized eigenspaces");
        for (w, mult) in split(&restricted, "restriction of y")? {
            for _ in 0..mult {
                out.push((u.clone(), w.clone()));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerTraces {
    /// `Tr(x^a y^b)` for `a + b ≤ maxdeg`.
    pub table: BTreeMap<Monomial, Scalar>,
    /// Whether the table was matched against the joint spectrum.
    pub spectrum_checked: bool,
}

/// `Tr(x^a y^b)` for `a + b ≤ maxdeg`. When `x` and `y` commute and the
/// spectrum splits, each entry is checked against `Σ_k u_k^a w_k^b`.
pub fn power_traces(x: &Mat, y: &Mat, maxdeg: u32) -> Result<PowerTraces> {
    if !x.is_square() || x.rows() != y.rows() || !y.is_square() {
        return Err(shape("x and y must be square of equal size"));
    }
    let mut table = BTreeMap::new();
    for deg in 0..=maxdeg {
        for (a, b) in monomials_of_degree(deg) {
            table.insert((a, b), x.pow(a)?.mul(&y.pow(b)?)?.trace()?);
        }
    }
    let spectrum = match joint_spectrum(x, y) {
        Ok(s) => Some(s),
        Err(Error::NonSplit(_) | Error::Invalid(_) | Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    if let Some(spec) = &spectrum {
        for (&(a, b), t) in &table {
            let sum = spec
                .iter()
                .fold(Scalar::zero(x.field()), |acc, (u, w)| &acc + &(&u.pow(a) * &w.pow(b)));
            if &sum != t {
                return Err(Error::CheckFailed(format!(
                    "Tr(x^{a} y^{b}) = {t} but the spectrum gives {sum}"
                )));
            }
        }
    }
    Ok(PowerTraces { table, spectrum_checked: spectrum.is_some() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmReport {
    pub n: usize,
    pub residual_zero: bool,
    pub cyclic: bool,
    pub stabilizer_dim: usize,
    /// `2 w·v − C v·v` for the Jordan quiver at `w = 1`.
    pub expected_dim: i64,
    pub passed: bool,
}

/// Checks a point of `[x, y] + i j = λ Id` with `λ ≠ 0`: the residual
/// vanishes, `i` is cyclic, and the homogeneous stabilizer system has only
/// the zero solution.
pub fn calogero_moser_check(d: &AdhmData, lambda: &BigRational) -> Result<CmReport> {
    if lambda.is_zero() {
        return Err(invalid("lambda must be nonzero"));
    }
    let r = d.to_framed();
    let residual = moment_residual(&r, std::slice::from_ref(lambda))?;
    let cyclic = is_cyclic(d);
    if !residual[0].is_zero() {
        return Err(Error::CheckFailed(format!(
            "[x,y] + ij - lambda Id is nonzero (i cyclic: {cyclic})"
        )));
    }
    let stabilizer_dim = framed_endomorphism_space(&r).dim;
    let v = DimVector::new(vec![d.n as i64])?;
    let w = DimVector::new(vec![1])?;
    let expected_dim = Quiver::jordan().dims(&v, Some(&w))?.nakajima.unwrap();
    Ok(CmReport {
        n: d.n,
        residual_zero: true,
        cyclic,
        stabilizer_dim,
        expected_dim,
        passed: cyclic && stabilizer_dim == 0 && expected_dim == 2 * d.n as i64,
    })
}

/// Whether `j m(x, y) i = 0` for every monomial of degree below `n`; for a
/// cyclic `i` this is equivalent to `j = 0`.
pub fn j_kills_spin(d: &AdhmData) -> bool {
    (0..d.n as u32).all(|deg| monomials_of_degree(deg).all(|m| d.j.mul(&d.spin(m)).unwrap().is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::reps::{is_stable_minus, random_invertible, random_mat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: FieldSpec = FieldSpec::Rational;

    fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_i64(Q, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn nilpotent(i: &[i64]) -> AdhmData {
        AdhmData::triple(m(&[&[0, 1], &[0, 0]]), Mat::zeros(Q, 2, 2), m(&[&[i[0]], &[i[1]]])).unwrap()
    }

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(Q, v)
    }

    #[test]
    fn hilbert_point_examples() {
        assert!(is_hilbert_point(&nilpotent(&[0, 1])));
        assert!(!is_hilbert_point(&nilpotent(&[1, 0])));
        let one = AdhmData::triple(m(&[&[0]]), m(&[&[0]]), m(&[&[1]])).unwrap();
        assert!(is_hilbert_point(&one));
        assert!(is_stable_minus(&nilpotent(&[0, 1]).to_framed()));
    }

    #[test]
    fn ideal_examples() {
        let view = ideal_from_triple(&nilpotent(&[0, 1])).unwrap();
        assert_eq!(view.staircase, vec![(0, 0), (1, 0)]);
        assert_eq!(view.leading_terms, vec![(0, 1), (2, 0)]);
        assert_eq!(view.codimension, 2);
        assert_eq!(view.generators(), vec!["y", "x^2"]);

        let one = AdhmData::triple(m(&[&[0]]), m(&[&[0]]), m(&[&[1]])).unwrap();
        let view = ideal_from_triple(&one).unwrap();
        assert_eq!(view.staircase, vec![(0, 0)]);
        assert_eq!(view.leading_terms, vec![(1, 0), (0, 1)]);

        let two_points = AdhmData::triple(m(&[&[0, 0], &[0, 1]]), Mat::zeros(Q, 2, 2), m(&[&[1], &[1]])).unwrap();
        let view = ideal_from_triple(&two_points).unwrap();
        assert_eq!(view.staircase, vec![(0, 0), (1, 0)]);
        assert_eq!(view.leading_terms, vec![(0, 1), (2, 0)]);
        assert_eq!(view.generators(), vec!["y", "x^2 - (1)*x"]);

        assert!(ideal_from_triple(&nilpotent(&[1, 0])).is_err());
    }

    #[test]
    fn staircase_round_trip() {
        for n in 1..=6 {
            let all = staircases(n);
            for st in &all {
                let d = triple_from_staircase(st, Q).unwrap();
                assert!(is_hilbert_point(&d));
                let view = ideal_from_triple(&d).unwrap();
                assert_eq!(&view.staircase, st);
                // monomial ideals have monomial Gröbner bases
                assert!(view.normal_forms.iter().flatten().all(Scalar::is_zero));
            }
        }
        assert_eq!(staircases(4).len(), 5);
        assert!(triple_from_staircase(&[(0, 0), (0, 2)], Q).is_err());
        let zero = triple_from_staircase(&[(0, 0)], Q).unwrap();
        assert!(zero.x.is_zero() && zero.y.is_zero());
        let jordan = triple_from_staircase(&[(0, 0), (1, 0)], Q).unwrap();
        assert_eq!(jordan.x, m(&[&[0, 0], &[1, 0]]));
        assert!(jordan.y.is_zero());
    }

    #[test]
    fn ideal_is_gauge_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for st in staircases(4) {
            let d = triple_from_staircase(&st, Q).unwrap();
            let g = random_invertible(Q, 4, &mut rng);
            let moved = d.act(&g).unwrap();
            assert_eq!(ideal_from_triple(&moved).unwrap(), ideal_from_triple(&d).unwrap());
        }
    }

    #[test]
    fn spectrum_examples() {
        let sp = joint_spectrum(&m(&[&[1, 0], &[0, 2]]), &m(&[&[3, 0], &[0, 4]])).unwrap();
        assert_eq!(sp, vec![(s(1), s(3)), (s(2), s(4))]);
        let sp = joint_spectrum(&m(&[&[0, 1], &[0, 0]]), &Mat::zeros(Q, 2, 2)).unwrap();
        assert_eq!(sp, vec![(s(0), s(0)), (s(0), s(0))]);
        let rot = m(&[&[0, -1], &[1, 0]]);
        assert!(matches!(joint_spectrum(&rot, &Mat::identity(Q, 2)), Err(Error::NonSplit(_))));
    }

    #[test]
    fn trace_examples() {
        let t = power_traces(&m(&[&[1, 0], &[0, 2]]), &m(&[&[3, 0], &[0, 4]]), 2).unwrap();
        assert!(t.spectrum_checked);
        assert_eq!(t.table[&(1, 1)], s(11));
        let t = power_traces(&m(&[&[0, 1], &[0, 0]]), &Mat::zeros(Q, 2, 2), 3).unwrap();
        for (&k, v) in &t.table {
            assert_eq!(v, &s(if k == (0, 0) { 2 } else { 0 }));
        }
    }

    #[test]
    fn random_commuting_traces_match_spectrum() {
        // conjugate a pair of upper-triangular polynomials in one matrix
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let mut t = random_mat(Q, 3, 3, &mut rng);
            for r in 0..3 {
                for c in 0..r {
                    t.set(r, c, s(0));
                }
            }
            let y = t.mul(&t).unwrap().add(&t.scale(&s(2))).unwrap();
            let g = random_invertible(Q, 3, &mut rng);
            let gi = g.inverse().unwrap().unwrap();
            let cx = g.mul(&t).unwrap().mul(&gi).unwrap();
            let cy = g.mul(&y).unwrap().mul(&gi).unwrap();
            assert!(power_traces(&cx, &cy, 4).unwrap().spectrum_checked);
        }
    }

    #[test]
    fn calogero_moser_examples() {
        let lam = rat(3, 1);
        let d = AdhmData::new(m(&[&[0]]), m(&[&[0]]), m(&[&[3]]), m(&[&[1]])).unwrap();
        let rep = calogero_moser_check(&d, &lam).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.expected_dim, 2);
        let bad = AdhmData::new(m(&[&[0]]), m(&[&[0]]), m(&[&[0]]), m(&[&[1]])).unwrap();
        assert!(calogero_moser_check(&bad, &lam).is_err());

        // x regular nilpotent, i = e₂; [x, y] = Id − i j is solved by y = e₂e₁ᵀ, j = (0, 2)
        let x = m(&[&[0, 1], &[0, 0]]);
        let y = m(&[&[0, 0], &[1, 0]]);
        let d = AdhmData::new(x, y, m(&[&[0], &[1]]), m(&[&[0, 2]])).unwrap();
        let res = d.commutator().add(&d.i.mul(&d.j).unwrap()).unwrap();
        assert_eq!(res, Mat::identity(Q, 2));
        let rep = calogero_moser_check(&d, &rat(1, 1)).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.expected_dim, 4);
        assert!(calogero_moser_check(&d, &rat(0, 1)).is_err());
    }

    #[test]
    fn stable_hilbert_points_have_zero_j() {
        // every F₂ quadruple at n = 2 with [x,y] + ij = 0 and i cyclic has j = 0
        let f = FieldSpec::Prime { p: 2 };
        let mut count = 0;
        for code in 0u32..(1 << 12) {
            let bit = |k: u32| Scalar::Mod { value: ((code >> k) & 1) as u64, p: 2 };
            let x = Mat::from_fn(f, 2, 2, |r, c| bit((r * 2 + c) as u32));
            let y = Mat::from_fn(f, 2, 2, |r, c| bit(4 + (r * 2 + c) as u32));
            let i = Mat::from_fn(f, 2, 1, |r, _| bit(8 + r as u32));
            let j = Mat::from_fn(f, 1, 2, |_, c| bit(10 + c as u32));
            let d = AdhmData::new(x, y, i, j).unwrap();
            let fr = d.to_framed();
            if moment_residual(&fr, &[rat(0, 1)]).unwrap()[0].is_zero() && is_stable_minus(&fr) {
                assert!(j_kills_spin(&d));
                assert!(d.j.is_zero());
                count += 1;
            }
        }
        assert!(count > 0);
    }

    #[test]
    fn json_round_trip() {
        let d = nilpotent(&[0, 1]);
        assert_eq!(AdhmData::from_json(&d.to_json()).unwrap(), d);
    }
}
