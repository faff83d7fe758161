//! Concrete quiver representations over exact fields.
//!
//! A [`Rep`] assigns a matrix to every edge (rows = dimension at the head,
//! columns = dimension at the tail). A [`FramedRep`] lives on a tagged double
//! quiver and carries the framing maps `i_k : W_k → V_k` and `j_k : V_k → W_k`.
//!
//! Stability at `θ = ±θ⁺` reduces to fixed-point computations on graded
//! subspaces ([`min_closure`], [`max_core`]). General `θ` is only available
//! over prime fields, by enumerating every graded subspace
//! ([`semistable_bruteforce`]). The subspace criterion is applied to any
//! quadruple; it characterizes stability on the moment-map fiber.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{invalid, shape, Error, Result};
use crate::exactalg::{FieldSpec, Mat, Scalar};
use crate::quiver::{dot, DimVector, Quiver};

/// Default cap on the number of graded subspaces the enumerator visits.
pub const DEFAULT_SUBSPACE_LIMIT: u128 = 1_000_000;

/// A representation: one matrix per edge of `quiver`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    quiver: Quiver,
    v: DimVector,
    field: FieldSpec,
    mats: Vec<Mat>,
}

impl Rep {
    pub fn new(quiver: Quiver, v: DimVector, field: FieldSpec, mats: Vec<Mat>) -> Result<Rep> {
        quiver.check_dim(&v)?;
        field.validate()?;
        if mats.len() != quiver.edges().len() {
            return Err(shape(format!("{} matrices for {} edges", mats.len(), quiver.edges().len())));
        }
        for (e, m) in quiver.edges().iter().zip(&mats) {
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
            let (r, c) = (v[e.head] as usize, v[e.tail] as usize);
            if m.rows() != r || m.cols() != c {
                return Err(shape(format!(
                    "edge {} needs a {r}x{c} matrix, got {}x{}",
                    e.name,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Rep { quiver, v, field, mats })
    }

    pub fn zero(quiver: Quiver, v: DimVector, field: FieldSpec) -> Result<Rep> {
        quiver.check_dim(&v)?;
        let mats = quiver
            .edges()
            .iter()
            .map(|e| Mat::zeros(field, v[e.head] as usize, v[e.tail] as usize))
            .collect();
        Rep::new(quiver, v, field, mats)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn v(&self) -> &DimVector {
        &self.v
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn mat(&self, edge: usize) -> &Mat {
        &self.mats[edge]
    }

    pub fn mat_by_name(&self, name: &str) -> Option<&Mat> {
        self.quiver.edge_index(name).map(|e| &self.mats[e])
    }

    pub fn dim(&self, vertex: usize) -> usize {
        self.v[vertex] as usize
    }

    /// `x_a ↦ g_head · x_a · g_tail⁻¹`.
    pub fn conjugate(&self, g: &[Mat]) -> Result<Rep> {
        let inv = invert_all(g, &self.v)?;
        let mats = self
            .quiver
            .edges()
            .iter()
            .zip(&self.mats)
            .map(|(e, m)| g[e.head].mul(m)?.mul(&inv[e.tail]))
            .collect::<Result<_>>()?;
        Rep::new(self.quiver.clone(), self.v.clone(), self.field, mats)
    }

    /// The operator `x_{e_k} ⋯ x_{e_1}` of a path `e_1, …, e_k`.
    pub fn cycle_operator(&self, cycle: &[usize]) -> Result<Mat> {
        if !self.quiver.is_cycle(cycle) {
            return Err(invalid(format!("{cycle:?} is not a cycle")));
        }
        let start = self.quiver.edges()[cycle[0]].tail;
        let mut acc = Mat::identity(self.field, self.dim(start));
        for &e in cycle {
            acc = self.mats[e].mul(&acc)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        let mats: BTreeMap<String, Value> = self
            .quiver
            .edges()
            .iter()
            .zip(&self.mats)
            .map(|(e, m)| (e.name.clone(), m.to_json()))
            .collect();
        json!({
            "field": self.field,
            "v": self.v.to_json(&self.quiver),
            "mats": mats,
        })
    }

    /// Reads `{"field", "v", "mats": {edge: rows}}`; missing edges are zero.
    pub fn from_json(quiver: &Quiver, value: &Value) -> Result<Rep> {
        let field = read_field(value)?;
        let v = DimVector::from_json(quiver, value.get("v").ok_or_else(|| missing("v"))?)?;
        quiver.check_dim(&v)?;
        let empty = serde_json::Map::new();
        let given = match value.get("mats") {
            None => &empty,
            Some(m) => m.as_object().ok_or_else(|| Error::Parse("mats must be an object".into()))?,
        };
        for name in given.keys() {
            if quiver.edge_index(name).is_none() {
                return Err(Error::Parse(format!("unknown edge {name}")));
            }
        }
        let mats = quiver
            .edges()
            .iter()
            .map(|e| {
                let (r, c) = (v[e.head] as usize, v[e.tail] as usize);
                match given.get(&e.name) {
                    Some(m) => Mat::from_json(field, r, c, m),
                    None => Ok(Mat::zeros(field, r, c)),
                }
            })
            .collect::<Result<_>>()?;
        Rep::new(quiver.clone(), v, field, mats)
    }
}

fn missing(key: &str) -> Error {
    Error::Parse(format!("missing key {key}"))
}

fn read_field(value: &Value) -> Result<FieldSpec> {
    match value.get("field") {
        None => Ok(FieldSpec::Rational),
        Some(f) => {
            let f: FieldSpec =
                serde_json::from_value(f.clone()).map_err(|e| Error::Parse(format!("field: {e}")))?;
            f.validate()?;
            Ok(f)
        }
    }
}

fn invert_all(g: &[Mat], v: &DimVector) -> Result<Vec<Mat>> {
    if g.len() != v.len() {
        return Err(shape("one matrix per vertex is required"));
    }
    g.iter()
        .enumerate()
        .map(|(k, m)| {
            if m.rows() != v[k] as usize || !m.is_square() {
                return Err(shape(format!("g at vertex {k} must be {0}x{0}", v[k])));
            }
            m.inverse()?.ok_or_else(|| invalid(format!("g at vertex {k} is singular")))
        })
        .collect()
}

/// Star pairs `(x, x*)` of a double quiver, or an error if the quiver does
/// not record them.
pub fn star_pairs(q: &Quiver) -> Result<&[(usize, usize)]> {
    match q.provenance() {
        Some(p) if 2 * p.star_pairs.len() == q.edges().len() && p.framing_edges.is_empty() => {
            Ok(&p.star_pairs)
        }
        _ => Err(invalid("expected a double quiver with recorded star pairs")),
    }
}

/// A point `(x, y, i, j)` of `Rep(Q̄♥, v, w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedRep {
    rep: Rep,
    w: DimVector,
    i: Vec<Mat>,
    j: Vec<Mat>,
}

impl FramedRep {
    pub fn new(rep: Rep, w: DimVector, i: Vec<Mat>, j: Vec<Mat>) -> Result<FramedRep> {
        star_pairs(rep.quiver())?;
        rep.quiver().check_dim(&w)?;
        let n = rep.quiver().num_vertices();
        if i.len() != n || j.len() != n {
            return Err(shape("i and j need one matrix per vertex"));
        }
        for k in 0..n {
            let (vk, wk) = (rep.dim(k), w[k] as usize);
            if i[k].rows() != vk || i[k].cols() != wk {
                return Err(shape(format!("i at vertex {k} must be {vk}x{wk}")));
            }
            if j[k].rows() != wk || j[k].cols() != vk {
                return Err(shape(format!("j at vertex {k} must be {wk}x{vk}")));
            }
            for m in [&i[k], &j[k]] {
                if m.field() != rep.field() {
                    return Err(Error::FieldMismatch(rep.field(), m.field()));
                }
            }
        }
        Ok(FramedRep { rep, w, i, j })
    }

    /// Framing dimension zero.
    pub fn unframed(rep: Rep) -> Result<FramedRep> {
        let n = rep.quiver().num_vertices();
        let f = rep.field();
        let i = (0..n).map(|k| Mat::zeros(f, rep.dim(k), 0)).collect();
        let j = (0..n).map(|k| Mat::zeros(f, 0, rep.dim(k))).collect();
        FramedRep::new(rep, DimVector::zero(n), i, j)
    }

    /// The zero quadruple on the double of `base`.
    pub fn zero(base: &Quiver, v: DimVector, w: DimVector, field: FieldSpec) -> Result<FramedRep> {
        let rep = Rep::zero(double_of(base), v, field)?;
        let n = base.num_vertices();
        base.check_dim(&w)?;
        let i = (0..n).map(|k| Mat::zeros(field, rep.dim(k), w[k] as usize)).collect();
        let j = (0..n).map(|k| Mat::zeros(field, w[k] as usize, rep.dim(k))).collect();
        FramedRep::new(rep, w, i, j)
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn quiver(&self) -> &Quiver {
        self.rep.quiver()
    }

    pub fn field(&self) -> FieldSpec {
        self.rep.field()
    }

    pub fn v(&self) -> &DimVector {
        self.rep.v()
    }

    pub fn w(&self) -> &DimVector {
        &self.w
    }

    pub fn i(&self) -> &[Mat] {
        &self.i
    }

    pub fn j(&self) -> &[Mat] {
        &self.j
    }

    /// `x ↦ g x g⁻¹`, `i ↦ g i`, `j ↦ j g⁻¹`.
    pub fn conjugate(&self, g: &[Mat]) -> Result<FramedRep> {
        let rep = self.rep.conjugate(g)?;
        let inv = invert_all(g, self.v())?;
        let i = g.iter().zip(&self.i).map(|(g, i)| g.mul(i)).collect::<Result<_>>()?;
        let j = self.j.iter().zip(&inv).map(|(j, gi)| j.mul(gi)).collect::<Result<_>>()?;
        FramedRep::new(rep, self.w.clone(), i, j)
    }

    /// `Ker j` as a graded subspace.
    pub fn kernel_of_j(&self) -> GradedSubspace {
        GradedSubspace::from_spans(self.j.iter().map(Mat::kernel_basis).collect())
    }

    /// `Im i` as a graded subspace.
    pub fn image_of_i(&self) -> GradedSubspace {
        GradedSubspace::from_spans(self.i.clone())
    }

    pub fn to_json(&self) -> Value {
        let q = self.quiver();
        let per_vertex = |ms: &[Mat]| -> BTreeMap<String, Value> {
            q.vertices().iter().cloned().zip(ms.iter().map(Mat::to_json)).collect()
        };
        let mut out = self.rep.to_json();
        out["w"] = self.w.to_json(q);
        out["i"] = serde_json::to_value(per_vertex(&self.i)).unwrap();
        out["j"] = serde_json::to_value(per_vertex(&self.j)).unwrap();
        out
    }

    /// Reads the representation JSON; `quiver` may be the base quiver (it is
    /// doubled) or an already tagged double. `w`, `i`, `j` default to zero.
    pub fn from_json(quiver: &Quiver, value: &Value) -> Result<FramedRep> {
        let q = double_of(quiver);
        let rep = Rep::from_json(&q, value)?;
        let field = rep.field();
        let w = match value.get("w") {
            Some(w) => DimVector::from_json(&q, w)?,
            None => DimVector::zero(q.num_vertices()),
        };
        let read = |key: &str, rows: &dyn Fn(usize) -> usize, cols: &dyn Fn(usize) -> usize| -> Result<Vec<Mat>> {
            let given = value.get(key).and_then(Value::as_object);
            if let Some(g) = given {
                for k in g.keys() {
                    if q.vertex_index(k).is_none() {
                        return Err(Error::Parse(format!("unknown vertex {k} in {key}")));
                    }
                }
            }
            q.vertices()
                .iter()
                .enumerate()
                .map(|(k, label)| match given.and_then(|g| g.get(label)) {
                    Some(m) => Mat::from_json(field, rows(k), cols(k), m),
                    None => Ok(Mat::zeros(field, rows(k), cols(k))),
                })
                .collect()
        };
        let vd = |k: usize| rep.dim(k);
        let wd = |k: usize| w[k] as usize;
        let i = read("i", &vd, &wd)?;
        let j = read("j", &wd, &vd)?;
        FramedRep::new(rep, w, i, j)
    }
}

/// `q` itself if it is a tagged double, otherwise its double.
pub fn double_of(q: &Quiver) -> Quiver {
    if star_pairs(q).is_ok() {
        q.clone()
    } else {
        q.double()
    }
}

/// Per-vertex residual of the moment map:
/// `Σ_{head a = k} x_a y_a − Σ_{tail a = k} y_a x_a + i_k j_k − λ_k Id`.
pub fn moment_residual(r: &FramedRep, lambda: &[BigRational]) -> Result<Vec<Mat>> {
    let q = r.quiver();
    let n = q.num_vertices();
    if lambda.len() != n {
        return Err(shape(format!("lambda has {} entries for {n} vertices", lambda.len())));
    }
    let f = r.field();
    let mut res: Vec<Mat> = (0..n).map(|k| r.i[k].mul(&r.j[k])).collect::<Result<_>>()?;
    for &(a, star) in star_pairs(q)? {
        let e = &q.edges()[a];
        let (x, y) = (r.rep.mat(a), r.rep.mat(star));
        res[e.head] = res[e.head].add(&x.mul(y)?)?;
        res[e.tail] = res[e.tail].sub(&y.mul(x)?)?;
    }
    for (k, m) in res.iter_mut().enumerate() {
        let l = Scalar::from_rational(f, &lambda[k])?;
        *m = m.sub(&Mat::identity(f, r.rep.dim(k)).scale(&l))?;
    }
    Ok(res)
}

/// Whether an unframed representation of a double satisfies the
/// preprojective relations at `λ`.
pub fn preprojective_check(r: &Rep, lambda: &[BigRational]) -> Result<bool> {
    let fr = FramedRep::unframed(r.clone())?;
    Ok(moment_residual(&fr, lambda)?.iter().all(Mat::is_zero))
}

/// `Some(λ·v)` when `λ·v ≠ 0`: then no unframed representation of
/// dimension `v` satisfies the relations, since the residual traces sum to
/// `−λ·v`.
pub fn unframed_fiber_obstruction(lambda: &[BigRational], v: &DimVector) -> Option<BigRational> {
    let lv: BigRational = lambda.iter().zip(v.as_slice()).map(|(l, &x)| l * BigInt::from(x)).sum();
    (!lv.is_zero()).then_some(lv)
}

pub fn trace_of_cycle(r: &Rep, cycle: &[usize]) -> Result<Scalar> {
    r.cycle_operator(cycle)?.trace()
}

/// Traces of all cycles up to `maxlen`, in the quiver's canonical cycle order.
pub fn trace_signature(r: &Rep, maxlen: usize) -> Vec<(String, Scalar)> {
    r.quiver
        .cycles(maxlen)
        .into_iter()
        .map(|c| {
            let t = trace_of_cycle(r, &c).expect("enumerated cycles are valid");
            (r.quiver.cycle_name(&c), t)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Probe {
    /// Some cycle trace differs; conclusive.
    Distinguished { cycle: String, left: String, right: String },
    /// All cycle traces up to `maxlen` agree; bounded evidence only.
    Indistinguishable { maxlen: usize },
}

pub fn s_equivalence_probe(r1: &Rep, r2: &Rep, maxlen: usize) -> Result<Probe> {
    if r1.quiver != r2.quiver || r1.v != r2.v {
        return Err(invalid("representations must share quiver and dimension vector"));
    }
    for c in r1.quiver.cycles(maxlen) {
        let (a, b) = (trace_of_cycle(r1, &c)?, trace_of_cycle(r2, &c)?);
        if a != b {
            return Ok(Probe::Distinguished {
                cycle: r1.quiver.cycle_name(&c),
                left: a.to_string(),
                right: b.to_string(),
            });
        }
    }
    Ok(Probe::Indistinguishable { maxlen })
}

/// A graded subspace `S = (S_k)`, each stored as the canonical
/// column-reduced basis of `S_k ⊂ V_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedSubspace {
    bases: Vec<Mat>,
}

fn canonical(m: &Mat) -> Mat {
    m.image_basis()
}

fn span_sum(a: &Mat, b: &Mat) -> Mat {
    canonical(&a.hstack(b).expect("same ambient space"))
}

fn intersect(a: &Mat, b: &Mat) -> Mat {
    let k = a.hstack(&b.neg()).expect("same ambient space").kernel_basis();
    let top: Vec<usize> = (0..a.cols()).collect();
    canonical(&a.mul(&k.select_rows(&top)).unwrap())
}

/// Rows spanning the linear forms that vanish on the column span of `s`.
fn annihilator(s: &Mat) -> Mat {
    s.transpose().kernel_basis().transpose()
}

/// `{u : a u ∈ span(s)}`.
fn preimage(a: &Mat, s: &Mat) -> Mat {
    canonical(&annihilator(s).mul(a).unwrap().kernel_basis())
}

impl GradedSubspace {
    /// Canonicalizes arbitrary spanning sets.
    pub fn from_spans(spans: Vec<Mat>) -> GradedSubspace {
        GradedSubspace { bases: spans.iter().map(canonical).collect() }
    }

    pub fn zero(field: FieldSpec, v: &DimVector) -> GradedSubspace {
        GradedSubspace { bases: v.dims().into_iter().map(|d| Mat::zeros(field, d, 0)).collect() }
    }

    pub fn full(field: FieldSpec, v: &DimVector) -> GradedSubspace {
        GradedSubspace { bases: v.dims().into_iter().map(|d| Mat::identity(field, d)).collect() }
    }

    pub fn basis(&self, k: usize) -> &Mat {
        &self.bases[k]
    }

    pub fn dims(&self) -> Vec<i64> {
        self.bases.iter().map(|b| b.cols() as i64).collect()
    }

    pub fn total_dim(&self) -> i64 {
        self.dims().iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.bases.iter().all(|b| b.cols() == 0)
    }

    pub fn is_full(&self) -> bool {
        self.bases.iter().all(|b| b.cols() == b.rows())
    }

    pub fn contains(&self, other: &GradedSubspace) -> bool {
        self.bases.iter().zip(&other.bases).all(|(a, b)| span_sum(a, b).cols() == a.cols())
    }

    pub fn sum(&self, other: &GradedSubspace) -> GradedSubspace {
        GradedSubspace { bases: self.bases.iter().zip(&other.bases).map(|(a, b)| span_sum(a, b)).collect() }
    }

    pub fn intersection(&self, other: &GradedSubspace) -> GradedSubspace {
        GradedSubspace { bases: self.bases.iter().zip(&other.bases).map(|(a, b)| intersect(a, b)).collect() }
    }

    /// Whether every edge map sends `S_tail` into `S_head`.
    pub fn is_invariant(&self, r: &Rep) -> bool {
        r.quiver.edges().iter().zip(&r.mats).all(|(e, x)| {
            let image = x.mul(&self.bases[e.tail]).unwrap();
            annihilator(&self.bases[e.head]).mul(&image).unwrap().is_zero()
        })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.bases.iter().map(|b| b.transpose().to_json()).collect())
    }
}

fn check_ambient(r: &Rep, s: &GradedSubspace) -> Result<()> {
    let ok = s.bases.len() == r.quiver.num_vertices()
        && s.bases.iter().enumerate().all(|(k, b)| b.rows() == r.dim(k) && b.field() == r.field);
    if ok {
        Ok(())
    } else {
        Err(shape("graded subspace does not live in this representation"))
    }
}

/// Smallest invariant graded subspace containing `seed`.
pub fn min_closure(r: &Rep, seed: &GradedSubspace) -> Result<GradedSubspace> {
    check_ambient(r, seed)?;
    let mut s = seed.clone();
    loop {
        let mut next = s.bases.clone();
        for (e, x) in r.quiver.edges().iter().zip(&r.mats) {
            let image = x.mul(&s.bases[e.tail])?;
            next[e.head] = span_sum(&next[e.head], &image);
        }
        let next = GradedSubspace { bases: next };
        if next.dims() == s.dims() {
            return Ok(s);
        }
        s = next;
    }
}

/// Largest invariant graded subspace contained in `bound`.
pub fn max_core(r: &Rep, bound: &GradedSubspace) -> Result<GradedSubspace> {
    check_ambient(r, bound)?;
    let mut s = bound.clone();
    loop {
        let mut next = s.bases.clone();
        for (e, x) in r.quiver.edges().iter().zip(&r.mats) {
            next[e.tail] = intersect(&next[e.tail], &preimage(x, &s.bases[e.head]));
        }
        let next = GradedSubspace { bases: next };
        if next.dims() == s.dims() {
            return Ok(s);
        }
        s = next;
    }
}

/// `θ⁺`-stability: no nonzero invariant subspace inside `Ker j`.
pub fn is_stable_plus(r: &FramedRep) -> bool {
    max_core(&r.rep, &r.kernel_of_j()).unwrap().is_zero()
}

/// `−θ⁺`-stability: `Im i` generates the whole space.
pub fn is_stable_minus(r: &FramedRep) -> bool {
    min_closure(&r.rep, &r.image_of_i()).unwrap().is_full()
}

/// `θ·d / Σ d_k`.
pub fn slope(theta: &[i64], d: &DimVector) -> Result<BigRational> {
    if theta.len() != d.len() {
        return Err(shape("theta and dimension vector differ in length"));
    }
    if d.is_zero() {
        return Err(invalid("slope of the zero dimension vector is undefined"));
    }
    Ok(BigRational::new(dot(theta, d.as_slice()).into(), d.total().into()))
}

/// Number of `k`-dimensional subspaces of `F_p^n`.
pub fn gaussian_binomial(n: u32, k: u32, p: u64) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for t in 0..k {
        num = num.saturating_mul(p.saturating_pow(n - t).saturating_sub(1));
        den = den.saturating_mul(p.saturating_pow(t + 1) - 1);
    }
    if num == u128::MAX {
        u128::MAX
    } else {
        num / den
    }
}

pub fn subspace_count(n: u32, p: u64) -> u128 {
    (0..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(n, k, p)))
}

struct Subspace {
    basis: Mat,
    ann: Mat,
}

type SubspaceCache = Mutex<HashMap<(u64, usize), Arc<Vec<Subspace>>>>;

/// Every subspace of `F_p^n`, by dimension, enumerated through reduced
/// row-echelon forms.
fn all_subspaces(p: u64, n: usize) -> Arc<Vec<Subspace>> {
    static CACHE: OnceLock<SubspaceCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(p, n)) {
        return hit.clone();
    }
    let f = FieldSpec::Prime { p };
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let total = (p as u128).pow(free.len() as u32);
            for code in 0..total {
                let mut rows = Mat::zeros(f, k, n);
                for (r, &c) in pivots.iter().enumerate() {
                    rows.set(r, c, Scalar::one(f));
                }
                let mut c = code;
                for &(r, col) in &free {
                    rows.set(r, col, Scalar::Mod { value: (c % p as u128) as u64, p });
                    c /= p as u128;
                }
                let basis = canonical(&rows.transpose());
                let ann = annihilator(&basis);
                out.push(Subspace { basis, ann });
            }
        }
    }
    let out = Arc::new(out);
    cache.lock().unwrap().insert((p, n), out.clone());
    out
}

/// Canonical bases of every subspace of `F_p^n`, ordered by dimension.
pub fn subspaces(p: u64, n: usize) -> Vec<Mat> {
    all_subspaces(p, n).iter().map(|s| s.basis.clone()).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn enumeration_size(r: &Rep, limit: u128) -> Result<u64> {
    let p = match r.field {
        FieldSpec::Prime { p } => p,
        other => return Err(Error::Unsupported(format!("subspace enumeration over {other}"))),
    };
    let needed = r
        .v
        .dims()
        .iter()
        .fold(1u128, |acc, &d| acc.saturating_mul(subspace_count(d as u32, p)));
    if needed > limit {
        return Err(Error::LimitExceeded { needed, limit });
    }
    Ok(p)
}

/// All graded subspaces invariant under every edge map, over a prime field.
/// Candidates are assigned vertex by vertex; an edge is checked as soon as
/// both of its endpoints are assigned.
pub fn invariant_subspaces_bruteforce(r: &Rep, limit: u128) -> Result<Vec<GradedSubspace>> {
    invariant_subspaces_filtered(r, limit, |_| true)
}

fn invariant_subspaces_filtered(
    r: &Rep,
    limit: u128,
    keep: impl Fn(&[&Subspace]) -> bool + Sync,
) -> Result<Vec<GradedSubspace>> {
    let p = enumeration_size(r, limit)?;
    let n = r.quiver.num_vertices();
    if n == 0 {
        return Ok(vec![GradedSubspace { bases: vec![] }]);
    }
    let lists: Vec<Arc<Vec<Subspace>>> = (0..n).map(|k| all_subspaces(p, r.dim(k))).collect();
    // edges checked once their later endpoint is assigned
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, e) in r.quiver.edges().iter().enumerate() {
        due[e.tail.max(e.head)].push(a);
    }
    let ok_at = |k: usize, chosen: &[&Subspace]| -> bool {
        due[k].iter().all(|&a| {
            let e = &r.quiver.edges()[a];
            let image = r.mats[a].mul(&chosen[e.tail].basis).unwrap();
            chosen[e.head].ann.mul(&image).unwrap().is_zero()
        })
    };
    let branches: Vec<Vec<GradedSubspace>> = lists[0]
        .par_iter()
        .map(|first| {
            let mut found = Vec::new();
            let mut chosen: Vec<&Subspace> = vec![first];
            if ok_at(0, &chosen) {
                extend(1, &lists, &mut chosen, &ok_at, &keep, &mut found);
            }
            found
        })
        .collect();
    Ok(branches.into_iter().flatten().collect())
}

fn extend<'a>(
    k: usize,
    lists: &'a [Arc<Vec<Subspace>>],
    chosen: &mut Vec<&'a Subspace>,
    ok_at: &dyn Fn(usize, &[&Subspace]) -> bool,
    keep: &dyn Fn(&[&Subspace]) -> bool,
    found: &mut Vec<GradedSubspace>,
) {
    if k == lists.len() {
        if keep(chosen) {
            found.push(GradedSubspace { bases: chosen.iter().map(|s| s.basis.clone()).collect() });
        }
        return;
    }
    for s in lists[k].iter() {
        chosen.push(s);
        if ok_at(k, chosen) {
            extend(k + 1, lists, chosen, ok_at, keep, found);
        }
        chosen.pop();
    }
}

impl FramedRep {
    /// Invariant graded subspaces of `(x, y)`; with `include_framing_constraints`
    /// only those entering the stability conditions are kept, namely subspaces
    /// inside `Ker j` or containing `Im i`.
    pub fn invariant_subspaces(&self, include_framing_constraints: bool, limit: u128) -> Result<Vec<GradedSubspace>> {
        if !include_framing_constraints {
            return invariant_subspaces_bruteforce(&self.rep, limit);
        }
        let ker = self.kernel_of_j();
        let im = self.image_of_i();
        invariant_subspaces_filtered(&self.rep, limit, |chosen| {
            let s = GradedSubspace { bases: chosen.iter().map(|c| c.basis.clone()).collect() };
            ker.contains(&s) || s.contains(&im)
        })
    }
}

/// Which stability condition a witness subspace violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `S ⊂ Ker j` with `θ·dim S` too large.
    InsideKernel,
    /// `S ⊃ Im i` with `θ·dim S` too large compared with `θ·dim V`.
    ContainsImage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub subspace: GradedSubspace,
    pub condition: Condition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub semistable: bool,
    pub stable: bool,
    /// Violates semistability if not semistable, otherwise stability.
    pub witness: Option<Witness>,
}

/// Checks, over every invariant `S`:
/// `S ⊂ Ker j ⇒ θ·dim S ≤ 0` and `S ⊃ Im i ⇒ θ·dim S ≤ θ·dim V`,
/// with strict inequalities for `S ∉ {0, V}` in the stable case.
pub fn semistable_bruteforce(r: &FramedRep, theta: &[i64], limit: u128) -> Result<StabilityVerdict> {
    if theta.len() != r.quiver().num_vertices() {
        return Err(shape("theta length does not match the quiver"));
    }
    let ker = r.kernel_of_j();
    let im = r.image_of_i();
    let tv = dot(theta, r.v().as_slice());
    let mut semistable = true;
    let mut stable = true;
    let mut bad_semi = None;
    let mut bad_stable = None;
    for s in r.invariant_subspaces(true, limit)? {
        let ts = dot(theta, &s.dims());
        let proper = !s.is_zero() && !s.is_full();
        let checks = [(ker.contains(&s), ts, 0, Condition::InsideKernel), (s.contains(&im), ts, tv, Condition::ContainsImage)];
        for (applies, lhs, rhs, condition) in checks {
            if !applies {
                continue;
            }
            if lhs > rhs {
                semistable = false;
                bad_semi.get_or_insert(Witness { subspace: s.clone(), condition });
            }
            if lhs > rhs || (proper && lhs == rhs) {
                stable = false;
                bad_stable.get_or_insert(Witness { subspace: s.clone(), condition });
            }
        }
    }
    let witness = if semistable { bad_stable } else { bad_semi };
    Ok(StabilityVerdict { semistable, stable, witness })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoSpace {
    pub dim: usize,
    /// Each basis element as one matrix per vertex.
    pub basis: Vec<Vec<Mat>>,
}

struct LinearSystem {
    field: FieldSpec,
    offsets: Vec<usize>,
    dims: Vec<usize>,
    unknowns: usize,
    rows: Vec<Vec<Scalar>>,
}

impl LinearSystem {
    fn new(field: FieldSpec, dims: Vec<usize>) -> LinearSystem {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0;
        for &d in &dims {
            offsets.push(total);
            total += d * d;
        }
        LinearSystem { field, offsets, dims, unknowns: total, rows: Vec::new() }
    }

    fn var(&self, k: usize, r: usize, c: usize) -> usize {
        self.offsets[k] + r * self.dims[k] + c
    }

    fn blank(&self) -> Vec<Scalar> {
        vec![Scalar::zero(self.field); self.unknowns]
    }

    /// Equations `g_h x − x g_t = 0` for `x : V_t → V_h`.
    fn intertwine(&mut self, x: &Mat, t: usize, h: usize) {
        for r in 0..x.rows() {
            for c in 0..x.cols() {
                let mut row = self.blank();
                for k in 0..self.dims[h] {
                    let idx = self.var(h, r, k);
                    row[idx] = &row[idx] + x.get(k, c);
                }
                for k in 0..self.dims[t] {
                    let idx = self.var(t, k, c);
                    row[idx] = &row[idx] - x.get(r, k);
                }
                self.rows.push(row);
            }
        }
    }

    /// `g_k · i = 0` for `i : W → V_k`.
    fn kill_left(&mut self, i: &Mat, k: usize) {
        for r in 0..i.rows() {
            for c in 0..i.cols() {
                let mut row = self.blank();
                for m in 0..self.dims[k] {
                    row[self.var(k, r, m)] = i.get(m, c).clone();
                }
                self.rows.push(row);
            }
        }
    }

    /// `j · g_k = 0` for `j : V_k → W`.
    fn kill_right(&mut self, j: &Mat, k: usize) {
        for r in 0..j.rows() {
            for c in 0..j.cols() {
                let mut row = self.blank();
                for m in 0..self.dims[k] {
                    row[self.var(k, m, c)] = j.get(r, m).clone();
                }
                self.rows.push(row);
            }
        }
    }

    fn solve(self) -> EndoSpace {
        let m = if self.rows.is_empty() {
            Mat::zeros(self.field, 0, self.unknowns)
        } else {
            Mat::from_rows(self.field, self.rows.clone()).unwrap()
        };
        let k = m.kernel_basis();
        let basis = (0..k.cols())
            .map(|col| {
                (0..self.dims.len())
                    .map(|v| {
                        let d = self.dims[v];
                        Mat::from_fn(self.field, d, d, |r, c| k.get(self.var(v, r, c), col).clone())
                    })
                    .collect()
            })
            .collect();
        EndoSpace { dim: k.cols(), basis }
    }
}

/// Solutions of `g_head x_a = x_a g_tail` for every edge.
pub fn endomorphism_space(r: &Rep) -> EndoSpace {
    let mut sys = LinearSystem::new(r.field, r.v.dims());
    for (e, x) in r.quiver.edges().iter().zip(&r.mats) {
        sys.intertwine(x, e.tail, e.head);
    }
    sys.solve()
}

/// Homogeneous stabilizer system of a framed point: intertwiners with
/// additionally `g i = 0` and `j g = 0`.
pub fn framed_endomorphism_space(r: &FramedRep) -> EndoSpace {
    let mut sys = LinearSystem::new(r.field(), r.v().dims());
    for (e, x) in r.quiver().edges().iter().zip(r.rep.mats()) {
        sys.intertwine(x, e.tail, e.head);
    }
    for k in 0..r.i.len() {
        sys.kill_left(&r.i[k], k);
        sys.kill_right(&r.j[k], k);
    }
    sys.solve()
}

/// Uniform residue over `F_p`; a small integer in `[-3, 3]` over the
/// rationals; small integer coordinates in the power basis otherwise.
pub fn random_scalar<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R) -> Scalar {
    match field {
        FieldSpec::Prime { p } => Scalar::Mod { value: rng.gen_range(0..p), p },
        FieldSpec::Rational => Scalar::from_i64(field, rng.gen_range(-3..=3)),
        FieldSpec::Cyclotomic { m } => {
            let phi = crate::exactalg::cyclotomic::totient(m) as usize;
            let coeffs = (0..phi).map(|_| BigRational::from_integer(rng.gen_range(-2..=2).into())).collect();
            Scalar::cyclotomic(m, coeffs).unwrap()
        }
    }
}

pub fn random_mat<R: Rng + ?Sized>(field: FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Mat {
    Mat::from_fn(field, rows, cols, |_, _| random_scalar(field, rng))
}

pub fn random_invertible<R: Rng + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Mat {
    loop {
        let m = random_mat(field, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn random_rep<R: Rng + ?Sized>(q: &Quiver, v: &DimVector, field: FieldSpec, rng: &mut R) -> Result<Rep> {
    q.check_dim(v)?;
    let mats = q
        .edges()
        .iter()
        .map(|e| random_mat(field, v[e.head] as usize, v[e.tail] as usize, rng))
        .collect();
    Rep::new(q.clone(), v.clone(), field, mats)
}

/// A random quadruple on the double of `base` (or on `base` if it is
/// already a tagged double).
pub fn random_framed<R: Rng + ?Sized>(
    base: &Quiver,
    v: &DimVector,
    w: &DimVector,
    field: FieldSpec,
    rng: &mut R,
) -> Result<FramedRep> {
    let rep = random_rep(&double_of(base), v, field, rng)?;
    base.check_dim(w)?;
    let n = base.num_vertices();
    let i = (0..n).map(|k| random_mat(field, v[k] as usize, w[k] as usize, rng)).collect();
    let j = (0..n).map(|k| random_mat(field, w[k] as usize, v[k] as usize, rng)).collect();
    FramedRep::new(rep, w.clone(), i, j)
}

/// Random invertible matrix at every vertex.
pub fn random_gauge<R: Rng + ?Sized>(field: FieldSpec, v: &DimVector, rng: &mut R) -> Vec<Mat> {
    v.dims().into_iter().map(|d| random_invertible(field, d, rng)).collect()
}
