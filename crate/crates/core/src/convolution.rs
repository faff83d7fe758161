//! Convolution of kernels on finite sets.
//!
//! A kernel `K : X₁ ⇝ X₂` is a matrix indexed by `(x₂, x₁)`; it acts on
//! functions by `(K f)(x₂) = Σ K(x₂, x₁) f(x₁)` and kernels compose by matrix
//! product. On top of that: correspondences, invariant subalgebras
//! `C[X×X]^G`, group algebras, Hecke algebras of `GL_n(F_q)` and a degree
//! check for graded kernel algebras.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{invalid, shape, Error, Result};
use crate::exactalg::{FieldSpec, Mat, Scalar};
use crate::reps::subspaces;

/// An ordered set of distinct labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSet {
    labels: Vec<String>,
}

impl FinSet {
    pub fn new(labels: Vec<String>) -> Result<FinSet> {
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(*l)) {
            return Err(invalid(format!("duplicate label {dup}")));
        }
        Ok(FinSet { labels })
    }

    /// `{0, 1, …, n−1}`.
    pub fn range(n: usize) -> FinSet {
        FinSet { labels: (0..n).map(|i| i.to_string()).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `self × other`, with `(a, b)` at index `a·|other| + b`.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("({a},{b})")))
            .collect();
        FinSet { labels }
    }
}

/// A kernel `X₁ ⇝ X₂`: entries indexed by `(x₂, x₁)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteKernel {
    source: FinSet,
    target: FinSet,
    entries: Mat,
}

impl FiniteKernel {
    pub fn new(source: FinSet, target: FinSet, entries: Mat) -> Result<FiniteKernel> {
        if entries.rows() != target.len() || entries.cols() != source.len() {
            return Err(shape(format!(
                "kernel {}x{} between sets of sizes {} and {}",
                entries.rows(),
                entries.cols(),
                target.len(),
                source.len()
            )));
        }
        Ok(FiniteKernel { source, target, entries })
    }

    pub fn identity(x: &FinSet, field: FieldSpec) -> FiniteKernel {
        FiniteKernel { source: x.clone(), target: x.clone(), entries: Mat::identity(field, x.len()) }
    }

    /// Indicator kernel of a correspondence.
    pub fn indicator(z: &Correspondence, field: FieldSpec) -> FiniteKernel {
        let entries = Mat::from_fn(field, z.target.len(), z.source.len(), |r, c| {
            Scalar::from_i64(field, z.rel[r][c] as i64)
        });
        FiniteKernel { source: z.source.clone(), target: z.target.clone(), entries }
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn entries(&self) -> &Mat {
        &self.entries
    }

    pub fn field(&self) -> FieldSpec {
        self.entries.field()
    }

    /// Pairs `(x₂, x₁)` with a nonzero entry.
    pub fn support(&self) -> Correspondence {
        let rel = (0..self.target.len())
            .map(|r| (0..self.source.len()).map(|c| !self.entries.get(r, c).is_zero()).collect())
            .collect();
        Correspondence { source: self.source.clone(), target: self.target.clone(), rel }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.labels,
            "target": self.target.labels,
            "field": self.field(),
            "entries": self.entries.to_json(),
        })
    }

    /// Reads `{"source", "target", "field", "entries"}`; the field defaults
    /// to the rationals.
    pub fn from_json(v: &Value) -> Result<FiniteKernel> {
        let labels = |key: &str| -> Result<FinSet> {
            let arr: Vec<Value> = v
                .get(key)
                .and_then(Value::as_array)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("missing list {key}")))?;
            FinSet::new(arr.iter().map(|x| x.as_str().map(String::from).unwrap_or_else(|| x.to_string())).collect())
        };
        let field = match v.get("field") {
            None => FieldSpec::Rational,
            Some(f) => serde_json::from_value(f.clone()).map_err(|e| Error::Parse(format!("field: {e}")))?,
        };
        field.validate()?;
        let (source, target) = (labels("source")?, labels("target")?);
        let entries = Mat::from_json(
            field,
            target.len(),
            source.len(),
            v.get("entries").ok_or_else(|| Error::Parse("missing entries".into()))?,
        )?;
        FiniteKernel::new(source, target, entries)
    }
}

fn column(f: &[Scalar], field: FieldSpec) -> Mat {
    Mat::from_fn(field, f.len(), 1, |r, _| f[r].clone())
}

/// `(K f)(x₂) = Σ_{x₁} K(x₂, x₁) f(x₁)`.
pub fn apply(k: &FiniteKernel, f: &[Scalar]) -> Result<Vec<Scalar>> {
    if f.len() != k.source.len() {
        return Err(shape(format!("function on {} points, kernel source has {}", f.len(), k.source.len())));
    }
    let out = k.entries.mul(&column(f, k.field()))?;
    Ok((0..out.rows()).map(|r| out.get(r, 0).clone()).collect())
}

/// Applies `K` to a function supported on `fiber ⊂ X`, restricting the
/// kernel to `fiber × fiber`.
pub fn apply_on_fiber(k: &FiniteKernel, fiber: &[usize], f: &[Scalar]) -> Result<Vec<Scalar>> {
    if k.source != k.target {
        return Err(invalid("fiber restriction needs a kernel on X × X"));
    }
    if fiber.iter().any(|&x| x >= k.source.len()) || f.len() != fiber.len() {
        return Err(shape("fiber indices or function length out of range"));
    }
    let restricted = k.entries.select_rows(fiber).select_columns(fiber);
    let out = restricted.mul(&column(f, k.field()))?;
    Ok((0..out.rows()).map(|r| out.get(r, 0).clone()).collect())
}

/// `(p_* f)(y) = Σ_{p(x) = y} f(x)` for `p : X → Y` given as indices.
pub fn pushforward(p: &[usize], y_len: usize, f: &[Scalar]) -> Result<Vec<Scalar>> {
    if p.len() != f.len() || p.iter().any(|&y| y >= y_len) {
        return Err(shape("map and function do not match"));
    }
    let field = f.first().map_or(FieldSpec::Rational, Scalar::field);
    let mut out = vec![Scalar::zero(field); y_len];
    for (x, &y) in p.iter().enumerate() {
        out[y] = &out[y] + &f[x];
    }
    Ok(out)
}

/// `(p^* g)(x) = g(p(x))`.
pub fn pullback(p: &[usize], g: &[Scalar]) -> Result<Vec<Scalar>> {
    p.iter().map(|&y| g.get(y).cloned().ok_or_else(|| shape("map leaves the target"))).collect()
}

/// `K₃₁ = K₃₂ ∗ K₂₁` as a matrix product, checked against
/// [`convolve_by_pullback`].
pub fn convolve(k32: &FiniteKernel, k21: &FiniteKernel) -> Result<FiniteKernel> {
    let fast = convolve_matrix(k32, k21)?;
    let slow = convolve_by_pullback(k32, k21)?;
    if fast != slow {
        return Err(Error::CheckFailed("matrix product and pullback formula disagree".into()));
    }
    Ok(fast)
}

/// Matrix-product convolution without the cross-check.
pub fn convolve_matrix(k32: &FiniteKernel, k21: &FiniteKernel) -> Result<FiniteKernel> {
    if k32.source != k21.target {
        return Err(invalid("inner sets of the convolution differ"));
    }
    FiniteKernel::new(k21.source.clone(), k32.target.clone(), k32.entries.mul(&k21.entries)?)
}

/// `(p₃₁)_*((p₃₂)^* K₃₂ · (p₂₁)^* K₂₁)` on `X₃ × X₂ × X₁`.
pub fn convolve_by_pullback(k32: &FiniteKernel, k21: &FiniteKernel) -> Result<FiniteKernel> {
    if k32.source != k21.target {
        return Err(invalid("inner sets of the convolution differ"));
    }
    k32.field().ensure_same_field(&k21.field())?;
    let (n3, n2, n1) = (k32.target.len(), k32.source.len(), k21.source.len());
    let flat = |k: &FiniteKernel| -> Vec<Scalar> { k.entries.entries().to_vec() };
    let triple = |a: usize, b: usize, c: usize| (a * n2 + b) * n1 + c;
    let mut p32 = vec![0; n3 * n2 * n1];
    let mut p21 = vec![0; n3 * n2 * n1];
    let mut p31 = vec![0; n3 * n2 * n1];
    for a in 0..n3 {
        for b in 0..n2 {
            for c in 0..n1 {
                let t = triple(a, b, c);
                p32[t] = a * n2 + b;
                p21[t] = b * n1 + c;
                p31[t] = a * n1 + c;
            }
        }
    }
    let up32 = pullback(&p32, &flat(k32))?;
    let up21 = pullback(&p21, &flat(k21))?;
    let prod: Vec<Scalar> = up32.iter().zip(&up21).map(|(x, y)| x * y).collect();
    let down = if prod.is_empty() {
        vec![Scalar::zero(k32.field()); n3 * n1]
    } else {
        pushforward(&p31, n3 * n1, &prod)?
    };
    FiniteKernel::new(k21.source.clone(), k32.target.clone(), Mat::new(k32.field(), n3, n1, down)?)
}

trait SameField {
    fn ensure_same_field(&self, other: &FieldSpec) -> Result<()>;
}

impl SameField for FieldSpec {
    fn ensure_same_field(&self, other: &FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(*self, *other))
        }
    }
}

/// A subset of `X₂ × X₁`, stored like a kernel (`rel[x₂][x₁]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    source: FinSet,
    target: FinSet,
    rel: Vec<Vec<bool>>,
}

impl Correspondence {
    pub fn new(source: FinSet, target: FinSet, pairs: &[(usize, usize)]) -> Result<Correspondence> {
        let mut rel = vec![vec![false; source.len()]; target.len()];
        for &(t, s) in pairs {
            if t >= target.len() || s >= source.len() {
                return Err(shape(format!("pair ({t}, {s}) outside the product")));
            }
            rel[t][s] = true;
        }
        Ok(Correspondence { source, target, rel })
    }

    pub fn diagonal(x: &FinSet) -> Correspondence {
        let pairs: Vec<(usize, usize)> = (0..x.len()).map(|i| (i, i)).collect();
        Correspondence::new(x.clone(), x.clone(), &pairs).unwrap()
    }

    /// `X ×_Y X` for a map `p : X → Y`: pairs in the same fiber.
    pub fn fiber_product(p: &[usize]) -> Correspondence {
        let x = FinSet::range(p.len());
        let rel = p.iter().map(|a| p.iter().map(|b| a == b).collect()).collect();
        Correspondence { source: x.clone(), target: x, rel }
    }

    pub fn contains(&self, t: usize, s: usize) -> bool {
        self.rel[t][s]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, row) in self.rel.iter().enumerate() {
            for (s, &b) in row.iter().enumerate() {
                if b {
                    out.push((t, s));
                }
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.rel.iter().flatten().all(|b| !b)
    }

    pub fn is_subset(&self, other: &Correspondence) -> bool {
        self.rel.iter().flatten().zip(other.rel.iter().flatten()).all(|(&a, &b)| !a || b)
    }
}

/// `(x₃, x₁)` is related when some `x₂` has `(x₃, x₂) ∈ Z₃₂` and `(x₂, x₁) ∈ Z₂₁`.
pub fn compose_corr(z32: &Correspondence, z21: &Correspondence) -> Result<Correspondence> {
    if z32.source != z21.target {
        return Err(invalid("inner sets of the composition differ"));
    }
    let rel = z32
        .rel
        .iter()
        .map(|row| (0..z21.source.len()).map(|c| row.iter().enumerate().any(|(b, &x)| x && z21.rel[b][c])).collect())
        .collect();
    Ok(Correspondence { source: z21.source.clone(), target: z32.target.clone(), rel })
}

/// A finite group as a multiplication table on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    elements: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Checks closure, associativity, identity and inverses.
    pub fn new(elements: Vec<String>, mul: Vec<Vec<usize>>) -> Result<GroupTable> {
        let n = elements.len();
        FinSet::new(elements.clone())?;
        if n == 0 || mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(invalid("multiplication table must be n x n with entries below n"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| invalid("no identity element"))?;
        let inverse = (0..n)
            .map(|g| (0..n).find(|&h| mul[g][h] == identity).ok_or_else(|| invalid(format!("{} has no inverse", elements[g]))))
            .collect::<Result<Vec<_>>>()?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(invalid(format!(
                            "not associative at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(GroupTable { elements, mul, identity, inverse })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// Permutations of `0..n` in lexicographic order, composed as functions:
    /// `(a b)(i) = a(b(i))`.
    pub fn symmetric(n: usize) -> GroupTable {
        let perms = permutations(n);
        let index: HashMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mul = perms
            .iter()
            .map(|a| perms.iter().map(|b| index[&b.iter().map(|&i| a[i]).collect::<Vec<_>>()]).collect())
            .collect();
        let names = perms.iter().map(|p| p.iter().map(|i| (i + 1).to_string()).collect::<String>()).collect();
        GroupTable::new(names, mul).expect("symmetric group table is valid")
    }

    pub fn cyclic(n: usize) -> GroupTable {
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new((0..n).map(|i| format!("g{i}")).collect(), mul).expect("cyclic table is valid")
    }

    /// Number of conjugacy classes.
    pub fn class_count(&self) -> usize {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut count = 0;
        for g in 0..n {
            if seen[g] {
                continue;
            }
            count += 1;
            for h in 0..n {
                seen[self.mul[self.mul[h][g]][self.inverse[h]]] = true;
            }
        }
        count
    }

    pub fn to_json(&self) -> Value {
        json!({"elements": self.elements, "table": self.mul})
    }

    /// Reads `{"elements": [...], "table": [[index, ...], ...]}`.
    pub fn from_json(v: &Value) -> Result<GroupTable> {
        #[derive(serde::Deserialize)]
        struct Raw {
            elements: Vec<String>,
            table: Vec<Vec<usize>>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("group table: {e}")))?;
        GroupTable::new(raw.elements, raw.table)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A group acting on a finite set, through permutations that generate it
/// (all group elements, or just generators).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    set: FinSet,
    perms: Vec<Vec<usize>>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

impl Action {
    /// `act[g][x] = g·x`, checked to be a homomorphism into permutations.
    pub fn from_group(g: &GroupTable, set: FinSet, act: Vec<Vec<usize>>) -> Result<Action> {
        if act.len() != g.order() || act.iter().any(|p| p.len() != set.len() || !is_permutation(p)) {
            return Err(invalid("every group element must act by a permutation of the set"));
        }
        if act[g.identity].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(invalid("the identity does not act trivially"));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                if (0..set.len()).any(|x| act[a][act[b][x]] != act[ab][x]) {
                    return Err(invalid(format!("action law fails for ({}, {})", g.elements[a], g.elements[b])));
                }
            }
        }
        Ok(Action { set, perms: act })
    }

    /// Left multiplication of a group on itself.
    pub fn left_regular(g: &GroupTable) -> Action {
        let set = FinSet::new(g.elements.clone()).unwrap();
        Action::from_group(g, set, g.mul.clone()).expect("left multiplication is an action")
    }

    /// The action of the group generated by the given permutations.
    pub fn from_generators(set: FinSet, gens: Vec<Vec<usize>>) -> Result<Action> {
        if gens.iter().any(|p| p.len() != set.len() || !is_permutation(p)) {
            return Err(invalid("generators must be permutations of the set"));
        }
        Ok(Action { set, perms: gens })
    }

    pub fn set(&self) -> &FinSet {
        &self.set
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller index as root so roots are least representatives
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }
}

/// `C[X×X]^G` with the basis of orbit indicator kernels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantAlgebra {
    pub set: FinSet,
    /// Lexicographically least pair `(x, y)` of each orbit, in increasing order.
    pub representatives: Vec<(usize, usize)>,
    /// Orbit index of every pair.
    pub orbit_of: Vec<Vec<usize>>,
    /// `e_i ∗ e_j = Σ_k c[i][j][k] e_k`.
    pub structure: Vec<Vec<Vec<i64>>>,
    /// Orbits inside the diagonal; their sum is the unit.
    pub unit: Vec<usize>,
}

impl InvariantAlgebra {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn basis_kernel(&self, i: usize) -> FiniteKernel {
        let f = FieldSpec::Rational;
        let n = self.set.len();
        let m = Mat::from_fn(f, n, n, |r, c| Scalar::from_i64(f, (self.orbit_of[r][c] == i) as i64));
        FiniteKernel::new(self.set.clone(), self.set.clone(), m).unwrap()
    }

    pub fn orbit_size(&self, i: usize) -> usize {
        self.orbit_of.iter().flatten().filter(|&&o| o == i).count()
    }
}

/// Orbits of `G` on `X × X` by union-find, then structure constants by
/// convolving orbit indicators and reading the result at representatives.
pub fn invariant_algebra(action: &Action) -> Result<InvariantAlgebra> {
    let n = action.set.len();
    let mut uf = UnionFind((0..n * n).collect());
    for p in &action.perms {
        for x in 0..n {
            for y in 0..n {
                uf.union(x * n + y, p[x] * n + p[y]);
            }
        }
    }
    let mut roots: Vec<usize> = (0..n * n).map(|k| uf.find(k)).collect();
    let mut reps: Vec<usize> = roots.clone();
    reps.sort_unstable();
    reps.dedup();
    let index: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    for r in roots.iter_mut() {
        *r = index[r];
    }
    let orbit_of: Vec<Vec<usize>> = (0..n).map(|x| roots[x * n..(x + 1) * n].to_vec()).collect();
    let representatives: Vec<(usize, usize)> = reps.iter().map(|&r| (r / n, r % n)).collect();
    let mut unit: Vec<usize> = (0..n).map(|x| orbit_of[x][x]).collect();
    unit.sort_unstable();
    unit.dedup();
    let mut alg = InvariantAlgebra { set: action.set.clone(), representatives, orbit_of, structure: vec![], unit };
    let basis: Vec<FiniteKernel> = (0..alg.dim()).map(|i| alg.basis_kernel(i)).collect();
    let d = alg.dim();
    let mut structure = vec![vec![vec![0i64; d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            let prod = convolve_matrix(&basis[i], &basis[j])?;
            for (k, &(x, y)) in alg.representatives.iter().enumerate() {
                let v = prod.entries.get(x, y).rational_part()?;
                if !v.is_integer() || v < num_rational::BigRational::from_integer(0.into()) {
                    return Err(Error::CheckFailed(format!("structure constant {v} is not a nonnegative integer")));
                }
                structure[i][j][k] = num_traits::ToPrimitive::to_i64(&v.to_integer()).unwrap();
            }
            // the product must be constant on orbits
            for x in 0..n {
                for y in 0..n {
                    let want = structure[i][j][alg.orbit_of[x][y]];
                    if prod.entries.get(x, y) != &Scalar::from_i64(FieldSpec::Rational, want) {
                        return Err(Error::CheckFailed("product is not G-invariant".into()));
                    }
                }
            }
        }
    }
    alg.structure = structure;
    Ok(alg)
}

/// The group algebra `C[G]` with `(f ∗ f′)(g) = Σ_h f(g h⁻¹) f′(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebra {
    pub group: GroupTable,
    /// `δ_a ∗ δ_b = Σ_k c[a][b][k] δ_k`.
    pub structure: Vec<Vec<Vec<i64>>>,
}

/// Structure constants from the convolution formula on delta functions.
pub fn group_algebra(g: &GroupTable) -> GroupAlgebra {
    let n = g.order();
    let conv = |f: &[i64], f2: &[i64]| -> Vec<i64> {
        (0..n)
            .map(|x| (0..n).map(|h| f[g.mul(x, g.inverse(h))] * f2[h]).sum())
            .collect()
    };
    let delta = |a: usize| -> Vec<i64> { (0..n).map(|x| (x == a) as i64).collect() };
    let structure = (0..n).map(|a| (0..n).map(|b| conv(&delta(a), &delta(b))).collect()).collect();
    GroupAlgebra { group: g.clone(), structure }
}

/// Dimension of the center of an algebra given by structure constants.
pub fn center_dimension(structure: &[Vec<Vec<i64>>]) -> usize {
    let d = structure.len();
    let f = FieldSpec::Rational;
    // z = Σ z_a e_a is central iff Σ_a z_a (c[a][b][k] − c[b][a][k]) = 0 for all b, k
    let mut rows = Vec::new();
    for b in 0..d {
        for k in 0..d {
            rows.push((0..d).map(|a| Scalar::from_i64(f, structure[a][b][k] - structure[b][a][k])).collect());
        }
    }
    Mat::from_rows(f, rows).unwrap().kernel_basis().cols()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupIsoReport {
    pub orbit_count: usize,
    pub group_order: usize,
    pub matches: bool,
}

/// Compares `C[G]` with `C[G×G]^G` (left-diagonal action) under the map
/// sending the orbit of `(g₁, g₂)` to `g₁⁻¹ g₂`.
pub fn group_iso_check(g: &GroupTable) -> Result<GroupIsoReport> {
    let inv = invariant_algebra(&Action::left_regular(g))?;
    let ga = group_algebra(g);
    let n = g.order();
    let to_group: Vec<usize> = inv.representatives.iter().map(|&(a, b)| g.mul(g.inverse(a), b)).collect();
    let mut matches = inv.dim() == n;
    if matches {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if inv.structure[i][j][k] != ga.structure[to_group[i]][to_group[j]][to_group[k]] {
                        matches = false;
                    }
                }
            }
        }
    }
    Ok(GroupIsoReport { orbit_count: inv.dim(), group_order: n, matches })
}

/// `GL_n(F_q)` acting on complete flags, with the invariant algebra on
/// pairs of flags.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra {
    pub n: usize,
    pub q: u64,
    pub group_order: usize,
    pub flags: usize,
    /// Relative position of each orbit, as a permutation in one-line notation.
    pub labels: Vec<String>,
    pub algebra: InvariantAlgebra,
}

/// Largest `q^{n²}` the group enumeration accepts.
const HECKE_LIMIT: u128 = 1 << 20;

fn field_elements(q: u64) -> Vec<Scalar> {
    (0..q).map(|v| Scalar::Mod { value: v, p: q }).collect()
}

/// All invertible `n×n` matrices over `F_q` (`q` prime).
pub fn general_linear_group(n: usize, q: u64) -> Result<Vec<Mat>> {
    let f = FieldSpec::prime(q).map_err(|_| Error::Unsupported(format!("F_{q}: only prime fields are built")))?;
    let total = (q as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if total > HECKE_LIMIT {
        return Err(Error::LimitExceeded { needed: total, limit: HECKE_LIMIT });
    }
    let els = field_elements(q);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let m = Mat::from_fn(f, n, n, |_, _| {
            let v = els[(c % q as u128) as usize].clone();
            c /= q as u128;
            v
        });
        if m.rank() == n {
            out.push(m);
        }
    }
    Ok(out)
}

/// Elementary transvections and `diag(a, 1, …, 1)` for a generator `a` of `F_q^×`.
pub fn gl_generators(n: usize, q: u64) -> Result<Vec<Mat>> {
    let f = FieldSpec::prime(q)?;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = Mat::identity(f, n);
                m.set(i, j, Scalar::one(f));
                gens.push(m);
            }
        }
    }
    let primitive = (1..q)
        .find(|&a| {
            let s = Scalar::Mod { value: a, p: q };
            (1..q - 1).all(|e| !s.pow(e as u32).is_one())
        })
        .unwrap_or(1);
    if primitive != 1 && n > 0 {
        let mut m = Mat::identity(f, n);
        m.set(0, 0, Scalar::Mod { value: primitive, p: q });
        gens.push(m);
    }
    Ok(gens)
}

/// Complete flags `F₁ ⊂ … ⊂ F_{n−1}` of `F_q^n`, each as the list of
/// canonical bases.
pub fn complete_flags(n: usize, q: u64) -> Vec<Vec<Mat>> {
    let all = subspaces(q, n);
    let by_dim = |d: usize| all.iter().filter(move |s| s.cols() == d);
    let contains = |big: &Mat, small: &Mat| big.hstack(small).unwrap().rank() == big.cols();
    let mut flags: Vec<Vec<Mat>> = vec![vec![]];
    for d in 1..n {
        let mut next = Vec::new();
        for fl in &flags {
            for s in by_dim(d) {
                if fl.last().is_none_or(|prev| contains(s, prev)) {
                    let mut e = fl.clone();
                    e.push(s.clone());
                    next.push(e);
                }
            }
        }
        flags = next;
    }
    flags
}

/// Permutation `w` with `dim(F_i ∩ F′_j) = #{k ≤ i : w(k) ≤ j}`.
fn relative_position(a: &[Mat], b: &[Mat], n: usize) -> Vec<usize> {
    let f = a.first().map_or(FieldSpec::Rational, Mat::field);
    let full = Mat::identity(f, n);
    let space = |fl: &[Mat], i: usize| -> Mat {
        match i {
            0 => Mat::zeros(f, n, 0),
            i if i == n => full.clone(),
            i => fl[i - 1].clone(),
        }
    };
    let meet = |i: usize, j: usize| -> i64 {
        let (x, y) = (space(a, i), space(b, j));
        (x.cols() + y.cols()) as i64 - x.hstack(&y).unwrap().rank() as i64
    };
    let d: Vec<Vec<i64>> = (0..=n).map(|i| (0..=n).map(|j| meet(i, j)).collect()).collect();
    (1..=n)
        .map(|i| {
            (1..=n)
                .find(|&j| d[i][j] - d[i - 1][j] - d[i][j - 1] + d[i - 1][j - 1] == 1)
                .expect("flag pairs have a relative position")
        })
        .collect()
}

/// Builds `C[G/B × G/B]^G` for `G = GL_n(F_q)` and checks that the orbits
/// are indexed by `S_n`.
pub fn hecke_algebra(n: usize, q: u64) -> Result<HeckeAlgebra> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let group = general_linear_group(n, q)?;
    let flags = complete_flags(n, q);
    let index: HashMap<Vec<Mat>, usize> = flags.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let act = |g: &Mat| -> Vec<usize> {
        flags
            .iter()
            .map(|fl| {
                let moved: Vec<Mat> = fl.iter().map(|s| g.mul(s).unwrap().image_basis()).collect();
                index[&moved]
            })
            .collect()
    };
    let gens = gl_generators(n, q)?;
    let action = Action::from_generators(FinSet::range(flags.len()), gens.iter().map(act).collect())?;
    let algebra = invariant_algebra(&action)?;
    let labels: Vec<String> = algebra
        .representatives
        .iter()
        .map(|&(x, y)| relative_position(&flags[x], &flags[y], n).iter().map(|k| k.to_string()).collect())
        .collect();
    let distinct: HashSet<&String> = labels.iter().collect();
    let n_fact: usize = (1..=n).product();
    if algebra.dim() != n_fact || distinct.len() != n_fact {
        return Err(Error::CheckFailed(format!("{} orbits on pairs of flags, expected {n_fact}", algebra.dim())));
    }
    Ok(HeckeAlgebra { n, q, group_order: group.len(), flags: flags.len(), labels, algebra })
}

impl HeckeAlgebra {
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Simple reflection `s_i` (swapping `i` and `i+1`, 1-based) in one-line notation.
    pub fn simple_reflection(&self, i: usize) -> String {
        let mut w: Vec<usize> = (1..=self.n).collect();
        w.swap(i - 1, i);
        w.iter().map(|k| k.to_string()).collect()
    }

    /// `(a, b)` with `T_s² = a T_s + b · 1` for the simple reflection `s_i`,
    /// if the square lies in that span.
    pub fn quadratic_relation(&self, i: usize) -> Option<(i64, i64)> {
        let t = self.basis_index(&self.simple_reflection(i))?;
        let sq = &self.algebra.structure[t][t];
        let [u] = self.algebra.unit[..] else { return None };
        let others = (0..sq.len()).all(|k| k == t || k == u || sq[k] == 0);
        others.then_some((sq[t], sq[u]))
    }

    /// The quadratic relation of `s_i` as text, e.g. `T^2 = 1*T + 2*Id`.
    pub fn relation_string(&self, i: usize) -> Option<String> {
        self.quadratic_relation(i).map(|(a, b)| format!("T^2 = {a}*T + {b}*Id"))
    }

    pub fn product(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let s = &self.algebra.structure;
        let d = s.len();
        let mut out = vec![0; d];
        for i in 0..d {
            for j in 0..d {
                if a[i] != 0 && b[j] != 0 {
                    for k in 0..d {
                        out[k] += a[i] * b[j] * s[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<i64> {
        (0..self.algebra.dim()).map(|k| (k == i) as i64).collect()
    }
}

/// One basis kernel of a graded kernel algebra: a block supported on
/// `X_r × X_s` with homological degree `h`, hence shifted degree `d_rs − h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement {
    pub component: (usize, usize),
    pub h: i64,
    pub block: Mat,
}

/// Kernels on `X = ⊔ X_r`, where each piece carries a real dimension `d_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedKernelAlgebra {
    pub sizes: Vec<usize>,
    pub dims: Vec<i64>,
    pub basis: Vec<GradedElement>,
}

impl GradedKernelAlgebra {
    pub fn new(sizes: Vec<usize>, dims: Vec<i64>, basis: Vec<GradedElement>) -> Result<GradedKernelAlgebra> {
        if sizes.len() != dims.len() {
            return Err(shape("one dimension per piece"));
        }
        for (k, e) in basis.iter().enumerate() {
            let (r, s) = e.component;
            if r >= sizes.len() || s >= sizes.len() {
                return Err(shape(format!("element {k} names a missing piece")));
            }
            if (dims[r] + dims[s]) % 2 != 0 {
                return Err(invalid(format!("d_{r} + d_{s} is odd, so d_rs is not an integer")));
            }
            if e.block.rows() != sizes[r] || e.block.cols() != sizes[s] {
                return Err(shape(format!("element {k} has the wrong block shape")));
            }
        }
        Ok(GradedKernelAlgebra { sizes, dims, basis })
    }

    /// `d_rs = (d_r + d_s) / 2`.
    pub fn d(&self, r: usize, s: usize) -> i64 {
        (self.dims[r] + self.dims[s]) / 2
    }

    pub fn degree(&self, k: usize) -> i64 {
        let (r, s) = self.basis[k].component;
        self.d(r, s) - self.basis[k].h
    }

    /// All basis elements in one piece, all in shifted degree 0.
    pub fn ungraded(kernels: Vec<Mat>) -> Result<GradedKernelAlgebra> {
        let n = kernels.first().map_or(0, Mat::rows);
        let basis = kernels.into_iter().map(|block| GradedElement { component: (0, 0), h: 0, block }).collect();
        GradedKernelAlgebra::new(vec![n], vec![0], basis)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedCheck {
    pub passed: bool,
    /// `(a, b, c)`: `e_a ∗ e_b` has a nonzero `e_c` coefficient in the wrong
    /// degree (`c = None` when the product leaves the span).
    pub witness: Option<(usize, usize, Option<usize>)>,
}

/// Checks that `e_a ∗ e_b` only involves basis elements of degree
/// `deg a + deg b`.
pub fn graded_product_check(alg: &GradedKernelAlgebra) -> Result<GradedCheck> {
    let d = alg.basis.len();
    let field = alg.basis.first().map_or(FieldSpec::Rational, |e| e.block.field());
    for a in 0..d {
        for b in 0..d {
            let (ea, eb) = (&alg.basis[a], &alg.basis[b]);
            if ea.component.1 != eb.component.0 {
                continue;
            }
            let target = (ea.component.0, eb.component.1);
            let prod = ea.block.mul(&eb.block)?;
            let candidates: Vec<usize> = (0..d).filter(|&c| alg.basis[c].component == target).collect();
            let len = prod.rows() * prod.cols();
            let columns = Mat::from_fn(field, len, candidates.len(), |r, c| {
                alg.basis[candidates[c]].block.entries()[r].clone()
            });
            let rhs = Mat::from_fn(field, len, 1, |r, _| prod.entries()[r].clone());
            let Some(coeffs) = columns.solve(&rhs)? else {
                return Ok(GradedCheck { passed: false, witness: Some((a, b, None)) });
            };
            let want = alg.degree(a) + alg.degree(b);
            for (k, &c) in candidates.iter().enumerate() {
                if !coeffs.get(k, 0).is_zero() && alg.degree(c) != want {
                    return Ok(GradedCheck { passed: false, witness: Some((a, b, Some(c))) });
                }
            }
        }
    }
    Ok(GradedCheck { passed: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::random_mat;
    use std::collections::VecDeque;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: FieldSpec = FieldSpec::Rational;

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(Q, v)
    }

    fn kernel(rows: &[&[i64]]) -> FiniteKernel {
        let m = Mat::from_i64(Q, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        FiniteKernel::new(FinSet::range(m.cols()), FinSet::range(m.rows()), m).unwrap()
    }

    #[test]
    fn apply_examples() {
        let f = vec![s(1), s(-2), s(5)];
        assert_eq!(apply(&FiniteKernel::identity(&FinSet::range(3), Q), &f).unwrap(), f);
        assert_eq!(apply(&kernel(&[&[1, 1, 1], &[1, 1, 1]]), &f).unwrap(), vec![s(4), s(4)]);
        let k = kernel(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(apply(&k, &[s(0), s(1), s(0)]).unwrap(), vec![s(2), s(5)]);
        assert!(apply(&k, &[s(1)]).is_err());
    }

    #[test]
    fn push_pull_examples() {
        let f = vec![s(1), s(2), s(3), s(4)];
        let id = [0, 1, 2, 3];
        assert_eq!(pushforward(&id, 4, &f).unwrap(), f);
        assert_eq!(pullback(&id, &f).unwrap(), f);
        assert_eq!(pushforward(&[0, 0, 0, 0], 1, &f).unwrap(), vec![s(10)]);
        let p = [0, 1, 0, 1];
        let g = vec![s(3), s(-1)];
        let back = pushforward(&p, 2, &pullback(&p, &g).unwrap()).unwrap();
        assert_eq!(back, vec![s(6), s(-2)]);
    }

    #[test]
    fn convolve_examples() {
        let k = kernel(&[&[1, 2], &[3, 4], &[5, 6]]);
        let id = FiniteKernel::identity(&FinSet::range(3), Q);
        assert_eq!(convolve(&id, &k).unwrap(), k);
        // permutations (0 1 2) and (0 1)
        let c = kernel(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let t = kernel(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let ct = convolve(&c, &t).unwrap();
        // c∘t sends 0 → c(1) = 2, 1 → c(0) = 1, 2 → c(2) = 0
        assert_eq!(ct, kernel(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = FiniteKernel::new(FinSet::range(2), FinSet::range(3), random_mat(Q, 3, 2, &mut rng)).unwrap();
            let b = FiniteKernel::new(FinSet::range(4), FinSet::range(2), random_mat(Q, 2, 4, &mut rng)).unwrap();
            assert_eq!(convolve_matrix(&a, &b).unwrap(), convolve_by_pullback(&a, &b).unwrap());
        }
        assert!(convolve(&k, &k).is_err());
    }

    #[test]
    fn correspondence_examples() {
        let x = FinSet::range(4);
        let z = Correspondence::new(x.clone(), x.clone(), &[(0, 1), (2, 3), (3, 3)]).unwrap();
        assert_eq!(compose_corr(&Correspondence::diagonal(&x), &z).unwrap(), z);
        let fib = Correspondence::fiber_product(&[0, 0, 1, 1]);
        assert_eq!(compose_corr(&fib, &fib).unwrap(), fib);
        let a = Correspondence::new(x.clone(), x.clone(), &[(0, 0), (1, 0)]).unwrap();
        let b = Correspondence::new(x.clone(), x.clone(), &[(3, 2)]).unwrap();
        assert!(compose_corr(&a, &b).unwrap().is_empty());
        // supports of nonnegative kernels compose exactly
        let ka = FiniteKernel::indicator(&fib, Q);
        let kz = FiniteKernel::indicator(&z, Q);
        assert_eq!(convolve(&ka, &kz).unwrap().support(), compose_corr(&fib, &z).unwrap());
    }

    #[test]
    fn invariant_algebra_examples() {
        let trivial = Action::from_generators(FinSet::range(3), vec![]).unwrap();
        let alg = invariant_algebra(&trivial).unwrap();
        assert_eq!(alg.dim(), 9);
        assert_eq!(alg.unit.len(), 3);

        let s2 = GroupTable::symmetric(2);
        let act = Action::from_group(&s2, FinSet::range(2), vec![vec![0, 1], vec![1, 0]]).unwrap();
        let alg = invariant_algebra(&act).unwrap();
        assert_eq!(alg.dim(), 2);
        let off = 1 - alg.unit[0];
        assert_eq!(alg.structure[off][off][alg.unit[0]], 1);
        assert_eq!(alg.structure[off][off][off], 0);

        let s3 = GroupTable::symmetric(3);
        let alg = invariant_algebra(&Action::left_regular(&s3)).unwrap();
        assert_eq!(alg.dim(), 6);
        assert!(Action::from_group(&s2, FinSet::range(2), vec![vec![1, 0], vec![1, 0]]).is_err());
    }

    #[test]
    fn group_algebra_examples() {
        let s3 = GroupTable::symmetric(3);
        let ga = group_algebra(&s3);
        let e = s3.identity();
        for g in 0..6 {
            for h in 0..6 {
                let k = s3.mul(g, h);
                assert_eq!(ga.structure[g][h], (0..6).map(|x| (x == k) as i64).collect::<Vec<_>>());
            }
            assert_eq!(ga.structure[e][g][g], 1);
        }
        assert_eq!(center_dimension(&ga.structure), 3);
        assert_eq!(s3.class_count(), 3);
        assert!(group_iso_check(&s3).unwrap().matches);
        assert!(group_iso_check(&GroupTable::cyclic(5)).unwrap().matches);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(GroupTable::new(names.clone(), vec![vec![0, 0], vec![0, 1]]).is_err());
        assert!(GroupTable::new(names, vec![vec![0, 1], vec![1, 0]]).is_ok());
        let bad = json!({"elements": ["e"], "table": [[1]]});
        assert!(GroupTable::from_json(&bad).is_err());
    }

    #[test]
    fn hecke_examples() {
        for q in [2u64, 3] {
            let h = hecke_algebra(2, q).unwrap();
            assert_eq!(h.flags as u64, q + 1);
            assert_eq!(h.algebra.dim(), 2);
            assert_eq!(h.quadratic_relation(1), Some((q as i64 - 1, q as i64)));
            assert_eq!(h.relation_string(1).unwrap(), format!("T^2 = {}*T + {q}*Id", q - 1));
        }
        let h = hecke_algebra(3, 2).unwrap();
        assert_eq!(h.flags, 21);
        assert_eq!(h.group_order, 168);
        assert_eq!(h.algebra.dim(), 6);
        for i in [1, 2] {
            assert_eq!(h.quadratic_relation(i), Some((1, 2)));
        }
        // braid relation T₁T₂T₁ = T₂T₁T₂
        let t1 = h.basis_vector(h.basis_index("213").unwrap());
        let t2 = h.basis_vector(h.basis_index("132").unwrap());
        assert_eq!(h.product(&h.product(&t1, &t2), &t1), h.product(&h.product(&t2, &t1), &t2));
    }

    #[test]
    fn generators_generate() {
        for (n, q) in [(2usize, 2u64), (2, 3), (3, 2)] {
            let gens = gl_generators(n, q).unwrap();
            let mut seen: HashSet<Mat> = HashSet::new();
            let id = Mat::identity(FieldSpec::Prime { p: q }, n);
            let mut queue = VecDeque::from([id.clone()]);
            seen.insert(id);
            while let Some(m) = queue.pop_front() {
                for g in &gens {
                    let next = g.mul(&m).unwrap();
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
            assert_eq!(seen.len(), general_linear_group(n, q).unwrap().len());
        }
    }

    #[test]
    fn graded_examples() {
        let h = hecke_algebra(2, 2).unwrap();
        let kernels: Vec<Mat> = (0..2).map(|i| h.algebra.basis_kernel(i).entries().clone()).collect();
        let alg = GradedKernelAlgebra::ungraded(kernels.clone()).unwrap();
        assert!(graded_product_check(&alg).unwrap().passed);
        let t = 1 - h.algebra.unit[0];
        let mut bad = alg.clone();
        bad.basis[t].h = -1;
        let check = graded_product_check(&bad).unwrap();
        assert!(!check.passed);
        let (a, b, c) = check.witness.unwrap();
        assert_eq!((a, b), (t, t));
        assert!(c.is_some());
        assert!(GradedKernelAlgebra::new(vec![3, 3], vec![0, 1], vec![GradedElement {
            component: (0, 1),
            h: 0,
            block: Mat::zeros(Q, 3, 3),
        }])
        .is_err());
    }

    #[test]
    fn fiber_action() {
        let k = kernel(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(apply_on_fiber(&k, &[0, 2], &[s(1), s(1)]).unwrap(), vec![s(4), s(16)]);
    }

    #[test]
    fn kernel_json_round_trip() {
        let k = kernel(&[&[1, 2], &[3, 4]]);
        assert_eq!(FiniteKernel::from_json(&k.to_json()).unwrap(), k);
    }
}
