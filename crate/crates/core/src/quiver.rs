//! Quivers, their derived quivers, and closed-form dimension counts.
//!
//! Vertices keep their declaration order; every matrix and dimension vector in
//! the crate is indexed in that order. Adjacency follows the convention
//! `a[i][j] = #{edges j → i}`, so the associated bilinear form is
//! `A α·β = Σ_{x ∈ E} α_{tail x} β_{head x}`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

/// Where the edges and vertices of a derived quiver came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    /// Edges inherited from the quiver the construction started with.
    pub base_edges: Vec<usize>,
    /// Pairs `(x, x*)` matching each edge with its reverse.
    pub star_pairs: Vec<(usize, usize)>,
    /// Framing edges `i → i'` or `i → ∞`.
    pub framing_edges: Vec<usize>,
    /// Vertices added by framing.
    pub framing_vertices: Vec<usize>,
}

/// A finite quiver: ordered vertex labels and named directed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    provenance: Option<Provenance>,
}

pub type IntMatrix = Vec<Vec<i64>>;

/// Label of the extra vertex added by Crawley-Boevey framing.
pub const INFINITY_VERTEX: &str = "inf";

impl Quiver {
    /// Builds a quiver from labels and `(name, tail, head)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<Quiver> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != vertices.len() {
            return Err(invalid("duplicate vertex label"));
        }
        let mut out = Vec::with_capacity(edges.len());
        for (name, t, h) in edges {
            let lookup = |v: &S| {
                index
                    .get(v.as_ref())
                    .copied()
                    .ok_or_else(|| invalid(format!("edge {} uses undeclared vertex {}", name.as_ref(), v.as_ref())))
            };
            out.push(Edge { name: name.as_ref().to_string(), tail: lookup(t)?, head: lookup(h)? });
        }
        Quiver::from_parts(vertices, out, None)
    }

    pub fn from_parts(vertices: Vec<String>, edges: Vec<Edge>, provenance: Option<Provenance>) -> Result<Quiver> {
        let mut seen = std::collections::HashSet::new();
        for e in &edges {
            if !seen.insert(e.name.as_str()) {
                return Err(invalid(format!("duplicate edge name {}", e.name)));
            }
            if e.tail >= vertices.len() || e.head >= vertices.len() {
                return Err(invalid(format!("edge {} has an endpoint out of range", e.name)));
            }
        }
        let mut labels = std::collections::HashSet::new();
        if !vertices.iter().all(|v| labels.insert(v.as_str())) {
            return Err(invalid("duplicate vertex label"));
        }
        Ok(Quiver { vertices, edges, provenance })
    }

    /// One vertex, one loop `x`.
    pub fn jordan() -> Quiver {
        Quiver::new(&["0"], &[("x", "0", "0")]).unwrap()
    }

    /// Type A_n with vertices `1..=n` and edges `k+1 → k`.
    pub fn type_a(n: usize) -> Quiver {
        let vs: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
        let es: Vec<(String, String, String)> = (1..n)
            .map(|k| (format!("a{k}"), (k + 1).to_string(), k.to_string()))
            .collect();
        Quiver::new(&vs, &es).unwrap()
    }

    /// Oriented cycle on `n` vertices (`n ≥ 1`), edges `k → k+1 mod n`.
    pub fn cycle(n: usize) -> Quiver {
        let vs: Vec<String> = (0..n).map(|k| k.to_string()).collect();
        let es: Vec<(String, String, String)> = (0..n)
            .map(|k| (format!("c{k}"), k.to_string(), ((k + 1) % n).to_string()))
            .collect();
        Quiver::new(&vs, &es).unwrap()
    }

    /// Two vertices with `m` parallel edges `0 → 1`.
    pub fn kronecker(m: usize) -> Quiver {
        let es: Vec<(String, String, String)> =
            (0..m).map(|k| (format!("k{k}"), "0".to_string(), "1".to_string())).collect();
        Quiver::new(&["0".to_string(), "1".to_string()], &es).unwrap()
    }

    /// A quiver with `a[i][j]` edges `j → i`.
    pub fn from_adjacency(labels: &[String], a: &IntMatrix) -> Result<Quiver> {
        let n = labels.len();
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(invalid("adjacency matrix shape does not match labels"));
        }
        let mut edges = Vec::new();
        for (i, row) in a.iter().enumerate() {
            for (j, &count) in row.iter().enumerate() {
                if count < 0 {
                    return Err(invalid("negative edge count"));
                }
                for k in 0..count {
                    edges.push(Edge { name: format!("e{j}_{i}_{k}"), tail: j, head: i });
                }
            }
        }
        Quiver::from_parts(labels.to_vec(), edges, None)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|e| e.tail == e.head)
    }

    pub fn opposite(&self) -> Quiver {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { name: e.name.clone(), tail: e.head, head: e.tail })
            .collect();
        Quiver { vertices: self.vertices.clone(), edges, provenance: None }
    }

    /// The double Q̄: every edge `x` gains a reverse edge `x*`.
    pub fn double(&self) -> Quiver {
        let n = self.edges.len();
        let mut edges = self.edges.clone();
        for e in &self.edges {
            edges.push(Edge { name: format!("{}*", e.name), tail: e.head, head: e.tail });
        }
        let old = self.provenance.clone().unwrap_or_default();
        let base_edges = if self.provenance.is_some() { old.base_edges } else { (0..n).collect() };
        let provenance = Provenance {
            base_edges,
            star_pairs: (0..n).map(|e| (e, n + e)).collect(),
            framing_edges: old.framing_edges,
            framing_vertices: old.framing_vertices,
        };
        Quiver { vertices: self.vertices.clone(), edges, provenance: Some(provenance) }
    }

    /// Q♥: a copy `i'` of every vertex and a framing edge `j_i : i → i'`.
    pub fn frame(&self) -> Quiver {
        let n = self.vertices.len();
        let mut vertices = self.vertices.clone();
        vertices.extend(self.vertices.iter().map(|v| format!("{v}'")));
        let mut edges = self.edges.clone();
        let first = edges.len();
        for (i, v) in self.vertices.iter().enumerate() {
            edges.push(Edge { name: format!("j_{v}"), tail: i, head: n + i });
        }
        let provenance = Provenance {
            base_edges: (0..first).collect(),
            star_pairs: vec![],
            framing_edges: (first..edges.len()).collect(),
            framing_vertices: (n..2 * n).collect(),
        };
        Quiver { vertices, edges, provenance: Some(provenance) }
    }

    /// Q^w: one extra vertex ∞ and `w_i` edges `i → ∞`.
    pub fn cb_frame(&self, w: &DimVector) -> Result<Quiver> {
        self.check_dim(w)?;
        if self.vertex_index(INFINITY_VERTEX).is_some() {
            return Err(invalid("quiver already has a vertex named inf"));
        }
        let n = self.vertices.len();
        let mut vertices = self.vertices.clone();
        vertices.push(INFINITY_VERTEX.to_string());
        let mut edges = self.edges.clone();
        let first = edges.len();
        for (i, v) in self.vertices.iter().enumerate() {
            for k in 0..w[i] {
                edges.push(Edge { name: format!("j_{v}_{k}"), tail: i, head: n });
            }
        }
        let provenance = Provenance {
            base_edges: (0..first).collect(),
            star_pairs: vec![],
            framing_edges: (first..edges.len()).collect(),
            framing_vertices: vec![n],
        };
        Ok(Quiver { vertices, edges, provenance: Some(provenance) })
    }

    pub fn adjacency(&self) -> IntMatrix {
        let n = self.vertices.len();
        let mut a = vec![vec![0i64; n]; n];
        for e in &self.edges {
            a[e.head][e.tail] += 1;
        }
        a
    }

    /// `C = 2·Id − (A + Aᵀ)`; depends only on the underlying graph.
    pub fn cartan(&self) -> IntMatrix {
        let a = self.adjacency();
        let n = a.len();
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                c[i][j] = 2 * (i == j) as i64 - a[i][j] - a[j][i];
            }
        }
        c
    }

    /// `A α·β = Σ_x α_{tail x} β_{head x}`.
    pub fn adjacency_form(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        self.edges.iter().map(|e| alpha[e.tail] * beta[e.head]).sum()
    }

    pub fn cartan_form(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        bilinear(&self.cartan(), alpha, beta)
    }

    pub fn check_dim(&self, v: &DimVector) -> Result<()> {
        if v.len() != self.vertices.len() {
            return Err(invalid(format!(
                "dimension vector has {} entries, quiver has {} vertices",
                v.len(),
                self.vertices.len()
            )));
        }
        Ok(())
    }

    /// Every closed-form dimension count for `(v, w)`.
    pub fn dims(&self, v: &DimVector, w: Option<&DimVector>) -> Result<Dims> {
        self.check_dim(v)?;
        if let Some(w) = w {
            self.check_dim(w)?;
        }
        let v = v.as_slice();
        let av = self.adjacency_form(v, v);
        let vv = dot(v, v);
        let cvv = self.cartan_form(v, v);
        let abar = av * 2; // A_{Q̄} v·v
        let with_w = |f: &dyn Fn(i64) -> i64| w.map(|w| f(dot(w.as_slice(), v)));
        Ok(Dims {
            rep: av,
            group: vv,
            stable_unframed: 1 + av - vv,
            preprojective_stable: 2 - cvv,
            framed_rep: with_w(&|wv| wv + av),
            double_framed_rep: with_w(&|wv| abar + 2 * wv),
            framed_quotient: with_w(&|wv| wv + av - vv),
            nakajima: with_w(&|wv| 2 * wv - cvv),
        })
    }

    /// Oriented cycles up to length `maxlen`, one representative per rotation
    /// class (the lexicographically least rotation), ordered by length and
    /// then lexicographically by edge index.
    pub fn cycles(&self, maxlen: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        for len in 1..=maxlen {
            for first in 0..self.edges.len() {
                path.clear();
                path.push(first);
                self.extend_cycles(len, &mut path, &mut out);
            }
        }
        out
    }

    fn extend_cycles(&self, len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = self.edges[*path.last().unwrap()].head;
        if path.len() == len {
            if last == self.edges[path[0]].tail && is_least_rotation(path) {
                out.push(path.clone());
            }
            return;
        }
        for (k, e) in self.edges.iter().enumerate() {
            // the first edge of a least rotation is never larger than the others
            if e.tail == last && k >= path[0] {
                path.push(k);
                self.extend_cycles(len, path, out);
                path.pop();
            }
        }
    }

    pub fn is_cycle(&self, cycle: &[usize]) -> bool {
        !cycle.is_empty()
            && cycle.iter().all(|&e| e < self.edges.len())
            && (0..cycle.len()).all(|k| {
                self.edges[cycle[k]].head == self.edges[cycle[(k + 1) % cycle.len()]].tail
            })
    }

    pub fn cycle_name(&self, cycle: &[usize]) -> String {
        cycle.iter().map(|&e| self.edges[e].name.as_str()).collect::<Vec<_>>().join(".")
    }

    /// Symmetric adjacency of the underlying undirected multigraph, `A + Aᵀ`.
    pub fn underlying_graph(&self) -> IntMatrix {
        let a = self.adjacency();
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| a[i][j] + a[j][i]).collect()).collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(QuiverJson::from(self)).expect("quiver serializes")
    }

    pub fn from_json(v: &Value) -> Result<Quiver> {
        let q: QuiverJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("quiver: {e}")))?;
        q.try_into()
    }
}

fn is_least_rotation(path: &[usize]) -> bool {
    (1..path.len()).all(|r| {
        let rotated = path[r..].iter().chain(&path[..r]);
        path.iter().le(rotated)
    })
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `M α·β = Σ_{ij} m_ij α_j β_i`.
pub fn bilinear(m: &IntMatrix, alpha: &[i64], beta: &[i64]) -> i64 {
    m.iter()
        .enumerate()
        .map(|(i, row)| beta[i] * row.iter().zip(alpha).map(|(a, x)| a * x).sum::<i64>())
        .sum()
}

pub fn mat_vec(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Closed-form dimension counts. Fields that need a framing vector are
/// `None` when no `w` was supplied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dims {
    /// dim Rep(Q, v) = A v·v
    pub rep: i64,
    /// dim G_v = v·v
    pub group: i64,
    /// dimension of the stable locus quotient, 1 + A v·v − v·v
    pub stable_unframed: i64,
    /// dimension of stable preprojective modules, 2 − C v·v
    pub preprojective_stable: i64,
    /// dim Rep(Q♥, v, w) = w·v + A v·v
    pub framed_rep: Option<i64>,
    /// dim Rep(Q̄♥, v, w) = A_{Q̄} v·v + 2 v·w
    pub double_framed_rep: Option<i64>,
    /// dim of the framed stable quotient, v·w + A v·v − v·v
    pub framed_quotient: Option<i64>,
    /// dim M_{λ,θ}(v, w) = 2 w·v − C v·v
    pub nakajima: Option<i64>,
}

/// A vector of nonnegative integers indexed by the vertices of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(v: Vec<i64>) -> Result<DimVector> {
        if v.iter().any(|&x| x < 0) {
            return Err(invalid("dimension vectors are nonnegative"));
        }
        Ok(DimVector(v))
    }

    pub fn zero(n: usize) -> DimVector {
        DimVector(vec![0; n])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    /// `{"label": n, ...}` keyed by the quiver's vertex labels.
    pub fn to_json(&self, q: &Quiver) -> Value {
        let map: BTreeMap<String, Value> =
            q.vertices().iter().cloned().zip(self.0.iter().map(|&x| Value::from(x))).collect();
        serde_json::to_value(map).unwrap()
    }

    /// Accepts `{"label": n}` (missing labels are 0), a list in vertex order,
    /// or a bare integer for one-vertex quivers.
    pub fn from_json(q: &Quiver, v: &Value) -> Result<DimVector> {
        let n = q.num_vertices();
        let bad = |m: String| Error::Parse(format!("dimension vector: {m}"));
        let read = |x: &Value| x.as_i64().ok_or_else(|| bad(format!("{x} is not an integer")));
        let out = match v {
            Value::Number(_) if n == 1 => vec![read(v)?],
            Value::Array(items) => {
                if items.len() != n {
                    return Err(bad(format!("expected {n} entries")));
                }
                items.iter().map(read).collect::<Result<_>>()?
            }
            Value::Object(map) => {
                let mut out = vec![0; n];
                for (k, x) in map {
                    let i = q.vertex_index(k).ok_or_else(|| bad(format!("unknown vertex {k}")))?;
                    out[i] = read(x)?;
                }
                out
            }
            other => return Err(bad(format!("cannot read {other}"))),
        };
        DimVector::new(out)
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl From<DimVector> for Vec<i64> {
    fn from(d: DimVector) -> Vec<i64> {
        d.0
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    name: String,
    tail: String,
    head: String,
}

#[derive(Serialize, Deserialize, Default)]
struct ProvenanceJson {
    #[serde(default)]
    base_edges: Vec<String>,
    #[serde(default)]
    star_pairs: Vec<(String, String)>,
    #[serde(default)]
    framing_edges: Vec<String>,
    #[serde(default)]
    framing_vertices: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    provenance: Option<ProvenanceJson>,
}

impl From<&Quiver> for QuiverJson {
    fn from(q: &Quiver) -> Self {
        let en = |e: &usize| q.edges[*e].name.clone();
        QuiverJson {
            vertices: q.vertices.clone(),
            edges: q
                .edges
                .iter()
                .map(|e| EdgeJson {
                    name: e.name.clone(),
                    tail: q.vertices[e.tail].clone(),
                    head: q.vertices[e.head].clone(),
                })
                .collect(),
            provenance: q.provenance.as_ref().map(|p| ProvenanceJson {
                base_edges: p.base_edges.iter().map(en).collect(),
                star_pairs: p.star_pairs.iter().map(|(a, b)| (en(a), en(b))).collect(),
                framing_edges: p.framing_edges.iter().map(en).collect(),
                framing_vertices: p.framing_vertices.iter().map(|v| q.vertices[*v].clone()).collect(),
            }),
        }
    }
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = Error;

    fn try_from(j: QuiverJson) -> Result<Quiver> {
        let edges: Vec<(String, String, String)> =
            j.edges.into_iter().map(|e| (e.name, e.tail, e.head)).collect();
        let mut q = Quiver::new(&j.vertices, &edges)?;
        if let Some(p) = j.provenance {
            let edge = |n: &String| q.edge_index(n).ok_or_else(|| invalid(format!("provenance names unknown edge {n}")));
            let vertex = |n: &String| q.vertex_index(n).ok_or_else(|| invalid(format!("provenance names unknown vertex {n}")));
            let prov = Provenance {
                base_edges: p.base_edges.iter().map(edge).collect::<Result<_>>()?,
                star_pairs: p
                    .star_pairs
                    .iter()
                    .map(|(a, b)| Ok((edge(a)?, edge(b)?)))
                    .collect::<Result<_>>()?,
                framing_edges: p.framing_edges.iter().map(edge).collect::<Result<_>>()?,
                framing_vertices: p.framing_vertices.iter().map(vertex).collect::<Result<_>>()?,
            };
            for &(x, y) in &prov.star_pairs {
                let (ex, ey) = (&q.edges[x], &q.edges[y]);
                if ex.tail != ey.head || ex.head != ey.tail {
                    return Err(invalid(format!("{} and {} are not reverse edges", ex.name, ey.name)));
                }
            }
            q.provenance = Some(prov);
        }
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[i64]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(Quiver::jordan().adjacency(), vec![vec![1]]);
        // edge 2 → 1 puts a one at row "1", column "2"
        assert_eq!(Quiver::type_a(2).adjacency(), vec![vec![0, 1], vec![0, 0]]);
        let empty = Quiver::new(&["a", "b"], &[]).unwrap();
        assert_eq!(empty.adjacency(), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn doubles() {
        let d = Quiver::type_a(2).double();
        assert_eq!((d.num_vertices(), d.edges().len()), (2, 2));
        let dj = Quiver::jordan().double();
        assert_eq!((dj.num_vertices(), dj.edges().len()), (1, 2));
        assert!(dj.edges().iter().all(|e| e.tail == e.head));
        let p = d.provenance().unwrap();
        assert_eq!(p.star_pairs, vec![(0, 1)]);
        // orientation independence of the double's underlying graph
        let a3 = Quiver::type_a(3);
        assert_eq!(a3.double().underlying_graph(), a3.opposite().double().underlying_graph());
    }

    #[test]
    fn framings() {
        let fj = Quiver::jordan().frame();
        assert_eq!((fj.num_vertices(), fj.edges().len()), (2, 2));
        let a2 = Quiver::type_a(2);
        let cb = a2.cb_frame(&dv(&[1, 0])).unwrap();
        assert_eq!((cb.num_vertices(), cb.edges().len()), (3, 2));
        let cb0 = a2.cb_frame(&dv(&[0, 0])).unwrap();
        assert_eq!((cb0.num_vertices(), cb0.edges().len()), (3, 1));
        assert!(a2.cb_frame(&dv(&[1])).is_err());
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(Quiver::type_a(2).cartan(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(Quiver::jordan().cartan(), vec![vec![0]]);
        assert_eq!(Quiver::kronecker(2).cartan(), vec![vec![2, -2], vec![-2, 2]]);
    }

    #[test]
    fn dimension_examples() {
        let j = Quiver::jordan();
        for n in 1..6 {
            let d = j.dims(&dv(&[n]), Some(&dv(&[1]))).unwrap();
            assert_eq!(d.nakajima, Some(2 * n));
        }
        let a1 = Quiver::new(&["0"], &[]).unwrap();
        for r in 0..5 {
            for k in 0..=r {
                let d = a1.dims(&dv(&[k]), Some(&dv(&[r]))).unwrap();
                assert_eq!(d.nakajima, Some(2 * k * (r - k)));
            }
        }
        let q = Quiver::cycle(3);
        let d = q.dims(&dv(&[0, 0, 0]), Some(&dv(&[1, 2, 0]))).unwrap();
        assert_eq!(d.group, 0);
        assert_eq!(d.nakajima, Some(0));
        assert_eq!(d.framed_quotient, Some(0));
        assert_eq!(d.double_framed_rep, Some(0));
    }

    #[test]
    fn cycle_examples() {
        let a3 = Quiver::type_a(3);
        for len in 1..5 {
            assert!(a3.cycles(len).is_empty());
        }
        let j = Quiver::jordan();
        assert_eq!(j.cycles(3), vec![vec![0], vec![0, 0], vec![0, 0, 0]]);
        // x x* and x* x are rotations of one another
        assert_eq!(Quiver::type_a(2).double().cycles(2), vec![vec![0, 1]]);
        // double Jordan: words in two letters up to rotation
        assert_eq!(Quiver::jordan().double().cycles(2).len(), 2 + 3);
    }

    #[test]
    fn json_round_trip() {
        let q = Quiver::from_json(&serde_json::json!({
            "vertices": ["0", "1"],
            "edges": [{"name": "a", "tail": "1", "head": "0"}]
        }))
        .unwrap();
        assert_eq!(q.adjacency(), vec![vec![0, 1], vec![0, 0]]);
        let d = q.double();
        let back = Quiver::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        let v = DimVector::from_json(&q, &serde_json::json!({"0": 2, "1": 1})).unwrap();
        assert_eq!(v.as_slice(), &[2, 1]);
        assert_eq!(v.to_json(&q), serde_json::json!({"0": 2, "1": 1}));
        assert!(Quiver::from_json(&serde_json::json!({
            "vertices": ["0"], "edges": [{"name": "a", "tail": "0", "head": "9"}]
        }))
        .is_err());
    }
}
