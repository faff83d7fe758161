//! McKay quivers of finite subgroups of SL₂ from their character tables,
//! and recognition of the resulting affine ADE diagrams.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::exactalg::{FieldSpec, Scalar};
use crate::quiver::{mat_vec, Edge, IntMatrix, Quiver};

/// Character table of a finite subgroup `Γ ⊂ SL₂`, with entries in `Q(ζ_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    name: String,
    order: u64,
    m: u32,
    classes: Vec<(String, u64)>,
    names: Vec<String>,
    chars: Vec<Vec<Scalar>>,
    trivial: usize,
    natural: Vec<Scalar>,
}

/// Raw table data, before validation.
#[derive(Debug, Clone)]
pub struct TableData {
    pub name: String,
    pub order: u64,
    pub m: u32,
    pub classes: Vec<(String, u64)>,
    pub names: Vec<String>,
    pub chars: Vec<Vec<Scalar>>,
    pub trivial: usize,
    /// Values of the natural two-dimensional character `E`, which need not
    /// be irreducible.
    pub natural: Vec<Scalar>,
}

impl CharacterTable {
    /// Validates class sizes, orthonormality, `Σ dim² = |Γ|`, the trivial
    /// row and the two-dimensional self-dual natural character.
    pub fn new(d: TableData) -> Result<CharacterTable> {
        let field = FieldSpec::Cyclotomic { m: d.m };
        let fail = |msg: String| Err(Error::CheckFailed(format!("{}: {msg}", d.name)));
        let k = d.classes.len();
        if d.classes.iter().map(|c| c.1).sum::<u64>() != d.order {
            return fail("class sizes do not sum to the group order".into());
        }
        if d.chars.len() != k || d.names.len() != k {
            return fail(format!("{} characters for {k} classes", d.chars.len()));
        }
        if d.chars.iter().flatten().any(|s| s.field() != field) {
            return fail(format!("entries must lie in Q(zeta_{})", d.m));
        }
        if d.trivial >= k || d.natural.len() != k {
            return fail("distinguished character out of range".into());
        }
        if d.classes[0].1 != 1 || !d.chars.iter().all(|row| row[0].rational_part().is_ok()) {
            return fail("the first class must be the identity".into());
        }
        if !d.chars[d.trivial].iter().all(Scalar::is_one) {
            return fail("trivial character is not constant 1".into());
        }
        let e = &d.natural;
        if e[0] != Scalar::from_i64(field, 2) || e.iter().any(|s| s.conj() != *s) {
            return fail("natural character must be real with degree 2".into());
        }
        let sq: BigRational = d.chars.iter().map(|row| row[0].rational_part().unwrap().pow(2)).sum();
        if sq != BigRational::from_integer(d.order.into()) {
            return fail(format!("sum of squared degrees is {sq}"));
        }
        for a in 0..k {
            for b in 0..k {
                let ip = inner(&d.classes, d.order, &d.chars[a], &d.chars[b]);
                let want = if a == b { 1 } else { 0 };
                if ip != Scalar::from_i64(field, want) {
                    return fail(format!("orthogonality fails: <{}, {}> = {ip}", d.names[a], d.names[b]));
                }
            }
        }
        Ok(CharacterTable {
            name: d.name,
            order: d.order,
            m: d.m,
            classes: d.classes,
            names: d.names,
            chars: d.chars,
            trivial: d.trivial,
            natural: d.natural,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec::Cyclotomic { m: self.m }
    }

    pub fn classes(&self) -> &[(String, u64)] {
        &self.classes
    }

    pub fn character_names(&self) -> &[String] {
        &self.names
    }

    pub fn characters(&self) -> &[Vec<Scalar>] {
        &self.chars
    }

    pub fn trivial(&self) -> usize {
        self.trivial
    }

    /// Values of the natural character `E`.
    pub fn natural_values(&self) -> &[Scalar] {
        &self.natural
    }

    /// Row of `E`, when `E` is irreducible.
    pub fn natural_index(&self) -> Option<usize> {
        self.chars.iter().position(|r| *r == self.natural)
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.chars.iter().map(|r| r[0].rational_part().unwrap().to_integer().to_i64().unwrap()).collect()
    }

    pub fn data(&self) -> TableData {
        TableData {
            name: self.name.clone(),
            order: self.order,
            m: self.m,
            classes: self.classes.clone(),
            names: self.names.clone(),
            chars: self.chars.clone(),
            trivial: self.trivial,
            natural: self.natural.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "order": self.order,
            "field": self.field(),
            "classes": self.classes.iter().map(|(l, s)| json!({"label": l, "size": s})).collect::<Vec<_>>(),
            "characters": self.names.iter().zip(&self.chars).map(|(n, row)| json!({
                "name": n,
                "values": row.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "trivial": self.trivial,
            "natural": self.natural.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }
}

/// `(1/|Γ|) Σ_c |c| χ_a(c) conj(χ_b(c))`.
fn inner(classes: &[(String, u64)], order: u64, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let f = a[0].field();
    let mut acc = Scalar::zero(f);
    for ((_, size), (x, y)) in classes.iter().zip(a.iter().zip(b)) {
        acc = &acc + &(&Scalar::from_i64(f, *size as i64) * &(x * &y.conj()));
    }
    let inv = Scalar::from_rational(f, &BigRational::new(BigInt::one(), BigInt::from(order))).unwrap();
    &acc * &inv
}

fn zeta_cos(m: u32, k: i64) -> Scalar {
    &Scalar::zeta(m, k) + &Scalar::zeta(m, -k)
}

/// Rows `S^k E` for `k = 0..=top`, from `χ_{S^{k+1}E} = χ_E χ_{S^k E} − χ_{S^{k−1}E}`.
fn symmetric_powers(e: &[Scalar], top: usize) -> Vec<Vec<Scalar>> {
    let f = e[0].field();
    let mut rows = vec![vec![Scalar::one(f); e.len()], e.to_vec()];
    while rows.len() <= top {
        let n = rows.len();
        let next = (0..e.len()).map(|c| &(&e[c] * &rows[n - 1][c]) - &rows[n - 2][c]).collect();
        rows.push(next);
    }
    rows.truncate(top + 1);
    rows
}

fn times(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

fn galois_row(a: &[Scalar], g: u32) -> Vec<Scalar> {
    a.iter().map(|x| x.galois(g).unwrap()).collect()
}

/// `Z/n` embedded as `diag(ζ, ζ⁻¹)`.
pub fn cyclic_table(n: u32) -> Result<CharacterTable> {
    if n == 0 {
        return Err(invalid("cyclic group order must be positive"));
    }
    let m = n;
    let classes = (0..n).map(|a| (format!("g^{a}"), 1)).collect();
    let chars: Vec<Vec<Scalar>> =
        (0..n as i64).map(|k| (0..n as i64).map(|a| Scalar::zeta(m, k * a)).collect()).collect();
    let names = (0..n).map(|k| format!("chi_{k}")).collect();
    // E = χ_1 + χ_{n−1} is reducible
    let natural = (0..n as i64).map(|a| zeta_cos(m, a)).collect();
    CharacterTable::new(TableData { name: format!("Z/{n}"), order: n as u64, m, classes, names, chars, trivial: 0, natural })
}

/// Binary dihedral group of order `4n`: `⟨a, b | a^{2n} = 1, b² = a^n, b a b⁻¹ = a⁻¹⟩`.
pub fn binary_dihedral_table(n: u32) -> Result<CharacterTable> {
    if n < 2 {
        return Err(invalid("binary dihedral groups need n >= 2"));
    }
    let m = num_integer::lcm(2 * n, 4);
    let f = FieldSpec::Cyclotomic { m };
    let z = (m / (2 * n)) as i64; // ζ_{2n} = ζ_m^z
    let mut classes = vec![("1".to_string(), 1), (format!("a^{n}"), 1)];
    for k in 1..n {
        classes.push((format!("a^{k}"), 2));
    }
    classes.push(("b".into(), n as u64));
    classes.push(("ba".into(), n as u64));
    // representative exponents: a^0, a^n, a^k; then b, ba
    let mut powers: Vec<i64> = vec![0, n as i64];
    powers.extend(1..n as i64);

    let mut names = Vec::new();
    let mut chars = Vec::new();
    let one = Scalar::one(f);
    for s in [1i64, -1] {
        // b² = a^n forces t² = s^n
        let t0 = if s == 1 || n % 2 == 0 { one.clone() } else { Scalar::zeta(m, (m / 4) as i64) };
        for t in [t0.clone(), -t0] {
            let sf = Scalar::from_i64(f, s);
            let mut row: Vec<Scalar> = powers.iter().map(|&k| sf.pow(k as u32)).collect();
            row.push(t.clone());
            row.push(&t * &sf);
            names.push(format!("1_{}", names.len()));
            chars.push(row);
        }
    }
    for h in 1..n as i64 {
        let mut row: Vec<Scalar> = powers.iter().map(|&k| zeta_cos(m, z * h * k)).collect();
        row.push(Scalar::zero(f));
        row.push(Scalar::zero(f));
        names.push(format!("2_{h}"));
        chars.push(row);
    }
    let natural = chars[4].clone();
    CharacterTable::new(TableData {
        name: format!("BD_{n}"),
        order: 4 * n as u64,
        m,
        classes,
        names,
        chars,
        trivial: 0,
        natural,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exceptional {
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl std::str::FromStr for Exceptional {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bt" => Ok(Exceptional::Tetrahedral),
            "bo" => Ok(Exceptional::Octahedral),
            "bi" => Ok(Exceptional::Icosahedral),
            other => Err(invalid(format!("unknown exceptional group {other}"))),
        }
    }
}

/// Class data for the exceptional groups: label, size, and `χ_E` as
/// `2 cos θ` of the rotation angle, given as an element of `Q(ζ_m)`.
fn exceptional_classes(kind: Exceptional) -> (u32, Vec<(&'static str, u64, Scalar)>) {
    let r = |m: u32, v: i64| Scalar::from_i64(FieldSpec::Cyclotomic { m }, v);
    match kind {
        Exceptional::Tetrahedral => {
            let m = 12;
            (m, vec![
                ("1", 1, r(m, 2)),
                ("-1", 1, r(m, -2)),
                ("4", 6, r(m, 0)),
                ("6a", 4, r(m, 1)),
                ("6b", 4, r(m, 1)),
                ("3a", 4, r(m, -1)),
                ("3b", 4, r(m, -1)),
            ])
        }
        Exceptional::Octahedral => {
            let m = 8;
            (m, vec![
                ("1", 1, r(m, 2)),
                ("-1", 1, r(m, -2)),
                ("4a", 6, r(m, 0)),
                ("8a", 6, zeta_cos(m, 1)),
                ("8b", 6, zeta_cos(m, 3)),
                ("6", 8, r(m, 1)),
                ("3", 8, r(m, -1)),
                ("4b", 12, r(m, 0)),
            ])
        }
        Exceptional::Icosahedral => {
            let m = 20;
            (m, vec![
                ("1", 1, r(m, 2)),
                ("-1", 1, r(m, -2)),
                ("4", 30, r(m, 0)),
                ("6", 20, r(m, 1)),
                ("3", 20, r(m, -1)),
                ("10a", 12, zeta_cos(m, 2)),
                ("10b", 12, zeta_cos(m, 6)),
                ("5a", 12, zeta_cos(m, 4)),
                ("5b", 12, zeta_cos(m, 8)),
            ])
        }
    }
}

/// Binary tetrahedral (24), octahedral (48) or icosahedral (120) group.
pub fn exceptional_table(kind: Exceptional) -> Result<CharacterTable> {
    let (m, classes) = exceptional_classes(kind);
    let f = FieldSpec::Cyclotomic { m };
    let e: Vec<Scalar> = classes.iter().map(|c| c.2.clone()).collect();
    let row = |v: &[i64]| -> Vec<Scalar> { v.iter().map(|&x| Scalar::from_i64(f, x)).collect() };
    let (name, order, names, chars): (&str, u64, Vec<&str>, Vec<Vec<Scalar>>) = match kind {
        Exceptional::Tetrahedral => {
            let s = symmetric_powers(&e, 2);
            let w = Scalar::zeta(m, 4);
            let w2 = Scalar::zeta(m, 8);
            let one = Scalar::one(f);
            // linear characters factor through BT/Q₈ = Z/3
            let lin = vec![one.clone(), one.clone(), one, w.clone(), w2.clone(), w, w2];
            let lin2: Vec<Scalar> = lin.iter().map(Scalar::conj).collect();
            let chars = vec![
                s[0].clone(),
                lin.clone(),
                lin2.clone(),
                s[1].clone(),
                times(&s[1], &lin),
                times(&s[1], &lin2),
                s[2].clone(),
            ];
            ("BT", 24, vec!["1", "1'", "1''", "2", "2'", "2''", "3"], chars)
        }
        Exceptional::Octahedral => {
            let s = symmetric_powers(&e, 3);
            // sign character of BO/BT, and the 2-dimensional character of BO/Q₈ = S₃
            let sign = row(&[1, 1, 1, -1, -1, 1, 1, -1]);
            let two = row(&[2, 2, 2, 0, 0, -1, -1, 0]);
            let chars = vec![
                s[0].clone(),
                sign.clone(),
                s[1].clone(),
                times(&s[1], &sign),
                two,
                s[2].clone(),
                times(&s[2], &sign),
                s[3].clone(),
            ];
            ("BO", 48, vec!["1", "1'", "2", "2'", "2''", "3", "3'", "4"], chars)
        }
        Exceptional::Icosahedral => {
            let s = symmetric_powers(&e, 5);
            // ζ₂₀ ↦ ζ₂₀⁷ sends ζ₅ to ζ₅², swapping the signs of √5
            let e2 = galois_row(&s[1], 7);
            let chars = vec![
                s[0].clone(),
                s[1].clone(),
                e2.clone(),
                s[2].clone(),
                galois_row(&s[2], 7),
                s[3].clone(),
                times(&s[1], &e2),
                s[4].clone(),
                s[5].clone(),
            ];
            ("BI", 120, vec!["1", "2", "2'", "3", "3'", "4", "4'", "5", "6"], chars)
        }
    };
    let natural = chars[names.iter().position(|&n| n == "2").unwrap()].clone();
    CharacterTable::new(TableData {
        name: name.into(),
        order,
        m,
        classes: classes.iter().map(|c| (c.0.to_string(), c.1)).collect(),
        names: names.into_iter().map(String::from).collect(),
        chars,
        trivial: 0,
        natural,
    })
}

/// Parses `cyclic:5`, `bd:3`, `bt`, `bo`, `bi`.
pub fn table_by_name(spec: &str) -> Result<CharacterTable> {
    let lower = spec.to_ascii_lowercase();
    let num = |s: &str| s.parse::<u32>().map_err(|_| Error::Parse(format!("bad group size in {spec}")));
    if let Some(n) = lower.strip_prefix("cyclic:") {
        cyclic_table(num(n)?)
    } else if let Some(n) = lower.strip_prefix("bd:") {
        binary_dihedral_table(num(n)?)
    } else {
        exceptional_table(lower.parse()?)
    }
}

/// `a_ij = (1/|Γ|) Σ_c |c| conj(χ_i(c)) χ_j(c) χ_E(c)`, checked to be a
/// nonnegative integer.
pub fn mckay_quiver(t: &CharacterTable) -> Result<IntMatrix> {
    mckay_from_rows(t.order, &t.classes, t.characters(), t.natural_values())
}

pub(crate) fn mckay_from_rows(
    order: u64,
    classes: &[(String, u64)],
    rows: &[Vec<Scalar>],
    e: &[Scalar],
) -> Result<IntMatrix> {
    let k = rows.len();
    let mut a = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..k {
            let prod = times(&rows[j], e);
            let val = inner(classes, order, &prod, &rows[i]);
            let q = val
                .rational_part()
                .map_err(|_| Error::CheckFailed(format!("a[{i}][{j}] = {val} is not rational")))?;
            if !q.is_integer() || q.is_negative() {
                return Err(Error::CheckFailed(format!("a[{i}][{j}] = {q} is not a nonnegative integer")));
            }
            a[i][j] = q.to_integer().to_i64().unwrap();
        }
    }
    for i in 0..k {
        for j in 0..i {
            if a[i][j] != a[j][i] {
                return Err(Error::CheckFailed(format!("McKay matrix is not symmetric at ({i}, {j})")));
            }
        }
    }
    Ok(a)
}

/// Degrees of the irreducible characters.
pub fn delta_vector(t: &CharacterTable) -> Vec<i64> {
    t.degrees()
}

/// The McKay quiver with a canonical orientation: `a_ij` edges from the
/// lower to the higher index and `a_ii / 2` loops, so its double has
/// adjacency `a`.
pub fn mckay_orientation(t: &CharacterTable) -> Result<Quiver> {
    let a = mckay_quiver(t)?;
    let labels = t.character_names().to_vec();
    let mut edges = Vec::new();
    for i in 0..a.len() {
        if a[i][i] % 2 != 0 {
            return Err(Error::CheckFailed(format!("odd loop count at vertex {i}")));
        }
        for k in 0..a[i][i] / 2 {
            edges.push(Edge { name: format!("l{i}_{k}"), tail: i, head: i });
        }
        for j in i + 1..a.len() {
            for k in 0..a[i][j] {
                edges.push(Edge { name: format!("e{i}_{j}_{k}"), tail: i, head: j });
            }
        }
    }
    Quiver::from_parts(labels, edges, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
    pub affine: bool,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        };
        if self.affine {
            write!(f, "affine {fam}_{}", self.rank)
        } else {
            write!(f, "{fam}_{}", self.rank)
        }
    }
}

fn empty(n: usize) -> IntMatrix {
    vec![vec![0; n]; n]
}

fn link(a: &mut IntMatrix, i: usize, j: usize) {
    a[i][j] += 1;
    a[j][i] += 1;
}

/// Star with arms of the given lengths; vertex 0 is the center.
fn star(arms: &[usize]) -> IntMatrix {
    let n = 1 + arms.iter().sum::<usize>();
    let mut a = empty(n);
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            link(&mut a, prev, next);
            prev = next;
            next += 1;
        }
    }
    a
}

/// Symmetric adjacency of a Dynkin diagram (doubled edges, loops count 2).
pub fn dynkin_graph(t: DynkinType) -> Option<IntMatrix> {
    let r = t.rank;
    let g = match (t.family, t.affine) {
        (Family::A, false) if r >= 1 => star(&[r - 1]),
        (Family::A, true) => match r {
            0 => vec![vec![2]],
            1 => vec![vec![0, 2], vec![2, 0]],
            _ => {
                let mut a = empty(r + 1);
                for i in 0..=r {
                    link(&mut a, i, (i + 1) % (r + 1));
                }
                a
            }
        },
        (Family::D, false) if r >= 4 => d_graph(r, false),
        (Family::D, true) if r >= 4 => d_graph(r, true),
        (Family::E, false) if (6..=8).contains(&r) => star(&[1, 2, r - 4]),
        (Family::E, true) => match r {
            6 => star(&[2, 2, 2]),
            7 => star(&[3, 3, 1]),
            8 => star(&[1, 2, 5]),
            _ => return None,
        },
        _ => return None,
    };
    Some(g)
}

/// `D_r`: path `0 … r−3` with two leaves at `0`; `D̃_r`: path `0 … r−4`
/// (at least one vertex) with two leaves at each end.
fn d_graph(r: usize, affine: bool) -> IntMatrix {
    let path = if affine { r - 3 } else { r - 2 };
    let n = if affine { r + 1 } else { r };
    let mut a = empty(n);
    for i in 1..path {
        link(&mut a, i - 1, i);
    }
    let mut next = path;
    let ends: &[usize] = if affine { &[0, 0, path - 1, path - 1] } else { &[path - 1, path - 1] };
    for &e in ends {
        link(&mut a, e, next);
        next += 1;
    }
    a
}

fn catalog(n: usize, affine: bool) -> Vec<DynkinType> {
    let mut out = Vec::new();
    for family in [Family::A, Family::D, Family::E] {
        for rank in 0..=10 {
            let t = DynkinType { family, rank, affine };
            if let Some(g) = dynkin_graph(t) {
                if g.len() == n {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn degree_signature(a: &IntMatrix) -> Vec<(i64, i64)> {
    let mut s: Vec<(i64, i64)> = a.iter().enumerate().map(|(i, r)| (r.iter().sum(), r[i])).collect();
    s.sort();
    s
}

/// A permutation `p` with `a[p i][p j] = b[i][j]`, found by backtracking.
pub fn isomorphism(a: &IntMatrix, b: &IntMatrix) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n || degree_signature(a) != degree_signature(b) {
        return None;
    }
    let deg = |m: &IntMatrix, i: usize| (m[i].iter().sum::<i64>(), m[i][i]);
    fn go(
        i: usize,
        a: &IntMatrix,
        b: &IntMatrix,
        p: &mut Vec<usize>,
        used: &mut Vec<bool>,
        deg: &dyn Fn(&IntMatrix, usize) -> (i64, i64),
    ) -> bool {
        let n = a.len();
        if i == n {
            return true;
        }
        for c in 0..n {
            if used[c] || deg(a, c) != deg(b, i) {
                continue;
            }
            if (0..i).all(|k| a[c][p[k]] == b[i][k]) && a[c][c] == b[i][i] {
                p.push(c);
                used[c] = true;
                if go(i + 1, a, b, p, used, deg) {
                    return true;
                }
                p.pop();
                used[c] = false;
            }
        }
        false
    }
    let mut p = Vec::with_capacity(n);
    let mut used = vec![false; n];
    go(0, a, b, &mut p, &mut used, &deg).then_some(p)
}

/// Identifies a symmetric adjacency matrix with a Dynkin diagram.
pub fn identify(a: &IntMatrix, affine: bool) -> Option<DynkinType> {
    catalog(a.len(), affine)
        .into_iter()
        .find(|&t| isomorphism(a, &dynkin_graph(t).unwrap()).is_some())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdeReport {
    pub affine_type: String,
    pub delta: Vec<i64>,
    /// `C δ` with `C = 2 Id − a`.
    pub c_delta: Vec<i64>,
    pub c_delta_zero: bool,
    pub delta_at_trivial: i64,
    /// Type of the diagram left after deleting the trivial vertex.
    pub finite_type: Option<String>,
}

/// Matches the McKay graph against the affine ADE catalog and checks
/// `C δ = 0`.
pub fn verify_ade(a: &IntMatrix, delta: &[i64], trivial: usize) -> Result<AdeReport> {
    let t = identify(a, true).ok_or_else(|| Error::CheckFailed("no affine ADE diagram matches".into()))?;
    let n = a.len();
    let c: IntMatrix = (0..n).map(|i| (0..n).map(|j| 2 * (i == j) as i64 - a[i][j]).collect()).collect();
    let c_delta = mat_vec(&c, delta);
    let keep: Vec<usize> = (0..n).filter(|&i| i != trivial).collect();
    let reduced: IntMatrix = keep.iter().map(|&i| keep.iter().map(|&j| a[i][j]).collect()).collect();
    let finite_type = if reduced.is_empty() { None } else { identify(&reduced, false).map(|t| t.to_string()) };
    Ok(AdeReport {
        affine_type: t.to_string(),
        delta: delta.to_vec(),
        c_delta_zero: c_delta.iter().all(|&x| x == 0),
        c_delta,
        delta_at_trivial: delta[trivial],
        finite_type,
    })
}

/// Builds the McKay quiver of a table and runs [`verify_ade`].
pub fn mckay_report(t: &CharacterTable) -> Result<AdeReport> {
    verify_ade(&mckay_quiver(t)?, &delta_vector(t), t.trivial())
}

/// Every table the library ships: `Z/n` for `n ≤ 8`, `BD_n` for `n ≤ 6`, BT, BO, BI.
pub fn shipped_tables() -> Result<Vec<CharacterTable>> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push(cyclic_table(n)?);
    }
    for n in 2..=6 {
        out.push(binary_dihedral_table(n)?);
    }
    for k in [Exceptional::Tetrahedral, Exceptional::Octahedral, Exceptional::Icosahedral] {
        out.push(exceptional_table(k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn affine(family: Family, rank: usize) -> String {
        DynkinType { family, rank, affine: true }.to_string()
    }

    #[test]
    fn cyclic_examples() {
        let t = cyclic_table(2).unwrap();
        let f = t.field();
        assert_eq!(t.natural_values(), &[Scalar::from_i64(f, 2), Scalar::from_i64(f, -2)]);
        let t = cyclic_table(1).unwrap();
        assert_eq!(t.natural_values(), &[Scalar::from_i64(t.field(), 2)]);
        assert_eq!(mckay_quiver(&t).unwrap(), vec![vec![2]]);
        assert!(cyclic_table(3).is_ok());
        assert_eq!(mckay_quiver(&cyclic_table(2).unwrap()).unwrap(), vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn cyclic_mckay_is_a_cycle() {
        for n in 3..=8usize {
            let a = mckay_quiver(&cyclic_table(n as u32).unwrap()).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let want = ((i + 1) % n == j || (j + 1) % n == i) as i64;
                    assert_eq!(a[i][j], want);
                }
            }
        }
    }

    #[test]
    fn quaternion_group() {
        let t = binary_dihedral_table(2).unwrap();
        assert_eq!(t.classes().len(), 5);
        assert_eq!(delta_vector(&t), vec![1, 1, 1, 1, 2]);
        let r = mckay_report(&t).unwrap();
        assert_eq!(r.affine_type, affine(Family::D, 4));
        assert!(r.c_delta_zero);
        assert_eq!(r.finite_type.as_deref(), Some("D_4"));
        let a = mckay_quiver(&t).unwrap();
        assert_eq!(a[4].iter().sum::<i64>(), 4);
    }

    #[test]
    fn every_shipped_table_gives_affine_ade() {
        for t in shipped_tables().unwrap() {
            let r = mckay_report(&t).unwrap();
            assert!(r.c_delta_zero, "{}", t.name());
            assert_eq!(r.delta_at_trivial, 1);
            assert!(t.characters()[t.trivial()].iter().all(Scalar::is_one));
            let expected = match t.name() {
                "BT" => affine(Family::E, 6),
                "BO" => affine(Family::E, 7),
                "BI" => affine(Family::E, 8),
                n if n.starts_with("Z/") => affine(Family::A, t.order() as usize - 1),
                n => affine(Family::D, n[3..].parse::<usize>().unwrap() + 2),
            };
            assert_eq!(r.affine_type, expected);
        }
    }

    #[test]
    fn icosahedral_degrees() {
        let t = exceptional_table(Exceptional::Icosahedral).unwrap();
        assert_eq!(t.classes().len(), 9);
        assert_eq!(delta_vector(&t).iter().map(|d| d * d).sum::<i64>(), 120);
    }

    #[test]
    fn corrupted_tables_are_rejected() {
        let mut d = binary_dihedral_table(3).unwrap().data();
        let f = FieldSpec::Cyclotomic { m: d.m };
        d.chars[5][2] = Scalar::from_i64(f, 7);
        assert!(matches!(CharacterTable::new(d), Err(Error::CheckFailed(_))));
        let mut d = exceptional_table(Exceptional::Tetrahedral).unwrap().data();
        d.classes[2].1 = 5;
        assert!(CharacterTable::new(d).is_err());
        // a non-integral McKay entry is reported rather than rounded
        let t = cyclic_table(3).unwrap();
        let mut e = t.natural_values().to_vec();
        e[1] = Scalar::from_i64(t.field(), 1);
        assert!(mckay_from_rows(3, t.classes(), t.characters(), &e).is_err());
    }

    #[test]
    fn affine_a1_kernel() {
        let a = vec![vec![0, 2], vec![2, 0]];
        let r = verify_ade(&a, &[1, 1], 0).unwrap();
        assert!(r.c_delta_zero);
        assert_eq!(r.affine_type, affine(Family::A, 1));
    }

    #[test]
    fn catalog_shapes() {
        for r in 4..=9 {
            let g = dynkin_graph(DynkinType { family: Family::D, rank: r, affine: false }).unwrap();
            assert_eq!(g.len(), r);
            let g = dynkin_graph(DynkinType { family: Family::D, rank: r, affine: true }).unwrap();
            assert_eq!(g.len(), r + 1);
        }
        // the three affine E diagrams are distinct trees
        let e6 = dynkin_graph(DynkinType { family: Family::E, rank: 6, affine: true }).unwrap();
        assert_eq!(e6.len(), 7);
        assert!(identify(&e6, true).is_some());
        assert!(identify(&vec![vec![0, 3], vec![3, 0]], true).is_none());
    }

    #[test]
    fn orientation_doubles_back() {
        let t = binary_dihedral_table(2).unwrap();
        let q = mckay_orientation(&t).unwrap();
        assert_eq!(q.double().adjacency(), mckay_quiver(&t).unwrap());
        let q = mckay_orientation(&cyclic_table(1).unwrap()).unwrap();
        assert_eq!(q.edges().len(), 1);
    }
}
