//! The `qv` command-line tool. Every subcommand prints one JSON report:
//!
//! ```json
//! {"command": [...], "inputs_digest": "<sha256>", "results": {...}, "seed": 0, "version": "0.1.0"}
//! ```
//!
//! Exit codes: 0 on success, 1 when a mathematical check fails, 2 on bad
//! input. Reports are written for codes 0 and 1; code 2 writes an error to
//! standard error instead.

use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use qv_core::acceptance;
use qv_core::adhm::{
    calogero_moser_check, ideal_from_triple, is_hilbert_point, j_kills_spin, joint_spectrum, monomial_name,
    power_traces, AdhmData,
};
use qv_core::convolution::{
    center_dimension, convolve, group_algebra, group_iso_check, hecke_algebra, FiniteKernel, GroupTable,
};
use qv_core::exactalg::parse_rational;
use qv_core::mckay::{mckay_orientation, mckay_report, table_by_name};
use qv_core::quiver::IntMatrix;
use qv_core::reps::{
    endomorphism_space, framed_endomorphism_space, invariant_subspaces_bruteforce, is_stable_minus, is_stable_plus,
    moment_residual, semistable_bruteforce, trace_signature, FramedRep, DEFAULT_SUBSPACE_LIMIT,
};
use qv_core::roots::{
    classify_cartan, gg_analysis, highest_weight, is_v_regular, p_value, rprime_below, weight_of, CartanType,
    Freudenthal, HKParam,
};
use qv_core::{DimVector, Error, Quiver};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser, Debug)]
#[command(name = "qv", version, about = "Exact computations with quiver varieties")]
struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derived quivers and matrices.
    Quiver {
        #[arg(value_enum)]
        action: QuiverAction,
        #[command(flatten)]
        input: QuiverInput,
        /// Framing vector for `cbframe`.
        #[arg(long)]
        w: Option<String>,
        /// Longest cycle for `cycles`.
        #[arg(long, default_value_t = 3)]
        maxlen: usize,
    },
    /// Closed-form dimension counts.
    Dims {
        #[command(flatten)]
        input: QuiverInput,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: Option<String>,
    },
    /// Roots, regularity, fiber components and weights.
    Roots {
        #[arg(value_enum)]
        action: RootsAction,
        #[command(flatten)]
        input: QuiverInput,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: Option<String>,
        /// One rational per vertex, e.g. `["1/2", 0]`.
        #[arg(long)]
        lambda: Option<String>,
        /// One integer per vertex.
        #[arg(long)]
        theta: Option<String>,
    },
    /// Checks on a concrete representation.
    Rep {
        #[arg(value_enum)]
        action: RepAction,
        /// Representation JSON; its `quiver` key may name the quiver.
        #[arg(long)]
        rep: String,
        /// Quiver, when the representation does not name one.
        #[arg(long)]
        quiver: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
        /// `plus`, `minus`, `zero` or a JSON list of integers.
        #[arg(long, default_value = "plus")]
        theta: String,
        /// Exit with 1 unless the verdict matches.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        #[arg(long, default_value_t = 3)]
        maxlen: usize,
    },
    /// The Jordan quiver with one-dimensional framing.
    Adhm {
        #[arg(value_enum)]
        action: AdhmAction,
        /// ADHM data JSON with keys `field`, `x`, `y`, `i`, `j`.
        #[arg(long)]
        data: String,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 3)]
        maxdeg: u32,
    },
    /// McKay quivers of finite subgroups of SL2.
    Mckay {
        #[arg(value_enum)]
        action: MckayAction,
        /// `cyclic:N`, `bd:N`, `bt`, `bo` or `bi`.
        #[arg(long)]
        group: String,
    },
    /// Convolution algebras.
    Conv {
        #[command(subcommand)]
        action: ConvAction,
    },
    /// Runs the acceptance suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u32>,
    },
}

#[derive(Args, Debug)]
struct QuiverInput {
    /// A JSON file, or one of `jordan`, `aN`, `cycleN`, `kroneckerN`.
    #[arg(long)]
    quiver: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum QuiverAction {
    Double,
    Frame,
    Cbframe,
    Adjacency,
    Cartan,
    Cycles,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RootsAction {
    List,
    Regular,
    Gg,
    Weight,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RepAction {
    Moment,
    Check,
    Stable,
    Traces,
    Brute,
    Endo,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Expect {
    Stable,
    Unstable,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AdhmAction {
    Check,
    Ideal,
    Spectrum,
    Traces,
    Cm,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MckayAction {
    Build,
    Table,
}

#[derive(Subcommand, Debug)]
enum ConvAction {
    /// Hecke algebra of GL_n(F_q) on pairs of complete flags.
    Hecke {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// Group algebra of a group given by its multiplication table.
    Group {
        #[arg(long)]
        table: String,
    },
    /// Convolution `K1 ∗ K2` of two kernels (`K2` is applied first).
    Mul {
        #[arg(long)]
        k1: String,
        #[arg(long)]
        k2: String,
    },
}

/// Exit code and the text for standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Input failures (exit 2) vs. failed checks (exit 1).
enum Failure {
    Input(String),
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn input<T>(msg: impl Into<String>) -> Res<T> {
    Err(Failure::Input(msg.into()))
}

/// Collects everything read so the report can carry a digest of it.
struct Ctx {
    hasher: Sha256,
}

impl Ctx {
    fn read(&mut self, path: &str) -> Res<String> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
        self.hasher.update(path.as_bytes());
        self.hasher.update([0]);
        self.hasher.update(text.as_bytes());
        self.hasher.update([0]);
        Ok(text)
    }

    fn read_json(&mut self, path: &str) -> Res<Value> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }

    fn quiver(&mut self, spec: &str) -> Res<Quiver> {
        if let Some(q) = builtin_quiver(spec) {
            return Ok(q);
        }
        if !Path::new(spec).exists() {
            return input(format!("{spec} is neither a file nor a built-in quiver"));
        }
        let v = self.read_json(spec)?;
        Ok(Quiver::from_json(&v)?)
    }

    fn quiver_value(&mut self, v: &Value) -> Res<Quiver> {
        match v {
            Value::String(s) => self.quiver(s),
            other => Ok(Quiver::from_json(other)?),
        }
    }
}

/// `jordan`, `aN`, `cycleN`, `kroneckerN` (case-insensitive, `:` allowed
/// before the number).
fn builtin_quiver(name: &str) -> Option<Quiver> {
    let name = name.to_ascii_lowercase().replace(':', "");
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0);
    if name == "jordan" {
        Some(Quiver::jordan())
    } else if name == "kronecker" {
        Some(Quiver::kronecker(2))
    } else if let Some(n) = num("kronecker") {
        Some(Quiver::kronecker(n))
    } else if let Some(n) = num("cycle") {
        Some(Quiver::cycle(n))
    } else {
        num("a").map(Quiver::type_a)
    }
}

fn parse_json(flag: &str, text: &str) -> Res<Value> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("--{flag}: {e}")))
}

fn dim_vector(q: &Quiver, flag: &str, text: &str) -> Res<DimVector> {
    Ok(DimVector::from_json(q, &parse_json(flag, text)?)?)
}

fn rationals(q: &Quiver, flag: &str, text: Option<&str>) -> Res<Vec<BigRational>> {
    let n = q.num_vertices();
    let Some(text) = text else {
        return Ok(vec![BigRational::from_integer(0.into()); n]);
    };
    let items = match parse_json(flag, text)? {
        Value::Array(items) => items,
        single if n == 1 => vec![single],
        _ => return input(format!("--{flag} needs a list of {n} rationals")),
    };
    if items.len() != n {
        return input(format!("--{flag} needs {n} entries"));
    }
    items
        .iter()
        .map(|x| match x {
            Value::String(s) => Ok(parse_rational(s)?),
            Value::Number(_) => Ok(parse_rational(&x.to_string())?),
            other => input(format!("--{flag}: cannot read {other}")),
        })
        .collect()
}

fn integers(flag: &str, text: &str, n: usize) -> Res<Vec<i64>> {
    let v: Vec<i64> = serde_json::from_value(parse_json(flag, text)?)
        .map_err(|e| Failure::Input(format!("--{flag}: {e}")))?;
    if v.len() != n {
        return input(format!("--{flag} needs {n} entries"));
    }
    Ok(v)
}

fn subspace_limit() -> Res<u128> {
    match std::env::var("QV_LIMIT") {
        Ok(s) => s.parse().map_err(|_| Failure::Input(format!("QV_LIMIT={s} is not a number"))),
        Err(_) => Ok(DEFAULT_SUBSPACE_LIMIT),
    }
}

fn cartan_name(t: CartanType) -> &'static str {
    match t {
        CartanType::Finite => "finite",
        CartanType::Affine => "affine",
        CartanType::Indefinite => "indefinite",
    }
}

fn int_matrix(m: &IntMatrix) -> Value {
    json!(m)
}

fn quiver_cmd(ctx: &mut Ctx, action: QuiverAction, spec: &str, w: Option<&str>, maxlen: usize) -> Res<Value> {
    let q = ctx.quiver(spec)?;
    Ok(match action {
        QuiverAction::Double => json!({"quiver": q.double().to_json()}),
        QuiverAction::Frame => json!({"quiver": q.frame().to_json()}),
        QuiverAction::Cbframe => {
            let Some(w) = w else { return input("cbframe needs --w") };
            let w = dim_vector(&q, "w", w)?;
            json!({"quiver": q.cb_frame(&w)?.to_json()})
        }
        QuiverAction::Adjacency => json!({"vertices": q.vertices(), "adjacency": int_matrix(&q.adjacency())}),
        QuiverAction::Cartan => {
            let c = q.cartan();
            json!({"vertices": q.vertices(), "cartan": int_matrix(&c), "type": cartan_name(classify_cartan(&c))})
        }
        QuiverAction::Cycles => {
            let cycles: Vec<String> = q.cycles(maxlen).iter().map(|c| q.cycle_name(c)).collect();
            json!({"maxlen": maxlen, "cycles": cycles})
        }
    })
}

fn dims_cmd(ctx: &mut Ctx, spec: &str, v: &str, w: Option<&str>) -> Res<Value> {
    let q = ctx.quiver(spec)?;
    let v = dim_vector(&q, "v", v)?;
    let w = w.map(|w| dim_vector(&q, "w", w)).transpose()?;
    let dims = q.dims(&v, w.as_ref())?;
    Ok(json!({
        "v": v.to_json(&q),
        "w": w.map(|w| w.to_json(&q)),
        "dims": dims,
        "nakajima_dim": dims.nakajima,
        "identity": "dim M(v, w) = 2 w.v - C v.v",
    }))
}

#[allow(clippy::too_many_arguments)]
fn roots_cmd(
    ctx: &mut Ctx,
    action: RootsAction,
    spec: &str,
    v: &str,
    w: Option<&str>,
    lambda: Option<&str>,
    theta: Option<&str>,
) -> Res<Value> {
    let q = ctx.quiver(spec)?;
    let n = q.num_vertices();
    let v = dim_vector(&q, "v", v)?;
    Ok(match action {
        RootsAction::List => {
            let roots: Vec<Value> = rprime_below(&q, &v)?
                .iter()
                .map(|a| json!({"alpha": a.as_slice(), "p": p_value(&q, a.as_slice())}))
                .collect();
            json!({"v": v.as_slice(), "p_v": p_value(&q, v.as_slice()), "roots": roots})
        }
        RootsAction::Regular => {
            let lambda = rationals(&q, "lambda", lambda)?;
            let theta = match theta {
                Some(t) => integers("theta", t, n)?,
                None => vec![0; n],
            };
            let reg = is_v_regular(&q, &HKParam::real(&lambda, &theta), &v)?;
            json!({"regular": reg.regular, "witness": reg.witness})
        }
        RootsAction::Gg => {
            let lambda = rationals(&q, "lambda", lambda)?;
            let report = gg_analysis(&q, &lambda, &v)?;
            json!({"report": report, "identity": "p(v) >= sum p(alpha_j) over decompositions of v"})
        }
        RootsAction::Weight => {
            let Some(w) = w else { return input("weight needs --w") };
            let w = dim_vector(&q, "w", w)?;
            let weight = weight_of(&q, &v, &w)?;
            let c = q.cartan();
            let multiplicity = if classify_cartan(&c) == CartanType::Finite && highest_weight(&q, &w)?.is_dominant() {
                let mut fr = Freudenthal::new(&c, &highest_weight(&q, &w)?)?;
                Some(fr.multiplicity(&weight)?)
            } else {
                None
            };
            json!({
                "weight": weight.0,
                "dominant": weight.is_dominant(),
                "highest_weight": highest_weight(&q, &w)?.0,
                "multiplicity": multiplicity,
                "identity": "weight = w - C v",
            })
        }
    })
}

fn theta_vector(text: &str, n: usize) -> Res<Vec<i64>> {
    Ok(match text {
        "plus" => vec![1; n],
        "minus" => vec![-1; n],
        "zero" => vec![0; n],
        other => integers("theta", other, n)?,
    })
}

fn scalar_list(pairs: &[(String, qv_core::Scalar)]) -> Value {
    Value::Object(pairs.iter().map(|(k, s)| (k.clone(), s.to_json())).collect())
}

#[allow(clippy::too_many_arguments)]
fn rep_cmd(
    ctx: &mut Ctx,
    action: RepAction,
    path: &str,
    quiver: Option<&str>,
    lambda: Option<&str>,
    theta: &str,
    expect: Option<Expect>,
    maxlen: usize,
) -> Res<Value> {
    let data = ctx.read_json(path)?;
    let q = match (quiver, data.get("quiver")) {
        (Some(spec), _) => ctx.quiver(spec)?,
        (None, Some(v)) => ctx.quiver_value(v)?,
        (None, None) => return input("the representation names no quiver; pass --quiver"),
    };
    let r = FramedRep::from_json(&q, &data)?;
    let n = r.quiver().num_vertices();
    let limit = subspace_limit()?;
    let result = match action {
        RepAction::Moment | RepAction::Check => {
            let lambda = rationals(&q, "lambda", lambda)?;
            let res = moment_residual(&r, &lambda)?;
            let zero = res.iter().all(|m| m.is_zero());
            let residual: serde_json::Map<String, Value> =
                r.quiver().vertices().iter().cloned().zip(res.iter().map(|m| m.to_json())).collect();
            let out = json!({
                "residual": residual,
                "residual_zero": zero,
                "identity": "sum [x, x*] + i j - lambda = 0 at every vertex",
            });
            if matches!(action, RepAction::Check) && !zero {
                return Err(Failure::Check(out));
            }
            out
        }
        RepAction::Stable => {
            let theta_v = theta_vector(theta, n)?;
            let fast = match theta {
                "plus" => Some(is_stable_plus(&r)),
                "minus" => Some(is_stable_minus(&r)),
                _ => None,
            };
            // brute force needs a finite field; at ±θ⁺ the fast test decides alone
            let brute = match semistable_bruteforce(&r, &theta_v, limit) {
                Ok(b) => Some(b),
                Err(Error::Unsupported(_)) if fast.is_some() => None,
                Err(e) => return Err(e.into()),
            };
            let (semistable, stable) = match (&brute, fast) {
                (Some(b), _) => (b.semistable, b.stable),
                (None, Some(f)) => (f, f),
                (None, None) => unreachable!(),
            };
            let witness = brute
                .as_ref()
                .and_then(|b| b.witness.as_ref())
                .map(|w| json!({"dims": w.subspace.dims(), "condition": w.condition}));
            let out = json!({
                "theta": theta_v,
                "semistable": semistable,
                "stable": stable,
                "fast_verdict": fast,
                "brute_force": brute.is_some(),
                "witness": witness,
            });
            if fast.is_some_and(|f| f != semistable) {
                return Err(Failure::Check(out));
            }
            match expect {
                Some(Expect::Stable) if !stable => return Err(Failure::Check(out)),
                Some(Expect::Unstable) if stable => return Err(Failure::Check(out)),
                _ => out,
            }
        }
        RepAction::Traces => {
            json!({"maxlen": maxlen, "traces": scalar_list(&trace_signature(r.rep(), maxlen))})
        }
        RepAction::Brute => {
            let subs = invariant_subspaces_bruteforce(r.rep(), limit)?;
            let dims: Vec<Vec<i64>> = subs.iter().map(|s| s.dims()).collect();
            json!({"count": subs.len(), "dims": dims})
        }
        RepAction::Endo => json!({
            "endomorphisms": endomorphism_space(r.rep()).dim,
            "framed_endomorphisms": framed_endomorphism_space(&r).dim,
        }),
    };
    Ok(result)
}

fn adhm_cmd(ctx: &mut Ctx, action: AdhmAction, path: &str, lambda: Option<&str>, maxdeg: u32) -> Res<Value> {
    let d = AdhmData::from_json(&ctx.read_json(path)?)?;
    Ok(match action {
        AdhmAction::Check => {
            let out = json!({
                "n": d.n,
                "commuting": d.commutator().is_zero(),
                "j_zero": d.j.is_zero(),
                "j_kills_spin": j_kills_spin(&d),
                "hilbert_point": is_hilbert_point(&d),
            });
            if !is_hilbert_point(&d) {
                return Err(Failure::Check(out));
            }
            out
        }
        AdhmAction::Ideal => {
            let view = ideal_from_triple(&d)?;
            json!({"ideal": view, "generators": view.generators()})
        }
        AdhmAction::Spectrum => {
            let points: Vec<Value> = joint_spectrum(&d.x, &d.y)?
                .iter()
                .map(|(a, b)| json!([a.to_json(), b.to_json()]))
                .collect();
            json!({"spectrum": points})
        }
        AdhmAction::Traces => {
            let t = power_traces(&d.x, &d.y, maxdeg)?;
            let table: serde_json::Map<String, Value> =
                t.table.iter().map(|(&m, s)| (monomial_name(m), s.to_json())).collect();
            json!({"traces": table, "spectrum_checked": t.spectrum_checked})
        }
        AdhmAction::Cm => {
            let Some(text) = lambda else { return input("cm needs --lambda") };
            let value = parse_json("lambda", text)?;
            let l = match &value {
                Value::String(s) => parse_rational(s)?,
                Value::Number(_) => parse_rational(&value.to_string())?,
                _ => return input("--lambda must be a rational"),
            };
            let report = calogero_moser_check(&d, &l)?;
            let out = json!({"report": report, "identity": "[x, y] + i j = lambda Id, dimension 2n"});
            if !report.passed {
                return Err(Failure::Check(out));
            }
            out
        }
    })
}

fn mckay_cmd(action: MckayAction, group: &str) -> Res<Value> {
    let t = table_by_name(group)?;
    Ok(match action {
        MckayAction::Build => {
            let report = mckay_report(&t)?;
            let out = json!({
                "group": t.name(),
                "order": t.order(),
                "quiver": mckay_orientation(&t)?.to_json(),
                "delta": report.delta,
                "report": report,
                "identity": "a_ij = multiplicity of L_i in L_j (x) E; C delta = 0",
            });
            if !report.c_delta_zero {
                return Err(Failure::Check(out));
            }
            out
        }
        MckayAction::Table => json!({"table": t.to_json()}),
    })
}

fn conv_cmd(ctx: &mut Ctx, action: &ConvAction) -> Res<Value> {
    Ok(match action {
        ConvAction::Hecke { n, q } => {
            let h = hecke_algebra(*n, *q)?;
            let relations: Vec<Value> = (1..*n)
                .map(|i| json!({"generator": h.simple_reflection(i), "relation": h.relation_string(i)}))
                .collect();
            json!({
                "n": n,
                "q": q,
                "group_order": h.group_order,
                "flags": h.flags,
                "orbits": h.algebra.dim(),
                "labels": h.labels,
                "structure_constants": h.algebra.structure,
                "relations": relations,
                "relation": h.relation_string(1),
            })
        }
        ConvAction::Group { table } => {
            let g = GroupTable::from_json(&ctx.read_json(table)?)?;
            let ga = group_algebra(&g);
            let iso = group_iso_check(&g)?;
            let out = json!({
                "order": g.order(),
                "center_dimension": center_dimension(&ga.structure),
                "conjugacy_classes": g.class_count(),
                "invariant_algebra": iso,
                "identity": "C[G] = C[G x G]^G via (g1, g2) -> g1^-1 g2",
            });
            if !iso.matches {
                return Err(Failure::Check(out));
            }
            out
        }
        ConvAction::Mul { k1, k2 } => {
            let a = FiniteKernel::from_json(&ctx.read_json(k1)?)?;
            let b = FiniteKernel::from_json(&ctx.read_json(k2)?)?;
            json!({"kernel": convolve(&a, &b)?.to_json()})
        }
    })
}

fn selftest(seed: u64, only: Option<u32>) -> Res<Value> {
    let results = match only {
        Some(id) => match acceptance::run(id, seed) {
            Some(r) => vec![r],
            None => return input(format!("no criterion {id}")),
        },
        None => acceptance::run_all(seed),
    };
    let passed = results.iter().all(|r| r.passed);
    let out = json!({"passed": passed, "criteria": results});
    if passed {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

fn dispatch(ctx: &mut Ctx, cli: &Cli) -> Res<Value> {
    match &cli.command {
        Command::Quiver { action, input, w, maxlen } => quiver_cmd(ctx, *action, &input.quiver, w.as_deref(), *maxlen),
        Command::Dims { input, v, w } => dims_cmd(ctx, &input.quiver, v, w.as_deref()),
        Command::Roots { action, input, v, w, lambda, theta } => {
            roots_cmd(ctx, *action, &input.quiver, v, w.as_deref(), lambda.as_deref(), theta.as_deref())
        }
        Command::Rep { action, rep, quiver, lambda, theta, expect, maxlen } => {
            rep_cmd(ctx, *action, rep, quiver.as_deref(), lambda.as_deref(), theta, *expect, *maxlen)
        }
        Command::Adhm { action, data, lambda, maxdeg } => adhm_cmd(ctx, *action, data, lambda.as_deref(), *maxdeg),
        Command::Mckay { action, group } => mckay_cmd(*action, group),
        Command::Conv { action } => conv_cmd(ctx, action),
        Command::Selftest { only } => selftest(cli.seed, *only),
    }
}

/// Runs `qv` on `argv` (including the program name).
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    let mut ctx = Ctx { hasher: Sha256::new() };
    let args = &argv[1.min(argv.len())..];
    for a in args {
        ctx.hasher.update(a.as_bytes());
        ctx.hasher.update([0]);
    }
    let (code, results) = match dispatch(&mut ctx, &cli) {
        Ok(v) => (0, v),
        Err(Failure::Check(v)) => (1, v),
        Err(Failure::Input(msg)) => {
            return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") };
        }
    };
    let report = json!({
        "command": args,
        "inputs_digest": hex::encode(ctx.hasher.finalize()),
        "results": results,
        "seed": cli.seed,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let mut stdout = serde_json::to_string_pretty(&report).expect("reports serialize");
    stdout.push('\n');
    Outcome { code, stdout, stderr: String::new() }
}
