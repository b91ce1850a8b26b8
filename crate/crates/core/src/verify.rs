//! Identity checks as exact pass/fail trials.
//!
//! Every check evaluates an identity at sampled or enumerated points and
//! compares against zero exactly. Sampled points come from
//! [`trial_rng`](crate::exec::trial_rng), keyed by the master seed, the check
//! id and the attempt index, so a report depends only on its inputs. Points
//! outside an identity's domain are rejected and resampled, up to
//! `100 × trials` attempts; a check that cannot collect enough valid points
//! reports [`Verdict::InsufficientSamples`] rather than passing.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bloch::{pentagon_arguments, zero_test_rational, WedgeLedger, ZeroVerdict};
use crate::cluster::{check_periodicity, Pattern};
use crate::dilog::{
    li2p, li2p_via_lift, li_closed_form_series, li_direct, li_via_lift, pounds1, ClosedForm,
    DilogParams, DualNumber,
};
use crate::error::{Error, Result};
use crate::exec::{trial_rng, Execution};
use crate::fields::{random_element, Field, FieldElement};
use crate::series::TruncatedSeries;

/// A characteristic-0 dilogarithm implementation.
pub type LiFn = fn(DilogParams, &TruncatedSeries) -> Result<FieldElement>;
/// A characteristic-p dilogarithm implementation on dual numbers.
pub type Li2pFn = fn(&DualNumber) -> Result<FieldElement>;

/// Largest point space enumerated exhaustively by [`Sampling::Auto`].
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;
/// Resampling budget as a multiple of the requested trials.
pub const RESAMPLE_FACTOR: usize = 100;
const MAX_WITNESSES: usize = 5;

/// Master seed, execution strategy and the dilogarithms under test.
#[derive(Clone, Copy)]
pub struct CheckContext {
    pub seed: u64,
    pub exec: Execution,
    pub li: LiFn,
    pub li2p: Li2pFn,
}

impl fmt::Debug for CheckContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CheckContext")
            .field("seed", &self.seed)
            .field("exec", &self.exec)
            .finish_non_exhaustive()
    }
}

impl CheckContext {
    pub fn new(seed: u64) -> Self {
        CheckContext {
            seed,
            exec: Execution::default(),
            li: li_direct,
            li2p,
        }
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    /// Swaps in other dilogarithm implementations (used to confirm that the
    /// checks catch a broken one).
    pub fn with_dilogs(mut self, li: LiFn, li2p: Li2pFn) -> Self {
        self.li = li;
        self.li2p = li2p;
        self
    }

    fn rng(&self, id: &str, index: u64) -> ChaCha8Rng {
        trial_rng(self.seed, id, index)
    }
}

/// `ℓi_{m,w}` scaled by the constant term: still zero on constants, no
/// longer satisfies any of the linear identities.
pub fn corrupted_li(params: DilogParams, a: &TruncatedSeries) -> Result<FieldElement> {
    Ok(&li_direct(params, a)? * a.constant_term())
}

/// `ℓi₂^(p)` scaled by `y̲`.
pub fn corrupted_li2p(y: &DualNumber) -> Result<FieldElement> {
    Ok(&li2p(y)? * &y.s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    Random {
        trials: usize,
    },
    Exhaustive,
    /// Exhaustive when the point space has at most [`EXHAUSTIVE_LIMIT`]
    /// elements, random otherwise.
    Auto {
        trials: usize,
    },
}

enum Plan {
    Random(usize),
    Exhaustive(u64),
}

impl Sampling {
    fn plan(self, space: Option<u64>) -> Result<Plan> {
        match (self, space) {
            (Sampling::Random { trials }, _) => Ok(Plan::Random(trials)),
            (Sampling::Exhaustive, Some(n)) => Ok(Plan::Exhaustive(n)),
            (Sampling::Exhaustive, None) => Err(Error::Parse(
                "exhaustive enumeration needs a finite point space".into(),
            )),
            (Sampling::Auto { .. }, Some(n)) if n <= EXHAUSTIVE_LIMIT => Ok(Plan::Exhaustive(n)),
            (Sampling::Auto { trials }, _) => Ok(Plan::Random(trials)),
        }
    }
}

/// Size of `F_p^dim`, if it fits.
fn point_space(field: Field, dim: u32) -> Option<u64> {
    field.order()?.checked_pow(dim)
}

/// The `index`-th point of `F_p^dim` in lexicographic order.
fn enumerate_point(field: Field, dim: usize, mut index: u64) -> Vec<FieldElement> {
    let p = field.order().expect("prime field");
    let mut digits = vec![field.zero(); dim];
    for d in digits.iter_mut().rev() {
        *d = field.from_i64((index % p) as i64);
        index /= p;
    }
    digits
}

/// Inputs and residual of a failed trial, in the series text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub value: String,
}

impl Witness {
    fn new<I, S>(inputs: I, value: impl fmt::Display) -> Self
    where
        I: IntoIterator<Item = S>,
        S: fmt::Display,
    {
        Witness {
            inputs: inputs.into_iter().map(|s| s.to_string()).collect(),
            value: value.to_string(),
        }
    }
}

enum Trial {
    Rejected,
    Pass,
    Fail(Witness),
    Inconclusive(Witness),
}

impl Trial {
    fn zero_or_fail<S: fmt::Display>(value: FieldElement, inputs: &[S]) -> Trial {
        if value.is_zero() {
            Trial::Pass
        } else {
            Trial::Fail(Witness::new(inputs, value))
        }
    }
}

#[derive(Debug, Default)]
struct Tally {
    attempted: usize,
    valid: usize,
    rejected: usize,
    failed: usize,
    inconclusive: usize,
    witnesses: Vec<Witness>,
}

impl Tally {
    fn record(&mut self, t: Trial) {
        self.attempted += 1;
        match t {
            Trial::Rejected => self.rejected += 1,
            Trial::Pass => self.valid += 1,
            Trial::Fail(w) => {
                self.valid += 1;
                self.failed += 1;
                if self.witnesses.len() < MAX_WITNESSES {
                    self.witnesses.push(w);
                }
            }
            Trial::Inconclusive(w) => {
                self.valid += 1;
                self.inconclusive += 1;
                if self.witnesses.len() < MAX_WITNESSES {
                    self.witnesses.push(w);
                }
            }
        }
    }
}

fn sample<F>(ctx: &CheckContext, id: &str, trials: usize, f: F) -> Tally
where
    F: Fn(&mut ChaCha8Rng) -> Trial + Sync + Send,
{
    let cap = (trials.saturating_mul(RESAMPLE_FACTOR)).max(1) as u64;
    let mut tally = Tally::default();
    let mut next = 0u64;
    while tally.valid < trials && next < cap {
        let want = ((trials - tally.valid) * 2).max(16) as u64;
        let end = (next + want).min(cap);
        let results = ctx.exec.map(next..end, |i| f(&mut ctx.rng(id, i)));
        next = end;
        for r in results {
            if tally.valid >= trials {
                break;
            }
            tally.record(r);
        }
    }
    tally
}

fn enumerate<F>(ctx: &CheckContext, total: u64, f: F) -> Tally
where
    F: Fn(u64) -> Trial + Sync + Send,
{
    let mut tally = Tally::default();
    for r in ctx.exec.map(0..total, f) {
        tally.record(r);
    }
    tally
}

/// Runs `point` either over random draws or over an enumeration of `F_p^dim`.
fn drive<F>(
    ctx: &CheckContext,
    id: &str,
    plan: Plan,
    field: Field,
    dim: usize,
    point: F,
) -> (Tally, usize)
where
    F: Fn(Vec<FieldElement>) -> Trial + Sync + Send,
{
    match plan {
        Plan::Random(trials) => (
            sample(ctx, id, trials, |rng| {
                let coords = (0..dim).map(|_| random_element(field, rng, 1)).collect();
                point(coords)
            }),
            trials,
        ),
        Plan::Exhaustive(total) => {
            let tally = enumerate(ctx, total, |i| point(enumerate_point(field, dim, i)));
            (tally, 0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    InsufficientSamples,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::InsufficientSamples => "INSUFFICIENT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub required: usize,
    pub attempted: usize,
    pub valid: usize,
    pub rejected: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub witnesses: Vec<Witness>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    fn from_tally(name: &str, params: Value, required: usize, tally: Tally) -> Self {
        let verdict = if tally.failed > 0 {
            Verdict::Fail
        } else if tally.inconclusive > 0 {
            Verdict::Inconclusive
        } else if tally.valid < required {
            Verdict::InsufficientSamples
        } else {
            Verdict::Pass
        };
        let params = match params {
            Value::Object(map) => map.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        let valid = tally.valid;
        CheckReport {
            name: name.to_string(),
            params,
            required,
            attempted: tally.attempted,
            valid: tally.valid,
            rejected: tally.rejected,
            failed: tally.failed,
            inconclusive: tally.inconclusive,
            witnesses: tally.witnesses,
            verdict,
            notes: if required == 0 && valid == 0 {
                vec!["vacuous: the enumerated space has no valid points".into()]
            } else {
                Vec::new()
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn id(&self) -> String {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!("{}[{}]", self.name, params.join(","))
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} valid={}", self.verdict, self.id(), self.valid)?;
        if self.required > 0 {
            write!(f, "/{}", self.required)?;
        }
        write!(
            f,
            " attempted={} rejected={} failed={}",
            self.attempted, self.rejected, self.failed
        )?;
        if self.inconclusive > 0 {
            write!(f, " inconclusive={}", self.inconclusive)?;
        }
        for n in &self.notes {
            write!(f, "\n    note: {n}")?;
        }
        for w in &self.witnesses {
            write!(f, "\n    witness: ({}) -> {}", w.inputs.join("; "), w.value)?;
        }
        Ok(())
    }
}

fn dual(s: &FieldElement, alpha: &FieldElement) -> TruncatedSeries {
    TruncatedSeries::new(s.field(), vec![s.clone(), alpha.clone()]).expect("same field")
}

fn ids<T: fmt::Display>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// `ℓi_{m,w}` against its explicit formula.
pub fn check_closed_form(
    ctx: &CheckContext,
    which: ClosedForm,
    trials: usize,
    height: u64,
) -> CheckReport {
    let params = which.params();
    let id = format!("closed_form{params}");
    let tally = sample(ctx, &id, trials, |rng| {
        let a = TruncatedSeries::random(Field::Rational, params.m(), rng, height);
        if a.is_flat().is_none() {
            return Trial::Rejected;
        }
        match ((ctx.li)(params, &a), li_closed_form_series(which, &a)) {
            (Ok(x), Ok(y)) if x == y => Trial::Pass,
            (Ok(x), Ok(y)) => Trial::Fail(Witness::new([&a], &x - &y)),
            (Err(e), _) | (_, Err(e)) => Trial::Fail(Witness::new([&a], e)),
        }
    });
    CheckReport::from_tally(
        "closed_form",
        json!({"m": params.m(), "w": params.w(), "height": height, "trials": trials}),
        trials,
        tally,
    )
}

/// Which dilogarithm the pentagon check evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PentagonMode {
    CharZero(DilogParams),
    CharP(u64),
}

/// The five-term alternating sum at `(a, b)`, or `None` if `(a, b)` is
/// outside the domain.
pub fn pentagon_sum(
    ctx: &CheckContext,
    mode: PentagonMode,
    a: &TruncatedSeries,
    b: &TruncatedSeries,
) -> Result<Option<FieldElement>> {
    let Ok(args) = pentagon_arguments(a, b) else {
        return Ok(None);
    };
    let mut acc = a.field().zero();
    for (sign, arg) in [1, -1, 1, -1, 1].into_iter().zip(args.iter()) {
        let v = match mode {
            PentagonMode::CharZero(p) => (ctx.li)(p, arg)?,
            PentagonMode::CharP(_) => (ctx.li2p)(&DualNumber::from_series(arg))?,
        };
        acc = &acc + &v.scale_int(sign);
    }
    Ok(Some(acc))
}

/// `[a] - [b] + [b/a] - [(1-a⁻¹)/(1-b⁻¹)] + [(1-a)/(1-b)]` maps to zero.
pub fn check_pentagon(
    ctx: &CheckContext,
    mode: PentagonMode,
    sampling: Sampling,
    height: u64,
) -> Result<CheckReport> {
    let (field, precision, params) = match mode {
        PentagonMode::CharZero(p) => (
            Field::Rational,
            p.m(),
            json!({"m": p.m(), "w": p.w(), "height": height}),
        ),
        PentagonMode::CharP(p) => (Field::prime(p)?, 2, json!({"p": p})),
    };
    let id = format!("pentagon{mode:?}");
    let eval = |a: TruncatedSeries, b: TruncatedSeries| match pentagon_sum(ctx, mode, &a, &b) {
        Ok(None) => Trial::Rejected,
        Ok(Some(v)) => Trial::zero_or_fail(v, &[a, b]),
        Err(e) => Trial::Fail(Witness::new([a, b], e)),
    };
    let (tally, required) = match (mode, sampling.plan(point_space(field, 4))?) {
        (PentagonMode::CharZero(_), Plan::Random(trials)) => (
            sample(ctx, &id, trials, |rng| {
                let a = TruncatedSeries::random(field, precision, rng, height);
                let b = TruncatedSeries::random(field, precision, rng, height);
                eval(a, b)
            }),
            trials,
        ),
        (PentagonMode::CharZero(_), Plan::Exhaustive(_)) => {
            unreachable!("Q has no finite point space")
        }
        (PentagonMode::CharP(_), plan) => drive(ctx, &id, plan, field, 4, |c| {
            eval(dual(&c[0], &c[1]), dual(&c[2], &c[3]))
        }),
    };
    Ok(CheckReport::from_tally("pentagon", params, required, tally))
}

/// `Σ_j θ_{r_j}·ℓi_{m,w}(-α_{r_j}[j])` along the pattern's schedule from
/// `y0`, or `None` when the trajectory or a flatness condition fails.
pub fn cluster_sum_char0(
    ctx: &CheckContext,
    pattern: &Pattern,
    params: DilogParams,
    y0: Vec<TruncatedSeries>,
) -> Result<Option<FieldElement>> {
    let theta = pattern.theta();
    let Ok(traj) = pattern.run(y0) else {
        return Ok(None);
    };
    let mut acc = Field::Rational.zero();
    for (r, alpha) in traj.values() {
        let beta = -alpha;
        if beta.is_flat().is_none() {
            return Ok(None);
        }
        let v = (ctx.li)(params, &beta)?;
        acc = &acc + &v.scale_int(theta[r] as i64);
    }
    Ok(Some(acc))
}

fn require_periodic(ctx: &CheckContext, pattern: &Pattern) -> Result<()> {
    let mut rng = ctx.rng(&format!("periodic-precondition:{}", pattern.name), 0);
    let verdict = check_periodicity(pattern, 20, Field::Rational, 10, &mut rng);
    if verdict.periodic {
        Ok(())
    } else {
        Err(Error::InvalidSchedule(format!(
            "pattern {} is not periodic under nu = {:?}",
            pattern.name, pattern.schedule.nu
        )))
    }
}

/// Cluster identity for `ℓi_{m,w}` over `Q` at random points of `(k_m)^n`.
pub fn check_cluster_char0(
    ctx: &CheckContext,
    pattern: &Pattern,
    params: DilogParams,
    trials: usize,
    height: u64,
) -> Result<CheckReport> {
    require_periodic(ctx, pattern)?;
    let id = format!("cluster0:{}:{params}", pattern.name);
    let tally = sample(ctx, &id, trials, |rng| {
        let y0: Vec<TruncatedSeries> = (0..pattern.rank())
            .map(|_| TruncatedSeries::random(Field::Rational, params.m(), rng, height))
            .collect();
        match cluster_sum_char0(ctx, pattern, params, y0.clone()) {
            Ok(None) => Trial::Rejected,
            Ok(Some(v)) => Trial::zero_or_fail(v, &y0),
            Err(e) => Trial::Fail(Witness::new(&y0, e)),
        }
    });
    Ok(CheckReport::from_tally(
        "cluster",
        json!({"pattern": pattern.name, "m": params.m(), "w": params.w(), "theta": pattern.theta(), "height": height}),
        trials,
        tally,
    ))
}

/// Both phrasings of the characteristic-p cluster sum:
/// `Σ θ·ℓi₂^(p)(β_j)` and `Σ θ·β̄_j^p £₁(β̲_j)` with `β_j = -α_{r_j}[j]`.
pub fn cluster_sums_charp(
    ctx: &CheckContext,
    pattern: &Pattern,
    y0: Vec<TruncatedSeries>,
) -> Result<Option<(FieldElement, FieldElement)>> {
    let field = y0[0].field();
    let Field::Prime(p) = field else {
        return Err(Error::RequiresPrimeField);
    };
    let theta = pattern.theta();
    let Ok(traj) = pattern.run(y0) else {
        return Ok(None);
    };
    let (mut via_li, mut via_pounds) = (field.zero(), field.zero());
    for (r, alpha) in traj.values() {
        let beta = DualNumber::from_series(&-alpha);
        if !beta.is_flat() {
            return Ok(None);
        }
        let c = theta[r] as i64;
        via_li = &via_li + &(ctx.li2p)(&beta)?.scale_int(c);
        let rephrased = &beta.overline()?.pow(p) * &pounds1(beta.underline())?;
        via_pounds = &via_pounds + &rephrased.scale_int(c);
    }
    Ok(Some((via_li, via_pounds)))
}

/// Cluster identity for `ℓi₂^(p)` over dual numbers of `F_p`.
pub fn check_cluster_charp(
    ctx: &CheckContext,
    pattern: &Pattern,
    p: u64,
    sampling: Sampling,
) -> Result<CheckReport> {
    let field = Field::prime(p)?;
    require_periodic(ctx, pattern)?;
    let n = pattern.rank();
    let id = format!("cluster_p:{}:{p}", pattern.name);
    let plan = sampling.plan(point_space(field, 2 * n as u32))?;
    let exhaustive = matches!(plan, Plan::Exhaustive(_));
    let (tally, required) = drive(ctx, &id, plan, field, 2 * n, |c| {
        let y0: Vec<TruncatedSeries> = (0..n).map(|i| dual(&c[2 * i], &c[2 * i + 1])).collect();
        match cluster_sums_charp(ctx, pattern, y0.clone()) {
            Ok(None) => Trial::Rejected,
            Ok(Some((a, b))) if a.is_zero() && b.is_zero() => Trial::Pass,
            Ok(Some((a, b))) => {
                Trial::Fail(Witness::new(&y0, format!("li2p-sum={a}, pounds-sum={b}")))
            }
            Err(e) => Trial::Fail(Witness::new(&y0, e)),
        }
    });
    Ok(CheckReport::from_tally(
        "cluster_p",
        json!({"pattern": pattern.name, "p": p, "theta": pattern.theta(), "exhaustive": exhaustive}),
        required,
        tally,
    ))
}

/// Named characteristic-p identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedIdentity {
    /// `£₁(r) - £₁(s) + r^p £₁(s/r) + (s-1)^p £₁((1-r)/(1-s)) = 0`.
    FourTerm,
    /// The A2 five-term relation in `y₁, y₂`.
    A2FiveTermCharP,
    /// `ℓi₂^(p)(1-z) + ℓi₂^(p)(z) = 0`.
    Elementary,
    /// `ℓi₂^(p)(y⁻¹) + ℓi₂^(p)(y) = 0`.
    Involution,
    /// The pentagon at `x = r + r(1-r)t`, `y = s + s(1-s)t`.
    A2PentagonSubstitution,
    /// The explicit closed form of the B2 identity compared with the generic
    /// B2 cluster sum at `y_i = r_i + r_i(1-r_i)t`, `α_i = -y_i`.
    B2Printed,
}

impl NamedIdentity {
    pub const ALL: [NamedIdentity; 6] = [
        NamedIdentity::FourTerm,
        NamedIdentity::A2FiveTermCharP,
        NamedIdentity::Elementary,
        NamedIdentity::Involution,
        NamedIdentity::A2PentagonSubstitution,
        NamedIdentity::B2Printed,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NamedIdentity::FourTerm => "four_term",
            NamedIdentity::A2FiveTermCharP => "a2_five_term_charp",
            NamedIdentity::Elementary => "elementary",
            NamedIdentity::Involution => "involution",
            NamedIdentity::A2PentagonSubstitution => "a2_pentagon_substitution",
            NamedIdentity::B2Printed => "b2_printed",
        }
    }

    pub fn from_name(name: &str) -> Option<NamedIdentity> {
        Self::ALL.into_iter().find(|n| n.name() == name)
    }

    fn dim(&self) -> usize {
        match self {
            NamedIdentity::FourTerm
            | NamedIdentity::A2PentagonSubstitution
            | NamedIdentity::B2Printed => 2,
            NamedIdentity::Elementary | NamedIdentity::Involution => 2,
            NamedIdentity::A2FiveTermCharP => 4,
        }
    }
}

/// `£₁(r) - £₁(s) + r^p £₁(s/r) + (s-1)^p £₁((1-r)/(1-s))`, `None` off the
/// domain `r, s, 1-r, 1-s, r-s ≠ 0`.
pub fn four_term(r: &FieldElement, s: &FieldElement) -> Result<Option<FieldElement>> {
    let field = r.field();
    let Field::Prime(p) = field else {
        return Err(Error::RequiresPrimeField);
    };
    let one = field.one();
    if [r.clone(), s.clone(), &one - r, &one - s, r - s]
        .iter()
        .any(FieldElement::is_zero)
    {
        return Ok(None);
    }
    let v = &(&pounds1(r)? - &pounds1(s)?) + &(&r.pow(p) * &pounds1(&(s / r))?);
    let v = &v + &(&(s - &one).pow(p) * &pounds1(&(&(&one - r) / &(&one - s)))?);
    Ok(Some(v))
}

fn flat_dual(y: &TruncatedSeries) -> Option<DualNumber> {
    let d = DualNumber::from_series(y);
    d.is_flat().then_some(d)
}

fn named_point(
    ctx: &CheckContext,
    which: NamedIdentity,
    c: &[FieldElement],
) -> Result<Option<(Vec<String>, FieldElement)>> {
    let field = c[0].field();
    let p = field.characteristic();
    let one2 = TruncatedSeries::one(field, 2);
    let li = |y: &TruncatedSeries| -> Result<Option<FieldElement>> {
        match flat_dual(y) {
            Some(d) => Ok(Some((ctx.li2p)(&d)?)),
            None => Ok(None),
        }
    };
    let sum_of = |ys: &[TruncatedSeries], signs: &[i64]| -> Result<Option<FieldElement>> {
        let mut acc = field.zero();
        for (y, s) in ys.iter().zip(signs) {
            match li(y)? {
                Some(v) => acc = &acc + &v.scale_int(*s),
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    };
    let out = match which {
        NamedIdentity::FourTerm => four_term(&c[0], &c[1])?
            .map(|v| (vec![format!("r={}", c[0]), format!("s={}", c[1])], v)),
        NamedIdentity::Elementary => {
            let z = dual(&c[0], &c[1]);
            sum_of(&[&one2 - &z, z.clone()], &[1, 1])?.map(|v| (vec![z.to_string()], v))
        }
        NamedIdentity::Involution => {
            let y = dual(&c[0], &c[1]);
            if flat_dual(&y).is_none() {
                return Ok(None);
            }
            sum_of(&[y.invert()?, y.clone()], &[1, 1])?.map(|v| (vec![y.to_string()], v))
        }
        NamedIdentity::A2FiveTermCharP => {
            let (y1, y2) = (dual(&c[0], &c[1]), dual(&c[2], &c[3]));
            let (Ok(i1), Ok(i2)) = (y1.invert(), y2.invert()) else {
                return Ok(None);
            };
            let args = [
                y1.clone(),
                &y2 * &(&one2 - &y1),
                &i1 * &(&(&one2 - &y2) + &(&y1 * &y2)),
                &i1 * &(&one2 - &i2),
                i2,
            ];
            sum_of(&args, &[1; 5])?.map(|v| (ids(&[y1, y2]), v))
        }
        NamedIdentity::A2PentagonSubstitution => {
            let one = field.one();
            let x = dual(&c[0], &(&c[0] * &(&one - &c[0])));
            let y = dual(&c[1], &(&c[1] * &(&one - &c[1])));
            pentagon_sum(ctx, PentagonMode::CharP(p), &x, &y)?.map(|v| (ids(&[x, y]), v))
        }
        NamedIdentity::B2Printed => {
            let one = field.one();
            let ys: Vec<TruncatedSeries> = c.iter().map(|r| dual(r, &(r * &(&one - r)))).collect();
            let alphas: Vec<TruncatedSeries> = ys.iter().map(|y| -y).collect();
            let Some((generic, _)) = cluster_sums_charp(ctx, &Pattern::b2(), alphas)? else {
                return Ok(None);
            };
            let Some(printed) = b2_printed_formula(&c[0], &c[1])? else {
                return Ok(None);
            };
            Some((ids(&ys), &printed - &generic))
        }
    };
    Ok(out)
}

/// An explicit closed form for the B2 identity in
/// `F_p`, as a function of `r₁, r₂`. `None` where a denominator vanishes.
pub fn b2_printed_formula(r1: &FieldElement, r2: &FieldElement) -> Result<Option<FieldElement>> {
    let field = r1.field();
    let Field::Prime(p) = field else {
        return Err(Error::RequiresPrimeField);
    };
    let k = |n: i64| field.from_i64(n);
    let div = |a: FieldElement, b: FieldElement| a.checked_div(&b).ok();
    let (Ok(i1), Ok(i2)) = (r1.inv(), r2.inv()) else {
        return Ok(None);
    };
    let pw = |x: &FieldElement| x.pow(p);
    let l = pounds1;
    let one = k(1);
    let eval = || -> Option<Result<FieldElement>> {
        let c2 = div(
            &(&one - &pw(r1)) - &pw(r2),
            &(&one - &pw(r2)) + &(&pw(r1) * &pw(r2)),
        )?;
        let c4 = div(
            &pw(r1) - &k(3),
            &one - &(&pw(&i1) * &(&one - &pw(&i2)).pow(2)),
        )?;
        let a5 = &(&i1 * &(&(&one - r2) * &(&one - &i2))) + r2;
        let x5 = div(
            &(&one - r2) * &(r2 + &(&(&i2 - &one) * &(&(&(&k(2) * &i1) + &(&i1 * r2)) - &one))),
            &a5 * &(&one - &a5),
        )?;
        let c6 = &(&one - r2) + &(r1 * r2);
        let a6 = &i1 * &c6.pow(2);
        let y6 = div(
            &(&(&k(2) * &i1) * &(r2 * &(&(r2 - &one) + &(r1 * &(&(&k(2) - r1) - r2)))))
                + &(&(&one - &i1) * &c6.pow(2)),
            &a6 * &(&one - &a6),
        )?;
        let terms = || -> Result<FieldElement> {
            let mut v = l(r1)?;
            v = &v + &(&k(2) * &(&c2 * &l(&(r2 * &(&one - r1)))?));
            v = &v + &(&k(2) * &(&pw(r2) * &l(&i2)?));
            v = &v + &(&c4 * &l(&(&i1 * &(&one - &i2).pow(2)))?);
            v = &v + &(&k(2) * &(&pw(&x5) * &l(&a5)?));
            v = &v + &(&pw(&y6) * &l(&a6)?);
            Ok(v)
        };
        Some(terms())
    };
    eval().transpose()
}

/// Named characteristic-p identity over `F_p` points.
pub fn check_named_identity(
    ctx: &CheckContext,
    which: NamedIdentity,
    p: u64,
    sampling: Sampling,
) -> Result<CheckReport> {
    let field = Field::prime(p)?;
    let dim = which.dim();
    let plan = sampling.plan(point_space(field, dim as u32))?;
    let exhaustive = matches!(plan, Plan::Exhaustive(_));
    let id = format!("named:{}:{p}", which.name());
    let (tally, required) = drive(ctx, &id, plan, field, dim, |c| {
        match named_point(ctx, which, &c) {
            Ok(None) => Trial::Rejected,
            Ok(Some((inputs, v))) => Trial::zero_or_fail(v, &inputs),
            Err(e) => Trial::Fail(Witness::new(ids(&c), e)),
        }
    });
    let mut report = CheckReport::from_tally(
        which.name(),
        json!({"p": p, "exhaustive": exhaustive}),
        required,
        tally,
    );
    if which == NamedIdentity::B2Printed {
        report
            .notes
            .push("residual is printed formula minus generic B2 cluster sum".into());
    }
    Ok(report)
}

/// `Σ_j θ_{r_j}·α_{r_j}[j] ∧ (1 + α_{r_j}[j])` along a trajectory from `y0`,
/// or `None` when some entry is not a unit.
pub fn lemma_ledger(pattern: &Pattern, y0: Vec<TruncatedSeries>) -> Option<WedgeLedger> {
    let theta = pattern.theta();
    let traj = pattern.run(y0).ok()?;
    let mut ledger = WedgeLedger::new();
    for (r, alpha) in traj.values() {
        let one_plus = &TruncatedSeries::one(alpha.field(), alpha.precision()) + alpha;
        ledger.push(theta[r] as i64, alpha.clone(), one_plus).ok()?;
    }
    Some(ledger)
}

/// Wedge-ledger vanishing along a periodic schedule: the rationalized zero
/// test and every functional pair `(ℓ_a ∧ ℓ_b)` with `a + b <= N - 1`.
#[allow(clippy::too_many_arguments)]
pub fn check_lemma_wedge(
    ctx: &CheckContext,
    pattern: &Pattern,
    field: Field,
    precision: usize,
    trials: usize,
    height: u64,
    factor_bound: u64,
) -> Result<CheckReport> {
    if let Field::Prime(p) = field {
        if precision as u64 > p {
            return Err(Error::CharPPrecision { p, precision });
        }
    }
    if precision == 0 {
        return Err(Error::ZeroPrecision);
    }
    let id = format!("lemma:{}:{field}:{precision}", pattern.name);
    let tally = sample(ctx, &id, trials, |rng| {
        let y0: Vec<TruncatedSeries> = (0..pattern.rank())
            .map(|_| TruncatedSeries::random(field, precision, rng, height))
            .collect();
        let Some(ledger) = lemma_ledger(pattern, y0.clone()) else {
            return Trial::Rejected;
        };
        match zero_test_rational(&ledger, factor_bound) {
            Ok(ZeroVerdict::Zero) => {}
            Ok(ZeroVerdict::Nonzero(c)) => {
                return Trial::Fail(Witness::new(&y0, format!("{c:?} component nonzero")))
            }
            Ok(ZeroVerdict::Inconclusive) => {
                return Trial::Inconclusive(Witness::new(&y0, "factorization bound exceeded"))
            }
            Err(e) => return Trial::Fail(Witness::new(&y0, e)),
        }
        if ledger.is_empty() {
            return Trial::Pass;
        }
        let logs = match ledger.logs() {
            Ok(l) => l,
            Err(e) => return Trial::Fail(Witness::new(&y0, e)),
        };
        for a in 1..precision {
            for b in (a + 1)..precision {
                if a + b > precision - 1 {
                    continue;
                }
                match logs.pair(a, b) {
                    Ok(v) if v.is_zero() => {}
                    Ok(v) => {
                        return Trial::Fail(Witness::new(&y0, format!("(l_{a} ^ l_{b}) = {v}")))
                    }
                    Err(e) => return Trial::Fail(Witness::new(&y0, e)),
                }
            }
        }
        Trial::Pass
    });
    Ok(CheckReport::from_tally(
        "lemma",
        json!({"pattern": pattern.name, "field": field.to_string(), "precision": precision, "height": height, "factor_bound": factor_bound}),
        trials,
        tally,
    ))
}

/// `Σ_{1<=i<=w-m} i·(ℓ_{w-i} ∧ ℓ_i)((1 + β̃) ∧ β̃)`.
pub fn lift_pairing_form(params: DilogParams, beta_lift: &TruncatedSeries) -> Result<FieldElement> {
    let one = TruncatedSeries::one(beta_lift.field(), beta_lift.precision());
    let mut ledger = WedgeLedger::new();
    ledger.push(1, &one + beta_lift, beta_lift.clone())?;
    let logs = ledger.logs()?;
    let mut acc = beta_lift.field().zero();
    for i in 1..=(params.w() - params.m()) {
        acc = &acc + &logs.pair(params.w() - i, i)?.scale_int(i as i64);
    }
    Ok(acc)
}

/// Lift independence of `g_{m,w}` and agreement of both lift formulas with
/// the dilogarithm of the truncation.
pub fn check_welldef(
    ctx: &CheckContext,
    params: DilogParams,
    trials: usize,
    height: u64,
    perturbations: usize,
) -> CheckReport {
    let (m, n) = (params.m(), params.w() + 1);
    let id = format!("welldef{params}");
    let tally = sample(ctx, &id, trials, |rng| {
        let base = TruncatedSeries::random(Field::Rational, n, rng, height);
        if base.is_flat().is_none() {
            return Trial::Rejected;
        }
        let run = |rng: &mut ChaCha8Rng| -> Result<Option<String>> {
            let truncated = base.with_precision(m);
            let direct = (ctx.li)(params, &truncated)?;
            let lifted = li_via_lift(params, &base)?;
            if lifted != direct {
                return Ok(Some(format!("g={lifted} vs li={direct}")));
            }
            let pairing = lift_pairing_form(params, &-&base)?;
            if pairing != direct {
                return Ok(Some(format!("(1+b)^b form={pairing} vs li={direct}")));
            }
            for _ in 0..perturbations {
                let mut coeffs = base.coeffs().to_vec();
                for c in &mut coeffs[m..] {
                    *c = random_element(Field::Rational, rng, height);
                }
                let perturbed = TruncatedSeries::new(Field::Rational, coeffs)?;
                let v = li_via_lift(params, &perturbed)?;
                if v != lifted {
                    return Ok(Some(format!(
                        "perturbed lift {perturbed} gives {v} vs {lifted}"
                    )));
                }
            }
            Ok(None)
        };
        match run(rng) {
            Ok(None) => Trial::Pass,
            Ok(Some(msg)) => Trial::Fail(Witness::new([&base], msg)),
            Err(e) => Trial::Fail(Witness::new([&base], e)),
        }
    });
    CheckReport::from_tally(
        "welldef",
        json!({"m": m, "w": params.w(), "lift_precision": n, "perturbations": perturbations, "height": height}),
        trials,
        tally,
    )
}

/// `ℓi_{m,w}(λ × a) = λ^w ℓi_{m,w}(a)`.
pub fn check_weight(
    ctx: &CheckContext,
    params: DilogParams,
    trials: usize,
    height: u64,
) -> CheckReport {
    let id = format!("weight{params}");
    let tally = sample(ctx, &id, trials, |rng| {
        let a = TruncatedSeries::random(Field::Rational, params.m(), rng, height);
        let lambda = random_element(Field::Rational, rng, height);
        if a.is_flat().is_none() || lambda.is_zero() {
            return Trial::Rejected;
        }
        let run = || -> Result<FieldElement> {
            let scaled = (ctx.li)(params, &a.scale_action(&lambda)?)?;
            Ok(&scaled - &(&lambda.pow(params.w() as u64) * &(ctx.li)(params, &a)?))
        };
        match run() {
            Ok(v) => Trial::zero_or_fail(v, &[a.to_string(), format!("lambda={lambda}")]),
            Err(e) => Trial::Fail(Witness::new([&a], e)),
        }
    });
    CheckReport::from_tally(
        "weight",
        json!({"m": params.m(), "w": params.w(), "height": height}),
        trials,
        tally,
    )
}

/// Which dilogarithm [`check_constants`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantsTarget {
    CharZero(DilogParams),
    CharP(u64),
}

/// The dilogarithm vanishes on constant flat elements. Exhaustive over
/// `F_p`, sampled over `Q`.
pub fn check_constants(
    ctx: &CheckContext,
    target: ConstantsTarget,
    trials: usize,
    height: u64,
) -> Result<CheckReport> {
    match target {
        ConstantsTarget::CharZero(params) => {
            let id = format!("constants{params}");
            let tally = sample(ctx, &id, trials, |rng| {
                let c = random_element(Field::Rational, rng, height);
                let a = TruncatedSeries::constant(c, params.m());
                if a.is_flat().is_none() {
                    return Trial::Rejected;
                }
                match (ctx.li)(params, &a) {
                    Ok(v) => Trial::zero_or_fail(v, &[&a]),
                    Err(e) => Trial::Fail(Witness::new([&a], e)),
                }
            });
            Ok(CheckReport::from_tally(
                "constants",
                json!({"m": params.m(), "w": params.w(), "height": height}),
                trials,
                tally,
            ))
        }
        ConstantsTarget::CharP(p) => {
            let field = Field::prime(p)?;
            let (tally, required) = drive(ctx, "constants_p", Plan::Exhaustive(p), field, 1, |c| {
                let y = DualNumber::new(c[0].clone(), field.zero()).expect("same field");
                if !y.is_flat() {
                    return Trial::Rejected;
                }
                match (ctx.li2p)(&y) {
                    Ok(v) => Trial::zero_or_fail(v, &[&y]),
                    Err(e) => Trial::Fail(Witness::new([&y], e)),
                }
            });
            Ok(CheckReport::from_tally(
                "constants_p",
                json!({"p": p}),
                required,
                tally,
            ))
        }
    }
}

/// `ℓi₂^(p)` against its Bloch-complex expression, exhaustively over flat
/// dual numbers, on the zero-padded lift and on one random lift per point.
pub fn check_li2p_lift(ctx: &CheckContext, p: u64) -> Result<CheckReport> {
    let field = Field::prime(p)?;
    let total = p * p;
    let tally = enumerate(ctx, total, |i| {
        let c = enumerate_point(field, 2, i);
        let y = DualNumber::new(c[0].clone(), c[1].clone()).expect("same field");
        if !y.is_flat() {
            return Trial::Rejected;
        }
        let mut rng = ctx.rng("li2p_lift", i);
        let run = |rng: &mut ChaCha8Rng| -> Result<Option<String>> {
            let expected = (ctx.li2p)(&y)?;
            let padded = li2p_via_lift(&y.to_series())?;
            if padded != expected {
                return Ok(Some(format!("padded lift {padded} vs {expected}")));
            }
            let mut coeffs = y.to_series().with_precision(p as usize).coeffs().to_vec();
            for c in &mut coeffs[2..] {
                *c = random_element(field, rng, 1);
            }
            let lift = TruncatedSeries::new(field, coeffs)?;
            let v = li2p_via_lift(&lift)?;
            if v != expected {
                return Ok(Some(format!("lift {lift} gives {v} vs {expected}")));
            }
            Ok(None)
        };
        match run(&mut rng) {
            Ok(None) => Trial::Pass,
            Ok(Some(msg)) => Trial::Fail(Witness::new([&y], msg)),
            Err(e) => Trial::Fail(Witness::new([&y], e)),
        }
    });
    Ok(CheckReport::from_tally(
        "li2p_lift",
        json!({"p": p}),
        1,
        tally,
    ))
}

/// `ν`-periodicity: exact matrix return and agreement of y-values at random
/// rational points.
pub fn check_periodicity_report(
    ctx: &CheckContext,
    pattern: &Pattern,
    trials: usize,
    height: u64,
) -> CheckReport {
    let mut rng = ctx.rng(&format!("periodicity:{}", pattern.name), 0);
    let v = check_periodicity(pattern, trials, Field::Rational, height, &mut rng);
    let mut tally = Tally {
        attempted: v.points_checked + v.points_rejected,
        valid: v.points_checked,
        rejected: v.points_rejected,
        failed: v.points_checked - v.points_agreeing,
        ..Tally::default()
    };
    if !v.matrix_returns {
        tally.failed += 1;
        tally.witnesses.push(Witness::new(
            ["B[0]".to_string()],
            "B[P] differs from nu.B[0]",
        ));
    }
    let mut report = CheckReport::from_tally(
        "periodicity",
        json!({"pattern": pattern.name, "period": pattern.schedule.len(), "nu": pattern.schedule.nu, "height": height}),
        trials,
        tally,
    );
    report
        .notes
        .push(format!("matrix returns: {}", v.matrix_returns));
    report
}

/// Mutation is an involution on seeds, and `θ` symmetrizes every matrix
/// along the schedule.
pub fn check_mutation_invariants(
    ctx: &CheckContext,
    pattern: &Pattern,
    trials: usize,
    height: u64,
) -> CheckReport {
    let n = pattern.rank();
    let theta = pattern.theta();
    let id = format!("mutation:{}", pattern.name);
    let mut tally = sample(ctx, &id, trials, |rng| {
        let y: Vec<TruncatedSeries> = (0..n)
            .map(|_| TruncatedSeries::random(Field::Rational, 3, rng, height))
            .collect();
        let k = rng.gen_range(0..n);
        let seed =
            crate::cluster::YSeed::new(pattern.matrix.clone(), y.clone()).expect("rank matches");
        let Ok(once) = seed.mutate(k) else {
            return Trial::Rejected;
        };
        let Ok(twice) = once.mutate(k) else {
            return Trial::Rejected;
        };
        if twice != seed {
            Trial::Fail(Witness::new(
                &y,
                format!("mu_{0} mu_{0} is not the identity", k + 1),
            ))
        } else if !once.matrix.is_symmetrized_by(&theta) {
            Trial::Fail(Witness::new(
                &y,
                "theta does not symmetrize the mutated matrix",
            ))
        } else {
            Trial::Pass
        }
    });
    let mut matrix = pattern.matrix.clone();
    for (j, &k) in pattern.schedule.directions.iter().enumerate() {
        matrix = matrix.mutate(k);
        if !matrix.is_symmetrized_by(&theta) {
            tally.failed += 1;
            tally.witnesses.push(Witness::new(
                [format!("step {j}")],
                format!("theta fails on {matrix}"),
            ));
        }
    }
    CheckReport::from_tally(
        "mutation_invariants",
        json!({"pattern": pattern.name, "theta": theta, "height": height}),
        trials,
        tally,
    )
}

/// Parameters of the full battery.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub height: u64,
    pub factor_bound: u64,
    pub lemma_precision: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            height: 10,
            factor_bound: crate::bloch::DEFAULT_FACTOR_BOUND,
            lemma_precision: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        write!(
            f,
            "suite seed={}: {passed}/{} checks passed",
            self.config.seed,
            self.checks.len()
        )
    }
}

/// All `(m, w)` exercised by the battery.
pub fn suite_params() -> Vec<DilogParams> {
    [(2, 3), (3, 4), (3, 5), (4, 5), (4, 6), (4, 7)]
        .into_iter()
        .map(|(m, w)| DilogParams::new(m, w).expect("valid"))
        .collect()
}

/// Runs the whole battery under `config.seed`, with the context's
/// execution strategy and dilogarithms.
pub fn run_suite(ctx: &CheckContext, config: &SuiteConfig) -> Result<SuiteReport> {
    let ctx = CheckContext {
        seed: config.seed,
        ..*ctx
    };
    let ctx = &ctx;
    let h = config.height;
    let mut checks = Vec::new();
    let (a1, a2, b2) = (Pattern::a1(), Pattern::a2(), Pattern::b2());

    for which in ClosedForm::ALL {
        checks.push(check_closed_form(ctx, which, 200, h));
    }
    for params in suite_params() {
        checks.push(check_pentagon(
            ctx,
            PentagonMode::CharZero(params),
            Sampling::Random { trials: 100 },
            h,
        )?);
    }
    checks.push(check_pentagon(
        ctx,
        PentagonMode::CharP(5),
        Sampling::Random { trials: 100 },
        h,
    )?);
    for pattern in [&a2, &b2] {
        for m in [2, 3] {
            for params in DilogParams::all_for_modulus(m) {
                checks.push(check_cluster_char0(ctx, pattern, params, 100, h)?);
            }
        }
    }
    checks.push(check_cluster_char0(
        ctx,
        &a1,
        DilogParams::new(2, 3)?,
        100,
        h,
    )?);
    checks.push(check_cluster_char0(
        ctx,
        &a1,
        DilogParams::new(3, 5)?,
        100,
        h,
    )?);
    for pattern in [&a2, &b2] {
        for p in [3, 5] {
            checks.push(check_cluster_charp(ctx, pattern, p, Sampling::Exhaustive)?);
        }
        for p in [7, 11, 13] {
            checks.push(check_cluster_charp(
                ctx,
                pattern,
                p,
                Sampling::Random { trials: 500 },
            )?);
        }
    }
    for p in [3, 5, 7, 11, 13] {
        checks.push(check_named_identity(
            ctx,
            NamedIdentity::FourTerm,
            p,
            Sampling::Exhaustive,
        )?);
    }
    for params in suite_params() {
        checks.push(check_welldef(ctx, params, 100, h, 10));
    }
    for p in [3, 5, 7] {
        checks.push(check_li2p_lift(ctx, p)?);
    }
    for params in suite_params() {
        checks.push(check_weight(ctx, params, 100, h));
        checks.push(check_constants(
            ctx,
            ConstantsTarget::CharZero(params),
            100,
            h,
        )?);
    }
    for p in [3, 5, 7, 11, 13] {
        checks.push(check_constants(ctx, ConstantsTarget::CharP(p), 0, h)?);
        for which in [NamedIdentity::Elementary, NamedIdentity::Involution] {
            checks.push(check_named_identity(ctx, which, p, Sampling::Exhaustive)?);
        }
    }
    for p in [3, 5, 7] {
        for which in [
            NamedIdentity::A2FiveTermCharP,
            NamedIdentity::A2PentagonSubstitution,
        ] {
            checks.push(check_named_identity(ctx, which, p, Sampling::Exhaustive)?);
        }
    }
    for pattern in [&a1, &a2, &b2] {
        checks.push(check_mutation_invariants(ctx, pattern, 1000, h));
    }
    for pattern in [&a2, &b2] {
        checks.push(check_lemma_wedge(
            ctx,
            pattern,
            Field::Rational,
            config.lemma_precision,
            25,
            h,
            config.factor_bound,
        )?);
        checks.push(check_lemma_wedge(
            ctx,
            pattern,
            Field::prime(7)?,
            config.lemma_precision,
            25,
            h,
            config.factor_bound,
        )?);
    }
    for pattern in [&a2, &b2] {
        checks.push(check_periodicity_report(ctx, pattern, 50, h));
    }
    let passed = checks.iter().all(CheckReport::passed);
    Ok(SuiteReport {
        config: config.clone(),
        checks,
        passed,
    })
}
