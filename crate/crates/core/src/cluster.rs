//! Exchange matrices, Y-seed mutation evaluated at points, skew-symmetrizers
//! and ν-periodic mutation schedules.
//!
//! Directions and permutations are 0-indexed here and in pattern files;
//! human-facing output adds one.
//!
//! Mutation in direction `k`:
//! - `y'_k = y_k⁻¹`
//! - `y'_i = y_i · y_k^[b_ki]₊ · (1 + y_k)^(-b_ki)` for `i ≠ k`
//! - `b'_ij = -b_ij` if `k ∈ {i, j}`, else `b_ij + sgn(b_ik)·[b_ik b_kj]₊`
//!
//! A schedule is ν-periodic when the final seed satisfies
//! `y_{ν(i)}[P] = y_i[0]` and `b_{ν(i)ν(j)}[P] = b_ij[0]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{random_element, Field};
use crate::series::TruncatedSeries;

/// A skew-symmetrizable integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    rows: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        skew_symmetrizer(&rows)?;
        Ok(ExchangeMatrix { rows })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn skew_symmetrizer(&self) -> Vec<u64> {
        skew_symmetrizer(&self.rows).expect("validated on construction")
    }

    /// `θ_j·b_ij = -θ_i·b_ji` for all `i, j`.
    pub fn is_symmetrized_by(&self, theta: &[u64]) -> bool {
        theta.len() == self.rank()
            && theta.iter().all(|&t| t > 0)
            && (0..self.rank()).all(|i| {
                (0..self.rank()).all(|j| {
                    theta[j] as i128 * self.rows[i][j] as i128
                        == -(theta[i] as i128) * self.rows[j][i] as i128
                })
            })
    }

    pub fn mutate(&self, k: usize) -> ExchangeMatrix {
        let n = self.rank();
        let b = &self.rows;
        let mut out = b.clone();
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0)
                };
            }
        }
        ExchangeMatrix { rows: out }
    }

    /// The matrix `b_{ν(i)ν(j)}`-relabelled so that `permute(ν)[ν(i)][ν(j)] = b_ij`.
    pub fn permute(&self, nu: &[usize]) -> ExchangeMatrix {
        let n = self.rank();
        let mut out = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[nu[i]][nu[j]] = self.rows[i][j];
            }
        }
        ExchangeMatrix { rows: out }
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

/// The componentwise-minimal positive integers `θ` with
/// `θ_j·b_ij = -θ_i·b_ji`, found by propagating ratios along nonzero
/// entries and normalizing each connected component.
#[allow(clippy::needless_range_loop)]
pub fn skew_symmetrizer(rows: &[Vec<i64>]) -> Result<Vec<u64>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidMatrix("matrix is not square".into()));
    }
    for i in 0..n {
        if rows[i][i] != 0 {
            return Err(Error::InvalidMatrix(format!(
                "diagonal entry b_{0}{0} is nonzero",
                i + 1
            )));
        }
        for j in 0..n {
            let (a, b) = (rows[i][j], rows[j][i]);
            if (a == 0) != (b == 0) || (a != 0 && a.signum() == b.signum()) {
                return Err(Error::InvalidMatrix(format!(
                    "sign-skew-symmetry violated at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut ratio: Vec<Option<BigRational>> = vec![None; n];
    let mut theta = vec![0u64; n];
    for root in 0..n {
        if ratio[root].is_some() {
            continue;
        }
        ratio[root] = Some(BigRational::one());
        let mut component = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let ti = ratio[i].clone().expect("visited");
            for j in 0..n {
                if rows[i][j] == 0 {
                    continue;
                }
                // θ_j = θ_i · (-b_ji / b_ij)
                let tj =
                    &ti * BigRational::new(BigInt::from(-rows[j][i]), BigInt::from(rows[i][j]));
                match &ratio[j] {
                    Some(existing) if *existing != tj => {
                        return Err(Error::InvalidMatrix(format!(
                            "not skew-symmetrizable (inconsistent ratio at index {})",
                            j + 1
                        )))
                    }
                    Some(_) => {}
                    None => {
                        ratio[j] = Some(tj);
                        component.push(j);
                        stack.push(j);
                    }
                }
            }
        }
        let lcm = component.iter().fold(BigInt::one(), |acc, &i| {
            acc.lcm(ratio[i].as_ref().unwrap().denom())
        });
        let scaled: Vec<BigInt> = component
            .iter()
            .map(|&i| {
                (ratio[i].as_ref().unwrap() * BigRational::from_integer(lcm.clone())).to_integer()
            })
            .collect();
        let gcd = scaled.iter().fold(BigInt::from(0), |acc, x| acc.gcd(x));
        for (&i, v) in component.iter().zip(&scaled) {
            let value = (v / &gcd).abs();
            theta[i] = value
                .to_u64()
                .ok_or_else(|| Error::InvalidMatrix("skew-symmetrizer overflows u64".into()))?;
        }
    }
    Ok(theta)
}

/// An exchange matrix together with evaluated y-values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YSeed {
    pub matrix: ExchangeMatrix,
    pub y: Vec<TruncatedSeries>,
}

impl YSeed {
    pub fn new(matrix: ExchangeMatrix, y: Vec<TruncatedSeries>) -> Result<Self> {
        if y.len() != matrix.rank() {
            return Err(Error::InvalidSchedule(format!(
                "expected {} y-values, got {}",
                matrix.rank(),
                y.len()
            )));
        }
        if let Some(first) = y.first() {
            for v in &y {
                if v.field() != first.field() {
                    return Err(Error::FieldMismatch(
                        first.field().to_string(),
                        v.field().to_string(),
                    ));
                }
                if v.precision() != first.precision() {
                    return Err(Error::PrecisionMismatch(first.precision(), v.precision()));
                }
            }
        }
        Ok(YSeed { matrix, y })
    }

    /// Mutation in direction `k` (0-indexed). Fails when `y_k` or a needed
    /// `1 + y_k` is not invertible at this point.
    pub fn mutate(&self, k: usize) -> Result<YSeed> {
        let n = self.matrix.rank();
        if k >= n {
            return Err(Error::InvalidSchedule(format!(
                "direction {} out of range",
                k + 1
            )));
        }
        let invalid = |reason: &str| Error::InvalidPoint {
            step: 0,
            direction: k + 1,
            reason: reason.to_string(),
        };
        let yk = &self.y[k];
        let yk_inv = yk.invert().map_err(|_| invalid("y_k is not invertible"))?;
        let one_plus = &TruncatedSeries::one(yk.field(), yk.precision()) + yk;
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            if i == k {
                y.push(yk_inv.clone());
                continue;
            }
            let b = self.matrix.get(k, i);
            let mut v = &self.y[i] * &yk.powi(b.max(0))?;
            if b != 0 {
                let factor = one_plus
                    .powi(-b)
                    .map_err(|_| invalid("1 + y_k is not invertible"))?;
                v = &v * &factor;
            }
            y.push(v);
        }
        Ok(YSeed {
            matrix: self.matrix.mutate(k),
            y,
        })
    }

    /// The seed relabelled by `ν`: `y'_{ν(i)} = y_i`.
    pub fn permute(&self, nu: &[usize]) -> YSeed {
        let mut y = self.y.clone();
        for (i, v) in self.y.iter().enumerate() {
            y[nu[i]] = v.clone();
        }
        YSeed {
            matrix: self.matrix.permute(nu),
            y,
        }
    }
}

/// Directions `r_0, …, r_{P-1}` (0-indexed), the permutation `ν` as an
/// image array, and optional coefficients `θ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationSchedule {
    pub directions: Vec<usize>,
    pub nu: Vec<usize>,
    pub theta: Option<Vec<u64>>,
}

impl MutationSchedule {
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn validate(&self, matrix: &ExchangeMatrix) -> Result<()> {
        let n = matrix.rank();
        if let Some(bad) = self.directions.iter().find(|&&d| d >= n) {
            return Err(Error::InvalidSchedule(format!(
                "direction {bad} out of range for rank {n} (directions are 0-indexed)"
            )));
        }
        let mut seen = vec![false; n];
        if self.nu.len() != n
            || self
                .nu
                .iter()
                .any(|&v| v >= n || std::mem::replace(&mut seen[v], true))
        {
            return Err(Error::InvalidSchedule(format!(
                "nu {:?} is not a permutation",
                self.nu
            )));
        }
        if let Some(theta) = &self.theta {
            if !matrix.is_symmetrized_by(theta) {
                return Err(Error::InvalidSchedule(format!(
                    "theta {theta:?} is not a skew-symmetrizer"
                )));
            }
        }
        Ok(())
    }
}

/// A named exchange matrix with a mutation schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub matrix: ExchangeMatrix,
    pub schedule: MutationSchedule,
}

/// On-disk form of a pattern (TOML).
///
/// ```toml
/// name = "A2"
/// B = [[0, -1], [1, 0]]
/// sequence = [0, 1, 0, 1, 0]   # 0-indexed directions
/// nu = [1, 0]                  # image array
/// theta = [1, 1]               # optional
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternFile {
    pub name: String,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    pub sequence: Vec<usize>,
    pub nu: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<u64>>,
}

impl Pattern {
    pub fn new(
        name: &str,
        rows: Vec<Vec<i64>>,
        directions: Vec<usize>,
        nu: Vec<usize>,
        theta: Option<Vec<u64>>,
    ) -> Result<Self> {
        let matrix = ExchangeMatrix::new(rows)?;
        let schedule = MutationSchedule {
            directions,
            nu,
            theta,
        };
        schedule.validate(&matrix)?;
        Ok(Pattern {
            name: name.to_string(),
            matrix,
            schedule,
        })
    }

    /// `A2`, period 5, `ν` the transposition.
    pub fn a2() -> Pattern {
        Pattern::new(
            "A2",
            vec![vec![0, -1], vec![1, 0]],
            vec![0, 1, 0, 1, 0],
            vec![1, 0],
            None,
        )
        .expect("valid built-in")
    }

    /// `B2`, period 6, `ν` the identity (certified by `check_periodicity`).
    pub fn b2() -> Pattern {
        Pattern::new(
            "B2",
            vec![vec![0, -1], vec![2, 0]],
            vec![0, 1, 0, 1, 0, 1],
            vec![0, 1],
            None,
        )
        .expect("valid built-in")
    }

    /// Rank one, mutating twice in the only direction.
    pub fn a1() -> Pattern {
        Pattern::new("A1", vec![vec![0]], vec![0, 0], vec![0], None).expect("valid built-in")
    }

    pub fn builtin(name: &str) -> Option<Pattern> {
        match name {
            "A1" => Some(Self::a1()),
            "A2" => Some(Self::a2()),
            "B2" => Some(Self::b2()),
            _ => None,
        }
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["A1", "A2", "B2"]
    }

    pub fn from_file(file: PatternFile) -> Result<Pattern> {
        Pattern::new(&file.name, file.b, file.sequence, file.nu, file.theta)
    }

    pub fn parse_toml(text: &str) -> Result<Pattern> {
        let file: PatternFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn to_file(&self) -> PatternFile {
        PatternFile {
            name: self.name.clone(),
            b: self.matrix.rows().to_vec(),
            sequence: self.schedule.directions.clone(),
            nu: self.schedule.nu.clone(),
            theta: self.schedule.theta.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// The supplied `θ`, or the minimal skew-symmetrizer.
    pub fn theta(&self) -> Vec<u64> {
        self.schedule
            .theta
            .clone()
            .unwrap_or_else(|| self.matrix.skew_symmetrizer())
    }

    pub fn run(&self, y0: Vec<TruncatedSeries>) -> Result<Trajectory> {
        run_schedule(&self.matrix, y0, &self.schedule)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryStep {
    /// 0-indexed direction `r_j`.
    pub direction: usize,
    /// `y_{r_j}[j]`, read before mutating.
    pub value: TruncatedSeries,
    pub seed_after: YSeed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub initial: YSeed,
    pub steps: Vec<TrajectoryStep>,
}

impl Trajectory {
    pub fn final_seed(&self) -> &YSeed {
        self.steps
            .last()
            .map(|s| &s.seed_after)
            .unwrap_or(&self.initial)
    }

    /// `(r_j, y_{r_j}[j])` for every step.
    pub fn values(&self) -> impl Iterator<Item = (usize, &TruncatedSeries)> {
        self.steps.iter().map(|s| (s.direction, &s.value))
    }
}

impl fmt::Display for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, y) in self.initial.y.iter().enumerate() {
            writeln!(f, "y_{}[0] = {y}", i + 1)?;
        }
        for (j, step) in self.steps.iter().enumerate() {
            writeln!(
                f,
                "step {j}: mutate at {}, y_{}[{j}] = {}",
                step.direction + 1,
                step.direction + 1,
                step.value
            )?;
        }
        let fin = self.final_seed();
        for (i, y) in fin.y.iter().enumerate() {
            writeln!(f, "y_{}[{}] = {y}", i + 1, self.steps.len())?;
        }
        write!(f, "B[{}] = {}", self.steps.len(), fin.matrix)
    }
}

/// Runs the schedule from `y0`, recording the mutated value at every step.
pub fn run_schedule(
    matrix: &ExchangeMatrix,
    y0: Vec<TruncatedSeries>,
    schedule: &MutationSchedule,
) -> Result<Trajectory> {
    schedule.validate(matrix)?;
    let initial = YSeed::new(matrix.clone(), y0)?;
    let mut seed = initial.clone();
    let mut steps = Vec::with_capacity(schedule.len());
    for (j, &k) in schedule.directions.iter().enumerate() {
        let value = seed.y[k].clone();
        seed = seed.mutate(k).map_err(|e| match e {
            Error::InvalidPoint {
                direction, reason, ..
            } => Error::InvalidPoint {
                step: j,
                direction,
                reason,
            },
            other => other,
        })?;
        steps.push(TrajectoryStep {
            direction: k,
            value,
            seed_after: seed.clone(),
        });
    }
    Ok(Trajectory { initial, steps })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicityVerdict {
    pub matrix_returns: bool,
    pub points_requested: usize,
    pub points_checked: usize,
    pub points_rejected: usize,
    pub points_agreeing: usize,
    pub periodic: bool,
}

/// Checks `ν·B[0] = B[P]` exactly and `ν·y[0] = y[P]` at `trials` random
/// constant points (resampling points where the schedule cannot be run, at
/// most `100 × trials` attempts).
pub fn check_periodicity<R: Rng + ?Sized>(
    pattern: &Pattern,
    trials: usize,
    field: Field,
    height: u64,
    rng: &mut R,
) -> PeriodicityVerdict {
    let mut final_matrix = pattern.matrix.clone();
    for &k in &pattern.schedule.directions {
        final_matrix = final_matrix.mutate(k);
    }
    let matrix_returns = pattern.matrix.permute(&pattern.schedule.nu) == final_matrix;
    let (mut checked, mut rejected, mut agreeing) = (0, 0, 0);
    let cap = trials.saturating_mul(100).max(1);
    while checked < trials && checked + rejected < cap {
        let y0: Vec<TruncatedSeries> = (0..pattern.rank())
            .map(|_| TruncatedSeries::constant(random_element(field, rng, height), 1))
            .collect();
        match pattern.run(y0) {
            Ok(traj) => {
                checked += 1;
                let expected = traj.initial.permute(&pattern.schedule.nu);
                if expected.y == traj.final_seed().y {
                    agreeing += 1;
                }
            }
            Err(_) => rejected += 1,
        }
    }
    PeriodicityVerdict {
        matrix_returns,
        points_requested: trials,
        points_checked: checked,
        points_rejected: rejected,
        points_agreeing: agreeing,
        periodic: matrix_returns && checked >= trials && agreeing == checked,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldElement;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    fn c(n: i64, d: i64) -> TruncatedSeries {
        TruncatedSeries::constant(Q.ratio(n, d).unwrap(), 1)
    }

    #[test]
    fn thetas() {
        assert_eq!(
            skew_symmetrizer(&[vec![0, -1], vec![1, 0]]).unwrap(),
            vec![1, 1]
        );
        assert_eq!(
            skew_symmetrizer(&[vec![0, -1], vec![2, 0]]).unwrap(),
            vec![1, 2]
        );
        assert!(skew_symmetrizer(&[vec![0, 1], vec![1, 0]]).is_err());
        assert!(skew_symmetrizer(&[vec![1]]).is_err());
        assert!(skew_symmetrizer(&[vec![0, 1]]).is_err());
        // G2 and a disconnected block
        assert_eq!(
            skew_symmetrizer(&[vec![0, -1], vec![3, 0]]).unwrap(),
            vec![1, 3]
        );
        let rows = vec![vec![0, 2, 0], vec![-4, 0, 0], vec![0, 0, 0]];
        assert_eq!(skew_symmetrizer(&rows).unwrap(), vec![1, 2, 1]);
        // cycle with inconsistent ratios
        let bad = vec![vec![0, 1, -1], vec![-2, 0, 1], vec![1, -1, 0]];
        assert!(skew_symmetrizer(&bad).is_err());
    }

    #[test]
    fn a2_first_mutation() {
        let seed = YSeed::new(Pattern::a2().matrix, vec![c(2, 1), c(3, 1)]).unwrap();
        let m = seed.mutate(0).unwrap();
        assert_eq!(m.y, vec![c(1, 2), c(9, 1)]);
        assert_eq!(m.matrix.rows(), &[vec![0, 1], vec![-1, 0]]);
    }

    #[test]
    fn a2_trajectory_values() {
        let traj = Pattern::a2().run(vec![c(2, 1), c(3, 1)]).unwrap();
        let values: Vec<TruncatedSeries> = traj.values().map(|(_, v)| v.clone()).collect();
        assert_eq!(values, vec![c(2, 1), c(9, 1), c(5, 1), c(2, 3), c(1, 3)]);
        assert_eq!(traj.final_seed().y, vec![c(3, 1), c(2, 1)]);
    }

    #[test]
    fn empty_schedule_and_bad_point() {
        let p = Pattern::new("e", vec![vec![0, -1], vec![1, 0]], vec![], vec![0, 1], None).unwrap();
        let traj = p.run(vec![c(2, 1), c(3, 1)]).unwrap();
        assert!(traj.steps.is_empty());
        assert_eq!(traj.final_seed(), &traj.initial);
        let err = Pattern::a2().run(vec![c(0, 1), c(3, 1)]).unwrap_err();
        assert!(
            matches!(
                err,
                Error::InvalidPoint {
                    step: 0,
                    direction: 1,
                    ..
                }
            ),
            "{err}"
        );
        // μ_2 on A2 divides by 1 + y_2 since b_21 = 1 > 0
        let p = Pattern::new(
            "x",
            vec![vec![0, -1], vec![1, 0]],
            vec![0, 1],
            vec![0, 1],
            None,
        )
        .unwrap();
        let err = p.run(vec![c(-1, 2), c(-1, 1)]).unwrap();
        assert_eq!(err.steps.len(), 2);
        let p = Pattern::new(
            "x",
            vec![vec![0, -1], vec![1, 0]],
            vec![1],
            vec![0, 1],
            None,
        )
        .unwrap();
        let err = p.run(vec![c(2, 1), c(-1, 1)]).unwrap_err();
        assert!(
            matches!(
                err,
                Error::InvalidPoint {
                    step: 0,
                    direction: 2,
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn schedule_validation() {
        let rows = vec![vec![0, -1], vec![1, 0]];
        assert!(Pattern::new("x", rows.clone(), vec![2], vec![0, 1], None).is_err());
        assert!(Pattern::new("x", rows.clone(), vec![0], vec![0, 0], None).is_err());
        assert!(Pattern::new("x", rows.clone(), vec![0], vec![0], None).is_err());
        assert!(Pattern::new("x", rows.clone(), vec![0], vec![1, 0], Some(vec![1, 2])).is_err());
        assert!(Pattern::new("x", rows, vec![0], vec![1, 0], Some(vec![3, 3])).is_ok());
    }

    #[test]
    fn periodicity_of_builtins() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for p in [Pattern::a1(), Pattern::a2(), Pattern::b2()] {
            let v = check_periodicity(&p, 50, Q, 10, &mut rng);
            assert!(v.periodic, "{}: {v:?}", p.name);
        }
        let mut short = Pattern::a2();
        short.schedule.directions.truncate(3);
        for nu in [vec![0, 1], vec![1, 0]] {
            short.schedule.nu = nu;
            assert!(!check_periodicity(&short, 10, Q, 10, &mut rng).periodic);
        }
    }

    #[test]
    fn b2_nu_is_identity_not_transposition() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut p = Pattern::b2();
        assert!(check_periodicity(&p, 20, Q, 10, &mut rng).periodic);
        p.schedule.nu = vec![1, 0];
        assert!(!check_periodicity(&p, 20, Q, 10, &mut rng).periodic);
    }

    #[test]
    fn involution_and_theta_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut done = 0;
        while done < 1000 {
            let p = [Pattern::a2(), Pattern::b2()][done % 2].clone();
            let k = (done / 2) % 2;
            let y: Vec<TruncatedSeries> = (0..2)
                .map(|_| TruncatedSeries::random(Q, 3, &mut rng, 10))
                .collect();
            let seed = YSeed::new(p.matrix.clone(), y).unwrap();
            let Ok(once) = seed.mutate(k) else { continue };
            let Ok(twice) = once.mutate(k) else { continue };
            assert_eq!(twice, seed);
            assert!(once.matrix.is_symmetrized_by(&p.theta()));
            done += 1;
        }
    }

    #[test]
    fn toml_round_trip_and_errors() {
        let text =
            "name = \"A2\"\nB = [[0, -1], [1, 0]]\nsequence = [0, 1, 0, 1, 0]\nnu = [1, 0]\n";
        assert_eq!(Pattern::parse_toml(text).unwrap(), Pattern::a2());
        let back = toml::to_string(&Pattern::b2().to_file()).unwrap();
        assert_eq!(Pattern::parse_toml(&back).unwrap(), Pattern::b2());
        let bad_b = "name = \"x\"\nB = [[0, 1], [1, 0]]\nsequence = [0]\nnu = [0, 1]\n";
        let err = Pattern::parse_toml(bad_b).unwrap_err();
        assert!(err.to_string().contains("sign-skew-symmetry"), "{err}");
        let bad_nu = "name = \"x\"\nB = [[0, -1], [1, 0]]\nsequence = [0]\nnu = [0, 0]\n";
        let err = Pattern::parse_toml(bad_nu).unwrap_err();
        assert!(err.to_string().contains("not a permutation"), "{err}");
    }

    #[test]
    fn mutation_over_prime_field() {
        let f5 = Field::prime(5).unwrap();
        let y = |v: i64| {
            TruncatedSeries::constant(
                FieldElement::Prime {
                    value: v as u64,
                    modulus: 5,
                },
                2,
            )
        };
        let traj = Pattern::a2().run(vec![y(3), y(2)]).unwrap();
        assert_eq!(traj.final_seed().y, vec![y(2), y(3)]);
        // y_1[2] = y_1⁻¹(1 + y_2 + y_1 y_2) vanishes at (2, 3) mod 5
        assert!(Pattern::a2().run(vec![y(2), y(3)]).is_err());
        assert_eq!(traj.initial.y[0].field(), f5);
    }
}
