//! The weight-two Bloch complex at finite precision: symbols `[α]`, the
//! differential `δ[α] = (1-α) ∧ α`, the functionals `ℓ_a = t_a ∘ log°`, and a
//! formal ledger of wedges `Σ c·(a ∧ b)` in `Λ²` of the unit group.
//!
//! Zero-testing a ledger splits every unit as `a = a(0)·exp(log° a)` and
//! checks the three pieces of `Λ²(k^× × (1 + t k[t]))` separately; see
//! [`zero_test_rational`].

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::series::{FlatElement, TruncatedSeries};

/// `ℓ_a(u)`: the coefficient of `t^a` in `log° u`.
///
/// Over `F_p` only `a < p` is meaningful; a series of precision above `p` is
/// cut down to precision `p` first, which does not change `ℓ_a` for `a < p`.
pub fn ell(a: usize, u: &TruncatedSeries) -> Result<FieldElement> {
    let n = u.precision();
    if a == 0 || a >= n {
        return Err(Error::IndexOutOfRange {
            index: a,
            precision: n,
        });
    }
    if !u.is_unit() {
        return Err(Error::NotUnit);
    }
    let u = match u.field() {
        Field::Prime(p) if a as u64 >= p => {
            return Err(Error::CharPPrecision {
                p,
                precision: a + 1,
            })
        }
        Field::Prime(p) if n as u64 > p => u.with_precision(p as usize),
        _ => u.clone(),
    };
    Ok(u.log_circ()?.coeff(a)?.clone())
}

/// A generator `[α]` of the Bloch group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlochSymbol(pub FlatElement);

impl BlochSymbol {
    pub fn new(series: TruncatedSeries) -> Result<Self> {
        Ok(BlochSymbol(FlatElement::new(series)?))
    }
}

/// A formal integer combination of Bloch symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlochChain {
    pub terms: Vec<(i64, BlochSymbol)>,
}

impl BlochChain {
    pub fn push(&mut self, coeff: i64, sym: BlochSymbol) {
        self.terms.push((coeff, sym));
    }

    /// `[a] - [b] + [b/a] - [(1-a⁻¹)/(1-b⁻¹)] + [(1-a)/(1-b)]`, defined when
    /// `a(1-a)b(1-b)(b-a)` is a unit.
    pub fn pentagon(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<BlochChain> {
        let args = pentagon_arguments(a, b)?;
        let mut chain = BlochChain::default();
        for (sign, arg) in [1, -1, 1, -1, 1].into_iter().zip(args) {
            chain.push(sign, BlochSymbol(arg));
        }
        Ok(chain)
    }

    pub fn delta(&self) -> Result<WedgeLedger> {
        let mut ledger = WedgeLedger::new();
        for (c, sym) in &self.terms {
            ledger.push(*c, sym.0.one_minus(), sym.0.series().clone())?;
        }
        Ok(ledger)
    }
}

/// The five arguments of the pentagon relation, in order
/// `a, b, b/a, (1-a⁻¹)/(1-b⁻¹), (1-a)/(1-b)`.
pub fn pentagon_arguments(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<[FlatElement; 5]> {
    let one = TruncatedSeries::one(a.field(), a.precision());
    let b_minus_a = b.checked_sub(a)?;
    if !b_minus_a.is_unit() {
        return Err(Error::NotUnit);
    }
    let fa = FlatElement::new(a.clone())?;
    let fb = FlatElement::new(b.clone())?;
    let ratio = b.checked_div(a)?;
    let cross = (&one - &a.invert()?).checked_div(&(&one - &b.invert()?))?;
    let shifted = (&one - a).checked_div(&(&one - b))?;
    Ok([
        fa,
        fb,
        FlatElement::new(ratio)?,
        FlatElement::new(cross)?,
        FlatElement::new(shifted)?,
    ])
}

/// `δ[α] = (1 - α) ∧ α`.
pub fn delta(sym: &BlochSymbol) -> WedgeLedger {
    let mut ledger = WedgeLedger::new();
    ledger
        .push(1, sym.0.one_minus(), sym.0.series().clone())
        .expect("1 - α and α are units of the same ring");
    ledger
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeTerm {
    pub coeff: i64,
    pub left: TruncatedSeries,
    pub right: TruncatedSeries,
}

/// `Σ c·(left ∧ right)`. Terms are stored as given; no cancellation happens
/// on insertion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WedgeLedger {
    terms: Vec<WedgeTerm>,
}

impl WedgeLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &[WedgeTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(
        &mut self,
        coeff: i64,
        left: TruncatedSeries,
        right: TruncatedSeries,
    ) -> Result<()> {
        if !left.is_unit() || !right.is_unit() {
            return Err(Error::NotUnit);
        }
        let reference = self.terms.first().map(|t| &t.left).unwrap_or(&left);
        for s in [&left, &right] {
            if s.field() != reference.field() {
                return Err(Error::FieldMismatch(
                    reference.field().to_string(),
                    s.field().to_string(),
                ));
            }
            if s.precision() != reference.precision() {
                return Err(Error::PrecisionMismatch(
                    reference.precision(),
                    s.precision(),
                ));
            }
        }
        self.terms.push(WedgeTerm { coeff, left, right });
        Ok(())
    }

    pub fn extend(&mut self, other: &WedgeLedger) -> Result<()> {
        for t in &other.terms {
            self.push(t.coeff, t.left.clone(), t.right.clone())?;
        }
        Ok(())
    }

    pub fn scaled(&self, k: i64) -> WedgeLedger {
        WedgeLedger {
            terms: self
                .terms
                .iter()
                .map(|t| WedgeTerm {
                    coeff: t.coeff * k,
                    ..t.clone()
                })
                .collect(),
        }
    }

    pub fn precision(&self) -> Option<usize> {
        self.terms.first().map(|t| t.left.precision())
    }

    pub fn field(&self) -> Option<Field> {
        self.terms.first().map(|t| t.left.field())
    }

    /// Precomputes `log°` of every entry so that many functional pairs can be
    /// evaluated cheaply.
    pub fn logs(&self) -> Result<LedgerLogs> {
        let entries = self
            .terms
            .iter()
            .map(|t| Ok((t.coeff, log_for_ell(&t.left)?, log_for_ell(&t.right)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LedgerLogs {
            field: self.field().unwrap_or(Field::Rational),
            entries,
        })
    }
}

fn log_for_ell(u: &TruncatedSeries) -> Result<TruncatedSeries> {
    match u.field() {
        Field::Prime(p) if u.precision() as u64 > p => u.with_precision(p as usize).log_circ(),
        _ => u.log_circ(),
    }
}

/// `log°` of every ledger entry.
#[derive(Debug, Clone)]
pub struct LedgerLogs {
    field: Field,
    entries: Vec<(i64, TruncatedSeries, TruncatedSeries)>,
}

impl LedgerLogs {
    /// `(ℓ_f ∧ ℓ_g)(W) = Σ c·(ℓ_f(a)ℓ_g(b) - ℓ_g(a)ℓ_f(b))`.
    pub fn pair(&self, f: usize, g: usize) -> Result<FieldElement> {
        let mut acc = self.field.zero();
        for (c, l, r) in &self.entries {
            let (lf, lg) = (logs_coeff(l, f)?, logs_coeff(l, g)?);
            let (rf, rg) = (logs_coeff(r, f)?, logs_coeff(r, g)?);
            let term = &(lf * rg) - &(lg * rf);
            acc = &acc + &term.scale_int(*c);
        }
        Ok(acc)
    }
}

fn logs_coeff(log: &TruncatedSeries, a: usize) -> Result<&FieldElement> {
    if a == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            precision: log.precision(),
        });
    }
    if let Field::Prime(p) = log.field() {
        if a as u64 >= p {
            return Err(Error::CharPPrecision {
                p,
                precision: a + 1,
            });
        }
    }
    log.coeff(a)
}

/// Evaluates the antisymmetric pairing `(ℓ_f ∧ ℓ_g)` on a ledger.
pub fn apply_functional_pair(f: usize, g: usize, w: &WedgeLedger) -> Result<FieldElement> {
    if w.is_empty() {
        for idx in [f, g] {
            if idx == 0 {
                return Err(Error::IndexOutOfRange {
                    index: 0,
                    precision: 0,
                });
            }
        }
        return Ok(Field::Rational.zero());
    }
    let n = w.precision().unwrap_or(0);
    for idx in [f, g] {
        if idx == 0 || idx >= n {
            return Err(Error::IndexOutOfRange {
                index: idx,
                precision: n,
            });
        }
    }
    w.logs()?.pair(f, g)
}

/// Which piece of `Λ²` failed to vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    /// `Λ²` of the principal units `1 + t k[t]`.
    Infinitesimal,
    /// constants ⊗ principal units.
    Mixed,
    /// `Λ²` of the constants.
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroVerdict {
    Zero,
    Nonzero(Component),
    /// Some constant could not be factored within the trial-division bound.
    Inconclusive,
}

/// Default trial-division bound for [`zero_test_rational`].
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// Decides whether a ledger vanishes in `Λ²(units) ⊗ Q`.
///
/// Each unit is written `a = a(0)·exp(L)` with `L = log° a`. The ledger then
/// vanishes iff
/// - the antisymmetric matrix `Σ c·(L_left ⊗ L_right - L_right ⊗ L_left)`
///   on the basis `t, …, t^(N-1)` is zero,
/// - for every prime `q` dividing a constant, `Σ c·(v_q(left)·L_right -
///   v_q(right)·L_left)` is zero,
/// - the exponent-vector form `Σ c·(e_left ∧ e_right)` is zero.
///
/// Signs of rational constants only contribute 2-torsion and are dropped.
///
/// Over `F_p` (with `N <= p`) the constants `F_p^×` are cyclic of order prime
/// to `p` and the principal units have exponent `p`, so the second and third
/// pieces vanish identically and the first is the whole answer, with no
/// torsion lost.
pub fn zero_test_rational(w: &WedgeLedger, factor_bound: u64) -> Result<ZeroVerdict> {
    let Some(n) = w.precision() else {
        return Ok(ZeroVerdict::Zero);
    };
    let field = w.field().expect("nonempty ledger");
    if let Field::Prime(p) = field {
        if n as u64 > p {
            return Err(Error::CharPPrecision { p, precision: n });
        }
    }
    let logs: Vec<(i64, TruncatedSeries, TruncatedSeries)> = w
        .terms
        .iter()
        .map(|t| Ok((t.coeff, t.left.log_circ()?, t.right.log_circ()?)))
        .collect::<Result<_>>()?;

    // Λ² of principal units
    for i in 1..n {
        for j in (i + 1)..n {
            let mut acc = field.zero();
            for (c, l, r) in &logs {
                let v = &(&l.coeffs()[i] * &r.coeffs()[j]) - &(&l.coeffs()[j] * &r.coeffs()[i]);
                acc = &acc + &v.scale_int(*c);
            }
            if !acc.is_zero() {
                return Ok(ZeroVerdict::Nonzero(Component::Infinitesimal));
            }
        }
    }

    if !field.is_rational() {
        return Ok(ZeroVerdict::Zero);
    }

    let mut exponents = Vec::with_capacity(w.terms.len());
    for t in &w.terms {
        let left = factor_constant(t.left.constant_term(), factor_bound);
        let right = factor_constant(t.right.constant_term(), factor_bound);
        match (left, right) {
            (Some(l), Some(r)) => exponents.push((l, r)),
            _ => return Ok(ZeroVerdict::Inconclusive),
        }
    }

    // constants ⊗ principal units
    let mut mixed: BTreeMap<&BigUint, TruncatedSeries> = BTreeMap::new();
    for ((c, l_log, r_log), (el, er)) in logs.iter().zip(&exponents) {
        for (q, e) in el {
            let entry = mixed
                .entry(q)
                .or_insert_with(|| TruncatedSeries::zero(field, n));
            *entry = &*entry + &r_log.scalar_mul(&field.from_i64(c * e));
        }
        for (q, e) in er {
            let entry = mixed
                .entry(q)
                .or_insert_with(|| TruncatedSeries::zero(field, n));
            *entry = &*entry - &l_log.scalar_mul(&field.from_i64(c * e));
        }
    }
    if mixed.values().any(|s| !s.is_zero()) {
        return Ok(ZeroVerdict::Nonzero(Component::Mixed));
    }

    // Λ² of constants
    let mut form: BTreeMap<(&BigUint, &BigUint), i128> = BTreeMap::new();
    for ((c, _, _), (el, er)) in logs.iter().zip(&exponents) {
        for (p, ep) in el {
            for (q, eq) in er {
                if p == q {
                    continue;
                }
                let v = (*c as i128) * (*ep as i128) * (*eq as i128);
                if p < q {
                    *form.entry((p, q)).or_default() += v;
                } else {
                    *form.entry((q, p)).or_default() -= v;
                }
            }
        }
    }
    if form.values().any(|v| *v != 0) {
        return Ok(ZeroVerdict::Nonzero(Component::Constant));
    }
    Ok(ZeroVerdict::Zero)
}

/// Prime factorization of a nonzero rational as `prime -> exponent`, sign
/// dropped. `None` when a cofactor has no factor up to `bound` yet is not
/// certified prime.
pub fn factor_constant(x: &FieldElement, bound: u64) -> Option<BTreeMap<BigUint, i64>> {
    let r = x.as_rational()?;
    let mut out = BTreeMap::new();
    for (n, sign) in [(r.numer(), 1i64), (r.denom(), -1i64)] {
        for (q, e) in factor_integer(n, bound)? {
            *out.entry(q).or_insert(0) += sign * e;
        }
    }
    out.retain(|_, e| *e != 0);
    Some(out)
}

fn factor_integer(n: &BigInt, bound: u64) -> Option<Vec<(BigUint, i64)>> {
    let mut n = n.abs().to_biguint().expect("absolute value");
    let mut factors = Vec::new();
    if n.is_zero() {
        return None;
    }
    // small cofactors finish in machine arithmetic
    let mut d: u64 = 2;
    loop {
        if n.is_one() {
            return Some(factors);
        }
        if let Some(small) = n.to_u64() {
            if d.checked_mul(d).is_none_or(|dd| dd > small) {
                factors.push((n, 1));
                return Some(factors);
            }
        } else if BigUint::from(d) * BigUint::from(d) > n {
            factors.push((n, 1));
            return Some(factors);
        }
        if d > bound {
            return None;
        }
        let dd = BigUint::from(d);
        let mut e = 0;
        loop {
            let (q, rem) = n.div_rem(&dd);
            if !rem.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            factors.push((dd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    fn qs(text: &str, n: usize) -> TruncatedSeries {
        TruncatedSeries::parse(Q, text, n).unwrap()
    }

    fn q(n: i64, d: i64) -> FieldElement {
        Q.ratio(n, d).unwrap()
    }

    #[test]
    fn ell_examples() {
        assert_eq!(ell(1, &qs("2+t", 3)).unwrap(), q(1, 2));
        assert_eq!(ell(2, &qs("2+t", 3)).unwrap(), q(-1, 8));
        assert!(ell(2, &qs("-5/3", 4)).unwrap().is_zero());
        assert!(ell(0, &qs("2+t", 3)).is_err());
        assert!(ell(3, &qs("2+t", 3)).is_err());
        assert_eq!(ell(1, &qs("t", 3)), Err(Error::NotUnit));
        let f5 = TruncatedSeries::from_ints(Field::Prime(5), &[2, 1, 0, 0, 0, 0, 0]);
        assert!(ell(4, &f5).is_ok());
        assert!(matches!(ell(5, &f5), Err(Error::CharPPrecision { .. })));
    }

    #[test]
    fn ell_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = TruncatedSeries::random(Q, 5, &mut rng, 9).with_precision(5);
            let b = TruncatedSeries::random(Q, 5, &mut rng, 9);
            if !a.is_unit() || !b.is_unit() {
                continue;
            }
            for i in 1..5 {
                assert_eq!(
                    ell(i, &(&a * &b)).unwrap(),
                    &ell(i, &a).unwrap() + &ell(i, &b).unwrap()
                );
            }
        }
    }

    #[test]
    fn delta_examples() {
        let sym = BlochSymbol::new(qs("2+t", 3)).unwrap();
        let d = delta(&sym);
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.terms()[0].coeff, 1);
        assert_eq!(d.terms()[0].left, qs("-1-t", 3));
        assert_eq!(d.terms()[0].right, qs("2+t", 3));
        assert!(matches!(
            BlochSymbol::new(qs("1+t", 3)),
            Err(Error::NotFlat(_))
        ));
    }

    #[test]
    fn pairing_examples() {
        let d = delta(&BlochSymbol::new(qs("2+t", 3)).unwrap());
        assert_eq!(apply_functional_pair(2, 1, &d).unwrap(), q(-1, 8));
        assert!(apply_functional_pair(2, 2, &d).unwrap().is_zero());
        assert!(apply_functional_pair(1, 1, &d).unwrap().is_zero());
        let d7 = delta(&BlochSymbol::new(qs("2+t+7*t^2", 3)).unwrap());
        assert_eq!(apply_functional_pair(2, 1, &d7).unwrap(), q(-1, 8));
        assert_eq!(
            apply_functional_pair(1, 2, &d).unwrap(),
            -apply_functional_pair(2, 1, &d).unwrap()
        );
        assert!(apply_functional_pair(3, 1, &d).is_err());
    }

    #[test]
    fn zero_test_basics() {
        assert_eq!(
            zero_test_rational(&WedgeLedger::new(), 100).unwrap(),
            ZeroVerdict::Zero
        );
        let a = qs("6 + t - 2*t^2", 4);
        let mut w = WedgeLedger::new();
        w.push(1, a.clone(), a.clone()).unwrap();
        assert_eq!(zero_test_rational(&w, 100).unwrap(), ZeroVerdict::Zero);

        let mut w = WedgeLedger::new();
        w.push(1, qs("2", 3), qs("3", 3)).unwrap();
        assert_eq!(
            zero_test_rational(&w, 100).unwrap(),
            ZeroVerdict::Nonzero(Component::Constant)
        );
        // sign is torsion: (-1) ∧ 3 vanishes rationally
        let mut w = WedgeLedger::new();
        w.push(1, qs("-1", 3), qs("3", 3)).unwrap();
        assert_eq!(zero_test_rational(&w, 100).unwrap(), ZeroVerdict::Zero);

        let mut w = WedgeLedger::new();
        w.push(1, qs("2", 3), qs("1+t", 3)).unwrap();
        assert_eq!(
            zero_test_rational(&w, 100).unwrap(),
            ZeroVerdict::Nonzero(Component::Mixed)
        );
        let mut w = WedgeLedger::new();
        w.push(1, qs("1+t", 3), qs("1+t^2", 3)).unwrap();
        assert_eq!(
            zero_test_rational(&w, 100).unwrap(),
            ZeroVerdict::Nonzero(Component::Infinitesimal)
        );
        // 2 ∧ 2 on both sides and a∧b + b∧a cancel
        let (x, y) = (qs("4 + t", 3), qs("9 - 3*t^2", 3));
        let mut w = WedgeLedger::new();
        w.push(2, x.clone(), y.clone()).unwrap();
        w.push(2, y, x).unwrap();
        assert_eq!(zero_test_rational(&w, 100).unwrap(), ZeroVerdict::Zero);
    }

    #[test]
    fn zero_test_inconclusive_beyond_bound() {
        // 1000003 is prime and exceeds 100^2
        let mut w = WedgeLedger::new();
        w.push(1, qs("1000003", 2), qs("2", 2)).unwrap();
        assert_eq!(
            zero_test_rational(&w, 100).unwrap(),
            ZeroVerdict::Inconclusive
        );
        assert_eq!(
            zero_test_rational(&w, 2000).unwrap(),
            ZeroVerdict::Nonzero(Component::Constant)
        );
    }

    #[test]
    fn factorization() {
        let f = factor_constant(&q(-360, 49), 100).unwrap();
        let got: Vec<(u64, i64)> = f.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect();
        assert_eq!(got, vec![(2, 3), (3, 2), (5, 1), (7, -2)]);
        assert!(factor_constant(&q(1, 1), 10).unwrap().is_empty());
        assert!(factor_constant(&q(97 * 89, 1), 10).is_none());
        assert!(factor_constant(&q(97 * 89, 1), 100).is_some());
    }

    #[test]
    fn pentagon_delta_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut hits = 0;
        while hits < 25 {
            let a = TruncatedSeries::random(Q, 4, &mut rng, 10);
            let b = TruncatedSeries::random(Q, 4, &mut rng, 10);
            let Ok(chain) = BlochChain::pentagon(&a, &b) else {
                continue;
            };
            let w = chain.delta().unwrap();
            assert_eq!(
                zero_test_rational(&w, DEFAULT_FACTOR_BOUND).unwrap(),
                ZeroVerdict::Zero
            );
            hits += 1;
        }
    }

    #[test]
    fn pentagon_delta_vanishes_mod_p() {
        let f7 = Field::Prime(7);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut hits = 0;
        while hits < 25 {
            let a = TruncatedSeries::random(f7, 6, &mut rng, 1);
            let b = TruncatedSeries::random(f7, 6, &mut rng, 1);
            let Ok(chain) = BlochChain::pentagon(&a, &b) else {
                continue;
            };
            let w = chain.delta().unwrap();
            assert_eq!(zero_test_rational(&w, 10).unwrap(), ZeroVerdict::Zero);
            hits += 1;
        }
    }

    #[test]
    fn splitting_a_product_changes_nothing() {
        let (b, c, d) = (qs("3 + t", 4), qs("-2 + 5*t^2", 4), qs("7/2 - t + t^3", 4));
        let mut joined = WedgeLedger::new();
        joined.push(3, &b * &c, d.clone()).unwrap();
        let mut split = WedgeLedger::new();
        split.push(3, b, d.clone()).unwrap();
        split.push(3, c, d).unwrap();
        for f in 1..4 {
            for g in 1..4 {
                assert_eq!(
                    apply_functional_pair(f, g, &joined).unwrap(),
                    apply_functional_pair(f, g, &split).unwrap()
                );
            }
        }
        assert_eq!(
            zero_test_rational(&joined, 100).unwrap(),
            zero_test_rational(&split, 100).unwrap()
        );
    }

    #[test]
    fn rejects_non_units_and_mixed_precision() {
        let mut w = WedgeLedger::new();
        assert_eq!(w.push(1, qs("t", 3), qs("2", 3)), Err(Error::NotUnit));
        w.push(1, qs("2", 3), qs("5", 3)).unwrap();
        assert_eq!(
            w.push(1, qs("2", 2), qs("5", 2)),
            Err(Error::PrecisionMismatch(3, 2))
        );
    }
}
