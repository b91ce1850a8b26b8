//! Infinitesimal dilogarithms.
//!
//! In characteristic 0, `ℓi_{m,w}` on `k_m^♭` for `1 < m < w < 2m`, given
//! three ways: the defining formula ([`li_direct`]), the Bloch-complex
//! expression on an arbitrary lift ([`li_via_lift`]), and for `m <= 3` the
//! explicit rational formulas ([`li_closed_form`]).
//!
//! In characteristic `p`, the 1½-logarithm `£₁` and `ℓi₂^(p)` on dual numbers,
//! again with a Bloch-complex expression ([`li2p_via_lift`]).

use std::fmt;

use crate::bloch::{delta, BlochSymbol};
use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::series::{FlatElement, TruncatedSeries};

/// Modulus `m` and weight `w` with `1 < m < w < 2m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DilogParams {
    m: usize,
    w: usize,
}

impl DilogParams {
    pub fn new(m: usize, w: usize) -> Result<Self> {
        if 1 < m && m < w && w < 2 * m {
            Ok(DilogParams { m, w })
        } else {
            Err(Error::InvalidDilogParams { m, w })
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn w(&self) -> usize {
        self.w
    }

    /// The `m - 1` weights available at modulus `m`.
    pub fn all_for_modulus(m: usize) -> Vec<DilogParams> {
        (m + 1..2 * m)
            .filter_map(|w| DilogParams::new(m, w).ok())
            .collect()
    }
}

impl fmt::Display for DilogParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.w)
    }
}

fn require_char_zero(a: &TruncatedSeries) -> Result<()> {
    if a.field().is_rational() {
        Ok(())
    } else {
        Err(Error::RequiresCharZero)
    }
}

/// `ℓi_{m,w}(s e^u) = t_{w-1}( log°(1 - s e^{u|_m}) · (∂u/∂t)|_{w-m} )`.
///
/// `a` may be given at any precision: shorter inputs are zero-padded to `w`,
/// longer ones are cut to `w` (higher terms cannot reach `t^(w-1)`).
pub fn li_direct(params: DilogParams, a: &TruncatedSeries) -> Result<FieldElement> {
    require_char_zero(a)?;
    let (m, w) = (params.m, params.w);
    let a = FlatElement::new(a.with_precision(w))?;
    let s = a.constant_term().clone();
    let u = a.log_circ()?;
    let lifted = u.truncate_below(m)?.exp()?.scalar_mul(&s);
    let one = TruncatedSeries::one(a.field(), w);
    let log_part = (&one - &lifted).log_circ()?;
    let du = u.derivative().truncate_below(w - m)?;
    Ok((&log_part * &du).coeff(w - 1)?.clone())
}

/// `g_{m,w}[α̃] = Σ_{1<=i<=w-m} i·(ℓ_{w-i} ∧ ℓ_i)(δ[α̃])` on a lift `α̃`.
/// Lifts shorter than `w` are zero-padded.
pub fn li_via_lift(params: DilogParams, lift: &TruncatedSeries) -> Result<FieldElement> {
    require_char_zero(lift)?;
    let n = lift.precision().max(params.w);
    let sym = BlochSymbol::new(lift.with_precision(n))?;
    let logs = delta(&sym).logs()?;
    let mut acc = Field::Rational.zero();
    for i in 1..=(params.w - params.m) {
        acc = &acc + &logs.pair(params.w - i, i)?.scale_int(i as i64);
    }
    Ok(acc)
}

/// The dilogarithms with explicit rational formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    Li23,
    Li34,
    Li35,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 3] = [ClosedForm::Li23, ClosedForm::Li34, ClosedForm::Li35];

    pub fn params(&self) -> DilogParams {
        match self {
            ClosedForm::Li23 => DilogParams { m: 2, w: 3 },
            ClosedForm::Li34 => DilogParams { m: 3, w: 4 },
            ClosedForm::Li35 => DilogParams { m: 3, w: 5 },
        }
    }
}

/// Explicit formulas for `ℓi_{2,3}(s + u₁t)` and `ℓi_{3,w}(s + u₁t + u₂t²)`.
/// `u2` is ignored for `ℓi_{2,3}`.
pub fn li_closed_form(
    which: ClosedForm,
    s: &FieldElement,
    u1: &FieldElement,
    u2: &FieldElement,
) -> Result<FieldElement> {
    if s.is_zero() || s.is_one() {
        return Err(Error::NotFlat(s.to_string()));
    }
    let k = s.field();
    let int = |n: i64| k.from_i64(n);
    let sm1 = s - &int(1);
    let ss = s * &sm1; // s(s-1)
    Ok(match which {
        ClosedForm::Li23 => {
            let num = -u1.pow(3);
            let den = &int(2) * &ss.pow(2);
            num / den
        }
        ClosedForm::Li34 => {
            let first = u1.pow(4) / int(3) * (&(&int(2) * s) - &int(1)) / ss.pow(3);
            let second = &(&u1.pow(2) * u2) / &ss.pow(2);
            first - second
        }
        ClosedForm::Li35 => {
            let two_s_minus_1 = &(&int(2) * s) - &int(1);
            let t1 = u1.pow(5) / int(4) * (&sm1.pow(3) - &s.pow(3)) / ss.pow(4);
            let t2 = u1.pow(5) / (&int(3) * &ss.pow(3));
            let t3 = int(5) / int(3) * &u1.pow(3) * u2 * &two_s_minus_1 / ss.pow(3);
            let t4 = int(5) / int(2) * u1 * &u2.pow(2) / ss.pow(2);
            t1 - t2 + t3 - t4
        }
    })
}

/// `ℓi_{m,w}` through the closed form, reading `s, u₁, u₂` off a series.
pub fn li_closed_form_series(which: ClosedForm, a: &TruncatedSeries) -> Result<FieldElement> {
    require_char_zero(a)?;
    let a = a.with_precision(3);
    li_closed_form(which, &a.coeffs()[0], &a.coeffs()[1], &a.coeffs()[2])
}

/// `s + α t` in `k[t]/(t²)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualNumber {
    pub s: FieldElement,
    pub alpha: FieldElement,
}

impl DualNumber {
    pub fn new(s: FieldElement, alpha: FieldElement) -> Result<Self> {
        if s.field() != alpha.field() {
            return Err(Error::FieldMismatch(
                s.field().to_string(),
                alpha.field().to_string(),
            ));
        }
        Ok(DualNumber { s, alpha })
    }

    /// The image of a series in `k_2`.
    pub fn from_series(a: &TruncatedSeries) -> Self {
        let a = a.with_precision(2);
        DualNumber {
            s: a.coeffs()[0].clone(),
            alpha: a.coeffs()[1].clone(),
        }
    }

    pub fn to_series(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.s.field(), vec![self.s.clone(), self.alpha.clone()])
            .expect("same field")
    }

    pub fn is_flat(&self) -> bool {
        !self.s.is_zero() && !self.s.is_one()
    }

    /// `y̲ = s`.
    pub fn underline(&self) -> &FieldElement {
        &self.s
    }

    /// `ȳ = α / (s(1-s))`.
    pub fn overline(&self) -> Result<FieldElement> {
        if !self.is_flat() {
            return Err(Error::NotFlat(self.s.to_string()));
        }
        let one = self.s.field().one();
        Ok(&self.alpha / &(&self.s * &(&one - &self.s)))
    }
}

impl fmt::Display for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_series())
    }
}

fn require_odd_prime(x: &FieldElement) -> Result<u64> {
    match x.field() {
        Field::Prime(p) => Ok(p),
        Field::Rational => Err(Error::RequiresPrimeField),
    }
}

/// Kontsevich's 1½-logarithm `£₁(s) = Σ_{1<=i<p} s^i / i`.
pub fn pounds1(s: &FieldElement) -> Result<FieldElement> {
    let p = require_odd_prime(s)?;
    let field = s.field();
    let mut acc = field.zero();
    let mut pow = field.one();
    for i in 1..p {
        pow = &pow * s;
        acc = &acc + &(&pow / &field.from_i64(i as i64));
    }
    Ok(acc)
}

/// `ℓi₂^(p)(y) = ȳ^p · £₁(y̲)`.
pub fn li2p(y: &DualNumber) -> Result<FieldElement> {
    let p = require_odd_prime(&y.s)?;
    Ok(&y.overline()?.pow(p) * &pounds1(&y.s)?)
}

/// `ℓi₂^(p) = (½ Σ_{1<=i<p} i·(ℓ_{p-i} ∧ ℓ_i)) ∘ δ` on a lift to `k_p`.
/// The lift is zero-padded or cut to precision `p`.
pub fn li2p_via_lift(lift: &TruncatedSeries) -> Result<FieldElement> {
    let field = lift.field();
    let Field::Prime(p) = field else {
        return Err(Error::RequiresPrimeField);
    };
    let p_us = p as usize;
    let sym = BlochSymbol::new(lift.with_precision(p_us))?;
    let logs = delta(&sym).logs()?;
    let mut acc = field.zero();
    for i in 1..p_us {
        acc = &acc + &logs.pair(p_us - i, i)?.scale_int(i as i64);
    }
    Ok(&acc / &field.from_i64(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    fn q(n: i64, d: i64) -> FieldElement {
        Q.ratio(n, d).unwrap()
    }

    fn qs(text: &str, n: usize) -> TruncatedSeries {
        TruncatedSeries::parse(Q, text, n).unwrap()
    }

    fn p23() -> DilogParams {
        DilogParams::new(2, 3).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(DilogParams::new(2, 3).is_ok());
        assert!(DilogParams::new(2, 4).is_err());
        assert!(DilogParams::new(1, 1).is_err());
        assert!(DilogParams::new(3, 3).is_err());
        assert_eq!(DilogParams::all_for_modulus(4).len(), 3);
    }

    #[test]
    fn direct_examples() {
        assert_eq!(li_direct(p23(), &qs("2+t", 2)).unwrap(), q(-1, 8));
        assert!(li_direct(p23(), &qs("-3/7", 2)).unwrap().is_zero());
        assert_eq!(li_direct(p23(), &qs("3/2 - 1/4*t", 2)).unwrap(), q(1, 72));
        assert!(matches!(
            li_direct(p23(), &qs("1+t", 2)),
            Err(Error::NotFlat(_))
        ));
        let f5 = TruncatedSeries::from_ints(Field::Prime(5), &[2, 1]);
        assert_eq!(li_direct(p23(), &f5), Err(Error::RequiresCharZero));
    }

    #[test]
    fn lift_examples() {
        assert_eq!(li_via_lift(p23(), &qs("2+t", 3)).unwrap(), q(-1, 8));
        assert_eq!(li_via_lift(p23(), &qs("2+t+7*t^2", 3)).unwrap(), q(-1, 8));
        assert!(li_via_lift(p23(), &qs("5", 3)).unwrap().is_zero());
    }

    #[test]
    fn closed_form_examples() {
        let z = Q.zero();
        assert_eq!(
            li_closed_form(ClosedForm::Li23, &q(2, 1), &q(1, 1), &z).unwrap(),
            q(-1, 8)
        );
        assert_eq!(
            li_closed_form(ClosedForm::Li23, &q(3, 4), &q(1, 4), &z).unwrap(),
            q(-2, 9)
        );
        assert!(li_closed_form(ClosedForm::Li34, &q(5, 3), &z, &q(7, 2))
            .unwrap()
            .is_zero());
        assert!(li_closed_form(ClosedForm::Li35, &q(1, 1), &z, &z).is_err());
    }

    #[test]
    fn hand_pentagon_terms() {
        let terms = ["2+t", "3+t", "3/2 - 1/4*t", "3/4 + 1/4*t", "1/2 + 1/4*t"];
        let values: Vec<FieldElement> = terms
            .iter()
            .map(|t| li_direct(p23(), &qs(t, 2)).unwrap())
            .collect();
        assert_eq!(
            values,
            vec![q(-1, 8), q(-1, 72), q(1, 72), q(-2, 9), q(-1, 8)]
        );
    }

    #[test]
    fn direct_matches_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for which in ClosedForm::ALL {
            let mut done = 0;
            while done < 50 {
                let a = TruncatedSeries::random(Q, which.params().m(), &mut rng, 10);
                if a.is_flat().is_none() {
                    continue;
                }
                assert_eq!(
                    li_direct(which.params(), &a).unwrap(),
                    li_closed_form_series(which, &a).unwrap(),
                    "{which:?} at {a}"
                );
                done += 1;
            }
        }
    }

    #[test]
    fn pounds_examples() {
        let f5 = Field::prime(5).unwrap();
        assert!(pounds1(&f5.zero()).unwrap().is_zero());
        assert_eq!(pounds1(&f5.from_i64(2)).unwrap(), f5.from_i64(4));
        assert_eq!(pounds1(&f5.from_i64(3)).unwrap(), f5.from_i64(3));
        assert_eq!(pounds1(&f5.from_i64(4)).unwrap(), f5.from_i64(4));
        assert_eq!(pounds1(&q(1, 2)), Err(Error::RequiresPrimeField));
    }

    #[test]
    fn li2p_examples() {
        let f5 = Field::prime(5).unwrap();
        let y = |s, a| DualNumber::new(f5.from_i64(s), f5.from_i64(a)).unwrap();
        assert_eq!(li2p(&y(2, 1)).unwrap(), f5.from_i64(3));
        assert_eq!(li2p(&y(3, 1)).unwrap(), f5.from_i64(2));
        assert!(li2p(&y(4, 0)).unwrap().is_zero());
        assert!(li2p(&y(1, 3)).is_err());
        assert!((li2p(&y(2, 1)).unwrap() + li2p(&y(3, 1)).unwrap()).is_zero());
    }

    #[test]
    fn li2p_lift_examples() {
        let f5 = Field::prime(5).unwrap();
        let lift = |c: &[i64]| TruncatedSeries::from_ints(f5, c);
        assert_eq!(
            li2p_via_lift(&lift(&[2, 1, 0, 0, 0])).unwrap(),
            f5.from_i64(3)
        );
        assert_eq!(
            li2p_via_lift(&lift(&[3, 1, 0, 0, 0])).unwrap(),
            f5.from_i64(2)
        );
        assert!(li2p_via_lift(&lift(&[3, 0, 0, 0, 0])).unwrap().is_zero());
        assert_eq!(li2p_via_lift(&qs("2+t", 5)), Err(Error::RequiresPrimeField));
    }
}
