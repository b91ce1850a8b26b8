//! Exact coefficient fields: the rationals and prime fields of odd characteristic.
//!
//! Every element carries the field it lives in, so that mixing a rational with
//! a residue (or residues of different moduli) is caught at the operation that
//! mixes them. The `std::ops` impls panic on such misuse; the `checked_*`
//! methods report it as an [`Error`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest modulus accepted for a prime field; residues multiply inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

/// A coefficient field: either `Q` or `F_p` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// `F_p`, rejecting `p = 2`, composites and moduli that don't fit a word.
    pub fn prime(p: u64) -> Result<Field> {
        if !(3..MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Field::Rational)
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(n.into())),
            Field::Prime(p) => FieldElement::Prime {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den` in this field.
    pub fn ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                FieldElement::Prime {
                    value: r.to_u64().expect("residue fits u64"),
                    modulus: p,
                }
            }
        }
    }

    /// Parses `a`, `-a` or `a/b`. Over `F_p` the result is reduced mod `p`.
    pub fn parse(&self, text: &str) -> Result<FieldElement> {
        let text = text.trim();
        let bad = || Error::Parse(format!("not a field element: {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        self.from_bigint(&num).checked_div(&self.from_bigint(&den))
    }

    /// Number of elements for a prime field, `None` for `Q`.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p),
        }
    }

    /// All elements of a prime field in increasing residue order.
    pub fn elements(&self) -> Option<impl Iterator<Item = FieldElement> + '_> {
        let p = self.order()?;
        Some((0..p).map(move |v| FieldElement::Prime {
            value: v,
            modulus: p,
        }))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact element of `Q` (always reduced) or of `F_p` (least residue).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Prime { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Prime { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElement::Rational(_) => None,
            FieldElement::Prime { value, .. } => Some(*value),
        }
    }

    /// Re-establishes canonical form. Values built through this module are
    /// already canonical, so this is the identity on them.
    pub fn normalized(&self) -> FieldElement {
        match self {
            FieldElement::Rational(r) => {
                FieldElement::Rational(BigRational::new(r.numer().clone(), r.denom().clone()))
            }
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: value % modulus,
                modulus: *modulus,
            },
        }
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field().to_string(),
                other.field().to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Prime { value: a, modulus }, FieldElement::Prime { value: b, .. }) => {
                FieldElement::Prime {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (FieldElement::Prime { value: a, modulus }, FieldElement::Prime { value: b, .. }) => {
                FieldElement::Prime {
                    value: (a + modulus - b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Prime { value: a, modulus }, FieldElement::Prime { value: b, .. }) => {
                FieldElement::Prime {
                    value: a * b % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
            FieldElement::Prime { value, modulus } => {
                let egcd = (*value as i64).extended_gcd(&(*modulus as i64));
                debug_assert_eq!(egcd.gcd, 1);
                FieldElement::Prime {
                    value: egcd.x.rem_euclid(*modulus as i64) as u64,
                    modulus: *modulus,
                }
            }
        })
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Integer powers; negative exponents need a nonzero base.
    pub fn powi(&self, exp: i64) -> Result<FieldElement> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inv()?.pow(exp.unsigned_abs()))
        }
    }

    /// `n * self` for an integer `n`.
    pub fn scale_int(&self, n: i64) -> FieldElement {
        self * &self.field().from_i64(n)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("{} failed: {e}", stringify!($method)))
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(-r),
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Draws a random element: over `Q` a reduced `a/b` with `|a| <= height` and
/// `1 <= b <= height`; over `F_p` a uniform residue. `height` is ignored over
/// `F_p`.
pub fn random_element<R: Rng + ?Sized>(field: Field, rng: &mut R, height: u64) -> FieldElement {
    let height = height.max(1) as i64;
    match field {
        Field::Rational => {
            let num = rng.gen_range(-height..=height);
            let den = rng.gen_range(1..=height);
            FieldElement::Rational(BigRational::new(num.into(), den.into()))
        }
        Field::Prime(p) => FieldElement::Prime {
            value: rng.gen_range(0..p),
            modulus: p,
        },
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Height of a rational (max of |numerator| and denominator); 0 for residues.
pub fn height(x: &FieldElement) -> BigInt {
    match x {
        FieldElement::Rational(r) => r.numer().abs().max(r.denom().clone()),
        FieldElement::Prime { .. } => BigInt::zero(),
    }
}
