//! Exact arithmetic kernel: arbitrary-precision rationals, half-integer
//! exponents, phases mod 2 and multivariate polynomial identity checking.
//!
//! All values are immutable and all operations are pure. Nothing in this
//! module (or anywhere downstream) rounds.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational number in canonical reduced form.
///
/// Invariants: `gcd(|numerator|, denominator) = 1` and `denominator > 0`.
/// Both are maintained by the wrapped [`BigRational`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// Canonical reduced rational `p/q`. Errors when `q = 0`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    pub fn from_big(p: BigInt, q: BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(p, q)))
    }

    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn sq(&self) -> Self {
        Rat(&self.0 * &self.0)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(self.0.recip()))
    }

    /// Largest integer `n` with `n <= self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Integer value when the rational is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// Exact conversion to a half-integer, when the denominator is 1 or 2.
    pub fn to_half(&self) -> Result<HalfInt> {
        let doubled = &self.0 * BigInt::from(2);
        if !doubled.is_integer() {
            return Err(Error::NotHalfInteger(self.to_string()));
        }
        let d = doubled
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::NotHalfInteger(self.to_string()))?;
        Ok(HalfInt::from_doubled(d))
    }

    /// Representative of `self` in `[0, modulus)` for a positive modulus.
    pub fn rem_euclid(&self, modulus: i64) -> Self {
        debug_assert!(modulus > 0);
        let m = BigRational::from_integer(BigInt::from(modulus));
        let q = (&self.0 / &m).floor();
        Rat(&self.0 - q * m)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl From<HalfInt> for Rat {
    fn from(h: HalfInt) -> Self {
        Rat(BigRational::new(BigInt::from(h.doubled()), BigInt::from(2)))
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat(self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(&self.0 $op rhs.0)
            }
        }
        impl<'a, 'b> $trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
    };
}

rat_binop!(Add, add, +);
rat_binop!(Sub, sub, -);
rat_binop!(Mul, mul, *);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(self.0 / &rhs.0)
    }
}

impl Div<Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(&self.0 / rhs.0)
    }
}

impl<'b> Div<&'b Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &'b Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Rat {
    /// Serializes as `p/q`, or plain `p` when the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int =
            |t: &str| BigInt::from_str(t.trim()).map_err(|_| Error::ParseRational(s.to_string()));
        match s.split_once('/') {
            None => Ok(Rat(BigRational::from_integer(parse_int(s)?))),
            Some((p, q)) => {
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Ok(Rat(BigRational::new(parse_int(p)?, q)))
            }
        }
    }
}

/// A half-integer, stored as its doubled value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };
    pub const HALF: HalfInt = HalfInt { doubled: 1 };
    pub const ONE: HalfInt = HalfInt { doubled: 2 };

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub const fn int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// Integer value when the half-integer is a whole integer.
    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.doubled / 2)
    }

    pub fn times(self, k: i64) -> Self {
        HalfInt {
            doubled: self.doubled * k,
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            doubled: self.doubled + rhs.doubled,
        }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            doubled: self.doubled - rhs.doubled,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt {
            doubled: -self.doubled,
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// A braiding phase: the exponent `x` of `e^{pi i x}`, reduced mod 2.
///
/// Invariant: `0 <= residue < 2`. The additive group of these residues is
/// the group of rationals in `[0, 2)` under addition mod 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Phase {
    residue: Rat,
}

impl Phase {
    pub fn zero() -> Self {
        Phase {
            residue: Rat::zero(),
        }
    }

    /// Phase with exponent `x`, reduced into `[0, 2)`.
    pub fn from_exponent(x: Rat) -> Self {
        Phase {
            residue: x.rem_euclid(2),
        }
    }

    pub fn residue(&self) -> &Rat {
        &self.residue
    }

    pub fn is_trivial(&self) -> bool {
        self.residue.is_zero()
    }

    /// True when the phase is the sign `-1`, i.e. exponent 1 mod 2.
    pub fn is_sign_flip(&self) -> bool {
        self.residue == Rat::one()
    }

    pub fn add(&self, other: &Phase) -> Phase {
        Phase::from_exponent(&self.residue + &other.residue)
    }

    pub fn inverse(&self) -> Phase {
        Phase::from_exponent(-&self.residue)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(pi i {})", self.residue)
    }
}

/// Addition of phase exponents mod 2.
pub fn phase_add(x: &Phase, y: &Phase) -> Phase {
    x.add(y)
}

/// Multivariate polynomial over [`Rat`] with a fixed, ordered variable list.
///
/// No zero coefficients are stored; equality is coefficient-wise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    /// The variable with the given index, as a polynomial.
    pub fn var(vars: &[&str], index: usize) -> Self {
        let mut p = MPoly::zero(vars);
        assert!(index < p.vars.len(), "variable index out of range");
        let mut exps = vec![0; p.vars.len()];
        exps[index] = 1;
        p.terms.insert(exps, Rat::one());
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_vars(&self, other: &MPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(
                self.vars.clone(),
                other.vars.clone(),
            ));
        }
        Ok(())
    }

    fn insert(&mut self, exps: Vec<u32>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (exps, c) in &other.terms {
            out.insert(exps.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        self.same_vars(other)?;
        let mut out = MPoly::zero_like(self);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(exps, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut out = MPoly::constant_like(self, Rat::one());
        for _ in 0..n {
            out = out.mul(self).expect("same variable list");
        }
        out
    }

    fn zero_like(p: &MPoly) -> MPoly {
        MPoly {
            vars: p.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn constant_like(p: &MPoly, c: Rat) -> MPoly {
        let mut out = MPoly::zero_like(p);
        if !c.is_zero() {
            out.terms.insert(vec![0; p.vars.len()], c);
        }
        out
    }

    /// Exact evaluation at a point, one value per variable.
    pub fn eval(&self, values: &[Rat]) -> Rat {
        assert_eq!(values.len(), self.vars.len(), "wrong number of values");
        let mut total = Rat::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (e, v) in exps.iter().zip(values) {
                for _ in 0..*e {
                    term = term * v;
                }
            }
            total += term;
        }
        total
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (v, e) in self.vars.iter().zip(exps) {
                match e.cmp(&1) {
                    Ordering::Less => {}
                    Ordering::Equal => write!(f, "*{v}")?,
                    Ordering::Greater => write!(f, "*{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// Canonical reduced rational `p/q` with positive denominator.
pub fn rat_canonical(p: i64, q: i64) -> Result<Rat> {
    Rat::new(p, q)
}

/// Self-check suite for the arithmetic kernel.
pub fn suite() -> crate::report::Report {
    let mut report = crate::report::Report::new("ratcore");
    report.push(
        "canonical 2/4",
        "(2, 4)",
        "1/2",
        rat_canonical(2, 4).expect("q != 0"),
    );
    report.push(
        "canonical -5/-10",
        "(-5, -10)",
        "1/2",
        rat_canonical(-5, -10).expect("q != 0"),
    );
    report.push(
        "canonical 7/1",
        "(7, 1)",
        "7",
        rat_canonical(7, 1).expect("q != 0"),
    );
    report.push(
        "zero denominator rejected",
        "(1, 0)",
        "zero denominator",
        rat_canonical(1, 0).expect_err("q = 0"),
    );
    let x = Phase::from_exponent(rat_canonical(3, 2).expect("q != 0"));
    let y = Phase::from_exponent(rat_canonical(1, 2).expect("q != 0"));
    report.push("phase 3/2 + 1/2", "mod 2", "e^(pi i 0)", phase_add(&x, &y));
    let vars = &["x", "y"];
    let xv = MPoly::var(vars, 0);
    let yv = MPoly::var(vars, 1);
    let lhs = xv.add(&yv).expect("same vars").pow(2);
    let rhs = xv
        .pow(2)
        .add(&xv.mul(&yv).expect("same vars").scale(&Rat::int(2)))
        .and_then(|p| p.add(&yv.pow(2)))
        .expect("same vars");
    report.push_bool(
        "(x+y)^2 = x^2 + 2xy + y^2",
        "two variables",
        poly_equal(&lhs, &rhs).expect("same vars"),
    );
    report
}

/// Exact coefficient-wise equality of two polynomials over the same variables.
pub fn poly_equal(p: &MPoly, q: &MPoly) -> Result<bool> {
    p.same_vars(q)?;
    Ok(p.terms == q.terms)
}
