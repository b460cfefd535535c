//! Truncated bivariate formal series: a charge variable `z` with integer
//! exponents and a weight variable `q` with half-integer exponents.
//!
//! Every series carries its truncation order and an explicit charge window
//! `|charge| <= charge_bound`. Multiplication propagates the order through
//! the valuation-aware rule `min(ord_a + val_b, ord_b + val_a)`, so every
//! kept coefficient is exactly correct. Charge truncation exactness is the
//! caller's responsibility: the window must be chosen so that every dropped
//! sector has lowest weight above the truncation order.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ratcore::{HalfInt, Rat};

/// Sentinel used as the valuation of the zero series.
const VAL_INFINITY: HalfInt = HalfInt::from_doubled(i64::MAX / 4);

/// A truncated formal series `sum c(charge, wt) z^charge q^wt`.
///
/// Invariants: no zero coefficients are stored, every stored weight is
/// `<= order` and every stored charge satisfies `|charge| <= charge_bound`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharSeries {
    order: HalfInt,
    charge_bound: i64,
    terms: BTreeMap<(i64, HalfInt), Rat>,
}

impl CharSeries {
    pub fn zero(order: HalfInt, charge_bound: i64) -> Self {
        CharSeries {
            order,
            charge_bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: HalfInt, charge_bound: i64) -> Self {
        CharSeries::monomial(0, HalfInt::ZERO, Rat::one(), order, charge_bound)
    }

    /// The single term `coeff * z^charge q^wt` (empty if outside the window).
    pub fn monomial(
        charge: i64,
        wt: HalfInt,
        coeff: Rat,
        order: HalfInt,
        charge_bound: i64,
    ) -> Self {
        let mut s = CharSeries::zero(order, charge_bound);
        s.insert(charge, wt, coeff);
        s
    }

    pub fn order(&self) -> HalfInt {
        self.order
    }

    pub fn charge_bound(&self) -> i64 {
        self.charge_bound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest stored weight, or the infinite sentinel for the zero series.
    pub fn valuation(&self) -> HalfInt {
        self.terms
            .keys()
            .map(|&(_, w)| w)
            .min()
            .unwrap_or(VAL_INFINITY)
    }

    pub fn coeff(&self, charge: i64, wt: HalfInt) -> Rat {
        self.terms
            .get(&(charge, wt))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, HalfInt, &Rat)> {
        self.terms.iter().map(|(&(c, w), r)| (c, w, r))
    }

    fn insert(&mut self, charge: i64, wt: HalfInt, coeff: Rat) {
        if coeff.is_zero() || wt > self.order || charge.abs() > self.charge_bound {
            return;
        }
        match self.terms.entry((charge, wt)) {
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

    pub fn add(&self, other: &CharSeries) -> CharSeries {
        let mut out = CharSeries::zero(
            self.order.min(other.order),
            self.charge_bound.min(other.charge_bound),
        );
        for (&(c, w), r) in self.terms.iter().chain(&other.terms) {
            out.insert(c, w, r.clone());
        }
        out
    }

    pub fn sub(&self, other: &CharSeries) -> CharSeries {
        self.add(&other.scale(&Rat::int(-1)))
    }

    pub fn scale(&self, k: &Rat) -> CharSeries {
        let mut out = CharSeries::zero(self.order, self.charge_bound);
        if k.is_zero() {
            return out;
        }
        for (&(c, w), r) in &self.terms {
            out.terms.insert((c, w), r * k);
        }
        out
    }

    /// Multiply by the monomial `coeff * z^charge q^wt`. The truncation order
    /// shifts along with the weights, so exactness is preserved even for
    /// negative `wt`.
    pub fn mul_monomial(&self, charge: i64, wt: HalfInt, coeff: &Rat) -> CharSeries {
        let mut out = CharSeries::zero(self.order + wt, self.charge_bound);
        if coeff.is_zero() {
            return out;
        }
        for (&(c, w), r) in &self.terms {
            out.insert(c + charge, w + wt, r * coeff);
        }
        out
    }

    /// Truncated product. The result is exact up to
    /// `min(ord_self + val_other, ord_other + val_self)`.
    pub fn mul(&self, other: &CharSeries) -> CharSeries {
        let order = if self.is_zero() || other.is_zero() {
            self.order.max(other.order)
        } else {
            (self.order + other.valuation()).min(other.order + self.valuation())
        };
        let mut out = CharSeries::zero(order, self.charge_bound.min(other.charge_bound));
        for (&(ca, wa), ra) in &self.terms {
            for (&(cb, wb), rb) in &other.terms {
                out.insert(ca + cb, wa + wb, ra * rb);
            }
        }
        out
    }

    /// Re-truncate to a lower order (used to align operands before comparison).
    pub fn truncate(&self, order: HalfInt) -> CharSeries {
        let mut out = CharSeries::zero(order.min(self.order), self.charge_bound);
        for (&(c, w), r) in &self.terms {
            out.insert(c, w, r.clone());
        }
        out
    }

    /// All `(charge, weight, coefficient)` triples in sorted order.
    pub fn to_triples(&self) -> Vec<(i64, String, String)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(&(c, w), _)| (w, c));
        v.into_iter()
            .map(|(&(c, w), r)| (c, w.to_string(), r.to_string()))
            .collect()
    }

    /// Coefficients that differ between the two series, up to the common
    /// order and window.
    pub fn mismatches(&self, other: &CharSeries) -> Vec<(i64, HalfInt, Rat, Rat)> {
        let order = self.order.min(other.order);
        let bound = self.charge_bound.min(other.charge_bound);
        let mut keys: Vec<(i64, HalfInt)> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .filter(|&(c, w)| w <= order && c.abs() <= bound)
            .collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|(c, w)| {
                let a = self.coeff(c, w);
                let b = other.coeff(c, w);
                (a != b).then_some((c, w, a, b))
            })
            .collect()
    }
}

impl fmt::Display for CharSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O(q^{})", self.order + HalfInt::HALF);
        }
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(&(c, w), _)| (w, c));
        for (i, (&(c, w), r)) in v.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{r}")?;
            if c != 0 {
                write!(f, "·z^{c}")?;
            }
            if w != HalfInt::ZERO {
                write!(f, "·q^{{{w}}}")?;
            }
        }
        write!(f, " + O(q^{})", self.order + HalfInt::HALF)
    }
}

/// Truncated product of two series (free function form).
pub fn series_mul(a: &CharSeries, b: &CharSeries) -> CharSeries {
    a.mul(b)
}

/// The partition generating function `prod_{n>=1} (1 - q^n)^{-1}`, truncated.
///
/// Charge support is `{0}`; the charge bound is kept maximal so the series
/// never narrows a product's window.
pub fn partition_series(order: HalfInt) -> CharSeries {
    let top = (order.doubled() / 2).max(0) as usize;
    let mut table = vec![Rat::zero(); top + 1];
    table[0] = Rat::one();
    for n in 1..=top {
        for w in n..=top {
            let add = table[w - n].clone();
            table[w] = &table[w] + &add;
        }
    }
    let mut s = CharSeries::zero(order, i64::MAX / 4);
    for (w, c) in table.into_iter().enumerate() {
        s.insert(0, HalfInt::int(w as i64), c);
    }
    s
}

/// One infinite product family `prod_{n>=1} (1 + sign z^charge q^{offset + step n})^{e}`
/// with `e = +1` (direct) or `e = -1` (inverse).
#[derive(Clone, Copy, Debug)]
pub struct FactorFamily {
    pub sign: i8,
    pub charge: i64,
    pub offset: HalfInt,
    pub step: HalfInt,
    pub inverse: bool,
}

impl FactorFamily {
    pub fn new(sign: i8, charge: i64, offset: HalfInt, step: HalfInt, inverse: bool) -> Self {
        FactorFamily {
            sign,
            charge,
            offset,
            step,
            inverse,
        }
    }
}

/// Exact truncated expansion of a product of factor families.
///
/// Requires each family to have `step > 0` and `offset + step > 0`, so that
/// only finitely many factors act below the truncation order.
pub fn product_form(
    factors: &[FactorFamily],
    order: HalfInt,
    charge_bound: i64,
) -> Result<CharSeries> {
    for f in factors {
        if f.step <= HalfInt::ZERO || f.offset + f.step <= HalfInt::ZERO {
            return Err(Error::NonTerminatingFactor);
        }
        if f.sign != 1 && f.sign != -1 {
            return Err(Error::Precondition(format!(
                "factor sign {} is not ±1",
                f.sign
            )));
        }
    }
    let mut acc = CharSeries::one(order, charge_bound);
    for f in factors {
        let mut n = 1i64;
        loop {
            let d = f.offset + f.step.times(n);
            if d > order {
                break;
            }
            let factor = single_factor(f, d, order, charge_bound);
            acc = acc.mul(&factor);
            n += 1;
        }
    }
    Ok(acc)
}

fn single_factor(f: &FactorFamily, d: HalfInt, order: HalfInt, charge_bound: i64) -> CharSeries {
    let sign = Rat::int(f.sign as i64);
    let mut s = CharSeries::one(order, charge_bound);
    if !f.inverse {
        s.insert(f.charge, d, sign);
        return s;
    }
    // (1 + s z^a q^d)^{-1} = sum_k (-s)^k z^{ak} q^{dk}
    let mut k = 1i64;
    let mut coeff = Rat::one();
    loop {
        let w = d.times(k);
        if w > order {
            break;
        }
        if f.charge != 0 && (f.charge * k).abs() > charge_bound {
            break;
        }
        coeff = coeff * -&sign;
        s.insert(f.charge * k, w, coeff.clone());
        k += 1;
    }
    s
}

/// Verification suite for the series engine.
pub fn suite(order: HalfInt) -> Result<crate::report::Report> {
    let mut report = crate::report::Report::new("qseries");
    let p = partition_series(order);
    for (n, expect) in [(0i64, 1i64), (4, 5), (6, 11)] {
        if HalfInt::int(n) <= order {
            report.push(
                format!("partition count p({n})"),
                format!("order={order}"),
                Rat::int(expect),
                p.coeff(0, HalfInt::int(n)),
            );
        }
    }
    let fermions = product_form(
        &[
            FactorFamily::new(1, 1, HalfInt::ZERO, HalfInt::ONE, false),
            FactorFamily::new(1, -1, HalfInt::ZERO, HalfInt::ONE, false),
        ],
        HalfInt::int(4),
        6,
    )?;
    report.push(
        "fermion product z^0 q^2",
        "order=4",
        "1",
        fermions.coeff(0, HalfInt::int(2)),
    );
    report.push(
        "fermion product z^1 q^1",
        "order=4",
        "1",
        fermions.coeff(1, HalfInt::int(1)),
    );
    report.push(
        "fermion product z^0 q^1",
        "order=4",
        "0",
        fermions.coeff(0, HalfInt::int(1)),
    );

    let direct = product_form(
        &[FactorFamily::new(-1, 0, HalfInt::ZERO, HalfInt::ONE, false)],
        order,
        2,
    )?;
    report.push_bool(
        "partition series inverts the Euler product",
        format!("order={order}"),
        direct
            .mul(&p)
            .mismatches(&CharSeries::one(order, 2))
            .is_empty(),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: i64) -> HalfInt {
        HalfInt::int(n)
    }

    #[test]
    fn one_plus_q_times_one_minus_q() {
        let w = 8;
        let a =
            CharSeries::one(ord(4), w).add(&CharSeries::monomial(0, ord(1), Rat::one(), ord(4), w));
        let b = CharSeries::one(ord(4), w).add(&CharSeries::monomial(
            0,
            ord(1),
            Rat::int(-1),
            ord(4),
            w,
        ));
        let p = a.mul(&b);
        assert_eq!(p.coeff(0, ord(0)), Rat::one());
        assert_eq!(p.coeff(0, ord(1)), Rat::zero());
        assert_eq!(p.coeff(0, ord(2)), Rat::int(-1));
    }

    #[test]
    fn partition_series_times_one_minus_q() {
        // Direct convolution oracle: coefficient n of P(q)(1-q) is p(n) - p(n-1).
        let p = partition_series(ord(6));
        let pvals: Vec<Rat> = (0..=4).map(|n| p.coeff(0, ord(n))).collect();
        let one_minus_q = CharSeries::one(ord(6), 4).add(&CharSeries::monomial(
            0,
            ord(1),
            Rat::int(-1),
            ord(6),
            4,
        ));
        let prod = p.mul(&one_minus_q);
        let expect = [1i64, 0, 1, 1, 2];
        for n in 0..=4usize {
            let oracle = if n == 0 {
                pvals[0].clone()
            } else {
                &pvals[n] - &pvals[n - 1]
            };
            assert_eq!(prod.coeff(0, ord(n as i64)), oracle);
            assert_eq!(prod.coeff(0, ord(n as i64)), Rat::int(expect[n]));
        }
    }

    #[test]
    fn charge_graded_monomials_multiply() {
        let a = CharSeries::monomial(1, HalfInt::HALF, Rat::one(), ord(4), 4);
        let b = CharSeries::monomial(-1, HalfInt::HALF, Rat::one(), ord(4), 4);
        let p = a.mul(&b);
        assert_eq!(p.coeff(0, ord(1)), Rat::one());
        assert_eq!(p.terms().count(), 1);
    }

    #[test]
    fn partition_counts() {
        let p = partition_series(ord(10));
        assert_eq!(p.coeff(0, ord(0)), Rat::one());
        assert_eq!(p.coeff(0, ord(4)), Rat::int(5));
        assert_eq!(p.coeff(0, ord(6)), Rat::int(11));
        assert_eq!(p.coeff(0, ord(10)), Rat::int(42));
    }

    fn fermion_product(order: HalfInt, window: i64) -> CharSeries {
        product_form(
            &[
                FactorFamily::new(1, 1, HalfInt::ZERO, HalfInt::ONE, false),
                FactorFamily::new(1, -1, HalfInt::ZERO, HalfInt::ONE, false),
            ],
            order,
            window,
        )
        .unwrap()
    }

    #[test]
    fn fermion_product_low_coefficients() {
        let p = fermion_product(ord(4), 6);
        assert_eq!(p.coeff(0, ord(2)), Rat::one()); // unique pair (zq)(z^{-1}q)
        assert_eq!(p.coeff(1, ord(1)), Rat::one()); // the single factor zq
        assert_eq!(p.coeff(0, ord(1)), Rat::zero()); // no charge-0 weight-1 state
    }

    #[test]
    fn inverse_product_cancels_direct() {
        let order = ord(8);
        let direct = product_form(
            &[FactorFamily::new(-1, 1, HalfInt::ZERO, HalfInt::ONE, false)],
            order,
            10,
        )
        .unwrap();
        let inverse = product_form(
            &[FactorFamily::new(-1, 1, HalfInt::ZERO, HalfInt::ONE, true)],
            order,
            10,
        )
        .unwrap();
        let p = direct.mul(&inverse);
        assert_eq!(p.mismatches(&CharSeries::one(order, 10)), vec![]);
    }

    #[test]
    fn non_terminating_factor_rejected() {
        let bad = FactorFamily::new(1, 0, HalfInt::int(-2), HalfInt::ONE, false);
        assert_eq!(
            product_form(&[bad], ord(4), 4).unwrap_err(),
            Error::NonTerminatingFactor
        );
    }

    #[test]
    fn mul_order_uses_valuation() {
        // a is exact to order 4 with valuation 3, b exact to order 4 with
        // valuation 0, so the product is exact to 4 + 3 = 7 from b's side
        // and 4 + 0 = 4 from a's side.
        let a = CharSeries::monomial(0, ord(3), Rat::one(), ord(4), 4);
        let b = CharSeries::one(ord(4), 4);
        assert_eq!(a.mul(&b).order(), ord(4));
        let shifted = b.mul_monomial(0, ord(-2), &Rat::one());
        assert_eq!(shifted.order(), ord(2));
        assert_eq!(shifted.coeff(0, ord(-2)), Rat::one());
    }
}
