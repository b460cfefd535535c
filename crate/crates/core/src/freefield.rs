//! Heisenberg Fock modules and singlet modules: conformal weights, fusion,
//! braiding, characters, and the symplectic-fermion and beta-gamma character
//! identities.

use std::fmt;

use crate::error::{Error, Result};
use crate::qseries::{partition_series, product_form, CharSeries, FactorFamily};
use crate::ratcore::{HalfInt, Phase, Rat};
use crate::report::Report;

/// Fock module `F^l_a` over the rank-one Heisenberg algebra: `level` is the
/// norm of the rescaled Heisenberg field, `weight` its zero-mode eigenvalue.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockModule {
    level: Rat,
    weight: Rat,
}

impl FockModule {
    pub fn new(level: Rat, weight: Rat) -> Result<Self> {
        if level.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(FockModule { level, weight })
    }

    pub fn level(&self) -> &Rat {
        &self.level
    }

    pub fn weight(&self) -> &Rat {
        &self.weight
    }
}

impl fmt::Display for FockModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F:l={},a={}", self.level, self.weight)
    }
}

/// A singlet module: atypical `M_i` for integer `i`, typical `V_nu` for
/// non-integer rational `nu`, or the reducible `V_i` at integer points
/// (composition factors `M_i` and `M_{i+1}`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SingletModule {
    Atypical(i64),
    Typical(Rat),
    FockV(i64),
}

impl SingletModule {
    pub fn atypical(i: i64) -> Self {
        SingletModule::Atypical(i)
    }

    /// `V_nu`; integer input is rerouted to the reducible [`SingletModule::FockV`].
    pub fn typical(nu: Rat) -> Self {
        match nu.to_i64() {
            Some(i) => SingletModule::FockV(i),
            None => SingletModule::Typical(nu),
        }
    }

    pub fn is_reducible(&self) -> bool {
        matches!(self, SingletModule::FockV(_))
    }
}

impl fmt::Display for SingletModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingletModule::Atypical(i) => write!(f, "M:{i}"),
            SingletModule::Typical(nu) => write!(f, "V:{nu}"),
            SingletModule::FockV(i) => write!(f, "V:{i}"),
        }
    }
}

/// Lowest conformal weight `a^2 / (2 l)` of a Fock module.
pub fn fock_delta(fock: &FockModule) -> Rat {
    fock.weight.sq() / (Rat::int(2) * &fock.level)
}

/// Fock fusion adds weights; levels must agree.
pub fn fock_fuse(a: &FockModule, b: &FockModule) -> Result<FockModule> {
    if a.level != b.level {
        return Err(Error::LevelMismatch);
    }
    FockModule::new(a.level.clone(), &a.weight + &b.weight)
}

/// Braiding phase `e^{pi i a b / l}` of two Fock modules of the same level.
pub fn fock_braid(a: &FockModule, b: &FockModule) -> Result<Phase> {
    if a.level != b.level {
        return Err(Error::LevelMismatch);
    }
    Ok(Phase::from_exponent(
        &a.weight * &b.weight / a.level.clone(),
    ))
}

/// Top conformal weight of a singlet module: `|i|(|i|+1)/2` for atypicals,
/// `nu(nu+1)/2` for typicals and the reducible integer points.
pub fn singlet_delta(module: &SingletModule) -> Rat {
    match module {
        SingletModule::Atypical(i) => {
            let a = Rat::int(i.abs());
            &a * (&a + Rat::one()) / Rat::int(2)
        }
        SingletModule::Typical(nu) => nu * (nu + Rat::one()) / Rat::int(2),
        SingletModule::FockV(i) => {
            let nu = Rat::int(*i);
            &nu * (&nu + Rat::one()) / Rat::int(2)
        }
    }
}

/// Simple-current fusion: `M_i x M_j = M_{i+j}` and `M_i x V_nu = V_{i+nu}`.
/// At least one factor must be atypical.
pub fn singlet_fuse(x: &SingletModule, y: &SingletModule) -> Result<SingletModule> {
    use SingletModule::*;
    match (x, y) {
        (Atypical(i), Atypical(j)) => Ok(Atypical(i + j)),
        (Atypical(i), Typical(nu)) | (Typical(nu), Atypical(i)) => {
            Ok(SingletModule::typical(Rat::int(*i) + nu))
        }
        (Atypical(i), FockV(j)) | (FockV(j), Atypical(i)) => Ok(FockV(i + j)),
        _ => Err(Error::TypicalFusion),
    }
}

/// Braiding of the atypical simple currents: the sign `(-1)^{ij}`.
pub fn singlet_braid(i: i64, j: i64) -> Phase {
    Phase::from_exponent(Rat::int(i.wrapping_mul(j).rem_euclid(2)))
}

/// Alternating sum of Fock tops entering the atypical character: the partial
/// numerator `sum_{j>=0} (-1)^j q^{D(V_{i+j})}` with all terms `<= order`.
fn atypical_numerator(i: i64, order: HalfInt, charge_bound: i64) -> CharSeries {
    let mut series = CharSeries::zero(order, charge_bound);
    let mut j = 0i64;
    loop {
        let v = i + j;
        let delta = v * (v + 1) / 2;
        let wt = HalfInt::int(delta);
        if v >= 0 && wt > order {
            break;
        }
        let sign = if j % 2 == 0 { Rat::one() } else { Rat::int(-1) };
        series = series.add(&CharSeries::monomial(0, wt, sign, order, charge_bound));
        j += 1;
    }
    series
}

/// Truncated character of a singlet module in the weight variable `q`
/// (charge 0). Atypical characters telescope the non-split exact sequences
/// relating `V_i`, `M_i`, `M_{i+1}`; `V` characters are a single Fock top
/// over the partition series. Typical modules with non-integer parameter
/// have non-half-integer top weight and are rejected here (their normalized
/// character is the plain partition series).
pub fn singlet_char(module: &SingletModule, order: HalfInt) -> Result<CharSeries> {
    let bound = i64::MAX / 4;
    match module {
        SingletModule::Atypical(i) => {
            Ok(atypical_numerator(*i, order, bound).mul(&partition_series(order)))
        }
        SingletModule::FockV(i) => {
            let wt = HalfInt::int(i * (i + 1) / 2);
            Ok(partition_series(order).mul_monomial(0, wt, &Rat::one()))
        }
        SingletModule::Typical(_) => Err(Error::NonHalfIntegerCharacter),
    }
}

/// Top conformal weight plus the character graded relative to the top.
/// Works uniformly for every module label, including typical and Fock
/// modules whose absolute top weight is not a half-integer.
pub fn char_normalized(label: &ModuleLabel, order: HalfInt) -> (Rat, CharSeries) {
    match label {
        ModuleLabel::Singlet(SingletModule::Atypical(i)) => {
            let delta = HalfInt::int(i.abs() * (i.abs() + 1) / 2);
            let abs = singlet_char(&SingletModule::Atypical(*i), order + delta)
                .expect("atypical character is half-integer graded");
            (Rat::from(delta), abs.mul_monomial(0, -delta, &Rat::one()))
        }
        ModuleLabel::Singlet(m) => (singlet_delta(m), partition_series(order)),
        ModuleLabel::Fock(f) => (fock_delta(f), partition_series(order)),
    }
}

/// A parsed CLI module label.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ModuleLabel {
    Singlet(SingletModule),
    Fock(FockModule),
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::Singlet(m) => write!(f, "{m}"),
            ModuleLabel::Fock(m) => write!(f, "{m}"),
        }
    }
}

impl std::str::FromStr for ModuleLabel {
    type Err = Error;

    /// Accepts `M:i`, `V:p/q` and `F:l=p/q,a=p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind.trim() {
            "M" => {
                let i = rest.trim().parse::<i64>().map_err(|_| bad())?;
                Ok(ModuleLabel::Singlet(SingletModule::Atypical(i)))
            }
            "V" => Ok(ModuleLabel::Singlet(SingletModule::typical(rest.parse()?))),
            "F" => {
                let mut level = None;
                let mut weight = None;
                for part in rest.split(',') {
                    let (key, value) = part.split_once('=').ok_or_else(bad)?;
                    match key.trim() {
                        "l" | "ℓ" => level = Some(value.parse::<Rat>()?),
                        "a" => weight = Some(value.parse::<Rat>()?),
                        _ => return Err(bad()),
                    }
                }
                FockModule::new(level.ok_or_else(bad)?, weight.ok_or_else(bad)?)
                    .map(ModuleLabel::Fock)
            }
            _ => Err(bad()),
        }
    }
}

/// Checks the symplectic-fermion character identity
/// `prod_{n>=1} (1 + z q^n)(1 + z^{-1} q^n) = sum_i z^i ch M_i`
/// coefficient by coefficient up to `order` within the charge window.
pub fn verify_sympfermion(order: HalfInt, charge_window: i64) -> Result<Report> {
    // Dropped sectors |i| > window start at weight |i|(|i|+1)/2.
    let next = charge_window + 1;
    if HalfInt::int(next * (next + 1) / 2) <= order {
        return Err(Error::InsufficientChargeWindow {
            window: charge_window,
            order: order.to_string(),
        });
    }
    let lhs = product_form(
        &[
            FactorFamily::new(1, 1, HalfInt::ZERO, HalfInt::ONE, false),
            FactorFamily::new(1, -1, HalfInt::ZERO, HalfInt::ONE, false),
        ],
        order,
        charge_window,
    )?;
    let mut rhs = CharSeries::zero(order, charge_window);
    for i in -charge_window..=charge_window {
        let sector = singlet_char(&SingletModule::Atypical(i), order)?;
        rhs = rhs.add(&sector.mul_monomial(i, HalfInt::ZERO, &Rat::one()));
    }
    Ok(mismatch_report(
        "sympfermion",
        &format!("order={order}, charge_window={charge_window}"),
        &lhs,
        &rhs,
    ))
}

/// Checks the beta-gamma decomposition identity
/// `prod_{n>=1} (1 - z q^{n-1/2})^{-1} (1 - z^{-1} q^{n-1/2})^{-1}
///  = sum_i z^i q^{-i^2/2} ch M_i / prod (1 - q^n)`,
/// graded so the charge-`i` sector bottoms out at weight `|i|/2`.
pub fn verify_bg_decomposition(order: HalfInt, charge_window: i64) -> Result<Report> {
    // Dropped sectors |i| > window start at weight |i|/2.
    if HalfInt::from_doubled(charge_window + 1) <= order {
        return Err(Error::InsufficientChargeWindow {
            window: charge_window,
            order: order.to_string(),
        });
    }
    let half = HalfInt::from_doubled(-1);
    let lhs = product_form(
        &[
            FactorFamily::new(-1, 1, half, HalfInt::ONE, true),
            FactorFamily::new(-1, -1, half, HalfInt::ONE, true),
        ],
        order,
        charge_window,
    )?;
    let partitions = partition_series(order);
    let mut rhs = CharSeries::zero(order, charge_window);
    for i in -charge_window..=charge_window {
        // Fock factor F^{-1}_i contributes q^{-i^2/2} times a partition
        // series; the singlet factor is computed to the shifted order so
        // the product stays exact up to `order` after the shift back.
        let fock_top = HalfInt::from_doubled(-i * i);
        let rel_order = order - fock_top;
        let numerator = atypical_numerator(i, rel_order, charge_window);
        let sector = numerator.mul(&partitions).mul(&partitions);
        rhs = rhs.add(&sector.mul_monomial(i, fock_top, &Rat::one()));
    }
    Ok(mismatch_report(
        "bg-decomposition",
        &format!("order={order}, charge_window={charge_window}"),
        &lhs,
        &rhs,
    ))
}

fn mismatch_report(suite: &str, inputs: &str, lhs: &CharSeries, rhs: &CharSeries) -> Report {
    let mut report = Report::new(suite);
    let mismatches = lhs.mismatches(rhs);
    report.push("mismatch-count", inputs, 0, mismatches.len());
    for (c, w, a, b) in mismatches {
        report.push(format!("coefficient z^{c} q^{{{w}}}"), inputs, a, b);
    }
    report
}

/// Verification suite for this module: the two character identities, the
/// exact-sequence additivity, positivity of atypical characters, and the
/// Fock weight check against `-i^2/m` at level `-m/2`.
pub fn suite(m: i64, order: HalfInt, charge_window: i64) -> Result<Report> {
    let mut report = Report::new("freefield");

    report.merge(verify_sympfermion(order, charge_window)?);
    report.merge(verify_bg_decomposition(order, order.doubled())?);

    for i in -3..=3 {
        let v = singlet_char(&SingletModule::FockV(i), order)?;
        let sum = singlet_char(&SingletModule::Atypical(i), order)?
            .add(&singlet_char(&SingletModule::Atypical(i + 1), order)?);
        report.push_bool(
            format!("ses-additivity V_{i}"),
            format!("i={i}, order={order}"),
            v.mismatches(&sum).is_empty(),
        );
    }

    for i in -7..=7 {
        let ch = singlet_char(&SingletModule::Atypical(i), order)?;
        let ok = ch
            .terms()
            .all(|(_, _, r)| r.is_integer() && !r.is_negative());
        report.push_bool(
            format!("nonnegative-character M_{i}"),
            format!("i={i}, order={order}"),
            ok,
        );
    }

    let level = Rat::new(-m, 2)?;
    for i in -6..=6 {
        let fock = FockModule::new(level.clone(), Rat::int(i))?;
        report.push(
            format!("fock-top F^s_{i}"),
            format!("m={m}, s={level}, i={i}"),
            Rat::new(-i * i, m)?,
            fock_delta(&fock),
        );
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q).unwrap()
    }

    fn fock(l: (i64, i64), a: (i64, i64)) -> FockModule {
        FockModule::new(r(l.0, l.1), r(a.0, a.1)).unwrap()
    }

    #[test]
    fn fock_delta_examples() {
        assert_eq!(fock_delta(&fock((-2, 3), (1, 1))), r(-3, 4));
        assert_eq!(fock_delta(&fock((-2, 3), (0, 1))), Rat::zero());
        // level -m/2 with m = 4: top of F^s_i is -i^2/m
        assert_eq!(fock_delta(&fock((-2, 1), (1, 1))), r(-1, 4));
    }

    #[test]
    fn fock_fusion_adds_weights() {
        let a = fock((-2, 3), (1, 2));
        let b = fock((-2, 3), (1, 3));
        assert_eq!(fock_fuse(&a, &b).unwrap().weight(), &r(5, 6));
        let other = fock((-1, 1), (1, 3));
        assert_eq!(fock_fuse(&a, &other).unwrap_err(), Error::LevelMismatch);
    }

    #[test]
    fn fock_braiding() {
        let vac = fock((-2, 3), (0, 1));
        let b = fock((-2, 3), (5, 7));
        assert!(fock_braid(&vac, &b).unwrap().is_trivial());
        let a = fock((-2, 3), (1, 1));
        assert_eq!(fock_braid(&a, &a).unwrap().residue(), &r(1, 2));
    }

    #[test]
    fn singlet_delta_examples() {
        assert_eq!(singlet_delta(&SingletModule::Atypical(-2)), Rat::int(3));
        assert_eq!(singlet_delta(&SingletModule::Atypical(0)), Rat::zero());
        assert_eq!(singlet_delta(&SingletModule::typical(r(1, 2))), r(3, 8));
    }

    #[test]
    fn singlet_fusion() {
        use SingletModule::*;
        assert_eq!(
            singlet_fuse(&Atypical(1), &Atypical(-1)).unwrap(),
            Atypical(0)
        );
        let v = SingletModule::typical(r(1, 2));
        assert_eq!(singlet_fuse(&Atypical(0), &v).unwrap(), v);
        assert_eq!(
            singlet_fuse(&Atypical(2), &v).unwrap(),
            SingletModule::typical(r(5, 2))
        );
        assert_eq!(singlet_fuse(&v, &v).unwrap_err(), Error::TypicalFusion);
    }

    #[test]
    fn typical_constructor_reroutes_integers() {
        assert_eq!(SingletModule::typical(Rat::int(3)), SingletModule::FockV(3));
        assert!(SingletModule::typical(Rat::int(3)).is_reducible());
    }

    #[test]
    fn singlet_braiding_parity() {
        assert!(singlet_braid(1, 3).is_sign_flip());
        assert!(singlet_braid(2, 3).is_trivial());
        assert!(singlet_braid(0, 5).is_trivial());
    }

    #[test]
    fn vacuum_character_low_coefficients() {
        // Oracle: normally ordered monomials in generators of weight 2 and 3
        // count the states at low order, before relations enter at weight 6.
        // partitions into parts >= min, one factor per generator
        fn parts_count(total: i64, min: i64) -> i64 {
            if total == 0 {
                return 1;
            }
            (min..=total).map(|p| parts_count(total - p, p)).sum()
        }
        let order = HalfInt::int(5);
        let ch = singlet_char(&SingletModule::Atypical(0), order).unwrap();
        for n in 0..=5i64 {
            let count: i64 = (0..=n)
                .map(|l| parts_count(l, 2) * parts_count(n - l, 3))
                .sum();
            assert_eq!(ch.coeff(0, HalfInt::int(n)), Rat::int(count), "weight {n}");
        }
        let expect = [1i64, 0, 1, 2, 3, 4];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(ch.coeff(0, HalfInt::int(n as i64)), Rat::int(*e));
        }
    }

    #[test]
    fn typical_lowest_term() {
        let order = HalfInt::int(6);
        let ch = singlet_char(&SingletModule::FockV(2), order).unwrap();
        assert_eq!(ch.valuation(), HalfInt::int(3));
        assert_eq!(ch.coeff(0, HalfInt::int(3)), Rat::one());
        assert!(singlet_char(&SingletModule::typical(r(1, 2)), order).is_err());
    }

    #[test]
    fn exact_sequence_additivity() {
        let order = HalfInt::int(20);
        for i in -3..=3 {
            let v = singlet_char(&SingletModule::FockV(i), order).unwrap();
            let sum = singlet_char(&SingletModule::Atypical(i), order)
                .unwrap()
                .add(&singlet_char(&SingletModule::Atypical(i + 1), order).unwrap());
            assert_eq!(v.mismatches(&sum), vec![], "i = {i}");
        }
    }

    #[test]
    fn sympfermion_low_coefficients() {
        let report = verify_sympfermion(HalfInt::int(8), 4).unwrap();
        assert!(report.all_passed(), "{report:?}");
        // spot values straight from the product and the module tops
        let lhs = product_form(
            &[
                FactorFamily::new(1, 1, HalfInt::ZERO, HalfInt::ONE, false),
                FactorFamily::new(1, -1, HalfInt::ZERO, HalfInt::ONE, false),
            ],
            HalfInt::int(4),
            4,
        )
        .unwrap();
        assert_eq!(lhs.coeff(0, HalfInt::int(2)), Rat::one());
        assert_eq!(lhs.coeff(1, HalfInt::int(1)), Rat::one());
        assert_eq!(lhs.coeff(0, HalfInt::int(1)), Rat::zero());
    }

    #[test]
    fn sympfermion_window_must_cover_order() {
        assert!(matches!(
            verify_sympfermion(HalfInt::int(20), 3),
            Err(Error::InsufficientChargeWindow { .. })
        ));
    }

    #[test]
    fn bg_identity_low_order() {
        let report = verify_bg_decomposition(HalfInt::int(8), 16).unwrap();
        assert!(report.all_passed(), "{report:?}");
        let half = HalfInt::from_doubled(-1);
        let lhs = product_form(
            &[
                FactorFamily::new(-1, 1, half, HalfInt::ONE, true),
                FactorFamily::new(-1, -1, half, HalfInt::ONE, true),
            ],
            HalfInt::int(4),
            10,
        )
        .unwrap();
        assert_eq!(lhs.coeff(0, HalfInt::ZERO), Rat::one()); // vacuum
        assert_eq!(lhs.coeff(1, HalfInt::HALF), Rat::one()); // one half-integer mode
        assert_eq!(lhs.coeff(2, HalfInt::int(2)), Rat::int(2));
    }

    #[test]
    fn bg_sector_bottom_weight() {
        // lowest weight of the charge-i sector is |i|/2
        for i in -5..=5i64 {
            let fock = fock_delta(&fock((-1, 1), (i, 1)));
            let singlet = singlet_delta(&SingletModule::Atypical(i));
            assert_eq!(fock + singlet, Rat::from(HalfInt::from_doubled(i.abs())));
        }
    }

    #[test]
    fn module_label_parsing() {
        assert_eq!(
            "M:-2".parse::<ModuleLabel>().unwrap(),
            ModuleLabel::Singlet(SingletModule::Atypical(-2))
        );
        assert_eq!(
            "V:1/2".parse::<ModuleLabel>().unwrap(),
            ModuleLabel::Singlet(SingletModule::Typical(r(1, 2)))
        );
        assert_eq!(
            "F:l=-2/3,a=1".parse::<ModuleLabel>().unwrap(),
            ModuleLabel::Fock(fock((-2, 3), (1, 1)))
        );
        assert!("X:1".parse::<ModuleLabel>().is_err());
    }

    #[test]
    fn fusion_associativity_on_labels() {
        use SingletModule::*;
        for i in -3..=3 {
            for j in -3..=3 {
                for k in -3..=3 {
                    let left = singlet_fuse(
                        &singlet_fuse(&Atypical(i), &Atypical(j)).unwrap(),
                        &Atypical(k),
                    )
                    .unwrap();
                    let right = singlet_fuse(
                        &Atypical(i),
                        &singlet_fuse(&Atypical(j), &Atypical(k)).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}
