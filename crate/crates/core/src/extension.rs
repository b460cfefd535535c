//! The simple-current extension engine: sector conformal weights, locality
//! and lower-boundedness criteria, a monodromy diagnostic, and the
//! classification of ordinary modules of the extended algebra.
//!
//! Sectors of an induced module are indexed relative to the base. The base
//! itself is recorded by the index `j0` of its affine component; shifting
//! all three labels by the same integer gives an isomorphic module, so the
//! canonical presentation fixes `j0 = 0`. The `A^(+-1)` families keep their
//! own base; their shifted canonical forms fail the grading criterion even
//! where the membership conditions hold, and that discrepancy is surfaced
//! through the monodromy diagnostic rather than resolved.

use std::fmt;

use crate::error::{Error, Result};
use crate::freefield::SingletModule;
use crate::ratcore::{Phase, Rat};
use crate::report::Report;

/// An induced module label over the rank-`m` extension:
/// base `U_{j0} (x) F_a (x) (singlet part)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenInduced {
    m: i64,
    j0: i64,
    a: Rat,
    spart: SingletModule,
}

impl GenInduced {
    pub fn new(m: i64, j0: i64, a: Rat, spart: SingletModule) -> Result<Self> {
        if m < 4 || m % 2 != 0 {
            return Err(Error::BadSectorRank(m));
        }
        Ok(GenInduced { m, j0, a, spart })
    }

    pub fn atypical(m: i64, j0: i64, a: Rat, b: i64) -> Result<Self> {
        GenInduced::new(m, j0, a, SingletModule::Atypical(b))
    }

    /// Typical base; integer `nu` reroutes to the reducible Fock form.
    pub fn typical(m: i64, j0: i64, mu: Rat, nu: Rat) -> Result<Self> {
        GenInduced::new(m, j0, mu, SingletModule::typical(nu))
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn j0(&self) -> i64 {
        self.j0
    }

    pub fn fock_weight(&self) -> &Rat {
        &self.a
    }

    pub fn singlet_part(&self) -> &SingletModule {
        &self.spart
    }

    /// Shift all three base labels by `t`; the result is isomorphic.
    pub fn shifted(&self, t: i64) -> GenInduced {
        let spart = match &self.spart {
            SingletModule::Atypical(b) => SingletModule::Atypical(b + t),
            SingletModule::Typical(nu) => SingletModule::typical(nu + Rat::int(t)),
            SingletModule::FockV(i) => SingletModule::FockV(i + t),
        };
        GenInduced {
            m: self.m,
            j0: self.j0 + t,
            a: &self.a + Rat::int(t),
            spart,
        }
    }

    /// The shift-equivalent presentation with `j0 = 0`.
    pub fn canonical(&self) -> GenInduced {
        self.shifted(-self.j0)
    }

    /// Conformal weight of the top level of the sector `i` (relative to the
    /// base): `U_{j0+i} (x) F_{a+i} (x) (singlet part + i)`.
    pub fn sector_delta(&self, i: i64) -> Rat {
        let m = self.m;
        let u = self.j0 + i;
        let affine = Rat::new(u * u, m).expect("m > 0") + Rat::int(u.abs());
        let fw = &self.a + Rat::int(i);
        let fock = -(fw.sq() * Rat::new(m + 2, 2 * m).expect("m > 0"));
        let singlet = match &self.spart {
            SingletModule::Atypical(b) => {
                let s = (b + i).abs();
                Rat::new(s * (s + 1), 2).expect("2 != 0")
            }
            SingletModule::Typical(nu) => {
                let v = nu + Rat::int(i);
                &v * (&v + Rat::one()) / Rat::int(2)
            }
            SingletModule::FockV(b) => {
                let v = b + i;
                Rat::new(v * (v + 1), 2).expect("2 != 0")
            }
        };
        affine + fock + singlet
    }
}

impl fmt::Display for GenInduced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.spart {
            SingletModule::Atypical(b) => {
                write!(f, "m={} j0={} a={} b={}", self.m, self.j0, self.a, b)
            }
            SingletModule::Typical(nu) => {
                write!(f, "m={} j0={} mu={} nu={}", self.m, self.j0, self.a, nu)
            }
            SingletModule::FockV(b) => {
                write!(
                    f,
                    "m={} j0={} mu={} nu={} (reducible)",
                    self.m, self.j0, self.a, b
                )
            }
        }
    }
}

/// Classification outcome for an induced module.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassLabel {
    S0,
    S1,
    SMinus1,
    A1,
    AMinus1,
    Typ,
    /// Typical form with integer parameter: indecomposable and reducible.
    Reducible,
    NotLocal,
    NotLowerBounded,
}

impl ClassLabel {
    /// Labels naming an ordinary module (irreducible or the reducible
    /// indecomposable typical points), as opposed to a failed criterion.
    pub fn is_ordinary(self) -> bool {
        !matches!(self, ClassLabel::NotLocal | ClassLabel::NotLowerBounded)
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassLabel::S0 => "S0",
            ClassLabel::S1 => "S1",
            ClassLabel::SMinus1 => "S-1",
            ClassLabel::A1 => "A1",
            ClassLabel::AMinus1 => "A-1",
            ClassLabel::Typ => "Typ",
            ClassLabel::Reducible => "Reducible",
            ClassLabel::NotLocal => "NotLocal",
            ClassLabel::NotLowerBounded => "NotLowerBounded",
        };
        write!(f, "{s}")
    }
}

/// `D(a, b, i) = i^2/m + |i| - (a+i)^2 (m+2)/(2m) + (b+i)^2/2 + |b+i|/2`.
pub fn delta_atypical(m: i64, a: &Rat, b: i64, i: i64) -> Rat {
    GenInduced::atypical(m, 0, a.clone(), b)
        .expect("validated rank")
        .sector_delta(i)
}

/// `D(mu, nu, i) = -mu^2 (m+2)/(2m) + nu(nu+1)/2 + |i| + i (nu - (m+2)mu/m + 1/2)`.
pub fn delta_typical(m: i64, mu: &Rat, nu: &Rat, i: i64) -> Rat {
    let ratio = Rat::new(m + 2, m).expect("m > 0");
    let quad = -(mu.sq() * &ratio / Rat::int(2));
    let singlet = nu * (nu + Rat::one()) / Rat::int(2);
    let slope = nu - &ratio * mu + Rat::new(1, 2).expect("2 != 0");
    quad + singlet + Rat::int(i.abs()) + Rat::int(i) * slope
}

/// Integer shift `b0 - a0 (m+2)/m` of the canonical atypical presentation,
/// when the module is local.
fn atypical_shift(module: &GenInduced) -> Option<i64> {
    let canonical = module.canonical();
    let b0 = match canonical.spart {
        SingletModule::Atypical(b) => b,
        _ => return None,
    };
    let c0 = &canonical.a * Rat::new(canonical.m + 2, canonical.m).expect("m > 0");
    c0.to_i64().map(|c| b0 - c)
}

/// Typical locality offset `nu0 - (m+2) mu0 / m` of the canonical
/// presentation, when integral.
fn typical_shift(module: &GenInduced) -> Option<i64> {
    let canonical = module.canonical();
    let nu0 = match &canonical.spart {
        SingletModule::Typical(nu) => nu.clone(),
        SingletModule::FockV(b) => Rat::int(*b),
        SingletModule::Atypical(_) => return None,
    };
    let t = nu0 - &canonical.a * Rat::new(canonical.m + 2, canonical.m).expect("m > 0");
    t.to_i64()
}

/// Locality of the induced module, decided by the half-integer grading
/// criterion on the canonical presentation: `a0 (m+2)/m` integral in the
/// atypical case, `nu0 - (m+2) mu0 / m` integral in the typical case.
pub fn is_local(module: &GenInduced) -> bool {
    match module.spart {
        SingletModule::Atypical(_) => atypical_shift(module).is_some(),
        _ => typical_shift(module).is_some(),
    }
}

/// Double-braiding exponent of the degree-one simple current against the
/// base sector, reduced mod 1. A separate diagnostic from [`is_local`]: the
/// two agree exactly on canonical atypical presentations, and deliberately
/// disagree on the shifted-base families.
pub fn monodromy_exponent(module: &GenInduced) -> Result<Rat> {
    match module.spart {
        SingletModule::Atypical(_) => {
            let m = module.m;
            let affine = Rat::new(2 * module.j0, m)?;
            let fock = &module.a * Rat::new(m + 2, m)?;
            Ok((affine - fock).rem_euclid(1))
        }
        _ => Err(Error::TypicalPhase),
    }
}

/// Lower-boundedness of a local induced module together with the exact
/// argmin set of sector indices.
///
/// The minimum is located by exact minimization over the hull of the two
/// slope breakpoints and cross-checked against the closed-form case list
/// (argmin at the sector with `i = 0` or `i + b = 0` in canonical indices).
pub fn lower_bounded(module: &GenInduced) -> Result<(bool, Vec<i64>)> {
    if !is_local(module) {
        return Err(Error::NotLocal);
    }
    let (bounded, closed_form) = match &module.spart {
        SingletModule::Atypical(b) => {
            let x = atypical_shift(module).expect("local atypical");
            let b0 = b - module.j0;
            if x.abs() >= 2 {
                (false, None)
            } else {
                let canonical_argmin = match x {
                    0 => 0,
                    1 if b0 >= 0 => -b0,
                    -1 if b0 < 0 => -b0,
                    _ => 0,
                };
                (true, Some(canonical_argmin))
            }
        }
        _ => {
            let t = typical_shift(module).expect("local typical");
            if t == 0 || t == -1 {
                (true, Some(0))
            } else {
                (false, None)
            }
        }
    };

    if !bounded {
        return Ok((false, Vec::new()));
    }

    // Exact minimization over the breakpoint hull. Outside the hull the
    // weight is linear in the sector index with slope at least 1/2 in
    // absolute value, so the argmin is inside.
    let kink_a = -module.j0;
    let kink_b = match &module.spart {
        SingletModule::Atypical(b) => -b,
        SingletModule::Typical(_) | SingletModule::FockV(_) => kink_a,
    };
    let lo = kink_a.min(kink_b) - 2;
    let hi = kink_a.max(kink_b) + 2;
    let mut best: Option<Rat> = None;
    let mut argmin = Vec::new();
    for i in lo..=hi {
        let d = module.sector_delta(i);
        match &best {
            Some(b) if &d > b => {}
            Some(b) if &d == b => argmin.push(i),
            _ => {
                best = Some(d);
                argmin = vec![i];
            }
        }
    }
    let best = best.expect("nonempty hull");
    assert!(module.sector_delta(lo - 1) > best && module.sector_delta(hi + 1) > best);

    if let Some(expected_canonical) = closed_form {
        let expected = expected_canonical - module.j0;
        assert_eq!(
            argmin,
            vec![expected],
            "closed-form argmin disagrees for {module}"
        );
    }
    Ok((true, argmin))
}

/// Classifies an induced module against the list of ordinary modules.
///
/// Canonical presentations are matched through the `S`-families, with the
/// outlier shifts assigned to `A^(+-1)` labels. Presentations whose base
/// carries the affine index `-b` are matched against the `A^(+-1)`
/// membership conditions in their own coordinates before canonicalizing.
pub fn classify(module: &GenInduced) -> ClassLabel {
    match &module.spart {
        SingletModule::Atypical(b) => {
            if module.j0 == -b && module.j0 != 0 {
                let c = &module.a * Rat::new(module.m + 2, module.m).expect("m > 0");
                if let Some(c) = c.to_i64() {
                    if *b == c + 1 && *b < 0 {
                        return ClassLabel::A1;
                    }
                    if *b == c - 1 && *b > 0 {
                        return ClassLabel::AMinus1;
                    }
                }
            }
            let Some(x) = atypical_shift(module) else {
                return ClassLabel::NotLocal;
            };
            let b0 = b - module.j0;
            match x {
                0 => ClassLabel::S0,
                1 if b0 < 0 => ClassLabel::A1,
                1 => ClassLabel::S1,
                -1 if b0 > 0 => ClassLabel::AMinus1,
                -1 => ClassLabel::SMinus1,
                _ => ClassLabel::NotLowerBounded,
            }
        }
        SingletModule::Typical(_) | SingletModule::FockV(_) => {
            let Some(t) = typical_shift(module) else {
                return ClassLabel::NotLocal;
            };
            if t == 0 || t == -1 {
                if module.spart.is_reducible() {
                    ClassLabel::Reducible
                } else {
                    ClassLabel::Typ
                }
            } else {
                ClassLabel::NotLowerBounded
            }
        }
    }
}

/// Reduced rationals `p/q` with `1 <= q <= denom_bound` and
/// `|p/q| <= range_bound`, in a fixed deterministic order.
pub fn rational_grid(denom_bound: i64, range_bound: i64) -> Vec<Rat> {
    let mut out = Vec::new();
    for q in 1..=denom_bound.max(1) {
        for p in -range_bound * q..=range_bound * q {
            if num_integer::gcd(p.unsigned_abs(), q.unsigned_abs()) == 1 {
                out.push(Rat::new(p, q).expect("q > 0"));
            }
        }
    }
    out
}

/// Every canonical-form parameter choice within the bounds, labelled, plus
/// the shifted-base `A^(+-1)` presentations written with their own base.
/// Canonical entries are mutually shift-inequivalent by construction.
pub fn enumerate_ordinary(
    m: i64,
    denom_bound: i64,
    range_bound: i64,
) -> Result<Vec<(GenInduced, ClassLabel)>> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::BadSectorRank(m));
    }
    let grid = rational_grid(denom_bound, range_bound);
    let mut out = Vec::new();

    for b in -range_bound..=range_bound {
        for a in &grid {
            let module = GenInduced::atypical(m, 0, a.clone(), b)?;
            let label = classify(&module);
            out.push((module, label));
        }
    }

    for nu in &grid {
        for mu in &grid {
            let module = GenInduced::typical(m, 0, mu.clone(), nu.clone())?;
            let label = classify(&module);
            out.push((module, label));
        }
    }

    // Shifted-base families, kept in their own presentation.
    let ratio = Rat::new(m, m + 2)?;
    let in_grid = |a: &Rat| grid.contains(a);
    let c_bound = range_bound * (m + 2) / m + 2;
    for c in -c_bound..=c_bound {
        let a = Rat::int(c) * &ratio;
        if !in_grid(&a) {
            continue;
        }
        let b_plus = c + 1;
        if b_plus < 0 && -b_plus <= range_bound {
            let module = GenInduced::atypical(m, -b_plus, a.clone(), b_plus)?;
            let label = classify(&module);
            out.push((module, label));
        }
        let b_minus = c - 1;
        if b_minus > 0 && b_minus <= range_bound {
            let module = GenInduced::atypical(m, -b_minus, a.clone(), b_minus)?;
            let label = classify(&module);
            out.push((module, label));
        }
    }

    Ok(out)
}

/// Checks that the three braiding exponents of the degree `(i, j)` pair sum
/// to an even integer, so the extension is a plain (even) vertex algebra.
pub fn evenness_check(m: i64, range: i64) -> Result<Report> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::BadSectorRank(m));
    }
    let mut report = Report::new("evenness");
    let mut violations = 0usize;
    for i in -range..=range {
        for j in -range..=range {
            let affine = Phase::from_exponent(Rat::new(2 * i * j, m)?);
            // Fock braiding at level l = -m/(m+2): exponent i j / l.
            let fock = Phase::from_exponent(Rat::int(i * j) * Rat::new(-(m + 2), m)?);
            let fermion = Phase::from_exponent(Rat::int(i * j));
            let total = affine.add(&fock).add(&fermion);
            if !total.is_trivial() {
                violations += 1;
                report.push(
                    format!("braiding i={i} j={j}"),
                    format!("m={m}"),
                    "e^(pi i 0)",
                    total,
                );
            }
        }
    }
    report.push(
        "evenness-violations",
        format!("m={m}, range={range}"),
        0,
        violations,
    );
    Ok(report)
}

/// Verifies the half-integer grading pattern of a local module: even
/// sectors shift the top weight by an integer, odd sectors by a half
/// integer.
pub fn grading_check(module: &GenInduced, range: i64) -> Result<Report> {
    if !is_local(module) {
        return Err(Error::NotLocal);
    }
    let mut report = Report::new("grading");
    let base = module.sector_delta(0);
    let mut violations = 0usize;
    for i in -range..=range {
        let diff = module.sector_delta(i) - &base;
        let expected_half = i.rem_euclid(2) == 1;
        let shifted = if expected_half {
            diff - Rat::new(1, 2)?
        } else {
            diff
        };
        if !shifted.is_integer() {
            violations += 1;
            report.push(
                format!("sector i={i}"),
                module.to_string(),
                if expected_half {
                    "1/2 mod Z"
                } else {
                    "0 mod Z"
                },
                module.sector_delta(i) - &base,
            );
        }
    }
    report.push(
        "grading-violations",
        format!("{module}, range={range}"),
        0,
        violations,
    );
    Ok(report)
}

/// Verification suite: extension weights, evenness, locality against the
/// monodromy diagnostic, the closed-form argmin, the classification of the
/// distinguished shifted-base modules, and grading patterns.
pub fn suite(m: i64, range: i64) -> Result<Report> {
    let mut report = Report::new("extension");

    let mut bad_weights = 0usize;
    for i in -range..=range {
        let expect = Rat::new(3 * i.abs(), 2)?;
        if delta_atypical(m, &Rat::zero(), 0, i) != expect {
            bad_weights += 1;
        }
    }
    report.push(
        "vacuum-sector-weights 3|i|/2",
        format!("m={m}, |i|<={range}"),
        0,
        bad_weights,
    );
    report.push(
        "delta-atypical example",
        format!("m={m}, a=0, b=0, i=1"),
        "3/2",
        delta_atypical(m, &Rat::zero(), 0, 1),
    );

    report.merge(evenness_check(m, range.min(30))?);

    let ratio = Rat::new(m, m + 2)?;
    let mut agree = true;
    for c in -5..=5i64 {
        for b in -5..=5i64 {
            let local = GenInduced::atypical(m, 0, Rat::int(c) * &ratio, b)?;
            agree &= is_local(&local) == monodromy_exponent(&local)?.is_zero();
            let offgrid = GenInduced::atypical(m, 0, Rat::int(c) * &ratio + Rat::new(1, 3)?, b)?;
            agree &= is_local(&offgrid) == monodromy_exponent(&offgrid)?.is_zero();
        }
    }
    report.push_bool("locality-matches-monodromy (j0=0)", format!("m={m}"), agree);

    // argmin samples for the three bounded shifts
    let s0 = GenInduced::atypical(m, 0, Rat::int(3) * &ratio, 3)?;
    report.push(
        "argmin S0",
        s0.to_string(),
        "[0]",
        format!("{:?}", lower_bounded(&s0)?.1),
    );
    let s1 = GenInduced::atypical(m, 0, Rat::int(3) * &ratio, 4)?;
    report.push(
        "argmin S1",
        s1.to_string(),
        "[-4]",
        format!("{:?}", lower_bounded(&s1)?.1),
    );
    let sm1 = GenInduced::atypical(m, 0, Rat::int(-3) * &ratio, -4)?;
    report.push(
        "argmin S-1",
        sm1.to_string(),
        "[4]",
        format!("{:?}", lower_bounded(&sm1)?.1),
    );
    let unbounded = GenInduced::atypical(m, 0, Rat::int(2) * &ratio, 5)?;
    report.push(
        "unbounded shift rejected",
        unbounded.to_string(),
        "false",
        lower_bounded(&unbounded)?.0,
    );

    // the distinguished shifted-base modules at their defining parameters
    let l_plus = GenInduced::atypical(m, 1, Rat::int(-2) * &ratio, -1)?;
    report.push("classify L[1]", l_plus.to_string(), "A1", classify(&l_plus));
    let l_minus = GenInduced::atypical(m, -1, Rat::int(2) * &ratio, 1)?;
    report.push(
        "classify L[-1]",
        l_minus.to_string(),
        "A-1",
        classify(&l_minus),
    );
    // Reported discrepancy: the literal grading criterion is violated on the
    // shifted base, so the monodromy diagnostic is nonzero there.
    report.push(
        "L[1] monodromy diagnostic (known nonzero)",
        l_plus.to_string(),
        Rat::new(2, m)?.rem_euclid(1),
        monodromy_exponent(&l_plus)?,
    );

    let vacuum = GenInduced::atypical(m, 0, Rat::zero(), 0)?;
    report.push(
        "classify vacuum",
        vacuum.to_string(),
        "S0",
        classify(&vacuum),
    );
    report.merge(grading_check(&vacuum, range.min(20))?);
    let s0_shifted = GenInduced::atypical(m, 0, Rat::int(3) * &ratio, 3)?;
    report.merge(grading_check(&s0_shifted, range.min(20))?);

    Ok(report)
}
