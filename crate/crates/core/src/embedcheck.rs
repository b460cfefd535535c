//! Conformal-embedding bookkeeping: decomposition top weights, the
//! Heisenberg Gram diagonalization, and the Fock basis-change identity.

use crate::error::{Error, Result};
use crate::freefield::{fock_delta, singlet_delta, FockModule, SingletModule};
use crate::liecore::{sugawara_weight, LieLevel, WeightVec};
use crate::ratcore::{poly_equal, MPoly, Rat};
use crate::report::Report;

/// The two commuting Heisenberg fields entering the diagonalization, with
/// norms `<J_S, J_S> = -1`, `<J_1, J_1> = -m/2`, `<J_S, J_1> = 0`. Elements
/// are coefficient pairs over the basis `(J_S, J_1)`.
#[derive(Clone, Copy, Debug)]
pub struct GramBasis {
    m: i64,
}

impl GramBasis {
    pub fn new(m: i64) -> Result<Self> {
        if m < 4 {
            return Err(Error::BadSectorRank(m));
        }
        Ok(GramBasis { m })
    }

    pub fn inner(&self, x: &[Rat; 2], y: &[Rat; 2]) -> Rat {
        let s_part = -(&x[0] * &y[0]);
        let affine_part = &x[1] * &y[1] * Rat::new(-self.m, 2).expect("2 != 0");
        s_part + affine_part
    }

    /// `h = J_S - J_1`.
    pub fn h(&self) -> [Rat; 2] {
        [Rat::one(), Rat::int(-1)]
    }

    /// `hbar = (m J_S + 2 J_1)/(m+2)`.
    pub fn hbar(&self) -> [Rat; 2] {
        [
            Rat::new(self.m, self.m + 2).expect("m + 2 > 0"),
            Rat::new(2, self.m + 2).expect("m + 2 > 0"),
        ]
    }

    /// Zero-mode eigenvalue of an element on a state with `J_S(0) = i`,
    /// `J_1(0) = j`.
    pub fn weight_on(&self, element: &[Rat; 2], i: i64, j: i64) -> Rat {
        &element[0] * Rat::int(i) + &element[1] * Rat::int(j)
    }
}

/// Affine top weight of the `|i|`-th one-row (or one-column) family member
/// at the embedding level for `sl_m`.
fn affine_top(m: i64, i: i64) -> Result<Rat> {
    let lvl = LieLevel::embedding_level(m as usize);
    let lambda = if i >= 0 {
        WeightVec::multiple_of_omega(m as usize, 1, i)?
    } else {
        WeightVec::multiple_of_omega(m as usize, m as usize - 1, -i)?
    };
    sugawara_weight(&lvl, &lambda)
}

/// Checks `sugawara + fock = |i|` across the decomposition of the embedding
/// `gl_m` into `sl_{m+1}`, where the Fock factor sits at level `-m/2`.
/// Valid for every `m >= 4`, even or odd.
pub fn ce_summand_check(m: i64, range: i64) -> Result<Report> {
    if m < 4 {
        return Err(Error::BadSectorRank(m));
    }
    let mut report = Report::new("ce-summand");
    let level = Rat::new(-m, 2)?;
    let mut violations = 0usize;
    for i in -range..=range {
        let fock = fock_delta(&FockModule::new(level.clone(), Rat::int(i))?);
        let total = affine_top(m, i)? + fock;
        if total != Rat::int(i.abs()) {
            violations += 1;
            report.push(
                format!("summand i={i}"),
                format!("m={m}"),
                Rat::int(i.abs()),
                total,
            );
        }
    }
    report.push(
        "ce-summand violations",
        format!("m={m}, range={range}"),
        0,
        violations,
    );
    Ok(report)
}

/// Checks `sugawara + fock + singlet = 3|i|/2` across the decomposition of
/// the extended algebra, where the Fock factor sits at level `-m/(m+2)`.
/// The affine data comes from the even-rank families, so `m` must be even.
pub fn wdecomp_check(m: i64, range: i64) -> Result<Report> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::BadSectorRank(m));
    }
    let mut report = Report::new("wdecomp");
    let level = Rat::new(-m, m + 2)?;
    let mut violations = 0usize;
    for i in -range..=range {
        let fock = fock_delta(&FockModule::new(level.clone(), Rat::int(i))?);
        let singlet = singlet_delta(&SingletModule::Atypical(i));
        let total = affine_top(m, i)? + fock + singlet;
        if total != Rat::new(3 * i.abs(), 2)? {
            violations += 1;
            report.push(
                format!("sector i={i}"),
                format!("m={m}"),
                Rat::new(3 * i.abs(), 2)?,
                total,
            );
        }
    }
    report.push(
        "wdecomp violations",
        format!("m={m}, range={range}"),
        0,
        violations,
    );
    Ok(report)
}

/// Verifies the Gram data of the diagonalizing fields:
/// `<h,h> = -(m+2)/2`, `<hbar,hbar> = -m/(m+2)`, `<h,hbar> = 0`.
pub fn gram_check(m: i64) -> Result<Report> {
    let basis = GramBasis::new(m)?;
    let mut report = Report::new("gram");
    let h = basis.h();
    let hbar = basis.hbar();
    report.push(
        "<h,h> = s1",
        format!("m={m}"),
        Rat::new(-(m + 2), 2)?,
        basis.inner(&h, &h),
    );
    report.push(
        "<hbar,hbar> = l",
        format!("m={m}"),
        Rat::new(-m, m + 2)?,
        basis.inner(&hbar, &hbar),
    );
    report.push(
        "<h,hbar> = 0",
        format!("m={m}"),
        Rat::zero(),
        basis.inner(&h, &hbar),
    );
    Ok(report)
}

/// Point check of the Fock basis change
/// `F^{-1}_i (x) F^{s}_j = F^{s1}_{i-j} (x) F^{l}_{(mi+2j)/(m+2)}`:
/// the diagonal weights and the conformal-weight identity at `(i, j)`.
pub fn fock_basis_change(m: i64, i: i64, j: i64) -> Result<Report> {
    let basis = GramBasis::new(m)?;
    let mut report = Report::new("fock-basis-change");
    report.push(
        "h-weight",
        format!("m={m}, i={i}, j={j}"),
        Rat::int(i - j),
        basis.weight_on(&basis.h(), i, j),
    );
    report.push(
        "hbar-weight",
        format!("m={m}, i={i}, j={j}"),
        Rat::new(m * i + 2 * j, m + 2)?,
        basis.weight_on(&basis.hbar(), i, j),
    );

    let lhs = fock_delta(&FockModule::new(Rat::int(-1), Rat::int(i))?)
        + fock_delta(&FockModule::new(Rat::new(-m, 2)?, Rat::int(j))?);
    let rhs = fock_delta(&FockModule::new(Rat::new(-(m + 2), 2)?, Rat::int(i - j))?)
        + fock_delta(&FockModule::new(
            Rat::new(-m, m + 2)?,
            Rat::new(m * i + 2 * j, m + 2)?,
        )?);
    report.push("conformal weight", format!("m={m}, i={i}, j={j}"), lhs, rhs);
    Ok(report)
}

/// The conformal-weight identity of the basis change as an exact polynomial
/// identity in `(i, j)`, not merely a grid check.
pub fn fock_basis_change_identity(m: i64) -> Result<Report> {
    let vars = ["i", "j"];
    let i = MPoly::var(&vars, 0);
    let j = MPoly::var(&vars, 1);

    // -i^2/2 + j^2/(2s) with s = -m/2
    let lhs = i
        .pow(2)
        .scale(&Rat::new(-1, 2)?)
        .add(&j.pow(2).scale(&Rat::new(-1, m)?))?;
    // (i-j)^2/(2 s1) + ((m i + 2 j)/(m+2))^2 / (2 l)
    let s1_term = i.sub(&j)?.pow(2).scale(&Rat::new(-1, m + 2)?);
    let hbar_weight = i
        .scale(&Rat::new(m, m + 2)?)
        .add(&j.scale(&Rat::new(2, m + 2)?))?;
    let l_term = hbar_weight.pow(2).scale(&Rat::new(-(m + 2), 2 * m)?);
    let rhs = s1_term.add(&l_term)?;

    let mut report = Report::new("fock-basis-change-identity");
    report.push(
        "two-variable identity",
        format!("m={m}"),
        "0",
        lhs.sub(&rhs)?.to_string(),
    );
    report.push_bool("exact equality", format!("m={m}"), poly_equal(&lhs, &rhs)?);
    Ok(report)
}

/// Verification suite for the embedding bookkeeping. The extension
/// decomposition check only applies at even `m`; everything else holds for
/// odd `m` as well.
pub fn suite(m: i64, range: i64) -> Result<Report> {
    let mut report = Report::new("embedcheck");
    report.merge(ce_summand_check(m, range)?);
    if m % 2 == 0 {
        report.merge(wdecomp_check(m, range)?);
    }
    report.merge(gram_check(m)?);
    report.merge(fock_basis_change_identity(m)?);
    for (i, j) in [(0, 0), (1, 0), (1, 1), (-2, 3)] {
        report.merge(fock_basis_change(m, i, j)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q).unwrap()
    }

    #[test]
    fn ce_summand_examples() {
        // m=4, i=1: 5/4 - 1/4 = 1
        assert_eq!(affine_top(4, 1).unwrap(), r(5, 4));
        assert!(ce_summand_check(4, 20).unwrap().all_passed());
        // m=6, i=3: (9/6 + 3) - 9/6 = 3
        assert_eq!(affine_top(6, 3).unwrap(), r(9, 2));
        assert!(ce_summand_check(6, 20).unwrap().all_passed());
        // odd rank is in scope here
        assert!(ce_summand_check(5, 20).unwrap().all_passed());
        assert!(ce_summand_check(7, 20).unwrap().all_passed());
    }

    #[test]
    fn wdecomp_full_range() {
        for m in (4..=20i64).step_by(2) {
            assert!(wdecomp_check(m, 100).unwrap().all_passed(), "m = {m}");
        }
    }

    #[test]
    fn wdecomp_examples() {
        assert!(wdecomp_check(4, 20).unwrap().all_passed());
        assert!(wdecomp_check(8, 20).unwrap().all_passed());
        // m=4, i=1: 5/4 - 3/4 + 1 = 3/2
        let fock = fock_delta(&FockModule::new(r(-4, 6), Rat::one()).unwrap());
        assert_eq!(affine_top(4, 1).unwrap() + fock + Rat::one(), r(3, 2));
        // odd m rejected for the extension decomposition
        assert!(wdecomp_check(5, 5).is_err());
    }

    #[test]
    fn gram_examples() {
        let basis = GramBasis::new(4).unwrap();
        assert_eq!(basis.inner(&basis.h(), &basis.h()), Rat::int(-3));
        assert_eq!(basis.inner(&basis.h(), &basis.hbar()), Rat::zero());
        assert_eq!(basis.inner(&basis.hbar(), &basis.hbar()), r(-2, 3));
        for m in 4..=20 {
            assert!(gram_check(m).unwrap().all_passed(), "m = {m}");
        }
    }

    #[test]
    fn basis_change_points() {
        // (m=4, i=1, j=1): -3/4 = 0 + (-3/4)
        let report = fock_basis_change(4, 1, 1).unwrap();
        assert!(report.all_passed(), "{report:?}");
        // (m=4, i=1, j=0): -1/2 = -1/6 - 1/3
        let lhs = fock_delta(&FockModule::new(Rat::int(-1), Rat::one()).unwrap());
        assert_eq!(lhs, r(-1, 2));
        let rhs = fock_delta(&FockModule::new(Rat::int(-3), Rat::one()).unwrap())
            + fock_delta(&FockModule::new(r(-2, 3), r(2, 3)).unwrap());
        assert_eq!(rhs, r(-1, 6) + r(-1, 3));
        assert!(fock_basis_change(4, 1, 0).unwrap().all_passed());
        assert!(fock_basis_change(4, 0, 0).unwrap().all_passed());
    }

    #[test]
    fn basis_change_polynomial_identity() {
        for m in 4..=20 {
            assert!(
                fock_basis_change_identity(m).unwrap().all_passed(),
                "m = {m}"
            );
        }
    }
}
