//! Weight-lattice arithmetic for `sl_N`: inner products in the
//! fundamental-weight basis, Sugawara and minimal-reduction conformal
//! weights, Weyl dimensions, the Pieri rule for tensoring with the defining
//! representation, and restriction to `gl_m`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratcore::Rat;
use crate::report::Report;

/// An `sl_N` weight, stored as coefficients in the fundamental-weight basis.
///
/// Coefficients are rationals on purpose: the same type carries both
/// integral highest weights and rational Heisenberg data. Dominance and
/// integrality are predicates, not type restrictions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightVec {
    n: usize,
    coeffs: Vec<Rat>,
}

impl WeightVec {
    pub fn new(n: usize, coeffs: Vec<Rat>) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        if coeffs.len() != n - 1 {
            return Err(Error::RankMismatch(n, coeffs.len() + 1));
        }
        Ok(WeightVec { n, coeffs })
    }

    pub fn zero(n: usize) -> Self {
        WeightVec {
            n,
            coeffs: vec![Rat::zero(); n - 1],
        }
    }

    /// The fundamental weight `omega_i`, 1-based.
    pub fn omega(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n - 1 {
            return Err(Error::IndexOutOfRange { n, index: i });
        }
        let mut w = WeightVec::zero(n);
        w.coeffs[i - 1] = Rat::one();
        Ok(w)
    }

    /// `rho`, the all-ones coefficient vector.
    pub fn rho(n: usize) -> Self {
        WeightVec {
            n,
            coeffs: vec![Rat::one(); n - 1],
        }
    }

    /// The highest root `theta = omega_1 + omega_{N-1}`, computed, not
    /// hard-coded (its norm is validated to be 2 in the test suite).
    pub fn theta(n: usize) -> Self {
        let mut w = WeightVec::zero(n);
        w.coeffs[0] = Rat::one();
        w.coeffs[n - 2] = &w.coeffs[n - 2] + &Rat::one();
        w
    }

    pub fn rank_n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// 1-based coefficient access.
    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i - 1]
    }

    pub fn dominant_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn add(&self, other: &WeightVec) -> Result<WeightVec> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        Ok(WeightVec {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, k: &Rat) -> WeightVec {
        WeightVec {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `s * omega_i` as a convenience for the one-line families.
    pub fn multiple_of_omega(n: usize, i: usize, s: i64) -> Result<WeightVec> {
        Ok(WeightVec::omega(n, i)?.scale(&Rat::int(s)))
    }

    /// Sum of coefficients; for `sl_N` this equals `<lambda, theta>`.
    pub fn coeff_sum(&self) -> Rat {
        self.coeffs.iter().cloned().sum()
    }

    /// Row lengths of the associated partition, `r_i = sum_{k>=i} lambda_k`,
    /// with an implicit `r_N = 0`. Requires dominant integral input.
    fn partition_rows(&self) -> Result<Vec<BigInt>> {
        if !self.dominant_integral() {
            return Err(Error::NonDominant);
        }
        let mut rows = vec![BigInt::zero(); self.n];
        for i in (0..self.n - 1).rev() {
            rows[i] = &rows[i + 1] + self.coeffs[i].to_integer().expect("integral");
        }
        Ok(rows)
    }

    fn from_partition_rows(n: usize, rows: &[BigInt]) -> WeightVec {
        let coeffs = (0..n - 1)
            .map(|i| {
                let diff = &rows[i] - &rows[i + 1];
                Rat::from_big(diff, BigInt::one()).expect("nonzero denominator")
            })
            .collect();
        WeightVec { n, coeffs }
    }
}

impl fmt::Display for WeightVec {
    /// Comma-separated coefficient list `l1,...,l_{N-1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for WeightVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs: Result<Vec<Rat>> = s.split(',').map(|t| t.parse::<Rat>()).collect();
        let coeffs = coeffs?;
        WeightVec::new(coeffs.len() + 1, coeffs)
    }
}

/// An `sl_N` level. The dual Coxeter number of `sl_N` is `N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieLevel {
    n: usize,
    k: Rat,
}

impl LieLevel {
    pub fn new(n: usize, k: Rat) -> Self {
        LieLevel { n, k }
    }

    /// `sl_m` at level `-(m+1)/2`, the level of the conformal embedding
    /// `gl_m` into `sl_{m+1}`.
    pub fn embedding_level(m: usize) -> Self {
        LieLevel {
            n: m,
            k: Rat::new(-(m as i64 + 1), 2).expect("nonzero"),
        }
    }

    /// `sl_{m+2}` at level `-(m+3)/2`, the level on the W-algebra side of
    /// the minimal reduction.
    pub fn reduction_level(m: usize) -> Self {
        LieLevel {
            n: m + 2,
            k: Rat::new(-(m as i64 + 3), 2).expect("nonzero"),
        }
    }

    pub fn rank_n(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> &Rat {
        &self.k
    }

    /// `k + h_vee`, erroring at the critical level.
    fn shifted_level(&self) -> Result<Rat> {
        let shifted = &self.k + &Rat::int(self.n as i64);
        if shifted.is_zero() {
            return Err(Error::CriticalLevel(self.n));
        }
        Ok(shifted)
    }
}

/// `<omega_i, omega_j> = min(i,j) - i j / N` for `sl_N`, 1-based indices.
pub fn fw_inner(n: usize, i: usize, j: usize) -> Result<Rat> {
    if i == 0 || i > n - 1 {
        return Err(Error::IndexOutOfRange { n, index: i });
    }
    if j == 0 || j > n - 1 {
        return Err(Error::IndexOutOfRange { n, index: j });
    }
    let min = Rat::int(i.min(j) as i64);
    Ok(min - Rat::new((i * j) as i64, n as i64)?)
}

/// Bilinear extension of [`fw_inner`] to arbitrary weights of the same rank.
pub fn weight_inner(a: &WeightVec, b: &WeightVec) -> Result<Rat> {
    if a.n != b.n {
        return Err(Error::RankMismatch(a.n, b.n));
    }
    let mut total = Rat::zero();
    for i in 1..a.n {
        if a.coeff(i).is_zero() {
            continue;
        }
        for j in 1..b.n {
            if b.coeff(j).is_zero() {
                continue;
            }
            total += a.coeff(i) * b.coeff(j) * fw_inner(a.n, i, j)?;
        }
    }
    Ok(total)
}

/// Sugawara conformal weight `<lambda, lambda + 2 rho> / (2(k + N))`.
pub fn sugawara_weight(lvl: &LieLevel, lambda: &WeightVec) -> Result<Rat> {
    if lvl.n != lambda.n {
        return Err(Error::RankMismatch(lvl.n, lambda.n));
    }
    let shifted = lvl.shifted_level()?;
    let two_rho = WeightVec::rho(lvl.n).scale(&Rat::int(2));
    let arg = lambda.add(&two_rho)?;
    Ok(weight_inner(lambda, &arg)? / (Rat::int(2) * shifted))
}

/// Top conformal weight of the minimal reduction: Sugawara minus
/// `<lambda, theta>/2`.
pub fn minimal_reduction_weight(lvl: &LieLevel, lambda: &WeightVec) -> Result<Rat> {
    let theta = WeightVec::theta(lvl.n);
    let half_theta = weight_inner(lambda, &theta)? / Rat::int(2);
    Ok(sugawara_weight(lvl, lambda)? - half_theta)
}

/// Heisenberg zero-mode eigenvalue `<lambda, omega_1 - omega_{N-1}>`.
pub fn j0_weight(lambda: &WeightVec) -> Result<Rat> {
    let n = lambda.n;
    if n < 3 {
        return Err(Error::RankTooSmall(n));
    }
    let first = weight_inner(lambda, &WeightVec::omega(n, 1)?)?;
    let last = weight_inner(lambda, &WeightVec::omega(n, n - 1)?)?;
    Ok(first - last)
}

/// Weyl dimension of the irreducible `sl_N` module with highest weight
/// `lambda`, via the product over positive roots in partition coordinates.
pub fn weyl_dim(lambda: &WeightVec) -> Result<BigInt> {
    let rows = lambda.partition_rows()?;
    let n = lambda.n;
    let mut dim = Rat::one();
    for i in 0..n {
        for j in (i + 1)..n {
            let num = &rows[i] - &rows[j] + BigInt::from((j - i) as i64);
            let den = BigInt::from((j - i) as i64);
            dim = dim * Rat::from_big(num, den)?;
        }
    }
    Ok(dim.to_integer().expect("Weyl product is an integer"))
}

/// Pieri rule for `V(lambda) (x) V(omega_1)`: add one box to the associated
/// partition in every admissible row; a box in row `N` strips a full column.
/// The decomposition is multiplicity-free.
pub fn pieri_tensor_omega1(lambda: &WeightVec) -> Result<Vec<WeightVec>> {
    let rows = lambda.partition_rows()?;
    let n = lambda.n;
    let mut out = Vec::new();
    for j in 0..n {
        let admissible = if j == 0 {
            true
        } else {
            &rows[j] + BigInt::one() <= rows[j - 1]
        };
        if !admissible {
            continue;
        }
        let mut new_rows = rows.clone();
        new_rows[j] += BigInt::one();
        if j == n - 1 {
            // full first column: subtract it to land back in sl_N weights
            for r in new_rows.iter_mut() {
                *r -= BigInt::one();
            }
        }
        out.push(WeightVec::from_partition_rows(n, &new_rows));
    }
    Ok(out)
}

/// Restriction of an `sl_{m+2}` weight to `gl_m` data: the Heisenberg
/// eigenvalue together with the `sl_m` weight that drops the outer labels.
pub fn restrict_glm(lambda: &WeightVec) -> Result<(Rat, WeightVec)> {
    let n = lambda.n;
    if n < 5 {
        return Err(Error::RankTooSmall(n));
    }
    let m = n - 2;
    let mu = j0_weight(lambda)?;
    let inner = lambda.coeffs[1..m].to_vec();
    Ok((mu, WeightVec::new(m, inner)?))
}

/// Verification suite for the weight-lattice kernel at rank `m`.
pub fn suite(m: usize, range: i64) -> Result<Report> {
    let mut report = Report::new("liecore");
    report.push("<w1,w1> sl_6", "(6, 1, 1)", "5/6", fw_inner(6, 1, 1)?);
    report.push("<w1,w5> sl_6", "(6, 1, 5)", "1/6", fw_inner(6, 1, 5)?);
    let theta = WeightVec::theta(m);
    report.push(
        "<theta,theta>",
        format!("sl_{m}"),
        "2",
        weight_inner(&theta, &theta)?,
    );

    let lvl = LieLevel::embedding_level(m);
    let mut bad = 0usize;
    for i in 0..=range.min(50) {
        let lambda = WeightVec::multiple_of_omega(m, 1, i)?;
        let expect = Rat::new(i * i, m as i64)? + Rat::int(i);
        if sugawara_weight(&lvl, &lambda)? != expect {
            bad += 1;
        }
        let mirrored = WeightVec::multiple_of_omega(m, m - 1, i)?;
        if sugawara_weight(&lvl, &mirrored)? != expect {
            bad += 1;
        }
    }
    report.push(
        "sugawara i^2/m + i at the embedding level",
        format!("m={m}, 0<=i<={}", range.min(50)),
        0,
        bad,
    );

    let mut dims_ok = true;
    for a in 0..=2i64 {
        for b in 0..=2i64 {
            let lambda = WeightVec::multiple_of_omega(m, 1, a)?
                .add(&WeightVec::multiple_of_omega(m, m - 1, b)?)?;
            let lhs = weyl_dim(&lambda)? * BigInt::from(m as i64);
            let rhs: BigInt = pieri_tensor_omega1(&lambda)?
                .iter()
                .map(|w| weyl_dim(w).expect("dominant"))
                .sum();
            dims_ok &= lhs == rhs;
        }
    }
    report.push_bool(
        "Pieri dimension multiplicativity",
        format!("m={m}"),
        dims_ok,
    );
    Ok(report)
}
