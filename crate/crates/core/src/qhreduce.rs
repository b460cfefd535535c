//! Weight matching for the minimal quantum Hamiltonian reduction: top-level
//! data of reduced modules, the closed form of the reduction weight on
//! two-parameter weights, the sum-of-squares positivity certificate, the
//! integral solutions of the weight-coincidence equation, and the Pieri
//! obstruction data.
//!
//! Every displayed intermediate simplification is re-verified as an exact
//! polynomial identity rather than trusted; failures surface as report
//! findings, not crashes.

use crate::error::{Error, Result};
use crate::extension::delta_atypical;
use crate::liecore::{
    fw_inner, j0_weight, minimal_reduction_weight, pieri_tensor_omega1, restrict_glm, weight_inner,
    LieLevel, WeightVec,
};
use crate::ratcore::{poly_equal, MPoly, Rat};
use crate::report::Report;

/// Top-level data of the minimal reduction of a highest weight module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QhrData {
    pub m: i64,
    pub lambda: WeightVec,
    pub mu: Rat,
    pub lambda_bar: WeightVec,
    pub delta: Rat,
}

/// Assembles the reduction top data `(mu, lambda_bar, delta)` of the module
/// with dominant integral highest weight `lambda` for `sl_{m+2}` at the
/// reduction level `-(m+3)/2`.
pub fn qhr_top_data(m: i64, lambda: &WeightVec) -> Result<QhrData> {
    if m < 3 {
        return Err(Error::RankTooSmall(m.max(0) as usize));
    }
    if lambda.rank_n() != (m + 2) as usize {
        return Err(Error::RankMismatch(lambda.rank_n(), (m + 2) as usize));
    }
    if !lambda.dominant_integral() {
        return Err(Error::NonDominant);
    }
    let (mu, lambda_bar) = restrict_glm(lambda)?;
    let delta = minimal_reduction_weight(&LieLevel::reduction_level(m as usize), lambda)?;
    // integral weights land in (1/(m+2)) Z on the Heisenberg side
    let scaled = &mu * Rat::int(m + 2);
    if !scaled.is_integer() {
        return Err(Error::Precondition(format!(
            "Heisenberg weight {mu} is not in (1/{})Z",
            m + 2
        )));
    }
    Ok(QhrData {
        m,
        lambda: lambda.clone(),
        mu,
        lambda_bar,
        delta,
    })
}

/// Closed form of the reduction weight on `l1 w_1 + llast w_{m+1}`:
/// `l1^2/(m+2) + llast^2/(m+2) + 2 l1 llast /((m+1)(m+2)) + l1/2 + llast/2`.
pub fn delta_theta(m: i64, l1: &Rat, llast: &Rat) -> Rat {
    let n = Rat::int(m + 2);
    l1.sq() / &n
        + llast.sq() / &n
        + Rat::int(2) * l1 * llast / (Rat::int(m + 1) * &n)
        + (l1 + llast) / Rat::int(2)
}

const THETA_VARS: [&str; 2] = ["l1", "llast"];

/// [`delta_theta`] as a polynomial in `(l1, llast)`.
pub fn delta_theta_poly(m: i64) -> MPoly {
    let vars: Vec<&str> = THETA_VARS.to_vec();
    let x = MPoly::var(&vars, 0);
    let y = MPoly::var(&vars, 1);
    let inv_n = Rat::new(1, m + 2).expect("m + 2 > 0");
    let cross = Rat::new(2, (m + 1) * (m + 2)).expect("positive");
    let half = Rat::new(1, 2).expect("2 != 0");
    x.pow(2)
        .scale(&inv_n)
        .add(&y.pow(2).scale(&inv_n))
        .and_then(|p| p.add(&x.mul(&y).expect("same vars").scale(&cross)))
        .and_then(|p| p.add(&x.scale(&half)))
        .and_then(|p| p.add(&y.scale(&half)))
        .expect("same variable list")
}

/// The Sugawara-minus-half-theta reduction weight on `l1 w_1 + llast w_{m+1}`,
/// built symbolically from the inner-product data (the independent route
/// against [`delta_theta_poly`]).
pub fn reduction_weight_poly(m: i64) -> Result<MPoly> {
    let n = (m + 2) as usize;
    let vars: Vec<&str> = THETA_VARS.to_vec();
    let idx = [1usize, n - 1];
    let coeff_polys = [MPoly::var(&vars, 0), MPoly::var(&vars, 1)];

    // <lambda, lambda>
    let mut norm = MPoly::zero(&vars);
    for (u, pu) in idx.iter().zip(&coeff_polys) {
        for (v, pv) in idx.iter().zip(&coeff_polys) {
            norm = norm.add(&pu.mul(pv)?.scale(&fw_inner(n, *u, *v)?))?;
        }
    }
    // <lambda, 2 rho>
    let two_rho = WeightVec::rho(n).scale(&Rat::int(2));
    let mut linear = MPoly::zero(&vars);
    for (u, pu) in idx.iter().zip(&coeff_polys) {
        let pairing = weight_inner(&WeightVec::omega(n, *u)?, &two_rho)?;
        linear = linear.add(&pu.scale(&pairing))?;
    }
    // <lambda, theta> = l1 + llast here
    let theta = WeightVec::theta(n);
    let mut theta_part = MPoly::zero(&vars);
    for (u, pu) in idx.iter().zip(&coeff_polys) {
        let pairing = weight_inner(&WeightVec::omega(n, *u)?, &theta)?;
        theta_part = theta_part.add(&pu.scale(&pairing))?;
    }

    let denom = Rat::new(1, m + 1)?;
    let half = Rat::new(1, 2)?;
    norm.add(&linear)?
        .scale(&denom)
        .sub(&theta_part.scale(&half))
}

const SOS_VARS: [&str; 3] = ["l1", "l2", "lm1"];

fn sos_vars() -> Vec<&'static str> {
    SOS_VARS.to_vec()
}

/// The weight-difference polynomial of the reduction obstruction, built from
/// the inner-product machinery: reduction weight minus the top weight of the
/// candidate induced module (whose argmin sector carries `l2` affine data).
fn grand_difference_poly(m: i64) -> Result<MPoly> {
    let n = (m + 2) as usize;
    let vars = sos_vars();
    let idx = [1usize, 2, n - 1];
    let xs = [
        MPoly::var(&vars, 0),
        MPoly::var(&vars, 1),
        MPoly::var(&vars, 2),
    ];

    let mut norm = MPoly::zero(&vars);
    for (u, pu) in idx.iter().zip(&xs) {
        for (v, pv) in idx.iter().zip(&xs) {
            norm = norm.add(&pu.mul(pv)?.scale(&fw_inner(n, *u, *v)?))?;
        }
    }
    let two_rho = WeightVec::rho(n).scale(&Rat::int(2));
    let theta = WeightVec::theta(n);
    let mut linear = MPoly::zero(&vars);
    let mut theta_part = MPoly::zero(&vars);
    let mut heis = MPoly::zero(&vars);
    for (u, pu) in idx.iter().zip(&xs) {
        let omega_u = WeightVec::omega(n, *u)?;
        linear = linear.add(&pu.scale(&weight_inner(&omega_u, &two_rho)?))?;
        theta_part = theta_part.add(&pu.scale(&weight_inner(&omega_u, &theta)?))?;
        let c_u = fw_inner(n, *u, 1)? - fw_inner(n, *u, n - 1)?;
        heis = heis.add(&pu.scale(&c_u))?;
    }

    let reduction = norm
        .add(&linear)?
        .scale(&Rat::new(1, m + 1)?)
        .sub(&theta_part.scale(&Rat::new(1, 2)?))?;
    // top weight of the induced candidate: l2^2/m + l2 - mu^2 (m+2)/(2m)
    let induced = xs[1]
        .pow(2)
        .scale(&Rat::new(1, m)?)
        .add(&xs[1])?
        .sub(&heis.pow(2).scale(&Rat::new(m + 2, 2 * m)?))?;
    reduction.sub(&induced)
}

/// The displayed intermediate quadratic form of the difference.
fn intermediate_quadratic_poly(m: i64) -> Result<MPoly> {
    let vars = sos_vars();
    let l1 = MPoly::var(&vars, 0);
    let l2 = MPoly::var(&vars, 1);
    let lm = MPoly::var(&vars, 2);
    let half = Rat::new(1, 2)?;
    let c2 = Rat::new(m - 3, 2 * (m + 1))?;
    let c12 = Rat::new(m - 1, m + 1)?;
    let c2m = Rat::new(m - 3, m + 1)?;
    l1.pow(2)
        .scale(&half)
        .add(&l2.pow(2).scale(&c2))?
        .add(&lm.pow(2).scale(&half))?
        .add(&l1.mul(&l2)?.scale(&c12))?
        .sub(&l1.mul(&lm)?.scale(&c12))?
        .sub(&l2.mul(&lm)?.scale(&c2m))?
        .add(&l1.scale(&half))?
        .add(&l2.scale(&c2))?
        .add(&lm.scale(&half))
}

/// The displayed sum-of-squares form of the difference.
fn sum_of_squares_poly(m: i64) -> Result<MPoly> {
    let vars = sos_vars();
    let l1 = MPoly::var(&vars, 0);
    let l2 = MPoly::var(&vars, 1);
    let lm = MPoly::var(&vars, 2);
    let square_arg = l1
        .add(&l2.scale(&Rat::new(m - 3, m - 1)?))?
        .sub(&lm.scale(&Rat::new(m - 1, m + 1)?))?;
    square_arg
        .pow(2)
        .scale(&Rat::new(1, 2)?)
        .add(
            &l2.pow(2)
                .scale(&Rat::new(2 * (m - 3), (m + 1) * (m - 1) * (m - 1))?),
        )?
        .add(&lm.pow(2).scale(&Rat::new(2 * m, (m + 1) * (m + 1))?))?
        .add(&l1.mul(&l2)?.scale(&Rat::new(4, m * m - 1)?))?
        .add(&l1.scale(&Rat::new(1, 2)?))?
        .add(&l2.scale(&Rat::new(m - 3, 2 * (m + 1))?))?
        .add(&lm.scale(&Rat::new(1, 2)?))
}

/// Auxiliary displayed expansions of the pairings entering the difference,
/// each as `(label, display, general-route)` polynomial pairs.
fn aux_display_polys(m: i64) -> Result<Vec<(String, MPoly, MPoly)>> {
    let n = (m + 2) as usize;
    let vars = sos_vars();
    let idx = [1usize, 2, n - 1];
    let xs = [
        MPoly::var(&vars, 0),
        MPoly::var(&vars, 1),
        MPoly::var(&vars, 2),
    ];
    let l1 = &xs[0];
    let l2 = &xs[1];
    let lm = &xs[2];

    let mut out = Vec::new();

    let two_rho = WeightVec::rho(n).scale(&Rat::int(2));
    let mut route = MPoly::zero(&vars);
    for (u, pu) in idx.iter().zip(&xs) {
        route = route.add(&pu.scale(&weight_inner(&WeightVec::omega(n, *u)?, &two_rho)?))?;
    }
    let display = l1
        .scale(&Rat::int(m + 1))
        .add(&l2.scale(&Rat::int(2 * m)))?
        .add(&lm.scale(&Rat::int(m + 1)))?;
    out.push(("<lambda, 2rho>".to_string(), display, route));

    let mut route = MPoly::zero(&vars);
    for (u, pu) in idx.iter().zip(&xs) {
        for (v, pv) in idx.iter().zip(&xs) {
            route = route.add(&pu.mul(pv)?.scale(&fw_inner(n, *u, *v)?))?;
        }
    }
    let display = l1
        .pow(2)
        .scale(&Rat::new(m + 1, m + 2)?)
        .add(&l2.pow(2).scale(&Rat::new(2 * m, m + 2)?))?
        .add(&lm.pow(2).scale(&Rat::new(m + 1, m + 2)?))?
        .add(&l1.mul(l2)?.scale(&Rat::new(2 * m, m + 2)?))?
        .add(&l1.mul(lm)?.scale(&Rat::new(2, m + 2)?))?
        .add(&l2.mul(lm)?.scale(&Rat::new(4, m + 2)?))?;
    out.push(("<lambda, lambda>".to_string(), display, route));

    let mut heis = MPoly::zero(&vars);
    for (u, pu) in idx.iter().zip(&xs) {
        let c_u = fw_inner(n, *u, 1)? - fw_inner(n, *u, n - 1)?;
        heis = heis.add(&pu.scale(&c_u))?;
    }
    let display = l1
        .scale(&Rat::new(m, m + 2)?)
        .add(&l2.scale(&Rat::new(m - 2, m + 2)?))?
        .sub(&lm.scale(&Rat::new(m, m + 2)?))?;
    out.push((
        "<lambda, w1 - w_{m+1}>".to_string(),
        display.clone(),
        heis.clone(),
    ));

    let display_sq = l1
        .pow(2)
        .scale(&Rat::new(m, 2 * (m + 2))?)
        .add(
            &l2.pow(2)
                .scale(&Rat::new((m - 2) * (m - 2), 2 * m * (m + 2))?),
        )?
        .add(&lm.pow(2).scale(&Rat::new(m, 2 * (m + 2))?))?
        .add(&l1.mul(l2)?.scale(&Rat::new(m - 2, m + 2)?))?
        .sub(&l1.mul(lm)?.scale(&Rat::new(m, m + 2)?))?
        .sub(&l2.mul(lm)?.scale(&Rat::new(m - 2, m + 2)?))?;
    let heis_sq = heis.pow(2).scale(&Rat::new(m + 2, 2 * m)?);
    out.push((
        "<lambda, w1 - w_{m+1}>^2 (m+2)/(2m)".to_string(),
        display_sq,
        heis_sq,
    ));

    Ok(out)
}

/// Verifies both displayed rewritings of the reduction-weight difference as
/// exact polynomial identities, then confirms strict positivity of the
/// difference on the grid `l1, lm1 in 0..=20`, `l2 in 1..=20`.
pub fn sos_certificate(m: i64) -> Result<Report> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::BadSectorRank(m));
    }
    let mut report = Report::new("sos-certificate");
    for (label, display, route) in aux_display_polys(m)? {
        report.push_bool(
            format!("display {label}"),
            format!("m={m}"),
            poly_equal(&display, &route)?,
        );
    }

    let grand = grand_difference_poly(m)?;
    let quadratic = intermediate_quadratic_poly(m)?;
    let sos = sum_of_squares_poly(m)?;
    let quad_ok = poly_equal(&grand, &quadratic)?;
    report.push(
        "difference equals intermediate quadratic",
        format!("m={m}"),
        "0",
        grand.sub(&quadratic)?.to_string(),
    );
    let sos_ok = poly_equal(&quadratic, &sos)?;
    report.push(
        "intermediate quadratic equals sum of squares",
        format!("m={m}"),
        "0",
        quadratic.sub(&sos)?.to_string(),
    );

    if quad_ok && sos_ok {
        let mut nonpositive = 0usize;
        for l1 in 0..=20i64 {
            for l2 in 1..=20i64 {
                for lm in 0..=20i64 {
                    let value = grand.eval(&[Rat::int(l1), Rat::int(l2), Rat::int(lm)]);
                    if value.is_zero() || value.is_negative() {
                        nonpositive += 1;
                    }
                }
            }
        }
        report.push(
            "grid positivity l1,lm1 in 0..=20, l2 in 1..=20",
            format!("m={m}"),
            0,
            nonpositive,
        );
    }
    Ok(report)
}

/// Non-negative integer solutions `(l1, llast)` of the weight-coincidence
/// equation `l1 = -(m+1) - (m^2+m)/(2 llast - m - 1)`, found by scanning the
/// odd divisors of `m^2 + m`.
pub fn eq1_solutions(m: i64) -> Vec<(i64, i64)> {
    let target = m * m + m;
    let mut out = Vec::new();
    for d in 1..=target {
        if target % d != 0 || d % 2 == 0 {
            continue;
        }
        for divisor in [d, -d] {
            // divisor = 2 llast - m - 1
            let doubled = divisor + m + 1;
            if doubled % 2 != 0 {
                continue;
            }
            let llast = doubled / 2;
            let l1 = -(m + 1) - target / divisor;
            if llast >= 0 && l1 >= 0 {
                out.push((l1, llast));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Polynomial identities behind the two sign branches of the difference
/// `delta_theta - Delta(a, b, 0)` with `b = l1 - llast + 1`.
pub fn nije_difference_identities(m: i64) -> Result<Report> {
    let vars: Vec<&str> = THETA_VARS.to_vec();
    let l1 = MPoly::var(&vars, 0);
    let lm = MPoly::var(&vars, 1);
    let b = l1.sub(&lm)?.add(&MPoly::constant(&vars, Rat::one()))?;

    // Delta(a, b, 0) = b^2/(m+2) + |b|/2 + b m/(m+2) - m/(2(m+2))
    let base = b
        .pow(2)
        .scale(&Rat::new(1, m + 2)?)
        .add(&b.scale(&Rat::new(m, m + 2)?))?
        .sub(&MPoly::constant(&vars, Rat::new(m, 2 * (m + 2))?))?;
    let delta_pos = base.add(&b.scale(&Rat::new(1, 2)?))?;
    let delta_neg = base.sub(&b.scale(&Rat::new(1, 2)?))?;

    let theta = delta_theta_poly(m);

    let expect_pos = l1
        .mul(&lm)?
        .scale(&Rat::new(2, m + 1)?)
        .sub(&l1)?
        .add(&lm.scale(&Rat::int(2)))?
        .sub(&MPoly::constant(&vars, Rat::one()))?;
    let expect_neg = l1.mul(&lm)?.scale(&Rat::new(2, m + 1)?).add(&lm)?;

    let mut report = Report::new("weight-difference-identities");
    report.push(
        "b >= 0 branch",
        format!("m={m}"),
        "0",
        theta.sub(&delta_pos)?.sub(&expect_pos)?.to_string(),
    );
    report.push(
        "b < 0 branch",
        format!("m={m}"),
        "0",
        theta.sub(&delta_neg)?.sub(&expect_neg)?.to_string(),
    );
    Ok(report)
}

/// Pieri analysis for a candidate pair: decomposes
/// `V(l1 w_1 + llast w_{m+1}) (x) V(w_1)` and checks each summand against
/// the weight-coincidence solutions. Summands with an inner label are
/// excluded outright by the positivity certificate.
pub fn pieri_obstruction(m: i64, l1: i64, llast: i64) -> Result<Report> {
    if l1 < 0 || llast < 0 {
        return Err(Error::NonDominant);
    }
    let n = (m + 2) as usize;
    let lambda = WeightVec::multiple_of_omega(n, 1, l1)?.add(&WeightVec::multiple_of_omega(
        n,
        n - 1,
        llast,
    )?)?;
    let summands = pieri_tensor_omega1(&lambda)?;
    let solutions = eq1_solutions(m);

    let mut report = Report::new("pieri-obstruction");
    let mut survivors = 0usize;
    for kappa in &summands {
        let inner_nonzero = (2..n - 1).any(|u| !kappa.coeff(u).is_zero());
        let verdict = if inner_nonzero {
            "excluded (inner label nonzero)"
        } else {
            let k1 = kappa.coeff(1).to_i64().expect("dominant integral");
            let km = kappa.coeff(n - 1).to_i64().expect("dominant integral");
            if solutions.contains(&(k1, km)) {
                survivors += 1;
                "survives"
            } else {
                "excluded (not a coincidence solution)"
            }
        };
        report.push(
            format!("summand {kappa}"),
            format!("m={m}, l1={l1}, llast={llast}"),
            "excluded",
            verdict.split(' ').next().expect("nonempty"),
        );
    }
    report.push(
        "surviving summands",
        format!("m={m}, l1={l1}, llast={llast}"),
        0,
        survivors,
    );
    Ok(report)
}

/// For a point of the unshifted family (`b = a (m+2)/m` integral), returns
/// the highest weight whose reduction carries the same top data, verifying
/// the weight and Heisenberg matches exactly.
pub fn match_reduction(m: i64, a: &Rat, b: i64) -> Result<WeightVec> {
    let c = a * Rat::new(m + 2, m)?;
    if c.to_i64() != Some(b) {
        return Err(Error::Precondition(format!(
            "b = {b} is not a (m+2)/m = {c} for a = {a}"
        )));
    }
    let n = (m + 2) as usize;
    let lambda = if b < 0 {
        WeightVec::multiple_of_omega(n, 1, -b)?
    } else if b > 0 {
        WeightVec::multiple_of_omega(n, n - 1, b)?
    } else {
        WeightVec::zero(n)
    };

    let closed = Rat::new(b * b, m + 2)? + Rat::new(b.abs(), 2)?;
    let theta_route = delta_theta(m, lambda.coeff(1), lambda.coeff(n - 1));
    let induced_top = delta_atypical(m, a, b, 0);
    if theta_route != closed || induced_top != closed {
        return Err(Error::Precondition(format!(
            "weight match failed: closed={closed}, reduction={theta_route}, induced={induced_top}"
        )));
    }
    let mu = j0_weight(&lambda)?;
    if mu != -a {
        return Err(Error::Precondition(format!(
            "Heisenberg match failed: mu={mu}, -a={}",
            -a
        )));
    }
    Ok(lambda)
}

/// Verification suite: the closed form against the inner-product route, the
/// sum-of-squares certificate, the difference identities, the coincidence
/// solutions with their Pieri data, and reduction matching samples.
pub fn suite(m: i64) -> Result<Report> {
    let mut report = Report::new("qhreduce");

    report.push(
        "delta-theta equals Sugawara route",
        format!("m={m}"),
        "0",
        delta_theta_poly(m)
            .sub(&reduction_weight_poly(m)?)?
            .to_string(),
    );
    report.merge(sos_certificate(m)?);
    report.merge(nije_difference_identities(m)?);

    let solutions = eq1_solutions(m);
    report.push(
        "eq1 solution count",
        format!("m={m}"),
        if m == 4 {
            "1".to_string()
        } else {
            solutions.len().to_string()
        },
        solutions.len(),
    );
    for (l1, llast) in &solutions {
        // re-verify the defining coincidence on each returned pair
        let b = l1 - llast + 1;
        let a = Rat::int(b - 1) * Rat::new(m, m + 2)?;
        report.push(
            format!("coincidence at ({l1}, {llast})"),
            format!("m={m}, b={b}"),
            delta_theta(m, &Rat::int(*l1), &Rat::int(*llast)),
            delta_atypical(m, &a, b, 0),
        );
        report.merge(pieri_obstruction(m, *l1, *llast)?);
    }

    for b in [-2i64, -1, 0, 1, 2] {
        let a = Rat::int(b) * Rat::new(m, m + 2)?;
        let lambda = match_reduction(m, &a, b)?;
        report.push(
            format!("reduction match b={b}"),
            format!("m={m}, a={a}"),
            delta_atypical(m, &a, b, 0),
            qhr_top_data(m, &lambda)?.delta,
        );
    }

    let n = (m + 2) as usize;
    let data = qhr_top_data(m, &WeightVec::omega(n, 1)?)?;
    report.push(
        "top data of the defining weight",
        format!("m={m}, lambda=w1"),
        format!(
            "mu={}, delta={}",
            Rat::new(m, m + 2)?,
            delta_theta(m, &Rat::one(), &Rat::zero())
        ),
        format!("mu={}, delta={}", data.mu, data.delta),
    );

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q).unwrap()
    }

    #[test]
    fn qhr_top_data_examples() {
        let data = qhr_top_data(4, &WeightVec::omega(6, 1).unwrap()).unwrap();
        assert_eq!(data.mu, r(2, 3));
        assert_eq!(data.lambda_bar, WeightVec::zero(4));
        assert_eq!(data.delta, r(2, 3));

        let zero = qhr_top_data(4, &WeightVec::zero(6)).unwrap();
        assert_eq!(zero.mu, Rat::zero());
        assert_eq!(zero.delta, Rat::zero());

        let sym = qhr_top_data(4, &WeightVec::omega(6, 5).unwrap()).unwrap();
        assert_eq!(sym.mu, r(-2, 3));
        assert_eq!(sym.delta, r(2, 3));

        assert!(qhr_top_data(4, &WeightVec::omega(6, 1).unwrap().scale(&r(1, 2))).is_err());
    }

    #[test]
    fn delta_theta_examples() {
        assert_eq!(delta_theta(4, &Rat::one(), &Rat::zero()), r(2, 3));
        assert_eq!(delta_theta(4, &Rat::zero(), &Rat::zero()), Rat::zero());
        assert_eq!(delta_theta(4, &Rat::int(15), &Rat::int(2)), r(146, 3));
    }

    #[test]
    fn delta_theta_matches_reduction_route() {
        for m in (4..=20).step_by(2) {
            let diff = delta_theta_poly(m)
                .sub(&reduction_weight_poly(m).unwrap())
                .unwrap();
            assert!(diff.is_zero(), "m = {m}: {diff}");
        }
    }

    #[test]
    fn sos_certificate_m4() {
        let report = sos_certificate(4).unwrap();
        assert!(report.all_passed(), "{report:?}");
    }

    #[test]
    fn sos_grid_point_value() {
        // (l1, l2, lm1) = (0, 1, 0): the quadratic display collapses to
        // l2^2 (m-3)/(2(m+1)) + l2 (m-3)/(2(m+1)) = 1/5 for m = 4
        let grand = grand_difference_poly(4).unwrap();
        assert_eq!(grand.eval(&[Rat::zero(), Rat::one(), Rat::zero()]), r(1, 5));
    }

    #[test]
    fn eq1_m4() {
        assert_eq!(eq1_solutions(4), vec![(15, 2)]);
    }

    #[test]
    fn eq1_divisor_scan_matches_direct_sweep() {
        for m in [4i64, 6, 8, 10] {
            // independent oracle: test the defining equation over a dense sweep
            let mut direct = Vec::new();
            for llast in 0..=(m * m + m) {
                let d = 2 * llast - m - 1;
                if d == 0 || (m * m + m) % d != 0 {
                    continue;
                }
                let l1 = -(m + 1) - (m * m + m) / d;
                if l1 >= 0 {
                    direct.push((l1, llast));
                }
            }
            direct.sort_unstable();
            assert_eq!(eq1_solutions(m), direct, "m = {m}");
        }
    }

    #[test]
    fn eq1_pairs_recheck_coincidence() {
        for m in [4i64, 6] {
            for (l1, llast) in eq1_solutions(m) {
                let b = l1 - llast + 1;
                let a = Rat::int(b - 1) * r(m, m + 2);
                assert_eq!(
                    delta_theta(m, &Rat::int(l1), &Rat::int(llast)),
                    delta_atypical(m, &a, b, 0)
                );
            }
        }
    }

    #[test]
    fn difference_identities_hold() {
        for m in (4..=20).step_by(2) {
            assert!(
                nije_difference_identities(m).unwrap().all_passed(),
                "m = {m}"
            );
        }
    }

    #[test]
    fn pieri_obstruction_at_the_m4_solution() {
        let report = pieri_obstruction(4, 15, 2).unwrap();
        assert!(report.all_passed(), "{report:?}");
        // three summands plus the summary record
        assert_eq!(report.checks.len(), 4);
    }

    #[test]
    fn pieri_obstruction_degenerate() {
        let report = pieri_obstruction(4, 0, 0).unwrap();
        assert_eq!(report.checks.len(), 2); // single summand w1 plus summary
        assert!(report.all_passed());
    }

    #[test]
    fn negative_branch_contradiction() {
        // llast = 0 forces b = l1 + 1 > 0, so the negative branch is empty
        for l1 in 0..=10i64 {
            let b = l1 + 1;
            assert!(b > 0);
        }
    }

    #[test]
    fn match_reduction_examples() {
        let lam = match_reduction(4, &r(-2, 3), -1).unwrap();
        assert_eq!(lam, WeightVec::omega(6, 1).unwrap());
        assert_eq!(delta_theta(4, &Rat::one(), &Rat::zero()), r(2, 3));

        let zero = match_reduction(4, &Rat::zero(), 0).unwrap();
        assert_eq!(zero, WeightVec::zero(6));

        let lam2 = match_reduction(4, &r(4, 3), 2).unwrap();
        assert_eq!(lam2, WeightVec::multiple_of_omega(6, 5, 2).unwrap());
        assert_eq!(delta_theta(4, &Rat::zero(), &Rat::int(2)), r(5, 3));

        assert!(match_reduction(4, &r(1, 2), 1).is_err());
    }
}
