//! Seeded invariant suites runnable from the command line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flat::flat_equal;
use crate::flow::{check_invariants, phi};
use crate::grid::{grid_rows, Figure};
use crate::partitions::{gamma, merge_leq, Partition};
use crate::poly::{c, from_roots, r, roots, MonicPoly, RootConfig, Scalar, DEFAULT_TOL};
use crate::strata::{
    intersect_osculating, osculating_flat, reconstruct_from_velocity, tangent_flat,
    tangency_velocity_for_config,
};
use crate::viete::{discriminant, vandermonde_product, viete_jacobian_det};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    /// Worst observed error for numerical checks.
    pub worst: f64,
}

pub const SUITES: [&str; 6] = ["poly", "partitions", "viete", "strata", "flow", "grid"];

fn random_scalar<R: Rng>(rng: &mut R, radius: f64) -> Scalar {
    c(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius))
}

/// Distinct roots with pairwise separation at least `sep`.
fn separated_roots<R: Rng>(rng: &mut R, d: usize, sep: f64) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::with_capacity(d);
    while out.len() < d {
        let z = random_scalar(rng, 1.5);
        if out.iter().all(|w| (w - z).norm() >= sep) {
            out.push(z);
        }
    }
    out
}

fn outcome(suite: &'static str, name: &'static str, cases: usize, worst: f64, bound: f64) -> CheckOutcome {
    CheckOutcome {
        suite,
        name,
        passed: worst <= bound,
        cases,
        worst,
    }
}

fn poly_suite(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let mut round_trip: f64 = 0.0;
    let mut group: f64 = 0.0;
    for _ in 0..n {
        let d = rng.gen_range(2..=8);
        let us = separated_roots(rng, d, 0.1);
        let rc = RootConfig::from_multiset(&us)?;
        let found = roots(&from_roots(&rc), DEFAULT_TOL)?;
        if found.distinct_count() != d {
            round_trip = f64::INFINITY;
            continue;
        }
        for (&(a, _), &(b, _)) in rc.entries().iter().zip(found.entries()) {
            round_trip = round_trip.max((a - b).norm());
        }
        let p = from_roots(&rc);
        let (s, t) = (random_scalar(rng, 1.0), random_scalar(rng, 1.0));
        group = group.max(phi(&phi(&p, s), t).max_abs_diff(&phi(&p, s + t)));
    }
    Ok(vec![
        outcome("poly", "roots round trip", n, round_trip, 1e-6),
        outcome("poly", "shift group law", n, group, 1e-10),
    ])
}

fn partitions_suite(max_weight: usize) -> Result<Vec<CheckOutcome>> {
    let mut failures = 0usize;
    let mut cases = 0usize;
    for w in 1..=max_weight {
        let all = Partition::all(w);
        for a in &all {
            if !merge_leq(a, a)? {
                failures += 1;
            }
            for b in &all {
                cases += 1;
                if a != b && merge_leq(a, b)? && merge_leq(b, a)? {
                    failures += 1;
                }
                for c in &all {
                    if merge_leq(a, b)? && merge_leq(b, c)? && !merge_leq(a, c)? {
                        failures += 1;
                    }
                }
            }
        }
        for tau in &all {
            for k in 0..=tau.len() {
                if gamma(&Partition::ones(k), tau) != crate::exact::binomial(tau.len(), k) {
                    failures += 1;
                }
            }
        }
    }
    Ok(vec![outcome("partitions", "merge order and gamma of ones", cases, failures as f64, 0.0)])
}

fn viete_suite(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let mut disc: f64 = 0.0;
    let mut jac: f64 = 0.0;
    for _ in 0..n {
        let d = rng.gen_range(2..=7);
        let us = separated_roots(rng, d, 0.1);
        let p = from_roots(&RootConfig::from_multiset(&us)?);
        let v = vandermonde_product(&us);
        let delta = discriminant(&p)?;
        disc = disc.max((delta - v * v).norm() / (v * v).norm().max(1.0));
        jac = jac.max(viete_jacobian_det(&us).relative_gap());
    }
    Ok(vec![
        outcome("viete", "discriminant equals squared root differences", n, disc, 1e-7),
        outcome("viete", "Jacobian LU equals signed product", n, jac, 1e-10),
    ])
}

fn strata_suite(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let mut flats_differ = 0usize;
    let mut flat_cases = 0usize;
    for d in 2..=8 {
        for k in 1..d {
            let u = r(rng.gen_range(-3.0..3.0));
            flat_cases += 1;
            if !flat_equal(&osculating_flat(u, d, d - k)?, &tangent_flat(u, d, k)?) {
                flats_differ += 1;
            }
        }
    }
    let mut recon: f64 = 0.0;
    let mut velocity: f64 = 0.0;
    for _ in 0..n {
        let d = rng.gen_range(2..=7);
        let us = separated_roots(rng, d, 0.1);
        let rc = RootConfig::from_multiset(&us)?;
        let direct = from_roots(&rc);
        recon = recon.max(intersect_osculating(&rc)?.max_abs_diff(&direct) / direct.norm_inf().max(1.0));

        let m = rng.gen_range(2..=3);
        let r_distinct = rng.gen_range(1..=3);
        let centers = separated_roots(rng, r_distinct, 0.3);
        let entries: Vec<(Scalar, usize)> =
            centers.iter().enumerate().map(|(i, &u)| (u, if i == 0 { m } else { 1 })).collect();
        let rc = RootConfig::new(entries)?;
        let qhat_roots: Vec<Scalar> = (0..rc.distinct_count()).map(|_| random_scalar(rng, 1.0)).collect();
        let q_dense = rc
            .reduced_product(1)
            .mul(&crate::poly::DensePoly::from_linear_factors(&qhat_roots));
        let q = MonicPoly::from_dense(&q_dense, crate::poly::Field::Complex)?;
        let tau = random_scalar(rng, 1.0) + r(2.0);
        let v = tangency_velocity_for_config(&q, &rc, tau)?;
        let back = reconstruct_from_velocity(&rc, tau, &v);
        velocity = velocity.max(back.sub(&q_dense).norm_inf() / q.norm_inf().max(1.0));
    }
    Ok(vec![
        outcome("strata", "osculating flat equals tangent flat", flat_cases, flats_differ as f64, 0.0),
        outcome("strata", "osculating intersection reconstructs", n, recon, 1e-8),
        outcome("strata", "tangency velocity reconstructs", n, velocity, 1e-9),
    ])
}

fn flow_suite(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let mut drift: f64 = 0.0;
    let mut mu_changes = 0usize;
    let mut det_off = 0usize;
    for _ in 0..n {
        let d = rng.gen_range(2..=7);
        let us = separated_roots(rng, d, 0.1);
        let p = from_roots(&RootConfig::from_multiset(&us)?);
        let rep = check_invariants(&p, random_scalar(rng, 1.0), DEFAULT_TOL)?;
        drift = drift.max(rep.discriminant_drift);
        if !rep.mu_preserved() {
            mu_changes += 1;
        }
        if rep.linear_part_det_exact != 1 {
            det_off += 1;
        }
    }
    Ok(vec![
        outcome("flow", "discriminant drift", n, drift, 1e-9),
        outcome("flow", "multiplicities preserved", n, mu_changes as f64, 0.0),
        outcome("flow", "linear part has determinant one", n, det_off as f64, 0.0),
    ])
}

fn grid_suite(samples: usize) -> Result<Vec<CheckOutcome>> {
    Figure::ALL
        .into_iter()
        .map(|f| {
            let rows = grid_rows(f, samples)?;
            let worst = rows.iter().map(|row| row.residual).fold(0.0, f64::max);
            Ok(outcome("grid", f.name(), rows.len(), worst, crate::grid::GRID_TOL))
        })
        .collect()
}

/// Runs one suite, or all of them for `"all"`.
pub fn run_suite(name: &str, seed: u64, samples: usize) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match name {
        "poly" => poly_suite(&mut rng, samples),
        "partitions" => partitions_suite(6),
        "viete" => viete_suite(&mut rng, samples),
        "strata" => strata_suite(&mut rng, samples),
        "flow" => flow_suite(&mut rng, samples),
        "grid" => grid_suite(samples.clamp(2, 201)),
        "all" => {
            let mut out = Vec::new();
            for suite in SUITES {
                out.extend(run_suite(suite, seed, samples)?);
            }
            Ok(out)
        }
        other => Err(Error::InvalidInput(format!(
            "unknown suite {other:?}; expected one of {SUITES:?} or \"all\""
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_on_a_small_run() {
        let results = run_suite("all", 7, 20).unwrap();
        for res in &results {
            assert!(res.passed, "{res:?}");
        }
        assert!(results.len() >= SUITES.len());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", 0, 1).is_err());
    }
}
