use num_complex::Complex64 as C;
use polystrata::poly::{from_roots, roots, DensePoly, MonicPoly, RootConfig, DEFAULT_TOL};
use proptest::prelude::*;

fn scalar(radius: f64) -> impl Strategy<Value = C> {
    (-radius..radius, -radius..radius).prop_map(|(re, im)| C::new(re, im))
}

fn monic(max_degree: usize) -> impl Strategy<Value = MonicPoly> {
    prop::collection::vec(scalar(2.0), 1..=max_degree)
        .prop_map(|coeffs| MonicPoly::complex(coeffs).unwrap())
}

fn dense(max_len: usize) -> impl Strategy<Value = DensePoly> {
    prop::collection::vec(scalar(2.0), 1..=max_len).prop_map(DensePoly::new)
}

fn max_diff(a: &[C], b: &[C]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Term-by-term sum `sum c_k z^(n-k)` with explicit powers.
fn naive_eval(p: &DensePoly, z: C) -> C {
    let n = p.coeffs().len();
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(k, &c)| c * z.powu((n - 1 - k) as u32))
        .sum()
}

proptest! {
    #[test]
    fn shift_group_law(p in monic(8), s in scalar(1.0), t in scalar(1.0)) {
        let lhs = p.shift(s).shift(t);
        let rhs = p.shift(s + t);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10 * p.norm_inf().max(1.0).powi(2));
    }

    #[test]
    fn shift_moves_every_root(rs in prop::collection::vec(scalar(1.5), 1..6), t in scalar(1.0)) {
        let p = MonicPoly::from_dense(&DensePoly::from_linear_factors(&rs), polystrata::poly::Field::Complex).unwrap();
        let shifted = p.shift(t);
        for u in &rs {
            prop_assert!(shifted.eval(u + t).norm() <= 1e-9);
        }
    }

    #[test]
    fn derivative_commutes_with_shift(p in monic(8), t in scalar(1.0)) {
        let a = p.shift(t).to_dense().derivative(1);
        let b = p.to_dense().derivative(1).shift(t);
        prop_assert!(max_diff(a.coeffs(), b.coeffs()) <= 1e-10 * p.norm_inf().max(1.0).powi(2));
    }

    #[test]
    fn divrem_reconstructs(q in dense(9), d in dense(5)) {
        prop_assume!(d.leading().norm() > 0.1);
        let (quot, rem) = q.divrem(&d).unwrap();
        let back = d.mul(&quot).add(&rem);
        let gap = back.sub(&q).norm_inf();
        prop_assert!(gap <= 1e-10 * q.norm_inf().max(1.0) * (1.0 + quot.norm_inf()));
        if let (Some(dr), Some(dd)) = (rem.degree(), d.degree()) {
            prop_assert!(dr < dd);
        }
    }

    #[test]
    fn eval_matches_naive_sum(p in dense(8), z in scalar(1.5)) {
        let horner = p.eval(z);
        let naive = naive_eval(&p, z);
        prop_assert!((horner - naive).norm() <= 1e-12 * naive.norm().max(1.0) * 100.0);
    }

    #[test]
    fn derivative_matches_central_difference(p in dense(8), z in scalar(1.0)) {
        let h = 1e-5;
        let fd = (p.eval(z + h) - p.eval(z - h)) / (2.0 * h);
        let exact = p.derivative(1).eval(z);
        prop_assert!((fd - exact).norm() <= 1e-6 * exact.norm().max(1.0) * 10.0);
    }

    #[test]
    fn roots_round_trip(rs in prop::collection::vec(scalar(1.5), 1..8)) {
        let min_gap = rs
            .iter()
            .enumerate()
            .flat_map(|(i, a)| rs[i + 1..].iter().map(move |b| (a - b).norm()))
            .fold(f64::INFINITY, f64::min);
        prop_assume!(min_gap >= 0.1);
        let rc = RootConfig::from_multiset(&rs).unwrap();
        let found = roots(&from_roots(&rc), DEFAULT_TOL).unwrap();
        prop_assert_eq!(found.multiplicities(), rc.multiplicities());
        for (a, b) in rc.entries().iter().zip(found.entries()) {
            prop_assert!((a.0 - b.0).norm() <= 1e-6);
        }
    }
}

#[test]
fn repeated_roots_cluster_with_exact_multiplicities() {
    let rc = RootConfig::new(vec![
        (C::new(-1.0, 0.0), 3),
        (C::new(0.5, 0.5), 2),
        (C::new(2.0, 0.0), 1),
    ])
    .unwrap();
    let found = roots(&from_roots(&rc), DEFAULT_TOL).unwrap();
    assert_eq!(found.multiplicities(), rc.multiplicities());
    for (a, b) in rc.entries().iter().zip(found.entries()) {
        assert!((a.0 - b.0).norm() <= 1e-6, "{a:?} vs {b:?}");
    }
}
