use num_complex::Complex64 as C;
use polystrata::flow::{k_transform_closed_form, k_transform_d3, linear_part, phi, reduce, FlowMap};
use polystrata::poly::MonicPoly;
use polystrata::strata::tangent_flat;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar(radius: f64) -> impl Strategy<Value = C> {
    (-radius..radius, -radius..radius).prop_map(|(re, im)| C::new(re, im))
}

fn monic(max_degree: usize) -> impl Strategy<Value = MonicPoly> {
    prop::collection::vec(scalar(2.0), 2..=max_degree)
        .prop_map(|coeffs| MonicPoly::complex(coeffs).unwrap())
}

proptest! {
    #[test]
    fn flow_carries_tangent_flats(u in scalar(1.5), t in scalar(1.0), d in 2usize..7, seed in any::<u64>()) {
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        for k in 1..=d {
            let source = tangent_flat(u, d, k).unwrap();
            let target = tangent_flat(u + t, d, k).unwrap();
            for point in source.sample_points(3, &mut g) {
                let moved = phi(&MonicPoly::complex(point).unwrap(), t);
                prop_assert!(target.residual(moved.coeffs()) <= 1e-8);
            }
        }
    }

    #[test]
    fn flow_is_affine_with_the_stated_linear_part(p in monic(7), t in scalar(1.0)) {
        let d = p.degree();
        let zero = MonicPoly::complex(vec![C::new(0.0, 0.0); d]).unwrap();
        let offset = phi(&zero, t);
        let l = linear_part(d, t);
        let moved = phi(&p, t);
        for k in 0..d {
            let mut acc = offset.coeffs()[k];
            for j in 0..d {
                acc += l[(k, j)] * p.coeffs()[j];
            }
            prop_assert!((acc - moved.coeffs()[k]).norm() <= 1e-9 * p.norm_inf().max(1.0));
        }
    }

    #[test]
    fn flow_maps_compose(p in monic(6), s in scalar(1.0), t in scalar(1.0)) {
        let f = FlowMap::new(s);
        let g = FlowMap::new(t);
        let composed = f.compose(&g).apply(&p);
        prop_assert!(composed.max_abs_diff(&g.apply(&f.apply(&p))) <= 1e-10 * p.norm_inf().max(1.0).powi(2));
        prop_assert!(f.inverse().apply(&f.apply(&p)).max_abs_diff(&p) <= 1e-10 * p.norm_inf().max(1.0).powi(2));
    }

    #[test]
    fn reduce_centers_the_roots(p in monic(7)) {
        let (reduced, t_star) = reduce(&p);
        prop_assert_eq!(reduced.coeffs()[0], C::new(0.0, 0.0));
        let d = p.degree() as f64;
        prop_assert!((t_star - p.coeffs()[0] / d).norm() <= 1e-15);
        prop_assert!(reduced.max_abs_diff(&phi(&p, t_star)) <= 1e-10 * p.norm_inf().max(1.0).powi(3));
    }

    #[test]
    fn cubic_transform_sends_double_roots_to_the_cusp(u in scalar(1.5), w in scalar(1.5)) {
        // (z - u)^2 (z - w)
        let b = -(2.0 * u + w);
        let c = u * u + 2.0 * u * w;
        let d = -u * u * w;
        let p = MonicPoly::complex(vec![b, c, d]).unwrap();
        let k = k_transform_d3(&p).unwrap();
        let [b2, c2, d2] = k_transform_closed_form(b, c, d);
        prop_assert!((k.constructive.coeffs()[0] - b2).norm() <= 1e-12);
        prop_assert!((k.constructive.coeffs()[1] - c2).norm() <= 1e-10);
        prop_assert!((k.constructive.coeffs()[2] - d2).norm() <= 1e-10);
        let cusp = 4.0 * c2.powu(3) + 27.0 * d2 * d2;
        prop_assert!(cusp.norm() <= 1e-9 * (c2.norm().powi(3) + d2.norm_sqr()).max(1.0));
    }

    #[test]
    fn cubic_transform_sends_triple_roots_to_the_axis(u in scalar(1.5)) {
        let p = MonicPoly::complex(vec![-3.0 * u, 3.0 * u * u, -u * u * u]).unwrap();
        let k = k_transform_d3(&p).unwrap();
        prop_assert!(k.constructive.coeffs()[1].norm() <= 1e-12);
        prop_assert!(k.constructive.coeffs()[2].norm() <= 1e-12);
    }
}

#[test]
fn literal_cubic_transform_differs_off_the_slice() {
    let p = MonicPoly::real(&[1.0, 0.5, -0.25]).unwrap();
    let k = k_transform_d3(&p).unwrap();
    assert!(k.mismatch > 0.1);
    let centered = MonicPoly::real(&[0.0, 0.5, -0.25]).unwrap();
    assert_eq!(k_transform_d3(&centered).unwrap().mismatch, 0.0);
    assert!(k_transform_d3(&MonicPoly::real(&[0.0, 1.0]).unwrap()).is_err());
}
