use itertools::Itertools;
use polystrata::partitions::{
    aut_order, deg_dmu, down1, gamma, merge_leq, res_down1_count, up1, uplus, Partition,
};
use proptest::prelude::*;

/// Brute-force merge test: place every part of `fine` into one of the bins
/// `coarse` so that all bins fill exactly.
fn mergeable(coarse: &[usize], fine: &[usize]) -> bool {
    fn place(i: usize, fine: &[usize], room: &mut [usize]) -> bool {
        if i == fine.len() {
            return room.iter().all(|&r| r == 0);
        }
        for b in 0..room.len() {
            if room[b] >= fine[i] {
                room[b] -= fine[i];
                let ok = place(i + 1, fine, room);
                room[b] += fine[i];
                if ok {
                    return true;
                }
            }
        }
        false
    }
    coarse.iter().sum::<usize>() == fine.iter().sum::<usize>() && place(0, fine, &mut coarse.to_vec())
}

/// Injective placements of the parts of `kappa` onto roots of multiplicity
/// `tau`, divided by the permutations of equal parts of `kappa`.
fn gamma_by_permutations(kappa: &Partition, tau: &Partition) -> u128 {
    if kappa.len() > tau.len() {
        return 0;
    }
    let placements = (0..tau.len())
        .permutations(kappa.len())
        .filter(|slots| {
            kappa
                .parts()
                .iter()
                .zip(slots)
                .all(|(&k, &s)| k <= tau.parts()[s])
        })
        .count() as u128;
    placements / aut_order(kappa)
}

#[test]
fn merge_order_matches_brute_force_up_to_weight_six() {
    for w in 1..=6 {
        let all = Partition::all(w);
        for nu in &all {
            for mu in &all {
                assert_eq!(
                    merge_leq(nu, mu).unwrap(),
                    mergeable(nu.parts(), mu.parts()),
                    "nu {nu} mu {mu}"
                );
            }
        }
    }
}

#[test]
fn merge_order_is_a_partial_order() {
    for w in 1..=6 {
        let all = Partition::all(w);
        for a in &all {
            assert!(merge_leq(a, a).unwrap());
            assert!(merge_leq(&Partition::new(vec![w]), a).unwrap());
            assert!(merge_leq(a, &Partition::ones(w)).unwrap());
            for b in &all {
                if a != b {
                    assert!(!(merge_leq(a, b).unwrap() && merge_leq(b, a).unwrap()));
                }
                for c in &all {
                    if merge_leq(a, b).unwrap() && merge_leq(b, c).unwrap() {
                        assert!(merge_leq(a, c).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn merge_order_rejects_weight_mismatch() {
    assert!(merge_leq(&Partition::new(vec![2]), &Partition::new(vec![1, 1, 1])).is_err());
}

#[test]
fn gamma_matches_permutation_oracle() {
    for wt in 1..=7 {
        for tau in Partition::all(wt) {
            for wk in 0..=wt {
                for kappa in Partition::all(wk) {
                    assert_eq!(gamma(&kappa, &tau), gamma_by_permutations(&kappa, &tau), "kappa {kappa} tau {tau}");
                }
            }
        }
    }
}

#[test]
fn gamma_of_ones_is_binomial() {
    for wt in 1..=8 {
        for tau in Partition::all(wt) {
            for k in 0..=tau.len() {
                let want = (0..k).fold(1u128, |acc, i| acc * (tau.len() - i) as u128 / (i as u128 + 1));
                assert_eq!(gamma(&Partition::ones(k), &tau), want);
            }
        }
    }
}

#[test]
fn resolution_counts() {
    let count = |nu: &str, mu: &str| res_down1_count(&nu.parse().unwrap(), &mu.parse().unwrap());
    assert_eq!(count("3,3,1", "3,2,1,1").unwrap(), 2);
    assert_eq!(count("3,2,1", "2,2,1,1").unwrap(), 1);
    for w in 1..=6 {
        for mu in Partition::all(w) {
            assert_eq!(res_down1_count(&mu, &mu).unwrap(), 1, "{mu}");
        }
    }
    assert!(count("2,2", "3,1").is_err());
}

#[test]
fn degree_of_hooks_and_small_shapes() {
    for d in 2..=9 {
        for k in 2..=d {
            assert_eq!(deg_dmu(&Partition::hook(k, d)), (k * (d - k + 1)) as u128);
        }
        assert_eq!(deg_dmu(&Partition::ones(d)), 1);
        assert_eq!(deg_dmu(&Partition::new(vec![d])), d as u128);
    }
    assert_eq!(deg_dmu(&Partition::new(vec![2, 2])), 4);
}

fn partition(max_weight: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=5, 0..=max_weight).prop_map(Partition::new)
}

proptest! {
    #[test]
    fn weight_bookkeeping(mu in partition(8), nu in partition(8)) {
        prop_assert_eq!(down1(&mu).weight(), mu.weight() - mu.len());
        prop_assert_eq!(uplus(&mu, &nu).weight(), mu.weight() + nu.weight());
        prop_assert_eq!(uplus(&mu, &Partition::empty()), mu.clone());
    }

    #[test]
    fn up1_inverts_down1_on_large_parts(mu in partition(8)) {
        // parts equal to 2 fall to 1 and are dropped by up1
        let kept = Partition::new(mu.parts().iter().copied().filter(|&p| p >= 3).collect());
        prop_assert_eq!(up1(&down1(&mu)), kept);
        let grown = Partition::new(mu.parts().iter().map(|p| p + 1).collect());
        prop_assert_eq!(down1(&grown), mu.clone());
    }

    #[test]
    fn gamma_positive_iff_placement_exists(kappa in partition(5), tau in partition(6)) {
        let exists = gamma_by_permutations(&kappa, &tau) > 0;
        prop_assert_eq!(gamma(&kappa, &tau) > 0, exists);
    }

    #[test]
    fn parse_display_round_trip(mu in partition(8)) {
        prop_assume!(!mu.is_empty());
        let back: Partition = mu.to_string().parse().unwrap();
        prop_assert_eq!(back, mu);
    }
}
