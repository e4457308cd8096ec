//! Exact combinatorics of integer partitions: the shape transforms used to
//! describe tangent spaces of strata, the divisor count `gamma`, the merge
//! order, degree formulas and counting of reduced resolutions.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial};

/// A non-increasing sequence of positive integers. Zero parts are never
/// stored; padding is reconstructed where a routine needs it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts non-increasing and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `1_r`: r parts equal to one.
    pub fn ones(r: usize) -> Self {
        Partition { parts: vec![1; r] }
    }

    /// `(k, 1, ..., 1)` of weight `d`.
    pub fn hook(k: usize, d: usize) -> Self {
        assert!(1 <= k && k <= d, "hook needs 1 <= k <= d");
        let mut parts = vec![k];
        parts.extend(std::iter::repeat_n(1, d - k));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, written `|mu|`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn max_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `#mu^{-1}(k)`.
    pub fn count_of(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    /// Distinct part values with their counts, largest value first.
    pub fn value_counts(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, n)) if *v == p => *n += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Parts padded with zeros up to `len`.
    pub fn padded(&self, len: usize) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.resize(len.max(v.len()), 0);
        v
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=cap.min(rest)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `3,2,1`. An empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad partition part '{t}'")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Partition::new)
    }
}

/// Every part lowered by one; parts reaching zero disappear.
pub fn down1(mu: &Partition) -> Partition {
    Partition::new(mu.parts.iter().map(|&p| p - 1).collect())
}

/// Parts of size at least two raised by one; parts equal to one disappear.
pub fn up1(mu: &Partition) -> Partition {
    Partition::new(
        mu.parts
            .iter()
            .filter(|&&p| p >= 2)
            .map(|&p| p + 1)
            .collect(),
    )
}

/// Multiset union of parts.
pub fn uplus(mu: &Partition, nu: &Partition) -> Partition {
    let mut parts = mu.parts.clone();
    parts.extend_from_slice(&nu.parts);
    Partition::new(parts)
}

/// Number of distinct functions on `{1..|tau|}` that rearrange the
/// zero-padded `kappa` and stay pointwise below `tau`; equivalently the
/// number of distinct shape-`kappa` monic divisors of a shape-`tau`
/// polynomial.
pub fn gamma(kappa: &Partition, tau: &Partition) -> u128 {
    if kappa.len() > tau.len() {
        return 0;
    }
    let mut counts: Vec<(usize, usize)> = kappa.value_counts();
    let zeros = tau.len() - kappa.len();
    if zeros > 0 {
        counts.push((0, zeros));
    }

    fn place(pos: usize, tau: &[usize], counts: &mut [(usize, usize)]) -> u128 {
        if pos == tau.len() {
            return 1;
        }
        let mut total = 0;
        for i in 0..counts.len() {
            let (value, left) = counts[i];
            if left == 0 || value > tau[pos] {
                continue;
            }
            counts[i].1 -= 1;
            total += place(pos + 1, tau, counts);
            counts[i].1 += 1;
        }
        total
    }
    place(0, tau.parts(), &mut counts)
}

/// One reduced resolution: for every parent part of the coarse partition
/// (by index), the children that survive the `-1` reduction, lowered by one
/// and sorted non-increasing.
pub type ReducedResolution = Vec<Vec<usize>>;

/// Every assignment of the parts of `fine` to the parts of `coarse` such
/// that the children of each parent sum to it. Parents are distinguished by
/// index; identical fine parts are not. Each assignment lists, per parent,
/// its children non-increasing.
pub fn resolutions(coarse: &Partition, fine: &Partition) -> Result<Vec<Vec<Vec<usize>>>> {
    if coarse.weight() != fine.weight() {
        return Err(Error::WeightMismatch {
            left: coarse.weight(),
            right: fine.weight(),
        });
    }
    let values: Vec<(usize, usize)> = fine.value_counts();
    let mut remaining: Vec<usize> = values.iter().map(|v| v.1).collect();
    let mut out = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();

    // children of one parent: choose counts per distinct value, summing to target
    fn choose(
        idx: usize,
        target: usize,
        values: &[(usize, usize)],
        remaining: &mut [usize],
        picked: &mut Vec<usize>,
        sink: &mut dyn FnMut(&mut [usize], &[usize]),
    ) {
        if target == 0 {
            sink(remaining, picked);
            return;
        }
        if idx == values.len() {
            return;
        }
        let value = values[idx].0;
        let max_take = remaining[idx].min(target / value);
        for take in (0..=max_take).rev() {
            remaining[idx] -= take;
            for _ in 0..take {
                picked.push(value);
            }
            choose(idx + 1, target - take * value, values, remaining, picked, sink);
            for _ in 0..take {
                picked.pop();
            }
            remaining[idx] += take;
        }
    }

    fn assign(
        parent: usize,
        coarse: &[usize],
        values: &[(usize, usize)],
        remaining: &mut [usize],
        current: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if parent == coarse.len() {
            if remaining.iter().all(|&r| r == 0) {
                out.push(current.clone());
            }
            return;
        }
        let mut picked = Vec::new();
        let mut sink = |rem: &mut [usize], children: &[usize]| {
            current.push(children.to_vec());
            assign(parent + 1, coarse, values, rem, current, out);
            current.pop();
        };
        choose(0, coarse[parent], values, remaining, &mut picked, &mut sink);
    }

    assign(0, coarse.parts(), &values, &mut remaining, &mut current, &mut out);
    Ok(out)
}

/// `nu` is reachable from `mu` by merging groups of parts.
pub fn merge_leq(nu: &Partition, mu: &Partition) -> Result<bool> {
    Ok(!resolutions(nu, mu)?.is_empty())
}

/// Distinct reduced resolutions of a `nu`-shaped divisor by `mu`. Two
/// resolutions are identified when every parent keeps the same multiset of
/// reduced children.
pub fn reduced_resolutions(nu: &Partition, mu: &Partition) -> Result<Vec<ReducedResolution>> {
    let all = resolutions(nu, mu)?;
    if all.is_empty() {
        return Err(Error::NotReachable {
            target: nu.parts().to_vec(),
            source_parts: mu.parts().to_vec(),
        });
    }
    let classes: BTreeSet<ReducedResolution> = all
        .into_iter()
        .map(|assignment| {
            assignment
                .into_iter()
                .map(|children| {
                    children
                        .into_iter()
                        .filter(|&c| c >= 2)
                        .map(|c| c - 1)
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(classes.into_iter().collect())
}

/// Cardinality of the reduced resolution set.
pub fn res_down1_count(nu: &Partition, mu: &Partition) -> Result<u128> {
    reduced_resolutions(nu, mu).map(|v| v.len() as u128)
}

/// `prod_l (#mu^{-1}(l))!`.
pub fn aut_order(mu: &Partition) -> u128 {
    mu.value_counts()
        .iter()
        .map(|&(_, n)| factorial(n))
        .product()
}

/// `|mu|! * prod mu_i / |aut(mu)|`.
pub fn deg_dmu(mu: &Partition) -> u128 {
    let prod: u128 = mu.parts.iter().map(|&p| p as u128).product();
    factorial(mu.len()) * prod / aut_order(mu)
}

/// Dimension of the dual variety and of the Gauss image:
/// `(d - 1 - #mu^{-1}(1), |mu| - #mu^{-1}(1))`.
pub fn dual_dims(mu: &Partition, d: usize) -> Result<(i64, i64)> {
    if mu.weight() != d {
        return Err(Error::WeightMismatch {
            left: mu.weight(),
            right: d,
        });
    }
    let ones = mu.count_of(1) as i64;
    Ok((d as i64 - 1 - ones, mu.len() as i64 - ones))
}

/// Upper bound on the degree of the dual variety:
/// `binom(|mu| + #mu^{-1}(2), #mu^{-1}(2)) * deg D_{(mu down 1) uplus 1_{|mu|}}`.
pub fn dual_degree_bound(mu: &Partition) -> u128 {
    let twos = mu.count_of(2);
    let swept = uplus(&down1(mu), &Partition::ones(mu.len()));
    binomial(mu.len() + twos, twos) * deg_dmu(&swept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn down1_fixtures() {
        assert_eq!(down1(&p(&[3, 2, 1])), p(&[2, 1]));
        assert_eq!(down1(&p(&[1, 1, 1])), Partition::empty());
        assert_eq!(down1(&p(&[5])), p(&[4]));
    }

    #[test]
    fn up1_fixtures() {
        assert_eq!(up1(&p(&[3, 2, 1, 1])), p(&[4, 3]));
        assert_eq!(up1(&p(&[1, 1])), Partition::empty());
        assert_eq!(up1(&p(&[2])), p(&[3]));
    }

    #[test]
    fn uplus_fixtures() {
        assert_eq!(uplus(&p(&[2, 1]), &p(&[1, 1])), p(&[2, 1, 1, 1]));
        assert_eq!(uplus(&p(&[3, 1]), &Partition::empty()), p(&[3, 1]));
        let mu = p(&[3, 2, 1, 1]);
        assert_eq!(
            uplus(&down1(&mu), &Partition::ones(mu.len())),
            p(&[2, 1, 1, 1, 1, 1])
        );
    }

    #[test]
    fn gamma_fixtures() {
        assert_eq!(gamma(&p(&[2, 1]), &p(&[2, 2, 1])), 4);
        assert_eq!(gamma(&p(&[2, 2, 1]), &p(&[2, 2, 1])), 1);
        assert_eq!(gamma(&p(&[3]), &p(&[2, 2])), 0);
        assert_eq!(gamma(&Partition::empty(), &p(&[2, 2])), 1);
    }

    #[test]
    fn merge_leq_fixtures() {
        assert!(merge_leq(&p(&[2, 1, 1]), &p(&[1, 1, 1, 1])).unwrap());
        assert!(merge_leq(&p(&[3, 1]), &p(&[3, 1])).unwrap());
        assert!(!merge_leq(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert_eq!(
            merge_leq(&p(&[2, 2]), &p(&[3])),
            Err(Error::WeightMismatch { left: 4, right: 3 })
        );
    }

    #[test]
    fn aut_and_degree_fixtures() {
        assert_eq!(aut_order(&p(&[2, 2])), 2);
        assert_eq!(aut_order(&p(&[3, 2, 1])), 1);
        assert_eq!(aut_order(&p(&[1, 1, 1, 1])), 24);
        assert_eq!(deg_dmu(&p(&[2, 2])), 4);
        assert_eq!(deg_dmu(&Partition::ones(6)), 1);
        // single part: the rational normal curve of degree d
        assert_eq!(deg_dmu(&p(&[5])), 5);
        for d in 2..=9 {
            for k in 2..=d {
                assert_eq!(deg_dmu(&Partition::hook(k, d)), (k * (d - k + 1)) as u128);
            }
        }
    }

    #[test]
    fn dual_dims_fixtures() {
        for d in 2..=8 {
            assert_eq!(dual_dims(&Partition::hook(2, d), d).unwrap().0, 1);
            assert_eq!(dual_dims(&p(&[d]), d).unwrap(), (d as i64 - 1, 1));
        }
        assert_eq!(dual_dims(&p(&[2, 1, 1]), 4).unwrap(), (1, 1));
        assert!(dual_dims(&p(&[2, 1]), 4).is_err());
    }

    #[test]
    fn dual_degree_bound_fixtures() {
        for d in 3..=9 {
            for k in 3..=d {
                let mu = Partition::hook(k, d);
                assert_eq!(dual_degree_bound(&mu), ((k - 1) * (d - k + 2)) as u128);
                assert_eq!(
                    dual_degree_bound(&mu),
                    deg_dmu(&uplus(&down1(&mu), &Partition::ones(mu.len())))
                );
            }
        }
        // binom(4, 2) * deg((1,1,1,1)) = 6 * 1
        assert_eq!(dual_degree_bound(&p(&[2, 2])), 6);
    }

    #[test]
    fn res_down1_fixtures() {
        assert_eq!(res_down1_count(&p(&[3, 3, 1]), &p(&[3, 2, 1, 1])).unwrap(), 2);
        assert_eq!(res_down1_count(&p(&[3, 2, 1]), &p(&[2, 2, 1, 1])).unwrap(), 1);
        assert_eq!(res_down1_count(&p(&[3, 2, 1]), &p(&[3, 2, 1])).unwrap(), 1);
        assert!(matches!(
            res_down1_count(&p(&[2, 2]), &p(&[3, 1])),
            Err(Error::NotReachable { .. })
        ));
        let classes = reduced_resolutions(&p(&[3, 3, 1]), &p(&[3, 2, 1, 1])).unwrap();
        assert!(classes.contains(&vec![vec![2], vec![1], vec![]]));
        assert!(classes.contains(&vec![vec![1], vec![2], vec![]]));
    }

    #[test]
    fn parse_and_display() {
        let mu: Partition = "1,3,2".parse().unwrap();
        assert_eq!(mu, p(&[3, 2, 1]));
        assert_eq!(mu.to_string(), "(3,2,1)");
        assert!("2,x".parse::<Partition>().is_err());
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }
}
