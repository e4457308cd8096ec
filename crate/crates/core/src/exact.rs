//! Exact integer helpers shared by the combinatorial routines.

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// n (n-1) ... (n-j+1); zero when j > n.
pub fn falling(n: usize, j: usize) -> u128 {
    if j > n {
        return 0;
    }
    ((n - j + 1)..=n).map(|v| v as u128).product()
}
