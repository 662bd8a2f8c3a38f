//! q-analogues: Gaussian binomials and multinomials.
//!
//! `[n]_q! / ([d_1]_q! ... [d_r]_q!)` counts partial flags of type
//! `(d_1, ..., d_r)` in `F_q^n`.

/// Gaussian binomial `[n, k]_q`; zero when `k > n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Gaussian multinomial for a composition of `parts.iter().sum()`.
pub fn gaussian_multinomial(parts: &[usize], q: u128) -> u128 {
    let mut remaining: usize = parts.iter().sum();
    let mut out = 1;
    for &part in parts {
        out *= gaussian_binomial(remaining, part, q);
        remaining -= part;
    }
    out
}
