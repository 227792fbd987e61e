//! Integer helpers: binomials, factorials, falling factorials, compositions.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `n (n-1) ... (n-k+1)`; zero once the product reaches a zero factor.
pub fn falling_factorial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i))
}

pub fn inv_factorial<T: Scalar>(n: u64) -> T {
    T::one() / T::from_biguint(&factorial(n))
}

/// All vectors of `parts` integers, each `>= min_part`, summing to `total`.
pub fn compositions(total: u32, parts: usize, min_part: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fill_compositions(total, parts, min_part, &mut cur, &mut out);
    out
}

fn fill_compositions(rest: u32, parts: usize, min_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 0 {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let reserved = min_part * (parts as u32 - 1);
    if rest < reserved + min_part {
        return;
    }
    for x in min_part..=rest - reserved {
        cur.push(x);
        fill_compositions(rest - x, parts - 1, min_part, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(3, -1), BigUint::zero());
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(-1, -1), BigUint::zero());
        assert_eq!(binomial(40, 20), BigUint::from(137_846_528_820u64));
    }

    #[test]
    fn falling() {
        assert_eq!(falling_factorial(5, 0), BigUint::one());
        assert_eq!(falling_factorial(5, 3), BigUint::from(60u32));
        assert_eq!(falling_factorial(3, 4), BigUint::zero());
    }

    #[test]
    fn composition_counts() {
        // C(total-1, parts-1) compositions into positive parts
        assert_eq!(compositions(6, 3, 1).len(), 10);
        // C(total+parts-1, parts-1) weak compositions
        assert_eq!(compositions(4, 3, 0).len(), 15);
        assert_eq!(compositions(0, 0, 1), vec![Vec::<u32>::new()]);
        assert!(compositions(2, 3, 1).is_empty());
    }
}
