//! Exact Narayana and Catalan numbers.

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `N(n, k) = C(n, k) C(n, k-1) / n`; zero outside `1 <= k <= n`.
pub fn narayana(n: u64, k: u64) -> u128 {
    if n == 0 || k == 0 || k > n {
        return 0;
    }
    binomial(n, k) * binomial(n, k - 1) / n as u128
}

/// `C(n) = C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> u128 {
    binomial(2 * n, n) / (n as u128 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(catalan(3), 5);
        assert_eq!(catalan(4), 14);
        assert_eq!(catalan(5), 42);
        assert_eq!(narayana(3, 2), 3);
        assert_eq!(narayana(4, 2), 6);
    }

    #[test]
    fn narayana_rows_sum_to_catalan() {
        for n in 1..=20 {
            let s: u128 = (1..=n).map(|k| narayana(n, k)).sum();
            assert_eq!(s, catalan(n), "n={n}");
        }
    }

    #[test]
    fn catalan_recurrence() {
        // C(n+1) = sum_{i=0}^{n} C(i) C(n-i)
        for n in 0..15u64 {
            let s: u128 = (0..=n).map(|i| catalan(i) * catalan(n - i)).sum();
            assert_eq!(catalan(n + 1), s);
        }
    }
}
