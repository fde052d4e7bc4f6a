use crate::error::domain;
use crate::Result;

// Below this many factors the product form is more accurate than the
// difference of three log-gamma values.
const PRODUCT_FORM_LIMIT: u64 = 64;

/// Natural log of the binomial coefficient `C(n, k)`.
///
/// Small `min(k, n - k)` uses a sum of log ratios; otherwise the value comes
/// from `ln Γ(n+1) - ln Γ(k+1) - ln Γ(n-k+1)`.
pub fn log_binomial(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(domain!("log_binomial: k = {k} exceeds n = {n}"));
    }
    let k = k.min(n - k);
    if k == 0 {
        return Ok(0.0);
    }
    if k <= PRODUCT_FORM_LIMIT {
        let base = (n - k) as f64;
        let sum = (1..=k)
            .map(|i| libm::log((base + i as f64) / i as f64))
            .sum::<f64>();
        return Ok(sum);
    }
    Ok(ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k))
}

/// `ln n!`, exact summation for small `n` and log-gamma beyond.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        0.0
    } else if n <= 32 {
        (2..=n).map(|i| libm::log(i as f64)).sum()
    } else {
        libm::lgamma((n + 1) as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_binomial(n: u64, k: u64) -> u128 {
        let k = k.min(n - k);
        let mut c: u128 = 1;
        for i in 0..k {
            c = c * (n - i) as u128 / (i + 1) as u128;
        }
        c
    }

    #[test]
    fn examples() {
        assert!((log_binomial(3, 1).unwrap() - libm::log(3.0)).abs() < 1e-15);
        assert_eq!(log_binomial(5, 0).unwrap(), 0.0);
        // 7! / (3! 4!) = 35
        assert_eq!(exact_binomial(7, 3), 35);
        assert!((log_binomial(7, 3).unwrap() - libm::log(35.0)).abs() < 1e-14);
    }

    #[test]
    fn rejects_k_above_n() {
        assert!(matches!(log_binomial(3, 4), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn matches_integer_oracle_up_to_60() {
        for n in 0..=60u64 {
            for k in 0..=n {
                let exact = exact_binomial(n, k) as f64;
                let got = libm::exp(log_binomial(n, k).unwrap());
                assert!(
                    ((got - exact) / exact).abs() < 1e-9,
                    "C({n},{k}): {got} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn large_n_agrees_with_pascal_recurrence() {
        // ln C(n, k) = ln C(n-1, k-1) + ln(n / k)
        for &n in &[500u64, 2_000, 10_000] {
            for &k in &[1u64, 7, 63, 64, 65, 66, 300, n / 2] {
                let lhs = log_binomial(n, k).unwrap();
                let rhs = log_binomial(n - 1, k - 1).unwrap() + libm::log(n as f64 / k as f64);
                assert!(((lhs - rhs) / lhs).abs() < 1e-12, "n={n} k={k}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn ln_factorial_branches_join() {
        let a = ln_factorial(32) + libm::log(33.0);
        let b = ln_factorial(33);
        assert!((a - b).abs() < 1e-12);
    }
}
