use crate::error::domain;
use crate::Result;

/// Sign of a [`SignedLogValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    /// Strictly negative.
    Negative,
    /// Exactly zero.
    Zero,
    /// Strictly positive.
    Positive,
}

impl Sign {
    /// `(-1)^k` as a sign.
    pub fn parity(k: usize) -> Self {
        if k % 2 == 0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn as_f64(self) -> f64 {
        match self {
            Sign::Negative => -1.0,
            Sign::Zero => 0.0,
            Sign::Positive => 1.0,
        }
    }
}

impl core::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// A real number stored as a sign and the natural log of its magnitude.
///
/// Zero has its own sign variant; `log_mag` is meaningless for it and is
/// kept at `0.0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogValue {
    sign: Sign,
    log_mag: f64,
}

impl SignedLogValue {
    /// Exact zero.
    pub const ZERO: SignedLogValue = SignedLogValue { sign: Sign::Zero, log_mag: 0.0 };

    /// Builds a value from a sign and `ln |v|`.
    pub fn new(sign: Sign, log_mag: f64) -> Self {
        match sign {
            Sign::Zero => Self::ZERO,
            _ => SignedLogValue { sign, log_mag },
        }
    }

    /// Positive value with the given log-magnitude.
    pub fn positive(log_mag: f64) -> Self {
        Self::new(Sign::Positive, log_mag)
    }

    /// Converts from a plain float.
    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else if v > 0.0 {
            Self::positive(libm::log(v))
        } else {
            Self::new(Sign::Negative, libm::log(-v))
        }
    }

    /// Converts back to a plain float (may overflow or underflow).
    pub fn to_f64(self) -> f64 {
        self.sign.as_f64() * libm::exp(self.log_mag)
    }

    /// The sign.
    pub fn sign(self) -> Sign {
        self.sign
    }

    /// `ln |v|`; `-inf` for zero.
    pub fn log_mag(self) -> f64 {
        match self.sign {
            Sign::Zero => f64::NEG_INFINITY,
            _ => self.log_mag,
        }
    }

    /// `true` for exact zero.
    pub fn is_zero(self) -> bool {
        self.sign == Sign::Zero
    }

    /// `self^k` for a nonnegative integer power.
    pub fn powi(self, k: u32) -> Self {
        match (self.sign, k) {
            (_, 0) => Self::positive(0.0),
            (Sign::Zero, _) => Self::ZERO,
            (Sign::Negative, k) if k % 2 == 1 => Self::new(Sign::Negative, self.log_mag * k as f64),
            _ => Self::positive(self.log_mag * k as f64),
        }
    }
}

impl core::ops::Mul for SignedLogValue {
    type Output = SignedLogValue;

    fn mul(self, rhs: SignedLogValue) -> SignedLogValue {
        SignedLogValue::new(self.sign * rhs.sign, self.log_mag + rhs.log_mag)
    }
}

/// Sum of signed log-domain terms.
///
/// The largest magnitude is factored out before accumulating, so the sum
/// neither overflows nor underflows. An empty input yields exact zero.
pub fn signed_logsum<I>(terms: I) -> Result<SignedLogValue>
where
    I: IntoIterator<Item = SignedLogValue>,
    I::IntoIter: Clone,
{
    signed_logsum_with_gross(terms).map(|(sum, _)| sum)
}

/// Like [`signed_logsum`], also returning `ln Σ |term|`, the scale against
/// which cancellation error in the result is measured.
pub(crate) fn signed_logsum_with_gross<I>(terms: I) -> Result<(SignedLogValue, f64)>
where
    I: IntoIterator<Item = SignedLogValue>,
    I::IntoIter: Clone,
{
    let iter = terms.into_iter();
    let mut max = f64::NEG_INFINITY;
    for t in iter.clone() {
        if t.is_zero() {
            continue;
        }
        if t.log_mag.is_nan() {
            return Err(domain!("signed_logsum: NaN log-magnitude"));
        }
        if t.log_mag > max {
            max = t.log_mag;
        }
    }
    if max == f64::NEG_INFINITY {
        return Ok((SignedLogValue::ZERO, f64::NEG_INFINITY));
    }
    if max == f64::INFINITY {
        return Err(domain!("signed_logsum: infinite log-magnitude"));
    }
    // Positive and negative parts are accumulated separately so that the
    // result does not depend on the order of the terms beyond rounding.
    let (mut pos, mut neg) = (0.0f64, 0.0f64);
    for t in iter {
        let scaled = libm::exp(t.log_mag - max);
        match t.sign {
            Sign::Positive => pos += scaled,
            Sign::Negative => neg += scaled,
            Sign::Zero => {}
        }
    }
    let diff = pos - neg;
    let sum = if diff == 0.0 {
        SignedLogValue::ZERO
    } else if diff > 0.0 {
        SignedLogValue::positive(libm::log(diff) + max)
    } else {
        SignedLogValue::new(Sign::Negative, libm::log(-diff) + max)
    };
    Ok((sum, libm::log(pos + neg) + max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn ln(x: f64) -> f64 {
        libm::log(x)
    }

    #[test]
    fn examples() {
        let s = signed_logsum([
            SignedLogValue::positive(ln(3.0)),
            SignedLogValue::new(Sign::Negative, ln(1.0)),
        ])
        .unwrap();
        assert_eq!(s.sign(), Sign::Positive);
        assert!((s.log_mag() - ln(2.0)).abs() < 1e-15);

        let s = signed_logsum([
            SignedLogValue::positive(ln(5.0)),
            SignedLogValue::new(Sign::Negative, ln(5.0)),
        ])
        .unwrap();
        assert!(s.is_zero());

        let s = signed_logsum([
            SignedLogValue::positive(ln(2.0)),
            SignedLogValue::positive(ln(2.0)),
            SignedLogValue::new(Sign::Negative, ln(1.0)),
        ])
        .unwrap();
        assert_eq!(s.sign(), Sign::Positive);
        assert!((s.log_mag() - ln(3.0)).abs() < 1e-15);
    }

    #[test]
    fn empty_is_zero() {
        let s = signed_logsum(core::iter::empty::<SignedLogValue>()).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.to_f64(), 0.0);
    }

    #[test]
    fn nan_is_rejected() {
        let r = signed_logsum([SignedLogValue::positive(f64::NAN)]);
        assert!(matches!(r, Err(crate::Error::Domain(_))));
    }

    #[test]
    fn handles_magnitudes_beyond_f64() {
        let s = signed_logsum([
            SignedLogValue::positive(2000.0),
            SignedLogValue::positive(2000.0),
        ])
        .unwrap();
        assert!((s.log_mag() - (2000.0 + ln(2.0))).abs() < 1e-12);
    }

    #[test]
    fn algebra() {
        let a = SignedLogValue::from_f64(-3.0);
        let b = SignedLogValue::from_f64(2.0);
        assert!(((a * b).to_f64() + 6.0).abs() < 1e-14);
        assert!((a.powi(3).to_f64() + 27.0).abs() < 1e-12);
        assert!((a.powi(2).to_f64() - 9.0).abs() < 1e-13);
        assert!((SignedLogValue::ZERO * b).is_zero());
    }

    proptest! {
        #[test]
        fn round_trip(v in -1e300f64..1e300) {
            let s = SignedLogValue::from_f64(v);
            let back = s.to_f64();
            if v == 0.0 {
                prop_assert!(s.is_zero());
            } else {
                prop_assert!(((back - v) / v).abs() < 1e-12);
                let again = SignedLogValue::from_f64(back);
                prop_assert_eq!(again.sign(), s.sign());
                prop_assert!((again.log_mag() - s.log_mag()).abs() <= 1e-12 * s.log_mag().abs().max(1.0));
            }
        }

        #[test]
        fn permutation_invariant(
            vals in proptest::collection::vec((any::<bool>(), -50.0f64..50.0), 1..40),
            seed in any::<u64>(),
        ) {
            let terms: Vec<SignedLogValue> = vals
                .iter()
                .map(|&(neg, l)| SignedLogValue::new(if neg { Sign::Negative } else { Sign::Positive }, l))
                .collect();
            let mut shuffled = terms.clone();
            // Fisher-Yates with a fixed xorshift stream
            let mut st = seed | 1;
            for i in (1..shuffled.len()).rev() {
                st ^= st << 13; st ^= st >> 7; st ^= st << 17;
                shuffled.swap(i, (st % (i as u64 + 1)) as usize);
            }
            let a = signed_logsum(terms.iter().copied()).unwrap();
            let b = signed_logsum(shuffled.iter().copied()).unwrap();
            // Only compare when the sum is not dominated by cancellation.
            let scale = terms.iter().map(|t| t.log_mag()).fold(f64::NEG_INFINITY, f64::max);
            if !a.is_zero() && a.log_mag() > scale - 2.0 {
                prop_assert_eq!(a.sign(), b.sign());
                prop_assert!((a.log_mag() - b.log_mag()).abs() < 1e-12);
            }
        }
    }
}
