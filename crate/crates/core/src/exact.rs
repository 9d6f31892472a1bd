//! Exact rational evaluation, used to re-check float results without any
//! tolerance argument.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::sparse::SparseFunction;

/// Exact rational value of an `f64` (every finite double is a dyadic rational).
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite input")
}

/// `Σ |v|^p` over the given values, exactly.
pub fn power_sum(values: &[BigRational], p: u32) -> BigRational {
    values
        .iter()
        .map(|v| num_traits::pow(v.abs(), p as usize))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Natural log of a positive big integer, accurate to a few ulps.
fn ln_bigint(n: &BigInt) -> f64 {
    debug_assert_eq!(n.sign(), Sign::Plus);
    let bits = n.bits();
    let shift = bits.saturating_sub(60);
    let top = (n >> shift).to_f64().expect("60-bit integer fits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln ‖f‖_p` for integer `p`, from the exact power sum; `-inf` for `f = 0`.
///
/// Working in logs keeps the comparison meaningful when `‖f‖_p` itself is
/// far outside the range of `f64`.
pub fn ln_lp_norm(values: &[BigRational], p: u32) -> f64 {
    let s = power_sum(values, p);
    if s.is_zero() {
        return f64::NEG_INFINITY;
    }
    (ln_bigint(s.numer()) - ln_bigint(s.denom())) / f64::from(p)
}

/// Exact values of a float sparse function.
pub fn exact_values<K: Ord + Clone>(f: &SparseFunction<K>) -> Vec<BigRational> {
    f.values().map(rational_from_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn three_four_five() {
        let v = vec![rational_from_f64(3.0), rational_from_f64(-4.0)];
        assert!((ln_lp_norm(&v, 2) - 5f64.ln()).abs() < 1e-15);
        assert!((ln_lp_norm(&v, 1) - 7f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn tiny_values_at_large_p() {
        let milli = Ratio::new(BigInt::from(1), BigInt::from(1000));
        let v = vec![milli.clone(), milli];
        let expected = (1e-3f64).ln() + 2f64.ln() / 200.0;
        assert!((ln_lp_norm(&v, 200) - expected).abs() < 1e-13);
    }

    #[test]
    fn zero_function() {
        assert_eq!(ln_lp_norm(&[], 3), f64::NEG_INFINITY);
    }
}
