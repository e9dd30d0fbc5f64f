//! Exact rational scalars and small arithmetic helpers.
//!
//! Every certified quantity in this crate is a [`Rat`] or an interval of
//! them; floating point never enters the certified path.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (guaranteed by `num_rational`).
pub type Rat = BigRational;

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(big(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(big(n), big(d))
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient C(n, k) for integer n (0 when n < k, per the
/// combinatorial convention with n >= 0; negative n is a caller error
/// that we surface as zero only for k > 0 guards upstream).
pub fn binom_big(n: &BigInt, k: u64) -> BigInt {
    if n.is_negative() {
        // falling factorial definition still applies
        let mut num = BigInt::one();
        let mut x = n.clone();
        for _ in 0..k {
            num *= &x;
            x -= 1;
        }
        return num / factorial(k);
    }
    if *n < BigInt::from(k) {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut x = n.clone();
    for _ in 0..k {
        num *= &x;
        x -= 1;
    }
    num / factorial(k)
}

pub fn binom_u64(n: u64, k: u64) -> BigInt {
    binom_big(&BigInt::from(n), k)
}

/// Generalized binomial C(x, k) = x(x-1)...(x-k+1)/k! for rational x.
pub fn binom_rat(x: &Rat, k: u64) -> Rat {
    let mut num = Rat::one();
    let mut t = x.clone();
    for _ in 0..k {
        num *= &t;
        t -= Rat::one();
    }
    num / Rat::from_integer(factorial(k))
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Smallest integer multiple of `gran` that is >= x.
pub fn ceil_to_granularity(x: &Rat, gran: &Rat) -> Rat {
    let q = (x / gran).ceil();
    q * gran
}

/// Parse a plain decimal literal like "-3.34634" or "14159" exactly.
pub fn parse_decimal(s: &str) -> Rat {
    let s = s.trim();
    let (sign, body) = match s.strip_prefix('-') {
        Some(b) => (-1i64, b),
        None => (1i64, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    let digits: String = format!("{}{}", int_part, frac_part);
    let num: BigInt = digits.parse().expect("decimal literal");
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    Rat::new(BigInt::from(sign) * num, den)
}

/// Decimal rendering for display only; truncates toward zero.
pub fn to_decimal(x: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (x * Rat::from_integer(scale.clone())).trunc().to_integer();
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let (int, frac) = (abs.clone() / &scale, abs % &scale);
    let frac_str = format!("{:0>width$}", frac.to_string(), width = digits as usize);
    let body = if digits == 0 {
        int.to_string()
    } else {
        format!("{}.{}", int, frac_str)
    };
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom_u64(23, 2), big(253));
        assert_eq!(binom_u64(7, 4), big(35));
        assert_eq!(binom_u64(23, 4), big(8855));
        assert_eq!(binom_u64(3, 7), big(0));
        assert_eq!(binom_rat(&rat(1, 2), 2), rat(-1, 8));
    }

    #[test]
    fn decimal_roundtrip() {
        let x = parse_decimal("3.34634");
        assert_eq!(x, rat(334634, 100000));
        assert_eq!(to_decimal(&x, 5), "3.34634");
        assert_eq!(parse_decimal("-0.25"), rat(-1, 4));
        assert_eq!(parse_decimal("14159"), rat_int(14159));
    }

    #[test]
    fn granularity_ceiling() {
        let g = rat(1, 100);
        assert_eq!(ceil_to_granularity(&rat(193409, 10000), &g), rat(1935, 100));
        assert_eq!(ceil_to_granularity(&rat_int(5), &g), rat_int(5));
    }
}
