//! Closed intervals with rational endpoints.
//!
//! All operations produce enclosures: the result interval contains the
//! exact image of the operation over the inputs.

use crate::error::Error;
use crate::rat::{rat_int, Rat};
use num::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    lo: Rat,
    hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_interval(&self, other: &RatInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Largest absolute value over the interval.
    pub fn mag(&self) -> Rat {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value over the interval (0 if it straddles 0).
    pub fn mig(&self) -> Rat {
        if self.lo.is_negative() && self.hi.is_positive() {
            Rat::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    /// Enclosure of the set {1/x : x in self}; error if 0 is inside.
    pub fn recip(&self) -> Result<RatInterval, Error> {
        if self.contains(&Rat::zero()) {
            return Err(Error::DivisionByIntervalContainingZero);
        }
        Ok(RatInterval::new(Rat::one() / &self.hi, Rat::one() / &self.lo))
    }

    pub fn div(&self, other: &RatInterval) -> Result<RatInterval, Error> {
        Ok(self.clone() * other.recip()?)
    }

    pub fn pow(&self, n: u32) -> RatInterval {
        let mut acc = RatInterval::point(Rat::one());
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// Enclosure of sqrt over a nonnegative interval, with endpoints
    /// refined by dyadic bisection to within `width`.
    pub fn sqrt(&self, width: &Rat) -> Result<RatInterval, Error> {
        if self.lo.is_negative() {
            return Err(Error::NegativeSqrt);
        }
        let lo = sqrt_lower(&self.lo, width);
        let hi = sqrt_upper(&self.hi, width);
        Ok(RatInterval::new(lo, hi))
    }

    pub fn scale(&self, c: &Rat) -> RatInterval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            RatInterval::new(a, b)
        } else {
            RatInterval::new(b, a)
        }
    }

    /// Smallest enclosing interval whose endpoints are dyadic with at most
    /// `bits` fractional bits. Coarsening long chains of exact interval
    /// arithmetic this way keeps denominators from compounding.
    pub fn round_out(&self, bits: u64) -> RatInterval {
        let scale = Rat::from_integer(num::BigInt::one() << bits);
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        RatInterval { lo, hi }
    }

    pub fn min_with(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().min(other.hi.clone()),
        )
    }

    pub fn max_with(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(
            self.lo.clone().max(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    pub fn abs(&self) -> RatInterval {
        RatInterval::new(self.mig(), self.mag())
    }
}

impl Add for RatInterval {
    type Output = RatInterval;
    fn add(self, rhs: RatInterval) -> RatInterval {
        RatInterval::new(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for RatInterval {
    type Output = RatInterval;
    fn sub(self, rhs: RatInterval) -> RatInterval {
        RatInterval::new(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Neg for RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        RatInterval::new(-self.hi, -self.lo)
    }
}

impl Mul for RatInterval {
    type Output = RatInterval;
    fn mul(self, rhs: RatInterval) -> RatInterval {
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for x in &c[1..] {
            if *x < lo {
                lo = x.clone();
            }
            if *x > hi {
                hi = x.clone();
            }
        }
        RatInterval::new(lo, hi)
    }
}

/// Rational lower bound on sqrt(x), within `width` of the true value.
pub fn sqrt_lower(x: &Rat, width: &Rat) -> Rat {
    debug_assert!(!x.is_negative());
    if x.is_zero() {
        return Rat::zero();
    }
    let (mut lo, mut hi) = initial_sqrt_bracket(x);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / rat_int(2);
        if &mid * &mid <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Rational upper bound on sqrt(x), within `width` of the true value.
pub fn sqrt_upper(x: &Rat, width: &Rat) -> Rat {
    debug_assert!(!x.is_negative());
    if x.is_zero() {
        return Rat::zero();
    }
    let (mut lo, mut hi) = initial_sqrt_bracket(x);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / rat_int(2);
        if &mid * &mid < *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

fn initial_sqrt_bracket(x: &Rat) -> (Rat, Rat) {
    let one = Rat::one();
    if *x >= one {
        (Rat::zero(), x.clone() + Rat::one())
    } else {
        (Rat::zero(), one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn arithmetic_encloses() {
        let a = RatInterval::new(rat(1, 2), rat_int(1));
        let b = RatInterval::new(rat(-1, 3), rat(1, 3));
        let s = a.clone() + b.clone();
        assert!(s.contains(&(rat(1, 2) + rat(-1, 3))));
        assert!(s.contains(&(rat_int(1) + rat(1, 3))));
        let p = a * b;
        assert!(p.contains(&rat(-1, 3)));
        assert!(p.contains(&rat(1, 3)));
    }

    #[test]
    fn mig_mag() {
        let a = RatInterval::new(rat(-2, 1), rat(1, 1));
        assert_eq!(a.mig(), rat_int(0));
        assert_eq!(a.mag(), rat_int(2));
        let b = RatInterval::new(rat(1, 4), rat(3, 4));
        assert_eq!(b.mig(), rat(1, 4));
    }

    #[test]
    fn sqrt_bounds() {
        let w = rat(1, 1_000_000);
        let lo = sqrt_lower(&rat_int(2), &w);
        let hi = sqrt_upper(&rat_int(2), &w);
        assert!(&lo * &lo <= rat_int(2));
        assert!(&hi * &hi >= rat_int(2));
        assert!(&hi - &lo <= rat(2, 1_000_000));
    }
}
