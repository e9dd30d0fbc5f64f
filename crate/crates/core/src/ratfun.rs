//! Rational functions of t with a restricted denominator shape
//! c * t^a * (t-1)^b, c a positive integer. This is the coefficient
//! field for the symbolic pipeline; every division it ever performs is
//! by one of these factors, so the restriction is an invariant rather
//! than a limitation.

use crate::error::{Error, Result};
use crate::rat::Rat;
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use std::fmt;

/// Polynomial in t with BigInt coefficients; coeffs[i] is the t^i term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPoly {
    coeffs: Vec<BigInt>,
}

impl TPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn zero() -> Self {
        TPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigInt) -> Self {
        TPoly::new(vec![c])
    }

    pub fn t() -> Self {
        TPoly::new(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        TPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            out.push(a + b);
        }
        TPoly::new(out)
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TPoly {
        TPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::new(out)
    }

    pub fn mul_int(&self, c: &BigInt) -> TPoly {
        TPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: u32) -> TPoly {
        if self.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![BigInt::zero(); k as usize];
        out.extend(self.coeffs.iter().cloned());
        TPoly::new(out)
    }

    /// Number of trailing zero coefficients, i.e. the power of t dividing self.
    pub fn t_valuation(&self) -> u32 {
        self.coeffs
            .iter()
            .take_while(|c| c.is_zero())
            .count() as u32
    }

    /// Divide by t^k (must divide exactly).
    pub fn div_t_pow(&self, k: u32) -> TPoly {
        debug_assert!(self.t_valuation() >= k || self.is_zero());
        if self.is_zero() {
            return TPoly::zero();
        }
        TPoly::new(self.coeffs[k as usize..].to_vec())
    }

    /// Exact division by (t - 1); returns None if it does not divide.
    pub fn div_t_minus_1(&self) -> Option<TPoly> {
        if self.is_zero() {
            return Some(TPoly::zero());
        }
        // synthetic division at t = 1
        let mut out = vec![BigInt::zero(); self.coeffs.len() - 1];
        let mut carry = BigInt::zero();
        for i in (0..self.coeffs.len()).rev() {
            let cur = &self.coeffs[i] + &carry;
            if i == 0 {
                if !cur.is_zero() {
                    return None;
                }
            } else {
                out[i - 1] = cur.clone();
                carry = cur;
            }
        }
        Some(TPoly::new(out))
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    pub fn div_int(&self, c: &BigInt) -> TPoly {
        TPoly::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    pub fn eval_rat(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + Rat::from_integer(c.clone());
        }
        acc
    }

    /// Coefficient-reversed polynomial: t^deg * p(1/t).
    pub fn reversed(&self) -> TPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        TPoly::new(c)
    }
}

/// num / (c * t^a * (t-1)^b), normalized so that neither t nor (t-1)
/// divides num while the corresponding exponent is positive, gcd of the
/// numerator content with c is 1, and c > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    num: TPoly,
    c: BigInt,
    a: u32,
    b: u32,
}

impl RatFun {
    pub fn new(num: TPoly, c: BigInt, a: u32, b: u32) -> Self {
        assert!(!c.is_zero(), "zero denominator");
        let mut f = RatFun { num, c, a, b };
        f.normalize();
        f
    }

    pub fn zero() -> Self {
        RatFun {
            num: TPoly::zero(),
            c: BigInt::one(),
            a: 0,
            b: 0,
        }
    }

    pub fn one() -> Self {
        RatFun::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        RatFun {
            num: TPoly::constant(BigInt::from(n)),
            c: BigInt::one(),
            a: 0,
            b: 0,
        }
        .normalized()
    }

    pub fn from_rat(x: &Rat) -> Self {
        RatFun::new(TPoly::constant(x.numer().clone()), x.denom().clone(), 0, 0)
    }

    pub fn t() -> Self {
        RatFun {
            num: TPoly::t(),
            c: BigInt::one(),
            a: 0,
            b: 0,
        }
    }

    /// t^p / (t-1)^q, the shape of the parameter substitutions.
    pub fn t_pow_over_tm1(p: u32, q: u32) -> Self {
        RatFun::new(TPoly::constant(BigInt::one()).shift(p), BigInt::one(), 0, q)
    }

    pub fn num(&self) -> &TPoly {
        &self.num
    }

    pub fn denom_parts(&self) -> (&BigInt, u32, u32) {
        (&self.c, self.a, self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.c = BigInt::one();
            self.a = 0;
            self.b = 0;
            return;
        }
        if self.c.is_negative() {
            self.c = -self.c.clone();
            self.num = self.num.neg();
        }
        // cancel powers of t
        let v = self.num.t_valuation().min(self.a);
        if v > 0 {
            self.num = self.num.div_t_pow(v);
            self.a -= v;
        }
        // cancel powers of (t-1)
        while self.b > 0 {
            match self.num.div_t_minus_1() {
                Some(q) => {
                    self.num = q;
                    self.b -= 1;
                }
                None => break,
            }
        }
        // cancel integer content
        let g = self.num.content().gcd(&self.c);
        if g > BigInt::one() {
            self.num = self.num.div_int(&g);
            self.c = &self.c / &g;
        }
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let c = self.c.lcm(&other.c);
        let a = self.a.max(other.a);
        let b = self.b.max(other.b);
        let lift = |f: &RatFun| -> TPoly {
            let mut n = f.num.mul_int(&(&c / &f.c));
            n = n.shift(a - f.a);
            for _ in 0..(b - f.b) {
                n = n.mul(&TPoly::from_i64(&[-1, 1]));
            }
            n
        };
        RatFun::new(lift(self).add(&lift(other)), c, a, b)
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            c: self.c.clone(),
            a: self.a,
            b: self.b,
        }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero();
        }
        RatFun::new(
            self.num.mul(&other.num),
            &self.c * &other.c,
            self.a + other.a,
            self.b + other.b,
        )
    }

    pub fn mul_rat(&self, x: &Rat) -> RatFun {
        if x.is_zero() {
            return RatFun::zero();
        }
        RatFun::new(
            self.num.mul_int(x.numer()),
            &self.c * x.denom(),
            self.a,
            self.b,
        )
    }

    /// Invert; only legal when the numerator itself has the restricted
    /// shape d * t^p * (t-1)^q (otherwise the representation contract
    /// would be violated).
    pub fn invert(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::RepresentationContract("inverse of zero".into()));
        }
        // strip t^p and (t-1)^q from the numerator
        let mut n = self.num.clone();
        let p = n.t_valuation();
        n = n.div_t_pow(p);
        let mut q = 0u32;
        while let Some(d) = n.div_t_minus_1() {
            n = d;
            q += 1;
        }
        if n.degree() != 0 {
            return Err(Error::RepresentationContract(format!(
                "numerator {:?} is not c*t^a*(t-1)^b",
                self.num
            )));
        }
        let d = n.leading();
        // 1 / (d t^p (t-1)^q / (c t^a (t-1)^b)) = c t^a (t-1)^b / (d t^p (t-1)^q)
        let mut num = TPoly::constant(self.c.clone()).shift(self.a);
        for _ in 0..self.b {
            num = num.mul(&TPoly::from_i64(&[-1, 1]));
        }
        Ok(RatFun::new(num, d, p, q))
    }

    pub fn eval_rat(&self, t: &Rat) -> Rat {
        let n = self.num.eval_rat(t);
        let tm1 = t - Rat::one();
        let mut den = Rat::from_integer(self.c.clone());
        for _ in 0..self.a {
            den *= t;
        }
        for _ in 0..self.b {
            den *= &tm1;
        }
        n / den
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({}*t^{}*(t-1)^{})", self.num.coeffs, self.c, self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn tm1_sq() -> RatFun {
        // 1/(t-1)^2
        RatFun::new(TPoly::constant(BigInt::one()), BigInt::one(), 0, 2)
    }

    #[test]
    fn normalization_cancels() {
        // (t^2 - t) / t = t - 1
        let f = RatFun::new(TPoly::from_i64(&[0, -1, 1]), BigInt::one(), 1, 0);
        assert_eq!(f, RatFun::new(TPoly::from_i64(&[-1, 1]), BigInt::one(), 0, 0));
        // (t-1)^2 / (t-1) = t - 1
        let g = RatFun::new(TPoly::from_i64(&[1, -2, 1]), BigInt::one(), 0, 1);
        assert_eq!(g, RatFun::new(TPoly::from_i64(&[-1, 1]), BigInt::one(), 0, 0));
    }

    #[test]
    fn field_ops_agree_with_pointwise() {
        let f = RatFun::t_pow_over_tm1(3, 2); // t^3/(t-1)^2
        let g = tm1_sq();
        let t0 = rat(7, 2);
        let sum = f.add(&g);
        assert_eq!(sum.eval_rat(&t0), f.eval_rat(&t0) + g.eval_rat(&t0));
        let prod = f.mul(&g);
        assert_eq!(prod.eval_rat(&t0), f.eval_rat(&t0) * g.eval_rat(&t0));
        let inv = f.invert().unwrap();
        assert_eq!(inv.eval_rat(&t0), rat(1, 1) / f.eval_rat(&t0));
    }

    #[test]
    fn invert_rejects_general_numerator() {
        let f = RatFun::new(TPoly::from_i64(&[1, 0, 1]), BigInt::one(), 0, 0); // t^2+1
        assert!(f.invert().is_err());
    }
}
