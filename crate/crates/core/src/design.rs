//! The feasibility polynomial Psi_s, derived design parameters, and the
//! candidate checker: a tight 2s-(v,k,lambda) design forces the zeros of
//! Psi_s to be distinct nonnegative integers (the intersection numbers).

use crate::error::{Error, Result};
use crate::rat::{big, binom_big, is_integer, rat, rat_int, Rat};
use crate::unipoly::UniPoly;
use num::bigint::BigInt;
use num::{One, Zero};

/// Parameters derived from (s, v, k).
#[derive(Debug, Clone, serde::Serialize)]
pub struct DesignCandidate {
    pub s: u32,
    pub v: u64,
    pub k: u64,
    pub alpha: Rat,
    pub t: Rat,
    pub beta_sq: Rat,
    pub alpha_bar: Rat,
    pub lambda: Rat,
    pub b: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Failure {
    LambdaNotInteger,
    VEquals2k,
    VEquals2kPlus1,
    SAlphaBarNotInteger,
    PsiRootsNotDistinctNonnegativeIntegers,
    CoefficientTestFailed,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct FeasibilityVerdict {
    pub passed: bool,
    pub failures: Vec<Failure>,
    pub intersection_numbers: Vec<u64>,
}

/// Psi_s for the pair (v, k): degree-s polynomial in x whose zeros are
/// the only admissible intersection numbers.
pub fn psi(s: u32, v: u64, k: u64) -> Result<UniPoly> {
    if v < k + s as u64 || k < 2 * s as u64 {
        return Err(Error::BadParameters(format!(
            "psi needs v >= k + s and k >= 2s, got ({}, {}, {})",
            s, v, k
        )));
    }
    let mut acc = UniPoly::zero();
    for i in 0..=s {
        let sign = if (s - i) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let num = binom_big(&big(v as i64 - s as i64), i as u64)
            * binom_big(&big(k as i64 - i as i64), (s - i) as u64)
            * binom_big(&big(k as i64 - 1 - i as i64), (s - i) as u64);
        let den = binom_big(&big(s as i64), i as u64);
        let coeff = Rat::new(sign * num, den);
        acc = &acc + &binom_x(i as u64).scale(&coeff);
    }
    Ok(acc)
}

/// The polynomial C(x, i) = x(x-1)...(x-i+1)/i!.
fn binom_x(i: u64) -> UniPoly {
    let mut p = UniPoly::one();
    for j in 0..i {
        p = &p * &UniPoly::new(vec![rat_int(-(j as i64)), Rat::one()]);
    }
    p.scale(&Rat::new(BigInt::one(), crate::rat::factorial(i)))
}

pub fn derive_params(s: u32, v: u64, k: u64) -> Result<DesignCandidate> {
    let s64 = s as u64;
    if v < k + s64 {
        return Err(Error::BadParameters(format!(
            "need v >= k + s, got ({}, {}, {})",
            s, v, k
        )));
    }
    if v + 1 == 2 * s64 {
        return Err(Error::BadParameters("v = 2s - 1 gives a zero denominator".into()));
    }
    if k + 1 <= s64 {
        return Err(Error::BadParameters("k = s - 1 gives a zero denominator".into()));
    }
    let vk = |x: u64| rat_int(x as i64);
    let alpha = (vk(k) - rat_int(s as i64 - 1)) * (vk(k) - rat_int(s as i64))
        / (vk(v) - rat_int(2 * s as i64 - 1));
    let t = (vk(v) - rat_int(2 * s as i64 - 1)) / (vk(k) - rat_int(s as i64 - 1));
    let one_minus = Rat::one() - t.recip();
    let beta_sq = &one_minus * &one_minus * &alpha;
    let alpha_bar = &alpha + rat(s as i64 - 1, 2);
    let lambda = Rat::new(
        binom_big(&big(v as i64), s64) * binom_big(&big(k as i64), 2 * s64),
        binom_big(&big(v as i64), 2 * s64),
    );
    let b = binom_big(&big(v as i64), s64);
    Ok(DesignCandidate { s, v, k, alpha, t, beta_sq, alpha_bar, lambda, b })
}

/// Complementation: a tight design on (v, k) yields one on (v, v-k).
/// Used to normalize candidates to the t >= 2 side.
pub fn complement(_s: u32, v: u64, k: u64) -> (u64, u64) {
    (v, v - k)
}

/// Least residue of s(k-s+1)(k-s) mod 2(k-s)+1, by the closed four-case
/// formula. Strictly between 0 and the modulus whenever k >= 2s, which
/// is what rules out v = 2k.
pub fn residue_r(k: u64, s: u64) -> i64 {
    assert!(k >= 2 * s && s >= 1);
    let k = k as i64;
    let s = s as i64;
    // each case is an integer, but only after combining over the common
    // denominator 4; truncating the fractions separately is wrong
    let quarters = match (s % 4, k % 2) {
        (0, _) => 8 * (k - s) - (s - 4),
        (2, _) => 4 * (k - s) - (s - 2),
        (1, 1) | (3, 0) => 2 * (k - s) - (s - 1),
        (3, 1) | (1, 0) => 6 * (k - s) - (s - 3),
        _ => unreachable!(),
    };
    assert_eq!(quarters % 4, 0);
    quarters / 4
}

/// Full feasibility check. Failures accumulate; the verdict carries all
/// of them so callers can report why a candidate died.
pub fn check_candidate(s: u32, v: u64, k: u64) -> Result<FeasibilityVerdict> {
    let cand = derive_params(s, v, k)?;
    let mut failures = Vec::new();
    if v == 2 * k {
        failures.push(Failure::VEquals2k);
    }
    if v == 2 * k + 1 {
        failures.push(Failure::VEquals2kPlus1);
    }
    if !is_integer(&(rat_int(s as i64) * &cand.alpha_bar)) {
        failures.push(Failure::SAlphaBarNotInteger);
    }
    if !is_integer(&cand.lambda) {
        failures.push(Failure::LambdaNotInteger);
    }
    // second symmetric function of the zeros, in the g_alpha form used by
    // the search loop; must be an integer when the zeros are
    if s >= 2 && k >= 2 * s as u64 {
        let n = k - s as u64;
        let g = crate::search::g_alpha(s, &cand.alpha, n as i64);
        if !is_integer(&g) {
            failures.push(Failure::CoefficientTestFailed);
        }
    }
    let mut intersection = Vec::new();
    if k >= 2 * s as u64 {
        let p = psi(s, v, k)?;
        let cauchy = p.cauchy_bound();
        let mut hi = k as i64;
        if cauchy < rat_int(hi) {
            hi = cauchy.ceil().to_integer().try_into().unwrap_or(hi);
        }
        for x in 0..=hi {
            if p.eval(&rat_int(x)).is_zero() {
                intersection.push(x as u64);
            }
        }
        if intersection.len() != s as usize {
            intersection.clear();
            failures.push(Failure::PsiRootsNotDistinctNonnegativeIntegers);
        }
    } else {
        failures.push(Failure::PsiRootsNotDistinctNonnegativeIntegers);
    }
    Ok(FeasibilityVerdict { passed: failures.is_empty(), failures, intersection_numbers: intersection })
}

/// Check the defining parameter relations round-trip: substituting t and
/// beta^2 back recovers k and v.
pub fn roundtrip_ok(c: &DesignCandidate) -> bool {
    let t = &c.t;
    let tm1 = t - Rat::one();
    if tm1.is_zero() {
        return false;
    }
    let scale = t * t / (&tm1 * &tm1);
    let k = &scale * t * &c.beta_sq + rat_int(c.s as i64);
    let v = &scale * t * t * &c.beta_sq + t + rat_int(2 * c.s as i64 - 1);
    k == rat_int(c.k as i64) && v == rat_int(c.v as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_witt() {
        let p = psi(2, 23, 7).unwrap();
        // 105(x-1)(x-3) = 105x^2 - 420x + 315
        assert_eq!(p, UniPoly::from_int_coeffs(&[315, -420, 105]));
        // sum of zeros = s * alpha_bar = 4
        let monic = p.monic();
        assert_eq!(-monic.coeff(1), rat_int(4));
    }

    #[test]
    fn params_witt() {
        let c = derive_params(2, 23, 7).unwrap();
        assert_eq!(c.t, rat(10, 3));
        assert_eq!(c.alpha, rat(3, 2));
        assert_eq!(c.beta_sq, rat(147, 200));
        assert_eq!(c.alpha_bar, rat_int(2));
        assert_eq!(c.lambda, rat_int(1));
        assert!(roundtrip_ok(&c));
        let cc = derive_params(2, 23, 16).unwrap();
        assert_eq!(cc.lambda, rat_int(52));
    }

    #[test]
    fn trivial_design_beta_zero() {
        let c = derive_params(3, 15, 12).unwrap();
        assert!(c.beta_sq.is_zero());
    }

    #[test]
    fn complement_normalizes_t() {
        let c = derive_params(2, 23, 16).unwrap();
        assert!(c.t < rat_int(2));
        let (v, k) = complement(2, 23, 16);
        assert_eq!((v, k), (23, 7));
        assert!(derive_params(2, v, k).unwrap().t >= rat_int(2));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue_r(10, 4), 12);
        assert_eq!(168 % 13, 12);
        assert_eq!(residue_r(11, 5), 2);
        assert_eq!((5 * 7 * 6) % 13, 2);
    }

    #[test]
    fn residue_matches_bruteforce() {
        for s in 1..=12u64 {
            for k in (2 * s)..(2 * s + 120) {
                let m = (2 * (k - s) + 1) as i64;
                let brute = ((s * (k - s + 1) * (k - s)) as i64) % m;
                let r = residue_r(k, s);
                assert_eq!(r, brute, "k={}, s={}", k, s);
                assert!(0 < r && r < m);
            }
        }
    }

    #[test]
    fn witt_passes() {
        let v = check_candidate(2, 23, 7).unwrap();
        assert!(v.passed, "{:?}", v.failures);
        assert_eq!(v.intersection_numbers, vec![1, 3]);
        let v16 = check_candidate(2, 23, 16).unwrap();
        assert!(v16.passed, "{:?}", v16.failures);
    }

    #[test]
    fn near_witt_fails_on_roots() {
        // lambda = 253*70/8855 = 2 is an integer, so only the root check
        // can kill (2, 23, 8)
        let c = derive_params(2, 23, 8).unwrap();
        assert_eq!(c.lambda, rat_int(2));
        let v = check_candidate(2, 23, 8).unwrap();
        assert!(!v.passed);
        assert!(v.failures.contains(&Failure::PsiRootsNotDistinctNonnegativeIntegers));
    }

    #[test]
    fn v_2k_plus_1_fails() {
        let v = check_candidate(2, 21, 10).unwrap();
        assert!(v.failures.contains(&Failure::VEquals2kPlus1));
    }

    #[test]
    fn root_sum_is_s_alpha_bar() {
        for s in 2..=4u32 {
            for v in (4 * s as u64)..=40 {
                for k in (2 * s as u64)..=(v - s as u64).min(v / 2) {
                    let p = psi(s, v, k).unwrap();
                    if p.degree() != s as usize {
                        continue;
                    }
                    let c = derive_params(s, v, k).unwrap();
                    let sum = -p.monic().coeff(s as usize - 1);
                    assert_eq!(sum, rat_int(s as i64) * c.alpha_bar);
                }
            }
        }
    }
}
