//! Sparse polynomials in the two symbols beta and r whose coefficients
//! live in the rational-function field of t ([`RatFun`]). This is the
//! working representation for the whole symbolic constants pipeline.

use crate::rat::{factorial, Rat};
use crate::ratfun::RatFun;
use num::{One, Zero};
use std::collections::BTreeMap;

/// terms[(i, j)] is the coefficient of beta^i * r^j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicPoly {
    terms: BTreeMap<(u32, u32), RatFun>,
}

impl SymbolicPoly {
    pub fn zero() -> Self {
        SymbolicPoly { terms: BTreeMap::new() }
    }

    pub fn from_ratfun(f: RatFun) -> Self {
        let mut p = SymbolicPoly::zero();
        p.insert(0, 0, f);
        p
    }

    pub fn from_rat(x: &Rat) -> Self {
        SymbolicPoly::from_ratfun(RatFun::from_rat(x))
    }

    pub fn from_int(n: i64) -> Self {
        SymbolicPoly::from_ratfun(RatFun::from_int(n))
    }

    pub fn beta() -> Self {
        let mut p = SymbolicPoly::zero();
        p.insert(1, 0, RatFun::one());
        p
    }

    pub fn r() -> Self {
        let mut p = SymbolicPoly::zero();
        p.insert(0, 1, RatFun::one());
        p
    }

    pub fn monomial(beta_deg: u32, r_deg: u32, coeff: RatFun) -> Self {
        let mut p = SymbolicPoly::zero();
        p.insert(beta_deg, r_deg, coeff);
        p
    }

    fn insert(&mut self, i: u32, j: u32, f: RatFun) {
        if !f.is_zero() {
            self.terms.insert((i, j), f);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &RatFun)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn deg_beta(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn deg_r(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn coeff(&self, beta_deg: u32, r_deg: u32) -> RatFun {
        self.terms
            .get(&(beta_deg, r_deg))
            .cloned()
            .unwrap_or_else(RatFun::zero)
    }

    pub fn add(&self, other: &SymbolicPoly) -> SymbolicPoly {
        let mut out = self.clone();
        for (&(i, j), f) in &other.terms {
            let cur = out.coeff(i, j).add(f);
            out.terms.remove(&(i, j));
            out.insert(i, j, cur);
        }
        out
    }

    pub fn sub(&self, other: &SymbolicPoly) -> SymbolicPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymbolicPoly {
        SymbolicPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, f)| (k, f.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &SymbolicPoly) -> SymbolicPoly {
        let mut acc: BTreeMap<(u32, u32), RatFun> = BTreeMap::new();
        for (&(i1, j1), f1) in &self.terms {
            for (&(i2, j2), f2) in &other.terms {
                let key = (i1 + i2, j1 + j2);
                let prod = f1.mul(f2);
                match acc.get_mut(&key) {
                    Some(cur) => *cur = cur.add(&prod),
                    None => {
                        acc.insert(key, prod);
                    }
                }
            }
        }
        acc.retain(|_, f| !f.is_zero());
        SymbolicPoly { terms: acc }
    }

    pub fn scale(&self, f: &RatFun) -> SymbolicPoly {
        if f.is_zero() {
            return SymbolicPoly::zero();
        }
        let mut terms = BTreeMap::new();
        for (&k, g) in &self.terms {
            let prod = g.mul(f);
            if !prod.is_zero() {
                terms.insert(k, prod);
            }
        }
        SymbolicPoly { terms }
    }

    pub fn scale_rat(&self, x: &Rat) -> SymbolicPoly {
        self.scale(&RatFun::from_rat(x))
    }

    pub fn pow(&self, n: u32) -> SymbolicPoly {
        let mut acc = SymbolicPoly::from_int(1);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute expressions for the two symbols; composition in the
    /// ring, exact.
    pub fn substitute(&self, beta_sub: &SymbolicPoly, r_sub: &SymbolicPoly) -> SymbolicPoly {
        let mut out = SymbolicPoly::zero();
        for (&(i, j), f) in &self.terms {
            let term = beta_sub.pow(i).mul(&r_sub.pow(j)).scale(f);
            out = out.add(&term);
        }
        out
    }

    /// Coefficient of beta^j as a polynomial in r over RatFun.
    pub fn coeff_beta(&self, j: u32) -> RPoly {
        let max_r = self
            .terms
            .keys()
            .filter(|&&(i, _)| i == j)
            .map(|&(_, k)| k)
            .max();
        let Some(max_r) = max_r else {
            return RPoly::zero();
        };
        let mut coeffs = vec![RatFun::zero(); max_r as usize + 1];
        for (&(i, k), f) in &self.terms {
            if i == j {
                coeffs[k as usize] = f.clone();
            }
        }
        RPoly::new(coeffs)
    }

    /// Generalized binomial C(expr, j) = expr(expr-1)...(expr-j+1)/j!.
    pub fn binomial(expr: &SymbolicPoly, j: u64) -> SymbolicPoly {
        let mut acc = SymbolicPoly::from_int(1);
        for l in 0..j {
            let shifted = expr.sub(&SymbolicPoly::from_int(l as i64));
            acc = acc.mul(&shifted);
        }
        let inv_fact = Rat::new(num::BigInt::one(), factorial(j));
        acc.scale_rat(&inv_fact)
    }

    /// Exact evaluation at rational (beta, r, t); the independent
    /// point-check used by the pipeline oracles.
    pub fn eval_rat(&self, beta: &Rat, r: &Rat, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), f) in &self.terms {
            let mut term = f.eval_rat(t);
            for _ in 0..i {
                term *= beta;
            }
            for _ in 0..j {
                term *= r;
            }
            acc += term;
        }
        acc
    }
}

/// Polynomial in r with RatFun coefficients; coeffs[i] is the r^i term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RPoly {
    coeffs: Vec<RatFun>,
}

impl RPoly {
    pub fn new(mut coeffs: Vec<RatFun>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RPoly { coeffs }
    }

    pub fn zero() -> Self {
        RPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFun {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFun::zero)
    }

    /// Remainder modulo a monic polynomial in r with rational
    /// coefficients (H_s); needs only ring operations.
    pub fn rem_monic(&self, modulus: &crate::unipoly::UniPoly) -> RPoly {
        assert!(modulus.is_monic());
        let d = modulus.degree();
        let mut work = self.coeffs.clone();
        while work.len() > d {
            let top = work.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let deg = work.len(); // degree of the removed term
            for k in 0..d {
                let m = modulus.coeff(k);
                if m.is_zero() {
                    continue;
                }
                let idx = deg - d + k;
                let sub = top.mul_rat(&m);
                work[idx] = work[idx].sub(&sub);
            }
        }
        RPoly::new(work)
    }

    pub fn eval_rat(&self, r: &Rat, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for f in self.coeffs.iter().rev() {
            acc = acc * r + f.eval_rat(t);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn difference_of_squares() {
        // (beta + r)(beta - r) = beta^2 - r^2
        let b = SymbolicPoly::beta();
        let r = SymbolicPoly::r();
        let p = b.add(&r).mul(&b.sub(&r));
        let mut want = SymbolicPoly::zero();
        want.insert(2, 0, RatFun::one());
        want.insert(0, 2, RatFun::from_int(-1));
        assert_eq!(p, want);
    }

    #[test]
    fn parameter_substitution_identity() {
        // k = t^3 (t-1)^{-2} beta^2 + s  =>  k - s = t^3 (t-1)^{-2} beta^2
        let s = 5i64;
        let t3 = RatFun::t_pow_over_tm1(3, 2);
        let k = SymbolicPoly::monomial(2, 0, t3.clone()).add(&SymbolicPoly::from_int(s));
        let diff = k.sub(&SymbolicPoly::from_int(s));
        assert_eq!(diff, SymbolicPoly::monomial(2, 0, t3));
    }

    #[test]
    fn substitute_composes() {
        // p(beta, r) = beta^2 + r, substitute beta -> r, r -> 3
        let p = SymbolicPoly::beta().pow(2).add(&SymbolicPoly::r());
        let q = p.substitute(&SymbolicPoly::r(), &SymbolicPoly::from_int(3));
        let want = SymbolicPoly::r().pow(2).add(&SymbolicPoly::from_int(3));
        assert_eq!(q, want);
    }

    #[test]
    fn eval_matches_structure() {
        let t3 = RatFun::t_pow_over_tm1(3, 2);
        let p = SymbolicPoly::monomial(2, 1, t3);
        // beta^2 * r * t^3/(t-1)^2 at beta=2, r=3, t=3 -> 4*3*27/4 = 81
        assert_eq!(p.eval_rat(&rat_int(2), &rat_int(3), &rat_int(3)), rat_int(81));
    }

    #[test]
    fn rem_monic_reduces() {
        use crate::unipoly::UniPoly;
        // r^2 mod (r^2 - 3) = 3
        let modulus = UniPoly::from_int_coeffs(&[-3, 0, 1]);
        let p = RPoly::new(vec![RatFun::zero(), RatFun::zero(), RatFun::one()]);
        let rem = p.rem_monic(&modulus);
        assert_eq!(rem.degree(), 0);
        assert_eq!(rem.coeff(0), RatFun::from_int(3));
        // H_2(r) = r^2 - 1 divides (r^2-1)*r exactly
        let m2 = UniPoly::from_int_coeffs(&[-1, 0, 1]);
        let p2 = RPoly::new(vec![
            RatFun::zero(),
            RatFun::from_int(-1),
            RatFun::zero(),
            RatFun::one(),
        ]); // r^3 - r
        assert!(p2.rem_monic(&m2).is_zero());
    }

    #[test]
    fn ring_axioms_spot_check() {
        let a = SymbolicPoly::beta().add(&SymbolicPoly::from_ratfun(RatFun::t()));
        let b = SymbolicPoly::r().mul(&SymbolicPoly::beta());
        let c = SymbolicPoly::from_rat(&rat(2, 3));
        let left = a.mul(&b.add(&c));
        let right = a.mul(&b).add(&a.mul(&c));
        assert_eq!(left, right);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}
