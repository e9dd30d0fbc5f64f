//! Dense univariate polynomials over the rationals, Sturm sequences and
//! certified real-root isolation.

use crate::error::{Error, Result};
use crate::interval::RatInterval;
use crate::rat::{rat_int, Rat};
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// coefficients[i] is the coefficient of x^i; no trailing zeros stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn x() -> Self {
        UniPoly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Interval extension by Horner; contains p(xi) for every xi in x,
    /// and is exact when x is a point.
    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        let mut acc = RatInterval::point(Rat::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + RatInterval::point(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = Rat::one() / self.leading();
        self.scale(&inv)
    }

    /// Shift the argument: returns p(x + a).
    pub fn compose_shift(&self, a: &Rat) -> UniPoly {
        // Horner-style composition with (x + a)
        let mut acc = UniPoly::zero();
        let shift = UniPoly::new(vec![a.clone(), Rat::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &acc * &shift + UniPoly::constant(c.clone());
        }
        acc
    }

    pub fn divmod(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dn = d.degree();
        if self.is_zero() || self.degree() < dn {
            return (UniPoly::zero(), self.clone());
        }
        let lead_inv = Rat::one() / d.leading();
        let mut quot = vec![Rat::zero(); self.degree() - dn + 1];
        for i in (dn..rem.len()).rev() {
            let f = &rem[i] * &lead_inv;
            if f.is_zero() {
                continue;
            }
            quot[i - dn] = f.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                let k = i - dn + j;
                let sub = dc * &f;
                rem[k] = &rem[k] - sub;
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).degree() == 0
    }

    /// p divided by gcd(p, p'): same roots, all simple.
    pub fn squarefree_part(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        let (q, r) = self.divmod(&g);
        debug_assert!(r.is_zero());
        q
    }

    /// Strict upper bound on the absolute value of every root.
    pub fn cauchy_bound(&self) -> Rat {
        assert!(!self.is_zero());
        let lead = self.leading().abs();
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = c.abs() / &lead;
            if q > m {
                m = q;
            }
        }
        Rat::one() + m
    }

    /// Sturm chain with positive rescaling (signs preserved).
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].divmod(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            let lead_abs = r.leading().abs();
            chain.push((-r).scale(&(Rat::one() / lead_abs)));
        }
        chain
    }

    /// Number of real roots in the half-open interval (lo, hi].
    pub fn count_roots_between(chain: &[UniPoly], lo: &Rat, hi: &Rat) -> usize {
        sign_variations_at(chain, lo) - sign_variations_at(chain, hi)
    }

    /// Total number of distinct real roots (square-free input assumed).
    pub fn count_real_roots(&self) -> usize {
        if self.is_zero() || self.degree() == 0 {
            return 0;
        }
        let chain = self.sturm_chain();
        let b = self.cauchy_bound();
        Self::count_roots_between(&chain, &(-b.clone()), &b)
    }

    /// Isolate all real roots to enclosures no wider than `width`.
    /// Requires a nonzero square-free polynomial. Roots are returned in
    /// ascending order with `index` set to the ascending ordinal.
    pub fn isolate_real_roots(&self, width: &Rat) -> Result<Vec<CertifiedRoot>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == 0 {
            return Ok(vec![]);
        }
        if !self.is_squarefree() {
            return Err(Error::NotSquareFree);
        }
        let chain = self.sturm_chain();
        let bound = self.cauchy_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound.clone())];
        // depth-first, but keep results sorted at the end
        while let Some((lo, hi)) = stack.pop() {
            let count = Self::count_roots_between(&chain, &lo, &hi);
            match count {
                0 => {}
                1 => out.push(self.refine_enclosure(&chain, lo, hi, width)),
                _ => {
                    let mid = (&lo + &hi) / rat_int(2);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort_by(|a, b| a.enclosure.lo().cmp(b.enclosure.lo()));
        let mut roots: Vec<CertifiedRoot> = out
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.index = i as i32;
                r
            })
            .collect();
        // adjacent closed enclosures may share an endpoint; that endpoint
        // is a bisection point with p != 0, so containment is still exact
        for r in &mut roots {
            debug_assert!(r.enclosure.width() <= *width);
        }
        Ok(roots)
    }

    /// Shrink a one-root half-open interval (lo, hi] to width <= `width`.
    fn refine_enclosure(
        &self,
        chain: &[UniPoly],
        mut lo: Rat,
        mut hi: Rat,
        width: &Rat,
    ) -> CertifiedRoot {
        while &hi - &lo > *width {
            let mid = (&lo + &hi) / rat_int(2);
            if self.eval(&mid).is_zero() {
                return CertifiedRoot {
                    defining: self.clone(),
                    enclosure: RatInterval::point(mid),
                    index: 0,
                };
            }
            if Self::count_roots_between(chain, &lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        CertifiedRoot {
            defining: self.clone(),
            enclosure: RatInterval::new(lo, hi),
            index: 0,
        }
    }
}

fn sign_of(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_variations_at(chain: &[UniPoly], x: &Rat) -> usize {
    let mut vars = 0;
    let mut last: i8 = 0;
    for p in chain {
        let s = sign_of(&p.eval(x));
        if s != 0 {
            if last != 0 && s != last {
                vars += 1;
            }
            last = s;
        }
    }
    vars
}

/// A real algebraic number: a defining polynomial together with a
/// rational interval containing exactly one of its real roots.
#[derive(Debug, Clone)]
pub struct CertifiedRoot {
    pub defining: UniPoly,
    pub enclosure: RatInterval,
    pub index: i32,
}

impl CertifiedRoot {
    /// An exactly-known rational root.
    pub fn exact(value: Rat, defining: UniPoly, index: i32) -> Self {
        debug_assert!(defining.eval(&value).is_zero());
        CertifiedRoot {
            defining,
            enclosure: RatInterval::point(value),
            index,
        }
    }

    pub fn negated(&self) -> CertifiedRoot {
        let d = &self.defining;
        let flipped = UniPoly::new(
            d.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        );
        CertifiedRoot {
            defining: flipped,
            enclosure: -self.enclosure.clone(),
            index: -self.index,
        }
    }

    /// Narrow the enclosure to within `width` (never loses the root).
    pub fn refine(&mut self, width: &Rat) {
        if self.enclosure.is_point() || self.enclosure.width() <= *width {
            return;
        }
        let chain = self.defining.sturm_chain();
        let mut lo = self.enclosure.lo().clone();
        let mut hi = self.enclosure.hi().clone();
        // re-anchor to the half-open convention: if lo is not a root we
        // can count on (lo, hi] directly
        debug_assert!(!self.defining.eval(&lo).is_zero());
        while &hi - &lo > *width {
            let mid = (&lo + &hi) / rat_int(2);
            if self.defining.eval(&mid).is_zero() {
                self.enclosure = RatInterval::point(mid);
                return;
            }
            if UniPoly::count_roots_between(&chain, &lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        self.enclosure = RatInterval::new(lo, hi);
    }

    /// Interval square of the root: [mig^2, mag^2] is the exact image.
    pub fn square(&self) -> RatInterval {
        let lo = self.enclosure.mig();
        let hi = self.enclosure.mag();
        RatInterval::new(&lo * &lo, &hi * &hi)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::new(out)
    }
}

impl Add<UniPoly> for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        UniPoly::new(out)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prod = a * b;
                out[i + j] = &out[i + j] + prod;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{}*x", a)?,
                _ if a.is_one() => write!(f, "x^{}", i)?,
                _ => write!(f, "{}*x^{}", a, i)?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{parse_decimal, rat};

    #[test]
    fn isolates_integer_roots_exactly() {
        // x^2 - 1 -> roots -1 and 1, hit exactly by dyadic bisection
        let p = UniPoly::from_int_coeffs(&[-1, 0, 1]);
        let roots = p.isolate_real_roots(&rat(1, 100)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].enclosure.contains(&rat_int(-1)));
        assert!(roots[1].enclosure.contains(&rat_int(1)));
        assert!(roots[0].enclosure.width() <= rat(1, 100));
    }

    #[test]
    fn isolates_hermite4_roots() {
        // x^4 - 6x^2 + 3: zeros +-0.7420, +-2.3344 (4-digit table values)
        let p = UniPoly::from_int_coeffs(&[3, 0, -6, 0, 1]);
        let roots = p.isolate_real_roots(&rat(1, 100_000_000)).unwrap();
        assert_eq!(roots.len(), 4);
        let tol = parse_decimal("0.0001");
        for (root, want) in roots.iter().zip(["-2.3344", "-0.7420", "0.7420", "2.3344"]) {
            let w = parse_decimal(want);
            let mid = root.enclosure.mid();
            assert!((mid - w).abs() <= tol, "zero mismatch for {}", want);
        }
    }

    #[test]
    fn isolates_psi2_witt_roots() {
        // 105x^2 - 420x + 315 = 105(x-1)(x-3), from the Witt 4-(23,7,1) parameters
        let p = UniPoly::from_int_coeffs(&[315, -420, 105]);
        let roots = p.isolate_real_roots(&rat(1, 100)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].enclosure.contains(&rat_int(1)));
        assert!(roots[1].enclosure.contains(&rat_int(3)));
    }

    #[test]
    fn rejects_repeated_roots() {
        let p = UniPoly::from_int_coeffs(&[1, -2, 1]); // (x-1)^2
        assert!(matches!(
            p.isolate_real_roots(&rat(1, 4)),
            Err(Error::NotSquareFree)
        ));
        assert_eq!(p.squarefree_part(), UniPoly::from_int_coeffs(&[-1, 1]));
    }

    #[test]
    fn interval_eval_identity() {
        let p = UniPoly::x();
        let x = RatInterval::new(rat(1, 2), rat_int(1));
        assert_eq!(p.eval_interval(&x), x);
    }

    #[test]
    fn divmod_roundtrip() {
        let a = UniPoly::from_int_coeffs(&[2, 0, -3, 1, 4]);
        let b = UniPoly::from_int_coeffs(&[1, 2, 1]);
        let (q, r) = a.divmod(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn refine_keeps_root() {
        let p = UniPoly::from_int_coeffs(&[-2, 0, 1]); // x^2 - 2
        let mut roots = p.isolate_real_roots(&rat(1, 4)).unwrap();
        let sqrt2_lo = roots[1].enclosure.lo().clone();
        let sqrt2_hi = roots[1].enclosure.hi().clone();
        roots[1].refine(&rat(1, 1_000_000));
        assert!(roots[1].enclosure.width() <= rat(1, 1_000_000));
        assert!(sqrt2_lo <= *roots[1].enclosure.lo());
        assert!(*roots[1].enclosure.hi() <= sqrt2_hi);
        // 2 sits inside the square of the enclosure
        let sq = roots[1].enclosure.clone() * roots[1].enclosure.clone();
        assert!(sq.contains(&rat_int(2)));
    }
}
