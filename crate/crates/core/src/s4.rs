//! The dedicated s = 4 analysis: the quarter-shift identity
//! p_4 = (p_2/2 + 1/8)^2 - p_3^2 turns into an integer bivariate
//! equation f(k, v) = 0 once denominators are cleared. f is derived
//! symbolically here and checked term-for-term against the stored
//! transcription, then scanned for integer roots and reduced modulo
//! small primes to produce excluded congruence classes.

use crate::design;
use crate::error::{Error, Result};
use crate::rat::{big, rat, rat_int, Rat};
use crate::unipoly::UniPoly;
use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Integer polynomial in k and v, keyed by (degree in k, degree in v).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, 0, big(c))
    }

    pub fn monomial(dk: u32, dv: u32, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dk, dv), c);
        }
        BivarPoly { terms }
    }

    pub fn k() -> Self {
        Self::monomial(1, 0, BigInt::one())
    }

    pub fn v() -> Self {
        Self::monomial(0, 1, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, dk: u32, dv: u32) -> BigInt {
        self.terms.get(&(dk, dv)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn deg_k(&self) -> u32 {
        self.terms.keys().map(|(dk, _)| *dk).max().unwrap_or(0)
    }

    pub fn deg_v(&self) -> u32 {
        self.terms.keys().map(|(_, dv)| *dv).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, key: (u32, u32), c: BigInt) {
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.insert(*key, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BivarPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((ak, av), ac) in &self.terms {
            for ((bk, bv), bc) in &other.terms {
                out.insert((ak + bk, av + bv), ac * bc);
            }
        }
        out
    }

    pub fn mul_int(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(k, x)| (*k, x * big(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divide out the integer content and make the coefficient of the
    /// highest power of v positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        let top = self.deg_v();
        let lead = self
            .terms
            .iter()
            .filter(|((_, dv), _)| *dv == top)
            .max_by_key(|((dk, _), _)| *dk)
            .map(|(_, c)| c.clone())
            .unwrap();
        if lead.is_negative() {
            g = -g;
        }
        BivarPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, c / &g)).collect(),
        }
    }

    pub fn eval_rat(&self, k: &Rat, v: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for ((dk, dv), c) in &self.terms {
            acc += Rat::from_integer(c.clone()) * k.pow(*dk as i32) * v.pow(*dv as i32);
        }
        acc
    }

    /// Substitute an integer k, leaving a univariate polynomial in v.
    pub fn at_k(&self, k: &BigInt) -> UniPoly {
        let deg = self.deg_v() as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        let mut kpow = vec![BigInt::one()];
        for _ in 0..self.deg_k() {
            kpow.push(kpow.last().unwrap() * k);
        }
        for ((dk, dv), c) in &self.terms {
            coeffs[*dv as usize] += Rat::from_integer(c * &kpow[*dk as usize]);
        }
        UniPoly::new(coeffs)
    }

    pub fn eval_mod(&self, k: u64, v: u64, p: u64) -> u64 {
        let pb = big(p as i64);
        let kb = big((k % p) as i64);
        let vb = big((v % p) as i64);
        let mut acc = BigInt::zero();
        for ((dk, dv), c) in &self.terms {
            let term = c.mod_floor(&pb)
                * kb.modpow(&big(*dk as i64), &pb)
                * vb.modpow(&big(*dv as i64), &pb);
            acc = (acc + term).mod_floor(&pb);
        }
        acc.to_u64().unwrap()
    }

    /// Parse the compact transcription format: signed integer monomials
    /// with optional k^a and v^b factors, e.g. "-26k^4", "2k^4v", "45v^11".
    pub fn parse(src: &str) -> Result<Self> {
        let mut out = Self::zero();
        let bytes: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let n = bytes.len();
        let bad = |pos: usize| Error::Other(format!("bad monomial near offset {}", pos));
        while pos < n {
            let mut sign = BigInt::one();
            if bytes[pos] == '+' {
                pos += 1;
            } else if bytes[pos] == '-' {
                sign = -sign;
                pos += 1;
            }
            let start = pos;
            while pos < n && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: BigInt = if pos > start {
                bytes[start..pos].iter().collect::<String>().parse().map_err(|_| bad(pos))?
            } else {
                BigInt::one()
            };
            let read_exp = |pos: &mut usize| -> Result<u32> {
                if *pos < n && bytes[*pos] == '^' {
                    *pos += 1;
                    let s = *pos;
                    while *pos < n && bytes[*pos].is_ascii_digit() {
                        *pos += 1;
                    }
                    if *pos == s {
                        return Err(bad(*pos));
                    }
                    bytes[s..*pos].iter().collect::<String>().parse().map_err(|_| bad(*pos))
                } else {
                    Ok(1)
                }
            };
            let mut dk = 0;
            let mut dv = 0;
            if pos < n && bytes[pos] == 'k' {
                pos += 1;
                dk = read_exp(&mut pos)?;
            }
            if pos < n && bytes[pos] == 'v' {
                pos += 1;
                dv = read_exp(&mut pos)?;
            }
            if pos == start && dk == 0 && dv == 0 {
                return Err(bad(pos));
            }
            out.insert((dk, dv), sign * coeff);
        }
        Ok(out)
    }
}

/// The stored f(k, v) transcription.
pub fn f_table() -> Result<BivarPoly> {
    BivarPoly::parse(crate::refdata::F_KV)
}

/// The stored quartic companion g(k, v).
pub fn g_table() -> Result<BivarPoly> {
    BivarPoly::parse(crate::refdata::G_KV)
}

fn shifted(base: BivarPoly, c: i64) -> BivarPoly {
    base.add(&BivarPoly::constant(c))
}

/// The shared numerator A = (k-3)(k-4)(v-k-3)(v-k-4).
fn a_factor() -> BivarPoly {
    let k = BivarPoly::k();
    let v = BivarPoly::v();
    let vmk = v.sub(&k);
    shifted(k.clone(), -3)
        .mul(&shifted(k, -4))
        .mul(&shifted(vmk.clone(), -3))
        .mul(&shifted(vmk, -4))
}

/// Derive f(k, v) from the quarter-shift identity. With
///   p_2 + 5/2 = -6A/((v-6)(v-7)^2),
///   p_3 = -4A(v-2k+1)(v-2k-1)/((v-5)(v-6)(v-7)^3),
///   p_4 - 9/16 = (3/2) A g/((v-4)(v-5)(v-6)(v-7)^4),
/// multiplying the identity residual by 64(v-4)(v-5)^2(v-6)^2(v-7)^6
/// clears every denominator:
///   (v-4)(v-5)^2(v-7)^2 (9(v-6)(v-7)^2 + 24A)^2
///     - 1024 (v-4) A^2 (v-2k+1)^2 (v-2k-1)^2
///     - 36 (v-4)(v-5)^2(v-6)^2(v-7)^6 - 96 A g (v-5)(v-6)(v-7)^2.
/// The result is normalized and must match the stored transcription
/// term-for-term.
pub fn derive_f() -> Result<BivarPoly> {
    let k = BivarPoly::k();
    let v = BivarPoly::v();
    let a = a_factor();
    let g = g_table()?;
    let v4 = shifted(v.clone(), -4);
    let v5 = shifted(v.clone(), -5);
    let v6 = shifted(v.clone(), -6);
    let v7 = shifted(v.clone(), -7);
    let inner = v6.mul(&v7.pow(2)).mul_int(9).add(&a.mul_int(24));
    let term1 = v4.mul(&v5.pow(2)).mul(&v7.pow(2)).mul(&inner.pow(2));
    let k2 = k.mul_int(2);
    let quad = v.sub(&k2).add(&BivarPoly::constant(1)).mul(&v.sub(&k2).sub(&BivarPoly::constant(1)));
    let term2 = v4.mul(&a.pow(2)).mul(&quad.pow(2)).mul_int(1024);
    let term3a = v4.mul(&v5.pow(2)).mul(&v6.pow(2)).mul(&v7.pow(6)).mul_int(36);
    let term3b = a.mul(&g).mul(&v5).mul(&v6).mul(&v7.pow(2)).mul_int(96);
    let derived = term1.sub(&term2).sub(&term3a).sub(&term3b).normalized();
    let stored = f_table()?;
    if derived != stored {
        let mut diffs = Vec::new();
        let keys: std::collections::BTreeSet<_> =
            derived.terms.keys().chain(stored.terms.keys()).cloned().collect();
        for (dk, dv) in keys {
            let a = derived.coeff(dk, dv);
            let b = stored.coeff(dk, dv);
            if a != b {
                diffs.push(format!("k^{}v^{}: derived {}, stored {}", dk, dv, a, b));
            }
        }
        return Err(Error::TableMismatch(diffs.join("; ")));
    }
    Ok(derived)
}

/// Exact coefficients of the root-centered quartic at (k, v), with the
/// quarter-integer root offsets when the premise holds.
#[derive(Debug, Clone, serde::Serialize)]
pub struct S4Coefficients {
    pub p2: Rat,
    pub p3: Rat,
    pub p4: Rat,
    pub r1: Option<Rat>,
    pub r2: Option<Rat>,
}

fn quarter_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let y = x * rat_int(16);
    if !y.is_integer() {
        return None;
    }
    let n = y.to_integer();
    let r = n.sqrt();
    if &r * &r == n {
        Some(Rat::new(r, big(4)))
    } else {
        None
    }
}

pub fn p_coeffs(k: u64, v: u64) -> Result<S4Coefficients> {
    if k < 9 || v < 11 {
        return Err(Error::BadParameters(format!("p_coeffs needs k >= 9, v >= 11, got ({}, {})", k, v)));
    }
    let (kk, vv) = (rat_int(k as i64), rat_int(v as i64));
    let f = |c: i64| &vv - rat_int(c);
    let a = (&kk - rat_int(3)) * (&kk - rat_int(4)) * (&vv - &kk - rat_int(3)) * (&vv - &kk - rat_int(4));
    let g = g_table()?.eval_rat(&kk, &vv);
    let p2 = rat(-5, 2) - rat_int(6) * &a / (f(6) * f(7).pow(2));
    let p3 = rat_int(-4) * &a * (&vv - rat_int(2 * k as i64 - 1)) * (&vv - rat_int(2 * k as i64 + 1))
        / (f(5) * f(6) * f(7).pow(3));
    let p4 = rat(9, 16) + rat(3, 2) * &a * g / (f(4) * f(5) * f(6) * f(7).pow(4));
    // cross-check against the shifted quartic whenever it is defined
    if v >= k + 4 {
        let psi = design::psi(4, v, k)?;
        let params = design::derive_params(4, v, k)?;
        let scale = rat_int(24) / crate::rat::binom_rat(&rat_int(v as i64 - 4), 4);
        let centered = psi.compose_shift(&params.alpha_bar).scale(&scale);
        let want = [p4.clone(), p3.clone(), p2.clone(), Rat::zero(), Rat::one()];
        for (i, w) in want.iter().enumerate() {
            if centered.coeff(i) != *w {
                return Err(Error::CertificationFailed(format!(
                    "root-centered quartic mismatch at x^{} for ({}, {})",
                    i, k, v
                )));
            }
        }
    }
    // r1^2 - r2^2 = 2 p_3 and r1^2 + r2^2 = -p_2 - 1/8
    let half_sum = (-&p2 - rat(1, 8)) / rat_int(2);
    let r1_sq = &half_sum + &p3;
    let r2_sq = &half_sum - &p3;
    let (mut r1, mut r2) = (quarter_sqrt(&r1_sq), quarter_sqrt(&r2_sq));
    if let (Some(a1), Some(a2)) = (&r1, &r2) {
        let p4_check = (a1 * a1 - rat(1, 16)) * (a2 * a2 - rat(1, 16));
        if p4_check != p4 {
            r1 = None;
            r2 = None;
        }
    } else {
        r1 = None;
        r2 = None;
    }
    Ok(S4Coefficients { p2, p3, p4, r1, r2 })
}

/// Power-of-two M with |lead| M^d > sum of the lower |c_i| M^i, so every
/// real root lies in (-M, M). Verified exactly; the slice's Cauchy bound
/// is astronomically loose because the low coefficients carry k^12.
fn root_bound(p: &UniPoly) -> Rat {
    let d = p.degree();
    let lead = p.coeff(d).abs();
    let mut m = Rat::one();
    loop {
        let mut tail = Rat::zero();
        let mut pw = Rat::one();
        for i in 0..d {
            tail += p.coeff(i).abs() * &pw;
            pw *= &m;
        }
        if lead.clone() * pw > tail {
            return m;
        }
        m *= rat_int(2);
    }
}

// Arithmetic in F_P for P = 2^61 - 1, used to find the residues of the
// slice's roots. P exceeds twice the certified real-root bound for every
// slice in range, so each integer root lifts to exactly one residue and
// the exact BigInt evaluation at the lift settles it.
mod fp {
    pub const P: u64 = (1 << 61) - 1;

    pub fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    pub fn add(a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= P { s - P } else { s }
    }

    pub fn sub(a: u64, b: u64) -> u64 {
        if a >= b { a - b } else { a + P - b }
    }

    pub fn pow(mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(a: u64) -> u64 {
        pow(a, P - 2)
    }

    /// Little-endian coefficients, no trailing zeros.
    pub type Poly = Vec<u64>;

    pub fn trim(mut p: Poly) -> Poly {
        while p.last() == Some(&0) {
            p.pop();
        }
        p
    }

    pub fn monic(p: &Poly) -> Poly {
        let s = inv(*p.last().unwrap());
        trim(p.iter().map(|&c| mul(c, s)).collect())
    }

    /// Remainder of a modulo monic m.
    pub fn rem(a: &Poly, m: &Poly) -> Poly {
        let d = m.len() - 1;
        let mut r = a.clone();
        while r.len() > d {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - d;
            if lead != 0 {
                for (i, &c) in m.iter().enumerate() {
                    r[shift + i] = sub(r[shift + i], mul(lead, c));
                }
            }
            r.pop();
        }
        trim(r)
    }

    pub fn mulrem(a: &Poly, b: &Poly, m: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = add(prod[i + j], mul(x, y));
            }
        }
        rem(&prod, m)
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
        while !b.is_empty() {
            let mb = monic(&b);
            let r = rem(&a, &mb);
            a = mb;
            b = r;
        }
        if a.is_empty() { a } else { monic(&a) }
    }

    pub fn divexact(a: &Poly, b: &Poly) -> Poly {
        let mb = monic(b);
        let d = mb.len() - 1;
        let mut r = a.clone();
        let mut q = vec![0u64; a.len().saturating_sub(d)];
        while r.len() > d {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - d;
            q[shift] = lead;
            if lead != 0 {
                for (i, &c) in mb.iter().enumerate() {
                    r[shift + i] = sub(r[shift + i], mul(lead, c));
                }
            }
            r.pop();
        }
        trim(q)
    }

    /// (x + a)^e modulo monic m.
    pub fn pow_linear(a: u64, e: u64, m: &Poly) -> Poly {
        let base = rem(&vec![a, 1], m);
        let mut acc = rem(&vec![1], m);
        for bit in (0..64).rev().skip_while(|&b| e >> b & 1 == 0) {
            acc = mulrem(&acc, &acc, m);
            if e >> bit & 1 == 1 {
                acc = mulrem(&acc, &base, m);
            }
        }
        acc
    }

    /// All roots in F_P of a nonzero polynomial, by gcd with x^P - x and
    /// deterministic-seed equal-degree splitting.
    pub fn roots(p: &Poly) -> Vec<u64> {
        let p = trim(p.clone());
        let mut out = Vec::new();
        if p.len() <= 1 {
            return out;
        }
        let m = monic(&p);
        // x^P mod m, then gcd(x^P - x, m) collects the distinct roots
        let xp = pow_linear(0, P, &m);
        let mut lin = xp;
        // subtract x
        if lin.len() < 2 {
            lin.resize(2, 0);
        }
        lin[1] = sub(lin[1], 1);
        let mut g = gcd(&trim(lin), &m);
        if g.len() >= 2 && g[0] == 0 {
            out.push(0);
            g = divexact(&g, &vec![0, 1]);
        }
        let mut stack = vec![g];
        let mut seed = 0x9e3779b97f4a7c15u64;
        while let Some(g) = stack.pop() {
            if g.len() <= 1 {
                continue;
            }
            if g.len() == 2 {
                out.push(sub(0, g[0]));
                continue;
            }
            // split on the quadratic-residue character of x + a
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = seed % P;
            let mut h = pow_linear(a, (P - 1) / 2, &g);
            if h.is_empty() {
                h = vec![0];
            }
            h[0] = sub(h[0], 1);
            let d = gcd(&trim(h), &g);
            if d.len() <= 1 || d.len() == g.len() {
                stack.push(g);
            } else {
                stack.push(divexact(&g, &d));
                stack.push(d);
            }
        }
        out.sort_unstable();
        out
    }
}

/// All integer roots v > floor_v of the univariate slice, via the root
/// residues mod 2^61 - 1 lifted into the certified real-root bound and
/// confirmed by exact evaluation.
fn integer_roots_above(fk: &UniPoly, floor_v: u64) -> Result<Vec<u64>> {
    if fk.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if fk.degree() == 0 {
        return Ok(vec![]);
    }
    let bound = root_bound(fk);
    let half = Rat::from_integer(big(fp::P as i64 - 1) / big(2));
    if bound > half {
        return Err(Error::BadParameters("slice root bound exceeds the lifting range".into()));
    }
    let pb = big(fp::P as i64);
    let slice: fp::Poly = fk
        .coeffs()
        .iter()
        .map(|c| c.to_integer().mod_floor(&pb).to_u64().unwrap())
        .collect();
    let mut out = Vec::new();
    for r in fp::roots(&slice) {
        // the unique lift into (-M, M) is r itself when r <= (P-1)/2 and
        // r - P (negative, never a valid v) otherwise
        let lift = Rat::from_integer(BigInt::from(r));
        if lift > half || lift >= bound {
            continue;
        }
        if r > floor_v && fk.eval(&lift).is_zero() {
            out.push(r);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Scan k in [k_lo, k_hi] for integer solutions v > 2k+1 of f(k, v) = 0,
/// in parallel blocks of 500 with a deterministic ordered merge.
pub fn scan_k_range(k_lo: u64, k_hi: u64) -> Result<Vec<(u64, u64)>> {
    if k_lo < 9 || k_lo > k_hi {
        return Err(Error::BadParameters(format!("scan needs 9 <= k_lo <= k_hi, got ({}, {})", k_lo, k_hi)));
    }
    let f = derive_f()?;
    let blocks: Vec<(u64, u64)> = (k_lo..=k_hi)
        .step_by(500)
        .map(|b| (b, (b + 499).min(k_hi)))
        .collect();
    let results: Vec<Result<Vec<(u64, u64)>>> = blocks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut found = Vec::new();
            for k in lo..=hi {
                let fk = f.at_k(&big(k as i64));
                for v in integer_roots_above(&fk, 2 * k + 1)? {
                    found.push((k, v));
                }
            }
            Ok(found)
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Residue classes mod p admitting no solution of f = 0: a k class c is
/// excluded iff f(c, v) != 0 mod p for every v mod p, and symmetrically
/// for v classes. Exact finite check over all p^2 pairs.
pub fn congruence_sieve(p: u64) -> Result<(Vec<u64>, Vec<u64>)> {
    if p < 5 {
        return Err(Error::BadParameters("sieve needs a prime p > 3".into()));
    }
    let f = derive_f()?;
    let mut zero_pair = vec![vec![false; p as usize]; p as usize];
    for k in 0..p {
        for v in 0..p {
            zero_pair[k as usize][v as usize] = f.eval_mod(k, v, p) == 0;
        }
    }
    let k_classes = (0..p)
        .filter(|&k| (0..p).all(|v| !zero_pair[k as usize][v as usize]))
        .collect();
    let v_classes = (0..p)
        .filter(|&v| (0..p).all(|k| !zero_pair[k as usize][v as usize]))
        .collect();
    Ok((k_classes, v_classes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivation_matches_table() {
        let f = derive_f().unwrap();
        assert_eq!(f.coeff(0, 0), big(-3408102864));
        assert_eq!(f.coeff(0, 11), big(45));
        assert_eq!(f.coeff(12, 0), big(65536));
        assert_eq!(f.coeff(12, 1), big(-16384));
        assert_eq!(f.deg_k(), 12);
        assert_eq!(f.deg_v(), 11);
    }

    #[test]
    fn residual_proportional_to_f() {
        // 64 (v-4)(v-5)^2(v-6)^2(v-7)^6 ((p2/2+1/8)^2 - p3^2 - p4) is a
        // fixed integer multiple of f(k, v)
        let f = derive_f().unwrap();
        let residual = |k: u64, v: u64| {
            let c = p_coeffs(k, v).unwrap();
            let e = (&c.p2 / rat_int(2) + rat(1, 8)).pow(2) - &c.p3 * &c.p3 - &c.p4;
            let vv = rat_int(v as i64);
            let d = rat_int(64)
                * (&vv - rat_int(4))
                * (&vv - rat_int(5)).pow(2)
                * (&vv - rat_int(6)).pow(2)
                * (&vv - rat_int(7)).pow(6);
            e * d
        };
        let fval = |k: u64, v: u64| f.eval_rat(&rat_int(k as i64), &rat_int(v as i64));
        let scale = residual(9, 30) / fval(9, 30);
        for &(k, v) in &[(10, 25), (17, 40), (123, 999), (40, 81)] {
            assert_eq!(residual(k, v), fval(k, v) * &scale, "({}, {})", k, v);
        }
    }

    #[test]
    fn p3_vanishes_on_trivial_lines() {
        let c = p_coeffs(12, 25).unwrap(); // v = 2k + 1
        assert!(c.p3.is_zero());
        let c = p_coeffs(12, 16).unwrap(); // v = k + 4
        assert!(c.p3.is_zero());
    }

    #[test]
    fn quarter_root_recovery() {
        // plant r1 = 3/4, r2 = 7/4 and solve back through the identity
        let (r1, r2) = (rat(3, 4), rat(7, 4));
        let p2 = rat(-1, 8) - &r1 * &r1 - &r2 * &r2;
        let p3 = (&r1 * &r1 - &r2 * &r2) / rat_int(2);
        let p4 = (&r1 * &r1 - rat(1, 16)) * (&r2 * &r2 - rat(1, 16));
        assert_eq!(p4, (&p2 / rat_int(2) + rat(1, 8)).pow(2) - &p3 * &p3);
        let half_sum = (-&p2 - rat(1, 8)) / rat_int(2);
        assert_eq!(quarter_sqrt(&(&half_sum + &p3)).unwrap(), r1);
        assert_eq!(quarter_sqrt(&(&half_sum - &p3)).unwrap(), r2);
        // breaking the unit gap by a quarter breaks the identity
        let p4_bad = (&r1 * &r1 - rat(1, 16)) * (&r2 * &r2 - rat(9, 16));
        assert_ne!(p4_bad, (&p2 / rat_int(2) + rat(1, 8)).pow(2) - &p3 * &p3);
    }

    #[test]
    fn planted_root_found() {
        // doctor the k = 17 slice so v = 1000 becomes a root
        let f = derive_f().unwrap();
        let fk = f.at_k(&big(17));
        let shift = fk.eval(&rat_int(1000));
        let doctored = &fk - &UniPoly::new(vec![shift]);
        let roots = integer_roots_above(&doctored, 35).unwrap();
        assert!(roots.contains(&1000));
    }

    #[test]
    fn small_scan_is_empty() {
        assert!(scan_k_range(9, 150).unwrap().is_empty());
    }

    #[test]
    fn sieve_matches_published_classes() {
        for (p, ks, vs) in crate::refdata::CONGRUENCE_CLASSES {
            let (got_k, got_v) = congruence_sieve(*p).unwrap();
            assert_eq!(got_k, *ks, "k classes mod {}", p);
            assert_eq!(got_v, *vs, "v classes mod {}", p);
        }
    }

    #[test]
    fn sieve_soundness_spot_checks() {
        for (p, ks, vs) in crate::refdata::CONGRUENCE_CLASSES {
            let f = derive_f().unwrap();
            for (reps, is_k) in [(ks, true), (vs, false)] {
                for &c in reps.iter() {
                    for j in 0..100u64 {
                        let other = 11 + 7 * j;
                        let (k, v) = if is_k { (c + p * j, other) } else { (other, c + p * j) };
                        assert_ne!(f.eval_mod(k, v, *p), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn parser_round_trips_structure() {
        let g = g_table().unwrap();
        assert_eq!(g.coeff(4, 1), big(2));
        assert_eq!(g.coeff(0, 0), big(764));
        assert_eq!(g.coeff(1, 3), big(-6));
        assert_eq!(g.deg_k(), 4);
        assert_eq!(g.deg_v(), 4);
    }
}
