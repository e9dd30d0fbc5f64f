//! Monic Hermite polynomials H_s, certified enclosures of their zeros
//! xi_i, and lower bounds D_i = |H_{s-1}(xi_i)| used throughout the
//! threshold derivations.

use crate::error::{Error, Result};
use crate::interval::RatInterval;
use crate::rat::{rat, rat_int, Rat};
use crate::unipoly::{CertifiedRoot, UniPoly};
use num::{One, Zero};
use std::collections::BTreeMap;

/// H_0 = 1, H_1 = x, H_s = x H_{s-1} - (s-1) H_{s-2}; monic of degree s.
pub fn hermite(s: u32) -> UniPoly {
    let mut prev = UniPoly::one();
    if s == 0 {
        return prev;
    }
    let mut cur = UniPoly::x();
    for m in 2..=s {
        let next = &(&UniPoly::x() * &cur) - &prev.scale(&rat_int(m as i64 - 1));
        prev = cur;
        cur = next;
    }
    cur
}

/// Certified zero data for one strength index s: the zeros xi_i indexed
/// i = -floor(s/2)..floor(s/2) (index 0 present iff s is odd) and the
/// per-zero lower bounds on |H_{s-1}(xi_i)|.
#[derive(Debug, Clone)]
pub struct HermiteTable {
    pub s: u32,
    pub poly: UniPoly,
    pub zeros: BTreeMap<i32, CertifiedRoot>,
    pub d_bounds: BTreeMap<i32, Rat>,
}

impl HermiteTable {
    pub fn half(&self) -> i32 {
        (self.s / 2) as i32
    }

    pub fn zero(&self, i: i32) -> &CertifiedRoot {
        &self.zeros[&i]
    }

    pub fn xi_sq(&self, i: i32) -> RatInterval {
        self.zeros[&i].square()
    }

    pub fn d_bound(&self, i: i32) -> &Rat {
        &self.d_bounds[&i.abs()]
    }

    pub fn indices(&self) -> Vec<i32> {
        self.zeros.keys().copied().collect()
    }
}

/// Default isolation width: the published table quotes up to 11
/// decimals, so enclosures are driven well below that.
pub fn default_width() -> Rat {
    rat(1, 1_000_000_000_000_000)
}

/// Isolate the zeros of H_s to the requested width and certify the
/// D_i lower bounds by interval evaluation of H_{s-1}.
pub fn build_table(s: u32, width: &Rat) -> Result<HermiteTable> {
    if s < 1 {
        return Err(Error::BadParameters("build_table needs s >= 1".into()));
    }
    let poly = hermite(s);
    let prev = hermite(s - 1);
    let roots = poly.isolate_real_roots(width)?;
    if roots.len() != s as usize {
        return Err(Error::CertificationFailed(format!(
            "H_{} must have {} real zeros, found {}",
            s,
            s,
            roots.len()
        )));
    }
    let half = (s / 2) as i32;
    let odd = s % 2 == 1;
    let mut zeros = BTreeMap::new();
    // take the positive-side roots as computed and mirror them exactly,
    // so the xi_{-i} = -xi_i invariant holds by construction
    for (pos, root) in roots.into_iter().enumerate() {
        let i = pos as i32 - half + if !odd && pos as i32 >= half { 1 } else { 0 };
        if i > 0 {
            let mut r = root;
            r.index = i;
            zeros.insert(i, r);
        }
    }
    if odd {
        zeros.insert(0, CertifiedRoot::exact(Rat::zero(), poly.clone(), 0));
    }
    for i in 1..=half {
        let neg = zeros[&i].negated();
        zeros.insert(-i, neg);
    }
    let mut d_bounds = BTreeMap::new();
    for i in 0..=half {
        if i == 0 && !odd {
            continue;
        }
        let enc = zeros[&i].enclosure.clone();
        let val = prev.eval_interval(&enc);
        let low = val.mig();
        if low.is_zero() {
            return Err(Error::CertificationFailed(format!(
                "interlacing bound degenerate at s={}, i={}",
                s, i
            )));
        }
        d_bounds.insert(i, low);
    }
    Ok(HermiteTable { s, poly, zeros, d_bounds })
}

/// One certified inequality clause on the zero spacings.
#[derive(Debug, Clone, serde::Serialize)]
pub struct XiClause {
    pub description: String,
    pub passed: bool,
}

/// Certify the zero-spacing estimates used by the threshold formulas.
/// Any failed clause is a hard error: the downstream beta_0 derivation
/// would be invalid.
pub fn verify_xi_estimates(s: u32, table: &HermiteTable) -> Result<Vec<XiClause>> {
    assert_eq!(table.s, s);
    let mut clauses = Vec::new();
    let three = rat_int(3);
    let mut push = |desc: String, ok: bool| {
        clauses.push(XiClause { description: desc, passed: ok });
    };
    match s {
        4 => {
            // xi_2^2 - xi_1^2 = 2*sqrt(6) exactly: the squared zeros are
            // the roots of y^2 - 6y + 3, whose root gap squared is
            // 6^2 - 4*3 = 24
            let gap = table.xi_sq(2) - table.xi_sq(1);
            let gap_sq = gap.clone() * gap.clone();
            push(
                "xi_2^2 - xi_1^2 = 2*sqrt(6) (gap^2 encloses 24 = 6^2 - 4*3)".into(),
                gap_sq.contains(&rat_int(24)) && gap_sq.width() < rat(1, 1_000_000),
            );
            let ratio = gap.scale(&rat(1, 3));
            push("(xi_2^2 - xi_1^2)/3 < 2".into(), *ratio.hi() < rat_int(2));
        }
        6 => {
            let a1 = (table.xi_sq(2) - table.xi_sq(1)).scale(&rat(1, 3));
            push(
                "1.0 < (xi_2^2 - xi_1^2)/3 < 1.1".into(),
                *a1.lo() > rat_int(1) && *a1.hi() < rat(11, 10),
            );
            let a2 = (table.xi_sq(3) - table.xi_sq(1)).scale(&rat(1, 3));
            push(
                "3.5 < (xi_3^2 - xi_1^2)/3 < 3.6".into(),
                *a2.lo() > rat(35, 10) && *a2.hi() < rat(36, 10),
            );
            let num = table.xi_sq(3) - table.xi_sq(1);
            let den = table.xi_sq(2) - table.xi_sq(1);
            let q = num.div(&den)?;
            push(
                "3.34634 < (xi_3^2 - xi_1^2)/(xi_2^2 - xi_1^2) < 3.34635".into(),
                *q.lo() > rat(334634, 100000) && *q.hi() < rat(334635, 100000),
            );
        }
        _ if s % 2 == 1 && s >= 5 => {
            // the factor (1 - xi_1^2/3) in the odd-s threshold must be
            // positive, which needs xi_1^2 < 3 (not sqrt(3): for s = 5,
            // xi_1^2 = 5 - sqrt(10) = 1.83.. already exceeds sqrt(3))
            let sq = table.xi_sq(1);
            push("xi_1^2 < 3".into(), *sq.hi() < three);
        }
        _ if s % 2 == 0 && s >= 8 => {
            let gap = table.xi_sq(2) - table.xi_sq(1);
            push("xi_2^2 - xi_1^2 < 3".into(), *gap.hi() < three);
        }
        _ => {
            return Err(Error::BadParameters(format!(
                "no zero-spacing estimate is defined for s = {}",
                s
            )))
        }
    }
    if let Some(fail) = clauses.iter().find(|c| !c.passed) {
        return Err(Error::CertificationFailed(format!(
            "s = {}: {}",
            s, fail.description
        )));
    }
    Ok(clauses)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ZeroCheck {
    pub s: u32,
    pub i: i32,
    pub printed_xi: String,
    pub xi_agrees: bool,
    pub printed_d: String,
    pub d_certified: bool,
    pub enclosure_width_ok: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct TablesReport {
    /// per-s: does the printed coefficient row match the recurrence?
    pub rows_match: Vec<(u32, bool)>,
    /// printed entries that disagree with the recurrence (s, power,
    /// printed, recurrence) — expected to name exactly the s = 8, x^6 one
    pub discrepancies: Vec<(u32, usize, String, String)>,
    pub zero_checks: Vec<ZeroCheck>,
    pub xi_clauses: Vec<XiClause>,
    pub all_ok: bool,
}

fn printed_ulp(s: &str) -> Rat {
    match s.split_once('.') {
        Some((_, frac)) => rat(1, 10i64.pow(frac.len() as u32)),
        None => Rat::one(),
    }
}

/// Reproduce the published table: recurrence vs printed rows (the s = 8
/// misprint is reported, not corrected), printed zero decimals against
/// certified enclosures at their printed precision, printed D values as
/// certified lower bounds, and the zero-spacing clauses for s = 4..9.
pub fn reproduce_tables(width: &Rat) -> Result<TablesReport> {
    let mut rows_match = Vec::new();
    let mut discrepancies = Vec::new();
    for (s, coeffs) in crate::refdata::HERMITE_ROWS {
        let computed = hermite(*s);
        let mut row_ok = true;
        for (pow, printed) in coeffs.iter().enumerate() {
            let c = computed.coeff(pow);
            if c != rat_int(*printed) {
                row_ok = false;
                discrepancies.push((*s, pow, printed.to_string(), crate::rat::to_decimal(&c, 0)));
            }
        }
        rows_match.push((*s, row_ok));
    }
    // the single expected misprint
    let expected_misprint = vec![(8u32, 6usize)];
    let found: Vec<(u32, usize)> = discrepancies.iter().map(|(s, p, _, _)| (*s, *p)).collect();
    let mut all_ok = found == expected_misprint;
    let mut zero_checks = Vec::new();
    let mut tables: BTreeMap<u32, HermiteTable> = BTreeMap::new();
    for (s, i, xi_str, d_str) in crate::refdata::HERMITE_ZERO_TABLE {
        let table = match tables.entry(*s) {
            std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::btree_map::Entry::Vacant(e) => e.insert(build_table(*s, width)?),
        };
        let enc = &table.zero(*i).enclosure;
        let ulp = printed_ulp(xi_str);
        let xi = crate::rat::parse_decimal(xi_str);
        let xi_agrees = *enc.lo() > &xi - &ulp && *enc.hi() < &xi + &ulp;
        let d_ulp = printed_ulp(d_str);
        let d = crate::rat::parse_decimal(d_str);
        let d_low = table.d_bound(*i);
        // printed D is a rounded-down certified lower bound; boundary
        // cases where D equals the printed value exactly (s = 3: D = 2)
        // are settled algebraically via gcd(H_{s-1}^2 - D^2, H_s)
        let d_certified = if d <= *d_low {
            *d_low < &d + &d_ulp * rat_int(10)
        } else {
            let prev = hermite(*s - 1);
            let q = &(&prev * &prev) - &UniPoly::new(vec![&d * &d]);
            let g = q.gcd(&table.poly);
            g.degree() > 0
                && (g.eval(enc.lo()) * g.eval(enc.hi())) <= Rat::zero()
        };
        let enclosure_width_ok = enc.width() <= rat(1, 100_000_000_000);
        all_ok &= xi_agrees && d_certified && enclosure_width_ok;
        zero_checks.push(ZeroCheck {
            s: *s,
            i: *i,
            printed_xi: xi_str.to_string(),
            xi_agrees,
            printed_d: d_str.to_string(),
            d_certified,
            enclosure_width_ok,
        });
    }
    let mut xi_clauses = Vec::new();
    for s in 4..=9 {
        let table = match tables.entry(s) {
            std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::btree_map::Entry::Vacant(e) => e.insert(build_table(s, width)?),
        };
        xi_clauses.extend(verify_xi_estimates(s, table)?);
    }
    all_ok &= xi_clauses.iter().all(|c| c.passed);
    Ok(TablesReport { rows_match, discrepancies, zero_checks, xi_clauses, all_ok })
}

/// H_s' = s * H_{s-1}, checked as an exact polynomial identity.
pub fn derivative_identity_check(s: u32) -> bool {
    let hs = hermite(s);
    let prev = hermite(s - 1);
    hs.derivative() == prev.scale(&rat_int(s as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::parse_decimal;
    use num::Signed;

    #[test]
    fn recurrence_small_cases() {
        assert_eq!(hermite(1), UniPoly::x());
        assert_eq!(hermite(6), UniPoly::from_int_coeffs(&[-15, 0, 45, 0, -15, 0, 1]));
        // the recurrence value for s = 8 (x^6 coefficient -28, not the
        // misprinted -21)
        assert_eq!(
            hermite(8),
            UniPoly::from_int_coeffs(&[105, 0, -420, 0, 210, 0, -28, 0, 1])
        );
    }

    #[test]
    fn table_s5() {
        let t = build_table(5, &default_width()).unwrap();
        // xi_2 = sqrt(5 + sqrt(10)) = 2.8570..., D_2 >= 20.64
        let xi2 = parse_decimal("2.8570");
        assert!((t.zero(2).enclosure.mid() - xi2).abs() < parse_decimal("0.0001"));
        assert!(*t.d_bound(2) >= parse_decimal("20.64"));
        // odd s: index 0 zero is exactly 0, with |H_4(0)| = 3
        assert!(t.zero(0).enclosure.is_point());
        assert!(*t.d_bound(0) >= rat_int(3));
        // mirrored enclosures
        assert_eq!(t.zero(-2).enclosure, -t.zero(2).enclosure.clone());
    }

    #[test]
    fn table_s6_eleven_decimals() {
        let t = build_table(6, &default_width()).unwrap();
        let xi1 = parse_decimal("0.61670659019");
        assert!(t.zero(1).enclosure.contains(&xi1) || (t.zero(1).enclosure.mid() - &xi1).abs() < parse_decimal("0.00000000001"));
    }

    #[test]
    fn table_s3() {
        let t = build_table(3, &default_width()).unwrap();
        // zeros {-sqrt(3), 0, sqrt(3)}; |H_2(0)| = 1
        assert!(t.zero(0).enclosure.is_point());
        assert_eq!(*t.d_bound(0), rat_int(1));
        let sq = t.xi_sq(1);
        assert!(sq.contains(&rat_int(3)));
    }

    #[test]
    fn xi_estimates() {
        for s in [4u32, 5, 6, 7, 9] {
            let t = build_table(s, &default_width()).unwrap();
            verify_xi_estimates(s, &t).unwrap();
        }
        let t8 = build_table(8, &default_width()).unwrap();
        verify_xi_estimates(8, &t8).unwrap();
    }

    #[test]
    fn s5_xi1_sq_below_3() {
        // exact: xi_1^2 = 5 - sqrt(10) < 3 but > sqrt(3); the "< 3"
        // form is the one the thresholds rely on
        let t = build_table(5, &default_width()).unwrap();
        let sq = t.xi_sq(1);
        assert!(*sq.hi() < rat_int(3));
        assert!(*sq.lo() > parse_decimal("1.73206"));
    }

    #[test]
    fn s4_ratio_value() {
        // (xi_2^2 - xi_1^2)/3 = sqrt(8/3) = 1.63299...
        let t = build_table(4, &default_width()).unwrap();
        let gap = (t.xi_sq(2) - t.xi_sq(1)).scale(&rat(1, 3));
        assert!((gap.mid() - parse_decimal("1.632993")).abs() < parse_decimal("0.000001"));
    }

    #[test]
    fn derivative_identity() {
        for s in [1u32, 2, 6, 9, 12] {
            assert!(derivative_identity_check(s));
        }
    }

    #[test]
    fn interlacing_gives_positive_bounds() {
        for s in 2..=9u32 {
            let t = build_table(s, &default_width()).unwrap();
            for (_, d) in &t.d_bounds {
                assert!(*d > Rat::zero());
            }
        }
    }

    #[test]
    fn published_table_reproduces() {
        let rep = reproduce_tables(&default_width()).unwrap();
        assert!(rep.all_ok, "{:?}", rep);
        assert_eq!(rep.discrepancies.len(), 1);
        let (s, pow, printed, computed) = &rep.discrepancies[0];
        assert_eq!((*s, *pow), (8, 6));
        assert_eq!(printed, "-21");
        assert_eq!(computed, "-28");
    }
}
