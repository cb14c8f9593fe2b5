//! Sparse multivariate Laurent polynomials over the exact rationals.
//!
//! Variables are `x1, x2, ...` (1-based indices) plus one optional slack
//! variable `w` used by local expansions. Term maps are ordered, so equality,
//! display and serialization are canonical.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, rational_pow, Rational};

/// Exponents of a single monomial: sparse over the `x` variables plus the
/// slack exponent. No zero entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector {
    vars: BTreeMap<u32, i64>,
    slack: i64,
}

impl ExponentVector {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn var(i: u32, e: i64) -> Self {
        let mut ev = Self::default();
        ev.set(i, e);
        ev
    }

    pub fn slack(e: i64) -> Self {
        Self { vars: BTreeMap::new(), slack: e }
    }

    pub fn get(&self, i: u32) -> i64 {
        self.vars.get(&i).copied().unwrap_or(0)
    }

    pub fn slack_exp(&self) -> i64 {
        self.slack
    }

    pub fn set(&mut self, i: u32, e: i64) {
        assert!(i >= 1, "variable indices are 1-based");
        if e == 0 {
            self.vars.remove(&i);
        } else {
            self.vars.insert(i, e);
        }
    }

    pub fn set_slack(&mut self, e: i64) {
        self.slack = e;
    }

    pub fn is_unit(&self) -> bool {
        self.vars.is_empty() && self.slack == 0
    }

    /// Component-wise sum (monomial product).
    pub fn combine(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&i, &e) in &other.vars {
            out.set(i, out.get(i) + e);
        }
        out.slack += other.slack;
        out
    }

    pub fn iter_vars(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.vars.iter().map(|(&i, &e)| (i, e))
    }

    /// Total degree over the `x` variables (slack excluded).
    pub fn total_degree(&self) -> i64 {
        self.vars.values().sum()
    }

    pub fn max_var(&self) -> Option<u32> {
        self.vars.keys().next_back().copied()
    }

    pub fn without_var(&self, i: u32) -> Self {
        let mut out = self.clone();
        out.vars.remove(&i);
        out
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = Vec::new();
        for (&i, &e) in &self.vars {
            if e == 1 {
                parts.push(format!("x{i}"));
            } else {
                parts.push(format!("x{i}^{e}"));
            }
        }
        if self.slack != 0 {
            if self.slack == 1 {
                parts.push("w".to_string());
            } else {
                parts.push(format!("w^{}", self.slack));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A finite map from exponent vectors to nonzero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert(ExponentVector::unit(), c);
        }
        p
    }

    pub fn monomial(ev: ExponentVector, c: Rational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert(ev, c);
        }
        p
    }

    /// Convenience: the monomial `x_i^e`.
    pub fn var_pow(i: u32, e: i64) -> Self {
        Self::monomial(ExponentVector::var(i, e), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (ExponentVector, Rational)>>(iter: I) -> Self {
        let mut p = Self::default();
        for (ev, c) in iter {
            p.add_term(ev, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, ev: &ExponentVector) -> Rational {
        self.terms.get(ev).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant coefficient (all exponents zero).
    pub fn constant_coeff(&self) -> Rational {
        self.coeff(&ExponentVector::unit())
    }

    /// Some(c) iff the polynomial is the constant c.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&ExponentVector::unit()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn add_term(&mut self, ev: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(ev);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (ev, c) in &other.terms {
            out.add_term(ev.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.combine(eb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c;
        }
        out
    }

    pub fn mul_monomial(&self, ev: &ExponentVector, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::default();
        for (e, v) in &self.terms {
            out.terms.insert(e.combine(ev), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Largest `x` variable index that occurs, if any.
    pub fn max_var(&self) -> Option<u32> {
        self.terms.keys().filter_map(|ev| ev.max_var()).max()
    }

    /// Substitution `x_i <- c * w^e * x_j` with nonzero rational `c`.
    pub fn substitute_var(&self, i: u32, c: &Rational, j: u32, e: i64) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidInput(
                "substitution constant must be nonzero".into(),
            ));
        }
        if i == j {
            return Err(Error::InvalidInput(
                "substitution requires distinct variables".into(),
            ));
        }
        let mut out = Self::default();
        for (ev, coeff) in &self.terms {
            let d = ev.get(i);
            let mut nev = ev.without_var(i);
            nev.set(j, nev.get(j) + d);
            nev.set_slack(nev.slack_exp() + e * d);
            out.add_term(nev, coeff * rational_pow(c, d));
        }
        Ok(out)
    }

    /// Substitution `x_i <- x_j` (identify variables).
    pub fn substitute_var_equal(&self, i: u32, j: u32) -> Self {
        self.substitute_var(i, &Rational::one(), j, 0)
            .expect("c = 1 is nonzero")
    }

    /// Coefficients `a_0..a_order` of the expansion in powers of `(w - 1)`.
    /// Requires all slack exponents nonnegative; `D_w^k p |_{w=1} = k! a_k`.
    pub fn slack_taylor(&self, order: usize) -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(); order + 1];
        for (ev, c) in &self.terms {
            let s = ev.slack_exp();
            assert!(s >= 0, "slack exponents must be cleared to be nonnegative");
            let mut base = ev.clone();
            base.set_slack(0);
            let top = (s as usize).min(order);
            for m in 0..=top {
                let b = Rational::from_integer(binomial(s, m as u64));
                out[m].add_term(base.clone(), c * b);
            }
        }
        out
    }

    /// Degree of a homogeneous polynomial over the `x` variables.
    pub fn homogeneous_degree(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut deg: Option<i64> = None;
        for ev in self.terms.keys() {
            assert!(ev.slack_exp() == 0, "homogeneity is over the x variables");
            let d = ev.total_degree();
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(deg.unwrap())
    }

    /// Range of exponents of `x_v`, as (min, max); None when zero.
    pub fn degree_range_in(&self, v: u32) -> Option<(i64, i64)> {
        let mut range: Option<(i64, i64)> = None;
        for ev in self.terms.keys() {
            let d = ev.get(v);
            range = Some(match range {
                None => (d, d),
                Some((lo, hi)) => (lo.min(d), hi.max(d)),
            });
        }
        range
    }

    /// Splits into buckets by the exponent of `x_v`, stripping `x_v`.
    pub fn bucket_by_var(&self, v: u32) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (ev, c) in &self.terms {
            let d = ev.get(v);
            out.entry(d)
                .or_default()
                .add_term(ev.without_var(v), c.clone());
        }
        out
    }

    /// Exact division by `(1 - x_j/x_i)` for `i < j`, if divisible.
    ///
    /// Synthetic division in `x_j` treating `x_i` as a coefficient; `p` is
    /// divisible iff it vanishes under `x_j <- x_i`.
    pub fn try_divide_factor(&self, i: u32, j: u32) -> Option<LaurentPoly> {
        assert!(i < j, "factor pairs are oriented i < j");
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        if !self.substitute_var_equal(j, i).is_zero() {
            return None;
        }
        let buckets = self.bucket_by_var(j);
        let (&kmin, _) = buckets.first_key_value().unwrap();
        let (&kmax, _) = buckets.last_key_value().unwrap();
        // p_k = q_k - x_i^{-1} q_{k-1}  =>  q_k = p_k + x_i^{-1} q_{k-1}
        let inv_xi = ExponentVector::var(i, -1);
        let mut quotient = LaurentPoly::zero();
        let mut prev = LaurentPoly::zero();
        for k in kmin..=kmax {
            let pk = buckets.get(&k).cloned().unwrap_or_default();
            let qk = pk.add(&prev.mul_monomial(&inv_xi, &Rational::one()));
            if k < kmax {
                quotient = quotient.add(&qk.mul_monomial(&ExponentVector::var(j, k), &Rational::one()));
            } else {
                debug_assert!(qk.is_zero(), "remainder after substitution test passed");
            }
            prev = qk;
        }
        Some(quotient)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (ev, c) in &self.terms {
            let neg = crate::rational::is_negative(c);
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if ev.is_unit() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{ev}")?;
            } else {
                write!(f, "{mag}*{ev}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn x(i: u32, e: i64) -> LaurentPoly {
        LaurentPoly::var_pow(i, e)
    }

    // x_1/x_2 as a single monomial
    fn x1_over_x2() -> LaurentPoly {
        let mut ev = ExponentVector::var(1, 1);
        ev.set(2, -1);
        LaurentPoly::monomial(ev, Rational::one())
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = x1_over_x2();
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn distributed_product() {
        // (1 - x1/x2)(1 - x2/x1) = 2 - x1/x2 - x2/x1
        let one = LaurentPoly::one();
        let a = one.sub(&x1_over_x2());
        let b = one.sub(&x(2, 1).mul(&x(1, -1)));
        let prod = a.mul(&b);
        let mut expect = LaurentPoly::constant(rat_int(2));
        expect = expect.sub(&x1_over_x2());
        expect = expect.sub(&x(2, 1).mul(&x(1, -1)));
        assert_eq!(prod, expect);
    }

    #[test]
    fn multiplicative_identity() {
        let p = x(1, 2).add(&x(3, -1));
        assert_eq!(p.mul(&LaurentPoly::one()), p);
    }

    #[test]
    fn substitute_examples() {
        // x1/x2 with x1 <- w*x2 gives w
        let p = x1_over_x2();
        let s = p.substitute_var(1, &Rational::one(), 2, 1).unwrap();
        assert_eq!(s, LaurentPoly::monomial(ExponentVector::slack(1), Rational::one()));

        // x1^-1 * x3 with x1 <- x3 gives 1
        let q = x(1, -1).mul(&x(3, 1));
        let s = q.substitute_var(1, &Rational::one(), 3, 0).unwrap();
        assert_eq!(s, LaurentPoly::one());

        // variable absent: unchanged
        let r = x(2, 2);
        assert_eq!(r.substitute_var(1, &Rational::one(), 2, 0).unwrap(), r);

        // c = 0 rejected
        assert!(p.substitute_var(1, &Rational::zero(), 2, 0).is_err());
    }

    #[test]
    fn slack_taylor_examples() {
        // w^2 -> [1, 2, 1]
        let p = LaurentPoly::monomial(ExponentVector::slack(2), Rational::one());
        let coeffs = p.slack_taylor(2);
        assert_eq!(coeffs[0], LaurentPoly::one());
        assert_eq!(coeffs[1], LaurentPoly::constant(rat_int(2)));
        assert_eq!(coeffs[2], LaurentPoly::one());

        // x2/x3 * w, order 1 -> [x2/x3, x2/x3]
        let m = x(2, 1).mul(&x(3, -1));
        let mut ev = ExponentVector::var(2, 1);
        ev.set(3, -1);
        ev.set_slack(1);
        let p = LaurentPoly::monomial(ev, Rational::one());
        let coeffs = p.slack_taylor(1);
        assert_eq!(coeffs[0], m);
        assert_eq!(coeffs[1], m);

        // constants
        let coeffs = LaurentPoly::one().slack_taylor(3);
        assert_eq!(coeffs[0], LaurentPoly::one());
        assert!(coeffs[1].is_zero() && coeffs[2].is_zero() && coeffs[3].is_zero());
    }

    #[test]
    fn slack_taylor_recombines() {
        // sum a_k (w-1)^k reproduces p when order covers the slack degree
        let mut ev = ExponentVector::var(2, 1);
        ev.set_slack(3);
        let p = LaurentPoly::monomial(ev, rat_int(5)).add(&LaurentPoly::monomial(
            ExponentVector::slack(1),
            rat_int(-2),
        ));
        let coeffs = p.slack_taylor(3);
        let w_minus_1 = LaurentPoly::monomial(ExponentVector::slack(1), Rational::one())
            .sub(&LaurentPoly::one());
        let mut acc = LaurentPoly::zero();
        for (k, a) in coeffs.iter().enumerate() {
            acc = acc.add(&a.mul(&w_minus_1.pow(k as u32)));
        }
        assert_eq!(acc, p);
    }

    #[test]
    fn homogeneous_degree_examples() {
        let p = x1_over_x2().add(&x(3, 1).mul(&x(1, -1)));
        assert_eq!(p.homogeneous_degree().unwrap(), 0);
        assert_eq!(x(1, 1).mul(&x(2, 1)).homogeneous_degree().unwrap(), 2);
        let mixed = x(1, 1).add(&x(1, 1).mul(&x(2, 1)));
        assert!(matches!(mixed.homogeneous_degree(), Err(Error::NotHomogeneous)));
        assert!(matches!(LaurentPoly::zero().homogeneous_degree(), Err(Error::ZeroInput)));
    }

    #[test]
    fn homogeneity_multiplicative() {
        let p = x(1, 2).mul(&x(2, -1)); // degree 1
        let q = x(3, 4); // degree 4
        assert_eq!(
            p.mul(&q).homogeneous_degree().unwrap(),
            p.homogeneous_degree().unwrap() + q.homogeneous_degree().unwrap()
        );
    }

    #[test]
    fn divide_factor_examples() {
        // (1 - x2/x1) / (1 - x2/x1) = 1
        let f = LaurentPoly::one().sub(&x(2, 1).mul(&x(1, -1)));
        assert_eq!(f.try_divide_factor(1, 2).unwrap(), LaurentPoly::one());

        // 2 - x2/x1 is not divisible
        let g = LaurentPoly::constant(rat_int(2)).sub(&x(2, 1).mul(&x(1, -1)));
        assert!(g.try_divide_factor(1, 2).is_none());

        // (1 - x2/x1) * x2/x3: quotient x2/x3, verified by multiplying back
        let m = x(2, 1).mul(&x(3, -1));
        let p = f.mul(&m);
        let q = p.try_divide_factor(1, 2).unwrap();
        assert_eq!(q, m);
        assert_eq!(q.mul(&f), p);
    }
}
