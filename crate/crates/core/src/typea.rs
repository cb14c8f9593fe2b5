//! Type A rational functions: a Laurent polynomial numerator over a product
//! of factors `(1 - x_j/x_i)^q` with `i < j`, kept in reduced form.
//!
//! The reduced canonical form makes equality decidable by structural
//! comparison: factors for distinct pairs are non-associate irreducibles in
//! the Laurent ring, so numerator and multiplicity map are unique.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::forest::Forest;
use crate::laurent::{ExponentVector, LaurentPoly};
use crate::rational::Rational;

/// The canonical denominator factor for the pair `(i, j)`, `i < j`:
/// `1 - x_j/x_i`.
pub fn factor_poly(i: u32, j: u32) -> LaurentPoly {
    assert!(i < j);
    let mut ev = ExponentVector::var(j, 1);
    ev.set(i, -1);
    LaurentPoly::one().sub(&LaurentPoly::monomial(ev, Rational::one()))
}

/// The multiset of denominator pairs of a function; the graph `H` carving out
/// the subclass with poles along `H` only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PoleProfile {
    pub pairs: BTreeMap<(u32, u32), u32>,
}

impl PoleProfile {
    /// Profile after identifying `i` with `j` (vertex `i` disappears).
    /// Multiplicities of merged pairs add, which upper-bounds the true
    /// contracted multiplicities.
    pub fn contract(&self, i: u32, j: u32) -> PoleProfile {
        let mut out = PoleProfile::default();
        for (&(a, b), &m) in &self.pairs {
            let na = if a == i { j } else { a };
            let nb = if b == i { j } else { b };
            if na == nb {
                continue;
            }
            let key = (na.min(nb), na.max(nb));
            *out.pairs.entry(key).or_insert(0) += m;
        }
        out
    }

    /// True when every pair occurs in `other` with at least this multiplicity.
    pub fn subset_of(&self, other: &PoleProfile) -> bool {
        self.pairs
            .iter()
            .all(|(k, &m)| other.pairs.get(k).copied().unwrap_or(0) >= m)
    }
}

/// A rational function of type A in reduced canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TypeARational {
    num: LaurentPoly,
    den: BTreeMap<(u32, u32), u32>,
}

impl Default for TypeARational {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let a: Vec<_> = self.terms().collect();
        let b: Vec<_> = other.terms().collect();
        a.cmp(&b)
    }
}

impl TypeARational {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        Self { num, den: BTreeMap::new() }
    }

    /// Canonicalizes a numerator over raw factors `(a, b, mult)` standing for
    /// `(1 - x_b/x_a)^mult` in the denominator, any orientation. Reoriented
    /// via `1 - x_b/x_a = (-x_b/x_a)(1 - x_a/x_b)`, then reduced.
    pub fn normalize(num: LaurentPoly, raw: &[(u32, u32, u32)]) -> Self {
        let mut n = num;
        let mut den: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for &(a, b, m) in raw {
            assert!(a != b, "factor endpoints must differ");
            if m == 0 {
                continue;
            }
            if a < b {
                *den.entry((a, b)).or_insert(0) += m;
            } else {
                // 1/(1 - x_b/x_a)^m = (-x_a/x_b)^m / (1 - x_a/x_b)^m, b < a
                *den.entry((b, a)).or_insert(0) += m;
                let mut ev = ExponentVector::var(a, m as i64);
                ev.set(b, -(m as i64));
                let sign = if m % 2 == 0 { Rational::one() } else { -Rational::one() };
                n = n.mul_monomial(&ev, &sign);
            }
        }
        let mut out = Self { num: n, den };
        out.reduce();
        out
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let pairs: Vec<(u32, u32)> = self.den.keys().copied().collect();
        for (i, j) in pairs {
            while self.den.get(&(i, j)).copied().unwrap_or(0) > 0 {
                match self.num.try_divide_factor(i, j) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&(i, j)).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&(i, j));
                        }
                        if self.num.is_zero() {
                            self.den.clear();
                            return;
                        }
                    }
                    None => break,
                }
            }
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<(u32, u32), u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn pole_profile(&self) -> PoleProfile {
        PoleProfile { pairs: self.den.clone() }
    }

    /// Multiplicity of the pole at `x_i = x_j` (unordered pair).
    pub fn pole_multiplicity(&self, i: u32, j: u32) -> u32 {
        let key = (i.min(j), i.max(j));
        self.den.get(&key).copied().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Largest variable index occurring in numerator or denominator.
    pub fn max_var(&self) -> Option<u32> {
        let from_den = self.den.keys().map(|&(_, j)| j).max();
        match (self.num.max_var(), from_den) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    /// True when the function is homogeneous of degree 0 over the `x`
    /// variables. Denominator factors are degree 0, so only the numerator
    /// grading matters.
    pub fn is_homogeneous_zero(&self) -> bool {
        if self.num.is_zero() {
            return true;
        }
        matches!(self.num.homogeneous_degree(), Ok(0))
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_monomial(&self, ev: &ExponentVector, c: &Rational) -> Self {
        let mut out = Self { num: self.num.mul_monomial(ev, c), den: self.den.clone() };
        out.reduce();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (&k, &m) in &other.den {
            *den.entry(k).or_insert(0) += m;
        }
        let mut out = Self { num: self.num.mul(&other.num), den };
        out.reduce();
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut den: BTreeMap<(u32, u32), u32> = self.den.clone();
        for (&k, &m) in &other.den {
            let e = den.entry(k).or_insert(0);
            *e = (*e).max(m);
        }
        let mut num_a = self.num.clone();
        let mut num_b = other.num.clone();
        for (&(i, j), &m) in &den {
            let ma = self.den.get(&(i, j)).copied().unwrap_or(0);
            let mb = other.den.get(&(i, j)).copied().unwrap_or(0);
            if m > ma {
                num_a = num_a.mul(&factor_poly(i, j).pow(m - ma));
            }
            if m > mb {
                num_b = num_b.mul(&factor_poly(i, j).pow(m - mb));
            }
        }
        let mut out = Self { num: num_a.add(&num_b), den };
        out.reduce();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `epsilon(D)`: the product of `1/(1 - x_i/x_j)` over the edges
    /// `i -> j` of the forest.
    pub fn from_epsilon(forest: &Forest) -> Self {
        let raw: Vec<(u32, u32, u32)> = forest
            .edges()
            .into_iter()
            .map(|(child, parent)| (parent, child, 1))
            .collect();
        Self::normalize(LaurentPoly::one(), &raw)
    }
}

impl fmt::Display for TypeARational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, " / ")?;
        let mut first = true;
        for (&(i, j), &m) in &self.den {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if m == 1 {
                write!(f, "(1-x{j}/x{i})")?;
            } else {
                write!(f, "(1-x{j}/x{i})^{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::Tree;
    use crate::rational::rat_int;

    fn mono(pairs: &[(u32, i64)]) -> LaurentPoly {
        let mut ev = ExponentVector::unit();
        for &(i, e) in pairs {
            ev.set(i, ev.get(i) + e);
        }
        LaurentPoly::monomial(ev, Rational::one())
    }

    #[test]
    fn normalize_reorients() {
        // 1/(1 - x1/x2) = -x2/x1 / (1 - x2/x1)
        let f = TypeARational::normalize(LaurentPoly::one(), &[(2, 1, 1)]);
        assert_eq!(f.denominator().get(&(1, 2)), Some(&1));
        assert_eq!(f.numerator(), &mono(&[(2, 1), (1, -1)]).neg());
    }

    #[test]
    fn normalize_cancels() {
        let num = factor_poly(1, 2);
        let f = TypeARational::normalize(num, &[(1, 2, 1)]);
        assert_eq!(f, TypeARational::one());
    }

    #[test]
    fn normalize_identity() {
        let f = TypeARational::normalize(LaurentPoly::one(), &[]);
        assert_eq!(f, TypeARational::one());
    }

    #[test]
    fn normalize_idempotent() {
        let f = TypeARational::normalize(mono(&[(3, 1), (1, -1)]), &[(2, 1, 2), (1, 3, 1)]);
        let raw: Vec<(u32, u32, u32)> =
            f.denominator().iter().map(|(&(i, j), &m)| (i, j, m)).collect();
        let again = TypeARational::normalize(f.numerator().clone(), &raw);
        assert_eq!(f, again);
    }

    #[test]
    fn arith_examples() {
        let f = TypeARational::normalize(LaurentPoly::one(), &[(1, 2, 1)]);
        // F + (-F) = 0
        assert!(f.add(&f.neg()).is_zero());
        // 1/(1-x2/x1) * (1-x2/x1) = 1
        let g = TypeARational::from_laurent(factor_poly(1, 2));
        assert_eq!(f.mul(&g), TypeARational::one());
        // 1/(1-x2/x1) + (x2/x1)/(1-x2/x1) = (1+x2/x1)/(1-x2/x1), still reduced
        let h = TypeARational::normalize(mono(&[(2, 1), (1, -1)]), &[(1, 2, 1)]);
        let s = f.add(&h);
        assert_eq!(s.denominator().get(&(1, 2)), Some(&1));
        assert_eq!(s.numerator(), &LaurentPoly::one().add(&mono(&[(2, 1), (1, -1)])));
    }

    #[test]
    fn epsilon_examples() {
        // single edge 2 -> 1
        let d = Forest::from_trees(vec![Tree::node(1, vec![Tree::leaf(2)])]).unwrap();
        let eps = TypeARational::from_epsilon(&d);
        assert_eq!(eps, TypeARational::normalize(LaurentPoly::one(), &[(1, 2, 1)]));

        // edgeless forest
        let empty = Forest::from_trees(vec![]).unwrap();
        assert_eq!(TypeARational::from_epsilon(&empty), TypeARational::one());

        // chain 3 -> 2 -> 1
        let chain = Forest::from_trees(vec![Tree::node(
            1,
            vec![Tree::node(2, vec![Tree::leaf(3)])],
        )])
        .unwrap();
        let eps = TypeARational::from_epsilon(&chain);
        assert_eq!(
            eps,
            TypeARational::normalize(LaurentPoly::one(), &[(1, 2, 1), (2, 3, 1)])
        );
    }

    #[test]
    fn profile_contract_and_subset() {
        let f = TypeARational::normalize(LaurentPoly::one(), &[(1, 2, 1), (2, 3, 1)]);
        let p = f.pole_profile();
        let c = p.contract(2, 1);
        assert_eq!(c.pairs.get(&(1, 3)), Some(&1));
        assert!(PoleProfile::default().subset_of(&p));
        assert!(!p.subset_of(&PoleProfile::default()));
    }

    #[test]
    fn homogeneous_grading_closed_under_arith() {
        let f = TypeARational::normalize(mono(&[(2, 1), (1, -1)]), &[(1, 2, 1)]);
        let g = TypeARational::normalize(LaurentPoly::one(), &[(2, 3, 2)]);
        assert!(f.is_homogeneous_zero());
        assert!(g.is_homogeneous_zero());
        assert!(f.mul(&g).is_homogeneous_zero());
        assert!(f.add(&g).is_homogeneous_zero());
        let c = TypeARational::constant(rat_int(7));
        assert!(c.is_homogeneous_zero());
    }
}
