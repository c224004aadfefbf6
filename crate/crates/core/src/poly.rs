//! Small exact polynomial types used by the branch-constant solver and the
//! canonical-model elimination.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// Dense univariate polynomial over ℚ, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        Self::new((0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// All distinct rational roots, ascending. The zero polynomial has none by convention.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        // clear denominators
        let lcm = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let mut roots = BTreeSet::new();
        if ints[0].is_zero() {
            roots.insert(Rational::zero());
            let shift = ints.iter().take_while(|c| c.is_zero()).count();
            ints.drain(..shift);
        }
        if ints.len() > 1 {
            let lead = ints.last().unwrap().abs();
            let constant = ints[0].abs();
            for p in divisors(&constant) {
                for q in divisors(&lead) {
                    for sign in [1, -1] {
                        let cand = Rational::new(BigInt::from(sign) * &p, q.clone());
                        if self.eval(&cand).is_zero() {
                            roots.insert(cand);
                        }
                    }
                }
            }
        }
        roots.into_iter().collect()
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*a"),
                _ => format!("{c}*a^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Exponent vector of a multivariate monomial; trailing zeros are trimmed.
pub type Monomial = Vec<u32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect())
}

/// Sparse multivariate polynomial over ℚ in variables indexed by `usize`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(vec![], c);
        }
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: usize) -> Self {
        let mut m = vec![0; v + 1];
        m[v] = 1;
        let mut p = Self::zero();
        p.terms.insert(m, Rational::one());
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&vec![]).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let m = trim(m);
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::int(1), |acc, _| acc.mul(self))
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.get(v).copied().unwrap_or(0)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i))
            .collect()
    }

    /// Writes the polynomial as Σ_k coeff_k · vᵏ.
    pub fn coefficients_in(&self, v: usize) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.get(v).copied().unwrap_or(0);
            let mut rest = m.clone();
            if v < rest.len() {
                rest[v] = 0;
            }
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Replaces variable `v` by `value`.
    pub fn substitute(&self, v: usize, value: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (k, coeff) in self.coefficients_in(v) {
            out = out.add(&coeff.mul(&value.pow(k)));
        }
        out
    }

    /// Divides out the largest power of `v` common to every term.
    pub fn strip_var(&self, v: usize) -> MPoly {
        let k = self.terms.keys().map(|m| m.get(v).copied().unwrap_or(0)).min().unwrap_or(0);
        if k == 0 {
            return self.clone();
        }
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut m = m.clone();
            m[v] -= k;
            out.add_term(m, c.clone());
        }
        out
    }

    /// Exact division by (v − r) when it divides; `None` otherwise.
    pub fn div_linear(&self, v: usize, r: &Rational) -> Option<MPoly> {
        if self.is_zero() {
            return None;
        }
        let coeffs = self.coefficients_in(v);
        let deg = *coeffs.keys().max().unwrap();
        if deg == 0 {
            return None;
        }
        // synthetic division from the top
        let mut quotient: Vec<MPoly> = vec![MPoly::zero(); deg as usize];
        let mut carry = MPoly::zero();
        for k in (1..=deg).rev() {
            let ck = coeffs.get(&k).cloned().unwrap_or_default();
            carry = ck.add(&carry.scale(r));
            quotient[(k - 1) as usize] = carry.clone();
        }
        let c0 = coeffs.get(&0).cloned().unwrap_or_default();
        if !c0.add(&carry.scale(r)).is_zero() {
            return None;
        }
        let vv = MPoly::var(v);
        Some(quotient.iter().enumerate().fold(MPoly::zero(), |acc, (k, q)| acc.add(&q.mul(&vv.pow(k as u32)))))
    }

    /// Univariate view when only `v` occurs.
    pub fn to_univariate(&self, v: usize) -> Option<UniPoly> {
        if self.variables().iter().any(|&w| w != v) {
            return None;
        }
        let coeffs = self.coefficients_in(v);
        let deg = coeffs.keys().max().copied().unwrap_or(0) as usize;
        Some(UniPoly::new(
            (0..=deg)
                .map(|k| coeffs.get(&(k as u32)).and_then(MPoly::as_constant).unwrap_or_else(Rational::zero))
                .collect(),
        ))
    }

    /// Evaluates into any commutative ring given images of the variables and of rationals.
    pub fn eval_with<R, F, G>(&self, var: F, scalar: G, zero: R, mul: impl Fn(&R, &R) -> R, add: impl Fn(&R, &R) -> R) -> R
    where
        F: Fn(usize) -> R,
        G: Fn(&Rational) -> R,
    {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = scalar(c);
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = mul(&t, &var(i));
                }
            }
            acc = add(&acc, &t);
        }
        acc
    }

    pub fn display_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { name(i) } else { format!("{}^{}", name(i), e) })
                .collect();
            let term = if vars.is_empty() {
                format!("{c}")
            } else if c.is_one() {
                vars.join("*")
            } else if *c == -Rational::one() {
                format!("-{}", vars.join("*"))
            } else {
                format!("{c}*{}", vars.join("*"))
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn rational_roots_of_quadratic() {
        // a² − 1
        let p = UniPoly::new(vec![rat_int(-1), rat_int(0), rat_int(1)]);
        assert_eq!(p.rational_roots(), vec![rat_int(-1), rat_int(1)]);
        // 6a² − 5a + 1 = (2a − 1)(3a − 1)
        let p = UniPoly::new(vec![rat_int(1), rat_int(-5), rat_int(6)]);
        assert_eq!(p.rational_roots(), vec![rat(1, 3), rat(1, 2)]);
        // a³ − a² has roots 0 and 1
        let p = UniPoly::new(vec![rat_int(0), rat_int(0), rat_int(-1), rat_int(1)]);
        assert_eq!(p.rational_roots(), vec![rat_int(0), rat_int(1)]);
        // a² + 1 has none
        let p = UniPoly::new(vec![rat_int(1), rat_int(0), rat_int(1)]);
        assert!(p.rational_roots().is_empty());
    }

    #[test]
    fn substitution_and_division() {
        let a = MPoly::var(0);
        let c = MPoly::var(1);
        // (a − 1)·c + (a − 1)
        let p = a.sub(&MPoly::int(1)).mul(&c.add(&MPoly::int(1)));
        let q = p.div_linear(0, &rat_int(1)).unwrap();
        assert_eq!(q, c.add(&MPoly::int(1)));
        assert!(c.add(&MPoly::int(2)).div_linear(0, &rat_int(1)).is_none());
        let s = p.substitute(1, &MPoly::int(-1));
        assert!(s.is_zero());
        let stripped = c.pow(3).mul(&a).add(&c.pow(2)).strip_var(1);
        assert_eq!(stripped, c.mul(&a).add(&MPoly::int(1)));
    }
}
