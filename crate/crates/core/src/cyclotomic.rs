//! The quotient ring ℤ[t]/(tᵈ − 1).
//!
//! Only ring equality is ever needed (identity checks over roots of unity), so
//! the ring is used as is rather than reducing to the cyclotomic field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    coeffs: Vec<BigInt>,
}

impl CyclotomicElement {
    pub fn zero(d: usize) -> Self {
        assert!(d >= 1, "modulus must be >= 1");
        CyclotomicElement { coeffs: vec![BigInt::zero(); d] }
    }

    pub fn one(d: usize) -> Self {
        Self::constant(d, BigInt::one())
    }

    pub fn constant(d: usize, c: BigInt) -> Self {
        let mut e = Self::zero(d);
        e.coeffs[0] = c;
        e
    }

    /// tᵏ, with negative k allowed.
    pub fn t_pow(d: usize, k: i64) -> Self {
        let mut e = Self::zero(d);
        e.coeffs[k.rem_euclid(d as i64) as usize] = BigInt::one();
        e
    }

    /// Reduces an arbitrary coefficient list modulo tᵈ − 1.
    pub fn from_coeffs(d: usize, coeffs: &[BigInt]) -> Self {
        let mut e = Self::zero(d);
        for (i, c) in coeffs.iter().enumerate() {
            e.coeffs[i % d] += c;
        }
        e
    }

    pub fn modulus(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus() == other.modulus() {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus(), other.modulus()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(CyclotomicElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.modulus();
        let mut out = Self::zero(d);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[(i + j) % d] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CyclotomicElement { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.modulus());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

/// Multiplication in ℤ[t]/(tᵈ − 1); fails on differing moduli.
pub fn cyclo_mul(x: &CyclotomicElement, y: &CyclotomicElement) -> Result<CyclotomicElement> {
    x.try_mul(y)
}

/// Coefficient-wise equality; fails on differing moduli.
pub fn cyclo_eq(x: &CyclotomicElement, y: &CyclotomicElement) -> Result<bool> {
    x.check(y)?;
    Ok(x == y)
}

// Operator forms panic on modulus mismatch; use the `try_` methods at API boundaries.
impl Add for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: Self) -> CyclotomicElement {
        self.try_add(rhs).expect("cyclotomic modulus mismatch")
    }
}

impl Sub for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: Self) -> CyclotomicElement {
        self.try_add(&-rhs).expect("cyclotomic modulus mismatch")
    }
}

impl Mul for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: Self) -> CyclotomicElement {
        self.try_mul(rhs).expect("cyclotomic modulus mismatch")
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        CyclotomicElement { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -BigInt::one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(k: i64) -> CyclotomicElement {
        CyclotomicElement::t_pow(8, k)
    }

    #[test]
    fn exponent_arithmetic() {
        assert_eq!(cyclo_mul(&t(3), &t(7)).unwrap(), t(2));
        assert_eq!(t(4).pow(2), CyclotomicElement::one(8));
        let one_plus_t = &CyclotomicElement::one(8) + &t(1);
        assert_eq!(&t(1) * &one_plus_t, &t(1) + &t(2));
        assert_eq!(t(8), CyclotomicElement::one(8));
        assert_eq!(t(-1), t(7));
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let a = CyclotomicElement::one(8);
        let b = CyclotomicElement::one(4);
        assert!(matches!(cyclo_mul(&a, &b), Err(Error::ModulusMismatch(8, 4))));
        assert!(cyclo_eq(&a, &b).is_err());
        assert!(cyclo_eq(&a, &t(0)).unwrap());
    }

    #[test]
    fn display() {
        let e = &(&t(0) - &t(2)) + &t(3).scale(&BigInt::from(3));
        assert_eq!(e.to_string(), "1 - t^2 + 3*t^3");
    }

    fn element() -> impl Strategy<Value = CyclotomicElement> {
        prop::collection::vec(-20i64..20, 8)
            .prop_map(|v| CyclotomicElement::from_coeffs(8, &v.into_iter().map(BigInt::from).collect::<Vec<_>>()))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in element(), b in element(), c in element()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
