//! Exact scalar arithmetic shared by every other module.
//!
//! Integers are [`BigInt`] and rationals are [`BigRational`] throughout the
//! formula paths; small residues (matrix entries mod q, cusp coordinates) use
//! machine integers because they are bounded by the level.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Extended Euclid: returns `(g, u, v)` with `g = gcd(a, b) >= 0` and `a*u + b*v = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_u, mut u) = (BigInt::one(), BigInt::zero());
    let (mut old_v, mut v) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_u = &old_u - &q * &u;
        old_u = std::mem::replace(&mut u, next_u);
        let next_v = &old_v - &q * &v;
        old_v = std::mem::replace(&mut v, next_v);
    }
    if old_r.is_negative() {
        (-old_r, -old_u, -old_v)
    } else {
        (old_r, old_u, old_v)
    }
}

/// Machine-integer variant of [`ext_gcd`] for bounded inputs.
pub fn ext_gcd_i64(a: i64, b: i64) -> (i64, i64, i64) {
    let (g, u, v) = ext_gcd(&int(a), &int(b));
    let to = |x: BigInt| i64::try_from(x).expect("Bezout cofactor fits i64");
    (to(g), to(u), to(v))
}

/// gcd with the convention `gcd(p, 0) = |p|`.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// The unique `k` in `[1, v)` with `k*u ≡ 1 (mod v)`; `0` when `v = 1`.
pub fn solve_unit_congruence(u: i64, v: i64) -> Result<i64> {
    if v < 1 {
        return Err(Error::InvalidArgument(format!("modulus must be >= 1, got {v}")));
    }
    if u.gcd(&v) != 1 {
        return Err(Error::NotCoprime(u, v));
    }
    if v == 1 {
        return Ok(0);
    }
    let (_, s, _) = ext_gcd_i64(u, v);
    Ok(s.rem_euclid(v))
}

/// Prime factorization `∏ p_i^{r_i}` with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Trial division; inputs are at most ~10⁶ in practice.
    pub fn of(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cannot factor 0".into()));
        }
        let mut factors = Vec::new();
        let mut rest = n;
        let mut d = 2u64;
        while d * d <= rest {
            if rest.is_multiple_of(d) {
                let mut e = 0;
                while rest.is_multiple_of(d) {
                    rest /= d;
                    e += 1;
                }
                factors.push((d, e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Factorization { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The primes dividing n, written 𝒫(n) in the genus formulas.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// ∏_{l | q} (1 − 1/l²).
pub fn prime_density(q: u64) -> Rational {
    let f = Factorization::of(q).expect("q >= 1");
    f.primes()
        .map(|l| Rational::one() - rat(1, (l * l) as i64))
        .fold(Rational::one(), |acc, x| acc * x)
}

/// 𝒩(p) = ∏ (1 + r_i (p_i − 1)/(p_i + 1)).
pub fn mult_n(p: u64) -> Result<Rational> {
    let f = Factorization::of(p)?;
    Ok(f.factors()
        .iter()
        .map(|&(pi, ri)| {
            Rational::one() + Rational::from_integer(int(ri as i64)) * rat(pi as i64 - 1, pi as i64 + 1)
        })
        .fold(Rational::one(), |acc, x| acc * x))
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

fn check_index(j: u32, r: u32) -> Result<()> {
    if r == 0 || j > r {
        Err(Error::InvalidArgument(format!("index j = {j} outside [0, {r}]")))
    } else {
        Ok(())
    }
}

/// 𝒩₁: index of the subgroup of SL(2, ℤ) whose lower-left entry is divisible by p^j.
pub fn n1(p: u64, j: u32) -> Result<BigInt> {
    check_prime(p)?;
    Ok(if j == 0 {
        BigInt::one()
    } else {
        int(p as i64 + 1) * BigInt::from(p).pow(j - 1)
    })
}

/// 𝒩₂: per-prime density of Γ_q-cusps whose Γ_q^n width carries p^j.
pub fn n2(p: u64, r: u32, j: u32) -> Result<Rational> {
    check_prime(p)?;
    check_index(j, r)?;
    let pp = BigInt::from(p);
    let den = int(p as i64 + 1);
    Ok(if j == 0 {
        Rational::new(pp, den)
    } else if j < r {
        Rational::new((&pp - 1) * pp.pow(j), den)
    } else {
        Rational::new(pp.pow(r + 1), den)
    })
}

/// 𝒩₃: per-prime density of τ_n-orbits whose width carries p^j.
pub fn n3(p: u64, r: u32, j: u32) -> Result<Rational> {
    check_prime(p)?;
    check_index(j, r)?;
    Ok(if j == 0 || j == r {
        rat(p as i64, p as i64 + 1)
    } else {
        rat(p as i64 - 1, p as i64 + 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ext_gcd_examples() {
        assert_eq!(ext_gcd(&int(3), &int(8)), (int(1), int(3), int(-1)));
        assert_eq!(ext_gcd(&int(0), &int(5)), (int(5), int(0), int(1)));
        let (g, u, v) = ext_gcd(&int(12), &int(18));
        assert_eq!(g, int(6));
        assert_eq!(int(12) * u + int(18) * v, int(6));
        assert_eq!(ext_gcd(&int(-7), &int(0)).0, int(7));
    }

    #[test]
    fn unit_congruence_examples() {
        assert_eq!(solve_unit_congruence(1, 8).unwrap(), 1);
        assert_eq!(solve_unit_congruence(3, 8).unwrap(), 3);
        assert_eq!(solve_unit_congruence(17, 1).unwrap(), 0);
        assert!(solve_unit_congruence(2, 8).is_err());
        // brute-force oracle for 3k ≡ 1 mod 8
        let k = (1..8).find(|k| (3 * k) % 8 == 1).unwrap();
        assert_eq!(k, 3);
    }

    #[test]
    fn mult_n_examples() {
        assert_eq!(mult_n(1).unwrap(), rat_int(1));
        assert_eq!(mult_n(8).unwrap(), rat_int(2));
        assert_eq!(mult_n(12).unwrap(), rat(5, 2));
    }

    #[test]
    fn n_functions() {
        assert_eq!(n1(2, 0).unwrap(), int(1));
        assert_eq!(n1(2, 3).unwrap(), int(12));
        assert_eq!(n3(2, 3, 0).unwrap(), rat(2, 3));
        assert_eq!(n3(2, 3, 3).unwrap(), rat(2, 3));
        assert_eq!(n3(2, 3, 1).unwrap(), rat(1, 3));
        assert_eq!(n2(5, 1, 1).unwrap(), rat(25, 6));
        assert_eq!(n2(5, 1, 0).unwrap(), rat(5, 6));
        assert!(n2(5, 1, 2).is_err());
        assert!(n3(4, 1, 0).is_err());
    }

    #[test]
    fn n3_sums_to_mult_n() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for r in 1..=4u32 {
                let s = (0..=r).map(|j| n3(p, r, j).unwrap()).fold(Rational::zero(), |a, b| a + b);
                assert_eq!(s, mult_n(p.pow(r)).unwrap(), "p={p} r={r}");
            }
        }
    }

    #[test]
    fn factorization_reconstructs() {
        for n in 1..2000u64 {
            let f = Factorization::of(n).unwrap();
            assert_eq!(f.value(), n);
            assert!(f.primes().all(is_prime));
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    proptest! {
        #[test]
        fn bezout_holds(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let (g, u, v) = ext_gcd(&int(a), &int(b));
            prop_assert!(g >= BigInt::zero());
            prop_assert_eq!(int(a) * u + int(b) * v, g.clone());
            if !g.is_zero() {
                prop_assert!((int(a) % &g).is_zero() && (int(b) % &g).is_zero());
            }
        }

        #[test]
        fn unit_congruence_minimal(u in 1i64..500, v in 2i64..500) {
            prop_assume!(u.gcd(&v) == 1);
            let k = solve_unit_congruence(u, v).unwrap();
            prop_assert_eq!((u * k) % v, 1);
            prop_assert!((1..k).all(|s| (u * s) % v != 1));
        }

        #[test]
        fn mult_n_is_multiplicative(a in 1u64..300, b in 1u64..300) {
            prop_assume!(a.gcd(&b) == 1);
            prop_assert_eq!(mult_n(a * b).unwrap(), mult_n(a).unwrap() * mult_n(b).unwrap());
        }
    }
}
