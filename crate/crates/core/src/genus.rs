//! Genus formulas for X_q and X_q^n, the Euler-characteristic relation, the
//! genus of the unbranched quotient for type I levels, and the Hurwitz count.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{mult_n, prime_density, rat_int, Factorization, Rational};
use crate::cusps::{h_formula, h_n_formula};
use crate::error::{Error, Result};
use crate::group::{check_divisor, r_formula, r_n_formula, type_classify, LevelType};

fn integral(r: Rational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegral(format!("{what} = {r}")))
    }
}

/// g_q = 1 + (q − 6) q²/24 ∏(1 − 1/l²); 0 for q ≤ 2 (the sphere).
pub fn genus_q(q: u32) -> Result<BigInt> {
    if q <= 2 {
        return Ok(BigInt::zero());
    }
    let q_r = rat_int(q as i64);
    let g = Rational::one() + (&q_r - rat_int(6)) * &q_r * &q_r / rat_int(24) * prime_density(q as u64);
    integral(g, "g_q")
}

/// g_q^n = 1 + (q − 6𝒩(q/n)) n q/24 ∏(1 − 1/l²), q ≥ 5.
pub fn genus_qn(q: u32, n: u32) -> Result<BigInt> {
    check_divisor(q, n)?;
    if q < 5 {
        return Err(Error::OutOfRange { what: "q", value: q as i64, min: 5, max: i64::MAX });
    }
    let nn = mult_n((q / n) as u64)?;
    let g = Rational::one()
        + (rat_int(q as i64) - rat_int(6) * nn) * rat_int(n as i64 * q as i64) / rat_int(24)
            * prime_density(q as u64);
    integral(g, "g_q^n")
}

/// g = 1 − h/2 + R/12 for a group acting freely on ℍ.
///
/// Γ_q^n acts freely once q ≥ 4: its elements have trace ≡ 2 (mod q), while
/// elliptic elements of SL(2, ℤ) have trace in {−1, 0, 1}.
pub fn euler_genus(h: &BigInt, r: &BigInt) -> Result<BigInt> {
    let twelve_g = BigInt::from(12) - BigInt::from(6) * h + r;
    if !(&twelve_g % 12u32).is_zero() {
        return Err(Error::NonIntegral(format!("1 - {h}/2 + {r}/12")));
    }
    Ok(twelve_g / 12)
}

/// Genus of X_{2p} modulo its central involution, for type I levels 2p ≥ 10:
/// g′ = 1 + (p − 3𝒩(p)) p/12 ∏_{l | p}(1 − 1/l²).
pub fn genus_prime_quotient(q: u32) -> Result<BigInt> {
    if q < 10 || type_classify(q) != LevelType::TypeI {
        return Err(Error::Unsupported(format!("q = {q} is not a type I level >= 10")));
    }
    let p = q / 2;
    let g = Rational::one()
        + (rat_int(p as i64) - rat_int(3) * mult_n(p as u64)?) * rat_int(p as i64) / rat_int(12)
            * prime_density(p as u64);
    integral(g, "g'")
}

/// N(2ḡ − 2 + Σ(1 − 1/m_i)), which equals 2g − 2 for a Galois cover of degree N
/// over a genus-ḡ base branched with orders m_i.
pub fn hurwitz_deficiency(n: &BigInt, g_bar: &BigInt, branch_orders: &[u32]) -> Result<BigInt> {
    if let Some(&m) = branch_orders.iter().find(|&&m| m < 2) {
        return Err(Error::InvalidArgument(format!("branch order {m} < 2")));
    }
    let mut s = Rational::from_integer(BigInt::from(2) * g_bar - 2);
    for &m in branch_orders {
        s += Rational::one() - Rational::new(BigInt::one(), BigInt::from(m));
    }
    integral(Rational::from_integer(n.clone()) * s, "Hurwitz count")
}

/// True iff X_q or some X_q^n has genus zero, i.e. X_q is a cyclic cover of the line
/// by the translation τ_n.
pub fn is_semihyperelliptic_level(q: u32) -> Result<bool> {
    if q == 0 {
        return Err(Error::InvalidArgument("q must be >= 1".into()));
    }
    if genus_q(q)?.is_zero() {
        return Ok(true);
    }
    if q < 5 {
        return Ok(false);
    }
    for n in (1..=q).filter(|n| q.is_multiple_of(*n)) {
        if genus_qn(q, n)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The quantities behind a genus computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub q: u32,
    pub n: u32,
    pub h: BigInt,
    pub r: BigInt,
    pub g: BigInt,
}

impl GenusReport {
    /// Report for Γ_q^n (n = q gives Γ_q). Requires q ≥ 5 unless n = q ≥ 3.
    pub fn new(q: u32, n: u32) -> Result<Self> {
        check_divisor(q, n)?;
        let (h, r, g) = if n == q {
            (h_formula(q)?, r_formula(q)?, genus_q(q)?)
        } else {
            (h_n_formula(q, n)?, r_n_formula(q, n)?, genus_qn(q, n)?)
        };
        if q >= 4 {
            assert_eq!(euler_genus(&h, &r)?, g, "free action fails for q = {q}, n = {n}");
        }
        Ok(GenusReport { q, n, h, r, g })
    }
}

/// Primes dividing p, for display.
pub fn prime_support(p: u64) -> Result<Vec<u64>> {
    Ok(Factorization::of(p)?.primes().collect())
}
