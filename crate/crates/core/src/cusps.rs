//! Cusps of Γ_q, their orbits under the translation τ_n (the cusps of Γ_q^n),
//! and cusp widths.
//!
//! A cusp x/z is stored as a coprime pair with z ≥ 0 and ∞ = 1/0. Two cusps are
//! Γ_q-equivalent exactly when (x, z) ≡ ±(x', z') (mod q); the class key is the
//! lexicographic minimum of the two sign choices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{mult_n, n3, prime_density, Factorization, Rational};
use crate::error::{Error, Result};
use crate::group::{check_divisor, gamma_qn_member, IntMatrix};

pub const CUSP_ENUMERATION_MAX_Q: u32 = 60;

/// A point x/z of ℚ ∪ {∞} in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cusp {
    x: i64,
    z: i64,
}

impl Cusp {
    pub fn new(x: i64, z: i64) -> Result<Self> {
        if x.gcd(&z) != 1 {
            return Err(Error::NotCoprime(x, z));
        }
        if z == 0 {
            return Ok(Cusp { x: 1, z: 0 });
        }
        Ok(if z < 0 { Cusp { x: -x, z: -z } } else { Cusp { x, z } })
    }

    pub fn infinity() -> Self {
        Cusp { x: 1, z: 0 }
    }

    pub fn x(&self) -> i64 {
        self.x
    }

    pub fn z(&self) -> i64 {
        self.z
    }

    pub fn is_infinity(&self) -> bool {
        self.z == 0
    }

    /// Some (x, y; z, w) ∈ SL(2, ℤ) with first column (x, z).
    pub fn completion(&self) -> IntMatrix {
        let (_, w, minus_y) = crate::arith::ext_gcd_i64(self.x, self.z);
        // x·w + z·(−y) = 1
        IntMatrix::new(self.x, -minus_y, self.z, w)
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.x, self.z)
    }
}

impl FromStr for Cusp {
    type Err = Error;

    /// `inf`, `∞` or `X/Z` with optional signs; a bare integer means X/1.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Cusp::infinity());
        }
        let bad = || Error::InvalidArgument(format!("cannot parse cusp '{s}'"));
        let (x, z) = match s.split_once('/') {
            Some((x, z)) => (x.trim().parse::<i64>().map_err(|_| bad())?, z.trim().parse::<i64>().map_err(|_| bad())?),
            None => (s.parse::<i64>().map_err(|_| bad())?, 1),
        };
        Cusp::new(x, z)
    }
}

/// An element of S_q: a Γ_q-equivalence class of cusps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspClassQ {
    q: u32,
    x: u32,
    z: u32,
}

impl CuspClassQ {
    /// Canonical class of the residue pair (x, z), which must satisfy gcd(x, z, q) = 1.
    pub fn from_residues(q: u32, x: i64, z: i64) -> Result<Self> {
        if q < 2 {
            return Err(Error::OutOfRange { what: "q", value: q as i64, min: 2, max: i64::MAX });
        }
        let qi = q as i64;
        let (x, z) = (x.rem_euclid(qi), z.rem_euclid(qi));
        if x.gcd(&z).gcd(&qi) != 1 {
            return Err(Error::InvalidArgument(format!("({x}, {z}) is not primitive mod {q}")));
        }
        let neg = ((qi - x) % qi, (qi - z) % qi);
        let (x, z) = std::cmp::min((x, z), neg);
        Ok(CuspClassQ { q, x: x as u32, z: z as u32 })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn x(&self) -> u32 {
        self.x
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    /// A coprime integer representative, chosen to read naturally: the sign with
    /// the smaller denominator residue, then the smallest numerator lift.
    pub fn representative(&self) -> Cusp {
        let q = self.q as i64;
        let pos = (self.z as i64, self.x as i64);
        let neg = ((q - self.z as i64) % q, (q - self.x as i64) % q);
        let (z, x) = std::cmp::min(pos, neg);
        if z == 0 {
            if x == 1 || q == 2 {
                return Cusp::infinity();
            }
            return Cusp::new(x, q).expect("x is a unit mod q");
        }
        let mut lx = x;
        while lx.gcd(&z) != 1 {
            lx += q;
        }
        Cusp::new(lx, z).expect("coprime by construction")
    }

    /// Translation by n: (x, z) ↦ (x + n z, z).
    pub fn translate(&self, n: u32) -> CuspClassQ {
        CuspClassQ::from_residues(self.q, self.x as i64 + n as i64 * self.z as i64, self.z as i64)
            .expect("translation preserves primitivity")
    }

    fn display_key(&self) -> (i64, i64) {
        let r = self.representative();
        (r.z(), r.x())
    }
}

impl fmt::Display for CuspClassQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative())
    }
}

/// The class of a cusp in S_q.
pub fn cusp_canonical(q: u32, c: &Cusp) -> Result<CuspClassQ> {
    CuspClassQ::from_residues(q, c.x, c.z)
}

/// Some γ ∈ Γ_q with γ(c1) = c2, or `None` when the cusps are inequivalent.
///
/// Any unimodular γ with γ(c1) = c2 is ±A′·Tʲ·A⁻¹ where A, A′ complete c1, c2,
/// and only j mod q matters for the congruence test, so the scan is complete.
pub fn find_equivalence_witness(q: u32, c1: &Cusp, c2: &Cusp) -> Option<IntMatrix> {
    let a = c1.completion();
    let a2 = c2.completion();
    let a_inv = a.inverse_sl2();
    for j in 0..q as i64 {
        let g = a2.mul(&IntMatrix::translation(j)).mul(&a_inv);
        for cand in [g, g.neg()] {
            if gamma_qn_member(&cand, q, q).unwrap_or(false) {
                return Some(cand);
            }
        }
    }
    None
}

fn check_cusp_guard(q: u32) -> Result<()> {
    if (2..=CUSP_ENUMERATION_MAX_Q).contains(&q) {
        Ok(())
    } else {
        Err(Error::OutOfRange { what: "q", value: q as i64, min: 2, max: CUSP_ENUMERATION_MAX_Q as i64 })
    }
}

/// S_q, sorted by class key.
pub fn enumerate_cusps(q: u32) -> Result<Vec<CuspClassQ>> {
    check_cusp_guard(q)?;
    let mut out = BTreeSet::new();
    for x in 0..q as i64 {
        for z in 0..q as i64 {
            if let Ok(c) = CuspClassQ::from_residues(q, x, z) {
                out.insert(c);
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn exact(r: Rational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegral(format!("{what} = {r}")))
    }
}

/// h_q = q²/2 ∏(1 − 1/l²), q ≥ 3.
pub fn h_formula(q: u32) -> Result<BigInt> {
    if q < 3 {
        return Err(Error::OutOfRange { what: "q", value: q as i64, min: 3, max: i64::MAX });
    }
    exact(Rational::new(BigInt::from(q as u64 * q as u64), 2.into()) * prime_density(q as u64), "h_q")
}

/// h_q^n = n q 𝒩(q/n)/2 ∏(1 − 1/l²), q ≥ 5.
pub fn h_n_formula(q: u32, n: u32) -> Result<BigInt> {
    check_divisor(q, n)?;
    if q < 5 {
        return Err(Error::OutOfRange { what: "q", value: q as i64, min: 5, max: i64::MAX });
    }
    let base = Rational::new(BigInt::from(n as u64 * q as u64), 2.into());
    exact(base * mult_n((q / n) as u64)? * prime_density(q as u64), "h_q^n")
}

/// One τ_n-orbit in S_q, i.e. one cusp of Γ_q^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspOrbit {
    pub q: u32,
    pub n: u32,
    /// Classes in τ_n order, starting at the representative.
    pub classes: Vec<CuspClassQ>,
}

impl CuspOrbit {
    pub fn representative(&self) -> Cusp {
        self.classes[0].representative()
    }

    pub fn size(&self) -> usize {
        self.classes.len()
    }

    pub fn contains(&self, c: &CuspClassQ) -> bool {
        self.classes.contains(c)
    }
}

/// The τ_n-orbits on S_q (cusps of Γ_q^n), ordered by size and representative.
pub fn tau_orbits(q: u32, n: u32) -> Result<Vec<CuspOrbit>> {
    check_divisor(q, n)?;
    let all = enumerate_cusps(q)?;
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for c in &all {
        if seen.contains(c) {
            continue;
        }
        let mut members = vec![*c];
        let mut cur = c.translate(n);
        while cur != *c {
            members.push(cur);
            cur = cur.translate(n);
        }
        seen.extend(members.iter().copied());
        let start = members.iter().enumerate().min_by_key(|(_, m)| m.display_key()).map(|(i, _)| i).unwrap();
        members.rotate_left(start);
        orbits.push(CuspOrbit { q, n, classes: members });
    }
    orbits.sort_by_key(|o| (o.size(), o.classes[0].display_key()));
    Ok(orbits)
}

/// Width of x/z for Γ_q^n. Uses q/gcd(q/n, z) for q ≥ 5 and the congruence scan below that.
pub fn width(q: u32, n: u32, c: &Cusp) -> Result<i64> {
    check_divisor(q, n)?;
    if q <= 4 {
        return width_bruteforce(q, n, c);
    }
    let p = (q / n) as i64;
    Ok(q as i64 / p.gcd(&c.z()))
}

/// Least R ≥ 1 with N·T^R·N⁻¹ ∈ Γ̃_q^n, where N has first column (x, z).
///
/// N·T^R·N⁻¹ = (1 − Rxz, Rx²; −Rz², 1 + Rxz); the −I branch is scanned too.
pub fn width_bruteforce(q: u32, n: u32, c: &Cusp) -> Result<i64> {
    check_divisor(q, n)?;
    let (q, n) = (q as i64, n as i64);
    let (x, z) = (c.x(), c.z());
    for r in 1..=q {
        let b = r * x * x;
        let cc = -r * z * z;
        let t = r * x * z;
        if cc.rem_euclid(q) != 0 || b.rem_euclid(n) != 0 {
            continue;
        }
        let plus = t.rem_euclid(q) == 0;
        let minus = (-1 + t - 1).rem_euclid(q) == 0 && (-1 - t - 1).rem_euclid(q) == 0;
        if plus || minus {
            return Ok(r);
        }
    }
    unreachable!("T^q always conjugates into Γ_q^n")
}

/// Width → number of cusps of Γ_q^n with that width, from the 𝒩₃ product formula.
pub fn width_distribution(q: u32, n: u32) -> Result<BTreeMap<i64, BigInt>> {
    check_divisor(q, n)?;
    if q < 5 {
        return Err(Error::OutOfRange { what: "q", value: q as i64, min: 5, max: i64::MAX });
    }
    let p = q / n;
    let base = Rational::from_integer(h_formula(q)?) / Rational::from_integer(BigInt::from(p));
    let fac = Factorization::of(p as u64)?;
    let mut entries: Vec<(i64, Rational)> = vec![(n as i64, base)];
    for &(pi, ri) in fac.factors() {
        let mut next = Vec::new();
        for (w, cnt) in &entries {
            for j in 0..=ri {
                next.push((w * (pi as i64).pow(j), cnt * n3(pi, ri, j)?));
            }
        }
        entries = next;
    }
    let mut out = BTreeMap::new();
    for (w, cnt) in entries {
        let cnt = exact(cnt, "width count")?;
        if !cnt.is_zero() {
            *out.entry(w).or_insert_with(BigInt::zero) += cnt;
        }
    }
    Ok(out)
}

/// Width distribution read off the orbits directly.
pub fn width_distribution_direct(q: u32, n: u32) -> Result<BTreeMap<i64, BigInt>> {
    let mut out = BTreeMap::new();
    for o in tau_orbits(q, n)? {
        *out.entry(width(q, n, &o.representative())?).or_insert_with(BigInt::zero) += 1;
    }
    Ok(out)
}

/// p·𝒲_{Γ_q^n}(κ) = Σ over the orbit of 𝒲_{Γ_q} = |orbit|·q.
pub fn orbit_width_check(q: u32, n: u32, orbit: &CuspOrbit) -> Result<bool> {
    let p = (q / n) as i64;
    let lhs = p * width(q, n, &orbit.representative())?;
    Ok(lhs == orbit.size() as i64 * q as i64)
}
