//! SL(2, ℤ/qℤ), PSL(2, ℤ/qℤ) and integer matrices of Γ_q and Γ_q^n.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::{prime_density, Rational};
use crate::cusps::{Cusp, CuspClassQ};
use crate::error::{Error, Result};

/// Largest level for which the groups are enumerated element by element.
pub const ENUMERATION_MAX_Q: u32 = 40;

pub(crate) fn check_enumeration_guard(q: u32) -> Result<()> {
    if (2..=ENUMERATION_MAX_Q).contains(&q) {
        Ok(())
    } else {
        Err(Error::OutOfRange { what: "q", value: q as i64, min: 2, max: ENUMERATION_MAX_Q as i64 })
    }
}

pub(crate) fn check_divisor(q: u32, n: u32) -> Result<()> {
    if n >= 1 && q.is_multiple_of(n) {
        Ok(())
    } else {
        Err(Error::NotDivisor { n: n as i64, q: q as i64 })
    }
}

/// A 2×2 matrix over ℤ/qℤ with determinant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatModQ {
    pub q: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl MatModQ {
    pub fn new(q: u32, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidArgument(format!("modulus must be >= 2, got {q}")));
        }
        let r = |v: i64| v.rem_euclid(q as i64) as u32;
        let m = MatModQ { q, a: r(a), b: r(b), c: r(c), d: r(d) };
        let det = (m.a as i64 * m.d as i64 - m.b as i64 * m.c as i64).rem_euclid(q as i64);
        if det != 1 % q as i64 {
            return Err(Error::InvalidArgument(format!("determinant {det} != 1 mod {q}")));
        }
        Ok(m)
    }

    pub fn identity(q: u32) -> Self {
        MatModQ { q, a: 1 % q, b: 0, c: 0, d: 1 % q }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.q, o.q, "modulus mismatch");
        let q = self.q as u64;
        let f = |x: u32, y: u32, z: u32, w: u32| ((x as u64 * y as u64 + z as u64 * w as u64) % q) as u32;
        MatModQ {
            q: self.q,
            a: f(self.a, o.a, self.b, o.c),
            b: f(self.a, o.b, self.b, o.d),
            c: f(self.c, o.a, self.d, o.c),
            d: f(self.c, o.b, self.d, o.d),
        }
    }

    pub fn neg(&self) -> Self {
        let n = |v: u32| (self.q - v) % self.q;
        MatModQ { q: self.q, a: n(self.a), b: n(self.b), c: n(self.c), d: n(self.d) }
    }

    pub fn inverse(&self) -> Self {
        let n = |v: u32| (self.q - v) % self.q;
        MatModQ { q: self.q, a: self.d, b: n(self.b), c: n(self.c), d: self.a }
    }

    fn key(&self) -> (u32, u32, u32, u32) {
        (self.a, self.b, self.c, self.d)
    }
}

/// An element of PSL(2, ℤ/qℤ), stored as the lexicographically smaller of ±M.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(MatModQ);

impl GroupElement {
    pub fn new(m: MatModQ) -> Self {
        let n = m.neg();
        GroupElement(if n.key() < m.key() { n } else { m })
    }

    pub fn from_entries(q: u32, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Ok(Self::new(MatModQ::new(q, a, b, c, d)?))
    }

    pub fn identity(q: u32) -> Self {
        Self::new(MatModQ::identity(q))
    }

    pub fn matrix(&self) -> &MatModQ {
        &self.0
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.0.mul(&other.0))
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.0.inverse())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.q())
    }

    /// Action on Γ_q cusp classes: (x, z) ↦ (ax + bz, cx + dz) mod q.
    pub fn act_on_class(&self, class: &CuspClassQ) -> CuspClassQ {
        let m = &self.0;
        let q = m.q as i64;
        let (x, z) = (class.x() as i64, class.z() as i64);
        let nx = (m.a as i64 * x + m.b as i64 * z).rem_euclid(q);
        let nz = (m.c as i64 * x + m.d as i64 * z).rem_euclid(q);
        CuspClassQ::from_residues(m.q, nx, nz).expect("group action preserves primitivity")
    }

    /// A preimage in SL(2, ℤ).
    pub fn lift(&self) -> IntMatrix {
        let m = &self.0;
        let q = m.q as i64;
        let c = if m.c == 0 { q } else { m.c as i64 };
        let mut d = m.d as i64;
        while c.gcd(&d) != 1 {
            d += q;
        }
        let (_, u, v) = crate::arith::ext_gcd_i64(d, c);
        // a0*d − b0*c = 1
        let (a0, b0) = (u, -v);
        for t in 0..q {
            let a = a0 + t * c;
            let b = b0 + t * d;
            if (a - m.a as i64).rem_euclid(q) == 0 && (b - m.b as i64).rem_euclid(q) == 0 {
                return IntMatrix { a, b, c, d };
            }
        }
        unreachable!("every element of SL(2, Z/qZ) lifts to SL(2, Z)")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "[{} {}; {} {}] mod {}", m.a, m.b, m.c, m.d, m.q)
    }
}

/// An integer 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMatrix {
    pub const IDENTITY: IntMatrix = IntMatrix { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Self) -> Self {
        IntMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn neg(&self) -> Self {
        IntMatrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_sl2(&self) -> Self {
        IntMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn translation(n: i64) -> Self {
        IntMatrix { a: 1, b: n, c: 0, d: 1 }
    }

    /// Fractional-linear action on a cusp, reduced to coprime form.
    pub fn act(&self, cusp: &Cusp) -> Cusp {
        let nx = self.a * cusp.x() + self.b * cusp.z();
        let nz = self.c * cusp.x() + self.d * cusp.z();
        let g = nx.gcd(&nz);
        Cusp::new(nx / g, nz / g).expect("reduced pair is coprime")
    }

    pub fn reduce(&self, q: u32) -> Result<GroupElement> {
        GroupElement::from_entries(q, self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

/// All of PSL(2, ℤ/qℤ), sorted, for 2 ≤ q ≤ 40.
pub fn enumerate_psl(q: u32) -> Result<Vec<GroupElement>> {
    check_enumeration_guard(q)?;
    let mut out = BTreeSet::new();
    let qq = q as u64;
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if (a as u64 * d as u64 + qq * qq - (b as u64 * c as u64) % qq) % qq == 1 % qq {
                        out.insert(GroupElement::new(MatModQ { q, a, b, c, d }));
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn check_q_ge3(q: u32) -> Result<()> {
    if q >= 3 {
        Ok(())
    } else {
        Err(Error::OutOfRange { what: "q", value: q as i64, min: 3, max: i64::MAX })
    }
}

fn exact_integer(r: Rational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegral(format!("{what} = {r}")))
    }
}

/// R_q = [SL(2, ℤ) : Γ̃_q] = |PSL(2, ℤ/qℤ)| = q³/2 ∏(1 − 1/l²).
pub fn r_formula(q: u32) -> Result<BigInt> {
    check_q_ge3(q)?;
    let q3 = Rational::from_integer(BigInt::from(q).pow(3));
    exact_integer(q3 / Rational::from_integer(2.into()) * prime_density(q as u64), "R_q")
}

/// R_q^n = [SL(2, ℤ) : Γ̃_q^n] = n q²/2 ∏(1 − 1/l²).
pub fn r_n_formula(q: u32, n: u32) -> Result<BigInt> {
    check_q_ge3(q)?;
    check_divisor(q, n)?;
    let v = Rational::from_integer(BigInt::from(n) * BigInt::from(q).pow(2)) / Rational::from_integer(2.into());
    exact_integer(v * prime_density(q as u64), "R_q^n")
}

/// Smallest m ≥ 1 with gᵐ = ±I.
pub fn element_order(g: &GroupElement) -> u32 {
    let mut acc = *g;
    let mut m = 1;
    while !acc.is_identity() {
        acc = acc.mul(g);
        m += 1;
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelType {
    /// q ≡ 2 (mod 4) and 3 ∤ q.
    TypeI,
    TypeII,
}

pub fn type_classify(q: u32) -> LevelType {
    if q % 4 == 2 && !q.is_multiple_of(3) {
        LevelType::TypeI
    } else {
        LevelType::TypeII
    }
}

/// The claimed largest element order in PSL(2, ℤ/qℤ): 3q/2 for type I, q otherwise.
///
/// Enumeration agrees for q ≤ 24 except q = 15, 20, 21, where elements of order
/// 30, 30 and 42 exist; see [`max_element_order`].
pub fn max_order_closed_form(q: u32) -> u32 {
    match type_classify(q) {
        LevelType::TypeI => 3 * q / 2,
        LevelType::TypeII => q,
    }
}

/// Largest element order, by enumeration.
pub fn max_element_order(q: u32) -> Result<u32> {
    Ok(enumerate_psl(q)?.iter().map(element_order).max().unwrap_or(1))
}

pub fn center(q: u32) -> Result<Vec<GroupElement>> {
    let all = enumerate_psl(q)?;
    Ok(all
        .iter()
        .filter(|g| all.iter().all(|h| g.mul(h) == h.mul(g)))
        .copied()
        .collect())
}

/// Membership of an integer matrix in Γ_q^n (Γ_q when n = q).
pub fn gamma_qn_member(m: &IntMatrix, q: u32, n: u32) -> Result<bool> {
    if m.det() != 1 {
        return Err(Error::InvalidArgument(format!("det {} != 1", m.det())));
    }
    check_divisor(q, n)?;
    let (q, n) = (q as i64, n as i64);
    Ok((m.a - 1).rem_euclid(q) == 0
        && (m.d - 1).rem_euclid(q) == 0
        && m.c.rem_euclid(q) == 0
        && m.b.rem_euclid(n) == 0)
}

/// Image of a cusp under (a lift of) a PSL element. The image is well defined up to Γ_q.
pub fn cusp_action(g: &GroupElement, c: &Cusp) -> Cusp {
    g.lift().act(c)
}

/// Every element of PSL(2, ℤ/qℤ) sending the class `from` to the class `to`.
pub fn maps_between_cusps(q: u32, from: &CuspClassQ, to: &CuspClassQ) -> Result<Vec<GroupElement>> {
    Ok(enumerate_psl(q)?.into_iter().filter(|g| g.act_on_class(from) == *to).collect())
}
