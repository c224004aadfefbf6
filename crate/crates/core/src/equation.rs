//! Rotation numbers of τ_n at cusps, the exponents they determine, and the
//! semi-hyperelliptic equation y^p = ∏(x − a_i)^{m_i} of X_q assembled from them.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{ext_gcd_i64, fmt_rational, solve_unit_congruence, Rational};
use crate::cusps::{tau_orbits, Cusp, CuspOrbit};
use crate::error::{Error, Result};
use crate::genus::genus_qn;
use crate::group::check_divisor;

/// ℛ(n, k): orbit length n of a point under τ, and the exponent k with which
/// τ^n acts on a local coordinate there (as ζ^k, ζ a primitive (p/n)-th root of unity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RotationNumber {
    pub orbit_len: i64,
    pub k: i64,
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({}, {})", self.orbit_len, self.k)
    }
}

/// Rotation number of τ_n at the cusp x/z of X_q (q ≥ 5).
///
/// With p = q/n and g = gcd(p, z): the orbit has length p/g, and k = w² mod g
/// where xw − yz = 1. Any valid w works since w is fixed mod z and g | z.
pub fn rotation_number(q: u32, n: u32, c: &Cusp) -> Result<RotationNumber> {
    check_divisor(q, n)?;
    if q < 5 {
        return Err(Error::OutOfRange { what: "q", value: q as i64, min: 5, max: i64::MAX });
    }
    let p = (q / n) as i64;
    let g = p.gcd(&c.z());
    if g == 1 {
        return Ok(RotationNumber { orbit_len: p, k: 0 });
    }
    let (_, w, _) = ext_gcd_i64(c.x(), c.z());
    Ok(RotationNumber { orbit_len: p / g, k: (w * w).rem_euclid(g) })
}

/// The unique m in [1, p) with gcd(p, m) = n and k·(m/n) ≡ 1 (mod p/n).
pub fn exponent_from_rotation(p: i64, rot: &RotationNumber) -> Result<i64> {
    let n = rot.orbit_len;
    if n < 1 || p % n != 0 || n >= p {
        return Err(Error::NoSolution(format!("{rot} is not a branched rotation for p = {p}")));
    }
    let u = solve_unit_congruence(rot.k, p / n)
        .map_err(|_| Error::NoSolution(format!("k = {} is not a unit mod {}", rot.k, p / n)))?;
    Ok(n * u)
}

/// ℛ(gcd(p, m), k) with k·(m/gcd) ≡ 1 (mod p/gcd).
pub fn rotation_from_exponent(p: i64, m: i64) -> Result<RotationNumber> {
    if !(1..p).contains(&m) {
        return Err(Error::OutOfRange { what: "m", value: m, min: 1, max: p - 1 });
    }
    let n = p.gcd(&m);
    Ok(RotationNumber { orbit_len: n, k: solve_unit_congruence(m / n, p / n)? })
}

/// A branched τ_n-orbit of cusps together with its rotation data and exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchOrbit {
    pub orbit: CuspOrbit,
    pub rotation: RotationNumber,
    pub exponent: i64,
}

/// Where a branch point sits on the x-line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchLabel {
    Symbolic(String),
    Value(Rational),
}

impl BranchLabel {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            BranchLabel::Value(v) => Some(v),
            BranchLabel::Symbolic(_) => None,
        }
    }

    pub(crate) fn factor(&self) -> String {
        match self {
            BranchLabel::Symbolic(s) => format!("(x-{s})"),
            BranchLabel::Value(v) if v.is_zero() => "x".to_string(),
            BranchLabel::Value(v) if v.is_negative() => format!("(x+{})", fmt_rational(&-v)),
            BranchLabel::Value(v) => format!("(x-{})", fmt_rational(v)),
        }
    }
}

impl fmt::Display for BranchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchLabel::Symbolic(s) => f.write_str(s),
            BranchLabel::Value(v) => f.write_str(&fmt_rational(v)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub label: BranchLabel,
    pub exponent: i64,
}

/// y^p = ∏(x − a_i)^{m_i}, with ∞ carrying the exponent m_∞ ≡ −Σm_i (mod p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiHyperellipticEquation {
    p: i64,
    branches: Vec<BranchPoint>,
}

impl SemiHyperellipticEquation {
    pub fn new(p: i64, branches: Vec<BranchPoint>) -> Result<Self> {
        if p < 2 {
            return Err(Error::OutOfRange { what: "p", value: p, min: 2, max: i64::MAX });
        }
        for (i, b) in branches.iter().enumerate() {
            if !(1..p).contains(&b.exponent) {
                return Err(Error::OutOfRange { what: "exponent", value: b.exponent, min: 1, max: p - 1 });
            }
            if branches[..i].iter().any(|o| o.label == b.label) {
                return Err(Error::InvalidArgument(format!("branch label {} repeated", b.label)));
            }
        }
        Ok(SemiHyperellipticEquation { p, branches })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn branches(&self) -> &[BranchPoint] {
        &self.branches
    }

    pub fn infinity_exponent(&self) -> i64 {
        (-self.branches.iter().map(|b| b.exponent).sum::<i64>()).rem_euclid(self.p)
    }

    /// All exponents including a nonzero one at ∞, sorted.
    pub fn exponent_multiset(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.branches.iter().map(|b| b.exponent).collect();
        if self.infinity_exponent() != 0 {
            v.push(self.infinity_exponent());
        }
        v.sort_unstable();
        v
    }

    /// Labels still symbolic.
    pub fn undetermined(&self) -> Vec<String> {
        self.branches
            .iter()
            .filter_map(|b| match &b.label {
                BranchLabel::Symbolic(s) => Some(s.clone()),
                BranchLabel::Value(_) => None,
            })
            .collect()
    }

    /// Replaces a symbolic constant by an exact value.
    pub fn substitute(&self, label: &str, value: Rational) -> Result<Self> {
        let mut branches = self.branches.clone();
        let b = branches
            .iter_mut()
            .find(|b| b.label == BranchLabel::Symbolic(label.to_string()))
            .ok_or_else(|| Error::InvalidArgument(format!("no symbolic constant {label}")))?;
        b.label = BranchLabel::Value(value);
        SemiHyperellipticEquation::new(self.p, branches)
    }

    /// Branch points in display order: x, then (x-1), then the rest as stored.
    fn display_order(&self) -> Vec<&BranchPoint> {
        let rank = |b: &BranchPoint| match b.label.value() {
            Some(v) if v.is_zero() => 0,
            Some(v) if v.is_one() => 1,
            _ => 2,
        };
        let mut v: Vec<&BranchPoint> = self.branches.iter().collect();
        v.sort_by_key(|b| rank(b));
        v
    }
}

impl fmt::Display for SemiHyperellipticEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .display_order()
            .iter()
            .map(|b| {
                if b.exponent == 1 {
                    b.label.factor()
                } else {
                    format!("{}^{}", b.label.factor(), b.exponent)
                }
            })
            .collect();
        let rhs = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
        write!(f, "y^{} = {}", self.p, rhs)
    }
}

/// The branched τ_n-orbits of X_q with their rotation numbers and exponents,
/// sorted by exponent (ties keep the orbit order).
pub fn branch_orbits(q: u32, n: u32) -> Result<Vec<BranchOrbit>> {
    check_divisor(q, n)?;
    if q < 5 {
        return Err(Error::OutOfRange { what: "q", value: q as i64, min: 5, max: i64::MAX });
    }
    let p = (q / n) as i64;
    let mut out = Vec::new();
    for orbit in tau_orbits(q, n)? {
        if orbit.size() as i64 >= p {
            continue;
        }
        let rotation = rotation_number(q, n, &orbit.representative())?;
        let exponent = exponent_from_rotation(p, &rotation)?;
        out.push(BranchOrbit { orbit, rotation, exponent });
    }
    out.sort_by_key(|b| b.exponent);
    Ok(out)
}

/// The equation of X_q as a cyclic cover of X_q^n ≅ ℙ¹, all branch points
/// finite and labelled a1, a2, … in exponent order.
pub fn build_equation(q: u32, n: u32) -> Result<SemiHyperellipticEquation> {
    check_divisor(q, n)?;
    if q < 5 {
        return Err(Error::OutOfRange { what: "q", value: q as i64, min: 5, max: i64::MAX });
    }
    if n == q {
        return Err(Error::Unsupported("τ_q is trivial on X_q (p = 1)".into()));
    }
    let g = genus_qn(q, n)?;
    if !g.is_zero() {
        return Err(Error::Unsupported(format!("X_{q}^{n} has genus {g}, not 0")));
    }
    let orbits = branch_orbits(q, n)?;
    let branches = orbits
        .iter()
        .enumerate()
        .map(|(i, b)| BranchPoint { label: BranchLabel::Symbolic(format!("a{}", i + 1)), exponent: b.exponent })
        .collect();
    let eq = SemiHyperellipticEquation::new((q / n) as i64, branches)?;
    debug_assert_eq!(eq.infinity_exponent(), 0);
    Ok(eq)
}

/// Which branch point a normalization sends to ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// Largest exponent to ∞ (the displayed X₇, X₈, X₉, X₁₀ forms).
    LargestToInfinity,
    /// Smallest exponent to ∞ (the displayed X₁₂ form).
    SmallestToInfinity,
}

impl Convention {
    pub fn name(&self) -> &'static str {
        match self {
            Convention::LargestToInfinity => "largest-to-infinity",
            Convention::SmallestToInfinity => "smallest-to-infinity",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "largest-to-infinity" => Ok(Convention::LargestToInfinity),
            "smallest-to-infinity" => Ok(Convention::SmallestToInfinity),
            _ => Err(Error::InvalidArgument(format!("unknown convention '{s}'"))),
        }
    }
}

/// Letter used for the undetermined constants of X_q.
pub fn constant_letter(q: u32) -> char {
    match q {
        9 => 'p',
        10 => 'q',
        12 => 'r',
        _ => 'a',
    }
}

/// Moves the branch points with indices `to_inf`, `to_zero`, `to_one` to ∞, 0, 1
/// by a Möbius map of the x-line. The remaining points become symbolic constants
/// named by `letter` (bare when only one is left, indexed otherwise).
pub fn normalize_with(
    eq: &SemiHyperellipticEquation,
    to_inf: usize,
    to_zero: Option<usize>,
    to_one: Option<usize>,
    letter: char,
) -> Result<SemiHyperellipticEquation> {
    let r = eq.branches.len();
    let chosen: Vec<usize> = [Some(to_inf), to_zero, to_one].into_iter().flatten().collect();
    if chosen.iter().any(|&i| i >= r) {
        return Err(Error::InvalidArgument(format!("branch index out of range (have {r})")));
    }
    if (1..chosen.len()).any(|i| chosen[..i].contains(&chosen[i])) {
        return Err(Error::InvalidArgument("normalization targets must be distinct".into()));
    }
    if eq.infinity_exponent() != 0 {
        return Err(Error::InvalidArgument("equation is already normalized (∞ is branched)".into()));
    }
    let mut branches = Vec::new();
    if let Some(i) = to_zero {
        branches.push(BranchPoint { label: BranchLabel::Value(Rational::zero()), exponent: eq.branches[i].exponent });
    }
    if let Some(i) = to_one {
        branches.push(BranchPoint { label: BranchLabel::Value(Rational::one()), exponent: eq.branches[i].exponent });
    }
    let rest: Vec<usize> = (0..r).filter(|i| !chosen.contains(i)).collect();
    for (j, &i) in rest.iter().enumerate() {
        let name = if rest.len() == 1 { letter.to_string() } else { format!("{letter}{}", j + 1) };
        branches.push(BranchPoint { label: BranchLabel::Symbolic(name), exponent: eq.branches[i].exponent });
    }
    SemiHyperellipticEquation::new(eq.p, branches)
}

/// Normalization by convention: ∞ as the convention says; 0 gets the smallest
/// exponent occurring exactly once among the rest (the smallest if none is
/// unique); 1 and the constants follow in ascending exponent order.
pub fn normalize_equation(
    eq: &SemiHyperellipticEquation,
    convention: Convention,
    letter: char,
) -> Result<SemiHyperellipticEquation> {
    let r = eq.branches.len();
    if r < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 branch points, have {r}")));
    }
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&i| (eq.branches[i].exponent, i));
    let to_inf = match convention {
        Convention::LargestToInfinity => *order.last().unwrap(),
        Convention::SmallestToInfinity => order[0],
    };
    order.retain(|&i| i != to_inf);
    let count = |m: i64| order.iter().filter(|&&j| eq.branches[j].exponent == m).count();
    let to_zero = order.iter().copied().find(|&i| count(eq.branches[i].exponent) == 1).unwrap_or(order[0]);
    order.retain(|&i| i != to_zero);
    let to_one = order.first().copied();
    normalize_with(eq, to_inf, Some(to_zero), to_one, letter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    fn cusp(x: i64, z: i64) -> Cusp {
        Cusp::new(x, z).unwrap()
    }

    fn rot(orbit_len: i64, k: i64) -> RotationNumber {
        RotationNumber { orbit_len, k }
    }

    #[test]
    fn rotations_at_level_8() {
        assert_eq!(rotation_number(8, 1, &Cusp::infinity()).unwrap(), rot(1, 1));
        assert_eq!(rotation_number(8, 1, &cusp(3, 8)).unwrap(), rot(1, 1));
        assert_eq!(rotation_number(8, 1, &cusp(1, 4)).unwrap(), rot(2, 1));
        assert_eq!(rotation_number(8, 1, &cusp(1, 2)).unwrap(), rot(4, 1));
        assert_eq!(rotation_number(8, 1, &cusp(1, 3)).unwrap(), rot(8, 0));
        assert!(rotation_number(4, 1, &Cusp::infinity()).is_err());
    }

    #[test]
    fn exponents() {
        assert_eq!(exponent_from_rotation(8, &rot(1, 1)).unwrap(), 1);
        assert_eq!(exponent_from_rotation(8, &rot(2, 1)).unwrap(), 2);
        assert_eq!(exponent_from_rotation(8, &rot(4, 1)).unwrap(), 4);
        assert_eq!(exponent_from_rotation(9, &rot(3, 1)).unwrap(), 3);
        assert_eq!(exponent_from_rotation(10, &rot(2, 4)).unwrap(), 8);
        assert!(exponent_from_rotation(8, &rot(8, 0)).is_err());
        assert!(exponent_from_rotation(8, &rot(2, 2)).is_err());
        assert_eq!(rotation_from_exponent(8, 4).unwrap(), rot(4, 1));
        assert_eq!(rotation_from_exponent(8, 1).unwrap(), rot(1, 1));
    }

    #[test]
    fn exponent_is_unique() {
        // brute-force oracle: scan every m for the defining conditions
        for p in 2..=24i64 {
            for m in 1..p {
                let r = rotation_from_exponent(p, m).unwrap();
                let n = r.orbit_len;
                let hits: Vec<i64> = (1..p)
                    .filter(|&mm| p.gcd(&mm) == n && (r.k * (mm / n)).rem_euclid(p / n) == 1 % (p / n))
                    .collect();
                assert_eq!(hits, vec![m], "p={p} m={m}");
                assert_eq!(exponent_from_rotation(p, &r).unwrap(), m);
            }
        }
    }

    #[test]
    fn table_rows_for_level_8() {
        let rows: Vec<(String, i64, i64, i64)> = branch_orbits(8, 1)
            .unwrap()
            .iter()
            .map(|b| (b.orbit.representative().to_string(), b.rotation.orbit_len, b.rotation.k, b.exponent))
            .collect();
        let expect = [("1/0", 1, 1, 1), ("3/8", 1, 1, 1), ("1/4", 2, 1, 2), ("1/2", 4, 1, 4)];
        assert_eq!(rows.len(), 4);
        for (row, e) in rows.iter().zip(expect) {
            assert_eq!((row.0.as_str(), row.1, row.2, row.3), e);
        }
    }

    #[test]
    fn rotation_is_constant_on_orbits() {
        for q in 5..=12u32 {
            for n in (1..q).filter(|n| q % n == 0) {
                for o in tau_orbits(q, n).unwrap() {
                    let r0 = rotation_number(q, n, &o.representative()).unwrap();
                    for c in &o.classes {
                        assert_eq!(rotation_number(q, n, &c.representative()).unwrap(), r0, "q={q} n={n}");
                    }
                    // branched iff the orbit is short
                    assert_eq!((o.size() as i64) < (q / n) as i64, r0.orbit_len < (q / n) as i64);
                }
            }
        }
    }

    #[test]
    fn builder_multisets() {
        let ms = |q| build_equation(q, 1).unwrap().exponent_multiset();
        assert_eq!(ms(8), [1, 1, 2, 4]);
        assert_eq!(ms(7), [1, 2, 4]);
        assert_eq!(ms(5), [1, 4]);
        assert_eq!(ms(9), [1, 3, 3, 4, 7]);
        assert_eq!(ms(10), [1, 2, 5, 5, 8, 9]);
        assert_eq!(ms(12), [1, 1, 2, 3, 3, 4, 4, 6]);
        for q in [5, 6, 7, 8, 9, 10, 12] {
            let eq = build_equation(q, 1).unwrap();
            assert_eq!(eq.branches().iter().map(|b| b.exponent).sum::<i64>() % q as i64, 0);
        }
        assert!(matches!(build_equation(11, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn normalized_strings() {
        let norm = |q, c| normalize_equation(&build_equation(q, 1).unwrap(), c, constant_letter(q)).unwrap().to_string();
        assert_eq!(norm(7, Convention::LargestToInfinity), "y^7 = x*(x-1)^2");
        assert_eq!(norm(8, Convention::LargestToInfinity), "y^8 = x^2*(x-1)*(x-a)");
        assert_eq!(norm(9, Convention::LargestToInfinity), "y^9 = x*(x-1)^3*(x-p1)^3*(x-p2)^4");
        assert_eq!(norm(10, Convention::LargestToInfinity), "y^10 = x*(x-1)^2*(x-q1)^5*(x-q2)^5*(x-q3)^8");
        assert_eq!(
            norm(12, Convention::SmallestToInfinity),
            "y^12 = x*(x-1)^2*(x-r1)^3*(x-r2)^3*(x-r3)^4*(x-r4)^4*(x-r5)^6"
        );
        assert_eq!(norm(5, Convention::LargestToInfinity), "y^5 = x");
    }

    #[test]
    fn normalization_preserves_exponents() {
        for q in [6, 7, 8, 9, 10, 12] {
            let eq = build_equation(q, 1).unwrap();
            for c in [Convention::LargestToInfinity, Convention::SmallestToInfinity] {
                let n = normalize_equation(&eq, c, 'a').unwrap();
                assert_eq!(n.exponent_multiset(), eq.exponent_multiset());
            }
        }
    }

    #[test]
    fn explicit_choice_and_substitution() {
        let eq = build_equation(8, 1).unwrap();
        let n = normalize_with(&eq, 3, Some(2), Some(0), 'a').unwrap();
        assert_eq!(n.to_string(), "y^8 = x^2*(x-1)*(x-a)");
        assert_eq!(n.infinity_exponent(), 4);
        assert_eq!(n.substitute("a", rat_int(-1)).unwrap().to_string(), "y^8 = x^2*(x-1)*(x+1)");
        assert!(n.substitute("b", rat_int(2)).is_err());
        assert!(normalize_with(&eq, 3, Some(3), None, 'a').is_err());
        // with three points the normalization leaves nothing undetermined
        let x7 = normalize_equation(&build_equation(7, 1).unwrap(), Convention::LargestToInfinity, 'a').unwrap();
        assert!(x7.undetermined().is_empty());
    }
}
