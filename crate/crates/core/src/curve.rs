//! Semi-hyperelliptic curves y^p = ∏(x − a_i)^{m_i} as geometric objects:
//! ramification, orders of monomial functions and differentials, holomorphic
//! bases, lifts of Möbius maps, and a numeric check of explicit isomorphisms.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Rational;
use crate::equation::{rotation_from_exponent, BranchLabel, BranchPoint, RotationNumber, SemiHyperellipticEquation};
use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// A semi-hyperelliptic curve together with its compactification over ∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiHyperellipticCurve {
    eq: SemiHyperellipticEquation,
}

impl SemiHyperellipticCurve {
    pub fn new(p: i64, branches: Vec<BranchPoint>) -> Result<Self> {
        Self::from_equation(SemiHyperellipticEquation::new(p, branches)?)
    }

    /// Exact branch values must be pairwise distinct.
    pub fn from_equation(eq: SemiHyperellipticEquation) -> Result<Self> {
        let vals: Vec<&Rational> = eq.branches().iter().filter_map(|b| b.label.value()).collect();
        for i in 0..vals.len() {
            if vals[..i].contains(&vals[i]) {
                return Err(Error::InvalidArgument(format!("branch value {} repeated", vals[i])));
            }
        }
        Ok(SemiHyperellipticCurve { eq })
    }

    /// Builds from (value, exponent) pairs with exact values.
    pub fn with_values(p: i64, points: &[(Rational, i64)]) -> Result<Self> {
        let branches = points
            .iter()
            .map(|(v, m)| BranchPoint { label: BranchLabel::Value(v.clone()), exponent: *m })
            .collect();
        Self::new(p, branches)
    }

    pub fn equation(&self) -> &SemiHyperellipticEquation {
        &self.eq
    }

    pub fn p(&self) -> i64 {
        self.eq.p()
    }

    pub fn branches(&self) -> &[BranchPoint] {
        self.eq.branches()
    }

    pub fn infinity_exponent(&self) -> i64 {
        self.eq.infinity_exponent()
    }

    /// Σ m_i, the degree of the right-hand side.
    pub fn total_exponent(&self) -> i64 {
        self.branches().iter().map(|b| b.exponent).sum()
    }

    fn fiber_size(&self, i: usize) -> i64 {
        self.p().gcd(&self.branches()[i].exponent)
    }

    fn infinity_fiber_size(&self) -> i64 {
        self.p().gcd(&self.total_exponent())
    }

    /// Renders a monomial function or differential with this curve's labels.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        let factor = |i: usize, e: i64| {
            let f = self.branches()[i].label.factor();
            if e == 1 {
                f
            } else {
                format!("{f}^{e}")
            }
        };
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (i, &a) in m.alphas.iter().enumerate() {
            if a > 0 {
                num.push(factor(i, a));
            } else if a < 0 {
                den.push(factor(i, -a));
            }
        }
        let ypow = |e: i64| if e == 1 { "y".to_string() } else { format!("y^{e}") };
        if m.y_pow > 0 {
            num.push(ypow(m.y_pow));
        } else if m.y_pow < 0 {
            den.push(ypow(-m.y_pow));
        }
        if m.dx {
            num.push("dx".into());
        }
        let num = if num.is_empty() { "1".to_string() } else { num.join("*") };
        if den.is_empty() {
            num
        } else if den.len() == 1 {
            format!("{num}/{}", den[0])
        } else {
            format!("{num}/({})", den.join("*"))
        }
    }
}

/// A point of the compactified curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurvePoint {
    /// The sheet-th point (1-based) over the i-th finite branch value.
    Branch { index: usize, sheet: i64 },
    /// The sheet-th point (1-based) over x = ∞.
    Infinity { sheet: i64 },
    /// An affine point away from the branch values.
    Affine { x: Complex64, y: Complex64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberBase {
    Branch(usize),
    Infinity,
}

/// `points` points, each with ramification index `index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub over: FiberBase,
    pub points: i64,
    pub index: i64,
}

/// Fibers over the branch values and over ∞: gcd(p, m) points of index p/gcd(p, m).
pub fn ramification_profile(c: &SemiHyperellipticCurve) -> Vec<Fiber> {
    let p = c.p();
    let mut out: Vec<Fiber> = (0..c.branches().len())
        .map(|i| {
            let g = c.fiber_size(i);
            Fiber { over: FiberBase::Branch(i), points: g, index: p / g }
        })
        .collect();
    let g = c.infinity_fiber_size();
    out.push(Fiber { over: FiberBase::Infinity, points: g, index: p / g });
    out
}

/// Riemann–Hurwitz: 2g − 2 = −2p + Σ(e − 1).
pub fn curve_genus(c: &SemiHyperellipticCurve) -> i64 {
    let ram: i64 = ramification_profile(c).iter().map(|f| f.points * (f.index - 1)).sum();
    (ram - 2 * c.p()) / 2 + 1
}

/// ∏(x − a_i)^{alphas[i]} · y^{y_pow}, times dx when `dx` is set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub alphas: Vec<i64>,
    pub y_pow: i64,
    pub dx: bool,
}

impl Monomial {
    pub fn function(alphas: Vec<i64>, y_pow: i64) -> Self {
        Monomial { alphas, y_pow, dx: false }
    }

    pub fn differential(alphas: Vec<i64>, y_pow: i64) -> Self {
        Monomial { alphas, y_pow, dx: true }
    }
}

/// Order of a monomial at a point, read off the local charts: at a branch point
/// over a_i, ord(x − a_i) = e_i = p/gcd(p, m_i), ord(y) = m_i/gcd(p, m_i),
/// ord(dx) = e_i − 1; over ∞, ord(x − a) = −e_∞, ord(y) = −m/gcd(p, m),
/// ord(dx) = −e_∞ − 1 with m = Σ m_i. Affine points are taken generic (order 0).
pub fn differential_order(c: &SemiHyperellipticCurve, mono: &Monomial, pt: &CurvePoint) -> Result<i64> {
    let r = c.branches().len();
    if mono.alphas.len() != r {
        return Err(Error::InvalidArgument(format!("monomial has {} factors, curve has {r}", mono.alphas.len())));
    }
    let p = c.p();
    match *pt {
        CurvePoint::Branch { index, sheet } => {
            if index >= r {
                return Err(Error::InvalidArgument(format!("no branch point {index}")));
            }
            let g = c.fiber_size(index);
            check_sheet(sheet, g)?;
            let e = p / g;
            let m = c.branches()[index].exponent;
            Ok(mono.alphas[index] * e + mono.y_pow * (m / g) + if mono.dx { e - 1 } else { 0 })
        }
        CurvePoint::Infinity { sheet } => {
            let g = c.infinity_fiber_size();
            check_sheet(sheet, g)?;
            let e = p / g;
            let m = c.total_exponent();
            let deg: i64 = mono.alphas.iter().sum();
            Ok(-deg * e - mono.y_pow * (m / g) + if mono.dx { -e - 1 } else { 0 })
        }
        CurvePoint::Affine { .. } => Ok(0),
    }
}

fn check_sheet(sheet: i64, g: i64) -> Result<()> {
    if (1..=g).contains(&sheet) {
        Ok(())
    } else {
        Err(Error::OutOfRange { what: "sheet", value: sheet, min: 1, max: g })
    }
}

/// Every branch and infinity point, sheet by sheet.
pub fn special_points(c: &SemiHyperellipticCurve) -> Vec<CurvePoint> {
    let mut out = Vec::new();
    for i in 0..c.branches().len() {
        for sheet in 1..=c.fiber_size(i) {
            out.push(CurvePoint::Branch { index: i, sheet });
        }
    }
    for sheet in 1..=c.infinity_fiber_size() {
        out.push(CurvePoint::Infinity { sheet });
    }
    out
}

/// Σ of orders over all special points: the degree of the divisor.
pub fn divisor_degree(c: &SemiHyperellipticCurve, mono: &Monomial) -> Result<i64> {
    special_points(c).iter().map(|pt| differential_order(c, mono, pt)).sum()
}

/// A basis of holomorphic differentials made of monomials.
///
/// The deck transformation splits the space by the power of y. For y^{−γ}dx the
/// condition at a_i is a lower bound c_i on the exponent of (x − a_i) and the
/// condition at ∞ an upper bound D on the total degree, so the γ-part has
/// dimension D − Σc_i + 1 and is spanned by ∏(x − a_i)^{c_i}·(x − a_e)^j.
pub fn holomorphic_basis(c: &SemiHyperellipticCurve) -> Result<Vec<Monomial>> {
    let g = curve_genus(c);
    if g < 1 {
        return Err(Error::InvalidArgument("curve has genus 0".into()));
    }
    let p = c.p();
    let r = c.branches().len();
    let g_inf = c.infinity_fiber_size();
    let e_inf = p / g_inf;
    let m = c.total_exponent();
    let mut basis = Vec::new();
    for gamma in 1..p {
        let mins: Vec<i64> = (0..r)
            .map(|i| {
                let gi = c.fiber_size(i);
                let ei = p / gi;
                let need = gamma * (c.branches()[i].exponent / gi) - ei + 1;
                Integer::div_ceil(&need, &ei).max(0)
            })
            .collect();
        let top = Integer::div_floor(&(gamma * (m / g_inf) - e_inf - 1), &e_inf);
        let dim = top - mins.iter().sum::<i64>() + 1;
        if dim <= 0 {
            continue;
        }
        let free = mins.iter().position(|&c| c == 0).unwrap_or(0);
        for j in 0..dim {
            let mut alphas = mins.clone();
            alphas[free] += j;
            basis.push(Monomial::differential(alphas, -gamma));
        }
    }
    if basis.len() as i64 != g {
        return Err(Error::NoSolution(format!("found {} holomorphic monomials, genus is {g}", basis.len())));
    }
    for mono in &basis {
        debug_assert!(special_points(c).iter().all(|pt| differential_order(c, mono, pt).unwrap() >= 0));
    }
    Ok(basis)
}

/// Rotation number of the deck transformation at the points over a_i.
pub fn rotation_at_branch(c: &SemiHyperellipticCurve, i: usize) -> Result<RotationNumber> {
    let b = c
        .branches()
        .get(i)
        .ok_or_else(|| Error::InvalidArgument(format!("no branch point {i}")))?;
    rotation_from_exponent(c.p(), b.exponent)
}

/// Deck transformation (x, y) ↦ (x, ζ_p y); on sheet-indexed points it advances the sheet.
pub fn deck_transform(c: &SemiHyperellipticCurve, pt: &CurvePoint) -> Result<CurvePoint> {
    Ok(match *pt {
        CurvePoint::Branch { index, sheet } => {
            let g = c.fiber_size(index);
            check_sheet(sheet, g)?;
            CurvePoint::Branch { index, sheet: sheet % g + 1 }
        }
        CurvePoint::Infinity { sheet } => {
            let g = c.infinity_fiber_size();
            check_sheet(sheet, g)?;
            CurvePoint::Infinity { sheet: sheet % g + 1 }
        }
        CurvePoint::Affine { x, y } => {
            CurvePoint::Affine { x, y: y * Complex64::from_polar(1.0, 2.0 * PI / c.p() as f64) }
        }
    })
}

/// A point of ℙ¹ over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum P1 {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for P1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1::Finite(v) => write!(f, "{v}"),
            P1::Infinity => f.write_str("inf"),
        }
    }
}

/// x ↦ (αx + β)/(γx + δ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusMap {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl MoebiusMap {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational, delta: Rational) -> Result<Self> {
        if (&alpha * &delta - &beta * &gamma).is_zero() {
            return Err(Error::InvalidArgument("singular Möbius map".into()));
        }
        Ok(MoebiusMap { alpha, beta, gamma, delta })
    }

    pub fn identity() -> Self {
        MoebiusMap { alpha: Rational::one(), beta: Rational::zero(), gamma: Rational::zero(), delta: Rational::one() }
    }

    pub fn apply(&self, z: &P1) -> P1 {
        match z {
            P1::Infinity => {
                if self.gamma.is_zero() {
                    P1::Infinity
                } else {
                    P1::Finite(&self.alpha / &self.gamma)
                }
            }
            P1::Finite(x) => {
                let den = &self.gamma * x + &self.delta;
                if den.is_zero() {
                    P1::Infinity
                } else {
                    P1::Finite((&self.alpha * x + &self.beta) / den)
                }
            }
        }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        MoebiusMap {
            alpha: &self.alpha * &other.alpha + &self.beta * &other.gamma,
            beta: &self.alpha * &other.beta + &self.beta * &other.delta,
            gamma: &self.gamma * &other.alpha + &self.delta * &other.gamma,
            delta: &self.gamma * &other.beta + &self.delta * &other.delta,
        }
    }
}

/// Evidence that a Möbius map lifts to the curve: the branch permutation it
/// induces and a twist s with m_{π(b)} ≡ s·m_b (mod p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCertificate {
    pub twist: i64,
    /// π on branch indices; index r (the number of finite branch points) stands for ∞.
    pub permutation: Vec<usize>,
    pub note: String,
}

/// Branch set as P¹ points with exponents; ∞ is included when it is branched.
fn exact_branch_set(c: &SemiHyperellipticCurve) -> Result<Vec<(P1, i64)>> {
    let mut out = Vec::new();
    for b in c.branches() {
        let v = b
            .label
            .value()
            .ok_or_else(|| Error::InvalidArgument(format!("branch value {} is symbolic", b.label)))?;
        out.push((P1::Finite(v.clone()), b.exponent));
    }
    if c.infinity_exponent() != 0 {
        out.push((P1::Infinity, c.infinity_exponent()));
    }
    Ok(out)
}

fn find_twist(p: i64, exps: &[i64], perm: &[usize]) -> Option<i64> {
    (1..p)
        .filter(|s| s.gcd(&p) == 1)
        .find(|s| exps.iter().enumerate().all(|(b, m)| (exps[perm[b]] - s * m).rem_euclid(p) == 0))
}

/// Does T lift to an automorphism of the curve? Over ℙ¹ the multiplicity
/// condition suffices, since every degree-0 divisor on the line is principal.
pub fn moebius_lift_check(c: &SemiHyperellipticCurve, t: &MoebiusMap) -> Result<Option<LiftCertificate>> {
    let set = exact_branch_set(c)?;
    let mut perm = Vec::with_capacity(set.len());
    for (b, _) in &set {
        let image = t.apply(b);
        let j = set.iter().position(|(o, _)| *o == image).ok_or(Error::NotBranchPermutation)?;
        perm.push(j);
    }
    let exps: Vec<i64> = set.iter().map(|(_, m)| *m).collect();
    let r = c.branches().len();
    let perm_full: Vec<usize> = perm.iter().map(|&j| if set[j].0 == P1::Infinity { r } else { j }).collect();
    Ok(find_twist(c.p(), &exps, &perm).map(|s| LiftCertificate {
        twist: s,
        permutation: perm_full,
        note: format!("m(T(b)) = {s}*m(b) mod {} on every branch point", c.p()),
    }))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

fn det4(m: &[[UniPoly; 4]]) -> UniPoly {
    fn det(rows: &[&[UniPoly; 4]], cols: &[usize]) -> UniPoly {
        if cols.len() == 1 {
            return rows[0][cols[0]].clone();
        }
        let mut acc = UniPoly::zero();
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = rows[0][c].mul(&det(&rows[1..], &rest));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
    let rows: Vec<&[UniPoly; 4]> = m.iter().collect();
    det(&rows, &[0, 1, 2, 3])
}

/// Kernel basis of a rational matrix with 4 columns.
fn kernel4(rows: &[[Rational; 4]]) -> Vec<[Rational; 4]> {
    let mut m: Vec<[Rational; 4]> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..4 {
        let Some(pr) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, pr);
        let inv = Rational::one() / &m[row][col];
        for k in 0..4 {
            m[row][k] = &m[row][k] * &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for k in 0..4 {
                    let v = &m[row][k] * &f;
                    m[i][k] = &m[i][k] - v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..4)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
            v[free] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[i][free].clone();
            }
            v
        })
        .collect()
}

/// Values of the single symbolic branch constant for which some Möbius map
/// swapping branch points `demand.0` and `demand.1` lifts to the curve.
///
/// Every admissible branch permutation (one respecting multiplicities up to a
/// twist) gives linear conditions on the map's coefficients; a nonzero solution
/// needs all 4×4 minors to vanish, which are polynomials in the constant.
/// Index r (the number of finite branch points) denotes ∞.
pub fn solve_branch_constant(c: &SemiHyperellipticCurve, demand: (usize, usize)) -> Result<Vec<Rational>> {
    let r = c.branches().len();
    let symbolic: Vec<usize> = (0..r).filter(|&i| c.branches()[i].label.value().is_none()).collect();
    if symbolic.len() != 1 {
        return Err(Error::InvalidArgument(format!("need exactly one symbolic constant, found {}", symbolic.len())));
    }
    let inf_branched = c.infinity_exponent() != 0;
    let size = if inf_branched { r + 1 } else { r };
    if demand.0 >= size || demand.1 >= size || demand.0 == demand.1 {
        return Err(Error::InvalidArgument(format!("bad demand {demand:?}")));
    }
    // point b as (value polynomial in a) or ∞
    let point = |b: usize| -> Option<UniPoly> {
        if b == r {
            return None;
        }
        Some(match c.branches()[b].label.value() {
            Some(v) => UniPoly::constant(v.clone()),
            None => UniPoly::x(),
        })
    };
    let mut exps: Vec<i64> = c.branches().iter().map(|b| b.exponent).collect();
    if inf_branched {
        exps.push(c.infinity_exponent());
    }
    let existing: Vec<Rational> = c.branches().iter().filter_map(|b| b.label.value().cloned()).collect();
    let one = || UniPoly::constant(Rational::one());
    let zero = UniPoly::zero;

    let candidates: Vec<Vec<usize>> = permutations(size)
        .into_iter()
        .filter(|perm| perm[demand.0] == demand.1 && perm[demand.1] == demand.0)
        .filter(|perm| find_twist(c.p(), &exps, perm).is_some())
        .collect();
    if candidates.is_empty() {
        return Err(Error::NoSolution("no branch permutation respects the multiplicities".into()));
    }
    let mut solutions: Vec<Rational> = Vec::new();
    for perm in candidates {
        let mut rows: Vec<[UniPoly; 4]> = Vec::new();
        for (b, &tb) in perm.iter().enumerate() {
            let bb = if b < r { point(b) } else { None };
            let cc = if tb < r { point(tb) } else { None };
            rows.push(match (bb, cc) {
                (Some(x), Some(y)) => [x.clone(), one(), y.mul(&x).neg(), y.neg()],
                (Some(x), None) => [zero(), zero(), x, one()],
                (None, Some(y)) => [one(), zero(), y.neg(), zero()],
                (None, None) => [zero(), zero(), one(), zero()],
            });
        }
        if rows.len() < 4 {
            return Err(Error::Unsupported("fewer than four branch points do not pin the constant".into()));
        }
        let mut minors = Vec::new();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                for k in j + 1..rows.len() {
                    for l in k + 1..rows.len() {
                        let d = det4(&[rows[i].clone(), rows[j].clone(), rows[k].clone(), rows[l].clone()]);
                        if !d.is_zero() {
                            minors.push(d);
                        }
                    }
                }
            }
        }
        let Some(first) = minors.first() else {
            return Err(Error::Unsupported("the demand does not determine the constant".into()));
        };
        for root in first.rational_roots() {
            if existing.contains(&root) || solutions.contains(&root) {
                continue;
            }
            if minors.iter().any(|d| !d.eval(&root).is_zero()) {
                continue;
            }
            let numeric: Vec<[Rational; 4]> =
                rows.iter().map(|row| std::array::from_fn(|k| row[k].eval(&root))).collect();
            let kernel = kernel4(&numeric);
            let invertible = |v: &[Rational; 4]| !(&v[0] * &v[3] - &v[1] * &v[2]).is_zero();
            let mut found = kernel.iter().any(invertible);
            if !found && kernel.len() > 1 {
                let sum: [Rational; 4] = std::array::from_fn(|k| kernel.iter().map(|v| v[k].clone()).sum());
                found = invertible(&sum);
            }
            if found {
                solutions.push(root);
            }
        }
    }
    solutions.sort();
    Ok(solutions)
}

/// A curve over ℂ for the numeric verifier: y^p = ∏(x − b)^m.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericCurve {
    pub p: u32,
    pub branches: Vec<(Complex64, u32)>,
}

impl NumericCurve {
    pub fn from_curve(c: &SemiHyperellipticCurve) -> Result<Self> {
        let mut branches = Vec::new();
        for b in c.branches() {
            let v = b
                .label
                .value()
                .ok_or_else(|| Error::InvalidArgument(format!("branch value {} is symbolic", b.label)))?;
            let f = v.to_f64().ok_or_else(|| Error::InvalidArgument(format!("{v} out of f64 range")))?;
            branches.push((Complex64::new(f, 0.0), b.exponent as u32));
        }
        Ok(NumericCurve { p: c.p() as u32, branches })
    }

    pub fn rhs(&self, x: Complex64) -> Complex64 {
        self.branches.iter().fold(Complex64::one(), |acc, (b, m)| acc * (x - b).powu(*m))
    }

    /// |y^p − f(x)| / max(1, |y^p|).
    pub fn residual(&self, x: Complex64, y: Complex64) -> f64 {
        let yp = y.powu(self.p);
        (yp - self.rhs(x)).norm() / yp.norm().max(1.0)
    }
}

pub type PointMap<'a> = &'a dyn Fn(Complex64, Complex64) -> Option<(Complex64, Complex64)>;

#[derive(Clone, Debug, PartialEq)]
pub struct IsoReport {
    pub points: usize,
    pub max_residual: f64,
    pub max_roundtrip: Option<f64>,
    pub tol: f64,
    pub pass: bool,
}

/// Samples points of c1 (random x away from the branch values, every y over it),
/// pushes them through `forward` and measures how far the images are from c2.
pub fn verify_isomorphism_numeric(
    c1: &NumericCurve,
    c2: &NumericCurve,
    forward: PointMap<'_>,
    inverse: Option<PointMap<'_>>,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<IsoReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zeta = Complex64::from_polar(1.0, 2.0 * PI / c1.p as f64);
    let mut points = 0;
    let mut attempts = 0;
    let mut max_residual: f64 = 0.0;
    let mut max_roundtrip: Option<f64> = inverse.map(|_| 0.0);
    while points < samples {
        attempts += 1;
        if attempts > 100 * samples.max(1) {
            return Err(Error::NoSolution("sampling keeps hitting poles".into()));
        }
        let x = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if c1.branches.iter().any(|(b, _)| (x - b).norm() < 1e-3) {
            continue;
        }
        let y0 = c1.rhs(x).powf(1.0 / c1.p as f64);
        for k in 0..c1.p {
            let y = y0 * zeta.powu(k);
            let Some((u, v)) = forward(x, y) else { continue };
            if !(u.is_finite() && v.is_finite()) {
                continue;
            }
            points += 1;
            max_residual = max_residual.max(c2.residual(u, v));
            if let (Some(inv), Some(worst)) = (inverse, max_roundtrip.as_mut()) {
                if let Some((xx, yy)) = inv(u, v) {
                    let dev = ((xx - x).norm() + (yy - y).norm()) / (x.norm() + y.norm()).max(1.0);
                    *worst = worst.max(dev);
                }
            }
        }
    }
    let pass = max_residual < tol && max_roundtrip.is_none_or(|d| d < tol);
    Ok(IsoReport { points, max_residual, max_roundtrip, tol, pass })
}

/// y⁸ = x²(x−1)(x+1) as a curve over ℂ.
pub fn x8_numeric() -> NumericCurve {
    let c = |v: f64| Complex64::new(v, 0.0);
    NumericCurve { p: 8, branches: vec![(c(0.0), 2), (c(1.0), 1), (c(-1.0), 1)] }
}

/// y⁴ = x(x−1)(x+1)(x²+1)² as a curve over ℂ.
pub fn x8_quartic_numeric() -> NumericCurve {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    NumericCurve {
        p: 4,
        branches: vec![(c(0.0, 0.0), 1), (c(1.0, 0.0), 1), (c(-1.0, 0.0), 1), (c(0.0, 1.0), 2), (c(0.0, -1.0), 2)],
    }
}

fn zeta16() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 16.0)
}

/// (x, y) ↦ (ζ⁴y⁴/(x(x+1)), 8^{1/4}y/(ζ(x+1))) with ζ = e^{2πi/16}.
pub fn x8_to_quartic(x: Complex64, y: Complex64) -> Option<(Complex64, Complex64)> {
    let z = zeta16();
    let d1 = x * (x + 1.0);
    let d2 = z * (x + 1.0);
    if d1.norm() < 1e-12 || d2.norm() < 1e-12 {
        return None;
    }
    Some((z.powu(4) * y.powu(4) / d1, 8f64.powf(0.25) * y / d2))
}

/// (x, y) ↦ (−(x² − 1)/(x² + 1), 2^{1/4}ζy/(x² + 1)).
pub fn quartic_to_x8(x: Complex64, y: Complex64) -> Option<(Complex64, Complex64)> {
    let d = x * x + 1.0;
    if d.norm() < 1e-12 {
        return None;
    }
    Some((-(x * x - 1.0) / d, 2f64.powf(0.25) * zeta16() * y / d))
}
