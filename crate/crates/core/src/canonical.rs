//! The canonical model of X₈ in ℙ⁴ cut out by three quadrics, the images of
//! its special points, the automorphisms σ swapping the points (1, 0) and (a, 0),
//! and the elimination showing that such σ exist only for a = −1.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{fmt_rational, rat_int, Rational};
use crate::cusps::{cusp_canonical, tau_orbits, Cusp, CuspClassQ};
use crate::cyclotomic::CyclotomicElement;
use crate::error::{Error, Result};
use crate::group::maps_between_cusps;
use crate::poly::MPoly;

/// Coefficient rings the quadrics are evaluated over.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// The integer k in the same ring as `self`.
    fn int_like(&self, k: i64) -> Self;
    /// Image of an exact scalar, when the ring contains it.
    fn embed_rational(&self, r: &Rational) -> Result<Self>;

    /// The polynomial a − 1 in the symbolic parameter; only polynomial rings have it.
    fn symbolic_a_minus_1(&self) -> Result<Self> {
        Err(Error::Unsupported("symbolic a needs polynomial coordinates".into()))
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Coefficient for Rational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn int_like(&self, k: i64) -> Self {
        rat_int(k)
    }
    fn embed_rational(&self, r: &Rational) -> Result<Self> {
        Ok(r.clone())
    }
}

impl Coefficient for MPoly {
    fn add(&self, o: &Self) -> Self {
        MPoly::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        MPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        MPoly::neg(self)
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn int_like(&self, k: i64) -> Self {
        MPoly::int(k)
    }
    fn embed_rational(&self, r: &Rational) -> Result<Self> {
        Ok(MPoly::constant(r.clone()))
    }
    fn symbolic_a_minus_1(&self) -> Result<Self> {
        Ok(MPoly::var(A).sub(&MPoly::int(1)))
    }
}

impl Coefficient for CyclotomicElement {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        CyclotomicElement::is_zero(self)
    }
    fn int_like(&self, k: i64) -> Self {
        CyclotomicElement::constant(self.modulus(), BigInt::from(k))
    }
    fn embed_rational(&self, r: &Rational) -> Result<Self> {
        if !r.is_integer() {
            return Err(Error::Unsupported(format!("{r} is not in ℤ[t]/(t^d - 1)")));
        }
        Ok(CyclotomicElement::constant(self.modulus(), r.to_integer()))
    }
}

impl Coefficient for Complex64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == Complex64::zero()
    }
    fn int_like(&self, k: i64) -> Self {
        Complex64::new(k as f64, 0.0)
    }
    fn embed_rational(&self, r: &Rational) -> Result<Self> {
        r.to_f64()
            .map(|f| Complex64::new(f, 0.0))
            .ok_or_else(|| Error::InvalidArgument(format!("{r} out of f64 range")))
    }
}

/// A quadratic form Σ_{i ≤ j} c_ij z_i z_j in five variables (0-based indices).
#[derive(Clone, Debug, PartialEq)]
pub struct QuadForm<R> {
    coeffs: BTreeMap<(usize, usize), R>,
}

impl<R: Coefficient> QuadForm<R> {
    fn from_terms(terms: Vec<((usize, usize), R)>) -> Self {
        let mut q = QuadForm { coeffs: BTreeMap::new() };
        for ((i, j), c) in terms {
            q.add_term(i, j, c);
        }
        q
    }

    fn add_term(&mut self, i: usize, j: usize, c: R) {
        let key = (i.min(j), i.max(j));
        let next = match self.coeffs.remove(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !next.is_zero() {
            self.coeffs.insert(key, next);
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> Option<&R> {
        self.coeffs.get(&(i.min(j), i.max(j)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &R)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, z: &[R; 5]) -> R {
        let zero = z[0].int_like(0);
        self.coeffs.iter().fold(zero, |acc, (&(i, j), c)| acc.add(&c.mul(&z[i]).mul(&z[j])))
    }

    /// Q(Mz): substitutes z_i ↦ Σ_k M_ik z_k.
    pub fn pullback(&self, m: &[[R; 5]; 5]) -> Self {
        let mut out = QuadForm { coeffs: BTreeMap::new() };
        for (&(i, j), c) in &self.coeffs {
            for k in 0..5 {
                if m[i][k].is_zero() {
                    continue;
                }
                for l in 0..5 {
                    if m[j][l].is_zero() {
                        continue;
                    }
                    out.add_term(k, l, c.mul(&m[i][k]).mul(&m[j][l]));
                }
            }
        }
        out
    }

    fn scaled(&self, k: &R) -> Self {
        QuadForm::from_terms(self.coeffs.iter().map(|(&ij, c)| (ij, c.mul(k))).collect())
    }

    fn minus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &o.coeffs {
            out.add_term(i, j, c.neg());
        }
        out
    }
}

/// Q₁ = z₃² − z₂z₅, Q₂ = z₂² − z₁(z₄ + z₅), Q₃ = z₁² − z₄(z₄ − (a − 1)z₅),
/// with a a rational constant or the polynomial variable 0.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricSystem {
    a: MPoly,
}

impl QuadricSystem {
    pub fn symbolic() -> Self {
        QuadricSystem { a: MPoly::var(A) }
    }

    pub fn with_value(a: Rational) -> Self {
        QuadricSystem { a: MPoly::constant(a) }
    }

    pub fn a(&self) -> &MPoly {
        &self.a
    }

    /// The three forms over the ring of `like`.
    pub fn forms<R: Coefficient>(&self, like: &R) -> Result<[QuadForm<R>; 3]> {
        let one = like.int_like(1);
        let m1 = like.int_like(-1);
        let a_minus_1 = match self.a.as_constant() {
            Some(a) => like.embed_rational(&(a - Rational::one()))?,
            None => like.symbolic_a_minus_1()?,
        };
        Ok([
            QuadForm::from_terms(vec![((2, 2), one.clone()), ((1, 4), m1.clone())]),
            QuadForm::from_terms(vec![((1, 1), one.clone()), ((0, 3), m1.clone()), ((0, 4), m1.clone())]),
            QuadForm::from_terms(vec![((0, 0), one), ((3, 3), m1), ((3, 4), a_minus_1)]),
        ])
    }
}

/// Homogeneous coordinates [z₁ : … : z₅].
#[derive(Clone, Debug, PartialEq)]
pub struct ProjPoint<R> {
    coords: [R; 5],
}

impl<R: Coefficient> ProjPoint<R> {
    pub fn new(coords: [R; 5]) -> Result<Self> {
        if coords.iter().all(Coefficient::is_zero) {
            return Err(Error::InvalidArgument("all coordinates zero".into()));
        }
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[R; 5] {
        &self.coords
    }

    /// Proportional coordinates: z_i w_j = z_j w_i for all i, j.
    pub fn proj_eq(&self, other: &Self) -> bool {
        (0..5).all(|i| (0..5).all(|j| self.coords[i].mul(&other.coords[j]) == self.coords[j].mul(&other.coords[i])))
    }

    pub fn transform(&self, m: &[[R; 5]; 5]) -> Result<Self> {
        let zero = self.coords[0].int_like(0);
        ProjPoint::new(std::array::from_fn(|i| {
            (0..5).fold(zero.clone(), |acc, k| acc.add(&m[i][k].mul(&self.coords[k])))
        }))
    }
}

impl ProjPoint<Rational> {
    pub fn from_ints(v: [i64; 5]) -> Result<Self> {
        ProjPoint::new(v.map(rat_int))
    }
}

/// Q₁, Q₂, Q₃ evaluated at a point.
pub fn quadric_residuals<R: Coefficient>(sys: &QuadricSystem, pt: &ProjPoint<R>) -> Result<[R; 3]> {
    let forms = sys.forms(&pt.coords[0])?;
    Ok(forms.map(|q| q.eval(&pt.coords)))
}

/// (x, y) ↦ [1/y³ : x/y⁵ : x/y⁶ : x(x−1)/y⁷ : x/y⁷], for y ≠ 0.
pub fn embed_point(x: Complex64, y: Complex64) -> Result<ProjPoint<Complex64>> {
    if y.norm() < 1e-12 {
        return Err(Error::InvalidArgument("y = 0: use the tabulated images of the branch points".into()));
    }
    ProjPoint::new([y.powi(-3), x * y.powi(-5), x * y.powi(-6), x * (x - 1.0) * y.powi(-7), x * y.powi(-7)])
}

/// Variable indices for the symbolic computations: a, then the 25 entries c_ij,
/// then √a and √−1 for the special-point images.
pub const A: usize = 0;
pub const SQRT_A: usize = 26;
pub const SQRT_M1: usize = 27;

pub fn c_var(i: usize, j: usize) -> usize {
    1 + 5 * (i - 1) + (j - 1)
}

pub fn var_name(v: usize) -> String {
    match v {
        A => "a".into(),
        SQRT_A => "sqrt(a)".into(),
        SQRT_M1 => "i".into(),
        _ => format!("c{}{}", (v - 1) / 5 + 1, (v - 1) % 5 + 1),
    }
}

/// Replaces s² by `square` wherever s occurs.
pub fn reduce_square(p: &MPoly, s: usize, square: &MPoly) -> MPoly {
    let s_poly = MPoly::var(s);
    p.coefficients_in(s).into_iter().fold(MPoly::zero(), |acc, (k, c)| {
        let t = c.mul(&square.pow(k / 2));
        acc.add(&if k % 2 == 1 { t.mul(&s_poly) } else { t })
    })
}

/// The tabulated images of the branch points and the points over ∞, for symbolic a.
pub fn special_point_images() -> Vec<(&'static str, ProjPoint<MPoly>)> {
    let a = MPoly::var(A);
    let s = MPoly::var(SQRT_A);
    let i = MPoly::var(SQRT_M1);
    let int = MPoly::int;
    let pt = |v: [MPoly; 5]| ProjPoint::new(v).expect("nonzero");
    vec![
        ("0_1", pt([s.clone(), int(0), int(0), int(-1), int(1)])),
        ("0_2", pt([s.neg(), int(0), int(0), int(-1), int(1)])),
        ("(1,0)", pt([int(0), int(0), int(0), int(0), int(1)])),
        ("(a,0)", pt([int(0), int(0), int(0), a.sub(&int(1)), int(1)])),
        ("inf_1", pt([int(1), int(1), int(0), int(1), int(0)])),
        ("inf_2", pt([int(1), int(-1), int(0), int(1), int(0)])),
        ("inf_3", pt([int(1), i.clone(), int(0), int(-1), int(0)])),
        ("inf_4", pt([int(1), i.neg(), int(0), int(-1), int(0)])),
    ]
}

/// Residuals at a special-point image with √a and √−1 reduced.
pub fn special_point_residuals(pt: &ProjPoint<MPoly>) -> Result<[MPoly; 3]> {
    let r = quadric_residuals(&QuadricSystem::symbolic(), pt)?;
    Ok(r.map(|p| reduce_square(&reduce_square(&p, SQRT_A, &MPoly::var(A)), SQRT_M1, &MPoly::int(-1))))
}

pub type CycloMatrix = [[CyclotomicElement; 5]; 5];

const MU: usize = 8;

/// σ for η₃ = t^j: diag(−η₁, η₂, η₃) ⊕ (−1 −2; 0 1) with η₂ = η₃², η₁ = η₂².
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaMatrix {
    pub j: u32,
    pub eta3: CyclotomicElement,
    pub matrix: CycloMatrix,
}

pub fn sigma_matrix(j: u32) -> SigmaMatrix {
    let z = || CyclotomicElement::zero(MU);
    let c = |k: i64| CyclotomicElement::constant(MU, BigInt::from(k));
    let eta3 = CyclotomicElement::t_pow(MU, j as i64);
    let eta2 = eta3.pow(2);
    let eta1 = eta2.pow(2);
    let mut m: CycloMatrix = std::array::from_fn(|_| std::array::from_fn(|_| z()));
    m[0][0] = -&eta1;
    m[1][1] = eta2;
    m[2][2] = eta3.clone();
    m[3][3] = c(-1);
    m[3][4] = c(-2);
    m[4][4] = c(1);
    SigmaMatrix { j, eta3, matrix: m }
}

/// The deck transformation on the model: diag(t⁴, t², t, 1, 1) raised to the k-th power.
pub fn deck_matrix(k: u32) -> CycloMatrix {
    let mut m: CycloMatrix = std::array::from_fn(|_| std::array::from_fn(|_| CyclotomicElement::zero(MU)));
    for (i, e) in [4i64, 2, 1, 0, 0].iter().enumerate() {
        m[i][i] = CyclotomicElement::t_pow(MU, e * k as i64);
    }
    m
}

pub fn mat_mul<R: Coefficient>(x: &[[R; 5]; 5], y: &[[R; 5]; 5]) -> [[R; 5]; 5] {
    let zero = x[0][0].int_like(0);
    std::array::from_fn(|i| std::array::from_fn(|j| (0..5).fold(zero.clone(), |acc, k| acc.add(&x[i][k].mul(&y[k][j])))))
}

/// Writes P = λ₁Q₁ + λ₂Q₂ + λ₃Q₃ if possible. The monomials z₃², z₂², z₁² occur
/// in exactly one form each with coefficient 1, which forces the λ's.
pub fn ideal_decomposition<R: Coefficient>(p: &QuadForm<R>, forms: &[QuadForm<R>; 3]) -> ([R; 3], QuadForm<R>) {
    let zero = forms[0].coeff(2, 2).expect("Q1 has z3^2").int_like(0);
    let pick = |i| p.coeff(i, i).cloned().unwrap_or_else(|| zero.clone());
    let lambdas = [pick(2), pick(1), pick(0)];
    let mut rem = p.clone();
    for (l, q) in lambdas.iter().zip(forms) {
        rem = rem.minus(&q.scaled(l));
    }
    (lambdas, rem)
}

/// Does σ_j map the model with parameter a to itself? Checked over ℤ[t]/(t⁸ − 1).
pub fn sigma_preserves_ideal(a: &Rational, j: u32) -> Result<bool> {
    if a.is_one() {
        return Err(Error::InvalidArgument("a = 1 collapses two branch points".into()));
    }
    let sigma = sigma_matrix(j);
    let forms = QuadricSystem::with_value(a.clone()).forms(&CyclotomicElement::zero(MU))?;
    Ok(forms.iter().all(|q| ideal_decomposition(&q.pullback(&sigma.matrix), &forms).1.is_zero()))
}

/// Expected outcome of an elimination step, checked when the step finishes.
struct StepCheck {
    name: &'static str,
    entries: Vec<((usize, usize), MPoly)>,
}

/// Constraint propagation over polynomial equations in a and the c_ij.
struct Engine {
    assign: BTreeMap<usize, MPoly>,
    nonzero: BTreeSet<usize>,
    pending: Vec<MPoly>,
    trace: Vec<String>,
}

impl Engine {
    fn new() -> Self {
        Engine { assign: BTreeMap::new(), nonzero: BTreeSet::new(), pending: Vec::new(), trace: Vec::new() }
    }

    fn name(v: usize) -> String {
        var_name(v)
    }

    fn show(p: &MPoly) -> String {
        p.display_with(&Self::name)
    }

    fn reduce(&self, p: &MPoly) -> MPoly {
        let mut out = p.clone();
        for v in p.variables() {
            if let Some(val) = self.assign.get(&v) {
                out = out.substitute(v, val);
            }
        }
        out
    }

    fn entry(&self, i: usize, j: usize) -> MPoly {
        self.reduce(&MPoly::var(c_var(i, j)))
    }

    fn set(&mut self, v: usize, value: MPoly) {
        let value = self.reduce(&value);
        self.trace.push(format!("{} = {}", Self::name(v), Self::show(&value)));
        for old in self.assign.values_mut() {
            *old = old.substitute(v, &value);
        }
        self.assign.insert(v, value);
    }

    /// Removes factors known to be nonzero: a, a − 1 and nonzero entries.
    fn simplify(&self, p: &MPoly) -> MPoly {
        let mut p = self.reduce(p).strip_var(A);
        while let Some(q) = p.div_linear(A, &Rational::one()) {
            p = q;
        }
        for &v in &self.nonzero {
            p = p.strip_var(v);
        }
        // monic in the leading term, so duplicates compare equal
        match p.terms().last().map(|(_, c)| c.clone()) {
            Some(c) => p.scale(&(Rational::one() / c)),
            None => p,
        }
    }

    fn add_equations(&mut self, eqs: impl IntoIterator<Item = MPoly>) {
        self.pending.extend(eqs);
    }

    fn mark_nonzero_rows(&mut self) {
        let mut lines: Vec<Vec<MPoly>> = Vec::new();
        for i in 1..=5 {
            lines.push((1..=5).map(|j| self.entry(i, j)).collect());
            lines.push((1..=5).map(|j| self.entry(j, i)).collect());
        }
        for line in lines {
            let live: Vec<&MPoly> = line.iter().filter(|e| !e.is_zero()).collect();
            if let [only] = live.as_slice() {
                if only.num_terms() == 1 {
                    for v in only.variables() {
                        if v != A && self.nonzero.insert(v) {
                            self.trace.push(format!("{} != 0 (invertibility)", Self::name(v)));
                        }
                    }
                }
            }
        }
    }

    fn propagate(&mut self, step: &str) -> Result<()> {
        loop {
            self.mark_nonzero_rows();
            let mut progress = false;
            let mut keep = Vec::new();
            let eqs: Vec<MPoly> = std::mem::take(&mut self.pending);
            let mut seen: Vec<MPoly> = Vec::new();
            for eq in eqs {
                let p = self.simplify(&eq);
                if p.is_zero() || seen.contains(&p) {
                    continue;
                }
                if progress {
                    keep.push(p);
                    continue;
                }
                seen.push(p.clone());
                if let Some(c) = p.as_constant() {
                    return Err(Error::Divergence { step: step.into(), detail: format!("inconsistent: {c} = 0") });
                }
                let vars: Vec<usize> = p.variables().into_iter().collect();
                if p.num_terms() == 1 {
                    let unknown: Vec<usize> = vars.iter().copied().filter(|v| *v != A && !self.nonzero.contains(v)).collect();
                    match unknown.as_slice() {
                        [v] => {
                            self.set(*v, MPoly::zero());
                            progress = true;
                            continue;
                        }
                        [] => {
                            return Err(Error::Divergence {
                                step: step.into(),
                                detail: format!("{} = 0 with every factor nonzero", Self::show(&p)),
                            })
                        }
                        _ => {}
                    }
                }
                if vars == [A] {
                    let roots: Vec<Rational> = p
                        .to_univariate(A)
                        .expect("only a occurs")
                        .rational_roots()
                        .into_iter()
                        .filter(|r| !Zero::is_zero(r) && !r.is_one())
                        .collect();
                    match roots.as_slice() {
                        [] => {
                            return Err(Error::Divergence {
                                step: step.into(),
                                detail: format!("{} = 0 has no admissible rational root", Self::show(&p)),
                            })
                        }
                        [r] => {
                            self.set(A, MPoly::constant(r.clone()));
                            progress = true;
                            continue;
                        }
                        _ => {}
                    }
                }
                let linear = vars.iter().copied().find(|&v| {
                    v != A && p.degree_in(v) == 1 && p.coefficients_in(v).get(&1).and_then(MPoly::as_constant).is_some()
                });
                if let Some(v) = linear {
                    let parts = p.coefficients_in(v);
                    let lead = parts[&1].as_constant().expect("constant coefficient");
                    let rest = parts.get(&0).cloned().unwrap_or_default();
                    self.set(v, rest.scale(&(-Rational::one() / lead)));
                    progress = true;
                    continue;
                }
                keep.push(p);
            }
            self.pending = keep;
            if !progress {
                return Ok(());
            }
        }
    }

    fn check(&self, check: &StepCheck) -> Result<()> {
        for ((i, j), want) in &check.entries {
            let got = if (*i, *j) == (0, 0) { self.reduce(&MPoly::var(A)) } else { self.entry(*i, *j) };
            if got != *want {
                return Err(Error::Divergence {
                    step: check.name.into(),
                    detail: format!(
                        "{} = {}, expected {}",
                        if (*i, *j) == (0, 0) { "a".to_string() } else { format!("c{i}{j}") },
                        Self::show(&got),
                        Self::show(want)
                    ),
                });
            }
        }
        Ok(())
    }

    fn matrix(&self) -> [[MPoly; 5]; 5] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entry(i + 1, j + 1)))
    }
}

/// Outcome of the elimination.
#[derive(Clone, Debug, PartialEq)]
pub struct EliminationResult {
    pub a: Rational,
    /// σ with entries as polynomials in the remaining free entries.
    pub matrix: [[MPoly; 5]; 5],
    /// Equations left over, each = 0.
    pub relations: Vec<MPoly>,
    /// The members of the solution family over μ₈.
    pub family: Vec<CycloMatrix>,
    /// One line per derived fact, in order.
    pub trace: Vec<String>,
}

impl EliminationResult {
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| format!("{} = 0", r.display_with(&var_name))).collect()
    }

    pub fn entry_string(&self, i: usize, j: usize) -> String {
        self.matrix[i - 1][j - 1].display_with(&var_name)
    }
}

fn images_of_family(
    xs: &[MPoly; 5],
    sign_var: usize,
    targets: &[usize],
    m: &[[MPoly; 5]; 5],
) -> Vec<MPoly> {
    // Coordinates `targets` of σ·p vanish for p = xs with sign_var = ±s: split
    // each condition into its even and odd parts in s.
    let mut out = Vec::new();
    for &k in targets {
        let img = (0..5).fold(MPoly::zero(), |acc, l| acc.add(&m[k][l].mul(&xs[l])));
        for (_, part) in img.coefficients_in(sign_var) {
            out.push(part);
        }
    }
    out
}

/// Determines every projective σ that maps the model to itself, exchanges the
/// images of (1, 0) and (a, 0), and preserves the families of images over 0 and ∞.
pub fn elimination_solve() -> Result<EliminationResult> {
    let mut e = Engine::new();
    let c: [[MPoly; 5]; 5] = std::array::from_fn(|i| std::array::from_fn(|j| MPoly::var(c_var(i + 1, j + 1))));
    let a = MPoly::var(A);
    let int = MPoly::int;
    let am1 = a.sub(&int(1));
    let e_idx = |i: usize, j: usize| (i, j);

    // [0:0:0:0:1] ↦ [0:0:0:a−1:1], scaled so that the last entry is 1
    e.add_equations((0..3).map(|i| c[i][4].clone()));
    e.add_equations([c[3][4].sub(&am1), c[4][4].sub(&int(1))]);
    e.propagate("image of (1,0)")?;
    e.check(&StepCheck {
        name: "image of (1,0)",
        entries: vec![
            (e_idx(1, 5), int(0)),
            (e_idx(2, 5), int(0)),
            (e_idx(3, 5), int(0)),
            (e_idx(4, 5), am1.clone()),
            (e_idx(5, 5), int(1)),
        ],
    })?;

    // [0:0:0:a−1:1] ↦ [0:0:0:0:1]
    e.add_equations((0..4).map(|i| am1.mul(&c[i][3]).add(&c[i][4])));
    e.propagate("image of (a,0)")?;
    e.check(&StepCheck {
        name: "image of (a,0)",
        entries: vec![(e_idx(1, 4), int(0)), (e_idx(2, 4), int(0)), (e_idx(3, 4), int(0)), (e_idx(4, 4), int(-1))],
    })?;

    // points over ∞, [1:s:0:ε:0] with s = ±1 (ε = 1) or s = ±√−1 (ε = −1), go to points with z₃ = z₅ = 0
    let s = MPoly::var(SQRT_M1);
    let m = e.matrix();
    for eps in [1, -1] {
        let xs = [int(1), s.clone(), int(0), int(eps), int(0)];
        e.add_equations(images_of_family(&xs, SQRT_M1, &[2, 4], &m));
    }
    e.propagate("points over infinity")?;
    e.check(&StepCheck {
        name: "points over infinity",
        entries: vec![
            (e_idx(3, 1), int(0)),
            (e_idx(3, 2), int(0)),
            (e_idx(5, 1), int(0)),
            (e_idx(5, 2), int(0)),
            (e_idx(5, 4), int(0)),
        ],
    })?;

    // points over 0, [±√a:0:0:−1:1], go to points with z₂ = z₃ = 0
    let m = e.matrix();
    let xs = [MPoly::var(SQRT_A), int(0), int(0), int(-1), int(1)];
    e.add_equations(images_of_family(&xs, SQRT_A, &[1, 2], &m));
    e.propagate("points over 0")?;
    e.check(&StepCheck { name: "points over 0", entries: vec![(e_idx(2, 1), int(0))] })?;

    // σ*Q_k ∈ span(Q₁, Q₂, Q₃), one form at a time
    let forms = QuadricSystem::symbolic().forms(&MPoly::zero())?;
    let c33 = MPoly::var(c_var(3, 3));
    let expectations = [
        StepCheck {
            name: "pullback of Q1",
            entries: vec![(e_idx(2, 3), int(0)), (e_idx(2, 2), c33.pow(2)), (e_idx(5, 3), int(0))],
        },
        StepCheck {
            name: "pullback of Q2",
            entries: vec![
                (e_idx(1, 3), int(0)),
                (e_idx(1, 2), int(0)),
                (e_idx(4, 1), int(0)),
                (e_idx(4, 2), int(0)),
                (e_idx(4, 3), int(0)),
                (e_idx(1, 1), c33.pow(4).neg()),
                ((0, 0), int(-1)),
            ],
        },
        StepCheck { name: "pullback of Q3", entries: vec![] },
    ];
    for (k, check) in expectations.iter().enumerate() {
        let m = e.matrix();
        let forms_now: [QuadForm<MPoly>; 3] = forms.clone().map(|q| {
            QuadForm::from_terms(q.terms().map(|(&ij, c)| (ij, e.reduce(c))).collect())
        });
        let (_, rem) = ideal_decomposition(&forms_now[k].pullback(&m), &forms_now);
        e.add_equations(rem.terms().map(|(_, c)| c.clone()).collect::<Vec<_>>());
        e.propagate(check.name)?;
        e.check(check)?;
    }

    let a_val = e
        .reduce(&MPoly::var(A))
        .as_constant()
        .ok_or_else(|| Error::Divergence { step: "final".into(), detail: "a not determined".into() })?;
    let matrix = e.matrix();
    let relations = e.pending.clone();
    let want = c33.pow(8).sub(&int(1));
    if relations != [want.clone()] {
        return Err(Error::Divergence {
            step: "pullback of Q3".into(),
            detail: format!(
                "left with {:?}, expected {}",
                relations.iter().map(Engine::show).collect::<Vec<_>>(),
                Engine::show(&want)
            ),
        });
    }
    let free: BTreeSet<usize> = matrix.iter().flatten().flat_map(MPoly::variables).collect();
    if free.iter().any(|&v| v != c_var(3, 3)) {
        return Err(Error::Divergence { step: "final".into(), detail: "entries other than c33 left free".into() });
    }
    // c33 = η with η⁸ = 1: evaluate at t^j in ℤ[t]/(t⁸ − 1)
    let mut family = Vec::new();
    for j in 0..MU as i64 {
        let eta = CyclotomicElement::t_pow(MU, j);
        let ev = |p: &MPoly| {
            p.eval_with(
                |_| eta.clone(),
                |r| CyclotomicElement::constant(MU, r.to_integer()),
                CyclotomicElement::zero(MU),
                |x, y| x * y,
                |x, y| x + y,
            )
        };
        if !ev(&want).is_zero() {
            continue;
        }
        family.push(std::array::from_fn(|i| std::array::from_fn(|k| ev(&matrix[i][k]))));
    }
    Ok(EliminationResult { a: a_val, matrix, relations, family, trace: e.trace })
}

/// Both sides of the automorphism count at level 8.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismCount {
    /// Elements of PSL(2, ℤ/8) sending ∞ to 3/8.
    pub group_maps: usize,
    /// Of those, the ones that also send 3/8 back to ∞ and fix the τ₁-orbits of 1/4 and 1/2.
    pub group_swaps: usize,
    /// σ_j, j mod 8, preserving the model at a = −1.
    pub sigmas: usize,
}

impl AutomorphismCount {
    pub fn agrees(&self) -> bool {
        self.group_maps == 8 && self.group_swaps == 8 && self.sigmas == 8
    }
}

/// The σ's fixing the model at a = −1 are as many as the elements of PSL(2, ℤ/8)
/// exchanging the cusps ∞ and 3/8.
pub fn automorphism_count_crosscheck() -> Result<AutomorphismCount> {
    let cls = |x, z| -> Result<_> { cusp_canonical(8, &Cusp::new(x, z)?) };
    let inf = cusp_canonical(8, &Cusp::infinity())?;
    let c38 = cls(3, 8)?;
    let orbits = tau_orbits(8, 1)?;
    let orbit_of = |c: &CuspClassQ| orbits.iter().position(|o| o.contains(c));
    let fixed = [cls(1, 4)?, cls(1, 2)?];
    let maps = maps_between_cusps(8, &inf, &c38)?;
    let group_swaps = maps
        .iter()
        .filter(|g| {
            g.act_on_class(&c38) == inf && fixed.iter().all(|c| orbit_of(&g.act_on_class(c)) == orbit_of(c))
        })
        .count();
    let mut sigmas = 0;
    for j in 0..MU as u32 {
        if sigma_preserves_ideal(&rat_int(-1), j)? {
            sigmas += 1;
        }
    }
    Ok(AutomorphismCount { group_maps: maps.len(), group_swaps, sigmas })
}

pub fn fmt_point<R: fmt::Display>(p: &[R; 5]) -> String {
    format!("[{}]", p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
}

pub fn fmt_rational_point(p: &ProjPoint<Rational>) -> String {
    format!("[{}]", p.coords.iter().map(fmt_rational).collect::<Vec<_>>().join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{x8_numeric, x8_to_quartic};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cyclo_point(v: [i64; 5]) -> ProjPoint<CyclotomicElement> {
        ProjPoint::new(v.map(|k| CyclotomicElement::constant(MU, BigInt::from(k)))).unwrap()
    }

    #[test]
    fn residuals_at_special_points() {
        for a in [-1, 2, 5] {
            let sys = QuadricSystem::with_value(rat_int(a));
            let r = quadric_residuals(&sys, &ProjPoint::from_ints([0, 0, 0, 0, 1]).unwrap()).unwrap();
            assert!(r.iter().all(Zero::is_zero));
            let r = quadric_residuals(&sys, &ProjPoint::from_ints([0, 0, 0, a - 1, 1]).unwrap()).unwrap();
            assert!(r.iter().all(Zero::is_zero));
            let r = quadric_residuals(&sys, &ProjPoint::from_ints([1, 1, 0, 1, 0]).unwrap()).unwrap();
            assert!(r.iter().all(Zero::is_zero));
        }
        let r = quadric_residuals(&QuadricSystem::with_value(rat_int(2)), &ProjPoint::from_ints([1, 0, 0, 0, 0]).unwrap())
            .unwrap();
        assert_eq!(r, [rat_int(0), rat_int(0), rat_int(1)]);
        for (name, pt) in special_point_images() {
            let r = special_point_residuals(&pt).unwrap();
            assert!(r.iter().all(MPoly::is_zero), "{name}: {r:?}");
        }
    }

    #[test]
    fn symbolic_needs_polynomial_coordinates() {
        assert!(quadric_residuals(&QuadricSystem::symbolic(), &ProjPoint::from_ints([0, 0, 0, 0, 1]).unwrap()).is_err());
        assert!(ProjPoint::from_ints([0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn numeric_embedding() {
        let sys = QuadricSystem::with_value(rat_int(-1));
        let c = x8_numeric();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let zeta8 = Complex64::from_polar(1.0, std::f64::consts::PI / 4.0);
        for _ in 0..100 {
            let x = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let y = c.rhs(x).powf(1.0 / 8.0);
            let pt = embed_point(x, y).unwrap();
            let scale = pt.coords().iter().map(|z| z.norm()).fold(0.0, f64::max).powi(2);
            for r in quadric_residuals(&sys, &pt).unwrap() {
                assert!(r.norm() / scale < 1e-9);
            }
            // the deck transformation acts by diag(ζ⁴, ζ², ζ, 1, 1) up to scaling
            let moved = embed_point(x, y * zeta8).unwrap();
            let diag = [zeta8.powi(4), zeta8.powi(2), zeta8, Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
            let lam = zeta8.powi(7);
            for k in 0..5 {
                let lhs = moved.coords()[k] * lam;
                let rhs = diag[k] * pt.coords()[k];
                assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
            }
        }
        assert!(embed_point(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).is_err());
        let _ = x8_to_quartic;
    }

    #[test]
    fn sigma_family() {
        for j in 0..8 {
            assert!(sigma_preserves_ideal(&rat_int(-1), j).unwrap(), "j={j}");
            for a in [2, 3, -2] {
                assert!(!sigma_preserves_ideal(&rat_int(a), j).unwrap(), "a={a} j={j}");
            }
        }
        assert!(sigma_preserves_ideal(&rat_int(1), 0).is_err());
        let img = cyclo_point([0, 0, 0, 0, 1]).transform(&sigma_matrix(0).matrix).unwrap();
        assert!(img.proj_eq(&cyclo_point([0, 0, 0, -2, 1])));
        let back = cyclo_point([0, 0, 0, -2, 1]).transform(&sigma_matrix(3).matrix).unwrap();
        assert!(back.proj_eq(&cyclo_point([0, 0, 0, 0, 1])));
    }

    #[test]
    fn sigma_structure() {
        let s0 = sigma_matrix(0).matrix;
        for j in 0..8u32 {
            assert_eq!(sigma_matrix(j).matrix, mat_mul(&s0, &deck_matrix(j)));
            let e = &sigma_matrix(j).eta3;
            let e2 = e * e;
            assert_eq!(e2.pow(4), CyclotomicElement::one(MU));
            for k in 0..8u32 {
                let prod = mat_mul(&sigma_matrix(j).matrix, &sigma_matrix(k).matrix);
                assert_eq!(prod, deck_matrix(j + k));
            }
        }
    }

    #[test]
    fn elimination() {
        let r = elimination_solve().unwrap();
        assert!(r.trace.iter().any(|l| l == "a = -1"));
        assert!(r.trace.iter().any(|l| l == "c33 != 0 (invertibility)"));
        assert_eq!(r.a, rat_int(-1));
        assert_eq!(r.entry_string(4, 5), "-2");
        assert_eq!(r.entry_string(5, 5), "1");
        assert_eq!(r.entry_string(1, 1), "-c33^4");
        assert_eq!(r.entry_string(2, 2), "c33^2");
        assert_eq!(r.relation_strings(), ["c33^8 - 1 = 0"]);
        assert_eq!(r.family.len(), 8);
        let sigmas: Vec<CycloMatrix> = (0..8).map(|j| sigma_matrix(j).matrix).collect();
        assert_eq!(r.family, sigmas);
    }

    #[test]
    fn counts_agree() {
        let c = automorphism_count_crosscheck().unwrap();
        assert!(c.agrees(), "{c:?}");
    }
}
