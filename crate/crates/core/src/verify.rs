//! Golden table data and the cross-checks run against it.
//!
//! The data file holds one record per line, `table<TAB>row<TAB>column<TAB>value`,
//! with `#` comments, so that a failure points at a transcribed cell.

use std::fmt::Display;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::rat_int;
use crate::canonical::{automorphism_count_crosscheck, elimination_solve, sigma_preserves_ideal};
use crate::curve::{
    differential_order, holomorphic_basis, verify_isomorphism_numeric, x8_numeric, x8_quartic_numeric, x8_to_quartic,
    quartic_to_x8, CurvePoint, Monomial, SemiHyperellipticCurve,
};
use crate::cusps::{enumerate_cusps, h_formula, h_n_formula, tau_orbits, width, width_bruteforce, Cusp};
use crate::equation::{branch_orbits, BranchLabel, BranchPoint};
use crate::error::{Error, Result};
use crate::genus::{genus_prime_quotient, genus_q, genus_qn};
use crate::group::{enumerate_psl, max_element_order, max_order_closed_form, r_formula, r_n_formula};

pub const GOLDEN: &str = include_str!("../data/golden.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRecord {
    pub table: u32,
    pub row: String,
    pub col: String,
    pub value: i64,
}

pub fn parse_golden(text: &str) -> Result<Vec<GoldenRecord>> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim_end();
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::InvalidArgument(format!("golden data line {}: {line:?}", no + 1));
        let f: Vec<&str> = line.split('\t').collect();
        let [table, row, col, value] = f.as_slice() else { return Err(bad()) };
        out.push(GoldenRecord {
            table: table.parse().map_err(|_| bad())?,
            row: row.to_string(),
            col: col.to_string(),
            value: value.parse().map_err(|_| bad())?,
        });
    }
    Ok(out)
}

pub fn golden_records() -> Result<Vec<GoldenRecord>> {
    parse_golden(GOLDEN)
}

/// One verified datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub expected: String,
    pub got: String,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl Display, got: impl Display) -> Self {
        let (expected, got) = (expected.to_string(), got.to_string());
        Check { name: name.into(), pass: expected == got, expected, got }
    }

    pub fn truth(name: impl Into<String>, got: bool) -> Self {
        Check::new(name, true, got)
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Genus of X_q^1; for q < 5 the quotient of a genus-0 curve has genus 0.
fn genus_q1(q: u32) -> Result<BigInt> {
    if q >= 5 {
        genus_qn(q, 1)
    } else if genus_q(q)?.is_zero() {
        Ok(BigInt::zero())
    } else {
        Err(Error::Unsupported(format!("g_{q}^1")))
    }
}

/// g′ for type I levels; q = 2 has g_2 = 0 so its quotient has genus 0 too.
fn genus_prime(q: u32) -> Result<BigInt> {
    if q == 2 {
        Ok(BigInt::zero())
    } else {
        genus_prime_quotient(q)
    }
}

/// The X₈ model y⁸ = x²(x − 1)(x − a) with a symbolic.
pub fn x8_model() -> SemiHyperellipticCurve {
    let v = |k| BranchLabel::Value(rat_int(k));
    SemiHyperellipticCurve::new(
        8,
        vec![
            BranchPoint { label: v(0), exponent: 2 },
            BranchPoint { label: v(1), exponent: 1 },
            BranchPoint { label: BranchLabel::Symbolic("a".into()), exponent: 1 },
        ],
    )
    .expect("valid model")
}

/// Column names of the order table and their monomials on the X₈ model.
pub fn order_columns() -> Vec<(&'static str, Monomial)> {
    let f = Monomial::function;
    let d = Monomial::differential;
    vec![
        ("x", f(vec![1, 0, 0], 0)),
        ("x-1", f(vec![0, 1, 0], 0)),
        ("y", f(vec![0, 0, 0], 1)),
        ("dx", d(vec![0, 0, 0], 0)),
        ("dx/y^3", d(vec![0, 0, 0], -3)),
        ("x*dx/y^5", d(vec![1, 0, 0], -5)),
        ("x*dx/y^6", d(vec![1, 0, 0], -6)),
        ("x*(x-1)*dx/y^7", d(vec![1, 1, 0], -7)),
        ("x*dx/y^7", d(vec![1, 0, 0], -7)),
    ]
}

/// Points of the order table: the row name and every point it stands for.
pub fn order_rows() -> Vec<(&'static str, Vec<CurvePoint>)> {
    let br = |index, sheets: i64| (1..=sheets).map(|sheet| CurvePoint::Branch { index, sheet }).collect();
    vec![
        ("0_l", br(0, 2)),
        ("(1,0)", br(1, 1)),
        ("(a,0)", br(2, 1)),
        ("inf_l'", (1..=4).map(|sheet| CurvePoint::Infinity { sheet }).collect()),
    ]
}

/// Order of a monomial along a row; the points of a row must agree.
pub fn row_order(c: &SemiHyperellipticCurve, m: &Monomial, pts: &[CurvePoint]) -> Result<String> {
    let orders: Vec<i64> = pts.iter().map(|p| differential_order(c, m, p)).collect::<Result<_>>()?;
    if orders.windows(2).all(|w| w[0] == w[1]) {
        Ok(orders[0].to_string())
    } else {
        Ok(format!("{orders:?}"))
    }
}

/// Compares table `table` with the computation; q_max bounds the level for tables 1 and 7.
pub fn verify_table(table: u32, q_max: u32) -> Result<Vec<Check>> {
    let recs: Vec<GoldenRecord> = golden_records()?.into_iter().filter(|r| r.table == table).collect();
    if recs.is_empty() {
        return Err(Error::InvalidArgument(format!("no golden data for table {table}")));
    }
    let mut out = Vec::new();
    let x8 = x8_model();
    let orbits = if table == 2 { branch_orbits(8, 1)? } else { Vec::new() };
    for r in recs {
        let name = format!("table {} {} {}", r.table, r.row, r.col);
        let got: String = match table {
            1 | 7 => {
                let q: u32 = r.col.parse().map_err(|_| Error::InvalidArgument(name.clone()))?;
                if q > q_max {
                    continue;
                }
                match r.row.as_str() {
                    "g_q" => genus_q(q)?.to_string(),
                    "g_q^1" => genus_q1(q)?.to_string(),
                    "g'" => genus_prime(q)?.to_string(),
                    _ => return Err(Error::InvalidArgument(name)),
                }
            }
            2 => {
                let cusp: Cusp = r.row.parse()?;
                let cls = crate::cusps::cusp_canonical(8, &cusp)?;
                let b = orbits
                    .iter()
                    .find(|b| b.orbit.contains(&cls))
                    .ok_or_else(|| Error::NoSolution(format!("{cusp} is not a branch orbit")))?;
                match r.col.as_str() {
                    "n" => b.rotation.orbit_len.to_string(),
                    "gcd" => num_integer::gcd(8, cusp.z()).to_string(),
                    "k" => b.rotation.k.to_string(),
                    "m" => b.exponent.to_string(),
                    _ => return Err(Error::InvalidArgument(name)),
                }
            }
            6 => {
                let cols = order_columns();
                let rows = order_rows();
                let (_, m) = cols.iter().find(|(n, _)| *n == r.col).ok_or_else(|| Error::InvalidArgument(name.clone()))?;
                let (_, pts) = rows.iter().find(|(n, _)| *n == r.row).ok_or_else(|| Error::InvalidArgument(name.clone()))?;
                row_order(&x8, m, pts)?
            }
            _ => return Err(Error::InvalidArgument(format!("unknown table {table}"))),
        };
        out.push(Check::new(name, r.value, got));
    }
    if table == 6 {
        let mut basis: Vec<String> = holomorphic_basis(&x8)?.iter().map(|m| x8.format_monomial(m)).collect();
        basis.sort();
        let mut want: Vec<&str> = order_columns()[4..].iter().map(|(n, _)| *n).collect();
        want.sort();
        out.push(Check::new("table 6 holomorphic basis", want.join(", "), basis.join(", ")));
    }
    Ok(out)
}

/// Closed formulas against enumeration for 3 ≤ q ≤ q_max.
pub fn verify_oracles(q_max: u32) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for q in 3..=q_max {
        out.push(Check::new(format!("q={q} |PSL|"), r_formula(q)?, enumerate_psl(q)?.len()));
        let cusps = enumerate_cusps(q)?;
        out.push(Check::new(format!("q={q} h_q"), h_formula(q)?, cusps.len()));
        for n in (1..=q).filter(|n| q % n == 0) {
            let bad = cusps
                .iter()
                .map(|c| c.representative())
                .map(|c| Ok((width(q, n, &c)?, width_bruteforce(q, n, &c)?, c)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .find(|(w, b, _)| w != b);
            out.push(match bad {
                Some((w, b, c)) => Check::new(format!("q={q} n={n} width at {c}"), b, w),
                None => Check::truth(format!("q={q} n={n} widths"), true),
            });
            if q >= 5 {
                let orbits = tau_orbits(q, n)?;
                out.push(Check::new(format!("q={q} n={n} h_q^n"), h_n_formula(q, n)?, orbits.len()));
                let total: i64 =
                    orbits.iter().map(|o| width(q, n, &o.representative())).collect::<Result<Vec<_>>>()?.iter().sum();
                out.push(Check::new(format!("q={q} n={n} sum of widths"), r_n_formula(q, n)?, total));
            }
        }
    }
    Ok(out)
}

/// Largest element order by enumeration against 3q/2 (type I) or q (type II).
pub fn verify_max_orders(q_min: u32, q_max: u32) -> Result<Vec<Check>> {
    (q_min..=q_max)
        .map(|q| Ok(Check::new(format!("q={q} max order"), max_order_closed_form(q), max_element_order(q)?)))
        .collect()
}

/// The canonical model of X₈: σ-family, sampled non-solutions, elimination, counts.
pub fn verify_canonical() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let valid = (0..8u32).map(|j| sigma_preserves_ideal(&rat_int(-1), j)).collect::<Result<Vec<_>>>()?;
    out.push(Check::new("sigmas preserving the ideal at a = -1", 8, valid.iter().filter(|v| **v).count()));
    for a in [2, 3, -2] {
        let any = (0..8u32).map(|j| sigma_preserves_ideal(&rat_int(a), j)).collect::<Result<Vec<_>>>()?;
        out.push(Check::new(format!("sigmas preserving the ideal at a = {a}"), 0, any.iter().filter(|v| **v).count()));
    }
    let e = elimination_solve()?;
    out.push(Check::new("elimination: a", "-1", crate::arith::fmt_rational(&e.a)));
    out.push(Check::new("elimination: family size", 8, e.family.len()));
    let sigmas: Vec<_> = (0..8).map(|j| crate::canonical::sigma_matrix(j).matrix).collect();
    out.push(Check::truth("elimination family equals sigma_j", e.family == sigmas));
    let c = automorphism_count_crosscheck()?;
    out.push(Check::new("group elements sending inf to 3/8", 8, c.group_maps));
    out.push(Check::new("of those, swapping and fixing the orbits of 1/4, 1/2", 8, c.group_swaps));
    Ok(out)
}

/// The quartic model of X₈, sampled numerically.
pub fn verify_iso(samples: usize, seed: u64) -> Result<(Vec<Check>, crate::curve::IsoReport)> {
    let r = verify_isomorphism_numeric(
        &x8_numeric(),
        &x8_quartic_numeric(),
        &x8_to_quartic,
        Some(&quartic_to_x8),
        samples,
        1e-9,
        seed,
    )?;
    let checks = vec![
        Check::truth(format!("residual {:.3e} < 1e-9", r.max_residual), r.max_residual < 1e-9),
        Check::truth(
            format!("round trip {:.3e} < 1e-9", r.max_roundtrip.unwrap_or(f64::NAN)),
            r.max_roundtrip.is_some_and(|d| d < 1e-9),
        ),
    ];
    Ok((checks, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_parses() {
        let recs = golden_records().unwrap();
        for (t, n) in [(1, 40), (2, 16), (6, 36), (7, 21)] {
            assert_eq!(recs.iter().filter(|r| r.table == t).count(), n, "table {t}");
        }
        assert!(parse_golden("1\tg_q\t3").is_err());
        assert!(parse_golden("x\tg_q\t3\t0").is_err());
        assert_eq!(parse_golden("# only a comment\n\n").unwrap(), vec![]);
    }

    #[test]
    fn a_wrong_value_is_reported() {
        let c = Check::new("t", 3, 4);
        assert!(!c.pass);
        assert!(!all_pass(&[Check::truth("ok", true), c]));
    }

    #[test]
    fn tables() {
        for t in [1, 2, 6, 7] {
            let checks = verify_table(t, 40).unwrap();
            let bad: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
            assert!(bad.is_empty(), "{bad:?}");
        }
        assert_eq!(verify_table(1, 20).unwrap().len(), 40);
        assert!(verify_table(3, 20).is_err());
    }
}
