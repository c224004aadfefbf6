use serde_json::{json, Value};

use modcurve::arith::{fmt_rational, rat_int, Rational};
use modcurve::canonical::{
    elimination_solve, quadric_residuals, sigma_matrix, sigma_preserves_ideal, special_point_residuals,
    special_point_images, var_name, ProjPoint, QuadForm, QuadricSystem,
};
use modcurve::curve::{solve_branch_constant, SemiHyperellipticCurve};
use modcurve::cusps::{
    cusp_canonical, h_n_formula, tau_orbits, width, width_bruteforce, width_distribution, width_distribution_direct,
    Cusp,
};
use modcurve::equation::{
    branch_orbits, build_equation, constant_letter, exponent_from_rotation, normalize_equation, rotation_number,
    Convention, SemiHyperellipticEquation,
};
use modcurve::genus::{euler_genus, genus_q, genus_qn, is_semihyperelliptic_level, GenusReport};
use modcurve::group::{
    center, enumerate_psl, maps_between_cusps, max_element_order, max_order_closed_form, r_formula, type_classify,
    LevelType,
};
use modcurve::poly::MPoly;
use modcurve::verify::{verify_canonical, verify_iso, verify_max_orders, verify_oracles, verify_table, Check};
use modcurve::{Error, Result};

use crate::report::{s, Output, Report};
use crate::{Command, EquationArgs, GroupArgs, VerifyArgs};

pub fn run(cmd: &Command, seed: u64) -> Result<Output> {
    match cmd {
        Command::Genus { q, n } => genus(*q, *n),
        Command::Cusps { q, n, widths, distribution } => cusps(*q, n.unwrap_or(*q), *widths, *distribution),
        Command::Rotation { q, n, cusp } => rotation(*q, *n, cusp),
        Command::Equation(a) => equation(a),
        Command::Group(a) => group(a),
        Command::Verify(a) => verify(a, seed),
        Command::LiftSolve { q, swap } => lift_solve(*q, swap.as_deref()),
        Command::Canonical { a, eta, eliminate } => canonical(a, *eta, *eliminate),
    }
}

fn genus(q: u32, n: Option<u32>) -> Result<Output> {
    if q == 0 {
        return Err(Error::InvalidArgument("q must be >= 1".into()));
    }
    let mut r = Report::new("genus").input("q", s(q));
    if let Some(n) = n {
        r = r.input("n", s(n));
    }
    let mut out = Output::new(r);
    let g = genus_q(q)?;
    out.report.set("g_q", s(&g));
    out.line(format!("g_{q} = {g}"));
    if q <= 2 {
        let note = "X_1 and X_2 are taken to be the sphere";
        out.report.set("note", s(note));
        out.line(format!("note: {note}"));
    }
    if let Some(n) = n {
        let rep = GenusReport::new(q, n)?;
        let key = if n == q { "g_q".to_string() } else { format!("g_q^{n}") };
        out.report.set(&key, s(&rep.g));
        out.report.set("h", s(&rep.h));
        out.report.set("R", s(&rep.r));
        out.line(format!("{}: g = {}, h = {}, R = {}", if n == q { format!("X_{q}") } else { format!("X_{q}^{n}") }, rep.g, rep.h, rep.r));
        if q >= 4 {
            out.report.check(Check::new("g = 1 - h/2 + R/12", &rep.g, euler_genus(&rep.h, &rep.r)?));
        }
        if n != q && q >= 5 {
            out.report.check(Check::new("closed formula", genus_qn(q, n)?, &rep.g));
        }
    }
    Ok(out)
}

fn cusps(q: u32, n: u32, widths: bool, distribution: bool) -> Result<Output> {
    let orbits = tau_orbits(q, n)?;
    let r = Report::new("cusps").input("q", s(q)).input("n", s(n)).input("widths", widths).input("distribution", distribution);
    let mut out = Output::new(r);
    let source = if q >= 5 { "formula q/gcd(q/n, z)" } else { "congruence scan (the formula needs q >= 5)" };
    let mut rows = Vec::new();
    out.line(format!("{} cusps of X_{q}^{n}; widths by {source}", orbits.len()));
    out.line("representative  size  width");
    for o in &orbits {
        let rep = o.representative();
        let w = width(q, n, &rep)?;
        rows.push(json!({"representative": s(rep), "size": s(o.size()), "width": s(w)}));
        out.line(format!("{:<15} {:>5} {:>6}", rep.to_string(), o.size(), w));
        if widths {
            out.report.check(Check::new(format!("width at {rep}"), width_bruteforce(q, n, &rep)?, w));
        }
    }
    out.report.set("count", s(orbits.len()));
    out.report.set("orbits", Value::Array(rows));
    out.report.set("width_source", s(source));
    if q >= 5 {
        out.report.check(Check::new("number of cusps", h_n_formula(q, n)?, orbits.len()));
    }
    if distribution {
        let direct = width_distribution_direct(q, n)?;
        let dist: serde_json::Map<String, Value> = direct.iter().map(|(w, c)| (w.to_string(), s(c))).collect();
        out.line(format!(
            "widths: {}",
            direct.iter().map(|(w, c)| format!("{c} of width {w}")).collect::<Vec<_>>().join(", ")
        ));
        out.report.set("distribution", Value::Object(dist));
        if q >= 5 {
            out.report.check(Check::new("distribution formula", format!("{direct:?}"), format!("{:?}", width_distribution(q, n)?)));
        }
    }
    Ok(out)
}

fn rotation(q: u32, n: u32, cusp: &str) -> Result<Output> {
    let c: Cusp = cusp.parse()?;
    let rot = rotation_number(q, n, &c)?;
    let p = (q / n) as i64;
    let r = Report::new("rotation").input("q", s(q)).input("n", s(n)).input("cusp", s(cusp));
    let mut out = Output::new(r);
    out.report.set("rotation", s(rot));
    out.report.set("orbit_len", s(rot.orbit_len));
    out.report.set("k", s(rot.k));
    let branched = rot.orbit_len < p;
    let m = if branched { Some(exponent_from_rotation(p, &rot)?) } else { None };
    out.report.set("exponent", m.map_or(Value::Null, s));
    out.line(format!("τ_{n} at {c} on X_{q}: {rot}"));
    out.line(match m {
        Some(m) => format!("branched, exponent m = {m}"),
        None => "unbranched orbit".to_string(),
    });
    Ok(out)
}

fn with_one_constant(eq: &SemiHyperellipticEquation) -> Result<(SemiHyperellipticCurve, usize, String)> {
    let open = eq.undetermined();
    let [label] = open.as_slice() else {
        return Err(Error::Unsupported(format!(
            "solving needs exactly one undetermined constant, have {}",
            if open.is_empty() { "none".to_string() } else { open.join(", ") }
        )));
    };
    let curve = SemiHyperellipticCurve::from_equation(eq.clone())?;
    let idx = curve.branches().iter().position(|b| b.label.to_string() == *label).expect("label present");
    Ok((curve, idx, label.clone()))
}

fn equation(a: &EquationArgs) -> Result<Output> {
    let q = a.q;
    let convention: Convention = a.convention.parse()?;
    if !is_semihyperelliptic_level(q)? {
        return Err(Error::Unsupported(format!(
            "X_{q} is not a cyclic cover of the line by any τ_n: g_{q}^1 = {}",
            genus_qn(q, 1)?
        )));
    }
    let eq = build_equation(q, a.n)?;
    let r = Report::new("equation")
        .input("q", s(q))
        .input("n", s(a.n))
        .input("normalize", a.normalize)
        .input("convention", s(convention.name()))
        .input("solve_constants", a.solve_constants);
    let mut out = Output::new(r);
    let mut rows = Vec::new();
    out.line("cusp   orbit  k  m");
    for b in branch_orbits(q, a.n)? {
        let rep = b.orbit.representative();
        rows.push(json!({
            "cusp": s(rep), "orbit_size": s(b.orbit.size()), "k": s(b.rotation.k), "m": s(b.exponent)
        }));
        out.line(format!("{:<6} {:>5} {:>2} {:>2}", rep.to_string(), b.orbit.size(), b.rotation.k, b.exponent));
    }
    out.report.set("rotations", Value::Array(rows));
    out.report.set("exponents", Value::Array(eq.exponent_multiset().into_iter().map(s).collect()));
    let mut shown = eq.clone();
    if a.normalize || a.solve_constants {
        shown = normalize_equation(&eq, convention, constant_letter(q))?;
    }
    if a.solve_constants {
        let (curve, idx, label) = with_one_constant(&shown)?;
        let one = curve
            .branches()
            .iter()
            .position(|b| b.label.to_string() == "1")
            .ok_or_else(|| Error::Unsupported("no branch point at 1".into()))?;
        let sols = solve_branch_constant(&curve, (one, idx))?;
        out.report.set("solutions", Value::Array(sols.iter().map(|v| s(fmt_rational(v))).collect()));
        let [v] = sols.as_slice() else {
            return Err(Error::Unsupported(format!("{} admissible values for {label}", sols.len())));
        };
        out.line(format!("{label} = {}", fmt_rational(v)));
        shown = shown.substitute(&label, v.clone())?;
    }
    let undetermined = shown.undetermined();
    if !undetermined.is_empty() {
        out.line(format!("undetermined: {}", undetermined.join(", ")));
    }
    out.report.set("undetermined", Value::Array(undetermined.iter().map(s).collect()));
    out.report.set("equation", s(&shown));
    out.line(shown.to_string());
    Ok(out)
}

fn group(a: &GroupArgs) -> Result<Output> {
    let q = a.q;
    let mut r = Report::new("group").input("q", s(q));
    for (k, v) in [("order", a.order), ("max_order", a.max_order), ("center", a.center)] {
        r = r.input(k, v);
    }
    if let Some(c) = &a.cusp_maps {
        r = r.input("cusp_maps", Value::Array(c.iter().map(s).collect()));
    }
    let mut out = Output::new(r);
    let none = !a.order && !a.max_order && !a.center && a.cusp_maps.is_none();
    if a.order || none {
        let n = enumerate_psl(q)?.len();
        out.report.set("order", s(n));
        out.line(format!("|PSL(2, Z/{q})| = {n}"));
        out.report.check(Check::new("order formula", r_formula(q)?, n));
    }
    if a.max_order {
        let m = max_element_order(q)?;
        let ty = match type_classify(q) {
            LevelType::TypeI => "I",
            LevelType::TypeII => "II",
        };
        out.report.set("max_order", s(m));
        out.report.set("type", s(ty));
        out.line(format!("largest element order {m}, type {ty}"));
        out.report.check(Check::new("closed form (3q/2 for type I, q for type II)", max_order_closed_form(q), m));
    }
    if a.center {
        let z = center(q)?;
        out.report.set("center", Value::Array(z.iter().map(s).collect()));
        out.report.set("center_order", s(z.len()));
        out.line(format!("center ({} elements): {}", z.len(), z.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")));
    }
    if let Some(c) = &a.cusp_maps {
        let from = cusp_canonical(q, &c[0].parse()?)?;
        let to = cusp_canonical(q, &c[1].parse()?)?;
        let maps = maps_between_cusps(q, &from, &to)?;
        out.report.set("maps", Value::Array(maps.iter().map(s).collect()));
        out.report.set("count", s(maps.len()));
        out.line(format!("{} elements send {} to {}", maps.len(), c[0], c[1]));
        for g in &maps {
            out.line(format!("  {g}"));
        }
    }
    Ok(out)
}

fn verify(a: &VerifyArgs, seed: u64) -> Result<Output> {
    let none = a.tables.is_empty() && !a.oracles && !a.max_orders && !a.canonical && !a.iso;
    let mut r = Report::new("verify")
        .input("tables", Value::Array(a.tables.iter().map(s).collect()))
        .input("oracles", a.oracles)
        .input("max_orders", a.max_orders)
        .input("canonical", a.canonical)
        .input("iso", a.iso);
    if let Some(m) = a.q_max {
        r = r.input("q_max", s(m));
    }
    if a.iso || none {
        r = r.input("samples", s(a.samples)).input("seed", s(seed));
    }
    let mut out = Output::new(r);
    let tables = if none { vec![1, 2, 6, 7] } else { a.tables.clone() };
    let mut sections: Vec<(String, Vec<Check>)> = Vec::new();
    for t in tables {
        sections.push((format!("table {t}"), verify_table(t, a.q_max.unwrap_or(u32::MAX))?));
    }
    if a.oracles || none {
        sections.push(("oracles".into(), verify_oracles(a.q_max.unwrap_or(24))?));
    }
    if a.max_orders {
        sections.push(("max orders".into(), verify_max_orders(2, a.q_max.unwrap_or(24))?));
    }
    if a.canonical || none {
        sections.push(("canonical".into(), verify_canonical()?));
    }
    if a.iso || none {
        let (checks, rep) = verify_iso(a.samples, seed)?;
        out.report.set("iso_points", s(rep.points));
        out.report.set("iso_max_residual", json!(rep.max_residual));
        out.report.set("iso_max_roundtrip", json!(rep.max_roundtrip));
        sections.push(("iso".into(), checks));
    }
    let mut summary = serde_json::Map::new();
    for (name, checks) in sections {
        let failed = checks.iter().filter(|c| !c.pass).count();
        summary.insert(name.clone(), json!({"checked": s(checks.len()), "failed": s(failed)}));
        out.line(format!("{name}: {} checked, {}", checks.len(), if failed == 0 { "pass".into() } else { format!("{failed} FAILED") }));
        for c in checks {
            if !c.pass {
                out.line(format!("  {}: expected {}, got {}", c.name, c.expected, c.got));
            }
            out.report.check(c);
        }
    }
    out.report.set("sections", Value::Object(summary));
    out.brief = true;
    Ok(out)
}

fn lift_solve(q: u32, swap: Option<&[usize]>) -> Result<Output> {
    let eq = normalize_equation(&build_equation(q, 1)?, Convention::LargestToInfinity, constant_letter(q))?;
    let (curve, idx, label) = with_one_constant(&eq)?;
    let pair = match swap {
        Some([i, j]) => (*i, *j),
        Some(_) => return Err(Error::InvalidArgument("--swap takes two indices".into())),
        None => {
            let one = curve.branches().iter().position(|b| b.label.to_string() == "1").expect("normalized");
            (one, idx)
        }
    };
    let r = Report::new("lift-solve").input("q", s(q)).input("swap", json!([s(pair.0), s(pair.1)]));
    let mut out = Output::new(r);
    out.line(format!("{eq}"));
    let sols = solve_branch_constant(&curve, pair)?;
    out.report.set("equation", s(&eq));
    out.report.set("constant", s(&label));
    out.report.set("solutions", Value::Array(sols.iter().map(|v| s(fmt_rational(v))).collect()));
    if sols.is_empty() {
        out.line(format!("no value of {label} admits such a lift"));
    }
    for v in &sols {
        let solved = eq.substitute(&label, v.clone())?;
        out.line(format!("{label} = {}: {solved}", fmt_rational(v)));
        if sols.len() == 1 {
            out.report.set("solved", s(&solved));
        }
    }
    Ok(out)
}

fn form_string(f: &QuadForm<MPoly>) -> String {
    let mut out = String::new();
    let mut terms: Vec<_> = f.terms().collect();
    terms.sort_by_key(|(&(i, j), _)| (i != j, i, j));
    for (&(i, j), c) in terms {
        let mono = if i == j { format!("z{}^2", i + 1) } else { format!("z{}*z{}", i + 1, j + 1) };
        let coeff = c.display_with(&var_name);
        let term = match coeff.as_str() {
            "1" => format!(" + {mono}"),
            "-1" => format!(" - {mono}"),
            _ if c.num_terms() == 1 && coeff.starts_with('-') => format!(" - {}*{mono}", &coeff[1..]),
            _ if c.num_terms() == 1 => format!(" + {coeff}*{mono}"),
            _ => format!(" + ({coeff})*{mono}"),
        };
        out.push_str(&term);
    }
    let out = out.trim_start();
    out.strip_prefix("+ ").map(str::to_string).unwrap_or_else(|| format!("-{}", &out[2..]))
}

fn canonical(a_str: &str, eta: Option<u32>, eliminate: bool) -> Result<Output> {
    let a: Rational = a_str.parse().map_err(|_| Error::InvalidArgument(format!("cannot parse a = '{a_str}'")))?;
    let mut r = Report::new("canonical").input("a", s(fmt_rational(&a))).input("eliminate", eliminate);
    if let Some(j) = eta {
        r = r.input("eta", s(j));
    }
    if !a.is_integer() {
        return Err(Error::Unsupported(format!(
            "a = {} is not an integer; σ is checked over ℤ[t]/(t^8 - 1)",
            fmt_rational(&a)
        )));
    }
    let mut out = Output::new(r);
    let sys = QuadricSystem::with_value(a.clone());
    let forms: Vec<String> = sys.forms(&MPoly::zero())?.iter().map(form_string).collect();
    for (i, f) in forms.iter().enumerate() {
        out.line(format!("Q{} = {f}", i + 1));
    }
    out.report.set("quadrics", Value::Array(forms.iter().map(s).collect()));
    for (name, pt) in special_point_images() {
        let res = special_point_residuals(&pt)?;
        out.report.check(Check::truth(format!("image of {name} on the model"), res.iter().all(MPoly::is_zero)));
    }
    let js: Vec<u32> = match eta {
        Some(j) => vec![j % 8],
        None => (0..8).collect(),
    };
    let mut preserving = Vec::new();
    for &j in &js {
        if sigma_preserves_ideal(&a, j)? {
            preserving.push(j);
        }
    }
    out.line(format!(
        "sigma_j preserving the model at a = {}: {} of {} ({:?})",
        fmt_rational(&a),
        preserving.len(),
        js.len(),
        preserving
    ));
    out.report.set("preserving", Value::Array(preserving.iter().map(s).collect()));
    let img = ProjPoint::from_ints([0, 0, 0, 0, 1])?;
    let sigma0 = sigma_matrix(0).matrix;
    let moved: Vec<String> = (0..5).map(|i| sigma0[i][4].to_string()).collect();
    out.line(format!("sigma_0 [0, 0, 0, 0, 1] = [{}]", moved.join(", ")));
    out.report.set("sigma0_image", Value::Array(moved.iter().map(s).collect()));
    let on = quadric_residuals(&sys, &img)?;
    out.report.set("base_point_on_model", Value::Bool(on.iter().all(|v| *v == rat_int(0))));
    if eliminate {
        let e = elimination_solve()?;
        for l in &e.trace {
            out.line(format!("  {l}"));
        }
        out.line(format!("a = {}; relations: {}", fmt_rational(&e.a), e.relation_strings().join(", ")));
        let rows: Vec<Value> = (1..=5).map(|i| Value::Array((1..=5).map(|j| s(e.entry_string(i, j))).collect())).collect();
        out.report.set("elimination_a", s(fmt_rational(&e.a)));
        out.report.set("elimination_matrix", Value::Array(rows));
        out.report.set("relations", Value::Array(e.relation_strings().iter().map(s).collect()));
        out.report.set("trace", Value::Array(e.trace.iter().map(s).collect()));
        out.report.set("family_size", s(e.family.len()));
        let sigmas: Vec<_> = (0..8).map(|j| sigma_matrix(j).matrix).collect();
        out.report.check(Check::truth("solution family equals sigma_j, j mod 8", e.family == sigmas));
    }
    Ok(out)
}
