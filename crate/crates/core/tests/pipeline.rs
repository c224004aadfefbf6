//! Cross-module checks: equations built from cusp data against closed genus formulas.

use num_traits::Zero;
use proptest::prelude::*;

use modcurve::curve::{curve_genus, holomorphic_basis, SemiHyperellipticCurve};
use modcurve::cusps::{cusp_canonical, find_equivalence_witness, Cusp};
use modcurve::equation::{
    build_equation, constant_letter, exponent_from_rotation, normalize_equation, rotation_from_exponent, Convention,
};
use modcurve::genus::{genus_q, genus_qn, is_semihyperelliptic_level};
use modcurve::group::gamma_qn_member;

fn genus_zero_quotients() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for q in 5..=12u32 {
        for n in (1..q).filter(|n| q % n == 0) {
            if genus_qn(q, n).unwrap().is_zero() {
                out.push((q, n));
            }
        }
    }
    out
}

#[test]
fn built_equations_have_the_genus_of_x_q() {
    let cases = genus_zero_quotients();
    assert!(cases.contains(&(8, 1)) && cases.contains(&(12, 1)));
    for (q, n) in cases {
        let eq = build_equation(q, n).unwrap();
        let p = (q / n) as i64;
        assert_eq!(eq.exponent_multiset().iter().sum::<i64>() % p, 0, "q={q} n={n}");
        let curve = SemiHyperellipticCurve::from_equation(eq.clone()).unwrap();
        let g = genus_q(q).unwrap();
        assert_eq!(curve_genus(&curve).to_string(), g.to_string(), "q={q} n={n}");
        let norm = normalize_equation(&eq, Convention::LargestToInfinity, constant_letter(q)).unwrap();
        let ncurve = SemiHyperellipticCurve::from_equation(norm).unwrap();
        assert_eq!(curve_genus(&ncurve), curve_genus(&curve));
        if curve_genus(&curve) >= 1 {
            assert_eq!(holomorphic_basis(&ncurve).unwrap().len() as i64, curve_genus(&ncurve), "q={q} n={n}");
        }
    }
}

#[test]
fn levels_without_a_genus_zero_quotient_are_refused() {
    for q in [11u32, 13, 14] {
        assert!(!is_semihyperelliptic_level(q).unwrap());
        assert!(build_equation(q, 1).is_err());
    }
}

proptest! {
    #[test]
    fn exponent_round_trip(p in 2i64..40, m in 1i64..40) {
        prop_assume!(m < p);
        let rot = rotation_from_exponent(p, m).unwrap();
        prop_assume!(rot.orbit_len < p);
        prop_assert_eq!(exponent_from_rotation(p, &rot).unwrap(), m);
    }

    #[test]
    fn witnesses_agree_with_canonical_classes(q in 3u32..16, x1 in -20i64..20, z1 in 0i64..20, x2 in -20i64..20, z2 in 0i64..20) {
        let (Ok(c1), Ok(c2)) = (Cusp::new(x1, z1), Cusp::new(x2, z2)) else { return Ok(()) };
        let same = cusp_canonical(q, &c1).unwrap() == cusp_canonical(q, &c2).unwrap();
        let w = find_equivalence_witness(q, &c1, &c2);
        prop_assert_eq!(w.is_some(), same);
        if let Some(m) = w {
            prop_assert!(gamma_qn_member(&m, q, q).unwrap());
            let image = m.act(&c1);
            prop_assert!(image == c2 || image == Cusp::new(-c2.x(), -c2.z()).unwrap_or(c2));
        }
    }
}
