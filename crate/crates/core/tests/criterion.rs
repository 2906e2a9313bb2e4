mod common;

use common::{get, get_n, tampered, tampered_large};
use pbw::algebra::Datum;
use pbw::criterion::{
    b2_coefficients, check_pbw, closed_form_redundancies, conditions, forced_power_from_jacobi, forced_serre_from_power,
    redbr_table, rule_system, ForcedLevel, Mode, SerreSide,
};
use pbw::oracle::{default_slack, oracle_rank};
use pbw::presets::{preset, LiftParams, NAMES};

// also asserts that no span test hit its cap
fn verdicts(d: &Datum) -> (bool, bool) {
    let full = check_pbw(d, Mode::Full).unwrap();
    let red = check_pbw(d, Mode::Reduced).unwrap();
    for c in full.conditions.iter().chain(&red.conditions) {
        assert!(!c.capped, "{} capped", c.label);
    }
    (full.pass, red.pass)
}

#[test]
fn every_preset_validates_and_passes_both_modes() {
    for name in NAMES {
        let p = preset(name, &LiftParams::default()).unwrap();
        assert!(p.datum.validate().is_empty(), "{}: {:?}", name, p.datum.validate());
        let (f, r) = verdicts(&p.datum);
        assert!(f && r, "{}: full {} reduced {}", name, f, r);
    }
}

#[test]
fn preset_dimensions_match_metadata() {
    for name in NAMES {
        let p = preset(name, &LiftParams::default()).unwrap();
        let rs = rule_system(&p.datum).unwrap();
        assert_eq!(rs.dimension(), p.dimension, "{}", name);
        if let Some(h) = &p.hilbert {
            assert_eq!(&rs.hilbert(h.len() - 1), h, "{}", name);
        }
    }
}

// count of irreducible monomials against the linear-algebra quotient
#[test]
fn oracle_matches_pbw_count_on_small_presets() {
    for name in NAMES {
        let p = preset(name, &LiftParams::default()).unwrap();
        let Some(dim) = p.dimension else { continue };
        if dim > 200 {
            continue;
        }
        let o = oracle_rank(&p.datum, default_slack(&p.datum), 5_000_000).unwrap();
        assert_eq!(o.rank, dim, "{}", name);
    }
}

#[test]
fn tampers_fail_and_lose_rank() {
    for (label, d) in tampered() {
        let (f, r) = verdicts(&d);
        assert!(!f && !r, "{} still passes", label);
        let count = rule_system(&d).unwrap().dimension().unwrap();
        assert!(count <= 64, "{}", label);
        let o = oracle_rank(&d, default_slack(&d), 5_000_000).unwrap();
        assert!(o.rank < count, "{}: oracle {} vs {}", label, o.rank, count);
    }
}

#[test]
fn modes_agree_on_large_tampers() {
    for (label, d) in tampered_large() {
        let (f, r) = verdicts(&d);
        assert_eq!(f, r, "{}", label);
        assert!(!f, "{}", label);
    }
}

#[test]
fn reduced_mode_is_a_subset() {
    for name in ["uq_sl2", "lifting_a2_1a", "b2_nichols"] {
        let d = get(name);
        let full = conditions(&d, Mode::Full);
        for c in conditions(&d, Mode::Reduced) {
            assert!(full.contains(&c), "{}: {:?}", name, c);
        }
    }
}

// J(u<v<w) reduces to 0 with unrestricted normal forms on passing data
#[test]
fn jacobi_elements_reduce_to_zero() {
    for name in ["uq_sl2", "lifting_a2_1a", "lifting_a2_2b", "b2_nichols"] {
        let d = get(name);
        let rs = rule_system(&d).unwrap();
        let rt = redbr_table(&d).unwrap();
        for c in conditions(&d, Mode::Full) {
            if let pbw::criterion::ConditionId::Jacobi(..) = c {
                let j = c.element(&d, &rt).unwrap();
                assert!(rs.normal_form(&j).is_zero(), "{} {}", name, c.label(&d));
            }
        }
    }
}

#[test]
fn redbr_entries_respect_prec_l() {
    for name in ["uq_sl2", "lifting_a2_1b", "b2_nichols"] {
        let d = get(name);
        let r = &d.ring;
        let rt = redbr_table(&d).unwrap();
        for ((u, v), p) in rt.iter() {
            let uv = [r.lset.word(*u).clone(), r.lset.word(*v).clone()].concat();
            // terms are shorter than uv or of equal length and lexicographically ≥ uv
            let ok = p.iter().all(|(m, _)| {
                let flat = r.lset.flatten(&m.word);
                flat.len() < uv.len() || (flat.len() == uv.len() && flat >= uv)
            });
            assert!(ok, "{}: redbr<{},{}> = {}", name, u, v, r.fmt(p));
        }
    }
}

#[test]
fn forced_serre_vanishes_for_case_1a() {
    let d = get("lifting_a2_1a");
    for side in [SerreSide::Left, SerreSide::Right] {
        let (_, p) = forced_serre_from_power(&d, "1", "2", side).unwrap();
        assert!(p.is_zero(), "{:?}: {}", side, d.ring.fmt(&p));
    }
}

#[test]
fn forced_serre_is_homogeneous() {
    let d = get("lifting_a2_2b");
    let r = &d.ring;
    for (side, word) in [(SerreSide::Left, "112"), (SerreSide::Right, "122")] {
        let Ok((_, p)) = forced_serre_from_power(&d, "1", "2", side) else { continue };
        if p.is_zero() {
            continue;
        }
        let w = pbw::words::parse_word(word).unwrap();
        assert!(r.is_char_homogeneous_of(&p, &r.word_chi(&w)), "{}", word);
    }
}

#[test]
fn forced_power_reproduces_2b_display() {
    let d = get("lifting_a2_2b");
    let rt = redbr_table(&d).unwrap();
    let (_, rhs) = forced_power_from_jacobi(&d, &rt, ForcedLevel::Rank2Twelve).unwrap().unwrap();
    assert_eq!(rhs, *d.redhat("12"), "{}", d.ring.fmt(&rhs));
}

#[test]
fn b2_coefficients_are_consistent() {
    let d = get("b2_nichols");
    let c = b2_coefficients(&d.ring);
    assert_eq!(c.q1, pbw::criterion::b2_q1_alternate(&d.ring));
    // b2_nichols is chosen with q′ = 0, so red_11212 carries no forced term
    assert!(c.q1.is_zero());
}

#[test]
fn redundancy_toolkit_finds_1a_serre() {
    let d = get("lifting_a2_1a");
    let found = closed_form_redundancies(&d).unwrap();
    let names: Vec<_> = found.iter().map(|r| r.relation.as_str()).collect();
    assert!(names.contains(&"red_112") && names.contains(&"red_122"), "{:?}", names);
}

#[test]
fn failing_report_names_conditions() {
    let mut d = get_n("uq_sl2", 3);
    let r = d.ring.clone();
    d.set_red("12", &r.one_poly() - &r.grp_poly(&[1]));
    let rep = check_pbw(&d, Mode::Full).unwrap();
    assert!(!rep.pass);
    assert!(rep.failures().next().is_some());
    let text = rep.to_text(&d.ring, Some(27));
    assert!(text.trim_end().ends_with("condition(s) violated"), "{}", text);
}
