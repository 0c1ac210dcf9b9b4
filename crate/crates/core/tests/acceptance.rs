//! Acceptance suite: one PASS/FAIL line per criterion, each with a pinned
//! time budget. Runs without the libtest harness so the lines reach stdout.

#[path = "common/mod.rs"]
mod common;

use affine_endo::collineation::{
    classify_dilation, dilations_fixing, enumerate_dilations, enumerate_translations,
    is_collineation, PointBijection, BASE_POINT,
};
use affine_endo::endo::{
    endo_add, endo_compose, endo_conjugate, endo_negate, endo_one, endo_phi, endo_zero,
    endomorphism_violation, is_group_endomorphism, is_trace_preserving, TrEndo,
};
use affine_endo::incidence::PointId;
use affine_endo::skewfield::{
    brute_force_tp_endos, generate_tp_endos, invert, recover_dilation, verify_skew_field, TPEndoSet,
};
use affine_endo::trgroup::{
    build_group, verify_abelian, verify_associative, verify_conjugation_direction,
    verify_direction_closure, verify_normal_in_dilations, verify_transitive, TIndex,
    TranslationGroup,
};
use common::{plane, pt, triangle};
use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

const SMALL_Q: [usize; 4] = [2, 3, 4, 5];

const BUDGET_1: Duration = Duration::from_secs(1);
const BUDGET_2: Duration = Duration::from_secs(5);
const BUDGET_3: Duration = Duration::from_secs(10);
const BUDGET_4: Duration = Duration::from_secs(1);
const BUDGET_5: Duration = Duration::from_secs(1);
const BUDGET_6: Duration = Duration::from_secs(5);
const BUDGET_7: Duration = Duration::from_secs(1);
const BUDGET_8: Duration = Duration::from_secs(60);
const BUDGET_9: Duration = Duration::from_secs(1);
// two CLI runs of the q = 4 oracle, process start-up included
const BUDGET_10: Duration = Duration::from_secs(60);

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group_of(q: usize) -> (affine_endo::incidence::AffinePlane, TranslationGroup) {
    let p = plane(q);
    let g = build_group(&p, enumerate_translations(&p)).expect("translation group");
    (p, g)
}

fn tp_set(q: usize) -> (affine_endo::incidence::AffinePlane, TranslationGroup, TPEndoSet) {
    let (p, g) = group_of(q);
    let s = generate_tp_endos(&p, &g, BASE_POINT).expect("tp endomorphisms");
    (p, g, s)
}

fn c1_affine_axioms() -> Outcome {
    for q in [2, 3, 4, 5, 7] {
        let mut p = affine_endo::incidence::AffinePlane::load(&affine_endo::builders::ag2_file(
            &affine_endo::field::FiniteField::of_order(q, None).unwrap(),
        ))
        .map_err(|e| e.to_string())?;
        let r = p.check_axioms();
        ensure(r.all_passed(), || format!("q={q}: {:?}", r.failures().collect::<Vec<_>>()))?;
        ensure(p.num_points() == q * q, || format!("q={q}: {} points", p.num_points()))?;
        ensure(p.num_lines() == q * q + q, || format!("q={q}: {} lines", p.num_lines()))?;
        ensure(p.num_directions() == q + 1, || format!("q={q}: {} classes", p.num_directions()))?;
    }
    Ok(())
}

fn c2_translation_group() -> Outcome {
    for q in SMALL_Q {
        let (p, g) = group_of(q);
        ensure(g.order() == q * q, || format!("q={q}: {} translations", g.order()))?;
        for r in [verify_associative(&g), verify_abelian(&g), verify_transitive(&p, &g)] {
            ensure(r.all_passed(), || format!("q={q}: {:?}", r.failures().collect::<Vec<_>>()))?;
        }
    }
    Ok(())
}

fn c3_normality_and_direction() -> Outcome {
    for q in SMALL_Q {
        let (p, g) = group_of(q);
        let dil = enumerate_dilations(&p);
        ensure(dil.len() == q * q * (q - 1), || format!("q={q}: {} dilations", dil.len()))?;
        for r in [
            verify_normal_in_dilations(&g, &dil),
            verify_conjugation_direction(&g, &dil),
            verify_direction_closure(&g),
        ] {
            ensure(r.all_passed(), || format!("q={q}: {:?}", r.failures().collect::<Vec<_>>()))?;
        }
    }
    Ok(())
}

fn c4_endomorphism_algebra() -> Outcome {
    for q in SMALL_Q {
        let (_, g, s) = tp_set(q);
        let members: HashSet<&TrEndo> = s.elements().iter().collect();
        let zero = endo_zero(&g);
        let one = endo_one(&g);
        ensure(members.contains(&zero) && members.contains(&one), || {
            format!("q={q}: 0 or 1 missing")
        })?;
        for a in s.elements() {
            ensure(is_group_endomorphism(&g, a) && is_trace_preserving(&g, a), || {
                format!("q={q}: member is not a trace-preserving endomorphism")
            })?;
            // zero and one
            ensure(endo_add(&g, a, &zero) == *a, || format!("q={q}: a + 0 != a"))?;
            ensure(endo_compose(a, &one) == *a && endo_compose(&one, a) == *a, || {
                format!("q={q}: 1 is not a two-sided unit")
            })?;
            ensure(endo_compose(a, &zero) == zero && endo_compose(&zero, a) == zero, || {
                format!("q={q}: 0 does not annihilate")
            })?;
            // negation: α + (−α) = 0, and −α is again a member
            let neg = endo_negate(&g, a);
            ensure(endo_add(&g, a, &neg) == zero, || format!("q={q}: a + (-a) != 0"))?;
            ensure(members.contains(&neg), || format!("q={q}: -a not in set"))?;
            for b in s.elements() {
                ensure(members.contains(&endo_add(&g, a, b)), || format!("q={q}: sum escapes"))?;
                ensure(members.contains(&endo_compose(a, b)), || {
                    format!("q={q}: product escapes")
                })?;
            }
        }
        let phi = endo_phi(&g).map_err(|e| e.to_string())?;
        ensure(endo_compose(&phi, &phi) == one, || format!("q={q}: phi is not an involution"))?;
        ensure(phi == endo_negate(&g, &one), || format!("q={q}: phi != -1"))?;
        ensure(members.contains(&phi), || format!("q={q}: phi not in set"))?;
    }
    Ok(())
}

fn c5_ring_structure() -> Outcome {
    for q in SMALL_Q {
        let (p, g, s) = tp_set(q);
        let r = verify_skew_field(&p, &g, &s);
        for name in [
            "additive_closure",
            "additive_associative",
            "additive_commutative",
            "additive_identity",
            "additive_inverse",
            "multiplicative_closure",
            "multiplicative_associative",
            "multiplicative_identity",
            "left_distributive",
            "right_distributive",
        ] {
            let c = r.get(name).ok_or_else(|| format!("q={q}: no check {name}"))?;
            ensure(c.passed(), || format!("q={q}: {name}: {:?}", c.witness))?;
        }
        // independent pass over every triple
        let els = s.elements();
        for a in els {
            for b in els {
                for c in els {
                    let ab_c = endo_compose(a, &endo_add(&g, b, c));
                    ensure(ab_c == endo_add(&g, &endo_compose(a, b), &endo_compose(a, c)), || {
                        format!("q={q}: a(b+c) != ab+ac")
                    })?;
                    let bc_a = endo_compose(&endo_add(&g, b, c), a);
                    ensure(bc_a == endo_add(&g, &endo_compose(b, a), &endo_compose(c, a)), || {
                        format!("q={q}: (b+c)a != ba+ca")
                    })?;
                    ensure(
                        endo_compose(&endo_compose(a, b), c)
                            == endo_compose(a, &endo_compose(b, c)),
                        || format!("q={q}: product not associative"),
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn c6_dilation_recovery_and_inverses() -> Outcome {
    for q in SMALL_Q {
        let (p, g, s) = tp_set(q);
        let one = endo_one(&g);
        for (i, a) in s.elements().iter().enumerate().skip(1) {
            let delta = recover_dilation(&p, &g, a, BASE_POINT)
                .map_err(|e| format!("q={q}: element {i}: {e}"))?;
            ensure(delta.apply(BASE_POINT) == BASE_POINT, || format!("q={q}: base point moved"))?;
            // δ(Q) = α(σ_PQ)(P) for every Q, and α(σ) = δσδ⁻¹ for every σ
            for qpt in p.points() {
                let sigma = g.translation_taking(BASE_POINT, qpt).unwrap();
                ensure(g.element(a.apply(sigma)).apply(BASE_POINT) == delta.apply(qpt), || {
                    format!("q={q}: pointwise formula fails at {qpt}")
                })?;
            }
            let inv_map = delta.map().inverse();
            for sg in g.indices() {
                let conj = delta.map().compose(g.element(sg).map()).compose(&inv_map);
                ensure(g.index_of(&conj) == Some(a.apply(sg)), || {
                    format!("q={q}: conjugation mismatch")
                })?;
            }
            let b = invert(&p, &g, a).map_err(|e| e.to_string())?;
            ensure(endo_compose(a, &b) == one && endo_compose(&b, a) == one, || {
                format!("q={q}: inverse is not two-sided")
            })?;
        }
        // δ → α → δ
        let fixing = dilations_fixing(&p, BASE_POINT);
        ensure(fixing.len() == q - 1, || format!("q={q}: {} dilations fix P0", fixing.len()))?;
        for d in &fixing {
            let a = endo_conjugate(&g, d).map_err(|e| e.to_string())?;
            let back = recover_dilation(&p, &g, &a, BASE_POINT).map_err(|e| e.to_string())?;
            ensure(back.map() == d.map(), || format!("q={q}: round trip changed the dilation"))?;
        }
    }
    Ok(())
}

fn c7_skew_field() -> Outcome {
    for q in SMALL_Q {
        let (p, g, s) = tp_set(q);
        let r = verify_skew_field(&p, &g, &s);
        for name in ["one_ne_zero", "no_zero_divisors", "nonzero_multiplicative_group"] {
            let c = r.get(name).ok_or_else(|| format!("q={q}: no check {name}"))?;
            ensure(c.passed(), || format!("q={q}: {name}: {:?}", c.witness))?;
        }
        let zero = endo_zero(&g);
        let nonzero = &s.elements()[1..];
        for a in nonzero {
            for b in nonzero {
                ensure(endo_compose(a, b) != zero, || format!("q={q}: zero divisor"))?;
            }
        }
    }
    Ok(())
}

fn c8_oracle_equivalence() -> Outcome {
    for q in SMALL_Q {
        let (_, g, s) = tp_set(q);
        let oracle = brute_force_tp_endos(&g).map_err(|e| e.to_string())?;
        ensure(oracle.len() == q, || format!("q={q}: oracle found {}", oracle.len()))?;
        ensure(s.len() == q, || format!("q={q}: generated {}", s.len()))?;
        let a: HashSet<&TrEndo> = oracle.iter().collect();
        let b: HashSet<&TrEndo> = s.elements().iter().collect();
        ensure(a == b, || format!("q={q}: sets differ"))?;
    }
    Ok(())
}

fn c9_negative_controls() -> Outcome {
    let mut tri = triangle();
    let r = tri.check_axioms();
    let playfair = r.get("playfair_parallel").ok_or("no playfair check")?;
    ensure(!playfair.passed() && playfair.witness.is_some(), || format!("triangle: {playfair:?}"))?;

    let p = plane(3);
    let reflection = PointBijection::new(
        (0..3).flat_map(|x| (0..3).map(move |y| pt(3, y, x))).collect::<Vec<PointId>>(),
    )
    .unwrap();
    ensure(is_collineation(&p, &reflection), || "reflection is not a collineation".into())?;
    ensure(classify_dilation(&p, &reflection).is_none(), || {
        "reflection accepted as dilation".into()
    })?;

    let (_, g) = group_of(3);
    // fixes the identity, keeps one element, kills the rest
    let mut image = vec![TIndex::IDENTITY; g.order()];
    image[1] = TIndex(1);
    let bad = TrEndo::new(g.order(), image).map_err(|e| e.to_string())?;
    ensure(!is_group_endomorphism(&g, &bad), || "injected table accepted".into())?;
    let (x, y) = endomorphism_violation(&g, &bad).ok_or("no witness pair")?;
    ensure(bad.apply(g.mul(x, y)) != g.mul(bad.apply(x), bad.apply(y)), || {
        "witness does not violate".into()
    })
}

fn c10_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("report.json");
    let run = || -> Result<Vec<u8>, String> {
        let status = Command::new(env!("CARGO_BIN_EXE_affine-endo"))
            .args(["verify-skewfield", "--q", "4", "--oracle", "--report"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.code() == Some(0), || {
            format!("exit {:?}: {}", status.status.code(), String::from_utf8_lossy(&status.stdout))
        })?;
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    let first = run()?;
    let second = run()?;
    ensure(!first.is_empty() && first == second, || "reports differ".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("affine axioms", BUDGET_1, c1_affine_axioms),
        ("translation group", BUDGET_2, c2_translation_group),
        ("normality and direction", BUDGET_3, c3_normality_and_direction),
        ("endomorphism algebra", BUDGET_4, c4_endomorphism_algebra),
        ("ring structure", BUDGET_5, c5_ring_structure),
        ("dilation recovery and inverses", BUDGET_6, c6_dilation_recovery_and_inverses),
        ("skew-field", BUDGET_7, c7_skew_field),
        ("oracle equivalence", BUDGET_8, c8_oracle_equivalence),
        ("negative controls", BUDGET_9, c9_negative_controls),
        ("determinism", BUDGET_10, c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= *budget, || format!("took {elapsed:?}, budget {budget:?}"))
        });
        match outcome {
            Ok(()) => println!("PASS criterion {:>2} ({name}) in {elapsed:.3?}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({name}) in {elapsed:.3?}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
