//! Acceptance criteria, one line each. Runs as a plain binary so every line
//! is printed even when a criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use hkt_core::scalars::{Gq, Rational};
use hkt_core::verify::{self, all_of, Outcome};
use hkt_core::Result;

const SEED: u64 = 1;

fn ok(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Outcome {
        pass: false,
        detail: format!("error: {e}"),
        witness: None,
    })
}

fn labelled(parts: Vec<(String, Outcome)>) -> Outcome {
    let refs = parts.iter().map(|(k, o)| (k.as_str(), o.clone())).collect();
    all_of(refs)
}

fn per_n(ns: &[usize], f: impl Fn(usize) -> Result<Outcome>) -> Vec<(String, Outcome)> {
    ns.iter().map(|&n| (format!("n={n}"), ok(f(n)))).collect()
}

fn equal(label: &str, got: bool, detail: String) -> (String, Outcome) {
    (
        label.to_string(),
        Outcome {
            pass: got,
            detail,
            witness: None,
        },
    )
}

fn quaternion() -> Outcome {
    labelled(per_n(&[1, 2, 3], |n| Ok(verify::quaternion_relations(n))))
}

fn su2_and_plus() -> Outcome {
    let mut parts = per_n(&[1, 2, 3], verify::su2_structure);
    parts.extend(per_n(&[1, 2, 3], verify::plus_dimensions));
    labelled(parts)
}

fn anticommutation() -> Outcome {
    labelled(per_n(&[1, 2], |n| Ok(verify::anticommutation(n, 4))))
}

fn fourth_order() -> Outcome {
    let mut parts = Vec::new();
    let mut constants = Vec::new();
    for n in [1, 2] {
        match verify::fourth_order(n) {
            Ok((c, o)) => {
                constants.push(c);
                parts.push((format!("n={n}"), o));
            }
            Err(e) => parts.push((format!("n={n}"), ok(Err(e)))),
        }
    }
    let same = constants.len() == 2 && constants[0] == constants[1] && !constants[0].is_zero();
    parts.push(equal(
        "single constant",
        same,
        format!(
            "{:?}",
            constants.iter().map(Gq::to_string).collect::<Vec<_>>()
        ),
    ));
    labelled(parts)
}

fn banos_swann() -> Outcome {
    let mut parts = Vec::new();
    let mut kappas = Vec::new();
    for n in [1, 2] {
        match verify::banos_swann(n, 10, SEED) {
            Ok((k, o)) => {
                kappas.push(k);
                parts.push((format!("n={n}"), o));
            }
            Err(e) => parts.push((format!("n={n}"), ok(Err(e)))),
        }
    }
    let same = kappas.len() == 2 && kappas[0] == kappas[1];
    parts.push(equal(
        "single κ",
        same,
        format!("{:?}", kappas.iter().map(Gq::to_string).collect::<Vec<_>>()),
    ));
    labelled(parts)
}

fn vpq() -> Outcome {
    let mut parts = Vec::new();
    for n in [1, 2] {
        parts.push((format!("injective n={n}"), ok(verify::vpq_injective(n))));
        parts.push((
            format!("factorization n={n}"),
            ok(verify::vpq_factorization(n)),
        ));
        parts.push((
            format!("reality n={n}"),
            ok(verify::vpq_reality(n, 100, SEED)),
        ));
    }
    parts.push((
        "intertwining n=2".into(),
        ok(verify::vpq_intertwining(2, 2, SEED)),
    ));
    let expected = [2, 6, 20];
    for n in 1..=3 {
        let o = match verify::lambda_positive(n) {
            Ok((l, o)) => {
                let want = Rational::from_integer(expected[n - 1].into());
                let detail = o.detail.clone();
                all_of(vec![
                    ("positive", o),
                    (
                        "value",
                        Outcome {
                            pass: l == want,
                            detail,
                            witness: None,
                        },
                    ),
                ])
            }
            Err(e) => ok(Err(e)),
        };
        parts.push((format!("λ({n})"), o));
    }
    labelled(parts)
}

fn omega_algebra() -> Outcome {
    labelled(per_n(&[2, 3], verify::omega_algebra_dims))
}

fn lie_structure() -> Outcome {
    let mut parts = Vec::new();
    for n in [1, 2] {
        parts.push((format!("𝔞 n={n}"), ok(verify::a_structure(n, SEED))));
        parts.push((format!("Cartan n={n}"), ok(verify::cartan_hodge(n, SEED))));
        parts.push((format!("sp(n) n={n}"), ok(verify::spn_commutes(n))));
    }
    labelled(parts)
}

fn howe() -> Outcome {
    labelled(per_n(&[1, 2], |n| {
        verify::howe_irreducibility(n, SEED).map(|r| r.1)
    }))
}

fn hodge_riemann() -> Outcome {
    labelled(per_n(&[1, 2], |n| {
        verify::hodge_riemann(n, SEED).map(|r| r.1)
    }))
}

fn n3_ingredients() -> Outcome {
    labelled(vec![
        ("Ξ₃".into(), ok(verify::xi_weak_positivity(3, 3, 200, SEED))),
        ("pairing".into(), ok(verify::primitive_pairing(3))),
        (
            "torsion √−1".into(),
            ok(verify::torsion_square(3, &Gq::i(), &[SEED, SEED + 1])),
        ),
    ])
}

fn box_bilaplacian() -> Outcome {
    ok(verify::box_bilaplacian(1, 6).map(|r| r.1))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("quaternion relations", quaternion),
        ("su(2) and Λ₊ dimensions", su2_and_plus),
        ("anticommutation", anticommutation),
        ("fourth-order identity", fourth_order),
        ("Banos–Swann", banos_swann),
        ("V_{p,q}", vpq),
        ("ω-algebra", omega_algebra),
        ("𝔞 and sp(n)", lie_structure),
        ("Howe irreducibility", howe),
        ("Hodge–Riemann", hodge_riemann),
        ("n = 3 ingredients", n3_ingredients),
        ("□ = μΔ²", box_bilaplacian),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{:>2} {} {:<26} {:>7.1}s  {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            secs,
            o.detail
        );
    }
    println!("{} passed, {} failed", criteria.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
