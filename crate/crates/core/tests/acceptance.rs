//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Oracles are evaluated here from their closed forms, independently of the
//! library paths they check.

use std::process::Command;
use std::time::{Duration, Instant};

use qinvar::bloch::{eigenstate_minus, eigenstate_plus, spin_op, BlochVec, Spinor};
use qinvar::invariants::{
    angles_to_probs, classify, invariant_cos, invariant_k, probs_to_angles, FormVerdicts, ModelTag,
    ProbTriple, DEFAULT_EPS_K,
};
use qinvar::model::{
    build_operator, spin_observables, synthesize, synthesize_from_angles, verify_transitions,
    Observable,
};
use qinvar::sampling::{
    haar_bloch, haar_state, random_coplanar_angles, random_feasible_probs, random_hermitian,
    random_probs, seeded_rng,
};
use qinvar::uncertainty::{
    anticommutator_mean, budget, commutator_evidence, commutator_term, correlation_check,
    covariance_term, mean, noncommuting_pairs_check, variance, DEFAULT_EPS_C,
};
use rand::Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let o = f();
    (o, start.elapsed())
}

// Plain complex arithmetic for the direct-expectation oracle.
type C = (f64, f64);

fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn sigma_dot(u: [f64; 3]) -> [[C; 2]; 2] {
    [[(u[2], 0.0), (u[0], -u[1])], [(u[0], u[1]), (-u[2], 0.0)]]
}

fn matmul(a: [[C; 2]; 2], b: [[C; 2]; 2]) -> [[C; 2]; 2] {
    let mut m = [[(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let p = cmul(a[i][k], b[k][j]);
                m[i][j].0 += p.0;
                m[i][j].1 += p.1;
            }
        }
    }
    m
}

// ⟨ψ|M|ψ⟩ as a complex number.
fn expect(m: [[C; 2]; 2], psi: &Spinor) -> C {
    let a = psi.amplitudes().0.map(|z| (z.re, z.im));
    let mut s = (0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            let conj = (a[i].0, -a[i].1);
            let p = cmul(cmul(conj, m[i][j]), a[j]);
            s.0 += p.0;
            s.1 += p.1;
        }
    }
    s
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn arr(u: &BlochVec) -> [f64; 3] {
    u.vec().0
}

fn criterion_1() -> Outcome {
    let mut rng = seeded_rng(1, 0);
    let mut worst = 0.0_f64;
    let mut ok = true;
    for _ in 0..10_000 {
        let (x, y) = (random_hermitian(&mut rng), random_hermitian(&mut rng));
        let psi = haar_state(&mut rng);
        let b = budget(&x, &y, &psi);
        let bound = 1e-10 * (1.0 + b.var_x * b.var_y);
        ok &= b.gap.abs() <= bound;
        worst = worst.max(b.gap.abs() / (1.0 + b.var_x * b.var_y));
    }
    outcome(ok, format!("worst |gap|/(1+VarVar) = {worst:e}"))
}

fn criterion_2() -> Outcome {
    let mut rng = seeded_rng(2, 0);
    let mut worst = 0.0_f64;
    for _ in 0..10_000 {
        let t = random_probs(&mut rng, 1e-9);
        let (p, q, r) = (t.p(), t.q(), t.r());
        let four_k = 4.0 * (4.0 * p * q * r - (p + q + r - 1.0).powi(2));
        worst = worst.max((invariant_cos(&probs_to_angles(&t)) - four_k).abs());
    }
    outcome(worst <= 1e-12, format!("worst residual {worst:e}"))
}

fn criterion_3() -> Outcome {
    let n = 99;
    let mut checked = 0usize;
    let mut mismatches = 0usize;
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let (p, q, r) = (i as f64 / 100.0, j as f64 / 100.0, k as f64 / 100.0);
                let t = ProbTriple::new(p, q, r).unwrap();
                if invariant_k(&t).abs() > 1e-6 {
                    checked += 1;
                    if !FormVerdicts::evaluate(&t).agree() {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("{mismatches} disagreements over {checked} cells"),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = seeded_rng(4, 0);
    let (mut dev, mut gram, mut vol) = (0.0_f64, 0.0_f64, 0.0_f64);
    let mut all_pass = true;
    for _ in 0..10_000 {
        let t = random_feasible_probs(&mut rng, 1e-6);
        let m = synthesize(&t, &spin_observables(), DEFAULT_EPS_K).unwrap();
        let rep = verify_transitions(&m, &t, 1e-10);
        all_pass &= rep.passed;
        dev = dev.max(rep.max_deviation);
        let v = m.vectors().map(|u| arr(&u));
        let cosines = [2.0 * t.p() - 1.0, 2.0 * t.q() - 1.0, 2.0 * t.r() - 1.0];
        for (c, (a, b)) in cosines.iter().zip([(0, 1), (1, 2), (2, 0)]) {
            gram = gram.max((dot(v[a], v[b]) - c).abs());
        }
        let triple = dot(cross(v[0], v[1]), v[2]);
        vol = vol.max((triple * triple - invariant_cos(&probs_to_angles(&t))).abs());
    }
    outcome(
        all_pass && gram <= 1e-10 && vol <= 1e-10,
        format!("transition deviation {dev:e}, Gram {gram:e}, volume {vol:e}"),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = seeded_rng(5, 0);
    let (mut k, mut y, mut comm, mut thm9, mut sat) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    let mut built = 0;
    while built < 1000 {
        let a = random_coplanar_angles(&mut rng, 1e-3);
        let Ok(t) = angles_to_probs(&a) else { continue };
        built += 1;
        let m = synthesize_from_angles(&a, &spin_observables(), DEFAULT_EPS_K).unwrap();
        let (p, q, r) = (t.p(), t.q(), t.r());
        k = k.max((4.0 * p * q * r - (p + q + r - 1.0).powi(2)).abs());
        y = y.max(m.vectors()[2].vec().y().abs());
        let ev = commutator_evidence(&m, DEFAULT_EPS_C).unwrap();
        for av in &ev.averages {
            comm = comm.max(av.relative);
        }
        let (s, d) = ((p * q).sqrt(), ((1.0 - p) * (1.0 - q)).sqrt());
        let sr = r.sqrt();
        thm9 = thm9.max((sr - (s + d)).abs().min((sr - (s - d).abs()).abs()));
        for e in correlation_check(&m, 1e-10).entries {
            sat = sat.max(e.slack.abs());
        }
    }
    outcome(
        k <= 1e-10 && y <= 1e-8 && comm <= 1e-8 && thm9 <= 1e-9 && sat <= 1e-10,
        format!(
            "max K {k:e}, u_C y {y:e}, commutator average {comm:e}, real-model equation {thm9:e}, slack {sat:e}"
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = seeded_rng(6, 0);
    let mut worst = 0.0_f64;
    for _ in 0..10_000 {
        let (u, v, w) = (
            haar_bloch(&mut rng),
            haar_bloch(&mut rng),
            haar_bloch(&mut rng),
        );
        let (ua, va, wa) = (arr(&u), arr(&v), arr(&w));
        let (su, sv) = (sigma_dot(ua), sigma_dot(va));
        let comm = {
            let (a, b) = (matmul(su, sv), matmul(sv, su));
            [0, 1].map(|i| [0, 1].map(|j| (a[i][j].0 - b[i][j].0, a[i][j].1 - b[i][j].1)))
        };
        let anti = {
            let (a, b) = (matmul(su, sv), matmul(sv, su));
            [0, 1].map(|i| [0, 1].map(|j| (a[i][j].0 + b[i][j].0, a[i][j].1 + b[i][j].1)))
        };
        let (opu, opv) = (spin_op(&u), spin_op(&v));
        for (k, psi) in [(1.0, eigenstate_plus(&w)), (-1.0, eigenstate_minus(&w))] {
            let direct_mean = expect(su, &psi).0;
            let direct_var = expect(matmul(su, su), &psi).0 - direct_mean * direct_mean;
            // (1/2i)⟨[U,V]⟩ = Im⟨[U,V]⟩ / 2
            let direct_comm = 0.5 * expect(comm, &psi).1;
            let direct_anti = 0.5 * expect(anti, &psi).0;
            let closed = [
                k * dot(ua, wa),
                1.0 - dot(ua, wa).powi(2),
                k * dot(cross(ua, va), wa),
                dot(ua, va),
            ];
            let library = [
                mean(&opu, &psi),
                variance(&opu, &psi),
                commutator_term(&opu, &opv, &psi),
                anticommutator_mean(&opu, &opv, &psi),
            ];
            let direct = [direct_mean, direct_var, direct_comm, direct_anti];
            for i in 0..4 {
                worst = worst
                    .max((closed[i] - direct[i]).abs())
                    .max((library[i] - direct[i]).abs());
            }
        }
    }
    outcome(worst <= 1e-12, format!("worst residual {worst:e}"))
}

fn criterion_7() -> Outcome {
    let mut rng = seeded_rng(7, 0);
    let draw = |rng: &mut rand_chacha::ChaCha8Rng, name: &str| loop {
        let (a, b): (f64, f64) = (rng.random_range(-1e3..=1e3), rng.random_range(-1e3..=1e3));
        if (a - b).abs() >= 1.0 {
            return Observable::new(name, a, b).unwrap();
        }
    };
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let (x, y) = (draw(&mut rng, "X"), draw(&mut rng, "Y"));
        let (ux, uy) = (haar_bloch(&mut rng), haar_bloch(&mut rng));
        let psi = haar_state(&mut rng);
        let (ox, oy) = (build_operator(&x, &ux), build_operator(&y, &uy));
        let (sx, sy) = (spin_op(&ux), spin_op(&uy));
        let ((x1, x2), (y1, y2)) = (x.values(), y.values());
        let (xp, xm, ym) = ((x1 + x2) / 2.0, (x1 - x2) / 2.0, (y1 - y2) / 2.0);

        let rel = |lhs: f64, rhs: f64, scale: f64| (lhs - rhs).abs() / scale;
        let mean_scale = x1.abs().max(x2.abs()).max(1.0);
        worst = worst
            .max(rel(mean(&ox, &psi), xp + xm * mean(&sx, &psi), mean_scale))
            .max(rel(
                variance(&ox, &psi),
                xm * xm * variance(&sx, &psi),
                xm * xm,
            ))
            .max(rel(
                covariance_term(&ox, &oy, &psi),
                xm * ym * covariance_term(&sx, &sy, &psi),
                (xm * ym).abs(),
            ))
            .max(rel(
                commutator_term(&ox, &oy, &psi),
                xm * ym * commutator_term(&sx, &sy, &psi),
                (xm * ym).abs(),
            ));
    }
    outcome(worst <= 1e-10, format!("worst relative residual {worst:e}"))
}

fn criterion_8() -> Outcome {
    let mut rng = seeded_rng(8, 0);
    let mut ok = true;
    let mut flagged = 0;
    let mut histogram = [0usize; 4];
    for _ in 0..100 {
        let t = random_feasible_probs(&mut rng, 1e-6);
        let m = synthesize(&t, &spin_observables(), DEFAULT_EPS_K).unwrap();
        let states: Vec<_> = (0..100).map(|_| haar_state(&mut rng)).collect();
        let rep = noncommuting_pairs_check(&m, &states, DEFAULT_EPS_C, DEFAULT_EPS_K).unwrap();
        ok &= rep.all_pairs_noncommuting && rep.passes();
        flagged += rep.flagged_on_axis();
        for (h, c) in histogram.iter_mut().zip(rep.count_histogram) {
            *h += c;
        }
    }
    outcome(
        ok,
        format!("states by nonzero-average count {histogram:?}, on-axis states flagged {flagged}"),
    )
}

fn criterion_9() -> Outcome {
    // direct evaluation of K, expanded rather than factored
    let oracle = |p: f64, q: f64, r: f64| {
        let s = p + q + r;
        4.0 * p * q * r - s * s + 2.0 * s - 1.0
    };
    let a = classify(&ProbTriple::new(0.5, 0.5, 0.5).unwrap(), DEFAULT_EPS_K);
    let b = classify(&ProbTriple::new(0.9, 0.9, 0.1).unwrap(), DEFAULT_EPS_K);
    let ok = a.k == 0.25
        && oracle(0.5, 0.5, 0.5) == 0.25
        && a.tag == ModelTag::StrictlyComplexQuantum
        && (b.k - (-0.486)).abs() <= 1e-15
        && (b.k - oracle(0.9, 0.9, 0.1)).abs() <= 1e-15
        && b.tag == ModelTag::NoQuantumModel;
    outcome(ok, format!("K(½,½,½) = {}, K(0.9,0.9,0.1) = {}", a.k, b.k))
}

fn criterion_10() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_qinvar");
    let run = || {
        let start = Instant::now();
        let out = Command::new(exe)
            .arg("selftest")
            .output()
            .expect("selftest runs");
        (out, start.elapsed())
    };
    let (first, t1) = run();
    let (second, t2) = run();
    let ok = first.status.code() == Some(0)
        && second.status.code() == Some(0)
        && first.stdout == second.stdout
        && t1 < Duration::from_secs(60)
        && t2 < Duration::from_secs(60);
    outcome(
        ok,
        format!(
            "exit {:?}/{:?}, identical output {}, {:.2} s and {:.2} s",
            first.status.code(),
            second.status.code(),
            first.stdout == second.stdout,
            t1.as_secs_f64(),
            t2.as_secs_f64()
        ),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 10] = [
        (
            "uncertainty saturation",
            criterion_1,
            Some(Duration::from_secs(5)),
        ),
        (
            "cosine-form identity",
            criterion_2,
            Some(Duration::from_secs(1)),
        ),
        (
            "existence-form agreement",
            criterion_3,
            Some(Duration::from_secs(30)),
        ),
        ("synthesis round trip", criterion_4, None),
        ("real-model boundary", criterion_5, None),
        ("spin expectation formulas", criterion_6, None),
        ("rescaling identities", criterion_7, None),
        ("noncommutativity Monte Carlo", criterion_8, None),
        ("anchor values", criterion_9, None),
        ("selftest runtime and determinism", criterion_10, None),
    ];
    let mut failures = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let (o, elapsed) = timed(f);
        let in_time = limit.is_none_or(|l| elapsed < l);
        let passed = o.passed && in_time;
        if !passed {
            failures += 1;
        }
        let budget = limit.map_or(String::new(), |l| format!(" (limit {} s)", l.as_secs()));
        println!(
            "{} criterion {:>2} {name}: {}; {:.3} s{budget}",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            elapsed.as_secs_f64()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
