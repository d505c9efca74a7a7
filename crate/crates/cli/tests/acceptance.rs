//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use dnaswap::encodings::Base;
use dnaswap::gates::{
    bell_basis, equality_entangler, hadamard, identity, pauli_x, pauli_z, rotation, sp,
};
use dnaswap::metrics::{entanglement_entropy, hamming_support, pair_concurrence};
use dnaswap::protocol::{
    assemble_pair, build_recognition_unitary, canonical_table, recognize, run_pair, sample,
    CompletionOrder, Stage,
};
use dnaswap::statevec::{measure_two_qubit, permute_qubits};
use dnaswap::{ConfigF64, EnsembleF64, StateVectorF64, C64};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn state(terms: &[(&str, f64)]) -> StateVectorF64 {
    let terms: Vec<(&str, C64)> = terms.iter().map(|&(k, a)| (k, C64::new(a, 0.0))).collect();
    StateVectorF64::from_terms(&terms).unwrap()
}

fn ensemble(t: Base) -> EnsembleF64 {
    run_pair(t.into(), t.partner().into(), &ConfigF64::default()).unwrap()
}

fn criterion_1() -> Outcome {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let t = 1.0 / 3f64.sqrt();
    let printed = [
        (Base::A, state(&[("011", h), ("101", -h)])),
        (Base::T, state(&[("010", h), ("100", h)])),
        (Base::G, state(&[("011", t), ("101", t), ("110", t)])),
        (Base::C, state(&[("100", t), ("010", -t), ("001", t)])),
    ];
    let mut worst = 0.0f64;
    for (b, expected) in printed {
        let got = recognize::<f64>(b.into(), &ConfigF64::default()).map_err(|e| e.to_string())?;
        worst = worst.max(got.max_abs_diff(&expected));
    }
    ensure(worst < 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e} over 4 bases"))
}

fn criterion_2() -> Outcome {
    let q = 1.0 / 3.0;
    let at = state(&[
        ("001110", 0.5),
        ("011010", 0.5),
        ("100110", -0.5),
        ("110010", -0.5),
    ]);
    let gc = state(&[
        ("011010", q),
        ("110010", q),
        ("111000", q),
        ("001110", -q),
        ("100110", -q),
        ("101100", -q),
        ("001011", q),
        ("100011", q),
        ("101001", q),
    ]);
    let mut worst = 0.0f64;
    for (t, expected, terms) in [(Base::A, at, 4), (Base::G, gc, 9)] {
        let got =
            assemble_pair::<f64>(t.into(), t.partner().into(), &ConfigF64::default()).unwrap();
        ensure(got.support().len() == terms, || {
            format!("{t:?} has {} terms", got.support().len())
        })?;
        worst = worst.max(got.max_abs_diff(&expected));
    }
    ensure(worst < 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("4- and 9-term states, max deviation {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    let rows = canonical_table(&ensemble(Base::A));
    ensure(rows.len() == 4, || format!("{} classes", rows.len()))?;
    let r2 = std::f64::consts::SQRT_2;
    let published = |same: bool| if same { 0.43 } else { 0.07 };
    let exact = |same: bool| {
        if same {
            (2.0 + r2) / 8.0
        } else {
            (2.0 - r2) / 8.0
        }
    };
    for r in &rows {
        let labels = (r.bell_12.code(), r.bell_34.code());
        ensure(
            ["b01", "b11"].contains(&labels.0.as_str())
                && ["b01", "b11"].contains(&labels.1.as_str()),
            || format!("unexpected class {labels:?}"),
        )?;
        let same = r.bell_12 == r.bell_34;
        ensure((r.probability - published(same)).abs() <= 0.01, || {
            format!("{labels:?} P={}", r.probability)
        })?;
        ensure((r.probability - exact(same)).abs() <= 1e-10, || {
            format!("{labels:?} P={}", r.probability)
        })?;
        ensure(
            r.a.norm() <= 1e-10 && (r.b - C64::new(1.0, 0.0)).norm() <= 1e-10,
            || format!("{labels:?} third pair ({}, {})", r.a, r.b),
        )?;
    }
    Ok("4 classes, P = (2±√2)/8 within 1e-10, third pair |10>".into())
}

fn criterion_4() -> Outcome {
    let e = ensemble(Base::G);
    let rows = canonical_table(&e);
    ensure(rows.len() == 16, || format!("{} rows", rows.len()))?;
    let probs = [0.11, 0.09, 0.03, 0.02];
    let amps = [(0.51, 0.86), (0.38, 0.92), (0.96, 0.28), (0.92, 0.38)];
    for r in &rows {
        let i = r.rank - 1;
        ensure((r.probability - probs[i]).abs() <= 0.01, || {
            format!("group {:?} l={} P={}", r.group, r.rank, r.probability)
        })?;
        let (a, b) = (r.a.norm(), r.b.norm());
        ensure(
            (a - amps[i].0).abs() <= 0.01 && (b - amps[i].1).abs() <= 0.01,
            || format!("group {:?} l={} |a|={a} |b|={b}", r.group, r.rank),
        )?;
    }
    for g in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let p: f64 = rows
            .iter()
            .filter(|r| r.group == g)
            .map(|r| r.probability)
            .sum();
        ensure((p - 0.25).abs() <= 1e-10, || format!("group {g:?} P={p}"))?;
    }
    let total = e.total_probability() + e.dropped_mass;
    ensure((total - 1.0).abs() <= 1e-10, || format!("total {total}"))?;
    Ok("16 rows, probabilities and |a|,|b| within 0.01, group sums 0.25".into())
}

fn criterion_5() -> Outcome {
    let three = BTreeSet::from([3]);
    let mut broken = 0;
    for t in [Base::A, Base::G] {
        let pre =
            assemble_pair::<f64>(t.into(), t.partner().into(), &ConfigF64::default()).unwrap();
        ensure(hamming_support(&pre) == three, || {
            format!("{t:?} pre-swap support")
        })?;
        for b in &ensemble(t).branches {
            ensure(hamming_support(&b.final_state) == three, || {
                format!(
                    "{t:?} branch {}/{} support {:?}",
                    b.bell_34,
                    b.bell_12,
                    hamming_support(&b.final_state)
                )
            })?;
            if b.bell_12.is_even_parity()
                && hamming_support(b.state_at(Stage::Measured12).unwrap()) != three
            {
                broken += 1;
            }
        }
    }
    ensure(broken > 0, || {
        "no even-parity branch breaks the proton count".into()
    })?;
    Ok(format!(
        "all final supports {{3}}, {broken} β00/β10 branches break it before correction"
    ))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for t in [Base::A, Base::G] {
        let pre =
            assemble_pair::<f64>(t.into(), t.partner().into(), &ConfigF64::default()).unwrap();
        let h = entanglement_entropy(&pre, &[1, 3, 5]).unwrap();
        ensure(h.abs() <= 1e-10, || format!("{t:?} pre-swap entropy {h}"))?;
        for b in &ensemble(t).branches {
            let s = &b.final_state;
            for (x, y) in [(1, 2), (3, 4)] {
                let c = pair_concurrence(s, x, y).unwrap();
                ensure((c - 1.0).abs() <= 1e-10, || format!("{t:?} C({x},{y})={c}"))?;
            }
            for (x, y) in [
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (1, 5),
                (1, 6),
                (2, 5),
                (2, 6),
                (3, 5),
                (3, 6),
                (4, 5),
                (4, 6),
            ] {
                let c = pair_concurrence(s, x, y).unwrap();
                ensure(c.abs() <= 1e-10, || format!("{t:?} C({x},{y})={c}"))?;
            }
            if t == Base::G {
                let c = pair_concurrence(s, 5, 6).unwrap();
                let expected = 2.0 * b.third_pair.0.norm() * b.third_pair.1.norm();
                ensure((c - expected).abs() <= 1e-10, || {
                    format!("C(5,6)={c} vs {expected}")
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} branches checked"))
}

fn criterion_7() -> Outcome {
    let descending = ConfigF64 {
        completion: CompletionOrder::Descending,
        ..ConfigF64::default()
    };
    let u1 = build_recognition_unitary(&ConfigF64::default()).unwrap();
    let u2 = build_recognition_unitary(&descending).unwrap();
    let diff = u1.matrix().max_abs_diff(u2.matrix());
    ensure(diff > 0.1, || "completions coincide".into())?;
    for t in [Base::A, Base::G] {
        let x = canonical_table(
            &run_pair::<f64>(t.into(), t.partner().into(), &ConfigF64::default()).unwrap(),
        );
        let y =
            canonical_table(&run_pair::<f64>(t.into(), t.partner().into(), &descending).unwrap());
        ensure(x == y, || format!("{t:?} tables differ"))?;
    }
    Ok(format!(
        "completions differ by {diff:.2}, tables bit-identical"
    ))
}

fn criterion_8() -> Outcome {
    const SHOTS: u64 = 100_000;
    let e = ensemble(Base::A);
    let counts = sample(&e, SHOTS, 2024).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for (b12, b34, p, n) in counts.class_counts() {
        let sigma = (p * (1.0 - p) / SHOTS as f64).sqrt();
        let z = (n as f64 / SHOTS as f64 - p).abs() / sigma;
        worst = worst.max(z);
        ensure(z <= 3.0, || format!("({b12},{b34}) off by {z:.2}σ"))?;
    }
    let again = sample(&e, SHOTS, 2024).map_err(|e| e.to_string())?;
    ensure(again == counts, || "same seed gave different counts".into())?;
    Ok(format!("max deviation {worst:.2}σ, reproducible"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut gates = vec![
        identity::<f64>(2),
        pauli_x(),
        pauli_z(),
        hadamard(),
        equality_entangler(),
        build_recognition_unitary(&ConfigF64::default()).unwrap(),
    ];
    for _ in 0..20 {
        let theta = rng.gen_range(-10.0..10.0);
        gates.push(rotation(theta).unwrap());
        gates.push(sp(theta).unwrap());
        let cfg = ConfigF64 {
            theta,
            phi: rng.gen_range(-10.0..10.0),
            ..ConfigF64::default()
        };
        gates.push(build_recognition_unitary(&cfg).unwrap());
    }
    for g in &gates {
        let r = g.unitarity_residual();
        ensure(r <= 1e-12, || format!("{} residual {r:e}", g.name()))?;
    }

    let basis = bell_basis::<f64>();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let amps: Vec<C64> = (0..64)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let s = StateVectorF64::normalized(6, amps).unwrap();
        let qubits: Vec<usize> = (1..=6).collect();
        let pick: Vec<usize> = qubits.choose_multiple(&mut rng, 2).copied().collect();
        let m = measure_two_qubit(&s, &basis, (pick[0], pick[1]), 0.0).unwrap();
        let total: f64 = m.branches.iter().map(|b| b.probability).sum();
        worst = worst.max((total - 1.0).abs());
    }
    ensure(worst <= 1e-12, || {
        format!("measurement total off by {worst:e}")
    })?;

    for _ in 0..100 {
        let mut p: Vec<usize> = (1..=6).collect();
        let mut q = p.clone();
        p.shuffle(&mut rng);
        q.shuffle(&mut rng);
        let composed: Vec<usize> = p.iter().map(|&k| q[k - 1]).collect();
        let s = StateVectorF64::basis(6, rng.gen_range(0..64)).unwrap();
        let twice = permute_qubits(&permute_qubits(&s, &p).unwrap(), &q).unwrap();
        ensure(twice == permute_qubits(&s, &composed).unwrap(), || {
            format!("composition fails for {p:?}, {q:?}")
        })?;
    }
    Ok(format!(
        "{} gates unitary, 100 measurements (max error {worst:.1e}), 100 permutation pairs",
        gates.len()
    ))
}

fn criterion_10() -> Outcome {
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_dnaswap"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())
            .map(|o| o.status.code())
    };
    let ok = run(&["verify"])?;
    ensure(ok == Some(0), || format!("verify exited {ok:?}"))?;
    let broken = run(&["verify", "--entangler", "identity"])?;
    ensure(broken == Some(1), || {
        format!("verify with identity V exited {broken:?}")
    })?;
    Ok("verify exits 0; identity V exits 1".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("recognized states", criterion_1),
        ("assembled pair states", criterion_2),
        ("A·T outcome classes", criterion_3),
        ("G·C outcome table", criterion_4),
        ("proton conservation", criterion_5),
        ("entanglement swap", criterion_6),
        ("completion independence", criterion_7),
        ("sampling consistency", criterion_8),
        ("property suite", criterion_9),
        ("CLI contract", criterion_10),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.2}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
