//! Acceptance criteria 1 to 9. Runs as a plain binary so that the verdict
//! lines are always printed; exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use clap::Parser;
use dissident::builtins;
use dissident::cli::{render, run, Cli};
use dissident::format::Object;
use dissident_core::dissident::{
    dissidence_falsify, quadruple_to_triple, triple_morphism_check, DissidentMap, DissidentTriple,
    MatrixQuadruple,
};
use dissident_core::exact::{int, ExactMatrix, ExactVector, Scalar};
use dissident_core::lifting::{
    build_constraint_system, solve_lifting, verify_lifting, Lifting, LiftingSolution, SolveOptions,
};
use dissident_core::octonion::{
    frobenius_split, g2_check, gram_matrix, oct_mul, octonions, scalar_product,
};
use dissident_core::qda::{
    algebra_morphism_check, division_check, induced_morphism, make_qda, quadratic_check,
    quadruple_algebra, recover_triple,
};
use dissident_core::sample;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn options() -> SolveOptions {
    SolveOptions::default()
}

fn is_multiple_of_identity(l: &Lifting) -> bool {
    let (Some(c), Some(id)) = (l.coefficients(), Lifting::identity(l.n()).coefficients()) else {
        return false;
    };
    let Some(p) = id.iter().position(|x| *x != int(0)) else {
        return false;
    };
    let lambda = &c[p] / &id[p];
    lambda != int(0) && c.len() == id.len() && c.iter().zip(&id).all(|(a, b)| *a == &lambda * b)
}

fn in_process(args: &[&str]) -> (i32, serde_json::Value) {
    let cli = Cli::try_parse_from(std::iter::once("dissident").chain(args.iter().copied()))
        .expect("valid arguments");
    let o = run(&cli);
    (o.code, o.report)
}

/// A map together with its solved lifting and the wall time of the scan.
struct Solved {
    name: String,
    eta: DissidentMap,
    expected: Option<u32>,
    solution: Result<LiftingSolution, String>,
    elapsed: Duration,
}

fn solve(name: impl Into<String>, eta: DissidentMap, expected: Option<u32>) -> Solved {
    let start = Instant::now();
    let solution = solve_lifting(&eta, &options()).map_err(|e| e.to_string());
    Solved {
        name: name.into(),
        eta,
        expected,
        solution,
        elapsed: start.elapsed(),
    }
}

fn builtin_map(name: &str) -> DissidentMap {
    match builtins::load(name).expect("embedded") {
        Object::Map(m) => m,
        Object::Triple(t) => t.eta().clone(),
        Object::Quadruple(q) => quadruple_to_triple(&q).eta().clone(),
        _ => panic!("{name} is not a map"),
    }
}

fn suite_inputs() -> Vec<Solved> {
    let mut out = vec![
        solve("cross7", builtin_map("cross7"), Some(1)),
        solve("cross3", builtin_map("cross3"), Some(1)),
        solve(
            "identity-quadruple",
            builtin_map("identity-quadruple"),
            Some(1),
        ),
        solve("degree3-example", builtin_map("degree3-example"), Some(3)),
        solve("degree5-example", builtin_map("degree5-example"), Some(5)),
    ];
    for seed in 0..10 {
        let q = MatrixQuadruple::random(seed);
        out.push(solve(
            format!("quadruple:{seed}"),
            quadruple_to_triple(&q).eta().clone(),
            Some(1),
        ));
    }
    out
}

fn criterion1() -> Verdict {
    let mut details = Vec::new();
    for name in ["cross7", "cross3"] {
        let start = Instant::now();
        let (code, report) = in_process(&["degree", "--builtin", name]);
        let elapsed = start.elapsed();
        ensure(code == 0, || format!("{name}: exit {code}"))?;
        ensure(report["result"]["degree"] == 1, || {
            format!("{name}: degree {}", report["result"]["degree"])
        })?;
        let sol = solve_lifting(&builtin_map(name), &options()).map_err(|e| e.to_string())?;
        ensure(is_multiple_of_identity(&sol.lifting), || {
            format!("{name}: lifting is not c * id")
        })?;
        ensure(elapsed < Duration::from_secs(5), || {
            format!("{name}: {}", secs(elapsed))
        })?;
        details.push(format!("{name} d=1 Phi~id in {}", secs(elapsed)));
    }
    Ok(details.join(", "))
}

fn criterion2() -> Verdict {
    let start = Instant::now();
    for seed in 0..10 {
        let q = MatrixQuadruple::random(seed);
        let t = quadruple_to_triple(&q);
        ensure(dissidence_falsify(t.eta(), 1000, seed).passed(), || {
            format!("seed {seed}: not dissident")
        })?;
        let alg = quadruple_algebra(&q);
        ensure(alg == make_qda(&t), || {
            format!("seed {seed}: direct and functorial algebras differ")
        })?;
        ensure(quadratic_check(&alg) == Ok(true), || {
            format!("seed {seed}: not quadratic")
        })?;
        ensure(division_check(&alg, 1000, seed).passed(), || {
            format!("seed {seed}: zero divisor")
        })?;
        let d = solve_lifting(t.eta(), &options())
            .map_err(|e| format!("seed {seed}: {e}"))?
            .degree();
        ensure(d == 1, || format!("seed {seed}: degree {d}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || {
        format!("took {}", secs(elapsed))
    })?;
    Ok(format!(
        "10 quadruples dissident, quadratic, division, degree 1 in {}",
        secs(elapsed)
    ))
}

fn criterion3(inputs: &[Solved]) -> Verdict {
    let mut degrees = Vec::new();
    for s in inputs.iter().filter(|s| s.eta.n() == 7) {
        let sol = s
            .solution
            .as_ref()
            .map_err(|e| format!("{}: {e}", s.name))?;
        let d = sol.degree();
        ensure(d % 2 == 1, || format!("{}: EVEN degree {d}", s.name))?;
        ensure(s.expected.is_none_or(|e| e == d), || {
            format!("{}: degree {d}, expected {:?}", s.name, s.expected)
        })?;
        let report = verify_lifting(&s.eta, &sol.lifting, 64, 17).map_err(|e| e.to_string())?;
        ensure(report.passed(), || {
            format!("{}: verification {report:?}", s.name)
        })?;
        let minimal = sol.scan.iter().map(|x| x.degree).eq(1..=d)
            && sol.scan[..sol.scan.len() - 1]
                .iter()
                .all(|x| x.validated_dimension == 0);
        ensure(minimal, || format!("{}: scan is not minimal", s.name))?;
        degrees.push(d);
    }
    let count = |k| degrees.iter().filter(|&&d| d == k).count();
    Ok(format!(
        "{} maps on R^7, degrees 1:{} 3:{} 5:{}, all verified and minimal",
        degrees.len(),
        count(1),
        count(3),
        count(5)
    ))
}

fn criterion4(inputs: &[Solved]) -> Verdict {
    for s in inputs {
        let sol = s
            .solution
            .as_ref()
            .map_err(|e| format!("{}: {e}", s.name))?;
        let last = sol.scan.last().ok_or("empty scan")?;
        ensure(last.validated_dimension == 1, || {
            format!(
                "{}: validated dimension {}",
                s.name, last.validated_dimension
            )
        })?;
    }
    Ok(format!(
        "{} inputs, one projective solution each",
        inputs.len()
    ))
}

fn criterion5() -> Verdict {
    let start = Instant::now();
    let alg = octonions();
    let split = frobenius_split(&alg).map_err(|e| e.to_string())?;
    let basis: Vec<ExactVector> = (0..8).map(|i| alg.basis_vector(i)).collect();
    ensure(
        gram_matrix(&alg, &split, &basis) == ExactMatrix::identity(8),
        || "Gram matrix is not I_8".into(),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..100 {
        let x = sample::vector(&mut rng, 8);
        let r = split.rho_of(&x);
        let v = split.iota(&x);
        let c = &r * &r + scalar_product(&alg, &split, &v, &v);
        let sq = alg.mul(&x, &x);
        let unity = alg.unity();
        let zero = (0..8).all(|i| &sq[i] - int(2) * &r * &x[i] + &c * &unity[i] == int(0));
        ensure(zero, || format!("sample {k}: quadratic identity fails"))?;
    }
    for k in 0..100 {
        let a = sample::vector(&mut rng, 8);
        let norm: Scalar = a.iter().map(|t| t * t).sum();
        let det = alg.left_mul(&a).det().map_err(|e| e.to_string())?;
        let expected = &norm * &norm * &norm * &norm;
        ensure(det == expected, || {
            format!("sample {k}: det L_a = {det}, expected {expected}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {}", secs(elapsed))
    })?;
    Ok(format!(
        "Gram = I_8, 100 quadratic identities, 100 determinants in {}",
        secs(elapsed)
    ))
}

fn criterion6() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut triples = vec![DissidentTriple::cross(7).map_err(|e| e.to_string())?];
    let extra = [
        builtin_map("degree3-example"),
        builtin_map("degree5-example"),
    ];
    for k in 0..24u64 {
        let eta = match k {
            0 | 1 => extra[k as usize].clone(),
            _ => quadruple_to_triple(&MatrixQuadruple::random(100 + k))
                .eta()
                .clone(),
        };
        triples.push(
            DissidentTriple::new(sample::antisymmetric(&mut rng, 7), eta)
                .map_err(|e| e.to_string())?,
        );
    }
    for (k, t) in triples.iter().enumerate() {
        let rec = recover_triple(&make_qda(t)).map_err(|e| format!("triple {k}: {e}"))?;
        ensure(rec.triple() == Some(t), || {
            format!("triple {k}: recovered triple differs")
        })?;
    }
    let table = make_qda(&triples[0]);
    for i in 0..8 {
        for j in 0..8 {
            let (ei, ej) = (table.basis_vector(i), table.basis_vector(j));
            ensure(table.mul(&ei, &ej) == oct_mul(&ei, &ej), || {
                format!("e{i} e{j} differs from the octonions")
            })?;
        }
    }
    ensure(table == octonions(), || {
        "F(cross7) differs from the octonion presentation".into()
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {}", secs(elapsed))
    })?;
    Ok(format!(
        "25 triples recovered exactly, F(cross7) = octonion table, in {}",
        secs(elapsed)
    ))
}

fn criterion7() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..5u64 {
        let s = sample::g2_member(&mut rng);
        ensure(g2_check(&s) == Ok(true), || {
            format!("member {k} is not in G2")
        })?;
        let q = MatrixQuadruple::random(200 + k);
        let src = quadruple_to_triple(&q);
        let dst = quadruple_to_triple(&q.conjugate(&s).map_err(|e| e.to_string())?);
        ensure(triple_morphism_check(&src, &dst, &s) == Ok(true), || {
            format!("member {k}: triple morphism fails")
        })?;
        let h = induced_morphism(&s);
        let ok = algebra_morphism_check(
            &quadruple_algebra(&q),
            &quadruple_algebra(&q.conjugate(&s).unwrap()),
            &h,
        );
        ensure(ok == Ok(true), || {
            format!("member {k}: algebra morphism fails")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {}", secs(elapsed))
    })?;
    Ok(format!(
        "5 G2 members transport triples and algebras in {}",
        secs(elapsed)
    ))
}

fn criterion8(inputs: &[Solved]) -> Verdict {
    let full = inputs
        .iter()
        .find(|s| s.name == "degree5-example")
        .ok_or("missing input")?;
    let sol = full.solution.as_ref().map_err(|e| e.to_string())?;
    ensure(sol.scan.len() == 5, || {
        format!("scan stopped at {}", sol.scan.len())
    })?;
    ensure(full.elapsed < Duration::from_secs(900), || {
        format!("full scan took {}", secs(full.elapsed))
    })?;
    let system = build_constraint_system(&full.eta, 5).map_err(|e| e.to_string())?;
    let coeffs = sol
        .lifting
        .coefficients()
        .ok_or("lifting is not homogeneous")?;
    ensure(system.annihilates(&coeffs), || {
        "lifting misses the full degree-5 system".into()
    })?;
    let short = inputs
        .iter()
        .find(|s| s.name == "cross7")
        .ok_or("missing input")?;
    ensure(short.elapsed < Duration::from_secs(10), || {
        format!("d=1 path took {}", secs(short.elapsed))
    })?;
    Ok(format!(
        "full scan d=1..5 in {}, lifting annihilates the full {}x{} system, d=1 short-circuit in {}",
        secs(full.elapsed),
        system.nrows(),
        system.ncols(),
        secs(short.elapsed)
    ))
}

fn criterion9() -> Verdict {
    let commands: [&[&str]; 6] = [
        &["degree", "--builtin", "cross7"],
        &["degree", "--quadruple", "random", "--seed", "7"],
        &["degree", "--builtin", "degree3-example"],
        &[
            "check",
            "--what",
            "division",
            "--builtin",
            "octonions",
            "--trials",
            "100",
        ],
        &["roundtrip", "--quadruple", "random", "--seed", "3"],
        &["table-dump"],
    ];
    for args in commands {
        let a = Command::new(env!("CARGO_BIN_EXE_dissident"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        let b = Command::new(env!("CARGO_BIN_EXE_dissident"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || {
            format!("{args:?}: reports differ")
        })?;
        let inner = render(&in_process(args).1);
        ensure(inner.as_bytes() == a.stdout, || {
            format!("{args:?}: binary and library reports differ")
        })?;
    }
    Ok(format!(
        "{} commands byte-identical across runs",
        commands.len()
    ))
}

fn main() -> ExitCode {
    let mut verdicts: Vec<(u32, Verdict)> = vec![(1, criterion1()), (2, criterion2())];
    let inputs = suite_inputs();
    verdicts.push((3, criterion3(&inputs)));
    verdicts.push((4, criterion4(&inputs)));
    verdicts.push((5, criterion5()));
    verdicts.push((6, criterion6()));
    verdicts.push((7, criterion7()));
    verdicts.push((8, criterion8(&inputs)));
    verdicts.push((9, criterion9()));

    let mut failed = 0;
    for (n, v) in &verdicts {
        match v {
            Ok(detail) => println!("PASS criterion {n}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {n}: {reason}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        verdicts.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
