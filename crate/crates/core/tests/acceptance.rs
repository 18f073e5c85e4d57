//! Acceptance criteria, one pass/fail line each. Exits nonzero if any fails.

mod oracle;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use octimage::classifier::{basic_evaluations, classify_multilinear, realize_target, sample_consistency, ScanOptions};
use octimage::corpus::{named_multilinear, random_multilinear, random_semihomogeneous};
use octimage::malcev::{classify_malcev, malcev_identity_residual, malcev_product, realize_malcev_target};
use octimage::orbit::map_pure;
use octimage::sampling::{random_rational_octonion, random_rational_pure, random_real_octonion, random_real_pure, rng_for};
use octimage::semihomog::{classify_semihomogeneous, eigenvalue_ratio_stat, ratio_function, Ratio};
use octimage::{parse, Algebra, Octonion, Polynomial, Rational, Scalar, Verdict};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

fn rat_alg() -> Algebra<Rational> {
    Algebra::standard_rational()
}

fn real_alg() -> Algebra<f64> {
    Algebra::standard_real(1e-9)
}

fn algebra_exactness() -> Outcome {
    let start = Instant::now();
    let a = rat_alg();
    for i in 0..1000 {
        let mut rng = rng_for(1, 100, i);
        let x = random_rational_octonion(&mut rng);
        let y = random_rational_octonion(&mut rng);
        let alt = a.associator(&x, &x, &y).is_exact_zero()
            && a.associator(&x, &y, &x).is_exact_zero()
            && a.associator(&y, &x, &x).is_exact_zero();
        ensure(alt, || format!("alternative law fails at sample {i}"))?;
        ensure(a.norm(&a.multiply(&x, &y)) == a.norm(&x).mul_ref(&a.norm(&y)), || format!("norm, sample {i}"))?;
        let conj = a.multiply(&a.conjugate(&y), &a.conjugate(&x));
        ensure(a.conjugate(&a.multiply(&x, &y)) == conj, || format!("conjugation, sample {i}"))?;
        ensure(a.trace(&a.multiply(&x, &y)) == a.trace(&a.multiply(&y, &x)), || format!("trace, sample {i}"))?;
        let v = x.pure_part();
        ensure(a.multiply(&v, &v) == Octonion::scalar(a.norm(&v).neg_ref()), || format!("pure square, sample {i}"))?;
    }
    let took = within(start, Duration::from_secs(5))?;
    Ok(format!("5 laws exact on 1000 random rational octonions in {took:.2?}"))
}

fn table_oracle() -> Outcome {
    let a = rat_alg();
    for i in 0..8 {
        for j in 0..8 {
            let (x, y) = (Octonion::basis(i), Octonion::basis(j));
            let (table, doubling) = (a.multiply(&x, &y), a.multiply_by_doubling(&x, &y));
            ensure(table == doubling, || format!("e{i}e{j}: table {table}, doubling {doubling}"))?;
            let (s, k) = oracle::basis_product(i, j);
            let hand = Octonion::basis(k).scale(&Rational::integer(s));
            ensure(table == hand, || format!("e{i}e{j}: table {table}, hand-written {hand}"))?;
        }
    }
    Ok("table = recursive doubling = hand-written table on all 64 pairs".into())
}

fn lemma3_corpus() -> Outcome {
    let start = Instant::now();
    let a = rat_alg();
    let mut corpus: Vec<(String, Polynomial)> =
        named_multilinear().into_iter().map(|(n, p)| (n.to_string(), p)).collect();
    for k in 0..20u64 {
        let mut rng = rng_for(3, 300, k);
        let n = 1 + (k as usize % 4);
        corpus.push((format!("random #{k} (n = {n})"), random_multilinear(&mut rng, n, 5)));
    }
    let mut tuples = 0;
    for (name, p) in &corpus {
        for ev in basic_evaluations(&a, p).map_err(|e| format!("{name}: {e}"))? {
            ev.map_err(|e| format!("{name}: {e}"))?;
            tuples += 1;
        }
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("{} polynomials, {tuples} basic tuples, each value a single basis multiple, {took:.2?}", corpus.len()))
}

fn multilinear_verdicts() -> Outcome {
    let a = rat_alg();
    let cases = [
        ("x1*x2 - x2*x1", Verdict::Pure),
        ("(x1*x2)*x3 - x1*(x2*x3)", Verdict::Pure),
        ("x1*x2 + x2*x1", Verdict::Full),
        ("x1", Verdict::Full),
        ("0", Verdict::Zero),
    ];
    let mut notes = Vec::new();
    for (text, expected) in cases {
        let p = parse(text).map_err(|e| e.to_string())?;
        let c = classify_multilinear(&a, &p, ScanOptions::default()).map_err(|e| format!("{text}: {e}"))?;
        ensure(c.class.verdict == expected, || format!("{text}: got {}, expected {expected}", c.class.verdict))?;
        let brute = oracle::verdict(&p);
        ensure(brute == expected, || format!("{text}: oracle says {brute}"))?;
        let s = sample_consistency(&a, &p, &c.class, 200, 4).map_err(|e| format!("{text}: {e}"))?;
        if expected == Verdict::Full {
            ensure(s.span_dimension == 8, || format!("{text}: span dimension {}", s.span_dimension))?;
        }
        notes.push(format!("{text} -> {expected}"));
    }
    Ok(format!("{}; oracle agrees; 200-sample containment holds", notes.join(", ")))
}

fn constructive_surjectivity() -> Outcome {
    let start = Instant::now();
    let p = parse("x1*x2 + x2*x1").map_err(|e| e.to_string())?;
    let class = classify_multilinear(&rat_alg(), &p, ScanOptions::default()).map_err(|e| e.to_string())?.class;
    let ra = real_alg();
    let mut worst: f64 = 0.0;
    for k in 0..20u64 {
        let q = random_real_octonion(&mut rng_for(5, 500, k)).scale(&3.0);
        let r = realize_target(&ra, &p, &class, &q, k).map_err(|e| format!("target {k}: {e}"))?;
        let residual = p.evaluate(&ra, &r.assignment, octimage::ProductKind::Octonion).unwrap().sub(&q).euclidean_len();
        ensure(residual <= 1e-8, || format!("target {k}: residual {residual:e}"))?;
        worst = worst.max(residual);
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("20 targets realized, max residual {worst:.1e}, {took:.2?}"))
}

fn orbit_transitivity() -> Outcome {
    let ra = real_alg();
    let (mut worst_map, mut worst_mult) = (0.0f64, 0.0f64);
    let mut equal_norm_pairs = 0;
    for k in 0..50u64 {
        let mut rng = rng_for(6, 600, k);
        let x = random_real_pure(&mut rng);
        let mut y = random_real_pure(&mut rng);
        if k % 2 == 0 {
            // same norm as x
            y = y.scale(&(ra.norm(&x) / ra.norm(&y)).sqrt());
            equal_norm_pairs += 1;
        }
        let m = map_pure(&ra, &x, &y, k).map_err(|e| format!("pair {k}: {e}"))?;
        let residual = y.sub(&m.phi.apply(&x).scale(&m.c)).euclidean_len();
        ensure(residual <= 1e-8, || format!("pair {k}: residual {residual:e}"))?;
        let same_norm = (ra.norm(&x) - ra.norm(&y)).abs() <= 1e-9 * ra.norm(&x).max(1.0);
        ensure(same_norm == (m.c == 1.0), || format!("pair {k}: c = {} with equal norms = {same_norm}", m.c))?;
        let pts: Vec<Octonion<f64>> = (0..200).map(|_| random_real_octonion(&mut rng)).collect();
        let mult = m.phi.multiplicativity_residual(&ra, pts[..100].iter().zip(&pts[100..]));
        ensure(mult <= 1e-8, || format!("pair {k}: multiplicativity residual {mult:e}"))?;
        worst_map = worst_map.max(residual);
        worst_mult = worst_mult.max(mult);
    }
    Ok(format!(
        "50 pairs ({equal_norm_pairs} with equal norms, all c = 1), max residual {worst_map:.1e}, max multiplicativity residual {worst_mult:.1e}"
    ))
}

fn malcev_suite() -> Outcome {
    let a = rat_alg();
    for i in 0..1000 {
        let mut rng = rng_for(7, 700, i);
        let [x, y, z]: [Octonion<Rational>; 3] = std::array::from_fn(|_| random_rational_pure(&mut rng));
        let xy = malcev_product(&a, &x, &y).map_err(|e| e.to_string())?;
        let yx = malcev_product(&a, &y, &x).map_err(|e| e.to_string())?;
        ensure(xy.add(&yx).is_exact_zero(), || format!("anticommutativity fails at triple {i}"))?;
        let r = malcev_identity_residual(&a, &x, &y, &z).map_err(|e| e.to_string())?;
        ensure(r.is_exact_zero(), || format!("Malcev identity residual {r} at triple {i}"))?;
    }
    let xy = parse("x1*x2").map_err(|e| e.to_string())?;
    let c = classify_malcev(&a, &xy, 200, 0);
    ensure(c.verdict == Verdict::Pure, || format!("xy: got {}", c.verdict))?;
    let anti = parse("x1*x2 + x2*x1").map_err(|e| e.to_string())?;
    let z = classify_malcev(&a, &anti, 200, 0);
    ensure(z.verdict == Verdict::Zero, || format!("xy + yx: got {}", z.verdict))?;
    let cert = z.certificate.ok_or("xy + yx: no vanishing certificate")?;
    let ra = real_alg();
    let mut worst: f64 = 0.0;
    for k in 0..10u64 {
        let target = random_real_pure(&mut rng_for(7, 701, k)).scale(&2.0);
        let r = realize_malcev_target(&ra, &xy, c.verdict, &target, k).map_err(|e| format!("target {k}: {e}"))?;
        ensure(r.residual <= 1e-8, || format!("target {k}: residual {:e}", r.residual))?;
        worst = worst.max(r.residual);
    }
    Ok(format!(
        "identities exact on 1000 triples; xy -> Pure; xy + yx -> Zero ({} grid points); 10 targets, max residual {worst:.1e}",
        cert.points
    ))
}

fn semihomogeneous_verdicts() -> Outcome {
    let a = rat_alg();
    let sq = parse("x1*x1").map_err(|e| e.to_string())?;
    let c = classify_semihomogeneous(&a, &sq, 200, 0).map_err(|e| e.to_string())?;
    ensure(c.class.verdict == Verdict::Dense, || format!("x*x: got {}", c.class.verdict))?;
    let f1 = ratio_function(&a, &sq, &["2 + e1".parse().unwrap()]).map_err(|e| e.to_string())?.f;
    let f2 = ratio_function(&a, &sq, &["1 + e2".parse().unwrap()]).map_err(|e| e.to_string())?.f;
    ensure(f1 == Ratio::Finite(Rational::new(16, 9)), || format!("f(2+e1) = {f1}"))?;
    ensure(f2 == Ratio::Infinite, || format!("f(1+e2) = {f2}"))?;
    let comm = parse("x1*x2 - x2*x1").map_err(|e| e.to_string())?;
    let c = classify_semihomogeneous(&a, &comm, 200, 0).map_err(|e| e.to_string())?;
    ensure(c.class.verdict == Verdict::Pure, || format!("commutator: got {}", c.class.verdict))?;
    let mut counts = std::collections::BTreeMap::new();
    for k in 0..50u64 {
        let p = random_semihomogeneous(&mut rng_for(8, 800, k), 4);
        let c = classify_semihomogeneous(&a, &p, 100, k).map_err(|e| format!("{p}: {e}"))?;
        ensure(c.class.verdict != Verdict::Anomalous, || format!("{p}: Anomalous"))?;
        *counts.entry(c.class.verdict.to_string()).or_insert(0) += 1;
    }
    Ok(format!("x*x -> Dense (f = 16/9 and inf), commutator -> Pure, 50 random: {counts:?}"))
}

fn eigenvalue_machinery() -> Outcome {
    let a = rat_alg();
    for i in 0..1000 {
        let x = random_rational_octonion(&mut rng_for(9, 900, i));
        ensure(a.char_poly_residual(&x).is_exact_zero(), || format!("char poly residual at sample {i}"))?;
    }
    let x = parse("x1").map_err(|e| e.to_string())?;
    let stat = |s: &str| eigenvalue_ratio_stat(&a, &x, &[s.parse().unwrap()]).map_err(|e| e.to_string());
    let cases = [("3", Rational::integer(2)), ("e1", Rational::integer(-2)), ("1 + e2", Rational::integer(1))];
    let mut failures = Vec::new();
    for (value, expected) in cases {
        let got = stat(value)?;
        if got != expected {
            failures.push(format!("stat({value}) = {got}, expected {expected}"));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok("char poly residual 0 on 1000 samples; stat(3) = 2, stat(e1) = -2, stat(1+e2) = 1".into())
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_octimage")).args(args).output().map_err(|e| e.to_string())?;
    ensure(out.status.code().is_some(), || format!("{args:?} was killed"))?;
    Ok(out.stdout)
}

fn cli_determinism() -> Outcome {
    let runs: [&[&str]; 7] = [
        &["classify", "--poly", "(x1*x2)*x3 - x3*(x2*x1)", "--samples", "100", "--seed", "7"],
        &["classify", "--poly", "x1*x2 + x2*x1", "--mode", "real", "--target", "1 + 7*e5", "--seed", "3"],
        &["semi", "--poly", "x1*x1 + x1*x2", "--samples", "100", "--excluded", "-2,2"],
        &["malcev", "--poly", "x1*x2", "--target", "e7", "--samples", "50"],
        &["orbit", "--from", "e1 + e2", "--to", "e4 - e7", "--seed", "5"],
        &["selfcheck", "--samples", "50", "--seed", "11"],
        &["table"],
    ];
    for args in runs {
        let mut reference: Option<Vec<u8>> = None;
        for threads in ["1", "4", "1", "8"] {
            let mut full = vec!["--json", "--threads", threads];
            full.extend_from_slice(args);
            let out = run_cli(&full)?;
            ensure(!out.is_empty(), || format!("{args:?}: empty output"))?;
            match &reference {
                None => reference = Some(out),
                Some(r) => ensure(*r == out, || format!("{args:?}: output differs with {threads} threads"))?,
            }
        }
    }
    Ok(format!("{} commands byte-identical across 4 runs at 1, 4 and 8 threads", runs.len()))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("algebra exactness", algebra_exactness),
        ("structure table oracle", table_oracle),
        ("basic evaluation support", lemma3_corpus),
        ("multilinear verdicts", multilinear_verdicts),
        ("constructive surjectivity", constructive_surjectivity),
        ("orbit transitivity", orbit_transitivity),
        ("Malcev suite", malcev_suite),
        ("semihomogeneous verdicts", semihomogeneous_verdicts),
        ("eigenvalue machinery", eigenvalue_machinery),
        ("CLI determinism", cli_determinism),
    ];
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
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
