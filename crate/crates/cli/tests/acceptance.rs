//! Acceptance suite: one PASS/FAIL line per criterion, with pinned tolerances
//! and wall-clock limits.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use flipstiefel::char_classes::{Conclusion, SpanEquality, SpanProviso};
use flipstiefel::spectral::differential_matrix;
use flipstiefel::*;
use flipstiefel_cli::{run, verify, Report};
use flipstiefel_witness::{retract, riemannian_gradient, solve, Budget, QuadraticMap, StiefelFrame, WitnessProblem};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

const WITNESS_RESIDUAL: f64 = 1e-6;
const WITNESS_ORTHONORMALITY: f64 = 1e-10;
const WITNESS_SUCCESS_RATE: f64 = 0.95;
const GRADIENT_REL_TOL: f64 = 1e-5;

type Outcome = std::result::Result<String, String>;

/// Parity table of binomial coefficients by Pascal's rule.
struct Pascal(Vec<Vec<bool>>);

impl Pascal {
    fn new(rows: usize) -> Self {
        let mut t = vec![vec![true]];
        for a in 1..=rows {
            let prev = &t[a - 1];
            let row = (0..=a)
                .map(|b| {
                    let left = b > 0 && prev[b - 1];
                    let right = b < a && prev[b];
                    left ^ right
                })
                .collect();
            t.push(row);
        }
        Pascal(t)
    }

    fn odd(&self, a: u64, b: u64) -> bool {
        b <= a && self.0[a as usize][b as usize]
    }

    fn nf(&self, n: u64, k: u64) -> u64 {
        (n - 2 * k + 1..=n).find(|&j| self.odd(k + j - 1, j)).expect("j = n - 2k + 1 .. n contains an odd coefficient")
    }
}

fn pairs(max_n: u64, strict: bool) -> impl Iterator<Item = (u64, u64)> {
    (2..=max_n).flat_map(move |n| (1..=n / 2).filter(move |k| !strict || 2 * k < n).map(move |k| (n, k)))
}

fn fv(n: u64, k: u64) -> FlipManifold {
    FlipManifold::new(n, k).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let p = Pascal::new(200);
    let mut count = 0;
    for (n, k) in pairs(64, false) {
        ensure(nf(n, k).unwrap() == p.nf(n, k), || format!("nf({n},{k}) disagrees with brute force"))?;
        let v = p.nf(n, k);
        let mut expect = |cond: bool, want: u64, item: &str| {
            if cond {
                count += 1;
                ensure(v == want, || format!("{item}: N_F({n},{}) = {v}, expected {want}", 2 * k))
            } else {
                Ok(())
            }
        };
        expect(n == 2 * k && k % 2 == 1, 1, "N_F(2k,2k), k odd")?;
        expect(n == 2 * k && k % 4 == 2, 2, "N_F(2k,2k), k = 2 mod 4")?;
        expect(n == 2 * k + 1 && matches!(k % 4, 1 | 2), 2, "N_F(2k+1,2k), k = 1,2 mod 4")?;
        expect(n == 2 * k + 1 && matches!(k % 12, 1 | 2 | 5 | 6 | 9 | 10), 2, "N_F(2k+1,2k), k mod 12")?;
        expect(n == 2 * k + 2 && matches!(k % 12, 1 | 5 | 9), 3, "N_F(2k+2,2k)")?;
        expect(k == 1, n.wrapping_sub(1), "N_F(n,2)")?;
        expect(k == 2 && n % 2 == 1, n.wrapping_sub(3), "N_F(n,4), n odd")?;
        expect(k == 2 && n % 2 == 0, n.wrapping_sub(2), "N_F(n,4), n even")?;
        expect(k == 3 && matches!(n % 4, 1 | 2), n.wrapping_sub(5), "N_F(n,6), n = 1,2 mod 4")?;
        expect(k == 3 && n % 4 == 0, n.wrapping_sub(4), "N_F(n,6), n = 0 mod 4")?;
        expect(k == 3 && n % 4 == 3, n.wrapping_sub(3), "N_F(n,6), n = 3 mod 4")?;
    }
    // the two residue descriptions of nf(2k+1, 2k) = 2 select the same k
    let by4: Vec<u64> = (1..=31).filter(|k| matches!(k % 4, 1 | 2)).collect();
    let by12: Vec<u64> = (1..=31).filter(|k| matches!(k % 12, 1 | 2 | 5 | 6 | 9 | 10)).collect();
    ensure(by4 == by12, || "the mod 4 and mod 12 lists differ".into())?;
    Ok(format!("{count} closed-form instances"))
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    for (n, k) in pairs(12, true) {
        ensure(crosscheck(n, k).unwrap(), || format!("crosscheck fails at FV_{{{n},{}}}", 2 * k))?;
        let c = KoszulComplex::new(n, k).unwrap();
        let tt = transgression_table(n, k).unwrap();
        for t in 0..=c.max_degree() {
            let a = differential_matrix(&c, &tt, t);
            let b = differential_matrix(&c, &tt, t + 1);
            ensure((&b * &a).is_zero(), || format!("d o d != 0 at FV_{{{n},{}}}, degree {t}", 2 * k))?;
        }
        count += 1;
    }
    Ok(format!("{count} manifolds"))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for (n, k) in pairs(14, true).filter(|&(_, k)| k >= 2) {
        let m = fv(n, k);
        let g = betti(&presentation(&m).unwrap());
        let label = format!("FV_{{{n},{}}}", 2 * k);
        ensure(g.total() == m.nf() << (2 * k - 1), || format!("{label}: total {}", g.total()))?;
        ensure(g.is_palindromic(), || format!("{label}: not palindromic"))?;
        ensure(g.top_degree() == Some((k * (2 * n - 2 * k - 1)) as usize), || format!("{label}: top degree"))?;
        ensure(euler_characteristic(&g) == 0, || format!("{label}: Euler characteristic"))?;
        count += 1;
    }
    Ok(format!("{count} manifolds"))
}

fn criterion_4() -> Outcome {
    use SpanProviso::{Always, KGreaterThan};
    let expected = [
        (0, 0, false, false, 2, 0, false, Some(Always)),
        (0, 1, false, false, 2, 0, false, Some(Always)),
        (0, 2, false, false, 2, 0, false, Some(Always)),
        (0, 3, false, false, 2, 0, false, Some(Always)),
        (1, 0, false, true, 4, 1, true, Some(KGreaterThan(1))),
        (1, 1, true, true, 2, 1, true, None),
        (1, 2, false, false, 4, 1, false, Some(KGreaterThan(1))),
        (1, 3, true, false, 4, 3, true, None),
        (2, 0, false, true, 2, 0, true, Some(Always)),
        (2, 1, false, false, 2, 0, false, Some(Always)),
        (2, 2, false, true, 2, 0, true, Some(Always)),
        (2, 3, false, false, 2, 0, false, Some(Always)),
        (3, 0, false, false, 8, 3, false, Some(KGreaterThan(3))),
        (3, 1, true, true, 2, 1, true, None),
        (3, 2, false, true, 4, 3, true, None),
        (3, 3, true, false, 2, 1, true, None),
    ];
    let table = residue_table();
    ensure(table.len() == 16, || format!("{} rows", table.len()))?;
    for (k4, n4, w1, w2, modulus, dim, not_par, span) in expected {
        let r = table.iter().find(|r| r.k_mod4 == k4 && r.n_mod4 == n4).ok_or("missing row")?;
        let want = Conclusion { not_parallelizable: not_par, span_equals_stable_span: span };
        ensure((r.w1, r.w2, r.dim_mod(modulus), r.conclusion) == (w1, w2, dim, want), || {
            format!("row ({k4},{n4}): {r:?}")
        })?;
    }

    let instances: Vec<(u64, u64)> = (1..=19u64).flat_map(|k| (2 * k + 1..=40).map(move |n| (n, k))).collect();
    let mut all = BTreeSet::new();
    let mut some = BTreeSet::new();
    for &(n, k) in &instances {
        let class = (k % 4, n % 4);
        all.insert(class);
        if classify(&fv(n, k)).low_degree_obstruction {
            some.insert(class);
        }
    }
    let always: BTreeSet<_> = all
        .iter()
        .copied()
        .filter(|&(k4, n4)| {
            instances
                .iter()
                .filter(|&&(n, k)| (k % 4, n % 4) == (k4, n4))
                .all(|&(n, k)| classify(&fv(n, k)).low_degree_obstruction)
        })
        .collect();
    let listed: BTreeSet<(u64, u64)> = [(1, 1), (1, 3), (3, 1), (3, 3), (1, 0), (2, 0), (2, 2), (3, 2)].into();
    ensure(always == listed && some == listed, || format!("obstructed classes {always:?} / {some:?}"))?;

    for &(n, k) in &instances {
        let listed = k % 2 == 0
            || (k % 4 == 1 && matches!(n % 4, 0 | 2) && k > 1)
            || (k % 4 == 3 && n % 4 == 0 && k > 3);
        let got = classify(&fv(n, k)).span_equals_stable_span == SpanEquality::Yes;
        ensure(got == listed, || format!("span verdict at FV_{{{n},{}}}", 2 * k))?;
    }
    Ok(format!("16 rows, {} classified instances", instances.len()))
}

fn criterion_5() -> Outcome {
    let p = Pascal::new(200);
    for (n, k) in pairs(48, false) {
        let brute = p.nf(n, k) == n - 2 * k + 1;
        ensure(nf_is_minimal(n, k).unwrap() == brute, || format!("predicate wrong at FV_{{{n},{}}}", 2 * k))?;
    }
    let mut count = 0;
    for r in 1..=5u32 {
        for k in 1..=32u64 {
            if (k - 1) & (1 << r) != 0 {
                continue;
            }
            let n = 2 * k + (1 << r) - 1;
            ensure(p.nf(n, k) == 1 << r && nf(n, k).unwrap() == 1 << r, || format!("N_F({n},{}) != 2^{r}", 2 * k))?;
            count += 1;
        }
    }
    Ok(format!("minimality for n <= 48, {count} family members"))
}

fn criterion_6() -> Outcome {
    let ob = |a: &str, b: &str| obstruct(&a.parse().unwrap(), &b.parse().unwrap()).unwrap();
    let v = ob("flip:8,8", "flip:4,4");
    ensure((v.verdict, v.source_exp, v.target_exp) == (Verdict::Forbidden, nf(8, 4).unwrap(), nf(4, 2).unwrap()), || format!("{v:?}"))?;
    ensure((v.source_exp, v.target_exp) == (4, 2), || format!("{v:?}"))?;
    for k in 1..=3 {
        let v = ob("sphere:7", &format!("flip:7,{}", 2 * k));
        ensure(v.verdict == Verdict::Forbidden && v.source_exp == 7 && v.target_exp == nf(7, k).unwrap(), || format!("{v:?}"))?;
    }
    let v = ob("flip:7,6", "so:7");
    ensure(v.verdict == Verdict::Forbidden && v.source_exp == nf(7, 3).unwrap() && v.target_exp == 2, || format!("{v:?}"))?;
    let mut unknown = 0;
    for k in (1..=31u64).step_by(2) {
        for l in (2..=k).step_by(4) {
            let v = ob(&format!("o:{}", 2 * k), &format!("o:{}", 2 * l));
            ensure((v.verdict, v.source_exp, v.target_exp) == (Verdict::Unknown, 1, 2), || format!("o:{} -> o:{}: {v:?}", 2 * k, 2 * l))?;
            unknown += 1;
        }
    }
    ensure((np(7, 1).unwrap(), np(8, 7).unwrap(), np(7, 6).unwrap()) == (7, 8, 2), || "N_P anchors".into())?;
    for (s, e) in [("flip:10,2", 9), ("sphere:7", 7), ("so:7", 2), ("so:8", 8)] {
        let got = index_exponent(&s.parse().unwrap()).unwrap().exponent;
        ensure(got == e, || format!("index of {s} is (x^{got})"))?;
    }
    Ok(format!("forbidden instances hold, {unknown} O(2k) -> O(2l) pairs unknown"))
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for n in 2..=100u64 {
        for k in 1..=3u64.min(n / 2) {
            let t = coincidence_threshold(n, k).unwrap();
            let want = match k {
                1 => n - 2,
                2 => n / 2 - 2,
                _ => (n - rn(n) - 1) / 3,
            };
            ensure(t == want, || format!("threshold({n},{}) = {t}, expected {want}", 2 * k))?;
            count += 1;
        }
    }
    for n in 6..=100u64 {
        let (r, gap) = match n % 4 {
            1 | 2 => (5, 5),
            0 => (4, 4),
            _ => (3, 3),
        };
        let m = (n - r - 1) / 3;
        ensure(rn(n) == r && 3 * m <= n - r - 1 && nf(n, 3).unwrap() == n - gap && 3 * m < nf(n, 3).unwrap(), || {
            format!("k = 3 table row at n = {n}")
        })?;
    }
    Ok(format!("{count} thresholds"))
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    for &(n, k, m) in &[(4usize, 1usize, 2usize), (5, 1, 3), (8, 2, 2), (10, 2, 3)] {
        ensure(m as u64 <= coincidence_threshold(n as u64, k as u64).unwrap(), || format!("m above threshold for ({n},{k},{m})"))?;
        let start = Instant::now();
        let mut ok = 0;
        for s in 0..20u64 {
            let f = QuadraticMap::seeded(n, m, 10_000 + s);
            let p = WitnessProblem::new(n, k, &f).unwrap();
            let res = solve(&p, Budget::default(), s).map_err(|e| e.to_string())?;
            if res.residual < WITNESS_RESIDUAL && res.frame.orthonormality_error() < WITNESS_ORTHONORMALITY {
                ok += 1;
            }
        }
        let elapsed = start.elapsed();
        ensure(elapsed <= Duration::from_secs(10), || format!("({n},{k},{m}) took {elapsed:?}"))?;
        ensure(ok as f64 >= WITNESS_SUCCESS_RATE * 20.0, || format!("({n},{k},{m}): {ok}/20 converged"))?;
        notes.push(format!("({n},{k},{m}) {ok}/20"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let f = QuadraticMap::seeded(10, 3, 77);
    let p = WitnessProblem::new(10, 2, &f).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let v = StiefelFrame::random(10, 4, &mut rng);
        let z = DMatrix::from_fn(10, 4, |_, _| rng.sample::<f64, _>(StandardNormal));
        let xi = v.project_tangent(&z);
        let xi = &xi / xi.norm();
        let analytic = riemannian_gradient(&p, &v).dot(&xi);
        let h = 1e-5;
        let at = |t: f64| p.objective(&retract(&v, &(&xi * t)).unwrap()).unwrap();
        let fd = (at(h) - at(-h)) / (2.0 * h);
        let rel = (analytic - fd).abs() / analytic.abs().max(fd.abs()).max(1e-3);
        worst = worst.max(rel);
    }
    ensure(worst <= GRADIENT_REL_TOL, || format!("gradient check relative error {worst:e}"))?;
    notes.push(format!("gradient rel. error {worst:.1e}"));
    Ok(notes.join(", "))
}

fn criterion_9() -> Outcome {
    let out = run(["flipstiefel", "verify-paper", "--json"]);
    ensure(out.code == 0, || format!("exit code {}", out.code))?;
    let r: Report = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let total = r.outputs["total"].as_u64().unwrap_or(0);
    ensure(total >= 60, || format!("only {total} checks"))?;
    let broken = |n: u64, k: u64| if k == 1 { Ok(n) } else { nf(n, k) };
    let failing: Vec<String> = verify::verify_with(&broken).into_iter().filter(|c| !c.passed).map(|c| c.anchor).collect();
    ensure(failing.iter().any(|a| a == "N_F(n,2) = n-1"), || format!("corrupted nf not named: {failing:?}"))?;
    Ok(format!("{total} checks, corrupted nf flagged by {} of them", failing.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("1 nf closed forms (n <= 64)", Duration::from_secs(1), criterion_1),
        ("2 spectral crosscheck and d o d = 0 (n <= 12)", Duration::from_secs(60), criterion_2),
        ("3 cohomology invariants (n <= 14)", Duration::from_secs(5), criterion_3),
        ("4 residue table and case lists", Duration::from_secs(1), criterion_4),
        ("5 minimality predicate and 2^r family", Duration::from_secs(1), criterion_5),
        ("6 equivariant-map verdicts", Duration::from_secs(1), criterion_6),
        ("7 coincidence thresholds (n <= 100)", Duration::from_secs(1), criterion_7),
        ("8 witness suite", Duration::from_secs(40), criterion_8),
        ("9 verify-paper", Duration::from_secs(60), criterion_9),
    ];
    let mut failures = Vec::new();
    for (name, limit, body) in criteria {
        let start = Instant::now();
        let outcome = body();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(note) if elapsed <= limit => Ok(note),
            Ok(_) => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => Err(e),
        };
        match &outcome {
            Ok(note) => println!("PASS  {name}  [{elapsed:.2?} <= {limit:?}]  {note}"),
            Err(e) => {
                println!("FAIL  {name}  [{elapsed:.2?}]  {e}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
