//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigInt;
use nullsum_core::grouplab::{
    nullstellensatz_consistency, order_in_free_group, sweep, upsilon, verify_for_set, Free, NiceSet, SearchBudget,
    SweepBudget, Variant,
};
use nullsum_core::nullstellensatz::{
    d_relation_check, row_sum_check, sign_relation_check, ExtractConfig, Extractor, Method, TargetSpec,
};
use nullsum_core::polycore::{CapProfile, Polynomial, TermLimit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn nullsum(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_nullsum"))
        .args(["--format", "json"])
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("nullsum {args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn child_peak_mb() -> f64 {
    let mut ru: libc::rusage = unsafe { std::mem::zeroed() };
    unsafe { libc::getrusage(libc::RUSAGE_CHILDREN, &mut ru) };
    ru.ru_maxrss as f64 / 1024.0
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Rows j = 1..6, columns i = 1..6, then e_{6,j}.
const TABLE_6: [[i64; 7]; 6] = [
    [0, -28, -40, -20, 20, 40, -28],
    [28, 0, -28, -40, -20, 20, -40],
    [40, 28, 0, -28, -40, -20, -20],
    [20, 40, 28, 0, -28, -40, 20],
    [-20, 20, 40, 28, 0, -28, 40],
    [-40, -20, 20, 40, 28, 0, 28],
];

fn table_1() -> Outcome {
    let start = Instant::now();
    let doc = nullsum(&["table", "--k", "6"])?;
    let secs = start.elapsed().as_secs_f64();
    let rows = doc["result"]["rows"].as_array().ok_or("no rows")?;
    let mut n_a = 0;
    for (j, row) in rows.iter().enumerate() {
        for i in 0..6 {
            let cell = &row["a"][i];
            if i == j {
                check(cell.is_null(), || format!("diagonal ({},{}) not empty", i + 1, j + 1))?;
            } else {
                let want = TABLE_6[j][i].to_string();
                check(cell.as_str() == Some(want.as_str()), || format!("a_({},{}) = {cell}, want {want}", i + 1, j + 1))?;
                n_a += 1;
            }
        }
        let want = TABLE_6[j][6].to_string();
        check(row["e"].as_str() == Some(want.as_str()), || format!("e_(6,{}) = {}, want {want}", j + 1, row["e"]))?;
    }
    check(n_a == 30, || format!("{n_a} a-values"))?;
    let mb = child_peak_mb();
    check(secs < 30.0 && mb < 1024.0, || format!("{secs:.1} s, {mb:.0} MB"))?;
    Ok(format!("30 a-values and 6 e-values exact, {secs:.2} s, peak {mb:.0} MB"))
}

fn k11_headline() -> Outcome {
    let start = Instant::now();
    let doc = nullsum(&["certify", "--conjecture", "gadms", "--k", "11", "--j", "1,2"])?;
    let c = &doc["result"];
    let values: Vec<&str> = c["values"].as_array().ok_or("no values")?.iter().filter_map(|v| v["value"].as_str()).collect();
    check(values == ["18128730243333160", "46383022877233608"], || format!("values {values:?}"))?;
    check(c["gcd"].as_str() == Some("8"), || format!("gcd {}", c["gcd"]))?;
    check(c["gcd_factors"] == serde_json::json!([[2, 3]]), || format!("factors {}", c["gcd_factors"]))?;
    Ok(format!(
        "e_11,1 and e_11,2 exact, gcd 8 = 2^3, {:.1} s, peak {:.0} MB",
        start.elapsed().as_secs_f64(),
        child_peak_mb()
    ))
}

fn oracle_equivalence() -> Outcome {
    use common::*;
    let ex = Extractor::new(ExtractConfig::default());
    let mut n = 0;
    for k in 2..=6 {
        let big_f = Expansion::product(k, &big_f_factors(k));
        let g = Expansion::product(k, &g_factors(k));
        let f = Expansion::product(k + 1, &small_f_factors(k));
        let mut cases: Vec<(TargetSpec, BigInt)> = Vec::new();
        for j in 1..=k {
            for i in (1..=k).filter(|&i| i != j) {
                cases.push((TargetSpec::a(k, i, j).unwrap(), big_f.coefficient(&a_exps(k, i, j))));
            }
            cases.push((TargetSpec::c(k, j).unwrap(), big_f.coefficient(&c_exps(k, j))));
            cases.push((TargetSpec::e(k, j).unwrap(), g.coefficient(&e_exps(k, j))));
        }
        for j in 1..=k + 1 {
            cases.push((TargetSpec::d(k, j).unwrap(), f.coefficient(&d_exps(k, j))));
        }
        for (t, want) in cases {
            let got = ex.extract_with(&t, Method::CappedPipeline).map_err(|e| e.to_string())?.value;
            check(got == want, || format!("{t}: pipeline {got}, expansion {want}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} coefficients over families a, c, e, d for k = 2..6"))
}

fn relation_suite() -> Outcome {
    let ex = Extractor::new(ExtractConfig::default());
    let err = |e: nullsum_core::nullstellensatz::NullError| e.to_string();
    let mut rows = 0;
    for k in 2..=5 {
        let r = d_relation_check(&ex, k, Method::NaiveOracle).map_err(err)?;
        check(r.all_hold(), || format!("d relation fails at k = {k}"))?;
        rows += r.rows.len();
    }
    for k in 3..=8 {
        let r = sign_relation_check(&ex, k).map_err(err)?;
        check(r.all_hold(), || format!("sign relation fails at k = {k}"))?;
        rows += r.rows.len();
    }
    for k in 2..=6 {
        let r = row_sum_check(&ex, k, Method::NaiveOracle).map_err(err)?;
        check(r.all_hold(), || format!("row sums fail at k = {k}"))?;
        rows += r.rows.len();
    }
    Ok(format!("{rows} relation rows, zero violations"))
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> Polynomial {
    let len = rng.gen_range(0..8);
    let terms = (0..len).map(|_| ((0..n).map(|_| rng.gen_range(0..=6)).collect::<Vec<u32>>(), rng.gen_range(-1_000_000i64..=1_000_000)));
    Polynomial::from_terms(n, terms).unwrap()
}

fn ring_laws() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let lim = TermLimit::UNLIMITED;
    for case in 0..10_000 {
        let n = rng.gen_range(1..=5);
        let caps = CapProfile::new((0..n).map(|_| rng.gen_bool(0.7).then(|| rng.gen_range(0..=12))).collect());
        let (p, q, r) = (random_poly(&mut rng, n), random_poly(&mut rng, n), random_poly(&mut rng, n));
        let m = |a: &Polynomial, b: &Polynomial| a.mul_capped(b, &caps, lim).unwrap();
        let cut = |a: &Polynomial| a.cut_all(&caps).unwrap();
        let ok = m(&p, &q) == m(&q, &p)
            && m(&m(&cut(&p), &cut(&q)), &cut(&r)) == m(&cut(&p), &m(&cut(&q), &cut(&r)))
            && m(&p, &q.add(&r).unwrap()) == m(&p, &q).add(&m(&p, &r)).unwrap();
        check(ok, || format!("case {case}: law violated"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 60.0, || format!("{secs:.1} s"))?;
    Ok(format!("10000 triples, {secs:.2} s"))
}

fn sweeps() -> Outcome {
    let start = Instant::now();
    let (mut sets, mut runs) = (0u64, 0);
    for n in 2..=21u64 {
        for k in 1..=5usize.min(n as usize - 1) {
            for v in Variant::ALL {
                let r = sweep(n, k, v, SweepBudget::default()).map_err(|e| e.to_string())?;
                check(r.failures.is_empty(), || format!("Z{n} k={k} {v}: {:?}", r.failures))?;
                sets += r.valid_subsets;
                runs += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 600.0, || format!("{secs:.1} s"))?;
    Ok(format!("{runs} sweeps, {sets} valid subsets, 0 counterexamples, {secs:.1} s"))
}

fn consistency() -> Outcome {
    let ex = Extractor::new(ExtractConfig::default());
    let mut done = Vec::new();
    for (k, p) in [(3, 5), (4, 7), (5, 11), (6, 13)] {
        for v in Variant::ALL {
            let r = nullstellensatz_consistency(&ex, k, p, v, SweepBudget::default()).map_err(|e| e.to_string())?;
            check(r.agree, || format!("{v} k={k} p={p} disagrees"))?;
            if r.certificate_admits {
                done.push(format!("{v}({k},{p})"));
            }
        }
    }
    check(done.len() >= 4, || format!("only {done:?} certified"))?;
    Ok(format!("agree everywhere; certified and swept: {}", done.join(" ")))
}

fn torsion_free() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let z3 = Free::new(3).unwrap();
    let mut done = 0;
    let mut max_p = 0;
    while done < 100 {
        let size = rng.gen_range(1..=4);
        let elems: Vec<Vec<i64>> = (0..size).map(|_| (0..3).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let Ok(set) = NiceSet::new(z3, elems, Variant::Alspach) else { continue };
        let t = order_in_free_group(&set, SearchBudget::UNLIMITED).map_err(|e| e.to_string())?;
        for z in upsilon(&set) {
            let image = t.embedding.apply(&z).map_err(|e| e.to_string())?;
            check(image != 0 && image.rem_euclid(t.prime as i64) != 0, || format!("{z:?} in the kernel"))?;
        }
        check(verify_for_set(&set, &t.ordering), || format!("invalid ordering for {:?}", set.elements()))?;
        max_p = max_p.max(t.prime);
        done += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 120.0, || format!("{secs:.1} s"))?;
    Ok(format!("100 sets ordered and verified, largest prime {max_p}, {secs:.2} s"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("table-1 reproduction", table_1),
        ("k=11 headline", k11_headline),
        ("oracle equivalence", oracle_equivalence),
        ("relation suite", relation_suite),
        ("ring laws", ring_laws),
        ("conjecture sweeps", sweeps),
        ("nullstellensatz consistency", consistency),
        ("torsion-free pipeline", torsion_free),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failed += 1;
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
