//! One pass/fail line per acceptance criterion. All comparisons are exact;
//! the randomized criteria use fixed seeds.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use gauge_gamma::arith::{valuation_int, Valuation};
use gauge_gamma::cases::{AttestedFact, ImageSpec};
use gauge_gamma::chern::ChernVector;
use gauge_gamma::claims::{self, prime};
use gauge_gamma::engine::possibly_nontrivial;
use gauge_gamma::homotopy::{bspace_pi, sphere_pi, GroupDescriptor, HSpaceFactor};
use gauge_gamma::lattice::lattice_equal;
use gauge_gamma::{
    verify_all, CaseDatabase, ClassifierContext, CosetOrder, Engine, Lattice, LieGroup, PVector,
    Possibility, Rational,
};

const SEED: u64 = 0x5eed_2024;
const ODD_PRIMES: [u32; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok: String) -> Outcome {
    match failures.first() {
        None => Outcome {
            passed: true,
            detail: ok,
        },
        Some(_) => Outcome {
            passed: false,
            detail: format!("{} failure(s): {}", failures.len(), failures.join("; ")),
        },
    }
}

fn engine() -> Engine {
    Engine::new(CaseDatabase::embedded())
}

fn final_table() -> Outcome {
    let e = engine();
    let mut bad = Vec::new();
    for &(g, p, v) in claims::FINAL_TABLE {
        let ps: Vec<u32> = if p == 37 {
            vec![37, 41, 43, 101]
        } else {
            vec![p]
        };
        for p in ps {
            match e.gamma_p(g, prime(p)) {
                Ok(r) if r.value.value() == BigInt::from(v) => {}
                Ok(r) => bad.push(format!("{g} p={p}: {} != {v}", r.value)),
                Err(err) => bad.push(format!("{g} p={p}: {err}")),
            }
        }
    }
    outcome(
        bad,
        format!(
            "{} cells exact, p >= 37 sampled at 37, 41, 43, 101",
            claims::FINAL_TABLE.len()
        ),
    )
}

fn global_constants() -> Outcome {
    let e = engine();
    let mut bad = Vec::new();
    for &(g, factors) in claims::GLOBAL_CONSTANTS {
        let want: BigInt = factors
            .iter()
            .map(|&(q, k)| BigInt::from(q).pow(k))
            .product();
        match e.gamma_global(g) {
            Ok(r) if r.value() == want => {}
            Ok(r) => bad.push(format!("{g}: {} != {want}", r.value)),
            Err(err) => bad.push(format!("{g}: {err}")),
        }
    }
    outcome(
        bad,
        format!("{} groups exact", claims::GLOBAL_CONSTANTS.len()),
    )
}

fn built_classes(db: &CaseDatabase, id: &str) -> BTreeMap<String, ChernVector> {
    match &db.case_by_id(id).expect("case present").image {
        ImageSpec::Recipes { bases, recipe, .. } => {
            recipe.evaluate(bases).expect("recipe evaluates")
        }
        ImageSpec::Explicit { .. } => panic!("{id} has no recipe"),
    }
}

fn adams_derivation() -> Outcome {
    let classes = built_classes(&CaseDatabase::embedded(), "E8_7_5");
    let mut bad = Vec::new();
    let mut coefficients = 0;
    for (name, terms) in &claims::E8_XI[1..3] {
        let want = claims::e8_chern(terms);
        let got = &classes[*name];
        coefficients += terms.len();
        if got != &want {
            bad.push(format!("{name}: computed {got}, displayed {want}"));
        }
    }
    outcome(
        bad,
        format!("xi2, xi3 from psi^2 on ch(xi1): {coefficients} displayed coefficients exact"),
    )
}

fn image_lattices() -> Outcome {
    let e = engine();
    let mut bad = Vec::new();
    for id in ["E6_5_3", "E7_7_5", "E8_7_5"] {
        let case = e.database().case_by_id(id).expect("case present");
        let stated = claims::stated_case(id).expect("stated case");
        let gens = stated
            .generators
            .iter()
            .map(|g| PVector::new(case.prime, claims::rationals(g)).unwrap())
            .collect();
        let theirs = Lattice::reduce(gens, case.prime, case.target_degrees.len()).unwrap();
        match e
            .image_lattice(case)
            .and_then(|ours| lattice_equal(&ours, &theirs))
        {
            Ok(true) => {}
            Ok(false) => bad.push(format!("{id}: lattices differ")),
            Err(err) => bad.push(format!("{id}: {err}")),
        }
    }
    outcome(
        bad,
        "E6_5_3, E7_7_5, E8_7_5 equal to the stated generators".into(),
    )
}

fn coset_orders() -> Outcome {
    let e = engine();
    let expected = [
        ("E6_5_3", 25),
        ("E8_11_9", 121),
        ("E8_13_5", 13),
        ("E8_19_5", 19),
        ("E8_7_5", 49),
        ("E7_7_5", 1),
        ("E6_7_5", 1),
        ("E7_11_7", 1),
        ("E7_13_5", 1),
        ("E8_13_11", 1),
        ("E8_19_11", 1),
    ];
    let mut bad = Vec::new();
    for (id, want) in expected {
        let case = e.database().case_by_id(id).expect("case present");
        match e.evaluate_phi_case(case) {
            Ok(ev) if ev.order.value() == BigInt::from(want) => {}
            Ok(ev) => bad.push(format!("{id}: {} != {want}", ev.order)),
            Err(err) => bad.push(format!("{id}: {err}")),
        }
    }
    outcome(bad, "25, 121, 13, 19, 49 and six trivial cases".into())
}

fn possibility_table() -> Outcome {
    let mut bad = Vec::new();
    let mut possible = 0;
    for &(g, p) in claims::QUASI_REGULAR_PAIRS {
        for i in 1..p {
            let want = claims::POSSIBLY_NONTRIVIAL.contains(&(g, p, i));
            match possibly_nontrivial(g, prime(p), i) {
                Ok(Possibility::Possible) if want => possible += 1,
                Ok(Possibility::No) if !want => {}
                other => bad.push(format!(
                    "{g} p={p} i={i}: {other:?}, expected possible = {want}"
                )),
            }
        }
    }
    outcome(bad, format!("{possible} POSSIBLE triples, NO elsewhere"))
}

/// Offsets `k` with `pi_{bottom+k}` non-zero, and their exponents.
fn scan_table(bottom: u32, rank_two: bool, p: u32) -> BTreeMap<u32, u32> {
    let n = bottom.div_ceil(2);
    let m = p - 1;
    let mut out = BTreeMap::new();
    let first = if rank_two { 2 } else { 1 };
    let top_exponent = if rank_two && bottom != 3 { 2 } else { 1 };
    for i in first..p {
        out.insert(2 * i * m - 1, top_exponent);
    }
    if !(rank_two && bottom == 3) {
        for i in n..p {
            out.insert(2 * i * m - 2, 1);
        }
    }
    out
}

fn homotopy_queries() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    for _ in 0..10_000 {
        let p = ODD_PRIMES[rng.gen_range(0..ODD_PRIMES.len())];
        let pp = prime(p);
        let limit = 2 * p * (p - 1) - 3;
        let k = rng.gen_range(1..=limit);
        let n = rng.gen_range(2..40u32);
        let rank_two = rng.gen_bool(0.5);
        let (d, bottom) = if rank_two {
            let n = if rng.gen_bool(0.2) { 2 } else { n };
            let b = HSpaceFactor::new(vec![2 * n - 1, 2 * n - 1 + 2 * (p - 1)], None).unwrap();
            if k == 2 * p - 2 {
                continue;
            }
            (bspace_pi(&b, k, pp).unwrap(), 2 * n - 1)
        } else {
            (sphere_pi(n, k, pp), 2 * n - 1)
        };
        let exponent = match d {
            GroupDescriptor::Zero => 0,
            GroupDescriptor::Cyclic { prime, exponent } if prime == pp => exponent,
            other => {
                bad.push(format!("p={p} bottom={bottom} k={k}: {other}"));
                continue;
            }
        };
        let odd_family = k % 2 == 1;
        let cap = match (rank_two, bottom == 3) {
            (false, _) | (true, true) => 1,
            (true, false) => {
                if odd_family {
                    2
                } else {
                    1
                }
            }
        };
        if exponent > cap {
            bad.push(format!(
                "p={p} bottom={bottom} k={k}: exponent {exponent} above {cap}"
            ));
        }
        let want = scan_table(bottom, rank_two, p)
            .get(&k)
            .copied()
            .unwrap_or(0);
        if exponent != want {
            bad.push(format!(
                "p={p} bottom={bottom} k={k}: exponent {exponent}, table scan {want}"
            ));
        }
    }
    outcome(bad, "10000 queries, no violations".into())
}

fn residue(x: &Rational, modulus: i64) -> i64 {
    let m = BigInt::from(modulus);
    let num = ((x.numer() % &m) + &m) % &m;
    let den = ((x.denom() % &m) + &m) % &m;
    let den = i64::try_from(den).unwrap();
    let inv = (1..modulus)
        .find(|c| (den * c) % modulus == 1)
        .expect("denominator prime to p");
    (i64::try_from(num).unwrap() * inv) % modulus
}

/// Least `e` with `p^e v` in the `Z_(p)`-span of `gens`, by closing the
/// generated subgroup of `(Z/p^depth)^n` and testing multiples one at a time.
fn brute_force_order(gens: &[Vec<i64>], v: &[Rational], p: u32, depth: u32) -> u32 {
    let n = v.len();
    let modulus = i64::from(p).pow(depth);
    let encode = |x: &[i64]| {
        x.iter()
            .fold(0usize, |acc, &c| acc * modulus as usize + c as usize)
    };
    let size = (modulus as usize).pow(n as u32);
    let mut seen = vec![false; size];
    let mut stack = vec![vec![0i64; n]];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y: Vec<i64> = x
                .iter()
                .zip(g)
                .map(|(a, b)| (a + b).rem_euclid(modulus))
                .collect();
            let code = encode(&y);
            if !seen[code] {
                seen[code] = true;
                stack.push(y);
            }
        }
    }
    for e in 0..=depth {
        let r: Vec<i64> = v
            .iter()
            .map(|c| {
                residue(
                    &(c.clone() * Rational::from(BigInt::from(p).pow(e))),
                    modulus,
                )
            })
            .collect();
        if seen[encode(&r)] {
            return e;
        }
    }
    unreachable!("p^depth kills the quotient")
}

fn lattice_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED ^ 1);
    let mut bad = Vec::new();
    let mut done = 0;
    while done < 1000 {
        let p = [2u32, 3, 5][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=3usize);
        let rows = n + rng.gen_range(0..2usize);
        let gens: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let det = full_rank_minor_det(&gens, n);
        let Some(det) = det else { continue };
        let Valuation::Finite(depth) = valuation_int(&BigInt::from(det), prime(p)) else {
            continue;
        };
        let depth = depth as u32 + 1;
        if i64::from(p).pow(depth).pow(n as u32) > 400_000 {
            continue;
        }
        let unit = loop {
            let d = rng.gen_range(1..12i64);
            if d % i64::from(p) != 0 {
                break d;
            }
        };
        let v: Vec<Rational> = (0..n)
            .map(|_| Rational::new(rng.gen_range(-20..=20), unit).unwrap())
            .collect();

        let pp = prime(p);
        let vectors = gens
            .iter()
            .map(|g| PVector::new(pp, g.iter().map(|&x| Rational::from(x)).collect()).unwrap())
            .collect();
        let lattice = Lattice::reduce(vectors, pp, n).unwrap();
        let got = lattice
            .coset_order(&PVector::new(pp, v.clone()).unwrap())
            .unwrap();
        let want = brute_force_order(&gens, &v, p, depth);
        match got {
            CosetOrder::Finite(o) if o.exponent == want => {}
            other => bad.push(format!(
                "p={p} gens={gens:?} v={v:?}: {other:?}, oracle p^{want}"
            )),
        }
        done += 1;
    }
    outcome(
        bad,
        "1000 random lattices agree with the subgroup-closure oracle".into(),
    )
}

/// Determinant of some non-singular `n x n` minor, if one exists.
fn full_rank_minor_det(rows: &[Vec<i64>], n: usize) -> Option<i64> {
    fn det(m: &[&Vec<i64>]) -> i64 {
        match m.len() {
            1 => m[0][0],
            2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
            _ => (0..3)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    let (a, b) = ((j + 1) % 3, (j + 2) % 3);
                    let (a, b) = (a.min(b), a.max(b));
                    sign * m[0][j] * (m[1][a] * m[2][b] - m[1][b] * m[2][a])
                })
                .sum(),
        }
    }
    let idx: Vec<usize> = (0..rows.len()).collect();
    let mut choice = Vec::new();
    fn pick(
        idx: &[usize],
        n: usize,
        choice: &mut Vec<usize>,
        rows: &[Vec<i64>],
        out: &mut Option<i64>,
    ) {
        if out.is_some() {
            return;
        }
        if choice.len() == n {
            let m: Vec<&Vec<i64>> = choice.iter().map(|&i| &rows[i]).collect();
            let d = det(&m);
            if d != 0 {
                *out = Some(d);
            }
            return;
        }
        for (k, &i) in idx.iter().enumerate() {
            choice.push(i);
            pick(&idx[k + 1..], n, choice, rows, out);
            choice.pop();
        }
    }
    let mut out = None;
    pick(&idx, n, &mut choice, rows, &mut out);
    out
}

fn classifier_coherence() -> Outcome {
    let e = engine();
    let mut bad = Vec::new();
    let mut contexts = Vec::new();
    for g in LieGroup::ALL {
        for p in Engine::relevant_primes(g) {
            let Ok(ctx) = ClassifierContext::new(&e, g, p) else {
                continue;
            };
            if ctx.equivalent_p_local(1, 1).is_err() {
                continue;
            }
            contexts.push((g, p, ctx));
        }
    }
    let range = -200i64..=200;
    for (g, p, ctx) in &contexts {
        let global: Vec<_> = range.clone().map(|k| ctx.global_invariant(k)).collect();
        let local: Vec<_> = range.clone().map(|k| ctx.local_invariant(k)).collect();
        for a in 0..global.len() {
            for b in 0..global.len() {
                if (global[a] == global[b]) != (local[a] == local[b]) {
                    bad.push(format!(
                        "{g} p={p} k={} l={}",
                        a as i64 - 200,
                        b as i64 - 200
                    ));
                }
            }
        }
        for k in [-200i64, -49, 0, 7, 121, 200] {
            for l in [-121i64, 0, 1, 14, 25] {
                let gv = ctx.equivalent_global(k, l).equivalent;
                let lv = ctx.equivalent_p_local(k, l).unwrap().equivalent;
                if gv != lv {
                    bad.push(format!("{g} p={p} k={k} l={l}: verdicts differ"));
                }
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(SEED ^ 2);
    for _ in 0..10_000 {
        let (g, p, ctx) = &contexts[rng.gen_range(0..contexts.len())];
        let mut draw = || rng.gen_range(-1000i64..=1000);
        let (k, l, m) = (draw(), draw(), draw());
        let eq = |a: i64, b: i64| ctx.equivalent_p_local(a, b).unwrap().equivalent;
        let geq = |a: i64, b: i64| ctx.equivalent_global(a, b).equivalent;
        for (name, rel) in [
            ("p-local", &eq as &dyn Fn(i64, i64) -> bool),
            ("global", &geq),
        ] {
            if !rel(k, k) || rel(k, l) != rel(l, k) || (rel(k, l) && rel(l, m) && !rel(k, m)) {
                bad.push(format!("{name} {g} p={p} ({k}, {l}, {m})"));
            }
        }
    }
    outcome(
        bad,
        format!(
            "{} in-scope pairs over [-200, 200]^2, 10000 axiom triples",
            contexts.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);
type Mutation = (&'static str, Box<dyn Fn(&mut CaseDatabase)>);

fn case<'a>(db: &'a mut CaseDatabase, id: &str) -> &'a mut gauge_gamma::PhiCase {
    db.phi_cases
        .iter_mut()
        .find(|c| c.id == id)
        .expect("case present")
}

fn attested(
    db: &mut CaseDatabase,
    g: LieGroup,
    p: u32,
    i: Option<u32>,
) -> &mut AttestedFact {
    db.attested
        .iter_mut()
        .find(|a| a.group == g && a.prime.get() == p && a.index == i)
        .expect("fact present")
}

fn with_coefficient(x: &ChernVector, degree: u32, f: impl Fn(Rational) -> Rational) -> ChernVector {
    let map = x
        .degrees()
        .map(|d| {
            (
                d,
                if d == degree {
                    f(x.coefficient(d))
                } else {
                    x.coefficient(d)
                },
            )
        })
        .collect();
    ChernVector::new(map).unwrap()
}

fn base_mut<'a>(db: &'a mut CaseDatabase, id: &str, name: &str) -> &'a mut ChernVector {
    match &mut case(db, id).image {
        ImageSpec::Recipes { bases, .. } => bases.get_mut(name).expect("base present"),
        ImageSpec::Explicit { .. } => panic!("{id} has no bases"),
    }
}

fn mutations() -> Vec<Mutation> {
    vec![
        (
            "attested E6 p=7 i=2 set to 1",
            Box::new(|db| attested(db, LieGroup::E6, 7, Some(2)).value = 1),
        ),
        (
            "attested E7 p=11 i=3 set to 121",
            Box::new(|db| attested(db, LieGroup::E7, 11, Some(3)).value = 121),
        ),
        (
            "attested F4 p=5 i=3 set to 5",
            Box::new(|db| attested(db, LieGroup::F4, 5, Some(3)).value = 5),
        ),
        (
            "attested G2 p=7 set to 6",
            Box::new(|db| attested(db, LieGroup::G2, 7, None).value = 6),
        ),
        (
            "attested E7 p=11 i=3 deleted",
            Box::new(|db| {
                db.attested.retain(|a| {
                    !(a.group == LieGroup::E7 && a.prime.get() == 11 && a.index == Some(3))
                })
            }),
        ),
        (
            "attested E7 p=13 i=5 set to 13",
            Box::new(|db| attested(db, LieGroup::E7, 13, Some(5)).value = 13),
        ),
        (
            "attested E8 p=13 i=11 empty citation",
            Box::new(|db| attested(db, LieGroup::E8, 13, Some(11)).citation.clear()),
        ),
        (
            "E6_5_3 n off by one",
            Box::new(|db| case(db, "E6_5_3").n += 1),
        ),
        (
            "E8_11_9 index changed",
            Box::new(|db| case(db, "E8_11_9").index = 7),
        ),
        (
            "E8_13_5 lift changed",
            Box::new(|db| case(db, "E8_13_5").lift = Some(vec![Rational::from(13)])),
        ),
        (
            "E8_19_5 generator changed",
            Box::new(|db| {
                if let ImageSpec::Explicit { generators } = &mut case(db, "E8_19_5").image {
                    generators[0][0] = Rational::from(1);
                }
            }),
        ),
        (
            "E6_7_5 generator 1 -> 7",
            Box::new(|db| {
                if let ImageSpec::Explicit { generators } = &mut case(db, "E6_7_5").image {
                    generators[0][0] = Rational::from(7);
                }
            }),
        ),
        (
            "E8_7_5 u_50 sign flipped in ch(xi1)",
            Box::new(|db| {
                let b = base_mut(db, "E8_7_5", "xi1");
                *b = with_coefficient(b, 50, |c| -c);
            }),
        ),
        (
            "E7_7_5 u_38 coefficient times 7",
            Box::new(|db| {
                let b = base_mut(db, "E7_7_5", "xi");
                *b = with_coefficient(b, 38, |c| c * Rational::from(7));
            }),
        ),
        (
            "E6_5_3 cell degree changed",
            Box::new(|db| case(db, "E6_5_3").a_cell_degrees[1] = 28),
        ),
        (
            "E8_13_11 targets changed",
            Box::new(|db| case(db, "E8_13_11").target_degrees = vec![44]),
        ),
        (
            "E7_11_7 deleted",
            Box::new(|db| db.phi_cases.retain(|c| c.id != "E7_11_7")),
        ),
    ]
}

fn verify_exit(path: &std::path::Path, via_env: bool) -> Option<i32> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gauge-gamma"));
    cmd.env_remove("GAUGE_GAMMA_CASES");
    if via_env {
        cmd.env("GAUGE_GAMMA_CASES", path).arg("verify");
    } else {
        cmd.arg("--cases").arg(path).arg("verify");
    }
    cmd.output().expect("binary runs").status.code()
}

fn negative_controls() -> Outcome {
    let mut bad = Vec::new();
    if !verify_all(&engine()).passed() {
        bad.push("pristine database fails".into());
    }
    let dir = tempfile::tempdir().expect("temp dir");
    let all = mutations();
    for (n, (name, mutate)) in all.iter().enumerate() {
        let mut db = CaseDatabase::embedded();
        mutate(&mut db);
        if db == CaseDatabase::embedded() {
            bad.push(format!("{name}: mutation had no effect"));
            continue;
        }
        if verify_all(&Engine::new(db.clone())).passed() {
            bad.push(format!("{name}: verify still passes"));
        }
        if n % 4 == 0 {
            let path = dir.path().join(format!("mutant{n}.json"));
            std::fs::write(&path, db.to_json_pretty()).unwrap();
            for via_env in [false, true] {
                let code = verify_exit(&path, via_env);
                if code == Some(0) || code.is_none() {
                    bad.push(format!("{name}: binary exit {code:?} (env = {via_env})"));
                }
            }
        }
    }
    outcome(
        bad,
        format!(
            "{} corruptions all rejected, {} also through the binary via --cases and the environment",
            all.len(),
            all.len().div_ceil(4)
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("final table", final_table),
        ("global constants", global_constants),
        ("Adams derivation", adams_derivation),
        ("image lattices", image_lattices),
        ("coset orders", coset_orders),
        ("possibility table", possibility_table),
        ("homotopy tables", homotopy_queries),
        ("lattice oracle", lattice_oracle),
        ("classifier coherence", classifier_coherence),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {}: {name} (exact) - {}", i + 1, o.detail);
        failed += usize::from(!o.passed);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
